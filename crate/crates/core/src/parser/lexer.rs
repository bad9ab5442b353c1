use std::ops::Range;

use super::ParseDiagnostic;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum TokenKind {
    LParen,
    RParen,
    Equals,
    FullIri(String),
    PrefixedName {
        prefix: String,
        local: String,
    },
    Keyword(String),
    Integer(String),
    Literal {
        lexical: String,
        lang: Option<String>,
        datatype: Option<Box<Token>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: Range<usize>,
}

fn is_word_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, '(' | ')' | '"' | '<' | '>' | '=' | '#' | '@' | '^'))
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    Lexer { text, pos: 0 }.run()
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::error(self.text, at, message)
    }

    fn run(mut self) -> Result<Vec<Token>, ParseDiagnostic> {
        let mut tokens = Vec::new();
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                '(' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::LParen,
                        span: start..self.pos,
                    });
                }
                ')' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::RParen,
                        span: start..self.pos,
                    });
                }
                '=' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::Equals,
                        span: start..self.pos,
                    });
                }
                '<' => tokens.push(self.full_iri()?),
                '"' => tokens.push(self.literal()?),
                c if is_word_char(c) => tokens.push(self.word()?),
                other => return Err(self.error(start, format!("unexpected character {other:?}"))),
            }
        }
        Ok(tokens)
    }

    fn full_iri(&mut self) -> Result<Token, ParseDiagnostic> {
        let start = self.pos;
        self.bump();
        let body_start = self.pos;
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if c.is_whitespace() || c == '<' => {
                    return Err(self.error(start, "malformed IRI: unterminated '<'"));
                }
                Some(_) => {}
                None => return Err(self.error(start, "malformed IRI: unterminated '<'")),
            }
        }
        let body = self.text[body_start..self.pos - 1].to_string();
        if body.is_empty() {
            return Err(self.error(start, "empty IRI"));
        }
        Ok(Token {
            kind: TokenKind::FullIri(body),
            span: start..self.pos,
        })
    }

    fn literal(&mut self) -> Result<Token, ParseDiagnostic> {
        let start = self.pos;
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let escape = self.pos - 1;
                    match self.bump() {
                        Some(c @ ('"' | '\\')) => lexical.push(c),
                        _ => return Err(self.error(escape, "invalid escape in string literal")),
                    }
                }
                Some(c) => lexical.push(c),
                None => return Err(self.error(start, "unterminated string literal")),
            }
        }
        let mut lang = None;
        let mut datatype = None;
        if self.peek() == Some('@') {
            self.bump();
            let tag_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                self.bump();
            }
            if tag_start == self.pos {
                return Err(self.error(tag_start, "empty language tag"));
            }
            lang = Some(self.text[tag_start..self.pos].to_string());
        } else if self.text[self.pos..].starts_with("^^") {
            self.pos += 2;
            let dt = match self.peek() {
                Some('<') => self.full_iri()?,
                Some(c) if is_word_char(c) => self.word()?,
                _ => return Err(self.error(self.pos, "expected datatype IRI after '^^'")),
            };
            datatype = Some(Box::new(dt));
        }
        Ok(Token {
            kind: TokenKind::Literal {
                lexical,
                lang,
                datatype,
            },
            span: start..self.pos,
        })
    }

    fn word(&mut self) -> Result<Token, ParseDiagnostic> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_word_char(c)) {
            self.bump();
        }
        let word = &self.text[start..self.pos];
        let kind = match word.find(':') {
            Some(idx) => TokenKind::PrefixedName {
                prefix: word[..idx].to_string(),
                local: word[idx + 1..].to_string(),
            },
            None if word.chars().all(|c| c.is_ascii_alphabetic()) => {
                TokenKind::Keyword(word.to_string())
            }
            None if word.chars().all(|c| c.is_ascii_digit()) => {
                TokenKind::Integer(word.to_string())
            }
            None => return Err(self.error(start, format!("unexpected token {word:?}"))),
        };
        Ok(Token {
            kind,
            span: start..self.pos,
        })
    }
}
