//! Generic `Keyword( ... )` tree over the token stream. Balancing errors are
//! detected here; interpretation of keywords happens in the reader.

use std::ops::Range;

use super::lexer::{Token, TokenKind};
use super::ParseDiagnostic;

#[derive(Clone, Debug)]
pub(crate) enum Node {
    List {
        head: String,
        head_span: Range<usize>,
        args: Vec<Node>,
        span: Range<usize>,
    },
    Atom(Token),
}

impl Node {
    pub fn span(&self) -> Range<usize> {
        match self {
            Node::List { span, .. } => span.clone(),
            Node::Atom(t) => t.span.clone(),
        }
    }
}

pub(crate) fn build(text: &str, tokens: Vec<Token>) -> Result<Vec<Node>, ParseDiagnostic> {
    build_inner(text, tokens, false)
}

/// Like [`build`] but accepts bare atoms at the top level (`:A`).
pub(crate) fn build_expression(
    text: &str,
    tokens: Vec<Token>,
) -> Result<Vec<Node>, ParseDiagnostic> {
    build_inner(text, tokens, true)
}

fn build_inner(
    text: &str,
    tokens: Vec<Token>,
    atoms_at_top: bool,
) -> Result<Vec<Node>, ParseDiagnostic> {
    // Each frame: (head, head_span, open-paren offset, args)
    let mut stack: Vec<(String, Range<usize>, usize, Vec<Node>)> = Vec::new();
    let mut top = Vec::new();
    let mut iter = tokens.into_iter().peekable();
    while let Some(tok) = iter.next() {
        match tok.kind {
            TokenKind::Keyword(ref kw) if matches!(iter.peek(), Some(t) if t.kind == TokenKind::LParen) =>
            {
                let open = iter.next().expect("peeked");
                stack.push((kw.clone(), tok.span.clone(), open.span.start, Vec::new()));
            }
            TokenKind::Keyword(ref kw) => {
                return Err(ParseDiagnostic::error(
                    text,
                    tok.span.start,
                    format!("keyword {kw} must be followed by '('"),
                ));
            }
            TokenKind::LParen => {
                return Err(ParseDiagnostic::error(
                    text,
                    tok.span.start,
                    "'(' without a preceding keyword",
                ));
            }
            TokenKind::RParen => {
                let Some((head, head_span, _, args)) = stack.pop() else {
                    return Err(ParseDiagnostic::error(
                        text,
                        tok.span.start,
                        "unbalanced ')'",
                    ));
                };
                let node = Node::List {
                    span: head_span.start..tok.span.end,
                    head,
                    head_span,
                    args,
                };
                match stack.last_mut() {
                    Some(frame) => frame.3.push(node),
                    None => top.push(node),
                }
            }
            _ => match stack.last_mut() {
                Some(frame) => frame.3.push(Node::Atom(tok)),
                None if atoms_at_top => top.push(Node::Atom(tok)),
                None => {
                    return Err(ParseDiagnostic::error(
                        text,
                        tok.span.start,
                        "unexpected token outside of any construct",
                    ));
                }
            },
        }
    }
    if let Some((head, _, open, _)) = stack.pop() {
        return Err(ParseDiagnostic::error(
            text,
            open,
            format!("unclosed '(' of {head}"),
        ));
    }
    Ok(top)
}
