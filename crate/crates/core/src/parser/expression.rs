use std::collections::HashMap;
use std::ops::Range;

use super::lexer::{tokenize, Token, TokenKind};
use super::sexpr::{self, Node};
use super::{standard_prefixes, ParseDiagnostic};
use crate::error::ParseError;
use crate::iri::Iri;
use crate::model::{ConceptExpression, Ontology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Named,
    Top,
    Bottom,
    And,
    Or,
    Not,
    Some,
    Only,
}

/// Parsed class expression with byte spans into the source text.
///
/// `iri` holds the concept for `Named` leaves and the role for `Some`/`Only`.
#[derive(Clone, Debug, PartialEq)]
pub struct SyntaxTree {
    pub kind: NodeKind,
    pub iri: Option<Iri>,
    pub children: Vec<SyntaxTree>,
    pub span: Range<usize>,
}

impl SyntaxTree {
    pub fn to_expression(&self) -> ConceptExpression {
        let child = |i: usize| self.children[i].to_expression();
        match self.kind {
            NodeKind::Named => {
                ConceptExpression::Named(self.iri.clone().expect("named leaf has an IRI"))
            }
            NodeKind::Top => ConceptExpression::Top,
            NodeKind::Bottom => ConceptExpression::Bottom,
            NodeKind::And => {
                ConceptExpression::And(self.children.iter().map(Self::to_expression).collect())
            }
            NodeKind::Or => {
                ConceptExpression::Or(self.children.iter().map(Self::to_expression).collect())
            }
            NodeKind::Not => ConceptExpression::not(child(0)),
            NodeKind::Some => ConceptExpression::some(self.iri.clone().expect("role"), child(0)),
            NodeKind::Only => ConceptExpression::only(self.iri.clone().expect("role"), child(0)),
        }
    }

    /// Builds a tree without source positions (all spans empty).
    pub fn from_expression(expr: &ConceptExpression) -> Self {
        let leaf = |kind, iri| SyntaxTree {
            kind,
            iri,
            children: Vec::new(),
            span: 0..0,
        };
        match expr {
            ConceptExpression::Named(iri) => leaf(NodeKind::Named, Some(iri.clone())),
            ConceptExpression::Top => leaf(NodeKind::Top, None),
            ConceptExpression::Bottom => leaf(NodeKind::Bottom, None),
            ConceptExpression::And(ops) | ConceptExpression::Or(ops) => SyntaxTree {
                kind: if matches!(expr, ConceptExpression::And(_)) {
                    NodeKind::And
                } else {
                    NodeKind::Or
                },
                iri: None,
                children: ops.iter().map(Self::from_expression).collect(),
                span: 0..0,
            },
            ConceptExpression::Not(inner) => SyntaxTree {
                kind: NodeKind::Not,
                iri: None,
                children: vec![Self::from_expression(inner)],
                span: 0..0,
            },
            ConceptExpression::Some(r, f) | ConceptExpression::Only(r, f) => SyntaxTree {
                kind: if matches!(expr, ConceptExpression::Some(..)) {
                    NodeKind::Some
                } else {
                    NodeKind::Only
                },
                iri: Some(r.clone()),
                children: vec![Self::from_expression(f)],
                span: 0..0,
            },
        }
    }

    /// Canonical rendering: functional syntax with full IRIs, single spaces.
    pub fn render(&self) -> String {
        self.to_expression().to_string()
    }

    /// Pre-order walk.
    pub fn nodes(&self) -> Vec<&SyntaxTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }
}

pub(crate) enum Issue {
    /// Valid OWL outside the supported subset.
    Unsupported {
        offset: usize,
        message: String,
    },
    Fatal(ParseDiagnostic),
}

const UNSUPPORTED_CLASS_CONSTRUCTORS: &[&str] = &[
    "ObjectOneOf",
    "ObjectHasValue",
    "ObjectHasSelf",
    "ObjectMinCardinality",
    "ObjectMaxCardinality",
    "ObjectExactCardinality",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
    "DataHasValue",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
];

pub(crate) struct Resolver<'a> {
    pub text: &'a str,
    pub prefixes: HashMap<String, String>,
}

impl<'a> Resolver<'a> {
    pub fn new(text: &'a str) -> Self {
        Resolver {
            text,
            prefixes: standard_prefixes(),
        }
    }

    pub fn fatal(&self, offset: usize, message: impl Into<String>) -> Issue {
        Issue::Fatal(ParseDiagnostic::error(self.text, offset, message))
    }

    pub fn token_iri(&self, tok: &Token) -> Result<Iri, Issue> {
        let raw = match &tok.kind {
            TokenKind::FullIri(s) => s.clone(),
            TokenKind::PrefixedName { prefix, local } => match self.prefixes.get(prefix) {
                Some(ns) => format!("{ns}{local}"),
                None => {
                    return Err(self.fatal(
                        tok.span.start,
                        format!(
                            "undeclared prefix {prefix:?} in {:?}",
                            &self.text[tok.span.clone()]
                        ),
                    ))
                }
            },
            _ => {
                return Err(self.fatal(
                    tok.span.start,
                    format!("expected an IRI, found {:?}", &self.text[tok.span.clone()]),
                ))
            }
        };
        Iri::new(&raw).map_err(|e| self.fatal(tok.span.start, e.to_string()))
    }

    pub fn node_iri(&self, node: &Node) -> Result<Iri, Issue> {
        match node {
            Node::Atom(tok) => self.token_iri(tok),
            Node::List {
                head, head_span, ..
            } => Err(self.fatal(
                head_span.start,
                format!("expected an IRI, found {head}(...)"),
            )),
        }
    }

    pub fn object_property(&self, node: &Node) -> Result<Iri, Issue> {
        match node {
            Node::List {
                head, head_span, ..
            } if head == "ObjectInverseOf" => Err(Issue::Unsupported {
                offset: head_span.start,
                message: "ObjectInverseOf is not supported".into(),
            }),
            _ => self.node_iri(node),
        }
    }

    pub fn class_expression(&self, node: &Node) -> Result<SyntaxTree, Issue> {
        let span = node.span();
        let (head, head_span, args) = match node {
            Node::Atom(tok) => {
                let iri = self.token_iri(tok)?;
                let kind = if iri.is_thing() {
                    NodeKind::Top
                } else if iri.is_nothing() {
                    NodeKind::Bottom
                } else {
                    NodeKind::Named
                };
                let iri = (kind == NodeKind::Named).then_some(iri);
                return Ok(SyntaxTree {
                    kind,
                    iri,
                    children: Vec::new(),
                    span,
                });
            }
            Node::List {
                head,
                head_span,
                args,
                ..
            } => (head.as_str(), head_span, args),
        };
        let arity = |min: usize, max: Option<usize>| -> Result<(), Issue> {
            if args.len() < min || max.is_some_and(|m| args.len() > m) {
                let expected = match max {
                    Some(m) if m == min => format!("exactly {min}"),
                    _ => format!("at least {min}"),
                };
                Err(self.fatal(
                    head_span.start,
                    format!("{head} expects {expected} operands, got {}", args.len()),
                ))
            } else {
                Ok(())
            }
        };
        match head {
            "ObjectIntersectionOf" | "ObjectUnionOf" => {
                arity(2, None)?;
                let children = args
                    .iter()
                    .map(|a| self.class_expression(a))
                    .collect::<Result<_, _>>()?;
                let kind = if head == "ObjectIntersectionOf" {
                    NodeKind::And
                } else {
                    NodeKind::Or
                };
                Ok(SyntaxTree {
                    kind,
                    iri: None,
                    children,
                    span,
                })
            }
            "ObjectComplementOf" => {
                arity(1, Some(1))?;
                Ok(SyntaxTree {
                    kind: NodeKind::Not,
                    iri: None,
                    children: vec![self.class_expression(&args[0])?],
                    span,
                })
            }
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                arity(2, Some(2))?;
                let role = self.object_property(&args[0])?;
                let filler = self.class_expression(&args[1])?;
                let kind = if head == "ObjectSomeValuesFrom" {
                    NodeKind::Some
                } else {
                    NodeKind::Only
                };
                Ok(SyntaxTree {
                    kind,
                    iri: Some(role),
                    children: vec![filler],
                    span,
                })
            }
            h if UNSUPPORTED_CLASS_CONSTRUCTORS.contains(&h) => Err(Issue::Unsupported {
                offset: head_span.start,
                message: format!("class expression {h} is not supported"),
            }),
            h => Err(self.fatal(
                head_span.start,
                format!("unknown class expression constructor {h}"),
            )),
        }
    }
}

pub(crate) fn parse_standalone(text: &str, onto: &Ontology) -> Result<SyntaxTree, ParseError> {
    let fail = |d: ParseDiagnostic| ParseError {
        diagnostics: vec![d],
    };
    let tokens = tokenize(text).map_err(fail)?;
    let nodes = sexpr::build_expression(text, tokens).map_err(fail)?;
    let node = match nodes.as_slice() {
        [node] => node,
        [] => {
            return Err(fail(ParseDiagnostic::error(
                text,
                0,
                "empty class expression",
            )))
        }
        [_, second, ..] => {
            return Err(fail(ParseDiagnostic::error(
                text,
                second.span().start,
                "trailing input after class expression",
            )))
        }
    };
    let mut resolver = Resolver::new(text);
    for (name, ns) in onto.prefixes() {
        resolver.prefixes.insert(name.clone(), ns.clone());
    }
    resolver
        .class_expression(node)
        .map_err(|issue| match issue {
            Issue::Fatal(d) => fail(d),
            Issue::Unsupported { offset, message } => {
                fail(ParseDiagnostic::error(text, offset, message))
            }
        })
}
