//! Reader and writer for a subset of OWL 2 Functional-Style Syntax.
//!
//! Supported: `Prefix`, `Ontology`, `Declaration` of classes, object
//! properties, named individuals and annotation properties, `SubClassOf`,
//! `EquivalentClasses`, `SubObjectPropertyOf` (optionally with a two-step
//! `ObjectPropertyChain`), `ClassAssertion`, `ObjectPropertyAssertion` and
//! `AnnotationAssertion` with string literals. Class expressions are limited
//! to intersection, union, complement, existential and universal restriction.
//!
//! Other well-formed OWL constructs are skipped with a warning so that large
//! ontologies still load; syntax errors and unknown keywords abort.

mod expression;
mod lexer;
mod reader;
mod sexpr;
pub mod writer;

use std::collections::HashMap;
use std::fmt;

pub use expression::{NodeKind, SyntaxTree};
pub use writer::serialize_ontology;

use crate::error::ParseError;
use crate::iri::{OWL, RDF, RDFS, XSD};
use crate::model::Ontology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

/// A located message about the input. Line and column are 1-based; columns count characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    pub(crate) fn at(
        text: &str,
        offset: usize,
        message: impl Into<String>,
        severity: Severity,
    ) -> Self {
        let offset = offset.min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |p| p + 1);
        let column = text[line_start..offset].chars().count() + 1;
        ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity,
        }
    }

    pub(crate) fn error(text: &str, offset: usize, message: impl Into<String>) -> Self {
        Self::at(text, offset, message, Severity::Error)
    }

    pub(crate) fn warning(text: &str, offset: usize, message: impl Into<String>) -> Self {
        Self::at(text, offset, message, Severity::Warning)
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// Result of a successful document parse: the ontology plus non-fatal warnings.
#[derive(Clone, Debug)]
pub struct ParsedOntology {
    pub ontology: Ontology,
    pub warnings: Vec<ParseDiagnostic>,
}

impl ParsedOntology {
    /// Number of constructs skipped because they fall outside the supported grammar.
    pub fn skipped(&self) -> usize {
        self.warnings.len()
    }
}

/// Parses a functional-syntax document.
pub fn parse_ontology(text: &str) -> Result<ParsedOntology, ParseError> {
    reader::read_document(text)
}

/// Parses a single class expression, resolving prefixed names against the
/// prefixes declared in `onto` (plus the standard `owl`, `rdf`, `rdfs`, `xsd`).
pub fn parse_concept_expression(text: &str, onto: &Ontology) -> Result<SyntaxTree, ParseError> {
    expression::parse_standalone(text, onto)
}

pub(crate) fn standard_prefixes() -> HashMap<String, String> {
    [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostic_positions_count_characters() {
        let text = "ab\ncdé f";
        let d = ParseDiagnostic::error(text, text.find('f').unwrap(), "x");
        assert_eq!((d.line, d.column), (2, 5));
        assert_eq!(d.to_string(), "2:5: error: x");
    }
}
