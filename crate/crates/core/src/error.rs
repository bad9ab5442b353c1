use thiserror::Error;

use crate::iri::Iri;
use crate::parser::ParseDiagnostic;

/// Errors raised by the ontology model and by queries against it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid IRI {iri:?}: {reason}")]
    InvalidIri { iri: String, reason: &'static str },
    #[error("malformed axiom: {0}")]
    Malformed(String),
    #[error("unknown entity {0}")]
    NotFound(Iri),
    #[error("{0}")]
    Validation(String),
}

/// Failure to read a functional-syntax document or expression.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}", render_diagnostics(.diagnostics))]
pub struct ParseError {
    pub diagnostics: Vec<ParseDiagnostic>,
}

fn render_diagnostics(diagnostics: &[ParseDiagnostic]) -> String {
    diagnostics
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Top-level error for operations that combine several modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Normalise(#[from] crate::normalise::NormaliseError),
    #[error(transparent)]
    Verbalise(#[from] crate::verbalise::VerbaliseError),
}
