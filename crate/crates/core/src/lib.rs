//! Ontology engineering toolkit: an OWL functional-syntax model and parser,
//! EL reasoning, pruning, normalisation, graph projections, verbalisation,
//! lexical ontology matching and matching evaluation.

pub mod error;
pub mod eval;
pub mod io;
pub mod iri;
pub mod matcher;
pub mod model;
pub mod normalise;
pub mod parser;
pub mod projection;
pub mod prune;
pub mod reasoner;
pub mod taxonomy;
pub mod verbalise;

pub use error::{Error, ModelError, ParseError};
pub use iri::Iri;
pub use model::{Axiom, ConceptExpression, EntityKind, Literal, Ontology, Signature};
pub use parser::{parse_concept_expression, parse_ontology, serialize_ontology, SyntaxTree};
