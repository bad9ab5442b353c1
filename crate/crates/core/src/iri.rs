//! IRIs and the handful of standard vocabulary terms the toolkit relies on.

use std::fmt;
use std::sync::Arc;

use crate::error::ModelError;

pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
pub const OWL_NOTHING: &str = "http://www.w3.org/2002/07/owl#Nothing";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// Absolute IRI. Cheap to clone; compared by exact string equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    /// Validates and wraps an IRI string. Rejects empty strings, whitespace,
    /// and the characters `<`, `>` and `"`, which cannot be written back out
    /// in either functional syntax or N-Triples.
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(ModelError::InvalidIri {
                iri: value.to_string(),
                reason: "empty",
            });
        }
        if value.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidIri {
                iri: value.to_string(),
                reason: "contains whitespace",
            });
        }
        if value.contains(['<', '>', '"']) {
            return Err(ModelError::InvalidIri {
                iri: value.to_string(),
                reason: "contains a reserved delimiter",
            });
        }
        Ok(Iri(Arc::from(value)))
    }

    /// Wraps a string known to be valid (compile-time vocabulary, test fixtures).
    ///
    /// Panics on invalid input.
    pub fn from_static(value: &'static str) -> Self {
        Self::new(value).expect("static IRI must be valid")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn thing() -> Self {
        Self::from_static(OWL_THING)
    }

    pub fn nothing() -> Self {
        Self::from_static(OWL_NOTHING)
    }

    pub fn rdfs_label() -> Self {
        Self::from_static(RDFS_LABEL)
    }

    pub fn is_thing(&self) -> bool {
        self.as_str() == OWL_THING
    }

    pub fn is_nothing(&self) -> bool {
        self.as_str() == OWL_NOTHING
    }

    /// The part after the last `#` or `/`, or the whole IRI if neither occurs.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['#', '/']) {
            Some(pos) if pos + 1 < s.len() => &s[pos + 1..],
            _ => s,
        }
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl TryFrom<&str> for Iri {
    type Error = ModelError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_iris() {
        assert!(Iri::new("").is_err());
        assert!(Iri::new("http://x/a b").is_err());
        assert!(Iri::new("http://x/<a>").is_err());
        assert!(Iri::new("http://x/a").is_ok());
    }

    #[test]
    fn local_names() {
        assert_eq!(
            Iri::from_static("http://x#derivesFrom").local_name(),
            "derivesFrom"
        );
        assert_eq!(Iri::from_static("http://x/onto/A").local_name(), "A");
        assert_eq!(Iri::from_static("urn:x").local_name(), "urn:x");
    }
}
