//! Lossy projection of axioms into IRI-only triples.

use std::collections::BTreeSet;
use std::fmt::{self, Write};

use crate::iri::{Iri, RDFS_SUBCLASS_OF, RDF_TYPE};
use crate::model::{Axiom, ConceptExpression, Ontology};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Iri,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}> <{}> <{}> .",
            self.subject, self.predicate, self.object
        )
    }
}

fn named(e: &ConceptExpression) -> Option<&Iri> {
    match e {
        ConceptExpression::Named(i) => Some(i),
        _ => None,
    }
}

fn project_subclass(sub: &ConceptExpression, sup: &ConceptExpression, out: &mut BTreeSet<Triple>) {
    let Some(c) = named(sub) else { return };
    let (predicate, object) = match sup {
        ConceptExpression::Named(d) => (Iri::from_static(RDFS_SUBCLASS_OF), d),
        ConceptExpression::Some(r, f) | ConceptExpression::Only(r, f) => match named(f) {
            Some(d) => (r.clone(), d),
            None => return,
        },
        _ => return,
    };
    out.insert(Triple {
        subject: c.clone(),
        predicate,
        object: object.clone(),
    });
}

pub fn project_axiom(axiom: &Axiom, out: &mut BTreeSet<Triple>) {
    match axiom {
        Axiom::SubClassOf(sub, sup) => project_subclass(sub, sup, out),
        Axiom::EquivalentClasses(members) => {
            for x in members {
                for y in members {
                    if x != y {
                        project_subclass(x, y, out);
                    }
                }
            }
        }
        Axiom::ClassAssertion(ConceptExpression::Named(d), a) => {
            out.insert(Triple {
                subject: a.clone(),
                predicate: Iri::from_static(RDF_TYPE),
                object: d.clone(),
            });
        }
        Axiom::ObjectPropertyAssertion {
            role,
            subject,
            object,
        } => {
            out.insert(Triple {
                subject: subject.clone(),
                predicate: role.clone(),
                object: object.clone(),
            });
        }
        _ => {}
    }
}

pub fn project(onto: &Ontology) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for axiom in onto.axioms() {
        project_axiom(axiom, &mut out);
    }
    out
}

/// One `<s> <p> <o> .` line per triple, sorted.
pub fn to_ntriples(triples: &BTreeSet<Triple>) -> String {
    let mut out = String::new();
    for t in triples {
        let _ = writeln!(out, "{t}");
    }
    out
}
