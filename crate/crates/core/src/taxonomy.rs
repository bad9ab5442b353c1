//! The named-concept subsumption DAG rooted at `owl:Thing`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::ModelError;
use crate::iri::Iri;
use crate::model::Ontology;
use crate::reasoner::{direct_subsumers, SubsumptionClosure};

/// Nodes are equivalence-class representatives; `members` records the full class.
#[derive(Clone, Debug, PartialEq)]
pub struct Taxonomy {
    root: Iri,
    parents: BTreeMap<Iri, BTreeSet<Iri>>,
    children: BTreeMap<Iri, BTreeSet<Iri>>,
    members: BTreeMap<Iri, BTreeSet<Iri>>,
    representative: BTreeMap<Iri, Iri>,
}

pub fn build_taxonomy(onto: &Ontology, closure: &SubsumptionClosure) -> Taxonomy {
    let root = Iri::thing();
    let mut tax = Taxonomy {
        root: root.clone(),
        parents: BTreeMap::new(),
        children: BTreeMap::new(),
        members: BTreeMap::new(),
        representative: BTreeMap::new(),
    };
    let concepts = onto.concepts().iter().chain(std::iter::once(&root));
    for c in concepts {
        let Ok(rep) = closure.representative(c) else {
            continue;
        };
        tax.representative.insert(c.clone(), rep.clone());
        tax.members
            .entry(rep.clone())
            .or_default()
            .insert(c.clone());
        if tax.parents.contains_key(&rep) {
            continue;
        }
        let parents = direct_subsumers(closure, &rep).expect("representative is covered");
        for p in &parents {
            tax.children
                .entry(p.clone())
                .or_default()
                .insert(rep.clone());
        }
        tax.children.entry(rep.clone()).or_default();
        tax.parents.insert(rep, parents);
    }
    tax
}

impl Taxonomy {
    pub fn root(&self) -> &Iri {
        &self.root
    }

    /// Representative nodes, root included.
    pub fn nodes(&self) -> impl Iterator<Item = &Iri> {
        self.parents.keys()
    }

    pub fn contains(&self, c: &Iri) -> bool {
        self.representative.contains_key(c)
    }

    /// The node standing for `c`, which may be any member of an equivalence class.
    pub fn resolve(&self, c: &Iri) -> Result<&Iri, ModelError> {
        self.representative
            .get(c)
            .ok_or_else(|| ModelError::NotFound(c.clone()))
    }

    pub fn parents(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ModelError> {
        let rep = self.resolve(c)?;
        Ok(&self.parents[rep])
    }

    pub fn children(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ModelError> {
        let rep = self.resolve(c)?;
        Ok(&self.children[rep])
    }

    pub fn members(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ModelError> {
        let rep = self.resolve(c)?;
        Ok(&self.members[rep])
    }

    /// All `(child, parent)` edges.
    pub fn edges(&self) -> BTreeSet<(Iri, Iri)> {
        self.parents
            .iter()
            .flat_map(|(c, ps)| ps.iter().map(move |p| (c.clone(), p.clone())))
            .collect()
    }

    /// Edge list as `child<TAB>parent` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (c, p) in self.edges() {
            let _ = writeln!(out, "{c}\t{p}");
        }
        out
    }
}
