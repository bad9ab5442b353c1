//! Concept removal that keeps the subsumption hierarchy among survivors.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ModelError;
use crate::iri::Iri;
use crate::model::{Axiom, ConceptExpression, EntityKind, Ontology};

/// Removes `remove` from a copy of `onto`.
///
/// Each removed concept `x` is bridged first: every asserted child gets every
/// asserted parent of `x` (atomic or complex) as a new superclass. Axioms
/// mentioning `x` are then deleted, annotations included. Parents that
/// themselves mention an already-removed concept are not bridged.
pub fn prune(onto: &Ontology, remove: &BTreeSet<Iri>) -> Result<Ontology, ModelError> {
    for iri in remove {
        if iri.is_thing() {
            return Err(ModelError::Validation("owl:Thing cannot be removed".into()));
        }
        onto.require_concept(iri)?;
    }
    let mut out = onto.clone();
    if remove.is_empty() {
        return Ok(out);
    }
    for x in removal_order(onto, remove) {
        remove_one(&mut out, &x)?;
    }
    Ok(rebuild(&out, remove))
}

/// Children before parents, ties and cycles broken by IRI order.
fn removal_order(onto: &Ontology, remove: &BTreeSet<Iri>) -> Vec<Iri> {
    // parents of each removed concept that are themselves removed
    let mut pending: BTreeMap<Iri, BTreeSet<Iri>> = remove
        .iter()
        .map(|x| (x.clone(), BTreeSet::new()))
        .collect();
    for (c, p) in onto.parent_edges() {
        if let (Some(p), true) = (p.as_named(), remove.contains(&c)) {
            if p != &c && remove.contains(p) {
                // p must wait for its child c
                pending.get_mut(p).expect("removed").insert(c.clone());
            }
        }
    }
    let mut order = Vec::with_capacity(remove.len());
    while !pending.is_empty() {
        let next = pending
            .iter()
            .find(|(_, waits)| waits.is_empty())
            .map(|(x, _)| x.clone())
            .unwrap_or_else(|| pending.keys().next().expect("non-empty").clone());
        pending.remove(&next);
        for waits in pending.values_mut() {
            waits.remove(&next);
        }
        order.push(next);
    }
    order
}

fn remove_one(out: &mut Ontology, x: &Iri) -> Result<(), ModelError> {
    let parents = out.asserted_parents(x)?;
    let children = out.asserted_children(x)?;
    let mut bridges = Vec::new();
    for child in &children {
        if child == x {
            continue;
        }
        for parent in &parents {
            if parent.mentions(x) || parent == &ConceptExpression::Named(child.clone()) {
                continue;
            }
            bridges.push(Axiom::SubClassOf(
                ConceptExpression::Named(child.clone()),
                parent.clone(),
            ));
        }
    }
    // Edges of a surviving concept that live in an axiom about x, such as
    // EquivalentClasses(c, x, d), would vanish with it.
    let doomed: Vec<Axiom> = out.axioms().filter(|a| a.mentions(x)).cloned().collect();
    for axiom in &doomed {
        let mut edges = Vec::new();
        crate::model::push_parent_edges(axiom, &mut edges);
        for (c, p) in edges {
            if &c != x && !p.mentions(x) && p != ConceptExpression::Named(c.clone()) {
                bridges.push(Axiom::SubClassOf(ConceptExpression::Named(c), p));
            }
        }
    }
    for axiom in &doomed {
        out.remove_axiom(axiom);
    }
    for b in bridges {
        out.add_axiom(b)?;
    }
    Ok(())
}

fn rebuild(pruned: &Ontology, remove: &BTreeSet<Iri>) -> Ontology {
    let mut out = Ontology::new();
    out.set_iri(pruned.iri().cloned());
    for (name, ns) in pruned.prefixes() {
        out.add_prefix(name.clone(), ns.clone());
    }
    for (kind, iri) in pruned.signature().entries() {
        if !(kind == EntityKind::Class && remove.contains(iri)) {
            out.declare(kind, iri.clone());
        }
    }
    for axiom in pruned.axioms() {
        out.add_axiom(axiom.clone())
            .expect("axiom already validated");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ConceptExpression as CE;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x#{s}")).unwrap()
    }
    fn n(s: &str) -> CE {
        CE::Named(iri(s))
    }
    fn onto(axioms: Vec<Axiom>) -> Ontology {
        let mut o = Ontology::new();
        for a in axioms {
            o.add_axiom(a).unwrap();
        }
        o
    }
    fn removed(names: &[&str]) -> BTreeSet<Iri> {
        names.iter().map(|s| iri(s)).collect()
    }
    fn mentions_any(o: &Ontology, gone: &BTreeSet<Iri>) -> bool {
        o.axioms().any(|a| gone.iter().any(|g| a.mentions(g)))
            || gone.iter().any(|g| o.concepts().contains(g))
    }

    #[test]
    fn bridges_chain() {
        let o = onto(vec![
            Axiom::SubClassOf(n("A"), n("B")),
            Axiom::SubClassOf(n("B"), n("C")),
        ]);
        let gone = removed(&["B"]);
        let p = prune(&o, &gone).unwrap();
        assert!(p.contains_axiom(&Axiom::SubClassOf(n("A"), n("C"))));
        assert!(!mentions_any(&p, &gone));
    }

    #[test]
    fn empty_removal_is_identity() {
        let o = onto(vec![
            Axiom::SubClassOf(n("A"), n("B")),
            Axiom::label(iri("A"), "a"),
        ]);
        let p = prune(&o, &BTreeSet::new()).unwrap();
        assert_eq!(p, o);
        assert_eq!(p.axiom_set(), o.axiom_set());
    }

    #[test]
    fn complex_parents_are_bridged() {
        let ex = CE::some(iri("r"), n("D"));
        let o = onto(vec![
            Axiom::SubClassOf(n("A"), n("B")),
            Axiom::SubClassOf(n("B"), ex.clone()),
            Axiom::SubClassOf(n("B"), n("C")),
        ]);
        let p = prune(&o, &removed(&["B"])).unwrap();
        assert!(p.contains_axiom(&Axiom::SubClassOf(n("A"), n("C"))));
        assert!(p.contains_axiom(&Axiom::SubClassOf(n("A"), ex)));
    }

    #[test]
    fn parents_mentioning_removed_concepts_are_dropped() {
        let o = onto(vec![
            Axiom::SubClassOf(n("A"), CE::some(iri("r"), n("X"))),
            Axiom::SubClassOf(n("X"), n("Y")),
            Axiom::label(iri("X"), "x"),
        ]);
        let gone = removed(&["X"]);
        let p = prune(&o, &gone).unwrap();
        assert!(!mentions_any(&p, &gone));
        assert!(p.annotations(&iri("X")).is_empty());
        assert!(p.concepts().contains(&iri("A")));
    }

    #[test]
    fn equivalence_edges_of_survivors_are_kept() {
        let o = onto(vec![
            Axiom::EquivalentClasses(vec![n("A"), n("X"), n("B")]),
            Axiom::SubClassOf(n("C"), n("A")),
        ]);
        let p = prune(&o, &removed(&["X"])).unwrap();
        let cl = crate::reasoner::told_closure(&p);
        assert!(crate::reasoner::entails_subsumption(&cl, &iri("A"), &iri("B")).unwrap());
        assert!(crate::reasoner::entails_subsumption(&cl, &iri("B"), &iri("A")).unwrap());
    }

    #[test]
    fn adjacent_removals() {
        let o = onto(vec![
            Axiom::SubClassOf(n("A"), n("B")),
            Axiom::SubClassOf(n("B"), n("C")),
            Axiom::SubClassOf(n("C"), n("D")),
        ]);
        let p = prune(&o, &removed(&["B", "C"])).unwrap();
        assert!(p.contains_axiom(&Axiom::SubClassOf(n("A"), n("D"))));
        assert_eq!(p.axiom_count(), 1);
    }

    #[test]
    fn rejects_thing_and_unknown() {
        let o = onto(vec![Axiom::SubClassOf(n("A"), n("B"))]);
        assert!(matches!(
            prune(&o, &BTreeSet::from([Iri::thing()])),
            Err(ModelError::Validation(_))
        ));
        assert!(matches!(
            prune(&o, &removed(&["Q"])),
            Err(ModelError::NotFound(_))
        ));
    }
}
