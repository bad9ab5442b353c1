mod common;

use std::collections::BTreeSet;

use ontokit::model::{Axiom, ConceptExpression as CE};
use ontokit::normalise::{normalise, LeftAtom, NormalisedAxiom, RightAtom, FRESH_NAMESPACE};
use ontokit::reasoner::{el_classify, Saturation};
use ontokit::Iri;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn n(s: &str) -> CE {
    CE::Named(iri(s))
}

fn conj_count(axioms: &[NormalisedAxiom]) -> usize {
    axioms
        .iter()
        .filter(|a| matches!(a, NormalisedAxiom::ConjSub(..)))
        .count()
}

#[test]
fn nested_existential_is_named() {
    let o = ontology_of(
        [Axiom::SubClassOf(
            CE::some(iri("r"), CE::And(vec![n("A"), n("B")])),
            n("C"),
        )],
        &[],
    );
    let out = normalise(&o).unwrap();
    assert_eq!(out.definitions.len(), 1);
    let (fresh, def) = out.definitions.iter().next().unwrap();
    assert!(fresh.as_str().starts_with(FRESH_NAMESPACE));
    assert_eq!(def, &CE::And(vec![n("A"), n("B")]));
    assert!(out.axioms.contains(&NormalisedAxiom::ExistsLeft(
        iri("r"),
        LeftAtom::Named(fresh.clone()),
        RightAtom::Named(iri("C"))
    )));
    assert!(out.axioms.contains(&NormalisedAxiom::ConjSub(
        LeftAtom::Named(iri("A")),
        LeftAtom::Named(iri("B")),
        RightAtom::Named(fresh.clone())
    )));
}

#[test]
fn non_el_axioms_are_listed() {
    let o = ontology_of(
        [
            Axiom::SubClassOf(n("A"), CE::Or(vec![n("B"), n("C")])),
            Axiom::SubClassOf(n("A"), n("B")),
            Axiom::SubClassOf(CE::Not(Box::new(n("A"))), n("C")),
        ],
        &[],
    );
    let err = normalise(&o).unwrap_err();
    let constructors: BTreeSet<&str> = err.offenders.iter().map(|o| o.constructor).collect();
    assert_eq!(
        constructors,
        BTreeSet::from(["ObjectUnionOf", "ObjectComplementOf"])
    );
}

#[test]
fn output_is_deterministic_on_corpus() {
    let o = ontokit::parse_ontology(&read_data("disease.ofn"))
        .unwrap()
        .ontology;
    assert_eq!(normalise(&o).unwrap(), normalise(&o).unwrap());
}

proptest! {
    #[test]
    fn n_ary_left_conjunction_folds(n_ops in 2usize..8) {
        let ops: Vec<CE> = concept_names(n_ops).into_iter().map(CE::Named).collect();
        let o = ontology_of([Axiom::SubClassOf(CE::And(ops), n("D"))], &[]);
        let out = normalise(&o).unwrap();
        prop_assert_eq!(conj_count(&out.axioms), n_ops - 1);
        prop_assert_eq!(out.definitions.len(), n_ops - 2);
    }

    #[test]
    fn fresh_names_avoid_signature(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut o = random_el_ontology(&mut rng, 6, 10);
        // a concept already living in the fresh namespace
        let clash = Iri::new(format!("{FRESH_NAMESPACE}N0")).unwrap();
        o.add_axiom(Axiom::SubClassOf(CE::Named(clash.clone()), CE::some(iri("r0"), CE::And(vec![n("C0"), n("C1")]))))
            .unwrap();
        let out = normalise(&o).unwrap();
        let signature: BTreeSet<Iri> = o.concepts().iter().cloned().collect();
        for fresh in out.definitions.keys() {
            prop_assert!(!signature.contains(fresh), "{} collides", fresh);
        }
    }

    #[test]
    fn normal_forms_preserve_named_subsumptions(seed in any::<u64>()) {
        let o = random_el_ontology(&mut ChaCha8Rng::seed_from_u64(seed), 7, 10);
        let out = normalise(&o).unwrap();
        let normalised = out.to_ontology();
        prop_assert!(normalise(&normalised).is_ok());
        let closure = Saturation::run(&out.axioms, o.concepts().iter().cloned()).closure(o.concepts(), 0);
        prop_assert_eq!(closure.pairs(), el_classify(&o).unwrap().pairs());
        prop_assert_eq!(closure.pairs(), expression_closure(&o));
    }

    #[test]
    fn every_output_is_a_normal_form(seed in any::<u64>()) {
        let o = random_el_ontology(&mut ChaCha8Rng::seed_from_u64(seed), 7, 10);
        for ax in normalise(&o).unwrap().axioms {
            // round trip through the axiom model
            let back = ax.to_axiom();
            let single = ontology_of([back], &[]);
            let renorm = normalise(&single).unwrap();
            prop_assert_eq!(renorm.axioms, vec![ax]);
            prop_assert!(renorm.definitions.is_empty());
        }
    }
}
