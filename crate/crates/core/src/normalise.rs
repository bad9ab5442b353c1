//! Rewriting of EL axioms into the six normal forms
//! `C ⊑ D`, `C ⊓ C' ⊑ D`, `C ⊑ ∃r.D`, `∃r.C ⊑ D`, `r ⊑ s`, `r ∘ r' ⊑ s`.
//!
//! Complex sub-expressions are replaced by fresh concepts `urn:normal#N<k>`,
//! numbered in the order they are first needed. Syntactically identical
//! sub-expressions share one fresh name.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::iri::Iri;
use crate::model::{Axiom, ConceptExpression, Ontology};

pub const FRESH_NAMESPACE: &str = "urn:normal#";

/// Concept slot allowed on the left of a normal form: a named concept or `⊤`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeftAtom {
    Top,
    Named(Iri),
}

/// Concept slot allowed on the right of a normal form: a named concept or `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RightAtom {
    Bottom,
    Named(Iri),
}

impl LeftAtom {
    pub fn to_expression(&self) -> ConceptExpression {
        match self {
            LeftAtom::Top => ConceptExpression::Top,
            LeftAtom::Named(i) => ConceptExpression::Named(i.clone()),
        }
    }
}

impl RightAtom {
    pub fn to_expression(&self) -> ConceptExpression {
        match self {
            RightAtom::Bottom => ConceptExpression::Bottom,
            RightAtom::Named(i) => ConceptExpression::Named(i.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalisedAxiom {
    /// `C ⊑ D`
    AtomicSub(LeftAtom, RightAtom),
    /// `C ⊓ C' ⊑ D`
    ConjSub(LeftAtom, LeftAtom, RightAtom),
    /// `C ⊑ ∃r.D`
    ExistsRight(LeftAtom, Iri, Iri),
    /// `∃r.C ⊑ D`
    ExistsLeft(Iri, LeftAtom, RightAtom),
    /// `r ⊑ s`
    RoleSub(Iri, Iri),
    /// `r ∘ r' ⊑ s`
    RoleChain(Iri, Iri, Iri),
}

impl NormalisedAxiom {
    pub fn to_axiom(&self) -> Axiom {
        use ConceptExpression as CE;
        match self {
            NormalisedAxiom::AtomicSub(c, d) => {
                Axiom::SubClassOf(c.to_expression(), d.to_expression())
            }
            NormalisedAxiom::ConjSub(c1, c2, d) => Axiom::SubClassOf(
                CE::And(vec![c1.to_expression(), c2.to_expression()]),
                d.to_expression(),
            ),
            NormalisedAxiom::ExistsRight(c, r, d) => {
                Axiom::SubClassOf(c.to_expression(), CE::some(r.clone(), CE::Named(d.clone())))
            }
            NormalisedAxiom::ExistsLeft(r, c, d) => {
                Axiom::SubClassOf(CE::some(r.clone(), c.to_expression()), d.to_expression())
            }
            NormalisedAxiom::RoleSub(r, s) => Axiom::SubObjectPropertyOf(r.clone(), s.clone()),
            NormalisedAxiom::RoleChain(r1, r2, s) => {
                Axiom::SubPropertyChainOf([r1.clone(), r2.clone()], s.clone())
            }
        }
    }
}

impl fmt::Display for NormalisedAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_axiom().fmt(f)
    }
}

/// One axiom that cannot be normalised, with the first offending constructor.
#[derive(Clone, Debug, PartialEq)]
pub struct NonElAxiom {
    pub axiom: Axiom,
    pub constructor: &'static str,
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{} axiom(s) outside the EL fragment: {}", .offenders.len(), describe(.offenders))]
pub struct NormaliseError {
    pub offenders: Vec<NonElAxiom>,
}

fn describe(offenders: &[NonElAxiom]) -> String {
    offenders
        .iter()
        .map(|o| format!("{} uses {}", o.axiom, o.constructor))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Normalised {
    pub axioms: Vec<NormalisedAxiom>,
    /// Fresh concept → the sub-expression it stands for.
    pub definitions: IndexMap<Iri, ConceptExpression>,
}

impl Normalised {
    pub fn to_ontology(&self) -> Ontology {
        let mut o = Ontology::new();
        for ax in &self.axioms {
            o.add_axiom(ax.to_axiom())
                .expect("normal forms are well-formed");
        }
        o
    }
}

fn non_el_constructor(e: &ConceptExpression) -> Option<&'static str> {
    match e {
        ConceptExpression::Or(_) => Some("ObjectUnionOf"),
        ConceptExpression::Not(_) => Some("ObjectComplementOf"),
        ConceptExpression::Only(..) => Some("ObjectAllValuesFrom"),
        ConceptExpression::And(ops) => ops.iter().find_map(non_el_constructor),
        ConceptExpression::Some(_, f) => non_el_constructor(f),
        _ => None,
    }
}

/// Normalises the TBox of `onto`. Assertions and annotations are ignored.
pub fn normalise(onto: &Ontology) -> Result<Normalised, NormaliseError> {
    let offenders: Vec<NonElAxiom> = onto
        .axioms()
        .filter_map(|ax| {
            let bad = match ax {
                Axiom::SubClassOf(a, b) => non_el_constructor(a).or_else(|| non_el_constructor(b)),
                Axiom::EquivalentClasses(ms) => ms.iter().find_map(non_el_constructor),
                _ => None,
            };
            bad.map(|constructor| NonElAxiom {
                axiom: ax.clone(),
                constructor,
            })
        })
        .collect();
    if !offenders.is_empty() {
        return Err(NormaliseError { offenders });
    }

    let mut n = Normaliser::new(onto);
    for ax in onto.axioms() {
        match ax {
            Axiom::SubClassOf(sub, sup) => n.sub(sub, sup),
            Axiom::EquivalentClasses(members) => {
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        n.sub(a, b);
                        n.sub(b, a);
                    }
                }
            }
            Axiom::SubObjectPropertyOf(r, s) => {
                n.emit(NormalisedAxiom::RoleSub(r.clone(), s.clone()))
            }
            Axiom::SubPropertyChainOf([r1, r2], s) => n.emit(NormalisedAxiom::RoleChain(
                r1.clone(),
                r2.clone(),
                s.clone(),
            )),
            _ => {}
        }
    }
    Ok(Normalised {
        axioms: n.out.into_iter().collect(),
        definitions: n.definitions,
    })
}

struct FreshName {
    iri: Iri,
    // `E ⊑ N` emitted (name used on a left-hand side)
    lower: bool,
    // `N ⊑ E` emitted
    upper: bool,
}

struct Normaliser {
    reserved: BTreeSet<Iri>,
    counter: usize,
    names: HashMap<ConceptExpression, FreshName>,
    definitions: IndexMap<Iri, ConceptExpression>,
    out: IndexSet<NormalisedAxiom>,
}

/// Conjunction operands flattened, `⊤` dropped, duplicates removed.
fn flatten_and(ops: &[ConceptExpression]) -> Vec<ConceptExpression> {
    let mut out: Vec<ConceptExpression> = Vec::new();
    for op in ops {
        match op {
            ConceptExpression::And(inner) => {
                for x in flatten_and(inner) {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
            ConceptExpression::Top => {}
            other => {
                if !out.contains(other) {
                    out.push(other.clone());
                }
            }
        }
    }
    out
}

/// Rewrites trivial conjunctions: `⊤` members vanish, single members unwrap.
fn simplify(e: &ConceptExpression) -> ConceptExpression {
    match e {
        ConceptExpression::And(ops) => {
            let simplified: Vec<_> = ops.iter().map(simplify).collect();
            let ops = flatten_and(&simplified);
            if ops.contains(&ConceptExpression::Bottom) {
                return ConceptExpression::Bottom;
            }
            match ops.len() {
                0 => ConceptExpression::Top,
                1 => ops.into_iter().next().unwrap(),
                _ => ConceptExpression::And(ops),
            }
        }
        ConceptExpression::Some(r, f) => match simplify(f) {
            ConceptExpression::Bottom => ConceptExpression::Bottom,
            f => ConceptExpression::some(r.clone(), f),
        },
        other => other.clone(),
    }
}

impl Normaliser {
    fn new(onto: &Ontology) -> Self {
        Normaliser {
            reserved: onto.concepts().clone(),
            counter: 0,
            names: HashMap::new(),
            definitions: IndexMap::new(),
            out: IndexSet::new(),
        }
    }

    fn emit(&mut self, ax: NormalisedAxiom) {
        self.out.insert(ax);
    }

    fn fresh_iri(&mut self) -> Iri {
        loop {
            self.counter += 1;
            let iri = Iri::new(format!("{FRESH_NAMESPACE}N{}", self.counter)).expect("valid");
            if !self.reserved.contains(&iri) {
                return iri;
            }
        }
    }

    fn name_for(&mut self, e: &ConceptExpression) -> Iri {
        if let Some(n) = self.names.get(e) {
            return n.iri.clone();
        }
        let iri = self.fresh_iri();
        self.definitions.insert(iri.clone(), e.clone());
        self.names.insert(
            e.clone(),
            FreshName {
                iri: iri.clone(),
                lower: false,
                upper: false,
            },
        );
        iri
    }

    /// Fresh name `N` with `e ⊑ N` guaranteed.
    fn lower_name(&mut self, e: &ConceptExpression) -> Iri {
        let iri = self.name_for(e);
        let entry = self.names.get_mut(e).expect("just named");
        if !entry.lower {
            entry.lower = true;
            self.sub(e, &ConceptExpression::Named(iri.clone()));
        }
        iri
    }

    /// Fresh name `N` with `N ⊑ e` guaranteed.
    fn upper_name(&mut self, e: &ConceptExpression) -> Iri {
        let iri = self.name_for(e);
        let entry = self.names.get_mut(e).expect("just named");
        if !entry.upper {
            entry.upper = true;
            self.sub(&ConceptExpression::Named(iri.clone()), e);
        }
        iri
    }

    /// An operand usable in a left-hand slot.
    fn left_atom(&mut self, e: &ConceptExpression) -> LeftAtom {
        match e {
            ConceptExpression::Named(i) => LeftAtom::Named(i.clone()),
            ConceptExpression::Top => LeftAtom::Top,
            complex => LeftAtom::Named(self.lower_name(complex)),
        }
    }

    fn sub(&mut self, lhs: &ConceptExpression, rhs: &ConceptExpression) {
        use ConceptExpression as CE;
        let lhs = simplify(lhs);
        let rhs = simplify(rhs);
        if lhs == CE::Bottom || rhs == CE::Top || lhs == rhs {
            return;
        }
        if let CE::And(ops) = &rhs {
            for op in ops {
                self.sub(&lhs, op);
            }
            return;
        }
        let rhs_atom = match &rhs {
            CE::Named(i) => Some(RightAtom::Named(i.clone())),
            CE::Bottom => Some(RightAtom::Bottom),
            _ => None,
        };
        match (&lhs, rhs_atom) {
            (CE::Named(_) | CE::Top, Some(d)) => {
                let c = self.left_atom(&lhs);
                self.emit(NormalisedAxiom::AtomicSub(c, d));
            }
            (CE::Named(_) | CE::Top, None) => {
                let c = self.left_atom(&lhs);
                let CE::Some(r, filler) = &rhs else {
                    unreachable!("EL right-hand sides are atoms, conjunctions or existentials")
                };
                let d = match filler.as_ref() {
                    CE::Named(i) => i.clone(),
                    other => self.upper_name(other),
                };
                self.emit(NormalisedAxiom::ExistsRight(c, r.clone(), d));
            }
            (CE::And(ops), Some(d)) => {
                let atoms: Vec<LeftAtom> = ops.iter().map(|op| self.left_atom(op)).collect();
                let mut acc = atoms[0].clone();
                let mut acc_expr = vec![ops[0].clone()];
                for (i, next) in atoms.iter().enumerate().skip(1) {
                    acc_expr.push(ops[i].clone());
                    let target = if i + 1 == atoms.len() {
                        d.clone()
                    } else {
                        let partial = CE::And(acc_expr.clone());
                        let iri = self.name_for(&partial);
                        self.names.get_mut(&partial).expect("named").lower = true;
                        RightAtom::Named(iri)
                    };
                    self.emit(NormalisedAxiom::ConjSub(
                        acc.clone(),
                        next.clone(),
                        target.clone(),
                    ));
                    if let RightAtom::Named(iri) = target {
                        acc = LeftAtom::Named(iri);
                    }
                }
            }
            (CE::Some(r, filler), Some(d)) => {
                let c = self.left_atom(filler);
                self.emit(NormalisedAxiom::ExistsLeft(r.clone(), c, d));
            }
            (_, None) => {
                let n = self.lower_name(&lhs);
                self.sub(&CE::Named(n), &rhs);
            }
            (other, _) => unreachable!("non-EL left-hand side {other:?} survived validation"),
        }
    }
}
