//! Subsumption reasoning: a structural told-closure reasoner and an EL
//! completion-rule classifier, with queries for entailment, direct
//! subsumers and assumed disjointness.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::ModelError;
use crate::iri::Iri;
use crate::model::{ConceptExpression, Ontology};
use crate::normalise::{normalise, LeftAtom, NormaliseError, NormalisedAxiom, RightAtom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tier {
    Structural,
    El,
}

/// Atomic subsumptions between the named concepts of one ontology (plus `owl:Thing`).
///
/// The relation is reflexive and transitive and every concept is subsumed by
/// `owl:Thing`. Unsatisfiable concepts additionally carry `owl:Nothing` and are
/// subsumed by every concept.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsumptionClosure {
    tier: Tier,
    generation: u64,
    concepts: BTreeSet<Iri>,
    supers: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl SubsumptionClosure {
    /// Builds a closure from explicit subsumer sets. Reflexivity, `⊤` and
    /// transitivity are added here.
    pub fn from_subsumers(
        tier: Tier,
        generation: u64,
        concepts: impl IntoIterator<Item = Iri>,
        supers: impl IntoIterator<Item = (Iri, Iri)>,
    ) -> Self {
        let thing = Iri::thing();
        let mut all: BTreeSet<Iri> = concepts.into_iter().collect();
        all.insert(thing.clone());
        let mut direct: HashMap<Iri, Vec<Iri>> = HashMap::new();
        for (sub, sup) in supers {
            direct.entry(sub).or_default().push(sup);
        }
        let mut closed = BTreeMap::new();
        for c in &all {
            let mut seen = BTreeSet::from([c.clone(), thing.clone()]);
            let mut stack = vec![c.clone()];
            while let Some(x) = stack.pop() {
                for y in direct.get(&x).into_iter().flatten() {
                    if seen.insert(y.clone()) {
                        stack.push(y.clone());
                    }
                }
            }
            closed.insert(c.clone(), seen);
        }
        let mut closure = SubsumptionClosure {
            tier,
            generation,
            concepts: all,
            supers: closed,
        };
        closure.spread_unsatisfiable();
        closure
    }

    fn spread_unsatisfiable(&mut self) {
        let nothing = Iri::nothing();
        let all = self.concepts.clone();
        for set in self.supers.values_mut() {
            if set.contains(&nothing) {
                set.extend(all.iter().cloned());
            }
        }
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    /// Named concepts covered by the closure, including `owl:Thing`.
    pub fn concepts(&self) -> &BTreeSet<Iri> {
        &self.concepts
    }

    pub fn contains(&self, c: &Iri) -> bool {
        self.concepts.contains(c)
    }

    /// True once the ontology has been modified after this closure was computed.
    pub fn is_stale(&self, onto: &Ontology) -> bool {
        self.generation != onto.generation()
    }

    fn require(&self, c: &Iri) -> Result<(), ModelError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(ModelError::NotFound(c.clone()))
        }
    }

    /// All subsumers of `c`, itself and `owl:Thing` included.
    pub fn subsumers(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ModelError> {
        self.supers
            .get(c)
            .ok_or_else(|| ModelError::NotFound(c.clone()))
    }

    /// All concepts subsumed by `c`, itself included.
    pub fn subsumees(&self, c: &Iri) -> Result<BTreeSet<Iri>, ModelError> {
        self.require(c)?;
        Ok(self
            .supers
            .iter()
            .filter(|(_, s)| s.contains(c))
            .map(|(sub, _)| sub.clone())
            .collect())
    }

    pub(crate) fn holds(&self, c: &Iri, d: &Iri) -> bool {
        self.supers.get(c).is_some_and(|s| s.contains(d))
    }

    pub fn is_unsatisfiable(&self, c: &Iri) -> bool {
        self.holds(c, &Iri::nothing())
    }

    /// Every `(sub, sup)` pair between covered concepts.
    pub fn pairs(&self) -> BTreeSet<(Iri, Iri)> {
        self.supers
            .iter()
            .flat_map(|(sub, sups)| {
                sups.iter()
                    .filter(|s| self.concepts.contains(*s))
                    .map(move |sup| (sub.clone(), sup.clone()))
            })
            .collect()
    }

    /// Concepts mutually subsuming `c` (its equivalence class), `c` included.
    pub fn equivalents(&self, c: &Iri) -> Result<BTreeSet<Iri>, ModelError> {
        let sups = self.subsumers(c)?;
        Ok(sups
            .iter()
            .filter(|d| self.concepts.contains(*d) && self.holds(d, c))
            .cloned()
            .collect())
    }

    /// Representative of the equivalence class of `c`: `owl:Thing` if the
    /// class contains it, otherwise the lexicographically smallest member.
    pub fn representative(&self, c: &Iri) -> Result<Iri, ModelError> {
        let eq = self.equivalents(c)?;
        let thing = Iri::thing();
        if eq.contains(&thing) {
            return Ok(thing);
        }
        Ok(eq.into_iter().next().expect("reflexive"))
    }
}

/// Reflexive-transitive closure of the asserted named-to-named subsumptions.
/// `EquivalentClasses(C, D1 ⊓ … ⊓ Dn)` contributes `C ⊑ Di` for each named `Di`;
/// other complex expressions are ignored.
pub fn told_closure(onto: &Ontology) -> SubsumptionClosure {
    let edges = onto
        .parent_edges()
        .into_iter()
        .filter_map(|(c, p)| match p {
            ConceptExpression::Named(d) => Some((c, d)),
            _ => None,
        });
    SubsumptionClosure::from_subsumers(
        Tier::Structural,
        onto.generation(),
        onto.concepts().iter().cloned(),
        edges,
    )
}

/// Normalises `onto` and saturates the EL completion rules.
pub fn el_classify(onto: &Ontology) -> Result<SubsumptionClosure, NormaliseError> {
    let normalised = normalise(onto)?;
    let sat = Saturation::run(&normalised.axioms, onto.concepts().iter().cloned());
    Ok(sat.closure(onto.concepts(), onto.generation()))
}

const TOP: usize = 0;
const BOTTOM: usize = 1;

/// Saturated completion state over normalised axioms.
#[derive(Debug, Clone)]
pub struct Saturation {
    names: Vec<Iri>,
    ids: HashMap<Iri, usize>,
    subsumers: Vec<HashSet<usize>>,
    links: HashMap<Iri, HashSet<(usize, usize)>>,
}

#[derive(Default)]
struct Index {
    told: HashMap<usize, Vec<usize>>,
    // operand -> (other operand, conclusion)
    conj: HashMap<usize, Vec<(usize, usize)>>,
    exists_right: HashMap<usize, Vec<(Iri, usize)>>,
    exists_left: HashMap<(Iri, usize), Vec<usize>>,
    // strict super-roles, transitively closed
    super_roles: HashMap<Iri, Vec<Iri>>,
    chains_first: HashMap<Iri, Vec<(Iri, Iri)>>,
    chains_second: HashMap<Iri, Vec<(Iri, Iri)>>,
}

enum Item {
    Sub(usize, usize),
    Link(usize, Iri, usize),
}

impl Saturation {
    /// Runs the completion rules to a fixpoint. `extra` lists concepts that get
    /// initialised even if no axiom mentions them.
    pub fn run(axioms: &[NormalisedAxiom], extra: impl IntoIterator<Item = Iri>) -> Self {
        let mut sat = Saturation {
            names: vec![Iri::thing(), Iri::nothing()],
            ids: HashMap::from([(Iri::thing(), TOP), (Iri::nothing(), BOTTOM)]),
            subsumers: vec![HashSet::new(), HashSet::new()],
            links: HashMap::new(),
        };
        let mut idx = Index::default();
        let mut role_edges: HashMap<Iri, Vec<Iri>> = HashMap::new();
        let mut roles = BTreeSet::new();
        for ax in axioms {
            match ax {
                NormalisedAxiom::AtomicSub(c, d) => {
                    let (c, d) = (sat.left(c), sat.right(d));
                    idx.told.entry(c).or_default().push(d);
                }
                NormalisedAxiom::ConjSub(c1, c2, d) => {
                    let (c1, c2, d) = (sat.left(c1), sat.left(c2), sat.right(d));
                    idx.conj.entry(c1).or_default().push((c2, d));
                    idx.conj.entry(c2).or_default().push((c1, d));
                }
                NormalisedAxiom::ExistsRight(c, r, d) => {
                    let (c, d) = (sat.left(c), sat.node(d));
                    idx.exists_right.entry(c).or_default().push((r.clone(), d));
                }
                NormalisedAxiom::ExistsLeft(r, c, d) => {
                    let (c, d) = (sat.left(c), sat.right(d));
                    idx.exists_left.entry((r.clone(), c)).or_default().push(d);
                }
                NormalisedAxiom::RoleSub(r, s) => {
                    roles.insert(r.clone());
                    role_edges.entry(r.clone()).or_default().push(s.clone());
                }
                NormalisedAxiom::RoleChain(r1, r2, s) => {
                    idx.chains_first
                        .entry(r1.clone())
                        .or_default()
                        .push((r2.clone(), s.clone()));
                    idx.chains_second
                        .entry(r2.clone())
                        .or_default()
                        .push((r1.clone(), s.clone()));
                }
            }
        }
        for r in roles {
            let mut seen = BTreeSet::new();
            let mut stack = vec![r.clone()];
            while let Some(x) = stack.pop() {
                for y in role_edges.get(&x).into_iter().flatten() {
                    if *y != r && seen.insert(y.clone()) {
                        stack.push(y.clone());
                    }
                }
            }
            idx.super_roles.insert(r, seen.into_iter().collect());
        }
        for iri in extra {
            sat.node(&iri);
        }
        sat.saturate(&idx);
        sat
    }

    fn node(&mut self, iri: &Iri) -> usize {
        if let Some(&id) = self.ids.get(iri) {
            return id;
        }
        let id = self.names.len();
        self.names.push(iri.clone());
        self.ids.insert(iri.clone(), id);
        self.subsumers.push(HashSet::new());
        id
    }

    fn left(&mut self, a: &LeftAtom) -> usize {
        match a {
            LeftAtom::Top => TOP,
            LeftAtom::Named(i) => self.node(i),
        }
    }

    fn right(&mut self, a: &RightAtom) -> usize {
        match a {
            RightAtom::Bottom => BOTTOM,
            RightAtom::Named(i) => self.node(i),
        }
    }

    fn saturate(&mut self, idx: &Index) {
        let mut queue: VecDeque<Item> = VecDeque::new();
        for n in 0..self.names.len() {
            if n == BOTTOM {
                continue;
            }
            queue.push_back(Item::Sub(n, n));
            queue.push_back(Item::Sub(n, TOP));
        }
        // predecessors per role: target -> {(role, source)}
        let mut preds: HashMap<usize, Vec<(Iri, usize)>> = HashMap::new();
        let mut succs: HashMap<usize, Vec<(Iri, usize)>> = HashMap::new();
        while let Some(item) = queue.pop_front() {
            match item {
                Item::Sub(c, x) => {
                    if !self.subsumers[c].insert(x) {
                        continue;
                    }
                    for &d in idx.told.get(&x).into_iter().flatten() {
                        queue.push_back(Item::Sub(c, d));
                    }
                    for &(other, d) in idx.conj.get(&x).into_iter().flatten() {
                        if self.subsumers[c].contains(&other) {
                            queue.push_back(Item::Sub(c, d));
                        }
                    }
                    for (r, d) in idx.exists_right.get(&x).into_iter().flatten() {
                        queue.push_back(Item::Link(c, r.clone(), *d));
                    }
                    for (r, e) in preds.get(&c).into_iter().flatten() {
                        for &d in idx.exists_left.get(&(r.clone(), x)).into_iter().flatten() {
                            queue.push_back(Item::Sub(*e, d));
                        }
                        if x == BOTTOM {
                            queue.push_back(Item::Sub(*e, BOTTOM));
                        }
                    }
                }
                Item::Link(c, r, d) => {
                    if !self.links.entry(r.clone()).or_default().insert((c, d)) {
                        continue;
                    }
                    preds.entry(d).or_default().push((r.clone(), c));
                    succs.entry(c).or_default().push((r.clone(), d));
                    for x in self.subsumers[d].iter() {
                        for &e in idx.exists_left.get(&(r.clone(), *x)).into_iter().flatten() {
                            queue.push_back(Item::Sub(c, e));
                        }
                    }
                    if self.subsumers[d].contains(&BOTTOM) {
                        queue.push_back(Item::Sub(c, BOTTOM));
                    }
                    for s in idx.super_roles.get(&r).into_iter().flatten() {
                        queue.push_back(Item::Link(c, s.clone(), d));
                    }
                    for (r2, s) in idx.chains_first.get(&r).into_iter().flatten() {
                        for (role, f) in succs.get(&d).into_iter().flatten() {
                            if role == r2 {
                                queue.push_back(Item::Link(c, s.clone(), *f));
                            }
                        }
                    }
                    for (r1, s) in idx.chains_second.get(&r).into_iter().flatten() {
                        for (role, b) in preds.get(&c).into_iter().flatten() {
                            if role == r1 {
                                queue.push_back(Item::Link(*b, s.clone(), d));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Subsumers of `iri` as derived (fresh names included); `None` if unknown.
    pub fn subsumers_of(&self, iri: &Iri) -> Option<BTreeSet<Iri>> {
        let id = *self.ids.get(iri)?;
        Some(
            self.subsumers[id]
                .iter()
                .map(|&n| self.names[n].clone())
                .collect(),
        )
    }

    /// Restricts the saturation to `signature` (plus `⊤`/`⊥`).
    pub fn closure(&self, signature: &BTreeSet<Iri>, generation: u64) -> SubsumptionClosure {
        let keep = |iri: &Iri| signature.contains(iri) || iri.is_thing() || iri.is_nothing();
        let mut pairs = Vec::new();
        for c in signature.iter().chain(std::iter::once(&Iri::thing())) {
            if let Some(sups) = self.subsumers_of(c) {
                pairs.extend(sups.into_iter().filter(keep).map(|d| (c.clone(), d)));
            }
        }
        SubsumptionClosure::from_subsumers(Tier::El, generation, signature.iter().cloned(), pairs)
    }
}

pub fn entails_subsumption(
    closure: &SubsumptionClosure,
    c: &Iri,
    d: &Iri,
) -> Result<bool, ModelError> {
    closure.require(c)?;
    closure.require(d)?;
    Ok(closure.holds(c, d))
}

/// Direct subsumers of `c`, reported by equivalence-class representative.
/// Falls back to `{owl:Thing}` when nothing else qualifies.
pub fn direct_subsumers(
    closure: &SubsumptionClosure,
    c: &Iri,
) -> Result<BTreeSet<Iri>, ModelError> {
    closure.require(c)?;
    let thing = Iri::thing();
    let own = closure.equivalents(c)?;
    if own.contains(&thing) {
        return Ok(BTreeSet::new());
    }
    // strict subsumers, grouped by representative
    let mut strict: BTreeSet<Iri> = BTreeSet::new();
    for d in closure.subsumers(c)? {
        if closure.contains(d) && !own.contains(d) {
            strict.insert(closure.representative(d)?);
        }
    }
    let direct: BTreeSet<Iri> = strict
        .iter()
        .filter(|d| {
            !strict
                .iter()
                .any(|e| e != *d && !e.is_thing() && closure.holds(e, d) && !closure.holds(d, e))
        })
        .cloned()
        .collect();
    if direct.is_empty() {
        return Ok(BTreeSet::from([thing]));
    }
    Ok(direct)
}

/// Pluggable criterion for judging two concepts disjoint without an explicit axiom.
pub trait DisjointnessCriterion {
    fn disjoint(&self, closure: &SubsumptionClosure, c: &Iri, d: &Iri) -> bool;
}

/// Incomparable and without a common satisfiable named subsumee.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoCommonSubsumee;

impl DisjointnessCriterion for NoCommonSubsumee {
    fn disjoint(&self, closure: &SubsumptionClosure, c: &Iri, d: &Iri) -> bool {
        if c == d || closure.holds(c, d) || closure.holds(d, c) {
            return false;
        }
        !closure.supers.iter().any(|(e, sups)| {
            !e.is_thing() && sups.contains(c) && sups.contains(d) && !sups.contains(&Iri::nothing())
        })
    }
}

pub fn assumed_disjoint(
    closure: &SubsumptionClosure,
    c: &Iri,
    d: &Iri,
) -> Result<bool, ModelError> {
    assumed_disjoint_with(&NoCommonSubsumee, closure, c, d)
}

pub fn assumed_disjoint_with(
    criterion: &impl DisjointnessCriterion,
    closure: &SubsumptionClosure,
    c: &Iri,
    d: &Iri,
) -> Result<bool, ModelError> {
    closure.require(c)?;
    closure.require(d)?;
    Ok(criterion.disjoint(closure, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Axiom, ConceptExpression as CE, EntityKind};

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x#{s}")).unwrap()
    }
    fn n(s: &str) -> CE {
        CE::Named(iri(s))
    }
    fn sub(a: CE, b: CE) -> Axiom {
        Axiom::SubClassOf(a, b)
    }
    fn onto(axioms: Vec<Axiom>) -> Ontology {
        let mut o = Ontology::new();
        for a in axioms {
            o.add_axiom(a).unwrap();
        }
        o
    }
    fn set(items: &[&str]) -> BTreeSet<Iri> {
        items.iter().map(|s| iri(s)).collect()
    }

    #[test]
    fn told_transitivity_and_reflexivity() {
        let o = onto(vec![sub(n("A"), n("B")), sub(n("B"), n("C"))]);
        let cl = told_closure(&o);
        assert!(entails_subsumption(&cl, &iri("A"), &iri("C")).unwrap());
        assert!(!entails_subsumption(&cl, &iri("C"), &iri("A")).unwrap());
        assert!(entails_subsumption(&cl, &iri("A"), &iri("A")).unwrap());
        assert!(entails_subsumption(&cl, &iri("A"), &Iri::thing()).unwrap());
        assert!(entails_subsumption(&cl, &iri("Z"), &iri("A")).is_err());
    }

    #[test]
    fn told_equivalence_conjuncts() {
        let o = onto(vec![Axiom::EquivalentClasses(vec![
            n("A"),
            CE::And(vec![n("B"), n("C")]),
        ])]);
        let cl = told_closure(&o);
        assert!(cl.holds(&iri("A"), &iri("B")) && cl.holds(&iri("A"), &iri("C")));
    }

    #[test]
    fn lonely_concept_closure() {
        let mut o = Ontology::new();
        o.declare(EntityKind::Class, iri("A"));
        let cl = told_closure(&o);
        let expected = BTreeSet::from([
            (iri("A"), iri("A")),
            (iri("A"), Iri::thing()),
            (Iri::thing(), Iri::thing()),
        ]);
        assert_eq!(cl.pairs(), expected);
    }

    #[test]
    fn el_existential_propagation() {
        let ex = CE::some(iri("r"), n("B"));
        let o = onto(vec![sub(n("A"), ex.clone()), sub(ex, n("C"))]);
        let cl = el_classify(&o).unwrap();
        assert!(cl.holds(&iri("A"), &iri("C")));
        assert!(!told_closure(&o).holds(&iri("A"), &iri("C")));
    }

    #[test]
    fn el_conjunction() {
        let o = onto(vec![
            sub(n("A"), n("B")),
            sub(n("A"), n("C")),
            sub(CE::And(vec![n("B"), n("C")]), n("D")),
        ]);
        assert!(el_classify(&o).unwrap().holds(&iri("A"), &iri("D")));
    }

    #[test]
    fn el_equals_told_without_existentials() {
        let o = onto(vec![sub(n("A"), n("B"))]);
        assert_eq!(el_classify(&o).unwrap().pairs(), told_closure(&o).pairs());
    }

    #[test]
    fn el_roles_chains_and_bottom() {
        let o = onto(vec![
            sub(n("A"), CE::some(iri("r"), n("B"))),
            sub(n("B"), CE::some(iri("s"), n("C"))),
            Axiom::SubObjectPropertyOf(iri("s"), iri("t")),
            Axiom::SubPropertyChainOf([iri("r"), iri("t")], iri("u")),
            sub(CE::some(iri("u"), n("C")), n("D")),
            sub(n("C"), n("E")),
            sub(CE::some(iri("t"), n("E")), n("F")),
            sub(n("G"), CE::some(iri("r"), n("H"))),
            sub(n("H"), CE::Bottom),
        ]);
        let cl = el_classify(&o).unwrap();
        assert!(cl.holds(&iri("A"), &iri("D")));
        assert!(cl.holds(&iri("B"), &iri("F")));
        assert!(!cl.holds(&iri("A"), &iri("F")));
        assert!(cl.is_unsatisfiable(&iri("H")));
        assert!(cl.is_unsatisfiable(&iri("G")));
        assert!(cl.holds(&iri("G"), &iri("A")));
        assert!(!cl.is_unsatisfiable(&iri("A")));
    }

    #[test]
    fn el_rejects_non_el() {
        let o = onto(vec![sub(n("A"), CE::not(n("B")))]);
        assert!(el_classify(&o).is_err());
    }

    #[test]
    fn direct_subsumers_drop_redundant_edges() {
        let o = onto(vec![
            sub(n("A"), n("B")),
            sub(n("B"), n("C")),
            sub(n("A"), n("C")),
        ]);
        let cl = told_closure(&o);
        assert_eq!(direct_subsumers(&cl, &iri("A")).unwrap(), set(&["B"]));
        assert_eq!(
            direct_subsumers(&cl, &iri("C")).unwrap(),
            BTreeSet::from([Iri::thing()])
        );
        assert!(direct_subsumers(&cl, &Iri::thing()).unwrap().is_empty());
    }

    #[test]
    fn direct_subsumers_of_defined_concept() {
        let o = onto(vec![Axiom::EquivalentClasses(vec![
            n("C1"),
            CE::And(vec![n("C2"), n("C3")]),
        ])]);
        for cl in [told_closure(&o), el_classify(&o).unwrap()] {
            assert_eq!(
                direct_subsumers(&cl, &iri("C1")).unwrap(),
                set(&["C2", "C3"])
            );
        }
    }

    #[test]
    fn cycles_collapse_to_representative() {
        let o = onto(vec![
            sub(n("A"), n("B")),
            sub(n("B"), n("A")),
            sub(n("B"), n("C")),
            sub(n("D"), n("B")),
        ]);
        let cl = told_closure(&o);
        assert_eq!(direct_subsumers(&cl, &iri("D")).unwrap(), set(&["A"]));
        assert_eq!(direct_subsumers(&cl, &iri("B")).unwrap(), set(&["C"]));
        assert_eq!(cl.representative(&iri("B")).unwrap(), iri("A"));
    }

    #[test]
    fn assumed_disjointness() {
        let o = onto(vec![sub(n("A"), n("B")), sub(n("A"), n("C"))]);
        let cl = told_closure(&o);
        assert!(!assumed_disjoint(&cl, &iri("A"), &iri("B")).unwrap());
        assert!(!assumed_disjoint(&cl, &iri("B"), &iri("C")).unwrap());
        assert!(!assumed_disjoint(&cl, &iri("B"), &iri("B")).unwrap());

        let mut o = Ontology::new();
        o.declare(EntityKind::Class, iri("B"));
        o.declare(EntityKind::Class, iri("C"));
        let cl = told_closure(&o);
        assert!(assumed_disjoint(&cl, &iri("B"), &iri("C")).unwrap());
        assert!(assumed_disjoint(&cl, &iri("C"), &iri("B")).unwrap());
        assert!(assumed_disjoint(&cl, &iri("B"), &iri("Q")).is_err());
    }

    #[test]
    fn staleness_tracks_mutation() {
        let mut o = onto(vec![sub(n("A"), n("B"))]);
        let cl = told_closure(&o);
        assert!(!cl.is_stale(&o));
        o.add_axiom(sub(n("B"), n("C"))).unwrap();
        assert!(cl.is_stale(&o));
    }
}
