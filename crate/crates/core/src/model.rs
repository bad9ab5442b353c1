//! In-memory ontology model: concept expressions, axioms, and the indexed store.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use indexmap::IndexMap;

use crate::error::ModelError;
use crate::iri::Iri;

/// A (possibly complex) concept built from the constructors the toolkit supports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptExpression {
    Named(Iri),
    Top,
    Bottom,
    And(Vec<ConceptExpression>),
    Or(Vec<ConceptExpression>),
    Not(Box<ConceptExpression>),
    Some(Iri, Box<ConceptExpression>),
    Only(Iri, Box<ConceptExpression>),
}

impl ConceptExpression {
    /// Named concept, mapping `owl:Thing`/`owl:Nothing` onto the dedicated variants.
    pub fn named(iri: Iri) -> Self {
        if iri.is_thing() {
            ConceptExpression::Top
        } else if iri.is_nothing() {
            ConceptExpression::Bottom
        } else {
            ConceptExpression::Named(iri)
        }
    }

    pub fn some(role: Iri, filler: ConceptExpression) -> Self {
        ConceptExpression::Some(role, Box::new(filler))
    }

    pub fn only(role: Iri, filler: ConceptExpression) -> Self {
        ConceptExpression::Only(role, Box::new(filler))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: ConceptExpression) -> Self {
        ConceptExpression::Not(Box::new(inner))
    }

    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ConceptExpression::Named(iri) => Some(iri),
            _ => None,
        }
    }

    /// Named concepts and `⊤`/`⊥` are atomic; everything else is complex.
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            ConceptExpression::Named(_) | ConceptExpression::Top | ConceptExpression::Bottom
        )
    }

    /// Structural form used for deduplication: `Named(owl:Thing)` becomes `Top`
    /// and conjunction/disjunction operands are sorted.
    pub fn canonical(&self) -> Self {
        match self {
            ConceptExpression::Named(iri) => ConceptExpression::named(iri.clone()),
            ConceptExpression::Top => ConceptExpression::Top,
            ConceptExpression::Bottom => ConceptExpression::Bottom,
            ConceptExpression::And(ops) => ConceptExpression::And(canonical_list(ops)),
            ConceptExpression::Or(ops) => ConceptExpression::Or(canonical_list(ops)),
            ConceptExpression::Not(inner) => ConceptExpression::not(inner.canonical()),
            ConceptExpression::Some(r, f) => ConceptExpression::some(r.clone(), f.canonical()),
            ConceptExpression::Only(r, f) => ConceptExpression::only(r.clone(), f.canonical()),
        }
    }

    /// Like [`canonical`](Self::canonical) but keeps operand order.
    pub(crate) fn tidy(&self) -> Self {
        match self {
            ConceptExpression::Named(iri) => ConceptExpression::named(iri.clone()),
            ConceptExpression::And(ops) => {
                ConceptExpression::And(ops.iter().map(Self::tidy).collect())
            }
            ConceptExpression::Or(ops) => {
                ConceptExpression::Or(ops.iter().map(Self::tidy).collect())
            }
            ConceptExpression::Not(inner) => ConceptExpression::not(inner.tidy()),
            ConceptExpression::Some(r, f) => ConceptExpression::some(r.clone(), f.tidy()),
            ConceptExpression::Only(r, f) => ConceptExpression::only(r.clone(), f.tidy()),
            other => other.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            ConceptExpression::And(ops) | ConceptExpression::Or(ops) => {
                if ops.len() < 2 {
                    return Err(ModelError::Malformed(format!(
                        "{} needs at least two operands, got {}",
                        if matches!(self, ConceptExpression::And(_)) {
                            "ObjectIntersectionOf"
                        } else {
                            "ObjectUnionOf"
                        },
                        ops.len()
                    )));
                }
                ops.iter().try_for_each(Self::validate)
            }
            ConceptExpression::Not(inner)
            | ConceptExpression::Some(_, inner)
            | ConceptExpression::Only(_, inner) => inner.validate(),
            _ => Ok(()),
        }
    }

    /// Visits every named concept (excluding `⊤`/`⊥`) in the expression.
    pub fn for_each_concept<'a>(&'a self, f: &mut impl FnMut(&'a Iri)) {
        match self {
            ConceptExpression::Named(iri) => {
                if !iri.is_thing() && !iri.is_nothing() {
                    f(iri)
                }
            }
            ConceptExpression::Top | ConceptExpression::Bottom => {}
            ConceptExpression::And(ops) | ConceptExpression::Or(ops) => {
                ops.iter().for_each(|op| op.for_each_concept(f))
            }
            ConceptExpression::Not(inner) => inner.for_each_concept(f),
            ConceptExpression::Some(_, inner) | ConceptExpression::Only(_, inner) => {
                inner.for_each_concept(f)
            }
        }
    }

    pub fn for_each_role<'a>(&'a self, f: &mut impl FnMut(&'a Iri)) {
        match self {
            ConceptExpression::And(ops) | ConceptExpression::Or(ops) => {
                ops.iter().for_each(|op| op.for_each_role(f))
            }
            ConceptExpression::Not(inner) => inner.for_each_role(f),
            ConceptExpression::Some(r, inner) | ConceptExpression::Only(r, inner) => {
                f(r);
                inner.for_each_role(f)
            }
            _ => {}
        }
    }

    pub fn mentions(&self, iri: &Iri) -> bool {
        let mut found = false;
        self.for_each_concept(&mut |c| found |= c == iri);
        if !found {
            self.for_each_role(&mut |r| found |= r == iri);
        }
        found
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            ConceptExpression::And(ops) | ConceptExpression::Or(ops) => {
                1 + ops.iter().map(Self::size).sum::<usize>()
            }
            ConceptExpression::Not(inner)
            | ConceptExpression::Some(_, inner)
            | ConceptExpression::Only(_, inner) => 1 + inner.size(),
            _ => 1,
        }
    }
}

fn canonical_list(ops: &[ConceptExpression]) -> Vec<ConceptExpression> {
    let mut out: Vec<_> = ops.iter().map(ConceptExpression::canonical).collect();
    out.sort();
    out
}

impl fmt::Display for ConceptExpression {
    /// Functional-style syntax with full IRIs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parser::writer::write_expression(
            f,
            self,
            &crate::parser::writer::PrefixTable::empty(),
        )
    }
}

/// A plain or language-tagged string literal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub lang: Option<String>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
        }
    }

    pub fn tagged(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: Some(lang.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SubClassOf(ConceptExpression, ConceptExpression),
    EquivalentClasses(Vec<ConceptExpression>),
    SubObjectPropertyOf(Iri, Iri),
    /// `r ∘ r' ⊑ s`
    SubPropertyChainOf([Iri; 2], Iri),
    ClassAssertion(ConceptExpression, Iri),
    ObjectPropertyAssertion {
        role: Iri,
        subject: Iri,
        object: Iri,
    },
    AnnotationAssertion {
        subject: Iri,
        property: Iri,
        value: Literal,
    },
}

impl Axiom {
    pub fn sub_class_of(sub: ConceptExpression, sup: ConceptExpression) -> Self {
        Axiom::SubClassOf(sub, sup)
    }

    pub fn label(subject: Iri, text: impl Into<String>) -> Self {
        Axiom::AnnotationAssertion {
            subject,
            property: Iri::rdfs_label(),
            value: Literal::plain(text),
        }
    }

    pub fn is_logical(&self) -> bool {
        !matches!(self, Axiom::AnnotationAssertion { .. })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Axiom::SubClassOf(sub, sup) => {
                sub.validate()?;
                sup.validate()
            }
            Axiom::EquivalentClasses(members) => {
                if members.len() < 2 {
                    return Err(ModelError::Malformed(format!(
                        "EquivalentClasses needs at least two operands, got {}",
                        members.len()
                    )));
                }
                members.iter().try_for_each(ConceptExpression::validate)
            }
            Axiom::ClassAssertion(c, _) => c.validate(),
            _ => Ok(()),
        }
    }

    /// Structural key: operands of conjunctions, disjunctions and equivalences are sorted.
    pub fn canonical(&self) -> Self {
        match self {
            Axiom::SubClassOf(sub, sup) => Axiom::SubClassOf(sub.canonical(), sup.canonical()),
            Axiom::EquivalentClasses(members) => Axiom::EquivalentClasses(canonical_list(members)),
            Axiom::ClassAssertion(c, a) => Axiom::ClassAssertion(c.canonical(), a.clone()),
            other => other.clone(),
        }
    }

    fn tidy(&self) -> Self {
        match self {
            Axiom::SubClassOf(sub, sup) => Axiom::SubClassOf(sub.tidy(), sup.tidy()),
            Axiom::EquivalentClasses(members) => {
                Axiom::EquivalentClasses(members.iter().map(ConceptExpression::tidy).collect())
            }
            Axiom::ClassAssertion(c, a) => Axiom::ClassAssertion(c.tidy(), a.clone()),
            other => other.clone(),
        }
    }

    /// Reports every IRI that belongs in the signature, together with its entity kind.
    /// Annotation subjects are untyped and therefore not reported.
    pub fn for_each_entity(&self, f: &mut impl FnMut(EntityKind, &Iri)) {
        let concepts = |e: &ConceptExpression, f: &mut dyn FnMut(EntityKind, &Iri)| {
            e.for_each_concept(&mut |c| f(EntityKind::Class, c));
            e.for_each_role(&mut |r| f(EntityKind::ObjectProperty, r));
        };
        match self {
            Axiom::SubClassOf(sub, sup) => {
                concepts(sub, f);
                concepts(sup, f);
            }
            Axiom::EquivalentClasses(members) => members.iter().for_each(|m| concepts(m, f)),
            Axiom::SubObjectPropertyOf(r, s) => {
                f(EntityKind::ObjectProperty, r);
                f(EntityKind::ObjectProperty, s);
            }
            Axiom::SubPropertyChainOf([r1, r2], s) => {
                f(EntityKind::ObjectProperty, r1);
                f(EntityKind::ObjectProperty, r2);
                f(EntityKind::ObjectProperty, s);
            }
            Axiom::ClassAssertion(c, a) => {
                concepts(c, f);
                f(EntityKind::NamedIndividual, a);
            }
            Axiom::ObjectPropertyAssertion {
                role,
                subject,
                object,
            } => {
                f(EntityKind::ObjectProperty, role);
                f(EntityKind::NamedIndividual, subject);
                f(EntityKind::NamedIndividual, object);
            }
            Axiom::AnnotationAssertion { property, .. } => {
                f(EntityKind::AnnotationProperty, property);
            }
        }
    }

    /// True if `iri` occurs anywhere in the axiom, annotation subjects included.
    pub fn mentions(&self, iri: &Iri) -> bool {
        if let Axiom::AnnotationAssertion { subject, .. } = self {
            if subject == iri {
                return true;
            }
        }
        let mut found = false;
        self.for_each_entity(&mut |_, e| found |= e == iri);
        found
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parser::writer::write_axiom(f, self, &crate::parser::writer::PrefixTable::empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    NamedIndividual,
    AnnotationProperty,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub classes: BTreeSet<Iri>,
    pub object_properties: BTreeSet<Iri>,
    pub individuals: BTreeSet<Iri>,
    pub annotation_properties: BTreeSet<Iri>,
}

impl Signature {
    pub fn set(&self, kind: EntityKind) -> &BTreeSet<Iri> {
        match kind {
            EntityKind::Class => &self.classes,
            EntityKind::ObjectProperty => &self.object_properties,
            EntityKind::NamedIndividual => &self.individuals,
            EntityKind::AnnotationProperty => &self.annotation_properties,
        }
    }

    fn set_mut(&mut self, kind: EntityKind) -> &mut BTreeSet<Iri> {
        match kind {
            EntityKind::Class => &mut self.classes,
            EntityKind::ObjectProperty => &mut self.object_properties,
            EntityKind::NamedIndividual => &mut self.individuals,
            EntityKind::AnnotationProperty => &mut self.annotation_properties,
        }
    }

    pub fn contains(&self, kind: EntityKind, iri: &Iri) -> bool {
        self.set(kind).contains(iri)
    }

    /// All (kind, IRI) pairs in a deterministic order.
    pub fn entries(&self) -> impl Iterator<Item = (EntityKind, &Iri)> {
        [
            EntityKind::Class,
            EntityKind::ObjectProperty,
            EntityKind::NamedIndividual,
            EntityKind::AnnotationProperty,
        ]
        .into_iter()
        .flat_map(move |k| self.set(k).iter().map(move |i| (k, i)))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
            + self.object_properties.len()
            + self.individuals.len()
            + self.annotation_properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

static GENERATION: AtomicU64 = AtomicU64::new(1);

fn next_generation() -> u64 {
    GENERATION.fetch_add(1, Ordering::Relaxed)
}

/// An ontology: signature, an insertion-ordered axiom set, and an annotation index.
///
/// Every mutation bumps a generation stamp; derived artefacts such as
/// [`SubsumptionClosure`](crate::reasoner::SubsumptionClosure) remember the
/// stamp they were computed from and report themselves stale afterwards.
#[derive(Clone, Debug)]
pub struct Ontology {
    iri: Option<Iri>,
    prefixes: IndexMap<String, String>,
    signature: Signature,
    // canonical form -> axiom as inserted
    axioms: IndexMap<Axiom, Axiom>,
    annotations: HashMap<Iri, Vec<(Iri, Literal)>>,
    generation: u64,
}

impl Default for Ontology {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for Ontology {
    /// Same IRI, signature, and axiom set (order-insensitive).
    fn eq(&self, other: &Self) -> bool {
        self.iri == other.iri
            && self.signature == other.signature
            && self.axioms.len() == other.axioms.len()
            && self.axioms.keys().all(|k| other.axioms.contains_key(k))
    }
}

impl Ontology {
    pub fn new() -> Self {
        Ontology {
            iri: None,
            prefixes: IndexMap::new(),
            signature: Signature::default(),
            axioms: IndexMap::new(),
            annotations: HashMap::new(),
            generation: next_generation(),
        }
    }

    pub fn with_iri(iri: Iri) -> Self {
        let mut onto = Self::new();
        onto.iri = Some(iri);
        onto
    }

    pub fn iri(&self) -> Option<&Iri> {
        self.iri.as_ref()
    }

    pub fn set_iri(&mut self, iri: Option<Iri>) {
        self.iri = iri;
        self.touch();
    }

    /// Prefix declarations, in declaration order (name without the trailing colon).
    pub fn prefixes(&self) -> &IndexMap<String, String> {
        &self.prefixes
    }

    pub fn add_prefix(&mut self, name: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(name.into(), namespace.into());
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    fn touch(&mut self) {
        self.generation = next_generation();
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Named concepts (never includes `owl:Thing` or `owl:Nothing`).
    pub fn concepts(&self) -> &BTreeSet<Iri> {
        &self.signature.classes
    }

    pub fn roles(&self) -> &BTreeSet<Iri> {
        &self.signature.object_properties
    }

    pub fn individuals(&self) -> &BTreeSet<Iri> {
        &self.signature.individuals
    }

    pub fn is_concept(&self, iri: &Iri) -> bool {
        self.signature.classes.contains(iri)
    }

    /// Adds `iri` to the signature. Returns `false` if it was already declared.
    pub fn declare(&mut self, kind: EntityKind, iri: Iri) -> bool {
        if kind == EntityKind::Class && (iri.is_thing() || iri.is_nothing()) {
            return false;
        }
        let added = self.signature.set_mut(kind).insert(iri);
        if added {
            self.touch();
        }
        added
    }

    /// Inserts an axiom, extending the signature with any new IRIs. Returns
    /// `Ok(false)` if a structurally equal axiom was already present.
    pub fn add_axiom(&mut self, axiom: Axiom) -> Result<bool, ModelError> {
        axiom.validate()?;
        let axiom = axiom.tidy();
        let key = axiom.canonical();
        if self.axioms.contains_key(&key) {
            return Ok(false);
        }
        let mut new_entities = Vec::new();
        axiom.for_each_entity(&mut |kind, iri| new_entities.push((kind, iri.clone())));
        for (kind, iri) in new_entities {
            self.declare(kind, iri);
        }
        if let Axiom::AnnotationAssertion {
            subject,
            property,
            value,
        } = &axiom
        {
            self.annotations
                .entry(subject.clone())
                .or_default()
                .push((property.clone(), value.clone()));
        }
        self.axioms.insert(key, axiom);
        self.touch();
        Ok(true)
    }

    /// Removes a structurally equal axiom if present. The signature is left untouched.
    pub fn remove_axiom(&mut self, axiom: &Axiom) -> bool {
        let key = axiom.tidy().canonical();
        let Some(removed) = self.axioms.shift_remove(&key) else {
            return false;
        };
        if let Axiom::AnnotationAssertion {
            subject,
            property,
            value,
        } = &removed
        {
            if let Some(entries) = self.annotations.get_mut(subject) {
                if let Some(pos) = entries
                    .iter()
                    .position(|(p, v)| p == property && v == value)
                {
                    entries.remove(pos);
                }
                if entries.is_empty() {
                    self.annotations.remove(subject);
                }
            }
        }
        self.touch();
        true
    }

    pub fn contains_axiom(&self, axiom: &Axiom) -> bool {
        self.axioms.contains_key(&axiom.tidy().canonical())
    }

    /// Axioms in insertion order.
    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> + '_ {
        self.axioms.values()
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    /// Canonical axiom keys, for set comparisons.
    pub fn axiom_set(&self) -> BTreeSet<Axiom> {
        self.axioms.keys().cloned().collect()
    }

    /// Literals asserted for `(entity, property)`, in assertion order.
    pub fn labels(&self, entity: &Iri, property: &Iri) -> Vec<&str> {
        self.annotations
            .get(entity)
            .map(|entries| {
                entries
                    .iter()
                    .filter(|(p, _)| p == property)
                    .map(|(_, v)| v.lexical.as_str())
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Literals for `entity` under any of `properties`, property order first,
    /// then assertion order.
    pub fn labels_any(&self, entity: &Iri, properties: &[Iri]) -> Vec<&str> {
        properties
            .iter()
            .flat_map(|p| self.labels(entity, p))
            .collect()
    }

    pub fn annotations(&self, entity: &Iri) -> &[(Iri, Literal)] {
        self.annotations
            .get(entity)
            .map(Vec::as_slice)
            .unwrap_or_default()
    }

    /// Child → parent edges induced by the asserted axioms: every `D` in
    /// `SubClassOf(C, D)` with `C` named, and for `EquivalentClasses` containing
    /// a named `C`, every other member (conjunctions contribute their conjuncts).
    pub(crate) fn parent_edges(&self) -> Vec<(Iri, ConceptExpression)> {
        let mut edges = Vec::new();
        for axiom in self.axioms() {
            push_parent_edges(axiom, &mut edges);
        }
        edges
    }

    /// Asserted parents of a named concept, deduplicated, in assertion order.
    pub fn asserted_parents(&self, concept: &Iri) -> Result<Vec<ConceptExpression>, ModelError> {
        self.require_concept(concept)?;
        let mut out: Vec<ConceptExpression> = Vec::new();
        for (child, parent) in self.parent_edges() {
            if &child == concept && !out.contains(&parent) {
                out.push(parent);
            }
        }
        Ok(out)
    }

    /// Named concepts having `concept` as an asserted parent.
    pub fn asserted_children(&self, concept: &Iri) -> Result<BTreeSet<Iri>, ModelError> {
        self.require_concept(concept)?;
        Ok(self
            .parent_edges()
            .into_iter()
            .filter(|(_, p)| p.as_named() == Some(concept))
            .map(|(c, _)| c)
            .collect())
    }

    pub(crate) fn require_concept(&self, concept: &Iri) -> Result<(), ModelError> {
        if self.is_concept(concept) {
            Ok(())
        } else {
            Err(ModelError::NotFound(concept.clone()))
        }
    }
}

pub(crate) fn push_parent_edges(axiom: &Axiom, edges: &mut Vec<(Iri, ConceptExpression)>) {
    match axiom {
        Axiom::SubClassOf(ConceptExpression::Named(c), sup) => edges.push((c.clone(), sup.clone())),
        Axiom::EquivalentClasses(members) => {
            for (i, member) in members.iter().enumerate() {
                let ConceptExpression::Named(c) = member else {
                    continue;
                };
                for (j, other) in members.iter().enumerate() {
                    if i == j || other == member {
                        continue;
                    }
                    match other {
                        ConceptExpression::And(ops) => {
                            for op in ops {
                                edges.push((c.clone(), op.clone()));
                            }
                        }
                        _ => edges.push((c.clone(), other.clone())),
                    }
                }
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x#{s}")).unwrap()
    }

    fn named(s: &str) -> ConceptExpression {
        ConceptExpression::Named(iri(s))
    }

    #[test]
    fn add_is_idempotent_and_extends_signature() {
        let mut o = Ontology::new();
        assert!(o
            .add_axiom(Axiom::SubClassOf(named("A"), named("B")))
            .unwrap());
        assert!(!o
            .add_axiom(Axiom::SubClassOf(named("A"), named("B")))
            .unwrap());
        assert_eq!(o.axiom_count(), 1);
        assert_eq!(
            o.concepts().iter().cloned().collect::<Vec<_>>(),
            vec![iri("A"), iri("B")]
        );
    }

    #[test]
    fn conjunction_order_does_not_matter_for_dedup() {
        let mut o = Ontology::new();
        let ab = ConceptExpression::And(vec![named("A"), named("B")]);
        let ba = ConceptExpression::And(vec![named("B"), named("A")]);
        o.add_axiom(Axiom::SubClassOf(named("C"), ab.clone()))
            .unwrap();
        assert!(!o.add_axiom(Axiom::SubClassOf(named("C"), ba)).unwrap());
        // the inserted operand order is what we keep
        assert_eq!(
            o.axioms().next().unwrap(),
            &Axiom::SubClassOf(named("C"), ab)
        );
    }

    #[test]
    fn malformed_axioms_are_rejected() {
        let mut o = Ontology::new();
        let err = o
            .add_axiom(Axiom::SubClassOf(
                named("A"),
                ConceptExpression::And(vec![named("B")]),
            ))
            .unwrap_err();
        assert!(matches!(err, ModelError::Malformed(_)));
        assert!(o
            .add_axiom(Axiom::EquivalentClasses(vec![named("A")]))
            .is_err());
        assert_eq!(o.axiom_count(), 0);
        assert!(o.signature().is_empty());
    }

    #[test]
    fn remove_reports_presence_and_keeps_signature() {
        let mut o = Ontology::new();
        let ax = Axiom::SubClassOf(named("A"), named("B"));
        o.add_axiom(ax.clone()).unwrap();
        assert!(o.remove_axiom(&ax));
        assert!(!o.contains_axiom(&ax));
        assert_eq!(o.concepts().len(), 2);
        assert!(!o.remove_axiom(&ax));
        o.add_axiom(ax.clone()).unwrap();
        o.add_axiom(ax.clone()).unwrap();
        assert_eq!(o.axiom_count(), 1);
    }

    #[test]
    fn labels_filter_by_property_and_keep_order() {
        let mut o = Ontology::new();
        o.declare(EntityKind::Class, iri("A"));
        o.add_axiom(Axiom::label(iri("A"), "heart attack")).unwrap();
        o.add_axiom(Axiom::label(iri("A"), "myocardial infarction"))
            .unwrap();
        o.add_axiom(Axiom::AnnotationAssertion {
            subject: iri("A"),
            property: iri("synonym"),
            value: Literal::tagged("MI", "en"),
        })
        .unwrap();
        let label = Iri::rdfs_label();
        assert_eq!(
            o.labels(&iri("A"), &label),
            vec!["heart attack", "myocardial infarction"]
        );
        assert_eq!(o.labels(&iri("A"), &iri("synonym")), vec!["MI"]);
        assert!(o.labels(&iri("B"), &label).is_empty());

        o.remove_axiom(&Axiom::label(iri("A"), "heart attack"));
        assert_eq!(o.labels(&iri("A"), &label), vec!["myocardial infarction"]);
    }

    #[test]
    fn parents_and_children_are_asserted_only() {
        let mut o = Ontology::new();
        o.add_axiom(Axiom::SubClassOf(named("A"), named("B")))
            .unwrap();
        o.add_axiom(Axiom::SubClassOf(named("B"), named("C")))
            .unwrap();
        let ex = ConceptExpression::some(iri("r"), named("B"));
        o.add_axiom(Axiom::SubClassOf(named("A"), ex.clone()))
            .unwrap();
        assert_eq!(o.asserted_parents(&iri("A")).unwrap(), vec![named("B"), ex]);
        assert_eq!(
            o.asserted_children(&iri("C")).unwrap(),
            BTreeSet::from([iri("B")])
        );
        assert!(matches!(
            o.asserted_parents(&iri("Z")),
            Err(ModelError::NotFound(_))
        ));
    }

    #[test]
    fn equivalence_with_conjunction_yields_conjunct_parents() {
        let mut o = Ontology::new();
        o.add_axiom(Axiom::EquivalentClasses(vec![
            named("A"),
            ConceptExpression::And(vec![named("B"), named("C")]),
        ]))
        .unwrap();
        assert_eq!(
            o.asserted_parents(&iri("A")).unwrap(),
            vec![named("B"), named("C")]
        );
        assert_eq!(
            o.asserted_children(&iri("B")).unwrap(),
            BTreeSet::from([iri("A")])
        );
    }

    #[test]
    fn thing_is_never_part_of_the_signature() {
        let mut o = Ontology::new();
        o.add_axiom(Axiom::SubClassOf(
            named("A"),
            ConceptExpression::Named(Iri::thing()),
        ))
        .unwrap();
        assert_eq!(o.concepts().len(), 1);
        assert!(o.contains_axiom(&Axiom::SubClassOf(named("A"), ConceptExpression::Top)));
    }
}
