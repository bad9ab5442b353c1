//! Functional-syntax serialisation.

use std::fmt::{self, Write};

use crate::iri::{Iri, OWL_NOTHING, OWL_THING};
use crate::model::{Axiom, ConceptExpression, EntityKind, Literal, Ontology};

use super::standard_prefixes;

/// Prefix abbreviations used when writing IRIs.
#[derive(Clone, Debug, Default)]
pub struct PrefixTable {
    // sorted by namespace length, longest first
    entries: Vec<(String, String)>,
}

impl PrefixTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Declared prefixes of `onto`, plus the standard ones whose names are not taken.
    pub fn for_ontology(onto: &Ontology) -> Self {
        let mut entries: Vec<(String, String)> = onto
            .prefixes()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let mut std: Vec<_> = standard_prefixes().into_iter().collect();
        std.sort();
        for (name, ns) in std {
            if !entries.iter().any(|(n, _)| *n == name) {
                entries.push((name, ns));
            }
        }
        entries.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(&b.0)));
        PrefixTable { entries }
    }

    fn abbreviate(&self, iri: &str) -> Option<String> {
        self.entries.iter().find_map(|(name, ns)| {
            let local = iri.strip_prefix(ns.as_str())?;
            let simple = !local.is_empty()
                && local
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
            simple.then(|| format!("{name}:{local}"))
        })
    }

    pub fn write_iri<W: Write>(&self, w: &mut W, iri: &str) -> fmt::Result {
        match self.abbreviate(iri) {
            Some(short) => w.write_str(&short),
            None => write!(w, "<{iri}>"),
        }
    }
}

pub fn write_expression<W: Write>(
    w: &mut W,
    expr: &ConceptExpression,
    t: &PrefixTable,
) -> fmt::Result {
    let list = |w: &mut W, name: &str, ops: &[ConceptExpression]| -> fmt::Result {
        write!(w, "{name}(")?;
        for (i, op) in ops.iter().enumerate() {
            if i > 0 {
                w.write_char(' ')?;
            }
            write_expression(w, op, t)?;
        }
        w.write_char(')')
    };
    match expr {
        ConceptExpression::Named(iri) => t.write_iri(w, iri.as_str()),
        ConceptExpression::Top => t.write_iri(w, OWL_THING),
        ConceptExpression::Bottom => t.write_iri(w, OWL_NOTHING),
        ConceptExpression::And(ops) => list(w, "ObjectIntersectionOf", ops),
        ConceptExpression::Or(ops) => list(w, "ObjectUnionOf", ops),
        ConceptExpression::Not(inner) => list(w, "ObjectComplementOf", std::slice::from_ref(inner)),
        ConceptExpression::Some(r, f) | ConceptExpression::Only(r, f) => {
            let name = if matches!(expr, ConceptExpression::Some(..)) {
                "ObjectSomeValuesFrom"
            } else {
                "ObjectAllValuesFrom"
            };
            write!(w, "{name}(")?;
            t.write_iri(w, r.as_str())?;
            w.write_char(' ')?;
            write_expression(w, f, t)?;
            w.write_char(')')
        }
    }
}

fn write_literal<W: Write>(w: &mut W, lit: &Literal) -> fmt::Result {
    w.write_char('"')?;
    for c in lit.lexical.chars() {
        if c == '"' || c == '\\' {
            w.write_char('\\')?;
        }
        w.write_char(c)?;
    }
    w.write_char('"')?;
    if let Some(lang) = &lit.lang {
        write!(w, "@{lang}")?;
    }
    Ok(())
}

pub fn write_axiom<W: Write>(w: &mut W, axiom: &Axiom, t: &PrefixTable) -> fmt::Result {
    let iri = |w: &mut W, i: &Iri| t.write_iri(w, i.as_str());
    match axiom {
        Axiom::SubClassOf(sub, sup) => {
            w.write_str("SubClassOf(")?;
            write_expression(w, sub, t)?;
            w.write_char(' ')?;
            write_expression(w, sup, t)?;
        }
        Axiom::EquivalentClasses(members) => {
            w.write_str("EquivalentClasses(")?;
            for (i, m) in members.iter().enumerate() {
                if i > 0 {
                    w.write_char(' ')?;
                }
                write_expression(w, m, t)?;
            }
        }
        Axiom::SubObjectPropertyOf(r, s) => {
            w.write_str("SubObjectPropertyOf(")?;
            iri(w, r)?;
            w.write_char(' ')?;
            iri(w, s)?;
        }
        Axiom::SubPropertyChainOf([r1, r2], s) => {
            w.write_str("SubObjectPropertyOf(ObjectPropertyChain(")?;
            iri(w, r1)?;
            w.write_char(' ')?;
            iri(w, r2)?;
            w.write_str(") ")?;
            iri(w, s)?;
        }
        Axiom::ClassAssertion(c, a) => {
            w.write_str("ClassAssertion(")?;
            write_expression(w, c, t)?;
            w.write_char(' ')?;
            iri(w, a)?;
        }
        Axiom::ObjectPropertyAssertion {
            role,
            subject,
            object,
        } => {
            w.write_str("ObjectPropertyAssertion(")?;
            iri(w, role)?;
            w.write_char(' ')?;
            iri(w, subject)?;
            w.write_char(' ')?;
            iri(w, object)?;
        }
        Axiom::AnnotationAssertion {
            subject,
            property,
            value,
        } => {
            w.write_str("AnnotationAssertion(")?;
            iri(w, property)?;
            w.write_char(' ')?;
            iri(w, subject)?;
            w.write_char(' ')?;
            write_literal(w, value)?;
        }
    }
    w.write_char(')')
}

fn kind_keyword(kind: EntityKind) -> &'static str {
    match kind {
        EntityKind::Class => "Class",
        EntityKind::ObjectProperty => "ObjectProperty",
        EntityKind::NamedIndividual => "NamedIndividual",
        EntityKind::AnnotationProperty => "AnnotationProperty",
    }
}

/// Writes the ontology as a functional-syntax document: prefixes, then one
/// declaration per signature entry, then axioms in insertion order.
pub fn serialize_ontology(onto: &Ontology) -> String {
    let table = PrefixTable::for_ontology(onto);
    let mut out = String::new();
    for (name, ns) in onto.prefixes() {
        let _ = writeln!(out, "Prefix({name}:=<{ns}>)");
    }
    if !onto.prefixes().is_empty() {
        out.push('\n');
    }
    out.push_str("Ontology(");
    if let Some(iri) = onto.iri() {
        let _ = write!(out, "<{iri}>");
    }
    if onto.signature().is_empty() && onto.axiom_count() == 0 {
        out.push_str(")\n");
        return out;
    }
    out.push('\n');
    for (kind, iri) in onto.signature().entries() {
        let _ = write!(out, "Declaration({}(", kind_keyword(kind));
        let _ = table.write_iri(&mut out, iri.as_str());
        out.push_str("))\n");
    }
    for axiom in onto.axioms() {
        let _ = write_axiom(&mut out, axiom, &table);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}
