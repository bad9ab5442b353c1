//! Lexical ontology matching: candidate selection over a sub-word inverted
//! index, edit-similarity scoring, locality-based extension and conflict repair.

mod index;
mod repair;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::ModelError;
use crate::iri::Iri;
use crate::model::Ontology;
use crate::reasoner::told_closure;

pub use index::{InvertedIndex, Tokeniser, WordTrigramTokeniser};
pub use repair::{conflicts, repair, Conflict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Equivalence,
    Subsumption,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equivalence => "=",
            Relation::Subsumption => "<",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mapping {
    pub source: Iri,
    pub target: Iri,
    pub relation: Relation,
    pub score: f64,
}

impl Mapping {
    pub fn new(source: Iri, target: Iri, score: f64) -> Self {
        Mapping {
            source,
            target,
            relation: Relation::Equivalence,
            score,
        }
    }

    /// Identity used for set comparisons; the score does not take part.
    pub fn key(&self) -> (Iri, Iri, Relation) {
        (self.source.clone(), self.target.clone(), self.relation)
    }
}

/// Score descending, then source and target IRI.
pub fn sort_mappings(mappings: &mut [Mapping]) {
    mappings.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.source.cmp(&b.source))
            .then_with(|| a.target.cmp(&b.target))
    });
}

#[derive(Clone, Debug)]
pub struct MatcherConfig {
    /// Candidates kept per source concept.
    pub k: usize,
    /// Minimum score of an initial mapping.
    pub lambda: f64,
    /// Minimum score of a mapping added by extension.
    pub kappa: f64,
    pub label_properties: Vec<Iri>,
    pub one_to_one: bool,
    pub extend: bool,
    pub repair: bool,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig {
            k: 10,
            lambda: 0.995,
            kappa: 0.9,
            label_properties: vec![Iri::rdfs_label()],
            one_to_one: false,
            extend: true,
            repair: true,
        }
    }
}

impl MatcherConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.k == 0 {
            return Err(ModelError::Validation("k must be at least 1".into()));
        }
        for (name, v) in [("lambda", self.lambda), ("kappa", self.kappa)] {
            if !v.is_finite() || v < 0.0 {
                return Err(ModelError::Validation(format!(
                    "{name} must be a non-negative number, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Lowercases and collapses whitespace.
pub fn normalise_label(label: &str) -> String {
    label
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Normalised edit similarity `1 - lev(x, y) / max(|x|, |y|)`, maximised over label pairs.
pub fn lexical_score<S: AsRef<str>, T: AsRef<str>>(
    labels_c: &[S],
    labels_d: &[T],
) -> Result<f64, ModelError> {
    if labels_c.is_empty() || labels_d.is_empty() {
        return Err(ModelError::Validation(
            "lexical score needs at least one label on each side".into(),
        ));
    }
    let xs: Vec<String> = labels_c
        .iter()
        .map(|l| normalise_label(l.as_ref()))
        .collect();
    let ys: Vec<String> = labels_d
        .iter()
        .map(|l| normalise_label(l.as_ref()))
        .collect();
    let mut best = 0.0f64;
    for x in &xs {
        for y in &ys {
            let s = if x == y {
                1.0
            } else {
                strsim::normalized_levenshtein(x, y)
            };
            best = best.max(s);
            if best == 1.0 {
                return Ok(1.0);
            }
        }
    }
    Ok(best)
}

fn labels<'a>(onto: &'a Ontology, c: &Iri, cfg: &MatcherConfig) -> Vec<&'a str> {
    onto.labels_any(c, &cfg.label_properties)
}

/// Full pipeline: candidates above `lambda`, then optional extension,
/// one-to-one filtering and repair against told closures.
pub fn match_ontologies(
    src: &Ontology,
    tgt: &Ontology,
    cfg: &MatcherConfig,
) -> Result<Vec<Mapping>, ModelError> {
    cfg.validate()?;
    let tokeniser = WordTrigramTokeniser;
    let index = InvertedIndex::build(tgt, &cfg.label_properties, &tokeniser);
    let sources: Vec<&Iri> = src.concepts().iter().collect();
    let per_source: Vec<Vec<Mapping>> = sources
        .par_iter()
        .map(|c| {
            let ls = labels(src, c, cfg);
            if ls.is_empty() {
                return Vec::new();
            }
            index
                .select_candidates(&ls, cfg.k, &tokeniser)
                .into_iter()
                .filter_map(|(d, _)| {
                    let score = lexical_score(&ls, &labels(tgt, &d, cfg)).ok()?;
                    (score >= cfg.lambda).then(|| Mapping::new((*c).clone(), d, score))
                })
                .collect()
        })
        .collect();
    let mut mappings: Vec<Mapping> = per_source.into_iter().flatten().collect();
    if cfg.extend {
        mappings = extend(mappings, src, tgt, cfg.kappa, cfg);
    }
    if cfg.one_to_one {
        mappings = one_to_one(mappings);
    }
    if cfg.repair {
        mappings = repair(mappings, &told_closure(src), &told_closure(tgt));
    }
    sort_mappings(&mut mappings);
    Ok(mappings)
}

fn named_parents(onto: &Ontology, c: &Iri) -> BTreeSet<Iri> {
    onto.asserted_parents(c)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|p| p.as_named().cloned())
        .collect()
}

fn named_children(onto: &Ontology, c: &Iri) -> BTreeSet<Iri> {
    onto.asserted_children(c).unwrap_or_default()
}

/// Locality extension: neighbours (parents × parents, children × children)
/// of accepted mappings are scored and accepted at `kappa`, until no pair is added.
pub fn extend(
    mappings: Vec<Mapping>,
    src: &Ontology,
    tgt: &Ontology,
    kappa: f64,
    cfg: &MatcherConfig,
) -> Vec<Mapping> {
    let mut accepted: BTreeMap<(Iri, Iri), Mapping> = mappings
        .into_iter()
        .map(|m| ((m.source.clone(), m.target.clone()), m))
        .collect();
    let mut examined: HashSet<(Iri, Iri)> = accepted.keys().cloned().collect();
    let mut frontier: Vec<(Iri, Iri)> = accepted.keys().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (c, d) in frontier {
            let neighbours = [
                (named_parents(src, &c), named_parents(tgt, &d)),
                (named_children(src, &c), named_children(tgt, &d)),
            ];
            for (xs, ys) in neighbours {
                for x in &xs {
                    for y in &ys {
                        let pair = (x.clone(), y.clone());
                        if !examined.insert(pair.clone()) {
                            continue;
                        }
                        let Ok(score) = lexical_score(&labels(src, x, cfg), &labels(tgt, y, cfg))
                        else {
                            continue;
                        };
                        if score >= kappa {
                            accepted
                                .insert(pair.clone(), Mapping::new(x.clone(), y.clone(), score));
                            next.push(pair);
                        }
                    }
                }
            }
        }
        next.sort();
        frontier = next;
    }
    accepted.into_values().collect()
}

/// Keeps the best-scoring target of each source, ties broken by target IRI.
pub fn one_to_one(mappings: Vec<Mapping>) -> Vec<Mapping> {
    let mut best: BTreeMap<Iri, Mapping> = BTreeMap::new();
    for m in mappings {
        match best.get(&m.source) {
            Some(b) if b.score > m.score || (b.score == m.score && b.target <= m.target) => {}
            _ => {
                best.insert(m.source.clone(), m);
            }
        }
    }
    best.into_values().collect()
}

/// Pairs where a normalised label of one side is a substring of a label of the other.
pub fn substring_match(src: &Ontology, tgt: &Ontology, label_properties: &[Iri]) -> Vec<Mapping> {
    let collect = |o: &Ontology| -> Vec<(Iri, Vec<String>)> {
        o.concepts()
            .iter()
            .map(|c| {
                let ls = o
                    .labels_any(c, label_properties)
                    .into_iter()
                    .map(normalise_label)
                    .filter(|l| !l.is_empty())
                    .collect();
                (c.clone(), ls)
            })
            .collect()
    };
    let (xs, ys) = (collect(src), collect(tgt));
    let mut out = Vec::new();
    for (c, lc) in &xs {
        for (d, ld) in &ys {
            let hit = lc.iter().any(|x| {
                ld.iter()
                    .any(|y| x.contains(y.as_str()) || y.contains(x.as_str()))
            });
            if hit {
                out.push(Mapping::new(c.clone(), d.clone(), 1.0));
            }
        }
    }
    out
}
