//! Matching evaluation: global P/R/F, ranking metrics, reference splits,
//! ranking candidates and subsumption-reference construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::ModelError;
use crate::iri::Iri;
use crate::matcher::{InvertedIndex, Mapping, Relation, WordTrigramTokeniser};
use crate::model::Ontology;
use crate::prune::prune;
use crate::reasoner::SubsumptionClosure;
use crate::taxonomy::Taxonomy;

pub const DEFAULT_HITS: [usize; 3] = [1, 5, 10];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MetricReport {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_score: Option<f64>,
    pub mrr: Option<f64>,
    pub hits_at: BTreeMap<usize, f64>,
    /// Precision had an empty denominator and was reported as 0.
    pub precision_undefined: bool,
    /// Recall had an empty denominator and was reported as 0.
    pub recall_undefined: bool,
}

impl MetricReport {
    /// `key = value` lines with fixed key names; absent metrics are left out.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: Option<f64>| {
            if let Some(v) = v {
                let _ = writeln!(out, "{k} = {v:.6}");
            }
        };
        line("precision", self.precision);
        line("recall", self.recall);
        line("f_score", self.f_score);
        line("mrr", self.mrr);
        for (k, v) in &self.hits_at {
            line(&format!("hits@{k}"), Some(*v));
        }
        if self.precision_undefined {
            out.push_str("precision_undefined = true\n");
        }
        if self.recall_undefined {
            out.push_str("recall_undefined = true\n");
        }
        out
    }
}

type Key = (Iri, Iri, Relation);

fn keys(ms: &[Mapping]) -> BTreeSet<Key> {
    ms.iter().map(Mapping::key).collect()
}

/// Precision, recall and F-score with `ignored` removed from both sides.
pub fn global_metrics(
    pred: &[Mapping],
    reference: &[Mapping],
    ignored: &[Mapping],
) -> MetricReport {
    let ignored = keys(ignored);
    let pred: BTreeSet<Key> = keys(pred).difference(&ignored).cloned().collect();
    let reference: BTreeSet<Key> = keys(reference).difference(&ignored).cloned().collect();
    let hits = pred.intersection(&reference).count() as f64;
    let ratio = |den: usize| {
        if den == 0 {
            (0.0, true)
        } else {
            (hits / den as f64, false)
        }
    };
    let (p, p_undef) = ratio(pred.len());
    let (r, r_undef) = ratio(reference.len());
    let f = if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    };
    MetricReport {
        precision: Some(p),
        recall: Some(r),
        f_score: Some(f),
        precision_undefined: p_undef,
        recall_undefined: r_undef,
        ..Default::default()
    }
}

/// One local ranking case: the gold target and the ranked candidates.
#[derive(Clone, Debug, PartialEq)]
pub struct RankingCase {
    pub source: Iri,
    pub gold: Iri,
    pub ranked: Vec<Iri>,
}

impl RankingCase {
    /// 1-based rank of the gold target.
    pub fn rank(&self) -> Result<usize, ModelError> {
        let hits: Vec<usize> = (0..self.ranked.len())
            .filter(|&i| self.ranked[i] == self.gold)
            .collect();
        match hits.as_slice() {
            [i] => Ok(i + 1),
            [] => Err(ModelError::Validation(format!(
                "gold target {} missing from candidates of {}",
                self.gold, self.source
            ))),
            _ => Err(ModelError::Validation(format!(
                "gold target {} occurs more than once among candidates of {}",
                self.gold, self.source
            ))),
        }
    }
}

/// MRR over the cases and Hits@K for each `k` in `ks`.
pub fn ranking_metrics(cases: &[RankingCase], ks: &[usize]) -> Result<MetricReport, ModelError> {
    let ranks = cases
        .iter()
        .map(RankingCase::rank)
        .collect::<Result<Vec<_>, _>>()?;
    ranking_metrics_from_ranks(&ranks, ks)
}

pub fn ranking_metrics_from_ranks(
    ranks: &[usize],
    ks: &[usize],
) -> Result<MetricReport, ModelError> {
    if ranks.contains(&0) {
        return Err(ModelError::Validation("ranks are 1-based".into()));
    }
    let mut report = MetricReport::default();
    if ranks.is_empty() {
        return Ok(report);
    }
    let n = ranks.len() as f64;
    report.mrr = Some(ranks.iter().map(|&r| 1.0 / r as f64).sum::<f64>() / n);
    for &k in ks {
        report
            .hits_at
            .insert(k, ranks.iter().filter(|&&r| r <= k).count() as f64 / n);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    Unsupervised,
    SemiSupervised,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSplit {
    pub setting: Setting,
    pub train: Vec<Mapping>,
    pub validation: Vec<Mapping>,
    pub test: Vec<Mapping>,
}

/// Seeded partition: 20/10/70 semi-supervised, 0/10/90 unsupervised, with
/// floored train and validation counts.
pub fn split_references(
    refs: &[Mapping],
    setting: Setting,
    seed: u64,
) -> Result<ReferenceSplit, ModelError> {
    let mut pool: Vec<Mapping> = {
        let mut seen = BTreeSet::new();
        refs.iter()
            .filter(|m| seen.insert(m.key()))
            .cloned()
            .collect()
    };
    if pool.len() < 10 {
        return Err(ModelError::Validation(format!(
            "need at least 10 distinct reference mappings to split, got {}",
            pool.len()
        )));
    }
    pool.sort_by_key(Mapping::key);
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n = pool.len();
    let (train, validation) = match setting {
        Setting::Unsupervised => (0, n / 10),
        Setting::SemiSupervised => (n / 5, n / 10),
    };
    let test = pool.split_off(train + validation);
    let validation_set = pool.split_off(train);
    Ok(ReferenceSplit {
        setting,
        train: pool,
        validation: validation_set,
        test,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NegativeSampling {
    #[default]
    Random,
    /// Lexically similar concepts from the target index first, random after.
    Hard,
}

/// Gold target followed by `n - 1` distinct negatives, none equivalent to the gold.
pub fn generate_ranking_candidates(
    reference: &Mapping,
    tgt: &Ontology,
    tgt_closure: &SubsumptionClosure,
    n: usize,
    seed: u64,
    sampling: NegativeSampling,
) -> Result<Vec<Iri>, ModelError> {
    if n < 2 {
        return Err(ModelError::Validation(
            "need at least 2 ranking candidates".into(),
        ));
    }
    tgt.require_concept(&reference.target)?;
    let gold = &reference.target;
    let excluded = tgt_closure
        .equivalents(gold)
        .unwrap_or_else(|_| BTreeSet::from([gold.clone()]));
    let eligible: Vec<Iri> = tgt
        .concepts()
        .iter()
        .filter(|c| !excluded.contains(*c))
        .cloned()
        .collect();
    if eligible.len() < n - 1 {
        return Err(ModelError::Validation(format!(
            "target has {} eligible negatives for {}, need {}",
            eligible.len(),
            gold,
            n - 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![gold.clone()];
    if sampling == NegativeSampling::Hard {
        let labels = tgt.labels_any(gold, &[Iri::rdfs_label()]);
        let index = InvertedIndex::build(tgt, &[Iri::rdfs_label()], &WordTrigramTokeniser);
        for (c, _) in index.select_candidates(&labels, usize::MAX, &WordTrigramTokeniser) {
            if out.len() == n {
                break;
            }
            if !excluded.contains(&c) {
                out.push(c);
            }
        }
    }
    let taken: BTreeSet<Iri> = out.iter().cloned().collect();
    let mut rest: Vec<Iri> = eligible
        .into_iter()
        .filter(|c| !taken.contains(c))
        .collect();
    rest.shuffle(&mut rng);
    let missing = n - out.len();
    out.extend(rest.into_iter().take(missing));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsumptionDataset {
    pub references: Vec<Mapping>,
    pub pruned: Ontology,
    /// Equivalence references whose target had no named parent.
    pub skipped: Vec<Mapping>,
}

/// Turns `c ≡ d` references into `c ⊑ e` for every named taxonomy parent `e`
/// of `d`, then prunes those `d` from the target.
pub fn build_subsumption_dataset(
    equiv_refs: &[Mapping],
    tgt: &Ontology,
    tgt_taxonomy: &Taxonomy,
) -> Result<SubsumptionDataset, ModelError> {
    let mut emitted: Vec<Mapping> = Vec::new();
    let mut skipped = Vec::new();
    let mut removed = BTreeSet::new();
    for r in equiv_refs {
        tgt.require_concept(&r.target)?;
        let parents: Vec<Iri> = tgt_taxonomy
            .parents(&r.target)?
            .iter()
            .filter(|p| !p.is_thing())
            .cloned()
            .collect();
        if parents.is_empty() {
            skipped.push(r.clone());
            continue;
        }
        removed.insert(r.target.clone());
        for e in parents {
            emitted.push(Mapping {
                source: r.source.clone(),
                target: e,
                relation: Relation::Subsumption,
                score: 1.0,
            });
        }
    }
    let pruned = prune(tgt, &removed)?;
    let mut seen = BTreeSet::new();
    let references = emitted
        .into_iter()
        .filter(|m| !removed.contains(&m.target) && seen.insert(m.key()))
        .collect();
    Ok(SubsumptionDataset {
        references,
        pruned,
        skipped,
    })
}
