use std::collections::BTreeMap;

use crate::iri::Iri;
use crate::reasoner::{assumed_disjoint, SubsumptionClosure};

use super::Mapping;

/// Two mappings whose combination is incoherent: indices into the input list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Conflict(pub usize, pub usize);

fn subsumed(closure: &SubsumptionClosure, a: &Iri, b: &Iri) -> bool {
    closure.subsumers(a).is_ok_and(|s| s.contains(b))
}

fn disjoint(closure: &SubsumptionClosure, a: &Iri, b: &Iri) -> bool {
    assumed_disjoint(closure, a, b).unwrap_or(false)
}

fn directed(
    m1: &Mapping,
    m2: &Mapping,
    src: &SubsumptionClosure,
    tgt: &SubsumptionClosure,
) -> bool {
    (subsumed(src, &m1.source, &m2.source) && disjoint(tgt, &m1.target, &m2.target))
        || (subsumed(tgt, &m1.target, &m2.target) && disjoint(src, &m1.source, &m2.source))
}

/// Mappings `(c1, d1)`, `(c2, d2)` conflict when `c1 ⊑ c2` in the source while
/// `d1` and `d2` are assumed disjoint in the target, or the other way round.
pub fn conflicts(
    mappings: &[Mapping],
    src: &SubsumptionClosure,
    tgt: &SubsumptionClosure,
) -> Vec<Conflict> {
    let mut out = Vec::new();
    for i in 0..mappings.len() {
        for j in i + 1..mappings.len() {
            let (a, b) = (&mappings[i], &mappings[j]);
            if directed(a, b, src, tgt) || directed(b, a, src, tgt) {
                out.push(Conflict(i, j));
            }
        }
    }
    out
}

/// Greedily drops mappings until no conflict remains. Each round removes the
/// mapping in the most conflicts; ties go to the lower score, then to the
/// smaller (source, target) pair.
pub fn repair(
    mappings: Vec<Mapping>,
    src: &SubsumptionClosure,
    tgt: &SubsumptionClosure,
) -> Vec<Mapping> {
    let all = conflicts(&mappings, src, tgt);
    let mut alive = vec![true; mappings.len()];
    loop {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for Conflict(i, j) in &all {
            if alive[*i] && alive[*j] {
                *counts.entry(*i).or_default() += 1;
                *counts.entry(*j).or_default() += 1;
            }
        }
        let Some(victim) = counts
            .into_iter()
            .max_by(|(a, ca), (b, cb)| {
                let (ma, mb) = (&mappings[*a], &mappings[*b]);
                ca.cmp(cb)
                    .then_with(|| mb.score.total_cmp(&ma.score))
                    .then_with(|| (&mb.source, &mb.target).cmp(&(&ma.source, &ma.target)))
            })
            .map(|(i, _)| i)
        else {
            break;
        };
        alive[victim] = false;
    }
    mappings
        .into_iter()
        .zip(alive)
        .filter_map(|(m, keep)| keep.then_some(m))
        .collect()
}
