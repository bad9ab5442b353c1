//! Tab-separated mapping and ranking-case files.

use std::fmt::Write;

use crate::error::ModelError;
use crate::eval::RankingCase;
use crate::iri::Iri;
use crate::matcher::{Mapping, Relation};

pub const MAPPING_HEADER: &str = "SrcEntity\tTgtEntity\tScore";
pub const RANKING_HEADER: &str = "SrcEntity\tTgtEntity\tCandidateList";

pub fn write_mappings(mappings: &[Mapping]) -> String {
    let mut out = format!("{MAPPING_HEADER}\n");
    for m in mappings {
        let _ = writeln!(out, "{}\t{}\t{:.6}", m.source, m.target, m.score);
    }
    out
}

fn bad_line(n: usize, why: impl std::fmt::Display) -> ModelError {
    ModelError::Validation(format!("line {n}: {why}"))
}

/// Reads a mapping file. Every row gets `relation`; a missing score column means 1.0.
pub fn read_mappings(text: &str, relation: Relation) -> Result<Vec<Mapping>, ModelError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() || (i == 0 && line.starts_with("SrcEntity")) {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() < 2 || cols.len() > 3 {
            return Err(bad_line(
                n,
                format!(
                    "expected 2 or 3 tab-separated columns, found {}",
                    cols.len()
                ),
            ));
        }
        let source = Iri::new(cols[0]).map_err(|e| bad_line(n, e))?;
        let target = Iri::new(cols[1]).map_err(|e| bad_line(n, e))?;
        let score = match cols.get(2) {
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| bad_line(n, format!("invalid score {s:?}")))?,
            None => 1.0,
        };
        if !(0.0..=1.0).contains(&score) {
            return Err(bad_line(n, format!("score {score} outside [0, 1]")));
        }
        out.push(Mapping {
            source,
            target,
            relation,
            score,
        });
    }
    Ok(out)
}

pub fn write_ranking_cases(cases: &[RankingCase]) -> String {
    let mut out = format!("{RANKING_HEADER}\n");
    for c in cases {
        let list: Vec<&str> = c.ranked.iter().map(Iri::as_str).collect();
        let _ = writeln!(out, "{}\t{}\t{}", c.source, c.gold, list.join(","));
    }
    out
}

pub fn read_ranking_cases(text: &str) -> Result<Vec<RankingCase>, ModelError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() || (i == 0 && line.starts_with("SrcEntity")) {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [src, gold, list] = cols.as_slice() else {
            return Err(bad_line(
                n,
                format!("expected 3 tab-separated columns, found {}", cols.len()),
            ));
        };
        let ranked = list
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| Iri::new(s.trim()).map_err(|e| bad_line(n, e)))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(RankingCase {
            source: Iri::new(src).map_err(|e| bad_line(n, e))?,
            gold: Iri::new(gold).map_err(|e| bad_line(n, e))?,
            ranked,
        });
    }
    Ok(out)
}
