//! Natural-language rendering of concept expressions and of taxonomy contexts.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::error::ModelError;
use crate::iri::Iri;
use crate::model::Ontology;
use crate::parser::{NodeKind, SyntaxTree};
use crate::taxonomy::Taxonomy;

pub const SEPARATOR: &str = "<SEP>";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerbaliseError {
    #[error("no label for {0}")]
    Unlabelled(Iri),
    #[error("context limit must be at least 1")]
    ZeroLimit,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug)]
pub struct VerbaliserConfig {
    /// Annotation properties searched for labels, in priority order.
    pub label_properties: Vec<Iri>,
    /// Fail on unlabelled context nodes instead of skipping them.
    pub strict: bool,
}

impl Default for VerbaliserConfig {
    fn default() -> Self {
        VerbaliserConfig {
            label_properties: vec![Iri::rdfs_label()],
            strict: false,
        }
    }
}

fn normalise_label(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// First label of `iri`, lowercased with whitespace collapsed.
pub fn concept_label(onto: &Ontology, iri: &Iri, cfg: &VerbaliserConfig) -> Option<String> {
    onto.labels_any(iri, &cfg.label_properties)
        .into_iter()
        .map(normalise_label)
        .find(|l| !l.is_empty())
}

/// Splits `derivesFrom` or `derives_from` into `derives from`.
pub fn split_identifier(name: &str) -> String {
    let mut words: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut prev_lower = false;
    for c in name.chars() {
        if c == '_' || c == '-' || c.is_whitespace() {
            if !current.is_empty() {
                words.push(std::mem::take(&mut current));
            }
            prev_lower = false;
            continue;
        }
        if c.is_uppercase() && prev_lower && !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
        prev_lower = c.is_lowercase() || c.is_ascii_digit();
        current.extend(c.to_lowercase());
    }
    if !current.is_empty() {
        words.push(current);
    }
    words.join(" ")
}

fn role_label(
    onto: &Ontology,
    role: &Iri,
    cfg: &VerbaliserConfig,
) -> Result<String, VerbaliseError> {
    if let Some(l) = concept_label(onto, role, cfg) {
        return Ok(l);
    }
    let split = split_identifier(role.local_name());
    if split.is_empty() {
        return Err(VerbaliseError::Unlabelled(role.clone()));
    }
    Ok(split)
}

/// Renders `tree` as a single sentence built from entity labels.
pub fn verbalise(
    tree: &SyntaxTree,
    onto: &Ontology,
    cfg: &VerbaliserConfig,
) -> Result<String, VerbaliseError> {
    Verbaliser { onto, cfg }.node(tree)
}

struct Verbaliser<'a> {
    onto: &'a Ontology,
    cfg: &'a VerbaliserConfig,
}

impl Verbaliser<'_> {
    fn node(&self, t: &SyntaxTree) -> Result<String, VerbaliseError> {
        match t.kind {
            NodeKind::Named => {
                let iri = t.iri.as_ref().expect("named leaf");
                concept_label(self.onto, iri, self.cfg)
                    .ok_or_else(|| VerbaliseError::Unlabelled(iri.clone()))
            }
            NodeKind::Top => Ok("thing".into()),
            NodeKind::Bottom => Ok("nothing".into()),
            NodeKind::Not => Ok(format!("not {}", self.node(&t.children[0])?)),
            NodeKind::Or => self.join(&t.children, " or "),
            NodeKind::Some => Ok(format!(
                "{} some {}",
                self.role(t)?,
                self.node(&t.children[0])?
            )),
            NodeKind::Only => self.attached(t),
            NodeKind::And => {
                let (restrictions, heads): (Vec<&SyntaxTree>, Vec<&SyntaxTree>) = t
                    .children
                    .iter()
                    .partition(|c| matches!(c.kind, NodeKind::Some | NodeKind::Only));
                if restrictions.is_empty() {
                    return self.join(&t.children, " and ");
                }
                let head = if heads.is_empty() {
                    "something".to_string()
                } else {
                    heads
                        .iter()
                        .map(|h| self.node(h))
                        .collect::<Result<Vec<_>, _>>()?
                        .join(" and ")
                };
                let phrases = restrictions
                    .iter()
                    .map(|r| self.attached(r))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(format!("{head} that {}", phrases.join(" and ")))
            }
        }
    }

    fn role(&self, t: &SyntaxTree) -> Result<String, VerbaliseError> {
        role_label(
            self.onto,
            t.iri.as_ref().expect("restriction role"),
            self.cfg,
        )
    }

    /// A restriction phrase following "that".
    fn attached(&self, t: &SyntaxTree) -> Result<String, VerbaliseError> {
        let filler = self.node(&t.children[0])?;
        let role = self.role(t)?;
        Ok(match t.kind {
            NodeKind::Only => format!("{role} only {filler}"),
            _ => format!("{role} {filler}"),
        })
    }

    fn join(&self, items: &[SyntaxTree], sep: &str) -> Result<String, VerbaliseError> {
        Ok(items
            .iter()
            .map(|c| self.node(c))
            .collect::<Result<Vec<_>, _>>()?
            .join(sep))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextMode {
    /// The concept's own label.
    Isolated,
    /// One subsumption path.
    Path,
    /// Breadth-first neighbourhood.
    BreadthFirst,
}

impl ContextMode {
    pub fn code(self) -> &'static str {
        match self {
            ContextMode::Isolated => "IC",
            ContextMode::Path => "PC",
            ContextMode::BreadthFirst => "BC",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    pub text: String,
    /// Unlabelled nodes that were left out.
    pub skipped: Vec<Iri>,
}

/// Textual context of `c` drawn from the taxonomy; the root is never included.
/// `limit` caps the number of labels emitted.
pub fn context_text(
    onto: &Ontology,
    taxonomy: &Taxonomy,
    c: &Iri,
    mode: ContextMode,
    direction: Direction,
    limit: usize,
    cfg: &VerbaliserConfig,
) -> Result<Context, VerbaliseError> {
    if limit == 0 {
        return Err(VerbaliseError::ZeroLimit);
    }
    let start = taxonomy.resolve(c)?.clone();
    let step = |n: &Iri| -> Result<&BTreeSet<Iri>, ModelError> {
        match direction {
            Direction::Up => taxonomy.parents(n),
            Direction::Down => taxonomy.children(n),
        }
    };
    let visit: Vec<Iri> = match mode {
        ContextMode::Isolated => vec![c.clone()],
        ContextMode::Path => {
            let mut path = vec![c.clone()];
            let mut seen = BTreeSet::from([start.clone()]);
            let mut cur = start;
            while let Some(next) = step(&cur)?.iter().find(|n| !n.is_thing()) {
                if !seen.insert(next.clone()) {
                    break;
                }
                path.push(next.clone());
                cur = next.clone();
            }
            path
        }
        ContextMode::BreadthFirst => {
            let mut order = vec![c.clone()];
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(n) = queue.pop_front() {
                for m in step(&n)? {
                    if !m.is_thing() && seen.insert(m.clone()) {
                        order.push(m.clone());
                        queue.push_back(m.clone());
                    }
                }
            }
            order
        }
    };
    let mut labels = Vec::new();
    let mut skipped = Vec::new();
    for n in visit {
        if n.is_thing() {
            continue;
        }
        if labels.len() == limit {
            break;
        }
        match concept_label(onto, &n, cfg) {
            Some(l) => labels.push(l),
            None if cfg.strict => return Err(VerbaliseError::Unlabelled(n)),
            None => skipped.push(n),
        }
    }
    Ok(Context {
        text: labels.join(&format!(" {SEPARATOR} ")),
        skipped,
    })
}
