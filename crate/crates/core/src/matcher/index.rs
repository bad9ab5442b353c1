use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::iri::Iri;
use crate::model::Ontology;

/// Splits label text into index tokens.
pub trait Tokeniser: Send + Sync {
    fn tokens(&self, text: &str) -> BTreeSet<String>;
}

/// Lowercased words split on anything non-alphanumeric, plus the character
/// trigrams of every word of three or more characters.
#[derive(Clone, Copy, Debug, Default)]
pub struct WordTrigramTokeniser;

impl Tokeniser for WordTrigramTokeniser {
    fn tokens(&self, text: &str) -> BTreeSet<String> {
        let lower = text.to_lowercase();
        let mut out = BTreeSet::new();
        for word in lower
            .split(|c: char| !c.is_alphanumeric())
            .filter(|w| !w.is_empty())
        {
            let chars: Vec<char> = word.chars().collect();
            for tri in chars.windows(3) {
                out.insert(tri.iter().collect::<String>());
            }
            out.insert(word.to_string());
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvertedIndex {
    postings: BTreeMap<String, BTreeSet<Iri>>,
    documents: usize,
}

impl InvertedIndex {
    /// Indexes every concept of `onto` under the tokens of its labels.
    pub fn build(onto: &Ontology, label_properties: &[Iri], tokeniser: &dyn Tokeniser) -> Self {
        let mut index = InvertedIndex::default();
        for c in onto.concepts() {
            let labels = onto.labels_any(c, label_properties);
            if labels.is_empty() {
                continue;
            }
            index.documents += 1;
            for label in labels {
                for tok in tokeniser.tokens(label) {
                    index.postings.entry(tok).or_default().insert(c.clone());
                }
            }
        }
        index
    }

    pub fn postings(&self, token: &str) -> Option<&BTreeSet<Iri>> {
        self.postings.get(token)
    }

    pub fn tokens(&self) -> impl Iterator<Item = (&String, &BTreeSet<Iri>)> {
        self.postings.iter()
    }

    pub fn document_frequency(&self, token: &str) -> usize {
        self.postings.get(token).map_or(0, BTreeSet::len)
    }

    /// Number of indexed (labelled) concepts.
    pub fn documents(&self) -> usize {
        self.documents
    }

    pub fn is_empty(&self) -> bool {
        self.postings.is_empty()
    }

    pub fn idf(&self, token: &str) -> f64 {
        let df = self.document_frequency(token);
        if df == 0 {
            return 0.0;
        }
        (self.documents as f64 / df as f64).ln()
    }

    /// Every concept sharing at least one token with `labels`, with its
    /// summed idf over the distinct shared tokens.
    pub fn candidate_pool(&self, labels: &[&str], tokeniser: &dyn Tokeniser) -> HashMap<Iri, f64> {
        let tokens: BTreeSet<String> = labels.iter().flat_map(|l| tokeniser.tokens(l)).collect();
        let mut pool: HashMap<Iri, f64> = HashMap::new();
        for tok in &tokens {
            if let Some(posted) = self.postings.get(tok) {
                let idf = self.idf(tok);
                for c in posted {
                    *pool.entry(c.clone()).or_default() += idf;
                }
            }
        }
        pool
    }

    /// The `k` best candidates by idf score, ties broken by IRI.
    pub fn select_candidates(
        &self,
        labels: &[&str],
        k: usize,
        tokeniser: &dyn Tokeniser,
    ) -> Vec<(Iri, f64)> {
        let mut ranked: Vec<(Iri, f64)> =
            self.candidate_pool(labels, tokeniser).into_iter().collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        ranked.truncate(k);
        ranked
    }
}
