//! TOML run configuration. Every key is optional; explicit flags win.

use std::path::Path;

use anyhow::Context as _;
use ontokit::eval::{NegativeSampling, Setting};
use ontokit::matcher::MatcherConfig;
use ontokit::verbalise::{ContextMode, Direction, VerbaliserConfig};
use ontokit::Iri;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// 0 lets the thread pool pick.
    pub threads: usize,
    pub reasoner: ReasonerSection,
    pub matcher: MatcherSection,
    pub verbaliser: VerbaliserSection,
    pub context: ContextSection,
    pub evaluation: EvaluationSection,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TierName {
    Structural,
    #[default]
    El,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReasonerSection {
    pub tier: TierName,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatcherSection {
    pub k: usize,
    pub lambda: f64,
    pub kappa: f64,
    pub label_properties: Vec<String>,
    pub one_to_one: bool,
    pub extend: bool,
    pub repair: bool,
}

impl Default for MatcherSection {
    fn default() -> Self {
        let d = MatcherConfig::default();
        MatcherSection {
            k: d.k,
            lambda: d.lambda,
            kappa: d.kappa,
            label_properties: d
                .label_properties
                .iter()
                .map(|i| i.as_str().to_string())
                .collect(),
            one_to_one: d.one_to_one,
            extend: d.extend,
            repair: d.repair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerbaliserSection {
    pub label_properties: Vec<String>,
    pub strict: bool,
}

impl Default for VerbaliserSection {
    fn default() -> Self {
        VerbaliserSection {
            label_properties: vec![Iri::rdfs_label().as_str().to_string()],
            strict: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Ic,
    Pc,
    Bc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DirectionName {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContextSection {
    pub mode: ModeName,
    pub direction: DirectionName,
    pub limit: usize,
}

impl Default for ContextSection {
    fn default() -> Self {
        ContextSection {
            mode: ModeName::Pc,
            direction: DirectionName::Up,
            limit: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SettingName {
    #[default]
    Unsupervised,
    SemiSupervised,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SamplingName {
    #[default]
    Random,
    Hard,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationSection {
    pub hits: Vec<usize>,
    pub setting: SettingName,
    pub candidates: usize,
    pub sampling: SamplingName,
}

impl Default for EvaluationSection {
    fn default() -> Self {
        EvaluationSection {
            hits: ontokit::eval::DEFAULT_HITS.to_vec(),
            setting: SettingName::Unsupervised,
            candidates: 100,
            sampling: SamplingName::Random,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn matcher(&self) -> anyhow::Result<MatcherConfig> {
        let m = &self.matcher;
        let cfg = MatcherConfig {
            k: m.k,
            lambda: m.lambda,
            kappa: m.kappa,
            label_properties: iris(&m.label_properties)?,
            one_to_one: m.one_to_one,
            extend: m.extend,
            repair: m.repair,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn verbaliser(&self) -> anyhow::Result<VerbaliserConfig> {
        Ok(VerbaliserConfig {
            label_properties: iris(&self.verbaliser.label_properties)?,
            strict: self.verbaliser.strict,
        })
    }
}

fn iris(raw: &[String]) -> anyhow::Result<Vec<Iri>> {
    raw.iter()
        .map(|s| Iri::new(s.as_str()).map_err(anyhow::Error::from))
        .collect()
}

impl From<ModeName> for ContextMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Ic => ContextMode::Isolated,
            ModeName::Pc => ContextMode::Path,
            ModeName::Bc => ContextMode::BreadthFirst,
        }
    }
}

impl From<DirectionName> for Direction {
    fn from(d: DirectionName) -> Self {
        match d {
            DirectionName::Up => Direction::Up,
            DirectionName::Down => Direction::Down,
        }
    }
}

impl From<SettingName> for Setting {
    fn from(s: SettingName) -> Self {
        match s {
            SettingName::Unsupervised => Setting::Unsupervised,
            SettingName::SemiSupervised => Setting::SemiSupervised,
        }
    }
}

impl From<SamplingName> for NegativeSampling {
    fn from(s: SamplingName) -> Self {
        match s {
            SamplingName::Random => NegativeSampling::Random,
            SamplingName::Hard => NegativeSampling::Hard,
        }
    }
}
