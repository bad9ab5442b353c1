//! Subcommand implementations.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _};
use ontokit::eval::{
    build_subsumption_dataset, generate_ranking_candidates, global_metrics, ranking_metrics,
    split_references, RankingCase,
};
use ontokit::io::{read_mappings, read_ranking_cases, write_mappings, write_ranking_cases};
use ontokit::matcher::{match_ontologies, substring_match, Mapping, Relation};
use ontokit::normalise::normalise;
use ontokit::projection::{project, to_ntriples};
use ontokit::reasoner::{el_classify, told_closure, SubsumptionClosure};
use ontokit::taxonomy::build_taxonomy;
use ontokit::verbalise::{context_text, verbalise};
use ontokit::{parse_concept_expression, parse_ontology, serialize_ontology, Iri, Ontology};
use serde_json::{Map, Value};

use crate::config::{Config, TierName};
use crate::report::{config_digest, digest_file, write_atomic, RunReport};
use crate::{Cli, Command};

const DEFAULT_REPORT: &str = "ontokit-report.json";

/// 2 for malformed input documents, 1 for everything else.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    let parse = e.chain().any(|c| {
        c.downcast_ref::<ontokit::ParseError>().is_some()
            || matches!(
                c.downcast_ref::<ontokit::Error>(),
                Some(ontokit::Error::Parse(_))
            )
    });
    if parse {
        2
    } else {
        1
    }
}

struct Run {
    config: Config,
    quiet: bool,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    summary: Map<String, Value>,
}

impl Run {
    fn progress(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(path.to_path_buf());
        Ok(text)
    }

    fn ontology(&mut self, path: &Path) -> anyhow::Result<Ontology> {
        let text = self.read(path)?;
        let parsed =
            parse_ontology(&text).with_context(|| format!("parsing {}", path.display()))?;
        for w in &parsed.warnings {
            self.progress(format!("{}:{w}", path.display()));
        }
        let o = parsed.ontology;
        self.progress(format!(
            "{}: {} concepts, {} roles, {} axioms, {} skipped",
            path.display(),
            o.concepts().len(),
            o.roles().len(),
            o.axiom_count(),
            parsed.warnings.len()
        ));
        Ok(o)
    }

    fn mappings(&mut self, path: &Path, relation: Relation) -> anyhow::Result<Vec<Mapping>> {
        let text = self.read(path)?;
        read_mappings(&text, relation).with_context(|| format!("reading {}", path.display()))
    }

    fn iri_list(&mut self, path: &Path) -> anyhow::Result<BTreeSet<Iri>> {
        let text = self.read(path)?;
        let mut out = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let raw = line
                .strip_prefix('<')
                .and_then(|l| l.strip_suffix('>'))
                .unwrap_or(line);
            let iri = Iri::new(raw).with_context(|| format!("{}:{}", path.display(), i + 1))?;
            out.insert(iri);
        }
        Ok(out)
    }

    fn write(&mut self, path: &Path, contents: &str) -> anyhow::Result<()> {
        write_atomic(path, contents.as_bytes())?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    /// Writes to `path` when given, standard output otherwise.
    fn emit(&mut self, path: Option<&Path>, contents: &str) -> anyhow::Result<()> {
        match path {
            Some(p) => self.write(p, contents),
            None => {
                print!("{contents}");
                Ok(())
            }
        }
    }

    fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    fn closure(&self, onto: &Ontology) -> anyhow::Result<SubsumptionClosure> {
        Ok(match self.config.reasoner.tier {
            TierName::Structural => told_closure(onto),
            TierName::El => el_classify(onto)?,
        })
    }
}

/// Folds explicit flags into the loaded config.
fn apply_flags(config: &mut Config, cli: &Cli) {
    if let Some(s) = cli.global.seed {
        config.seed = s;
    }
    if let Some(t) = cli.global.threads {
        config.threads = t;
    }
    let set_tier = |config: &mut Config, tier: &Option<TierName>| {
        if let Some(t) = tier {
            config.reasoner.tier = *t;
        }
    };
    match &cli.command {
        Command::Classify { tier, .. }
        | Command::Taxonomy { tier, .. }
        | Command::SubsumptionDataset { tier, .. } => set_tier(config, tier),
        Command::Verbalise { strict, .. } => config.verbaliser.strict |= strict,
        Command::Context {
            mode,
            direction,
            limit,
            tier,
            strict,
            ..
        } => {
            set_tier(config, tier);
            config.verbaliser.strict |= strict;
            let c = &mut config.context;
            c.mode = mode.unwrap_or(c.mode);
            c.direction = direction.unwrap_or(c.direction);
            c.limit = limit.unwrap_or(c.limit);
        }
        Command::Match {
            k,
            lambda,
            kappa,
            one_to_one,
            no_extension,
            no_repair,
            ..
        } => {
            let m = &mut config.matcher;
            m.k = k.unwrap_or(m.k);
            m.lambda = lambda.unwrap_or(m.lambda);
            m.kappa = kappa.unwrap_or(m.kappa);
            m.one_to_one |= one_to_one;
            m.extend &= !no_extension;
            m.repair &= !no_repair;
        }
        Command::Evaluate { hits: Some(h), .. } => config.evaluation.hits = h.clone(),
        Command::Split {
            setting,
            candidates,
            sampling,
            tier,
            ..
        } => {
            set_tier(config, tier);
            let e = &mut config.evaluation;
            e.setting = setting.unwrap_or(e.setting);
            e.candidates = candidates.unwrap_or(e.candidates);
            e.sampling = sampling.unwrap_or(e.sampling);
        }
        _ => {}
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Classify { .. } => "classify",
        Command::Prune { .. } => "prune",
        Command::Normalise { .. } => "normalise",
        Command::Taxonomy { .. } => "taxonomy",
        Command::Project { .. } => "project",
        Command::Verbalise { .. } => "verbalise",
        Command::Context { .. } => "context",
        Command::Match { .. } => "match",
        Command::SubstringMatch { .. } => "substring-match",
        Command::Evaluate { .. } => "evaluate",
        Command::Split { .. } => "split",
        Command::SubsumptionDataset { .. } => "subsumption-dataset",
    }
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let mut config = match &cli.global.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    apply_flags(&mut config, &cli);
    if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()?;
    }
    let mut run = Run {
        config,
        quiet: cli.global.quiet,
        inputs: Vec::new(),
        outputs: Vec::new(),
        summary: Map::new(),
    };
    if let Some(p) = &cli.global.config {
        run.inputs.push(p.clone());
    }
    dispatch(&mut run, &cli.command)?;

    let report_path = cli
        .global
        .report
        .clone()
        .or_else(|| {
            run.outputs
                .first()
                .map(|o| PathBuf::from(format!("{}.report.json", o.display())))
        })
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT));
    let report = RunReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: command_name(&cli.command).to_string(),
        argv: std::env::args().collect(),
        seed: run.config.seed,
        config_sha256: config_digest(&run.config),
        inputs: run
            .inputs
            .iter()
            .map(|p| digest_file(p))
            .collect::<anyhow::Result<_>>()?,
        outputs: run
            .outputs
            .iter()
            .map(|p| digest_file(p))
            .collect::<anyhow::Result<_>>()?,
        config: run.config.clone(),
        summary: run.summary.clone(),
    };
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_atomic(&report_path, json.as_bytes())?;
    run.progress(format!("run report: {}", report_path.display()));
    Ok(())
}

fn dispatch(run: &mut Run, command: &Command) -> anyhow::Result<()> {
    match command {
        Command::Parse { onto, out } => {
            let o = run.ontology(onto)?;
            run.note("concepts", o.concepts().len());
            run.note("roles", o.roles().len());
            run.note("individuals", o.individuals().len());
            run.note("axioms", o.axiom_count());
            println!(
                "concepts\t{}\nroles\t{}\nindividuals\t{}\naxioms\t{}",
                o.concepts().len(),
                o.roles().len(),
                o.individuals().len(),
                o.axiom_count()
            );
            if let Some(out) = out {
                run.write(out, &serialize_ontology(&o))?;
            }
        }
        Command::Classify { onto, out, .. } => {
            let o = run.ontology(onto)?;
            let cl = run.closure(&o)?;
            let mut text = String::new();
            let mut n = 0;
            for (a, b) in cl.pairs() {
                if a != b {
                    let _ = writeln!(text, "{a}\t{b}");
                    n += 1;
                }
            }
            let nothing = Iri::nothing();
            let mut unsat = 0;
            for c in cl.concepts() {
                if cl.is_unsatisfiable(c) && !c.is_nothing() {
                    let _ = writeln!(text, "{c}\t{nothing}");
                    unsat += 1;
                }
            }
            run.note("subsumptions", n);
            run.note("unsatisfiable", unsat);
            run.emit(out.as_deref(), &text)?;
        }
        Command::Prune {
            onto,
            remove,
            keep,
            out,
        } => {
            let o = run.ontology(onto)?;
            let gone = match (remove, keep) {
                (Some(r), _) => run.iri_list(r)?,
                (None, Some(k)) => {
                    let keep = run.iri_list(k)?;
                    o.concepts()
                        .iter()
                        .filter(|c| !keep.contains(*c) && !c.is_thing())
                        .cloned()
                        .collect()
                }
                (None, None) => bail!("one of --remove or --keep is required"),
            };
            let pruned = ontokit::prune::prune(&o, &gone)?;
            run.note("removed", gone.len());
            run.note("remaining_concepts", pruned.concepts().len());
            run.write(out, &serialize_ontology(&pruned))?;
        }
        Command::Normalise { onto, out, defs } => {
            let o = run.ontology(onto)?;
            let n = normalise(&o)?;
            let mut text = String::new();
            for ax in &n.axioms {
                let _ = writeln!(text, "{ax}");
            }
            let mut map = String::new();
            for (fresh, expr) in &n.definitions {
                let _ = writeln!(map, "{fresh} = {expr}");
            }
            run.note("axioms", n.axioms.len());
            run.note("fresh_concepts", n.definitions.len());
            run.write(out, &text)?;
            let defs = defs
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{}.defs", out.display())));
            run.write(&defs, &map)?;
        }
        Command::Taxonomy { onto, out, .. } => {
            let o = run.ontology(onto)?;
            let tax = build_taxonomy(&o, &run.closure(&o)?);
            run.note("nodes", tax.nodes().count());
            run.note("edges", tax.edges().len());
            run.emit(out.as_deref(), &tax.to_tsv())?;
        }
        Command::Project { onto, out } => {
            let o = run.ontology(onto)?;
            let triples = project(&o);
            run.note("triples", triples.len());
            run.emit(out.as_deref(), &to_ntriples(&triples))?;
        }
        Command::Verbalise {
            onto, expr, out, ..
        } => {
            let o = run.ontology(onto)?;
            let cfg = run.config.verbaliser()?;
            let text = run.read(expr)?;
            let mut sentences = String::new();
            let mut n = 0;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let tree = parse_concept_expression(line.trim(), &o)
                    .with_context(|| format!("{} line {}", expr.display(), i + 1))?;
                let s = verbalise(&tree, &o, &cfg)
                    .with_context(|| format!("{} line {}", expr.display(), i + 1))?;
                let _ = writeln!(sentences, "{s}");
                n += 1;
            }
            run.note("sentences", n);
            run.emit(out.as_deref(), &sentences)?;
        }
        Command::Context {
            onto,
            concepts,
            out,
            ..
        } => {
            let o = run.ontology(onto)?;
            let cfg = run.config.verbaliser()?;
            let tax = build_taxonomy(&o, &run.closure(&o)?);
            let targets: Vec<Iri> = match concepts {
                Some(p) => run.iri_list(p)?.into_iter().collect(),
                None => o
                    .concepts()
                    .iter()
                    .filter(|c| !c.is_thing())
                    .cloned()
                    .collect(),
            };
            let c = run.config.context.clone();
            let mode = c.mode.into();
            let mut text = String::new();
            let mut skipped = 0;
            for iri in &targets {
                let ctx = context_text(&o, &tax, iri, mode, c.direction.into(), c.limit, &cfg)?;
                skipped += ctx.skipped.len();
                let _ = writeln!(text, "{iri}\t{}\t{}", mode.code(), ctx.text);
            }
            run.note("contexts", targets.len());
            run.note("skipped_unlabelled", skipped);
            run.emit(out.as_deref(), &text)?;
        }
        Command::Match { pair, out, .. } => {
            let src = run.ontology(&pair.source)?;
            let tgt = run.ontology(&pair.target)?;
            let cfg = run.config.matcher()?;
            let mappings = match_ontologies(&src, &tgt, &cfg)?;
            run.note("mappings", mappings.len());
            run.write(out, &write_mappings(&mappings))?;
            println!("{} mappings written to {}", mappings.len(), out.display());
        }
        Command::SubstringMatch { pair, out } => {
            let src = run.ontology(&pair.source)?;
            let tgt = run.ontology(&pair.target)?;
            let props = run.config.matcher()?.label_properties;
            let mappings = substring_match(&src, &tgt, &props);
            run.note("mappings", mappings.len());
            run.write(out, &write_mappings(&mappings))?;
            println!("{} mappings written to {}", mappings.len(), out.display());
        }
        Command::Evaluate {
            pred,
            reference,
            ignore,
            ranking,
            out,
            ..
        } => {
            let hits = run.config.evaluation.hits.clone();
            let report = if let Some(r) = ranking {
                let text = run.read(r)?;
                let cases: Vec<RankingCase> = read_ranking_cases(&text)
                    .with_context(|| format!("reading {}", r.display()))?;
                run.note("cases", cases.len());
                ranking_metrics(&cases, &hits)?
            } else {
                let (Some(pred), Some(reference)) = (pred, reference) else {
                    bail!("--pred and --ref are required unless --ranking is given");
                };
                let p = run.mappings(pred, Relation::Equivalence)?;
                let r = run.mappings(reference, Relation::Equivalence)?;
                let ig = match ignore {
                    Some(i) => run.mappings(i, Relation::Equivalence)?,
                    None => Vec::new(),
                };
                global_metrics(&p, &r, &ig)
            };
            let text = report.to_text();
            for line in text.lines() {
                if let Some((k, v)) = line.split_once(" = ") {
                    run.note(
                        k,
                        v.parse::<f64>()
                            .map(Value::from)
                            .unwrap_or_else(|_| Value::from(v)),
                    );
                }
            }
            run.emit(out.as_deref(), &text)?;
        }
        Command::Split {
            reference,
            out_dir,
            target,
            ..
        } => {
            let refs = run.mappings(reference, Relation::Equivalence)?;
            let e = run.config.evaluation.clone();
            let seed = run.config.seed;
            let split = split_references(&refs, e.setting.into(), seed)?;
            run.write(&out_dir.join("train.tsv"), &write_mappings(&split.train))?;
            run.write(
                &out_dir.join("validation.tsv"),
                &write_mappings(&split.validation),
            )?;
            run.write(&out_dir.join("test.tsv"), &write_mappings(&split.test))?;
            run.note("train", split.train.len());
            run.note("validation", split.validation.len());
            run.note("test", split.test.len());
            if let Some(t) = target {
                let tgt = run.ontology(t)?;
                let cl = run.closure(&tgt)?;
                let cases = split
                    .test
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let ranked = generate_ranking_candidates(
                            m,
                            &tgt,
                            &cl,
                            e.candidates,
                            seed.wrapping_add(i as u64),
                            e.sampling.into(),
                        )?;
                        Ok(RankingCase {
                            source: m.source.clone(),
                            gold: m.target.clone(),
                            ranked,
                        })
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?;
                run.write(
                    &out_dir.join("test.cands.tsv"),
                    &write_ranking_cases(&cases),
                )?;
                run.note("ranking_cases", cases.len());
            }
        }
        Command::SubsumptionDataset {
            reference,
            target,
            out_dir,
            ..
        } => {
            let refs = run.mappings(reference, Relation::Equivalence)?;
            let tgt = run.ontology(target)?;
            let tax = build_taxonomy(&tgt, &run.closure(&tgt)?);
            let ds = build_subsumption_dataset(&refs, &tgt, &tax)?;
            run.write(
                &out_dir.join("subsumption.tsv"),
                &write_mappings(&ds.references),
            )?;
            run.write(
                &out_dir.join("target.pruned.ofn"),
                &serialize_ontology(&ds.pruned),
            )?;
            run.note("references", ds.references.len());
            run.note("skipped", ds.skipped.len());
            println!(
                "{} subsumption references, {} skipped",
                ds.references.len(),
                ds.skipped.len()
            );
        }
    }
    Ok(())
}
