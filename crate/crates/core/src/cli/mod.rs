// SPDX-License-Identifier: MIT OR Apache-2.0

//! Run configuration and command execution.
//!
//! [`RunConfig`] is both the clap parser and the configuration echoed into
//! every results document. [`run`] is pure apart from reading inputs;
//! [`execute`] additionally writes outputs atomically and prints the
//! summary.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::data::{
    file_digest, read_bundle, read_trials, write_bundle, HiddenStateBundle, ResultsDocument, StimulusSet,
};
use crate::error::{Error, Result};
use crate::fitting::RidgeOptions;
use crate::geometry::{compute_centroids, default_lambda_grid, Metric, TheoreticalKind, TheoreticalRdmSpec};
use crate::paradigms::{
    boundary_ratio_e4, build_patch_vectors, cross_model_dissociation, manifold_profile, phase_reset,
    primary_layers, run_discrimination, run_h4, run_identification, run_lambda_beta, run_precision, run_probe,
    run_rsa, ModelSummary, RsaOptions, RsaRun, DEFAULT_ALPHAS, DEFAULT_E7_WINDOW, DEFAULT_RANDOM_CONTROLS,
};
use crate::synth::{generate, SynthSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a planted-geometry bundle.
    Synth,
    /// Template comparison with Mantel tests and FDR.
    Rsa,
    /// Hierarchical regression: boundary over log distance.
    H4,
    /// Counterbalanced identification curves.
    Identify,
    /// Confidence-based discrimination.
    Discrim,
    /// Adjacent-step precision gradient.
    Precision,
    /// Ridge category probe with PCA checks.
    Probe,
    /// Probe-derived patch vectors with random controls, or a summary of
    /// returned Δconfidence tables when `--effects` is given.
    PatchVectors,
    /// Local manifold rotation.
    E7,
    /// Boundary step against ordinary steps.
    E8,
    /// Identification slope against CP strength across models.
    E9,
    /// CP-additive against the ordinal-rank baseline.
    E10,
    /// Fitted λ against continuous-model fit across layers.
    E11,
    /// Combine results documents into one summary.
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Synth => "synth",
            Command::Rsa => "rsa",
            Command::H4 => "h4",
            Command::Identify => "identify",
            Command::Discrim => "discrim",
            Command::Precision => "precision",
            Command::Probe => "probe",
            Command::PatchVectors => "patch-vectors",
            Command::E7 => "e7",
            Command::E8 => "e8",
            Command::E9 => "e9",
            Command::E10 => "e10",
            Command::E11 => "e11",
            Command::Report => "report",
        }
    }
}

/// Half-open layer range parsed from `a..b`, `a..=b` or a single index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRange {
    pub start: usize,
    pub end: usize,
}

impl LayerRange {
    pub fn layers(self) -> Vec<usize> {
        (self.start..self.end).collect()
    }
}

impl std::str::FromStr for LayerRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad layer range '{s}'")))
        };
        let (start, end) = if let Some((a, b)) = s.split_once("..=") {
            (num(a)?, num(b)? + 1)
        } else if let Some((a, b)) = s.split_once("..") {
            (num(a)?, num(b)?)
        } else {
            let a = num(s)?;
            (a, a + 1)
        };
        if start >= end {
            return Err(Error::Config(format!("empty layer range '{s}'")));
        }
        Ok(LayerRange { start, end })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Parser)]
#[command(name = "cpgeom", version, about = "Categorical-perception geometry analysis")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Bundle or results files (repeatable).
    #[arg(long = "input", short = 'i')]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub trials: Option<PathBuf>,
    /// Results document path; the bundle path for `synth`.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub permutations: usize,
    #[arg(long, default_value = "cosine")]
    pub metric: Metric,
    #[arg(long, default_value_t = 0.05)]
    pub fdr_alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long)]
    pub layers: Option<LayerRange>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    #[serde(skip)]
    pub workers: Option<usize>,
    /// Stimulus preset for trial files and `synth`.
    #[arg(long, default_value = "decade_10")]
    pub condition: String,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_true: f64,
    #[arg(long, default_value_t = 0.1)]
    pub sigma: f64,
    #[arg(long, default_value_t = 64)]
    pub dim: usize,
    #[arg(long, default_value_t = 33)]
    pub n_layers: usize,
    #[arg(long, default_value_t = 4)]
    pub sentences: usize,
    /// Rotation window (e7, default 4) or boundary-group widening (e8, default 0).
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub ridge_penalty: f64,
    #[arg(long)]
    pub no_standardize: bool,
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_RANDOM_CONTROLS)]
    pub random_controls: usize,
    /// Δconfidence table returned by a patching run.
    #[arg(long)]
    pub effects: Option<PathBuf>,
    /// Per-model summary table for e9 (model_id,id_slope,cp_strength).
    #[arg(long)]
    pub summaries: Option<PathBuf>,
    /// Results document for `synth`, whose `--out` is the bundle.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for `command`, as if no flags were given.
    pub fn new(command: Command) -> Self {
        RunConfig::parse_from(["cpgeom", command.name()])
    }

    fn ridge(&self) -> RidgeOptions {
        RidgeOptions {
            penalty: self.ridge_penalty,
            standardize: !self.no_standardize,
        }
    }
}

/// What a run produced, before anything is written.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub document: ResultsDocument,
    pub summary: String,
    /// Generated bundle (`synth` only).
    pub bundle: Option<HiddenStateBundle>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Validation(format!("results encoding: {e}")))
}

fn progress(msg: &str) {
    let _ = writeln!(std::io::stderr(), "[cpgeom] {msg}");
}

fn single_input(config: &RunConfig) -> Result<&Path> {
    match config.inputs.as_slice() {
        [one] => Ok(one),
        [] => Err(Error::Config(format!("{} needs --input", config.command.name()))),
        _ => Err(Error::Config(format!("{} takes one --input", config.command.name()))),
    }
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str, command: Command) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::Config(format!("{} needs {flag}", command.name())))
}

fn preset(name: &str) -> Result<StimulusSet> {
    StimulusSet::preset(name).ok_or_else(|| Error::Config(format!("unknown condition '{name}'")))
}

struct Loaded {
    bundle: HiddenStateBundle,
    layers: Vec<usize>,
}

fn load_bundle(config: &RunConfig, doc: &mut ResultsDocument) -> Result<Loaded> {
    let path = single_input(config)?;
    progress(&format!("reading {}", path.display()));
    doc.provenance.push(file_digest(path)?);
    let bundle = read_bundle(path)?;
    let layers = match config.layers {
        Some(r) => r.layers(),
        None => primary_layers(bundle.n_layers()),
    };
    doc.note("model_id", bundle.model_id());
    doc.note("condition", bundle.stimuli().condition());
    doc.note("layers", to_value(&layers)?);
    if bundle.stimuli().log_shift() != 0.0 {
        doc.note(
            "log_transform",
            format!("ln(v + {}) for non-positive stimulus values", bundle.stimuli().log_shift()),
        );
    }
    Ok(Loaded { bundle, layers })
}

fn note_layer_policy(doc: &mut ResultsDocument, config: &RunConfig) {
    let policy = if config.layers.is_some() {
        "user-selected range"
    } else {
        "all non-embedding layers"
    };
    doc.note("layer_policy", policy);
}

fn rsa_options(config: &RunConfig, bundle: &HiddenStateBundle, layers: Vec<usize>) -> RsaOptions {
    let mut opts = RsaOptions::standard(bundle.stimuli(), layers);
    opts.specs = TheoreticalRdmSpec::standard_set(config.lambda, config.gamma);
    if bundle.stimuli().domain() == crate::data::DomainKind::Nonce {
        opts.specs.push(TheoreticalRdmSpec::new(TheoreticalKind::OrdinalContinuous));
    }
    opts.metric = config.metric;
    opts.n_permutations = config.permutations;
    opts.seed = config.seed;
    opts.fdr_alpha = config.fdr_alpha;
    opts
}

fn rsa_table(run: &RsaRun) -> String {
    let mut out = String::from("layer  rho_cont  rho_cp_add  delta_rho  p_cp_add\n");
    for l in &run.layers {
        let get = |m: &BTreeMap<String, f64>, k: &str| m.get(k).copied().unwrap_or(f64::NAN);
        let add = TheoreticalKind::CpAdditive.name();
        out += &format!(
            "{:>5}  {:>8.4}  {:>10.4}  {:>+9.4}  {:>8.4}\n",
            l.layer,
            get(&l.rho_by_model, &run.reference_model),
            get(&l.rho_by_model, add),
            l.cp_advantage,
            get(&l.mantel_p_by_model, add),
        );
    }
    out + &run.summary_line()
}

fn note_mantel(doc: &mut ResultsDocument) {
    doc.note("mantel_alternative", "one-sided (positive association)");
    doc.note("rng", "ChaCha8, per-layer substream seed ^ layer * 0x9E3779B97F4A7C15");
}

/// Run one command without writing anything.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let mut doc = ResultsDocument::new(config.command.name(), to_value(config)?);
    doc.note("version", env!("CARGO_PKG_VERSION"));
    let mut bundle_out = None;
    let summary: String = match config.command {
        Command::Synth => {
            let spec = SynthSpec::new(preset(&config.condition)?)
                .lambda(config.lambda_true)
                .sigma(config.sigma)
                .dim(config.dim)
                .layers(config.n_layers)
                .sentences(config.sentences)
                .seed(config.seed);
            let bundle = generate(&spec)?;
            doc.results = json!({
                "spec": to_value(&spec)?,
                "layers": bundle.n_layers(),
                "stimuli": bundle.n_stimuli(),
                "sentences": bundle.n_sentences(),
                "hidden_dim": bundle.hidden_dim(),
            });
            let s = format!(
                "synth {}: L={} N={} S={} D={} λ={} σ={}",
                config.condition,
                bundle.n_layers(),
                bundle.n_stimuli(),
                bundle.n_sentences(),
                bundle.hidden_dim(),
                config.lambda_true,
                config.sigma
            );
            bundle_out = Some(bundle);
            s
        }
        Command::Rsa | Command::E10 => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            note_mantel(&mut doc);
            let mut opts = rsa_options(config, &bundle, layers);
            let ordinal = TheoreticalKind::OrdinalContinuous;
            if config.command == Command::E10 && !opts.specs.iter().any(|s| s.kind == ordinal) {
                opts.specs.push(TheoreticalRdmSpec::new(ordinal));
            }
            progress(&format!(
                "rsa over {} layers, {} permutations",
                opts.layers.len(),
                opts.n_permutations
            ));
            let run = run_rsa(&bundle, &opts)?;
            doc.note("reference_model", run.reference_model.as_str());
            let mut summary = rsa_table(&run);
            if config.command == Command::E10 {
                let adv: Vec<f64> = run
                    .layers
                    .iter()
                    .map(|l| l.rho_by_model[TheoreticalKind::CpAdditive.name()] - l.rho_by_model[ordinal.name()])
                    .collect();
                let wins = adv.iter().filter(|&&a| a > 0.0).count();
                let mean = adv.iter().sum::<f64>() / adv.len() as f64;
                summary += &format!("\nCP>Ordinal {wins}/{}  mean Δρ {mean:+.3}", adv.len());
                doc.results = json!({
                    "rsa": to_value(&run)?,
                    "ordinal_advantage": adv,
                    "ordinal_wins": wins,
                    "mean_ordinal_advantage": mean,
                });
            } else {
                doc.results = to_value(&run)?;
            }
            summary
        }
        Command::H4 => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            let res = run_h4(&bundle, config.metric, &layers)?;
            let mut s = String::from("layer  R2_logdist  R2_full  delta_R2        F         p\n");
            for r in &res {
                let g = &r.regression;
                s += &format!(
                    "{:>5}  {:>10.4}  {:>7.4}  {:>8.4}  {:>8.2}  {:>8.2e}\n",
                    r.layer, g.r2_step1, g.r2_step2, g.delta_r2, g.f_stat, g.p_value
                );
            }
            let sig = res.iter().filter(|r| r.regression.p_value < 0.001).count();
            s += &format!("Sig layers {sig}/{} (p < .001)", res.len());
            doc.results = to_value(&res)?;
            s
        }
        Command::Identify | Command::Discrim => {
            let path = required(&config.trials, "--trials", config.command)?;
            doc.provenance.push(file_digest(path)?);
            let stimuli = preset(&config.condition)?;
            doc.note("condition", stimuli.condition());
            let trials = read_trials(path, &stimuli)?;
            if config.command == Command::Identify {
                let res = run_identification(&trials, &stimuli)?;
                let mut s = String::from("framing  crossover  slope  boundary\n");
                for f in &res.framings {
                    s += &format!(
                        "{}  {}  {}  {}\n",
                        f.framing,
                        f.crossover.map_or("none".into(), |x| format!("{x:.2}")),
                        f.fit.as_ref().map_or("-".into(), |fit| format!("{:.2}", fit.slope)),
                        f.boundary_hit
                    );
                }
                doc.results = to_value(&res)?;
                s.trim_end().to_string()
            } else {
                let res = run_discrimination(&trials)?;
                doc.note("distance_bins", "six equal-count bins over log distance");
                doc.results = to_value(&res)?;
                format!(
                    "ΔConf {:+.3}  d {:.2}  MW p {:.3e}  sig bins {}/{}",
                    res.delta_conf,
                    res.cohens_d,
                    res.mw_p,
                    res.sig_bins,
                    res.bins.len()
                )
            }
        }
        Command::Precision => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            let res = run_precision(&bundle, config.metric, &layers)?;
            let ratios: Vec<f64> = res.iter().map(|r| r.boundary_ratio).collect();
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            doc.results = to_value(&res)?;
            format!("boundary ratio mean {mean:.3} over {} layers", ratios.len())
        }
        Command::Probe | Command::PatchVectors if config.effects.is_none() => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            let opts = config.ridge();
            doc.note("ridge_penalty", opts.penalty);
            doc.note("ridge_standardized", opts.standardize);
            let probes = run_probe(&bundle, &layers, opts)?;
            let perfect = probes.iter().filter(|p| p.probe.train_accuracy == 1.0).count();
            if config.command == Command::Probe {
                doc.results = to_value(&probes)?;
                format!("probe accuracy 1.00 at {perfect}/{} layers", probes.len())
            } else {
                let alphas = config.alphas.clone().unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
                let sets = probes
                    .iter()
                    .map(|p| build_patch_vectors(&p.probe, &alphas, config.random_controls, config.seed))
                    .collect::<Result<Vec<_>>>()?;
                doc.results = to_value(&sets)?;
                format!(
                    "patch vectors for {} layers, {} alphas, {} random controls",
                    sets.len(),
                    alphas.len(),
                    config.random_controls
                )
            }
        }
        Command::Probe | Command::PatchVectors => {
            let path = required(&config.effects, "--effects", config.command)?;
            doc.provenance.push(file_digest(path)?);
            let effects = crate::paradigms::read_patch_effects(path)?;
            let summary = crate::paradigms::summarize_patch_effects(&effects)?;
            let mut s = String::from("layer  category  random  specificity\n");
            for l in &summary {
                s += &format!(
                    "{:>5}  {:>8.4}  {:>6}  {}\n",
                    l.layer,
                    l.category_effect.last().copied().unwrap_or(f64::NAN),
                    l.random_effect.last().copied().flatten().map_or("-".into(), |r| format!("{r:.4}")),
                    l.specificity.map_or("-".into(), |x| format!("{x:.1}x"))
                );
            }
            doc.results = to_value(&summary)?;
            s.trim_end().to_string()
        }
        Command::E7 => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            let window = config.window.unwrap_or(DEFAULT_E7_WINDOW);
            doc.note("e7_window", window);
            let profiles = layers
                .iter()
                .map(|&l| manifold_profile(&compute_centroids(&bundle, l)?, bundle.stimuli(), window))
                .collect::<Result<Vec<_>>>()?;
            let at_boundary: Vec<f64> = profiles.iter().filter_map(|p| p.boundary_angle).collect();
            doc.results = to_value(&profiles)?;
            match (
                at_boundary.iter().copied().reduce(f64::min),
                at_boundary.iter().copied().reduce(f64::max),
            ) {
                (Some(lo), Some(hi)) => format!("boundary rotation {lo:.1}-{hi:.1}°"),
                _ => "no boundary rotation (window does not fit)".into(),
            }
        }
        Command::E8 => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            let window = config.window.unwrap_or(0);
            doc.note("e8_window", window);
            doc.note("e8_pooling", "adjacent steps pooled across layers");
            let centroids = layers
                .iter()
                .map(|&l| compute_centroids(&bundle, l))
                .collect::<Result<Vec<_>>>()?;
            let res = phase_reset(&centroids, bundle.stimuli(), config.metric, window)?;
            doc.results = to_value(&res)?;
            format!("boundary/other step ratio {:.3}  MW p {:.3e}", res.ratio, res.mw_p)
        }
        Command::E9 => {
            let path = required(&config.summaries, "--summaries", config.command)?;
            doc.provenance.push(file_digest(path)?);
            let summaries = read_summaries(path)?;
            let t = cross_model_dissociation(&summaries, config.permutations, config.seed)?;
            doc.results = json!({ "models": to_value(&summaries)?, "correlation": to_value(&t)? });
            format!("slope vs CP strength: ρ = {:+.3}, p = {:.3} (n = {})", t.rho, t.p_value, t.n)
        }
        Command::E11 => {
            let Loaded { bundle, layers } = load_bundle(config, &mut doc)?;
            note_layer_policy(&mut doc, config);
            doc.note("lambda_estimator", "grid 0..2 step 0.05, max Spearman against cp_additive");
            doc.note("beta_estimator", "Spearman of the continuous reference model");
            let res = run_lambda_beta(
                &bundle,
                config.metric,
                &layers,
                &default_lambda_grid(),
                config.permutations,
                config.seed,
            )?;
            doc.results = to_value(&res)?;
            format!(
                "λ vs β: ρ = {:+.3}, p = {:.3} over {} layers",
                res.correlation.rho, res.correlation.p_value, res.correlation.n
            )
        }
        Command::Report => report(config, &mut doc)?,
    };
    Ok(RunOutput {
        document: doc,
        summary,
        bundle: bundle_out,
    })
}

fn read_summaries(path: &Path) -> Result<Vec<ModelSummary>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{other:?}")),
    })?;
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::Parse(format!("{}: row {}: {e}", path.display(), i + 1))))
        .collect()
}

fn report(config: &RunConfig, doc: &mut ResultsDocument) -> Result<String> {
    if config.inputs.is_empty() {
        return Err(Error::Config("report needs at least one --input".into()));
    }
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    // model -> condition -> mean CP advantage
    let mut advantages: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for path in &config.inputs {
        doc.provenance.push(file_digest(path)?);
        let d = ResultsDocument::read(path)?;
        let text = |k: &str| d.metadata.get(k).and_then(Value::as_str).unwrap_or("-").to_string();
        let (model, condition) = (text("model_id"), text("condition"));
        let mut line = format!("{}  {model}  {condition}", d.command);
        if d.command == "rsa" {
            let run: RsaRun = serde_json::from_value(d.results.clone())
                .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
            line += &format!("  {}", run.summary_line());
            advantages
                .entry(model.clone())
                .or_default()
                .insert(condition.clone(), run.mean_cp_advantage);
        }
        entries.push(json!({ "command": d.command, "model_id": model, "condition": condition }));
        lines.push(line);
    }
    let mut e4 = BTreeMap::new();
    for (model, by_cond) in &advantages {
        if let (Some(&d10), Some(&d100)) = (by_cond.get("decade_10"), by_cond.get("decade_100")) {
            if let Ok(r) = boundary_ratio_e4(d10, d100) {
                lines.push(format!("E4 {model}: decade-100 / decade-10 advantage = {r:.2}"));
                e4.insert(model.clone(), r);
            }
        }
    }
    doc.results = json!({ "documents": entries, "e4_ratio": to_value(&e4)? });
    Ok(lines.join("\n"))
}

/// Run `config` on a pool of `--workers` threads, then write outputs.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let output = pool.install(|| run(config))?;
    match (config.command, &output.bundle) {
        (Command::Synth, Some(bundle)) => {
            let out = required(&config.out, "--out", config.command)?;
            write_bundle(bundle, out)?;
            if let Some(report) = &config.report {
                output.document.write(report)?;
            }
        }
        _ => {
            if let Some(out) = &config.out {
                output.document.write(out)?;
            }
        }
    }
    Ok(output)
}

/// Entry point for the binary. Returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&config) {
        Ok(out) => {
            println!("{}", out.summary);
            0
        }
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            1
        }
    }
}
