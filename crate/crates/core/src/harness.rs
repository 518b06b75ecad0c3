//! Experiment runner: replays instances against online algorithms, compares
//! them to the exact oracles and aggregates competitive ratios.
//!
//! Every online objective in a report is recomputed from the recorded
//! decisions and checked against the algorithm's own assignment. Reports are
//! byte-identical for a fixed configuration unless timing is switched on.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{
    adv_pmax_feasible, adv_pmax_infeasible, adv_rlp_det_lb2, adv_rlp_yao, adv_setcover_fig1, AdversaryTrace,
};
use crate::baseline::{FirstFit, Pick};
use crate::error::{Error, Result};
use crate::generate::{
    random_path_rlp, random_pmax, random_pmax_feasible, random_ring_rlp, random_set_system, random_tree_rlp,
};
use crate::grid::GridState;
use crate::instance::Instance;
use crate::model::{is_d_satisfied, NodeCap, NodeId, RegeneratorAssignment, Topology};
use crate::online::{OnlinePmax, OnlineRlp, PmaxDecision};
use crate::oracle::{
    is_feasible_pmax, opt_pmax, opt_rlp_general, opt_rlp_path, pmax_feasible_owners, OracleLimits, OracleMethod,
    OracleResult, Witness,
};
use crate::pmax::{covers_trimmed_edges, PmaxState, PmaxVariant};
use crate::ratio::RatioValue;
use crate::reduction::ReductionState;

macro_rules! kebab_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(Error::InvalidConfig(format!(
                        "unknown {} {other:?}, expected one of: {}",
                        stringify!($name),
                        [$($text),+].join(", ")
                    ))),
                }
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Replay,
    Adversary,
    RandomSweep,
    Oracle,
}
kebab_enum!(Mode { Replay => "replay", Adversary => "adversary", RandomSweep => "random-sweep", Oracle => "oracle" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Deterministic grid, path topologies.
    Grid,
    /// Grid with a random offset, path topologies.
    RandomGrid,
    /// Window-by-window greedy, any topology.
    FirstFit,
    /// Online set cover over path windows, any topology.
    SetCover,
    /// Path maximization sweep (`d = 2`, `k = 1`).
    Pmax,
}
kebab_enum!(Algorithm {
    Grid => "grid",
    RandomGrid => "random-grid",
    FirstFit => "first-fit",
    SetCover => "set-cover",
    Pmax => "pmax",
});

impl Algorithm {
    pub fn is_randomized(&self) -> bool {
        matches!(self, Algorithm::RandomGrid | Algorithm::SetCover)
    }

    pub fn is_pmax(&self) -> bool {
        matches!(self, Algorithm::Pmax)
    }

    pub fn build_rlp(&self, topology: &Topology, d: usize, seed: u64) -> Result<Box<dyn OnlineRlp + Send>> {
        Ok(match self {
            Algorithm::Grid => Box::new(GridState::deterministic(topology, d)?),
            Algorithm::RandomGrid => Box::new(GridState::randomized(topology, d, seed)?),
            Algorithm::FirstFit => Box::new(FirstFit::new(topology, d, Pick::Last)?),
            Algorithm::SetCover => Box::new(ReductionState::new(topology, d, seed)?),
            Algorithm::Pmax => {
                return Err(Error::InvalidConfig("pmax is not a location algorithm".into()));
            }
        })
    }

    pub fn build_pmax(
        &self,
        topology: &Topology,
        d: usize,
        k: NodeCap,
        variant: PmaxVariant,
    ) -> Result<Box<dyn OnlinePmax + Send>> {
        match self {
            Algorithm::Pmax => Ok(Box::new(PmaxState::new(topology, d, k, variant)?)),
            other => Err(Error::InvalidConfig(format!("{other} is not a path-maximization algorithm"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Path,
    Ring,
    Tree,
    PmaxFeasible,
    Pmax,
}
kebab_enum!(Family { Path => "path", Ring => "ring", Tree => "tree", PmaxFeasible => "pmax-feasible", Pmax => "pmax" });

impl Family {
    fn default_max_nodes(&self) -> usize {
        match self {
            Family::Path => 200,
            Family::Ring | Family::Tree => 40,
            Family::PmaxFeasible | Family::Pmax => 30,
        }
    }

    fn default_max_paths(&self) -> usize {
        match self {
            Family::Path => 30,
            Family::Ring | Family::Tree => 10,
            Family::PmaxFeasible | Family::Pmax => 14,
        }
    }

    pub fn generate<R: Rng>(
        &self,
        rng: &mut R,
        d: usize,
        max_nodes: Option<usize>,
        max_paths: Option<usize>,
    ) -> Result<Instance> {
        let n = max_nodes.unwrap_or_else(|| self.default_max_nodes());
        let p = max_paths.unwrap_or_else(|| self.default_max_paths());
        match self {
            Family::Path => random_path_rlp(rng, n, d, p),
            Family::Ring => random_ring_rlp(rng, n, d, p),
            Family::Tree => random_tree_rlp(rng, n, d, p),
            Family::PmaxFeasible => random_pmax_feasible(rng, n, p),
            Family::Pmax => random_pmax(rng, n, p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    RlpDetLb2,
    RlpYao,
    PmaxInfeasible,
    PmaxFeasible,
    SetcoverFig1,
}
kebab_enum!(Construction {
    RlpDetLb2 => "rlp-det-lb2",
    RlpYao => "rlp-yao",
    PmaxInfeasible => "pmax-infeasible",
    PmaxFeasible => "pmax-feasible",
    SetcoverFig1 => "setcover-fig1",
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}
kebab_enum!(OutputFormat { Json => "json", Csv => "csv" });

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub algorithm: Algorithm,
    pub d: usize,
    pub k: NodeCap,
    /// Runs per instance for randomized algorithms.
    pub trials: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub pmax_variant: PmaxVariant,
    pub limits: OracleLimits,
    /// Number of generated instances in a sweep.
    pub instances: usize,
    /// Sweep families; empty picks the algorithm's natural ones.
    pub families: Vec<Family>,
    pub max_nodes: Option<usize>,
    pub max_paths: Option<usize>,
    /// Record wall time per row. Off by default so reports stay reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, algorithm: Algorithm) -> Self {
        let (d, k) = if algorithm.is_pmax() { (2, NodeCap::Bounded(1)) } else { (2, NodeCap::Unbounded) };
        Self {
            mode,
            algorithm,
            d,
            k,
            trials: 1,
            seed: 0,
            format: OutputFormat::default(),
            pmax_variant: PmaxVariant::default(),
            limits: OracleLimits::default(),
            instances: 100,
            families: Vec::new(),
            max_nodes: None,
            max_paths: None,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.instances == 0 {
            return Err(Error::InvalidConfig("instances must be at least 1".into()));
        }
        if self.d == 0 {
            return Err(Error::InvalidConfig("d must be at least 1".into()));
        }
        Ok(())
    }

    fn algorithm_label(&self) -> String {
        match (self.algorithm, self.pmax_variant) {
            (Algorithm::Pmax, PmaxVariant::TwoStart) => "pmax-two-start".into(),
            (a, _) => a.to_string(),
        }
    }

    fn sweep_families(&self) -> Vec<Family> {
        if !self.families.is_empty() {
            return self.families.clone();
        }
        match self.algorithm {
            Algorithm::Grid | Algorithm::RandomGrid => vec![Family::Path],
            Algorithm::FirstFit => vec![Family::Path, Family::Ring, Family::Tree],
            Algorithm::SetCover => vec![Family::Ring, Family::Tree],
            Algorithm::Pmax => vec![Family::PmaxFeasible],
        }
    }
}

fn cap_label(k: NodeCap) -> String {
    match k {
        NodeCap::Bounded(k) => k.to_string(),
        NodeCap::Unbounded => "inf".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub algorithm: String,
    pub mode: Mode,
    pub d: usize,
    pub k: String,
    /// Mean over trials.
    pub online: f64,
    pub oracle: usize,
    pub ratio: RatioValue,
    pub seed: u64,
    pub ms: u64,
    pub family: String,
    pub trials: usize,
    /// False when the oracle value is only a bound.
    pub oracle_exact: bool,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    instance_id: &'a str,
    algorithm: &'a str,
    mode: Mode,
    d: usize,
    k: &'a str,
    online: f64,
    oracle: usize,
    ratio: RatioValue,
    seed: u64,
    ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RatioStats {
    pub count: usize,
    /// Mean over rows with a finite ratio.
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<RatioValue>,
    pub min_ratio: Option<RatioValue>,
    pub infinite: usize,
}

impl RatioStats {
    fn of<'a>(ratios: impl IntoIterator<Item = &'a RatioValue>) -> Self {
        let mut s = RatioStats::default();
        let mut sum = 0.0;
        for r in ratios {
            s.count += 1;
            if r.is_infinite() {
                s.infinite += 1;
            } else {
                sum += r.to_f64();
            }
            s.max_ratio = Some(s.max_ratio.map_or(*r, |m| m.max(*r)));
            s.min_ratio = Some(s.min_ratio.map_or(*r, |m| m.min(*r)));
        }
        let finite = s.count - s.infinite;
        if finite > 0 {
            s.mean_ratio = Some(sum / finite as f64);
        }
        s
    }
}

/// Normal-approximation 95% interval of a sample mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub low: f64,
    pub high: f64,
    pub samples: usize,
}

impl ConfidenceInterval {
    pub fn of(samples: &[f64]) -> Option<Self> {
        if samples.len() < 2 {
            return None;
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let half = 1.96 * (var / n).sqrt();
        Some(Self { mean, low: mean - half, high: mean + half, samples: samples.len() })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Aggregate {
    #[serde(flatten)]
    pub overall: RatioStats,
    /// Over individual trial ratios, for randomized algorithms.
    pub ci95: Option<ConfidenceInterval>,
    pub families: BTreeMap<String, RatioStats>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RatioReport {
    pub rows: Vec<ReportRow>,
    pub aggregate: Aggregate,
    /// Adversary traces, when the report came from adversary runs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<serde_json::Value>,
}

impl RatioReport {
    fn assemble(rows: Vec<ReportRow>, trial_ratios: Vec<f64>, randomized: bool) -> Self {
        let mut by_family: BTreeMap<String, Vec<RatioValue>> = BTreeMap::new();
        for r in &rows {
            by_family.entry(r.family.clone()).or_default().push(r.ratio);
        }
        let aggregate = Aggregate {
            overall: RatioStats::of(rows.iter().map(|r| &r.ratio)),
            ci95: if randomized { ConfidenceInterval::of(&trial_ratios) } else { None },
            families: by_family.iter().map(|(k, v)| (k.clone(), RatioStats::of(v))).collect(),
        };
        Self { rows, aggregate, traces: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(CsvRow {
                instance_id: &r.instance_id,
                algorithm: &r.algorithm,
                mode: r.mode,
                d: r.d,
                k: &r.k,
                online: r.online,
                oracle: r.oracle,
                ratio: r.ratio,
                seed: r.seed,
                ms: r.ms,
            })
            .map_err(|e| Error::Format(e.to_string()))?;
        }
        if self.rows.is_empty() {
            w.write_record(["instance_id", "algorithm", "mode", "d", "k", "online", "oracle", "ratio", "seed", "ms"])
                .map_err(|e| Error::Format(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Feeds `instance` to a location algorithm in arrival order, checking after
/// every request that all paths seen so far are d-satisfied and that
/// placements only grow. Returns the number of locations, recomputed from
/// the opened nodes.
pub fn replay_rlp(alg: &mut dyn OnlineRlp, instance: &Instance) -> Result<usize> {
    let mut opened_all = std::collections::BTreeSet::new();
    let mut previous = RegeneratorAssignment::unbounded();
    for (i, p) in instance.paths.iter().enumerate() {
        let opened = alg.present(p)?;
        opened_all.extend(opened);
        let now = alg.assignment();
        if !previous.is_subset_of(now) {
            return Err(Error::Invariant(format!(
                "{} removed a placement while serving lightpath {}",
                alg.name(),
                p.id
            )));
        }
        if let Some(q) = instance.paths[..=i].iter().find(|q| !is_d_satisfied(q, now, instance.d)) {
            return Err(Error::Invariant(format!(
                "lightpath {} is not {}-satisfied after request {}",
                q.id, instance.d, p.id
            )));
        }
        check_cap(now, instance.k)?;
        previous = now.clone();
    }
    let online = opened_all.len();
    if online != alg.cost() {
        return Err(Error::Invariant(format!(
            "{} reports cost {} but opened {online} locations",
            alg.name(),
            alg.cost()
        )));
    }
    Ok(online)
}

/// Path-maximization counterpart of [`replay_rlp`]: accepted paths must stay
/// served by their own regenerators. Returns the decisions and the number
/// of accepted paths.
pub fn replay_pmax(alg: &mut dyn OnlinePmax, instance: &Instance) -> Result<(Vec<PmaxDecision>, usize)> {
    let mut decisions = Vec::with_capacity(instance.paths.len());
    let mut previous = RegeneratorAssignment::new(instance.k);
    for p in &instance.paths {
        let decision = alg.present(p)?;
        let now = alg.assignment();
        if !previous.is_subset_of(now) {
            return Err(Error::Invariant(format!(
                "{} removed a placement while serving lightpath {}",
                alg.name(),
                p.id
            )));
        }
        check_cap(now, instance.k)?;
        if let PmaxDecision::Satisfied(nodes) = &decision {
            if nodes.iter().any(|&v| !now.has(v, p.id)) {
                return Err(Error::Invariant(format!(
                    "lightpath {} reported placements that are not in the assignment",
                    p.id
                )));
            }
        }
        decisions.push(decision);
        for (q, d) in instance.paths.iter().zip(&decisions) {
            if d.is_satisfied() && !covers_trimmed_edges(q, |v| now.has(v, q.id)) {
                return Err(Error::Invariant(format!(
                    "accepted lightpath {} lost its service after request {}",
                    q.id, p.id
                )));
            }
        }
        previous = now.clone();
    }
    let online = decisions.iter().filter(|d| d.is_satisfied()).count();
    Ok((decisions, online))
}

fn check_cap(assignment: &RegeneratorAssignment, k: NodeCap) -> Result<()> {
    if let NodeCap::Bounded(k) = k {
        let mut per_node: BTreeMap<NodeId, usize> = BTreeMap::new();
        for (v, _) in assignment.placements() {
            *per_node.entry(v).or_default() += 1;
        }
        if let Some((&node, &count)) = per_node.iter().find(|(_, &c)| c > k) {
            return Err(Error::CapExceeded { node, count, cap: k });
        }
    }
    Ok(())
}

fn is_pmax_instance(instance: &Instance) -> bool {
    instance.k == NodeCap::Bounded(1)
}

/// Offline optimum for the instance's problem: fewest locations when `k` is
/// unbounded, most satisfiable paths when `k = 1`.
pub fn run_oracle(instance: &Instance, limits: &OracleLimits) -> Result<OracleResult> {
    match instance.k {
        NodeCap::Unbounded if instance.topology.is_path() => Ok(opt_rlp_path(&instance.paths, instance.d)),
        NodeCap::Unbounded => opt_rlp_general(&instance.topology, &instance.paths, instance.d, limits),
        NodeCap::Bounded(1) if instance.d == 2 && instance.topology.is_path() => {
            if instance.paths.len() <= limits.max_pmax_paths {
                return opt_pmax(&instance.paths, limits);
            }
            match pmax_feasible_owners(&instance.paths) {
                Some(owners) => Ok(OracleResult {
                    objective: instance.paths.len(),
                    witness: Witness::Pmax { selected: instance.paths.iter().map(|p| p.id).collect(), owners },
                    method: OracleMethod::Backtracking,
                    optimal: true,
                }),
                None => opt_pmax(&instance.paths, limits),
            }
        }
        NodeCap::Bounded(k) => Err(Error::InvalidConfig(format!(
            "no oracle for k={k}, d={} on a {} topology",
            instance.d,
            if instance.topology.is_path() { "path" } else { "general" }
        ))),
    }
}

struct Measured {
    row: ReportRow,
    trial_ratios: Vec<f64>,
}

/// One instance against the configured algorithm, `trials` times for a
/// randomized algorithm with seeds `seed, seed + 1, ...`.
fn measure(
    config: &ExperimentConfig,
    instance: &Instance,
    id: String,
    family: String,
    seed: u64,
    mode: Mode,
) -> Result<Measured> {
    let start = Instant::now();
    let oracle = run_oracle(instance, &config.limits)?;
    let trials = if config.algorithm.is_randomized() { config.trials } else { 1 };
    let mut total = 0usize;
    let mut trial_ratios = Vec::with_capacity(trials);
    let pmax = is_pmax_instance(instance);
    if pmax != config.algorithm.is_pmax() {
        return Err(Error::InvalidConfig(format!(
            "algorithm {} does not match an instance with k={}",
            config.algorithm,
            cap_label(instance.k)
        )));
    }
    for t in 0..trials {
        let online = if pmax {
            let mut alg =
                config.algorithm.build_pmax(&instance.topology, instance.d, instance.k, config.pmax_variant)?;
            replay_pmax(alg.as_mut(), instance)?.1
        } else {
            let mut alg = config.algorithm.build_rlp(&instance.topology, instance.d, seed.wrapping_add(t as u64))?;
            replay_rlp(alg.as_mut(), instance)?
        };
        total += online;
        let r = if pmax { RatioValue::of(oracle.objective, online) } else { RatioValue::of(online, oracle.objective) };
        trial_ratios.push(r.to_f64());
    }
    let ratio = if pmax {
        RatioValue::of(oracle.objective * trials, total)
    } else {
        RatioValue::of(total, oracle.objective * trials)
    };
    let row = ReportRow {
        instance_id: id,
        algorithm: config.algorithm_label(),
        mode,
        d: instance.d,
        k: cap_label(instance.k),
        online: total as f64 / trials as f64,
        oracle: oracle.objective,
        ratio,
        seed,
        ms: if config.timing { start.elapsed().as_millis() as u64 } else { 0 },
        family,
        trials,
        oracle_exact: oracle.optimal,
    };
    Ok(Measured { row, trial_ratios })
}

pub fn run_replay(config: &ExperimentConfig, instance: &Instance, instance_id: &str) -> Result<RatioReport> {
    config.validate()?;
    let family = if is_pmax_instance(instance) {
        if is_feasible_pmax(&instance.paths) {
            "pmax-feasible"
        } else {
            "pmax-infeasible"
        }
    } else if instance.topology.is_path() {
        "path"
    } else {
        "general"
    };
    let m = measure(config, instance, instance_id.into(), family.into(), config.seed, Mode::Replay)?;
    Ok(RatioReport::assemble(vec![m.row], m.trial_ratios, config.algorithm.is_randomized()))
}

/// Instance `i` of a sweep, drawn from its own stream of the configured seed.
pub fn sweep_instance(config: &ExperimentConfig, i: usize) -> Result<(Family, Instance, u64)> {
    let families = config.sweep_families();
    let family = families[i % families.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(i as u64);
    let instance = family.generate(&mut rng, config.d, config.max_nodes, config.max_paths)?;
    Ok((family, instance, rng.gen()))
}

pub fn run_random_sweep(config: &ExperimentConfig) -> Result<RatioReport> {
    config.validate()?;
    let measured: Vec<Measured> = (0..config.instances)
        .into_par_iter()
        .map(|i| {
            let (family, instance, seed) = sweep_instance(config, i)?;
            let label = match family {
                Family::Pmax if is_feasible_pmax(&instance.paths) => "pmax-feasible".to_string(),
                Family::Pmax => "pmax-infeasible".to_string(),
                f => f.to_string(),
            };
            measure(config, &instance, format!("{family}-{i:04}"), label, seed, Mode::RandomSweep)
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(measured.len());
    let mut trial_ratios = Vec::new();
    for m in measured {
        rows.push(m.row);
        trial_ratios.extend(m.trial_ratios);
    }
    Ok(RatioReport::assemble(rows, trial_ratios, config.algorithm.is_randomized()))
}

/// Runs one lower-bound construction. `param` is `d` for the location
/// constructions, `l` and `n` for the path-maximization ones and the number
/// of sets for `setcover-fig1`. The Yao construction yields two traces, one
/// per branch.
pub fn run_adversary(
    config: &ExperimentConfig,
    construction: Construction,
    param: usize,
) -> Result<Vec<AdversaryTrace>> {
    let alg = config.algorithm;
    let seed = config.seed;
    let variant = config.pmax_variant;
    match construction {
        Construction::RlpDetLb2 => Ok(vec![adv_rlp_det_lb2(param, |t| alg.build_rlp(t, param, seed))?]),
        Construction::RlpYao => adv_rlp_yao(param)?.traces(|t| alg.build_rlp(t, param, seed)),
        Construction::PmaxInfeasible => {
            Ok(vec![adv_pmax_infeasible(param, |t| alg.build_pmax(t, 2, NodeCap::Bounded(1), variant))?])
        }
        Construction::PmaxFeasible => {
            Ok(vec![adv_pmax_feasible(param, |t| alg.build_pmax(t, 2, NodeCap::Bounded(1), variant))?])
        }
        Construction::SetcoverFig1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut system = random_set_system(&mut rng, 10, param.max(2), param.max(2));
            // Pad to exactly `param` sets so that d = |S| = param.
            system.sets.resize(param.max(2), Vec::new());
            let arrival: Vec<usize> = (0..system.element_count).collect();
            let d = system.sets.len();
            Ok(vec![adv_setcover_fig1(system.element_count, &system.sets, &arrival, |t| alg.build_rlp(t, d, seed))?])
        }
    }
}

/// Adversary traces as report rows; the ratio is the trace's own.
pub fn adversary_report(config: &ExperimentConfig, traces: &[AdversaryTrace]) -> RatioReport {
    let rows: Vec<ReportRow> = traces
        .iter()
        .enumerate()
        .map(|(i, t)| ReportRow {
            instance_id: if traces.len() > 1 {
                format!("{}-{}-{}", t.construction, t.param, i + 1)
            } else {
                format!("{}-{}", t.construction, t.param)
            },
            algorithm: t.algorithm.clone(),
            mode: Mode::Adversary,
            d: t.instance.d,
            k: cap_label(t.instance.k),
            online: t.online as f64,
            oracle: t.offline,
            ratio: t.ratio,
            seed: config.seed,
            ms: 0,
            family: t.construction.clone(),
            trials: 1,
            oracle_exact: t.offline_verified,
        })
        .collect();
    let mut report = RatioReport::assemble(rows, Vec::new(), false);
    report.traces = traces.iter().map(|t| serde_json::to_value(t).expect("trace serializes")).collect();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rlp_config(alg: Algorithm) -> ExperimentConfig {
        ExperimentConfig::new(Mode::Replay, alg)
    }

    #[test]
    fn single_path_grid_replay() {
        let inst = Instance::new(Topology::path(6).unwrap(), 2, NodeCap::Unbounded, vec![(0..=5).collect()]).unwrap();
        let r = run_replay(&rlp_config(Algorithm::Grid), &inst, "single").unwrap();
        let row = &r.rows[0];
        assert_eq!((row.online, row.oracle), (2.0, 2));
        assert_eq!(row.ratio, RatioValue::of(1, 1));
    }

    #[test]
    fn triple_path_pmax_replay() {
        let inst =
            Instance::new(Topology::path(4).unwrap(), 2, NodeCap::Bounded(1), vec![(0..=3).collect(); 3]).unwrap();
        let r = run_replay(&rlp_config(Algorithm::Pmax), &inst, "triple").unwrap();
        let row = &r.rows[0];
        assert_eq!((row.online, row.oracle), (2.0, 2));
        assert_eq!(row.ratio, RatioValue::of(1, 1));
        assert_eq!(row.family, "pmax-infeasible");
    }

    #[test]
    fn lb2_instance_replayed_against_grid() {
        let cfg = rlp_config(Algorithm::Grid);
        let traces = run_adversary(&cfg, Construction::RlpDetLb2, 3).unwrap();
        let r = run_replay(&cfg, &traces[0].instance, "lb2").unwrap();
        assert_eq!(r.rows[0].ratio, RatioValue::of(2, 1));
    }

    #[test]
    fn mismatched_algorithm_is_rejected() {
        let inst = Instance::new(Topology::path(6).unwrap(), 2, NodeCap::Unbounded, vec![(0..=5).collect()]).unwrap();
        assert!(run_replay(&rlp_config(Algorithm::Pmax), &inst, "x").is_err());
        let ring = Instance::new(Topology::ring(6).unwrap(), 2, NodeCap::Unbounded, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(run_replay(&rlp_config(Algorithm::Grid), &ring, "x").unwrap_err(), Error::NotPathTopology);
    }

    #[test]
    fn sweep_is_reproducible() {
        let mut cfg = ExperimentConfig::new(Mode::RandomSweep, Algorithm::RandomGrid);
        cfg.instances = 20;
        cfg.trials = 5;
        cfg.seed = 11;
        let a = run_random_sweep(&cfg).unwrap();
        let b = run_random_sweep(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert!(a.aggregate.ci95.is_some());
    }

    #[test]
    fn csv_header_is_fixed() {
        let mut cfg = ExperimentConfig::new(Mode::RandomSweep, Algorithm::Grid);
        cfg.instances = 3;
        let csv = run_random_sweep(&cfg).unwrap().to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), "instance_id,algorithm,mode,d,k,online,oracle,ratio,seed,ms");
    }

    #[test]
    fn infinite_ratio_is_a_string() {
        let cfg = rlp_config(Algorithm::Pmax);
        let row = ReportRow {
            instance_id: "x".into(),
            algorithm: "pmax".into(),
            mode: Mode::Adversary,
            d: 2,
            k: "1".into(),
            online: 0.0,
            oracle: 1,
            ratio: RatioValue::Infinite,
            seed: cfg.seed,
            ms: 0,
            family: "x".into(),
            trials: 1,
            oracle_exact: true,
        };
        let r = RatioReport::assemble(vec![row], Vec::new(), false);
        assert!(r.to_csv().unwrap().lines().nth(1).unwrap().contains(",inf,"));
        assert!(r.to_json().contains("\"ratio\": \"inf\""));
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), *a);
        }
        for c in Construction::ALL {
            assert_eq!(c.as_str().parse::<Construction>().unwrap(), *c);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
