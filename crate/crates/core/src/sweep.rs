//! Parameter sweeps over algorithms, update sizes, truncation orders, stop
//! rules and coning frequencies, written as CSV.
//!
//! Configs are plain `key=value` lines; `#` starts a comment and list keys
//! may repeat or hold comma-separated values:
//!
//! ```text
//! algorithm=QuatFIter,QuatFIter-np
//! N=8
//! mt=N+9            # or a fixed degree; `default` per algorithm family
//! mt.QuatFIter=N+1  # per-algorithm override
//! stop=dpc:1e-14
//! fc=1,10,100
//! ```
//!
//! Remaining keys: `alpha_deg`, `fs`, `duration`, `intervals`, `kind`
//! (`increment` or `rate`), `arw` (deg/√h), `seed`, `nodes`, `carry`,
//! `timing`, `out`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::algorithm::Algorithm;
use crate::coning::{accumulate_drift, AlgoConfig, ConingParams, NoiseParams};
use crate::error::{Error, Result};
use crate::fit::SampleKind;
use crate::stop::StopRule;

pub const CSV_HEADER: &str = "algorithm,fc_hz,fs_hz,N,n,m_T,stop,iters_mean,drift_rad,seed,wall_ms";

pub const PRESETS: [&str; 7] = ["fig3", "fig5", "fig6", "fig7", "fig9", "fig10", "fig12"];

/// Truncation degree rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// The algorithm family's default.
    Default,
    Fixed(usize),
    /// `N + k`.
    Relative(usize),
}

impl Truncation {
    pub fn resolve(self, algorithm: Algorithm, samples: usize) -> usize {
        match self {
            Truncation::Default => algorithm.default_truncation(samples),
            Truncation::Fixed(k) => k,
            Truncation::Relative(k) => samples + k,
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Default => f.write_str("default"),
            Truncation::Fixed(k) => write!(f, "{k}"),
            Truncation::Relative(k) => write!(f, "N+{k}"),
        }
    }
}

impl FromStr for Truncation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("default") {
            return Ok(Truncation::Default);
        }
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("bad truncation `{s}`: {e}"));
        match s.strip_prefix("N+").or_else(|| s.strip_prefix("n+")) {
            Some(k) => parse(k).map(Truncation::Relative),
            None if s == "N" || s == "n" => Ok(Truncation::Relative(0)),
            None => parse(s).map(Truncation::Fixed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub algorithms: Vec<Algorithm>,
    pub fc: Vec<f64>,
    pub samples: Vec<usize>,
    pub truncations: Vec<Truncation>,
    pub overrides: BTreeMap<Algorithm, Vec<Truncation>>,
    pub stops: Vec<StopRule>,
    pub seeds: Vec<u64>,
    /// Angle random walk, deg/√h.
    pub arw_deg: f64,
    pub alpha_deg: f64,
    pub fs: f64,
    pub duration: f64,
    /// Overrides `duration` with a fixed number of update intervals.
    pub intervals: Option<usize>,
    pub kind: SampleKind,
    pub nodes: Option<usize>,
    pub carry_attitude: bool,
    /// Record wall-clock time per cell; off keeps reruns byte-identical.
    pub timing: bool,
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            fc: vec![10.0],
            samples: vec![8],
            truncations: vec![Truncation::Default],
            overrides: BTreeMap::new(),
            stops: vec![StopRule::dpc(1e-14)],
            seeds: vec![0],
            arw_deg: 0.0,
            alpha_deg: 1.0,
            fs: 1000.0,
            duration: 1.0,
            intervals: None,
            kind: SampleKind::Increment,
            nodes: None,
            carry_attitude: false,
            timing: false,
            out: None,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    v.trim().parse::<T>().map_err(|e| Error::config(key, format!("cannot parse `{}`: {e}", v.trim())))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(Error::config(key, format!("expected true or false, got `{other}`"))),
    }
}

fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_value(key, s)).collect()
}

impl SweepConfig {
    /// Parses config text; list keys accumulate, scalar keys take the last
    /// value, and list keys that appear replace their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let mut seen = std::collections::HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}", lineno + 1), format!("expected key=value, got `{line}`"))
            })?;
            let key = key.trim();
            let first = seen.insert(key.to_string());
            match key {
                "algorithm" => cfg.algorithms.extend(list::<Algorithm>(key, value)?),
                "fc" | "N" | "mt" | "stop" | "seed" if first => {
                    match key {
                        "fc" => cfg.fc.clear(),
                        "N" => cfg.samples.clear(),
                        "mt" => cfg.truncations.clear(),
                        "stop" => cfg.stops.clear(),
                        _ => cfg.seeds.clear(),
                    }
                    cfg.push_list(key, value)?;
                }
                "fc" | "N" | "mt" | "stop" | "seed" => cfg.push_list(key, value)?,
                "arw" => cfg.arw_deg = parse_value(key, value)?,
                "alpha_deg" => cfg.alpha_deg = parse_value(key, value)?,
                "fs" => cfg.fs = parse_value(key, value)?,
                "duration" => cfg.duration = parse_value(key, value)?,
                "intervals" => cfg.intervals = Some(parse_value(key, value)?),
                "nodes" => cfg.nodes = Some(parse_value(key, value)?),
                "carry" => cfg.carry_attitude = parse_bool(key, value)?,
                "timing" => cfg.timing = parse_bool(key, value)?,
                "out" => cfg.out = Some(PathBuf::from(value.trim())),
                "kind" => {
                    cfg.kind = match value.trim() {
                        "increment" | "increments" => SampleKind::Increment,
                        "rate" | "rates" => SampleKind::Rate,
                        other => return Err(Error::config(key, format!("expected increment or rate, got `{other}`"))),
                    }
                }
                _ => match key.strip_prefix("mt.") {
                    Some(name) => {
                        let algo: Algorithm = parse_value(key, name)?;
                        cfg.overrides.entry(algo).or_default().extend(list::<Truncation>(key, value)?);
                    }
                    None => return Err(Error::config(key, "unknown key")),
                },
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn push_list(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "fc" => self.fc.extend(list::<f64>(key, value)?),
            "N" => self.samples.extend(list::<usize>(key, value)?),
            "mt" => self.truncations.extend(list::<Truncation>(key, value)?),
            "stop" => self.stops.extend(list::<StopRule>(key, value)?),
            _ => self.seeds.extend(list::<u64>(key, value)?),
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::config("algorithm", "at least one algorithm is required"));
        }
        let nonempty = |field: &str, empty: bool| {
            if empty {
                Err(Error::config(field, "list is empty"))
            } else {
                Ok(())
            }
        };
        nonempty("fc", self.fc.is_empty())?;
        nonempty("N", self.samples.is_empty())?;
        nonempty("mt", self.truncations.is_empty())?;
        nonempty("stop", self.stops.is_empty())?;
        nonempty("seed", self.seeds.is_empty())?;
        if let Some(&fc) = self.fc.iter().find(|f| !(**f > 0.0 && f.is_finite())) {
            return Err(Error::config("fc", format!("frequencies must be positive, got {fc}")));
        }
        if self.samples.contains(&0) {
            return Err(Error::config("N", "must be at least 1"));
        }
        if !(self.arw_deg >= 0.0 && self.arw_deg.is_finite()) {
            return Err(Error::config("arw", "must be non-negative"));
        }
        if self.intervals == Some(0) {
            return Err(Error::config("intervals", "must be at least 1"));
        }
        for &n in &self.samples {
            self.coning(self.fc[0], n)?;
        }
        Ok(())
    }

    /// Coning scenario of a cell.
    pub fn coning(&self, fc: f64, samples: usize) -> Result<ConingParams> {
        let duration = match self.intervals {
            Some(k) => (k * samples) as f64 / self.fs,
            None => self.duration,
        };
        ConingParams::new(self.alpha_deg.to_radians(), fc, self.fs, samples, duration)
    }

    fn truncations_for(&self, algorithm: Algorithm) -> &[Truncation] {
        self.overrides.get(&algorithm).map_or(&self.truncations, Vec::as_slice)
    }

    /// Cells in output order: algorithm, N, m_T, stop, seed, fc (innermost).
    /// Closed-form algorithms get one cell per seed and frequency.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &algorithm in &self.algorithms {
            if let Some(n) = algorithm.fixed_samples() {
                for &seed in &self.seeds {
                    for &fc in &self.fc {
                        out.push(Cell { algorithm, fc, samples: n, m_t: 0, stop: None, seed });
                    }
                }
                continue;
            }
            for &samples in &self.samples {
                let mut degrees: Vec<usize> = Vec::new();
                for t in self.truncations_for(algorithm) {
                    let m = t.resolve(algorithm, samples);
                    if !degrees.contains(&m) {
                        degrees.push(m);
                    }
                }
                for &m_t in &degrees {
                    for &stop in &self.stops {
                        for &seed in &self.seeds {
                            for &fc in &self.fc {
                                out.push(Cell { algorithm, fc, samples, m_t, stop: Some(stop), seed });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn algo_config(&self, cell: &Cell) -> AlgoConfig {
        let mut cfg = AlgoConfig::new(cell.algorithm, cell.samples).with_truncation(cell.m_t);
        if let Some(stop) = cell.stop {
            cfg.stop = stop;
        }
        cfg.nodes = self.nodes;
        cfg.carry_attitude = self.carry_attitude;
        cfg
    }

    pub fn noise(&self, seed: u64) -> NoiseParams {
        NoiseParams::from_deg_per_root_hour(self.arw_deg, seed)
    }

    /// Runs a single cell; solver failures yield a row with NaN drift.
    pub fn run_cell(&self, cell: &Cell) -> SweepRow {
        let start = Instant::now();
        let outcome = self
            .coning(cell.fc, cell.samples)
            .and_then(|p| accumulate_drift(&p, &self.algo_config(cell), &self.noise(cell.seed), self.kind));
        let wall_ms = self.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (iters_mean, drift_rad) = match outcome {
            Ok(o) => (o.iterations_mean, o.drift),
            Err(_) => (f64::NAN, f64::NAN),
        };
        SweepRow {
            algorithm: cell.algorithm,
            fc_hz: cell.fc,
            fs_hz: self.fs,
            samples: cell.samples,
            degree: cell.samples - 1,
            m_t: cell.m_t,
            stop: cell.stop.map_or_else(|| "none".to_string(), |s| s.to_string()),
            iters_mean,
            drift_rad,
            seed: cell.seed,
            wall_ms,
        }
    }
}

impl fmt::Display for SweepConfig {
    /// Config text that parses back to `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: Vec<String>| items.join(",");
        writeln!(f, "algorithm={}", join(self.algorithms.iter().map(|a| a.to_string()).collect()))?;
        writeln!(f, "N={}", join(self.samples.iter().map(|n| n.to_string()).collect()))?;
        writeln!(f, "mt={}", join(self.truncations.iter().map(|t| t.to_string()).collect()))?;
        for (algo, ts) in &self.overrides {
            writeln!(f, "mt.{algo}={}", join(ts.iter().map(|t| t.to_string()).collect()))?;
        }
        writeln!(f, "stop={}", join(self.stops.iter().map(|s| s.to_string()).collect()))?;
        writeln!(f, "seed={}", join(self.seeds.iter().map(|s| s.to_string()).collect()))?;
        writeln!(f, "fc={}", join(self.fc.iter().map(|v| v.to_string()).collect()))?;
        writeln!(f, "alpha_deg={}", self.alpha_deg)?;
        writeln!(f, "fs={}", self.fs)?;
        writeln!(f, "duration={}", self.duration)?;
        if let Some(k) = self.intervals {
            writeln!(f, "intervals={k}")?;
        }
        let kind = match self.kind {
            SampleKind::Increment => "increment",
            SampleKind::Rate => "rate",
        };
        writeln!(f, "kind={kind}")?;
        writeln!(f, "arw={}", self.arw_deg)?;
        if let Some(q) = self.nodes {
            writeln!(f, "nodes={q}")?;
        }
        writeln!(f, "carry={}", self.carry_attitude)?;
        writeln!(f, "timing={}", self.timing)?;
        if let Some(out) = &self.out {
            writeln!(f, "out={}", out.display())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub fc: f64,
    pub samples: usize,
    pub m_t: usize,
    /// `None` for closed-form algorithms.
    pub stop: Option<StopRule>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub algorithm: Algorithm,
    pub fc_hz: f64,
    pub fs_hz: f64,
    /// `N`.
    pub samples: usize,
    /// Fit degree `n`.
    pub degree: usize,
    pub m_t: usize,
    pub stop: String,
    pub iters_mean: f64,
    pub drift_rad: f64,
    pub seed: u64,
    pub wall_ms: Option<f64>,
}

/// Runs every cell on `jobs` worker threads (0 picks the rayon default);
/// rows come back in sweep order.
pub fn run_sweep(cfg: &SweepConfig, jobs: usize) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let cells = cfg.cells();
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::config("jobs", e.to_string()))?;
    Ok(pool.install(|| cells.par_iter().map(|c| cfg.run_cell(c)).collect()))
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.algorithm,
            float(r.fc_hz),
            float(r.fs_hz),
            r.samples,
            r.degree,
            r.m_t,
            r.stop,
            float(r.iters_mean),
            float(r.drift_rad),
            r.seed,
            r.wall_ms.map(float).unwrap_or_default(),
        );
    }
    s
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut file = fs::File::create(path).map_err(io)?;
    file.write_all(csv_string(rows).as_bytes()).map_err(io)?;
    file.flush().map_err(io)
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(Error::config("csv", format!("unexpected header {other:?}"))),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(Error::config("csv", format!("expected 11 fields in `{line}`")));
            }
            Ok(SweepRow {
                algorithm: parse_value("algorithm", f[0])?,
                fc_hz: parse_value("fc_hz", f[1])?,
                fs_hz: parse_value("fs_hz", f[2])?,
                samples: parse_value("N", f[3])?,
                degree: parse_value("n", f[4])?,
                m_t: parse_value("m_T", f[5])?,
                stop: f[6].to_string(),
                iters_mean: parse_value("iters_mean", f[7])?,
                drift_rad: parse_value("drift_rad", f[8])?,
                seed: parse_value("seed", f[9])?,
                wall_ms: if f[10].trim().is_empty() { None } else { Some(parse_value("wall_ms", f[10])?) },
            })
        })
        .collect()
}

/// Coning frequencies of the accuracy-versus-frequency scenarios, Hz.
const FREQUENCY_GRID: [f64; 21] = [
    1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 120.0, 140.0, 160.0,
    180.0, 200.0,
];

/// Built-in scenarios; all use `α = 1°` and `f_s = 1 kHz`.
pub fn preset(name: &str) -> Result<SweepConfig> {
    use Algorithm::*;
    let iters = |k: usize| (1..=k).map(StopRule::Iterations).collect::<Vec<_>>();
    let base = SweepConfig::default();
    let cfg = match name {
        "fig3" => SweepConfig {
            algorithms: vec![QuatFIter],
            samples: vec![3, 8],
            truncations: vec![Truncation::Relative(9)],
            stops: iters(7),
            ..base
        },
        "fig5" => SweepConfig {
            algorithms: vec![QuatFIterNp, QuatFIter],
            truncations: vec![Truncation::Relative(5), Truncation::Relative(2)],
            stops: iters(7),
            fc: vec![10.0, 50.0],
            ..base
        },
        "fig6" => SweepConfig {
            algorithms: vec![QuatFIterNp, QuatTaylor],
            truncations: vec![Truncation::Relative(9)],
            stops: iters(15),
            ..base
        },
        "fig7" => SweepConfig {
            algorithms: vec![RotTaylorT2s, RotTaylor, Classic2, Classic3],
            samples: vec![2, 3, 5, 8],
            truncations: vec![Truncation::Relative(9)],
            stops: vec![StopRule::hot(1e-14)],
            ..base
        },
        "fig9" => SweepConfig {
            algorithms: vec![
                QuatFIterNp,
                QuatTaylor,
                RodFIterNp,
                RodTaylor,
                RotTaylor,
                QuatFIter,
                RodFIter,
                RotFIter,
                Classic2,
                Classic3,
            ],
            truncations: vec![Truncation::Relative(9), Truncation::Relative(29)],
            overrides: [QuatFIter, RodFIter, RotFIter]
                .into_iter()
                .map(|a| (a, vec![Truncation::Relative(1)]))
                .collect(),
            fc: FREQUENCY_GRID.to_vec(),
            ..base
        },
        "fig10" => SweepConfig {
            algorithms: vec![QuatFIterNp, RodFIterNp, RotTaylor, QuatFIter],
            truncations: vec![Truncation::Relative(29), Truncation::Relative(49)],
            overrides: [(QuatFIter, vec![Truncation::Relative(1)])].into_iter().collect(),
            fc: vec![100.0],
            intervals: Some(2),
            ..base
        },
        "fig12" => SweepConfig {
            algorithms: vec![
                QuatFIterNp,
                QuatTaylor,
                RodFIterNp,
                RodTaylor,
                RotTaylor,
                QuatFIter,
                RodFIter,
                RotFIter,
                Classic2,
                Classic3,
            ],
            arw_deg: 0.001,
            duration: 10.0,
            fc: FREQUENCY_GRID.to_vec(),
            ..base
        },
        other => {
            return Err(Error::config("preset", format!("unknown preset `{other}` (known: {})", PRESETS.join(", "))));
        }
    };
    cfg.validate()?;
    Ok(cfg)
}
