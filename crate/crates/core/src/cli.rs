//! Sweep and validation front end.
//!
//! Settings come from an optional `key=value` config file and from flags;
//! flags win. Both are merged into a [`SweepSpec`] before anything runs.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::benchmark::{select_from_bounds, simo_capacity, AdaptiveChoice, SimoParams};
use crate::bounds::{composite, BoundsResult};
use crate::entropy::{Method, NumericsConfig};
use crate::error::{Error, Result};
use crate::model::{ChannelParams, Constellation, CLT_MIN_ANTENNAS};
use crate::sim::{ks_distance_to_gaussian, simulate_exact, MIN_KS_SAMPLES};

pub const CSV_HEADER: &str =
    "snr_db,M,P,lb_h,lb_w,ub_h,ub_w,lb,ub,exact_mi,simo_capacity,adaptive_P,adaptive_rate";

/// KS distance below which the Gaussian approximation is accepted.
pub const KS_THRESHOLD: f64 = 0.03;

pub const DEFAULT_VALIDATION_SAMPLES: usize = 100_000;

const KEYS: [&str; 11] = [
    "snr-db",
    "antennas",
    "pam",
    "sigma-h2",
    "mean-energy",
    "method",
    "seed",
    "delta",
    "a-const",
    "out",
    "samples",
];

#[derive(Debug, Parser)]
#[command(name = "ed-bounds", version, about = "Mutual-information bounds for PAM energy detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate bounds over an (M, P, SNR) grid and write CSV.
    Sweep(SweepArgs),
    /// Compare exact channel statistics against their Gaussian approximations.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// key=value config file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// SNR grid in dB as START:STOP:STEP, or a single value.
    #[arg(long = "snr-db", allow_hyphen_values = true)]
    pub snr_db: Option<String>,
    /// Comma-separated antenna counts.
    #[arg(long)]
    pub antennas: Option<String>,
    /// Comma-separated PAM orders.
    #[arg(long)]
    pub pam: Option<String>,
    #[arg(long = "sigma-h2")]
    pub sigma_h2: Option<String>,
    #[arg(long = "mean-energy")]
    pub mean_energy: Option<String>,
    /// quad or mc.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Acceptable rate loss for the adaptive selector.
    #[arg(long)]
    pub delta: Option<String>,
    /// Constant `a` of the SIMO capacity benchmark.
    #[arg(long = "a-const")]
    pub a_const: Option<String>,
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Channel uses simulated per antenna count.
    #[arg(long)]
    pub samples: Option<String>,
}

impl SweepArgs {
    fn settings(&self) -> Result<BTreeMap<String, String>> {
        let mut map = match &self.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("snr-db", self.snr_db.clone()),
            ("antennas", self.antennas.clone()),
            ("pam", self.pam.clone()),
            ("sigma-h2", self.sigma_h2.clone()),
            ("mean-energy", self.mean_energy.clone()),
            ("method", self.method.clone()),
            ("seed", self.seed.clone()),
            ("delta", self.delta.clone()),
            ("a-const", self.a_const.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (key, value) in flags {
            if let Some(value) = value {
                map.insert(key.to_string(), value);
            }
        }
        Ok(map)
    }
}

/// Parses a config file: one `key=value` per line, `#` starts a comment.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    parse_config(&fs::read_to_string(path)?)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key=value", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if !KEYS.contains(&key) {
            return Err(usage(format!("config line {}: unknown key `{key}`", lineno + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| usage(format!("--{key}: cannot parse `{raw}`")))
}

fn parse_list<T: std::str::FromStr + Ord>(key: &str, raw: &str) -> Result<Vec<T>> {
    let mut items = raw
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_value(key, s))
        .collect::<Result<Vec<T>>>()?;
    if items.is_empty() {
        return Err(usage(format!("--{key}: list is empty")));
    }
    items.sort();
    items.dedup();
    Ok(items)
}

/// SNR points `start + k·step` for `k = 0, 1, …` up to `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    pub fn parse(raw: &str) -> Result<Self> {
        let parts: Vec<&str> = raw.split(':').collect();
        let grid = match parts.as_slice() {
            [single] => {
                let v = parse_value("snr-db", single)?;
                SnrGrid { start: v, stop: v, step: 1.0 }
            }
            [start, stop, step] => SnrGrid {
                start: parse_value("snr-db", start)?,
                stop: parse_value("snr-db", stop)?,
                step: parse_value("snr-db", step)?,
            },
            _ => return Err(usage(format!("--snr-db: expected START:STOP:STEP, got `{raw}`"))),
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(usage("--snr-db: values must be finite"));
        }
        if self.step <= 0.0 {
            return Err(usage("--snr-db: step must be positive"));
        }
        if self.stop < self.start {
            return Err(usage("--snr-db: stop is below start"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// Fully resolved sweep configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub snr_db: SnrGrid,
    pub antennas: Vec<u32>,
    pub pam_orders: Vec<usize>,
    pub sigma_h2: f64,
    pub mean_energy: f64,
    pub method: Method,
    pub seed: u64,
    pub delta: f64,
    pub a_const: f64,
    pub out: PathBuf,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            snr_db: SnrGrid { start: -20.0, stop: 30.0, step: 2.0 },
            antennas: vec![200],
            pam_orders: vec![2, 4, 8, 16],
            sigma_h2: 1.0,
            mean_energy: 1.0,
            method: Method::Quadrature,
            seed: 0,
            delta: 0.05,
            a_const: 1.0,
            out: PathBuf::from("sweep.csv"),
        }
    }
}

impl SweepSpec {
    /// Applies `key=value` settings on top of the defaults.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self> {
        let mut spec = SweepSpec::default();
        for (key, value) in settings {
            match key.as_str() {
                "snr-db" => spec.snr_db = SnrGrid::parse(value)?,
                "antennas" => spec.antennas = parse_list(key, value)?,
                "pam" => spec.pam_orders = parse_list(key, value)?,
                "sigma-h2" => spec.sigma_h2 = parse_value(key, value)?,
                "mean-energy" => spec.mean_energy = parse_value(key, value)?,
                "method" => {
                    spec.method = match value.as_str() {
                        "quad" | "quadrature" => Method::Quadrature,
                        "mc" | "monte-carlo" => Method::MonteCarlo,
                        other => return Err(usage(format!("--method: expected quad or mc, got `{other}`"))),
                    }
                }
                "seed" => spec.seed = parse_value(key, value)?,
                "delta" => spec.delta = parse_value(key, value)?,
                "a-const" => spec.a_const = parse_value(key, value)?,
                "out" => spec.out = PathBuf::from(value),
                "samples" => {}
                other => return Err(usage(format!("unknown setting `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.snr_db.validate()?;
        if self.antennas.is_empty() || self.antennas.contains(&0) {
            return Err(usage("--antennas: need a nonempty list of positive counts"));
        }
        if self.pam_orders.is_empty() || self.pam_orders.contains(&0) {
            return Err(usage("--pam: need a nonempty list of positive orders"));
        }
        if !(self.sigma_h2.is_finite() && self.sigma_h2 > 0.0) {
            return Err(usage("--sigma-h2 must be positive"));
        }
        if !(self.mean_energy.is_finite() && self.mean_energy > 0.0) {
            return Err(usage("--mean-energy must be positive"));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return Err(usage("--delta must lie in [0, 1)"));
        }
        if !(self.a_const.is_finite() && self.a_const > 0.0) {
            return Err(usage("--a-const must be positive"));
        }
        Ok(())
    }

    /// Grid points in lexicographic `(M, P, snr_db)` order.
    pub fn grid(&self) -> Vec<(u32, usize, f64)> {
        let snrs = self.snr_db.points();
        let mut grid = Vec::with_capacity(self.antennas.len() * self.pam_orders.len() * snrs.len());
        for &m in &self.antennas {
            for &p in &self.pam_orders {
                for &s in &snrs {
                    grid.push((m, p, s));
                }
            }
        }
        grid
    }

    fn numerics(&self) -> NumericsConfig {
        NumericsConfig::default()
            .with_method(self.method)
            .with_seed(self.seed)
    }

    fn params(&self, antennas: u32, snr_db: f64) -> Result<ChannelParams> {
        ChannelParams::from_snr_db(self.sigma_h2, snr_db, self.mean_energy, antennas)
    }
}

/// One CSV record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub antennas: u32,
    pub order: usize,
    pub bounds: BoundsResult,
    pub simo_capacity: f64,
    pub adaptive: AdaptiveChoice,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let b = &self.bounds;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            format_float(self.snr_db),
            self.antennas,
            self.order,
            format_float(b.lb_h),
            format_float(b.lb_w),
            format_float(b.ub_h),
            format_float(b.ub_w),
            format_float(b.lb),
            format_float(b.ub),
            format_float(b.exact_mi),
            format_float(self.simo_capacity),
            self.adaptive.order,
            format_float(self.adaptive.rate),
        )
    }
}

/// Nine significant digits, trailing zeros trimmed, exponent form only for
/// very large or very small magnitudes.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        trim_fraction(format!("{:.*}", (8 - exp) as usize, v))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub elapsed: Duration,
    /// Largest bracketing excess over tolerance (≤ 0 when all hold).
    pub max_violation: f64,
    pub warnings: Vec<String>,
    pub out: PathBuf,
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        writeln!(f, "grid points:     {}", self.rows.len())?;
        writeln!(f, "wall time:       {:.3} s", self.elapsed.as_secs_f64())?;
        writeln!(
            f,
            "max bracketing:  {:.3e} bits beyond tolerance ({})",
            self.max_violation,
            if self.max_violation <= 0.0 { "ok" } else { "VIOLATED" }
        )?;
        write!(f, "output:          {}", self.out.display())
    }
}

/// Evaluates every grid point without touching the filesystem.
pub fn evaluate_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let started = Instant::now();
    let grid = spec.grid();
    let numerics = spec.numerics();

    let bounds: Vec<BoundsResult> = grid
        .par_iter()
        .enumerate()
        .map(|(index, &(m, p, snr))| {
            let params = spec.params(m, snr)?;
            let constellation = Constellation::uniform(p, spec.mean_energy)?;
            composite(&params, &constellation, &numerics.clone().with_stream(index as u64))
        })
        .collect::<Result<_>>()?;

    let mut lbs_at: BTreeMap<(u32, u64), Vec<(usize, f64)>> = BTreeMap::new();
    for (&(m, p, snr), b) in grid.iter().zip(&bounds) {
        if p >= 2 {
            lbs_at.entry((m, snr.to_bits())).or_default().push((p, b.lb));
        }
    }

    let simo = SimoParams::new(spec.a_const, false)?;
    let mut rows = Vec::with_capacity(grid.len());
    for (&(m, p, snr), b) in grid.iter().zip(bounds) {
        let adaptive = match lbs_at.get(&(m, snr.to_bits())) {
            Some(lbs) => select_from_bounds(lbs, spec.delta)?,
            None => AdaptiveChoice { order: 1, rate: 0.0 },
        };
        let rho = spec.params(m, snr)?.snr(spec.mean_energy);
        rows.push(SweepRow {
            snr_db: snr,
            antennas: m,
            order: p,
            bounds: b,
            simo_capacity: simo_capacity(m, rho, &simo)?,
            adaptive,
        });
    }

    let max_violation = rows
        .iter()
        .map(|r| r.bounds.bracketing_excess())
        .fold(f64::NEG_INFINITY, f64::max);
    let warnings = spec
        .antennas
        .iter()
        .filter(|&&m| m < CLT_MIN_ANTENNAS)
        .map(|m| format!("M = {m} is below {CLT_MIN_ANTENNAS} antennas; the Gaussian approximation is not justified there"))
        .collect();

    Ok(SweepReport {
        rows,
        elapsed: started.elapsed(),
        max_violation,
        warnings,
        out: spec.out.clone(),
    })
}

/// Evaluates the grid, writes the CSV and fails if any point breaks the
/// bracketing invariants beyond its tolerance. The file is written either way.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let report = evaluate_sweep(spec)?;
    let mut file = BufWriter::new(fs::File::create(&spec.out)?);
    file.write_all(rows_to_csv(&report.rows).as_bytes())?;
    file.flush()?;

    if report.max_violation > 0.0 {
        let worst = report
            .rows
            .iter()
            .max_by(|a, b| a.bounds.bracketing_excess().total_cmp(&b.bounds.bracketing_excess()))
            .expect("nonempty grid");
        return Err(Error::Bracketing {
            point: format!("M={} P={} SNR={} dB", worst.antennas, worst.order, worst.snr_db),
            excess: report.max_violation,
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationRow {
    pub antennas: u32,
    pub ks_sh: f64,
    pub ks_sn: f64,
    pub ks_w: f64,
    /// False when `M` is below the CLT regime and no threshold applies.
    pub graded: bool,
}

impl ValidationRow {
    pub fn passed(&self) -> bool {
        !self.graded || [self.ks_sh, self.ks_sn, self.ks_w].iter().all(|&d| d < KS_THRESHOLD)
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub samples: usize,
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ValidationRow::passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KS distance to Gaussian approximation, n = {} (threshold {KS_THRESHOLD})", self.samples)?;
        writeln!(f, "{:>6} {:>10} {:>10} {:>10}  result", "M", "sh", "sn", "w")?;
        for r in &self.rows {
            let verdict = match (r.graded, r.passed()) {
                (false, _) => "n/a (below CLT regime)",
                (true, true) => "pass",
                (true, false) => "FAIL",
            };
            writeln!(f, "{:>6} {:>10.5} {:>10.5} {:>10.5}  {verdict}", r.antennas, r.ks_sh, r.ks_sn, r.ks_w)?;
        }
        Ok(())
    }
}

/// KS distances of the simulated `sh`, `sn`, `w` to their Gaussian laws for
/// every antenna count in the spec. Uses the first SNR point and PAM order.
pub fn validate_approximation(spec: &SweepSpec, samples: usize) -> Result<ValidationReport> {
    spec.validate()?;
    if samples < MIN_KS_SAMPLES {
        return Err(usage(format!("--samples must be at least {MIN_KS_SAMPLES}")));
    }
    let snr = spec.snr_db.start;
    let constellation = Constellation::uniform(spec.pam_orders[0], spec.mean_energy)?;
    let rows = spec
        .antennas
        .iter()
        .map(|&m| {
            let params = spec.params(m, snr)?;
            let batch = simulate_exact(&params, &constellation, samples, spec.seed)?;
            Ok(ValidationRow {
                antennas: m,
                ks_sh: ks_distance_to_gaussian(&batch.sh_values, params.stat_sh())?,
                ks_sn: ks_distance_to_gaussian(&batch.sn_values, params.stat_sn())?,
                ks_w: ks_distance_to_gaussian(&batch.w_values, params.stat_w())?,
                graded: m >= CLT_MIN_ANTENNAS,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport { samples, rows })
}

/// Runs a parsed command line, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Sweep(args) => {
            let spec = SweepSpec::from_settings(&args.settings()?)?;
            let report = run_sweep(&spec)?;
            writeln!(out, "{report}")?;
        }
        Command::Validate(args) => {
            let mut settings = args.sweep.settings()?;
            if let Some(samples) = &args.samples {
                settings.insert("samples".into(), samples.clone());
            }
            let samples = match settings.get("samples") {
                Some(raw) => parse_value("samples", raw)?,
                None => DEFAULT_VALIDATION_SAMPLES,
            };
            let spec = SweepSpec::from_settings(&settings)?;
            let report = validate_approximation(&spec, samples)?;
            write!(out, "{report}")?;
            if !report.passed() {
                return Err(Error::InvalidArgument(
                    "Gaussian approximation rejected for at least one antenna count".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(6.0), "6");
        assert_eq!(format_float(-20.0), "-20");
        assert_eq!(format_float(2.459404512345), "2.45940451");
        assert_eq!(format_float(0.00012345678912), "0.000123456789");
        assert_eq!(format_float(1.5e-7), "1.5e-7");
        assert_eq!(format_float(123456789012.0), "1.23456789e11");
        assert_eq!(format_float(9.9999999999), "10");
    }

    #[test]
    fn snr_grid_parsing() {
        let g = SnrGrid::parse("-20:30:2").unwrap();
        assert_eq!(g.points().len(), 26);
        assert_eq!(g.points()[25], 30.0);
        assert_eq!(SnrGrid::parse("6").unwrap().points(), vec![6.0]);
        assert_eq!(SnrGrid::parse("0:1:0.1").unwrap().points().len(), 11);
        assert!(SnrGrid::parse("0:10:0").is_err());
        assert!(SnrGrid::parse("0:10:-1").is_err());
        assert!(SnrGrid::parse("10:0:1").is_err());
        assert!(SnrGrid::parse("a:b:c").is_err());
        assert!(SnrGrid::parse("1:2").is_err());
    }

    #[test]
    fn config_parsing() {
        let text = "# coarse sweep\nsnr-db = -10:10:5\nantennas=50, 200 # two arrays\n\npam=8\n";
        let map = parse_config(text).unwrap();
        assert_eq!(map["antennas"], "50, 200");
        let spec = SweepSpec::from_settings(&map).unwrap();
        assert_eq!(spec.antennas, vec![50, 200]);
        assert_eq!(spec.pam_orders, vec![8]);
        assert_eq!(spec.snr_db.points(), vec![-10.0, -5.0, 0.0, 5.0, 10.0]);
        assert!(matches!(parse_config("bogus=1"), Err(Error::Usage(_))));
        assert!(matches!(parse_config("antennas"), Err(Error::Usage(_))));
    }

    #[test]
    fn spec_validation_errors() {
        let bad = |k: &str, v: &str| {
            let map = BTreeMap::from([(k.to_string(), v.to_string())]);
            matches!(SweepSpec::from_settings(&map), Err(Error::Usage(_)))
        };
        assert!(bad("antennas", "0,10"));
        assert!(bad("antennas", ""));
        assert!(bad("pam", "x"));
        assert!(bad("delta", "1.0"));
        assert!(bad("method", "euler"));
        assert!(bad("a-const", "-2"));
        assert!(bad("sigma-h2", "0"));
        assert!(bad("seed", "-1"));
    }

    #[test]
    fn grid_is_lexicographic() {
        let map = BTreeMap::from([
            ("antennas".to_string(), "200,50".to_string()),
            ("pam".to_string(), "4,2".to_string()),
            ("snr-db".to_string(), "0:2:1".to_string()),
        ]);
        let grid = SweepSpec::from_settings(&map).unwrap().grid();
        assert_eq!(grid.len(), 12);
        assert_eq!(grid[0], (50, 2, 0.0));
        assert_eq!(grid[3], (50, 4, 0.0));
        assert_eq!(grid[11], (200, 4, 2.0));
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("sweep.cfg");
        fs::write(&cfg, "antennas=50\npam=2\nseed=9\n").unwrap();
        let args = SweepArgs {
            config: Some(cfg),
            pam: Some("4".into()),
            ..Default::default()
        };
        let spec = SweepSpec::from_settings(&args.settings().unwrap()).unwrap();
        assert_eq!(spec.antennas, vec![50]);
        assert_eq!(spec.pam_orders, vec![4]);
        assert_eq!(spec.seed, 9);
    }
}
