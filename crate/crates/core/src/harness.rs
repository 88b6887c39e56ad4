//! Seeded experiment suites and their reports.
//!
//! Every trial draws its instance from a seed derived from the suite seed
//! and the trial coordinates, so trials run in parallel and a report can be
//! replayed record for record. Pass criteria only ever compare a lower
//! estimate (or an exact grid value) against a certified upper bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hasher;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fnv::FnvHasher;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, GridCounter};
use crate::io::to_json;
use crate::moment::MomentSystem;
use crate::multiplier::{
    bullet_conditions, certified_constant, half_root, is_odd_prime, pseudoproject, reduce_at_maximizer, tau_of,
    Certificate, PSEUDO_GROWTH,
};
use crate::norm::{bh_norm, grid_sup_norm, torus_sup_lower, TorusOptions};
use crate::poly::{random_poly, MultiIndex, Scheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    RemezRatio,
    DkBound,
    Measure,
    BhRatio,
    Prime,
}

impl SuiteId {
    pub const ALL: [SuiteId; 5] =
        [SuiteId::RemezRatio, SuiteId::DkBound, SuiteId::Measure, SuiteId::BhRatio, SuiteId::Prime];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::RemezRatio => "remez-ratio",
            SuiteId::DkBound => "dk-bound",
            SuiteId::Measure => "measure",
            SuiteId::BhRatio => "bh-ratio",
            SuiteId::Prime => "prime",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Inclusive range, written `[lo, hi]` in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span<T>(pub T, pub T);

impl<T: Copy + PartialOrd> Span<T> {
    pub fn single(v: T) -> Self {
        Span(v, v)
    }

    pub fn is_empty(&self) -> bool {
        self.0 > self.1
    }
}

impl Span<usize> {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.0..=self.1
    }
}

impl Span<u32> {
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.0..=self.1
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: SuiteId,
    pub n: Span<usize>,
    pub d: Span<usize>,
    #[serde(rename = "K")]
    pub modulus: Span<u32>,
    /// Trials per `(K, d, n)` cell; ignored by `prime`, which is exhaustive.
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    /// Enumeration cap; `None` falls back to `REMEZ_LAB_CAP` or the default.
    #[serde(default)]
    pub cap: Option<u64>,
    /// Relative slack on every bound comparison.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub torus: TorusOptions,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
}

fn default_scheme() -> Scheme {
    Scheme::DenseGaussian
}

fn default_tolerance() -> f64 {
    1e-9
}

impl ExperimentConfig {
    pub fn new(suite: SuiteId, n: Span<usize>, d: Span<usize>, modulus: Span<u32>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            suite,
            n,
            d,
            modulus,
            trials,
            seed,
            scheme: default_scheme(),
            cap: None,
            tolerance: default_tolerance(),
            torus: TorusOptions::default(),
            output: None,
            csv: None,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap.unwrap_or_else(grid::enumeration_cap)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &'static str, detail: String| Err(Error::OutOfRange { what, detail });
        if self.n.is_empty() {
            return bad("n range", format!("{:?} is empty", self.n));
        }
        if self.d.is_empty() {
            return bad("d range", format!("{:?} is empty", self.d));
        }
        if self.modulus.is_empty() {
            return bad("K range", format!("{:?} is empty", self.modulus));
        }
        if self.modulus.0 < 2 {
            return bad("K range", "K must be at least 2".into());
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return bad("tolerance", format!("{}", self.tolerance));
        }
        match self.suite {
            SuiteId::RemezRatio => {
                if self.modulus.0 < 3 || self.modulus.1 > 7 || self.d.1 > 6 {
                    return bad("remez-ratio ranges", "certificates need 3 <= K <= 7 and d <= 6".into());
                }
                let points = (2 * self.modulus.1 as u128).pow(self.n.1 as u32);
                if points > self.cap() as u128 {
                    return Err(Error::CapExceeded { points, cap: self.cap() });
                }
            }
            SuiteId::Measure if self.modulus.0 < 3 => return bad("measure K range", "K must be at least 3".into()),
            SuiteId::BhRatio if self.d.0 == 0 => return bad("bh-ratio d range", "d must be at least 1".into()),
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Violation,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub d: usize,
    #[serde(rename = "K")]
    pub modulus: u32,
    pub trial: usize,
    pub seed: u64,
    /// FNV-1a of the instance's JSON text, in hex.
    pub digest: String,
    pub norms: BTreeMap<String, f64>,
    pub ratio: Option<f64>,
    pub bound: Option<f64>,
    pub status: Status,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellAggregate {
    pub n: usize,
    pub d: usize,
    #[serde(rename = "K")]
    pub modulus: u32,
    pub trials: usize,
    pub max_ratio: Option<f64>,
    pub bound: Option<f64>,
    pub violations: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub seed: u64,
    pub version: String,
    pub cap: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub environment: Environment,
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<CellAggregate>,
    pub violations: usize,
    pub errors: usize,
    pub passed: bool,
}

impl SuiteReport {
    /// Maximum ratio per `n` for one `(d, K)` pair.
    pub fn max_ratio_by_n(&self, d: usize, modulus: u32) -> BTreeMap<usize, f64> {
        self.aggregates
            .iter()
            .filter(|a| a.d == d && a.modulus == modulus)
            .filter_map(|a| a.max_ratio.map(|r| (a.n, r)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d,K,max_ratio,bound\n");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for a in &self.aggregates {
            out += &format!("{},{},{},{},{}\n", a.n, a.d, a.modulus, opt(a.max_ratio), opt(a.bound));
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))?;
        let mut file = std::fs::File::create(path)?;
        file.write_all(text.as_bytes())?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn fnv_u64s(parts: &[u64]) -> u64 {
    let mut h = FnvHasher::default();
    for p in parts {
        h.write_u64(*p);
    }
    h.finish()
}

fn digest(bytes: &[u8]) -> String {
    let mut h = FnvHasher::default();
    h.write(bytes);
    format!("{:016x}", h.finish())
}

/// Seed of one trial, derived from the suite seed and the trial coordinates.
pub fn trial_seed(seed: u64, suite: SuiteId, modulus: u32, d: usize, n: usize, trial: usize) -> u64 {
    let suite_tag = SuiteId::ALL.iter().position(|s| *s == suite).unwrap_or(0) as u64;
    fnv_u64s(&[seed, suite_tag, modulus as u64, d as u64, n as u64, trial as u64])
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    modulus: u32,
    d: usize,
    n: usize,
    trial: usize,
}

struct Outcome {
    digest: String,
    norms: BTreeMap<String, f64>,
    ratio: Option<f64>,
    bound: Option<f64>,
    pass: bool,
}

impl Outcome {
    fn new(digest: String) -> Self {
        Outcome { digest, norms: BTreeMap::new(), ratio: None, bound: None, pass: true }
    }

    fn norm(&mut self, key: &str, v: f64) {
        self.norms.insert(key.to_string(), v);
    }
}

fn safe_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

struct Context {
    certificates: HashMap<(usize, u32), Certificate>,
    moments: HashMap<u32, MomentSystem>,
}

fn remez_trial(cfg: &ExperimentConfig, ctx: &Context, c: Cell, seed: u64) -> Result<Outcome> {
    let cert = &ctx.certificates[&(c.d, c.modulus)];
    let f = random_poly(c.n, c.d, c.modulus, seed, cfg.scheme)?;
    let mut out = Outcome::new(digest(to_json(&f)?.as_bytes()));
    let grid_k = grid_sup_norm(&f, c.modulus as usize)?;
    let red = reduce_at_maximizer(&f)?;
    let at_half = red.g.eval(&vec![half_root(c.modulus); red.m])?.norm();
    let opts = TorusOptions { seed, ..cfg.torus.clone() };
    let torus = torus_sup_lower(&f, &opts);
    out.norm("grid_K", grid_k);
    out.norm("grid_2K", red.max_value);
    out.norm("g_at_half_root", at_half);
    out.norm("torus_lower", torus.torus_lower);
    out.norm("torus_upper", torus.torus_upper);
    let slack = 1.0 + cfg.tolerance;
    let ratio = safe_ratio(torus.torus_lower, grid_k);
    out.ratio = Some(ratio);
    out.bound = Some(cert.c);
    out.pass = cert.sound
        && ratio <= cert.c * slack
        && torus.torus_lower <= cert.c1 * red.max_value * slack
        && red.max_value <= cert.c2 * grid_k * slack;
    Ok(out)
}

fn dk_trial(cfg: &ExperimentConfig, c: Cell, seed: u64) -> Result<Outcome> {
    grid::grid_size(c.modulus as usize, c.n, cfg.cap())?;
    let f = random_poly(c.n, c.d, c.modulus, seed, cfg.scheme)?;
    let mut out = Outcome::new(digest(to_json(&f)?.as_bytes()));
    let l = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
    let norm_f = grid_sup_norm(&f, c.modulus as usize)?;
    let norm_d = grid_sup_norm(&pseudoproject(&f)?, c.modulus as usize)?;
    out.norm("grid_K", norm_f);
    out.norm("pseudoprojection_grid_K", norm_d);
    out.norm("support_size", l as f64);
    let ratio = safe_ratio(norm_d, norm_f);
    let bound = PSEUDO_GROWTH.powi(l as i32);
    out.ratio = Some(ratio);
    out.bound = Some(bound);
    out.pass = ratio <= bound * (1.0 + cfg.tolerance);
    Ok(out)
}

fn measure_trial(ctx: &Context, c: Cell, seed: u64) -> Result<Outcome> {
    let sys = &ctx.moments[&c.modulus];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = sys.eps_star() * rng.gen::<f64>().sqrt();
    let z = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
    let mut bytes = z.re.to_le_bytes().to_vec();
    bytes.extend(z.im.to_le_bytes());
    let mut out = Outcome::new(digest(&bytes));
    let mu = sys.lift_measure(z)?;
    let moment = mu.moment_residuals().into_iter().fold(0.0, f64::max);
    out.norm("abs_z", z.norm());
    out.norm("min_prob", mu.min_prob());
    out.norm("sum_residual", mu.sum_residual());
    out.norm("moment_residual", moment);
    out.pass = mu.is_nonnegative() && mu.sum_residual() <= 1e-12 && moment <= 1e-10;
    Ok(out)
}

fn bh_trial(cfg: &ExperimentConfig, c: Cell, seed: u64) -> Result<Outcome> {
    grid::grid_size(c.modulus as usize, c.n, cfg.cap())?;
    let f = random_poly(c.n, c.d, c.modulus, seed, cfg.scheme)?;
    let mut out = Outcome::new(digest(to_json(&f)?.as_bytes()));
    let bh = bh_norm(&f, c.d)?;
    let grid_k = grid_sup_norm(&f, c.modulus as usize)?;
    // Hölder on the coefficient vector, then Parseval on Ω_K^n.
    let p = 2.0 * c.d as f64 / (c.d as f64 + 1.0);
    let bound = (f.len().max(1) as f64).powf(1.0 / p - 0.5);
    out.norm("bh", bh);
    out.norm("grid_K", grid_k);
    out.norm("terms", f.len() as f64);
    let ratio = safe_ratio(bh, grid_k);
    out.ratio = Some(ratio);
    out.bound = Some(bound);
    out.pass = ratio <= bound * (1.0 + cfg.tolerance);
    Ok(out)
}

/// Disagreements between the structural conditions and exact `(support, τ)`
/// equality over all pairs in `{0..K-1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    #[serde(rename = "K")]
    pub modulus: u32,
    pub n: usize,
    pub pairs: u64,
    pub classes: usize,
    pub disagreements: u64,
    /// Up to ten disagreeing pairs `(α, β, conditions, exact)`.
    pub examples: Vec<Disagreement>,
}

/// `(α, β, conditions verdict, exact verdict)`.
pub type Disagreement = (MultiIndex, MultiIndex, bool, bool);

/// Exhaustive comparison; works for any `K >= 2`, including composite ones.
pub fn prime_exhaustive(modulus: u32, n: usize, cap: u64) -> Result<PrimeCheck> {
    let size = grid::grid_size(modulus as usize, n, cap)?;
    let indices: Vec<MultiIndex> = GridCounter::new(modulus as usize, n).map(MultiIndex::new).collect();
    let mut ids = BTreeMap::new();
    let mut class = Vec::with_capacity(size);
    for a in &indices {
        let key = (a.support_size(), tau_of(a, modulus)?);
        let next = ids.len();
        class.push(*ids.entry(key).or_insert(next));
    }
    let rows: Vec<(u64, Vec<Disagreement>)> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut count = 0u64;
            let mut ex = Vec::new();
            for j in 0..size {
                let exact = class[i] == class[j];
                let cond = bullet_conditions(&indices[i], &indices[j], modulus);
                if exact != cond {
                    count += 1;
                    if ex.len() < 10 {
                        ex.push((indices[i].clone(), indices[j].clone(), cond, exact));
                    }
                }
            }
            (count, ex)
        })
        .collect();
    let disagreements = rows.iter().map(|r| r.0).sum();
    let examples = rows.into_iter().flat_map(|r| r.1).take(10).collect();
    Ok(PrimeCheck { modulus, n, pairs: (size as u64).pow(2), classes: ids.len(), disagreements, examples })
}

fn prime_cell(cfg: &ExperimentConfig, c: Cell) -> Result<Option<Outcome>> {
    if !is_odd_prime(c.modulus) {
        return Ok(None);
    }
    let check = prime_exhaustive(c.modulus, c.n, cfg.cap())?;
    let mut out = Outcome::new(digest(format!("prime:{}:{}", c.modulus, c.n).as_bytes()));
    out.norm("pairs", check.pairs as f64);
    out.norm("classes", check.classes as f64);
    out.norm("disagreements", check.disagreements as f64);
    out.pass = check.disagreements == 0;
    Ok(Some(out))
}

fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut v = Vec::new();
    for modulus in cfg.modulus.iter() {
        for d in cfg.d.iter() {
            for n in cfg.n.iter() {
                match cfg.suite {
                    SuiteId::Prime => {
                        if d == cfg.d.0 {
                            v.push(Cell { modulus, d, n, trial: 0 });
                        }
                    }
                    SuiteId::Measure => {
                        if d == cfg.d.0 && n == cfg.n.0 {
                            v.extend((0..cfg.trials).map(|trial| Cell { modulus, d, n, trial }));
                        }
                    }
                    _ => v.extend((0..cfg.trials).map(|trial| Cell { modulus, d, n, trial })),
                }
            }
        }
    }
    v
}

/// Runs a suite. Per-trial failures (cap, degenerate instance) are recorded
/// and counted, never propagated; only an invalid config is an error.
///
/// Writes the JSON report and CSV when `output` / `csv` are set.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut ctx = Context { certificates: HashMap::new(), moments: HashMap::new() };
    if cfg.suite == SuiteId::RemezRatio {
        for modulus in cfg.modulus.iter() {
            for d in cfg.d.iter() {
                ctx.certificates.insert((d, modulus), certified_constant(d, modulus)?);
            }
        }
    }
    if cfg.suite == SuiteId::Measure {
        for modulus in cfg.modulus.iter() {
            ctx.moments.insert(modulus, MomentSystem::new(modulus)?);
        }
    }
    let records: Vec<TrialRecord> = cells(cfg)
        .into_par_iter()
        .map(|c| {
            let seed = trial_seed(cfg.seed, cfg.suite, c.modulus, c.d, c.n, c.trial);
            let outcome = match cfg.suite {
                SuiteId::RemezRatio => remez_trial(cfg, &ctx, c, seed).map(Some),
                SuiteId::DkBound => dk_trial(cfg, c, seed).map(Some),
                SuiteId::Measure => measure_trial(&ctx, c, seed).map(Some),
                SuiteId::BhRatio => bh_trial(cfg, c, seed).map(Some),
                SuiteId::Prime => prime_cell(cfg, c),
            };
            let (n, d) = match cfg.suite {
                SuiteId::Measure => (0, 0),
                SuiteId::Prime => (c.n, 0),
                _ => (c.n, c.d),
            };
            let base = TrialRecord {
                n,
                d,
                modulus: c.modulus,
                trial: c.trial,
                seed,
                digest: String::new(),
                norms: BTreeMap::new(),
                ratio: None,
                bound: None,
                status: Status::Pass,
                message: None,
            };
            match outcome {
                Ok(Some(o)) => TrialRecord {
                    digest: o.digest,
                    norms: o.norms,
                    ratio: o.ratio,
                    bound: o.bound,
                    status: if o.pass { Status::Pass } else { Status::Violation },
                    ..base
                },
                Ok(None) => {
                    TrialRecord { status: Status::Skipped, message: Some("K is not an odd prime".into()), ..base }
                }
                Err(e) => TrialRecord { status: Status::Error, message: Some(e.to_string()), ..base },
            }
        })
        .collect();

    let mut cellmap: BTreeMap<(u32, usize, usize), CellAggregate> = BTreeMap::new();
    for r in &records {
        let a = cellmap.entry((r.modulus, r.d, r.n)).or_insert(CellAggregate {
            n: r.n,
            d: r.d,
            modulus: r.modulus,
            trials: 0,
            max_ratio: None,
            bound: None,
            violations: 0,
            errors: 0,
        });
        a.trials += 1;
        if let Some(x) = r.ratio {
            a.max_ratio = Some(a.max_ratio.map_or(x, |m| m.max(x)));
        }
        if let Some(b) = r.bound {
            a.bound = Some(a.bound.map_or(b, |m| m.max(b)));
        }
        a.violations += usize::from(r.status == Status::Violation);
        a.errors += usize::from(r.status == Status::Error);
    }
    let violations = records.iter().filter(|r| r.status == Status::Violation).count();
    let errors = records.iter().filter(|r| r.status == Status::Error).count();
    let report = SuiteReport {
        suite: cfg.suite,
        environment: Environment { seed: cfg.seed, version: env!("CARGO_PKG_VERSION").to_string(), cap: cfg.cap() },
        records,
        aggregates: cellmap.into_values().collect(),
        violations,
        errors,
        passed: violations == 0 && errors == 0,
    };
    if let Some(p) = &cfg.output {
        report.write_json(p)?;
    }
    if let Some(p) = &cfg.csv {
        report.write_csv(p)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_dk_suite_passes() {
        let cfg = ExperimentConfig::new(SuiteId::DkBound, Span(1, 3), Span(1, 2), Span::single(3), 0, 1);
        let r = run_suite(&cfg).unwrap();
        assert!(r.records.is_empty() && r.passed);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(SuiteId::DkBound, Span(3, 1), Span(1, 2), Span::single(3), 1, 1);
        assert!(cfg.validate().is_err());
        cfg.n = Span(1, 3);
        assert!(cfg.validate().is_ok());
        cfg.suite = SuiteId::RemezRatio;
        cfg.cap = Some(100);
        assert!(matches!(cfg.validate(), Err(Error::CapExceeded { .. })));
        cfg.cap = None;
        cfg.modulus = Span::single(8);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_json_shape() {
        let text = r#"{"suite":"remez-ratio","n":[1,3],"d":[2,2],"K":[3,3],"trials":4,"seed":42}"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.suite, SuiteId::RemezRatio);
        assert_eq!(cfg.torus.restarts, TorusOptions::default().restarts);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"suite":"nope"}"#).is_err());
    }

    #[test]
    fn replay_is_exact() {
        let mut cfg = ExperimentConfig::new(SuiteId::DkBound, Span(1, 4), Span(1, 3), Span(3, 4), 3, 9);
        cfg.scheme = Scheme::SparseUniform;
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.records, b.records);
        assert!(a.passed);
        assert_eq!(a.aggregates.len(), 4 * 3 * 2);
        cfg.seed = 10;
        assert_ne!(run_suite(&cfg).unwrap().records, a.records);
    }

    #[test]
    fn cap_errors_stay_per_trial() {
        let mut cfg = ExperimentConfig::new(SuiteId::BhRatio, Span(1, 3), Span::single(2), Span::single(3), 2, 0);
        cfg.cap = Some(10);
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.records.len(), 6);
        assert_eq!(r.errors, 2);
        assert!(!r.passed);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = ExperimentConfig::new(SuiteId::Measure, Span::single(1), Span::single(0), Span(3, 5), 20, 3);
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.records.len(), 60);
        assert!(r.passed);

        let cfg = ExperimentConfig::new(SuiteId::RemezRatio, Span(1, 3), Span::single(2), Span::single(3), 3, 42);
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed, "{:?}", r.aggregates);
        assert_eq!(r.max_ratio_by_n(2, 3).len(), 3);
        assert!(r.to_csv().lines().count() == 4);

        let cfg = ExperimentConfig::new(SuiteId::Prime, Span(1, 2), Span::single(1), Span(3, 4), 0, 0);
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.records.iter().filter(|x| x.status == Status::Skipped).count(), 2);
        assert!(r.passed);
    }

    #[test]
    fn prime_exhaustive_small() {
        let c = prime_exhaustive(3, 2, 1000).unwrap();
        assert_eq!(c.pairs, 81);
        assert_eq!(c.disagreements, 0);
    }
}
