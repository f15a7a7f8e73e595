//! Monte Carlo threshold scans for monotone functions of iid-p bits.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::randmodel::{agreement_tail, sample_instance, SampleModel};
use crate::recovery::{self, max_agreement, Instance};
use crate::rng::{SeedSpec, SplitMix64};
use crate::rscode::{RsCode, ENUMERATION_LIMIT};
use crate::stats::{isotonic, wilson, Z95};

pub type Oracle = Arc<dyn Fn(&[bool]) -> bool + Send + Sync>;

pub const MIN_TRIALS: u64 = 100;

#[derive(Clone)]
pub enum MonotoneFunctionSpec {
    /// Does S contain the graph of some polynomial of degree <= degree?
    /// Bit `i*q + z` is the point (x_i, z) in canonical order.
    Ap { field: Field, degree: usize },
    /// OR of `l` ANDs over disjoint blocks of `b` bits.
    Tribes { b: usize, l: usize },
    External { width: usize, oracle: Oracle },
}

impl fmt::Debug for MonotoneFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ap { field, degree } => write!(f, "Ap(GF({}), d={degree})", field.q()),
            Self::Tribes { b, l } => write!(f, "Tribes(b={b}, l={l})"),
            Self::External { width, .. } => write!(f, "External(width={width})"),
        }
    }
}

impl MonotoneFunctionSpec {
    pub fn ap(field: &Field, degree: usize) -> Result<Self> {
        RsCode::full(field, degree)?;
        Ok(Self::Ap {
            field: field.clone(),
            degree,
        })
    }

    pub fn tribes(b: usize, l: usize) -> Result<Self> {
        if b == 0 || l == 0 {
            return Err(Error::ParameterOutOfRange(format!("tribes needs b, l >= 1, got b={b} l={l}")));
        }
        Ok(Self::Tribes { b, l })
    }

    pub fn width(&self) -> usize {
        match self {
            Self::Ap { field, .. } => (field.q() as usize).pow(2),
            Self::Tribes { b, l } => b * l,
            Self::External { width, .. } => *width,
        }
    }

    pub fn eval_bits(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.width() {
            return Err(Error::WrongWidth {
                expected: self.width(),
                got: bits.len(),
            });
        }
        match self {
            Self::Ap { field, degree } => {
                let q = field.q() as usize;
                let lists: Vec<Vec<FieldElem>> = bits
                    .chunks(q)
                    .map(|row| (0..q).filter(|&z| row[z]).map(|z| FieldElem(z as u32)).collect())
                    .collect();
                let inst = Instance::from_lists(field, &lists)?;
                recovery::decide(&RsCode::full(field, *degree)?, &inst)
            }
            Self::Tribes { b, .. } => Ok(bits.chunks(*b).any(|blk| blk.iter().all(|&x| x))),
            Self::External { oracle, .. } => Ok(oracle(bits)),
        }
    }

    /// One evaluation on an iid-p input drawn from `seed`.
    pub fn sample(&self, code: Option<&RsCode>, p: f64, seed: SeedSpec) -> Result<bool> {
        match self {
            Self::Ap { field, .. } => {
                let code = code.expect("AP sampling needs its code");
                let inst = sample_instance(field, field.q() as usize, SampleModel::Iid { p }, seed)?;
                recovery::decide(code, &inst)
            }
            Self::Tribes { b, l } => {
                let mut rng = seed.stream();
                let mut hit = false;
                for _ in 0..*l {
                    let mut all = true;
                    for _ in 0..*b {
                        all &= rng.bernoulli(p);
                    }
                    hit |= all;
                }
                Ok(hit)
            }
            Self::External { width, oracle } => {
                let mut rng = seed.stream();
                let bits: Vec<bool> = (0..*width).map(|_| rng.bernoulli(p)).collect();
                Ok(oracle(&bits))
            }
        }
    }

    fn code(&self) -> Result<Option<RsCode>> {
        match self {
            Self::Ap { field, degree } => Ok(Some(RsCode::full(field, *degree)?)),
            _ => Ok(None),
        }
    }

    /// Random upward perturbations: f(x) <= f(x with one 0 raised to 1).
    pub fn spot_check_monotone(&self, samples: usize, seed: u64) -> Result<bool> {
        let w = self.width();
        let mut rng = SplitMix64::new(seed);
        for _ in 0..samples {
            let density = rng.next_f64();
            let mut bits: Vec<bool> = (0..w).map(|_| rng.bernoulli(density)).collect();
            let zeros: Vec<usize> = (0..w).filter(|&i| !bits[i]).collect();
            if zeros.is_empty() {
                continue;
            }
            let before = self.eval_bits(&bits)?;
            bits[zeros[rng.below(zeros.len() as u64) as usize]] = true;
            if before && !self.eval_bits(&bits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-point estimates of F(p) = P(f = 1) under iid-p bits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub grid: Vec<f64>,
    pub successes: Vec<u64>,
    pub fhat: Vec<f64>,
    pub ci_lo: Vec<f64>,
    pub ci_hi: Vec<f64>,
    /// Pool-adjacent-violators fit of `fhat`.
    pub smoothed: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub crossing: Option<f64>,
    /// Where the upper and lower Wilson curves cross 1/2.
    pub crossing_ci: (Option<f64>, Option<f64>),
    /// Some earlier point sits strictly above a later one, CIs disjoint.
    pub isotone_violation: bool,
}

impl ScanResult {
    pub fn sigma(&self, j: usize, reference: f64) -> f64 {
        let f = self.fhat[j];
        let v = (f * (1.0 - f)).max(reference * (1.0 - reference));
        (v / self.trials as f64).sqrt()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if let Some(bad) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidGrid(format!("{bad} is not a probability")));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidGrid("grid must be sorted".into()));
    }
    Ok(())
}

/// First p at which the piecewise-linear curve through (grid, values)
/// reaches `level`, interpolating inside the lowest bracket.
pub fn level_crossing(grid: &[f64], values: &[f64], level: f64) -> Option<f64> {
    if values.first().is_some_and(|&v| v == level) {
        return Some(grid[0]);
    }
    (1..grid.len()).find_map(|j| {
        let (a, b) = (values[j - 1], values[j]);
        if a < level && b >= level {
            Some(grid[j - 1] + (level - a) / (b - a) * (grid[j] - grid[j - 1]))
        } else {
            None
        }
    })
}

/// Estimate F on `grid`. Point j uses sub-seed `derive(seed, j)` and trial t
/// of that point the stream `(sub-seed, t)`, so results do not depend on the
/// worker count.
pub fn scan(spec: &MonotoneFunctionSpec, grid: &[f64], trials: u64, seed: u64) -> Result<ScanResult> {
    check_grid(grid)?;
    if trials < MIN_TRIALS {
        return Err(Error::ParameterOutOfRange(format!("scan needs at least {MIN_TRIALS} trials, got {trials}")));
    }
    let code = spec.code()?;
    let outcomes: Vec<bool> = (0..grid.len() as u64 * trials)
        .into_par_iter()
        .map(|k| {
            let j = k / trials;
            let t = k % trials;
            let seed = SeedSpec::new(SeedSpec::derive(seed, j), t);
            spec.sample(code.as_ref(), grid[j as usize], seed)
        })
        .collect::<Result<_>>()?;
    let successes: Vec<u64> = outcomes
        .chunks(trials as usize)
        .map(|c| c.iter().filter(|&&x| x).count() as u64)
        .collect();
    Ok(summarize(grid, successes, trials, seed))
}

pub fn summarize(grid: &[f64], successes: Vec<u64>, trials: u64, seed: u64) -> ScanResult {
    let fhat: Vec<f64> = successes.iter().map(|&s| s as f64 / trials as f64).collect();
    let (ci_lo, ci_hi): (Vec<f64>, Vec<f64>) = successes.iter().map(|&s| wilson(s, trials, Z95)).unzip();
    let weights = vec![trials as f64; grid.len()];
    let smoothed = isotonic(&fhat, &weights);
    let crossing = level_crossing(grid, &smoothed, 0.5);
    let crossing_ci = (
        level_crossing(grid, &isotonic(&ci_hi, &weights), 0.5),
        level_crossing(grid, &isotonic(&ci_lo, &weights), 0.5),
    );
    let isotone_violation = (0..grid.len()).any(|i| (i + 1..grid.len()).any(|j| ci_lo[i] > ci_hi[j]));
    ScanResult {
        grid: grid.to_vec(),
        successes,
        fhat,
        ci_lo,
        ci_hi,
        smoothed,
        trials,
        seed,
        crossing,
        crossing_ci,
        isotone_violation,
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && lo <= hi && n >= 1) {
        return Err(Error::InvalidGrid(format!("log grid needs 0 < lo <= hi and n >= 1, got {lo}:{hi}:{n}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect())
}

pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo <= hi && n >= 1) {
        return Err(Error::InvalidGrid(format!("linear grid needs lo <= hi and n >= 1, got {lo}:{hi}:{n}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

/// 21 log-spaced points over [q^{-r}/4, 4 q^{-r}], r = d/q, capped at 1.
pub fn default_ap_grid(q: u32, d: usize) -> Vec<f64> {
    let center = (q as f64).powf(-(d as f64) / q as f64);
    let mut g = log_grid(center / 4.0, 4.0 * center, 21).expect("valid bounds");
    for p in &mut g {
        *p = p.min(1.0);
    }
    g.dedup();
    g
}

/// 1 - (1 - p^b)^l.
pub fn tribes_analytic(b: usize, l: usize, p: f64) -> f64 {
    -(l as f64 * (-p.powi(b as i32)).ln_1p()).exp_m1()
}

/// The p at which the tribes function is 1/2: (1 - 2^{-1/l})^{1/b}.
pub fn tribes_crossing(b: usize, l: usize) -> f64 {
    (1.0 - 2f64.powf(-1.0 / l as f64)).powf(1.0 / b as f64)
}

/// η = B ln(1/ε) ln(1/p_crit) / ln n.
pub fn fk_eta(p_crit: f64, eps: f64, n: f64, b: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::ParameterOutOfRange(format!("epsilon {eps} outside (0, 1/4)")));
    }
    if !(p_crit > 0.0 && p_crit <= 0.5) {
        return Err(Error::ParameterOutOfRange(format!("p_crit {p_crit} outside (0, 1/2]")));
    }
    if n < 2.0 {
        return Err(Error::ParameterOutOfRange(format!("n = {n} < 2")));
    }
    Ok(b * (1.0 / eps).ln() * (1.0 / p_crit).ln() / n.ln())
}

/// The constant B that would make η match the measured [ε, 1-ε] band.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FkFit {
    pub p_crit: f64,
    pub p_lo: f64,
    pub p_hi: f64,
    pub eta_measured: f64,
    pub eta_unit: f64,
    pub b_fitted: f64,
}

pub fn fit_fk(scan: &ScanResult, n: f64, eps: f64) -> Result<Option<FkFit>> {
    let (Some(p_crit), Some(p_lo), Some(p_hi)) = (
        scan.crossing,
        level_crossing(&scan.grid, &scan.smoothed, eps),
        level_crossing(&scan.grid, &scan.smoothed, 1.0 - eps),
    ) else {
        return Ok(None);
    };
    let eta_unit = fk_eta(p_crit, eps, n, 1.0)?;
    let eta_measured = (1.0 - p_lo / p_crit).max(p_hi / p_crit - 1.0);
    Ok(Some(FkFit {
        p_crit,
        p_lo,
        p_hi,
        eta_measured,
        eta_unit,
        b_fitted: eta_measured / eta_unit,
    }))
}

/// Max agreement of RS[q,d] with an iid-p set, over many trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementReport {
    pub q: u32,
    pub d: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// histogram[a] = number of trials with max agreement a.
    pub histogram: Vec<u64>,
    /// Smallest a whose union-bound tail is below 0.01.
    pub union_point: Option<usize>,
    /// d log_{1/p} q.
    pub formula_point: Option<f64>,
    /// ceil(q / ln(1/p)).
    pub slack: Option<u64>,
    pub median: usize,
    pub frac_at_or_below_union: f64,
    /// Spread between the 5th and 95th percentile of max agreement.
    pub width_90: usize,
}

pub fn agreement_experiment(field: &Field, d: usize, p: f64, trials: u64, seed: u64) -> Result<AgreementReport> {
    let code = RsCode::full(field, d)?;
    if code.size() > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            size: code.size(),
            limit: ENUMERATION_LIMIT,
        });
    }
    if trials == 0 {
        return Err(Error::ParameterOutOfRange("agreement experiment needs trials >= 1".into()));
    }
    let q = field.q();
    let maxima: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst = sample_instance(field, q as usize, SampleModel::Iid { p }, SeedSpec::new(seed, t))?;
            Ok(max_agreement(&code, &inst)?.max)
        })
        .collect::<Result<_>>()?;
    let mut histogram = vec![0u64; q as usize + 1];
    for &m in &maxima {
        histogram[m] += 1;
    }
    let mut union_point = None;
    for a in 0..=q as u64 {
        if agreement_tail(q as u64, d as u64, p, a)? < 0.01 {
            union_point = Some(a as usize);
            break;
        }
    }
    let inv = -p.ln();
    let (formula_point, slack) = if p > 0.0 && p < 1.0 {
        (Some(d as f64 * (q as f64).ln() / inv), Some((q as f64 / inv).ceil() as u64))
    } else if p == 0.0 {
        (Some(0.0), Some(0))
    } else {
        (None, None)
    };
    let quantile = |f: f64| -> usize {
        let target = (f * trials as f64).ceil().max(1.0) as u64;
        let mut acc = 0;
        for (a, &c) in histogram.iter().enumerate() {
            acc += c;
            if acc >= target {
                return a;
            }
        }
        q as usize
    };
    let below = match union_point {
        Some(u) => maxima.iter().filter(|&&m| m <= u).count(),
        None => maxima.len(),
    };
    Ok(AgreementReport {
        q,
        d,
        p,
        trials,
        seed,
        median: quantile(0.5),
        width_90: quantile(0.95) - quantile(0.05),
        histogram,
        union_point,
        formula_point,
        slack,
        frac_at_or_below_union: below as f64 / trials as f64,
    })
}
