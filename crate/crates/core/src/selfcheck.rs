//! Desk-scale invariant suite with a per-module pass/fail table.
//!
//! Output depends only on the options: every random quantity comes from a
//! derived seed, and no timings are printed.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::coincnf::{measure_bias, plan_cnf};
use crate::error::Result;
use crate::experiments::{agreement_experiment, linear_grid, scan, tribes_crossing, MonotoneFunctionSpec};
use crate::fourier::{expected_r_squared_exact, FourierContext};
use crate::gf::{Field, FieldElem};
use crate::randmodel::{
    expected_count, markov_upper, pz_lower, sample_counts, sample_decisions, sample_instance, second_moment_exact,
    SampleModel,
};
use crate::recovery::{self, Anchor};
use crate::rng::{SeedSpec, SplitMix64};
use crate::rscode::{
    dual_code, orthogonal_exhaustive, weight_distribution_brute, weight_distribution_exact, RsCode,
};
use crate::stats::{mean_stderr, sig};

pub const DEFAULT_SEED: u64 = 0xA5EED;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Perturb the closed-form weight distribution before comparing.
    Wtdist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfcheckOptions {
    pub fast: bool,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for SelfcheckOptions {
    fn default() -> Self {
        SelfcheckOptions {
            fast: false,
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub module: &'static str,
    pub check: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub options: SelfcheckOptions,
    pub rows: Vec<CheckRow>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mode = if self.options.fast { "fast" } else { "full" };
        writeln!(out, "selfcheck seed={:#x} mode={mode}", self.options.seed).unwrap();
        if let Some(f) = self.options.fault {
            writeln!(out, "injected fault: {f:?}").unwrap();
        }
        writeln!(out, "{:<12} {:<28} {:<6} detail", "module", "check", "result").unwrap();
        for r in &self.rows {
            let res = if r.pass { "pass" } else { "FAIL" };
            writeln!(out, "{:<12} {:<28} {:<6} {}", r.module, r.check, res, r.detail).unwrap();
        }
        let ok = self.rows.iter().filter(|r| r.pass).count();
        writeln!(out, "summary: {ok}/{} passed", self.rows.len()).unwrap();
        out
    }
}

type Check = fn(&SelfcheckOptions, u64) -> Result<(bool, String)>;

const CHECKS: &[(&str, &str, Check)] = &[
    ("gf", "field axioms", gf_axioms),
    ("rscode", "wtdist formula vs brute", wtdist),
    ("rscode", "dual orthogonality", dual),
    ("recovery", "search vs enumeration", recovery_oracle),
    ("randmodel", "mean count vs E[X]", mean_count),
    ("randmodel", "markov / paley-zygmund", bounds),
    ("fourier", "count identity", fourier_identity),
    ("fourier", "E|R|^2 identity", r_squared),
    ("experiments", "tribes crossing", tribes),
    ("experiments", "AP threshold GF(16) d=8", ap_threshold),
    ("experiments", "agreement union bound", agreement),
    ("coincnf", "plans and bias gap", coin),
];

pub fn run(options: SelfcheckOptions) -> SelfcheckReport {
    let rows = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &(module, check, f))| {
            let (pass, detail) = match f(&options, SeedSpec::derive(options.seed, i as u64)) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckRow {
                module,
                check,
                pass,
                detail,
            }
        })
        .collect();
    SelfcheckReport { options, rows }
}

fn gf_axioms(o: &SelfcheckOptions, _seed: u64) -> Result<(bool, String)> {
    let specs: &[(u32, u32)] = if o.fast {
        &[(2, 2), (2, 3), (3, 2), (5, 1)]
    } else {
        &[(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)]
    };
    let mut ok = true;
    for &(p, k) in specs {
        let f = Field::gf(p, k)?;
        let els: Vec<FieldElem> = f.elements().collect();
        for &a in &els {
            if !a.is_zero() && f.mul(a, f.inv(a)?) != FieldElem::ONE {
                ok = false;
            }
            ok &= f.add(a, f.neg(a)).is_zero();
            for &b in &els {
                ok &= f.mul(a, b) == f.mul(b, a);
                for &c in &els {
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                }
            }
        }
    }
    Ok((ok, format!("{} fields exhaustive", specs.len())))
}

fn wtdist(o: &SelfcheckOptions, _seed: u64) -> Result<(bool, String)> {
    let limit = if o.fast { 1e4 } else { 1e6 };
    let mut cases = 0;
    let mut bad = Vec::new();
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
        let f = Field::gf(p, k)?;
        for d in 0..=3usize.min(f.q() as usize - 1) {
            let code = RsCode::full(&f, d)?;
            if code.size() > limit {
                continue;
            }
            let mut exact = weight_distribution_exact(&code)?;
            if o.fault == Some(Fault::Wtdist) {
                exact.corrupt(f.q() as usize);
            }
            cases += 1;
            if exact != weight_distribution_brute(&code)? {
                bad.push(format!("q={} d={d}", f.q()));
            }
        }
    }
    let rs51 = weight_distribution_exact(&RsCode::full(&Field::gf(5, 1)?, 1)?)?;
    let pinned = [(0, 1u32), (4, 20), (5, 4)].iter().all(|&(w, c)| rs51.count(w) == BigUint::from(c))
        && rs51.iter().count() == 3;
    let detail = if bad.is_empty() {
        format!("{cases} (q,d) pairs exact; RS[5,1]={{0:1,4:20,5:4}}")
    } else {
        format!("mismatch at {}", bad.join(", "))
    };
    Ok((bad.is_empty() && pinned, detail))
}

fn dual(_o: &SelfcheckOptions, _seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut cases = 0;
    for (p, k) in [(3, 1), (2, 2), (5, 1), (7, 1)] {
        let f = Field::gf(p, k)?;
        for d in 0..=3usize.min(f.q() as usize - 1) {
            let code = RsCode::full(&f, d)?;
            let dual = dual_code(&code)?;
            ok &= orthogonal_exhaustive(&code.to_linear(), &dual.to_linear())?;
            ok &= code.dimension() + dual.dimension() == f.q() as usize;
            cases += 1;
        }
    }
    // the degree q-d-1 is one too large: not orthogonal at q=3, d=1
    let f3 = Field::gf(3, 1)?;
    let code = RsCode::full(&f3, 1)?;
    let printed = RsCode::full(&f3, 3 - 1 - 1)?;
    let printed_fails = !orthogonal_exhaustive(&code.to_linear(), &printed.to_linear())?;
    Ok((
        ok && printed_fails,
        format!("{cases} duals RS[q,q-d-2] verified; degree q-d-1 fails at q=3 d=1: {printed_fails}"),
    ))
}

fn recovery_oracle(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let per = if o.fast { 5 } else { 40 };
    let limit = if o.fast { 1e4 } else { 1e6 };
    let mut rng = SplitMix64::new(seed);
    let mut total = 0;
    let mut ok = true;
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
        let f = Field::gf(p, k)?;
        for d in 0..=3usize.min(f.q() as usize - 1) {
            let code = RsCode::full(&f, d)?;
            if code.size() > limit {
                continue;
            }
            for _ in 0..per {
                let prob = 0.3 + 0.6 * rng.next_f64();
                let inst = sample_instance(&f, f.q() as usize, SampleModel::Iid { p: prob }, SeedSpec::new(seed, total))?;
                let fast = recovery::count(&code, &inst, 0)?.count;
                let slow = recovery::count_exhaustive(&code, &inst, 0)?.count;
                ok &= fast == slow;
                ok &= recovery::decide(&code, &inst)? == (slow > 0);
                ok &= recovery::count_with(&code, &inst, 0, Anchor::FixedPrefix)?.count == slow;
                total += 1;
            }
        }
    }
    Ok((ok, format!("{total} random instances, counts identical")))
}

fn mean_count(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 4_000 } else { 20_000 };
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (i, &(p, k, d, prob)) in [(5u32, 1u32, 1usize, 0.5), (7, 1, 2, 0.6), (2, 2, 1, 0.5)].iter().enumerate() {
        let f = Field::gf(p, k)?;
        let code = RsCode::full(&f, d)?;
        let q = f.q() as u64;
        let counts = sample_counts(&code, SampleModel::Iid { p: prob }, trials, SeedSpec::derive(seed, i as u64))?;
        let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let (mean, _) = mean_stderr(&xs);
        let ex = expected_count(q, d as u64, prob);
        let var = second_moment_exact(q, d as u64, prob)? - ex * ex;
        let se = (var / trials as f64).sqrt();
        let z = (mean - ex).abs() / se;
        worst = worst.max(z);
        ok &= z <= 4.0;
    }
    Ok((ok, format!("max |mean - E[X]| / stderr = {}", sig(worst, 3))))
}

fn bounds(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 1_000 } else { 5_000 };
    let mut ok = true;
    let mut points = 0;
    for (i, &(p, k, d)) in [(5u32, 1u32, 1usize), (7, 1, 2), (2, 3, 2)].iter().enumerate() {
        let f = Field::gf(p, k)?;
        let code = RsCode::full(&f, d)?;
        let q = f.q() as u64;
        for (j, prob) in [0.2, 0.4, 0.6, 0.8].into_iter().enumerate() {
            let s = SeedSpec::derive(seed, (i * 16 + j) as u64);
            let hits = sample_decisions(&code, SampleModel::Iid { p: prob }, trials, s)?
                .iter()
                .filter(|&&x| x)
                .count();
            let fhat = hits as f64 / trials as f64;
            let up = markov_upper(q, d as u64, prob);
            let lo = pz_lower(q, d as u64, prob)?;
            let sigma = |b: f64| ((fhat * (1.0 - fhat)).max(b * (1.0 - b)) / trials as f64).sqrt();
            ok &= fhat <= up + 3.0 * sigma(up);
            ok &= fhat >= lo - 3.0 * sigma(lo);
            points += 1;
        }
    }
    Ok((ok, format!("{points} grid points within 3 sigma")))
}

fn fourier_identity(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let per = if o.fast { 10 } else { 50 };
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (i, &(p, d)) in [(5u32, 2usize), (7, 4)].iter().enumerate() {
        let f = Field::gf(p, 1)?;
        let code = RsCode::full(&f, d)?;
        let ctx = FourierContext::new(&code)?;
        for t in 0..per {
            let inst = sample_instance(&f, p as usize, SampleModel::Iid { p: 0.6 }, SeedSpec::new(SeedSpec::derive(seed, i as u64), t))?;
            let direct = recovery::count(&code, &inst, 0)?.count as f64;
            let err = (ctx.decompose(&inst)?.count - direct).abs();
            worst = worst.max(err / code.size());
            ok &= err <= 1e-6 * code.size();
        }
    }
    Ok((ok, format!("max |fourier - count| / |C| = {:.1e}", worst)))
}

fn r_squared(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 5_000 } else { 40_000 };
    let f = Field::gf(3, 1)?;
    let code = RsCode::full(&f, 1)?;
    let ctx = FourierContext::new(&code)?;
    let p = 1.0 / 3.0;
    let exact = expected_r_squared_exact(&code, p)?;
    let xs: Vec<f64> = (0..trials)
        .map(|t| {
            let inst = sample_instance(&f, 3, SampleModel::Iid { p }, SeedSpec::new(seed, t))?;
            Ok(ctx.decompose(&inst)?.r.norm_sqr())
        })
        .collect::<Result<_>>()?;
    let (mean, se) = mean_stderr(&xs);
    let pinned = (exact - 16.0 / 19683.0).abs() < 1e-15;
    Ok((
        pinned && (mean - exact).abs() <= 4.0 * se,
        format!("exact {} empirical {} stderr {}", sig(exact, 6), sig(mean, 6), sig(se, 3)),
    ))
}

fn tribes(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 1_000 } else { 4_000 };
    let spec = MonotoneFunctionSpec::tribes(2, 8)?;
    let r = scan(&spec, &linear_grid(0.2, 0.4, 21)?, trials, seed)?;
    let truth = tribes_crossing(2, 8);
    let Some(c) = r.crossing else {
        return Ok((false, "no crossing in grid".into()));
    };
    Ok((
        (c - truth).abs() <= 0.02 && !r.isotone_violation,
        format!("crossing {} vs {}", sig(c, 5), sig(truth, 5)),
    ))
}

fn ap_threshold(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 100 } else { 400 };
    let f = Field::gf(2, 4)?;
    let spec = MonotoneFunctionSpec::ap(&f, 8)?;
    let r = scan(&spec, &[0.125, 0.25, 0.5], trials, seed)?;
    Ok((
        r.fhat[0] <= 0.1 && r.fhat[2] >= 0.9 && !r.isotone_violation,
        format!("fhat = {} / {} / {}", sig(r.fhat[0], 4), sig(r.fhat[1], 4), sig(r.fhat[2], 4)),
    ))
}

fn agreement(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 50 } else { 300 };
    let f = Field::gf(2, 4)?;
    let r = agreement_experiment(&f, 2, 0.25, trials, seed)?;
    let u = r.union_point.unwrap_or(f.q() as usize);
    Ok((
        r.frac_at_or_below_union >= 0.99 && r.median <= u,
        format!("median {} union point {u} width90 {}", r.median, r.width_90),
    ))
}

fn coin(o: &SelfcheckOptions, seed: u64) -> Result<(bool, String)> {
    let trials = if o.fast { 20_000 } else { 200_000 };
    let quarter = plan_cnf(0.25, 2)?;
    let mut ok = quarter.fair_probability == 0.25;
    let mut rng = SplitMix64::new(seed);
    for _ in 0..200 {
        let p = 2f64.powf(-8.0 * rng.next_f64()).min(0.999);
        let plan = plan_cnf(p, 8)?;
        ok &= plan.sandwich_holds();
        ok &= plan.k[0] == (1.0 / p).log2().floor() as u64;
        ok &= plan.k[1..].iter().all(|&k| k <= 3);
    }
    let plan = plan_cnf(1.0 / 16.0, 8)?;
    let up = measure_bias(&plan, 0.55, trials, SeedSpec::derive(seed, 1))?;
    let down = measure_bias(&plan, 0.45, trials, SeedSpec::derive(seed, 2))?;
    ok &= up.ci_lo > down.ci_hi;
    Ok((
        ok,
        format!("p=1/16: {} at 0.55 vs {} at 0.45", sig(up.estimate, 4), sig(down.estimate, 4)),
    ))
}
