//! Random list-recovery instances and closed-form predictors for the number
//! X of contained codewords.
//!
//! All predictors work in natural-log space and are clipped to `[0, 1]`
//! only when they are probabilities.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::recovery::{self, Instance};
use crate::rng::SeedSpec;
use crate::rscode::{weight_distribution_exact, RsCode};
use crate::stats::{ln_biguint, ln_binom, ln_sum_exp};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleModel {
    /// Every (position, element) membership bit is set independently.
    Iid { p: f64 },
    /// Every list is a uniform t-subset of F_q.
    FixedSize { t: usize },
}

impl SampleModel {
    pub fn validate(&self, q: u32) -> Result<()> {
        match *self {
            SampleModel::Iid { p } if !(0.0..=1.0).contains(&p) => Err(Error::InvalidProbability(p)),
            SampleModel::FixedSize { t } if t > q as usize => Err(Error::SizeExceedsField { t, q }),
            _ => Ok(()),
        }
    }
}

/// Draw an instance on the first `n` positions of the canonical order.
///
/// Iid lists consume one uniform per (position, element) pair in position-major
/// canonical order. Fixed-size lists run a partial Fisher-Yates shuffle of the
/// canonical order per position and keep its first t entries.
pub fn sample_instance(field: &Field, n: usize, model: SampleModel, seed: SeedSpec) -> Result<Instance> {
    model.validate(field.q())?;
    let q = field.q();
    let positions: Vec<FieldElem> = field.elements().take(n).collect();
    if positions.len() != n {
        return Err(Error::InvalidPositions(format!("{n} positions exceed field order {q}")));
    }
    let mut inst = Instance::empty(field, positions)?;
    let mut rng = seed.stream();
    match model {
        SampleModel::Iid { p } => {
            for i in 0..n {
                for z in 0..q {
                    if rng.bernoulli(p) {
                        inst.insert(i, FieldElem(z));
                    }
                }
            }
        }
        SampleModel::FixedSize { t } => {
            let mut perm: Vec<u32> = (0..q).collect();
            for i in 0..n {
                for (j, e) in perm.iter_mut().enumerate() {
                    *e = j as u32;
                }
                for j in 0..t {
                    let r = j + rng.below((q as usize - j) as u64) as usize;
                    perm.swap(j, r);
                }
                for &z in &perm[..t] {
                    inst.insert(i, FieldElem(z));
                }
            }
        }
    }
    Ok(inst)
}

/// Count X for `trials` independent full-length instances, in trial order.
pub fn sample_counts(code: &RsCode, model: SampleModel, trials: u64, master: u64) -> Result<Vec<u64>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst = sample_instance(code.field(), code.n(), model, SeedSpec::new(master, t))?;
            Ok(recovery::count(code, &inst, 0)?.count)
        })
        .collect()
}

/// Decide for `trials` independent full-length instances, in trial order.
pub fn sample_decisions(code: &RsCode, model: SampleModel, trials: u64, master: u64) -> Result<Vec<bool>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst = sample_instance(code.field(), code.n(), model, SeedSpec::new(master, t))?;
            recovery::decide(code, &inst)
        })
        .collect()
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// ln E[X] = (d+1) ln q + q ln p for the full-length code.
pub fn ln_expected_count(q: u64, d: u64, p: f64) -> f64 {
    (d + 1) as f64 * (q as f64).ln() + q as f64 * p.ln()
}

/// E[X] = q^{d+1} p^q.
pub fn expected_count(q: u64, d: u64, p: f64) -> f64 {
    ln_expected_count(q, d, p).exp()
}

/// P(X > 0) <= min(1, E[X]).
pub fn markov_upper(q: u64, d: u64, p: f64) -> f64 {
    expected_count(q, d, p).min(1.0)
}

/// ln of E[X] + e^{1/p} E[X]^2.
pub fn ln_second_moment_upper(q: u64, d: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 0.0 {
        return Err(Error::ZeroProbability);
    }
    let le = ln_expected_count(q, d, p);
    Ok(ln_sum_exp([le, 1.0 / p + 2.0 * le]))
}

/// Upper bound E[X^2] <= E[X] + e^{1/p} E[X]^2.
pub fn second_moment_upper(q: u64, d: u64, p: f64) -> Result<f64> {
    Ok(ln_second_moment_upper(q, d, p)?.exp())
}

/// ln E[X^2] from the exact weight distribution:
/// E[X^2] = |C| sum_w W_w p^{q+w}, since codewords u, v agree on q - wt(u-v)
/// positions and so jointly need 2q - (q - wt) = q + wt points.
pub fn ln_second_moment_exact(q: u64, d: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    let field_free = ln_weight_terms(q, d)?;
    let ln_c = (d + 1) as f64 * (q as f64).ln();
    let lp = p.ln();
    Ok(ln_c + ln_sum_exp(field_free.iter().map(|&(w, lw)| lw + (q + w as u64) as f64 * lp)))
}

pub fn second_moment_exact(q: u64, d: u64, p: f64) -> Result<f64> {
    Ok(ln_second_moment_exact(q, d, p)?.exp())
}

/// (weight, ln W_w) for the full-length RS[q,d], from the closed form.
fn ln_weight_terms(q: u64, d: u64) -> Result<Vec<(usize, f64)>> {
    let counts = closed_form_weights(q, d);
    Ok(counts.iter().map(|(w, c)| (*w, ln_biguint(c))).collect())
}

fn closed_form_weights(q: u64, d: u64) -> Vec<(usize, BigUint)> {
    // The formula only needs q, so avoid building a field for large q.
    use crate::rscode::mds_weight_count;
    std::iter::once((0usize, BigUint::from(1u32)))
        .chain((0..=d.min(q - 1)).map(|i| ((q - i) as usize, mds_weight_count(q, q, d, i))))
        .filter(|(_, c)| c.bits() > 0)
        .collect()
}

/// E[X]^2 / E[X^2] with the exact second moment; 0 when E[X] = 0.
pub fn pz_lower(q: u64, d: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let le = ln_expected_count(q, d, p);
    Ok((2.0 * le - ln_second_moment_exact(q, d, p)?).exp().min(1.0))
}

/// Paley-Zygmund with the e^{1/p} second-moment bound in the denominator.
pub fn pz_lower_crude(q: u64, d: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let le = ln_expected_count(q, d, p);
    Ok((2.0 * le - ln_second_moment_upper(q, d, p)?).exp().min(1.0))
}

/// Union bound on P(max agreement >= a):
/// sum_{a' >= a} C(q, q - a') q^{d+1} p^{a'}, clipped to 1.
pub fn agreement_tail(q: u64, d: u64, p: f64, a: u64) -> Result<f64> {
    check_p(p)?;
    if a > q {
        return Err(Error::ParameterOutOfRange(format!("agreement {a} exceeds q = {q}")));
    }
    if a == 0 {
        return Ok(1.0);
    }
    let ln_c = (d + 1) as f64 * (q as f64).ln();
    let lp = p.ln();
    let ln_tail = ln_sum_exp((a..=q).map(|ap| ln_binom(q, q - ap) + ln_c + ap as f64 * lp));
    Ok(ln_tail.exp().min(1.0))
}

/// Multiplicative Chernoff form e^{-eps^2 mu / 2} for P(|X - mu| >= eps mu),
/// X ~ Bin(n, p). This is the lower-tail exponent; the upper tail decays like
/// e^{-eps^2 mu / (2 + eps)}, so for eps near 1 and very large mu the value
/// is optimistic on that side.
pub fn chernoff_tail(n: u64, p: f64, eps: f64) -> Result<f64> {
    check_p(p)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::EpsilonOutOfRange(eps));
    }
    let mu = n as f64 * p;
    if mu == 0.0 {
        return Ok(1.0);
    }
    Ok((-eps * eps * mu / 2.0).exp().min(1.0))
}

/// Closed-form predictor table for one (q, d, p).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub q: u64,
    pub d: u64,
    pub p: f64,
    pub expected_count: f64,
    pub expected_count_ln: f64,
    pub markov_upper: f64,
    pub second_moment_exact: f64,
    pub second_moment_exact_ln: f64,
    pub second_moment_upper: Option<f64>,
    pub second_moment_upper_ln: Option<f64>,
    pub pz_lower: f64,
    pub pz_lower_crude: f64,
    pub agreement: Option<u64>,
    pub agreement_tail: Option<f64>,
}

pub fn predict(q: u64, d: u64, p: f64, agreement: Option<u64>) -> Result<Prediction> {
    check_p(p)?;
    if d >= q {
        return Err(Error::InvalidDegree {
            degree: d as i64,
            n: q as usize,
        });
    }
    let upper_ln = ln_second_moment_upper(q, d, p).ok();
    let exact_ln = ln_second_moment_exact(q, d, p)?;
    Ok(Prediction {
        q,
        d,
        p,
        expected_count: expected_count(q, d, p),
        expected_count_ln: ln_expected_count(q, d, p),
        markov_upper: markov_upper(q, d, p),
        second_moment_exact: exact_ln.exp(),
        second_moment_exact_ln: exact_ln,
        second_moment_upper: upper_ln.map(f64::exp),
        second_moment_upper_ln: upper_ln,
        pz_lower: pz_lower(q, d, p)?,
        pz_lower_crude: pz_lower_crude(q, d, p)?,
        agreement,
        agreement_tail: agreement.map(|a| agreement_tail(q, d, p, a)).transpose()?,
    })
}

/// Sanity hook: the closed-form weights used here agree with the rscode module.
pub fn closed_form_matches_rscode(field: &Field, d: usize) -> Result<bool> {
    let code = RsCode::full(field, d)?;
    let wd = weight_distribution_exact(&code)?;
    let mine = closed_form_weights(field.q() as u64, d as u64);
    Ok(mine.iter().all(|(w, c)| &wd.count(*w) == c) && wd.iter().count() == mine.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::mean_stderr;

    #[test]
    fn degenerate_probabilities() {
        let f = Field::gf(5, 1).unwrap();
        let empty = sample_instance(&f, 5, SampleModel::Iid { p: 0.0 }, SeedSpec::new(1, 0)).unwrap();
        assert_eq!(empty.total_points(), 0);
        let full = sample_instance(&f, 5, SampleModel::Iid { p: 1.0 }, SeedSpec::new(1, 0)).unwrap();
        assert_eq!(full.total_points(), 25);
        assert_eq!(
            sample_instance(&f, 5, SampleModel::Iid { p: 1.5 }, SeedSpec::new(1, 0)).unwrap_err(),
            Error::InvalidProbability(1.5)
        );
        assert_eq!(
            sample_instance(&f, 5, SampleModel::FixedSize { t: 6 }, SeedSpec::new(1, 0)).unwrap_err(),
            Error::SizeExceedsField { t: 6, q: 5 }
        );
    }

    #[test]
    fn fixed_size_lists_have_size_t() {
        let f = Field::gf(2, 4).unwrap();
        let inst = sample_instance(&f, 16, SampleModel::FixedSize { t: 5 }, SeedSpec::new(3, 9)).unwrap();
        assert!((0..16).all(|i| inst.list_len(i) == 5));
    }

    #[test]
    fn same_seed_same_instance() {
        let f = Field::gf(2, 4).unwrap();
        let m = SampleModel::Iid { p: 0.3 };
        let a = sample_instance(&f, 16, m, SeedSpec::new(11, 4)).unwrap();
        let b = sample_instance(&f, 16, m, SeedSpec::new(11, 4)).unwrap();
        let c = sample_instance(&f, 16, m, SeedSpec::new(11, 5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn mean_list_size_q16() {
        let f = Field::gf(2, 4).unwrap();
        let sizes: Vec<f64> = (0..10_000)
            .map(|t| {
                let inst = sample_instance(&f, 1, SampleModel::Iid { p: 0.25 }, SeedSpec::new(5, t)).unwrap();
                inst.list_len(0) as f64
            })
            .collect();
        let (mean, se) = mean_stderr(&sizes);
        // binomial mean 16 * 0.25 = 4
        assert!((mean - 4.0).abs() <= 3.0 * se, "mean {mean} se {se}");
    }

    #[test]
    fn expectation_examples() {
        assert!((expected_count(5, 1, 0.2) - 0.008).abs() < 1e-15);
        assert!((expected_count(5, 1, 1.0) - 25.0).abs() < 1e-12);
        // p = q^{-d/q} gives E[X] = q
        for (q, d) in [(16u64, 8u64), (13, 4), (7, 3)] {
            let p = (q as f64).powf(-(d as f64) / q as f64);
            assert!((expected_count(q, d, p) / q as f64 - 1.0).abs() < 1e-12);
            let eps = 0.3;
            let pe = p * (1.0 + eps);
            let want = q as f64 * (1.0 + eps).powi(q as i32);
            assert!((expected_count(q, d, pe) / want - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn markov_examples() {
        assert_eq!(markov_upper(16, 8, 0.5), 1.0);
        assert!((markov_upper(5, 1, 0.2) - 0.008).abs() < 1e-15);
        let (q, d) = (64u64, 16u64);
        let r = d as f64 / q as f64;
        for eps in [0.05, 0.2, 0.5] {
            let p = (q as f64).powf(-r) * (1.0 - eps);
            assert!(markov_upper(q, d, p) <= q as f64 * (-eps * q as f64).exp());
        }
    }

    #[test]
    fn second_moment_examples() {
        // p = 1: X = q^{d+1} deterministically
        let e2 = second_moment_exact(5, 1, 1.0).unwrap();
        assert!((e2 - 625.0).abs() < 1e-9);
        assert!(second_moment_upper(5, 1, 1.0).unwrap() >= 625.0);
        assert_eq!(second_moment_upper(5, 1, 0.0).unwrap_err(), Error::ZeroProbability);
        // q=5, d=1, p=0.5 by hand: W = {0:1, 4:20, 5:4}
        let p: f64 = 0.5;
        let hand = 25.0 * (p.powi(5) + 20.0 * p.powi(9) + 4.0 * p.powi(10));
        assert!((second_moment_exact(5, 1, p).unwrap() - hand).abs() < 1e-12);
        let ex = expected_count(5, 1, p);
        let bound = ex + (1.0 / p).exp() * ex * ex;
        assert!((second_moment_upper(5, 1, p).unwrap() - bound).abs() < 1e-12);
        assert!(hand <= bound);
    }

    #[test]
    fn pz_examples() {
        assert!((pz_lower(5, 1, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let v = pz_lower(5, 1, 0.6).unwrap();
        assert!(v > 0.0 && v <= 1.0);
        // with the e^{1/p} denominator the bound is >= 1/(2 e^{1/p}) once E[X] >= e^{-1/p}
        for (q, d, p) in [(16u64, 8u64, 0.5), (13, 6, 0.7), (9, 4, 0.6)] {
            assert!(expected_count(q, d, p) >= (-1.0 / p).exp());
            assert!(pz_lower_crude(q, d, p).unwrap() >= 0.5 * (-1.0 / p).exp());
            assert!(pz_lower(q, d, p).unwrap() >= pz_lower_crude(q, d, p).unwrap());
        }
    }

    #[test]
    fn agreement_tail_examples() {
        assert_eq!(agreement_tail(16, 2, 0.25, 0).unwrap(), 1.0);
        assert_eq!(agreement_tail(5, 1, 1.0, 5).unwrap(), 1.0);
        // direct sum at q=16, d=2, p=1/4, a=10
        let direct: f64 = (10..=16u64)
            .map(|a| ln_binom(16, 16 - a).exp() * 4096.0 * 0.25f64.powi(a as i32))
            .sum();
        assert!(direct > 1.0);
        assert_eq!(agreement_tail(16, 2, 0.25, 10).unwrap(), 1.0);
        let direct14: f64 = (14..=16u64)
            .map(|a| ln_binom(16, 16 - a).exp() * 4096.0 * 0.25f64.powi(a as i32))
            .sum();
        assert!((agreement_tail(16, 2, 0.25, 14).unwrap() - direct14).abs() < 1e-15);
    }

    #[test]
    fn chernoff_examples() {
        let v = chernoff_tail(200, 0.5, 1.0 - 1e-12).unwrap();
        assert!((v.ln() + 50.0).abs() < 1e-6);
        assert_eq!(chernoff_tail(100, 0.0, 0.5).unwrap(), 1.0);
        assert!((chernoff_tail(10_000, 0.5, 0.1).unwrap().ln() + 25.0).abs() < 1e-9);
        assert_eq!(chernoff_tail(10, 0.5, 1.0).unwrap_err(), Error::EpsilonOutOfRange(1.0));
    }

    #[test]
    fn closed_form_weights_match() {
        for (p, k) in [(2, 2), (5, 1), (7, 1), (3, 2)] {
            let f = Field::gf(p, k).unwrap();
            for d in 0..f.q() as usize {
                assert!(closed_form_matches_rscode(&f, d).unwrap());
            }
        }
    }
}
