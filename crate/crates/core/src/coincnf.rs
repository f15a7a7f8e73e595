//! A read-once CNF whose acceptance probability on fair bits is just above p,
//! and which amplifies a small bias in its inputs.
//!
//! The formula has k_j disjoint clauses of width j for j = 1..=ℓ. On fair
//! bits a width-j clause is true with probability 1 - 2^{-j}, so the
//! acceptance probability is Π_j (1 - 2^{-j})^{k_j}. The k_j are chosen
//! greedily: each is the largest value keeping the running product >= p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use crate::stats::{wilson, Z95};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CnfPlan {
    pub p: f64,
    pub s: u32,
    /// k[j-1] = number of width-j clauses.
    pub k: Vec<u64>,
    /// Total variables Σ j k_j.
    pub t: usize,
    pub ell: usize,
    /// Acceptance probability on fair bits.
    pub fair_probability: f64,
    /// Variable groups, clause-major: all width-1 clauses first, then width 2, ...
    #[serde(skip)]
    pub clauses: Vec<Vec<usize>>,
    #[serde(skip)]
    fair_exact: BigRational,
}

fn factor(j: usize) -> BigRational {
    let den = BigInt::one() << j;
    BigRational::new(&den - BigInt::one(), den)
}

fn pow2_neg(j: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << j)
}

/// Build the plan with exact rational comparisons. The unbounded greedy
/// sequence is computed first, then truncated at the largest ℓ with k_ℓ > 0
/// and Σ_{j<=ℓ} j k_j < s².
pub fn plan_cnf(p: f64, s: u32) -> Result<CnfPlan> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if s == 0 || s > 64 {
        return Err(Error::ParameterOutOfRange(format!("s = {s} outside 1..=64")));
    }
    let target = BigRational::from_float(p).expect("finite");
    if target < pow2_neg(s as u64) {
        return Err(Error::ProbabilityTooSmallForS { p, s });
    }
    let budget = (s as u64) * (s as u64);
    let mut prod = BigRational::one();
    let mut greedy = Vec::new();
    let mut used = 0u64;
    for j in 1..budget as usize {
        if used >= budget {
            break;
        }
        let f = factor(j);
        let mut kj = 0u64;
        loop {
            let next = &prod * &f;
            if next < target {
                break;
            }
            prod = next;
            kj += 1;
        }
        greedy.push(kj);
        used += j as u64 * kj;
    }
    let mut ell = 0;
    let mut prefix = 0u64;
    for (idx, &kj) in greedy.iter().enumerate() {
        prefix += (idx as u64 + 1) * kj;
        if prefix >= budget {
            break;
        }
        if kj > 0 {
            ell = idx + 1;
        }
    }
    if ell == 0 {
        return Err(Error::EmptyPlan { p, budget });
    }
    let k = greedy[..ell].to_vec();
    Ok(build(p, s, k))
}

fn build(p: f64, s: u32, k: Vec<u64>) -> CnfPlan {
    let mut clauses = Vec::new();
    let mut next = 0;
    let mut fair = BigRational::one();
    for (idx, &kj) in k.iter().enumerate() {
        let j = idx + 1;
        for _ in 0..kj {
            clauses.push((next..next + j).collect());
            next += j;
            fair *= factor(j);
        }
    }
    CnfPlan {
        p,
        s,
        ell: k.len(),
        t: next,
        fair_probability: fair.to_f64().unwrap_or(0.0),
        k,
        clauses,
        fair_exact: fair,
    }
}

impl CnfPlan {
    /// Exact acceptance probability on fair bits.
    pub fn fair_exact(&self) -> &BigRational {
        &self.fair_exact
    }

    pub fn target_exact(&self) -> BigRational {
        BigRational::from_float(self.p).expect("finite")
    }

    /// p <= P_fair <= p (1 - 2^{-(ℓ+1)})^{-4}, checked in rationals.
    pub fn sandwich_holds(&self) -> bool {
        let p = self.target_exact();
        let f = factor(self.ell + 1);
        let f4 = &f * &f * &f * &f;
        p <= self.fair_exact && &self.fair_exact * f4 <= p
    }

    /// Π_j (1 - (1-b)^j)^{k_j}: exact acceptance probability at input bias b.
    pub fn acceptance_probability(&self, bias: f64) -> f64 {
        self.k
            .iter()
            .enumerate()
            .map(|(idx, &kj)| (1.0 - (1.0 - bias).powi(idx as i32 + 1)).powi(kj as i32))
            .product()
    }

    /// Rigorous bounds on the acceptance probability at bias 1/2 + ε.
    /// For ε >= 0: at least p (1 + ε k_1). For ε < 0: at most
    /// P_fair Π_j (1 - |ε| j / 2^j)^{k_j}.
    pub fn predicted_window(&self, bias: f64) -> (f64, f64) {
        let eps = bias - 0.5;
        if eps >= 0.0 {
            ((self.p * (1.0 + eps * self.k[0] as f64)).min(1.0), 1.0)
        } else {
            let shrink: f64 = self
                .k
                .iter()
                .enumerate()
                .map(|(idx, &kj)| {
                    let j = idx as i32 + 1;
                    (1.0 - eps.abs() * j as f64 / 2f64.powi(j)).powi(kj as i32)
                })
                .product();
            (0.0, self.fair_probability * shrink)
        }
    }
}

pub fn eval_cnf(plan: &CnfPlan, bits: &[bool]) -> Result<bool> {
    if bits.len() != plan.t {
        return Err(Error::WrongWidth {
            expected: plan.t,
            got: bits.len(),
        });
    }
    Ok(plan.clauses.iter().all(|c| c.iter().any(|&v| bits[v])))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasReport {
    pub bias: f64,
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Closed-form acceptance probability at this bias.
    pub exact: f64,
    /// Set only at bias exactly 1/2.
    pub exact_fair: Option<f64>,
    pub window_lo: f64,
    pub window_hi: f64,
}

/// Monte Carlo acceptance rate at input bias b; trial t draws its t bits in
/// variable order from stream (seed, t).
pub fn measure_bias(plan: &CnfPlan, bias: f64, trials: u64, seed: u64) -> Result<BiasReport> {
    if !(0.0..=1.0).contains(&bias) {
        return Err(Error::InvalidProbability(bias));
    }
    if trials == 0 {
        return Err(Error::ParameterOutOfRange("measure_bias needs trials >= 1".into()));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeedSpec::new(seed, t).stream();
            let bits: Vec<bool> = (0..plan.t).map(|_| rng.bernoulli(bias)).collect();
            u64::from(plan.clauses.iter().all(|c| c.iter().any(|&v| bits[v])))
        })
        .sum::<u64>();
    let (ci_lo, ci_hi) = wilson(successes, trials, Z95);
    let (window_lo, window_hi) = plan.predicted_window(bias);
    Ok(BiasReport {
        bias,
        trials,
        seed,
        successes,
        estimate: successes as f64 / trials as f64,
        ci_lo,
        ci_hi,
        exact: plan.acceptance_probability(bias),
        exact_fair: (bias == 0.5).then_some(plan.fair_probability),
        window_lo,
        window_hi,
    })
}

/// DIMACS CNF: header `p cnf V C`, variables numbered from 1 in clause-major order.
pub fn to_dimacs(plan: &CnfPlan) -> String {
    let mut out = format!("c coin plan p={} s={}\np cnf {} {}\n", plan.p, plan.s, plan.t, plan.clauses.len());
    for c in &plan.clauses {
        for v in c {
            out.push_str(&(v + 1).to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Fraction Π(2^j - 1)^{k_j} / 2^{Σ j k_j} for an arbitrary sequence.
pub fn sequence_probability(k: &[u64]) -> BigRational {
    k.iter()
        .enumerate()
        .fold(BigRational::one(), |acc, (idx, &kj)| {
            (0..kj).fold(acc, |a, _| a * factor(idx + 1))
        })
}
