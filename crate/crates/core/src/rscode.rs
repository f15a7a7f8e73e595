//! Reed-Solomon codes over GF(q), possibly punctured.
//!
//! `RS[q,d]` is the set of evaluation vectors of polynomials of degree at
//! most `d`. Codeword enumeration is lexicographic in the coefficient vector
//! with `c_0` varying fastest, matching the canonical element order.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{nullspace, Field, FieldElem};

/// Guard for every brute-force enumeration in the crate.
pub const ENUMERATION_LIMIT: f64 = 1e7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    field: Field,
    degree: usize,
    positions: Vec<FieldElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub values: Vec<FieldElem>,
    pub coeffs: Vec<FieldElem>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}

impl RsCode {
    /// Full-length `RS[q,d]` evaluated at every field element in canonical order.
    pub fn full(field: &Field, degree: usize) -> Result<RsCode> {
        let positions: Vec<FieldElem> = field.elements().collect();
        RsCode::punctured(field, degree, positions)
    }

    /// `RS[q,d]` restricted to the given evaluation positions.
    pub fn punctured(field: &Field, degree: usize, positions: Vec<FieldElem>) -> Result<RsCode> {
        let n = positions.len();
        if degree >= n {
            return Err(Error::InvalidDegree {
                degree: degree as i64,
                n,
            });
        }
        if let Some(bad) = positions.iter().find(|x| !field.contains(**x)) {
            return Err(Error::MixedFields {
                value: bad.0,
                q: field.q(),
            });
        }
        let mut sorted = positions.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidPositions("positions must be distinct".into()));
        }
        Ok(RsCode {
            field: field.clone(),
            degree,
            positions,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.degree + 1
    }

    pub fn positions(&self) -> &[FieldElem] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn is_full_length(&self) -> bool {
        self.n() == self.field.q() as usize
            && self.positions.iter().enumerate().all(|(i, x)| x.0 == i as u32)
    }

    /// q^{d+1} as a float (may be astronomically large).
    pub fn size(&self) -> f64 {
        (self.field.q() as f64).powi(self.dimension() as i32)
    }

    pub fn evaluate(&self, coeffs: &[FieldElem], x: FieldElem) -> FieldElem {
        eval_poly(&self.field, coeffs, x)
    }

    pub fn encode(&self, coeffs: &[FieldElem]) -> Result<Codeword> {
        if coeffs.len() != self.dimension() {
            return Err(Error::WrongCoefficientCount {
                expected: self.dimension(),
                got: coeffs.len(),
            });
        }
        let values = self
            .positions
            .iter()
            .map(|&x| eval_poly(&self.field, coeffs, x))
            .collect();
        Ok(Codeword {
            values,
            coeffs: coeffs.to_vec(),
        })
    }

    /// Rows are the monomials x^0..x^d evaluated at the positions.
    pub fn generator_matrix(&self) -> Vec<Vec<FieldElem>> {
        (0..=self.degree)
            .map(|j| {
                self.positions
                    .iter()
                    .map(|&x| self.field.pow(x, j as u64))
                    .collect()
            })
            .collect()
    }

    pub fn to_linear(&self) -> LinearCode {
        LinearCode {
            field: self.field.clone(),
            n: self.n(),
            basis: self.generator_matrix(),
        }
    }

    pub fn codewords(&self) -> Result<Codewords<'_>> {
        check_enumerable(self.size())?;
        Ok(Codewords {
            code: self,
            next: Some(vec![FieldElem::ZERO; self.dimension()]),
        })
    }
}

/// Horner evaluation of `c_0 + c_1 x + ... + c_d x^d`.
pub fn eval_poly(field: &Field, coeffs: &[FieldElem], x: FieldElem) -> FieldElem {
    coeffs
        .iter()
        .rev()
        .fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

fn check_enumerable(size: f64) -> Result<()> {
    if size > ENUMERATION_LIMIT {
        Err(Error::EnumerationTooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Streams every codeword once, coefficient vectors in odometer order.
pub struct Codewords<'a> {
    code: &'a RsCode,
    next: Option<Vec<FieldElem>>,
}

impl Iterator for Codewords<'_> {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        let coeffs = self.next.take()?;
        let q = self.code.field.q();
        let mut succ = coeffs.clone();
        let mut carry = true;
        for c in succ.iter_mut() {
            if c.0 + 1 < q {
                c.0 += 1;
                carry = false;
                break;
            }
            c.0 = 0;
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(self.code.encode(&coeffs).expect("dimension matches"))
    }
}

/// Coefficients of the unique polynomial of degree < |points| through `points`.
pub fn interpolate(field: &Field, points: &[(FieldElem, FieldElem)]) -> Result<Vec<FieldElem>> {
    let m = points.len();
    for i in 0..m {
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return Err(Error::DuplicateX);
            }
        }
    }
    // master(x) = prod_j (x - x_j), degree m, low-to-high
    let mut master = vec![FieldElem::ONE];
    for &(xj, _) in points {
        let mut next = vec![FieldElem::ZERO; master.len() + 1];
        for (i, &c) in master.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, xj));
        }
        master = next;
    }
    let mut out = vec![FieldElem::ZERO; m];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // basis_i = master / (x - x_i) by synthetic division
        let mut quotient = vec![FieldElem::ZERO; m];
        let mut carry = FieldElem::ZERO;
        for k in (0..m).rev() {
            carry = field.add(master[k + 1], field.mul(carry, xi));
            quotient[k] = carry;
        }
        let denom = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(FieldElem::ONE, |acc, (_, &(xj, _))| {
                field.mul(acc, field.sub(xi, xj))
            });
        let scale = field.div(yi, denom)?;
        for (o, qk) in out.iter_mut().zip(quotient) {
            *o = field.add(*o, field.mul(scale, qk));
        }
    }
    Ok(out)
}

/// Lagrange basis values L_k(at) for nodes `xs`, so that the interpolant of
/// `(xs[k], y_k)` takes the value `sum_k y_k L_k(at)` at `at`.
pub fn lagrange_weights(field: &Field, xs: &[FieldElem], at: FieldElem) -> Result<Vec<FieldElem>> {
    xs.iter()
        .enumerate()
        .map(|(k, &xk)| {
            let mut num = FieldElem::ONE;
            let mut den = FieldElem::ONE;
            for (j, &xj) in xs.iter().enumerate() {
                if j != k {
                    num = field.mul(num, field.sub(at, xj));
                    den = field.mul(den, field.sub(xk, xj));
                }
            }
            if den.is_zero() {
                return Err(Error::DuplicateX);
            }
            field.div(num, den)
        })
        .collect()
}

/// Codeword counts by weight; only nonzero counts are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    n: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn from_counts(n: usize, counts: impl IntoIterator<Item = (usize, BigUint)>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        WeightDistribution { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, weight: usize) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// (weight, count) pairs in increasing weight.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(w, c)| (*w, c))
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// Perturb one count; used by the self-check negative control.
    pub fn corrupt(&mut self, weight: usize) {
        *self.counts.entry(weight).or_default() += 1u32;
    }
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - 1u32) / b
}

/// Number of weight-(n-i) codewords of an MDS code of length n and dimension
/// d+1 over GF(q):
/// `C(n,i) * sum_{j=0}^{d-i} (-1)^j C(n-i,j) (q^{d-i-j+1} - 1)`.
pub fn mds_weight_count(q: u64, n: u64, d: u64, i: u64) -> BigUint {
    if i > d {
        return BigUint::zero();
    }
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for j in 0..=(d - i) {
        let term = BigInt::from(binom(n - i, j)) * (qb.pow((d - i - j + 1) as u32) - 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let total = BigInt::from(binom(n, i)) * sum;
    match total.sign() {
        Sign::Minus => unreachable!("codeword counts are nonnegative"),
        _ => total.magnitude().clone(),
    }
}

/// Closed-form weight distribution of a full-length `RS[q,d]`.
pub fn weight_distribution_exact(code: &RsCode) -> Result<WeightDistribution> {
    if !code.is_full_length() {
        return Err(Error::PuncturedNotSupported);
    }
    let q = code.field.q() as u64;
    let d = code.degree as u64;
    let counts = std::iter::once((0, BigUint::one()))
        .chain((0..=d).map(|i| ((q - i) as usize, mds_weight_count(q, q, d, i))));
    Ok(WeightDistribution::from_counts(code.n(), counts))
}

/// Weight distribution by enumerating every codeword.
pub fn weight_distribution_brute(code: &RsCode) -> Result<WeightDistribution> {
    let mut counts = vec![0u64; code.n() + 1];
    for w in code.codewords()? {
        counts[w.weight()] += 1;
    }
    Ok(WeightDistribution::from_counts(
        code.n(),
        counts.into_iter().enumerate().map(|(w, c)| (w, BigUint::from(c))),
    ))
}

/// `ceil(q^{d+1} / i!)`, an upper bound on the number of weight-(q-i) codewords.
pub fn weight_bound_crude(q: u64, d: u64, i: u64) -> BigUint {
    ceil_div(&BigUint::from(q).pow((d + 1) as u32), &factorial(i))
}

/// `ceil(q^{k-i} n^i / i!)`, bounding weight-(n-i) codewords of a punctured
/// code of dimension k and length n.
pub fn punctured_weight_bound(q: u64, k: u64, n: u64, i: u64) -> BigUint {
    let num = BigUint::from(q).pow(k.saturating_sub(i) as u32) * BigUint::from(n).pow(i as u32);
    ceil_div(&num, &factorial(i))
}

/// A linear code given by a (not necessarily independent) spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub field: Field,
    pub n: usize,
    pub basis: Vec<Vec<FieldElem>>,
}

impl LinearCode {
    pub fn dimension(&self) -> usize {
        crate::gf::rank(&self.field, &self.basis, self.n).expect("basis is over this field")
    }

    pub fn size(&self) -> f64 {
        (self.field.q() as f64).powi(self.dimension() as i32)
    }

    /// All codewords: every combination of an independent basis.
    pub fn vectors(&self) -> Result<Vec<Vec<FieldElem>>> {
        check_enumerable(self.size())?;
        let f = &self.field;
        let q = f.q();
        // keep an independent subset so combinations do not repeat
        let mut indep: Vec<Vec<FieldElem>> = Vec::new();
        for v in &self.basis {
            let mut trial = indep.clone();
            trial.push(v.clone());
            if crate::gf::rank(f, &trial, self.n)? == trial.len() {
                indep = trial;
            }
        }
        let mut out = vec![vec![FieldElem::ZERO; self.n]];
        for b in &indep {
            let mut grown = Vec::with_capacity(out.len() * q as usize);
            for s in f.elements() {
                for v in &out {
                    grown.push(
                        v.iter()
                            .zip(b)
                            .map(|(&x, &y)| f.add(x, f.mul(s, y)))
                            .collect(),
                    );
                }
            }
            out = grown;
        }
        Ok(out)
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        let mut counts = vec![0u64; self.n + 1];
        for v in self.vectors()? {
            counts[v.iter().filter(|x| !x.is_zero()).count()] += 1;
        }
        Ok(WeightDistribution::from_counts(
            self.n,
            counts.into_iter().enumerate().map(|(w, c)| (w, BigUint::from(c))),
        ))
    }

    /// Every spanning vector of `self` is orthogonal to every spanning vector
    /// of `other`; by bilinearity this covers all codeword pairs.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|v| self.field.dot(u, v).is_zero()))
    }
}

/// Dual of a Reed-Solomon code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualCode {
    /// Full-length duals are again Reed-Solomon: `RS[q, q-d-2]`.
    Rs(RsCode),
    /// `{0}` (dual of the whole space) or a nullspace basis for punctured codes.
    Linear(LinearCode),
}

impl DualCode {
    pub fn to_linear(&self) -> LinearCode {
        match self {
            DualCode::Rs(c) => c.to_linear(),
            DualCode::Linear(l) => l.clone(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            DualCode::Rs(c) => c.dimension(),
            DualCode::Linear(l) => l.basis.len(),
        }
    }
}

/// Degree of the full-length dual: `q - d - 2`, or `None` when the dual is `{0}`.
pub fn dual_degree(q: usize, d: usize) -> Option<usize> {
    (q as i64 - d as i64 - 2).try_into().ok()
}

pub fn dual_code(code: &RsCode) -> Result<DualCode> {
    let field = code.field();
    let n = code.n();
    let dual = if code.is_full_length() {
        match dual_degree(n, code.degree()) {
            Some(dd) => DualCode::Rs(RsCode::full(field, dd)?),
            None => DualCode::Linear(LinearCode {
                field: field.clone(),
                n,
                basis: Vec::new(),
            }),
        }
    } else {
        DualCode::Linear(LinearCode {
            field: field.clone(),
            n,
            basis: nullspace(field, &code.generator_matrix(), n)?,
        })
    };
    debug_assert!(code.to_linear().is_orthogonal_to(&dual.to_linear()));
    debug_assert_eq!(code.dimension() + dual.dimension(), n);
    Ok(dual)
}

/// Exhaustive orthogonality: every codeword of `a` against every codeword of `b`.
pub fn orthogonal_exhaustive(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    check_enumerable(a.size() * b.size())?;
    let va = a.vectors()?;
    let vb = b.vectors()?;
    Ok(va
        .iter()
        .all(|u| vb.iter().all(|v| a.field.dot(u, v).is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(xs: &[u32]) -> Vec<FieldElem> {
        xs.iter().map(|&x| FieldElem(x)).collect()
    }

    fn wd(n: usize, pairs: &[(usize, u64)]) -> WeightDistribution {
        WeightDistribution::from_counts(n, pairs.iter().map(|&(w, c)| (w, BigUint::from(c))))
    }

    #[test]
    fn encode_examples() {
        let f3 = Field::gf(3, 1).unwrap();
        let c = RsCode::full(&f3, 1).unwrap();
        assert_eq!(c.encode(&fe(&[1, 1])).unwrap().values, fe(&[1, 2, 0]));
        assert_eq!(c.encode(&fe(&[0, 0])).unwrap().weight(), 0);
        assert_eq!(
            c.encode(&fe(&[1])).unwrap_err(),
            Error::WrongCoefficientCount {
                expected: 2,
                got: 1
            }
        );
        let f5 = Field::gf(5, 1).unwrap();
        let c0 = RsCode::full(&f5, 0).unwrap();
        assert_eq!(c0.encode(&fe(&[3])).unwrap().values, fe(&[3; 5]));
    }

    #[test]
    fn interpolate_examples() {
        let f3 = Field::gf(3, 1).unwrap();
        let pts = [(FieldElem(0), FieldElem(1)), (FieldElem(1), FieldElem(2))];
        assert_eq!(interpolate(&f3, &pts).unwrap(), fe(&[1, 1]));
        assert_eq!(
            interpolate(&f3, &[(FieldElem(0), FieldElem(2))]).unwrap(),
            fe(&[2])
        );
        let f5 = Field::gf(5, 1).unwrap();
        let pts = [
            (FieldElem(0), FieldElem(0)),
            (FieldElem(1), FieldElem(1)),
            (FieldElem(2), FieldElem(4)),
        ];
        assert_eq!(interpolate(&f5, &pts).unwrap(), fe(&[0, 0, 1]));
        let dup = [(FieldElem(1), FieldElem(0)), (FieldElem(1), FieldElem(2))];
        assert_eq!(interpolate(&f5, &dup).unwrap_err(), Error::DuplicateX);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let f2 = Field::gf(2, 1).unwrap();
        let c = RsCode::full(&f2, 1).unwrap();
        let words: Vec<Vec<FieldElem>> = c.codewords().unwrap().map(|w| w.values).collect();
        assert_eq!(words, vec![fe(&[0, 0]), fe(&[1, 1]), fe(&[0, 1]), fe(&[1, 0])]);
        let f3 = Field::gf(3, 1).unwrap();
        assert_eq!(RsCode::full(&f3, 0).unwrap().codewords().unwrap().count(), 3);
        let f5 = Field::gf(5, 1).unwrap();
        assert_eq!(RsCode::full(&f5, 1).unwrap().codewords().unwrap().count(), 25);
        let f16 = Field::gf(2, 4).unwrap();
        assert!(matches!(
            RsCode::full(&f16, 6).unwrap().codewords(),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn invalid_codes() {
        let f3 = Field::gf(3, 1).unwrap();
        assert!(matches!(RsCode::full(&f3, 3), Err(Error::InvalidDegree { .. })));
        assert!(matches!(
            RsCode::punctured(&f3, 0, fe(&[1, 1])),
            Err(Error::InvalidPositions(_))
        ));
    }

    #[test]
    fn weight_distribution_examples() {
        let f5 = Field::gf(5, 1).unwrap();
        let rs51 = RsCode::full(&f5, 1).unwrap();
        let want = wd(5, &[(0, 1), (4, 20), (5, 4)]);
        assert_eq!(weight_distribution_exact(&rs51).unwrap(), want);
        assert_eq!(weight_distribution_brute(&rs51).unwrap(), want);

        let f3 = Field::gf(3, 1).unwrap();
        let rs31 = RsCode::full(&f3, 1).unwrap();
        assert_eq!(
            weight_distribution_exact(&rs31).unwrap(),
            wd(3, &[(0, 1), (2, 6), (3, 2)])
        );
        for (p, k) in [(2, 1), (3, 1), (2, 3), (7, 1)] {
            let f = Field::gf(p, k).unwrap();
            let q = f.q() as u64;
            assert_eq!(
                weight_distribution_exact(&RsCode::full(&f, 0).unwrap()).unwrap(),
                wd(q as usize, &[(0, 1), (q as usize, q - 1)])
            );
        }
        let punct = RsCode::punctured(&f5, 1, fe(&[0, 1, 2])).unwrap();
        assert_eq!(
            weight_distribution_exact(&punct).unwrap_err(),
            Error::PuncturedNotSupported
        );
    }

    #[test]
    fn crude_bounds() {
        assert_eq!(weight_bound_crude(5, 1, 1), BigUint::from(25u32));
        assert_eq!(weight_bound_crude(5, 1, 0), BigUint::from(25u32));
        assert_eq!(weight_bound_crude(7, 3, 3), BigUint::from(401u32)); // ceil(2401/6)
        assert_eq!(punctured_weight_bound(5, 2, 4, 1), BigUint::from(20u32));
        assert_eq!(punctured_weight_bound(5, 2, 4, 0), BigUint::from(25u32));
    }

    #[test]
    fn dual_of_rs31() {
        let f3 = Field::gf(3, 1).unwrap();
        let c = RsCode::full(&f3, 1).unwrap();
        let DualCode::Rs(dual) = dual_code(&c).unwrap() else {
            panic!("full-length dual should be RS");
        };
        assert_eq!(dual.degree(), 0);
        assert!(orthogonal_exhaustive(&c.to_linear(), &dual.to_linear()).unwrap());
        // the printed degree q-d-1 = 1 is not orthogonal
        let printed = RsCode::full(&f3, 1).unwrap();
        assert!(!orthogonal_exhaustive(&c.to_linear(), &printed.to_linear()).unwrap());
    }

    #[test]
    fn dual_of_whole_space_is_zero() {
        let f3 = Field::gf(3, 1).unwrap();
        let c = RsCode::full(&f3, 2).unwrap();
        let dual = dual_code(&c).unwrap();
        assert_eq!(dual.dimension(), 0);
        assert_eq!(dual.to_linear().vectors().unwrap().len(), 1);
    }

    #[test]
    fn biduality_and_dimensions() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let f = Field::gf(p, k).unwrap();
            let q = f.q() as usize;
            for d in 0..q {
                let c = RsCode::full(&f, d).unwrap();
                let dual = dual_code(&c).unwrap();
                assert_eq!(c.dimension() + dual.dimension(), q);
                if c.size() * (q as f64).powi(dual.dimension() as i32) <= 1e6 {
                    assert!(orthogonal_exhaustive(&c.to_linear(), &dual.to_linear()).unwrap());
                }
                let back = match &dual {
                    DualCode::Rs(r) => dual_code(r).unwrap().to_linear(),
                    DualCode::Linear(_) => continue,
                };
                if c.size() <= 1e5 {
                    let mut a = c.to_linear().vectors().unwrap();
                    let mut b = back.vectors().unwrap();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b, "dual(dual(RS[{q},{d}]))");
                }
            }
        }
    }

    #[test]
    fn punctured_dual_by_nullspace() {
        let f7 = Field::gf(7, 1).unwrap();
        let c = RsCode::punctured(&f7, 1, fe(&[1, 3, 4, 6])).unwrap();
        let dual = dual_code(&c).unwrap();
        assert_eq!(dual.dimension(), 2);
        assert!(orthogonal_exhaustive(&c.to_linear(), &dual.to_linear()).unwrap());
        // bounds dominate the brute-force counts for the punctured code
        let wd = weight_distribution_brute(&c).unwrap();
        for i in 0..2u64 {
            assert!(punctured_weight_bound(7, 2, 4, i) >= wd.count(4 - i as usize));
        }
    }

    #[test]
    fn lagrange_weights_reproduce_interpolant() {
        let f = Field::gf(2, 3).unwrap();
        let xs = fe(&[1, 2, 5]);
        let ys = fe(&[7, 0, 3]);
        let pts: Vec<_> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let coeffs = interpolate(&f, &pts).unwrap();
        for at in f.elements() {
            let w = lagrange_weights(&f, &xs, at).unwrap();
            assert_eq!(f.dot(&w, &ys), eval_poly(&f, &coeffs, at));
        }
    }
}
