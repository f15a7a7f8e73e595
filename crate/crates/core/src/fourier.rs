//! Additive characters and Fourier analysis of list indicators.
//!
//! Conventions: χ_α(x) = exp(2πi·Tr(αx)/p) with Tr the absolute trace,
//! ⟨u, v⟩ = (1/q^n) Σ u·conj(v), and ĝ(α) = ⟨g, χ_α⟩. With these,
//! Plancherel reads ⟨f, g⟩ = Σ_α f̂(α)·conj(ĝ(α)).
//!
//! For a code C and lists A_i with indicators g_i, character sums over C
//! collapse onto the dual:
//!
//! ```text
//! X = |C| · Σ_{α ∈ C⊥} Π_i ĝ_i(α_i) = |C| · (Π_i ĝ_i(0) + R)
//! ```

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::recovery::Instance;
use crate::rscode::{dual_code, dual_degree, weight_distribution_exact, RsCode, WeightDistribution};
use crate::stats::{ln_biguint, ln_sum_exp};

/// Largest dual code we are willing to sum over.
pub const DUAL_LIMIT: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    field: Field,
    roots: Vec<Complex64>,
}

impl CharacterTable {
    pub fn new(field: &Field) -> CharacterTable {
        let p = field.p();
        let roots = (0..p)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / p as f64))
            .collect();
        CharacterTable {
            field: field.clone(),
            roots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn chi(&self, alpha: FieldElem, x: FieldElem) -> Complex64 {
        self.roots[self.field.trace(self.field.mul(alpha, x)) as usize]
    }

    /// All values χ_α(x) in canonical order of x.
    pub fn character(&self, alpha: FieldElem) -> Vec<Complex64> {
        self.field.elements().map(|x| self.chi(alpha, x)).collect()
    }
}

/// ⟨u, v⟩ = (1/len) Σ u·conj(v).
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let s: Complex64 = u.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
    s / u.len() as f64
}

/// Fourier coefficients of one subset indicator, indexed by α.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn at(&self, alpha: FieldElem) -> Complex64 {
        self.coeffs[alpha.index() as usize]
    }

    /// Σ_α |ĝ(α)|², which equals |A|/q.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Transform of an arbitrary function on F_q given in canonical order.
pub fn transform(table: &CharacterTable, g: &[Complex64]) -> Spectrum {
    let q = table.field.q() as f64;
    let coeffs = table
        .field
        .elements()
        .map(|alpha| {
            let s: Complex64 = table
                .field
                .elements()
                .zip(g)
                .map(|(x, gx)| gx * table.chi(alpha, x).conj())
                .sum();
            s / q
        })
        .collect();
    Spectrum { coeffs }
}

pub fn indicator_spectrum(table: &CharacterTable, subset: &[FieldElem]) -> Spectrum {
    let q = table.field.q() as f64;
    let coeffs = table
        .field
        .elements()
        .map(|alpha| {
            let s: Complex64 = subset.iter().map(|&x| table.chi(alpha, x).conj()).sum();
            s / q
        })
        .collect();
    Spectrum { coeffs }
}

/// Main term, R-term and the reconstructed count for one instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    /// Π_i ĝ_i(0) = Π_i |A_i| / q.
    pub main: f64,
    pub r: Complex64,
    /// |C| · (main + R), real part.
    pub count: f64,
}

/// A code together with its enumerated dual, reusable across instances.
#[derive(Clone, Debug)]
pub struct FourierContext {
    table: CharacterTable,
    code: RsCode,
    dual: Vec<Vec<FieldElem>>,
}

impl FourierContext {
    pub fn new(code: &RsCode) -> Result<FourierContext> {
        let dual = dual_code(code)?.to_linear();
        let size = (code.field().q() as f64).powi(dual.dimension() as i32);
        if size > DUAL_LIMIT {
            return Err(Error::DualTooLarge {
                size,
                limit: DUAL_LIMIT,
            });
        }
        Ok(FourierContext {
            table: CharacterTable::new(code.field()),
            code: code.clone(),
            dual: dual.vectors()?,
        })
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn dual_vectors(&self) -> &[Vec<FieldElem>] {
        &self.dual
    }

    pub fn spectra(&self, inst: &Instance) -> Result<Vec<Spectrum>> {
        if inst.field() != self.code.field() || inst.positions() != self.code.positions() {
            return Err(Error::MismatchedField);
        }
        Ok((0..inst.n()).map(|i| indicator_spectrum(&self.table, &inst.list(i))).collect())
    }

    pub fn decompose(&self, inst: &Instance) -> Result<Decomposition> {
        let spectra = self.spectra(inst)?;
        let mut main = 1.0;
        let mut r = Complex64::new(0.0, 0.0);
        for alpha in &self.dual {
            let term: Complex64 = spectra.iter().zip(alpha).map(|(s, &a)| s.at(a)).product();
            if alpha.iter().all(|a| a.is_zero()) {
                main = term.re;
            } else {
                r += term;
            }
        }
        let count = self.code.size() * (main + r.re);
        Ok(Decomposition { main, r, count })
    }
}

pub fn count_via_fourier(code: &RsCode, inst: &Instance) -> Result<f64> {
    Ok(FourierContext::new(code)?.decompose(inst)?.count)
}

pub fn r_term(code: &RsCode, inst: &Instance) -> Result<Complex64> {
    Ok(FourierContext::new(code)?.decompose(inst)?.r)
}

/// E|ĝ(0)|² for an iid-p list: p² + p(1-p)/q.
pub fn expected_zero_power(q: u32, p: f64) -> f64 {
    p * p + p * (1.0 - p) / q as f64
}

/// E|ĝ(α)|² for α ≠ 0: p(1-p)/q.
pub fn expected_nonzero_power(q: u32, p: f64) -> f64 {
    p * (1.0 - p) / q as f64
}

fn dual_weights(code: &RsCode) -> Result<Option<WeightDistribution>> {
    if code.is_full_length() {
        match dual_degree(code.n(), code.degree()) {
            Some(dd) => Ok(Some(weight_distribution_exact(&RsCode::full(code.field(), dd)?)?)),
            None => Ok(None),
        }
    } else {
        Ok(Some(dual_code(code)?.to_linear().weight_distribution()?))
    }
}

/// E|R|² = Σ_{w ≥ 1} W⊥_w (p² + p(1-p)/q)^{n-w} (p(1-p)/q)^w under iid-p lists.
pub fn expected_r_squared_exact(code: &RsCode, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let Some(wd) = dual_weights(code)? else {
        return Ok(0.0);
    };
    let q = code.field().q();
    let n = code.n();
    let la = expected_zero_power(q, p).ln();
    let lb = expected_nonzero_power(q, p).ln();
    let ln = ln_sum_exp(
        wd.iter()
            .filter(|(w, _)| *w > 0)
            .map(|(w, c)| ln_biguint(c) + (n - w) as f64 * la + w as f64 * lb),
    );
    Ok(ln.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MainTerm {
    pub value: f64,
    pub value_ln: f64,
    pub threshold_ln: f64,
    /// Π ĝ_i(0) ≤ q^{-rq} (1 + 0.9ε)^{0.9q}.
    pub below: bool,
}

/// Main term of an instance against the threshold q^{-rq}(1 + 0.9ε)^{0.9q}.
/// For punctured instances q in the exponents is replaced by n.
pub fn main_term_statistic(inst: &Instance, r: f64, eps: f64) -> MainTerm {
    let q = inst.field().q() as f64;
    let n = inst.n() as f64;
    let value_ln: f64 = (0..inst.n()).map(|i| (inst.list_len(i) as f64 / q).ln()).sum();
    let threshold_ln = n * (-r * q.ln() + 0.9 * (1.0 + 0.9 * eps).ln());
    MainTerm {
        value: value_ln.exp(),
        value_ln,
        threshold_ln,
        below: value_ln <= threshold_ln,
    }
}
