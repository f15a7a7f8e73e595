//! Exact arithmetic in GF(p^k).
//!
//! Elements are stored as their index in the canonical element order: the
//! base-p digits of the index are the polynomial coefficients c_0..c_{k-1}
//! (c_0 least significant). Equality is therefore structural, and the prime
//! field GF(p) enumerates as 0, 1, ..., p-1.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field from a primitive element, so a [`Field`] is cheap to clone and safe
//! to share between threads.

mod linalg;

pub use linalg::{nullspace, rank};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order we are willing to build tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Parameters of a finite field GF(p^k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus of degree k, coefficients low-to-high (length k+1).
    /// `None` selects the smallest irreducible in canonical order.
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn new(p: u32, k: u32) -> Self {
        FieldSpec { p, k, modulus: None }
    }

    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        FieldSpec {
            p,
            k,
            modulus: Some(modulus),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `"p^k"` or a bare prime `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, k) = match s.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim()),
            None => (s, "1"),
        };
        let p = p
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad characteristic in field '{s}'")))?;
        let k = k
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad extension degree in field '{s}'")))?;
        Ok(FieldSpec::new(p, k))
    }
}

/// A field element, identified by its canonical index in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1), doubled to skip a modulo in `mul`.
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Absolute trace Tr(x) in GF(p), as an integer residue.
    trace: Vec<u32>,
    /// Addition table, only for q <= 256.
    add: Option<Vec<u16>>,
}

/// Arithmetic context for GF(p^k).
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p(), self.k(), self.inner.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over GF(p), low-to-high, trimmed of trailing zeros.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, a != 0: Fermat.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn digits(mut idx: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Is the monic polynomial `m` (degree k) irreducible over GF(p)?
/// Trial division by every monic polynomial of degree 1..=k/2.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for low in 0..count {
            let mut divisor = digits(low as u32, p, deg as u32);
            divisor.push(1);
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree k in canonical order, i.e. the one
/// whose lower coefficients (c_{k-1}..c_0) read as the smallest base-p number.
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut m = digits(low as u32, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        let FieldSpec { p, k, .. } = *spec;
        if k == 0 {
            return Err(Error::InvalidModulus("extension degree must be >= 1".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::CompositeCharacteristic(p as u64));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { q });
        }
        let q = q as u32;

        let modulus = match &spec.modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.clone()
            }
            None => smallest_irreducible(p, k),
        };

        let (exp, log) = build_log_tables(p, k, q, &modulus);
        let neg = (0..q)
            .map(|x| {
                let d: Vec<u32> = digits(x, p, k).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let add = (q <= 256).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b, p, k) as u16;
                }
            }
            t
        });

        let mut field = Field {
            inner: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                exp,
                log,
                neg,
                trace: Vec::new(),
                add,
            }),
        };
        let trace = (0..q)
            .map(|x| {
                let mut y = FieldElem(x);
                let mut acc = FieldElem::ZERO;
                for _ in 0..k {
                    acc = field.add(acc, y);
                    y = field.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p, "trace must land in the prime subfield");
                acc.0
            })
            .collect();
        Arc::get_mut(&mut field.inner)
            .expect("freshly built field is uniquely owned")
            .trace = trace;
        Ok(field)
    }

    /// Shorthand for `Field::new(&FieldSpec::new(p, k))`.
    pub fn gf(p: u32, k: u32) -> Result<Field> {
        Field::new(&FieldSpec::new(p, k))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.inner.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::with_modulus(self.p(), self.k(), self.inner.modulus.clone())
    }

    /// Element with canonical index `idx`.
    pub fn elem(&self, idx: u32) -> Result<FieldElem> {
        if idx < self.q() {
            Ok(FieldElem(idx))
        } else {
            Err(Error::MixedFields {
                value: idx,
                q: self.q(),
            })
        }
    }

    #[inline]
    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q()
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.k() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!("{coeffs:?} is not a residue mod the field modulus")));
        }
        Ok(FieldElem(undigits(coeffs, self.p())))
    }

    /// Polynomial representation c_0..c_{k-1}.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0, self.p(), self.k())
    }

    /// The canonical order a_1 = 0, a_2, ..., a_q.
    pub fn elements(&self) -> ElementOrder {
        ElementOrder { next: 0, q: self.q() }
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let t = &*self.inner;
        if let Some(add) = &t.add {
            return FieldElem(add[(a.0 * t.q + b.0) as usize] as u32);
        }
        if t.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if t.k == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= t.p { s - t.p } else { s });
        }
        FieldElem(add_digits(a.0, b.0, t.p, t.k))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let t = &*self.inner;
        FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.inner;
        let l = t.log[a.0 as usize];
        Ok(FieldElem(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let t = &*self.inner;
        let order = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElem(t.exp[l as usize])
    }

    /// Absolute trace Tr(a) = a + a^p + ... + a^{p^{k-1}}, as a residue in 0..p.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.inner.trace[a.0 as usize]
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        u.iter()
            .zip(v)
            .fold(FieldElem::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

fn add_digits(mut a: u32, mut b: u32, p: u32, k: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..k {
        let s = (a % p + b % p) % p;
        out += s * place;
        place = place.wrapping_mul(p);
        a /= p;
        b /= p;
    }
    out
}

fn mul_poly_mod(a: u32, b: u32, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u32; 2 * k as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k as usize, 0);
    undigits(&r, p)
}

fn build_log_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let order = q - 1;
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    for g in 1..q {
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..order {
            exp[i as usize] = x;
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            x = mul_poly_mod(x, g, p, k, modulus);
        }
        if ok && x == 1 {
            for i in 0..order {
                exp[(i + order) as usize] = exp[i as usize];
                log[exp[i as usize] as usize] = i;
            }
            return (exp, log);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// Iterator over the canonical element order.
#[derive(Clone, Debug)]
pub struct ElementOrder {
    next: u32,
    q: u32,
}

impl Iterator for ElementOrder {
    type Item = FieldElem;

    fn next(&mut self) -> Option<FieldElem> {
        if self.next < self.q {
            self.next += 1;
            Some(FieldElem(self.next - 1))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.q - self.next) as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for ElementOrder {}
