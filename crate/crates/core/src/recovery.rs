//! List recovery for Reed-Solomon codes: given lists A_1..A_n, decide or
//! count the codewords w with w_i in A_i for every i.
//!
//! The search fixes d+1 anchor positions, walks the Cartesian product of
//! their lists and extends each tuple to the unique interpolating codeword.
//! Because a polynomial of degree at most d is determined by its values at
//! d+1 distinct points, anchor tuples and candidate codewords are in
//! bijection, so every contained codeword is found exactly once.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::rscode::{interpolate, lagrange_weights, RsCode, ENUMERATION_LIMIT};

pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Anchor products above this many tuples are split across workers.
const PARALLEL_TUPLES: f64 = 1e5;

/// A list-recovery input: one subset of F_q per evaluation position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    field: Field,
    positions: Vec<FieldElem>,
    masks: Vec<Vec<u64>>,
}

fn words(q: u32) -> usize {
    (q as usize).div_ceil(64)
}

impl Instance {
    /// Empty lists on the given positions.
    pub fn empty(field: &Field, positions: Vec<FieldElem>) -> Result<Instance> {
        if positions.len() > field.q() as usize {
            return Err(Error::InvalidPositions("more positions than field elements".into()));
        }
        if let Some(bad) = positions.iter().find(|x| !field.contains(**x)) {
            return Err(Error::MixedFields {
                value: bad.0,
                q: field.q(),
            });
        }
        let w = words(field.q());
        Ok(Instance {
            field: field.clone(),
            masks: vec![vec![0; w]; positions.len()],
            positions,
        })
    }

    pub fn new(field: &Field, positions: Vec<FieldElem>, lists: &[Vec<FieldElem>]) -> Result<Instance> {
        if lists.len() != positions.len() {
            return Err(Error::InvalidPositions(format!(
                "{} lists for {} positions",
                lists.len(),
                positions.len()
            )));
        }
        let mut inst = Instance::empty(field, positions)?;
        for (i, list) in lists.iter().enumerate() {
            for &z in list {
                if !field.contains(z) {
                    return Err(Error::MixedFields {
                        value: z.0,
                        q: field.q(),
                    });
                }
                inst.insert(i, z);
            }
        }
        Ok(inst)
    }

    /// Lists on the first `lists.len()` elements of the canonical order.
    pub fn from_lists(field: &Field, lists: &[Vec<FieldElem>]) -> Result<Instance> {
        let positions = field.elements().take(lists.len()).collect();
        Instance::new(field, positions, lists)
    }

    /// Full-length instance from a point set S in F_q x F_q.
    pub fn from_points(field: &Field, points: &[(FieldElem, FieldElem)]) -> Result<Instance> {
        let mut inst = Instance::empty(field, field.elements().collect())?;
        for &(x, y) in points {
            if !field.contains(x) || !field.contains(y) {
                return Err(Error::MixedFields {
                    value: x.0.max(y.0),
                    q: field.q(),
                });
            }
            inst.insert(x.0 as usize, y);
        }
        Ok(inst)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn positions(&self) -> &[FieldElem] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Add `z` to list `i`.
    #[inline]
    pub fn insert(&mut self, i: usize, z: FieldElem) {
        self.masks[i][z.0 as usize / 64] |= 1 << (z.0 % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize, z: FieldElem) -> bool {
        self.masks[i][z.0 as usize / 64] >> (z.0 % 64) & 1 == 1
    }

    pub fn list_len(&self, i: usize) -> usize {
        self.masks[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn list(&self, i: usize) -> Vec<FieldElem> {
        self.field.elements().filter(|&z| self.contains(i, z)).collect()
    }

    pub fn lists(&self) -> Vec<Vec<FieldElem>> {
        (0..self.n()).map(|i| self.list(i)).collect()
    }

    /// The point-set view S = { (a_i, z) : z in A_i }.
    pub fn points(&self) -> Vec<(FieldElem, FieldElem)> {
        (0..self.n())
            .flat_map(|i| self.list(i).into_iter().map(move |z| (self.positions[i], z)))
            .collect()
    }

    pub fn total_points(&self) -> usize {
        (0..self.n()).map(|i| self.list_len(i)).sum()
    }

    /// Image of S under (x, y) -> (x + s, y + t); full-length instances only.
    pub fn translate(&self, s: FieldElem, t: FieldElem) -> Result<Instance> {
        if self.n() != self.field.q() as usize {
            return Err(Error::InvalidPositions("translation needs a full-length instance".into()));
        }
        let f = &self.field;
        let shifted: Vec<_> = self
            .points()
            .into_iter()
            .map(|(x, y)| (f.add(x, s), f.add(y, t)))
            .collect();
        Instance::from_points(f, &shifted)
    }

    /// Sub-instance on the given positions, in the given order.
    pub fn restrict(&self, positions: &[FieldElem]) -> Result<Instance> {
        if positions.is_empty() {
            return Err(Error::InvalidDegree { degree: -1, n: 0 });
        }
        let idx = positions
            .iter()
            .map(|x| {
                self.positions
                    .iter()
                    .position(|p| p == x)
                    .ok_or(Error::UnknownPosition(x.0))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            field: self.field.clone(),
            positions: positions.to_vec(),
            masks: idx.into_iter().map(|i| self.masks[i].clone()).collect(),
        })
    }

    /// Parse the list file format: line i holds the comma-separated canonical
    /// indices of A_i, a blank line is an empty list.
    pub fn parse_lists(field: &Field, text: &str) -> Result<Instance> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lists = Vec::new();
        for (lineno, line) in body.split('\n').enumerate() {
            let line = line.trim_end_matches('\r').trim();
            let list = if line.is_empty() {
                Vec::new()
            } else {
                line.split(',')
                    .map(|tok| {
                        let v: u32 = tok.trim().parse().map_err(|_| {
                            Error::Parse(format!("line {}: bad element '{}'", lineno + 1, tok.trim()))
                        })?;
                        field.elem(v)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            lists.push(list);
        }
        if lists.len() > field.q() as usize {
            return Err(Error::Parse(format!(
                "{} lists exceed the field order {}",
                lists.len(),
                field.q()
            )));
        }
        Instance::from_lists(field, &lists)
    }

    pub fn to_lists_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n() {
            let line: Vec<String> = self.list(i).iter().map(|z| z.0.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parse one `x,y` pair per line (canonical indices); blank lines are skipped.
pub fn parse_points(field: &Field, text: &str) -> Result<Vec<(FieldElem, FieldElem)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(lineno, line)| {
            let (x, y) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected x,y", lineno + 1)))?;
            let parse = |s: &str| -> Result<FieldElem> {
                let v: u32 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad element '{}'", lineno + 1, s.trim())))?;
                field.elem(v)
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryResult {
    pub found: bool,
    pub count: u64,
    /// Coefficient vectors (canonical indices) of up to `cap` contained codewords.
    pub witnesses: Vec<Vec<FieldElem>>,
}

/// Which d+1 positions seed the interpolation search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Anchor {
    /// Smallest lists first, ties broken by position index.
    #[default]
    SmallestLists,
    /// Positions 0..=d.
    FixedPrefix,
}

fn check_compatible(code: &RsCode, inst: &Instance) -> Result<()> {
    if code.field() != inst.field() || code.positions() != inst.positions() {
        return Err(Error::MismatchedField);
    }
    Ok(())
}

pub fn decide(code: &RsCode, inst: &Instance) -> Result<bool> {
    decide_with(code, inst, Anchor::default())
}

pub fn decide_with(code: &RsCode, inst: &Instance, anchor: Anchor) -> Result<bool> {
    Ok(search(code, inst, anchor, Mode::Decide)?.found)
}

pub fn count(code: &RsCode, inst: &Instance, cap: usize) -> Result<RecoveryResult> {
    count_with(code, inst, cap, Anchor::default())
}

pub fn count_with(code: &RsCode, inst: &Instance, cap: usize, anchor: Anchor) -> Result<RecoveryResult> {
    search(code, inst, anchor, Mode::Count { cap })
}

/// Full enumeration of the code; the reference the search is tested against.
pub fn count_exhaustive(code: &RsCode, inst: &Instance, cap: usize) -> Result<RecoveryResult> {
    check_compatible(code, inst)?;
    exhaustive(code, inst, Mode::Count { cap })
}

pub fn decide_exhaustive(code: &RsCode, inst: &Instance) -> Result<bool> {
    check_compatible(code, inst)?;
    Ok(exhaustive(code, inst, Mode::Decide)?.found)
}

#[derive(Clone, Copy)]
enum Mode {
    Decide,
    Count { cap: usize },
}

impl Mode {
    fn cap(self) -> usize {
        match self {
            Mode::Decide => 1,
            Mode::Count { cap } => cap,
        }
    }
}

struct Plan<'a> {
    field: &'a Field,
    inst: &'a Instance,
    anchors: Vec<usize>,
    anchor_lists: Vec<Vec<FieldElem>>,
    /// Non-anchor positions, most restrictive list first.
    rest: Vec<usize>,
    /// weights[r][k] = L_k(x_rest[r]) over the anchor nodes.
    weights: Vec<Vec<FieldElem>>,
}

#[derive(Default)]
struct Tally {
    count: u64,
    witnesses: Vec<Vec<FieldElem>>,
}

fn search(code: &RsCode, inst: &Instance, anchor: Anchor, mode: Mode) -> Result<RecoveryResult> {
    check_compatible(code, inst)?;
    let n = inst.n();
    let d = code.degree();
    let field = code.field();

    if (0..n).any(|i| inst.list_len(i) == 0) {
        return Ok(RecoveryResult {
            found: false,
            count: 0,
            witnesses: Vec::new(),
        });
    }

    if d + 1 == n {
        // every tuple of values is a codeword
        let lists = inst.lists();
        let count: u64 = lists.iter().map(|l| l.len() as u64).product();
        let mut witnesses: Vec<Vec<FieldElem>> = Vec::new();
        let mut tuple = vec![0usize; n];
        'outer: while witnesses.len() < mode.cap() {
            let pts: Vec<_> = (0..n).map(|i| (inst.positions()[i], lists[i][tuple[i]])).collect();
            witnesses.push(interpolate(field, &pts)?);
            for i in 0..n {
                tuple[i] += 1;
                if tuple[i] < lists[i].len() {
                    continue 'outer;
                }
                tuple[i] = 0;
            }
            break;
        }
        return Ok(RecoveryResult {
            found: true,
            count: if matches!(mode, Mode::Decide) { count.min(1) } else { count },
            witnesses,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    if anchor == Anchor::SmallestLists {
        order.sort_by_key(|&i| (inst.list_len(i), i));
    }
    let anchors: Vec<usize> = order[..=d].to_vec();
    let product: f64 = anchors.iter().map(|&i| inst.list_len(i) as f64).product();
    if product > code.size() {
        return exhaustive(code, inst, mode);
    }

    let mut rest: Vec<usize> = order[d + 1..].to_vec();
    rest.sort_by_key(|&i| (inst.list_len(i), i));
    let nodes: Vec<FieldElem> = anchors.iter().map(|&i| inst.positions()[i]).collect();
    let weights = rest
        .iter()
        .map(|&r| lagrange_weights(field, &nodes, inst.positions()[r]))
        .collect::<Result<Vec<_>>>()?;
    let plan = Plan {
        field,
        inst,
        anchor_lists: anchors.iter().map(|&i| inst.list(i)).collect(),
        anchors,
        rest,
        weights,
    };

    let first = &plan.anchor_lists[0];
    let tally = if product > PARALLEL_TUPLES {
        let blocks: Vec<Tally> = first
            .par_iter()
            .map(|&y0| plan.run_block(y0, mode))
            .collect();
        let mut total = Tally::default();
        for b in blocks {
            total.count += b.count;
            let room = mode.cap().saturating_sub(total.witnesses.len());
            total.witnesses.extend(b.witnesses.into_iter().take(room));
            if matches!(mode, Mode::Decide) && total.count > 0 {
                break;
            }
        }
        total
    } else {
        let mut total = Tally::default();
        for &y0 in first {
            let b = plan.run_block(y0, mode);
            total.count += b.count;
            let room = mode.cap().saturating_sub(total.witnesses.len());
            total.witnesses.extend(b.witnesses.into_iter().take(room));
            if matches!(mode, Mode::Decide) && total.count > 0 {
                break;
            }
        }
        total
    };

    let count = if matches!(mode, Mode::Decide) {
        tally.count.min(1)
    } else {
        tally.count
    };
    Ok(RecoveryResult {
        found: tally.count > 0,
        count,
        witnesses: tally.witnesses,
    })
}

impl Plan<'_> {
    /// All anchor tuples whose first value is `y0`.
    fn run_block(&self, y0: FieldElem, mode: Mode) -> Tally {
        let m = self.rest.len();
        let depth = self.anchors.len();
        let f = self.field;
        // partial[k][r] = sum_{j<=k} y_j L_j(x_r)
        let mut partial = vec![vec![FieldElem::ZERO; m]; depth];
        let mut ys = vec![FieldElem::ZERO; depth];
        let mut tally = Tally::default();
        ys[0] = y0;
        for r in 0..m {
            partial[0][r] = f.mul(y0, self.weights[r][0]);
        }
        self.descend(1, &mut partial, &mut ys, mode, &mut tally);
        tally
    }

    fn descend(
        &self,
        k: usize,
        partial: &mut Vec<Vec<FieldElem>>,
        ys: &mut Vec<FieldElem>,
        mode: Mode,
        tally: &mut Tally,
    ) -> bool {
        let f = self.field;
        let depth = self.anchors.len();
        if k == depth {
            // leaf: the full sums are already in partial[depth-1]
            let last = &partial[depth - 1];
            let ok = self
                .rest
                .iter()
                .zip(last)
                .all(|(&pos, &v)| self.inst.contains(pos, v));
            if ok {
                tally.count += 1;
                if tally.witnesses.len() < mode.cap() {
                    let pts: Vec<_> = self
                        .anchors
                        .iter()
                        .zip(ys.iter())
                        .map(|(&i, &y)| (self.inst.positions()[i], y))
                        .collect();
                    tally
                        .witnesses
                        .push(interpolate(f, &pts).expect("anchor positions are distinct"));
                }
                return matches!(mode, Mode::Decide);
            }
            return false;
        }
        let m = self.rest.len();
        for &y in &self.anchor_lists[k] {
            ys[k] = y;
            let (done, cur) = partial.split_at_mut(k);
            let prev = &done[k - 1];
            let cur = &mut cur[0];
            if k + 1 == depth {
                // last anchor: fuse the update with the membership check
                let mut ok = true;
                for r in 0..m {
                    let v = f.add(prev[r], f.mul(y, self.weights[r][k]));
                    cur[r] = v;
                    if !self.inst.contains(self.rest[r], v) {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                tally.count += 1;
                if tally.witnesses.len() < mode.cap() {
                    let pts: Vec<_> = self
                        .anchors
                        .iter()
                        .zip(ys.iter())
                        .map(|(&i, &y)| (self.inst.positions()[i], y))
                        .collect();
                    tally
                        .witnesses
                        .push(interpolate(f, &pts).expect("anchor positions are distinct"));
                }
                if matches!(mode, Mode::Decide) {
                    return true;
                }
            } else {
                for r in 0..m {
                    cur[r] = f.add(prev[r], f.mul(y, self.weights[r][k]));
                }
                if self.descend(k + 1, partial, ys, mode, tally) {
                    return true;
                }
            }
        }
        false
    }
}

/// Walk all q^{d+1} codewords; used when the anchor product is larger.
fn exhaustive(code: &RsCode, inst: &Instance, mode: Mode) -> Result<RecoveryResult> {
    let mut tally = Tally::default();
    for w in code.codewords()? {
        if w.values.iter().enumerate().all(|(i, &v)| inst.contains(i, v)) {
            tally.count += 1;
            if tally.witnesses.len() < mode.cap() {
                tally.witnesses.push(w.coeffs);
            }
            if matches!(mode, Mode::Decide) {
                break;
            }
        }
    }
    Ok(RecoveryResult {
        found: tally.count > 0,
        count: tally.count,
        witnesses: tally.witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub max: usize,
    /// Coefficients of one codeword attaining the maximum.
    pub witness: Vec<FieldElem>,
}

/// max over codewords w of #{i : w_i in A_i}, by exhaustive enumeration.
///
/// The constant coefficient is handled in bulk: for fixed c_1..c_d with
/// values b_i, the shift c_0 agrees at position i iff c_0 is in A_i - b_i, so
/// one pass over the lists yields the agreement of all q shifts at once.
pub fn max_agreement(code: &RsCode, inst: &Instance) -> Result<Agreement> {
    check_compatible(code, inst)?;
    if code.size() > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            size: code.size(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let f = code.field();
    let q = f.q() as usize;
    let n = inst.n();
    let d = code.degree();
    let lists = inst.lists();
    let xs = inst.positions();

    let mut best = Agreement {
        max: 0,
        witness: vec![FieldElem::ZERO; d + 1],
    };
    let mut hist = vec![0usize; q];
    let mut high = vec![FieldElem::ZERO; d]; // c_1..c_d
    loop {
        hist.iter_mut().for_each(|h| *h = 0);
        for i in 0..n {
            let mut b = FieldElem::ZERO;
            for &c in high.iter().rev() {
                b = f.mul(f.add(b, c), xs[i]);
            }
            for &z in &lists[i] {
                hist[f.sub(z, b).0 as usize] += 1;
            }
        }
        let (c0, &agree) = hist
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("q >= 2");
        if agree > best.max {
            best.max = agree;
            best.witness = std::iter::once(FieldElem(c0 as u32))
                .chain(high.iter().copied())
                .collect();
            if agree == n {
                break;
            }
        }
        // odometer over c_1..c_d
        let mut carry = true;
        for c in high.iter_mut() {
            if (c.0 as usize) + 1 < q {
                c.0 += 1;
                carry = false;
                break;
            }
            c.0 = 0;
        }
        if carry {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(xs: &[u32]) -> Vec<FieldElem> {
        xs.iter().map(|&x| FieldElem(x)).collect()
    }

    fn brute_count(code: &RsCode, inst: &Instance) -> u64 {
        code.codewords()
            .unwrap()
            .filter(|w| w.values.iter().enumerate().all(|(i, &v)| inst.contains(i, v)))
            .count() as u64
    }

    #[test]
    fn gf3_lists_zero_one() {
        let f = Field::gf(3, 1).unwrap();
        let code = RsCode::full(&f, 1).unwrap();
        let inst = Instance::from_lists(&f, &vec![fe(&[0, 1]); 3]).unwrap();
        assert!(decide(&code, &inst).unwrap());
        let res = count(&code, &inst, 16).unwrap();
        assert_eq!(res.count, 2);
        assert_eq!(brute_count(&code, &inst), 2);
        let mut wit = res.witnesses.clone();
        wit.sort();
        assert_eq!(wit, vec![fe(&[0, 0]), fe(&[1, 0])]);
        assert_eq!(max_agreement(&code, &inst).unwrap().max, 3);
    }

    #[test]
    fn empty_and_full_lists() {
        let f = Field::gf(5, 1).unwrap();
        let code = RsCode::full(&f, 1).unwrap();
        let all: Vec<FieldElem> = f.elements().collect();
        let mut lists = vec![all.clone(); 5];
        let full = Instance::from_lists(&f, &lists).unwrap();
        assert!(decide(&code, &full).unwrap());
        assert_eq!(count(&code, &full, 0).unwrap().count, 25);
        assert_eq!(max_agreement(&code, &full).unwrap().max, 5);

        lists[3].clear();
        let holed = Instance::from_lists(&f, &lists).unwrap();
        assert!(!decide(&code, &holed).unwrap());
        assert_eq!(count(&code, &holed, 4).unwrap().count, 0);

        let none = Instance::from_lists(&f, &vec![Vec::new(); 5]).unwrap();
        assert_eq!(max_agreement(&code, &none).unwrap().max, 0);
    }

    #[test]
    fn lines_through_origin_point() {
        let f = Field::gf(5, 1).unwrap();
        let code = RsCode::full(&f, 1).unwrap();
        let all: Vec<FieldElem> = f.elements().collect();
        let mut lists = vec![all; 5];
        lists[0] = fe(&[0]);
        let inst = Instance::from_lists(&f, &lists).unwrap();
        assert_eq!(count(&code, &inst, 0).unwrap().count, 5);
        assert_eq!(brute_count(&code, &inst), 5);
    }

    #[test]
    fn degenerate_full_degree() {
        let f = Field::gf(3, 1).unwrap();
        let code = RsCode::full(&f, 2).unwrap();
        let inst = Instance::from_lists(&f, &[fe(&[0, 2]), fe(&[1]), fe(&[0, 1, 2])]).unwrap();
        let res = count(&code, &inst, 16).unwrap();
        assert_eq!(res.count, 6);
        assert_eq!(res.witnesses.len(), 6);
        assert_eq!(brute_count(&code, &inst), 6);
        for w in &res.witnesses {
            let cw = code.encode(w).unwrap();
            assert!(cw.values.iter().enumerate().all(|(i, &v)| inst.contains(i, v)));
        }
    }

    #[test]
    fn mismatched_code() {
        let f3 = Field::gf(3, 1).unwrap();
        let f5 = Field::gf(5, 1).unwrap();
        let inst = Instance::from_lists(&f5, &vec![fe(&[0]); 5]).unwrap();
        let code = RsCode::full(&f3, 1).unwrap();
        assert_eq!(decide(&code, &inst).unwrap_err(), Error::MismatchedField);
    }

    #[test]
    fn restrict_rules() {
        let f = Field::gf(5, 1).unwrap();
        let inst = Instance::from_lists(&f, &vec![fe(&[1, 2]); 5]).unwrap();
        assert_eq!(inst.restrict(inst.positions()).unwrap(), inst);
        assert!(matches!(inst.restrict(&[]), Err(Error::InvalidDegree { .. })));
        let short = inst.restrict(&fe(&[0, 1, 2])).unwrap();
        assert_eq!(short.n(), 3);
        assert_eq!(
            short.restrict(&fe(&[4])).unwrap_err(),
            Error::UnknownPosition(4)
        );
    }

    #[test]
    fn list_file_format() {
        let f = Field::gf(3, 1).unwrap();
        let inst = Instance::parse_lists(&f, "0,1\n\n2\n").unwrap();
        assert_eq!(inst.lists(), vec![fe(&[0, 1]), vec![], fe(&[2])]);
        assert_eq!(inst.to_lists_string(), "0,1\n\n2\n");
        assert!(Instance::parse_lists(&f, "0,3\n").is_err());
        assert!(Instance::parse_lists(&f, "a\n").is_err());
        let pts = parse_points(&f, "0,1\n2,2\n").unwrap();
        assert_eq!(pts, vec![(FieldElem(0), FieldElem(1)), (FieldElem(2), FieldElem(2))]);
    }

    #[test]
    fn max_agreement_witness_attains_max() {
        let f = Field::gf(7, 1).unwrap();
        let code = RsCode::full(&f, 2).unwrap();
        let inst = Instance::from_lists(
            &f,
            &[fe(&[1]), fe(&[3, 4]), fe(&[]), fe(&[0, 6]), fe(&[2]), fe(&[5]), fe(&[1, 2, 3])],
        )
        .unwrap();
        let a = max_agreement(&code, &inst).unwrap();
        let cw = code.encode(&a.witness).unwrap();
        let agree = cw.values.iter().enumerate().filter(|(i, &v)| inst.contains(*i, v)).count();
        assert_eq!(agree, a.max);
        let brute = code
            .codewords()
            .unwrap()
            .map(|w| w.values.iter().enumerate().filter(|(i, &v)| inst.contains(*i, v)).count())
            .max()
            .unwrap();
        assert_eq!(a.max, brute);
    }
}
