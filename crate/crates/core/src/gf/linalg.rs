use super::{Field, FieldElem};
use crate::error::{Error, Result};

fn check(field: &Field, rows: &[Vec<FieldElem>], cols: usize) -> Result<()> {
    for row in rows {
        if row.len() != cols {
            return Err(Error::RaggedMatrix);
        }
        if let Some(bad) = row.iter().find(|e| !field.contains(**e)) {
            return Err(Error::MixedFields {
                value: bad.0,
                q: field.q(),
            });
        }
    }
    Ok(())
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(field: &Field, m: &mut [Vec<FieldElem>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = field.inv(m[row][col]).expect("pivot is nonzero");
        for c in 0..cols {
            m[row][c] = field.mul(m[row][c], inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col];
                for c in 0..cols {
                    let t = field.mul(factor, m[row][c]);
                    m[r][c] = field.sub(m[r][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<FieldElem>], cols: usize) -> Result<usize> {
    check(field, rows, cols)?;
    let mut m = rows.to_vec();
    Ok(rref(field, &mut m, cols).len())
}

/// Basis of {v : M v = 0} for an r x c matrix given by rows.
///
/// One vector per free column: the free coordinate is 1, the other free
/// coordinates are 0, and pivot coordinates are solved from the RREF.
pub fn nullspace(field: &Field, rows: &[Vec<FieldElem>], cols: usize) -> Result<Vec<Vec<FieldElem>>> {
    check(field, rows, cols)?;
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldElem::ZERO; cols];
            v[free] = FieldElem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][free]);
            }
            v
        })
        .collect();
    Ok(basis)
}
