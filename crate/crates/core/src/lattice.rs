//! Integer lattices: row Hermite normal form, kernels and membership.
//!
//! Vectors are rows of `BigInt`. The Hermite form used here is the
//! row-style one: pivots strictly move right, each pivot is positive and the
//! entries above a pivot lie in `[0, pivot)`. It is unique for a lattice, so
//! two generating sets span the same lattice iff their forms coincide.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntVector = Vec<BigInt>;

/// Brings `rows[start..]` into echelon form over the columns `0..pivot_cols`
/// using unimodular row operations only. Returns the pivot list `(row, col)`.
fn echelon(rows: &mut [IntVector], pivot_cols: usize, reduce_above: bool) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| among rows next.. in this column
            let best = (next..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            rows.swap(next, best);
            let mut done = true;
            for i in next + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[next][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[next], &q);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[next][col].is_zero() {
            continue;
        }
        if rows[next][col].is_negative() {
            for x in rows[next].iter_mut() {
                *x = -&*x;
            }
        }
        if reduce_above {
            for i in 0..next {
                let q = rows[i][col].div_floor(&rows[next][col]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(next);
                    sub_scaled(&mut head[i], &tail[0], &q);
                }
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    pivots
}

fn sub_scaled(target: &mut IntVector, source: &IntVector, q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row Hermite normal form of the lattice spanned by `vectors` (zero rows dropped).
pub fn hermite_normal_form(vectors: &[IntVector]) -> Vec<IntVector> {
    let Some(width) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<IntVector> = vectors.to_vec();
    let pivots = echelon(&mut rows, width, true);
    rows.truncate(pivots.len());
    rows
}

/// Basis (in Hermite normal form) of `{ v in Z^ncols : A v = 0 }`.
///
/// The kernel of an integer matrix is saturated: every integer vector in its
/// rational span is an integer combination of the returned basis.
pub fn integer_kernel(matrix: &[IntVector], ncols: usize) -> Vec<IntVector> {
    let m = matrix.len();
    // rows of [A^T | I]
    let mut rows: Vec<IntVector> = (0..ncols)
        .map(|j| {
            let mut r: IntVector = matrix.iter().map(|row| row[j].clone()).collect();
            r.extend((0..ncols).map(|k| if k == j { BigInt::from(1) } else { BigInt::zero() }));
            r
        })
        .collect();
    let rank = echelon(&mut rows, m, false).len();
    let kernel: Vec<IntVector> = rows[rank..].iter().map(|r| r[m..].to_vec()).collect();
    hermite_normal_form(&kernel)
}

/// A sublattice of `Z^n` stored by its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    width: usize,
    basis: Vec<IntVector>,
}

impl Lattice {
    pub fn from_generators(width: usize, generators: &[IntVector]) -> Self {
        Lattice { width, basis: hermite_normal_form(generators) }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.width {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let col = row.iter().position(|x| !x.is_zero())?;
            // entries left of the pivot must already be cleared
            if rest[..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return None;
            }
            sub_scaled(&mut rest, row, &q);
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}
