//! Integer lattices: Hermite normal form, integral kernels and ranks.
//!
//! Vectors are dense `Vec<BigInt>` rows. The Hermite form used throughout is
//! the row-style one: pivot columns strictly increase, pivots are positive,
//! and entries above a pivot lie in `[0, pivot)`. This makes the form unique
//! for a given lattice, which the Lazard tables rely on for determinism.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;

/// `target -= q * source`, skipping zero entries of `source`.
fn sub_mul(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = -std::mem::take(x);
        }
    }
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vec(width: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); width];
    v[i] = BigInt::one();
    v
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Row-reduces `m` into Hermite normal form in place. When `transform` is
/// given it must start as a matrix with as many rows as `m`; every row
/// operation is mirrored onto it, so on return `transform * m_original = m`.
///
/// Returns the pivot columns; rows past `pivots.len()` are zero.
fn hermite_in_place(m: &mut [IntVec], mut transform: Option<&mut [IntVec]>) -> Vec<usize> {
    let nrows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == nrows {
            break;
        }
        loop {
            // Smallest nonzero entry of column c at or below row r becomes the pivot.
            let best = (r..nrows)
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(r, best);
            }
            let mut clean = true;
            for k in r + 1..nrows {
                if m[k][c].is_zero() {
                    continue;
                }
                let q = m[k][c].div_floor(&m[r][c]);
                let (head, tail) = m.split_at_mut(k);
                sub_mul(&mut tail[0], &q, &head[r]);
                if let Some(t) = transform.as_deref_mut() {
                    let (th, tt) = t.split_at_mut(k);
                    sub_mul(&mut tt[0], &q, &th[r]);
                }
                if !m[k][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            negate(&mut m[r]);
            if let Some(t) = transform.as_deref_mut() {
                negate(&mut t[r]);
            }
        }
        for k in 0..r {
            if m[k][c].is_zero() {
                continue;
            }
            let q = m[k][c].div_floor(&m[r][c]);
            let (head, tail) = m.split_at_mut(r);
            sub_mul(&mut head[k], &q, &tail[0]);
            if let Some(t) = transform.as_deref_mut() {
                let (th, tt) = t.split_at_mut(r);
                sub_mul(&mut th[k], &q, &tt[0]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A lattice in `Z^width` stored by its Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    width: usize,
    rows: Vec<IntVec>,
    pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn new(width: usize) -> Self {
        HermiteForm {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The lattice spanned by `rows`.
    pub fn from_rows(width: usize, mut rows: Vec<IntVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == width));
        rows.retain(|r| !is_zero_vec(r));
        let pivots = hermite_in_place(&mut rows, None);
        rows.truncate(pivots.len());
        HermiteForm {
            width,
            rows,
            pivots,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` to the canonical representative of its coset modulo the
    /// lattice. Returns true when the result is zero, i.e. `v` lies in it.
    pub fn reduce(&self, v: &mut [BigInt]) -> bool {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let q = v[c].div_floor(&row[c]);
            sub_mul(v, &q, row);
        }
        is_zero_vec(v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w)
    }

    /// True when `other` is a sublattice of `self`.
    pub fn contains_lattice(&self, other: &HermiteForm) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Hermite form with the unimodular transform: returns `(h, u, rank)` with
/// `u * m = h` and rows `rank..` of `h` zero.
pub fn hermite_with_transform(m: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>, usize) {
    let n = m.len();
    let mut h = m.to_vec();
    let mut u: Vec<IntVec> = (0..n).map(|i| unit_vec(n, i)).collect();
    let pivots = hermite_in_place(&mut h, Some(&mut u));
    let rank = pivots.len();
    (h, u, rank)
}

pub fn transpose(m: &[IntVec], width: usize) -> Vec<IntVec> {
    (0..width)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Basis (in Hermite form) of `{ v in Z^width : r . v = 0 for every row r }`.
pub fn integer_kernel(rows: &[IntVec], width: usize) -> HermiteForm {
    if rows.is_empty() {
        return HermiteForm::from_rows(width, (0..width).map(|i| unit_vec(width, i)).collect());
    }
    let t = transpose(rows, width);
    let (_, u, rank) = hermite_with_transform(&t);
    HermiteForm::from_rows(width, u[rank..].to_vec())
}

/// Rank over Q of the span of `rows`.
pub fn rank(width: usize, rows: Vec<IntVec>) -> usize {
    HermiteForm::from_rows(width, rows).rank()
}

/// For a `k x width` matrix `p` mapping onto `Z^k`, returns integer vectors
/// `b_i` with `p b_i = e_i`, or `None` if `p` is not surjective.
pub fn right_inverse(p: &[IntVec], width: usize) -> Option<Vec<IntVec>> {
    let k = p.len();
    if k == 0 {
        return Some(Vec::new());
    }
    // W p^T = H; with H's top block equal to I, row i of W solves p w = e_i.
    let t = transpose(p, width);
    let (h, w, rank) = hermite_with_transform(&t);
    if rank != k {
        return None;
    }
    for (i, row) in h.iter().take(k).enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expected = if i == j { BigInt::one() } else { BigInt::zero() };
            if *x != expected {
                return None;
            }
        }
    }
    Some(w.into_iter().take(k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_form_is_reduced() {
        let h = HermiteForm::from_rows(3, vec![v(&[2, 4, 1]), v(&[3, 6, 0]), v(&[0, 0, 5])]);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.pivots(), &[0, 2]);
        assert_eq!(h.rows()[0], v(&[1, 2, 0]));
        assert_eq!(h.rows()[1], v(&[0, 0, 1]));
        assert!(h.contains(&v(&[5, 10, -7])));
        assert!(!h.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn saturation_via_kernel_of_annihilator() {
        // span{(2, 0)} has index 2 in its saturation span{(1, 0)}
        let r = HermiteForm::from_rows(2, vec![v(&[2, 0])]);
        let ann = integer_kernel(r.rows(), 2);
        let sat = integer_kernel(ann.rows(), 2);
        assert!(!r.contains_lattice(&sat));
        // (2, 1) is primitive although its pivot is 2
        let r = HermiteForm::from_rows(2, vec![v(&[2, 1])]);
        let ann = integer_kernel(r.rows(), 2);
        let sat = integer_kernel(ann.rows(), 2);
        assert!(r.contains_lattice(&sat));
    }

    #[test]
    fn transform_reproduces_hermite_form() {
        let m = vec![v(&[4, 6, 2]), v(&[6, 9, 3]), v(&[1, 1, 1])];
        let (h, u, rank) = hermite_with_transform(&m);
        assert_eq!(rank, 2);
        for (i, urow) in u.iter().enumerate() {
            let prod: IntVec = (0..3)
                .map(|c| (0..3).map(|k| &urow[k] * &m[k][c]).sum())
                .collect();
            assert_eq!(prod, h[i]);
        }
    }

    #[test]
    fn kernel_of_swap_minus_identity() {
        // (sigma - id) for the swap on span{t1, t2}
        let rows = vec![v(&[-1, 1]), v(&[1, -1])];
        let k = integer_kernel(&rows, 2);
        assert_eq!(k.rows(), &[v(&[1, 1])]);
    }

    #[test]
    fn right_inverse_solves_surjective_systems() {
        let p = vec![v(&[2, 3, 0]), v(&[0, 0, 1])];
        let lifts = right_inverse(&p, 3).unwrap();
        for (i, b) in lifts.iter().enumerate() {
            for (j, row) in p.iter().enumerate() {
                assert_eq!(dot(row, b), BigInt::from((i == j) as i64));
            }
        }
        assert!(right_inverse(&[v(&[2, 4])], 2).is_none());
    }
}
