use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gps::{GradedSeries, VarSet};
use crate::lattice::{integer_kernel, rank, HermiteForm, IntVec};
use crate::ring::CoeffRing;

use super::groups::GlRing;

/// A group of permutations of the variables, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    n: usize,
    generators: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn new(n: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for g in &generators {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
                return Err(Error::InvalidInput(format!("{g:?} is not a permutation of {n} points")));
            }
        }
        Ok(PermutationGroup { n, generators })
    }

    pub fn trivial(n: usize) -> Self {
        PermutationGroup {
            n,
            generators: Vec::new(),
        }
    }

    /// `S_n`, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let generators = (0..n.saturating_sub(1))
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(k, k + 1);
                p
            })
            .collect();
        PermutationGroup { n, generators }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }
}

/// Invariants in the slice of series whose terms are monomials of degree
/// `t_degree` with coefficients of codegree `codegree`. Vectors are
/// coordinates in `monomials_of_degree(t_degree) x graded_basis(codegree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSlice {
    pub t_degree: u32,
    pub codegree: i64,
    pub ambient_rank: usize,
    pub basis: Vec<IntVec>,
}

impl InvariantSlice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_series<R: CoeffRing>(&self, ring: &R, vars: &Arc<VarSet>, order: u32) -> Result<Vec<GradedSeries<R>>> {
        self.basis
            .iter()
            .map(|v| GradedSeries::from_slice_coordinates(ring.clone(), vars.clone(), order, self.t_degree, self.codegree, v))
            .collect()
    }
}

/// Every slice with `t_degree <= order` and `0 <= codegree <= max_codegree`.
pub fn slice_window(order: u32, max_codegree: i64) -> Vec<(u32, i64)> {
    (0..=order)
        .flat_map(|p| (0..=max_codegree).map(move |c| (p, c)))
        .collect()
}

fn coefficient_rank<R: CoeffRing>(ring: &R, codegree: i64) -> Result<usize> {
    ring.graded_basis(codegree)
        .map(|b| b.len())
        .ok_or(Error::InsufficientTable {
            required: codegree.max(0) as usize,
            available: ring.depth().unwrap_or(0).max(0) as usize,
        })
}

/// The fixed lattice of `group` in each requested slice. The group acts on
/// monomials only, so the kernel of `σ - id` is computed on monomials and
/// tensored with the coefficient basis.
pub fn weyl_invariants<R: CoeffRing>(
    group: &PermutationGroup,
    ring: &R,
    vars: &Arc<VarSet>,
    slices: &[(u32, i64)],
) -> Result<Vec<InvariantSlice>> {
    if vars.len() != group.degree() {
        return Err(Error::ShapeMismatch("group and variables disagree".into()));
    }
    let mut kernels: HashMap<u32, Vec<IntVec>> = HashMap::new();
    let mut out = Vec::new();
    for &(p, c) in slices {
        let monos = vars.monomials_of_degree(p);
        let width = monos.len();
        let fixed = kernels.entry(p).or_insert_with(|| {
            let index: HashMap<Vec<u32>, usize> = monos
                .iter()
                .enumerate()
                .map(|(k, m)| (m.exps().to_vec(), k))
                .collect();
            let mut rows = Vec::new();
            for sigma in group.generators() {
                for (a, m) in monos.iter().enumerate() {
                    let mut e = vec![0; vars.len()];
                    for (k, &x) in m.exps().iter().enumerate() {
                        e[sigma[k]] = x;
                    }
                    let b = index[&e];
                    if a != b {
                        let mut row = vec![BigInt::zero(); width];
                        row[a] = BigInt::one();
                        row[b] = -BigInt::one();
                        rows.push(row);
                    }
                }
            }
            integer_kernel(&rows, width).rows().to_vec()
        });
        let r = coefficient_rank(ring, c)?;
        let mut basis = Vec::new();
        for v in fixed.iter() {
            for k in 0..r {
                let mut w = vec![BigInt::zero(); width * r];
                for (m, x) in v.iter().enumerate() {
                    w[m * r + k] = x.clone();
                }
                basis.push(w);
            }
        }
        let basis = HermiteForm::from_rows(width * r, basis).rows().to_vec();
        out.push(InvariantSlice {
            t_degree: p,
            codegree: c,
            ambient_rank: width * r,
            basis,
        });
    }
    Ok(out)
}

/// Comparison of a Weyl-invariant slice with the image of `Ω*(BGL_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceComparison {
    pub t_degree: u32,
    pub codegree: i64,
    pub invariant_rank: usize,
    pub image_rank: usize,
    /// Equal spans over the rationals.
    pub rational_equal: bool,
    /// Equal lattices over the integers.
    pub integral_equal: bool,
}

/// Restricts the `γ`-monomials of weighted degree `p` times the coefficient
/// basis in codegree `c`, and compares the span with the invariants.
pub fn compare_with_gl<R: CoeffRing>(gl: &GlRing<R>, invariants: &[InvariantSlice]) -> Result<Vec<SliceComparison>> {
    let pres = gl.presentation();
    let ring = pres.ring();
    let gammas = pres.generators();
    let order = pres.order();
    let mut restricted: HashMap<u32, Vec<GradedSeries<R>>> = HashMap::new();
    let mut out = Vec::new();
    for inv in invariants {
        let (p, c) = (inv.t_degree, inv.codegree);
        if p > order {
            return Err(Error::TruncationMismatch(format!("slice degree {p} is past order {order}")));
        }
        if !restricted.contains_key(&p) {
            let images = gammas
                .monomials_of_degree(p)
                .into_iter()
                .map(|m| {
                    let g = GradedSeries::from_terms(ring.clone(), gammas.clone(), order, [(m.exps().to_vec(), ring.one())]);
                    gl.restrict(&g)
                })
                .collect::<Result<Vec<_>>>()?;
            restricted.insert(p, images);
        }
        let coeffs = ring.graded_basis(c).ok_or(Error::InsufficientTable {
            required: c.max(0) as usize,
            available: ring.depth().unwrap_or(0).max(0) as usize,
        })?;
        let mut image = Vec::new();
        for e in &restricted[&p] {
            for b in &coeffs {
                image.push(e.scale(b).slice_coordinates(p, c));
            }
        }
        let width = inv.ambient_rank;
        let image_rank = rank(width, image.clone());
        let invariant_rank = inv.rank();
        let mut both = image.clone();
        both.extend(inv.basis.iter().cloned());
        let joint = rank(width, both);
        let rational_equal = image_rank == invariant_rank && joint == image_rank;
        let integral_equal = HermiteForm::from_rows(width, image).rows() == inv.basis.as_slice();
        out.push(SliceComparison {
            t_degree: p,
            codegree: c,
            invariant_rank,
            image_rank,
            rational_equal,
            integral_equal,
        });
    }
    Ok(out)
}
