use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

use super::series::{GradedSeries, VarSet};
use super::subst::Substitution;

/// The elementary symmetric polynomial `e_k(x_1..x_n)`.
pub fn elementary_symmetric<R: CoeffRing>(ring: &R, vars: &Arc<VarSet>, order: u32, k: usize) -> GradedSeries<R> {
    let n = vars.len();
    let mut terms = Vec::new();
    let mut choose = |mask: u64| {
        if mask.count_ones() as usize == k {
            terms.push(((0..n).map(|b| ((mask >> b) & 1) as u32).collect(), ring.one()));
        }
    };
    for mask in 0..(1u64 << n) {
        choose(mask);
    }
    GradedSeries::from_terms(ring.clone(), vars.clone(), order, terms)
}

/// The restriction `γ_k -> e_k(t_1..t_n)`.
pub fn elementary_substitution<R: CoeffRing>(
    ring: &R,
    gammas: Arc<VarSet>,
    roots: &Arc<VarSet>,
    order: u32,
) -> Result<Substitution<R>> {
    let images = (1..=gammas.len())
        .map(|k| elementary_symmetric(ring, roots, order, k))
        .collect();
    Substitution::new(gammas, images)
}

/// A symmetric series rewritten in the elementary symmetric generators
/// `γ1..γn` (weights `1..n`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPresentation<R: CoeffRing> {
    series: GradedSeries<R>,
}

impl<R: CoeffRing> SymmetricPresentation<R> {
    pub fn series(&self) -> &GradedSeries<R> {
        &self.series
    }

    pub fn into_series(self) -> GradedSeries<R> {
        self.series
    }

    /// Substitutes `γ_k -> e_k` over the given roots.
    pub fn to_roots(&self, roots: &Arc<VarSet>) -> Result<GradedSeries<R>> {
        if roots.len() != self.series.vars().len() {
            return Err(Error::ShapeMismatch("root count differs from generator count".into()));
        }
        elementary_substitution(self.series.ring(), self.series.vars().clone(), roots, self.series.order())?
            .apply(&self.series)
    }
}

/// Rewrites a symmetric series in the Chern roots as a series in the
/// elementary symmetric polynomials, by repeatedly removing the leading
/// monomial.
pub fn to_elementary_basis<R: CoeffRing>(x: &GradedSeries<R>) -> Result<SymmetricPresentation<R>> {
    let roots = x.vars().clone();
    if roots.weights().iter().any(|&w| w != 1) {
        return Err(Error::InvalidInput("roots must have weight 1".into()));
    }
    if !x.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = roots.len();
    let ring = x.ring().clone();
    let order = x.order();
    let gammas = VarSet::elementary(n);
    let es: Vec<GradedSeries<R>> = (1..=n)
        .map(|k| elementary_symmetric(&ring, &roots, order, k))
        .collect();
    let mut products: HashMap<Vec<u32>, GradedSeries<R>> = HashMap::new();
    let mut rest = x.clone();
    let mut out = GradedSeries::zero(ring.clone(), gammas, order);
    let mut gamma_terms = Vec::new();
    loop {
        let lead = rest.terms().next().map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = lead else { break };
        let lambda = m.exps();
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        let g: Vec<u32> = (0..n)
            .map(|k| lambda[k] - lambda.get(k + 1).copied().unwrap_or(0))
            .collect();
        let prod = products.entry(g.clone()).or_insert_with(|| {
            let mut p = GradedSeries::one(ring.clone(), roots.clone(), order);
            for (k, &e) in g.iter().enumerate() {
                for _ in 0..e {
                    p = p.mul(&es[k]).expect("same shape");
                }
            }
            p
        });
        rest = rest.sub(&prod.scale(&c))?;
        gamma_terms.push((g, c));
    }
    out = out.add(&GradedSeries::from_terms(ring, out.vars().clone(), order, gamma_terms))?;
    Ok(SymmetricPresentation { series: out })
}
