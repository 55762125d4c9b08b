use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgl::FglTable;
use crate::gps::{
    elementary_substitution, eliminate, to_elementary_basis, Elimination, GradedSeries, Substitution, VarSet,
};
use crate::ring::CoeffRing;

use super::presentation::RingPresentation;

/// `Ω*(BT)` for a torus of rank `n`: the free ring on the Chern roots
/// `t1..tn`, where `t_k` is the first Chern class of `O(-1)` pulled back
/// along the `k`-th projection.
pub fn ring_bt<R: CoeffRing>(ring: R, n: usize, order: u32, degrees: &[i64]) -> Result<RingPresentation<R>> {
    RingPresentation::free(format!("BT{n}"), ring, VarSet::chern_roots(n), order, degrees)
}

/// `Ω*(BGL_n)` with its restriction to the maximal torus.
#[derive(Debug, Clone)]
pub struct GlRing<R: CoeffRing> {
    presentation: RingPresentation<R>,
    roots: Arc<VarSet>,
    restriction: Substitution<R>,
}

impl<R: CoeffRing> GlRing<R> {
    pub fn presentation(&self) -> &RingPresentation<R> {
        &self.presentation
    }

    pub fn roots(&self) -> &Arc<VarSet> {
        &self.roots
    }

    /// `γ_k -> e_k(t1..tn)`.
    pub fn restriction(&self) -> &Substitution<R> {
        &self.restriction
    }

    pub fn restrict(&self, x: &GradedSeries<R>) -> Result<GradedSeries<R>> {
        self.restriction.apply(x)
    }
}

pub fn ring_bgl<R: CoeffRing>(ring: R, n: usize, order: u32, degrees: &[i64]) -> Result<GlRing<R>> {
    let gammas = VarSet::elementary(n);
    let roots = VarSet::chern_roots(n);
    let restriction = elementary_substitution(&ring, gammas.clone(), &roots, order)?;
    let presentation = RingPresentation::free(format!("BGL{n}"), ring, gammas, order, degrees)?;
    Ok(GlRing {
        presentation,
        roots,
        restriction,
    })
}

/// `Ω*(BSL_n)`: `Ω*(BGL_n)` modulo the first Chern class of the
/// determinant, with `γ1` eliminated.
#[derive(Debug, Clone)]
pub struct SlRing<R: CoeffRing> {
    presentation: RingPresentation<R>,
    gl: GlRing<R>,
    relation: GradedSeries<R>,
    elimination: Elimination<R>,
}

impl<R: CoeffRing> SlRing<R> {
    /// The quotient, on generators `γ2..γn`.
    pub fn presentation(&self) -> &RingPresentation<R> {
        &self.presentation
    }

    pub fn gl(&self) -> &GlRing<R> {
        &self.gl
    }

    /// `c1(det) = t1 +F ... +F tn` in the `γ` generators.
    pub fn relation(&self) -> &GradedSeries<R> {
        &self.relation
    }

    pub fn elimination(&self) -> &Elimination<R> {
        &self.elimination
    }
}

/// `t1 +F t2 +F ... +F tn`.
pub fn determinant_class<R: CoeffRing>(law: &FglTable<R>, roots: &Arc<VarSet>, order: u32) -> Result<GradedSeries<R>> {
    let ring = law.ring().clone();
    let mut acc = GradedSeries::zero(ring.clone(), roots.clone(), order);
    for k in 0..roots.len() {
        acc = law.sum(&acc, &GradedSeries::var(ring.clone(), roots.clone(), order, k))?;
    }
    Ok(acc)
}

pub fn ring_bsl<R: CoeffRing>(law: &FglTable<R>, n: usize, order: u32, degrees: &[i64]) -> Result<SlRing<R>> {
    if n == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let ring = law.ring().clone();
    let gl = ring_bgl(ring.clone(), n, order, degrees)?;
    let det = determinant_class(law, gl.roots(), order)?;
    let relation = to_elementary_basis(&det)?.into_series();
    let elimination = eliminate(&relation, 0)?;
    let rest = gl.presentation().generators().without(&[0]);
    let presentation = RingPresentation::free(format!("BSL{n}"), ring, rest, order, degrees)?;
    Ok(SlRing {
        presentation,
        gl,
        relation,
        elimination,
    })
}

/// `c1` of the line bundle of the character `n1 χ1 + ... + nn χn`:
/// `[n1](t1) +F ... +F [nn](tn)`.
pub fn chern_of_character<R: CoeffRing>(
    law: &FglTable<R>,
    chi: &[i64],
    roots: &Arc<VarSet>,
    order: u32,
) -> Result<GradedSeries<R>> {
    if chi.len() != roots.len() {
        return Err(Error::ShapeMismatch(format!(
            "character has {} entries for a torus of rank {}",
            chi.len(),
            roots.len()
        )));
    }
    let ring = law.ring().clone();
    let mut cache = HashMap::new();
    let mut acc = GradedSeries::zero(ring.clone(), roots.clone(), order);
    for (k, &nk) in chi.iter().enumerate() {
        if nk == 0 {
            continue;
        }
        if !cache.contains_key(&nk) {
            cache.insert(nk, law.n_series(nk, order)?);
        }
        let tk = GradedSeries::var(ring.clone(), roots.clone(), order, k);
        acc = law.sum(&acc, &cache[&nk].evaluate(&tk)?)?;
    }
    Ok(acc)
}

/// A homomorphism of tori `T -> T'`, recorded on characters: row `j`
/// expresses the pullback of the `j`-th basis character of `T'` in the
/// basis of characters of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMap {
    source_rank: usize,
    rows: Vec<Vec<i64>>,
}

impl CharacterMap {
    pub fn new(source_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != source_rank) {
            return Err(Error::ShapeMismatch("every row needs one entry per source character".into()));
        }
        Ok(CharacterMap { source_rank, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        CharacterMap { source_rank: n, rows }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &CharacterMap) -> Result<CharacterMap> {
        if then.source_rank != self.target_rank() {
            return Err(Error::ShapeMismatch("maps do not compose".into()));
        }
        let rows = then
            .rows
            .iter()
            .map(|r| {
                (0..self.source_rank)
                    .map(|c| r.iter().zip(&self.rows).map(|(a, row)| a * row[c]).sum())
                    .collect()
            })
            .collect();
        Ok(CharacterMap {
            source_rank: self.source_rank,
            rows,
        })
    }

    /// The pullback `Ω*(BT') -> Ω*(BT)` on Chern roots.
    pub fn pullback<R: CoeffRing>(
        &self,
        law: &FglTable<R>,
        target_roots: Arc<VarSet>,
        source_roots: &Arc<VarSet>,
        order: u32,
    ) -> Result<Substitution<R>> {
        if target_roots.len() != self.target_rank() || source_roots.len() != self.source_rank {
            return Err(Error::ShapeMismatch("root sets do not match the map".into()));
        }
        let images = self
            .rows
            .iter()
            .map(|r| chern_of_character(law, r, source_roots, order))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(target_roots, images)
    }
}
