//! Ring maps out of the Lazard ring, classified by formal group laws on the
//! target: additive for Chow groups, multiplicative for K-theory.
//!
//! Everything is truncated, so the completed tensor product is modelled
//! levelwise: apply the map at a fixed truncation, and compare levels by
//! truncating.

use std::sync::Arc;

use num_traits::Zero;

use crate::classifying::{free_piece, RingPresentation};
use crate::error::{Error, Result};
use crate::fgl::{FglTable, UniSeries};
use crate::gps::GradedSeries;
use crate::lazard::{LazardBasisTable, LazardElement, LazardRing};
use crate::ring::CoeffRing;

/// The map `L -> S` sending `a_ij` to the coefficient `b_ij` of a law on `S`.
#[derive(Debug, Clone)]
pub struct SpecializationMap<S: CoeffRing> {
    table: Arc<LazardBasisTable>,
    target: FglTable<S>,
    /// Images of the canonical basis, per codegree.
    images: Vec<Vec<S::Elem>>,
}

/// Builds the map, checking that every harvested Lazard relation is killed.
pub fn make_specialization<S: CoeffRing>(
    target: &FglTable<S>,
    table: Arc<LazardBasisTable>,
) -> Result<SpecializationMap<S>> {
    let n = table.max_codegree();
    if (target.order() as usize) < n + 1 {
        return Err(Error::TruncationMismatch(format!(
            "a table of depth {n} needs a target law of order {}",
            n + 1
        )));
    }
    let ring = target.ring();
    let value = |g: crate::lazard::Generator| target.coefficient(g.i, g.j);
    for d in 0..=n {
        for (index, r) in table.relations(d).iter().enumerate() {
            if !ring.is_zero(&r.eval_in(ring, value)) {
                return Err(Error::RelationNotKilled { codegree: d, index });
            }
        }
    }
    let images = (0..=n)
        .map(|d| table.basis_polys(d).iter().map(|b| b.eval_in(ring, value)).collect())
        .collect();
    Ok(SpecializationMap {
        table,
        target: target.clone(),
        images,
    })
}

impl<S: CoeffRing> SpecializationMap<S> {
    pub fn target(&self) -> &FglTable<S> {
        &self.target
    }

    pub fn ring(&self) -> &S {
        self.target.ring()
    }

    pub fn table(&self) -> &Arc<LazardBasisTable> {
        &self.table
    }

    pub fn apply(&self, x: &LazardElement) -> Result<S::Elem> {
        if x.table_id() != self.table.fingerprint() {
            return Err(Error::MismatchedTable);
        }
        let ring = self.ring();
        let mut acc = ring.zero();
        for (&d, coords) in x.parts() {
            for (c, img) in coords.iter().zip(&self.images[d]) {
                if !c.is_zero() {
                    acc = ring.add(&acc, &ring.mul(&ring.from_int(c), img));
                }
            }
        }
        Ok(acc)
    }

    pub fn apply_series(&self, x: &GradedSeries<LazardRing>) -> Result<GradedSeries<S>> {
        if x.ring().table().fingerprint() != self.table.fingerprint() {
            return Err(Error::MismatchedTable);
        }
        Ok(x.map_coefficients(self.ring().clone(), |c| {
            self.apply(c).expect("coefficients share the table")
        }))
    }

    pub fn apply_uni(&self, x: &UniSeries<LazardRing>) -> Result<UniSeries<S>> {
        UniSeries::from_series(self.apply_series(x.series())?)
    }

    /// The law with every coefficient mapped.
    pub fn apply_law(&self, law: &FglTable<LazardRing>) -> Result<FglTable<S>> {
        let coeffs = law
            .coefficients()
            .map(|(&ij, c)| Ok((ij, self.apply(c)?)))
            .collect::<Result<Vec<_>>>()?;
        FglTable::custom(self.ring().clone(), law.order(), coeffs)
    }

    /// Maps the relations and rebuilds each graded piece over the target.
    pub fn apply_presentation(&self, p: &RingPresentation<LazardRing>) -> Result<RingPresentation<S>> {
        let ring = self.ring().clone();
        let relations = p
            .relations()
            .iter()
            .map(|r| self.apply_series(r))
            .collect::<Result<Vec<_>>>()?;
        let pieces = p
            .pieces()
            .iter()
            .map(|piece| free_piece(&ring, p.generators(), p.order(), piece.degree()))
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(p.name(), ring, p.generators().clone(), relations, p.order(), pieces)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::classifying::{chern_of_character, ring_bgl, ring_bsl, ring_bt};
    use crate::gps::{eliminate, VarSet};
    use crate::ring::{Integers, LaurentBeta};

    fn table(depth: usize) -> Arc<LazardBasisTable> {
        Arc::new(LazardBasisTable::build(depth).unwrap())
    }

    #[test]
    fn additive_kills_every_generator() {
        let t = table(4);
        let s = make_specialization(&FglTable::additive(5), t.clone()).unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 2), (1, 4)] {
            assert!(s.apply(&t.generator(i, j)).unwrap().is_zero());
        }
        assert_eq!(s.apply(&t.one()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn multiplicative_sends_a11_to_minus_beta() {
        let t = table(4);
        let s = make_specialization(&FglTable::multiplicative(5), t.clone()).unwrap();
        assert_eq!(s.apply(&t.generator(1, 1)).unwrap(), LaurentBeta.beta_power(1, -1));
        for (i, j) in [(1, 2), (2, 1), (2, 2), (1, 3), (2, 3)] {
            assert_eq!(s.apply(&t.generator(i, j)).unwrap(), LaurentBeta.beta_power(0, 0));
        }
    }

    #[test]
    fn broken_target_is_refused() {
        let bad = FglTable::custom(
            LaurentBeta,
            5,
            [((1, 1), LaurentBeta.beta_power(1, 1)), ((2, 2), LaurentBeta.beta_power(3, 7))],
        )
        .unwrap();
        assert!(matches!(
            make_specialization(&bad, table(4)),
            Err(Error::RelationNotKilled { codegree: 3, .. })
        ));
        assert!(matches!(
            make_specialization(&FglTable::additive(3), table(4)),
            Err(Error::TruncationMismatch(_))
        ));
    }

    #[test]
    fn chow_ranks_of_classifying_spaces() {
        let t = table(6);
        let s = make_specialization(&FglTable::additive(7), t.clone()).unwrap();
        let l = LazardRing::new(t);
        let bt = s.apply_presentation(&ring_bt(l.clone(), 2, 4, &[0, 1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(bt.ranks(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let gl = ring_bgl(l.clone(), 2, 4, &[2]).unwrap();
        assert_eq!(s.apply_presentation(gl.presentation()).unwrap().rank(2), Some(2));

        let law = FglTable::universal(4, l.table().clone()).unwrap();
        let sl = ring_bsl(&law, 2, 4, &[0, 1, 2, 3, 4]).unwrap();
        let chow = s.apply_presentation(sl.presentation()).unwrap();
        assert_eq!(chow.ranks(), vec![(0, 1), (1, 0), (2, 1), (3, 0), (4, 1)]);
        let rel = s.apply_series(sl.relation()).unwrap();
        assert_eq!(rel.to_string(), "γ1");
    }

    #[test]
    fn multiplicative_two_series() {
        let t = table(2);
        let s = make_specialization(&FglTable::multiplicative(3), t.clone()).unwrap();
        let law = FglTable::universal(3, t).unwrap();
        let two = s.apply_uni(&law.n_series(2, 3).unwrap()).unwrap();
        assert_eq!(two.to_string(), "2*u - β*u^2");
    }

    #[test]
    fn additive_chern_class_is_linear() {
        let t = table(4);
        let s = make_specialization(&FglTable::additive(5), t.clone()).unwrap();
        let law = FglTable::universal(5, t).unwrap();
        let roots = VarSet::chern_roots(3);
        let c = chern_of_character(&law, &[2, -1, 3], &roots, 5).unwrap();
        assert_eq!(s.apply_series(&c).unwrap().to_string(), "2*t1 - t2 + 3*t3");
    }

    #[test]
    fn specialization_commutes_with_elimination() {
        let t = table(5);
        let law = FglTable::universal(6, t.clone()).unwrap();
        let s = make_specialization(&FglTable::multiplicative(6), t).unwrap();
        let sl = ring_bsl(&law, 3, 5, &[]).unwrap();
        let relation = s.apply_series(sl.relation()).unwrap();
        let mapped_solution = s.apply_series(sl.elimination().solution()).unwrap();
        assert_eq!(eliminate(&relation, 0).unwrap().solution(), &mapped_solution);

        let k_law = s.apply_law(&law.truncate(5).unwrap()).unwrap();
        let direct = ring_bsl(&k_law, 3, 5, &[]).unwrap();
        assert_eq!(direct.relation(), &relation);
    }

    fn lazard_series(t: &Arc<LazardBasisTable>, n: usize, order: u32, picks: &[(usize, usize, i64)]) -> GradedSeries<LazardRing> {
        let l = LazardRing::new(t.clone());
        let vars = VarSet::chern_roots(n);
        let monos: Vec<Vec<u32>> = (1..=order)
            .flat_map(|p| vars.monomials_of_degree(p))
            .map(|m| m.exps().to_vec())
            .collect();
        let terms = picks.iter().map(|&(m, k, c)| {
            let e = monos[m % monos.len()].clone();
            let p: u32 = e.iter().sum();
            // Homogeneous of degree 1: coefficient in codegree p - 1.
            let d = (p - 1) as usize;
            let b = t.basis_element(d, k % t.rank(d)).scale(&BigInt::from(c));
            (e, b)
        });
        GradedSeries::from_terms(l, vars, order, terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn specialization_is_functorial(
            n in 1usize..=3,
            xs in prop::collection::vec((0usize..40, 0usize..5, -3i64..=3), 0..5),
            ys in prop::collection::vec((0usize..40, 0usize..5, -3i64..=3), 0..5),
            cut in 1u32..=4,
        ) {
            let t = table(4);
            let s = make_specialization(&FglTable::multiplicative(5), t.clone()).unwrap();
            let law = FglTable::universal(5, t.clone()).unwrap();
            let k_law = s.apply_law(&law).unwrap();
            let x = lazard_series(&t, n, 5, &xs);
            let y = lazard_series(&t, n, 5, &ys);
            let (sx, sy) = (s.apply_series(&x).unwrap(), s.apply_series(&y).unwrap());

            prop_assert_eq!(s.apply_series(&x.mul(&y).unwrap()).unwrap(), sx.mul(&sy).unwrap());
            prop_assert_eq!(s.apply_series(&law.sum(&x, &y).unwrap()).unwrap(), k_law.sum(&sx, &sy).unwrap());
            prop_assert_eq!(
                s.apply_series(&x.truncate(cut).unwrap()).unwrap(),
                sx.truncate(cut).unwrap()
            );

            let u = UniSeries::variable(LazardRing::new(t.clone()), 5);
            let f = law.sum(u.series(), u.series()).unwrap();
            let fu = UniSeries::from_series(f).unwrap();
            prop_assert_eq!(
                s.apply_series(&fu.evaluate(&x).unwrap()).unwrap(),
                s.apply_uni(&fu).unwrap().evaluate(&sx).unwrap()
            );
        }

        #[test]
        fn additive_target_over_integers_is_additive(a in -3i64..=3, b in -3i64..=3) {
            let t = table(3);
            let s = make_specialization(&FglTable::additive_in(Integers, 4), t.clone()).unwrap();
            let law = FglTable::universal(4, t).unwrap();
            let roots = VarSet::chern_roots(1);
            let lhs = s.apply_series(&chern_of_character(&law, &[a + b], &roots, 4).unwrap()).unwrap();
            let rhs = s.apply_series(&chern_of_character(&law, &[a], &roots, 4).unwrap()).unwrap()
                .add(&s.apply_series(&chern_of_character(&law, &[b], &roots, 4).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
