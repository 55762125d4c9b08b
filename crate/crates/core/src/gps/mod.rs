//! Graded power series rings `A[[x_1..x_n]]_gr`, truncated in weighted
//! degree, over any [`CoeffRing`](crate::ring::CoeffRing).

mod series;
mod subst;
mod symmetric;

pub use series::{int_vec_json, Degree, GradedSeries, Monomial, VarSet};
pub use subst::{eliminate, Elimination, Substitution};
pub use symmetric::{elementary_substitution, elementary_symmetric, to_elementary_basis, SymmetricPresentation};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::error::Error;
    use crate::ring::Integers;

    type S = GradedSeries<Integers>;

    fn series(vars: &Arc<VarSet>, order: u32, terms: &[(&[u32], i64)]) -> S {
        S::from_terms(
            Integers,
            vars.clone(),
            order,
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn products_and_truncation() {
        let t = VarSet::chern_roots(2);
        let t1 = S::var(Integers, t.clone(), 3, 0);
        let t2 = S::var(Integers, t.clone(), 3, 1);
        assert_eq!(t1.mul(&t2).unwrap().to_string(), "t1*t2");
        let p = t1.add(&t2).unwrap().mul(&t1.mul(&t2).unwrap()).unwrap();
        assert_eq!(p.to_string(), "t1^2*t2 + t1*t2^2");
        assert!(!p.is_truncated());

        let x = series(&t, 1, &[(&[1, 0], 1)]);
        let y = series(&t, 1, &[(&[0, 1], 1)]);
        let z = x.mul(&y).unwrap();
        assert!(z.is_zero());
        assert!(z.is_truncated());
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let t = VarSet::chern_roots(2);
        let a = S::var(Integers, t.clone(), 3, 0);
        let b = S::var(Integers, t, 2, 0);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn substitution_examples() {
        let t = VarSet::chern_roots(2);
        let g = VarSet::elementary(2);
        let restrict = elementary_substitution(&Integers, g.clone(), &t, 4).unwrap();
        let gamma1 = S::var(Integers, g.clone(), 4, 0);
        assert_eq!(restrict.apply(&gamma1).unwrap().to_string(), "t1 + t2");
        let x = series(&g, 4, &[(&[2, 0], 1), (&[0, 1], -2)]);
        assert_eq!(restrict.apply(&x).unwrap().to_string(), "t1^2 + t2^2");
        let id = Substitution::identity(Integers, g.clone(), 4);
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn substitution_rejects_bad_images() {
        let t = VarSet::chern_roots(1);
        let x = VarSet::named(&["x"]);
        let with_constant = series(&t, 3, &[(&[0], 1), (&[1], 1)]);
        assert!(matches!(
            Substitution::new(x.clone(), vec![with_constant]),
            Err(Error::NonzeroConstantTerm { .. })
        ));
        let wrong_degree = series(&t, 3, &[(&[2], 1)]);
        assert!(matches!(
            Substitution::new(x, vec![wrong_degree]),
            Err(Error::DegreeMismatch { expected: 1, found: Some(2), .. })
        ));
    }

    #[test]
    fn elementary_basis_examples() {
        let t = VarSet::chern_roots(2);
        let sum = series(&t, 3, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(to_elementary_basis(&sum).unwrap().series().to_string(), "γ1");
        let squares = series(&t, 3, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let p = to_elementary_basis(&squares).unwrap();
        assert_eq!(p.series().to_string(), "γ1^2 - 2*γ2");
        assert_eq!(p.to_roots(&t).unwrap(), squares);

        let lopsided = series(&t, 3, &[(&[2, 0], 1)]);
        assert_eq!(to_elementary_basis(&lopsided), Err(Error::NotSymmetric));
    }

    #[test]
    fn elimination_examples() {
        let g1 = VarSet::elementary(1);
        let r = S::var(Integers, g1, 3, 0);
        let e = eliminate(&r, 0).unwrap();
        assert!(e.solution().is_zero());
        assert_eq!(e.solution().vars().len(), 0);

        let g = VarSet::elementary(2);
        let r = series(&g, 4, &[(&[1, 0], -1), (&[0, 1], 0), (&[3, 0], 0)]);
        let e = eliminate(&r, 0).unwrap();
        assert!(e.solution().is_zero());

        let two = series(&g, 4, &[(&[1, 0], 2)]);
        assert!(matches!(eliminate(&two, 0), Err(Error::NonUnitLinearPart { .. })));

        let mixed = series(&g, 4, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(eliminate(&mixed, 0).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn split_and_join_are_inverse() {
        let t = VarSet::chern_roots(3);
        let x = series(&t, 4, &[(&[1, 0, 0], 2), (&[1, 1, 2], -1), (&[0, 0, 3], 5), (&[0, 0, 0], 7)]);
        let parts = x.split_last();
        assert_eq!(parts.len(), 5);
        assert_eq!(S::join_last(&parts, t, 4).unwrap(), x);
    }

    #[test]
    fn json_round_trip() {
        let t = VarSet::chern_roots(2);
        let x = series(&t, 4, &[(&[1, 0], 2), (&[1, 1], -1)]);
        assert_eq!(S::from_json(Integers, &x.to_json()).unwrap(), x);
    }

    fn arb_series(n: usize, order: u32) -> impl Strategy<Value = S> {
        let vars = VarSet::chern_roots(n);
        let monos: Vec<Vec<u32>> = (0..=order)
            .flat_map(|p| vars.monomials_of_degree(p))
            .map(|m| m.exps().to_vec())
            .collect();
        let count = monos.len();
        prop::collection::vec((0..count, -4i64..=4), 0..8).prop_map(move |picks| {
            S::from_terms(
                Integers,
                vars.clone(),
                order,
                picks.into_iter().map(|(k, c)| (monos[k].clone(), BigInt::from(c))),
            )
        })
    }

    fn arb_pair() -> impl Strategy<Value = (S, S, S)> {
        (1usize..=3, 0u32..=5).prop_flat_map(|(n, d)| (arb_series(n, d), arb_series(n, d), arb_series(n, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms((x, y, z) in arb_pair()) {
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(
                x.mul(&y).unwrap().mul(&z).unwrap(),
                x.mul(&y.mul(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(
                x.mul(&y.add(&z).unwrap()).unwrap(),
                x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
            );
        }

        #[test]
        fn setting_variables_to_zero_is_a_ring_map((x, y, _) in arb_pair(), pick in 0usize..3) {
            let k = pick % x.vars().len();
            prop_assert_eq!(
                x.mul(&y).unwrap().set_zero(&[k]),
                x.set_zero(&[k]).mul(&y.set_zero(&[k])).unwrap()
            );
        }

        #[test]
        fn multiplication_by_a_variable_is_injective((x, _, _) in arb_pair(), pick in 0usize..3) {
            let k = pick % x.vars().len();
            let d = x.order();
            let t = S::var(Integers, x.vars().clone(), d, k);
            if x.mul(&t).unwrap().is_zero() && d > 0 {
                prop_assert!(x.truncate(d - 1).unwrap().is_zero());
            }
        }

        #[test]
        fn truncation_is_a_ring_map((x, y, _) in arb_pair(), cut in 0u32..=5) {
            let c = cut.min(x.order());
            prop_assert_eq!(
                x.mul(&y).unwrap().truncate(c).unwrap(),
                x.truncate(c).unwrap().mul(&y.truncate(c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                x.add(&y).unwrap().truncate(c).unwrap(),
                x.truncate(c).unwrap().add(&y.truncate(c).unwrap()).unwrap()
            );
        }

        #[test]
        fn splitting_off_a_variable_is_bijective((x, _, _) in arb_pair()) {
            prop_assert_eq!(S::join_last(&x.split_last(), x.vars().clone(), x.order()).unwrap(), x);
        }

        #[test]
        fn elementary_round_trip((x, _, _) in arb_pair()) {
            let g = VarSet::elementary(x.vars().len());
            let p = series_in_gammas(&x, &g);
            let sym = elementary_substitution(&Integers, g, x.vars(), x.order()).unwrap().apply(&p).unwrap();
            let back = to_elementary_basis(&sym).unwrap();
            prop_assert_eq!(back.series(), &p);
        }

        #[test]
        fn substitution_is_multiplicative((x, y, _) in arb_pair()) {
            let n = x.vars().len();
            let d = x.order();
            let images = (0..n)
                .map(|k| {
                    let tk = S::var(Integers, x.vars().clone(), d, k);
                    let tn = S::var(Integers, x.vars().clone(), d, n - 1);
                    tk.add(&tn.scale(&BigInt::from(k as i64))).unwrap()
                })
                .collect();
            let s = Substitution::new(x.vars().clone(), images).unwrap();
            prop_assert_eq!(
                s.apply(&x.mul(&y).unwrap()).unwrap(),
                s.apply(&x).unwrap().mul(&s.apply(&y).unwrap()).unwrap()
            );
        }
    }

    /// Reinterprets the exponents of `x` as exponents in the γ's, keeping
    /// only terms whose weighted degree fits the order.
    fn series_in_gammas(x: &S, g: &Arc<VarSet>) -> S {
        S::from_terms(
            Integers,
            g.clone(),
            x.order(),
            x.terms().map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )
    }
}
