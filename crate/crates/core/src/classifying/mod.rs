//! Cobordism rings of the classifying spaces of tori, `GL_n` and `SL_n`,
//! with restriction maps and Weyl-group invariants.

mod groups;
mod presentation;
mod weyl;

pub use groups::{
    chern_of_character, determinant_class, ring_bgl, ring_bsl, ring_bt, CharacterMap, GlRing, SlRing,
};
pub use presentation::{free_piece, GradedPiece, RingPresentation};
pub use weyl::{compare_with_gl, slice_window, weyl_invariants, InvariantSlice, PermutationGroup, SliceComparison};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;

    use super::*;
    use crate::fgl::FglTable;
    use crate::gps::{GradedSeries, VarSet};
    use crate::lazard::{LazardBasisTable, LazardRing};
    use crate::ring::CoeffRing;

    fn lazard(depth: usize) -> LazardRing {
        LazardRing::new(Arc::new(LazardBasisTable::build(depth).unwrap()))
    }

    fn universal(ring: &LazardRing, order: u32) -> FglTable<LazardRing> {
        FglTable::universal(order, ring.table().clone()).unwrap()
    }

    #[test]
    fn torus_piece_ranks() {
        let l = lazard(4);
        assert_eq!(ring_bt(l.clone(), 1, 2, &[0]).unwrap().rank(0), Some(4));
        assert_eq!(ring_bt(l.clone(), 1, 0, &[0]).unwrap().rank(0), Some(1));
        let p = ring_bt(l.clone(), 1, 3, &[1]).unwrap();
        assert_eq!(p.piece(1).unwrap().basis()[0].to_string(), "t1");
        assert!(ring_bt(lazard(1), 1, 4, &[0]).is_err());
    }

    #[test]
    fn gl1_is_the_torus() {
        let l = lazard(5);
        let gl = ring_bgl(l.clone(), 1, 4, &[-1, 0, 1, 2]).unwrap();
        let t = ring_bt(l, 1, 4, &[-1, 0, 1, 2]).unwrap();
        assert_eq!(gl.presentation().ranks(), t.ranks());
    }

    #[test]
    fn gl2_restriction() {
        let l = lazard(3);
        let gl = ring_bgl(l.clone(), 2, 3, &[0]).unwrap();
        let g = GradedSeries::from_terms(l.clone(), gl.presentation().generators().clone(), 3, [(vec![1, 1], l.one())]);
        assert_eq!(gl.restrict(&g).unwrap().to_string(), "t1^2*t2 + t1*t2^2");
    }

    #[test]
    fn sl_presentations() {
        let l = lazard(5);
        let law = universal(&l, 5);
        let sl1 = ring_bsl(&law, 1, 3, &[0, -1]).unwrap();
        assert_eq!(sl1.presentation().rank(0), Some(1));
        assert_eq!(sl1.presentation().rank(-1), Some(1));

        let law3 = universal(&l, 3);
        let sl2 = ring_bsl(&law3, 2, 3, &[0]).unwrap();
        assert_eq!(sl2.relation().to_string(), "γ1 + a11*γ2 + a12*γ1*γ2");
        assert_eq!(sl2.elimination().solution().to_string(), "-a11*γ2");
        assert_eq!(sl2.presentation().generators().names(), ["γ2".to_string()]);

        let sl2 = ring_bsl(&law, 2, 5, &[0]).unwrap();
        assert!(sl2.elimination().solution().to_string().starts_with("-a11*γ2 + "));
        assert!(sl2.elimination().apply(sl2.relation()).unwrap().is_zero());
        // L[[γ2]]: γ2^k contributes rank L in codegree 2k.
        let ranks = l.table().ranks();
        assert_eq!(sl2.presentation().rank(0), Some(ranks[0] + ranks[2] + ranks[4]));
    }

    #[test]
    fn chern_classes_of_characters() {
        let l = lazard(2);
        let law = universal(&l, 2);
        let t = VarSet::chern_roots(2);
        assert_eq!(chern_of_character(&law, &[1, 0], &t, 2).unwrap().to_string(), "t1");
        assert_eq!(chern_of_character(&law, &[-1, 0], &t, 2).unwrap().to_string(), "-t1 + a11*t1^2");
        assert_eq!(
            chern_of_character(&law, &[1, 1], &t, 2).unwrap().to_string(),
            "t1 + t2 + a11*t1*t2"
        );
    }

    #[test]
    fn character_maps_compose() {
        let l = lazard(4);
        let law = universal(&l, 4);
        let a = CharacterMap::new(2, vec![vec![1, 2], vec![-1, 1], vec![0, 1]]).unwrap();
        let b = CharacterMap::new(3, vec![vec![1, 0, -1], vec![2, 1, 0]]).unwrap();
        let r2 = VarSet::uniform("t", 2);
        let r3 = VarSet::uniform("s", 3);
        let r2b = VarSet::uniform("r", 2);
        let x = GradedSeries::from_terms(
            l.clone(),
            r2b.clone(),
            4,
            [(vec![1, 1], l.one()), (vec![0, 2], l.from_int(&BigInt::from(3)))],
        );
        let direct = a.then(&b).unwrap().pullback(&law, r2b.clone(), &r2, 4).unwrap().apply(&x).unwrap();
        let via_b = b.pullback(&law, r2b, &r3, 4).unwrap().apply(&x).unwrap();
        let stepwise = a.pullback(&law, r3, &r2, 4).unwrap().apply(&via_b).unwrap();
        assert_eq!(direct, stepwise);
        assert_eq!(CharacterMap::identity(2).then(&a).unwrap(), a);
    }

    #[test]
    fn invariant_slices() {
        let l = lazard(3);
        let t = VarSet::chern_roots(2);
        let trivial = weyl_invariants(&PermutationGroup::trivial(2), &l, &t, &[(2, 2)]).unwrap();
        assert_eq!(trivial[0].rank(), trivial[0].ambient_rank);
        let s2 = weyl_invariants(&PermutationGroup::symmetric(2), &l, &t, &[(1, 0)]).unwrap();
        let one = BigInt::from(1);
        assert_eq!(s2[0].basis, vec![vec![one.clone(), one]]);
        assert_eq!(s2[0].basis_series(&l, &t, 3).unwrap()[0].to_string(), "t1 + t2");
    }

    #[test]
    fn gl_image_matches_invariants() {
        let l = lazard(3);
        let gl = ring_bgl(l.clone(), 2, 3, &[]).unwrap();
        let inv = weyl_invariants(&PermutationGroup::symmetric(2), &l, gl.roots(), &slice_window(3, 3)).unwrap();
        for c in compare_with_gl(&gl, &inv).unwrap() {
            assert!(c.rational_equal && c.integral_equal, "{c:?}");
        }
    }

    #[test]
    fn truncation_of_presentations() {
        let l = lazard(6);
        let degrees = [-1, 0, 1, 2];
        let big = ring_bt(l.clone(), 2, 5, &degrees).unwrap();
        let small = ring_bt(l, 2, 3, &degrees).unwrap();
        assert_eq!(big.truncate(3).unwrap(), small);
    }

    #[test]
    fn presentation_json_round_trip() {
        let l = lazard(3);
        let law = universal(&l, 3);
        let p = ring_bsl(&law, 2, 3, &[0, 1, 2]).unwrap().presentation().clone();
        let back = RingPresentation::from_json(l, &p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
