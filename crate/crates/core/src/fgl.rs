//! Formal group laws `F(u,v) = u + v + sum b_ij u^i v^j`, truncated at total
//! degree `N`, with coefficients in any graded ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gps::{Degree, GradedSeries, Substitution, VarSet};
use crate::lazard::{LazardBasisTable, LazardRing};
use crate::ring::{CoeffRing, Integers, LaurentBeta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawKind {
    Universal,
    Additive,
    Multiplicative,
    Custom,
}

impl LawKind {
    pub fn name(&self) -> &'static str {
        match self {
            LawKind::Universal => "universal",
            LawKind::Additive => "additive",
            LawKind::Multiplicative => "multiplicative",
            LawKind::Custom => "custom",
        }
    }
}

/// A formal group law known up to total degree `order`. Only the
/// coefficients `b_ij` with `i, j >= 1` are stored.
#[derive(Debug, Clone)]
pub struct FglTable<R: CoeffRing> {
    kind: LawKind,
    ring: R,
    order: u32,
    coeffs: BTreeMap<(u32, u32), R::Elem>,
}

fn pairs(order: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=order).flat_map(|s| (1..s).map(move |i| (i, s - i)))
}

impl FglTable<LazardRing> {
    /// The universal law over the canonical Lazard basis.
    pub fn universal(order: u32, table: Arc<LazardBasisTable>) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidInput("law order must be at least 1".into()));
        }
        let needed = order as usize - 1;
        if table.max_codegree() < needed {
            return Err(Error::InsufficientTable {
                required: needed,
                available: table.max_codegree(),
            });
        }
        let coeffs = pairs(order)
            .map(|(i, j)| ((i, j), table.generator(i, j)))
            .collect();
        Ok(FglTable {
            kind: LawKind::Universal,
            ring: LazardRing::new(table),
            order,
            coeffs,
        })
    }
}

impl FglTable<Integers> {
    /// `F(u,v) = u + v` over the integers.
    pub fn additive(order: u32) -> Self {
        FglTable::additive_in(Integers, order)
    }
}

impl FglTable<LaurentBeta> {
    /// `F(u,v) = u + v - β uv` over `Z[β, β^-1]`.
    pub fn multiplicative(order: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if order >= 2 {
            coeffs.insert((1, 1), LaurentBeta.beta_power(1, -1));
        }
        FglTable {
            kind: LawKind::Multiplicative,
            ring: LaurentBeta,
            order,
            coeffs,
        }
    }
}

impl<R: CoeffRing> FglTable<R> {
    pub fn additive_in(ring: R, order: u32) -> Self {
        FglTable {
            kind: LawKind::Additive,
            ring,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// A law from explicit coefficients `b_ij`. Symmetry and the codegree of
    /// each coefficient are checked here; associativity is checked by
    /// [`check_axioms`](Self::check_axioms).
    pub fn custom(ring: R, order: u32, coeffs: impl IntoIterator<Item = ((u32, u32), R::Elem)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if i == 0 || j == 0 || i + j > order {
                return Err(Error::InvalidLaw(format!("coefficient b_{i}{j} is out of range")));
            }
            if ring.is_zero(&c) {
                continue;
            }
            let expected = (i + j - 1) as i64;
            if ring.codegrees(&c) != vec![expected] {
                return Err(Error::InvalidLaw(format!(
                    "coefficient b_{i}{j} must have codegree {expected}"
                )));
            }
            map.insert((i, j), c);
        }
        for (&(i, j), c) in &map {
            if map.get(&(j, i)) != Some(c) {
                return Err(Error::InvalidLaw(format!("b_{i}{j} and b_{j}{i} differ")));
            }
        }
        Ok(FglTable {
            kind: LawKind::Custom,
            ring,
            order,
            coeffs: map,
        })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `b_ij`; zero for pairs outside the stored range.
    pub fn coefficient(&self, i: u32, j: u32) -> R::Elem {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&(u32, u32), &R::Elem)> {
        self.coeffs.iter()
    }

    /// The law cut down to a smaller order.
    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order {
            return Err(Error::TruncationMismatch(format!(
                "law is known to order {}, not {order}",
                self.order
            )));
        }
        let mut out = self.clone();
        out.order = order;
        out.coeffs.retain(|&(i, j), _| i + j <= order);
        Ok(out)
    }

    /// `F(u, v)` as a series in two variables.
    pub fn series(&self) -> GradedSeries<R> {
        let uv = VarSet::named(&["u", "v"]);
        let one = self.ring.one();
        let mut terms = vec![(vec![1, 0], one.clone()), (vec![0, 1], one)];
        terms.extend(self.coeffs.iter().map(|(&(i, j), c)| (vec![i, j], c.clone())));
        GradedSeries::from_terms(self.ring.clone(), uv, self.order, terms)
    }

    /// `F(x, y)` for series `x`, `y` of degree 1 with zero constant term.
    pub fn sum(&self, x: &GradedSeries<R>, y: &GradedSeries<R>) -> Result<GradedSeries<R>> {
        x.check_shape(y)?;
        if x.ring() != &self.ring {
            return Err(Error::ShapeMismatch("law and series use different rings".into()));
        }
        if x.order() > self.order {
            return Err(Error::TruncationMismatch(format!(
                "series order {} exceeds law order {}",
                x.order(),
                self.order
            )));
        }
        for (z, name) in [(x, "x"), (y, "y")] {
            if !self.ring.is_zero(&z.constant_term()) {
                return Err(Error::NonzeroConstantTerm {
                    generator: name.into(),
                });
            }
        }
        let top = x.order();
        let xp = powers(x, top);
        let yp = powers(y, top);
        let mut out = x.add(y)?;
        for (&(i, j), c) in &self.coeffs {
            if i + j > top {
                continue;
            }
            out = out.add(&xp[i as usize].mul(&yp[j as usize])?.scale(c))?;
        }
        Ok(out)
    }

    /// Checks `F(F(u,v),w) = F(u,F(v,w))` up to the law order.
    pub fn check_axioms(&self) -> Result<()> {
        let f = self.series();
        let uvw = VarSet::named(&["u", "v", "w"]);
        let var = |k| GradedSeries::var(self.ring.clone(), uvw.clone(), self.order, k);
        let (u, v, w) = (var(0), var(1), var(2));
        let left = Substitution::new(f.vars().clone(), vec![self.sum(&u, &v)?, w.clone()])?.apply(&f)?;
        let right = Substitution::new(f.vars().clone(), vec![u, self.sum(&v, &w)?])?.apply(&f)?;
        if left != right {
            return Err(Error::InvalidLaw("associativity fails".into()));
        }
        Ok(())
    }

    /// The formal inverse `χ(u)` with `F(u, χ(u)) = 0`.
    pub fn formal_inverse(&self, order: u32) -> Result<UniSeries<R>> {
        let order = self.check_order(order)?;
        let u = UniSeries::variable(self.ring.clone(), order);
        // χ = -u - sum b_ij u^i χ^j, one more degree correct per pass.
        let up = powers(u.series(), order);
        let mut chi = u.series().neg();
        for _ in 1..order {
            let cp = powers(&chi, order);
            let mut next = u.series().neg();
            for (&(i, j), c) in &self.coeffs {
                if i + j > order {
                    continue;
                }
                next = next.sub(&up[i as usize].mul(&cp[j as usize])?.scale(c))?;
            }
            chi = next;
        }
        Ok(UniSeries(chi))
    }

    /// The `n`-series `[n](u)`.
    pub fn n_series(&self, n: i64, order: u32) -> Result<UniSeries<R>> {
        let order = self.check_order(order)?;
        let u = UniSeries::variable(self.ring.clone(), order);
        let step = if n >= 0 {
            u.series().clone()
        } else {
            self.formal_inverse(order)?.0
        };
        let mut acc = GradedSeries::zero(self.ring.clone(), u.series().vars().clone(), order);
        for _ in 0..n.unsigned_abs() {
            acc = self.sum(&acc, &step)?;
        }
        Ok(UniSeries(acc))
    }

    fn check_order(&self, order: u32) -> Result<u32> {
        if order > self.order {
            return Err(Error::TruncationMismatch(format!(
                "order {order} exceeds law order {}",
                self.order
            )));
        }
        Ok(order)
    }
}

fn powers<R: CoeffRing>(x: &GradedSeries<R>, top: u32) -> Vec<GradedSeries<R>> {
    let mut out = vec![GradedSeries::one(x.ring().clone(), x.vars().clone(), x.order())];
    for k in 1..=top as usize {
        let next = out[k - 1].mul(x).expect("same shape");
        out.push(next);
    }
    out
}

impl<R: CoeffRing> fmt::Display for FglTable<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F(u,v) = {}", self.series())
    }
}

/// A series `c_1 u + c_2 u^2 + ...` of degree 1 in one variable `u`, like a
/// first Chern class.
#[derive(Debug, Clone, PartialEq)]
pub struct UniSeries<R: CoeffRing>(GradedSeries<R>);

impl<R: CoeffRing> UniSeries<R> {
    pub fn variable(ring: R, order: u32) -> Self {
        UniSeries(GradedSeries::var(ring, VarSet::named(&["u"]), order, 0))
    }

    /// Wraps a one-variable series, checking it has degree 1 and no constant.
    pub fn from_series(s: GradedSeries<R>) -> Result<Self> {
        if s.vars().len() != 1 {
            return Err(Error::ShapeMismatch("expected a series in one variable".into()));
        }
        if !s.ring().is_zero(&s.constant_term()) {
            return Err(Error::NonzeroConstantTerm {
                generator: s.vars().name(0).into(),
            });
        }
        match s.degree() {
            Degree::Zero | Degree::Homogeneous(1) => Ok(UniSeries(s)),
            d => Err(Error::DegreeMismatch {
                generator: s.vars().name(0).into(),
                expected: 1,
                found: d.value(),
            }),
        }
    }

    pub fn series(&self) -> &GradedSeries<R> {
        &self.0
    }

    pub fn into_series(self) -> GradedSeries<R> {
        self.0
    }

    pub fn order(&self) -> u32 {
        self.0.order()
    }

    /// The coefficient `c_k` of `u^k`.
    pub fn coefficient(&self, k: u32) -> R::Elem {
        self.0.coefficient(&[k])
    }

    /// Invertible under composition exactly when `c_1 = ±1`.
    pub fn is_invertible(&self) -> bool {
        self.0
            .ring()
            .as_integer(&self.coefficient(1))
            .is_some_and(|c| c == BigInt::from(1) || c == BigInt::from(-1))
    }

    /// `self(other(u))`.
    pub fn compose(&self, other: &UniSeries<R>) -> Result<UniSeries<R>> {
        let s = Substitution::new(self.0.vars().clone(), vec![other.0.clone()])?;
        Ok(UniSeries(s.apply(&self.0)?))
    }

    /// `self(x)` for a degree-1 series `x` in any variables.
    pub fn evaluate(&self, x: &GradedSeries<R>) -> Result<GradedSeries<R>> {
        Substitution::new(self.0.vars().clone(), vec![x.clone()])?.apply(&self.0)
    }
}

impl<R: CoeffRing> fmt::Display for UniSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gps::to_elementary_basis;
    use proptest::prelude::*;

    fn universal(order: u32) -> FglTable<LazardRing> {
        let table = LazardBasisTable::build(order.saturating_sub(1) as usize).unwrap();
        FglTable::universal(order, Arc::new(table)).unwrap()
    }

    #[test]
    fn universal_law_low_orders() {
        assert_eq!(universal(1).to_string(), "F(u,v) = u + v");
        assert_eq!(universal(2).to_string(), "F(u,v) = u + v + a11*u*v");
        assert_eq!(
            universal(3).to_string(),
            "F(u,v) = u + v + a11*u*v + a12*u^2*v + a12*u*v^2"
        );
    }

    #[test]
    fn shallow_table_is_refused() {
        let table = Arc::new(LazardBasisTable::build(1).unwrap());
        assert_eq!(
            FglTable::universal(4, table).unwrap_err(),
            Error::InsufficientTable { required: 3, available: 1 }
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(universal(1).formal_inverse(1).unwrap().to_string(), "-u");
        assert_eq!(universal(2).formal_inverse(2).unwrap().to_string(), "-u + a11*u^2");
        let m = FglTable::multiplicative(3);
        assert_eq!(m.formal_inverse(3).unwrap().to_string(), "-u - β*u^2 - β^2*u^3");
    }

    #[test]
    fn n_series_examples() {
        let f = universal(3);
        assert!(f.n_series(0, 3).unwrap().series().is_zero());
        assert_eq!(f.n_series(2, 3).unwrap().to_string(), "2*u + a11*u^2 + 2*a12*u^3");
        let m = FglTable::multiplicative(3);
        assert_eq!(m.n_series(3, 3).unwrap().to_string(), "3*u - 3*β*u^2 + β^2*u^3");
    }

    #[test]
    fn sum_of_roots_in_two_variables() {
        let f = universal(2);
        let t = VarSet::chern_roots(2);
        let t1 = GradedSeries::var(f.ring().clone(), t.clone(), 2, 0);
        let t2 = GradedSeries::var(f.ring().clone(), t, 2, 1);
        assert_eq!(f.sum(&t1, &t2).unwrap().to_string(), "t1 + t2 + a11*t1*t2");
    }

    #[test]
    fn determinant_class_in_elementary_generators() {
        let f = universal(3);
        let t = VarSet::chern_roots(2);
        let t1 = GradedSeries::var(f.ring().clone(), t.clone(), 3, 0);
        let t2 = GradedSeries::var(f.ring().clone(), t, 3, 1);
        let det = f.sum(&t1, &t2).unwrap();
        let p = to_elementary_basis(&det).unwrap();
        assert_eq!(p.series().to_string(), "γ1 + a11*γ2 + a12*γ1*γ2");
    }

    #[test]
    fn axioms_hold_for_the_standard_laws() {
        universal(6).check_axioms().unwrap();
        FglTable::multiplicative(6).check_axioms().unwrap();
        FglTable::additive(6).check_axioms().unwrap();
    }

    #[test]
    fn broken_law_is_detected() {
        let bad = FglTable::custom(
            LaurentBeta,
            4,
            [((1, 1), LaurentBeta.beta_power(1, 1)), ((2, 2), LaurentBeta.beta_power(3, 7))],
        )
        .unwrap();
        assert!(matches!(bad.check_axioms(), Err(Error::InvalidLaw(_))));
        let asym = FglTable::custom(LaurentBeta, 3, [((1, 2), LaurentBeta.beta_power(2, 1))]);
        assert!(matches!(asym, Err(Error::InvalidLaw(_))));
        let wrong_degree = FglTable::custom(LaurentBeta, 2, [((1, 1), LaurentBeta.beta_power(2, 1))]);
        assert!(matches!(wrong_degree, Err(Error::InvalidLaw(_))));
    }

    #[test]
    fn inverse_is_an_involution() {
        let f = universal(5);
        let chi = f.formal_inverse(5).unwrap();
        let u = UniSeries::variable(f.ring().clone(), 5);
        assert_eq!(chi.compose(&chi).unwrap(), u);
        assert!(f.sum(u.series(), chi.series()).unwrap().is_zero());
        assert!(chi.is_invertible());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn n_series_is_a_homomorphism(m in -3i64..=3, n in -3i64..=3) {
            let f = FglTable::multiplicative(5);
            let lhs = f.n_series(m + n, 5).unwrap();
            let rhs = f.sum(f.n_series(m, 5).unwrap().series(), f.n_series(n, 5).unwrap().series()).unwrap();
            prop_assert_eq!(lhs.series(), &rhs);
        }

        #[test]
        fn additive_sum_is_plain_addition(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5) {
            let f = FglTable::additive(4);
            let t = VarSet::chern_roots(2);
            let x = GradedSeries::from_terms(Integers, t.clone(), 4, [(vec![1, 0], BigInt::from(a)), (vec![2, 1], BigInt::from(b))]);
            let y = GradedSeries::from_terms(Integers, t, 4, [(vec![0, 1], BigInt::from(c)), (vec![1, 1], BigInt::from(a))]);
            prop_assert_eq!(f.sum(&x, &y).unwrap(), x.add(&y).unwrap());
        }
    }
}
