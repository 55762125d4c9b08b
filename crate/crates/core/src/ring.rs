//! Graded coefficient rings for series.
//!
//! Every ring here is graded by *codegree* (the negated cohomological
//! degree): the Lazard ring sits in codegrees `0, 1, 2, ...`, the integers in
//! codegree 0, and `Z[beta, beta^-1]` has `beta^k` in codegree `k`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub trait CoeffRing: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// `Some(n)` when `x` is the integer `n` times the unit.
    fn as_integer(&self, x: &Self::Elem) -> Option<BigInt>;

    /// Codegrees of the nonzero homogeneous components of `x`, ascending.
    fn codegrees(&self, x: &Self::Elem) -> Vec<i64>;

    fn homogeneous_part(&self, x: &Self::Elem, codegree: i64) -> Self::Elem;

    /// An ordered Z-basis of the codegree-`c` piece; `None` when the ring
    /// is not known that deep (a truncated Lazard table).
    fn graded_basis(&self, codegree: i64) -> Option<Vec<Self::Elem>>;

    /// Coordinates of the codegree-`c` component in `graded_basis(c)`.
    fn coordinates(&self, x: &Self::Elem, codegree: i64) -> Vec<BigInt>;

    /// Whether arithmetic dropped a component past the ring's truncation.
    fn is_truncated(&self, _x: &Self::Elem) -> bool {
        false
    }

    /// Deepest codegree with a known basis, when the ring is truncated.
    fn depth(&self) -> Option<i64> {
        None
    }

    /// Short human-readable name, e.g. `Z`.
    fn describe(&self) -> String;

    fn format(&self, x: &Self::Elem) -> String;

    fn encode(&self, x: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
}

pub(crate) fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(n.to_string()),
    }
}

pub(crate) fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::InvalidInput(format!("not an integer: {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("not an integer: {s}"))),
        other => Err(Error::InvalidInput(format!("not an integer: {other}"))),
    }
}

/// Formats `c * body` for a single-term body, folding units.
pub(crate) fn scaled(c: &BigInt, body: &str) -> String {
    if body.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        body.to_string()
    } else if *c == -BigInt::one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

/// Joins signed term strings into `a + b - c`.
pub(crate) fn join_terms<I: IntoIterator<Item = String>>(terms: I) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// The integers, concentrated in codegree 0. Target of the additive law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn as_integer(&self, x: &BigInt) -> Option<BigInt> {
        Some(x.clone())
    }
    fn codegrees(&self, x: &BigInt) -> Vec<i64> {
        if x.is_zero() {
            vec![]
        } else {
            vec![0]
        }
    }
    fn homogeneous_part(&self, x: &BigInt, codegree: i64) -> BigInt {
        if codegree == 0 {
            x.clone()
        } else {
            BigInt::zero()
        }
    }
    fn graded_basis(&self, codegree: i64) -> Option<Vec<BigInt>> {
        Some(if codegree == 0 { vec![BigInt::one()] } else { vec![] })
    }
    fn coordinates(&self, x: &BigInt, codegree: i64) -> Vec<BigInt> {
        if codegree == 0 {
            vec![x.clone()]
        } else {
            vec![]
        }
    }
    fn describe(&self) -> String {
        "Z".into()
    }
    fn format(&self, x: &BigInt) -> String {
        x.to_string()
    }
    fn encode(&self, x: &BigInt) -> Value {
        int_to_json(x)
    }
    fn decode(&self, v: &Value) -> Result<BigInt> {
        int_from_json(v)
    }
}

/// Laurent polynomial in `beta` with integer coefficients, keyed by power.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent(pub BTreeMap<i64, BigInt>);

impl Laurent {
    pub fn monomial(power: i64, coeff: BigInt) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert(power, coeff);
        }
        Laurent(m)
    }

    pub fn coeff(&self, power: i64) -> BigInt {
        self.0.get(&power).cloned().unwrap_or_default()
    }
}

/// `Z[beta, beta^-1]` with `beta` in cohomological degree -1, the
/// coefficient ring of K-theory and target of the multiplicative law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LaurentBeta;

impl LaurentBeta {
    pub fn beta_power(&self, k: i64, coeff: impl Into<BigInt>) -> Laurent {
        Laurent::monomial(k, coeff.into())
    }
}

impl CoeffRing for LaurentBeta {
    type Elem = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::default()
    }
    fn one(&self) -> Laurent {
        Laurent::monomial(0, BigInt::one())
    }
    fn from_int(&self, n: &BigInt) -> Laurent {
        Laurent::monomial(0, n.clone())
    }
    fn is_zero(&self, x: &Laurent) -> bool {
        x.0.is_empty()
    }
    fn add(&self, x: &Laurent, y: &Laurent) -> Laurent {
        let mut out = x.0.clone();
        for (k, c) in &y.0 {
            let e = out.entry(*k).or_default();
            *e += c;
            if e.is_zero() {
                out.remove(k);
            }
        }
        Laurent(out)
    }
    fn neg(&self, x: &Laurent) -> Laurent {
        Laurent(x.0.iter().map(|(k, c)| (*k, -c)).collect())
    }
    fn mul(&self, x: &Laurent, y: &Laurent) -> Laurent {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                *out.entry(a + b).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Laurent(out)
    }
    fn as_integer(&self, x: &Laurent) -> Option<BigInt> {
        match x.0.len() {
            0 => Some(BigInt::zero()),
            1 => x.0.get(&0).cloned(),
            _ => None,
        }
    }
    fn codegrees(&self, x: &Laurent) -> Vec<i64> {
        x.0.keys().copied().collect()
    }
    fn homogeneous_part(&self, x: &Laurent, codegree: i64) -> Laurent {
        Laurent::monomial(codegree, x.coeff(codegree))
    }
    fn graded_basis(&self, codegree: i64) -> Option<Vec<Laurent>> {
        Some(vec![Laurent::monomial(codegree, BigInt::one())])
    }
    fn coordinates(&self, x: &Laurent, codegree: i64) -> Vec<BigInt> {
        vec![x.coeff(codegree)]
    }
    fn describe(&self) -> String {
        "Z[β,β^-1]".into()
    }
    fn format(&self, x: &Laurent) -> String {
        join_terms(x.0.iter().map(|(k, c)| {
            let body = match *k {
                0 => String::new(),
                1 => "β".to_string(),
                k => format!("β^{k}"),
            };
            scaled(c, &body)
        }))
    }
    fn encode(&self, x: &Laurent) -> Value {
        Value::Object(
            x.0.iter()
                .map(|(k, c)| (k.to_string(), int_to_json(c)))
                .collect(),
        )
    }
    fn decode(&self, v: &Value) -> Result<Laurent> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("expected an object of beta powers".into()))?;
        let mut out = BTreeMap::new();
        for (k, c) in obj {
            let k: i64 = k
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad beta power {k}")))?;
            let c = int_from_json(c)?;
            if !c.is_zero() {
                out.insert(k, c);
            }
        }
        Ok(Laurent(out))
    }
}

/// Sign of an integer as a unit, if it is one.
pub(crate) fn unit_sign(n: &BigInt) -> Option<i32> {
    if n.abs().is_one() {
        Some(if n.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let r = LaurentBeta;
        let beta = r.beta_power(1, 1);
        let x = r.sub(&r.one(), &beta);
        let sq = r.mul(&x, &x);
        assert_eq!(sq.coeff(0), BigInt::from(1));
        assert_eq!(sq.coeff(1), BigInt::from(-2));
        assert_eq!(sq.coeff(2), BigInt::from(1));
        assert_eq!(r.format(&sq), "1 - 2*β + β^2");
        assert_eq!(r.codegrees(&sq), vec![0, 1, 2]);
        let inv = r.beta_power(-1, 1);
        assert_eq!(r.mul(&beta, &inv), r.one());
        assert_eq!(r.decode(&r.encode(&sq)).unwrap(), sq);
    }

    #[test]
    fn integers_are_concentrated_in_codegree_zero() {
        let r = Integers;
        assert_eq!(r.graded_basis(0).unwrap(), vec![BigInt::one()]);
        assert!(r.graded_basis(3).unwrap().is_empty());
        assert_eq!(r.codegrees(&BigInt::from(5)), vec![0]);
    }
}
