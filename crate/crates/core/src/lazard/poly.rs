//! The free polynomial ring `Z[A_ij]` that the Lazard ring is a quotient of.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{join_terms, scaled, CoeffRing};

/// The symbol `a_ij` (`i, j >= 1`), sitting in codegree `i + j - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub i: u32,
    pub j: u32,
}

impl Generator {
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "a_ij needs i, j >= 1");
        Generator { i, j }
    }

    pub fn codegree(&self) -> usize {
        (self.i + self.j - 1) as usize
    }

    /// `a_ij` with `i > j`; commutativity identifies it with `a_ji`.
    pub fn is_swapped(&self) -> bool {
        self.i > self.j
    }

    /// All generators of codegree at most `max_codegree`, in generator order.
    pub fn up_to(max_codegree: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for d in 1..=max_codegree as u32 {
            for i in 1..=d {
                out.push(Generator::new(i, d + 1 - i));
            }
        }
        out
    }
}

/// Generators are ordered by codegree, then by `i`.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.codegree(), self.i).cmp(&(other.codegree(), other.i))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "a{}{}", self.i, self.j)
        } else {
            write!(f, "a{}_{}", self.i, self.j)
        }
    }
}

/// A monomial in the `a_ij`, stored as sorted `(generator, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AMonomial {
    factors: Vec<(Generator, u32)>,
    codegree: usize,
}

impl AMonomial {
    pub fn one() -> Self {
        AMonomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        AMonomial {
            factors: vec![(g, 1)],
            codegree: g.codegree(),
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut map: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in factors {
            if e > 0 {
                *map.entry(g).or_default() += e;
            }
        }
        let codegree = map.iter().map(|(g, e)| g.codegree() * *e as usize).sum();
        AMonomial {
            factors: map.into_iter().collect(),
            codegree,
        }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn codegree(&self) -> usize {
        self.codegree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn has_swapped(&self) -> bool {
        self.factors.iter().any(|(g, _)| g.is_swapped())
    }

    pub fn mul(&self, other: &AMonomial) -> AMonomial {
        AMonomial::from_factors(self.factors.iter().chain(&other.factors).copied())
    }

    /// All monomials of the given codegree, in ascending graded-lex order.
    pub fn of_codegree(codegree: usize) -> Vec<AMonomial> {
        fn go(
            gens: &[Generator],
            remaining: usize,
            acc: &mut Vec<(Generator, u32)>,
            out: &mut Vec<AMonomial>,
        ) {
            if remaining == 0 {
                out.push(AMonomial::from_factors(acc.iter().copied()));
                return;
            }
            let Some((&g, rest)) = gens.split_first() else {
                return;
            };
            let c = g.codegree();
            let mut e = 0u32;
            while (e as usize) * c <= remaining {
                if e > 0 {
                    acc.push((g, e));
                }
                go(rest, remaining - e as usize * c, acc, out);
                if e > 0 {
                    acc.pop();
                }
                e += 1;
            }
        }
        let gens = Generator::up_to(codegree);
        let mut out = Vec::new();
        go(&gens, codegree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Graded lexicographic: codegree first, then the exponent vectors in
/// generator order, a larger exponent on an earlier generator being larger.
impl Ord for AMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codegree.cmp(&other.codegree).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for AMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for AMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad a-monomial {s:?}"));
        if s == "1" {
            return Ok(AMonomial::one());
        }
        let mut factors = Vec::new();
        for part in s.split('*') {
            let (sym, exp) = match part.split_once('^') {
                Some((sym, e)) => (sym, e.parse::<u32>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let digits = sym.strip_prefix('a').ok_or_else(bad)?;
            let (i, j) = match digits.split_once('_') {
                Some((i, j)) => (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?),
                None if digits.len() == 2 => {
                    let b = digits.as_bytes();
                    if !b[0].is_ascii_digit() || !b[1].is_ascii_digit() {
                        return Err(bad());
                    }
                    ((b[0] - b'0') as u32, (b[1] - b'0') as u32)
                }
                None => return Err(bad()),
            };
            if i == 0 || j == 0 {
                return Err(bad());
            }
            factors.push((Generator::new(i, j), exp));
        }
        Ok(AMonomial::from_factors(factors))
    }
}

/// Integer polynomial in the `a_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct APoly(BTreeMap<AMonomial, BigInt>);

impl APoly {
    pub fn zero() -> Self {
        APoly::default()
    }

    pub fn one() -> Self {
        APoly::monomial(AMonomial::one(), BigInt::one())
    }

    pub fn generator(i: u32, j: u32) -> Self {
        APoly::monomial(AMonomial::generator(Generator::new(i, j)), BigInt::one())
    }

    pub fn monomial(m: AMonomial, c: BigInt) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        APoly(map)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (AMonomial, BigInt)>) -> Self {
        let mut p = APoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &BigInt)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: AMonomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &APoly) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &APoly) -> APoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &APoly) -> APoly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> APoly {
        if c.is_zero() {
            return APoly::zero();
        }
        APoly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &APoly) -> APoly {
        let mut out = APoly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &AMonomial) -> APoly {
        APoly(self.0.iter().map(|(k, c)| (k.mul(m), c.clone())).collect())
    }

    /// Codegrees present, ascending.
    pub fn codegrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.0.keys().map(AMonomial::codegree).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn homogeneous_part(&self, codegree: usize) -> APoly {
        APoly(
            self.0
                .iter()
                .filter(|(m, _)| m.codegree() == codegree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Evaluates the polynomial under `a_ij -> value(g)` in a coefficient ring.
    pub fn eval_in<R: CoeffRing>(&self, ring: &R, mut value: impl FnMut(Generator) -> R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for (m, c) in &self.0 {
            let mut term = ring.from_int(c);
            for (g, e) in m.factors() {
                let v = value(*g);
                for _ in 0..*e {
                    term = ring.mul(&term, &v);
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_terms(self.0.iter().map(|(m, c)| {
            if m.is_one() {
                c.to_string()
            } else {
                scaled(c, &m.to_string())
            }
        }));
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_codegrees() {
        assert_eq!(Generator::new(1, 1).codegree(), 1);
        assert_eq!(Generator::new(2, 3).codegree(), 4);
        assert_eq!(Generator::up_to(3).len(), 6);
    }

    #[test]
    fn monomials_of_codegree_count_colored_partitions() {
        // sum over partitions with k-colored parts of size k: 1, 1, 3, 6, 13, 24
        let counts: Vec<usize> = (0..6).map(|d| AMonomial::of_codegree(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24]);
    }

    #[test]
    fn monomial_display_round_trips() {
        let m = AMonomial::from_factors([(Generator::new(1, 1), 2), (Generator::new(1, 2), 1)]);
        assert_eq!(m.to_string(), "a11^2*a12");
        assert_eq!(m.to_string().parse::<AMonomial>().unwrap(), m);
        assert_eq!(m.codegree(), 4);
        let big = AMonomial::generator(Generator::new(3, 10));
        assert_eq!(big.to_string().parse::<AMonomial>().unwrap(), big);
    }

    #[test]
    fn graded_lex_order() {
        let a11 = AMonomial::generator(Generator::new(1, 1));
        let a12 = AMonomial::generator(Generator::new(1, 2));
        let a11sq = a11.mul(&a11);
        assert!(a11 < a12);
        assert!(a12 < a11sq);
        assert!(AMonomial::one() < a11);
    }

    #[test]
    fn poly_arithmetic() {
        let a11 = APoly::generator(1, 1);
        let x = a11.add(&APoly::one());
        let sq = x.mul(&x);
        assert_eq!(sq.to_string(), "1 + 2*a11 + a11^2");
        assert!(sq.sub(&sq).is_zero());
    }
}
