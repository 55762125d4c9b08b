//! Rational cross-check of the Lazard ring through the logarithm.
//!
//! Over the rationals every formal group law is `exp(log u + log v)` for
//! `log u = u + m_1 u^2 + m_2 u^3 + ...`, and `L (x) Q = Q[m_1, m_2, ...]`
//! with `m_d` in codegree `d`. Sending `a_ij` to the coefficient of
//! `u^i v^j` is a ring map killing every relation and injective on `L`,
//! which makes it an oracle for the integral construction that shares
//! none of its code path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::LazardElement;
use super::poly::{APoly, Generator};
use super::table::LazardBasisTable;
use crate::lattice;
use crate::ring::join_terms;

/// Rational polynomial in `m_1, m_2, ...`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogPoly(BTreeMap<Vec<u32>, BigRational>);

impl LogPoly {
    pub fn zero() -> Self {
        LogPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        LogPoly(m)
    }

    pub fn one() -> Self {
        LogPoly::constant(BigRational::one())
    }

    /// The variable `m_d` (`d >= 1`).
    pub fn var(d: usize) -> Self {
        let mut e = vec![0; d];
        e[d - 1] = 1;
        LogPoly(BTreeMap::from([(e, BigRational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.0.iter()
    }

    fn trim(mut e: Vec<u32>) -> Vec<u32> {
        while e.last() == Some(&0) {
            e.pop();
        }
        e
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = Self::trim(e);
        let slot = self.0.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, other: &LogPoly) -> LogPoly {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LogPoly {
        if c.is_zero() {
            return LogPoly::zero();
        }
        LogPoly(self.0.iter().map(|(e, x)| (e.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &LogPoly) -> LogPoly {
        let mut out = LogPoly::zero();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let n = ea.len().max(eb.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| ea.get(k).unwrap_or(&0) + eb.get(k).unwrap_or(&0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_terms(self.0.iter().map(|(e, c)| {
            let body: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        format!("m{}", k + 1)
                    } else {
                        format!("m{}^{x}", k + 1)
                    }
                })
                .collect();
            let body = body.join("*");
            if body.is_empty() {
                c.to_string()
            } else if c.is_one() {
                body
            } else if *c == -BigRational::one() {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            }
        }));
        f.write_str(&s)
    }
}

type Uni = Vec<LogPoly>;

fn uni_mul(x: &Uni, y: &Uni, max_deg: usize) -> Uni {
    let mut out = vec![LogPoly::zero(); max_deg + 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if i + j > max_deg || b.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

type Bi = BTreeMap<(usize, usize), LogPoly>;

fn bi_mul(x: &Bi, y: &Bi, max_total: usize) -> Bi {
    let mut out = Bi::new();
    for (&(a, b), cx) in x {
        for (&(c, d), cy) in y {
            if a + b + c + d > max_total {
                continue;
            }
            let slot = out.entry((a + c, b + d)).or_default();
            *slot = slot.add(&cx.mul(cy));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Images of the `a_ij` in `Q[m_1, ..., m_N]`.
#[derive(Debug, Clone)]
pub struct LogOracle {
    max_codegree: usize,
    images: BTreeMap<Generator, LogPoly>,
}

impl LogOracle {
    pub fn new(max_codegree: usize) -> Self {
        let top = max_codegree + 1;
        // Lagrange inversion: [x^k] exp = (1/k) [u^(k-1)] (u / log u)^k,
        // and u / log u = 1 / (1 + m_1 u + m_2 u^2 + ...).
        let mut denom: Uni = vec![LogPoly::zero(); top + 1];
        denom[0] = LogPoly::one();
        for d in 1..=max_codegree.min(top) {
            denom[d] = LogPoly::var(d);
        }
        let mut q: Uni = vec![LogPoly::zero(); top + 1];
        q[0] = LogPoly::one();
        for n in 1..=top {
            let mut acc = LogPoly::zero();
            for k in 1..=n {
                acc = acc.add(&denom[k].mul(&q[n - k]));
            }
            q[n] = acc.scale(&-BigRational::one());
        }
        let mut exp_coeffs = vec![LogPoly::zero(); top + 1];
        let mut power = q.clone();
        for k in 1..=top {
            if k > 1 {
                power = uni_mul(&power, &q, top);
            }
            exp_coeffs[k] = power[k - 1].scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        }

        // F(u, v) = exp(log u + log v) up to total degree N + 1.
        let mut s = Bi::new();
        s.insert((1, 0), LogPoly::one());
        s.insert((0, 1), LogPoly::one());
        for d in 1..=max_codegree {
            s.insert((d + 1, 0), LogPoly::var(d));
            s.insert((0, d + 1), LogPoly::var(d));
        }
        let mut law = Bi::new();
        let mut power = s.clone();
        for (k, ek) in exp_coeffs.iter().enumerate().skip(1) {
            if k > 1 {
                power = bi_mul(&power, &s, top);
            }
            for (&e, c) in &power {
                let slot = law.entry(e).or_default();
                *slot = slot.add(&c.mul(ek));
            }
        }
        let images = Generator::up_to(max_codegree)
            .into_iter()
            .map(|g| {
                let c = law
                    .get(&(g.i as usize, g.j as usize))
                    .cloned()
                    .unwrap_or_default();
                (g, c)
            })
            .collect();
        LogOracle {
            max_codegree,
            images,
        }
    }

    pub fn max_codegree(&self) -> usize {
        self.max_codegree
    }

    pub fn image(&self, g: Generator) -> &LogPoly {
        &self.images[&g]
    }

    /// Image of an `a`-monomial combination under the ring map.
    pub fn image_of(&self, p: &APoly) -> LogPoly {
        let mut acc = LogPoly::zero();
        for (m, c) in p.terms() {
            let mut term = LogPoly::constant(BigRational::from_integer(c.clone()));
            for (g, e) in m.factors() {
                for _ in 0..*e {
                    term = term.mul(&self.images[g]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The element in `Q[m_1, m_2, ...]`, through its `a`-monomial representative.
    pub fn to_log_presentation(&self, table: &LazardBasisTable, x: &LazardElement) -> LogPoly {
        self.image_of(&table.representative(x))
    }
}

/// Dimension over Q of the span of the given polynomials.
pub fn rational_rank(polys: &[LogPoly]) -> usize {
    let mut keys: Vec<&Vec<u32>> = polys.iter().flat_map(|p| p.0.keys()).collect();
    keys.sort();
    keys.dedup();
    let index: BTreeMap<&Vec<u32>, usize> = keys.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let rows = polys
        .iter()
        .map(|p| {
            let lcm = p
                .0
                .values()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut row = vec![BigInt::zero(); keys.len()];
            for (e, c) in &p.0 {
                row[index[e]] = (c * BigRational::from_integer(lcm.clone())).to_integer();
            }
            row
        })
        .collect();
    lattice::rank(keys.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a11_maps_to_minus_two_m1() {
        let oracle = LogOracle::new(2);
        let expected = LogPoly::var(1).scale(&BigRational::from_integer(BigInt::from(-2)));
        assert_eq!(*oracle.image(Generator::new(1, 1)), expected);
        assert_eq!(oracle.image(Generator::new(1, 1)).to_string(), "-2*m1");
    }

    #[test]
    fn symmetric_images() {
        let oracle = LogOracle::new(4);
        for g in Generator::up_to(4) {
            assert_eq!(oracle.image(g), oracle.image(Generator::new(g.j, g.i)));
        }
    }

    #[test]
    fn harvested_relations_vanish() {
        let oracle = LogOracle::new(5);
        for (d, rels) in super::super::harvest::harvest(5).iter().enumerate() {
            for r in rels {
                assert!(oracle.image_of(r).is_zero(), "codegree {d}: {r}");
            }
        }
    }

    #[test]
    fn rational_rank_counts_independent_polys() {
        let a = LogPoly::var(1);
        let b = LogPoly::var(1).mul(&LogPoly::var(1));
        let c = a.add(&b);
        assert_eq!(rational_rank(&[a, b, c]), 2);
    }
}
