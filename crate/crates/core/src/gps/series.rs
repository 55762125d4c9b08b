use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{int_to_json, join_terms, CoeffRing};

/// Named variables with positive weights (cohomological degrees).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidInput("one weight per variable".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidInput("variable weights must be positive".into()));
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// `t1, ..., tn`, each of weight 1.
    pub fn chern_roots(n: usize) -> Arc<Self> {
        Self::uniform("t", n)
    }

    /// `γ1, ..., γn` with `γk` of weight `k`.
    pub fn elementary(n: usize) -> Arc<Self> {
        Arc::new(VarSet {
            names: (1..=n).map(|k| format!("γ{k}")).collect(),
            weights: (1..=n as u32).collect(),
        })
    }

    pub fn uniform(prefix: &str, n: usize) -> Arc<Self> {
        Arc::new(VarSet {
            names: (1..=n).map(|k| format!("{prefix}{k}")).collect(),
            weights: vec![1; n],
        })
    }

    pub fn named(names: &[&str]) -> Arc<Self> {
        Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: vec![1; names.len()],
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, k: usize) -> u32 {
        self.weights[k]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// The variables not listed in `drop`, in order.
    pub fn without(&self, drop: &[usize]) -> Arc<Self> {
        let keep: Vec<usize> = (0..self.len()).filter(|k| !drop.contains(k)).collect();
        Arc::new(VarSet {
            names: keep.iter().map(|&k| self.names[k].clone()).collect(),
            weights: keep.iter().map(|&k| self.weights[k]).collect(),
        })
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
        Monomial { degree, exps }
    }

    /// All monomials of weighted degree exactly `degree`, in monomial order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        fn go(w: &[u32], left: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            match w.split_first() {
                None => {
                    if left == 0 {
                        out.push(acc.clone());
                    }
                }
                Some((&wk, rest)) => {
                    for e in (0..=left / wk).rev() {
                        acc.push(e);
                        go(rest, left - e * wk, acc, out);
                        acc.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(&self.weights, degree, &mut Vec::new(), &mut out);
        let mut monos: Vec<Monomial> = out.into_iter().map(|e| self.monomial(e)).collect();
        monos.sort();
        monos
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        m.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    self.names[k].clone()
                } else {
                    format!("{}^{e}", self.names[k])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Exponent vector together with its weighted degree. Ordered by degree,
/// then lexicographically with larger exponents on earlier variables first,
/// so `t1` precedes `t2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cohomological degree of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

impl Degree {
    pub fn value(&self) -> Option<i64> {
        match self {
            Degree::Homogeneous(i) => Some(*i),
            _ => None,
        }
    }
}

/// A truncated element of the graded power series ring `A[[x_1..x_n]]_gr`:
/// sparse terms keyed by monomials of weighted degree at most `order`. In a
/// homogeneous series of degree `i`, the coefficient of a monomial of degree
/// `p` has codegree `p - i`.
///
/// Equality ignores the truncation flag.
#[derive(Debug, Clone)]
pub struct GradedSeries<R: CoeffRing> {
    ring: R,
    vars: Arc<VarSet>,
    order: u32,
    terms: BTreeMap<Monomial, R::Elem>,
    truncated: bool,
}

impl<R: CoeffRing> PartialEq for GradedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.vars == other.vars
            && self.order == other.order
            && self.terms == other.terms
    }
}

impl<R: CoeffRing> GradedSeries<R> {
    pub fn zero(ring: R, vars: Arc<VarSet>, order: u32) -> Self {
        GradedSeries {
            ring,
            vars,
            order,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn constant(ring: R, vars: Arc<VarSet>, order: u32, c: R::Elem) -> Self {
        let n = vars.len();
        Self::from_terms(ring, vars, order, [(vec![0; n], c)])
    }

    pub fn one(ring: R, vars: Arc<VarSet>, order: u32) -> Self {
        let one = ring.one();
        Self::constant(ring, vars, order, one)
    }

    /// The `k`-th variable.
    pub fn var(ring: R, vars: Arc<VarSet>, order: u32, k: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        let one = ring.one();
        Self::from_terms(ring, vars, order, [(e, one)])
    }

    /// Builds a series from `(exponents, coefficient)` pairs; like terms are
    /// combined and terms above `order` are dropped.
    pub fn from_terms(
        ring: R,
        vars: Arc<VarSet>,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, R::Elem)>,
    ) -> Self {
        let mut s = Self::zero(ring, vars, order);
        for (e, c) in terms {
            assert_eq!(e.len(), s.vars.len(), "exponent vector length");
            let m = s.vars.monomial(e);
            s.add_term(m, c);
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        if m.degree > self.order {
            self.truncated = true;
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if any term or coefficient component was dropped by truncation.
    pub fn is_truncated(&self) -> bool {
        self.truncated || self.terms.values().any(|c| self.ring.is_truncated(c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> R::Elem {
        let m = self.vars.monomial(exps.to_vec());
        self.terms.get(&m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn degree(&self) -> Degree {
        let mut found: Option<i64> = None;
        for (m, c) in &self.terms {
            for cd in self.ring.codegrees(c) {
                let i = m.degree as i64 - cd;
                match found {
                    None => found = Some(i),
                    Some(j) if j != i => return Degree::Mixed,
                    _ => {}
                }
            }
        }
        found.map_or(Degree::Zero, Degree::Homogeneous)
    }

    /// The degree-`i` homogeneous component.
    pub fn homogeneous_component(&self, degree: i64) -> Self {
        let terms: Vec<(Vec<u32>, R::Elem)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let part = self.ring.homogeneous_part(c, m.degree as i64 - degree);
                (m.exps.clone(), part)
            })
            .collect();
        Self::from_terms(self.ring.clone(), self.vars.clone(), self.order, terms)
    }

    pub(crate) fn check_shape(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ShapeMismatch("different coefficient rings".into()));
        }
        if self.vars != other.vars {
            return Err(Error::ShapeMismatch("different variables".into()));
        }
        if self.order != other.order {
            return Err(Error::ShapeMismatch(format!(
                "truncation orders {} and {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone(), self.order);
        out.truncated = self.truncated;
        for (m, x) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, x));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.ring.clone(), self.vars.clone(), self.order);
        out.truncated = self.truncated || other.truncated;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree + mb.degree > self.order {
                    out.truncated = true;
                    continue;
                }
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.vars.clone(), self.order);
        for _ in 0..k {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// The image under the truncation map to a smaller order.
    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order {
            return Err(Error::TruncationMismatch(format!(
                "cannot raise order {} to {order}",
                self.order
            )));
        }
        let mut out = Self::zero(self.ring.clone(), self.vars.clone(), order);
        out.truncated = self.truncated || self.terms.keys().any(|m| m.degree > order);
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree <= order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(out)
    }

    /// Renames variables: `x_k -> x_perm[k]`. Weights must agree.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vars.len();
        if perm.len() != n || (0..n).any(|k| self.vars.weight(k) != self.vars.weight(perm[k])) {
            return Err(Error::InvalidInput("permutation does not preserve weights".into()));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for k in 0..n {
                e[perm[k]] = m.exps[k];
            }
            (e, c.clone())
        });
        Ok(Self::from_terms(self.ring.clone(), self.vars.clone(), self.order, terms))
    }

    /// Invariance under every transposition of equal-weight neighbours.
    pub fn is_symmetric(&self) -> bool {
        let n = self.vars.len();
        (0..n.saturating_sub(1)).all(|k| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(k, k + 1);
            self.permute(&perm).is_ok_and(|p| p == *self)
        })
    }

    /// The quotient map killing the listed variables, landing in the ring
    /// on the remaining ones.
    pub fn set_zero(&self, vars: &[usize]) -> Self {
        let target = self.vars.without(vars);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&k| m.exps[k] == 0))
            .map(|(m, c)| {
                let e = (0..self.vars.len())
                    .filter(|k| !vars.contains(k))
                    .map(|k| m.exps[k])
                    .collect();
                (e, c.clone())
            });
        let mut out = Self::from_terms(self.ring.clone(), target, self.order, terms);
        out.truncated = self.truncated;
        out
    }

    /// Places this series into a larger variable set; `positions[k]` is the
    /// index of variable `k` in `target`.
    pub fn embed(&self, target: Arc<VarSet>, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.vars.len()
            || positions
                .iter()
                .enumerate()
                .any(|(k, &p)| p >= target.len() || target.weight(p) != self.vars.weight(k))
        {
            return Err(Error::InvalidInput("embedding does not match weights".into()));
        }
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (k, &p) in positions.iter().enumerate() {
                e[p] = m.exps[k];
            }
            (e, c.clone())
        });
        Ok(Self::from_terms(self.ring.clone(), target, self.order, terms))
    }

    /// Writes `x = sum_k x_k * v^k` for the last variable `v`, returning the
    /// coefficient series `x_k` over the remaining variables.
    pub fn split_last(&self) -> Vec<Self> {
        let n = self.vars.len();
        assert!(n > 0, "no variable to split off");
        let rest = self.vars.without(&[n - 1]);
        let w = self.vars.weight(n - 1);
        let top = (self.order / w) as usize;
        let mut parts: Vec<Vec<(Vec<u32>, R::Elem)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            let k = m.exps[n - 1] as usize;
            parts[k].push((m.exps[..n - 1].to_vec(), c.clone()));
        }
        parts
            .into_iter()
            .map(|t| Self::from_terms(self.ring.clone(), rest.clone(), self.order, t))
            .collect()
    }

    /// Inverse of [`split_last`](Self::split_last).
    pub fn join_last(parts: &[Self], vars: Arc<VarSet>, order: u32) -> Result<Self> {
        let n = vars.len();
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("no parts to join".into()))?;
        let w = vars.weight(n - 1);
        let mut terms = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            if p.vars.len() + 1 != n {
                return Err(Error::ShapeMismatch("part has the wrong variable count".into()));
            }
            for (m, c) in &p.terms {
                if m.degree + k as u32 * w > order {
                    continue;
                }
                let mut e = m.exps.clone();
                e.push(k as u32);
                terms.push((e, c.clone()));
            }
        }
        Ok(Self::from_terms(first.ring.clone(), vars, order, terms))
    }

    /// Applies a coefficient map into another ring, keeping the shape.
    pub fn map_coefficients<S: CoeffRing>(
        &self,
        ring: S,
        mut f: impl FnMut(&R::Elem) -> S::Elem,
    ) -> GradedSeries<S> {
        let terms: Vec<(Vec<u32>, S::Elem)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.exps.clone(), f(c)))
            .collect();
        let mut out = GradedSeries::from_terms(ring, self.vars.clone(), self.order, terms);
        out.truncated |= self.truncated;
        out
    }

    /// Coordinates of the slice (monomial degree `p`, coefficient codegree
    /// `c`) in the basis `monomials_of_degree(p) x graded_basis(c)`.
    pub fn slice_coordinates(&self, p: u32, codegree: i64) -> Vec<BigInt> {
        let mut out = Vec::new();
        for m in self.vars.monomials_of_degree(p) {
            let c = self.terms.get(&m).cloned().unwrap_or_else(|| self.ring.zero());
            out.extend(self.ring.coordinates(&c, codegree));
        }
        out
    }

    /// Inverse of [`slice_coordinates`](Self::slice_coordinates).
    pub fn from_slice_coordinates(
        ring: R,
        vars: Arc<VarSet>,
        order: u32,
        p: u32,
        codegree: i64,
        coords: &[BigInt],
    ) -> Result<Self> {
        let basis = ring.graded_basis(codegree).ok_or(Error::InsufficientTable {
            required: codegree.max(0) as usize,
            available: ring.depth().unwrap_or(0).max(0) as usize,
        })?;
        let monos = vars.monomials_of_degree(p);
        if coords.len() != monos.len() * basis.len() {
            return Err(Error::ShapeMismatch("coordinate vector has the wrong length".into()));
        }
        let mut terms = Vec::new();
        if !basis.is_empty() {
            for (m, chunk) in monos.iter().zip(coords.chunks(basis.len())) {
                let mut c = ring.zero();
                for (x, b) in chunk.iter().zip(&basis) {
                    c = ring.add(&c, &ring.mul(&ring.from_int(x), b));
                }
                terms.push((m.exps.clone(), c));
            }
        }
        Ok(Self::from_terms(ring, vars, order, terms))
    }

    /// Terms as JSON, without the variable list.
    pub fn terms_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({"monomial": m.exps, "coefficient": self.ring.encode(c)}))
                .collect(),
        )
    }

    pub fn from_terms_json(ring: R, vars: Arc<VarSet>, order: u32, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("series JSON: {what}"));
        let mut terms = Vec::new();
        for t in v.as_array().ok_or_else(|| bad("terms"))? {
            let e: Vec<u32> = t["monomial"]
                .as_array()
                .ok_or_else(|| bad("monomial"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_>>()?;
            if e.len() != vars.len() {
                return Err(bad("exponent length"));
            }
            terms.push((e, ring.decode(&t["coefficient"])?));
        }
        Ok(Self::from_terms(ring, vars, order, terms))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variables": self.vars.names.iter().zip(&self.vars.weights)
                .map(|(n, w)| json!({"name": n, "weight": w}))
                .collect::<Vec<_>>(),
            "order": self.order,
            "terms": self.terms_json(),
        })
    }

    pub fn from_json(ring: R, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("series JSON: {what}"));
        let vars = v["variables"].as_array().ok_or_else(|| bad("variables"))?;
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for var in vars {
            names.push(var["name"].as_str().ok_or_else(|| bad("name"))?.to_string());
            weights.push(var["weight"].as_u64().ok_or_else(|| bad("weight"))? as u32);
        }
        let vars = VarSet::new(names, weights)?;
        let order = v["order"].as_u64().ok_or_else(|| bad("order"))? as u32;
        Self::from_terms_json(ring, vars, order, &v["terms"])
    }
}

/// Formats `coefficient * monomial`, parenthesizing compound coefficients.
fn format_term(coeff: &str, mono: &str) -> String {
    if mono.is_empty() {
        return coeff.to_string();
    }
    match coeff {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        c if c.contains(" + ") || c.contains(" - ") => format!("({c})*{mono}"),
        c => format!("{c}*{mono}"),
    }
}

impl<R: CoeffRing> fmt::Display for GradedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_terms(
            self.terms
                .iter()
                .map(|(m, c)| format_term(&self.ring.format(c), &self.vars.format_monomial(m))),
        );
        f.write_str(&s)
    }
}

/// Integer vector to JSON, for reports.
pub fn int_vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}
