//! Desk-scale consistency checks with exact arithmetic. Each check compares
//! the library against an independent count or identity and reports every
//! case it tried. Randomized cases use a seeded ChaCha stream, so a report
//! depends only on its configuration.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classifying::{
    compare_with_gl, ring_bgl, ring_bsl, ring_bt, slice_window, weyl_invariants, PermutationGroup,
};
use crate::error::Result;
use crate::fgl::FglTable;
use crate::gps::{GradedSeries, VarSet};
use crate::lattice::{rank, HermiteForm};
use crate::lazard::{rational_rank, LazardBasisTable, LazardRing, LogOracle};
use crate::ring::{CoeffRing, LaurentBeta};
use crate::specialize::make_specialization;

pub const DEFAULT_SEED: u64 = 0x00c0_b0bd;
const MAX_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Random inputs per randomized case.
    pub samples: usize,
    /// Which checks to run, by number.
    pub criteria: Vec<u32>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: DEFAULT_SEED,
            samples: 6,
            criteria: (1..=8).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    /// Observations that are reported but do not gate the result.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub config: CheckConfig,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

impl CheckReport {
    pub fn criterion(&self, id: u32) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

struct Tally {
    result: CriterionResult,
}

impl Tally {
    fn new(id: u32, name: &str) -> Self {
        Tally {
            result: CriterionResult {
                id,
                name: name.into(),
                passed: true,
                cases: 0,
                failed: 0,
                failures: Vec::new(),
                notes: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.result.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.result.passed = false;
        self.result.failed += 1;
        if self.result.failures.len() < MAX_FAILURES {
            self.result.failures.push(msg);
        }
    }

    /// Counts an error as a failed case.
    fn attempt(&mut self, label: impl FnOnce() -> String, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.result.cases += 1;
            self.fail(format!("{}: {e}", label()));
        }
    }

    fn note(&mut self, msg: String) {
        self.result.notes.push(msg);
    }

    fn finish(self) -> CriterionResult {
        self.result
    }
}

/// Number of partitions of `d`.
pub fn partitions(d: usize) -> usize {
    let mut p = vec![0usize; d + 1];
    p[0] = 1;
    for part in 1..=d {
        for k in part..=d {
            p[k] += p[k - part];
        }
    }
    p[d]
}

/// Number of monomials of weighted degree `d` in variables of the given weights.
pub fn monomial_count(weights: &[u32], d: u32) -> usize {
    let d = d as usize;
    let mut c = vec![0usize; d + 1];
    c[0] = 1;
    for &w in weights {
        for k in w as usize..=d {
            c[k] += c[k - w as usize];
        }
    }
    c[d]
}

fn partitions_signed(c: i64) -> usize {
    if c < 0 {
        0
    } else {
        partitions(c as usize)
    }
}

/// Rank of `L[[x]]_gr` in degree `i` truncated at `order`, from the
/// partition and monomial counts alone.
pub fn free_rank(weights: &[u32], order: u32, degree: i64) -> usize {
    (0..=order)
        .map(|p| monomial_count(weights, p) * partitions_signed(p as i64 - degree))
        .sum()
}

/// Coordinates of a series in degree `degree`, over all slices up to its order.
fn piece_coordinates<R: CoeffRing>(x: &GradedSeries<R>, degree: i64) -> Vec<BigInt> {
    (0..=x.order())
        .flat_map(|p| x.slice_coordinates(p, p as i64 - degree))
        .collect()
}

fn span_rank<R: CoeffRing>(xs: &[GradedSeries<R>], degree: i64) -> (usize, Vec<Vec<BigInt>>) {
    let rows: Vec<Vec<BigInt>> = xs.iter().map(|x| piece_coordinates(x, degree)).collect();
    let width = rows.first().map_or(0, Vec::len);
    (rank(width, rows.clone()), rows)
}

/// Lazard ranks against partition numbers and the logarithm oracle.
pub fn check_lazard_ranks(table: &LazardBasisTable) -> CriterionResult {
    let mut t = Tally::new(1, "Lazard ranks are partition numbers");
    let n = table.max_codegree();
    t.attempt(|| "table validation".into(), |t| {
        table.validate()?;
        t.check(true, String::new);
        Ok(())
    });
    let oracle = LogOracle::new(n);
    for d in 0..=n {
        let expected = partitions(d);
        t.check(table.rank(d) == expected, || {
            format!("codegree {d}: integral rank {} but p({d}) = {expected}", table.rank(d))
        });
        let images: Vec<_> = table.basis_polys(d).iter().map(|b| oracle.image_of(b)).collect();
        let rational = rational_rank(&images);
        t.check(rational == expected, || {
            format!("codegree {d}: basis spans rank {rational} in the logarithm presentation")
        });
    }
    t.note(format!("ranks {:?}", table.ranks()));
    t.finish()
}

/// Unitality, symmetry and associativity of the universal law.
pub fn check_law_axioms(table: &Arc<LazardBasisTable>, max_order: u32) -> CriterionResult {
    let mut t = Tally::new(2, "formal group law axioms");
    for order in 1..=max_order {
        t.attempt(|| format!("order {order}"), |t| {
            let law = FglTable::universal(order, table.clone())?;
            let f = law.series();
            let u = GradedSeries::var(law.ring().clone(), VarSet::named(&["u"]), order, 0);
            t.check(f.set_zero(&[1]) == u, || format!("order {order}: F(u,0) != u"));
            t.check(f.permute(&[1, 0])? == f, || format!("order {order}: F(u,v) != F(v,u)"));
            let assoc = law.check_axioms();
            t.check(assoc.is_ok(), || format!("order {order}: {}", assoc.unwrap_err()));
            Ok(())
        });
    }
    for order in 1..=max_order {
        let add = FglTable::additive(order).check_axioms();
        t.check(add.is_ok(), || format!("additive law, order {order}"));
        let mul = FglTable::multiplicative(order).check_axioms();
        t.check(mul.is_ok(), || format!("multiplicative law, order {order}"));
    }
    t.finish()
}

/// `F(u, χ(u)) = 0` and `[m+n] = F([m], [n])`.
pub fn check_inverse_and_n_series(table: &Arc<LazardBasisTable>, max_order: u32, bound: i64) -> CriterionResult {
    let mut t = Tally::new(3, "formal inverse and n-series");
    for order in 1..=max_order {
        t.attempt(|| format!("order {order}"), |t| {
            let law = FglTable::universal(order, table.clone())?;
            let chi = law.formal_inverse(order)?;
            let u = GradedSeries::var(law.ring().clone(), chi.series().vars().clone(), order, 0);
            t.check(law.sum(&u, chi.series())?.is_zero(), || format!("order {order}: F(u, χ(u)) != 0"));
            let series: Vec<_> = (-2 * bound..=2 * bound)
                .map(|k| law.n_series(k, order))
                .collect::<Result<_>>()?;
            let at = |k: i64| &series[(k + 2 * bound) as usize];
            t.check(at(-1) == &chi, || format!("order {order}: [-1] != χ"));
            for m in -bound..=bound {
                for n in -bound..=bound {
                    let lhs = law.sum(at(m).series(), at(n).series())?;
                    t.check(&lhs == at(m + n).series(), || {
                        format!("order {order}: F([{m}], [{n}]) != [{}]", m + n)
                    });
                }
            }
            Ok(())
        });
    }
    t.finish()
}

fn random_element(ring: &LazardRing, rng: &mut ChaCha8Rng, max_codegree: usize) -> crate::lazard::LazardElement {
    let table = ring.table();
    let c = rng.gen_range(0..=max_codegree.min(table.max_codegree()));
    let coords = (0..table.rank(c)).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    table.element(c, coords).expect("coordinates match the rank")
}

fn random_series(
    ring: &LazardRing,
    vars: &Arc<VarSet>,
    order: u32,
    rng: &mut ChaCha8Rng,
) -> GradedSeries<LazardRing> {
    let monos: Vec<Vec<u32>> = (0..=order)
        .flat_map(|p| vars.monomials_of_degree(p))
        .map(|m| m.exps().to_vec())
        .collect();
    let count = rng.gen_range(0..=6);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, random_element(ring, rng, 3))
        })
        .collect();
    GradedSeries::from_terms(ring.clone(), vars.clone(), order, terms)
}

/// The ring laws of the graded power series rings at truncation.
pub fn check_series_laws(ring: &LazardRing, max_rank: usize, max_order: u32, config: &CheckConfig) -> CriterionResult {
    let mut t = Tally::new(4, "graded power series laws");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 4);
    for n in 1..=max_rank {
        let vars = VarSet::chern_roots(n);
        for d in 0..=max_order {
            for s in 0..config.samples {
                let case = move || format!("n={n} D={d} sample {s}");
                let x = random_series(ring, &vars, d, &mut rng);
                let y = random_series(ring, &vars, d, &mut rng);
                let z = random_series(ring, &vars, d, &mut rng);
                let k = rng.gen_range(0..n);
                t.attempt(case, |t| series_laws_case(t, &x, &y, &z, k));
            }
        }
    }
    t.finish()
}

fn series_laws_case(
    t: &mut Tally,
    x: &GradedSeries<LazardRing>,
    y: &GradedSeries<LazardRing>,
    z: &GradedSeries<LazardRing>,
    k: usize,
) -> Result<()> {
    let ring = x.ring().clone();
    let vars = x.vars().clone();
    let (n, d) = (vars.len(), x.order());
    let case = || format!("n={n} D={d}");

    // Ring structure, with the polynomials as a subring.
    let one = GradedSeries::one(ring.clone(), vars.clone(), d);
    t.check(x.mul(&one)? == *x, || format!("{}: 1 is not a unit", case()));
    t.check(x.mul(y)? == y.mul(x)?, || format!("{}: xy != yx", case()));
    t.check(x.mul(y)?.mul(z)? == x.mul(&y.mul(z)?)?, || format!("{}: (xy)z != x(yz)", case()));
    t.check(
        x.mul(&y.add(z)?)? == x.mul(y)?.add(&x.mul(z)?)?,
        || format!("{}: x(y+z) != xy+xz", case()),
    );
    let tk = GradedSeries::var(ring.clone(), vars.clone(), d, k);
    let mut poly = one.clone();
    for e in 0..=d {
        let expected = GradedSeries::from_terms(
            ring.clone(),
            vars.clone(),
            d,
            [({
                let mut m = vec![0; n];
                m[k] = e;
                m
            }, ring.one())],
        );
        t.check(poly == expected, || format!("{}: t{}^{e} is not a monomial", case(), k + 1));
        poly = poly.mul(&tk)?;
    }

    // Splitting off the last variable.
    let (xs, ys) = (x.split_last(), y.split_last());
    t.check(GradedSeries::join_last(&xs, vars.clone(), d)? == *x, || {
        format!("{}: join(split(x)) != x", case())
    });
    let prod = x.mul(y)?.split_last();
    for (j, part) in prod.iter().enumerate() {
        let mut acc = GradedSeries::zero(ring.clone(), part.vars().clone(), d);
        for a in 0..=j {
            acc = acc.add(&xs[a].mul(&ys[j - a])?)?;
        }
        let cut = d - j as u32;
        t.check(acc.truncate(cut)? == part.truncate(cut)?, || {
            format!("{}: coefficient of t{n}^{j} in xy", case())
        });
    }

    // Quotients by variables.
    let kill = [k];
    t.check(
        x.mul(y)?.set_zero(&kill) == x.set_zero(&kill).mul(&y.set_zero(&kill))?,
        || format!("{}: killing t{} is not multiplicative", case(), k + 1),
    );
    t.check(
        x.add(y)?.set_zero(&kill) == x.set_zero(&kill).add(&y.set_zero(&kill))?,
        || format!("{}: killing t{} is not additive", case(), k + 1),
    );
    let q = x.set_zero(&kill);
    t.check(q.vars().len() == n - 1, || format!("{}: quotient has the wrong variables", case()));
    let positions: Vec<usize> = (0..n).filter(|&j| j != k).collect();
    let lifted = q.embed(vars.clone(), &positions)?;
    t.check(lifted.set_zero(&kill) == q, || format!("{}: quotient map is not onto", case()));

    // Multiplication by a variable loses only the top degree.
    let shifted = x.mul(&tk)?;
    let mut recovered = Vec::new();
    for (m, c) in shifted.terms() {
        let mut e = m.exps().to_vec();
        if e[k] > 0 {
            e[k] -= 1;
            recovered.push((e, c.clone()));
        }
    }
    let recovered = GradedSeries::from_terms(ring.clone(), vars.clone(), d, recovered);
    t.check(shifted.set_zero(&kill).is_zero(), || format!("{}: x*t{} has a term without t{}", case(), k + 1, k + 1));
    if d > 0 {
        t.check(recovered.truncate(d - 1)? == x.truncate(d - 1)?, || {
            format!("{}: x*t{} does not determine x below the top degree", case(), k + 1)
        });
    }

    // Truncation is a ring map.
    for c in 0..=d {
        t.check(
            x.mul(y)?.truncate(c)? == x.truncate(c)?.mul(&y.truncate(c)?)?,
            || format!("{}: truncation to {c} is not multiplicative", case()),
        );
    }
    Ok(())
}

/// Ranks of `Ω*(BG_m)` against the product formula.
pub fn check_torus_ranks(ring: &LazardRing, max_order: u32, degrees: &[i64]) -> CriterionResult {
    let mut t = Tally::new(5, "ranks of the rank-one torus");
    for d in 0..=max_order {
        t.attempt(|| format!("D={d}"), |t| {
            let p = ring_bt(ring.clone(), 1, d, degrees)?;
            for &i in degrees {
                let expected: usize = (0..=d).map(|q| partitions_signed(q as i64 - i)).sum();
                let got = p.rank(i).unwrap_or(0);
                t.check(got == expected, || format!("D={d} i={i}: rank {got}, expected {expected}"));
                let (independent, _) = span_rank(p.piece(i).map_or(&[][..], |x| x.basis()), i);
                t.check(independent == got, || format!("D={d} i={i}: basis is dependent"));
            }
            Ok(())
        });
    }
    t.finish()
}

/// The image of `Ω*(BGL_n)` against the `S_n`-invariants, per slice.
pub fn check_weyl_invariants(ring: &LazardRing, max_rank: usize, max_order: u32) -> CriterionResult {
    let mut t = Tally::new(6, "Weyl invariants equal the image of BGL");
    let max_codegree = max_order.min(ring.table().max_codegree() as u32) as i64;
    for n in 1..=max_rank {
        t.attempt(|| format!("n={n}"), |t| {
            let gl = ring_bgl(ring.clone(), n, max_order, &[])?;
            let window = slice_window(max_order, max_codegree);
            let inv = weyl_invariants(&PermutationGroup::symmetric(n), ring, gl.roots(), &window)?;
            let mut integral = 0;
            for c in compare_with_gl(&gl, &inv)? {
                t.check(c.rational_equal, || {
                    format!(
                        "n={n} slice ({}, {}): image rank {}, invariant rank {}",
                        c.t_degree, c.codegree, c.image_rank, c.invariant_rank
                    )
                });
                integral += usize::from(c.integral_equal);
            }
            t.note(format!("n={n}: {integral} of {} slices agree integrally", inv.len()));
            Ok(())
        });
    }
    t.finish()
}

/// `Ω*(BSL_n)` ranks, back-substitution, and exactness of
/// `0 -> (c1(det)) -> Ω*(BGL_n) -> Ω*(BSL_n) -> 0` at each truncation.
pub fn check_sl_presentations(
    table: &Arc<LazardBasisTable>,
    max_rank: usize,
    max_order: u32,
    degrees: &[i64],
) -> CriterionResult {
    let mut t = Tally::new(7, "SL presentations");
    for n in 1..=max_rank {
        let weights: Vec<u32> = (2..=n as u32).collect();
        for d in 0..=max_order {
            t.attempt(|| format!("n={n} D={d}"), |t| {
                let law = FglTable::universal(max_order.max(1), table.clone())?;
                let mut all = degrees.to_vec();
                all.extend(degrees.iter().map(|i| i - 1));
                all.sort_unstable();
                all.dedup();
                let sl = ring_bsl(&law, n, d, &all)?;
                t.check(sl.elimination().apply(sl.relation())?.is_zero(), || {
                    format!("n={n} D={d}: relation does not vanish after substitution")
                });
                let gl = sl.gl().presentation();
                for &i in degrees {
                    let expected = free_rank(&weights, d, i);
                    let got = sl.presentation().rank(i).unwrap_or(0);
                    t.check(got == expected, || format!("n={n} D={d} i={i}: rank {got}, expected {expected}"));

                    let gl_basis = gl.piece(i).map_or(&[][..], |p| p.basis());
                    let images = gl_basis
                        .iter()
                        .map(|b| sl.elimination().apply(b))
                        .collect::<Result<Vec<_>>>()?;
                    let (onto, _) = span_rank(&images, i);
                    t.check(onto == got, || format!("n={n} D={d} i={i}: quotient map has rank {onto}"));

                    let multiples = gl
                        .piece(i - 1)
                        .map_or(&[][..], |p| p.basis())
                        .iter()
                        .map(|b| b.mul(sl.relation()))
                        .collect::<Result<Vec<_>>>()?;
                    for m in &multiples {
                        t.check(sl.elimination().apply(m)?.is_zero(), || {
                            format!("n={n} D={d} i={i}: a multiple of the relation survives")
                        });
                    }
                    let (ideal, _) = span_rank(&multiples, i);
                    let total = gl.rank(i).unwrap_or(0);
                    t.check(ideal + got == total, || {
                        format!("n={n} D={d} i={i}: {ideal} + {got} != {total}")
                    });
                }
                Ok(())
            });
        }
    }
    t.finish()
}

fn binomial(n: i64, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..k as i64 {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    c
}

/// Chow and K-theory specializations.
pub fn check_specializations(table: &Arc<LazardBasisTable>, max_rank: usize, config: &CheckConfig) -> CriterionResult {
    let mut t = Tally::new(8, "specializations");
    let ring = LazardRing::new(table.clone());
    let depth = table.max_codegree() as u32;
    t.attempt(|| "setup".into(), |t| {
        let chow = make_specialization(&FglTable::additive(depth + 1), table.clone())?;
        let kth = make_specialization(&FglTable::multiplicative(depth + 1), table.clone())?;

        // Chow groups of BT_n are the polynomial ring.
        let chow_order = 6.min(depth);
        for n in 1..=max_rank {
            let degrees: Vec<i64> = (0..=chow_order as i64).collect();
            let bt = ring_bt(ring.clone(), n, chow_order, &degrees)?;
            let special = chow.apply_presentation(&bt)?;
            for &i in &degrees {
                let expected = monomial_count(&vec![1; n], i as u32);
                let got = special.rank(i).unwrap_or(0);
                t.check(got == expected, || format!("Chow BT{n} degree {i}: rank {got}, expected {expected}"));
                let images = bt
                    .piece(i)
                    .map_or(&[][..], |p| p.basis())
                    .iter()
                    .map(|b| chow.apply_series(b))
                    .collect::<Result<Vec<_>>>()?;
                let (_, rows) = span_rank(&images, i);
                let width = rows.first().map_or(0, Vec::len);
                let lattice = HermiteForm::from_rows(width, rows);
                let full = lattice.rank() == expected
                    && lattice.rows().iter().enumerate().all(|(r, row)| {
                        row.iter().enumerate().all(|(c, x)| *x == BigInt::from(i64::from(r == c)))
                    });
                t.check(full, || format!("Chow BT{n} degree {i}: L-basis does not map onto Z-basis"));
            }
        }

        // K-theory n-series.
        let order = 6.min(depth + 1);
        let law = FglTable::multiplicative(depth + 1);
        let universal = FglTable::universal(order, table.clone())?;
        for n in -4i64..=4 {
            let terms = (1..=order).map(|k| {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                (vec![k], LaurentBeta.beta_power(k as i64 - 1, binomial(n, k) * sign))
            });
            let expected = GradedSeries::from_terms(LaurentBeta, VarSet::named(&["u"]), order, terms);
            let direct = law.n_series(n, order)?;
            t.check(direct.series() == &expected, || format!("multiplicative [{n}](u) = {}", direct.series()));
            let via = kth.apply_uni(&universal.n_series(n, order)?)?;
            t.check(via.series() == &expected, || format!("specialized universal [{n}](u) = {}", via.series()));
        }

        // Specialization commutes with truncation.
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 8);
        for n in 1..=max_rank {
            let vars = VarSet::chern_roots(n);
            for s in 0..config.samples {
                let d = rng.gen_range(0..=5u32);
                let c = rng.gen_range(0..=d);
                let x = random_series(&ring, &vars, d, &mut rng);
                let y = random_series(&ring, &vars, d, &mut rng);
                let case = || format!("n={n} D={d} cut {c} sample {s}");
                commutes(t, &chow, &x, &y, c, || format!("Chow {}", case()))?;
                commutes(t, &kth, &x, &y, c, || format!("K-theory {}", case()))?;
            }
        }
        Ok(())
    });
    t.finish()
}

fn commutes<S: CoeffRing>(
    t: &mut Tally,
    map: &crate::specialize::SpecializationMap<S>,
    x: &GradedSeries<LazardRing>,
    y: &GradedSeries<LazardRing>,
    cut: u32,
    case: impl Fn() -> String,
) -> Result<()> {
    let (fx, fy) = (map.apply_series(x)?, map.apply_series(y)?);
    // The table forgets codegrees past its depth; the target does not.
    let depth = map.table().max_codegree() as i64;
    let ring = map.ring().clone();
    let known = |z: &GradedSeries<S>| {
        z.map_coefficients(ring.clone(), |c| {
            ring.codegrees(c)
                .into_iter()
                .filter(|&k| k <= depth)
                .fold(ring.zero(), |acc, k| ring.add(&acc, &ring.homogeneous_part(c, k)))
        })
    };
    t.check(
        fx.truncate(cut)? == map.apply_series(&x.truncate(cut)?)?,
        || format!("{}: truncation", case()),
    );
    t.check(
        known(&map.apply_series(&x.mul(y)?)?) == known(&fx.mul(&fy)?),
        || format!("{}: products", case()),
    );
    Ok(())
}

/// Depth of the Lazard table the checks need.
pub const CHECK_DEPTH: usize = 8;

/// Runs the selected checks with a freshly built or supplied table.
pub fn run_checks(config: &CheckConfig, table: Option<Arc<LazardBasisTable>>) -> Result<CheckReport> {
    let table = match table {
        Some(t) if t.max_codegree() >= CHECK_DEPTH => t,
        _ => Arc::new(LazardBasisTable::build(CHECK_DEPTH)?),
    };
    let ring = LazardRing::new(table.clone());
    let mut criteria = Vec::new();
    for &id in &config.criteria {
        let result = match id {
            1 => check_lazard_ranks(&table),
            2 => check_law_axioms(&table, 6),
            3 => check_inverse_and_n_series(&table, 5, 3),
            4 => check_series_laws(&ring, 3, 5, config),
            5 => check_torus_ranks(&ring, 5, &[-2, -1, 0, 1, 2]),
            6 => check_weyl_invariants(&ring, 3, 6),
            7 => check_sl_presentations(&table, 3, 5, &[-1, 0, 1, 2]),
            8 => check_specializations(&table, 3, config),
            _ => {
                return Err(crate::error::Error::InvalidInput(format!("no check numbered {id}")));
            }
        };
        criteria.push(result);
    }
    Ok(CheckReport {
        config: config.clone(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn counting_oracles() {
        let p: Vec<usize> = (0..=8).map(partitions).collect();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(monomial_count(&[1, 1, 1], 2), 6);
        assert_eq!(monomial_count(&[2, 3], 6), 2);
        assert_eq!(monomial_count(&[], 0), 1);
        assert_eq!(free_rank(&[], 3, 0), 1);
        assert_eq!(free_rank(&[1], 2, 0), 4);
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    #[test]
    fn small_run_passes() {
        let table = Arc::new(LazardBasisTable::build(4).unwrap());
        let ring = LazardRing::new(table.clone());
        let config = CheckConfig {
            samples: 2,
            ..CheckConfig::default()
        };
        assert!(check_law_axioms(&table, 4).passed);
        assert!(check_inverse_and_n_series(&table, 3, 2).passed);
        assert!(check_series_laws(&ring, 2, 3, &config).passed);
        assert!(check_torus_ranks(&ring, 2, &[-1, 0, 1]).passed);
        assert!(check_weyl_invariants(&ring, 2, 3).passed);
        assert!(check_sl_presentations(&table, 2, 3, &[0, 1]).passed);
        let r = check_specializations(&table, 2, &config);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn failures_are_recorded() {
        let mut t = Tally::new(0, "x");
        t.check(false, || "bad".into());
        t.attempt(|| "step".into(), |_| Err(crate::error::Error::NotSymmetric));
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!((r.cases, r.failed, r.failures.len()), (2, 2, 2));
    }
}
