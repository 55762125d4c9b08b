//! Canonical integral bases of the Lazard ring, codegree by codegree.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::element::LazardElement;
use super::harvest::harvest;
use super::poly::{AMonomial, APoly, Generator};
use crate::error::{Error, Result};
use crate::lattice::{dot, integer_kernel, right_inverse, HermiteForm, IntVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Upper bound on `rows * columns` of any per-codegree relation matrix.
    pub max_matrix_entries: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_matrix_entries: 20_000_000,
        }
    }
}

/// The free module `Z[A]_d`, the quotient map onto `L_{-d}` and its basis.
#[derive(Debug, Clone)]
pub(crate) struct CodegreePiece {
    pub(crate) monomials: Vec<AMonomial>,
    index: HashMap<AMonomial, usize>,
    /// `rank x monomials`; rows are the Hermite basis of the integer
    /// functionals vanishing on the relations.
    pub(crate) reduction: Vec<IntVec>,
    /// Basis lifts in monomial coordinates: `reduction * basis[k] = e_k`.
    pub(crate) basis: Vec<IntVec>,
}

impl CodegreePiece {
    pub(crate) fn new(monomials: Vec<AMonomial>, reduction: Vec<IntVec>, basis: Vec<IntVec>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        CodegreePiece {
            monomials,
            index,
            reduction,
            basis,
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn to_vec(&self, p: &APoly) -> IntVec {
        let mut v = vec![BigInt::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] += c;
        }
        v
    }

    pub(crate) fn to_poly(&self, v: &[BigInt]) -> APoly {
        APoly::from_terms(
            v.iter()
                .zip(&self.monomials)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (m.clone(), c.clone())),
        )
    }

    fn reduce(&self, v: &[BigInt]) -> IntVec {
        self.reduction.iter().map(|row| dot(row, v)).collect()
    }
}

/// Column order for elimination: pivots fall on the earliest columns, so
/// monomials involving `a_ij` with `i > j` come first and products of
/// generators come last. Basis representatives therefore prefer `a_ij`
/// with `i <= j` and decomposable monomials.
pub(crate) fn column_order(mut monomials: Vec<AMonomial>) -> Vec<AMonomial> {
    monomials.sort_by(|a, b| {
        (!a.has_swapped(), a.degree(), std::cmp::Reverse(a))
            .cmp(&(!b.has_swapped(), b.degree(), std::cmp::Reverse(b)))
    });
    monomials
}

/// Per-codegree canonical integral bases of the Lazard ring up to a fixed
/// codegree, with the reduction map from `Z[A_ij]` and the multiplication
/// table. Immutable once built.
#[derive(Debug)]
pub struct LazardBasisTable {
    max_codegree: usize,
    fingerprint: u64,
    pieces: Vec<CodegreePiece>,
    relations: Vec<Vec<APoly>>,
    /// `(d1, d2)` with `d1 <= d2`: coordinates of `basis_i(d1) * basis_j(d2)`.
    products: BTreeMap<(usize, usize), Vec<Vec<IntVec>>>,
}

impl LazardBasisTable {
    pub fn build(max_codegree: usize) -> Result<Self> {
        Self::build_with(max_codegree, BuildOptions::default())
    }

    pub fn build_with(max_codegree: usize, options: BuildOptions) -> Result<Self> {
        let relations = harvest(max_codegree);
        let generators = Generator::up_to(max_codegree);
        let mut ideals: Vec<HermiteForm> = Vec::with_capacity(max_codegree + 1);
        let mut pieces: Vec<CodegreePiece> = Vec::with_capacity(max_codegree + 1);

        for d in 0..=max_codegree {
            let monomials = column_order(AMonomial::of_codegree(d));
            let width = monomials.len();
            let piece = CodegreePiece::new(monomials, Vec::new(), Vec::new());

            let mut rows: Vec<IntVec> = relations[d].iter().map(|r| piece.to_vec(r)).collect();
            for g in generators.iter().filter(|g| g.codegree() <= d) {
                let lower = d - g.codegree();
                let gm = AMonomial::generator(*g);
                for row in ideals[lower].rows() {
                    let p = pieces[lower].to_poly(row).mul_monomial(&gm);
                    rows.push(piece.to_vec(&p));
                }
            }
            if rows.len() * width > options.max_matrix_entries {
                return Err(Error::ResourceLimit {
                    codegree: d,
                    rows: rows.len(),
                    cols: width,
                    limit: options.max_matrix_entries,
                });
            }

            let ideal = HermiteForm::from_rows(width, rows);
            let annihilator = integer_kernel(ideal.rows(), width);
            let reduction = annihilator.rows().to_vec();
            let saturation = integer_kernel(&reduction, width);
            if !ideal.contains_lattice(&saturation) {
                return Err(Error::NotSaturated { codegree: d });
            }
            let mut basis =
                right_inverse(&reduction, width).ok_or(Error::NotSaturated { codegree: d })?;
            for b in basis.iter_mut() {
                ideal.reduce(b);
            }
            pieces.push(CodegreePiece::new(piece.monomials, reduction, basis));
            ideals.push(ideal);
        }

        Ok(Self::assemble(max_codegree, pieces, relations))
    }

    /// Finishes a table from its pieces: multiplication table and fingerprint.
    pub(crate) fn assemble(
        max_codegree: usize,
        pieces: Vec<CodegreePiece>,
        relations: Vec<Vec<APoly>>,
    ) -> Self {
        let mut products = BTreeMap::new();
        for d1 in 0..=max_codegree {
            for d2 in d1..=max_codegree - d1 {
                let target = &pieces[d1 + d2];
                let table: Vec<Vec<IntVec>> = pieces[d1]
                    .basis
                    .iter()
                    .map(|bi| {
                        let pi = pieces[d1].to_poly(bi);
                        pieces[d2]
                            .basis
                            .iter()
                            .map(|bj| {
                                let prod = pi.mul(&pieces[d2].to_poly(bj));
                                target.reduce(&target.to_vec(&prod))
                            })
                            .collect()
                    })
                    .collect();
                products.insert((d1, d2), table);
            }
        }

        let mut hasher = DefaultHasher::new();
        max_codegree.hash(&mut hasher);
        for p in &pieces {
            for m in &p.monomials {
                m.to_string().hash(&mut hasher);
            }
            p.reduction.hash(&mut hasher);
            p.basis.hash(&mut hasher);
        }

        LazardBasisTable {
            max_codegree,
            fingerprint: hasher.finish(),
            pieces,
            relations,
            products,
        }
    }

    pub fn max_codegree(&self) -> usize {
        self.max_codegree
    }

    /// Identifies the table; elements carry it to detect mixing.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn rank(&self, codegree: usize) -> usize {
        self.pieces.get(codegree).map_or(0, CodegreePiece::rank)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(CodegreePiece::rank).collect()
    }

    /// Spanning monomials of `Z[A]` in codegree `d`, in column order.
    pub fn monomials(&self, codegree: usize) -> &[AMonomial] {
        &self.pieces[codegree].monomials
    }

    /// Basis elements of codegree `d` as `a`-monomial combinations.
    pub fn basis_polys(&self, codegree: usize) -> Vec<APoly> {
        let piece = &self.pieces[codegree];
        piece.basis.iter().map(|b| piece.to_poly(b)).collect()
    }

    /// Reduction map of codegree `d` as rows of functionals on the monomials.
    pub fn reduction_rows(&self, codegree: usize) -> &[IntVec] {
        &self.pieces[codegree].reduction
    }

    /// Harvested relations of codegree `d` (commutativity, then associativity).
    pub fn relations(&self, codegree: usize) -> &[APoly] {
        &self.relations[codegree]
    }

    pub(crate) fn piece(&self, codegree: usize) -> &CodegreePiece {
        &self.pieces[codegree]
    }

    pub fn zero(&self) -> LazardElement {
        LazardElement::zero(self.fingerprint, self.max_codegree)
    }

    pub fn one(&self) -> LazardElement {
        self.basis_element(0, 0)
    }

    pub fn from_int(&self, n: &BigInt) -> LazardElement {
        self.one().scale(n)
    }

    /// The `k`-th canonical basis element of codegree `d`.
    pub fn basis_element(&self, codegree: usize, k: usize) -> LazardElement {
        let mut coords = vec![BigInt::zero(); self.rank(codegree)];
        coords[k] = BigInt::one();
        LazardElement::from_parts(
            self.fingerprint,
            self.max_codegree,
            BTreeMap::from([(codegree, coords)]),
            false,
        )
    }

    /// Element with the given coordinates in the codegree-`d` basis.
    pub fn element(&self, codegree: usize, coords: Vec<BigInt>) -> Result<LazardElement> {
        if codegree > self.max_codegree {
            return Err(Error::InsufficientTable {
                required: codegree,
                available: self.max_codegree,
            });
        }
        if coords.len() != self.rank(codegree) {
            return Err(Error::InvalidInput(format!(
                "codegree {codegree} has rank {}, got {} coordinates",
                self.rank(codegree),
                coords.len()
            )));
        }
        Ok(LazardElement::from_parts(
            self.fingerprint,
            self.max_codegree,
            BTreeMap::from([(codegree, coords)]),
            false,
        ))
    }

    /// Canonical coordinates of an integer combination of `a`-monomials.
    /// Terms past the table depth are dropped and flagged.
    pub fn normalize(&self, expr: &APoly) -> LazardElement {
        let mut parts = BTreeMap::new();
        let mut truncated = false;
        for d in expr.codegrees() {
            if d > self.max_codegree {
                truncated = true;
                continue;
            }
            let piece = &self.pieces[d];
            parts.insert(d, piece.reduce(&piece.to_vec(&expr.homogeneous_part(d))));
        }
        LazardElement::from_parts(self.fingerprint, self.max_codegree, parts, truncated)
    }

    /// The class of `a_ij`.
    pub fn generator(&self, i: u32, j: u32) -> LazardElement {
        self.normalize(&APoly::generator(i, j))
    }

    pub fn mul(&self, x: &LazardElement, y: &LazardElement) -> Result<LazardElement> {
        self.check(x)?;
        self.check(y)?;
        let mut parts: BTreeMap<usize, IntVec> = BTreeMap::new();
        let mut truncated = x.is_truncated() || y.is_truncated();
        for (&dx, cx) in x.parts() {
            for (&dy, cy) in y.parts() {
                let d = dx + dy;
                if d > self.max_codegree {
                    truncated = true;
                    continue;
                }
                let (lo, hi, clo, chi) = if dx <= dy {
                    (dx, dy, cx, cy)
                } else {
                    (dy, dx, cy, cx)
                };
                let table = &self.products[&(lo, hi)];
                let acc = parts
                    .entry(d)
                    .or_insert_with(|| vec![BigInt::zero(); self.rank(d)]);
                for (i, a) in clo.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in chi.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let ab = a * b;
                        for (slot, t) in acc.iter_mut().zip(&table[i][j]) {
                            if !t.is_zero() {
                                *slot += &ab * t;
                            }
                        }
                    }
                }
            }
        }
        Ok(LazardElement::from_parts(
            self.fingerprint,
            self.max_codegree,
            parts,
            truncated,
        ))
    }

    fn check(&self, x: &LazardElement) -> Result<()> {
        if x.table_id() != self.fingerprint {
            return Err(Error::MismatchedTable);
        }
        Ok(())
    }

    /// The element as a combination of `a`-monomials, `sum coords * basis`.
    pub fn representative(&self, x: &LazardElement) -> APoly {
        let mut out = APoly::zero();
        for (&d, coords) in x.parts() {
            let piece = &self.pieces[d];
            let mut v = vec![BigInt::zero(); piece.monomials.len()];
            for (c, b) in coords.iter().zip(&piece.basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, e) in v.iter_mut().zip(b) {
                    *slot += c * e;
                }
            }
            out.add_assign(&piece.to_poly(&v));
        }
        out
    }

    pub fn format(&self, x: &LazardElement) -> String {
        self.representative(x).to_string()
    }

    /// Checks the table invariants: unit ranks in codegrees 0 and 1, the
    /// reduction map inverts the basis lifts, and every harvested relation
    /// reduces to zero.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidCache(msg));
        if self.rank(0) != 1 {
            return fail("rank in codegree 0 must be 1".into());
        }
        if self.max_codegree >= 1 && self.rank(1) != 1 {
            return fail("rank in codegree 1 must be 1".into());
        }
        for (d, piece) in self.pieces.iter().enumerate() {
            if piece.reduction.len() != piece.basis.len() {
                return fail(format!("codegree {d}: reduction and basis sizes differ"));
            }
            for (k, b) in piece.basis.iter().enumerate() {
                let image = piece.reduce(b);
                for (i, x) in image.iter().enumerate() {
                    let expected = if i == k { BigInt::one() } else { BigInt::zero() };
                    if *x != expected {
                        return fail(format!("codegree {d}: reduction does not invert basis {k}"));
                    }
                }
            }
            for (k, rel) in self.relations[d].iter().enumerate() {
                if piece.reduce(&piece.to_vec(rel)).iter().any(|x| !x.is_zero()) {
                    return fail(format!("codegree {d}: relation {k} does not reduce to zero"));
                }
            }
        }
        Ok(())
    }
}
