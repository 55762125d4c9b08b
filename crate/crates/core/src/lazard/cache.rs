//! Versioned JSON cache for Lazard tables (`lazard_basis_<N>.json`).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::harvest::harvest;
use super::poly::{AMonomial, Generator};
use super::table::{column_order, CodegreePiece, LazardBasisTable};
use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::ring::{int_from_json, int_to_json};

pub const CACHE_VERSION: u32 = 1;

pub fn cache_file_name(max_codegree: usize) -> String {
    format!("lazard_basis_{max_codegree}.json")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedGenerator {
    pub i: u32,
    pub j: u32,
    pub codegree: usize,
}

/// A vector as `[monomial, coefficient]` pairs, zero entries omitted.
pub type SparseVector = Vec<(String, Value)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedBasis {
    pub codegree: usize,
    pub rank: usize,
    pub vectors: Vec<SparseVector>,
    /// Rows of the reduction map onto basis coordinates.
    pub reduction: Vec<SparseVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CacheFile {
    pub version: u32,
    pub max_codegree: usize,
    pub generators: Vec<CachedGenerator>,
    pub bases: Vec<CachedBasis>,
}

fn sparse(monomials: &[AMonomial], v: &[BigInt]) -> SparseVector {
    v.iter()
        .zip(monomials)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, m)| (m.to_string(), int_to_json(c)))
        .collect()
}

fn dense(monomials: &[AMonomial], v: &SparseVector) -> Result<IntVec> {
    let mut out = vec![BigInt::zero(); monomials.len()];
    for (m, c) in v {
        let m: AMonomial = m.parse()?;
        let k = monomials
            .iter()
            .position(|x| *x == m)
            .ok_or_else(|| Error::InvalidCache(format!("monomial {m} has the wrong codegree")))?;
        out[k] = int_from_json(c).map_err(|e| Error::InvalidCache(e.to_string()))?;
    }
    Ok(out)
}

impl LazardBasisTable {
    pub fn to_cache(&self) -> CacheFile {
        let n = self.max_codegree();
        CacheFile {
            version: CACHE_VERSION,
            max_codegree: n,
            generators: Generator::up_to(n)
                .into_iter()
                .map(|g| CachedGenerator {
                    i: g.i,
                    j: g.j,
                    codegree: g.codegree(),
                })
                .collect(),
            bases: (0..=n)
                .map(|d| {
                    let piece = self.piece(d);
                    CachedBasis {
                        codegree: d,
                        rank: self.rank(d),
                        vectors: piece.basis.iter().map(|b| sparse(&piece.monomials, b)).collect(),
                        reduction: piece
                            .reduction
                            .iter()
                            .map(|r| sparse(&piece.monomials, r))
                            .collect(),
                    }
                })
                .collect(),
        }
    }

    /// Rebuilds a table from a cache file, re-harvesting the relations and
    /// validating every table invariant before returning it.
    pub fn from_cache(cache: &CacheFile) -> Result<Self> {
        if cache.version != CACHE_VERSION {
            return Err(Error::InvalidCache(format!(
                "version {} (expected {CACHE_VERSION})",
                cache.version
            )));
        }
        let n = cache.max_codegree;
        let expected: Vec<CachedGenerator> = Generator::up_to(n)
            .into_iter()
            .map(|g| CachedGenerator {
                i: g.i,
                j: g.j,
                codegree: g.codegree(),
            })
            .collect();
        if cache.generators != expected {
            return Err(Error::InvalidCache("generator list does not match maxCodegree".into()));
        }
        if cache.bases.len() != n + 1 {
            return Err(Error::InvalidCache("one basis entry per codegree expected".into()));
        }
        let mut pieces = Vec::with_capacity(n + 1);
        for (d, entry) in cache.bases.iter().enumerate() {
            if entry.codegree != d
                || entry.rank != entry.vectors.len()
                || entry.rank != entry.reduction.len()
            {
                return Err(Error::InvalidCache(format!("codegree {d}: inconsistent entry")));
            }
            let monomials = column_order(AMonomial::of_codegree(d));
            let basis = entry
                .vectors
                .iter()
                .map(|v| dense(&monomials, v))
                .collect::<Result<Vec<_>>>()?;
            let reduction = entry
                .reduction
                .iter()
                .map(|v| dense(&monomials, v))
                .collect::<Result<Vec<_>>>()?;
            pieces.push(CodegreePiece::new(monomials, reduction, basis));
        }
        let table = LazardBasisTable::assemble(n, pieces, harvest(n));
        table.validate()?;
        Ok(table)
    }

    pub fn to_cache_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_cache()).expect("cache serializes")
    }

    pub fn from_cache_json(text: &str) -> Result<Self> {
        let cache: CacheFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidCache(e.to_string()))?;
        Self::from_cache(&cache)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip_preserves_the_table() {
        let t = LazardBasisTable::build(5).unwrap();
        let text = t.to_cache_json();
        let back = LazardBasisTable::from_cache_json(&text).unwrap();
        assert_eq!(back.fingerprint(), t.fingerprint());
        assert_eq!(back.ranks(), t.ranks());
        assert_eq!(back.to_cache_json(), text);
    }

    #[test]
    fn corrupted_cache_is_refused() {
        let t = LazardBasisTable::build(3).unwrap();
        let mut cache = t.to_cache();
        cache.bases[2].vectors[0][0].1 = Value::from(7);
        assert!(matches!(
            LazardBasisTable::from_cache(&cache),
            Err(Error::InvalidCache(_))
        ));
        let mut cache = t.to_cache();
        cache.version = 99;
        assert!(LazardBasisTable::from_cache(&cache).is_err());
        assert!(LazardBasisTable::from_cache_json("{not json").is_err());
    }
}
