//! The Lazard ring in codegrees `0..=N`.
//!
//! `L` is `Z[A_ij]` modulo the relations forcing `u + v + sum A_ij u^i v^j`
//! to be a commutative, associative formal group law. A table records, for
//! every codegree `d`, an integral basis of `L_{-d}` as explicit
//! `a`-monomial combinations together with the reduction map from
//! `Z[A]_d`. The ranks are the partition numbers.

mod cache;
mod element;
mod harvest;
mod log;
mod poly;
mod table;

pub use cache::{cache_file_name, CacheFile, CachedBasis, CachedGenerator, CACHE_VERSION};
pub use element::{LazardElement, LazardRing};
pub use harvest::{associativity_defects, harvest};
pub use log::{rational_rank, LogOracle, LogPoly};
pub use poly::{AMonomial, APoly, Generator};
pub use table::{BuildOptions, LazardBasisTable};

use std::sync::Arc;

use crate::error::Result;

/// Builds the table and wraps it as a shared coefficient ring.
pub fn build_lazard_ring(max_codegree: usize) -> Result<LazardRing> {
    Ok(LazardRing::new(Arc::new(LazardBasisTable::build(max_codegree)?)))
}
