//! Exact arithmetic for the Lazard ring, formal group laws, graded power
//! series rings and the cobordism rings of `BT`, `BGL_n` and `BSL_n`.

pub mod checks;
pub mod classifying;
pub mod error;
pub mod fgl;
pub mod gps;
pub mod lattice;
pub mod lazard;
pub mod ring;
pub mod specialize;

pub use error::{Error, Result};
pub use fgl::{FglTable, LawKind, UniSeries};
pub use gps::{GradedSeries, VarSet};
pub use lazard::{LazardBasisTable, LazardElement, LazardRing};
pub use ring::{CoeffRing, Integers, Laurent, LaurentBeta};
pub use classifying::{GlRing, RingPresentation, SlRing};
pub use specialize::{make_specialization, SpecializationMap};
