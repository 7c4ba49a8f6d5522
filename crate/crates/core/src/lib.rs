//! Exact computation of the first Galois cohomology set of a connected
//! reductive group over the real numbers.
//!
//! Everything reduces to finite linear algebra: a lattice with an
//! involution describes a real torus, a root datum with a chosen real
//! form describes a reductive group, and the cohomology set is the
//! orbit set of a finite affine action on a mod-2 vector space. All
//! arithmetic is exact (arbitrary-precision integers and mod-2 words),
//! and every enumeration reports canonical representatives so repeated
//! runs agree bit for bit.

pub mod catalog;
pub mod error;
pub mod f2;
pub mod h1core;
pub mod mat;
pub mod oracles;
pub mod realform;
pub mod rootdata;
pub mod torus;
pub mod zc2lat;

pub use error::{Error, Result};
pub use h1core::{AffineF2Map, GaloisH1Result, H1Options};
pub use mat::{IntMatrix, IntVec};
pub use realform::{CocycleTable, RealFormSpec};
pub use rootdata::{RootDatum, WeylElement};
pub use torus::{RealTorus, TorusClass, TorusPart};
pub use zc2lat::{DecompositionReport, InvolutiveLattice, Sign};
