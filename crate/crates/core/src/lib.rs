//! Exact computation of homology with rank-1 local coefficients on finite
//! complexes, together with the topological machinery that feeds on it:
//! fundamental group presentations, finite universal covers, group cohomology
//! via the normalized bar resolution, the Cartan-Leray and Hopf bookkeeping,
//! H-space obstructions, and the explicit vanishing witness for twisted bar
//! homology of abelian groups.
//!
//! All arithmetic is exact: arbitrary-precision rationals, cyclotomic fields
//! `Q(zeta_l)` for prime `l`, and integer Smith normal forms. There is no
//! floating point anywhere in this crate.

pub mod arith;
pub mod catalog;
pub mod complexes;
pub mod config;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod local_systems;
pub mod theorems;
pub mod util;

pub use arith::{CyclotomicNumber, Rational, RootOfUnity};
pub use num_bigint::BigInt;
pub use catalog::{Builtin, SpaceObject};
pub use complexes::{
    fundamental_group, todd_coxeter, universal_cover, CosetTable, CoveringComplex,
    EquivariantComplex, FundamentalGroupData, GroupPresentation, GroupTable,
    IntegerChainComplex, SimplicialComplex, Word,
};
pub use error::Error;
pub use homology::{AbelianGroup, HomologySummary, SmithDecomposition};
pub use config::RunConfig;
pub use local_systems::{
    enumerate_local_systems, GroupRingComplex, GroupRingMatrix, LocalSystem, TwistedChainComplex,
};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
