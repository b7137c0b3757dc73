//! Finite simplicial complexes, abstract chain complexes, edge-path
//! fundamental group presentations, coset enumeration, and finite universal
//! covers with their deck actions.

mod chain;
mod coset;
mod cover;
mod group;
mod presentation;
mod simplicial;

pub use chain::{tensor_complex, IntegerChainComplex};
pub use coset::{todd_coxeter, CosetTable};
pub use cover::{
    equivariant_of_simplicial, universal_cover, CoveringComplex, EquivariantComplex,
    EquivariantKind,
};
pub use group::GroupTable;
pub use presentation::{fundamental_group, FundamentalGroupData, GroupPresentation, Word};
pub use simplicial::SimplicialComplex;
