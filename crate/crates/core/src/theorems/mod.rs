//! Executable forms of the topological results: the Hurewicz criterion and
//! Hopf sequence through finite covers, bar-resolution group cohomology,
//! Cartan-Leray bookkeeping, the loop-space local-system census, the
//! H-space obstruction, the explicit vanishing witness, and the shuffle
//! product.

pub mod bar;
pub mod cartan_leray;
pub mod census;
pub mod condition_c;
pub mod hurewicz;
pub mod obstruction;
pub mod shuffle;
pub mod vanishing;

pub use bar::{
    bar_group_cohomology, bar_h2_integral, integer_nerve_complex, twisted_nerve_complex,
    BarCochainSpace,
};
pub use cartan_leray::{cartan_leray_report, CartanLerayReport};
pub use census::{loop_census, CensusReport};
pub use condition_c::{condition_c_check, ConditionCReport, ConditionCVerdict};
pub use hurewicz::{hopf_h2_group, hurewicz_nonzero, HurewiczReport};
pub use obstruction::{
    search_obstruction, verify_certificate, ObstructionCertificate, ObstructionOutcome,
};
pub use shuffle::{bar_boundary_chain, shuffle_product, TwistedBarChain};
pub use vanishing::{vanishing_witness, VanishingWitness};
