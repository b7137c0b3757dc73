//! Exact homological linear algebra: Smith normal form over Z, integral
//! homology with torsion, twisted Betti numbers over `Q(zeta_l)`, field
//! cohomology, induced maps on H_2, and invariant subspaces of group
//! actions.

mod field;
mod integral;

pub use field::{
    betti_over_fp, betti_twisted, cohomology_field, cohomology_field_cyc,
    induced_cohomology_map, invariant_subspace_cyc, invariant_subspace_fp, FpCohomology,
};
pub use integral::{
    homology_integral, homology_presentation, induced_map_h2, quotient_by_image, HomologyPresentation,
    InducedMap,
};

use std::fmt;

use num_bigint::BigInt;

use crate::linalg::{smith_with_options, IntMatrix, Snf, SnfOptions};

/// `u * a * v = d`: the Smith decomposition with unimodular transforms.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    /// The nonzero diagonal, positive, each dividing the next.
    pub diag: Vec<BigInt>,
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let Snf {
        d, rank, diag, u, v, ..
    } = smith_with_options(
        a,
        SnfOptions {
            u: true,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    );
    SmithDecomposition {
        u: u.unwrap(),
        d,
        v: v.unwrap(),
        rank,
        diag,
    }
}

/// A finitely generated abelian group in Smith-canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Torsion coefficients, each > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which coefficients a homology summary was computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldLabel {
    Integer,
    Fp(u64),
    Cyclotomic(u64),
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldLabel::Integer => write!(f, "Z"),
            FieldLabel::Fp(p) => write!(f, "F_{p}"),
            FieldLabel::Cyclotomic(l) => write!(f, "Q(zeta_{l})"),
        }
    }
}

/// Per-dimension homology groups. Torsion lists are empty for field
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologySummary {
    pub field: FieldLabel,
    pub groups: Vec<AbelianGroup>,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.free_rank).collect()
    }

    /// Alternating sum of the ranks (equals the Euler characteristic for
    /// field coefficients).
    pub fn euler_sum(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let r = g.free_rank as i64;
                if k % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// The machine-readable line `H k = ...`.
    pub fn machine_line(&self, k: usize) -> String {
        format!("H.{k}={}", self.groups[k])
    }
}
