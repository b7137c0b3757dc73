//! The normalized bar complex of a finite group (the nerve of the group as
//! a simplicial set, nondegenerate cells only), twisted by a character, and
//! low-degree group cohomology computed from it.
//!
//! The sign and twisting convention is fixed so that the literal formula
//! `d(x (x) gamma) = (1 - g^{-1}) (x) e` holds for a 1-cell with holonomy
//! `g` (locked by a golden test), which puts the character on the last
//! face:
//!
//! ```text
//! d[g_1|...|g_k] = [g_2|...|g_k]
//!                + sum_{i=1}^{k-1} (-1)^i [g_1|...|g_i g_{i+1}|...|g_k]
//!                + (-1)^k  zeta^{-chi(g_k)} [g_1|...|g_{k-1}]
//! ```
//!
//! with tuples containing the identity dropped.

use num_bigint::BigInt;

use crate::arith::{is_prime, CyclotomicNumber};
use crate::complexes::{GroupTable, IntegerChainComplex};
use crate::error::Error;
use crate::linalg::{CycMatrix, FpSparseEliminator, IntMatrix};
use crate::local_systems::TwistedChainComplex;
use crate::Result;

/// Checks that `chi` is a homomorphism `G -> Z/l` given per element.
pub fn validate_character(g: &GroupTable, chi: &[u64], ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if chi.len() != g.order() {
        return Err(Error::InvalidInput(format!(
            "character has {} values for a group of order {}",
            chi.len(),
            g.order()
        )));
    }
    if chi[0] % ell != 0 {
        return Err(Error::InvalidInput("character of the identity must be 0".into()));
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if chi[g.mul(x, y)] % ell != (chi[x] + chi[y]) % ell {
                return Err(Error::InvalidInput(
                    "character is not a homomorphism".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Number of nondegenerate k-cells: `(|G| - 1)^k`.
pub fn bar_cells(g: &GroupTable, k: usize) -> usize {
    (g.order() - 1).pow(k as u32)
}

/// The normalized cochain space `(G \ e)^k -> F_l` of the bar resolution.
#[derive(Debug, Clone)]
pub struct BarCochainSpace {
    pub group_order: usize,
    pub degree: usize,
    pub ell: u64,
}

impl BarCochainSpace {
    pub fn new(g: &GroupTable, degree: usize, ell: u64) -> Self {
        BarCochainSpace {
            group_order: g.order(),
            degree,
            ell,
        }
    }

    pub fn dimension(&self) -> usize {
        (self.group_order - 1).pow(self.degree as u32)
    }
}

fn tuple_index(m: usize, tuple: &[usize]) -> usize {
    let mut acc = 0usize;
    for &g in tuple {
        acc = acc * m + (g - 1);
    }
    acc
}

/// Sparse columns of the twisted bar differential `d_k` over `Z[zeta_l]`
/// coordinates, visited in lexicographic tuple order.
fn bar_columns(
    g: &GroupTable,
    chi: &[u64],
    ell: u64,
    k: usize,
    mut emit: impl FnMut(Vec<(usize, Vec<i128>)>),
) {
    let n = g.order();
    let m = n - 1;
    let d = (ell - 1) as usize;
    let dim_k = m.pow(k as u32);
    let mut tuple = vec![1usize; k];
    for _ in 0..dim_k {
        let mut entries: Vec<(usize, Vec<i128>)> = Vec::with_capacity(k + 2);
        let mut add = |row: usize, exp: u64, sign: i128| {
            // coefficient sign * zeta^exp in canonical coordinates
            let mut c = vec![0i128; d];
            let e = (exp % ell) as usize;
            if e == d {
                for x in c.iter_mut() {
                    *x = -sign;
                }
            } else {
                c[e] = sign;
            }
            entries.push((row, c));
        };
        // face 0 drops the first letter
        add(tuple_index(m, &tuple[1..]), 0, 1);
        // middle faces merge adjacent letters; merged identities drop out
        for i in 1..k {
            let p = g.mul(tuple[i - 1], tuple[i]);
            if p != 0 {
                let mut face = Vec::with_capacity(k - 1);
                face.extend_from_slice(&tuple[..i - 1]);
                face.push(p);
                face.extend_from_slice(&tuple[i + 1..]);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                add(tuple_index(m, &face), 0, sign);
            }
        }
        // last face carries the character, inverted
        {
            let e = (ell - chi[tuple[k - 1]] % ell) % ell;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            add(tuple_index(m, &tuple[..k - 1]), e, sign);
        }
        // combine duplicate rows
        entries.sort_by_key(|(r, _)| *r);
        let mut merged: Vec<(usize, Vec<i128>)> = Vec::new();
        for (r, c) in entries {
            match merged.last_mut() {
                Some((lr, lc)) if *lr == r => {
                    for (x, y) in lc.iter_mut().zip(c) {
                        *x += y;
                    }
                }
                _ => merged.push((r, c)),
            }
        }
        merged.retain(|(_, c)| c.iter().any(|&x| x != 0));
        emit(merged);
        for slot in (0..k).rev() {
            if tuple[slot] < m {
                tuple[slot] += 1;
                break;
            }
            tuple[slot] = 1;
        }
    }
}

/// The twisted bar complex up to `max_degree`, as a chain complex over
/// `Q(zeta_l)`. Validates the character and `d . d = 0`.
pub fn twisted_nerve_complex(
    g: &GroupTable,
    chi: &[u64],
    ell: u64,
    max_degree: usize,
) -> Result<TwistedChainComplex> {
    validate_character(g, chi, ell)?;
    if max_degree == 0 {
        return Ok(TwistedChainComplex::degree_zero(ell, 1));
    }
    let m = g.order() - 1;
    let d = (ell - 1) as usize;
    let mut matrices = Vec::new();
    for k in 1..=max_degree {
        let rows = m.pow(k as u32 - 1);
        let mut columns = Vec::with_capacity(m.pow(k as u32));
        bar_columns(g, chi, ell, k, |col| {
            let entries: Vec<(usize, CyclotomicNumber)> = col
                .into_iter()
                .map(|(r, coords)| {
                    let coeffs = coords
                        .iter()
                        .map(|&x| crate::arith::Rational::from_integer(BigInt::from(x)))
                        .collect();
                    (r, CyclotomicNumber::new(ell, coeffs).expect("coords sized"))
                })
                .collect();
            columns.push(entries);
        });
        let _ = d;
        matrices.push(CycMatrix::from_columns(ell, rows, columns));
    }
    TwistedChainComplex::new(ell, matrices)
}

/// The integer bar complex (trivial character) up to `max_degree`, with
/// nerve cell labels.
pub fn integer_nerve_complex(g: &GroupTable, max_degree: usize) -> Result<IntegerChainComplex> {
    let n = g.order();
    let m = n - 1;
    let chi = vec![0u64; n];
    let mut boundaries = Vec::new();
    for k in 1..=max_degree {
        let rows = m.pow(k as u32 - 1);
        let cols = m.pow(k as u32);
        let mut mat = IntMatrix::zero(rows, cols);
        let mut j = 0usize;
        bar_columns(g, &chi, 2, k, |col| {
            for (r, coords) in col {
                mat.add_assign_at(r, j, &BigInt::from(coords[0]));
            }
            j += 1;
        });
        boundaries.push(mat);
    }
    let labels: Vec<Vec<String>> = (0..=max_degree)
        .map(|k| {
            let mut ls = Vec::with_capacity(m.pow(k as u32));
            let mut tuple = vec![1usize; k];
            for _ in 0..m.pow(k as u32) {
                let parts: Vec<String> = tuple.iter().map(|t| t.to_string()).collect();
                ls.push(format!("[{}]", parts.join("|")));
                for slot in (0..k).rev() {
                    if tuple[slot] < m {
                        tuple[slot] += 1;
                        break;
                    }
                    tuple[slot] = 1;
                }
            }
            ls
        })
        .collect();
    IntegerChainComplex::new(boundaries, labels)
}

/// `dim H^k(G; F_l)` for trivial action, from the normalized bar
/// resolution, `k <= degree_cap`, `|G| <= group_cap`.
pub fn bar_group_cohomology(
    g: &GroupTable,
    ell: u64,
    k: usize,
    group_cap: usize,
    degree_cap: usize,
) -> Result<usize> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if g.order() > group_cap {
        return Err(Error::CapExceeded {
            what: format!("group of order {}", g.order()),
            cap: group_cap,
        });
    }
    if k > degree_cap {
        return Err(Error::CapExceeded {
            what: format!("cohomology degree {k}"),
            cap: degree_cap,
        });
    }
    // over a field, dim H^k = dim H_k = dim C_k - rank d_k - rank d_{k+1}
    let m = g.order() - 1;
    let chi = vec![0u64; g.order()];
    let rank_mod = |kk: usize| -> usize {
        if kk == 0 || m == 0 {
            return 0;
        }
        let width = m.pow(kk as u32 - 1);
        let cap = if kk == 1 {
            1
        } else {
            // rank d_kk <= dim ker d_{kk-1}; computed below recursively would
            // be wasteful, so use the full width here (these are small).
            width
        };
        let mut elim = FpSparseEliminator::new(ell, width);
        bar_columns(g, &chi, ell, kk, |col| {
            if elim.rank() == cap {
                return;
            }
            let row: Vec<(u32, u64)> = col
                .into_iter()
                .map(|(r, coords)| {
                    let v = coords[0].rem_euclid(ell as i128) as u64;
                    (r as u32, v)
                })
                .filter(|&(_, v)| v != 0)
                .collect();
            elim.insert(row);
        });
        elim.rank()
    };
    let dim_k = m.pow(k as u32);
    let r_k = rank_mod(k);
    let r_k1 = rank_mod(k + 1);
    Ok(dim_k - r_k - r_k1)
}

/// Integral `H_2(G; Z)` (the Schur multiplier for perfect comparisons) from
/// the integer bar complex.
pub fn bar_h2_integral(g: &GroupTable, group_cap: usize) -> Result<crate::homology::AbelianGroup> {
    if g.order() > group_cap {
        return Err(Error::CapExceeded {
            what: format!("group of order {}", g.order()),
            cap: group_cap,
        });
    }
    let c = integer_nerve_complex(g, 3)?;
    let pres = crate::homology::homology_presentation(&c, 2);
    Ok(pres.group())
}
