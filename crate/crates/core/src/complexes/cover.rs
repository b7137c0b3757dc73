//! Finite universal covers of simplicial complexes with finite fundamental
//! group, their deck actions, and the equivariant data the theorem layer
//! consumes (also assembled for products of covered complexes).
//!
//! Sheets are cosets from the enumeration; the lift of a simplex at sheet
//! `s` places vertex `v_j` at sheet `s . w(v_0 -> v_j)`, where `w` is the
//! spanning-tree edge label. Deck transformations multiply sheets on the
//! left, so they commute with the right-action sheet bookkeeping.

use num_bigint::BigInt;

use crate::complexes::chain::{tensor_complex, IntegerChainComplex};
use crate::complexes::coset::CosetTable;
use crate::complexes::group::GroupTable;
use crate::complexes::presentation::{FundamentalGroupData, GroupPresentation};
use crate::complexes::simplicial::SimplicialComplex;
use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::Result;

/// The universal cover of a finite complex with finite fundamental group.
#[derive(Debug, Clone)]
pub struct CoveringComplex {
    pub base: SimplicialComplex,
    pub fg: FundamentalGroupData,
    pub table: CosetTable,
    pub group: GroupTable,
    /// Chain complex of the cover; cell `(c, s)` has index `c * N + s`.
    pub complex: IntegerChainComplex,
    /// `deck[g][k]` = permutation of dimension-k cover cells under element g.
    pub deck: Vec<Vec<Vec<usize>>>,
    /// Images of the presentation generators in `group`.
    pub gen_images: Vec<usize>,
}

impl CoveringComplex {
    pub fn sheets(&self) -> usize {
        self.table.order
    }

    /// The cover itself as a simplicial complex (vertex `(v, s)` becomes
    /// `v * N + s`).
    pub fn to_simplicial(&self) -> SimplicialComplex {
        let n = self.sheets();
        let mut simplices = Vec::new();
        for k in 0..=self.base.dimension() {
            for cell in self.base.cells(k) {
                for s in 0..n {
                    let lifted: Vec<usize> = cell
                        .iter()
                        .map(|&v| v * n + self.sheet_of_vertex(cell, s, v))
                        .collect();
                    simplices.push(lifted);
                }
            }
        }
        SimplicialComplex::from_closed_simplices(simplices).expect("lifted complex is simplicial")
    }

    /// Sheet of vertex `v` in the lift of `cell` at sheet `s`.
    fn sheet_of_vertex(&self, cell: &[usize], s: usize, v: usize) -> usize {
        let v0 = cell[0];
        if v == v0 {
            s
        } else {
            self.table.apply_word(s, &self.fg.edge_word(v0, v))
        }
    }

    /// The projection index map: `projection[k][c * N + s] = c`.
    pub fn projection(&self) -> Vec<Vec<usize>> {
        let n = self.sheets();
        (0..=self.complex.dimension())
            .map(|k| {
                (0..self.complex.cells(k))
                    .map(|i| i / n)
                    .collect()
            })
            .collect()
    }

    /// Packages the data the theorem checkers need.
    pub fn equivariant(&self) -> EquivariantComplex {
        EquivariantComplex {
            base: self.base.boundary_matrices(),
            cover: self.complex.clone(),
            group: self.group.clone(),
            deck: self.deck.clone(),
            projection: self.projection(),
            presentation: self.fg.presentation.clone(),
            gen_images: self.gen_images.clone(),
            kind: EquivariantKind::Cover {
                base: self.base.clone(),
                fg: self.fg.clone(),
            },
        }
    }
}

/// Builds the universal cover from a closed coset table for the edge-path
/// presentation. Rejects mismatched presentation/table pairs.
pub fn universal_cover(
    k: &SimplicialComplex,
    fg: &FundamentalGroupData,
    table: &CosetTable,
) -> Result<CoveringComplex> {
    table
        .validate(&fg.presentation)
        .map_err(|e| Error::PresentationMismatch(e.to_string()))?;
    let n = table.order;
    let dim = k.dimension();
    let group = table.to_group_table();
    // lifted boundaries
    let mut boundaries = Vec::new();
    for kk in 1..=dim {
        let rows = k.cell_count(kk - 1) * n;
        let cols = k.cell_count(kk) * n;
        let mut m = IntMatrix::zero(rows, cols);
        for (ci, cell) in k.cells(kk).iter().enumerate() {
            for s in 0..n {
                let col = ci * n + s;
                for drop in 0..cell.len() {
                    let mut face = cell.to_vec();
                    face.remove(drop);
                    let fi = k.index_of(&face).expect("face-closed");
                    // sheet of the face lift = sheet of its lowest vertex
                    let sheet = if drop == 0 {
                        // lowest vertex of the face is cell[1]
                        table.apply_word(s, &fg.edge_word(cell[0], cell[1]))
                    } else {
                        s
                    };
                    let sign = if drop % 2 == 0 { 1i64 } else { -1i64 };
                    m.add_assign_at(fi * n + sheet, col, &BigInt::from(sign));
                }
            }
        }
        boundaries.push(m);
    }
    let labels: Vec<Vec<String>> = (0..=dim)
        .map(|kk| {
            k.cells(kk)
                .iter()
                .flat_map(|cell| {
                    let t = super::simplicial::format_tuple(cell);
                    (0..n).map(move |s| format!("({t},{s})"))
                })
                .collect()
        })
        .collect();
    let complex = IntegerChainComplex::new(boundaries, labels)
        .map_err(|_| Error::PresentationMismatch("lifted boundaries do not square to zero".into()))?;
    // deck action: left multiplication on sheets
    let deck: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|g| {
            (0..=dim)
                .map(|kk| {
                    (0..k.cell_count(kk) * n)
                        .map(|i| {
                            let (c, s) = (i / n, i % n);
                            c * n + group.mul(g, s)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let gen_images: Vec<usize> = (0..fg.presentation.generators)
        .map(|g| table.forward[g][0])
        .collect();
    Ok(CoveringComplex {
        base: k.clone(),
        fg: fg.clone(),
        table: table.clone(),
        group,
        complex,
        deck,
        gen_images,
    })
}

/// How an equivariant complex was assembled; the twisting layer dispatches
/// on this.
#[derive(Debug, Clone)]
pub enum EquivariantKind {
    Cover {
        base: SimplicialComplex,
        fg: FundamentalGroupData,
    },
    Product(Box<EquivariantComplex>, Box<EquivariantComplex>),
}

/// A base complex together with its finite cover, deck action, projection
/// chain map, and fundamental group data. Products of two of these are
/// again one of these.
#[derive(Debug, Clone)]
pub struct EquivariantComplex {
    pub base: IntegerChainComplex,
    pub cover: IntegerChainComplex,
    pub group: GroupTable,
    pub deck: Vec<Vec<Vec<usize>>>,
    /// `projection[k][cover cell] = base cell` (coefficient +1).
    pub projection: Vec<Vec<usize>>,
    pub presentation: GroupPresentation,
    pub gen_images: Vec<usize>,
    pub kind: EquivariantKind,
}

impl EquivariantComplex {
    /// The projection as a chain map matrix in dimension `k`.
    pub fn projection_matrix(&self, k: usize) -> IntMatrix {
        let rows = self.base.cells(k);
        let cols = self.cover.cells(k);
        let mut m = IntMatrix::zero(rows, cols);
        if let Some(p) = self.projection.get(k) {
            for (j, &i) in p.iter().enumerate() {
                m.set(i, j, BigInt::from(1));
            }
        }
        m
    }

    /// Tensor product of two equivariant complexes: base and cover tensored,
    /// deck acting factorwise, group the direct product.
    pub fn product(a: &EquivariantComplex, b: &EquivariantComplex) -> EquivariantComplex {
        let base = tensor_complex(&a.base, &b.base);
        let cover = tensor_complex(&a.cover, &b.cover);
        let group = a.group.direct_product(&b.group);
        let dim = cover.dimension();
        // per-dimension index layout of the tensor: blocks (p, q), p asc
        let layout = |ca: &IntegerChainComplex, cb: &IntegerChainComplex, k: usize| {
            let mut blocks = Vec::new();
            for p in 0..=k {
                let q = k - p;
                if p <= ca.dimension() && q <= cb.dimension() && ca.cells(p) > 0 && cb.cells(q) > 0
                {
                    blocks.push((p, q, ca.cells(p), cb.cells(q)));
                }
            }
            blocks
        };
        let nb = b.group.order();
        let deck: Vec<Vec<Vec<usize>>> = (0..group.order())
            .map(|g| {
                let (ga, gb) = (g / nb, g % nb);
                (0..=dim)
                    .map(|k| {
                        let mut perm = Vec::with_capacity(cover.cells(k));
                        for (p, q, _na, nbq) in layout(&a.cover, &b.cover, k) {
                            let offset = perm.len();
                            let pa = &a.deck[ga][p];
                            let pb = &b.deck[gb][q];
                            let _ = offset;
                            for ia in 0..pa.len() {
                                for ib in 0..nbq {
                                    // image within the same (p, q) block
                                    let target_in_block = pa[ia] * nbq + pb[ib];
                                    perm.push(block_offset(&a.cover, &b.cover, k, p) + target_in_block);
                                }
                            }
                        }
                        perm
                    })
                    .collect()
            })
            .collect();
        let projection: Vec<Vec<usize>> = (0..=dim)
            .map(|k| {
                let mut proj = Vec::with_capacity(cover.cells(k));
                for (p, q, _na, nbq) in layout(&a.cover, &b.cover, k) {
                    let base_nbq = b.base.cells(q);
                    for ia in 0..a.cover.cells(p) {
                        for ib in 0..nbq {
                            let target_in_block =
                                a.projection[p][ia] * base_nbq + b.projection[q][ib];
                            proj.push(block_offset(&a.base, &b.base, k, p) + target_in_block);
                        }
                    }
                }
                proj
            })
            .collect();
        let presentation = a.presentation.direct_product(&b.presentation);
        let gen_images: Vec<usize> = a
            .gen_images
            .iter()
            .map(|&g| g * nb)
            .chain(b.gen_images.iter().copied())
            .collect();
        EquivariantComplex {
            base,
            cover,
            group,
            deck,
            projection,
            presentation,
            gen_images,
            kind: EquivariantKind::Product(Box::new(a.clone()), Box::new(b.clone())),
        }
    }
}

/// Offset of the `(p, k-p)` block within dimension `k` of a tensor complex.
fn block_offset(
    ca: &IntegerChainComplex,
    cb: &IntegerChainComplex,
    k: usize,
    p: usize,
) -> usize {
    let mut off = 0;
    for pp in 0..p {
        let qq = k - pp;
        if pp <= ca.dimension() && qq <= cb.dimension() {
            off += ca.cells(pp) * cb.cells(qq);
        }
    }
    off
}


/// Convenience constructor: presentation, coset enumeration, cover, and the
/// equivariant package, for a connected complex with finite fundamental
/// group. A non-closing enumeration reports "not decidable".
pub fn equivariant_of_simplicial(
    k: &SimplicialComplex,
    coset_budget: usize,
) -> crate::Result<EquivariantComplex> {
    let fg = crate::complexes::presentation::fundamental_group(k, 0)?;
    let table = crate::complexes::coset::todd_coxeter(&fg.presentation, coset_budget).map_err(
        |e| match e {
            Error::BudgetExceeded { budget } => Error::NotDecidable(format!(
                "fundamental group did not close within the coset budget {budget}: possibly infinite"
            )),
            other => other,
        },
    )?;
    Ok(universal_cover(k, &fg, &table)?.equivariant())
}
