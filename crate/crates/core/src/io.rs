//! Input file formats. Three headers are recognized:
//!
//! * `simplicial` — one simplex per line as space-separated vertex indices,
//!   `#` comments; the complex is the downward closure of the listed
//!   simplices. With `simplicial closed` every face must be listed
//!   explicitly and a missing face is a structural error naming it.
//! * `chain` — integer chain complex in per-dimension blocks
//!   `dim k rows r cols c` followed by `r` lines of `c` integers.
//! * `groupring` — a presentation (`generators m`, `relator <word>` lines)
//!   followed by per-dimension blocks of group-ring entries, comma
//!   separated: `3*a.b^-1 + 1*1`, `0` for the zero entry.

use num_bigint::BigInt;

use crate::complexes::{IntegerChainComplex, SimplicialComplex};
use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::local_systems::{GroupRingComplex, GroupRingEntry, GroupRingMatrix};
use crate::complexes::{GroupPresentation, Word};
use crate::Result;

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum ParsedComplex {
    Simplicial(SimplicialComplex),
    Chain(IntegerChainComplex),
    GroupRing(GroupRingComplex),
}

/// Parses any of the three documented formats, dispatching on the header.
pub fn parse_complex(text: &str) -> Result<ParsedComplex> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !is_blank(l))
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
    let header = header.trim();
    match header.split_whitespace().next() {
        Some("simplicial") => {
            let closed = header.split_whitespace().nth(1) == Some("closed");
            Ok(ParsedComplex::Simplicial(parse_simplicial_body(
                lines, closed,
            )?))
        }
        Some("chain") => Ok(ParsedComplex::Chain(parse_chain_body(lines)?)),
        Some("groupring") => Ok(ParsedComplex::GroupRing(parse_groupring_body(lines)?)),
        _ => Err(Error::Parse {
            line: 1,
            msg: format!("unknown header {header:?} (expected simplicial, chain, or groupring)"),
        }),
    }
}

fn is_blank(l: &str) -> bool {
    let t = l.trim();
    t.is_empty() || t.starts_with('#')
}

fn parse_simplicial_body<'a, I>(lines: I, closed: bool) -> Result<SimplicialComplex>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut simplices = Vec::new();
    for (ln, line) in lines {
        if is_blank(line) {
            continue;
        }
        let mut s = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: format!("bad vertex index {tok:?}"),
            })?;
            s.push(v);
        }
        if !s.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                line: ln + 1,
                msg: "vertices must be strictly increasing".into(),
            });
        }
        simplices.push(s);
    }
    if closed {
        SimplicialComplex::from_closed_simplices(simplices)
    } else {
        SimplicialComplex::from_simplices(simplices)
    }
}

/// Parses the body of a `simplicial` file given as a full string (used for
/// embedded data files).
pub fn simplicial_from_str(text: &str) -> Result<SimplicialComplex> {
    match parse_complex(text)? {
        ParsedComplex::Simplicial(k) => Ok(k),
        _ => Err(Error::InvalidInput("expected a simplicial file".into())),
    }
}

/// Canonical emission: `simplicial closed` with every simplex listed, sorted.
pub fn emit_simplicial(k: &SimplicialComplex) -> String {
    let mut out = String::from("simplicial closed\n");
    for d in 0..=k.dimension() {
        for s in k.cells(d) {
            let line: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

fn parse_chain_body<'a, I>(mut lines: I) -> Result<IntegerChainComplex>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut boundaries: Vec<(usize, IntMatrix)> = Vec::new();
    let mut dim0: Option<usize> = None;
    loop {
        let Some((ln, line)) = lines.by_ref().find(|(_, l)| !is_blank(l)) else {
            break;
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 2 && toks[0] == "cells0" {
            dim0 = Some(toks[1].parse().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "bad cells0 count".into(),
            })?);
            continue;
        }
        if toks.len() != 6 || toks[0] != "dim" || toks[2] != "rows" || toks[4] != "cols" {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected `dim k rows r cols c`, got {line:?}"),
            });
        }
        let k: usize = toks[1].parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: "bad dimension".into(),
        })?;
        let r: usize = toks[3].parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: "bad row count".into(),
        })?;
        let c: usize = toks[5].parse().map_err(|_| Error::Parse {
            line: ln + 1,
            msg: "bad col count".into(),
        })?;
        let mut m = IntMatrix::zero(r, c);
        for i in 0..r {
            let Some((ln2, row)) = lines.by_ref().find(|(_, l)| !is_blank(l)) else {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: "unexpected end of matrix block".into(),
                });
            };
            let vals: Vec<&str> = row.split_whitespace().collect();
            if vals.len() != c {
                return Err(Error::Parse {
                    line: ln2 + 1,
                    msg: format!("expected {c} entries, got {}", vals.len()),
                });
            }
            for (j, v) in vals.iter().enumerate() {
                let x: BigInt = v.parse().map_err(|_| Error::Parse {
                    line: ln2 + 1,
                    msg: format!("bad integer {v:?}"),
                })?;
                m.set(i, j, x);
            }
        }
        boundaries.push((k, m));
    }
    boundaries.sort_by_key(|(k, _)| *k);
    for (i, (k, _)) in boundaries.iter().enumerate() {
        if *k != i + 1 {
            return Err(Error::InvalidInput(format!(
                "chain blocks must cover dims 1..=d; found dim {k} out of order"
            )));
        }
    }
    let mats: Vec<IntMatrix> = boundaries.into_iter().map(|(_, m)| m).collect();
    if mats.is_empty() {
        if let Some(n0) = dim0 {
            let labels = vec![(0..n0).map(|i| i.to_string()).collect()];
            return IntegerChainComplex::new(vec![], labels);
        }
    }
    IntegerChainComplex::with_numeric_labels(mats)
}

/// Canonical emission of an integer chain complex.
pub fn emit_chain(c: &IntegerChainComplex) -> String {
    let mut out = String::from("chain\n");
    if c.dimension() == 0 {
        out.push_str(&format!("cells0 {}\n", c.cells(0)));
        return out;
    }
    for k in 1..=c.dimension() {
        let m = c.boundary(k).unwrap();
        out.push_str(&format!("dim {k} rows {} cols {}\n", m.rows(), m.cols()));
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

fn parse_groupring_body<'a, I>(mut lines: I) -> Result<GroupRingComplex>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    // presentation header
    let (ln, gen_line) = lines
        .by_ref()
        .find(|(_, l)| !is_blank(l))
        .ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing `generators` line".into(),
        })?;
    let m: usize = gen_line
        .trim()
        .strip_prefix("generators")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: ln + 1,
            msg: format!("expected `generators m`, got {gen_line:?}"),
        })?;
    let mut relators = Vec::new();
    let mut blocks: Vec<(usize, GroupRingMatrix)> = Vec::new();
    let mut pending: Option<(usize, usize, usize, Vec<GroupRingEntry>)> = None;
    for (ln, line) in lines {
        if is_blank(line) {
            continue;
        }
        let line = line.trim();
        if let Some(rel) = line.strip_prefix("relator ") {
            relators.push(Word::parse(rel).map_err(|e| Error::Parse {
                line: ln + 1,
                msg: e.to_string(),
            })?);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 6 && toks[0] == "dim" {
            if let Some((k, r, c, entries)) = pending.take() {
                blocks.push((k, finish_block(m, r, c, entries, ln)?));
            }
            let k: usize = toks[1].parse().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "bad dim".into(),
            })?;
            let r: usize = toks[3].parse().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "bad rows".into(),
            })?;
            let c: usize = toks[5].parse().map_err(|_| Error::Parse {
                line: ln + 1,
                msg: "bad cols".into(),
            })?;
            pending = Some((k, r, c, Vec::new()));
            continue;
        }
        // a row of comma-separated group-ring entries
        let Some((_, _, c, entries)) = pending.as_mut() else {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("unexpected line outside a block: {line:?}"),
            });
        };
        let row: Vec<&str> = line.split(',').collect();
        if row.len() != *c {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected {c} comma-separated entries, got {}", row.len()),
            });
        }
        for e in row {
            entries.push(GroupRingEntry::parse(e).map_err(|err| Error::Parse {
                line: ln + 1,
                msg: err.to_string(),
            })?);
        }
    }
    if let Some((k, r, c, entries)) = pending.take() {
        blocks.push((k, finish_block(m, r, c, entries, 0)?));
    }
    blocks.sort_by_key(|(k, _)| *k);
    for (i, (k, _)) in blocks.iter().enumerate() {
        if *k != i + 1 {
            return Err(Error::InvalidInput(
                "groupring blocks must cover dims 1..=d".into(),
            ));
        }
    }
    let presentation = GroupPresentation::new(m, relators)?;
    GroupRingComplex::new(
        presentation,
        blocks.into_iter().map(|(_, b)| b).collect(),
    )
}

fn finish_block(
    m: usize,
    r: usize,
    c: usize,
    entries: Vec<GroupRingEntry>,
    ln: usize,
) -> Result<GroupRingMatrix> {
    if entries.len() != r * c {
        return Err(Error::Parse {
            line: ln + 1,
            msg: format!("block needs {} entries, got {}", r * c, entries.len()),
        });
    }
    GroupRingMatrix::new(m, r, c, entries)
}

/// Canonical emission of a group-ring complex.
pub fn emit_groupring(c: &GroupRingComplex) -> String {
    let mut out = String::from("groupring\n");
    out.push_str(&format!("generators {}\n", c.presentation.generators));
    for r in &c.presentation.relators {
        out.push_str(&format!("relator {r}\n"));
    }
    for k in 1..=c.dimension() {
        let mat = c.boundary(k).unwrap();
        out.push_str(&format!(
            "dim {k} rows {} cols {}\n",
            mat.rows(),
            mat.cols()
        ));
        for i in 0..mat.rows() {
            let row: Vec<String> = (0..mat.cols()).map(|j| mat.get(i, j).to_string()).collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
    }
    out
}
