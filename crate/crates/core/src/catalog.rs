//! The builtin example library: spheres, projective planes and 3-space, the
//! torus and Klein bottle, the one-cell-per-dimension twisted projective
//! complexes, nerves of finite abelian groups, and products.

use num_bigint::BigInt;

use crate::complexes::{GroupPresentation, GroupTable, SimplicialComplex, Word};
use crate::error::Error;
use crate::local_systems::{GroupRingComplex, GroupRingEntry, GroupRingMatrix};
use crate::Result;

/// Boundary of the (n+1)-simplex: a triangulated n-sphere. Requires n >= 1
/// (the 0-sphere is disconnected and the toolkit works with connected
/// complexes).
pub fn sphere_complex(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "sphere(0) is disconnected; use n >= 1".into(),
        ));
    }
    let verts: Vec<usize> = (0..n + 2).collect();
    let mut facets = Vec::new();
    for drop in 0..n + 2 {
        let f: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| v != drop)
            .collect();
        facets.push(f);
    }
    SimplicialComplex::from_simplices(facets)
}

/// The 6-vertex triangulation of the real projective plane (antipodal
/// quotient of the icosahedron).
pub fn rp2_complex() -> SimplicialComplex {
    let facets = vec![
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 4],
        vec![0, 3, 5],
        vec![0, 4, 5],
        vec![1, 2, 5],
        vec![1, 3, 4],
        vec![1, 4, 5],
        vec![2, 3, 4],
        vec![2, 3, 5],
    ];
    SimplicialComplex::from_simplices(facets).expect("builtin rp2 is valid")
}

/// Real projective 3-space: antipodal quotient of the barycentric
/// subdivision of the 16-cell boundary, shipped as a data file
/// (40 vertices, 192 tetrahedra).
pub fn rp3_complex() -> SimplicialComplex {
    crate::io::simplicial_from_str(include_str!("../data/rp3.cplx"))
        .expect("builtin rp3 data file is valid")
}

/// The 7-vertex (Csaszar) torus.
pub fn torus_complex() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7usize {
        let t1 = vec![i, (i + 1) % 7, (i + 3) % 7];
        let t2 = vec![i, (i + 2) % 7, (i + 3) % 7];
        for mut t in [t1, t2] {
            t.sort_unstable();
            facets.push(t);
        }
    }
    SimplicialComplex::from_simplices(facets).expect("builtin torus is valid")
}

/// A 9-vertex Klein bottle: 3x3 grid with a classical torus wrap in one
/// direction and an orientation-reversing wrap in the other.
pub fn klein_bottle_complex() -> SimplicialComplex {
    let v = |x: usize, y: usize| -> usize { 3 * (x % 3) + (y % 3) };
    // going right from column 2 wraps to column 0 with y negated
    let step = |x: usize, y: usize| -> (usize, usize) {
        if x + 1 == 3 {
            (0, (3 - y % 3) % 3)
        } else {
            (x + 1, y % 3)
        }
    };
    let mut facets = Vec::new();
    for x in 0..3usize {
        for y in 0..3usize {
            let a = v(x, y);
            let b = {
                let (nx, ny) = step(x, y);
                v(nx, ny)
            };
            let c = {
                let (nx, ny) = step(x, y + 1);
                v(nx, ny)
            };
            let d = v(x, y + 1);
            let mut t1 = vec![a, b, c];
            let mut t2 = vec![a, d, c];
            t1.sort_unstable();
            t2.sort_unstable();
            facets.push(t1);
            facets.push(t2);
        }
    }
    SimplicialComplex::from_simplices(facets).expect("builtin klein bottle is valid")
}

/// The paper's one-cell-per-dimension model of RP^n as a direct group-ring
/// complex over `<a | a^2>`: `d_k = 1 + (-1)^k a`.
pub fn rpn_twisted_complex(n: usize) -> Result<GroupRingComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("rpn-twisted needs n >= 1".into()));
    }
    let p = GroupPresentation::new(1, vec![Word::parse("a^2")?])?;
    let mats: Vec<GroupRingMatrix> = (1..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            GroupRingMatrix::new(
                1,
                1,
                1,
                vec![GroupRingEntry::from_terms(vec![
                    (BigInt::from(1), Word::identity()),
                    (BigInt::from(sign), Word::generator(0)),
                ])],
            )
            .expect("1x1 entry")
        })
        .collect();
    let labels = (0..=n).map(|k| vec![format!("c{k}")]).collect();
    GroupRingComplex::new(p, mats)?.with_labels(labels)
}

/// A named builtin, as parsed from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Sphere(usize),
    Rp2,
    Rp3,
    Torus,
    KleinBottle,
    RpnTwisted(usize),
    Nerve { factors: Vec<u64>, degree: usize },
    Product(Box<Builtin>, Box<Builtin>),
}

impl Builtin {
    /// Grammar: `rp2`, `rp3`, `torus`, `klein-bottle`, `sphere:2`,
    /// `rpn-twisted:5`, `nerve:2x2:3`, `product:rp2:rp2`.
    pub fn parse(s: &str) -> Result<Builtin> {
        let s = s.trim();
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or("");
        let rest: Vec<&str> = parts.collect();
        let expect_none = |rest: &[&str], b: Builtin| -> Result<Builtin> {
            if rest.is_empty() {
                Ok(b)
            } else {
                Err(Error::InvalidInput(format!("{head} takes no arguments")))
            }
        };
        match head {
            "rp2" => expect_none(&rest, Builtin::Rp2),
            "rp3" => expect_none(&rest, Builtin::Rp3),
            "torus" => expect_none(&rest, Builtin::Torus),
            "klein-bottle" => expect_none(&rest, Builtin::KleinBottle),
            "sphere" => {
                let n = single_arg(&rest, "sphere")?;
                Ok(Builtin::Sphere(n))
            }
            "rpn-twisted" => {
                let n = single_arg(&rest, "rpn-twisted")?;
                Ok(Builtin::RpnTwisted(n))
            }
            "nerve" => {
                if rest.len() != 2 {
                    return Err(Error::InvalidInput(
                        "nerve takes a group and a degree: nerve:2x2:3".into(),
                    ));
                }
                let factors: Result<Vec<u64>> = rest[0]
                    .split('x')
                    .map(|t| {
                        t.parse::<u64>().map_err(|_| {
                            Error::InvalidInput(format!("bad invariant factor {t:?}"))
                        })
                    })
                    .collect();
                let degree: usize = rest[1]
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad degree {:?}", rest[1])))?;
                Ok(Builtin::Nerve {
                    factors: factors?,
                    degree,
                })
            }
            "product" => {
                if rest.len() != 2 {
                    return Err(Error::InvalidInput(
                        "product takes two simple builtins: product:rp2:rp2".into(),
                    ));
                }
                let a = Builtin::parse(rest[0])?;
                let b = Builtin::parse(rest[1])?;
                Ok(Builtin::Product(Box::new(a), Box::new(b)))
            }
            _ => Err(Error::InvalidInput(format!("unknown builtin {s:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Builtin::Sphere(n) => format!("sphere:{n}"),
            Builtin::Rp2 => "rp2".into(),
            Builtin::Rp3 => "rp3".into(),
            Builtin::Torus => "torus".into(),
            Builtin::KleinBottle => "klein-bottle".into(),
            Builtin::RpnTwisted(n) => format!("rpn-twisted:{n}"),
            Builtin::Nerve { factors, degree } => {
                let f: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
                format!("nerve:{}:{degree}", f.join("x"))
            }
            Builtin::Product(a, b) => format!("product:{}:{}", a.name(), b.name()),
        }
    }

    /// Materializes the space.
    pub fn build(&self) -> Result<SpaceObject> {
        let kind = match self {
            Builtin::Sphere(n) => SpaceKind::Simplicial(sphere_complex(*n)?),
            Builtin::Rp2 => SpaceKind::Simplicial(rp2_complex()),
            Builtin::Rp3 => SpaceKind::Simplicial(rp3_complex()),
            Builtin::Torus => SpaceKind::Simplicial(torus_complex()),
            Builtin::KleinBottle => SpaceKind::Simplicial(klein_bottle_complex()),
            Builtin::RpnTwisted(n) => SpaceKind::Direct(rpn_twisted_complex(*n)?),
            Builtin::Nerve { factors, degree } => {
                let group = GroupTable::from_invariant_factors(factors)?;
                if !group.is_abelian() {
                    return Err(Error::InvalidInput("nerve requires an abelian group".into()));
                }
                SpaceKind::Nerve {
                    group,
                    factors: factors.clone(),
                    degree: *degree,
                }
            }
            Builtin::Product(a, b) => {
                let sa = a.build()?;
                let sb = b.build()?;
                SpaceKind::Product(Box::new(sa), Box::new(sb))
            }
        };
        Ok(SpaceObject {
            name: self.name(),
            kind,
        })
    }

    /// The standard catalog listing, used by golden tests and `catalog`.
    pub fn standard_list() -> Vec<Builtin> {
        vec![
            Builtin::Sphere(1),
            Builtin::Sphere(2),
            Builtin::Sphere(3),
            Builtin::Rp2,
            Builtin::Rp3,
            Builtin::Torus,
            Builtin::KleinBottle,
            Builtin::RpnTwisted(2),
            Builtin::RpnTwisted(5),
            Builtin::Nerve {
                factors: vec![2],
                degree: 4,
            },
            Builtin::Nerve {
                factors: vec![3],
                degree: 4,
            },
            Builtin::Product(Box::new(Builtin::Rp2), Box::new(Builtin::Rp2)),
        ]
    }
}

fn single_arg(rest: &[&str], what: &str) -> Result<usize> {
    if rest.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "{what} takes one numeric argument, e.g. {what}:2"
        )));
    }
    rest[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad argument {:?}", rest[0])))
}

/// A materialized space, ready for analysis.
#[derive(Debug, Clone)]
pub struct SpaceObject {
    pub name: String,
    pub kind: SpaceKind,
}

/// The four kinds of spaces the toolkit analyzes.
#[derive(Debug, Clone)]
pub enum SpaceKind {
    Simplicial(SimplicialComplex),
    /// A direct group-ring complex (bypassing simplicial structure).
    Direct(GroupRingComplex),
    /// Nerve of a finite abelian group, truncated at `degree`.
    Nerve {
        group: GroupTable,
        factors: Vec<u64>,
        degree: usize,
    },
    Product(Box<SpaceObject>, Box<SpaceObject>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(sphere_complex(2).unwrap().euler_characteristic(), 2);
        assert_eq!(sphere_complex(3).unwrap().euler_characteristic(), 0);
        assert_eq!(rp2_complex().euler_characteristic(), 1);
        assert_eq!(torus_complex().euler_characteristic(), 0);
        assert_eq!(klein_bottle_complex().euler_characteristic(), 0);
        assert_eq!(rp3_complex().euler_characteristic(), 0);
    }

    #[test]
    fn f_vectors() {
        let rp2 = rp2_complex();
        assert_eq!(
            (rp2.cell_count(0), rp2.cell_count(1), rp2.cell_count(2)),
            (6, 15, 10)
        );
        let t = torus_complex();
        assert_eq!(
            (t.cell_count(0), t.cell_count(1), t.cell_count(2)),
            (7, 21, 14)
        );
        let kb = klein_bottle_complex();
        assert_eq!(
            (kb.cell_count(0), kb.cell_count(1), kb.cell_count(2)),
            (9, 27, 18)
        );
        let rp3 = rp3_complex();
        assert_eq!(
            (
                rp3.cell_count(0),
                rp3.cell_count(1),
                rp3.cell_count(2),
                rp3.cell_count(3)
            ),
            (40, 232, 384, 192)
        );
    }

    #[test]
    fn surfaces_are_closed_and_connected() {
        for k in [rp2_complex(), torus_complex(), klein_bottle_complex()] {
            assert!(k.is_connected());
            // every edge lies in exactly two triangles
            for (u, v) in k.edges() {
                let count = k
                    .cells(2)
                    .iter()
                    .filter(|t| t.contains(&u) && t.contains(&v))
                    .count();
                assert_eq!(count, 2, "edge ({u},{v})");
            }
        }
    }

    #[test]
    fn rp3_is_a_closed_pseudomanifold() {
        let k = rp3_complex();
        assert!(k.is_connected());
        for t in k.cells(2) {
            let count = k
                .cells(3)
                .iter()
                .filter(|tet| t.iter().all(|v| tet.contains(v)))
                .count();
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn builtin_parsing() {
        assert_eq!(Builtin::parse("rp2").unwrap(), Builtin::Rp2);
        assert_eq!(Builtin::parse("sphere:2").unwrap(), Builtin::Sphere(2));
        assert_eq!(
            Builtin::parse("rpn-twisted:5").unwrap(),
            Builtin::RpnTwisted(5)
        );
        assert_eq!(
            Builtin::parse("nerve:2x2:3").unwrap(),
            Builtin::Nerve {
                factors: vec![2, 2],
                degree: 3
            }
        );
        let p = Builtin::parse("product:rp2:sphere:2");
        assert!(p.is_err()); // nested colon args are not supported for product
        assert!(Builtin::parse("product:rp2:rp2").is_ok());
        assert!(Builtin::parse("wat").is_err());
        // round trip through name()
        for b in Builtin::standard_list() {
            assert_eq!(Builtin::parse(&b.name()).unwrap(), b);
        }
    }
}

impl SpaceObject {
    /// Parses a file into a space (simplicial or group-ring inputs).
    pub fn from_file(path: &std::path::Path) -> Result<SpaceObject> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into());
        let kind = match crate::io::parse_complex(&text)? {
            crate::io::ParsedComplex::Simplicial(k) => SpaceKind::Simplicial(k),
            crate::io::ParsedComplex::GroupRing(c) => SpaceKind::Direct(c),
            crate::io::ParsedComplex::Chain(_) => {
                return Err(Error::InvalidInput(
                    "chain-complex files carry no fundamental group data; use the homology subcommand".into(),
                ))
            }
        };
        Ok(SpaceObject { name, kind })
    }

    /// The underlying integer chain complex (trivial coefficients).
    pub fn integral_complex(&self) -> Result<crate::complexes::IntegerChainComplex> {
        match &self.kind {
            SpaceKind::Simplicial(k) => Ok(k.boundary_matrices()),
            SpaceKind::Direct(c) => c.augmentation(),
            SpaceKind::Nerve { group, degree, .. } => {
                crate::theorems::integer_nerve_complex(group, *degree)
            }
            SpaceKind::Product(a, b) => Ok(crate::complexes::tensor_complex(
                &a.integral_complex()?,
                &b.integral_complex()?,
            )),
        }
    }

    /// A presentation of the fundamental-group data used for local systems.
    /// For nerves this is the defining presentation of the group by its
    /// invariant factors.
    pub fn presentation(&self) -> Result<GroupPresentation> {
        match &self.kind {
            SpaceKind::Simplicial(k) => {
                Ok(crate::complexes::fundamental_group(k, 0)?.presentation)
            }
            SpaceKind::Direct(c) => Ok(c.presentation.clone()),
            SpaceKind::Nerve { factors, .. } => nerve_presentation(factors),
            SpaceKind::Product(a, b) => {
                Ok(a.presentation()?.direct_product(&b.presentation()?))
            }
        }
    }

    /// All `Z/l` systems, lexicographically.
    pub fn local_systems(&self, ell: u64) -> Result<Vec<crate::local_systems::LocalSystem>> {
        crate::local_systems::enumerate_local_systems(&self.presentation()?, ell)
    }

    /// The twisted chain complex for a system on this space's presentation.
    pub fn twisted(
        &self,
        sys: &crate::local_systems::LocalSystem,
    ) -> Result<crate::local_systems::TwistedChainComplex> {
        match &self.kind {
            SpaceKind::Simplicial(k) => {
                let fg = crate::complexes::fundamental_group(k, 0)?;
                crate::local_systems::twisted_complex_of_cover(k, &fg, sys)
            }
            SpaceKind::Direct(c) => c.twist(sys),
            SpaceKind::Nerve { group, factors, degree } => {
                let chi = character_from_exponents(group, factors, sys.exponents(), sys.modulus());
                crate::theorems::twisted_nerve_complex(group, &chi, sys.modulus(), *degree)
            }
            SpaceKind::Product(a, b) => {
                let ga = a.presentation()?.generators;
                let pa = a.presentation()?;
                let pb = b.presentation()?;
                let sys_a = crate::local_systems::LocalSystem::new(
                    &pa,
                    sys.modulus(),
                    sys.exponents()[..ga].to_vec(),
                )?;
                let sys_b = crate::local_systems::LocalSystem::new(
                    &pb,
                    sys.modulus(),
                    sys.exponents()[ga..].to_vec(),
                )?;
                crate::local_systems::tensor_twisted(&a.twisted(&sys_a)?, &b.twisted(&sys_b)?)
            }
        }
    }

    /// The equivariant (cover) package, for the cover-dependent checkers.
    /// Simplicial inputs need a finite fundamental group; products need
    /// both factors covered; other kinds are rejected.
    pub fn equivariant(&self, coset_budget: usize) -> Result<crate::complexes::EquivariantComplex> {
        match &self.kind {
            SpaceKind::Simplicial(k) => {
                crate::complexes::equivariant_of_simplicial(k, coset_budget)
            }
            SpaceKind::Product(a, b) => {
                let ea = a.equivariant(coset_budget)?;
                let eb = b.equivariant(coset_budget)?;
                Ok(crate::complexes::EquivariantComplex::product(&ea, &eb))
            }
            SpaceKind::Direct(_) | SpaceKind::Nerve { .. } => Err(Error::InvalidInput(
                "cover-dependent operations need simplicial input".into(),
            )),
        }
    }

    /// The H-space obstruction search over the given primes.
    pub fn hspace_check(
        &self,
        primes: &[u64],
        coset_budget: usize,
    ) -> Result<crate::theorems::ObstructionOutcome> {
        // simplicial inputs must have finite pi_1 for the enumeration to be
        // meaningful as stated; probe it up front
        if let SpaceKind::Simplicial(k) = &self.kind {
            let fg = crate::complexes::fundamental_group(k, 0)?;
            crate::complexes::todd_coxeter(&fg.presentation, coset_budget).map_err(|e| {
                match e {
                    Error::BudgetExceeded { budget } => Error::NotDecidable(format!(
                        "fundamental group did not close within the coset budget {budget}"
                    )),
                    other => other,
                }
            })?;
        }
        let presentation = self.presentation()?;
        crate::theorems::search_obstruction(
            primes,
            |ell| crate::local_systems::enumerate_local_systems(&presentation, ell),
            |sys| self.twisted(sys),
        )
    }
}

/// Presentation of an abelian group by invariant factors: one generator per
/// factor, power relators, commutators.
pub fn nerve_presentation(factors: &[u64]) -> Result<GroupPresentation> {
    let m = factors.len();
    let mut relators = Vec::new();
    for (i, &d) in factors.iter().enumerate() {
        let letters: Vec<i32> = std::iter::repeat(i as i32 + 1).take(d as usize).collect();
        relators.push(Word::from_letters(letters));
    }
    for i in 0..m {
        for j in i + 1..m {
            let a = Word::generator(i);
            let b = Word::generator(j);
            relators.push(a.concat(&b).concat(&a.inverse()).concat(&b.inverse()));
        }
    }
    GroupPresentation::new(m, relators)
}

/// Extends generator exponents to a per-element character of a product of
/// cyclic groups (element index is mixed-radix over the factors).
pub fn character_from_exponents(
    group: &GroupTable,
    factors: &[u64],
    exponents: &[u64],
    ell: u64,
) -> Vec<u64> {
    let n = group.order();
    (0..n)
        .map(|mut i| {
            let mut digits = vec![0u64; factors.len()];
            for k in (0..factors.len()).rev() {
                digits[k] = (i % factors[k] as usize) as u64;
                i /= factors[k] as usize;
            }
            digits
                .iter()
                .zip(exponents)
                .map(|(d, e)| d * e % ell)
                .sum::<u64>()
                % ell
        })
        .collect()
}

#[cfg(test)]
mod dispatch_tests {
    use super::*;

    #[test]
    fn nerve_systems_and_twisting() {
        let b = Builtin::Nerve {
            factors: vec![3],
            degree: 3,
        };
        let s = b.build().unwrap();
        let systems = s.local_systems(3).unwrap();
        assert_eq!(systems.len(), 3);
        for sys in systems {
            let t = s.twisted(&sys).unwrap();
            let betti = crate::homology::betti_twisted(&t).unwrap();
            if sys.is_trivial() {
                assert_eq!(betti.betti()[0], 1);
            } else {
                assert_eq!(betti.betti()[..3], [0, 0, 0]);
            }
        }
    }

    #[test]
    fn product_twisting_matches_kunneth() {
        let b = Builtin::Product(Box::new(Builtin::Rp2), Box::new(Builtin::Rp2));
        let s = b.build().unwrap();
        let systems = s.local_systems(2).unwrap();
        assert_eq!(systems.len(), 4);
        // H(RP2 x RP2; L1 (x) L2) = H(RP2; L1) (x) H(RP2; L2) over a field:
        // nontrivial-nontrivial gives rank 1 in degree 4
        let both = systems.last().unwrap();
        assert!(!both.is_trivial());
        let t = s.twisted(both).unwrap();
        let betti = crate::homology::betti_twisted(&t).unwrap();
        assert_eq!(betti.betti(), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn torus_systems_count_matches_h1() {
        let s = Builtin::Torus.build().unwrap();
        for (ell, expect) in [(2u64, 4usize), (3, 9), (5, 25)] {
            assert_eq!(s.local_systems(ell).unwrap().len(), expect);
        }
        // twisting works without a finite cover
        let systems = s.local_systems(2).unwrap();
        for sys in &systems {
            let t = s.twisted(sys).unwrap();
            let b = crate::homology::betti_twisted(&t).unwrap();
            if sys.is_trivial() {
                assert_eq!(b.betti(), vec![1, 2, 1]);
            } else {
                // a nontrivial system on the torus kills all homology
                assert_eq!(b.betti(), vec![0, 0, 0]);
            }
        }
        // but cover-dependent operations reject it
        assert!(s.equivariant(1_000).is_err());
    }

    #[test]
    fn klein_bottle_twisted_f2_systems() {
        let s = Builtin::KleinBottle.build().unwrap();
        let systems = s.local_systems(2).unwrap();
        assert_eq!(systems.len(), 4); // dim H^1(K; F_2) = 2
        for sys in &systems {
            let t = s.twisted(sys).unwrap();
            assert!(crate::homology::betti_twisted(&t).is_ok());
        }
    }
}
