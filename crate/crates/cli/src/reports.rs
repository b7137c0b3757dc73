//! Report assembly. Machine mode emits one `key=value` record per line
//! (split on the first `=`); human mode prints aligned text. Both start
//! with the configuration echo so outputs are self-describing.

use twisthom::catalog::{Builtin, SpaceObject};
use twisthom::complexes::GroupTable;
use twisthom::error::Error;
use twisthom::homology::{
    betti_twisted, homology_integral, HomologySummary,
};
use twisthom::local_systems::LocalSystem;
use twisthom::theorems;
use twisthom::util::generator_name;
use twisthom::RunConfig;

use crate::SpaceOrChain;

pub struct Report {
    machine: bool,
    lines: Vec<String>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Report {
        let mut lines = Vec::new();
        if config.machine {
            lines.extend(config.echo_lines());
        } else {
            let primes: Vec<String> = config.primes.iter().map(|p| p.to_string()).collect();
            lines.push(format!(
                "# primes {} | coset budget {} | group cap {} | degree cap {} | seed {}",
                primes.join(","),
                config.coset_budget,
                config.group_cap,
                config.degree_cap,
                config.seed
            ));
        }
        Report {
            machine: config.machine,
            lines,
        }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}={value}"));
    }

    fn text(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn flush(&self) {
        for l in &self.lines {
            println!("{l}");
        }
    }
}

fn homology_lines(out: &mut Report, name: &str, h: &HomologySummary) {
    if out.machine {
        out.kv("space", name);
        out.kv("field", h.field);
        for (k, _) in h.groups.iter().enumerate() {
            out.lines.push(h.machine_line(k));
        }
    } else {
        out.text(format!("homology of {name} over {}", h.field));
        out.text(format!("{:<4} {:<6} {}", "dim", "rank", "torsion"));
        for (k, g) in h.groups.iter().enumerate() {
            let torsion: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
            let t = if torsion.is_empty() {
                "-".to_string()
            } else {
                torsion.join(" + ")
            };
            out.text(format!("{k:<4} {:<6} {t}", g.free_rank));
        }
    }
}

pub fn homology(out: &mut Report, input: SpaceOrChain, report: bool) -> Result<(), Error> {
    let _ = report;
    let (name, complex) = match input {
        SpaceOrChain::Space(s) => {
            let c = s.integral_complex()?;
            (s.name, c)
        }
        SpaceOrChain::Chain(c, name) => (name, c),
    };
    let h = homology_integral(&complex);
    if !out.machine {
        out.text(format!("euler characteristic {}", complex.euler_characteristic()));
    } else {
        out.kv("chi", complex.euler_characteristic());
    }
    homology_lines(out, &name, &h);
    Ok(())
}

fn twisted_lines(out: &mut Report, sys: &LocalSystem, betti: &[usize]) {
    if out.machine {
        out.kv("system", sys);
        let b: Vec<String> = betti.iter().map(|x| x.to_string()).collect();
        out.kv("twisted.betti", b.join(","));
    } else {
        let b: Vec<String> = betti.iter().map(|x| x.to_string()).collect();
        out.text(format!("system {sys}  betti ({})", b.join(", ")));
    }
}

pub fn twisted_homology(
    out: &mut Report,
    s: &SpaceObject,
    system: Option<&str>,
    all_systems: bool,
    config: &RunConfig,
) -> Result<(), Error> {
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("twisted homology of {}", s.name));
    }
    let presentation = s.presentation()?;
    if let Some(spec) = system {
        let sys = LocalSystem::parse(spec, &presentation)?;
        let betti = betti_twisted(&s.twisted(&sys)?)?;
        twisted_lines(out, &sys, &betti.betti());
        return Ok(());
    }
    if !all_systems {
        return Err(Error::InvalidInput(
            "give --system or --all-systems".into(),
        ));
    }
    for &ell in &config.primes {
        if out.machine {
            out.kv("ell", ell);
        } else {
            out.text(format!("prime {ell}"));
        }
        for sys in s.local_systems(ell)? {
            let betti = betti_twisted(&s.twisted(&sys)?)?;
            twisted_lines(out, &sys, &betti.betti());
        }
    }
    Ok(())
}

pub fn local_systems(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("local systems on {}", s.name));
    }
    for &ell in &config.primes {
        let systems = s.local_systems(ell)?;
        if out.machine {
            out.kv("ell", ell);
            out.kv("count", systems.len());
            for sys in &systems {
                out.kv("system", sys);
            }
        } else {
            out.text(format!("prime {ell}: {} systems", systems.len()));
            for sys in &systems {
                let trivial = if sys.is_trivial() { "  (trivial)" } else { "" };
                out.text(format!("  {sys}{trivial}"));
            }
        }
    }
    Ok(())
}

pub fn cover(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    let eq = s.equivariant(config.coset_budget)?;
    let base_dims: Vec<String> = eq.base.dims().iter().map(|d| d.to_string()).collect();
    let cover_dims: Vec<String> = eq.cover.dims().iter().map(|d| d.to_string()).collect();
    if out.machine {
        out.kv("space", &s.name);
        out.kv("pi1.order", eq.group.order());
        out.kv("base.cells", base_dims.join(","));
        out.kv("cover.cells", cover_dims.join(","));
        out.kv("chi.base", eq.base.euler_characteristic());
        out.kv("chi.cover", eq.cover.euler_characteristic());
    } else {
        out.text(format!("universal cover of {}", s.name));
        out.text(format!("pi_1 order N = {}", eq.group.order()));
        out.text(format!("base cells  ({})", base_dims.join(", ")));
        out.text(format!("cover cells ({})", cover_dims.join(", ")));
        out.text(format!(
            "chi: base {} cover {}",
            eq.base.euler_characteristic(),
            eq.cover.euler_characteristic()
        ));
    }
    Ok(())
}

pub fn condition_c(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    let twisthom::catalog::SpaceKind::Simplicial(k) = &s.kind else {
        return Err(Error::InvalidInput(
            "condition-c needs simplicial input".into(),
        ));
    };
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("condition (C) for {}", s.name));
    }
    let show = |v: Option<usize>| v.map_or("unknown".to_string(), |x| x.to_string());
    for &ell in &config.primes {
        let r = theorems::condition_c_check(
            k,
            ell,
            config.coset_budget,
            config.group_cap,
            config.degree_cap,
        )?;
        if out.machine {
            out.kv("ell", ell);
            out.kv("dim.h2.group", show(r.h2_group));
            out.kv("dim.h2.base", r.h2_base);
            out.kv("dim.h3.group", show(r.h3_group));
            out.kv("dim.h3.base", r.h3_base);
            out.kv(
                "hurewicz.nonzero",
                r.hurewicz_nonzero
                    .map_or("unknown".to_string(), |b| b.to_string()),
            );
            out.kv("verdict", r.verdict);
            out.kv("manifold.level", r.manifold_level);
            for n in &r.notes {
                out.kv("note", n);
            }
        } else {
            out.text(format!(
                "ell {ell}: H2(G)={} H2(M)={} H3(G)={} H3(M)={} hurewicz={}",
                show(r.h2_group),
                r.h2_base,
                show(r.h3_group),
                r.h3_base,
                r.hurewicz_nonzero
                    .map_or("unknown".to_string(), |b| b.to_string())
            ));
            let level = if r.manifold_level { "" } else { " (complex-level)" };
            out.text(format!("  verdict: {}{level}", r.verdict));
            for n in &r.notes {
                out.text(format!("  note: {n}"));
            }
        }
    }
    Ok(())
}

pub fn cartan_leray(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    let eq = s.equivariant(config.coset_budget)?;
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("Cartan-Leray bookkeeping for {}", s.name));
    }
    let show = |v: Option<usize>| v.map_or("unknown".to_string(), |x| x.to_string());
    for &ell in &config.primes {
        let r = theorems::cartan_leray_report(&eq, ell, config.group_cap, config.degree_cap)?;
        if out.machine {
            out.kv("ell", ell);
            out.kv("dim.h2.group", show(r.h2_group));
            out.kv("dim.h2.base", r.h2_base);
            out.kv("dim.h2.invariant", r.h2_invariant);
            out.kv("dim.h3.group", show(r.h3_group));
            out.kv("dim.h3.base", r.h3_base);
            out.kv("rank.pi.star", r.rank_pi_star);
            out.kv("ker.pi.star", r.kernel_pi_star);
            out.kv(
                "verdict",
                r.verdict.map_or("unknown".to_string(), |b| {
                    if b { "pass" } else { "fail" }.into()
                }),
            );
        } else {
            out.text(format!(
                "ell {ell}: dims (H2G, H2M, H2inv, H3G, H3M) = ({}, {}, {}, {}, {})",
                show(r.h2_group),
                r.h2_base,
                r.h2_invariant,
                show(r.h3_group),
                r.h3_base
            ));
            out.text(format!(
                "  rank pi* = {}, ker pi* = {}, verdict {}",
                r.rank_pi_star,
                r.kernel_pi_star,
                r.verdict.map_or("unknown".to_string(), |b| {
                    if b { "pass" } else { "fail" }.into()
                })
            ));
        }
    }
    Ok(())
}

pub fn census(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    let eq = s.equivariant(config.coset_budget)?;
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("loop-space local-system census for {}", s.name));
    }
    for &ell in &config.primes {
        let r = theorems::loop_census(&eq, ell)?;
        if out.machine {
            out.kv("ell", ell);
            out.kv("a", r.invariant_dim);
            out.kv("b", r.base_h1);
            out.kv("count", r.count);
            out.kv("existence", r.existence);
        } else {
            out.text(format!(
                "ell {ell}: a = {}, b = {}, count = {}^(a+b) = {}, nontrivial-on-loops {}",
                r.invariant_dim, r.base_h1, ell, r.count, r.existence
            ));
        }
    }
    Ok(())
}

pub fn hspace_check(out: &mut Report, s: &SpaceObject, config: &RunConfig) -> Result<(), Error> {
    if out.machine {
        out.kv("space", &s.name);
    } else {
        out.text(format!("H-space obstruction search for {}", s.name));
    }
    let outcome = s.hspace_check(&config.primes, config.coset_budget)?;
    match outcome {
        theorems::ObstructionOutcome::Certificate(c) => {
            let reverified = theorems::verify_certificate(&c, |sys| s.twisted(sys))?;
            if out.machine {
                out.kv("outcome", "certificate");
                out.kv("certificate.ell", c.ell);
                out.kv("certificate.system", &c.system);
                out.kv("certificate.degree", c.degree);
                out.kv("certificate.rank", c.rank);
                out.kv("certificate.reverified", reverified);
            } else {
                out.text("obstruction found: not an H-space".to_string());
                out.text(format!(
                    "  nontrivial system {} has H_{}(X; L) of rank {} (re-verified: {})",
                    c.system, c.degree, c.rank, reverified
                ));
            }
        }
        theorems::ObstructionOutcome::NoneFound {
            primes,
            systems_checked,
        } => {
            if out.machine {
                out.kv("outcome", "none-found");
                let p: Vec<String> = primes.iter().map(|x| x.to_string()).collect();
                out.kv("primes", p.join(","));
                out.kv("systems.checked", systems_checked);
            } else {
                let p: Vec<String> = primes.iter().map(|x| x.to_string()).collect();
                out.text(format!(
                    "none found: {} nontrivial systems over primes {} all have vanishing twisted homology",
                    systems_checked,
                    p.join(",")
                ));
            }
        }
    }
    Ok(())
}

pub fn group_cohomology(
    out: &mut Report,
    table: &GroupTable,
    factors: &[u64],
    config: &RunConfig,
) -> Result<(), Error> {
    let spec: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    if out.machine {
        out.kv("group", spec.join("x"));
        out.kv("group.order", table.order());
    } else {
        out.text(format!(
            "bar-resolution cohomology of Z/{} (order {})",
            spec.join(" x Z/"),
            table.order()
        ));
    }
    for &ell in &config.primes {
        if out.machine {
            out.kv("ell", ell);
        } else {
            out.text(format!("prime {ell}"));
        }
        for k in 0..=config.degree_cap {
            let d = theorems::bar_group_cohomology(table, ell, k, config.group_cap, config.degree_cap)?;
            if out.machine {
                out.kv(&format!("dim.h{k}"), d);
            } else {
                out.text(format!("  dim H^{k} = {d}"));
            }
        }
    }
    Ok(())
}

pub fn vanishing_witness(
    out: &mut Report,
    table: &GroupTable,
    factors: &[u64],
    character: Option<&str>,
    max_degree: usize,
    config: &RunConfig,
) -> Result<(), Error> {
    let spec: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    if out.machine {
        out.kv("group", spec.join("x"));
    } else {
        out.text(format!("vanishing witnesses for the nerve of Z/{}", spec.join(" x Z/")));
    }
    for &ell in &config.primes {
        let characters: Vec<Vec<u64>> = match character {
            Some(spec) => {
                let exps = parse_character_exponents(spec, factors.len())?;
                vec![twisthom::catalog::character_from_exponents(
                    table, factors, &exps, ell,
                )]
            }
            None => table
                .characters_mod(ell)
                .into_iter()
                .filter(|chi| chi.iter().any(|&c| c != 0))
                .collect(),
        };
        if out.machine {
            out.kv("ell", ell);
            out.kv("characters", characters.len());
        } else {
            out.text(format!(
                "prime {ell}: {} nontrivial character(s)",
                characters.len()
            ));
        }
        for chi in characters {
            let w = theorems::vanishing_witness(table, &chi, ell, max_degree)?;
            let chi_str: Vec<String> = chi.iter().map(|c| c.to_string()).collect();
            let betti: Vec<String> = w.betti.iter().map(|b| b.to_string()).collect();
            if out.machine {
                out.kv("character", chi_str.join(","));
                out.kv("witness.element", w.element);
                out.kv("witness.coefficient", &w.coefficient);
                out.kv("witness.boundary", "unit");
                out.kv("betti", betti.join(","));
            } else {
                out.text(format!("character ({})", chi_str.join(",")));
                out.text(format!(
                    "  d( {} * [g{}] ) = [e] exactly; twisted betti ({}) all zero",
                    w.coefficient,
                    w.element,
                    betti.join(", ")
                ));
            }
        }
    }
    Ok(())
}

fn parse_character_exponents(spec: &str, generators: usize) -> Result<Vec<u64>, Error> {
    let mut exps = vec![0u64; generators];
    for tok in spec.split_whitespace() {
        let (name, val) = tok
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("bad character term {tok:?}")))?;
        let idx = (0..generators)
            .find(|&i| generator_name(i) == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))?;
        exps[idx] = val
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent {val:?}")))?;
    }
    Ok(exps)
}

pub fn catalog(out: &mut Report) -> Result<(), Error> {
    for b in Builtin::standard_list() {
        let space = b.build()?;
        let c = space.integral_complex()?;
        let h = homology_integral(&c);
        let groups: Vec<String> = h.groups.iter().map(|g| g.to_string()).collect();
        if out.machine {
            out.kv("builtin", b.name());
            out.kv("chi", c.euler_characteristic());
            out.kv("H", groups.join(","));
        } else {
            out.text(format!(
                "{:<22} chi {:>3}   H = ({})",
                b.name(),
                c.euler_characteristic(),
                groups.join(", ")
            ));
        }
    }
    Ok(())
}
