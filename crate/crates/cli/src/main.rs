//! `twisthom`: homology with rank-1 local coefficients on finite complexes,
//! and the theorem checkers built on it.
//!
//! Exit codes: 0 success, 1 invalid input, 2 size/budget limits, 64 usage.

mod reports;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twisthom::catalog::{Builtin, SpaceObject};
use twisthom::complexes::GroupTable;
use twisthom::error::Error;
use twisthom::RunConfig;

#[derive(Parser)]
#[command(
    name = "twisthom",
    version,
    about = "Twisted homology on finite complexes: local systems, covers, and H-space obstructions",
    after_help = "Environment: TWISTHOM_COSET_BUDGET, TWISTHOM_GROUP_CAP and \
TWISTHOM_DEGREE_CAP override the corresponding flags."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Emit machine-readable key=value records.
    #[arg(long, global = true)]
    machine: bool,

    /// Bound on the number of cosets the enumeration may define.
    #[arg(long, global = true, env = "TWISTHOM_COSET_BUDGET", default_value_t = 10_000)]
    coset_budget: usize,

    /// Largest group order for bar-resolution computations.
    #[arg(long, global = true, env = "TWISTHOM_GROUP_CAP", default_value_t = 16)]
    group_cap: usize,

    /// Largest group-cohomology degree.
    #[arg(long, global = true, env = "TWISTHOM_DEGREE_CAP", default_value_t = 3)]
    degree_cap: usize,

    /// Seed echoed into reports (used by the randomized test suites).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Primes to consider, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2")]
    primes: Vec<u64>,
}

#[derive(Args)]
struct SpaceArg {
    /// A builtin space: rp2, rp3, torus, klein-bottle, sphere:N,
    /// rpn-twisted:N, nerve:FACTORS:DEGREE, product:A:B.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,

    /// An input file (simplicial, chain, or groupring header).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integral homology (ranks and torsion) of a space or chain file.
    Homology {
        #[command(flatten)]
        space: SpaceArg,
        /// Print the aligned per-dimension table (human mode).
        #[arg(long, default_value_t = true)]
        report: bool,
    },
    /// Twisted Betti numbers over Q(zeta_l) for one or all local systems.
    TwistedHomology {
        #[command(flatten)]
        space: SpaceArg,
        /// A system like "l=2; a:1 b:0".
        #[arg(long, conflicts_with = "all_systems")]
        system: Option<String>,
        /// Run every system for every configured prime.
        #[arg(long)]
        all_systems: bool,
    },
    /// Enumerate Z/l local systems on the fundamental group.
    LocalSystems {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Universal cover summary: sheets, cells, Euler characteristics.
    Cover {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Condition (C) verdicts per prime.
    ConditionC {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// The low-degree Cartan-Leray exact-sequence bookkeeping per prime.
    CartanLeray {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Loop-space local-system census per prime.
    Census {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Search for an H-space obstruction certificate.
    HspaceCheck {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// dim H^k(G; F_l) for k = 0..=degree cap, from the bar resolution.
    GroupCohomology {
        /// Invariant factors, e.g. 2x2 for the Klein four-group.
        #[arg(long)]
        group: String,
    },
    /// The explicit vanishing witness for nerves of abelian groups.
    VanishingWitness {
        /// Invariant factors of an abelian group, e.g. 9 or 3x3.
        #[arg(long)]
        group: String,
        /// Restrict to one character, e.g. "a:1 b:0" (defaults to all
        /// nontrivial characters).
        #[arg(long)]
        character: Option<String>,
        /// Verify vanishing in degrees 0..=N.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// List the builtin catalog with integral homology.
    Catalog,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                // unknown subcommands and malformed usage
                ExitCode::from(64)
            };
        }
    };
    let config = RunConfig {
        primes: cli.primes.clone(),
        coset_budget: cli.coset_budget,
        group_cap: cli.group_cap,
        degree_cap: cli.degree_cap,
        machine: cli.machine,
        seed: cli.seed,
    };
    match run(&cli, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource_limit() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn resolve_space(arg: &SpaceArg) -> Result<SpaceObject, Error> {
    match (&arg.builtin, &arg.input) {
        (Some(name), None) => Builtin::parse(name)?.build(),
        (None, Some(path)) => SpaceObject::from_file(path),
        _ => Err(Error::InvalidInput(
            "exactly one of --builtin or --input is required".into(),
        )),
    }
}

fn parse_group(spec: &str) -> Result<(GroupTable, Vec<u64>), Error> {
    let factors: Result<Vec<u64>, Error> = spec
        .split('x')
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("bad invariant factor {t:?}")))
        })
        .collect();
    let factors = factors?;
    Ok((GroupTable::from_invariant_factors(&factors)?, factors))
}

fn run(cli: &Cli, config: &RunConfig) -> Result<(), Error> {
    config.validate()?;
    let mut out = reports::Report::new(config);
    match &cli.cmd {
        Cmd::Homology { space, report } => {
            reports::homology(&mut out, space_or_chain(space)?, *report)?;
        }
        Cmd::TwistedHomology {
            space,
            system,
            all_systems,
        } => {
            let s = resolve_space(space)?;
            reports::twisted_homology(&mut out, &s, system.as_deref(), *all_systems, config)?;
        }
        Cmd::LocalSystems { space } => {
            let s = resolve_space(space)?;
            reports::local_systems(&mut out, &s, config)?;
        }
        Cmd::Cover { space } => {
            let s = resolve_space(space)?;
            reports::cover(&mut out, &s, config)?;
        }
        Cmd::ConditionC { space } => {
            let s = resolve_space(space)?;
            reports::condition_c(&mut out, &s, config)?;
        }
        Cmd::CartanLeray { space } => {
            let s = resolve_space(space)?;
            reports::cartan_leray(&mut out, &s, config)?;
        }
        Cmd::Census { space } => {
            let s = resolve_space(space)?;
            reports::census(&mut out, &s, config)?;
        }
        Cmd::HspaceCheck { space } => {
            let s = resolve_space(space)?;
            reports::hspace_check(&mut out, &s, config)?;
        }
        Cmd::GroupCohomology { group } => {
            let (table, factors) = parse_group(group)?;
            reports::group_cohomology(&mut out, &table, &factors, config)?;
        }
        Cmd::VanishingWitness {
            group,
            character,
            max_degree,
        } => {
            let (table, factors) = parse_group(group)?;
            reports::vanishing_witness(
                &mut out,
                &table,
                &factors,
                character.as_deref(),
                *max_degree,
                config,
            )?;
        }
        Cmd::Catalog => {
            reports::catalog(&mut out)?;
        }
    }
    out.flush();
    Ok(())
}

/// `homology` also accepts bare chain files.
enum SpaceOrChain {
    Space(SpaceObject),
    Chain(twisthom::IntegerChainComplex, String),
}

fn space_or_chain(arg: &SpaceArg) -> Result<SpaceOrChain, Error> {
    if let (None, Some(path)) = (&arg.builtin, &arg.input) {
        let text = std::fs::read_to_string(path)?;
        if let Ok(twisthom::io::ParsedComplex::Chain(c)) = twisthom::io::parse_complex(&text) {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".into());
            return Ok(SpaceOrChain::Chain(c, name));
        }
    }
    Ok(SpaceOrChain::Space(resolve_space(arg)?))
}
