//! `hyperalg`: check, construct and compare finite hyperrings and fuzzy rings.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperalg::io::Kind;

use commands::{ConstructArgs, ConstructOp, IsoArg, MatroidArgs, MorphismArg, MorphismArgs};
use report::{CliError, RunReport, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "hyperalg", version, about = "Finite hyperrings, fuzzy rings and matroids with coefficients")]
struct Cli {
    /// Worker threads for enumerations (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Hyperring,
    Fuzzyring,
    Gp,
    Zariski,
    PartialDemifield,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Hyperring => Kind::Hyperring,
            KindArg::Fuzzyring => Kind::Fuzzyring,
            KindArg::Gp => Kind::Gp,
            KindArg::Zariski => Kind::Zariski,
            KindArg::PartialDemifield => Kind::PartialDemifield,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom suite for a structure file (or `builtin:<name>`).
    Check {
        path: String,
        #[arg(long)]
        kind: Option<KindArg>,
        /// Largest product of generators checked for Zariski systems.
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Build a structure and write it as a structure file.
    Construct {
        op: ConstructOp,
        #[arg(long = "in")]
        input: Option<String>,
        /// `klein` or `c<m>`, for KH and KHef.
        #[arg(long)]
        group: Option<String>,
        /// `gf:<q>` or `zmod:<n>`, for quotient.
        #[arg(long)]
        ring: Option<String>,
        /// Comma-separated subgroup elements, for quotient (default: all units).
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        /// Write the result even when it fails its axioms.
        #[arg(long)]
        force: bool,
    },
    /// Enumerate morphisms, or check one given with --map.
    Morphisms {
        src: String,
        dst: String,
        #[arg(long)]
        kind: MorphismArg,
        /// Comma-separated images by source index; `_` leaves an entry undefined.
        #[arg(long)]
        map: Option<String>,
        /// Require f(a + b) = f(a) + f(b) for hyperring homomorphisms.
        #[arg(long)]
        strict: bool,
        /// Node budget for the extension search.
        #[arg(long, default_value_t = 20000)]
        budget: u64,
    },
    /// Enumerate Grassmann-Pluecker functions over a coefficient structure.
    Matroids {
        #[arg(long)]
        coeff: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        r: usize,
        /// Compare underlying matroids against brute-force basis exchange.
        #[arg(long)]
        oracle: bool,
        /// Compare validity in the hyperfield with validity after the functors.
        #[arg(long)]
        cross_check: bool,
        /// Keep every scalar multiple instead of one per projective class.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
    /// Search for an isomorphism and print the witness.
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        kind: IsoArg,
    },
    /// (2 ▽ 3)^2 against its expansion in the triangle hyperfield.
    TriangleDemo,
    /// Check H_Z and K_Z on the window [-B, B].
    OrdgrpDemo {
        #[arg(long)]
        window: i64,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let mut rep = RunReport::new(argv);
    let mut structure_text = None;
    let outcome = run(&cli, &mut rep, &mut structure_text);
    rep.finish(outcome);
    if let Some(text) = structure_text.filter(|_| rep.exit_code == 0) {
        print!("{text}");
        eprintln!("{rep}");
    } else if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
    } else {
        println!("{rep}");
    }
    ExitCode::from(rep.exit_code as u8)
}

fn run(cli: &Cli, rep: &mut RunReport, structure_text: &mut Option<String>) -> Result<(), CliError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set --jobs: {e}")))?;
    }
    match &cli.command {
        Command::Check { path, kind, degree } => commands::cmd_check(rep, path, kind.map(Into::into), *degree),
        Command::Construct { op, input, group, ring, subgroup, out, name, force } => {
            let args = ConstructArgs {
                op: *op,
                input: input.clone(),
                group: group.clone(),
                ring: ring.clone(),
                subgroup: subgroup.clone(),
                out: out.clone(),
                name: name.clone(),
                force: *force,
            };
            *structure_text = commands::cmd_construct(rep, &args)?;
            Ok(())
        }
        Command::Morphisms { src, dst, kind, map, strict, budget } => commands::cmd_morphisms(
            rep,
            &MorphismArgs { src: src.clone(), dst: dst.clone(), kind: *kind, map: map.clone(), strict: *strict, budget: *budget },
        ),
        Command::Matroids { coeff, n, r, oracle, cross_check, all, list } => commands::cmd_matroids(
            rep,
            &MatroidArgs { coeff: coeff.clone(), n: *n, r: *r, oracle: *oracle, cross_check: *cross_check, all: *all, list: *list },
        ),
        Command::Iso { a, b, kind } => commands::cmd_iso(rep, a, b, *kind),
        Command::TriangleDemo => commands::cmd_triangle(rep),
        Command::OrdgrpDemo { window } => commands::cmd_ordgrp(rep, *window),
    }
}
