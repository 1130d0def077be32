use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use potmut::io::{explore_orbit, parse_expression, report, to_dot, SeedDocument};
use potmut::mutation::{fn_mutate_with, Convention};
use potmut::upperbound::{check_property_v_fn, generators_for, MembershipReport};
use potmut::verify::{run, Suite};
use potmut::LatticeVector;

#[derive(Parser)]
#[command(name = "potmut", version, about = "Mutations of Laurent potentials and upper-bound membership")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Monomial,
    Coordinate,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Pl,
    Birational,
    Bmatrix,
    Content,
    Ub,
    Vlemma,
    Identities,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a seed (collection and potential) and print the new seed file.
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        /// Direction as comma-separated integers, e.g. "0,1".
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::Monomial)]
        convention: ConventionArg,
    },
    /// Check property (V) for the seed's potential.
    CheckV {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide membership of an expression in the seed's upper bound.
    UbMember {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print generators of the upper bound for a supported rank-two seed.
    Generators {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Breadth-first exploration of collection mutations.
    Orbit {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Write a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Carry the potential along and distinguish nodes by it.
        #[arg(long)]
        with_potential: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Exit status 2 with a message.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<SeedDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let doc = SeedDocument::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let v = doc.cseed().validation();
    if !v.is_valid() {
        eprintln!(
            "warning: seed is outside the validated setting (primitive vectors: {}, nondegenerate form: {})",
            v.all_primitive, v.nondegenerate
        );
    }
    Ok(doc)
}

fn parse_dir(s: &str, rank: usize) -> Result<LatticeVector, Failure> {
    let coords: Result<Vec<i64>, _> =
        s.trim_matches(|c| c == '(' || c == ')').split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| Failure(format!("bad direction `{s}`")))?;
    if coords.len() != rank {
        return Err(Failure(format!("direction `{s}` must have {rank} coordinates")));
    }
    Ok(LatticeVector::new(coords))
}

fn print_membership(r: &MembershipReport, seed: Option<&str>, expr: &str, format: Format) {
    match format {
        Format::Jsonl => println!("{}", report::line(&report::membership(seed, expr, r))),
        Format::Text => {
            println!("verdict: {}", r.verdict);
            match &r.w_witness {
                None => println!("laurent: yes"),
                Some(w) => println!("laurent: no ({w})"),
            }
            for d in &r.directions {
                match &d.witness {
                    None => println!("{} x {}: laurent", d.vector, d.multiplicity),
                    Some(w) => println!("{} x {}: not laurent, {w}", d.vector, d.multiplicity),
                }
            }
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Mutate { seed, dir, times, convention } => {
            let doc = load(&seed)?;
            let d = parse_dir(&dir, doc.rank)?;
            let mut out = doc.mutate(&d, times)?;
            if let (ConventionArg::Coordinate, Some(p)) = (convention, &doc.potential) {
                out.potential = Some(fn_mutate_with(p, &d, &doc.skew_form(), times, Convention::Coordinate)?);
            }
            print!("{}", out.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckV { seed, format } => {
            let doc = load(&seed)?;
            let p = doc.potential.as_ref().ok_or_else(|| Failure("seed has no potential".into()))?;
            let r = check_property_v_fn(p, &doc.collection(), &doc.skew_form());
            print_membership(&r, doc.name.as_deref(), &p.to_string(), format);
            Ok(if r.verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::UbMember { seed, expr, format } => {
            let doc = load(&seed)?;
            let w = parse_expression(&expr, doc.rank).map_err(|e| Failure(format!("expression {e}")))?.into_fn();
            let r = check_property_v_fn(&w, &doc.collection(), &doc.skew_form());
            print_membership(&r, doc.name.as_deref(), &expr, format);
            Ok(if r.verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Generators { seed, format } => {
            let doc = load(&seed)?;
            let p = generators_for(&doc.skew_form(), &doc.collection())?;
            match format {
                Format::Jsonl => println!("{}", report::line(&report::generators(doc.name.as_deref(), &p))),
                Format::Text => {
                    println!("shape: {}", p.shape);
                    if let Some(a) = &p.coordinate_change {
                        println!("coordinate change (exponents n = A m): {a}");
                    }
                    for (g, label) in p.generators.iter().zip(&p.labels) {
                        println!("{g}    [{}, K = {}]", label, p.k);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { seed, depth, dot, with_potential, format } => {
            let doc = load(&seed)?;
            let potential = if with_potential { doc.potential.as_ref() } else { None };
            let g = explore_orbit(&doc.skew_form(), &doc.collection(), potential, depth)?;
            if let Some(path) = dot {
                fs::write(&path, to_dot(&g)).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            match format {
                Format::Jsonl => println!("{}", report::line(&report::orbit(&g))),
                Format::Text => {
                    println!(
                        "nodes: {}, edges: {}, depth reached: {}, truncated: {}",
                        g.nodes.len(),
                        g.edges.len(),
                        g.depth_reached,
                        g.truncated
                    );
                    for (i, n) in g.nodes.iter().enumerate() {
                        println!("n{i} depth {} {}", n.depth, n.label);
                    }
                    for e in &g.edges {
                        println!("n{} -[{}]-> n{}", e.from, e.direction, e.to);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, cases, rng_seed, format } => {
            let suite = match suite {
                SuiteArg::Pl => Suite::Pl,
                SuiteArg::Birational => Suite::Birational,
                SuiteArg::Bmatrix => Suite::Bmatrix,
                SuiteArg::Content => Suite::Content,
                SuiteArg::Ub => Suite::Ub,
                SuiteArg::Vlemma => Suite::Vlemma,
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::All => Suite::All,
            };
            let results = run(suite, cases, rng_seed);
            for r in &results {
                match format {
                    Format::Jsonl => println!("{}", report::line(&report::verify(r))),
                    Format::Text => {
                        println!("{r}");
                        for f in &r.failures {
                            println!("  failed: {f}");
                        }
                    }
                }
            }
            Ok(if results.iter().all(|r| r.ok()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
