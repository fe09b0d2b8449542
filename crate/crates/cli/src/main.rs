mod commands;
mod field;
mod json;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;
use json::Style;
use scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "galoisk",
    version,
    about = "Galois-Gauss sums, relative K-group representatives and local enumerations, as JSON"
)]
struct Cli {
    /// Add double-precision renderings next to exact values.
    #[arg(long, global = true)]
    numeric: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Irreducible character table of a group such as `heisenberg:3`.
    Chartable {
        #[arg(long)]
        group: String,
    },
    /// Gauss sums of Dirichlet characters, Galois-Gauss packages of a field, or local sums.
    Gauss {
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        index: Option<usize>,
        /// Degree of the local base field over Q_p.
        #[arg(long, default_value_t = 1)]
        local_degree: u32,
        /// Frobenius value of the unramified part, as `order:c0,c1,...`.
        #[arg(long)]
        frobenius: Option<String>,
        #[arg(long)]
        reciprocity_table: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "char")]
        character: Option<usize>,
    },
    /// Jacobi sum of two Dirichlet characters modulo `m`.
    Jacobi {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Galois-Jacobi package `J_k` of a field and its rationality.
    GaloisJacobi {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        k: i64,
    },
    /// Unramified characteristic package `y`.
    Ychar {
        #[arg(long)]
        field: String,
    },
    /// Idelic twisted unramified characteristic `c`.
    Cchar {
        #[arg(long)]
        field: String,
    },
    /// Lagrange resolvents of an element (default: a searched normal-basis generator).
    Resolvent {
        #[arg(long)]
        field: String,
        /// Element as `order:c0,c1,...`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Lattice representative, `a`, `c` and whether `a = c`.
    AssembleA {
        #[arg(long)]
        field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        ideal_exponent: Option<i64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        scalar: i64,
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
    /// Betti-lattice metric class against its closed form.
    Betti {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        base_degree: usize,
    },
    /// Commutativity of the projection diagram on random representatives.
    Diagram {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a named identity on a scenario file.
    Verify {
        #[arg(long)]
        identity: Option<String>,
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Enumerate weakly ramified local extensions (`p3` or `l2p`).
    EnumerateLocal {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: Option<u64>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let style = Style { numeric: cli.numeric };
    match cli.cmd {
        Cmd::Chartable { group } => commands::chartable(&group, style),
        Cmd::Gauss { modulus, field, index, local_degree, frobenius, reciprocity_table, group, character } => {
            commands::gauss(
                commands::GaussArgs {
                    modulus,
                    field: field.as_deref(),
                    index,
                    local_degree,
                    frobenius: frobenius.as_deref(),
                    reciprocity_table: reciprocity_table.as_deref(),
                    group: group.as_deref(),
                    character,
                },
                style,
            )
        }
        Cmd::Jacobi { modulus, a, b } => commands::jacobi(modulus, a, b, style),
        Cmd::GaloisJacobi { field, k } => commands::galois_jacobi_cmd(&field, k, style),
        Cmd::Ychar { field } => commands::ychar(&field, style),
        Cmd::Cchar { field } => commands::cchar(&field, style),
        Cmd::Resolvent { field, element } => commands::resolvent(&field, element.as_deref(), style),
        Cmd::AssembleA { field, ideal_exponent, scalar, scenario } => {
            let s = match scenario {
                Some(p) => Scenario::load(&p)?,
                None => Scenario::default(),
            };
            let f =
                field.or(s.field).ok_or_else(|| anyhow::anyhow!("--field or a scenario with a field is required"))?;
            commands::assemble_a(&f, ideal_exponent.or(s.ideal_exponent), s.scalar.unwrap_or(scalar), style)
        }
        Cmd::Betti { group, base_degree } => commands::betti(&group, base_degree),
        Cmd::Diagram { group, samples, seed } => commands::diagram(&group, samples, seed),
        Cmd::Verify { identity, scenario } => {
            let s = Scenario::load(&scenario)?;
            let tag = identity
                .or_else(|| s.identity.clone())
                .ok_or_else(|| anyhow::anyhow!("--identity or a scenario identity is required"))?;
            commands::verify(&tag, &s)
        }
        Cmd::EnumerateLocal { family, p, l } => commands::enumerate_local(&family, l, p),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("GALOISK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("JSON values serialize");
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
