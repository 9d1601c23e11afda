//! `knots`: enumerate knot classes, annotate catalogs with group-theoretic
//! invariants, and work with lattice polygons.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knots_core::catalog::{render_summary, Catalog, CatalogFormat};
use knots_core::codes::PairCode;
use knots_core::enumerate::{
    enumerate_knots, reduce_fully, EnumerateError, ReduceOptions, RunConfig,
};
use knots_core::exec;
use knots_core::groups;
use knots_core::lattice::{self, Axis, LatticePolygon, ReduceEnd};
use knots_core::moves::DEFAULT_ORBIT_BUDGET;

const EXIT_BUDGET: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_CONFIG: u8 = 4;

#[derive(Parser)]
#[command(name = "knots", version, about = "Knot class enumeration over pair codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all knot classes up to a crossing budget.
    Enumerate(EnumerateArgs),
    /// Annotate a catalog with permutation-class invariant vectors.
    Invariants(InvariantsArgs),
    /// Operate on cubic-lattice polygons.
    Lattice(LatticeArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

impl Format {
    fn as_catalog(self) -> CatalogFormat {
        match self {
            Format::Tsv => CatalogFormat::Tsv,
            Format::Json => CatalogFormat::Json,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    /// Largest crossing count to sweep.
    #[arg(long, default_value_t = 8)]
    max_crossings: usize,
    /// Poke-up moves allowed per reduction excursion (0 or 1).
    #[arg(long, default_value_t = 1)]
    up_budget: u8,
    /// Cap on any triangle-slide orbit.
    #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
    orbit_budget: usize,
    /// Catalog file format.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Worker threads (0 = library default).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Catalog output path.
    #[arg(long)]
    out: PathBuf,
    /// Acknowledge runs past the default crossing cap.
    #[arg(long)]
    allow_beyond_cap: bool,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Catalog to annotate.
    #[arg(long)]
    catalog: PathBuf,
    /// Largest permutation degree to test.
    #[arg(long, default_value_t = 5)]
    m_max: u32,
    /// Catalog file format (input and output).
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Worker threads (0 = library default).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Annotated catalog output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(subcommand)]
    command: LatticeCommand,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
    Auto,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Check closure and self-avoidance of a polygon word.
    Validate { polygon: String },
    /// Search for the preferred equivalent word.
    Reduce {
        polygon: String,
        /// Longest word the search may visit (default: input length).
        #[arg(long)]
        length_budget: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        step_budget: usize,
    },
    /// Project a polygon to a pair code.
    Project {
        polygon: String,
        #[arg(long, value_enum, default_value_t = AxisArg::Auto)]
        axis: AxisArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Invariants(args) => cmd_invariants(args),
        Command::Lattice(args) => cmd_lattice(args),
    };
    match code {
        Ok(()) => ExitCode::SUCCESS,
        Err((status, message)) => {
            eprintln!("knots: {message}");
            ExitCode::from(status)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn write_file(path: &Path, contents: &str) -> CmdResult {
    std::fs::write(path, contents)
        .map_err(|e| (EXIT_IO, format!("writing {}: {e}", path.display())))
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let cfg = RunConfig {
        max_crossings: args.max_crossings,
        up_budget: args.up_budget,
        orbit_budget: args.orbit_budget,
        workers: args.workers,
        allow_beyond_cap: args.allow_beyond_cap,
    };
    cfg.validate().map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let result = exec::with_workers(args.workers, || enumerate_knots(&cfg)).map_err(|e| {
        let status = match e {
            EnumerateError::Config(_) => EXIT_CONFIG,
            EnumerateError::Shadow { .. } => EXIT_BUDGET,
        };
        (status, e.to_string())
    })?;
    let header = vec![format!(
        "knots enumerate max_crossings={} up_budget={} orbit_budget={} format={}",
        args.max_crossings,
        args.up_budget,
        args.orbit_budget,
        args.format.name()
    )];
    write_file(
        &args.out,
        &result.catalog.write(args.format.as_catalog(), &header),
    )?;
    print!("{}", render_summary(&result.summary));
    Ok(())
}

fn cmd_invariants(args: InvariantsArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.catalog)
        .map_err(|e| (EXIT_IO, format!("reading {}: {e}", args.catalog.display())))?;
    let mut catalog =
        Catalog::read(&text, args.format.as_catalog()).map_err(|e| (EXIT_IO, e.to_string()))?;
    let codes: Vec<PairCode> = catalog.records.iter().map(|r| r.code.clone()).collect();
    let m_max = args.m_max;
    let vectors = exec::with_workers(args.workers, || {
        exec::map_vec(codes, move |code| {
            groups::invariant_vector(&code, m_max).map(|v| groups::format_vector(&v))
        })
    });
    for (record, vector) in catalog.records.iter_mut().zip(vectors) {
        record.invariants = vector.map_err(|e| (EXIT_BUDGET, e.to_string()))?;
    }
    let header = vec![format!(
        "knots invariants m_max={} format={}",
        args.m_max,
        args.format.name()
    )];
    write_file(&args.out, &catalog.write(args.format.as_catalog(), &header))?;
    let mut report = String::new();
    let mut unseparated = 0usize;
    for i in 0..catalog.records.len() {
        for j in (i + 1)..catalog.records.len() {
            let (a, b) = (&catalog.records[i], &catalog.records[j]);
            if a.invariants == b.invariants {
                unseparated += 1;
                let _ = writeln!(report, "unseparated\t{}\t{}", a.code, b.code);
            }
        }
    }
    print!("{report}");
    println!("unseparated pairs: {unseparated}");
    Ok(())
}

fn parse_polygon(text: &str) -> Result<LatticePolygon, (u8, String)> {
    text.parse::<LatticePolygon>()
        .map_err(|e| (EXIT_CONFIG, e.to_string()))
}

fn cmd_lattice(args: LatticeArgs) -> CmdResult {
    match args.command {
        LatticeCommand::Validate { polygon } => {
            // violations go to stdout: the check itself succeeded
            match polygon.parse::<LatticePolygon>() {
                Ok(_) => println!("ok"),
                Err(e) => println!("violation: {e}"),
            }
            Ok(())
        }
        LatticeCommand::Reduce {
            polygon,
            length_budget,
            step_budget,
        } => {
            let p = parse_polygon(&polygon)?;
            let budget = length_budget.unwrap_or(p.len());
            let (best, end) = lattice::reduce_lattice(&p, budget, step_budget);
            println!("{best}");
            match end {
                ReduceEnd::Converged => Ok(()),
                ReduceEnd::BudgetExhausted => {
                    Err((EXIT_BUDGET, format!("step budget {step_budget} exhausted")))
                }
            }
        }
        LatticeCommand::Project { polygon, axis } => {
            let p = parse_polygon(&polygon)?;
            let code = match axis {
                AxisArg::X => lattice::project_to_code(&p, Axis::X),
                AxisArg::Y => lattice::project_to_code(&p, Axis::Y),
                AxisArg::Z => lattice::project_to_code(&p, Axis::Z),
                AxisArg::Auto => lattice::project_any(&p, 500).map(|(c, _, _)| c),
            }
            .map_err(|e| (EXIT_BUDGET, e.to_string()))?;
            let reduced = reduce_fully(&code, &ReduceOptions::default())
                .map_err(|e| (EXIT_BUDGET, e.to_string()))?;
            println!("{code}");
            if reduced != code {
                println!("# reduces to: {reduced}");
            }
            Ok(())
        }
    }
}
