//! `monsky`: validate triangulations, bound the degree of their area
//! polynomial, generate families, sample drawings and check vanishing.

mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use monsky_core::complex::{make_diagonal, make_exploded, ComplexError, Triangulation, VertexId};
use monsky_core::degree::{degree_lower_bound, DegreeError, Strategy, StrategyKind};
use monsky_core::draw::{render_svg, sample_drawing, verify_vanishing, DrawError};
use monsky_core::poly::{monsky_diagonal, universe, MultiPoly, PolyError};

#[derive(Parser)]
#[command(name = "monsky", version, about = "Area polynomials of triangulated squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greedy,
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Diagonal,
    Exploded,
}

#[derive(Subcommand)]
enum Command {
    /// Print a structural report of a triangulation file.
    Validate { path: PathBuf },
    /// Lower bound on the degree of the area polynomial.
    Degree {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        /// Also try the flipped kill quadrilateral after each pair kill.
        #[arg(long)]
        use_trick: bool,
        /// Maximum number of expanded search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Wall-clock budget in milliseconds.
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Runs for the random strategy.
        #[arg(long, default_value_t = 16)]
        restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_memo: bool,
        /// Write the derivation trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Write a member of the diagonal (`n`) or exploded (`n k`) family.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        params: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sample one exact drawing.
    Sample {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check that a polynomial vanishes on sampled area vectors.
    Verify {
        path: PathBuf,
        /// `diagonal`, or a polynomial file.
        #[arg(long, default_value = "diagonal")]
        poly: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a sampled drawing as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Recompute the table of lower bounds for the exploded family.
    Table1 {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Node budget per cell.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Draw(#[from] DrawError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("bad polynomial file: {0}")]
    PolyFile(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Complex(_) => "triangulation",
            CliError::Degree(_) => "degree",
            CliError::Draw(_) => "draw",
            CliError::Poly(_) | CliError::PolyFile(_) => "polynomial",
            CliError::Usage(_) => "usage",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Draw(DrawError::DegenerateAfterRetries { .. }) => 1,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load(path: &Path) -> Result<Triangulation, CliError> {
    Ok(Triangulation::from_json(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io { path: p.to_owned(), source }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn validate(path: &Path) -> Result<u8, CliError> {
    let t = load(path)?;
    let cx = t.complex();
    let non_separating = t.is_non_separating();
    let linearity = if non_separating { t.linearity_type().ok().flatten() } else { None };
    let report = json!({
        "n": cx.corner_count(),
        "k": cx.interior_vertex_count(),
        "triangles": cx.triangles().len(),
        "condition_size": t.condition().len(),
        "non_separating": non_separating,
        "mosquitos": t.mosquitos(),
        "subdivisions": t.subdivisions(),
        "linearity": linearity.map(|l| l.letter()),
    });
    println!("{report}");
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn degree(
    path: &Path,
    strategy: StrategyArg,
    use_trick: bool,
    budget: Option<u64>,
    time_budget_ms: Option<u64>,
    restarts: u32,
    seed: u64,
    no_memo: bool,
    trace: Option<&Path>,
) -> Result<u8, CliError> {
    let t = load(path)?;
    let kind = match strategy {
        StrategyArg::Greedy => StrategyKind::GreedyFirst,
        StrategyArg::Exhaustive => StrategyKind::ExhaustiveMax,
        StrategyArg::Random => StrategyKind::RandomRestarts { count: restarts, seed },
    };
    let mut s = Strategy::new(kind).with_trick(use_trick).with_memo(!no_memo);
    if let Some(b) = budget {
        s = s.with_node_budget(b);
    }
    if let Some(ms) = time_budget_ms {
        s = s.with_time_budget(Duration::from_millis(ms));
    }
    let r = degree_lower_bound(&t, &s)?;
    if let Some(p) = trace {
        emit(Some(p), &r.trace.to_json())?;
    }
    println!("{}", json!({ "d": r.value, "complete": r.complete, "nodes": r.nodes }));
    Ok(if r.complete { 0 } else { 3 })
}

fn family(kind: FamilyKind, params: &[usize], out: Option<&Path>) -> Result<u8, CliError> {
    let t = match (kind, params) {
        (FamilyKind::Diagonal, &[n]) => make_diagonal(n),
        (FamilyKind::Exploded, &[n, k]) => make_exploded(n, k)?,
        (FamilyKind::Diagonal, _) => return Err(CliError::Usage("diagonal takes one parameter n".into())),
        (FamilyKind::Exploded, _) => return Err(CliError::Usage("exploded takes two parameters n k".into())),
    };
    emit(out, &t.to_json())?;
    Ok(0)
}

/// Polynomial file: variable names bound to triangles by their vertices.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    variables: Vec<PolyVariable>,
    polynomial: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyVariable {
    name: String,
    triangle: [VertexId; 3],
}

fn load_poly(path: &Path, t: &Triangulation) -> Result<(MultiPoly, Vec<usize>), CliError> {
    let file: PolyFile = serde_json::from_str(&read(path)?).map_err(|e| CliError::PolyFile(e.to_string()))?;
    let mut binding = Vec::with_capacity(file.variables.len());
    for v in &file.variables {
        let tri = t
            .complex()
            .find_triangle(v.triangle)
            .ok_or_else(|| CliError::PolyFile(format!("{}: {:?} is not a triangle", v.name, v.triangle)))?;
        binding.push(tri);
    }
    let names: Vec<&str> = file.variables.iter().map(|v| v.name.as_str()).collect();
    Ok((MultiPoly::parse(universe(&names), &file.polynomial)?, binding))
}

fn verify(path: &Path, poly: &str, samples: usize, seed: u64) -> Result<u8, CliError> {
    let t = load(path)?;
    let (p, binding) = if poly == "diagonal" {
        let n = t.complex().interior_vertex_count();
        let reference = make_diagonal(n);
        let binding = t
            .triangle_correspondence(&reference)
            .ok_or_else(|| CliError::Usage(format!("not a relabeling of the diagonal triangulation with n={n}")))?;
        (monsky_diagonal(n)?, binding)
    } else {
        load_poly(Path::new(poly), &t)?
    };
    let report = verify_vanishing(&p, &t, &binding, samples, seed)?;
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(if report.pass { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Degree { path, strategy, use_trick, budget, time_budget_ms, restarts, seed, no_memo, trace } => {
            degree(&path, strategy, use_trick, budget, time_budget_ms, restarts, seed, no_memo, trace.as_deref())
        }
        Command::Family { kind, params, out } => family(kind, &params, out.as_deref()),
        Command::Sample { path, seed, out } => {
            let t = load(&path)?;
            emit(out.as_deref(), &sample_drawing(&t, seed)?.to_json())?;
            Ok(0)
        }
        Command::Verify { path, poly, samples, seed } => verify(&path, &poly, samples, seed),
        Command::Render { path, seed, out } => {
            let t = load(&path)?;
            let svg = render_svg(&t, &sample_drawing(&t, seed)?);
            emit(out.as_deref(), svg.trim_end())?;
            Ok(0)
        }
        Command::Table1 { n_max, k_max, budget } => table::run(n_max, k_max, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let mut err = json!({ "error": e.kind(), "message": e.to_string() });
            if let CliError::Draw(DrawError::DegenerateAfterRetries { seed, .. }) = &e {
                err["seed"] = json!(seed);
            }
            eprintln!("{err}");
            ExitCode::from(e.exit_code())
        }
    }
}
