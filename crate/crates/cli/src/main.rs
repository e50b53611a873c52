use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use poisson_core::io::{run, AssembleKind, AssembleParams, Format, Operation, ReportConfig, Source};
use poisson_core::io::parse_polynomial;
use poisson_core::models::{model, ModelName, ModelSpec};

#[derive(Parser, Debug)]
#[command(name = "poisson", version, about = "Exact Poisson cohomology of polynomial bivectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Catalog model (see `poisson models`).
    #[arg(long, global = true, conflicts_with = "input")]
    model: Option<String>,

    /// Structure file in the `.poisson` text format.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Highest coefficient degree to compute.
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: u32,

    /// Cochain degrees as `a..b` (inclusive).
    #[arg(long, global = true, value_parser = parse_k_range)]
    k_range: Option<(usize, usize)>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Sample points `a,b,c,d;...` or `grid:r`.
    #[arg(long, global = true)]
    samples: Option<String>,

    /// Half-dimension for the model families.
    #[arg(long, global = true)]
    n: Option<u32>,

    /// Polynomial factor multiplying the fold/Lefschetz models.
    #[arg(long, global = true)]
    factor: Option<String>,

    /// Include cohomology representatives.
    #[arg(long, global = true)]
    reps: bool,

    /// Betti numbers `b0,b1,b2,b3,b4` for `assemble`.
    #[arg(long, global = true, value_parser = parse_betti)]
    betti: Option<[u64; 5]>,

    #[arg(long, global = true, default_value_t = 0)]
    circles: u64,

    #[arg(long, global = true, default_value_t = 0)]
    points: u64,

    #[arg(long, global = true, value_enum, default_value_t = KindArg::NearPositive)]
    kind: KindArg,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Check the Jacobi identity.
    Validate,
    /// Casimir functions by degree.
    Casimirs,
    /// Graded cohomology table.
    Cohomology,
    /// Modular vector field.
    Modular,
    /// Rank and intrinsic gradient at sample points.
    Rank,
    /// Global cohomology from local pieces.
    Assemble,
    /// Everything at once.
    Report,
    /// List catalog models.
    Models,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    NearPositive,
    Blf,
}

fn parse_k_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once(','))
        .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad bound `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad bound `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_betti(s: &str) -> Result<[u64; 5], String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad Betti number `{x}`")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected five Betti numbers".to_string())
}

fn model_spec(cli: &Cli, name: &str) -> Result<ModelSpec, String> {
    let name: ModelName = name.parse().map_err(|e: poisson_core::Error| e.to_string())?;
    let mut spec = ModelSpec::new(name);
    if let Some(n) = cli.n {
        spec = spec.with_n(n);
    }
    if let Some(text) = &cli.factor {
        let base = model(&spec).map_err(|e| e.to_string())?;
        let k = parse_polynomial(text, base.names()).map_err(|e| e.to_string())?;
        spec = spec.with_factor(k);
    }
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let operation = match cli.command {
        Command::Validate => Operation::Validate,
        Command::Casimirs => Operation::Casimirs,
        Command::Cohomology => Operation::Cohomology,
        Command::Modular => Operation::Modular,
        Command::Rank => Operation::Rank,
        Command::Assemble => Operation::Assemble,
        Command::Report => Operation::Report,
        Command::Models => Operation::Models,
    };
    let source = match (&cli.model, &cli.input) {
        (Some(name), _) => match model_spec(&cli, name) {
            Ok(spec) => Source::Model(spec),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        (None, Some(path)) => Source::Input(path.clone()),
        (None, None) => Source::None,
    };
    let mut config = ReportConfig::new(operation, source);
    config.max_degree = cli.max_degree;
    config.k_range = cli.k_range;
    config.format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    config.output = cli.output.clone();
    config.samples = cli.samples.clone();
    config.representatives = cli.reps;
    config.assemble = AssembleParams {
        kind: match cli.kind {
            KindArg::NearPositive => AssembleKind::NearPositive,
            KindArg::Blf => AssembleKind::Blf,
        },
        betti: cli.betti,
        circles: cli.circles,
        points: cli.points,
    };

    let outcome = run(&config);
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    if config.output.is_none() {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.exit_code as u8)
}
