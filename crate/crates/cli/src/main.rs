use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aflayer::evaluation::{
    format_summary, load_instance_dir, run_benchmark, write_csv, BenchConfig,
};
use aflayer::exact::{build_ilp, emit_lp, parse_solution};
use aflayer::render::SolveMode;
use aflayer::{
    assign_layers, compute_labeling, count_crossings, parse_extension, partition_edges, to_svg,
    Extension, Format, Palette, RedStrategy,
};
use aflayer_cli::request::{parse_framework, resolve_extension, solve_framework, Semantics};
use aflayer_cli::service::{ServiceConfig, DEFAULT_EXACT_LIMIT};
use aflayer_cli::{load_palette, verify, SolveError, SolveRequest};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "aflayer",
    version,
    about = "Three-layer drawings of argumentation frameworks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file (ICCMA'23 `.af`, `.apx` or `.tgf`).
    input: PathBuf,
    /// Overrides the format guessed from the file extension.
    #[arg(long)]
    format: Option<Format>,
    /// Extension as comma-separated argument ids.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["extension_file", "semantics"])]
    extension: Option<Vec<String>>,
    /// File holding the extension.
    #[arg(long, conflicts_with = "semantics")]
    extension_file: Option<PathBuf>,
    /// Derive the extension from a semantics (default: grounded).
    #[arg(long, value_enum)]
    semantics: Option<SemanticsArg>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SemanticsArg {
    Grounded,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a drawing and print it as a JSON document.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "heuristic")]
        mode: SolveMode,
        /// Require non-crossing red edges (default).
        #[arg(long, overrides_with = "no_rec")]
        rec: bool,
        #[arg(long)]
        no_rec: bool,
        #[arg(long, default_value_t = 60_000)]
        timeout_ms: u64,
        /// Red edge selection: A (few sources) or B (dispersed sources).
        #[arg(long, default_value = "A")]
        strategy: RedStrategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
        /// Palette override (TOML).
        #[arg(long)]
        palette: Option<PathBuf>,
        /// Leave out the timing object.
        #[arg(long)]
        no_timing: bool,
    },
    /// Report the semantic properties of an extension.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Write the 0-1 model in LP format, or evaluate a solution of it.
    Ilp {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        rec: bool,
        /// Solver output (`name value` lines) to decode and recount.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run heuristic and exact solver over a directory of instances.
    Bench {
        dir: PathBuf,
        /// Benchmark configuration (TOML).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Per-instance CSV output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "AFLAYER_INSTANCES")]
        instances: Option<PathBuf>,
        /// Largest `|A| + |R|` accepted in exact mode.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[arg(long)]
        palette: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn palette(path: Option<&Path>) -> Result<Palette> {
    match path {
        Some(p) => load_palette(&read(p)?).with_context(|| format!("palette {}", p.display())),
        None => Ok(Palette::default()),
    }
}

struct Loaded {
    name: String,
    text: String,
    format: Format,
    af: aflayer::ArgumentationFramework,
    extension: Extension,
}

fn load(args: &InstanceArgs) -> Result<Loaded> {
    let format = match args.format {
        Some(f) => f,
        None => match args.input.extension().and_then(|e| e.to_str()) {
            Some(ext) => ext
                .parse()
                .map_err(|e: aflayer::ParseError| SolveError::Parse(e.to_string()))?,
            None => bail!(SolveError::Parse(
                "cannot guess the format; pass --format".into()
            )),
        },
    };
    let text = read(&args.input)?;
    let af = parse_framework(&text, format)?;
    let extension = if let Some(path) = &args.extension_file {
        parse_extension(&af, &read(path)?).map_err(|e| SolveError::Parse(e.to_string()))?
    } else {
        let semantics = match (&args.extension, args.semantics) {
            (None, _) => Some(Semantics::Grounded),
            (Some(_), _) => None,
        };
        resolve_extension(&af, args.extension.as_deref(), semantics)?
    };
    let name = args
        .input
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Loaded {
        name,
        text,
        format,
        af,
        extension,
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            instance,
            mode,
            rec: _,
            no_rec,
            timeout_ms,
            strategy,
            seed,
            out_json,
            out_svg,
            palette: palette_path,
            no_timing,
        } => {
            let loaded = load(&instance)?;
            let mut request = SolveRequest::new(loaded.text, loaded.format);
            request.name = Some(loaded.name);
            request.mode = mode;
            request.rec = !no_rec;
            request.timeout_ms = timeout_ms;
            request.red_strategy = strategy;
            request.seed = seed;
            if request.timeout_ms == 0 {
                bail!(SolveError::InvalidRequest(
                    "--timeout-ms must be positive".into()
                ));
            }
            let pal = palette(palette_path.as_deref())?;
            let mut doc = solve_framework(&loaded.af, &loaded.extension, &request, &pal)?;
            if no_timing {
                doc.timing = None;
            }
            if let Some(path) = out_svg {
                write(&path, &to_svg(&doc))?;
            }
            match out_json {
                Some(path) => write(&path, &doc.to_json())?,
                None => print!("{}", doc.to_json()),
            }
        }
        Command::Verify { instance, json } => {
            let loaded = load(&instance)?;
            let report = verify(&loaded.af, &loaded.extension);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
        }
        Command::Ilp {
            instance,
            rec,
            solution,
            out,
        } => {
            let loaded = load(&instance)?;
            let labeling = compute_labeling(&loaded.af, &loaded.extension);
            let partition = partition_edges(&loaded.af, &labeling);
            if !partition.in_in_edges.is_empty() {
                bail!(SolveError::NotConflictFree(loaded.name));
            }
            let model = build_ilp(&partition, &assign_layers(&labeling), rec);
            let text = match solution {
                None => emit_lp(&model),
                Some(path) => {
                    let values = parse_solution(&read(&path)?)?;
                    let drawing = model.decode(&values)?;
                    let report = count_crossings(&drawing, &partition);
                    serde_json::to_string_pretty(&report)? + "\n"
                }
            };
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Bench { dir, config, out } => {
            let config: BenchConfig = match config {
                Some(p) => {
                    toml::from_str(&read(&p)?).with_context(|| format!("config {}", p.display()))?
                }
                None => BenchConfig::default(),
            };
            let instances = load_instance_dir(&dir)?;
            eprintln!("running {} instances", instances.len());
            let report = run_benchmark(&instances, &config);
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&report.records, file)?;
                }
                None => write_csv(&report.records, std::io::stdout())?,
            }
            eprint!("{}", format_summary(&report.summary));
        }
        Command::Serve {
            host,
            port,
            instances,
            exact_limit,
            palette: palette_path,
        } => {
            let config = ServiceConfig {
                instances,
                exact_limit,
                palette: palette(palette_path.as_deref())?,
            };
            let addr = SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new()?;
            eprintln!("listening on http://{addr}");
            rt.block_on(aflayer_cli::service::serve(addr, config))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e
                .downcast_ref::<SolveError>()
                .map_or(1, SolveError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
