mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use chainscope_core::chains::{analyze, build_chain, kernel_probe, ChainReport};
use chainscope_core::dynamics::{
    coe_check, germ_hausdorff_probe, lqa_probe, non_hausdorff_probe, topological_freeness_probe, CoeOptions,
    LqaOptions,
};
use chainscope_core::{builtin, AutomatonSystem, Error, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cache::FileStore;

#[derive(Parser, Debug)]
#[command(name = "chainscope", version, about = "Group-chain invariants of self-similar tree actions")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command. Each flag is mirrored by a
/// `CHAINSCOPE_*` environment variable.
#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Truncation depth (tree level) of the computation.
    #[arg(long, global = true, env = "CHAINSCOPE_DEPTH", default_value_t = 6)]
    depth: usize,
    /// Extra levels examined beyond the depth when approximating the
    /// discriminant.
    #[arg(long, global = true, env = "CHAINSCOPE_LOOKAHEAD", default_value_t = 2)]
    lookahead: usize,
    /// Maximum reduced word length for box searches.
    #[arg(long, global = true, env = "CHAINSCOPE_WORDLEN", default_value_t = 6)]
    wordlen: usize,
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, env = "CHAINSCOPE_ENUM_CAP", default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    enum_cap: u64,
    /// Largest number of level vertices a permutation may act on.
    #[arg(long, global = true, env = "CHAINSCOPE_POINT_CAP", default_value_t = 1 << 14, value_parser = positive)]
    point_cap: usize,
    /// Largest number of words explored when deciding triviality.
    #[arg(long, global = true, env = "CHAINSCOPE_IDENTITY_CAP", default_value_t = 1_000_000, value_parser = positive)]
    identity_cap: usize,
    #[arg(long, global = true, env = "CHAINSCOPE_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory of the BSGS cache.
    #[arg(long, global = true, env = "CHAINSCOPE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a word to a boundary point.
    Eval {
        /// Builtin name or path to a system file.
        system: String,
        word: String,
        point: String,
    },
    /// Chain report at a basepoint: quotient orders, discriminant,
    /// stabilizer and centralizer chains, classification evidence.
    Chain {
        system: String,
        basepoint: String,
        /// Length of the seed words used for growth certificates.
        #[arg(long, default_value_t = 2)]
        seed_len: usize,
    },
    /// Dynamical probes.
    #[command(subcommand)]
    Probe(Probe),
    /// Inspect or clear the BSGS cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Subcommand, Debug)]
enum Probe {
    /// Continuous orbit equivalence via cocycles on a cylinder partition.
    Coe {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        /// Level of the partition.
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Length of source words in the non-injectivity report.
        #[arg(long, default_value_t = 2)]
        collision_len: usize,
    },
    /// Non-Hausdorff witness for an element fixing a boundary point.
    Nonhausdorff {
        system: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        x: String,
        /// Levels searched below each cylinder for an identity sub-cylinder.
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// Local quasi-analyticity violations.
    Lqa {
        system: String,
        /// Inner cylinder level bound; defaults to the depth.
        #[arg(long)]
        inner: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        max_results: usize,
    },
    /// Cylinders fixed pointwise by nontrivial words.
    Freeness { system: String },
    /// Germ of an element at a fixed boundary point.
    Germ {
        system: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        x: String,
    },
    /// Words fixing a basepoint, trivial words, and rational points.
    Kernel {
        system: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    Stats,
    Clear,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                Error::Cap { .. } | Error::Undecided { .. } => 3,
                Error::Precondition(_) | Error::NotMinimal { .. } => 4,
                _ => 2,
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl RunConfig {
    fn limits(&self) -> Limits {
        Limits {
            point_cap: self.point_cap,
            enum_cap: self.enum_cap,
            identity_cap: self.identity_cap,
            ..Limits::default()
        }
    }

    fn store(&self) -> FileStore {
        FileStore::new(self.cache_dir.clone().unwrap_or_else(FileStore::default_dir))
    }

    /// Resolves a builtin name, falling back to reading a system file.
    fn system(&self, spec: &str) -> CliResult<AutomatonSystem> {
        let sys = match builtin(spec) {
            Some(s) => s?,
            None => {
                let text = std::fs::read_to_string(spec).map_err(|source| CliError::Io {
                    path: spec.to_string(),
                    source,
                })?;
                AutomatonSystem::parse(&text)?
            }
        };
        Ok(sys.with_limits(self.limits()))
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("output serializes")),
        Format::Text => print!("{}", text(value)),
    }
}

#[derive(Serialize)]
struct EvalOutput {
    system_hash: String,
    word: String,
    point: String,
    image: String,
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = cli.config;
    match cli.command {
        Command::Eval { system, word, point } => {
            let sys = cfg.system(&system)?;
            let w = sys.parse_word(&word)?;
            let x = sys.parse_point(&point)?;
            let y = sys.act_on_boundary(&w, &x)?;
            let out = EvalOutput {
                system_hash: sys.hash().to_string(),
                word: sys.format_word(&w),
                point: x.to_string(),
                image: y.to_string(),
            };
            emit(cfg.format, &out, |o| format!("{}\n", o.image));
        }
        Command::Chain { system, basepoint, seed_len } => {
            let sys = Arc::new(cfg.system(&system)?);
            let x = sys.parse_point(&basepoint)?;
            let horizon = cfg.depth + cfg.lookahead;
            let chain = build_chain(sys, x, horizon)?.with_store(Arc::new(cfg.store()));
            let analysis = analyze(&chain, cfg.depth, horizon, seed_len)?;
            let report = ChainReport::new(&chain, &analysis)?;
            emit(cfg.format, &report, render::chain);
        }
        Command::Probe(p) => probe(&cfg, p)?,
        Command::Cache(c) => {
            let store = cfg.store();
            let io = |source| CliError::Io {
                path: store_dir(&cfg),
                source,
            };
            let stats = match c {
                CacheCmd::Stats => store.stats().map_err(io)?,
                CacheCmd::Clear => {
                    store.clear().map_err(io)?;
                    store.stats().map_err(io)?
                }
            };
            emit(cfg.format, &stats, |s| format!("{}: {} entries, {} bytes\n", s.dir, s.entries, s.bytes));
        }
    }
    Ok(())
}

fn store_dir(cfg: &RunConfig) -> String {
    cfg.cache_dir.clone().unwrap_or_else(FileStore::default_dir).display().to_string()
}

fn probe(cfg: &RunConfig, p: Probe) -> CliResult<()> {
    match p {
        Probe::Coe { g, h, level, collision_len } => {
            let (g, h) = (cfg.system(&g)?, cfg.system(&h)?);
            let opts = CoeOptions {
                level,
                word_len: cfg.wordlen,
                depth: cfg.depth,
                collision_len,
            };
            emit(cfg.format, &coe_check(&g, &h, opts)?, render::coe);
        }
        Probe::Nonhausdorff { system, g, x, budget } => {
            let sys = cfg.system(&system)?;
            let (g, x) = (sys.parse_word(&g)?, sys.parse_point(&x)?);
            let w = non_hausdorff_probe(&sys, &g, &x, cfg.depth, budget)?;
            emit(cfg.format, &w, render::nonhausdorff);
        }
        Probe::Lqa { system, inner, max_results } => {
            let sys = cfg.system(&system)?;
            let opts = LqaOptions {
                word_len: cfg.wordlen,
                max_outer: cfg.depth,
                max_inner: inner.unwrap_or(cfg.depth),
                max_results,
            };
            emit(cfg.format, &lqa_probe(&sys, opts)?, render::lqa);
        }
        Probe::Freeness { system } => {
            let sys = cfg.system(&system)?;
            let r = topological_freeness_probe(&sys, cfg.wordlen, cfg.depth)?;
            emit(cfg.format, &r, render::freeness);
        }
        Probe::Germ { system, g, x } => {
            let sys = cfg.system(&system)?;
            let (g, x) = (sys.parse_word(&g)?, sys.parse_point(&x)?);
            emit(cfg.format, &germ_hausdorff_probe(&sys, &g, &x, cfg.depth)?, render::germ);
        }
        Probe::Kernel { system, x } => {
            let sys = Arc::new(cfg.system(&system)?);
            let x = sys.parse_point(&x)?;
            let chain = build_chain(sys, x, cfg.depth)?;
            emit(cfg.format, &kernel_probe(&chain, cfg.wordlen)?, render::kernel);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
