use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lzscan::format::{self, Format};
use lzscan::{MsMode, ParseOptions, ParseReport, DEFAULT_BLOCK_SIZE, DEFAULT_SKIP_THRESHOLD};

/// LZ77 factorization in small working space.
#[derive(Parser)]
#[command(name = "lzscan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize a file and write the phrases.
    Parse {
        #[command(flatten)]
        io: InputArgs,
        /// Where to write the phrases; stdout if omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        opts: ParseArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Factorize a file and only print statistics.
    Stats {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        opts: ParseArgs,
    },
    /// Decode a phrase file and compare it with the original.
    Verify {
        #[command(flatten)]
        io: InputArgs,
        /// Phrase file in text or binary format.
        #[arg(long)]
        parse: PathBuf,
    },
    /// Time parses over several block sizes, modes and skip settings.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Onepos,
    Standard,
}

impl From<ModeArg> for MsMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Onepos => MsMode::OnePosition,
            ModeArg::Standard => MsMode::Standard,
        }
    }
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Onepos => "onepos",
            ModeArg::Standard => "standard",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Binary,
}

#[derive(Args)]
struct ParseArgs {
    /// Block size in bytes [default: 1048576].
    #[arg(long, short = 'b', conflicts_with = "blocks", value_parser = clap::value_parser!(u64).range(1..))]
    block_size: Option<u64>,
    /// Number of blocks d; the block size becomes ceil(n/d).
    #[arg(long, short = 'd', value_parser = clap::value_parser!(u64).range(1..))]
    blocks: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Onepos)]
    ms_mode: ModeArg,
    #[command(flatten)]
    skip: SkipArgs,
}

#[derive(Args)]
struct SkipArgs {
    /// Skip over matches inside long earlier phrases (default).
    #[arg(long, overrides_with = "no_skip")]
    skip: bool,
    #[arg(long, overrides_with = "skip")]
    no_skip: bool,
    /// Shortest phrase length that is skipped over.
    #[arg(long, default_value_t = DEFAULT_SKIP_THRESHOLD as u64, value_parser = clap::value_parser!(u64).range(1..))]
    skip_threshold: u64,
}

impl SkipArgs {
    /// `None` when neither flag was given.
    fn choice(&self) -> Option<bool> {
        match (self.skip, self.no_skip) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Comma-separated block sizes in bytes.
    #[arg(long, short = 'b', value_delimiter = ',', conflicts_with = "blocks")]
    block_size: Vec<u64>,
    /// Comma-separated block counts.
    #[arg(long, short = 'd', value_delimiter = ',')]
    blocks: Vec<u64>,
    /// Comma-separated scan modes.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ModeArg::Onepos, ModeArg::Standard])]
    ms_mode: Vec<ModeArg>,
    /// Both skip settings are run unless one is chosen.
    #[command(flatten)]
    skip: SkipArgs,
}

fn usize_arg(v: u64, name: &str) -> anyhow::Result<usize> {
    usize::try_from(v).with_context(|| format!("--{name} {v} does not fit this platform"))
}

fn block_size(n: usize, block_size: Option<u64>, blocks: Option<u64>) -> anyhow::Result<usize> {
    Ok(match (block_size, blocks) {
        (Some(b), _) => usize_arg(b, "block-size")?,
        (None, Some(d)) => ParseOptions::block_size_for(n, usize_arg(d, "blocks")?),
        (None, None) => DEFAULT_BLOCK_SIZE,
    })
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    let data = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    if data.is_empty() {
        bail!("{} is empty", path.display());
    }
    Ok(data)
}

fn run_parse(x: &[u8], opts: &ParseOptions) -> anyhow::Result<(ParseReport, Duration)> {
    let t = Instant::now();
    let report = lzscan::lz_parse_report(x, opts)?;
    Ok((report, t.elapsed()))
}

fn stats_line(r: &ParseReport, wall: Duration) -> String {
    let (n, z) = (r.factorization.n(), r.factorization.len());
    format!(
        "n={n} z={z} n_over_z={:.3} wall_time={:.6} working_space_bytes={}",
        n as f64 / z as f64,
        wall.as_secs_f64(),
        r.working_space_bytes()
    )
}

fn parse_options(n: usize, args: &ParseArgs) -> anyhow::Result<ParseOptions> {
    Ok(ParseOptions {
        block_size: block_size(n, args.block_size, args.blocks)?,
        ms_mode: args.ms_mode.into(),
        skip: args.skip.choice().unwrap_or(true),
        skip_threshold: usize_arg(args.skip.skip_threshold, "skip-threshold")?,
    })
}

fn cmd_parse(input: &Path, output: Option<&Path>, args: &ParseArgs, format: FormatArg) -> anyhow::Result<()> {
    let x = read_input(input)?;
    let (report, wall) = run_parse(&x, &parse_options(x.len(), args)?)?;
    let format = match format {
        FormatArg::Text => Format::Text,
        FormatArg::Binary => Format::Binary,
    };
    match output {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            format::write(&report.factorization, format, &mut BufWriter::new(file))?;
            println!("{}", stats_line(&report, wall));
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            format::write(&report.factorization, format, &mut out)?;
            // Keep stdout clean for the phrases.
            eprintln!("{}", stats_line(&report, wall));
        }
    }
    Ok(())
}

fn cmd_stats(input: &Path, args: &ParseArgs) -> anyhow::Result<()> {
    let x = read_input(input)?;
    let (report, wall) = run_parse(&x, &parse_options(x.len(), args)?)?;
    println!("{}", stats_line(&report, wall));
    Ok(())
}

enum Verdict {
    Match,
    Mismatch(String),
    Malformed(String),
}

fn cmd_verify(input: &Path, parse: &Path) -> anyhow::Result<Verdict> {
    let x = fs::read(input).with_context(|| format!("cannot read {}", input.display()))?;
    let data = fs::read(parse).with_context(|| format!("cannot read {}", parse.display()))?;
    let decoded = match format::read(&data).and_then(|f| lzscan::decode(&f)) {
        Ok(d) => d,
        Err(e) => return Ok(Verdict::Malformed(e.to_string())),
    };
    if decoded == x {
        return Ok(Verdict::Match);
    }
    let offset = x.iter().zip(&decoded).position(|(a, b)| a != b).unwrap_or(x.len().min(decoded.len()));
    Ok(Verdict::Mismatch(format!(
        "first difference at byte offset {offset} (input {} bytes, decoded {} bytes)",
        x.len(),
        decoded.len()
    )))
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<()> {
    let x = read_input(&args.io.input)?;
    let sizes: Vec<usize> = if !args.block_size.is_empty() {
        args.block_size.iter().map(|&b| usize_arg(b, "block-size")).collect::<anyhow::Result<_>>()?
    } else if !args.blocks.is_empty() {
        args.blocks
            .iter()
            .map(|&d| usize_arg(d, "blocks").map(|d| ParseOptions::block_size_for(x.len(), d)))
            .collect::<anyhow::Result<_>>()?
    } else {
        vec![DEFAULT_BLOCK_SIZE]
    };
    let skips: Vec<bool> = args.skip.choice().map_or(vec![true, false], |s| vec![s]);
    let threshold = usize_arg(args.skip.skip_threshold, "skip-threshold")?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{:>10} {:>8} {:>4} {:>12} {:>10} {:>9} {:>10} {:>14}", "b", "mode", "skip", "n", "z", "n/z", "time_s", "space_bytes")?;
    for &b in &sizes {
        for &mode in &args.ms_mode {
            for &skip in &skips {
                let opts = ParseOptions { block_size: b, ms_mode: mode.into(), skip, skip_threshold: threshold };
                let (r, wall) = run_parse(&x, &opts)?;
                let (n, z) = (r.factorization.n(), r.factorization.len());
                writeln!(
                    out,
                    "{b:>10} {:>8} {:>4} {n:>12} {z:>10} {:>9.3} {:>10.4} {:>14}",
                    mode.name(),
                    if skip { "on" } else { "off" },
                    n as f64 / z as f64,
                    wall.as_secs_f64(),
                    r.working_space_bytes()
                )?;
                out.flush()?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Parse { io, output, opts, format } => cmd_parse(&io.input, output.as_deref(), opts, *format).map(|_| Verdict::Match),
        Command::Stats { io, opts } => cmd_stats(&io.input, opts).map(|_| Verdict::Match),
        Command::Verify { io, parse } => cmd_verify(&io.input, parse),
        Command::Bench(args) => cmd_bench(args).map(|_| Verdict::Match),
    };
    match result {
        Ok(Verdict::Match) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Ok(Verdict::Malformed(msg)) => {
            eprintln!("error: malformed parse: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
