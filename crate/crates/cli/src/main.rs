use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qlab::commands::{self, Limits, PushoutArgs, Space, SpectrumKind, TopologyReport};
use qlab::report::render_error;
use qlab::{CliError, Format, Report};
use qlab_core::tensor::DEFAULT_MAX_TENSOR;
use qlab_core::topology::DEFAULT_MAX_OPENS;

/// Finite quantales, their spectra and quantized topologies.
///
/// A QUANTALE argument is a `.qnt` file, `-` for stdin, or a catalog name.
/// Exit status: 0 when every reported property holds, 1 when one fails, 2 on error.
#[derive(Parser)]
#[command(name = "qlab", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 64)]
    max_elements: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TENSOR)]
    max_tensor: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_OPENS)]
    max_opens: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic properties, sided parts and spectra.
    Check { quantale: String },
    /// Primes, strong primes or hermitian primes.
    Spectrum {
        quantale: String,
        #[arg(long, conflicts_with = "hermitian")]
        strong: bool,
        #[arg(long)]
        hermitian: bool,
    },
    /// Every involution on the quantale.
    Involutions { quantale: String },
    /// The tensor product of two quantales.
    Tensor {
        left: String,
        right: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// The quotient by the least nucleus identifying each `a=b` pair.
    Coequalizer {
        quantale: String,
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Whether the quantale is a quantic frame, with the facts that follow when it is.
    QuanticFrame { quantale: String },
    /// The pushout of a left-sided and a right-sided quantale over a common base.
    PushoutSpectrum {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        base: String,
        /// `a->b ...` from base to left; defaults to matching names.
        #[arg(long)]
        left_map: Option<String>,
        #[arg(long)]
        right_map: Option<String>,
        /// The anti-isomorphism from left to right.
        #[arg(long)]
        to_right: Option<String>,
        #[arg(long)]
        to_left: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Quantized topology on a spectrum: σs, σh or σL.
    Topologize {
        quantale: String,
        #[arg(long, default_value = "σh")]
        space: Space,
        #[arg(long, value_enum, value_delimiter = ',')]
        report: Vec<TopologyReport>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Strictly quantized unital quantales over Q2, up to isomorphism.
    EnumerateSq2 {
        /// Directory receiving one `.qnt` file per class.
        #[arg(long)]
        out_dir: Option<String>,
    },
    /// Catalog names, or one entry as `.qnt` text.
    Catalog { name: Option<String> },
}

impl Command {
    fn label(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Spectrum { .. } => "spectrum",
            Command::Involutions { .. } => "involutions",
            Command::Tensor { .. } => "tensor",
            Command::Coequalizer { .. } => "coequalizer",
            Command::QuanticFrame { .. } => "quantic-frame",
            Command::PushoutSpectrum { .. } => "pushout-spectrum",
            Command::Topologize { .. } => "topologize",
            Command::EnumerateSq2 { .. } => "enumerate-sq2",
            Command::Catalog { .. } => "catalog",
        }
    }
}

enum Output {
    Report(Report),
    Raw(String),
}

fn seed() -> u64 {
    std::env::var("QLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn run(cli: &Cli, limits: &Limits) -> Result<Output, CliError> {
    let load = |s: &str| commands::load(s, limits);
    let report = match &cli.command {
        Command::Check { quantale } => commands::check(&load(quantale)?),
        Command::Spectrum { quantale, strong, hermitian } => {
            let kind = match (strong, hermitian) {
                (true, _) => SpectrumKind::Strong,
                (_, true) => SpectrumKind::Hermitian,
                _ => SpectrumKind::All,
            };
            commands::spectrum(&load(quantale)?, kind)?
        }
        Command::Involutions { quantale } => commands::involutions(&load(quantale)?),
        Command::Tensor { left, right, output } => commands::tensor(&load(left)?, &load(right)?, output.as_deref(), limits)?,
        Command::Coequalizer { quantale, pairs, output } => commands::coequalizer(&load(quantale)?, pairs, output.as_deref())?,
        Command::QuanticFrame { quantale } => commands::quantic_frame(&load(quantale)?, limits)?,
        Command::PushoutSpectrum { left, right, base, left_map, right_map, to_right, to_left, output } => {
            let (l, r, b) = (load(left)?, load(right)?, load(base)?);
            let args = PushoutArgs {
                left: &l,
                right: &r,
                base: &b,
                left_map: left_map.as_deref(),
                right_map: right_map.as_deref(),
                to_right: to_right.as_deref(),
                to_left: to_left.as_deref(),
            };
            commands::pushout_spectrum(&args, output.as_deref(), limits)?
        }
        Command::Topologize { quantale, space, report, output } => commands::topologize(&load(quantale)?, *space, report, output.as_deref(), limits)?,
        Command::EnumerateSq2 { out_dir } => commands::enumerate_sq2(out_dir.as_deref())?,
        Command::Catalog { name } => match commands::catalog_entry(name.as_deref())? {
            Ok(text) => return Ok(Output::Raw(text)),
            Err(r) => r,
        },
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits { max_elements: cli.max_elements, max_tensor: cli.max_tensor, max_opens: cli.max_opens, seed: seed() };
    let mut out = std::io::stdout().lock();
    match run(&cli, &limits) {
        Ok(Output::Raw(text)) => {
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            let _ = out.write_all(r.render(cli.format).as_bytes());
            ExitCode::from(r.exit_code())
        }
        Err(e) => {
            let msg = render_error(cli.command.label(), &e, cli.format);
            match cli.format {
                Format::Json => {
                    let _ = out.write_all(msg.as_bytes());
                }
                Format::Text => eprint!("{msg}"),
            }
            ExitCode::from(2)
        }
    }
}
