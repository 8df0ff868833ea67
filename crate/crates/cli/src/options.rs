//! Command-line flags and the TOML config file that mirrors them.
//!
//! Every flag has a config key of the same (kebab-case) name; a flag given on
//! the command line wins over the config value.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clausen_core::AlphaMode;
use serde::Deserialize;

use crate::range::{NameList, RangeSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "clausen",
    version,
    about = "Audit closed-form Clausen 3F2 sums and the coefficient criteria built on them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compare each closed-form weighted sum with a brute-force oracle.
    VerifyLemma(Options),
    /// Evaluate criteria at a single parameter point.
    Check(Options),
    /// Evaluate criteria over a parameter grid.
    Scan(Options),
    /// Sample the disc to falsify class membership of truncated series.
    DiscTest(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by all subcommands; each subcommand reads the ones it needs.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// Real part of a: value or min:max:steps.
    #[arg(long, allow_hyphen_values = true)]
    pub a_re: Option<RangeSpec>,
    /// Imaginary part of a: value or min:max:steps [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub a_im: Option<RangeSpec>,
    #[arg(long)]
    pub b: Option<RangeSpec>,
    #[arg(long)]
    pub c: Option<RangeSpec>,
    /// λ in (0, 1] [default: 1].
    #[arg(long)]
    pub lambda: Option<RangeSpec>,
    /// β in [0, 1) [default: 0].
    #[arg(long)]
    pub beta: Option<RangeSpec>,
    /// Comma-separated criterion ids (ST1..SP3) or `all`.
    #[arg(long)]
    pub theorem: Option<NameList>,
    /// Oracle term cap (verify-lemma) or truncation order (disc-test).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Relative tolerance (verify-lemma) or margin slack (disc-test).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Evaluate closed forms of divergent sums and report partial sums.
    #[arg(long)]
    pub force_partial: bool,
    /// Weights to verify: W0, W1, W2, W3, WInv or `all`.
    #[arg(long)]
    pub part: Option<NameList>,
    /// Formula variants: derived, printed.
    #[arg(long)]
    pub variant: Option<NameList>,
    /// How a enters the lemma: raw (a itself, real) or modulus (|a|).
    #[arg(long)]
    pub mode: Option<AlphaMode>,
    /// Classes for disc-test when no theorem is given: starlike, convex, ucv, sp.
    #[arg(long)]
    pub class: Option<NameList>,
    /// Largest sampled radius [default: 0.99].
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Number of sampled radii [default: 100].
    #[arg(long)]
    pub radii: Option<usize>,
    /// Number of sampled angles [default: 720].
    #[arg(long)]
    pub angles: Option<usize>,
    /// TOML file with defaults for any of the flags above.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Options {
    /// Fill every unset field from `file`.
    pub fn merged_over(self, file: Options) -> Options {
        Options {
            a_re: self.a_re.or(file.a_re),
            a_im: self.a_im.or(file.a_im),
            b: self.b.or(file.b),
            c: self.c.or(file.c),
            lambda: self.lambda.or(file.lambda),
            beta: self.beta.or(file.beta),
            theorem: self.theorem.or(file.theorem),
            n_max: self.n_max.or(file.n_max),
            tol: self.tol.or(file.tol),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            force_partial: self.force_partial || file.force_partial,
            part: self.part.or(file.part),
            variant: self.variant.or(file.variant),
            mode: self.mode.or(file.mode),
            class: self.class.or(file.class),
            r_max: self.r_max.or(file.r_max),
            radii: self.radii.or(file.radii),
            angles: self.angles.or(file.angles),
            config: self.config,
        }
    }

    pub fn from_toml(text: &str, path: &str) -> Result<Options, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config { path: path.into(), msg: e.to_string() })
    }

    pub fn load_config(&self) -> Result<Option<Options>, CliError> {
        let Some(path) = &self.config else { return Ok(None) };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text, &path.display().to_string()).map(Some)
    }

    pub fn required(&self, value: Option<RangeSpec>, flag: &str) -> Result<RangeSpec, CliError> {
        value.ok_or_else(|| CliError::InvalidInput(format!("--{flag} is required")))
    }
}

impl Cli {
    /// The command and its options with the config file applied.
    pub fn resolve(self) -> Result<(Command, Options), CliError> {
        let opts = match &self.command {
            Command::VerifyLemma(o) | Command::Check(o) | Command::Scan(o) | Command::DiscTest(o) => {
                o.clone()
            }
        };
        let opts = match opts.load_config()? {
            Some(file) => opts.merged_over(file),
            None => opts,
        };
        Ok((self.command, opts))
    }
}
