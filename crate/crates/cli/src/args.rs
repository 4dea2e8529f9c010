//! Command-line arguments and their conversion into a run configuration.

use std::path::PathBuf;

use cartanchan_core::{BasisChoice, InvolutionKind};
use clap::{Args, ValueEnum};

/// Brute-force dimension cap for the structure-constant suites, overridable
/// through the CARTANCHAN_MAX_DIM environment variable.
pub const DEFAULT_MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    So,
    Sp,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Auto,
    Gellmann,
    Pauli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Comma-separated dimensions (defaults depend on the subcommand).
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,

    /// Covariance kind(s) to run.
    #[arg(long, value_enum, default_value = "both")]
    pub kind: KindArg,

    /// Operator basis; auto picks Pauli strings for power-of-two dimensions.
    #[arg(long, value_enum, default_value = "auto")]
    pub basis: BasisArg,

    /// Relative residual tolerance for identity checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for the deterministic channel sampler.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,

    /// Output format for region data (reports are always JSON).
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// A-sector transfer eigenvalue.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,

    /// B-sector transfer eigenvalue.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
}

/// Resolved configuration shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dims: Vec<usize>,
    pub kinds: Vec<InvolutionKind>,
    pub basis: BasisChoice,
    /// Identity-check tolerance (relative residuals, spectrum deviations).
    pub tol: f64,
    /// Constraint tolerance for CP boundary classification.
    pub ctol: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub format: FormatArg,
    pub max_dim: usize,
}

impl RunConfig {
    pub fn from_common(args: &CommonArgs, default_dims: &[usize]) -> Result<Self, String> {
        let dims = if args.dims.is_empty() {
            default_dims.to_vec()
        } else {
            args.dims.clone()
        };
        if dims.is_empty() {
            return Err("no dimensions given".into());
        }
        if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
            return Err(format!("dimension must be at least 2, got {bad}"));
        }
        let kinds = match args.kind {
            KindArg::So => vec![InvolutionKind::So],
            KindArg::Sp => vec![InvolutionKind::Sp],
            KindArg::Both => vec![InvolutionKind::So, InvolutionKind::Sp],
        };
        if kinds.contains(&InvolutionKind::Sp) && args.kind == KindArg::Sp {
            if let Some(&bad) = dims.iter().find(|&&d| d % 2 != 0) {
                return Err(format!("sp requires even dimensions, got {bad}"));
            }
        }
        let basis = match args.basis {
            BasisArg::Auto => BasisChoice::Auto,
            BasisArg::Gellmann => BasisChoice::GellMann,
            BasisArg::Pauli => BasisChoice::Pauli,
        };
        if !(args.tol.is_finite() && args.tol > 0.0) {
            return Err(format!("tolerance must be positive, got {}", args.tol));
        }
        let max_dim = match std::env::var("CARTANCHAN_MAX_DIM") {
            Ok(v) => v
                .parse::<usize>()
                .map_err(|_| format!("CARTANCHAN_MAX_DIM must be an integer, got {v:?}"))?,
            Err(_) => DEFAULT_MAX_DIM,
        };
        Ok(Self {
            dims,
            kinds,
            basis,
            tol: args.tol,
            ctol: 1e-12,
            seed: args.seed,
            out: args.out.clone(),
            format: args.format,
            max_dim,
        })
    }

    /// The (dimension, kind) work items this run covers. With kind=both,
    /// odd dimensions silently run the so side only; an explicitly
    /// requested sp with odd dimensions is rejected at parse time.
    pub fn work_items(&self) -> Vec<(usize, InvolutionKind)> {
        let mut items = Vec::new();
        for &kind in &self.kinds {
            for &d in &self.dims {
                if kind == InvolutionKind::Sp && d % 2 != 0 {
                    continue;
                }
                items.push((d, kind));
            }
        }
        items
    }
}

pub fn kind_name(kind: InvolutionKind) -> &'static str {
    match kind {
        InvolutionKind::So => "so",
        InvolutionKind::Sp => "sp",
    }
}
