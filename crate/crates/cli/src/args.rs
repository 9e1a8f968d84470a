use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "descentff", version, about = "Descent, heights and Picard torsion for y^2 = x^3 + f(t) over GF(p^m)")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads (batch runs in parallel; single runs use one).
    #[arg(long, global = true, env = "DESCENTFF_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    /// Extension degree of the base field.
    #[arg(long = "ext-degree", visible_alias = "m", default_value_t = 1)]
    pub m: u32,
    /// Double the extension degree until torsion counts stabilize (cap 12).
    #[arg(long)]
    pub stabilize: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// `f(t)`, e.g. "t^3 + 2*t + 1"; over GF(p^m) coefficients may be digit lists "[1,2]".
    #[arg(long)]
    pub f: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Rational,
    XRational,
    YRational,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapArg {
    Phi2,
    Phi3,
    Phi3p,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveArg {
    C2,
    C3,
    C3p,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Type quintuple, decomposition, genera and Kodaira fibers.
    Classify(CurveArgs),
    /// Points with polynomial coordinates up to a canonical height.
    Enumerate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
        mode: ModeArg,
        /// Canonical height cap, e.g. "1" or "2/3".
        #[arg(long = "hmax", visible_alias = "max-height")]
        max_height: String,
    },
    /// Naive and canonical height of a point; coordinates may be "num / den".
    Height {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Descent image of a point, or the fiber census of the integral points.
    Descent {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value_t = MapArg::Phi2)]
        map: MapArg,
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Random pairs for the homomorphism and kernel checks.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        /// Also check the fiber-size caps on every conforming stratum.
        #[arg(long)]
        caps: bool,
    },
    /// Torsion of `Pic(C, Q.D)` or its `W` subset.
    Picard {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "curve", value_enum)]
        curve_kind: CurveArg,
        #[arg(long)]
        n: u64,
        /// Restrict to the `W` set with this bound, e.g. "3/2".
        #[arg(long)]
        w_bound: Option<String>,
        /// Use `Pic(C)` instead of `Pic(C, Q.D)`.
        #[arg(long)]
        plain: bool,
    },
    /// Point counts against Picard and theta counts for the detected type.
    VerifyCorsh2(CurveArgs),
    /// Integral point counts against the descent bounds.
    VerifyIntbound(CurveArgs),
    /// Minimal-height counts, descent formulas and lattice shells.
    VerifyTable1(CurveArgs),
    /// The bijection between the `W` sets.
    Wbij(CurveArgs),
    /// Shell of a lattice with a cube-root-of-unity action.
    Lattice {
        /// A2*, D4*, E6* or E8.
        #[arg(long)]
        name: String,
        /// Norm, e.g. "2" or "4/3"; defaults to the minimum.
        #[arg(long)]
        norm: Option<String>,
        /// Also report the fibers mod 2L and mod sqrt(-3) L.
        #[arg(long)]
        residues: bool,
        /// List the vectors.
        #[arg(long)]
        vectors: bool,
    },
    /// The exponential identities and the bounded search.
    Pillai {
        #[arg(long = "max-exponent", default_value_t = 20)]
        max_exp: u32,
    },
    /// Runs every entry of a manifest and aggregates the verdicts.
    Batch {
        /// JSON file `{"runs": [["verify-table1", "--p", "7", ...], ...]}`.
        manifest: std::path::PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Enumerate { .. } => "enumerate",
            Command::Height { .. } => "height",
            Command::Descent { .. } => "descent",
            Command::Picard { .. } => "picard",
            Command::VerifyCorsh2(_) => "verify-corsh2",
            Command::VerifyIntbound(_) => "verify-intbound",
            Command::VerifyTable1(_) => "verify-table1",
            Command::Wbij(_) => "wbij",
            Command::Lattice { .. } => "lattice",
            Command::Pillai { .. } => "pillai",
            Command::Batch { .. } => "batch",
        }
    }
}
