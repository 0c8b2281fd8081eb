use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symbias::arith::parse_rational;
use symbias::{Rational, Sense};

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn sense(s: &str) -> Result<Sense, String> {
    s.parse().map_err(|e: symbias::Error| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "symbias", version, about = "Exact tools for symmetric distributions on the Boolean cube")]
pub struct Cli {
    /// Largest dimension accepted by any command.
    #[arg(long, global = true, default_value_t = 256)]
    pub max_n: usize,
    /// Largest dimension for vertex enumeration.
    #[arg(long, global = true, default_value_t = 12)]
    pub vertex_budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Krawtchouk values and bound sweeps.
    #[command(subcommand)]
    Kraw(Kraw),
    /// Build and transform symmetric distributions.
    #[command(subcommand)]
    Dist(Dist),
    /// Build and analyse symmetric tests.
    #[command(subcommand)]
    Test(TestCmd),
    /// Moment-polytope linear programs.
    #[command(subcommand)]
    Lp(Lp),
    /// Elementary symmetric polynomials and real-rootedness.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Run a claim harness, or `all` of them.
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
pub enum Kraw {
    /// Print K̄(ℓ,t), or the standard form at Hamming weight `--w`.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "w")]
        t: Option<i64>,
        #[arg(long)]
        w: Option<usize>,
    },
    /// Emit a CSV row per (bound, ℓ, t) on the grid of `n`.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "upper,lower,entropy")]
        bounds: Vec<Bound>,
        #[arg(long, default_value_t = 1e-6)]
        slack: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Upper,
    Lower,
    Entropy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistKind {
    Binomial,
    WeightClass,
    SingleLevel,
    DLambda,
    ModWeight,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistRepr {
    WeightPmf,
    LevelProfile,
}

#[derive(Args, Debug)]
pub struct ReprArg {
    /// Representation of the emitted document.
    #[arg(long, value_enum, default_value = "weight-pmf")]
    pub repr: DistRepr,
}

#[derive(Subcommand, Debug)]
pub enum Dist {
    Build {
        #[arg(value_enum)]
        kind: DistKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = rational)]
        lambda: Option<Rational>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        out: ReprArg,
    },
    Noise {
        input: PathBuf,
        #[arg(long, value_parser = rational)]
        rho: Rational,
        #[command(flatten)]
        out: ReprArg,
    },
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: ReprArg,
    },
    /// Weight law of Σ z_i x_i for a fixed `z` with Σz = s.
    Shift {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
    },
    Tv {
        a: PathBuf,
        b: PathBuf,
    },
    /// Pr[Σx ≥ θ].
    Tail {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestKind {
    Threshold,
    TruncatedKraw,
    WeightClass,
    FromJson,
}

#[derive(Subcommand, Debug)]
pub enum TestCmd {
    Build {
        #[arg(value_enum)]
        kind: TestKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<i64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = rational)]
        mu: Option<Rational>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        /// Input document for `from-json`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Level coefficients f̂([ℓ]).
    Coeffs {
        input: PathBuf,
    },
    Smooth {
        input: PathBuf,
        #[arg(long, value_parser = rational)]
        rho: Rational,
    },
    Expectation {
        test: PathBuf,
        dist: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Lp {
    /// Extremal expectation of a test over k-wise uniform weight laws.
    Optimize {
        test: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = sense, default_value = "max")]
        sense: Sense,
    },
    MinTv {
        dist: PathBuf,
        #[arg(long)]
        k: usize,
    },
    Vertices {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    ElemSym {
        #[arg(long, value_parser = rational, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        y: Vec<Rational>,
        #[arg(long)]
        ell: usize,
    },
    MaclaurinCheck {
        #[arg(long, value_parser = rational, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        y: Vec<Rational>,
        #[arg(long)]
        ell: usize,
    },
    /// Sturm sequence and real-root counts; coefficients in ascending order.
    Sturm {
        #[arg(long, value_parser = rational, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<Rational>,
    },
    /// Certify a tuple (1, s_1, ..., s_m) and drop its last entry.
    Truncate {
        #[arg(long, value_parser = rational, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        s: Vec<Rational>,
    },
    /// Maclaurin-type bound on seeded random tuples.
    Sweep {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct Verify {
    /// Claim id, or `all`.
    pub claim: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_parser = rational)]
    pub rho: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub lambda: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub mu: Option<Rational>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub slack: Option<f64>,
    #[arg(long)]
    pub t_sweep: bool,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

impl Verify {
    pub fn format(&self) -> symbias::Format {
        if self.json {
            symbias::Format::Json
        } else if self.csv {
            symbias::Format::Csv
        } else {
            symbias::Format::Text
        }
    }
}
