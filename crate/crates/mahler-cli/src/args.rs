use clap::{Args, Parser, Subcommand, ValueEnum};

/// Mahler measures of Laurent polynomials, Boyd heights of torus
/// homomorphisms, and Boyd-Lawton convergence experiments.
#[derive(Parser, Debug)]
#[command(name = "mahler", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a classic, max, or prod Mahler measure.
    Measure(MeasureArgs),
    /// Compute the exact Boyd height of an integer matrix.
    Height(HeightArgs),
    /// Apply a power substitution P^(A) and print the result.
    Substitute(SubstituteArgs),
    /// Run a Boyd-Lawton convergence experiment over a b-schedule.
    Converge(ConvergeArgs),
    /// Run the verification suite (identities and exact properties).
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Classic,
    Max,
    Prod,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Jensen,
    Circle,
    Qmc,
    #[value(name = "boyd-lawton")]
    BoydLawton,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Vector,
    Matrix,
}

#[derive(Args, Debug)]
pub struct CommonOut {
    /// Write output to this path (atomically) instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
    /// Optional key=value file mapped onto flags; explicit flags win.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    /// Measure kind; max/prod take their arity from the --poly count.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Polynomial text, or @path to read it from a file. Repeatable.
    #[arg(long = "poly")]
    pub polys: Vec<String>,
    /// Expected variable count (default: largest index mentioned).
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Evaluation method (default: jensen for 1-variable classic, circle
    /// for 1-variable max/prod, qmc otherwise).
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// QMC lattice points per shift.
    #[arg(long, default_value_t = 1 << 16)]
    pub samples: u64,
    /// QMC random shifts.
    #[arg(long, default_value_t = 8)]
    pub shifts: u32,
    /// Seed for the QMC generator and shifts.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Lower clamp on |P| inside the QMC integrand.
    #[arg(long, default_value_t = 1e-300)]
    pub clip: f64,
    /// Family parameter for --method boyd-lawton.
    #[arg(long)]
    pub b: Option<u64>,
    /// Method tolerance: root residual for jensen, panel tolerance for
    /// circle (defaults 1e-12 and 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output format (json only for this command).
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: CommonOut,
}

#[derive(Args, Debug)]
pub struct HeightArgs {
    /// Matrix text: rows separated by ';', entries by ',' (e.g. "1,1;4,4").
    #[arg(long)]
    pub matrix: String,
    #[command(flatten)]
    pub out: CommonOut,
}

#[derive(Args, Debug)]
pub struct SubstituteArgs {
    /// Polynomial text or @path.
    #[arg(long)]
    pub poly: String,
    /// Matrix text; its row count fixes the polynomial's variable count.
    #[arg(long)]
    pub matrix: String,
    #[command(flatten)]
    pub out: CommonOut,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long = "poly")]
    pub polys: Vec<String>,
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Homomorphism family for the limit.
    #[arg(long, value_enum, default_value_t = FamilyArg::Vector)]
    pub family: FamilyArg,
    /// Source variable count for --family matrix (>= 2).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "b-start")]
    pub b_start: u64,
    #[arg(long = "b-end")]
    pub b_end: u64,
    #[arg(long = "b-step", default_value_t = 1)]
    pub b_step: u64,
    /// Reference value: a real, or "auto" to estimate by QMC at 4x the
    /// configured samples.
    #[arg(long)]
    pub reference: Option<String>,
    #[arg(long, default_value_t = 1 << 16)]
    pub samples: u64,
    #[arg(long, default_value_t = 8)]
    pub shifts: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-300)]
    pub clip: f64,
    /// Inner tolerance (root residual / panel tolerance).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: CommonOut,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only the quick 1-D identities and exact property suites.
    #[arg(long, conflicts_with = "full")]
    pub fast: bool,
    /// Also run the T^3/T^4 QMC identities.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    #[command(flatten)]
    pub out: CommonOut,
}
