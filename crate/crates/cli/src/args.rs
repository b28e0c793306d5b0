//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cmkit",
    version,
    about = "Local homology, (co)sheaves and duality on finite simplicial complexes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "L-first")]
    LFirst,
    #[value(name = "Lvc-first")]
    LvcFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Z,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    TwoComplex,
    LocallyCm,
    Poset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplicial homology with integer coefficients.
    Homology {
        complex: PathBuf,
        /// Reduced homology instead.
        #[arg(long)]
        reduced: bool,
        /// Report only this degree.
        #[arg(long)]
        degree: Option<isize>,
    },
    /// Local homology and cohomology at every simplex.
    Local {
        complex: PathBuf,
        #[arg(long)]
        degree: Option<isize>,
    },
    /// Local Cohen-Macaulay verdict.
    CmCheck { complex: PathBuf },
    /// Cohomology with sheaf coefficients.
    SheafCohomology {
        complex: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Label the result as compactly supported.
        #[arg(long)]
        compact: bool,
    },
    /// Homology with cosheaf coefficients.
    CosheafHomology {
        complex: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Label the result as locally finite.
        #[arg(long)]
        locally_finite: bool,
    },
    /// The four duality isomorphisms and the chain-level cap.
    Duality { complex: PathBuf },
    /// Duality relative to the full subcomplex on the given vertices.
    RelativeDuality {
        complex: PathBuf,
        /// Comma-separated vertex labels of L (may be empty).
        #[arg(long = "L", default_value = "")]
        l: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::LvcFirst)]
        convention: ConventionArg,
    },
    /// Global sections, and a Mittag-Leffler check along a filtration.
    #[command(visible_alias = "ml-check")]
    Sections {
        complex: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Filtration file; defaults to full subcomplexes on vertex prefixes.
        #[arg(long)]
        filtration: Option<PathBuf>,
    },
    /// Fundamental class, cap chain-map signs, and optionally the cap of one cochain.
    FundamentalCap {
        complex: PathBuf,
        /// Degree of the cochain to cap.
        #[arg(long)]
        degree: Option<usize>,
        /// Comma-separated cochain values on the simplices of that degree.
        #[arg(long, allow_hyphen_values = true)]
        cochain: Option<String>,
    },
    /// Poset constructions.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Group actions and the dualizing module.
    #[command(subcommand)]
    Equivariant(EquivariantCommand),
    /// Visible irreducibility of a 2-complex.
    ViCheck { complex: PathBuf },
    /// Writes the shipped fixtures as JSON files.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
    /// Emits a random complex or poset (uses --seed).
    Sample {
        #[arg(long, value_enum, default_value_t = SampleKind::TwoComplex)]
        kind: SampleKind,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
    /// Schema check of an input file, without computation.
    Validate { input: PathBuf },
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Coefficient system file; defaults to the constant system.
    #[arg(long, conflicts_with = "local")]
    pub system: Option<PathBuf>,
    /// Use local (co)homology in this degree as coefficients.
    #[arg(long)]
    pub local: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum PosetCommand {
    /// Order complex of the poset.
    OrderComplex { poset: PathBuf },
    /// Chain poset (barycentric subdivision).
    Subdivide { poset: PathBuf },
    /// Open interval, or the elements strictly below or above one element.
    Interval {
        poset: PathBuf,
        #[arg(long, conflicts_with_all = ["above", "open"])]
        below: Option<String>,
        #[arg(long, conflicts_with = "open")]
        above: Option<String>,
        /// Two comma-separated elements p,q.
        #[arg(long)]
        open: Option<String>,
    },
    /// Link of a chain as a join of intervals.
    LinkJoin {
        poset: PathBuf,
        /// Comma-separated chain elements.
        #[arg(long)]
        chain: String,
    },
    /// Checks a monotone retraction given as `a=b,...` (unlisted elements are fixed).
    Retraction {
        poset: PathBuf,
        #[arg(long, default_value = "")]
        map: String,
    },
    /// Fiber acyclicity for a poset map `a=x,...` from the first poset to the second.
    FiberReport {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Thickened spine over an upward-closed subset.
    Thicken {
        poset: PathBuf,
        /// Comma-separated elements of the upward-closed subset.
        #[arg(long)]
        spine: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum EquivariantCommand {
    /// Group order, orbits and stabilizers of an action on a complex or poset.
    Orbits { input: PathBuf, action: PathBuf },
    /// Two presentations of the dualizing module and their comparison.
    Resolution {
        complex: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Quotient of the rose subgroup, compared to the dualizing module.
    RoseQuotient {
        complex: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
        /// Comma-separated vertex labels.
        #[arg(long)]
        vertices: String,
    },
    /// Coinvariants of `C^k / im δ` under the action.
    Coinvariants {
        complex: PathBuf,
        action: PathBuf,
        /// Defaults to the top degree.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
    },
    /// Bound on the rank of the coinvariants of the dualizing module.
    Bound {
        complex: PathBuf,
        action: PathBuf,
        /// Comma-separated orbit representatives; chosen automatically if omitted.
        #[arg(long)]
        representatives: Option<String>,
    },
}
