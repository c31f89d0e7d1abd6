use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bcoh", version, about = "Exact b-magma cohomology and b-structure equation checks")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON config with defaults for threads, seed and check mode.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for random-vector verification.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magma tables: axiom checks, enumeration, automorphisms.
    #[command(subcommand)]
    Magma(MagmaCmd),
    /// The b-cochain complex and its cohomology.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Categorical b-magmas and pointed b-bicategories.
    #[command(subcommand)]
    Pointed(PointedCmd),
    /// Operator equations on tensor powers.
    #[command(subcommand)]
    Eq(EqCmd),
    /// Braid group representations from a hexagon solution.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Exhaustive solution searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Conversions between operator forms.
    #[command(subcommand)]
    Convert(ConvertCmd),
}

#[derive(Debug, Subcommand)]
pub enum MagmaCmd {
    /// Check the b-axiom and report commutativity, associativity, units and idempotents
    Check {
        #[arg(long)]
        magma: PathBuf,
    },
    /// All b-magmas of a given size (at most 4)
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One canonical table per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Report only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Automorphism group of a table
    Auts {
        #[arg(long)]
        magma: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub magma: PathBuf,
    /// Coefficient moduli, comma separated; 0 is an infinite cyclic factor.
    #[arg(long, value_delimiter = ',', required = true)]
    pub coeff: Vec<u64>,
    #[arg(long)]
    pub degree: usize,
}

#[derive(Debug, Subcommand)]
pub enum CohomologyCmd {
    /// Invariant factors of H^n(A; B)
    Compute(GroupArgs),
    /// Apply the differential to a cochain
    D {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Whether d(c) = 0
    IsCocycle {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Whether c = d(q), with a witness q
    IsCoboundary {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Orbits of Aut(A) on H^n(A; B)
    Orbits(GroupArgs),
}

#[derive(Debug, Subcommand)]
pub enum PointedCmd {
    /// Gauge transform of a 3-cochain r by a 2-cochain q
    Gauge {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Whether a map with a 2-cochain q is a b-functor from r to r2
    FunctorCheck {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        r2: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Find q making a map a b-functor from r to r2
    FunctorSolve {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        r2: PathBuf,
    },
    /// Whether p is a natural transformation from q to q2
    TransformCheck {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        q2: PathBuf,
    },
    /// Comparison cochain of an abelian 3-cocycle pair
    CompareAbelian {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        c: PathBuf,
    },
    /// Whether a 4-cochain satisfies the pointed bicategory axiom
    S4Check {
        #[arg(long)]
        s: PathBuf,
    },
    /// Whether two 4-cochains give equivalent bicategories
    BicatEquiv {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        s2: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Auto,
    Exhaustive,
    Random,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Basis-vector (exhaustive) or random-vector verification.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Number of random vectors in random mode.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum EqCmd {
    /// Pentagon equation for an operator on two legs
    Pentagon {
        #[arg(long)]
        op: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Braid (Yang-Baxter) equation B12 B23 B12 = B23 B12 B23
    Hexagon {
        #[arg(long)]
        op: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Pre-unital equations for a pair (b, c)
    Preunital {
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Tetrahedron equation for an operator on three legs
    Tetrahedron {
        #[arg(long)]
        op: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// The S-form relation equivalent to the tetrahedron equation
    SRelation {
        #[arg(long)]
        op: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Mixed equation between an L operator and a tetrahedron solution Z
    Lze {
        #[arg(long)]
        l: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// The M-form relation equivalent to the mixed L/Z equation
    MRelation {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Whether f intertwines d and d2
    Cl2morphism {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        d: PathBuf,
        #[arg(long)]
        d2: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Whether g ⊗ g commutes with the braiding b
    IdFunctor {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum BraidCmd {
    /// Matrix of a braid word on n strands
    Eval {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        strands: usize,
        /// Generators as signed indices, e.g. `1,-2,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gens: Vec<i64>,
        /// Dimension of an extra trailing leg.
        #[arg(long, default_value_t = 1)]
        tail: usize,
    },
    /// Check the braid relations on n strands
    Coxeter {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        strands: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Set-theoretic braid solutions on n points
    YbeSet {
        #[arg(long)]
        n: usize,
        /// One solution per line followed by a summary line.
        #[arg(long)]
        jsonl: bool,
    },
    /// Invertible braid solutions on F_2^2 ⊗ F_2^2
    YbeMatrix {
        #[arg(long)]
        jsonl: bool,
    },
    /// Scalar unit/braiding pairs over a prime field
    Preunital {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        jsonl: bool,
    },
    /// Permutation-type L/Z pairs for leg dimensions (c, b)
    Lze {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        jsonl: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConvertCmd {
    /// S form to Z form
    SToZ {
        #[arg(long)]
        op: PathBuf,
    },
    /// Z form to S form
    ZToS {
        #[arg(long)]
        op: PathBuf,
    },
    /// M form to L form
    MToL {
        #[arg(long)]
        op: PathBuf,
    },
    /// L form to M form
    LToM {
        #[arg(long)]
        op: PathBuf,
    },
    /// Compose two L operators
    ComposeL {
        #[arg(long)]
        l: PathBuf,
        #[arg(long)]
        l2: PathBuf,
    },
}
