use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kneser_chroma::coloring::Construction;
use kneser_chroma::{
    build_ground_set, is_prime, Field, FieldElement, GraphSpec, GroundSet, PrimeMode, Property,
};

#[derive(Parser, Debug)]
#[command(
    name = "kneser-chroma",
    version,
    about = "Algebraic colorings of Kneser graph squares"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Color every vertex of K²(2k + r, k) and export the table.
    Color {
        #[command(flatten)]
        ground: GroundArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustively verify a coloring; exit 1 on a confirmed violation.
    Verify {
        #[command(flatten)]
        ground: GroundArgs,
        #[arg(long, value_enum, default_value_t = PropertyArg::Square)]
        property: PropertyArg,
        /// Johnson power; the coloring is truncated to m entries.
        #[arg(long)]
        m: Option<usize>,
        /// Verify this exported CSV table instead of recomputing the colors.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        workers: WorkerArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every closed-form bound for (k, r), as JSON.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact chromatic number of a small graph.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = GraphArg::Square)]
        graph: GraphArg,
        /// Johnson power, for `--graph johnson`.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Smallest prime in the interval starting at n.
    Prime {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = PrimeModeArg::Bertrand98)]
        mode: PrimeModeArg,
    },
    /// Clique of size C(k + 2r, r) in K²(2k + r, k).
    Clique {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the desk-scale instance matrix.
    Report {
        #[arg(long, required = true)]
        all_desk_instances: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        workers: WorkerArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
pub struct GroundArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum)]
    pub construction: ConstructionArg,
    /// Subfield degree for the field-minus-subfield constructions.
    #[arg(long)]
    pub t_prime: Option<u32>,
    /// Field order for `--construction explicit` (a prime or a power of two).
    #[arg(long)]
    pub field: Option<u64>,
    /// Comma-separated field elements for `--construction explicit`.
    #[arg(long, value_delimiter = ',')]
    pub elements: Vec<u64>,
}

impl GroundArgs {
    pub fn n(&self) -> usize {
        2 * self.k + self.r
    }

    fn construction(&self) -> anyhow::Result<Construction> {
        let needs_t_prime = matches!(
            self.construction,
            ConstructionArg::FieldMinusSubfield | ConstructionArg::FieldMinusSubfieldPlusZero
        );
        match (needs_t_prime, self.t_prime) {
            (true, None) => bail!("--construction {:?} needs --t-prime", self.construction),
            (false, Some(_)) => bail!("--t-prime only applies to the subfield constructions"),
            _ => {}
        }
        let explicit = self.construction == ConstructionArg::Explicit;
        if !explicit && (self.field.is_some() || !self.elements.is_empty()) {
            bail!("--field and --elements only apply to --construction explicit");
        }
        let t_prime = self.t_prime.unwrap_or(0);
        Ok(match self.construction {
            ConstructionArg::FullField => Construction::FullField,
            ConstructionArg::FieldMinusZero => Construction::FieldMinusZero,
            ConstructionArg::FieldMinusSubfield => Construction::FieldMinusSubfield { t_prime },
            ConstructionArg::FieldMinusSubfieldPlusZero => {
                Construction::FieldMinusSubfieldPlusZero { t_prime }
            }
            ConstructionArg::PrimePrefix => Construction::PrimePrefix,
            ConstructionArg::Explicit => Construction::Explicit,
        })
    }

    pub fn ground_set(&self) -> anyhow::Result<GroundSet> {
        let construction = self.construction()?;
        if construction != Construction::Explicit {
            return Ok(build_ground_set(self.k, self.r, construction)?);
        }
        let order = self
            .field
            .context("--construction explicit needs --field")?;
        let field = field_of_order(order)?;
        if self.elements.len() != self.n() {
            bail!(
                "--elements lists {} values but 2k + r = {}",
                self.elements.len(),
                self.n()
            );
        }
        if self.k < 2 || self.r == 0 || self.r >= self.k {
            bail!(
                "need k >= 2 and 1 <= r <= k - 1, got k = {}, r = {}",
                self.k,
                self.r
            );
        }
        let elements = self
            .elements
            .iter()
            .map(|&v| field.element(v))
            .collect::<Result<Vec<FieldElement>, _>>()?;
        Ok(GroundSet::explicit(field, elements)?)
    }
}

fn field_of_order(order: u64) -> anyhow::Result<Field> {
    if order >= 2 && order.is_power_of_two() {
        return Ok(Field::binary(order.trailing_zeros())?);
    }
    if is_prime(order) {
        let p = u32::try_from(order).context("field order too large")?;
        return Ok(Field::prime(p)?);
    }
    bail!("--field {order} is neither a prime nor a power of two")
}

#[derive(Args, Debug)]
pub struct WorkerArgs {
    /// Worker threads for the pair scan; never changes the output.
    #[arg(long, env = "KNESER_CHROMA_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
}

impl WorkerArgs {
    pub fn count(&self) -> usize {
        match self.workers {
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    FullField,
    FieldMinusZero,
    FieldMinusSubfield,
    FieldMinusSubfieldPlusZero,
    PrimePrefix,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Square,
    Injective,
    Johnson,
}

impl PropertyArg {
    /// Graph, property and number of coloring entries to check.
    pub fn resolve(
        self,
        n: usize,
        k: usize,
        r: usize,
        m: Option<usize>,
    ) -> anyhow::Result<(GraphSpec, Property, usize)> {
        match (self, m) {
            (PropertyArg::Johnson, None) => bail!("--property johnson needs --m"),
            (PropertyArg::Johnson, Some(m)) => {
                if m == 0 || m > r {
                    bail!("--m must lie in 1..=r, got {m}");
                }
                Ok((
                    GraphSpec::johnson_power(n, k, m)?,
                    Property::JohnsonMProper,
                    m,
                ))
            }
            (_, Some(_)) => bail!("--m only applies to --property johnson"),
            (PropertyArg::Square, None) => {
                Ok((GraphSpec::kneser_square(n, k)?, Property::SquareProper, r))
            }
            (PropertyArg::Injective, None) => {
                Ok((GraphSpec::kneser(n, k)?, Property::Injective, r))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Kneser,
    Square,
    Johnson,
}

impl GraphArg {
    pub fn spec(self, n: usize, k: usize, m: Option<usize>) -> anyhow::Result<GraphSpec> {
        Ok(match (self, m) {
            (GraphArg::Johnson, Some(m)) => GraphSpec::johnson_power(n, k, m)?,
            (GraphArg::Johnson, None) => bail!("--graph johnson needs --m"),
            (_, Some(_)) => bail!("--m only applies to --graph johnson"),
            (GraphArg::Kneser, None) => GraphSpec::kneser(n, k)?,
            (GraphArg::Square, None) => GraphSpec::kneser_square(n, k)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrimeModeArg {
    Bertrand98,
    Ln2,
}

impl From<PrimeModeArg> for PrimeMode {
    fn from(mode: PrimeModeArg) -> Self {
        match mode {
            PrimeModeArg::Bertrand98 => PrimeMode::Bertrand98,
            PrimeModeArg::Ln2 => PrimeMode::Ln2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
