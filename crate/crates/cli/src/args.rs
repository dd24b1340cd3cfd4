use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fimod::complexes::ColimitMode;
use fimod::RingSpec;
use serde::{Serialize, Serializer};

pub const DEFAULT_SEED: u64 = 20240101;

#[derive(Debug, Parser, Serialize)]
#[command(name = "fimod", version, about = "Exact computations with finitely presented FI-modules")]
pub struct Cli {
    /// Seed for randomized checks; echoed in every report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output format. `auto` prints CSV for plain tables and JSON otherwise.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Auto,
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Dimension table of V_n.
    Eval(ModuleRange),
    /// H_0(V)_n and the generation degree up to the largest n.
    H0(ModuleRange),
    /// Ranks of S_{+a}V_n against V_{n+a}.
    Shift {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long)]
        a: usize,
        /// Write the shifted presentation to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Kernels of X_a on V_n for a up to a-max.
    Torsion {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long, default_value_t = 3)]
        a_max: usize,
    },
    /// The derivative presentation coker(X_1).
    Derivative {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Saturation chain of a submodule of M(d).
    Saturate {
        /// Submodule document: ring, d and generators (relation syntax).
        #[arg(long)]
        sub: PathBuf,
        #[arg(long, default_value_t = 4)]
        a_max: usize,
        #[arg(long, default_value_t = 2)]
        slack: usize,
    },
    /// Homology of the signed shift complex at each n.
    Homology {
        #[command(flatten)]
        input: ModuleRange,
        /// Positions a of H_a, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        a: Vec<usize>,
        /// Also report dimensions over Q and the primes in FIMOD_PRIMES.
        #[arg(long)]
        fieldwise: bool,
    },
    /// d o d = 0 and dG + Gd + X_1 = 0 on the signed shift complex.
    HomotopyCheck {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long, default_value_t = 3)]
        a_max: usize,
    },
    /// colim_{|S| <= N} V_S and its canonical map to V_n.
    Colimit {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long = "N")]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Checks that V_n is the colimit of its slices of size at most N.
    CheckInductive {
        #[command(flatten)]
        input: ModuleRange,
        #[arg(long = "N")]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Least N with H_0 and H_1 vanishing above N, up to n-max.
    #[command(name = "find-N")]
    #[serde(rename = "find-N")]
    FindN {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        ring: Option<Ring>,
        #[arg(long)]
        n_max: usize,
        /// Run the colimit check at every N < n <= n-max.
        #[arg(long)]
        verify: bool,
    },
    /// Integer-valued polynomial fit of a dimension table.
    Fit {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        #[arg(long, default_value_t = fimod::dims::DEFAULT_MIN_TAIL)]
        min_tail: usize,
    },
    /// Dimensions of the diagonal coinvariant algebra in multidegree J.
    Coinv {
        #[command(flatten)]
        spec: CoinvSpec,
        #[arg(long)]
        n: NRange,
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value_t = fimod::dims::DEFAULT_MIN_TAIL)]
        min_tail: usize,
    },
    /// Dual coinvariant map along an injection.
    CoinvMap {
        #[command(flatten)]
        spec: CoinvSpec,
        /// Images of the injection, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        f: Vec<usize>,
        /// Target size of the injection.
        #[arg(long)]
        target: usize,
    },
    /// H^m of the configuration space of the plane as an FI-module.
    Arnold {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        #[arg(long)]
        n: NRange,
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value_t = fimod::dims::DEFAULT_MIN_TAIL)]
        min_tail: usize,
        /// Write the finite presentation to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Whether two tables agree on their last `window` common rows.
    TailEqual {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Criteria to run, comma separated; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct ModuleRange {
    /// Presentation document.
    #[arg(long)]
    pub module: PathBuf,
    /// Reinterpret coefficients in this ring.
    #[arg(long)]
    pub ring: Option<Ring>,
    /// Degrees, `a..b` inclusive or a single `n`.
    #[arg(long)]
    pub n: NRange,
}

#[derive(Debug, Args, Serialize)]
pub struct CoinvSpec {
    /// Number of variable groups; must equal the length of J.
    #[arg(long)]
    pub r: Option<usize>,
    /// Multidegree, comma separated.
    #[arg(long = "J", value_delimiter = ',', required = true)]
    pub j: Vec<usize>,
    #[arg(long, default_value = "Q")]
    pub ring: Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Full,
    FinalLayers,
}

impl From<Mode> for ColimitMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => ColimitMode::Full,
            Mode::FinalLayers => ColimitMode::FinalLayers,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring(pub RingSpec);

impl FromStr for Ring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(Ring).map_err(|e: fimod::Error| e.to_string())
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad degree {t:?} in range {s:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl Serialize for NRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("0..6".parse::<NRange>().unwrap(), NRange { start: 0, end: 6 });
        assert_eq!("3..=7".parse::<NRange>().unwrap(), NRange { start: 3, end: 7 });
        assert_eq!("4".parse::<NRange>().unwrap(), NRange { start: 4, end: 4 });
        assert!("5..2".parse::<NRange>().is_err());
        assert!("a..2".parse::<NRange>().is_err());
    }

    #[test]
    fn rings() {
        assert_eq!("F3".parse::<Ring>().unwrap().0, RingSpec::Prime(3));
        assert!("F4".parse::<Ring>().is_err());
    }

    #[test]
    fn cli_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
