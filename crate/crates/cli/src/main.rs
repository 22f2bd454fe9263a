//! `tworank`: command-line access to every library operation, with JSON
//! reports on standard output and deterministic seeds.
//!
//! Exit codes: 0 success, 2 validation error, 3 guard exceeded, 64 usage
//! error (including unknown subcommands), 65 malformed JSON input, 66
//! unreadable input file, 73 unwritable report file.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tworank::phigroup::SearchMode;

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "tworank",
    version,
    about = "Exact computations with 2-groups, forms and sphere actions"
)]
struct Cli {
    /// Seed for every randomized step; echoed in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress the one-line summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating form families and quadratic systems.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// The form-presented groups G_Φ.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Randomized search for families of small rank.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Monomial representations and sphere actions.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Graded polynomial algebra over F₂.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Numeric rank and dimension bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Exhaustive audits of rank inequalities.
    #[command(subcommand)]
    Audit(AuditCmd),
}

#[derive(Subcommand, Debug)]
enum FormsCmd {
    /// Draw a random family of alternating forms.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Find a nonzero common zero of a quadratic system by exhaustive scan.
    Czero(CzeroArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct CzeroArgs {
    /// Quadratic system file; otherwise a random homogeneous system is drawn.
    #[arg(long, conflicts_with_all = ["q", "v"])]
    system: Option<PathBuf>,
    /// Number of random quadratics.
    #[arg(long, requires = "v")]
    q: Option<usize>,
    /// Number of variables of the random system.
    #[arg(long, requires = "q")]
    v: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Bnb,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Bnb => SearchMode::BranchAndBound,
        }
    }
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: PathBuf,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Order, center and involution structure.
    Info(FamilyArgs),
    /// Rank: t plus the largest q-zero totally isotropic dimension.
    Rank {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Mode::Bnb)]
        mode: Mode,
    },
    /// Ranks of the kernel and quotient of the maximal isotropic extension.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Mode::Bnb)]
        mode: Mode,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Search random families with no q-zero isotropic subspace of dimension k.
    Olshanskii {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

/// A group given by a Cayley table or by a form family.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GroupSource {
    #[arg(long)]
    table: Option<PathBuf>,
    /// Element ids are `a | b << n` in the packed normal form.
    #[arg(long)]
    family: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RepArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Induced representation `gens:chars`, e.g. `2:-1` or `1,2:1,-1`;
    /// repeat for a product of spheres.
    #[arg(long = "rep", required = true)]
    reps: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Is the product action free?
    Free(RepArgs),
    /// Largest elementary abelian subgroup fixing a point.
    Isotropy(RepArgs),
    /// Is every involution central?
    Twocentral {
        #[command(flatten)]
        source: GroupSource,
    },
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Hilbert function of the quotient in degrees 0..=degree.
    Hilbert {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Regular-sequence test and total quotient dimension.
    Regseq {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Euler classes restricted to an elementary abelian subgroup.
    Euler {
        #[command(flatten)]
        rep: RepArgs,
        /// Comma-separated generator ids of the elementary abelian subgroup.
        #[arg(long)]
        subgroup: String,
    },
    /// Is the span of p-th powers of linear forms stable under an action?
    Powertest {
        #[arg(long)]
        action: PathBuf,
        /// Comma-separated coefficient strings of the linear forms.
        #[arg(long)]
        ys: String,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Free 2-rank of symmetry by m mod 4.
    RpRank {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Rank and sphere-dimension bounds for an instance (n, t, k).
    Headline {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum AuditCmd {
    /// Elementary abelian subgroups of S_n against the permutation module.
    Sn {
        #[arg(long)]
        n: usize,
    },
    /// Elementary abelian subgroups of GL(n, 2) against ⌊n²/4⌋.
    Gl {
        #[arg(long)]
        n: usize,
    },
}

const EXIT_USAGE: u8 = 64;
const EXIT_CANT_CREATE: u8 = 73;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report::new(cli.seed);
    let outcome = commands::run(&cli.command, &mut report);
    let code = report.finish(outcome);
    let text = report.render();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("tworank: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CANT_CREATE);
            }
        }
        None => print!("{text}"),
    }
    if !cli.quiet {
        eprintln!("{}", report.summary());
    }
    ExitCode::from(code)
}
