//! `gqw`: command-line front end for the generalized quadrangle workbench.
//!
//! Exit status is 0 when the check passes or something is found, 1 when it
//! fails or nothing is found, and 2 on usage, parse or input errors.

mod geometry;
mod order;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gqw_core::feasibility::ParameterValue;
use gqw_core::substructures::{SearchKind, SearchMode};
use gqw_core::Rational;

use output::{Emit, Report, UsageError};

#[derive(Parser)]
#[command(
    name = "gqw",
    version,
    about = "Finite generalized quadrangle and order-automorphism workbench"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a classical quadrangle and print its incidence document.
    Build {
        #[command(subcommand)]
        what: BuildTarget,
    },
    /// Validate the generalized quadrangle axioms.
    Check { file: PathBuf },
    /// Perp and span of a set of points.
    Perp {
        file: PathBuf,
        /// Comma-separated point indices.
        #[arg(long)]
        points: String,
    },
    /// Search for ovoids or spreads.
    Search {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "first")]
        mode: ModeArg,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Automorphism group, stabilizers, tuple maps and indiscernibility.
    Auto(AutoCmd),
    /// Parameter feasibility of generalized polygons or projective planes.
    Feasibility(FeasibilityCmd),
    /// Finitely presented subsets of Q and their automorphisms.
    Order {
        #[command(subcommand)]
        what: OrderCmd,
    },
}

#[derive(Subcommand)]
enum BuildTarget {
    /// Symplectic quadrangle W(q), q in {2, 3, 4}.
    W {
        #[arg(long)]
        q: u32,
    },
    /// The m x n grid.
    Grid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ovoid,
    Spread,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

#[derive(Args)]
struct AutoCmd {
    file: PathBuf,
    /// Largest structure (in points) the group search accepts.
    #[arg(long, default_value_t = 60)]
    max_points: usize,
    /// Elements to stabilize, e.g. p0,p3 or L1,L2.
    #[arg(long)]
    stabilize_set: Option<String>,
    /// Stabilize the set as a whole instead of pointwise.
    #[arg(long, requires = "stabilize_set")]
    setwise: bool,
    /// Two element tuples, e.g. p0,L1 p4,L2.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    map_tuple: Option<Vec<String>>,
    /// Comma-separated line indices of an ordered family.
    #[arg(long, requires = "n")]
    indiscernible: Option<String>,
    /// Tuple length for --indiscernible.
    #[arg(long, requires = "indiscernible")]
    n: Option<usize>,
    /// Accept families whose members intersect.
    #[arg(long)]
    allow_intersecting: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["n", "plane_order"])))]
struct FeasibilityCmd {
    /// Gonality of the polygon.
    #[arg(long, requires_all = ["s", "t"])]
    n: Option<u32>,
    /// Points per line minus one (integer or omega).
    #[arg(long, value_parser = geometry::parse_parameter)]
    s: Option<ParameterValue>,
    /// Lines per point minus one (integer or omega).
    #[arg(long, value_parser = geometry::parse_parameter)]
    t: Option<ParameterValue>,
    /// Order of a projective plane.
    #[arg(long, conflicts_with_all = ["n", "s", "t"])]
    plane_order: Option<u64>,
}

#[derive(Subcommand)]
enum OrderCmd {
    /// ∼ classes of the set and its complement, and ≍ classes.
    Classes {
        #[arg(long)]
        set: String,
    },
    /// The construction case that applies.
    Case {
        #[arg(long)]
        set: String,
    },
    /// Build and verify an automorphism.
    #[command(group(ArgGroup::new("construction").required(true).args(["grow_at", "move_", "boxes"])))]
    Alpha {
        #[arg(long)]
        set: String,
        /// Grow the set by this point.
        #[arg(long, value_parser = order::parse_q, allow_hyphen_values = true)]
        grow_at: Option<Rational>,
        /// Move this interior member of a finite class.
        #[arg(long = "move", id = "move_", value_parser = order::parse_q, allow_hyphen_values = true)]
        move_: Option<Rational>,
        /// Two boxes q,q',a,a' (q may be -inf, a' may be +inf).
        #[arg(long, allow_hyphen_values = true)]
        boxes: Option<String>,
    },
    /// Image of the set under an anchor table read from a file.
    Image {
        #[arg(long)]
        set: String,
        #[arg(long)]
        auto: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(String, bool), UsageError> {
    let mut r = Report::new(cli.emit);
    match cli.command {
        Command::Build { what } => match what {
            BuildTarget::W { q } => geometry::build_w(&mut r, q)?,
            BuildTarget::Grid { m, n } => geometry::build_grid_cmd(&mut r, m, n)?,
        },
        Command::Check { file } => geometry::check(&mut r, &geometry::load(&file)?),
        Command::Perp { file, points } => {
            let g = geometry::load(&file)?;
            geometry::perp(&mut r, &g, &geometry::parse_points(&points)?)?;
        }
        Command::Search {
            file,
            kind,
            mode,
            limit,
        } => {
            let g = geometry::load(&file)?;
            let kind = match kind {
                KindArg::Ovoid => SearchKind::Ovoid,
                KindArg::Spread => SearchKind::Spread,
            };
            let mode = match mode {
                ModeArg::First => SearchMode::First,
                ModeArg::All => SearchMode::All,
                ModeArg::Count => SearchMode::Count,
            };
            geometry::search(&mut r, &g, kind, mode, limit);
        }
        Command::Auto(a) => {
            let g = geometry::load(&a.file)?;
            let map = a.map_tuple.as_ref().map(|v| (v[0].as_str(), v[1].as_str()));
            let args = geometry::AutoArgs {
                max_points: a.max_points,
                stabilize: a.stabilize_set.as_deref(),
                setwise: a.setwise,
                map,
                indiscernible: a.indiscernible.as_deref().zip(a.n),
                allow_intersecting: a.allow_intersecting,
            };
            geometry::auto(&mut r, &g, args)?;
        }
        Command::Feasibility(f) => match (f.plane_order, f.n, f.s, f.t) {
            (Some(m), ..) => geometry::plane(&mut r, m),
            (None, Some(n), Some(s), Some(t)) => geometry::feasibility(&mut r, n, s, t),
            _ => {
                return Err(UsageError(
                    "feasibility needs --n, --s and --t, or --plane-order".into(),
                ))
            }
        },
        Command::Order { what } => match what {
            OrderCmd::Classes { set } => order::classes(&mut r, &order::parse_set(&set)?),
            OrderCmd::Case { set } => order::case(&mut r, &order::parse_set(&set)?),
            OrderCmd::Alpha {
                set,
                grow_at,
                move_,
                boxes,
            } => {
                let sv = order::parse_set(&set)?;
                let req = match (grow_at, move_, boxes) {
                    (Some(w), ..) => order::AlphaRequest::GrowAt(w),
                    (_, Some(x), _) => order::AlphaRequest::Move(x),
                    (.., Some(b)) => order::AlphaRequest::Boxes(b),
                    _ => unreachable!("clap requires one construction"),
                };
                order::alpha(&mut r, &sv, req)?;
            }
            OrderCmd::Image { set, auto } => order::image(&mut r, &order::parse_set(&set)?, &auto)?,
        },
    }
    Ok(r.into_output())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(UsageError(msg)) => {
            eprintln!("gqw: {msg}");
            ExitCode::from(2)
        }
    }
}
