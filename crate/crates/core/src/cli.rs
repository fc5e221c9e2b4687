//! Command-line interface.
//!
//! Exit status: 0 when the command's check passes, 1 when it ran but the
//! check failed (count mismatch, OEIS mismatch, row not found), 2 on
//! usage or runtime errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::arith::Rational;
use crate::lattice::{family_from_name, make_lattice, FamilyTag, LatticeError};
use crate::oeis::{self, HttpTransport, Known, OeisError, SeqId, Transport};
use crate::plot::{self, PlotError};
use crate::report::{Format, LatticeReport, LowestReport, ReportDocument};
use crate::shell::unit_vectors;
use crate::tables::{self, TableId};

pub const DEFAULT_LIMIT: u64 = 20_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lattice-units", version, about = "Unit vectors of the rank-4 planar lattices L(k), M(k), M(k)/2")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Sieve limit for lowest-parameter searches
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    pub limit: u64,
    /// Directory for cached OEIS b-files
    #[arg(long, global = true, env = "LATTICE_UNITS_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Never use the network
    #[arg(
        long,
        global = true,
        env = "LATTICE_UNITS_OFFLINE",
        value_parser = clap::builder::BoolishValueParser::new(),
        action = clap::ArgAction::SetTrue
    )]
    pub offline: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate and classify the unit vectors of one lattice
    Units(LatticeArgs),
    /// Lowest parameter for each unit-vector count
    Table {
        /// 1 = L(k), 2 = M(k), 3 = M(k)/2 keyed by 2k
        #[arg(long, value_parser = parse_table)]
        id: Option<TableId>,
        #[arg(value_parser = parse_table, conflicts_with = "id")]
        table: Option<TableId>,
        /// Largest unit-vector count to tabulate
        #[arg(long, default_value_t = 60)]
        max_units: u64,
    },
    /// Lowest admissible parameter with a given number of unit vectors
    Lowest {
        #[arg(long)]
        family: String,
        #[arg(long)]
        units: u64,
    },
    /// Cross-check an OEIS sequence against locally computed values
    OeisCheck {
        #[arg(long)]
        seq: String,
        /// Largest index to check (default: end of the b-file)
        #[arg(long)]
        max: Option<u64>,
        /// Read the b-file from this path instead of the cache
        #[arg(long, conflicts_with = "vendored")]
        bfile: Option<PathBuf>,
        /// Use the excerpt compiled into the binary
        #[arg(long)]
        vendored: bool,
    },
    /// Symmetry generators, Gram invariance and group order
    Symmetry(LatticeArgs),
    /// Write an SVG of the lattice points near the origin
    Plot {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Plot radius (integer, decimal or p/q)
        #[arg(long, default_value = "1.5")]
        radius: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A lattice, given either as `FAMILY PARAM` or with flags.
#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// L, M or MHALF
    #[arg(value_name = "FAMILY", conflicts_with = "family")]
    pub family_pos: Option<String>,
    /// k for L and M, 2k for MHALF
    #[arg(value_name = "PARAM", conflicts_with_all = ["k", "two_k"])]
    pub param_pos: Option<u64>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, conflicts_with = "two_k")]
    pub k: Option<u64>,
    /// The odd integer 2k of M(k)/2
    #[arg(long)]
    pub two_k: Option<u64>,
}

impl LatticeArgs {
    pub fn resolve(&self) -> Result<FamilyTag, CliError> {
        let name = self
            .family
            .as_deref()
            .or(self.family_pos.as_deref())
            .ok_or_else(|| CliError::Usage("missing lattice family (L, M or MHALF)".into()))?;
        let param = self
            .param_pos
            .or(self.k)
            .or(self.two_k)
            .ok_or_else(|| CliError::Usage("missing family parameter (--k or --two-k)".into()))?;
        Ok(family_from_name(name, param)?)
    }
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Oeis(#[from] OeisError),
    #[error(transparent)]
    Plot(#[from] PlotError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Cache directory: flag or `LATTICE_UNITS_CACHE`, else the user cache
/// directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(xdg).join("lattice-units");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("lattice-units");
    }
    PathBuf::from(".lattice-units-cache")
}

/// Output of one command: a report, or a plain message for `plot`.
pub enum Outcome {
    Report(ReportDocument),
    Message(String),
}

pub fn execute(cli: &Cli, transport: &dyn Transport) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Units(args) => {
            let spec = make_lattice(args.resolve()?)?;
            let report = unit_vectors(&spec);
            Ok(Outcome::Report(ReportDocument::Units(LatticeReport::from_units(&report))))
        }
        Command::Symmetry(args) => {
            let spec = make_lattice(args.resolve()?)?;
            let report = unit_vectors(&spec);
            let doc = LatticeReport::from_units(&report).with_symmetry(&spec, &report);
            Ok(Outcome::Report(ReportDocument::Symmetry(doc)))
        }
        Command::Table { id, table, max_units } => {
            let id = id.or(*table).ok_or_else(|| CliError::Usage("missing table id (1, 2 or 3)".into()))?;
            let t = tables::build_table(id, *max_units, cli.limit);
            Ok(Outcome::Report(ReportDocument::Table(t.into())))
        }
        Command::Lowest { family, units } => {
            let tag = family_from_name(family, 1)?;
            let param = tables::lowest_param(tag, *units, cli.limit);
            Ok(Outcome::Report(ReportDocument::Lowest(LowestReport {
                family: tag.name().to_string(),
                units: *units,
                limit: cli.limit,
                param,
            })))
        }
        Command::OeisCheck { seq, max, bfile, vendored } => {
            let id: SeqId = seq.parse()?;
            let known = Known::from_id(&id)?;
            let file = if *vendored {
                known.vendored()
            } else if let Some(path) = bfile {
                oeis::read_bfile(id, path)?
            } else {
                let dir = cli.cache_dir.clone().unwrap_or_else(default_cache_dir);
                oeis::fetch(&id, &dir, cli.offline, transport)?
            };
            let max_n = max.unwrap_or(*file.domain().end());
            Ok(Outcome::Report(ReportDocument::OeisCheck(oeis::check_known(&file, max_n, cli.limit)?)))
        }
        Command::Plot { lattice, radius, out } => {
            let spec = make_lattice(lattice.resolve()?)?;
            let r = Rational::parse(radius).ok_or_else(|| CliError::Usage(format!("invalid radius {radius:?}")))?;
            let p = plot::render_svg(&spec, &r)?;
            write_file(out, &p.svg)?;
            Ok(Outcome::Message(format!(
                "wrote {}: {} points, {} unit vectors\n",
                out.display(),
                p.points,
                p.units
            )))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

/// Parses `args`, runs the command and writes its output; returns the
/// exit status.
pub fn run<I, T>(args: I, transport: &dyn Transport, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, transport) {
        Ok(Outcome::Report(doc)) => {
            let _ = stdout.write_all(doc.render(cli.format).as_bytes());
            if doc.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Ok(Outcome::Message(msg)) => {
            let _ = stdout.write_all(msg.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn main() -> i32 {
    let transport = HttpTransport::default();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &transport, &mut out, &mut err)
}
