//! Command-line front end: argument parsing, run modes and output formats.

mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weylhom::basis_graph::dot;
use weylhom::homology::vanishing_audit;
use weylhom::linalg::is_prime;
use weylhom::pipeline::{
    analyze, verify, verify_structure, Analysis, SuiteReport, GROUP_ACTION_SAMPLES,
};
use weylhom::root_system::{build_root_system_with, enumerate_weyl_group_with_cap, DynkinType};
use weylhom::weight_complex::{build_complex, Direction};
use weylhom::Error;

pub use render::{json_report, JsonReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_THEOREM: u8 = 2;

/// Large enough for A6 (|W| = 5040).
pub const CLI_WEYL_CAP: usize = 5040;

#[derive(Debug, Parser)]
#[command(
    name = "weylhom",
    version,
    about = "Weight-graded homology of positive root systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Compute integral and mod-p homology of every weight component.
    Compute(RunArgs),
    /// Run the structural and homological verification suite.
    Verify(RunArgs),
    /// List the weights with nonzero mod-p homology and check p | r(α).
    Audit(RunArgs),
    /// Write DOT graphs and/or matrix dumps for every component.
    Export(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Dynkin type: A, B, C, D, G2 or F4.
    #[arg(long = "type", value_parser = parse_type)]
    pub dynkin_type: DynkinType,
    #[arg(long)]
    pub rank: usize,
    /// Comma-separated primes; defaults to all primes up to the largest component rank.
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write one DOT file per component into this directory.
    #[arg(long, value_name = "DIR")]
    pub emit_dot: Option<PathBuf>,
    /// Write the chain matrices of every component into this directory.
    #[arg(long, value_name = "DIR")]
    pub dump_matrices: Option<PathBuf>,
    /// Allow F4 (2^24 subsets).
    #[arg(long)]
    pub large: bool,
    #[arg(long, default_value_t = CLI_WEYL_CAP)]
    pub weyl_cap: usize,
    /// Random samples for the group-action checks in `verify`.
    #[arg(long, default_value_t = GROUP_ACTION_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

fn parse_type(s: &str) -> Result<DynkinType, String> {
    s.parse()
}

impl Cli {
    fn args(&self) -> &RunArgs {
        match &self.mode {
            Mode::Compute(a) | Mode::Verify(a) | Mode::Audit(a) | Mode::Export(a) => a,
        }
    }
}

enum Failure {
    Usage(String),
    Theorem(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SquareNotZero { .. }
            | Error::TheoremViolation(_)
            | Error::NoDiamond { .. }
            | Error::MultipleDiamonds { .. }
            | Error::IntertwineFailure { .. }
            | Error::NotProportional { .. }
            | Error::NotIntegral(_) => Failure::Theorem(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs one command, writing data to `out` and diagnostics to stderr.
pub fn run(cli: &Cli, out: &mut impl Write) -> u8 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Theorem(msg)) => {
            eprintln!("THEOREM VIOLATION: {msg}");
            EXIT_THEOREM
        }
    }
}

/// A completed analysis, or the structural suite when no complex exists.
enum Prepared {
    Analysis(Box<Analysis>),
    Structure(SuiteReport),
}

fn prepare(args: &RunArgs, structure_fallback: bool) -> Result<Prepared, Failure> {
    if let Some(primes) = &args.primes {
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Failure::Usage(format!("{p} is not prime")));
        }
    }
    let system = build_root_system_with(args.dynkin_type, args.rank, args.large)?;
    let group = enumerate_weyl_group_with_cap(&system, args.weyl_cap)?;
    let mut primes = args.primes.clone();
    if let Some(p) = &mut primes {
        p.sort_unstable();
        p.dedup();
    }
    let fallback = structure_fallback.then(|| system.clone());
    match analyze(system, group, primes) {
        Ok(a) => Ok(Prepared::Analysis(Box::new(a))),
        Err(e @ Error::SquareNotZero { .. }) => match fallback {
            Some(system) => {
                eprintln!("THEOREM VIOLATION: {e}");
                Ok(Prepared::Structure(verify_structure(&system)?))
            }
            None => Err(e.into()),
        },
        Err(e) => Err(e.into()),
    }
}

fn report_suite(suite: &SuiteReport, args: &RunArgs, out: &mut impl Write) -> Result<u8, Failure> {
    render::write_suite(suite, args.format, out)?;
    if suite.passed() {
        return Ok(EXIT_OK);
    }
    for c in suite.checks.iter().filter(|c| !c.passed()) {
        eprintln!(
            "FAILED {}: {} of {} ({})",
            c.name,
            c.failed,
            c.checked,
            c.example.as_deref().unwrap_or("")
        );
    }
    Ok(EXIT_THEOREM)
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let args = cli.args();
    if matches!(cli.mode, Mode::Export(_))
        && args.emit_dot.is_none()
        && args.dump_matrices.is_none()
    {
        return Err(Failure::Usage(
            "export needs --emit-dot DIR and/or --dump-matrices DIR".into(),
        ));
    }
    let analysis = match prepare(args, matches!(cli.mode, Mode::Verify(_)))? {
        Prepared::Analysis(a) => a,
        Prepared::Structure(suite) => {
            report_suite(&suite, args, out)?;
            out.flush()?;
            return Ok(EXIT_THEOREM);
        }
    };
    export(&analysis, args)?;
    let code = match cli.mode {
        Mode::Compute(_) => {
            render::write_compute(&analysis, args.format, out)?;
            if analysis.summary.violations.is_empty() {
                EXIT_OK
            } else {
                for v in &analysis.summary.violations {
                    eprintln!("THEOREM VIOLATION: {v}");
                }
                EXIT_THEOREM
            }
        }
        Mode::Verify(_) => {
            let suite = verify(&analysis, args.samples, args.seed)?;
            report_suite(&suite, args, out)?
        }
        Mode::Audit(_) => {
            let mut rows = Vec::new();
            for &p in &analysis.primes {
                for w in vanishing_audit(&analysis.reports, p) {
                    let pos = analysis
                        .decomposition
                        .position(&w)
                        .expect("audited weight exists");
                    rows.push((p, w, analysis.reports[pos].rank_of_weight));
                }
            }
            render::write_audit(&analysis, &rows, args.format, out)?;
            let bad: Vec<_> = rows
                .iter()
                .filter(|(p, _, r)| !(*r as u64).is_multiple_of(*p))
                .collect();
            for (p, w, r) in &bad {
                eprintln!("THEOREM VIOLATION: weight {w} of rank {r} has nonzero F_{p} homology");
            }
            if bad.is_empty() {
                EXIT_OK
            } else {
                EXIT_THEOREM
            }
        }
        Mode::Export(_) => {
            writeln!(
                out,
                "exported {} components of {}",
                analysis.decomposition.components.len(),
                analysis.system.name()
            )?;
            EXIT_OK
        }
    };
    out.flush()?;
    Ok(code)
}

fn export(analysis: &Analysis, args: &RunArgs) -> Result<(), Failure> {
    if let Some(dir) = &args.emit_dot {
        for i in 0..analysis.decomposition.components.len() {
            dot::write_dot(dir, &analysis.decomposition.graph(i))?;
        }
    }
    if let Some(dir) = &args.dump_matrices {
        std::fs::create_dir_all(dir)?;
        let mut index = std::io::BufWriter::new(std::fs::File::create(dir.join("index.txt"))?);
        for i in 0..analysis.decomposition.components.len() {
            let c = analysis.decomposition.graph(i);
            let complex = build_complex(&c, Direction::Chain)?;
            let name = format!("weight_{:016x}.txt", dot::key_hash(&c.weight));
            writeln!(
                index,
                "{name} {} rank {} degrees {}..={}",
                c.weight,
                c.rank,
                complex.min_degree,
                complex.max_degree()
            )?;
            let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join(name))?);
            complex.write_triplets(&mut f)?;
        }
    }
    Ok(())
}
