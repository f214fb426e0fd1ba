//! Command-line surface: argument parsing, dispatch, and report rendering.
//!
//! Exit codes: 0 = verdict produced, 1 = usage or input error, 2 = internal
//! invariant violation, 3 = budget exceeded or scan interrupted.

use crate::cover::{
    build_instance, scan, unisingularity_verdict, ScanOptions, Strategy, VerdictOptions,
};
use crate::error::{Error, Result};
use crate::grp::{
    coset_permutation_action, construct_grp, has_fixed_point_free_r_element,
    least_root_field_prime, monomial_representation,
};
use crate::matfq::MatrixModP;
use crate::report::{
    Eig1Report, Gl2Report, MinPolyReport, OrderReport, OutputFormat, Report, RepScanReport,
    RootLatticeReport, S21Report, TriangulationReport, S21_SUPERSET_CAVEAT,
};
use crate::rng::SplitMix64;
use crate::weights;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const WORKERS_ENV: &str = "UNISING_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "unising", version, about = "eigenvalue-1 verdicts for finite linear groups")]
struct Cli {
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Args, Clone, Debug)]
struct ScanArgs {
    /// Scan strategy: exhaustive or scalar_normalized
    #[arg(long, default_value = "scalar_normalized")]
    strategy: String,
    /// Worker threads (overrides UNISING_WORKERS; default 1)
    #[arg(long)]
    workers: Option<usize>,
    /// Return the least witness in canonical order, independent of the
    /// worker count
    #[arg(long)]
    deterministic: bool,
    /// Abort instead of enumerating more than this many vectors
    #[arg(long, default_value_t = 1u64 << 48)]
    budget: u64,
    /// Record completed chunks here and resume from it if it exists
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Vectors per work chunk
    #[arg(long, default_value_t = 1u64 << 20)]
    chunk_size: u64,
    /// Stop after this many newly processed chunks (for split long runs)
    #[arg(long)]
    max_chunks: Option<u64>,
    /// Print chunk progress to stderr
    #[arg(long)]
    progress: bool,
}

impl ScanArgs {
    fn to_options(&self) -> Result<ScanOptions> {
        Ok(ScanOptions {
            strategy: Strategy::parse(&self.strategy)?,
            workers: resolve_workers(self.workers),
            deterministic: self.deterministic,
            budget: Some(self.budget),
            checkpoint: self.checkpoint.clone(),
            chunk_size: self.chunk_size,
            max_chunks: self.max_chunks,
            progress: self.progress,
        })
    }
}

fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Multiplicative order of base modulo a prime
    Order { base: u64, modulus: u64 },
    /// Unisingularity verdict for the group of the prime pair (r, p)
    GrpCover {
        r: u64,
        p: u64,
        /// Run the scan even when a shortcut rule applies and require
        /// agreement
        #[arg(long)]
        force_scan: bool,
        /// Comma-separated defining functional (default: first coordinate)
        #[arg(long, conflicts_with = "random_functional")]
        functional: Option<String>,
        /// Use a seeded random nonzero functional instead of the default
        #[arg(long)]
        random_functional: bool,
        /// Seed for --random-functional
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Enable the optional "p < 3(r+1)/2" rule (always scan-verified)
        #[arg(long)]
        shortcut_p_bound: bool,
        /// Enable the optional "p counts all hyperplanes" rule (always
        /// scan-verified)
        #[arg(long)]
        shortcut_hyperplane_count: bool,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Cross-check the three equivalent verdicts on r*p points
    GrpPerm {
        r: u64,
        p: u64,
        /// Enumeration budget for each of the three routes
        #[arg(long, default_value_t = 1u64 << 22)]
        budget: u64,
        /// Prime of the coefficient field for the representation route
        #[arg(long)]
        ell: Option<u64>,
        /// Also print the permutation action, one generator per line
        #[arg(long)]
        print_action: bool,
    },
    /// Eigenvalue-1 scan of the degree-p monomial representation over A
    GrpRep {
        r: u64,
        p: u64,
        /// Prime congruent to 1 mod r (default: the least such)
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, default_value_t = 1u64 << 22)]
        budget: u64,
    },
    /// Unisingularity of the GL_n(2) module with the given 0/1 labels
    Gl2 {
        n: usize,
        #[arg(num_args = 0.., value_parser = clap::value_parser!(u8))]
        bits: Vec<u8>,
    },
    /// Root-lattice membership of a weight in fundamental coordinates
    RootLattice {
        family: String,
        rank: usize,
        #[arg(num_args = 0.., allow_negative_numbers = true)]
        coeffs: Vec<i64>,
    },
    /// Weight conditions for types A/C/D over F_q against a weight file
    S21 {
        family: String,
        rank: usize,
        q: u64,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Minimal polynomial of a matrix read from the shared text format
    Minpoly {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Eigenvalue-1 test and fixed-space dimension of a matrix
    Eig1 {
        #[arg(long)]
        matrix: PathBuf,
    },
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout();
    run_with_writer(args, &mut out)
}

/// Entry point with a captured writer, used by the CLI tests.
pub fn run_with_writer<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    let format = cli.format.into();
    match dispatch(cli.cmd, format, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 2,
        Error::BudgetExceeded { .. } | Error::Interrupted { .. } => 3,
        _ => 1,
    }
}

fn emit(report: &impl Report, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    out.write_all(report.render(format).as_bytes())?;
    Ok(())
}

fn dispatch(cmd: Cmd, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Cmd::Order { base, modulus } => {
            let order = crate::ff::multiplicative_order(base, modulus)?;
            emit(&OrderReport::new(base, modulus, order), format, out)
        }
        Cmd::GrpCover {
            r,
            p,
            force_scan,
            functional,
            random_functional,
            seed,
            shortcut_p_bound,
            shortcut_hyperplane_count,
            scan,
        } => {
            let functional = resolve_functional(r, p, functional, random_functional, seed)?;
            let opts = VerdictOptions {
                scan: scan.to_options()?,
                force_scan,
                functional,
                shortcut_p_bound,
                shortcut_hyperplane_count,
            };
            let verdict = unisingularity_verdict(r, p, &opts)?;
            emit(&verdict, format, out)
        }
        Cmd::GrpPerm { r, p, budget, ell, print_action } => {
            let report = triangulate(r, p, budget, ell)?;
            if print_action {
                let spec = construct_grp(r, p)?;
                let action = coset_permutation_action(&spec)?;
                out.write_all(action.serialize().as_bytes())?;
            }
            emit(&report, format, out)
        }
        Cmd::GrpRep { r, p, ell, budget } => {
            let report = rep_scan(r, p, ell, budget)?;
            emit(&report, format, out)
        }
        Cmd::Gl2 { n, bits } => {
            if n < 2 {
                return Err(Error::Parse("n must be at least 2".into()));
            }
            let report = match weights::gl2_unisingular_criterion(n, &bits) {
                Ok(v) => Gl2Report { n, bits, unisingular: v, note: None },
                Err(Error::TrivialModule) => Gl2Report {
                    n,
                    bits,
                    unisingular: true,
                    note: Some(
                        "all-zero labels denote the trivial module, which is vacuously \
                         unisingular; the criterion itself applies to nontrivial modules"
                            .into(),
                    ),
                },
                Err(e) => return Err(e),
            };
            emit(&report, format, out)
        }
        Cmd::RootLattice { family, rank, coeffs } => {
            let lie = weights::LieType::parse(&family, rank)?;
            let w = weights::WeightVec::new(lie, coeffs.clone())?;
            let report = RootLatticeReport {
                family: lie.family.letter(),
                rank,
                coeffs,
                in_root_lattice: weights::in_root_lattice(&w),
            };
            emit(&report, format, out)
        }
        Cmd::S21 { family, rank, q, weights: path } => {
            if q < 2 {
                return Err(Error::Parse("q must be at least 2".into()));
            }
            let lie = weights::LieType::parse(&family, rank)?;
            let text = std::fs::read_to_string(&path)?;
            let (file_lie, set) = weights::parse_weight_file(&text)?;
            if file_lie != lie {
                return Err(Error::Parse(format!(
                    "weight file is for {}{}, not {}{}",
                    file_lie.family.letter(),
                    file_lie.rank,
                    lie.family.letter(),
                    lie.rank
                )));
            }
            let witness = weights::s21_condition(lie, q, &set)?;
            let holds = witness.is_some();
            let report = S21Report {
                family: lie.family.letter(),
                rank,
                q,
                holds,
                witness,
                caveat: holds.then(|| S21_SUPERSET_CAVEAT.to_string()),
            };
            emit(&report, format, out)
        }
        Cmd::Minpoly { matrix } => {
            let m = MatrixModP::parse_text(&std::fs::read_to_string(&matrix)?)?;
            let poly = m.min_poly();
            let report = MinPolyReport {
                modulus: m.modulus(),
                n: m.size(),
                degree: poly.degree(),
                pretty: poly.to_string(),
                coefficients: poly.coeffs,
            };
            emit(&report, format, out)
        }
        Cmd::Eig1 { matrix } => {
            let m = MatrixModP::parse_text(&std::fs::read_to_string(&matrix)?)?;
            let report = Eig1Report {
                modulus: m.modulus(),
                n: m.size(),
                has_eigenvalue_one: m.has_eigenvalue_one(),
                fixed_space_dim: m.fixed_space_dim(),
            };
            emit(&report, format, out)
        }
    }
}

fn resolve_functional(
    r: u64,
    p: u64,
    explicit: Option<String>,
    random: bool,
    seed: u64,
) -> Result<Option<Vec<u64>>> {
    if let Some(text) = explicit {
        let f: Vec<u64> = text
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        return Ok(Some(f));
    }
    if !random {
        return Ok(None);
    }
    let d = crate::ff::multiplicative_order(r, p)? as usize;
    let mut rng = SplitMix64::new(seed);
    loop {
        let cand: Vec<u64> = (0..d).map(|_| rng.below(r)).collect();
        if cand.iter().any(|&c| c != 0) {
            return Ok(Some(cand));
        }
    }
}

/// The three equivalent verdicts computed side by side: the covering scan,
/// the conjugate-avoidance enumeration over A, and the eigenvalue-1 scan of
/// the monomial representation.
pub fn triangulate(r: u64, p: u64, budget: u64, ell: Option<u64>) -> Result<TriangulationReport> {
    let spec = construct_grp(r, p)?;
    let inst = build_instance(&spec, None)?;
    let opts = ScanOptions { budget: Some(budget), ..ScanOptions::default() };
    let covering = scan(&inst, &opts)?;

    let fpf = has_fixed_point_free_r_element(&spec, budget)?;

    let rep = rep_scan(r, p, ell, budget)?;

    let agree = covering.covered == !fpf.found && covering.covered == rep.all_eigenvalue_one;
    Ok(TriangulationReport {
        r,
        p,
        d: spec.d,
        ell: rep.ell,
        covering_covered: covering.covered,
        fixed_point_free_found: fpf.found,
        fixed_point_free_witness: fpf.witness,
        rep_all_eigenvalue_one: rep.all_eigenvalue_one,
        rep_counterexample: rep.counterexample,
        agree,
    })
}

/// Exhaustive eigenvalue-1 scan of the monomial representation over all
/// r^d elements of A.
pub fn rep_scan(r: u64, p: u64, ell: Option<u64>, budget: u64) -> Result<RepScanReport> {
    let spec = construct_grp(r, p)?;
    let ell = ell.unwrap_or_else(|| least_root_field_prime(r));
    let rep = monomial_representation(&spec, ell)?;
    let total = spec.translation_count();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget: budget as u128 });
    }
    let mut all = true;
    let mut counterexample = None;
    let mut scanned = 0u64;
    for k in 0..total {
        let a = spec.element(k);
        scanned += 1;
        let image = rep.image_of_translation(&spec, &a)?;
        if !image.has_eigenvalue_one() {
            all = false;
            counterexample = Some(a);
            break;
        }
    }
    Ok(RepScanReport {
        r,
        p,
        d: spec.d,
        ell,
        zeta: rep.zeta,
        elements_scanned: scanned,
        all_eigenvalue_one: all,
        counterexample,
    })
}
