//! reflfact: build complex reflection groups, compute their exact character
//! theory and Coxeter-number invariants, and evaluate/verify reflection
//! factorization counting formulas.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reflfact_core::cache;
use reflfact_core::config::Caps;
use reflfact_core::error::Error;
use reflfact_core::factor::{
    cancellation_check, chapuy_stump_verify, egf_form, frobenius_count, phi_extract,
    transitive_egf_sn, transitive_oracle_counts,
};
use reflfact_core::group::GroupSpec;
use reflfact_core::verify::{resolve_element, run_verify, Session};

#[derive(Parser)]
#[command(
    name = "reflfact",
    version,
    about = "Exact reflection-factorization counting in complex reflection groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached group builds (REFLFACT_CACHE overrides).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Cap on the group order enumerated by closure.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Series-expansion test bound.
    #[arg(long, global = true)]
    max_length: Option<usize>,
    /// Seed for the deterministic retry sequences.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GroupElementArgs {
    /// Group spec: S<n> | A<n> | B<n> | D<n> | I2(<m>) | G(<r>,<p>,<n>) |
    /// file:<path>, products joined by × or *.
    #[arg(long)]
    group: String,
    /// Element selector: identity | coxeter | regular:<d> | class:<k> | elem:<i>.
    #[arg(long)]
    element: String,
}

#[derive(Subcommand)]
enum Command {
    /// Count reflection factorizations of an element at one length.
    Count {
        #[command(flatten)]
        target: GroupElementArgs,
        /// Factorization length l.
        #[arg(long)]
        length: usize,
        /// Cross-check against the brute-force DP oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the factorization EGF as aggregated exponential terms.
    Egf {
        #[command(flatten)]
        target: GroupElementArgs,
        /// Aggregate by local Coxeter exponent vectors per orbit.
        #[arg(long)]
        weighted: bool,
    },
    /// Extract the Φ polynomial of a regular element.
    Phi {
        #[command(flatten)]
        target: GroupElementArgs,
    },
    /// Extract the multivariate weighted Φ polynomial of a regular element.
    WeightedPhi {
        #[command(flatten)]
        target: GroupElementArgs,
    },
    /// Run every invariant suite on a group and emit a run manifest.
    Verify {
        /// Group spec.
        spec: String,
    },
    /// Verify the transitive-factorization closed form for S_n.
    Transitive {
        /// Symmetric group size n (3..=8 within oracle range).
        #[arg(long)]
        n: u32,
    },
    /// Emit conjugacy classes and the exact character table.
    Chartable {
        /// Group spec.
        spec: String,
    },
    /// Emit the Coxeter numbers c_χ and their per-orbit refinements.
    Coxnums {
        /// Group spec.
        spec: String,
    },
    /// Verify the d_n closed form against brute force.
    ChapuyStump {
        /// Group spec.
        spec: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
/// cap exceeded.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::OrderCapExceeded { .. }
        | Error::ClassCapExceeded { .. }
        | Error::OracleCapExceeded { .. } => 3,
        Error::SpecParse { .. }
        | Error::InvalidSpec(_)
        | Error::NotReflectionGroup(_)
        | Error::NoRegularElement(_)
        | Error::NotConjugationClosed
        | Error::DivisionByZero
        | Error::Irrational(_)
        | Error::VariableCollision(_)
        | Error::Cache(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        Error::TableVerification(_)
        | Error::EigenvectorSeparation(_)
        | Error::IntegralityViolation(_)
        | Error::CancellationViolation(_)
        | Error::PhiExtraction(_)
        | Error::MolienFactorization(_)
        | Error::DivisibilityViolation(_)
        | Error::VerificationFailure(_) => 1,
    }
}

fn caps_from(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(m) = cli.max_order {
        caps.max_order = m;
    }
    if let Some(l) = cli.max_length {
        caps.max_length = l;
    }
    caps
}

fn run(cli: &Cli) -> Result<(), Error> {
    let caps = caps_from(cli);
    let cache_dir = cache::effective_cache_dir(cli.cache_dir.as_deref());
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Count {
            target,
            length,
            oracle,
        } => {
            let spec = GroupSpec::parse(&target.group)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            let g = resolve_element(&session, &target.element)?;
            let count =
                frobenius_count(&session.group, &session.classes, &session.table, g, *length)?;
            let oracle_count = if *oracle {
                let dp = reflfact_core::factor::brute_force_count(&session.group, &caps, g, *length)?;
                if dp != count {
                    return Err(Error::VerificationFailure(format!(
                        "oracle disagrees: formula {count}, DP {dp}"
                    )));
                }
                Some(dp)
            } else {
                None
            };
            output::print_count(
                &session,
                &spec,
                &target.element,
                g,
                *length,
                &count,
                oracle_count.as_ref(),
                json,
            );
            Ok(())
        }
        Command::Egf { target, weighted } => {
            let spec = GroupSpec::parse(&target.group)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            let g = resolve_element(&session, &target.element)?;
            let form = egf_form(
                &session.group,
                &session.classes,
                &session.table,
                &session.profiles,
                g,
                *weighted,
            )?;
            output::print_egf(&session, &spec, &target.element, g, &form, json);
            Ok(())
        }
        Command::Phi { target } | Command::WeightedPhi { target } => {
            let weighted = matches!(cli.command, Command::WeightedPhi { .. });
            let spec = GroupSpec::parse(&target.group)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            let g = resolve_element(&session, &target.element)?;
            let cert = find_certificate(&session, g)?;
            let cancellation = cancellation_check(
                &session.group,
                &session.classes,
                &session.table,
                &session.profiles,
                &cert,
                weighted,
            )?;
            let result = phi_extract(
                &session.group,
                &session.classes,
                &session.table,
                &session.profiles,
                &cert,
                weighted,
            )?;
            output::print_phi(
                &session,
                &spec,
                &target.element,
                &cert,
                &cancellation,
                &result,
                json,
            );
            Ok(())
        }
        Command::Verify { spec } => {
            let spec = GroupSpec::parse(spec)?;
            let manifest = run_verify(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            output::print_manifest(&manifest, json);
            if manifest.passed {
                Ok(())
            } else {
                Err(Error::VerificationFailure(format!(
                    "{} of {} checks failed",
                    manifest.checks.iter().filter(|c| !c.passed).count(),
                    manifest.checks.len()
                )))
            }
        }
        Command::Transitive { n } => {
            let lmax = caps.max_length;
            let report = transitive_egf_sn(*n, &caps, lmax)?;
            let counts = transitive_oracle_counts(*n as usize, lmax)?;
            output::print_transitive(&report, &counts, json);
            Ok(())
        }
        Command::Chartable { spec } => {
            let spec = GroupSpec::parse(spec)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            output::print_chartable(&session, &spec, json);
            Ok(())
        }
        Command::Coxnums { spec } => {
            let spec = GroupSpec::parse(spec)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            output::print_coxnums(&session, &spec, json);
            Ok(())
        }
        Command::ChapuyStump { spec } => {
            let spec = GroupSpec::parse(spec)?;
            let session = Session::build(&spec, &caps, cli.seed, cache_dir.as_deref())?;
            let report = chapuy_stump_verify(
                &session.group,
                &session.classes,
                &session.table,
                &session.profiles,
                &caps,
                caps.max_length.min(6),
            )?;
            output::print_chapuy_stump(&spec, &report, json);
            Ok(())
        }
    }
}

/// Finds the regular certificate for the class of g; errors when the class
/// is not regular.
fn find_certificate(
    session: &Session,
    g: u32,
) -> Result<reflfact_core::group::RegularElementCert, Error> {
    let d = session.group.order_of(g) as u64;
    let class = session.classes.class_of[g as usize];
    reflfact_core::group::find_regular_elements(&session.group, d)
        .into_iter()
        .find(|c| session.classes.class_of[c.class_rep as usize] == class)
        .ok_or_else(|| {
            Error::NoRegularElement(format!(
                "the class of element {g} (order {d}) is not regular"
            ))
        })
}
