//! Command-line driver.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails
//! or a hypothesis is unmet, 2 on usage or input errors. Output is
//! deterministic given identical inputs and seed.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cohomology;
use crate::error::{Error, Result};
use crate::operators::{self, CheckResult, UniversalCheck};
use crate::report::{CheckRecord, Format, TateSummary, VerificationReport};
use crate::rings::{self, RingElement, RingInstance, SamplePolicy, DEFAULT_SEED};
use crate::CyclicRing;

#[derive(Parser, Debug)]
#[command(
    name = "cychom",
    version,
    about = "Verify homotopy operators for cyclic group actions on rings"
)]
pub struct Cli {
    /// Seed for the sampling generator used on rings too large to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Enumeration cap for exhaustive computations.
    #[arg(long, global = true, default_value_t = rings::DEFAULT_ENUMERATE_CAP)]
    pub max_enumerate: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prove identity families in the universal free ring U_n for a range
    /// of n; a pass is a proof for every ring with a Z/n-action.
    VerifyUniversal {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        /// Upper bound on n (symbolic term counts grow quadratically).
        #[arg(long, default_value_t = 8)]
        bound: u32,
        /// Comma-separated subset of eq1,lemma1,corollary1,proposition.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Verify identities by brute force on a concrete finite ring.
    RingVerify {
        spec: PathBuf,
        /// Comma-separated subset of eq1,lemma1,corollary1,proposition,homotopy.
        /// Defaults to everything except homotopy.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Element literal for x (found automatically for homotopy when omitted).
        #[arg(long)]
        x: Option<String>,
    },
    /// Tate quotients of the periodic complex, with vanishing verdict.
    Cohomology { spec: PathBuf },
    /// Effective preimage under N (for invariant a) or T (for norm-killed a).
    Preimage {
        spec: PathBuf,
        #[arg(long, value_enum)]
        mode: PreimageMode,
        /// Element literal for a.
        #[arg(long)]
        a: String,
        /// Element literal for x with N(x) = 1 (found automatically when omitted).
        #[arg(long)]
        x: Option<String>,
    },
    /// Compare the closed forms of h and h' at x = 1/n with the general
    /// operators (requires n invertible in the ring).
    SpecialCase { spec: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PreimageMode {
    Norm,
    T,
}

/// Exit code classification: input problems are usage errors (2), unmet
/// mathematical hypotheses and caps are check failures (1).
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::SpecValidation(_)
        | Error::InvalidModulus(_)
        | Error::ModulusMismatch(_, _)
        | Error::Range(_) => 2,
        Error::Precondition(_)
        | Error::NoInverse(_)
        | Error::TooLarge { .. }
        | Error::IncompatibleAction(_)
        | Error::Inconsistency(_) => 1,
    }
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(err) => {
            let code = exit_code_for(&err);
            if let Error::TooLarge { size, cap } = &err {
                eprintln!(
                    "error: ring has {size} elements, over the cap {cap}; raise --max-enumerate"
                );
            } else {
                eprintln!("error: {err}");
            }
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<VerificationReport> {
    match &cli.command {
        Command::VerifyUniversal {
            n_min,
            n_max,
            bound,
            checks,
        } => cmd_verify_universal(*n_min, *n_max, *bound, checks, cli.seed),
        Command::RingVerify { spec, checks, x } => {
            cmd_ring_verify(spec, checks, x.as_deref(), cli.seed, cli.max_enumerate)
        }
        Command::Cohomology { spec } => cmd_cohomology(spec, cli.seed, cli.max_enumerate),
        Command::Preimage { spec, mode, a, x } => {
            cmd_preimage(spec, *mode, a, x.as_deref(), cli.seed)
        }
        Command::SpecialCase { spec } => cmd_special_case(spec, cli.seed),
    }
}

fn cmd_verify_universal(
    n_min: u32,
    n_max: u32,
    bound: u32,
    checks: &[String],
    seed: u64,
) -> Result<VerificationReport> {
    if n_min < 2 || n_min > n_max || n_max > bound {
        return Err(Error::Range(format!(
            "need 2 <= n-min <= n-max <= {bound}, got {n_min}..{n_max}"
        )));
    }
    let checks = parse_universal_checks(checks)?;
    let mut report = VerificationReport::new("verify-universal", seed);
    for n in n_min..=n_max {
        for &check in &checks {
            let result = operators::check_universal(n, check)?;
            let mut record =
                CheckRecord::from_check(result, format!("universal n={n}"), "generic x, a");
            if check == UniversalCheck::Lemma1 {
                let (lhs, rhs) = operators::lemma1_sides(n)?;
                record = record.with_detail(format!(
                    "h'_x(a) - h_x(a) = {lhs} ; N(x)N(a) - N(xa) = {rhs}"
                ));
            }
            report.push(record);
        }
    }
    Ok(report)
}

fn parse_universal_checks(checks: &[String]) -> Result<Vec<UniversalCheck>> {
    if checks.is_empty() {
        return Ok(UniversalCheck::ALL.to_vec());
    }
    checks
        .iter()
        .map(|s| {
            UniversalCheck::parse(s)
                .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RingCheck {
    Universal(UniversalCheck),
    Homotopy,
}

fn parse_ring_checks(checks: &[String]) -> Result<Vec<RingCheck>> {
    if checks.is_empty() {
        return Ok(UniversalCheck::ALL
            .into_iter()
            .map(RingCheck::Universal)
            .collect());
    }
    checks
        .iter()
        .map(|s| {
            if s == "homotopy" {
                Ok(RingCheck::Homotopy)
            } else {
                UniversalCheck::parse(s)
                    .map(RingCheck::Universal)
                    .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
            }
        })
        .collect()
}

fn load_ring(path: &Path) -> Result<RingInstance> {
    rings::build_ring(rings::load_spec(path)?)
}

fn policy_line(ring: &RingInstance, policy: SamplePolicy) -> String {
    format!("{} (|R| = {})", policy.describe(), ring.size())
}

fn cmd_ring_verify(
    spec_path: &Path,
    checks: &[String],
    x_literal: Option<&str>,
    seed: u64,
    _max_enumerate: usize,
) -> Result<VerificationReport> {
    let checks = parse_ring_checks(checks)?;
    let ring = load_ring(spec_path)?;
    let x = x_literal.map(|s| ring.parse_element(s)).transpose()?;
    let elem_policy = rings::element_policy(&ring, seed);
    let pair_policy = rings::pair_policy(&ring, seed);
    let mut report = VerificationReport::new("ring-verify", seed);
    report.push(
        CheckRecord::from_check(
            CheckResult::passed("spec"),
            ring.describe(),
            "validated on load",
        )
        .with_detail(format!(
            "canonical spec: {}",
            serde_json::to_string(ring.spec())?
        )),
    );
    for check in checks {
        match check {
            RingCheck::Universal(UniversalCheck::Eq1) => {
                let samples = ring.sample_elements(elem_policy);
                report.push(CheckRecord::from_check(
                    operators::check_eq1(&ring, &samples),
                    ring.describe(),
                    policy_line(&ring, elem_policy),
                ));
            }
            RingCheck::Universal(check) => {
                let (result, policy) = match &x {
                    Some(x) => {
                        let samples = ring.sample_elements(elem_policy);
                        (run_fixed_x(&ring, check, x, &samples), elem_policy)
                    }
                    None => {
                        let pairs = ring.sample_pairs(pair_policy);
                        let merged = CheckResult::merge(
                            check.name(),
                            pairs
                                .iter()
                                .map(|(x, a)| run_fixed_x(&ring, check, x, std::slice::from_ref(a))),
                        );
                        (merged, pair_policy)
                    }
                };
                report.push(CheckRecord::from_check(
                    result,
                    ring.describe(),
                    policy_line(&ring, policy),
                ));
            }
            RingCheck::Homotopy => {
                let x_used = match &x {
                    Some(x) => x.clone(),
                    None => match ring.find_norm_one() {
                        Some(x) => x,
                        None => {
                            report.push(CheckRecord::failure(
                                "homotopy",
                                ring.describe(),
                                "no norm-one element exists in this ring",
                            ));
                            continue;
                        }
                    },
                };
                let samples = ring.sample_elements(elem_policy);
                match operators::check_homotopy(&ring, &x_used, &samples) {
                    Ok(result) => report.push(
                        CheckRecord::from_check(
                            result,
                            ring.describe(),
                            policy_line(&ring, elem_policy),
                        )
                        .with_detail(format!("x = {}", ring.fmt_elem(&x_used))),
                    ),
                    Err(Error::Precondition(msg)) => {
                        report.push(CheckRecord::failure("homotopy", ring.describe(), msg));
                    }
                    Err(other) => return Err(other),
                }
            }
        }
    }
    Ok(report)
}

fn run_fixed_x(
    ring: &RingInstance,
    check: UniversalCheck,
    x: &RingElement,
    samples: &[RingElement],
) -> CheckResult {
    match check {
        UniversalCheck::Eq1 => operators::check_eq1(ring, samples),
        UniversalCheck::Lemma1 => CheckResult::merge(
            "lemma1",
            samples
                .iter()
                .map(|a| operators::check_lemma1(ring, x, a)),
        ),
        UniversalCheck::Corollary1 => operators::check_corollary1(ring, x, samples),
        UniversalCheck::Proposition => operators::check_proposition(ring, x, samples),
    }
}

fn cmd_cohomology(spec_path: &Path, seed: u64, max_enumerate: usize) -> Result<VerificationReport> {
    let ring = load_ring(spec_path)?;
    if ring.size() > max_enumerate as u128 {
        return Err(Error::TooLarge {
            size: ring.size(),
            cap: max_enumerate,
        });
    }
    let tate = cohomology::tate_quotients(&ring, max_enumerate)?;
    let summary = TateSummary::from_report(&ring, &tate);
    let mut report = VerificationReport::new("cohomology", seed);
    let mut record = CheckRecord::from_check(
        CheckResult::passed("tate-quotients"),
        ring.describe(),
        "exhaustive".to_string(),
    );
    record.tate = Some(summary);
    report.push(record);
    if tate.norm_one.is_some() {
        let vanished = tate.even_quotient.order == 1 && tate.odd_quotient.order == 1;
        let verdict = if vanished {
            CheckResult::passed("vanishing")
        } else {
            CheckResult::failed(
                "vanishing",
                operators::Witness {
                    identity: "norm-one element exists but a quotient is nontrivial".into(),
                    inputs: format!(
                        "x = {}",
                        ring.fmt_elem(tate.norm_one.as_ref().expect("checked"))
                    ),
                    lhs: format!("even order {}", tate.even_quotient.order),
                    rhs: format!("odd order {}", tate.odd_quotient.order),
                },
            )
        };
        report.push(CheckRecord::from_check(
            verdict,
            ring.describe(),
            "exhaustive".to_string(),
        ));
    }
    Ok(report)
}

fn cmd_preimage(
    spec_path: &Path,
    mode: PreimageMode,
    a_literal: &str,
    x_literal: Option<&str>,
    seed: u64,
) -> Result<VerificationReport> {
    let ring = load_ring(spec_path)?;
    let a = ring.parse_element(a_literal)?;
    let mut report = VerificationReport::new("preimage", seed);
    let x = match x_literal {
        Some(s) => ring.parse_element(s)?,
        None => match ring.find_norm_one() {
            Some(x) => x,
            None => {
                report.push(CheckRecord::failure(
                    "preimage",
                    ring.describe(),
                    "no norm-one element exists in this ring",
                ));
                return Ok(report);
            }
        },
    };
    let name = match mode {
        PreimageMode::Norm => "norm-preimage",
        PreimageMode::T => "t-preimage",
    };
    let outcome = match mode {
        PreimageMode::Norm => cohomology::norm_preimage(&ring, &x, &a).map(|pre| {
            format!(
                "preimage xa = {} ; N(xa) = a re-verified",
                ring.fmt_elem(&pre)
            )
        }),
        PreimageMode::T => cohomology::t_preimage(&ring, &x, &a).map(|(h, hp)| {
            format!(
                "preimages h_x(a) = {} and h'_x(a) = {} ; T of each = a re-verified",
                ring.fmt_elem(&h),
                ring.fmt_elem(&hp)
            )
        }),
    };
    match outcome {
        Ok(detail) => report.push(
            CheckRecord::from_check(CheckResult::passed(name), ring.describe(), "direct")
                .with_detail(format!("x = {} ; {detail}", ring.fmt_elem(&x))),
        ),
        Err(Error::Precondition(msg)) => {
            report.push(CheckRecord::failure(name, ring.describe(), msg));
        }
        Err(other) => return Err(other),
    }
    Ok(report)
}

fn cmd_special_case(spec_path: &Path, seed: u64) -> Result<VerificationReport> {
    let ring = load_ring(spec_path)?;
    let mut report = VerificationReport::new("special-case", seed);
    let Some(u) = ring.find_n_inverse() else {
        report.push(CheckRecord::failure(
            "special-case",
            ring.describe(),
            format!("n = {} is not invertible in this ring", ring.order()),
        ));
        return Ok(report);
    };
    let policy = rings::element_policy(&ring, seed);
    let samples = ring.sample_elements(policy);
    let result = operators::check_special_case(&ring, &u, &samples);
    report.push(
        CheckRecord::from_check(result, ring.describe(), policy_line(&ring, policy))
            .with_detail(format!("u = 1/n = {}", ring.fmt_elem(&u))),
    );
    Ok(report)
}
