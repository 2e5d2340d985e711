//! `hurlab`: batch commands over permutation PMQ arithmetic, completion
//! normal forms, braid orbits, polynomial monodromy, dimension tables and
//! stable invariant dimensions.
//!
//! Exit codes: 0 success, 1 domain error, 2 numerical failure, 3 budget
//! overflow, 64 usage error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use hurlab_core::completion::{self, CompletionElement};
use hurlab_core::monodromy::{self, HurwitzConfiguration, MonodromyConfig};
use hurlab_core::orbits::{self, FactorSequence, MoveSet};
use hurlab_core::perm::{parse_permutation, GeoElement, Permutation};
use hurlab_core::poly::MonicPolynomial;
use hurlab_core::verify::{self, VerifyConfig};
use hurlab_core::{cohomology, dims, Error, ErrorKind};

const EXIT_DOMAIN: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hurlab", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Relative tolerance for merging critical values.
    #[arg(long, global = true, env = "HURLAB_TOLERANCE", default_value_t = 1e-8)]
    tolerance: f64,
    /// Node cap for orbit enumeration; exceeding it is an error.
    #[arg(
        long,
        global = true,
        env = "HURLAB_NODE_CAP",
        default_value_t = 1_000_000
    )]
    node_cap: usize,
    /// Seed for the randomized verification suites.
    #[arg(
        long,
        global = true,
        env = "HURLAB_SEED",
        default_value_t = 0x4875_724c
    )]
    seed: u64,
    /// Output format (tables support csv; everything supports json).
    #[arg(long, global = true, env = "HURLAB_OUTPUT", value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Worker count hint for loop tracking.
    #[arg(long, global = true, env = "HURLAB_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation and geodesic partial-product operations.
    Pmq {
        #[command(subcommand)]
        op: PmqOp,
    },
    /// Completion normal forms and distinguished elements.
    Completion {
        #[command(subcommand)]
        op: CompletionOp,
    },
    /// Braid orbits of factorization tuples.
    Orbits {
        #[command(subcommand)]
        op: OrbitsOp,
    },
    /// Numerical monodromy of polynomial branched covers.
    Monodromy {
        #[command(subcommand)]
        op: MonodromyOp,
    },
    /// Dimension formulas and Euler-characteristic checks.
    Dims {
        #[command(subcommand)]
        op: DimsOp,
    },
    /// Graded dimensions of conjugation invariants.
    Cohomology {
        #[command(subcommand)]
        op: CohomologyOp,
    },
    /// Run the acceptance checks.
    Verify {
        #[command(subcommand)]
        op: VerifyOp,
    },
}

#[derive(Subcommand)]
enum PmqOp {
    /// Transposition word-length norm and cycle type.
    Norm {
        /// One-line ("2 3 1") or cycle ("(1 2)(3 4 5)") notation.
        #[arg(long)]
        sigma: String,
        /// Ambient degree (required for cycle notation that omits top points).
        #[arg(long)]
        d: Option<usize>,
    },
    /// Geodesic partial product; an undefined product is a normal result.
    Product {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Conjugation sigma^tau = tau^-1 sigma tau.
    Conjugate {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CompletionOp {
    /// Normal form of a semicolon-separated factor sequence.
    NormalForm {
        #[arg(long)]
        d: usize,
        /// E.g. "(1 2);(2 3)" or "2 1 3;1 3 2"; may be empty for the unit.
        #[arg(long, default_value = "")]
        factors: String,
    },
    /// Product of two completion elements (JSON, inline or @file).
    Multiply {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The element (kappa; {1..d}; 2g + n + d - 2) for pole orders dvec.
    Klud {
        #[arg(long)]
        g: usize,
        /// Comma-separated pole orders, e.g. "2" or "1,1".
        #[arg(long)]
        dvec: String,
    },
    /// Search for y, k with x * y = totmon(e')^k.
    Propagator {
        /// Completion element JSON (inline or @file); unit permutation.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
}

#[derive(Subcommand)]
enum OrbitsOp {
    /// BFS closure of one sequence under a move set.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        sequence: String,
        /// "hurwitz" (braid moves only) or "all" (plus geodesic merge/split).
        #[arg(long, default_value = "hurwitz")]
        moves: String,
    },
    /// Group all length-k tuples by braid orbit.
    Classify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Enumerate tuples of arbitrary non-unit elements instead of
        /// transpositions.
        #[arg(long, default_value_t = false)]
        all_elements: bool,
    },
    /// Split a sequence along the blocks of its normal form.
    Split {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        sequence: String,
    },
}

#[derive(Subcommand)]
enum MonodromyOp {
    /// Branch points, monodromies and the completion total of a polynomial.
    Compute {
        /// Comma-separated complex coefficients "a0,a1,..." ("x+yi"
        /// literals); length degree-1 means the top coefficient is zero.
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        degree: usize,
    },
    /// Shrink the critical values into the open unit square.
    Rescale {
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum DimsOp {
    /// Dimension records over inclusive ranges of g, n, d.
    Table {
        #[arg(long, default_value_t = 3)]
        g_max: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
    },
    /// Recompute the Euler characteristic of a configuration two ways.
    EulerCheck {
        /// Path to a configuration JSON as emitted by `monodromy compute`,
        /// or "-" for stdin.
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum CohomologyOp {
    /// Cycle types of norm m fitting in degree d.
    Basis {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
    /// Dimensions in degrees 0..=max-m.
    Table {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_m: usize,
    },
    /// The stabilization matrix from degree d+1 to degree d in norm m.
    StabMap {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum VerifyOp {
    /// Run every acceptance criterion and print one line per criterion.
    All {
        /// Comma-separated criterion ids to run (default: all).
        #[arg(long)]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let code = match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                _ => EXIT_USAGE,
            };
            eprint!("{e}");
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.global.threads {
        // Errors only if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn domain(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_DOMAIN,
        message: message.into(),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e.kind() {
            ErrorKind::Domain => EXIT_DOMAIN,
            ErrorKind::Numerical => EXIT_NUMERICAL,
            ErrorKind::Budget => EXIT_BUDGET,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string(value).map_err(|e| CliError {
        code: EXIT_DOMAIN,
        message: e.to_string(),
    })?;
    println!("{json}");
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Pmq { op } => run_pmq(op),
        Command::Completion { op } => run_completion(op),
        Command::Orbits { op } => run_orbits(op, g),
        Command::Monodromy { op } => run_monodromy(op, g),
        Command::Dims { op } => run_dims(op, g),
        Command::Cohomology { op } => run_cohomology(op, g),
        Command::Verify { op } => run_verify(op, g),
    }
}

fn perm_arg(s: &str, d: Option<usize>) -> Result<Permutation, CliError> {
    parse_permutation(s, d).map_err(|e| domain(e.to_string()))
}

fn factors_arg(s: &str, d: usize) -> Result<Vec<GeoElement>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| perm_arg(t, Some(d)).map(GeoElement::new))
        .collect()
}

fn sequence_arg(s: &str, d: usize) -> Result<FactorSequence, CliError> {
    FactorSequence::new(d, factors_arg(s, d)?).map_err(|e| Error::from(e).into())
}

fn completion_arg(s: &str) -> Result<CompletionElement, CliError> {
    let text = if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| domain(format!("{path}: {e}")))?
    } else {
        s.to_string()
    };
    serde_json::from_str(&text).map_err(|e| domain(format!("invalid completion element: {e}")))
}

fn run_pmq(op: &PmqOp) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct NormOut {
        sigma: Permutation,
        norm: usize,
        cycle_type: hurlab_core::CycleType,
    }
    #[derive(Serialize)]
    struct ProductOut {
        defined: bool,
        product: Option<Permutation>,
        norm: Option<usize>,
    }
    #[derive(Serialize)]
    struct ConjugateOut {
        result: Permutation,
    }
    match op {
        PmqOp::Norm { sigma, d } => {
            let sigma = perm_arg(sigma, *d)?;
            emit(&NormOut {
                norm: sigma.norm(),
                cycle_type: sigma.cycle_type(),
                sigma,
            })
        }
        PmqOp::Product { a, b, d } => {
            let a = perm_arg(a, *d)?;
            let b = perm_arg(b, Some(a.degree()))?;
            let out = match GeoElement::new(a).partial_product(&GeoElement::new(b)) {
                Some(p) => ProductOut {
                    defined: true,
                    norm: Some(p.norm()),
                    product: Some(p.into_perm()),
                },
                None => ProductOut {
                    defined: false,
                    product: None,
                    norm: None,
                },
            };
            emit(&out)
        }
        PmqOp::Conjugate { sigma, tau, d } => {
            let sigma = perm_arg(sigma, *d)?;
            let tau = perm_arg(tau, Some(sigma.degree()))?;
            emit(&ConjugateOut {
                result: sigma.conjugate(&tau),
            })
        }
    }
}

fn run_completion(op: &CompletionOp) -> Result<(), CliError> {
    match op {
        CompletionOp::NormalForm { d, factors } => {
            let factors = factors_arg(factors, *d)?;
            let nf = completion::normal_form(*d, &factors).map_err(Error::from)?;
            emit(&nf)
        }
        CompletionOp::Multiply { a, b } => {
            let a = completion_arg(a)?;
            let b = completion_arg(b)?;
            if a.degree() != b.degree() {
                return Err(domain("factors have different degrees"));
            }
            emit(&a.multiply(&b))
        }
        CompletionOp::Klud { g, dvec } => {
            let d_vec: Vec<usize> = dvec
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| domain(format!("invalid pole orders {dvec:?}: {e}")))?;
            let k = completion::make_klud_g(*g, &d_vec).map_err(Error::from)?;
            emit(&k)
        }
        CompletionOp::Propagator { x, max_k } => {
            #[derive(Serialize)]
            struct PropagatorOut {
                found: bool,
                y: Option<CompletionElement>,
                k: Option<usize>,
            }
            let x = completion_arg(x)?;
            if !x.sigma().is_identity() {
                return Err(domain("propagator search needs a unit-permutation element"));
            }
            let out = match completion::is_propagator_witness(&x, *max_k) {
                Some((y, k)) => PropagatorOut {
                    found: true,
                    y: Some(y),
                    k: Some(k),
                },
                None => PropagatorOut {
                    found: false,
                    y: None,
                    k: None,
                },
            };
            emit(&out)
        }
    }
}

#[derive(Serialize)]
struct OrbitOut {
    size: usize,
    /// One-based one-line images, one per factor.
    representative: Vec<Vec<usize>>,
    normal_form: CompletionElement,
}

#[derive(Serialize)]
struct OrbitReportOut {
    orbit_count: usize,
    orbits: Vec<OrbitOut>,
}

fn factor_images(seq: &FactorSequence) -> Vec<Vec<usize>> {
    seq.factors().iter().map(|f| f.perm().one_line()).collect()
}

fn run_orbits(op: &OrbitsOp, g: &GlobalOpts) -> Result<(), CliError> {
    match op {
        OrbitsOp::Enumerate { d, sequence, moves } => {
            let seq = sequence_arg(sequence, *d)?;
            let move_set = match moves.as_str() {
                "hurwitz" => MoveSet::Hurwitz,
                "all" => MoveSet::HurwitzAndGeodesic,
                other => return Err(domain(format!("unknown move set {other:?}"))),
            };
            let members = orbits::orbit(&seq, move_set, g.node_cap).map_err(Error::from)?;
            let representative = &members[0];
            let out = OrbitReportOut {
                orbit_count: 1,
                orbits: vec![OrbitOut {
                    size: members.len(),
                    normal_form: representative.normal_form(),
                    representative: factor_images(representative),
                }],
            };
            emit(&out)
        }
        OrbitsOp::Classify { d, k, all_elements } => {
            let report = orbits::classify_components(*d, *k, !all_elements, g.node_cap)
                .map_err(Error::from)?;
            let out = OrbitReportOut {
                orbit_count: report.orbit_count,
                orbits: report
                    .orbits
                    .into_iter()
                    .map(|o| OrbitOut {
                        size: o.size,
                        representative: factor_images(&o.representative),
                        normal_form: o.normal_form,
                    })
                    .collect(),
            };
            emit(&out)
        }
        OrbitsOp::Split { d, sequence } => {
            #[derive(Serialize)]
            struct SplitOut {
                parts: Vec<FactorSequence>,
            }
            let seq = sequence_arg(sequence, *d)?;
            emit(&SplitOut {
                parts: orbits::split_by_blocks(&seq),
            })
        }
    }
}

fn monodromy_config(g: &GlobalOpts) -> MonodromyConfig {
    MonodromyConfig {
        cluster_tol: g.tolerance,
        ..MonodromyConfig::default()
    }
}

fn run_monodromy(op: &MonodromyOp, g: &GlobalOpts) -> Result<(), CliError> {
    match op {
        MonodromyOp::Compute { coeffs, degree } => {
            let f = MonicPolynomial::parse(coeffs, *degree).map_err(Error::from)?;
            let cfg = monodromy::monodromy(&f, &monodromy_config(g)).map_err(Error::from)?;
            emit(&cfg)
        }
        MonodromyOp::Rescale { coeffs, degree } => {
            #[derive(Serialize)]
            struct ComplexOut {
                re: f64,
                im: f64,
            }
            #[derive(Serialize)]
            struct RescaleOut {
                degree: usize,
                t: f64,
                offset: ComplexOut,
                coeffs: Vec<ComplexOut>,
            }
            let f = MonicPolynomial::parse(coeffs, *degree).map_err(Error::from)?;
            let r =
                monodromy::rescale_into_rectangle(&f, &monodromy_config(g)).map_err(Error::from)?;
            let c = |z: Complex64| ComplexOut { re: z.re, im: z.im };
            emit(&RescaleOut {
                degree: *degree,
                t: r.t,
                offset: c(r.offset),
                coeffs: r.poly.coeffs().iter().map(|&z| c(z)).collect(),
            })
        }
    }
}

fn run_dims(op: &DimsOp, g: &GlobalOpts) -> Result<(), CliError> {
    match op {
        DimsOp::Table {
            g_max,
            n_max,
            d_max,
        } => match g.output {
            Output::Csv => {
                print!("{}", dims::dims_table_csv(*g_max, *n_max, *d_max));
                Ok(())
            }
            Output::Json => emit(&dims::dims_table(*g_max, *n_max, *d_max)),
        },
        DimsOp::EulerCheck { input } => {
            let text = if input == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| domain(e.to_string()))?;
                buf
            } else {
                std::fs::read_to_string(input).map_err(|e| domain(format!("{input}: {e}")))?
            };
            let cfg: HurwitzConfiguration = serde_json::from_str(&text)
                .map_err(|e| domain(format!("invalid configuration: {e}")))?;
            let report = dims::euler_check(&cfg);
            if !report.consistent {
                emit(&report)?;
                return Err(CliError {
                    code: EXIT_NUMERICAL,
                    message: "Euler characteristics disagree".into(),
                });
            }
            emit(&report)
        }
    }
}

fn run_cohomology(op: &CohomologyOp, g: &GlobalOpts) -> Result<(), CliError> {
    match op {
        CohomologyOp::Basis { d, m } => {
            #[derive(Serialize)]
            struct BasisOut {
                d: usize,
                m: usize,
                dim: usize,
                basis: Vec<hurlab_core::CycleType>,
            }
            if *d < 2 {
                return Err(domain("the ambient degree must be at least 2"));
            }
            let basis = cohomology::conjugacy_basis(*d, *m);
            emit(&BasisOut {
                d: *d,
                m: *m,
                dim: basis.len(),
                basis,
            })
        }
        CohomologyOp::Table { d, max_m } => {
            if *d < 2 {
                return Err(domain("the ambient degree must be at least 2"));
            }
            let table = cohomology::dim_table(*d, *max_m);
            match g.output {
                Output::Csv => {
                    print!("{}", table.to_csv());
                    Ok(())
                }
                Output::Json => emit(&table),
            }
        }
        CohomologyOp::StabMap { d, m } => {
            #[derive(Serialize)]
            struct StabOut {
                #[serde(flatten)]
                map: cohomology::StabilizationMap,
                surjective: bool,
                bijective: bool,
            }
            if *d < 2 {
                return Err(domain("the ambient degree must be at least 2"));
            }
            let map = cohomology::stabilization_map(*d, *m);
            let (surjective, bijective) = (map.is_surjective(), map.is_bijective());
            emit(&StabOut {
                map,
                surjective,
                bijective,
            })
        }
    }
}

fn run_verify(op: &VerifyOp, g: &GlobalOpts) -> Result<(), CliError> {
    let VerifyOp::All { only } = op;
    let mut cfg = VerifyConfig {
        seed: g.seed,
        node_cap: g.node_cap,
        ..VerifyConfig::default()
    };
    cfg.monodromy.cluster_tol = g.tolerance;
    let reports = match only {
        Some(list) => {
            let ids: Vec<usize> = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| domain(format!("invalid criterion list {list:?}: {e}")))?;
            if ids.iter().any(|id| !(1..=11).contains(id)) {
                return Err(domain("criterion ids run from 1 to 11"));
            }
            verify::run_selected(&cfg, &ids)
        }
        None => verify::run_all(&cfg),
    };
    let mut all_passed = true;
    for report in &reports {
        println!("{}", report.line());
        all_passed &= report.passed;
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_DOMAIN,
            message: "verification failed".into(),
        })
    }
}
