//! Command-line surface of the engine: JSON in, JSON out, exact rationals
//! only.
//!
//! Exit codes: 0 success (and any checked property holds), 1 a checked
//! property fails (a JSON diagnostic is printed), 2 invalid input.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use virasoro::json as vjson;
use virasoro::{
    kac_factor, monomials_of_level, singular_vectors, verma_is_simple, Factor, FreeVec, Induced,
    Omega, QPbwVector, QPoly, QTensorVector, QUeaElement, Scalar, SimpleQuotient, Simplicity,
    Tensor, Truncation, UeaWord, VacuumModule, Verma, VirasoroModule, Whittaker, Q,
};

#[derive(Parser)]
#[command(
    name = "virasoro",
    about = "Exact computations in Virasoro modules: actions, bracket checks, singular vectors, simplicity criteria, closures and isomorphism reports",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ModuleArgs {
    /// Module family: omega | verma | vacuum | simple-quotient | whittaker | induced | tensor.
    #[arg(long)]
    family: String,

    /// Nonzero evaluation point (omega, induced, tensor; defaults to 1 for
    /// induced n = 0).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,

    /// Polynomial-module parameter b (omega, tensor).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,

    /// Central charge.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,

    /// Highest weight (verma, simple-quotient; tensor factor).
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,

    /// Family index n (whittaker, induced).
    #[arg(long)]
    n: Option<u32>,

    /// Comma-separated character values lambda_n..lambda_2n (whittaker).
    #[arg(long, allow_hyphen_values = true)]
    lambdas: Option<String>,

    /// Comma-separated defining scalars s_n..s_2n (induced).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,

    /// Single defining scalar for induced n = 0 (alias for --s).
    #[arg(long, allow_hyphen_values = true)]
    s0: Option<String>,

    /// Factor family for tensor modules: verma | vacuum | simple-quotient | whittaker.
    #[arg(long)]
    factor: Option<String>,

    /// Working-level cap for simple quotients.
    #[arg(long)]
    level_cap: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply d_k or an enveloping-algebra element to a vector.
    Act {
        #[command(flatten)]
        module: ModuleArgs,
        /// Generator index k for a single d_k.
        #[arg(long, allow_hyphen_values = true)]
        index: Option<i64>,
        /// Enveloping-algebra element, e.g. '[{"word":[1,-1],"coeff":"2"}]'.
        #[arg(long)]
        element: Option<String>,
        /// Input vector (inline JSON, @file, or - for stdin).
        #[arg(long)]
        vector: String,
    },
    /// Sweep the commutator defect d_i d_j - d_j d_i - [d_i, d_j] over a basis.
    BracketCheck {
        #[command(flatten)]
        module: ModuleArgs,
        /// Check all |i|, |j| up to this bound.
        #[arg(long, default_value_t = 6)]
        range: i64,
        /// Basis degree/level cap.
        #[arg(long, default_value_t = 4)]
        deg: u32,
    },
    /// Singular vectors of a Verma module at an exact level.
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        level: u32,
    },
    /// Kac factor table over the k*l <= max-kl grid.
    Kac {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 6)]
        max_kl: u32,
    },
    /// Simplicity criterion of any family (tri-state plus witness).
    Simplicity {
        #[command(flatten)]
        module: ModuleArgs,
        /// Kac scan bound for the highest-weight criteria.
        #[arg(long, default_value_t = virasoro::DEFAULT_KAC_BOUND)]
        bound: u32,
    },
    /// Certify the induced-module/tensor-product isomorphism at window scale.
    IsoVerify {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Comma-separated defining scalars s_n..s_2n.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Window D,L,K (default from VIRASORO_WINDOW or 6,4,6).
        #[arg(long)]
        window: Option<String>,
    },
    /// Truncated cyclic closure of generators, optionally with a shape report.
    Closure {
        #[command(flatten)]
        module: ModuleArgs,
        /// Generator vector (repeatable; inline JSON, @file or -).
        #[arg(long)]
        generator: Vec<String>,
        /// Additionally use this many seeded pseudo-random window vectors.
        #[arg(long, default_value_t = 0)]
        random_generators: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        window: Option<String>,
        /// Also analyze the submodule shape of the closure.
        #[arg(long, default_value_t = false)]
        shape: bool,
        /// Inner margin for the shape analysis.
        #[arg(long, default_value_t = 1)]
        margin: u32,
    },
    /// Apply the quadratic operator w^(s)_{l,m} to a vector.
    OmegaOp {
        #[command(flatten)]
        module: ModuleArgs,
        /// Superscript s (number of terms minus one).
        #[arg(long = "op-s")]
        op_s: u32,
        /// First subscript l.
        #[arg(long = "op-l", allow_hyphen_values = true)]
        op_l: i64,
        /// Second subscript m.
        #[arg(long = "op-m", allow_hyphen_values = true)]
        op_m: i64,
        #[arg(long)]
        vector: String,
    },
    /// Compare two tensor modules for isomorphism (both must be irreducible).
    Classify {
        /// Left module descriptor, e.g.
        /// '{"lambda":"1","b":"2","factor":{"family":"verma","theta":"0","h":"1/2"}}'.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = virasoro::DEFAULT_KAC_BOUND)]
        bound: u32,
    },
}

enum CliError {
    /// Exit 2: the input could not be parsed or is inconsistent.
    Invalid(String),
    /// Exit 1: a checked property failed; carries the diagnostic document.
    CheckFailed(Value),
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }
}

impl From<virasoro::VirasoroError> for CliError {
    fn from(e: virasoro::VirasoroError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn parse_q(label: &str, lit: &str) -> Result<Q, CliError> {
    Q::parse_str(lit).map_err(|e| CliError::invalid(format!("{label}: {e}")))
}

fn parse_q_list(label: &str, lit: &str) -> Result<Vec<Q>, CliError> {
    lit.split(',')
        .map(|part| parse_q(label, part.trim()))
        .collect()
}

fn require<'a, T>(opt: &'a Option<T>, flag: &str, family: &str) -> Result<&'a T, CliError> {
    opt.as_ref()
        .ok_or_else(|| CliError::invalid(format!("--{flag} is required for family `{family}`")))
}

fn is_zero(v: &Q) -> bool {
    *v == Q::from_i64(0)
}

fn parse_nonzero(label: &str, lit: &str) -> Result<Q, CliError> {
    let v = parse_q(label, lit)?;
    if is_zero(&v) {
        return Err(CliError::invalid(format!("{label} must be nonzero")));
    }
    Ok(v)
}

fn read_payload(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("cannot read {path}: {e}")))
    } else if arg == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::invalid(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        Ok(arg.to_string())
    }
}

/// Truncation window from the flag, the VIRASORO_WINDOW environment
/// variable, or the (6, 4, 6) default.
fn parse_window(flag: &Option<String>) -> Result<Truncation, CliError> {
    let spec = match flag {
        Some(s) => Some(s.clone()),
        None => std::env::var("VIRASORO_WINDOW").ok(),
    };
    let Some(spec) = spec else {
        return Ok(Truncation::default());
    };
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::invalid(format!(
            "window must be D,L,K (got `{spec}`)"
        )));
    }
    let nums: Vec<u64> = parts
        .iter()
        .map(|p| {
            p.parse::<u64>()
                .map_err(|e| CliError::invalid(format!("window component `{p}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if nums.contains(&0) {
        return Err(CliError::invalid("window components must be positive"));
    }
    if nums.iter().any(|&x| x > 64) {
        return Err(CliError::invalid("window components above 64 are not tractable"));
    }
    Ok(Truncation::new(nums[0] as u32, nums[1] as u32, nums[2] as i64))
}

/// A constructed module of any catalog family.
enum Module {
    Omega(Omega<Q>),
    Verma(Verma<Q>),
    Vacuum(VacuumModule<Q>),
    SimpleQuotient(SimpleQuotient<Q>),
    Whittaker(Whittaker<Q>),
    Induced(Induced<Q>),
    Tensor(Tensor<Q>),
}

fn build_factor(args: &ModuleArgs) -> Result<Factor<Q>, CliError> {
    let family = require(&args.factor, "factor", &args.family)?;
    match family.as_str() {
        "verma" => Ok(Factor::Verma(Verma::new(
            parse_q("--theta", require(&args.theta, "theta", family)?)?,
            parse_q("--h", require(&args.h, "h", family)?)?,
        ))),
        "vacuum" => Ok(Factor::Vacuum(VacuumModule::new(parse_q(
            "--theta",
            require(&args.theta, "theta", family)?,
        )?))),
        "simple-quotient" => {
            let theta = parse_q("--theta", require(&args.theta, "theta", family)?)?;
            let h = parse_q("--h", require(&args.h, "h", family)?)?;
            let cap = args.level_cap.unwrap_or(12);
            Ok(Factor::SimpleQuotient(SimpleQuotient::with_level_cap(
                theta, h, cap,
            )))
        }
        "whittaker" => {
            let n = *require(&args.n, "n", family)?;
            if n == 0 {
                return Err(CliError::invalid("whittaker index n must be positive"));
            }
            let theta = parse_q("--theta", require(&args.theta, "theta", family)?)?;
            let lambdas = parse_q_list("--lambdas", require(&args.lambdas, "lambdas", family)?)?;
            if lambdas.len() != n as usize + 1 {
                return Err(CliError::invalid(format!(
                    "--lambdas needs {} values for n = {n}",
                    n + 1
                )));
            }
            Ok(Factor::Whittaker(Whittaker::new(n, theta, lambdas)))
        }
        other => Err(CliError::invalid(format!("unknown factor family `{other}`"))),
    }
}

fn build_module(args: &ModuleArgs) -> Result<Module, CliError> {
    match args.family.as_str() {
        "omega" => Ok(Module::Omega(Omega::new(
            parse_nonzero("--lambda", require(&args.lambda, "lambda", "omega")?)?,
            parse_q("--b", require(&args.b, "b", "omega")?)?,
        ))),
        "verma" => Ok(Module::Verma(Verma::new(
            parse_q("--theta", require(&args.theta, "theta", "verma")?)?,
            parse_q("--h", require(&args.h, "h", "verma")?)?,
        ))),
        "vacuum" => Ok(Module::Vacuum(VacuumModule::new(parse_q(
            "--theta",
            require(&args.theta, "theta", "vacuum")?,
        )?))),
        "simple-quotient" => Ok(Module::SimpleQuotient(SimpleQuotient::with_level_cap(
            parse_q("--theta", require(&args.theta, "theta", "simple-quotient")?)?,
            parse_q("--h", require(&args.h, "h", "simple-quotient")?)?,
            args.level_cap.unwrap_or(12),
        ))),
        "whittaker" => {
            let n = *require(&args.n, "n", "whittaker")?;
            if n == 0 {
                return Err(CliError::invalid("whittaker index n must be positive"));
            }
            let theta = parse_q("--theta", require(&args.theta, "theta", "whittaker")?)?;
            let lambdas =
                parse_q_list("--lambdas", require(&args.lambdas, "lambdas", "whittaker")?)?;
            if lambdas.len() != n as usize + 1 {
                return Err(CliError::invalid(format!(
                    "--lambdas needs {} values for n = {n}",
                    n + 1
                )));
            }
            Ok(Module::Whittaker(Whittaker::new(n, theta, lambdas)))
        }
        "induced" => {
            let n = *require(&args.n, "n", "induced")?;
            // the n = 0 member's criteria do not involve lambda, so it may
            // be omitted there; every other n needs it
            let lambda = match (&args.lambda, n) {
                (Some(l), _) => parse_nonzero("--lambda", l)?,
                (None, 0) => Q::from_i64(1),
                (None, _) => return Err(CliError::invalid("--lambda is required for induced n >= 1")),
            };
            let theta = parse_q("--theta", require(&args.theta, "theta", "induced")?)?;
            let s = match (&args.s, &args.s0) {
                (Some(list), None) => parse_q_list("--s", list)?,
                (None, Some(single)) => vec![parse_q("--s0", single)?],
                (Some(_), Some(_)) => {
                    return Err(CliError::invalid("use either --s or --s0, not both"))
                }
                (None, None) => return Err(CliError::invalid("--s is required for `induced`")),
            };
            if s.len() != n as usize + 1 {
                return Err(CliError::invalid(format!(
                    "--s needs {} values for n = {n}",
                    n + 1
                )));
            }
            Ok(Module::Induced(Induced::new(n, lambda, theta, s)))
        }
        "tensor" => {
            let lambda = parse_nonzero("--lambda", require(&args.lambda, "lambda", "tensor")?)?;
            let b = parse_q("--b", require(&args.b, "b", "tensor")?)?;
            Ok(Module::Tensor(Tensor::new(lambda, b, build_factor(args)?)))
        }
        other => Err(CliError::invalid(format!("unknown family `{other}`"))),
    }
}

fn parse_poly(payload: &str) -> Result<QPoly, CliError> {
    let terms: Vec<vjson::PolyTerm> = serde_json::from_str(payload)
        .map_err(|e| CliError::invalid(format!("polynomial vector: {e}")))?;
    Ok(vjson::poly_from_terms(&terms)?)
}

fn parse_pbw(
    payload: &str,
    expected_family: &str,
    expected_n: Option<u32>,
) -> Result<QPbwVector, CliError> {
    let doc: vjson::PbwVectorDoc =
        serde_json::from_str(payload).map_err(|e| CliError::invalid(format!("pbw vector: {e}")))?;
    doc.check_family(expected_family, expected_n)?;
    Ok(vjson::pbw_from_terms(doc.terms())?)
}

/// Enforce the family's PBW alphabet: only generators d_j with j <= bound
/// may appear in basis monomials.
fn check_alphabet(v: &QPbwVector, bound: i64, family: &str) -> Result<(), CliError> {
    for key in v.keys() {
        if let Some(lead) = key.leading_index() {
            if lead > bound {
                return Err(CliError::invalid(format!(
                    "monomial {key} uses d_{{{lead}}}, outside the `{family}` alphabet (indices <= {bound})"
                )));
            }
        }
    }
    Ok(())
}

fn parse_pbw_checked(
    payload: &str,
    expected_family: &str,
    expected_n: Option<u32>,
    alphabet_bound: i64,
) -> Result<QPbwVector, CliError> {
    let v = parse_pbw(payload, expected_family, expected_n)?;
    check_alphabet(&v, alphabet_bound, expected_family)?;
    Ok(v)
}

fn parse_tensor_vec(payload: &str) -> Result<QTensorVector, CliError> {
    let terms: Vec<vjson::TensorTerm> = serde_json::from_str(payload)
        .map_err(|e| CliError::invalid(format!("tensor vector: {e}")))?;
    Ok(vjson::tensor_from_terms(&terms)?)
}

fn parse_tensor_checked(payload: &str, tensor: &Tensor<Q>) -> Result<QTensorVector, CliError> {
    let v = parse_tensor_vec(payload)?;
    let bound = tensor.factor().char_start() - 1;
    for (_, key) in v.keys() {
        if key.leading_index().is_some_and(|lead| lead > bound) {
            return Err(CliError::invalid(format!(
                "tensor factor key {key} uses a generator outside the factor alphabet (indices <= {bound})"
            )));
        }
    }
    Ok(v)
}

#[derive(serde::Deserialize)]
struct UeaTermDoc {
    #[serde(default)]
    word: Vec<i64>,
    #[serde(default)]
    central_power: u32,
    coeff: String,
}

fn parse_element(payload: &str) -> Result<QUeaElement, CliError> {
    let terms: Vec<UeaTermDoc> =
        serde_json::from_str(payload).map_err(|e| CliError::invalid(format!("element: {e}")))?;
    let mut e = QUeaElement::zero();
    for t in terms {
        let coeff = parse_q("coeff", &t.coeff)?;
        e.add_term(
            UeaWord {
                factors: t.word,
                central_power: t.central_power,
            },
            coeff,
        );
    }
    Ok(e)
}

fn element_for(index: Option<i64>, element: &Option<String>) -> Result<QUeaElement, CliError> {
    match (index, element) {
        (Some(k), None) => Ok(QUeaElement::basis(UeaWord::generator(k))),
        (None, Some(json)) => parse_element(&read_payload(json)?),
        _ => Err(CliError::invalid(
            "provide exactly one of --index, --element",
        )),
    }
}

fn pbw_value(v: &QPbwVector) -> Value {
    serde_json::to_value(vjson::pbw_to_terms(v)).expect("serialize")
}

fn tensor_value(v: &QTensorVector) -> Value {
    serde_json::to_value(vjson::tensor_to_terms(v)).expect("serialize")
}

fn poly_value(v: &QPoly) -> Value {
    serde_json::to_value(vjson::poly_to_terms(v)).expect("serialize")
}

/// Header fields describing the module a vector belongs to.
fn module_header(module: &Module) -> Value {
    match module {
        Module::Omega(m) => json!({
            "family": "omega",
            "lambda": m.lambda().to_string(),
            "b": m.b().to_string(),
        }),
        Module::Verma(m) => json!({
            "family": "verma",
            "theta": m.theta().to_string(),
            "h": m.h().to_string(),
        }),
        Module::Vacuum(m) => json!({
            "family": "vacuum",
            "theta": m.theta().to_string(),
        }),
        Module::SimpleQuotient(m) => json!({
            "family": "simple-quotient",
            "theta": m.theta().to_string(),
            "h": m.h().to_string(),
        }),
        Module::Whittaker(m) => json!({
            "family": "whittaker",
            "n": m.n(),
            "theta": m.theta().to_string(),
            "lambdas": m.lambdas().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
        Module::Induced(m) => json!({
            "family": "induced",
            "n": m.n(),
            "lambda": m.lambda().to_string(),
            "theta": m.theta().to_string(),
            "s": m.s().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
        Module::Tensor(m) => json!({
            "family": "tensor",
            "lambda": m.lambda().to_string(),
            "b": m.b().to_string(),
            "factor": m.factor().family_name(),
        }),
    }
}

/// Apply an element in whichever family was requested and serialize.
fn apply_in_module(module: Module, e: &QUeaElement, payload: &str) -> Result<Value, CliError> {
    Ok(match module {
        Module::Omega(m) => poly_value(&m.apply_element(e, &parse_poly(payload)?)),
        Module::Verma(m) => {
            pbw_value(&m.apply_element(e, &parse_pbw_checked(payload, "verma", None, -1)?))
        }
        Module::Vacuum(m) => {
            pbw_value(&m.apply_element(e, &parse_pbw_checked(payload, "vacuum", None, -1)?))
        }
        Module::SimpleQuotient(m) => {
            pbw_value(&m.apply_element(e, &parse_pbw_checked(payload, "simple-quotient", None, -1)?))
        }
        Module::Whittaker(m) => {
            let bound = m.n() as i64 - 1;
            pbw_value(&m.apply_element(
                e,
                &parse_pbw_checked(payload, "whittaker", Some(m.n()), bound)?,
            ))
        }
        Module::Induced(m) => {
            let bound = m.n() as i64 - 1;
            pbw_value(&m.apply_element(
                e,
                &parse_pbw_checked(payload, "induced", Some(m.n()), bound)?,
            ))
        }
        Module::Tensor(m) => {
            let v = parse_tensor_checked(payload, &m)?;
            tensor_value(&m.apply_element(e, &v))
        }
    })
}

fn pbw_basis(char_start: i64, deg: u32) -> Vec<QPbwVector> {
    (0..=deg)
        .flat_map(|l| monomials_of_level(char_start, l))
        .map(QPbwVector::basis)
        .collect()
}

fn sweep<M: VirasoroModule<Q>>(
    module: &M,
    basis: &[FreeVec<M::Key, Q>],
    range: i64,
) -> (usize, Option<Value>) {
    let mut checked = 0usize;
    for v in basis {
        for i in -range..=range {
            for j in -range..=range {
                checked += 1;
                if !module.commutator_defect(i, j, v).is_zero() {
                    return (checked, Some(json!({ "i": i, "j": j })));
                }
            }
        }
    }
    (checked, None)
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Act {
            module,
            index,
            element,
            vector,
        } => {
            let e = element_for(*index, element)?;
            let payload = read_payload(vector)?;
            let built = build_module(module)?;
            let mut doc = module_header(&built);
            doc["result"] = apply_in_module(built, &e, &payload)?;
            Ok(doc)
        }

        Command::BracketCheck { module, range, deg } => {
            let (checked, failure) = match build_module(module)? {
                Module::Omega(m) => {
                    let basis: Vec<QPoly> = (0..=*deg).map(QPoly::basis).collect();
                    sweep(&m, &basis, *range)
                }
                Module::Verma(m) => sweep(&m, &pbw_basis(0, *deg), *range),
                Module::Vacuum(m) => {
                    let basis: Vec<QPbwVector> =
                        (0..=*deg).flat_map(|l| m.level_basis(l)).collect();
                    sweep(&m, &basis, *range)
                }
                Module::SimpleQuotient(m) => {
                    let mut basis = Vec::new();
                    for l in 0..=*deg {
                        basis.extend(m.level_basis(l)?);
                    }
                    sweep(&m, &basis, *range)
                }
                Module::Whittaker(m) => {
                    let basis = pbw_basis(m.n() as i64, *deg);
                    sweep(&m, &basis, *range)
                }
                Module::Induced(m) => {
                    let basis = pbw_basis(m.n() as i64, *deg);
                    sweep(&m, &basis, *range)
                }
                Module::Tensor(m) => {
                    let mut basis = Vec::new();
                    for i in 0..=*deg {
                        for lvl in 0..=*deg {
                            for f in monomials_of_level(m.factor().char_start(), lvl) {
                                basis.push(m.pure_tensor(i, f));
                            }
                        }
                    }
                    sweep(&m, &basis, *range)
                }
            };
            match failure {
                None => Ok(json!({
                    "defects": 0,
                    "checked": checked,
                    "range": range,
                    "deg": deg,
                })),
                Some(diag) => Err(CliError::CheckFailed(json!({
                    "error": "nonzero commutator defect",
                    "at": diag,
                    "checked": checked,
                }))),
            }
        }

        Command::Singular { theta, h, level } => {
            let verma = Verma::new(parse_q("--theta", theta)?, parse_q("--h", h)?);
            let vectors = singular_vectors(&verma, *level);
            Ok(json!({
                "level": level,
                "count": vectors.len(),
                "vectors": vectors.iter().map(pbw_value).collect::<Vec<_>>(),
            }))
        }

        Command::Kac { theta, h, max_kl } => {
            let theta = parse_q("--theta", theta)?;
            let h = parse_q("--h", h)?;
            let mut rows = Vec::new();
            let mut zero_at = Vec::new();
            for k in 1..=*max_kl {
                for l in k..=*max_kl {
                    if k * l > *max_kl {
                        continue;
                    }
                    let v = kac_factor(&theta, &h, k, l);
                    if is_zero(&v) {
                        zero_at.push(json!({ "k": k, "l": l }));
                    }
                    rows.push(json!({ "k": k, "l": l, "factor": v.to_string() }));
                }
            }
            Ok(json!({ "table": rows, "zeros": zero_at }))
        }

        Command::Simplicity { module, bound } => {
            let verdict = match build_module(module)? {
                Module::Omega(m) => {
                    if m.is_simple() {
                        Simplicity::Simple
                    } else {
                        Simplicity::NotSimple(Some(virasoro::KacWitness::ZeroParameter("b = 1")))
                    }
                }
                Module::Verma(m) => verma_is_simple(m.theta(), m.h(), *bound),
                Module::Vacuum(m) => m.is_simple(),
                Module::SimpleQuotient(_) => Simplicity::Simple,
                Module::Whittaker(m) => m.is_simple(),
                Module::Induced(m) => m.is_simple(*bound),
                Module::Tensor(m) => m.is_simple(*bound),
            };
            Ok(serde_json::to_value(&verdict).expect("serialize"))
        }

        Command::IsoVerify {
            n,
            lambda,
            theta,
            s,
            window,
        } => {
            let s = parse_q_list("--s", s)?;
            if s.len() != *n as usize + 1 {
                return Err(CliError::invalid(format!(
                    "--s needs {} values for n = {n}",
                    n + 1
                )));
            }
            let induced = Induced::new(
                *n,
                parse_nonzero("--lambda", lambda)?,
                parse_q("--theta", theta)?,
                s,
            );
            let window = parse_window(window)?;
            let report = induced.iso_verify(&window)?;
            let doc = json!({
                "n": report.n,
                "b": report.b.to_string(),
                "factor_family": report.factor_family,
                "window": report.window,
                "relations": report.relation_checks.iter()
                    .map(|(k, ok)| json!({ "k": k, "holds": ok }))
                    .collect::<Vec<_>>(),
                "commutation_checks": report.commutation_checks,
                "commutation_failures": report.commutation_failures,
                "basis_count": report.basis_count,
                "image_rank": report.image_rank,
                "leading_failures": report.leading_failures,
                "passed": report.passed,
            });
            if report.passed {
                Ok(doc)
            } else {
                Err(CliError::CheckFailed(doc))
            }
        }

        Command::Closure {
            module,
            generator,
            random_generators,
            seed,
            window,
            shape,
            margin,
        } => {
            let Module::Tensor(tensor) = build_module(module)? else {
                return Err(CliError::invalid("closure requires --family tensor"));
            };
            let window = parse_window(window)?;
            let mut generators: Vec<QTensorVector> = Vec::new();
            for g in generator {
                generators.push(parse_tensor_checked(&read_payload(g)?, &tensor)?);
            }
            if *random_generators > 0 {
                generators.extend(tensor.seeded_window_vectors(
                    &window,
                    *random_generators,
                    *seed,
                )?);
            }
            if generators.is_empty() {
                return Err(CliError::invalid(
                    "no generators: pass --generator and/or --random-generators",
                ));
            }
            let closure = tensor.cyclic_closure(&generators, &window)?;
            let basis: Vec<Value> = closure.basis().map(tensor_value).collect();
            let mut doc = json!({
                "window": window,
                "generators": generators.len(),
                "rank": closure.rank(),
                "basis": basis,
            });
            if *shape {
                let report = tensor.submodule_shape(&closure, &window, *margin)?;
                doc["shape"] = json!({
                    "b_is_one": report.b_is_one,
                    "holds": report.holds,
                    "factor_rank": report.factor_space.rank(),
                    "zero_slice_rank": report.zero_slice_space.as_ref().map(|s| s.rank()),
                    "checked_products": report.checked_products,
                    "failures": report.failures,
                });
                if !report.holds {
                    return Err(CliError::CheckFailed(doc));
                }
            }
            Ok(doc)
        }

        Command::OmegaOp {
            module,
            op_s,
            op_l,
            op_m,
            vector,
        } => {
            let e: QUeaElement = virasoro::omega_operator(*op_s, *op_l, *op_m);
            let payload = read_payload(vector)?;
            let built = build_module(module)?;
            let mut doc = module_header(&built);
            doc["s"] = json!(op_s);
            doc["l"] = json!(op_l);
            doc["m"] = json!(op_m);
            doc["result"] = apply_in_module(built, &e, &payload)?;
            Ok(doc)
        }

        Command::Classify { left, right, bound } => {
            let left = parse_tensor_descriptor(&read_payload(left)?)?;
            let right = parse_tensor_descriptor(&read_payload(right)?)?;
            let ls = left.is_simple(*bound);
            let rs = right.is_simple(*bound);
            let decided = !ls.is_definitely_not_simple() && !rs.is_definitely_not_simple();
            Ok(json!({
                "left_simplicity": serde_json::to_value(&ls).expect("serialize"),
                "right_simplicity": serde_json::to_value(&rs).expect("serialize"),
                "isomorphic": if decided {
                    Value::from(left.same_isomorphism_class(&right))
                } else {
                    Value::Null
                },
                "note": if decided { Value::Null } else {
                    Value::from("comparison requires both modules irreducible")
                },
            }))
        }
    }
}

#[derive(serde::Deserialize)]
struct TensorDescriptor {
    lambda: String,
    b: String,
    factor: FactorDescriptor,
}

#[derive(serde::Deserialize)]
struct FactorDescriptor {
    family: String,
    #[serde(default)]
    theta: Option<String>,
    #[serde(default)]
    h: Option<String>,
    #[serde(default)]
    n: Option<u32>,
    #[serde(default)]
    lambdas: Option<Vec<String>>,
}

fn parse_tensor_descriptor(payload: &str) -> Result<Tensor<Q>, CliError> {
    let desc: TensorDescriptor = serde_json::from_str(payload)
        .map_err(|e| CliError::invalid(format!("module descriptor: {e}")))?;
    let lambda = parse_nonzero("lambda", &desc.lambda)?;
    let b = parse_q("b", &desc.b)?;
    let args = ModuleArgs {
        family: "tensor".into(),
        factor: Some(desc.factor.family),
        theta: desc.factor.theta,
        h: desc.factor.h,
        n: desc.factor.n,
        lambdas: desc.factor.lambdas.map(|v| v.join(",")),
        ..Default::default()
    };
    Ok(Tensor::new(lambda, b, build_factor(&args)?))
}

fn render_text(value: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", render_text(v, indent + 1))
                }
                _ => format!("{pad}{k}: {}", render_scalar(v)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}-\n{}", render_text(v, indent + 1))
                }
                _ => format!("{pad}- {}", render_scalar(v)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => format!("{pad}{}", render_scalar(other)),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() {
    let cli = Cli::parse();
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(CliError::CheckFailed(v)) => (v, 1),
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    if cli.format == "text" {
        println!("{}", render_text(&value, 0));
    } else {
        println!("{}", serde_json::to_string(&value).expect("serialize"));
    }
    std::process::exit(code);
}
