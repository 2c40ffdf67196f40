use std::fs;
use std::process::ExitCode;

use atomlab::arith::Rational;
use atomlab::check::{self, CheckParams, Suite, Summary};
use atomlab::ff::{
    binomial_irreducible, factorize, is_irreducible_with, trinomial, trinomial_parameter, FpElem, OracleConfig,
};
use atomlab::monoid::{generators, is_atom_bounded, membership, GeneratorSchedule, PuiseuxMonoidSpec};
use atomlab::parse::{parse_fppoly, parse_polyexpr, parse_subring};
use atomlab::semidomain::{ascent_factorization, atom_test_bounded, support_in_monoid, AtomTestBudget, CoeffDomain};
use atomlab::subring::{
    almost_atomic_witness, is_atomic_element, quasi_atomic_witness, refute_quasi_atomic_candidate, shipped_candidates,
    Candidate, ProbeBudget, SubringSpec,
};
use atomlab::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "atomlab", version, about = "Exact computations on Puiseux monoids, monoid algebras and subrings of Q(s,t)[x]")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// seed for the randomised checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    budget: Budget,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Budget {
    /// largest degree checked by exhaustive trial division in the irreducibility oracle
    #[arg(long, global = true, default_value_t = OracleConfig::default().exhaustive_max_degree)]
    budget_oracle_degree: usize,
    /// largest number of trial divisors before the oracle switches to the Frobenius test
    #[arg(long, global = true, default_value_t = OracleConfig::default().exhaustive_max_candidates)]
    budget_oracle_candidates: u64,
    /// largest j in the denominators D (qr)^j tried by the atom test
    #[arg(long, global = true, default_value_t = AtomTestBudget::default().max_power)]
    budget_atom_power: u32,
    /// largest cleared degree handed to the factorizer by the atom test
    #[arg(long, global = true, default_value_t = AtomTestBudget::default().max_degree)]
    budget_atom_degree: usize,
    /// largest number of factor groupings examined per denominator
    #[arg(long, global = true, default_value_t = AtomTestBudget::default().max_splits)]
    budget_atom_splits: u64,
    /// largest x-degree of a trial divisor in the irreducibility probe
    #[arg(long, global = true, default_value_t = ProbeBudget::default().max_x_degree)]
    budget_probe_x_degree: usize,
    /// largest y-degree of a trial divisor in the irreducibility probe
    #[arg(long, global = true, default_value_t = ProbeBudget::default().max_y_degree)]
    budget_probe_y_degree: usize,
    /// largest numerator or denominator degree of a trial scalar
    #[arg(long, global = true, default_value_t = ProbeBudget::default().max_complexity)]
    budget_probe_complexity: u32,
    /// integer rescalings 1..=N tried on a trial divisor
    #[arg(long, global = true, default_value_t = ProbeBudget::default().max_scalar)]
    budget_probe_scalar: i64,
}

impl Budget {
    fn oracle(&self) -> OracleConfig {
        OracleConfig {
            exhaustive_max_degree: self.budget_oracle_degree,
            exhaustive_max_candidates: self.budget_oracle_candidates,
        }
    }

    fn atom_test(&self) -> AtomTestBudget {
        AtomTestBudget {
            max_power: self.budget_atom_power,
            max_degree: self.budget_atom_degree,
            max_splits: self.budget_atom_splits,
        }
    }

    fn probe(&self) -> ProbeBudget {
        ProbeBudget {
            max_x_degree: self.budget_probe_x_degree,
            max_y_degree: self.budget_probe_y_degree,
            max_complexity: self.budget_probe_complexity,
            max_scalar: self.budget_probe_scalar,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generators, membership and atoms of M_{q,r}
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Polynomials over prime fields
    #[command(subcommand)]
    Ff(FfCmd),
    /// Polynomial expressions with rational exponents
    #[command(subcommand)]
    Semidomain(SemidomainCmd),
    /// The rings Z[x] + K[x]x^2 and the candidate refuter
    #[command(subcommand)]
    Subring(SubringCmd),
    /// Run a verification suite
    #[command(alias = "papercheck")]
    Check(CheckArgs),
}

#[derive(Args)]
struct Qr {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    r: u64,
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// The exponent schedule and the generators a_n, b_n
    Gens {
        #[command(flatten)]
        qr: Qr,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Membership certificate for a rational at a truncation depth
    Member {
        #[command(flatten)]
        qr: Qr,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Bounded atom verdict for a generator label such as a1 or b3
    Atomcheck {
        #[command(flatten)]
        qr: Qr,
        #[arg(long)]
        index: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum FfCmd {
    /// Irreducibility oracle verdict
    Irreducible {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
    },
    /// Factorization into monic irreducibles
    Factor {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
    },
    /// Criterion and oracle for x^t - a
    Binomial {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        a: i64,
    },
    /// The constructed trinomial of degree 2^k and its oracle verdict
    Trinomial {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum SemidomainCmd {
    /// Bounded atom test in F_p[M_{q,r}]
    Atomtest {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        qr: Qr,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Membership certificates for every exponent of an expression
    Support {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        qr: Qr,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Ascent factorization over Z[x] (default) or F_p[x]
    Ascent {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessMode {
    Almost,
    Quasi,
}

#[derive(Subcommand)]
enum SubringCmd {
    /// Atomicity criterion for an element of Z[x] + K[x]x^2
    Atomic {
        /// ZQ, ZQs or ZQst
        #[arg(long, default_value = "ZQ")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiplier turning an element into an atom
    Witness {
        #[arg(long, value_enum)]
        mode: WitnessMode,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Refute candidate factorizations of F (s x^2 y + t x^2)
    Refute {
        /// JSON list of {"F": ..., "factors": [...]}; the bundled corpus when omitted
        #[arg(long)]
        candidates: Option<String>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// prop-mqr, binomials, trinomials, ascent, subring, nonascent or all
    suite: String,
    /// restrict the monoid checks to one (q, r) pair; needs --r as well
    #[arg(long, requires = "r")]
    q: Option<u64>,
    #[arg(long, requires = "q")]
    r: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    pmax: Option<u64>,
    #[arg(long)]
    tmax: Option<u64>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    cases: Option<usize>,
}

type Outcome = Result<(Value, i32), Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Monoid(c) => monoid(c),
        Command::Ff(c) => ff(c, &cli.budget),
        Command::Semidomain(c) => semidomain(c, &cli.budget),
        Command::Subring(c) => subring(c, &cli.budget),
        Command::Check(a) => run_check(a, &cli),
    };
    match result {
        Ok((value, code)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
                Format::Text => print!("{}", render_text(&cli.command, &value)),
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn monoid(c: &MonoidCmd) -> Outcome {
    match c {
        MonoidCmd::Gens { qr, n } => {
            let s = GeneratorSchedule::minimal(qr.q, qr.r, *n)?;
            let gens = (1..=*n)
                .map(|k| {
                    let (a, b) = generators(&s, k)?;
                    Ok(json!({ "n": k, "a": a.to_string(), "b": b.to_string() }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok((json!({ "q": qr.q, "r": qr.r, "ell": s.ell(), "generators": gens }), 0))
        }
        MonoidCmd::Member { qr, target, depth } => {
            let target: Rational = target.parse()?;
            let spec = PuiseuxMonoidSpec::mqr(qr.q, qr.r, *depth)?;
            let cert = membership(&target, &spec);
            Ok((
                json!({
                    "target": target.to_string(),
                    "depth": depth,
                    "member": cert.is_some(),
                    "certificate": cert.map(|c| c.labeled(&spec)),
                }),
                0,
            ))
        }
        MonoidCmd::Atomcheck { qr, index, depth } => {
            let spec = PuiseuxMonoidSpec::mqr(qr.q, qr.r, *depth)?;
            let g = spec
                .by_label(index)
                .ok_or_else(|| Error::Domain(format!("no generator {index} at depth {depth}")))?
                .value
                .clone();
            let v = is_atom_bounded(&g, &spec)?;
            let mut out = json!({ "generator": index, "value": g.to_string() });
            if let atomlab::monoid::AtomVerdict::Reducible { certificate } = &v {
                out["certificate"] = json!(certificate.labeled(&spec));
            }
            out["verdict"] = serde_json::to_value(&v).expect("json")["verdict"].clone();
            out["depth"] = json!(depth);
            Ok((out, 0))
        }
    }
}

fn ff(c: &FfCmd, budget: &Budget) -> Outcome {
    let oracle = budget.oracle();
    match c {
        FfCmd::Irreducible { p, poly } => {
            let f = parse_fppoly(poly, *p)?;
            let irr = is_irreducible_with(&f, &oracle)?;
            Ok((json!({ "p": p, "poly": f.to_string(), "irreducible": irr, "oracle": oracle_json(&oracle) }), 0))
        }
        FfCmd::Factor { p, poly } => {
            let f = parse_fppoly(poly, *p)?;
            Ok((json!({ "p": p, "poly": f.to_string(), "factorization": factorize(&f)? }), 0))
        }
        FfCmd::Binomial { p, t, a } => {
            let a = FpElem::new(*a, *p)?;
            let criterion = binomial_irreducible(*t, a)?;
            let f = parse_fppoly(&format!("x^{t}+{}", (*p - a.value()) % *p), *p)?;
            let irr = is_irreducible_with(&f, &oracle)?;
            Ok((
                json!({ "p": p, "poly": f.to_string(), "criterion": criterion, "oracle": irr, "agree": criterion == irr }),
                0,
            ))
        }
        FfCmd::Trinomial { p, k } => {
            let a = trinomial_parameter(*p)?;
            let f = trinomial(a, *k)?;
            let irr = is_irreducible_with(&f, &oracle)?;
            Ok((json!({ "p": p, "k": k, "a": a.value(), "poly": f.to_string(), "irreducible": irr }), 0))
        }
    }
}

fn oracle_json(o: &OracleConfig) -> Value {
    json!({ "exhaustive_max_degree": o.exhaustive_max_degree, "exhaustive_max_candidates": o.exhaustive_max_candidates })
}

fn semidomain(c: &SemidomainCmd, budget: &Budget) -> Outcome {
    match c {
        SemidomainCmd::Atomtest { p, qr, expr, depth } => {
            let f = parse_polyexpr(expr, CoeffDomain::Fp(*p))?;
            let spec = PuiseuxMonoidSpec::mqr(qr.q, qr.r, *depth)?;
            let v = atom_test_bounded(&f, &spec, &budget.atom_test())?;
            Ok((json!({ "f": f.to_string(), "result": v }), 0))
        }
        SemidomainCmd::Support { p, qr, expr, depth } => {
            let f = parse_polyexpr(expr, CoeffDomain::Fp(*p))?;
            let spec = PuiseuxMonoidSpec::mqr(qr.q, qr.r, *depth)?;
            Ok((json!({ "f": f.to_string(), "support": support_in_monoid(&f, &spec) }), 0))
        }
        SemidomainCmd::Ascent { p, expr } => {
            let dom = p.map_or(CoeffDomain::Z, CoeffDomain::Fp);
            let f = parse_polyexpr(expr, dom)?;
            let a = ascent_factorization(&f)?;
            let atoms: Vec<String> = a.atoms.iter().map(|g| g.to_string()).collect();
            Ok((json!({ "f": f.to_string(), "d": a.d.to_string(), "atoms": atoms }), 0))
        }
    }
}

fn subring(c: &SubringCmd, budget: &Budget) -> Outcome {
    match c {
        SubringCmd::Atomic { ring, expr } => {
            let spec = SubringSpec::parse_name(ring)?;
            let f = parse_subring(expr)?;
            let atomic = is_atomic_element(&f, &spec)?;
            Ok((json!({ "ring": spec.to_string(), "f": f.to_string(), "atomic": atomic }), 0))
        }
        SubringCmd::Witness { mode, ring, expr } => {
            let f = parse_subring(expr)?;
            Ok(match mode {
                WitnessMode::Almost => {
                    let spec = SubringSpec::parse_name(ring.as_deref().unwrap_or("ZQ"))?;
                    let w = almost_atomic_witness(&f, &spec)?;
                    (json!({ "mode": "almost", "ring": spec.to_string(), "f": f.to_string(), "witness": w }), 0)
                }
                WitnessMode::Quasi => {
                    let spec = SubringSpec::parse_name(ring.as_deref().unwrap_or("ZQs"))?;
                    let w = quasi_atomic_witness(&f, &spec)?;
                    (json!({ "mode": "quasi", "ring": spec.to_string(), "f": f.to_string(), "witness": w }), 0)
                }
            })
        }
        SubringCmd::Refute { candidates } => {
            let list = match candidates {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Error::Domain(format!("{path}: {e}")))?;
                    Candidate::parse_list(&text)?
                }
                None => shipped_candidates()?,
            };
            let probe = budget.probe();
            let mut valid = 0usize;
            let rows = list
                .iter()
                .map(|c| {
                    let v = refute_quasi_atomic_candidate(&c.f, &c.factors, &probe)?;
                    valid += usize::from(v.is_valid());
                    Ok(json!({ "label": c.label, "verdict": v }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok((json!({ "valid": valid, "candidates": rows }), 0))
        }
    }
}

fn run_check(a: &CheckArgs, cli: &Cli) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let mut params = CheckParams {
        seed: cli.seed,
        oracle: cli.budget.oracle(),
        atom_test: cli.budget.atom_test(),
        probe: cli.budget.probe(),
        ..CheckParams::default()
    };
    if let (Some(q), Some(r)) = (a.q, a.r) {
        params.pairs = vec![(q, r)];
        params.atom_pairs = vec![(q, r)];
    }
    if let Some(n) = a.n {
        params.n = n;
        params.atom_n = params.atom_n.min(n);
    }
    if let Some(d) = a.depth {
        params.depth = d;
    }
    if let Some(v) = a.pmax {
        params.pmax = v;
    }
    if let Some(v) = a.tmax {
        params.tmax = v;
    }
    if let Some(v) = a.kmax {
        params.kmax = v;
    }
    if let Some(v) = a.cases {
        params.ascent_fp_cases = v;
        params.ascent_z_cases = v;
        params.subring_cases = v;
    }
    let reports = check::run_papercheck(suite, &params);
    let summary = Summary::of(&reports);
    Ok((json!({ "suite": suite, "seed": params.seed, "summary": summary, "reports": reports }), summary.exit_code()))
}

fn render_text(cmd: &Command, v: &Value) -> String {
    if let Command::Check(_) = cmd {
        let mut out = String::new();
        for r in v["reports"].as_array().into_iter().flatten() {
            out.push_str(&format!(
                "{:<17} {:<40} {:>10.1} ms  {}\n",
                r["verdict"].as_str().unwrap_or("?"),
                r["id"].as_str().unwrap_or("?"),
                r["wall_time_ms"].as_f64().unwrap_or(0.0),
                r["anchor"].as_str().unwrap_or(""),
            ));
        }
        let s = &v["summary"];
        out.push_str(&format!(
            "{} pass, {} fail, {} unknown-at-budget\n",
            s["pass"], s["fail"], s["unknown_at_budget"]
        ));
        return out;
    }
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, val) in m {
            let shown = match val {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}
