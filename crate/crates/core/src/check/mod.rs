//! Verification driver: named suites of desk-scale checks, each producing a
//! [`CheckReport`]. Checks run in parallel; the report list is sorted by id
//! and, apart from `wall_time_ms`, depends only on the parameters and seed.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::OracleConfig;
use crate::semidomain::AtomTestBudget;
use crate::subring::ProbeBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PropMqr,
    Binomials,
    Trinomials,
    Ascent,
    Subring,
    Nonascent,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["prop-mqr", "binomials", "trinomials", "ascent", "subring", "nonascent", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PropMqr => "prop-mqr",
            Suite::Binomials => "binomials",
            Suite::Trinomials => "trinomials",
            Suite::Ascent => "ascent",
            Suite::Subring => "subring",
            Suite::Nonascent => "nonascent",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::PropMqr,
                Suite::Binomials,
                Suite::Trinomials,
                Suite::Ascent,
                Suite::Subring,
                Suite::Nonascent,
            ],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "prop-mqr" => Suite::PropMqr,
            "binomials" => Suite::Binomials,
            "trinomials" => Suite::Trinomials,
            "ascent" => Suite::Ascent,
            "subring" => Suite::Subring,
            "nonascent" => Suite::Nonascent,
            "all" => Suite::All,
            other => {
                return Err(Error::Domain(format!(
                    "unknown suite '{other}', expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    UnknownAtBudget,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::UnknownAtBudget => "unknown-at-budget",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub suite: Suite,
    /// What the check establishes, stated in the notation of the checked objects.
    pub anchor: String,
    pub params: Value,
    pub verdict: Verdict,
    pub payload: Value,
    pub budgets: Value,
    pub wall_time_ms: f64,
}

/// Parameters of every suite. The defaults are the acceptance settings.
#[derive(Clone, Debug, Serialize)]
pub struct CheckParams {
    pub seed: u64,
    /// `(q, r)` pairs for the generator construction checks
    pub pairs: Vec<(u64, u64)>,
    /// `(q, r)` pairs for the bounded atom and divisibility checks
    pub atom_pairs: Vec<(u64, u64)>,
    /// generator index bound `n` of the construction checks
    pub n: usize,
    /// generator index bound of the atom checks
    pub atom_n: usize,
    /// truncation depth of the atom checks and of the monoid algebra
    pub depth: usize,
    pub pmax: u64,
    pub tmax: u64,
    pub trinomial_primes: Vec<u64>,
    pub kmax: u32,
    pub ascent_fp_cases: usize,
    pub ascent_fp_degree: usize,
    pub ascent_z_cases: usize,
    pub ascent_z_degree: usize,
    pub ascent_z_coeff: i64,
    pub frobenius_images: u32,
    pub quotient_instances: usize,
    pub subring_cases: usize,
    pub kappa_cases: usize,
    pub descent_depth: usize,
    pub oracle: OracleConfig,
    pub atom_test: AtomTestBudget,
    pub probe: ProbeBudget,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            seed: 0,
            pairs: vec![(2, 3), (3, 2), (5, 4), (7, 2)],
            atom_pairs: vec![(2, 3), (3, 2)],
            n: 8,
            atom_n: 3,
            depth: 6,
            pmax: 31,
            tmax: 12,
            trinomial_primes: vec![3, 7, 11, 19, 23],
            kmax: 4,
            ascent_fp_cases: 500,
            ascent_fp_degree: 8,
            ascent_z_cases: 200,
            ascent_z_degree: 4,
            ascent_z_coeff: 10,
            frobenius_images: 4,
            quotient_instances: 50,
            subring_cases: 200,
            kappa_cases: 50,
            descent_depth: 10,
            oracle: OracleConfig::default(),
            atom_test: AtomTestBudget::default(),
            probe: ProbeBudget::default(),
        }
    }
}

/// Verdict counts of a report list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown_at_budget: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::UnknownAtBudget => s.unknown_at_budget += 1,
            }
        }
        s
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.fail > 0)
    }
}

struct Outcome {
    verdict: Verdict,
    payload: Value,
}

impl Outcome {
    fn pass_if(ok: bool, payload: Value) -> Outcome {
        Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, payload }
    }
}

type CheckFn = Box<dyn Fn(&mut ChaCha8Rng) -> Result<Outcome> + Send + Sync>;

struct Job {
    id: String,
    suite: Suite,
    anchor: &'static str,
    params: Value,
    budgets: Value,
    run: CheckFn,
}

impl Job {
    fn new(
        id: impl Into<String>,
        suite: Suite,
        anchor: &'static str,
        params: Value,
        budgets: Value,
        run: impl Fn(&mut ChaCha8Rng) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Job {
        Job { id: id.into(), suite, anchor, params, budgets, run: Box::new(run) }
    }

    fn execute(self, seed: u64) -> CheckReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&self.id));
        let start = Instant::now();
        let outcome = (self.run)(&mut rng).unwrap_or_else(|e| Outcome {
            verdict: Verdict::Fail,
            payload: json!({ "error": e.to_string() }),
        });
        CheckReport {
            id: self.id,
            suite: self.suite,
            anchor: self.anchor.to_string(),
            params: self.params,
            verdict: outcome.verdict,
            payload: outcome.payload,
            budgets: self.budgets,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Runs every check of `suite` and returns the reports sorted by id.
pub fn run_papercheck(suite: Suite, params: &CheckParams) -> Vec<CheckReport> {
    let jobs: Vec<Job> = suite.members().into_iter().flat_map(|s| suites::jobs(s, params)).collect();
    let seed = params.seed;
    let mut reports: Vec<CheckReport> = jobs.into_par_iter().map(|j| j.execute(seed)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

/// The report list as JSON with the timing fields removed, for comparing runs.
pub fn without_timing(reports: &[CheckReport]) -> Value {
    let mut v = serde_json::to_value(reports).expect("reports serialize");
    if let Value::Array(items) = &mut v {
        for item in items {
            if let Value::Object(m) = item {
                m.remove("wall_time_ms");
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_binomial_run_is_deterministic() {
        let params = CheckParams { pmax: 7, tmax: 6, ..CheckParams::default() };
        let a = run_papercheck(Suite::Binomials, &params);
        let b = run_papercheck(Suite::Binomials, &params);
        assert_eq!(without_timing(&a), without_timing(&b));
        assert!(a.iter().all(|r| r.verdict == Verdict::Pass));
        assert!(a.windows(2).all(|w| w[0].id < w[1].id));
        assert_eq!(Summary::of(&a).exit_code(), 0);
    }
}
