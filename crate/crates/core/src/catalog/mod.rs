//! Named constructions and the verification suites built on them.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

mod bilinear;
mod families;
mod lunelli_sce;
mod properties;
mod survey;

pub use bilinear::{triad_flock_suite, triad_special_case, triangle_flock_suite, triangle_special_case};
pub use families::{
    example1_check, holder_megyesi, holder_megyesi_suite, kantor_knuth, kantor_knuth_suite, kantor_knuth_variant,
};
pub use lunelli_sce::{lunelli_sce_f1, lunelli_sce_f2, lunelli_sce_suite};
pub use properties::properties_suite;
pub use survey::{
    counts_suite, monic_partition, nobi_suite, nobi_survey, permutations_fixing_zero, survey_star_flocks,
    NobiSummary, SurveyMode,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Informational lines that do not affect `pass`.
    pub notes: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), checks: Vec::new(), notes: Vec::new(), pass: true, elapsed: Duration::ZERO }
    }

    /// Records `actual == expected`.
    pub fn check<E: Serialize, A: Serialize>(&mut self, description: impl Into<String>, expected: E, actual: A) -> bool {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let pass = expected == actual;
        self.pass &= pass;
        self.checks.push(Check { description: description.into(), expected, actual, pass });
        pass
    }

    pub fn check_true(&mut self, description: impl Into<String>, actual: bool) -> bool {
        self.check(description, true, actual)
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Appends another report's checks, prefixing their descriptions.
    pub fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.description = format!("{}: {}", other.suite, c.description);
            self.pass &= c.pass;
            self.checks.push(c);
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.suite)));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs `body` and stamps the elapsed time on its report.
pub(crate) fn timed(body: impl FnOnce() -> Result<SuiteReport>) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = body()?;
    r.elapsed = start.elapsed();
    Ok(r)
}

pub const SUITES: &[&str] = &[
    "lunelli-sce",
    "kantor-knuth",
    "holder-megyesi",
    "triangle",
    "triangle-special",
    "triad",
    "triad-special",
    "nobi",
    "corollaries",
    "counts",
    "properties",
];

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Restricts a suite to one field order (or, for `triad-special`, one
    /// exponent `e`).
    pub q: Option<u32>,
    /// Seed of the randomized property checks.
    pub seed: u64,
}

/// Runs a suite by its command-line name.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let pick = |defaults: &[u32]| opts.q.map_or_else(|| defaults.to_vec(), |q| vec![q]);
    let many = |name: &str, qs: Vec<u32>, f: &dyn Fn(u32) -> Result<SuiteReport>| {
        timed(|| {
            let mut r = SuiteReport::new(name);
            for q in qs {
                r.absorb(f(q)?);
            }
            Ok(r)
        })
    };
    match name {
        "lunelli-sce" => lunelli_sce_suite(),
        "kantor-knuth" => kantor_knuth_suite(opts.q),
        "holder-megyesi" => holder_megyesi_suite(opts.q),
        "triangle" => many(name, pick(&[5, 7, 9, 13]), &triangle_flock_suite),
        "triangle-special" => many(name, pick(&[3, 5]), &triangle_special_case),
        "triad" => many(name, pick(&[4, 8, 16]), &triad_flock_suite),
        "triad-special" => many(name, pick(&[1, 2]), &triad_special_case),
        "nobi" => nobi_suite(&pick(&[2, 3, 4, 5, 7, 8])),
        "corollaries" => match opts.q {
            Some(q) => survey_star_flocks(q, SurveyMode::Auto),
            None => many(name, vec![3, 4, 5, 7, 8, 9, 16, 27], &|q| survey_star_flocks(q, SurveyMode::Auto)),
        },
        "counts" => counts_suite(),
        "properties" => properties_suite(opts.seed),
        _ => Err(Error::InvalidParameter(format!("unknown suite {name:?}"))),
    }
}
