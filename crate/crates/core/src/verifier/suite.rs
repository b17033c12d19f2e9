//! Running a claim over a scope of hypergraphs and aggregating a report.
//!
//! Scopes are index-addressable, so the index range is cut into fixed-size
//! chunks that workers evaluate independently. Chunk tallies are merged in
//! chunk order; the report therefore does not depend on the worker count.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::checks::{check, Claim, Outcome, Verdict};
use super::enumerate::{
    binomial, enum_antichains, random_antichain_sample, random_uniform_sample, UniformFamilies,
    ANTICHAIN_MAX_N,
};
use crate::error::{Error, Result};
use crate::families::gen_star;
use crate::hypergraph::Hypergraph;

/// Indices per work unit.
const CHUNK: u64 = 4096;

/// `(n, r)` pairs allowed for exhaustive uniform sweeps: at most `2^21`
/// families of at most 8 vertices.
pub const EXHAUSTIVE_UNIFORM: &[(usize, usize)] = &[
    (1, 1),
    (2, 1),
    (2, 2),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 1),
    (4, 2),
    (4, 3),
    (4, 4),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
    (5, 5),
    (6, 1),
    (6, 2),
    (6, 3),
    (6, 4),
    (6, 5),
    (6, 6),
    (7, 1),
    (7, 2),
    (7, 5),
    (7, 6),
    (7, 7),
    (8, 1),
    (8, 7),
    (8, 8),
];

/// Largest `n` for random plans and `gen_star` sweeps.
pub const RANDOM_MAX_N: usize = 14;
pub const RANDOM_MAX_SAMPLES: u64 = 1_000_000;
pub const STARS_MAX_R: usize = 8;
pub const STARS_MAX_M: usize = 10;

fn ser_hg<S: Serializer>(h: &Hypergraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&h.to_hg())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    Single {
        #[serde(serialize_with = "ser_hg")]
        instance: Hypergraph,
    },
    /// Every antichain on `n` vertices.
    Antichains { n: usize },
    /// Every `r`-uniform family on `n` vertices with `m_min..=m_max` edges.
    Uniform {
        n: usize,
        r: usize,
        m_min: usize,
        m_max: usize,
    },
    /// `gen_star(r, m)` for `1 <= r <= r_max`, `2 <= m <= m_max`.
    Stars { r_max: usize, m_max: usize },
    RandomAntichains {
        n_min: usize,
        n_max: usize,
        samples: u64,
        seed: u64,
    },
    RandomUniform {
        n_min: usize,
        n_max: usize,
        samples: u64,
        seed: u64,
    },
}

/// A scope checked against the feasibility table and ready to index.
enum Source {
    List(Vec<Hypergraph>),
    Uniform(UniformFamilies),
    RandomAntichains {
        n_min: usize,
        n_max: usize,
        samples: u64,
        seed: u64,
    },
    RandomUniform {
        n_min: usize,
        n_max: usize,
        samples: u64,
        seed: u64,
    },
}

impl Source {
    fn len(&self) -> u64 {
        match self {
            Source::List(v) => v.len() as u64,
            Source::Uniform(u) => u.index_len(),
            Source::RandomAntichains { samples, .. } | Source::RandomUniform { samples, .. } => {
                *samples
            }
        }
    }

    fn get(&self, i: u64) -> Option<Hypergraph> {
        match self {
            Source::List(v) => v.get(i as usize).cloned(),
            Source::Uniform(u) => u.get(i),
            Source::RandomAntichains {
                n_min, n_max, seed, ..
            } => Some(random_antichain_sample(*n_min, *n_max, *seed, i)),
            Source::RandomUniform {
                n_min, n_max, seed, ..
            } => Some(random_uniform_sample(*n_min, *n_max, *seed, i)),
        }
    }
}

impl Scope {
    fn source(&self) -> Result<Source> {
        let infeasible = |msg: String| Err(Error::Infeasible(msg));
        match *self {
            Scope::Single { ref instance } => Ok(Source::List(vec![instance.clone()])),
            Scope::Antichains { n } => {
                if n == 0 || n > ANTICHAIN_MAX_N {
                    return infeasible(format!(
                        "exhaustive antichains need 1 <= n <= {ANTICHAIN_MAX_N}"
                    ));
                }
                Ok(Source::List(enum_antichains(n)?))
            }
            Scope::Uniform { n, r, m_min, m_max } => {
                if !EXHAUSTIVE_UNIFORM.contains(&(n, r)) {
                    return infeasible(format!(
                        "(n, r) = ({n}, {r}) is outside the exhaustive table; use random mode"
                    ));
                }
                let m_max = m_max.min(binomial(n, r) as usize);
                Ok(Source::Uniform(UniformFamilies::new(n, r, m_min, m_max)?))
            }
            Scope::Stars { r_max, m_max } => {
                if r_max == 0 || r_max > STARS_MAX_R || !(2..=STARS_MAX_M).contains(&m_max) {
                    return infeasible(format!(
                        "star sweep needs 1 <= r_max <= {STARS_MAX_R}, 2 <= m_max <= {STARS_MAX_M}"
                    ));
                }
                let mut list = Vec::new();
                for r in 1..=r_max {
                    for m in 2..=m_max {
                        list.push(gen_star(r, m)?);
                    }
                }
                Ok(Source::List(list))
            }
            Scope::RandomAntichains {
                n_min,
                n_max,
                samples,
                seed,
            } => {
                check_random(n_min.max(1), n_max, samples)?;
                Ok(Source::RandomAntichains {
                    n_min,
                    n_max,
                    samples,
                    seed,
                })
            }
            Scope::RandomUniform {
                n_min,
                n_max,
                samples,
                seed,
            } => {
                check_random(n_min.max(2), n_max, samples)?;
                Ok(Source::RandomUniform {
                    n_min,
                    n_max,
                    samples,
                    seed,
                })
            }
        }
    }
}

fn check_random(n_min: usize, n_max: usize, samples: u64) -> Result<()> {
    if n_min > n_max || n_max > RANDOM_MAX_N {
        return Err(Error::Infeasible(format!(
            "random plans need n_min <= n_max <= {RANDOM_MAX_N}, got {n_min}..={n_max}"
        )));
    }
    if samples == 0 || samples > RANDOM_MAX_SAMPLES {
        return Err(Error::Infeasible(format!(
            "sample count must be in 1..={RANDOM_MAX_SAMPLES}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub claim: Claim,
    pub scope: Scope,
    pub jobs: usize,
    /// Counterexamples kept in the report; all are counted.
    pub max_counterexamples: usize,
}

impl SuiteConfig {
    pub fn new(claim: Claim, scope: Scope) -> Self {
        SuiteConfig {
            claim,
            scope,
            jobs: 1,
            max_counterexamples: 20,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// A verdict together with its position in the scope's index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub index: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub claim: Claim,
    pub scope: Scope,
    pub instances: u64,
    pub pass: u64,
    pub not_applicable: u64,
    pub exception_count: u64,
    pub exceptions: Vec<Entry>,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Entry>,
    pub seconds: f64,
}

impl Report {
    pub fn is_success(&self) -> bool {
        self.counterexample_count == 0
    }

    /// Zeroes the wall-clock field so reports can be compared byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.seconds = 0.0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    pass: u64,
    not_applicable: u64,
    exceptions: Vec<Entry>,
    counterexample_count: u64,
    counterexamples: Vec<Entry>,
    error: Option<Error>,
}

impl Tally {
    fn absorb(&mut self, other: Tally, cap: usize) {
        if self.error.is_some() {
            return;
        }
        self.instances += other.instances;
        self.pass += other.pass;
        self.not_applicable += other.not_applicable;
        self.exceptions.extend(other.exceptions);
        self.counterexample_count += other.counterexample_count;
        let room = cap.saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
        self.error = other.error;
    }
}

fn run_chunk(claim: Claim, source: &Source, start: u64, end: u64, cap: usize) -> Tally {
    let mut t = Tally::default();
    for index in start..end {
        let Some(h) = source.get(index) else { continue };
        let verdict = match check(claim, &h) {
            Ok(v) => v,
            Err(e) => {
                t.error = Some(e);
                return t;
            }
        };
        t.instances += 1;
        match verdict.outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::NotApplicable => t.not_applicable += 1,
            Outcome::ExceptionAsPredicted => t.exceptions.push(Entry { index, verdict }),
            Outcome::Counterexample => {
                t.counterexample_count += 1;
                if t.counterexamples.len() < cap {
                    t.counterexamples.push(Entry { index, verdict });
                }
            }
        }
    }
    t
}

/// Runs `config.claim` over every instance in scope.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let started = Instant::now();
    let source = config.scope.source()?;
    let len = source.len();
    let chunks = len.div_ceil(CHUNK);
    let cap = config.max_counterexamples;
    let work = |c: u64| {
        run_chunk(
            config.claim,
            &source,
            c * CHUNK,
            ((c + 1) * CHUNK).min(len),
            cap,
        )
    };

    let tallies: Vec<Tally> = if config.jobs <= 1 {
        (0..chunks).map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {} workers: {e}", config.jobs)))?;
        pool.install(|| (0..chunks).into_par_iter().map(work).collect())
    };

    let mut total = Tally::default();
    for t in tallies {
        total.absorb(t, cap);
    }
    if let Some(err) = total.error {
        return Err(err);
    }
    Ok(Report {
        claim: config.claim,
        scope: config.scope.clone(),
        instances: total.instances,
        pass: total.pass,
        not_applicable: total.not_applicable,
        exception_count: total.exceptions.len() as u64,
        exceptions: total.exceptions,
        counterexample_count: total.counterexample_count,
        counterexamples: total.counterexamples,
        seconds: started.elapsed().as_secs_f64(),
    })
}

/// Runs one lemma-style claim over a scope; alias of [`run_suite`] with one
/// worker.
pub fn check_lemma(claim: Claim, scope: Scope) -> Result<Report> {
    run_suite(&SuiteConfig::new(claim, scope))
}
