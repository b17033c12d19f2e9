//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Counts and exception sets are checked against oracles
//! written independently of the library (brute-force families, monotone
//! function pairs, relabelled generators, loop-based versal counts).

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use versals::families::{gen_binary_star, gen_c4, gen_cosingletons, gen_singletons, gen_star};
use versals::isolation::{min_unique_probability, Probability, ProbabilityMode};
use versals::verifier::{
    binomial, run_suite, Claim, Report, Scope, SuiteConfig, EXHAUSTIVE_UNIFORM,
};
use versals::{parse_hypergraph, Hypergraph};

/// Wall-clock ceiling for the single-threaded antichain sweep at n = 3, 4, 5.
const MAIN_THEOREM_BUDGET: Duration = Duration::from_secs(60);
/// Wall-clock ceiling for the single-threaded (6,3) uniform sweep.
const UNIFORM_63_BUDGET: Duration = Duration::from_secs(600);
/// Worker count whose report must match the single-threaded one byte for byte.
const PARALLEL_JOBS: usize = 8;
/// Random uniform corpus shared by the reflection and property criteria.
const RANDOM_SAMPLES: u64 = 1000;
const RANDOM_N_MAX: usize = 12;
const RANDOM_SEED: u64 = 20240601;
/// Monte Carlo cross-check of the exact 4-cycle probability.
const MC_SAMPLES: u64 = 100_000;
const MC_SEED: u64 = 7;
const MC_SIGMAS: f64 = 3.0;
/// Dedekind numbers M(3), M(4), M(5).
const DEDEKIND: [(usize, u64); 3] = [(3, 20), (4, 168), (5, 7581)];
/// Uniform scopes swept exhaustively for the null-versal theorem.
const UNIFORM_SCOPES: [(usize, usize); 4] = [(4, 2), (5, 2), (6, 2), (6, 3)];

type Key = Vec<u32>;
type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            summary: String::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(claim: Claim, scope: Scope, jobs: usize) -> Report {
    let mut config = SuiteConfig::new(claim, scope).jobs(jobs);
    config.max_counterexamples = 5;
    run_suite(&config).unwrap_or_else(|e| panic!("{claim}: {e}"))
}

fn antichain_scopes() -> Vec<Scope> {
    (3..=5).map(|n| Scope::Antichains { n }).collect()
}

fn uniform_scope(n: usize, r: usize, m_min: usize) -> Scope {
    Scope::Uniform {
        n,
        r,
        m_min,
        m_max: binomial(n, r) as usize,
    }
}

fn uniform_scopes() -> Vec<Scope> {
    UNIFORM_SCOPES
        .iter()
        .map(|&(n, r)| uniform_scope(n, r, 2))
        .collect()
}

fn random_scope() -> Scope {
    Scope::RandomUniform {
        n_min: 2,
        n_max: RANDOM_N_MAX,
        samples: RANDOM_SAMPLES,
        seed: RANDOM_SEED,
    }
}

/// Runs `claim` over every scope and requires zero counterexamples.
fn sweep(out: &mut Outcome, claim: Claim, scopes: &[Scope]) -> (u64, u64, u64) {
    let (mut instances, mut pass, mut na) = (0, 0, 0);
    for scope in scopes {
        let report = run(claim, scope.clone(), jobs());
        instances += report.instances;
        pass += report.pass;
        na += report.not_applicable;
        if let Some(c) = report.counterexamples.first() {
            out.note(format!(
                "{claim} counterexample in {scope:?}: {}",
                c.verdict.witness.as_deref().unwrap_or("?")
            ));
        }
        out.require(
            report.counterexample_count == 0,
            format!("{claim}: {} counterexamples", report.counterexample_count),
        );
    }
    (instances, pass, na)
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

fn key_of(edges: &[u32]) -> Key {
    let mut k = edges.to_vec();
    k.sort_unstable();
    k
}

fn bits_of(h: &Hypergraph) -> Vec<u32> {
    h.edges().iter().map(|e| e.bits()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every relabelling of `edges` on `n` vertices.
fn labelled_copies(n: usize, edges: &[u32]) -> BTreeSet<Key> {
    permutations(n)
        .into_iter()
        .map(|p| {
            let image: Vec<u32> = edges
                .iter()
                .map(|&e| {
                    (0..n)
                        .filter(|&v| e >> v & 1 == 1)
                        .fold(0, |acc, v| acc | 1 << p[v])
                })
                .collect();
            key_of(&image)
        })
        .collect()
}

/// `S` is a versal of edge `e` when `|e| + |S & e| < |f| + |S & f|` for all
/// other edges `f`.
fn oracle_is_versal(edges: &[u32], e: usize, s: u32) -> bool {
    let score = |x: u32| x.count_ones() + (x & s).count_ones();
    let se = score(edges[e]);
    edges
        .iter()
        .enumerate()
        .all(|(f, &x)| f == e || se < score(x))
}

fn oracle_z(n: usize, edges: &[u32]) -> u64 {
    (0u32..1 << n)
        .filter(|&s| (0..edges.len()).any(|e| oracle_is_versal(edges, e, s)))
        .count() as u64
}

fn oracle_z_null(n: usize, edges: &[u32]) -> u64 {
    (0u32..1 << n)
        .map(|s| {
            (0..edges.len())
                .filter(|&e| s & edges[e] == 0 && oracle_is_versal(edges, e, s))
                .count() as u64
        })
        .sum()
}

fn is_antichain(family: &[u32]) -> bool {
    family.iter().enumerate().all(|(i, &a)| {
        family
            .iter()
            .enumerate()
            .all(|(j, &b)| i == j || a & b != a)
    })
}

/// Antichains of nonempty subsets of an `n`-set with at least one member,
/// counted by testing every family of nonempty subsets.
fn brute_antichain_count(n: usize) -> u64 {
    let subsets: Vec<u32> = (1u32..1 << n).collect();
    (1u64..1 << subsets.len())
        .filter(|&mask| {
            let family: Vec<u32> = (0..subsets.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| subsets[i])
                .collect();
            is_antichain(&family)
        })
        .count() as u64
}

/// `M(k + 1)` as the number of pairs `f <= g` of monotone Boolean functions
/// on `k` variables.
fn dedekind_by_pairs(k: usize) -> u64 {
    let points = 1usize << k;
    let monotone: Vec<u64> = (0u64..1 << points)
        .filter(|&t| {
            (0..points)
                .all(|x| (0..points).all(|y| x & y != x || t >> x & 1 == 0 || t >> y & 1 == 1))
        })
        .collect();
    monotone
        .iter()
        .map(|&f| monotone.iter().filter(|&&g| f & g == f).count() as u64)
        .sum()
}

fn exception_keys(report: &Report) -> Vec<(Key, Hypergraph, &versals::verifier::Verdict)> {
    report
        .exceptions
        .iter()
        .map(|e| {
            let text = e
                .verdict
                .instance
                .as_deref()
                .expect("exceptions carry the instance");
            let h = parse_hypergraph(text).expect("instance text parses");
            (key_of(&bits_of(&h)), h, &e.verdict)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn main_theorem() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut total = 0;
    let mut exceptions = 0;
    for (n, dedekind) in DEDEKIND {
        let report = run(Claim::MainTheorem, Scope::Antichains { n }, 1);
        total += report.instances;
        let expected = dedekind - 2;
        out.require(
            report.instances == expected,
            format!(
                "n={n}: {} instances, Dedekind says {expected}",
                report.instances
            ),
        );
        out.require(
            report.counterexample_count == 0,
            format!("n={n}: {} counterexamples", report.counterexample_count),
        );
        let mut predicted = BTreeSet::new();
        predicted.extend(labelled_copies(n, &bits_of(&gen_singletons(n).unwrap())));
        predicted.extend(labelled_copies(n, &bits_of(&gen_cosingletons(n).unwrap())));
        if n == 4 {
            predicted.extend(labelled_copies(4, &bits_of(&gen_c4())));
        }
        let found = exception_keys(&report);
        for (key, h, verdict) in &found {
            let z = oracle_z(n, &bits_of(h));
            out.require(
                z == n as u64 && verdict.detail.z == Some(z),
                format!(
                    "n={n}: exception {key:?} has |Z| = {z}, reported {:?}",
                    verdict.detail.z
                ),
            );
        }
        let found: BTreeSet<Key> = found.into_iter().map(|(k, _, _)| k).collect();
        out.require(
            found == predicted,
            format!("n={n}: exceptions {found:?} differ from labelled copies {predicted:?}"),
        );
        exceptions += found.len();
    }
    let elapsed = start.elapsed();
    out.require(
        elapsed < MAIN_THEOREM_BUDGET,
        format!("single-threaded sweep took {elapsed:.1?}"),
    );
    for (n, dedekind) in DEDEKIND {
        let oracle = if n <= 4 {
            brute_antichain_count(n) + 2
        } else {
            dedekind_by_pairs(n - 1)
        };
        out.require(
            oracle == dedekind,
            format!("oracle gives M({n}) = {oracle}"),
        );
    }
    out.summary = format!(
        "{total} antichains, {exceptions} exceptions (labelled S_n, co-S_n, C4, |Z| = n), {elapsed:.1?}"
    );
    out
}

fn theorem2() -> Outcome {
    let mut out = Outcome::new();
    let mut unexplained: Vec<String> = Vec::new();
    let mut seconds_63 = Duration::ZERO;
    let mut total = 0;
    let mut exceptions = 0;
    for &(n, r) in &UNIFORM_SCOPES {
        let scope = uniform_scope(n, r, 2);
        let start = Instant::now();
        let serial = run(Claim::Theorem2, scope.clone(), 1);
        if (n, r) == (6, 3) {
            seconds_63 = start.elapsed();
        }
        let parallel = run(Claim::Theorem2, scope, PARALLEL_JOBS);
        out.require(
            serial.clone().without_timing().to_json() == parallel.without_timing().to_json(),
            format!("({n},{r}): {PARALLEL_JOBS}-worker report differs"),
        );
        let c = binomial(n, r);
        let expected_instances = (1u64 << c) - 1 - c;
        out.require(
            serial.instances == expected_instances,
            format!(
                "({n},{r}): {} instances, expected {expected_instances}",
                serial.instances
            ),
        );
        out.require(
            serial.counterexample_count == 0,
            format!("({n},{r}): {} counterexamples", serial.counterexample_count),
        );
        total += serial.instances;
        exceptions += serial.exception_count;

        // The stated exception set: spanning stars everywhere, and binary
        // stars with star size 3 at (6,3).
        let spanning = labelled_copies(n, &bits_of(&gen_star(r, n - r + 1).unwrap()));
        let all_binary = if n == 2 * r {
            labelled_copies(n, &bits_of(&gen_binary_star(r, r).unwrap()))
        } else {
            BTreeSet::new()
        };
        let binary = if (n, r) == (6, 3) {
            all_binary.clone()
        } else {
            BTreeSet::new()
        };
        let found = exception_keys(&serial);
        let found_keys: BTreeSet<Key> = found.iter().map(|(k, _, _)| k.clone()).collect();
        for k in spanning.iter().chain(&binary) {
            out.require(
                found_keys.contains(k),
                format!("({n},{r}): missing exception {k:?}"),
            );
        }
        let mut extra_stars = 0;
        let mut extra_binary = 0;
        let mut extra_other = Vec::new();
        for (key, h, verdict) in &found {
            let edges = bits_of(h);
            let z = oracle_z_null(n, &edges);
            out.require(
                verdict.detail.z_null == Some(z) && z <= n as u64,
                format!("({n},{r}): exception {key:?} has |Z'| = {z}"),
            );
            if spanning.contains(key) {
                out.require(
                    z == (n - r + 1) as u64,
                    format!("spanning star {key:?}: |Z'| = {z}"),
                );
            } else if binary.contains(key) {
                out.require(z == n as u64, format!("binary star {key:?}: |Z'| = {z}"));
            } else if all_binary.contains(key) && z == n as u64 {
                extra_binary += 1;
            } else {
                let core = edges.iter().fold(u32::MAX, |a, &e| a & e);
                let covered = edges.iter().fold(0, |a, &e| a | e);
                let star_on_2r = core.count_ones() as usize == r - 1
                    && edges.len() == r
                    && n == 2 * r
                    && (covered.count_ones() as usize) == n - 1;
                if star_on_2r && z == n as u64 {
                    extra_stars += 1;
                } else {
                    extra_other.push(format!("{key:?} (|Z'| = {z})"));
                }
            }
        }
        if extra_stars > 0 {
            unexplained.push(format!(
                "({n},{r}): {extra_stars} non-spanning {r}-stars on {n} vertices (one isolated vertex) with |Z'| = n"
            ));
        }
        if extra_binary > 0 {
            unexplained.push(format!(
                "({n},{r}): {extra_binary} binary stars with star size {r} (the 4-cycle when r = 2) with |Z'| = n"
            ));
        }
        if !extra_other.is_empty() {
            unexplained.push(format!(
                "({n},{r}): {} other exceptions, e.g. {}",
                extra_other.len(),
                extra_other[0]
            ));
        }
    }
    out.require(
        seconds_63 < UNIFORM_63_BUDGET,
        format!("single-threaded (6,3) sweep took {seconds_63:.1?}"),
    );
    out.require(
        unexplained.is_empty(),
        "exception set is larger than the stated one (spanning stars; binary stars at (6,3))",
    );
    for u in unexplained {
        out.note(u);
    }
    out.summary = format!(
        "{total} uniform families, 0 counterexamples required, {exceptions} exceptions; (6,3) serial {seconds_63:.1?}"
    );
    out
}

fn theorem7() -> Outcome {
    let mut out = Outcome::new();
    for r in 1..=5 {
        for m in 2..=6 {
            let h = gen_star(r, m).unwrap();
            let n = h.n();
            let z = oracle_z(n, &bits_of(&h));
            let formula = (1u64 << (r - 1)) * m as u64;
            out.require(
                z == formula,
                format!("star r={r} m={m}: |Z| = {z}, formula {formula}"),
            );
            if r >= 2 && n >= 3 {
                out.require(
                    z > n as u64,
                    format!("star r={r} m={m}: |Z| = {z} <= n = {n}"),
                );
            }
        }
    }
    let (instances, pass, _) = sweep(
        &mut out,
        Claim::Theorem7,
        &[Scope::Stars { r_max: 5, m_max: 6 }],
    );
    out.summary = format!("{instances} stars, |Z| = 2^(r-1) m by brute force, {pass} pass");
    out
}

fn lemma1() -> Outcome {
    let mut out = Outcome::new();
    let mut scopes = vec![random_scope()];
    scopes.extend(uniform_scopes());
    let (instances, pass, na) = sweep(&mut out, Claim::Lemma1, &scopes);
    out.require(na == 0, format!("{na} uniform instances skipped"));
    out.summary = format!("{instances} uniform instances, {pass} reflections match");
    out
}

fn properties() -> Outcome {
    let mut out = Outcome::new();
    let mut scopes = antichain_scopes();
    scopes.extend(uniform_scopes());
    scopes.push(random_scope());
    let mut parts = Vec::new();
    for claim in [Claim::Lemma3, Claim::Lemma4, Claim::VersalProperties] {
        let (instances, pass, na) = sweep(&mut out, claim, &scopes);
        parts.push(format!("{claim}: {pass} pass / {na} n.a. of {instances}"));
    }
    out.summary = parts.join("; ");
    out
}

fn lemma5() -> Outcome {
    let mut out = Outcome::new();
    let scope = Scope::Uniform {
        n: 6,
        r: 3,
        m_min: 4,
        m_max: 4,
    };
    let (instances, pass, _) = sweep(&mut out, Claim::Lemma5, &[scope]);
    out.require(
        instances == binomial(20, 4),
        format!("{instances} four-edge families, expected C(20,4)"),
    );
    out.summary =
        format!("{instances} four-edge families, {pass} flags with equivalent statements");
    out
}

fn lemma6() -> Outcome {
    let mut out = Outcome::new();
    let scope = Scope::Uniform {
        n: 6,
        r: 3,
        m_min: 4,
        m_max: 6,
    };
    let (instances, pass, _) = sweep(&mut out, Claim::Lemma6, &[scope]);
    let expected = (4..=6).map(|m| binomial(20, m)).sum::<u64>();
    out.require(
        instances == expected,
        format!("{instances} families, expected {expected}"),
    );
    out.summary = format!("{instances} families with 4 <= m <= 6, {pass} agree");
    out
}

fn bounds() -> Outcome {
    let mut out = Outcome::new();
    let scopes: Vec<Scope> = EXHAUSTIVE_UNIFORM
        .iter()
        .map(|&(n, r)| uniform_scope(n, r, 1))
        .collect();
    let (instances, pass, _) = sweep(&mut out, Claim::Bounds, &scopes);
    out.require(pass > 0, "no instance met a bound hypothesis");
    out.summary =
        format!("{instances} uniform families, {pass} under a bound hypothesis, all meet it");
    out
}

fn lifting() -> Outcome {
    let mut out = Outcome::new();
    let (instances, pass, _) = sweep(&mut out, Claim::Lifting, &antichain_scopes());
    out.summary = format!("{instances} antichains, {pass} pass");
    out
}

fn isolation() -> Outcome {
    let mut out = Outcome::new();
    let mut scopes = antichain_scopes();
    scopes.extend(uniform_scopes());
    let (instances, _, _) = sweep(&mut out, Claim::Isolation, &scopes);

    let c4 = gen_c4();
    let exact = min_unique_probability(&c4, 2, ProbabilityMode::Exact, 1).unwrap();
    // With weights in {1,2} the weight-2 vertices form a set S and the
    // lightest edge is unique exactly when S is a versal: |Z(C4)| / 2^4.
    let oracle = oracle_z(4, &bits_of(&c4)) as f64 / 16.0;
    let Probability::Exact { value: p, .. } = exact else {
        unreachable!("exact mode")
    };
    out.require(
        p == oracle && p == 0.25,
        format!("exact P = {p}, oracle {oracle}"),
    );
    let mc = min_unique_probability(
        &c4,
        2,
        ProbabilityMode::MonteCarlo {
            samples: MC_SAMPLES,
            seed: MC_SEED,
        },
        jobs(),
    )
    .unwrap();
    let Probability::MonteCarlo {
        value: estimate,
        standard_error,
        ..
    } = mc
    else {
        unreachable!("Monte Carlo mode")
    };
    let deviation = (estimate - p).abs() / standard_error;
    out.require(
        deviation <= MC_SIGMAS,
        format!("Monte Carlo {estimate} is {deviation:.2} standard errors from {p}"),
    );
    out.summary = format!(
        "{instances} instances round-trip; C4 K=2 exact 1/4, Monte Carlo {estimate:.4} ({deviation:.2} SE)"
    );
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("main theorem, antichains n = 3..5", main_theorem),
        ("null versals, uniform (4,2) (5,2) (6,2) (6,3)", theorem2),
        ("star versal formula", theorem7),
        ("reflection bijection", lemma1),
        (
            "free vertices, floor, power bound, closure, disjointness",
            properties,
        ),
        ("flags with four edges on (6,3)", lemma5),
        ("every edge a pole on (6,3)", lemma6),
        ("null-versal case bounds", bounds),
        ("lifting from the minimum layer", lifting),
        ("weighting round trip and probability", isolation),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {:>2}. {name}: {} [{:.1?}]",
            i + 1,
            outcome.summary,
            start.elapsed()
        );
        for note in &outcome.notes {
            println!("         - {note}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
