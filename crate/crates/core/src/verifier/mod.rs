//! Candidate generation and machine-checked verdicts for the counting
//! theorems and lemmas about versals.

mod checks;
mod enumerate;
mod suite;

pub use checks::{
    check, check_bounds, check_isolation, check_lemma1, check_lemma3, check_lemma4, check_lemma5,
    check_lemma6, check_lifting, check_main_theorem, check_theorem2, check_theorem7,
    check_versal_properties, null_versal_bound, star_null_formula, star_versal_formula, Claim,
    Detail, Outcome, Verdict,
};
pub use enumerate::{
    binomial, enum_antichains, enum_uniform, r_subsets, random_antichain, random_antichain_sample,
    random_uniform, random_uniform_sample, UniformFamilies, ANTICHAIN_MAX_N,
    UNIFORM_MAX_CANDIDATES,
};
pub use suite::{
    check_lemma, run_suite, Entry, Report, Scope, SuiteConfig, EXHAUSTIVE_UNIFORM, RANDOM_MAX_N,
    RANDOM_MAX_SAMPLES, STARS_MAX_M, STARS_MAX_R,
};
