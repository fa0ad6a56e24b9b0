//! Exhaustive enumeration of small commutative monoids, seeded random
//! generation of semimodules, morphisms and hypothesis-satisfying diagrams,
//! and independent brute-force oracles for differential testing.

pub mod enumerate;
pub mod generate;
pub mod oracle;

pub use enumerate::{
    canonical_form, enumerate_commutative_monoids, monoid_action_semiring, monoid_corpus, Corpus,
    MAX_ENUM_ORDER,
};
pub use generate::{
    build_pool, fuzz, generate_lemma_instance, mix_seed, random_morphism, random_semimodule,
    CandidatePool, DiagramDump, FuzzConfig, FuzzReport, ObjectDump, TrialOutcome,
};
pub use oracle::oracle_exactness;
