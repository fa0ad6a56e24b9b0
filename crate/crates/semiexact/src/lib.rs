//! Finite semirings, semimodules and the relative-exactness calculus:
//! congruences and quotients, kernel/cokernel factorizations, morphism
//! classification, per-junction exactness verdicts, diagram lemmas with the
//! snake connecting morphism, and an explorer for enumerating and fuzzing
//! finite instances.

pub mod algebra;
pub mod builtins;
pub mod diagram;
pub mod error;
pub mod exactness;
pub mod explorer;
pub mod morphism;
pub mod substructure;

pub use algebra::{
    builtin_semiring, cancellable_elements, cyclic_nat, direct_sum, natural_action,
    semiring_as_semimodule, validate_semimodule, validate_semiring, zero_module, Elem, ElementSet,
    Semimodule, Semiring, SemiringFamily, ValidationReport, Violation, MAX_ORDER,
};
pub use diagram::{
    connecting_morphism, induced_cokernel_map, induced_kernel_map, lemma_verify,
    validate_diagram, Diagram, HypothesisCheck, LemmaId, LemmaVerdict, SnakeCertificate,
    ALL_LEMMAS,
};
pub use error::{Error, Result};
pub use exactness::{
    induced_from_cokernel, induced_into_kernel, is_short_exact, junction_verdict,
    ker_coker_sequence, sequence_report, JunctionVerdict, JunctionWitness, Sequence,
    ShortExactReport,
};
pub use explorer::{
    build_pool, canonical_form, enumerate_commutative_monoids, fuzz, generate_lemma_instance,
    mix_seed, monoid_corpus, oracle_exactness, random_morphism, random_semimodule, CandidatePool,
    Corpus, FuzzConfig, FuzzReport, TrialOutcome,
};
pub use morphism::{
    classify, cokernel, coimage, compose, factorize, hom_enumerate, identity, image,
    is_isomorphic, kernel, morphism_violations, validate_morphism, zero_morphism, Classification,
    Factorization, Morphism,
};
pub use substructure::{
    all_subsemimodules, bourne_congruence, congruence_generated, iizuka_congruence,
    is_subtractive, quotient, quotient_by_sub, subsemimodule_generated, subtractive_closure,
    Congruence, QuotientResult, Subsemimodule,
};
