//! Seeded corpora, brute-force oracles and the verification suites.

mod generate;
pub mod oracle;
mod report;
mod suites;

pub use generate::{
    generate, oscillating_blocks, random_set, rng_for, ChangeDistribution, GenKind, Generated,
    GeneratorSpec, SettleMode,
};
pub use report::{Check, VerificationReport};
pub use suites::{early_corpus, run_suite, SuiteOptions, SUITES};
