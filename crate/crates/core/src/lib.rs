//! Exact computations behind the K-theory with ℤ/l^ν coefficients of dg
//! cluster categories: quivers and their Coxeter matrices, Smith normal form
//! over arbitrary-precision integers, finitely generated abelian groups, and
//! truncated big Witt vector arithmetic with the endomorphism-class
//! (characteristic polynomial) embedding.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod dsl;
pub mod group;
pub mod ktheory;
pub mod matrix;
pub mod quiver;
pub mod snf;
pub mod witt;

pub use dsl::parse_quiver;
pub use group::{cokernel_int, cokernel_mod, kernel_mod, FinAbGroup, GroupOrder};
pub use ktheory::{
    cluster_map, grothendieck_group, k_groups_mod, suslin_k, verify_report, CheckResult, KTheoryError, KTheoryReport,
    PrimePower,
};
pub use matrix::IntMatrix;
pub use quiver::{preset, PresetFamily, Quiver, QuiverError, TopologicalOrder};
pub use snf::{inverse_unimodular, snf, LinalgError, SmithDecomposition};
pub use witt::{nilpotence_exponent, CoefficientRing, EndClass, WittError, WittVector};
