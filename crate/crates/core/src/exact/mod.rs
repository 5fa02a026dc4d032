//! Exact solvers: rainbow vertex-disconnection numbers and the classic
//! coloring parameters they are compared against.

pub mod classic;
pub mod rvd;

pub use classic::{
    chromatic_number, independence_number, injective_chromatic_number, injective_coloring, k_coloring,
    kfold_chromatic_number, kfold_chromatic_number_with, kfold_coloring, optimal_coloring, KfoldCap, DEFAULT_KFOLD_CAP,
};
pub use rvd::{
    bounds, rvd_exact, rvd_exact_with, BoundsReport, Certificate, ExactConfig, ExactResult, ExactStats, DEFAULT_CAP,
};
