//! Exact discrete invariants of the fixed locus of a finite-order curve
//! automorphism acting on the moduli space of semistable rank-2 bundles with
//! fixed determinant.

pub mod cli;
pub mod cover;
pub mod divisor;
pub mod equivariant;
pub mod error;
pub mod fixed_locus;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod rational;
pub mod stability;

pub use cover::{orbit_length_under_power, CoverProfile, SpecialOrbit};
pub use divisor::{d_mu, norm_degree_check, InvariantDivisor, LineNumericData, RootExponent};
pub use equivariant::{
    bar_delta_degree, elementary_modification, enumerate_lambda, from_parabolic, gamma_apply,
    solve_d2, to_parabolic, weight_system, AdmissibleParabolicDatum, DeterminantLift,
    FlagSelector, LiftSign, NumericData, Rank2EqData, Tracked,
};
pub use error::{Error, Result};
pub use fixed_locus::{
    canonical_label, component_dimension, component_normality, crossing_orbits,
    decomposition_report, equivalence_classes, graded_points, hyperelliptic_report,
    s_i_possible, sim_e_step, sim_e_steps, sim_o_step, unramified_census, zeta2_apply,
    zeta2_graded, zeta2_parabolic, BoundaryLabel, CensusComponent, CensusRecord,
    ComponentRecord, DecompositionReport, GradedPoint, GradedSummand, HyperellipticReport,
};
pub use stability::{
    graded_of, max_agreement, parabolic_slope_difference, slope_transfer_check, split_moduli_p1,
    stability_classify, FlagConfig, GradedSplit, LineSummand, ParabolicP1, SplitModuli,
    StabilityClass, StabilityVerdict, SubbundleWitness,
};
