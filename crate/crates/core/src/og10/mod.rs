//! The layer specific to `L = 3U + 2E8 + A2`: wall vectors, density bounds
//! and the exact checks behind the nonexistence argument.
//!
//! Every verdict here is lattice-side only.

pub mod bounds;
pub mod proof;
pub mod walls;

pub use bounds::{
    center_density_sq, contradiction_table, contradiction_table_with, default_safety_factor,
    packing_radius_sq, rogers_bound, BoundsRow, ContradictionTable,
};
pub use proof::{
    gluing_determinant_check, leech_coinvariant_min_norm, nikulin_embedding_sufficient,
    rank_one_divisibility_check, trivial_disc_case_pipeline, GluingReport, RankOneReport,
    TrivialDiscReport, LAMBDA_1_25_SIGNATURE,
};
pub use walls::{
    classify_invariants, classify_wall, coinvariant_wall_scan, lattice_side_conditions,
    symplectic_automorphism_condition, symplectic_birational_condition, ConditionVerdict,
    LatticeSideConditions, WallClass, WallHit, WallScan,
};
