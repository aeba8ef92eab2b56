//! Representative subset selection over feature embeddings.
//!
//! Given an N x d point set, the crate selects n representative points under
//! one of several strategies: greedy k-center (farthest-first traversal),
//! its mini-max and maxi-min refinements, k-medoids with k-medoids++
//! seeding, and random baselines. It also ships an exact t-SNE for 2D
//! preprocessing, a TSPlib node-coordinate parser, a multi-seed benchmark
//! harness, and a class-coverage evaluation harness.

pub mod error;
pub mod metric;
pub mod select;

pub use error::{Error, Result};
pub use metric::{
    assign_voronoi, brute_force_optimal, brute_force_optimal_with_budget, distance,
    objective_kmedoids, objective_maximin, objective_minimax, Metric, ObjectiveKind, Objectives,
    PointSet, Selection, SelectionMethod, DEFAULT_ENUMERATION_BUDGET,
};
pub use select::{
    greedy_k_center, k_medoids, local_one_center, random_class_balanced, random_select,
    refine_maximin, refine_minimax, GreedyTrace, KMedoidsRun, MaximinRefinement, MinimaxConfig,
    MinimaxRefinement,
};
