//! Exact computational toolkit for circulation algebras.
//!
//! Starting from a rectangular matrix `A` over the rationals, the crate works
//! inside the square-free quotient `B(E) = Q[x_e] / (x_e^2)` and studies the
//! subalgebra generated by the row forms `y_v = sum_e A[v,e] x_e`. The graded
//! dimensions of that subalgebra (its Hilbert function) count independent
//! column subsets of `A` weighted by external activity, and for the incidence
//! matrices of multigraphs they count spanning forests, odd-circle
//! pseudoforests, and (for generic gain graphs) pseudoforests.
//!
//! Everything is computed twice, by design: once through exact linear algebra
//! on the algebra side, and once through brute-force combinatorial
//! enumeration. The [`verify`] module pits the two engines against each other.

pub mod algebra;
pub mod corpus;
pub mod enumeration;
pub mod graphs;
pub mod io;
pub mod matroid;
pub mod rational;
pub mod subset;
pub mod verify;

pub use algebra::{
    generators_from_matrix, graded_dimension, hilbert_function, kernel_basis, matches_magnitudes,
    matrix_rank, parallel_vectors, AlgebraError, ExactMatrix, HilbertFunction, SquareFreeElement,
};
pub use enumeration::{
    classify_subgraph, cycle_gain, enumerate_cycles, enumerate_odd_circle_pseudoforests,
    enumerate_pseudoforests, enumerate_spanning_forests, even_activity, even_activity_profile,
    external_activity, forest_activity_profile, is_gainless, ActivityProfile, CycleDirection,
    EdgeOrdering, EnumerationError, SubgraphClass, DEFAULT_EDGE_CAP,
};
pub use graphs::{
    directed_incidence, gain_graph_from_matrix, gain_incidence, reorient_edge,
    undirected_incidence, GainAssignment, GeneralizedIncidenceMatrix, GraphError, Multigraph,
    Orientation, RecoveredGainGraph, Reorientation,
};
pub use matroid::{
    orientation_independent_bruteforce, orientation_independent_criterion,
    subset_product_condition, DeciderMethod, MatroidError, OrientationReport,
    SubsetProductCheck, VectorMatroid,
};
pub use rational::{parse_rational, rat, ratio, Rational};
pub use subset::EdgeSubset;
pub use verify::{
    hilbert_across_orientations, sweep_theorem, verify_1, verify_2, verify_a, verify_b,
    verify_lemma, verify_main, SweepOptions, TheoremKind, VerificationRecord, VerifyError,
    VerifyStatus,
};
