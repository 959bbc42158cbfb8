//! Finite-dimensional linear algebra over either scalar backend.

mod matrix;
mod pinv;
mod projection;
mod subspace;
mod vector;

pub use matrix::{Matrix, Rref};
pub use pinv::{moore_penrose, moore_penrose_rank_factorization, moore_penrose_svd};
pub use projection::{
    graph_projection, graph_subspace, is_transversal, kernel, oblique_projection_direct,
    oblique_projection_mp, oblique_projection_mp_in_metric, orthogonal_projection, range,
};
pub use subspace::{Subspace, SUBSPACE_ANGLE_TOL};
pub use vector::Vector;
