//! Exact branch-and-cut for the longest induced path problem.
//!
//! Three integer programming models are provided over the transformed graph
//! `G_s` (the input graph plus a dummy vertex adjacent to every vertex):
//!
//! * `cec`: degree equations plus explicit cycle elimination rows,
//! * `cut`: the same static rows with cutset (or subtour) connectivity rows,
//! * `bcwwy`: the edge-based baseline with vertex linking variables.
//!
//! The exponential row families are separated lazily by [`separation`] and
//! the tree search in [`solver`] runs on the in-crate dual simplex of [`lp`].
//! [`polylab`] checks membership of points in the three relaxations and
//! compares their root bounds.

pub mod error;
pub mod formulation;
pub mod graph;
pub mod heuristic;
pub mod io;
pub mod lp;
pub mod polylab;
pub mod separation;
pub mod solver;

pub use error::{Error, Result};
pub use formulation::{FormulationKind, LinearRow, Model, RowFamily, Sense};
pub use graph::{Graph, TransformedGraph};
pub use heuristic::{ghlipp, verify_induced_path, HeuristicConfig, PathSolution};
pub use separation::Point;
pub use solver::{solve, CliqueMode, CutVariant, SolveReport, SolveStatus, SolverConfig};
