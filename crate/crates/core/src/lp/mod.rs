//! Continuous relaxations over bounded columns.
//!
//! [`LpProblem`] is the plain value type; [`Simplex`] is the stateful engine
//! the branch-and-cut driver keeps alive across cut rounds and nodes.

mod simplex;

pub use simplex::{Basis, Simplex, SimplexOutcome, VarStatus};

use crate::error::{Error, Result};
use crate::formulation::LinearRow;

/// Feasibility tolerance for reported solutions.
pub const FEASIBILITY_TOL: f64 = 1e-7;
/// Integrality detection tolerance.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

impl From<SimplexOutcome> for LpStatus {
    fn from(o: SimplexOutcome) -> Self {
        match o {
            SimplexOutcome::Optimal => LpStatus::Optimal,
            SimplexOutcome::Infeasible => LpStatus::Infeasible,
            SimplexOutcome::IterationLimit => LpStatus::IterationLimit,
        }
    }
}

/// `max objective·x` subject to `rows` and `lower ≤ x ≤ upper`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LinearRow>,
}

impl LpProblem {
    /// All columns bounded in `[0, 1]`, no rows.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        LpProblem { objective, lower: vec![0.0; n], upper: vec![1.0; n], rows: Vec::new() }
    }

    pub fn num_cols(&self) -> usize {
        self.objective.len()
    }

    pub fn add_rows(&mut self, rows: impl IntoIterator<Item = LinearRow>) -> Result<()> {
        let ncols = self.num_cols();
        let rows: Vec<LinearRow> = rows.into_iter().collect();
        for row in &rows {
            if let Some(&(col, _)) = row.coefs.iter().find(|&&(c, _)| c >= ncols) {
                return Err(Error::UnknownColumn { col, ncols });
            }
        }
        self.rows.extend(rows);
        Ok(())
    }

    /// Largest row or bound violation of `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(values));
        let bounds = values.iter().enumerate().map(|(j, &v)| (self.lower[j] - v).max(v - self.upper[j]));
        rows.chain(bounds).fold(0.0, f64::max)
    }

    pub fn to_simplex(&self) -> Simplex {
        let mut s = Simplex::new(&self.objective, &self.lower, &self.upper);
        s.add_rows(&self.rows);
        s
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Column values; for non-optimal statuses these are the last iterate.
    pub values: Vec<f64>,
    pub objective: f64,
    pub basis: Basis,
}

/// Solves `p`, optionally warm-started from an earlier basis of the same
/// shape.
pub fn lp_solve(p: &LpProblem, warm: Option<&Basis>) -> LpSolution {
    let mut s = p.to_simplex();
    if let Some(b) = warm {
        s.set_basis(b);
    }
    let status = LpStatus::from(s.solve());
    LpSolution { status, values: s.values().to_vec(), objective: s.objective(), basis: s.basis() }
}
