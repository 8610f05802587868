//! Bounded-variable dual simplex over a dense explicit basis inverse.
//!
//! Every row `a·x (sense) b` gets a slack `s` with `a·x + s = b`; the slack
//! bounds encode the sense (`≤`: `[0, ∞)`, `≥`: `(-∞, 0]`, `=`: `[0, 0]`).
//! Internally the objective is minimized (`cost = -objective`).
//!
//! Structural columns are boxed, so the all-slack basis with each structural
//! at its cost-preferred bound is always dual feasible. That makes the dual
//! simplex the natural workhorse: added rows and tightened bounds only break
//! primal feasibility. When refactorization noise leaves a one-sided slack
//! dual infeasible, its cost is shifted for the dual phase and a primal
//! phase removes the shift afterwards.

#![allow(clippy::needless_range_loop)] // dense kernels index several arrays at once

use crate::formulation::{LinearRow, Sense};

pub(crate) const PRIMAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
pub(crate) const PIVOT_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 64;
const DEGENERATE_SWITCH: usize = 150;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarStatus {
    Basic,
    AtLower,
    AtUpper,
}

/// Basis snapshot: one status per structural column followed by one per row
/// slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub status: Vec<VarStatus>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexOutcome {
    Optimal,
    Infeasible,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct Simplex {
    ncols: usize,
    /// Structural columns as (row, value) lists.
    cols: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    shifted: Vec<usize>,
    status: Vec<VarStatus>,
    /// Variable basic in each row position.
    basis: Vec<usize>,
    /// Position of each basic variable in `basis`.
    pos: Vec<usize>,
    /// Row-major `m × m` inverse of the basis matrix.
    binv: Vec<f64>,
    x: Vec<f64>,
    d: Vec<f64>,
    since_refactor: usize,
    primal_dirty: bool,
    pub iteration_limit: usize,
    pub iterations: usize,
}

fn slack_bounds(sense: Sense) -> (f64, f64) {
    match sense {
        Sense::Le => (0.0, f64::INFINITY),
        Sense::Ge => (f64::NEG_INFINITY, 0.0),
        Sense::Eq => (0.0, 0.0),
    }
}

impl Simplex {
    /// `objective` is maximized. Bounds must be finite for structurals.
    pub fn new(objective: &[f64], lower: &[f64], upper: &[f64]) -> Self {
        let ncols = objective.len();
        let mut s = Simplex {
            ncols,
            cols: vec![Vec::new(); ncols],
            rhs: Vec::new(),
            lower: lower.to_vec(),
            upper: upper.to_vec(),
            cost: objective.iter().map(|c| -c).collect(),
            shifted: Vec::new(),
            status: vec![VarStatus::AtLower; ncols],
            basis: Vec::new(),
            pos: vec![usize::MAX; ncols],
            binv: Vec::new(),
            x: vec![0.0; ncols],
            d: vec![0.0; ncols],
            since_refactor: 0,
            primal_dirty: true,
            iteration_limit: 50_000,
            iterations: 0,
        };
        for j in 0..ncols {
            s.d[j] = s.cost[j];
            s.place_nonbasic(j);
        }
        s
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.ncols
    }

    fn m(&self) -> usize {
        self.rhs.len()
    }

    fn nvars(&self) -> usize {
        self.ncols + self.m()
    }

    /// Puts nonbasic `j` at the bound its reduced cost prefers (or the
    /// finite one).
    fn place_nonbasic(&mut self, j: usize) {
        let (l, u) = (self.lower[j], self.upper[j]);
        let at_upper = if l == f64::NEG_INFINITY {
            true
        } else if u == f64::INFINITY {
            false
        } else {
            self.d[j] < 0.0
        };
        self.status[j] = if at_upper { VarStatus::AtUpper } else { VarStatus::AtLower };
        self.x[j] = if at_upper { u } else { l };
    }

    /// Appends rows; each new slack enters the basis.
    pub fn add_rows(&mut self, rows: &[LinearRow]) {
        if rows.is_empty() {
            return;
        }
        let old_m = self.m();
        let new_m = old_m + rows.len();
        // grow the inverse: [[B^-1, 0], [-a_B B^-1, I]]
        let mut binv = vec![0.0; new_m * new_m];
        for i in 0..old_m {
            binv[i * new_m..i * new_m + old_m].copy_from_slice(&self.binv[i * old_m..(i + 1) * old_m]);
        }
        // slack variables are renumbered: slack of row i sits at ncols + i,
        // so existing slack ids are unchanged and new ones append.
        for (k, row) in rows.iter().enumerate() {
            let r = old_m + k;
            for &(c, v) in &row.coefs {
                self.cols[c].push((r, v));
                if self.status[c] == VarStatus::Basic {
                    let p = self.pos[c];
                    for i in 0..old_m {
                        binv[r * new_m + i] -= v * self.binv[p * old_m + i];
                    }
                }
            }
            binv[r * new_m + r] = 1.0;
            let (l, u) = slack_bounds(row.sense);
            self.rhs.push(row.rhs);
            self.lower.push(l);
            self.upper.push(u);
            self.cost.push(0.0);
            self.d.push(0.0);
            let activity: f64 = row.coefs.iter().map(|&(c, v)| v * self.x[c]).sum();
            self.x.push(row.rhs - activity);
            self.status.push(VarStatus::Basic);
            self.pos.push(r);
            self.basis.push(self.ncols + r);
        }
        self.binv = binv;
    }

    /// Changes the bounds of structural column `j`.
    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        if self.lower[j] == lo && self.upper[j] == hi {
            return;
        }
        self.lower[j] = lo;
        self.upper[j] = hi;
        if self.status[j] != VarStatus::Basic {
            let old = self.x[j];
            self.place_nonbasic(j);
            if self.x[j] != old {
                self.primal_dirty = true;
            }
        }
    }

    pub fn bounds(&self, j: usize) -> (f64, f64) {
        (self.lower[j], self.upper[j])
    }

    pub fn values(&self) -> &[f64] {
        &self.x[..self.ncols]
    }

    /// Objective in the caller's (maximization) sense.
    pub fn objective(&self) -> f64 {
        -(0..self.ncols).map(|j| self.cost[j] * self.x[j]).sum::<f64>()
    }

    pub fn basis(&self) -> Basis {
        Basis { status: self.status.clone() }
    }

    /// Installs a basis snapshot. Returns false (and keeps the slack basis)
    /// when the snapshot does not fit or is singular.
    pub fn set_basis(&mut self, basis: &Basis) -> bool {
        if basis.status.len() != self.nvars()
            || basis.status.iter().filter(|&&s| s == VarStatus::Basic).count() != self.m()
        {
            return false;
        }
        let saved = (self.status.clone(), self.basis.clone(), self.pos.clone());
        self.status = basis.status.clone();
        self.basis = (0..self.nvars()).filter(|&j| self.status[j] == VarStatus::Basic).collect();
        self.pos = vec![usize::MAX; self.nvars()];
        for (p, &j) in self.basis.iter().enumerate() {
            self.pos[j] = p;
        }
        for j in 0..self.nvars() {
            match self.status[j] {
                VarStatus::AtLower => self.x[j] = self.lower[j],
                VarStatus::AtUpper => self.x[j] = self.upper[j],
                VarStatus::Basic => {}
            }
            if !self.x[j].is_finite() && self.status[j] != VarStatus::Basic {
                self.x[j] = if self.lower[j].is_finite() { self.lower[j] } else { self.upper[j] };
            }
        }
        if self.refactor() {
            true
        } else {
            (self.status, self.basis, self.pos) = saved;
            self.reset_to_slack_basis();
            false
        }
    }

    fn column(&self, j: usize) -> ColumnIter<'_> {
        if j < self.ncols {
            ColumnIter::Structural(self.cols[j].iter())
        } else {
            ColumnIter::Slack(Some(j - self.ncols))
        }
    }

    fn reset_to_slack_basis(&mut self) {
        let m = self.m();
        for j in 0..self.ncols {
            self.status[j] = VarStatus::AtLower;
        }
        self.basis = (0..m).map(|i| self.ncols + i).collect();
        self.pos = vec![usize::MAX; self.nvars()];
        for i in 0..m {
            self.status[self.ncols + i] = VarStatus::Basic;
            self.pos[self.ncols + i] = i;
        }
        self.binv = vec![0.0; m * m];
        for i in 0..m {
            self.binv[i * m + i] = 1.0;
        }
        self.compute_duals();
        for j in 0..self.ncols {
            self.place_nonbasic(j);
        }
        self.compute_primal();
        self.since_refactor = 0;
    }

    /// Recomputes `B^-1` from scratch. Returns false if the basis is
    /// numerically singular.
    fn refactor(&mut self) -> bool {
        let m = self.m();
        let mut a = vec![0.0; m * m];
        for (p, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column(j) {
                a[i * m + p] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        // Gauss-Jordan with partial pivoting on A -> I, applying to inv.
        for c in 0..m {
            let mut best = c;
            let mut best_val = a[c * m + c].abs();
            for r in c + 1..m {
                let v = a[r * m + c].abs();
                if v > best_val {
                    best = r;
                    best_val = v;
                }
            }
            if best_val < 1e-11 {
                return false;
            }
            if best != c {
                for k in 0..m {
                    a.swap(c * m + k, best * m + k);
                    inv.swap(c * m + k, best * m + k);
                }
            }
            let piv = a[c * m + c];
            for k in 0..m {
                a[c * m + k] /= piv;
                inv[c * m + k] /= piv;
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c];
                if f == 0.0 {
                    continue;
                }
                for k in 0..m {
                    a[r * m + k] -= f * a[c * m + k];
                    inv[r * m + k] -= f * inv[c * m + k];
                }
            }
        }
        // Row p of inv corresponds to column p of A, i.e. basis position p.
        self.binv = inv;
        self.since_refactor = 0;
        self.compute_primal();
        self.compute_duals();
        true
    }

    fn compute_primal(&mut self) {
        let m = self.m();
        let mut r = self.rhs.clone();
        for j in 0..self.nvars() {
            if self.status[j] == VarStatus::Basic {
                continue;
            }
            let xj = self.x[j];
            if xj == 0.0 {
                continue;
            }
            for (i, v) in self.column(j) {
                r[i] -= v * xj;
            }
        }
        for p in 0..m {
            let row = &self.binv[p * m..(p + 1) * m];
            let val: f64 = row.iter().zip(&r).map(|(a, b)| a * b).sum();
            let j = self.basis[p];
            self.x[j] = val;
        }
        self.primal_dirty = false;
    }

    fn compute_duals(&mut self) {
        let m = self.m();
        let mut y = vec![0.0; m];
        for p in 0..m {
            let cb = self.cost[self.basis[p]];
            if cb == 0.0 {
                continue;
            }
            let row = &self.binv[p * m..(p + 1) * m];
            for i in 0..m {
                y[i] += cb * row[i];
            }
        }
        for j in 0..self.nvars() {
            if self.status[j] == VarStatus::Basic {
                self.d[j] = 0.0;
            } else {
                let ya: f64 = self.column(j).map(|(i, v)| y[i] * v).sum();
                self.d[j] = self.cost[j] - ya;
            }
        }
    }

    /// Makes every nonbasic variable dual feasible by bound flips, shifting
    /// costs where no flip is possible.
    fn restore_dual_feasibility(&mut self) {
        for j in 0..self.nvars() {
            let st = self.status[j];
            if st == VarStatus::Basic || self.lower[j] == self.upper[j] {
                continue;
            }
            let dj = self.d[j];
            let wrong = (st == VarStatus::AtLower && dj < -DUAL_TOL) || (st == VarStatus::AtUpper && dj > DUAL_TOL);
            if !wrong {
                continue;
            }
            let target = if st == VarStatus::AtLower { self.upper[j] } else { self.lower[j] };
            if target.is_finite() {
                self.status[j] = if st == VarStatus::AtLower { VarStatus::AtUpper } else { VarStatus::AtLower };
                self.x[j] = target;
                self.primal_dirty = true;
            } else {
                self.cost[j] -= dj;
                self.d[j] = 0.0;
                self.shifted.push(j);
            }
        }
        if self.primal_dirty {
            self.compute_primal();
        }
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m();
        let mut alpha = vec![0.0; m];
        for (i, v) in self.column(j) {
            for p in 0..m {
                alpha[p] += self.binv[p * m + i] * v;
            }
        }
        alpha
    }

    /// Basis change: `q` enters at position `r`; the leaving variable goes
    /// nonbasic with `leave_status`.
    fn pivot(&mut self, r: usize, q: usize, alpha_q: &[f64], leave_status: VarStatus) {
        let m = self.m();
        let piv = alpha_q[r];
        let (head, rest) = self.binv.split_at_mut(r * m);
        let (prow, tail) = rest.split_at_mut(m);
        for v in prow.iter_mut() {
            *v /= piv;
        }
        for (p, row) in head.chunks_mut(m).chain(tail.chunks_mut(m)).enumerate() {
            let idx = if p < r { p } else { p + 1 };
            let f = alpha_q[idx];
            if f == 0.0 {
                continue;
            }
            for (a, b) in row.iter_mut().zip(prow.iter()) {
                *a -= f * b;
            }
        }
        let leaving = self.basis[r];
        self.status[leaving] = leave_status;
        self.pos[leaving] = usize::MAX;
        self.x[leaving] = match leave_status {
            VarStatus::AtLower => self.lower[leaving],
            VarStatus::AtUpper => self.upper[leaving],
            VarStatus::Basic => unreachable!(),
        };
        self.basis[r] = q;
        self.status[q] = VarStatus::Basic;
        self.pos[q] = r;
        self.since_refactor += 1;
        self.iterations += 1;
    }

    /// Row `r` of `B^-1 A` over all nonbasic variables (zero elsewhere).
    fn pivot_row(&self, r: usize) -> Vec<f64> {
        let m = self.m();
        let rho = &self.binv[r * m..(r + 1) * m];
        let mut out = vec![0.0; self.nvars()];
        for j in 0..self.nvars() {
            if self.status[j] == VarStatus::Basic {
                continue;
            }
            out[j] = self.column(j).map(|(i, v)| rho[i] * v).sum();
        }
        out
    }

    fn infeasibility(&self, j: usize) -> f64 {
        let v = self.x[j];
        if v < self.lower[j] - PRIMAL_TOL {
            self.lower[j] - v
        } else if v > self.upper[j] + PRIMAL_TOL {
            v - self.upper[j]
        } else {
            0.0
        }
    }

    pub fn solve(&mut self) -> SimplexOutcome {
        if self.primal_dirty {
            self.compute_primal();
        }
        self.restore_dual_feasibility();
        let start = self.iterations;
        let mut retried = false;
        for _ in 0..10 {
            match self.dual_phase(start) {
                SimplexOutcome::IterationLimit => return SimplexOutcome::IterationLimit,
                SimplexOutcome::Infeasible => {
                    // confirm on a fresh factorization before giving up
                    if retried || self.since_refactor == 0 {
                        return SimplexOutcome::Infeasible;
                    }
                    retried = true;
                    self.refresh();
                    continue;
                }
                SimplexOutcome::Optimal => {}
            }
            if !self.shifted.is_empty() {
                for j in std::mem::take(&mut self.shifted) {
                    self.cost[j] = 0.0;
                }
                self.compute_duals();
                if self.primal_phase(start) == SimplexOutcome::IterationLimit {
                    return SimplexOutcome::IterationLimit;
                }
            }
            self.compute_primal();
            let primal_ok = self.basis.iter().all(|&j| self.infeasibility(j) == 0.0) && self.rows_hold();
            let dual_ok = (0..self.nvars()).all(|j| self.dual_ok(j));
            if primal_ok && dual_ok {
                return SimplexOutcome::Optimal;
            }
            self.refresh();
        }
        SimplexOutcome::IterationLimit
    }

    /// Refactorizes (falling back to the slack basis) and restores dual
    /// feasibility.
    fn refresh(&mut self) {
        if !self.refactor() {
            self.reset_to_slack_basis();
        }
        self.restore_dual_feasibility();
    }

    /// Checks every row against the structural values directly.
    fn rows_hold(&self) -> bool {
        let mut act = vec![0.0; self.m()];
        for j in 0..self.ncols {
            let xj = self.x[j];
            if xj != 0.0 {
                for &(i, v) in &self.cols[j] {
                    act[i] += v * xj;
                }
            }
        }
        (0..self.m()).all(|i| {
            let slack = self.rhs[i] - act[i];
            let k = self.ncols + i;
            slack >= self.lower[k] - PRIMAL_TOL && slack <= self.upper[k] + PRIMAL_TOL
        })
    }

    /// Reduced cost slack in the direction the variable may move; negative
    /// values are treated as zero.
    fn dual_slack(&self, j: usize) -> f64 {
        match self.status[j] {
            VarStatus::AtLower => self.d[j].max(0.0),
            VarStatus::AtUpper => (-self.d[j]).max(0.0),
            VarStatus::Basic => 0.0,
        }
    }

    fn dual_ok(&self, j: usize) -> bool {
        let tol = 1e-7;
        match self.status[j] {
            VarStatus::Basic => true,
            _ if self.lower[j] == self.upper[j] => true,
            VarStatus::AtLower => self.d[j] >= -tol,
            VarStatus::AtUpper => self.d[j] <= tol,
        }
    }

    fn dual_phase(&mut self, start: usize) -> SimplexOutcome {
        let mut degenerate = 0usize;
        loop {
            if self.iterations - start > self.iteration_limit {
                return SimplexOutcome::IterationLimit;
            }
            if self.since_refactor >= REFACTOR_EVERY {
                self.refresh();
            }
            let bland = degenerate > DEGENERATE_SWITCH;

            // leaving variable
            let mut r = usize::MAX;
            let mut best = 0.0;
            for p in 0..self.m() {
                let j = self.basis[p];
                let inf = self.infeasibility(j);
                if inf > 0.0 {
                    if bland {
                        if r == usize::MAX || j < self.basis[r] {
                            r = p;
                        }
                    } else if inf > best {
                        best = inf;
                        r = p;
                    }
                }
            }
            if r == usize::MAX {
                return SimplexOutcome::Optimal;
            }
            let leaving = self.basis[r];
            let to_lower = self.x[leaving] < self.lower[leaving];
            let alpha_r = self.pivot_row(r);

            // ratio test (Harris two-pass unless in Bland mode)
            let eligible = |j: usize| -> bool {
                if self.status[j] == VarStatus::Basic || self.lower[j] == self.upper[j] {
                    return false;
                }
                let a = alpha_r[j];
                if a.abs() < PIVOT_TOL {
                    return false;
                }
                let sa = if to_lower { a } else { -a };
                match self.status[j] {
                    VarStatus::AtLower => sa < 0.0,
                    VarStatus::AtUpper => sa > 0.0,
                    VarStatus::Basic => false,
                }
            };
            let mut q = usize::MAX;
            if bland {
                let mut best_ratio = f64::INFINITY;
                for j in 0..self.nvars() {
                    if !eligible(j) {
                        continue;
                    }
                    let ratio = self.dual_slack(j) / alpha_r[j].abs();
                    if ratio < best_ratio - 1e-12 {
                        best_ratio = ratio;
                        q = j;
                    }
                }
            } else {
                let mut bound = f64::INFINITY;
                for j in 0..self.nvars() {
                    if eligible(j) {
                        bound = bound.min((self.dual_slack(j) + DUAL_TOL) / alpha_r[j].abs());
                    }
                }
                let mut best_alpha = 0.0;
                for j in 0..self.nvars() {
                    if eligible(j) && self.dual_slack(j) / alpha_r[j].abs() <= bound && alpha_r[j].abs() > best_alpha {
                        best_alpha = alpha_r[j].abs();
                        q = j;
                    }
                }
            }
            if q == usize::MAX {
                return SimplexOutcome::Infeasible;
            }

            let alpha_q = self.ftran(q);
            let theta_d = self.d[q] / alpha_r[q];
            let target = if to_lower { self.lower[leaving] } else { self.upper[leaving] };
            let delta_q = (self.x[leaving] - target) / alpha_q[r];

            // primal update
            for p in 0..self.m() {
                let j = self.basis[p];
                self.x[j] -= alpha_q[p] * delta_q;
            }
            self.x[q] += delta_q;
            // dual update
            for j in 0..self.nvars() {
                if self.status[j] != VarStatus::Basic {
                    self.d[j] -= theta_d * alpha_r[j];
                }
            }
            self.d[q] = 0.0;
            self.d[leaving] = -theta_d;
            if theta_d.abs() < 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            let leave_status = if to_lower { VarStatus::AtLower } else { VarStatus::AtUpper };
            self.pivot(r, q, &alpha_q, leave_status);
            // keep the nonbasic's reduced cost sign consistent with its bound
            let dl = self.d[leaving];
            if (leave_status == VarStatus::AtLower && dl < 0.0) || (leave_status == VarStatus::AtUpper && dl > 0.0) {
                self.d[leaving] = 0.0;
            }
        }
    }

    fn primal_phase(&mut self, start: usize) -> SimplexOutcome {
        let mut degenerate = 0usize;
        loop {
            if self.iterations - start > self.iteration_limit {
                return SimplexOutcome::IterationLimit;
            }
            if self.since_refactor >= REFACTOR_EVERY && !self.refactor() {
                // singular: hand back to the dual phase from the slack basis
                self.reset_to_slack_basis();
                return SimplexOutcome::Optimal;
            }
            let bland = degenerate > DEGENERATE_SWITCH;
            let mut q = usize::MAX;
            let mut best = 0.0;
            for j in 0..self.nvars() {
                if self.status[j] == VarStatus::Basic || self.lower[j] == self.upper[j] {
                    continue;
                }
                let viol = match self.status[j] {
                    VarStatus::AtLower if self.d[j] < -DUAL_TOL => -self.d[j],
                    VarStatus::AtUpper if self.d[j] > DUAL_TOL => self.d[j],
                    _ => 0.0,
                };
                if viol > 0.0 {
                    if bland {
                        q = j;
                        break;
                    }
                    if viol > best {
                        best = viol;
                        q = j;
                    }
                }
            }
            if q == usize::MAX {
                return SimplexOutcome::Optimal;
            }
            let dir = if self.status[q] == VarStatus::AtLower { 1.0 } else { -1.0 };
            let alpha_q = self.ftran(q);
            // x_B(t) = x_B - dir * alpha_q * t
            let mut t_max = self.upper[q] - self.lower[q];
            let mut r = usize::MAX;
            let mut r_alpha = 0.0;
            for p in 0..self.m() {
                let a = dir * alpha_q[p];
                if a.abs() < PIVOT_TOL {
                    continue;
                }
                let j = self.basis[p];
                let limit = if a > 0.0 {
                    if self.lower[j] == f64::NEG_INFINITY {
                        continue;
                    }
                    ((self.x[j] - self.lower[j]).max(0.0)) / a
                } else {
                    if self.upper[j] == f64::INFINITY {
                        continue;
                    }
                    ((self.upper[j] - self.x[j]).max(0.0)) / -a
                };
                if limit < t_max - 1e-12 || (limit <= t_max + 1e-12 && r != usize::MAX && a.abs() > r_alpha) {
                    t_max = limit;
                    r = p;
                    r_alpha = a.abs();
                }
            }
            if !t_max.is_finite() {
                // cannot happen with boxed structurals
                return SimplexOutcome::Optimal;
            }
            for p in 0..self.m() {
                let j = self.basis[p];
                self.x[j] -= dir * alpha_q[p] * t_max;
            }
            self.x[q] += dir * t_max;
            if t_max.abs() < 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            if r == usize::MAX {
                // bound flip
                self.status[q] = if dir > 0.0 { VarStatus::AtUpper } else { VarStatus::AtLower };
                self.x[q] = if dir > 0.0 { self.upper[q] } else { self.lower[q] };
                continue;
            }
            let leaving = self.basis[r];
            let a = dir * alpha_q[r];
            let leave_status = if a > 0.0 { VarStatus::AtLower } else { VarStatus::AtUpper };
            let alpha_r = self.pivot_row(r);
            let theta_d = self.d[q] / alpha_r[q];
            for j in 0..self.nvars() {
                if self.status[j] != VarStatus::Basic {
                    self.d[j] -= theta_d * alpha_r[j];
                }
            }
            self.d[q] = 0.0;
            self.d[leaving] = -theta_d;
            self.pivot(r, q, &alpha_q, leave_status);
        }
    }
}

enum ColumnIter<'a> {
    Structural(std::slice::Iter<'a, (usize, f64)>),
    Slack(Option<usize>),
}

impl Iterator for ColumnIter<'_> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<(usize, f64)> {
        match self {
            ColumnIter::Structural(it) => it.next().copied(),
            ColumnIter::Slack(row) => row.take().map(|i| (i, 1.0)),
        }
    }
}
