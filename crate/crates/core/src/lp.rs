//! Dense two-phase tableau simplex for the small programs that appear in
//! time allocation and sub-rate splitting.
//!
//! All variables are nonnegative. Pivoting follows Bland's rule (lowest
//! eligible column enters, ties in the ratio test leave by lowest basic
//! variable index), so the solver never cycles and always returns the same
//! vertex for the same input.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;
pub const MAX_ROWS: usize = 32;

/// Pivot and reduced-cost threshold.
const PIVOT_EPS: f64 = 1e-11;
/// Residual phase-one objective above which the program is infeasible.
const FEAS_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `max|min c^T x` subject to rows and `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub direction: Direction,
    pub objective: Vec<f64>,
    pub rows: Vec<LpRow>,
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<f64>) -> Self {
        Self { direction, objective, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push(LpRow { coeffs, sense, rhs });
        self
    }

    /// Adds a row from sparse `(index, coefficient)` pairs.
    pub fn add_sparse_row(&mut self, terms: &[(usize, f64)], sense: Sense, rhs: f64) -> &mut Self {
        let mut coeffs = vec![0.0; self.num_vars()];
        for &(i, c) in terms {
            if let Some(slot) = coeffs.get_mut(i) {
                *slot += c;
            } else {
                // keep the out-of-range index visible to `validate`
                coeffs.resize(i + 1, 0.0);
                coeffs[i] = c;
            }
        }
        self.add_row(coeffs, sense, rhs)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 || n > MAX_VARS {
            return Err(Error::Model(alloc::format!("variable count {n} outside 1..={MAX_VARS}")));
        }
        if self.rows.len() > MAX_ROWS {
            return Err(Error::Model(alloc::format!("{} constraints exceed {MAX_ROWS}", self.rows.len())));
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::Model("objective has a non-finite coefficient".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(Error::Model(alloc::format!(
                    "row {i} has {} coefficients, expected {n}",
                    row.coeffs.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(Error::Model(alloc::format!("row {i} has a non-finite entry")));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = x.iter().fold(0.0f64, |w, v| w.max(-v));
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            let v = match row.sense {
                Sense::Le => lhs - row.rhs,
                Sense::Ge => row.rhs - lhs,
                Sense::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values; meaningful only when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub objective: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

struct Tableau {
    /// `rows x (cols + 1)`, last column is the right-hand side.
    a: Vec<Vec<f64>>,
    /// Reduced-cost row for a maximization, `cols + 1` wide.
    obj: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
}

enum PivotOutcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.a[r][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= p;
        }
        self.a[row][col] = 1.0;
        let pivot_row = self.a[row].clone();
        for (r, other) in self.a.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = other[col];
            if f != 0.0 {
                for (v, pv) in other.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                other[col] = 0.0;
            }
        }
        let f = self.obj[col];
        if f != 0.0 {
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Loads `cost` (maximize) as the objective row, priced out against the
    /// current basis.
    fn set_objective(&mut self, cost: &[f64]) {
        let mut obj = vec![0.0; self.cols + 1];
        for (j, c) in cost.iter().enumerate() {
            obj[j] = -c;
        }
        for (r, &b) in self.basis.iter().enumerate() {
            let f = obj[b];
            if f != 0.0 {
                for (v, av) in obj.iter_mut().zip(&self.a[r]) {
                    *v -= f * av;
                }
            }
        }
        self.obj = obj;
    }

    /// Primal simplex over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> PivotOutcome {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j] < -PIVOT_EPS) else {
                return PivotOutcome::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.a.len() {
                let v = self.a[r][col];
                if v > PIVOT_EPS {
                    let ratio = self.rhs(r) / v;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - PIVOT_EPS
                                || (ratio <= lratio + PIVOT_EPS && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return PivotOutcome::Unbounded,
            }
        }
    }
}

/// Solves `lp` to optimality, or reports it infeasible or unbounded.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.rows.len();

    // Normalize to nonnegative right-hand sides.
    let rows: Vec<(Vec<f64>, Sense, f64)> = lp
        .rows
        .iter()
        .map(|r| {
            if r.rhs < 0.0 {
                let sense = match r.sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                (r.coeffs.iter().map(|v| -v).collect(), sense, -r.rhs)
            } else {
                (r.coeffs.clone(), r.sense, r.rhs)
            }
        })
        .collect();

    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Sense::Le).count();
    let art_start = n + n_slack;
    let cols = art_start + n_art;

    let mut a = vec![vec![0.0; cols + 1]; m];
    let mut basis = vec![0usize; m];
    let (mut s, mut t) = (n, art_start);
    for (i, (coeffs, sense, rhs)) in rows.iter().enumerate() {
        a[i][..n].copy_from_slice(coeffs);
        a[i][cols] = *rhs;
        match sense {
            Sense::Le => {
                a[i][s] = 1.0;
                basis[i] = s;
                s += 1;
            }
            Sense::Ge => {
                a[i][s] = -1.0;
                s += 1;
                a[i][t] = 1.0;
                basis[i] = t;
                t += 1;
            }
            Sense::Eq => {
                a[i][t] = 1.0;
                basis[i] = t;
                t += 1;
            }
        }
    }

    let mut tab = Tableau { a, obj: Vec::new(), basis, cols };

    if n_art > 0 {
        // Phase one: maximize -sum(artificials).
        let mut cost = vec![0.0; cols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -1.0;
        }
        tab.set_objective(&cost);
        tab.run(cols);
        if -tab.obj[cols] > FEAS_EPS {
            return Ok(LpSolution { status: LpStatus::Infeasible, x: vec![0.0; n], objective: f64::NAN });
        }
        // Drive remaining artificials out of the basis, dropping redundant rows.
        let mut r = 0;
        while r < tab.a.len() {
            if tab.basis[r] >= art_start {
                if let Some(col) = (0..art_start).find(|&j| tab.a[r][j].abs() > PIVOT_EPS) {
                    tab.pivot(r, col);
                } else {
                    tab.a.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }

    let sign = match lp.direction {
        Direction::Maximize => 1.0,
        Direction::Minimize => -1.0,
    };
    let mut cost = vec![0.0; cols];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = sign * c;
    }
    tab.set_objective(&cost);
    if let PivotOutcome::Unbounded = tab.run(art_start) {
        return Ok(LpSolution { status: LpStatus::Unbounded, x: vec![0.0; n], objective: f64::NAN });
    }

    let mut x = vec![0.0; n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(r).max(0.0);
        }
    }
    let objective = lp.objective_at(&x);
    Ok(LpSolution { status: LpStatus::Optimal, x, objective })
}
