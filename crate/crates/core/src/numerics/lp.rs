//! Dense two-phase simplex with Bland's rule.
//!
//! Meant for the small oracle programs in this crate (a few dozen variables),
//! where termination on degenerate vertices matters more than speed.

use crate::error::{domain, Error, Result};

pub const MAX_LP_SIZE: usize = 200;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
struct Row {
    coeffs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

/// `minimize c^T x` subject to linear rows; variables are nonnegative unless
/// marked free.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    rows: Vec<Row>,
    nonneg: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    /// One multiplier per constraint row, with `b^T y = value` at optimality.
    /// Signs: `>=` rows nonnegative, `<=` rows nonpositive, `=` rows free.
    pub duals: Vec<f64>,
}

impl LpProblem {
    /// New minimization problem with all variables nonnegative.
    pub fn minimize(objective: Vec<f64>) -> Self {
        let n = objective.len();
        LpProblem { objective, rows: Vec::new(), nonneg: vec![true; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        self.rows.push(Row { coeffs, relation, rhs });
    }

    /// Adds a row from sparse `(index, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, f64)], relation: Relation, rhs: f64) {
        let mut coeffs = vec![0.0; self.objective.len()];
        for &(j, c) in terms {
            coeffs[j] += c;
        }
        self.add_constraint(coeffs, relation, rhs);
    }

    pub fn constraint(&self, i: usize) -> (&[f64], Relation, f64) {
        let r = &self.rows[i];
        (&r.coeffs, r.relation, r.rhs)
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if n == 0 {
            return Err(domain("linear program has no variables"));
        }
        if n > MAX_LP_SIZE || self.rows.len() > MAX_LP_SIZE {
            return Err(Error::Capacity(format!(
                "linear program with {n} variables and {} constraints exceeds {MAX_LP_SIZE}",
                self.rows.len()
            )));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(domain("objective has non-finite coefficients"));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.coeffs.len() != n {
                return Err(domain(format!("constraint {i} has {} coefficients, expected {n}", r.coeffs.len())));
            }
            if !r.rhs.is_finite() || r.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(domain(format!("constraint {i} has non-finite entries")));
            }
        }
        Ok(())
    }
}

struct Tableau {
    // m rows of (ncols + 1) entries, rhs last.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.ncols + 1;
        let p = self.t[row][col];
        for k in 0..w {
            self.t[row][k] /= p;
        }
        self.t[row][col] = 1.0;
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col];
            if factor != 0.0 {
                for k in 0..w {
                    r[k] -= factor * pivot_row[k];
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - c_B^T B^{-1} A_j` for the given cost vector.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (dj, tij) in d.iter_mut().zip(&self.t[i]) {
                    *dj -= cb * tij;
                }
            }
        }
        d
    }

    /// Runs simplex iterations with Bland's rule. Columns at or beyond
    /// `enter_limit` never enter the basis.
    fn optimize(&mut self, cost: &[f64], enter_limit: usize) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let d = self.reduced_costs(cost);
            let entering = (0..enter_limit).find(|&j| d[j] < -COST_TOL && !self.basis.contains(&j));
            let Some(col) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let a = self.t[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-14 * br.abs().max(1.0)
                                || (ratio <= br + 1e-14 * br.abs().max(1.0) && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Err(Error::Unbounded),
                Some((row, _)) => self.pivot(row, col),
            }
        }
        Err(Error::Internal("simplex pivot limit reached".into()))
    }
}

/// Solves the linear program; reports infeasibility or unboundedness.
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution> {
    problem.validate()?;
    let n = problem.objective.len();
    let m = problem.rows.len();

    // Structural columns: one per variable plus a negative part for free ones.
    let mut neg_col = vec![None; n];
    let mut nstruct = n;
    for (col, &nonneg) in neg_col.iter_mut().zip(&problem.nonneg) {
        if !nonneg {
            *col = Some(nstruct);
            nstruct += 1;
        }
    }
    let nslack = problem.rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let first_slack = nstruct;
    let first_artificial = nstruct + nslack;
    let ncols = first_artificial + m;

    let mut t = vec![vec![0.0; ncols + 1]; m];
    let mut flip = vec![1.0; m];
    let mut slack = first_slack;
    for (i, row) in problem.rows.iter().enumerate() {
        let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
        flip[i] = sign;
        for j in 0..n {
            t[i][j] = sign * row.coeffs[j];
            if let Some(c) = neg_col[j] {
                t[i][c] = -sign * row.coeffs[j];
            }
        }
        match row.relation {
            Relation::Le => {
                t[i][slack] = sign;
                slack += 1;
            }
            Relation::Ge => {
                t[i][slack] = -sign;
                slack += 1;
            }
            Relation::Eq => {}
        }
        t[i][first_artificial + i] = 1.0;
        t[i][ncols] = sign * row.rhs;
    }
    let mut tab = Tableau { t, basis: (first_artificial..ncols).collect(), ncols, first_artificial };

    // Phase 1.
    let mut phase1_cost = vec![0.0; ncols];
    for c in phase1_cost.iter_mut().skip(first_artificial) {
        *c = 1.0;
    }
    tab.optimize(&phase1_cost, first_artificial)?;
    let infeasibility: f64 = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= first_artificial)
        .map(|(i, _)| tab.rhs(i))
        .sum();
    let scale = 1.0 + problem.rows.iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
    if infeasibility > FEAS_TOL * scale {
        return Err(Error::Infeasible);
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are redundant and stay inert.
    for i in 0..m {
        if tab.basis[i] >= first_artificial {
            if let Some(col) = (0..first_artificial)
                .filter(|&j| !tab.basis.contains(&j))
                .max_by(|&a, &b| tab.t[i][a].abs().total_cmp(&tab.t[i][b].abs()))
            {
                if tab.t[i][col].abs() > 1e-9 {
                    tab.pivot(i, col);
                }
            }
        }
    }

    // Phase 2.
    let mut cost = vec![0.0; ncols];
    for j in 0..n {
        cost[j] = problem.objective[j];
        if let Some(c) = neg_col[j] {
            cost[c] = -problem.objective[j];
        }
    }
    tab.optimize(&cost, tab.first_artificial)?;

    let mut col_value = vec![0.0; ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        col_value[b] = tab.rhs(i).max(0.0);
    }
    let x: Vec<f64> = (0..n)
        .map(|j| col_value[j] - neg_col[j].map_or(0.0, |c| col_value[c]))
        .collect();
    let value: f64 = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let duals: Vec<f64> = (0..m)
        .map(|k| {
            let col = first_artificial + k;
            let y: f64 = tab.basis.iter().enumerate().map(|(i, &b)| cost[b] * tab.t[i][col]).sum();
            flip[k] * y
        })
        .collect();
    Ok(LpSolution { value, x, duals })
}
