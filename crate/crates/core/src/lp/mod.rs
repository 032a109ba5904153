//! Exact-rational linear programming.
//!
//! A dense two-phase primal simplex with Bland's rule. Every outcome carries
//! a certificate that [`LpOutcome::verify`] checks in exact arithmetic:
//! a dual solution with zero duality gap when optimal, a Farkas vector when
//! infeasible, and an improving ray when unbounded.
//!
//! Sign conventions for the dual `y` of a maximization problem:
//! `y_i >= 0` on `<=` rows, `y_i <= 0` on `>=` rows, free on `=` rows, and
//! `(A^T y)_j >= c_j` for nonnegative variables (`= c_j` for free ones).
//! For a minimization problem all of those inequalities flip.

mod simplex;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{dot, one, zero, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Structural(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarBound {
    /// `x >= 0`
    NonNegative,
    /// `x` unrestricted in sign
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    /// An LP over `num_vars` nonnegative variables with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        Self {
            sense: Sense::Maximize,
            objective: vec![zero(); num_vars],
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            bounds: vec![VarBound::NonNegative; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        self.sense = Sense::Maximize;
        self.objective = objective;
        self
    }

    pub fn minimize(&mut self, objective: Vec<Rational>) -> &mut Self {
        self.sense = Sense::Minimize;
        self.objective = objective;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.bounds[var] = VarBound::Free;
        self
    }

    /// Appends a variable (zero in every existing row and in the objective)
    /// and returns its index.
    pub fn add_variable(&mut self, bound: VarBound) -> usize {
        for row in &mut self.rows {
            row.push(zero());
        }
        self.objective.push(zero());
        self.bounds.push(bound);
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, row: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.rows.push(row);
        self.relations.push(relation);
        self.rhs.push(rhs);
    }

    /// Adds a row given as `(variable, coefficient)` pairs; repeated
    /// variables accumulate.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut row = vec![zero(); self.num_vars()];
        for (j, a) in terms {
            row[*j] += a;
        }
        self.add_constraint(row, relation, rhs);
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(LpError::Structural(format!(
                "{} variable bounds for {n} variables",
                self.bounds.len()
            )));
        }
        if self.relations.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return Err(LpError::Structural(format!(
                "{} rows, {} relations, {} right-hand sides",
                self.rows.len(),
                self.relations.len(),
                self.rhs.len()
            )));
        }
        if let Some((i, row)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LpError::Structural(format!(
                "row {i} has {} coefficients, expected {n}",
                row.len()
            )));
        }
        Ok(())
    }

    fn row_activity(&self, i: usize, x: &[Rational]) -> Rational {
        dot(&self.rows[i], x)
    }

    /// `A^T y`
    fn transpose_times(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![zero(); self.num_vars()];
        for (row, yi) in self.rows.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += a * yi;
                }
            }
        }
        out
    }

    /// Exact primal feasibility of `x`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self
            .bounds
            .iter()
            .zip(x)
            .all(|(b, v)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && (0..self.num_rows()).all(|i| {
                let act = self.row_activity(i, x);
                match self.relations[i] {
                    Relation::Le => act <= self.rhs[i],
                    Relation::Eq => act == self.rhs[i],
                    Relation::Ge => act >= self.rhs[i],
                }
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub primal: Option<Vec<Rational>>,
    pub dual: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
    /// Farkas vector (one entry per row) when infeasible; improving primal
    /// ray (one entry per variable) when unbounded.
    pub certificate: Option<Vec<Rational>>,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Checks the outcome's certificate against `lp` in exact arithmetic.
    pub fn verify(&self, lp: &LinearProgram) -> Result<(), String> {
        let max = lp.sense == Sense::Maximize;
        match self.status {
            LpStatus::Optimal => {
                let x = self.primal.as_ref().ok_or("optimal without primal")?;
                let y = self.dual.as_ref().ok_or("optimal without dual")?;
                let value = self
                    .objective_value
                    .as_ref()
                    .ok_or("optimal without value")?;
                if !lp.is_feasible(x) {
                    return Err("primal solution infeasible".into());
                }
                if y.len() != lp.num_rows() {
                    return Err("dual has wrong length".into());
                }
                if dot(&lp.objective, x) != *value {
                    return Err("primal objective differs from reported value".into());
                }
                if dot(&lp.rhs, y) != *value {
                    return Err("nonzero duality gap".into());
                }
                check_dual_signs(lp, y, max)?;
                let aty = lp.transpose_times(y);
                for (j, (a, c)) in aty.iter().zip(&lp.objective).enumerate() {
                    let ok = match (lp.bounds[j], max) {
                        (VarBound::Free, _) => a == c,
                        (VarBound::NonNegative, true) => a >= c,
                        (VarBound::NonNegative, false) => a <= c,
                    };
                    if !ok {
                        return Err(format!("dual constraint for variable {j} violated"));
                    }
                    if !x[j].is_zero() && a != c {
                        return Err(format!("complementary slackness fails at variable {j}"));
                    }
                }
                for (i, yi) in y.iter().enumerate() {
                    if !yi.is_zero() && lp.row_activity(i, x) != lp.rhs[i] {
                        return Err(format!("complementary slackness fails at row {i}"));
                    }
                }
                Ok(())
            }
            LpStatus::Infeasible => {
                let y = self
                    .certificate
                    .as_ref()
                    .ok_or("infeasible without certificate")?;
                if y.len() != lp.num_rows() {
                    return Err("Farkas vector has wrong length".into());
                }
                check_dual_signs(lp, y, true)?;
                let aty = lp.transpose_times(y);
                for (j, a) in aty.iter().enumerate() {
                    let ok = match lp.bounds[j] {
                        VarBound::Free => a.is_zero(),
                        VarBound::NonNegative => !a.is_negative(),
                    };
                    if !ok {
                        return Err(format!("Farkas combination invalid at variable {j}"));
                    }
                }
                if !dot(&lp.rhs, y).is_negative() {
                    return Err("Farkas combination does not separate".into());
                }
                Ok(())
            }
            LpStatus::Unbounded => {
                let d = self.certificate.as_ref().ok_or("unbounded without ray")?;
                if d.len() != lp.num_vars() {
                    return Err("ray has wrong length".into());
                }
                for (j, v) in d.iter().enumerate() {
                    if lp.bounds[j] == VarBound::NonNegative && v.is_negative() {
                        return Err(format!("ray leaves the bound of variable {j}"));
                    }
                }
                for i in 0..lp.num_rows() {
                    let act = lp.row_activity(i, d);
                    let ok = match lp.relations[i] {
                        Relation::Le => !act.is_positive(),
                        Relation::Eq => act.is_zero(),
                        Relation::Ge => !act.is_negative(),
                    };
                    if !ok {
                        return Err(format!("ray leaves row {i}"));
                    }
                }
                let gain = dot(&lp.objective, d);
                let improving = if max {
                    gain.is_positive()
                } else {
                    gain.is_negative()
                };
                if !improving {
                    return Err("ray does not improve the objective".into());
                }
                Ok(())
            }
        }
    }
}

fn check_dual_signs(lp: &LinearProgram, y: &[Rational], max: bool) -> Result<(), String> {
    for (i, (rel, yi)) in lp.relations.iter().zip(y).enumerate() {
        let ok = match (rel, max) {
            (Relation::Eq, _) => true,
            (Relation::Le, true) | (Relation::Ge, false) => !yi.is_negative(),
            (Relation::Ge, true) | (Relation::Le, false) => !yi.is_positive(),
        };
        if !ok {
            return Err(format!("dual sign wrong at row {i}"));
        }
    }
    Ok(())
}

/// Solves `lp` exactly. Deterministic: the pivot rule is fixed.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    Ok(simplex::run(lp))
}

/// A feasible point of `constraints` (its objective is ignored) with every
/// variable in `strict_vars` strictly positive, or `None` if there is none.
///
/// Decided exactly by maximizing an auxiliary `t <= 1` subject to
/// `x_i >= t` for the strict variables: a point exists iff the optimum is
/// positive.
pub fn strict_interior_point(
    constraints: &LinearProgram,
    strict_vars: &[usize],
) -> Result<Option<Vec<Rational>>, LpError> {
    constraints.validate()?;
    let n = constraints.num_vars();
    if let Some(&bad) = strict_vars.iter().find(|&&j| j >= n) {
        return Err(LpError::Structural(format!(
            "strict variable {bad} out of range for {n} variables"
        )));
    }
    let mut lp = constraints.clone();
    let t = lp.add_variable(VarBound::NonNegative);
    for &j in strict_vars {
        lp.add_sparse(&[(j, one()), (t, -one())], Relation::Ge, zero());
    }
    lp.add_sparse(&[(t, one())], Relation::Le, one());
    let mut objective = vec![zero(); lp.num_vars()];
    objective[t] = one();
    lp.maximize(objective);
    let out = solve(&lp)?;
    Ok(match out.status {
        LpStatus::Optimal
            if out
                .objective_value
                .as_ref()
                .is_some_and(|v| v.is_positive()) =>
        {
            let mut x = out.primal.expect("optimal outcome carries a primal point");
            x.truncate(n);
            Some(x)
        }
        _ => None,
    })
}
