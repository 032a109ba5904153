use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpOutcome, LpStatus, Relation, Sense, VarBound};
use crate::rational::{zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    /// Original variable `var`, entering with sign -1 when `negated` (the
    /// negative half of a free variable).
    Structural {
        var: usize,
        negated: bool,
    },
    Slack,
    Surplus,
    Artificial,
}

/// Dense tableau. `cost_row[j]` holds the reduced cost `w^T A_j - c_j` of
/// column `j`, so a column improves a maximization when it is negative.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost_row: Vec<Rational>,
    value: Rational,
    enterable: Vec<bool>,
}

enum Exit {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let piv = self.rows[r][e].clone();
        if !piv.is_one() {
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v /= &piv;
            }
            self.rhs[r] /= &piv;
        }
        let pivot_row: Vec<(usize, Rational)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            let row = &mut self.rows[i];
            for (j, a) in &pivot_row {
                row[*j] -= &f * a;
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        if !self.cost_row[e].is_zero() {
            let f = self.cost_row[e].clone();
            for (j, a) in &pivot_row {
                self.cost_row[*j] -= &f * a;
            }
            self.value -= &f * &pivot_rhs;
        }
        self.basis[r] = e;
    }

    /// Bland's rule: lowest-index improving column enters; among rows tied
    /// in the ratio test, the one whose basic column has the lowest index
    /// leaves.
    fn optimize(&mut self) -> Exit {
        loop {
            let Some(e) = (0..self.cost_row.len())
                .find(|&j| self.enterable[j] && self.cost_row[j].is_negative())
            else {
                return Exit::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((b, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*b])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Exit::Unbounded(e),
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }

    fn reset_costs(&mut self, costs: &[Rational]) {
        let ncols = costs.len();
        let mut row: Vec<Rational> = costs.iter().map(|c| -c).collect();
        let mut value = zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let a = &self.rows[i][j];
                if !a.is_zero() {
                    row[j] += cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        self.cost_row = row;
        self.value = value;
    }
}

pub(super) fn run(lp: &LinearProgram) -> LpOutcome {
    let m = lp.num_rows();

    // Columns: structural (free variables split), then one slack or surplus
    // per inequality row, then artificials.
    let mut columns = Vec::new();
    for (var, b) in lp.bounds.iter().enumerate() {
        columns.push(Column::Structural {
            var,
            negated: false,
        });
        if *b == VarBound::Free {
            columns.push(Column::Structural { var, negated: true });
        }
    }
    let structural = columns.len();

    // Normalize every row to a nonnegative right-hand side.
    let flips: Vec<bool> = lp.rhs.iter().map(|b| b.is_negative()).collect();
    let relations: Vec<Relation> = lp
        .relations
        .iter()
        .zip(&flips)
        .map(|(rel, &f)| match (rel, f) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (rel, _) => *rel,
        })
        .collect();

    let mut slack_col = vec![None; m];
    for (i, rel) in relations.iter().enumerate() {
        match rel {
            Relation::Le => {
                slack_col[i] = Some(columns.len());
                columns.push(Column::Slack);
            }
            Relation::Ge => {
                slack_col[i] = Some(columns.len());
                columns.push(Column::Surplus);
            }
            Relation::Eq => {}
        }
    }
    let mut art_col = vec![None; m];
    for (i, rel) in relations.iter().enumerate() {
        if *rel != Relation::Le {
            art_col[i] = Some(columns.len());
            columns.push(Column::Artificial);
        }
    }
    let ncols = columns.len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut init_col = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![zero(); ncols];
        let sign_flip = flips[i];
        for (c, col) in columns.iter().enumerate().take(structural) {
            if let Column::Structural { var, negated } = col {
                let a = &lp.rows[i][*var];
                if a.is_zero() {
                    continue;
                }
                row[c] = if *negated != sign_flip { -a } else { a.clone() };
            }
        }
        if let Some(s) = slack_col[i] {
            row[s] = if relations[i] == Relation::Le {
                Rational::one()
            } else {
                -Rational::one()
            };
        }
        if let Some(a) = art_col[i] {
            row[a] = Rational::one();
        }
        let b = if sign_flip {
            -&lp.rhs[i]
        } else {
            lp.rhs[i].clone()
        };
        let start = art_col[i]
            .or(slack_col[i])
            .expect("every row has a starting column");
        rows.push(row);
        rhs.push(b);
        basis.push(start);
        init_col.push(start);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        cost_row: vec![zero(); ncols],
        value: zero(),
        enterable: vec![true; ncols],
    };

    let has_artificial = art_col.iter().any(Option::is_some);
    if has_artificial {
        let phase1: Vec<Rational> = columns
            .iter()
            .map(|c| match c {
                Column::Artificial => -Rational::one(),
                _ => zero(),
            })
            .collect();
        tab.reset_costs(&phase1);
        match tab.optimize() {
            Exit::Optimal => {}
            Exit::Unbounded(_) => unreachable!("phase one objective is bounded by zero"),
        }
        if tab.value.is_negative() {
            let farkas: Vec<Rational> = (0..m)
                .map(|i| {
                    let w = &tab.cost_row[init_col[i]] + &phase1[init_col[i]];
                    if flips[i] {
                        -w
                    } else {
                        w
                    }
                })
                .collect();
            return LpOutcome {
                status: LpStatus::Infeasible,
                primal: None,
                dual: None,
                objective_value: None,
                certificate: Some(farkas),
            };
        }
        // Drive zero-level artificials out of the basis. A row whose
        // non-artificial entries are all zero is redundant; its artificial
        // stays basic at zero and can never move.
        for r in 0..m {
            if columns[tab.basis[r]] != Column::Artificial {
                continue;
            }
            let replacement =
                (0..ncols).find(|&j| columns[j] != Column::Artificial && !tab.rows[r][j].is_zero());
            if let Some(j) = replacement {
                tab.pivot(r, j);
            }
        }
        for (j, c) in columns.iter().enumerate() {
            if *c == Column::Artificial {
                tab.enterable[j] = false;
            }
        }
    }

    let maximize = lp.sense == Sense::Maximize;
    let costs: Vec<Rational> = columns
        .iter()
        .map(|c| match c {
            Column::Structural { var, negated } => {
                let c = &lp.objective[*var];
                if *negated == maximize {
                    -c
                } else {
                    c.clone()
                }
            }
            _ => zero(),
        })
        .collect();
    tab.reset_costs(&costs);

    match tab.optimize() {
        Exit::Unbounded(e) => {
            let mut dir = vec![zero(); ncols];
            dir[e] = Rational::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                let a = &tab.rows[i][e];
                if !a.is_zero() {
                    dir[b] = -a;
                }
            }
            LpOutcome {
                status: LpStatus::Unbounded,
                primal: None,
                dual: None,
                objective_value: None,
                certificate: Some(to_original(&columns, &dir, lp.num_vars())),
            }
        }
        Exit::Optimal => {
            let mut point = vec![zero(); ncols];
            for (i, &b) in tab.basis.iter().enumerate() {
                point[b] = tab.rhs[i].clone();
            }
            let x = to_original(&columns, &point, lp.num_vars());
            let dual: Vec<Rational> = (0..m)
                .map(|i| {
                    // costs vanish on slack and artificial columns in phase two
                    let w = tab.cost_row[init_col[i]].clone();
                    let y = if flips[i] { -w } else { w };
                    if maximize {
                        y
                    } else {
                        -y
                    }
                })
                .collect();
            let value = if maximize { tab.value } else { -tab.value };
            LpOutcome {
                status: LpStatus::Optimal,
                primal: Some(x),
                dual: Some(dual),
                objective_value: Some(value),
                certificate: None,
            }
        }
    }
}

fn to_original(columns: &[Column], values: &[Rational], n: usize) -> Vec<Rational> {
    let mut x = vec![zero(); n];
    for (c, v) in columns.iter().zip(values) {
        if let Column::Structural { var, negated } = c {
            if *negated {
                x[*var] -= v;
            } else {
                x[*var] += v;
            }
        }
    }
    x
}
