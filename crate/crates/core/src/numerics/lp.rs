//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ratio ties
//! broken by lowest basic index), so the solver terminates on degenerate
//! problems and repeated solves return identical points.

use num::{Signed, Zero};

use super::{dot, one, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// Variable bounds; `None` means unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn nonnegative() -> Self {
        Self {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Self {
            lower: None,
            upper: None,
        }
    }
}

/// `minimize cᵀx` subject to linear constraints and variable bounds.
/// Variables default to `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBounds>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub point: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
}

impl LpSolution {
    fn verdict(status: LpStatus) -> Self {
        Self {
            status,
            point: None,
            objective_value: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBounds::nonnegative(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) {
        self.bounds[var] = VarBounds { lower, upper };
    }

    pub fn set_free(&mut self, var: usize) {
        self.bounds[var] = VarBounds::free();
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::invalid("linear program has no variables"));
        }
        if self.bounds.len() != n {
            return Err(Error::dims(format!("{} bounds for {n} variables", self.bounds.len())));
        }
        if let Some((i, c)) = self.constraints.iter().enumerate().find(|(_, c)| c.coeffs.len() != n) {
            return Err(Error::dims(format!(
                "constraint {i} has {} coefficients for {n} variables",
                c.coeffs.len()
            )));
        }
        Ok(())
    }

    /// Checks a point against every constraint and bound, exactly.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        if point.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(point).all(|(b, x)| {
            b.lower.as_ref().is_none_or(|lo| x >= lo) && b.upper.as_ref().is_none_or(|hi| x <= hi)
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, point);
                match c.sense {
                    Sense::Le => lhs <= c.rhs,
                    Sense::Eq => lhs == c.rhs,
                    Sense::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve_lp(self)
    }
}

/// How an original variable maps onto nonnegative standard-form columns.
#[derive(Clone, Debug)]
enum VarMap {
    /// `x = lower + col`
    Shifted { col: usize, lower: Rational },
    /// `x = upper - col`
    Mirrored { col: usize, upper: Rational },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Constraint rows followed by the objective row; last column is the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn obj(&self) -> usize {
        self.rows.len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[row].clone();
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let factor = target[col].clone();
            for (t, pv) in target.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *t -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Replaces the objective row with reduced costs for `costs`.
    fn set_objective(&mut self, costs: &[Rational]) {
        let obj = self.obj();
        let mut row = costs.to_vec();
        row.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in row.iter_mut().zip(&self.rows[r]) {
                if !t.is_zero() {
                    *o -= cb * t;
                }
            }
        }
        self.rows[obj] = row;
    }

    fn objective_value(&self) -> Rational {
        -&self.rows[self.obj()][self.rhs()]
    }

    fn run(&mut self, allowed: &[bool]) -> Outcome {
        let obj = self.obj();
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..self.width)
                .find(|&j| allowed[j] && self.rows[obj][j].is_negative())
            else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..obj {
                let a = &self.rows[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][rhs] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Outcome::Unbounded,
            }
        }
    }
}

/// Solves `lp` exactly. Returns an error only for malformed dimensions.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;

    let mut n_cols = 0;
    let maps: Vec<VarMap> = lp
        .bounds
        .iter()
        .map(|b| {
            let map = match (&b.lower, &b.upper) {
                (Some(lo), _) => VarMap::Shifted {
                    col: n_cols,
                    lower: lo.clone(),
                },
                (None, Some(hi)) => VarMap::Mirrored {
                    col: n_cols,
                    upper: hi.clone(),
                },
                (None, None) => {
                    n_cols += 1;
                    VarMap::Split {
                        pos: n_cols - 1,
                        neg: n_cols,
                    }
                }
            };
            n_cols += 1;
            map
        })
        .collect();
    let n_struct = n_cols;

    // Rows over the structural columns.
    let mut rows: Vec<(Vec<Rational>, Sense, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); n_struct];
        let mut rhs = c.rhs.clone();
        for (a, map) in c.coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { col, lower } => {
                    coeffs[*col] += a;
                    rhs -= a * lower;
                }
                VarMap::Mirrored { col, upper } => {
                    coeffs[*col] -= a;
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] += a;
                    coeffs[*neg] -= a;
                }
            }
        }
        rows.push((coeffs, c.sense, rhs));
    }
    for (b, map) in lp.bounds.iter().zip(&maps) {
        if let (VarMap::Shifted { col, lower }, Some(hi)) = (map, &b.upper) {
            let mut coeffs = vec![Rational::zero(); n_struct];
            coeffs[*col] = Rational::from_integer(1.into());
            rows.push((coeffs, Sense::Le, hi - lower));
        }
    }

    // Slack/surplus columns, then artificials where no unit column exists.
    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let mut slack_of_row = Vec::with_capacity(rows.len());
    let mut next_slack = n_struct;
    for r in &rows {
        if r.1 == Sense::Eq {
            slack_of_row.push(None);
        } else {
            slack_of_row.push(Some(next_slack));
            next_slack += 1;
        }
    }
    let first_art = n_struct + n_slack;
    let mut n_art = 0;
    let mut art_rows = Vec::new();
    let mut normalized: Vec<(Vec<Rational>, Rational, Option<usize>)> = Vec::new();
    for (i, (coeffs, sense, rhs)) in rows.into_iter().enumerate() {
        let mut full = coeffs;
        full.resize(first_art, Rational::zero());
        if let Some(s) = slack_of_row[i] {
            full[s] = match sense {
                Sense::Le => one(),
                _ => -one(),
            };
        }
        let mut rhs = rhs;
        if rhs.is_negative() {
            full.iter_mut().for_each(|v| *v = -&*v);
            rhs = -rhs;
        }
        let unit = slack_of_row[i].filter(|&s| full[s].is_positive());
        if unit.is_none() {
            art_rows.push(i);
            n_art += 1;
        }
        normalized.push((full, rhs, unit));
    }

    let width = first_art + n_art;
    let mut tableau = Tableau {
        rows: Vec::with_capacity(normalized.len() + 1),
        basis: Vec::with_capacity(normalized.len()),
        width,
    };
    let mut art_col = first_art;
    for (full, rhs, unit) in normalized {
        let mut row = full;
        row.resize(width, Rational::zero());
        let basic = match unit {
            Some(s) => s,
            None => {
                row[art_col] = one();
                art_col += 1;
                art_col - 1
            }
        };
        row.push(rhs);
        tableau.rows.push(row);
        tableau.basis.push(basic);
    }
    tableau.rows.push(vec![Rational::zero(); width + 1]);

    let mut allowed = vec![true; width];
    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(first_art) {
            *c = one();
        }
        tableau.set_objective(&phase1);
        tableau.run(&allowed);
        if tableau.objective_value().is_positive() {
            return Ok(LpSolution::verdict(LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tableau.basis.len() {
            if tableau.basis[r] >= first_art {
                match (0..first_art).find(|&j| !tableau.rows[r][j].is_zero()) {
                    Some(j) => tableau.pivot(r, j),
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        allowed.iter_mut().skip(first_art).for_each(|a| *a = false);
    }

    let mut costs = vec![Rational::zero(); width];
    let mut constant = Rational::zero();
    for (c, map) in lp.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted { col, lower } => {
                costs[*col] += c;
                constant += c * lower;
            }
            VarMap::Mirrored { col, upper } => {
                costs[*col] -= c;
                constant += c * upper;
            }
            VarMap::Split { pos, neg } => {
                costs[*pos] += c;
                costs[*neg] -= c;
            }
        }
    }
    tableau.set_objective(&costs);
    if let Outcome::Unbounded = tableau.run(&allowed) {
        return Ok(LpSolution::verdict(LpStatus::Unbounded));
    }

    let mut values = vec![Rational::zero(); width];
    for (r, &b) in tableau.basis.iter().enumerate() {
        values[b] = tableau.rows[r][width].clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, lower } => lower + &values[*col],
            VarMap::Mirrored { col, upper } => upper - &values[*col],
            VarMap::Split { pos, neg } => &values[*pos] - &values[*neg],
        })
        .collect();
    let objective_value = tableau.objective_value() + constant;
    debug_assert!(lp.is_feasible(&point));
    debug_assert_eq!(dot(&lp.objective, &point), objective_value);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        point: Some(point),
        objective_value: Some(objective_value),
    })
}
