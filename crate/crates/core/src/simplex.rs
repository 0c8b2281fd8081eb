//! Dense two-phase simplex over exact rationals with Bland's pivot rule.
//!
//! Solves `max c·x  s.t.  A x = b, x ≥ 0` and returns a primal vertex together
//! with simplex multipliers `y` (`A^T y ≥ c`, `b·y = c·x`) that certify
//! optimality by weak duality.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// `max c·x` subject to `A x = b`, `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// Basic column per kept row, in row order.
    pub basis: Vec<usize>,
    /// Multipliers per constraint row (zero on rows found redundant).
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    origin: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
            self.rhs[i] = &self.rhs[i] - &f * &pivot_rhs;
        }
        self.basis[r] = j;
        self.pivots += 1;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (row, &bj) in self.rows.iter().zip(&self.basis) {
            if !row[j].is_zero() && !cost[bj].is_zero() {
                d -= &cost[bj] * &row[j];
            }
        }
        d
    }

    /// Runs Bland-rule pivots until optimal over the columns `allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Result<()> {
        loop {
            let entering =
                (0..allowed).filter(|j| !self.basis.contains(j)).find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(j) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else { return Err(Error::Unbounded) };
            self.pivot(r, j);
        }
    }
}

pub fn maximize(lp: &StandardForm) -> Result<Solution> {
    let m = lp.a.len();
    let nv = lp.c.len();
    if lp.b.len() != m || lp.a.iter().any(|row| row.len() != nv) {
        return Err(Error::Invalid("inconsistent LP dimensions".into()));
    }
    let width = nv + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (r, (row, b)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = b.is_negative();
        let mut t: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        t.resize(width, Rational::zero());
        t[nv + r] = Rational::from_integer(1.into());
        rows.push(t);
        rhs.push(if flip { -b } else { b.clone() });
    }
    let mut tab = Tableau { rows, rhs, basis: (nv..width).collect(), origin: (0..m).collect(), pivots: 0 };

    // phase 1: drive the artificial mass to zero
    let mut phase1 = vec![Rational::zero(); width];
    for v in phase1.iter_mut().skip(nv) {
        *v = -Rational::from_integer(1.into());
    }
    tab.optimize(&phase1, width)?;
    let infeasibility: Rational =
        tab.basis.iter().zip(&tab.rhs).filter(|(&bj, _)| bj >= nv).map(|(_, v)| v.clone()).sum();
    if infeasibility.is_positive() {
        return Err(Error::Infeasible);
    }
    // pivot zero-level artificials out, dropping redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= nv {
            match (0..nv).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                    tab.origin.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut phase2 = lp.c.clone();
    phase2.resize(width, Rational::zero());
    tab.optimize(&phase2, nv)?;

    let mut x = vec![Rational::zero(); nv];
    for (&bj, v) in tab.basis.iter().zip(&tab.rhs) {
        x[bj] = v.clone();
    }
    let value: Rational = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum();

    // y^T B = c_B on the kept rows of the original system
    let k = tab.basis.len();
    let bt: Vec<Vec<Rational>> =
        tab.basis.iter().map(|&bj| tab.origin.iter().map(|&orow| lp.a[orow][bj].clone()).collect()).collect();
    let cb: Vec<Rational> = tab.basis.iter().map(|&bj| lp.c[bj].clone()).collect();
    let y_kept = solve(bt, cb).ok_or_else(|| Error::Invalid("singular final basis".into()))?;
    let mut dual = vec![Rational::zero(); m];
    for (i, &orow) in tab.origin.iter().enumerate().take(k) {
        dual[orow] = y_kept[i].clone();
    }
    Ok(Solution { value, x, basis: tab.basis, dual, pivots: tab.pivots })
}

/// Checks primal feasibility, dual feasibility `A^T y ≥ c`, and `b·y = c·x = value`.
pub fn certify(lp: &StandardForm, sol: &Solution) -> bool {
    let primal = sol.x.iter().all(|v| !v.is_negative())
        && lp.a.iter().zip(&lp.b).all(|(row, b)| row.iter().zip(&sol.x).map(|(a, x)| a * x).sum::<Rational>() == *b);
    let dual = (0..lp.c.len()).all(|j| {
        let s: Rational = lp.a.iter().zip(&sol.dual).map(|(row, y)| &row[j] * y).sum();
        s >= lp.c[j]
    });
    let cx: Rational = lp.c.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
    let by: Rational = lp.b.iter().zip(&sol.dual).map(|(b, y)| b * y).sum();
    primal && dual && cx == sol.value && by == sol.value
}

/// Exact Gauss-Jordan solve of a square system; `None` when singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        b[col] = &b[col] / &p;
        let prow = a[col].clone();
        let pb = b[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (v, pv) in a[r].iter_mut().zip(&prow) {
                *v = &*v - &f * pv;
            }
            b[r] = &b[r] - &f * &pb;
        }
    }
    Some(b)
}
