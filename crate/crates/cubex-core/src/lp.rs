//! Dense exact-rational simplex for equality-form linear programs.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0` with Bland's pivoting rule, so
//! every run terminates and no floating-point misclassification is
//! possible. Problem sizes here are tiny (the adjacency oracle has `d + 1`
//! rows), so a plain two-phase dense tableau is the right tool.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimum reached; carries the optimal objective value.
    Optimal(Rat),
    /// Early exit: the objective was driven strictly below the cutoff.
    BelowCutoff,
    Infeasible,
    Unbounded,
}

/// Equality-form LP data. Rows of `a` must all have length `c.len()`.
pub struct EqForm {
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
}

struct Tableau {
    rows: usize,
    cols: usize,
    // rows × (cols + 1); last column is the RHS.
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            *x /= &piv;
        }
        for i in 0..self.rows {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let factor = self.t[i][col].clone();
            for j in 0..=self.cols {
                let delta = &factor * &self.t[row][j];
                self.t[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        let mut z = Rat::zero();
        for i in 0..self.rows {
            if !cost[self.basis[i]].is_zero() {
                z += &cost[self.basis[i]] * self.rhs(i);
            }
        }
        z
    }

    /// Reduced cost of column `j`: `c_j - c_B · T[·][j]`.
    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        let mut d = cost[j].clone();
        for i in 0..self.rows {
            if !cost[self.basis[i]].is_zero() {
                d -= &cost[self.basis[i]] * &self.t[i][j];
            }
        }
        d
    }

    /// Minimizes `cost` with Bland's rule. Stops early once the objective
    /// drops strictly below `cutoff`, if one is given.
    fn run(&mut self, cost: &[Rat], cutoff: Option<&Rat>) -> LpOutcome {
        let mut in_basis = vec![false; self.cols];
        loop {
            for f in in_basis.iter_mut() {
                *f = false;
            }
            for &b in &self.basis {
                in_basis[b] = true;
            }
            if let Some(cut) = cutoff {
                if &self.objective(cost) < cut {
                    return LpOutcome::BelowCutoff;
                }
            }
            // Bland: entering = smallest index with negative reduced cost.
            let mut entering = None;
            for j in 0..self.cols {
                if in_basis[j] {
                    continue;
                }
                if self.reduced_cost(cost, j).is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return LpOutcome::Optimal(self.objective(cost));
            };
            // Ratio test; ties broken by smallest basis variable index.
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows {
                if !self.t[i][col].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.t[i][col];
                let better = match &leaving {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return LpOutcome::Unbounded;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves the LP. When `cutoff` is given and the objective can be driven
/// strictly below it, returns [`LpOutcome::BelowCutoff`] without finishing
/// the optimization.
pub fn solve(lp: &EqForm, cutoff: Option<&Rat>) -> LpOutcome {
    let m = lp.b.len();
    let n = lp.c.len();
    debug_assert!(lp.a.len() == m && lp.a.iter().all(|r| r.len() == n));

    // Phase 1: artificial basis, all RHS nonnegative.
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(cols + 1);
        let flip = lp.b[i].is_negative();
        for j in 0..n {
            row.push(if flip {
                -lp.a[i][j].clone()
            } else {
                lp.a[i][j].clone()
            });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip {
            -lp.b[i].clone()
        } else {
            lp.b[i].clone()
        });
        t.push(row);
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        basis: (n..n + m).collect(),
    };

    let mut phase1_cost = vec![Rat::zero(); cols];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = Rat::one();
    }
    match tab.run(&phase1_cost, None) {
        LpOutcome::Optimal(z) => {
            if !z.is_zero() {
                return LpOutcome::Infeasible;
            }
        }
        // Phase 1 is bounded below by zero, so this cannot happen.
        other => return other,
    }

    // Drive leftover artificials out of the basis; a row where that is
    // impossible is redundant and gets dropped.
    let mut redundant = Vec::new();
    for i in 0..m {
        if tab.basis[i] < n {
            continue;
        }
        let mut pivot_col = None;
        for j in 0..n {
            if !tab.t[i][j].is_zero() {
                pivot_col = Some(j);
                break;
            }
        }
        match pivot_col {
            Some(j) => tab.pivot(i, j),
            None => redundant.push(i),
        }
    }
    let keep: Vec<usize> = (0..m).filter(|i| !redundant.contains(i)).collect();

    // Phase 2 tableau without artificial columns.
    let mut t2 = Vec::with_capacity(keep.len());
    let mut basis2 = Vec::with_capacity(keep.len());
    for &i in &keep {
        let mut row: Vec<Rat> = tab.t[i][..n].to_vec();
        row.push(tab.t[i][cols].clone());
        t2.push(row);
        basis2.push(tab.basis[i]);
    }
    let mut tab2 = Tableau {
        rows: keep.len(),
        cols: n,
        t: t2,
        basis: basis2,
    };
    tab2.run(&lp.c, cutoff)
}
