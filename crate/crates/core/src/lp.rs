//! Dense two-phase simplex for small problems in equality form:
//!
//! ```text
//! maximize cᵀx  subject to  A x = b,  x ≥ 0
//! ```
//!
//! Entering and leaving variables follow Bland's rule (smallest index), which
//! rules out cycling and makes the returned basis deterministic.

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible { residual: f64 },
    Unbounded,
}

struct Tableau {
    /// `m` rows of width `cols + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[j] = 0.0;
            }
        }
        self.basis[r] = j;
    }

    /// Runs simplex iterations maximizing `cost` over columns `0..allowed`.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: f64 = cost[j]
                    - self
                        .rows
                        .iter()
                        .zip(&self.basis)
                        .map(|(row, &b)| cost[b] * row[j])
                        .sum::<f64>();
                reduced > COST_EPS
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][j];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-14
                                || (ratio <= best + 1e-14 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }
}

/// Solves `max cᵀx, Ax = b, x ≥ 0`. `a` is row-major with `b.len()` rows.
pub fn solve(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpOutcome {
    let m = b.len();
    let n = c.len();
    assert_eq!(a.len(), m, "constraint matrix has {} rows, rhs has {m}", a.len());
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n);
        let sign = if bi < 0.0 { -1.0 } else { 1.0 };
        let mut r: Vec<f64> = row.iter().map(|v| sign * v).collect();
        r.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
        r.push(sign * bi);
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..cols).collect(), cols };

    // Phase 1: maximize minus the sum of artificials.
    let phase1: Vec<f64> = (0..cols).map(|j| if j < n { 0.0 } else { -1.0 }).collect();
    t.optimize(&phase1, cols);
    let residual: f64 = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(i, _)| t.rhs(i))
        .sum();
    let scale = 1.0 + b.iter().map(|v| v.abs()).sum::<f64>();
    if residual > 1e-9 * scale {
        return LpOutcome::Infeasible { residual };
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // where that is impossible are redundant and stay inert.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t.rows[i][j].abs() > 1e-9) {
                t.pivot(i, j);
            }
        }
    }

    let mut phase2 = c.to_vec();
    phase2.extend(std::iter::repeat_n(0.0, m));
    if !t.optimize(&phase2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rhs(i).max(0.0);
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// Finds `x ≥ 0` with `Ax = b`, if any.
pub fn feasible_point(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.first().map_or(0, Vec::len);
    match solve(a, b, &vec![0.0; n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 (slacks s1..s3)
        let a = vec![
            vec![1.0, 0.0, 1.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0, 1.0, 0.0],
            vec![3.0, 2.0, 0.0, 0.0, 1.0],
        ];
        let b = vec![4.0, 12.0, 18.0];
        let c = vec![3.0, 5.0, 0.0, 0.0, 0.0];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 36.0).abs() < 1e-9);
                assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = vec![vec![1.0, 1.0]];
        assert!(matches!(solve(&a, &[-1.0], &[0.0, 0.0]), LpOutcome::Infeasible { .. }));
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(solve(&a, &[1.0], &[1.0, 0.0]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = vec![vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0], vec![0.0, 1.0, 1.0]];
        let b = vec![1.0, 2.0, 1.0];
        match solve(&a, &b, &[1.0, 0.0, 0.0]) {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example under the largest-coefficient rule.
        let a = vec![
            vec![0.5, -5.5, -2.5, 9.0, 1.0, 0.0, 0.0],
            vec![0.5, -1.5, -0.5, 1.0, 0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ];
        let b = vec![0.0, 0.0, 1.0];
        let c = vec![10.0, -57.0, -9.0, -24.0, 0.0, 0.0, 0.0];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }
}
