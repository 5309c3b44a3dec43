//! Small exact rational linear algebra helpers shared across modules.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Gaussian elimination to row echelon form, in place. Returns the pivot
/// columns.
fn echelon(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for entry in m[r][col..].iter_mut() {
            *entry *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (entry, p) in m[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut work = m.to_vec();
    echelon(&mut work).len()
}

pub fn det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut work = m.to_vec();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !work[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            work.swap(col, p);
            d = -d;
        }
        d *= &work[col][col];
        let inv = work[col][col].recip();
        for i in col + 1..n {
            if !work[i][col].is_zero() {
                let f = &work[i][col] * &inv;
                let pivot_row = work[col].clone();
                for (entry, p) in work[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry -= &f * p;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut work: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = echelon(&mut work);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; when the
/// solution is not unique an arbitrary solution of the system is produced
/// (free variables set to zero).
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut work: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut work);
    // Inconsistent iff some pivot lands in the rhs column.
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = work[i][ncols].clone();
    }
    let _ = nrows;
    Some(x)
}

/// Linear feasibility by Fourier-Motzkin elimination. Constraints are
/// `a . x >= b`; equalities are entered as two opposite inequalities.
/// Exact over the rationals; intended for the tiny systems that arise
/// from cone and polytope certificates.
#[derive(Clone)]
pub struct Feasibility {
    nvars: usize,
    ineqs: Vec<(Vec<BigRational>, BigRational)>,
}

impl Feasibility {
    pub fn new(nvars: usize) -> Self {
        Feasibility {
            nvars,
            ineqs: Vec::new(),
        }
    }

    pub fn add_ge(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.ineqs.push((coeffs, rhs));
    }

    pub fn add_eq(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.add_ge(coeffs.iter().map(|c| -c).collect(), -rhs.clone());
        self.add_ge(coeffs, rhs);
    }

    pub fn feasible(&self) -> bool {
        let mut system = self.ineqs.clone();
        for var in 0..self.nvars {
            let mut lower = Vec::new(); // coeff > 0: x_var >= ...
            let mut upper = Vec::new(); // coeff < 0: x_var <= ...
            let mut rest = Vec::new();
            for (c, b) in system {
                if c[var].is_zero() {
                    rest.push((c, b));
                } else if c[var].is_positive() {
                    lower.push((c, b));
                } else {
                    upper.push((c, b));
                }
            }
            for (cl, bl) in &lower {
                for (cu, bu) in &upper {
                    // Scale so the var coefficients cancel.
                    let s = -&cu[var] / &cl[var];
                    let c: Vec<BigRational> = cl
                        .iter()
                        .zip(cu)
                        .map(|(a, b)| a * &s + b)
                        .collect();
                    let b = bl * &s + bu;
                    rest.push((c, b));
                }
            }
            system = rest;
        }
        system.iter().all(|(_, b)| !b.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn solve_2x2() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![q(5), q(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn fm_feasible_box() {
        // x >= 0, -x >= -1 is feasible; x >= 2, -x >= -1 is not.
        let mut f = Feasibility::new(1);
        f.add_ge(vec![q(1)], q(0));
        f.add_ge(vec![q(-1)], q(-1));
        assert!(f.feasible());
        let mut g = Feasibility::new(1);
        g.add_ge(vec![q(1)], q(2));
        g.add_ge(vec![q(-1)], q(-1));
        assert!(!g.feasible());
    }

    #[test]
    fn fm_with_equality() {
        // x + y = 1, x >= 0, y >= 2 infeasible; y >= 1/2 feasible.
        let mut f = Feasibility::new(2);
        f.add_eq(vec![q(1), q(1)], q(1));
        f.add_ge(vec![q(1), q(0)], q(0));
        f.add_ge(vec![q(0), q(1)], q(2));
        assert!(!f.feasible());
        let mut g = Feasibility::new(2);
        g.add_eq(vec![q(1), q(1)], q(1));
        g.add_ge(vec![q(1), q(0)], q(0));
        g.add_ge(vec![q(0), q(1)], BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(g.feasible());
    }
}
