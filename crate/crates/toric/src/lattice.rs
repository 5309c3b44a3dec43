//! Exact integer linear algebra: Hermite normal form, kernels, basis
//! extension and dual bases.
//!
//! Everything here works over arbitrary-precision integers; there are no
//! machine-word overflow assumptions anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("rays do not span Q^{expected}: rank is {rank}")]
    RaysDoNotSpan { rank: usize, expected: usize },
    #[error("vectors are linearly dependent")]
    NotIndependent,
    #[error("not a primitive system: no completion to a Z-basis exists")]
    NotPrimitiveSystem,
    #[error("not a Z-basis: determinant is {det}, expected +-1")]
    NotABasis { det: BigInt },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Element of `Z^n` (or of the dual lattice; the representation is the same).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dims");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |acc, e| acc.gcd(&e.abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|e| e * c).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|e| BigRational::from_integer(e.clone()))
            .collect()
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Rectangular matrix of exact integers, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<IntVector>,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>) -> Self {
        if let Some(first) = rows.first() {
            let d = first.dim();
            assert!(rows.iter().all(|r| r.dim() == d), "ragged matrix");
        }
        IntMatrix { rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| IntVector::from_i64(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| IntVector::unit(n, i)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map(|r| r.dim()).unwrap_or(0)
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i].0[j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                IntVector(
                    (0..other.ncols())
                        .map(|j| {
                            r.0.iter()
                                .zip(&other.rows)
                                .map(|(a, br)| a * &br.0[j])
                                .sum()
                        })
                        .collect(),
                )
            })
            .collect();
        IntMatrix::new(rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols())
            .map(|j| IntVector(self.rows.iter().map(|r| r.0[j].clone()).collect()))
            .collect();
        IntMatrix::new(rows)
    }

    /// Exact determinant of a square matrix, via rational elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows(), self.ncols());
        let m: Vec<Vec<BigRational>> = self.rows.iter().map(|r| r.to_rational()).collect();
        let d = linalg::det(&m);
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let m: Vec<Vec<BigRational>> = self.rows.iter().map(|r| r.to_rational()).collect();
        linalg::rank(&m)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r)?;
        }
        write!(f, "]")
    }
}

/// A `Z`-basis of `Z^n` together with the dual basis of `(Z^n)^*`,
/// paired by `<dual_i, primal_j> = delta_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    pub primal: Vec<IntVector>,
    pub dual: Vec<IntVector>,
}

/// Row-style Hermite normal form with an explicit unimodular accumulator:
/// returns `(H, U)` with `H = U * M`, `|det U| = 1`, `H` in row echelon
/// form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(nrows);
    let mut r = 0;

    let row_sub = |h: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
        for j in 0..ncols {
            let t = &h.rows[dst].0[j] - q * &h.rows[src].0[j];
            h.rows[dst].0[j] = t;
        }
        for j in 0..nrows {
            let t = &u.rows[dst].0[j] - q * &u.rows[src].0[j];
            u.rows[dst].0[j] = t;
        }
    };

    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // Euclidean reduction among rows r.. in this column.
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !h.at(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h.at(i, col).abs() < h.at(b, col).abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(pivot_row) = best else { break };
            h.rows.swap(r, pivot_row);
            u.rows.swap(r, pivot_row);
            let mut done = true;
            for i in r + 1..nrows {
                if !h.at(i, col).is_zero() {
                    let q = h.at(i, col).div_floor(h.at(r, col));
                    row_sub(&mut h, &mut u, i, r, &q);
                    if !h.at(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(r, col).is_zero() {
            continue;
        }
        if h.at(r, col).is_negative() {
            for j in 0..ncols {
                h.rows[r].0[j] = -h.rows[r].0[j].clone();
            }
            for j in 0..nrows {
                u.rows[r].0[j] = -u.rows[r].0[j].clone();
            }
        }
        for i in 0..r {
            let q = h.at(i, col).div_floor(h.at(r, col));
            if !q.is_zero() {
                row_sub(&mut h, &mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn hnf_pivots(h: &IntMatrix) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    for (i, row) in h.rows.iter().enumerate() {
        if let Some(j) = row.0.iter().position(|e| !e.is_zero()) {
            pivots.push((i, j));
        }
    }
    pivots
}

/// Basis of the kernel of the map `Z^N -> Z^n`, `e_j -> v_j`, where the
/// `v_j` are the rows of `rays`. Errors unless the rays span `Q^n`.
pub fn kernel_basis(rays: &IntMatrix) -> Result<Vec<IntVector>, LatticeError> {
    let n = rays.ncols();
    let (h, u) = hermite_normal_form(rays);
    let rank = hnf_pivots(&h).len();
    if rank < n {
        return Err(LatticeError::RaysDoNotSpan { rank, expected: n });
    }
    // Rows of U opposite the zero rows of H span the left kernel lattice.
    Ok(h.rows
        .iter()
        .zip(&u.rows)
        .filter(|(hr, _)| hr.is_zero())
        .map(|(_, ur)| ur.clone())
        .collect())
}

/// Whether `v` lies in the lattice spanned by the rows of `basis`.
pub fn in_row_lattice(basis: &IntMatrix, v: &IntVector) -> bool {
    let (h1, _) = hermite_normal_form(basis);
    let mut stacked = basis.rows.clone();
    stacked.push(v.clone());
    let (h2, _) = hermite_normal_form(&IntMatrix::new(stacked));
    let strip = |h: &IntMatrix| -> Vec<IntVector> {
        h.rows.iter().filter(|r| !r.is_zero()).cloned().collect()
    };
    strip(&h1) == strip(&h2)
}

/// Whether two sets of row vectors span the same sublattice.
pub fn row_lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    let (ha, _) = hermite_normal_form(a);
    let (hb, _) = hermite_normal_form(b);
    let strip = |h: &IntMatrix| -> Vec<IntVector> {
        h.rows.iter().filter(|r| !r.is_zero()).cloned().collect()
    };
    strip(&ha) == strip(&hb)
}

/// Completes a linearly independent system to a `Z`-basis of `Z^n`.
/// Succeeds iff the HNF of the input has all pivots 1; the returned
/// vectors together with the input form a unimodular matrix. Callers must
/// not depend on which completion is produced.
pub fn extend_to_basis(vectors: &[IntVector]) -> Result<Vec<IntVector>, LatticeError> {
    if vectors.is_empty() {
        // The empty system completes to the standard basis.
        return Ok(Vec::new());
    }
    let n = vectors[0].dim();
    let m = IntMatrix::new(vectors.to_vec());
    let (h, _) = hermite_normal_form(&m);
    let pivots = hnf_pivots(&h);
    if pivots.len() < vectors.len() {
        return Err(LatticeError::NotIndependent);
    }
    if pivots.iter().any(|&(i, j)| !h.at(i, j).is_one()) {
        return Err(LatticeError::NotPrimitiveSystem);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, j)| j).collect();
    let completion: Vec<IntVector> = (0..n)
        .filter(|j| !pivot_cols.contains(j))
        .map(|j| IntVector::unit(n, j))
        .collect();
    debug_assert!({
        let mut all = vectors.to_vec();
        all.extend(completion.iter().cloned());
        IntMatrix::new(all).det().abs().is_one()
    });
    Ok(completion)
}

/// Dual basis of a unimodular basis: `<dual_i, primal_j> = delta_ij`.
pub fn dual_basis(basis: &[IntVector]) -> Result<DualBasis, LatticeError> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|v| v.dim() != n) {
        return Err(LatticeError::DimensionMismatch(format!(
            "dual basis requires {n} vectors of dimension {n}"
        )));
    }
    let m = IntMatrix::new(basis.to_vec());
    let det = m.det();
    if !det.abs().is_one() {
        return Err(LatticeError::NotABasis { det });
    }
    let rat: Vec<Vec<BigRational>> = basis.iter().map(|v| v.to_rational()).collect();
    let inv = linalg::inverse(&rat).expect("unimodular matrix is invertible");
    // dual_i is the i-th column of B^{-1}.
    let dual = (0..n)
        .map(|i| {
            IntVector(
                (0..n)
                    .map(|j| {
                        debug_assert!(inv[j][i].is_integer());
                        inv[j][i].to_integer()
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(DualBasis {
        primal: basis.to_vec(),
        dual,
    })
}
