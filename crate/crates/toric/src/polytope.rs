//! Delzant polytopes: vertex and face enumeration, lattice/Delzant
//! certification, normal fan, lattice points, lattice distances, the
//! projective-embedding exponents and the moment map.
//!
//! Everything is exact rational arithmetic except `moment_map`, which is
//! the single floating-point surface of the crate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::fan::Fan;
use crate::lattice::{self, IntVector};
use crate::linalg::{self, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("polytope is unbounded (recession direction exists)")]
    Unbounded,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope is not a lattice polytope")]
    NotLattice,
    #[error("facet normal {0} is not primitive")]
    NotPrimitive(usize),
    #[error("facet {0} is redundant (active at no vertex)")]
    RedundantFacet(usize),
    #[error("zero vector has no moment image")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// `{ phi : <phi, v_i> >= -a_i }` with primitive integral normals `v_i`
/// and rational offsets `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub normals: Vec<IntVector>,
    pub offsets: Vec<BigRational>,
}

/// A vertex with its exact rational coordinates and the full set of
/// facets active there (exactly `dim` of them for Delzant polytopes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<BigRational>,
    pub active_facets: BTreeSet<usize>,
}

/// Lattice points of the polytope together with the exponent matrix
/// `LD(m_i, F_j) = <m_i, v_j> + a_j` of lattice distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    pub lattice_points: Vec<IntVector>,
    pub exponents: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantReport {
    pub lattice: bool,
    pub delzant: bool,
    pub certificates: Vec<String>,
}

impl Polytope {
    pub fn new(
        dim: usize,
        normals: Vec<IntVector>,
        offsets: Vec<BigRational>,
    ) -> Result<Self, PolytopeError> {
        if normals.len() != offsets.len() {
            return Err(PolytopeError::DimensionMismatch(format!(
                "{} normals vs {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        for (i, v) in normals.iter().enumerate() {
            if v.dim() != dim {
                return Err(PolytopeError::DimensionMismatch(format!(
                    "normal {i} has dimension {}",
                    v.dim()
                )));
            }
            if !v.is_primitive() {
                return Err(PolytopeError::NotPrimitive(i));
            }
        }
        Ok(Polytope {
            dim,
            normals,
            offsets,
        })
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    fn pairing(&self, point: &[BigRational], facet: usize) -> BigRational {
        point
            .iter()
            .zip(&self.normals[facet].0)
            .map(|(p, v)| p * BigRational::from_integer(v.clone()))
            .sum()
    }

    pub fn contains(&self, point: &[BigRational]) -> bool {
        (0..self.num_facets()).all(|i| self.pairing(point, i) >= -&self.offsets[i])
    }

    /// Boundedness certificate: the recession cone `{phi : <phi,v_i> >= 0}`
    /// must be trivial, checked by 2n exact Fourier-Motzkin runs.
    fn check_bounded(&self) -> Result<(), PolytopeError> {
        for k in 0..self.dim {
            for sign in [1i64, -1] {
                let mut f = Feasibility::new(self.dim);
                for v in &self.normals {
                    f.add_ge(v.to_rational(), BigRational::zero());
                }
                let mut c = vec![BigRational::zero(); self.dim];
                c[k] = BigRational::from_integer(BigInt::from(sign));
                f.add_ge(c, BigRational::one());
                if f.feasible() {
                    return Err(PolytopeError::Unbounded);
                }
            }
        }
        Ok(())
    }

    /// All vertices, with exact coordinates and full active facet sets.
    pub fn vertices(&self) -> Result<Vec<Vertex>, PolytopeError> {
        self.check_bounded()?;
        let n = self.dim;
        let m = self.num_facets();
        if n == 0 || m < n {
            return Err(PolytopeError::EmptyPolytope);
        }
        let mut vertices: Vec<Vertex> = Vec::new();
        for subset in combinations(m, n) {
            let a: Vec<Vec<BigRational>> = subset
                .iter()
                .map(|&i| self.normals[i].to_rational())
                .collect();
            if linalg::rank(&a) < n {
                continue;
            }
            let b: Vec<BigRational> = subset.iter().map(|&i| -&self.offsets[i]).collect();
            let Some(point) = linalg::solve(&a, &b) else {
                continue;
            };
            if !self.contains(&point) || vertices.iter().any(|v| v.point == point) {
                continue;
            }
            let active: BTreeSet<usize> = (0..m)
                .filter(|&i| self.pairing(&point, i) == -&self.offsets[i])
                .collect();
            vertices.push(Vertex {
                point,
                active_facets: active,
            });
        }
        if vertices.is_empty() {
            return Err(PolytopeError::EmptyPolytope);
        }
        Ok(vertices)
    }

    fn full_dimensional(&self, vertices: &[Vertex]) -> bool {
        if vertices.is_empty() {
            return false;
        }
        let base = &vertices[0].point;
        let diffs: Vec<Vec<BigRational>> = vertices[1..]
            .iter()
            .map(|v| {
                v.point
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        linalg::rank(&diffs) == self.dim
    }

    /// Normal fan: rays are the facet normals, maximal cones are the
    /// active facet sets of the vertices.
    pub fn normal_fan(&self) -> Result<Fan, PolytopeError> {
        let vertices = self.vertices()?;
        if !self.full_dimensional(&vertices) {
            return Err(PolytopeError::NotFullDimensional);
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for v in &vertices {
            used.extend(v.active_facets.iter().copied());
        }
        if let Some(missing) = (0..self.num_facets()).find(|i| !used.contains(i)) {
            return Err(PolytopeError::RedundantFacet(missing));
        }
        Ok(Fan::new(
            self.dim,
            self.normals.clone(),
            vertices
                .iter()
                .map(|v| v.active_facets.iter().copied().collect())
                .collect(),
        ))
    }

    /// Lattice certification (all vertices integral) and Delzant
    /// certification (active normals at every vertex extend to a Z-basis).
    pub fn delzant_check(&self) -> Result<DelzantReport, PolytopeError> {
        let vertices = self.vertices()?;
        let mut lattice_ok = true;
        let mut delzant_ok = true;
        let mut certificates = Vec::new();
        for v in &vertices {
            let coords: Vec<String> = v.point.iter().map(|c| c.to_string()).collect();
            if !v.point.iter().all(|c| c.is_integer()) {
                lattice_ok = false;
                certificates.push(format!("vertex ({}) is not a lattice point", coords.join(",")));
            }
            let active: Vec<IntVector> = v
                .active_facets
                .iter()
                .map(|&i| self.normals[i].clone())
                .collect();
            if active.len() != self.dim || lattice::extend_to_basis(&active).is_err() {
                delzant_ok = false;
                certificates.push(format!(
                    "vertex ({}) fails the Delzant condition (active facets {:?})",
                    coords.join(","),
                    v.active_facets
                ));
            }
        }
        Ok(DelzantReport {
            lattice: lattice_ok,
            delzant: delzant_ok,
            certificates,
        })
    }

    /// All lattice points with the lattice-distance exponent matrix.
    pub fn lattice_points(&self) -> Result<EmbeddingData, PolytopeError> {
        let report = self.delzant_check()?;
        if !report.lattice {
            return Err(PolytopeError::NotLattice);
        }
        let vertices = self.vertices()?;
        let lo_hi: Vec<(BigInt, BigInt)> = (0..self.dim)
            .map(|k| {
                let lo = vertices
                    .iter()
                    .map(|v| v.point[k].floor().to_integer())
                    .min()
                    .unwrap();
                let hi = vertices
                    .iter()
                    .map(|v| v.point[k].ceil().to_integer())
                    .max()
                    .unwrap();
                (lo, hi)
            })
            .collect();
        let mut points = Vec::new();
        let mut current = vec![BigInt::zero(); self.dim];
        enumerate_box(&lo_hi, 0, &mut current, &mut |candidate: &[BigInt]| {
            let rat: Vec<BigRational> = candidate
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            if self.contains(&rat) {
                points.push(IntVector(candidate.to_vec()));
            }
        });
        points.sort();
        let exponents = points
            .iter()
            .map(|m| {
                (0..self.num_facets())
                    .map(|j| {
                        let ld = BigRational::from_integer(m.dot(&self.normals[j]))
                            + &self.offsets[j];
                        debug_assert!(ld.is_integer() && !ld.is_negative());
                        ld.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(EmbeddingData {
            lattice_points: points,
            exponents,
        })
    }

    /// Homogeneous toric coordinates of the torus fixed point over a
    /// vertex: zero exactly on the active facets, one elsewhere.
    pub fn fixed_point_coordinates(&self, vertex: &Vertex) -> Vec<Complex64> {
        (0..self.num_facets())
            .map(|i| {
                if vertex.active_facets.contains(&i) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .collect()
    }
}

impl EmbeddingData {
    /// The projective embedding on homogeneous toric coordinates:
    /// `z -> (prod_j z_j^{LD(m_i, F_j)})_i`.
    pub fn embed(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.exponents
            .iter()
            .map(|row| {
                row.iter()
                    .zip(z)
                    .map(|(e, zj)| zj.powi(e.to_i32().expect("exponent fits i32")))
                    .product()
            })
            .collect()
    }

    /// Moment map of projective space restricted to the embedding:
    /// the convex combination `sum m_i |z_i|^2 / sum |z_i|^2`.
    pub fn moment_map(&self, homogeneous: &[Complex64]) -> Result<Vec<f64>, PolytopeError> {
        if homogeneous.len() != self.lattice_points.len() {
            return Err(PolytopeError::DimensionMismatch(format!(
                "expected {} homogeneous coordinates",
                self.lattice_points.len()
            )));
        }
        let total: f64 = homogeneous.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return Err(PolytopeError::ZeroVector);
        }
        let dim = self.lattice_points[0].dim();
        let mut out = vec![0.0; dim];
        for (m, z) in self.lattice_points.iter().zip(homogeneous) {
            let w = z.norm_sqr() / total;
            for (o, c) in out.iter_mut().zip(&m.0) {
                *o += w * c.to_f64().expect("lattice point fits f64");
            }
        }
        Ok(out)
    }
}

fn enumerate_box(
    bounds: &[(BigInt, BigInt)],
    k: usize,
    current: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]),
) {
    if k == bounds.len() {
        visit(current);
        return;
    }
    let (lo, hi) = &bounds[k];
    let mut x = lo.clone();
    while &x <= hi {
        current[k] = x.clone();
        enumerate_box(bounds, k + 1, current, visit);
        x += 1;
    }
}

/// All size-`k` subsets of `[0, m)` in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(m, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(m, k, 0, &mut current, &mut out);
    out
}
