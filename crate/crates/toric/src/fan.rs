//! Fans of smooth rational cones: validation, completeness, primitive
//! collections, minimal Chern number and the Fano test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

use crate::lattice::{self, IntMatrix, IntVector};
use crate::linalg::{self, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not complete")]
    NotComplete,
    #[error("degenerate Chern pairing: every kernel vector pairs to zero with c1")]
    DegenerateChern,
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
}

/// Primitive integral generator of a 1-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub vector: IntVector,
}

/// A cone of the fan, recorded by the sorted set of its ray indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub ray_indices: BTreeSet<usize>,
}

impl Cone {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Cone {
            ray_indices: indices.into_iter().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ray_indices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Ray>,
    pub max_cones: Vec<Cone>,
}

/// Outcome of `validate_fan`, with human-readable certificates naming the
/// offending rays or cone pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub valid: bool,
    pub smooth: bool,
    pub complete: bool,
    pub failures: Vec<String>,
}

impl Fan {
    pub fn new(dim: usize, ray_vectors: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Self {
        Fan {
            dim,
            rays: ray_vectors.into_iter().map(|v| Ray { vector: v }).collect(),
            max_cones: max_cones.into_iter().map(Cone::new).collect(),
        }
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.rays.iter().map(|r| r.vector.clone()).collect())
    }

    fn ray_vectors(&self, indices: &BTreeSet<usize>) -> Vec<IntVector> {
        indices.iter().map(|&i| self.rays[i].vector.clone()).collect()
    }

    /// Face-closure membership: a set of ray indices spans a cone of the
    /// fan iff it is a subset of some maximal cone.
    pub fn is_cone(&self, indices: &BTreeSet<usize>) -> bool {
        self.max_cones
            .iter()
            .any(|c| indices.is_subset(&c.ray_indices))
    }

    /// All cones of the fan (face closure of the maximal cones),
    /// including the zero cone.
    pub fn all_cones(&self) -> BTreeSet<Cone> {
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for c in &self.max_cones {
            let idx: Vec<usize> = c.ray_indices.iter().copied().collect();
            for mask in 0..(1usize << idx.len()) {
                let sub: BTreeSet<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                out.insert(Cone { ray_indices: sub });
            }
        }
        if self.max_cones.is_empty() {
            out.insert(Cone::new([]));
        }
        out
    }

    pub fn validate(&self) -> FanReport {
        let mut failures = Vec::new();
        let mut smooth = true;
        for (i, ray) in self.rays.iter().enumerate() {
            if ray.vector.is_zero() || ray.vector.dim() != self.dim {
                failures.push(format!("ray {i} is zero or of wrong dimension"));
                smooth = false;
            } else if !ray.vector.is_primitive() {
                failures.push(format!("ray {i} is not primitive: {}", ray.vector));
                smooth = false;
            }
        }
        for (ci, cone) in self.max_cones.iter().enumerate() {
            if cone.ray_indices.iter().any(|&i| i >= self.rays.len()) {
                failures.push(format!("cone {ci} references a missing ray"));
                smooth = false;
                continue;
            }
            match lattice::extend_to_basis(&self.ray_vectors(&cone.ray_indices)) {
                Ok(_) => {}
                Err(e) => {
                    failures.push(format!("cone {ci} {:?} is not smooth: {e}", cone.ray_indices));
                    smooth = false;
                }
            }
        }
        if smooth {
            for a in 0..self.max_cones.len() {
                for b in a + 1..self.max_cones.len() {
                    if let Some(msg) = self.intersection_failure(a, b) {
                        failures.push(msg);
                    }
                }
            }
        }
        let valid = failures.is_empty();
        let complete = valid && self.is_complete_unchecked();
        FanReport {
            valid,
            smooth,
            complete,
            failures,
        }
    }

    /// Checks that cone(I_a) intersect cone(I_b) is exactly the cone on
    /// their common rays, by exact Fourier-Motzkin feasibility of
    /// "x in both cones with a strictly positive coordinate outside the
    /// common rays".
    fn intersection_failure(&self, a: usize, b: usize) -> Option<String> {
        let ia: Vec<usize> = self.max_cones[a].ray_indices.iter().copied().collect();
        let ib: Vec<usize> = self.max_cones[b].ray_indices.iter().copied().collect();
        let common: BTreeSet<usize> = self.max_cones[a]
            .ray_indices
            .intersection(&self.max_cones[b].ray_indices)
            .copied()
            .collect();
        let nvars = ia.len() + ib.len();
        for (pos, &witness) in ia.iter().enumerate() {
            if common.contains(&witness) {
                continue;
            }
            let mut f = Feasibility::new(nvars);
            for v in 0..nvars {
                let mut c = vec![BigRational::zero(); nvars];
                c[v] = BigRational::one();
                f.add_ge(c, BigRational::zero());
            }
            let mut c = vec![BigRational::zero(); nvars];
            c[pos] = BigRational::one();
            f.add_ge(c, BigRational::one());
            for coord in 0..self.dim {
                let mut c = vec![BigRational::zero(); nvars];
                for (p, &i) in ia.iter().enumerate() {
                    c[p] = BigRational::from_integer(self.rays[i].vector.0[coord].clone());
                }
                for (p, &j) in ib.iter().enumerate() {
                    c[ia.len() + p] =
                        -BigRational::from_integer(self.rays[j].vector.0[coord].clone());
                }
                f.add_eq(c, BigRational::zero());
            }
            if f.feasible() {
                return Some(format!(
                    "cones {a} and {b} overlap outside their common face (witness ray {witness})"
                ));
            }
        }
        None
    }

    fn require_valid(&self) -> Result<(), FanError> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(FanError::InvalidFan(report.failures.join("; ")))
        }
    }

    /// For valid simplicial fans: every (n-1)-cone is a facet of exactly
    /// two maximal cones and the facet-adjacency graph is connected.
    /// Additionally certifies coverage of the negated rays.
    fn is_complete_unchecked(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if self.max_cones.is_empty() {
            return false;
        }
        if self.max_cones.iter().any(|c| c.dim() != self.dim) {
            return false;
        }
        // facet -> incident maximal cones
        let mut facet_uses: std::collections::BTreeMap<BTreeSet<usize>, Vec<usize>> =
            Default::default();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for &drop in &cone.ray_indices {
                let mut facet = cone.ray_indices.clone();
                facet.remove(&drop);
                facet_uses.entry(facet).or_default().push(ci);
            }
        }
        if facet_uses.values().any(|v| v.len() != 2) {
            return false;
        }
        // connectivity of the adjacency graph
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for uses in facet_uses.values() {
                if uses.contains(&c) {
                    for &other in uses {
                        if !seen[other] {
                            seen[other] = true;
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return false;
        }
        // belt-and-braces: the negative of every ray must be covered
        self.rays.iter().all(|r| {
            self.minimal_cone_containing_unchecked(&r.vector.neg())
                .is_some()
        })
    }

    pub fn is_complete(&self) -> Result<bool, FanError> {
        self.require_valid()?;
        Ok(self.is_complete_unchecked())
    }

    fn minimal_cone_containing_unchecked(&self, v: &IntVector) -> Option<Cone> {
        if v.is_zero() {
            return Some(Cone::new([]));
        }
        for cone in self.all_cones() {
            if cone.ray_indices.is_empty() {
                continue;
            }
            if let Some(coords) = self.cone_coordinates(&cone.ray_indices, v) {
                if coords.iter().all(|c| c.is_positive()) {
                    return Some(cone);
                }
            }
        }
        None
    }

    /// Exact coordinates of `v` with respect to the (independent) rays of
    /// a cone, or `None` if `v` is outside their span.
    pub fn cone_coordinates(
        &self,
        indices: &BTreeSet<usize>,
        v: &IntVector,
    ) -> Option<Vec<BigRational>> {
        let idx: Vec<usize> = indices.iter().copied().collect();
        // columns are the rays
        let a: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|coord| {
                idx.iter()
                    .map(|&i| BigRational::from_integer(self.rays[i].vector.0[coord].clone()))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = v.to_rational();
        let x = linalg::solve(&a, &b)?;
        // `solve` fills free variables with zero; verify the solution.
        for (coord, target) in b.iter().enumerate() {
            let lhs: BigRational = idx
                .iter()
                .zip(&x)
                .map(|(&i, c)| c * BigRational::from_integer(self.rays[i].vector.0[coord].clone()))
                .sum();
            if &lhs != target {
                return None;
            }
        }
        Some(x)
    }

    /// The unique minimal cone whose nonnegative span contains `v`;
    /// `None` iff the fan is incomplete and `v` is uncovered.
    pub fn minimal_cone_containing(&self, v: &IntVector) -> Result<Option<Cone>, FanError> {
        self.require_valid()?;
        Ok(self.minimal_cone_containing_unchecked(v))
    }

    /// All inclusion-minimal subsets of ray indices that do not span a
    /// cone of the fan.
    pub fn primitive_collections(&self) -> Result<Vec<BTreeSet<usize>>, FanError> {
        self.require_valid()?;
        let n = self.num_rays();
        let mut found: Vec<BTreeSet<usize>> = Vec::new();
        let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        for _size in 0..n {
            let mut next = Vec::new();
            for set in &frontier {
                let start = set.iter().next_back().map(|&m| m + 1).unwrap_or(0);
                for i in start..n {
                    let mut bigger = set.clone();
                    bigger.insert(i);
                    if found.iter().any(|p| p.is_subset(&bigger)) {
                        continue;
                    }
                    if self.is_cone(&bigger) {
                        next.push(bigger);
                    } else {
                        found.push(bigger);
                    }
                }
            }
            frontier = next;
        }
        found.sort();
        Ok(found)
    }

    /// Minimal Chern number: gcd over a kernel basis of the pairings of
    /// c1 with the corresponding sphere classes, i.e. of the coordinate
    /// sums of the basis vectors.
    pub fn minimal_chern(&self) -> Result<BigInt, FanError> {
        self.require_valid()?;
        if !self.is_complete_unchecked() {
            return Err(FanError::NotComplete);
        }
        let kernel = lattice::kernel_basis(&self.ray_matrix())?;
        let mut g = BigInt::zero();
        for lam in &kernel {
            let s: BigInt = lam.0.iter().sum();
            g = g.gcd(&s.abs());
        }
        if g.is_zero() {
            return Err(FanError::DegenerateChern);
        }
        Ok(g)
    }

    /// Whether the fan is the normal fan of the reflexive polytope
    /// `{ phi : <phi, v_i> >= -1 }`, i.e. whether that polytope is
    /// lattice and dualizes back to this fan.
    pub fn is_fano(&self) -> Result<bool, FanError> {
        self.require_valid()?;
        let one = BigRational::one();
        let normals: Vec<IntVector> = self.rays.iter().map(|r| r.vector.clone()).collect();
        let poly = crate::polytope::Polytope::new(
            self.dim,
            normals,
            vec![one; self.num_rays()],
        )
        .map_err(|e| FanError::InvalidFan(e.to_string()))?;
        let Ok(report) = poly.delzant_check() else {
            return Ok(false);
        };
        if !report.lattice {
            return Ok(false);
        }
        let Ok(dual_fan) = poly.normal_fan() else {
            return Ok(false);
        };
        let mine: BTreeSet<&Cone> = self.max_cones.iter().collect();
        let theirs: BTreeSet<&Cone> = dual_fan.max_cones.iter().collect();
        Ok(dual_fan.rays == self.rays && mine == theirs)
    }
}
