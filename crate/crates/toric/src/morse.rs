//! Morse theory of the moment map component f_xi on a Delzant polytope:
//! critical points sit at the vertices, the index on the real part counts
//! edge directions pairing negatively with xi, and the index upstairs is
//! twice that.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::homology::GradedBasis;
use crate::lattice::{self, IntVector};
use crate::polytope::{Polytope, PolytopeError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorseError {
    #[error("polytope is not Delzant: {0}")]
    NotDelzant(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("xi is not generic: edge direction {direction:?} at vertex {vertex:?} pairs to zero")]
    NonGenericXi {
        vertex: Vec<String>,
        direction: Vec<BigInt>,
    },
    #[error("xi has wrong dimension")]
    DimensionMismatch,
    #[error("profile and basis describe different spaces")]
    MismatchedInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseDatum {
    pub vertex: Vertex,
    /// Inward primitive edge directions, dual to the active normals.
    pub edge_directions: Vec<IntVector>,
    pub index_r: usize,
    pub index_x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseProfile {
    pub data: Vec<MorseDatum>,
    pub xi: IntVector,
    /// b_0(R), ..., b_n(R) over Z2.
    pub betti_r: Vec<usize>,
    /// b_0(X), ..., b_{2n}(X) over Z2, supported in even degrees.
    pub betti_x: Vec<usize>,
}

fn require_delzant(polytope: &Polytope) -> Result<Vec<Vertex>, MorseError> {
    let report = polytope.delzant_check()?;
    if !report.delzant {
        return Err(MorseError::NotDelzant(report.certificates.join("; ")));
    }
    Ok(polytope.vertices()?)
}

/// Inward edge directions at a vertex: the dual basis to the vertex's
/// active facet normals.
pub fn edge_directions(
    polytope: &Polytope,
    vertex: &Vertex,
) -> Result<Vec<IntVector>, MorseError> {
    require_delzant(polytope)?;
    let active: Vec<IntVector> = vertex
        .active_facets
        .iter()
        .map(|&i| polytope.normals[i].clone())
        .collect();
    let dual = lattice::dual_basis(&active)
        .map_err(|e| MorseError::NotDelzant(e.to_string()))?;
    Ok(dual.dual)
}

pub fn morse_profile(polytope: &Polytope, xi: &IntVector) -> Result<MorseProfile, MorseError> {
    if xi.dim() != polytope.dim {
        return Err(MorseError::DimensionMismatch);
    }
    let vertices = require_delzant(polytope)?;
    let n = polytope.dim;
    let mut data = Vec::new();
    for vertex in &vertices {
        let directions = edge_directions(polytope, vertex)?;
        let mut index_r = 0;
        for d in &directions {
            let pairing = d.dot(xi);
            if pairing.is_zero() {
                return Err(MorseError::NonGenericXi {
                    vertex: vertex.point.iter().map(|c| c.to_string()).collect(),
                    direction: d.0.clone(),
                });
            }
            if pairing.is_negative() {
                index_r += 1;
            }
        }
        data.push(MorseDatum {
            vertex: vertex.clone(),
            edge_directions: directions,
            index_r,
            index_x: 2 * index_r,
        });
    }
    let mut betti_r = vec![0usize; n + 1];
    for datum in &data {
        betti_r[datum.index_r] += 1;
    }
    let mut betti_x = vec![0usize; 2 * n + 1];
    for (k, &b) in betti_r.iter().enumerate() {
        betti_x[2 * k] = b;
    }
    Ok(MorseProfile {
        data,
        xi: xi.clone(),
        betti_r,
        betti_x,
    })
}

/// Checks b_k(R) = rank H_{2k}(X; Z2) and total rank agreement; the
/// returned list of mismatches is empty exactly when the degree-doubling
/// comparison holds.
pub fn compare_with_homology(
    profile: &MorseProfile,
    basis: &GradedBasis,
) -> Result<Vec<String>, MorseError> {
    if profile.betti_r.len() != basis.classical_dim() + 1 {
        return Err(MorseError::MismatchedInput);
    }
    let mut mismatches = Vec::new();
    for (k, &b) in profile.betti_r.iter().enumerate() {
        let rank = basis.rank_homological(2 * k);
        if b != rank {
            mismatches.push(format!("b_{k}(R) = {b} but rank H_{}(X) = {rank}", 2 * k));
        }
    }
    let total: usize = profile.betti_r.iter().sum();
    if total != basis.total_rank {
        mismatches.push(format!(
            "total Betti {total} differs from ring rank {}",
            basis.total_rank
        ));
    }
    Ok(mismatches)
}

/// Uniform displacement-energy lower bound datum: the number of vertices,
/// which equals the total Z2 Betti number of the real part.
pub fn displacement_bound(polytope: &Polytope) -> Result<usize, MorseError> {
    Ok(require_delzant(polytope)?.len())
}

/// Finds a generic xi of the shape (1, M, M^2, ...) by growing M.
pub fn suggest_xi(polytope: &Polytope) -> Result<IntVector, MorseError> {
    let n = polytope.dim;
    for m in 1i64..=64 {
        let xi = IntVector(
            (0..n)
                .map(|k| BigInt::from(m).pow(k as u32))
                .collect(),
        );
        match morse_profile(polytope, &xi) {
            Ok(_) => return Ok(xi),
            Err(MorseError::NonGenericXi { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("pairings are finitely many linear conditions")
}

/// Poincare polynomial evaluation sum_vertices t^index_R at integer t.
pub fn poincare_eval(profile: &MorseProfile, t: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for datum in &profile.data {
        acc += BigInt::from(t).pow(datum.index_r as u32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::homology::homology_ring;
    use num_rational::BigRational;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn simplex() -> Polytope {
        Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])],
            vec![rat(1), rat(1), rat(1)],
        )
        .unwrap()
    }

    fn square() -> Polytope {
        Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0]), iv(&[0, -1])],
            vec![rat(1), rat(1), rat(1), rat(1)],
        )
        .unwrap()
    }

    fn interval() -> Polytope {
        Polytope::new(1, vec![iv(&[1]), iv(&[-1])], vec![rat(1), rat(1)]).unwrap()
    }

    fn blowup_polytope() -> Polytope {
        Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1]), iv(&[0, -1])],
            vec![rat(1), rat(1), rat(1), rat(1)],
        )
        .unwrap()
    }

    fn vertex_at(polytope: &Polytope, p: &[i64]) -> Vertex {
        let target: Vec<BigRational> = p.iter().map(|&c| rat(c)).collect();
        polytope
            .vertices()
            .unwrap()
            .into_iter()
            .find(|v| v.point == target)
            .unwrap()
    }

    #[test]
    fn square_corner_directions() {
        let sq = square();
        let v = vertex_at(&sq, &[-1, -1]);
        let dirs = edge_directions(&sq, &v).unwrap();
        let mut sorted = dirs.clone();
        sorted.sort_by_key(|d| d.0.clone());
        assert_eq!(sorted, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn simplex_vertex_directions() {
        let sx = simplex();
        let v = vertex_at(&sx, &[2, -1]);
        let dirs = edge_directions(&sx, &v).unwrap();
        for d in &dirs {
            // inward: stays inside along d for a small step
            let eps = BigRational::new(BigInt::from(1), BigInt::from(2));
            let moved: Vec<BigRational> = v
                .point
                .iter()
                .zip(&d.to_rational())
                .map(|(p, step)| p + step * &eps)
                .collect();
            assert!(sx.contains(&moved), "direction {d:?} leaves the polytope");
        }
        // pairwise-dual to the active normals
        let active: Vec<IntVector> = v
            .active_facets
            .iter()
            .map(|&i| sx.normals[i].clone())
            .collect();
        for (i, d) in dirs.iter().enumerate() {
            for (j, nrm) in active.iter().enumerate() {
                let want = if i == j { 1 } else { 0 };
                assert_eq!(d.dot(nrm), BigInt::from(want));
            }
        }
    }

    #[test]
    fn interval_profile() {
        let iv1 = interval();
        let profile = morse_profile(&iv1, &iv(&[1])).unwrap();
        assert_eq!(profile.betti_r, vec![1, 1]);
        assert_eq!(displacement_bound(&iv1).unwrap(), 2);
    }

    #[test]
    fn simplex_profile_rp2() {
        let profile = morse_profile(&simplex(), &iv(&[1, 2])).unwrap();
        let mut indices: Vec<usize> = profile.data.iter().map(|d| d.index_r).collect();
        indices.sort_unstable();
        assert_eq!(indices, vec![0, 1, 2]);
        assert_eq!(profile.betti_r, vec![1, 1, 1]);
        assert_eq!(profile.betti_x, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn square_profile_torus() {
        let profile = morse_profile(&square(), &iv(&[1, 2])).unwrap();
        assert_eq!(profile.betti_r, vec![1, 2, 1]);
    }

    #[test]
    fn simplex_nongeneric_xi() {
        match morse_profile(&simplex(), &iv(&[1, 1])) {
            Err(MorseError::NonGenericXi { .. }) => {}
            other => panic!("expected NonGenericXi, got {other:?}"),
        }
    }

    #[test]
    fn betti_invariant_under_generic_xi() {
        for p in [simplex(), square(), blowup_polytope()] {
            let reference = morse_profile(&p, &suggest_xi(&p).unwrap()).unwrap();
            let mut seen = 0;
            for xi in [
                iv(&[1, 2]),
                iv(&[3, -7]),
                iv(&[-5, 2]),
                iv(&[11, 4]),
                iv(&[2, -9]),
            ] {
                if let Ok(profile) = morse_profile(&p, &xi) {
                    assert_eq!(profile.betti_r, reference.betti_r);
                    seen += 1;
                }
            }
            assert!(seen >= 3);
        }
    }

    #[test]
    fn negating_xi_flips_indices() {
        let p = blowup_polytope();
        let xi = iv(&[1, 2]);
        let plus = morse_profile(&p, &xi).unwrap();
        let minus = morse_profile(&p, &xi.neg()).unwrap();
        for (a, b) in plus.data.iter().zip(&minus.data) {
            assert_eq!(a.vertex, b.vertex);
            assert_eq!(a.index_r + b.index_r, p.dim);
        }
    }

    #[test]
    fn poincare_evaluations() {
        let p = square();
        let profile = morse_profile(&p, &iv(&[1, 2])).unwrap();
        assert_eq!(poincare_eval(&profile, 1), BigInt::from(4));
        // Euler characteristic of the torus
        assert_eq!(poincare_eval(&profile, -1), BigInt::zero());
        let profile = morse_profile(&simplex(), &iv(&[1, 2])).unwrap();
        assert_eq!(poincare_eval(&profile, -1), BigInt::from(1));
    }

    #[test]
    fn comparison_with_homology_ranks() {
        let cases: Vec<(Polytope, Fan)> = vec![
            (
                simplex(),
                Fan::new(
                    2,
                    vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])],
                    vec![vec![0, 1], vec![1, 2], vec![0, 2]],
                ),
            ),
            (
                square(),
                Fan::new(
                    2,
                    vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0]), iv(&[0, -1])],
                    vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
                ),
            ),
            (
                blowup_polytope(),
                Fan::new(
                    2,
                    vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1]), iv(&[0, -1])],
                    vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
                ),
            ),
        ];
        for (p, fan) in cases {
            let profile = morse_profile(&p, &suggest_xi(&p).unwrap()).unwrap();
            let (_, basis) = homology_ring(&fan).unwrap();
            let mismatches = compare_with_homology(&profile, &basis).unwrap();
            assert!(mismatches.is_empty(), "{mismatches:?}");
            assert_eq!(
                displacement_bound(&p).unwrap(),
                profile.betti_r.iter().sum::<usize>()
            );
        }
    }

    #[test]
    fn non_delzant_rejected() {
        let bad = Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -2])],
            vec![rat(1), rat(1), rat(1)],
        )
        .unwrap();
        assert!(matches!(
            morse_profile(&bad, &iv(&[1, 2])),
            Err(MorseError::NotDelzant(_))
        ));
    }
}
