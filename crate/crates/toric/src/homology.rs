//! The Z2 homology ring of a smooth complete toric manifold, presented
//! by divisor generators modulo the linear relations and the
//! Stanley-Reisner ideal, with a finite graded monomial basis.
//!
//! Internally the grading is cohomological (each divisor generator has
//! degree 2); conversion to homological degrees `2n - deg` happens at
//! presentation boundaries only.

use num_bigint::BigInt;
use std::collections::BTreeSet;

use crate::fan::{Fan, FanError};
use crate::gf2::{Mono, Poly, Ring};
use crate::lattice::{self, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("fan is not complete")]
    NotComplete,
    #[error("lambda is not a curve class: pi(lambda) != 0")]
    NotACurveClass,
    #[error("index set does not span a cone of the fan")]
    NotACone,
    #[error("classes come from different presentations")]
    MismatchedInput,
}

/// Presentation data: one generator per toric divisor, the `n` linear
/// relations from a dual basis of `(Z^n)^*`, and the Stanley-Reisner
/// generators (the primitive collections), all over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub num_generators: usize,
    pub linear_relations: Vec<Vec<bool>>,
    pub sr_generators: Vec<BTreeSet<usize>>,
}

/// Reduced monomial basis of the quotient ring, one list per
/// cohomological degree `0, 2, ..., 2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    /// 2n, twice the complex dimension.
    pub top_degree: usize,
    /// Original divisor indices of the surviving (non-eliminated) variables.
    pub kept: Vec<usize>,
    /// For each eliminated divisor index, its GF(2) expansion over `kept`.
    pub eliminated: Vec<(usize, Vec<bool>)>,
    pub ring: Ring,
    pub groebner: Vec<Poly>,
    /// index d holds the basis monomials of cohomological degree 2d.
    pub monomials: Vec<Vec<Mono>>,
    pub total_rank: usize,
}

/// A homology class, recorded in cohomological degree with coordinates
/// over the basis monomials of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub codegree: usize,
    pub coords: Vec<bool>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| !c)
    }
}

impl GradedBasis {
    pub fn rank_codegree(&self, codeg: usize) -> usize {
        if !codeg.is_multiple_of(2) {
            return 0;
        }
        self.monomials.get(codeg / 2).map(|l| l.len()).unwrap_or(0)
    }

    /// Rank in homological degree `k` (i.e. codegree `2n - k`).
    pub fn rank_homological(&self, k: usize) -> usize {
        if k > self.top_degree {
            return 0;
        }
        self.rank_codegree(self.top_degree - k)
    }

    pub fn classical_dim(&self) -> usize {
        self.top_degree / 2
    }

    fn class_from_poly(&self, codeg: usize, poly: &Poly) -> HomologyClass {
        let level = self.monomials.get(codeg / 2).cloned().unwrap_or_default();
        let coords = level.iter().map(|m| poly.terms.contains(m)).collect();
        HomologyClass {
            codegree: codeg,
            coords,
        }
    }

    fn poly_from_class(&self, class: &HomologyClass) -> Poly {
        let mut p = Poly::zero();
        if let Some(level) = self.monomials.get(class.codegree / 2) {
            for (m, &c) in level.iter().zip(&class.coords) {
                if c {
                    p.add_mono(m.clone());
                }
            }
        }
        p
    }

    /// The reduced polynomial representing divisor class `[D_i]`.
    pub fn divisor_poly(&self, i: usize) -> Poly {
        if let Some(pos) = self.kept.iter().position(|&k| k == i) {
            return self
                .ring
                .normal_form(&Poly::from_mono(Mono::var(self.ring.nvars, pos)), &self.groebner);
        }
        let (_, expansion) = self
            .eliminated
            .iter()
            .find(|(e, _)| *e == i)
            .expect("divisor index in range");
        let mut p = Poly::zero();
        for (pos, &c) in expansion.iter().enumerate() {
            if c {
                p.add_mono(Mono::var(self.ring.nvars, pos));
            }
        }
        self.ring.normal_form(&p, &self.groebner)
    }

    pub fn divisor_class(&self, i: usize) -> HomologyClass {
        self.class_from_poly(2, &self.divisor_poly(i))
    }

    pub fn fundamental_class(&self) -> HomologyClass {
        self.class_from_poly(0, &Poly::one(self.ring.nvars))
    }

    /// The point class: the unique nonzero class in top cohomological
    /// degree.
    pub fn point_class(&self) -> HomologyClass {
        let m = self.monomials[self.top_degree / 2][0].clone();
        self.class_from_poly(self.top_degree, &Poly::from_mono(m))
    }

    /// Intersection product, reduced modulo the presentation ideal.
    /// Products past the top degree are zero (the class is returned with
    /// the clamped degree and empty coordinates).
    pub fn intersection_product(
        &self,
        a: &HomologyClass,
        b: &HomologyClass,
    ) -> HomologyClass {
        let codeg = a.codegree + b.codegree;
        if codeg > self.top_degree {
            return HomologyClass {
                codegree: self.top_degree,
                coords: vec![false; self.rank_codegree(self.top_degree)],
            };
        }
        let p = self
            .ring
            .normal_form(&self.poly_from_class(a).mul(&self.poly_from_class(b)), &self.groebner);
        self.class_from_poly(codeg, &p)
    }
}

/// Builds the GF(2) ring presentation and graded basis of `H_*(X; Z2)`.
///
/// Strategy: eliminate the `n` variables of the first maximal cone using
/// the linear relations for the dual basis of its generators, then take a
/// Groebner basis of the image of the Stanley-Reisner ideal in the
/// remaining `N - n` variables under graded reverse lexicographic order.
pub fn homology_ring(fan: &Fan) -> Result<(RingPresentation, GradedBasis), HomologyError> {
    let report = fan.validate();
    if !report.valid {
        return Err(FanError::InvalidFan(report.failures.join("; ")).into());
    }
    if !report.complete {
        return Err(HomologyError::NotComplete);
    }
    let n = fan.dim;
    let big_n = fan.num_rays();
    let pcs = fan.primitive_collections()?;

    // Linear relations for the standard dual basis, over GF(2).
    let linear_relations: Vec<Vec<bool>> = (0..n)
        .map(|k| {
            (0..big_n)
                .map(|j| fan.rays[j].vector.0[k].bit(0))
                .collect()
        })
        .collect();
    let presentation = RingPresentation {
        num_generators: big_n,
        linear_relations,
        sr_generators: pcs.clone(),
    };

    // Deterministically eliminate the first maximal cone's variables.
    let elim_cone: Vec<usize> = fan.max_cones[0].ray_indices.iter().copied().collect();
    let cone_rays: Vec<IntVector> = elim_cone
        .iter()
        .map(|&i| fan.rays[i].vector.clone())
        .collect();
    let dual = lattice::dual_basis(&cone_rays).map_err(FanError::from)?;
    let kept: Vec<usize> = (0..big_n).filter(|i| !elim_cone.contains(i)).collect();
    let k = kept.len();
    let ring = Ring::new(vec![2; k]);

    // x_i = sum_{j kept} <nu_i, v_j> x_j (mod 2) for eliminated i.
    let eliminated: Vec<(usize, Vec<bool>)> = elim_cone
        .iter()
        .enumerate()
        .map(|(pos, &i)| {
            let nu = &dual.dual[pos];
            let expansion = kept
                .iter()
                .map(|&j| nu.dot(&fan.rays[j].vector).bit(0))
                .collect();
            (i, expansion)
        })
        .collect();

    let substitute = |i: usize| -> Poly {
        if let Some(pos) = kept.iter().position(|&kk| kk == i) {
            Poly::from_mono(Mono::var(k, pos))
        } else {
            let (_, expansion) = eliminated.iter().find(|(e, _)| *e == i).unwrap();
            let mut p = Poly::zero();
            for (pos, &c) in expansion.iter().enumerate() {
                if c {
                    p.add_mono(Mono::var(k, pos));
                }
            }
            p
        }
    };

    let sr_polys: Vec<Poly> = pcs
        .iter()
        .map(|pc| {
            let mut p = Poly::one(k);
            for &i in pc {
                p = p.mul(&substitute(i));
            }
            p
        })
        .collect();
    let gb = ring.groebner(&sr_polys);
    let monomials = ring.standard_monomials(&gb, 2);
    let total_rank: usize = monomials.iter().map(|l| l.len()).sum();

    let basis = GradedBasis {
        top_degree: 2 * n,
        kept,
        eliminated,
        ring,
        groebner: gb,
        monomials,
        total_rank,
    };
    Ok((presentation, basis))
}

/// Pairing of `c1(X) = PD([D_1] + ... + [D_N])` with the sphere class
/// `lambda in ker(pi)`: the coordinate sum. Errors unless `pi(lambda) = 0`.
pub fn chern_pairing(fan: &Fan, lambda: &IntVector) -> Result<BigInt, HomologyError> {
    if lambda.dim() != fan.num_rays() {
        return Err(HomologyError::NotACurveClass);
    }
    let mut image = IntVector::zeros(fan.dim);
    for (l, ray) in lambda.0.iter().zip(&fan.rays) {
        image = image.add(&ray.vector.scaled(l));
    }
    if !image.is_zero() {
        return Err(HomologyError::NotACurveClass);
    }
    Ok(lambda.0.iter().sum())
}

/// For one divisor index `i`, the pairings `(j, <eps_i, v_j>)` over `j`
/// outside the cone.
pub type DivisorExpansion = (usize, Vec<(usize, BigInt)>);

/// Integer coefficients `<eps_i, v_j>` for `i` in `i0`, `j` outside,
/// where the `eps_i` are dual to the cone generators in a chosen basis
/// extension. These express `[D_i] = - sum_j <eps_i, v_j> [D_j]`.
pub fn divisor_expansion(
    fan: &Fan,
    i0: &BTreeSet<usize>,
    extension: Option<&[IntVector]>,
) -> Result<Vec<DivisorExpansion>, HomologyError> {
    if !fan.is_cone(i0) {
        return Err(HomologyError::NotACone);
    }
    if i0.is_empty() {
        return Ok(Vec::new());
    }
    let gens: Vec<IntVector> = i0.iter().map(|&i| fan.rays[i].vector.clone()).collect();
    let completion = match extension {
        Some(ext) => ext.to_vec(),
        None => lattice::extend_to_basis(&gens).map_err(FanError::from)?,
    };
    let mut full = gens.clone();
    full.extend(completion);
    let dual = lattice::dual_basis(&full).map_err(FanError::from)?;
    let outside: Vec<usize> = (0..fan.num_rays()).filter(|i| !i0.contains(i)).collect();
    Ok(i0
        .iter()
        .enumerate()
        .map(|(pos, &i)| {
            let eps = &dual.dual[pos];
            let coeffs = outside
                .iter()
                .map(|&j| (j, eps.dot(&fan.rays[j].vector)))
                .collect();
            (i, coeffs)
        })
        .collect())
}
