//! Quantum homology of a Fano toric manifold over GF(2): the classical
//! ring deformed by one Batyrev relation per primitive collection, with q
//! an honest polynomial variable of weighted degree 2 C_X. The real
//! Lagrangian's quantum homology is the same table with degrees halved
//! and t in place of q.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

use crate::fan::{Fan, FanError};
use crate::gf2::{Mono, Poly, Ring};
use crate::homology::{self, GradedBasis, HomologyError};
use crate::lattice::IntVector;
use crate::morse::{self, MorseError};
use crate::polytope::Polytope;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("fan is not Fano")]
    NotFano,
    #[error("collection {collection:?}: degree {excess} not divisible by C_X = {c_x}")]
    DegreeNotDivisible {
        collection: Vec<usize>,
        excess: BigInt,
        c_x: BigInt,
    },
    #[error("minimal Chern number {0} is below the theorem hypothesis C_X >= 2")]
    ChernTooSmall(BigInt),
    #[error("class is not homogeneous")]
    InhomogeneousClass,
    #[error("classes belong to a different ring")]
    MismatchedInput,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

/// One Batyrev relation: prod_{i in P} x_i = q^{d_P} prod_j x_j^{c_j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumRelation {
    pub collection: BTreeSet<usize>,
    pub rhs_exponents: BTreeMap<usize, BigInt>,
    pub q_power: BigInt,
}

#[derive(Debug, Clone)]
pub struct QuantumRing {
    pub basis: GradedBasis,
    pub c_x: usize,
    pub relations: Vec<QuantumRelation>,
    /// polynomial ring in the kept divisor variables plus q (last)
    pub ring: Ring,
    pub groebner: Vec<Poly>,
}

/// Homogeneous element of QH(X; Lambda_X), stored as a reduced
/// polynomial; every monomial is a classical basis monomial times a
/// power of q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QHClass {
    pub codegree: usize,
    pub poly: Poly,
}

impl QHClass {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// One relation per primitive collection, with the ray sum decomposed in
/// its minimal containing cone and the q-power fixed by homogeneity.
pub fn quantum_relations(fan: &Fan) -> Result<Vec<QuantumRelation>, QuantumError> {
    if !fan.is_fano()? {
        return Err(QuantumError::NotFano);
    }
    let c_x = fan.minimal_chern()?;
    let mut relations = Vec::new();
    for collection in fan.primitive_collections()? {
        let mut sum = IntVector::zeros(fan.dim);
        for &i in &collection {
            sum = sum.add(&fan.rays[i].vector);
        }
        let cone = fan
            .minimal_cone_containing(&sum)?
            .expect("complete fan covers the ray sum");
        let mut rhs_exponents = BTreeMap::new();
        let mut coeff_sum = BigInt::zero();
        if !cone.ray_indices.is_empty() {
            let coords = fan
                .cone_coordinates(&cone.ray_indices, &sum)
                .expect("sum lies in its minimal cone");
            for (&j, c) in cone.ray_indices.iter().zip(&coords) {
                if c.is_positive() {
                    assert!(c.is_integer(), "smooth cone has integral coordinates");
                    coeff_sum += c.to_integer();
                    rhs_exponents.insert(j, c.to_integer());
                }
            }
        }
        let excess = BigInt::from(collection.len()) - &coeff_sum;
        let (q_power, rem) = (excess.clone() / &c_x, excess.clone() % &c_x);
        if !rem.is_zero() || q_power < BigInt::one() {
            return Err(QuantumError::DegreeNotDivisible {
                collection: collection.iter().copied().collect(),
                excess,
                c_x,
            });
        }
        relations.push(QuantumRelation {
            collection,
            rhs_exponents,
            q_power,
        });
    }
    Ok(relations)
}

impl QuantumRing {
    pub fn new(fan: &Fan) -> Result<QuantumRing, QuantumError> {
        let relations = quantum_relations(fan)?;
        let c_x = fan.minimal_chern()?.to_usize().expect("small Chern number");
        let (_, basis) = homology::homology_ring(fan)?;
        let k = basis.ring.nvars;
        let mut weights = vec![2u64; k];
        weights.push(2 * c_x as u64);
        let ring = Ring::new(weights);

        // lift of a divisor variable into the quantum ring, with the
        // eliminated variables rewritten over the kept ones
        let substitute = |i: usize| -> Poly {
            if let Some(pos) = basis.kept.iter().position(|&kk| kk == i) {
                Poly::from_mono(Mono::var(k + 1, pos))
            } else {
                let (_, expansion) = basis
                    .eliminated
                    .iter()
                    .find(|(e, _)| *e == i)
                    .expect("divisor index in range");
                let mut p = Poly::zero();
                for (pos, &c) in expansion.iter().enumerate() {
                    if c {
                        p.add_mono(Mono::var(k + 1, pos));
                    }
                }
                p
            }
        };

        let mut generators = Vec::new();
        for relation in &relations {
            let mut lhs = Poly::one(k + 1);
            for &i in &relation.collection {
                lhs = lhs.mul(&substitute(i));
            }
            let mut q_mono = Mono::one(k + 1);
            q_mono.0[k] = relation.q_power.to_u32().expect("small q power");
            let mut rhs = Poly::from_mono(q_mono);
            for (&j, c) in &relation.rhs_exponents {
                let factor = substitute(j);
                for _ in 0..c.to_u32().expect("small exponent") {
                    rhs = rhs.mul(&factor);
                }
            }
            generators.push(lhs.add(&rhs));
        }
        let groebner = ring.groebner(&generators);

        // flatness of the deformation: the leading terms must stay q-free
        // and reproduce the classical basis levels
        for g in &groebner {
            let lt = ring.leading(g).expect("nonzero basis element");
            assert_eq!(lt.0[k], 0, "quantum leading term involves q");
        }
        Ok(QuantumRing {
            basis,
            c_x,
            relations,
            ring,
            groebner,
        })
    }

    fn lift_mono(&self, m: &Mono, q_power: u32) -> Mono {
        let mut e = m.0.clone();
        e.push(q_power);
        Mono(e)
    }

    /// A basis class of the classical ring, placed in the quantum ring
    /// with an extra power of q.
    pub fn from_classical(
        &self,
        class: &crate::homology::HomologyClass,
        q_power: u32,
    ) -> QHClass {
        let level = &self.basis.monomials[class.codegree / 2];
        let mut poly = Poly::zero();
        for (m, &c) in level.iter().zip(&class.coords) {
            if c {
                poly.add_mono(self.lift_mono(m, q_power));
            }
        }
        QHClass {
            codegree: class.codegree + 2 * self.c_x * q_power as usize,
            poly,
        }
    }

    pub fn unit(&self) -> QHClass {
        self.from_classical(&self.basis.fundamental_class(), 0)
    }

    pub fn point(&self) -> QHClass {
        self.from_classical(&self.basis.point_class(), 0)
    }

    pub fn divisor(&self, i: usize) -> QHClass {
        self.from_classical(&self.basis.divisor_class(i), 0)
    }

    /// [X] q^k, the fundamental class shifted by q.
    pub fn fundamental_q(&self, q_power: u32) -> QHClass {
        self.from_classical(&self.basis.fundamental_class(), q_power)
    }

    pub fn point_q(&self, q_power: u32) -> QHClass {
        self.from_classical(&self.basis.point_class(), q_power)
    }

    fn check_homogeneous(&self, class: &QHClass) -> Result<(), QuantumError> {
        for m in &class.poly.terms {
            if self.ring.weighted_degree(m) != class.codegree as u64 {
                return Err(QuantumError::InhomogeneousClass);
            }
        }
        Ok(())
    }

    pub fn product(&self, a: &QHClass, b: &QHClass) -> Result<QHClass, QuantumError> {
        self.check_homogeneous(a)?;
        self.check_homogeneous(b)?;
        let poly = self
            .ring
            .normal_form(&a.poly.mul(&b.poly), &self.groebner);
        let class = QHClass {
            codegree: a.codegree + b.codegree,
            poly,
        };
        debug_assert!(self.decompose(&class).is_some(), "non-basis normal form");
        Ok(class)
    }

    /// Splits a reduced class into (classical degree level, basis index,
    /// q power) triples; `None` if some monomial is not basis x q-power.
    pub fn decompose(&self, class: &QHClass) -> Option<Vec<(usize, usize, u32)>> {
        let k = self.ring.nvars - 1;
        let mut out = Vec::new();
        for m in &class.poly.terms {
            let q_power = m.0[k];
            let classical = Mono(m.0[..k].to_vec());
            let level = (classical.total_degree()) as usize; // weights are all 2
            let index = self
                .basis
                .monomials
                .get(level)?
                .iter()
                .position(|b| *b == classical)?;
            out.push((level, index, q_power));
        }
        Some(out)
    }

    /// The q = 0 part, as a classical homology class of the same degree.
    pub fn classical_limit(&self, class: &QHClass) -> crate::homology::HomologyClass {
        let k = self.ring.nvars - 1;
        let level = self
            .basis
            .monomials
            .get(class.codegree / 2)
            .cloned()
            .unwrap_or_default();
        let coords = level
            .iter()
            .map(|b| {
                let lifted = self.lift_mono(b, 0);
                class.poly.terms.contains(&lifted) && lifted.0[k] == 0
            })
            .collect();
        crate::homology::HomologyClass {
            codegree: class.codegree.min(self.basis.top_degree),
            coords,
        }
    }
}

/// QH(R; Lambda_R): the ambient quantum ring transported through the
/// degree-doubling isomorphism, t standing for q with |t| = -N_R.
#[derive(Debug, Clone)]
pub struct RealQuantumRing {
    pub ambient: QuantumRing,
    /// minimal Maslov number N_R = C_X
    pub n_r: usize,
}

pub fn qh_real(fan: &Fan) -> Result<RealQuantumRing, QuantumError> {
    let c_x = fan.minimal_chern()?;
    if c_x < BigInt::from(2) {
        return Err(QuantumError::ChernTooSmall(c_x));
    }
    let ambient = QuantumRing::new(fan)?;
    let n_r = ambient.c_x;
    Ok(RealQuantumRing { ambient, n_r })
}

impl RealQuantumRing {
    /// Degree of a class downstairs: half the ambient codegree.
    pub fn real_codegree(&self, class: &QHClass) -> usize {
        class.codegree / 2
    }

    /// The transported product; structure constants coincide with the
    /// ambient ones under t -> q.
    pub fn product(&self, a: &QHClass, b: &QHClass) -> Result<QHClass, QuantumError> {
        self.ambient.product(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidenessReport {
    pub betti_r: Vec<usize>,
    pub n_r: usize,
    /// rank of QH_k(R; Lambda_R) for k = 0..N_R-1 (periodic beyond)
    pub qh_ranks_mod_n_r: Vec<usize>,
    /// lower bound on #(R and phi(R)) for Hamiltonian phi
    pub displacement_bound: usize,
}

pub fn wideness_summary(
    fan: &Fan,
    polytope: &Polytope,
    xi: &IntVector,
) -> Result<WidenessReport, QuantumError> {
    let real = qh_real(fan)?;
    let profile = morse::morse_profile(polytope, xi)?;
    let n_r = real.n_r;
    let mut qh_ranks = vec![0usize; n_r];
    for (k, &b) in profile.betti_r.iter().enumerate() {
        qh_ranks[k % n_r] += b;
    }
    let displacement_bound = profile.betti_r.iter().sum();
    Ok(WidenessReport {
        betti_r: profile.betti_r,
        n_r,
        qh_ranks_mod_n_r: qh_ranks,
        displacement_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn cp(n: usize) -> Fan {
        let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        rays.push(IntVector(vec![BigInt::from(-1); n]));
        let cones: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones)
    }

    fn cp1xcp1() -> Fan {
        Fan::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0]), iv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }

    fn blowup() -> Fan {
        Fan::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1]), iv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }

    #[test]
    fn relations_cpn() {
        for n in 1..=3 {
            let rels = quantum_relations(&cp(n)).unwrap();
            assert_eq!(rels.len(), 1);
            assert_eq!(rels[0].collection.len(), n + 1);
            assert!(rels[0].rhs_exponents.is_empty());
            assert_eq!(rels[0].q_power, BigInt::one());
        }
    }

    #[test]
    fn relations_cp1xcp1() {
        let rels = quantum_relations(&cp1xcp1()).unwrap();
        assert_eq!(rels.len(), 2);
        for rel in &rels {
            assert!(rel.rhs_exponents.is_empty());
            assert_eq!(rel.q_power, BigInt::one());
        }
        let collections: BTreeSet<BTreeSet<usize>> =
            rels.iter().map(|r| r.collection.clone()).collect();
        assert_eq!(
            collections,
            BTreeSet::from([BTreeSet::from([0, 2]), BTreeSet::from([1, 3])])
        );
    }

    #[test]
    fn relations_blowup() {
        let rels = quantum_relations(&blowup()).unwrap();
        assert_eq!(rels.len(), 2);
        for rel in &rels {
            if rel.collection == BTreeSet::from([0, 2]) {
                assert_eq!(rel.rhs_exponents, BTreeMap::from([(3, BigInt::one())]));
                assert_eq!(rel.q_power, BigInt::one());
            } else {
                assert_eq!(rel.collection, BTreeSet::from([1, 3]));
                assert!(rel.rhs_exponents.is_empty());
                assert_eq!(rel.q_power, BigInt::from(2));
            }
        }
    }

    #[test]
    fn relations_homogeneous() {
        for fan in [cp(1), cp(2), cp(3), cp1xcp1(), blowup()] {
            let c_x = fan.minimal_chern().unwrap();
            for rel in quantum_relations(&fan).unwrap() {
                let coeff_sum: BigInt = rel.rhs_exponents.values().sum();
                assert_eq!(
                    BigInt::from(2 * rel.collection.len() as i64),
                    BigInt::from(2) * &coeff_sum
                        + BigInt::from(2) * &c_x * &rel.q_power
                );
            }
        }
    }

    #[test]
    fn non_fano_rejected() {
        // Hirzebruch surface F_2
        let f2 = Fan::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 2]), iv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        );
        assert_eq!(quantum_relations(&f2).unwrap_err(), QuantumError::NotFano);
    }

    #[test]
    fn cpn_power_table() {
        // h^{*i} = h^{cap i} for i <= n, and h^{*(n+1)} = [CP^n] q
        for n in 1..=3usize {
            let ring = QuantumRing::new(&cp(n)).unwrap();
            let h = ring.divisor(0);
            let mut acc = ring.unit();
            for i in 1..=n {
                acc = ring.product(&acc, &h).unwrap();
                // rank one in every degree on CP^n
                let classical = ring.from_classical(
                    &crate::homology::HomologyClass {
                        codegree: 2 * i,
                        coords: vec![true],
                    },
                    0,
                );
                assert_eq!(acc, classical, "h^{i} on CP^{n}");
            }
            acc = ring.product(&acc, &h).unwrap();
            assert_eq!(acc, ring.fundamental_q(1), "h^{} on CP^{n}", n + 1);
        }
    }

    #[test]
    fn cp1xcp1_table() {
        let ring = QuantumRing::new(&cp1xcp1()).unwrap();
        let a = ring.divisor(1);
        let b = ring.divisor(0);
        assert_eq!(ring.product(&a, &b).unwrap(), ring.point());
        assert_eq!(ring.product(&a, &a).unwrap(), ring.fundamental_q(1));
        assert_eq!(ring.product(&b, &b).unwrap(), ring.fundamental_q(1));
    }

    #[test]
    fn unit_acts_trivially() {
        for fan in [cp(2), cp1xcp1(), blowup()] {
            let ring = QuantumRing::new(&fan).unwrap();
            let unit = ring.unit();
            for i in 0..fan.num_rays() {
                let d = ring.divisor(i);
                assert_eq!(ring.product(&unit, &d).unwrap(), d);
            }
        }
    }

    #[test]
    fn classical_limit_matches_intersection() {
        for fan in [cp(2), cp(3), cp1xcp1(), blowup()] {
            let ring = QuantumRing::new(&fan).unwrap();
            for i in 0..fan.num_rays() {
                for j in 0..fan.num_rays() {
                    let qp = ring.product(&ring.divisor(i), &ring.divisor(j)).unwrap();
                    let classical = ring.basis.intersection_product(
                        &ring.basis.divisor_class(i),
                        &ring.basis.divisor_class(j),
                    );
                    assert_eq!(ring.classical_limit(&qp), classical);
                }
            }
        }
    }

    #[test]
    fn product_associative_commutative() {
        for fan in [cp(2), cp1xcp1(), blowup()] {
            let ring = QuantumRing::new(&fan).unwrap();
            let gens: Vec<QHClass> = (0..fan.num_rays()).map(|i| ring.divisor(i)).collect();
            for a in &gens {
                for b in &gens {
                    assert_eq!(
                        ring.product(a, b).unwrap(),
                        ring.product(b, a).unwrap()
                    );
                    for c in &gens {
                        let ab_c = ring
                            .product(&ring.product(a, b).unwrap(), c)
                            .unwrap();
                        let a_bc = ring
                            .product(a, &ring.product(b, c).unwrap())
                            .unwrap();
                        assert_eq!(ab_c, a_bc);
                    }
                }
            }
        }
    }

    #[test]
    fn blowup_quantum_products() {
        // x1 x3 = q x4 and x2 x4 = q^2 should be visible as products
        let ring = QuantumRing::new(&blowup()).unwrap();
        let d0 = ring.divisor(0);
        let d2 = ring.divisor(2);
        let got = ring.product(&d0, &d2).unwrap();
        // q [D_4] has codegree 4
        let q_d3 = ring.from_classical(&ring.basis.divisor_class(3), 1);
        assert_eq!(got, q_d3);
        let d1 = ring.divisor(1);
        let d3 = ring.divisor(3);
        assert_eq!(ring.product(&d1, &d3).unwrap(), ring.fundamental_q(2));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let ring = QuantumRing::new(&cp(2)).unwrap();
        let mut bad = ring.unit();
        bad.poly = bad.poly.add(&ring.divisor(0).poly);
        assert_eq!(
            ring.product(&bad, &ring.unit()).unwrap_err(),
            QuantumError::InhomogeneousClass
        );
    }

    #[test]
    fn qh_real_tables() {
        // RP^n: h_R^{*(n+1)} = [RP^n] t
        for n in [1usize, 2, 3] {
            let real = qh_real(&cp(n)).unwrap();
            assert_eq!(real.n_r, n + 1);
            let h = real.ambient.divisor(0);
            let mut acc = real.ambient.unit();
            for _ in 0..=n {
                acc = real.product(&acc, &h).unwrap();
            }
            assert_eq!(acc, real.ambient.fundamental_q(1));
            // degree halves: [R] t sits in real codegree (n+1)
            assert_eq!(real.real_codegree(&acc), n + 1);
        }
        // torus in CP^1 x CP^1: a*b = [pt], a*a = b*b = [R] t
        let real = qh_real(&cp1xcp1()).unwrap();
        let a = real.ambient.divisor(1);
        let b = real.ambient.divisor(0);
        assert_eq!(real.product(&a, &b).unwrap(), real.ambient.point());
        assert_eq!(real.product(&a, &a).unwrap(), real.ambient.fundamental_q(1));
        assert_eq!(real.product(&b, &b).unwrap(), real.ambient.fundamental_q(1));
    }

    #[test]
    fn qh_real_rejects_small_chern() {
        assert_eq!(
            qh_real(&blowup()).unwrap_err(),
            QuantumError::ChernTooSmall(BigInt::one())
        );
    }

    #[test]
    fn wideness_reports() {
        let rat = |n: i64| BigRational::from_integer(BigInt::from(n));
        let simplex = Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])],
            vec![rat(1), rat(1), rat(1)],
        )
        .unwrap();
        let report = wideness_summary(&cp(2), &simplex, &iv(&[1, 2])).unwrap();
        assert_eq!(report.n_r, 3);
        assert_eq!(report.qh_ranks_mod_n_r, vec![1, 1, 1]);
        assert_eq!(report.displacement_bound, 3);

        let square = Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 0]), iv(&[0, -1])],
            vec![rat(1), rat(1), rat(1), rat(1)],
        )
        .unwrap();
        let report = wideness_summary(&cp1xcp1(), &square, &iv(&[1, 2])).unwrap();
        assert_eq!(report.displacement_bound, 4);
        assert_eq!(report.qh_ranks_mod_n_r, vec![2, 2]);

        let interval =
            Polytope::new(1, vec![iv(&[1]), iv(&[-1])], vec![rat(1), rat(1)]).unwrap();
        let report = wideness_summary(&cp(1), &interval, &iv(&[1])).unwrap();
        assert_eq!(report.displacement_bound, 2);
    }
}
