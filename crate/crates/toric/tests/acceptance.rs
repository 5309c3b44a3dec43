//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use toric::curves::{
    infinity_stratum, maslov_general, maslov_zero_count, curve_class, LiftComponent,
    RealDiscLift,
};
use toric::homology::{chern_pairing, homology_ring};
use toric::io::builtin;
use toric::lattice::{kernel_basis, row_lattice_eq, IntMatrix, IntVector};
use toric::morse;
use toric::polytope::Polytope;
use toric::quantum::{qh_real, quantum_relations, QuantumError, QuantumRing};

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(number: u32, name: &str, f: F) {
    let result = std::panic::catch_unwind(f);
    println!(
        "acceptance {number} ({name}): {}",
        if result.is_ok() { "pass" } else { "FAIL" }
    );
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

fn iv(v: &[i64]) -> IntVector {
    IntVector::from_i64(v)
}

fn reference_lift() -> RealDiscLift {
    RealDiscLift::new(vec![
        LiftComponent::monic(vec![], vec![0.0]),
        LiftComponent::constant(1.0),
        LiftComponent::monic(vec![], vec![1.0]),
        LiftComponent::Zero,
    ])
}

#[test]
fn criterion_1_blowup_maslov() {
    criterion(1, "blow-up Maslov example", || {
        let fan = builtin("blowup-cp2").unwrap().fan;
        let lift = reference_lift();
        assert_eq!(lift.i0(), BTreeSet::from([3]));
        let ext = [iv(&[1, 1])];
        let result = maslov_general(&fan, &lift, Some(&ext)).unwrap();
        assert_eq!(result.mu, BigInt::one());
        let raw = RealDiscLift::new(vec![
            LiftComponent::monic(vec![], vec![0.0]),
            LiftComponent::constant(1.0),
            LiftComponent::constant(1.0),
            LiftComponent::Zero,
        ]);
        assert_eq!(
            infinity_stratum(&fan, &raw).unwrap(),
            BTreeSet::from([2, 3])
        );
    });
}

#[test]
fn criterion_2_blowup_kernel() {
    criterion(2, "blow-up kernel basis", || {
        let fan = builtin("blowup-cp2").unwrap().fan;
        let kernel = kernel_basis(&fan.ray_matrix()).unwrap();
        let computed = IntMatrix::new(kernel);
        let expected = IntMatrix::from_i64(&[&[0, 1, 0, 1], &[1, 1, 1, 0]]);
        assert!(row_lattice_eq(&computed, &expected));
    });
}

#[test]
fn criterion_3_minimal_chern() {
    criterion(3, "minimal Chern numbers", || {
        for n in 1..=4usize {
            let fan = builtin(&format!("cp:{n}")).unwrap().fan;
            assert_eq!(fan.minimal_chern().unwrap(), BigInt::from(n as i64 + 1));
        }
        let fan = builtin("cp1xcp1").unwrap().fan;
        assert_eq!(fan.minimal_chern().unwrap(), BigInt::from(2));
        let fan = builtin("blowup-cp2").unwrap().fan;
        assert_eq!(fan.minimal_chern().unwrap(), BigInt::one());
    });
}

#[test]
fn criterion_4_quantum_tables() {
    criterion(4, "quantum tables", || {
        for n in 1..=3usize {
            let fan = builtin(&format!("cp:{n}")).unwrap().fan;
            let ring = QuantumRing::new(&fan).unwrap();
            let h = ring.divisor(0);
            let mut acc = ring.unit();
            for i in 1..=n {
                acc = ring.product(&acc, &h).unwrap();
                // classical power: no q, one basis monomial, degree 2i
                assert_eq!(acc.codegree, 2 * i);
                let terms = ring.decompose(&acc).unwrap();
                assert_eq!(terms, vec![(i, 0, 0)]);
            }
            acc = ring.product(&acc, &h).unwrap();
            assert_eq!(acc, ring.fundamental_q(1), "h^(n+1) = [CP^n] q for n = {n}");

            let real = qh_real(&fan).unwrap();
            let mut racc = real.ambient.unit();
            for _ in 0..=n {
                racc = real.product(&racc, &real.ambient.divisor(0)).unwrap();
            }
            assert_eq!(racc, real.ambient.fundamental_q(1), "h_R^(n+1) = [RP^n] t");
        }
        let fan = builtin("cp1xcp1").unwrap().fan;
        let ring = QuantumRing::new(&fan).unwrap();
        let a = ring.divisor(1);
        let b = ring.divisor(0);
        assert_eq!(ring.product(&a, &b).unwrap(), ring.point());
        assert_eq!(ring.product(&a, &a).unwrap(), ring.fundamental_q(1));
        assert_eq!(ring.product(&b, &b).unwrap(), ring.fundamental_q(1));
        let real = qh_real(&fan).unwrap();
        let (ra, rb) = (real.ambient.divisor(1), real.ambient.divisor(0));
        assert_eq!(real.product(&ra, &rb).unwrap(), real.ambient.point());
        assert_eq!(real.product(&ra, &ra).unwrap(), real.ambient.fundamental_q(1));
        assert_eq!(real.product(&rb, &rb).unwrap(), real.ambient.fundamental_q(1));

        let fan = builtin("blowup-cp2").unwrap().fan;
        assert!(matches!(
            qh_real(&fan),
            Err(QuantumError::ChernTooSmall(_))
        ));
    });
}

#[test]
fn criterion_5_morse_topology() {
    criterion(5, "Morse theory vs homology", || {
        for id in ["cp:2", "cp:3", "cp1xcp1", "blowup-cp2"] {
            let input = builtin(id).unwrap();
            let polytope = input.polytope.unwrap();
            let (_, basis) = homology_ring(&input.fan).unwrap();
            let candidates: Vec<IntVector> = match input.fan.dim {
                2 => vec![iv(&[1, 2]), iv(&[3, -7]), iv(&[-5, 2]), iv(&[2, -9])],
                3 => vec![
                    iv(&[1, 2, 5]),
                    iv(&[3, -7, 11]),
                    iv(&[-5, 2, 13]),
                    iv(&[2, -9, -4]),
                ],
                _ => unreachable!(),
            };
            let mut profiles = Vec::new();
            for xi in candidates {
                if let Ok(profile) = morse::morse_profile(&polytope, &xi) {
                    profiles.push(profile);
                }
            }
            assert!(profiles.len() >= 3, "{id}: want 3 generic xi");
            let vertices = polytope.vertices().unwrap().len();
            for profile in &profiles {
                assert_eq!(profile.betti_r, profiles[0].betti_r, "{id}: xi-independence");
                for (k, &b) in profile.betti_r.iter().enumerate() {
                    assert_eq!(b, basis.rank_homological(2 * k), "{id}: degree doubling");
                }
                assert_eq!(profile.betti_r.iter().sum::<usize>(), vertices, "{id}");
                for datum in &profile.data {
                    assert_eq!(datum.index_x, 2 * datum.index_r, "{id}");
                }
            }
        }
    });
}

/// Random lift on a fan with I_0 empty and m_bar = 0: degrees follow a
/// random nonnegative kernel combination, roots are distinct reals and
/// upper-half-plane points.
fn random_lift<R: Rng>(rng: &mut R, degrees: &[usize]) -> RealDiscLift {
    let components = degrees
        .iter()
        .map(|&d| {
            let mut complex_roots = Vec::new();
            let mut real_roots = Vec::new();
            let mut left = d;
            while left > 0 {
                let root = rng.gen_range(-10.0..10.0) + rng.gen_range(0.0..0.001);
                if left >= 2 && rng.gen::<bool>() {
                    complex_roots.push(Complex64::new(root, rng.gen_range(0.5..3.0)));
                    left -= 2;
                } else {
                    real_roots.push(root);
                    left -= 1;
                }
            }
            LiftComponent::Factored {
                leading: rng.gen_range(0.5..4.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 },
                complex_roots,
                real_roots,
            }
        })
        .collect();
    RealDiscLift::new(components)
}

#[test]
fn criterion_6_maslov_oracles() {
    criterion(6, "Maslov oracle agreement", || {
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        let cases: Vec<(toric::fan::Fan, Vec<Vec<usize>>)> = vec![
            (
                builtin("cp:2").unwrap().fan,
                vec![vec![1, 1, 1], vec![2, 2, 2], vec![3, 3, 3]],
            ),
            (
                builtin("cp1xcp1").unwrap().fan,
                // a(1,0,1,0) + b(0,1,0,1)
                vec![vec![1, 0, 1, 0], vec![1, 2, 1, 2], vec![2, 1, 2, 1]],
            ),
            (
                builtin("blowup-cp2").unwrap().fan,
                // a(0,1,0,1) + b(1,1,1,0) with all entries nonnegative
                vec![vec![1, 2, 1, 1], vec![2, 3, 2, 1], vec![1, 1, 1, 0]],
            ),
        ];
        let mut total = 0;
        for (fan, degree_choices) in &cases {
            for degrees in degree_choices {
                for _ in 0..3 {
                    let lift = random_lift(&mut rng, degrees);
                    let zc = maslov_zero_count(fan, &lift).unwrap();
                    let gf = maslov_general(fan, &lift, None).unwrap();
                    let lambda = curve_class(fan, &lift).unwrap();
                    let c1 = chern_pairing(fan, &lambda).unwrap();
                    assert_eq!(zc.mu, gf.mu);
                    assert_eq!(zc.mu, c1);
                    total += 1;
                }
            }
        }
        assert!(total >= 20, "generated {total} random lifts");

        // I_0 nonempty: extension-independence on the blow-up
        let fan = builtin("blowup-cp2").unwrap().fan;
        let lift = reference_lift();
        let mut seen = 0;
        for _ in 0..8 {
            let x: i64 = if rng.gen::<bool>() { 1 } else { -1 };
            let y: i64 = rng.gen_range(-5..5);
            let ext = [iv(&[x, y])];
            let r = maslov_general(&fan, &lift, Some(&ext)).unwrap();
            assert_eq!(r.mu, BigInt::one(), "extension ({x},{y})");
            seen += 1;
        }
        assert!(seen >= 3);
    });
}

#[test]
fn criterion_7_ring_integrity() {
    criterion(7, "ring integrity", || {
        for id in ["cp:2", "cp:3", "cp1xcp1", "blowup-cp2"] {
            let fan = builtin(id).unwrap().fan;
            let ring = QuantumRing::new(&fan).unwrap();
            assert!(ring.basis.total_rank <= 16);
            let divisors: Vec<_> = (0..fan.num_rays()).map(|i| ring.divisor(i)).collect();
            for a in &divisors {
                for b in &divisors {
                    let ab = ring.product(a, b).unwrap();
                    assert_eq!(ab, ring.product(b, a).unwrap(), "{id}: commutativity");
                    // q = 0 limit against the classical product
                    let ca = ring.classical_limit(a);
                    let cb = ring.classical_limit(b);
                    assert_eq!(
                        ring.classical_limit(&ab),
                        ring.basis.intersection_product(&ca, &cb),
                        "{id}: classical limit"
                    );
                    for c in &divisors {
                        let ab_c = ring.product(&ab, c).unwrap();
                        let a_bc = ring.product(a, &ring.product(b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc, "{id}: associativity");
                    }
                }
            }
            let c_x = fan.minimal_chern().unwrap();
            for rel in quantum_relations(&fan).unwrap() {
                let coeff_sum: BigInt = rel.rhs_exponents.values().sum();
                assert_eq!(
                    BigInt::from(2 * rel.collection.len() as i64),
                    BigInt::from(2) * coeff_sum + BigInt::from(2) * &c_x * rel.q_power,
                    "{id}: homogeneity"
                );
            }
        }
    });
}

#[test]
fn criterion_8_geometry_certificates() {
    criterion(8, "geometry certificates", || {
        for id in ["cp:2", "cp1xcp1", "blowup-cp2"] {
            let input = builtin(id).unwrap();
            let polytope = input.polytope.unwrap();
            let report = polytope.delzant_check().unwrap();
            assert!(report.lattice && report.delzant, "{id}");
            let fan = polytope.normal_fan().unwrap();
            assert!(fan.validate().valid, "{id}: normal fan axioms");
            assert!(fan.is_complete().unwrap(), "{id}: normal fan complete");
        }
        let triangle = Polytope::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -2])],
            vec![
                num_rational::BigRational::one(),
                num_rational::BigRational::one(),
                num_rational::BigRational::one(),
            ],
        )
        .unwrap();
        let report = triangle.delzant_check().unwrap();
        assert!(!report.delzant);
        assert!(
            report.certificates.iter().any(|c| c.contains("vertex")),
            "certificate names a vertex: {:?}",
            report.certificates
        );
    });
}

#[test]
fn criterion_9_moment_map_numerics() {
    criterion(9, "moment map numerics", || {
        for id in ["cp:1", "cp:2", "cp:3", "cp1xcp1", "blowup-cp2"] {
            let input = builtin(id).unwrap();
            let polytope = input.polytope.unwrap();
            let embedding = polytope.lattice_points().unwrap();
            for vertex in polytope.vertices().unwrap() {
                let fixed = polytope.fixed_point_coordinates(&vertex);
                let image = embedding.moment_map(&embedding.embed(&fixed)).unwrap();
                for (x, p) in image.iter().zip(&vertex.point) {
                    let err = (x - p.to_f64().unwrap()).abs();
                    assert!(err < 1e-9, "{id}: vertex error {err}");
                }
            }
        }
    });
}
