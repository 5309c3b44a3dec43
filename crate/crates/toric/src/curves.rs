//! Real holomorphic discs presented by polynomial lifts in homogeneous
//! coordinates: each nonzero component is a real polynomial in factored
//! form, complex roots stored once per conjugate pair with positive
//! imaginary part. Maslov indices depend only on root counts and lattice
//! data, so they are exact even though roots are floats.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

use crate::fan::{Fan, FanError};
use crate::homology::{self, HomologyError};
use crate::lattice::IntVector;
use crate::linalg;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("lift has {got} components but the fan has {want} rays")]
    WrongLength { got: usize, want: usize },
    #[error("component {index}: {reason}")]
    InvalidComponent { index: usize, reason: String },
    #[error("point at z = {z:?} has index set {indices:?} outside the toric variety")]
    OutsideU { z: Complex64, indices: Vec<usize> },
    #[error("zero components {indices:?} do not span a cone of the fan")]
    NotACone { indices: Vec<usize> },
    #[error("point is not in the chart of this cone")]
    NotInChart,
    #[error("Mobius parameters are degenerate: ad - bc = 0")]
    DegenerateMobius,
    #[error("the disc meets a divisor at infinity: I_inf = {indices:?}; reparametrize first")]
    InfinityConditionFails { indices: Vec<usize> },
    #[error("zero-count formula needs I_0 = {{}} and trivial infinity stratum: {reason}")]
    NotApplicable { reason: String },
    #[error("extension does not complete the cone generators to a lattice basis")]
    BadExtension,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("homology data unavailable: {0}")]
    Homology(String),
}

impl From<HomologyError> for CurveError {
    fn from(e: HomologyError) -> Self {
        CurveError::Homology(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiftComponent {
    Zero,
    Factored {
        leading: f64,
        /// one entry per conjugate pair, imaginary part > 0
        complex_roots: Vec<Complex64>,
        real_roots: Vec<f64>,
    },
}

impl LiftComponent {
    pub fn constant(a: f64) -> Self {
        LiftComponent::Factored {
            leading: a,
            complex_roots: Vec::new(),
            real_roots: Vec::new(),
        }
    }

    pub fn monic(complex_roots: Vec<Complex64>, real_roots: Vec<f64>) -> Self {
        LiftComponent::Factored {
            leading: 1.0,
            complex_roots,
            real_roots,
        }
    }

    pub fn alpha(&self) -> usize {
        match self {
            LiftComponent::Zero => 0,
            LiftComponent::Factored { complex_roots, .. } => complex_roots.len(),
        }
    }

    pub fn beta(&self) -> usize {
        match self {
            LiftComponent::Zero => 0,
            LiftComponent::Factored { real_roots, .. } => real_roots.len(),
        }
    }

    /// 2 alpha + beta, the polynomial degree.
    pub fn degree(&self) -> usize {
        2 * self.alpha() + self.beta()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            LiftComponent::Zero => Complex64::new(0.0, 0.0),
            LiftComponent::Factored {
                leading,
                complex_roots,
                real_roots,
            } => {
                let mut w = Complex64::new(*leading, 0.0);
                for p in complex_roots {
                    w *= (z - p) * (z - p.conj());
                }
                for q in real_roots {
                    w *= z - Complex64::new(*q, 0.0);
                }
                w
            }
        }
    }

    fn has_root(&self, z: Complex64) -> bool {
        match self {
            LiftComponent::Zero => false,
            LiftComponent::Factored {
                complex_roots,
                real_roots,
                ..
            } => {
                complex_roots
                    .iter()
                    .any(|p| (p - z).norm() < TOL || (p.conj() - z).norm() < TOL)
                    || real_roots
                        .iter()
                        .any(|q| (Complex64::new(*q, 0.0) - z).norm() < TOL)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealDiscLift {
    pub components: Vec<LiftComponent>,
}

impl RealDiscLift {
    pub fn new(components: Vec<LiftComponent>) -> Self {
        RealDiscLift { components }
    }

    /// Constant lift (1, ..., 1).
    pub fn constant(n: usize) -> Self {
        RealDiscLift {
            components: (0..n).map(|_| LiftComponent::constant(1.0)).collect(),
        }
    }

    pub fn i0(&self) -> BTreeSet<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, LiftComponent::Zero))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// All distinct stored root values (upper half-plane representatives
    /// and real roots) across nonzero components.
    fn root_locations(&self) -> Vec<Complex64> {
        let mut locations: Vec<Complex64> = Vec::new();
        for c in &self.components {
            if let LiftComponent::Factored {
                complex_roots,
                real_roots,
                ..
            } = c
            {
                for p in complex_roots {
                    locations.push(*p);
                }
                for q in real_roots {
                    locations.push(Complex64::new(*q, 0.0));
                }
            }
        }
        let mut distinct: Vec<Complex64> = Vec::new();
        for z in locations {
            if !distinct.iter().any(|w| (w - z).norm() < TOL) {
                distinct.push(z);
            }
        }
        distinct
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaslovMethod {
    ZeroCount,
    GeneralFormula,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaslovResult {
    pub mu: BigInt,
    pub method: MaslovMethod,
    pub i0: BTreeSet<usize>,
    /// basis extension used by the general formula, if any was needed
    pub extension: Option<Vec<IntVector>>,
}

/// Membership of the lift's image in the toric variety: the zero set
/// must span a cone, and at every stored root the combined vanishing set
/// must still span a cone.
pub fn validate_lift(fan: &Fan, lift: &RealDiscLift) -> Result<(), CurveError> {
    if lift.components.len() != fan.num_rays() {
        return Err(CurveError::WrongLength {
            got: lift.components.len(),
            want: fan.num_rays(),
        });
    }
    for (i, c) in lift.components.iter().enumerate() {
        if let LiftComponent::Factored {
            leading,
            complex_roots,
            ..
        } = c
        {
            if *leading == 0.0 || !leading.is_finite() {
                return Err(CurveError::InvalidComponent {
                    index: i,
                    reason: "leading coefficient must be a nonzero real".into(),
                });
            }
            if let Some(p) = complex_roots.iter().find(|p| p.im <= 0.0) {
                return Err(CurveError::InvalidComponent {
                    index: i,
                    reason: format!("complex root {p} must have positive imaginary part"),
                });
            }
        }
    }
    let i0 = lift.i0();
    if !fan.is_cone(&i0) {
        return Err(CurveError::NotACone {
            indices: i0.into_iter().collect(),
        });
    }
    for z in lift.root_locations() {
        let mut indices = i0.clone();
        for (i, c) in lift.components.iter().enumerate() {
            if c.has_root(z) {
                indices.insert(i);
            }
        }
        if !fan.is_cone(&indices) {
            return Err(CurveError::OutsideU {
                z,
                indices: indices.into_iter().collect(),
            });
        }
    }
    Ok(())
}

/// Affine chart coordinates of a homogeneous point with respect to a
/// maximal cone: the j-th coordinate is prod_i z_i^{<nu_j, v_i>} over the
/// dual basis nu of the cone's generators.
pub fn chart_coords(
    fan: &Fan,
    cone: &BTreeSet<usize>,
    point: &[Complex64],
) -> Result<Vec<Complex64>, CurveError> {
    if point.len() != fan.num_rays() {
        return Err(CurveError::WrongLength {
            got: point.len(),
            want: fan.num_rays(),
        });
    }
    if !fan.is_cone(cone) || cone.len() != fan.dim {
        return Err(CurveError::NotACone {
            indices: cone.iter().copied().collect(),
        });
    }
    for (i, z) in point.iter().enumerate() {
        if !cone.contains(&i) && z.norm() == 0.0 {
            return Err(CurveError::NotInChart);
        }
    }
    let gens: Vec<IntVector> = cone.iter().map(|&i| fan.rays[i].vector.clone()).collect();
    let dual = crate::lattice::dual_basis(&gens).map_err(FanError::from)?;
    let mut coords = Vec::with_capacity(fan.dim);
    for nu in &dual.dual {
        let mut value = Complex64::new(1.0, 0.0);
        for (i, z) in point.iter().enumerate() {
            let e = nu
                .dot(&fan.rays[i].vector)
                .to_i32()
                .expect("small exponent");
            if e != 0 {
                value *= z.powi(e);
            }
        }
        coords.push(value);
    }
    Ok(coords)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, CurveError> {
        if a * d - b * c == 0.0 {
            return Err(CurveError::DegenerateMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }
}

/// Composite of the infinity analysis: the full stratum index set, the
/// cone sigma-bar at infinity with its positive multiplicities, and
/// whether the degree vector m-bar vanished in the quotient lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct InfinityData {
    pub i_infinity: BTreeSet<usize>,
    pub sigma_bar: BTreeMap<usize, BigInt>,
    pub m_bar_zero: bool,
}

/// The divisors met by the disc at infinity, found combinatorially: with
/// m-bar the image of sum deg(w_j) v_j in Z^n / span{v_i : i in I_0},
/// the stratum is I_0 together with the minimal star-fan cone containing
/// -m-bar.
pub fn infinity_data(fan: &Fan, lift: &RealDiscLift) -> Result<InfinityData, CurveError> {
    validate_lift(fan, lift)?;
    let i0 = lift.i0();
    let n = fan.dim;
    let k = i0.len();

    // quotient coordinates: pair with the duals of a basis completion
    let projection: Vec<IntVector> = if k == 0 {
        (0..n).map(|j| IntVector::unit(n, j)).collect()
    } else {
        let gens: Vec<IntVector> = i0.iter().map(|&i| fan.rays[i].vector.clone()).collect();
        let completion =
            crate::lattice::extend_to_basis(&gens).map_err(FanError::from)?;
        let mut full = gens;
        full.extend(completion);
        let dual = crate::lattice::dual_basis(&full).map_err(FanError::from)?;
        dual.dual[k..].to_vec()
    };
    let project = |v: &IntVector| -> Vec<BigInt> {
        projection.iter().map(|eps| eps.dot(v)).collect()
    };

    let mut m_bar = vec![BigInt::zero(); n - k];
    for (j, c) in lift.components.iter().enumerate() {
        if i0.contains(&j) {
            continue;
        }
        let deg = BigInt::from(c.degree());
        for (acc, coord) in m_bar.iter_mut().zip(project(&fan.rays[j].vector)) {
            *acc += coord * &deg;
        }
    }
    if m_bar.iter().all(|c| c.is_zero()) {
        return Ok(InfinityData {
            i_infinity: i0,
            sigma_bar: BTreeMap::new(),
            m_bar_zero: true,
        });
    }
    let target: Vec<BigRational> = m_bar
        .iter()
        .map(|c| BigRational::from_integer(-c.clone()))
        .collect();

    // star fan: cones through sigma_{I_0}; project the complementary
    // generators and solve for the coordinates of -m_bar
    for cone in &fan.max_cones {
        if !i0.is_subset(&cone.ray_indices) {
            continue;
        }
        let others: Vec<usize> = cone.ray_indices.difference(&i0).copied().collect();
        let a: Vec<Vec<BigRational>> = (0..n - k)
            .map(|row| {
                others
                    .iter()
                    .map(|&j| {
                        BigRational::from_integer(project(&fan.rays[j].vector)[row].clone())
                    })
                    .collect()
            })
            .collect();
        if let Some(x) = linalg::solve(&a, &target) {
            if x.iter().all(|c| !c.is_negative()) {
                let mut sigma_bar = BTreeMap::new();
                let mut i_infinity = i0.clone();
                for (&j, c) in others.iter().zip(&x) {
                    if c.is_positive() {
                        assert!(c.is_integer(), "smooth cone has integral coordinates");
                        sigma_bar.insert(j, c.to_integer());
                        i_infinity.insert(j);
                    }
                }
                return Ok(InfinityData {
                    i_infinity,
                    sigma_bar,
                    m_bar_zero: false,
                });
            }
        }
    }
    unreachable!("the star fan of a complete fan is complete")
}

pub fn infinity_stratum(fan: &Fan, lift: &RealDiscLift) -> Result<BTreeSet<usize>, CurveError> {
    Ok(infinity_data(fan, lift)?.i_infinity)
}

/// Curve class of the disc's double in Z^N: lambda_j = deg(w_j) plus the
/// multiplicity at infinity for j outside I_0, and the divisor-expansion
/// balance for i in I_0. Satisfies pi(lambda) = 0.
pub fn curve_class(fan: &Fan, lift: &RealDiscLift) -> Result<IntVector, CurveError> {
    let data = infinity_data(fan, lift)?;
    let i0 = lift.i0();
    let mut lambda = vec![BigInt::zero(); fan.num_rays()];
    for (j, c) in lift.components.iter().enumerate() {
        if !i0.contains(&j) {
            lambda[j] = BigInt::from(c.degree());
        }
    }
    for (&j, mult) in &data.sigma_bar {
        lambda[j] += mult;
    }
    if !i0.is_empty() {
        let expansion = homology::divisor_expansion(fan, &i0, None)?;
        for (i, pairs) in expansion {
            let mut acc = BigInt::zero();
            for (j, coeff) in pairs {
                acc += coeff * &lambda[j];
            }
            lambda[i] = -acc;
        }
    }
    Ok(IntVector(lambda))
}

/// Pulls the lift back along the Mobius map and clears denominators with
/// the curve-class exponents, producing a lift of the same disc with the
/// infinity behavior absorbed into new roots at -d/c.
pub fn reparametrize(
    fan: &Fan,
    lift: &RealDiscLift,
    mobius: &Mobius,
) -> Result<RealDiscLift, CurveError> {
    if mobius.a * mobius.d - mobius.b * mobius.c == 0.0 {
        return Err(CurveError::DegenerateMobius);
    }
    let lambda = curve_class(fan, lift)?;
    let (a, b, c, d) = (mobius.a, mobius.b, mobius.c, mobius.d);
    let mut components = Vec::with_capacity(lift.components.len());
    for (i, comp) in lift.components.iter().enumerate() {
        let LiftComponent::Factored {
            leading,
            complex_roots,
            real_roots,
        } = comp
        else {
            components.push(LiftComponent::Zero);
            continue;
        };
        let mut new_leading = *leading;
        let mut new_complex = Vec::new();
        let mut new_real = Vec::new();
        let mut kept_degree = 0usize;
        for p in complex_roots {
            // a - cp is never zero for nonreal p with real a, c
            let denom = a - c * p;
            let image = (d * p - b) / denom;
            new_leading *= denom.norm_sqr();
            new_complex.push(if image.im > 0.0 { image } else { image.conj() });
            kept_degree += 2;
        }
        for q in real_roots {
            let denom = a - c * q;
            if denom == 0.0 {
                // the factor degenerates to the constant b - dq
                new_leading *= b - d * q;
            } else {
                new_leading *= denom;
                new_real.push((d * q - b) / denom);
                kept_degree += 1;
            }
        }
        let extra = lambda.0[i].to_i64().expect("small exponent") - kept_degree as i64;
        debug_assert!(extra >= 0, "infinity multiplicities are nonnegative");
        if extra > 0 {
            // (cz + d)^extra contributes roots at -d/c
            assert!(c != 0.0, "affine maps cannot raise the degree");
            for _ in 0..extra {
                new_leading *= c;
                new_real.push(-d / c);
            }
        }
        components.push(LiftComponent::Factored {
            leading: new_leading,
            complex_roots: new_complex,
            real_roots: new_real,
        });
    }
    let result = RealDiscLift::new(components);
    validate_lift(fan, &result)?;
    Ok(result)
}

/// Maslov index when the lift misses all divisors at infinity and has no
/// zero components: the total zero count 2 alpha + beta.
pub fn maslov_zero_count(fan: &Fan, lift: &RealDiscLift) -> Result<MaslovResult, CurveError> {
    validate_lift(fan, lift)?;
    let i0 = lift.i0();
    if !i0.is_empty() {
        return Err(CurveError::NotApplicable {
            reason: format!(
                "components {:?} vanish identically; use the general formula",
                i0.iter().collect::<Vec<_>>()
            ),
        });
    }
    let data = infinity_data(fan, lift)?;
    if !data.m_bar_zero {
        return Err(CurveError::NotApplicable {
            reason: format!(
                "the disc meets divisors {:?} at infinity; reparametrize first",
                data.i_infinity.iter().collect::<Vec<_>>()
            ),
        });
    }
    let mu: usize = lift.components.iter().map(|c| c.degree()).sum();
    Ok(MaslovResult {
        mu: BigInt::from(mu),
        method: MaslovMethod::ZeroCount,
        i0,
        extension: None,
    })
}

/// Maslov index by the divisor-expansion formula
/// mu = sum_{j not in I_0} (1 - sum_{i in I_0} <eps_i, v_j>) (2 alpha_j + beta_j),
/// valid whenever the infinity stratum reduces to I_0.
pub fn maslov_general(
    fan: &Fan,
    lift: &RealDiscLift,
    extension: Option<&[IntVector]>,
) -> Result<MaslovResult, CurveError> {
    validate_lift(fan, lift)?;
    let data = infinity_data(fan, lift)?;
    if !data.m_bar_zero {
        return Err(CurveError::InfinityConditionFails {
            indices: data.i_infinity.iter().copied().collect(),
        });
    }
    let i0 = lift.i0();
    if let Some(ext) = extension {
        let gens: Vec<IntVector> = i0.iter().map(|&i| fan.rays[i].vector.clone()).collect();
        let mut full = gens;
        full.extend(ext.iter().cloned());
        let m = crate::lattice::IntMatrix::new(full.clone());
        if full.len() != fan.dim
            || m.det().abs() != BigInt::from(1)
        {
            return Err(CurveError::BadExtension);
        }
    }
    let expansion = homology::divisor_expansion(fan, &i0, extension)?;
    let mut pairing_sum: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (_, pairs) in &expansion {
        for (j, coeff) in pairs {
            *pairing_sum.entry(*j).or_default() += coeff;
        }
    }
    let mut mu = BigInt::zero();
    for (j, c) in lift.components.iter().enumerate() {
        if i0.contains(&j) {
            continue;
        }
        let weight = BigInt::from(1) - pairing_sum.get(&j).cloned().unwrap_or_default();
        mu += weight * BigInt::from(c.degree());
    }
    Ok(MaslovResult {
        mu,
        method: MaslovMethod::GeneralFormula,
        i0,
        extension: extension.map(|e| e.to_vec()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub samples: usize,
    pub max_deviation: f64,
    pub symmetric: bool,
    pub c1_of_double: BigInt,
    pub mu: BigInt,
    pub chern_matches_maslov: bool,
}

/// Checks the two halves of the doubling picture: numerical Schwarz
/// symmetry of the projected map, and c1 of the double against the
/// Maslov index.
pub fn verify_double_symmetry(
    fan: &Fan,
    lift: &RealDiscLift,
    samples: usize,
) -> Result<SymmetryReport, CurveError> {
    validate_lift(fan, lift)?;
    let i0 = lift.i0();
    let cone = fan
        .max_cones
        .iter()
        .find(|c| i0.is_subset(&c.ray_indices))
        .expect("I_0 spans a cone, so some maximal cone contains it")
        .ray_indices
        .clone();

    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut max_deviation: f64 = 0.0;
    let mut used = 0;
    while used < samples {
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
        let at_z = lift.eval(z);
        let at_conj = lift.eval(z.conj());
        let coords_z = match chart_coords(fan, &cone, &at_z) {
            Ok(v) => v,
            Err(CurveError::NotInChart) => continue,
            Err(e) => return Err(e),
        };
        let coords_conj = match chart_coords(fan, &cone, &at_conj) {
            Ok(v) => v,
            Err(CurveError::NotInChart) => continue,
            Err(e) => return Err(e),
        };
        for (u, v) in coords_z.iter().zip(&coords_conj) {
            max_deviation = max_deviation.max((u.conj() - v).norm());
        }
        used += 1;
    }

    let lambda = curve_class(fan, lift)?;
    let c1 = homology::chern_pairing(fan, &lambda)?;
    let data = infinity_data(fan, lift)?;
    let mu = if data.m_bar_zero {
        maslov_general(fan, lift, None)?.mu
    } else {
        // the index of the double is still c1; report it as mu
        c1.clone()
    };
    Ok(SymmetryReport {
        samples: used,
        max_deviation,
        symmetric: max_deviation < TOL,
        c1_of_double: c1.clone(),
        mu: mu.clone(),
        chern_matches_maslov: c1 == mu,
    })
}

/// mu mod 2 equals the beta-weighted sum; exposed for property checks.
pub fn maslov_parity(result: &MaslovResult, lift: &RealDiscLift) -> bool {
    let beta_sum: usize = lift
        .components
        .iter()
        .enumerate()
        .filter(|(i, _)| !result.i0.contains(i))
        .map(|(_, c)| c.beta())
        .sum();
    result.mu.mod_floor(&BigInt::from(2))
        == BigInt::from(beta_sum).mod_floor(&BigInt::from(2))
}
