//! Decision procedures for isoparametric hypersurfaces of `CH^n`.
//!
//! Every isoparametric hypersurface is congruent to an open part of one of
//! six families:
//!
//! * (i) a tube around a totally geodesic `CH^k`,
//! * (ii) a tube around a totally geodesic `RH^n`,
//! * (iii) a horosphere,
//! * (iv) the ruled minimal hypersurface `W^{2n−1}` or one of its equidistants,
//! * (v) a tube around `W_w` with `w^⊥` of constant Kähler angle in `(0, π/2]`,
//! * (vi) a tube around `W_w` with `w^⊥` of nonconstant Kähler angle.
//!
//! The first five are homogeneous and have constant principal curvatures;
//! the last never does.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DVector;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::indefinite_linalg::{JordanClassification, JordanType};
use crate::kahler_angle::{complement, kahler_profile, KahlerProfile, RealSubspace, ANGLE_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("curvature must be negative, got {0}")]
    InvalidCurvature(f64),
    #[error("eigenvalue {0} appears more than once")]
    DuplicateEigenvalue(f64),
    #[error("index {index} is out of range for {len} eigenvalues")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("x = p = {0} is the pole of the filter function")]
    PoleAtP(f64),
    #[error("p must be positive, got {0}")]
    NonPositiveP(f64),
    #[error("complex dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("codimension k = {k} is outside {min}..={max} for n = {n}")]
    InvalidCodimension { n: usize, k: usize, min: usize, max: usize },
    #[error("w must live in C^{expected}, got C^{got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("radius {0} is not admissible for this case")]
    InvalidRadius(f64),
    #[error("angle {0} is outside (0, pi/2]")]
    InvalidAngle(f64),
    #[error("constant Kähler angle {phi} with odd dimension {k} requires phi = pi/2")]
    ParityViolation { k: usize, phi: f64 },
}

fn check_c(c: f64) -> Result<f64, ClassifierError> {
    if c < 0.0 && c.is_finite() {
        Ok((-c).sqrt())
    } else {
        Err(ClassifierError::InvalidCurvature(c))
    }
}

/// `Σ_{j≠i} m_j (c + 4λ_iλ_j)/(λ_i − λ_j)`, which vanishes for an isoparametric
/// hypersurface at every real eigenvalue whose multiplicities agree.
pub fn cartan_residual(spectrum: &[(f64, usize)], i: usize, c: f64) -> Result<f64, ClassifierError> {
    check_c(c)?;
    let &(li, _) = spectrum.get(i).ok_or(ClassifierError::IndexOutOfRange {
        index: i,
        len: spectrum.len(),
    })?;
    let mut sum = 0.0;
    for (j, &(lj, mj)) in spectrum.iter().enumerate() {
        if j == i {
            continue;
        }
        if lj == li {
            return Err(ClassifierError::DuplicateEigenvalue(li));
        }
        sum += mj as f64 * (c + 4.0 * li * lj) / (li - lj);
    }
    Ok(sum)
}

/// `φ(x) = (c + 4px)/(p − x)` with the predicate `x > 0 ∧ |x + c/4x| < |p + c/4p|`,
/// which holds exactly when `φ(x) > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiFilter {
    pub value: f64,
    pub positive_iff: bool,
}

pub fn inside_cartan_phi(x: f64, p: f64, c: f64) -> Result<PhiFilter, ClassifierError> {
    check_c(c)?;
    if !(p > 0.0) {
        return Err(ClassifierError::NonPositiveP(p));
    }
    if x == p {
        return Err(ClassifierError::PoleAtP(p));
    }
    let value = (c + 4.0 * p * x) / (p - x);
    let positive_iff = x > 0.0 && (x + c / (4.0 * x)).abs() < (p + c / (4.0 * p)).abs();
    Ok(PhiFilter { value, positive_iff })
}

/// One named relation of a lifted normal form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub jtype: JordanType,
    pub checks: Vec<ConstraintCheck>,
    /// `true` iff every check passes.
    pub admissible: bool,
}

/// Relations a lifted shape operator must satisfy at each Jordan type.
///
/// Equalities pass when `|residual| ≤ tol·(1 + |c|)`; the strict inequality
/// `|λ| < √−c/2` passes when its residual `|λ| − √−c/2` is negative.
pub fn check_type_constraints(cls: &JordanClassification, c: f64, tol: f64) -> ConstraintReport {
    let s = (-c).sqrt();
    let eq_tol = tol * (1.0 + c.abs());
    let mut checks = Vec::new();
    let mut equality = |name: &str, residual: f64| {
        checks.push(ConstraintCheck {
            name: name.into(),
            residual,
            pass: residual.abs() <= eq_tol,
        });
    };
    let values: Vec<f64> = cls.real_eigs.iter().map(|e| e.value).collect();
    match cls.jtype {
        JordanType::I | JordanType::II | JordanType::III => {
            equality(
                "distinct_principal_curvatures_at_most_two",
                values.len().saturating_sub(2) as f64,
            );
            if let [l, m] = values[..] {
                equality("product_c_plus_4_lambda_mu", c + 4.0 * l * m);
            }
        }
        JordanType::IV => {
            let (a, b) = cls.complex_pair.unwrap_or((0.0, 0.0));
            equality(
                "real_principal_curvatures_one_or_two",
                (values.len() as f64 - 1.5).abs() - 0.5,
            );
            for &l in &values {
                equality(
                    "xiao_type_iv",
                    a * (4.0 * l * l - c) - l * (4.0 * a * a + 4.0 * b * b - c),
                );
            }
            equality("a2_b2_equality", 4.0 * a * a + 4.0 * b * b + c);
            if let [l, m] = values[..] {
                equality("product_c_plus_4_lambda_mu", c + 4.0 * l * m);
            }
        }
    }
    match cls.jtype {
        JordanType::I => {
            equality("two_principal_curvatures", values.len() as f64 - 2.0);
            let small = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
            let residual = small - s / 2.0;
            checks.push(ConstraintCheck {
                name: "timelike_curvature_inside".into(),
                residual,
                pass: residual < 0.0,
            });
        }
        JordanType::II => {
            equality("single_principal_curvature", values.len() as f64 - 1.0);
            let lambda = values.first().copied().unwrap_or(f64::NAN);
            equality("lambda_is_half_sqrt_minus_c", lambda.abs() - s / 2.0);
        }
        JordanType::III => {
            let lambda = cls.defective_eigenvalue().unwrap_or(f64::NAN);
            let residual = lambda.abs() - s / 2.0;
            checks.push(ConstraintCheck {
                name: "defective_curvature_inside".into(),
                residual,
                pass: residual < 0.0,
            });
        }
        JordanType::IV => {}
    }
    let admissible = checks.iter().all(|check| check.pass);
    ConstraintReport {
        jtype: cls.jtype,
        checks,
        admissible,
    }
}

/// The six cases of the classification, serialized by their roman numeral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    TubeChk,
    TubeRhn,
    Horosphere,
    LohnherrFamily,
    BerndtBrueckTube,
    WwTube,
}

impl Case {
    pub fn numeral(self) -> &'static str {
        match self {
            Case::TubeChk => "i",
            Case::TubeRhn => "ii",
            Case::Horosphere => "iii",
            Case::LohnherrFamily => "iv",
            Case::BerndtBrueckTube => "v",
            Case::WwTube => "vi",
        }
    }

    pub fn is_homogeneous(self) -> bool {
        self != Case::WwTube
    }
}

impl Serialize for Case {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.numeral())
    }
}

/// Families given by name rather than by a subspace `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFamily {
    TubeChk { k: usize },
    TubeRhn,
    Horosphere,
    Lohnherr,
    BerndtBrueck { k: usize, phi: f64 },
}

impl NamedFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            NamedFamily::TubeChk { .. } => "tube-chk",
            NamedFamily::TubeRhn => "tube-rhn",
            NamedFamily::Horosphere => "horosphere",
            NamedFamily::Lohnherr => "lohnherr",
            NamedFamily::BerndtBrueck { .. } => "berndt-brueck",
        }
    }
}

#[derive(Debug, Clone)]
pub enum ClassifyInput {
    Family {
        family: NamedFamily,
        n: usize,
        r: f64,
    },
    /// `w ⊂ C^{n−1}` a proper real subspace of `g_α`.
    Subspace {
        w: RealSubspace,
        n: usize,
        r: f64,
    },
}

/// Congruence invariant of the input: the Kähler profile of `w^⊥`, or a family name.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Invariant {
    Profile(KahlerProfile),
    Family(&'static str),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub case: Case,
    pub homogeneous: bool,
    pub constant_principal_curvatures: bool,
    pub invariant: Invariant,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

impl ClassificationReport {
    fn new(case: Case, invariant: Invariant, n: usize, k: Option<usize>, r: f64, phi: Option<f64>) -> Self {
        let homogeneous = case.is_homogeneous();
        Self {
            case,
            homogeneous,
            constant_principal_curvatures: homogeneous,
            invariant,
            n,
            k,
            r,
            phi,
        }
    }
}

fn check_radius(case: Case, r: f64) -> Result<(), ClassifierError> {
    let ok = if case == Case::LohnherrFamily {
        r >= 0.0
    } else {
        r > 0.0
    };
    if ok && r.is_finite() {
        Ok(())
    } else {
        Err(ClassifierError::InvalidRadius(r))
    }
}

fn constant_angle_case(
    n: usize,
    k: usize,
    phi: f64,
    r: f64,
    invariant: Invariant,
) -> Result<ClassificationReport, ClassifierError> {
    if !(phi > ANGLE_TOL && phi <= FRAC_PI_2 + ANGLE_TOL) {
        return Err(ClassifierError::InvalidAngle(phi));
    }
    let totally_real = (FRAC_PI_2 - phi).abs() <= ANGLE_TOL;
    if k % 2 == 1 && !totally_real {
        return Err(ClassifierError::ParityViolation { k, phi });
    }
    let case = if k == 1 {
        Case::LohnherrFamily
    } else {
        Case::BerndtBrueckTube
    };
    check_radius(case, r)?;
    Ok(ClassificationReport::new(case, invariant, n, Some(k), r, Some(phi)))
}

pub fn classify(input: &ClassifyInput, c: f64) -> Result<ClassificationReport, ClassifierError> {
    check_c(c)?;
    match input {
        &ClassifyInput::Family { family, n, r } => {
            if n < 2 {
                return Err(ClassifierError::InvalidDimension(n));
            }
            let max_k = 2 * n - 2;
            let tag = Invariant::Family(family.tag());
            match family {
                NamedFamily::TubeChk { k } => {
                    if k > n - 1 {
                        return Err(ClassifierError::InvalidCodimension {
                            n,
                            k,
                            min: 0,
                            max: n - 1,
                        });
                    }
                    check_radius(Case::TubeChk, r)?;
                    Ok(ClassificationReport::new(Case::TubeChk, tag, n, Some(k), r, None))
                }
                NamedFamily::TubeRhn => {
                    check_radius(Case::TubeRhn, r)?;
                    Ok(ClassificationReport::new(Case::TubeRhn, tag, n, None, r, None))
                }
                NamedFamily::Horosphere => {
                    check_radius(Case::Horosphere, r)?;
                    Ok(ClassificationReport::new(Case::Horosphere, tag, n, None, r, None))
                }
                NamedFamily::Lohnherr => {
                    let profile = Invariant::Profile(KahlerProfile::from_entries(vec![(FRAC_PI_2, 1)]));
                    constant_angle_case(n, 1, FRAC_PI_2, r, profile)
                }
                NamedFamily::BerndtBrueck { k, phi } => {
                    if !(2..=max_k).contains(&k) {
                        return Err(ClassifierError::InvalidCodimension {
                            n,
                            k,
                            min: 2,
                            max: max_k,
                        });
                    }
                    let profile = Invariant::Profile(KahlerProfile::from_entries(vec![(phi, k)]));
                    constant_angle_case(n, k, phi, r, profile)
                }
            }
        }
        ClassifyInput::Subspace { w, n, r } => {
            let (n, r) = (*n, *r);
            if n < 2 {
                return Err(ClassifierError::InvalidDimension(n));
            }
            if w.ambient_cdim() != n - 1 {
                return Err(ClassifierError::AmbientMismatch {
                    expected: n - 1,
                    got: w.ambient_cdim(),
                });
            }
            let max_k = 2 * n - 2;
            let k = max_k - w.dim();
            if k == 0 {
                return Err(ClassifierError::InvalidCodimension {
                    n,
                    k,
                    min: 1,
                    max: max_k,
                });
            }
            let profile = kahler_profile(&complement(w));
            let invariant = Invariant::Profile(profile.clone());
            match profile.entries() {
                [(phi, _)] if *phi <= ANGLE_TOL => {
                    // W_w is a totally geodesic CH^{n − k/2}.
                    check_radius(Case::TubeChk, r)?;
                    Ok(ClassificationReport::new(
                        Case::TubeChk,
                        invariant,
                        n,
                        Some(k),
                        r,
                        Some(0.0),
                    ))
                }
                [(phi, _)] => constant_angle_case(n, k, *phi, r, invariant),
                _ => {
                    check_radius(Case::WwTube, r)?;
                    Ok(ClassificationReport::new(Case::WwTube, invariant, n, Some(k), r, None))
                }
            }
        }
    }
}

/// A discrete shape of Kähler profiles of `k`-dimensional `w^⊥ ⊂ C^{n−1}`:
/// a complex block, blocks of pairwise distinct free angles in `(0, π/2)`,
/// and a totally real block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileStratum {
    /// Real dimension of the angle-zero block.
    pub complex_dim: usize,
    /// Multiplicities of the free-angle blocks, each even, nonincreasing.
    pub free_blocks: Vec<usize>,
    /// Real dimension of the angle-`π/2` block.
    pub totally_real_dim: usize,
}

impl ProfileStratum {
    pub fn dim(&self) -> usize {
        self.complex_dim + self.free_blocks.iter().sum::<usize>() + self.totally_real_dim
    }

    /// Complex dimension of `C w^⊥`; blocks of distinct angles are complex-orthogonal.
    pub fn complex_span(&self) -> usize {
        self.complex_dim / 2 + self.free_blocks.iter().sum::<usize>() + self.totally_real_dim
    }

    pub fn free_parameters(&self) -> usize {
        self.free_blocks.len()
    }

    /// The profile with the given free angles, one per free block.
    pub fn profile(&self, angles: &[f64]) -> KahlerProfile {
        assert_eq!(angles.len(), self.free_blocks.len());
        let mut entries: Vec<(f64, usize)> = angles.iter().copied().zip(self.free_blocks.iter().copied()).collect();
        entries.push((0.0, self.complex_dim));
        entries.push((FRAC_PI_2, self.totally_real_dim));
        KahlerProfile::from_entries(entries)
    }

    /// A subspace of `C^m` realizing this stratum with the given free angles.
    pub fn witness(&self, m: usize, angles: &[f64]) -> RealSubspace {
        assert_eq!(angles.len(), self.free_blocks.len());
        assert!(self.complex_span() <= m);
        let e = |i: usize| {
            let mut v = DVector::zeros(2 * m);
            v[2 * i] = 1.0;
            v
        };
        let ie = |i: usize| {
            let mut v = DVector::zeros(2 * m);
            v[2 * i + 1] = 1.0;
            v
        };
        let mut vectors = Vec::with_capacity(self.dim());
        let mut next = 0;
        for _ in 0..self.complex_dim / 2 {
            vectors.push(e(next));
            vectors.push(ie(next));
            next += 1;
        }
        for (&mult, &phi) in self.free_blocks.iter().zip(angles) {
            // span{e_p, cos φ ie_p + sin φ ie_{p+1}} has constant angle φ.
            for _ in 0..mult / 2 {
                vectors.push(e(next));
                vectors.push(ie(next) * phi.cos() + ie(next + 1) * phi.sin());
                next += 2;
            }
        }
        for _ in 0..self.totally_real_dim {
            vectors.push(e(next));
            next += 1;
        }
        RealSubspace::from_spanning(m, &vectors).expect("witness vectors are orthonormal")
    }
}

/// Partitions of `total` into parts of size at most `max`, nonincreasing.
fn partitions(total: usize, max: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All profile strata of `k`-dimensional subspaces of `C^{n−1}`, `k ≤ 2n − 3`.
///
/// A stratum with free blocks is an open family; its closure adds the strata
/// where a free angle reaches `0` or `π/2`.
pub fn enumerate_profiles(n: usize, k: usize) -> Result<Vec<ProfileStratum>, ClassifierError> {
    if n < 2 {
        return Err(ClassifierError::InvalidDimension(n));
    }
    let m = n - 1;
    if k > 2 * m - 1 {
        return Err(ClassifierError::InvalidCodimension {
            n,
            k,
            min: 0,
            max: 2 * m - 1,
        });
    }
    let mut out = Vec::new();
    for complex in 0..=k / 2 {
        for free_pairs in 0..=(k - 2 * complex) / 2 {
            let totally_real = k - 2 * complex - 2 * free_pairs;
            // A free block of dimension 2d spans 2d complex dimensions.
            if complex + 2 * free_pairs + totally_real > m {
                continue;
            }
            for parts in partitions(free_pairs, free_pairs) {
                out.push(ProfileStratum {
                    complex_dim: 2 * complex,
                    free_blocks: parts.iter().map(|d| 2 * d).collect(),
                    totally_real_dim: totally_real,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite_linalg::RealEigenvalue;
    use nalgebra::DMatrix;

    fn cls(jtype: JordanType, eigs: &[(f64, usize, usize)], pair: Option<(f64, f64)>) -> JordanClassification {
        JordanClassification {
            jtype,
            real_eigs: eigs
                .iter()
                .map(|&(value, alg_mult, geo_mult)| RealEigenvalue {
                    value,
                    alg_mult,
                    geo_mult,
                })
                .collect(),
            complex_pair: pair,
            epsilon: None,
            adapted_basis: DMatrix::zeros(0, 0),
            canonical_matrix: DMatrix::zeros(0, 0),
        }
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_residual(&[(0.7, 3)], 0, -4.0).unwrap(), 0.0);
        let (l, m) = (1f64.tanh(), 1.0 / 1f64.tanh());
        assert!(cartan_residual(&[(l, 2), (m, 3)], 0, -4.0).unwrap().abs() < 1e-15);
        assert!(cartan_residual(&[(l, 2), (m, 3)], 1, -4.0).unwrap().abs() < 1e-15);
        assert_eq!(cartan_residual(&[(0.5, 2), (1.0, 3)], 0, -4.0).unwrap(), 12.0);
        assert_eq!(
            cartan_residual(&[(0.5, 2), (0.5, 3)], 0, -4.0),
            Err(ClassifierError::DuplicateEigenvalue(0.5))
        );
    }

    #[test]
    fn phi_filter_examples() {
        let a = inside_cartan_phi(1.0, 2.0, -4.0).unwrap();
        assert_eq!(a.value, 4.0);
        assert!(a.positive_iff);
        let b = inside_cartan_phi(0.4, 2.0, -4.0).unwrap();
        assert!((b.value + 0.5).abs() < 1e-15);
        assert!(!b.positive_iff);
        let d = inside_cartan_phi(0.3, 1.0, -4.0).unwrap();
        assert!(d.value < 0.0 && !d.positive_iff);
        assert_eq!(inside_cartan_phi(2.0, 2.0, -4.0), Err(ClassifierError::PoleAtP(2.0)));
    }

    #[test]
    fn type_constraint_examples() {
        assert!(check_type_constraints(&cls(JordanType::II, &[(1.0, 6, 5)], None), -4.0, 1e-9).admissible);
        assert!(!check_type_constraints(&cls(JordanType::III, &[(1.2, 6, 4)], None), -4.0, 1e-9).admissible);
        assert!(check_type_constraints(&cls(JordanType::III, &[(0.5, 6, 4)], None), -4.0, 1e-9).admissible);
        // Tube around RH^2 of radius r at c = −4.
        let r: f64 = 0.6;
        let l = r.tanh();
        let a = 4.0 * -4.0 * l / (-4.0 - 4.0 * l * l) / 2.0;
        let b = (-a * a + 1.0).sqrt();
        let report = check_type_constraints(
            &cls(JordanType::IV, &[(l, 1, 1), (1.0 / l, 1, 1)], Some((a, b))),
            -4.0,
            1e-9,
        );
        assert!(report.admissible, "{report:?}");
    }

    #[test]
    fn stratum_counts() {
        let strata = enumerate_profiles(3, 3).unwrap();
        assert_eq!(strata.len(), 1);
        assert_eq!(strata[0].profile(&[]).ascending(), vec![(0.0, 2), (FRAC_PI_2, 1)]);
        // n = 2 admits only the totally real line.
        assert_eq!(enumerate_profiles(2, 0).unwrap().len(), 1);
        assert_eq!(
            enumerate_profiles(2, 1).unwrap(),
            vec![ProfileStratum {
                complex_dim: 0,
                free_blocks: vec![],
                totally_real_dim: 1
            }]
        );
        assert!(enumerate_profiles(2, 2).is_err());
        let free: Vec<_> = enumerate_profiles(3, 2)
            .unwrap()
            .into_iter()
            .filter(|s| s.free_parameters() > 0)
            .collect();
        assert_eq!(
            free,
            vec![ProfileStratum {
                complex_dim: 0,
                free_blocks: vec![2],
                totally_real_dim: 0
            }]
        );
    }
}
