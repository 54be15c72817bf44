//! The anti-De Sitter space `H₁^{2n+1}` over `CH^n` and the lift of shape operators.
//!
//! A real hypersurface `M ⊂ CH^n` lifts through the Hopf map to a Lorentzian
//! hypersurface `M̃`. In a principal frame `X_1, …, X_{2n−1}` of `M` completed by
//! the unit timelike vertical vector `V`, the lifted shape operator is
//!
//! ```text
//! ⎡ λ_1            −b_1 s/2       ⎤
//! ⎢      ⋱           ⋮            ⎥
//! ⎢         λ_{2n−1} −b_{2n−1} s/2 ⎥
//! ⎣ b_1 s/2  ⋯  b_{2n−1} s/2   0   ⎦
//! ```
//!
//! with `s = √−c` and `b_i = ⟨Jξ, X_i⟩`. Its Jordan type determines the
//! downstairs spectrum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::check_type_constraints;
use crate::indefinite_linalg::{
    JordanClassification, JordanType, LinalgError, LorentzForm, SelfAdjointOperator, SELF_ADJOINT_TOL,
};
use crate::numeric::sorted_symmetric_eigen;
use crate::tube_geometry::{ShapeAtPoint, TubeSpectrum, SPECTRUM_TOL};

/// Tolerance on `‖b‖ = 1` and on the quadric equation of `H₁^{2n+1}`.
pub const NORM_TOL: f64 = 1e-10;
/// Relative tolerance for the Type I–IV relations checked by [`project_spectrum`].
pub const PROJECTION_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LiftError {
    #[error("curvature must be negative, got {0}")]
    InvalidCurvature(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is off the quadric <z,z> = -r^2 (residual {0:.3e})")]
    NotOnQuadric(f64),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("the Hopf fibration needs radius^2 = -4/c")]
    RadiusMismatch,
    #[error("b must be a unit vector, got norm {0}")]
    InvalidB(f64),
    #[error("spectrum has no Hopf principal curvature")]
    NotHopf,
    #[error("not an isoparametric lift: {0}")]
    ConstraintViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_c(c: f64) -> Result<f64, LiftError> {
    if c < 0.0 && c.is_finite() {
        Ok((-c).sqrt())
    } else {
        Err(LiftError::InvalidCurvature(c))
    }
}

/// `⟨z, w⟩ = Re(−z₀w̄₀ + Σ_k z_k w̄_k)` on `C^{n+1}`.
pub fn ads_inner(z: &[Complex64], w: &[Complex64]) -> Result<f64, LiftError> {
    if z.len() != w.len() {
        return Err(LiftError::DimensionMismatch {
            expected: z.len(),
            got: w.len(),
        });
    }
    if z.is_empty() {
        return Ok(0.0);
    }
    let tail: f64 = z[1..].iter().zip(&w[1..]).map(|(a, b)| (a * b.conj()).re).sum();
    Ok(tail - (z[0] * w[0].conj()).re)
}

/// A point of `H₁^{2n+1}(r) = {z : ⟨z, z⟩ = −r²}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdSPoint {
    z: Vec<Complex64>,
    radius: f64,
}

impl AdSPoint {
    pub fn new(z: Vec<Complex64>, radius: f64) -> Result<Self, LiftError> {
        if !(radius > 0.0) {
            return Err(LiftError::InvalidRadius(radius));
        }
        let residual = ads_inner(&z, &z)? + radius * radius;
        if residual.abs() > NORM_TOL * radius * radius.max(1.0) {
            return Err(LiftError::NotOnQuadric(residual));
        }
        Ok(Self { z, radius })
    }

    /// `(r, 0, …, 0)` on the quadric whose Hopf quotient has curvature `c`.
    pub fn base(n: usize, c: f64) -> Result<Self, LiftError> {
        let radius = 2.0 / check_c(c)?;
        let mut z = vec![Complex64::new(0.0, 0.0); n + 1];
        z[0] = Complex64::new(radius, 0.0);
        Self::new(z, radius)
    }

    /// Lift of the point `x` of the unit ball model of `CH^n`.
    pub fn from_ball(x: &[Complex64], c: f64) -> Result<Self, LiftError> {
        let radius = 2.0 / check_c(c)?;
        let norm2: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        if !(norm2 < 1.0) {
            return Err(LiftError::NotOnQuadric(norm2 - 1.0));
        }
        let scale = radius / (1.0 - norm2).sqrt();
        let z = std::iter::once(Complex64::new(scale, 0.0))
            .chain(x.iter().map(|v| v * scale))
            .collect();
        Self::new(z, radius)
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `V_q = i √−c q / 2`, the unit timelike generator of the `S¹` fibres.
    pub fn vertical_field(&self, c: f64) -> Result<Vec<Complex64>, LiftError> {
        let s = check_c(c)?;
        if (self.radius * self.radius * s * s - 4.0).abs() > NORM_TOL * 4.0 {
            return Err(LiftError::RadiusMismatch);
        }
        Ok(self.z.iter().map(|q| Complex64::new(0.0, s / 2.0) * q).collect())
    }
}

/// Downstairs principal curvatures with the Hopf coefficients `b_i = ⟨Jξ, X_i⟩`.
///
/// `values` are the unmerged curvatures the lift is built from; `spectrum_down`
/// groups them for reporting. `b` is indexed like `values`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftedShapeData {
    pub spectrum_down: TubeSpectrum,
    pub values: Vec<f64>,
    pub b: Vec<f64>,
    pub c: f64,
}

impl LiftedShapeData {
    pub fn new(spectrum_down: TubeSpectrum, b: Vec<f64>, c: f64) -> Result<Self, LiftError> {
        let values = spectrum_down.expanded();
        Self::with_values(spectrum_down, values, b, c)
    }

    fn with_values(spectrum_down: TubeSpectrum, values: Vec<f64>, b: Vec<f64>, c: f64) -> Result<Self, LiftError> {
        check_c(c)?;
        if b.len() != values.len() {
            return Err(LiftError::DimensionMismatch {
                expected: values.len(),
                got: b.len(),
            });
        }
        let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(LiftError::InvalidB(norm));
        }
        Ok(Self {
            spectrum_down,
            values,
            b,
            c,
        })
    }

    /// `b` is the unit vector on a principal direction of the Hopf curvature.
    pub fn hopf(spectrum_down: TubeSpectrum, c: f64) -> Result<Self, LiftError> {
        let hopf = spectrum_down.hopf_value.ok_or(LiftError::NotHopf)?;
        let values = spectrum_down.expanded();
        let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let index = values
            .iter()
            .rposition(|v| (v - hopf).abs() <= SPECTRUM_TOL * scale)
            .ok_or(LiftError::NotHopf)?;
        let mut b = vec![0.0; values.len()];
        b[index] = 1.0;
        Self::new(spectrum_down, b, c)
    }

    /// Expands the Hopf vector of a numerically assembled shape operator in its eigenbasis.
    pub fn from_shape(shape: &ShapeAtPoint, c: f64) -> Result<Self, LiftError> {
        let (values, vectors) = sorted_symmetric_eigen(&shape.matrix);
        let hopf = &shape.hopf_vector / shape.hopf_vector.norm();
        let b: Vec<f64> = (0..values.len()).map(|i| vectors.column(i).dot(&hopf)).collect();
        // Nearly equal curvatures stay apart: averaging them moves the lift off
        // its normal form when their Hopf components differ.
        let spectrum = TubeSpectrum::from_values(values.clone(), None);
        Self::with_values(spectrum, values, b, c)
    }

    pub fn n(&self) -> usize {
        self.b.len().div_ceil(2)
    }
}

/// The lifted shape operator, self-adjoint for `diag(1, …, 1, −1)`.
pub fn lift_shape_operator(data: &LiftedShapeData) -> Result<SelfAdjointOperator, LiftError> {
    let s = check_c(data.c)?;
    let values = &data.values;
    let m = values.len();
    if data.b.len() != m {
        return Err(LiftError::DimensionMismatch {
            expected: m,
            got: data.b.len(),
        });
    }
    let norm = data.b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(LiftError::InvalidB(norm));
    }
    let mut a = DMatrix::zeros(m + 1, m + 1);
    for (i, (&value, &bi)) in values.iter().zip(&data.b).enumerate() {
        a[(i, i)] = value;
        a[(i, m)] = -bi * s / 2.0;
        a[(m, i)] = bi * s / 2.0;
    }
    let form = LorentzForm::last_timelike(m + 1);
    Ok(SelfAdjointOperator::new(form, a, SELF_ADJOINT_TOL)?)
}

/// Downstairs data recovered from a Jordan normal form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Projection {
    /// Hopf points: the full spectrum, with the Hopf curvature marked.
    Spectrum(TubeSpectrum),
    /// Type III points lie on a tube of this radius around some `W_w`; the
    /// spectrum there depends on the Kähler angle of the normal.
    TubeAroundW { lambda: f64, radius: f64 },
}

impl Projection {
    pub fn spectrum(&self) -> Option<&TubeSpectrum> {
        match self {
            Projection::Spectrum(s) => Some(s),
            Projection::TubeAroundW { .. } => None,
        }
    }
}

fn repeat(value: f64, mult: usize) -> impl Iterator<Item = f64> {
    std::iter::repeat_n(value, mult)
}

/// Downstairs principal curvatures from the lifted normal form.
pub fn project_spectrum(cls: &JordanClassification, c: f64) -> Result<Projection, LiftError> {
    let s = check_c(c)?;
    let report = check_type_constraints(cls, c, PROJECTION_TOL);
    if let Some(failed) = report.checks.iter().find(|check| !check.pass) {
        return Err(LiftError::ConstraintViolation(format!(
            "{} (residual {:.3e})",
            failed.name, failed.residual
        )));
    }
    let eigs = &cls.real_eigs;
    match cls.jtype {
        JordanType::I => {
            // The timelike eigenvalue is the one with |λ| < s/2; V splits across
            // both eigenspaces, so each loses one dimension downstairs.
            let (small, large) = if eigs[0].value.abs() < eigs[1].value.abs() {
                (eigs[0], eigs[1])
            } else {
                (eigs[1], eigs[0])
            };
            let hopf = small.value + large.value;
            let values = repeat(small.value, small.alg_mult - 1)
                .chain(repeat(large.value, large.alg_mult - 1))
                .chain(std::iter::once(hopf))
                .collect();
            Ok(Projection::Spectrum(TubeSpectrum::from_values(values, Some(hopf))))
        }
        JordanType::II => {
            let lambda = eigs[0].value;
            let values = repeat(lambda, eigs[0].alg_mult - 2)
                .chain(std::iter::once(2.0 * lambda))
                .collect();
            Ok(Projection::Spectrum(TubeSpectrum::from_values(
                values,
                Some(2.0 * lambda),
            )))
        }
        JordanType::III => {
            let lambda = cls.defective_eigenvalue().expect("type III has a defective eigenvalue");
            let radius = 2.0 / s * (2.0 * lambda.abs() / s).atanh();
            Ok(Projection::TubeAroundW { lambda, radius })
        }
        JordanType::IV => {
            let (a, _) = cls.complex_pair.expect("type IV has a complex pair");
            let values = eigs
                .iter()
                .flat_map(|e| repeat(e.value, e.alg_mult))
                .chain(std::iter::once(2.0 * a))
                .collect();
            Ok(Projection::Spectrum(TubeSpectrum::from_values(values, Some(2.0 * a))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite_linalg::{classify_jordan, RANK_TOL};
    use crate::tube_geometry::{standard_spectrum, HopfFamily};

    #[test]
    fn inner_product_examples() {
        let r = 1.7;
        let z = vec![Complex64::new(r, 0.0), Complex64::new(0.0, 0.0)];
        assert_eq!(ads_inner(&z, &z).unwrap(), -r * r);
        let iz: Vec<Complex64> = z.iter().map(|v| v * Complex64::i()).collect();
        assert_eq!(ads_inner(&z, &iz).unwrap(), 0.0);
        assert!(ads_inner(&z, &z[..1]).is_err());
    }

    #[test]
    fn vertical_field_is_unit_timelike() {
        for c in [-4.0, -1.0, -0.3] {
            let x = [Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.5)];
            let q = AdSPoint::from_ball(&x, c).unwrap();
            let v = q.vertical_field(c).unwrap();
            assert!((ads_inner(&v, &v).unwrap() + 1.0).abs() < 1e-12);
            assert!(ads_inner(&v, q.z()).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn horosphere_lifts_to_type_two() {
        let spectrum = standard_spectrum(HopfFamily::Horosphere, 2, 0.0, -4.0).unwrap();
        let data = LiftedShapeData::hopf(spectrum, -4.0).unwrap();
        assert_eq!(data.b, vec![0.0, 0.0, 1.0]);
        let cls = classify_jordan(&lift_shape_operator(&data).unwrap(), RANK_TOL).unwrap();
        assert_eq!(cls.jtype, JordanType::II);
        assert_eq!(cls.real_eigs.len(), 1);
        assert!((cls.real_eigs[0].value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn type_one_projection_example() {
        let (l, m) = (1f64.tanh(), 1.0 / 1f64.tanh());
        let data = LiftedShapeData::hopf(
            standard_spectrum(HopfFamily::TubeChk { k: 1 }, 3, 1.0, -4.0).unwrap(),
            -4.0,
        )
        .unwrap();
        let cls = classify_jordan(&lift_shape_operator(&data).unwrap(), RANK_TOL).unwrap();
        assert_eq!(cls.jtype, JordanType::I);
        assert!((cls.real_eigs[0].value - l).abs() < 1e-12 && (cls.real_eigs[1].value - m).abs() < 1e-12);
        let projected = project_spectrum(&cls, -4.0).unwrap();
        let hopf = projected.spectrum().unwrap().hopf_value.unwrap();
        assert!((hopf - 2.0 / 2f64.tanh()).abs() < 1e-12);
    }

    #[test]
    fn invalid_b_is_rejected() {
        let spectrum = standard_spectrum(HopfFamily::Horosphere, 2, 0.0, -4.0).unwrap();
        assert!(matches!(
            LiftedShapeData::new(spectrum, vec![0.5, 0.0, 0.5], -4.0),
            Err(LiftError::InvalidB(_))
        ));
    }
}
