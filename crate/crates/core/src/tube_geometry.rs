//! Tubes around the submanifolds `W_w` and the three Hopf families.
//!
//! Principal curvatures are taken with respect to the inward normal `−γ'(r)`,
//! so geodesic spheres have positive curvatures. With `s = √−c` the tube of
//! radius `r` carries `λ = (s/2) tanh(rs/2)` and `−c/(4λ) = (s/2) coth(rs/2)`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahler_angle::{pf_split, ANGLE_TOL};
use crate::numeric::{
    cluster_sorted, orthogonal_complement, poly_mul, poly_pow, real_polynomial_roots, sorted_symmetric_eigen,
};
use crate::solvable_model::{AnVector, ModelError, SubmanifoldW};

/// Values closer than this times `1 + max|value|` are one principal curvature.
pub const SPECTRUM_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TubeError {
    #[error("curvature must be negative, got {0}")]
    InvalidCurvature(f64),
    #[error("codimension k = {k} is outside 1..={max} for n = {n}")]
    InvalidCodimension { n: usize, k: usize, max: usize },
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("r = 0 is focal for codimension {0}")]
    FocalRadius(usize),
    #[error("parameter t = {t} is outside [0, r = {r}]")]
    InvalidParameter { t: f64, r: f64 },
    #[error("angle {0} is not admissible here")]
    InvalidAngle(f64),
    #[error("CH^k tubes need 0 <= k <= n - 1, got k = {k} for n = {n}")]
    InvalidK { n: usize, k: usize },
    #[error("complex dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("direction is not a unit normal of W_w (residual {0:.3e})")]
    NotNormal(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn check_c(c: f64) -> Result<f64, TubeError> {
    if c < 0.0 && c.is_finite() {
        Ok((-c).sqrt())
    } else {
        Err(TubeError::InvalidCurvature(c))
    }
}

/// Solutions of `y'' = (−c/4) y` with `g(0) = 1, g'(0) = −ν` and `h(0) = 0, h'(0) = −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiScalars {
    pub g: f64,
    pub g_prime: f64,
    pub h: f64,
    pub h_prime: f64,
}

pub fn jacobi_scalars(nu: f64, t: f64, c: f64) -> Result<JacobiScalars, TubeError> {
    let s = check_c(c)?;
    let (sh, ch) = ((s * t / 2.0).sinh(), (s * t / 2.0).cosh());
    Ok(JacobiScalars {
        g: ch - 2.0 * nu / s * sh,
        g_prime: s / 2.0 * sh - nu * ch,
        h: -2.0 / s * sh,
        h_prime: -ch,
    })
}

/// Parallel-family data along a normal geodesic of a tube of radius `r`.
///
/// `μ` is `+∞` at the focal parameter `t = r`, where `λ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelData {
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub focal: bool,
}

pub fn parallel_data(r: f64, t: f64, c: f64) -> Result<ParallelData, TubeError> {
    let s = check_c(c)?;
    if !(r > 0.0) {
        return Err(TubeError::InvalidRadius(r));
    }
    if !(0.0..=r).contains(&t) {
        return Err(TubeError::InvalidParameter { t, r });
    }
    let u = s * (r - t) / 2.0;
    let ratio = (s * r / 2.0).cosh() / u.cosh();
    let focal = t == r;
    Ok(ParallelData {
        lambda: s / 2.0 * u.tanh(),
        mu: if focal { f64::INFINITY } else { s / 2.0 / u.tanh() },
        alpha: 2.0 / s * ratio.powi(3) * (s * t / 2.0).sinh(),
        beta: ratio * ratio,
        focal,
    })
}

/// Real polynomial with coefficients in ascending degree.
///
/// A polynomial assembled from factors keeps them: roots of a high-multiplicity
/// factor are only determined to `ε^{1/m}` by the expanded coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
    #[serde(skip)]
    factors: Vec<(Vec<f64>, usize)>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self {
            factors: vec![(coeffs.clone(), 1)],
            coeffs,
        }
    }

    /// `∏ f_i^{m_i}`, with factors in ascending coefficient order.
    pub fn from_factors(factors: Vec<(Vec<f64>, usize)>) -> Self {
        let coeffs = factors
            .iter()
            .fold(vec![1.0], |acc, (f, m)| poly_mul(&acc, &poly_pow(f, *m)));
        let factors = factors.into_iter().filter(|(f, m)| *m > 0 && f.len() > 1).collect();
        Self { coeffs, factors }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    /// Real parts of all roots, ascending and repeated by multiplicity.
    pub fn roots(&self) -> Vec<f64> {
        let mut roots: Vec<f64> = self
            .factors
            .iter()
            .flat_map(|(f, m)| {
                let r = real_polynomial_roots(f);
                std::iter::repeat_n(r, *m).flatten()
            })
            .collect();
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Sum of the roots, read off the two leading coefficients.
    pub fn root_sum(&self) -> f64 {
        let d = self.degree();
        -self.coeffs[d - 1] / self.coeffs[d]
    }
}

/// The cubic `f_{λ,φ}` whose roots are the curvatures mixing `ξ`, `Jξ` and `Pξ`.
fn cubic(lambda: f64, phi: f64, c: f64) -> [f64; 4] {
    let mu = -c / (4.0 * lambda);
    let l2 = lambda * lambda;
    let constant =
        (16.0 * l2 * l2 - 16.0 * c * l2 - c * c + (c + 4.0 * l2).powi(2) * (2.0 * phi).cos()) / (32.0 * lambda);
    [constant, 0.5 * (c - 6.0 * l2), mu + 3.0 * lambda, -1.0]
}

/// Quotient of `p` by `(x − root)`, dropping the remainder.
fn deflate(p: &[f64], root: f64) -> Vec<f64> {
    let d = p.len() - 1;
    let mut q = vec![0.0; d];
    let mut carry = 0.0;
    for i in (0..d).rev() {
        carry = p[i + 1] + carry * root;
        q[i] = carry;
    }
    q
}

fn check_tube_args(n: usize, k: usize, r: f64) -> Result<(), TubeError> {
    if n < 2 {
        return Err(TubeError::InvalidDimension(n));
    }
    let max = 2 * n - 2;
    if k < 1 || k > max {
        return Err(TubeError::InvalidCodimension { n, k, max });
    }
    if !(r > 0.0) {
        return Err(TubeError::InvalidRadius(r));
    }
    Ok(())
}

/// Characteristic polynomial of the shape operator of the tube of radius `r`
/// around a codimension-`k` `W_w`, at a normal direction of Kähler angle `φ`.
///
/// For `k ≥ 2` this is `(λ − x)^{2n−k−2} (−c/(4λ) − x)^{k−2} f_{λ,φ}(x)`. For
/// `k = 1` the angle is `π/2`, `f_{λ,π/2}` vanishes at `−c/(4λ)` and the
/// polynomial is `(λ − x)^{2n−3} f_{λ,π/2}(x) / (−c/(4λ) − x)`.
pub fn tube_char_poly(n: usize, k: usize, r: f64, phi: f64, c: f64) -> Result<Polynomial, TubeError> {
    let s = check_c(c)?;
    check_tube_args(n, k, r)?;
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&phi) || (k == 1 && (phi - FRAC_PI_2).abs() > 1e-9) {
        return Err(TubeError::InvalidAngle(phi));
    }
    let lambda = s / 2.0 * (s * r / 2.0).tanh();
    let mu = -c / (4.0 * lambda);
    let f = cubic(lambda, phi, c);
    let lambda_factor = (vec![lambda, -1.0], 2 * n - k - 2);
    Ok(Polynomial::from_factors(if k == 1 {
        // f = (μ − x) q  ⇒  q = −(f / (x − μ)).
        let q: Vec<f64> = deflate(&f, mu).iter().map(|a| -a).collect();
        vec![lambda_factor, (q, 1)]
    } else {
        vec![lambda_factor, (vec![mu, -1.0], k - 2), (f.to_vec(), 1)]
    }))
}

/// Mean curvature (trace of the shape operator) of the tube of radius `r`
/// around a codimension-`k` `W_w` in `CH^n(c)`.
pub fn tube_mean_curvature(n: usize, k: usize, r: f64, c: f64) -> Result<f64, TubeError> {
    let s = check_c(c)?;
    if n < 2 {
        return Err(TubeError::InvalidDimension(n));
    }
    if k < 1 || k > 2 * n - 2 {
        return Err(TubeError::InvalidCodimension { n, k, max: 2 * n - 2 });
    }
    if !(r >= 0.0) {
        return Err(TubeError::InvalidRadius(r));
    }
    if r == 0.0 {
        return if k == 1 {
            Ok(0.0)
        } else {
            Err(TubeError::FocalRadius(k))
        };
    }
    let u = s * r / 2.0;
    Ok(s / (2.0 * u.sinh() * u.cosh()) * ((k as f64 - 1.0) + 2.0 * n as f64 * u.sinh().powi(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub alg_mult: usize,
    pub geo_mult: usize,
}

/// Principal curvatures of a real hypersurface, ascending by value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeSpectrum {
    pub entries: Vec<SpectrumEntry>,
    /// Principal curvature of the Hopf vector `Jη` when it is principal.
    pub hopf_value: Option<f64>,
}

impl TubeSpectrum {
    /// Groups values, merging those within the spectrum tolerance.
    pub fn from_values(mut values: Vec<f64>, hopf_value: Option<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let entries = cluster_sorted(&values, SPECTRUM_TOL * scale)
            .into_iter()
            .map(|(value, m)| SpectrumEntry {
                value,
                alg_mult: m,
                geo_mult: m,
            })
            .collect();
        Self { entries, hopf_value }
    }

    /// Values repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.alg_mult))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().map(|e| e.alg_mult).sum()
    }

    pub fn trace(&self) -> f64 {
        self.entries.iter().map(|e| e.value * e.alg_mult as f64).sum()
    }

    /// Same values within `tol` (relative to `1 + |value|`) and multiplicities.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.alg_mult == b.alg_mult && (a.value - b.value).abs() <= tol * (1.0 + a.value.abs()))
            && match (self.hopf_value, other.hopf_value) {
                (Some(a), Some(b)) => (a - b).abs() <= tol * (1.0 + a.abs()),
                (None, None) => true,
                _ => false,
            }
    }
}

/// The Hopf hypersurfaces with constant principal curvatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopfFamily {
    /// Tube around a totally geodesic `CH^k`, `0 ≤ k ≤ n − 1` (`k = 0` is a geodesic sphere).
    TubeChk {
        k: usize,
    },
    /// Tube around a totally geodesic `RH^n`.
    TubeRhn,
    Horosphere,
}

pub fn standard_spectrum(family: HopfFamily, n: usize, r: f64, c: f64) -> Result<TubeSpectrum, TubeError> {
    let s = check_c(c)?;
    if n < 2 {
        return Err(TubeError::InvalidDimension(n));
    }
    if family != HopfFamily::Horosphere && !(r > 0.0) {
        return Err(TubeError::InvalidRadius(r));
    }
    let u = s * r / 2.0;
    let (tanh_value, coth_value) = (s / 2.0 * u.tanh(), s / 2.0 / u.tanh());
    let (values, hopf): (Vec<(f64, usize)>, f64) = match family {
        HopfFamily::TubeChk { k } => {
            if k > n - 1 {
                return Err(TubeError::InvalidK { n, k });
            }
            let hopf = s / (s * r).tanh();
            (
                vec![(tanh_value, 2 * k), (coth_value, 2 * (n - k - 1)), (hopf, 1)],
                hopf,
            )
        }
        HopfFamily::TubeRhn => {
            let hopf = s * (s * r).tanh();
            (vec![(tanh_value, n - 1), (coth_value, n - 1), (hopf, 1)], hopf)
        }
        HopfFamily::Horosphere => (vec![(s / 2.0, 2 * (n - 1)), (s, 1)], s),
    };
    let expanded = values
        .into_iter()
        .flat_map(|(v, m)| std::iter::repeat_n(v, m))
        .collect();
    Ok(TubeSpectrum::from_values(expanded, Some(hopf)))
}

/// A tube of radius `r` around `W_w`.
#[derive(Debug, Clone)]
pub struct TubeSpec {
    pub sub: SubmanifoldW,
    pub r: f64,
}

impl TubeSpec {
    pub fn new(sub: SubmanifoldW, r: f64) -> Result<Self, TubeError> {
        if !(r > 0.0) {
            return Err(TubeError::InvalidRadius(r));
        }
        Ok(Self { sub, r })
    }

    pub fn n(&self) -> usize {
        self.sub.model().n()
    }

    pub fn c(&self) -> f64 {
        self.sub.model().c()
    }

    /// Kähler angle of a unit normal `ξ ∈ w^⊥`.
    pub fn normal_angle(&self, xi: &AnVector) -> Result<f64, TubeError> {
        let residual = xi.a.abs() + xi.x.abs();
        if xi.u.len() != self.sub.model().root_dim() || residual > 1e-12 {
            return Err(TubeError::NotNormal(residual.max(f64::NAN)));
        }
        pf_split(self.sub.w_perp(), &xi.u_vec())
            .map(|split| split.angle())
            .map_err(|_| TubeError::NotNormal(self.sub.w_perp().distance(&xi.u_vec())))
    }
}

/// Principal curvatures at `γ_ξ(r)` from the characteristic polynomial.
pub fn tube_spectrum_at(spec: &TubeSpec, xi: &AnVector) -> Result<TubeSpectrum, TubeError> {
    let phi = spec.normal_angle(xi)?;
    let (n, k, c) = (spec.n(), spec.sub.codim(), spec.c());
    let phi = if k == 1 { FRAC_PI_2 } else { phi.min(FRAC_PI_2) };
    let s = (-c).sqrt();
    let lambda = s / 2.0 * (s * spec.r / 2.0).tanh();
    let mu = -c / (4.0 * lambda);
    let f = cubic(lambda, phi, c);
    let mut values: Vec<f64> = Vec::with_capacity(2 * n - 1);
    values.extend(std::iter::repeat_n(lambda, 2 * n - k - 2));
    if k >= 2 {
        values.extend(std::iter::repeat_n(mu, k - 2));
        values.extend(real_polynomial_roots(&f));
    } else {
        let q: Vec<f64> = deflate(&f, mu).iter().map(|a| -a).collect();
        values.extend(real_polynomial_roots(&q));
    }
    let hopf = (phi <= ANGLE_TOL).then(|| s / (s * spec.r).tanh());
    Ok(TubeSpectrum::from_values(values, hopf))
}

/// Shape operator at `γ_ξ(r)` in a parallel orthonormal frame of `ξ^⊥`.
#[derive(Debug, Clone)]
pub struct ShapeAtPoint {
    /// Symmetric `(2n − 1) × (2n − 1)` matrix.
    pub matrix: DMatrix<f64>,
    /// Columns: the frame of `ξ^⊥` in algebra coordinates `[a, U, x]`.
    pub frame: DMatrix<f64>,
    /// Coordinates of `Jη` for the normal `η = −γ'(r)`.
    pub hopf_vector: DVector<f64>,
}

/// Shape operator of the tube at `γ_ξ(r)` from `W`-Jacobi fields.
///
/// With `D'' + R_ξ D = 0`, `D(0)` the projection onto `T_oW` and
/// `D'(0) = −S_ξ` on `T_oW` plus the identity on `w^⊥ ⊖ Rξ`, the operator is
/// `D'(r) D(r)⁻¹`.
pub fn numeric_shape_data(spec: &TubeSpec, xi: &AnVector) -> Result<ShapeAtPoint, TubeError> {
    spec.normal_angle(xi)?;
    let sub = &spec.sub;
    let model = sub.model();
    let dim = 2 * model.n();
    let s = model.s();
    let r = spec.r;
    let xi_flat = xi.flatten();
    let j_xi = xi.j().flatten();

    let tangent = DMatrix::from_columns(&sub.tangent_basis().iter().map(|v| v.flatten()).collect::<Vec<_>>());
    let normal = DMatrix::from_columns(&sub.normal_basis().iter().map(|v| v.flatten()).collect::<Vec<_>>());
    let p_t = &tangent * tangent.transpose();
    let p_n = &normal * normal.transpose() - &xi_flat * xi_flat.transpose();
    let shape = &tangent * sub.shape_operator(xi)? * tangent.transpose();

    let pi_j = &j_xi * j_xi.transpose();
    let identity = DMatrix::<f64>::identity(dim, dim);
    let q = &identity - &pi_j - &xi_flat * xi_flat.transpose();
    let (half, full) = (s * r / 2.0, s * r);
    let c_op = &q * half.cosh() + &pi_j * full.cosh();
    let s_op = &q * (2.0 / s * half.sinh()) + &pi_j * (full.sinh() / s);
    let c_der = &q * (s / 2.0 * half.sinh()) + &pi_j * (s * full.sinh());
    let s_der = &q * half.cosh() + &pi_j * full.cosh();

    let d0 = p_t.clone();
    let d0_prime = -&shape * &p_t + &p_n;
    let d = &c_op * &d0 + &s_op * &d0_prime;
    let d_prime = &c_der * &d0 + &s_der * &d0_prime;

    let frame = orthogonal_complement(&DMatrix::from_columns(&[xi_flat]));
    let d_frame = frame.transpose() * &d * &frame;
    let d_prime_frame = frame.transpose() * &d_prime * &frame;
    let inverse = d_frame.try_inverse().ok_or(TubeError::FocalRadius(sub.codim()))?;
    let matrix = d_prime_frame * inverse;
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    let hopf_vector = -(frame.transpose() * j_xi);
    Ok(ShapeAtPoint {
        matrix,
        frame,
        hopf_vector,
    })
}

pub fn numeric_shape_operator(spec: &TubeSpec, xi: &AnVector) -> Result<DMatrix<f64>, TubeError> {
    Ok(numeric_shape_data(spec, xi)?.matrix)
}

/// Eigenvalues of the numeric shape operator, ascending.
pub fn numeric_principal_curvatures(spec: &TubeSpec, xi: &AnVector) -> Result<Vec<f64>, TubeError> {
    Ok(sorted_symmetric_eigen(&numeric_shape_operator(spec, xi)?).0)
}
