//! The solvable group `AN` acting simply transitively on `CH^n(c)`.
//!
//! The Lie algebra is `a ⊕ g_α ⊕ g_2α` with `a = RB`, `g_α = C^{n-1}` and
//! `g_2α = RZ`, carrying the left-invariant metric for which `B`, `Z` and the
//! standard basis of `g_α` are orthonormal. With `s = √−c`:
//!
//! ```text
//! [B, Z] = s Z,   [B, U] = (s/2) U,   [U, V] = s ⟨JU, V⟩ Z,   [Z, U] = 0
//! ```
//!
//! Group elements are written in exponential coordinates of the first kind.
//! The complex structure extends to the algebra by `JB = Z`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahler_angle::{self, KahlerError, RealSubspace, ANGLE_TOL};
use crate::numeric::{apply_j, orthogonal_complement, orthonormal_span};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("curvature must be negative, got {0}")]
    InvalidCurvature(f64),
    #[error("complex dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("expected g_α of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("w must be a proper subspace of g_α")]
    WNotProper,
    #[error("vector is not tangent to W_w (normal component {0:.3e})")]
    NotTangent(f64),
    #[error("expected a unit vector of g_α")]
    NotUnitRootVector,
    #[error(transparent)]
    Kahler(#[from] KahlerError),
}

/// Element `aB + U + xZ` of the Lie algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnVector {
    pub a: f64,
    #[serde(rename = "U")]
    pub u: Vec<f64>,
    pub x: f64,
}

impl AnVector {
    pub fn new(a: f64, u: DVector<f64>, x: f64) -> Self {
        Self {
            a,
            u: u.iter().copied().collect(),
            x,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            a: 0.0,
            u: vec![0.0; 2 * (n - 1)],
            x: 0.0,
        }
    }

    pub fn u_vec(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.u)
    }

    /// Coordinates `[a, U, x]` in `R^{2n}`.
    pub fn flatten(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.u.len() + 2);
        v[0] = self.a;
        v.rows_mut(1, self.u.len()).copy_from_slice(&self.u);
        v[self.u.len() + 1] = self.x;
        v
    }

    pub fn from_flat(v: &DVector<f64>) -> Self {
        let m = v.len() - 2;
        Self {
            a: v[0],
            u: v.rows(1, m).iter().copied().collect(),
            x: v[m + 1],
        }
    }

    pub fn norm(&self) -> f64 {
        self.flatten().norm()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.a * other.a + self.x * other.x + self.u.iter().zip(&other.u).map(|(p, q)| p * q).sum::<f64>()
    }

    /// `J(aB + U + xZ) = −xB + JU + aZ`.
    pub fn j(&self) -> Self {
        Self {
            a: -self.x,
            u: apply_j(&self.u_vec()).iter().copied().collect(),
            x: self.a,
        }
    }
}

impl Add for &AnVector {
    type Output = AnVector;
    fn add(self, rhs: Self) -> AnVector {
        AnVector {
            a: self.a + rhs.a,
            u: self.u.iter().zip(&rhs.u).map(|(p, q)| p + q).collect(),
            x: self.x + rhs.x,
        }
    }
}

impl Sub for &AnVector {
    type Output = AnVector;
    fn sub(self, rhs: Self) -> AnVector {
        self + &(-rhs)
    }
}

impl Neg for &AnVector {
    type Output = AnVector;
    fn neg(self) -> AnVector {
        self * -1.0
    }
}

impl Mul<f64> for &AnVector {
    type Output = AnVector;
    fn mul(self, k: f64) -> AnVector {
        AnVector {
            a: self.a * k,
            u: self.u.iter().map(|p| p * k).collect(),
            x: self.x * k,
        }
    }
}

/// Group element `Exp(aB + U + xZ)` stored by its logarithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnPoint(pub AnVector);

impl AnPoint {
    pub fn identity(n: usize) -> Self {
        Self(AnVector::zero(n))
    }

    pub fn log(&self) -> &AnVector {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(-&self.0)
    }
}

/// `ρ(t) = (eᵗ − 1)/t`, `ρ(0) = 1`.
pub fn rho(t: f64) -> f64 {
    if t.abs() < 1e-3 {
        1.0 + t * (1.0 / 2.0 + t * (1.0 / 6.0 + t * (1.0 / 24.0 + t * (1.0 / 120.0 + t / 720.0))))
    } else {
        t.exp_m1() / t
    }
}

/// `CH^n(c)` realised as the group `AN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnModel {
    n: usize,
    c: f64,
}

impl AnModel {
    pub fn new(n: usize, c: f64) -> Result<Self, ModelError> {
        if !(c < 0.0 && c.is_finite()) {
            return Err(ModelError::InvalidCurvature(c));
        }
        if n < 2 {
            return Err(ModelError::InvalidDimension(n));
        }
        Ok(Self { n, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `√−c`.
    pub fn s(&self) -> f64 {
        (-self.c).sqrt()
    }

    /// Real dimension of `g_α`.
    pub fn root_dim(&self) -> usize {
        2 * (self.n - 1)
    }

    pub fn vector(&self, a: f64, u: DVector<f64>, x: f64) -> Result<AnVector, ModelError> {
        if u.len() != self.root_dim() {
            return Err(ModelError::DimensionMismatch {
                expected: self.root_dim(),
                got: u.len(),
            });
        }
        Ok(AnVector::new(a, u, x))
    }

    pub fn b(&self) -> AnVector {
        AnVector {
            a: 1.0,
            ..AnVector::zero(self.n)
        }
    }

    pub fn z(&self) -> AnVector {
        AnVector {
            x: 1.0,
            ..AnVector::zero(self.n)
        }
    }

    /// `i`-th real basis vector of `g_α`.
    pub fn root_vector(&self, i: usize) -> AnVector {
        let mut v = AnVector::zero(self.n);
        v.u[i] = 1.0;
        v
    }

    /// Vector of `g_α` with the given interleaved coordinates.
    pub fn root(&self, u: &DVector<f64>) -> AnVector {
        AnVector::new(0.0, u.clone(), 0.0)
    }

    fn check(&self, v: &AnVector) -> Result<(), ModelError> {
        if v.u.len() != self.root_dim() {
            return Err(ModelError::DimensionMismatch {
                expected: self.root_dim(),
                got: v.u.len(),
            });
        }
        Ok(())
    }

    fn j_pairing(u: &[f64], v: &[f64]) -> f64 {
        // ⟨JU, V⟩ with JU = (−im, re) per complex coordinate.
        u.chunks(2)
            .zip(v.chunks(2))
            .map(|(p, q)| -p[1] * q[0] + p[0] * q[1])
            .sum()
    }

    pub fn bracket(&self, x: &AnVector, y: &AnVector) -> Result<AnVector, ModelError> {
        self.check(x)?;
        self.check(y)?;
        let s = self.s();
        let u: Vec<f64> =
            x.u.iter()
                .zip(&y.u)
                .map(|(p, q)| 0.5 * s * (x.a * q - y.a * p))
                .collect();
        let z = s * (x.a * y.x - y.a * x.x + Self::j_pairing(&x.u, &y.u));
        Ok(AnVector { a: 0.0, u, x: z })
    }

    /// `∇_X Y` for left-invariant fields.
    pub fn levi_civita(&self, x: &AnVector, y: &AnVector) -> Result<AnVector, ModelError> {
        self.check(x)?;
        self.check(y)?;
        let s = self.s();
        let uv: f64 = x.u.iter().zip(&y.u).map(|(p, q)| p * q).sum();
        let ju = apply_j(&x.u_vec());
        let jv = apply_j(&y.u_vec());
        let u: Vec<f64> = (0..x.u.len())
            .map(|i| -0.5 * s * (y.a * x.u[i] + y.x * ju[i] + x.x * jv[i]))
            .collect();
        Ok(AnVector {
            a: s * (0.5 * uv + x.x * y.x),
            u,
            x: s * (0.5 * Self::j_pairing(&x.u, &y.u) - y.a * x.x),
        })
    }

    /// Closed form of the curvature tensor of constant holomorphic curvature `c`.
    pub fn curvature_tensor(&self, x: &AnVector, y: &AnVector, z: &AnVector) -> Result<AnVector, ModelError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let (jx, jy, jz) = (x.j(), y.j(), z.j());
        let terms = [
            (x, y.dot(z)),
            (y, -x.dot(z)),
            (&jx, jy.dot(z)),
            (&jy, -jx.dot(z)),
            (&jz, -2.0 * jx.dot(y)),
        ];
        let mut out = AnVector::zero(self.n);
        for (v, k) in terms {
            out = &out + &(v * (k * self.c / 4.0));
        }
        Ok(out)
    }

    /// `R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z` computed from the connection.
    pub fn curvature_from_connection(&self, x: &AnVector, y: &AnVector, z: &AnVector) -> Result<AnVector, ModelError> {
        let first = self.levi_civita(x, &self.levi_civita(y, z)?)?;
        let second = self.levi_civita(y, &self.levi_civita(x, z)?)?;
        let third = self.levi_civita(&self.bracket(x, y)?, z)?;
        Ok(&(&first - &second) - &third)
    }

    /// `Exp(X)·Exp(Y)` in exponential coordinates.
    pub fn group_product(&self, g: &AnPoint, h: &AnPoint) -> Result<AnPoint, ModelError> {
        let (p, q) = (&g.0, &h.0);
        self.check(p)?;
        self.check(q)?;
        let s = self.s();
        let (a, b) = (s * p.a, s * q.a);
        let half_a = (a / 2.0).exp();
        let u_scale = 1.0 / rho((a + b) / 2.0);
        let u: Vec<f64> =
            p.u.iter()
                .zip(&q.u)
                .map(|(pu, qu)| u_scale * (rho(a / 2.0) * pu + half_a * rho(b / 2.0) * qu))
                .collect();
        let x = (rho(a) * p.x
            + a.exp() * rho(b) * q.x
            + 0.5 * half_a * s * rho(a / 2.0) * rho(b / 2.0) * Self::j_pairing(&p.u, &q.u))
            / rho(a + b);
        Ok(AnPoint(AnVector { a: p.a + q.a, u, x }))
    }

    /// `p · Exp(tU)` for a unit `U ∈ g_α`.
    pub fn horocycle_point(&self, p: &AnPoint, u: &AnVector, t: f64) -> Result<AnPoint, ModelError> {
        self.check(u)?;
        if u.a != 0.0 || u.x != 0.0 || (u.u_vec().norm() - 1.0).abs() > 1e-12 {
            return Err(ModelError::NotUnitRootVector);
        }
        self.group_product(p, &AnPoint(u * t))
    }
}

/// The homogeneous minimal submanifold `W_w = S_w · o` for a proper `w ⊂ g_α`.
///
/// Its tangent space at `o` is `a ⊕ (g_α ⊖ Cw^⊥) ⊕ g_2α ⊕ Pw^⊥` and its normal
/// space is `w^⊥`.
#[derive(Debug, Clone)]
pub struct SubmanifoldW {
    model: AnModel,
    w: RealSubspace,
    w_perp: RealSubspace,
    /// Orthonormal basis of `g_α ⊖ Cw^⊥`.
    complex_part: DMatrix<f64>,
    /// Orthonormal basis of `Pw^⊥ ⊂ w`.
    p_part: DMatrix<f64>,
}

pub fn build_w(model: &AnModel, w: &RealSubspace) -> Result<SubmanifoldW, ModelError> {
    if w.ambient_cdim() != model.n - 1 {
        return Err(ModelError::DimensionMismatch {
            expected: model.root_dim(),
            got: 2 * w.ambient_cdim(),
        });
    }
    if w.dim() == model.root_dim() {
        return Err(ModelError::WNotProper);
    }
    let w_perp = kahler_angle::complement(w);
    let m = model.root_dim();
    let mut p_vectors: Vec<DVector<f64>> = Vec::new();
    for block in kahler_angle::kahler_decomposition(&w_perp).blocks {
        if block.angle <= ANGLE_TOL {
            continue;
        }
        for xi in block.basis.column_iter() {
            let jxi = apply_j(&xi.clone_owned());
            p_vectors.push(&jxi - w_perp.project(&jxi));
        }
    }
    let p_part = if p_vectors.is_empty() {
        DMatrix::zeros(m, 0)
    } else {
        orthonormal_span(&DMatrix::from_columns(&p_vectors), 1e-9)
    };
    let c_wperp = DMatrix::from_columns(
        &w_perp
            .basis()
            .column_iter()
            .map(|c| c.clone_owned())
            .chain(p_part.column_iter().map(|c| c.clone_owned()))
            .collect::<Vec<_>>(),
    );
    let complex_part = if c_wperp.ncols() == 0 {
        DMatrix::identity(m, m)
    } else {
        orthogonal_complement(&orthonormal_span(&c_wperp, 1e-9))
    };
    Ok(SubmanifoldW {
        model: *model,
        w: w.clone(),
        w_perp,
        complex_part,
        p_part,
    })
}

impl SubmanifoldW {
    pub fn model(&self) -> &AnModel {
        &self.model
    }

    pub fn w(&self) -> &RealSubspace {
        &self.w
    }

    pub fn w_perp(&self) -> &RealSubspace {
        &self.w_perp
    }

    /// `k = dim w^⊥`, the codimension of `W_w`.
    pub fn codim(&self) -> usize {
        self.w_perp.dim()
    }

    /// Orthonormal tangent frame at `o`: `B`, `Z`, then `g_α ⊖ Cw^⊥`, then `Pw^⊥`.
    pub fn tangent_basis(&self) -> Vec<AnVector> {
        let mut out = vec![self.model.b(), self.model.z()];
        for col in self.complex_part.column_iter().chain(self.p_part.column_iter()) {
            out.push(self.model.root(&col.clone_owned()));
        }
        out
    }

    /// Orthonormal normal frame at `o`, a basis of `w^⊥`.
    pub fn normal_basis(&self) -> Vec<AnVector> {
        self.w_perp
            .basis()
            .column_iter()
            .map(|c| self.model.root(&c.clone_owned()))
            .collect()
    }

    fn normal_component(&self, v: &AnVector) -> DVector<f64> {
        self.w_perp.project(&v.u_vec())
    }

    fn require_tangent(&self, v: &AnVector) -> Result<(), ModelError> {
        self.model.check(v)?;
        let residual = self.normal_component(v).norm();
        if residual > 1e-9 * (1.0 + v.norm()) {
            return Err(ModelError::NotTangent(residual));
        }
        Ok(())
    }

    /// `II(X, Y)`, the symmetric extension of `2 II(Z, Pξ) = −√−c (JPξ)^⊥`.
    pub fn second_fundamental_form(&self, x: &AnVector, y: &AnVector) -> Result<AnVector, ModelError> {
        self.require_tangent(x)?;
        self.require_tangent(y)?;
        let p_of = |v: &AnVector| &self.p_part * (self.p_part.transpose() * v.u_vec());
        let half = -0.5 * self.model.s();
        let jpx = self.w_perp.project(&apply_j(&p_of(x)));
        let jpy = self.w_perp.project(&apply_j(&p_of(y)));
        let u = (jpy * x.x + jpx * y.x) * half;
        Ok(self.model.root(&u))
    }

    /// Matrix of `S_ξ` in [`SubmanifoldW::tangent_basis`].
    pub fn shape_operator(&self, xi: &AnVector) -> Result<DMatrix<f64>, ModelError> {
        self.model.check(xi)?;
        let basis = self.tangent_basis();
        let d = basis.len();
        let mut s = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let value = self.second_fundamental_form(&basis[i], &basis[j])?.dot(xi);
                s[(i, j)] = value;
                s[(j, i)] = value;
            }
        }
        Ok(s)
    }

    /// Norm of the `w^⊥` component of `Log p`; zero exactly on `S_w`.
    pub fn membership_residual(&self, p: &AnPoint) -> f64 {
        self.normal_component(p.log()).norm()
    }

    /// `true` iff `Log p ∈ s_w`, i.e. the `g_α` part of `Log p` lies in `w`.
    pub fn contains_point(&self, p: &AnPoint, tol: f64) -> bool {
        self.membership_residual(p) <= tol
    }
}
