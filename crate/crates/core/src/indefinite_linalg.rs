//! Lorentzian inner products and the normal forms of self-adjoint operators.
//!
//! An operator that is self-adjoint for a Lorentzian form is always conjugate,
//! through an isometry, to exactly one of four normal forms:
//!
//! * Type I: diagonal in an orthonormal basis.
//! * Type II: `[[λ, 0], [ε, λ]] ⊕ diag(...)` in a semi-null basis.
//! * Type III: `[[λ, 0, 1], [0, λ, 0], [0, 1, λ]] ⊕ diag(...)` in a semi-null basis.
//! * Type IV: `[[a, -b], [b, a]] ⊕ diag(...)` in an orthonormal basis whose
//!   first vector is timelike, with `b > 0`.
//!
//! A semi-null basis `{u, v, e_1, ...}` has `⟨u, v⟩ = ⟨e_i, e_i⟩ = 1` and every
//! other pairing zero. Matrices act on columns: column `j` of a normal form
//! holds the coordinates of the image of basis vector `j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{cluster_points, null_space, nullity, orthonormal_span, sorted_symmetric_eigen};

/// Relative tolerance for the self-adjointness test.
pub const SELF_ADJOINT_TOL: f64 = 1e-10;
/// Relative tolerance for numerical ranks in [`classify_jordan`].
pub const RANK_TOL: f64 = 1e-9;
/// Eigenvalues closer than this times `1 + ‖A‖` are one eigenvalue.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Singular values up to this multiple of a cluster's spread count towards its
/// geometric multiplicity, covering the eigenvector conditioning of an isometry.
const SEMISIMPLE_SPREAD: f64 = 16.0;
/// Perturbed Jordan blocks split eigenvalues by roughly `ε^{1/3}`; candidates
/// closer than this times `1 + ‖A‖` are tested for a common defective eigenvalue.
const DEFECT_CLUSTER_TOL: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not Lorentzian: {0}")]
    NotLorentzian(String),
    #[error("operator is not self-adjoint (relative residual {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("operator fits none of the four Lorentzian normal forms: {0}")]
    NondiagnosableOperator(String),
}

/// Nondegenerate symmetric bilinear form of signature `(dim - 1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzForm {
    gram: DMatrix<f64>,
}

impl LorentzForm {
    pub fn new(gram: DMatrix<f64>) -> Result<Self, LinalgError> {
        let n = gram.nrows();
        if gram.ncols() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                got: gram.ncols(),
            });
        }
        if n < 2 {
            return Err(LinalgError::NotLorentzian("dimension must be at least 2".into()));
        }
        let scale = gram.amax().max(f64::MIN_POSITIVE);
        if (&gram - gram.transpose()).amax() > 1e-12 * scale {
            return Err(LinalgError::NotLorentzian("gram matrix is not symmetric".into()));
        }
        let (values, _) = sorted_symmetric_eigen(&gram);
        let degenerate = values.iter().any(|v| v.abs() <= 1e-12 * scale);
        let negatives = values.iter().filter(|&&v| v < 0.0).count();
        if degenerate || negatives != 1 {
            return Err(LinalgError::NotLorentzian(format!(
                "signature has {negatives} negative directions{}",
                if degenerate { " and is degenerate" } else { "" }
            )));
        }
        Ok(Self { gram })
    }

    /// `diag(1, ..., 1, -1)`, the form used by the Hopf lift.
    pub fn last_timelike(dim: usize) -> Self {
        let mut gram = DMatrix::identity(dim, dim);
        gram[(dim - 1, dim - 1)] = -1.0;
        Self { gram }
    }

    /// `diag(-1, 1, ..., 1)`.
    pub fn first_timelike(dim: usize) -> Self {
        let mut gram = DMatrix::identity(dim, dim);
        gram[(0, 0)] = -1.0;
        Self { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.gram * y)[(0, 0)]
    }
}

/// `true` iff `‖G·A − (G·A)ᵀ‖∞ ≤ tol·‖G·A‖∞`.
pub fn is_self_adjoint(form: &LorentzForm, a: &DMatrix<f64>, tol: f64) -> bool {
    self_adjoint_residual(form, a) <= tol
}

fn self_adjoint_residual(form: &LorentzForm, a: &DMatrix<f64>) -> f64 {
    let ga = form.gram() * a;
    let scale = ga.amax();
    if scale == 0.0 {
        return 0.0;
    }
    (&ga - ga.transpose()).amax() / scale
}

/// An operator together with the Lorentzian form it is self-adjoint for.
#[derive(Debug, Clone)]
pub struct SelfAdjointOperator {
    form: LorentzForm,
    matrix: DMatrix<f64>,
}

impl SelfAdjointOperator {
    pub fn new(form: LorentzForm, matrix: DMatrix<f64>, tol: f64) -> Result<Self, LinalgError> {
        if matrix.nrows() != form.dim() || matrix.ncols() != form.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: form.dim(),
                got: matrix.nrows(),
            });
        }
        let residual = self_adjoint_residual(&form, &matrix);
        if residual > tol {
            return Err(LinalgError::NotSelfAdjoint(residual));
        }
        Ok(Self { form, matrix })
    }

    pub fn form(&self) -> &LorentzForm {
        &self.form
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JordanType {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for JordanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            JordanType::I => "I",
            JordanType::II => "II",
            JordanType::III => "III",
            JordanType::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealEigenvalue {
    pub value: f64,
    pub alg_mult: usize,
    pub geo_mult: usize,
}

/// Normal form of a Lorentzian self-adjoint operator.
///
/// `adapted_basis` has the basis vectors as columns; with `P` this matrix,
/// `Pᵀ G P` is the canonical Gram of the type and `P⁻¹ A P == canonical_matrix`.
#[derive(Debug, Clone)]
pub struct JordanClassification {
    pub jtype: JordanType,
    /// Ascending by value.
    pub real_eigs: Vec<RealEigenvalue>,
    /// `(a, b)` with `b > 0` for Type IV.
    pub complex_pair: Option<(f64, f64)>,
    /// Sign of `⟨(A − λ)u, u⟩` on the Type II block.
    pub epsilon: Option<i8>,
    pub adapted_basis: DMatrix<f64>,
    pub canonical_matrix: DMatrix<f64>,
}

impl JordanClassification {
    /// Gram matrix of the adapted basis prescribed by the type.
    pub fn canonical_gram(&self) -> DMatrix<f64> {
        canonical_gram(self.jtype, self.adapted_basis.ncols())
    }

    /// Number of distinct eigenvalues, counting a complex pair as two.
    pub fn distinct_eigenvalues(&self) -> usize {
        self.real_eigs.len() + if self.complex_pair.is_some() { 2 } else { 0 }
    }

    /// Eigenvalue carrying the non-diagonal block, for Types II and III.
    pub fn defective_eigenvalue(&self) -> Option<f64> {
        self.real_eigs.iter().find(|e| e.alg_mult > e.geo_mult).map(|e| e.value)
    }
}

/// Canonical Gram of the adapted basis for a type in dimension `dim`.
pub fn canonical_gram(jtype: JordanType, dim: usize) -> DMatrix<f64> {
    let mut g = DMatrix::identity(dim, dim);
    match jtype {
        JordanType::I | JordanType::IV => g[(0, 0)] = -1.0,
        JordanType::II | JordanType::III => {
            g[(0, 0)] = 0.0;
            g[(1, 1)] = 0.0;
            g[(0, 1)] = 1.0;
            g[(1, 0)] = 1.0;
        }
    }
    g
}

struct Cluster {
    center: Complex64,
    geo: usize,
    size: usize,
}

/// Backward error assumed of the input: a Jordan block of size `p` perturbed by
/// `η‖A‖` spreads its eigenvalues over a ring of radius about `η^{1/p}‖A‖`.
const BACKWARD_ERROR: f64 = 1e-12;

/// Eigenvalue clusters. A group counts as one eigenvalue only if it is
/// semisimple at its centre, or is one Jordan block whose eigenvalue spread fits
/// the block size; other groups are split at the next finer tolerance.
fn eigen_clusters(a: &DMatrix<f64>, scale: f64, rank_tol: f64) -> Vec<Cluster> {
    let eigs: Vec<Complex64> = crate::numeric::complex_eigenvalues(a);
    let mut out = Vec::new();
    let all: Vec<usize> = (0..eigs.len()).collect();
    split_clusters(a, &eigs, &all, 0, scale, rank_tol, &mut out);
    out
}

fn split_clusters(
    a: &DMatrix<f64>,
    eigs: &[Complex64],
    members: &[usize],
    level: usize,
    scale: f64,
    rank_tol: f64,
    out: &mut Vec<Cluster>,
) {
    // A geometric ladder, so a nearby simple eigenvalue is shed before the
    // linkage radius drops below the ring a Jordan block leaves behind.
    const LEVELS: [f64; 6] = [DEFECT_CLUSTER_TOL, 1e-4, 1e-5, 1e-6, CLUSTER_TOL, BACKWARD_ERROR];
    let points: Vec<Complex64> = members.iter().map(|&i| eigs[i]).collect();
    for group in cluster_points(&points, LEVELS[level] * scale) {
        let group: Vec<usize> = group.into_iter().map(|g| members[g]).collect();
        if let Some((center, geo)) = admissible_center(a, eigs, &group, scale, rank_tol) {
            out.push(Cluster {
                center,
                geo,
                size: group.len(),
            });
        } else if level + 1 < LEVELS.len() {
            split_clusters(a, eigs, &group, level + 1, scale, rank_tol, out);
        } else {
            out.extend(group.iter().map(|&i| Cluster {
                center: eigs[i],
                geo: 1,
                size: 1,
            }));
        }
    }
}

fn admissible_center(
    a: &DMatrix<f64>,
    eigs: &[Complex64],
    group: &[usize],
    scale: f64,
    rank_tol: f64,
) -> Option<(Complex64, usize)> {
    let m = group.len();
    let center = group.iter().map(|&i| eigs[i]).sum::<Complex64>() / m as f64;
    if m == 1 {
        return Some((center, 1));
    }
    let distances: Vec<f64> = group.iter().map(|&i| (eigs[i] - center).norm()).collect();
    let spread = distances.iter().cloned().fold(0.0, f64::max);
    let tight = CLUSTER_TOL * scale;
    if center.im.abs() > tight {
        return (spread <= tight).then_some((center, 1));
    }
    let n = a.nrows();
    // Split semisimple eigenvalues leave singular values of order the spread at
    // the centre, a perturbed block keeps its nilpotent part at order one. A
    // nearby block can push extra singular values under the tolerance, and the
    // geometric multiplicity never exceeds the cluster size.
    let geo_tol = rank_tol.max(SEMISIMPLE_SPREAD * spread);
    let geo = nullity(&(a - DMatrix::identity(n, n) * center.re), geo_tol).min(m);
    if geo == m {
        return (spread <= tight).then_some((Complex64::new(center.re, 0.0), geo));
    }
    if geo == 0 || m - geo > 2 {
        return None;
    }
    // The largest block is at most the defect plus one, and at most the number
    // of eigenvalues that actually left the centre.
    let ring: Vec<f64> = distances.iter().copied().filter(|&d| d > tight).collect();
    // A perturbed block spreads its eigenvalues evenly on a circle; a simple
    // eigenvalue next to a smaller block leaves them at unequal distances.
    let (near, far) = ring
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    if ring.len() >= 2 && far > 1.5 * near {
        return None;
    }
    let p = (m - geo + 1).min(ring.len().max(2)) as f64;
    let allowed = (2.0 * BACKWARD_ERROR.powf(1.0 / p)).max(CLUSTER_TOL) * scale;
    (spread <= allowed).then_some((Complex64::new(center.re, 0.0), geo))
}

/// Classifies `op` into one of the four normal forms and builds an adapted basis.
///
/// `tol` is relative: singular values below `tol·(1 + ‖A‖)` count as zero.
pub fn classify_jordan(op: &SelfAdjointOperator, tol: f64) -> Result<JordanClassification, LinalgError> {
    let a = op.matrix();
    let g = op.form().gram();
    let n = a.nrows();
    let scale = 1.0 + a.norm();
    let rank_tol = tol * scale;
    let clusters = eigen_clusters(a, scale, rank_tol);

    let mut complex: Vec<&Cluster> = Vec::new();
    let mut real: Vec<(f64, usize, usize)> = Vec::new();
    for c in &clusters {
        if c.center.im.abs() > CLUSTER_TOL * scale {
            complex.push(c);
        } else {
            real.push((c.center.re, c.size, c.geo));
        }
    }
    real.sort_by(|x, y| x.0.total_cmp(&y.0));
    let real_eigs: Vec<RealEigenvalue> = real
        .iter()
        .map(|&(value, alg_mult, geo_mult)| RealEigenvalue {
            value,
            alg_mult,
            geo_mult,
        })
        .collect();

    let mut builder = BasisBuilder {
        a,
        g,
        n,
        rank_tol,
        clusters: &clusters,
        columns: Vec::new(),
        canonical: DMatrix::zeros(n, n),
    };

    if !complex.is_empty() {
        if complex.len() != 2 || complex.iter().any(|c| c.size != 1) {
            return Err(LinalgError::NondiagnosableOperator(
                "more than one complex conjugate pair".into(),
            ));
        }
        if real.iter().any(|&(_, alg, geo)| alg != geo) {
            return Err(LinalgError::NondiagnosableOperator(
                "complex pair together with a non-diagonal real block".into(),
            ));
        }
        let (re, im) = (complex[0].center.re, complex[0].center.im.abs());
        builder.complex_block(re, im)?;
        for &(value, alg, _) in &real {
            builder.semisimple_block(value, alg, false)?;
        }
        return Ok(builder.finish(JordanType::IV, real_eigs, Some((re, im)), None));
    }

    let defective: Vec<&(f64, usize, usize)> = real.iter().filter(|r| r.1 > r.2).collect();
    match defective.as_slice() {
        [] => {
            let timelike = builder.timelike_eigenvalue(&real)?;
            builder.semisimple_block(real[timelike].0, real[timelike].1, true)?;
            for (i, &(value, alg, _)) in real.iter().enumerate() {
                if i != timelike {
                    builder.semisimple_block(value, alg, false)?;
                }
            }
            Ok(builder.finish(JordanType::I, real_eigs, None, None))
        }
        [&(lambda, alg, geo)] if alg - geo <= 2 => {
            // Two nilpotent 2-blocks would need two independent null directions,
            // which a Lorentzian form does not have: a defect of two is one 3-block,
            // however small its `N²` is near the Type I boundary.
            // The block is the G-complement of the other eigenvectors. Those are
            // backward stable even when a simple eigenvalue sits close to the block,
            // where a kernel of `(A − λ)^p` would tilt by the inverse separation.
            let others: Vec<DMatrix<f64>> = real
                .iter()
                .filter(|r| r.0 != lambda)
                .map(|&(value, alg_other, _)| builder.eigenspace(value, alg_other))
                .collect();
            let block = if others.is_empty() {
                DMatrix::identity(n, n)
            } else {
                let columns: Vec<DVector<f64>> = others
                    .iter()
                    .flat_map(|e| e.column_iter().map(|c| c.into_owned()))
                    .collect();
                null_space(&(DMatrix::from_columns(&columns).transpose() * g), alg)
            };
            let (jtype, epsilon) = if alg - geo == 1 {
                (JordanType::II, Some(builder.type_two_block(lambda, &block)?))
            } else {
                builder.type_three_block(lambda, &block)?;
                (JordanType::III, None)
            };
            for &(value, alg_other, _) in &real {
                if value != lambda {
                    builder.semisimple_block(value, alg_other, false)?;
                }
            }
            Ok(builder.finish(jtype, real_eigs, None, epsilon))
        }
        _ => Err(LinalgError::NondiagnosableOperator(format!(
            "{} defective eigenvalues",
            defective.len()
        ))),
    }
}

struct BasisBuilder<'a> {
    a: &'a DMatrix<f64>,
    g: &'a DMatrix<f64>,
    n: usize,
    rank_tol: f64,
    clusters: &'a [Cluster],
    columns: Vec<DVector<f64>>,
    canonical: DMatrix<f64>,
}

impl BasisBuilder<'_> {
    fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * self.g * y)[(0, 0)]
    }

    fn shifted(&self, lambda: f64) -> DMatrix<f64> {
        self.a - DMatrix::identity(self.n, self.n) * lambda
    }

    /// Eigenspace of a semisimple real eigenvalue. A simple one is the kernel of
    /// `A − λ`, which is backward stable. A merged cluster is the range of the
    /// product of the other spectral factors: the kernel would tilt by the
    /// cluster's spread over the gap, as `A` is not normal.
    fn eigenspace(&self, lambda: f64, alg: usize) -> DMatrix<f64> {
        if alg == 1 {
            return null_space(&self.shifted(lambda), 1);
        }
        let identity = DMatrix::<f64>::identity(self.n, self.n);
        let mut p = identity.clone();
        for c in self.clusters {
            let factor = if c.center.im > 0.0 {
                let shifted = self.shifted(c.center.re);
                &shifted * &shifted + &identity * (c.center.im * c.center.im)
            } else if c.center.im < 0.0 || c.center.re == lambda {
                continue;
            } else {
                self.shifted(c.center.re)
            };
            for _ in 0..c.size {
                p = &factor * &p;
                p /= p.norm();
            }
        }
        let (_, v) = crate::numeric::ascending_svd(&p.transpose());
        v.columns(self.n - alg, alg).into_owned()
    }

    fn push(&mut self, v: DVector<f64>, diagonal: f64) {
        let k = self.columns.len();
        self.canonical[(k, k)] = diagonal;
        self.columns.push(v);
    }

    /// Index of the real eigenvalue whose eigenspace contains a timelike vector.
    fn timelike_eigenvalue(&self, real: &[(f64, usize, usize)]) -> Result<usize, LinalgError> {
        for (i, &(value, alg, _)) in real.iter().enumerate() {
            let e = self.eigenspace(value, alg);
            let (values, _) = sorted_symmetric_eigen(&(e.transpose() * self.g * &e));
            if values[0] < 0.0 {
                return Ok(i);
            }
        }
        Err(LinalgError::NondiagnosableOperator("no timelike eigenvector".into()))
    }

    /// Orthonormal eigenbasis of a semisimple eigenvalue, timelike vector first.
    fn semisimple_block(&mut self, lambda: f64, alg: usize, allow_timelike: bool) -> Result<(), LinalgError> {
        let e = self.eigenspace(lambda, alg);
        let (values, vectors) = sorted_symmetric_eigen(&(e.transpose() * self.g * &e));
        for (i, &d) in values.iter().enumerate() {
            if d < 0.0 && !allow_timelike {
                return Err(LinalgError::NondiagnosableOperator("second timelike direction".into()));
            }
            let v = &e * vectors.column(i) / d.abs().sqrt();
            self.push(v, lambda);
        }
        Ok(())
    }

    /// Spacelike orthonormal basis of `span(k) ⊖ (already chosen block vectors)`.
    fn spacelike_remainder(&mut self, k: &DMatrix<f64>, block: &[DVector<f64>], dual: &[DVector<f64>], lambda: f64) {
        let remaining = k.ncols() - block.len();
        if remaining == 0 {
            return;
        }
        let mut projected = k.clone();
        for mut col in projected.column_iter_mut() {
            let v = col.clone_owned();
            let mut w = v.clone();
            for (b, d) in block.iter().zip(dual) {
                w -= b * self.inner(&v, d);
            }
            col.copy_from(&w);
        }
        let span = orthonormal_span(&projected, 1e-8);
        let span = span.columns(0, remaining.min(span.ncols())).into_owned();
        let (values, vectors) = sorted_symmetric_eigen(&(span.transpose() * self.g * &span));
        for (i, &d) in values.iter().enumerate().rev().take(remaining) {
            let v = &span * vectors.column(i) / d.abs().sqrt();
            self.push(v, lambda);
        }
    }

    fn complex_block(&mut self, re: f64, im: f64) -> Result<(), LinalgError> {
        let shifted = self.shifted(re);
        let quadratic = &shifted * &shifted + DMatrix::identity(self.n, self.n) * (im * im);
        let x = null_space(&quadratic, 2);
        let (values, vectors) = sorted_symmetric_eigen(&(x.transpose() * self.g * &x));
        if !(values[0] < 0.0 && values[1] > 0.0) {
            return Err(LinalgError::NondiagnosableOperator(
                "complex eigenplane is not Lorentzian".into(),
            ));
        }
        let f1 = &x * vectors.column(0) / (-values[0]).sqrt();
        let f2 = &x * vectors.column(1) / values[1].sqrt();
        // Coordinates of A in the orthonormal pair: M = [[p, m], [-m, s]].
        let af1 = self.a * &f1;
        let af2 = self.a * &f2;
        let p = -self.inner(&af1, &f1);
        let m = -self.inner(&af2, &f1);
        let s = self.inner(&af2, &f2);
        let theta = 0.5 * ((s - p) / (2.0 * m)).clamp(-1.0 + 1e-16, 1.0 - 1e-16).atanh();
        let (ch, sh) = (theta.cosh(), theta.sinh());
        let e1 = &f1 * ch + &f2 * sh;
        let mut e2 = &f1 * sh + &f2 * ch;
        if self.inner(&(self.a * &e1), &e2) < 0.0 {
            e2 = -e2;
        }
        let k = self.columns.len();
        self.canonical[(k, k)] = re;
        self.canonical[(k + 1, k + 1)] = re;
        self.canonical[(k + 1, k)] = im;
        self.canonical[(k, k + 1)] = -im;
        self.columns.push(e1);
        self.columns.push(e2);
        Ok(())
    }

    /// Semi-null pair `u, v` with `(A − λ)u = εv`, `(A − λ)v = 0`; returns `ε`.
    fn type_two_block(&mut self, lambda: f64, k: &DMatrix<f64>) -> Result<i8, LinalgError> {
        let shifted = self.shifted(lambda);
        let x = k * dominant_direction(&(&shifted * k));
        let nx = &shifted * &x;
        let s = self.inner(&nx, &x);
        if s.abs() <= self.rank_tol * self.rank_tol {
            return Err(LinalgError::NondiagnosableOperator("null Jordan chain".into()));
        }
        let epsilon: i8 = if s > 0.0 { 1 } else { -1 };
        let u = x / s.abs().sqrt();
        let v = (&shifted * &u) * f64::from(epsilon);
        let u = &u - &v * (self.inner(&u, &u) / 2.0);
        let kcol = self.columns.len();
        self.canonical[(kcol, kcol)] = lambda;
        self.canonical[(kcol + 1, kcol + 1)] = lambda;
        self.canonical[(kcol + 1, kcol)] = f64::from(epsilon);
        self.columns.push(u.clone());
        self.columns.push(v.clone());
        // Dual of u under the hyperbolic pairing is v and vice versa.
        self.spacelike_remainder(k, &[u.clone(), v.clone()], &[v, u], lambda);
        Ok(epsilon)
    }

    /// Chain `e2 → e3 → e1 → 0` under `A − λ` with the Type III Gram.
    fn type_three_block(&mut self, lambda: f64, k: &DMatrix<f64>) -> Result<(), LinalgError> {
        let shifted = self.shifted(lambda);
        let square = &shifted * &shifted;
        let x = k * dominant_direction(&(&square * k));
        let s = self.inner(&(&square * &x), &x);
        if s <= 0.0 {
            return Err(LinalgError::NondiagnosableOperator(
                "length-three chain has the wrong causal character".into(),
            ));
        }
        let e2 = x / s.sqrt();
        let e3 = &shifted * &e2;
        let e1 = &shifted * &e3;
        let beta = -self.inner(&e2, &e3) / 2.0;
        let gamma = -(self.inner(&e2, &e2) + 2.0 * beta * self.inner(&e2, &e3) + beta * beta) / 2.0;
        let e2 = &e2 + &e3 * beta + &e1 * gamma;
        let e3 = &e3 + &e1 * beta;
        let c = self.columns.len();
        self.canonical[(c, c)] = lambda;
        self.canonical[(c + 1, c + 1)] = lambda;
        self.canonical[(c + 2, c + 2)] = lambda;
        self.canonical[(c + 2, c + 1)] = 1.0;
        self.canonical[(c, c + 2)] = 1.0;
        self.columns.push(e1.clone());
        self.columns.push(e2.clone());
        self.columns.push(e3.clone());
        self.spacelike_remainder(k, &[e1.clone(), e2.clone(), e3.clone()], &[e2, e1, e3], lambda);
        Ok(())
    }

    fn finish(
        self,
        jtype: JordanType,
        real_eigs: Vec<RealEigenvalue>,
        complex_pair: Option<(f64, f64)>,
        epsilon: Option<i8>,
    ) -> JordanClassification {
        let adapted_basis = DMatrix::from_columns(&self.columns);
        JordanClassification {
            jtype,
            real_eigs,
            complex_pair,
            epsilon,
            adapted_basis,
            canonical_matrix: self.canonical,
        }
    }
}

/// Unit coefficient vector maximising `‖m · c‖`.
fn dominant_direction(m: &DMatrix<f64>) -> DVector<f64> {
    let (_, v) = crate::numeric::ascending_svd(m);
    v.column(v.ncols() - 1).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(gram: DMatrix<f64>, a: DMatrix<f64>) -> JordanClassification {
        let form = LorentzForm::new(gram).unwrap();
        let op = SelfAdjointOperator::new(form, a, SELF_ADJOINT_TOL).unwrap();
        classify_jordan(&op, RANK_TOL).unwrap()
    }

    fn assert_round_trip(gram: &DMatrix<f64>, a: &DMatrix<f64>, cls: &JordanClassification) {
        let p = &cls.adapted_basis;
        let gram_residual = (p.transpose() * gram * p - cls.canonical_gram()).amax();
        assert!(gram_residual < 1e-9, "gram residual {gram_residual}");
        let p_inv = p.clone().try_inverse().unwrap();
        let matrix_residual = (p_inv * a * p - &cls.canonical_matrix).amax();
        assert!(matrix_residual < 1e-8, "matrix residual {matrix_residual}");
    }

    #[test]
    fn horosphere_lift_is_type_two() {
        let gram = LorentzForm::last_timelike(4).gram().clone();
        let mut a = DMatrix::zeros(4, 4);
        a[(0, 0)] = 1.0;
        a[(1, 1)] = 1.0;
        a[(2, 2)] = 2.0;
        a[(2, 3)] = -1.0;
        a[(3, 2)] = 1.0;
        let cls = classify(gram.clone(), a.clone());
        assert_eq!(cls.jtype, JordanType::II);
        assert_eq!(cls.real_eigs.len(), 1);
        let e = cls.real_eigs[0];
        assert!((e.value - 1.0).abs() < 1e-12);
        assert_eq!((e.alg_mult, e.geo_mult), (4, 3));
        assert_round_trip(&gram, &a, &cls);
    }

    #[test]
    fn rotation_block_is_type_four() {
        let gram = LorentzForm::first_timelike(2).gram().clone();
        let a = DMatrix::from_row_slice(2, 2, &[0.3, -0.8, 0.8, 0.3]);
        let cls = classify(gram.clone(), a.clone());
        assert_eq!(cls.jtype, JordanType::IV);
        let (re, im) = cls.complex_pair.unwrap();
        assert!((re - 0.3).abs() < 1e-12 && (im - 0.8).abs() < 1e-12);
        assert_round_trip(&gram, &a, &cls);
    }

    #[test]
    fn nilpotent_chain_is_type_three() {
        let gram = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let a = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let cls = classify(gram.clone(), a.clone());
        assert_eq!(cls.jtype, JordanType::III);
        assert_eq!(cls.real_eigs[0].alg_mult, 3);
        assert_eq!(cls.real_eigs[0].geo_mult, 1);
        assert_round_trip(&gram, &a, &cls);
    }

    #[test]
    fn diagonal_is_type_one() {
        let gram = LorentzForm::last_timelike(3).gram().clone();
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 2.0, -1.0]));
        let cls = classify(gram.clone(), a.clone());
        assert_eq!(cls.jtype, JordanType::I);
        assert_eq!(cls.canonical_matrix[(0, 0)], -1.0);
        assert_round_trip(&gram, &a, &cls);
    }

    #[test]
    fn rejects_riemannian_gram() {
        assert!(matches!(
            LorentzForm::new(DMatrix::identity(3, 3)),
            Err(LinalgError::NotLorentzian(_))
        ));
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let form = LorentzForm::last_timelike(2);
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(!is_self_adjoint(&form, &a, SELF_ADJOINT_TOL));
        assert!(SelfAdjointOperator::new(form, a, SELF_ADJOINT_TOL).is_err());
    }
}
