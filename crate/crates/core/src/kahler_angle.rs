//! Real subspaces of `C^m` and their Kähler angles.
//!
//! For a unit `ξ ∈ W` write `Jξ = Fξ + Pξ` with `Fξ ∈ W` and `Pξ ⊥ W`. The
//! symmetric form `⟨Fξ, Fη⟩` on `W` has eigenvalues `cos²φ`; the angles `φ`
//! with their multiplicities form the Kähler profile, a complete invariant of
//! `W` up to unitary congruence. Every angle below `π/2` has even multiplicity.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{apply_j, j_matrix, orthogonal_complement, orthonormal_span, seeded_rng};

/// Angles closer than this (radians) are the same angle.
pub const ANGLE_TOL: f64 = 1e-7;
const ORTHONORMAL_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KahlerError {
    #[error("vector of length {got} does not live in C^{cdim}")]
    DimensionMismatch { cdim: usize, got: usize },
    #[error("{k} real vectors cannot span a subspace of C^{cdim}")]
    InvalidDimension { cdim: usize, k: usize },
    #[error("basis is not orthonormal (residual {0:.3e})")]
    NotOrthonormal(f64),
    #[error("spanning vectors are linearly dependent")]
    DependentVectors,
    #[error("vector is not a unit vector of the subspace (residual {0:.3e})")]
    NotInSubspace(f64),
}

/// A real subspace of `C^m`, stored by an orthonormal basis of interleaved vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSubspace {
    ambient_cdim: usize,
    basis: DMatrix<f64>,
}

/// On-disk form: `{"ambient_cdim": m, "basis": [[re1, im1, ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub ambient_cdim: usize,
    pub basis: Vec<Vec<f64>>,
}

impl RealSubspace {
    /// Wraps an orthonormal basis given as the columns of a `2m × k` matrix.
    pub fn new(ambient_cdim: usize, basis: DMatrix<f64>) -> Result<Self, KahlerError> {
        if basis.nrows() != 2 * ambient_cdim {
            return Err(KahlerError::DimensionMismatch {
                cdim: ambient_cdim,
                got: basis.nrows(),
            });
        }
        let k = basis.ncols();
        let residual = (basis.transpose() * &basis - DMatrix::identity(k, k)).amax();
        if residual > ORTHONORMAL_TOL {
            return Err(KahlerError::NotOrthonormal(residual));
        }
        Ok(Self { ambient_cdim, basis })
    }

    /// Orthonormalizes a list of linearly independent spanning vectors.
    pub fn from_spanning(ambient_cdim: usize, vectors: &[DVector<f64>]) -> Result<Self, KahlerError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != 2 * ambient_cdim) {
            return Err(KahlerError::DimensionMismatch {
                cdim: ambient_cdim,
                got: v.len(),
            });
        }
        if vectors.len() > 2 * ambient_cdim {
            return Err(KahlerError::InvalidDimension {
                cdim: ambient_cdim,
                k: vectors.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Self {
                ambient_cdim,
                basis: DMatrix::zeros(2 * ambient_cdim, 0),
            });
        }
        if orthonormal_span(&DMatrix::from_columns(vectors), 1e-9).ncols() != vectors.len() {
            return Err(KahlerError::DependentVectors);
        }
        Ok(Self {
            ambient_cdim,
            basis: gram_schmidt(2 * ambient_cdim, vectors),
        })
    }

    pub fn from_record(record: &SubspaceRecord) -> Result<Self, KahlerError> {
        let vectors: Vec<DVector<f64>> = record.basis.iter().map(|v| DVector::from_column_slice(v)).collect();
        Self::from_spanning(record.ambient_cdim, &vectors)
    }

    pub fn to_record(&self) -> SubspaceRecord {
        SubspaceRecord {
            ambient_cdim: self.ambient_cdim,
            basis: self.basis.column_iter().map(|c| c.iter().copied().collect()).collect(),
        }
    }

    pub fn ambient_cdim(&self) -> usize {
        self.ambient_cdim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }

    /// Distance of `v` from the subspace.
    pub fn distance(&self, v: &DVector<f64>) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Image under a real `2m × 2m` orthogonal matrix.
    pub fn transformed(&self, q: &DMatrix<f64>) -> Self {
        Self {
            ambient_cdim: self.ambient_cdim,
            basis: q * &self.basis,
        }
    }

    /// `true` iff `Jw ⊂ w`.
    pub fn is_complex(&self) -> bool {
        let jb = j_matrix(self.ambient_cdim) * &self.basis;
        (&jb - &self.basis * (self.basis.transpose() * &jb)).amax() < 1e-9
    }
}

fn gram_schmidt(rows: usize, vectors: &[DVector<f64>]) -> DMatrix<f64> {
    if vectors.is_empty() {
        return DMatrix::zeros(rows, 0);
    }
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        // Two passes keep the result orthonormal to machine precision.
        for _ in 0..2 {
            for q in &out {
                w -= q * q.dot(&w);
            }
        }
        out.push(w.normalize());
    }
    DMatrix::from_columns(&out)
}

/// `Jξ = Fξ + Pξ` relative to a subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct PfSplit {
    pub f: DVector<f64>,
    pub p: DVector<f64>,
}

impl PfSplit {
    /// Kähler angle of the unit vector the split was taken at.
    pub fn angle(&self) -> f64 {
        self.p.norm().atan2(self.f.norm())
    }
}

/// Splits `Jξ` into its components along `w` and along `w^⊥`.
pub fn pf_split(w: &RealSubspace, xi: &DVector<f64>) -> Result<PfSplit, KahlerError> {
    if xi.len() != 2 * w.ambient_cdim {
        return Err(KahlerError::DimensionMismatch {
            cdim: w.ambient_cdim,
            got: xi.len(),
        });
    }
    let residual = w.distance(xi).max((xi.norm() - 1.0).abs());
    if residual > 1e-9 {
        return Err(KahlerError::NotInSubspace(residual));
    }
    let jxi = apply_j(xi);
    let f = w.project(&jxi);
    let p = &jxi - &f;
    Ok(PfSplit { f, p })
}

/// Kähler angles with multiplicities, sorted by angle descending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KahlerProfile {
    entries: Vec<(f64, usize)>,
}

impl KahlerProfile {
    /// Sorts and validates raw `(angle, multiplicity)` pairs.
    pub fn from_entries(mut entries: Vec<(f64, usize)>) -> Self {
        entries.retain(|e| e.1 > 0);
        entries.sort_by(|a, b| b.0.total_cmp(&a.0));
        Self { entries }
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    /// Entries sorted by angle ascending.
    pub fn ascending(&self) -> Vec<(f64, usize)> {
        self.entries.iter().rev().copied().collect()
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Same angles within `tol` and identical multiplicities.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= tol)
    }

    /// `true` iff every angle in `[0, π/2)` has even multiplicity.
    pub fn satisfies_parity(&self) -> bool {
        self.entries
            .iter()
            .all(|&(angle, mult)| (FRAC_PI_2 - angle).abs() <= ANGLE_TOL || mult % 2 == 0)
    }

    /// The nonzero angles of `w^⊥` equal those of `w`; zero angles are
    /// determined by the dimension of the ambient space.
    pub fn complement_in(&self, ambient_cdim: usize) -> Self {
        let mut nonzero: Vec<(f64, usize)> = self.entries.iter().copied().filter(|e| e.0 > ANGLE_TOL).collect();
        let dim_c_nonzero: usize = nonzero.iter().map(|e| e.1).sum();
        let complex_here = self
            .entries
            .iter()
            .filter(|e| e.0 <= ANGLE_TOL)
            .map(|e| e.1)
            .sum::<usize>();
        let total = 2 * ambient_cdim;
        // C w_φ for nonzero φ occupies 2·dim w_φ real dimensions.
        let free = total - 2 * dim_c_nonzero - complex_here;
        if free > 0 {
            nonzero.push((0.0, free));
        }
        Self::from_entries(nonzero)
    }
}

impl Serialize for KahlerProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.ascending().serialize(s)
    }
}

/// One block `W_φ` of the Kähler decomposition.
#[derive(Debug, Clone)]
pub struct AngleBlock {
    pub angle: f64,
    /// Orthonormal principal vectors spanning `W_φ`.
    pub basis: DMatrix<f64>,
}

/// Orthogonal decomposition `W = ⊕ W_φ`, blocks sorted by angle descending.
#[derive(Debug, Clone)]
pub struct KahlerDecomposition {
    pub blocks: Vec<AngleBlock>,
}

impl KahlerDecomposition {
    pub fn profile(&self) -> KahlerProfile {
        KahlerProfile::from_entries(self.blocks.iter().map(|b| (b.angle, b.basis.ncols())).collect())
    }
}

/// Principal vectors and angles of `w`.
pub fn kahler_decomposition(w: &RealSubspace) -> KahlerDecomposition {
    let k = w.dim();
    if k == 0 {
        return KahlerDecomposition { blocks: Vec::new() };
    }
    let q = &w.basis;
    let jq = j_matrix(w.ambient_cdim) * q;
    let f = q.transpose() * &jq;
    let (_, vectors) = crate::numeric::sorted_symmetric_eigen(&(f.transpose() * &f));
    let mut principal: Vec<(f64, DVector<f64>)> = (0..k)
        .map(|i| {
            let y = vectors.column(i);
            let xi = q * y;
            let fxi = q * (&f * y);
            let pxi = &jq * y - &fxi;
            (pxi.norm().atan2(fxi.norm()), xi)
        })
        .collect();
    principal.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut blocks: Vec<(Vec<f64>, Vec<DVector<f64>>)> = Vec::new();
    for (angle, xi) in principal {
        match blocks.last_mut() {
            Some((angles, vecs)) if (angles.last().unwrap() - angle).abs() <= ANGLE_TOL => {
                angles.push(angle);
                vecs.push(xi);
            }
            _ => blocks.push((vec![angle], vec![xi])),
        }
    }
    KahlerDecomposition {
        blocks: blocks
            .into_iter()
            .map(|(angles, vecs)| AngleBlock {
                angle: angles.iter().sum::<f64>() / angles.len() as f64,
                basis: DMatrix::from_columns(&vecs),
            })
            .collect(),
    }
}

pub fn kahler_profile(w: &RealSubspace) -> KahlerProfile {
    kahler_decomposition(w).profile()
}

/// Profile with angles rounded to the clustering tolerance, suitable as a key.
pub fn congruence_invariant(w: &RealSubspace) -> KahlerProfile {
    let rounded = kahler_profile(w)
        .entries
        .into_iter()
        .map(|(a, m)| ((a / ANGLE_TOL).round() * ANGLE_TOL, m))
        .collect();
    KahlerProfile::from_entries(rounded)
}

/// `true` iff some unitary map carries `a` onto `b`.
pub fn congruent(a: &RealSubspace, b: &RealSubspace) -> bool {
    a.ambient_cdim == b.ambient_cdim && kahler_profile(a).approx_eq(&kahler_profile(b), 10.0 * ANGLE_TOL)
}

/// The single Kähler angle of `w`, if it has exactly one.
pub fn has_constant_angle(w: &RealSubspace) -> Option<f64> {
    match kahler_profile(w).entries.as_slice() {
        [(angle, _)] => Some(*angle),
        _ => None,
    }
}

/// Haar-distributed `k`-dimensional subspace of `C^m`, reproducible per seed.
pub fn random_subspace(m: usize, k: usize, seed: u64) -> Result<RealSubspace, KahlerError> {
    if k > 2 * m {
        return Err(KahlerError::InvalidDimension { cdim: m, k });
    }
    let mut rng = seeded_rng(seed);
    let vectors: Vec<DVector<f64>> = (0..k)
        .map(|_| DVector::from_fn(2 * m, |_, _| rng.sample(StandardNormal)))
        .collect();
    Ok(RealSubspace {
        ambient_cdim: m,
        basis: gram_schmidt(2 * m, &vectors),
    })
}

/// Haar-distributed unitary of `C^m` as a real `2m × 2m` matrix on interleaved coordinates.
pub fn random_unitary<R: Rng>(m: usize, rng: &mut R) -> DMatrix<f64> {
    let z = DMatrix::<Complex64>::from_fn(m, m, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let u = z.qr().q();
    realify(&u)
}

/// Real `2m × 2m` form of a complex `m × m` matrix.
pub fn realify(u: &DMatrix<Complex64>) -> DMatrix<f64> {
    let m = u.nrows();
    let mut out = DMatrix::zeros(2 * m, 2 * m);
    for j in 0..m {
        for k in 0..m {
            let z = u[(j, k)];
            out[(2 * j, 2 * k)] = z.re;
            out[(2 * j, 2 * k + 1)] = -z.im;
            out[(2 * j + 1, 2 * k)] = z.im;
            out[(2 * j + 1, 2 * k + 1)] = z.re;
        }
    }
    out
}

/// Orthogonal complement `w^⊥` in `C^m`.
pub fn complement(w: &RealSubspace) -> RealSubspace {
    RealSubspace {
        ambient_cdim: w.ambient_cdim,
        basis: orthogonal_complement(&w.basis),
    }
}
