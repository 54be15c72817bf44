//! Small dense linear-algebra helpers shared by the geometric modules.
//!
//! Complex vectors in `C^m` are stored as real vectors of length `2m` with
//! interleaved coordinates `[re_1, im_1, re_2, im_2, ...]`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Multiplication by `i` on interleaved coordinates: `(re, im) -> (-im, re)`.
pub fn apply_j(v: &DVector<f64>) -> DVector<f64> {
    debug_assert!(v.len().is_multiple_of(2));
    let mut out = DVector::zeros(v.len());
    for j in 0..v.len() / 2 {
        out[2 * j] = -v[2 * j + 1];
        out[2 * j + 1] = v[2 * j];
    }
    out
}

/// Matrix of the complex structure on `R^{2m}`.
pub fn j_matrix(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j[(2 * k, 2 * k + 1)] = -1.0;
        j[(2 * k + 1, 2 * k)] = 1.0;
    }
    j
}

/// Deterministic, platform independent generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 mixing of `(seed, stream, index)` into an independent sub-seed.
pub fn mix_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

// Dense decompositions go through faer: nalgebra's symmetric QR iteration
// returns inaccurate eigenvectors for some matrices with exact zero entries.
fn to_faer(m: &DMatrix<f64>) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m.read(i, j))
}

/// Singular values and right singular vectors sorted by ascending singular value.
pub(crate) fn ascending_svd(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.ncols();
    if m.nrows() == 0 {
        return (vec![0.0; n], DMatrix::identity(n, n));
    }
    let svd = to_faer(m).svd();
    let diag = svd.s_diagonal();
    // Right vectors past min(rows, cols) have singular value zero.
    let all: Vec<f64> = (0..n)
        .map(|i| if i < diag.nrows() { diag.read(i) } else { 0.0 })
        .collect();
    let vt = from_faer(svd.v());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| all[a].total_cmp(&all[b]));
    let values = order.iter().map(|&i| all[i]).collect();
    let mut v = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        v.set_column(col, &vt.column(i));
    }
    (values, v)
}

/// Number of singular values strictly above `abs_tol`.
pub fn numerical_rank(m: &DMatrix<f64>, abs_tol: f64) -> usize {
    let (values, _) = ascending_svd(m);
    values.iter().filter(|&&s| s > abs_tol).count()
}

/// `n - rank` for a square matrix.
pub fn nullity(m: &DMatrix<f64>, abs_tol: f64) -> usize {
    m.ncols() - numerical_rank(m, abs_tol)
}

/// Orthonormal basis (columns) of the `k` least-singular right directions of `m`.
pub fn null_space(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let (_, v) = ascending_svd(m);
    v.columns(0, k).into_owned()
}

/// Orthonormal basis of the column span of `vectors`, dropping directions
/// whose singular value is below `rel_tol` times the largest one.
pub fn orthonormal_span(vectors: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let rows = vectors.nrows();
    if vectors.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = to_faer(vectors).thin_svd();
    let u = from_faer(svd.u());
    let values: Vec<f64> = (0..svd.s_diagonal().nrows())
        .map(|i| svd.s_diagonal().read(i))
        .collect();
    let largest = values.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return DMatrix::zeros(rows, 0);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let keep: Vec<usize> = order.into_iter().filter(|&i| values[i] > rel_tol * largest).collect();
    let mut out = DMatrix::zeros(rows, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        out.set_column(col, &u.column(i));
    }
    out
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns `q` inside `R^dim`.
pub fn orthogonal_complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = q.nrows();
    let target = dim - q.ncols();
    let projector = DMatrix::identity(dim, dim) - q * q.transpose();
    let (_, vectors) = sorted_symmetric_eigen(&projector);
    vectors.columns(q.ncols(), target).into_owned()
}

/// Symmetric eigen-decomposition with eigenvalues in ascending order.
pub fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = to_faer(&sym).selfadjoint_eigendecomposition(faer::Side::Lower);
    let diag = eig.s().column_vector();
    let raw: Vec<f64> = (0..n).map(|i| diag.read(i)).collect();
    let u = from_faer(eig.u());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[a].total_cmp(&raw[b]));
    let values = order.iter().map(|&i| raw[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &u.column(i));
    }
    (values, vectors)
}

/// Eigenvalues of a real square matrix, in unspecified order.
pub fn complex_eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    to_faer(m)
        .eigenvalues::<faer::complex_native::c64>()
        .into_iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect()
}

/// Single-linkage clustering of complex points; returns index groups ordered
/// by their smallest member.
pub fn cluster_points(points: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(i);
    }
    groups
}

/// Groups sorted real values into `(mean, count)` clusters of single-linkage gap `tol`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((sum, count, last)) if (v - *last).abs() <= tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(s, c, _)| (s / c as f64, c)).collect()
}

/// Real parts of the roots of `coeffs[0] + coeffs[1] x + ...`, ascending and
/// repeated by multiplicity.
///
/// A root of multiplicity `m` leaves the companion matrix as a ring of `m`
/// eigenvalues of radius about `(ε S m! / |p^{(m)}|)^{1/m}`; such rings are
/// merged and the root is recovered as a simple root of `p^{(m−1)}`.
pub fn real_polynomial_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut companion = DMatrix::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -c[i] / lead;
    }
    let mut derivs = vec![c.clone()];
    for _ in 0..deg {
        let next = derivative(derivs.last().unwrap());
        derivs.push(next);
    }

    let mut clusters: Vec<(Complex64, usize, f64)> = complex_eigenvalues(&companion)
        .into_iter()
        .map(|z| (z, 1, polish_simple(&c, z)))
        .collect();
    // Merge pairs in order of separation relative to the ring radius, keeping a
    // merge only when the refined point is a genuine multiple root.
    loop {
        let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let ((zi, mi, _), (zj, mj, _)) = (clusters[i], clusters[j]);
                let m = mi + mj;
                let centre = (zi * mi as f64 + zj * mj as f64) / m as f64;
                let ratio = (zi - zj).norm() / (8.0 * ring_radius(&derivs, centre.re, m));
                if ratio <= 1.0 {
                    candidates.push((i, j, ratio));
                }
            }
        }
        candidates.sort_by(|a, b| a.2.total_cmp(&b.2));
        let merged = candidates.into_iter().find_map(|(i, j, _)| {
            let ((zi, mi, _), (zj, mj, _)) = (clusters[i], clusters[j]);
            let m = mi + mj;
            let centre = (zi * mi as f64 + zj * mj as f64) / m as f64;
            refine_multiple(&derivs, centre.re, m).map(|x| (i, j, (centre, m, x)))
        });
        let Some((i, j, cluster)) = merged else { break };
        clusters[i] = cluster;
        clusters.swap_remove(j);
    }

    let mut roots = Vec::with_capacity(deg);
    for (_, m, x) in clusters {
        roots.extend(std::iter::repeat_n(x, m));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &a)| i as f64 * a).collect()
}

/// Sum of `|a_i| |x|^i`, the rounding scale of a Horner evaluation at `x`.
fn eval_scale(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &a| acc * x.abs() + a.abs())
}

/// Expected spread of the computed eigenvalues around an `m`-fold root at `x`.
fn ring_radius(derivs: &[Vec<f64>], x: f64, m: usize) -> f64 {
    let top = eval_with_derivative(&derivs[m], x).0.abs();
    let factorial: f64 = (1..=m).map(|i| i as f64).product();
    let scale = eval_scale(&derivs[0], x).max(f64::MIN_POSITIVE);
    // Companion-matrix backward error is a small multiple of ε.
    (64.0 * f64::EPSILON * scale * factorial / top).powf(1.0 / m as f64)
}

/// Newton-polished real part of a numerically real eigenvalue; ring members
/// keep their real parts so the root sum stays the trace.
fn polish_simple(coeffs: &[f64], z: Complex64) -> f64 {
    let mut x = z.re;
    if z.im.abs() > 1e-12 * (1.0 + x.abs()) {
        return x;
    }
    for _ in 0..3 {
        let (p, dp) = eval_with_derivative(coeffs, x);
        if dp.abs() <= f64::EPSILON * (1.0 + p.abs()) {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
            break;
        }
        x -= step;
    }
    x
}

/// Newton on `p^{(m−1)}`, where an `m`-fold root is simple. `None` unless the
/// lower derivatives vanish there to rounding level.
fn refine_multiple(derivs: &[Vec<f64>], centre: f64, m: usize) -> Option<f64> {
    let top = &derivs[m - 1];
    let mut x = centre;
    for _ in 0..50 {
        let (p, dp) = eval_with_derivative(top, x);
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if !x.is_finite() || step.abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    let vanishes = derivs[..m - 1]
        .iter()
        .all(|d| eval_with_derivative(d, x).0.abs() <= 1e-12 * eval_scale(d, x));
    let near = (x - centre).abs() <= 8.0 * ring_radius(derivs, centre, m);
    (x.is_finite() && vanishes && near).then_some(x)
}

/// Horner evaluation of a polynomial (ascending coefficients) and its derivative.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &a in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Product of two polynomials in ascending coefficient order.
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p^e` for a polynomial in ascending coefficient order.
pub fn poly_pow(p: &[f64], e: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for _ in 0..e {
        out = poly_mul(&out, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squares_to_minus_identity() {
        let j = j_matrix(3);
        let j2 = &j * &j;
        assert!((j2 + DMatrix::identity(6, 6)).norm() == 0.0);
        let v = DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(apply_j(&v), j_matrix(2) * v);
    }

    #[test]
    fn roots_of_product_polynomial() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let roots = real_polynomial_roots(&[6.0, -7.0, 0.0, 1.0]);
        let expected = [-3.0, 1.0, 2.0];
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-13);
        }
    }

    #[test]
    fn high_multiplicity_roots_are_recovered() {
        // (x - 0.574)^7 (x - 1.4)^3 (x + 0.2)
        let p = poly_mul(
            &poly_mul(&poly_pow(&[-0.574, 1.0], 7), &poly_pow(&[-1.4, 1.0], 3)),
            &[0.2, 1.0],
        );
        let roots = real_polynomial_roots(&p);
        let expected: Vec<f64> = [(-0.2, 1), (0.574, 7), (1.4, 3)]
            .iter()
            .flat_map(|&(x, m)| std::iter::repeat_n(x, m))
            .collect();
        assert_eq!(roots.len(), expected.len());
        for (r, e) in roots.iter().zip(&expected) {
            assert!((r - e).abs() < 1e-10, "{roots:?}");
        }
    }

    #[test]
    fn close_simple_roots_stay_apart() {
        let p = poly_mul(&poly_mul(&[-1.0, 1.0], &[-(1.0 + 1e-4), 1.0]), &[-3.0, 1.0]);
        let roots = real_polynomial_roots(&p);
        // Separation 1e-4 conditions each root to about ε S / |p'| ≈ 1e-11.
        assert!(
            (roots[0] - 1.0).abs() < 1e-10 && (roots[1] - 1.0001).abs() < 1e-10,
            "{roots:?}"
        );
    }

    #[test]
    fn complement_is_orthonormal() {
        let q = orthonormal_span(&DMatrix::from_row_slice(3, 1, &[1.0, 1.0, 0.0]), 1e-12);
        let c = orthogonal_complement(&q);
        assert_eq!(c.ncols(), 2);
        assert!((c.transpose() * &c - DMatrix::identity(2, 2)).norm() < 1e-14);
        assert!((q.transpose() * &c).norm() < 1e-14);
    }

    #[test]
    fn sorted_clusters() {
        let c = cluster_sorted(&[0.0, 1e-9, 1.0, 2.0, 2.0 + 5e-8], 1e-7);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].1, 2);
        assert_eq!(c[2].1, 2);
    }
}
