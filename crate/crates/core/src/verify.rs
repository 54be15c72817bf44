//! Randomized verification of the structural invariants of every module.
//!
//! Each suite draws a fixed number of samples. Sample `i` of suite `s` uses
//! its own generator seeded by `mix_seed(seed, s, i)`, so samples run in
//! parallel and the summary is identical for identical configurations.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Display;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{cartan_residual, check_type_constraints, enumerate_profiles, inside_cartan_phi};
use crate::hopf_lift::{ads_inner, lift_shape_operator, project_spectrum, AdSPoint, LiftedShapeData, Projection};
use crate::indefinite_linalg::{classify_jordan, JordanType, RANK_TOL};
use crate::kahler_angle::{
    complement, kahler_decomposition, kahler_profile, random_subspace, random_unitary, KahlerProfile, RealSubspace,
    ANGLE_TOL,
};
use crate::numeric::{j_matrix, mix_seed, seeded_rng};
use crate::solvable_model::{build_w, AnModel, AnPoint, AnVector, SubmanifoldW};
use crate::tube_geometry::{
    jacobi_scalars, numeric_principal_curvatures, numeric_shape_data, parallel_data, standard_spectrum, tube_char_poly,
    tube_mean_curvature, tube_spectrum_at, HopfFamily, TubeSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cartan,
    Jordan,
    Tube,
    Kahler,
    Group,
    Lift,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Cartan,
        Suite::Jordan,
        Suite::Tube,
        Suite::Kahler,
        Suite::Group,
        Suite::Lift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cartan => "cartan",
            Suite::Jordan => "jordan",
            Suite::Tube => "tube",
            Suite::Kahler => "kahler",
            Suite::Group => "group",
            Suite::Lift => "lift",
        }
    }

    /// Library module whose invariants the suite exercises.
    pub fn module(self) -> &'static str {
        match self {
            Suite::Cartan => "classifier",
            Suite::Jordan | Suite::Lift => "hopf_lift",
            Suite::Tube => "tube_geometry",
            Suite::Kahler => "kahler_angle",
            Suite::Group => "solvable_model",
        }
    }

    pub fn samples(self) -> usize {
        match self {
            Suite::Cartan => 200,
            Suite::Jordan => 50,
            Suite::Tube => 200,
            Suite::Kahler => 1000,
            Suite::Group => 500,
            Suite::Lift => 50,
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of cartan, jordan, tube, kahler, group, lift"))
    }
}

/// `tol` bounds the invariants stated at the default `1e-9`; invariants with
/// their own natural scale (exact identities, `1e-8` round trips) keep it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub curvature: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            curvature: -4.0,
            tol: 1e-9,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub module: &'static str,
    pub invariant: &'static str,
    pub sample: usize,
    pub inputs: Value,
    pub residual: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantSummary {
    pub invariant: &'static str,
    pub checks: usize,
    pub passed: usize,
    pub max_residual: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub module: &'static str,
    pub samples: usize,
    pub checks: usize,
    pub passed: usize,
    pub invariants: Vec<InvariantSummary>,
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub curvature: f64,
    pub tol: f64,
    pub suites: Vec<SuiteSummary>,
    pub passed: bool,
}

struct Check {
    invariant: &'static str,
    residual: f64,
    bound: f64,
    inputs: Value,
}

impl Check {
    fn new(invariant: &'static str, residual: f64, bound: f64, inputs: Value) -> Self {
        Self {
            invariant,
            residual,
            bound,
            inputs,
        }
    }

    /// A yes/no invariant: residual 0 when it holds, 1 otherwise.
    fn flag(invariant: &'static str, holds: bool, inputs: Value) -> Self {
        Self::new(invariant, if holds { 0.0 } else { 1.0 }, 0.0, inputs)
    }

    fn passed(&self) -> bool {
        // NaN residuals fail.
        self.residual <= self.bound
    }
}

type Sample = Result<Vec<Check>, (Value, String)>;

trait Context<T> {
    fn with(self, inputs: &Value) -> Result<T, (Value, String)>;
}

impl<T, E: Display> Context<T> for Result<T, E> {
    fn with(self, inputs: &Value) -> Result<T, (Value, String)> {
        self.map_err(|e| (inputs.clone(), e.to_string()))
    }
}

pub fn verify_suites(config: &VerifyConfig, suites: &[Suite]) -> VerifySummary {
    let mut ordered: Vec<Suite> = suites.to_vec();
    ordered.sort();
    ordered.dedup();
    let summaries: Vec<SuiteSummary> = ordered.iter().map(|&suite| run_suite(config, suite)).collect();
    let passed = summaries.iter().all(|s| s.failures.is_empty());
    VerifySummary {
        seed: config.seed,
        curvature: config.curvature,
        tol: config.tol,
        suites: summaries,
        passed,
    }
}

fn run_suite(config: &VerifyConfig, suite: Suite) -> SuiteSummary {
    let samples = suite.samples();
    let results: Vec<Sample> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(mix_seed(config.seed, suite.stream(), i as u64));
            match suite {
                Suite::Cartan => cartan_sample(config, &mut rng),
                Suite::Jordan => jordan_sample(config, &mut rng),
                Suite::Tube => tube_sample(config, &mut rng, i),
                Suite::Kahler => kahler_sample(&mut rng),
                Suite::Group => group_sample(config, &mut rng, i),
                Suite::Lift => lift_sample(config, &mut rng),
            }
        })
        .collect();

    let mut invariants: Vec<InvariantSummary> = Vec::new();
    let mut failures = Vec::new();
    let (mut checks, mut passed) = (0, 0);
    for (sample, result) in results.into_iter().enumerate() {
        let list = result.unwrap_or_else(|(inputs, error)| {
            vec![Check::new(
                "evaluation",
                f64::INFINITY,
                0.0,
                json!({ "inputs": inputs, "error": error }),
            )]
        });
        for check in list {
            let ok = check.passed();
            checks += 1;
            passed += ok as usize;
            let entry = match invariants.iter_mut().position(|s| s.invariant == check.invariant) {
                Some(i) => &mut invariants[i],
                None => {
                    invariants.push(InvariantSummary {
                        invariant: check.invariant,
                        checks: 0,
                        passed: 0,
                        max_residual: 0.0,
                        bound: check.bound,
                    });
                    invariants.last_mut().unwrap()
                }
            };
            entry.checks += 1;
            entry.passed += ok as usize;
            entry.max_residual = entry.max_residual.max(check.residual);
            if !ok {
                failures.push(FailureRecord {
                    module: suite.module(),
                    invariant: check.invariant,
                    sample,
                    inputs: check.inputs,
                    residual: check.residual,
                    bound: check.bound,
                });
            }
        }
    }
    SuiteSummary {
        suite,
        module: suite.module(),
        samples,
        checks,
        passed,
        invariants,
        failures,
    }
}

fn cartan_sample(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Sample {
    let c = config.curvature;
    let s = (-c).sqrt();
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let lambda = sign * rng.gen_range(0.01..0.99) * s / 2.0;
    let (m1, m2) = (rng.gen_range(1..8usize), rng.gen_range(1..8usize));
    let spectrum = [(lambda, m1), (-c / (4.0 * lambda), m2)];
    let inputs = json!({ "spectrum": spectrum, "c": c });
    let mut out = Vec::new();
    for i in 0..2 {
        let residual = cartan_residual(&spectrum, i, c).with(&inputs)?;
        out.push(Check::new(
            "type_one_pair_residual",
            residual.abs(),
            config.tol,
            inputs.clone(),
        ));
    }
    for _ in 0..50 {
        let x = rng.gen_range(-3.0 * s..3.0 * s);
        let p = rng.gen_range(0.01 * s..3.0 * s);
        let inputs = json!({ "x": x, "p": p, "c": c });
        let filter = inside_cartan_phi(x, p, c).with(&inputs)?;
        out.push(Check::flag(
            "phi_filter_sign",
            (filter.value > 0.0) == filter.positive_iff,
            inputs,
        ));
    }
    Ok(out)
}

/// Radius whose dimensionless value `√−c·r/2` is uniform in `[lo, hi)`; at
/// `c = −4` this is `r` itself, and every curvature sees the same shapes.
fn radius(rng: &mut ChaCha8Rng, lo: f64, hi: f64, s: f64) -> f64 {
    rng.gen_range(lo..hi) * 2.0 / s
}

fn expanded_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / (1.0 + y.abs()))
        .fold(0.0, f64::max)
}

fn random_normal(spec: &TubeSpec, rng: &mut ChaCha8Rng) -> AnVector {
    let normal = spec.sub.normal_basis();
    let weights: Vec<f64> = (0..normal.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut xi = AnVector::zero(spec.n());
    for (v, w) in normal.iter().zip(&weights) {
        xi = &xi + &(v * *w);
    }
    let norm = xi.norm();
    if norm < 1e-3 {
        normal[0].clone()
    } else {
        &xi * (1.0 / norm)
    }
}

fn random_tube(n: usize, k: usize, r: f64, c: f64, rng: &mut ChaCha8Rng) -> Result<TubeSpec, String> {
    let model = AnModel::new(n, c).map_err(|e| e.to_string())?;
    let w_perp = random_subspace(n - 1, k, rng.gen()).map_err(|e| e.to_string())?;
    let sub = build_w(&model, &complement(&w_perp)).map_err(|e| e.to_string())?;
    TubeSpec::new(sub, r).map_err(|e| e.to_string())
}

fn jordan_sample(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Sample {
    let c = config.curvature;
    let s = (-c).sqrt();
    let n = rng.gen_range(2..=6usize);
    let r = radius(rng, 0.05, 3.0, s);
    let k = rng.gen_range(0..n);
    let mut out = Vec::new();
    let families = [
        (HopfFamily::TubeChk { k }, JordanType::I),
        (HopfFamily::Horosphere, JordanType::II),
        (HopfFamily::TubeRhn, JordanType::IV),
    ];
    for (family, expected) in families {
        let inputs = json!({ "family": format!("{family:?}"), "n": n, "r": r, "c": c });
        let down = standard_spectrum(family, n, r, c).with(&inputs)?;
        let op = lift_shape_operator(&LiftedShapeData::hopf(down.clone(), c).with(&inputs)?).with(&inputs)?;
        let cls = classify_jordan(&op, RANK_TOL).with(&inputs)?;
        out.push(Check::flag("lift_type", cls.jtype == expected, inputs.clone()));
        let residual = match project_spectrum(&cls, c) {
            Ok(Projection::Spectrum(up)) => {
                let hopf_gap = match (up.hopf_value, down.hopf_value) {
                    (Some(a), Some(b)) => (a - b).abs() / (1.0 + b.abs()),
                    _ => f64::INFINITY,
                };
                expanded_distance(&up.expanded(), &down.expanded()).max(hopf_gap)
            }
            _ => f64::INFINITY,
        };
        out.push(Check::new("round_trip_spectrum", residual, 1e-8, inputs.clone()));
        match cls.jtype {
            JordanType::I if cls.real_eigs.len() == 2 => {
                let pairs: Vec<(f64, usize)> = cls.real_eigs.iter().map(|e| (e.value, e.alg_mult)).collect();
                for i in 0..2 {
                    let res = cartan_residual(&pairs, i, c).with(&inputs)?;
                    out.push(Check::new(
                        "lifted_cartan_residual",
                        res.abs(),
                        config.tol,
                        inputs.clone(),
                    ));
                }
            }
            JordanType::IV => {
                let (a, b) = cls.complex_pair.unwrap_or((f64::NAN, f64::NAN));
                for e in &cls.real_eigs {
                    let l = e.value;
                    let xiao = a * (4.0 * l * l - c) - l * (4.0 * a * a + 4.0 * b * b - c);
                    out.push(Check::new("xiao_type_iv", xiao.abs(), config.tol, inputs.clone()));
                    let formula = 4.0 * c * l / (c - 4.0 * l * l);
                    out.push(Check::new(
                        "hopf_value_formula",
                        (2.0 * a - formula).abs(),
                        config.tol,
                        inputs.clone(),
                    ));
                }
                out.push(Check::new(
                    "a2_b2_equality",
                    (4.0 * a * a + 4.0 * b * b + c).abs(),
                    config.tol,
                    inputs.clone(),
                ));
                out.push(Check::flag("hopf_value_range", (2.0 * a).abs() < s, inputs.clone()));
            }
            _ => {}
        }
    }

    // Tubes around W_w at normals with nonzero Kähler angle lift to Type III.
    let n = rng.gen_range(2..=5usize);
    let k = rng.gen_range(1..=2 * n - 2);
    let r = radius(rng, 0.1, 2.5, s);
    let spec = random_tube(n, k, r, c, rng).map_err(|e| (json!({ "n": n, "k": k, "r": r }), e))?;
    let xi = random_normal(&spec, rng);
    let inputs = json!({ "n": n, "k": k, "r": r, "c": c, "xi": xi });
    let phi = spec.normal_angle(&xi).with(&inputs)?;
    if phi > 1e-3 {
        let data = LiftedShapeData::from_shape(&numeric_shape_data(&spec, &xi).with(&inputs)?, c).with(&inputs)?;
        let cls = classify_jordan(&lift_shape_operator(&data).with(&inputs)?, RANK_TOL).with(&inputs)?;
        out.push(Check::flag(
            "w_tube_type_three",
            cls.jtype == JordanType::III,
            inputs.clone(),
        ));
        let residual = match project_spectrum(&cls, c) {
            Ok(Projection::TubeAroundW { radius, .. }) => (radius - r).abs() / (1.0 + r),
            _ => f64::INFINITY,
        };
        out.push(Check::new("w_tube_radius", residual, 1e-8, inputs));
    }
    Ok(out)
}

fn tube_sample(config: &VerifyConfig, rng: &mut ChaCha8Rng, index: usize) -> Sample {
    let c = config.curvature;
    let s = (-c).sqrt();
    let mut out = Vec::new();

    let n = rng.gen_range(2..=6usize);
    let k = rng.gen_range(1..=2 * n - 3);
    let r = (3.0 - rng.gen_range(0.0..3.0)) * 2.0 / s;
    let phi = if k == 1 {
        FRAC_PI_2
    } else {
        rng.gen_range(0.0..=FRAC_PI_2)
    };
    let inputs = json!({ "n": n, "k": k, "r": r, "phi": phi, "c": c });
    let root_sum = tube_char_poly(n, k, r, phi, c).with(&inputs)?.root_sum();
    let h = tube_mean_curvature(n, k, r, c).with(&inputs)?;
    out.push(Check::new(
        "trace_identity",
        (root_sum - h).abs() / h.abs().max(1.0),
        config.tol,
        inputs,
    ));

    if index < 100 {
        let n = rng.gen_range(2..=5usize);
        let k = rng.gen_range(1..=2 * n - 2);
        let r = radius(rng, 0.1, 2.5, s);
        let spec = random_tube(n, k, r, c, rng).map_err(|e| (json!({ "n": n, "k": k, "r": r }), e))?;
        let xi = random_normal(&spec, rng);
        let inputs = json!({ "n": n, "k": k, "r": r, "c": c, "xi": xi });
        let numeric = numeric_principal_curvatures(&spec, &xi).with(&inputs)?;
        let formula = tube_spectrum_at(&spec, &xi).with(&inputs)?.expanded();
        out.push(Check::new(
            "numeric_vs_char_poly",
            expanded_distance(&numeric, &formula),
            1e-8,
            inputs,
        ));

        let r = (5.0 - rng.gen_range(0.0..5.0)) * 2.0 / s;
        let inputs = json!({ "r": r, "c": c });
        let mu = parallel_data(r, 0.0, c).with(&inputs)?.mu;
        let g = jacobi_scalars(mu, r, c).with(&inputs)?.g;
        out.push(Check::new("focal_jacobi_zero", g.abs(), 1e-12, inputs.clone()));
        if r > 1e-6 {
            let lambda = parallel_data(r, r - 1e-6, c).with(&inputs)?.lambda;
            out.push(Check::new("focal_lambda_limit", lambda.abs(), 1e-5 * s, inputs));
        }
    }
    Ok(out)
}

/// Largest angle difference between matching entries, or `∞` if the shapes differ.
pub fn profile_distance(a: &KahlerProfile, b: &KahlerProfile) -> f64 {
    let (a, b) = (a.entries(), b.entries());
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.1 != y.1) {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x.0 - y.0).abs()).fold(0.0, f64::max)
}

fn nonzero_part(p: &KahlerProfile) -> KahlerProfile {
    KahlerProfile::from_entries(p.entries().iter().copied().filter(|e| e.0 > ANGLE_TOL).collect())
}

fn kahler_sample(rng: &mut ChaCha8Rng) -> Sample {
    let m = rng.gen_range(1..=5usize);
    let k = rng.gen_range(0..=2 * m);
    let seed: u64 = rng.gen();
    let inputs = json!({ "m": m, "k": k, "subspace_seed": seed });
    let w = random_subspace(m, k, seed).with(&inputs)?;
    let u = random_unitary(m, rng);
    let profile = kahler_profile(&w);
    let mut out = vec![
        Check::new(
            "unitary_invariance",
            profile_distance(&profile, &kahler_profile(&w.transformed(&u))),
            1e-8,
            inputs.clone(),
        ),
        Check::new(
            "complement_matching",
            profile_distance(&nonzero_part(&profile), &nonzero_part(&kahler_profile(&complement(&w)))),
            1e-8,
            inputs.clone(),
        ),
        Check::flag(
            "parity",
            profile.satisfies_parity() && profile.dim() == k,
            inputs.clone(),
        ),
    ];
    let q = w.basis();
    let jm = j_matrix(m);
    let f = q.transpose() * &jm * q;
    out.push(Check::new(
        "f_skew_adjoint",
        (&f + f.transpose()).amax(),
        1e-10,
        inputs.clone(),
    ));
    let mut square = 0.0f64;
    for block in kahler_decomposition(&w).blocks {
        for xi in block.basis.column_iter() {
            let ffxi = w.project(&(&jm * w.project(&(&jm * xi))));
            square = square.max((ffxi + xi * block.angle.cos().powi(2)).norm());
        }
    }
    out.push(Check::new("f_squared_on_blocks", square, 1e-9, inputs));
    Ok(out)
}

fn random_an_vector(n: usize, rng: &mut ChaCha8Rng) -> AnVector {
    AnVector {
        a: rng.gen_range(-1.5..1.5),
        u: (0..2 * (n - 1)).map(|_| rng.gen_range(-1.5..1.5)).collect(),
        x: rng.gen_range(-1.5..1.5),
    }
}

/// Random element of the subalgebra `s_w`, scaled by `scale`.
fn random_tangent(sub: &SubmanifoldW, scale: f64, rng: &mut ChaCha8Rng) -> AnVector {
    let mut v = AnVector::zero(sub.model().n());
    for t in sub.tangent_basis() {
        v = &v + &(&t * rng.gen_range(-scale..scale));
    }
    v
}

fn random_w(n: usize, c: f64, rng: &mut ChaCha8Rng) -> Result<SubmanifoldW, (Value, String)> {
    let k = rng.gen_range(1..=2 * n - 2);
    let seed: u64 = rng.gen();
    let inputs = json!({ "n": n, "k": k, "subspace_seed": seed });
    let model = AnModel::new(n, c).with(&inputs)?;
    let w_perp = random_subspace(n - 1, k, seed).with(&inputs)?;
    build_w(&model, &complement(&w_perp)).with(&inputs)
}

fn group_sample(config: &VerifyConfig, rng: &mut ChaCha8Rng, index: usize) -> Sample {
    let c = config.curvature;
    let tol = config.tol;
    let n = rng.gen_range(2..=5usize);
    let m = AnModel::new(n, c).with(&json!({ "n": n, "c": c }))?;
    let (x, y, z) = (
        random_an_vector(n, rng),
        random_an_vector(n, rng),
        random_an_vector(n, rng),
    );
    let inputs = json!({ "n": n, "c": c, "x": x, "y": y, "z": z });
    let nabla = |a: &AnVector, b: &AnVector| m.levi_civita(a, b);
    let torsion =
        &(&nabla(&x, &y).with(&inputs)? - &nabla(&y, &x).with(&inputs)?) - &m.bracket(&x, &y).with(&inputs)?;
    let metric = nabla(&x, &y).with(&inputs)?.dot(&z) + y.dot(&nabla(&x, &z).with(&inputs)?);
    let closed = m.curvature_tensor(&x, &y, &z).with(&inputs)?;
    let from_connection = m.curvature_from_connection(&x, &y, &z).with(&inputs)?;
    let (g, h, k) = (AnPoint(x.clone()), AnPoint(y.clone()), AnPoint(z.clone()));
    let left = m
        .group_product(&m.group_product(&g, &h).with(&inputs)?, &k)
        .with(&inputs)?;
    let right = m
        .group_product(&g, &m.group_product(&h, &k).with(&inputs)?)
        .with(&inputs)?;
    let mut out = vec![
        Check::new("torsion_free", torsion.norm(), tol, inputs.clone()),
        Check::new("metric_compatible", metric.abs(), tol, inputs.clone()),
        Check::new(
            "curvature_from_connection",
            (&closed - &from_connection).norm() / (1.0 + closed.norm()),
            tol,
            inputs.clone(),
        ),
        Check::new("associativity", (&left.0 - &right.0).norm(), 1e-10, inputs),
    ];

    if index < 100 {
        let sub = random_w(n, c, rng)?;
        let inputs = json!({ "n": n, "c": c, "w": sub.w().to_record() });
        for xi in sub.normal_basis() {
            let trace = sub.shape_operator(&xi).with(&inputs)?.trace();
            out.push(Check::new("w_minimal", trace.abs(), 0.0, inputs.clone()));
        }
        // Horocycles through points of S_w in directions of w stay in S_w.
        let w_basis = sub.w().basis();
        let coeffs = DVector::from_fn(w_basis.ncols(), |_, _| rng.gen_range(-1.0..1.0));
        let direction = w_basis * coeffs;
        if direction.norm() > 1e-3 {
            let u = m.root(&(&direction / direction.norm()));
            let p = AnPoint(random_tangent(&sub, 1.0, rng));
            let t = rng.gen_range(-2.0..=2.0);
            let inputs = json!({ "n": n, "c": c, "w": sub.w().to_record(), "p": p.0, "u": u, "t": t });
            let point = m.horocycle_point(&p, &u, t).with(&inputs)?;
            out.push(Check::new(
                "horocycle_in_w",
                sub.membership_residual(&point),
                tol,
                inputs,
            ));
        }
    }
    if index < 20 {
        let sub = random_w(n, c, rng)?;
        let mut g = AnPoint::identity(n);
        for _ in 0..200 {
            g = m
                .group_product(&g, &AnPoint(random_tangent(&sub, 0.3, rng)))
                .with(&json!({ "n": n }))?;
        }
        let inputs = json!({ "n": n, "c": c, "w": sub.w().to_record(), "factors": 200 });
        out.push(Check::new("s_w_closure", sub.membership_residual(&g), tol, inputs));
    }
    Ok(out)
}

fn lift_sample(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Sample {
    let c = config.curvature;
    let s = (-c).sqrt();
    let n = rng.gen_range(2..=6usize);
    let mut out = Vec::new();

    let mut ball: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = ball.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let shrink = rng.gen_range(0.0..0.95) / norm.max(1e-12);
    ball.iter_mut().for_each(|z| *z *= shrink);
    let inputs = json!({ "ball_point": ball.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "c": c });
    let q = AdSPoint::from_ball(&ball, c).with(&inputs)?;
    let v = q.vertical_field(c).with(&inputs)?;
    let radius2 = q.radius() * q.radius();
    out.push(Check::new(
        "ads_quadric",
        (ads_inner(q.z(), q.z()).with(&inputs)? + radius2).abs() / radius2,
        1e-10,
        inputs.clone(),
    ));
    out.push(Check::new(
        "vertical_field_norm",
        (ads_inner(&v, &v).with(&inputs)? + 1.0).abs(),
        1e-10,
        inputs,
    ));

    let r = radius(rng, 0.05, 3.0, s);
    let k = rng.gen_range(0..n);
    for family in [HopfFamily::TubeChk { k }, HopfFamily::TubeRhn, HopfFamily::Horosphere] {
        let inputs = json!({ "family": format!("{family:?}"), "n": n, "r": r, "c": c });
        let down = standard_spectrum(family, n, r, c).with(&inputs)?;
        let op = lift_shape_operator(&LiftedShapeData::hopf(down.clone(), c).with(&inputs)?).with(&inputs)?;
        let exact: f64 = down.expanded().iter().sum();
        out.push(Check::new(
            "trace_preserved",
            (op.matrix().trace() - exact).abs(),
            0.0,
            inputs,
        ));
    }

    // Type II needs the single curvature ±√−c/2.
    for lambda in [s / 2.0, rng.gen_range(0.2..1.8) * s / 2.0] {
        let mut values = vec![lambda; 2 * n - 2];
        values.push(2.0 * lambda);
        let inputs = json!({ "n": n, "lambda": lambda, "c": c });
        let down = crate::tube_geometry::TubeSpectrum::from_values(values, Some(2.0 * lambda));
        let op = lift_shape_operator(&LiftedShapeData::hopf(down, c).with(&inputs)?).with(&inputs)?;
        let jtype = classify_jordan(&op, RANK_TOL).with(&inputs)?.jtype;
        let at_half = (lambda.abs() - s / 2.0).abs() <= 1e-12 * s;
        out.push(Check::flag(
            "type_two_only_at_half_sqrt_minus_c",
            (jtype == JordanType::II) == at_half,
            inputs,
        ));
    }

    // Constant-angle tubes off the Hopf direction give admissible Type III lifts.
    let n = rng.gen_range(2..=5usize);
    let r = radius(rng, 0.1, 2.5, s);
    // A free angle block of dimension k spans k complex dimensions of C^{n−1}.
    let (k, phi) = if n < 3 || rng.gen_bool(0.3) {
        (1, FRAC_PI_2)
    } else {
        (2 * rng.gen_range(1..=(n - 1) / 2), rng.gen_range(0.1..FRAC_PI_2))
    };
    let inputs = json!({ "n": n, "k": k, "phi": phi, "r": r, "c": c });
    let w_perp = constant_angle_subspace(n - 1, k, phi).with(&inputs)?;
    let model = AnModel::new(n, c).with(&inputs)?;
    let spec = TubeSpec::new(build_w(&model, &complement(&w_perp)).with(&inputs)?, r).with(&inputs)?;
    let xi = random_normal(&spec, rng);
    let data = LiftedShapeData::from_shape(&numeric_shape_data(&spec, &xi).with(&inputs)?, c).with(&inputs)?;
    let cls = classify_jordan(&lift_shape_operator(&data).with(&inputs)?, RANK_TOL).with(&inputs)?;
    let report = check_type_constraints(&cls, c, config.tol);
    out.push(Check::flag(
        "constant_angle_type_three",
        cls.jtype == JordanType::III && report.admissible,
        inputs,
    ));
    Ok(out)
}

/// A `k`-dimensional subspace of `C^m` of constant Kähler angle `phi`.
fn constant_angle_subspace(m: usize, k: usize, phi: f64) -> Result<RealSubspace, String> {
    let n = m + 1;
    let strata = enumerate_profiles(n, k).map_err(|e| e.to_string())?;
    let stratum = if (phi - FRAC_PI_2).abs() <= ANGLE_TOL {
        strata.into_iter().find(|s| s.totally_real_dim == k)
    } else {
        strata.into_iter().find(|s| s.free_blocks == [k])
    }
    .ok_or_else(|| format!("no constant-angle stratum for k = {k} in C^{m}"))?;
    let angles: Vec<f64> = stratum.free_blocks.iter().map(|_| phi).collect();
    Ok(stratum.witness(m, &angles))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_default_seed() {
        let summary = verify_suites(&VerifyConfig::default(), &Suite::ALL);
        for suite in &summary.suites {
            assert!(
                suite.failures.is_empty(),
                "{}: {:?}",
                suite.suite,
                suite.failures.first()
            );
        }
        assert!(summary.passed);
    }

    #[test]
    fn summaries_are_deterministic() {
        let config = VerifyConfig {
            seed: 42,
            ..Default::default()
        };
        let a = serde_json::to_string(&verify_suites(&config, &[Suite::Kahler, Suite::Jordan])).unwrap();
        let b = serde_json::to_string(&verify_suites(&config, &[Suite::Jordan, Suite::Kahler])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_suite_set() {
        let summary = verify_suites(&VerifyConfig::default(), &[]);
        assert!(summary.suites.is_empty() && summary.passed);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("all".parse::<Suite>().is_err());
    }
}
