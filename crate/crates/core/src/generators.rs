//! Deterministic, seeded generation of all constrained instances the
//! checkers consume: SPD matrices, sandwich pairs, commuting pairs,
//! g-image sandwich pairs, probe vectors, and scalar sequences.
//!
//! Every generator is a pure function of (parameters, seed). The PRNG is
//! xoshiro256++ with splitmix64 seeding (see [`crate::prng`]) and each
//! generator draws from a single stream in fixed code order, so outputs are
//! bit-identical across runs and platforms.
//!
//! Sandwich constants are never trusted from targets: the realized `(s, t)`
//! are measured as the extreme eigenvalues of `A^{−1/2} B A^{−1/2}`, which
//! makes them the tightest constants satisfying `sA ≤ B ≤ tA` and keeps
//! every bound check as sharp as possible.

use crate::funcatalog::FunctionDescriptor;
use crate::matcore::{self, Domain, MatError, Matrix, ScalarFn, SpectralDecomp, SymMatrix};
use crate::prng::Prng;
use thiserror::Error;

/// Default spectrum range for generated SPD matrices (condition ≤ 100),
/// keeping functional-calculus rounding well below check tolerances.
pub const DEFAULT_SPECTRUM: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid spectrum range ({0}, {1}): need 0 < lo ≤ hi")]
    InvalidRange(f64, f64),
    #[error("invalid exponent p = {0}: need p > 1")]
    InvalidExponent(f64),
    #[error("exponents ({0}, {1}) are not conjugate")]
    NotConjugate(f64, f64),
    #[error("function `{0}` has no monotone inverse")]
    NotInvertible(String),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Strictly positive pair with realized sandwich constants:
/// `s = λ_min(A^{−1/2}BA^{−1/2})`, `t = λ_max(...)`, `w = t/s`.
#[derive(Debug, Clone)]
pub struct SandwichPair {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub s: f64,
    pub t: f64,
    pub w: f64,
}

/// Commuting pair sharing the eigenbasis `q`, with the channel eigenvalues
/// kept for scalar oracles.
#[derive(Debug, Clone)]
pub struct CommutingPair {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub q: Matrix,
    pub a_diag: Vec<f64>,
    pub b_diag: Vec<f64>,
}

/// Pair whose sandwich condition holds between the g-images:
/// `s·g(A) ≤ g(B) ≤ t·g(A)` with realized constants measured there.
#[derive(Debug, Clone)]
pub struct GimageSandwich {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub s: f64,
    pub t: f64,
    pub w: f64,
}

/// Positive sequences `a_i, b_i` with realized ratio bounds
/// `s = min b_i^q/a_i^p`, `t = max b_i^q/a_i^p`.
#[derive(Debug, Clone)]
pub struct ScalarInstance {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub t: f64,
}

/// Sequences with head terms `x[0], y[0]` satisfying the Aczél-counterpart
/// hypotheses: tail power sums dominate the heads and the tail ratios are
/// sandwiched.
#[derive(Debug, Clone)]
pub struct CounterpartInstance {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub t: f64,
}

fn check_range(lo: f64, hi: f64) -> Result<(), GenError> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(GenError::InvalidRange(lo, hi));
    }
    Ok(())
}

fn conjugate_of(p: f64) -> Result<f64, GenError> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(GenError::InvalidExponent(p));
    }
    Ok(p / (p - 1.0))
}

/// Random orthogonal matrix: Householder QR of a Gaussian matrix, with the
/// sign convention R_jj > 0 so the factor is unique almost surely.
pub fn rand_orthogonal(n: usize, rng: &mut Prng) -> Matrix {
    let mut r = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            r.set(i, j, rng.gauss());
        }
    }
    let mut q = Matrix::identity(n);
    let mut v = vec![0.0; n];
    for k in 0..n {
        let mut norm2 = 0.0;
        for i in k..n {
            let x = r.get(i, k);
            v[i] = x;
            norm2 += x * x;
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if v[k] >= 0.0 { -norm } else { norm };
        v[k] -= alpha;
        let vnorm2: f64 = (k..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // R ← H R (left), Q ← Q H (right), H = I − 2vvᵀ/‖v‖².
        for j in k..n {
            let dot: f64 = (k..n).map(|i| v[i] * r.get(i, j)).sum();
            let coeff = 2.0 * dot / vnorm2;
            for i in k..n {
                r.set(i, j, r.get(i, j) - coeff * v[i]);
            }
        }
        for row in 0..n {
            let dot: f64 = (k..n).map(|i| q.get(row, i) * v[i]).sum();
            let coeff = 2.0 * dot / vnorm2;
            for i in k..n {
                q.set(row, i, q.get(row, i) - coeff * v[i]);
            }
        }
    }
    for j in 0..n {
        if r.get(j, j) < 0.0 {
            for i in 0..n {
                q.set(i, j, -q.get(i, j));
            }
        }
    }
    q
}

/// SPD matrix with eigenvalues i.i.d. log-uniform in `[lo, hi]` and a
/// random orthogonal eigenbasis. Draw order: eigenvalues, then basis.
fn spd_stream(n: usize, lo: f64, hi: f64, rng: &mut Prng) -> SpectralDecomp {
    let lambda: Vec<f64> = (0..n).map(|_| rng.log_uniform(lo, hi)).collect();
    let q = rand_orthogonal(n, rng);
    let mut sorted = lambda;
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    SpectralDecomp { q, lambda: sorted }
}

/// Seeded SPD generator; see [`spd_stream`] for the sampling scheme.
pub fn rand_spd(n: usize, spectrum: (f64, f64), seed: u64) -> Result<SymMatrix, GenError> {
    check_range(spectrum.0, spectrum.1)?;
    let mut rng = Prng::from_seed(seed);
    Ok(spd_stream(n, spectrum.0, spectrum.1, &mut rng).reconstruct())
}

/// Measure the tightest sandwich constants of an SPD pair:
/// extreme eigenvalues of `A^{−1/2} B A^{−1/2}`.
pub fn measure_sandwich(a: &SymMatrix, b: &SymMatrix) -> Result<(f64, f64), GenError> {
    let da = matcore::eig_sym(a)?;
    let a_half_inv = matcore::mpow_decomp(&da, -0.5)?;
    let w = matcore::congruence(&a_half_inv.as_matrix(), b);
    let dw = matcore::eig_sym(&w)?;
    Ok((dw.lambda_min(), dw.lambda_max()))
}

fn sandwich_from_parts(
    da: &SpectralDecomp,
    c: &SymMatrix,
) -> Result<SandwichPair, GenError> {
    let a = da.reconstruct();
    let a_half = matcore::mpow_decomp(da, 0.5)?;
    let b = matcore::congruence(&a_half.as_matrix(), c);
    let (s, t) = measure_sandwich(&a, &b)?;
    Ok(SandwichPair { a, b, s, t, w: t / s })
}

/// Sandwich pair via congruence: `B = A^{1/2} C A^{1/2}` with C's spectrum
/// drawn in `[s_target, t_target]`, so `s_target·A ≤ B ≤ t_target·A` by
/// construction. Draw order: A eigenvalues, A basis, C eigenvalues, C basis.
pub fn rand_sandwich_pair(
    n: usize,
    spectrum: (f64, f64),
    s_target: f64,
    t_target: f64,
    seed: u64,
) -> Result<SandwichPair, GenError> {
    check_range(spectrum.0, spectrum.1)?;
    check_range(s_target, t_target)?;
    let mut rng = Prng::from_seed(seed);
    let da = spd_stream(n, spectrum.0, spectrum.1, &mut rng);
    let c = spd_stream(n, s_target, t_target, &mut rng).reconstruct();
    sandwich_from_parts(&da, &c)
}

/// Sandwich pair whose realized constants straddle 1: the first two C
/// eigenvalues are pinned to `[s_target, 1]` and `[1, t_target]`, the rest
/// drawn across the full range, so `s ≤ 1 ≤ t` always holds. Targets are
/// drawn log-uniform from [0.2, 0.9] and [1.1, 5].
pub fn rand_sandwich_straddle(
    n: usize,
    spectrum: (f64, f64),
    seed: u64,
) -> Result<SandwichPair, GenError> {
    check_range(spectrum.0, spectrum.1)?;
    let mut rng = Prng::from_seed(seed);
    let s_target = rng.log_uniform(0.2, 0.9);
    let t_target = rng.log_uniform(1.1, 5.0);
    let da = spd_stream(n, spectrum.0, spectrum.1, &mut rng);
    let mut c_lambda = vec![0.0; n];
    c_lambda[0] = rng.log_uniform(s_target, 1.0);
    c_lambda[1] = rng.log_uniform(1.0, t_target);
    for l in c_lambda.iter_mut().skip(2) {
        *l = rng.log_uniform(s_target, t_target);
    }
    let qc = rand_orthogonal(n, &mut rng);
    c_lambda.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let c = SpectralDecomp {
        q: qc,
        lambda: c_lambda,
    }
    .reconstruct();
    sandwich_from_parts(&da, &c)
}

/// Commuting pair from a shared random eigenbasis. Draw order: A channel
/// eigenvalues, B channel eigenvalues, shared basis.
pub fn rand_commuting_pair(
    n: usize,
    a_range: (f64, f64),
    b_range: (f64, f64),
    seed: u64,
) -> Result<CommutingPair, GenError> {
    check_range(a_range.0, a_range.1)?;
    check_range(b_range.0, b_range.1)?;
    let mut rng = Prng::from_seed(seed);
    let a_diag: Vec<f64> = (0..n).map(|_| rng.log_uniform(a_range.0, a_range.1)).collect();
    let b_diag: Vec<f64> = (0..n).map(|_| rng.log_uniform(b_range.0, b_range.1)).collect();
    let q = rand_orthogonal(n, &mut rng);
    Ok(assemble_commuting(q, a_diag, b_diag))
}

/// Commuting pair with controlled power-ratio channels: draws the spectrum
/// of `A^p` in `base_range` and ratios `r_i = λ_i(B^q)/λ_i(A^p)` in
/// `ratio_range`, then takes p-th and q-th roots. This pins the sandwich
/// constants of `(A^p, B^q)` to the ratio range.
pub fn rand_commuting_ratio_pair(
    n: usize,
    base_range: (f64, f64),
    ratio_range: (f64, f64),
    p: f64,
    q: f64,
    seed: u64,
) -> Result<CommutingPair, GenError> {
    check_range(base_range.0, base_range.1)?;
    check_range(ratio_range.0, ratio_range.1)?;
    if (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 || p <= 1.0 {
        return Err(GenError::NotConjugate(p, q));
    }
    let mut rng = Prng::from_seed(seed);
    let ap_diag: Vec<f64> = (0..n)
        .map(|_| rng.log_uniform(base_range.0, base_range.1))
        .collect();
    let ratios: Vec<f64> = (0..n)
        .map(|_| rng.log_uniform(ratio_range.0, ratio_range.1))
        .collect();
    let basis = rand_orthogonal(n, &mut rng);
    let a_diag: Vec<f64> = ap_diag.iter().map(|&v| v.powf(1.0 / p)).collect();
    let b_diag: Vec<f64> = ap_diag
        .iter()
        .zip(&ratios)
        .map(|(&v, &r)| (r * v).powf(1.0 / q))
        .collect();
    Ok(assemble_commuting(basis, a_diag, b_diag))
}

fn assemble_commuting(q: Matrix, a_diag: Vec<f64>, b_diag: Vec<f64>) -> CommutingPair {
    let n = a_diag.len();
    let a = SpectralDecomp {
        q: q.clone(),
        lambda: a_diag.clone(),
    }
    .reconstruct();
    let b = SpectralDecomp {
        q: q.clone(),
        lambda: b_diag.clone(),
    }
    .reconstruct();
    debug_assert_eq!(a.dim(), n);
    CommutingPair {
        a,
        b,
        q,
        a_diag,
        b_diag,
    }
}

struct InverseFn<'a> {
    of: &'a FunctionDescriptor,
}

impl ScalarFn for InverseFn<'_> {
    fn eval(&self, t: f64) -> f64 {
        self.of.inverse(t).expect("inverse checked present")
    }
    fn domain(&self) -> Domain {
        // Every invertible catalog entry maps its domain onto (0, ∞).
        Domain::from_open(0.0)
    }
    fn name(&self) -> &str {
        "inverse_of"
    }
}

/// Pair sandwiched in g-image space: draws `X, Y` with `sX ≤ Y ≤ tX`, then
/// pulls back through the inverse, `A = g⁻¹(X)`, `B = g⁻¹(Y)`. Realized
/// bounds are measured on `(g(A), g(B))` after the round-trip. Requires an
/// increasing `g` with a registered inverse.
pub fn rand_gimage_sandwich(
    n: usize,
    g: &FunctionDescriptor,
    image_spectrum: (f64, f64),
    s_target: f64,
    t_target: f64,
    seed: u64,
) -> Result<GimageSandwich, GenError> {
    if !g.has_inverse() || !g.is_increasing() {
        return Err(GenError::NotInvertible(g.name().to_string()));
    }
    check_range(image_spectrum.0, image_spectrum.1)?;
    check_range(s_target, t_target)?;
    let mut rng = Prng::from_seed(seed);
    let dx = spd_stream(n, image_spectrum.0, image_spectrum.1, &mut rng);
    let c = spd_stream(n, s_target, t_target, &mut rng).reconstruct();
    let x = dx.reconstruct();
    let x_half = matcore::mpow_decomp(&dx, 0.5)?;
    let y = matcore::congruence(&x_half.as_matrix(), &c);

    let ginv = InverseFn { of: g };
    let a = matcore::apply_fn(&x, &ginv)?;
    let b = matcore::apply_fn(&y, &ginv)?;
    let ga = matcore::apply_fn(&a, g)?;
    let gb = matcore::apply_fn(&b, g)?;
    let (s, t) = measure_sandwich(&ga, &gb)?;
    Ok(GimageSandwich { a, b, s, t, w: t / s })
}

/// Gaussian unit probe vector.
pub fn rand_probe(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = Prng::from_seed(seed);
    probe_stream(n, &mut rng)
}

pub fn probe_stream(n: usize, rng: &mut Prng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gauss()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Scalar ratio-sandwich instance: `a_i` log-uniform in `base_range`,
/// ratios `r_i = b_i^q / a_i^p` log-uniform in `[ratio_lo, ratio_hi]`, and
/// `b_i = (r_i a_i^p)^{1/q}`. Realized `(s, t)` are re-measured from the
/// generated sequences.
pub fn rand_scalar_instance(
    n_terms: usize,
    p: f64,
    base_range: (f64, f64),
    ratio_lo: f64,
    ratio_hi: f64,
    seed: u64,
) -> Result<ScalarInstance, GenError> {
    let q = conjugate_of(p)?;
    check_range(base_range.0, base_range.1)?;
    check_range(ratio_lo, ratio_hi)?;
    let mut rng = Prng::from_seed(seed);
    let a: Vec<f64> = (0..n_terms)
        .map(|_| rng.log_uniform(base_range.0, base_range.1))
        .collect();
    let b: Vec<f64> = a
        .iter()
        .map(|&ai| {
            let r = rng.log_uniform(ratio_lo, ratio_hi);
            (r * ai.powf(p)).powf(1.0 / q)
        })
        .collect();
    let (s, t) = measure_ratio_bounds(&a, &b, p, q);
    Ok(ScalarInstance { a, b, p, q, s, t })
}

pub fn measure_ratio_bounds(a: &[f64], b: &[f64], p: f64, q: f64) -> (f64, f64) {
    let mut s = f64::INFINITY;
    let mut t = f64::NEG_INFINITY;
    for (&ai, &bi) in a.iter().zip(b) {
        let r = bi.powf(q) / ai.powf(p);
        s = s.min(r);
        t = t.max(r);
    }
    (s, t)
}

/// Aczél-counterpart instance with `m_tail ≥ 4` tail terms. Tail ranges are
/// chosen so every hypothesis holds by construction for p ∈ (1, 4]:
/// tail power sums exceed the heads and each tail term stays above
/// `1/m_tail` after raising to p or q.
pub fn rand_counterpart_instance(
    m_tail: usize,
    p: f64,
    seed: u64,
) -> Result<CounterpartInstance, GenError> {
    let q = conjugate_of(p)?;
    if !(1.0..=4.0).contains(&p) {
        return Err(GenError::InvalidExponent(p));
    }
    assert!(m_tail >= 4, "counterpart instances need at least 4 tail terms");
    let mut rng = Prng::from_seed(seed);
    let x1 = rng.log_uniform(0.8, 1.25);
    let y1 = rng.log_uniform(0.8, 1.25);
    let a: Vec<f64> = (0..m_tail).map(|_| rng.log_uniform(0.8, 1.6)).collect();
    let b: Vec<f64> = a
        .iter()
        .map(|&ai| {
            let r = rng.log_uniform(0.75, 1.4);
            (r * ai.powf(p)).powf(1.0 / q)
        })
        .collect();
    let (s, t) = measure_ratio_bounds(&a, &b, p, q);
    let mut x = Vec::with_capacity(m_tail + 1);
    let mut y = Vec::with_capacity(m_tail + 1);
    x.push(x1);
    y.push(y1);
    x.extend(a.iter().map(|&ai| x1 * ai));
    y.extend(b.iter().map(|&bi| y1 * bi));
    Ok(CounterpartInstance { x, y, p, q, s, t })
}

/// Admissible sequences for the classical Aczél / Popoviciu checks: the
/// head strictly dominates the tail power sum, `a₁^p = (1+θ)·Σ_{i≥2} a_i^p`
/// with θ drawn in [0.1, 2].
pub fn rand_admissible_pair(
    m_tail: usize,
    p: f64,
    q: f64,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>), GenError> {
    if !(p > 1.0 && q > 1.0) {
        return Err(GenError::InvalidExponent(p.min(q)));
    }
    let mut rng = Prng::from_seed(seed);
    let draw = |expo: f64, rng: &mut Prng| {
        let tail: Vec<f64> = (0..m_tail).map(|_| rng.log_uniform(0.5, 2.0)).collect();
        let theta = rng.uniform(0.1, 2.0);
        let head = ((1.0 + theta) * tail.iter().map(|v| v.powf(expo)).sum::<f64>()).powf(1.0 / expo);
        let mut seq = Vec::with_capacity(m_tail + 1);
        seq.push(head);
        seq.extend(tail);
        seq
    };
    let a = draw(p, &mut rng);
    let b = draw(q, &mut rng);
    Ok((a, b))
}
