//! One executable check per inequality.
//!
//! Each checker consumes a generated instance, evaluates every
//! sub-inequality of its statement, and emits a [`CheckResult`] whose slack
//! is the minimum signed margin over sub-inequalities, eigenvalue indices,
//! and probe vectors. Matrix slacks are normalized by
//! `max(1, ‖·‖₂)` of the compared operands; the scalar sequence checks
//! (classical Aczél, Popoviciu, and the sum/counterpart forms) report raw
//! slack so hand-computed instances reproduce exactly.
//!
//! "There exists a unitary U" statements are tested constructively: for
//! symmetric X, Y the inequality λ_k(X) ≥ c·λ_k(Y) for all k is equivalent
//! to X ≥ c·U Y Uᵀ with U the descending-eigenbasis alignment, so the
//! checkers build that U and test the Loewner form directly.

use crate::constants::{kantorovich_gen, reverse_constant};
use crate::funcatalog::FunctionDescriptor;
use crate::generators::{
    measure_sandwich, CommutingPair, CounterpartInstance, GimageSandwich, SandwichPair,
    ScalarInstance,
};
use crate::matcore::{self, MatError, ScalarFn, SymMatrix};
use crate::means::{gmean, MeanWeight};
use crate::result::{CheckId, CheckResult, TrialMeta};
use thiserror::Error;

/// Default relative tolerance for matrix checks (two eigendecompositions
/// plus a congruence cost roughly 3–4 digits).
pub const TOL_MATRIX: f64 = 1e-8;
/// Default tolerance for scalar sequence checks.
pub const TOL_SCALAR: f64 = 1e-12;
/// Commutator threshold for [`check_commuting_product`].
pub const COMMUTATOR_REL_TOL: f64 = 1e-10;
/// Slop allowed when checking the straddle hypothesis s ≤ 1 ≤ t.
const STRADDLE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Mean(#[from] crate::means::MeanError),
    #[error(transparent)]
    Const(#[from] crate::constants::ConstError),
    #[error(transparent)]
    Gen(#[from] crate::generators::GenError),
    #[error("instance violates `{0}` hypothesis")]
    HypothesisUnsatisfied(&'static str),
    #[error("operands do not commute: relative commutator norm {0:.3e}")]
    NotCommuting(f64),
}

/// min over k of (rhs[k] − lhs[k]), normalized by the largest magnitude.
fn seq_slack(lhs: &[f64], rhs: &[f64]) -> f64 {
    let scale = lhs
        .iter()
        .chain(rhs)
        .fold(1.0f64, |m, &v| m.max(v.abs()));
    lhs.iter()
        .zip(rhs)
        .map(|(&l, &r)| (r - l) / scale)
        .fold(f64::INFINITY, f64::min)
}

fn probe_slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

/// Normalized Loewner slack of X ≤ Y.
fn loewner_slack(x: &SymMatrix, y: &SymMatrix) -> Result<f64, CheckError> {
    Ok(matcore::loewner_leq(x, y, TOL_MATRIX)?.rel_slack())
}

fn meta(seed: u64, n: usize) -> TrialMeta {
    TrialMeta {
        seed,
        n,
        ..TrialMeta::default()
    }
}

/// Young inequality `A ♯_α B ≤ A ∇_α B`.
pub fn check_young(
    pair: &SandwichPair,
    alpha: f64,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let w = MeanWeight::from_alpha(alpha)?;
    let geo = gmean(&pair.a, &pair.b, w)?;
    let ari = crate::means::amean(&pair.a, &pair.b, w)?;
    let slack = loewner_slack(&geo, &ari)?;
    Ok(CheckResult::new(
        CheckId::CheckYoung,
        slack,
        1.0,
        TrialMeta {
            alpha: Some(alpha),
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Reverse Young: `A ∇_α B ≤ max{K(s)^R, K(t)^R} · (A ♯_α B)` under the
/// sandwich `sA ≤ B ≤ tA`, with R = max{α, 1−α}.
///
/// Also reports the observed extremal ratio
/// `λ_max(M^{−1/2} (A∇_αB) M^{−1/2})`, the smallest constant that would
/// work at this instance; it never exceeds the bound c.
pub fn check_reverse_young(
    pair: &SandwichPair,
    alpha: f64,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let w = MeanWeight::from_alpha(alpha)?;
    let geo = gmean(&pair.a, &pair.b, w)?;
    let ari = crate::means::amean(&pair.a, &pair.b, w)?;
    let c = reverse_constant(pair.s, pair.t, w.r())?;
    let slack = loewner_slack(&ari, &geo.scale(c))?;

    let dm = matcore::eig_sym(&geo)?;
    let m_half_inv = matcore::mpow_decomp(&dm, -0.5)?;
    let ratio_mat = matcore::congruence(&m_half_inv.as_matrix(), &ari);
    let observed = matcore::eig_sym(&ratio_mat)?.lambda_max();

    Ok(CheckResult::new(
        CheckId::CheckReverseYoung,
        slack,
        c,
        TrialMeta {
            alpha: Some(alpha),
            ..meta(seed, pair.a.dim())
        },
    )
    .with_ratio(observed))
}

/// For non-negative operator monotone decreasing g:
/// `(1/c)·g(A♯_αB) ≤ g(c·(A♯_αB)) ≤ g(A) ♯_α g(B)`.
pub fn check_lemma_gdec(
    pair: &SandwichPair,
    alpha: f64,
    g: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(g.is_decreasing() && g.operator_monotone) {
        return Err(CheckError::HypothesisUnsatisfied(
            "g must be operator monotone decreasing",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let c = reverse_constant(pair.s, pair.t, w.r())?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let g_m = matcore::apply_fn(&m, g)?;
    let g_cm = matcore::apply_fn(&m.scale(c), g)?;
    let rhs = gmean(
        &matcore::apply_fn(&pair.a, g)?,
        &matcore::apply_fn(&pair.b, g)?,
        w,
    )?;
    let slack = loewner_slack(&g_m.scale(1.0 / c), &g_cm)?.min(loewner_slack(&g_cm, &rhs)?);
    Ok(CheckResult::new(
        CheckId::CheckLemmaGdec,
        slack,
        c,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![g.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// For non-negative operator monotone f:
/// `c·f(A♯_αB) ≥ f(c·(A♯_αB)) ≥ f(A) ♯_α f(B)`.
pub fn check_lemma_fmono(
    pair: &SandwichPair,
    alpha: f64,
    f: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.operator_monotone) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be non-negative operator monotone",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let c = reverse_constant(pair.s, pair.t, w.r())?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let f_m = matcore::apply_fn(&m, f)?;
    let f_cm = matcore::apply_fn(&m.scale(c), f)?;
    let rhs = gmean(
        &matcore::apply_fn(&pair.a, f)?,
        &matcore::apply_fn(&pair.b, f)?,
        w,
    )?;
    let slack = loewner_slack(&f_cm, &f_m.scale(c))?.min(loewner_slack(&rhs, &f_cm)?);
    Ok(CheckResult::new(
        CheckId::CheckLemmaFmono,
        slack,
        c,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Aczél variant for non-negative operator monotone f on a pair sandwiched
/// as `s·P ≤ Q ≤ t·P` (the caller supplies P = A^p, Q = B^q):
///
/// ```text
/// f(P ♯_{1/q} Q) ≥ (1/c)·f(P) ♯_{1/q} f(Q)
/// ⟨f(P ♯_{1/q} Q)x, x⟩ ≥ (1/c)·⟨f(P)x, x⟩^{1/p} ⟨f(Q)x, x⟩^{1/q}
/// ```
///
/// with c = max{K(s)^R, K(t)^R}, R = max{1/p, 1/q}.
pub fn check_aczel_variant(
    pair_pq: &SandwichPair,
    p: f64,
    q: f64,
    f: &FunctionDescriptor,
    probes: &[Vec<f64>],
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.operator_monotone) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be non-negative operator monotone",
        ));
    }
    let w = MeanWeight::from_conjugate(p, q)?;
    let c = reverse_constant(pair_pq.s, pair_pq.t, w.r())?;
    let m = gmean(&pair_pq.a, &pair_pq.b, w)?;
    let f_m = matcore::apply_fn(&m, f)?;
    let f_p = matcore::apply_fn(&pair_pq.a, f)?;
    let f_q = matcore::apply_fn(&pair_pq.b, f)?;
    let rhs = gmean(&f_p, &f_q, w)?;

    let mut slack = loewner_slack(&rhs.scale(1.0 / c), &f_m)?;
    for x in probes {
        let lhs = matcore::quad_form(&f_m, x)?;
        let rhs_probe = (1.0 / c)
            * matcore::quad_form(&f_p, x)?.powf(1.0 / p)
            * matcore::quad_form(&f_q, x)?.powf(1.0 / q);
        slack = slack.min(probe_slack(rhs_probe, lhs));
    }
    Ok(CheckResult::new(
        CheckId::CheckAczelVariant,
        slack,
        c,
        TrialMeta {
            pq: Some((p, q)),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair_pq.a.dim())
        },
    ))
}

/// Probe sandwich inequality with the generalized Kantorovich constant:
///
/// ```text
/// ⟨A♯_αB x, x⟩ ≤ ⟨Ax, x⟩^{1−α} ⟨Bx, x⟩^α ≤ K^{−1}(w, α)·⟨A♯_αB x, x⟩
/// ```
pub fn check_scalar_sandwich(
    pair: &SandwichPair,
    alpha: f64,
    probes: &[Vec<f64>],
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let w = MeanWeight::from_alpha(alpha)?;
    let kw = kantorovich_gen(pair.w, alpha)?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let mut slack = f64::INFINITY;
    let mut observed: f64 = 1.0;
    for x in probes {
        let qm = matcore::quad_form(&m, x)?;
        let qa = matcore::quad_form(&pair.a, x)?;
        let qb = matcore::quad_form(&pair.b, x)?;
        let prod = qa.powf(1.0 - alpha) * qb.powf(alpha);
        slack = slack.min(probe_slack(qm, prod));
        slack = slack.min(probe_slack(prod, qm / kw));
        observed = observed.max(prod / qm);
    }
    Ok(CheckResult::new(
        CheckId::CheckScalarSandwich,
        slack,
        kw,
        TrialMeta {
            alpha: Some(alpha),
            ..meta(seed, pair.a.dim())
        },
    )
    .with_ratio(observed))
}

/// Eigenvalue chain for increasing doubly concave f:
///
/// ```text
/// K^{−1}(w,α)·λ_k(f(A♯_αB)) ≥ λ_k(f(K^{−1}(w,α)·(A♯_αB))) ≥ λ_k(f(A)♯_αf(B))
/// ```
pub fn check_eig_doubly_concave(
    pair: &SandwichPair,
    alpha: f64,
    f: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.is_doubly_concave()) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be increasing doubly concave",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let kw = kantorovich_gen(pair.w, alpha)?;
    let kinv = 1.0 / kw;
    let m = gmean(&pair.a, &pair.b, w)?;
    let outer: Vec<f64> = matcore::eig_sym(&matcore::apply_fn(&m, f)?)?
        .lambda
        .iter()
        .map(|&l| kinv * l)
        .collect();
    let middle = matcore::eig_sym(&matcore::apply_fn(&m.scale(kinv), f)?)?.lambda;
    let inner = matcore::eig_sym(&gmean(
        &matcore::apply_fn(&pair.a, f)?,
        &matcore::apply_fn(&pair.b, f)?,
        w,
    )?)?
    .lambda;
    let slack = seq_slack(&middle, &outer).min(seq_slack(&inner, &middle));
    Ok(CheckResult::new(
        CheckId::CheckEigDoublyConcave,
        slack,
        kw,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Unitary realization of the doubly concave eigenvalue chain:
/// `f(A♯_αB) ≥ K(w,α)·U (f(A)♯_αf(B)) Uᵀ` with U the eigenbasis alignment.
pub fn check_unitary_form_concave(
    pair: &SandwichPair,
    alpha: f64,
    f: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.is_doubly_concave()) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be increasing doubly concave",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let kw = kantorovich_gen(pair.w, alpha)?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let x = matcore::apply_fn(&m, f)?;
    let y = gmean(
        &matcore::apply_fn(&pair.a, f)?,
        &matcore::apply_fn(&pair.b, f)?,
        w,
    )?;
    let u = matcore::aligned_unitary(&x, &y)?;
    let rotated = matcore::congruence(&u, &y);
    let slack = loewner_slack(&rotated.scale(kw), &x)?;
    Ok(CheckResult::new(
        CheckId::CheckUnitaryFormConcave,
        slack,
        kw,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Generalized-Kantorovich Aczél inequality for operator monotone AND
/// doubly concave f on a straddled sandwich (s ≤ 1 ≤ t) of (A^p, B^q):
///
/// ```text
/// f(P♯_{1/q}Q) ≥ K(w, 1/q)·U (f(P)♯_{1/q}f(Q)) Uᵀ
/// ⟨f(P♯_{1/q}Q) Ux, Ux⟩ ≥ K²(w, 1/q)·⟨f(P)x,x⟩^{1/p} ⟨f(Q)x,x⟩^{1/q}
/// ```
pub fn check_aczel_gen_kantorovich(
    pair_pq: &SandwichPair,
    p: f64,
    q: f64,
    f: &FunctionDescriptor,
    probes: &[Vec<f64>],
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.is_doubly_concave() && f.operator_monotone) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be operator monotone and doubly concave",
        ));
    }
    if pair_pq.s > 1.0 + STRADDLE_TOL || pair_pq.t < 1.0 - STRADDLE_TOL {
        return Err(CheckError::HypothesisUnsatisfied("straddle s ≤ 1 ≤ t"));
    }
    let w = MeanWeight::from_conjugate(p, q)?;
    let kw = kantorovich_gen(pair_pq.w, w.alpha())?;
    let m = gmean(&pair_pq.a, &pair_pq.b, w)?;
    let x_mat = matcore::apply_fn(&m, f)?;
    let f_p = matcore::apply_fn(&pair_pq.a, f)?;
    let f_q = matcore::apply_fn(&pair_pq.b, f)?;
    let y_mat = gmean(&f_p, &f_q, w)?;
    let u = matcore::aligned_unitary(&x_mat, &y_mat)?;
    let rotated = matcore::congruence(&u, &y_mat);
    let mut slack = loewner_slack(&rotated.scale(kw), &x_mat)?;

    for x in probes {
        let ux = u.mul_vec(x);
        let lhs = matcore::quad_form(&x_mat, &ux)?;
        let rhs = kw * kw
            * matcore::quad_form(&f_p, x)?.powf(1.0 / p)
            * matcore::quad_form(&f_q, x)?.powf(1.0 / q);
        slack = slack.min(probe_slack(rhs, lhs));
    }
    Ok(CheckResult::new(
        CheckId::CheckAczelGenKantorovich,
        slack,
        kw,
        TrialMeta {
            pq: Some((p, q)),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair_pq.a.dim())
        },
    ))
}

/// Eigenvalue inequality for increasing doubly convex g with the sandwich
/// holding between the g-images:
/// `λ_k(g(A♯_αB)) ≤ K^{−1}(w,α)·λ_k(g(A)♯_αg(B))`.
pub fn check_eig_doubly_convex(
    pair: &GimageSandwich,
    alpha: f64,
    g: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(g.is_increasing() && g.is_doubly_convex()) {
        return Err(CheckError::HypothesisUnsatisfied(
            "g must be increasing doubly convex",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let kw = kantorovich_gen(pair.w, alpha)?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let lhs = matcore::eig_sym(&matcore::apply_fn(&m, g)?)?.lambda;
    let rhs: Vec<f64> = matcore::eig_sym(&gmean(
        &matcore::apply_fn(&pair.a, g)?,
        &matcore::apply_fn(&pair.b, g)?,
        w,
    )?)?
    .lambda
    .iter()
    .map(|&l| l / kw)
    .collect();
    let slack = seq_slack(&lhs, &rhs);
    Ok(CheckResult::new(
        CheckId::CheckEigDoublyConvex,
        slack,
        kw,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![g.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Reverse Aczél inequality for increasing doubly convex g, sandwich on
/// (g(A^p), g(B^q)) and α = 1/q:
///
/// ```text
/// g(P♯_{1/q}Q) ≤ K^{−1}(w,1/q)·U (g(P)♯_{1/q}g(Q)) Uᵀ
/// ⟨g(P♯_{1/q}Q) Ux, Ux⟩ ≤ K^{−1}(w,1/q)·⟨g(P)x,x⟩^{1/p} ⟨g(Q)x,x⟩^{1/q}
/// ```
pub fn check_reverse_aczel(
    pair_pq: &GimageSandwich,
    p: f64,
    q: f64,
    g: &FunctionDescriptor,
    probes: &[Vec<f64>],
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(g.is_increasing() && g.is_doubly_convex()) {
        return Err(CheckError::HypothesisUnsatisfied(
            "g must be increasing doubly convex",
        ));
    }
    let w = MeanWeight::from_conjugate(p, q)?;
    let kw = kantorovich_gen(pair_pq.w, w.alpha())?;
    let kinv = 1.0 / kw;
    let m = gmean(&pair_pq.a, &pair_pq.b, w)?;
    let x_mat = matcore::apply_fn(&m, g)?;
    let g_p = matcore::apply_fn(&pair_pq.a, g)?;
    let g_q = matcore::apply_fn(&pair_pq.b, g)?;
    let y_mat = gmean(&g_p, &g_q, w)?;
    let u = matcore::aligned_unitary(&x_mat, &y_mat)?;
    let rotated = matcore::congruence(&u, &y_mat);
    let mut slack = loewner_slack(&x_mat, &rotated.scale(kinv))?;

    for x in probes {
        let ux = u.mul_vec(x);
        let lhs = matcore::quad_form(&x_mat, &ux)?;
        let rhs = kinv
            * matcore::quad_form(&g_p, x)?.powf(1.0 / p)
            * matcore::quad_form(&g_q, x)?.powf(1.0 / q);
        slack = slack.min(probe_slack(lhs, rhs));
    }
    Ok(CheckResult::new(
        CheckId::CheckReverseAczel,
        slack,
        kw,
        TrialMeta {
            pq: Some((p, q)),
            functions: vec![g.name().to_string()],
            ..meta(seed, pair_pq.a.dim())
        },
    ))
}

/// Eigenvalue inequality for decreasing geometrically convex g on a
/// standard sandwich: `λ_k(g(K^{−1}(w,α)·(A♯_αB))) ≤ λ_k(g(A)♯_αg(B))`.
pub fn check_eig_dec_geoconvex(
    pair: &SandwichPair,
    alpha: f64,
    g: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(g.is_decreasing() && g.geo == crate::funcatalog::GeoCurvature::GeoConvex) {
        return Err(CheckError::HypothesisUnsatisfied(
            "g must be decreasing geometrically convex",
        ));
    }
    let w = MeanWeight::from_alpha(alpha)?;
    let kw = kantorovich_gen(pair.w, alpha)?;
    let m = gmean(&pair.a, &pair.b, w)?;
    let lhs = matcore::eig_sym(&matcore::apply_fn(&m.scale(1.0 / kw), g)?)?.lambda;
    let rhs = matcore::eig_sym(&gmean(
        &matcore::apply_fn(&pair.a, g)?,
        &matcore::apply_fn(&pair.b, g)?,
        w,
    )?)?
    .lambda;
    let slack = seq_slack(&lhs, &rhs);
    Ok(CheckResult::new(
        CheckId::CheckEigDecGeoconvex,
        slack,
        kw,
        TrialMeta {
            alpha: Some(alpha),
            functions: vec![g.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Reverse Aczél inequality for decreasing doubly convex g on a standard
/// sandwich of (A^p, B^q), with α = 1/q:
///
/// ```text
/// g(K^{−1}(w,1/q)·(P♯_{1/q}Q)) ≤ U (g(P)♯_{1/q}g(Q)) Uᵀ
/// ⟨g(K^{−1}(w,1/q)·(P♯_{1/q}Q)) Ux, Ux⟩ ≤ ⟨g(P)x,x⟩^{1/p} ⟨g(Q)x,x⟩^{1/q}
/// ```
///
/// The scaling inside g is K^{−1}, matching the eigenvalue inequality this
/// reduces to for decreasing geometrically convex functions.
pub fn check_reverse_aczel_dec(
    pair_pq: &SandwichPair,
    p: f64,
    q: f64,
    g: &FunctionDescriptor,
    probes: &[Vec<f64>],
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(g.is_decreasing() && g.is_doubly_convex()) {
        return Err(CheckError::HypothesisUnsatisfied(
            "g must be decreasing doubly convex",
        ));
    }
    let w = MeanWeight::from_conjugate(p, q)?;
    let kw = kantorovich_gen(pair_pq.w, w.alpha())?;
    let m = gmean(&pair_pq.a, &pair_pq.b, w)?;
    let x_mat = matcore::apply_fn(&m.scale(1.0 / kw), g)?;
    let g_p = matcore::apply_fn(&pair_pq.a, g)?;
    let g_q = matcore::apply_fn(&pair_pq.b, g)?;
    let y_mat = gmean(&g_p, &g_q, w)?;
    let u = matcore::aligned_unitary(&x_mat, &y_mat)?;
    let rotated = matcore::congruence(&u, &y_mat);
    let mut slack = loewner_slack(&x_mat, &rotated)?;

    for x in probes {
        let ux = u.mul_vec(x);
        let lhs = matcore::quad_form(&x_mat, &ux)?;
        let rhs = matcore::quad_form(&g_p, x)?.powf(1.0 / p)
            * matcore::quad_form(&g_q, x)?.powf(1.0 / q);
        slack = slack.min(probe_slack(lhs, rhs));
    }
    Ok(CheckResult::new(
        CheckId::CheckReverseAczelDec,
        slack,
        kw,
        TrialMeta {
            pq: Some((p, q)),
            functions: vec![g.name().to_string()],
            ..meta(seed, pair_pq.a.dim())
        },
    ))
}

/// Classical Aczél inequality:
/// `(a₁b₁ − Σ_{i≥2} a_i b_i)² ≥ (a₁² − Σ a_i²)(b₁² − Σ b_i²)`
/// under positivity of both bracketed terms. Raw (unnormalized) slack.
pub fn check_aczel_classic(a: &[f64], b: &[f64], seed: u64) -> Result<CheckResult, CheckError> {
    let ga = head_gap(a, 2.0);
    let gb = head_gap(b, 2.0);
    if ga <= 0.0 || gb <= 0.0 {
        return Err(CheckError::HypothesisUnsatisfied(
            "head must dominate tail sum of squares",
        ));
    }
    let cross = a[0] * b[0] - tail_dot(a, b);
    let slack = cross * cross - ga * gb;
    Ok(CheckResult::new(
        CheckId::CheckAczelClassic,
        slack,
        1.0,
        meta(seed, a.len()),
    ))
}

/// Popoviciu's exponential extension:
/// `a₁b₁ − Σ a_i b_i ≥ (a₁^p − Σ a_i^p)^{1/p} (b₁^q − Σ b_i^q)^{1/q}`.
pub fn check_popoviciu(
    a: &[f64],
    b: &[f64],
    p: f64,
    q: f64,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let ga = head_gap(a, p);
    let gb = head_gap(b, q);
    if ga <= 0.0 || gb <= 0.0 {
        return Err(CheckError::HypothesisUnsatisfied(
            "head must dominate tail power sum",
        ));
    }
    let cross = a[0] * b[0] - tail_dot(a, b);
    let slack = cross - ga.powf(1.0 / p) * gb.powf(1.0 / q);
    Ok(CheckResult::new(
        CheckId::CheckPopoviciu,
        slack,
        1.0,
        TrialMeta {
            pq: Some((p, q)),
            ..meta(seed, a.len())
        },
    ))
}

fn head_gap(seq: &[f64], expo: f64) -> f64 {
    seq[0].powf(expo) - seq[1..].iter().map(|v| v.powf(expo)).sum::<f64>()
}

fn tail_dot(a: &[f64], b: &[f64]) -> f64 {
    a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum()
}

/// Sum form for increasing non-negative (concave) f on a ratio-sandwiched
/// scalar instance:
/// `Σ f(a_i b_i) ≥ (1/c)·(Σ f(a_i^p))^{1/p} (Σ f(b_i^q))^{1/q}`.
pub fn check_sum_counterpart(
    inst: &ScalarInstance,
    f: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !f.is_increasing() {
        return Err(CheckError::HypothesisUnsatisfied("f must be increasing"));
    }
    let c = reverse_constant(inst.s, inst.t, (1.0 / inst.p).max(1.0 / inst.q))?;
    let dom = f.domain();
    let mut lhs = 0.0f64;
    let mut sum_p = 0.0f64;
    let mut sum_q = 0.0f64;
    for (&ai, &bi) in inst.a.iter().zip(&inst.b) {
        for arg in [ai * bi, ai.powf(inst.p), bi.powf(inst.q)] {
            if !dom.contains(arg) {
                return Err(MatError::DomainViolation {
                    name: f.name().to_string(),
                    eigenvalue: arg,
                    lo: dom.lo,
                    hi: dom.hi,
                }
                .into());
            }
        }
        lhs += f.eval(ai * bi);
        sum_p += f.eval(ai.powf(inst.p));
        sum_q += f.eval(bi.powf(inst.q));
    }
    let slack = lhs - (1.0 / c) * sum_p.powf(1.0 / inst.p) * sum_q.powf(1.0 / inst.q);
    Ok(CheckResult::new(
        CheckId::CheckSumCounterpart,
        slack,
        c,
        TrialMeta {
            pq: Some((inst.p, inst.q)),
            functions: vec![f.name().to_string()],
            ..meta(seed, inst.a.len())
        },
    ))
}

/// Counterpart of the classical Aczél inequality: for sequences whose tail
/// power sums dominate the heads,
///
/// ```text
/// Σ_{i≥2} x_i y_i − x₁y₁ ≥ (1/c)·(Σ x_i^p − x₁^p)^{1/p} (Σ y_i^q − y₁^q)^{1/q}
/// ```
pub fn check_aczel_counterpart(
    inst: &CounterpartInstance,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let (p, q) = (inst.p, inst.q);
    let xs: f64 = inst.x[1..].iter().map(|v| v.powf(p)).sum();
    let ys: f64 = inst.y[1..].iter().map(|v| v.powf(q)).sum();
    let xy: f64 = tail_dot_full(&inst.x, &inst.y);
    if xs < inst.x[0].powf(p) || ys < inst.y[0].powf(q) || xy < inst.x[0] * inst.y[0] {
        return Err(CheckError::HypothesisUnsatisfied(
            "tail sums must dominate the heads",
        ));
    }
    let c = reverse_constant(inst.s, inst.t, (1.0 / p).max(1.0 / q))?;
    let slack = (xy - inst.x[0] * inst.y[0])
        - (1.0 / c) * (xs - inst.x[0].powf(p)).powf(1.0 / p) * (ys - inst.y[0].powf(q)).powf(1.0 / q);
    Ok(CheckResult::new(
        CheckId::CheckAczelCounterpart,
        slack,
        c,
        TrialMeta {
            pq: Some((p, q)),
            ..meta(seed, inst.x.len())
        },
    ))
}

fn tail_dot_full(x: &[f64], y: &[f64]) -> f64 {
    x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum()
}

/// Commuting form: for commuting positive invertible A, B with
/// `s·A^p ≤ B^q ≤ t·A^p` and operator monotone f,
/// `f(AB) ≥ (1/c)·f(A^p)^{1/p} f(B^q)^{1/q}`.
pub fn check_commuting_product(
    pair: &CommutingPair,
    p: f64,
    q: f64,
    f: &FunctionDescriptor,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    if !(f.is_increasing() && f.operator_monotone) {
        return Err(CheckError::HypothesisUnsatisfied(
            "f must be operator monotone",
        ));
    }
    let comm = pair.a.commutator_norm(&pair.b)?;
    let comm_rel = comm / (pair.a.frobenius_norm() * pair.b.frobenius_norm()).max(1e-300);
    if comm_rel > COMMUTATOR_REL_TOL {
        return Err(CheckError::NotCommuting(comm_rel));
    }
    let ap = matcore::mpow(&pair.a, p)?;
    let bq = matcore::mpow(&pair.b, q)?;
    let (s, t) = measure_sandwich(&ap, &bq)?;
    let c = reverse_constant(s, t, (1.0 / p).max(1.0 / q))?;

    let ab = symmetrized_product(&pair.a, &pair.b);
    let f_ab = matcore::apply_fn(&ab, f)?;
    let f_ap_root = matcore::mpow(&matcore::apply_fn(&ap, f)?, 1.0 / p)?;
    let f_bq_root = matcore::mpow(&matcore::apply_fn(&bq, f)?, 1.0 / q)?;
    let rhs = symmetrized_product(&f_ap_root, &f_bq_root);
    let slack = loewner_slack(&rhs.scale(1.0 / c), &f_ab)?;
    Ok(CheckResult::new(
        CheckId::CheckCommutingProduct,
        slack,
        c,
        TrialMeta {
            pq: Some((p, q)),
            functions: vec![f.name().to_string()],
            ..meta(seed, pair.a.dim())
        },
    ))
}

/// Probe slack of the shifted norm form
/// `‖(AB)^{1/2}x‖² − 1 ≥ (1/c)·(‖A^{p/2}x‖²−1)^{1/p} (‖B^{q/2}x‖²−1)^{1/q}`
/// on a commuting pair with all spectra above 1.
///
/// This is NOT part of [`check_commuting_product`]'s verdict: the bound is
/// false in general. It is the probe form one would get from f(t) = t − 1,
/// and the step `c·f(M) ≥ f(c·M)` behind it fails for that f by exactly
/// `(c−1)·I`, so adversarial probes go negative by O(c−1). The function is
/// kept so the falsification witness stays executable.
pub fn commuting_norm_form_slack(
    pair: &CommutingPair,
    p: f64,
    q: f64,
    probes: &[Vec<f64>],
) -> Result<f64, CheckError> {
    let ap = matcore::mpow(&pair.a, p)?;
    let bq = matcore::mpow(&pair.b, q)?;
    let ab = symmetrized_product(&pair.a, &pair.b);
    for m in [&ap, &bq, &ab] {
        if matcore::eig_sym(m)?.lambda_min() <= 1.0 {
            return Err(CheckError::HypothesisUnsatisfied("spectra above 1"));
        }
    }
    let (s, t) = measure_sandwich(&ap, &bq)?;
    let c = reverse_constant(s, t, (1.0 / p).max(1.0 / q))?;
    let mut slack = f64::INFINITY;
    for x in probes {
        let lhs = matcore::quad_form(&ab, x)? - 1.0;
        let rhs = (1.0 / c)
            * (matcore::quad_form(&ap, x)? - 1.0).powf(1.0 / p)
            * (matcore::quad_form(&bq, x)? - 1.0).powf(1.0 / q);
        slack = slack.min(probe_slack(rhs, lhs));
    }
    Ok(slack)
}

fn symmetrized_product(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let prod = a.as_matrix().matmul(&b.as_matrix());
    let n = prod.dim();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = 0.5 * (prod.get(i, j) + prod.get(j, i));
        }
    }
    SymMatrix::new(n, &entries).expect("finite product")
}
