//! Scalar constant zoo: Kantorovich constant, generalized Kantorovich
//! constant, Specht ratio, and the composite reverse constant
//! `c = max{K(s)^R, K(t)^R}`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstError {
    #[error("argument must be strictly positive, got {0}")]
    NonPositiveInput(f64),
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid sandwich bounds: s = {s}, t = {t}")]
    InvalidBounds { s: f64, t: f64 },
}

/// Realized sandwich constants `0 < s ≤ t` with condition ratio `w = t/s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichBounds {
    pub s: f64,
    pub t: f64,
    pub w: f64,
}

impl SandwichBounds {
    pub fn new(s: f64, t: f64) -> Result<Self, ConstError> {
        if !(s > 0.0 && t >= s && t.is_finite()) {
            return Err(ConstError::InvalidBounds { s, t });
        }
        Ok(Self { s, t, w: t / s })
    }
}

/// Kantorovich constant `K(h) = (h+1)²/(4h)` for `h > 0`.
///
/// Always ≥ 1, equal to 1 only at h = 1, and symmetric: K(h) = K(1/h).
pub fn kantorovich(h: f64) -> Result<f64, ConstError> {
    if !(h > 0.0) {
        return Err(ConstError::NonPositiveInput(h));
    }
    Ok((h + 1.0) * (h + 1.0) / (4.0 * h))
}

/// Width of the removable-singularity guard bands of [`kantorovich_gen`].
pub const KGEN_SINGULARITY_BAND: f64 = 1e-9;

/// Generalized Kantorovich constant
///
/// ```text
/// K(w, α) = (w^α − w)/((α−1)(w−1)) · ((α−1)/α · (w^α−1)/(w^α−w))^α
/// ```
///
/// for `w > 0` and `α ∈ [0, 1]`, taking values in (0, 1]. The removable
/// singularities at w = 1, α = 0, α = 1 return exactly 1: the function is
/// used only as a bound constant and its limits there are 1.
pub fn kantorovich_gen(w: f64, alpha: f64) -> Result<f64, ConstError> {
    if !(w > 0.0) {
        return Err(ConstError::NonPositiveInput(w));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(ConstError::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if (w - 1.0).abs() < KGEN_SINGULARITY_BAND
        || !(KGEN_SINGULARITY_BAND..=1.0 - KGEN_SINGULARITY_BAND).contains(&alpha)
    {
        return Ok(1.0);
    }
    let wa = w.powf(alpha);
    let first = (wa - w) / ((alpha - 1.0) * (w - 1.0));
    let inner = (alpha - 1.0) / alpha * (wa - 1.0) / (wa - w);
    Ok(first * inner.powf(alpha))
}

/// Half-width of the series window used by [`specht`] around x = 1.
pub const SPECHT_SERIES_BAND: f64 = 1e-6;

/// Specht ratio `S(x) = x^{1/(x−1)} / (e · ln x^{1/(x−1)})` for `x > 0`.
///
/// Extended by continuity to S(1) = 1. Near x = 1 the direct formula is a
/// 0/0 cancellation, so for |x − 1| < [`SPECHT_SERIES_BAND`] the quadratic
/// expansion `1 + (x−1)²/8` is used instead.
pub fn specht(x: f64) -> Result<f64, ConstError> {
    if !(x > 0.0) {
        return Err(ConstError::NonPositiveInput(x));
    }
    let u = x - 1.0;
    if u.abs() < SPECHT_SERIES_BAND {
        return Ok(1.0 + u * u / 8.0);
    }
    // S = e^{L−1}/L with L = ln(x)/(x−1); this form avoids overflow of
    // x^{1/(x−1)} for x near 0.
    let l = x.ln() / u;
    Ok((l - 1.0).exp() / l)
}

/// Composite reverse constant `c = max{K(s)^R, K(t)^R}` for sandwich bounds
/// `0 < s ≤ t` and exponent `R ∈ [0, 1]`. Always ≥ 1.
pub fn reverse_constant(s: f64, t: f64, r: f64) -> Result<f64, ConstError> {
    if !(s > 0.0 && t >= s) {
        return Err(ConstError::InvalidBounds { s, t });
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(ConstError::OutOfRange {
            name: "R",
            value: r,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let ks = kantorovich(s)?.powf(r);
    let kt = kantorovich(t)?.powf(r);
    Ok(ks.max(kt))
}
