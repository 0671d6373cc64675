//! Catalog of scalar test functions with declared analytic classes, plus
//! numeric validators for those classes.
//!
//! Each [`FunctionDescriptor`] declares its monotonicity, ordinary
//! convexity/concavity, geometric convexity/concavity
//! (`g(x^α y^{1−α}) ≶ g(x)^α g(y)^{1−α}`), and whether it is operator
//! monotone. Convexity classes are validated numerically on a geometric
//! grid; operator monotonicity is declared from known theory and only
//! spot-checked on random ordered 2×2 pairs, which is enough to catch a
//! mislabeled catalog entry.

use crate::matcore::{self, Domain, MatError, ScalarFn, SymMatrix};
use crate::prng::Prng;
use crate::result::{CheckId, CheckResult, TrialMeta};
use std::sync::Arc;

/// Validators pass when their minimum normalized slack stays above `−VALIDATOR_TOL`.
pub const VALIDATOR_TOL: f64 = 1e-10;
/// Tolerance for the 2×2 operator-monotonicity spot check (one functional
/// calculus round-trip per side).
pub const OP_MONOTONE_SPOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    /// Not monotone on its domain (catalog-only entries).
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Concave,
    Convex,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeoCurvature {
    GeoConcave,
    GeoConvex,
    Neither,
}

/// Validation mode shared by both convexity validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureMode {
    Concave,
    Convex,
}

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar function with declared domain and analytic class flags.
#[derive(Clone)]
pub struct FunctionDescriptor {
    name: &'static str,
    eval: Scalar,
    inverse: Option<Scalar>,
    domain: Domain,
    pub monotonicity: Monotonicity,
    pub curvature: Curvature,
    pub geo: GeoCurvature,
    pub operator_monotone: bool,
    /// Catalog-only entries are excluded from matrix checker suites.
    pub matrix_suite: bool,
}

impl std::fmt::Debug for FunctionDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionDescriptor")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("monotonicity", &self.monotonicity)
            .field("curvature", &self.curvature)
            .field("geo", &self.geo)
            .field("operator_monotone", &self.operator_monotone)
            .finish()
    }
}

impl ScalarFn for FunctionDescriptor {
    fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn name(&self) -> &str {
        self.name
    }
}

impl FunctionDescriptor {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &'static str,
        domain: Domain,
        monotonicity: Monotonicity,
        curvature: Curvature,
        geo: GeoCurvature,
        operator_monotone: bool,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name,
            eval: Arc::new(eval),
            inverse: None,
            domain,
            monotonicity,
            curvature,
            geo,
            operator_monotone,
            matrix_suite: true,
        }
    }

    pub fn with_inverse(mut self, inv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.inverse = Some(Arc::new(inv));
        self
    }

    fn validators_only(mut self) -> Self {
        self.matrix_suite = false;
        self
    }

    pub fn inverse(&self, u: f64) -> Option<f64> {
        self.inverse.as_ref().map(|f| f(u))
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_increasing(&self) -> bool {
        self.monotonicity == Monotonicity::Increasing
    }

    pub fn is_decreasing(&self) -> bool {
        self.monotonicity == Monotonicity::Decreasing
    }

    /// Concave in the usual sense AND geometrically concave.
    pub fn is_doubly_concave(&self) -> bool {
        self.curvature == Curvature::Concave && self.geo == GeoCurvature::GeoConcave
    }

    /// Convex in the usual sense AND geometrically convex.
    pub fn is_doubly_convex(&self) -> bool {
        self.curvature == Curvature::Convex && self.geo == GeoCurvature::GeoConvex
    }
}

/// Sampling spec for the validators: geometric spacing, endpoints clipped
/// 1e-3 away from the (possibly open) domain boundary, infinity truncated
/// at 1e3.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { points: 200 }
    }
}

impl GridSpec {
    pub fn sample(&self, domain: Domain) -> Vec<f64> {
        let lo = (domain.lo + 1e-3).max(1e-3);
        let hi = if domain.hi.is_finite() {
            domain.hi - 1e-3
        } else {
            1e3
        };
        debug_assert!(lo < hi, "degenerate validation grid");
        let m = self.points.max(2);
        let (llo, lhi) = (lo.ln(), hi.ln());
        (0..m)
            .map(|i| (llo + (lhi - llo) * i as f64 / (m - 1) as f64).exp())
            .collect()
    }
}

fn normalized_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

/// Checks the defining geometric convexity/concavity inequality on all grid
/// pairs (x, y) and α ∈ {0.1, …, 0.9}; reports the minimum normalized slack.
pub fn validate_geo_convexity(
    f: &FunctionDescriptor,
    mode: CurvatureMode,
    grid: GridSpec,
) -> CheckResult {
    let pts = grid.sample(f.domain());
    let mut min_slack = f64::INFINITY;
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i..] {
            for k in 1..=9 {
                let alpha = k as f64 / 10.0;
                let mixed = f.eval(x.powf(alpha) * y.powf(1.0 - alpha));
                let split = f.eval(x).powf(alpha) * f.eval(y).powf(1.0 - alpha);
                let slack = match mode {
                    CurvatureMode::Concave => normalized_gap(mixed, split),
                    CurvatureMode::Convex => normalized_gap(split, mixed),
                };
                min_slack = min_slack.min(slack);
            }
        }
    }
    CheckResult::new(
        CheckId::ValidateGeoConvexity,
        min_slack,
        1.0,
        TrialMeta {
            functions: vec![f.name.to_string()],
            ..TrialMeta::default()
        },
    )
}

/// Midpoint convexity/concavity slack on all grid pairs.
pub fn validate_convexity(
    f: &FunctionDescriptor,
    mode: CurvatureMode,
    grid: GridSpec,
) -> CheckResult {
    let pts = grid.sample(f.domain());
    let mut min_slack = f64::INFINITY;
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i..] {
            let mid = f.eval(0.5 * (x + y));
            let chord = 0.5 * (f.eval(x) + f.eval(y));
            let slack = match mode {
                CurvatureMode::Concave => normalized_gap(mid, chord),
                CurvatureMode::Convex => normalized_gap(chord, mid),
            };
            min_slack = min_slack.min(slack);
        }
    }
    CheckResult::new(
        CheckId::ValidateConvexity,
        min_slack,
        1.0,
        TrialMeta {
            functions: vec![f.name.to_string()],
            ..TrialMeta::default()
        },
    )
}

/// Spot-check of declared operator monotonicity on random ordered 2×2
/// pairs: draws X ≤ Y with spectra inside the domain and verifies
/// f(X) ≤ f(Y) (increasing) or f(Y) ≤ f(X) (decreasing) in Loewner order.
///
/// This catches catalog typos; it is not a proof of operator monotonicity.
pub fn validate_op_monotone_2x2(
    f: &FunctionDescriptor,
    trials: usize,
    seed: u64,
) -> Result<CheckResult, MatError> {
    let dom = f.domain();
    let lo = (dom.lo + 1e-2).max(5e-2);
    let hi = if dom.hi.is_finite() {
        dom.hi - 1e-2
    } else {
        20.0
    };
    let mid = 0.5 * (lo + hi);
    let mut rng = Prng::from_seed(seed);
    let mut min_slack = f64::INFINITY;
    for _ in 0..trials {
        let x = random_2x2(&mut rng, lo, mid);
        let bump = random_2x2(&mut rng, 1e-4, hi - mid);
        let y = x.add(&bump)?;
        let fx = matcore::apply_fn(&x, f)?;
        let fy = matcore::apply_fn(&y, f)?;
        let check = match f.monotonicity {
            Monotonicity::Increasing => matcore::loewner_leq(&fx, &fy, OP_MONOTONE_SPOT_TOL)?,
            Monotonicity::Decreasing => matcore::loewner_leq(&fy, &fx, OP_MONOTONE_SPOT_TOL)?,
            Monotonicity::Mixed => continue,
        };
        min_slack = min_slack.min(check.rel_slack());
    }
    Ok(CheckResult::new(
        CheckId::ValidateOpMonotone,
        min_slack,
        1.0,
        TrialMeta {
            seed,
            n: 2,
            functions: vec![f.name.to_string()],
            ..TrialMeta::default()
        },
    ))
}

fn random_2x2(rng: &mut Prng, lo: f64, hi: f64) -> SymMatrix {
    let l1 = rng.uniform(lo, hi);
    let l2 = rng.uniform(lo, hi);
    let theta = rng.uniform(0.0, std::f64::consts::PI);
    let (c, s) = (theta.cos(), theta.sin());
    SymMatrix::new(
        2,
        &[
            c * c * l1 + s * s * l2,
            c * s * (l1 - l2),
            c * s * (l1 - l2),
            s * s * l1 + c * c * l2,
        ],
    )
    .expect("finite 2x2")
}

/// The built-in function catalog.
///
/// Doubly concave entries on [0, ∞): powers t^p with p ∈ [0, 1], t/(t+1),
/// t/√(t+1), 1 − e^{−t}; on [1, ∞): log t and (t−1)^p; on [0, 1]: −t·log t.
/// Doubly convex entries are power sums Σ cᵢ t^{αᵢ} with αᵢ ∈ (−∞,0] ∪ [1,∞).
/// Decreasing geometrically convex entries: t^p with p < 0, and csc on
/// (0, π/2) (validator-only, since generated spectra leave its domain).
pub fn builtin_catalog() -> Vec<FunctionDescriptor> {
    vec![
        FunctionDescriptor::new(
            "sqrt",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t.sqrt(),
        )
        .with_inverse(|u| u * u),
        FunctionDescriptor::new(
            "pow_quarter",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t.powf(0.25),
        )
        .with_inverse(|u| u.powf(4.0)),
        FunctionDescriptor::new(
            "identity",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t,
        )
        .with_inverse(|u| u),
        FunctionDescriptor::new(
            "saturate",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t / (t + 1.0),
        ),
        FunctionDescriptor::new(
            "saturate_sqrt",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            false,
            |t| t / (t + 1.0).sqrt(),
        ),
        FunctionDescriptor::new(
            "exp_saturate",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            false,
            |t| -(-t).exp_m1(),
        ),
        FunctionDescriptor::new(
            "log",
            Domain::from_closed(1.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t.ln(),
        ),
        FunctionDescriptor::new(
            "shifted_sqrt",
            Domain::from_closed(1.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| (t - 1.0).sqrt(),
        ),
        FunctionDescriptor::new(
            "shift_down",
            Domain::from_open(1.0),
            Monotonicity::Increasing,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            true,
            |t| t - 1.0,
        )
        .with_inverse(|u| u + 1.0),
        FunctionDescriptor::new(
            "neg_entropy",
            Domain::closed(0.0, 1.0),
            Monotonicity::Mixed,
            Curvature::Concave,
            GeoCurvature::GeoConcave,
            false,
            |t| if t == 0.0 { 0.0 } else { -t * t.ln() },
        )
        .validators_only(),
        FunctionDescriptor::new(
            "inverse",
            Domain::from_open(0.0),
            Monotonicity::Decreasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            true,
            |t| 1.0 / t,
        )
        .with_inverse(|u| 1.0 / u),
        FunctionDescriptor::new(
            "inv_shift",
            Domain::from_closed(0.0),
            Monotonicity::Decreasing,
            Curvature::Convex,
            GeoCurvature::GeoConcave,
            true,
            |t| 1.0 / (1.0 + t),
        ),
        FunctionDescriptor::new(
            "inv_sqrt",
            Domain::from_open(0.0),
            Monotonicity::Decreasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            true,
            |t| 1.0 / t.sqrt(),
        )
        .with_inverse(|u| 1.0 / (u * u)),
        // Decreasing geometrically convex, but its reciprocal t² is not
        // concave, so the eigenvalue checkers cannot use it (see the
        // divergence test in `checkers`); validators only.
        FunctionDescriptor::new(
            "inv_square",
            Domain::from_open(0.0),
            Monotonicity::Decreasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            false,
            |t| 1.0 / (t * t),
        )
        .validators_only(),
        FunctionDescriptor::new(
            "square",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            false,
            |t| t * t,
        )
        .with_inverse(|u| u.sqrt()),
        FunctionDescriptor::new(
            "pow_3half",
            Domain::from_closed(0.0),
            Monotonicity::Increasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            false,
            |t| t.powf(1.5),
        )
        .with_inverse(|u| u.powf(2.0 / 3.0)),
        FunctionDescriptor::new(
            "poly_convex",
            Domain::from_open(0.0),
            Monotonicity::Increasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            false,
            |t| t + t * t,
        )
        .with_inverse(|u| 0.5 * ((1.0 + 4.0 * u).sqrt() - 1.0)),
        FunctionDescriptor::new(
            "csc",
            Domain::open(0.0, std::f64::consts::FRAC_PI_2),
            Monotonicity::Decreasing,
            Curvature::Convex,
            GeoCurvature::GeoConvex,
            false,
            |t| 1.0 / t.sin(),
        )
        .validators_only(),
    ]
}

/// Look up a catalog entry by name.
pub fn catalog_fn(name: &str) -> Option<FunctionDescriptor> {
    builtin_catalog().into_iter().find(|f| f.name == name)
}

/// Geometric mean `f^α g^{1−α}` of two descriptors, on the intersection of
/// their domains. Used for the doubly-concave closure checks.
pub fn geo_mean_of(
    f: &FunctionDescriptor,
    g: &FunctionDescriptor,
    alpha: f64,
) -> FunctionDescriptor {
    let (fe, ge) = (f.eval.clone(), g.eval.clone());
    let dom = intersect(f.domain, g.domain);
    FunctionDescriptor {
        name: "geo_mean_combination",
        eval: Arc::new(move |t| fe(t).powf(alpha) * ge(t).powf(1.0 - alpha)),
        inverse: None,
        domain: dom,
        monotonicity: f.monotonicity,
        curvature: f.curvature,
        geo: f.geo,
        operator_monotone: false,
        matrix_suite: false,
    }
}

/// Pointwise minimum of two descriptors.
pub fn min_of(f: &FunctionDescriptor, g: &FunctionDescriptor) -> FunctionDescriptor {
    let (fe, ge) = (f.eval.clone(), g.eval.clone());
    let dom = intersect(f.domain, g.domain);
    FunctionDescriptor {
        name: "min_combination",
        eval: Arc::new(move |t| fe(t).min(ge(t))),
        inverse: None,
        domain: dom,
        monotonicity: f.monotonicity,
        curvature: f.curvature,
        geo: f.geo,
        operator_monotone: false,
        matrix_suite: false,
    }
}

/// Pointwise reciprocal 1/g; flips monotonicity and the geometric class.
pub fn reciprocal_of(g: &FunctionDescriptor) -> FunctionDescriptor {
    let ge = g.eval.clone();
    FunctionDescriptor {
        name: "reciprocal_combination",
        eval: Arc::new(move |t| 1.0 / ge(t)),
        inverse: None,
        domain: g.domain,
        monotonicity: match g.monotonicity {
            Monotonicity::Increasing => Monotonicity::Decreasing,
            Monotonicity::Decreasing => Monotonicity::Increasing,
            Monotonicity::Mixed => Monotonicity::Mixed,
        },
        curvature: Curvature::Neither,
        geo: match g.geo {
            GeoCurvature::GeoConcave => GeoCurvature::GeoConvex,
            GeoCurvature::GeoConvex => GeoCurvature::GeoConcave,
            GeoCurvature::Neither => GeoCurvature::Neither,
        },
        operator_monotone: false,
        matrix_suite: false,
    }
}

fn intersect(a: Domain, b: Domain) -> Domain {
    let (lo, closed_lo) = if a.lo > b.lo {
        (a.lo, a.closed_lo)
    } else if b.lo > a.lo {
        (b.lo, b.closed_lo)
    } else {
        (a.lo, a.closed_lo && b.closed_lo)
    };
    let (hi, closed_hi) = if a.hi < b.hi {
        (a.hi, a.closed_hi)
    } else if b.hi < a.hi {
        (b.hi, b.closed_hi)
    } else {
        (a.hi, a.closed_hi && b.closed_hi)
    };
    Domain::new(lo, hi, closed_lo, closed_hi)
}
