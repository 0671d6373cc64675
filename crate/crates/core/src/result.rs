//! Check identifiers and the record emitted by every inequality check.

use serde::Serialize;

/// Every runnable check suite, one per inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    CheckYoung,
    CheckReverseYoung,
    CheckLemmaGdec,
    CheckLemmaFmono,
    CheckAczelVariant,
    CheckScalarSandwich,
    CheckEigDoublyConcave,
    CheckUnitaryFormConcave,
    CheckAczelGenKantorovich,
    CheckEigDoublyConvex,
    CheckReverseAczel,
    CheckEigDecGeoconvex,
    CheckReverseAczelDec,
    CheckAczelClassic,
    CheckPopoviciu,
    CheckSumCounterpart,
    CheckAczelCounterpart,
    CheckCommutingProduct,
    GmeanIdentities,
    // Catalog validators; not campaign suites, so not part of `ALL`.
    ValidateConvexity,
    ValidateGeoConvexity,
    ValidateOpMonotone,
}

/// Tolerance class of a check: matrix checks compare Loewner/eigenvalue
/// slacks of functional-calculus chains; scalar checks are plain sequence
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Matrix,
    Scalar,
}

impl CheckId {
    pub const ALL: [CheckId; 19] = [
        CheckId::CheckYoung,
        CheckId::CheckReverseYoung,
        CheckId::CheckLemmaGdec,
        CheckId::CheckLemmaFmono,
        CheckId::CheckAczelVariant,
        CheckId::CheckScalarSandwich,
        CheckId::CheckEigDoublyConcave,
        CheckId::CheckUnitaryFormConcave,
        CheckId::CheckAczelGenKantorovich,
        CheckId::CheckEigDoublyConvex,
        CheckId::CheckReverseAczel,
        CheckId::CheckEigDecGeoconvex,
        CheckId::CheckReverseAczelDec,
        CheckId::CheckAczelClassic,
        CheckId::CheckPopoviciu,
        CheckId::CheckSumCounterpart,
        CheckId::CheckAczelCounterpart,
        CheckId::CheckCommutingProduct,
        CheckId::GmeanIdentities,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::CheckYoung => "check_young",
            CheckId::CheckReverseYoung => "check_reverse_young",
            CheckId::CheckLemmaGdec => "check_lemma_gdec",
            CheckId::CheckLemmaFmono => "check_lemma_fmono",
            CheckId::CheckAczelVariant => "check_aczel_variant",
            CheckId::CheckScalarSandwich => "check_scalar_sandwich",
            CheckId::CheckEigDoublyConcave => "check_eig_doubly_concave",
            CheckId::CheckUnitaryFormConcave => "check_unitary_form_concave",
            CheckId::CheckAczelGenKantorovich => "check_aczel_gen_kantorovich",
            CheckId::CheckEigDoublyConvex => "check_eig_doubly_convex",
            CheckId::CheckReverseAczel => "check_reverse_aczel",
            CheckId::CheckEigDecGeoconvex => "check_eig_dec_geoconvex",
            CheckId::CheckReverseAczelDec => "check_reverse_aczel_dec",
            CheckId::CheckAczelClassic => "check_aczel_classic",
            CheckId::CheckPopoviciu => "check_popoviciu",
            CheckId::CheckSumCounterpart => "check_sum_counterpart",
            CheckId::CheckAczelCounterpart => "check_aczel_counterpart",
            CheckId::CheckCommutingProduct => "check_commuting_product",
            CheckId::GmeanIdentities => "gmean_identities",
            CheckId::ValidateConvexity => "validate_convexity",
            CheckId::ValidateGeoConvexity => "validate_geo_convexity",
            CheckId::ValidateOpMonotone => "validate_op_monotone",
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        CheckId::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    /// Which tolerance applies to this check's slack.
    pub fn kind(self) -> CheckKind {
        match self {
            CheckId::CheckAczelClassic
            | CheckId::CheckPopoviciu
            | CheckId::CheckSumCounterpart
            | CheckId::CheckAczelCounterpart => CheckKind::Scalar,
            _ => CheckKind::Matrix,
        }
    }
}

impl std::fmt::Display for CheckId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Instance parameters recorded with each check outcome.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TrialMeta {
    pub seed: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pq: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub functions: Vec<String>,
}

/// Outcome of one inequality check.
///
/// `slack ≥ 0` means the inequality holds at the tested instance; the value
/// is the minimum over all sub-inequalities, eigenvalue indices, and probe
/// vectors involved. Matrix checks report slack relative to the operand
/// scale; the scalar sequence checks report raw slack.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: CheckId,
    pub slack: f64,
    /// The bound constant the check used (c, K(w,α), or 1).
    pub constant_used: f64,
    pub hypotheses_met: bool,
    /// Smallest constant that would still make the inequality hold at this
    /// instance, where the check has a natural ratio form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_ratio: Option<f64>,
    pub trial: TrialMeta,
}

impl CheckResult {
    pub fn new(check_id: CheckId, slack: f64, constant_used: f64, trial: TrialMeta) -> Self {
        Self {
            check_id,
            slack,
            constant_used,
            hypotheses_met: true,
            observed_ratio: None,
            trial,
        }
    }

    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.observed_ratio = Some(ratio);
        self
    }
}
