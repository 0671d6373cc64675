//! α-weighted arithmetic and geometric operator means.
//!
//! For strictly positive A and B (B may be semidefinite in the geometric
//! mean) and α ∈ [0, 1]:
//!
//! ```text
//! A ∇_α B = (1−α)·A + α·B
//! A ♯_α B = A^{1/2} (A^{−1/2} B A^{−1/2})^α A^{1/2}
//! ```
//!
//! The geometric mean is computed by congruence with A^{1/2}, exactly as the
//! defining formula — one code path, no iterative schemes.

use crate::matcore::{self, MatError, SymMatrix};
use crate::result::{CheckId, CheckResult, TrialMeta};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeanError {
    #[error("alpha = {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("(p, q) = ({p}, {q}) are not conjugate exponents with p, q > 1")]
    NotConjugate { p: f64, q: f64 },
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Weight α ∈ [0, 1], optionally derived from conjugate exponents
/// (1/p + 1/q = 1, p,q > 1) via α = 1/q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanWeight {
    alpha: f64,
    pq: Option<(f64, f64)>,
}

impl MeanWeight {
    pub fn from_alpha(alpha: f64) -> Result<Self, MeanError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(MeanError::AlphaOutOfRange(alpha));
        }
        Ok(Self { alpha, pq: None })
    }

    pub fn from_conjugate(p: f64, q: f64) -> Result<Self, MeanError> {
        if !(p > 1.0 && q > 1.0 && (1.0 / p + 1.0 / q - 1.0).abs() <= 1e-12) {
            return Err(MeanError::NotConjugate { p, q });
        }
        Ok(Self {
            alpha: 1.0 / q,
            pq: Some((p, q)),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn pq(&self) -> Option<(f64, f64)> {
        self.pq
    }

    /// R = max{α, 1−α}; equals max{1/p, 1/q} in the conjugate form.
    pub fn r(&self) -> f64 {
        self.alpha.max(1.0 - self.alpha)
    }
}

/// α-arithmetic mean `(1−α)A + αB`.
pub fn amean(a: &SymMatrix, b: &SymMatrix, w: MeanWeight) -> Result<SymMatrix, MeanError> {
    let alpha = w.alpha();
    Ok(a.scale(1.0 - alpha).add(&b.scale(alpha))?)
}

/// α-geometric mean `A^{1/2}(A^{−1/2} B A^{−1/2})^α A^{1/2}`.
///
/// Requires A strictly positive; B only needs to be positive semidefinite.
pub fn gmean(a: &SymMatrix, b: &SymMatrix, w: MeanWeight) -> Result<SymMatrix, MeanError> {
    if a.dim() != b.dim() {
        return Err(MatError::DimensionMismatch(a.dim(), b.dim()).into());
    }
    let da = matcore::eig_sym(a)?;
    let a_half = matcore::mpow_decomp(&da, 0.5)?;
    let a_half_inv = matcore::mpow_decomp(&da, -0.5)?;
    let inner = matcore::congruence(&a_half_inv.as_matrix(), b);
    let inner_pow = matcore::mpow(&inner, w.alpha())?;
    Ok(matcore::congruence(&a_half.as_matrix(), &inner_pow))
}

/// Relative deviation used by the identity checks: ‖X−Y‖_F normalized.
fn rel_dev(x: &SymMatrix, y: &SymMatrix) -> f64 {
    let num = x.sub(y).expect("same dimension").frobenius_norm();
    num / x.frobenius_norm().max(y.frobenius_norm()).max(1.0)
}

/// Tolerance each algebraic identity of [`gmean_identities_check`] must meet.
pub const GMEAN_IDENTITY_TOL: f64 = 1e-9;

/// Verifies the defining algebraic identities of the geometric mean on one
/// strictly positive pair:
///
/// (i) A♯₀B = A, (ii) A♯₁B = B, (iii) A♯_αB = B♯_{1−α}A,
/// (iv) A⁻¹♯_αB⁻¹ = (A♯_αB)⁻¹,
///
/// each to [`GMEAN_IDENTITY_TOL`] relative. The returned slack is
/// `GMEAN_IDENTITY_TOL − worst_deviation`, so nonnegative slack means every
/// identity held.
pub fn gmean_identities_check(
    a: &SymMatrix,
    b: &SymMatrix,
    w: MeanWeight,
) -> Result<CheckResult, MeanError> {
    let alpha = w.alpha();

    let g0 = gmean(a, b, MeanWeight::from_alpha(0.0)?)?;
    let g1 = gmean(a, b, MeanWeight::from_alpha(1.0)?)?;
    let dev_edge0 = rel_dev(&g0, a);
    let dev_edge1 = rel_dev(&g1, b);

    let gab = gmean(a, b, w)?;
    let gba = gmean(b, a, MeanWeight::from_alpha(1.0 - alpha)?)?;
    let dev_swap = rel_dev(&gab, &gba);

    let a_inv = matcore::mpow(a, -1.0)?;
    let b_inv = matcore::mpow(b, -1.0)?;
    let g_inv = gmean(&a_inv, &b_inv, w)?;
    let gab_inv = matcore::mpow(&gab, -1.0)?;
    let dev_inv = rel_dev(&g_inv, &gab_inv);

    let worst = dev_edge0.max(dev_edge1).max(dev_swap).max(dev_inv);
    Ok(CheckResult::new(
        CheckId::GmeanIdentities,
        GMEAN_IDENTITY_TOL - worst,
        1.0,
        TrialMeta {
            n: a.dim(),
            alpha: Some(alpha),
            ..TrialMeta::default()
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(alpha: f64) -> MeanWeight {
        MeanWeight::from_alpha(alpha).unwrap()
    }

    #[test]
    fn weight_validation() {
        assert!(MeanWeight::from_alpha(-0.1).is_err());
        assert!(MeanWeight::from_alpha(1.1).is_err());
        let cw = MeanWeight::from_conjugate(2.0, 2.0).unwrap();
        assert_eq!(cw.alpha(), 0.5);
        assert_eq!(cw.r(), 0.5);
        assert!(MeanWeight::from_conjugate(2.0, 3.0).is_err());
        let cw = MeanWeight::from_conjugate(3.0, 1.5).unwrap();
        assert!((cw.alpha() - 2.0 / 3.0).abs() < 1e-15);
        assert!((cw.r() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn amean_basics() {
        let a = SymMatrix::new(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let m = amean(&a, &a, w(0.3)).unwrap();
        assert!(m.sub(&a).unwrap().frobenius_norm() < 1e-15);

        let m = amean(&SymMatrix::zeros(2), &SymMatrix::identity(2), w(0.25)).unwrap();
        assert!(m.sub(&SymMatrix::identity(2).scale(0.25)).unwrap().frobenius_norm() < 1e-15);

        let m = amean(&SymMatrix::diag(&[1.0, 2.0]), &SymMatrix::diag(&[3.0, 4.0]), w(0.5)).unwrap();
        assert_eq!(m.get(0, 0), 2.0);
        assert_eq!(m.get(1, 1), 3.0);
    }

    #[test]
    fn gmean_of_equal_operands() {
        let a = SymMatrix::new(2, &[2.0, 0.5, 0.5, 1.5]).unwrap();
        for alpha in [0.0, 0.3, 0.5, 1.0] {
            let g = gmean(&a, &a, w(alpha)).unwrap();
            assert!(
                g.sub(&a).unwrap().frobenius_norm() < 1e-10,
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn gmean_with_identity_collapses_to_power() {
        let b = SymMatrix::new(2, &[3.0, 1.0, 1.0, 2.0]).unwrap();
        for alpha in [0.25, 0.5, 0.75] {
            let g = gmean(&SymMatrix::identity(2), &b, w(alpha)).unwrap();
            let p = matcore::mpow(&b, alpha).unwrap();
            assert!(g.sub(&p).unwrap().frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn gmean_commuting_diagonal_is_scalar_exponent_algebra() {
        // Diagonal operands commute, so A♯_αB = A^{1−α}B^α entrywise.
        let a = SymMatrix::diag(&[2.0, 5.0, 0.5]);
        let b = SymMatrix::diag(&[3.0, 1.0, 4.0]);
        let alpha = 0.3;
        let g = gmean(&a, &b, w(alpha)).unwrap();
        for i in 0..3 {
            let expect = a.get(i, i).powf(1.0 - alpha) * b.get(i, i).powf(alpha);
            assert!((g.get(i, i) - expect).abs() < 1e-12);
            for j in 0..3 {
                if i != j {
                    assert!(g.get(i, j).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gmean_requires_positive_first_operand() {
        let a = SymMatrix::diag(&[1.0, 0.0]);
        let b = SymMatrix::identity(2);
        assert!(matches!(
            gmean(&a, &b, w(0.5)),
            Err(MeanError::Mat(MatError::NotPositiveDefinite { .. }))
        ));
    }

    #[test]
    fn gmean_accepts_semidefinite_second_operand_at_edges() {
        let a = SymMatrix::identity(2);
        let b = SymMatrix::diag(&[1.0, 0.0]);
        let g0 = gmean(&a, &b, w(0.0)).unwrap();
        assert!(g0.sub(&a).unwrap().frobenius_norm() < 1e-12);
        let g1 = gmean(&a, &b, w(1.0)).unwrap();
        assert!(g1.sub(&b).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn identities_hold_exactly_on_identity_pair() {
        let res = gmean_identities_check(
            &SymMatrix::identity(3),
            &SymMatrix::identity(3),
            w(0.4),
        )
        .unwrap();
        assert!(res.slack > 0.0);
        assert!((res.slack - GMEAN_IDENTITY_TOL).abs() < 1e-12);
    }

    #[test]
    fn identities_on_diagonal_pair_are_exact_scalar_algebra() {
        let a = SymMatrix::diag(&[2.0, 0.7, 4.0]);
        let b = SymMatrix::diag(&[1.0, 3.0, 0.4]);
        let res = gmean_identities_check(&a, &b, w(0.3)).unwrap();
        assert!(res.slack >= GMEAN_IDENTITY_TOL - 1e-12);
    }

    #[test]
    fn identities_hold_on_random_pairs() {
        for seed in 0..20 {
            let a = crate::generators::rand_spd(3, (0.1, 10.0), seed).unwrap();
            let b = crate::generators::rand_spd(3, (0.1, 10.0), seed ^ 0xD1CE).unwrap();
            let res = gmean_identities_check(&a, &b, w(0.3)).unwrap();
            assert!(res.slack >= 0.0, "seed {seed}: worst deviation above 1e-9");
        }
    }
}
