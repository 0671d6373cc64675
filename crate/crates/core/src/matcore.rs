//! Dense real symmetric linear algebra.
//!
//! Everything here works on small (2 ≤ n ≤ 32) real symmetric matrices,
//! the artifact's stand-in for self-adjoint operators. The eigensolver is a
//! cyclic Jacobi iteration: self-contained, deterministic, and accurate to
//! near machine precision at these sizes. Eigenvalues are sorted descending
//! everywhere, so `lambda[k]` is the (k+1)-th largest.

use thiserror::Error;

/// Hard dimension bounds for the whole artifact.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 32;

/// Jacobi convergence: off-diagonal Frobenius norm target, relative to ‖A‖_F.
pub const JACOBI_REL_TOL: f64 = 1e-13;
/// Jacobi sweep cap before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Strict positivity: λ_min must exceed this fraction of λ_max.
pub const POSITIVITY_REL_TOL: f64 = 1e-12;
/// Unit-vector norm tolerance for quadratic forms.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} outside supported range [{MIN_DIM}, {MAX_DIM}]")]
    DimensionOutOfRange(usize),
    #[error("matrix entries must be finite")]
    NotFinite,
    #[error("Jacobi sweep limit reached: off-diagonal norm {off:.3e} above threshold {threshold:.3e}")]
    NonConvergence { off: f64, threshold: f64 },
    #[error("eigenvalue {eigenvalue} of `{name}` argument outside domain [{lo}, {hi}]")]
    DomainViolation {
        name: String,
        eigenvalue: f64,
        lo: f64,
        hi: f64,
    },
    #[error("matrix not strictly positive definite: λ_min = {lambda_min:.3e}, λ_max = {lambda_max:.3e}")]
    NotPositiveDefinite { lambda_min: f64, lambda_max: f64 },
    #[error("probe vector is not unit length: ‖x‖ = {norm}")]
    NotUnitVector { norm: f64 },
}

/// Open/closed interval on which a scalar function is defined.
///
/// `hi = f64::INFINITY` models unbounded domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Domain {
    pub const fn new(lo: f64, hi: f64, closed_lo: bool, closed_hi: bool) -> Self {
        Self {
            lo,
            hi,
            closed_lo,
            closed_hi,
        }
    }

    /// `[lo, hi]`
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    /// `(lo, hi)`
    pub const fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, ∞)`
    pub const fn from_closed(lo: f64) -> Self {
        Self::new(lo, f64::INFINITY, true, false)
    }

    /// `(lo, ∞)`
    pub const fn from_open(lo: f64) -> Self {
        Self::new(lo, f64::INFINITY, false, false)
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.closed_lo { t >= self.lo } else { t > self.lo };
        let below = if self.closed_hi { t <= self.hi } else { t < self.hi };
        above && below
    }
}

/// A scalar function with a declared domain, usable in the functional calculus.
pub trait ScalarFn {
    fn eval(&self, t: f64) -> f64;
    fn domain(&self) -> Domain;
    fn name(&self) -> &str;
}

/// Square dense matrix, row-major. Used for eigenvector bases and unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut t = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, x.len(), "mul_vec dimension mismatch");
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.data[i * n + j] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// ‖MᵀM − I‖_F, the orthogonality defect.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let g = self.transpose().matmul(self);
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = g.get(i, j) - target;
                acc += d * d;
            }
        }
        acc.sqrt()
    }

    /// Symmetrize into a `SymMatrix`, averaging the off-diagonal halves.
    pub fn into_sym(self) -> Result<SymMatrix, MatError> {
        SymMatrix::new(self.n, &self.data)
    }
}

/// Real symmetric n×n matrix, symmetrized exactly on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Build from row-major entries; the result stores `(a_ij + a_ji)/2`.
    pub fn new(n: usize, entries: &[f64]) -> Result<Self, MatError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(MatError::DimensionOutOfRange(n));
        }
        if entries.len() != n * n {
            return Err(MatError::DimensionMismatch(entries.len(), n * n));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(MatError::NotFinite);
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = entries[i * n + i];
            for j in (i + 1)..n {
                let v = 0.5 * (entries[i * n + j] + entries[j * n + i]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = d[i];
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.clone(),
        }
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, rhs: &SymMatrix) -> Result<SymMatrix, MatError> {
        if self.n != rhs.n {
            return Err(MatError::DimensionMismatch(self.n, rhs.n));
        }
        Ok(SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &SymMatrix) -> Result<SymMatrix, MatError> {
        if self.n != rhs.n {
            return Err(MatError::DimensionMismatch(self.n, rhs.n));
        }
        Ok(SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// ‖AB − BA‖_F. Both operands must share the dimension.
    pub fn commutator_norm(&self, rhs: &SymMatrix) -> Result<f64, MatError> {
        if self.n != rhs.n {
            return Err(MatError::DimensionMismatch(self.n, rhs.n));
        }
        let ab = self.as_matrix().matmul(&rhs.as_matrix());
        let ba = rhs.as_matrix().matmul(&self.as_matrix());
        let mut acc = 0.0;
        for k in 0..self.n * self.n {
            let d = ab.data[k] - ba.data[k];
            acc += d * d;
        }
        Ok(acc.sqrt())
    }
}

/// Orthogonal eigenbasis plus descending eigenvalues of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    /// Columns are eigenvectors, ordered to match `lambda`.
    pub q: Matrix,
    /// Eigenvalues sorted descending: `lambda[k] ≥ lambda[k+1]`.
    pub lambda: Vec<f64>,
}

impl SpectralDecomp {
    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.lambda.last().expect("nonempty spectrum")
    }

    /// Q · diag(map(λ)) · Qᵀ, symmetrized.
    pub fn assemble(&self, mapped: &[f64]) -> SymMatrix {
        let n = self.dim();
        assert_eq!(mapped.len(), n);
        let q = &self.q;
        let mut out = SymMatrix::zeros(n);
        // out_ij = Σ_k q_ik λ_k q_jk; fill upper triangle then mirror.
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += q.get(i, k) * mapped[k] * q.get(j, k);
                }
                out.data[i * n + j] = acc;
                out.data[j * n + i] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.assemble(&self.lambda)
    }
}

/// Eigendecomposition by cyclic Jacobi sweeps.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// `JACOBI_REL_TOL · ‖A‖_F`; errors with [`MatError::NonConvergence`] after
/// [`JACOBI_MAX_SWEEPS`] sweeps. Deterministic for fixed input.
pub fn eig_sym(a: &SymMatrix) -> Result<SpectralDecomp, MatError> {
    let n = a.n;
    let mut m = a.data.clone();
    let mut q = Matrix::identity(n);
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    let off_norm = |m: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = m[i * n + j];
                acc += 2.0 * v * v;
            }
        }
        acc.sqrt()
    };

    let mut converged = off_norm(&m) <= threshold;
    if !converged {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            for p in 0..n - 1 {
                for r in (p + 1)..n {
                    let apq = m[p * n + r];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = m[p * n + p];
                    let aqq = m[r * n + r];
                    // Stable rotation (Golub & Van Loan): t = sign(θ)/(|θ|+√(1+θ²)).
                    let theta = 0.5 * (aqq - app) / apq;
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    m[p * n + p] = app - t * apq;
                    m[r * n + r] = aqq + t * apq;
                    m[p * n + r] = 0.0;
                    m[r * n + p] = 0.0;
                    for k in 0..n {
                        if k != p && k != r {
                            let akp = m[k * n + p];
                            let akq = m[k * n + r];
                            m[k * n + p] = c * akp - s * akq;
                            m[p * n + k] = m[k * n + p];
                            m[k * n + r] = s * akp + c * akq;
                            m[r * n + k] = m[k * n + r];
                        }
                    }
                    for k in 0..n {
                        let qkp = q.get(k, p);
                        let qkq = q.get(k, r);
                        q.set(k, p, c * qkp - s * qkq);
                        q.set(k, r, s * qkp + c * qkq);
                    }
                }
            }
            if off_norm(&m) <= threshold {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(MatError::NonConvergence {
            off: off_norm(&m),
            threshold,
        });
    }

    let mut idx: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    idx.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let lambda: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    let mut q_sorted = Matrix::zeros(n);
    for (new_col, &old_col) in idx.iter().enumerate() {
        for row in 0..n {
            q_sorted.set(row, new_col, q.get(row, old_col));
        }
    }
    Ok(SpectralDecomp {
        q: q_sorted,
        lambda,
    })
}

/// Spectral norm, ‖A‖₂ = max |λ|.
pub fn spectral_norm(a: &SymMatrix) -> Result<f64, MatError> {
    let d = eig_sym(a)?;
    Ok(d.lambda.iter().fold(0.0f64, |m, &v| m.max(v.abs())))
}

/// Functional calculus: `f(A) = Q · diag(f(λ)) · Qᵀ`.
///
/// Every eigenvalue of `A` must lie in `f`'s declared domain.
pub fn apply_fn<F: ScalarFn + ?Sized>(a: &SymMatrix, f: &F) -> Result<SymMatrix, MatError> {
    let d = eig_sym(a)?;
    apply_fn_decomp(&d, f)
}

/// Same as [`apply_fn`] but reusing an existing decomposition.
pub fn apply_fn_decomp<F: ScalarFn + ?Sized>(
    d: &SpectralDecomp,
    f: &F,
) -> Result<SymMatrix, MatError> {
    let dom = f.domain();
    for &l in &d.lambda {
        if !dom.contains(l) {
            return Err(MatError::DomainViolation {
                name: f.name().to_string(),
                eigenvalue: l,
                lo: dom.lo,
                hi: dom.hi,
            });
        }
    }
    let mapped: Vec<f64> = d.lambda.iter().map(|&l| f.eval(l)).collect();
    Ok(d.assemble(&mapped))
}

/// Spectral power `A^r`.
///
/// For `r < 0` or non-integer `r`, `A` must be strictly positive
/// (λ_min > [`POSITIVITY_REL_TOL`] · λ_max). `mpow(A, 1)` returns `A` itself
/// and `mpow(A, 0)` the identity.
pub fn mpow(a: &SymMatrix, r: f64) -> Result<SymMatrix, MatError> {
    if r == 1.0 {
        return Ok(a.clone());
    }
    if r == 0.0 {
        return Ok(SymMatrix::identity(a.n));
    }
    let d = eig_sym(a)?;
    mpow_decomp(&d, r)
}

/// Same as [`mpow`] but reusing an existing decomposition.
pub fn mpow_decomp(d: &SpectralDecomp, r: f64) -> Result<SymMatrix, MatError> {
    if r < 0.0 || r.fract() != 0.0 {
        let lmin = d.lambda_min();
        let lmax = d.lambda_max();
        if !(lmin > POSITIVITY_REL_TOL * lmax && lmin > 0.0) {
            return Err(MatError::NotPositiveDefinite {
                lambda_min: lmin,
                lambda_max: lmax,
            });
        }
    }
    let mapped: Vec<f64> = d.lambda.iter().map(|&l| l.powf(r)).collect();
    Ok(d.assemble(&mapped))
}

/// Outcome of a Loewner-order test `X ≤ Y`.
#[derive(Debug, Clone, Copy)]
pub struct LoewnerCheck {
    /// λ_min(Y − X), unnormalized.
    pub slack: f64,
    /// max(1, ‖X‖₂, ‖Y‖₂); divides `slack` for relative comparisons.
    pub scale: f64,
    pub holds: bool,
}

impl LoewnerCheck {
    /// Slack normalized by the operator scale of the operands.
    pub fn rel_slack(&self) -> f64 {
        self.slack / self.scale
    }
}

/// Test `X ≤ Y` in the Loewner order.
///
/// `slack = λ_min(Y − X)`; the order holds when
/// `slack ≥ −tol · max(1, ‖X‖₂, ‖Y‖₂)`.
pub fn loewner_leq(x: &SymMatrix, y: &SymMatrix, tol: f64) -> Result<LoewnerCheck, MatError> {
    if x.n != y.n {
        return Err(MatError::DimensionMismatch(x.n, y.n));
    }
    let diff = y.sub(x)?;
    let slack = eig_sym(&diff)?.lambda_min();
    let scale = 1.0f64.max(spectral_norm(x)?).max(spectral_norm(y)?);
    Ok(LoewnerCheck {
        slack,
        scale,
        holds: slack >= -tol * scale,
    })
}

/// Orthogonal matrix aligning the descending eigenbasis of `Y` with `X`'s:
/// `U = Q_X · Q_Yᵀ`, so `U·Y·Uᵀ` keeps `Y`'s spectrum but lives in `X`'s
/// eigenvector frame. Realizes "there exists a unitary U" claims
/// constructively.
pub fn aligned_unitary(x: &SymMatrix, y: &SymMatrix) -> Result<Matrix, MatError> {
    if x.n != y.n {
        return Err(MatError::DimensionMismatch(x.n, y.n));
    }
    let dx = eig_sym(x)?;
    let dy = eig_sym(y)?;
    Ok(dx.q.matmul(&dy.q.transpose()))
}

/// Rayleigh quotient ⟨Ax, x⟩ for a unit vector `x`.
pub fn quad_form(a: &SymMatrix, x: &[f64]) -> Result<f64, MatError> {
    if a.n != x.len() {
        return Err(MatError::DimensionMismatch(a.n, x.len()));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(MatError::NotUnitVector { norm });
    }
    let ax = a.as_matrix().mul_vec(x);
    Ok(ax.iter().zip(x).map(|(a, b)| a * b).sum())
}

/// Congruence `T · S · Tᵀ`, symmetrized.
pub fn congruence(t: &Matrix, s: &SymMatrix) -> SymMatrix {
    let prod = t.matmul(&s.as_matrix()).matmul(&t.transpose());
    let n = prod.n;
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = 0.5 * (prod.get(i, j) + prod.get(j, i));
            out.data[i * n + j] = v;
            out.data[j * n + i] = v;
        }
    }
    out
}
