//! Numeric primitives: complex Hermitian matrix algebra, probability
//! vectors and the two entropy functionals (Shannon and von Neumann)
//! everything else consumes.
//!
//! All entropies are in bits (log base 2). All operations are pure
//! functions on immutable values.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Elementwise tolerance for conjugate symmetry.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Tolerance on trace-1 and probability normalization.
pub const TRACE_TOL: f64 = 1e-9;
/// Eigenvalues above this magnitude count towards the numerical rank.
pub const RANK_EPS: f64 = 1e-8;
/// Negative eigenvalues/probabilities no larger than this are clipped to zero.
pub const NEG_CLIP: f64 = 1e-9;

fn log2_term(p: f64) -> f64 {
    // 0 log 0 := 0
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// A probability distribution over the message alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    p: Vec<f64>,
}

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        let mut q = Vec::with_capacity(p.len());
        for &v in &p {
            if v < -1e-12 {
                return Err(Error::InvalidDistribution(format!("negative entry {v}")));
            }
            q.push((v / sum).max(0.0));
        }
        Ok(Self { p: q })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Shannon entropy of a message distribution, in bits.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    p.as_slice().iter().copied().map(log2_term).sum()
}

/// A d-by-d complex Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    mat: CMatrix,
}

impl HermitianOp {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::InvalidOperator(format!(
                "expected a square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        for i in 0..mat.nrows() {
            for j in 0..mat.ncols() {
                let diff = (mat[(i, j)] - mat[(j, i)].conj()).norm();
                if diff > HERMITICITY_TOL {
                    return Err(Error::InvalidOperator(format!(
                        "not Hermitian at ({i},{j}): residual {diff:.3e}"
                    )));
                }
            }
        }
        // symmetrize away the round-off so downstream algebra is exact
        let herm = (&mat + mat.adjoint()).scale(0.5);
        Ok(Self { mat: herm })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut mat = CMatrix::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            mat[(i, i)] = Complex64::new(v, 0.0);
        }
        Self { mat }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            mat: CMatrix::identity(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column k is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.eigenvectors.nrows();
        let mut out = CMatrix::zeros(d, d);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(k);
            out += (&v * v.adjoint()).scale(lam);
        }
        out
    }
}

/// Hermitian eigendecomposition with a deterministic descending eigenvalue order.
pub fn eigh(h: &HermitianOp) -> Spectrum {
    let se = nalgebra::linalg::SymmetricEigen::new(h.mat.clone());
    let d = h.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[b]
            .partial_cmp(&se.eigenvalues[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut eigenvalues = Vec::with_capacity(d);
    let mut eigenvectors = CMatrix::zeros(d, d);
    for (k, &idx) in order.iter().enumerate() {
        eigenvalues.push(se.eigenvalues[idx]);
        eigenvectors.set_column(k, &se.eigenvectors.column(idx));
    }
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// A trace-one positive semi-definite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        let op = HermitianOp::new(mat)
            .map_err(|e| Error::InvalidState(format!("density matrix: {e}")))?;
        let tr = op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let spec = eigh(&op);
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -NEG_CLIP {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self {
            mat: op.mat.unscale(tr),
        })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            mat: psi.projector(),
        }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: CMatrix::identity(d, d).unscale(d as f64),
        }
    }

    /// Uniform mixture of the given states.
    pub fn average(states: &[DensityMatrix]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidState("empty state list".into()))?;
        let d = first.dim();
        let mut acc = CMatrix::zeros(d, d);
        for s in states {
            if s.dim() != d {
                return Err(Error::DimensionMismatch(format!(
                    "state dimensions {} vs {d}",
                    s.dim()
                )));
            }
            acc += s.matrix();
        }
        Ok(Self {
            mat: acc.unscale(states.len() as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn as_op(&self) -> HermitianOp {
        HermitianOp {
            mat: self.mat.clone(),
        }
    }

    /// Numerical rank: eigenvalues above `RANK_EPS`.
    pub fn rank(&self) -> usize {
        eigh(&self.as_op())
            .eigenvalues
            .iter()
            .filter(|&&l| l > RANK_EPS)
            .count()
    }
}

/// Von Neumann entropy in bits. Eigenvalues in [-NEG_CLIP, 0) are clipped
/// to zero before the logarithm.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    eigh(&rho.as_op())
        .eigenvalues
        .iter()
        .map(|&l| log2_term(l.clamp(0.0, 1.0)))
        .sum()
}

/// A unit-norm pure state. Equality is defined on projectors, so global
/// phase is irrelevant.
#[derive(Debug, Clone)]
pub struct PureState {
    amps: CVector,
}

impl PureState {
    pub fn new(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if (norm * norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "squared norm is {}, expected 1",
                norm * norm
            )));
        }
        Ok(Self {
            amps: amps.unscale(norm),
        })
    }

    /// Normalizes a nonzero amplitude vector.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm < 1e-12 {
            return Err(Error::InvalidState("zero amplitude vector".into()));
        }
        Ok(Self {
            amps: amps.unscale(norm),
        })
    }

    pub fn basis(d: usize, k: usize) -> Self {
        let mut amps = CVector::zeros(d);
        amps[k] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn from_reals(re: &[f64]) -> Self {
        let amps = CVector::from_iterator(re.len(), re.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::normalized(amps).expect("nonzero real amplitudes")
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn projector(&self) -> CMatrix {
        &self.amps * self.amps.adjoint()
    }

    /// Max-elementwise distance between the two projectors.
    pub fn projector_distance(&self, other: &PureState) -> f64 {
        let diff = self.projector() - other.projector();
        diff.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Global-phase-invariant equality within the given tolerance.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        self.dim() == other.dim() && self.projector_distance(other) <= tol
    }
}

/// Uhlmann fidelity between two density matrices.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let sa = eigh(&a.as_op());
    let d = a.dim();
    let mut sqrt_a = CMatrix::zeros(d, d);
    for (k, &l) in sa.eigenvalues.iter().enumerate() {
        let v = sa.eigenvectors.column(k);
        sqrt_a += (&v * v.adjoint()).scale(l.max(0.0).sqrt());
    }
    let inner = &sqrt_a * b.matrix() * &sqrt_a;
    let spec = eigh(&HermitianOp::new(inner).map_err(|e| {
        Error::InvalidState(format!("fidelity intermediate not Hermitian: {e}"))
    })?);
    let root_sum: f64 = spec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok(root_sum * root_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_density, random_hermitian};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn shannon_deterministic_message() {
        let p = ProbVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&p), 0.0);
    }

    #[test]
    fn shannon_uniform_over_four() {
        let p = ProbVector::new(vec![0.25; 4]).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&p), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn shannon_table_one_i3_distribution() {
        // distribution built from the two-strategy mixture behind the I3 row
        let p = ProbVector::new(vec![0.5630, 0.3333, 0.1037]).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&p), 1.334, epsilon = 1e-3);
    }

    #[test]
    fn shannon_rejects_negative_entry() {
        assert!(ProbVector::new(vec![1.2, -0.2]).is_err());
    }

    #[test]
    fn von_neumann_maximally_mixed_qubit() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn von_neumann_five_eighths() {
        let rho = DensityMatrix::new(CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(5.0 / 8.0, 0.0),
            Complex64::new(3.0 / 8.0, 0.0),
        ])))
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 0.954, epsilon = 1e-3);
    }

    #[test]
    fn von_neumann_half_quarter_quarter() {
        let rho = DensityMatrix::new(CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.25, 0.0),
            Complex64::new(0.25, 0.0),
        ])))
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 1.5, epsilon = 1e-6);
    }

    #[test]
    fn von_neumann_rejects_bad_state() {
        let mat = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ]));
        assert!(DensityMatrix::new(mat).is_err());
    }

    #[test]
    fn eigh_sorted_diagonal() {
        let spec = eigh(&HermitianOp::from_real_diag(&[3.0, 1.0, 2.0]));
        assert_eq!(spec.eigenvalues, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn eigh_pauli_x() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 0)] = Complex64::new(1.0, 0.0);
        let spec = eigh(&HermitianOp::new(m).unwrap());
        assert_abs_diff_eq!(spec.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[1], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let h = random_hermitian(4, 7);
        let spec = eigh(&h);
        let err = (spec.reconstruct() - h.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "reconstruction error {err}");
        let vv = spec.eigenvectors.adjoint() * &spec.eigenvectors;
        let ortho = (vv - CMatrix::identity(4, 4))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(ortho < 1e-9, "orthonormality error {ortho}");
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let psi = PureState::from_reals(&[0.6, 0.8]);
        let rho = DensityMatrix::from_pure(&psi);
        assert!(von_neumann_entropy(&rho).abs() < 1e-8);
    }

    #[test]
    fn pure_state_equality_ignores_global_phase() {
        let a = PureState::from_reals(&[0.6, 0.8]);
        let phase = Complex64::from_polar(1.0, 1.234);
        let b = PureState::new(a.amplitudes().clone().scale(1.0) * phase).unwrap();
        assert!(a.approx_eq(&b, 1e-8));
    }

    #[test]
    fn fidelity_of_identical_states_is_one() {
        let rho = random_density(3, 3);
        assert_abs_diff_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn shannon_bounded_by_log_len(raw in proptest::collection::vec(0.0f64..1.0, 1..6)) {
            let sum: f64 = raw.iter().sum();
            prop_assume!(sum > 1e-6);
            let p = ProbVector::new(raw.iter().map(|v| v / sum).collect()).unwrap();
            let h = shannon_entropy(&p);
            prop_assert!(h >= -1e-12);
            prop_assert!(h <= (p.len() as f64).log2() + 1e-9);
        }

        #[test]
        fn von_neumann_matches_shannon_of_spectrum(seed in 0u64..200) {
            let rho = random_density(4, seed);
            let spec = eigh(&rho.as_op());
            let p = ProbVector::new(spec.eigenvalues.iter().map(|&l| l.max(0.0)).collect()).unwrap();
            prop_assert!((von_neumann_entropy(&rho) - shannon_entropy(&p)).abs() < 1e-9);
        }

        #[test]
        fn eigh_eigenvalue_sum_is_trace(seed in 0u64..200) {
            let h = random_hermitian(5, seed);
            let spec = eigh(&h);
            let sum: f64 = spec.eigenvalues.iter().sum();
            prop_assert!((sum - h.trace()).abs() < 1e-9);
        }
    }
}
