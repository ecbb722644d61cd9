//! Linear dimension witnesses: coefficient matrices, quantum evaluation,
//! the eigenvalue-sum upper bound and the sign-operator measurements that
//! saturate it.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{eigh, CMatrix, CVector, DensityMatrix, HermitianOp, PureState};

/// The three canonical witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalWitness {
    I3,
    I4,
    R4,
}

impl std::str::FromStr for CanonicalWitness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I3" => Ok(Self::I3),
            "I4" => Ok(Self::I4),
            "R4" => Ok(Self::R4),
            other => Err(Error::InvalidWitness(format!("unknown witness {other}"))),
        }
    }
}

impl std::fmt::Display for CanonicalWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::I3 => write!(f, "I3"),
            Self::I4 => write!(f, "I4"),
            Self::R4 => write!(f, "R4"),
        }
    }
}

/// Coefficient matrix of a linear dimension witness: entry `(x, y)` weighs
/// the expectation of measurement `y` on preparation `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSpec {
    alpha: DMatrix<f64>,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct WitnessSpecJson {
    n: usize,
    l: usize,
    alpha: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl WitnessSpec {
    pub fn new(alpha: DMatrix<f64>, name: Option<String>) -> Result<Self> {
        if alpha.nrows() == 0 || alpha.ncols() == 0 {
            return Err(Error::InvalidWitness("empty coefficient matrix".into()));
        }
        if alpha.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidWitness("non-finite coefficient".into()));
        }
        Ok(Self { alpha, name })
    }

    pub fn from_rows(rows: &[Vec<f64>], name: Option<String>) -> Result<Self> {
        let n = rows.len();
        let l = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != l) {
            return Err(Error::InvalidWitness("ragged coefficient rows".into()));
        }
        Self::new(
            DMatrix::from_fn(n, l, |x, y| rows[x][y]),
            name,
        )
    }

    /// Number of preparations.
    pub fn n(&self) -> usize {
        self.alpha.nrows()
    }

    /// Number of measurements.
    pub fn l(&self) -> usize {
        self.alpha.ncols()
    }

    pub fn alpha(&self) -> &DMatrix<f64> {
        &self.alpha
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = (0..self.n())
            .map(|x| (0..self.l()).map(|y| self.alpha[(x, y)]).collect())
            .collect();
        serde_json::to_value(WitnessSpecJson {
            n: self.n(),
            l: self.l(),
            alpha: rows,
            name: self.name.clone(),
        })
        .expect("witness spec serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: WitnessSpecJson = serde_json::from_value(v.clone())?;
        if parsed.alpha.len() != parsed.n
            || parsed.alpha.iter().any(|r| r.len() != parsed.l)
        {
            return Err(Error::InvalidWitness(
                "alpha shape disagrees with n/l".into(),
            ));
        }
        Self::from_rows(&parsed.alpha, parsed.name)
    }
}

/// The exact coefficient matrices of the canonical witnesses.
pub fn canonical_witness(name: CanonicalWitness) -> WitnessSpec {
    let rows: &[&[f64]] = match name {
        CanonicalWitness::I3 => &[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 0.0]],
        CanonicalWitness::I4 => &[
            &[1.0, 1.0, 1.0],
            &[1.0, 1.0, -1.0],
            &[1.0, -1.0, 0.0],
            &[-1.0, 0.0, 0.0],
        ],
        CanonicalWitness::R4 => &[
            &[1.0, 1.0],
            &[1.0, -1.0],
            &[-1.0, 1.0],
            &[-1.0, -1.0],
        ],
    };
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    WitnessSpec::from_rows(&rows, Some(name.to_string())).expect("canonical witness is valid")
}

/// A uniformly-prepared ensemble of density matrices of equal dimension.
#[derive(Debug, Clone)]
pub struct QuantumEnsemble {
    states: Vec<DensityMatrix>,
}

impl QuantumEnsemble {
    pub fn new(states: Vec<DensityMatrix>) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidState("empty ensemble".into()))?;
        let d = first.dim();
        if states.iter().any(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch(
                "ensemble states of unequal dimension".into(),
            ));
        }
        Ok(Self { states })
    }

    pub fn from_pure(states: &[PureState]) -> Result<Self> {
        Self::new(states.iter().map(DensityMatrix::from_pure).collect())
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// The average emitted state under the uniform prior.
    pub fn average(&self) -> DensityMatrix {
        DensityMatrix::average(&self.states).expect("non-empty validated ensemble")
    }

    /// The signed combination `rho^(y) = sum_x alpha_xy rho_x` for column `y`.
    pub fn signed_combination(&self, spec: &WitnessSpec, y: usize) -> Result<HermitianOp> {
        if spec.n() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "witness has {} preparations, ensemble has {}",
                spec.n(),
                self.len()
            )));
        }
        let d = self.dim();
        let mut acc = CMatrix::zeros(d, d);
        for (x, state) in self.states.iter().enumerate() {
            acc += state.matrix().scale(spec.alpha()[(x, y)]);
        }
        HermitianOp::new(acc)
    }
}

/// A two-outcome measurement with eigenvalues in {-1, +1}, stored as the
/// orthonormal set of -1 eigenvectors (everything orthogonal to them has
/// outcome +1).
#[derive(Debug, Clone)]
pub struct Measurement {
    dim: usize,
    minus: Vec<CVector>,
}

impl Measurement {
    pub fn new(dim: usize, minus: Vec<CVector>) -> Result<Self> {
        if minus.len() > dim {
            return Err(Error::InvalidOperator(
                "more -1 eigenvectors than the dimension".into(),
            ));
        }
        for (i, v) in minus.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(
                    "projector vector length disagrees with dim".into(),
                ));
            }
            if (v.norm() - 1.0).abs() > 1e-8 {
                return Err(Error::InvalidOperator(format!(
                    "-1 eigenvector {i} is not unit norm"
                )));
            }
            for w in minus.iter().take(i) {
                if v.dotc(w).norm() > 1e-8 {
                    return Err(Error::InvalidOperator(
                        "-1 eigenvectors are not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(Self { dim, minus })
    }

    /// `M = 1 - 2 |m><m|`.
    pub fn from_projection_state(m: &PureState) -> Self {
        Self {
            dim: m.dim(),
            minus: vec![m.amplitudes().clone()],
        }
    }

    /// `M = 1 - 2 |m1><m1| - 2 |m2><m2| - ...` for orthonormal states.
    pub fn from_projection_states(states: &[PureState]) -> Result<Self> {
        let dim = states
            .first()
            .map(|s| s.dim())
            .ok_or_else(|| Error::InvalidOperator("empty projector list".into()))?;
        Self::new(dim, states.iter().map(|s| s.amplitudes().clone()).collect())
    }

    /// The measurement acting as +1 on the whole space.
    pub fn identity(dim: usize) -> Self {
        Self { dim, minus: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the -1 eigenspace.
    pub fn minus_rank(&self) -> usize {
        self.minus.len()
    }

    /// The operator `1 - 2 P_minus`.
    pub fn op(&self) -> HermitianOp {
        let mut mat = CMatrix::identity(self.dim, self.dim);
        for v in &self.minus {
            mat -= (v * v.adjoint()).scale(2.0);
        }
        HermitianOp::new(mat).expect("signed projector form is Hermitian")
    }

    /// Expectation `tr(rho M)`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "state dim {} vs measurement dim {}",
                rho.dim(),
                self.dim
            )));
        }
        let mut minus_mass = 0.0;
        for v in &self.minus {
            minus_mass += (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        }
        Ok(1.0 - 2.0 * minus_mass)
    }
}

fn check_shapes(ens: &QuantumEnsemble, meas: &[Measurement], spec: &WitnessSpec) -> Result<()> {
    if ens.len() != spec.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} states but witness expects n = {}",
            ens.len(),
            spec.n()
        )));
    }
    if meas.len() != spec.l() {
        return Err(Error::DimensionMismatch(format!(
            "{} measurements but witness expects l = {}",
            meas.len(),
            spec.l()
        )));
    }
    if meas.iter().any(|m| m.dim() != ens.dim()) {
        return Err(Error::DimensionMismatch(
            "measurement dimension disagrees with ensemble".into(),
        ));
    }
    Ok(())
}

/// Witness value `sum_xy alpha_xy tr(rho_x M_y)`.
pub fn quantum_value(
    ens: &QuantumEnsemble,
    meas: &[Measurement],
    spec: &WitnessSpec,
) -> Result<f64> {
    check_shapes(ens, meas, spec)?;
    let mut total = 0.0;
    for (x, state) in ens.states().iter().enumerate() {
        for (y, m) in meas.iter().enumerate() {
            total += spec.alpha()[(x, y)] * m.expectation(state)?;
        }
    }
    Ok(total)
}

/// The eigenvalue-sum upper bound `sum_y sum_k |lambda_yk|` on the witness,
/// where `lambda_yk` are the eigenvalues of `rho^(y)`. This is the supremum
/// of `quantum_value` over all valid measurements.
pub fn eigen_sum_bound(ens: &QuantumEnsemble, spec: &WitnessSpec) -> Result<f64> {
    let mut total = 0.0;
    for y in 0..spec.l() {
        let combo = ens.signed_combination(spec, y)?;
        total += eigh(&combo).eigenvalues.iter().map(|l| l.abs()).sum::<f64>();
    }
    Ok(total)
}

/// Measurements `M_y = sum_k sign(lambda_yk) |v_yk><v_yk|` attaining the
/// eigenvalue-sum bound. Zero eigenvalues are assigned +1.
pub fn recover_measurements(ens: &QuantumEnsemble, spec: &WitnessSpec) -> Result<Vec<Measurement>> {
    let mut out = Vec::with_capacity(spec.l());
    for y in 0..spec.l() {
        let combo = ens.signed_combination(spec, y)?;
        let s = eigh(&combo);
        let minus: Vec<CVector> = s
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l < 0.0)
            .map(|(k, _)| s.eigenvectors.column(k).into_owned())
            .collect();
        out.push(Measurement::new(ens.dim(), minus)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_matrices_are_verbatim() {
        let i3 = canonical_witness(CanonicalWitness::I3);
        assert_eq!((i3.n(), i3.l()), (3, 2));
        assert_eq!(i3.alpha().as_slice().len(), 6);
        assert_eq!(i3.alpha()[(2, 0)], -1.0);
        let i4 = canonical_witness(CanonicalWitness::I4);
        assert_eq!((i4.n(), i4.l()), (4, 3));
        assert_eq!(i4.alpha()[(0, 2)], 1.0);
        assert_eq!(i4.alpha()[(1, 2)], -1.0);
        assert_eq!(i4.alpha()[(3, 0)], -1.0);
        let r4 = canonical_witness(CanonicalWitness::R4);
        assert_eq!((r4.n(), r4.l()), (4, 2));
        assert_eq!(r4.alpha()[(2, 0)], -1.0);
        assert_eq!(r4.alpha()[(2, 1)], 1.0);
    }

    #[test]
    fn i3_certificate_value() {
        let ens = scenarios::quantum_ensemble(CanonicalWitness::I3);
        let meas = scenarios::witness_measurements(CanonicalWitness::I3);
        let spec = canonical_witness(CanonicalWitness::I3);
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        assert_abs_diff_eq!(w, 3.622, epsilon = 2e-3);
    }

    #[test]
    fn r4_certificate_value() {
        let ens = scenarios::quantum_ensemble(CanonicalWitness::R4);
        let meas = scenarios::witness_measurements(CanonicalWitness::R4);
        let spec = canonical_witness(CanonicalWitness::R4);
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        assert_abs_diff_eq!(w, 5.211, epsilon = 2e-3);
    }

    #[test]
    fn r4_vanishes_on_identical_states() {
        let spec = canonical_witness(CanonicalWitness::R4);
        let psi = PureState::from_reals(&[0.6, 0.0, 0.8, 0.0]);
        let ens = QuantumEnsemble::from_pure(&[psi.clone(), psi.clone(), psi.clone(), psi]).unwrap();
        let meas = scenarios::witness_measurements(CanonicalWitness::R4);
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        assert!(w.abs() < 1e-12, "w = {w}");
    }

    #[test]
    fn single_state_unit_witness_bound() {
        let spec = WitnessSpec::from_rows(&[vec![1.0]], None).unwrap();
        let ens = QuantumEnsemble::new(vec![crate::testutil::random_density(3, 5)]).unwrap();
        assert_abs_diff_eq!(eigen_sum_bound(&ens, &spec).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn recovered_measurements_saturate_bound() {
        let ens = scenarios::quantum_ensemble(CanonicalWitness::I3);
        let spec = canonical_witness(CanonicalWitness::I3);
        let bound = eigen_sum_bound(&ens, &spec).unwrap();
        assert!(bound >= 3.622 - 2e-3);
        let meas = recover_measurements(&ens, &spec).unwrap();
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        assert_abs_diff_eq!(w, bound, epsilon = 1e-8);
    }

    #[test]
    fn psd_combination_recovers_identity() {
        let spec = WitnessSpec::from_rows(&[vec![1.0]], None).unwrap();
        let ens = QuantumEnsemble::new(vec![crate::testutil::random_density(3, 9)]).unwrap();
        let meas = recover_measurements(&ens, &spec).unwrap();
        assert_eq!(meas[0].minus_rank(), 0);
    }

    #[test]
    fn traceless_combination_splits_signs() {
        let spec = WitnessSpec::from_rows(&[vec![1.0], vec![-1.0]], None).unwrap();
        let a = PureState::from_reals(&[1.0, 0.0]);
        let b = PureState::from_reals(&[0.0, 1.0]);
        let ens = QuantumEnsemble::from_pure(&[a, b]).unwrap();
        let meas = recover_measurements(&ens, &spec).unwrap();
        assert_eq!(meas[0].minus_rank(), 1);
    }

    #[test]
    fn bound_dominates_random_measurements() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let spec = canonical_witness(CanonicalWitness::I4);
        let states: Vec<DensityMatrix> = (0..4)
            .map(|k| crate::testutil::random_density(2, 100 + k))
            .collect();
        let ens = QuantumEnsemble::new(states).unwrap();
        let bound = eigen_sum_bound(&ens, &spec).unwrap();
        for _ in 0..100 {
            let meas: Vec<Measurement> = (0..3)
                .map(|_| {
                    let v = CVector::from_fn(2, |_, _| {
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    });
                    Measurement::from_projection_state(&PureState::normalized(v).unwrap())
                })
                .collect();
            let w = quantum_value(&ens, &meas, &spec).unwrap();
            assert!(w <= bound + 1e-8, "w = {w} exceeds bound {bound}");
        }
    }

    #[test]
    fn quantum_value_is_linear_in_alpha() {
        let ens = scenarios::quantum_ensemble(CanonicalWitness::I3);
        let meas = scenarios::witness_measurements(CanonicalWitness::I3);
        let spec = canonical_witness(CanonicalWitness::I3);
        let scaled = WitnessSpec::new(spec.alpha().scale(2.5), None).unwrap();
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        let ws = quantum_value(&ens, &meas, &scaled).unwrap();
        assert_abs_diff_eq!(ws, 2.5 * w, epsilon = 1e-12);
    }

    #[test]
    fn witness_spec_json_round_trip() {
        let spec = canonical_witness(CanonicalWitness::I4);
        let v = spec.to_json();
        let back = WitnessSpec::from_json(&v).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn unknown_witness_name_is_an_error() {
        assert!("X5".parse::<CanonicalWitness>().is_err());
    }
}
