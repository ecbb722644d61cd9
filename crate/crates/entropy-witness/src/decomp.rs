//! Constructive rank-1 decompositions of a density matrix that preserve
//! the expectation value of a fixed observable, and the ensemble
//! reduction they enable.
//!
//! Any density matrix `rho` can be written as a convex mixture of pure
//! states each having the same expectation of an observable `M` as `rho`
//! itself. The construction works in the eigenbasis of `rho`: a rank-2
//! state splits directly into two pure states ([`split_rank2`]), and a
//! higher-rank state repeatedly peels off two such pure states while
//! strictly lowering the rank of the remainder ([`peel`]), until rank two
//! is reached ([`rank1_decompose`]). Applied to each preparation of a
//! witness scenario with `M` set to its signed measurement combination,
//! this replaces mixed preparations by pure ones without changing the
//! witness value and without increasing the entropy of the average state
//! ([`reduce_ensemble`]).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{
    eigh, von_neumann_entropy, CMatrix, CVector, DensityMatrix, HermitianOp, PureState, RANK_EPS,
};
use crate::witness::{Measurement, QuantumEnsemble, WitnessSpec};

/// One splitting step: pure pieces with their weights, plus the
/// lower-rank remainder when the input had rank above two.
#[derive(Debug, Clone)]
pub struct SplitResult {
    /// `(weight, state)` pairs; each state has the same expectation of
    /// the observable as the input state.
    pub pieces: Vec<(f64, PureState)>,
    /// `(weight, state)` of the remainder; its observable expectation
    /// also equals the input's.
    pub remainder: Option<(f64, DensityMatrix)>,
}

/// The eigenbasis form of the problem: `rho = sum_k w_k |b_k><b_k|` with
/// `b_k` the columns of `basis`, and `m` the observable expressed in that
/// basis. Weights are unnormalized so that peeled-off weights are global.
struct DiagonalProblem {
    basis: CMatrix,
    weights: Vec<f64>,
    m: CMatrix,
}

impl DiagonalProblem {
    fn from_state(rho: &DensityMatrix, obs: &HermitianOp) -> Result<Self> {
        if rho.dim() != obs.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state dim {} vs observable dim {}",
                rho.dim(),
                obs.dim()
            )));
        }
        let spec = eigh(&rho.as_op());
        let r = spec.eigenvalues.iter().filter(|&&l| l > RANK_EPS).count();
        let d = rho.dim();
        let mut basis = CMatrix::zeros(d, r);
        let mut weights = Vec::with_capacity(r);
        for k in 0..r {
            basis.set_column(k, &spec.eigenvectors.column(k));
            weights.push(spec.eigenvalues[k]);
        }
        let m = basis.adjoint() * obs.matrix() * &basis;
        Ok(Self { basis, weights, m })
    }

    fn rank(&self) -> usize {
        self.weights.len()
    }

    fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Drops basis vector `k` from the problem.
    fn remove(&mut self, k: usize) {
        let r = self.rank();
        self.weights.remove(k);
        self.basis = self.basis.clone().remove_column(k);
        self.m = self.m.clone().remove_row(k).remove_column(k);
        debug_assert_eq!(self.rank(), r - 1);
    }

    fn full_state(&self, coeffs: &[(usize, Complex64)]) -> PureState {
        let d = self.basis.nrows();
        let mut amps = CVector::zeros(d);
        for &(k, c) in coeffs {
            amps += self.basis.column(k).into_owned() * c;
        }
        PureState::normalized(amps).expect("unit combination of orthonormal vectors")
    }

    fn remainder_state(&self) -> Option<(f64, DensityMatrix)> {
        let mass = self.mass();
        if mass <= RANK_EPS {
            return None;
        }
        let d = self.basis.nrows();
        let mut acc = CMatrix::zeros(d, d);
        for (k, &w) in self.weights.iter().enumerate() {
            let v = self.basis.column(k);
            acc += (&v * v.adjoint()).scale(w / mass);
        }
        Some((
            mass,
            DensityMatrix::new(acc).expect("remainder is a valid state by construction"),
        ))
    }
}

/// Bisection root of `f` on `[lo, hi]`, assuming a single sign change.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-14 {
            return mid;
        }
        let fm = f(mid);
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// One peeling step on the diagonal problem. Returns the pure pieces; the
/// problem itself shrinks to the remainder (possibly empty).
fn peel_step(p: &mut DiagonalProblem) -> Vec<(f64, PureState)> {
    let r = p.rank();
    let one = Complex64::new(1.0, 0.0);
    if r == 1 {
        let piece = (p.weights[0], p.full_state(&[(0, one)]));
        p.remove(0);
        return vec![piece];
    }

    // extreme diagonal entries (ties broken towards the lowest index)
    let diag: Vec<f64> = (0..r).map(|k| p.m[(k, k)].re).collect();
    let mut i = 0;
    let mut j = 0;
    for (k, &v) in diag.iter().enumerate() {
        if v > diag[i] {
            i = k;
        }
        if v < diag[j] {
            j = k;
        }
    }
    if i == j {
        j = if i == 0 { 1 } else { 0 };
    }

    let sigma = p.mass();
    let target = p
        .weights
        .iter()
        .zip(&diag)
        .map(|(&w, &m)| w * m)
        .sum::<f64>()
        / sigma;

    if diag[i] - diag[j] <= 1e-12 {
        // all remaining diagonal entries coincide: the basis states
        // themselves already have the right expectation
        let pieces = vec![
            (p.weights[i], p.full_state(&[(i, one)])),
            (p.weights[j], p.full_state(&[(j, one)])),
        ];
        let (hi, lo) = (i.max(j), i.min(j));
        p.remove(hi);
        p.remove(lo);
        return pieces;
    }

    let cross = 2.0 * p.m[(i, j)].re;
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        diag[i] * c * c + diag[j] * s * s + cross * c * s - target
    };
    // f(0) > 0 > f(+-pi/2), so one root on each side of zero
    let theta1 = bisect(f, 0.0, std::f64::consts::FRAC_PI_2);
    let theta2 = bisect(f, -std::f64::consts::FRAC_PI_2, 0.0);
    let s1 = (2.0 * theta1).sin();
    let s2 = (2.0 * theta2).sin();
    let state = |theta: f64| {
        p.full_state(&[
            (i, Complex64::new(theta.cos(), 0.0)),
            (j, Complex64::new(theta.sin(), 0.0)),
        ])
    };
    let phi1 = state(theta1);
    let phi2 = state(theta2);

    if r == 2 {
        // the two pieces absorb the whole state
        let mu0 = -s2 / (s1 - s2);
        let mu1 = s1 / (s1 - s2);
        let pieces = vec![(sigma * mu0, phi1), (sigma * mu1, phi2)];
        p.remove(1);
        p.remove(0);
        return pieces;
    }

    // rank > 2: eliminate whichever of the two extreme eigendirections
    // runs out of weight first, leaving a valid lower-rank remainder
    let a = s1 * theta2.cos().powi(2) - s2 * theta1.cos().powi(2);
    let b = s1 * theta2.sin().powi(2) - s2 * theta1.sin().powi(2);
    let (wi, wj) = (p.weights[i], p.weights[j]);
    let pieces;
    if a * wj > b * wi {
        pieces = vec![(wi * (-s2) / a, phi1), (wi * s1 / a, phi2)];
        p.weights[j] = (wj - wi * b / a).max(0.0);
        p.remove(i);
    } else {
        pieces = vec![(wj * (-s2) / b, phi1), (wj * s1 / b, phi2)];
        p.weights[i] = (wi - wj * a / b).max(0.0);
        p.remove(j);
    }
    // a weight driven (numerically) to zero lowers the rank once more
    if let Some(k) = p.weights.iter().position(|&w| w <= RANK_EPS) {
        p.remove(k);
    }
    pieces
}

/// Splits a rank-2 state into two pure states with the same expectation
/// of `obs` as the input.
pub fn split_rank2(rho: &DensityMatrix, obs: &HermitianOp) -> Result<SplitResult> {
    if rho.rank() != 2 {
        return Err(Error::InvalidState(format!(
            "expected a rank-2 state, got rank {}",
            rho.rank()
        )));
    }
    let mut p = DiagonalProblem::from_state(rho, obs)?;
    let pieces = peel_step(&mut p);
    Ok(SplitResult {
        pieces,
        remainder: None,
    })
}

/// Peels two expectation-preserving pure states off a state of rank above
/// two, leaving a remainder of strictly lower rank with the same
/// expectation of `obs`.
pub fn peel(rho: &DensityMatrix, obs: &HermitianOp) -> Result<SplitResult> {
    if rho.rank() <= 2 {
        return Err(Error::InvalidState(format!(
            "expected rank above 2, got rank {}",
            rho.rank()
        )));
    }
    let mut p = DiagonalProblem::from_state(rho, obs)?;
    let pieces = peel_step(&mut p);
    Ok(SplitResult {
        pieces,
        remainder: p.remainder_state(),
    })
}

/// Full expectation-preserving rank-1 decomposition: returns weights and
/// pure states with `sum_k w_k |phi_k><phi_k| = rho`, `sum_k w_k = 1` and
/// `<phi_k|obs|phi_k> = tr(rho obs)` for every `k`. A state of rank `r`
/// yields at most `2(r - 1)` pieces (one piece when pure).
pub fn rank1_decompose(
    rho: &DensityMatrix,
    obs: &HermitianOp,
) -> Result<Vec<(f64, PureState)>> {
    let mut p = DiagonalProblem::from_state(rho, obs)?;
    let mut pieces = Vec::new();
    while p.rank() > 0 {
        pieces.extend(peel_step(&mut p));
    }
    Ok(pieces)
}

/// A pure-state ensemble expressed in the minimal subspace it spans.
#[derive(Debug, Clone)]
pub struct ReducedEnsemble {
    ensemble: QuantumEnsemble,
    frame: CMatrix,
}

impl ReducedEnsemble {
    /// The ensemble in its compressed space (dimension at most the number
    /// of preparations).
    pub fn ensemble(&self) -> &QuantumEnsemble {
        &self.ensemble
    }

    /// Orthonormal columns embedding the compressed space into the
    /// original one.
    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    /// Entropy of the average compressed state.
    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(&self.ensemble.average())
    }

    /// The ensemble embedded back into the original space.
    pub fn lift(&self) -> QuantumEnsemble {
        let states: Vec<DensityMatrix> = self
            .ensemble
            .states()
            .iter()
            .map(|s| {
                DensityMatrix::new(&self.frame * s.matrix() * self.frame.adjoint())
                    .expect("isometry preserves states")
            })
            .collect();
        QuantumEnsemble::new(states).expect("non-empty lifted ensemble")
    }
}

const COMBINATION_LIMIT: u128 = 1_000_000;

/// Replaces every preparation by a pure state without changing the
/// witness value, never increasing the entropy of the average state, and
/// compresses the result into the subspace the pure states span.
///
/// Each preparation `x` is decomposed against its signed measurement
/// combination `M^(x) = sum_y alpha_xy M_y`, so any selection of one piece
/// per preparation reproduces the witness value exactly; the selection
/// minimizing the average-state entropy is found by exhaustive scan.
pub fn reduce_ensemble(
    ens: &QuantumEnsemble,
    meas: &[Measurement],
    spec: &WitnessSpec,
) -> Result<ReducedEnsemble> {
    let n = ens.len();
    if spec.n() != n || spec.l() != meas.len() {
        return Err(Error::DimensionMismatch(
            "ensemble/measurements disagree with witness shape".into(),
        ));
    }
    let d = ens.dim();

    // decompose each preparation against its signed observable
    let mut options: Vec<Vec<(f64, PureState)>> = Vec::with_capacity(n);
    for (x, rho) in ens.states().iter().enumerate() {
        let mut acc = CMatrix::zeros(d, d);
        for (y, m) in meas.iter().enumerate() {
            acc += m.op().matrix() * Complex64::new(spec.alpha()[(x, y)], 0.0);
        }
        let obs = HermitianOp::new(acc)?;
        options.push(rank1_decompose(rho, &obs)?);
    }

    let combos: u128 = options.iter().map(|o| o.len() as u128).product();
    if combos > COMBINATION_LIMIT {
        return Err(Error::EnumerationGuard { count: combos });
    }

    // exhaustive scan over one piece per preparation
    let mut choice = vec![0usize; n];
    let mut best_choice = choice.clone();
    let mut best_entropy = f64::INFINITY;
    loop {
        let avg = {
            let mut acc = CMatrix::zeros(d, d);
            for (x, &c) in choice.iter().enumerate() {
                acc += options[x][c].1.projector().scale(1.0 / n as f64);
            }
            DensityMatrix::new(acc).expect("average of pure states")
        };
        let s = von_neumann_entropy(&avg);
        if s < best_entropy {
            best_entropy = s;
            best_choice = choice.clone();
        }
        // next combination in mixed radix
        let mut x = 0;
        loop {
            if x == n {
                break;
            }
            choice[x] += 1;
            if choice[x] < options[x].len() {
                break;
            }
            choice[x] = 0;
            x += 1;
        }
        if x == n {
            break;
        }
    }

    // orthonormal frame of the span of the chosen states
    let chosen: Vec<&PureState> = best_choice
        .iter()
        .enumerate()
        .map(|(x, &c)| &options[x][c].1)
        .collect();
    let mut frame_cols: Vec<CVector> = Vec::new();
    for s in &chosen {
        let mut v = s.amplitudes().clone();
        for q in &frame_cols {
            let overlap = q.dotc(&v);
            v -= q * overlap;
        }
        let norm = v.norm();
        if norm > 1e-9 {
            v.unscale_mut(norm);
            frame_cols.push(v);
        }
    }
    let r = frame_cols.len();
    let mut frame = CMatrix::zeros(d, r);
    for (k, col) in frame_cols.iter().enumerate() {
        frame.set_column(k, col);
    }

    let reduced: Vec<PureState> = chosen
        .iter()
        .map(|s| {
            PureState::normalized(frame.adjoint() * s.amplitudes())
                .expect("chosen states lie in the frame span")
        })
        .collect();
    Ok(ReducedEnsemble {
        ensemble: QuantumEnsemble::from_pure(&reduced)?,
        frame,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::fidelity;
    use crate::testutil::{random_density_of_rank, random_hermitian};
    use crate::witness::{canonical_witness, quantum_value, CanonicalWitness};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn expectation(state: &PureState, obs: &HermitianOp) -> f64 {
        (state.amplitudes().adjoint() * obs.matrix() * state.amplitudes())[(0, 0)].re
    }

    fn trace_product(rho: &DensityMatrix, obs: &HermitianOp) -> f64 {
        (rho.matrix() * obs.matrix()).trace().re
    }

    fn check_decomposition(rho: &DensityMatrix, obs: &HermitianOp, tol: f64) {
        let pieces = rank1_decompose(rho, obs).unwrap();
        let r = rho.rank();
        let max_pieces = if r <= 1 { 1 } else { 2 * (r - 1) };
        assert!(pieces.len() <= max_pieces, "{} pieces for rank {r}", pieces.len());
        let total: f64 = pieces.iter().map(|(w, _)| w).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = tol);
        let target = trace_product(rho, obs);
        let mut acc = CMatrix::zeros(rho.dim(), rho.dim());
        for (w, phi) in &pieces {
            assert!(*w > 0.0, "non-positive weight {w}");
            assert_abs_diff_eq!(expectation(phi, obs), target, epsilon = tol);
            acc += phi.projector().scale(*w);
        }
        let err = (acc - rho.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(err < tol, "reconstruction error {err}");
    }

    #[test]
    fn pure_state_decomposes_to_itself() {
        let rho = random_density_of_rank(3, 1, 11);
        let obs = random_hermitian(3, 12);
        let pieces = rank1_decompose(&rho, &obs).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_abs_diff_eq!(pieces[0].0, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn rank2_split_preserves_expectation() {
        let rho = random_density_of_rank(2, 2, 21);
        let obs = random_hermitian(2, 22);
        let split = split_rank2(&rho, &obs).unwrap();
        assert!(split.remainder.is_none());
        assert_eq!(split.pieces.len(), 2);
        let target = trace_product(&rho, &obs);
        for (_, phi) in &split.pieces {
            assert_abs_diff_eq!(expectation(phi, &obs), target, epsilon = 1e-9);
        }
    }

    #[test]
    fn rank2_split_with_flat_observable_returns_eigenvectors() {
        let rho = random_density_of_rank(2, 2, 31);
        let obs = HermitianOp::identity(2);
        let split = split_rank2(&rho, &obs).unwrap();
        // both pieces are eigenvectors of rho
        for (w, phi) in &split.pieces {
            let image = rho.matrix() * phi.amplitudes();
            let scale = image.norm();
            assert_abs_diff_eq!(scale, *w, epsilon = 1e-9);
        }
    }

    #[test]
    fn peel_lowers_rank_and_preserves_expectation() {
        let rho = random_density_of_rank(4, 4, 41);
        let obs = random_hermitian(4, 42);
        let split = peel(&rho, &obs).unwrap();
        let (mu, remainder) = split.remainder.expect("rank 4 leaves a remainder");
        assert!(remainder.rank() < 4);
        let target = trace_product(&rho, &obs);
        assert_abs_diff_eq!(trace_product(&remainder, &obs), target, epsilon = 1e-8);
        // the pieces and remainder rebuild the state
        let mut acc = remainder.matrix().scale(mu);
        let mut total = mu;
        for (w, phi) in &split.pieces {
            acc += phi.projector().scale(*w);
            total += w;
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        let err = (acc - rho.matrix()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(err < 1e-8, "reconstruction error {err}");
    }

    #[test]
    fn peel_rejects_low_rank_and_split_rejects_high_rank() {
        let obs = random_hermitian(3, 51);
        assert!(peel(&random_density_of_rank(3, 2, 52), &obs).is_err());
        assert!(split_rank2(&random_density_of_rank(3, 3, 53), &obs).is_err());
    }

    #[test]
    fn decomposition_bank_of_random_instances() {
        let mut idx = 0u64;
        for d in 2..=5 {
            for rank in 1..=d {
                for rep in 0..5 {
                    let rho = random_density_of_rank(d, rank, 1000 + idx);
                    let obs = random_hermitian(d, 2000 + idx + rep);
                    check_decomposition(&rho, &obs, 1e-8);
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn reduction_preserves_witness_and_lowers_entropy() {
        let spec = canonical_witness(CanonicalWitness::I3);
        // mixed preparations: noisy versions of the certificate states
        let pure = crate::scenarios::quantum_ensemble(CanonicalWitness::I3);
        let mixed: Vec<DensityMatrix> = pure
            .states()
            .iter()
            .map(|s| {
                DensityMatrix::new(
                    s.matrix().scale(0.8) + DensityMatrix::maximally_mixed(3).matrix().scale(0.2),
                )
                .unwrap()
            })
            .collect();
        let ens = QuantumEnsemble::new(mixed).unwrap();
        let meas = crate::scenarios::witness_measurements(CanonicalWitness::I3);
        let before_w = quantum_value(&ens, &meas, &spec).unwrap();
        let before_s = von_neumann_entropy(&ens.average());

        let reduced = reduce_ensemble(&ens, &meas, &spec).unwrap();
        let lifted = reduced.lift();
        let after_w = quantum_value(&lifted, &meas, &spec).unwrap();
        assert_abs_diff_eq!(after_w, before_w, epsilon = 1e-7);
        assert!(reduced.entropy() <= before_s + 1e-9);
        // compression into at most n dimensions, entropy unchanged by it
        assert!(reduced.ensemble().dim() <= 3);
        assert_abs_diff_eq!(
            reduced.entropy(),
            von_neumann_entropy(&lifted.average()),
            epsilon = 1e-9
        );
        // frame is an isometry
        let g = reduced.frame().adjoint() * reduced.frame();
        let err = (g - CMatrix::identity(reduced.ensemble().dim(), reduced.ensemble().dim()))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-9);
        // lifting is faithful
        for (a, b) in lifted.states().iter().zip(ens.states()) {
            assert!(fidelity(a, b).unwrap() <= 1.0 + 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn decomposition_invariants(seed in 0u64..10_000, d in 2usize..5, rank_off in 0usize..4) {
            let rank = 1 + rank_off.min(d - 1);
            let rho = random_density_of_rank(d, rank, seed);
            let obs = random_hermitian(d, seed.wrapping_add(77));
            check_decomposition(&rho, &obs, 1e-8);
        }
    }
}
