//! Canonical fixtures: the certificate states and measurements that attain
//! the minimal-entropy witness values for `I3`, `I4` and `R4`, the
//! numerically found counterexamples, and a four-outcome numeric witness
//! used to separate message dimension from Hilbert-space dimension.
//!
//! Wave-plate angle settings reproducing these states and measurements on
//! the polarization setup live in the table functions at the bottom.

use num_complex::Complex64;

use crate::qcore::{CVector, PureState};
use crate::witness::{CanonicalWitness, Measurement, QuantumEnsemble, WitnessSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ket(amps: &[Complex64]) -> PureState {
    PureState::normalized(CVector::from_row_slice(amps)).expect("fixture amplitudes are nonzero")
}

fn rket(amps: &[f64]) -> PureState {
    PureState::from_reals(amps)
}

/// The ensemble minimizing the von Neumann entropy at the certified
/// witness value of the given canonical witness.
pub fn quantum_ensemble(w: CanonicalWitness) -> QuantumEnsemble {
    let states = match w {
        CanonicalWitness::I3 => vec![
            rket(&[1.0, 0.0, 0.0]),
            rket(&[0.7972, 0.6037, 0.0]),
            rket(&[0.6511, -0.7590, 0.0]),
        ],
        CanonicalWitness::I4 => vec![
            rket(&[1.0, 0.0, 0.0, 0.0]),
            rket(&[0.8323, 0.5543, 0.0, 0.0]),
            rket(&[0.3108, 0.9505, 0.0, 0.0]),
            rket(&[0.7623, 0.5247, 0.2148, 0.3121]),
        ],
        CanonicalWitness::R4 => vec![
            rket(&[1.0, 0.0, 0.0, 0.0]),
            ket(&[c(0.7588, 0.0), c(0.2363, -0.6070), c(0.0, 0.0), c(0.0, 0.0)]),
            ket(&[c(0.7588, 0.0), c(0.2363, 0.6070), c(0.0, 0.0), c(0.0, 0.0)]),
            rket(&[0.3893, 0.9211, 0.0, 0.0]),
        ],
    };
    QuantumEnsemble::from_pure(&states).expect("fixture ensemble is valid")
}

/// The measurements certifying the witness value of [`quantum_ensemble`].
pub fn witness_measurements(w: CanonicalWitness) -> Vec<Measurement> {
    let minus: Vec<PureState> = match w {
        CanonicalWitness::I3 => vec![
            rket(&[0.4531, -0.8914, 0.0]),
            rket(&[0.4451, 0.8955, 0.0]),
        ],
        CanonicalWitness::I4 => vec![
            rket(&[0.1692, 0.1164, 0.5549, 0.8062]),
            rket(&[0.0750, -0.9972, 0.0, 0.0]),
            rket(&[0.4721, 0.8816, 0.0, 0.0]),
        ],
        CanonicalWitness::R4 => vec![
            ket(&[c(0.1515, -0.3891), c(0.9087, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            ket(&[c(0.1515, 0.3891), c(0.9087, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
        ],
    };
    minus.iter().map(Measurement::from_projection_state).collect()
}

/// The witness value attained by the certificate ensemble and measurements.
pub fn certified_witness_value(w: CanonicalWitness) -> f64 {
    match w {
        CanonicalWitness::I3 => 3.6222,
        CanonicalWitness::I4 => 5.7604,
        CanonicalWitness::R4 => 5.2112,
    }
}

/// The minimal von Neumann entropy at [`certified_witness_value`].
pub fn certified_quantum_entropy(w: CanonicalWitness) -> f64 {
    match w {
        CanonicalWitness::I3 => 0.8971,
        CanonicalWitness::I4 => 0.8293,
        CanonicalWitness::R4 => 0.8877,
    }
}

/// The minimal classical message entropy at [`certified_witness_value`].
pub fn certified_classical_entropy(w: CanonicalWitness) -> f64 {
    match w {
        CanonicalWitness::I3 => 1.3339,
        CanonicalWitness::I4 => 1.2224,
        CanonicalWitness::R4 => 1.3555,
    }
}

/// A numerically found four-preparation, two-measurement witness whose
/// two-message classical bound can be met with strictly less than one bit
/// of quantum entropy.
pub fn numeric_witness() -> WitnessSpec {
    WitnessSpec::from_rows(
        &[
            vec![0.4955, 0.7775],
            vec![-0.6092, -0.6572],
            vec![0.0048, -0.5283],
            vec![-0.5877, 0.8258],
        ],
        Some("numeric".into()),
    )
    .expect("fixture witness is valid")
}

/// Ququart ensemble reaching `I4 = 6` (a value qubits cannot exceed with
/// less entropy): more Hilbert-space dimensions can lower the entropy cost.
pub fn high_dim_i4_ensemble() -> QuantumEnsemble {
    QuantumEnsemble::from_pure(&[
        rket(&[1.0, 0.0, 0.0, 0.0]),
        rket(&[0.8290, 0.5592, 0.0, 0.0]),
        rket(&[0.7660, -0.6428, 0.0, 0.0]),
        rket(&[0.8844, -0.0191, -0.1204, 0.4506]),
    ])
    .expect("fixture ensemble is valid")
}

pub fn high_dim_i4_measurements() -> Vec<Measurement> {
    [
        rket(&[0.2229, -0.0058, -0.2516, 0.9418]),
        rket(&[0.4838, -0.8752, 0.0, 0.0]),
        rket(&[0.4695, 0.8829, 0.0, 0.0]),
    ]
    .iter()
    .map(Measurement::from_projection_state)
    .collect()
}

/// The entropy a qubit strategy needs for `I4 = 6`: the spectrum is pinned
/// to (5/8, 3/8).
pub fn qubit_i4_entropy_at_six() -> f64 {
    0.9544
}

/// Qutrit ensemble reaching `R4 = 2(1 + sqrt(5)) - 2` with rank-1
/// projective measurements, at entropy 1.5.
pub fn rank_one_r4_ensemble() -> QuantumEnsemble {
    let s = 1.0 / 2.0f64.sqrt();
    QuantumEnsemble::from_pure(&[
        rket(&[0.0, 0.0, 1.0]),
        rket(&[s, -s, 0.0]),
        rket(&[s, s, 0.0]),
        rket(&[1.0, 0.0, 0.0]),
    ])
    .expect("fixture ensemble is valid")
}

pub fn rank_one_r4_measurements() -> Vec<Measurement> {
    let s5 = 5.0f64.sqrt();
    let den = (10.0 + 2.0 * s5).sqrt();
    [
        rket(&[(s5 + 1.0) / den, 2.0 / den, 0.0]),
        rket(&[(s5 + 1.0) / den, -2.0 / den, 0.0]),
    ]
    .iter()
    .map(Measurement::from_projection_state)
    .collect()
}

/// Ququart ensemble reaching the same `R4` value with rank-2 measurement
/// projectors at entropy 1.4184 < 1.5: higher-rank outcomes can beat every
/// rank-1 strategy.
pub fn rank_two_r4_ensemble() -> QuantumEnsemble {
    QuantumEnsemble::from_pure(&[
        rket(&[1.0, 0.0, 0.0, 0.0]),
        rket(&[0.5892, 0.5736, 0.5690, 0.0]),
        rket(&[-0.6257, 0.5584, 0.0293, 0.5439]),
        rket(&[0.0175, 0.9998, 0.0, 0.0]),
    ])
    .expect("fixture ensemble is valid")
}

pub fn rank_two_r4_measurements() -> Vec<Measurement> {
    // the published four-digit vectors are orthogonal only to ~1e-4, so
    // re-orthogonalize the second one against the first
    let pair = |a: PureState, b: PureState| {
        let overlap = a.amplitudes().dotc(b.amplitudes());
        let ortho = b.amplitudes() - a.amplitudes() * overlap;
        let b = PureState::normalized(ortho).expect("fixture vectors are independent");
        Measurement::from_projection_states(&[a, b]).expect("orthonormal by construction")
    };
    vec![
        pair(
            rket(&[-0.2925, 0.8860, -0.0987, 0.3460]),
            rket(&[-0.1432, -0.3525, 0.3117, 0.8707]),
        ),
        pair(
            rket(&[0.2906, 0.8847, 0.3496, -0.1030]),
            rket(&[0.1143, -0.3604, 0.8911, 0.2511]),
        ),
    ]
}

// ---------------------------------------------------------------------
// Wave-plate angle tables of the polarization implementation.
// ---------------------------------------------------------------------

use crate::classical::{DeterministicStrategy, StrategyMixture};
use crate::polsim::{MeasSetting, PrepSetting};

fn preps(rows: &[(f64, f64, f64)]) -> Vec<PrepSetting> {
    rows.iter()
        .map(|&(h_s, q_s, h_i)| PrepSetting::new(h_s, q_s, h_i))
        .collect()
}

/// Preparator angles producing the certificate states of
/// [`quantum_ensemble`] on the polarization setup.
pub fn prep_angles(w: CanonicalWitness) -> Vec<PrepSetting> {
    match w {
        CanonicalWitness::I3 => preps(&[
            (0.0, 0.0, 0.0),
            (18.57, 37.14, 0.0),
            (-24.69, -49.38, 0.0),
        ]),
        CanonicalWitness::I4 => preps(&[
            (0.0, 0.0, 0.0),
            (16.83, 33.66, 0.0),
            (35.95, 71.89, 0.0),
            (17.27, 34.54, 11.13),
        ]),
        CanonicalWitness::R4 => preps(&[
            (0.0, 0.0, 0.0),
            (33.55, 33.55, 0.0),
            (0.0, 33.55, 0.0),
            (33.55, 67.09, 0.0),
        ]),
    }
}

/// Measurement-device angles realizing the certificate measurements of
/// [`witness_measurements`]: the `ab` coincidence port projects onto the
/// minus outcome.
pub fn witness_meas_angles(w: CanonicalWitness) -> Vec<MeasSetting> {
    let rows: &[(f64, f64, f64, f64)] = match w {
        CanonicalWitness::I3 => &[(-31.53, -63.06, 0.0, 0.0), (31.79, 63.57, 0.0, 0.0)],
        CanonicalWitness::I4 => &[
            (17.26, 34.53, 39.07, 78.15),
            (-42.85, -85.70, 0.0, 0.0),
            (30.92, 61.84, 0.0, 0.0),
        ],
        CanonicalWitness::R4 => &[(50.52, 78.54, 0.0, 0.0), (28.02, 78.54, 0.0, 0.0)],
    };
    rows.iter()
        .map(|&(h_s, q_s, h_i, q_i)| MeasSetting::new(h_s, q_s, h_i, q_i))
        .collect()
}

/// Preparator angles of the four polarization basis states
/// `|V_s V_i>, |H_s V_i>, |H_s H_i>, |V_s H_i>`, used as classical
/// messages.
pub fn basis_prep_settings() -> [PrepSetting; 4] {
    [
        PrepSetting::new(0.0, 0.0, 0.0),
        PrepSetting::new(45.0, 90.0, 0.0),
        PrepSetting::new(45.0, 90.0, 45.0),
        PrepSetting::new(0.0, 0.0, 45.0),
    ]
}

/// Shared measurement-outcome table of the optimal classical strategies:
/// `table[y][m]` is the outcome reported for message `m` under
/// measurement `y`.
pub fn classical_outcome_table(w: CanonicalWitness) -> Vec<Vec<i8>> {
    match w {
        CanonicalWitness::I3 => vec![vec![1, 1, -1], vec![1, -1, 1]],
        CanonicalWitness::I4 => vec![
            vec![1, 1, 1, -1],
            vec![1, 1, -1, 1],
            vec![1, -1, 1, 1],
        ],
        CanonicalWitness::R4 => vec![vec![1, 1, -1, -1], vec![1, -1, 1, -1]],
    }
}

fn classical_message_maps(w: CanonicalWitness) -> [Vec<usize>; 2] {
    match w {
        CanonicalWitness::I3 => [vec![0, 1, 2], vec![0, 1, 0]],
        CanonicalWitness::I4 => [vec![0, 1, 2, 0], vec![0, 1, 0, 0]],
        CanonicalWitness::R4 => [vec![0, 1, 0, 3], vec![0, 0, 0, 3]],
    }
}

fn classical_weights(w: CanonicalWitness) -> [f64; 2] {
    match w {
        CanonicalWitness::I3 => [0.3111, 0.6889],
        CanonicalWitness::I4 => [0.3802, 0.6198],
        CanonicalWitness::R4 => [0.6056, 0.3944],
    }
}

/// The entropy-optimal two-strategy classical protocol of a canonical
/// witness, with the preparator angles that realize each strategy's
/// messages on the polarization setup.
#[derive(Debug, Clone)]
pub struct ClassicalProtocol {
    /// Mixture weight of each strategy.
    pub weights: [f64; 2],
    /// Preparator angles per strategy, one setting per preparation.
    pub prep_angles: [Vec<PrepSetting>; 2],
    /// The same protocol as an abstract strategy mixture.
    pub mixture: StrategyMixture,
}

pub fn classical_protocol(w: CanonicalWitness) -> ClassicalProtocol {
    let outcomes = classical_outcome_table(w);
    let maps = classical_message_maps(w);
    let weights = classical_weights(w);
    let basis = basis_prep_settings();
    let strategies: Vec<DeterministicStrategy> = maps
        .iter()
        .map(|m| {
            DeterministicStrategy::new(m.clone(), outcomes.clone())
                .expect("fixture strategies are valid")
        })
        .collect();
    let prep_angles = [
        maps[0].iter().map(|&m| basis[m]).collect(),
        maps[1].iter().map(|&m| basis[m]).collect(),
    ];
    let mixture = StrategyMixture::new(strategies, weights.to_vec())
        .expect("fixture mixture is valid");
    ClassicalProtocol {
        weights,
        prep_angles,
        mixture,
    }
}
