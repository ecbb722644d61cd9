//! Acceptance suite: every headline claim of the crate, one criterion per
//! test, each printing a single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use entropy_witness::classical::{classical_bound_table, min_classical_entropy};
use entropy_witness::decomp::{rank1_decompose, reduce_ensemble};
use entropy_witness::polsim::{error_budget, run_protocol, Mode, SimConfig};
use entropy_witness::qcore::{
    fidelity, von_neumann_entropy, CMatrix, DensityMatrix, HermitianOp, PureState,
};
use entropy_witness::qopt::{entropy_curve, min_quantum_entropy, OptimizationConfig};
use entropy_witness::scenarios;
use entropy_witness::tomo::{
    linear_reconstruct, mle_repair, tomography_settings, TomoCase,
};
use entropy_witness::witness::{
    canonical_witness, quantum_value, CanonicalWitness, QuantumEnsemble,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

const CASES: [CanonicalWitness; 3] = [
    CanonicalWitness::I3,
    CanonicalWitness::I4,
    CanonicalWitness::R4,
];

fn verdict(id: u32, what: &str, ok: bool) {
    println!(
        "criterion {id:2}: {} — {what}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {what}");
}

fn random_density(d: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let m = &a * a.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m / Complex64::new(tr, 0.0)).unwrap()
}

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> HermitianOp {
    let a = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    HermitianOp::new(&a + a.adjoint()).unwrap()
}

#[test]
fn criterion_01_minimal_classical_entropy_table() {
    let expected = [1.334, 1.223, 1.356];
    let mut ok = true;
    for (case, want) in CASES.iter().zip(expected) {
        let spec = canonical_witness(*case);
        let target = scenarios::certified_witness_value(*case);
        let h = min_classical_entropy(&spec, spec.n(), target)
            .unwrap()
            .entropy;
        ok &= (h - want).abs() <= 1e-3;
    }
    verdict(1, "classical entropy minima 1.334/1.223/1.356 +/- 1e-3", ok);
}

#[test]
fn criterion_02_minimal_quantum_entropy_table() {
    let expected = [0.897, 0.829, 0.888];
    let opt = OptimizationConfig::default();
    let mut ok = true;
    for (case, want) in CASES.iter().zip(expected) {
        let spec = canonical_witness(*case);
        let target = scenarios::certified_witness_value(*case);
        let fit = min_quantum_entropy(&spec, spec.n(), target, &opt).unwrap();
        ok &= (fit.entropy - want).abs() <= 5e-3 && fit.residual <= 1e-5;
    }
    verdict(
        2,
        "quantum entropy minima 0.897/0.829/0.888 +/- 5e-3, residual <= 1e-5",
        ok,
    );
}

#[test]
fn criterion_03_entropy_gaps() {
    let expected = [0.437, 0.394, 0.468];
    let opt = OptimizationConfig::default();
    let mut ok = true;
    for (case, want) in CASES.iter().zip(expected) {
        let spec = canonical_witness(*case);
        let target = scenarios::certified_witness_value(*case);
        let h = min_classical_entropy(&spec, spec.n(), target)
            .unwrap()
            .entropy;
        let s = min_quantum_entropy(&spec, spec.n(), target, &opt)
            .unwrap()
            .entropy;
        ok &= ((h - s) - want).abs() <= 1e-2;
    }
    verdict(3, "classical-quantum gaps 0.437/0.394/0.468 +/- 1e-2", ok);
}

#[test]
fn criterion_04_certificate_evaluation() {
    let mut ok = true;
    for case in CASES {
        let spec = canonical_witness(case);
        let ens = scenarios::quantum_ensemble(case);
        let meas = scenarios::witness_measurements(case);
        let w = quantum_value(&ens, &meas, &spec).unwrap();
        let s = von_neumann_entropy(&ens.average());
        ok &= (w - scenarios::certified_witness_value(case)).abs() <= 2e-3;
        ok &= (s - scenarios::certified_quantum_entropy(case)).abs() <= 2e-3;
    }
    verdict(
        4,
        "certificates evaluate to 3.622/0.897, 5.760/0.829, 5.211/0.888 +/- 2e-3",
        ok,
    );
}

#[test]
fn criterion_05_dimension_counterexample() {
    let spec = canonical_witness(CanonicalWitness::I4);
    // a qubit model at I4 = 6 is pinned to the spectrum (5/8, 3/8)
    let qubit = -(0.625f64.log2() * 0.625 + 0.375f64.log2() * 0.375);
    let mut ok = (qubit - 0.954).abs() <= 1e-3;
    ok &= (scenarios::qubit_i4_entropy_at_six() - qubit).abs() <= 1e-3;
    let ens = scenarios::high_dim_i4_ensemble();
    let meas = scenarios::high_dim_i4_measurements();
    let w = quantum_value(&ens, &meas, &spec).unwrap();
    let s = von_neumann_entropy(&ens.average());
    ok &= (w - 6.0).abs() <= 2e-3 && (s - 0.912).abs() <= 1e-3;
    let fit = min_quantum_entropy(&spec, 4, 6.0, &OptimizationConfig::default()).unwrap();
    ok &= fit.entropy <= 0.9122 + 5e-3;
    verdict(
        5,
        "ququarts reach I4 = 6 at 0.912 bit, below the qubit's 0.954",
        ok,
    );
}

#[test]
fn criterion_06_measurement_rank_counterexample() {
    let spec = canonical_witness(CanonicalWitness::R4);
    let e1 = scenarios::rank_one_r4_ensemble();
    let m1 = scenarios::rank_one_r4_measurements();
    let w1 = quantum_value(&e1, &m1, &spec).unwrap();
    let s1 = von_neumann_entropy(&e1.average());
    let e2 = scenarios::rank_two_r4_ensemble();
    let m2 = scenarios::rank_two_r4_measurements();
    let w2 = quantum_value(&e2, &m2, &spec).unwrap();
    let s2 = von_neumann_entropy(&e2.average());
    let ok = (w1 - 6.472).abs() <= 2e-3
        && (s1 - 1.5).abs() <= 1e-3
        && (w2 - 6.472).abs() <= 2e-3
        && (s2 - 1.418).abs() <= 1e-3;
    verdict(
        6,
        "rank-2 outcomes reach R4 = 6.472 at 1.418 bit vs 1.5 for rank-1",
        ok,
    );
}

#[test]
fn criterion_07_message_dimension_counterexample() {
    let spec = scenarios::numeric_witness();
    let table = classical_bound_table(&spec).unwrap();
    let expected = [1.1144, 3.4854, 4.4764, 4.4860];
    let mut ok = table
        .bounds
        .iter()
        .zip(expected)
        .all(|(&got, want)| (got - want).abs() <= 1e-3);
    let h = min_classical_entropy(&spec, spec.n(), 3.4854).unwrap().entropy;
    let two_point = -(0.75f64.log2() * 0.75 + 0.25f64.log2() * 0.25);
    ok &= h > two_point + 1e-4;
    verdict(
        7,
        "bounds 1.1144/3.4854/4.4764/4.4860 and entropy at L_2 above 0.811",
        ok,
    );
}

#[test]
fn criterion_08_decomposition_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    // 500 random (state, observable) splits across dimensions 2..6
    for d in 2..=6usize {
        for _ in 0..100 {
            let rho = random_density(d, &mut rng);
            let obs = random_hermitian(d, &mut rng);
            let expect = (rho.matrix() * obs.matrix()).trace().re;
            let pieces = rank1_decompose(&rho, &obs).unwrap();
            ok &= pieces.len() <= 2 * (d - 1).max(1);
            let mut recon = CMatrix::zeros(d, d);
            for (w, psi) in &pieces {
                ok &= *w > -1e-12;
                let pw = (psi.projector() * obs.matrix()).trace().re;
                ok &= (pw - expect).abs() <= 1e-7;
                recon += psi.projector() * Complex64::new(*w, 0.0);
            }
            ok &= (&recon - rho.matrix()).norm() <= 1e-7;
        }
    }
    // ensemble reduction preserves the witness and never pays entropy
    let spec = canonical_witness(CanonicalWitness::I3);
    for _ in 0..20 {
        let ens = QuantumEnsemble::new(vec![
            random_density(3, &mut rng),
            random_density(3, &mut rng),
            random_density(3, &mut rng),
        ])
        .unwrap();
        let meas = entropy_witness::witness::recover_measurements(&ens, &spec).unwrap();
        let before_w = quantum_value(&ens, &meas, &spec).unwrap();
        let before_s = von_neumann_entropy(&ens.average());
        let red = reduce_ensemble(&ens, &meas, &spec).unwrap();
        let lifted = red.lift();
        let after_w = quantum_value(&lifted, &meas, &spec).unwrap();
        ok &= (after_w - before_w).abs() <= 1e-7;
        ok &= red.entropy() <= before_s + 1e-9;
    }
    verdict(
        8,
        "500 rank-1 splits reconstruct and preserve expectations; reductions keep the witness",
        ok,
    );
}

#[test]
fn criterion_09_angle_table_consistency() {
    let mut ok = true;
    for case in CASES {
        // preparator angles reproduce the certificate states
        let target = scenarios::quantum_ensemble(case);
        for (x, p) in scenarios::prep_angles(case).iter().enumerate() {
            let got = entropy_witness::polsim::prepare_state(p);
            let d = target.dim();
            let a = got.amplitudes().rows(0, d).into_owned();
            let overlap = (a.adjoint() * target.states()[x].matrix() * &a)[(0, 0)].re;
            // projector distance for pure states: sqrt(2 - 2*overlap)
            let dist = (2.0 - 2.0 * overlap.min(1.0)).max(0.0).sqrt();
            ok &= dist <= 2e-3;
        }
        // measurement angles reproduce the certificate projectors
        let meas = scenarios::witness_measurements(case);
        for (y, m) in scenarios::witness_meas_angles(case).iter().enumerate() {
            let nu = entropy_witness::polsim::projection_state(m);
            let d = meas[y].dim();
            let a = PureState::normalized(nu.amplitudes().rows(0, d).into_owned()).unwrap();
            // the certificate's minus-outcome projector
            let minus = (CMatrix::identity(d, d) - meas[y].op().matrix())
                * Complex64::new(0.5, 0.0);
            let dist = (a.projector() - minus).norm();
            ok &= dist <= 2e-3;
        }
        // classical strategy tables prepare exact basis states
        let protocol = scenarios::classical_protocol(case);
        for (strategy, angles) in protocol
            .mixture
            .strategies()
            .iter()
            .zip(&protocol.prep_angles)
        {
            for (x, p) in angles.iter().enumerate() {
                let got = entropy_witness::polsim::prepare_state(p);
                let want = PureState::basis(4, strategy.message_map()[x]);
                ok &= got.projector_distance(&want) <= 1e-10;
            }
        }
    }
    // tomography designs are full rank and invert exactly
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in [TomoCase::I3, TomoCase::I4R4] {
        let ts = tomography_settings(case);
        ok &= ts.design_rank() == ts.dim() * ts.dim();
        for _ in 0..10 {
            let rho = random_density(ts.dim(), &mut rng);
            let counts = ts.forward_counts(&rho, 27_000.0);
            let rec = linear_reconstruct(&counts, &ts).unwrap();
            ok &= (rec.matrix() - rho.matrix()).norm() <= 1e-8;
        }
    }
    verdict(
        9,
        "angle tables reproduce states/projectors within 2e-3; tomography designs invert",
        ok,
    );
}

#[test]
fn criterion_10_simulated_experiment() {
    let mut ok = true;
    // exact-probability mode reproduces the published operating points
    let exact = SimConfig {
        exact: true,
        ..Default::default()
    };
    for case in CASES {
        let q = run_protocol(case, Mode::Quantum, &exact).unwrap();
        let c = run_protocol(case, Mode::Classical, &exact).unwrap();
        ok &= (q.witness - scenarios::certified_witness_value(case)).abs() <= 2e-3;
        ok &= (q.entropy - scenarios::certified_quantum_entropy(case)).abs() <= 2e-3;
        ok &= (c.witness - scenarios::certified_witness_value(case)).abs() <= 2e-3;
        ok &= (c.entropy - scenarios::certified_classical_entropy(case)).abs() <= 2e-3;
    }
    // Poisson mode recovers them within 3 Monte-Carlo deviations
    let noisy = SimConfig {
        seed: 10,
        ..Default::default()
    };
    for (case, mode, w, e) in [
        (CanonicalWitness::I3, Mode::Quantum, 3.6222, 0.8971),
        (CanonicalWitness::R4, Mode::Classical, 5.2112, 1.3555),
    ] {
        let b = error_budget(case, mode, &noisy, 20).unwrap();
        ok &= (b.mean_witness - w).abs() <= 3.0 * b.std_witness + 0.02;
        ok &= (b.mean_entropy - e).abs() <= 3.0 * b.std_entropy + 0.02;
    }
    // tomography of Poisson counts stays faithful on average
    let ts = tomography_settings(TomoCase::I4R4);
    let ens = scenarios::quantum_ensemble(CanonicalWitness::R4);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fsum = 0.0;
    let mut fcount = 0;
    for rho in ens.states() {
        let counts: Vec<f64> = ts
            .forward_counts(rho, 27_000.0)
            .iter()
            .map(|&m| {
                if m <= 1e-9 {
                    0.0
                } else {
                    Poisson::new(m).unwrap().sample(&mut rng)
                }
            })
            .collect();
        let fit = mle_repair(&counts, &ts).unwrap();
        fsum += fidelity(rho, &fit).unwrap();
        fcount += 1;
    }
    ok &= fsum / fcount as f64 >= 0.99;
    verdict(
        10,
        "exact mode matches published values; Poisson mode within 3 sigma; tomography fidelity >= 0.99",
        ok,
    );
}

#[test]
fn criterion_11_curve_properties() {
    let opt = OptimizationConfig::default();
    let mut ok = true;
    for case in CASES {
        let spec = canonical_witness(case);
        let curve = entropy_curve(&spec, spec.n(), 20, &opt).unwrap();
        ok &= curve.len() == 20;
        for (i, p) in curve.iter().enumerate() {
            ok &= p.quantum_entropy <= p.classical_entropy + 5e-3;
            if i > 0 {
                ok &= p.classical_entropy >= curve[i - 1].classical_entropy - 2e-3;
                ok &= p.quantum_entropy >= curve[i - 1].quantum_entropy - 2e-3;
            }
        }
    }
    verdict(
        11,
        "20-point entropy curves are non-decreasing and quantum <= classical",
        ok,
    );
}
