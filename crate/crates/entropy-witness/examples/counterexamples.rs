//! Three certificates showing that naive intuitions about the witness
//! fail: higher Hilbert-space dimension can lower the entropy cost of a
//! witness value, higher-rank measurement outcomes can beat every rank-1
//! strategy, and crossing a message-dimension bound is not the same as
//! paying the corresponding entropy.
//!
//! Run with: `cargo run --release --example counterexamples`

use entropy_witness::classical::{classical_bound_table, min_classical_entropy};
use entropy_witness::qcore::von_neumann_entropy;
use entropy_witness::qopt::{min_quantum_entropy, OptimizationConfig};
use entropy_witness::scenarios::{
    high_dim_i4_ensemble, high_dim_i4_measurements, numeric_witness, qubit_i4_entropy_at_six,
    rank_one_r4_ensemble, rank_one_r4_measurements, rank_two_r4_ensemble, rank_two_r4_measurements,
};
use entropy_witness::witness::{canonical_witness, quantum_value, CanonicalWitness};

fn main() -> entropy_witness::Result<()> {
    // 1. At I4 = 6 a qubit model needs 0.954 bit, but a ququart model gets
    //    away with less: entropy is not monotone in dimension.
    let i4 = canonical_witness(CanonicalWitness::I4);
    let ens = high_dim_i4_ensemble();
    let meas = high_dim_i4_measurements();
    let w = quantum_value(&ens, &meas, &i4)?;
    let s = von_neumann_entropy(&ens.average());
    println!("[1] ququart certificate: I4 = {w:.4}, S = {s:.4} bit");
    println!("    qubit bound at I4 = 6: {} bit", qubit_i4_entropy_at_six());
    assert!((w - 6.0).abs() < 2e-3 && s < qubit_i4_entropy_at_six());
    let fit = min_quantum_entropy(&i4, 4, 6.0, &OptimizationConfig::default())?;
    println!("    optimizer over ququarts: S = {:.4} bit", fit.entropy);
    assert!(fit.entropy <= 0.9122 + 5e-3);

    // 2. At the rank-1 optimum of R4, allowing rank-2 measurement
    //    projectors strictly lowers the entropy.
    let r4 = canonical_witness(CanonicalWitness::R4);
    let (e1, m1) = (rank_one_r4_ensemble(), rank_one_r4_measurements());
    let (e2, m2) = (rank_two_r4_ensemble(), rank_two_r4_measurements());
    let w1 = quantum_value(&e1, &m1, &r4)?;
    let s1 = von_neumann_entropy(&e1.average());
    let w2 = quantum_value(&e2, &m2, &r4)?;
    let s2 = von_neumann_entropy(&e2.average());
    println!("[2] qutrit rank-1 optimum:  R4 = {w1:.4}, S = {s1:.4} bit");
    println!("    ququart rank-2 strategy: R4 = {w2:.4}, S = {s2:.4} bit");
    assert!((w1 - w2).abs() < 4e-3 && s2 < s1);

    // 3. A witness value that certifies "more than 2 classical messages"
    //    does not certify the entropy a 2-message intuition predicts.
    let spec = numeric_witness();
    let bounds = classical_bound_table(&spec)?;
    let l2 = bounds.bounds[1];
    let h = min_classical_entropy(&spec, spec.n(), l2)?.entropy;
    let two_point = -(0.75f64.log2() * 0.75 + 0.25f64.log2() * 0.25);
    println!("[3] numeric witness L_2 = {l2:.4}; minimal entropy there {h:.4} bit");
    println!("    two-point distribution entropy: {two_point:.4} bit");
    assert!(h > two_point + 1e-4);
    Ok(())
}
