//! Minimal classical and quantum entropy as functions of the witness
//! value: the plot-ready curves whose vertical gap quantifies the
//! classical-over-quantum memory cost.
//!
//! Run with: `cargo run --release --example entropy_curves`

use entropy_witness::qopt::{entropy_curve, OptimizationConfig};
use entropy_witness::witness::{canonical_witness, CanonicalWitness};

fn main() -> entropy_witness::Result<()> {
    let case = CanonicalWitness::I3;
    let spec = canonical_witness(case);
    let opt = OptimizationConfig::default();
    let curve = entropy_curve(&spec, spec.n(), 9, &opt)?;

    println!("W,H_min,S_min");
    for p in &curve {
        println!(
            "{:.4},{:.4},{:.4}",
            p.witness, p.classical_entropy, p.quantum_entropy
        );
    }
    for pair in curve.windows(2) {
        assert!(
            pair[1].classical_entropy >= pair[0].classical_entropy - 2e-3,
            "classical curve is non-decreasing"
        );
        assert!(
            pair[1].quantum_entropy >= pair[0].quantum_entropy - 2e-3,
            "quantum curve is non-decreasing"
        );
    }
    for p in &curve {
        assert!(
            p.quantum_entropy <= p.classical_entropy + 5e-3,
            "quantum never costs more than classical"
        );
    }
    Ok(())
}
