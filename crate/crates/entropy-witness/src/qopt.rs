//! Minimal von Neumann entropy compatible with a target witness value.
//!
//! Pure states suffice for the preparations, and for a fixed ensemble the
//! best measurements are known in closed form (the sign operators of the
//! signed state combinations, see [`crate::witness::recover_measurements`]).
//! The search therefore runs over state ensembles only, parameterized by
//! hyperspherical angles, and minimizes the entropy of the average state
//! under the constraint that the eigenvalue-sum bound reaches the target.
//! A quadratic penalty with an increasing schedule handles the constraint;
//! a final first-order polish restores feasibility to high precision.
//! Multistart over seeded random initial angles guards against local
//! minima; the whole procedure is deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{classical_bound, min_classical_entropy};
use crate::error::{Error, Result};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::qcore::{von_neumann_entropy, CVector, DensityMatrix, PureState};
use crate::witness::{
    eigen_sum_bound, quantum_value, recover_measurements, Measurement, QuantumEnsemble,
    WitnessSpec,
};

/// Hyperspherical angles for an ensemble of `n` pure states in dimension
/// `d`. The first state is pinned to the first basis vector; state `x`
/// (0-based) lives in the span of the first `min(x, d - 1) + 1` basis
/// vectors, with one polar angle and one phase per extra coordinate. This
/// uses the unitary freedom of the scenario to remove all redundant
/// parameters while reaching every ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateAngles {
    n: usize,
    d: usize,
    /// `thetas[x - 1]` has length `min(x, d - 1)`.
    thetas: Vec<Vec<f64>>,
    phis: Vec<Vec<f64>>,
}

impl StateAngles {
    pub fn new(n: usize, d: usize, thetas: Vec<Vec<f64>>, phis: Vec<Vec<f64>>) -> Result<Self> {
        if n < 2 || d < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least two preparations and two dimensions, got n={n}, d={d}"
            )));
        }
        if thetas.len() != n - 1 || phis.len() != n - 1 {
            return Err(Error::InvalidConfig(
                "need one angle list per state after the first".into(),
            ));
        }
        for x in 1..n {
            let k = x.min(d - 1);
            if thetas[x - 1].len() != k || phis[x - 1].len() != k {
                return Err(Error::InvalidConfig(format!(
                    "state {x} needs {k} polar angles and {k} phases"
                )));
            }
        }
        Ok(Self { n, d, thetas, phis })
    }

    /// Number of free real parameters.
    pub fn param_count(n: usize, d: usize) -> usize {
        (1..n).map(|x| 2 * x.min(d - 1)).sum()
    }

    fn from_flat(n: usize, d: usize, flat: &[f64]) -> Self {
        let mut thetas = Vec::with_capacity(n - 1);
        let mut phis = Vec::with_capacity(n - 1);
        let mut it = flat.iter().copied();
        for x in 1..n {
            let k = x.min(d - 1);
            thetas.push((0..k).map(|_| it.next().expect("flat length")).collect());
            phis.push((0..k).map(|_| it.next().expect("flat length")).collect());
        }
        Self { n, d, thetas, phis }
    }

    /// The flat parameter vector describing these angles (inverse of
    /// [`Self::from_flat`]).
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(Self::param_count(self.n, self.d));
        for x in 1..self.n {
            flat.extend_from_slice(&self.thetas[x - 1]);
            flat.extend_from_slice(&self.phis[x - 1]);
        }
        flat
    }

    /// The pure-state ensemble these angles describe.
    pub fn states(&self) -> Vec<PureState> {
        let mut out = Vec::with_capacity(self.n);
        out.push(PureState::basis(self.d, 0));
        for x in 1..self.n {
            let th = &self.thetas[x - 1];
            let ph = &self.phis[x - 1];
            let k = th.len();
            let mut amps = CVector::zeros(self.d);
            amps[0] = num_complex::Complex64::new(th[0].cos(), 0.0);
            let mut sines = 1.0;
            for j in 1..=k {
                sines *= th[j - 1].sin();
                let radial = if j < k { sines * th[j].cos() } else { sines };
                amps[j] = num_complex::Complex64::from_polar(radial, ph[j - 1]);
            }
            out.push(PureState::new(amps).expect("hyperspherical coordinates are unit norm"));
        }
        out
    }

    pub fn ensemble(&self) -> QuantumEnsemble {
        QuantumEnsemble::from_pure(&self.states()).expect("angle ensemble is valid")
    }
}

/// Multistart optimizer settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizationConfig {
    /// Number of random restarts.
    pub starts: usize,
    /// Objective evaluation budget per penalty stage.
    pub max_evals: usize,
    /// Increasing quadratic-penalty weights.
    pub penalty_schedule: Vec<f64>,
    /// Maximum accepted witness shortfall after polishing.
    pub constraint_tol: f64,
    /// Seed for the start-point generator.
    pub seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            max_evals: 6_000,
            penalty_schedule: vec![10.0, 100.0, 1000.0],
            constraint_tol: 1e-6,
            seed: 0,
        }
    }
}

/// Outcome of the constrained entropy minimization.
#[derive(Debug, Clone)]
pub struct QuantumEntropyOutcome {
    /// Minimal entropy found, in bits.
    pub entropy: f64,
    /// Witness value of the returned model (at least the target minus
    /// `residual`).
    pub witness_value: f64,
    /// Constraint shortfall `max(0, target - witness_value)`.
    pub residual: f64,
    /// The optimizing preparations.
    pub ensemble: QuantumEnsemble,
    /// The optimal sign-operator measurements for that ensemble.
    pub measurements: Vec<Measurement>,
    /// Angles reproducing the ensemble.
    pub angles: StateAngles,
    /// Which restart won (for reproducibility diagnostics).
    pub start_index: usize,
}

fn average_of(states: &[PureState]) -> DensityMatrix {
    let rhos: Vec<DensityMatrix> = states.iter().map(DensityMatrix::from_pure).collect();
    DensityMatrix::average(&rhos).expect("non-empty ensemble")
}

fn bound_of(flat: &[f64], n: usize, d: usize, spec: &WitnessSpec) -> f64 {
    let angles = StateAngles::from_flat(n, d, flat);
    eigen_sum_bound(&angles.ensemble(), spec).expect("shapes fixed by construction")
}

fn entropy_of(flat: &[f64], n: usize, d: usize) -> f64 {
    von_neumann_entropy(&average_of(&StateAngles::from_flat(n, d, flat).states()))
}

fn random_start(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<f64> {
    let mut flat = Vec::with_capacity(StateAngles::param_count(n, d));
    for x in 1..n {
        let k = x.min(d - 1);
        for _ in 0..k {
            flat.push(rng.gen_range(0.0..std::f64::consts::FRAC_PI_2));
        }
        for _ in 0..k {
            flat.push(rng.gen_range(0.0..std::f64::consts::TAU));
        }
    }
    flat
}

fn start_rng(seed: u64, start: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (start as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// First-order feasibility polish: Newton steps on the scalar constraint
/// `bound(x) >= target` along its numerical gradient. Moves only as much
/// as needed, so the entropy cost is second order in the shortfall.
fn polish(flat: &mut Vec<f64>, n: usize, d: usize, spec: &WitnessSpec, target: f64, tol: f64) {
    const H: f64 = 1e-6;
    for _ in 0..60 {
        let bound = bound_of(flat, n, d, spec);
        let shortfall = target - bound;
        if shortfall <= tol * 0.1 {
            return;
        }
        let mut grad = vec![0.0; flat.len()];
        let mut norm2 = 0.0;
        for i in 0..flat.len() {
            let orig = flat[i];
            flat[i] = orig + H;
            let fp = bound_of(flat, n, d, spec);
            flat[i] = orig - H;
            let fm = bound_of(flat, n, d, spec);
            flat[i] = orig;
            grad[i] = (fp - fm) / (2.0 * H);
            norm2 += grad[i] * grad[i];
        }
        if norm2 < 1e-18 {
            return;
        }
        for (v, g) in flat.iter_mut().zip(&grad) {
            *v += shortfall * g / norm2;
        }
    }
}

struct StartOutcome {
    entropy: f64,
    residual: f64,
    flat: Vec<f64>,
    start: usize,
}

fn run_start(
    start: usize,
    spec: &WitnessSpec,
    d: usize,
    target: f64,
    config: &OptimizationConfig,
) -> StartOutcome {
    let n = spec.n();
    let mut rng = start_rng(config.seed, start);
    let mut flat = random_start(&mut rng, n, d);
    let opts = NelderMeadOptions {
        max_evals: config.max_evals,
        ..Default::default()
    };
    for &mu in &config.penalty_schedule {
        let obj = |x: &[f64]| {
            let shortfall = (target - bound_of(x, n, d, spec)).max(0.0);
            entropy_of(x, n, d) + mu * shortfall * shortfall
        };
        flat = nelder_mead(obj, &flat, &opts).x;
    }
    polish(&mut flat, n, d, spec, target, config.constraint_tol);
    let residual = (target - bound_of(&flat, n, d, spec)).max(0.0);
    StartOutcome {
        entropy: entropy_of(&flat, n, d),
        residual,
        flat,
        start,
    }
}

/// Minimal von Neumann entropy of the average state over all `d`-dimensional
/// quantum models reaching witness value `target`.
pub fn min_quantum_entropy(
    spec: &WitnessSpec,
    d: usize,
    target: f64,
    config: &OptimizationConfig,
) -> Result<QuantumEntropyOutcome> {
    if config.starts == 0 || config.penalty_schedule.is_empty() {
        return Err(Error::InvalidConfig(
            "need at least one start and one penalty stage".into(),
        ));
    }
    let outcomes: Vec<StartOutcome> = (0..config.starts)
        .into_par_iter()
        .map(|s| run_start(s, spec, d, target, config))
        .collect();

    // prefer feasible starts; among them the lowest entropy, ties by index
    let best = outcomes
        .iter()
        .filter(|o| o.residual <= config.constraint_tol)
        .min_by(|a, b| {
            a.entropy
                .partial_cmp(&b.entropy)
                .unwrap()
                .then(a.start.cmp(&b.start))
        });
    let best = match best {
        Some(b) => b,
        None => {
            let nearest = outcomes
                .iter()
                .min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
                .expect("at least one start");
            return Err(Error::NonConvergence {
                residual: nearest.residual,
            });
        }
    };

    let angles = StateAngles::from_flat(spec.n(), d, &best.flat);
    let ensemble = angles.ensemble();
    let measurements = recover_measurements(&ensemble, spec)?;
    let witness_value = quantum_value(&ensemble, &measurements, spec)?;
    Ok(QuantumEntropyOutcome {
        entropy: best.entropy,
        witness_value,
        residual: (target - witness_value).max(0.0),
        ensemble,
        measurements,
        angles,
        start_index: best.start,
    })
}

/// Estimate of the maximal witness value over `d`-dimensional quantum
/// models (a lower bound that is tight in practice with enough starts).
pub fn max_quantum_value(spec: &WitnessSpec, d: usize, config: &OptimizationConfig) -> f64 {
    let n = spec.n();
    let opts = NelderMeadOptions {
        max_evals: config.max_evals,
        ..Default::default()
    };
    (0..config.starts.max(1))
        .into_par_iter()
        .map(|s| {
            let mut rng = start_rng(config.seed.wrapping_add(0x5151), s);
            let start = random_start(&mut rng, n, d);
            let r = nelder_mead(|x| -bound_of(x, n, d, spec), &start, &opts);
            -r.f
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// One point of an entropy-versus-witness curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvePoint {
    pub witness: f64,
    pub classical_entropy: f64,
    pub quantum_entropy: f64,
}

/// Minimal classical and quantum entropy on a witness-value grid.
///
/// The grid spans from the one-message classical bound (below which both
/// entropies vanish) up to the smaller of the unrestricted classical bound
/// and the maximal quantum value (backed off by a small margin so every
/// point stays feasible). Optimizer noise is removed by a right-to-left
/// monotone repair of the quantum curve, which only ever lowers values.
pub fn entropy_curve(
    spec: &WitnessSpec,
    d: usize,
    points: usize,
    config: &OptimizationConfig,
) -> Result<Vec<CurvePoint>> {
    if points < 2 {
        return Err(Error::InvalidConfig("need at least two grid points".into()));
    }
    let lo = classical_bound(spec, 1)?;
    let l_full = classical_bound(spec, spec.n())?;
    let qmax = max_quantum_value(spec, d, config);
    let hi = l_full.min(qmax - 1e-4);
    if hi <= lo {
        return Err(Error::Infeasible {
            requested: hi,
            bound: lo,
        });
    }
    let mut curve = Vec::with_capacity(points);
    for i in 0..points {
        let w = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let classical = min_classical_entropy(spec, spec.n(), w)?.entropy;
        let quantum = min_quantum_entropy(spec, d, w, config)?.entropy;
        curve.push(CurvePoint {
            witness: w,
            classical_entropy: classical,
            quantum_entropy: quantum,
        });
    }
    for i in (0..points - 1).rev() {
        curve[i].quantum_entropy = curve[i].quantum_entropy.min(curve[i + 1].quantum_entropy);
    }
    Ok(curve)
}

/// Classical-quantum entropy gap at one witness value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    pub witness: f64,
    pub classical_entropy: f64,
    pub quantum_entropy: f64,
    /// `classical_entropy - quantum_entropy`.
    pub gap: f64,
    /// Witness shortfall of the quantum model.
    pub residual: f64,
}

pub fn gap_report(
    spec: &WitnessSpec,
    d: usize,
    target: f64,
    config: &OptimizationConfig,
) -> Result<GapReport> {
    let classical = min_classical_entropy(spec, spec.n(), target)?;
    let quantum = min_quantum_entropy(spec, d, target, config)?;
    Ok(GapReport {
        witness: target,
        classical_entropy: classical.entropy,
        quantum_entropy: quantum.entropy,
        gap: classical.entropy - quantum.entropy,
        residual: quantum.residual,
    })
}
