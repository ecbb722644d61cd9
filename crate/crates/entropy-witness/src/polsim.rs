//! Seeded simulation of the two-photon polarization experiment.
//!
//! A down-conversion source emits signal/idler photon pairs; wave plates
//! (one half-wave plate and one quarter-wave plate per photon in the
//! preparator, the same per photon in the measurement device) rotate the
//! joint polarization state, and polarizing beam splitters route each
//! photon to one of two detectors (`a`/`c` for the signal, `b`/`d` for
//! the idler). The four coincidence rates `D_ab, D_cb, D_cd, D_ad` are
//! the raw data; witness expectations and tomography counts are estimated
//! from them.
//!
//! Basis convention for the four-dimensional polarization space:
//! `|0> = |V_s V_i>`, `|1> = |H_s V_i>`, `|2> = |H_s H_i>`,
//! `|3> = |V_s H_i>`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{shannon_entropy, von_neumann_entropy, CVector, DensityMatrix, ProbVector, PureState};
use crate::scenarios;
use crate::tomo;
use crate::witness::{canonical_witness, CanonicalWitness};

/// Wave-plate angles (degrees) of the state preparator: signal half-wave
/// plate, signal quarter-wave plate, idler half-wave plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrepSetting {
    pub h_s: f64,
    pub q_s: f64,
    pub h_i: f64,
}

impl PrepSetting {
    pub fn new(h_s: f64, q_s: f64, h_i: f64) -> Self {
        Self { h_s, q_s, h_i }
    }
}

/// Wave-plate angles (degrees) of the measurement device: half- and
/// quarter-wave plates on the signal and idler arms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasSetting {
    pub h_s: f64,
    pub q_s: f64,
    pub h_i: f64,
    pub q_i: f64,
}

impl MeasSetting {
    pub fn new(h_s: f64, q_s: f64, h_i: f64, q_i: f64) -> Self {
        Self { h_s, q_s, h_i, q_i }
    }
}

fn sqrt2() -> f64 {
    2.0f64.sqrt()
}

/// Joint polarization state produced by the preparator at the given
/// wave-plate angles.
pub fn prepare_state(s: &PrepSetting) -> PureState {
    let hs = s.h_s.to_radians();
    let qs = s.q_s.to_radians();
    let hi = s.h_i.to_radians();
    let a = Complex64::new((2.0 * qs - 2.0 * hs).cos(), -(2.0 * hs).cos()) / sqrt2();
    let b = Complex64::new((2.0 * qs - 2.0 * hs).sin(), -(2.0 * hs).sin()) / sqrt2();
    let c = (2.0 * hi).cos();
    let sn = (2.0 * hi).sin();
    PureState::normalized(CVector::from_row_slice(&[a * c, b * c, b * sn, a * sn]))
        .expect("wave-plate amplitudes are normalized by construction")
}

fn analyzer_vectors(h: f64, q: f64) -> (Complex64, Complex64) {
    let h = h.to_radians();
    let q = q.to_radians();
    let c = Complex64::new((2.0 * q - 2.0 * h).cos(), (2.0 * h).cos());
    let s = Complex64::new((2.0 * q - 2.0 * h).sin(), (2.0 * h).sin());
    (c / sqrt2(), s / sqrt2())
}

fn tensor(x: (Complex64, Complex64), y: (Complex64, Complex64)) -> CVector {
    // component order (V,V), (H,V), (H,H), (V,H); `.0` is the V amplitude
    CVector::from_row_slice(&[x.0 * y.0, x.1 * y.0, x.1 * y.1, x.0 * y.1])
}

fn perp(v: (Complex64, Complex64)) -> (Complex64, Complex64) {
    (-v.1.conj(), v.0.conj())
}

/// The single-count projection state of the `ab` coincidence port at the
/// given measurement angles.
pub fn projection_state(m: &MeasSetting) -> PureState {
    port_states(m)[0].clone()
}

/// The four orthonormal projection states of the coincidence ports, in
/// the order `[ab, cb, cd, ad]`.
pub fn port_states(m: &MeasSetting) -> [PureState; 4] {
    let sigma = analyzer_vectors(m.h_s, m.q_s);
    let iota = analyzer_vectors(m.h_i, m.q_i);
    let sp = perp(sigma);
    let ip = perp(iota);
    let mk = |v: CVector| PureState::normalized(v).expect("port amplitudes are normalized");
    [
        mk(tensor(sigma, iota)),
        mk(tensor(sp, iota)),
        mk(tensor(sp, ip)),
        mk(tensor(sigma, ip)),
    ]
}

/// Coincidence probabilities of the four ports `[ab, cb, cd, ad]` for a
/// prepared state.
pub fn port_probabilities(state: &PureState, m: &MeasSetting) -> [f64; 4] {
    let ports = port_states(m);
    let mut p = [0.0; 4];
    for (pi, port) in p.iter_mut().zip(&ports) {
        *pi = port.amplitudes().dotc(state.amplitudes()).norm_sqr();
    }
    p
}

/// Simulation parameters for the photon-counting experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    /// Detected pair rate in coincidences per second.
    pub pair_rate: f64,
    /// Acquisition time per setting in seconds.
    pub duration_per_setting: f64,
    /// Standard deviation (degrees) of independent Gaussian errors on
    /// every wave-plate angle. Ignored in exact mode.
    pub angle_jitter_deg: f64,
    /// Accidental-coincidence rate added to every port, per second.
    pub dark_rate: f64,
    /// Seed of the count-level and jitter randomness.
    pub seed: u64,
    /// Exact mode: counts are the real-valued Poisson means and angles
    /// are not jittered, so estimates carry no statistical noise.
    pub exact: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            pair_rate: 900.0,
            duration_per_setting: 30.0,
            angle_jitter_deg: 0.5,
            dark_rate: 0.0,
            seed: 0,
            exact: false,
        }
    }
}

/// Coincidence counts of one acquisition. Counts are real-valued so the
/// exact mode can report noiseless Poisson means.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoincidenceRecord {
    pub setting: String,
    pub ab: f64,
    pub ad: f64,
    pub cb: f64,
    pub cd: f64,
    pub duration: f64,
}

impl CoincidenceRecord {
    pub fn total(&self) -> f64 {
        self.ab + self.ad + self.cb + self.cd
    }

    /// Counts in the port order `[ab, cb, cd, ad]`.
    pub fn ports(&self) -> [f64; 4] {
        [self.ab, self.cb, self.cd, self.ad]
    }

    /// CSV header matching [`Self::csv_row`].
    pub fn csv_header() -> &'static str {
        "setting,D_ab,D_ad,D_cb,D_cd,duration"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.setting,
            crate::report::sig6(self.ab),
            crate::report::sig6(self.ad),
            crate::report::sig6(self.cb),
            crate::report::sig6(self.cd),
            crate::report::sig6(self.duration)
        )
    }
}

fn draw_count(mean: f64, exact: bool, rng: &mut ChaCha8Rng) -> f64 {
    if exact {
        mean
    } else if mean <= 1e-9 {
        // the sampler misbehaves for denormal-scale means, and a port
        // this dark never fires in any realistic acquisition
        0.0
    } else {
        Poisson::new(mean).expect("positive finite mean").sample(rng)
    }
}

/// Draws the coincidence counts of one acquisition with the given port
/// probabilities.
pub fn simulate_counts(
    probs: &[f64; 4],
    cfg: &SimConfig,
    duration: f64,
    setting: String,
    rng: &mut ChaCha8Rng,
) -> CoincidenceRecord {
    let dark = cfg.dark_rate * duration;
    let mean = |p: f64| p * cfg.pair_rate * duration + dark;
    let counts: Vec<f64> = probs
        .iter()
        .map(|&p| draw_count(mean(p), cfg.exact, rng))
        .collect();
    CoincidenceRecord {
        setting,
        ab: counts[0],
        cb: counts[1],
        cd: counts[2],
        ad: counts[3],
        duration,
    }
}

fn jitter_angle(a: f64, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> f64 {
    if cfg.exact || cfg.angle_jitter_deg == 0.0 {
        a
    } else {
        a + Normal::new(0.0, cfg.angle_jitter_deg)
            .expect("finite jitter width")
            .sample(rng)
    }
}

fn jitter_prep(p: &PrepSetting, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> PrepSetting {
    PrepSetting::new(
        jitter_angle(p.h_s, cfg, rng),
        jitter_angle(p.q_s, cfg, rng),
        jitter_angle(p.h_i, cfg, rng),
    )
}

fn jitter_meas(m: &MeasSetting, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> MeasSetting {
    MeasSetting::new(
        jitter_angle(m.h_s, cfg, rng),
        jitter_angle(m.q_s, cfg, rng),
        jitter_angle(m.h_i, cfg, rng),
        jitter_angle(m.q_i, cfg, rng),
    )
}

/// Witness expectation estimator: a sign per coincidence port in the
/// order `[ab, cb, cd, ad]`. Three-outcome estimators ignore the `ad`
/// port entirely (it is dark in the three-dimensional scenario).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Estimator {
    signs: Vec<i8>,
}

impl Estimator {
    /// Builds an estimator from per-port signs (3 or 4 of them).
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        if !(signs.len() == 3 || signs.len() == 4) || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidConfig(
                "an estimator needs 3 or 4 port signs of magnitude 1".into(),
            ));
        }
        Ok(Self {
            signs: signs.to_vec(),
        })
    }

    /// The estimator of the quantum witness expectations: the matched
    /// port counts against all others.
    pub fn quantum(case: CanonicalWitness) -> Self {
        match case {
            CanonicalWitness::I3 => Self {
                signs: vec![-1, 1, 1],
            },
            CanonicalWitness::I4 | CanonicalWitness::R4 => Self {
                signs: vec![-1, 1, 1, 1],
            },
        }
    }

    /// The estimator of the classical witness expectation of measurement
    /// `y`: ports are message values, signs are the strategies' shared
    /// outcome assignment.
    pub fn classical(case: CanonicalWitness, y: usize) -> Self {
        let outcomes = scenarios::classical_outcome_table(case);
        Self {
            signs: outcomes[y].clone(),
        }
    }

    /// Estimates the expectation from one coincidence record.
    pub fn expectation(&self, rec: &CoincidenceRecord) -> Result<f64> {
        let ports = rec.ports();
        let used = &ports[..self.signs.len()];
        let total: f64 = used.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidCounts(
                "no coincidences on the estimator ports".into(),
            ));
        }
        let signed: f64 = used
            .iter()
            .zip(&self.signs)
            .map(|(d, &s)| f64::from(s) * d)
            .sum();
        Ok(signed / total)
    }
}

/// Which side of the entropy comparison a protocol run simulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quantum,
    Classical,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Quantum => write!(f, "quantum"),
            Mode::Classical => write!(f, "classical"),
        }
    }
}

/// Outcome of one simulated protocol run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub case: CanonicalWitness,
    pub mode: Mode,
    /// Witness value estimated from the coincidence counts.
    pub witness: f64,
    /// Estimated entropy: von Neumann entropy of the tomographic average
    /// state in quantum mode, Shannon entropy of the observed message
    /// distribution in classical mode.
    pub entropy: f64,
    /// Per-(preparation, measurement) witness expectations.
    pub expectations: Vec<Vec<f64>>,
    /// Every acquisition of the run, in order.
    pub events: Vec<CoincidenceRecord>,
}

fn acquire(
    prep: &PrepSetting,
    meas: &MeasSetting,
    duration: f64,
    label: String,
    cfg: &SimConfig,
    rng: &mut ChaCha8Rng,
) -> CoincidenceRecord {
    let p = jitter_prep(prep, cfg, rng);
    let m = jitter_meas(meas, cfg, rng);
    let state = prepare_state(&p);
    let probs = port_probabilities(&state, &m);
    simulate_counts(&probs, cfg, duration, label, rng)
}

fn tomo_case(case: CanonicalWitness) -> tomo::TomoCase {
    match case {
        CanonicalWitness::I3 => tomo::TomoCase::I3,
        CanonicalWitness::I4 | CanonicalWitness::R4 => tomo::TomoCase::I4R4,
    }
}

fn run_quantum(case: CanonicalWitness, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<ProtocolReport> {
    let spec = canonical_witness(case);
    let preps = scenarios::prep_angles(case);
    let meas = scenarios::witness_meas_angles(case);
    if case == CanonicalWitness::I3 {
        // the three-dimensional scenario must not populate |3> = |V_s H_i>
        for p in &preps {
            let leak = prepare_state(p).amplitudes()[3].norm();
            assert!(leak < 1e-6, "three-dimensional preparation leaks into |3>");
        }
    }
    let estimator = Estimator::quantum(case);
    let mut events = Vec::new();
    let mut expectations = vec![vec![0.0; meas.len()]; preps.len()];

    for (x, p) in preps.iter().enumerate() {
        for (y, m) in meas.iter().enumerate() {
            let rec = acquire(
                p,
                m,
                cfg.duration_per_setting,
                format!("witness_x{}_y{}", x + 1, y + 1),
                cfg,
                rng,
            );
            expectations[x][y] = estimator.expectation(&rec)?;
            events.push(rec);
        }
    }
    let mut witness = 0.0;
    for (x, row) in expectations.iter().enumerate() {
        for (y, e) in row.iter().enumerate() {
            witness += spec.alpha()[(x, y)] * e;
        }
    }

    let settings = tomo::tomography_settings(tomo_case(case));
    let mut states = Vec::with_capacity(preps.len());
    for (x, p) in preps.iter().enumerate() {
        let mut counts = Vec::with_capacity(settings.len());
        for (j, m) in settings.settings().iter().enumerate() {
            let rec = acquire(
                p,
                m,
                cfg.duration_per_setting,
                format!("tomo_x{}_j{}", x + 1, j + 1),
                cfg,
                rng,
            );
            counts.push(rec.ab);
            events.push(rec);
        }
        let rho = if cfg.exact {
            tomo::project_psd(&tomo::linear_reconstruct(&counts, &settings)?)?
        } else {
            tomo::mle_repair(&counts, &settings)?
        };
        states.push(rho);
    }
    let avg = DensityMatrix::average(&states)?;
    Ok(ProtocolReport {
        case,
        mode: Mode::Quantum,
        witness,
        entropy: von_neumann_entropy(&avg),
        expectations,
        events,
    })
}

fn run_classical(case: CanonicalWitness, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> Result<ProtocolReport> {
    let spec = canonical_witness(case);
    let protocol = scenarios::classical_protocol(case);
    let n = spec.n();
    let l = spec.l();
    let meas = MeasSetting::new(0.0, 0.0, 0.0, 0.0);
    let mut events = Vec::new();
    // pooled counts per (preparation, measurement, port)
    let mut pooled = vec![vec![[0.0f64; 4]; l]; n];

    for (lam, (weight, prep_row)) in protocol
        .weights
        .iter()
        .zip(&protocol.prep_angles)
        .enumerate()
    {
        let duration = weight * cfg.duration_per_setting;
        for (x, p) in prep_row.iter().enumerate() {
            for y in 0..l {
                let rec = acquire(
                    p,
                    &meas,
                    duration,
                    format!("classical_l{}_x{}_y{}", lam + 1, x + 1, y + 1),
                    cfg,
                    rng,
                );
                for (acc, d) in pooled[x][y].iter_mut().zip(rec.ports()) {
                    *acc += d;
                }
                events.push(rec);
            }
        }
    }

    let mut expectations = vec![vec![0.0; l]; n];
    let mut witness = 0.0;
    // the n ports double as message detectors: accumulate their totals
    let mut message_counts = vec![0.0f64; n];
    for x in 0..n {
        for y in 0..l {
            let rec = CoincidenceRecord {
                setting: String::new(),
                ab: pooled[x][y][0],
                cb: pooled[x][y][1],
                cd: pooled[x][y][2],
                ad: pooled[x][y][3],
                duration: cfg.duration_per_setting,
            };
            let e = Estimator::classical(case, y).expectation(&rec)?;
            expectations[x][y] = e;
            witness += spec.alpha()[(x, y)] * e;
            for (m, acc) in message_counts.iter_mut().enumerate() {
                *acc += pooled[x][y][m];
            }
        }
    }
    let total: f64 = message_counts.iter().sum();
    let probs: Vec<f64> = message_counts.iter().map(|c| c / total).collect();
    let entropy = shannon_entropy(&ProbVector::new(probs)?);

    Ok(ProtocolReport {
        case,
        mode: Mode::Classical,
        witness,
        entropy,
        expectations,
        events,
    })
}

/// Simulates one full protocol run (witness acquisition plus entropy
/// estimation) for a canonical witness.
pub fn run_protocol(case: CanonicalWitness, mode: Mode, cfg: &SimConfig) -> Result<ProtocolReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match mode {
        Mode::Quantum => run_quantum(case, cfg, &mut rng),
        Mode::Classical => run_classical(case, cfg, &mut rng),
    }
}

/// Monte-Carlo spread of the estimated witness and entropy over repeated
/// protocol runs with independent noise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub case: CanonicalWitness,
    pub mode: Mode,
    pub trials: usize,
    pub mean_witness: f64,
    pub std_witness: f64,
    pub mean_entropy: f64,
    pub std_entropy: f64,
}

/// Runs `trials` independent protocol simulations (seeds `seed..seed+trials`)
/// and reports the sample mean and standard deviation of the witness and
/// entropy estimates.
pub fn error_budget(
    case: CanonicalWitness,
    mode: Mode,
    cfg: &SimConfig,
    trials: usize,
) -> Result<ErrorBudget> {
    if trials < 2 {
        return Err(Error::InvalidConfig(
            "an error budget needs at least two trials".into(),
        ));
    }
    use rayon::prelude::*;
    let samples: Result<Vec<(f64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut c = cfg.clone();
            c.exact = false;
            c.seed = cfg.seed.wrapping_add(t as u64);
            let rep = run_protocol(case, mode, &c)?;
            Ok((rep.witness, rep.entropy))
        })
        .collect();
    let samples = samples?;
    let n = samples.len() as f64;
    let mean = |f: &dyn Fn(&(f64, f64)) -> f64| samples.iter().map(f).sum::<f64>() / n;
    let mw = mean(&|s| s.0);
    let me = mean(&|s| s.1);
    let var = |f: &dyn Fn(&(f64, f64)) -> f64, m: f64| {
        samples.iter().map(|s| (f(s) - m).powi(2)).sum::<f64>() / (n - 1.0)
    };
    Ok(ErrorBudget {
        case,
        mode,
        trials,
        mean_witness: mw,
        std_witness: var(&|s| s.0, mw).sqrt(),
        mean_entropy: me,
        std_entropy: var(&|s| s.1, me).sqrt(),
    })
}
