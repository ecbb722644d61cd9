//! Quantum state tomography of the prepared polarization states.
//!
//! An `s`-dimensional density matrix is reconstructed from the `ab`-port
//! coincidence counts of `s^2` projection settings. The linear
//! reconstruction uses fixed matrices `M_j` paired with the (truncated,
//! unnormalized) projection states of the settings; the first `s`
//! settings project onto an orthonormal basis, so their counts estimate
//! the total flux and normalize the estimate to unit trace. A
//! maximum-likelihood fit repairs the indefiniteness that finite counts
//! introduce.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::polsim::{port_states, MeasSetting};
use crate::qcore::{CMatrix, CVector, DensityMatrix, HermitianOp};

/// Dimension of the tomographed states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TomoCase {
    /// Three-dimensional states (the three-preparation scenario).
    I3,
    /// Four-dimensional states (the four-preparation scenarios).
    I4R4,
}

impl TomoCase {
    pub fn dim(self) -> usize {
        match self {
            TomoCase::I3 => 3,
            TomoCase::I4R4 => 4,
        }
    }
}

/// The measurement settings and reconstruction matrices of one
/// tomography campaign.
#[derive(Debug, Clone)]
pub struct TomographySettings {
    case: TomoCase,
    settings: Vec<MeasSetting>,
    nus: Vec<CVector>,
    recon: Vec<CMatrix>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat(s: usize, rows: &[&[Complex64]], half: bool) -> CMatrix {
    let mut m = CMatrix::zeros(s, s);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = if half { v / 2.0 } else { *v };
        }
    }
    m
}

#[rustfmt::skip]
fn settings_i3() -> Vec<MeasSetting> {
    [
        (0.0, 0.0, 0.0, 0.0),
        (45.0, 0.0, 0.0, 0.0),
        (45.0, 0.0, 45.0, 0.0),
        (45.0, 0.0, 22.5, 0.0),
        (45.0, 0.0, 22.5, 45.0),
        (22.5, 45.0, 22.5, 45.0),
        (22.5, 45.0, 22.5, 90.0),
        (22.5, 45.0, 0.0, 90.0),
        (22.5, 0.0, 0.0, 90.0),
    ]
    .iter()
    .map(|&(h_s, q_s, h_i, q_i)| MeasSetting::new(h_s, q_s, h_i, q_i))
    .collect()
}

#[rustfmt::skip]
fn settings_i4r4() -> Vec<MeasSetting> {
    [
        (45.0, 0.0, 45.0, 0.0),
        (45.0, 0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0, 0.0),
        (0.0, 0.0, 45.0, 0.0),
        (22.5, 0.0, 45.0, 0.0),
        (22.5, 0.0, 0.0, 0.0),
        (22.5, 45.0, 0.0, 0.0),
        (22.5, 45.0, 45.0, 0.0),
        (22.5, 45.0, 22.5, 0.0),
        (22.5, 45.0, 22.5, 45.0),
        (22.5, 0.0, 22.5, 45.0),
        (45.0, 0.0, 22.5, 45.0),
        (0.0, 0.0, 22.5, 45.0),
        (0.0, 0.0, 22.5, 90.0),
        (45.0, 0.0, 22.5, 90.0),
        (22.5, 0.0, 22.5, 90.0),
    ]
    .iter()
    .map(|&(h_s, q_s, h_i, q_i)| MeasSetting::new(h_s, q_s, h_i, q_i))
    .collect()
}

#[rustfmt::skip]
fn recon_i3() -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    vec![
        mat(3, &[
            &[c(2.0, 0.0), c(-1.0, 1.0), z],
            &[c(-1.0, -1.0), z, z],
            &[z, z, z],
        ], true),
        mat(3, &[
            &[z, c(-1.0, 1.0), c(1.0, -1.0)],
            &[c(-1.0, -1.0), c(2.0, 0.0), c(-1.0, 1.0)],
            &[c(1.0, 1.0), c(-1.0, -1.0), z],
        ], true),
        mat(3, &[
            &[z, z, c(0.0, -2.0)],
            &[z, z, c(-1.0, 1.0)],
            &[c(0.0, 2.0), c(-1.0, -1.0), c(2.0, 0.0)],
        ], true),
        mat(3, &[
            &[z, z, i],
            &[z, z, -i],
            &[-i, i, z],
        ], false),
        mat(3, &[
            &[z, z, -o],
            &[z, z, o],
            &[-o, o, z],
        ], false),
        mat(3, &[
            &[z, z, c(2.0, 0.0)],
            &[z, z, z],
            &[c(2.0, 0.0), z, z],
        ], false),
        mat(3, &[
            &[z, z, c(0.0, 2.0)],
            &[z, z, z],
            &[c(0.0, -2.0), z, z],
        ], false),
        mat(3, &[
            &[z, o, c(-1.0, -1.0)],
            &[o, z, z],
            &[c(-1.0, 1.0), z, z],
        ], false),
        mat(3, &[
            &[z, -i, z],
            &[i, z, z],
            &[z, z, z],
        ], false),
    ]
}

#[rustfmt::skip]
fn recon_i4r4() -> Vec<CMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    vec![
        mat(4, &[
            &[z, z, o, z],
            &[z, z, c(-1.0, -1.0), i],
            &[o, c(-1.0, 1.0), c(2.0, 0.0), c(-1.0, -1.0)],
            &[z, -i, c(-1.0, 1.0), z],
        ], true),
        mat(4, &[
            &[z, c(-1.0, 1.0), o, z],
            &[c(-1.0, -1.0), c(2.0, 0.0), c(-1.0, -1.0), i],
            &[o, c(-1.0, 1.0), z, z],
            &[z, -i, z, z],
        ], true),
        mat(4, &[
            &[c(2.0, 0.0), c(-1.0, 1.0), o, c(-1.0, -1.0)],
            &[c(-1.0, -1.0), z, z, i],
            &[o, z, z, z],
            &[c(-1.0, 1.0), -i, z, z],
        ], true),
        mat(4, &[
            &[z, z, o, c(-1.0, -1.0)],
            &[z, z, z, i],
            &[o, z, z, c(-1.0, -1.0)],
            &[c(-1.0, 1.0), -i, c(-1.0, 1.0), c(2.0, 0.0)],
        ], true),
        mat(4, &[
            &[z, z, c(-1.0, 1.0), z],
            &[z, z, z, c(1.0, -1.0)],
            &[c(-1.0, -1.0), z, z, c(0.0, 2.0)],
            &[z, c(1.0, 1.0), c(0.0, -2.0), z],
        ], true),
        mat(4, &[
            &[z, c(0.0, -2.0), c(-1.0, 1.0), z],
            &[c(0.0, 2.0), z, z, c(1.0, -1.0)],
            &[c(-1.0, -1.0), z, z, z],
            &[z, c(1.0, 1.0), z, z],
        ], true),
        mat(4, &[
            &[z, c(2.0, 0.0), c(-1.0, 1.0), z],
            &[c(2.0, 0.0), z, z, c(-1.0, 1.0)],
            &[c(-1.0, -1.0), z, z, z],
            &[z, c(-1.0, -1.0), z, z],
        ], true),
        mat(4, &[
            &[z, z, c(-1.0, 1.0), z],
            &[z, z, z, c(-1.0, 1.0)],
            &[c(-1.0, -1.0), z, z, c(2.0, 0.0)],
            &[z, c(-1.0, -1.0), c(2.0, 0.0), z],
        ], true),
        mat(4, &[
            &[z, z, -i, z],
            &[z, z, z, -i],
            &[i, z, z, z],
            &[z, i, z, z],
        ], false),
        mat(4, &[
            &[z, z, o, z],
            &[z, z, z, o],
            &[o, z, z, z],
            &[z, o, z, z],
        ], false),
        mat(4, &[
            &[z, z, -i, z],
            &[z, z, z, i],
            &[i, z, z, z],
            &[z, -i, z, z],
        ], false),
        mat(4, &[
            &[z, z, c(-1.0, 1.0), z],
            &[z, z, c(2.0, 0.0), c(-1.0, -1.0)],
            &[c(-1.0, -1.0), c(2.0, 0.0), z, z],
            &[z, c(-1.0, 1.0), z, z],
        ], true),
        mat(4, &[
            &[z, z, c(-1.0, 1.0), c(2.0, 0.0)],
            &[z, z, z, c(-1.0, -1.0)],
            &[c(-1.0, -1.0), z, z, z],
            &[c(2.0, 0.0), c(-1.0, 1.0), z, z],
        ], true),
        mat(4, &[
            &[z, z, c(-1.0, -1.0), c(0.0, 2.0)],
            &[z, z, z, c(1.0, -1.0)],
            &[c(-1.0, 1.0), z, z, z],
            &[c(0.0, -2.0), c(1.0, 1.0), z, z],
        ], true),
        mat(4, &[
            &[z, z, c(-1.0, -1.0), z],
            &[z, z, c(0.0, 2.0), c(1.0, -1.0)],
            &[c(-1.0, 1.0), c(0.0, -2.0), z, z],
            &[z, c(1.0, 1.0), z, z],
        ], true),
        mat(4, &[
            &[z, z, o, z],
            &[z, z, z, -o],
            &[o, z, z, z],
            &[z, -o, z, z],
        ], false),
    ]
}

/// The published tomography settings and reconstruction matrices.
pub fn tomography_settings(case: TomoCase) -> TomographySettings {
    let (settings, recon) = match case {
        TomoCase::I3 => (settings_i3(), recon_i3()),
        TomoCase::I4R4 => (settings_i4r4(), recon_i4r4()),
    };
    let s = case.dim();
    let nus = settings
        .iter()
        .map(|m| {
            // truncated (unnormalized) projection amplitudes of the ab port
            let full = port_states(m)[0].amplitudes().clone();
            full.rows(0, s).into_owned()
        })
        .collect();
    TomographySettings {
        case,
        settings,
        nus,
        recon,
    }
}

impl TomographySettings {
    pub fn case(&self) -> TomoCase {
        self.case
    }

    pub fn dim(&self) -> usize {
        self.case.dim()
    }

    /// Number of settings, `dim^2`.
    pub fn len(&self) -> usize {
        self.settings.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn settings(&self) -> &[MeasSetting] {
        &self.settings
    }

    /// The reconstruction matrices paired with the settings.
    pub fn reconstruction_matrices(&self) -> &[CMatrix] {
        &self.recon
    }

    /// The truncated projection amplitudes of each setting.
    pub fn projection_amplitudes(&self) -> &[CVector] {
        &self.nus
    }

    fn probability(&self, rho: &CMatrix, j: usize) -> f64 {
        let nu = &self.nus[j];
        (nu.adjoint() * rho * nu)[(0, 0)].re
    }

    /// Expected counts `flux * <nu_j|rho|nu_j>` for every setting.
    pub fn forward_counts(&self, rho: &DensityMatrix, flux: f64) -> Vec<f64> {
        (0..self.len())
            .map(|j| flux * self.probability(rho.matrix(), j))
            .collect()
    }

    /// Rank of the design (the projectors as vectors): full rank `dim^2`
    /// makes the linear reconstruction well posed.
    pub fn design_rank(&self) -> usize {
        let s = self.dim();
        let mut rows = DMatrix::<Complex64>::zeros(self.len(), s * s);
        for (j, nu) in self.nus.iter().enumerate() {
            let proj = nu * nu.adjoint();
            for a in 0..s {
                for b in 0..s {
                    rows[(j, a * s + b)] = proj[(a, b)];
                }
            }
        }
        rows.rank(1e-8)
    }
}

/// Coincidence counts of a tomography campaign: one row of `dim^2`
/// counts per prepared state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyDataset {
    pub counts: Vec<Vec<f64>>,
}

impl TomographyDataset {
    pub fn new(counts: Vec<Vec<f64>>) -> Self {
        Self { counts }
    }

    /// Serializes as CSV with columns `state_index,setting_index,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state_index,setting_index,count\n");
        for (x, row) in self.counts.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", x, j, crate::report::sig6(*d)));
            }
        }
        out
    }

    /// Parses the CSV format written by [`Self::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut counts: Vec<Vec<f64>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (ln == 0 && line.starts_with("state_index")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::InvalidCounts(format!(
                    "line {}: expected 3 fields, got {}",
                    ln + 1,
                    fields.len()
                )));
            }
            let parse = |s: &str, what: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidCounts(format!("line {}: bad {what} `{s}`", ln + 1))
                })
            };
            let x = parse(fields[0], "state index")? as usize;
            let j = parse(fields[1], "setting index")? as usize;
            let d = parse(fields[2], "count")?;
            if counts.len() <= x {
                counts.resize(x + 1, Vec::new());
            }
            if counts[x].len() != j {
                return Err(Error::InvalidCounts(format!(
                    "line {}: setting index {} out of order",
                    ln + 1,
                    j
                )));
            }
            counts[x].push(d);
        }
        if counts.is_empty() {
            return Err(Error::InvalidCounts("empty dataset".into()));
        }
        Ok(Self { counts })
    }
}

fn check_counts(counts: &[f64], ts: &TomographySettings) -> Result<()> {
    if counts.len() != ts.len() {
        return Err(Error::InvalidCounts(format!(
            "expected {} counts, got {}",
            ts.len(),
            counts.len()
        )));
    }
    if counts.iter().any(|d| !d.is_finite() || *d < 0.0) {
        return Err(Error::InvalidCounts(
            "counts must be finite and nonnegative".into(),
        ));
    }
    Ok(())
}

/// Linear tomographic estimate from one state's counts. The first `dim`
/// settings project onto an orthonormal basis; their total estimates the
/// flux, which fixes the estimate to unit trace. The result is Hermitian
/// but may be indefinite for noisy counts.
pub fn linear_reconstruct(counts: &[f64], ts: &TomographySettings) -> Result<HermitianOp> {
    check_counts(counts, ts)?;
    let s = ts.dim();
    let flux: f64 = counts[..s].iter().sum();
    if !(flux > 0.0) {
        return Err(Error::InvalidCounts(
            "no counts on the basis settings".into(),
        ));
    }
    let mut m = CMatrix::zeros(s, s);
    for (mj, d) in ts.recon.iter().zip(counts) {
        m += mj * Complex64::new(*d / flux, 0.0);
    }
    HermitianOp::new(m)
}

/// Projects a Hermitian unit-trace estimate onto the density matrices by
/// clipping negative eigenvalues and renormalizing.
pub fn project_psd(op: &HermitianOp) -> Result<DensityMatrix> {
    let spec = crate::qcore::eigh(op);
    let clipped: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidOperator(
            "estimate has no positive eigenvalues".into(),
        ));
    }
    let s = op.dim();
    let mut m = CMatrix::zeros(s, s);
    for (k, &l) in clipped.iter().enumerate() {
        let v = spec.eigenvectors.column(k);
        m += (&v * v.adjoint()) * Complex64::new(l / total, 0.0);
    }
    DensityMatrix::new(m)
}

fn params_to_rho(params: &[f64], s: usize) -> CMatrix {
    // lower-triangular T: real diagonal, complex below
    let mut t = CMatrix::zeros(s, s);
    let mut k = 0;
    for i in 0..s {
        t[(i, i)] = Complex64::new(params[k], 0.0);
        k += 1;
        for j in 0..i {
            t[(i, j)] = Complex64::new(params[k], params[k + 1]);
            k += 2;
        }
    }
    let m = &t * t.adjoint();
    let tr = m.trace().re;
    if tr <= 0.0 {
        return CMatrix::identity(s, s) / Complex64::new(s as f64, 0.0);
    }
    m / Complex64::new(tr, 0.0)
}

fn rho_to_params(rho: &CMatrix) -> Vec<f64> {
    let s = rho.nrows();
    // ridge keeps the Cholesky factorization well defined
    let ridged = rho + CMatrix::identity(s, s) * Complex64::new(1e-8, 0.0);
    let chol = nalgebra::linalg::Cholesky::new(ridged)
        .expect("ridged density matrix is positive definite");
    let l = chol.l();
    // T = L^dagger is upper-triangular with real diagonal; our parameter
    // layout stores T^dagger = L, lower-triangular
    let mut params = Vec::with_capacity(s * s);
    for i in 0..s {
        params.push(l[(i, i)].re);
        for j in 0..i {
            params.push(l[(i, j)].re);
            params.push(l[(i, j)].im);
        }
    }
    params
}

/// Maximum-likelihood repair of the linear estimate: fits a density
/// matrix (Cholesky-parameterized, hence positive semidefinite) to the
/// counts under a Poisson model whose total flux is fixed by the
/// observed counts, starting from the clipped linear estimate.
pub fn mle_repair(counts: &[f64], ts: &TomographySettings) -> Result<DensityMatrix> {
    check_counts(counts, ts)?;
    let s = ts.dim();
    let seed = project_psd(&linear_reconstruct(counts, ts)?)?;
    let x0 = rho_to_params(seed.matrix());
    let total: f64 = counts.iter().sum();

    let neg_log_lik = |params: &[f64]| -> f64 {
        let rho = params_to_rho(params, s);
        let probs: Vec<f64> = (0..ts.len()).map(|j| ts.probability(&rho, j)).collect();
        let psum: f64 = probs.iter().sum();
        if !(psum > 0.0) {
            return f64::INFINITY;
        }
        let mut nll = 0.0;
        for (d, p) in counts.iter().zip(&probs) {
            let mu = (total * p / psum).max(1e-12);
            nll += mu - d * mu.ln();
        }
        nll
    };

    let opts = NelderMeadOptions {
        max_evals: 40_000,
        ftol: 1e-9,
        xtol: 1e-8,
        initial_step: 0.02,
    };
    let fit = nelder_mead(neg_log_lik, &x0, &opts);
    DensityMatrix::new(params_to_rho(&fit.x, s))
}

/// Average of the reconstructed states, whose von Neumann entropy is the
/// quantity the witness lower-bounds.
pub fn average_state(states: &[DensityMatrix]) -> Result<DensityMatrix> {
    DensityMatrix::average(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{fidelity, von_neumann_entropy};
    use crate::testutil::random_density;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_settings_sum_to_identity() {
        for case in [TomoCase::I3, TomoCase::I4R4] {
            let ts = tomography_settings(case);
            let s = ts.dim();
            let mut sum = CMatrix::zeros(s, s);
            for nu in &ts.nus[..s] {
                sum += nu * nu.adjoint();
            }
            assert!((sum - CMatrix::identity(s, s)).norm() < 1e-12, "{case:?}");
        }
    }

    #[test]
    fn design_has_full_rank() {
        assert_eq!(tomography_settings(TomoCase::I3).design_rank(), 9);
        assert_eq!(tomography_settings(TomoCase::I4R4).design_rank(), 16);
    }

    #[test]
    fn reconstruction_matrix_fixtures() {
        let i3 = tomography_settings(TomoCase::I3);
        // spot-check entries digit for digit
        let m1 = &i3.reconstruction_matrices()[0];
        assert_eq!(m1[(0, 0)], c(1.0, 0.0));
        assert_eq!(m1[(0, 1)], c(-0.5, 0.5));
        assert_eq!(m1[(1, 0)], c(-0.5, -0.5));
        let m9 = &i3.reconstruction_matrices()[8];
        assert_eq!(m9[(0, 1)], c(0.0, -1.0));
        assert_eq!(m9[(1, 0)], c(0.0, 1.0));
        let i4 = tomography_settings(TomoCase::I4R4);
        let m3 = &i4.reconstruction_matrices()[2];
        assert_eq!(m3[(0, 0)], c(1.0, 0.0));
        assert_eq!(m3[(0, 3)], c(-0.5, -0.5));
        assert_eq!(m3[(3, 0)], c(-0.5, 0.5));
        let m16 = &i4.reconstruction_matrices()[15];
        assert_eq!(m16[(0, 2)], c(1.0, 0.0));
        assert_eq!(m16[(1, 3)], c(-1.0, 0.0));
        // every matrix is Hermitian; the first `s` have unit trace, the
        // rest are traceless
        for (case, s) in [(TomoCase::I3, 3), (TomoCase::I4R4, 4)] {
            let ts = tomography_settings(case);
            for (j, m) in ts.reconstruction_matrices().iter().enumerate() {
                assert!((m - m.adjoint()).norm() < 1e-12, "{case:?} M{}", j + 1);
                let want = if j < s { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(m.trace().re, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn noiseless_round_trip_is_exact() {
        for case in [TomoCase::I3, TomoCase::I4R4] {
            let ts = tomography_settings(case);
            for trial in 0..50 {
                let rho = random_density(ts.dim(), 1000 + trial);
                let counts = ts.forward_counts(&rho, 27_000.0);
                let rec = linear_reconstruct(&counts, &ts).unwrap();
                let err = (rec.matrix() - rho.matrix()).norm();
                assert!(err < 1e-8, "{case:?} trial {trial}: error {err}");
                assert_abs_diff_eq!(rec.trace(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn mle_recovers_states_from_poisson_counts() {
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        use rand_distr::{Distribution, Poisson};
        let ts = tomography_settings(TomoCase::I4R4);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut worst: f64 = 1.0;
        for trial in 0..20 {
            let rho = random_density(4, 2000 + trial);
            let mean = ts.forward_counts(&rho, 27_000.0);
            let counts: Vec<f64> = mean
                .iter()
                .map(|&m| {
                    if m <= 0.0 {
                        0.0
                    } else {
                        Poisson::new(m).unwrap().sample(&mut rng)
                    }
                })
                .collect();
            let fit = mle_repair(&counts, &ts).unwrap();
            let f = fidelity(&rho, &fit).unwrap();
            worst = worst.min(f);
        }
        assert!(worst >= 0.99, "worst fidelity {worst}");
    }

    #[test]
    fn mle_matches_linear_on_clean_counts() {
        let ts = tomography_settings(TomoCase::I3);
        let rho = random_density(3, 7);
        let counts = ts.forward_counts(&rho, 27_000.0);
        let fit = mle_repair(&counts, &ts).unwrap();
        assert!(fidelity(&rho, &fit).unwrap() > 0.9999);
    }

    #[test]
    fn certificate_entropies_survive_the_tomography_pipeline() {
        use crate::scenarios::{certified_quantum_entropy, quantum_ensemble};
        use crate::witness::CanonicalWitness;
        for (case, tcase) in [
            (CanonicalWitness::I3, TomoCase::I3),
            (CanonicalWitness::I4, TomoCase::I4R4),
        ] {
            let ts = tomography_settings(tcase);
            let states = quantum_ensemble(case);
            let mut recon = Vec::new();
            for rho in states.states() {
                let counts = ts.forward_counts(rho, 27_000.0);
                recon.push(project_psd(&linear_reconstruct(&counts, &ts).unwrap()).unwrap());
            }
            let avg = average_state(&recon).unwrap();
            assert_abs_diff_eq!(
                von_neumann_entropy(&avg),
                certified_quantum_entropy(case),
                epsilon = 1e-3
            );
        }
    }

    #[test]
    fn dataset_csv_round_trip() {
        let ds = TomographyDataset::new(vec![vec![1.0, 2.5, 3.0], vec![4.0, 5.0, 6.25]]);
        let csv = ds.to_csv();
        assert!(csv.starts_with("state_index,setting_index,count\n"));
        let back = TomographyDataset::from_csv(&csv).unwrap();
        assert_eq!(ds, back);
        assert!(TomographyDataset::from_csv("a,b\n").is_err());
    }

    #[test]
    fn bad_counts_are_rejected() {
        let ts = tomography_settings(TomoCase::I3);
        assert!(linear_reconstruct(&[1.0; 5], &ts).is_err());
        assert!(linear_reconstruct(&[-1.0; 9], &ts).is_err());
        assert!(linear_reconstruct(&[0.0; 9], &ts).is_err());
    }
}
