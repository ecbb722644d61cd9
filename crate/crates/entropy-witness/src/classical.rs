//! Classical (deterministic plus shared randomness) models of the
//! prepare-and-measure scenario: dimension-restricted witness bounds and
//! the exact minimal Shannon entropy of the message at a fixed witness
//! value.
//!
//! A deterministic strategy encodes each preparation `x` into one of `n`
//! messages and answers each measurement `y` with a fixed sign per message.
//! Shared randomness mixes such strategies; the message entropy of a
//! mixture is the Shannon entropy of the induced message distribution
//! under the uniform prior on preparations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{shannon_entropy, ProbVector};
use crate::witness::WitnessSpec;

/// Deterministic encoding/decoding strategy: a message map `x -> m(x)` and
/// a sign table `E(y, m)` over all `n` message labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicStrategy {
    n: usize,
    l: usize,
    message: Vec<usize>,
    /// `outcomes[y][m]` in {-1, +1}; labels never sent default to +1.
    outcomes: Vec<Vec<i8>>,
}

impl DeterministicStrategy {
    pub fn new(message: Vec<usize>, outcomes: Vec<Vec<i8>>) -> Result<Self> {
        let n = message.len();
        let l = outcomes.len();
        if n == 0 || l == 0 {
            return Err(Error::InvalidStrategy("empty strategy".into()));
        }
        if message.iter().any(|&m| m >= n) {
            return Err(Error::InvalidStrategy(format!(
                "message label out of range 0..{n}"
            )));
        }
        for row in &outcomes {
            if row.len() != n {
                return Err(Error::InvalidStrategy(
                    "sign table row length disagrees with message count".into(),
                ));
            }
            if row.iter().any(|&e| e != 1 && e != -1) {
                return Err(Error::InvalidStrategy("signs must be +1 or -1".into()));
            }
        }
        Ok(Self {
            n,
            l,
            message,
            outcomes,
        })
    }

    /// Number of preparations (and of available message labels).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of measurements.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn message_map(&self) -> &[usize] {
        &self.message
    }

    pub fn outcomes(&self) -> &[Vec<i8>] {
        &self.outcomes
    }

    /// Number of distinct messages actually sent.
    pub fn dimension(&self) -> usize {
        let mut used = vec![false; self.n];
        for &m in &self.message {
            used[m] = true;
        }
        used.iter().filter(|&&u| u).count()
    }

    /// Message distribution under the uniform prior on preparations.
    pub fn message_distribution(&self) -> ProbVector {
        let mut p = vec![0.0; self.n];
        for &m in &self.message {
            p[m] += 1.0 / self.n as f64;
        }
        ProbVector::new(p).expect("counts normalize")
    }
}

/// Witness value of a deterministic strategy:
/// `sum_xy alpha_xy E(y, m(x))`.
pub fn strategy_witness(strat: &DeterministicStrategy, spec: &WitnessSpec) -> Result<f64> {
    if strat.n() != spec.n() || strat.l() != spec.l() {
        return Err(Error::DimensionMismatch(format!(
            "strategy shape ({}, {}) vs witness shape ({}, {})",
            strat.n(),
            strat.l(),
            spec.n(),
            spec.l()
        )));
    }
    let mut total = 0.0;
    for x in 0..strat.n() {
        let m = strat.message[x];
        for y in 0..strat.l() {
            total += spec.alpha()[(x, y)] * f64::from(strat.outcomes[y][m]);
        }
    }
    Ok(total)
}

/// A shared-randomness mixture of deterministic strategies.
#[derive(Debug, Clone)]
pub struct StrategyMixture {
    strategies: Vec<DeterministicStrategy>,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MixtureJson {
    /// One-hot encoding matrices, one per strategy: `P[m][x] = 1` iff
    /// preparation `x` is sent as message `m`.
    #[serde(rename = "P")]
    p: Vec<Vec<Vec<u8>>>,
    /// Sign tables, one per strategy, `E[y][m]`.
    #[serde(rename = "E")]
    e: Vec<Vec<Vec<i8>>>,
    /// Mixture weights.
    q: Vec<f64>,
}

impl StrategyMixture {
    pub fn new(strategies: Vec<DeterministicStrategy>, weights: Vec<f64>) -> Result<Self> {
        if strategies.is_empty() || strategies.len() != weights.len() {
            return Err(Error::InvalidStrategy(
                "mixture needs matching non-empty strategy and weight lists".into(),
            ));
        }
        let (n, l) = (strategies[0].n(), strategies[0].l());
        if strategies.iter().any(|s| s.n() != n || s.l() != l) {
            return Err(Error::InvalidStrategy(
                "mixture strategies of unequal shape".into(),
            ));
        }
        if weights.iter().any(|&q| !(q >= -1e-12)) {
            return Err(Error::InvalidStrategy("negative mixture weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidStrategy(format!(
                "mixture weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            strategies,
            weights: weights.iter().map(|&q| q.max(0.0) / sum).collect(),
        })
    }

    pub fn pure(strategy: DeterministicStrategy) -> Self {
        Self {
            strategies: vec![strategy],
            weights: vec![1.0],
        }
    }

    pub fn strategies(&self) -> &[DeterministicStrategy] {
        &self.strategies
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Largest dimension used by any strategy in the mixture.
    pub fn dimension(&self) -> usize {
        self.strategies
            .iter()
            .map(DeterministicStrategy::dimension)
            .max()
            .unwrap_or(0)
    }

    /// Weighted message distribution under the uniform prior.
    pub fn message_distribution(&self) -> ProbVector {
        let n = self.strategies[0].n();
        let mut p = vec![0.0; n];
        for (s, &q) in self.strategies.iter().zip(&self.weights) {
            for (pi, v) in p.iter_mut().zip(s.message_distribution().as_slice()) {
                *pi += q * v;
            }
        }
        ProbVector::new(p).expect("convex combination normalizes")
    }

    /// Shannon entropy of the message distribution, in bits.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.message_distribution())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = self
            .strategies
            .iter()
            .map(|s| {
                let n = s.n();
                let mut mat = vec![vec![0u8; n]; n];
                for (x, &m) in s.message_map().iter().enumerate() {
                    mat[m][x] = 1;
                }
                mat
            })
            .collect();
        let e = self.strategies.iter().map(|s| s.outcomes().to_vec()).collect();
        serde_json::to_value(MixtureJson {
            p,
            e,
            q: self.weights.clone(),
        })
        .expect("mixture serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: MixtureJson = serde_json::from_value(v.clone())?;
        if parsed.p.len() != parsed.e.len() || parsed.p.len() != parsed.q.len() {
            return Err(Error::InvalidStrategy(
                "P, E and q must have equal lengths".into(),
            ));
        }
        let mut strategies = Vec::with_capacity(parsed.p.len());
        for (pm, em) in parsed.p.iter().zip(&parsed.e) {
            let n = pm.len();
            let mut message = vec![usize::MAX; n];
            for (m, row) in pm.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidStrategy("P must be square".into()));
                }
                for (x, &v) in row.iter().enumerate() {
                    if v == 1 {
                        if message[x] != usize::MAX {
                            return Err(Error::InvalidStrategy(
                                "P column with more than one 1".into(),
                            ));
                        }
                        message[x] = m;
                    } else if v != 0 {
                        return Err(Error::InvalidStrategy("P entries must be 0 or 1".into()));
                    }
                }
            }
            if message.iter().any(|&m| m == usize::MAX) {
                return Err(Error::InvalidStrategy("P column without a 1".into()));
            }
            strategies.push(DeterministicStrategy::new(message, em.clone())?);
        }
        Self::new(strategies, parsed.q)
    }
}

/// Witness value of a mixture (linear in the weights).
pub fn mixture_witness(mix: &StrategyMixture, spec: &WitnessSpec) -> Result<f64> {
    let mut total = 0.0;
    for (s, &q) in mix.strategies().iter().zip(mix.weights()) {
        total += q * strategy_witness(s, spec)?;
    }
    Ok(total)
}

fn stirling2(n: usize) -> Vec<Vec<u128>> {
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = s[i - 1][k - 1] + (k as u128) * s[i - 1][k];
        }
    }
    s
}

/// Exact count of deterministic strategies with at most `d` messages,
/// counting all labelings of the message map and all sign tables over the
/// used labels.
fn strategy_count(n: usize, l: usize, d: usize) -> u128 {
    let s = stirling2(n);
    let mut total: u128 = 0;
    for k in 1..=d.min(n) {
        let mut falling: u128 = 1;
        for i in 0..k {
            falling *= (n - i) as u128;
        }
        total += s[n][k] * falling * (1u128 << (l * k));
    }
    total
}

const ENUMERATION_LIMIT: u128 = 2_000_000;

/// All deterministic strategies using at most `d` distinct messages.
///
/// Labels never sent answer +1 on every measurement, so each strategy is
/// generated exactly once. Guarded against combinatorial blow-up: scenarios
/// with `n * l > 16` or more than two million strategies are rejected.
pub fn enumerate_strategies(n: usize, l: usize, d: usize) -> Result<Vec<DeterministicStrategy>> {
    if n == 0 || l == 0 || d == 0 || d > n {
        return Err(Error::InvalidStrategy(format!(
            "invalid scenario n={n}, l={l}, d={d}"
        )));
    }
    let count = strategy_count(n, l, d);
    if n * l > 16 || count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { count });
    }
    let mut out = Vec::with_capacity(count as usize);
    let total_maps = (n as u64).pow(n as u32);
    for code in 0..total_maps {
        let mut message = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            message.push((c % n as u64) as usize);
            c /= n as u64;
        }
        let mut used: Vec<usize> = message.clone();
        used.sort_unstable();
        used.dedup();
        let k = used.len();
        if k > d {
            continue;
        }
        let bits = l * k;
        for pattern in 0u32..(1 << bits) {
            let mut outcomes = vec![vec![1i8; n]; l];
            for (y, row) in outcomes.iter_mut().enumerate() {
                for (i, &m) in used.iter().enumerate() {
                    if pattern >> (y * k + i) & 1 == 1 {
                        row[m] = -1;
                    }
                }
            }
            out.push(DeterministicStrategy {
                n,
                l,
                message: message.clone(),
                outcomes,
            });
        }
    }
    Ok(out)
}

/// The classical bound `L_d`: the maximal witness value over strategies
/// using at most `d` messages (mixing cannot exceed it).
pub fn classical_bound(spec: &WitnessSpec, d: usize) -> Result<f64> {
    let strategies = enumerate_strategies(spec.n(), spec.l(), d)?;
    let mut best = f64::NEG_INFINITY;
    for s in &strategies {
        best = best.max(strategy_witness(s, spec)?);
    }
    Ok(best)
}

/// Classical bounds `L_1 .. L_n` of a witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalBoundTable {
    /// `bounds[d - 1]` is `L_d`.
    pub bounds: Vec<f64>,
}

pub fn classical_bound_table(spec: &WitnessSpec) -> Result<ClassicalBoundTable> {
    let bounds = (1..=spec.n())
        .map(|d| classical_bound(spec, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassicalBoundTable { bounds })
}

/// Minimal message entropy at a fixed witness value, with an achieving
/// mixture.
#[derive(Debug, Clone)]
pub struct ClassicalEntropyResult {
    /// Minimal Shannon entropy in bits.
    pub entropy: f64,
    /// A mixture of at most two deterministic strategies attaining it.
    pub mixture: StrategyMixture,
    /// Its message distribution.
    pub distribution: ProbVector,
}

/// Exact minimum of the message entropy over all shared-randomness models
/// with at most `d` messages reproducing witness value `target`.
///
/// The entropy is concave in the mixture weights, so the minimum over the
/// polytope of weight vectors with the witness constraint is attained at a
/// vertex, and every vertex mixes at most two deterministic strategies.
/// The search therefore reduces each strategy to its (message
/// distribution, witness value) point, deduplicates, and scans all pairs
/// for the unique weight meeting the constraint.
pub fn min_classical_entropy(
    spec: &WitnessSpec,
    d: usize,
    target: f64,
) -> Result<ClassicalEntropyResult> {
    let strategies = enumerate_strategies(spec.n(), spec.l(), d)?;
    let n = spec.n();

    // deduplicate to distinct (distribution, witness) points, keeping one
    // representative strategy per point
    let mut seen: HashMap<(Vec<i64>, i64), usize> = HashMap::new();
    let mut points: Vec<(Vec<f64>, f64, usize)> = Vec::new();
    let quant = |v: f64| (v * 1e9).round() as i64;
    for (idx, s) in strategies.iter().enumerate() {
        let p = s.message_distribution().as_slice().to_vec();
        let w = strategy_witness(s, spec)?;
        let key = (p.iter().map(|&v| quant(v)).collect(), quant(w));
        seen.entry(key).or_insert_with(|| {
            points.push((p, w, idx));
            points.len() - 1
        });
    }

    let max_w = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let min_w = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    if target > max_w + 1e-9 || target < min_w - 1e-9 {
        return Err(Error::Infeasible {
            requested: target,
            bound: max_w,
        });
    }

    let mut best: Option<(f64, usize, usize, f64)> = None;
    let mut mixed = vec![0.0; n];
    for i in 0..points.len() {
        let (p1, w1, _) = &points[i];
        for j in i..points.len() {
            let (p2, w2, _) = &points[j];
            let q = if (w1 - w2).abs() < 1e-12 {
                if (w1 - target).abs() < 1e-9 {
                    1.0
                } else {
                    continue;
                }
            } else {
                (target - w2) / (w1 - w2)
            };
            if !(-1e-12..=1.0 + 1e-12).contains(&q) {
                continue;
            }
            let q = q.clamp(0.0, 1.0);
            let mut h = 0.0;
            for k in 0..n {
                let v = q * p1[k] + (1.0 - q) * p2[k];
                if v > 0.0 {
                    h -= v * v.log2();
                }
            }
            for (k, slot) in mixed.iter_mut().enumerate() {
                *slot = q * p1[k] + (1.0 - q) * p2[k];
            }
            if best.map_or(true, |(bh, ..)| h < bh) {
                best = Some((h, i, j, q));
            }
        }
    }

    let (entropy, i, j, q) = best.expect("feasible target has at least one mixture");
    let si = strategies[points[i].2].clone();
    let sj = strategies[points[j].2].clone();
    let mixture = if q >= 1.0 - 1e-12 {
        StrategyMixture::pure(si)
    } else if q <= 1e-12 {
        StrategyMixture::pure(sj)
    } else {
        StrategyMixture::new(vec![si, sj], vec![q, 1.0 - q])?
    };
    let distribution = mixture.message_distribution();
    Ok(ClassicalEntropyResult {
        entropy,
        mixture,
        distribution,
    })
}
