//! Derivative-free minimization: a deterministic Nelder-Mead simplex
//! search shared by the quantum-entropy optimizer and the tomography
//! likelihood fit.

/// Nelder-Mead options.
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Maximum number of objective evaluations.
    pub max_evals: usize,
    /// Stop once the simplex function spread falls below this.
    pub ftol: f64,
    /// Stop once the simplex diameter falls below this.
    pub xtol: f64,
    /// Initial simplex step along each coordinate.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evals: 20_000,
            ftol: 1e-12,
            xtol: 1e-10,
            initial_step: 0.1,
        }
    }
}

/// Result of a simplex search.
#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    /// Objective evaluations spent (determinism diagnostic).
    #[allow(dead_code)]
    pub evals: usize,
}

/// Minimizes `f` starting from `x0` with the standard Nelder-Mead
/// coefficients (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Fully deterministic: ties in the vertex ordering are broken by index.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> NelderMeadResult {
    let n = x0.len();
    assert!(n > 0, "cannot optimize over zero parameters");
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    // initial simplex: x0 plus a step along each coordinate
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += if v[i].abs() > 1e-12 {
            opts.initial_step * v[i].abs()
        } else {
            opts.initial_step
        };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let mut order: Vec<usize> = (0..=n).collect();
    loop {
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap().then(a.cmp(&b)));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        let spread = values[worst] - values[best];
        let diam = simplex
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if evals >= opts.max_evals || (spread.abs() < opts.ftol && diam < opts.xtol) {
            return NelderMeadResult {
                x: simplex[best].clone(),
                f: values[best],
                evals,
            };
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![0.0; n];
        for &i in order.iter().take(n) {
            for (c, v) in centroid.iter_mut().zip(&simplex[i]) {
                *c += v / n as f64;
            }
        }

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| 2.0 * c - w)
            .collect();
        let fr = eval(&reflect, &mut evals);

        if fr < values[best] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| 3.0 * c - 2.0 * w)
                .collect();
            let fe = eval(&expand, &mut evals);
            if fe < fr {
                simplex[worst] = expand;
                values[worst] = fe;
            } else {
                simplex[worst] = reflect;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = fr;
        } else {
            // contract towards the better of worst/reflected
            let worst_point = simplex[worst].clone();
            let (anchor, fa) = if fr < values[worst] {
                (&reflect, fr)
            } else {
                (&worst_point, values[worst])
            };
            let contract: Vec<f64> = centroid
                .iter()
                .zip(anchor)
                .map(|(c, a)| 0.5 * (c + a))
                .collect();
            let fc = eval(&contract, &mut evals);
            if fc < fa {
                simplex[worst] = contract;
                values[worst] = fc;
            } else {
                // shrink everything towards the best vertex
                let anchor = simplex[best].clone();
                for &i in order.iter().skip(1) {
                    for (v, a) in simplex[i].iter_mut().zip(&anchor) {
                        *v = a + 0.5 * (*v - a);
                    }
                    values[i] = eval(&simplex[i].clone(), &mut evals);
                }
            }
        }
    }
}
