//! Box-constrained Nelder–Mead simplex minimizer.
//!
//! Trial points are projected onto the box. Given the same start point the
//! search is fully deterministic.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Edge length of the initial simplex, relative to the box width.
    pub initial_step: f64,
    /// Converged when the simplex diameter is below `xtol` ...
    pub xtol: f64,
    /// ... and the spread of function values is below `ftol`.
    pub ftol: f64,
    pub max_evals: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            xtol: 1e-10,
            ftol: 1e-13,
            max_evals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<const N: usize> {
    pub x: [f64; N],
    pub fx: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn minimize<const N: usize>(
    mut f: impl FnMut(&[f64; N]) -> f64,
    x0: [f64; N],
    lower: [f64; N],
    upper: [f64; N],
    opts: &Options,
) -> Minimum<N> {
    let clamp =
        |x: [f64; N]| -> [f64; N] { std::array::from_fn(|i| x[i].clamp(lower[i], upper[i])) };
    let mut evals = 0usize;
    let mut eval = |x: &[f64; N], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let start = clamp(x0);
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, eval(&start, &mut evals)));
    for i in 0..N {
        let mut x = start;
        let step = opts.initial_step * (upper[i] - lower[i]);
        // Step inward if the forward vertex would leave the box.
        x[i] = if x[i] + step <= upper[i] {
            x[i] + step
        } else {
            x[i] - step
        };
        let x = clamp(x);
        let fx = eval(&x, &mut evals);
        simplex.push((x, fx));
    }

    let mut converged = false;
    while evals < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[N].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                (0..N)
                    .map(|i| (x[i] - simplex[0].0[i]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter <= opts.xtol && (worst - best).abs() <= opts.ftol {
            converged = true;
            break;
        }

        let centroid: [f64; N] =
            std::array::from_fn(|i| simplex[..N].iter().map(|(x, _)| x[i]).sum::<f64>() / N as f64);
        let along = |t: f64| -> [f64; N] {
            clamp(std::array::from_fn(|i| {
                centroid[i] + t * (simplex[N].0[i] - centroid[i])
            }))
        };

        let xr = along(-1.0);
        let fr = eval(&xr, &mut evals);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe, &mut evals);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = along(-0.5);
            (xc, eval(&xc, &mut evals))
        } else {
            let xc = along(0.5);
            (xc, eval(&xc, &mut evals))
        };
        if fc < fr.min(worst) {
            simplex[N] = (xc, fc);
            continue;
        }
        // Shrink towards the best vertex.
        let x_best = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            let x = clamp(std::array::from_fn(|i| {
                x_best[i] + 0.5 * (v.0[i] - x_best[i])
            }));
            *v = (x, eval(&x, &mut evals));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Minimum {
        x: simplex[0].0,
        fx: simplex[0].1,
        evaluations: evals,
        converged,
    }
}
