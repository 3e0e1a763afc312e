//! Small unconstrained optimizers for the canonical-form and witness searches.
//!
//! [`nelder_mead`] does the derivative-free global-ish search from a random
//! start; [`levenberg_marquardt`] then polishes a least-squares residual to
//! machine precision, which the simplex method alone cannot reach in
//! reasonable time.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadConfig {
    pub max_iter: usize,
    /// Stop when the spread of simplex values falls below this.
    pub f_tol: f64,
    pub initial_step: f64,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            max_iter: 20_000,
            f_tol: 1e-12,
            initial_step: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder–Mead with dimension-adaptive coefficients.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], cfg: NelderMeadConfig) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let d = dim as f64;
    let (reflect, expand) = (1.0, 1.0 + 2.0 / d);
    let (contract, shrink) = (0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += cfg.initial_step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let point = |centroid: &[f64], worst: &[f64], t: f64| -> Vec<f64> {
        centroid.iter().zip(worst).map(|(c, w)| c + t * (c - w)).collect()
    };

    let mut iterations = 0;
    while iterations < cfg.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[dim].1 - simplex[0].1 <= cfg.f_tol {
            break;
        }
        iterations += 1;
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d;
            }
        }
        let worst = simplex[dim].0.clone();
        let xr = point(&centroid, &worst, reflect);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = point(&centroid, &worst, reflect * expand);
            let fe = f(&xe);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[dim].1 {
            let xc = point(&centroid, &worst, reflect * contract);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = point(&centroid, &worst, -contract);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < simplex[dim].1.min(fr) {
            simplex[dim] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, fx) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + shrink * (*xi - bi);
            }
            *fx = f(x);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations }
}

/// Damped Gauss–Newton on `‖r(x)‖²` with a central-difference Jacobian.
///
/// `value` in the result is `‖r(x)‖²`.
pub fn levenberg_marquardt<R>(mut residual: R, x0: &[f64], max_iter: usize) -> Minimum
where
    R: FnMut(&[f64]) -> Vec<f64>,
{
    const H: f64 = 1e-6;
    let dim = x0.len();
    let sq = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = x0.to_vec();
    let mut r = residual(&x);
    let mut cost = sq(&r);
    let mut mu = 1e-3;
    let mut iterations = 0;
    while iterations < max_iter && cost > 1e-32 {
        iterations += 1;
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, dim);
        for j in 0..dim {
            let orig = x[j];
            x[j] = orig + H;
            let rp = residual(&x);
            x[j] = orig - H;
            let rm = residual(&x);
            x[j] = orig;
            for i in 0..m {
                jac[(i, j)] = (rp[i] - rm[i]) / (2.0 * H);
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let grad = &jt * DVector::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for k in 0..dim {
                a[(k, k)] += mu * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&grad))) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rt = residual(&trial);
            let ct = sq(&rt);
            if ct < cost {
                let rel = (cost - ct) / cost.max(f64::MIN_POSITIVE);
                x = trial;
                r = rt;
                cost = ct;
                mu = (mu / 3.0).max(1e-12);
                improved = rel > 1e-14 || cost < 1e-32;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Minimum {
        x,
        value: cost,
        iterations,
    }
}
