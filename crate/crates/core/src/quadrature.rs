//! Line integrals: Simpson with Richardson refinement for integrands that
//! can be evaluated anywhere, Gauss-Legendre panels, and cumulative
//! integration of lattice samples.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// 3-point Gauss-Legendre nodes and weights on `[0, 1]`.
pub const GL3: ([f64; 3], [f64; 3]) = (
    [0.112_701_665_379_258_31, 0.5, 0.887_298_334_620_741_7],
    [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0],
);

/// 5-point Gauss-Legendre nodes and weights on `[0, 1]`.
pub const GL5: ([f64; 5], [f64; 5]) = (
    [
        0.046_910_077_030_668_0,
        0.230_765_344_947_158_45,
        0.5,
        0.769_234_655_052_841_6,
        0.953_089_922_969_332,
    ],
    [
        0.118_463_442_528_094_54,
        0.239_314_335_249_683_23,
        0.284_444_444_444_444_44,
        0.239_314_335_249_683_23,
        0.118_463_442_528_094_54,
    ],
);

/// `∫_a^b f` with `panels` 5-point Gauss-Legendre panels.
pub fn gauss_legendre<T: Real, F>(f: F, a: T, b: T, panels: usize) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    let h = (b - a) / T::of(panels as f64);
    let mut acc = T::zero();
    for p in 0..panels {
        let left = a + h * T::of(p as f64);
        for (x, w) in GL5.0.iter().zip(GL5.1) {
            acc = acc + f(left + h * T::of(*x))? * T::of(w);
        }
    }
    Ok(acc * h)
}

fn simpson<T: Real, F>(f: &F, a: T, b: T, n: usize) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    let h = (b - a) / T::of(n as f64);
    let mut acc = f(a)? + f(b)?;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + f(a + h * T::of(k as f64))? * T::of(w);
    }
    Ok(acc * h / T::of(3.0))
}

/// Composite Simpson with Richardson extrapolation, doubling the panel
/// count until successive extrapolants agree to `tol`.
pub fn simpson_richardson<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    if a == b {
        return Ok(T::zero());
    }
    let mut n = 8;
    let mut coarse = simpson(&f, a, b, n)?;
    let mut prev: Option<T> = None;
    for _ in 0..8 {
        n *= 2;
        let fine = simpson(&f, a, b, n)?;
        let extrapolated = fine + (fine - coarse) / T::of(15.0);
        if let Some(p) = prev {
            if (extrapolated - p).abs() <= tol * (T::one() + extrapolated.abs()) {
                return Ok(extrapolated);
            }
        }
        prev = Some(extrapolated);
        coarse = fine;
    }
    prev.ok_or(Error::InvalidInput("quadrature did not run".into()))
}

/// `∫_{t0}^{t_k} f` for every target, integrating between sorted
/// breakpoints so shared stretches are computed once.
pub fn line_integrals<T: Real, F>(f: F, t0: T, targets: &[T], tol: T) -> Result<Vec<T>>
where
    F: Fn(T) -> Result<T>,
{
    let mut out = vec![T::zero(); targets.len()];
    for forward in [true, false] {
        let mut idx: Vec<usize> = (0..targets.len())
            .filter(|&k| if forward { targets[k] > t0 } else { targets[k] < t0 })
            .collect();
        idx.sort_by(|&a, &b| {
            let (x, y) = (targets[a], targets[b]);
            let ord = x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal);
            if forward { ord } else { ord.reverse() }
        });
        let (mut at, mut acc) = (t0, T::zero());
        for k in idx {
            acc = acc + simpson_richardson(&f, at, targets[k], tol)?;
            at = targets[k];
            out[k] = acc;
        }
    }
    Ok(out)
}

/// Solve a small dense system by Gaussian elimination with partial pivoting.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap_or(c);
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Weights for `∫_{x_k}^{x_{k+1}}` over unit spacing from the nodes of a
/// `width`-point window starting at `start`.
fn interval_weights(k: usize, start: usize, width: usize) -> Vec<f64> {
    let offs: Vec<f64> = (start..start + width).map(|m| m as f64 - k as f64).collect();
    let a: Vec<Vec<f64>> = (0..width).map(|q| offs.iter().map(|x| x.powi(q as i32)).collect()).collect();
    let rhs: Vec<f64> = (0..width).map(|q| 1.0 / (q as f64 + 1.0)).collect();
    solve_dense(a, rhs)
}

/// Cumulative integral `∫_{t_base}^{t_k} f` of samples on a uniform line
/// with spacing `h`, exact for polynomials of degree `< order`.
pub fn cumulative<T: Real>(values: &[T], h: T, base: usize, order: usize) -> Vec<T> {
    let n = values.len();
    let mut out = vec![T::zero(); n];
    if n < 2 {
        return out;
    }
    let width = order.max(2).min(n);
    let piece = |k: usize| {
        let start = (k + 1).saturating_sub(width / 2).min(n - width);
        let w = interval_weights(k, start, width);
        let mut acc = T::zero();
        for (m, wm) in w.iter().enumerate() {
            acc = acc + values[start + m] * T::of(*wm);
        }
        acc * h
    };
    for k in base..n - 1 {
        out[k + 1] = out[k] + piece(k);
    }
    for k in (0..base).rev() {
        out[k] = out[k + 1] - piece(k);
    }
    out
}
