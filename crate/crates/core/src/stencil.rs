//! Finite-difference derivatives of lattice data.
//!
//! Weights come from Fornberg's recursion, so any accuracy order works on
//! the interior and at the edges (one-sided stencils of the same order).

use crate::lattice::Lattice;
use crate::scalar::Real;

/// Default accuracy order of grid derivatives.
pub const DEFAULT_ORDER: usize = 6;

/// Weights `w[k][j]` for the `k`-th derivative at `x0` from nodes `xs`,
/// for `k = 0..=m`.
pub fn fornberg(x0: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// First window index and weights (unit spacing) for the first derivative
/// at node `i` of an `n`-node line.
fn window(i: usize, n: usize, order: usize) -> (usize, Vec<f64>) {
    let width = (order + 1).min(n);
    let half = width / 2;
    let start = i.saturating_sub(half).min(n - width);
    let xs: Vec<f64> = (start..start + width).map(|k| k as f64).collect();
    let w = fornberg(i as f64, &xs, 1);
    (start, w[1].clone())
}

/// First derivative along a uniformly spaced line with spacing `h`.
pub fn derivative<T: Real>(values: &[T], h: T, order: usize) -> Vec<T> {
    let n = values.len();
    if n < 2 || h == T::zero() {
        return vec![T::zero(); n];
    }
    (0..n)
        .map(|i| {
            let (start, w) = window(i, n, order);
            let mut acc = T::zero();
            for (k, wk) in w.iter().enumerate() {
                acc = acc + values[start + k] * T::of(*wk);
            }
            acc / h
        })
        .collect()
}

/// `d/du` of v-major lattice data.
pub fn d_du<T: Real>(data: &[T], lattice: &Lattice<T>, order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); data.len()];
    for j in 0..lattice.nv {
        let line = &data[j * lattice.nu..(j + 1) * lattice.nu];
        let d = derivative(line, lattice.hu(), order);
        out[j * lattice.nu..(j + 1) * lattice.nu].copy_from_slice(&d);
    }
    out
}

/// `d/dv` of v-major lattice data.
pub fn d_dv<T: Real>(data: &[T], lattice: &Lattice<T>, order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); data.len()];
    for i in 0..lattice.nu {
        let line: Vec<T> = (0..lattice.nv).map(|j| data[lattice.idx(i, j)]).collect();
        let d = derivative(&line, lattice.hv(), order);
        for j in 0..lattice.nv {
            out[lattice.idx(i, j)] = d[j];
        }
    }
    out
}
