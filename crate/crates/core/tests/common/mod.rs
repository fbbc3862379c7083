#![allow(dead_code)]

use std::sync::Arc;

use canon4::catalog;
use canon4::lattice::{Lattice, Rect};
use canon4::surface::{Chart, Orientation, Surface};
use canon4::Vec4;

pub fn chart(name: &str) -> Chart<f64> {
    catalog::surface(name).unwrap().chart().unwrap()
}

pub fn arc_chart(name: &str) -> Arc<Chart<f64>> {
    Arc::new(chart(name))
}

pub fn square(n: usize, a: f64, b: f64) -> Lattice<f64> {
    Lattice::new(n, n, Rect::new(a, b, a, b)).unwrap()
}

pub fn positions<S: Surface<f64>>(s: &S, l: &Lattice<f64>) -> Vec<Vec4<f64>> {
    l.points().into_iter().map(|(u, v)| s.eval(u, v).unwrap()).collect()
}

/// The closed-form surface of Example 1.
pub fn example1_point(u: f64, v: f64) -> Vec4<f64> {
    Vec4::new(u.sin() * v.cos(), u.cos() * v.sin(), 1.0 - u.cos() * v.cos(), u.sin() * v.sin())
}

pub fn example1_grid(l: &Lattice<f64>) -> Vec<Vec4<f64>> {
    l.points().into_iter().map(|(u, v)| example1_point(u, v)).collect()
}

/// The quoted orthogonal matrix carrying the small torus onto Example 1, rows over √2.
pub fn quoted_motion_matrix() -> [[f64; 4]; 4] {
    let s = 1.0 / 2f64.sqrt();
    [[0.0, s, s, 0.0], [0.0, s, -s, 0.0], [-s, 0.0, 0.0, -s], [-s, 0.0, 0.0, s]]
}

pub fn apply(q: &[[f64; 4]; 4], t: &Vec4<f64>, p: &Vec4<f64>) -> Vec4<f64> {
    Vec4(std::array::from_fn(|a| t[a] + (0..4).map(|b| q[a][b] * p[b]).sum::<f64>()))
}

pub fn rms(a: &[Vec4<f64>], b: &[Vec4<f64>]) -> f64 {
    (a.iter().zip(b).map(|(p, q)| (*p - *q).norm_sq()).sum::<f64>() / a.len() as f64).sqrt()
}

pub fn max_abs(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn positive(coords: [&str; 4], domain: Rect<f64>) -> Chart<f64> {
    Chart::parse(coords, domain, Orientation::Positive).unwrap()
}
