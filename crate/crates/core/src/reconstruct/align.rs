//! Least-squares rigid alignment of point clouds in R⁴.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec4::Vec4;

/// `p ↦ Q p + t` with the fit quality that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigidMotion<T> {
    /// Row-major orthogonal matrix.
    pub q: [[T; 4]; 4],
    pub t: Vec4<T>,
    pub rms: T,
    pub det: T,
    /// True when `det Q = -1`.
    pub reflection: bool,
}

impl<T: Real> RigidMotion<T> {
    pub fn identity() -> Self {
        let q = std::array::from_fn(|a| std::array::from_fn(|b| if a == b { T::one() } else { T::zero() }));
        RigidMotion { q, t: Vec4::zero(), rms: T::zero(), det: T::one(), reflection: false }
    }

    pub fn apply(&self, p: &Vec4<T>) -> Vec4<T> {
        Vec4(std::array::from_fn(|a| (0..4).fold(self.t[a], |s, b| s + self.q[a][b] * p[b])))
    }

    /// Largest entry of `QᵀQ - I`.
    pub fn orthogonality_error(&self) -> T {
        let mut worst = T::zero();
        for a in 0..4 {
            for b in 0..4 {
                let s = (0..4).fold(T::zero(), |s, k| s + self.q[k][a] * self.q[k][b]);
                let id = if a == b { T::one() } else { T::zero() };
                worst = worst.max((s - id).abs());
            }
        }
        worst
    }

    /// Root-mean-square of `|Q a + t - b|`.
    pub fn rms_between(&self, a: &[Vec4<T>], b: &[Vec4<T>]) -> T {
        let s = a.iter().zip(b).fold(0.0, |s, (p, q)| s + (self.apply(p) - *q).norm_sq().as_f64());
        T::of((s / a.len().max(1) as f64).sqrt())
    }
}

fn to_na<T: Real>(p: &Vec4<T>) -> Vector4<f64> {
    Vector4::new(p[0].as_f64(), p[1].as_f64(), p[2].as_f64(), p[3].as_f64())
}

/// `Q`, `t` minimizing `Σ |Q aᵢ + t - bᵢ|²` over all orthogonal `Q`.
/// The optimum may be a reflection; it is flagged, not suppressed.
pub fn align_rigid<T: Real>(a: &[Vec4<T>], b: &[Vec4<T>]) -> Result<RigidMotion<T>> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch(format!("{} points against {}", a.len(), b.len())));
    }
    let n = a.len();
    if n < 5 {
        return Err(Error::RankDeficient { rank: n.saturating_sub(1).min(4) });
    }
    if a.iter().chain(b).any(|p| !p.all_finite()) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    let ca = a.iter().map(to_na).sum::<Vector4<f64>>() / n as f64;
    let cb = b.iter().map(to_na).sum::<Vector4<f64>>() / n as f64;
    let mut h = Matrix4::<f64>::zeros();
    let mut spread = Matrix4::<f64>::zeros();
    for (p, q) in a.iter().zip(b) {
        let (x, y) = (to_na(p) - ca, to_na(q) - cb);
        h += x * y.transpose();
        spread += x * x.transpose();
    }
    let sv = spread.symmetric_eigenvalues();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > 1e-20 + 1e-12 * top).count();
    if rank < 2 {
        return Err(Error::RankDeficient { rank });
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let q = vt.transpose() * u.transpose();
    let t = cb - q * ca;
    let det = q.determinant();
    let mut motion = RigidMotion {
        q: std::array::from_fn(|r| std::array::from_fn(|c| T::of(q[(r, c)]))),
        t: Vec4::new(T::of(t[0]), T::of(t[1]), T::of(t[2]), T::of(t[3])),
        rms: T::zero(),
        det: T::of(det),
        reflection: det < 0.0,
    };
    motion.rms = motion.rms_between(a, b);
    Ok(motion)
}
