//! Vectors in R^4 over any [`Number`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::Number;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec4<N>(pub [N; 4]);

impl<N: Number> Vec4<N> {
    pub fn new(a: N, b: N, c: N, d: N) -> Self {
        Vec4([a, b, c, d])
    }

    pub fn zero() -> Self {
        Vec4([N::zero(); 4])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(i: usize) -> Self {
        let mut e = Self::zero();
        e.0[i] = N::one();
        e
    }

    pub fn map<M, F: Fn(N) -> M>(self, f: F) -> Vec4<M> {
        Vec4(self.0.map(f))
    }

    pub fn dot(&self, o: &Self) -> N {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2] + self.0[3] * o.0[3]
    }

    pub fn norm_sq(&self) -> N {
        self.dot(self)
    }

    pub fn norm(&self) -> N {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: N) -> Self {
        self.map(|x| x * s)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        self.map(|x| x / n)
    }

    pub fn values(&self) -> Vec4<N::Scalar> {
        self.map(|x| x.value())
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().all(|x| x.all_finite())
    }
}

impl<N: Number> Add for Vec4<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec4([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl<N: Number> Sub for Vec4<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec4([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2], self.0[3] - o.0[3]])
    }
}

impl<N: Number> Neg for Vec4<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<N: Number> Mul<N> for Vec4<N> {
    type Output = Self;
    fn mul(self, s: N) -> Self {
        self.scale(s)
    }
}

impl<N> Index<usize> for Vec4<N> {
    type Output = N;
    fn index(&self, i: usize) -> &N {
        &self.0[i]
    }
}

impl<N> IndexMut<usize> for Vec4<N> {
    fn index_mut(&mut self, i: usize) -> &mut N {
        &mut self.0[i]
    }
}

fn det3<N: Number>(m: [[N; 3]; 3]) -> N {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the matrix with rows `a, b, c, d`.
pub fn det4<N: Number>(a: &Vec4<N>, b: &Vec4<N>, c: &Vec4<N>, d: &Vec4<N>) -> N {
    cross(a, b, c).dot(d)
}

/// Generalized cross product: the vector `w` with `det[a b c w] = |w|^2`
/// and `w` orthogonal to `a`, `b`, `c`.
pub fn cross<N: Number>(a: &Vec4<N>, b: &Vec4<N>, c: &Vec4<N>) -> Vec4<N> {
    let rows = [a, b, c];
    let minor = |skip: usize| {
        let mut m = [[N::zero(); 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let mut k = 0;
            for col in 0..4 {
                if col != skip {
                    m[r][k] = row.0[col];
                    k += 1;
                }
            }
        }
        det3(m)
    };
    // Cofactor expansion of det[a b c e_i] along the last row.
    Vec4([-minor(0), minor(1), -minor(2), minor(3)])
}
