//! Rectangular (u, v) lattices and values sampled on them.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed parameter rectangle `[u_min, u_max] x [v_min, v_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect<T> {
    pub u_min: T,
    pub u_max: T,
    pub v_min: T,
    pub v_max: T,
}

impl<T: Real> Rect<T> {
    pub fn new(u_min: T, u_max: T, v_min: T, v_max: T) -> Self {
        Rect { u_min, u_max, v_min, v_max }
    }

    pub fn contains(&self, u: T, v: T) -> bool {
        let slack = T::of(1e-12);
        u >= self.u_min - slack && u <= self.u_max + slack && v >= self.v_min - slack && v <= self.v_max + slack
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.u_min, self.u_max, self.v_min, self.v_max].iter().all(|x| x.is_finite())
            && self.u_min <= self.u_max
            && self.v_min <= self.v_max;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("bounds must be finite with min <= max".into()))
        }
    }
}

/// `nu x nv` evenly spaced nodes over a rectangle. Node `(i, j)` sits at
/// `(u_i, v_j)`; storage is v-major: index `j * nu + i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice<T> {
    pub nu: usize,
    pub nv: usize,
    pub bounds: Rect<T>,
}

impl<T: Real> Lattice<T> {
    pub fn new(nu: usize, nv: usize, bounds: Rect<T>) -> Result<Self> {
        if nu == 0 || nv == 0 {
            return Err(Error::InvalidInput("lattice needs at least one node per direction".into()));
        }
        bounds.validate()?;
        Ok(Lattice { nu, nv, bounds })
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hu(&self) -> T {
        step(self.bounds.u_min, self.bounds.u_max, self.nu)
    }

    pub fn hv(&self) -> T {
        step(self.bounds.v_min, self.bounds.v_max, self.nv)
    }

    pub fn u(&self, i: usize) -> T {
        node(self.bounds.u_min, self.bounds.u_max, self.nu, i)
    }

    pub fn v(&self, j: usize) -> T {
        node(self.bounds.v_min, self.bounds.v_max, self.nv, j)
    }

    pub fn us(&self) -> Vec<T> {
        (0..self.nu).map(|i| self.u(i)).collect()
    }

    pub fn vs(&self) -> Vec<T> {
        (0..self.nv).map(|j| self.v(j)).collect()
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    /// `(i, j)` of a storage index.
    pub fn ij(&self, k: usize) -> (usize, usize) {
        (k % self.nu, k / self.nu)
    }

    /// All nodes in storage order.
    pub fn points(&self) -> Vec<(T, T)> {
        (0..self.len()).map(|k| {
            let (i, j) = self.ij(k);
            (self.u(i), self.v(j))
        })
        .collect()
    }

    /// Indices of the node at `(u0, v0)`; the point must be a node.
    pub fn node_of(&self, u0: T, v0: T) -> Result<(usize, usize)> {
        let find = |x: T, n: usize, at: &dyn Fn(usize) -> T, h: T| -> Option<usize> {
            (0..n).find(|&i| (at(i) - x).abs() <= T::of(1e-9) * (T::one() + h.abs()))
        };
        let i = find(u0, self.nu, &|i| self.u(i), self.hu());
        let j = find(v0, self.nv, &|j| self.v(j), self.hv());
        match (i, j) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(Error::InvalidInput(format!(
                "base point ({u0}, {v0}) is not a lattice node"
            ))),
        }
    }

    /// The same lattice restricted to nodes `i0..=i1`, `j0..=j1`.
    pub fn sub(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> Lattice<T> {
        Lattice {
            nu: i1 - i0 + 1,
            nv: j1 - j0 + 1,
            bounds: Rect::new(self.u(i0), self.u(i1), self.v(j0), self.v(j1)),
        }
    }
}

fn step<T: Real>(a: T, b: T, n: usize) -> T {
    if n < 2 {
        T::zero()
    } else {
        (b - a) / T::of((n - 1) as f64)
    }
}

fn node<T: Real>(a: T, b: T, n: usize, i: usize) -> T {
    if n < 2 {
        a
    } else if i + 1 == n {
        b
    } else {
        a + (b - a) * T::of(i as f64) / T::of((n - 1) as f64)
    }
}

/// Values attached to every node of a lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T, V> {
    pub lattice: Lattice<T>,
    pub data: Vec<V>,
}

impl<T: Real, V> Grid<T, V> {
    pub fn at(&self, i: usize, j: usize) -> &V {
        &self.data[self.lattice.idx(i, j)]
    }

    pub fn map<W, F: Fn(&V) -> W>(&self, f: F) -> Grid<T, W> {
        Grid { lattice: self.lattice, data: self.data.iter().map(f).collect() }
    }
}

/// Row `j` of a v-major array, i.e. the values along `u` at `v_j`.
pub fn row<V: Copy>(data: &[V], nu: usize, j: usize) -> Vec<V> {
    data[j * nu..(j + 1) * nu].to_vec()
}

/// Values along `v` at `u_i`.
pub fn column<V: Copy>(data: &[V], nu: usize, nv: usize, i: usize) -> Vec<V> {
    (0..nv).map(|j| data[j * nu + i]).collect()
}
