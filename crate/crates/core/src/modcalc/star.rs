//! Labelling of the star around a vertex.
//!
//! `x_1, …, x_n` are the neighbours of `z` in counterclockwise order, `y_i`
//! is the corner opposite `z` of the rhombus spanned by `x_i` and
//! `x_{i+1}`. Arrows: `b_i: z → x_i`, `d_i: x_i → y_i`, `c_i: x_{i+1} → y_i`,
//! and bars for the reverses. Indices are taken modulo `n`, starting at 1.

use alloc::vec::Vec;

use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub z: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Angle at `z` (1 acute, 2 obtuse) of the rhombus at `y_i`.
    pub angle: Vec<u8>,
}

impl Star {
    /// The star at a vertex with complete neighbourhood, with `x_1` the
    /// `rotation`-th neighbour.
    pub fn new(q: &Quiver, z: usize, rotation: usize) -> Option<Self> {
        if !q.is_complete(z) {
            return None;
        }
        let mut x = q.ccw_neighbours(z);
        let n = x.len();
        x.rotate_left(rotation % n);
        let mut y = Vec::with_capacity(n);
        let mut angle = Vec::with_capacity(n);
        for i in 0..n {
            let face = q.common_face(x[i], z, x[(i + 1) % n])?;
            y.push(face.opposite(z)?);
            angle.push(face.angle_at(z)?);
        }
        Some(Self { z, x, y, angle })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn xi(&self, i: usize) -> usize {
        self.x[(i + self.n() - 1) % self.n()]
    }

    pub fn yi(&self, i: usize) -> usize {
        self.y[(i + self.n() - 1) % self.n()]
    }

    pub fn angle_i(&self, i: usize) -> u8 {
        self.angle[(i + self.n() - 1) % self.n()]
    }
}
