//! `B_i`: the rhombal relations imposed on the truncated quiver `Q_i`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::bound::BoundQuiver;
use super::local::LocalAlgebra;
use super::signs::SignScheme;
use super::truncation::Truncation;
use super::validate::x_dim;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::modcalc::Modules;
use crate::quiver::{classify_vertices, Quiver, VertexClass};
use crate::tiling::padded_to_radius;

/// Paths longer than this are expected to vanish in `B_i`; building fails
/// otherwise.
pub const B_MAX_DEGREE: usize = 8;

#[derive(Clone, Debug)]
pub struct RelationTruncated<F: Field> {
    pub level: usize,
    /// `Q_i`; vertex indices of `alg` refer to it.
    pub qi: Quiver,
    pub classes: Vec<VertexClass>,
    pub alg: LocalAlgebra<F>,
}

impl<F: Field> RelationTruncated<F> {
    pub fn build(field: F, level: usize, signs: SignScheme, tile_budget: usize) -> Result<Self> {
        let padded = padded_to_radius(level, 1, 10, tile_budget)?;
        let full = Quiver::from_patch(&padded.padded);
        let qi = Quiver::from_patch(&padded.base);
        let cls = classify_vertices(&qi, &padded);
        let classes = qi.vertices.iter().map(|p| cls[p]).collect();
        let bq = BoundQuiver::restricted(&qi, &full, signs);
        let n = qi.vertices.len();
        let alg = LocalAlgebra::build(field, bq, 0..n, B_MAX_DEGREE)?;
        Ok(Self { level, qi, classes, alg })
    }

    pub fn x_dim(&self, z: usize) -> usize {
        x_dim(&self.alg, z)
    }

    /// `dim X_z` grouped by `(k, n)`; every vertex of a class must agree.
    pub fn x_dims_by_class(&self) -> BTreeMap<(u8, u8), Vec<usize>> {
        let mut out: BTreeMap<(u8, u8), Vec<usize>> = BTreeMap::new();
        for (z, c) in self.classes.iter().enumerate() {
            let e = out.entry((c.k, c.n)).or_default();
            let d = self.x_dim(z);
            if !e.contains(&d) {
                e.push(d);
            }
        }
        out
    }
}

/// The projective `P'_z = e_z B_i` at a `(2,5)`-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSymmetryReport {
    pub z: usize,
    pub dim: usize,
    pub loewy_length: usize,
    pub top: BTreeMap<usize, usize>,
    pub socle: BTreeMap<usize, usize>,
    /// The length-two path `z → x → y` across the one rhombus at `z`.
    pub corner_path_nonzero: bool,
    /// That path times every arrow leaving `y` is zero.
    pub corner_path_in_socle: bool,
    /// Every `e_x B_i` has simple socle and `x ↦ soc` is a bijection.
    pub self_injective: bool,
}

impl NonSymmetryReport {
    pub fn socle_is_top(&self) -> bool {
        self.socle == self.top
    }

    pub fn ok(&self) -> bool {
        self.corner_path_nonzero && self.corner_path_in_socle && self.loewy_length <= 3 && !self.socle_is_top()
    }
}

pub fn check_not_symmetric<F: Field>(b: &RelationTruncated<F>) -> Result<NonSymmetryReport> {
    let q = &b.qi;
    let z = (0..q.vertices.len())
        .find(|&v| b.classes[v].k == 2 && b.classes[v].n == 5)
        .ok_or_else(|| Error::Algebra("no (2,5)-vertex".into()))?;
    let face = &q.faces[q.faces_at[z][0]];
    let y = face.opposite(z).unwrap();
    let x = face.corners.iter().copied().find(|&c| c != z && c != y).unwrap();
    let alg = &b.alg;
    let f = &alg.field;
    let path = [q.arrow(z, x).unwrap(), q.arrow(x, y).unwrap()];
    let p = alg.path_element(z, &path);
    let corner_path_nonzero = !crate::linalg::is_zero_vec(f, &p);
    let corner_path_in_socle =
        alg.quiver.out[y].iter().all(|&a| crate::linalg::is_zero_vec(f, &alg.mul_arrow(z, &p, a)));

    let t = Truncation::full(alg);
    let mods = Modules::new(&t, crate::modcalc::DEFAULT_SEED);
    let pz = mods.projective(z)?;
    let rep = &pz.rep;
    let mut socle_map = BTreeMap::new();
    let mut self_injective = true;
    for v in 0..q.vertices.len() {
        let s = mods.projective(v)?.rep.socle_dims(&t);
        let simple = s.values().sum::<usize>() == 1;
        match s.keys().next() {
            Some(&w) if simple => {
                if socle_map.insert(w, v).is_some() {
                    self_injective = false;
                }
            }
            _ => self_injective = false,
        }
    }
    Ok(NonSymmetryReport {
        z,
        dim: rep.dim(),
        loewy_length: rep.loewy_length(&t),
        top: rep.top_dims(&t),
        socle: rep.socle_dims(&t),
        corner_path_nonzero,
        corner_path_in_socle,
        self_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::tiling::DEFAULT_TILE_BUDGET;

    fn build(level: usize) -> RelationTruncated<PrimeField> {
        RelationTruncated::build(PrimeField::new(5).unwrap(), level, SignScheme::Parity, DEFAULT_TILE_BUDGET).unwrap()
    }

    #[test]
    fn b1_is_not_symmetric() {
        let b = build(1);
        let r = check_not_symmetric(&b).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.top, BTreeMap::from([(r.z, 1)]));
        assert_eq!(r.loewy_length, 3);
        assert_eq!(r.socle.values().sum::<usize>(), 1);
        assert!(!r.self_injective);
    }

    #[test]
    fn x_dims_in_b() {
        for level in 1..=4 {
            let dims = build(level).x_dims_by_class();
            for (&(k, n), ds) in &dims {
                // only the present arrows contribute; the star relations leave k − 2
                assert_eq!(ds, &[k as usize - 2], "level {level} ({k},{n})");
            }
        }
        let one = build(1).x_dims_by_class();
        assert_eq!(one[&(2, 5)], [0]);
        assert_eq!(one[&(3, 6)], [1]);
        assert_eq!(one[&(3, 4)], [1]);
    }
}
