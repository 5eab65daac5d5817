//! Presentations of `A` and of its truncations `eAe` by generators.
//!
//! The full algebra is generated by arrows. A truncation `e_V A e_V` is
//! generated degree by degree: a generator of degree `d` at `v` is a path
//! class `v → w` (with `w ∈ V`) outside the span of products of generators of
//! lower degree.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::local::LocalAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Subspace, Vector};

#[derive(Clone, Debug, PartialEq)]
pub enum GenKind<F: Field> {
    Arrow(usize),
    /// An element of `e_src A e_tgt`.
    Element(Vector<F>),
}

#[derive(Clone, Debug)]
pub struct Gen<F: Field> {
    pub src: usize,
    pub tgt: usize,
    pub degree: usize,
    pub kind: GenKind<F>,
}

/// `A` or `e_V A e_V` together with a generating set.
#[derive(Clone, Debug)]
pub struct Truncation<'a, F: Field> {
    pub alg: &'a LocalAlgebra<F>,
    /// `V`; for the full algebra, every vertex whose arrows are known.
    pub vertices: BTreeSet<usize>,
    pub gens: Vec<Gen<F>>,
    out: BTreeMap<usize, Vec<usize>>,
    truncated: bool,
}

impl<'a, F: Field> Truncation<'a, F> {
    /// The algebra `A` itself near the computed region, generated by arrows.
    pub fn full(alg: &'a LocalAlgebra<F>) -> Self {
        let q = &alg.quiver;
        let vertices: BTreeSet<usize> = (0..q.nverts()).filter(|&v| q.arrows_known[v]).collect();
        let mut gens = Vec::new();
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            // targets with unknown arrows are kept so that modules reaching
            // them are rejected rather than silently cut off
            if vertices.contains(&s) {
                out.entry(s).or_default().push(gens.len());
                gens.push(Gen { src: s, tgt: t, degree: 1, kind: GenKind::Arrow(a) });
            }
        }
        Self { alg, vertices, gens, out, truncated: false }
    }

    /// `e_V A e_V`; every vertex of `V` must be a computed source.
    pub fn new(alg: &'a LocalAlgebra<F>, v: impl IntoIterator<Item = usize>) -> Result<Self> {
        let f = &alg.field;
        let vertices: BTreeSet<usize> = v.into_iter().collect();
        if let Some(&x) = vertices.iter().find(|&&x| !alg.has_source(x)) {
            return Err(Error::UnknownVertex(format!("{}", alg.quiver.points[x])));
        }
        let mut gens: Vec<Gen<F>> = Vec::new();
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &vertices {
            let elems = alg.elems(v);
            let dim = elems.len();
            let top = alg.max_degree(v);
            let mut mine: Vec<usize> = Vec::new();
            for d in 1..=top {
                let mut span = Subspace::<F>::new(dim);
                for &g in &mine {
                    let gen = &gens[g];
                    let GenKind::Element(gv) = &gen.kind else { unreachable!() };
                    for (j, e) in alg.elems(gen.tgt).iter().enumerate() {
                        if e.degree + gen.degree == d && vertices.contains(&e.target) {
                            let p = alg.mul(v, gv, gen.tgt, &alg.basis_vector(gen.tgt, j));
                            span.insert(f, p);
                        }
                    }
                }
                for (i, e) in elems.iter().enumerate() {
                    if e.degree != d || !vertices.contains(&e.target) {
                        continue;
                    }
                    let u = alg.basis_vector(v, i);
                    if span.insert(f, u.clone()) {
                        mine.push(gens.len());
                        gens.push(Gen { src: v, tgt: e.target, degree: d, kind: GenKind::Element(u) });
                    }
                }
            }
            out.insert(v, mine);
        }
        Ok(Self { alg, vertices, gens, out, truncated: true })
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn field(&self) -> &F {
        &self.alg.field
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Generators starting at `v`.
    pub fn gens_from(&self, v: usize) -> &[usize] {
        self.out.get(&v).map(|g| g.as_slice()).unwrap_or(&[])
    }

    /// Degree-2 generators from a vertex to itself.
    pub fn loops(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for g in &self.gens {
            if g.src == g.tgt && g.degree == 2 {
                *m.entry(g.src).or_insert(0) += 1;
            }
        }
        m
    }

    /// `v·g` for `v ∈ e_x A`.
    pub fn act(&self, x: usize, v: &[F::Elem], g: usize) -> Vector<F> {
        let gen = &self.gens[g];
        match &gen.kind {
            GenKind::Arrow(a) => self.alg.mul_arrow(x, v, *a),
            GenKind::Element(w) => self.alg.mul(x, v, gen.src, w),
        }
    }

    /// Zeroes the coordinates of `v ∈ e_x A` at targets outside the
    /// truncation; errors for the full algebra if such coordinates are
    /// nonzero.
    pub fn restrict(&self, x: usize, v: &mut [F::Elem]) -> Result<()> {
        let f = self.field();
        for (c, e) in v.iter_mut().zip(self.alg.elems(x)) {
            if !self.vertices.contains(&e.target) && !f.is_zero(c) {
                if self.truncated {
                    *c = f.zero();
                } else {
                    return Err(Error::Module(format!(
                        "element of e_{}A reaches {} where arrows are unknown",
                        self.alg.quiver.points[x], self.alg.quiver.points[e.target]
                    )));
                }
            }
        }
        Ok(())
    }
}
