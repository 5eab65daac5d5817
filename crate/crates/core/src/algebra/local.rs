//! Graded bases of the projectives `e_x A` of a quiver with relations.
//!
//! For a source `x` the degree-`d` part is computed as
//! `A_d = (A_{d−1} ⊗ arrows) / (A_{d−2} ⊗ relations)`, one target vertex at a
//! time. Basis elements are path classes; each carries a representative path
//! and a table of right products with arrows.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::bound::BoundQuiver;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, is_zero_vec, zero_vec, Subspace, Vector};

/// Per element, `(arrow, product)` pairs; products are sparse `(index, coefficient)` lists.
type RightAction<E> = Vec<Vec<(usize, Vec<(usize, E)>)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub target: usize,
    pub degree: usize,
    /// Representative path (arrow indices), empty for the idempotent.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Source<F: Field> {
    elems: Vec<BasisElem>,
    /// `right[i]`: products of element `i` with arrows leaving its target.
    right: RightAction<F::Elem>,
}

#[derive(Clone, Debug)]
pub struct LocalAlgebra<F: Field> {
    pub field: F,
    pub quiver: BoundQuiver,
    sources: BTreeMap<usize, Source<F>>,
}

impl<F: Field> LocalAlgebra<F> {
    /// Computes `e_x A` for every listed source. Fails if some degree
    /// `> max_degree` is nonzero or the relations needed are unknown.
    pub fn build(
        field: F,
        quiver: BoundQuiver,
        sources: impl IntoIterator<Item = usize>,
        max_degree: usize,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for x in sources {
            let s = build_source(&field, &quiver, x, max_degree)?;
            out.insert(x, s);
        }
        Ok(Self { field, quiver, sources: out })
    }

    pub fn has_source(&self, x: usize) -> bool {
        self.sources.contains_key(&x)
    }

    pub fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.sources.keys().copied()
    }

    fn src(&self, x: usize) -> &Source<F> {
        self.sources.get(&x).unwrap_or_else(|| panic!("e_{x}A not computed"))
    }

    pub fn dim(&self, x: usize) -> usize {
        self.src(x).elems.len()
    }

    pub fn elems(&self, x: usize) -> &[BasisElem] {
        &self.src(x).elems
    }

    pub fn max_degree(&self, x: usize) -> usize {
        self.elems(x).iter().map(|e| e.degree).max().unwrap_or(0)
    }

    /// `dim e_x A_d e_y` for all `(y, d)`.
    pub fn component_dims(&self, x: usize) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for e in self.elems(x) {
            *m.entry((e.target, e.degree)).or_insert(0) += 1;
        }
        m
    }

    /// `dim e_x A e_y`
    pub fn block_dim(&self, x: usize, y: usize) -> usize {
        self.elems(x).iter().filter(|e| e.target == y).count()
    }

    pub fn idempotent(&self, x: usize) -> Vector<F> {
        let mut v = zero_vec(&self.field, self.dim(x));
        v[0] = self.field.one();
        v
    }

    pub fn basis_vector(&self, x: usize, i: usize) -> Vector<F> {
        let mut v = zero_vec(&self.field, self.dim(x));
        v[i] = self.field.one();
        v
    }

    /// `v·a` for `v ∈ e_x A`.
    pub fn mul_arrow(&self, x: usize, v: &[F::Elem], a: usize) -> Vector<F> {
        let f = &self.field;
        let s = self.src(x);
        let mut out = zero_vec(f, s.elems.len());
        let from = self.quiver.source(a);
        for (i, c) in v.iter().enumerate() {
            if f.is_zero(c) || s.elems[i].target != from {
                continue;
            }
            if let Some((_, prod)) = s.right[i].iter().find(|(b, _)| *b == a) {
                for (j, d) in prod {
                    f.add_mul_assign(&mut out[*j], c, d);
                }
            }
        }
        out
    }

    /// `v·e_y·path` for `v ∈ e_x A` and a path starting at `y`.
    pub fn mul_path(&self, x: usize, v: &[F::Elem], y: usize, path: &[usize]) -> Vector<F> {
        let f = &self.field;
        let s = self.src(x);
        let mut w: Vector<F> =
            v.iter().zip(&s.elems).map(|(c, e)| if e.target == y { c.clone() } else { f.zero() }).collect();
        for &a in path {
            if is_zero_vec(f, &w) {
                break;
            }
            w = self.mul_arrow(x, &w, a);
        }
        w
    }

    /// `v·w` for `v ∈ e_x A` and `w ∈ e_y A`.
    pub fn mul(&self, x: usize, v: &[F::Elem], y: usize, w: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vec(f, self.dim(x));
        for (j, c) in w.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let p = self.mul_path(x, v, y, &self.elems(y)[j].path);
            axpy(f, &mut out, c, &p);
        }
        out
    }

    /// The class of a path starting at `x`.
    pub fn path_element(&self, x: usize, path: &[usize]) -> Vector<F> {
        let e = self.idempotent(x);
        self.mul_path(x, &e, x, path)
    }

    /// Class of an arbitrary vertex walk `x = v_0, v_1, …` (zero if some step
    /// is not an arrow).
    pub fn walk_element(&self, walk: &[usize]) -> Option<Vector<F>> {
        let x = walk[0];
        let mut path = Vec::new();
        for w in walk.windows(2) {
            let a = self.quiver.out[w[0]].iter().copied().find(|&a| self.quiver.target(a) == w[1])?;
            path.push(a);
        }
        Some(self.path_element(x, &path))
    }
}

fn build_source<F: Field>(f: &F, q: &BoundQuiver, x: usize, max_degree: usize) -> Result<Source<F>> {
    let mut elems = alloc::vec![BasisElem { target: x, degree: 0, path: Vec::new() }];
    let mut right: RightAction<F::Elem> = alloc::vec![Vec::new()];
    // indices of elements by degree
    let mut by_degree: Vec<Vec<usize>> = alloc::vec![alloc::vec![0]];
    let mut d = 1;
    loop {
        let prev = &by_degree[d - 1];
        if prev.is_empty() {
            break;
        }
        // spanning pairs (β, a), grouped by the target of a
        let mut blocks: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in prev {
            let t = elems[b].target;
            if !q.arrows_known[t] {
                return Err(Error::Algebra(format!(
                    "arrows at vertex {} unknown while building e_{}A in degree {}",
                    q.points[t], q.points[x], d
                )));
            }
            for &a in &q.out[t] {
                blocks.entry(q.target(a)).or_default().push((b, a));
            }
        }
        let mut new_level = Vec::new();
        // relation images, one vector per block
        let mut rel_vecs: BTreeMap<usize, Vec<Vector<F>>> = BTreeMap::new();
        if d >= 2 {
            for &g in &by_degree[d - 2] {
                let u = elems[g].target;
                let rels = q.relations[u].as_ref().ok_or_else(|| {
                    Error::Algebra(format!(
                        "relations at vertex {} unknown while building e_{}A in degree {}",
                        q.points[u], q.points[x], d
                    ))
                })?;
                for r in rels {
                    let w = q.target(r.terms[0].1);
                    let Some(pairs) = blocks.get(&w) else { continue };
                    let mut vec = zero_vec(f, pairs.len());
                    for &(a1, a2, c) in &r.terms {
                        let coeff = f.from_i64(c);
                        if let Some((_, prod)) = right[g].iter().find(|(b, _)| *b == a1) {
                            for (beta, k) in prod {
                                let idx = pairs.iter().position(|&(b, a)| b == *beta && a == a2).unwrap();
                                let t = f.mul(&coeff, k);
                                vec[idx] = f.add(&vec[idx], &t);
                            }
                        }
                    }
                    if !is_zero_vec(f, &vec) {
                        rel_vecs.entry(w).or_default().push(vec);
                    }
                }
            }
        }
        for (w, pairs) in &blocks {
            let n = pairs.len();
            // reverse coordinates so pivots land on the latest pairs
            let mut sp = Subspace::<F>::new(n);
            if let Some(vs) = rel_vecs.get(w) {
                for v in vs {
                    let rev: Vector<F> = v.iter().rev().cloned().collect();
                    sp.insert(f, rev);
                }
            }
            let mut is_piv = alloc::vec![false; n];
            for &p in sp.pivots() {
                is_piv[n - 1 - p] = true;
            }
            let mut new_index = alloc::vec![usize::MAX; n];
            for (k, &(b, a)) in pairs.iter().enumerate() {
                if !is_piv[k] {
                    let mut path = elems[b].path.clone();
                    path.push(a);
                    new_index[k] = elems.len();
                    new_level.push(elems.len());
                    elems.push(BasisElem { target: *w, degree: d, path });
                    right.push(Vec::new());
                }
            }
            // products (β, a) in terms of the new basis
            for (k, &(b, a)) in pairs.iter().enumerate() {
                let prod: Vec<(usize, F::Elem)> = if !is_piv[k] {
                    alloc::vec![(new_index[k], f.one())]
                } else {
                    let rp = n - 1 - k;
                    let row_i = sp.pivots().iter().position(|&p| p == rp).unwrap();
                    let row = &sp.basis()[row_i];
                    (0..n)
                        .filter(|&c| !is_piv[c] && !f.is_zero(&row[n - 1 - c]))
                        .map(|c| (new_index[c], f.neg(&row[n - 1 - c])))
                        .collect()
                };
                right[b].push((a, prod));
            }
        }
        if !new_level.is_empty() && d > max_degree {
            return Err(Error::NotFiniteDimensional(d));
        }
        by_degree.push(new_level);
        d += 1;
    }
    Ok(Source { elems, right })
}
