//! Modules given as subspaces of a direct sum of projectives
//! `e_{u_1}A ⊕ … ⊕ e_{u_m}A`, and maps between them given by left
//! multiplication.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use super::rep::{Rep, RepMap};
use crate::algebra::{LocalAlgebra, Truncation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, is_zero_vec, zero_vec, Coordinates, Matrix, Subspace, Vector};

/// The sum `⊕ e_{u_j} A`; elements are concatenated coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub summands: Vec<usize>,
    offsets: Vec<usize>,
    len: usize,
}

impl Ambient {
    pub fn new<F: Field>(alg: &LocalAlgebra<F>, summands: &[usize]) -> Result<Self> {
        let mut offsets = Vec::new();
        let mut len = 0;
        for &u in summands {
            if !alg.has_source(u) {
                return Err(Error::UnknownVertex(format!("e_{}A", alg.quiver.points[u])));
            }
            offsets.push(len);
            len += alg.dim(u);
        }
        Ok(Self { summands: summands.to_vec(), offsets, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn part<'v, E>(&self, v: &'v [E], j: usize) -> &'v [E] {
        let end = self.offsets.get(j + 1).copied().unwrap_or(self.len);
        &v[self.offsets[j]..end]
    }

    /// Embeds `w ∈ e_{u_j} A`.
    pub fn inject<F: Field>(&self, f: &F, j: usize, w: &[F::Elem]) -> Vector<F> {
        let mut v = zero_vec(f, self.len);
        v[self.offsets[j]..self.offsets[j] + w.len()].clone_from_slice(w);
        v
    }

    /// Splits `v` into its components `v·e_y`.
    pub fn split<F: Field>(&self, alg: &LocalAlgebra<F>, v: &[F::Elem]) -> BTreeMap<usize, Vector<F>> {
        let f = &alg.field;
        let mut out: BTreeMap<usize, Vector<F>> = BTreeMap::new();
        for (j, &u) in self.summands.iter().enumerate() {
            for (i, e) in alg.elems(u).iter().enumerate() {
                let c = &v[self.offsets[j] + i];
                if !f.is_zero(c) {
                    out.entry(e.target).or_insert_with(|| zero_vec(f, self.len))[self.offsets[j] + i] = c.clone();
                }
            }
        }
        out
    }

    /// `v·g`, restricted to the truncation.
    pub fn act<F: Field>(&self, t: &Truncation<'_, F>, v: &[F::Elem], g: usize) -> Result<Vector<F>> {
        let mut out = Vec::with_capacity(self.len);
        for (j, &u) in self.summands.iter().enumerate() {
            let mut w = t.act(u, self.part(v, j), g);
            t.restrict(u, &mut w)?;
            out.extend(w);
        }
        Ok(out)
    }
}

/// A linear map `⊕_j e_{u_j}A → ⊕_i e_{w_i}A` of right modules, given by
/// left multiplication with a matrix of elements `c_{ij} ∈ e_{w_i} A e_{u_j}`.
#[derive(Clone, Debug)]
pub struct AmbientMap<F: Field> {
    pub src: Ambient,
    pub tgt: Ambient,
    /// `blocks[(j, i)]`: `dim e_{u_j}A × dim e_{w_i}A`.
    blocks: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> AmbientMap<F> {
    /// `entries`: `(source summand j, target summand i, c_{ij})` with
    /// `c_{ij} ∈ e_{w_i} A`; only its component ending at `u_j` is used.
    pub fn left_mult(
        alg: &LocalAlgebra<F>,
        src: &Ambient,
        tgt: &Ambient,
        entries: &[(usize, usize, Vector<F>)],
    ) -> Self {
        let mut blocks = BTreeMap::new();
        for (j, i, c) in entries {
            let (u, w) = (src.summands[*j], tgt.summands[*i]);
            let m: Matrix<F> = alg.elems(u).iter().map(|e| alg.mul_path(w, c, u, &e.path)).collect();
            let entry =
                blocks.entry((*j, *i)).or_insert_with(|| crate::linalg::zero_mat(&alg.field, m.len(), alg.dim(w)));
            for (r, row) in entry.iter_mut().zip(&m) {
                axpy(&alg.field, r, &alg.field.one(), row);
            }
        }
        Self { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    /// Identity on shared summands: summand `j` of `src` goes to summand
    /// `pairs[j]` of `tgt`.
    pub fn inclusion(alg: &LocalAlgebra<F>, src: &Ambient, tgt: &Ambient, pairs: &[(usize, usize)]) -> Self {
        let entries: Vec<_> = pairs.iter().map(|&(j, i)| (j, i, alg.idempotent(tgt.summands[i]))).collect();
        Self::left_mult(alg, src, tgt, &entries)
    }

    pub fn apply(&self, f: &F, v: &[F::Elem]) -> Vector<F> {
        let mut out = zero_vec(f, self.tgt.len());
        for (&(j, i), m) in &self.blocks {
            let part = self.src.part(v, j);
            let off = self.tgt.offsets[i];
            for (c, row) in part.iter().zip(m) {
                axpy(f, &mut out[off..off + row.len()], c, row);
            }
        }
        out
    }
}

/// Basis vector index to `(generator index, word)`.
pub type Words = BTreeMap<usize, Vec<(usize, Vec<usize>)>>;

/// A module inside an [`Ambient`], with a basis at every vertex.
#[derive(Clone, Debug)]
pub struct Embedded<F: Field> {
    pub rep: Rep<F>,
    pub ambient: Ambient,
    coords: BTreeMap<usize, Coordinates<F>>,
    /// For generated modules: `(generator index, word)` per basis vector.
    pub words: Option<Words>,
}

impl<F: Field> Embedded<F> {
    /// The submodule generated by the given ambient elements.
    pub fn generated(t: &Truncation<'_, F>, ambient: &Ambient, elems: &[Vector<F>]) -> Result<Self> {
        let f = t.field();
        let alg = t.alg;
        let mut spaces: BTreeMap<usize, Subspace<F>> = BTreeMap::new();
        let mut basis: BTreeMap<usize, Vec<Vector<F>>> = BTreeMap::new();
        let mut words: BTreeMap<usize, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut push = |y: usize, v: Vector<F>, word: (usize, Vec<usize>), queue: &mut VecDeque<_>| -> Result<()> {
            if !t.contains(y) {
                if t.is_truncated() {
                    return Ok(());
                }
                return Err(Error::Module(format!("module reaches {} where arrows are unknown", alg.quiver.points[y])));
            }
            let sp = spaces.entry(y).or_insert_with(|| Subspace::new(ambient.len()));
            if sp.insert(f, v.clone()) {
                basis.entry(y).or_default().push(v.clone());
                words.entry(y).or_default().push(word.clone());
                queue.push_back((y, v, word));
            }
            Ok(())
        };
        for (k, m) in elems.iter().enumerate() {
            for (y, part) in ambient.split(alg, m) {
                push(y, part, (k, Vec::new()), &mut queue)?;
            }
        }
        while let Some((y, v, (k, w))) = queue.pop_front() {
            for &g in t.gens_from(y) {
                let img = ambient.act(t, &v, g)?;
                if is_zero_vec(f, &img) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(g);
                push(t.gens[g].tgt, img, (k, w2), &mut queue)?;
            }
        }
        let mut out = Self::from_basis(t, ambient, basis)?;
        out.words = Some(words);
        Ok(out)
    }

    /// `e_x A` (or `e_x A_i`), with its word basis.
    pub fn projective(t: &Truncation<'_, F>, x: usize) -> Result<Self> {
        let amb = Ambient::new(t.alg, &[x])?;
        let e = t.alg.idempotent(x);
        Self::generated(t, &amb, &[e])
    }

    /// Module on given vertex bases, which must span an action-closed
    /// subspace.
    pub fn from_basis(
        t: &Truncation<'_, F>,
        ambient: &Ambient,
        basis: BTreeMap<usize, Vec<Vector<F>>>,
    ) -> Result<Self> {
        let f = t.field();
        let coords: BTreeMap<usize, Coordinates<F>> = basis
            .into_iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(y, b)| (y, Coordinates::new(f, &b, ambient.len())))
            .collect();
        let dims = coords.iter().map(|(&y, c)| (y, c.len())).collect();
        let mut act = BTreeMap::new();
        for (&y, c) in &coords {
            for &g in t.gens_from(y) {
                let tgt = t.gens[g].tgt;
                let mut rows = Vec::new();
                let mut nonzero = false;
                for b in c.rows() {
                    let img = ambient.act(t, b, g)?;
                    if is_zero_vec(f, &img) {
                        rows.push(None);
                        continue;
                    }
                    nonzero = true;
                    let tc = coords.get(&tgt).and_then(|tc| tc.coords(f, &img)).ok_or_else(|| {
                        if !t.contains(tgt) {
                            Error::Module(format!(
                                "module reaches {} where arrows are unknown",
                                t.alg.quiver.points[tgt]
                            ))
                        } else {
                            Error::Module(format!(
                                "subspace not closed under a generator at {}",
                                t.alg.quiver.points[y]
                            ))
                        }
                    })?;
                    rows.push(Some(tc));
                }
                if nonzero {
                    let n = coords[&tgt].len();
                    act.insert(g, rows.into_iter().map(|r| r.unwrap_or_else(|| zero_vec(f, n))).collect());
                }
            }
        }
        Ok(Self { rep: Rep { dims, act }, ambient: ambient.clone(), coords, words: None })
    }

    /// Module spanned by the given closed spaces of ambient vectors.
    pub fn from_spaces(
        t: &Truncation<'_, F>,
        ambient: &Ambient,
        spaces: &BTreeMap<usize, Subspace<F>>,
    ) -> Result<Self> {
        let basis = spaces.iter().map(|(&y, s)| (y, s.basis().to_vec())).collect();
        Self::from_basis(t, ambient, basis)
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn basis_at(&self, y: usize) -> &[Vector<F>] {
        self.coords.get(&y).map(|c| c.rows()).unwrap_or(&[])
    }

    pub fn spaces(&self, f: &F) -> BTreeMap<usize, Subspace<F>> {
        self.coords.iter().map(|(&y, c)| (y, Subspace::spanned_by(f, self.ambient.len(), c.rows().iter()))).collect()
    }

    pub fn coords(&self, f: &F, y: usize, v: &[F::Elem]) -> Option<Vector<F>> {
        match self.coords.get(&y) {
            Some(c) => c.coords(f, v),
            None => is_zero_vec(f, v).then(Vec::new),
        }
    }

    pub fn contains(&self, f: &F, y: usize, v: &[F::Elem]) -> bool {
        self.coords(f, y, v).is_some()
    }

    pub fn is_submodule_of(&self, f: &F, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.coords.iter().all(|(&y, c)| c.rows().iter().all(|b| other.contains(f, y, b)))
    }

    pub fn same_as(&self, f: &F, other: &Self) -> bool {
        self.rep.dims == other.rep.dims && self.is_submodule_of(f, other)
    }

    /// The same vectors viewed over another presentation, keeping only the
    /// vertices it contains (the functor `(−)e`).
    pub fn restrict(&self, t: &Truncation<'_, F>) -> Result<Self> {
        let basis = self.coords.iter().filter(|(y, _)| t.contains(**y)).map(|(&y, c)| (y, c.rows().to_vec())).collect();
        Self::from_basis(t, &self.ambient, basis)
    }

    /// `M + N` inside the same ambient.
    pub fn sum(&self, t: &Truncation<'_, F>, other: &Self) -> Result<Self> {
        let f = t.field();
        let mut sp = self.spaces(f);
        for (y, s) in other.spaces(f) {
            match sp.get_mut(&y) {
                Some(o) => *o = o.sum(f, &s),
                None => {
                    sp.insert(y, s);
                }
            }
        }
        Self::from_spaces(t, &self.ambient, &sp)
    }

    pub fn intersection(&self, t: &Truncation<'_, F>, other: &Self) -> Result<Self> {
        let f = t.field();
        let a = self.spaces(f);
        let b = other.spaces(f);
        let sp = a.iter().filter_map(|(y, s)| b.get(y).map(|o| (*y, s.intersection(f, o)))).collect();
        Self::from_spaces(t, &self.ambient, &sp)
    }

    /// The map induced by `amap` into `target`; fails if some image leaves
    /// the target.
    pub fn map_to(&self, f: &F, amap: &AmbientMap<F>, target: &Self) -> Result<RepMap<F>> {
        let mut mats = BTreeMap::new();
        for (&y, c) in &self.coords {
            let mut rows = Vec::new();
            for b in c.rows() {
                let img = amap.apply(f, b);
                let tc = target
                    .coords(f, y, &img)
                    .ok_or_else(|| Error::Module(format!("map leaves the target module at vertex {y}")))?;
                rows.push(if tc.is_empty() { Vec::new() } else { tc });
            }
            if target.rep.dim_at(y) > 0 {
                mats.insert(y, rows);
            }
        }
        Ok(RepMap { mats })
    }

    /// Inclusion into a larger module over the same ambient.
    pub fn inclusion_into(&self, f: &F, alg: &LocalAlgebra<F>, bigger: &Self) -> Result<RepMap<F>> {
        let pairs: Vec<(usize, usize)> = (0..self.ambient.summands.len()).map(|j| (j, j)).collect();
        let amap = AmbientMap::inclusion(alg, &self.ambient, &bigger.ambient, &pairs);
        self.map_to(f, &amap, bigger)
    }
}
