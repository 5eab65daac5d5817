//! Finite-dimensional right modules given by vertex spaces and the action
//! of each generator.
//!
//! Elements are row vectors; a generator `g: s → t` acts as `m ↦ m·A_g`
//! with `A_g` of shape `dim M_s × dim M_t`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::algebra::Truncation;
use crate::field::Field;
use crate::linalg::{is_zero_vec, mat_mul, unit_vec, vec_mat, zero_mat, zero_vec, Matrix, Subspace, Vector};

#[derive(Clone, Debug)]
pub struct Rep<F: Field> {
    /// Nonzero vertex dimensions.
    pub dims: BTreeMap<usize, usize>,
    /// Generator actions, stored when both ends are nonzero.
    pub act: BTreeMap<usize, Matrix<F>>,
}

/// A module map, one matrix per vertex (`dim M_v × dim N_v`); missing
/// vertices map to zero.
#[derive(Clone, Debug)]
pub struct RepMap<F: Field> {
    pub mats: BTreeMap<usize, Matrix<F>>,
}

/// A subspace at every vertex of a module.
pub type Spaces<F> = BTreeMap<usize, Subspace<F>>;

impl<F: Field> Rep<F> {
    pub fn zero() -> Self {
        Self { dims: BTreeMap::new(), act: BTreeMap::new() }
    }

    pub fn simple(x: usize) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(x, 1);
        Self { dims, act: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Drops zero vertices and actions between them.
    fn tidy(mut self, t: &Truncation<'_, F>) -> Self {
        self.dims.retain(|_, d| *d > 0);
        let dims = &self.dims;
        self.act.retain(|g, _| dims.contains_key(&t.gens[*g].src) && dims.contains_key(&t.gens[*g].tgt));
        self
    }

    /// `m·g` for `m ∈ M_src(g)`.
    pub fn apply(&self, t: &Truncation<'_, F>, m: &[F::Elem], g: usize) -> Vector<F> {
        let f = t.field();
        let cols = self.dim_at(t.gens[g].tgt);
        match self.act.get(&g) {
            Some(a) => vec_mat(f, m, a, cols),
            None => zero_vec(f, cols),
        }
    }

    /// Generators acting nontrivially out of `v`.
    pub fn gens_at<'b>(&'b self, t: &'b Truncation<'_, F>, v: usize) -> impl Iterator<Item = usize> + 'b {
        t.gens_from(v).iter().copied().filter(move |g| self.act.contains_key(g))
    }

    /// Direct sum; returns the offsets of each summand at each vertex.
    pub fn direct_sum(t: &Truncation<'_, F>, parts: &[&Rep<F>]) -> (Self, Vec<BTreeMap<usize, usize>>) {
        let f = t.field();
        let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
        let mut offsets = Vec::new();
        for p in parts {
            let mut off = BTreeMap::new();
            for (&v, &d) in &p.dims {
                let e = dims.entry(v).or_insert(0);
                off.insert(v, *e);
                *e += d;
            }
            offsets.push(off);
        }
        let mut act: BTreeMap<usize, Matrix<F>> = BTreeMap::new();
        for (i, p) in parts.iter().enumerate() {
            for (&g, a) in &p.act {
                let (s, tv) = (t.gens[g].src, t.gens[g].tgt);
                let m = act.entry(g).or_insert_with(|| zero_mat(f, dims[&s], dims[&tv]));
                let (rs, cs) = (offsets[i][&s], offsets[i][&tv]);
                for (r, row) in a.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        m[rs + r][cs + c] = x.clone();
                    }
                }
            }
        }
        (Self { dims, act }, offsets)
    }

    /// Checks the shapes of all stored actions.
    pub fn check_shapes(&self, t: &Truncation<'_, F>) -> bool {
        self.act.iter().all(|(&g, a)| {
            let (s, tv) = (t.gens[g].src, t.gens[g].tgt);
            a.len() == self.dim_at(s) && a.iter().all(|r| r.len() == self.dim_at(tv))
        })
    }

    pub fn zero_spaces(&self) -> Spaces<F> {
        self.dims.iter().map(|(&v, &d)| (v, Subspace::new(d))).collect()
    }

    pub fn full_spaces(&self, f: &F) -> Spaces<F> {
        self.dims.iter().map(|(&v, &d)| (v, Subspace::full(f, d))).collect()
    }

    /// Smallest submodule containing the given spaces.
    pub fn close(&self, t: &Truncation<'_, F>, mut spaces: Spaces<F>) -> Spaces<F> {
        let f = t.field();
        let mut queue: VecDeque<(usize, Vector<F>)> = VecDeque::new();
        for (&v, s) in &spaces {
            for b in s.basis() {
                queue.push_back((v, b.clone()));
            }
        }
        for (&v, &d) in &self.dims {
            spaces.entry(v).or_insert_with(|| Subspace::new(d));
        }
        while let Some((v, m)) = queue.pop_front() {
            for g in self.gens_at(t, v) {
                let img = self.apply(t, &m, g);
                let tv = t.gens[g].tgt;
                if spaces.get_mut(&tv).unwrap().insert(f, img.clone()) {
                    queue.push_back((tv, img));
                }
            }
        }
        spaces
    }

    /// Submodule generated by vertex-homogeneous elements.
    pub fn generated(&self, t: &Truncation<'_, F>, elems: &[(usize, Vector<F>)]) -> Spaces<F> {
        let f = t.field();
        let mut sp = self.zero_spaces();
        for (v, m) in elems {
            sp.get_mut(v).unwrap().insert(f, m.clone());
        }
        self.close(t, sp)
    }

    /// The submodule on the given (closed) spaces and its inclusion.
    pub fn sub(&self, t: &Truncation<'_, F>, spaces: &Spaces<F>) -> (Self, RepMap<F>) {
        let f = t.field();
        let dims: BTreeMap<usize, usize> = spaces.iter().map(|(&v, s)| (v, s.dim())).filter(|p| p.1 > 0).collect();
        let mut act = BTreeMap::new();
        for (&g, a) in &self.act {
            let (s, tv) = (t.gens[g].src, t.gens[g].tgt);
            if !(dims.contains_key(&s) && dims.contains_key(&tv)) {
                continue;
            }
            let ts = &spaces[&tv];
            let m: Matrix<F> = spaces[&s]
                .basis()
                .iter()
                .map(|r| {
                    let img = vec_mat(f, r, a, self.dims[&tv]);
                    debug_assert!(ts.contains(f, &img), "subspaces not closed under the action");
                    ts.coords_unchecked(&img)
                })
                .collect();
            act.insert(g, m);
        }
        let incl = RepMap { mats: dims.keys().map(|v| (*v, spaces[v].basis().to_vec())).collect() };
        (Self { dims, act }.tidy(t), incl)
    }

    /// `M/N` for closed spaces `N`, with the projection.
    pub fn quotient(&self, t: &Truncation<'_, F>, n: &Spaces<F>) -> (Self, RepMap<F>) {
        let f = t.field();
        // per vertex: kept coordinates (non-pivots of N)
        let mut keep: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&v, &d) in &self.dims {
            let piv: &[usize] = n.get(&v).map(|s| s.pivots()).unwrap_or(&[]);
            let k: Vec<usize> = (0..d).filter(|j| !piv.contains(j)).collect();
            if !k.is_empty() {
                keep.insert(v, k);
            }
        }
        let project = |v: usize, m: &[F::Elem]| -> Vector<F> {
            let mut w = m.to_vec();
            if let Some(s) = n.get(&v) {
                s.reduce(f, &mut w);
            }
            keep[&v].iter().map(|&j| w[j].clone()).collect()
        };
        let mut mats = BTreeMap::new();
        for (&v, &d) in &self.dims {
            if keep.contains_key(&v) {
                mats.insert(v, (0..d).map(|j| project(v, &unit_vec(f, d, j))).collect::<Matrix<F>>());
            }
        }
        let mut act = BTreeMap::new();
        for (&g, a) in &self.act {
            let (s, tv) = (t.gens[g].src, t.gens[g].tgt);
            if !(keep.contains_key(&s) && keep.contains_key(&tv)) {
                continue;
            }
            let m: Matrix<F> = keep[&s].iter().map(|&j| project(tv, &a[j])).collect();
            act.insert(g, m);
        }
        let dims = keep.iter().map(|(&v, k)| (v, k.len())).collect();
        (Self { dims, act }.tidy(t), RepMap { mats })
    }

    /// `rad M = Σ_g M·g`.
    pub fn radical(&self, t: &Truncation<'_, F>) -> Spaces<F> {
        let f = t.field();
        let mut sp = self.zero_spaces();
        for (&g, a) in &self.act {
            let s = sp.get_mut(&t.gens[g].tgt).unwrap();
            for r in a {
                s.insert(f, r.clone());
            }
        }
        sp
    }

    /// Elements killed by every generator.
    pub fn socle(&self, t: &Truncation<'_, F>) -> Spaces<F> {
        let f = t.field();
        let mut sp = BTreeMap::new();
        for (&v, &d) in &self.dims {
            let gens: Vec<usize> = self.gens_at(t, v).collect();
            let cols: usize = gens.iter().map(|g| self.dim_at(t.gens[*g].tgt)).sum();
            let rows: Matrix<F> =
                (0..d).map(|i| gens.iter().flat_map(|g| self.act[g][i].iter().cloned()).collect()).collect();
            let ker = crate::linalg::left_kernel(f, &rows, cols);
            sp.insert(v, Subspace::spanned_by(f, d, ker.iter()));
        }
        sp
    }

    /// `M/rad M`.
    pub fn top(&self, t: &Truncation<'_, F>) -> Self {
        self.quotient(t, &self.radical(t)).0
    }

    pub fn top_dims(&self, t: &Truncation<'_, F>) -> BTreeMap<usize, usize> {
        self.top(t).dims
    }

    pub fn socle_dims(&self, t: &Truncation<'_, F>) -> BTreeMap<usize, usize> {
        self.socle(t).into_iter().map(|(v, s)| (v, s.dim())).filter(|p| p.1 > 0).collect()
    }

    /// Dimension vectors of the radical layers `rad^i M / rad^{i+1} M`.
    pub fn loewy_layers(&self, t: &Truncation<'_, F>) -> Vec<BTreeMap<usize, usize>> {
        let mut layers = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let rad = cur.radical(t);
            let (r, _) = cur.sub(t, &rad);
            let mut layer = BTreeMap::new();
            for (&v, &d) in &cur.dims {
                let k = d - r.dim_at(v);
                if k > 0 {
                    layer.insert(v, k);
                }
            }
            layers.push(layer);
            if r.dim() == cur.dim() {
                break; // not nilpotent; should not happen
            }
            cur = r;
        }
        layers
    }

    pub fn loewy_length(&self, t: &Truncation<'_, F>) -> usize {
        self.loewy_layers(t).len()
    }

    /// Sum of two sets of spaces.
    pub fn sum_spaces(f: &F, a: &Spaces<F>, b: &Spaces<F>) -> Spaces<F> {
        let mut out = a.clone();
        for (v, s) in b {
            match out.get_mut(v) {
                Some(o) => *o = o.sum(f, s),
                None => {
                    out.insert(*v, s.clone());
                }
            }
        }
        out
    }

    pub fn spaces_dim(s: &Spaces<F>) -> usize {
        s.values().map(|x| x.dim()).sum()
    }

    pub fn spaces_contained(f: &F, a: &Spaces<F>, b: &Spaces<F>) -> bool {
        a.iter().all(|(v, s)| s.dim() == 0 || b.get(v).is_some_and(|o| s.is_subspace_of(f, o)))
    }
}

impl<F: Field> RepMap<F> {
    pub fn zero() -> Self {
        Self { mats: BTreeMap::new() }
    }

    pub fn identity(f: &F, m: &Rep<F>) -> Self {
        Self { mats: m.dims.iter().map(|(&v, &d)| (v, crate::linalg::identity(f, d))).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, f: &F, other: &RepMap<F>, mid: &Rep<F>, target: &Rep<F>) -> Self {
        let mut mats = BTreeMap::new();
        for (&v, a) in &self.mats {
            if let Some(b) = other.mats.get(&v) {
                if mid.dim_at(v) > 0 {
                    mats.insert(v, mat_mul(f, a, b, target.dim_at(v)));
                }
            }
        }
        Self { mats }
    }

    pub fn image_of(&self, f: &F, v: usize, m: &[F::Elem], target: &Rep<F>) -> Vector<F> {
        match self.mats.get(&v) {
            Some(a) => vec_mat(f, m, a, target.dim_at(v)),
            None => zero_vec(f, target.dim_at(v)),
        }
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.mats.values().all(|a| a.iter().all(|r| is_zero_vec(f, r)))
    }

    /// Whether the map intertwines the actions.
    pub fn is_hom(&self, t: &Truncation<'_, F>, m: &Rep<F>, n: &Rep<F>) -> bool {
        let f = t.field();
        for (&v, &d) in &m.dims {
            for g in t.gens_from(v) {
                let tv = t.gens[*g].tgt;
                for i in 0..d {
                    let e = unit_vec(f, d, i);
                    let lhs = self.image_of(f, tv, &m.apply(t, &e, *g), n);
                    let rhs = n.apply(t, &self.image_of(f, v, &e, n), *g);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn kernel(&self, f: &F, m: &Rep<F>, n: &Rep<F>) -> Spaces<F> {
        m.dims
            .iter()
            .map(|(&v, &d)| {
                let sp = match self.mats.get(&v) {
                    Some(a) => Subspace::spanned_by(f, d, crate::linalg::left_kernel(f, a, n.dim_at(v)).iter()),
                    None => Subspace::full(f, d),
                };
                (v, sp)
            })
            .collect()
    }

    pub fn image(&self, f: &F, n: &Rep<F>) -> Spaces<F> {
        n.dims
            .iter()
            .map(|(&v, &d)| {
                let sp = match self.mats.get(&v) {
                    Some(a) => Subspace::spanned_by(f, d, a.iter()),
                    None => Subspace::new(d),
                };
                (v, sp)
            })
            .collect()
    }

    pub fn rank(&self, f: &F, n: &Rep<F>) -> usize {
        Rep::spaces_dim(&self.image(f, n))
    }

    pub fn is_injective(&self, f: &F, m: &Rep<F>, n: &Rep<F>) -> bool {
        self.rank(f, n) == m.dim()
    }

    pub fn is_surjective(&self, f: &F, n: &Rep<F>) -> bool {
        self.rank(f, n) == n.dim()
    }

    pub fn is_iso(&self, f: &F, m: &Rep<F>, n: &Rep<F>) -> bool {
        m.dim() == n.dim() && self.is_injective(f, m, n)
    }

    /// Linear combination `Σ c_i f_i`.
    pub fn combination(f: &F, maps: &[RepMap<F>], coeffs: &[F::Elem], m: &Rep<F>, n: &Rep<F>) -> Self {
        let mut mats: BTreeMap<usize, Matrix<F>> = BTreeMap::new();
        for (map, c) in maps.iter().zip(coeffs) {
            if f.is_zero(c) {
                continue;
            }
            for (&v, a) in &map.mats {
                let acc = mats.entry(v).or_insert_with(|| zero_mat(f, m.dim_at(v), n.dim_at(v)));
                for (ra, rb) in acc.iter_mut().zip(a) {
                    crate::linalg::axpy(f, ra, c, rb);
                }
            }
        }
        Self { mats }
    }
}
