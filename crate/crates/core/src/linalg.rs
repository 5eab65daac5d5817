//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are rows; linear maps act on the right (`v ↦ v·A`), matching the
//! right-module conventions used throughout the crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;
/// Row-major matrix; `m[i]` is the image of the i-th basis vector.
pub type Matrix<F> = Vec<Vector<F>>;

pub fn zero_vec<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// `a += c * b`
pub fn axpy<F: Field>(f: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !f.is_zero(y) {
            f.add_mul_assign(x, c, y);
        }
    }
}

pub fn scale<F: Field>(f: &F, a: &mut [F::Elem], c: &F::Elem) {
    for x in a.iter_mut() {
        if !f.is_zero(x) {
            *x = f.mul(x, c);
        }
    }
}

pub fn add_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

/// `v·A` for a row vector `v` of length `A.len()`.
pub fn vec_mat<F: Field>(f: &F, v: &[F::Elem], a: &[Vector<F>], cols: usize) -> Vector<F> {
    let mut out = zero_vec(f, cols);
    for (c, row) in v.iter().zip(a) {
        axpy(f, &mut out, c, row);
    }
    out
}

/// `A·B` where `A` is `r × k` and `B` is `k × cols`.
pub fn mat_mul<F: Field>(f: &F, a: &[Vector<F>], b: &[Vector<F>], cols: usize) -> Matrix<F> {
    a.iter().map(|row| vec_mat(f, row, b, cols)).collect()
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F> {
    (0..n).map(|i| unit_vec(f, n, i)).collect()
}

pub fn zero_mat<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F> {
    (0..rows).map(|_| zero_vec(f, cols)).collect()
}

/// A subspace of `F^n` kept in reduced row echelon form.
///
/// Because the rows are fully reduced, a vector `v` in the span has
/// coordinates `v[pivot_i]` with respect to the stored rows.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    n: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(n: usize) -> Self {
        Self { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &F, n: usize) -> Self {
        Self { n, rows: identity(f, n), pivots: (0..n).collect() }
    }

    pub fn spanned_by<'a, I>(f: &F, n: usize, vs: I) -> Self
    where
        I: IntoIterator<Item = &'a Vector<F>>,
        F::Elem: 'a,
    {
        let mut s = Self::new(n);
        for v in vs {
            s.insert(f, v.clone());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace in place.
    pub fn reduce(&self, f: &F, v: &mut [F::Elem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = f.neg(&v[p]);
                axpy(f, v, &c, row);
            }
        }
    }

    pub fn contains(&self, f: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        is_zero_vec(f, &w)
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &F, mut v: Vector<F>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        scale(f, &mut v, &inv);
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = f.neg(&row[p]);
                axpy(f, row, &c, &v);
            }
        }
        // keep pivots sorted so that the basis order is canonical
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` with respect to [`Self::basis`], if `v` lies in the span.
    pub fn coords(&self, f: &F, v: &[F::Elem]) -> Option<Vector<F>> {
        let c: Vector<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.combine(f, &c);
        if back.iter().zip(v).all(|(a, b)| a == b) {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of `v`, assuming membership.
    pub fn coords_unchecked(&self, v: &[F::Elem]) -> Vector<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, f: &F, c: &[F::Elem]) -> Vector<F> {
        vec_mat(f, c, &self.rows, self.n)
    }

    pub fn sum(&self, f: &F, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(f, v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, f: &F, other: &Self) -> bool {
        self.rows.iter().all(|v| other.contains(f, v))
    }

    pub fn intersection(&self, f: &F, other: &Self) -> Self {
        // kernel of (a, b) ↦ a·S − b·T restricted to the first factor
        let mut imgs: Matrix<F> = self.rows.clone();
        for r in &other.rows {
            imgs.push(r.iter().map(|x| f.neg(x)).collect());
        }
        let ker = left_kernel(f, &imgs, self.n);
        let mut out = Self::new(self.n);
        for k in ker {
            out.insert(f, self.combine(f, &k[..self.rows.len()]));
        }
        out
    }

    /// Basis vectors of a complement of `self` inside `outer` (which must contain it).
    pub fn complement_in(&self, f: &F, outer: &Self) -> Vec<Vector<F>> {
        let mut s = self.clone();
        let mut out = Vec::new();
        for v in &outer.rows {
            if s.insert(f, v.clone()) {
                out.push(v.clone());
            }
        }
        out
    }
}

/// All `c` with `Σ c_j rows[j] = 0`, where each row has length `m`.
pub fn left_kernel<F: Field>(f: &F, rows: &[Vector<F>], m: usize) -> Vec<Vector<F>> {
    let k = rows.len();
    let mut sp = Subspace::<F>::new(m + k);
    for (j, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.extend(unit_vec(f, k, j));
        sp.insert(f, v);
    }
    sp.basis().iter().filter(|r| is_zero_vec(f, &r[..m])).map(|r| r[m..].to_vec()).collect()
}

/// Some `c` with `Σ c_j rows[j] = v`.
pub fn solve_left<F: Field>(f: &F, rows: &[Vector<F>], v: &[F::Elem]) -> Option<Vector<F>> {
    let m = v.len();
    let k = rows.len();
    let mut sp = Subspace::<F>::new(m + k);
    for (j, r) in rows.iter().enumerate() {
        let mut w = r.clone();
        w.extend(unit_vec(f, k, j));
        sp.insert(f, w);
    }
    let mut t = v.to_vec();
    t.extend(zero_vec(f, k));
    sp.reduce(f, &mut t);
    if !is_zero_vec(f, &t[..m]) {
        return None;
    }
    Some(t[m..].iter().map(|x| f.neg(x)).collect())
}

pub fn rank<F: Field>(f: &F, rows: &[Vector<F>], m: usize) -> usize {
    Subspace::spanned_by(f, m, rows.iter()).dim()
}

/// Solutions `x` of the homogeneous system `Σ_j eq[j]·x_j = 0` for each equation.
pub struct Nullspace<F: Field> {
    nvars: usize,
    eqs: Subspace<F>,
}

impl<F: Field> Nullspace<F> {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, eqs: Subspace::new(nvars) }
    }

    pub fn add_equation(&mut self, f: &F, eq: Vector<F>) {
        if !is_zero_vec(f, &eq) {
            self.eqs.insert(f, eq);
        }
    }

    pub fn add_sparse(&mut self, f: &F, terms: &[(usize, F::Elem)]) {
        let mut v = zero_vec(f, self.nvars);
        for (i, c) in terms {
            v[*i] = f.add(&v[*i], c);
        }
        self.add_equation(f, v);
    }

    pub fn solve(&self, f: &F) -> Vec<Vector<F>> {
        let piv = self.eqs.pivots();
        let mut is_piv = vec![false; self.nvars];
        for &p in piv {
            is_piv[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.nvars).filter(|&j| !is_piv[j]) {
            let mut x = zero_vec(f, self.nvars);
            x[free] = f.one();
            for (row, &p) in self.eqs.basis().iter().zip(piv) {
                x[p] = f.neg(&row[free]);
            }
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vector<Rationals> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let f = Rationals;
        let rows = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        let ker = left_kernel(&f, &rows, 3);
        assert_eq!(ker.len(), 1);
        let z = vec_mat(&f, &ker[0], &rows, 3);
        assert!(is_zero_vec(&f, &z));
    }

    #[test]
    fn solve_and_coords() {
        let f = Rationals;
        let rows = vec![q(&[1, 1, 0]), q(&[0, 1, 1])];
        let c = solve_left(&f, &rows, &q(&[1, 3, 2])).unwrap();
        assert_eq!(c, q(&[1, 2]));
        assert!(solve_left(&f, &rows, &q(&[1, 0, 0])).is_none());
        let s = Subspace::spanned_by(&f, 3, rows.iter());
        let v = q(&[2, 1, -1]);
        let co = s.coords(&f, &v).unwrap();
        assert_eq!(s.combine(&f, &co), v);
    }

    #[test]
    fn nullspace_matches_equations() {
        let f = PrimeField::new(7).unwrap();
        let mut ns = Nullspace::new(3);
        ns.add_sparse(&f, &[(0, 1), (1, 6)]);
        let sols = ns.solve(&f);
        assert_eq!(sols.len(), 2);
        for s in sols {
            assert_eq!(f.add(&s[0], &f.mul(&6, &s[1])), 0);
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let f = PrimeField::new(5).unwrap();
            let rows: Matrix<PrimeField> = entries.chunks(4).map(|c| c.iter().map(|&x| f.from_i64(x)).collect()).collect();
            let r = rank(&f, &rows, 4);
            let k = left_kernel(&f, &rows, 4).len();
            prop_assert_eq!(r + k, rows.len());
        }

        #[test]
        fn intersection_dimension(a in proptest::collection::vec(-2i64..3, 8), b in proptest::collection::vec(-2i64..3, 8)) {
            let f = Rationals;
            let sa = Subspace::spanned_by(&f, 4, a.chunks(4).map(q).collect::<Vec<_>>().iter());
            let sb = Subspace::spanned_by(&f, 4, b.chunks(4).map(q).collect::<Vec<_>>().iter());
            let i = sa.intersection(&f, &sb);
            prop_assert_eq!(sa.dim() + sb.dim(), sa.sum(&f, &sb).dim() + i.dim());
            prop_assert!(i.is_subspace_of(&f, &sa) && i.is_subspace_of(&f, &sb));
        }
    }
}

/// Coordinates with respect to a fixed (not necessarily reduced) basis.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    cols: Vec<usize>,
    inv: Matrix<F>,
    rows: Matrix<F>,
}

impl<F: Field> Coordinates<F> {
    /// `rows` must be linearly independent vectors of length `n`.
    pub fn new(f: &F, rows: &[Vector<F>], n: usize) -> Self {
        let k = rows.len();
        let cols: Vec<usize> = Subspace::spanned_by(f, n, rows.iter()).pivots().to_vec();
        assert_eq!(cols.len(), k, "basis vectors are dependent");
        // RREF of [S | I] is [I | S⁻¹]
        let mut sp = Subspace::<F>::new(2 * k);
        for (j, r) in rows.iter().enumerate() {
            let mut v: Vector<F> = cols.iter().map(|&c| r[c].clone()).collect();
            v.extend(unit_vec(f, k, j));
            sp.insert(f, v);
        }
        let inv = sp.basis().iter().map(|r| r[k..].to_vec()).collect();
        Self { cols, inv, rows: rows.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vector<F>] {
        &self.rows
    }

    /// Coordinates of `v`, assuming it lies in the span.
    pub fn coords_unchecked(&self, f: &F, v: &[F::Elem]) -> Vector<F> {
        let s: Vector<F> = self.cols.iter().map(|&c| v[c].clone()).collect();
        vec_mat(f, &s, &self.inv, self.rows.len())
    }

    pub fn coords(&self, f: &F, v: &[F::Elem]) -> Option<Vector<F>> {
        let c = self.coords_unchecked(f, v);
        let back = vec_mat(f, &c, &self.rows, v.len());
        (back.as_slice() == v).then_some(c)
    }
}
