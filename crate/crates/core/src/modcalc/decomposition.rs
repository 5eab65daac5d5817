//! Indecomposability via the endomorphism ring, and hearts of projectives.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rep::{Rep, RepMap};
use super::Modules;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{is_zero_vec, unit_vec, Coordinates, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposability {
    /// `End(M)` is local.
    Indecomposable,
    /// A non-trivial idempotent-like witness was found (Fitting).
    Decomposable,
    /// Neither could be certified (e.g. a non-split residue field).
    Inconclusive,
}

fn compose<F: Field>(f: &F, a: &RepMap<F>, b: &RepMap<F>, m: &Rep<F>) -> RepMap<F> {
    a.then(f, b, m, m)
}

fn sub_scalar<F: Field>(f: &F, a: &RepMap<F>, lambda: &F::Elem, m: &Rep<F>) -> RepMap<F> {
    let mut out = a.clone();
    for (&v, &d) in &m.dims {
        let mat = out.mats.entry(v).or_insert_with(|| crate::linalg::zero_mat(f, d, d));
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = f.sub(&row[i], lambda);
        }
    }
    out
}

fn power<F: Field>(f: &F, a: &RepMap<F>, k: usize, m: &Rep<F>) -> RepMap<F> {
    let mut out = RepMap::identity(f, m);
    for _ in 0..k {
        out = compose(f, &out, a, m);
    }
    out
}

fn flatten<F: Field>(a: &RepMap<F>, m: &Rep<F>, f: &F) -> Vector<F> {
    let mut v = Vec::new();
    for (&x, &d) in &m.dims {
        match a.mats.get(&x) {
            Some(mat) => mat.iter().for_each(|r| v.extend(r.iter().cloned())),
            None => v.extend(core::iter::repeat_n(f.zero(), d * d)),
        }
    }
    v
}

/// The scalar `λ` with `φ − λ` nilpotent, if there is one.
fn scalar_part<F: Field>(f: &F, phi: &RepMap<F>, m: &Rep<F>) -> Option<F::Elem> {
    let n = m.dim();
    let candidates: Vec<F::Elem> = match f.characteristic() {
        p if p > 0 && p <= 257 => (0..p as i64).map(|i| f.from_i64(i)).collect(),
        _ => {
            // trace / dim in characteristic zero
            let mut tr = f.zero();
            for (&v, &d) in &m.dims {
                if let Some(a) = phi.mats.get(&v) {
                    for (i, row) in a.iter().enumerate().take(d) {
                        tr = f.add(&tr, &row[i]);
                    }
                }
            }
            alloc::vec![f.mul(&tr, &f.inv(&f.from_i64(n as i64)))]
        }
    };
    candidates.into_iter().find(|l| power(f, &sub_scalar(f, phi, l, m), n, m).is_zero(f))
}

impl<F: Field> Modules<'_, '_, F> {
    pub fn endomorphisms(&self, m: &Rep<F>) -> Vec<RepMap<F>> {
        self.hom(m, m)
    }

    /// Decides whether `End(M)` is local: every basis endomorphism is a
    /// scalar plus a nilpotent, and the nilpotent parts generate a nilpotent
    /// ideal.
    pub fn decomposability(&self, m: &Rep<F>) -> Decomposability {
        let f = self.field();
        if m.is_zero() {
            return Decomposability::Decomposable;
        }
        let ends = self.endomorphisms(m);
        let n = m.dim();
        let mut nil = Vec::new();
        for phi in &ends {
            match scalar_part(f, phi, m) {
                Some(l) => nil.push(sub_scalar(f, phi, &l, m)),
                None => {
                    // Fitting: φ^n is neither zero nor invertible
                    let p = power(f, phi, n, m);
                    if !p.is_zero(f) && !p.is_iso(f, m, m) {
                        return Decomposability::Decomposable;
                    }
                    return Decomposability::Inconclusive;
                }
            }
        }
        // J^k for the span J of the nilpotent parts
        let len = flatten(&RepMap::identity(f, m), m, f).len();
        let mut cur: Vec<RepMap<F>> = nil.clone();
        for _ in 0..=n {
            let sp = Subspace::spanned_by(f, len, cur.iter().map(|a| flatten(a, m, f)).collect::<Vec<_>>().iter());
            if sp.dim() == 0 {
                return Decomposability::Indecomposable;
            }
            let mut next = Vec::new();
            let mut nsp = Subspace::new(len);
            for a in &cur {
                for b in &nil {
                    let c = compose(f, a, b, m);
                    if nsp.insert(f, flatten(&c, m, f)) {
                        next.push(c);
                    }
                }
            }
            cur = next;
        }
        Decomposability::Decomposable
    }

    pub fn is_indecomposable(&self, m: &Rep<F>) -> bool {
        self.decomposability(m) == Decomposability::Indecomposable
    }

    /// `rad P_x / soc P_x`.
    pub fn heart(&self, x: usize) -> Result<Rep<F>> {
        let p = self.projective(x)?;
        let soc = p.rep.socle(self.t);
        let (q, _) = p.rep.quotient(self.t, &soc);
        let rad = q.radical(self.t);
        Ok(q.sub(self.t, &rad).0)
    }

    /// A direct summand of `H` isomorphic to `S_x`, as an idempotent
    /// endomorphism `ι∘π` of rank one.
    pub fn simple_summand(&self, h: &Rep<F>, x: usize) -> Option<RepMap<F>> {
        let f = self.field();
        let d = h.dim_at(x);
        if d == 0 {
            return None;
        }
        let soc = h.socle(self.t).remove(&x)?;
        let rad = h.radical(self.t).remove(&x).unwrap_or_else(|| Subspace::new(d));
        let v = soc.basis().iter().find(|s| !rad.contains(f, s))?.clone();
        // basis: radical, then v, then a completion
        let mut rows: Vec<Vector<F>> = rad.basis().to_vec();
        let at = rows.len();
        rows.push(v.clone());
        let mut sp = Subspace::spanned_by(f, d, rows.iter());
        for i in 0..d {
            let u = unit_vec(f, d, i);
            if sp.insert(f, u.clone()) {
                rows.push(u);
            }
        }
        let c = Coordinates::new(f, &rows, d);
        let mat: Vec<Vector<F>> = (0..d)
            .map(|i| {
                let phi = c.coords_unchecked(f, &unit_vec(f, d, i))[at].clone();
                v.iter().map(|a| f.mul(&phi, a)).collect()
            })
            .collect();
        let mut mats = BTreeMap::new();
        mats.insert(x, mat);
        let e = RepMap { mats };
        let e2 = e.then(f, &e, h, h);
        let ok = e.is_hom(self.t, h, h) && e2.mats[&x] == e.mats[&x] && e.rank(f, h) == 1 && !is_zero_vec(f, &v);
        ok.then_some(e)
    }
}
