//! Projective covers, `Ω` and `Ω⁻¹`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rep::{Rep, RepMap};
use super::Modules;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unit_vec, Matrix};

/// `π: P → M` with `P` a sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    pub rep: Rep<F>,
    pub map: RepMap<F>,
    /// Vertices of the summands `e_x A`, in order.
    pub summands: Vec<usize>,
}

impl<F: Field> Modules<'_, '_, F> {
    /// Projective cover: one `e_x A` for each basis vector of `top(M)e_x`.
    pub fn cover(&self, m: &Rep<F>) -> Result<Cover<F>> {
        let f = self.field();
        let t = self.t;
        let rad = m.radical(t);
        let mut tops: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for (&v, &d) in &m.dims {
            let piv = rad.get(&v).map(|s| s.pivots().to_vec()).unwrap_or_default();
            for j in (0..d).filter(|j| !piv.contains(j)) {
                tops.push((v, unit_vec(f, d, j)));
            }
        }
        let projs: Vec<_> = tops.iter().map(|(v, _)| self.projective(*v)).collect::<Result<_>>()?;
        let reps: Vec<&Rep<F>> = projs.iter().map(|p| &p.rep).collect();
        let (sum, offsets) = Rep::direct_sum(t, &reps);
        let mut mats: BTreeMap<usize, Matrix<F>> =
            sum.dims.iter().map(|(&v, &d)| (v, alloc::vec![Vec::new(); d])).collect();
        for (i, ((_, gen), p)) in tops.iter().zip(&projs).enumerate() {
            let words = p.words.as_ref().ok_or_else(|| Error::Module("projective without word basis".into()))?;
            for (&y, ws) in words {
                for (k, (_, w)) in ws.iter().enumerate() {
                    let mut img = gen.clone();
                    let mut at = tops[i].0;
                    for &g in w {
                        img = m.apply(t, &img, g);
                        at = t.gens[g].tgt;
                    }
                    debug_assert_eq!(at, y);
                    let _ = at;
                    mats.get_mut(&y).unwrap()[offsets[i][&y] + k] = img;
                }
            }
        }
        // vertices of P absent from M map to zero
        mats.retain(|v, _| m.dim_at(*v) > 0);
        let map = RepMap { mats };
        debug_assert!(map.is_hom(t, &sum, m));
        Ok(Cover { rep: sum, map, summands: tops.into_iter().map(|(v, _)| v).collect() })
    }

    /// `Ω(M)`, the kernel of the projective cover.
    pub fn syzygy(&self, m: &Rep<F>) -> Result<Rep<F>> {
        let f = self.field();
        let c = self.cover(m)?;
        if !c.map.is_surjective(f, m) {
            return Err(Error::Module("projective cover is not surjective".into()));
        }
        let ker = c.map.kernel(f, &c.rep, m);
        Ok(c.rep.sub(self.t, &ker).0)
    }

    /// An injective map `M → ⊕ e_x A` with one summand per socle
    /// dimension, found by random choice of homs.
    pub fn hull(&self, m: &Rep<F>) -> Result<Cover<F>> {
        let f = self.field();
        let t = self.t;
        let soc = m.socle_dims(t);
        let mut summands = Vec::new();
        for (&x, &d) in &soc {
            summands.extend(core::iter::repeat_n(x, d));
        }
        let projs: Vec<_> = summands.iter().map(|x| self.projective(*x)).collect::<Result<_>>()?;
        let reps: Vec<&Rep<F>> = projs.iter().map(|p| &p.rep).collect();
        let (sum, offsets) = Rep::direct_sum(t, &reps);
        let mut homs: BTreeMap<usize, Vec<RepMap<F>>> = BTreeMap::new();
        for &x in soc.keys() {
            homs.insert(x, self.hom(m, &projs[summands.iter().position(|&y| y == x).unwrap()].rep));
        }
        for _ in 0..64 {
            let mut mats: BTreeMap<usize, Matrix<F>> = m
                .dims
                .iter()
                .filter(|(v, _)| sum.dim_at(**v) > 0)
                .map(|(&v, &d)| (v, crate::linalg::zero_mat(f, d, sum.dim_at(v))))
                .collect();
            for (i, &x) in summands.iter().enumerate() {
                let hs = &homs[&x];
                let c: Vec<F::Elem> = (0..hs.len()).map(|_| self.random()).collect();
                let h = RepMap::combination(f, hs, &c, m, &projs[i].rep);
                for (v, a) in &h.mats {
                    let off = offsets[i][v];
                    for (r, row) in a.iter().enumerate() {
                        for (cix, x) in row.iter().enumerate() {
                            mats.get_mut(v).unwrap()[r][off + cix] = x.clone();
                        }
                    }
                }
            }
            let map = RepMap { mats };
            if map.is_injective(f, m, &sum) {
                return Ok(Cover { rep: sum, map, summands });
            }
        }
        Err(Error::Module("no injective hull found".into()))
    }

    /// `Ω⁻¹(M)`, the cokernel of an injective hull.
    pub fn cosyzygy(&self, m: &Rep<F>) -> Result<Rep<F>> {
        let f = self.field();
        let h = self.hull(m)?;
        let img = h.map.image(f, &h.rep);
        Ok(h.rep.quotient(self.t, &img).0)
    }

    pub fn syzygy_power(&self, m: &Rep<F>, k: usize) -> Result<Rep<F>> {
        let mut cur = m.clone();
        for _ in 0..k {
            cur = self.syzygy(&cur)?;
        }
        Ok(cur)
    }

    pub fn cosyzygy_power(&self, m: &Rep<F>, k: usize) -> Result<Rep<F>> {
        let mut cur = m.clone();
        for _ in 0..k {
            cur = self.cosyzygy(&cur)?;
        }
        Ok(cur)
    }

    /// Whether `M` is projective (its cover is an isomorphism).
    pub fn is_projective(&self, m: &Rep<F>) -> Result<bool> {
        Ok(self.cover(m)?.rep.dim() == m.dim())
    }
}
