//! Homomorphism spaces, stable homs and isomorphism tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rep::{Rep, RepMap};
use super::Modules;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Nullspace, Subspace, Vector};

/// Unknown layout for `Hom(M, N)`: one block `dim M_v × dim N_v` per vertex.
struct Layout {
    blocks: BTreeMap<usize, (usize, usize, usize)>,
    nvars: usize,
}

impl Layout {
    fn new<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Self {
        let mut blocks = BTreeMap::new();
        let mut nvars = 0;
        for (&v, &dm) in &m.dims {
            let dn = n.dim_at(v);
            if dn > 0 {
                blocks.insert(v, (nvars, dm, dn));
                nvars += dm * dn;
            }
        }
        Self { blocks, nvars }
    }

    fn var(&self, v: usize, r: usize, c: usize) -> Option<usize> {
        self.blocks.get(&v).map(|&(o, _, dn)| o + r * dn + c)
    }

    fn to_map<F: Field>(&self, x: &[F::Elem]) -> RepMap<F> {
        let mats = self
            .blocks
            .iter()
            .map(|(&v, &(o, dm, dn))| (v, (0..dm).map(|r| x[o + r * dn..o + (r + 1) * dn].to_vec()).collect()))
            .collect();
        RepMap { mats }
    }

    fn flatten<F: Field>(&self, f: &F, map: &RepMap<F>) -> Vector<F> {
        let mut x = crate::linalg::zero_vec(f, self.nvars);
        for (&v, &(o, dm, dn)) in &self.blocks {
            if let Some(a) = map.mats.get(&v) {
                for r in 0..dm {
                    for c in 0..dn {
                        x[o + r * dn + c] = a[r][c].clone();
                    }
                }
            }
        }
        x
    }
}

impl<F: Field> Modules<'_, '_, F> {
    /// A basis of `Hom(M, N)`.
    pub fn hom(&self, m: &Rep<F>, n: &Rep<F>) -> Vec<RepMap<F>> {
        let f = self.field();
        let t = self.t;
        let lay = Layout::new(m, n);
        if lay.nvars == 0 {
            return Vec::new();
        }
        let mut ns = Nullspace::new(lay.nvars);
        // f(m·g) = f(m)·g:  A^M_g X_t = X_s A^N_g
        for (&s, &dms) in &m.dims {
            for &g in t.gens_from(s) {
                let tv = t.gens[g].tgt;
                let dnt = n.dim_at(tv);
                if dnt == 0 {
                    continue;
                }
                let am = m.act.get(&g);
                let an = n.act.get(&g);
                if am.is_none() && an.is_none() {
                    continue;
                }
                for r in 0..dms {
                    for c in 0..dnt {
                        let mut terms: Vec<(usize, F::Elem)> = Vec::new();
                        if let Some(a) = am {
                            for (k, x) in a[r].iter().enumerate() {
                                if !f.is_zero(x) {
                                    terms.push((lay.var(tv, k, c).unwrap(), x.clone()));
                                }
                            }
                        }
                        if let Some(a) = an {
                            for (k, row) in a.iter().enumerate() {
                                if !f.is_zero(&row[c]) {
                                    if let Some(i) = lay.var(s, r, k) {
                                        terms.push((i, f.neg(&row[c])));
                                    }
                                }
                            }
                        }
                        if !terms.is_empty() {
                            ns.add_sparse(f, &terms);
                        }
                    }
                }
            }
        }
        ns.solve(f).iter().map(|x| lay.to_map(x)).collect()
    }

    pub fn hom_dim(&self, m: &Rep<F>, n: &Rep<F>) -> usize {
        self.hom(m, n).len()
    }

    /// `dim Hom(M, N)` modulo maps factoring through a projective, which
    /// all factor through the projective cover of `N`.
    pub fn stable_hom_dim(&self, m: &Rep<F>, n: &Rep<F>) -> Result<usize> {
        let f = self.field();
        let homs = self.hom(m, n);
        if homs.is_empty() {
            return Ok(0);
        }
        let cover = self.cover(n)?;
        let lay = Layout::new(m, n);
        let mut proj = Subspace::new(lay.nvars);
        for h in self.hom(m, &cover.rep) {
            let comp = h.then(f, &cover.map, &cover.rep, n);
            proj.insert(f, lay.flatten(f, &comp));
        }
        Ok(homs.len() - proj.dim())
    }

    /// An isomorphism `M → N`, if one is found.
    pub fn find_iso(&self, m: &Rep<F>, n: &Rep<F>) -> Option<RepMap<F>> {
        if m.dims != n.dims {
            return None;
        }
        if m.is_zero() {
            return Some(RepMap::zero());
        }
        let f = self.field();
        let homs = self.hom(m, n);
        if homs.is_empty() {
            return None;
        }
        for h in &homs {
            if h.is_iso(f, m, n) {
                return Some(h.clone());
            }
        }
        for _ in 0..48 {
            let c: Vec<F::Elem> = (0..homs.len()).map(|_| self.random()).collect();
            let h = RepMap::combination(f, &homs, &c, m, n);
            if h.is_iso(f, m, n) {
                return Some(h);
            }
        }
        None
    }

    pub fn is_iso(&self, m: &Rep<F>, n: &Rep<F>) -> bool {
        self.find_iso(m, n).is_some()
    }
}
