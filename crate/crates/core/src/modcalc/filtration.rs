//! Rhombus modules and rhombus filtrations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::rep::{Rep, Spaces};
use super::Modules;
use crate::field::Field;
use crate::linalg::{unit_vec, Subspace, Vector};
use crate::quiver::Quiver;

/// `(top, socle)` of a rhombus module `R^y_z`.
pub type RhombusLabel = (usize, usize);

/// Recognises `R^y_z`: dimension 4, radical layers `S_y / S_{x_1} ⊕ S_{x_2} / S_z`
/// over the corners of one rhombus with `y` opposite `z`.
pub fn rhombus_label<F: Field>(m: &Modules<'_, '_, F>, q: &Quiver, r: &Rep<F>) -> Option<RhombusLabel> {
    if r.dim() != 4 {
        return None;
    }
    let layers = r.loewy_layers(m.t);
    if layers.len() != 3 || layers.iter().map(|l| l.len()).collect::<Vec<_>>() != [1, 2, 1] {
        return None;
    }
    if layers.iter().any(|l| l.values().any(|&d| d != 1)) {
        return None;
    }
    let y = *layers[0].keys().next()?;
    let z = *layers[2].keys().next()?;
    let face = q.faces_at[z].iter().map(|&f| &q.faces[f]).find(|f| f.opposite(z) == Some(y))?;
    let mids: BTreeSet<usize> = face.corners.iter().copied().filter(|&c| c != y && c != z).collect();
    (mids == layers[1].keys().copied().collect()).then_some((y, z))
}

impl<F: Field> Modules<'_, '_, F> {
    /// Closure of one element, abandoned once it exceeds `limit`.
    fn cyclic(&self, r: &Rep<F>, v: usize, m: &[F::Elem], limit: usize) -> Option<Spaces<F>> {
        let f = self.field();
        let mut sp = r.zero_spaces();
        let mut queue = alloc::collections::VecDeque::new();
        sp.get_mut(&v)?.insert(f, m.to_vec());
        queue.push_back((v, m.to_vec()));
        let mut total = 1;
        while let Some((u, w)) = queue.pop_front() {
            for g in r.gens_at(self.t, u) {
                let img = r.apply(self.t, &w, g);
                let tv = self.t.gens[g].tgt;
                if sp.get_mut(&tv).unwrap().insert(f, img.clone()) {
                    total += 1;
                    if total > limit {
                        return None;
                    }
                    queue.push_back((tv, img));
                }
            }
        }
        Some(sp)
    }

    /// Rhombus submodules `mA` for `m` among basis vectors and a few random
    /// vectors of each vertex space.
    pub fn rhombus_submodules(&self, q: &Quiver, r: &Rep<F>, random_tries: usize) -> Vec<(RhombusLabel, Spaces<F>)> {
        let f = self.field();
        let mut out: Vec<(RhombusLabel, Spaces<F>)> = Vec::new();
        for (&v, &d) in &r.dims {
            let mut cands: Vec<Vector<F>> = (0..d).map(|i| unit_vec(f, d, i)).collect();
            for _ in 0..random_tries {
                cands.push((0..d).map(|_| self.random()).collect());
            }
            for c in cands {
                if crate::linalg::is_zero_vec(f, &c) {
                    continue;
                }
                let Some(sp) = self.cyclic(r, v, &c, 4) else { continue };
                if Rep::spaces_dim(&sp) != 4 {
                    continue;
                }
                let (sub, _) = r.sub(self.t, &sp);
                let Some(label) = rhombus_label(self, q, &sub) else { continue };
                let dup = out.iter().any(|(_, o)| same_spaces(f, o, &sp));
                if !dup {
                    out.push((label, sp));
                }
            }
        }
        out
    }

    /// Depth-first search for rhombus filtrations, returning up to `max`
    /// chains with distinct label sequences (bottom first). An empty result
    /// does not prove that no filtration exists.
    pub fn rhombus_filtrations(&self, q: &Quiver, r: &Rep<F>, max: usize) -> Vec<Vec<RhombusLabel>> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.filtration_dfs(q, r, &mut Vec::new(), &mut out, &mut seen, max);
        out
    }

    fn filtration_dfs(
        &self,
        q: &Quiver,
        r: &Rep<F>,
        chain: &mut Vec<RhombusLabel>,
        out: &mut Vec<Vec<RhombusLabel>>,
        seen: &mut BTreeSet<Vec<RhombusLabel>>,
        max: usize,
    ) -> bool {
        if out.len() >= max {
            return true;
        }
        if r.is_zero() {
            if seen.insert(chain.clone()) {
                out.push(chain.clone());
            }
            return true;
        }
        if !r.dim().is_multiple_of(4) {
            return false;
        }
        let mut found = false;
        for (label, sp) in self.rhombus_submodules(q, r, 2) {
            let (quo, _) = r.quotient(self.t, &sp);
            chain.push(label);
            found |= self.filtration_dfs(q, &quo, chain, out, seen, max);
            chain.pop();
            if out.len() >= max {
                break;
            }
        }
        found
    }
}

fn same_spaces<F: Field>(f: &F, a: &Spaces<F>, b: &Spaces<F>) -> bool {
    let dim = |s: &Spaces<F>, v: usize| s.get(&v).map_or(0, Subspace::dim);
    a.keys().chain(b.keys()).all(|&v| dim(a, v) == dim(b, v))
        && a.iter().all(|(v, s)| s.dim() == 0 || s.is_subspace_of(f, &b[v]))
}
