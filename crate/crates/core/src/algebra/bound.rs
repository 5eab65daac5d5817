//! Quivers with the two-rhombus, mirror and star relations.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::signs::SignScheme;
use crate::quiver::Quiver;
use crate::tiling::LatticePoint;

/// A homogeneous degree-2 relation `Σ c·(a_1 a_2)` starting at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// `(first arrow, second arrow, coefficient)`
    pub terms: Vec<(usize, usize, i64)>,
}

/// A finite quiver with relations generated in degree 2.
///
/// `relations[u]` is `None` when the relations at `u` cannot be written down
/// (the star of `u` or of a neighbour is not fully known); the same holds for
/// `arrows_known[u]` and the arrows leaving `u`.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    pub points: Vec<LatticePoint>,
    pub arrows: Vec<(usize, usize)>,
    pub out: Vec<Vec<usize>>,
    pub arrows_known: Vec<bool>,
    pub relations: Vec<Option<Vec<Relation>>>,
}

impl BoundQuiver {
    pub fn nverts(&self) -> usize {
        self.points.len()
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].0
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].1
    }

    /// The rhombal relations of the full tiling, written down wherever the
    /// patch `q` determines them.
    pub fn rhombal(q: &Quiver, signs: SignScheme) -> Self {
        let n = q.vertices.len();
        let arrows: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.from, a.to)).collect();
        let arrows_known: Vec<bool> = (0..n).map(|v| q.is_complete(v)).collect();
        let relations = (0..n)
            .map(|u| {
                let ok = arrows_known[u] && q.neighbours(u).all(|v| arrows_known[v]);
                ok.then(|| full_relations(q, u, signs))
            })
            .collect();
        Self { points: q.vertices.clone(), arrows, out: q.out_arrows.clone(), arrows_known, relations }
    }

    /// Relations imposed on the truncated quiver `qi`: paths using arrows that
    /// are not in `qi` are read as zero, while rhombus geometry is taken from
    /// the larger patch `full`.
    pub fn restricted(qi: &Quiver, full: &Quiver, signs: SignScheme) -> Self {
        let n = qi.vertices.len();
        let arrows: Vec<(usize, usize)> = qi.arrows.iter().map(|a| (a.from, a.to)).collect();
        let relations = (0..n).map(|u| Some(restricted_relations(qi, full, u, signs))).collect();
        Self { points: qi.vertices.clone(), arrows, out: qi.out_arrows.clone(), arrows_known: vec![true; n], relations }
    }
}

fn star_relations(q: &Quiver, u: usize, present: impl Fn(usize) -> bool, signs: SignScheme) -> Vec<Relation> {
    let sigma = signs.sigma(q.point(u));
    // D_j as lists of (arrow, reverse, sign)
    let mut d: [Vec<(usize, usize, i64)>; 3] = [vec![], vec![], vec![]];
    for &a in &q.out_arrows[u] {
        let r = q.reverse(a);
        if !present(a) || !present(r) {
            continue;
        }
        let (j, s) = q.direction(a);
        d[(j - 1) as usize].push((a, r, s as i64));
    }
    let mut out = Vec::new();
    for (i, j) in [(0usize, 1usize), (1, 2)] {
        let mut terms: Vec<(usize, usize, i64)> = Vec::new();
        for &(a, r, s) in &d[i] {
            terms.push((a, r, s * sigma[i] as i64));
        }
        for &(a, r, s) in &d[j] {
            terms.push((a, r, -s * sigma[j] as i64));
        }
        if !terms.is_empty() {
            out.push(Relation { terms });
        }
    }
    out
}

fn full_relations(q: &Quiver, u: usize, signs: SignScheme) -> Vec<Relation> {
    let mut out = star_relations(q, u, |_| true, signs);
    let mut seen = BTreeSet::new();
    for &a in &q.out_arrows[u] {
        let v = q.arrows[a].to;
        for &b in &q.out_arrows[v] {
            let w = q.arrows[b].to;
            if w == u {
                continue;
            }
            match q.common_face(u, v, w) {
                None => out.push(Relation { terms: vec![(a, b, 1)] }),
                Some(face) => {
                    let v2 = face.opposite(v).unwrap();
                    let key = (w, v.min(v2), v.max(v2));
                    if !seen.insert(key) {
                        continue;
                    }
                    let a2 = q.arrow(u, v2).unwrap();
                    let b2 = q.arrow(v2, w).unwrap();
                    out.push(Relation { terms: vec![(a, b, 1), (a2, b2, -1)] });
                }
            }
        }
    }
    out
}

fn restricted_relations(qi: &Quiver, full: &Quiver, u: usize, signs: SignScheme) -> Vec<Relation> {
    let fu = full.vertex(qi.point(u)).expect("patch vertex inside padded patch");
    let mut out = star_relations(qi, u, |_| true, signs);
    let mut seen = BTreeSet::new();
    for &a in &qi.out_arrows[u] {
        let v = qi.arrows[a].to;
        for &b in &qi.out_arrows[v] {
            let w = qi.arrows[b].to;
            if w == u {
                continue;
            }
            let fv = full.vertex(qi.point(v)).unwrap();
            let fw = full.vertex(qi.point(w)).unwrap();
            match full.common_face(fu, fv, fw) {
                None => out.push(Relation { terms: vec![(a, b, 1)] }),
                Some(face) => {
                    let v2p = full.point(face.opposite(fv).unwrap());
                    let other = qi.vertex(v2p).and_then(|v2| Some((v2, qi.arrow(u, v2)?, qi.arrow(v2, w)?)));
                    match other {
                        Some((v2, a2, b2)) => {
                            let key = (w, v.min(v2), v.max(v2));
                            if seen.insert(key) {
                                out.push(Relation { terms: vec![(a, b, 1), (a2, b2, -1)] });
                            }
                        }
                        None => out.push(Relation { terms: vec![(a, b, 1)] }),
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{padded_patch, DEFAULT_TILE_BUDGET};

    #[test]
    fn interior_relations_counts() {
        let pp = padded_patch(3, 6, DEFAULT_TILE_BUDGET).unwrap();
        let q = Quiver::from_patch(&pp.padded);
        let bq = BoundQuiver::rhombal(&q, SignScheme::Parity);
        let o = q.vertex(LatticePoint::ORIGIN).unwrap();
        let rels = bq.relations[o].as_ref().unwrap();
        // two star relations; every length-2 path from o either is killed or
        // paired with its mirror
        let n = q.degree(o);
        let paths: usize = q.neighbours(o).map(|v| q.degree(v) - 1).sum();
        let mirrors = rels.iter().filter(|r| r.terms.len() == 2 && r.terms[0].1 != q.reverse(r.terms[0].0)).count();
        let zeros = rels.iter().filter(|r| r.terms.len() == 1).count();
        assert_eq!(zeros + 2 * mirrors, paths);
        assert!(rels.len() >= 2 && n >= 3);
    }
}
