//! The double-arrow quiver of a patch, vertex classes and horizontal lines.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::tiling::{step_direction, LatticePoint, PaddedPatch, Patch, Rhombus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub edge: usize,
}

/// Rhombus with corners given as vertex indices `[a, a+u, a+v, a+u+v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub tile: Rhombus,
    pub corners: [usize; 4],
}

impl Face {
    pub fn contains(&self, v: usize) -> bool {
        self.corners.contains(&v)
    }

    pub fn opposite(&self, v: usize) -> Option<usize> {
        let [a, b, c, d] = self.corners;
        match v {
            _ if v == a => Some(d),
            _ if v == d => Some(a),
            _ if v == b => Some(c),
            _ if v == c => Some(b),
            _ => None,
        }
    }

    /// 2 at the obtuse corners, 1 at the acute ones (units of 60°).
    pub fn angle_at(&self, v: usize) -> Option<u8> {
        let [a, b, c, d] = self.corners;
        if v == a || v == d {
            Some(2)
        } else if v == b || v == c {
            Some(1)
        } else {
            None
        }
    }
}

/// Vertices, edges, arrows (two per edge) and incident rhombi of a patch.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertices: Vec<LatticePoint>,
    index: BTreeMap<LatticePoint, usize>,
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<Arrow>,
    pub faces: Vec<Face>,
    pub out_arrows: Vec<Vec<usize>>,
    pub faces_at: Vec<Vec<usize>>,
    pub faces_on_edge: Vec<Vec<usize>>,
    edge_index: BTreeMap<(usize, usize), usize>,
    pub angle: Vec<u8>,
}

impl Quiver {
    pub fn from_patch(p: &Patch) -> Self {
        let vertices: Vec<LatticePoint> = p.vertices().into_iter().collect();
        let index: BTreeMap<_, _> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut edge_index = BTreeMap::new();
        let mut edges = Vec::new();
        for (a, b) in p.edges() {
            let (a, b) = (index[&a], index[&b]);
            edge_index.insert((a, b), edges.len());
            edge_index.insert((b, a), edges.len());
            edges.push((a, b));
        }
        let mut arrows = Vec::with_capacity(2 * edges.len());
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            out_arrows[a].push(arrows.len());
            arrows.push(Arrow { from: a, to: b, edge: e });
            out_arrows[b].push(arrows.len());
            arrows.push(Arrow { from: b, to: a, edge: e });
        }
        let mut faces = Vec::new();
        let mut faces_at = vec![Vec::new(); vertices.len()];
        let mut faces_on_edge = vec![Vec::new(); edges.len()];
        let mut angle = vec![0u8; vertices.len()];
        for t in &p.tiles {
            let c = t.corners().map(|x| index[&x]);
            let f = Face { tile: *t, corners: c };
            for &v in &c {
                faces_at[v].push(faces.len());
                angle[v] += f.angle_at(v).unwrap();
            }
            for (x, y) in [(c[0], c[1]), (c[0], c[2]), (c[1], c[3]), (c[2], c[3])] {
                faces_on_edge[edge_index[&(x, y)]].push(faces.len());
            }
            faces.push(f);
        }
        Self { vertices, index, edges, arrows, faces, out_arrows, faces_at, faces_on_edge, edge_index, angle }
    }

    pub fn vertex(&self, p: LatticePoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn point(&self, v: usize) -> LatticePoint {
        self.vertices[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a, b)).copied()
    }

    /// Arrow index for `a → b`.
    pub fn arrow(&self, a: usize, b: usize) -> Option<usize> {
        let e = self.edge_between(a, b)?;
        Some(if self.edges[e].0 == a { 2 * e } else { 2 * e + 1 })
    }

    /// The arrow in the opposite direction.
    pub fn reverse(&self, arrow: usize) -> usize {
        arrow ^ 1
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[v].iter().map(move |&a| self.arrows[a].to)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_arrows[v].len()
    }

    pub fn is_complete(&self, v: usize) -> bool {
        self.angle[v] == 6
    }

    /// A face containing the three vertices `u, v, w` (with `v` adjacent to both).
    pub fn common_face(&self, u: usize, v: usize, w: usize) -> Option<&Face> {
        self.faces_at[v].iter().map(|&f| &self.faces[f]).find(|f| f.contains(u) && f.contains(w))
    }

    /// Unit-step direction of the arrow, `(j, ±1)` for `±p(e_j)`.
    pub fn direction(&self, arrow: usize) -> (u8, i8) {
        let a = self.arrows[arrow];
        step_direction(self.point(a.to).diff(self.point(a.from))).expect("unit lattice step")
    }

    /// Neighbours of `v` ordered counterclockwise, starting at the positive
    /// `m` axis side.
    pub fn ccw_neighbours(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.neighbours(v).collect();
        ns.sort_by_key(|&w| angle_index(self.point(w).diff(self.point(v))));
        ns
    }

    pub fn bfs_distances(&self, seeds: &BTreeSet<usize>, limit: usize) -> BTreeMap<usize, usize> {
        let mut dist: BTreeMap<usize, usize> = seeds.iter().map(|&s| (s, 0)).collect();
        let mut frontier: Vec<usize> = seeds.iter().copied().collect();
        for d in 1..=limit {
            let mut next = Vec::new();
            for v in frontier {
                for w in self.neighbours(v) {
                    if let alloc::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// Position (0..6) of a unit step on the circle, counterclockwise from 30°.
pub fn angle_index(d: (i64, i64)) -> u8 {
    // real angles: -e1 30°, e3 90°, -e2 150°, e1 210°, -e3 270°, e2 330°
    match d {
        (1, 1) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        (-1, -1) => 3,
        (0, -1) => 4,
        (1, 0) => 5,
        _ => panic!("not a unit step: {d:?}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexClass {
    /// Degree in the truncated quiver.
    pub k: u8,
    /// Degree in the full tiling.
    pub n: u8,
    pub boundary: bool,
    /// For isolated (`k = 2`) vertices: whether the single tile is acute there.
    pub acute: Option<bool>,
}

impl VertexClass {
    pub fn isolated(&self) -> bool {
        self.k == 2
    }
}

pub fn classify_vertices(q: &Quiver, padded: &PaddedPatch) -> BTreeMap<LatticePoint, VertexClass> {
    let mut out = BTreeMap::new();
    for (v, p) in q.vertices.iter().enumerate() {
        let k = q.degree(v) as u8;
        let n = padded.degree[p];
        let acute = (k == 2).then(|| {
            let f = &q.faces[q.faces_at[v][0]];
            f.angle_at(v) == Some(1)
        });
        out.insert(*p, VertexClass { k, n, boundary: !q.is_complete(v), acute });
    }
    out
}

pub fn class_histogram(classes: &BTreeMap<LatticePoint, VertexClass>) -> BTreeMap<(u8, u8), usize> {
    let mut h = BTreeMap::new();
    for c in classes.values() {
        *h.entry((c.k, c.n)).or_insert(0) += 1;
    }
    h
}

pub fn is_horizontal(q: &Quiver, arrow: usize) -> bool {
    q.direction(arrow).0 != 3
}

/// A horizontal line between two boundary vertices on one level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HorizontalLine {
    /// Vertices of the line, sorted by lattice point.
    pub vertices: Vec<LatticePoint>,
    pub left: LatticePoint,
    pub right: LatticePoint,
    /// Number of horizontal edges on a shortest left-to-right walk.
    pub width: usize,
    /// Horizontal edges of the line.
    pub edges: Vec<(LatticePoint, LatticePoint)>,
}

/// Connected components of the horizontal-edge subgraph.
pub fn levels(q: &Quiver) -> Vec<Vec<usize>> {
    let mut seen = vec![false; q.vertices.len()];
    let mut out = Vec::new();
    for s in 0..q.vertices.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &q.out_arrows[v] {
                let w = q.arrows[a].to;
                if is_horizontal(q, a) && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// All horizontal lines joining consecutive boundary vertices of a level.
pub fn find_horizontal_lines(q: &Quiver) -> Vec<HorizontalLine> {
    let mut out = Vec::new();
    for comp in levels(q) {
        let mut bnd: Vec<usize> = comp.iter().copied().filter(|&v| !q.is_complete(v)).collect();
        bnd.sort_by_key(|&v| (q.point(v).m, q.point(v).n));
        for pair in bnd.windows(2) {
            let (l, r) = (pair[0], pair[1]);
            let (ml, mr) = (q.point(l).m, q.point(r).m);
            if ml == mr {
                continue;
            }
            let inside: BTreeSet<usize> = comp.iter().copied().filter(|&v| (ml..=mr).contains(&q.point(v).m)).collect();
            // interior vertices between the ends only; another boundary vertex
            // strictly inside would split the line
            if inside.iter().any(|&v| v != l && v != r && !q.is_complete(v) && q.point(v).m != ml && q.point(v).m != mr)
            {
                continue;
            }
            let mut edges = Vec::new();
            for &v in &inside {
                for &a in &q.out_arrows[v] {
                    let w = q.arrows[a].to;
                    if is_horizontal(q, a) && inside.contains(&w) && v < w {
                        edges.push((q.point(v), q.point(w)));
                    }
                }
            }
            edges.sort();
            let mut vertices: Vec<LatticePoint> = inside.iter().map(|&v| q.point(v)).collect();
            vertices.sort();
            out.push(HorizontalLine {
                vertices,
                left: q.point(l),
                right: q.point(r),
                width: (mr - ml) as usize,
                edges,
            });
        }
    }
    out.sort();
    out
}

/// Lines whose two ends are boundary 4-vertices.
pub fn find_periodic_line_candidates(q: &Quiver, classes: &BTreeMap<LatticePoint, VertexClass>) -> Vec<HorizontalLine> {
    find_horizontal_lines(q)
        .into_iter()
        .filter(|l| {
            let (a, b) = (classes[&l.left], classes[&l.right]);
            a.boundary && b.boundary && a.n == 4 && b.n == 4 && l.width >= 2
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{generate_patch, padded_patch, DEFAULT_TILE_BUDGET};

    #[test]
    fn initial_quiver_counts() {
        let q = Quiver::from_patch(&Patch::initial());
        assert_eq!((q.vertices.len(), q.edges.len(), q.arrows.len()), (7, 9, 18));
        let single = Patch { level: 0, tiles: vec![Rhombus::new(2, [0; 3])] };
        let q1 = Quiver::from_patch(&single);
        assert_eq!((q1.vertices.len(), q1.edges.len(), q1.arrows.len()), (4, 4, 8));
    }

    #[test]
    fn origin_is_three_three() {
        let pp = padded_patch(0, 6, DEFAULT_TILE_BUDGET).unwrap();
        let q = Quiver::from_patch(&pp.base);
        let c = classify_vertices(&q, &pp);
        let o = c[&LatticePoint::ORIGIN];
        assert_eq!((o.k, o.n, o.boundary), (3, 3, false));
    }

    #[test]
    fn edges_have_one_or_two_faces() {
        let p = generate_patch(5, DEFAULT_TILE_BUDGET).unwrap();
        let q = Quiver::from_patch(&p);
        assert!(q.faces_on_edge.iter().all(|f| (1..=2).contains(&f.len())));
        assert!(q.angle.iter().all(|&a| a <= 6));
        for a in 0..q.arrows.len() {
            assert_eq!(q.arrows[q.reverse(a)].from, q.arrows[a].to);
        }
    }

    #[test]
    fn class_bounds_up_to_level_eight() {
        for i in 0..=8 {
            let pp = padded_patch(i, 6, DEFAULT_TILE_BUDGET).unwrap();
            let q = Quiver::from_patch(&pp.base);
            for c in classify_vertices(&q, &pp).values() {
                assert!(c.k <= c.n && c.n - c.k <= 3);
                assert!(!(c.k == 2 && c.n == 6));
                if c.isolated() {
                    assert_eq!(c.acute, Some(false));
                }
            }
        }
    }

    #[test]
    fn initial_patch_has_no_candidates() {
        let pp = padded_patch(0, 6, DEFAULT_TILE_BUDGET).unwrap();
        let q = Quiver::from_patch(&pp.base);
        let c = classify_vertices(&q, &pp);
        assert!(find_periodic_line_candidates(&q, &c).is_empty());
    }

    #[test]
    fn ccw_order_is_a_rotation() {
        let p = generate_patch(4, DEFAULT_TILE_BUDGET).unwrap();
        let q = Quiver::from_patch(&p);
        for v in 0..q.vertices.len() {
            let ns = q.ccw_neighbours(v);
            let idx: Vec<u8> = ns.iter().map(|&w| angle_index(q.point(w).diff(q.point(v)))).collect();
            assert!(idx.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
