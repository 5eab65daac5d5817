//! Rauzy tiling patches built by the substitution on projected cube faces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A point of `Z^3`, the representative carried through the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubePoint(pub [i64; 3]);

/// A point `m·p(e2) + n·p(e3)` of the planar lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
}

impl LatticePoint {
    pub const ORIGIN: Self = Self { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn offset(self, d: (i64, i64)) -> Self {
        Self::new(self.m + d.0, self.n + d.1)
    }

    pub fn diff(self, other: Self) -> (i64, i64) {
        (self.m - other.m, self.n - other.n)
    }

    /// Cartesian coordinates in the plane (y pointing up).
    pub fn embed(self) -> (f64, f64) {
        const S: f64 = 0.866_025_403_784_438_6;
        (self.m as f64 * S, self.n as f64 - 0.5 * self.m as f64)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// `p(e_j)` in lattice coordinates, `j = 1, 2, 3`.
pub const fn direction(j: u8) -> (i64, i64) {
    match j {
        1 => (-1, -1),
        2 => (1, 0),
        _ => (0, 1),
    }
}

/// Classifies a unit step as `(j, +1)` for `p(e_j)` or `(j, -1)` for `-p(e_j)`.
pub fn step_direction(d: (i64, i64)) -> Option<(u8, i8)> {
    for j in 1..=3u8 {
        let e = direction(j);
        if d == e {
            return Some((j, 1));
        }
        if d == (-e.0, -e.1) {
            return Some((j, -1));
        }
    }
    None
}

pub fn project(z: CubePoint) -> LatticePoint {
    let [a, b, c] = z.0;
    LatticePoint::new(b - a, c - a)
}

fn mul_m(z: CubePoint) -> Result<CubePoint> {
    let [a, b, c] = z.0;
    let third = a.checked_sub(b).and_then(|x| x.checked_sub(c)).ok_or(Error::Overflow)?;
    Ok(CubePoint([b, c, third]))
}

fn add(z: CubePoint, w: [i64; 3]) -> Result<CubePoint> {
    let mut out = [0i64; 3];
    for i in 0..3 {
        out[i] = z.0[i].checked_add(w[i]).ok_or(Error::Overflow)?;
    }
    Ok(CubePoint(out))
}

const C2: [i64; 3] = [1, 0, -1];
const C3: [i64; 3] = [0, 1, -1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rhombus {
    /// 1, 2 or 3
    pub kind: u8,
    pub anchor: CubePoint,
}

impl Rhombus {
    pub const fn new(kind: u8, anchor: [i64; 3]) -> Self {
        Self { kind, anchor: CubePoint(anchor) }
    }

    /// The two edge directions, `p(e_j)` for `j ≠ kind`, ascending in `j`.
    pub fn sides(&self) -> ((i64, i64), (i64, i64)) {
        let mut it = (1..=3u8).filter(|&j| j != self.kind).map(direction);
        (it.next().unwrap(), it.next().unwrap())
    }

    /// Corners `[a, a+u, a+v, a+u+v]`; `a` and `a+u+v` are the obtuse corners.
    pub fn corners(&self) -> [LatticePoint; 4] {
        let a = project(self.anchor);
        let (u, v) = self.sides();
        [a, a.offset(u), a.offset(v), a.offset((u.0 + v.0, u.1 + v.1))]
    }

    /// The two unit triangles, each as a sorted corner triple.
    pub fn triangles(&self) -> [[LatticePoint; 3]; 2] {
        let [a, au, av, auv] = self.corners();
        let mut t1 = [a, au, auv];
        let mut t2 = [a, av, auv];
        t1.sort();
        t2.sort();
        [t1, t2]
    }

    /// Boundary edges as sorted pairs.
    pub fn edges(&self) -> [(LatticePoint, LatticePoint); 4] {
        let [a, au, av, auv] = self.corners();
        [sorted(a, au), sorted(a, av), sorted(au, auv), sorted(av, auv)]
    }

    /// Interior angle at a corner, in units of 60°.
    pub fn angle_at(&self, p: LatticePoint) -> Option<u8> {
        let [a, au, av, auv] = self.corners();
        if p == a || p == auv {
            Some(2)
        } else if p == au || p == av {
            Some(1)
        } else {
            None
        }
    }

    pub fn opposite(&self, p: LatticePoint) -> Option<LatticePoint> {
        let [a, au, av, auv] = self.corners();
        match p {
            _ if p == a => Some(auv),
            _ if p == auv => Some(a),
            _ if p == au => Some(av),
            _ if p == av => Some(au),
            _ => None,
        }
    }

    /// Planar key: type together with the projected anchor.
    pub fn key(&self) -> (u8, LatticePoint) {
        (self.kind, project(self.anchor))
    }
}

fn sorted(a: LatticePoint, b: LatticePoint) -> (LatticePoint, LatticePoint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One substitution step applied to a single tile.
pub fn substitute(r: &Rhombus) -> Result<Vec<Rhombus>> {
    let mz = mul_m(r.anchor)?;
    Ok(match r.kind {
        1 => vec![
            Rhombus { kind: 3, anchor: mz },
            Rhombus { kind: 1, anchor: add(mz, C2)? },
            Rhombus { kind: 2, anchor: add(mz, C3)? },
        ],
        2 => vec![Rhombus { kind: 1, anchor: mz }],
        _ => vec![Rhombus { kind: 2, anchor: mz }],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub level: usize,
    pub tiles: Vec<Rhombus>,
}

/// Default cap on the number of tiles a generated patch may hold.
pub const DEFAULT_TILE_BUDGET: usize = 2_000_000;

impl Patch {
    pub fn initial() -> Self {
        Self { level: 0, tiles: vec![Rhombus::new(1, [0; 3]), Rhombus::new(2, [0; 3]), Rhombus::new(3, [0; 3])] }
    }

    pub fn substituted(&self) -> Result<Self> {
        let mut tiles = Vec::with_capacity(self.tiles.len() * 2);
        for t in &self.tiles {
            tiles.extend(substitute(t)?);
        }
        Ok(Self { level: self.level + 1, tiles })
    }

    pub fn type_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for t in &self.tiles {
            c[(t.kind - 1) as usize] += 1;
        }
        c
    }

    pub fn vertices(&self) -> BTreeSet<LatticePoint> {
        self.tiles.iter().flat_map(|t| t.corners()).collect()
    }

    pub fn edges(&self) -> BTreeSet<(LatticePoint, LatticePoint)> {
        self.tiles.iter().flat_map(|t| t.edges()).collect()
    }

    /// Sum of tile angles at each vertex, in units of 60°.
    pub fn angle_sums(&self) -> BTreeMap<LatticePoint, u8> {
        let mut m = BTreeMap::new();
        for t in &self.tiles {
            for c in t.corners() {
                *m.entry(c).or_insert(0u8) += t.angle_at(c).unwrap();
            }
        }
        m
    }

    /// Neighbours of every vertex along patch edges.
    pub fn adjacency(&self) -> BTreeMap<LatticePoint, BTreeSet<LatticePoint>> {
        let mut m: BTreeMap<LatticePoint, BTreeSet<LatticePoint>> = BTreeMap::new();
        for (a, b) in self.edges() {
            m.entry(a).or_default().insert(b);
            m.entry(b).or_default().insert(a);
        }
        m
    }

    pub fn keys(&self) -> BTreeSet<(u8, LatticePoint)> {
        self.tiles.iter().map(Rhombus::key).collect()
    }
}

/// `P_i`. Fails if the patch would exceed `budget` tiles.
pub fn generate_patch(i: usize, budget: usize) -> Result<Patch> {
    iterate(Patch::initial(), i, budget)
}

/// `R^i(R_k)`, the part of `P_i` descending from the initial tile of type `k`.
pub fn generate_subpatch(i: usize, k: u8, budget: usize) -> Result<Patch> {
    let start = Patch { level: 0, tiles: vec![Rhombus::new(k, [0; 3])] };
    iterate(start, i, budget)
}

fn iterate(mut p: Patch, i: usize, budget: usize) -> Result<Patch> {
    // totals follow the tribonacci-type recurrence; check before allocating
    let mut counts = p.type_counts();
    for _ in 0..i {
        counts = [counts[0] + counts[1], counts[0] + counts[2], counts[0]];
        if counts.iter().sum::<usize>() > budget {
            return Err(Error::Budget { level: i, budget });
        }
    }
    for _ in 0..i {
        p = p.substituted()?;
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    /// First pair of tiles sharing a unit triangle.
    pub overlap: Option<(Rhombus, Rhombus)>,
    pub connected: bool,
    pub triangles: usize,
    pub vertices: usize,
    pub edges: usize,
    pub interior_vertices: usize,
    /// `V − E + F` with the rhombi as faces.
    pub euler: i64,
}

pub fn validate_patch(p: &Patch) -> ValidityReport {
    let mut seen: BTreeMap<[LatticePoint; 3], usize> = BTreeMap::new();
    let mut overlap = None;
    for (idx, t) in p.tiles.iter().enumerate() {
        for tri in t.triangles() {
            if let Some(&prev) = seen.get(&tri) {
                if overlap.is_none() {
                    overlap = Some((p.tiles[prev], *t));
                }
            } else {
                seen.insert(tri, idx);
            }
        }
    }
    let connected = edge_connected(p);
    let vertices = p.vertices().len();
    let edges = p.edges().len();
    let interior = p.angle_sums().values().filter(|&&a| a == 6).count();
    ValidityReport {
        valid: overlap.is_none() && connected,
        overlap,
        connected,
        triangles: 2 * p.tiles.len(),
        vertices,
        edges,
        interior_vertices: interior,
        euler: vertices as i64 - edges as i64 + p.tiles.len() as i64,
    }
}

fn edge_connected(p: &Patch) -> bool {
    if p.tiles.is_empty() {
        return true;
    }
    let mut by_edge: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
    for (i, t) in p.tiles.iter().enumerate() {
        for e in t.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut seen = vec![false; p.tiles.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for e in p.tiles[i].edges() {
            for &j in &by_edge[&e] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// A patch large enough to see complete stars around a smaller one.
#[derive(Clone, Debug)]
pub struct PaddedPatch {
    pub base: Patch,
    pub padded: Patch,
    /// Full-tiling degree of every vertex of `base`.
    pub degree: BTreeMap<LatticePoint, u8>,
}

impl PaddedPatch {
    pub fn level(&self) -> usize {
        self.padded.level
    }
}

/// Smallest `P_j`, `i ≤ j ≤ i + max_extra`, in which every vertex of `P_i` has
/// a complete star.
pub fn padded_patch(i: usize, max_extra: usize, budget: usize) -> Result<PaddedPatch> {
    padded_to_radius(i, 0, max_extra, budget)
}

/// Like [`padded_patch`] but requires complete stars for every vertex within
/// graph distance `radius` of `P_i`.
pub fn padded_to_radius(i: usize, radius: usize, max_extra: usize, budget: usize) -> Result<PaddedPatch> {
    let base = generate_patch(i, budget)?;
    let verts = base.vertices();
    let mut cur = base.clone();
    for _ in 0..=max_extra {
        let angles = cur.angle_sums();
        let adj = cur.adjacency();
        let ball = ball(&verts, &adj, radius);
        if ball.iter().all(|v| angles.get(v) == Some(&6)) {
            let degree = verts.iter().map(|v| (*v, adj[v].len() as u8)).collect();
            return Ok(PaddedPatch { base, padded: cur, degree });
        }
        if cur.level == i + max_extra {
            break;
        }
        cur = cur.substituted()?;
        if cur.tiles.len() > budget {
            return Err(Error::Budget { level: cur.level, budget });
        }
    }
    Err(Error::Padding { level: i, radius, bound: i + max_extra })
}

/// Vertices within graph distance `r` of `seed`.
pub fn ball(
    seed: &BTreeSet<LatticePoint>,
    adj: &BTreeMap<LatticePoint, BTreeSet<LatticePoint>>,
    r: usize,
) -> BTreeSet<LatticePoint> {
    let mut out = seed.clone();
    let mut frontier: Vec<LatticePoint> = seed.iter().copied().collect();
    for _ in 0..r {
        let mut next = Vec::new();
        for v in frontier {
            if let Some(ns) = adj.get(&v) {
                for &w in ns {
                    if out.insert(w) {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projection_examples() {
        assert_eq!(project(CubePoint([1, 0, 0])), LatticePoint::new(-1, -1));
        assert_eq!(project(CubePoint([0, 1, 0])), LatticePoint::new(1, 0));
        assert_eq!(project(CubePoint([1, 1, 1])), LatticePoint::ORIGIN);
    }

    #[test]
    fn substitution_examples() {
        let r1 = substitute(&Rhombus::new(1, [0; 3])).unwrap();
        assert_eq!(r1, vec![Rhombus::new(3, [0; 3]), Rhombus::new(1, [1, 0, -1]), Rhombus::new(2, [0, 1, -1])]);
        assert_eq!(substitute(&Rhombus::new(2, [0; 3])).unwrap(), vec![Rhombus::new(1, [0; 3])]);
        assert_eq!(substitute(&Rhombus::new(2, [1, 2, 3])).unwrap(), vec![Rhombus::new(1, [2, 3, -4])]);
    }

    #[test]
    fn corner_convention() {
        let c1 = Rhombus::new(1, [0; 3]).corners();
        let set1: BTreeSet<_> = c1.iter().copied().collect();
        let want1: BTreeSet<_> =
            [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&(m, n)| LatticePoint::new(m, n)).collect();
        assert_eq!(set1, want1);
        let c3 = Rhombus::new(3, [0; 3]).corners();
        let set3: BTreeSet<_> = c3.iter().copied().collect();
        let want3: BTreeSet<_> =
            [(0, 0), (-1, -1), (1, 0), (0, -1)].iter().map(|&(m, n)| LatticePoint::new(m, n)).collect();
        assert_eq!(set3, want3);
    }

    #[test]
    fn totals_and_types() {
        let totals = [3, 5, 9, 17, 31, 57, 105, 193, 355, 653];
        for (i, &t) in totals.iter().enumerate() {
            let p = generate_patch(i, DEFAULT_TILE_BUDGET).unwrap();
            assert_eq!(p.tiles.len(), t);
        }
        assert_eq!(generate_patch(6, DEFAULT_TILE_BUDGET).unwrap().type_counts(), [44, 37, 24]);
    }

    #[test]
    fn initial_patch_report() {
        let r = validate_patch(&Patch::initial());
        assert!(r.valid);
        assert_eq!((r.triangles, r.vertices, r.edges, r.interior_vertices, r.euler), (6, 7, 9, 1, 1));
    }

    #[test]
    fn duplicate_tile_detected() {
        let mut p = Patch::initial();
        p.tiles.push(p.tiles[1]);
        let r = validate_patch(&p);
        assert!(!r.valid);
        assert_eq!(r.overlap, Some((p.tiles[1], p.tiles[1])));
    }

    #[test]
    fn patches_valid_and_nested() {
        let mut prev: Option<Patch> = None;
        for i in 0..=10 {
            let p = generate_patch(i, DEFAULT_TILE_BUDGET).unwrap();
            let r = validate_patch(&p);
            assert!(r.valid, "level {i}: {:?}", r.overlap);
            assert_eq!(r.euler, 1);
            if let Some(q) = prev {
                assert!(q.keys().is_subset(&p.keys()));
            }
            prev = Some(p);
        }
    }

    #[test]
    fn padding_reaches_full_stars() {
        let pp = padded_patch(0, 6, DEFAULT_TILE_BUDGET).unwrap();
        assert_eq!(pp.degree[&LatticePoint::ORIGIN], 3);
        for i in 0..=6 {
            let pp = padded_patch(i, 6, DEFAULT_TILE_BUDGET).unwrap();
            assert!(pp.degree.values().all(|d| (3..=6).contains(d)));
            assert!(pp.level() > i);
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(generate_patch(30, 1000), Err(Error::Budget { .. })));
    }

    proptest! {
        #[test]
        fn corners_translate(kind in 1u8..4, z in proptest::array::uniform3(-50i64..50)) {
            let a = Rhombus::new(kind, z).corners();
            let b = Rhombus::new(kind, [0; 3]).corners();
            let w = project(CubePoint(z));
            for (x, y) in a.iter().zip(b.iter()) {
                prop_assert_eq!(*x, y.offset((w.m, w.n)));
            }
        }

        #[test]
        fn substituted_tiles_disjoint(kind in 1u8..4, z in proptest::array::uniform3(-1000i64..1000)) {
            let out = substitute(&Rhombus::new(kind, z)).unwrap();
            let tris: BTreeSet<_> = out.iter().flat_map(|t| t.triangles()).collect();
            prop_assert_eq!(tris.len(), 2 * out.len());
        }
    }
}
