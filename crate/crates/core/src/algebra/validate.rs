//! Dimension checks for the local algebra at interior vertices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::local::LocalAlgebra;
use crate::field::Field;
use crate::linalg::{is_zero_vec, Subspace};
use crate::quiver::Quiver;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    pub failures: Vec<String>,
    /// `dim X_z` per vertex degree `n`.
    pub x_dims: BTreeMap<u8, Vec<usize>>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// How a target vertex `y` sits relative to the source `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relative {
    Same,
    Adjacent,
    Opposite,
    Other,
}

pub fn relative(q: &Quiver, z: usize, y: usize) -> Relative {
    if z == y {
        Relative::Same
    } else if q.edge_between(z, y).is_some() {
        Relative::Adjacent
    } else if q.faces_at[z].iter().any(|&f| q.faces[f].opposite(z) == Some(y)) {
        Relative::Opposite
    } else {
        Relative::Other
    }
}

/// Expected `dim e_z A_d e_y`.
pub fn expected_dim(rel: Relative, n: usize, d: usize) -> usize {
    match (rel, d) {
        (Relative::Same, 0) | (Relative::Same, 4) => 1,
        (Relative::Same, 2) => n - 2,
        (Relative::Adjacent, 1) | (Relative::Adjacent, 3) => 1,
        (Relative::Opposite, 2) => 1,
        _ => 0,
    }
}

/// `dim X_z`: the span of length-two paths from `z` back to `z`.
pub fn x_dim<F: Field>(alg: &LocalAlgebra<F>, z: usize) -> usize {
    alg.elems(z).iter().filter(|e| e.target == z && e.degree == 2).count()
}

/// Socle of `e_z A` as an `A`-module: elements killed by every arrow.
pub fn socle_dim<F: Field>(alg: &LocalAlgebra<F>, z: usize) -> (usize, bool) {
    let f = &alg.field;
    let n = alg.dim(z);
    let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
    // unknown c ∈ e_zA; for every arrow a: c·a = 0
    let mut targets: Vec<usize> = alg.elems(z).iter().map(|e| e.target).collect();
    targets.sort_unstable();
    targets.dedup();
    let arrows: Vec<usize> = targets.iter().flat_map(|&t| alg.quiver.out[t].iter().copied()).collect();
    let mut imgs: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for i in 0..n {
        let v = alg.basis_vector(z, i);
        imgs.push(arrows.iter().map(|&a| alg.mul_arrow(z, &v, a)).collect());
    }
    for (ai, _) in arrows.iter().enumerate() {
        for k in 0..n {
            eqs.push(imgs.iter().map(|im| im[ai][k].clone()).collect());
        }
    }
    let mut ns = crate::linalg::Nullspace::new(n);
    for e in eqs {
        ns.add_equation(f, e);
    }
    let sol = ns.solve(f);
    // the socle should be spanned by the top-degree class at z
    let top: Vec<usize> =
        alg.elems(z).iter().enumerate().filter(|(_, e)| e.target == z && e.degree == 4).map(|(i, _)| i).collect();
    let spanned = sol.len() == 1
        && top.len() == 1
        && Subspace::spanned_by(f, n, sol.iter()).contains(f, &alg.basis_vector(z, top[0]))
        && !is_zero_vec(f, &sol[0]);
    (sol.len(), spanned)
}

/// Checks the dimension table of `e_z A` at every given vertex, which must
/// carry a complete star in `q`.
pub fn validate_algebra<F: Field>(
    alg: &LocalAlgebra<F>,
    q: &Quiver,
    vertices: impl IntoIterator<Item = usize>,
) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for z in vertices {
        if !alg.has_source(z) {
            continue;
        }
        rep.checked += 1;
        let n = q.degree(z);
        let dims = alg.component_dims(z);
        let p = q.point(z);
        let mut seen_targets: Vec<usize> = dims.keys().map(|&(y, _)| y).collect();
        seen_targets.dedup();
        // every computed component matches
        for (&(y, d), &got) in &dims {
            let want = expected_dim(relative(q, z, y), n, d);
            if got != want {
                rep.failures.push(format!("{p}: dim e_zA_{d}e_y = {got} at y={}, expected {want}", q.point(y)));
            }
        }
        // and nothing expected is missing
        for y in q.neighbours(z) {
            if alg.block_dim(z, y) != 2 {
                rep.failures.push(format!("{p}: dim e_zAe_x = {} for adjacent x={}", alg.block_dim(z, y), q.point(y)));
            }
        }
        for &fi in &q.faces_at[z] {
            let y = q.faces[fi].opposite(z).unwrap();
            if alg.block_dim(z, y) != 1 {
                rep.failures.push(format!("{p}: dim e_zAe_y = {} for opposite y={}", alg.block_dim(z, y), q.point(y)));
            }
        }
        if alg.block_dim(z, z) != n {
            rep.failures.push(format!("{p}: dim e_zAe_z = {}, n = {n}", alg.block_dim(z, z)));
        }
        if alg.dim(z) != 4 * n {
            rep.failures.push(format!("{p}: dim e_zA = {}, expected {}", alg.dim(z), 4 * n));
        }
        if alg.max_degree(z) > 4 {
            rep.failures.push(format!("{p}: nonzero paths of degree {}", alg.max_degree(z)));
        }
        let (sd, spanned) = socle_dim(alg, z);
        if !spanned {
            rep.failures.push(format!("{p}: socle of dimension {sd} not spanned by a length-four loop"));
        }
        rep.x_dims.entry(n as u8).or_default().push(x_dim(alg, z));
        for &y in &seen_targets {
            if alg.has_source(y) && alg.block_dim(y, z) != alg.block_dim(z, y) {
                rep.failures.push(format!("{p}: dim e_zAe_y ≠ dim e_yAe_z at y={}", q.point(y)));
            }
        }
    }
    for (n, v) in rep.x_dims.iter_mut() {
        v.sort_unstable();
        v.dedup();
        if v.iter().any(|&d| d != *n as usize - 2) {
            rep.failures.push(format!("dim X_z for {n}-vertices takes values {v:?}"));
        }
    }
    rep
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Vertex pairs `(z, y)` whose pairing `e_zAe_y × e_yAe_z` was checked.
    pub pairs: usize,
    /// Connected pieces, each with one free scalar.
    pub components: usize,
    pub failures: Vec<String>,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.pairs > 0
    }
}

fn socle_index<F: Field>(alg: &LocalAlgebra<F>, z: usize) -> Option<usize> {
    alg.elems(z).iter().position(|e| e.target == z && e.degree == 4)
}

/// Looks for a symmetrizing form on `A` restricted to `vertices`: scalars
/// `c_z` with `φ(a) = c_z · (socle coefficient of a)` on `e_zAe_z`, such that
/// `φ(ab) = φ(ba)` and every pairing `e_zAe_y × e_yAe_z → k` is
/// nondegenerate. The scalars are fixed along arrows and then checked on
/// every pair, so cycles must close up.
pub fn symmetry_witness<F: Field>(
    alg: &LocalAlgebra<F>,
    q: &Quiver,
    vertices: impl IntoIterator<Item = usize>,
) -> SymmetryReport {
    let f = &alg.field;
    let mut rep = SymmetryReport::default();
    let verts: Vec<usize> = vertices.into_iter().filter(|&z| alg.has_source(z)).collect();
    let socle: BTreeMap<usize, usize> = verts.iter().filter_map(|&z| Some((z, socle_index(alg, z)?))).collect();
    for &z in &verts {
        if !socle.contains_key(&z) {
            rep.failures.push(format!("{}: no degree-four class at the source", q.point(z)));
        }
    }
    if !rep.failures.is_empty() {
        return rep;
    }
    // Gram matrix of (a, b) ↦ socle coefficient of a·b at z
    let gram = |z: usize, y: usize| -> Vec<Vec<F::Elem>> {
        let s = socle[&z];
        let left: Vec<usize> = (0..alg.dim(z)).filter(|&i| alg.elems(z)[i].target == y).collect();
        let right: Vec<usize> = (0..alg.dim(y)).filter(|&j| alg.elems(y)[j].target == z).collect();
        left.iter()
            .map(|&i| {
                let a = alg.basis_vector(z, i);
                right.iter().map(|&j| alg.mul(z, &a, y, &alg.basis_vector(y, j))[s].clone()).collect()
            })
            .collect()
    };
    // propagate scalars along arrows, breadth first
    let mut scale: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for &root in &verts {
        if scale.contains_key(&root) {
            continue;
        }
        scale.insert(root, f.one());
        rep.components += 1;
        let mut queue = alloc::collections::VecDeque::from([root]);
        while let Some(z) = queue.pop_front() {
            for y in q.neighbours(z) {
                if scale.contains_key(&y) || !socle.contains_key(&y) {
                    continue;
                }
                // c_z g_zy[i][j] = c_y g_yz[j][i] at any entry where both are nonzero
                let (gz, gy) = (gram(z, y), gram(y, z));
                let entry = (0..gz.len()).flat_map(|i| (0..gy.len()).map(move |j| (i, j))).find(|&(i, j)| {
                    !f.is_zero(&gz[i][j]) && gy.get(j).and_then(|r| r.get(i)).is_some_and(|b| !f.is_zero(b))
                });
                let Some((i, j)) = entry else { continue };
                let c = f.mul(&scale[&z], &f.mul(&gz[i][j], &f.inv(&gy[j][i])));
                scale.insert(y, c);
                queue.push_back(y);
            }
        }
    }
    for &z in &verts {
        let mut targets: Vec<usize> = alg.elems(z).iter().map(|e| e.target).collect();
        targets.sort_unstable();
        targets.dedup();
        for y in targets {
            if !socle.contains_key(&y) {
                continue;
            }
            rep.pairs += 1;
            let (gz, gy) = (gram(z, y), gram(y, z));
            let n = gz.len();
            if n != gy.first().map_or(0, |r| r.len()) || crate::linalg::rank(f, &gz, gy.len()) != n {
                rep.failures.push(format!("{}→{}: degenerate pairing", q.point(z), q.point(y)));
                continue;
            }
            // φ(a_i b_j) = φ(b_j a_i)
            let (cz, cy) = (&scale[&z], &scale[&y]);
            let symmetric = (0..n).all(|i| (0..n).all(|j| f.mul(cz, &gz[i][j]) == f.mul(cy, &gy[j][i])));
            if !symmetric {
                rep.failures.push(format!("{}→{}: φ(ab) ≠ φ(ba)", q.point(z), q.point(y)));
            }
        }
    }
    rep
}
