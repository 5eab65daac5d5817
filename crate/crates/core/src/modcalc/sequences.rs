//! Short exact sequences of modules inside sums of projectives.
//!
//! Every sequence has the shape `0 → K → M → N → 0` with `K ⊆ M` in the same
//! ambient and `M → N` given by left multiplication. Elements and maps are
//! written as vertex walks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::embedded::{Ambient, AmbientMap, Embedded};
use super::star::Star;
use crate::algebra::Truncation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{add_vec, zero_vec, Vector};

/// A module generated by elements of `⊕ e_{u_j} A`; each generator is a
/// sum of walks, one per listed summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSpec {
    pub summands: Vec<usize>,
    pub gens: Vec<Vec<(usize, Vec<usize>)>>,
}

impl ModSpec {
    /// `w_1 A + w_2 A + …` inside `e_u A`.
    pub fn paths(u: usize, walks: &[Vec<usize>]) -> Self {
        Self { summands: vec![u], gens: walks.iter().map(|w| vec![(0, w.clone())]).collect() }
    }

    /// `(w_1, …, w_m) A` inside `⊕ e_{w_j[0]} A`.
    pub fn column(walks: &[Vec<usize>]) -> Self {
        Self { summands: walks.iter().map(|w| w[0]).collect(), gens: vec![walks.iter().cloned().enumerate().collect()] }
    }
}

/// Left multiplication: `(source summand, target summand, walk)` with the
/// walk running from the target summand's vertex to the source's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub entries: Vec<(usize, usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesSpec {
    pub name: String,
    pub k: ModSpec,
    pub m: ModSpec,
    pub n: ModSpec,
    pub g: MapSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SesReport {
    pub dims: [usize; 3],
    pub k_in_m: bool,
    pub maps_into_n: bool,
    pub surjective: bool,
    pub composite_zero: bool,
    pub exact: bool,
    pub dim_vectors: [BTreeMap<usize, usize>; 3],
}

pub fn walk_element<F: Field>(t: &Truncation<'_, F>, walk: &[usize]) -> Result<Vector<F>> {
    if !t.alg.has_source(walk[0]) {
        return Err(Error::UnknownVertex(format!("e_{}A", t.alg.quiver.points[walk[0]])));
    }
    t.alg.walk_element(walk).ok_or_else(|| Error::Module(format!("walk {walk:?} is not a path")))
}

pub fn ambient_of<F: Field>(t: &Truncation<'_, F>, spec: &ModSpec) -> Result<Ambient> {
    Ambient::new(t.alg, &spec.summands)
}

pub fn build_module<F: Field>(t: &Truncation<'_, F>, spec: &ModSpec) -> Result<Embedded<F>> {
    let f = t.field();
    let amb = ambient_of(t, spec)?;
    let mut elems = Vec::new();
    for g in &spec.gens {
        let mut v = zero_vec(f, amb.len());
        for (j, w) in g {
            let e = walk_element(t, w)?;
            v = add_vec(f, &v, &amb.inject(f, *j, &e));
        }
        elems.push(v);
    }
    Embedded::generated(t, &amb, &elems)
}

pub fn build_map<F: Field>(
    t: &Truncation<'_, F>,
    src: &Ambient,
    tgt: &Ambient,
    spec: &MapSpec,
) -> Result<AmbientMap<F>> {
    let entries = spec.entries.iter().map(|(j, i, w)| Ok((*j, *i, walk_element(t, w)?))).collect::<Result<Vec<_>>>()?;
    Ok(AmbientMap::left_mult(t.alg, src, tgt, &entries))
}

/// Checks `0 → K → M → N → 0` for modules already built.
pub fn check_built<F: Field>(
    t: &Truncation<'_, F>,
    k: &Embedded<F>,
    m: &Embedded<F>,
    n: &Embedded<F>,
    g: &AmbientMap<F>,
) -> SesReport {
    let f = t.field();
    let mut r = SesReport {
        dims: [k.dim(), m.dim(), n.dim()],
        dim_vectors: [k.rep.dims.clone(), m.rep.dims.clone(), n.rep.dims.clone()],
        ..Default::default()
    };
    r.k_in_m = k.is_submodule_of(f, m);
    let Ok(gm) = m.map_to(f, g, n) else { return r };
    r.maps_into_n = true;
    r.surjective = gm.is_surjective(f, &n.rep);
    r.composite_zero =
        k.rep.dims.keys().all(|&y| k.basis_at(y).iter().all(|b| crate::linalg::is_zero_vec(f, &g.apply(f, b))));
    r.exact = r.k_in_m && r.surjective && r.composite_zero && r.dims[0] + r.dims[2] == r.dims[1];
    r
}

/// Builds the three modules over `A` and checks the sequence.
pub fn check_ses<F: Field>(
    t: &Truncation<'_, F>,
    spec: &SesSpec,
) -> Result<(SesReport, [Embedded<F>; 3], AmbientMap<F>)> {
    let k = build_module(t, &spec.k)?;
    let m = build_module(t, &spec.m)?;
    let n = build_module(t, &spec.n)?;
    let g = build_map(t, &m.ambient, &n.ambient, &spec.g)?;
    let r = check_built(t, &k, &m, &n, &g);
    Ok((r, [k, m, n], g))
}

/// Applies `(−)e` for a truncation and checks the sequence again.
pub fn check_truncated<F: Field>(
    tr: &Truncation<'_, F>,
    mods: &[Embedded<F>; 3],
    g: &AmbientMap<F>,
) -> Result<SesReport> {
    let k = mods[0].restrict(tr)?;
    let m = mods[1].restrict(tr)?;
    let n = mods[2].restrict(tr)?;
    Ok(check_built(tr, &k, &m, &n, g))
}

/// The displayed sequences for rhombus filtrations of arrow modules and
/// projectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Catalogue {
    /// `0 → b c_n A → bA → b̄_2 b A → 0`
    ArrowC,
    /// `0 → b d_1 A → bA → b̄_n b A → 0`
    ArrowD,
    /// `0 → b_1d_1A → b_1A + b_2A → b̄_n b_1 A ⊕ b̄_3 b_2 A → 0`, `n ≥ 4`
    TwoArrow,
    /// `0 → b̄_1 b_n A ⊕ b̄_2 b_3 A → (b̄_1, b̄_2)A → d̄_1 b̄_1 A → 0`, `n ≥ 4`
    DualTwoArrow,
    /// `0 → b_1A + b_2A → b_1A + b_2A + b_3A → b̄_4 b_3 A → 0`, `n ≥ 5`
    ThreeArrow,
    /// `0 → b̄_3 b_4 A → (b̄_1, b̄_2, b̄_3)A → (b̄_1, b̄_2)A → 0`, `n ≥ 5`
    DualThreeArrow,
    /// `0 → b_1A → e_zA → c̄_2 b̄_3 A → 0`, `n = 3`
    Vertex3,
    /// `0 → b_1d_1A → e_zA → b̄_3 A → 0`, `n = 3`
    Vertex3Dual,
    /// `0 → b_1A → e_zA → b̄_3 A → 0`, `n = 4`
    Vertex4,
    /// `0 → b_1A + b_2A → e_zA → b̄_4 A → 0`, `n = 5`
    Vertex5,
    /// `0 → b_1A + b_2A → e_zA → (b̄_4, b̄_5)A → 0`, `n = 6`
    Vertex6,
    /// `0 → b_1A + b_2A + b_3A → e_zA → b̄_5 A → 0`, `n = 6`
    Vertex6Three,
}

impl Catalogue {
    pub const ALL: [Catalogue; 12] = [
        Catalogue::ArrowC,
        Catalogue::ArrowD,
        Catalogue::TwoArrow,
        Catalogue::DualTwoArrow,
        Catalogue::ThreeArrow,
        Catalogue::DualThreeArrow,
        Catalogue::Vertex3,
        Catalogue::Vertex3Dual,
        Catalogue::Vertex4,
        Catalogue::Vertex5,
        Catalogue::Vertex6,
        Catalogue::Vertex6Three,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Catalogue::ArrowC => "arrow (c)",
            Catalogue::ArrowD => "arrow (d)",
            Catalogue::TwoArrow => "two-arrow",
            Catalogue::DualTwoArrow => "dual two-arrow",
            Catalogue::ThreeArrow => "three-arrow",
            Catalogue::DualThreeArrow => "dual three-arrow",
            Catalogue::Vertex3 => "3-vertex projective",
            Catalogue::Vertex3Dual => "3-vertex projective, second",
            Catalogue::Vertex4 => "4-vertex projective",
            Catalogue::Vertex5 => "5-vertex projective",
            Catalogue::Vertex6 => "6-vertex projective",
            Catalogue::Vertex6Three => "6-vertex projective, three arrows",
        }
    }

    pub fn applies(self, n: usize) -> bool {
        match self {
            Catalogue::ArrowC | Catalogue::ArrowD => true,
            Catalogue::TwoArrow | Catalogue::DualTwoArrow => n >= 4,
            Catalogue::ThreeArrow | Catalogue::DualThreeArrow => n >= 5,
            Catalogue::Vertex3 | Catalogue::Vertex3Dual => n == 3,
            Catalogue::Vertex4 => n == 4,
            Catalogue::Vertex5 => n == 5,
            Catalogue::Vertex6 | Catalogue::Vertex6Three => n == 6,
        }
    }

    pub fn spec(self, s: &Star) -> SesSpec {
        let n = s.n();
        let z = s.z;
        let (x, y) = (|i| s.xi(i), |i| s.yi(i));
        let b = |i: usize| vec![z, x(i)];
        let bb = |i: usize| vec![x(i), z];
        let (k, m, nn, g) = match self {
            Catalogue::ArrowC => (
                ModSpec::paths(z, &[vec![z, x(1), y(n)]]),
                ModSpec::paths(z, &[b(1)]),
                ModSpec::paths(x(2), &[vec![x(2), z, x(1)]]),
                vec![(0, 0, bb(2))],
            ),
            Catalogue::ArrowD => (
                ModSpec::paths(z, &[vec![z, x(1), y(1)]]),
                ModSpec::paths(z, &[b(1)]),
                ModSpec::paths(x(n), &[vec![x(n), z, x(1)]]),
                vec![(0, 0, bb(n))],
            ),
            Catalogue::TwoArrow => (
                ModSpec::paths(z, &[vec![z, x(1), y(1)]]),
                ModSpec::paths(z, &[b(1), b(2)]),
                ModSpec {
                    summands: vec![x(n), x(3)],
                    gens: vec![vec![(0, vec![x(n), z, x(1)])], vec![(1, vec![x(3), z, x(2)])]],
                },
                vec![(0, 0, bb(n)), (0, 1, bb(3))],
            ),
            Catalogue::DualTwoArrow => (
                ModSpec {
                    summands: vec![x(1), x(2)],
                    gens: vec![vec![(0, vec![x(1), z, x(n)])], vec![(1, vec![x(2), z, x(3)])]],
                },
                ModSpec::column(&[bb(1), bb(2)]),
                ModSpec::paths(y(1), &[vec![y(1), x(1), z]]),
                vec![(0, 0, vec![y(1), x(1)])],
            ),
            Catalogue::ThreeArrow => (
                ModSpec::paths(z, &[b(1), b(2)]),
                ModSpec::paths(z, &[b(1), b(2), b(3)]),
                ModSpec::paths(x(4), &[vec![x(4), z, x(3)]]),
                vec![(0, 0, bb(4))],
            ),
            Catalogue::DualThreeArrow => (
                ModSpec { summands: vec![x(1), x(2), x(3)], gens: vec![vec![(2, vec![x(3), z, x(4)])]] },
                ModSpec::column(&[bb(1), bb(2), bb(3)]),
                ModSpec::column(&[bb(1), bb(2)]),
                vec![(0, 0, vec![x(1)]), (1, 1, vec![x(2)])],
            ),
            Catalogue::Vertex3 => (
                ModSpec::paths(z, &[b(1)]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::paths(y(2), &[vec![y(2), x(3), z]]),
                vec![(0, 0, vec![y(2), x(3), z])],
            ),
            Catalogue::Vertex3Dual => (
                ModSpec::paths(z, &[vec![z, x(1), y(1)]]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::paths(x(3), &[bb(3)]),
                vec![(0, 0, bb(3))],
            ),
            Catalogue::Vertex4 => (
                ModSpec::paths(z, &[b(1)]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::paths(x(3), &[bb(3)]),
                vec![(0, 0, bb(3))],
            ),
            Catalogue::Vertex5 => (
                ModSpec::paths(z, &[b(1), b(2)]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::paths(x(4), &[bb(4)]),
                vec![(0, 0, bb(4))],
            ),
            Catalogue::Vertex6 => (
                ModSpec::paths(z, &[b(1), b(2)]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::column(&[bb(4), bb(5)]),
                vec![(0, 0, bb(4)), (0, 1, bb(5))],
            ),
            Catalogue::Vertex6Three => (
                ModSpec::paths(z, &[b(1), b(2), b(3)]),
                ModSpec::paths(z, &[vec![z]]),
                ModSpec::paths(x(5), &[bb(5)]),
                vec![(0, 0, bb(5))],
            ),
        };
        SesSpec { name: self.name().into(), k, m, n: nn, g: MapSpec { entries: g } }
    }
}

/// One catalogue sequence over `A` and after `(−)e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueResult {
    pub seq: Catalogue,
    pub over_a: SesReport,
    pub truncated: SesReport,
}

impl CatalogueResult {
    pub fn ok(&self) -> bool {
        self.over_a.exact && self.truncated.exact
    }
}

/// Every applicable catalogue sequence at one star; `t` presents `A`, `tr`
/// the truncation.
pub fn check_catalogue<F: Field>(
    t: &Truncation<'_, F>,
    tr: &Truncation<'_, F>,
    s: &Star,
) -> Result<Vec<CatalogueResult>> {
    let mut out = Vec::new();
    for seq in Catalogue::ALL {
        if !seq.applies(s.n()) {
            continue;
        }
        let (over_a, mods, g) = check_ses(t, &seq.spec(s))?;
        let truncated = check_truncated(tr, &mods, &g)?;
        out.push(CatalogueResult { seq, over_a, truncated });
    }
    Ok(out)
}

/// `dim (b_1A ∩ b_2A) − dim b_1d_1A`, the kernel of the comparison map in
/// the two-arrow sequence; zero for `n ≥ 4`.
pub fn two_arrow_defect<F: Field>(t: &Truncation<'_, F>, s: &Star) -> Result<usize> {
    let z = s.z;
    let b1 = build_module(t, &ModSpec::paths(z, &[vec![z, s.xi(1)]]))?;
    let b2 = build_module(t, &ModSpec::paths(z, &[vec![z, s.xi(2)]]))?;
    let r = build_module(t, &ModSpec::paths(z, &[vec![z, s.xi(1), s.yi(1)]]))?;
    let cap = b1.intersection(t, &b2)?;
    if !r.is_submodule_of(t.field(), &cap) {
        return Err(Error::Module("b_1d_1A not inside b_1A ∩ b_2A".into()));
    }
    Ok(cap.dim() - r.dim())
}

/// The sequences describing the truncation of the arrow module `b_1A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TruncationSeq {
    /// `0 → b̄bd_1A + b̄bc_nA → b̄A → bb̄A → 0`
    I1,
    /// `0 → b̄bA → b̄A → (b̄_2bb̄, b̄_nbb̄)A → 0`
    I2,
    /// `0 → bb̄b_nA + bb̄b_2A → bA → b̄bA → 0`
    I3,
    /// `0 → bb̄A → bA → (d̄_1b̄b, c̄_nb̄b)A → 0`
    I4,
    /// `0 → b̄bA → b̄A → bb̄A → 0`
    II1,
    /// `0 → bb̄A → bA → b̄bA → 0`
    II2,
}

impl TruncationSeq {
    pub const CASE_I: [TruncationSeq; 4] = [TruncationSeq::I1, TruncationSeq::I2, TruncationSeq::I3, TruncationSeq::I4];
    pub const CASE_II: [TruncationSeq; 2] = [TruncationSeq::II1, TruncationSeq::II2];

    pub fn name(self) -> &'static str {
        match self {
            TruncationSeq::I1 => "(1i)",
            TruncationSeq::I2 => "(2i)",
            TruncationSeq::I3 => "(3i)",
            TruncationSeq::I4 => "(4i)",
            TruncationSeq::II1 => "(1ii)",
            TruncationSeq::II2 => "(2ii)",
        }
    }

    pub fn spec(self, s: &Star) -> SesSpec {
        let n = s.n();
        let z = s.z;
        let (x, y) = (|i| s.xi(i), |i| s.yi(i));
        let x1 = x(1);
        let (k, m, nn, g) = match self {
            TruncationSeq::I1 => (
                ModSpec::paths(x1, &[vec![x1, z, x1, y(1)], vec![x1, z, x1, y(n)]]),
                ModSpec::paths(x1, &[vec![x1, z]]),
                ModSpec::paths(z, &[vec![z, x1, z]]),
                vec![(0, 0, vec![z, x1])],
            ),
            TruncationSeq::I2 => (
                ModSpec::paths(x1, &[vec![x1, z, x1]]),
                ModSpec::paths(x1, &[vec![x1, z]]),
                ModSpec::column(&[vec![x(2), z, x1, z], vec![x(n), z, x1, z]]),
                vec![(0, 0, vec![x(2), z, x1]), (0, 1, vec![x(n), z, x1])],
            ),
            TruncationSeq::I3 => (
                ModSpec::paths(z, &[vec![z, x1, z, x(n)], vec![z, x1, z, x(2)]]),
                ModSpec::paths(z, &[vec![z, x1]]),
                ModSpec::paths(x1, &[vec![x1, z, x1]]),
                vec![(0, 0, vec![x1, z])],
            ),
            TruncationSeq::I4 => (
                ModSpec::paths(z, &[vec![z, x1, z]]),
                ModSpec::paths(z, &[vec![z, x1]]),
                ModSpec::column(&[vec![y(1), x1, z, x1], vec![y(n), x1, z, x1]]),
                vec![(0, 0, vec![y(1), x1, z]), (0, 1, vec![y(n), x1, z])],
            ),
            TruncationSeq::II1 => (
                ModSpec::paths(x1, &[vec![x1, z, x1]]),
                ModSpec::paths(x1, &[vec![x1, z]]),
                ModSpec::paths(z, &[vec![z, x1, z]]),
                vec![(0, 0, vec![z, x1])],
            ),
            TruncationSeq::II2 => (
                ModSpec::paths(z, &[vec![z, x1, z]]),
                ModSpec::paths(z, &[vec![z, x1]]),
                ModSpec::paths(x1, &[vec![x1, z, x1]]),
                vec![(0, 0, vec![x1, z])],
            ),
        };
        SesSpec { name: self.name().into(), k, m, n: nn, g: MapSpec { entries: g } }
    }
}

/// Case (i) when the two rhombi at `b_1` have equal angles at `z`.
pub fn truncation_case_i(s: &Star) -> bool {
    s.angle_i(s.n()) == s.angle_i(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LevelSetup, SetupOptions, SignScheme};
    use crate::field::PrimeField;
    extern crate std;

    #[test]
    fn catalogue_on_level_six() {
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 6, SignScheme::Parity, SetupOptions::default()).unwrap();
        let t = Truncation::full(&s.alg);
        let tr = s.truncation().unwrap();
        let mut count: BTreeMap<Catalogue, usize> = BTreeMap::new();
        for &z in &s.vi {
            let n = s.quiver.degree(z);
            for r in 0..n {
                let star = Star::new(&s.quiver, z, r).unwrap();
                for res in check_catalogue(&t, &tr, &star).unwrap() {
                    assert!(res.ok(), "{} at {} rot {r}: {res:?}", res.seq.name(), s.quiver.point(z));
                    *count.entry(res.seq).or_default() += 1;
                }
                let defect = two_arrow_defect(&t, &star).unwrap();
                assert_eq!(defect, if n == 3 { 2 } else { 0 });
            }
        }
        assert_eq!(count.len(), Catalogue::ALL.len());
    }
}
