//! Rhombal algebras: relations, local construction, truncations.

pub mod bound;
pub mod local;
pub mod relation_truncated;
pub mod signs;
pub mod truncation;
pub mod validate;

use alloc::collections::{BTreeMap, BTreeSet};

pub use bound::{BoundQuiver, Relation};
pub use local::{BasisElem, LocalAlgebra};
pub use relation_truncated::{check_not_symmetric, NonSymmetryReport, RelationTruncated};
pub use signs::SignScheme;
pub use truncation::{Gen, GenKind, Truncation};
pub use validate::{symmetry_witness, validate_algebra, SymmetryReport, ValidationReport};

use crate::error::Result;
use crate::field::Field;
use crate::quiver::{classify_vertices, Quiver, VertexClass};
use crate::tiling::{padded_to_radius, LatticePoint, PaddedPatch};

/// Degree at which the rhombal algebra must vanish.
pub const RHOMBAL_TOP_DEGREE: usize = 4;

/// Patch, padding and local algebra for one level.
#[derive(Clone, Debug)]
pub struct LevelSetup<F: Field> {
    pub level: usize,
    pub padded: PaddedPatch,
    /// Quiver of the padded patch; all vertex indices refer to it.
    pub quiver: Quiver,
    /// Quiver `Q_i` of the patch itself.
    pub qi: Quiver,
    /// `V_i` as padded-quiver indices.
    pub vi: BTreeSet<usize>,
    pub classes: BTreeMap<LatticePoint, VertexClass>,
    pub alg: LocalAlgebra<F>,
    pub signs: SignScheme,
}

#[derive(Clone, Copy, Debug)]
pub struct SetupOptions {
    /// Projectives `e_uA` are computed for `u` within this distance of `V_i`.
    pub source_radius: usize,
    /// Largest number of extra substitution steps used for padding.
    pub max_padding: usize,
    pub tile_budget: usize,
}

impl Default for SetupOptions {
    fn default() -> Self {
        Self { source_radius: 2, max_padding: 10, tile_budget: crate::tiling::DEFAULT_TILE_BUDGET }
    }
}

impl<F: Field> LevelSetup<F> {
    pub fn new(field: F, level: usize, signs: SignScheme, opts: SetupOptions) -> Result<Self> {
        // relations at distance 2 from a source need complete stars one step further
        let padded = padded_to_radius(level, opts.source_radius + 3, opts.max_padding, opts.tile_budget)?;
        let quiver = Quiver::from_patch(&padded.padded);
        let qi = Quiver::from_patch(&padded.base);
        let classes = classify_vertices(&qi, &padded);
        let vi: BTreeSet<usize> = qi.vertices.iter().map(|p| quiver.vertex(*p).unwrap()).collect();
        let sources = quiver.bfs_distances(&vi, opts.source_radius);
        let bq = BoundQuiver::rhombal(&quiver, signs);
        let alg = LocalAlgebra::build(field, bq, sources.keys().copied(), RHOMBAL_TOP_DEGREE)?;
        Ok(Self { level, padded, quiver, qi, vi, classes, alg, signs })
    }

    pub fn index(&self, p: LatticePoint) -> usize {
        self.quiver.vertex(p).unwrap()
    }

    /// Vertices of `V_i` with a complete star inside `P_i`.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        self.vi.iter().copied().filter(|&v| !self.classes[&self.quiver.point(v)].boundary)
    }

    /// The truncation `A_i = e_i A e_i`.
    pub fn truncation(&self) -> Result<Truncation<'_, F>> {
        Truncation::new(&self.alg, self.vi.iter().copied())
    }

    /// A truncation to every computed source whose projective lies inside
    /// the computed region; used as a stand-in for `A` near `P_i`.
    pub fn ambient_truncation(&self) -> Result<Truncation<'_, F>> {
        Truncation::new(&self.alg, self.alg.sources())
    }
}

/// First member of the parity family that passes [`validate_algebra`] on
/// the interior of `P_level`.
pub fn search_sign_scheme<F: Field>(field: F, level: usize) -> Option<SignScheme> {
    let opts = SetupOptions { source_radius: 0, ..Default::default() };
    let first = [SignScheme::PARITY_INDEX];
    for idx in first.into_iter().chain(0..SignScheme::FAMILY_SIZE) {
        let s = SignScheme::Family(idx);
        let Ok(setup) = LevelSetup::new(field.clone(), level, s, opts) else { continue };
        let rep = validate_algebra(&setup.alg, &setup.quiver, setup.interior());
        if rep.ok() {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn report(level: usize, signs: SignScheme) -> ValidationReport {
        let opts = SetupOptions { source_radius: 0, ..Default::default() };
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), level, signs, opts).unwrap();
        validate_algebra(&s.alg, &s.quiver, s.interior())
    }

    #[test]
    fn parity_signs_give_rhombal_dimensions() {
        for level in 2..=5 {
            let r = report(level, SignScheme::Parity);
            assert!(r.ok(), "level {level}: {:?}", &r.failures[..r.failures.len().min(5)]);
        }
    }

    #[test]
    fn loops_follow_vertex_classes() {
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 6, SignScheme::Parity, SetupOptions::default()).unwrap();
        let t = s.truncation().unwrap();
        let mut want = BTreeMap::new();
        for &v in &s.vi {
            let c = s.classes[&s.quiver.point(v)];
            if c.n > c.k + 2 {
                want.insert(v, (c.n - c.k - 2) as usize);
            }
        }
        assert!(!want.is_empty());
        assert_eq!(t.loops(), want);
        assert!(t.gens.iter().all(|g| g.degree == 1 || (g.degree == 2 && g.src == g.tgt)));
    }

    #[test]
    fn corrupted_signs_fail() {
        let s = LevelSetup::<PrimeField>::new(
            PrimeField::new(5).unwrap(),
            4,
            SignScheme::Parity,
            SetupOptions { source_radius: 0, ..Default::default() },
        )
        .unwrap();
        let z = s.interior().next().unwrap();
        let r = report(4, SignScheme::Corrupted(s.quiver.point(z)));
        assert!(!r.ok());
    }

    #[test]
    fn sign_search_finds_a_scheme() {
        let s = search_sign_scheme(PrimeField::new(5).unwrap(), 3).unwrap();
        assert!(report(5, s).ok());
    }

    #[test]
    fn truncation_free_algebra_carries_a_symmetric_form() {
        for level in 3..=6 {
            let s = LevelSetup::new(PrimeField::new(5).unwrap(), level, SignScheme::Parity, SetupOptions::default())
                .unwrap();
            let r = symmetry_witness(&s.alg, &s.quiver, s.interior());
            assert!(r.ok(), "level {level}: {} pairs, {:?}", r.pairs, &r.failures[..r.failures.len().min(5)]);
            assert_eq!(r.components, 1);
        }
        // a single corrupted sign breaks it
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 4, SignScheme::Parity, SetupOptions::default()).unwrap();
        let z = s.interior().next().unwrap();
        let bad = LevelSetup::new(
            PrimeField::new(5).unwrap(),
            4,
            SignScheme::Corrupted(s.quiver.point(z)),
            SetupOptions::default(),
        )
        .unwrap();
        assert!(!symmetry_witness(&bad.alg, &bad.quiver, bad.interior()).ok());
    }

    #[test]
    fn constant_signs_fail() {
        let r = report(4, SignScheme::Constant);
        assert!(!r.ok());
    }
}
