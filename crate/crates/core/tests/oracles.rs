//! Checks against oracles that share no code with the library.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rauzy_core::algebra::{LevelSetup, SetupOptions, SignScheme};
use rauzy_core::field::{Field, PrimeField};
use rauzy_core::modcalc::sequences::{build_module, ModSpec};
use rauzy_core::modcalc::Modules;
use rauzy_core::tiling::{generate_patch, LatticePoint, DEFAULT_TILE_BUDGET};

/// Type counts `(a, b, c)` from the substitution recurrence.
fn type_counts(i: usize) -> [usize; 3] {
    let mut c = [1, 1, 1];
    for _ in 0..i {
        c = [c[0] + c[1], c[0] + c[2], c[0]];
    }
    c
}

#[test]
fn type_counts_follow_the_recurrence() {
    for i in 0..=10 {
        let p = generate_patch(i, DEFAULT_TILE_BUDGET).unwrap();
        let mut got = [0; 3];
        for t in &p.tiles {
            got[(t.kind - 1) as usize] += 1;
        }
        assert_eq!(got, type_counts(i), "P_{i}");
    }
}

/// Unit triangles of the lattice either coincide or have disjoint
/// interiors, so distinct rhombi must give distinct triangles.
#[test]
fn rhombi_have_disjoint_interiors() {
    for i in 0..=8 {
        let p = generate_patch(i, DEFAULT_TILE_BUDGET).unwrap();
        let mut seen: BTreeSet<[LatticePoint; 3]> = BTreeSet::new();
        for t in &p.tiles {
            let [a, au, av, auv] = t.corners();
            for mut tri in [[a, au, av], [auv, au, av]] {
                tri.sort();
                assert!(seen.insert(tri), "P_{i}: overlapping tile {t:?}");
            }
        }
        assert_eq!(seen.len(), 2 * p.tiles.len());
    }
}

/// `0 → ΩM → P(M) → M → 0` with `P(M)` the sum of projectives over the top.
#[test]
fn syzygy_dimensions_add_up() {
    let s = LevelSetup::new(PrimeField::new(5).unwrap(), 5, SignScheme::Parity, SetupOptions::default()).unwrap();
    let t = s.truncation().unwrap();
    let mods = Modules::new(&t, 7);
    let mut checked = 0;
    for &z in &s.vi {
        for y in s.quiver.neighbours(z).filter(|y| s.vi.contains(y)).take(1) {
            for walk in [vec![z], vec![z, y]] {
                let m = build_module(&t, &ModSpec::paths(z, &[walk])).unwrap().rep;
                let cover: usize =
                    m.top_dims(&t).iter().map(|(&x, &mult)| mult * mods.projective(x).unwrap().rep.dim()).sum();
                let om = mods.syzygy(&m).unwrap();
                assert_eq!(om.dim() + m.dim(), cover, "at {}", s.quiver.point(z));
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn simples_are_schurian_and_orthogonal() {
    let s = LevelSetup::new(PrimeField::new(5).unwrap(), 4, SignScheme::Parity, SetupOptions::default()).unwrap();
    let t = s.truncation().unwrap();
    let mods = Modules::new(&t, 1);
    let vs: Vec<usize> = s.vi.iter().copied().take(12).collect();
    for &x in &vs {
        for &y in &vs {
            assert_eq!(mods.hom_dim(&mods.simple(x), &mods.simple(y)), usize::from(x == y));
        }
    }
}

proptest! {
    #[test]
    fn prime_field_matches_integer_arithmetic(a in -1000i64..1000, b in -1000i64..1000, p in prop::sample::select(vec![2u32, 3, 5, 7, 101, 65521])) {
        let f = PrimeField::new(p).unwrap();
        let (x, y) = (f.from_i64(a), f.from_i64(b));
        prop_assert_eq!(f.mul(&x, &y), f.from_i64(a * b));
        prop_assert_eq!(f.add(&x, &y), f.from_i64(a + b));
        prop_assert_eq!(f.sub(&x, &y), f.from_i64(a - b));
        if a.rem_euclid(p as i64) != 0 {
            prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x))));
        }
    }
}
