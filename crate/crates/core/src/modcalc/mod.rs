//! Module calculus over `A` (locally) and over truncations `A_i`.

pub mod arrow_truncation;
pub mod decomposition;
pub mod embedded;
pub mod filtration;
pub mod hom;
pub mod orbit;
pub mod periodic;
pub mod rep;
pub mod sequences;
pub mod star;
pub mod syzygy;

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use core::cell::RefCell;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub use embedded::{Ambient, AmbientMap, Embedded};
pub use rep::{Rep, RepMap, Spaces};

use crate::algebra::Truncation;
use crate::error::Result;
use crate::field::Field;

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Module operations over one presentation, with cached projectives and a
/// seeded random source for the randomised steps.
pub struct Modules<'t, 'a, F: Field> {
    pub t: &'t Truncation<'a, F>,
    proj: RefCell<BTreeMap<usize, Rc<Embedded<F>>>>,
    rng: RefCell<ChaCha8Rng>,
}

impl<'t, 'a, F: Field> Modules<'t, 'a, F> {
    pub fn new(t: &'t Truncation<'a, F>, seed: u64) -> Self {
        Self { t, proj: RefCell::new(BTreeMap::new()), rng: RefCell::new(ChaCha8Rng::seed_from_u64(seed)) }
    }

    pub fn field(&self) -> &F {
        self.t.field()
    }

    pub fn projective(&self, x: usize) -> Result<Rc<Embedded<F>>> {
        if let Some(p) = self.proj.borrow().get(&x) {
            return Ok(p.clone());
        }
        let p = Rc::new(Embedded::projective(self.t, x)?);
        self.proj.borrow_mut().insert(x, p.clone());
        Ok(p)
    }

    pub fn simple(&self, x: usize) -> Rep<F> {
        Rep::simple(x)
    }

    pub(crate) fn random(&self) -> F::Elem {
        self.field().random(&mut *self.rng.borrow_mut())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LevelSetup, SetupOptions, SignScheme};
    use crate::field::PrimeField;
    use crate::modcalc::filtration::rhombus_label;
    use crate::modcalc::sequences::{build_module, ModSpec};
    use crate::modcalc::star::Star;
    extern crate std;

    fn setup(level: usize) -> LevelSetup<PrimeField> {
        LevelSetup::new(PrimeField::new(5).unwrap(), level, SignScheme::Parity, SetupOptions::default()).unwrap()
    }

    #[test]
    fn rhombus_modules_on_level_four() {
        let s = setup(4);
        let t = Truncation::full(&s.alg);
        let mods = Modules::new(&t, DEFAULT_SEED);
        let mut n = 0;
        for face in &s.qi.faces {
            for &zp in &face.corners {
                let z = s.index(s.qi.point(zp));
                let y = s.index(s.qi.point(face.opposite(zp).unwrap()));
                let x1 = s.index(s.qi.point(
                    face.corners.iter().copied().find(|&c| c != zp && c != face.opposite(zp).unwrap()).unwrap(),
                ));
                let r = build_module(&t, &ModSpec::paths(z, &[std::vec![z, x1, y]])).unwrap();
                assert_eq!(rhombus_label(&mods, &s.quiver, &r.rep), Some((y, z)));
                n += 1;
            }
        }
        assert_eq!(n, 4 * s.qi.faces.len());
    }

    #[test]
    fn arrow_module_filtrations() {
        let s = setup(4);
        let t = Truncation::full(&s.alg);
        let mods = Modules::new(&t, DEFAULT_SEED);
        let z = s.interior().find(|&z| s.quiver.degree(z) == 5).unwrap();
        let star = Star::new(&s.quiver, z, 0).unwrap();
        let b = build_module(&t, &ModSpec::paths(z, &[std::vec![z, star.xi(1)]])).unwrap();
        assert_eq!(b.dim(), 8);
        let fs = mods.rhombus_filtrations(&s.quiver, &b.rep, 4);
        assert_eq!(fs.len(), 2, "{fs:?}");
        let p = mods.projective(z).unwrap();
        let fs = mods.rhombus_filtrations(&s.quiver, &p.rep, 1);
        assert_eq!(fs[0].len(), 5);
        assert!(mods.is_indecomposable(&b.rep));
        // Ω of a projective vanishes, Ω⁻¹Ω returns
        assert!(mods.syzygy(&p.rep).unwrap().is_zero());
        let om = mods.syzygy(&b.rep).unwrap();
        let back = mods.cosyzygy(&om).unwrap();
        assert!(mods.is_iso(&back, &b.rep));
    }

    #[test]
    fn hearts_at_loops() {
        let s = setup(6);
        let tr = s.truncation().unwrap();
        let mods = Modules::new(&tr, DEFAULT_SEED);
        let loops = tr.loops();
        for &x in &s.vi {
            let h = mods.heart(x).unwrap();
            let p = mods.projective(x).unwrap();
            assert_eq!(h.dim() + 2, p.dim());
            assert_eq!(mods.simple_summand(&h, x).is_some(), loops.contains_key(&x), "at {}", s.quiver.point(x));
        }
    }
}
