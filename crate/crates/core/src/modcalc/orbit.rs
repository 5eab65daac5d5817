//! `Ω`-orbits and period detection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rep::Rep;
use super::Modules;
use crate::error::Result;
use crate::field::Field;

/// One term `Ω^j(M)` of an orbit.
#[derive(Clone, Debug)]
pub struct OrbitTerm<F: Field> {
    pub rep: Rep<F>,
    pub top: BTreeMap<usize, usize>,
    pub socle: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug)]
pub struct OmegaOrbit<F: Field> {
    /// `M, Ω(M), …`; the last term is `Ω^p(M) ≅ M` when a period was found.
    pub terms: Vec<OrbitTerm<F>>,
    pub period: Option<usize>,
    /// Some `Ω^j(M)` vanished: `M` has finite projective dimension.
    pub reached_zero: bool,
}

impl<F: Field> Modules<'_, '_, F> {
    fn orbit_term(&self, rep: Rep<F>) -> OrbitTerm<F> {
        OrbitTerm { top: rep.top_dims(self.t), socle: rep.socle_dims(self.t), rep }
    }

    /// Iterates `Ω` until a term is isomorphic to `M`, vanishes, exceeds
    /// `max_dim`, or `max_steps` is reached.
    pub fn omega_orbit(&self, m: &Rep<F>, max_steps: usize, max_dim: usize) -> Result<OmegaOrbit<F>> {
        let mut terms = alloc::vec![self.orbit_term(m.clone())];
        for j in 1..=max_steps {
            let next = self.syzygy(&terms[j - 1].rep)?;
            if next.dim() > max_dim {
                terms.push(self.orbit_term(next));
                break;
            }
            if next.is_zero() {
                terms.push(self.orbit_term(next));
                return Ok(OmegaOrbit { terms, period: None, reached_zero: true });
            }
            let back = self.is_iso(&next, m);
            terms.push(self.orbit_term(next));
            if back {
                return Ok(OmegaOrbit { terms, period: Some(j), reached_zero: false });
            }
        }
        Ok(OmegaOrbit { terms, period: None, reached_zero: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LevelSetup, SetupOptions, SignScheme};
    use crate::field::PrimeField;
    use crate::modcalc::sequences::{build_module, ModSpec};
    use crate::modcalc::DEFAULT_SEED;

    #[test]
    fn projectives_reach_zero_and_caps_stop() {
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 3, SignScheme::Parity, SetupOptions::default()).unwrap();
        let tr = s.truncation().unwrap();
        let mods = Modules::new(&tr, DEFAULT_SEED);
        let z = *s.vi.iter().next().unwrap();
        let p = mods.projective(z).unwrap();
        let o = mods.omega_orbit(&p.rep, 3, 100).unwrap();
        assert!(o.reached_zero && o.period.is_none());
        assert_eq!(o.terms.len(), 2);
        let w = s.quiver.out_arrows[z].iter().map(|&a| s.quiver.arrows[a].to).find(|w| s.vi.contains(w)).unwrap();
        let m = build_module(&tr, &ModSpec::paths(z, &[alloc::vec![z, w]])).unwrap();
        let o = mods.omega_orbit(&m.rep, 50, 0).unwrap();
        assert_eq!(o.terms.len(), 2);
        assert!(o.period.is_none() && !o.reached_zero);
    }
}
