//! Periodicity of arrow modules along a horizontal line of `Q_i`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::orbit::OmegaOrbit;
use super::sequences::{build_module, ModSpec};
use super::Modules;
use crate::algebra::{LevelSetup, Truncation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{is_horizontal, HorizontalLine};
use crate::tiling::LatticePoint;

/// Terms above this dimension mean the orbit has left the line.
pub const ORBIT_DIM_CAP: usize = 40;

/// The turn at one end `e` of the line: `Ω` sends `bA_i` (`b: w → e`, `w`
/// the neighbour on the line) to `hh̄A_i`, `h: e → x` the continuation
/// outside the patch, and then to `b̄A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndTurn {
    pub end: LatticePoint,
    pub neighbour: LatticePoint,
    pub continuation: LatticePoint,
    /// Index `j` of the orbit term isomorphic to `bA_i`.
    pub step: Option<usize>,
    pub middle_ok: bool,
    pub after_ok: bool,
}

impl EndTurn {
    pub fn ok(&self) -> bool {
        self.step.is_some() && self.middle_ok && self.after_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub left: LatticePoint,
    pub right: LatticePoint,
    pub width: usize,
    /// The arrow `u → w` whose module starts the orbit.
    pub start: (LatticePoint, LatticePoint),
    pub period: Option<usize>,
    pub dims: Vec<usize>,
    pub tops_on_line: bool,
    pub turns: Vec<EndTurn>,
}

impl PeriodicityReport {
    pub fn expected_period(&self) -> usize {
        2 * self.width + 2
    }

    pub fn ok(&self) -> bool {
        self.period == Some(self.expected_period()) && self.tops_on_line && self.turns.iter().all(EndTurn::ok)
    }
}

fn neighbour_on_line(line: &HorizontalLine, e: LatticePoint) -> Result<LatticePoint> {
    line.edges
        .iter()
        .find_map(|&(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
        .ok_or_else(|| Error::Algebra(alloc::format!("{e:?} has no edge on the line")))
}

fn continuation<F: Field>(s: &LevelSetup<F>, e: LatticePoint, dir: i64) -> Result<LatticePoint> {
    let q = &s.quiver;
    let z = s.index(e);
    q.out_arrows[z]
        .iter()
        .filter(|&&a| is_horizontal(q, a))
        .map(|&a| q.arrows[a].to)
        .find(|&x| !s.vi.contains(&x) && q.point(x).m - e.m == dir)
        .map(|x| q.point(x))
        .ok_or_else(|| Error::Algebra(alloc::format!("{e:?} has no continuation outside the patch")))
}

/// The arrow modules at the ends of `line`, as `(u, w)` for `u → w`.
pub fn endpoint_arrows(line: &HorizontalLine) -> Result<Vec<(LatticePoint, LatticePoint)>> {
    let mut out = Vec::new();
    for e in [line.left, line.right] {
        let w = neighbour_on_line(line, e)?;
        out.push((e, w));
        out.push((w, e));
    }
    Ok(out)
}

/// The `Ω`-orbit of the arrow module `u → w` over `tr`, run for at most
/// `2k + 2` steps.
pub fn line_orbit<F: Field>(
    s: &LevelSetup<F>,
    tr: &Truncation<'_, F>,
    line: &HorizontalLine,
    start: (LatticePoint, LatticePoint),
    seed: u64,
) -> Result<OmegaOrbit<F>> {
    let mods = Modules::new(tr, seed);
    let (u, w) = (s.index(start.0), s.index(start.1));
    let m = build_module(tr, &ModSpec::paths(u, &[vec![u, w]]))?.rep;
    mods.omega_orbit(&m, 2 * line.width + 2, ORBIT_DIM_CAP)
}

/// Runs the `Ω`-orbit of the arrow module `start` over `tr = A_i` for up to
/// `2k + 2` steps; `t` presents `A` around the patch.
pub fn check_periodic_line<F: Field>(
    s: &LevelSetup<F>,
    t: &Truncation<'_, F>,
    tr: &Truncation<'_, F>,
    line: &HorizontalLine,
    start: (LatticePoint, LatticePoint),
    seed: u64,
) -> Result<PeriodicityReport> {
    let mods = Modules::new(tr, seed);
    let arrow = |u: LatticePoint, w: LatticePoint| -> Result<_> {
        let (u, w) = (s.index(u), s.index(w));
        Ok(build_module(tr, &ModSpec::paths(u, &[vec![u, w]]))?.rep)
    };
    let orbit = line_orbit(s, tr, line, start, seed)?;
    let on_line = |v: usize| line.vertices.contains(&s.quiver.point(v));
    let tops_on_line = orbit.terms.iter().all(|term| term.top.keys().all(|&v| on_line(v)));

    let mut turns = Vec::new();
    if let Some(p) = orbit.period {
        for (e, dir) in [(line.left, -1), (line.right, 1)] {
            let w = neighbour_on_line(line, e)?;
            let x = continuation(s, e, dir)?;
            let b = arrow(w, e)?;
            let bbar = arrow(e, w)?;
            let (ei, xi) = (s.index(e), s.index(x));
            let hh = build_module(t, &ModSpec::paths(ei, &[vec![ei, xi, ei]]))?.restrict(tr)?.rep;
            let step = (0..p).find(|&j| mods.is_iso(&orbit.terms[j].rep, &b));
            let (middle_ok, after_ok) = match step {
                Some(j) => {
                    (mods.is_iso(&orbit.terms[(j + 1) % p].rep, &hh), mods.is_iso(&orbit.terms[(j + 2) % p].rep, &bbar))
                }
                None => (false, false),
            };
            turns.push(EndTurn { end: e, neighbour: w, continuation: x, step, middle_ok, after_ok });
        }
    }
    Ok(PeriodicityReport {
        left: line.left,
        right: line.right,
        width: line.width,
        start,
        period: orbit.period,
        dims: orbit.terms.iter().map(|t| t.rep.dim()).collect(),
        tops_on_line,
        turns,
    })
}

/// Which simples are detected by stable maps out of the orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCriterion {
    /// `x ∈ V_i` with `\underline{Hom}(Ω^{-t}W, S_x) ≠ 0` for some term.
    pub detected: BTreeSet<LatticePoint>,
    pub on_line: BTreeSet<LatticePoint>,
    /// `Ω^{-t}(W)` computed by cosyzygies agrees with the orbit term
    /// `Ω^{p−t}(W)` for the tested `t`.
    pub cosyzygies_match: bool,
}

impl SimpleCriterion {
    pub fn ok(&self) -> bool {
        self.detected == self.on_line && self.cosyzygies_match
    }
}

/// Checks, for every vertex `x` of `Q_i`, that some `Ω^{-t}(W)` has a
/// nonzero stable map to `S_x` exactly when `x` lies on the line. `orbit`
/// must be periodic; its terms are the `Ω^{-t}(W)` up to reindexing, and
/// the first `cosyzygy_checks` shifts are recomputed with cosyzygies.
pub fn simple_criterion<F: Field>(
    s: &LevelSetup<F>,
    tr: &Truncation<'_, F>,
    line: &HorizontalLine,
    orbit: &OmegaOrbit<F>,
    cosyzygy_checks: usize,
    seed: u64,
) -> Result<SimpleCriterion> {
    let p = orbit.period.ok_or_else(|| Error::Module("orbit is not periodic".into()))?;
    let mods = Modules::new(tr, seed);
    let terms = &orbit.terms[..p];
    let mut cur = terms[0].rep.clone();
    let mut cosyzygies_match = true;
    for t in 1..=cosyzygy_checks.min(p - 1) {
        cur = mods.cosyzygy(&cur)?;
        cosyzygies_match &= mods.is_iso(&cur, &terms[p - t].rep);
    }
    let mut detected = BTreeSet::new();
    for &x in &s.vi {
        let sx = mods.simple(x);
        for term in terms {
            if mods.hom_dim(&term.rep, &sx) > 0 && mods.stable_hom_dim(&term.rep, &sx)? > 0 {
                detected.insert(s.quiver.point(x));
                break;
            }
        }
    }
    Ok(SimpleCriterion { detected, on_line: line.vertices.iter().copied().collect(), cosyzygies_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{SetupOptions, SignScheme};
    use crate::census::{certify_level, determine_base_convention};
    use crate::field::PrimeField;
    use crate::modcalc::DEFAULT_SEED;
    use crate::tiling::{generate_patch, DEFAULT_TILE_BUDGET};

    fn run(level: usize) -> (Vec<PeriodicityReport>, Vec<PeriodicityReport>) {
        let conv = determine_base_convention(&generate_patch(10, DEFAULT_TILE_BUDGET).unwrap()).unwrap().convention;
        let certs = certify_level(level, conv, DEFAULT_TILE_BUDGET).unwrap();
        let s =
            LevelSetup::new(PrimeField::new(5).unwrap(), level, SignScheme::Parity, SetupOptions::default()).unwrap();
        let t = Truncation::full(&s.alg);
        let tr = s.truncation().unwrap();
        let (mut good, mut bad) = (Vec::new(), Vec::new());
        for c in &certs {
            let start = endpoint_arrows(&c.line).unwrap()[0];
            let r = check_periodic_line(&s, &t, &tr, &c.line, start, DEFAULT_SEED).unwrap();
            if c.certified() {
                good.push(r)
            } else {
                bad.push(r)
            }
        }
        (good, bad)
    }

    #[test]
    fn certified_line_at_level_six_has_period_2k_plus_2() {
        let (good, bad) = run(6);
        assert_eq!(good.len(), 1);
        for r in &good {
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.period, Some(24));
            assert_eq!(r.turns.len(), 2);
        }
        // the uncertified candidate leaves its line
        assert!(bad.iter().all(|r| r.period.is_none()), "{bad:?}");
    }

    #[test]
    fn certified_lines_at_levels_seven_and_eight() {
        for level in [7, 8] {
            let (good, bad) = run(level);
            assert_eq!(good.len(), 1, "level {level}");
            assert!(good.iter().all(PeriodicityReport::ok), "{good:?}");
            assert!(bad.iter().all(|r| r.period.is_none()));
        }
    }

    #[test]
    fn every_endpoint_arrow_is_periodic() {
        let conv = determine_base_convention(&generate_patch(10, DEFAULT_TILE_BUDGET).unwrap()).unwrap().convention;
        let cert = certify_level(6, conv, DEFAULT_TILE_BUDGET).unwrap().into_iter().find(|c| c.certified()).unwrap();
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 6, SignScheme::Parity, SetupOptions::default()).unwrap();
        let t = Truncation::full(&s.alg);
        let tr = s.truncation().unwrap();
        for start in endpoint_arrows(&cert.line).unwrap() {
            let r = check_periodic_line(&s, &t, &tr, &cert.line, start, DEFAULT_SEED).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn stable_maps_detect_exactly_the_line() {
        let conv = determine_base_convention(&generate_patch(10, DEFAULT_TILE_BUDGET).unwrap()).unwrap().convention;
        let cert = certify_level(7, conv, DEFAULT_TILE_BUDGET).unwrap().into_iter().find(|c| c.certified()).unwrap();
        let s = LevelSetup::new(PrimeField::new(5).unwrap(), 7, SignScheme::Parity, SetupOptions::default()).unwrap();
        let tr = s.truncation().unwrap();
        let start = endpoint_arrows(&cert.line).unwrap()[0];
        let orbit = line_orbit(&s, &tr, &cert.line, start, DEFAULT_SEED).unwrap();
        let r = simple_criterion(&s, &tr, &cert.line, &orbit, 3, DEFAULT_SEED).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.on_line.len(), cert.line.vertices.len());
    }
}
