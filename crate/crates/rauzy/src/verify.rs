//! The acceptance suite: one check per criterion, each returning a pass
//! flag and a one-line summary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use rauzy_core::algebra::validate::{relative, symmetry_witness, validate_algebra, Relative};
use rauzy_core::algebra::{check_not_symmetric, LevelSetup, RelationTruncated, SetupOptions, SignScheme, Truncation};
use rauzy_core::census::{
    certify_level, determine_base_convention, enumerate_configurations, reference_table, BaseConvention,
};
use rauzy_core::field::{Field, PrimeField, Rationals};
use rauzy_core::modcalc::arrow_truncation::{check_arrow_sequences, check_arrow_truncation, lemma_part};
use rauzy_core::modcalc::filtration::rhombus_label;
use rauzy_core::modcalc::periodic::{check_periodic_line, endpoint_arrows, line_orbit, simple_criterion};
use rauzy_core::modcalc::sequences::{build_module, check_catalogue, two_arrow_defect, ModSpec};
use rauzy_core::modcalc::star::Star;
use rauzy_core::modcalc::Modules;
use rauzy_core::quiver::{classify_vertices, Quiver};
use rauzy_core::tiling::{generate_patch, padded_to_radius, validate_patch};
use serde::{Deserialize, Serialize};

use crate::config::{FieldChoice, RunConfig};
use crate::error::CliError;

/// Tile totals of `P_0 .. P_9`.
pub const TILE_TOTALS: [usize; 10] = [3, 5, 9, 17, 31, 57, 105, 193, 355, 653];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    Tiling,
    Combinatorics,
    AlgebraDims,
    Multiplicity,
    RhombusModules,
    Sequences,
    Truncation,
    LoopsHearts,
    NonSymmetry,
    Periodicity,
    Census,
    FinalTheorem,
}

impl Criterion {
    pub const ALL: [Criterion; 12] = [
        Criterion::Tiling,
        Criterion::Combinatorics,
        Criterion::AlgebraDims,
        Criterion::Multiplicity,
        Criterion::RhombusModules,
        Criterion::Sequences,
        Criterion::Truncation,
        Criterion::LoopsHearts,
        Criterion::NonSymmetry,
        Criterion::Periodicity,
        Criterion::Census,
        Criterion::FinalTheorem,
    ];

    pub fn id(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Tiling => "tiling",
            Criterion::Combinatorics => "combinatorics",
            Criterion::AlgebraDims => "algebra-dims",
            Criterion::Multiplicity => "multiplicity",
            Criterion::RhombusModules => "rhombus-modules",
            Criterion::Sequences => "sequences",
            Criterion::Truncation => "truncation",
            Criterion::LoopsHearts => "loops-hearts",
            Criterion::NonSymmetry => "non-symmetry",
            Criterion::Periodicity => "periodicity",
            Criterion::Census => "census",
            Criterion::FinalTheorem => "final-theorem",
        }
    }

    /// Accepts a name or a number `1..=12`.
    pub fn parse(s: &str) -> Option<Self> {
        if let Ok(i) = s.parse::<usize>() {
            return Self::ALL.get(i.checked_sub(1)?).copied();
        }
        Self::ALL.iter().copied().find(|c| c.name() == s)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {:<16} {status}  {} ({:.1}s)", self.id, self.name, self.detail, self.seconds)
    }
}

type Outcome = Result<(bool, String), CliError>;

struct Ctx<F: Field> {
    field: F,
    signs: SignScheme,
    opts: SetupOptions,
    cfg: RunConfig,
}

impl<F: Field> Ctx<F> {
    fn setup(&self, level: usize) -> Result<LevelSetup<F>, CliError> {
        Ok(LevelSetup::new(self.field.clone(), level, self.signs, self.opts)?)
    }

    fn convention(&self) -> Result<BaseConvention, CliError> {
        Ok(determine_base_convention(&generate_patch(10, self.cfg.tile_budget)?)?.convention)
    }

    /// `--level` overrides the levels of a check that ranges over several.
    fn levels(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.cfg.level {
            Some(l) => vec![l],
            None => default.collect(),
        }
    }
}

fn tiling(cfg: &RunConfig) -> Outcome {
    let mut bad = Vec::new();
    for (i, &want) in TILE_TOTALS.iter().enumerate() {
        let p = generate_patch(i, cfg.tile_budget)?;
        let v = validate_patch(&p);
        if !v.valid || p.tiles.len() != want {
            bad.push(format!("P_{i}: {} tiles, valid {}", p.tiles.len(), v.valid));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "P_0..P_9 valid, totals 3..653".into() } else { bad.join("; ") }))
}

fn combinatorics(cfg: &RunConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut seen = 0;
    for i in 0..=10 {
        let pp = padded_to_radius(i, 1, cfg.padding, cfg.tile_budget)?;
        let q = Quiver::from_patch(&pp.base);
        for (p, c) in classify_vertices(&q, &pp) {
            seen += 1;
            if c.k == 2 && c.n == 6 || c.n < c.k || c.n - c.k > 3 || c.isolated() && c.acute != Some(false) {
                bad.push(format!("P_{i} {p}: {c:?}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{seen} vertices in P_0..P_10; violations: {}", bad.len())))
}

fn algebra_dims<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let level = ctx.cfg.level_or(6);
    let opts = SetupOptions { source_radius: 0, ..ctx.opts };
    let s = LevelSetup::new(ctx.field.clone(), level, ctx.signs, opts)?;
    let rep = validate_algebra(&s.alg, &s.quiver, s.interior());
    let table_ok = rep.x_dims.iter().all(|(&n, ds)| ds == &[n as usize - 2]);
    let mut ok = rep.ok() && table_ok;
    let mut detail = format!(
        "{} interior vertices of P_{level}; X_z dims {:?}; failures {}",
        rep.checked,
        rep.x_dims,
        rep.failures.len()
    );
    // the sign scheme is also validated across the default range
    if ctx.cfg.level.is_none() {
        let mut bad = Vec::new();
        for i in 2..=9 {
            let s = LevelSetup::new(ctx.field.clone(), i, ctx.signs, opts)?;
            if !validate_algebra(&s.alg, &s.quiver, s.interior()).ok() {
                bad.push(i);
            }
        }
        ok &= bad.is_empty();
        detail += &format!("; P_2..P_9 failing {bad:?}");
    }
    Ok((ok, detail))
}

fn multiplicity<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let level = ctx.cfg.level_or(6);
    let s = LevelSetup::new(ctx.field.clone(), level, ctx.signs, SetupOptions { source_radius: 0, ..ctx.opts })?;
    let (mut checked, mut bad) = (0, Vec::new());
    for z in s.interior() {
        checked += 1;
        let n = s.quiver.degree(z);
        let targets: BTreeSet<usize> = s.alg.component_dims(z).keys().map(|&(y, _)| y).collect();
        let mut total = 0;
        for &x in &targets {
            let mult = s.alg.block_dim(z, x);
            total += mult;
            let want = match relative(&s.quiver, z, x) {
                Relative::Same => n,
                Relative::Adjacent => 2,
                Relative::Opposite => 1,
                Relative::Other => 0,
            };
            if mult != want {
                bad.push(format!("{}: [e_zA:S_{}] = {mult}", s.quiver.point(z), s.quiver.point(x)));
            }
        }
        if total != 4 * n || s.alg.dim(z) != 4 * n {
            bad.push(format!("{}: dim {} ≠ 4·{n}", s.quiver.point(z), s.alg.dim(z)));
        }
    }
    Ok((bad.is_empty() && checked > 0, format!("{checked} interior vertices of P_{level}; mismatches {}", bad.len())))
}

fn rhombus_modules<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let level = ctx.cfg.level_or(4);
    let s = ctx.setup(level)?;
    let t = Truncation::full(&s.alg);
    let mods = Modules::new(&t, ctx.cfg.seed);
    let (mut n, mut bad) = (0, 0);
    for face in &s.qi.faces {
        for &zq in &face.corners {
            let yq = face.opposite(zq).unwrap();
            let xq = face.corners.iter().copied().find(|&c| c != zq && c != yq).unwrap();
            let (z, x1, y) = (s.index(s.qi.point(zq)), s.index(s.qi.point(xq)), s.index(s.qi.point(yq)));
            let r = build_module(&t, &ModSpec::paths(z, &[vec![z, x1, y]]))?;
            n += 1;
            if rhombus_label(&mods, &s.quiver, &r.rep) != Some((y, z)) {
                bad += 1;
            }
        }
    }
    Ok((
        bad == 0 && n == 4 * s.qi.faces.len(),
        format!("{n} rhombus modules over {} rhombi of P_{level}; bad {bad}", s.qi.faces.len()),
    ))
}

/// Catalogue over `A` (criterion 6) or after truncation (part of 7).
fn catalogue<F: Field>(ctx: &Ctx<F>, truncated: bool) -> Outcome {
    let level = ctx.cfg.level_or(6);
    let s = ctx.setup(level)?;
    let t = Truncation::full(&s.alg);
    let tr = s.truncation()?;
    let (mut runs, mut bad, mut defects) = (0, Vec::new(), BTreeMap::new());
    for &z in &s.vi {
        let n = s.quiver.degree(z);
        for r in 0..n {
            let star = Star::new(&s.quiver, z, r).ok_or_else(|| CliError::Config("incomplete star".into()))?;
            for res in check_catalogue(&t, &tr, &star)? {
                runs += 1;
                let ok = if truncated { res.truncated.exact } else { res.over_a.exact };
                if !ok {
                    bad.push(format!("{} at {}", res.seq.name(), s.quiver.point(z)));
                }
            }
            if !truncated {
                *defects.entry((n, two_arrow_defect(&t, &star)?)).or_insert(0usize) += 1;
            }
        }
    }
    let defect_ok = truncated
        || defects.keys().all(|&(n, d)| d == if n == 3 { 2 } else { 0 }) && defects.keys().any(|&(n, _)| n == 3);
    let mut detail = format!(
        "{runs} sequence instances at V_{level} {}; failures {}",
        if truncated { "after (−)e_i" } else { "over A" },
        bad.len()
    );
    if !truncated {
        detail +=
            &format!("; n=3 kernel defect {:?}", defects.keys().filter(|k| k.0 == 3).map(|k| k.1).collect::<Vec<_>>());
    }
    Ok((bad.is_empty() && defect_ok && runs > 0, detail))
}

fn truncation<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let level = ctx.cfg.level_or(6);
    let s = ctx.setup(level)?;
    let t = Truncation::full(&s.alg);
    let tr = s.truncation()?;
    let near = s.quiver.bfs_distances(&s.vi, 1);
    let (mut lemma, mut seqs, mut bad) = (BTreeMap::new(), [0usize; 2], Vec::new());
    for &z in near.keys() {
        let Some(star0) = Star::new(&s.quiver, z, 0) else { continue };
        for r in 0..star0.n() {
            let star = Star::new(&s.quiver, z, r).unwrap();
            if s.vi.contains(&z) {
                let rep = check_arrow_sequences(&t, &star)?;
                seqs[rep.case_i as usize] += 1;
                if !rep.ok() {
                    bad.push(format!("sequences at {}", s.quiver.point(z)));
                }
            }
            if let Some(part) = lemma_part(&star, &s.vi) {
                let rep = check_arrow_truncation(&t, &tr, &star, part)?;
                *lemma.entry(format!("{part:?}")).or_insert(0usize) += 1;
                if !rep.ok() {
                    bad.push(format!("lemma ({part:?}) at {}", s.quiver.point(z)));
                }
            }
        }
    }
    let (exact, cat) = catalogue(ctx, true)?;
    let ok = bad.is_empty() && lemma.len() == 2 && seqs.iter().all(|&c| c > 0) && exact;
    Ok((ok, format!("lemma instances {lemma:?}; case (ii)/(i) stars {seqs:?}; failures {}; {cat}", bad.len())))
}

fn loops_hearts<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for level in ctx.levels(6..=8) {
        let s = ctx.setup(level)?;
        let tr = s.truncation()?;
        let mods = Modules::new(&tr, ctx.cfg.seed);
        let loops = tr.loops();
        let mut classes = BTreeSet::new();
        for &v in &s.vi {
            let c = s.classes[&s.quiver.point(v)];
            let want = matches!((c.k, c.n), (3, 6) | (2, 5));
            if want != loops.contains_key(&v) || loops.get(&v).is_some_and(|&l| l != 1) {
                ok = false;
            }
        }
        for &v in loops.keys() {
            let c = s.classes[&s.quiver.point(v)];
            classes.insert((c.k, c.n));
            let h = mods.heart(v)?;
            ok &= mods.simple_summand(&h, v).is_some();
        }
        ok &= !loops.is_empty();
        parts.push(format!("A_{level}: {} loops at {classes:?}", loops.len()));
    }
    Ok((ok, parts.join("; ")))
}

fn non_symmetry<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let b = RelationTruncated::build(ctx.field.clone(), 1, ctx.signs, ctx.cfg.tile_budget)?;
    let r = check_not_symmetric(&b)?;
    // contrast: the untruncated algebra does carry a symmetrizing form
    let level = ctx.cfg.level_or(6);
    let s = ctx.setup(level)?;
    let w = symmetry_witness(&s.alg, &s.quiver, s.interior());
    let detail = format!(
        "P'_z at {}: dim {}, Loewy length {}, corner path in socle {}, socle {} top; A_{level} symmetric form on {} pairs: {}",
        b.qi.point(r.z),
        r.dim,
        r.loewy_length,
        r.corner_path_in_socle,
        if r.socle_is_top() { "=" } else { "≠" },
        w.pairs,
        w.ok()
    );
    Ok((r.ok() && w.ok(), detail))
}

fn periodicity<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let conv = ctx.convention()?;
    let mut ok = true;
    let mut parts = Vec::new();
    for level in ctx.levels(6..=8) {
        let certs = certify_level(level, conv, ctx.cfg.tile_budget)?;
        let s = ctx.setup(level)?;
        let t = Truncation::full(&s.alg);
        let tr = s.truncation()?;
        let mut lines = 0;
        for c in certs.iter().filter(|c| c.certified()) {
            lines += 1;
            for start in endpoint_arrows(&c.line)? {
                let r = check_periodic_line(&s, &t, &tr, &c.line, start, ctx.cfg.seed)?;
                ok &= r.ok();
                if !r.ok() {
                    parts.push(format!("A_{level} {}..{} from {:?}: period {:?}", r.left, r.right, start, r.period));
                }
            }
            parts.push(format!(
                "A_{level} {}..{} k={} period {}",
                c.line.left,
                c.line.right,
                c.line.width,
                2 * c.line.width + 2
            ));
        }
        ok &= lines > 0;
    }
    Ok((ok, parts.join("; ")))
}

fn census<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let conv = ctx.convention()?;
    let mut ok = true;
    let mut counts = Vec::new();
    for ((m, n), want) in reference_table() {
        let e = enumerate_configurations(m, n, 10, conv, ctx.cfg.tile_budget)?;
        let want: BTreeSet<_> = want.into_iter().collect();
        ok &= e.configurations == want && e.count() == m * n + m + n;
        counts.push(e.count());
    }
    let mut certified = Vec::new();
    for level in ctx.levels(6..=9) {
        let certs = certify_level(level, conv, ctx.cfg.tile_budget)?;
        let good: Vec<_> = certs.iter().filter(|c| c.certified()).collect();
        ok &= !good.is_empty() && good.iter().all(|c| c.completions_ok());
        certified.push(format!("P_{level}:{}/{}", good.len(), certs.len()));
    }
    Ok((ok, format!("counts {counts:?}; certified/candidate lines {}", certified.join(" "))))
}

fn final_theorem<F: Field>(ctx: &Ctx<F>) -> Outcome {
    let level = ctx.cfg.level_or(7);
    let conv = ctx.convention()?;
    let certs = certify_level(level, conv, ctx.cfg.tile_budget)?;
    let Some(c) = certs.iter().find(|c| c.certified()) else {
        return Ok((false, format!("no certified line in P_{level}")));
    };
    let s = ctx.setup(level)?;
    let tr = s.truncation()?;
    let start = endpoint_arrows(&c.line)?[0];
    let orbit = line_orbit(&s, &tr, &c.line, start, ctx.cfg.seed)?;
    if orbit.period.is_none() {
        return Ok((false, "orbit not periodic".into()));
    }
    let r = simple_criterion(&s, &tr, &c.line, &orbit, 3, ctx.cfg.seed)?;
    let detail = format!(
        "A_{level}, line {}..{}: {} of {} vertices detected, {} on the line, cosyzygies match {}",
        c.line.left,
        c.line.right,
        r.detected.len(),
        s.vi.len(),
        r.on_line.len(),
        r.cosyzygies_match
    );
    Ok((r.ok(), detail))
}

fn run_with<F: Field>(ctx: &Ctx<F>, c: Criterion) -> Outcome {
    match c {
        Criterion::Tiling => tiling(&ctx.cfg),
        Criterion::Combinatorics => combinatorics(&ctx.cfg),
        Criterion::AlgebraDims => algebra_dims(ctx),
        Criterion::Multiplicity => multiplicity(ctx),
        Criterion::RhombusModules => rhombus_modules(ctx),
        Criterion::Sequences => catalogue(ctx, false),
        Criterion::Truncation => truncation(ctx),
        Criterion::LoopsHearts => loops_hearts(ctx),
        Criterion::NonSymmetry => non_symmetry(ctx),
        Criterion::Periodicity => periodicity(ctx),
        Criterion::Census => census(ctx),
        Criterion::FinalTheorem => final_theorem(ctx),
    }
}

/// Runs one check. Configuration problems are errors; computational
/// failures become a failed result.
pub fn run(c: Criterion, cfg: &RunConfig) -> Result<CheckResult, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let signs = cfg.sign_scheme()?;
    let opts = cfg.setup_options();
    let out = match cfg.field {
        FieldChoice::Rational => run_with(&Ctx { field: Rationals, signs, opts, cfg: cfg.clone() }, c),
        FieldChoice::Prime(p) => {
            let field = PrimeField::new(p).ok_or_else(|| CliError::Config(format!("{p} is not prime")))?;
            run_with(&Ctx { field, signs, opts, cfg: cfg.clone() }, c)
        }
    };
    let (passed, detail) = match out {
        Ok(v) => v,
        Err(CliError::Config(m)) => return Err(CliError::Config(m)),
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(CheckResult { id: c.id(), name: c.name().into(), passed, detail, seconds: start.elapsed().as_secs_f64() })
}

pub fn run_all(only: &[Criterion], cfg: &RunConfig) -> Result<Vec<CheckResult>, CliError> {
    let list: Vec<Criterion> = if only.is_empty() { Criterion::ALL.to_vec() } else { only.to_vec() };
    list.into_iter().map(|c| run(c, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_parse() {
        for c in Criterion::ALL {
            assert_eq!(Criterion::parse(c.name()), Some(c));
            assert_eq!(Criterion::parse(&c.id().to_string()), Some(c));
        }
        assert_eq!(Criterion::parse("13"), None);
        assert_eq!(Criterion::parse("0"), None);
    }

    #[test]
    fn corrupted_signs_fail_the_dimension_check() {
        let cfg = RunConfig { signs: "corrupted-0-0".into(), level: Some(3), ..Default::default() };
        let r = run(Criterion::AlgebraDims, &cfg).unwrap();
        assert!(!r.passed, "{r}");
    }
}
