//! Subcommand bodies. Each returns the text for stdout and whether every
//! check it ran passed.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rauzy_core::algebra::validate::validate_algebra;
use rauzy_core::algebra::{LevelSetup, SetupOptions, Truncation};
use rauzy_core::census::{certify_level, determine_base_convention, enumerate_configurations, reference_table};
use rauzy_core::field::{Field, PrimeField, Rationals};
use rauzy_core::modcalc::periodic::{check_periodic_line, endpoint_arrows};
use rauzy_core::quiver::{class_histogram, classify_vertices, find_horizontal_lines, Quiver};
use rauzy_core::tiling::{generate_patch, padded_to_radius, validate_patch};
use serde::Serialize;

use crate::config::{FieldChoice, RunConfig};
use crate::dto::{
    point, AlgebraReportJson, CensusJson, CertificateJson, ClassCount, ConfigurationListJson, Envelope, LineJson,
    LoopJson, OrbitJson, PatchJson, QuiverJson,
};
use crate::error::CliError;
use crate::svg::{render_patch, SvgOptions};
use crate::verify::{run_all, CheckResult, Criterion};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn json<T: Serialize>(kind: &str, cfg: &RunConfig, data: T, passed: bool) -> Result<Output, CliError> {
    let text = serde_json::to_string_pretty(&Envelope::new(kind, cfg, data))?;
    Ok(Output { text, passed })
}

/// Where `tile` sends its SVG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SvgTarget {
    None,
    Stdout,
    File(PathBuf),
}

/// `P_i` as JSON, plus SVG as requested. `highlight` adds the horizontal
/// lines to both.
pub fn tile(cfg: &RunConfig, svg: &SvgTarget, highlight: bool) -> Result<Output, CliError> {
    cfg.validate()?;
    let level = cfg.level_or(6);
    let p = generate_patch(level, cfg.tile_budget)?;
    let passed = validate_patch(&p).valid;
    let lines = if highlight { find_horizontal_lines(&Quiver::from_patch(&p)) } else { Vec::new() };
    let render = || render_patch(&p, &SvgOptions { lines: lines.clone(), label_types: false });
    match svg {
        SvgTarget::Stdout => return Ok(Output { text: render(), passed }),
        SvgTarget::File(path) => std::fs::write(path, render())?,
        SvgTarget::None => {}
    }
    let mut data = PatchJson::from(&p);
    data.lines = lines.iter().map(LineJson::from).collect();
    json("patch", cfg, data, passed)
}

#[derive(Serialize)]
struct AnalyzeJson {
    quiver: QuiverJson,
    algebra: AlgebraReportJson,
}

fn analyze_with<F: Field>(cfg: &RunConfig, field: F) -> Result<Output, CliError> {
    let level = cfg.level_or(6);
    let opts = SetupOptions { source_radius: 0, ..cfg.setup_options() };
    let s = LevelSetup::new(field, level, cfg.sign_scheme()?, opts)?;
    let pp = padded_to_radius(level, 1, cfg.padding, cfg.tile_budget)?;
    let full = classify_vertices(&s.qi, &pp);
    let rep = validate_algebra(&s.alg, &s.quiver, s.interior());
    let tr = s.truncation()?;
    let loops: Vec<LoopJson> = tr
        .loops()
        .into_iter()
        .map(|(v, l)| {
            let p = s.quiver.point(v);
            let c = s.classes[&p];
            LoopJson { at: point(p), k: c.k, n: c.n, loops: l }
        })
        .collect();
    let algebra = AlgebraReportJson {
        level,
        vertices: s.qi.vertices.len(),
        classes: class_histogram(&full).into_iter().map(|((k, n), count)| ClassCount { k, n, count }).collect(),
        x_dims: rep.x_dims.clone(),
        loops,
        max_n_minus_k: full.values().map(|c| c.n.saturating_sub(c.k)).max().unwrap_or(0),
        validation_checked: rep.checked,
        validation_failures: rep.failures.clone(),
    };
    let quiver = QuiverJson::new(&s.qi, &full, &find_horizontal_lines(&s.qi));
    json("analysis", cfg, AnalyzeJson { quiver, algebra }, rep.ok())
}

pub fn analyze(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    match cfg.field {
        FieldChoice::Rational => analyze_with(cfg, Rationals),
        FieldChoice::Prime(p) => analyze_with(cfg, prime(p)?),
    }
}

fn prime(p: u32) -> Result<PrimeField, CliError> {
    PrimeField::new(p).ok_or_else(|| CliError::Config(format!("{p} is not prime")))
}

/// Configuration census and endpoint certificates. `--level` picks the
/// certificate level; otherwise levels 6 to 9.
pub fn census(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    let conv = determine_base_convention(&generate_patch(10, cfg.tile_budget)?)?;
    let mut passed = true;
    let mut configurations = Vec::new();
    for ((m, n), want) in reference_table() {
        let e = enumerate_configurations(m, n, 10, conv.convention, cfg.tile_budget)?;
        passed &= e.configurations.iter().collect::<BTreeSet<_>>() == want.iter().collect();
        configurations.push(ConfigurationListJson::from(&e));
    }
    let levels: Vec<usize> = cfg.level.map_or_else(|| (6..=9).collect(), |l| vec![l]);
    let mut certificates = BTreeMap::new();
    for level in levels {
        let certs = certify_level(level, conv.convention, cfg.tile_budget)?;
        passed &= certs.iter().any(|c| c.certified());
        certificates.insert(level, certs.iter().map(CertificateJson::from).collect());
    }
    let data =
        CensusJson { convention: conv.convention, survivors: conv.survivors.clone(), configurations, certificates };
    json("census", cfg, data, passed)
}

fn periodicity_with<F: Field>(cfg: &RunConfig, field: F) -> Result<Output, CliError> {
    let level = cfg.level_or(6);
    let conv = determine_base_convention(&generate_patch(10, cfg.tile_budget)?)?.convention;
    let s = LevelSetup::new(field, level, cfg.sign_scheme()?, cfg.setup_options())?;
    let t = Truncation::full(&s.alg);
    let tr = s.truncation()?;
    let mut orbits = Vec::new();
    for c in certify_level(level, conv, cfg.tile_budget)?.iter().filter(|c| c.certified()) {
        for start in endpoint_arrows(&c.line)? {
            let r = check_periodic_line(&s, &t, &tr, &c.line, start, cfg.seed)?;
            orbits.push(OrbitJson::new(level, &r));
        }
    }
    let passed = !orbits.is_empty() && orbits.iter().all(|o| o.ok);
    json("periodicity", cfg, orbits, passed)
}

pub fn periodicity(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    match cfg.field {
        FieldChoice::Rational => periodicity_with(cfg, Rationals),
        FieldChoice::Prime(p) => periodicity_with(cfg, prime(p)?),
    }
}

/// Text lines by default, the result list as JSON with `as_json`.
pub fn verify_all(cfg: &RunConfig, only: &[Criterion], as_json: bool) -> Result<Output, CliError> {
    let results: Vec<CheckResult> = run_all(only, cfg)?;
    let passed = results.iter().all(|r| r.passed);
    if as_json {
        return json("verify", cfg, results, passed);
    }
    let mut text: Vec<String> = results.iter().map(|r| r.to_string()).collect();
    text.push(format!("{}/{} passed", results.iter().filter(|r| r.passed).count(), results.len()));
    Ok(Output { text: text.join("\n"), passed })
}
