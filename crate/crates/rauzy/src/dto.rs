//! Versioned JSON documents.

use std::collections::BTreeMap;

use rauzy_core::census::{CensusEntry, Configuration, EndpointCertificate, WindowCheck};
use rauzy_core::modcalc::periodic::{EndTurn, PeriodicityReport};
use rauzy_core::quiver::{HorizontalLine, Quiver, VertexClass};
use rauzy_core::tiling::{CubePoint, LatticePoint, Patch, Rhombus};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Every document carries its schema tag and the configuration that made it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub config: RunConfig,
    pub data: T,
}

impl<T> Envelope<T> {
    pub fn new(kind: &str, config: &RunConfig, data: T) -> Self {
        Self { schema: format!("rauzy/{kind}/v{SCHEMA_VERSION}"), config: config.clone(), data }
    }
}

pub type Point = [i64; 2];

pub fn point(p: LatticePoint) -> Point {
    [p.m, p.n]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileJson {
    #[serde(rename = "type")]
    pub kind: u8,
    pub anchor: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchJson {
    pub level: usize,
    pub tiles: Vec<TileJson>,
    /// Horizontal lines, when requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<LineJson>,
}

impl From<&Patch> for PatchJson {
    fn from(p: &Patch) -> Self {
        let tiles = p.tiles.iter().map(|t| TileJson { kind: t.kind, anchor: t.anchor.0 }).collect();
        Self { level: p.level, tiles, lines: Vec::new() }
    }
}

impl From<&PatchJson> for Patch {
    fn from(p: &PatchJson) -> Self {
        let tiles = p.tiles.iter().map(|t| Rhombus { kind: t.kind, anchor: CubePoint(t.anchor) }).collect();
        Patch { level: p.level, tiles }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub at: Point,
    pub k: u8,
    pub n: u8,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub left: Point,
    pub right: Point,
    pub width: usize,
    pub vertices: Vec<Point>,
}

impl From<&HorizontalLine> for LineJson {
    fn from(l: &HorizontalLine) -> Self {
        Self {
            left: point(l.left),
            right: point(l.right),
            width: l.width,
            vertices: l.vertices.iter().copied().map(point).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<Point>,
    /// `[from, to]` as indices into `vertices`.
    pub arrows: Vec<[usize; 2]>,
    pub classes: Vec<ClassJson>,
    pub lines: Vec<LineJson>,
}

impl QuiverJson {
    pub fn new(q: &Quiver, classes: &BTreeMap<LatticePoint, VertexClass>, lines: &[HorizontalLine]) -> Self {
        Self {
            vertices: q.vertices.iter().copied().map(point).collect(),
            arrows: q.arrows.iter().map(|a| [a.from, a.to]).collect(),
            classes: classes
                .iter()
                .map(|(&p, c)| ClassJson { at: point(p), k: c.k, n: c.n, boundary: c.boundary })
                .collect(),
            lines: lines.iter().map(LineJson::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub k: u8,
    pub n: u8,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopJson {
    pub at: Point,
    pub k: u8,
    pub n: u8,
    pub loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReportJson {
    pub level: usize,
    pub vertices: usize,
    pub classes: Vec<ClassCount>,
    /// `dim X_z` values seen at interior `n`-vertices.
    pub x_dims: BTreeMap<u8, Vec<usize>>,
    pub loops: Vec<LoopJson>,
    pub max_n_minus_k: u8,
    pub validation_checked: usize,
    pub validation_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationListJson {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    /// Row-major, top row first.
    pub matrices: Vec<Vec<Vec<u8>>>,
}

impl From<&CensusEntry> for ConfigurationListJson {
    fn from(e: &CensusEntry) -> Self {
        Self { m: e.m, n: e.n, count: e.count(), matrices: e.configurations.iter().map(|c| c.rows.clone()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub at: Point,
    pub want: Vec<Vec<u8>>,
    pub found: Option<Vec<Vec<u8>>>,
    pub ok: bool,
}

impl From<&WindowCheck> for WindowJson {
    fn from(w: &WindowCheck) -> Self {
        Self {
            at: point(w.at),
            want: w.want.rows.clone(),
            found: w.found.as_ref().map(|c: &Configuration| c.rows.clone()),
            ok: w.ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub line: LineJson,
    pub right: WindowJson,
    pub left: WindowJson,
    pub left_lower: WindowJson,
    pub four_vertices: bool,
    pub truncation_hypotheses: [bool; 2],
    pub certified: bool,
}

impl From<&EndpointCertificate> for CertificateJson {
    fn from(c: &EndpointCertificate) -> Self {
        Self {
            line: (&c.line).into(),
            right: (&c.right).into(),
            left: (&c.left).into(),
            left_lower: (&c.left_lower).into(),
            four_vertices: c.four_vertices,
            truncation_hypotheses: c.truncation_hypotheses,
            certified: c.certified(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub convention: [u8; 3],
    pub survivors: Vec<[u8; 3]>,
    pub configurations: Vec<ConfigurationListJson>,
    /// Per level.
    pub certificates: BTreeMap<usize, Vec<CertificateJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnJson {
    pub end: Point,
    pub neighbour: Point,
    pub continuation: Point,
    pub step: Option<usize>,
    pub ok: bool,
}

impl From<&EndTurn> for TurnJson {
    fn from(t: &EndTurn) -> Self {
        Self {
            end: point(t.end),
            neighbour: point(t.neighbour),
            continuation: point(t.continuation),
            step: t.step,
            ok: t.ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub level: usize,
    pub left: Point,
    pub right: Point,
    pub width: usize,
    pub start: [Point; 2],
    pub period: Option<usize>,
    pub expected_period: usize,
    pub dims: Vec<usize>,
    pub tops_on_line: bool,
    pub turns: Vec<TurnJson>,
    pub ok: bool,
}

impl OrbitJson {
    pub fn new(level: usize, r: &PeriodicityReport) -> Self {
        Self {
            level,
            left: point(r.left),
            right: point(r.right),
            width: r.width,
            start: [point(r.start.0), point(r.start.1)],
            period: r.period,
            expected_period: r.expected_period(),
            dims: r.dims.clone(),
            tops_on_line: r.tops_on_line,
            turns: r.turns.iter().map(TurnJson::from).collect(),
            ok: r.ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rauzy_core::tiling::{generate_patch, DEFAULT_TILE_BUDGET};

    #[test]
    fn patch_round_trip() {
        let p = generate_patch(4, DEFAULT_TILE_BUDGET).unwrap();
        let j = PatchJson::from(&p);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"type\":"));
        let back: PatchJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Patch::from(&back), p);
    }

    #[test]
    fn envelope_tags_schema() {
        let e = Envelope::new("patch", &RunConfig::default(), 3u8);
        assert_eq!(e.schema, "rauzy/patch/v1");
    }
}
