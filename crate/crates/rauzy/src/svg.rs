//! SVG rendering of patches in the real embedding.

use std::fmt::Write;

use rauzy_core::quiver::HorizontalLine;
use rauzy_core::tiling::{LatticePoint, Patch};

const SCALE: f64 = 24.0;
const MARGIN: f64 = 12.0;
const FILL: [&str; 3] = ["#e8c170", "#8fb8de", "#b5d99c"];

#[derive(Clone, Debug, Default)]
pub struct SvgOptions {
    /// Lines drawn in bold over the tiles.
    pub lines: Vec<HorizontalLine>,
    pub label_types: bool,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn of(p: &Patch) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for v in p.vertices() {
            let (x, y) = v.embed();
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        if p.tiles.is_empty() {
            (min_x, max_x, min_y, max_y) = (0.0, 0.0, 0.0, 0.0);
        }
        Self {
            min_x,
            max_y,
            width: (max_x - min_x) * SCALE + 2.0 * MARGIN,
            height: (max_y - min_y) * SCALE + 2.0 * MARGIN,
        }
    }

    /// SVG's y axis points down.
    fn xy(&self, p: LatticePoint) -> (f64, f64) {
        let (x, y) = p.embed();
        ((x - self.min_x) * SCALE + MARGIN, (self.max_y - y) * SCALE + MARGIN)
    }
}

pub fn render_patch(p: &Patch, opts: &SvgOptions) -> String {
    let fr = Frame::of(p);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        fr.width, fr.height, fr.width, fr.height
    );
    let _ = writeln!(s, r##"<g stroke="#333" stroke-width="0.8" stroke-linejoin="round">"##);
    for t in &p.tiles {
        let [a, au, av, auv] = t.corners();
        let pts: Vec<String> = [a, au, auv, av]
            .iter()
            .map(|&c| {
                let (x, y) = fr.xy(c);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon class="r{}" fill="{}" points="{}"/>"#,
            t.kind,
            FILL[(t.kind - 1) as usize],
            pts.join(" ")
        );
    }
    s.push_str("</g>\n");
    if opts.label_types {
        let _ = writeln!(s, r##"<g font-size="8" text-anchor="middle" fill="#222">"##);
        for t in &p.tiles {
            let [a, _, _, auv] = t.corners();
            let ((x0, y0), (x1, y1)) = (fr.xy(a), fr.xy(auv));
            let _ =
                writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, (x0 + x1) / 2.0, (y0 + y1) / 2.0 + 3.0, t.kind);
        }
        s.push_str("</g>\n");
    }
    if !opts.lines.is_empty() {
        let _ = writeln!(s, r##"<g class="lines" stroke="#c0392b" stroke-width="3" stroke-linecap="round">"##);
        for l in &opts.lines {
            for &(u, w) in &l.edges {
                let ((x0, y0), (x1, y1)) = (fr.xy(u), fr.xy(w));
                let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}"/>"#);
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rauzy_core::tiling::{generate_patch, DEFAULT_TILE_BUDGET};

    #[test]
    fn one_polygon_per_tile() {
        let p = generate_patch(6, DEFAULT_TILE_BUDGET).unwrap();
        let svg = render_patch(&p, &SvgOptions::default());
        assert_eq!(svg.matches("<polygon").count(), 105);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn initial_patch_is_a_hexagon() {
        let svg = render_patch(&Patch::initial(), &SvgOptions { label_types: true, ..Default::default() });
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert_eq!(svg.matches("<text").count(), 3);
        // width √3 · 24 + margins
        assert!(svg.contains(r#"width="65.6""#), "{svg}");
    }
}
