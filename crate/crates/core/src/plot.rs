//! Self-contained SVG rendering of profile regions: boundary curves plus
//! scatter points, on an 800×800 canvas with axes [0,1]².

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::oracle::{load_or_enumerate, SCATTER_HEADER};
use crate::regions::{curve_points, Curve};

pub const CANVAS: f64 = 800.0;
const MARGIN: f64 = 70.0;
const CURVE_SAMPLES: usize = 400;

/// Curves that can be overlaid. The k3 curves live in the `(p0,p3)` plane and
/// the triangle-free boundary in `(p0,p1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlay {
    C1,
    C2,
    CPrime,
    Goodman,
    TfBoundary,
}

impl Overlay {
    fn axes(self) -> (usize, usize) {
        match self {
            Overlay::TfBoundary => (0, 1),
            _ => (0, 3),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Overlay::C1 => "C1",
            Overlay::C2 => "C2",
            Overlay::CPrime => "C'",
            Overlay::Goodman => "p0+p3=1/4",
            Overlay::TfBoundary => "tf boundary",
        }
    }

    fn color(self) -> &'static str {
        match self {
            Overlay::C1 | Overlay::TfBoundary => "#1f5fbf",
            Overlay::C2 => "#c0392b",
            Overlay::CPrime => "#7f7f7f",
            Overlay::Goodman => "#2e8b57",
        }
    }

    fn style(self) -> &'static str {
        match self {
            Overlay::C1 => "stroke:#1f5fbf;stroke-width:2.5;fill:none",
            Overlay::C2 => "stroke:#c0392b;stroke-width:2.5;fill:none",
            Overlay::CPrime => "stroke:#7f7f7f;stroke-width:1.5;stroke-dasharray:6 4;fill:none",
            Overlay::Goodman => "stroke:#2e8b57;stroke-width:2.5;fill:none",
            Overlay::TfBoundary => "stroke:#1f5fbf;stroke-width:2.5;fill:#1f5fbf;fill-opacity:0.12",
        }
    }

    fn points(self) -> Vec<(f64, f64)> {
        let curve = |c: Curve| {
            curve_points(c, CURVE_SAMPLES)
                .expect("sample count is fixed")
                .into_iter()
                .map(|s| (s.point.p0, s.point.p3))
                .collect()
        };
        match self {
            Overlay::C1 => curve(Curve::C1),
            Overlay::C2 => curve(Curve::C2),
            Overlay::CPrime => curve(Curve::CPrime),
            Overlay::Goodman => vec![(0.0, 0.25), (0.25, 0.0)],
            Overlay::TfBoundary => tf_boundary(CURVE_SAMPLES),
        }
    }
}

/// Closed outline of `{(p0,p1) : tf_slack ≥ 0, p1 ≥ 0}`: the upper root
/// `p1 = ((1-4p0) + √(12p0-3))/2` for `p0 ∈ [1/4,1]`, closed along `p1 = 0`.
pub fn tf_boundary(count: usize) -> Vec<(f64, f64)> {
    let count = count.max(2);
    let mut pts: Vec<(f64, f64)> = (0..count)
        .map(|i| {
            let p0 = 0.25 + 0.75 * i as f64 / (count - 1) as f64;
            let disc = (12.0 * p0 - 3.0).max(0.0);
            (p0, ((1.0 - 4.0 * p0 + disc.sqrt()) / 2.0).max(0.0))
        })
        .collect();
    pts.push((0.25, 0.0));
    pts
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScatterSource {
    /// Every isomorphism class of the census, one point each.
    Census { n: usize, family: Family },
    /// A CSV with the census scatter header `p0,p1,p2,p3`.
    Csv(PathBuf),
    Points {
        label: String,
        profiles: Vec<[f64; 4]>,
    },
}

impl ScatterSource {
    fn label(&self) -> String {
        match self {
            ScatterSource::Census { n, family } => format!("census n={n} ({family})"),
            ScatterSource::Csv(p) => p.display().to_string(),
            ScatterSource::Points { label, .. } => label.clone(),
        }
    }

    fn load(&self, cache: Option<&Path>) -> Result<Vec<[f64; 4]>> {
        match self {
            ScatterSource::Census { n, family } => Ok(load_or_enumerate(*n, *family, cache)?
                .classes
                .iter()
                .filter_map(|c| c.profile.as_ref().map(|p| p.to_f64()))
                .collect()),
            ScatterSource::Csv(path) => parse_scatter(&std::fs::read_to_string(path)?),
            ScatterSource::Points { profiles, .. } => Ok(profiles.clone()),
        }
    }
}

fn parse_scatter(text: &str) -> Result<Vec<[f64; 4]>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == SCATTER_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header {SCATTER_HEADER}"),
            })
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        let row: [f64; 4] = vals.try_into().map_err(|_| Error::Parse {
            line: i + 1,
            msg: "expected 4 columns".into(),
        })?;
        out.push(row);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    /// Indices into the profile `(p0,p1,p2,p3)`.
    pub axes: (usize, usize),
    pub curves: Vec<Overlay>,
    pub scatter: Vec<ScatterSource>,
    pub out: Option<PathBuf>,
}

impl PlotSpec {
    /// The k3 region: C1, C2, C' and the Goodman line in `(p0,p3)`.
    pub fn k3() -> Self {
        PlotSpec {
            axes: (0, 3),
            curves: vec![Overlay::C1, Overlay::C2, Overlay::CPrime, Overlay::Goodman],
            scatter: Vec::new(),
            out: None,
        }
    }

    /// The triangle-free region in `(p0,p1)`.
    pub fn tf() -> Self {
        PlotSpec {
            axes: (0, 1),
            curves: vec![Overlay::TfBoundary],
            scatter: Vec::new(),
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (x, y) = self.axes;
        if x > 3 || y > 3 {
            return Err(Error::Invalid(format!(
                "axis index out of range: ({x},{y})"
            )));
        }
        if x == y {
            return Err(Error::Invalid(format!(
                "axes must be distinct, both are p{x}"
            )));
        }
        if let Some(c) = self.curves.iter().find(|c| c.axes() != self.axes) {
            let (a, b) = c.axes();
            return Err(Error::Invalid(format!(
                "{} is drawn in (p{a},p{b})",
                c.label()
            )));
        }
        for s in &self.scatter {
            if let ScatterSource::Csv(p) = s {
                if !p.is_file() {
                    return Err(Error::Io(format!(
                        "scatter source {} does not exist",
                        p.display()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, cache: Option<&Path>) -> Result<String> {
        self.validate()?;
        let mut layers = Vec::new();
        for s in &self.scatter {
            layers.push((s.label(), s.load(cache)?));
        }
        Ok(self.render_svg(&layers))
    }

    fn render_svg(&self, layers: &[(String, Vec<[f64; 4]>)]) -> String {
        let side = CANVAS - 2.0 * MARGIN;
        let sx = |v: f64| MARGIN + side * v;
        let sy = |v: f64| CANVAS - MARGIN - side * v;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
            c = CANVAS
        );
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{c}" height="{c}" style="fill:#ffffff"/>"#,
            c = CANVAS
        );
        let _ = writeln!(
            s,
            r#"<rect x="{m}" y="{m}" width="{side}" height="{side}" style="fill:none;stroke:#000000;stroke-width:1"/>"#,
            m = MARGIN
        );
        for i in 0..=4 {
            let v = i as f64 / 4.0;
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" style="stroke:#000000;stroke-width:1"/>"#,
                x = sx(v),
                y0 = sy(0.0),
                y1 = sy(0.0) + 6.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" style="font:13px sans-serif;text-anchor:middle">{v}</text>"#,
                sx(v),
                sy(0.0) + 22.0
            );
            let _ = writeln!(
                s,
                r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" style="stroke:#000000;stroke-width:1"/>"#,
                x0 = sx(0.0) - 6.0,
                x1 = sx(0.0),
                y = sy(v)
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" style="font:13px sans-serif;text-anchor:end">{v}</text>"#,
                sx(0.0) - 10.0,
                sy(v) + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" style="font:16px sans-serif;text-anchor:middle">p{}</text>"#,
            CANVAS / 2.0,
            CANVAS - 20.0,
            self.axes.0
        );
        let _ = writeln!(
            s,
            r#"<text x="22" y="{:.2}" style="font:16px sans-serif;text-anchor:middle" transform="rotate(-90 22 {:.2})">p{}</text>"#,
            CANVAS / 2.0,
            CANVAS / 2.0,
            self.axes.1
        );

        let mut legend: Vec<(String, String)> = Vec::new();
        for c in &self.curves {
            let pts: Vec<String> = c
                .points()
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let tag = if *c == Overlay::TfBoundary {
                "polygon"
            } else {
                "polyline"
            };
            let _ = writeln!(
                s,
                r#"<{tag} points="{}" style="{}"/>"#,
                pts.join(" "),
                c.style()
            );
            legend.push((
                c.label().to_string(),
                format!("stroke:{};stroke-width:3", c.color()),
            ));
        }
        const COLORS: [&str; 4] = ["#222222", "#e67e22", "#8e44ad", "#16a085"];
        for (i, (label, pts)) in layers.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let _ = writeln!(s, r#"<g style="fill:{color};fill-opacity:0.7">"#);
            for p in pts {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#,
                    sx(p[self.axes.0]),
                    sy(p[self.axes.1])
                );
            }
            let _ = writeln!(s, "</g>");
            legend.push((
                format!("{label} ({} points)", pts.len()),
                format!("stroke:{color};stroke-width:5"),
            ));
        }
        for (i, (label, style)) in legend.iter().enumerate() {
            let y = MARGIN + 20.0 + 20.0 * i as f64;
            let x = CANVAS - MARGIN - 200.0;
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" style="{style}"/>"#,
                x + 24.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" style="font:13px sans-serif">{}</text>"#,
                x + 30.0,
                y + 4.0,
                xml_escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
