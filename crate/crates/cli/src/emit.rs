//! Report rendering: sorted-key JSON, CSV and static SVG.

use std::fmt::{Debug, Display, Write as _};
use std::io::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use origami_core::closure::ClosureState;
use origami_core::density::{ContractionTrace, DensityReport};
use origami_core::geometry::Point;
use origami_core::serial::rational_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { kind: String, message: String },
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// `kind` is the innermost variant name, so `Geometry(DuplicateDirections)`
    /// reports as `DuplicateDirections`.
    pub fn domain<E: Debug + Display>(e: E) -> Self {
        let dbg = format!("{e:?}");
        let ident = |t: &str| t.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or("").to_string();
        let mut kind = String::new();
        for part in dbg.split('(') {
            let name = ident(part);
            if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_uppercase()) {
                break;
            }
            kind = name.clone();
            if name.len() != part.len() {
                break;
            }
        }
        CliError::Domain { kind, message: e.to_string() }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "kind": "Usage", "message": m }),
            CliError::Domain { kind, message } => json!({ "kind": kind, "message": message }),
            CliError::Io { .. } => json!({ "kind": "Io", "message": self.to_string() }),
        }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Domain { kind: "Serialize".into(), message: e.to_string() })
}

/// `serde_json::Value` keeps object keys in a `BTreeMap`, so the output is
/// sorted and byte-stable.
pub fn json_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("a Value always serializes")
}

pub fn write_or_print(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() }),
        None => {
            print_stdout(text);
            Ok(())
        }
    }
}

/// Writes to stdout with a trailing newline; a closed pipe is not an error.
pub fn print_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    let _ = out.flush();
}

pub fn closure_json(state: &ClosureState, max_points: usize) -> Value {
    let points: Vec<Value> =
        state.points_with_depth().map(|(p, d)| json!({ "point": p, "depth_introduced": d })).collect();
    json!({
        "directions": state.directions(),
        "depth": state.depth(),
        "max_points": max_points,
        "truncated": state.truncated(),
        "radicand": state.radicand(),
        "point_count": state.len(),
        "points": points,
    })
}

pub fn closure_csv(state: &ClosureState) -> String {
    let mut out = String::from("re_rat,re_irr,im_rat,im_irr,radicand,depth_introduced\n");
    for (p, d) in state.points_with_depth() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            rational_string(p.re.rat()),
            rational_string(p.re.irr()),
            rational_string(p.im.rat()),
            rational_string(p.im.irr()),
            state.radicand(),
            d
        );
    }
    out
}

/// Maps the square with top-left corner `(x0, y1)` and side `extent` onto a
/// `size × size` canvas, y up.
struct Canvas {
    x0: f64,
    y1: f64,
    scale: f64,
    size: f64,
    body: String,
}

impl Canvas {
    fn new(x0: f64, y1: f64, extent: f64, size: f64) -> Self {
        let body = format!("<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n");
        Canvas { x0, y1, scale: size / extent, size, body }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) * self.scale, (self.y1 - y) * self.scale)
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str) {
        let (ax, ay) = self.px(a.0, a.1);
        let (bx, by) = self.px(b.0, b.1);
        let _ = writeln!(
            self.body,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{stroke}" stroke-width="1"/>"#
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64, fill: &str) {
        let (x, y) = self.px(p.0, p.1);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"/>"#);
    }

    fn finish(self) -> String {
        let s = self.size;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn hue(i: usize, n: usize) -> String {
    format!("hsl({}, 70%, 45%)", (i * 300) / n.max(1))
}

pub fn closure_svg(state: &ClosureState) -> String {
    let (lo, hi) = (-3.0, 4.0);
    let mut c = Canvas::new(lo, hi, hi - lo, 700.0);
    c.line((lo, 0.0), (hi, 0.0), "gray");
    c.line((0.0, lo), (0.0, hi), "gray");
    for p in state.points() {
        let (x, y) = p.to_f64();
        if (lo..=hi).contains(&x) && (lo..=hi).contains(&y) {
            c.dot((x, y), 2.0, "black");
        }
    }
    c.finish()
}

pub fn contraction_svg(trace: &ContractionTrace) -> String {
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0), (1.0, 0.0), trace.p0.to_f64(), trace.r0.to_f64()];
    pts.extend(trace.entries.iter().flat_map(|e| [e.p.to_f64(), e.s.to_f64(), e.r.to_f64()]));
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    let extent = (x1 - x0).max(y1 - y0);
    let pad = 0.1 * extent;
    let mut c = Canvas::new(x0 - pad, y1 + pad, extent + 2.0 * pad, 600.0);
    c.line((x0 - pad, 0.0), (x1 + pad, 0.0), "gray");
    let n = trace.entries.len() + 1;
    let o = (0.0, 0.0);
    let triangle = |c: &mut Canvas, p: &Point, s: &Point, r: &Point, i: usize| {
        let col = hue(i, n);
        let (p, s, r) = (p.to_f64(), s.to_f64(), r.to_f64());
        c.line(o, p, &col);
        c.line(p, s, &col);
        c.line(p, r, &col);
        for q in [p, s, r] {
            c.dot(q, 3.0, &col);
        }
    };
    triangle(&mut c, &trace.p0, &Point::one(), &trace.r0, 0);
    for e in &trace.entries {
        triangle(&mut c, &e.p, &e.s, &e.r, e.index);
    }
    c.dot(o, 3.0, "black");
    c.finish()
}

pub fn density_svg(rep: &DensityReport) -> String {
    let r = rep.grid_resolution;
    let cell = (640 / r).max(1);
    let size = cell * r;
    let mut body = format!(r#"<rect width="{size}" height="{size}" fill="white" stroke="gray"/>"#);
    body.push('\n');
    for (i, &occ) in rep.occupied.iter().enumerate() {
        if occ {
            let (cx, cy) = (i % r, i / r);
            let (x, y) = (cx * cell, (r - 1 - cy) * cell);
            let _ = writeln!(body, r#"<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="black"/>"#);
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n{body}</svg>\n"
    )
}
