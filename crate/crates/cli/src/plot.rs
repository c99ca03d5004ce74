use crate::Output;
use hecke_core::linalg::Method;
use hecke_core::rational::{dot, fmt_q, parse_q, to_f64, Q};
use hecke_core::rootsys::CartanType;
use hecke_core::strings::{render_orbit, unitary_via_strings};
use hecke_core::wrep::Hecke;
use hecke_core::{Error, Result};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

struct Point {
    nu: [Q; 2],
    unitary: bool,
    orbit: String,
}

/// Verdicts on `ν1 ≥ ν2 ≥ 0`, `ν1 ≤ max`, step `grid`. Points where the
/// normalisation vanishes are dropped.
fn sample(h: &Hecke, t: CartanType, step: &Q, max: &Q) -> Result<Vec<Point>> {
    let n = (max / step).floor().to_integer();
    let n = i64::try_from(n).map_err(|_| Error::Parse("grid too fine".into()))?;
    let coords: Vec<(i64, i64)> = (0..=n).flat_map(|a| (0..=a).map(move |b| (a, b))).collect();
    let out: Vec<Result<Option<Point>>> = coords
        .par_iter()
        .map(|&(a, b)| {
            let nu = [step * Q::from_integer(a.into()), step * Q::from_integer(b.into())];
            let r = match h.unitarity(&nu, Method::ExactLdl, false) {
                Ok(r) => r,
                Err(Error::ZeroNormalization) => return Ok(None),
                Err(e) => return Err(e),
            };
            let orbit = render_orbit(&unitary_via_strings(t, &nu)?.decomposition);
            Ok(Some(Point { nu, unitary: r.signature.psd, orbit }))
        })
        .collect();
    let mut pts = Vec::new();
    for p in out {
        if let Some(p) = p? {
            pts.push(p);
        }
    }
    Ok(pts)
}

/// Vertices of `{ν2 ≥ 0, ν1 ≥ ν2, ⟨θ̌, ν⟩ ≤ 1}` for the highest coroot θ̌.
fn alcove(h: &Hecke) -> Vec<[f64; 2]> {
    let d = h.datum();
    let probe = [Q::from_integer(2.into()), Q::from_integer(1.into())];
    let theta = d.positive_coroots.iter().max_by(|x, y| dot(x, &probe).cmp(&dot(y, &probe))).unwrap();
    let (a, b) = (to_f64(&theta[0]), to_f64(&theta[1]));
    // θ̌·(x, 0) = 1 and θ̌·(x, x) = 1
    vec![[0.0, 0.0], [1.0 / a, 0.0], [1.0 / (a + b), 1.0 / (a + b)]]
}

fn svg(t: CartanType, step: &Q, max: f64, pts: &[Point], alcove: &[[f64; 2]]) -> String {
    let scale = (SIZE - 2.0 * MARGIN) / max;
    let x = |v: f64| MARGIN + v * scale;
    let y = |v: f64| SIZE - MARGIN - v * scale;
    let mut colors: BTreeMap<&str, &str> = BTreeMap::new();
    for p in pts.iter().filter(|p| p.unitary) {
        let k = colors.len();
        colors.entry(p.orbit.as_str()).or_insert(PALETTE[k % PALETTE.len()]);
    }
    let title = match t {
        CartanType::C => "Sp(4,R): spherical unitary parameters",
        _ => "SO(3,2): spherical unitary parameters",
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" font-size="14" text-anchor="middle">{title}</text>"#, SIZE / 2.0);
    // axes and ticks
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, x(0.0), y(0.0), x(max), y(0.0));
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, x(0.0), y(0.0), x(0.0), y(max));
    for k in 0..=(max.floor() as i64) {
        let v = k as f64;
        let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#, x(v), y(0.0), y(0.0) + 4.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{k}</text>"#, x(v), y(0.0) + 16.0);
        let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>"#, x(0.0) - 4.0, y(v), x(0.0));
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{k}</text>"#, x(0.0) - 7.0, y(v) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="13">ν1</text>"#, x(max) - 10.0, y(0.0) + 32.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="13">ν2</text>"#, x(0.0) - 36.0, y(max) + 4.0);
    // dominant chamber wall ν1 = ν2
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#, x(0.0), y(0.0), x(max), y(max));
    let poly: Vec<String> = alcove.iter().map(|p| format!("{},{}", x(p[0]), y(p[1]))).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, poly.join(" "));
    for p in pts {
        let (px, py) = (x(to_f64(&p.nu[0])), y(to_f64(&p.nu[1])));
        if p.unitary {
            let _ = writeln!(
                s,
                r#"<circle cx="{px}" cy="{py}" r="3.5" fill="{}"><title>({},{}) {}</title></circle>"#,
                colors[p.orbit.as_str()],
                fmt_q(&p.nu[0]),
                fmt_q(&p.nu[1]),
                p.orbit
            );
        } else {
            let _ = writeln!(s, r##"<circle cx="{px}" cy="{py}" r="1" fill="#bbbbbb"/>"##);
        }
    }
    let mut ly = 40.0;
    for (orbit, c) in &colors {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{ly}" r="4" fill="{c}"/>"#, SIZE - 150.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11">{orbit}</text>"#, SIZE - 140.0, ly + 4.0);
        ly += 16.0;
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10" fill="gray">grid {}</text>"#, MARGIN, SIZE - 8.0, fmt_q(step));
    s.push_str("</svg>\n");
    s
}

pub fn plot(cartan_type: &str, grid: &str, max: &str, out: &Path) -> Result<Output> {
    let t = match cartan_type.to_ascii_uppercase().as_str() {
        "C2" => CartanType::C,
        "B2" => CartanType::B,
        other => return Err(Error::Unsupported(format!("plots are for C2 or B2, got {other}"))),
    };
    let step = parse_q(grid)?;
    let max_q = parse_q(max)?;
    if step <= Q::from_integer(0.into()) || max_q <= Q::from_integer(0.into()) {
        return Err(Error::Parse("grid and max must be positive".into()));
    }
    let h = Hecke::new(t, 2)?;
    let pts = sample(&h, t, &step, &max_q)?;
    let text = svg(t, &step, to_f64(&max_q), &pts, &alcove(&h));
    std::fs::write(out, &text).map_err(|e| Error::Data(format!("{}: {e}", out.display())))?;
    let unitary: Vec<_> = pts.iter().filter(|p| p.unitary).map(|p| json!([fmt_q(&p.nu[0]), fmt_q(&p.nu[1])])).collect();
    let rec = json!({
        "group": format!("{t}2"),
        "grid": fmt_q(&step),
        "out": out.display().to_string(),
        "points": pts.len(),
        "unitary_points": unitary,
    });
    Ok(Output::ok(vec![rec]))
}
