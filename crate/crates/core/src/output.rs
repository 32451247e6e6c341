//! Text outputs: JSON and CSV with fixed 17-significant-digit floats, and SVG curve plots.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::curvegeom::{fmt17, Vec2};
use crate::error::{Error, Result};

fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        let x = n.as_f64().expect("f64 number");
        // integral values keep their exponent form too, so every float has the same shape
        fmt17(x)
    } else {
        n.to_string()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, k: usize| out.extend(std::iter::repeat_n("  ", k));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&number(n)),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Pretty JSON in which every float is written with 17 significant digits.
/// Non-finite floats become null.
pub fn to_json_string<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}_{k}") };
                flatten(&key, x, out);
            }
        }
        _ => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => number(n),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// CSV of a slice of records; nested structs are flattened with `_`-joined names.
pub fn to_csv_string<S: Serialize>(rows: &[S]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for r in rows {
        let v = serde_json::to_value(r).map_err(|e| Error::Parse(e.to_string()))?;
        let mut flat = Map::new();
        flatten("", &v, &mut flat);
        if header.is_none() {
            let h: Vec<String> = flat.keys().cloned().collect();
            w.write_record(&h).map_err(|e| Error::Parse(e.to_string()))?;
            header = Some(h);
        }
        w.write_record(flat.values().map(cell)).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub const SVG_WIDTH: f64 = 800.0;
pub const SVG_HEIGHT: f64 = 500.0;
const SVG_MARGIN: f64 = 40.0;

/// Curves over the horizontal axis: each closed along the axis, stroked black and filled at
/// 25% opacity, on a fixed 800×500 viewBox with a common aspect-preserving scale.
pub fn svg_curves(curves: &[&[Vec2<f64>]]) -> String {
    let all = curves.iter().flat_map(|c| c.iter());
    let (mut xmin, mut xmax, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for p in all {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymax = ymax.max(p[1]);
    }
    if !xmin.is_finite() {
        xmin = -1.0;
        xmax = 1.0;
    }
    let ymin = 0.0f64;
    let sx = (SVG_WIDTH - 2.0 * SVG_MARGIN) / (xmax - xmin).max(f64::MIN_POSITIVE);
    let sy = (SVG_HEIGHT - 2.0 * SVG_MARGIN) / (ymax - ymin).max(f64::MIN_POSITIVE);
    let k = sx.min(sy);
    let ox = SVG_WIDTH / 2.0 - k * (xmin + xmax) / 2.0;
    let oy = SVG_HEIGHT - SVG_MARGIN;
    let map = |p: &Vec2<f64>| (ox + k * p[0], oy - k * p[1]);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = SVG_WIDTH,
        h = SVG_HEIGHT
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{:.3}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}" stroke="gray" stroke-width="1"/>"#,
        SVG_MARGIN / 2.0,
        SVG_WIDTH - SVG_MARGIN / 2.0
    );
    for c in curves {
        let mut d = String::new();
        for (i, p) in c.iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="black" fill-opacity="0.25" stroke="black" stroke-width="1.5"/>"#,
            d.trim_end()
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Inner {
        a: f64,
        b: usize,
    }

    #[derive(Serialize)]
    struct Outer {
        name: &'static str,
        inner: Inner,
        v: Vec<f64>,
        missing: Option<f64>,
    }

    #[test]
    fn json_floats_have_17_digits() {
        let o = Outer { name: "x", inner: Inner { a: 0.1, b: 3 }, v: vec![1.0, 2.5], missing: None };
        let s = to_json_string(&o).unwrap();
        assert!(s.contains("\"a\": 1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"b\": 3"));
        assert!(s.contains("[1.0000000000000000e0, 2.5000000000000000e0]"));
        assert!(s.contains("\"missing\": null"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["inner"]["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn csv_flattens_nested_records() {
        let rows = [Outer { name: "p", inner: Inner { a: 1.5, b: 2 }, v: vec![], missing: Some(2.0) }];
        let s = to_csv_string(&rows).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("name,inner_a,inner_b,v,missing"));
        assert_eq!(lines.next(), Some("p,1.5000000000000000e0,2,[],2.0000000000000000e0"));
    }

    #[test]
    fn svg_has_fixed_viewbox() {
        let c: Vec<Vec2<f64>> = (0..=10).map(|i| {
            let t = std::f64::consts::PI * i as f64 / 10.0;
            [t.cos(), t.sin()]
        }).collect();
        let s = svg_curves(&[&c]);
        assert!(s.contains(r#"viewBox="0 0 800 500""#));
        assert!(s.contains(r#"fill-opacity="0.25""#) && s.contains(r#"stroke="black""#));
    }
}
