//! Minimal SVG scatter of points on the unit circle, read back from CSV text.

use std::fmt::Write as _;

use crate::error::{CliError, CliResult};

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const SIZE: f64 = 420.0;
const CENTER: f64 = 200.0;
const RADIUS: f64 = 160.0;

fn marker(out: &mut String, shape: usize, x: f64, y: f64, color: &str) {
    let r = 4.0;
    let _ = match shape % 4 {
        0 => writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{color}"/>"#),
        1 => writeln!(out, r#"<rect x="{:.3}" y="{:.3}" width="{}" height="{}" fill="{color}"/>"#, x - r, y - r, 2.0 * r, 2.0 * r),
        2 => writeln!(out, r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="{color}"/>"#, x, y - 1.3 * r, x + 1.3 * r, y, x, y + 1.3 * r, x - 1.3 * r, y),
        _ => writeln!(out, r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="{color}"/>"#, x, y - 1.3 * r, x + 1.2 * r, y + r, x - 1.2 * r, y + r),
    };
}

/// Draws every row of `csv` at `(re, im)`, one marker style per distinct value of `series_column`.
pub fn scatter_from_csv(csv_text: &str, series_column: &str, title: &str) -> CliResult<String> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::Config(format!("bad CSV header: {e}")))?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| CliError::Config(format!("CSV has no '{name}' column")));
    let (si, ri, ii) = (find(series_column)?, find("re")?, find("im")?);

    let mut series: Vec<String> = Vec::new();
    let mut points: Vec<(usize, f64, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Config(format!("bad CSV row: {e}")))?;
        let label = record[si].to_string();
        let idx = match series.iter().position(|s| *s == label) {
            Some(i) => i,
            None => {
                series.push(label);
                series.len() - 1
            }
        };
        let num = |i: usize| record[i].parse::<f64>().map_err(|_| CliError::Config(format!("bad number '{}'", &record[i])));
        points.push((idx, num(ri)?, num(ii)?));
    }

    let width = SIZE + 140.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{SIZE}" viewBox="0 0 {width} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{CENTER}" y="22" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(out, r##"<line x1="{}" y1="{CENTER}" x2="{}" y2="{CENTER}" stroke="#bbb"/>"##, CENTER - RADIUS - 15.0, CENTER + RADIUS + 15.0);
    let _ = writeln!(out, r##"<line x1="{CENTER}" y1="{}" x2="{CENTER}" y2="{}" stroke="#bbb"/>"##, CENTER - RADIUS - 15.0, CENTER + RADIUS + 15.0);
    let _ = writeln!(out, r#"<circle cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="black"/>"#);
    for &(s, re, im) in &points {
        marker(&mut out, s, CENTER + RADIUS * re, CENTER - RADIUS * im, COLORS[s % COLORS.len()]);
    }
    for (s, label) in series.iter().enumerate() {
        let y = 50.0 + 22.0 * s as f64;
        marker(&mut out, s, SIZE + 10.0, y, COLORS[s % COLORS.len()]);
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#, SIZE + 22.0, y + 4.0, escape(label));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_one_marker_per_row() {
        let csv = "series,re,im\na,1,0\na,0,1\nb,-1,0\n";
        let svg = scatter_from_csv(csv, "series", "t").unwrap();
        assert_eq!(svg.matches("<circle cx").count(), 2 + 1 + 1);
        assert_eq!(svg.matches("<rect x").count(), 2);
        assert!(scatter_from_csv(csv, "t", "x").is_err());
    }
}
