//! CSV and SVG writers for density curves.
//!
//! CSV layout: `# key=value` header lines (crate version, caller header,
//! per-curve metadata as `curve.<i>.<key>`), a `# columns=` line, then one
//! row per grid point. Values use `{:.16e}` so that parsing recovers every
//! bit.

use crate::error::{Error, Result};
use crate::spectra::DensityCurve;
use std::fmt::Write as _;
use std::path::Path;

/// Parsed CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvDocument {
    /// Header pairs other than per-curve metadata and the column list.
    pub header: Vec<(String, String)>,
    pub curves: Vec<DensityCurve>,
}

impl CsvDocument {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.header.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn column_label(curve: &DensityCurve, index: usize) -> String {
    let raw = curve.meta("label").map(str::to_string).unwrap_or_else(|| format!("curve{index}"));
    raw.replace([',', '\n', '\r'], "_")
}

/// CSV text for curves sharing one grid.
pub fn csv_string(curves: &[&DensityCurve], header: &[(String, String)]) -> Result<String> {
    let first = curves.first().ok_or(Error::EmptyRequest("CSV output with no curves"))?;
    if curves.iter().any(|c| c.grid != first.grid) {
        return Err(Error::Dimension("curves written to one CSV must share a grid".into()));
    }
    let clean = |s: &str| s.replace(['\n', '\r'], " ");
    let mut out = String::new();
    let _ = writeln!(out, "# version={}", env!("CARGO_PKG_VERSION"));
    for (k, v) in header {
        let _ = writeln!(out, "# {}={}", clean(k), clean(v));
    }
    for (i, curve) in curves.iter().enumerate() {
        for (k, v) in &curve.meta {
            let _ = writeln!(out, "# curve.{i}.{}={}", clean(k), clean(v));
        }
    }
    let labels: Vec<String> = curves.iter().enumerate().map(|(i, c)| column_label(c, i)).collect();
    let _ = writeln!(out, "# columns=x,{}", labels.join(","));
    for (row, x) in first.grid.iter().enumerate() {
        let _ = write!(out, "{x:.16e}");
        for curve in curves {
            let _ = write!(out, ",{:.16e}", curve.values[row]);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Writes [`csv_string`] to `path`.
pub fn emit_csv(curves: &[&DensityCurve], header: &[(String, String)], path: &Path) -> Result<()> {
    let text = csv_string(curves, header)?;
    write_file(path, &text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|source| Error::Io { path: parent.display().to_string(), source })?;
    }
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Parses text produced by [`csv_string`].
pub fn parse_csv(text: &str) -> Result<CsvDocument> {
    let mut header = Vec::new();
    let mut metas: Vec<Vec<(String, String)>> = Vec::new();
    let mut columns: Option<usize> = None;
    let mut grid = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let bad = |what: &str| Error::Config(format!("CSV line {}: {what}", line_no + 1));
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest.split_once('=').ok_or_else(|| bad("header line without '='"))?;
            if k == "columns" {
                let count = v.split(',').count().saturating_sub(1);
                if count == 0 {
                    return Err(bad("no data columns"));
                }
                columns = Some(count);
                values = vec![Vec::new(); count];
                metas.resize(count, Vec::new());
            } else if let Some(curve_key) = k.strip_prefix("curve.") {
                let (idx, key) = curve_key.split_once('.').ok_or_else(|| bad("malformed curve key"))?;
                let idx: usize = idx.parse().map_err(|_| bad("malformed curve index"))?;
                if metas.len() <= idx {
                    metas.resize(idx + 1, Vec::new());
                }
                metas[idx].push((key.to_string(), v.to_string()));
            } else {
                header.push((k.to_string(), v.to_string()));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let count = columns.ok_or_else(|| bad("data before the columns line"))?;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != count + 1 {
            return Err(bad("wrong number of fields"));
        }
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("unparsable number"));
        grid.push(parse(fields[0])?);
        for (column, field) in values.iter_mut().zip(&fields[1..]) {
            column.push(parse(field)?);
        }
    }
    let count = columns.ok_or_else(|| Error::Config("CSV has no columns line".into()))?;
    let curves = values
        .into_iter()
        .zip(metas.into_iter().take(count))
        .map(|(vals, meta)| {
            let mut curve = DensityCurve::new(grid.clone(), vals)?;
            curve.meta = meta;
            Ok(curve)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CsvDocument { header, curves })
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const PALETTE: [&str; 6] = ["#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Line plot of the curves (each may have its own grid): one polyline per
/// curve with a legend taken from the `label` metadata.
pub fn svg_string(curves: &[&DensityCurve], title: &str) -> String {
    let (width, height, margin) = (800.0, 500.0, 60.0);
    let finite = |v: &&f64| v.is_finite();
    let xs = curves.iter().flat_map(|c| c.grid.iter()).filter(finite);
    let ys = curves.iter().flat_map(|c| c.values.iter()).filter(finite);
    let (xmin, xmax) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let ymax = ys.fold(0.0f64, |a, &y| a.max(y));
    let (xmin, xmax) = if xmin < xmax { (xmin, xmax) } else { (0.0, 1.0) };
    let ymax = if ymax > 0.0 { ymax * 1.05 } else { 1.0 };
    let px = |x: f64| margin + (x - xmin) / (xmax - xmin) * (width - 2.0 * margin);
    let py = |y: f64| height - margin - y / ymax * (height - 2.0 * margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#,
        width / 2.0,
        xml_escape(title)
    );
    let (x0, y0, x1, y1) = (margin, height - margin, width - margin, margin);
    let _ = writeln!(out, r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" stroke="black" fill="none"/>"#);
    for (value, anchor, x, y) in [(xmin, "start", x0, y0 + 20.0), (xmax, "end", x1, y0 + 20.0)] {
        let _ = writeln!(out, r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-size="12">{value:.4}</text>"#);
    }
    let _ =
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="end" font-size="12">{:.4}</text>"#, x0 - 5.0, y1 + 4.0, ymax);
    for (i, curve) in curves.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = curve
            .grid
            .iter()
            .zip(&curve.values)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let label = curve.meta("label").map(str::to_string).unwrap_or_else(|| format!("curve{i}"));
        let ly = margin + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}" font-size="12">{}</text>"#,
            x1 - 170.0,
            x1 - 145.0,
            x1 - 140.0,
            ly + 4.0,
            xml_escape(&label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes [`svg_string`] to `path`.
pub fn emit_svg(curves: &[&DensityCurve], title: &str, path: &Path) -> Result<()> {
    if curves.is_empty() {
        return Err(Error::EmptyRequest("SVG output with no curves"));
    }
    write_file(path, &svg_string(curves, title))
}
