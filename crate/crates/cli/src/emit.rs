//! Deterministic CSV and SVG emission.
//!
//! CSV rows carry full double precision (17 significant digits) with line
//! feed terminators. SVG plots are plain polylines with a fixed palette and
//! fixed-precision coordinates, so a given table always renders to the same
//! bytes.

use std::fs;
use std::path::Path;

use crate::sweep::ResultTable;
use crate::{Error, Result};

/// Curve colors, reused cyclically: black, red, orange, blue, then spares.
const PALETTE: [&str; 8] = [
    "#000000", "#d62728", "#ff7f0e", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf",
];

fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the table as CSV with header `t,u,<columns...>`.
pub fn emit_csv(table: &ResultTable, path: &Path) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Renders one column against `t` with one polyline per `u` value.
pub fn emit_svg(table: &ResultTable, column: &str, path: &Path) -> Result<()> {
    emit_svg_grouped(table, column, "u", None, path)
}

/// Renders one column against `t`, one polyline per distinct value of
/// `series_column`, optionally keeping only rows where `filter` matches.
pub fn emit_svg_grouped(
    table: &ResultTable,
    column: &str,
    series_column: &str,
    filter: Option<(&str, f64)>,
    path: &Path,
) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let t_index = table
        .column_index("t")
        .ok_or_else(|| Error::UnknownColumn("t".to_string()))?;
    let y_index = table
        .column_index(column)
        .ok_or_else(|| Error::UnknownColumn(column.to_string()))?;
    let series_index = table
        .column_index(series_column)
        .ok_or_else(|| Error::UnknownColumn(series_column.to_string()))?;
    let filter = match filter {
        None => None,
        Some((name, value)) => {
            let index = table
                .column_index(name)
                .ok_or_else(|| Error::UnknownColumn(name.to_string()))?;
            Some((index, value))
        }
    };

    // Group rows by series key, preserving first-appearance order.
    let mut series: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in &table.rows {
        if let Some((index, value)) = filter {
            if row[index] != value {
                continue;
            }
        }
        let key = row[series_index];
        let point = (row[t_index], row[y_index]);
        match series.iter_mut().find(|(k, _)| *k == key) {
            Some((_, points)) => points.push(point),
            None => series.push((key, vec![point])),
        }
    }
    if series.is_empty() {
        return Err(Error::EmptyTable);
    }

    let labelled: Vec<(String, Vec<(f64, f64)>)> = series
        .into_iter()
        .map(|(key, points)| (format!("{series_column}={key}"), points))
        .collect();
    fs::write(path, render_line_chart(&labelled, "t", column))?;
    Ok(())
}

fn render_line_chart(series: &[(String, Vec<(f64, f64)>)], x_label: &str, y_label: &str) -> String {
    const WIDTH: f64 = 720.0;
    const HEIGHT: f64 = 480.0;
    const LEFT: f64 = 72.0;
    const RIGHT: f64 = 696.0;
    const TOP: f64 = 28.0;
    const BOTTOM: f64 = 436.0;

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, points) in series {
        for &(x, y) in points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_min -= 0.5;
        y_max += 0.5;
    } else {
        let pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }

    let to_px = |x: f64, y: f64| {
        (
            LEFT + (x - x_min) / (x_max - x_min) * (RIGHT - LEFT),
            BOTTOM - (y - y_min) / (y_max - y_min) * (BOTTOM - TOP),
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"#333333\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"#333333\"/>\n"
    ));

    for (index, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let mut coords = String::new();
        for &(x, y) in points {
            let (px, py) = to_px(x, y);
            coords.push_str(&format!("{px:.2},{py:.2} "));
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            coords.trim_end()
        ));
        if series.len() <= PALETTE.len() {
            let ly = TOP + 16.0 * index as f64 + 4.0;
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{ly:.2}\" font-size=\"12\" fill=\"{color}\">{label}</text>\n",
                RIGHT - 120.0
            ));
        }
    }

    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#000000\">{x_label}</text>\n",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 32.0
    ));
    svg.push_str(&format!(
        "<text x=\"12\" y=\"{:.2}\" font-size=\"13\" fill=\"#000000\" \
         transform=\"rotate(-90 12 {:.2})\">{y_label}</text>\n",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    ));
    for (value, x, y, anchor) in [
        (x_min, LEFT, BOTTOM + 16.0, "start"),
        (x_max, RIGHT, BOTTOM + 16.0, "end"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"11\" fill=\"#333333\" \
             text-anchor=\"{anchor}\">{value:.4}</text>\n"
        ));
    }
    for (value, y) in [(y_min, BOTTOM), (y_max, TOP + 4.0)] {
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{y:.2}\" font-size=\"11\" fill=\"#333333\" \
             text-anchor=\"end\">{value:.4}</text>\n",
            LEFT - 6.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_table() -> ResultTable {
        ResultTable {
            columns: vec![
                "t".to_string(),
                "u".to_string(),
                "t_star".to_string(),
                "negativity".to_string(),
            ],
            rows: vec![
                vec![0.0, 0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.32, 0.8],
                vec![0.0, 0.5, 0.0, 1.0],
                vec![1.0, 0.5, 0.32, 0.9],
            ],
        }
    }

    #[test]
    fn single_row_table_becomes_two_csv_lines() {
        let table = ResultTable {
            columns: vec!["t".to_string(), "u".to_string(), "p_of_t".to_string()],
            rows: vec![vec![0.0, 0.5, 0.25]],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("row.csv");
        emit_csv(&table, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "t,u,p_of_t");
        assert!(lines[1].starts_with("0.0000000000000000e0,5.0000000000000000e-1"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn empty_table_is_rejected() {
        let table = ResultTable {
            columns: vec!["t".to_string()],
            rows: vec![],
        };
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            emit_csv(&table, &dir.path().join("x.csv")),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            emit_svg(&table, "t", &dir.path().join("x.svg")),
            Err(Error::EmptyTable)
        ));
    }

    #[test]
    fn svg_draws_one_polyline_per_memory_value() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        emit_svg(&tiny_table(), "negativity", &path).unwrap();
        let svg = fs::read_to_string(&path).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">negativity</text>"));
        assert!(svg.contains(">u=0.5</text>"));
    }

    #[test]
    fn svg_bytes_are_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.svg");
        let b = dir.path().join("b.svg");
        emit_svg(&tiny_table(), "negativity", &a).unwrap();
        emit_svg(&tiny_table(), "negativity", &b).unwrap();
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }

    #[test]
    fn unknown_column_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            emit_svg(&tiny_table(), "bogus", &dir.path().join("x.svg")),
            Err(Error::UnknownColumn(_))
        ));
    }

    #[test]
    fn full_precision_round_trips() {
        let value = std::f64::consts::PI / 3.0;
        let text = format_value(value);
        let back: f64 = text.parse().unwrap();
        assert_eq!(value, back);
    }
}
