use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::sweep::Table;
use crate::error::{Error, Result};

const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest decimal rendering of `x` rounded to `digits` significant digits.
/// Plain notation for exponents in `[-5, digits)`, scientific otherwise.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv<W: Write>(table: &Table, writer: W) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::Config("refusing to write an empty table".into()));
    }
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&v| format_significant(v, SIGNIFICANT_DIGITS)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(table: &Table, path: &Path) -> Result<()> {
    write_csv(table, BufWriter::new(File::create(path)?))
}

/// Piecewise-linear approximation of the viridis map.
const PALETTE: [(f64, [u8; 3]); 5] = [
    (0.00, [68, 1, 84]),
    (0.25, [59, 82, 139]),
    (0.50, [33, 145, 140]),
    (0.75, [94, 201, 98]),
    (1.00, [253, 231, 37]),
];

fn color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let i = PALETTE.iter().rposition(|(s, _)| *s <= t).unwrap_or(0).min(PALETTE.len() - 2);
    let (s0, c0) = PALETTE[i];
    let (s1, c1) = PALETTE[i + 1];
    let f = (t - s0) / (s1 - s0);
    let mix = |k: usize| (c0[k] as f64 + f * (c1[k] as f64 - c0[k] as f64)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(0), mix(1), mix(2))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 40.0;
const PLOT: f64 = 400.0;

/// Standalone SVG 1.1 heatmap of `column` over the table's two axes. The
/// first axis runs left to right, the second bottom to top.
pub fn render_svg_heatmap(table: &Table, column: &str) -> Result<String> {
    if table.axes.len() != 2 {
        return Err(Error::Config(format!(
            "heatmap needs a 2-axis table, `{}` has {}",
            table.preset,
            table.axes.len()
        )));
    }
    let col = table
        .column_index(column)
        .ok_or_else(|| Error::Config(format!("no column `{column}` in table")))?;
    let (nx, ny) = (table.axes[0].count, table.axes[1].count);
    if table.rows.len() != nx * ny {
        return Err(Error::Config("table rows do not match its axes".into()));
    }
    let values: Vec<f64> = table.rows.iter().map(|r| r[col]).collect();
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let min = finite.clone().fold(f64::INFINITY, f64::min);
    let max = finite.fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let scale = |v: f64| if span > 0.0 { (v - min) / span } else { 0.5 };

    let (cw, ch) = (PLOT / nx as f64, PLOT / ny as f64);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{} : {}</text>"#,
        LEFT + PLOT / 2.0,
        table.preset,
        escape(column)
    );
    let _ = writeln!(svg, r#"<g shape-rendering="crispEdges">"#);
    for (k, v) in values.iter().enumerate() {
        let (i, j) = (k / ny, k % ny);
        let x = LEFT + i as f64 * cw;
        let y = TOP + PLOT - (j + 1) as f64 * ch;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{cw:.3}" height="{ch:.3}" fill="{}"/>"#,
            color(scale(*v))
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#
    );

    let (ax, ay) = (&table.axes[0], &table.axes[1]);
    let label = |v: f64| format_significant(v, 4);
    let bottom = TOP + PLOT;
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT}" y="{}" font-family="sans-serif" font-size="12" text-anchor="start">{}</text>"#,
        bottom + 16.0,
        label(ax.start)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT + PLOT,
        bottom + 16.0,
        label(ax.stop)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        LEFT + PLOT / 2.0,
        bottom + 36.0,
        escape(&ax.name)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{bottom}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT - 6.0,
        label(ay.start)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
        LEFT - 6.0,
        TOP + 12.0,
        label(ay.stop)
    );
    let (yx, yy) = (LEFT - 44.0, TOP + PLOT / 2.0);
    let _ = writeln!(
        svg,
        r#"<text x="{yx}" y="{yy}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 {yx} {yy})">{}</text>"#,
        escape(&ay.name)
    );

    // color bar
    let bar_x = LEFT + PLOT + 30.0;
    let steps = 64;
    let sh = PLOT / steps as f64;
    for s in 0..steps {
        let t = (s as f64 + 0.5) / steps as f64;
        let y = TOP + PLOT - (s + 1) as f64 * sh;
        let _ = writeln!(
            svg,
            r#"<rect x="{bar_x}" y="{y:.3}" width="20" height="{sh:.3}" fill="{}" stroke="none"/>"#,
            color(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{bar_x}" y="{TOP}" width="20" height="{PLOT}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">max {}</text>"#,
        bar_x + 26.0,
        TOP + 10.0,
        label(max)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{bottom}" font-family="sans-serif" font-size="12">min {}</text>"#,
        bar_x + 26.0,
        label(min)
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg_heatmap(table: &Table, column: &str, path: &Path) -> Result<()> {
    let svg = render_svg_heatmap(table, column)?;
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Axis, Preset};

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(-0.0, 12), "0");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(0.0625, 12), "0.0625");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(format_significant(-2.5e-9, 12), "-2.5e-9");
        assert_eq!(format_significant(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_significant(9.99999999999995, 12), "10");
        assert_eq!(format_significant(1e-5, 12), "0.00001");
    }

    fn table(axes: Vec<Axis>, rows: Vec<Vec<f64>>) -> Table {
        let mut columns: Vec<String> = axes.iter().map(|a| a.name.clone()).collect();
        columns.push("v".into());
        Table { preset: Preset::Custom, axes, columns, rows }
    }

    #[test]
    fn one_row_csv_has_two_lines() {
        let t = table(vec![Axis::new("phi", 0.0, 1.0, 2)], vec![vec![0.5, 0.25]]);
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "phi,v\n0.5,0.25\n");
    }

    #[test]
    fn empty_table_rejected() {
        let t = table(vec![Axis::new("phi", 0.0, 1.0, 2)], vec![]);
        assert!(write_csv(&t, Vec::new()).is_err());
    }

    #[test]
    fn heatmap_cells_and_axes() {
        let axes = vec![Axis::new("phi", 0.0, 1.0, 2), Axis::new("p", 0.0, 0.1, 2)];
        let rows = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.1, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![1.0, 0.1, 4.0],
        ];
        let svg = render_svg_heatmap(&table(axes, rows), "v").unwrap();
        let cells = svg.lines().filter(|l| l.starts_with("<rect x=\"") && l.contains("width=\"200.000\"")).count();
        assert_eq!(cells, 4);
        assert!(svg.contains(">phi<") && svg.contains(">p<"));
        assert!(svg.contains("max 4") && svg.contains("min 1"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn constant_heatmap_is_uniform() {
        let axes = vec![Axis::new("a", 0.0, 1.0, 3), Axis::new("b", 0.0, 1.0, 3)];
        let rows = (0..9).map(|k| vec![(k / 3) as f64, (k % 3) as f64, 0.7]).collect();
        let svg = render_svg_heatmap(&table(axes, rows), "v").unwrap();
        let fills: std::collections::HashSet<&str> = svg
            .lines()
            .filter(|l| l.contains("height=\"133.333\""))
            .filter_map(|l| l.split("fill=\"").nth(1))
            .collect();
        assert_eq!(fills.len(), 1);
    }

    #[test]
    fn one_axis_heatmap_rejected() {
        let t = table(vec![Axis::new("phi", 0.0, 1.0, 2)], vec![vec![0.0, 1.0], vec![1.0, 2.0]]);
        assert!(render_svg_heatmap(&t, "v").is_err());
    }
}
