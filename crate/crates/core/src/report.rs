//! Static artifact emission: scatter CSVs, SVG heatmaps, and the linear-fit
//! plot. Everything is written as plain text with no graphics dependencies,
//! and identical inputs produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use crate::harness::TrialRecord;
use crate::sampler::SearchSpace;
use crate::surrogates::{LinearModel, PredictionGrid};
use crate::{Error, Result};

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 25.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }

    /// Channel-wise linear interpolation; t = 0 gives `self` exactly and
    /// t = 1 gives `other` exactly.
    pub fn lerp(self, other: Rgb, t: f64) -> Rgb {
        let mix = |a: u8, b: u8| -> u8 {
            (a as f64 + t * (b as f64 - a as f64))
                .round()
                .clamp(0.0, 255.0) as u8
        };
        Rgb(
            mix(self.0, other.0),
            mix(self.1, other.1),
            mix(self.2, other.2),
        )
    }
}

/// Cool (low value) color stop.
pub const COOL: Rgb = Rgb(59, 76, 192);
/// Warm (high value) color stop.
pub const WARM: Rgb = Rgb(180, 4, 38);

/// A grid of values over a region, ready to render: `values` is row-major
/// with `rows` dropout rows (bottom row = low dropout) and `cols` unit
/// columns (left = low log2 units).
#[derive(Debug, Clone)]
pub struct HeatmapSpec {
    pub region: SearchSpace,
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub cool: Rgb,
    pub warm: Rgb,
}

impl HeatmapSpec {
    pub fn new(
        region: SearchSpace,
        rows: usize,
        cols: usize,
        values: Vec<f64>,
        title: impl Into<String>,
    ) -> Result<Self> {
        region.validate()?;
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {rows}x{cols} grid",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("heatmap values must be finite".into()));
        }
        Ok(Self {
            region,
            rows,
            cols,
            values,
            title: title.into(),
            x_label: "hidden units".into(),
            y_label: "dropout rate".into(),
            cool: COOL,
            warm: WARM,
        })
    }

    /// Renders surrogate grid predictions as heatmap cells.
    pub fn from_grid(grid: &PredictionGrid, title: impl Into<String>) -> Result<Self> {
        let (rows, cols) = grid.resolution();
        Self::new(grid.region, rows, cols, grid.values.clone(), title)
    }

    fn color(&self, value: f64, min: f64, max: f64) -> Rgb {
        let t = if max > min {
            (value - min) / (max - min)
        } else {
            0.0
        };
        self.cool.lerp(self.warm, t)
    }
}

/// Mean value per cell of a rows x cols grid over `region`; cells with no
/// trials get the overall mean so every cell renders. Skipped trials and
/// trials outside the region are ignored.
pub fn bin_ledger(
    records: &[TrialRecord],
    region: &SearchSpace,
    rows: usize,
    cols: usize,
    value: fn(&TrialRecord) -> f64,
) -> Result<Vec<f64>> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidConfig(
            "grid must have at least one cell".into(),
        ));
    }
    let mut sums = vec![0.0; rows * cols];
    let mut counts = vec![0usize; rows * cols];
    let mut total = 0.0;
    let mut total_count = 0usize;
    for r in records.iter().filter(|r| !r.is_skipped()) {
        let u = (r.log2_units() - region.log2_units.0) / region.log2_units_span();
        let d = (r.dropout - region.dropout.0) / region.dropout_span();
        if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&d) {
            continue;
        }
        let col = ((u * cols as f64) as usize).min(cols - 1);
        let row = ((d * rows as f64) as usize).min(rows - 1);
        let v = value(r);
        sums[row * cols + col] += v;
        counts[row * cols + col] += 1;
        total += v;
        total_count += 1;
    }
    if total_count == 0 {
        return Err(Error::DegenerateData(
            "no usable trials fall inside the region".into(),
        ));
    }
    let mean = total / total_count as f64;
    Ok(sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| if c > 0 { s / c as f64 } else { mean })
        .collect())
}

/// One CSV row per non-skipped trial: units,dropout,cost,accuracy.
pub fn emit_scatter_csv(records: &[TrialRecord], path: &Path) -> Result<()> {
    let mut out = String::from("units,dropout,cost,accuracy\n");
    for r in records.iter().filter(|r| !r.is_skipped()) {
        let _ = writeln!(out, "{},{},{},{}", r.units, r.dropout, r.cost, r.accuracy);
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// One CSV row per surrogate grid point: log2_units,dropout,value.
pub fn emit_grid_csv(grid: &PredictionGrid, path: &Path) -> Result<()> {
    let mut out = String::from("log2_units,dropout,value\n");
    for (di, &d) in grid.dropout_axis.iter().enumerate() {
        for (ui, &l2) in grid.log2_units_axis.iter().enumerate() {
            let _ = writeln!(out, "{l2},{d},{}", grid.value(di, ui));
        }
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

struct Frame {
    plot_w: f64,
    plot_h: f64,
    region: SearchSpace,
}

impl Frame {
    fn new(region: SearchSpace) -> Self {
        Self {
            plot_w: SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
            plot_h: SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
            region,
        }
    }

    fn x(&self, log2_units: f64) -> f64 {
        MARGIN_LEFT
            + self.plot_w * (log2_units - self.region.log2_units.0) / self.region.log2_units_span()
    }

    /// SVG y grows downward; dropout grows upward.
    fn y(&self, dropout: f64) -> f64 {
        MARGIN_TOP
            + self.plot_h * (1.0 - (dropout - self.region.dropout.0) / self.region.dropout_span())
    }

    fn open(&self, out: &mut String, title: &str, x_label: &str, y_label: &str) {
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
        );
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"0\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"#ffffff\"/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
            SVG_WIDTH / 2.0,
            xml_escape(title)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            MARGIN_LEFT + self.plot_w / 2.0,
            SVG_HEIGHT - 12.0,
            xml_escape(x_label)
        );
        let _ = writeln!(
            out,
            "<text x=\"18\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>",
            MARGIN_TOP + self.plot_h / 2.0,
            MARGIN_TOP + self.plot_h / 2.0,
            xml_escape(y_label)
        );
    }

    /// Octave ticks on the units axis, five evenly spaced ticks on dropout.
    fn axes(&self, out: &mut String) {
        let bottom = MARGIN_TOP + self.plot_h;
        let _ = writeln!(
            out,
            "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>",
            self.plot_w, self.plot_h
        );
        let lo = self.region.log2_units.0.ceil() as i64;
        let hi = self.region.log2_units.1.floor() as i64;
        for k in lo..=hi {
            let x = self.x(k as f64);
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"{bottom}\" x2=\"{x}\" y2=\"{}\" stroke=\"#000000\"/>",
                bottom + 5.0
            );
            let _ = writeln!(
                out,
                "<text x=\"{x}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
                bottom + 18.0,
                1u64 << k
            );
        }
        for i in 0..=4 {
            let d = self.region.dropout.0 + self.region.dropout_span() * (i as f64 / 4.0);
            let y = self.y(d);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{MARGIN_LEFT}\" y2=\"{y}\" stroke=\"#000000\"/>",
                MARGIN_LEFT - 5.0
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{:.2}</text>",
                MARGIN_LEFT - 8.0,
                y + 4.0,
                d
            );
        }
    }
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Writes a standalone SVG heatmap: one rect per grid cell, optional overlay
/// circles for ledger points, octave tick labels on the units axis.
pub fn emit_heatmap_svg(
    spec: &HeatmapSpec,
    overlay: Option<&[TrialRecord]>,
    path: &Path,
) -> Result<()> {
    let frame = Frame::new(spec.region);
    let mut out = String::new();
    frame.open(&mut out, &spec.title, &spec.x_label, &spec.y_label);

    let min = spec.values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = spec
        .values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let cell_w = frame.plot_w / spec.cols as f64;
    let cell_h = frame.plot_h / spec.rows as f64;
    for row in 0..spec.rows {
        for col in 0..spec.cols {
            let value = spec.values[row * spec.cols + col];
            let x = MARGIN_LEFT + col as f64 * cell_w;
            // Row 0 is the lowest dropout, drawn at the bottom.
            let y = MARGIN_TOP + frame.plot_h - (row + 1) as f64 * cell_h;
            let _ = writeln!(
                out,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{cell_w}\" height=\"{cell_h}\" fill=\"{}\"/>",
                spec.color(value, min, max).hex()
            );
        }
    }

    if let Some(records) = overlay {
        for r in records.iter().filter(|r| !r.is_skipped()) {
            let cx = frame.x(r.log2_units());
            let cy = frame.y(r.dropout);
            let _ = writeln!(
                out,
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2.5\" fill=\"#000000\" stroke=\"#ffffff\" stroke-width=\"0.6\"/>"
            );
        }
    }

    frame.axes(&mut out);
    out.push_str("</svg>\n");
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Scatter of the selected records plus the fitted line across their
/// log2-units span.
pub fn emit_linear_fit_plot(
    subset: &[TrialRecord],
    model: &LinearModel,
    path: &Path,
) -> Result<()> {
    let live: Vec<&TrialRecord> = subset.iter().filter(|r| !r.is_skipped()).collect();
    if live.is_empty() {
        return Err(Error::Domain(
            "linear-fit plot needs at least one record".into(),
        ));
    }
    let x_min = live
        .iter()
        .map(|r| r.log2_units())
        .fold(f64::INFINITY, f64::min);
    let x_max = live
        .iter()
        .map(|r| r.log2_units())
        .fold(f64::NEG_INFINITY, f64::max);
    let (x_lo, x_hi) = if x_min < x_max {
        (x_min, x_max)
    } else {
        (x_min - 0.5, x_min + 0.5)
    };
    let region = SearchSpace::new((x_lo.max(0.0), x_hi.max(x_lo.max(0.0) + 1e-6)), (0.0, 1.0))?;
    let frame = Frame::new(region);

    let mut out = String::new();
    frame.open(
        &mut out,
        "selected trials and fitted line",
        "hidden units",
        "dropout rate",
    );
    frame.axes(&mut out);

    let (x1, y1) = (frame.x(x_lo), frame.y(model.predict(x_lo).clamp(0.0, 1.0)));
    let (x2, y2) = (frame.x(x_hi), frame.y(model.predict(x_hi).clamp(0.0, 1.0)));
    let _ = writeln!(
        out,
        "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#b00426\" stroke-width=\"1.5\"/>"
    );
    for r in &live {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#3b4cc0\"/>",
            frame.x(r.log2_units()),
            frame.y(r.dropout)
        );
    }
    out.push_str("</svg>\n");
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}
