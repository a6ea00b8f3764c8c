//! Deterministic SVG rendering of per-qubit flip rates on the problem graph.
//! SVG keeps output diffable in tests and avoids any raster dependency.

use crate::analysis::HeatmapCell;

const CELL_SIZE: f64 = 18.0;
const CELL_GAP: f64 = 4.0;
const MARGIN: f64 = 30.0;
const LEGEND_HEIGHT: f64 = 46.0;

/// Renders heatmap cells as one `<rect class="cell">` per variable plus a
/// blue-to-red legend with the minimum and maximum observed rates.
pub fn render_heatmap_svg(cells: &[HeatmapCell]) -> String {
    let step = CELL_SIZE + CELL_GAP;
    let max_x = cells.iter().map(|c| c.x).fold(0.0f64, f64::max);
    let max_y = cells.iter().map(|c| c.y).fold(0.0f64, f64::max);
    let width = MARGIN * 2.0 + (max_x + 1.0) * step;
    let height = MARGIN * 2.0 + (max_y + 1.0) * step + LEGEND_HEIGHT;

    let min_rate = cells.iter().map(|c| c.rate).fold(f64::INFINITY, f64::min);
    let max_rate = cells.iter().map(|c| c.rate).fold(0.0f64, f64::max);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    svg.push_str("  <defs>\n    <linearGradient id=\"rate\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">\n");
    svg.push_str("      <stop offset=\"0\" stop-color=\"rgb(0,0,255)\"/>\n");
    svg.push_str("      <stop offset=\"1\" stop-color=\"rgb(255,0,0)\"/>\n");
    svg.push_str("    </linearGradient>\n  </defs>\n");

    for c in cells {
        let (r, g, b) = c.color;
        let x = MARGIN + c.x * step;
        let y = MARGIN + c.y * step;
        svg.push_str(&format!(
            "  <rect class=\"cell\" x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL_SIZE}\" \
             height=\"{CELL_SIZE}\" fill=\"rgb({r},{g},{b})\"><title>var {v}: rate {rate:.6}\
             </title></rect>\n",
            v = c.var,
            rate = c.rate,
        ));
    }

    let legend_y = height - LEGEND_HEIGHT;
    let legend_w = width - 2.0 * MARGIN;
    svg.push_str(&format!(
        "  <rect x=\"{MARGIN}\" y=\"{legend_y:.1}\" width=\"{legend_w:.1}\" height=\"12\" \
         fill=\"url(#rate)\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{MARGIN}\" y=\"{y:.1}\" font-size=\"11\" font-family=\"sans-serif\">\
         min rate {min_rate:.6}</text>\n",
        y = legend_y + 26.0,
    ));
    svg.push_str(&format!(
        "  <text x=\"{x:.1}\" y=\"{y:.1}\" font-size=\"11\" font-family=\"sans-serif\" \
         text-anchor=\"end\">max rate {max_rate:.6}</text>\n",
        x = MARGIN + legend_w,
        y = legend_y + 26.0,
    ));
    svg.push_str("</svg>\n");
    svg
}
