//! SVG rendering of a partition pair: the two rectangles side by side,
//! paired modules sharing a fill from a fixed 12-color palette, bottom-left
//! origin mapped to SVG coordinates by a y-flip.

use crate::geom::{Partition, PartitionPair};
use std::fmt::Write as _;

pub const DEFAULT_SCALE: u64 = 16;

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

/// Renders the pair at `scale` pixels per unit.
pub fn render_svg(pair: &PartitionPair, scale: u64) -> String {
    let margin = scale.max(8);
    let aw = pair.a.parent.width * scale;
    let ah = pair.a.parent.height * scale;
    let bw = pair.b.parent.width * scale;
    let bh = pair.b.parent.height * scale;
    let width = margin * 3 + aw + bw;
    let height = margin * 2 + ah.max(bh);

    // Module colors follow the A-side index; the paired B module reuses it.
    let mut b_color = vec![0usize; pair.b.modules.len()];
    for (i, &j) in pair.pairing.iter().enumerate() {
        b_color[j] = i % PALETTE.len();
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    draw_partition(&mut out, &pair.a, margin, margin, scale, |i| i % PALETTE.len());
    draw_partition(&mut out, &pair.b, margin * 2 + aw, margin, scale, |i| b_color[i]);
    out.push_str("</svg>\n");
    out
}

fn draw_partition(
    out: &mut String,
    part: &Partition,
    x0: u64,
    y0: u64,
    scale: u64,
    color: impl Fn(usize) -> usize,
) {
    let ph = part.parent.height * scale;
    for (i, m) in part.modules.iter().enumerate() {
        let x = x0 + m.x * scale;
        // y grows upward in geometry, downward in SVG.
        let y = y0 + ph - (m.y + m.dims.height) * scale;
        let _ = writeln!(
            out,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#222222\" stroke-width=\"1\"/>",
            m.dims.width * scale,
            m.dims.height * scale,
            PALETTE[color(i)]
        );
    }
    let _ = writeln!(
        out,
        "  <rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{ph}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>",
        part.parent.width * scale
    );
}
