//! Static SVG rendering of a region scan: one colored patch per grid cell,
//! plus the critical lines `p = p_crit`, `p + q = pq_crit`, `q = q_min` and,
//! for system scans, the curve `p + q = system_curve(s)`.

use std::fmt::Write;

use conehardy_core::{Outcome, RegionScan};

const PLOT_W: f64 = 560.0;
const PLOT_H: f64 = 560.0;
const LEFT: f64 = 64.0;
const TOP: f64 = 24.0;
const RIGHT: f64 = 24.0;
const BOTTOM: f64 = 60.0;

const FILL_EXISTS: &str = "#35618f";
const FILL_NOT_EXISTS: &str = "#e8edf3";
const FILL_UNDETERMINED: &str = "#d9b85c";

fn fill(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Exists => FILL_EXISTS,
        Outcome::NotExists => FILL_NOT_EXISTS,
        Outcome::Undetermined => FILL_UNDETERMINED,
    }
}

pub fn region_svg(scan: &RegionScan, system_curve: Option<f64>) -> String {
    let width = LEFT + PLOT_W + RIGHT;
    let height = TOP + PLOT_H + BOTTOM;
    let x = |p: f64| LEFT + p / scan.p_max * PLOT_W;
    let y = |q: f64| TOP + PLOT_H - q / scan.q_max * PLOT_H;

    let mut svg = String::with_capacity(64 * 1024);
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"##
    );
    svg.push_str(
        "<style>text { font-family: sans-serif; font-size: 12px; fill: #333; }</style>\n",
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"##
    );

    // Cells, merged into vertical runs of equal outcome (row-major input,
    // q fastest, so a column of the plot is contiguous in `cells`).
    let step_x = PLOT_W / scan.n_p as f64;
    let step_y = PLOT_H / scan.n_q as f64;
    for i in 0..scan.n_p {
        let column = &scan.cells[i * scan.n_q..(i + 1) * scan.n_q];
        let mut j = 0;
        while j < scan.n_q {
            let run_fill = fill(column[j].outcome);
            let mut j_end = j;
            while j_end + 1 < scan.n_q && fill(column[j_end + 1].outcome) == run_fill {
                j_end += 1;
            }
            let rx = LEFT + i as f64 * step_x;
            let ry = TOP + PLOT_H - (j_end + 1) as f64 * step_y;
            let rh = (j_end - j + 1) as f64 * step_y;
            let _ = writeln!(
                svg,
                r##"<rect class="cell" x="{rx:.2}" y="{ry:.2}" width="{:.2}" height="{rh:.2}" fill="{run_fill}"/>"##,
                step_x + 0.5
            );
            j = j_end + 1;
        }
    }

    // Plot frame and axis ticks.
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT:.1}" y="{TOP:.1}" width="{PLOT_W:.1}" height="{PLOT_H:.1}" fill="none" stroke="#444" stroke-width="1"/>"##
    );
    for k in 0..=4 {
        let p = scan.p_max * k as f64 / 4.0;
        let q = scan.q_max * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="middle">{p:.3}</text>"##,
            x(p),
            TOP + PLOT_H + 16.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end">{q:.3}</text>"##,
            LEFT - 6.0,
            y(q) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-style="italic">p</text>"##,
        LEFT + PLOT_W / 2.0,
        TOP + PLOT_H + 34.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-style="italic">q</text>"##,
        LEFT - 40.0,
        TOP + PLOT_H / 2.0
    );

    // Critical lines, clipped to the plotted rectangle.
    let th = &scan.thresholds;
    if th.p_crit.is_finite() && th.p_crit > 0.0 && th.p_crit <= scan.p_max {
        let lx = x(th.p_crit);
        let _ = writeln!(
            svg,
            r##"<line class="line-p-crit" x1="{lx:.2}" y1="{TOP:.1}" x2="{lx:.2}" y2="{:.1}" stroke="#c0392b" stroke-width="1.5"/>"##,
            TOP + PLOT_H
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" fill="#c0392b">p = {:.4}</text>"##,
            lx + 5.0,
            TOP + 16.0,
            th.p_crit
        );
    }
    if th.q_min.is_finite() && th.q_min > 0.0 && th.q_min <= scan.q_max {
        let ly = y(th.q_min);
        let _ = writeln!(
            svg,
            r##"<line class="line-q-min" x1="{LEFT:.1}" y1="{ly:.2}" x2="{:.1}" y2="{ly:.2}" stroke="#1f7a4d" stroke-width="1.5"/>"##,
            LEFT + PLOT_W
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end" fill="#1f7a4d">q = {:.4}</text>"##,
            LEFT + PLOT_W - 6.0,
            ly - 6.0,
            th.q_min
        );
    }
    if let Some(((p1, q1), (p2, q2))) = diagonal_endpoints(th.pq_crit, scan.p_max, scan.q_max) {
        let _ = writeln!(
            svg,
            r##"<line class="line-pq-crit" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#7d3c98" stroke-width="1.5"/>"##,
            x(p1),
            y(q1),
            x(p2),
            y(q2)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" fill="#7d3c98">p + q = {:.4}</text>"##,
            x(0.5 * (p1 + p2)) + 6.0,
            y(0.5 * (q1 + q2)) - 6.0,
            th.pq_crit
        );
    }
    if let Some(curve) = system_curve {
        if let Some(((p1, q1), (p2, q2))) = diagonal_endpoints(curve, scan.p_max, scan.q_max) {
            let _ = writeln!(
                svg,
                r##"<line class="line-system-curve" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#b9770e" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                x(p1),
                y(q1),
                x(p2),
                y(q2)
            );
            let _ = writeln!(
                svg,
                r##"<text x="{:.1}" y="{:.1}" fill="#b9770e">p + q = {curve:.4}</text>"##,
                x(0.5 * (p1 + p2)) + 6.0,
                y(0.5 * (q1 + q2)) + 14.0
            );
        }
    }

    // Legend.
    let mut lx = LEFT;
    let ly = TOP + PLOT_H + 46.0;
    for (color, label) in [
        (FILL_EXISTS, "exists"),
        (FILL_NOT_EXISTS, "not exists"),
        (FILL_UNDETERMINED, "undetermined"),
    ] {
        let _ = writeln!(
            svg,
            r##"<rect x="{lx:.1}" y="{:.1}" width="12" height="12" fill="{color}" stroke="#444" stroke-width="0.5"/>"##,
            ly - 10.0
        );
        let _ = writeln!(svg, r##"<text x="{:.1}" y="{ly:.1}">{label}</text>"##, lx + 17.0);
        lx += 17.0 + 9.0 * label.len() as f64 + 24.0;
    }

    svg.push_str("</svg>\n");
    svg
}

/// Endpoints of the segment `p + q = c` inside `[0, p_max] × [0, q_max]`,
/// or `None` when the line misses the rectangle.
fn diagonal_endpoints(c: f64, p_max: f64, q_max: f64) -> Option<((f64, f64), (f64, f64))> {
    if !c.is_finite() || c <= 0.0 {
        return None;
    }
    let p1 = (c - q_max).max(0.0);
    let p2 = c.min(p_max);
    if p2 <= p1 {
        return None;
    }
    Some(((p1, c - p1), (p2, c - p2)))
}
