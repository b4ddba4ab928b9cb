//! Static cone-and-strip diagrams, p horizontal and q vertical.

use std::fmt::Write as _;

use crate::gridmodule::{DimTable, Window};
use crate::m2algebra::{Bidegree, Decomposition, StandardSummand};

const CELL: i64 = 24;
const MARGIN: i64 = 40;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    w: Window,
}

impl Frame {
    fn x(&self, p: f64) -> f64 {
        (MARGIN as f64) + (p - self.w.p_min as f64 + 0.5) * CELL as f64
    }

    fn y(&self, q: f64) -> f64 {
        (MARGIN as f64) + (self.w.q_max as f64 - q + 0.5) * CELL as f64
    }

    fn width(&self) -> i64 {
        2 * MARGIN + self.w.width() as i64 * CELL
    }

    fn height(&self) -> i64 {
        2 * MARGIN + self.w.height() as i64 * CELL
    }

    fn points(&self, pts: &[(f64, f64)]) -> String {
        let v: Vec<String> = pts
            .iter()
            .map(|&(p, q)| format!("{:.1},{:.1}", self.x(p), self.y(q)))
            .collect();
        v.join(" ")
    }
}

/// SVG drawing of a decomposition: each free summand as its upper cone
/// (vertex at the generator, bounded by the τ and ρ rays) and lower cone
/// (vertex at θ, opening down and to the left); each antipodal summand as a
/// vertical strip over its columns.
pub fn svg(d: &Decomposition, window: Window) -> String {
    panel(d, window, "grid", 0)
}

/// One panel per candidate, side by side.
pub fn svg_panels(list: &[Decomposition], window: Window) -> String {
    if list.len() == 1 {
        return svg(&list[0], window);
    }
    let f = Frame { w: window };
    let (w, h) = (f.width(), f.height());
    let total = w * list.len().max(1) as i64;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{h}\" viewBox=\"0 0 {total} {h}\">\n"
    );
    for (i, d) in list.iter().enumerate() {
        out.push_str(&panel(d, window, &format!("grid{i}"), w * i as i64));
    }
    out.push_str("</svg>\n");
    out
}

fn panel(d: &Decomposition, window: Window, id: &str, offset: i64) -> String {
    let f = Frame { w: window };
    let far = (window.width() + window.height()) as f64 + 4.0;
    let (w, h) = (f.width(), f.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" x="{offset}" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let (x0, y0) = (f.x(window.p_min as f64 - 0.5), f.y(window.q_max as f64 + 0.5));
    let (x1, y1) = (f.x(window.p_max as f64 + 0.5), f.y(window.q_min as f64 - 0.5));
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="{id}"><rect x="{x0:.1}" y="{y0:.1}" width="{:.1}" height="{:.1}"/></clipPath></defs>"#,
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    // lattice points
    let _ = writeln!(out, r##"<g fill="#bbbbbb">"##);
    for b in window.bidegrees() {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.1}" cy="{:.1}" r="1.5"/>"#,
            f.x(b.p as f64),
            f.y(b.q as f64)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g clip-path="url(#{id})" fill-opacity="0.25" stroke-width="2">"#
    );
    for (i, s) in d.summands().iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        match *s {
            StandardSummand::Free { p, q } => {
                let (p, q) = (p as f64, q as f64);
                let upper = [(p, q), (p, q + far), (p + far, q + far)];
                let (lp, lq) = (p, q - 2.0);
                let lower = [
                    (lp, lq),
                    (lp - far, lq - far),
                    (lp - far, lq - 2.0 * far),
                    (lp, lq - 2.0 * far),
                ];
                let _ = writeln!(
                    out,
                    r#"<polygon class="cone upper" points="{}" fill="{color}" stroke="{color}"/>"#,
                    f.points(&upper)
                );
                let _ = writeln!(
                    out,
                    r#"<polygon class="cone lower" points="{}" fill="{color}" stroke="{color}"/>"#,
                    f.points(&lower)
                );
            }
            StandardSummand::Antipodal { r, n } => {
                let (a, b) = (r as f64 - 0.35, (r + n as i64) as f64 + 0.35);
                let lo = window.q_min as f64 - 1.0;
                let hi = window.q_max as f64 + 1.0;
                let _ = writeln!(
                    out,
                    r#"<polygon class="strip" points="{}" fill="{color}" stroke="{color}"/>"#,
                    f.points(&[(a, lo), (a, hi), (b, hi), (b, lo)])
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    // axes through the origin when visible, otherwise along the frame
    let ax = if (window.p_min..=window.p_max).contains(&0) {
        f.x(0.0)
    } else {
        x0
    };
    let ay = if (window.q_min..=window.q_max).contains(&0) {
        f.y(0.0)
    } else {
        y1
    };
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1">"#);
    let _ = writeln!(out, r#"<line x1="{x0:.1}" y1="{ay:.1}" x2="{x1:.1}" y2="{ay:.1}"/>"#);
    let _ = writeln!(out, r#"<line x1="{ax:.1}" y1="{y0:.1}" x2="{ax:.1}" y2="{y1:.1}"/>"#);
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g font-family="monospace" font-size="10" text-anchor="middle">"#
    );
    for p in window.p_min..=window.p_max {
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{p}</text>"#, f.x(p as f64), y1 + 14.0);
    }
    for q in window.q_min..=window.q_max {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{q}</text>"#,
            x0 - 14.0,
            f.y(q as f64) + 3.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="14">p</text>"#,
        x1 + 14.0,
        ay + 4.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="14">q</text>"#,
        ax,
        y0 - 10.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="16" font-size="12">{}</text>"#,
        w as f64 / 2.0,
        escape(&d.to_string())
    );
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Text grid of dimensions: rows are weights from the top of the window
/// down, columns are topological degrees; zero is shown as '.'.
pub fn ascii(dims: &DimTable) -> String {
    let w = dims.window;
    let cell = w
        .bidegrees()
        .map(|b| dims.get(b).to_string().len())
        .max()
        .unwrap_or(1)
        .max(w.p_min.to_string().len())
        .max(w.p_max.to_string().len());
    let label = w.q_min.to_string().len().max(w.q_max.to_string().len()).max(1);
    let mut out = String::new();
    for q in (w.q_min..=w.q_max).rev() {
        let _ = write!(out, "{q:>label$} |");
        for p in w.p_min..=w.p_max {
            let n = dims.get(Bidegree::new(p, q));
            let s = if n == 0 { ".".to_string() } else { n.to_string() };
            let _ = write!(out, " {s:>cell$}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>label$} +{}", "", "-".repeat((cell + 1) * w.width()));
    let _ = write!(out, "{:>label$}   ", "q");
    for p in w.p_min..=w.p_max {
        let _ = write!(out, "{p:>cell$} ");
    }
    out.push_str(" p\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_svg_has_two_cones() {
        let d = Decomposition::new(vec![StandardSummand::free(0, 0)]);
        let s = svg(&d, Window::default_for(0));
        assert_eq!(s.matches("class=\"cone upper\"").count(), 1);
        assert_eq!(s.matches("class=\"cone lower\"").count(), 1);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert_eq!(s, svg(&d, Window::default_for(0)));
    }

    #[test]
    fn strip_glyph_and_ascii() {
        let d = Decomposition::new(vec![StandardSummand::antipodal(0, 1)]);
        let w = Window::new(-1, 2, -1, 1).unwrap();
        assert_eq!(svg(&d, w).matches("class=\"strip\"").count(), 1);
        let text = ascii(&DimTable::of_decomposition(&d, w));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], " 1 |  .  1  1  .");
        assert_eq!(lines[4], " q   -1  0  1  2  p");
        assert!(text.ends_with("p\n"));
    }
}
