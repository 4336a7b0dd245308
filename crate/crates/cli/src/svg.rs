//! Static SVG figure of a decided triple: the real axis, the strip of `A`, the
//! isometric circles of `B`, `C` and `BC`, and the domain when there is one.

use std::fmt::Write as _;

use fourps_core::algorithm::{Decision, Verdict};
use fourps_core::canonical::ParabolicTriple;
use fourps_core::ford::{ford_data, Interval};
use fourps_core::moebius::{BoundaryPoint, Matrix};
use fourps_core::Scalar;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 40.0;

struct Circle {
    label: &'static str,
    lo: String,
    hi: String,
    range: (f64, f64),
    class: &'static str,
}

struct View {
    lo: f64,
    scale: f64,
    axis_y: f64,
}

impl View {
    fn x(&self, t: f64) -> f64 {
        MARGIN + (t - self.lo) * self.scale
    }

    fn len(&self, t: f64) -> f64 {
        t * self.scale
    }
}

fn footprint<S: Scalar>(label: &'static str, i: &Interval<S>, class: &'static str) -> Circle {
    Circle { label, lo: i.lo().to_string(), hi: i.hi().to_string(), range: (i.lo().to_f64(), i.hi().to_f64()), class }
}

fn union<S: Scalar>(a: &Interval<S>, b: &Interval<S>) -> (String, String) {
    let lo = if a.lo().less_eq(b.lo()).unwrap_or(true) { a.lo() } else { b.lo() };
    let hi = if a.hi().greater_eq(b.hi()).unwrap_or(true) { a.hi() } else { b.hi() };
    (lo.to_string(), hi.to_string())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the final configuration of `d`. `start` is only quoted in the caption.
pub fn render<S: Scalar>(start: &ParabolicTriple<S>, d: &Decision<S>) -> String {
    let t = &d.final_triple;
    let [_, b, c] = t.matrices();
    let bc = b.mul(&c);
    let mut circles = Vec::new();
    let mut unions = Vec::new();
    let mut pair = |name: &'static str, inv: &'static str, g: &Matrix<S>, class: &'static str| {
        if let Ok(f) = ford_data(g) {
            unions.push((name, union(&f.isometric_circle, &f.image_circle)));
            circles.push(footprint(name, &f.isometric_circle, class));
            circles.push(footprint(inv, &f.image_circle, class));
        }
    };
    pair("B", "B^-1", &b, "gen-b");
    pair("C", "C^-1", &c, "gen-c");
    pair("BC", "(BC)^-1", &bc, "prod-bc");

    let strip = (t.x.to_f64() - 1.0, t.x.to_f64() + 1.0);
    let (mut lo, mut hi) = (strip.0.min(-1.0), strip.1.max(1.0));
    for c in &circles {
        lo = lo.min(c.range.0);
        hi = hi.max(c.range.1);
    }
    let pad = (hi - lo) * 0.05;
    let (lo, hi) = (lo - pad, hi + pad);
    let scale = ((WIDTH - 2.0 * MARGIN) / (hi - lo)).min(2.0 * (HEIGHT - 2.0 * MARGIN) / (hi - lo));
    let view = View { lo, scale, axis_y: HEIGHT - MARGIN };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-verdict="{}">"#,
        d.verdict.tag()
    );
    let _ = writeln!(
        out,
        "<style>.axis{{stroke:#000;stroke-width:1}} .strip{{stroke:#555;stroke-dasharray:6 4}} \
         .gen-b{{stroke:#1f77b4}} .gen-c{{stroke:#2ca02c}} .prod-bc{{stroke:#9467bd;stroke-dasharray:3 3}} \
         .domain{{stroke:#d62728;stroke-width:2}} .witness{{fill:#d62728;fill-opacity:0.15;stroke:#d62728}} \
         circle,path{{fill:none}} text{{font:12px sans-serif}}</style>"
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        MARGIN / 2.0,
        view.axis_y,
        WIDTH - MARGIN / 2.0,
        view.axis_y
    );
    for (edge, value) in [(strip.0, t.x.clone() - S::one()), (strip.1, t.x.clone() + S::one())] {
        let _ = writeln!(
            out,
            r#"<line class="strip" data-at="{value}" x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}"/>"#,
            view.axis_y,
            MARGIN / 2.0,
            x = view.x(edge)
        );
    }

    let witness = matches!(d.verdict, Verdict::EllipticWitness { .. } | Verdict::Degenerate { .. });
    for c in &circles {
        let (a, z) = c.range;
        let (cx, r) = (view.x((a + z) / 2.0), view.len((z - a) / 2.0));
        let class = if witness && overlaps(c, &circles) { format!("{} witness", c.class) } else { c.class.to_string() };
        let _ = writeln!(
            out,
            r#"<path class="{class}" data-element="{}" data-footprint="[{}, {}]" d="M {:.3} {:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {:.3}"/>"#,
            c.label,
            c.lo,
            c.hi,
            cx - r,
            view.axis_y,
            cx + r,
            view.axis_y
        );
    }
    let mut row = 0.0;
    let mut caption = |out: &mut String, text: &str| {
        row += 16.0;
        let _ = writeln!(out, r#"<text x="{MARGIN}" y="{row}">{}</text>"#, escape(text));
    };
    for (name, (lo, hi)) in &unions {
        let _ = writeln!(out, r#"<g data-union="{name}" data-footprint="[{lo}, {hi}]"/>"#);
    }
    caption(&mut out, &format!("start ({}, {}, {}), drawn at ({}, {}, {})", start.x, start.y, start.z, t.x, t.y, t.z));
    for (name, (lo, hi)) in &unions {
        caption(&mut out, &format!("{name} footprints [{lo}, {hi}]"));
    }

    match &d.verdict {
        Verdict::Discrete { domain, .. } => {
            for g in domain {
                let (p, q) = g.ends();
                match (p, q) {
                    (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                        let (p, q) = (p.to_f64(), q.to_f64());
                        let (a, z) = (p.min(q), p.max(q));
                        let (cx, r) = (view.x((a + z) / 2.0), view.len((z - a) / 2.0));
                        let _ = writeln!(
                            out,
                            r#"<path class="domain" d="M {:.3} {:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {:.3}"/>"#,
                            cx - r,
                            view.axis_y,
                            cx + r,
                            view.axis_y
                        );
                    }
                    (BoundaryPoint::Finite(p), BoundaryPoint::Infinity)
                    | (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => {
                        let x = view.x(p.to_f64());
                        let _ = writeln!(
                            out,
                            r#"<line class="domain" x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}"/>"#,
                            view.axis_y,
                            MARGIN / 2.0
                        );
                    }
                    _ => {}
                }
            }
            caption(&mut out, "discrete: ping-pong domain in red");
        }
        Verdict::EllipticWitness { word, trace } => {
            caption(&mut out, &format!("elliptic witness {word} with trace {trace}"));
        }
        Verdict::Degenerate { word, detail, .. } => {
            caption(&mut out, &format!("{}: {word} ({detail})", d.verdict.tag()));
        }
        Verdict::Undetermined { reason } => caption(&mut out, &format!("undetermined: {reason:?}")),
    }
    out.push_str("</svg>\n");
    out
}

/// A footprint of `B` or `B^-1` meeting one of `C` or `C^-1`, or the reverse.
fn overlaps(c: &Circle, all: &[Circle]) -> bool {
    let generator = |k: &str| k == "gen-b" || k == "gen-c";
    generator(c.class)
        && all
            .iter()
            .any(|o| generator(o.class) && o.class != c.class && o.range.0 < c.range.1 && c.range.0 < o.range.1)
}
