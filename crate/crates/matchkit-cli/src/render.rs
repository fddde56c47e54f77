//! Deterministic SVG chord diagrams, linear and circular.

use matchkit::Matching;

const DOT_R: f64 = 3.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    )
}

/// Vertices on a baseline, edges as semicircular arcs above it.
pub fn linear_svg(m: &Matching, labeled: bool) -> String {
    let n2 = 2 * m.order();
    let spacing = 40.0;
    let margin = 30.0;
    let width = if n2 == 0 {
        2.0 * margin
    } else {
        2.0 * margin + spacing * (n2 as f64 - 1.0)
    };
    let baseline = 160.0;
    let x = |v: usize| margin + spacing * (v as f64 - 1.0);

    let mut out = header(width, 200.0);
    for e in m.to_edges() {
        let (x1, x2) = (x(e.left), x(e.right));
        let r = (x2 - x1) / 2.0;
        out.push_str(&format!(
            "  <path d=\"M {x1:.2} {baseline:.2} A {r:.2} {r:.2} 0 0 1 {x2:.2} {baseline:.2}\" \
             fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for v in 1..=n2 {
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{baseline:.2}\" r=\"{DOT_R}\" fill=\"black\"/>\n",
            x(v)
        ));
        if labeled {
            out.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" \
                 text-anchor=\"middle\">{}</text>\n",
                x(v),
                baseline + 20.0,
                m.seq()[v - 1]
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Vertices equally spaced on a circle (vertex 1 at the top, clockwise),
/// edges as straight chords.
pub fn circular_svg(m: &Matching, labeled: bool) -> String {
    let n2 = 2 * m.order();
    let (cx, cy, radius) = (160.0, 160.0, 120.0);
    let point = |v: usize| {
        let angle = -std::f64::consts::FRAC_PI_2
            + 2.0 * std::f64::consts::PI * (v as f64 - 1.0) / n2.max(1) as f64;
        (cx + radius * angle.cos(), cy + radius * angle.sin())
    };

    let mut out = header(320.0, 320.0);
    out.push_str(&format!(
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{radius:.2}\" fill=\"none\" \
         stroke=\"lightgray\" stroke-width=\"1\"/>\n"
    ));
    for e in m.to_edges() {
        let (x1, y1) = point(e.left);
        let (x2, y2) = point(e.right);
        out.push_str(&format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for v in 1..=n2 {
        let (px, py) = point(v);
        out.push_str(&format!(
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"{DOT_R}\" fill=\"black\"/>\n"
        ));
        if labeled {
            let angle = -std::f64::consts::FRAC_PI_2
                + 2.0 * std::f64::consts::PI * (v as f64 - 1.0) / n2 as f64;
            let (tx, ty) = (cx + (radius + 16.0) * angle.cos(), cy + (radius + 16.0) * angle.sin());
            out.push_str(&format!(
                "  <text x=\"{tx:.2}\" y=\"{:.2}\" font-size=\"12\" \
                 text-anchor=\"middle\">{v}</text>\n",
                ty + 4.0
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
