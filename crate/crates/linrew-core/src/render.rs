//! Diagram emission: TikZ and SVG pictures of monomials and combinations,
//! plus JSON via the types' serializers.

use crate::diagram::Monomial;
use crate::lincomb::LinComb;

/// Geometry of one row: y runs downward from the top boundary.
struct RowGeom {
    y0: f64,
    y1: f64,
    left: usize,
    n_in: usize,
    n_out: usize,
    width_before: usize,
}

fn rows(m: &Monomial) -> Vec<RowGeom> {
    let mut out = Vec::new();
    let mut width = m.src().len();
    for (r, s) in m.slices().iter().enumerate() {
        let n_in = s.gen.src.len();
        let n_out = s.gen.tgt.len();
        out.push(RowGeom {
            y0: r as f64,
            y1: r as f64 + 1.0,
            left: s.left.len(),
            n_in,
            n_out,
            width_before: width,
        });
        width = width + n_out - n_in;
    }
    out
}

enum Shape {
    Cup,
    Cap,
    Dot,
    Crossing,
    Box(String),
}

fn shape(m: &Monomial, r: usize) -> Shape {
    let g = &m.slices()[r].gen;
    match (g.src.len(), g.tgt.len()) {
        (0, 2) => Shape::Cup,
        (2, 0) => Shape::Cap,
        (1, 1) if g.is_dot() => Shape::Dot,
        (2, 2) if g.is_crossing() => Shape::Crossing,
        _ => Shape::Box(g.id.clone()),
    }
}

/// TikZ picture of a monomial, top boundary at the top.
pub fn tikz_monomial(m: &Monomial) -> String {
    let mut body = String::new();
    let h = m.height() as f64;
    let geoms = rows(m);
    for (r, g) in geoms.iter().enumerate() {
        let (y0, y1) = (h - g.y0, h - g.y1);
        let l = g.left as f64;
        for i in 0..g.left {
            body.push_str(&format!("  \\draw ({i},{y0}) -- ({i},{y1});\n"));
        }
        let right = g.width_before - g.left - g.n_in;
        for i in 0..right {
            let x0 = g.left + g.n_in + i;
            let x1 = g.left + g.n_out + i;
            body.push_str(&format!("  \\draw ({x0},{y0}) -- ({x1},{y1});\n"));
        }
        match shape(m, r) {
            Shape::Cup => body.push_str(&format!(
                "  \\draw ({l},{y1}) arc (180:0:0.5);\n"
            )),
            Shape::Cap => body.push_str(&format!(
                "  \\draw ({l},{y0}) arc (180:360:0.5);\n"
            )),
            Shape::Dot => body.push_str(&format!(
                "  \\draw ({l},{y0}) -- ({l},{y1});\n  \\filldraw ({l},{}) circle (0.08);\n",
                (y0 + y1) / 2.0
            )),
            Shape::Crossing => body.push_str(&format!(
                "  \\draw ({l},{y0}) -- ({},{y1});\n  \\draw ({},{y0}) -- ({l},{y1});\n",
                l + 1.0,
                l + 1.0
            )),
            Shape::Box(id) => body.push_str(&format!(
                "  \\node[draw,fill=white] at ({},{}) {{${id}$}};\n",
                l + (g.n_in.max(g.n_out) as f64 - 1.0) / 2.0,
                (y0 + y1) / 2.0
            )),
        }
    }
    if m.is_identity() {
        for i in 0..m.src().len() {
            body.push_str(&format!("  \\draw ({i},0) -- ({i},1);\n"));
        }
    }
    format!("\\begin{{tikzpicture}}[scale=0.8]\n{body}\\end{{tikzpicture}}\n")
}

/// SVG picture of a monomial.
pub fn svg_monomial(m: &Monomial) -> String {
    const U: f64 = 30.0;
    const PAD: f64 = 15.0;
    let mut body = String::new();
    let mut max_w = m.src().len().max(m.tgt().len());
    let geoms = rows(m);
    let line = |x0: f64, y0: f64, x1: f64, y1: f64| {
        format!(
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            PAD + x0 * U,
            PAD + y0 * U,
            PAD + x1 * U,
            PAD + y1 * U
        )
    };
    for (r, g) in geoms.iter().enumerate() {
        max_w = max_w.max(g.width_before + 2);
        let (y0, y1) = (g.y0, g.y1);
        let l = g.left as f64;
        for i in 0..g.left {
            body.push_str(&line(i as f64, y0, i as f64, y1));
        }
        let right = g.width_before - g.left - g.n_in;
        for i in 0..right {
            body.push_str(&line(
                (g.left + g.n_in + i) as f64,
                y0,
                (g.left + g.n_out + i) as f64,
                y1,
            ));
        }
        match shape(m, r) {
            Shape::Cup => body.push_str(&format!(
                "  <path d=\"M {:.1} {:.1} A {:.1} {:.1} 0 0 1 {:.1} {:.1}\" fill=\"none\" stroke=\"black\"/>\n",
                PAD + l * U, PAD + y1 * U, U / 2.0, U / 2.0, PAD + (l + 1.0) * U, PAD + y1 * U
            )),
            Shape::Cap => body.push_str(&format!(
                "  <path d=\"M {:.1} {:.1} A {:.1} {:.1} 0 0 0 {:.1} {:.1}\" fill=\"none\" stroke=\"black\"/>\n",
                PAD + l * U, PAD + y0 * U, U / 2.0, U / 2.0, PAD + (l + 1.0) * U, PAD + y0 * U
            )),
            Shape::Dot => {
                body.push_str(&line(l, y0, l, y1));
                body.push_str(&format!(
                    "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"black\"/>\n",
                    PAD + l * U,
                    PAD + (y0 + y1) / 2.0 * U
                ));
            }
            Shape::Crossing => {
                body.push_str(&line(l, y0, l + 1.0, y1));
                body.push_str(&line(l + 1.0, y0, l, y1));
            }
            Shape::Box(id) => body.push_str(&format!(
                "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"white\" stroke=\"black\"/>\n  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\">{id}</text>\n",
                PAD + (l - 0.3) * U,
                PAD + (y0 + 0.25) * U,
                (g.n_in.max(g.n_out) as f64 - 0.4 + 0.6) * U,
                0.5 * U,
                PAD + (l + (g.n_in.max(g.n_out) as f64 - 1.0) / 2.0) * U,
                PAD + ((y0 + y1) / 2.0 + 0.1) * U
            )),
        }
    }
    if m.is_identity() {
        for i in 0..m.src().len() {
            body.push_str(&line(i as f64, 0.0, i as f64, 1.0));
        }
    }
    let height = m.height().max(1) as f64;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\">\n{body}</svg>\n",
        2.0 * PAD + max_w as f64 * U,
        2.0 * PAD + height * U
    )
}

/// TikZ for a combination: each term rendered with its coefficient.
pub fn tikz_lincomb(c: &LinComb) -> String {
    if c.is_zero() {
        return "$0$\n".to_string();
    }
    let mut out = String::new();
    for (i, (m, coeff)) in c.terms().iter().enumerate() {
        if i > 0 {
            out.push_str("$+$\n");
        }
        out.push_str(&format!("${coeff}\\cdot$\n"));
        out.push_str(&tikz_monomial(m));
    }
    out
}

/// SVG for a combination: terms side by side with coefficient labels.
pub fn svg_lincomb(c: &LinComb) -> String {
    let mut parts = Vec::new();
    for (m, coeff) in c.terms() {
        parts.push(format!("<!-- coefficient {coeff} -->\n{}", svg_monomial(m)));
    }
    if parts.is_empty() {
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"30\" height=\"30\"><text x=\"10\" y=\"20\">0</text></svg>\n".to_string()
    } else {
        parts.join("\n")
    }
}
