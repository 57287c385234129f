//! Built-in presentations: the affine oriented Brauer category in its
//! one-orientation form (`aob`) and full two-orientation form (`aobbar`), and
//! a minimal one-rule cup/cap sliding system (`sigma-ex`).

use crate::diagram::{Gen2, Monomial, Slice};
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::polygraph::{Polygraph, Rule};
use crate::word::{StrandLabel, Word};
use std::sync::Arc;

fn w(s: &str) -> Word {
    Word::parse(s).expect("preset word")
}

fn row(left: &str, g: &Arc<Gen2>, right: &str) -> Slice {
    Slice::new(w(left), g.clone(), w(right))
}

fn mono(src: &str, rows: Vec<Slice>) -> Monomial {
    Monomial::new(w(src), rows).expect("preset monomial")
}

fn ident(src: &str) -> LinComb {
    LinComb::identity(w(src))
}

/// The generating 2-cells of the two-orientation affine oriented Brauer
/// presentation: rightward/leftward cups and caps, the four crossings, and a
/// dot on each orientation.
pub struct AobBarGens {
    pub c: Arc<Gen2>,
    pub d: Arc<Gen2>,
    pub s: Arc<Gen2>,
    pub t: Arc<Gen2>,
    pub x: Arc<Gen2>,
    pub cb: Arc<Gen2>,
    pub db: Arc<Gen2>,
    pub sb: Arc<Gen2>,
    pub tb: Arc<Gen2>,
    pub xb: Arc<Gen2>,
}

impl Default for AobBarGens {
    fn default() -> Self {
        Self::new()
    }
}

impl AobBarGens {
    pub fn new() -> Self {
        AobBarGens {
            c: Gen2::new("c", "", "^v"),
            d: Gen2::new("d", "v^", ""),
            s: Gen2::new("s", "^^", "^^"),
            t: Gen2::new("t", "^v", "v^"),
            x: Gen2::new("x", "^", "^"),
            cb: Gen2::new("cb", "", "v^"),
            db: Gen2::new("db", "^v", ""),
            sb: Gen2::new("sb", "vv", "vv"),
            tb: Gen2::new("tb", "v^", "^v"),
            xb: Gen2::new("xb", "v", "v"),
        }
    }

    pub fn all(&self) -> Vec<Arc<Gen2>> {
        vec![
            self.c.clone(),
            self.d.clone(),
            self.s.clone(),
            self.t.clone(),
            self.x.clone(),
            self.cb.clone(),
            self.db.clone(),
            self.sb.clone(),
            self.tb.clone(),
            self.xb.clone(),
        ]
    }

    /// The crossing generator consuming the ordered pair of labels.
    pub fn crossing(&self, a: StrandLabel, b: StrandLabel) -> Arc<Gen2> {
        use StrandLabel::*;
        match (a, b) {
            (Up, Up) => self.s.clone(),
            (Up, Down) => self.t.clone(),
            (Down, Up) => self.tb.clone(),
            (Down, Down) => self.sb.clone(),
        }
    }

    /// Clockwise bubble with `m` dots on its up-leg: rightward cup, `m` dots,
    /// leftward cap.
    pub fn cw(&self, m: usize) -> Monomial {
        let mut rows = vec![row("", &self.c, "")];
        for _ in 0..m {
            rows.push(row("", &self.x, "v"));
        }
        rows.push(row("", &self.db, ""));
        mono("", rows)
    }

    /// Counterclockwise bubble with `n` dots on its down-leg: leftward cup,
    /// `n` dots, rightward cap.
    pub fn ccw(&self, n: usize) -> Monomial {
        let mut rows = vec![row("", &self.cb, "")];
        for _ in 0..n {
            rows.push(row("", &self.xb, "^"));
        }
        rows.push(row("", &self.d, ""));
        mono("", rows)
    }

    /// An upward strand carrying `a` dots.
    pub fn strand_up(&self, a: usize) -> Monomial {
        let rows = (0..a).map(|_| row("", &self.x, "")).collect();
        mono("^", rows)
    }

    /// A downward strand carrying `a` dots.
    pub fn strand_down(&self, a: usize) -> Monomial {
        let rows = (0..a).map(|_| row("", &self.xb, "")).collect();
        mono("v", rows)
    }
}

/// Which bubble-expansion law to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BubbleKind {
    /// Counterclockwise bubbles in terms of clockwise ones (closed, 0-strand).
    U,
    /// Clockwise bubble sliding left across an upward strand.
    V,
    /// Clockwise bubble sliding left across a downward strand.
    VPrime,
}

/// Evaluate the two-index bubble-expansion symbols. `U` yields a closed
/// combination, `V` a combination on an upward strand, `VPrime` on a downward
/// strand. Mixed upper indices are recursion-internal; callers normally use
/// `m = 0`.
pub fn expand_bubble(gens: &AobBarGens, kind: BubbleKind, n: usize, m: usize) -> Result<LinComb> {
    match kind {
        BubbleKind::U => expand_u(gens, n, m),
        BubbleKind::V => expand_v(gens, n, m),
        BubbleKind::VPrime => expand_vp(gens, n, m),
    }
}

fn expand_u(g: &AobBarGens, n: usize, m: usize) -> Result<LinComb> {
    if n == 0 {
        return Ok(LinComb::from_monomial(g.cw(m)));
    }
    // u(n, m) = u(n-1, m+1) - u(n-1, 0) . u(0, m)
    let a = expand_u(g, n - 1, m + 1)?;
    let b = expand_u(g, n - 1, 0)?.compose1(&LinComb::from_monomial(g.cw(m)))?;
    a.sub(&b)
}

fn expand_v(g: &AobBarGens, n: usize, m: usize) -> Result<LinComb> {
    if n == 0 {
        return LinComb::from_monomial(g.cw(m)).compose0(&ident("^"));
    }
    // v(n, m) = v(n-1, m+1) + w_{n-1+m} + sum_{k=0}^{n-2} w_{m+n-2-k} . v(k, 0)
    let mut acc = expand_v(g, n - 1, m + 1)?;
    acc = acc.add(&LinComb::from_monomial(g.strand_up(n - 1 + m)))?;
    for k in 0..n.saturating_sub(1) {
        let strand = LinComb::from_monomial(g.strand_up(m + n - 2 - k));
        acc = acc.add(&strand.compose1(&expand_v(g, k, 0)?)?)?;
    }
    Ok(acc)
}

fn expand_vp(g: &AobBarGens, n: usize, m: usize) -> Result<LinComb> {
    if n == 0 {
        return LinComb::from_monomial(g.cw(m)).compose0(&ident("v"));
    }
    // v'(n, m) = v'(n-1, m+1) - w'_{n-1+m} - sum_{k=0}^{n-2} v'(0, k) . w'_{m+n-2-k}
    let mut acc = expand_vp(g, n - 1, m + 1)?;
    acc = acc.sub(&LinComb::from_monomial(g.strand_down(n - 1 + m)))?;
    for k in 0..n.saturating_sub(1) {
        let strand = LinComb::from_monomial(g.strand_down(m + n - 2 - k));
        acc = acc.sub(&expand_vp(g, 0, k)?.compose1(&strand)?)?;
    }
    Ok(acc)
}

/// A clockwise bubble sliding left across an upward strand: right side of the
/// `s0_n` rule.
pub fn slide_up(g: &AobBarGens, n: usize) -> Result<LinComb> {
    expand_v(g, n, 0)
}

/// A clockwise bubble sliding left across a downward strand: right side of
/// the `s1_n` rule.
pub fn slide_down(g: &AobBarGens, n: usize) -> Result<LinComb> {
    expand_vp(g, n, 0)
}

/// Both sides of a Yang-Baxter rule over a 3-letter source word, built by
/// simulating the forced crossing generators.
fn yang_baxter(g: &AobBarGens, src: &str) -> (Monomial, LinComb) {
    let build = |positions: &[usize]| -> Monomial {
        let mut word = w(src);
        let mut rows = Vec::new();
        for &p in positions {
            let gen = g.crossing(word.label(p), word.label(p + 1));
            let left = word.prefix(p);
            let right = word.suffix_from(p + 2);
            let slice = Slice::new(left, gen, right);
            word = slice.target();
            rows.push(slice);
        }
        Monomial::new(w(src), rows).expect("yang-baxter rows")
    };
    (build(&[0, 1, 0]), LinComb::from_monomial(build(&[1, 0, 1])))
}

/// The one-orientation affine oriented Brauer presentation: five generators
/// and seven rules.
pub fn preset_aob() -> Result<Polygraph> {
    let g = AobBarGens::new();
    let gens = vec![g.c.clone(), g.d.clone(), g.s.clone(), g.t.clone(), g.x.clone()];
    let (yb_l, yb_r) = yang_baxter(&g, "^^^");
    let rules = vec![
        Rule::new(
            "aob1",
            "snake",
            mono("^", vec![row("", &g.c, "^"), row("^", &g.d, "")]),
            ident("^"),
        )?,
        Rule::new(
            "aob2",
            "snake",
            mono("v", vec![row("v", &g.c, ""), row("", &g.d, "v")]),
            ident("v"),
        )?,
        Rule::new(
            "aob3",
            "symmetric",
            mono("^^", vec![row("", &g.s, ""), row("", &g.s, "")]),
            ident("^^"),
        )?,
        Rule::new("aob4", "yang-baxter", yb_l, yb_r)?,
        Rule::new(
            "aob5",
            "dot-slide",
            mono("^^", vec![row("", &g.s, ""), row("^", &g.x, "")]),
            LinComb::from_monomial(mono(
                "^^",
                vec![row("", &g.x, "^"), row("", &g.s, "")],
            ))
            .add(&ident("^^"))?,
        )?,
        Rule::new(
            "aob6",
            "kink",
            mono(
                "v^",
                vec![
                    row("v^", &g.c, ""),
                    row("v", &g.s, "v"),
                    row("", &g.d, "^v"),
                    row("", &g.t, ""),
                ],
            ),
            ident("v^"),
        )?,
        Rule::new(
            "aob7",
            "kink",
            mono(
                "^v",
                vec![
                    row("", &g.t, ""),
                    row("v^", &g.c, ""),
                    row("v", &g.s, "v"),
                    row("", &g.d, "^v"),
                ],
            ),
            ident("^v"),
        )?,
    ];
    Polygraph::new("aob", gens, rules)
}

/// The two-orientation affine oriented Brauer presentation, with the dotted
/// bubble-removal and bubble-slide schemas instantiated for every dot count
/// up to `max_dots`.
pub fn preset_aobbar(max_dots: usize) -> Result<Polygraph> {
    let g = AobBarGens::new();
    let mut rules: Vec<Rule> = Vec::new();

    // Snake (zig-zag) rules.
    rules.push(Rule::new(
        "i0_1",
        "i0",
        mono("^", vec![row("", &g.c, "^"), row("^", &g.d, "")]),
        ident("^"),
    )?);
    rules.push(Rule::new(
        "i0_2",
        "i0",
        mono("v", vec![row("", &g.cb, "v"), row("v", &g.db, "")]),
        ident("v"),
    )?);
    rules.push(Rule::new(
        "i0_3",
        "i0",
        mono("v", vec![row("v", &g.c, ""), row("", &g.d, "v")]),
        ident("v"),
    )?);
    rules.push(Rule::new(
        "i0_4",
        "i0",
        mono("^", vec![row("^", &g.cb, ""), row("", &g.db, "^")]),
        ident("^"),
    )?);

    // Dot transfer across cups and caps.
    rules.push(Rule::new(
        "i1_1",
        "i1",
        mono("", vec![row("", &g.cb, ""), row("v", &g.x, "")]),
        LinComb::from_monomial(mono("", vec![row("", &g.cb, ""), row("", &g.xb, "^")])),
    )?);
    rules.push(Rule::new(
        "i1_2",
        "i1",
        mono("", vec![row("", &g.c, ""), row("", &g.x, "v")]),
        LinComb::from_monomial(mono("", vec![row("", &g.c, ""), row("^", &g.xb, "")])),
    )?);
    rules.push(Rule::new(
        "i1_3",
        "i1",
        mono("^v", vec![row("^", &g.xb, ""), row("", &g.db, "")]),
        LinComb::from_monomial(mono("^v", vec![row("", &g.x, "v"), row("", &g.db, "")])),
    )?);
    rules.push(Rule::new(
        "i1_4",
        "i1",
        mono("v^", vec![row("", &g.xb, "^"), row("", &g.d, "")]),
        LinComb::from_monomial(mono("v^", vec![row("v", &g.x, ""), row("", &g.d, "")])),
    )?);

    // Double crossings cancel.
    rules.push(Rule::new(
        "r0_1",
        "r0",
        mono("^^", vec![row("", &g.s, ""), row("", &g.s, "")]),
        ident("^^"),
    )?);
    rules.push(Rule::new(
        "r0_2",
        "r0",
        mono("v^", vec![row("", &g.tb, ""), row("", &g.t, "")]),
        ident("v^"),
    )?);
    rules.push(Rule::new(
        "r0_3",
        "r0",
        mono("^v", vec![row("", &g.t, ""), row("", &g.tb, "")]),
        ident("^v"),
    )?);
    rules.push(Rule::new(
        "r0_4",
        "r0",
        mono("vv", vec![row("", &g.sb, ""), row("", &g.sb, "")]),
        ident("vv"),
    )?);

    // Yang-Baxter rules: one per 3-letter source word.
    for (i, src) in ["^^^", "^^v", "^v^", "v^^", "vvv", "^vv", "vv^", "v^v"]
        .iter()
        .enumerate()
    {
        let (l, rh) = yang_baxter(&g, src);
        rules.push(Rule::new(&format!("r1_{}", i + 1), "r1", l, rh)?);
    }

    // Cups sliding left across a strand (4), caps sliding (4).
    let cups = [("^", &g.c), ("^", &g.cb), ("v", &g.c), ("v", &g.cb)];
    for (i, (a, cup)) in cups.iter().enumerate() {
        // lhs: strand a, cup beside it, then cross cup's left leg over a.
        let lhs_row1 = Slice::new(w(a), (*cup).clone(), Word::empty());
        let word1 = lhs_row1.target();
        let cross_l = g.crossing(word1.label(0), word1.label(1));
        let lhs = Monomial::new(
            w(a),
            vec![lhs_row1, Slice::new(Word::empty(), cross_l, word1.suffix_from(2))],
        )?;
        let rhs_row1 = Slice::new(Word::empty(), (*cup).clone(), w(a));
        let word2 = rhs_row1.target();
        let cross_r = g.crossing(word2.label(1), word2.label(2));
        let rhs = Monomial::new(
            w(a),
            vec![rhs_row1, Slice::new(word2.prefix(1), cross_r, Word::empty())],
        )?;
        rules.push(Rule::new(
            &format!("r2_{}", i + 1),
            "r2",
            lhs,
            LinComb::from_monomial(rhs),
        )?);
    }
    // Cap slides: a strand passes a cap, leftward (2) and rightward (2).
    {
        let caps: [(&str, &Arc<Gen2>, bool); 4] = [
            ("v", &g.d, true),
            ("^", &g.db, true),
            ("^", &g.d, false),
            ("v", &g.db, false),
        ];
        for (i, (q, cap, strand_on_left)) in caps.iter().enumerate() {
            let (u, wl) = (cap.src.label(0), cap.src.label(1));
            let (lhs, rhs);
            if *strand_on_left {
                // src = (q, u, w): cross (q,u), then cap takes (q', w).
                let src = Word::parse(q).unwrap().concat(&cap.src);
                let c1 = Slice::new(Word::empty(), g.crossing(src.label(0), u), Word(vec![wl]));
                let cap_row = Slice::new(c1.target().prefix(1), (*cap).clone(), Word::empty());
                lhs = Monomial::new(src.clone(), vec![c1, cap_row])?;
                let c2 = Slice::new(src.prefix(1), g.crossing(u, wl), Word::empty());
                let cap_row2 =
                    Slice::new(Word::empty(), (*cap).clone(), c2.target().suffix_from(2));
                rhs = Monomial::new(src, vec![c2, cap_row2])?;
            } else {
                // src = (u, w, q): cross (u,w), then cap takes (u', q); the
                // cap moves left, uncrossing into cap-then-crossing.
                let src = cap.src.concat(&Word::parse(q).unwrap());
                let c1 = Slice::new(Word::empty(), g.crossing(u, wl), Word(vec![src.label(2)]));
                let cap_row = Slice::new(c1.target().prefix(1), (*cap).clone(), Word::empty());
                lhs = Monomial::new(src.clone(), vec![c1, cap_row])?;
                let c2 = Slice::new(Word(vec![u]), g.crossing(wl, src.label(2)), Word::empty());
                let cap_row2 =
                    Slice::new(Word::empty(), (*cap).clone(), c2.target().suffix_from(2));
                rhs = Monomial::new(src, vec![c2, cap_row2])?;
            }
            rules.push(Rule::new(
                &format!("r2_{}", i + 5),
                "r2",
                lhs,
                LinComb::from_monomial(rhs),
            )?);
        }
    }

    // A cup or cap followed by a double crossing straightens out.
    let r3_cups = [("^", &g.c), ("^", &g.cb), ("v", &g.c), ("v", &g.cb)];
    for (i, (a, cup)) in r3_cups.iter().enumerate() {
        let row1 = Slice::new(Word::empty(), (*cup).clone(), w(a));
        let word1 = row1.target();
        let c1 = Slice::new(word1.prefix(1), g.crossing(word1.label(1), word1.label(2)), Word::empty());
        let word2 = c1.target();
        let c2 = Slice::new(Word::empty(), g.crossing(word2.label(0), word2.label(1)), word2.suffix_from(2));
        let lhs = Monomial::new(w(a), vec![row1, c1, c2])?;
        let rhs = Monomial::new(w(a), vec![Slice::new(w(a), (*cup).clone(), Word::empty())])?;
        rules.push(Rule::new(&format!("r3_{}", i + 1), "r3", lhs, LinComb::from_monomial(rhs))?);
    }
    let r3_caps = [("v", &g.d), ("v", &g.db), ("^", &g.d), ("^", &g.db)];
    for (i, (a, cap)) in r3_caps.iter().enumerate() {
        // src = (a0, a1, a2) with cap consuming positions 1-2 at the bottom.
        let src = Word::parse(a).unwrap().concat(&cap.src);
        // After the crossings [0,1] then [1,2], the word is a cyclic shift.
        let c1 = Slice::new(Word::empty(), g.crossing(src.label(0), src.label(1)), Word(vec![src.label(2)]));
        let word1 = c1.target();
        let c2 = Slice::new(word1.prefix(1), g.crossing(word1.label(1), word1.label(2)), Word::empty());
        let word2 = c2.target();
        let cap_row = Slice::new(Word::empty(), (*cap).clone(), word2.suffix_from(2));
        let lhs = Monomial::new(src.clone(), vec![c1, c2, cap_row])?;
        let rhs = Monomial::new(src, vec![Slice::new(Word::parse(a).unwrap(), (*cap).clone(), Word::empty())])?;
        rules.push(Rule::new(&format!("r3_{}", i + 5), "r3", lhs, LinComb::from_monomial(rhs))?);
    }

    // A cup or cap composed with the opposite-orientation crossing flips.
    rules.push(Rule::new(
        "r4_1",
        "r4",
        mono("", vec![row("", &g.cb, ""), row("", &g.tb, "")]),
        LinComb::from_monomial(mono("", vec![row("", &g.c, "")])),
    )?);
    rules.push(Rule::new(
        "r4_2",
        "r4",
        mono("", vec![row("", &g.c, ""), row("", &g.t, "")]),
        LinComb::from_monomial(mono("", vec![row("", &g.cb, "")])),
    )?);
    rules.push(Rule::new(
        "r4_3",
        "r4",
        mono("v^", vec![row("", &g.tb, ""), row("", &g.db, "")]),
        LinComb::from_monomial(mono("v^", vec![row("", &g.d, "")])),
    )?);
    rules.push(Rule::new(
        "r4_4",
        "r4",
        mono("^v", vec![row("", &g.t, ""), row("", &g.d, "")]),
        LinComb::from_monomial(mono("^v", vec![row("", &g.db, "")])),
    )?);

    // Curls through a same-orientation crossing vanish.
    rules.push(Rule::new(
        "r5_1",
        "r5",
        mono("^", vec![row("", &g.cb, "^"), row("v", &g.s, ""), row("", &g.d, "^")]),
        ident("^"),
    )?);
    rules.push(Rule::new(
        "r5_2",
        "r5",
        mono("v", vec![row("", &g.c, "v"), row("^", &g.sb, ""), row("", &g.db, "v")]),
        ident("v"),
    )?);

    // Dots through crossings, with correction terms.
    rules.push(Rule::new(
        "o0_1",
        "o0",
        mono("^^", vec![row("", &g.s, ""), row("^", &g.x, "")]),
        LinComb::from_monomial(mono("^^", vec![row("", &g.x, "^"), row("", &g.s, "")]))
            .add(&ident("^^"))?,
    )?);
    rules.push(Rule::new(
        "o0_2",
        "o0",
        mono("^^", vec![row("", &g.s, ""), row("", &g.x, "^")]),
        LinComb::from_monomial(mono("^^", vec![row("^", &g.x, ""), row("", &g.s, "")]))
            .sub(&ident("^^"))?,
    )?);
    rules.push(Rule::new(
        "o0_3",
        "o0",
        mono("vv", vec![row("v", &g.xb, ""), row("", &g.sb, "")]),
        LinComb::from_monomial(mono("vv", vec![row("", &g.sb, ""), row("", &g.xb, "v")]))
            .sub(&ident("vv"))?,
    )?);
    rules.push(Rule::new(
        "o0_4",
        "o0",
        mono("vv", vec![row("", &g.xb, "v"), row("", &g.sb, "")]),
        LinComb::from_monomial(mono("vv", vec![row("", &g.sb, ""), row("v", &g.xb, "")]))
            .add(&ident("vv"))?,
    )?);
    let cwccw = |first: &Arc<Gen2>, second: &Arc<Gen2>| -> Monomial {
        mono(
            &first.src.to_string(),
            vec![row("", first, ""), row("", second, "")],
        )
    };
    rules.push(Rule::new(
        "o0_5",
        "o0",
        mono("^v", vec![row("", &g.t, ""), row("v", &g.x, "")]),
        LinComb::from_monomial(mono("^v", vec![row("", &g.x, "v"), row("", &g.t, "")]))
            .sub(&LinComb::from_monomial(cwccw(&g.db, &g.cb)))?,
    )?);
    rules.push(Rule::new(
        "o0_6",
        "o0",
        mono("v^", vec![row("", &g.tb, ""), row("", &g.x, "v")]),
        LinComb::from_monomial(mono("v^", vec![row("v", &g.x, ""), row("", &g.tb, "")]))
            .add(&LinComb::from_monomial(cwccw(&g.d, &g.c)))?,
    )?);
    rules.push(Rule::new(
        "o0_7",
        "o0",
        mono("^v", vec![row("^", &g.xb, ""), row("", &g.t, "")]),
        LinComb::from_monomial(mono("^v", vec![row("", &g.t, ""), row("", &g.xb, "^")]))
            .add(&LinComb::from_monomial(cwccw(&g.db, &g.cb)))?,
    )?);
    rules.push(Rule::new(
        "o0_8",
        "o0",
        mono("v^", vec![row("", &g.xb, "^"), row("", &g.tb, "")]),
        LinComb::from_monomial(mono("v^", vec![row("", &g.tb, ""), row("^", &g.xb, "")]))
            .sub(&LinComb::from_monomial(cwccw(&g.d, &g.c)))?,
    )?);

    // Dotted counterclockwise bubbles expand into clockwise ones, and
    // clockwise bubbles slide left across strands, for each dot count.
    for n in 0..=max_dots {
        rules.push(Rule::new(
            &format!("o1_{n}"),
            "o1",
            g.ccw(n),
            expand_u(&g, n, 0)?,
        )?);
        let s0_lhs = Monomial::identity(w("^")).compose0(&g.cw(n))?;
        rules.push(Rule::new(&format!("s0_{n}"), "s0", s0_lhs, slide_up(&g, n)?)?);
        let s1_lhs = Monomial::identity(w("v")).compose0(&g.cw(n))?;
        rules.push(Rule::new(&format!("s1_{n}"), "s1", s1_lhs, slide_down(&g, n)?)?);
    }

    Polygraph::new("aobbar", AobBarGens::new().all(), rules)
}

/// A minimal system on one self-dual object: a cup, a cap, and a single rule
/// sliding a nested cup/cap pair out of its pocket.
pub fn preset_sigma_ex() -> Result<Polygraph> {
    let cup = Gen2::new("cup", "", "^^");
    let cap = Gen2::new("cap", "^^", "");
    let lhs = mono("^", vec![row("^", &cup, ""), row("^", &cap, "")]);
    let rhs = mono("^", vec![row("", &cup, "^"), row("", &cap, "^")]);
    let rule = Rule::new("slide", "slide", lhs, LinComb::from_monomial(rhs))?;
    Polygraph::new("sigma-ex", vec![cup, cap], vec![rule])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn presets_validate() {
        let aob = preset_aob().unwrap();
        assert_eq!(aob.rules.len(), 7);
        let aobbar = preset_aobbar(2).unwrap();
        assert_eq!(aobbar.rules.len(), 59);
        let sig = preset_sigma_ex().unwrap();
        assert_eq!(sig.rules.len(), 1);
    }

    #[test]
    fn expansion_base_cases() {
        let g = AobBarGens::new();
        // u(1,0) = cw1 - cw0^2
        let u1 = expand_u(&g, 1, 0).unwrap();
        assert_eq!(u1.coeff(&g.cw(1)), r(1));
        assert_eq!(u1.coeff(&g.cw(0).compose1(&g.cw(0)).unwrap()), r(-1));
        assert_eq!(u1.num_terms(), 2);
    }

    #[test]
    fn u2_expansion_matches_hand_derivation() {
        let g = AobBarGens::new();
        // u(2,0) = cw2 - 2 cw0 cw1 + cw0^3
        let u2 = expand_u(&g, 2, 0).unwrap();
        let cw0 = LinComb::from_monomial(g.cw(0));
        let expected = LinComb::from_monomial(g.cw(2))
            .sub(&cw0.compose1(&LinComb::from_monomial(g.cw(1))).unwrap().scale(&r(2)))
            .unwrap()
            .add(&cw0.compose1(&cw0).unwrap().compose1(&cw0).unwrap())
            .unwrap();
        assert_eq!(u2, expected);
    }

    #[test]
    fn slide_up_matches_frozen_instances() {
        let g = AobBarGens::new();
        let strand = LinComb::identity(w("^"));
        // slide(0) = cw0 beside the strand.
        let s0 = slide_up(&g, 0).unwrap();
        assert_eq!(s0, LinComb::from_monomial(g.cw(0)).compose0(&strand).unwrap());
        // slide(1) = cw1 beside the strand + bare strand.
        let s1 = slide_up(&g, 1).unwrap();
        let expect1 = LinComb::from_monomial(g.cw(1))
            .compose0(&strand)
            .unwrap()
            .add(&strand)
            .unwrap();
        assert_eq!(s1, expect1);
        // slide(2) = cw2 beside + 2 * one-dot strand + cw0 beside.
        let s2 = slide_up(&g, 2).unwrap();
        let expect2 = LinComb::from_monomial(g.cw(2))
            .compose0(&strand)
            .unwrap()
            .add(&LinComb::term(r(2), g.strand_up(1)))
            .unwrap()
            .add(&LinComb::from_monomial(g.cw(0)).compose0(&strand).unwrap())
            .unwrap();
        assert_eq!(s2, expect2);
        // slide(3) = cw3 beside + 3 * two-dot strand
        //          + 2 * (one-dot strand over cw0-beside) + cw1 beside + strand.
        let s3 = slide_up(&g, 3).unwrap();
        let dotted = LinComb::from_monomial(g.strand_up(1));
        let cw0_beside = LinComb::from_monomial(g.cw(0)).compose0(&strand).unwrap();
        let expect3 = LinComb::from_monomial(g.cw(3))
            .compose0(&strand)
            .unwrap()
            .add(&LinComb::term(r(3), g.strand_up(2)))
            .unwrap()
            .add(&dotted.compose1(&cw0_beside).unwrap().scale(&r(2)))
            .unwrap()
            .add(&LinComb::from_monomial(g.cw(1)).compose0(&strand).unwrap())
            .unwrap()
            .add(&strand)
            .unwrap();
        assert_eq!(s3, expect3);
    }

    #[test]
    fn slide_down_matches_frozen_instances() {
        let g = AobBarGens::new();
        let strand = LinComb::identity(w("v"));
        // slideDown(1) = cw1 beside - bare strand.
        let s1 = slide_down(&g, 1).unwrap();
        let expect1 = LinComb::from_monomial(g.cw(1))
            .compose0(&strand)
            .unwrap()
            .sub(&strand)
            .unwrap();
        assert_eq!(s1, expect1);
        // slideDown(2) = cw2 beside - 2 * one-dot strand - cw0 beside.
        let s2 = slide_down(&g, 2).unwrap();
        let expect2 = LinComb::from_monomial(g.cw(2))
            .compose0(&strand)
            .unwrap()
            .sub(&LinComb::term(r(2), g.strand_down(1)))
            .unwrap()
            .sub(&LinComb::from_monomial(g.cw(0)).compose0(&strand).unwrap())
            .unwrap();
        assert_eq!(s2, expect2);
        // slideDown(3) = cw3 beside - 3 * two-dot strand
        //             - 2 * (cw0 beside one-dot strand) - cw1 beside.
        let s3 = slide_down(&g, 3).unwrap();
        let expect3 = LinComb::from_monomial(g.cw(3))
            .compose0(&strand)
            .unwrap()
            .sub(&LinComb::term(r(3), g.strand_down(2)))
            .unwrap()
            .sub(&LinComb::from_monomial(g.cw(0))
                .compose0(&LinComb::from_monomial(g.strand_down(1)))
                .unwrap()
                .scale(&r(2)))
            .unwrap()
            .sub(&LinComb::from_monomial(g.cw(1)).compose0(&strand).unwrap())
            .unwrap();
        assert_eq!(s3, expect3);
    }

    #[test]
    fn bubbles_commute() {
        let g = AobBarGens::new();
        let a = g.cw(1).compose1(&g.ccw(2)).unwrap();
        let b = g.ccw(2).compose1(&g.cw(1)).unwrap();
        let c = g.cw(1).compose0(&g.ccw(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
