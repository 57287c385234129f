use crate::error::{LinrewError, Result};
use crate::word::Word;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// Maximum number of representatives explored when enumerating an exchange
/// class; exceeding it is a hard error rather than a silent truncation.
pub const EXCHANGE_CLASS_CAP: usize = 500_000;

/// A generating 2-cell: a named box with a source word (upper boundary) and a
/// target word (lower boundary).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Gen2 {
    pub id: String,
    pub src: Word,
    pub tgt: Word,
}

impl Gen2 {
    pub fn new(id: &str, src: &str, tgt: &str) -> Arc<Self> {
        Arc::new(Gen2 {
            id: id.to_string(),
            src: Word::parse(src).expect("valid generator source"),
            tgt: Word::parse(tgt).expect("valid generator target"),
        })
    }

    /// 1 -> 1 cell (a dot-like decoration on a strand).
    pub fn is_dot(&self) -> bool {
        self.src.len() == 1 && self.tgt.len() == 1
    }

    /// 0 -> 2 cell (a cup / minimum).
    pub fn is_cup(&self) -> bool {
        self.src.is_empty() && self.tgt.len() == 2
    }

    /// 2 -> 0 cell (a cap / maximum).
    pub fn is_cap(&self) -> bool {
        self.src.len() == 2 && self.tgt.is_empty()
    }

    /// 2 -> 2 cell (a crossing).
    pub fn is_crossing(&self) -> bool {
        self.src.len() == 2 && self.tgt.len() == 2
    }
}

/// One horizontal layer of a diagram: a single generator whiskered by identity
/// strands on the left and right.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Slice {
    pub left: Word,
    pub gen: Arc<Gen2>,
    pub right: Word,
}

impl Slice {
    pub fn new(left: Word, gen: Arc<Gen2>, right: Word) -> Self {
        Slice { left, gen, right }
    }

    /// Upper boundary of the slice.
    pub fn source(&self) -> Word {
        self.left.concat(&self.gen.src).concat(&self.right)
    }

    /// Lower boundary of the slice.
    pub fn target(&self) -> Word {
        self.left.concat(&self.gen.tgt).concat(&self.right)
    }

    /// Sorting key used by the canonical form: horizontal position first, then
    /// generator name.
    fn key(&self) -> (usize, &str) {
        (self.left.len(), self.gen.id.as_str())
    }
}

/// Attempt to exchange two vertically adjacent slices (`a` above `b`).
/// Returns every valid reordering `[b', a']`; there can be zero, one, or (in
/// the degenerate zero-width case) two.
pub fn try_swap(a: &Slice, b: &Slice) -> Vec<(Slice, Slice)> {
    let a1 = a.left.len();
    let w_as = a.gen.src.len();
    let w_at = a.gen.tgt.len();
    let a2 = b.left.len();
    let w_bs = b.gen.src.len();
    let w_before = a.source();

    let mut out = Vec::new();
    let push = |b_left: usize, a_left: usize, out: &mut Vec<(Slice, Slice)>| {
        let b2 = Slice::new(
            w_before.prefix(b_left),
            b.gen.clone(),
            w_before.suffix_from(b_left + w_bs),
        );
        debug_assert_eq!(b2.source(), w_before);
        let w_mid = b2.target();
        let a2s = Slice::new(
            w_mid.prefix(a_left),
            a.gen.clone(),
            w_mid.suffix_from(a_left + w_as),
        );
        debug_assert_eq!(a2s.target(), b.target());
        out.push((b2, a2s));
    };

    // `b` acts strictly left of `a`'s source interval.
    if a2 + w_bs <= a1 {
        push(a2, a1 + b.gen.tgt.len() - w_bs, &mut out);
    }
    // `b` acts strictly right of `a`'s target interval.
    if a2 >= a1 + w_at {
        push(a2 - w_at + w_as, a1, &mut out);
    }
    out.dedup();
    out
}

fn state_key(slices: &[Slice]) -> Vec<(usize, String)> {
    slices.iter().map(|s| (s.left.len(), s.gen.id.clone())).collect()
}

/// Enumerate every representative of the exchange class of a slice sequence.
pub fn exchange_class(slices: &[Slice]) -> Result<Vec<Vec<Slice>>> {
    let mut seen: HashSet<Vec<(usize, String)>> = HashSet::new();
    let mut queue: VecDeque<Vec<Slice>> = VecDeque::new();
    let mut out: Vec<Vec<Slice>> = Vec::new();
    seen.insert(state_key(slices));
    queue.push_back(slices.to_vec());
    while let Some(cur) = queue.pop_front() {
        if cur.len() >= 2 {
            for i in 0..cur.len() - 1 {
                for (b2, a2) in try_swap(&cur[i], &cur[i + 1]) {
                    let mut next = cur.clone();
                    next[i] = b2;
                    next[i + 1] = a2;
                    let key = state_key(&next);
                    if seen.insert(key) {
                        if seen.len() > EXCHANGE_CLASS_CAP {
                            return Err(LinrewError::Other(
                                "exchange class exceeds enumeration cap".into(),
                            ));
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        out.push(cur);
    }
    Ok(out)
}

/// Canonical representative of an exchange class: repeatedly emit the least
/// available head slice (leftmost position, then generator name) over all
/// representatives, then recurse on the tails.
fn canonical_from_class(mut members: Vec<Vec<Slice>>) -> Vec<Slice> {
    let mut out = Vec::new();
    loop {
        if members.is_empty() || members[0].is_empty() {
            return out;
        }
        let min_key = members
            .iter()
            .map(|m| m[0].key())
            .min()
            .map(|(l, g)| (l, g.to_string()))
            .unwrap();
        let mut head: Option<Slice> = None;
        let mut tails: Vec<Vec<Slice>> = Vec::new();
        let mut seen: HashSet<Vec<(usize, String)>> = HashSet::new();
        for m in members {
            let (l, g) = m[0].key();
            if (l, g.to_string()) == min_key {
                if head.is_none() {
                    head = Some(m[0].clone());
                }
                let tail = m[1..].to_vec();
                if seen.insert(state_key(&tail)) {
                    tails.push(tail);
                }
            }
        }
        out.push(head.unwrap());
        members = tails;
    }
}

pub fn canonicalize_slices(slices: &[Slice]) -> Result<Vec<Slice>> {
    Ok(canonical_from_class(exchange_class(slices)?))
}

/// A monomial 2-cell: a vertical stack of slices read top to bottom, stored in
/// canonical form so that structural equality is equality modulo exchange.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    src: Word,
    tgt: Word,
    slices: Vec<Slice>,
}

impl Monomial {
    /// Identity 2-cell on a word.
    pub fn identity(w: Word) -> Self {
        Monomial { src: w.clone(), tgt: w, slices: Vec::new() }
    }

    /// Build a monomial from a slice stack, validating that the boundaries
    /// chain and putting it in canonical form.
    pub fn new(src: Word, slices: Vec<Slice>) -> Result<Self> {
        let mut cur = src.clone();
        for s in &slices {
            let ssrc = s.source();
            if ssrc != cur {
                return Err(LinrewError::BoundaryMismatch {
                    expected: cur.to_string(),
                    found: ssrc.to_string(),
                });
            }
            cur = s.target();
        }
        let slices = canonicalize_slices(&slices)?;
        Ok(Monomial { src, tgt: cur, slices })
    }

    /// A single generator with no whiskers.
    pub fn generator(gen: Arc<Gen2>) -> Self {
        let src = gen.src.clone();
        Monomial {
            src: src.clone(),
            tgt: gen.tgt.clone(),
            slices: vec![Slice::new(Word::empty(), gen, Word::empty())],
        }
    }

    pub fn src(&self) -> &Word {
        &self.src
    }

    pub fn tgt(&self) -> &Word {
        &self.tgt
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_identity(&self) -> bool {
        self.slices.is_empty()
    }

    /// Vertical composite: `self` on top of `other`.
    pub fn compose1(&self, other: &Monomial) -> Result<Monomial> {
        if self.tgt != other.src {
            return Err(LinrewError::BoundaryMismatch {
                expected: self.tgt.to_string(),
                found: other.src.to_string(),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Monomial::new(self.src.clone(), slices)
    }

    /// Horizontal composite: `self` to the left of `other`.
    pub fn compose0(&self, other: &Monomial) -> Result<Monomial> {
        let mut slices: Vec<Slice> = self
            .slices
            .iter()
            .map(|s| Slice::new(s.left.clone(), s.gen.clone(), s.right.concat(&other.src)))
            .collect();
        slices.extend(other.slices.iter().map(|s| {
            Slice::new(self.tgt.concat(&s.left), s.gen.clone(), s.right.clone())
        }));
        Monomial::new(self.src.concat(&other.src), slices)
    }

    /// Whisker by identity words on both sides.
    pub fn whisker(&self, left: &Word, right: &Word) -> Result<Monomial> {
        let slices = self
            .slices
            .iter()
            .map(|s| Slice::new(left.concat(&s.left), s.gen.clone(), s.right.concat(right)))
            .collect();
        Monomial::new(left.concat(&self.src).concat(right), slices)
    }

    /// Every representative of this monomial's exchange class.
    pub fn class(&self) -> Result<Vec<Vec<Slice>>> {
        exchange_class(&self.slices)
    }

    /// All ways `pattern` occurs inside `self` as a whiskered contiguous block
    /// of some exchange representative, each returned as the surrounding
    /// context.
    pub fn factorizations(&self, pattern: &Monomial) -> Result<Vec<Context>> {
        let reps = if pattern.slices.is_empty() {
            vec![self.slices.clone()]
        } else {
            self.class()?
        };
        factorizations_with_reps(&self.src, &reps, pattern)
    }

    /// Total number of slices (the diagram's height).
    pub fn height(&self) -> usize {
        self.slices.len()
    }
}

/// `factorizations` over a precomputed set of exchange representatives, so
/// the class enumeration can be shared across patterns.
pub fn factorizations_with_reps(
    src: &Word,
    reps: &[Vec<Slice>],
    pattern: &Monomial,
) -> Result<Vec<Context>> {
    let k = pattern.slices.len();
    let mut found: BTreeSet<Context> = BTreeSet::new();
    {
        for rep in reps {
            if rep.len() < k {
                continue;
            }
            // Boundary words between consecutive rows of this representative.
            let mut bounds: Vec<Word> = Vec::with_capacity(rep.len() + 1);
            bounds.push(src.clone());
            for s in rep {
                bounds.push(s.target());
            }
            for i in 0..=rep.len() - k {
                let window = &rep[i..i + k];
                let win_src = &bounds[i];
                let win_tgt = &bounds[i + k];
                let max_a = window.iter().map(|s| s.left.len()).min().unwrap_or(win_src.len());
                let max_b = window.iter().map(|s| s.right.len()).min().unwrap_or(win_src.len());
                for a_len in 0..=max_a {
                    for b_len in 0..=max_b {
                        if win_src.len() < a_len + b_len + pattern.src.len()
                            || win_tgt.len() < a_len + b_len + pattern.tgt.len()
                        {
                            continue;
                        }
                        if win_src.sub(a_len, win_src.len() - b_len) != pattern.src
                            || win_tgt.sub(a_len, win_tgt.len() - b_len) != pattern.tgt
                        {
                            continue;
                        }
                        let stripped: Vec<Slice> = window
                            .iter()
                            .map(|s| {
                                Slice::new(
                                    s.left.suffix_from(a_len),
                                    s.gen.clone(),
                                    s.right.prefix(s.right.len() - b_len),
                                )
                            })
                            .collect();
                        let stripped =
                            match Monomial::new(pattern.src.clone(), stripped) {
                                Ok(m) => m,
                                Err(_) => continue,
                            };
                        if &stripped != pattern {
                            continue;
                        }
                        let m1 = Monomial::new(src.clone(), rep[..i].to_vec())?;
                        let m4 = Monomial::new(win_tgt.clone(), rep[i + k..].to_vec())?;
                        found.insert(Context {
                            m1,
                            m2: win_src.prefix(a_len),
                            m3: win_src.suffix_from(win_src.len() - b_len),
                            m4,
                            hole_src: pattern.src.clone(),
                            hole_tgt: pattern.tgt.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order: height, then boundaries, then the canonical
/// slice sequence.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.slices.len(), &self.src, &self.tgt, &self.slices).cmp(&(
            other.slices.len(),
            &other.src,
            &other.tgt,
            &other.slices,
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slices.is_empty() {
            return write!(f, "1_{{{}}}", self.src);
        }
        let parts: Vec<String> = self
            .slices
            .iter()
            .map(|s| format!("({}|{}|{})", s.left, s.gen.id, s.right))
            .collect();
        write!(f, "[{} -> {}: {}]", self.src, self.tgt, parts.join(" "))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Monomial", 3)?;
        st.serialize_field("source", &self.src)?;
        st.serialize_field("target", &self.tgt)?;
        let slices: Vec<serde_json::Value> = self
            .slices
            .iter()
            .map(|s| {
                serde_json::json!({
                    "left": s.left.to_string(),
                    "gen": s.gen.id,
                    "right": s.right.to_string(),
                })
            })
            .collect();
        st.serialize_field("slices", &slices)?;
        st.end()
    }
}

/// A one-hole context: `m1` above, whiskers `m2`/`m3` beside the hole, `m4`
/// below.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Context {
    pub m1: Monomial,
    pub m2: Word,
    pub m3: Word,
    pub m4: Monomial,
    pub hole_src: Word,
    pub hole_tgt: Word,
}

impl Context {
    /// Fill the hole with a monomial of matching boundary.
    pub fn plug(&self, m: &Monomial) -> Result<Monomial> {
        if m.src() != &self.hole_src || m.tgt() != &self.hole_tgt {
            return Err(LinrewError::BoundaryMismatch {
                expected: format!("{} -> {}", self.hole_src, self.hole_tgt),
                found: format!("{} -> {}", m.src(), m.tgt()),
            });
        }
        let mid = m.whisker(&self.m2, &self.m3)?;
        self.m1.compose1(&mid)?.compose1(&self.m4)
    }

    /// Identity context around a boundary profile.
    pub fn identity(src: Word, tgt: Word) -> Self {
        Context {
            m1: Monomial::identity(src.clone()),
            m2: Word::empty(),
            m3: Word::empty(),
            m4: Monomial::identity(tgt.clone()),
            hole_src: src,
            hole_tgt: tgt,
        }
    }
}
