//! Combinatorial basis for hom-spaces: normally ordered dotted oriented
//! Brauer diagrams with clockwise leftmost bubbles, an enumeration oracle
//! independent of the rewrite engine, and a rank comparison between the
//! engine's quasi-reduced span and the oracle count.

use crate::diagram::Monomial;
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::polygraph::Polygraph;
use crate::rewrite::{Engine, NormalizationStatus};
use crate::wiring::Wiring;
use crate::word::Word;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A hom-space window: boundary words plus budgets on dots and bubbles.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerProfile {
    pub source: Word,
    pub target: Word,
    #[serde(rename = "dotBudget")]
    pub dot_budget: usize,
    #[serde(rename = "bubbleBudget")]
    pub bubble_budget: usize,
}

/// A boundary point of a diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum BoundaryPoint {
    Top(usize),
    Bottom(usize),
}

/// A normally ordered diagram, encoded combinatorially: an oriented matching
/// of the boundary points, a dot count per matched strand, and a sorted
/// multiset of per-bubble dot counts. All bubbles are clockwise and leftmost;
/// dots sit adjacent to the boundary end of their segment.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct NormallyOrderedDiagram {
    pub matching: Vec<(BoundaryPoint, BoundaryPoint)>,
    #[serde(rename = "strandDots")]
    pub strand_dots: Vec<usize>,
    pub bubbles: Vec<usize>,
}

impl NormallyOrderedDiagram {
    pub fn total_dots(&self) -> usize {
        self.strand_dots.iter().sum::<usize>() + self.bubbles.iter().sum::<usize>()
    }
}

/// All oriented matchings of the profile's boundary points: a strand joins a
/// top point to a bottom point of equal label, a cap joins two top points of
/// opposite labels, a cup joins two bottom points of opposite labels.
fn matchings(p: &BrauerProfile) -> Vec<Vec<(BoundaryPoint, BoundaryPoint)>> {
    use BoundaryPoint::*;
    let n = p.source.len();
    let m = p.target.len();
    let total = n + m;
    let label = |pt: BoundaryPoint| match pt {
        Top(i) => p.source.label(i),
        Bottom(i) => p.target.label(i),
    };
    let point = |k: usize| if k < n { Top(k) } else { Bottom(k - n) };
    let compatible = |a: BoundaryPoint, b: BoundaryPoint| match (a, b) {
        (Top(_), Bottom(_)) | (Bottom(_), Top(_)) => label(a) == label(b),
        _ => label(a) != label(b),
    };
    let mut out = Vec::new();
    let mut used = vec![false; total];
    let mut current: Vec<(BoundaryPoint, BoundaryPoint)> = Vec::new();
    fn rec(
        k: usize,
        total: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<(BoundaryPoint, BoundaryPoint)>,
        out: &mut Vec<Vec<(BoundaryPoint, BoundaryPoint)>>,
        point: &dyn Fn(usize) -> BoundaryPoint,
        compatible: &dyn Fn(BoundaryPoint, BoundaryPoint) -> bool,
    ) {
        let first = (k..total).find(|&i| !used[i]);
        let first = match first {
            None => {
                out.push(current.clone());
                return;
            }
            Some(f) => f,
        };
        used[first] = true;
        for j in first + 1..total {
            if used[j] || !compatible(point(first), point(j)) {
                continue;
            }
            used[j] = true;
            current.push((point(first), point(j)));
            rec(first + 1, total, used, current, out, point, compatible);
            current.pop();
            used[j] = false;
        }
        used[first] = false;
    }
    rec(0, total, &mut used, &mut current, &mut out, &point, &compatible);
    out
}

/// Enumerate all normally ordered diagrams within the profile's budgets:
/// every matching, every dot distribution with total dots within the dot
/// budget, and every bubble multiset of size within the bubble budget.
pub fn enumerate_basis(p: &BrauerProfile) -> Vec<NormallyOrderedDiagram> {
    let mut out = Vec::new();
    for matching in matchings(p) {
        let strands = matching.len();
        // Distribute dots among strands and bubbles.
        let mut dist: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..strands {
            let mut next = Vec::new();
            for d in &dist {
                let used: usize = d.iter().sum();
                for extra in 0..=(p.dot_budget - used) {
                    let mut dd = d.clone();
                    dd.push(extra);
                    next.push(dd);
                }
            }
            dist = next;
        }
        for strand_dots in dist {
            let used: usize = strand_dots.iter().sum();
            let remaining = p.dot_budget - used;
            // Bubble multisets: non-increasing dot count sequences.
            let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
            while let Some(b) = stack.pop() {
                out.push(NormallyOrderedDiagram {
                    matching: matching.clone(),
                    strand_dots: strand_dots.clone(),
                    bubbles: b.clone(),
                });
                if b.len() < p.bubble_budget {
                    let btotal: usize = b.iter().sum();
                    let cap = b.last().copied().unwrap_or(remaining);
                    for d in 0..=cap.min(remaining - btotal) {
                        let mut bb = b.clone();
                        bb.push(d);
                        stack.push(bb);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Number of dot cells in a monomial.
pub fn dot_count(m: &Monomial) -> usize {
    m.slices().iter().filter(|s| s.gen.is_dot()).count()
}

/// Number of closed components (bubbles) of a monomial.
pub fn bubble_count(m: &Monomial) -> usize {
    let mut w = Wiring::of(m);
    let n = w.wires.len();
    let mut roots = BTreeSet::new();
    for wid in 0..n {
        if w.wire_is_closed(wid) {
            roots.insert(w.root(wid));
        }
    }
    roots.len()
}

/// Whether every bubble of the monomial sits in the leftmost region: no open
/// strand lies to the left of a closed cell at its levels.
fn bubbles_leftmost(m: &Monomial) -> bool {
    let mut w = Wiring::of(m);
    for (row, slice) in m.slices().iter().enumerate() {
        if !w.row_is_closed(row) {
            continue;
        }
        for level in [row, row + 1] {
            let ids = w.levels[level].clone();
            for &wid in ids.iter().take(slice.left.len()) {
                if !w.wire_is_closed(wid) {
                    return false;
                }
            }
        }
    }
    true
}

/// A monomial is normally ordered when it is quasi-reduced and all of its
/// bubbles are leftmost.
pub fn is_normally_ordered(engine: &Engine, m: &Monomial) -> Result<bool> {
    Ok(engine.monomial_is_quasi_reduced(m)? && bubbles_leftmost(m))
}

/// All monomials with the given boundary, at most `span_bound` slices, and
/// dot/bubble counts within the profile's budgets.
pub fn enumerate_span(
    p: &Polygraph,
    profile: &BrauerProfile,
    span_bound: usize,
) -> Result<Vec<Monomial>> {
    let mut out: BTreeSet<Monomial> = BTreeSet::new();
    // Breadth-first, deduplicating by canonical form at every height so
    // exchange-equal construction orders are explored once.
    let mut level: BTreeSet<Monomial> = BTreeSet::new();
    level.insert(Monomial::identity(profile.source.clone()));
    for h in 0..=span_bound {
        let remaining = span_bound - h;
        let mut next: BTreeSet<Monomial> = BTreeSet::new();
        for m in &level {
            let cur = m.tgt().clone();
            if cur == profile.target
                && dot_count(m) <= profile.dot_budget
                && bubble_count(m) <= profile.bubble_budget
            {
                out.insert(m.clone());
            }
            if remaining == 0 {
                continue;
            }
            // Completed bubbles never reopen; prune early.
            if bubble_count(m) > profile.bubble_budget {
                continue;
            }
            let dots = dot_count(m);
            for g in &p.generators {
                let is_dot = g.is_dot();
                if is_dot && dots >= profile.dot_budget {
                    continue;
                }
                if g.src.len() > cur.len() {
                    continue;
                }
                // Prune: the word must be able to come back to the target.
                let next_len = cur.len() + g.tgt.len() - g.src.len();
                let diff = next_len.abs_diff(profile.target.len());
                if diff > 2 * (remaining - 1) {
                    continue;
                }
                for a in 0..=cur.len() - g.src.len() {
                    if cur.sub(a, a + g.src.len()) != g.src {
                        continue;
                    }
                    let mut rows = m.slices().to_vec();
                    rows.push(crate::diagram::Slice::new(
                        cur.prefix(a),
                        g.clone(),
                        cur.suffix_from(a + g.src.len()),
                    ));
                    if let Ok(n) = Monomial::new(profile.source.clone(), rows) {
                        next.insert(n);
                    }
                }
            }
        }
        level = next;
    }
    Ok(out.into_iter().collect())
}

/// Canonical representative of a monomial's orbit under the dot-transfer
/// rules (family "i1"), applied in both directions: the least monomial of
/// the orbit. Quasi-reduced forms are unique only up to these moves.
pub fn dot_transfer_orbit_min(engine: &Engine, m: &Monomial) -> Result<Monomial> {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m.clone());
    queue.push_back(m.clone());
    while let Some(cur) = queue.pop_front() {
        for rule in &engine.polygraph.rules {
            if rule.family != "i1" {
                continue;
            }
            let monos: Vec<&Monomial> = rule.rhs.monomials().collect();
            if monos.len() != 1 {
                continue;
            }
            let rhs_m = monos[0];
            for ctx in cur.factorizations(&rule.lhs)? {
                let next = ctx.plug(rhs_m)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            for ctx in cur.factorizations(rhs_m)? {
                let next = ctx.plug(&rule.lhs)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().next().expect("orbit nonempty"))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    #[serde(rename = "oracleCount")]
    pub oracle_count: usize,
    #[serde(rename = "engineRank")]
    pub engine_rank: usize,
    #[serde(rename = "spanSize")]
    pub span_size: usize,
    #[serde(rename = "budgetExhausted")]
    pub budget_exhausted: usize,
    pub matches: bool,
}

/// Compare the rank of the engine's quasi-reduced span against the oracle
/// count, projecting quasi-reduced terms onto the profile's budget window
/// and identifying terms up to dot-transfer moves.
pub fn compare_dimensions(
    engine: &Engine,
    profile: &BrauerProfile,
    span_bound: usize,
    budget: usize,
) -> Result<DimensionReport> {
    let oracle_count = enumerate_basis(profile).len();
    let span = enumerate_span(&engine.polygraph, profile, span_bound)?;
    let mut budget_exhausted = 0usize;
    let mut vectors: Vec<BTreeMap<Monomial, BigRational>> = Vec::new();
    let mut key_cache: BTreeMap<Monomial, Option<Monomial>> = BTreeMap::new();
    for m in &span {
        let nr = engine.quasi_reduce(&LinComb::from_monomial(m.clone()), budget)?;
        if nr.status == NormalizationStatus::BudgetExhausted {
            budget_exhausted += 1;
            continue;
        }
        let mut vec: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (mono, coeff) in nr.result.terms() {
            let key = match key_cache.get(mono) {
                Some(k) => k.clone(),
                None => {
                    let k = if dot_count(mono) <= profile.dot_budget
                        && bubble_count(mono) <= profile.bubble_budget
                    {
                        Some(dot_transfer_orbit_min(engine, mono)?)
                    } else {
                        None
                    };
                    key_cache.insert(mono.clone(), k.clone());
                    k
                }
            };
            if let Some(key) = key {
                let entry = vec.entry(key).or_insert_with(BigRational::zero);
                *entry += coeff.clone();
                if entry.is_zero() {
                    // keep the map clean
                }
            }
        }
        vec.retain(|_, c| !c.is_zero());
        if !vec.is_empty() {
            vectors.push(vec);
        }
    }
    let engine_rank = rank(vectors);
    Ok(DimensionReport {
        oracle_count,
        engine_rank,
        span_size: span.len(),
        budget_exhausted,
        matches: engine_rank == oracle_count,
    })
}

/// Rank of a set of sparse vectors over the rationals, by Gaussian
/// elimination with exact arithmetic.
fn rank(mut vectors: Vec<BTreeMap<Monomial, BigRational>>) -> usize {
    let mut pivots: Vec<(Monomial, BTreeMap<Monomial, BigRational>)> = Vec::new();
    for v in vectors.iter_mut() {
        let mut w = v.clone();
        loop {
            let lead = match w.keys().next().cloned() {
                Some(l) => l,
                None => break,
            };
            if let Some((_, pivot)) = pivots.iter().find(|(p, _)| *p == lead) {
                let factor = w[&lead].clone() / pivot[&lead].clone();
                for (k, c) in pivot {
                    let e = w.entry(k.clone()).or_insert_with(BigRational::zero);
                    *e -= &factor * c;
                }
                w.retain(|_, c| !c.is_zero());
            } else {
                pivots.push((lead, w));
                break;
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{preset_aobbar, AobBarGens};
    use std::sync::Arc;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn profile(src: &str, tgt: &str, dots: usize, bubbles: usize) -> BrauerProfile {
        BrauerProfile {
            source: w(src),
            target: w(tgt),
            dot_budget: dots,
            bubble_budget: bubbles,
        }
    }

    #[test]
    fn oracle_counts() {
        // Closed diagrams with at most 2 dots and exactly 1 bubble: the bubble
        // carries 0, 1, or 2 dots.
        let p = profile("", "", 2, 1);
        let with_one_bubble: Vec<_> = enumerate_basis(&p)
            .into_iter()
            .filter(|d| d.bubbles.len() == 1)
            .collect();
        assert_eq!(with_one_bubble.len(), 3);
        // A single through-strand with at most k dots and no bubbles.
        for k in 0..4 {
            let p = profile("^", "^", k, 0);
            assert_eq!(enumerate_basis(&p).len(), k + 1);
        }
        // Orientation mismatch: no diagram at all.
        let p = profile("^", "v", 3, 3);
        assert!(enumerate_basis(&p).is_empty());
    }

    #[test]
    fn oracle_window_counts() {
        assert_eq!(enumerate_basis(&profile("^", "^", 2, 1)).len(), 9);
        assert_eq!(enumerate_basis(&profile("v", "v", 2, 1)).len(), 9);
        assert_eq!(enumerate_basis(&profile("^v", "", 2, 1)).len(), 9);
        assert_eq!(enumerate_basis(&profile("", "", 2, 1)).len(), 4);
    }

    #[test]
    fn normally_ordered_recognition() {
        let engine = Engine::new(Arc::new(preset_aobbar(2).unwrap()));
        let g = AobBarGens::new();
        // A clockwise bubble with 2 dots is normally ordered.
        assert!(is_normally_ordered(&engine, &g.cw(2)).unwrap());
        // A counterclockwise bubble is not (it rewrites).
        assert!(!is_normally_ordered(&engine, &g.ccw(0)).unwrap());
        // A bubble to the right of a strand is not leftmost... but that
        // monomial is not quasi-reduced either; a strand beside a bubble with
        // the bubble on the left is normally ordered.
        let left = g.cw(0).compose0(&Monomial::identity(w("^"))).unwrap();
        assert!(is_normally_ordered(&engine, &left).unwrap());
        let right = Monomial::identity(w("^")).compose0(&g.cw(0)).unwrap();
        assert!(!is_normally_ordered(&engine, &right).unwrap());
        // Identities are normally ordered.
        assert!(is_normally_ordered(&engine, &Monomial::identity(w("^v"))).unwrap());
    }

    #[test]
    fn small_dimension_comparisons() {
        let engine = Engine::new(Arc::new(preset_aobbar(2).unwrap()));
        // One strand, at most 1 dot, no bubbles, short span: x^0 and x^1.
        let p = profile("^", "^", 1, 0);
        let report = compare_dimensions(&engine, &p, 3, 10_000).unwrap();
        assert_eq!(report.oracle_count, 2);
        assert_eq!(report.engine_rank, 2, "report: {report:?}");
        // Closed diagrams, no dots, at most one bubble: empty and one bubble.
        let p = profile("", "", 0, 1);
        let report = compare_dimensions(&engine, &p, 4, 10_000).unwrap();
        assert_eq!(report.oracle_count, 2);
        assert_eq!(report.engine_rank, 2, "report: {report:?}");
    }
}
