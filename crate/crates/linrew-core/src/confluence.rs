//! Branchings and confluence: enumeration and classification of critical
//! branchings, bounded joinability search, level labelings, decreasingness
//! checking, and the letter-measure used to certify decreasing diagrams.

use crate::diagram::{Context, Monomial, Slice};
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::rewrite::{Engine, RewriteStep};
use crate::word::{StrandLabel, Word};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Two rewriting sequences out of a common source.
#[derive(Clone, Debug, Serialize)]
pub struct Branching {
    pub source: LinComb,
    pub left: Vec<RewriteStep>,
    pub right: Vec<RewriteStep>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum BranchClass {
    Aspherical,
    Peiffer,
    Additive,
    Overlapping,
}

/// A minimal genuine overlap of two rules.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalBranching {
    pub overlap: Monomial,
    #[serde(rename = "leftRule")]
    pub left_rule: String,
    #[serde(rename = "rightRule")]
    pub right_rule: String,
    #[serde(rename = "leftContext")]
    pub left_context: Context,
    #[serde(rename = "rightContext")]
    pub right_context: Context,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum JoinStatus {
    Joined,
    NotJoinedWithinBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct JoinResult {
    pub status: JoinStatus,
    #[serde(rename = "witnessLeft")]
    pub witness_left: Vec<RewriteStep>,
    #[serde(rename = "witnessRight")]
    pub witness_right: Vec<RewriteStep>,
    pub meet: Option<LinComb>,
    pub depth_used: usize,
}

// ---------------------------------------------------------------------------
// Local branchings and classification
// ---------------------------------------------------------------------------

/// All ordered pairs of distinct single steps out of a combination.
pub fn local_branchings(engine: &Engine, c: &LinComb) -> Result<Vec<Branching>> {
    let steps = engine.find_steps(c)?;
    // Identify steps by (rule, target); different context representations of
    // the same occurrence produce the same step.
    let mut seen: BTreeSet<(String, LinComb)> = BTreeSet::new();
    let mut uniq: Vec<RewriteStep> = Vec::new();
    for s in steps {
        if seen.insert((s.rule.clone(), s.target.clone())) {
            uniq.push(s);
        }
    }
    let mut out = Vec::new();
    for i in 0..uniq.len() {
        for j in i + 1..uniq.len() {
            out.push(Branching {
                source: c.clone(),
                left: vec![uniq[i].clone()],
                right: vec![uniq[j].clone()],
            });
        }
    }
    Ok(out)
}

/// Classify a single-step local branching.
pub fn classify(engine: &Engine, b: &Branching) -> Result<BranchClass> {
    let (l, r) = match (b.left.first(), b.right.first()) {
        (Some(l), Some(r)) => (l, r),
        _ => return Ok(BranchClass::Aspherical),
    };
    if l.rule == r.rule && l.target == r.target {
        return Ok(BranchClass::Aspherical);
    }
    let lhs_l = &engine
        .polygraph
        .rule(&l.rule)
        .expect("rule of step")
        .lhs
        .clone();
    let lhs_r = &engine
        .polygraph
        .rule(&r.rule)
        .expect("rule of step")
        .lhs
        .clone();
    let m_l = l.context.plug(lhs_l)?;
    let m_r = r.context.plug(lhs_r)?;
    if m_l != m_r {
        return Ok(BranchClass::Additive);
    }
    if is_peiffer_pair(engine, &m_l, &l.rule, &monomial_step_target(engine, &m_l, l)?,
                       &r.rule, &monomial_step_target(engine, &m_r, r)?)? {
        return Ok(BranchClass::Peiffer);
    }
    Ok(BranchClass::Overlapping)
}

/// The step's effect restricted to the matched monomial with coefficient 1.
fn monomial_step_target(engine: &Engine, _m: &Monomial, s: &RewriteStep) -> Result<LinComb> {
    let rule = engine.polygraph.rule(&s.rule).expect("rule of step");
    rule.rhs.plug_into(&s.context)
}

/// A pair of steps on the same monomial is independent (Peiffer) when one
/// redex embeds entirely inside the other's upper or lower context, inducing
/// the same rewriting result.
fn is_peiffer_pair(
    engine: &Engine,
    source: &Monomial,
    rule_a: &str,
    target_a: &LinComb,
    rule_b: &str,
    target_b: &LinComb,
) -> Result<bool> {
    if peiffer_direction(engine, source, rule_a, target_a, rule_b, target_b)? {
        return Ok(true);
    }
    peiffer_direction(engine, source, rule_b, target_b, rule_a, target_a)
}

fn peiffer_direction(
    engine: &Engine,
    source: &Monomial,
    outer_rule: &str,
    outer_target: &LinComb,
    inner_rule: &str,
    inner_target: &LinComb,
) -> Result<bool> {
    let outer = engine.polygraph.rule(outer_rule).expect("rule");
    let inner = engine.polygraph.rule(inner_rule).expect("rule");
    for c1 in source.factorizations(&outer.lhs)? {
        if &outer.rhs.plug_into(&c1)? != outer_target {
            continue;
        }
        let hole = LinComb::from_monomial(outer.lhs.whisker(&c1.m2, &c1.m3)?);
        // Inner redex above the outer one.
        for d in c1.m1.factorizations(&inner.lhs)? {
            let top = inner.rhs.plug_into(&d)?;
            let full = top
                .compose1(&hole)?
                .compose1(&LinComb::from_monomial(c1.m4.clone()))?;
            if &full == inner_target {
                return Ok(true);
            }
        }
        // Inner redex below the outer one.
        for d in c1.m4.factorizations(&inner.lhs)? {
            let bottom = inner.rhs.plug_into(&d)?;
            let full = LinComb::from_monomial(c1.m1.clone())
                .compose1(&hole)?
                .compose1(&bottom)?;
            if &full == inner_target {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Candidate generation for critical branchings
// ---------------------------------------------------------------------------

/// A strand token of a merged boundary word during superposition: its label
/// and which of the two diagrams own it (bit 1 / bit 2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Tok {
    label: StrandLabel,
    own: u8,
}

fn word_of(toks: &[Tok]) -> Word {
    Word(toks.iter().map(|t| t.label).collect())
}

/// Apply (downward) or undo (upward) one cell on a merged token word.
/// `own` selects whose cell it is (1, 2, or 3 for a shared cell); `l` is the
/// cell's position counted in own tokens; `consume`/`produce` are the words
/// it consumes and produces at this reading direction. Returns all valid
/// placements as (new tokens, merged index of the cell).
fn place_cell(
    toks: &[Tok],
    own: u8,
    l: usize,
    consume: &Word,
    produce: &Word,
) -> Vec<(Vec<Tok>, usize)> {
    let n = consume.len();
    let own_positions: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, t)| t.own & own != 0 && (own != 3 || t.own == 3))
        .map(|(i, _)| i)
        .collect();
    // For a shared cell every consumed token must be owned by both; for a
    // single-owner cell, by that owner (possibly also the other: identified).
    let mine = |t: &Tok| -> bool {
        if own == 3 {
            t.own == 3
        } else {
            t.own & own != 0
        }
    };
    let mut out = Vec::new();
    if n > 0 {
        if l + n > own_positions.len() {
            return out;
        }
        let m = own_positions[l];
        if m + n > toks.len() {
            return out;
        }
        // Consumed tokens must be contiguous, owned, and correctly labeled.
        for k in 0..n {
            let t = &toks[m + k];
            if !mine(t) || t.label != consume.label(k) {
                return out;
            }
        }
        if own_positions[l + n - 1] != m + n - 1 {
            return out;
        }
        let mut next = toks[..m].to_vec();
        for k in 0..produce.len() {
            next.push(Tok { label: produce.label(k), own });
        }
        next.extend_from_slice(&toks[m + n..]);
        out.push((next, m));
    } else {
        // Zero-width cell: any split point with exactly `l` own tokens before
        // it. For shared cells both counts must match (callers arrange this by
        // passing own = 3 only when the two positions coincide).
        if l > own_positions.len() {
            return out;
        }
        let lo = if l == 0 { 0 } else { own_positions[l - 1] + 1 };
        let hi = if l < own_positions.len() { own_positions[l] } else { toks.len() };
        for m in lo..=hi {
            let mut next = toks[..m].to_vec();
            for k in 0..produce.len() {
                next.push(Tok { label: produce.label(k), own });
            }
            next.extend_from_slice(&toks[m..]);
            out.push((next, m));
        }
    }
    out
}

fn level_words(src: &Word, rep: &[Slice]) -> Vec<Word> {
    let mut out = vec![src.clone()];
    for s in rep {
        out.push(s.target());
    }
    out
}

/// Glue two slice sequences along a shared cell occurrence (`rep1[r1]` is
/// identified with `rep2[r2]`), overlaying their boundary words tightly at
/// that level. Returns every resulting monomial.
fn superpose(
    src1: &Word,
    rep1: &[Slice],
    src2: &Word,
    rep2: &[Slice],
    r1: usize,
    r2: usize,
) -> Vec<Monomial> {
    if rep1[r1].gen != rep2[r2].gen {
        return Vec::new();
    }
    let l1 = level_words(src1, rep1);
    let l2 = level_words(src2, rep2);
    let a1 = rep1[r1].left.len();
    let a2 = rep2[r2].left.len();
    let start1 = a2.saturating_sub(a1);
    let start2 = a1.saturating_sub(a2);
    let w1 = &l1[r1];
    let w2 = &l2[r2];
    let width = (start1 + w1.len()).max(start2 + w2.len());
    let mut anchor: Vec<Tok> = Vec::with_capacity(width);
    for p in 0..width {
        let in1 = p >= start1 && p < start1 + w1.len();
        let in2 = p >= start2 && p < start2 + w2.len();
        let mut own = 0u8;
        let mut label = None;
        if in1 {
            own |= 1;
            label = Some(w1.label(p - start1));
        }
        if in2 {
            own |= 2;
            let lab2 = w2.label(p - start2);
            match label {
                Some(l) if l != lab2 => return Vec::new(),
                None => label = Some(lab2),
                _ => {}
            }
        }
        match label {
            Some(l) => anchor.push(Tok { label: l, own }),
            None => return Vec::new(),
        }
    }

    // Walk downward from the anchor level, placing the shared cell once and
    // then each diagram's remaining lower rows slot by slot.
    struct DownState {
        toks: Vec<Tok>,
        rows: Vec<Slice>,
    }
    let mut down: Vec<DownState> = vec![DownState { toks: anchor.clone(), rows: Vec::new() }];
    let max_slots = (rep1.len() - r1).max(rep2.len() - r2);
    for s in 0..max_slots {
        let mut cells: Vec<(u8, usize, &Slice)> = Vec::new();
        if s == 0 {
            cells.push((3, a1, &rep1[r1]));
        } else {
            if r1 + s < rep1.len() {
                cells.push((1, rep1[r1 + s].left.len(), &rep1[r1 + s]));
            }
            if r2 + s < rep2.len() {
                cells.push((2, rep2[r2 + s].left.len(), &rep2[r2 + s]));
            }
        }
        for (own, l, slice) in cells {
            let mut next_states = Vec::new();
            for st in &down {
                for (toks, m) in place_cell(&st.toks, own, l, &slice.gen.src, &slice.gen.tgt) {
                    let left = word_of(&st.toks[..m]);
                    let mut rows = st.rows.clone();
                    let right_len = toks.len() - m - slice.gen.tgt.len();
                    rows.push(Slice::new(
                        left,
                        slice.gen.clone(),
                        word_of(&toks[toks.len() - right_len..]),
                    ));
                    next_states.push(DownState { toks, rows });
                }
            }
            down = next_states;
            if down.is_empty() {
                return Vec::new();
            }
        }
    }

    // Walk upward from the anchor, undoing rows above the shared one (consume
    // the target, produce the source), prepending rows as we go.
    struct UpState {
        toks: Vec<Tok>,
        rows: Vec<Slice>,
    }
    let mut up: Vec<UpState> = vec![UpState { toks: anchor, rows: Vec::new() }];
    let max_up = r1.max(r2);
    for s in 1..=max_up {
        let mut cells: Vec<(u8, usize, &Slice)> = Vec::new();
        if s <= r1 {
            cells.push((1, rep1[r1 - s].left.len(), &rep1[r1 - s]));
        }
        if s <= r2 {
            cells.push((2, rep2[r2 - s].left.len(), &rep2[r2 - s]));
        }
        for (own, l, slice) in cells {
            let mut next_states = Vec::new();
            for st in &up {
                for (toks, m) in place_cell(&st.toks, own, l, &slice.gen.tgt, &slice.gen.src) {
                    let left = word_of(&toks[..m]);
                    let mut rows = st.rows.clone();
                    let right_len = st.toks.len()
                        - (m + slice.gen.tgt.len()).min(st.toks.len());
                    rows.insert(
                        0,
                        Slice::new(
                            left,
                            slice.gen.clone(),
                            word_of(&st.toks[st.toks.len() - right_len..]),
                        ),
                    );
                    next_states.push(UpState { toks, rows });
                }
            }
            up = next_states;
            if up.is_empty() {
                return Vec::new();
            }
        }
    }

    let mut out = Vec::new();
    for u in &up {
        for d in &down {
            let mut rows = u.rows.clone();
            rows.extend(d.rows.iter().cloned());
            if let Ok(m) = Monomial::new(word_of(&u.toks), rows) {
                out.push(m);
            }
        }
    }
    out
}

/// Insert a boundary-preserving block (`block.src == block.tgt`) between any
/// two rows of any representative, at every matching column.
fn insert_block(src: &Word, reps: &[Vec<Slice>], block: &Monomial) -> Vec<Monomial> {
    if block.src() != block.tgt() {
        return Vec::new();
    }
    let bsrc = block.src();
    let mut out = Vec::new();
    for rep in reps {
        let levels = level_words(src, rep);
        for (r, level) in levels.iter().enumerate() {
            if level.len() < bsrc.len() {
                continue;
            }
            for a in 0..=level.len() - bsrc.len() {
                if level.sub(a, a + bsrc.len()) != *bsrc {
                    continue;
                }
                let lw = level.prefix(a);
                let rw = level.suffix_from(a + bsrc.len());
                let mut rows = rep[..r].to_vec();
                for s in block.slices() {
                    rows.push(Slice::new(
                        lw.concat(&s.left),
                        s.gen.clone(),
                        s.right.concat(&rw),
                    ));
                }
                rows.extend(rep[r..].iter().cloned());
                if let Ok(m) = Monomial::new(src.clone(), rows) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// The closed (boundary-free) part of a left-hand side, if it has one: the
/// contiguous block of rows lying on closed components, stripped of whiskers.
fn closed_part(m: &Monomial) -> Option<Monomial> {
    use crate::wiring::Wiring;
    let mut wiring = Wiring::of(m);
    let closed: Vec<usize> = (0..m.slices().len())
        .filter(|&r| wiring.row_is_closed(r))
        .collect();
    if closed.is_empty() {
        return None;
    }
    // Require a contiguous block.
    for w in closed.windows(2) {
        if w[1] != w[0] + 1 {
            return None;
        }
    }
    let (i, j) = (closed[0], closed[closed.len() - 1] + 1);
    let rows = &m.slices()[i..j];
    let levels = level_words(m.src(), m.slices());
    let win_src = &levels[i];
    let max_a = rows.iter().map(|s| s.left.len()).min().unwrap_or(0);
    for a in 0..=max_a {
        let b = win_src.len().checked_sub(a)?;
        if rows.iter().any(|s| s.right.len() < b) {
            continue;
        }
        let stripped: Vec<Slice> = rows
            .iter()
            .map(|s| {
                Slice::new(
                    s.left.suffix_from(a),
                    s.gen.clone(),
                    s.right.prefix(s.right.len() - b),
                )
            })
            .collect();
        if let Ok(p) = Monomial::new(Word::empty(), stripped) {
            if p.tgt().is_empty() {
                return Some(p);
            }
        }
    }
    None
}

/// Enumerate critical branchings of the engine's rule system: minimal
/// monomial sources where two rules overlap non-trivially.
pub fn enumerate_critical_branchings(
    engine: &Engine,
    max_overlap_slices: usize,
) -> Result<Vec<CriticalBranching>> {
    let rules = &engine.polygraph.rules;
    let mut out = Vec::new();
    for i in 0..rules.len() {
        for j in i..rules.len() {
            let lhs_i = &rules[i].lhs;
            let lhs_j = &rules[j].lhs;
            let reps_i = lhs_i.class()?;
            let reps_j = lhs_j.class()?;
            let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
            // (A) superposition along a shared generator occurrence.
            for rep1 in &reps_i {
                for rep2 in &reps_j {
                    for r1 in 0..rep1.len() {
                        for r2 in 0..rep2.len() {
                            if rep1[r1].gen != rep2[r2].gen {
                                continue;
                            }
                            for m in
                                superpose(lhs_i.src(), rep1, lhs_j.src(), rep2, r1, r2)
                            {
                                candidates.insert(m);
                            }
                        }
                    }
                }
            }
            // (B) insertion of a boundary-preserving left side into the other.
            candidates.extend(insert_block(lhs_i.src(), &reps_i, lhs_j));
            candidates.extend(insert_block(lhs_j.src(), &reps_j, lhs_i));
            // (C) mutual placements of the two closed parts.
            if let (Some(p1), Some(p2)) = (closed_part(lhs_i), closed_part(lhs_j)) {
                if let Ok(side) = p1.compose0(&p2) {
                    candidates.insert(side);
                }
                candidates.extend(insert_block(p1.src(), &p1.class()?, &p2));
                candidates.extend(insert_block(p2.src(), &p2.class()?, &p1));
            }
            candidates.retain(|m| m.height() <= max_overlap_slices);
            let mut sorted: Vec<Monomial> = candidates.into_iter().collect();
            sorted.sort_by_key(|m| m.height());
            let mut accepted: Vec<Monomial> = Vec::new();
            for cand in sorted {
                // Minimality: skip if a smaller accepted source occurs inside.
                let mut contains_smaller = false;
                for acc in &accepted {
                    if *acc != cand && !cand.factorizations(acc)?.is_empty() {
                        contains_smaller = true;
                        break;
                    }
                }
                if contains_smaller {
                    continue;
                }
                if let Some(cb) = overlap_pair(engine, &cand, i, j)? {
                    accepted.push(cand);
                    out.push(cb);
                }
            }
        }
    }
    Ok(out)
}

/// If `cand` carries a genuinely overlapping (non-aspherical, non-Peiffer)
/// pair of occurrences of rules `i` and `j`, return the branching.
fn overlap_pair(
    engine: &Engine,
    cand: &Monomial,
    i: usize,
    j: usize,
) -> Result<Option<CriticalBranching>> {
    let rule_i = &engine.polygraph.rules[i];
    let rule_j = &engine.polygraph.rules[j];
    let fact_i = cand.factorizations(&rule_i.lhs)?;
    if fact_i.is_empty() {
        return Ok(None);
    }
    let fact_j = cand.factorizations(&rule_j.lhs)?;
    if fact_j.is_empty() {
        return Ok(None);
    }
    // Group context representations by the step target they induce.
    let mut by_target_i: BTreeMap<LinComb, Context> = BTreeMap::new();
    for c in fact_i {
        let t = rule_i.rhs.plug_into(&c)?;
        by_target_i.entry(t).or_insert(c);
    }
    let mut by_target_j: BTreeMap<LinComb, Context> = BTreeMap::new();
    for c in fact_j {
        let t = rule_j.rhs.plug_into(&c)?;
        by_target_j.entry(t).or_insert(c);
    }
    for (ti, ci) in &by_target_i {
        for (tj, cj) in &by_target_j {
            if i == j && ti == tj {
                continue; // the same step twice: aspherical
            }
            if is_peiffer_pair(engine, cand, &rule_i.name, ti, &rule_j.name, tj)? {
                continue;
            }
            return Ok(Some(CriticalBranching {
                overlap: cand.clone(),
                left_rule: rule_i.name.clone(),
                right_rule: rule_j.name.clone(),
                left_context: ci.clone(),
                right_context: cj.clone(),
            }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Joinability
// ---------------------------------------------------------------------------

/// Bidirectional bounded search for a common reduct of the two sides of a
/// branching.
pub fn joinable(
    engine: &Engine,
    b: &Branching,
    depth: usize,
    width: usize,
) -> Result<JoinResult> {
    let start_l = b.left.last().map(|s| s.target.clone()).unwrap_or_else(|| b.source.clone());
    let start_r = b.right.last().map(|s| s.target.clone()).unwrap_or_else(|| b.source.clone());
    // parent maps: node -> (parent, step)
    let mut seen_l: HashMap<LinComb, Option<(LinComb, RewriteStep)>> = HashMap::new();
    let mut seen_r: HashMap<LinComb, Option<(LinComb, RewriteStep)>> = HashMap::new();
    seen_l.insert(start_l.clone(), None);
    seen_r.insert(start_r.clone(), None);
    let mut frontier_l = vec![start_l.clone()];
    let mut frontier_r = vec![start_r.clone()];
    let mut depth_l = 0usize;
    let mut depth_r = 0usize;

    let meet_of = |sl: &HashMap<LinComb, Option<(LinComb, RewriteStep)>>,
                   sr: &HashMap<LinComb, Option<(LinComb, RewriteStep)>>|
     -> Option<LinComb> {
        sl.keys().find(|k| sr.contains_key(*k)).cloned()
    };

    let trace = |seen: &HashMap<LinComb, Option<(LinComb, RewriteStep)>>,
                 end: &LinComb|
     -> Vec<RewriteStep> {
        let mut path = Vec::new();
        let mut cur = end.clone();
        while let Some(Some((parent, step))) = seen.get(&cur) {
            path.push(step.clone());
            cur = parent.clone();
        }
        path.reverse();
        path
    };

    loop {
        if let Some(meet) = meet_of(&seen_l, &seen_r) {
            return Ok(JoinResult {
                status: JoinStatus::Joined,
                witness_left: trace(&seen_l, &meet),
                witness_right: trace(&seen_r, &meet),
                meet: Some(meet),
                depth_used: depth_l + depth_r,
            });
        }
        if depth_l + depth_r >= depth
            || (frontier_l.is_empty() && frontier_r.is_empty())
        {
            return Ok(JoinResult {
                status: JoinStatus::NotJoinedWithinBound,
                witness_left: Vec::new(),
                witness_right: Vec::new(),
                meet: None,
                depth_used: depth_l + depth_r,
            });
        }
        // Expand the smaller non-empty frontier.
        let expand_left = !frontier_l.is_empty()
            && (frontier_r.is_empty() || frontier_l.len() <= frontier_r.len());
        let (frontier, seen, d) = if expand_left {
            (&mut frontier_l, &mut seen_l, &mut depth_l)
        } else {
            (&mut frontier_r, &mut seen_r, &mut depth_r)
        };
        let mut next = Vec::new();
        for c in frontier.iter() {
            for step in engine.find_steps(c)? {
                if !seen.contains_key(&step.target) {
                    seen.insert(step.target.clone(), Some((c.clone(), step.clone())));
                    next.push(step.target);
                    if next.len() >= width {
                        break;
                    }
                }
            }
            if next.len() >= width {
                break;
            }
        }
        *frontier = next;
        *d += 1;
    }
}

// ---------------------------------------------------------------------------
// Labeling and decreasingness
// ---------------------------------------------------------------------------

/// Step levels computed as rewriting distance to a quasi-reduced combination.
pub struct Labeling<'a> {
    engine: &'a Engine,
    budget: usize,
    cache: std::cell::RefCell<HashMap<LinComb, (usize, bool)>>,
}

impl<'a> Labeling<'a> {
    pub fn new(engine: &'a Engine, budget: usize) -> Self {
        Labeling { engine, budget, cache: std::cell::RefCell::new(HashMap::new()) }
    }

    /// Length of the shortest rewrite from `c` to a quasi-reduced
    /// combination, found by breadth-first search; the boolean flags whether
    /// the search budget was exhausted (the value is then an upper bound from
    /// the greedy strategy).
    pub fn distance(&self, c: &LinComb) -> Result<(usize, bool)> {
        if let Some(v) = self.cache.borrow().get(c) {
            return Ok(*v);
        }
        let mut seen: BTreeSet<LinComb> = BTreeSet::new();
        let mut queue: VecDeque<(LinComb, usize)> = VecDeque::new();
        seen.insert(c.clone());
        queue.push_back((c.clone(), 0));
        let mut result: Option<(usize, bool)> = None;
        while let Some((cur, d)) = queue.pop_front() {
            if self.engine.is_quasi_reduced(&cur)? {
                result = Some((d, false));
                break;
            }
            if seen.len() > self.budget {
                break;
            }
            for step in self.engine.find_steps(&cur)? {
                if seen.insert(step.target.clone()) {
                    queue.push_back((step.target, d + 1));
                }
            }
        }
        let value = match result {
            Some(v) => v,
            None => {
                // Budget exhausted: fall back to the greedy trace length.
                let nr = self.engine.quasi_reduce(c, self.budget)?;
                (nr.steps_used, true)
            }
        };
        self.cache.borrow_mut().insert(c.clone(), value);
        Ok(value)
    }

    /// The level of a step: distance from its target to quasi-reduced.
    pub fn level(&self, step: &RewriteStep) -> Result<(usize, bool)> {
        self.distance(&step.target)
    }
}

/// Outcome of the decreasingness check for one branching.
#[derive(Clone, Debug, Serialize)]
pub struct DecreasingReport {
    pub level_left: usize,
    pub level_right: usize,
    pub decreasing: bool,
    /// Whether a witness also satisfies the stricter reading in which the
    /// trailing segment uses a single level bound rather than a mixed one.
    pub strict: bool,
    pub measure_non_increasing: bool,
    pub budget_flag: bool,
}

/// Check one single-step local branching against the decreasing-diagram
/// template: from each side, a completion shaped
/// `(levels < I)* (level == J)? (levels < I or < J)*` meeting the other side.
pub fn check_decreasing(
    engine: &Engine,
    b: &Branching,
    labeling: &Labeling,
    depth: usize,
) -> Result<DecreasingReport> {
    check_decreasing_capped(engine, b, labeling, depth, usize::MAX)
}

/// Like [`check_decreasing`], but each side's exploration stops after
/// `node_cap` states; `budget_flag` is raised when the cap truncates it.
pub fn check_decreasing_capped(
    engine: &Engine,
    b: &Branching,
    labeling: &Labeling,
    depth: usize,
    node_cap: usize,
) -> Result<DecreasingReport> {
    let sl = b.left.first().expect("single-step branching");
    let sr = b.right.first().expect("single-step branching");
    let (li, fl) = labeling.level(sl)?;
    let (lj, fr) = labeling.level(sr)?;
    let mut budget_flag = fl || fr;

    // Reachable states from one side: (comb, used_b) with trace.
    let explore = |start: &LinComb,
                   i: usize,
                   j: usize,
                   budget_flag: &mut bool|
     -> Result<HashMap<(LinComb, bool), Vec<usize>>> {
        let mut seen: HashMap<(LinComb, bool), Vec<usize>> = HashMap::new();
        let mut queue: VecDeque<(LinComb, bool, usize, Vec<usize>)> = VecDeque::new();
        seen.insert((start.clone(), false), Vec::new());
        queue.push_back((start.clone(), false, 0, Vec::new()));
        while let Some((cur, used_b, d, levels)) = queue.pop_front() {
            if d >= depth {
                continue;
            }
            if seen.len() >= node_cap {
                *budget_flag = true;
                break;
            }
            for step in engine.find_steps(&cur)? {
                let (l, flag) = labeling.level(&step)?;
                *budget_flag |= flag;
                let moves: Vec<bool> = if l < i {
                    vec![used_b]
                } else if l == j && !used_b {
                    vec![true]
                } else if l < j && used_b {
                    vec![used_b]
                } else {
                    continue;
                };
                for ub in moves {
                    let key = (step.target.clone(), ub);
                    if !seen.contains_key(&key) {
                        let mut lv = levels.clone();
                        lv.push(l);
                        seen.insert(key.clone(), lv.clone());
                        queue.push_back((step.target.clone(), ub, d + 1, lv));
                    }
                }
            }
        }
        Ok(seen)
    };

    let reach_l = explore(&sl.target, li, lj, &mut budget_flag)?;
    let reach_r = explore(&sr.target, lj, li, &mut budget_flag)?;
    let combs_r: BTreeSet<&LinComb> = reach_r.keys().map(|(c, _)| c).collect();

    // A branching is decreasing when SOME meet admits template-shaped
    // completions; likewise the measure condition asks for the existence of
    // one completion whose two sides stay below the branching's measure.
    let mut decreasing = false;
    let mut strict = false;
    let mut measure_ok = false;
    let bound = measure(&[li, lj]);
    'meets: for ((c, _), lv_l) in &reach_l {
        if !combs_r.contains(c) {
            continue;
        }
        decreasing = true;
        for ((cc, _), lv_r) in &reach_r {
            if cc != c {
                continue;
            }
            let s = strict_witness(lv_l, li, lj) && strict_witness(lv_r, lj, li);
            // The measure of each full side (branching step + completion)
            // must not exceed the measure of the two-step branching.
            let mut side_l = vec![li];
            side_l.extend(lv_l.iter().copied());
            let mut side_r = vec![lj];
            side_r.extend(lv_r.iter().copied());
            let m = measure_le(&measure(&side_l), &bound)
                && measure_le(&measure(&side_r), &bound);
            strict |= s;
            measure_ok |= m;
            if strict && measure_ok {
                break 'meets;
            }
        }
    }
    Ok(DecreasingReport {
        level_left: li,
        level_right: lj,
        decreasing,
        strict,
        measure_non_increasing: measure_ok,
        budget_flag,
    })
}

/// Whether a completion trace fits the stricter template reading: levels < I,
/// then optionally one level-J step, then levels below a single bound.
fn strict_witness(levels: &[usize], i: usize, j: usize) -> bool {
    let mut idx = 0;
    while idx < levels.len() && levels[idx] < i {
        idx += 1;
    }
    if idx < levels.len() && levels[idx] == j {
        idx += 1;
    }
    let tail = &levels[idx..];
    tail.iter().all(|&l| l < i) || tail.iter().all(|&l| l < j)
}

// ---------------------------------------------------------------------------
// The letter measure for decreasing diagrams
// ---------------------------------------------------------------------------

/// Measure of a sequence of levels: scanning left to right, a letter is kept
/// iff it is >= the running maximum of kept letters; the result is the
/// multiset of kept letters.
pub fn measure(levels: &[usize]) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    let mut max_kept: Option<usize> = None;
    for &l in levels {
        if max_kept.map_or(true, |m| l >= m) {
            *out.entry(l).or_insert(0) += 1;
            max_kept = Some(max_kept.map_or(l, |m| m.max(l)));
        }
    }
    out
}

/// Multiset comparison `M <= N` in the order where every level at which M
/// exceeds N must be dominated by a strictly higher level at which N exceeds
/// M (with equality allowed).
pub fn measure_le(m: &BTreeMap<usize, usize>, n: &BTreeMap<usize, usize>) -> bool {
    if m == n {
        return true;
    }
    let levels: BTreeSet<usize> = m.keys().chain(n.keys()).copied().collect();
    for &l in &levels {
        let mv = m.get(&l).copied().unwrap_or(0);
        let nv = n.get(&l).copied().unwrap_or(0);
        if mv > nv {
            let dominated = levels.iter().any(|&l2| {
                l2 > l
                    && n.get(&l2).copied().unwrap_or(0) > m.get(&l2).copied().unwrap_or(0)
            });
            if !dominated {
                return false;
            }
        }
    }
    true
}
