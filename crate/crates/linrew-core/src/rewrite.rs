//! The rewriting engine: locating redexes, applying rules to linear
//! combinations, weight bookkeeping, exempt steps, and quasi-reduction.

use crate::diagram::{factorizations_with_reps, Context, Gen2, Monomial, Slice};
use crate::error::{LinrewError, Result};
use crate::lincomb::LinComb;
use crate::polygraph::{Polygraph, Rule};
use crate::wiring::{GapRegions, Wiring};
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

/// Weight of a single generator: cups and caps count 1, crossings 3,
/// everything else (dots) 0.
pub fn weight_gen(g: &Gen2) -> u64 {
    if g.is_cup() || g.is_cap() {
        1
    } else if g.is_crossing() {
        3
    } else {
        0
    }
}

pub fn weight_monomial(m: &Monomial) -> u64 {
    m.slices().iter().map(|s| weight_gen(&s.gen)).sum()
}

/// Weight of a combination: the maximum over its monomials (0 for zero).
pub fn weight(c: &LinComb) -> u64 {
    c.monomials().map(weight_monomial).max().unwrap_or(0)
}

/// One way a rule applies to a monomial.
#[derive(Clone, Debug)]
pub struct Redex {
    pub rule_idx: usize,
    pub context: Context,
    /// Exempt redexes stay applicable on quasi-reduced diagrams (dot transfer
    /// around closed components, and slides into a nest).
    pub exempt: bool,
}

/// A single (positive) rewriting step on a linear combination: the matched
/// monomial is rewritten with its full coefficient.
#[derive(Clone, Debug)]
pub struct RewriteStep {
    pub rule: String,
    pub context: Context,
    pub coefficient: BigRational,
    pub remainder: LinComb,
    pub source: LinComb,
    pub target: LinComb,
}

impl Serialize for RewriteStep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RewriteStep", 6)?;
        st.serialize_field("rule", &self.rule)?;
        st.serialize_field("context", &self.context)?;
        st.serialize_field("coefficient", &self.coefficient.to_string())?;
        st.serialize_field("remainder", &self.remainder)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.end()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum NormalizationStatus {
    QuasiReduced,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizationResult {
    pub result: LinComb,
    pub steps_used: usize,
    pub status: NormalizationStatus,
}

/// Rewriting engine over a fixed rule system, with per-monomial redex caching.
pub struct Engine {
    pub polygraph: Arc<Polygraph>,
    redex_cache: RefCell<HashMap<Monomial, Arc<Vec<Redex>>>>,
}

impl Engine {
    pub fn new(polygraph: Arc<Polygraph>) -> Self {
        Engine { polygraph, redex_cache: RefCell::new(HashMap::new()) }
    }

    /// All redexes of a monomial, over its whole exchange class, cached.
    pub fn redexes(&self, m: &Monomial) -> Result<Arc<Vec<Redex>>> {
        if let Some(r) = self.redex_cache.borrow().get(m) {
            return Ok(r.clone());
        }
        let reps = m.class()?;
        let mut out = Vec::new();
        for (rule_idx, rule) in self.polygraph.rules.iter().enumerate() {
            for ctx in factorizations_with_reps(m.src(), &reps, &rule.lhs)? {
                let exempt = self.redex_is_exempt(rule, &ctx)?;
                out.push(Redex { rule_idx, context: ctx, exempt });
            }
        }
        let out = Arc::new(out);
        self.redex_cache.borrow_mut().insert(m.clone(), out.clone());
        Ok(out)
    }

    /// The slice sequence of `ctx` filled with `lhs`, without re-canonicalizing
    /// the block, so the redex occupies known contiguous rows.
    fn context_rows(ctx: &Context, lhs: &Monomial) -> Vec<Slice> {
        let mut rows: Vec<Slice> = ctx.m1.slices().to_vec();
        for s in lhs.slices() {
            rows.push(Slice::new(
                ctx.m2.concat(&s.left),
                s.gen.clone(),
                s.right.concat(&ctx.m3),
            ));
        }
        rows.extend(ctx.m4.slices().iter().cloned());
        rows
    }

    /// Whether a redex is exempt. Two shapes qualify:
    /// - dot-transfer rules whose cup or cap lies on a closed component;
    /// - slide rules that do not move their bubble into a planar region
    ///   reaching strictly further left. A slide carries the bubble from the
    ///   gap just right of the through-strand to the gap just left of it;
    ///   when the ambient region already reaches at least as far left as the
    ///   destination (entering a pocket, or wrapping around a closed
    ///   boundary), the step makes no normalization progress.
    fn redex_is_exempt(&self, rule: &Rule, ctx: &Context) -> Result<bool> {
        let family = rule.family.as_str();
        let is_dot_transfer = family == "i1";
        let is_slide = matches!(family, "s0" | "s1" | "slide");
        if !is_dot_transfer && !is_slide {
            return Ok(false);
        }
        let rows = Self::context_rows(ctx, &rule.lhs);
        let src = ctx.m1.src().clone();
        let h = ctx.m1.height();
        let k = rule.lhs.height();
        if is_dot_transfer {
            // The dot-transfer rule contains exactly one cup or cap.
            let mut wiring = Wiring::of_slices(&src, &rows);
            for row in h..h + k {
                let g = &rows[row].gen;
                if g.is_cup() || g.is_cap() {
                    return Ok(wiring.row_is_closed(row));
                }
            }
            return Ok(false);
        }
        // Slide rules: the through-strand is the first column of the hole;
        // the bubble sits in the gap to its right at the hole's top level.
        let col = ctx.m2.len();
        let regions = GapRegions::of_slices(&src, &rows);
        Ok(regions.leftness(h, col) >= regions.leftness(h, col + 1))
    }

    /// Build the step applying `redex` to the monomial `m` within `c`,
    /// rewriting the full coefficient of `m`.
    fn step_for(&self, c: &LinComb, m: &Monomial, redex: &Redex) -> Result<RewriteStep> {
        let rule = &self.polygraph.rules[redex.rule_idx];
        let lambda = c.coeff(m);
        let remainder = c.sub(&LinComb::term(lambda.clone(), m.clone()))?;
        let replaced = rule.rhs.plug_into(&redex.context)?.scale(&lambda);
        let target = replaced.add(&remainder)?;
        Ok(RewriteStep {
            rule: rule.name.clone(),
            context: redex.context.clone(),
            coefficient: lambda,
            remainder,
            source: c.clone(),
            target,
        })
    }

    /// Every rewriting step applicable to a combination, in deterministic
    /// order (term order, then rule order, then context order).
    pub fn find_steps(&self, c: &LinComb) -> Result<Vec<RewriteStep>> {
        let mut out = Vec::new();
        for m in c.monomials() {
            for redex in self.redexes(m)?.iter() {
                out.push(self.step_for(c, m, redex)?);
            }
        }
        Ok(out)
    }

    /// Split a partial rewrite (only `lambda` of the matched coefficient is
    /// rewritten) into two full steps `beta`, `gamma` with a common target:
    /// the partial rewrite is `beta` followed by `gamma` reversed.
    pub fn elementary_split(
        &self,
        source: &LinComb,
        rule_name: &str,
        ctx: &Context,
        lambda: &BigRational,
    ) -> Result<(RewriteStep, RewriteStep)> {
        let rule = self
            .polygraph
            .rule(rule_name)
            .ok_or_else(|| LinrewError::Other(format!("unknown rule {rule_name}")))?;
        let m = ctx.plug(&rule.lhs)?;
        let total = source.coeff(&m);
        if total.is_zero() {
            return Err(LinrewError::InvalidDiagram(
                "matched monomial does not occur in the source".into(),
            ));
        }
        let mu = &total - lambda;
        let replaced = rule.rhs.plug_into(ctx)?;
        let h = source.sub(&LinComb::term(total.clone(), m.clone()))?;
        let full_target = replaced.scale(&total).add(&h)?;
        let beta = RewriteStep {
            rule: rule.name.clone(),
            context: ctx.clone(),
            coefficient: total.clone(),
            remainder: h.clone(),
            source: source.clone(),
            target: full_target.clone(),
        };
        // The partial target keeps mu copies of the redex.
        let partial = LinComb::term(mu.clone(), m.clone())
            .add(&replaced.scale(lambda))?
            .add(&h)?;
        let gamma = RewriteStep {
            rule: rule.name.clone(),
            context: ctx.clone(),
            coefficient: mu,
            remainder: partial.sub(&LinComb::term(partial.coeff(&m), m.clone()))?,
            source: partial,
            target: full_target,
        };
        Ok((beta, gamma))
    }

    /// Targets of exempt dot-transfer redexes of `m` (single monomials:
    /// the dot moved across a closed cup or cap), paired with the redex.
    fn dot_transfer_moves(&self, m: &Monomial) -> Result<Vec<(Monomial, Redex)>> {
        let mut out = Vec::new();
        for redex in self.redexes(m)?.iter() {
            let rule = &self.polygraph.rules[redex.rule_idx];
            if rule.family != "i1" || !redex.exempt {
                continue;
            }
            let t = rule.rhs.plug_into(&redex.context)?;
            for mono in t.monomials() {
                out.push((mono.clone(), redex.clone()));
            }
        }
        Ok(out)
    }

    /// Search the exempt dot-transfer orbit of `m` for a member carrying a
    /// non-exempt redex. Dots move freely around closed components, so a
    /// rule whose left side pins its dots to one leg must be matched up to
    /// these moves. Returns the first transfer step of a shortest path to
    /// such a member (or `None` when the whole orbit is quiescent; members
    /// at distance 0 are the caller's responsibility).
    fn orbit_unblock(&self, m: &Monomial) -> Result<Option<Redex>> {
        const ORBIT_CAP: usize = 2_000;
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(m.clone());
        // Each frontier entry remembers the first move out of `m`.
        let mut frontier: Vec<(Monomial, Redex)> = self.dot_transfer_moves(m)?;
        frontier.retain(|(n, _)| seen.insert(n.clone()));
        while !frontier.is_empty() && seen.len() < ORBIT_CAP {
            let mut next = Vec::new();
            for (n, first) in &frontier {
                if self.redexes(n)?.iter().any(|r| !r.exempt) {
                    return Ok(Some(first.clone()));
                }
                for (n2, _) in self.dot_transfer_moves(n)? {
                    if seen.insert(n2.clone()) {
                        next.push((n2, first.clone()));
                    }
                }
            }
            frontier = next;
        }
        Ok(None)
    }

    /// The first step in deterministic order that strictly decreases the
    /// weight, else the first non-exempt step, else a dot-transfer step
    /// towards an orbit member with a non-exempt redex, else `None`.
    pub fn pick_step(&self, c: &LinComb) -> Result<Option<RewriteStep>> {
        let w = weight(c);
        let mut first_non_exempt: Option<RewriteStep> = None;
        for m in c.monomials() {
            for redex in self.redexes(m)?.iter() {
                let step = self.step_for(c, m, redex)?;
                if weight(&step.target) < w {
                    return Ok(Some(step));
                }
                if !redex.exempt && first_non_exempt.is_none() {
                    first_non_exempt = Some(step);
                }
            }
        }
        if first_non_exempt.is_some() {
            return Ok(first_non_exempt);
        }
        for m in c.monomials() {
            if let Some(redex) = self.orbit_unblock(m)? {
                return Ok(Some(self.step_for(c, m, &redex)?));
            }
        }
        Ok(None)
    }

    /// Rewrite until only exempt steps remain (or the budget runs out),
    /// preferring weight-decreasing steps.
    pub fn quasi_reduce(&self, c: &LinComb, budget: usize) -> Result<NormalizationResult> {
        let mut cur = c.clone();
        let mut used = 0;
        loop {
            match self.pick_step(&cur)? {
                None => {
                    return Ok(NormalizationResult {
                        result: cur,
                        steps_used: used,
                        status: NormalizationStatus::QuasiReduced,
                    })
                }
                Some(step) => {
                    if used >= budget {
                        return Ok(NormalizationResult {
                            result: cur,
                            steps_used: used,
                            status: NormalizationStatus::BudgetExhausted,
                        });
                    }
                    cur = step.target;
                    used += 1;
                }
            }
        }
    }

    /// A combination is quasi-reduced when every applicable step is exempt,
    /// even after moving dots around closed components.
    pub fn is_quasi_reduced(&self, c: &LinComb) -> Result<bool> {
        for m in c.monomials() {
            if !self.monomial_is_quasi_reduced(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monomial convenience wrapper for `is_quasi_reduced`.
    pub fn monomial_is_quasi_reduced(&self, m: &Monomial) -> Result<bool> {
        if self.redexes(m)?.iter().any(|r| !r.exempt) {
            return Ok(false);
        }
        Ok(self.orbit_unblock(m)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{preset_aobbar, AobBarGens};
    use crate::word::Word;

    fn engine() -> Engine {
        Engine::new(Arc::new(preset_aobbar(2).unwrap()))
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn snake_reduces_to_identity() {
        let e = engine();
        let lhs = e.polygraph.rule("i0_1").unwrap().lhs.clone();
        let res = e.quasi_reduce(&LinComb::from_monomial(lhs), 100).unwrap();
        assert_eq!(res.status, NormalizationStatus::QuasiReduced);
        assert_eq!(res.result, LinComb::identity(w("^")));
        assert_eq!(res.steps_used, 1);
    }

    #[test]
    fn cw_bubble_is_quasi_reduced() {
        let e = engine();
        let g = AobBarGens::new();
        assert!(e.monomial_is_quasi_reduced(&g.cw(0)).unwrap());
        assert!(e.monomial_is_quasi_reduced(&g.cw(2)).unwrap());
    }

    #[test]
    fn ccw_bubble_expands() {
        let e = engine();
        let g = AobBarGens::new();
        let res = e.quasi_reduce(&LinComb::from_monomial(g.ccw(0)), 100).unwrap();
        assert_eq!(res.status, NormalizationStatus::QuasiReduced);
        assert_eq!(res.result, LinComb::from_monomial(g.cw(0)));
    }

    #[test]
    fn strand_bubble_slides_left() {
        let e = engine();
        let g = AobBarGens::new();
        let src = Monomial::identity(w("^")).compose0(&g.cw(0)).unwrap();
        let res = e.quasi_reduce(&LinComb::from_monomial(src), 100).unwrap();
        assert_eq!(res.status, NormalizationStatus::QuasiReduced);
        let expect = LinComb::from_monomial(g.cw(0).compose0(&Monomial::identity(w("^"))).unwrap());
        assert_eq!(res.result, expect);
    }

    #[test]
    fn bubble_right_of_cup_leg_is_exempt() {
        let e = engine();
        let g = AobBarGens::new();
        // Cup with a bubble beside its right (v) leg: only exempt slides apply.
        let m = Monomial::generator(g.c.clone()).compose0(&g.cw(0)).unwrap();
        assert!(e.monomial_is_quasi_reduced(&m).unwrap());
    }

    #[test]
    fn nested_bubble_pops_out() {
        let e = engine();
        let g = AobBarGens::new();
        // A bubble nested inside another bubble rewrites to two stacked
        // bubbles (the inner one escapes to the left).
        let inner = Monomial::identity(w("^"))
            .compose0(&g.cw(0))
            .unwrap()
            .compose0(&Monomial::identity(w("v")))
            .unwrap();
        let nested = Monomial::generator(g.c.clone())
            .compose1(&inner)
            .unwrap()
            .compose1(&Monomial::generator(g.db.clone()))
            .unwrap();
        assert!(!e.monomial_is_quasi_reduced(&nested).unwrap());
        let res = e.quasi_reduce(&LinComb::from_monomial(nested), 100).unwrap();
        assert_eq!(res.status, NormalizationStatus::QuasiReduced);
        let two = g.cw(0).compose1(&g.cw(0)).unwrap();
        assert_eq!(res.result, LinComb::from_monomial(two));
    }

    #[test]
    fn dotted_bubble_dot_transfer_is_exempt() {
        let e = engine();
        let g = AobBarGens::new();
        // cw(1) supports a dot-transfer step around the bubble; it must be
        // recognized as exempt, keeping the diagram quasi-reduced.
        let redexes = e.redexes(&g.cw(1)).unwrap();
        assert!(!redexes.is_empty());
        assert!(redexes.iter().all(|r| r.exempt));
    }

    #[test]
    fn elementary_split_reconstructs_partial_step() {
        use num_traits::One;
        let e = engine();
        // Source 2*lhs; split rewriting only 1 copy.
        let rule = e.polygraph.rule("i0_1").unwrap().clone();
        let two = BigRational::from_integer(2.into());
        let source = LinComb::term(two, rule.lhs.clone());
        let ctx = Context::identity(w("^"), w("^"));
        let one = BigRational::one();
        let (beta, gamma) = e.elementary_split(&source, "i0_1", &ctx, &one).unwrap();
        // beta: 2*lhs -> 2*id ; gamma: lhs + id -> 2*id.
        assert_eq!(beta.target, gamma.target);
        let partial = LinComb::from_monomial(rule.lhs.clone())
            .add(&LinComb::identity(w("^")))
            .unwrap();
        assert_eq!(gamma.source, partial);
    }

    #[test]
    fn weight_values() {
        let e = engine();
        let g = AobBarGens::new();
        // Snake: one cup plus one cap.
        assert_eq!(weight_monomial(&e.polygraph.rule("i0_1").unwrap().lhs), 2);
        // Identities weigh nothing.
        assert_eq!(weight(&LinComb::identity(w("^v"))), 0);
        // Double crossing: 3 + 3.
        assert_eq!(weight_monomial(&e.polygraph.rule("r0_1").unwrap().lhs), 6);
        // Dots are free.
        assert_eq!(weight_monomial(&g.strand_up(4)), 0);
        // Weight-preserving rules stay weight-preserving; the only increases
        // come from bubble expansion (o1) and slides' correction terms never
        // exceeding their left side plus the expanded bubbles.
        for rule in &e.polygraph.rules {
            if rule.family != "o1" {
                assert!(
                    weight(&rule.rhs) <= weight_monomial(&rule.lhs),
                    "rule {} increases weight",
                    rule.name
                );
            }
        }
    }
}
