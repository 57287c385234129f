//! JSON ingestion for polygraphs, monomials, and linear combinations.
//! Serialization lives on the types themselves; parsing needs a generator
//! registry, so it is provided here as free functions.

use crate::diagram::{Gen2, Monomial, Slice};
use crate::error::{LinrewError, Result};
use crate::lincomb::LinComb;
use crate::polygraph::{Polygraph, Rule};
use crate::word::Word;
use num_rational::BigRational;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Deserialize)]
struct SliceDe {
    left: String,
    gen: String,
    right: String,
}

#[derive(Deserialize)]
struct MonomialDe {
    source: String,
    slices: Vec<SliceDe>,
}

#[derive(Deserialize)]
struct TermDe {
    coeff: String,
    monomial: MonomialDe,
}

#[derive(Deserialize)]
struct LinCombDe {
    source: String,
    target: String,
    terms: Vec<TermDe>,
}

#[derive(Deserialize)]
struct GenDe {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct RuleDe {
    name: String,
    family: String,
    lhs: MonomialDe,
    rhs: LinCombDe,
}

#[derive(Deserialize)]
struct PolygraphDe {
    name: String,
    generators: Vec<GenDe>,
    rules: Vec<RuleDe>,
}

type GenMap = BTreeMap<String, Arc<Gen2>>;

fn build_monomial(de: &MonomialDe, gens: &GenMap) -> Result<Monomial> {
    let src = Word::parse(&de.source)?;
    let mut slices = Vec::with_capacity(de.slices.len());
    for s in &de.slices {
        let gen = gens
            .get(&s.gen)
            .ok_or_else(|| LinrewError::UnknownGenerator(s.gen.clone()))?;
        slices.push(Slice::new(Word::parse(&s.left)?, gen.clone(), Word::parse(&s.right)?));
    }
    Monomial::new(src, slices)
}

fn build_lincomb(de: &LinCombDe, gens: &GenMap) -> Result<LinComb> {
    let src = Word::parse(&de.source)?;
    let tgt = Word::parse(&de.target)?;
    let mut out = LinComb::zero(src, tgt);
    for t in &de.terms {
        let coeff = BigRational::from_str(&t.coeff)
            .map_err(|e| LinrewError::Other(format!("bad coefficient {:?}: {e}", t.coeff)))?;
        let m = build_monomial(&t.monomial, gens)?;
        if (m.src(), m.tgt()) != (out.src(), out.tgt()) {
            return Err(LinrewError::BoundaryMismatch {
                expected: format!("{} -> {}", out.src(), out.tgt()),
                found: format!("{} -> {}", m.src(), m.tgt()),
            });
        }
        out.add_term(coeff, m);
    }
    Ok(out)
}

fn gen_map(p: &Polygraph) -> GenMap {
    p.generators.iter().map(|g| (g.id.clone(), g.clone())).collect()
}

/// Parse a polygraph from JSON text.
pub fn parse_polygraph(json: &str) -> Result<Polygraph> {
    let de: PolygraphDe = serde_json::from_str(json)
        .map_err(|e| LinrewError::Other(format!("polygraph JSON: {e}")))?;
    let mut gens: GenMap = BTreeMap::new();
    let mut generators = Vec::new();
    for g in &de.generators {
        let gen = Gen2::new(&g.id, &g.src, &g.tgt);
        gens.insert(g.id.clone(), gen.clone());
        generators.push(gen);
    }
    let mut rules = Vec::new();
    for r in &de.rules {
        let lhs = build_monomial(&r.lhs, &gens)?;
        let rhs = build_lincomb(&r.rhs, &gens)?;
        rules.push(Rule::new(&r.name, &r.family, lhs, rhs)?);
    }
    Polygraph::new(&de.name, generators, rules)
}

/// Parse a monomial from JSON text against a polygraph's generators.
pub fn parse_monomial(json: &str, p: &Polygraph) -> Result<Monomial> {
    let de: MonomialDe = serde_json::from_str(json)
        .map_err(|e| LinrewError::Other(format!("monomial JSON: {e}")))?;
    build_monomial(&de, &gen_map(p))
}

/// Parse a linear combination from JSON text against a polygraph's
/// generators. Accepts either a combination object or a bare monomial.
pub fn parse_lincomb(json: &str, p: &Polygraph) -> Result<LinComb> {
    let gens = gen_map(p);
    if let Ok(de) = serde_json::from_str::<LinCombDe>(json) {
        return build_lincomb(&de, &gens);
    }
    let de: MonomialDe = serde_json::from_str(json)
        .map_err(|e| LinrewError::Other(format!("cell JSON: {e}")))?;
    Ok(LinComb::from_monomial(build_monomial(&de, &gens)?))
}
