//! Rule systems: named, oriented rewriting rules whose left-hand sides are
//! single monomials and whose right-hand sides are linear combinations.

use crate::diagram::{Gen2, Monomial};
use crate::error::{LinrewError, Result};
use crate::lincomb::LinComb;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// An oriented rewriting rule `lhs => rhs` with a single-monomial left side.
#[derive(Clone, Debug, Serialize)]
pub struct Rule {
    pub name: String,
    /// Family tag grouping schematic instances (e.g. all Yang-Baxter rules).
    pub family: String,
    pub lhs: Monomial,
    pub rhs: LinComb,
}

impl Rule {
    pub fn new(name: &str, family: &str, lhs: Monomial, rhs: LinComb) -> Result<Self> {
        if lhs.src() != rhs.src() || lhs.tgt() != rhs.tgt() {
            return Err(LinrewError::BoundaryMismatch {
                expected: format!("{} -> {}", lhs.src(), lhs.tgt()),
                found: format!("{} -> {}", rhs.src(), rhs.tgt()),
            });
        }
        if lhs.is_identity() {
            return Err(LinrewError::InvalidDiagram(format!(
                "rule {name}: left-hand side must not be an identity"
            )));
        }
        Ok(Rule { name: name.to_string(), family: family.to_string(), lhs, rhs })
    }
}

/// A presentation: generating 2-cells plus oriented rules between parallel
/// 2-cells.
#[derive(Clone, Debug, Serialize)]
pub struct Polygraph {
    pub name: String,
    pub generators: Vec<Arc<Gen2>>,
    pub rules: Vec<Rule>,
}

impl Polygraph {
    pub fn new(name: &str, generators: Vec<Arc<Gen2>>, rules: Vec<Rule>) -> Result<Self> {
        let p = Polygraph { name: name.to_string(), generators, rules };
        p.validate()?;
        Ok(p)
    }

    pub fn generator(&self, id: &str) -> Result<Arc<Gen2>> {
        self.generators
            .iter()
            .find(|g| g.id == id)
            .cloned()
            .ok_or_else(|| LinrewError::UnknownGenerator(id.to_string()))
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for g in &self.generators {
            if !ids.insert(&g.id) {
                return Err(LinrewError::InvalidDiagram(format!(
                    "duplicate generator id {}",
                    g.id
                )));
            }
        }
        let known: BTreeSet<&Arc<Gen2>> = self.generators.iter().collect();
        let mut names = BTreeSet::new();
        for r in &self.rules {
            if !names.insert(&r.name) {
                return Err(LinrewError::InvalidDiagram(format!("duplicate rule name {}", r.name)));
            }
            for s in r.lhs.slices() {
                if !known.contains(&s.gen) {
                    return Err(LinrewError::UnknownGenerator(s.gen.id.clone()));
                }
            }
            for m in r.rhs.monomials() {
                for s in m.slices() {
                    if !known.contains(&s.gen) {
                        return Err(LinrewError::UnknownGenerator(s.gen.id.clone()));
                    }
                }
            }
        }
        Ok(())
    }
}
