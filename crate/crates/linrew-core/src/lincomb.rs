//! Linear combinations of parallel monomials over exact rationals.

use crate::diagram::{Context, Monomial};
use crate::error::{LinrewError, Result};
use crate::word::Word;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A finite rational linear combination of monomials sharing a boundary
/// profile. Zero-coefficient terms are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinComb {
    src: Word,
    tgt: Word,
    terms: BTreeMap<Monomial, BigRational>,
}

impl LinComb {
    /// The zero 2-cell of a given boundary profile.
    pub fn zero(src: Word, tgt: Word) -> Self {
        LinComb { src, tgt, terms: BTreeMap::new() }
    }

    /// A single monomial with coefficient 1.
    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    /// A single scaled monomial.
    pub fn term(coeff: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let (src, tgt) = (m.src().clone(), m.tgt().clone());
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        LinComb { src, tgt, terms }
    }

    /// The identity 2-cell on a word, as a combination.
    pub fn identity(w: Word) -> Self {
        Self::from_monomial(Monomial::identity(w))
    }

    pub fn src(&self) -> &Word {
        &self.src
    }

    pub fn tgt(&self) -> &Word {
        &self.tgt
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_profile(&self, other: &LinComb) -> Result<()> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(LinrewError::BoundaryMismatch {
                expected: format!("{} -> {}", self.src, self.tgt),
                found: format!("{} -> {}", other.src, other.tgt),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        self.check_profile(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        self.add(&other.clone().neg())
    }

    /// In-place accumulation of a scaled monomial.
    pub fn add_term(&mut self, coeff: BigRational, m: Monomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, k: &BigRational) -> LinComb {
        if k.is_zero() {
            return LinComb::zero(self.src.clone(), self.tgt.clone());
        }
        LinComb {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn neg(self) -> LinComb {
        LinComb {
            src: self.src,
            tgt: self.tgt,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }

    /// Vertical composite, extended bilinearly.
    pub fn compose1(&self, other: &LinComb) -> Result<LinComb> {
        if self.tgt != other.src {
            return Err(LinrewError::BoundaryMismatch {
                expected: self.tgt.to_string(),
                found: other.src.to_string(),
            });
        }
        let mut out = LinComb::zero(self.src.clone(), other.tgt.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.compose1(m2)?);
            }
        }
        Ok(out)
    }

    /// Horizontal composite, extended bilinearly.
    pub fn compose0(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero(self.src.concat(&other.src), self.tgt.concat(&other.tgt));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.compose0(m2)?);
            }
        }
        Ok(out)
    }

    /// Whisker every term by identity words.
    pub fn whisker(&self, left: &Word, right: &Word) -> Result<LinComb> {
        let mut out = LinComb::zero(
            left.concat(&self.src).concat(right),
            left.concat(&self.tgt).concat(right),
        );
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.whisker(left, right)?);
        }
        Ok(out)
    }

    /// Plug every term of `self` into a context, extended linearly.
    pub fn plug_into(&self, ctx: &Context) -> Result<LinComb> {
        let mut out = LinComb::zero(ctx.m1.src().clone(), ctx.m4.tgt().clone());
        for (m, c) in &self.terms {
            out.add_term(c.clone(), ctx.plug(m)?);
        }
        Ok(out)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }
}

impl Add for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        LinComb::add(self, rhs).expect("profile mismatch in +")
    }
}

impl Sub for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        LinComb::sub(self, rhs).expect("profile mismatch in -")
    }
}

impl Neg for LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        LinComb::neg(self)
    }
}

impl Mul<&LinComb> for &BigRational {
    type Output = LinComb;
    fn mul(self, rhs: &LinComb) -> LinComb {
        rhs.scale(self)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, m)?;
        }
        Ok(())
    }
}

impl Serialize for LinComb {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LinComb", 3)?;
        st.serialize_field("source", &self.src)?;
        st.serialize_field("target", &self.tgt)?;
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "coeff": c.to_string(),
                    "monomial": serde_json::to_value(m).unwrap(),
                })
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
