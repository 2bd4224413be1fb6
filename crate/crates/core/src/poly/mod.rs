//! Multivariate polynomials with big-integer coefficients over a fixed,
//! named variable universe, and the closed-form polynomials of the diagonal
//! family.
//!
//! Monomials are dense exponent vectors. The monomial order is graded
//! lexicographic with the universe order ascending, so the last variable is
//! the largest; it is used for printing and for making the leading
//! coefficient positive.

mod diagonal;

pub use diagonal::{l_form, l_product, monsky_diagonal, monsky_diagonal_raw, sigma, sigma_bar, unfactored_relation};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact evaluation field.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials are over different variable sets")]
    VariableUniverseMismatch,
    #[error("no value for variable {0}")]
    MissingVariable(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division leaves a nonzero remainder")]
    NotDivisible,
    #[error("index {index} outside 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Monomial = Vec<u16>;

fn degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Graded lexicographic comparison; the last variable is the largest.
pub fn grlex(a: &[u16], b: &[u16]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Monomial ordered by [`grlex`].
#[derive(Clone, Debug, PartialEq, Eq)]
struct GrKey(Monomial);

impl Ord for GrKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for GrKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: HashMap<Monomial, BigInt>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: HashMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn var(vars: Arc<[String]>, index: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[index] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(m, BigInt::one());
        p
    }

    /// Builds from `(coefficient, exponents)` pairs, merging repeats.
    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (BigInt, Monomial)>) -> Self {
        let mut p = Self::zero(vars);
        for (c, m) in terms {
            assert_eq!(m.len(), p.vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &[u16]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    fn same_universe(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableUniverseMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_universe(other)?;
        let mut out = Self::zero(self.vars.clone());
        out.terms.reserve(self.terms.len().max(other.terms.len()));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.vars.clone(), 1);
        for _ in 0..e {
            out = out.mul(self).expect("same universe");
        }
        out
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| degree(m)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| degree(m));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Result<Self, PolyError> {
        let mut g = self.content()?;
        if self.leading_term().expect("nonzero").1.is_negative() {
            g = -g;
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect() })
    }

    /// Exact quotient `self / divisor`, failing on any remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.same_universe(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::ZeroPolynomial)?;
        let mut rem: BTreeMap<GrKey, BigInt> = self.terms.iter().map(|(m, c)| (GrKey(m.clone()), c.clone())).collect();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((GrKey(m), c)) = rem.pop_last() {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return Err(PolyError::NotDivisible);
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qm: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            for (dm, dc) in &divisor.terms {
                if dm == lm {
                    continue;
                }
                let key = GrKey(qm.iter().zip(dm).map(|(a, b)| a + b).collect());
                let entry = rem.entry(key).or_default();
                *entry -= &q * dc;
                if entry.is_zero() {
                    let key = GrKey(qm.iter().zip(dm).map(|(a, b)| a + b).collect());
                    rem.remove(&key);
                }
            }
            quot.add_term(qm, q);
        }
        Ok(quot)
    }

    /// Exact value at `values` (one per variable, in universe order).
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, PolyError> {
        if values.len() < self.vars.len() {
            return Err(PolyError::MissingVariable(self.vars[values.len()].clone()));
        }
        // Scale to a common denominator so the sum runs over integers.
        let den = values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let nums: Vec<BigInt> = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let top = self.total_degree();
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(nums.len());
        for x in &nums {
            let mut row = vec![BigInt::one()];
            for _ in 0..top {
                let next = row.last().unwrap() * x;
                row.push(next);
            }
            powers.push(row);
        }
        let den_pow: Vec<BigInt> = {
            let mut row = vec![BigInt::one()];
            for _ in 0..top {
                let next = row.last().unwrap() * &den;
                row.push(next);
            }
            row
        };
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c * &den_pow[(top - degree(m)) as usize];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            acc += term;
        }
        Ok(Rational::new(acc, den_pow[top as usize].clone()))
    }

    /// Evaluation with values keyed by variable name.
    pub fn eval_named(&self, values: &HashMap<String, Rational>) -> Result<Rational, PolyError> {
        let ordered = self
            .vars
            .iter()
            .map(|v| values.get(v).cloned().ok_or_else(|| PolyError::MissingVariable(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval(&ordered)
    }

    /// Same polynomial over a renamed universe of the same size.
    pub fn with_variables(&self, vars: Arc<[String]>) -> Result<Self, PolyError> {
        if vars.len() != self.vars.len() {
            return Err(PolyError::VariableUniverseMismatch);
        }
        Ok(MultiPoly { vars, terms: self.terms.clone() })
    }

    /// Canonical text form, e.g. `+2*A1*B2 -1*A2^2`; `0` for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms() {
            let mut s = if c.is_negative() { format!("{c}") } else { format!("+{c}") };
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{}", self.vars[i])),
                    _ => s.push_str(&format!("*{}^{e}", self.vars[i])),
                }
            }
            parts.push(s);
        }
        parts.join(" ")
    }

    /// Parses sums of products such as `+2*A1*B2 -A2^2 + 3`. Coefficients
    /// default to 1 and factors may repeat.
    pub fn parse(vars: Arc<[String]>, text: &str) -> Result<Self, PolyError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero(vars.clone());
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            if term.is_empty() {
                return Err(PolyError::Parse(format!("empty term near {rest:?}")));
            }
            let mut coeff = if negative { -BigInt::one() } else { BigInt::one() };
            let mut m: Monomial = vec![0; vars.len()];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in {term:?}")));
                }
                if factor.bytes().all(|b| b.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|e| PolyError::Parse(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u16>().map_err(|_| PolyError::Parse(format!("bad exponent {e:?}")))?),
                    None => (factor, 1),
                };
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable {name:?}")))?;
                m[i] += exp;
            }
            p.add_term(m, coeff);
            rest = tail;
        }
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            variables: self.vars.to_vec(),
            terms: self
                .terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    coefficient: c.to_string(),
                    monomial: m
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (self.vars[i].clone(), e))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, PolyError> {
        let vars: Arc<[String]> = json.variables.clone().into();
        let mut p = Self::zero(vars.clone());
        for t in &json.terms {
            let c: BigInt =
                t.coefficient.parse().map_err(|_| PolyError::Parse(format!("bad coefficient {:?}", t.coefficient)))?;
            let mut m: Monomial = vec![0; vars.len()];
            for (name, &e) in &t.monomial {
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable {name:?}")))?;
                m[i] = e;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON list-of-terms form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub monomial: BTreeMap<String, u16>,
}

/// A variable universe from names.
pub fn universe<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

#[cfg(test)]
mod tests;
