use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::degree::InternalDegree;
use super::field::Fp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: InternalDegree,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: InternalDegree) -> Self {
        Variable {
            name: name.into(),
            degree,
        }
    }
}

/// Exponent vector in the canonical variable order of its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        Monomial(e)
    }

    pub fn var(n: usize, i: usize, e: u16) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn cofactor_in(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders available to a ring. Both compare by weighted degree first and
/// break ties reverse-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Grevlex,
    /// Variables `[0, split)` form the first block and dominate.
    Block { split: usize },
}

/// A graded-commutative polynomial ring over `F_p`.
///
/// Odd-degree variables anticommute when `p > 2` and square to zero. A
/// variable may additionally carry a truncation `x^b = 0`, folded into
/// monomial arithmetic the same way.
#[derive(Debug)]
pub struct Ring {
    field: Fp,
    vars: Vec<Variable>,
    weights: Vec<u32>,
    order: TermOrder,
    nil: Vec<u16>,
    odd: Vec<bool>,
    index: HashMap<String, usize>,
}

impl PartialEq for Ring {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.vars == o.vars
            && self.weights == o.weights
            && self.order == o.order
            && self.nil == o.nil
    }
}

impl Eq for Ring {}

pub struct RingBuilder {
    p: u64,
    vars: Vec<Variable>,
    weights: Option<Vec<u32>>,
    order: TermOrder,
    truncations: Vec<(usize, u16)>,
}

impl RingBuilder {
    pub fn weights(mut self, w: Vec<u32>) -> Self {
        self.weights = Some(w);
        self
    }

    pub fn order(mut self, order: TermOrder) -> Self {
        self.order = order;
        self
    }

    /// Impose `x_var^bound = 0` at the level of monomials.
    pub fn truncate(mut self, var: usize, bound: u16) -> Self {
        self.truncations.push((var, bound));
        self
    }

    pub fn build(self) -> Result<Arc<Ring>> {
        let field = Fp::new(self.p)?;
        let n = self.vars.len();
        let weights = self.weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n || weights.contains(&0) {
            return Err(Error::Invalid(
                "term-order weights must be positive, one per variable".into(),
            ));
        }
        if let TermOrder::Block { split } = self.order {
            if split > n {
                return Err(Error::Invalid("block split beyond variable count".into()));
            }
        }
        let mut index = HashMap::new();
        for (i, v) in self.vars.iter().enumerate() {
            if !is_identifier(&v.name) {
                return Err(Error::Invalid(format!("`{}` is not an identifier", v.name)));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{}`", v.name)));
            }
        }
        let odd: Vec<bool> = self
            .vars
            .iter()
            .map(|v| field.p() > 2 && v.degree.is_odd())
            .collect();
        let mut nil: Vec<u16> = odd.iter().map(|&o| if o { 2 } else { 0 }).collect();
        for (i, b) in self.truncations {
            if i >= n || b == 0 {
                return Err(Error::Invalid("bad truncation".into()));
            }
            nil[i] = if nil[i] == 0 { b } else { nil[i].min(b) };
        }
        Ok(Arc::new(Ring {
            field,
            vars: self.vars,
            weights,
            order: self.order,
            nil,
            odd,
            index,
        }))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn builder(p: u64, vars: Vec<Variable>) -> RingBuilder {
        RingBuilder {
            p,
            vars,
            weights: None,
            order: TermOrder::Grevlex,
            truncations: Vec::new(),
        }
    }

    /// Unit weights, graded reverse lexicographic order.
    pub fn new(p: u64, vars: Vec<Variable>) -> Result<Arc<Ring>> {
        Ring::builder(p, vars).build()
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    /// True when the variable anticommutes with other odd variables.
    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    /// Exponent at which the variable vanishes, if any.
    pub fn nil_bound(&self, i: usize) -> Option<u16> {
        match self.nil[i] {
            0 => None,
            b => Some(b),
        }
    }

    /// No signs and no truncations: the ring is an ordinary polynomial ring.
    pub fn is_classical(&self) -> bool {
        self.nil.iter().all(|&b| b == 0)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.vars.len())
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    pub fn degree(&self, m: &Monomial) -> InternalDegree {
        m.0.iter()
            .zip(&self.vars)
            .map(|(&e, v)| v.degree * e as i64)
            .sum()
    }

    pub fn is_odd_monomial(&self, m: &Monomial) -> bool {
        self.degree(m).is_odd() && self.prime() > 2
    }

    /// Whether the exponent vector respects every truncation.
    pub fn is_valid(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.nil)
            .all(|(&e, &b)| b == 0 || e < b)
    }

    fn cmp_range(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        let wa: u64 = (lo..hi).map(|i| a.0[i] as u64 * self.weights[i] as u64).sum();
        let wb: u64 = (lo..hi).map(|i| b.0[i] as u64 * self.weights[i] as u64).sum();
        if wa != wb {
            return wa.cmp(&wb);
        }
        for i in (lo..hi).rev() {
            if a.0[i] != b.0[i] {
                return b.0[i].cmp(&a.0[i]);
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.vars.len();
        match self.order {
            TermOrder::Grevlex => self.cmp_range(a, b, 0, n),
            TermOrder::Block { split } => self
                .cmp_range(a, b, 0, split)
                .then_with(|| self.cmp_range(a, b, split, n)),
        }
    }

    /// Product `a·b` normalized to canonical order. Returns `None` when the
    /// product vanishes and `Some((m, negative))` otherwise, where `negative`
    /// records the Koszul sign picked up while sorting.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let n = self.vars.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let e = a.0[i] as u32 + b.0[i] as u32;
            let bound = self.nil[i] as u32;
            if bound != 0 && e >= bound {
                return None;
            }
            out.push(u16::try_from(e).expect("exponent overflow"));
        }
        Some((Monomial(out), self.koszul(a, b)))
    }

    /// Sign of moving the odd letters of `b` left past the odd letters of `a`
    /// with larger index.
    pub(crate) fn koszul(&self, a: &Monomial, b: &Monomial) -> bool {
        if self.prime() == 2 {
            return false;
        }
        let mut suffix = 0u32;
        let mut parity = 0u32;
        for i in (0..self.vars.len()).rev() {
            if self.odd[i] {
                parity += (b.0[i] as u32) * suffix;
                suffix += a.0[i] as u32;
            }
        }
        parity % 2 == 1
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .support()
            .map(|i| {
                let e = m.0[i];
                if e == 1 {
                    self.vars[i].name.clone()
                } else {
                    format!("{}^{}", self.vars[i].name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "F_{}[{}]", self.prime(), names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_ring() -> Arc<Ring> {
        Ring::new(
            5,
            vec![
                Variable::new("u", InternalDegree::constant(1)),
                Variable::new("v", InternalDegree::constant(3)),
                Variable::new("w", InternalDegree::constant(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn odd_letters_anticommute() {
        let r = odd_ring();
        let u = Monomial::var(3, 0, 1);
        let v = Monomial::var(3, 1, 1);
        let (m, neg) = r.mul_mono(&v, &u).unwrap();
        assert_eq!(m.exponents(), &[1, 1, 0]);
        assert!(neg);
        let (_, neg) = r.mul_mono(&u, &v).unwrap();
        assert!(!neg);
        assert!(r.mul_mono(&u, &u).is_none());
    }

    #[test]
    fn characteristic_two_has_no_signs_or_odd_squares() {
        let r = Ring::new(
            2,
            vec![
                Variable::new("a", InternalDegree::constant(1)),
                Variable::new("b", InternalDegree::constant(1)),
            ],
        )
        .unwrap();
        let a = Monomial::var(2, 0, 1);
        let b = Monomial::var(2, 1, 1);
        assert!(!r.mul_mono(&b, &a).unwrap().1);
        assert_eq!(r.mul_mono(&a, &a).unwrap().0.exponents(), &[2, 0]);
        assert!(r.is_classical());
    }

    #[test]
    fn block_order_prefers_first_block() {
        let r = Ring::builder(
            3,
            vec![
                Variable::new("a", InternalDegree::ZERO),
                Variable::new("b", InternalDegree::ZERO),
            ],
        )
        .order(TermOrder::Block { split: 1 })
        .build()
        .unwrap();
        let a = Monomial::var(2, 0, 1);
        let b5 = Monomial::var(2, 1, 5);
        assert_eq!(r.cmp(&a, &b5), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_names_and_weights() {
        assert!(Ring::new(2, vec![Variable::new("1x", InternalDegree::ZERO)]).is_err());
        assert!(Ring::builder(2, vec![Variable::new("x", InternalDegree::ZERO)])
            .weights(vec![0])
            .build()
            .is_err());
    }
}
