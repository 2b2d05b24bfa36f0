use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::degree::InternalDegree;
use super::ring::{Monomial, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial in a graded-commutative ring.
///
/// Terms are kept sorted by decreasing monomial in the ring's term order; no
/// stored coefficient is zero and every monomial respects the ring's
/// truncations.
#[derive(Clone)]
pub struct GradedPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for GradedPoly {}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({})", self)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        GradedPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, ring.one(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        let m = Monomial::var(ring.n_vars(), i, 1);
        Self::monomial(ring, m, 1)
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        let c = c % ring.prime();
        let terms = if c == 0 || !ring.is_valid(&m) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        GradedPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let fp = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            if !ring.is_valid(&m) {
                continue;
            }
            let e = acc.entry(m).or_insert(0);
            *e = fp.add(*e, c % fp.p());
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        GradedPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted, nonzero and valid.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Self {
        GradedPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn pop_lead(&mut self) {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|t| t.1)
            .unwrap_or(0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> u32 {
        self.coefficient(&self.ring.one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Common internal degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<InternalDegree> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        let d = it.next().unwrap_or(InternalDegree::ZERO);
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Homogeneous with respect to parity, which is all the sign rules need.
    pub fn is_parity_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.is_odd_monomial(m));
        match it.next() {
            None => true,
            Some(o) => it.all(|x| x == o),
        }
    }

    /// Parity of a parity-homogeneous polynomial (`false` for zero).
    pub fn is_odd(&self) -> bool {
        self.terms
            .first()
            .map(|(m, _)| self.ring.is_odd_monomial(m))
            .unwrap_or(false)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let fp = self.ring.field();
        let c = c % fp.p();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), fp.mul(*a, c))).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `self + c·o` by merging the sorted term lists.
    pub(crate) fn add_scaled(&self, o: &Self, c: u32) -> Self {
        let fp = self.ring.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = if i == self.terms.len() {
                std::cmp::Ordering::Less
            } else if j == o.terms.len() {
                std::cmp::Ordering::Greater
            } else {
                ring.cmp(&self.terms[i].0, &o.terms[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let v = fp.mul(o.terms[j].1, c);
                    if v != 0 {
                        out.push((o.terms[j].0.clone(), v));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = fp.add(self.terms[i].1, fp.mul(o.terms[j].1, c));
                    if v != 0 {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GradedPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_scaled(o, 1))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_scaled(o, self.ring.prime() - 1))
    }

    /// `c·m·self`, multiplying by the monomial on the left.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        let fp = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, a) in &self.terms {
            if let Some((prod, neg)) = self.ring.mul_mono(m, t) {
                let mut v = fp.mul(*a, c);
                if neg {
                    v = fp.neg(v);
                }
                if v != 0 {
                    terms.push((prod, v));
                }
            }
        }
        // Term orders are multiplicative, so the surviving terms stay sorted.
        GradedPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let fp = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some((m, neg)) = self.ring.mul_mono(a, b) {
                    let mut v = fp.mul(*ca, *cb);
                    if neg {
                        v = fp.neg(v);
                    }
                    let e = acc.entry(m).or_insert(0);
                    *e = fp.add(*e, v);
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    ///
    /// Each monomial is evaluated as the ordered product of the images of its
    /// letters, so signs are correct whenever every image has the parity of
    /// the variable it replaces.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[GradedPoly]) -> Result<GradedPoly> {
        if images.len() != self.ring.n_vars() {
            return Err(Error::Invalid("substitution needs one image per variable".into()));
        }
        if images.iter().any(|g| !same_ring(g.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: HashMap<(usize, u16), GradedPoly> = HashMap::new();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = GradedPoly::constant(target, *c as i64);
            for i in m.support() {
                let e = m.exponents()[i];
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32))
                    .clone();
                prod = &prod * &p;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.add_scaled(&prod, 1);
        }
        Ok(out)
    }

    /// Substitutes only the listed variables and keeps the rest.
    pub fn substitute_some(&self, replacements: &[(usize, GradedPoly)]) -> GradedPoly {
        let ring = self.ring.clone();
        if !replacements.iter().any(|(i, _)| self.uses_var(*i)) {
            return self.clone();
        }
        let mut images: Vec<GradedPoly> =
            (0..ring.n_vars()).map(|i| GradedPoly::var(&ring, i)).collect();
        for (i, q) in replacements {
            images[*i] = q.clone();
        }
        self.substitute(&ring, &images)
            .expect("images live in the same ring")
    }

    pub fn to_string_with(&self, ring: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let fp = ring.field();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = fp.signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if s < 0 { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&format!("{}*", mag));
                }
                out.push_str(&ring.format_monomial(m));
            }
        }
        out
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&self.ring))
    }
}

// Operator forms panic on a ring mismatch; the `checked_*` methods report it.
impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        self.checked_add(o).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: &GradedPoly) -> GradedPoly {
        self.checked_sub(o).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        self.checked_mul(o).expect("ring mismatch in multiplication")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(self.ring.prime() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::Variable;
    use super::*;

    fn ring5() -> Arc<Ring> {
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
    fn odd_product_picks_up_sign() {
        let r = ring5();
        let u = GradedPoly::var(&r, 0);
        let v = GradedPoly::var(&r, 1);
        let vu = &v * &u;
        let uv = &u * &v;
        assert_eq!(vu, -&uv);
        assert_eq!(vu.to_string(), "-u*v");
        assert!((&u * &u).is_zero());
    }

    #[test]
    fn one_is_identity() {
        let r = ring5();
        let f = &(&GradedPoly::var(&r, 0) * &GradedPoly::var(&r, 2)) + &GradedPoly::constant(&r, 3);
        assert_eq!(&GradedPoly::one(&r) * &f, f);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = ring5();
        let b = Ring::new(3, vec![Variable::new("u", InternalDegree::ZERO)]).unwrap();
        let x = GradedPoly::var(&a, 0);
        let y = GradedPoly::var(&b, 0);
        assert_eq!(x.checked_mul(&y), Err(Error::RingMismatch));
    }

    #[test]
    fn substitution_respects_signs() {
        let r = ring5();
        // u*v with u -> v, v -> u gives v*u = -u*v
        let uv = &GradedPoly::var(&r, 0) * &GradedPoly::var(&r, 1);
        let imgs = vec![
            GradedPoly::var(&r, 1),
            GradedPoly::var(&r, 0),
            GradedPoly::var(&r, 2),
        ];
        assert_eq!(uv.substitute(&r, &imgs).unwrap(), -&uv);
    }
}
