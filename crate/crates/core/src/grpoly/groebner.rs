use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::{same_ring, GradedPoly};
use super::ring::{Monomial, Ring, TermOrder, Variable};
use crate::error::{Error, Result};

/// Bounds for Buchberger's algorithm. Exceeding either is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerConfig {
    /// Largest weight of an S-pair least common multiple.
    pub max_weight: u32,
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_weight: 64,
            max_pairs: 100_000,
        }
    }
}

/// Which reducer to use when several leading monomials divide a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    FirstDivisor,
    LastDivisor,
}

/// Reduced Gröbner basis of a left ideal (two-sided for parity-homogeneous
/// generators) in a graded-commutative ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<GradedPoly>,
    inhomogeneous_input: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
enum Pair {
    // (i, j) with i < j
    Spoly(usize, usize),
    // v^(b - e) · g_i for a truncated variable v of the leading monomial
    Nil(usize, usize),
}

fn check_ring(ring: &Arc<Ring>, gens: &[GradedPoly]) -> Result<()> {
    if gens.iter().all(|g| same_ring(g.ring(), ring)) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Multiplier that makes `u · lm(g)` carry coefficient `c`.
fn reducer_coeff(ring: &Ring, u: &Monomial, g: &GradedPoly, c: u32) -> u32 {
    let fp = ring.field();
    let lm = g.leading_monomial().unwrap();
    let neg = ring.koszul(u, lm);
    let lc = g.leading_coefficient().unwrap();
    let mut k = fp.mul(c, fp.inv(lc));
    if neg {
        k = fp.neg(k);
    }
    k
}

/// No term involves a sign-carrying or truncated variable.
fn plain(ring: &Ring, f: &GradedPoly) -> bool {
    f.terms()
        .iter()
        .all(|(m, _)| m.support().all(|v| ring.nil_bound(v).is_none()))
}

fn find_divisor(basis: &[GradedPoly], m: &Monomial, strategy: Strategy) -> Option<usize> {
    let test = |g: &GradedPoly| g.leading_monomial().unwrap().divides(m);
    match strategy {
        Strategy::FirstDivisor => basis.iter().position(test),
        Strategy::LastDivisor => basis.iter().rposition(test),
    }
}

/// Full reduction of `f` by `basis` (any generating set, not necessarily a
/// Gröbner basis).
fn reduce(ring: &Arc<Ring>, f: &GradedPoly, basis: &[GradedPoly], strategy: Strategy) -> GradedPoly {
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        match find_divisor(basis, &m, strategy) {
            Some(k) => {
                let g = &basis[k];
                let u = g.leading_monomial().unwrap().cofactor_in(&m);
                let coef = reducer_coeff(ring, &u, g, c);
                let sub = g.mul_term(&u, coef);
                p = p.add_scaled(&sub, ring.prime() - 1);
            }
            None => {
                rest.push((m, c));
                p.pop_lead();
            }
        }
    }
    GradedPoly::from_sorted(ring, rest)
}

impl GroebnerBasis {
    /// Runs Buchberger's algorithm with normal pair selection.
    pub fn new(ring: &Arc<Ring>, gens: &[GradedPoly], cfg: &GroebnerConfig) -> Result<Self> {
        check_ring(ring, gens)?;
        let inhomogeneous_input = gens.iter().any(|g| !g.is_homogeneous());
        if !ring.is_classical() && gens.iter().any(|g| !g.is_parity_homogeneous()) {
            return Err(Error::Invalid(
                "generators in a graded-commutative ring must have a parity".into(),
            ));
        }
        let classical = ring.is_classical();
        let mut basis: Vec<GradedPoly> = Vec::new();
        let mut queue: BTreeSet<(u32, Pair)> = BTreeSet::new();
        let mut pending: HashSet<Pair> = HashSet::new();
        let mut processed = 0usize;

        let push_poly = |basis: &mut Vec<GradedPoly>,
                         queue: &mut BTreeSet<(u32, Pair)>,
                         pending: &mut HashSet<Pair>,
                         g: GradedPoly|
         -> Result<()> {
            let g = g.monic();
            let j = basis.len();
            let lm = g.leading_monomial().unwrap().clone();
            for (i, h) in basis.iter().enumerate() {
                let lh = h.leading_monomial().unwrap();
                let l = lh.lcm(&lm);
                if !ring.is_valid(&l) {
                    continue;
                }
                // coprime pairs are harmless inside a commutative subring
                if lh.is_coprime(&lm) && (classical || (plain(ring, h) && plain(ring, &g))) {
                    continue;
                }
                let pair = Pair::Spoly(i, j);
                queue.insert((ring.weight(&l), pair));
                pending.insert(pair);
            }
            for v in lm.support() {
                if let Some(b) = ring.nil_bound(v) {
                    let e = lm.exponents()[v];
                    let w = ring.weight(&lm) + (b - e) as u32 * ring.weights()[v];
                    let pair = Pair::Nil(j, v);
                    queue.insert((w, pair));
                    pending.insert(pair);
                }
            }
            basis.push(g);
            Ok(())
        };

        for g in gens {
            let r = reduce(ring, g, &basis, Strategy::FirstDivisor);
            if !r.is_zero() {
                push_poly(&mut basis, &mut queue, &mut pending, r)?;
            }
        }

        while let Some(&(w, pair)) = queue.iter().next() {
            queue.remove(&(w, pair));
            pending.remove(&pair);
            if w > cfg.max_weight {
                return Err(Error::bound("Gröbner S-pair weight", cfg.max_weight));
            }
            processed += 1;
            if processed > cfg.max_pairs {
                return Err(Error::bound("Gröbner S-pair count", cfg.max_pairs));
            }
            let s = match pair {
                Pair::Spoly(i, j) => {
                    let (f, g) = (&basis[i], &basis[j]);
                    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                    let l = lf.lcm(lg);
                    if classical {
                        let chain = basis.iter().enumerate().any(|(k, h)| {
                            k != i
                                && k != j
                                && h.leading_monomial().unwrap().divides(&l)
                                && !pending.contains(&Pair::Spoly(i.min(k), i.max(k)))
                                && !pending.contains(&Pair::Spoly(j.min(k), j.max(k)))
                        });
                        if chain {
                            continue;
                        }
                    }
                    let uf = lf.cofactor_in(&l);
                    let ug = lg.cofactor_in(&l);
                    let a = reducer_coeff(ring, &uf, f, 1);
                    let b = reducer_coeff(ring, &ug, g, 1);
                    let sf = f.mul_term(&uf, a);
                    let sg = g.mul_term(&ug, b);
                    sf.add_scaled(&sg, ring.prime() - 1)
                }
                Pair::Nil(i, v) => {
                    let g = &basis[i];
                    let e = g.leading_monomial().unwrap().exponents()[v];
                    let b = ring.nil_bound(v).unwrap();
                    let u = Monomial::var(ring.n_vars(), v, b - e);
                    g.mul_term(&u, 1)
                }
            };
            let r = reduce(ring, &s, &basis, Strategy::FirstDivisor);
            if !r.is_zero() {
                push_poly(&mut basis, &mut queue, &mut pending, r)?;
            }
        }

        Ok(GroebnerBasis {
            ring: ring.clone(),
            basis: interreduce(ring, basis),
            inhomogeneous_input,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Reduced basis elements, monic, in increasing order of leading monomial.
    pub fn elements(&self) -> &[GradedPoly] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether some input generator was not homogeneous.
    pub fn inhomogeneous_input(&self) -> bool {
        self.inhomogeneous_input
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn normal_form(&self, f: &GradedPoly) -> GradedPoly {
        self.normal_form_with(f, Strategy::FirstDivisor)
    }

    pub fn normal_form_with(&self, f: &GradedPoly, strategy: Strategy) -> GradedPoly {
        reduce(&self.ring, f, &self.basis, strategy)
    }

    pub fn contains(&self, f: &GradedPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// A monomial is standard when no leading monomial divides it.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.ring.is_valid(m)
            && !self
                .basis
                .iter()
                .any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Standard monomials of weight at most `max_weight`, in increasing order.
    pub fn standard_monomials(&self, max_weight: u32) -> Vec<Monomial> {
        let ring = &self.ring;
        let n = ring.n_vars();
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec(
            gb: &GroebnerBasis,
            i: usize,
            w: u32,
            max: u32,
            cur: &mut Vec<u16>,
            out: &mut Vec<Monomial>,
        ) {
            let ring = &gb.ring;
            if i == cur.len() {
                let m = Monomial::from_exponents(cur.clone());
                if gb.is_standard(&m) {
                    out.push(m);
                }
                return;
            }
            let wi = ring.weights()[i];
            let mut e = 0u16;
            loop {
                cur[i] = e;
                let m = Monomial::from_exponents(cur.clone());
                // exponents beyond i are zero here, so pruning on divisibility is sound
                if !gb.is_standard(&m) {
                    break;
                }
                rec(gb, i + 1, w + e as u32 * wi, max, cur, out);
                e += 1;
                if w + e as u32 * wi > max {
                    break;
                }
            }
            cur[i] = 0;
        }
        rec(self, 0, 0, max_weight, &mut cur, &mut out);
        out.sort_by(|a, b| ring.cmp(a, b));
        out
    }

    /// Every S-polynomial and truncation multiple reduces to zero.
    pub fn is_confluent(&self) -> bool {
        let ring = &self.ring;
        let b = &self.basis;
        for i in 0..b.len() {
            let li = b[i].leading_monomial().unwrap();
            for v in li.support() {
                if let Some(bound) = ring.nil_bound(v) {
                    let u = Monomial::var(ring.n_vars(), v, bound - li.exponents()[v]);
                    if !self.contains(&b[i].mul_term(&u, 1)) {
                        return false;
                    }
                }
            }
            for j in i + 1..b.len() {
                let lj = b[j].leading_monomial().unwrap();
                let l = li.lcm(lj);
                if !ring.is_valid(&l) {
                    continue;
                }
                let ui = li.cofactor_in(&l);
                let uj = lj.cofactor_in(&l);
                let s = b[i]
                    .mul_term(&ui, reducer_coeff(ring, &ui, &b[i], 1))
                    .add_scaled(
                        &b[j].mul_term(&uj, reducer_coeff(ring, &uj, &b[j], 1)),
                        ring.prime() - 1,
                    );
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }
}

fn interreduce(ring: &Arc<Ring>, basis: Vec<GradedPoly>) -> Vec<GradedPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<GradedPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for g in sorted {
        let lm = g.leading_monomial().unwrap();
        if keep
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let g = &keep[i];
        let lm = g.leading_monomial().unwrap().clone();
        let others: Vec<GradedPoly> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let mut tail = g.clone();
        tail.pop_lead();
        let tail = reduce(ring, &tail, &others, Strategy::FirstDivisor);
        let head = GradedPoly::monomial(ring, lm, g.leading_coefficient().unwrap());
        out.push(head.add_scaled(&tail, 1).monic());
    }
    out
}

/// Result of eliminating variables: the contraction of the ideal to the ring
/// on the surviving variables.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// Ring on the surviving variables, in their original relative order.
    pub ring: Arc<Ring>,
    pub generators: Vec<GradedPoly>,
    /// Surviving original variable indices.
    pub kept: Vec<usize>,
}

/// Eliminates `remove` from the ideal generated by `gens` using a block order
/// with the removed variables in the dominant block.
pub fn eliminate(gens: &[GradedPoly], ring: &Arc<Ring>, remove: &[usize], cfg: &GroebnerConfig) -> Result<Elimination> {
    check_ring(ring, gens)?;
    let n = ring.n_vars();
    let rm: HashSet<usize> = remove.iter().copied().collect();
    let kept: Vec<usize> = (0..n).filter(|i| !rm.contains(i)).collect();
    let mut perm: Vec<usize> = (0..n).filter(|i| rm.contains(i)).collect();
    let split = perm.len();
    perm.extend(kept.iter().copied());

    let build = |idx: &[usize], order: TermOrder| -> Result<Arc<Ring>> {
        let vars: Vec<Variable> = idx.iter().map(|&i| ring.var(i).clone()).collect();
        let mut b = Ring::builder(ring.prime() as u64, vars)
            .weights(idx.iter().map(|&i| ring.weights()[i]).collect())
            .order(order);
        for (k, &i) in idx.iter().enumerate() {
            if let Some(bnd) = ring.nil_bound(i) {
                b = b.truncate(k, bnd);
            }
        }
        b.build()
    };
    let big = build(&perm, TermOrder::Block { split })?;
    let small = build(&kept, TermOrder::Grevlex)?;

    let images: Vec<GradedPoly> = {
        let mut pos = vec![0; n];
        for (k, &i) in perm.iter().enumerate() {
            pos[i] = k;
        }
        (0..n).map(|i| GradedPoly::var(&big, pos[i])).collect()
    };
    let moved: Vec<GradedPoly> = gens
        .iter()
        .map(|g| g.substitute(&big, &images))
        .collect::<Result<_>>()?;
    let gb = GroebnerBasis::new(&big, &moved, cfg)?;

    let mut back: Vec<GradedPoly> = Vec::with_capacity(n);
    for (k, _) in perm.iter().enumerate() {
        if k < split {
            back.push(GradedPoly::zero(&small));
        } else {
            back.push(GradedPoly::var(&small, k - split));
        }
    }
    let mut generators = Vec::new();
    for g in gb.elements() {
        if g.terms().iter().all(|(m, _)| m.exponents()[..split].iter().all(|&e| e == 0)) {
            generators.push(g.substitute(&small, &back)?);
        }
    }
    Ok(Elimination {
        ring: small,
        generators,
        kept,
    })
}
