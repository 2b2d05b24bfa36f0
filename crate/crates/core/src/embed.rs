//! Closed embeddings `G ↪ GL_I` read off from finite subcomodules of `k[G]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grpoly::{
    EvalWeights, GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring,
    TermOrder, Variable,
};
use crate::hopf::{in_leg, Check, HopfPresentation};
use crate::linalg::{Echelon, SparseVec};

pub const DEFAULT_MAX_DIM: usize = 64;
pub const DEFAULT_CERTIFICATE_WEIGHT: u32 = 64;

/// The coaction matrix of a finite subcomodule: `Δ(v_j) = Σ_i v_i ⊗ a_ij`.
#[derive(Clone, Debug)]
pub struct Comatrix {
    ring: Arc<Ring>,
    basis: Vec<GradedPoly>,
    index: Vec<InternalDegree>,
    entries: Vec<Vec<GradedPoly>>,
}

/// `ker(k[M_I] → k[G])`, with the completeness certificate.
#[derive(Clone, Debug)]
pub struct EmbeddingIdeal {
    pub ring: Arc<Ring>,
    pub generators: Vec<GradedPoly>,
    pub certificate: Certificate,
    /// The comatrix is upper unitriangular, so `det = 1` and no inverse is
    /// needed.
    pub unitriangular: bool,
}

/// Dimension comparison between `k[M_I]/J` and `k[G]` in each internal
/// degree whose evaluated weight is at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub bound: u32,
    pub degrees_checked: usize,
    pub complete: bool,
    pub generates: bool,
}

/// Indexes monomials so polynomials can be treated as sparse vectors.
#[derive(Default)]
struct MonomialTable {
    index: BTreeMap<Monomial, usize>,
}

impl MonomialTable {
    fn vector(&mut self, f: &GradedPoly) -> SparseVec {
        let mut v = SparseVec::new();
        for (m, c) in f.terms() {
            let n = self.index.len();
            let k = *self.index.entry(m.clone()).or_insert(n);
            v.insert(k, *c);
        }
        v
    }
}

/// Splits `Σ c·m_L⊗m_R` by right-leg monomial into `m_R ↦ Σ c·m_L`.
fn split_right(pres: &HopfPresentation, d: &GradedPoly) -> BTreeMap<Monomial, GradedPoly> {
    let ring = pres.ring();
    let n = ring.n_vars();
    let mut parts: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in d.terms() {
        let left = Monomial::from_exponents(m.exponents()[..n].to_vec());
        let right = Monomial::from_exponents(m.exponents()[n..].to_vec());
        parts.entry(right).or_default().push((left, *c));
    }
    parts
        .into_iter()
        .map(|(r, terms)| (r, GradedPoly::from_terms(ring, terms)))
        .collect()
}

/// Smallest subcomodule containing `1` and the seeds, as a homogeneous basis
/// sorted by evaluated internal degree and then by discovery order.
pub fn finite_subcomodule(
    pres: &HopfPresentation,
    seeds: &[GradedPoly],
    max_dim: usize,
) -> Result<Vec<GradedPoly>> {
    let ring = pres.ring();
    let mut table = MonomialTable::default();
    let mut span: Echelon<usize> = Echelon::new(ring.field());
    let mut found: Vec<GradedPoly> = Vec::new();
    let mut queue: Vec<GradedPoly> = vec![GradedPoly::one(ring)];
    for s in seeds {
        if !s.is_homogeneous() {
            return Err(Error::Invalid(format!("seed {} is not homogeneous", s)));
        }
        queue.push(pres.normal_form(s));
    }
    let mut k = 0;
    while k < queue.len() {
        let v = queue[k].clone();
        k += 1;
        if v.is_zero() {
            continue;
        }
        if !span.insert(found.len(), &table.vector(&v)) {
            continue;
        }
        found.push(v.clone());
        if found.len() > max_dim {
            return Err(Error::bound("subcomodule dimension", max_dim));
        }
        for left in split_right(pres, &pres.coproduct(&v)?).into_values() {
            queue.push(left);
        }
    }
    let w = EvalWeights::default();
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| (found[i].homogeneous_degree().unwrap().eval(w), i));
    Ok(order.into_iter().map(|i| found[i].clone()).collect())
}

/// The presentation's own comodule basis if it carries one, otherwise the
/// subcomodule generated by the presentation generators.
pub fn default_basis(pres: &HopfPresentation) -> Result<Vec<GradedPoly>> {
    if let Some(b) = pres.comodule_basis() {
        return Ok(b.to_vec());
    }
    let ring = pres.ring();
    let seeds: Vec<GradedPoly> = (0..ring.n_vars()).map(|i| GradedPoly::var(ring, i)).collect();
    finite_subcomodule(pres, &seeds, DEFAULT_MAX_DIM)
}

/// Reads off `a_ij` from `Δ(v_j) = Σ_i v_i ⊗ a_ij`.
pub fn comatrix(pres: &HopfPresentation, basis: &[GradedPoly]) -> Result<Comatrix> {
    let ring = pres.ring();
    let n = basis.len();
    let mut table = MonomialTable::default();
    let mut span: Echelon<usize> = Echelon::new(ring.field());
    let mut index = Vec::with_capacity(n);
    for (i, v) in basis.iter().enumerate() {
        let v = pres.normal_form(v);
        let Some(d) = v.homogeneous_degree() else {
            return Err(Error::Invalid(format!("basis vector {} is not homogeneous", v)));
        };
        if !span.insert(i, &table.vector(&v)) {
            return Err(Error::Invalid(format!("basis vector {} is dependent", v)));
        }
        index.push(d);
    }
    let mut entries = vec![vec![GradedPoly::zero(ring); n]; n];
    for (j, v) in basis.iter().enumerate() {
        for (right, left) in split_right(pres, &pres.coproduct(v)?) {
            let Some(comb) = span.express(&table.vector(&left)) else {
                return Err(Error::NotClosed(format!("Δ({}) has left leg {}", v, left)));
            };
            for (i, c) in comb {
                let t = GradedPoly::monomial(ring, right.clone(), c);
                entries[i][j] = &entries[i][j] + &t;
            }
        }
    }
    Ok(Comatrix {
        ring: ring.clone(),
        basis: basis.iter().map(|v| pres.normal_form(v)).collect(),
        index,
        entries,
    })
}

impl Comatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[GradedPoly] {
        &self.basis
    }

    /// `I = (|v_1|, …, |v_n|)`.
    pub fn index(&self) -> &[InternalDegree] {
        &self.index
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<GradedPoly>] {
        &self.entries
    }

    pub fn is_unitriangular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = &self.entries[i][j];
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => a.is_constant() && a.constant_term() == 1,
                    std::cmp::Ordering::Greater => a.is_zero(),
                    std::cmp::Ordering::Less => true,
                }
            })
        })
    }

    /// Degree coherence, counit and coassociativity on every entry.
    pub fn check(&self, pres: &HopfPresentation) -> Result<Vec<Check>> {
        let n = self.dim();
        let t2 = pres.tensor2();
        let mut out = Vec::new();
        let mut bad_degree = Vec::new();
        let mut bad_counit = Vec::new();
        let mut bad_delta = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let a = &self.entries[i][j];
                let want = self.index[j] - self.index[i];
                if !a.is_zero() && a.homogeneous_degree() != Some(want) {
                    bad_degree.push(format!("a{}{}", i + 1, j + 1));
                }
                if a.constant_term() != u32::from(i == j) {
                    bad_counit.push(format!("a{}{}", i + 1, j + 1));
                }
                let mut rhs = GradedPoly::zero(t2);
                for k in 0..n {
                    let l = in_leg(&self.entries[i][k], t2, 0);
                    let r = in_leg(&self.entries[k][j], t2, 1);
                    rhs = &rhs + &(&l * &r);
                }
                let diff = pres.tensor2_groebner().normal_form(&(&pres.coproduct(a)? - &rhs));
                if !diff.is_zero() {
                    bad_delta.push(format!("a{}{}", i + 1, j + 1));
                }
            }
        }
        for (name, bad) in [
            ("|a_ij| = I_j - I_i", bad_degree),
            ("ε(a_ij) = δ_ij", bad_counit),
            ("Δ(a_ij) = Σ a_ik ⊗ a_kj", bad_delta),
        ] {
            out.push(Check {
                name: name.into(),
                passed: bad.is_empty(),
                witness: (!bad.is_empty()).then(|| bad.join(", ")),
            });
        }
        Ok(out)
    }
}

fn matrix_var_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("x{}{}", i + 1, j + 1)
    } else {
        format!("x{}_{}", i + 1, j + 1)
    }
}

/// `k[M_I]`: one variable `x_ij` of degree `I_j - I_i` per entry.
pub fn matrix_ring(p: u64, index: &[InternalDegree]) -> Result<Arc<Ring>> {
    let n = index.len();
    let mut vars = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            vars.push(Variable::new(matrix_var_name(i, j, n), index[j] - index[i]));
        }
    }
    Ring::new(p, vars)
}

/// Counts standard monomials by internal degree, for degrees of evaluated
/// weight at most `bound`. `None` when some standard variable has
/// nonpositive weight, since then the counts need not be finite.
fn standard_counts(gb: &GroebnerBasis, bound: u32) -> Option<BTreeMap<InternalDegree, usize>> {
    let ring = gb.ring();
    let w = EvalWeights::default();
    for i in 0..ring.n_vars() {
        let v = Monomial::var(ring.n_vars(), i, 1);
        if gb.is_standard(&v) && ring.var(i).degree.eval(w) < 1 {
            return None;
        }
    }
    let mut out = BTreeMap::new();
    // unit weights, so total degree is at most the evaluated internal degree
    for m in gb.standard_monomials(bound) {
        let d = ring.degree(&m);
        if d.eval(w) <= bound as i64 {
            *out.entry(d).or_insert(0) += 1;
        }
    }
    Some(out)
}

/// Kernel of `x_ij ↦ a_ij` by eliminating the presentation generators from
/// `⟨x_ij - a_ij⟩ + relations`.
pub fn defining_ideal(
    pres: &HopfPresentation,
    cm: &Comatrix,
    cfg: &GroebnerConfig,
    certificate_weight: u32,
) -> Result<EmbeddingIdeal> {
    let g = pres.ring();
    let ng = g.n_vars();
    let n = cm.dim();
    let small = matrix_ring(g.prime() as u64, cm.index())?;

    let mut vars: Vec<Variable> = g.vars().to_vec();
    vars.extend(small.vars().iter().cloned());
    let big = Ring::builder(g.prime() as u64, vars)
        .order(TermOrder::Block { split: ng })
        .build()?;
    let gens_in_big: Vec<GradedPoly> = (0..ng).map(|i| GradedPoly::var(&big, i)).collect();
    let lift = |f: &GradedPoly| f.substitute(&big, &gens_in_big);

    let mut input = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x = GradedPoly::var(&big, ng + i * n + j);
            input.push(&x - &lift(cm.entry(i, j))?);
        }
    }
    for r in pres.groebner().elements() {
        input.push(lift(r)?);
    }
    let gb = GroebnerBasis::new(&big, &input, cfg)?;

    let mut back: Vec<GradedPoly> = vec![GradedPoly::zero(&small); ng];
    back.extend((0..n * n).map(|k| GradedPoly::var(&small, k)));
    let mut generators = Vec::new();
    for f in gb.elements() {
        if f.terms().iter().all(|(m, _)| m.exponents()[..ng].iter().all(|&e| e == 0)) {
            generators.push(f.substitute(&small, &back)?);
        }
    }

    // every generator of k[G] is a polynomial in the entries
    let generates = (0..ng).all(|i| {
        let nf = gb.normal_form(&GradedPoly::var(&big, i));
        nf.terms().iter().all(|(m, _)| m.exponents()[..ng].iter().all(|&e| e == 0))
    });

    let kernel = GroebnerBasis::new(&small, &generators, cfg)?;
    let (complete, degrees_checked) = match (
        standard_counts(&kernel, certificate_weight),
        standard_counts(pres.groebner(), certificate_weight),
    ) {
        (Some(a), Some(b)) => (a == b, a.len().max(b.len())),
        _ => (false, 0),
    };

    Ok(EmbeddingIdeal {
        ring: small,
        generators,
        certificate: Certificate {
            bound: certificate_weight,
            degrees_checked,
            complete,
            generates,
        },
        unitriangular: cm.is_unitriangular(),
    })
}

impl EmbeddingIdeal {
    /// Images of the generators under `x_ij ↦ a_ij`, reduced in `k[G]`.
    pub fn images(&self, pres: &HopfPresentation, cm: &Comatrix) -> Result<Vec<GradedPoly>> {
        let n = cm.dim();
        let a: Vec<GradedPoly> = (0..n * n).map(|k| cm.entry(k / n, k % n).clone()).collect();
        self.generators
            .iter()
            .map(|f| Ok(pres.normal_form(&f.substitute(pres.ring(), &a)?)))
            .collect()
    }

    pub fn vanishes(&self, pres: &HopfPresentation, cm: &Comatrix) -> Result<bool> {
        Ok(self.images(pres, cm)?.iter().all(|f| f.is_zero()))
    }
}
