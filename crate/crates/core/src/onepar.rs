//! Graded one-parameter subgroups: the coordinate ring of `V*_r(GL_I)`, the
//! truncated exponential `exp(X^0, …, X^{r-1}, Y)(t, s)`, and `k[V*_r(G)]`
//! cut out by an embedding's defining equations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::embed::{self, Comatrix, EmbeddingIdeal};
use crate::error::{Error, Result};
use crate::grpoly::{
    Fp, GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring, Variable,
};
use crate::hopf::{Height, HopfPresentation};

/// `(cohomological, internal)`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub cohom: u32,
    pub internal: InternalDegree,
}

impl Bidegree {
    pub fn new(cohom: u32, internal: InternalDegree) -> Self {
        Bidegree { cohom, internal }
    }
}

impl std::fmt::Display for Bidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.cohom, self.internal)
    }
}

/// Which matrix entry a variable of `k[V*_r(GL_I)]` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    X { l: u32, i: usize, j: usize },
    Y { i: usize, j: usize },
}

#[derive(Clone, Debug)]
struct Layout {
    p: u32,
    r: u32,
    index: Vec<InternalDegree>,
}

impl Layout {
    fn new(index: &[InternalDegree], r: u32, p: u32) -> Result<Self> {
        if index.is_empty() || r == 0 {
            return Err(Error::Invalid("need a nonempty index and r ≥ 1".into()));
        }
        Fp::new(p as u64)?;
        Ok(Layout {
            p,
            r,
            index: index.to_vec(),
        })
    }

    fn n(&self) -> usize {
        self.index.len()
    }

    fn matrices(&self) -> usize {
        self.r as usize + usize::from(self.p > 2)
    }

    fn n_vars(&self) -> usize {
        self.matrices() * self.n() * self.n()
    }

    fn x(&self, l: u32, i: usize, j: usize) -> usize {
        (l as usize * self.n() + i) * self.n() + j
    }

    fn y(&self, i: usize, j: usize) -> usize {
        (self.r as usize * self.n() + i) * self.n() + j
    }

    fn kind(&self, k: usize) -> VarKind {
        let n = self.n();
        let (m, i, j) = (k / (n * n), (k / n) % n, k % n);
        if m < self.r as usize {
            VarKind::X { l: m as u32, i, j }
        } else {
            VarKind::Y { i, j }
        }
    }

    fn name(&self, kind: VarKind) -> String {
        let ij = |i: usize, j: usize| {
            if self.n() < 10 {
                format!("{}{}", i + 1, j + 1)
            } else {
                format!("{}_{}", i + 1, j + 1)
            }
        };
        match kind {
            VarKind::X { l, i, j } if self.r == 1 => {
                let _ = l;
                format!("X_{}", ij(i, j))
            }
            VarKind::X { l, i, j } => format!("X{}_{}", l, ij(i, j)),
            VarKind::Y { i, j } => format!("Y_{}", ij(i, j)),
        }
    }

    fn bidegree(&self, kind: VarKind) -> Bidegree {
        let p = self.p as i64;
        match kind {
            VarKind::X { l, i, j } => {
                let pl = p.pow(l);
                let cohom = if self.p == 2 { pl } else { 2 * pl };
                Bidegree::new(
                    cohom as u32,
                    self.index[j] - self.index[i] - InternalDegree::t() * pl,
                )
            }
            VarKind::Y { i, j } => Bidegree::new(
                p.pow(self.r) as u32,
                self.index[j] - self.index[i] - InternalDegree::s(),
            ),
        }
    }

    fn t_weight(&self) -> u32 {
        if self.p == 2 {
            1
        } else {
            2
        }
    }

    fn variables(&self) -> (Vec<Variable>, Vec<u32>) {
        (0..self.n_vars())
            .map(|k| {
                let kind = self.kind(k);
                let b = self.bidegree(kind);
                (Variable::new(self.name(kind), b.internal), b.cohom)
            })
            .unzip()
    }

    /// `k[X^l_ij, Y_ij]` weighted by cohomological degree.
    fn matrix_ring(&self) -> Result<Arc<Ring>> {
        let (vars, weights) = self.variables();
        Ring::builder(self.p as u64, vars).weights(weights).build()
    }

    /// The same variables followed by `t` (truncated at `p^r`) and, for
    /// `p > 2`, the odd `s`.
    fn working_ring(&self) -> Result<Arc<Ring>> {
        let (mut vars, mut weights) = self.variables();
        vars.push(Variable::new("t", InternalDegree::t()));
        weights.push(self.t_weight());
        if self.p > 2 {
            vars.push(Variable::new("s", InternalDegree::s()));
            weights.push(self.p.pow(self.r));
        }
        let t = vars.len() - 1 - usize::from(self.p > 2);
        Ring::builder(self.p as u64, vars)
            .weights(weights)
            .truncate(t, self.p.pow(self.r) as u16)
            .build()
    }

    fn matrix(&self, ring: &Arc<Ring>, m: usize) -> Vec<GradedPoly> {
        let n = self.n();
        (0..n * n)
            .map(|k| GradedPoly::var(ring, m * n * n + k))
            .collect()
    }

    /// `(X^l)^p`, `[X^l, X^k]`, and for `p > 2` also `Y^2`, `[X^l, Y]`.
    fn relations(&self, ring: &Arc<Ring>) -> Vec<GradedPoly> {
        let n = self.n();
        let mats: Vec<Vec<GradedPoly>> = (0..self.matrices()).map(|m| self.matrix(ring, m)).collect();
        let mut out = Vec::new();
        let mut push = |m: Vec<GradedPoly>| out.extend(m.into_iter().filter(|f| !f.is_zero()));
        for l in 0..self.r as usize {
            push(mat_pow(ring, &mats[l], n, self.p));
        }
        if self.p > 2 {
            let y = &mats[self.r as usize];
            push(mat_mul(y, y, n));
        }
        for a in 0..self.matrices() {
            for b in a + 1..self.matrices() {
                let ab = mat_mul(&mats[a], &mats[b], n);
                let ba = mat_mul(&mats[b], &mats[a], n);
                push(ab.iter().zip(&ba).map(|(x, y)| x - y).collect());
            }
        }
        out
    }
}

fn mat_identity(ring: &Arc<Ring>, n: usize) -> Vec<GradedPoly> {
    (0..n * n)
        .map(|k| {
            if k / n == k % n {
                GradedPoly::one(ring)
            } else {
                GradedPoly::zero(ring)
            }
        })
        .collect()
}

fn mat_mul(a: &[GradedPoly], b: &[GradedPoly], n: usize) -> Vec<GradedPoly> {
    let ring = a[0].ring();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = GradedPoly::zero(ring);
            for k in 0..n {
                let (x, y) = (&a[i * n + k], &b[k * n + j]);
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            out.push(acc);
        }
    }
    out
}

fn mat_pow(ring: &Arc<Ring>, a: &[GradedPoly], n: usize, e: u32) -> Vec<GradedPoly> {
    let mut out = mat_identity(ring, n);
    for _ in 0..e {
        out = mat_mul(&out, a, n);
    }
    out
}

/// `I + A + A^2/2! + … + A^{p-1}/(p-1)!`
fn mat_exp(ring: &Arc<Ring>, a: &[GradedPoly], n: usize) -> Vec<GradedPoly> {
    let fp = ring.field();
    let mut out = mat_identity(ring, n);
    let mut power = mat_identity(ring, n);
    for k in 1..fp.p() {
        power = mat_mul(&power, a, n);
        let c = fp.inv(fp.factorial(k as u64));
        for (o, x) in out.iter_mut().zip(&power) {
            *o = &*o + &x.scale(c);
        }
    }
    out
}

/// `Z = exp(tX^0)·exp(t^p X^1)···exp(t^{p^{r-1}} X^{r-1})·exp(Ys)`, entries in
/// `k[V*_r(GL_I)][t, s]/(t^{p^r})` written as coefficient times `t^k s^ε`.
#[derive(Clone, Debug)]
pub struct ExpMatrix {
    layout: Layout,
    coeffs: Arc<Ring>,
    ring: Arc<Ring>,
    entries: Vec<GradedPoly>,
}

pub fn exp_matrix(index: &[InternalDegree], r: u32, p: u32) -> Result<ExpMatrix> {
    let layout = Layout::new(index, r, p)?;
    let ring = layout.working_ring()?;
    let coeffs = layout.matrix_ring()?;
    let n = layout.n();
    let nv = layout.n_vars();
    let t = GradedPoly::var(&ring, nv);
    let mut z = mat_identity(&ring, n);
    for l in 0..r {
        let tl = t.pow(p.pow(l));
        let a: Vec<GradedPoly> = (0..n * n)
            .map(|k| &GradedPoly::var(&ring, layout.x(l, k / n, k % n)) * &tl)
            .collect();
        z = mat_mul(&z, &mat_exp(&ring, &a, n), n);
    }
    if p > 2 {
        // Ys squares to zero, so its exponential is I + Ys
        let s = GradedPoly::var(&ring, nv + 1);
        let mut e = mat_identity(&ring, n);
        for k in 0..n * n {
            let ys = &GradedPoly::var(&ring, layout.y(k / n, k % n)) * &s;
            e[k] = &e[k] + &ys;
        }
        z = mat_mul(&z, &e, n);
    }
    Ok(ExpMatrix {
        layout,
        coeffs,
        ring,
        entries: z,
    })
}

impl ExpMatrix {
    pub fn dim(&self) -> usize {
        self.layout.n()
    }

    /// Ring of the entries: the matrix variables, then `t`, then `s`.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Ring of the coefficients `β_k`, `σ_k`.
    pub fn coefficient_ring(&self) -> &Arc<Ring> {
        &self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i * self.dim() + j]
    }

    pub fn entries(&self) -> &[GradedPoly] {
        &self.entries
    }

    pub fn t_power_bound(&self) -> u32 {
        self.layout.p.pow(self.layout.r)
    }

    /// The matrix `X^l` over the coefficient ring.
    pub fn x(&self, l: u32) -> Vec<GradedPoly> {
        self.layout.matrix(&self.coeffs, l as usize)
    }

    /// The matrix `Y` over the coefficient ring; `p > 2` only.
    pub fn y(&self) -> Option<Vec<GradedPoly>> {
        (self.layout.p > 2).then(|| self.layout.matrix(&self.coeffs, self.layout.r as usize))
    }

    /// Coefficient matrix of `t^k s^eps`.
    fn coefficient(&self, k: u32, eps: u16) -> Vec<GradedPoly> {
        let nv = self.layout.n_vars();
        self.entries
            .iter()
            .map(|z| {
                let terms = z.terms().iter().filter_map(|(m, c)| {
                    let e = m.exponents();
                    let s = e.get(nv + 1).copied().unwrap_or(0);
                    (e[nv] as u32 == k && s == eps)
                        .then(|| (Monomial::from_exponents(e[..nv].to_vec()), *c))
                });
                GradedPoly::from_terms(&self.coeffs, terms)
            })
            .collect()
    }

    pub fn beta(&self, k: u32) -> Vec<GradedPoly> {
        self.coefficient(k, 0)
    }

    /// Zero matrix when `p = 2`.
    pub fn sigma(&self, k: u32) -> Vec<GradedPoly> {
        self.coefficient(k, 1)
    }

    /// `Σ β_k t^k + σ_k t^k s`, which should be `Z` again.
    pub fn reassemble(&self) -> Vec<GradedPoly> {
        let nv = self.layout.n_vars();
        let nw = self.ring.n_vars();
        let lift: Vec<GradedPoly> = (0..nv).map(|i| GradedPoly::var(&self.ring, i)).collect();
        let mut out = vec![GradedPoly::zero(&self.ring); self.entries.len()];
        let eps_max = u16::from(self.layout.p > 2);
        for k in 0..self.t_power_bound() {
            for eps in 0..=eps_max {
                let mut e = vec![0u16; nw];
                e[nv] = k as u16;
                if eps == 1 {
                    e[nv + 1] = 1;
                }
                let tail = GradedPoly::monomial(&self.ring, Monomial::from_exponents(e), 1);
                for (o, c) in out.iter_mut().zip(self.coefficient(k, eps)) {
                    let c = c.substitute(&self.ring, &lift).expect("same variables");
                    *o = &*o + &(&c * &tail);
                }
            }
        }
        out
    }

    /// `α_0^{j_0}···α_{r-1}^{j_{r-1}} / (j_0!···j_{r-1}!)` for the base-`p`
    /// digits of `j`.
    pub fn recovered_beta(&self, j: u32) -> Vec<GradedPoly> {
        let n = self.dim();
        let p = self.layout.p;
        let fp = self.coeffs.field();
        let mut out = mat_identity(&self.coeffs, n);
        let mut denom = 1;
        let mut rest = j;
        for l in 0..self.layout.r {
            let d = rest % p;
            rest /= p;
            out = mat_mul(&out, &mat_pow(&self.coeffs, &self.x(l), n, d), n);
            denom = fp.mul(denom, fp.factorial(d as u64));
        }
        let c = fp.inv(denom);
        out.iter().map(|f| f.scale(c)).collect()
    }

    pub fn matrix_product(&self, a: &[GradedPoly], b: &[GradedPoly]) -> Vec<GradedPoly> {
        mat_mul(a, b, self.dim())
    }
}

/// Generators and defining relations of `k[V*_r(GL_I)]`.
pub fn gl_presentation(
    index: &[InternalDegree],
    r: u32,
    p: u32,
) -> Result<(Arc<Ring>, Vec<GradedPoly>)> {
    let layout = Layout::new(index, r, p)?;
    let ring = layout.matrix_ring()?;
    let rels = layout.relations(&ring);
    Ok((ring, rels))
}

/// `k[V*_r(GL_I)]` with a Gröbner basis of its relations. Only small `n`
/// is practical.
pub fn vr_gl(index: &[InternalDegree], r: u32, p: u32, cfg: &GroebnerConfig) -> Result<BigradedRing> {
    let layout = Layout::new(index, r, p)?;
    let (ring, rels) = gl_presentation(index, r, p)?;
    let gb = GroebnerBasis::new(&ring, &rels, cfg)?;
    Ok(BigradedRing {
        p,
        r,
        kinds: (0..layout.n_vars()).map(|k| Some(layout.kind(k))).collect(),
        index: index.to_vec(),
        ring,
        gb,
        eliminated: Vec::new(),
        removed: Vec::new(),
    })
}

/// A generator removed as nilpotent: `g^{p^exponent} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub name: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub bidegree: Bidegree,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<VarKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub variable: String,
    pub value: String,
}

/// Serializable form of a [`BigradedRing`]; relations are its reduced
/// Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDocument {
    pub prime: u32,
    pub height: u32,
    pub index: Vec<InternalDegree>,
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<String>,
    pub eliminated: Vec<Substitution>,
    pub removed: Vec<Removal>,
}

/// A bigraded presentation: generators carry `(cohomological, internal)`
/// degrees, the cohomological degree doubling as the term-order weight.
#[derive(Clone, Debug)]
pub struct BigradedRing {
    p: u32,
    r: u32,
    kinds: Vec<Option<VarKind>>,
    index: Vec<InternalDegree>,
    ring: Arc<Ring>,
    gb: GroebnerBasis,
    eliminated: Vec<(String, String)>,
    removed: Vec<Removal>,
}

impl BigradedRing {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn height(&self) -> u32 {
        self.r
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn relations(&self) -> &[GradedPoly] {
        self.gb.elements()
    }

    /// The index `I` of the embedding this ring was computed from.
    pub fn index(&self) -> &[InternalDegree] {
        &self.index
    }

    /// Matrix entry of each generator; `None` for rings given by hand.
    pub fn kinds(&self) -> &[Option<VarKind>] {
        &self.kinds
    }

    /// Variables solved for during the computation, with their values.
    pub fn eliminated(&self) -> &[(String, String)] {
        &self.eliminated
    }

    pub fn removed(&self) -> &[Removal] {
        &self.removed
    }

    pub fn n_generators(&self) -> usize {
        self.ring.n_vars()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.ring.var(i).name
    }

    pub fn bidegree(&self, i: usize) -> Bidegree {
        Bidegree::new(self.ring.weights()[i], self.ring.var(i).degree)
    }

    pub fn generators(&self) -> Vec<(String, Bidegree)> {
        (0..self.n_generators())
            .map(|i| (self.generator_name(i).to_string(), self.bidegree(i)))
            .collect()
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Bidegree {
        Bidegree::new(self.ring.weight(m), self.ring.degree(m))
    }

    pub fn normal_form(&self, f: &GradedPoly) -> GradedPoly {
        self.gb.normal_form(f)
    }

    pub fn contains(&self, f: &GradedPoly) -> bool {
        self.gb.contains(f)
    }

    /// Number of standard monomials in each bidegree of cohomological degree
    /// at most `max_cohom`.
    pub fn hilbert(&self, max_cohom: u32) -> BTreeMap<Bidegree, usize> {
        let mut out = BTreeMap::new();
        for m in self.gb.standard_monomials(max_cohom) {
            *out.entry(self.monomial_bidegree(&m)).or_insert(0) += 1;
        }
        out
    }

    pub fn to_document(&self) -> RingDocument {
        RingDocument {
            prime: self.p,
            height: self.r,
            index: self.index.clone(),
            generators: (0..self.n_generators())
                .map(|i| GeneratorEntry {
                    name: self.generator_name(i).to_string(),
                    bidegree: self.bidegree(i),
                    kind: self.kinds[i],
                })
                .collect(),
            relations: self.relations().iter().map(|f| f.to_string()).collect(),
            eliminated: self
                .eliminated
                .iter()
                .map(|(v, q)| Substitution {
                    variable: v.clone(),
                    value: q.clone(),
                })
                .collect(),
            removed: self.removed.clone(),
        }
    }

    pub fn from_document(doc: &RingDocument, cfg: &GroebnerConfig) -> Result<Self> {
        let (vars, weights): (Vec<Variable>, Vec<u32>) = doc
            .generators
            .iter()
            .map(|g| (Variable::new(g.name.clone(), g.bidegree.internal), g.bidegree.cohom))
            .unzip();
        let ring = Ring::builder(doc.prime as u64, vars).weights(weights).build()?;
        let rels = doc
            .relations
            .iter()
            .map(|s| crate::grpoly::expr::parse_poly(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        let gb = GroebnerBasis::new(&ring, &rels, cfg)?;
        Ok(BigradedRing {
            p: doc.prime,
            r: doc.height,
            kinds: doc.generators.iter().map(|g| g.kind).collect(),
            index: doc.index.clone(),
            ring,
            gb,
            eliminated: doc
                .eliminated
                .iter()
                .map(|s| (s.variable.clone(), s.value.clone()))
                .collect(),
            removed: doc.removed.clone(),
        })
    }

    /// Every relation is bihomogeneous.
    pub fn is_bihomogeneous(&self) -> bool {
        self.relations().iter().all(|f| {
            let mut bs = f.terms().iter().map(|(m, _)| self.monomial_bidegree(m));
            let first = bs.next();
            bs.all(|b| Some(b) == first)
        })
    }

    /// Moves `f` into another presentation whose generators are a subset of
    /// ours with the same names; other generators go to zero.
    fn restrict_to(&self, f: &GradedPoly, target: &Arc<Ring>) -> GradedPoly {
        let images: Vec<GradedPoly> = (0..self.ring.n_vars())
            .map(|i| match target.var_index(&self.ring.var(i).name) {
                Some(k) => GradedPoly::var(target, k),
                None => GradedPoly::zero(target),
            })
            .collect();
        f.substitute(target, &images).expect("images live in the target")
    }

    /// Least `e` with `g^{p^e}` in the ideal, up to `cap`.
    pub fn nilpotence_exponent(&self, i: usize, cap: u32) -> Option<u32> {
        let g = GradedPoly::var(&self.ring, i);
        let mut power = g;
        for e in 0..=cap {
            if self.contains(&power) {
                return Some(e);
            }
            if e < cap {
                power = self.normal_form(&power.pow(self.p));
            }
        }
        None
    }
}

/// `V*_r(G)` for the default embedding of `pres`.
pub fn vr_group(pres: &HopfPresentation, r: u32, cfg: &GroebnerConfig) -> Result<BigradedRing> {
    let cm = embed::comatrix(pres, &embed::default_basis(pres)?)?;
    let ideal = embed::defining_ideal(pres, &cm, cfg, embed::DEFAULT_CERTIFICATE_WEIGHT)?;
    vr_group_with(pres, &cm, &ideal, r, cfg)
}

/// Splits `Σ c·m·t^k s^ε` into the coefficients of each `t^k s^ε`.
fn t_coefficients(f: &GradedPoly, nv: usize) -> Vec<GradedPoly> {
    let ring = f.ring();
    let mut parts: BTreeMap<(u16, u16), Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let key = (e[nv], e.get(nv + 1).copied().unwrap_or(0));
        let mut head = e.to_vec();
        for x in &mut head[nv..] {
            *x = 0;
        }
        parts.entry(key).or_default().push((Monomial::from_exponents(head), *c));
    }
    parts
        .into_values()
        .map(|terms| GradedPoly::from_terms(ring, terms))
        .collect()
}

/// A single variable `v` occurring in `f` only as the term `c·v`.
fn solvable_vars(f: &GradedPoly, limit: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
    f.terms().iter().filter_map(move |(m, c)| {
        if m.total_degree() != 1 {
            return None;
        }
        let v = m.support().next()?;
        if v >= limit {
            return None;
        }
        let uses = f.terms().iter().filter(|(o, _)| o.exponents()[v] > 0).count();
        (uses == 1).then_some((v, *c))
    })
}

/// Solves relations `c·v - q` for `v`, highest variable index first, until
/// no such relation remains. Records `v ↦ q` in `subst`.
fn eliminate_solvable(pool: &mut Vec<GradedPoly>, subst: &mut Vec<(usize, GradedPoly)>, limit: usize) {
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for (k, f) in pool.iter().enumerate() {
            for (v, c) in solvable_vars(f, limit) {
                if best.is_none_or(|(bv, _, _)| v > bv) {
                    best = Some((v, k, c));
                }
            }
        }
        let Some((v, k, c)) = best else {
            return;
        };
        let f = pool.swap_remove(k);
        let ring = f.ring().clone();
        let fp = ring.field();
        let cv = GradedPoly::monomial(&ring, Monomial::var(ring.n_vars(), v, 1), c);
        let q = (&cv - &f).scale(fp.inv(c));
        let rep = [(v, q.clone())];
        for (_, img) in subst.iter_mut() {
            *img = img.substitute_some(&rep);
        }
        subst.push((v, q));
        let mut next: Vec<GradedPoly> = Vec::with_capacity(pool.len());
        for g in pool.drain(..) {
            let g = g.substitute_some(&rep);
            if !g.is_zero() && !next.contains(&g) {
                next.push(g);
            }
        }
        *pool = next;
    }
}

/// `V*_r(G)` for an explicit embedding: the quotient of `k[V*_r(GL_I)]` by
/// the coefficients of `F(Z)` for every defining equation `F`.
pub fn vr_group_with(
    pres: &HopfPresentation,
    cm: &Comatrix,
    ideal: &EmbeddingIdeal,
    r: u32,
    cfg: &GroebnerConfig,
) -> Result<BigradedRing> {
    match pres.height(r) {
        Height::Finite(h) if h <= r => {}
        _ => return Err(Error::HeightExceeds { r }),
    }
    let p = pres.prime();
    let z = exp_matrix(cm.index(), r, p)?;
    let layout = z.layout.clone();
    let w = z.ring.clone();
    let nv = layout.n_vars();

    let mut pool: Vec<GradedPoly> = layout.relations(&w);
    let mut subst: Vec<(usize, GradedPoly)> = Vec::new();
    let (linear, rest): (Vec<&GradedPoly>, Vec<&GradedPoly>) = ideal
        .generators
        .iter()
        .partition(|f| f.terms().iter().all(|(m, _)| m.total_degree() <= 1));

    // linear equations first, so the expansion of the others is cheap
    for phase in [linear, rest] {
        let images: Vec<GradedPoly> = z.entries.iter().map(|e| e.substitute_some(&subst)).collect();
        for f in phase {
            let fz = f.substitute(&w, &images)?;
            for c in t_coefficients(&fz, nv) {
                let c = c.substitute_some(&subst);
                if !c.is_zero() {
                    pool.push(c);
                }
            }
        }
        pool = pool.into_iter().map(|f| f.substitute_some(&subst)).filter(|f| !f.is_zero()).collect();
        eliminate_solvable(&mut pool, &mut subst, nv);
    }

    loop {
        let solved: Vec<usize> = subst.iter().map(|(v, _)| *v).collect();
        let alive: Vec<usize> = (0..nv).filter(|v| !solved.contains(v)).collect();
        let (vars, weights): (Vec<Variable>, Vec<u32>) = alive
            .iter()
            .map(|&k| (w.var(k).clone(), w.weights()[k]))
            .unzip();
        let small = Ring::builder(p as u64, vars).weights(weights).build()?;
        let mut to_small = vec![GradedPoly::zero(&small); w.n_vars()];
        for (k, &v) in alive.iter().enumerate() {
            to_small[v] = GradedPoly::var(&small, k);
        }
        let mapped: Vec<GradedPoly> = pool
            .iter()
            .map(|f| f.substitute(&small, &to_small))
            .collect::<Result<_>>()?;
        let gb = GroebnerBasis::new(&small, &mapped, cfg)?;

        let mut from_small = Vec::with_capacity(alive.len());
        for &v in &alive {
            from_small.push(GradedPoly::var(&w, v));
        }
        let back: Vec<GradedPoly> = gb
            .elements()
            .iter()
            .map(|f| f.substitute(&w, &from_small))
            .collect::<Result<_>>()?;
        if back.iter().any(|f| solvable_vars(f, nv).next().is_some()) {
            pool = back;
            eliminate_solvable(&mut pool, &mut subst, nv);
            continue;
        }

        let mut eliminated: Vec<(usize, String)> = subst
            .iter()
            .map(|(v, q)| {
                let q = q.substitute(&small, &to_small).expect("solved values use live variables");
                (*v, q.to_string())
            })
            .collect();
        eliminated.sort_by_key(|(v, _)| *v);
        return Ok(BigradedRing {
            p,
            r,
            kinds: alive.iter().map(|&k| Some(layout.kind(k))).collect(),
            index: cm.index().to_vec(),
            ring: small,
            gb,
            eliminated: eliminated
                .into_iter()
                .map(|(v, q)| (w.var(v).name.clone(), q))
                .collect(),
            removed: Vec::new(),
        });
    }
}

/// Drops every generator with `g^{p^e} = 0` for some `e ≤ r + 2`.
///
/// This is evidence of an F-isomorphism, not a radical computation: the
/// result is the quotient by the removed generators.
pub fn reduce_f_iso(ring: &BigradedRing, cfg: &GroebnerConfig) -> Result<BigradedRing> {
    let mut cur = ring.clone();
    loop {
        let cap = cur.r + 2;
        let mut removed = Vec::new();
        for i in 0..cur.n_generators() {
            if let Some(e) = cur.nilpotence_exponent(i, cap) {
                removed.push((i, e));
            }
        }
        if removed.is_empty() {
            return Ok(cur);
        }
        let keep: Vec<usize> = (0..cur.n_generators())
            .filter(|i| !removed.iter().any(|(k, _)| k == i))
            .collect();
        let (vars, weights): (Vec<Variable>, Vec<u32>) = keep
            .iter()
            .map(|&k| (cur.ring.var(k).clone(), cur.ring.weights()[k]))
            .unzip();
        let small = Ring::builder(cur.p as u64, vars).weights(weights).build()?;
        let rels: Vec<GradedPoly> = cur
            .relations()
            .iter()
            .map(|f| cur.restrict_to(f, &small))
            .filter(|f| !f.is_zero())
            .collect();
        let gb = GroebnerBasis::new(&small, &rels, cfg)?;
        let mut report = cur.removed.clone();
        report.extend(removed.iter().map(|&(i, e)| Removal {
            name: cur.generator_name(i).to_string(),
            exponent: e,
        }));
        cur = BigradedRing {
            p: cur.p,
            r: cur.r,
            kinds: keep.iter().map(|&k| cur.kinds[k]).collect(),
            index: cur.index.clone(),
            ring: small,
            gb,
            eliminated: cur.eliminated.clone(),
            removed: report,
        };
    }
}

/// Weight of each generator under the `A^1`-action: `p^l` (`p = 2`) or
/// `2p^l` for `X^l`, and `p^r` for `Y`. Generators of a ring given by hand
/// have no matrix entry and report their cohomological degree.
pub fn a1_weights(ring: &BigradedRing) -> BTreeMap<String, u32> {
    let p = ring.p;
    ring.kinds
        .iter()
        .enumerate()
        .map(|(k, kind)| {
            let w = match kind {
                Some(VarKind::X { l, .. }) if p == 2 => p.pow(*l),
                Some(VarKind::X { l, .. }) => 2 * p.pow(*l),
                Some(VarKind::Y { .. }) => p.pow(ring.r),
                None => ring.bidegree(k).cohom,
            };
            (ring.generator_name(k).to_string(), w)
        })
        .collect()
}

/// Kernel of `source → ring` sending the `k`th variable of `source` to
/// `images[k]`, as a Gröbner basis over `source`.
pub fn kernel(
    ring: &BigradedRing,
    source: &Arc<Ring>,
    images: &[GradedPoly],
    cfg: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let m = ring.n_generators();
    let mut vars: Vec<Variable> = (0..m)
        .map(|i| Variable::new(format!("T{i}"), ring.ring.var(i).degree))
        .collect();
    vars.extend(source.vars().iter().cloned());
    let mut weights = ring.ring.weights().to_vec();
    weights.extend_from_slice(source.weights());
    let both = Ring::builder(ring.p as u64, vars).weights(weights).build()?;
    let lift: Vec<GradedPoly> = (0..m).map(|i| GradedPoly::var(&both, i)).collect();
    let mut gens: Vec<GradedPoly> = ring
        .relations()
        .iter()
        .map(|f| f.substitute(&both, &lift))
        .collect::<Result<_>>()?;
    for (k, img) in images.iter().enumerate() {
        let img = img.substitute(&both, &lift)?;
        gens.push(&GradedPoly::var(&both, m + k) - &img);
    }
    let remove: Vec<usize> = (0..m).collect();
    let elim = crate::grpoly::eliminate(&gens, &both, &remove, cfg)?;
    let back: Vec<GradedPoly> = (0..source.n_vars()).map(|k| GradedPoly::var(source, k)).collect();
    let gens: Vec<GradedPoly> = elim
        .generators
        .iter()
        .map(|f| f.substitute(source, &back))
        .collect::<Result<_>>()?;
    GroebnerBasis::new(source, &gens, cfg)
}

/// A bigraded ring given directly by generators and relations, used to
/// compare against presentations stated by hand.
pub fn presented(
    p: u32,
    generators: &[(&str, Bidegree)],
    relations: &[&str],
    cfg: &GroebnerConfig,
) -> Result<BigradedRing> {
    let (vars, weights): (Vec<Variable>, Vec<u32>) = generators
        .iter()
        .map(|(name, b)| (Variable::new(*name, b.internal), b.cohom))
        .unzip();
    let ring = Ring::builder(p as u64, vars).weights(weights).build()?;
    let rels = relations
        .iter()
        .map(|s| crate::grpoly::expr::parse_poly(&ring, s))
        .collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::new(&ring, &rels, cfg)?;
    Ok(BigradedRing {
        p,
        r: 1,
        kinds: vec![None; generators.len()],
        index: Vec::new(),
        ring,
        gb,
        eliminated: Vec::new(),
        removed: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn consts(v: &[i64]) -> Vec<InternalDegree> {
        v.iter().map(|&c| InternalDegree::constant(c)).collect()
    }

    fn names(r: &BigradedRing) -> Vec<String> {
        r.generators().into_iter().map(|(n, _)| n).collect()
    }

    fn rels(r: &BigradedRing) -> Vec<String> {
        r.relations().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn one_by_one_gl() {
        let r = vr_gl(&consts(&[0]), 1, 2, &GroebnerConfig::default()).unwrap();
        assert_eq!(names(&r), ["X_11"]);
        assert_eq!(rels(&r), ["X_11^2"]);
        assert_eq!(r.bidegree(0), Bidegree::new(1, -InternalDegree::t()));
    }

    #[test]
    fn steenrod_gl_has_32_variables() {
        let (ring, rels) = gl_presentation(&consts(&[0, 1, 2, 3]), 2, 2).unwrap();
        assert_eq!(ring.n_vars(), 32);
        let k = ring.var_index("X1_14").unwrap();
        assert_eq!(ring.var(k).degree, InternalDegree::new(3, -2, 0));
        assert_eq!(ring.weights()[k], 2);
        // 2 squares and 1 commutator, 16 entries each, minus identically zero ones
        assert!(rels.len() <= 48);
        assert!(rels.iter().all(|f| f.is_homogeneous()));
    }

    #[test]
    fn p3_gl_relations_reduce_to_zero() {
        let cfg = GroebnerConfig::default();
        let r = vr_gl(&consts(&[0, 1]), 1, 3, &cfg).unwrap();
        let layout = Layout::new(&consts(&[0, 1]), 1, 3).unwrap();
        for f in layout.relations(r.ring()) {
            assert!(r.contains(&f));
        }
        assert!(r.groebner().is_confluent());
    }

    #[test]
    fn reassembly_recovers_the_exponential() {
        for (idx, r, p) in [(vec![0, 1, 2, 3], 2, 2), (vec![0, 2, 5], 1, 3), (vec![0, 1], 2, 3)] {
            let z = exp_matrix(&consts(&idx), r, p).unwrap();
            assert_eq!(z.reassemble(), z.entries());
        }
    }

    #[test]
    fn exponential_corner_for_steenrod() {
        let z = exp_matrix(&consts(&[0, 1]), 2, 2).unwrap();
        let b1 = z.beta(1);
        assert_eq!(b1[1].to_string(), "X0_12");
        let b3 = z.beta(3);
        assert_eq!(b3[1].to_string(), "X0_11*X1_12 + X0_12*X1_22");
    }

    #[test]
    fn zero_matrices_give_identity() {
        let z = exp_matrix(&consts(&[0, 1, 3]), 2, 3).unwrap();
        let zero: Vec<GradedPoly> = vec![GradedPoly::zero(z.ring()); z.ring().n_vars()];
        for i in 0..3 {
            for j in 0..3 {
                let v = z.entry(i, j).substitute(z.ring(), &zero).unwrap();
                assert_eq!(v.is_constant() && v.constant_term() == 1, i == j);
                assert_eq!(v.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn steenrod_vr() {
        let cfg = GroebnerConfig::default();
        let pres = fixtures::s1();
        let v = vr_group(&pres, 2, &cfg).unwrap();
        assert_eq!(names(&v), ["X0_12", "X0_14", "X1_12", "X1_14"]);
        assert_eq!(rels(&v), ["X0_14^2", "X0_12^3", "X0_12^2*X1_12"]);
        let solved: Vec<_> = v.eliminated().iter().filter(|(_, q)| q != "0").cloned().collect();
        assert_eq!(
            solved,
            [
                ("X0_34".to_string(), "X0_12".to_string()),
                ("X1_13".into(), "X0_12^2".into()),
                ("X1_34".into(), "X1_12".into()),
            ]
        );
        assert!(v.is_bihomogeneous());
        let red = reduce_f_iso(&v, &cfg).unwrap();
        assert_eq!(names(&red), ["X1_12", "X1_14"]);
        assert!(red.relations().is_empty());
        let removed: Vec<_> = red.removed().iter().map(|r| (r.name.as_str(), r.exponent)).collect();
        assert_eq!(removed, [("X0_12", 2), ("X0_14", 1)]);
    }

    #[test]
    fn document_round_trip() {
        let cfg = GroebnerConfig::default();
        let v = vr_group(&fixtures::stodd(), 1, &cfg).unwrap();
        let doc = v.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back = BigradedRing::from_document(&serde_json::from_str(&json).unwrap(), &cfg).unwrap();
        assert_eq!(back.to_document(), doc);
        assert_eq!(back.hilbert(12), v.hilbert(12));
    }

    #[test]
    fn height_is_checked() {
        let pres = fixtures::s1();
        let err = vr_group(&pres, 1, &GroebnerConfig::default()).unwrap_err();
        assert_eq!(err, Error::HeightExceeds { r: 1 });
    }

    #[test]
    fn kernel_of_stated_subring() {
        let cfg = GroebnerConfig::default();
        let pres = fixtures::s1();
        let v = vr_group(&pres, 2, &cfg).unwrap();
        let b = |c, k| Bidegree::new(c, InternalDegree::new(k, -(c as i64), 0));
        let stated = presented(
            2,
            &[("P14", b(1, 3)), ("Q12", b(2, 1)), ("Q13", b(2, 2)), ("Q14", b(2, 3))],
            &["P14^2", "Q13^2", "Q13*Q12"],
            &cfg,
        )
        .unwrap();
        let x = |s: &str| crate::grpoly::expr::parse_poly(v.ring(), s).unwrap();
        let images = [x("X0_14"), x("X1_12"), x("X0_12^2"), x("X1_14")];
        let ker = kernel(&v, stated.ring(), &images, &cfg).unwrap();
        let got: Vec<String> = ker.elements().iter().map(|f| f.to_string()).collect();
        let want: Vec<String> = stated.relations().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, want);
    }
}
