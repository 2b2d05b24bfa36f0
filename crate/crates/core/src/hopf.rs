//! Presentations of graded Hopf algebras `k[G]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grpoly::expr::Expr;
use crate::grpoly::{
    GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring, Variable,
};

/// Parities declared for the placeholders `|t|` and `|s|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placeholders {
    pub t: String,
    pub s: String,
}

impl Default for Placeholders {
    fn default() -> Self {
        Placeholders {
            t: "even".into(),
            s: "odd".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: InternalDegree,
}

/// On-disk form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub prime: u64,
    #[serde(default)]
    pub degree_placeholders: Placeholders,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Generators missing here are primitive.
    #[serde(default)]
    pub coproduct: BTreeMap<String, String>,
    /// Optional ordered basis of a subcomodule to embed with.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodule_basis: Option<Vec<String>>,
}

/// `k[G] = k[generators]/(relations)` with a coproduct on generators.
/// The counit sends every generator to zero.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    ring: Arc<Ring>,
    relations: Vec<GradedPoly>,
    gb: GroebnerBasis,
    tensor2: Arc<Ring>,
    tensor2_gb: GroebnerBasis,
    coproduct: Vec<GradedPoly>,
    comodule_basis: Option<Vec<GradedPoly>>,
    cfg: GroebnerConfig,
}

/// Ring of `k` tensor copies; copy `leg` of generator `g` is `L{leg}_{g}`.
pub fn tensor_ring(ring: &Ring, legs: usize) -> Result<Arc<Ring>> {
    let mut vars = Vec::new();
    for leg in 0..legs {
        for v in ring.vars() {
            vars.push(Variable::new(format!("L{}_{}", leg, v.name), v.degree));
        }
    }
    let weights = (0..legs).flat_map(|_| ring.weights().iter().copied()).collect();
    let mut b = Ring::builder(ring.prime() as u64, vars).weights(weights);
    for leg in 0..legs {
        for i in 0..ring.n_vars() {
            if let Some(bound) = ring.nil_bound(i) {
                b = b.truncate(leg * ring.n_vars() + i, bound);
            }
        }
    }
    b.build()
}

/// Copy of `f` placed in tensor leg `leg`.
pub fn in_leg(f: &GradedPoly, target: &Arc<Ring>, leg: usize) -> GradedPoly {
    let n = f.ring().n_vars();
    let images: Vec<GradedPoly> = (0..n)
        .map(|i| GradedPoly::var(target, leg * n + i))
        .collect();
    f.substitute(target, &images).expect("leg images live in the target")
}

/// Renders an element of a tensor ring with `#` between legs.
pub fn format_tensor(f: &GradedPoly, base: &Ring, legs: usize) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let n = base.n_vars();
    let fp = base.field();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let s = fp.signed(*c);
        if k == 0 {
            if s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if s < 0 { " - " } else { " + " });
        }
        let mag = s.unsigned_abs();
        if mag != 1 {
            out.push_str(&format!("{}*", mag));
        }
        let parts: Vec<String> = (0..legs)
            .map(|leg| {
                let e = m.exponents()[leg * n..(leg + 1) * n].to_vec();
                base.format_monomial(&Monomial::from_exponents(e))
            })
            .collect();
        out.push_str(&parts.join("#"));
    }
    out
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Height {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_elementary: bool,
    pub is_evenly_graded: bool,
}

impl HopfPresentation {
    pub fn from_json(src: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(src).map_err(|e| Error::Parse {
            offset: 0,
            message: e.to_string(),
        })?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        Self::from_file_with(file, GroebnerConfig::default())
    }

    pub fn from_file_with(file: &PresentationFile, cfg: GroebnerConfig) -> Result<Self> {
        if file.degree_placeholders.t != "even" || file.degree_placeholders.s != "odd" {
            return Err(Error::Invalid("|t| must be even and |s| odd".into()));
        }
        let vars: Vec<Variable> = file
            .generators
            .iter()
            .map(|g| Variable::new(g.name.clone(), g.degree))
            .collect();
        let ring = Ring::new(file.prime, vars)?;
        let mut relations = Vec::new();
        for src in &file.relations {
            let f = Expr::parse(src)?.eval(&ring)?;
            if !f.is_homogeneous() {
                return Err(Error::InhomogeneousRelation(src.clone()));
            }
            relations.push(f);
        }
        for name in file.coproduct.keys() {
            if ring.var_index(name).is_none() {
                return Err(Error::UnknownIdentifier(name.clone()));
            }
        }
        let tensor2 = tensor_ring(&ring, 2)?;
        let mut coproduct = Vec::new();
        for (i, v) in ring.vars().iter().enumerate() {
            let f = match file.coproduct.get(&v.name) {
                Some(src) => parse_tensor(&ring, &tensor2, src, 2)?,
                None => {
                    let g = GradedPoly::var(&ring, i);
                    &in_leg(&g, &tensor2, 0) + &in_leg(&g, &tensor2, 1)
                }
            };
            coproduct.push(f);
        }
        let comodule_basis = match &file.comodule_basis {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|s| Expr::parse(s)?.eval(&ring))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Self::assemble(ring, relations, coproduct, comodule_basis, cfg)
    }

    fn assemble(
        ring: Arc<Ring>,
        relations: Vec<GradedPoly>,
        coproduct: Vec<GradedPoly>,
        comodule_basis: Option<Vec<GradedPoly>>,
        cfg: GroebnerConfig,
    ) -> Result<Self> {
        let gb = GroebnerBasis::new(&ring, &relations, &cfg)?;
        let tensor2 = coproduct
            .first()
            .map(|f| f.ring().clone())
            .map_or_else(|| tensor_ring(&ring, 2), Ok)?;
        let tensor_rels: Vec<GradedPoly> = (0..2)
            .flat_map(|leg| gb.elements().iter().map(move |g| (leg, g)))
            .map(|(leg, g)| in_leg(g, &tensor2, leg))
            .collect();
        let tensor2_gb = GroebnerBasis::new(&tensor2, &tensor_rels, &cfg)?;
        Ok(HopfPresentation {
            ring,
            relations,
            gb,
            tensor2,
            tensor2_gb,
            coproduct,
            comodule_basis,
            cfg,
        })
    }

    /// Presentation with no generators: `k[G] = k`.
    pub fn trivial(p: u64) -> Result<Self> {
        Self::from_file(&PresentationFile {
            prime: p,
            degree_placeholders: Placeholders::default(),
            generators: Vec::new(),
            relations: Vec::new(),
            coproduct: BTreeMap::new(),
            comodule_basis: None,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.ring.prime()
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn config(&self) -> GroebnerConfig {
        self.cfg
    }

    pub fn tensor2(&self) -> &Arc<Ring> {
        &self.tensor2
    }

    pub fn tensor2_groebner(&self) -> &GroebnerBasis {
        &self.tensor2_gb
    }

    /// `Δ(g_i)` in the doubled ring.
    pub fn coproduct_of_generator(&self, i: usize) -> &GradedPoly {
        &self.coproduct[i]
    }

    pub fn comodule_basis(&self) -> Option<&[GradedPoly]> {
        self.comodule_basis.as_deref()
    }

    pub fn normal_form(&self, f: &GradedPoly) -> GradedPoly {
        self.gb.normal_form(f)
    }

    /// `Δ(f)`, reduced modulo the relations in both legs.
    pub fn coproduct(&self, f: &GradedPoly) -> Result<GradedPoly> {
        let d = f.substitute(&self.tensor2, &self.coproduct)?;
        Ok(self.tensor2_gb.normal_form(&d))
    }

    /// Applies the counit to tensor leg `leg` of an element of the doubled
    /// ring, giving an element of `k[G]`.
    pub fn apply_counit(&self, d: &GradedPoly, leg: usize) -> Result<GradedPoly> {
        let n = self.ring.n_vars();
        let images: Vec<GradedPoly> = (0..2 * n)
            .map(|k| {
                if k / n == leg {
                    GradedPoly::zero(&self.ring)
                } else {
                    GradedPoly::var(&self.ring, k % n)
                }
            })
            .collect();
        Ok(self.gb.normal_form(&d.substitute(&self.ring, &images)?))
    }

    pub fn is_primitive(&self, i: usize) -> bool {
        let g = GradedPoly::var(&self.ring, i);
        let prim = &in_leg(&g, &self.tensor2, 0) + &in_leg(&g, &self.tensor2, 1);
        self.tensor2_gb.normal_form(&(&self.coproduct[i] - &prim)).is_zero()
    }

    pub fn to_file(&self) -> PresentationFile {
        let ring = &self.ring;
        PresentationFile {
            prime: ring.prime() as u64,
            degree_placeholders: Placeholders::default(),
            generators: ring
                .vars()
                .iter()
                .map(|v| GeneratorSpec {
                    name: v.name.clone(),
                    degree: v.degree,
                })
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            coproduct: ring
                .vars()
                .iter()
                .zip(&self.coproduct)
                .map(|(v, d)| (v.name.clone(), format_tensor(d, ring, 2)))
                .collect(),
            comodule_basis: self
                .comodule_basis
                .as_ref()
                .map(|b| b.iter().map(|f| f.to_string()).collect()),
        }
    }

    /// Checks homogeneity, coassociativity, the counit axioms and that `Δ`
    /// respects the relations.
    pub fn validate(&self) -> Result<ValidationReport> {
        let ring = &self.ring;
        let mut checks = Vec::new();
        let names: Vec<&str> = ring.vars().iter().map(|v| v.name.as_str()).collect();

        for (i, d) in self.coproduct.iter().enumerate() {
            let deg = ring.var(i).degree;
            let ok = d
                .terms()
                .iter()
                .all(|(m, _)| self.tensor2.degree(m) == deg);
            checks.push(Check {
                name: format!("coproduct homogeneity for {}", names[i]),
                passed: ok,
                witness: (!ok).then(|| format_tensor(d, ring, 2)),
            });
        }

        let t3 = tensor_ring(ring, 3)?;
        let t3_rels: Vec<GradedPoly> = (0..3)
            .flat_map(|leg| self.gb.elements().iter().map(move |g| (leg, g)))
            .map(|(leg, g)| in_leg(g, &t3, leg))
            .collect();
        let t3_gb = GroebnerBasis::new(&t3, &t3_rels, &self.cfg)?;
        let n = ring.n_vars();
        // Δ ⊗ id and id ⊗ Δ as maps from the doubled ring into the tripled ring
        let shift = |f: &GradedPoly, from_leg: usize| -> GradedPoly {
            let images: Vec<GradedPoly> = (0..2 * n)
                .map(|k| GradedPoly::var(&t3, k + from_leg * n))
                .collect();
            f.substitute(&t3, &images).unwrap()
        };
        let mut left_images = Vec::with_capacity(2 * n);
        let mut right_images = Vec::with_capacity(2 * n);
        for i in 0..n {
            left_images.push(shift(&self.coproduct[i], 0));
            right_images.push(GradedPoly::var(&t3, i));
        }
        for i in 0..n {
            left_images.push(GradedPoly::var(&t3, 2 * n + i));
            right_images.push(shift(&self.coproduct[i], 1));
        }
        for (i, d) in self.coproduct.iter().enumerate() {
            let a = d.substitute(&t3, &left_images)?;
            let b = d.substitute(&t3, &right_images)?;
            let diff = t3_gb.normal_form(&(&a - &b));
            checks.push(Check {
                name: format!("coassociativity on {}", names[i]),
                passed: diff.is_zero(),
                witness: (!diff.is_zero()).then(|| {
                    format!("(Δ⊗1)Δ - (1⊗Δ)Δ = {}", format_tensor(&diff, ring, 3))
                }),
            });
        }

        for (leg, label) in [(0usize, "ε⊗1"), (1, "1⊗ε")] {
            for (i, d) in self.coproduct.iter().enumerate() {
                let e = self.apply_counit(d, leg)?;
                let diff = self.gb.normal_form(&(&e - &GradedPoly::var(ring, i)));
                checks.push(Check {
                    name: format!("counit ({}) on {}", label, names[i]),
                    passed: diff.is_zero(),
                    witness: (!diff.is_zero())
                        .then(|| format!("({})Δ({}) - {} = {}", label, names[i], names[i], diff)),
                });
            }
        }

        for r in &self.relations {
            let d = self.coproduct(r)?;
            checks.push(Check {
                name: format!("Δ respects relation {}", r),
                passed: d.is_zero(),
                witness: (!d.is_zero()).then(|| format_tensor(&d, ring, 2)),
            });
        }
        Ok(ValidationReport { checks })
    }

    /// Least `r ≥ 1` with `g^(p^r) = 0` for every generator, searching up to
    /// `cap`.
    pub fn height(&self, cap: u32) -> Height {
        let p = self.prime();
        let mut worst = 1;
        for i in 0..self.ring.n_vars() {
            let mut x = self.normal_form(&GradedPoly::var(&self.ring, i));
            let mut r = 0;
            loop {
                x = self.normal_form(&x.pow(p));
                r += 1;
                if x.is_zero() {
                    break;
                }
                if r >= cap {
                    return Height::Infinite;
                }
            }
            worst = worst.max(r);
        }
        Height::Finite(worst)
    }

    /// Presentation of the `r`th Frobenius kernel: kills `g^(p^r)` for every
    /// generator and keeps the reduced Gröbner basis as relations.
    pub fn frobenius_kernel(&self, r: u32) -> Result<Self> {
        let ring = &self.ring;
        let q = self
            .prime()
            .checked_pow(r)
            .filter(|&q| q <= u16::MAX as u32)
            .ok_or(Error::bound("Frobenius exponent p^r", u16::MAX))?;
        let mut gens: Vec<GradedPoly> = self.gb.elements().to_vec();
        for i in 0..ring.n_vars() {
            if !ring.is_odd(i) {
                gens.push(GradedPoly::var(ring, i).pow(q));
            }
        }
        let gb = GroebnerBasis::new(ring, &gens, &self.cfg)?;
        Self::assemble(
            ring.clone(),
            gb.elements().to_vec(),
            self.coproduct.clone(),
            self.comodule_basis.clone(),
            self.cfg,
        )
    }

    /// Standard monomials of `k[G]`, the monomial basis of a finite quotient.
    pub fn monomial_basis(&self) -> Result<Vec<Monomial>> {
        let ring = &self.ring;
        let mut bound = 0u32;
        for i in 0..ring.n_vars() {
            let pure = self.gb.elements().iter().filter_map(|g| {
                let m = g.leading_monomial().unwrap();
                (m.support().collect::<Vec<_>>() == vec![i]).then(|| m.exponents()[i] as u32)
            });
            let e = pure
                .min()
                .or_else(|| ring.nil_bound(i).map(|b| b as u32))
                .ok_or_else(|| Error::InfiniteDimensional(ring.var(i).name.clone()))?;
            bound += (e - 1) * ring.weights()[i];
        }
        Ok(self.gb.standard_monomials(bound))
    }

    /// Structure constants of `Δ` on the monomial basis:
    /// `Δ(m_c) = Σ coeff[(c, a, b)] m_a ⊗ m_b`.
    pub fn comultiplication(&self) -> Result<(Vec<Monomial>, BTreeMap<(usize, usize, usize), u32>)> {
        let basis = self.monomial_basis()?;
        let n = self.ring.n_vars();
        let index: std::collections::HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = BTreeMap::new();
        for (c, m) in basis.iter().enumerate() {
            let f = GradedPoly::monomial(&self.ring, m.clone(), 1);
            let d = self.coproduct(&f)?;
            for (t, coef) in d.terms() {
                let l = Monomial::from_exponents(t.exponents()[..n].to_vec());
                let r = Monomial::from_exponents(t.exponents()[n..].to_vec());
                let (Some(&a), Some(&b)) = (index.get(&l), index.get(&r)) else {
                    return Err(Error::Invalid("coproduct left the standard basis".into()));
                };
                out.insert((c, a, b), *coef);
            }
        }
        Ok((basis, out))
    }

    /// The group algebra `kG`, dual to `k[G]`, on the dual monomial basis.
    pub fn dual_group_algebra(&self) -> Result<FiniteAlgebra> {
        let ring = &self.ring;
        let fp = ring.field();
        let (basis, comult) = self.comultiplication()?;
        let dim = basis.len();
        let mut mult = vec![0u32; dim * dim * dim];
        for (&(c, a, b), &coef) in &comult {
            let sign = ring.is_odd_monomial(&basis[a]) && ring.is_odd_monomial(&basis[b]);
            let v = if sign { fp.neg(coef) } else { coef };
            mult[(a * dim + b) * dim + c] = v;
        }
        let unit = basis.iter().position(|m| m.is_one()).unwrap();
        Ok(FiniteAlgebra {
            p: ring.prime(),
            labels: basis
                .iter()
                .map(|m| format!("u[{}]", ring.format_monomial(m)))
                .collect(),
            degrees: basis.iter().map(|m| -ring.degree(m)).collect(),
            mult,
            unit,
        })
    }

    pub fn classify(&self) -> Classification {
        let ring = &self.ring;
        let p = self.prime();
        let all_primitive = (0..ring.n_vars()).all(|i| self.is_primitive(i));
        let mut truncated = vec![false; ring.n_vars()];
        let mut forced_only = true;
        for g in self.gb.elements() {
            let m = g.leading_monomial().unwrap();
            let support: Vec<usize> = m.support().collect();
            let pure_p_power = g.len() == 1 && support.len() == 1 && {
                let e = m.exponents()[support[0]] as u32;
                e > 1 && p.pow(e.ilog(p)) == e
            };
            if !pure_p_power || ring.is_odd(support[0]) || truncated[support[0]] {
                forced_only = false;
                break;
            }
            truncated[support[0]] = true;
        }
        let finite = (0..ring.n_vars()).all(|i| ring.is_odd(i) || truncated[i]);
        Classification {
            is_elementary: all_primitive && forced_only && finite,
            is_evenly_graded: p == 2 || ring.vars().iter().all(|v| !v.degree.is_odd()),
        }
    }
}

/// Parses a tensor expression with `legs` legs over `base` into `target`.
pub fn parse_tensor(base: &Arc<Ring>, target: &Arc<Ring>, src: &str, legs: usize) -> Result<GradedPoly> {
    let e = Expr::parse(src)?;
    let arity = e.arity()?;
    if arity != legs {
        return Err(Error::Invalid(format!(
            "`{}` has {} tensor legs, expected {}",
            src, arity, legs
        )));
    }
    e.eval_with(target, &|name, leg| {
        let i = base
            .var_index(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        match leg {
            Some(l) => Ok(GradedPoly::var(target, l * base.n_vars() + i)),
            None => Err(Error::Invalid(format!(
                "`{}` appears outside a tensor product in `{}`",
                name, src
            ))),
        }
    })
}

/// A finite-dimensional augmented algebra given by structure constants.
///
/// The unit is a basis vector and the augmentation is dual to it, so every
/// other basis vector spans the augmentation ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub p: u32,
    pub labels: Vec<String>,
    pub degrees: Vec<InternalDegree>,
    /// `e_a e_b = Σ_c mult[(a·dim + b)·dim + c] e_c`
    pub mult: Vec<u32>,
    pub unit: usize,
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, a: usize, b: usize) -> &[u32] {
        let d = self.dim();
        &self.mult[(a * d + b) * d..(a * d + b + 1) * d]
    }

    pub fn augmentation(&self) -> Vec<u32> {
        (0..self.dim()).map(|i| (i == self.unit) as u32).collect()
    }

    /// Product of two vectors in basis coordinates.
    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let d = self.dim();
        let mut out = vec![0u64; d];
        for a in 0..d {
            if x[a] == 0 {
                continue;
            }
            for b in 0..d {
                if y[b] == 0 {
                    continue;
                }
                let k = x[a] as u64 * y[b] as u64 % p;
                for (o, &m) in out.iter_mut().zip(self.product(a, b)) {
                    *o = (*o + k * m as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        (0..self.dim()).map(|k| (k == i) as u32).collect()
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = self.product(a, b).to_vec();
                for c in 0..d {
                    let ec = self.basis_vector(c);
                    let bc = self.product(b, c).to_vec();
                    if self.mul_vec(&ab, &ec) != self.mul_vec(&self.basis_vector(a), &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim()).all(|a| {
            let e = self.basis_vector(a);
            self.product(self.unit, a) == e.as_slice() && self.product(a, self.unit) == e.as_slice()
        })
    }

    /// The augmentation is multiplicative.
    pub fn augmentation_is_multiplicative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                let expected = (a == self.unit && b == self.unit) as u32;
                self.product(a, b)[self.unit] == expected
            })
        })
    }

    /// Same algebra on the basis reordered so that new index `i` is old
    /// index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteAlgebra {
        let d = self.dim();
        let mut inv = vec![0; d];
        for (i, &o) in perm.iter().enumerate() {
            inv[o] = i;
        }
        let mut mult = vec![0u32; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    mult[(a * d + b) * d + c] = self.product(perm[a], perm[b])[perm[c]];
                }
            }
        }
        FiniteAlgebra {
            p: self.p,
            labels: perm.iter().map(|&o| self.labels[o].clone()).collect(),
            degrees: perm.iter().map(|&o| self.degrees[o]).collect(),
            mult,
            unit: inv[self.unit],
        }
    }
}
