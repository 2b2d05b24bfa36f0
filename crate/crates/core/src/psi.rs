//! The algebra map `ψ: H^{*,*}(G, k) → k[V*_r(G)]` at the level of
//! bidegrees: where `ψ` can send each cohomology generator, whether a chosen
//! assignment respects the cohomology relations, and whether it is injective
//! in low degrees.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grpoly::expr::parse_poly;
use crate::grpoly::{
    GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring, Variable,
};
use crate::linalg::{Echelon, SparseVec};
use crate::onepar::{Bidegree, BigradedRing};

/// Largest total degree of a candidate image monomial.
pub const DEFAULT_MONOMIAL_BOUND: u32 = 12;

/// Most cohomology monomials [`f_mono_evidence`] will map.
pub const MAX_EVIDENCE_MONOMIALS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGenerator {
    pub name: String,
    pub bidegree: Bidegree,
}

/// Generators of a cohomology ring up to F-isomorphism, with relations given
/// as expressions in the generator names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGeneratorSet {
    pub prime: u32,
    pub generators: Vec<CohomologyGenerator>,
    pub relations: Vec<String>,
    pub provenance: Provenance,
}

impl CohomologyGeneratorSet {
    pub fn new(
        prime: u32,
        generators: &[(&str, Bidegree)],
        relations: &[&str],
        provenance: Provenance,
    ) -> Result<Self> {
        let set = CohomologyGeneratorSet {
            prime,
            generators: generators
                .iter()
                .map(|(name, bidegree)| CohomologyGenerator {
                    name: name.to_string(),
                    bidegree: *bidegree,
                })
                .collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
            provenance,
        };
        let ring = set.ring(None)?;
        for (src, f) in set.relations.iter().zip(set.parsed_relations(&ring)?) {
            if !f.is_homogeneous() || !is_weight_homogeneous(&ring, &f) {
                return Err(Error::InhomogeneousRelation(src.clone()));
            }
        }
        Ok(set)
    }

    /// Drops generators of odd total degree, which square to zero for
    /// `p > 2`.
    pub fn without_nilpotents(&self) -> Self {
        let mut out = self.clone();
        if self.prime > 2 {
            out.generators.retain(|g| !total_is_odd(g.bidegree));
            let names: Vec<&str> = out.generators.iter().map(|g| g.name.as_str()).collect();
            out.relations.retain(|r| {
                crate::grpoly::Expr::parse(r)
                    .map(|e| e.identifiers().iter().all(|i| names.contains(&i.as_str())))
                    .unwrap_or(false)
            });
        }
        out
    }

    /// The generators as variables whose parity is that of the total degree
    /// `n + m`, weighted by `weights` or by `n`.
    fn ring(&self, weights: Option<Vec<u32>>) -> Result<Arc<Ring>> {
        let mut vars = Vec::new();
        for g in &self.generators {
            if g.bidegree.cohom == 0 {
                return Err(Error::Invalid(format!("generator {} has cohomological degree 0", g.name)));
            }
            let shift = InternalDegree::constant(g.bidegree.cohom as i64);
            vars.push(Variable::new(g.name.clone(), g.bidegree.internal + shift));
        }
        let weights =
            weights.unwrap_or_else(|| self.generators.iter().map(|g| g.bidegree.cohom).collect());
        Ring::builder(self.prime as u64, vars).weights(weights).build()
    }

    fn parsed_relations(&self, ring: &Arc<Ring>) -> Result<Vec<GradedPoly>> {
        self.relations.iter().map(|s| parse_poly(ring, s)).collect()
    }
}

fn total_is_odd(b: Bidegree) -> bool {
    (b.internal + InternalDegree::constant(b.cohom as i64)).is_odd()
}

fn is_weight_homogeneous(ring: &Ring, f: &GradedPoly) -> bool {
    let mut ws = f.terms().iter().map(|(m, _)| ring.weight(m));
    let first = ws.next();
    ws.all(|w| Some(w) == first)
}

/// Bidegrees `ψ(z)` can have for `z` of bidegree `(n, m)` at height `r`:
/// `(n·2^{r-1}, m - n·2^{r-1}|t|)` for `p = 2`, and
/// `(n·p^r, m - l·p^r|t| - k|s|)` for each `2l + k = n` otherwise.
pub fn psi_bidegrees(z: Bidegree, p: u32, r: u32) -> Vec<Bidegree> {
    let n = z.cohom;
    if p == 2 {
        let q = 2u32.pow(r - 1);
        return vec![Bidegree::new(
            n * q,
            z.internal - InternalDegree::t() * (n * q) as i64,
        )];
    }
    let q = p.pow(r);
    let mut out: Vec<Bidegree> = (0..=n / 2)
        .map(|l| {
            let k = n - 2 * l;
            Bidegree::new(
                n * q,
                z.internal - InternalDegree::t() * (l * q) as i64 - InternalDegree::s() * k as i64,
            )
        })
        .collect();
    out.sort();
    out
}

/// Candidate images of one cohomology generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatch {
    pub name: String,
    pub bidegree: Bidegree,
    pub targets: Vec<Bidegree>,
    pub candidates: Vec<String>,
    #[serde(skip)]
    monomials: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiMatch {
    pub bound: u32,
    pub generators: Vec<GeneratorMatch>,
}

impl PsiMatch {
    /// Every generator has exactly one candidate.
    pub fn is_unique(&self) -> bool {
        self.generators.iter().all(|g| g.candidates.len() == 1)
    }

    /// Generators with no candidate at all.
    pub fn unmatched(&self) -> Vec<&str> {
        self.generators
            .iter()
            .filter(|g| g.candidates.is_empty())
            .map(|g| g.name.as_str())
            .collect()
    }

    /// The assignment sending each generator to its only candidate.
    pub fn assignment(&self, ring: &BigradedRing) -> Result<PsiAssignment> {
        let mut images = Vec::new();
        for g in &self.generators {
            match g.monomials.as_slice() {
                [m] => images.push((
                    g.name.clone(),
                    GradedPoly::monomial(ring.ring(), m.clone(), 1),
                )),
                ms => {
                    return Err(Error::Invalid(format!(
                        "{} has {} candidates",
                        g.name,
                        ms.len()
                    )))
                }
            }
        }
        Ok(PsiAssignment { images })
    }
}

/// Every standard monomial of `ring` of total degree at most `bound` whose
/// bidegree is one `ψ` allows, for each generator.
pub fn match_generators(h: &CohomologyGeneratorSet, ring: &BigradedRing, bound: u32) -> PsiMatch {
    let (p, r) = (ring.prime(), ring.height());
    let generators = h
        .generators
        .iter()
        .map(|g| {
            let targets = psi_bidegrees(g.bidegree, p, r);
            let cohom = targets[0].cohom;
            let wanted: BTreeSet<Bidegree> = targets.iter().copied().collect();
            let monomials: Vec<Monomial> = ring
                .groebner()
                .standard_monomials(cohom)
                .into_iter()
                .filter(|m| m.total_degree() <= bound && wanted.contains(&ring.monomial_bidegree(m)))
                .collect();
            GeneratorMatch {
                name: g.name.clone(),
                bidegree: g.bidegree,
                targets,
                candidates: monomials.iter().map(|m| ring.ring().format_monomial(m)).collect(),
                monomials,
            }
        })
        .collect();
    PsiMatch { bound, generators }
}

/// `ψ` on generators, as elements of a bigraded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiAssignment {
    pub images: Vec<(String, GradedPoly)>,
}

impl PsiAssignment {
    /// Parses `(generator, image)` pairs; images are expressions over `ring`.
    pub fn parse(ring: &BigradedRing, pairs: &[(&str, &str)]) -> Result<Self> {
        let images = pairs
            .iter()
            .map(|(g, img)| Ok((g.to_string(), parse_poly(ring.ring(), img)?)))
            .collect::<Result<_>>()?;
        Ok(PsiAssignment { images })
    }

    fn images_for(&self, h: &CohomologyGeneratorSet) -> Result<Vec<GradedPoly>> {
        h.generators
            .iter()
            .map(|g| {
                self.images
                    .iter()
                    .find(|(n, _)| *n == g.name)
                    .map(|(_, f)| f.clone())
                    .ok_or_else(|| Error::Invalid(format!("no image for {}", g.name)))
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.images.iter().map(|(n, f)| (n.clone(), f.to_string())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    /// Normal form of the image; `"0"` when the relation holds.
    pub image: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraMapReport {
    pub checks: Vec<RelationCheck>,
}

impl AlgebraMapReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Sends every relation of `h` through the assignment and reduces it in
/// `ring`.
pub fn check_algebra_map(
    h: &CohomologyGeneratorSet,
    assignment: &PsiAssignment,
    ring: &BigradedRing,
) -> Result<AlgebraMapReport> {
    let hring = h.ring(None)?;
    let images = assignment.images_for(h)?;
    let mut checks = Vec::new();
    for (src, f) in h.relations.iter().zip(h.parsed_relations(&hring)?) {
        let nf = ring.normal_form(&f.substitute(ring.ring(), &images)?);
        checks.push(RelationCheck {
            relation: src.clone(),
            image: nf.to_string(),
            passed: nf.is_zero(),
        });
    }
    Ok(AlgebraMapReport { checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMonoReport {
    /// Cohomological degree in the target through which independence holds.
    pub bound: u32,
    pub monomials: usize,
    pub rank: usize,
    pub independent: bool,
    /// Cohomology monomials whose images depend on earlier ones.
    pub dependent: Vec<String>,
}

/// Maps every standard monomial of the cohomology ring whose image has
/// cohomological degree at most `weight_bound` and checks that the images
/// are linearly independent in `ring`.
pub fn f_mono_evidence(
    h: &CohomologyGeneratorSet,
    assignment: &PsiAssignment,
    ring: &BigradedRing,
    weight_bound: u32,
    cfg: &GroebnerConfig,
) -> Result<FMonoReport> {
    let (p, r) = (ring.prime(), ring.height());
    let weights: Vec<u32> = h
        .generators
        .iter()
        .map(|g| psi_bidegrees(g.bidegree, p, r)[0].cohom)
        .collect();
    let hring = h.ring(Some(weights))?;
    let gb = GroebnerBasis::new(&hring, &h.parsed_relations(&hring)?, cfg)?;
    let monomials = gb.standard_monomials(weight_bound);
    if monomials.len() > MAX_EVIDENCE_MONOMIALS {
        return Err(Error::bound("cohomology monomials", MAX_EVIDENCE_MONOMIALS));
    }
    let images = assignment.images_for(h)?;
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut ech: Echelon<usize> = Echelon::new(ring.ring().field());
    let mut dependent = Vec::new();
    for (k, m) in monomials.iter().enumerate() {
        let f = GradedPoly::monomial(&hring, m.clone(), 1);
        let img = ring.normal_form(&f.substitute(ring.ring(), &images)?);
        let mut v = SparseVec::new();
        for (mono, c) in img.terms() {
            let next = columns.len();
            v.insert(*columns.entry(mono.clone()).or_insert(next), *c);
        }
        if !ech.insert(k, &v) {
            dependent.push(hring.format_monomial(m));
        }
    }
    Ok(FMonoReport {
        bound: weight_bound,
        monomials: monomials.len(),
        rank: ech.rank(),
        independent: dependent.is_empty(),
        dependent,
    })
}
