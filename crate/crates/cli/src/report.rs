//! Report documents for each command. Every document carries the bounds it
//! was computed under and serializes canonically, so cached and freshly
//! computed runs print the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use vstar_core::cohom::{self, BettiEntry};
use vstar_core::embed::{self, Certificate};
use vstar_core::hopf::{Check, Classification, Height, HopfPresentation, PresentationFile};
use vstar_core::onepar::{self, Bidegree, BigradedRing, RingDocument};
use vstar_core::psi::{
    self, AlgebraMapReport, CohomologyGeneratorSet, FMonoReport, PsiAssignment, PsiMatch,
};
use vstar_core::{EvalWeights, Error, GroebnerConfig, InternalDegree, Result};

use crate::latex;
use crate::bundled::StoddDoc;

/// Heights are searched up to this exponent when none is given.
pub const HEIGHT_CAP: u32 = 16;
pub const DEFAULT_DEPTH: u32 = 6;
pub const DEFAULT_COHOMOLOGY_WEIGHT: i64 = 40;
pub const DEFAULT_EVIDENCE_WEIGHT: i64 = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_spairs: usize,
    pub groebner_weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matcher_bound: Option<u32>,
}

impl Bounds {
    pub fn groebner(&self) -> GroebnerConfig {
        GroebnerConfig {
            max_weight: self.groebner_weight,
            max_pairs: self.max_spairs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDegree {
    pub name: String,
    pub degree: InternalDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateDoc {
    pub bounds: Bounds,
    pub prime: u32,
    pub generators: Vec<NamedDegree>,
    pub relations: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub height: Height,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedDoc {
    pub bounds: Bounds,
    pub prime: u32,
    pub basis: Vec<String>,
    pub index: Vec<InternalDegree>,
    pub comatrix: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    pub unitriangular: bool,
    pub ideal: Vec<String>,
    pub certificate: Certificate,
}

impl EmbedDoc {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.certificate.complete && self.certificate.generates
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VrDoc {
    pub bounds: Bounds,
    pub presentation_height: u32,
    pub certificate: Certificate,
    pub ring: RingDocument,
    pub reduced: RingDocument,
    pub a1_weights: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDoc {
    pub bounds: Bounds,
    pub prime: u32,
    pub weights: EvalWeights,
    pub totals: Vec<usize>,
    pub entries: Vec<BettiEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Image {
    pub generator: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiDoc {
    pub bounds: Bounds,
    pub cohomology: CohomologyGeneratorSet,
    /// Generators of odd total degree, which are nilpotent and not matched.
    pub dropped: Vec<String>,
    pub ring: RingDocument,
    pub matches: PsiMatch,
    pub unique: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<Image>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_map: Option<AlgebraMapReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_mono: Option<FMonoReport>,
}

impl PsiDoc {
    pub fn passed(&self) -> bool {
        self.assignment.is_some()
            && self.algebra_map.as_ref().is_some_and(|a| a.passed())
            && self.f_mono.as_ref().is_some_and(|f| f.independent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Validate(ValidateDoc),
    Embed(EmbedDoc),
    Vr(VrDoc),
    Cohomology(CohomologyDoc),
    Psi(PsiDoc),
    Stodd(StoddDoc),
}

impl Document {
    /// Whether the claims of the report hold; failing reports exit with 1.
    pub fn passed(&self) -> bool {
        match self {
            Document::Validate(d) => d.passed,
            Document::Embed(d) => d.passed(),
            Document::Psi(d) => d.passed(),
            Document::Vr(_) | Document::Cohomology(_) | Document::Stodd(_) => true,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Document::Validate(d) => validate_text(d),
            Document::Embed(d) => embed_text(d),
            Document::Vr(d) => vr_text(d),
            Document::Cohomology(d) => cohomology_text(d),
            Document::Psi(d) => psi_text(d),
            Document::Stodd(d) => d.text(),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Document::Validate(d) => latex::validate(d),
            Document::Embed(d) => latex::embed(d),
            Document::Vr(d) => latex::vr(d),
            Document::Cohomology(d) => latex::cohomology(d),
            Document::Psi(d) => latex::psi(d),
            Document::Stodd(d) => latex::stodd(d),
        }
    }
}

pub fn presentation(file: &PresentationFile, bounds: &Bounds) -> Result<HopfPresentation> {
    HopfPresentation::from_file_with(file, bounds.groebner())
}

pub fn validate(file: &PresentationFile, bounds: &Bounds) -> Result<ValidateDoc> {
    let pres = presentation(file, bounds)?;
    let report = pres.validate()?;
    Ok(ValidateDoc {
        bounds: bounds.clone(),
        prime: pres.prime(),
        generators: pres
            .ring()
            .vars()
            .iter()
            .map(|v| NamedDegree {
                name: v.name.clone(),
                degree: v.degree,
            })
            .collect(),
        relations: pres.groebner().elements().iter().map(|f| f.to_string()).collect(),
        passed: report.passed(),
        checks: report.checks,
        height: pres.height(HEIGHT_CAP),
        classification: pres.classify(),
    })
}

fn certificate_weight(bounds: &Bounds) -> Result<u32> {
    let w = bounds.max_weight.unwrap_or(embed::DEFAULT_CERTIFICATE_WEIGHT as i64);
    u32::try_from(w).map_err(|_| Error::Invalid(format!("weight bound {w} out of range")))
}

pub fn embed(file: &PresentationFile, bounds: &Bounds) -> Result<EmbedDoc> {
    let pres = presentation(file, bounds)?;
    let cfg = bounds.groebner();
    let cm = embed::comatrix(&pres, &embed::default_basis(&pres)?)?;
    let ideal = embed::defining_ideal(&pres, &cm, &cfg, certificate_weight(bounds)?)?;
    Ok(EmbedDoc {
        bounds: bounds.clone(),
        prime: pres.prime(),
        basis: cm.basis().iter().map(|f| f.to_string()).collect(),
        index: cm.index().to_vec(),
        comatrix: cm
            .entries()
            .iter()
            .map(|row| row.iter().map(|a| a.to_string()).collect())
            .collect(),
        checks: cm.check(&pres)?,
        unitriangular: ideal.unitriangular,
        ideal: ideal.generators.iter().map(|f| f.to_string()).collect(),
        certificate: ideal.certificate,
    })
}

/// The bigraded ring and its F-isomorphic reduction at height `r`, which
/// defaults to the height of the presentation.
pub fn vr_rings(
    file: &PresentationFile,
    bounds: &Bounds,
    certificate_weight: u32,
) -> Result<(u32, Certificate, BigradedRing, BigradedRing)> {
    let pres = presentation(file, bounds)?;
    let cfg = bounds.groebner();
    let (r, h) = match (bounds.height, pres.height(HEIGHT_CAP)) {
        (Some(r), Height::Finite(h)) if r >= h => (r, h),
        (Some(r), _) => return Err(Error::HeightExceeds { r }),
        (None, Height::Finite(h)) => (h.max(1), h),
        (None, Height::Infinite) => {
            return Err(Error::Invalid(format!(
                "height exceeds {HEIGHT_CAP}; pass --height"
            )))
        }
    };
    let cm = embed::comatrix(&pres, &embed::default_basis(&pres)?)?;
    let ideal = embed::defining_ideal(&pres, &cm, &cfg, certificate_weight)?;
    let ring = onepar::vr_group_with(&pres, &cm, &ideal, r, &cfg)?;
    let reduced = onepar::reduce_f_iso(&ring, &cfg)?;
    Ok((h, ideal.certificate, ring, reduced))
}

pub fn vr(file: &PresentationFile, bounds: &Bounds) -> Result<VrDoc> {
    let (h, certificate, ring, reduced) = vr_rings(file, bounds, certificate_weight(bounds)?)?;
    let mut bounds = bounds.clone();
    bounds.height = Some(ring.height());
    bounds.max_weight.get_or_insert(certificate.bound as i64);
    Ok(VrDoc {
        bounds,
        presentation_height: h,
        certificate,
        ring: ring.to_document(),
        a1_weights: onepar::a1_weights(&reduced),
        reduced: reduced.to_document(),
    })
}

pub fn cohomology(file: &PresentationFile, bounds: &Bounds) -> Result<CohomologyDoc> {
    let pres = presentation(file, bounds)?;
    let mut bounds = bounds.clone();
    let depth = *bounds.depth.get_or_insert(DEFAULT_DEPTH);
    let weight = *bounds.max_weight.get_or_insert(DEFAULT_COHOMOLOGY_WEIGHT);
    let table = cohom::cohomology_of(&pres, depth, weight)?;
    Ok(CohomologyDoc {
        bounds,
        prime: pres.prime(),
        weights: table.weights,
        totals: table.totals(),
        entries: table.entries,
    })
}

/// Matches `h` against the reduced ring; `assign` overrides the matched
/// images.
pub fn psi(
    file: &PresentationFile,
    h: &CohomologyGeneratorSet,
    assign: Option<&[(String, String)]>,
    bounds: &Bounds,
) -> Result<PsiDoc> {
    if h.prime != file.prime as u32 {
        return Err(Error::Invalid(format!(
            "cohomology is over F_{} but the presentation over F_{}",
            h.prime, file.prime
        )));
    }
    let (_, _, _, ring) = vr_rings(file, bounds, embed::DEFAULT_CERTIFICATE_WEIGHT)?;
    let cfg = bounds.groebner();
    let mut bounds = bounds.clone();
    bounds.height = Some(ring.height());
    let matcher_bound = *bounds.matcher_bound.get_or_insert(psi::DEFAULT_MONOMIAL_BOUND);
    let evidence = *bounds.max_weight.get_or_insert(DEFAULT_EVIDENCE_WEIGHT);
    let evidence = u32::try_from(evidence)
        .map_err(|_| Error::Invalid(format!("weight bound {evidence} out of range")))?;

    let kept = h.without_nilpotents();
    let dropped = h
        .generators
        .iter()
        .filter(|g| !kept.generators.contains(g))
        .map(|g| g.name.clone())
        .collect();
    let matches = psi::match_generators(&kept, &ring, matcher_bound);
    let assignment = match assign {
        Some(pairs) => {
            let pairs: Vec<(&str, &str)> =
                pairs.iter().map(|(g, f)| (g.as_str(), f.as_str())).collect();
            Some(PsiAssignment::parse(&ring, &pairs)?)
        }
        None => matches.assignment(&ring).ok(),
    };
    let (algebra_map, f_mono) = match &assignment {
        Some(a) => (
            Some(psi::check_algebra_map(&kept, a, &ring)?),
            Some(psi::f_mono_evidence(&kept, a, &ring, evidence, &cfg)?),
        ),
        None => (None, None),
    };
    Ok(PsiDoc {
        bounds,
        unique: matches.is_unique(),
        cohomology: kept,
        dropped,
        ring: ring.to_document(),
        matches,
        assignment: assignment.map(|a| {
            a.to_strings()
                .into_iter()
                .map(|(generator, image)| Image { generator, image })
                .collect()
        }),
        algebra_map,
        f_mono,
    })
}

fn bounds_line(b: &Bounds) -> String {
    let mut parts = vec![
        format!("spairs ≤ {}", b.max_spairs),
        format!("groebner weight ≤ {}", b.groebner_weight),
    ];
    if let Some(r) = b.height {
        parts.push(format!("r = {r}"));
    }
    if let Some(w) = b.max_weight {
        parts.push(format!("weight ≤ {w}"));
    }
    if let Some(n) = b.depth {
        parts.push(format!("depth ≤ {n}"));
    }
    if let Some(m) = b.matcher_bound {
        parts.push(format!("monomial degree ≤ {m}"));
    }
    format!("bounds: {}\n", parts.join(", "))
}

fn checks_text(out: &mut String, checks: &[Check]) {
    for c in checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = write!(out, "  {mark} {}", c.name);
        if let Some(w) = &c.witness {
            let _ = write!(out, "  [{w}]");
        }
        out.push('\n');
    }
}

fn validate_text(d: &ValidateDoc) -> String {
    let mut out = format!("presentation over F_{}\n", d.prime);
    for g in &d.generators {
        let _ = writeln!(out, "  {}  |{}| = {}", g.name, g.name, g.degree);
    }
    let _ = writeln!(out, "relations: {}", list_or_none(&d.relations));
    checks_text(&mut out, &d.checks);
    let height = match d.height {
        Height::Finite(h) => h.to_string(),
        Height::Infinite => format!("> {HEIGHT_CAP}"),
    };
    let _ = writeln!(out, "height: {height}");
    let _ = writeln!(
        out,
        "elementary: {}, evenly graded: {}",
        d.classification.is_elementary, d.classification.is_evenly_graded
    );
    let _ = writeln!(out, "{}", if d.passed { "valid" } else { "INVALID" });
    out + &bounds_line(&d.bounds)
}

fn list_or_none(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.join(", ")
    }
}

fn embed_text(d: &EmbedDoc) -> String {
    let mut out = format!("comodule basis ({}): {}\n", d.basis.len(), d.basis.join(", "));
    let index: Vec<String> = d.index.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(out, "I = ({})", index.join(", "));
    out.push_str("comatrix:\n");
    for row in &d.comatrix {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    checks_text(&mut out, &d.checks);
    let _ = writeln!(out, "unitriangular: {}", d.unitriangular);
    let _ = writeln!(out, "ideal: {}", list_or_none(&d.ideal));
    let c = &d.certificate;
    let _ = writeln!(
        out,
        "certificate: {} degrees of weight ≤ {}, complete {}, generates {}",
        c.degrees_checked, c.bound, c.complete, c.generates
    );
    out + &bounds_line(&d.bounds)
}

pub fn ring_text(out: &mut String, doc: &RingDocument) {
    let _ = writeln!(out, "F_{}[", doc.prime);
    for g in &doc.generators {
        let _ = writeln!(out, "  {}  {}", g.name, g.bidegree);
    }
    let _ = writeln!(out, "] / ({})", doc.relations.join(", "));
}

fn history_text(out: &mut String, doc: &RingDocument) {
    let (zero, other): (Vec<_>, Vec<_>) = doc.eliminated.iter().partition(|s| s.value == "0");
    if !zero.is_empty() {
        let names: Vec<&str> = zero.iter().map(|s| s.variable.as_str()).collect();
        let _ = writeln!(out, "  vanishing: {}", names.join(", "));
    }
    for s in other {
        let _ = writeln!(out, "  solved {} = {}", s.variable, s.value);
    }
    for r in &doc.removed {
        let _ = writeln!(out, "  removed {} ({}^{} ∈ J)", r.name, r.name, doc.prime.pow(r.exponent));
    }
}

fn vr_text(d: &VrDoc) -> String {
    let r = d.ring.height;
    let mut out = format!("V*_{r} (presentation height {})\n", d.presentation_height);
    ring_text(&mut out, &d.ring);
    history_text(&mut out, &d.ring);
    out.push_str("F-isomorphic to\n");
    ring_text(&mut out, &d.reduced);
    for r in &d.reduced.removed {
        let _ = writeln!(out, "  removed {} ({}^{} ∈ J)", r.name, r.name, d.ring.prime.pow(r.exponent));
    }
    let w: Vec<String> = d.a1_weights.iter().map(|(g, w)| format!("{g}:{w}")).collect();
    let _ = writeln!(out, "A1 weights: {}", w.join(" "));
    let c = &d.certificate;
    let _ = writeln!(
        out,
        "embedding certificate: complete {} through weight {}",
        c.complete, c.bound
    );
    out + &bounds_line(&d.bounds)
}

fn cohomology_text(d: &CohomologyDoc) -> String {
    let mut out = format!("H^{{n,*}} over F_{}\n", d.prime);
    for (n, total) in d.totals.iter().enumerate() {
        let degrees: Vec<String> = d
            .entries
            .iter()
            .filter(|e| e.n as usize == n)
            .map(|e| {
                if e.dim == 1 {
                    e.degree.to_string()
                } else {
                    format!("{}×{}", e.dim, e.degree)
                }
            })
            .collect();
        let _ = writeln!(out, "  n={n}  dim {total}  [{}]", degrees.join(", "));
    }
    out + &bounds_line(&d.bounds)
}

fn psi_text(d: &PsiDoc) -> String {
    let mut out = String::from("reduced ring\n");
    ring_text(&mut out, &d.ring);
    if !d.dropped.is_empty() {
        let _ = writeln!(out, "nilpotent generators skipped: {}", d.dropped.join(", "));
    }
    for g in &d.matches.generators {
        let targets: Vec<String> = g.targets.iter().map(Bidegree::to_string).collect();
        let _ = writeln!(
            out,
            "  {} {} -> {} : {}",
            g.name,
            g.bidegree,
            targets.join(" | "),
            if g.candidates.is_empty() { "no candidate".into() } else { g.candidates.join(", ") }
        );
    }
    let _ = writeln!(out, "unique: {}", d.unique);
    if let Some(a) = &d.assignment {
        let images: Vec<String> = a.iter().map(|i| format!("{} ↦ {}", i.generator, i.image)).collect();
        let _ = writeln!(out, "psi: {}", images.join(", "));
    }
    if let Some(m) = &d.algebra_map {
        for c in &m.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {} ↦ {}", c.relation, c.image);
        }
    }
    if let Some(f) = &d.f_mono {
        let _ = writeln!(
            out,
            "F-mono evidence: {} monomials through weight {}, rank {}, independent {}",
            f.monomials, f.bound, f.rank, f.independent
        );
        if !f.dependent.is_empty() {
            let _ = writeln!(out, "  dependent: {}", f.dependent.join(", "));
        }
    }
    out + &bounds_line(&d.bounds)
}
