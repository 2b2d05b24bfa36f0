//! The bundled worked examples: which jobs `reproduce-paper` runs, the
//! comparison of the odd Steenrod example against its stated presentation,
//! and the golden-file diff.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vstar_core::hopf::PresentationFile;
use vstar_core::onepar::{self, Bidegree, BigradedRing, RingDocument};
use vstar_core::psi::CohomologyGeneratorSet;
use vstar_core::{embed, fixtures, Error, Result};

use crate::report::{self, ring_text, Bounds, Document};

pub const GA_P3_R1: &str = include_str!("../fixtures/ga_p3_r1.json");
pub const GA_P3_R2: &str = include_str!("../fixtures/ga_p3_r2.json");
pub const H_GA_P3_R1: &str = include_str!("../fixtures/cohomology/ga_p3_r1.json");
pub const H_GA_P3_R2: &str = include_str!("../fixtures/cohomology/ga_p3_r2.json");
pub const H_S1: &str = include_str!("../fixtures/cohomology/s1.json");
pub const H_W1_P3: &str = include_str!("../fixtures/cohomology/w1_p3.json");
pub const H_W2: &str = include_str!("../fixtures/cohomology/w2.json");

/// Hilbert functions of the odd Steenrod example are compared through this
/// cohomological degree.
pub const STODD_WEIGHT: u32 = 30;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn parse<T: serde::de::DeserializeOwned>(src: &str) -> T {
    serde_json::from_str(src).expect("bundled fixture")
}

#[derive(Clone, Debug)]
pub enum Job {
    Validate(PresentationFile),
    Embed(PresentationFile),
    Vr(PresentationFile, u32),
    Cohomology(PresentationFile, u32, i64),
    Psi(PresentationFile, Box<CohomologyGeneratorSet>, u32),
    Stodd,
}

pub fn jobs() -> Vec<(&'static str, Job)> {
    let psi = |f: PresentationFile, h: &str, r| Job::Psi(f, Box::new(parse(h)), r);
    vec![
        ("validate_s1", Job::Validate(fixtures::s1_file())),
        ("validate_empty", Job::Validate(fixtures::empty_file())),
        ("embed_s1", Job::Embed(fixtures::s1_file())),
        ("vr_s1", Job::Vr(fixtures::s1_file(), 2)),
        ("vr_w1_p2", Job::Vr(fixtures::w1_file(2), 2)),
        ("vr_w1_p3", Job::Vr(fixtures::w1_file(3), 2)),
        ("vr_w2", Job::Vr(fixtures::w2_file(), 1)),
        ("vr_stodd", Job::Vr(fixtures::stodd_file(), 1)),
        ("stodd_comparison", Job::Stodd),
        ("cohomology_ga_p2_r1", Job::Cohomology(fixtures::additive_file(2, 1), 6, 40)),
        ("cohomology_ga_p2_r2", Job::Cohomology(fixtures::additive_file(2, 2), 6, 40)),
        ("cohomology_ga_p3_r1", Job::Cohomology(fixtures::additive_file(3, 1), 6, 40)),
        ("psi_ga_p3_r1", psi(parse(GA_P3_R1), H_GA_P3_R1, 1)),
        ("psi_ga_p3_r2", psi(parse(GA_P3_R2), H_GA_P3_R2, 2)),
        ("psi_s1", psi(fixtures::s1_file(), H_S1, 2)),
        ("psi_w1_p3", psi(fixtures::w1_file(3), H_W1_P3, 2)),
        ("psi_w2", psi(fixtures::w2_file(), H_W2, 1)),
    ]
}

impl Job {
    pub fn run(&self, bounds: &Bounds) -> Result<Document> {
        let with_height = |r: u32| Bounds {
            height: Some(r),
            ..bounds.clone()
        };
        Ok(match self {
            Job::Validate(f) => Document::Validate(report::validate(f, bounds)?),
            Job::Embed(f) => Document::Embed(report::embed(f, bounds)?),
            Job::Vr(f, r) => Document::Vr(report::vr(f, &with_height(*r))?),
            Job::Cohomology(f, n, w) => Document::Cohomology(report::cohomology(
                f,
                &Bounds {
                    depth: Some(*n),
                    max_weight: Some(*w),
                    ..bounds.clone()
                },
            )?),
            Job::Psi(f, h, r) => Document::Psi(report::psi(f, h, None, &with_height(*r))?),
            Job::Stodd => Document::Stodd(stodd_comparison(bounds)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDifference {
    pub bidegree: Bidegree,
    pub computed: usize,
    pub stated: usize,
}

/// One way of making the stated presentation well defined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reading {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub reduced: RingDocument,
    /// The reduced Hilbert functions agree.
    pub consistent: bool,
    /// The first few bidegrees where the reduced Hilbert functions differ.
    pub differences: Vec<HilbertDifference>,
    /// The same before either side is reduced.
    pub unreduced_differences: Vec<HilbertDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoddDoc {
    pub bounds: Bounds,
    pub computed: RingDocument,
    pub computed_reduced: RingDocument,
    pub stated_generators: Vec<String>,
    pub stated_relations: Vec<String>,
    /// Variables in the stated relations that are not stated generators.
    pub undeclared: Vec<String>,
    /// Computed generators the stated presentation leaves out.
    pub omitted: Vec<String>,
    pub readings: Vec<Reading>,
}

impl StoddDoc {
    pub fn consistent_readings(&self) -> Vec<&str> {
        self.readings
            .iter()
            .filter(|r| r.consistent)
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn text(&self) -> String {
        let mut out = String::from("computed\n");
        ring_text(&mut out, &self.computed);
        out.push_str("computed, F-isomorphic to\n");
        ring_text(&mut out, &self.computed_reduced);
        let _ = writeln!(
            out,
            "stated: F_3[{}] / ({})",
            self.stated_generators.join(", "),
            self.stated_relations.join(", ")
        );
        let _ = writeln!(out, "undeclared in the stated relations: {}", self.undeclared.join(", "));
        let _ = writeln!(out, "computed generators not stated: {}", self.omitted.join(", "));
        for r in &self.readings {
            let _ = writeln!(
                out,
                "reading `{}`: reduced Hilbert function through {} {}",
                r.name,
                STODD_WEIGHT,
                if r.consistent { "matches" } else { "DIFFERS" }
            );
            for d in &r.differences {
                let _ = writeln!(out, "  {}: computed {}, stated {}", d.bidegree, d.computed, d.stated);
            }
            if let Some(d) = r.unreduced_differences.first() {
                let _ = writeln!(
                    out,
                    "  unreduced rings differ, first at {}: computed {}, stated {}",
                    d.bidegree, d.computed, d.stated
                );
            }
        }
        out
    }
}

const STATED_GENERATORS: [&str; 4] = ["X_12", "Y_12", "Y_13", "Y_14"];
const STATED_RELATIONS: [&str; 2] = ["Y_12*Y_13", "X_12*Y_13 - Y_12*X_13"];

fn differences(a: &BigradedRing, b: &BigradedRing) -> Vec<HilbertDifference> {
    let (ha, hb) = (a.hilbert(STODD_WEIGHT), b.hilbert(STODD_WEIGHT));
    let keys: BTreeSet<&Bidegree> = ha.keys().chain(hb.keys()).collect();
    keys.into_iter()
        .filter_map(|k| {
            let (x, y) = (ha.get(k).copied().unwrap_or(0), hb.get(k).copied().unwrap_or(0));
            (x != y).then_some(HilbertDifference {
                bidegree: *k,
                computed: x,
                stated: y,
            })
        })
        .take(5)
        .collect()
}

/// Compares the computed `V*_1` of the odd Steenrod example with its stated
/// presentation, which uses `X_13` without listing it. Both ways of reading
/// it are reported: `X_13` as an extra generator, and `X_13 = 0`.
pub fn stodd_comparison(bounds: &Bounds) -> Result<StoddDoc> {
    let mut bounds = Bounds {
        height: Some(1),
        ..bounds.clone()
    };
    let cfg = bounds.groebner();
    let (_, _, computed, reduced) =
        report::vr_rings(&fixtures::stodd_file(), &bounds, embed::DEFAULT_CERTIFICATE_WEIGHT)?;
    bounds.max_weight = Some(STODD_WEIGHT as i64);

    let bidegree_of = |name: &str| -> Result<Bidegree> {
        computed
            .generators()
            .into_iter()
            .find(|(g, _)| g == name)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::UnknownIdentifier(name.into()))
    };
    let mut readings = Vec::new();
    let adjoined: Vec<&str> = vec!["X_12", "X_13", "Y_12", "Y_13", "Y_14"];
    let killed: Vec<String> = STATED_RELATIONS
        .iter()
        .map(|r| r.replace(" - Y_12*X_13", ""))
        .collect();
    let cases: Vec<(&str, Vec<&str>, Vec<&str>)> = vec![
        ("X_13 adjoined", adjoined, STATED_RELATIONS.to_vec()),
        (
            "X_13 = 0",
            STATED_GENERATORS.to_vec(),
            killed.iter().map(String::as_str).collect(),
        ),
    ];
    for (name, gens, rels) in cases {
        let with_degrees = gens
            .iter()
            .map(|g| Ok((*g, bidegree_of(g)?)))
            .collect::<Result<Vec<_>>>()?;
        let raw = onepar::presented(3, &with_degrees, &rels, &cfg)?;
        let stated = onepar::reduce_f_iso(&raw, &cfg)?;
        let diffs = differences(&reduced, &stated);
        let unreduced_differences = differences(&computed, &raw);
        readings.push(Reading {
            name: name.into(),
            generators: gens.iter().map(|g| g.to_string()).collect(),
            relations: rels.iter().map(|r| r.to_string()).collect(),
            reduced: stated.to_document(),
            consistent: diffs.is_empty(),
            differences: diffs,
            unreduced_differences,
        });
    }
    let computed_names: Vec<String> = computed.generators().into_iter().map(|(g, _)| g).collect();
    Ok(StoddDoc {
        bounds,
        omitted: computed_names
            .iter()
            .filter(|g| !STATED_GENERATORS.contains(&g.as_str()))
            .cloned()
            .collect(),
        computed: computed.to_document(),
        computed_reduced: reduced.to_document(),
        stated_generators: STATED_GENERATORS.iter().map(|g| g.to_string()).collect(),
        stated_relations: STATED_RELATIONS.iter().map(|r| r.to_string()).collect(),
        undeclared: vec!["X_13".into()],
        readings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Differs,
    Missing,
    Blessed,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobStatus {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceDoc {
    pub bounds: Bounds,
    pub jobs: Vec<JobStatus>,
    pub passed: bool,
}

impl ReproduceDoc {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for j in &self.jobs {
            let status = serde_json::to_value(j.status).unwrap();
            let _ = write!(out, "{:<22} {}", j.name, status.as_str().unwrap_or(""));
            if let Some(d) = &j.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", if self.passed { "all outputs match" } else { "DIFFERENCES" });
        out
    }
}

/// First line where `expected` and `actual` disagree.
pub fn first_difference(expected: &str, actual: &str) -> Option<String> {
    let mut lines = expected.lines().zip(actual.lines()).enumerate();
    if let Some((i, (e, a))) = lines.find(|(_, (e, a))| e != a) {
        return Some(format!("line {}: expected `{}`, got `{}`", i + 1, e.trim(), a.trim()));
    }
    let (ne, na) = (expected.lines().count(), actual.lines().count());
    (ne != na).then(|| format!("expected {ne} lines, got {na}"))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differences_are_located() {
        assert_eq!(first_difference("a\nb\n", "a\nb\n"), None);
        assert_eq!(
            first_difference("a\nb\n", "a\nc\n").unwrap(),
            "line 2: expected `b`, got `c`"
        );
        assert!(first_difference("a\n", "a\nb\n").is_some());
    }

    #[test]
    fn bundled_inputs_parse() {
        assert_eq!(jobs().len(), 17);
    }
}
