//! Bundled example presentations.

use std::collections::BTreeMap;

use crate::grpoly::InternalDegree;
use crate::hopf::{GeneratorSpec, HopfPresentation, Placeholders, PresentationFile};

pub const S1_JSON: &str = include_str!("../fixtures/s1.json");
pub const W1_P2_JSON: &str = include_str!("../fixtures/w1_p2.json");
pub const W1_P3_JSON: &str = include_str!("../fixtures/w1_p3.json");
pub const W2_JSON: &str = include_str!("../fixtures/w2.json");
pub const STODD_JSON: &str = include_str!("../fixtures/stodd.json");
pub const EMPTY_JSON: &str = include_str!("../fixtures/empty.json");

fn file(src: &str) -> PresentationFile {
    serde_json::from_str(src).expect("bundled fixture parses")
}

fn load(src: &str) -> HopfPresentation {
    HopfPresentation::from_file(&file(src)).expect("bundled fixture is well formed")
}

/// `A(1) = F_2[ξ1, ξ2]/(ξ1^4, ξ2^2)`.
pub fn s1_file() -> PresentationFile {
    file(S1_JSON)
}

pub fn s1() -> HopfPresentation {
    load(S1_JSON)
}

/// Wilkerson's first example, at `p = 2` or `p = 3`.
pub fn w1_file(p: u64) -> PresentationFile {
    match p {
        2 => file(W1_P2_JSON),
        3 => file(W1_P3_JSON),
        _ => panic!("bundled only for p = 2, 3"),
    }
}

pub fn w1(p: u64) -> HopfPresentation {
    HopfPresentation::from_file(&w1_file(p)).unwrap()
}

/// Wilkerson's second example.
pub fn w2() -> HopfPresentation {
    load(W2_JSON)
}

pub fn w2_file() -> PresentationFile {
    file(W2_JSON)
}

/// `F_3[ξ1, τ0, τ1]/(ξ1^3)` with `Δτ1 = τ1⊗1 + ξ1⊗τ0 + 1⊗τ1`.
pub fn stodd() -> HopfPresentation {
    load(STODD_JSON)
}

pub fn stodd_file() -> PresentationFile {
    file(STODD_JSON)
}

pub fn empty_file() -> PresentationFile {
    file(EMPTY_JSON)
}

/// `G*_a`: `k[t, s]` for `p > 2`, `k[t]` for `p = 2`, both primitive.
pub fn additive_infinite_file(p: u64) -> PresentationFile {
    let mut generators = vec![GeneratorSpec {
        name: "t".into(),
        degree: InternalDegree::t(),
    }];
    if p > 2 {
        generators.push(GeneratorSpec {
            name: "s".into(),
            degree: InternalDegree::s(),
        });
    }
    PresentationFile {
        prime: p,
        degree_placeholders: Placeholders::default(),
        generators,
        relations: Vec::new(),
        coproduct: BTreeMap::new(),
        comodule_basis: None,
    }
}

/// `G*_a(r)`: `k[t, s]/(t^(p^r))`.
pub fn additive_file(p: u64, r: u32) -> PresentationFile {
    let mut f = additive_infinite_file(p);
    f.relations.push(format!("t^{}", p.pow(r)));
    f
}

/// `G*_a(r)` on generators `u` (even) and `v` (odd, `p > 2` only) of the
/// given degrees, keeping `|t|` and `|s|` free for one-parameter subgroups.
pub fn additive_with_degrees_file(
    p: u64,
    r: u32,
    u: InternalDegree,
    v: InternalDegree,
) -> PresentationFile {
    let mut generators = vec![GeneratorSpec {
        name: "u".into(),
        degree: u,
    }];
    if p > 2 {
        generators.push(GeneratorSpec {
            name: "v".into(),
            degree: v,
        });
    }
    PresentationFile {
        prime: p,
        degree_placeholders: Placeholders::default(),
        generators,
        relations: vec![format!("u^{}", p.pow(r))],
        coproduct: BTreeMap::new(),
        comodule_basis: None,
    }
}

pub fn additive(p: u64, r: u32) -> HopfPresentation {
    HopfPresentation::from_file(&additive_file(p, r)).unwrap()
}

pub fn additive_infinite(p: u64) -> HopfPresentation {
    HopfPresentation::from_file(&additive_infinite_file(p)).unwrap()
}

/// Every bundled presentation by name.
pub fn all() -> Vec<(&'static str, PresentationFile)> {
    vec![
        ("s1", s1_file()),
        ("w1_p2", w1_file(2)),
        ("w1_p3", w1_file(3)),
        ("w2", w2_file()),
        ("stodd", stodd_file()),
        ("ga_p2_r2", additive_file(2, 2)),
        ("ga_p3_r1", additive_file(3, 1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_validates() {
        for (name, f) in all() {
            let pres = HopfPresentation::from_file(&f).unwrap();
            let rep = pres.validate().unwrap();
            assert!(rep.passed(), "{}: {:?}", name, rep.failures().collect::<Vec<_>>());
        }
        let empty = HopfPresentation::from_file(&empty_file()).unwrap();
        assert!(empty.validate().unwrap().passed());
    }
}
