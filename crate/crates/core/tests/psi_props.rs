use proptest::prelude::*;
use vstar_core::hopf::HopfPresentation;
use vstar_core::onepar::{reduce_f_iso, vr_group, Bidegree, BigradedRing};
use vstar_core::psi::{
    check_algebra_map, f_mono_evidence, match_generators, psi_bidegrees, CohomologyGeneratorSet,
    PsiAssignment, Provenance, DEFAULT_MONOMIAL_BOUND,
};
use vstar_core::{fixtures, GroebnerConfig, InternalDegree};

fn bd(n: u32, c0: i64) -> Bidegree {
    Bidegree::new(n, InternalDegree::constant(c0))
}

fn reduced(pres: &HopfPresentation, r: u32) -> BigradedRing {
    let cfg = GroebnerConfig::default();
    reduce_f_iso(&vr_group(pres, r, &cfg).unwrap(), &cfg).unwrap()
}

fn assert_matches(h: &CohomologyGeneratorSet, ring: &BigradedRing, expected: &[(&str, &str)]) {
    let m = match_generators(h, ring, DEFAULT_MONOMIAL_BOUND);
    for (g, (name, image)) in m.generators.iter().zip(expected) {
        assert_eq!(g.name, *name);
        assert_eq!(g.candidates, [*image], "{name}");
    }
}

#[test]
fn additive_group_images() {
    let (u, v) = (2, 1);
    for r in 1..=2u32 {
        let file = fixtures::additive_with_degrees_file(
            3,
            r,
            InternalDegree::constant(u),
            InternalDegree::constant(v),
        );
        let ring = reduced(&HopfPresentation::from_file(&file).unwrap(), r);
        let mut gens: Vec<(String, Bidegree)> =
            (1..=r).map(|i| (format!("x{i}"), bd(2, u * 3i64.pow(i)))).collect();
        gens.push(("y".into(), bd(1, v)));
        let gens: Vec<(&str, Bidegree)> = gens.iter().map(|(n, b)| (n.as_str(), *b)).collect();
        let h = CohomologyGeneratorSet::new(3, &gens, &[], Provenance::Supplied).unwrap();
        // the comodule basis is (1, v, u) by degree, so x^l is
        // X^l_13 and y^0 is Y_12; x_i goes to (x^{r-i})^{p^i}
        let mut expected: Vec<(String, String)> = (1..=r)
            .map(|i| {
                let x = if r == 1 { "X_13".to_string() } else { format!("X{}_13", r - i) };
                (format!("x{i}"), format!("{x}^{}", 3u32.pow(i)))
            })
            .collect();
        expected.push(("y".into(), "Y_12".into()));
        let expected: Vec<(&str, &str)> =
            expected.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        assert_matches(&h, &ring, &expected);
    }
}

#[test]
fn wilkerson_first_example_images() {
    let ring = reduced(&fixtures::w1(3), 2);
    let h = CohomologyGeneratorSet::new(
        3,
        &[("b10", bd(2, 12)), ("b20", bd(2, 48)), ("b21", bd(2, 144)), ("b30", bd(2, 156))],
        &[],
        Provenance::Supplied,
    )
    .unwrap();
    assert_matches(
        &h,
        &ring,
        &[("b10", "X1_12^3"), ("b20", "X1_13^3"), ("b21", "X0_13^9"), ("b30", "X1_15^3")],
    );
}

fn w2_cohomology() -> CohomologyGeneratorSet {
    CohomologyGeneratorSet::new(
        2,
        &[("z1", bd(1, 1)), ("z2", bd(1, 2)), ("z3", bd(1, 3)), ("z4", bd(1, 4)), ("w", bd(2, 10))],
        &["z1*z4 + z2*z3"],
        Provenance::Supplied,
    )
    .unwrap()
}

#[test]
fn wilkerson_second_example() {
    let cfg = GroebnerConfig::default();
    let ring = reduced(&fixtures::w2(), 1);
    let h = w2_cohomology();
    assert_matches(
        &h,
        &ring,
        &[("z1", "X_12"), ("z2", "X_13"), ("z3", "X_14"), ("z4", "X_15"), ("w", "X_16^2")],
    );
    let a = match_generators(&h, &ring, DEFAULT_MONOMIAL_BOUND).assignment(&ring).unwrap();
    let report = check_algebra_map(&h, &a, &ring).unwrap();
    assert!(report.passed());
    assert_eq!(report.checks.len(), 1);
    let ev = f_mono_evidence(&h, &a, &ring, 20, &cfg).unwrap();
    assert!(ev.independent, "{:?}", ev.dependent);

    let swapped = PsiAssignment::parse(
        &ring,
        &[("z1", "X_13"), ("z2", "X_12"), ("z3", "X_14"), ("z4", "X_15"), ("w", "X_16^2")],
    )
    .unwrap();
    let report = check_algebra_map(&h, &swapped, &ring).unwrap();
    assert!(!report.passed());
    assert_ne!(report.checks[0].image, "0");
}

#[test]
fn no_relations_pass_vacuously() {
    let ring = reduced(&fixtures::s1(), 2);
    let h = CohomologyGeneratorSet::new(2, &[("h10", bd(1, 1))], &[], Provenance::Supplied).unwrap();
    let a = PsiAssignment::parse(&ring, &[("h10", "X1_12")]).unwrap();
    let report = check_algebra_map(&h, &a, &ring).unwrap();
    assert!(report.passed() && report.checks.is_empty());
}

#[test]
fn mismatched_bidegree_has_no_candidates() {
    let ring = reduced(&fixtures::s1(), 2);
    let h = CohomologyGeneratorSet::new(2, &[("h", bd(1, 2))], &[], Provenance::Supplied).unwrap();
    let m = match_generators(&h, &ring, DEFAULT_MONOMIAL_BOUND);
    assert_eq!(m.unmatched(), ["h"]);
    assert!(m.assignment(&ring).is_err());
}

fn degree() -> impl Strategy<Value = InternalDegree> {
    (-20i64..20, -3i64..3, -3i64..3).prop_map(|(a, b, c)| InternalDegree::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bidegree_sets_have_the_right_shape(
        n in 0u32..12,
        m in degree(),
        p in prop_oneof![Just(2u32), Just(3), Just(5)],
        r in 1u32..4,
    ) {
        let z = Bidegree::new(n, m);
        let set = psi_bidegrees(z, p, r);
        if p == 2 {
            prop_assert_eq!(set.len(), 1);
            prop_assert_eq!(set[0].cohom, n * 2u32.pow(r - 1));
            prop_assert_eq!(set[0].internal, m - InternalDegree::t() * (n * 2u32.pow(r - 1)) as i64);
        } else {
            prop_assert_eq!(set.len() as u32, n / 2 + 1);
            for b in &set {
                prop_assert_eq!(b.cohom, n * p.pow(r));
                // m - b = l p^r |t| + k |s| with 2l + k = n
                let diff = m - b.internal;
                prop_assert_eq!(diff.c0, 0);
                prop_assert!(diff.ct >= 0 && diff.ct % p.pow(r) as i64 == 0);
                prop_assert_eq!(2 * diff.ct / p.pow(r) as i64 + diff.cs, n as i64);
            }
        }
        if n == 0 {
            prop_assert_eq!(set, vec![Bidegree::new(0, m)]);
        }
    }
}
