use std::collections::BTreeMap;

use proptest::prelude::*;
use vstar_core::cohom::{cohomology_hilbert, minimal_resolution, BettiTable};
use vstar_core::hopf::FiniteAlgebra;
use vstar_core::{fixtures, EvalWeights, InternalDegree};

/// A generator of a free graded-commutative algebra: cohomological degree,
/// internal degree, and whether it squares to zero.
struct Gen {
    n: u32,
    degree: InternalDegree,
    exterior: bool,
}

/// Bigraded dimensions of the free graded-commutative algebra on `gens`, by
/// enumerating monomials.
fn monomial_table(gens: &[Gen], max_n: u32, max_weight: i64) -> BTreeMap<(u32, InternalDegree), usize> {
    let w = EvalWeights::default();
    let mut out = BTreeMap::new();
    fn go(
        gens: &[Gen],
        k: usize,
        n: u32,
        d: InternalDegree,
        max_n: u32,
        max_weight: i64,
        w: EvalWeights,
        out: &mut BTreeMap<(u32, InternalDegree), usize>,
    ) {
        if k == gens.len() {
            *out.entry((n, d)).or_insert(0) += 1;
            return;
        }
        let g = &gens[k];
        let mut e = 0;
        loop {
            let (n2, d2) = (n + e * g.n, d + g.degree * e as i64);
            if n2 > max_n || d2.eval(w) > max_weight {
                break;
            }
            go(gens, k + 1, n2, d2, max_n, max_weight, w, out);
            if g.exterior && e == 1 {
                break;
            }
            e += 1;
        }
    }
    go(gens, 0, 0, InternalDegree::ZERO, max_n, max_weight, w, &mut out);
    out
}

fn as_map(table: &BettiTable) -> BTreeMap<(u32, InternalDegree), usize> {
    table.entries.iter().map(|e| ((e.n, e.degree), e.dim)).collect()
}

#[test]
fn additive_p2_matches_polynomial_ring() {
    for r in 1..=2u32 {
        let alg = fixtures::additive(2, r).dual_group_algebra().unwrap();
        let table = cohomology_hilbert(&alg, 6, 40).unwrap();
        let gens: Vec<Gen> = (0..r)
            .map(|i| Gen {
                n: 1,
                degree: InternalDegree::t() * 2i64.pow(i),
                exterior: false,
            })
            .collect();
        assert_eq!(as_map(&table), monomial_table(&gens, 6, 40), "r = {r}");
    }
}

#[test]
fn additive_p3_matches_its_cohomology_ring() {
    let alg = fixtures::additive(3, 1).dual_group_algebra().unwrap();
    let table = cohomology_hilbert(&alg, 6, 40).unwrap();
    let gens = [
        Gen { n: 2, degree: InternalDegree::t() * 3, exterior: false },
        Gen { n: 1, degree: InternalDegree::s(), exterior: false },
        Gen { n: 1, degree: InternalDegree::t(), exterior: true },
    ];
    assert_eq!(as_map(&table), monomial_table(&gens, 6, 40));
    assert_eq!(table.totals(), [1, 2, 3, 4, 5, 6, 7]);
}

fn finite_algebras() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("s1", fixtures::s1().dual_group_algebra().unwrap()),
        ("stodd", fixtures::stodd().dual_group_algebra().unwrap()),
        ("ga_p2_r2", fixtures::additive(2, 2).dual_group_algebra().unwrap()),
        ("ga_p3_r1", fixtures::additive(3, 1).dual_group_algebra().unwrap()),
    ]
}

/// `Σ_n (-1)^n dim F_n(δ) = [δ = 0]` wherever every `F_n(δ)` that can be
/// nonzero has been computed.
#[test]
fn euler_characteristic_is_trivial() {
    let w = EvalWeights::default();
    let (max_n, max_weight) = (5u32, 30i64);
    for (name, alg) in finite_algebras() {
        let res = minimal_resolution(&alg, max_n, max_weight).unwrap();
        assert!(res.is_minimal(), "{name}");
        assert!(res.composites_vanish(), "{name}");
        let min_w = (0..alg.dim())
            .filter(|&a| a != alg.unit)
            .map(|a| -alg.degrees[a].eval(w))
            .min()
            .unwrap();
        // F_{max_n+1} is generated in weight at least (max_n + 1)·min_w
        let exact = max_weight.min((max_n as i64 + 1) * min_w - 1);
        let mut chi: BTreeMap<InternalDegree, i64> = BTreeMap::new();
        for n in 0..=max_n as usize {
            for (d, k) in res.stratum_dims(n) {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                *chi.entry(d).or_insert(0) += sign * k as i64;
            }
        }
        for (d, v) in chi {
            if -d.eval(w) <= exact {
                assert_eq!(v, i64::from(d.is_zero()), "{name} at {d}");
            }
        }
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn table_ignores_basis_order(which in 0usize..4, seed in permutation(12)) {
        let (name, alg) = finite_algebras().swap_remove(which);
        let perm: Vec<usize> = seed.into_iter().filter(|&i| i < alg.dim()).collect();
        prop_assume!(perm.len() == alg.dim());
        let a = cohomology_hilbert(&alg, 4, 24).unwrap();
        let b = cohomology_hilbert(&alg.permuted(&perm), 4, 24).unwrap();
        prop_assert_eq!(a, b, "{}", name);
    }
}
