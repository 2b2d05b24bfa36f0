use std::sync::Arc;

use proptest::prelude::*;
use vstar_core::grpoly::{eliminate, Strategy};
use vstar_core::linalg::{Echelon, SparseVec};
use vstar_core::{GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring, Variable};

// degrees 1,2,3,4,5: odd letters at indices 0, 2, 4 when p > 2
fn ring(p: u64) -> Arc<Ring> {
    Ring::new(
        p,
        (0..5)
            .map(|i| Variable::new(format!("v{}", i), InternalDegree::constant(i as i64 + 1)))
            .collect(),
    )
    .unwrap()
}

fn monomials_of_degree(r: &Ring, d: u32) -> Vec<Monomial> {
    fn rec(r: &Ring, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if left == 0 {
                let m = Monomial::from_exponents(cur.clone());
                if r.is_valid(&m) {
                    out.push(m);
                }
            }
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(r, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(r, 0, d, &mut vec![0; r.n_vars()], &mut out);
    out
}

/// Even polynomial, homogeneous for unit weights.
fn poly_from(r: &Arc<Ring>, d: u32, coeffs: &[u32]) -> GradedPoly {
    let mons = monomials_of_degree(r, d);
    GradedPoly::from_terms(
        r,
        mons.into_iter()
            .zip(coeffs.iter().cycle())
            .filter(|(m, _)| !r.is_odd_monomial(m))
            .map(|(m, &c)| (m, c)),
    )
}

/// Homogeneous in the internal degree, so the parity is well defined.
fn internal_homogeneous(r: &Arc<Ring>, total: i64, coeffs: &[u32]) -> GradedPoly {
    let mut mons = Vec::new();
    for d in 0..=6 {
        for m in monomials_of_degree(r, d) {
            if r.degree(&m) == InternalDegree::constant(total) {
                mons.push(m);
            }
        }
    }
    GradedPoly::from_terms(r, mons.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, c)))
}

/// Sorts letters by bubble sort, counting swaps of two odd letters.
fn oracle(r: &Arc<Ring>, word: &[usize]) -> GradedPoly {
    let mut w = word.to_vec();
    let mut swaps = 0;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if r.is_odd(w[j]) && r.is_odd(w[j + 1]) {
                    swaps += 1;
                }
                w.swap(j, j + 1);
            }
        }
    }
    let mut e = vec![0u16; r.n_vars()];
    for &l in &w {
        e[l] += 1;
    }
    if (0..r.n_vars()).any(|i| r.is_odd(i) && e[i] > 1) {
        return GradedPoly::zero(r);
    }
    let c = if swaps % 2 == 1 { r.prime() - 1 } else { 1 };
    GradedPoly::monomial(r, Monomial::from_exponents(e), c)
}

fn prime() -> impl proptest::strategy::Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_transposition_oracle(p in prime(), word in proptest::collection::vec(0usize..5, 0..9)) {
        let r = ring(p);
        let prod = word.iter().fold(GradedPoly::one(&r), |acc, &l| &acc * &GradedPoly::var(&r, l));
        prop_assert_eq!(prod, oracle(&r, &word));
    }

    #[test]
    fn graded_commutativity(p in prime(), a in 1i64..7, b in 1i64..7,
                            ca in proptest::collection::vec(0u32..7, 1..6),
                            cb in proptest::collection::vec(0u32..7, 1..6)) {
        let r = ring(p);
        let f = internal_homogeneous(&r, a, &ca);
        let g = internal_homogeneous(&r, b, &cb);
        let fg = &f * &g;
        let gf = &g * &f;
        if p > 2 && a % 2 == 1 && b % 2 == 1 {
            prop_assert_eq!(fg, -&gf);
        } else {
            prop_assert_eq!(fg, gf);
        }
    }

    #[test]
    fn odd_squares_vanish_and_char_two_has_no_signs(p in prime(), i in 0usize..5, k in 0usize..5) {
        let r = ring(p);
        let x = GradedPoly::var(&r, i);
        let y = GradedPoly::var(&r, k);
        if p > 2 && r.is_odd(i) {
            prop_assert!((&x * &x).is_zero());
        }
        if p == 2 {
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }

    #[test]
    fn normal_form_is_confluent_and_idempotent(p in prime(),
            c1 in proptest::collection::vec(0u32..7, 1..8),
            c2 in proptest::collection::vec(0u32..7, 1..8),
            c3 in proptest::collection::vec(0u32..7, 1..8),
            cf in proptest::collection::vec(0u32..7, 1..12)) {
        let r = ring(p);
        let gens = vec![
            internal_homogeneous(&r, 3, &c1),
            internal_homogeneous(&r, 4, &c2),
            internal_homogeneous(&r, 6, &c3),
        ];
        let gb = GroebnerBasis::new(&r, &gens, &GroebnerConfig::default()).unwrap();
        prop_assert!(gb.is_confluent());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        let f = internal_homogeneous(&r, 7, &cf);
        let a = gb.normal_form_with(&f, Strategy::FirstDivisor);
        let b = gb.normal_form_with(&f, Strategy::LastDivisor);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(gb.normal_form(&a), a);
        let again = GroebnerBasis::new(&r, &gens, &GroebnerConfig::default()).unwrap();
        prop_assert_eq!(gb.elements(), again.elements());
    }

    #[test]
    fn membership_agrees_with_linear_algebra(p in prime(),
            c1 in proptest::collection::vec(0u32..7, 1..10),
            c2 in proptest::collection::vec(0u32..7, 1..10),
            mults in proptest::collection::vec(0u32..7, 1..30),
            noise in proptest::collection::vec(0u32..7, 1..20),
            d in 2u32..7) {
        let r = ring(p);
        let gens = vec![poly_from(&r, 2, &c1), poly_from(&r, 3, &c2)];
        let gens: Vec<GradedPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = GroebnerBasis::new(&r, &gens, &GroebnerConfig::default()).unwrap();

        // span of m·g in degree d, keyed by monomial columns
        let cols = monomials_of_degree(&r, d);
        let col = |m: &Monomial| cols.iter().position(|c| c == m).unwrap();
        let vec_of = |f: &GradedPoly| -> SparseVec { f.terms().iter().map(|(m, c)| (col(m), *c)).collect() };
        let mut ech = Echelon::new(r.field());
        for g in &gens {
            let dg = g.leading_monomial().unwrap().total_degree();
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(&r, d - dg) {
                let mg = g.mul_term(&m, 1);
                ech.insert((), &vec_of(&mg));
            }
        }

        // random combination: always in the ideal
        let mut comb = GradedPoly::zero(&r);
        let mut k = 0;
        for g in &gens {
            let dg = g.leading_monomial().unwrap().total_degree();
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(&r, d - dg) {
                comb = &comb + &g.mul_term(&m, mults[k % mults.len()]);
                k += 1;
            }
        }
        prop_assert!(gb.contains(&comb));

        // random element: both oracles agree
        let f = poly_from(&r, d, &noise);
        prop_assert_eq!(gb.contains(&f), ech.express(&vec_of(&f)).is_some());
    }

    #[test]
    fn elimination_output_vanishes_under_substitution(a in 1u16..4, b in 1u16..4) {
        // x = xi^a, y = xi^b + eta in k[xi, eta]/(xi^4, eta^2) over F_2
        let r = Ring::new(2, ["xi", "eta", "x", "y"].iter()
            .map(|n| Variable::new(*n, InternalDegree::constant(1))).collect()).unwrap();
        let v = |i| GradedPoly::var(&r, i);
        let gens = vec![
            &v(2) - &v(0).pow(a as u32),
            &v(3) - &(&v(0).pow(b as u32) + &v(1)),
            v(0).pow(4),
            v(1).pow(2),
        ];
        let el = eliminate(&gens, &r, &[0, 1], &GroebnerConfig::default()).unwrap();
        let s = Ring::new(2, ["xi", "eta"].iter()
            .map(|n| Variable::new(*n, InternalDegree::constant(1))).collect()).unwrap();
        let rels = GroebnerBasis::new(&s, &[GradedPoly::var(&s, 0).pow(4), GradedPoly::var(&s, 1).pow(2)],
            &GroebnerConfig::default()).unwrap();
        let xi = GradedPoly::var(&s, 0);
        let images = vec![xi.pow(a as u32), &xi.pow(b as u32) + &GradedPoly::var(&s, 1)];
        for g in &el.generators {
            prop_assert!(rels.contains(&g.substitute(&s, &images).unwrap()));
        }
    }
}
