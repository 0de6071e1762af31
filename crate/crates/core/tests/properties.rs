//! Randomized invariants of the core library, each checked against an
//! independent computation.

use proptest::prelude::*;
use tamearr_core::arrangement::Arrangement;
use tamearr_core::certify::{pd_omega, verify_certificate, Certifier, Search};
use tamearr_core::field::Rat;
use tamearr_core::lattice::{char_poly_by_subsets, characteristic_polynomial, intersection_lattice, CharPoly};
use tamearr_core::logmod::{betti, degreewise_dimension, is_free, pd_profile, Variant};
use tamearr_core::multi::{euler_multiplicity, multi_char_poly, rank2_exponents, MultiArrangement};
use tamearr_core::resolution::BettiTable;
use tamearr_core::{Budget, PrimeField, Rationals};

/// Essential arrangements with small integer forms; proportional duplicates
/// are dropped.
fn arrangement(dim: usize, max_n: usize) -> impl Strategy<Value = Arrangement> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, dim), dim..=max_n).prop_filter_map(
        "essential, at least ℓ distinct hyperplanes",
        move |rows| {
            let mut probe: Vec<Vec<i64>> = Vec::new();
            for r in rows {
                if r.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut s = probe.clone();
                s.push(r);
                let refs: Vec<&[i64]> = s.iter().map(|v| v.as_slice()).collect();
                if Arrangement::from_ints(dim, &refs).is_ok() {
                    probe = s;
                }
            }
            let refs: Vec<&[i64]> = probe.iter().map(|v| v.as_slice()).collect();
            let a = Arrangement::from_ints(dim, &refs).ok()?;
            (a.len() >= dim && a.rank() == dim).then_some(a)
        },
    )
}

fn multi(dim: usize, max_n: usize, max_m: u32) -> impl Strategy<Value = MultiArrangement> {
    arrangement(dim, max_n).prop_flat_map(move |a| {
        let n = a.len();
        proptest::collection::vec(1..=max_m, n).prop_map(move |m| MultiArrangement::new(a.clone(), m).unwrap())
    })
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Hilbert function of a module from the graded Betti numbers of its resolution.
fn hilbert_from_betti(b: &BettiTable, nvars: usize, d: i32) -> i64 {
    b.entries
        .iter()
        .map(|(&(i, j), &n)| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * n as i64 * binom((d - j) as i64 + nvars as i64 - 1, nvars as i64 - 1)
        })
        .sum()
}

/// Applies the coordinate change `x -> g x` to every form.
fn transform(a: &Arrangement, g: &[Vec<i64>]) -> Option<Arrangement> {
    let l = a.dim();
    let forms: Vec<Vec<Rat>> = a
        .forms()
        .iter()
        .map(|f| {
            (0..l)
                .map(|j| (0..l).fold(Rat::from_int(0), |acc, i| acc.add(&f[i].mul(&Rat::from_int(g[i][j])))))
                .collect()
        })
        .collect();
    Arrangement::new(l, forms, a.field()).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn mobius_matches_whitney(a in arrangement(3, 7)) {
        prop_assert_eq!(characteristic_polynomial(&a).unwrap(), char_poly_by_subsets(&a));
    }

    #[test]
    fn deletion_restriction_recursion(a in arrangement(4, 7), h in 0usize..7) {
        let h = h % a.len();
        let chi = characteristic_polynomial(&a).unwrap();
        let del = characteristic_polynomial(&a.delete(h)).unwrap();
        let res = characteristic_polynomial(&a.restrict(h).unwrap().arrangement).unwrap();
        prop_assert_eq!(chi, del.sub(&res));
    }

    #[test]
    fn simple_multiplicity_gives_mobius(a in arrangement(3, 6)) {
        let k = PrimeField::new(32003).unwrap();
        let ma = MultiArrangement::simple(a.clone());
        prop_assert_eq!(multi_char_poly(&ma, &k, &Budget::unlimited()).unwrap(), characteristic_polynomial(&a).unwrap());
        for h in 0..a.len() {
            let e = euler_multiplicity(&ma, h, &k).unwrap();
            prop_assert!(e.is_simple());
        }
    }

    #[test]
    fn free_multiarrangements_factor(ma in multi(2, 5, 4)) {
        let k = Rationals;
        let exps = rank2_exponents(&ma, &k).unwrap();
        let roots: Vec<i64> = exps.iter().map(|&d| d as i64).collect();
        prop_assert_eq!(multi_char_poly(&ma, &k, &Budget::unlimited()).unwrap(), CharPoly::from_roots(&roots));
        prop_assert_eq!(exps.iter().sum::<u32>(), ma.size());
    }

    #[test]
    fn free_rank3_factor(ma in multi(3, 5, 3)) {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        if let Some(exps) = is_free(&ma, &k, &b).unwrap().exponents {
            let roots: Vec<i64> = exps.iter().map(|&d| d as i64).collect();
            prop_assert_eq!(multi_char_poly(&ma, &k, &b).unwrap(), CharPoly::from_roots(&roots));
        }
    }

    #[test]
    fn degreewise_oracle_matches_resolution(ma in multi(3, 5, 2), p in 0usize..=3) {
        let k = PrimeField::new(32003).unwrap();
        let b = betti(&ma, p, Variant::Derivation, &k, &Budget::unlimited()).unwrap();
        for d in 0..=(ma.size() as i32 + 1) {
            let oracle = degreewise_dimension(&ma, p, Variant::Derivation, d, &k).unwrap();
            prop_assert_eq!(oracle as i64, hilbert_from_betti(&b, 3, d), "degree {}", d);
        }
    }

    #[test]
    fn forms_and_derivations_have_equal_pd(ma in multi(3, 6, 2), p in 0usize..=3) {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let omega = betti(&ma, p, Variant::Form, &k, &b).unwrap().pd().unwrap_or(0);
        let direct = betti(&ma, p, Variant::FormDirect, &k, &b).unwrap().pd().unwrap_or(0);
        let der = betti(&ma, 3 - p, Variant::Derivation, &k, &b).unwrap().pd().unwrap_or(0);
        prop_assert_eq!(omega, der);
        prop_assert_eq!(direct, der);
    }

    #[test]
    fn betti_invariant_under_reorder_and_coordinates(a in arrangement(3, 6), seed in 0u64..1000) {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let base = betti(&MultiArrangement::simple(a.clone()), 1, Variant::Derivation, &k, &b).unwrap();
        let mut idx: Vec<usize> = (0..a.len()).collect();
        idx.rotate_left(seed as usize % a.len());
        idx.reverse();
        let shuffled = MultiArrangement::simple(a.subarrangement(&idx));
        prop_assert_eq!(&base, &betti(&shuffled, 1, Variant::Derivation, &k, &b).unwrap());
        // unimodular upper triangular change of coordinates
        let s = (seed % 5) as i64 - 2;
        let g = vec![vec![1, s, 1], vec![0, 1, -s], vec![0, 0, 1]];
        if let Some(t) = transform(&a, &g) {
            prop_assert_eq!(&base, &betti(&MultiArrangement::simple(t), 1, Variant::Derivation, &k, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, .. ProptestConfig::default() })]

    #[test]
    fn localization_does_not_raise_pd(ma in multi(4, 6, 2)) {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let lat = intersection_lattice(&ma.arr).unwrap();
        let whole: Vec<usize> = (0..=4).map(|p| pd_omega(&ma, p, &k, &b).unwrap()).collect();
        // codimension one localizations are free and the centre is the whole arrangement
        for f in lat.flats.iter().filter(|f| f.codim > 1 && f.codim < 4) {
            let local = ma.localize(f);
            for p in 0..=4 {
                prop_assert!(pd_omega(&local, p, &k, &b).unwrap() <= whole[p]);
            }
        }
    }

    #[test]
    fn certificates_are_sound(a in arrangement(4, 7)) {
        let k = PrimeField::new(32003).unwrap();
        let b = Budget::unlimited();
        let ma = MultiArrangement::simple(a);
        let mut c = Certifier::new(&k, &b);
        if let Search::Certified { certificate } = c.certify_tame(&ma).unwrap() {
            prop_assert!(verify_certificate(&certificate, &k, &b).unwrap().ok);
            for node in certificate.nodes() {
                for claim in &node.conclusion {
                    let m = MultiArrangement::from_file(&claim.arrangement).unwrap();
                    prop_assert!(pd_profile(&m.essentialize().0, false, &k, &b).unwrap().tame, "{}", node.rule);
                }
            }
        }
    }
}
