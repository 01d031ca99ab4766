mod common;

use std::collections::BTreeMap;

use arithpoints_core::covers::{branched_cover, cover_profile, riemann_hurwitz, CoverData};
use arithpoints_core::exactmath::{is_transitive, smith_normal_form};
use arithpoints_core::homology::build_chain_complex;
use arithpoints_core::orbits::{act_shear_h, act_shear_v, canonical_form};
use arithpoints_core::origami::{all_permutations, enumerate_origamis, genus, singularity_profile};
use arithpoints_core::superelliptic::{
    divisor_of_function, parse_fraction, Bivariate, Divisor, FunctionExpr, SuperellipticCurve,
};
use arithpoints_core::{GaussianRational, IntMatrix, Origami, Permutation, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn origami(max: usize) -> impl Strategy<Value = Origami> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        common::random_origami(&mut ChaCha8Rng::seed_from_u64(seed), n)
    })
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| {
        GaussianRational::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), d.into()))
    })
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(gaussian(), 0..6).prop_map(Polynomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_equivalent_and_divisible(entries in prop::collection::vec(-9i64..=9, 64)) {
        let rows: Vec<Vec<i64>> = entries.chunks(8).map(<[i64]>::to_vec).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let (d, u, v) = smith_normal_form(&a);
        prop_assert_eq!(u.checked_mul(&a).unwrap().checked_mul(&v).unwrap(), d.clone());
        prop_assert!(u.determinant().unwrap().abs().is_one());
        prop_assert!(v.determinant().unwrap().abs().is_one());
        let mut prev = BigInt::one();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    prop_assert!(d.row(i)[j].is_zero());
                }
            }
            let di = &d.row(i)[i];
            prop_assert!(!di.is_negative());
            if prev.is_zero() {
                prop_assert!(di.is_zero());
            } else {
                prop_assert!((di % &prev).is_zero());
            }
            prev = di.clone();
        }
        prop_assert_eq!(d.rank(), a.rank());
    }

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, GaussianRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        }
        prop_assert_eq!((&a * &a.conj()).im.clone(), Rational::zero());
    }

    #[test]
    fn polynomial_division(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn permutation_group_laws(n in 1usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q, r) = (
            common::random_permutation(&mut rng, n),
            common::random_permutation(&mut rng, n),
            common::random_permutation(&mut rng, n),
        );
        let id = Permutation::identity(n);
        prop_assert_eq!(p.compose(&q).unwrap().compose(&r).unwrap(), p.compose(&q.compose(&r).unwrap()).unwrap());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(id.compose(&p).unwrap(), p.clone());
        // Right-to-left: (p∘q)(x) = p(q(x)).
        for x in 0..n {
            prop_assert_eq!(p.compose(&q).unwrap().apply(x), p.apply(q.apply(x)));
        }
        let cycle_sum: usize = p.cycle_type().iter().sum();
        prop_assert_eq!(cycle_sum, n);
        prop_assert_eq!(p.compose(&q).unwrap().is_even(), p.is_even() == q.is_even());
    }

    #[test]
    fn canonical_form_is_conjugation_invariant(o in origami(8), seed in any::<u64>()) {
        let sigma = common::random_permutation(&mut ChaCha8Rng::seed_from_u64(seed), o.squares());
        let conj = o.conjugate_by(&sigma).unwrap();
        prop_assert_eq!(canonical_form(&o).unwrap(), canonical_form(&conj).unwrap());
        let c = canonical_form(&o).unwrap();
        prop_assert_eq!(canonical_form(c.origami()).unwrap(), c.clone());
    }

    #[test]
    fn boundary_of_boundary_vanishes(o in origami(10)) {
        let cx = build_chain_complex(&o).unwrap();
        prop_assert!(cx.d1.checked_mul(&cx.d2).unwrap().is_zero());
        prop_assert_eq!(cx.cone_angle.iter().sum::<usize>(), o.squares());
    }

    #[test]
    fn shears_preserve_stratum(o in origami(9)) {
        let s = singularity_profile(&o).unwrap();
        for image in [act_shear_h(&o).unwrap(), act_shear_v(&o).unwrap()] {
            prop_assert_eq!(singularity_profile(&image).unwrap(), s.clone());
            prop_assert!(image.is_connected());
        }
    }

    #[test]
    fn swapped_shear_conjugation(o in origami(8)) {
        // shear_v is the horizontal shear conjugated by the coordinate swap.
        let via_swap = act_shear_h(&o.swapped()).unwrap().swapped();
        prop_assert_eq!(act_shear_v(&o).unwrap(), via_swap);
    }

    #[test]
    fn bivariate_display_round_trips(coeffs in prop::collection::vec(poly(), 0..4)) {
        let b = Bivariate::new(coeffs);
        let parsed = parse_fraction(&b.to_string()).unwrap();
        prop_assert_eq!(parsed.den, Bivariate::one());
        prop_assert_eq!(parsed.num, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn riemann_hurwitz_on_random_covers(o in origami(6), k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = CoverData {
            degree: k,
            horizontal: (0..o.squares()).map(|_| common::random_permutation(&mut rng, k)).collect(),
            vertical: (0..o.squares()).map(|_| common::random_permutation(&mut rng, k)).collect(),
        };
        match branched_cover(&o, &data) {
            Ok(cover) => {
                let (lhs, rhs) = riemann_hurwitz(&o, &data).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(cover.squares(), k * o.squares());
                prop_assert_eq!(cover_profile(&o, &data).unwrap(), singularity_profile(&cover).unwrap());
            }
            Err(_) => {
                let mut h = Vec::new();
                let mut v = Vec::new();
                for j in 0..k {
                    for s in 0..o.squares() {
                        h.push(data.horizontal[s].apply(j) * o.squares() + o.h().apply(s));
                        v.push(data.vertical[s].apply(j) * o.squares() + o.v().apply(s));
                    }
                }
                let (h, v) = (Permutation::from_images(h).unwrap(), Permutation::from_images(v).unwrap());
                prop_assert!(!is_transitive(k * o.squares(), &[&h, &v]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn principal_divisors_add(a in 0u32..=3, b in 0u32..=3, c in 0u32..=2, d in 0u32..=2) {
        let curve: SuperellipticCurve = "2; f = x^7 - 1".parse().unwrap();
        let f = |s: String| -> FunctionExpr { curve.function(&s).unwrap() };
        let u = f(format!("x^{a} * (y - i)^{c}"));
        let v = f(format!("(x - 1)^{b} / (y + i)^{d}"));
        let uv = f(format!("x^{a} * (y - i)^{c} * (x - 1)^{b} / (y + i)^{d}"));
        let du = divisor_of_function(&curve, &u, &[]).unwrap();
        let dv = divisor_of_function(&curve, &v, &[]).unwrap();
        let mut sum = BTreeMap::new();
        for (p, k) in du.terms().iter().chain(dv.terms()) {
            *sum.entry(p.clone()).or_insert(0) += k;
        }
        prop_assert_eq!(divisor_of_function(&curve, &uv, &[]).unwrap(), Divisor::from_terms(sum));
    }
}

/// Burnside count of transitive pairs up to simultaneous conjugation.
fn burnside_count(n: usize) -> usize {
    let perms = all_permutations(n);
    let mut fixed = 0;
    for sigma in &perms {
        let centralizer: Vec<&Permutation> =
            perms.iter().filter(|p| p.conjugate_by(sigma).unwrap() == **p).collect();
        for h in &centralizer {
            for v in &centralizer {
                if is_transitive(n, &[h, v]) {
                    fixed += 1;
                }
            }
        }
    }
    fixed / perms.len()
}

#[test]
fn origami_class_counts() {
    let expected = [1, 3, 7, 26, 97];
    for n in 1..=5 {
        let classes = enumerate_origamis(n).unwrap();
        assert_eq!(classes.len(), expected[n - 1], "n = {n}");
        for o in &classes {
            assert_eq!(genus(o).unwrap(), singularity_profile(o).unwrap().genus());
        }
        assert_eq!(burnside_count(n), expected[n - 1], "oracle n = {n}");
    }
}
