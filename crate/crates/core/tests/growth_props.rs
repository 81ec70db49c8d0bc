use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use tensorcat_core::cli::random_module;
use tensorcat_core::growth::{
    b_data, b_invariant, beta, binomial_dims, exterior_cat_dims, fekete_sequence, module_checks,
    padic_digits, plancherel_bound, recover_mk, tensor_power_length, Cyclotomic,
    DEFAULT_BOUNDS_CAP,
};
use tensorcat_core::modrep::{ext2, sym2, to_verlinde, JordanModule};
use tensorcat_core::scalars::{q_int, Prime, Real};
use tensorcat_core::verlinde::{fp_dim, power, FusionElement};
use tensorcat_core::Error;

fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn element(p: u64) -> impl Strategy<Value = FusionElement> {
    prop::collection::vec(0u64..3, p as usize - 1)
        .prop_filter("nonzero", |m| m.iter().any(|&c| c > 0))
        .prop_map(move |m| FusionElement::new(pr(p), m).unwrap())
}

#[test]
fn recover_mk_on_random_modules() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [3u64, 5, 7, 11, 13] {
        for _ in 0..200 {
            let v = random_module(&mut rng, pr(p), 3 * p as usize);
            let (b, diff) = b_data(&v).unwrap();
            let direct = to_verlinde(&v).unwrap();
            assert_eq!(
                recover_mk(pr(p), &b, &diff).unwrap(),
                direct.multiplicities(),
                "{v} at p={p}"
            );
        }
    }
}

#[test]
fn sym_ext_difference_is_q_squared_dimension() {
    let mut rng = StdRng::seed_from_u64(11);
    for p in [5u64, 7, 11] {
        for _ in 0..60 {
            let v = random_module(&mut rng, pr(p), 2 * p as usize);
            let m = to_verlinde(&v).unwrap();
            let lhs = &fp_dim(&to_verlinde(&sym2(&v).unwrap()).unwrap())
                - &fp_dim(&to_verlinde(&ext2(&v).unwrap()).unwrap());
            let rhs: Real = m
                .multiplicities()
                .iter()
                .enumerate()
                .map(|(i, &c)| &Real::from_int(c as i64) * &q_int(pr(p), i as u64 + 1, 2).unwrap())
                .sum();
            assert!(lhs.approx_eq(&rhs, &Real::epsilon(40)), "{v} at p={p}");
        }
    }
}

#[test]
fn divisibility_and_faithfulness() {
    let mut rng = StdRng::seed_from_u64(5);
    for p in [5u64, 7, 11, 13] {
        for _ in 0..100 {
            let v = random_module(&mut rng, pr(p), 3 * p as usize);
            let r = module_checks(&v).unwrap();
            assert!(r.checks.ii, "{v}");
            assert_ne!(r.checks.iv, Some(false), "{v}");
            assert_eq!(r.checks.iii.is_some(), v.dim() < p as usize);
        }
    }
}

#[test]
fn blocks_below_p_give_their_own_label() {
    for p in [5u64, 7, 11, 13] {
        for k in 1..p {
            let b = b_invariant(&JordanModule::block(pr(p), k as usize).unwrap()).unwrap();
            assert!(b
                .numeric()
                .approx_eq(&q_int(pr(p), k, 1).unwrap(), &Real::epsilon(60)));
        }
    }
}

#[test]
fn lucas_digits() {
    let mut rng = StdRng::seed_from_u64(13);
    for p in [2u64, 3, 5, 7] {
        for _ in 0..50 {
            let d: u64 = rand::Rng::random_range(&mut rng, 0..=p.pow(3));
            let dims = binomial_dims(pr(p), &BigUint::from(d), (p.pow(3) + 1) as usize);
            let digits = padic_digits(pr(p), &dims).unwrap();
            assert_eq!(digits.value(), BigUint::from(d), "D={d} p={p}");
            assert!(digits.digits.iter().all(|&t| t < p));
        }
    }
}

#[test]
fn exterior_dims_of_modules_give_their_dimension() {
    for (p, blocks) in [
        (3u64, vec![3, 1]),
        (5, vec![5, 2]),
        (5, vec![4, 4]),
        (7, vec![2, 7]),
    ] {
        let v = JordanModule::new(pr(p), 1, blocks).unwrap();
        let d = padic_digits(pr(p), &exterior_cat_dims(&v).unwrap()).unwrap();
        assert_eq!(d.value(), BigUint::from(v.dim()), "{v}");
    }
}

#[test]
fn plancherel_below_sharp_value() {
    for p in [3u64, 5, 7, 11, 13] {
        for d in 1..p {
            let b = plancherel_bound(pr(p), d, DEFAULT_BOUNDS_CAP).unwrap();
            assert!(b.bound <= q_int(pr(p), d, 1).unwrap(), "p={p} d={d}");
        }
    }
}

#[test]
fn huge_powers_report_overflow() {
    let x = FusionElement::new(pr(11), vec![3; 10]).unwrap();
    assert_eq!(power(&x, 40), Err(Error::Overflow("product")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lengths_are_supermultiplicative(x in prop::sample::select(&[3u64, 5, 7, 11][..]).prop_flat_map(element), m in 1u32..5, n in 1u32..5) {
        let cm = tensor_power_length(&x, m).unwrap();
        let cn = tensor_power_length(&x, n).unwrap();
        prop_assert!(tensor_power_length(&x, m + n).unwrap() >= cm * cn);
    }

    #[test]
    fn lengths_are_squeezed_by_beta(x in prop::sample::select(&[5u64, 7, 11][..]).prop_flat_map(element), n in 1u32..16) {
        let p = x.p();
        let b = beta(&x).unwrap();
        let bn = b.numeric().powi(n);
        let top = q_int(p, p.get().div_ceil(2), 1).unwrap();
        let c = tensor_power_length(&x, n);
        prop_assume!(!matches!(c, Err(Error::Overflow(_))));
        let c = Real::from_bigint(&c.unwrap().into());
        let slack = Real::epsilon(40);
        prop_assert!(c <= &bn + &slack);
        prop_assert!(&(&c * &top) + &slack >= bn);
    }

    #[test]
    fn fekete_sequence_stays_below_beta(x in prop::sample::select(&[5u64, 7][..]).prop_flat_map(element)) {
        let b = beta(&x).unwrap();
        let seq = fekete_sequence(&x, 12).unwrap();
        for (i, r) in seq.iter().enumerate() {
            prop_assert!(r <= &(b.numeric() + &Real::epsilon(40)), "n={}", i + 1);
        }
        prop_assert!(seq[11] >= seq[5]);
        prop_assert!(seq[5] >= seq[2]);
    }

    #[test]
    fn cyclotomic_numeric_agrees(p in prop::sample::select(&[3u64, 5, 7, 11, 13][..]), c in prop::collection::vec(-3i64..=3, 12)) {
        let c = &c[..p as usize - 1];
        let x = Cyclotomic::from_q_combination(pr(p), c).unwrap();
        let expected: Real = c.iter().enumerate()
            .map(|(i, &ci)| &Real::from_int(ci) * &q_int(pr(p), i as u64 + 1, 1).unwrap())
            .sum();
        prop_assert!(x.to_real().approx_eq(&expected, &Real::epsilon(40)));
        let y = Cyclotomic::from_q2_combination(pr(p), c).unwrap()
            .galois_q2_to_minus_q();
        let signed: Vec<i64> = c.iter().enumerate().map(|(i, &ci)| if i % 2 == 0 { ci } else { -ci }).collect();
        prop_assert_eq!(y, Cyclotomic::from_q_combination(pr(p), &signed).unwrap());
    }
}
