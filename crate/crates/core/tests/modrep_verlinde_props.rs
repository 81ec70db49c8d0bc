use proptest::prelude::*;
use tensorcat_core::modrep::{
    ext2, exterior_power, jordan_tensor, jordan_type, non_negligible_part, sym2, sym2_direct,
    to_verlinde, JordanModule,
};
use tensorcat_core::scalars::{q_int, FpMatrix, Prime, Real};
use tensorcat_core::verlinde::{
    cat_dim, fp_dim, fusion, is_invertible, perron_frobenius_numeric, product, FusionElement,
};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// Truncated Clebsch–Gordan rule, written out independently.
fn verlinde_oracle(p: u64, i: u64, j: u64) -> Vec<u64> {
    let mut m = vec![0; p as usize - 1];
    let lo = i.abs_diff(j) + 1;
    let hi = (i + j - 1).min(2 * p - i - j - 1);
    let mut k = lo;
    while k <= hi {
        m[k as usize - 1] += 1;
        k += 2;
    }
    m
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank over `F_p` by plain row reduction on a dense copy.
fn naive_rank(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_multiple_of(p)) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| a[rank][c] * x % p == 1).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p * p - f * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

/// Jordan type of `U = J_m ⊗ J_n` from ranks of powers of `U - I`.
fn tensor_oracle(p: u64, m: usize, n: usize) -> Vec<usize> {
    let block = |k: usize| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| (0..k).map(|j| u64::from(j == i + 1)).collect())
            .collect()
    };
    let (a, b) = (block(m), block(n));
    let dim = m * n;
    // N = N_a ⊗ I + I ⊗ N_b + N_a ⊗ N_b
    let nil: Vec<Vec<u64>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    let (i, k) = (r / n, r % n);
                    let (j, l) = (c / n, c % n);
                    let id = |x: usize, y: usize| u64::from(x == y);
                    (a[i][j] * id(k, l) + id(i, j) * b[k][l] + a[i][j] * b[k][l]) % p
                })
                .collect()
        })
        .collect();
    let mut ranks = vec![dim];
    let mut pow = nil.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(naive_rank(&pow, p));
        pow = mat_mul(&pow, &nil, p);
    }
    ranks.push(0);
    let mut out = Vec::new();
    for k in 1..ranks.len() - 1 {
        let count = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        out.extend(std::iter::repeat_n(k, count));
    }
    out
}

fn module_strategy(
    primes: &'static [u64],
    max_blocks: usize,
) -> impl Strategy<Value = JordanModule> {
    prop::sample::select(primes).prop_flat_map(move |p| {
        prop::collection::vec(1..=p as usize, 1..=max_blocks)
            .prop_map(move |blocks| JordanModule::new(pr(p), 1, blocks).unwrap())
    })
}

#[test]
fn fusion_matches_truncated_clebsch_gordan() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
        for i in 1..p {
            for j in 1..p {
                assert_eq!(
                    fusion(pr(p), i, j).unwrap().multiplicities(),
                    verlinde_oracle(p, i, j),
                    "p={p} {i}x{j}"
                );
            }
        }
    }
}

#[test]
fn fusion_ring_is_commutative_and_associative() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
        let simples: Vec<FusionElement> = (1..p)
            .map(|k| FusionElement::simple(pr(p), k).unwrap())
            .collect();
        for a in &simples {
            for b in &simples {
                let ab = product(a, b).unwrap();
                assert_eq!(ab, product(b, a).unwrap());
                for c in &simples {
                    assert_eq!(
                        product(&ab, c).unwrap(),
                        product(a, &product(b, c).unwrap()).unwrap(),
                        "p={p}"
                    );
                }
            }
        }
    }
}

#[test]
fn jordan_tensor_matches_dense_oracle() {
    for p in [2u64, 3, 5, 7] {
        for m in 1..=p as usize {
            for n in 1..=p as usize {
                let got = jordan_tensor(
                    &JordanModule::block(pr(p), m).unwrap(),
                    &JordanModule::block(pr(p), n).unwrap(),
                )
                .unwrap();
                assert_eq!(got.blocks(), tensor_oracle(p, m, n), "p={p} J{m}xJ{n}");
            }
        }
    }
}

#[test]
fn classical_clebsch_gordan_range() {
    for p in PRIMES {
        for m in 1..=p as usize {
            for n in m..=p as usize {
                if m + n > p as usize {
                    continue;
                }
                let expected: Vec<usize> = (1..=m).map(|i| n - m + 2 * i - 1).collect();
                let got = jordan_tensor(
                    &JordanModule::block(pr(p), m).unwrap(),
                    &JordanModule::block(pr(p), n).unwrap(),
                )
                .unwrap();
                assert_eq!(got.blocks(), expected, "p={p} J{m}xJ{n}");
            }
        }
    }
}

#[test]
fn projective_blocks_stay_projective() {
    for p in PRIMES {
        let proj = JordanModule::block(pr(p), p as usize).unwrap();
        for n in 1..=p as usize {
            let t = jordan_tensor(&proj, &JordanModule::block(pr(p), n).unwrap()).unwrap();
            assert_eq!(t.blocks(), vec![p as usize; n]);
        }
    }
}

#[test]
fn semisimplification_is_monoidal_on_blocks() {
    for p in PRIMES {
        for m in 1..=p {
            for n in 1..=p {
                let a = JordanModule::block(pr(p), m as usize).unwrap();
                let b = JordanModule::block(pr(p), n as usize).unwrap();
                let lhs = to_verlinde(&jordan_tensor(&a, &b).unwrap()).unwrap();
                let rhs = product(&to_verlinde(&a).unwrap(), &to_verlinde(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "p={p} m={m} n={n}");
            }
        }
    }
}

#[test]
fn perron_frobenius_matches_closed_form() {
    for p in [3u64, 5, 7, 11, 13, 17, 19] {
        for k in 1..p {
            let x = FusionElement::simple(pr(p), k).unwrap();
            let exact = q_int(pr(p), k, 1).unwrap().to_f64();
            assert!(
                (perron_frobenius_numeric(&x, 1e-14) - exact).abs() < 1e-12,
                "p={p} k={k}"
            );
            assert_eq!(fp_dim(&x), q_int(pr(p), k, 1).unwrap());
        }
    }
}

#[test]
fn invertibles_are_unit_and_top_label() {
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..p {
            let inv = is_invertible(&FusionElement::simple(pr(p), k).unwrap()).unwrap();
            assert_eq!(inv, k == 1 || k == p - 1, "p={p} k={k}");
        }
    }
}

#[test]
fn z_mod_p_squared_examples() {
    let p = pr(2);
    let j3 = JordanModule::new(p, 2, vec![3]).unwrap();
    assert_eq!(jordan_tensor(&j3, &j3).unwrap().blocks(), &[1, 4, 4]);
    let j4 = JordanModule::new(p, 2, vec![4]).unwrap();
    assert_eq!(jordan_type(&j4.unipotent(), 4).unwrap(), vec![4]);
    assert_eq!(
        jordan_type(&FpMatrix::identity(p, 3), 4).unwrap(),
        vec![1, 1, 1]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_commutative_and_associative(
        (a, b, c) in prop::sample::select(&PRIMES[..]).prop_flat_map(|p| {
            let m = move || prop::collection::vec(1..=p as usize, 1..=3)
                .prop_map(move |bl| JordanModule::new(pr(p), 1, bl).unwrap());
            (m(), m(), m())
        })
    ) {
        let ab = jordan_tensor(&a, &b).unwrap();
        prop_assert_eq!(&ab, &jordan_tensor(&b, &a).unwrap());
        prop_assert_eq!(
            jordan_tensor(&ab, &c).unwrap(),
            jordan_tensor(&a, &jordan_tensor(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(ab.dim(), a.dim() * b.dim());
    }

    #[test]
    fn semisimplification_is_monoidal(
        (a, b) in prop::sample::select(&PRIMES[..]).prop_flat_map(|p| {
            let m = move || prop::collection::vec(1..=p as usize, 1..=3)
                .prop_map(move |bl| JordanModule::new(pr(p), 1, bl).unwrap());
            (m(), m())
        })
    ) {
        let lhs = to_verlinde(&jordan_tensor(&a, &b).unwrap()).unwrap();
        let rhs = product(&to_verlinde(&a).unwrap(), &to_verlinde(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = to_verlinde(&a.direct_sum(&b).unwrap()).unwrap();
        prop_assert_eq!(sum, to_verlinde(&a).unwrap().add(&to_verlinde(&b).unwrap()).unwrap());
        prop_assert_eq!(non_negligible_part(&a).cat_dim(), a.cat_dim());
    }

    #[test]
    fn squares_split_the_tensor_square(v in module_strategy(&[3, 5, 7, 11], 3)) {
        let s = sym2(&v).unwrap();
        let e = ext2(&v).unwrap();
        let n = v.dim();
        prop_assert_eq!(s.dim(), n * (n + 1) / 2);
        prop_assert_eq!(e.dim(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(s.direct_sum(&e).unwrap(), jordan_tensor(&v, &v).unwrap());
    }

    #[test]
    fn direct_construction_agrees(v in module_strategy(&[3, 5, 7], 2)) {
        prop_assume!(v.dim() <= 9);
        prop_assert_eq!(sym2(&v).unwrap(), sym2_direct(&v).unwrap());
    }

    #[test]
    fn exterior_power_dimensions(v in module_strategy(&[2, 3, 5], 2), k in 0usize..5) {
        prop_assume!(v.dim() <= 7);
        let w = exterior_power(&v, k).unwrap();
        prop_assert_eq!(w.dim(), if k <= v.dim() { binomial(v.dim(), k) } else { 0 });
    }

    #[test]
    fn dimension_homomorphisms(
        (x, y) in prop::sample::select(&[3u64, 5, 7, 11, 13][..]).prop_flat_map(|p| {
            let e = move || prop::collection::vec(0u64..3, p as usize - 1)
                .prop_map(move |m| FusionElement::new(pr(p), m).unwrap());
            (e(), e())
        })
    ) {
        let tol = Real::epsilon(30);
        let xy = product(&x, &y).unwrap();
        prop_assert!(fp_dim(&xy).approx_eq(&(&fp_dim(&x) * &fp_dim(&y)), &tol));
        let s = x.add(&y).unwrap();
        prop_assert!(fp_dim(&s).approx_eq(&(&fp_dim(&x) + &fp_dim(&y)), &tol));
        prop_assert_eq!(cat_dim(&xy), cat_dim(&x) * cat_dim(&y));
        prop_assert_eq!(cat_dim(&s), cat_dim(&x) + cat_dim(&y));
        prop_assert!(fp_dim(&x.dual()).approx_eq(&fp_dim(&x), &tol));
    }

    #[test]
    fn json_round_trip(v in module_strategy(&PRIMES, 4)) {
        let back: JordanModule = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(&back, &v);
        let img = to_verlinde(&v).unwrap();
        let back: FusionElement = serde_json::from_str(&serde_json::to_string(&img).unwrap()).unwrap();
        prop_assert_eq!(back, img);
    }
}
