use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stirling::arith::{binom_conventional, binomial, det_exact, rat, Integer, Rational, RationalMatrix};
use stirling::bell::{hk, hk_series};
use stirling::conjecture::{frak_s, FrakGrid};
use stirling::engines::{first, second};
use stirling::inequality::{self, HankelSpec, MajorizationInstance};
use stirling::StirlingTable;

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for col in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][col] * cofactor_det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(p, q)| rat(p, q))
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(small_rational(), n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pascal_rule_and_symmetry(p in 1u64..80, q in 0u64..80) {
        prop_assume!(q <= p);
        prop_assert_eq!(binomial(p, q), binomial(p, p - q));
        if q >= 1 {
            prop_assert_eq!(binomial(p, q), binomial(p - 1, q - 1) + binomial(p - 1, q));
        }
        prop_assert_eq!(binom_conventional(p as i64, q as i64).unwrap(), binomial(p, q));
    }

    #[test]
    fn conventional_binomial_vanishes_below_zero(p in 0i64..50, q in -50i64..0) {
        prop_assert!(binom_conventional(p, q).unwrap().is_zero());
    }

    #[test]
    fn rationals_stay_reduced(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let x = rat(a, b) + rat(c, d);
        let g = num_integer::Integer::gcd(x.numer(), x.denom());
        prop_assert!(x.denom().is_positive());
        prop_assert!(g.is_one() || x.numer().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(m in square(5)) {
        let matrix = RationalMatrix::from_rows(m.clone()).unwrap();
        prop_assert_eq!(det_exact(&matrix), cofactor_det(&m));
    }

    #[test]
    fn determinant_invariant_under_sign_conjugation(m in square(5), signs in prop::collection::vec(any::<bool>(), 5)) {
        let n = m.len();
        let matrix = RationalMatrix::from_rows(m.clone()).unwrap();
        let d = |i: usize| if signs[i] { -Rational::one() } else { Rational::one() };
        let conjugated = RationalMatrix::from_fn(n, |i, j| d(i) * &m[i][j] * d(j)).unwrap();
        prop_assert_eq!(matrix.det(), conjugated.det());
    }

    #[test]
    fn second_kind_engines_agree(n in 1usize..45, k in 1usize..45) {
        prop_assume!(k < n);
        let t = StirlingTable::second(n);
        let v = t.get(n, k).unwrap().clone();
        prop_assert_eq!(second::s2_explicit(n, k).unwrap(), v.clone());
        prop_assert_eq!(second::s2_diagonal_full(&t, n, k).unwrap(), v.clone());
        prop_assert_eq!(second::s2_diagonal_simplified(&t, n, k).unwrap(), v.clone());
        prop_assert_eq!(second::s2_egf(k, n).unwrap().pop().unwrap(), v);
    }

    #[test]
    fn first_kind_engines_agree(n in 1usize..30, k in 1usize..30) {
        prop_assume!(k <= n);
        let t = StirlingTable::first(n);
        let v = t.get(n, k).unwrap().clone();
        prop_assert_eq!(first::s1_egf(k, n).unwrap().pop().unwrap(), v.clone());
        prop_assert_eq!(first::s1_diagonal_double(&t, n, k).unwrap(), v);
    }

    #[test]
    fn inverse_matrices(n in 0usize..25) {
        // sum_j S(n,j) s(j,m) = [n = m]
        let s2 = StirlingTable::second(n);
        let s1 = StirlingTable::first(n);
        for m in 0..=n {
            let sum: Integer = (m..=n).map(|j| s2.get(n, j).unwrap() * s1.get(j, m).unwrap()).sum();
            prop_assert_eq!(sum, Integer::from(u8::from(m == n)));
        }
    }

    #[test]
    fn hk_is_a_power_of_h1(k in 1usize..8, j in 1usize..5, order in 0usize..14) {
        prop_assert_eq!(hk(k + j, order), &hk(k, order) * &hk(j, order));
        let t = StirlingTable::second(order + k);
        prop_assert_eq!(hk_series(&t, k, order).unwrap(), hk(1, order).pow(k));
    }

    #[test]
    fn frak_depends_only_on_its_window(level in 1usize..4, n in 3usize..22, k in 2usize..22, noise in 1i64..1000) {
        prop_assume!(k <= n);
        let t = StirlingTable::second(n + 1);
        let base = frak_s(&t, level, n, k).unwrap();
        // Perturbing entries of other rows leaves D_l(n, k) unchanged.
        let moved = t.clone().with_entry(n + 1, k, Integer::from(noise)).with_entry(n - 1, k - 1, Integer::from(-noise));
        prop_assert_eq!(frak_s(&moved, level, n, k).unwrap(), base.clone());
        // So does perturbing S(n, k - 2 level - 1), just left of the window.
        if k > 2 * level {
            let outside = t.with_entry(n, k - 2 * level - 1, Integer::from(noise));
            prop_assert_eq!(frak_s(&outside, level, n, k).unwrap(), base);
        }
    }

    #[test]
    fn frak_grid_matches_window(level in 1usize..5, n in 0usize..25, k in 0usize..25) {
        prop_assume!(k <= n);
        let t = StirlingTable::second(24);
        let grid = FrakGrid::build(&t, 4, 24).unwrap();
        prop_assert_eq!(grid.get(level, n, k), &frak_s(&t, level, n, k).unwrap());
    }

    #[test]
    fn generated_instances_are_majorized(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = inequality::random_majorization(&mut rng, 4, 8, 3);
        prop_assert!(inequality::check_q_majorization(&inst));
        let t = StirlingTable::second(22);
        for k in 1..=6 {
            prop_assert!(inequality::check_product_inequality(&t, &inst, k).unwrap().passed);
        }
    }

    #[test]
    fn hankel_determinants_nonnegative(a in prop::collection::vec(0u64..=6, 1..=4), k in 1usize..=8) {
        let t = StirlingTable::second(20);
        for signed in [false, true] {
            let c = inequality::check_det_nonneg(&t, &HankelSpec::new(a.clone(), k, signed).unwrap()).unwrap();
            prop_assert!(c.passed, "{:?}", c.witness);
        }
    }
}

#[test]
fn majorization_rejects_bad_instances() {
    assert!(MajorizationInstance::new(vec![1], vec![1, 0], vec![1, 0]).is_err());
    assert!(MajorizationInstance::new(vec![1, 1], vec![0, 1], vec![1, 0]).is_err());
    // b dominates a, not the other way round.
    let inst = MajorizationInstance::new(vec![1, 1], vec![1, 1], vec![2, 0]).unwrap();
    assert!(!inequality::check_q_majorization(&inst));
    let t = StirlingTable::second(10);
    assert!(inequality::check_product_inequality(&t, &inst, 2).is_err());
}
