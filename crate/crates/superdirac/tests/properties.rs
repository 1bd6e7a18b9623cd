use proptest::prelude::*;
use superdirac::dirac::{ConstraintSet, Reduction};
use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;
use superdirac::sample;
use superdirac::susy::affine_susy;
use superdirac::text::{parse_poly, parse_series, poly_text, series_text};
use superdirac::{Alphabet, DiffPoly, Flavor, Scalar};

fn alphabet(flavor: Flavor) -> Alphabet {
    let mut a = Alphabet::new(vec!["u".into(), "v".into(), "w".into()], vec![0, 1, 1], flavor);
    a.params = vec!["k".into()];
    a
}

fn flavor(susy: bool) -> Flavor {
    if susy {
        Flavor::Susy
    } else {
        Flavor::Plain
    }
}

/// Random homogeneous element, split into its even and odd parts.
fn homogeneous(a: &Alphabet, seed: u64) -> (DiffPoly, u8) {
    let mut r = sample::rng(seed);
    let p = sample::random_homogeneous(a, &mut r, 3, 3);
    let [even, odd] = p.parity_parts();
    if seed % 2 == 0 && !even.is_zero() || odd.is_zero() {
        (even, 0)
    } else {
        (odd, 1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(s in any::<u64>(), susy in any::<bool>()) {
        let a = alphabet(flavor(susy));
        let mut r = sample::rng(s);
        let (x, y, z) = (
            sample::random_homogeneous(&a, &mut r, 2, 2),
            sample::random_homogeneous(&a, &mut r, 2, 2),
            sample::random_homogeneous(&a, &mut r, 2, 2),
        );
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn product_is_supercommutative(s in any::<u64>(), t in any::<u64>(), susy in any::<bool>()) {
        let a = alphabet(flavor(susy));
        let ((x, px), (y, py)) = (homogeneous(&a, s), homogeneous(&a, t));
        let yx = &y * &x;
        let want = if px * py == 1 { -&yx } else { yx };
        prop_assert_eq!(&x * &y, want);
    }

    #[test]
    fn derivation_obeys_graded_leibniz(s in any::<u64>(), t in any::<u64>(), susy in any::<bool>()) {
        let f = flavor(susy);
        let a = alphabet(f);
        let ((x, px), (y, _)) = (homogeneous(&a, s), homogeneous(&a, t));
        let lhs = (&x * &y).derive(f);
        let tail = &x * &y.derive(f);
        let tail = if susy && px == 1 { -&tail } else { tail };
        prop_assert_eq!(lhs, &(&x.derive(f) * &y) + &tail);
    }

    #[test]
    fn d_squared_is_partial(s in any::<u64>()) {
        let a = alphabet(Flavor::Susy);
        let mut r = sample::rng(s);
        let x = sample::random_homogeneous(&a, &mut r, 3, 3);
        prop_assert_eq!(x.derive(Flavor::Susy).derive(Flavor::Susy), x.partial(Flavor::Susy));
    }

    #[test]
    fn poly_text_round_trips(s in any::<u64>(), susy in any::<bool>()) {
        let a = alphabet(flavor(susy));
        let mut r = sample::rng(s);
        let x = sample::random_homogeneous(&a, &mut r, 3, 3);
        prop_assert_eq!(parse_poly(&poly_text(&x, &a), &a).unwrap(), x);
    }

    #[test]
    fn series_text_round_trips(s in any::<u64>(), susy in any::<bool>(), parity in 0u8..2) {
        let a = alphabet(flavor(susy));
        let mut r = sample::rng(s);
        let x = sample::random_entry(&a, &mut r, parity, 3, 2);
        prop_assert_eq!(parse_series(&series_text(&x, &a), &a).unwrap(), x);
    }

    #[test]
    fn series_adjoint_is_an_involution(s in any::<u64>(), susy in any::<bool>(), parity in 0u8..2) {
        let f = flavor(susy);
        let a = alphabet(f);
        let mut r = sample::rng(s);
        let x = sample::random_entry(&a, &mut r, parity, 2, 1);
        prop_assert!(x.adjoint(f, -32).adjoint(f, -32).agrees_with(&x));
    }

    #[test]
    fn random_invertible_operators_invert(s in any::<u64>(), susy in any::<bool>(), n in 1usize..4) {
        let a = alphabet(flavor(susy));
        let mut r = sample::rng(s);
        let par = sample::random_parities(&mut r, n);
        let m = sample::random_invertible(&a, &mut r, &par, -16);
        let inv = m.invert().unwrap();
        prop_assert!(m.verify_inverse(&inv));
        prop_assert!(inv.invert().unwrap().agrees_with(&m));
    }

    #[test]
    fn adjoint_reverses_products(s in any::<u64>(), susy in any::<bool>()) {
        let a = alphabet(flavor(susy));
        let mut r = sample::rng(s);
        let p: Vec<Vec<u8>> = (0..3).map(|_| sample::random_parities(&mut r, 2)).collect();
        let x = sample::random_op_matrix(&a, &mut r, &p[0], &p[1], -16, 1);
        let y = sample::random_op_matrix(&a, &mut r, &p[1], &p[2], -16, 1);
        let lhs = x.compose(&y).unwrap().adjoint();
        prop_assert!(lhs.agrees_with(&y.adjoint().compose(&x.adjoint()).unwrap()));
    }

    #[test]
    fn affine_sl2_skewsymmetry(s in any::<u64>(), susy in any::<bool>()) {
        let g = LieSuperalgebra::sl2();
        let p = if susy { affine_susy(&g) } else { Pvsa::affine(&g) };
        let mut r = sample::rng(s);
        let x = sample::random_homogeneous(&p.alphabet, &mut r, 2, 2);
        let y = sample::random_homogeneous(&p.alphabet, &mut r, 2, 2);
        prop_assert!(p.skewsymmetry(&x, &y).unwrap().0);
        prop_assert!(p.sesquilinearity(&x, &y).unwrap());
    }

    #[test]
    fn dirac_constraints_are_central(s in any::<u64>(), susy in any::<bool>()) {
        let g = LieSuperalgebra::sl2();
        let p = if susy { affine_susy(&g) } else { Pvsa::affine(&g) };
        let h = p.gen(g.index_of("H").unwrap());
        let red = Reduction::dirac(&p, ConstraintSet::new(vec![h]).unwrap()).unwrap();
        let mut r = sample::rng(s);
        let x = sample::random_homogeneous(&p.alphabet, &mut r, 2, 2);
        prop_assert!(red.centrality(&x).unwrap());
    }

    #[test]
    fn scalar_inverse(n in 1i64..50, d in 1i64..50, e in -4i32..5) {
        let c = &Scalar::from_int(n).scale(&superdirac::scalar::q_frac(1, d)) * &Scalar::param_pow(0, e);
        prop_assert_eq!(&c * &c.try_inverse().unwrap(), Scalar::one());
    }
}
