//! Values derived by hand, compared against the engine.

use superdirac::dirac::{ConstraintSet, Reduction};
use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::{JacobiOutcome, Pvsa};
use superdirac::series::LMono;
use superdirac::susy::{affine_susy, nonlocal_susy_example};
use superdirac::{DiffPoly, Flavor, Scalar, Series};

fn k_pow(e: i32) -> Scalar {
    Scalar::param_pow(0, e)
}

#[test]
fn sl2_cartan_reduction_e_f() {
    // {E_λ F}^D = kλ + H − 2k⁻¹ Σ_n (−1)^n λ^{−1−n} ∂ⁿE·F
    let g = LieSuperalgebra::sl2();
    let p = Pvsa::affine(&g);
    let (e, h, f) = (p.gen(0), p.gen(1), p.gen(2));
    let red = Reduction::dirac(&p, ConstraintSet::new(vec![h.clone()]).unwrap()).unwrap();
    let got = red.bracket(&e, &f).unwrap();
    let mut want = Series::from_poly(h);
    want.add_term(LMono::lam(1), &DiffPoly::constant(k_pow(1)));
    let mut de = e.clone();
    for n in 0..8 {
        let c = Scalar::from_int(if n % 2 == 0 { -2 } else { 2 });
        want.add_term(LMono::lam(-1 - n), &(&de * &f).scale(&(&c * &k_pow(-1))));
        de = de.partial(Flavor::Plain);
    }
    assert!(got.agrees_with(&want), "{}", p.text(&got));
}

#[test]
fn sl2_cartan_matrix() {
    let p = Pvsa::affine(&LieSuperalgebra::sl2());
    let red = Reduction::dirac(&p, ConstraintSet::new(vec![p.gen(1)]).unwrap()).unwrap();
    assert_eq!(red.c.entries[0][0], Series::scalar_term(&Scalar::from_int(2) * &k_pow(1), 1, 0));
    assert_eq!(red.c_inv.entries[0][0], Series::scalar_term(&Scalar::from_q(superdirac::scalar::q_frac(1, 2)) * &k_pow(-1), -1, 0));
}

#[test]
fn susy_affine_osp_odd_pair() {
    // {ā_Λ b̄} = (−1)^ã([a,b]‾ + kχ(a|b)), e odd
    let g = LieSuperalgebra::osp12();
    let p = affine_susy(&g);
    let (e, f) = (g.index_of("e").unwrap(), g.index_of("f").unwrap());
    let got = p.bracket(&p.gen(e), &p.gen(f)).unwrap();
    let mut want = Series::from_poly(superdirac::pvsa::linear(&p.alphabet, &g.bracket(&g.basis(e), &g.basis(f))));
    want.add_term(LMono::lam_chi(0, 1), &DiffPoly::constant(k_pow(1).scale(&g.form[e][f])));
    assert_eq!(got, want.neg());
}

#[test]
fn nonlocal_left_square() {
    // {u²_λ u} = 2(λ+∂)⁻¹u = 2 Σ_n (−1)^n λ^{−1−n} ∂ⁿu
    let p = Pvsa::nonlocal_example();
    let u = p.gen(0);
    let got = p.bracket(&u.pow(2), &u).unwrap();
    let mut want = Series::zero();
    let mut du = u.clone();
    for n in 0..8 {
        want.add_term(LMono::lam(-1 - n), &du.scale(&Scalar::from_int(if n % 2 == 0 { 2 } else { -2 })));
        du = du.partial(Flavor::Plain);
    }
    assert!(got.agrees_with(&want), "{}", p.text(&got));
    assert!(matches!(p.jacobi(&u, &u.pow(2), &u), JacobiOutcome::Certified(_)));
}

#[test]
fn nonlocal_susy_generator() {
    let p = nonlocal_susy_example();
    let u = p.gen(0);
    assert_eq!(p.bracket(&u, &u).unwrap(), Series::term(LMono::lam_chi(-1, 1), DiffPoly::one()));
    assert!(p.skewsymmetry(&u, &u.pow(2)).unwrap().0);
}

#[test]
fn free_boson_brackets() {
    let p = Pvsa::free_boson(Flavor::Plain);
    let u = p.gen(0);
    assert_eq!(p.bracket(&u, &u).unwrap(), Series::scalar_term(k_pow(1), 1, 0));
    // {u_λ u²} = 2kλu
    assert_eq!(p.bracket(&u, &u.pow(2)).unwrap(), Series::term(LMono::lam(1), u.scale(&(&Scalar::from_int(2) * &k_pow(1)))));
}
