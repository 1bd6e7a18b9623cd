use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;
use superdirac::w::WSetup;
use superdirac::text::parse_series;
use superdirac::Series;

fn setups() -> Vec<WSetup> {
    vec![
        WSetup::new(&LieSuperalgebra::sl2(), false).unwrap(),
        WSetup::new(&LieSuperalgebra::osp12(), false).unwrap(),
        WSetup::new(&LieSuperalgebra::osp12(), true).unwrap(),
    ]
}

fn table(w: &WSetup) -> Vec<Vec<Series>> {
    let red = w.reduction().unwrap();
    let n = w.quotient.len();
    (0..n).map(|a| (0..n).map(|b| w.modified_dirac(&red, a, b).unwrap()).collect()).collect()
}

#[test]
fn closed_form_inverse_matches_matrix_inverse() {
    for w in setups() {
        let red = w.reduction().unwrap();
        assert!(w.closed_form_inverse().unwrap().agrees_with(&red.c_inv), "{}", w.g.name);
    }
}

#[test]
fn entry_lemma_holds() {
    for w in setups() {
        let rep = w.entry_lemma_report();
        assert!(rep.all_pass(), "{}\n{}", w.g.name, rep.to_text());
    }
}

#[test]
fn unchanged_basis_gives_the_same_brackets() {
    for w in setups() {
        let (red, alt) = (w.reduction().unwrap(), w.reduction_unchanged_basis().unwrap());
        for a in 0..w.quotient.len() {
            for b in 0..w.quotient.len() {
                let x = w.modified_dirac(&red, a, b).unwrap();
                let y = w.modified_dirac(&alt, a, b).unwrap();
                assert!(x.agrees_with(&y), "{} ({},{})", w.g.name, a, b);
            }
        }
    }
}

#[test]
fn sl2_gives_virasoro() {
    // {L_λ L} = (∂ + 2λ)L + (c/12)λ³ for L = F/k, c = -6k
    let w = &setups()[0];
    let t = table(w);
    assert_eq!(t[0][0], parse_series("-(1/2)*k^3*L^3 + 2*k*L*F + k*d(F)", &w.quotient).unwrap());
}

#[test]
fn w_brackets_form_a_pva() {
    for w in setups() {
        let p = Pvsa::new(w.quotient.clone(), table(&w));
        let rep = p.check_axioms(5, 15);
        assert!(rep.all_pass(), "{}\n{}", w.g.name, rep.to_text());
    }
}

#[test]
fn weight_audit_passes() {
    for w in setups() {
        assert!(w.weight_audit().all_pass(), "{}", w.g.name);
    }
}

#[test]
fn sl2_susy_is_refused() {
    assert!(WSetup::new(&LieSuperalgebra::sl2(), true).is_err());
}
