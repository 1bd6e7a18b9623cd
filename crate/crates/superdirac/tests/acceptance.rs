//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::time::Instant;
use superdirac::diffpoly::Flavor;
use superdirac::dirac::{triviality_report, ConstraintSet, Reduction};
use superdirac::goldens;
use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::{linear, JacobiOutcome, Pvsa};
use superdirac::report::{Report, Status};
use superdirac::sample;
use superdirac::susy::{affine_susy, chi_coefficient_functor, nonlocal_susy_example};
use superdirac::w::WSetup;
use superdirac::{Alphabet, DiffPoly};

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_report(rep: &Report) -> Outcome {
    let fails: Vec<String> = rep
        .records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{:?} {} {} {}", r.status, r.axiom, r.instance, r.residual.clone().unwrap_or_default()))
        .collect();
    Outcome {
        pass: fails.is_empty(),
        detail: if fails.is_empty() { format!("{} records", rep.records.len()) } else { fails.join(" | ") },
    }
}

fn osp_plain_example() -> Outcome {
    let mut rep = Report::default();
    goldens::osp_plain(&mut rep);
    from_report(&rep)
}

fn osp_susy_example() -> Outcome {
    let mut rep = Report::default();
    goldens::osp_susy(&mut rep);
    from_report(&rep)
}

fn sl2_not_in_class() -> Outcome {
    let mut rep = Report::default();
    goldens::sl2_unprojected(&mut rep);
    from_report(&rep)
}

fn axiom_suites() -> Outcome {
    let mut rep = Report::default();
    for g in [LieSuperalgebra::sl2(), LieSuperalgebra::osp12()] {
        rep.extend(Pvsa::affine(&g).check_axioms(SEED, 50));
        rep.extend(affine_susy(&g).check_axioms(SEED, 50));
    }
    from_report(&rep)
}

fn cartan(p: &Pvsa, g: &LieSuperalgebra) -> DiffPoly {
    linear(&p.alphabet, &g.basis(g.index_of("H").unwrap()))
}

fn dirac_theorems() -> Outcome {
    let mut rep = Report::default();
    for g in [LieSuperalgebra::sl2(), LieSuperalgebra::osp12()] {
        for p in [Pvsa::affine(&g), affine_susy(&g)] {
            let theta = ConstraintSet::new(vec![cartan(&p, &g)]).unwrap();
            match Reduction::dirac(&p, theta) {
                Ok(red) => rep.extend(red.centrality_report(SEED, 30)),
                Err(e) => rep.push(superdirac::report::CheckRecord::from_bool("centrality", g.name.clone(), false).with_residual(e.to_string())),
            }
        }
    }
    for p in [Pvsa::free_boson(Flavor::Plain), Pvsa::free_boson(Flavor::Susy), Pvsa::nonlocal_example(), nonlocal_susy_example()] {
        rep.extend(triviality_report(&p, SEED, 20));
    }
    from_report(&rep)
}

fn two_paths() -> Outcome {
    let mut rep = Report::default();
    for (g, susy) in [(LieSuperalgebra::sl2(), false), (LieSuperalgebra::osp12(), false), (LieSuperalgebra::osp12(), true)] {
        match WSetup::new(&g, susy) {
            Ok(w) => rep.extend(w.isomorphism_check(false)),
            Err(e) => rep.push(superdirac::report::CheckRecord::from_bool("matrix-vs-chain", g.name.clone(), false).with_residual(e.to_string())),
        }
    }
    let mut o = from_report(&rep);
    let sl2_susy = WSetup::new(&LieSuperalgebra::sl2(), true).is_err();
    o.detail.push_str(&format!("; sl2 SUSY has no odd nilpotent (setup refused: {})", sl2_susy));
    o.pass &= sl2_susy;
    o
}

fn w_formula() -> Outcome {
    let mut rep = Report::default();
    for susy in [false, true] {
        rep.extend(WSetup::new(&LieSuperalgebra::osp12(), susy).unwrap().isomorphism_check(true));
    }
    from_report(&rep)
}

fn chi_functor() -> Outcome {
    let g = LieSuperalgebra::osp12();
    let img = chi_coefficient_functor(&affine_susy(&g));
    let mut rep = img.pvsa.check_axioms(SEED, 20);
    let plain = Pvsa::affine(&g);
    let mut bad = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let got = img.pvsa.bracket(&img.embed_d(&plain.gen(i)), &img.embed_d(&plain.gen(j)));
            let want = plain.table[i][j].map_coeffs(&|c| img.embed_d(c));
            if got.as_ref() != Ok(&want) {
                bad.push(format!("{},{}", g.names[i], g.names[j]));
            }
        }
    }
    rep.push(superdirac::report::CheckRecord::from_bool("D-embedding", format!("{} pairs, {} off", g.dim() * g.dim(), bad.len()), bad.is_empty()));
    from_report(&rep)
}

fn operator_properties() -> Outcome {
    let mut counts = [0usize; 4];
    let mut bad = Vec::new();
    for flavor in [Flavor::Plain, Flavor::Susy] {
        let a = Alphabet::new(vec!["u".into(), "v".into()], vec![0, 1], flavor);
        let mut r = sample::rng(SEED);
        let floor = -16;
        for n in 0..100 {
            let dims = [1 + n % 3, 1 + (n / 3) % 3, 1 + (n / 9) % 2];
            let ps: Vec<Vec<u8>> = dims.iter().map(|&d| sample::random_parities(&mut r, d)).collect();
            let x = sample::random_op_matrix(&a, &mut r, &ps[0], &ps[1], floor, 1);
            let y = sample::random_op_matrix(&a, &mut r, &ps[1], &ps[2], floor, 1);
            let z = sample::random_op_matrix(&a, &mut r, &ps[2], &ps[0], floor, 1);
            let xy_z = x.compose(&y).and_then(|m| m.compose(&z)).unwrap();
            let x_yz = y.compose(&z).and_then(|m| x.compose(&m)).unwrap();
            counts[0] += 1;
            if !xy_z.agrees_with(&x_yz) {
                bad.push(format!("{:?} #{} associativity", flavor, n));
            }
            let lhs = x.compose(&y).unwrap().adjoint();
            let rhs = y.adjoint().compose(&x.adjoint()).unwrap();
            counts[1] += 1;
            if !lhs.agrees_with(&rhs) {
                bad.push(format!("{:?} #{} adjoint of product", flavor, n));
            }
            // entries: F** = F; matrices: A** = (−1)^{ĩ+j̃} A_ij, the identity on even indices
            counts[2] += 1;
            let xx = x.adjoint().adjoint();
            let mut twisted = x.clone();
            for (i, row) in twisted.entries.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    if (ps[0][i] + ps[1][j]) % 2 == 1 {
                        *e = e.neg();
                    }
                }
            }
            let entrywise = x.entries.iter().flatten().all(|e| e.adjoint(flavor, floor).adjoint(flavor, floor).agrees_with(e));
            if !entrywise || !xx.agrees_with(&twisted) {
                bad.push(format!("{:?} #{} involution", flavor, n));
            }
            let m = sample::random_invertible(&a, &mut r, &ps[0], floor);
            counts[3] += 1;
            match m.invert() {
                Ok(inv) if m.verify_inverse(&inv) => {}
                Ok(_) => bad.push(format!("{:?} #{} verify_inverse", flavor, n)),
                Err(e) => bad.push(format!("{:?} #{} invert: {}", flavor, n, e)),
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "associativity {}, (AB)*=B*A* {}, involution {}, verify_inverse {} instances{}",
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    }
}

fn nonlocal_desk() -> Outcome {
    let mut bad = Vec::new();
    let mut certs = Vec::new();
    let mut n = 0;
    for p in [Pvsa::nonlocal_example(), nonlocal_susy_example()] {
        assert_eq!(p.floor, -16);
        let mut r = sample::rng(SEED);
        for (a, b, _) in p.samples(SEED, 20) {
            n += 1;
            match p.skewsymmetry(&a, &b) {
                Ok((true, _)) => {}
                other => bad.push(format!("skew {} {}: {:?}", p.poly_text(&a), p.poly_text(&b), other.map(|x| x.0))),
            }
        }
        // {a_λ b} is exact for linear a, so Jacobi can be compared inside the window
        let mut triples = vec![(p.gen(0), p.gen(0).pow(2), p.gen(0))];
        for _ in 0..20 {
            let a = sample::random_homogeneous(&p.alphabet, &mut r, 1, 2);
            let b = sample::random_homogeneous(&p.alphabet, &mut r, 2, 2);
            let c = sample::random_homogeneous(&p.alphabet, &mut r, 2, 2);
            triples.push((a, b, c));
        }
        for (a, b, c) in triples {
            n += 1;
            match p.jacobi(&a, &b, &c) {
                JacobiOutcome::Exact => {}
                JacobiOutcome::Certified(s) => certs.push(s),
                other => bad.push(format!("jacobi {} {} {}: {:?}", p.poly_text(&a), p.poly_text(&b), p.poly_text(&c), other)),
            }
        }
    }
    certs.sort();
    certs.dedup();
    Outcome {
        pass: bad.is_empty() && !certs.is_empty(),
        detail: format!("{} checks at floor λ^-8; {}{}", n, certs.join("; "), if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(" | ")) }),
    }
}

fn weight_audit() -> Outcome {
    let mut rep = Report::default();
    for (g, susy) in [(LieSuperalgebra::sl2(), false), (LieSuperalgebra::osp12(), false), (LieSuperalgebra::osp12(), true)] {
        rep.extend(WSetup::new(&g, susy).unwrap().weight_audit());
    }
    from_report(&rep)
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("osp(1|2) constraint matrix, inverse and π{F_λ f}^D", osp_plain_example),
        ("osp(1|2) SUSY matrix, inverse and π{F̄_Λ F̄}^D", osp_susy_example),
        ("sl2 unprojected constraint matrix not in class", sl2_not_in_class),
        ("affine axiom suites, sl2 and osp(1|2), both flavors", axiom_suites),
        ("Dirac centrality and triviality, both flavors", dirac_theorems),
        ("chain sum equals modified Dirac bracket", two_paths),
        ("W formula equals both reduction paths on osp(1|2)", w_formula),
        ("χ-coefficient functor and D-embedding", chi_functor),
        ("operator algebra properties", operator_properties),
        ("non-local skewsymmetry and Jacobi with certificate", nonlocal_desk),
        ("conformal-weight audit of W brackets", weight_audit),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} ({}; {:.2?})",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            o.detail,
            t.elapsed()
        );
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
