//! Reference values for the worked examples, each compared against a fresh computation.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor};
use crate::error::Error;
use crate::lie::{DualBases, LieSuperalgebra};
use crate::matrix::OpMatrix;
use crate::report::{CheckRecord, Report};
use crate::pvsa::linear;
use crate::scalar::{q_frac, Scalar};
use crate::series::{LMono, Series};
use crate::susy::affine_susy;
use crate::text::{parse_series, series_text};
use crate::w::WSetup;

pub const OSP_C: [[&str; 3]; 3] = [["1", "k*L", "0"], ["0", "1", "0"], ["0", "0", "1"]];
pub const OSP_C_INV: [[&str; 3]; 3] = [["1", "-k*L", "0"], ["0", "1", "0"], ["0", "0", "1"]];
pub const OSP_F_F_SMALL: &str = "(3/2)*k*L*f + k*d(f)";
pub const OSP_SUSY_C: [[&str; 4]; 4] = [
    ["0", "0", "0", "-1"],
    ["0", "0", "1", "-k*X"],
    ["0", "-1", "k*X", "0"],
    ["1", "-k*X", "0", "Fbar"],
];
pub const OSP_SUSY_C_INV: [[&str; 4]; 4] = [
    ["-k^3*L*X - Fbar", "-k^2*L", "k*X", "1"],
    ["k^2*L", "-k*X", "-1", "0"],
    ["k*X", "1", "0", "0"],
    ["-1", "0", "0", "0"],
];
pub const OSP_SUSY_FBAR_FBAR: &str = "-(1/2)*k^5*L^2*X - (3/2)*k^2*L*Fbar - (1/2)*k^2*X*D(Fbar) - k^2*d(Fbar)";

/// Compare a computed matrix with string entries parsed over `a`.
pub fn matrix_matches<const N: usize>(m: &OpMatrix, want: &[[&str; N]; N], a: &Alphabet) -> Result<(), String> {
    if m.rows() != N || m.cols() != N {
        return Err(format!("shape {}x{}, expected {}x{}", m.rows(), m.cols(), N, N));
    }
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            let w = parse_series(w, a).map_err(|e| e.to_string())?;
            if m.entries[i][j] != w {
                return Err(format!("entry ({},{}) is {}, expected {}", i, j, series_text(&m.entries[i][j], a), series_text(&w, a)));
            }
        }
    }
    Ok(())
}

fn series_matches(s: &Series, want: &str, a: &Alphabet) -> Result<(), String> {
    let w = parse_series(want, a).map_err(|e| e.to_string())?;
    if *s == w {
        Ok(())
    } else {
        Err(format!("got {}", series_text(s, a)))
    }
}

fn record(rep: &mut Report, name: &str, r: Result<(), String>) {
    match r {
        Ok(()) => rep.push(CheckRecord::pass("golden", name)),
        Err(e) => rep.push(CheckRecord::from_bool("golden", name, false).with_residual(e)),
    }
}

/// The osp(1|2) non-SUSY constraint matrix, its inverse and π{F_λ f}^D.
pub fn osp_plain(rep: &mut Report) {
    let g = LieSuperalgebra::osp12();
    let w = match WSetup::new(&g, false) {
        Ok(w) => w,
        Err(e) => return record(rep, "osp(1|2) W setup", Err(e.to_string())),
    };
    record(rep, "osp(1|2) C(λ)", matrix_matches(&w.projected_c(), &OSP_C, &w.quotient));
    let red = match w.reduction() {
        Ok(r) => r,
        Err(e) => return record(rep, "osp(1|2) C⁻¹(λ)", Err(e.to_string())),
    };
    record(rep, "osp(1|2) C⁻¹(λ)", matrix_matches(&red.c_inv, &OSP_C_INV, &w.quotient));
    let (f_big, f_small) = (w.quotient.index_of("F").unwrap(), w.quotient.index_of("f").unwrap());
    let r = w.modified_dirac(&red, f_big, f_small).map_err(|e| e.to_string()).and_then(|s| series_matches(&s, OSP_F_F_SMALL, &w.quotient));
    record(rep, "osp(1|2) π{F_λ f}^D", r);
}

/// The osp(1|2) SUSY constraint matrix, its inverse and π{F̄_Λ F̄}^D.
pub fn osp_susy(rep: &mut Report) {
    let g = LieSuperalgebra::osp12();
    let w = match WSetup::new(&g, true) {
        Ok(w) => w,
        Err(e) => return record(rep, "osp(1|2) SUSY W setup", Err(e.to_string())),
    };
    record(rep, "osp(1|2) C̃(Λ)", matrix_matches(&w.projected_c(), &OSP_SUSY_C, &w.quotient));
    let red = match w.reduction() {
        Ok(r) => r,
        Err(e) => return record(rep, "osp(1|2) C̃⁻¹(Λ)", Err(e.to_string())),
    };
    record(rep, "osp(1|2) C̃⁻¹(Λ)", matrix_matches(&red.c_inv, &OSP_SUSY_C_INV, &w.quotient));
    let r = w.modified_dirac(&red, 0, 0).map_err(|e| e.to_string()).and_then(|s| series_matches(&s, OSP_SUSY_FBAR_FBAR, &w.quotient));
    record(rep, "osp(1|2) π{F̄_Λ F̄}^D", r);
}

/// The unprojected sl₂ matrix has no inverse in the supported class.
pub fn sl2_unprojected(rep: &mut Report) {
    let w = match WSetup::new(&LieSuperalgebra::sl2(), false) {
        Ok(w) => w,
        Err(e) => return record(rep, "sl2 unprojected C(λ)", Err(e.to_string())),
    };
    let r = match w.unprojected_c().invert() {
        Err(Error::NotInClass(_)) => Ok(()),
        Err(e) => Err(e.to_string()),
        Ok(_) => Err("unexpectedly inverted".into()),
    };
    record(rep, "sl2 unprojected C(λ) not invertible", r);
}

/// Dual bases q_a = F, q_b = f, q^a = E, q^b = ½e and the SUSY families r^a_m, r_a^m.
pub fn osp_bases(rep: &mut Report) {
    let g = LieSuperalgebra::osp12();
    let el = |n: &str| g.basis(g.index_of(n).unwrap());
    let sc = |n: &str, a: i64, b: i64| LieSuperalgebra::scale(&el(n), &q_frac(a, b));
    let r = DualBases::build(&g, false).map_err(|e| e.to_string()).and_then(|db| {
        let ok = db.lower == vec![el("F"), el("f")] && db.upper == vec![el("E"), sc("e", 1, 2)];
        if ok { Ok(()) } else { Err("unexpected dual bases".into()) }
    });
    record(rep, "osp(1|2) q_i, q^i", r);
    let r = DualBases::build(&g, true).map_err(|e| e.to_string()).and_then(|db| {
        let up = vec![el("E"), el("e"), el("H"), el("f"), sc("F", -2, 1)];
        let low = vec![el("F"), sc("f", 1, 2), sc("H", 1, 2), sc("e", -1, 2), sc("E", -1, 2)];
        if db.upper_m == vec![up] && db.lower_m == vec![low] { Ok(()) } else { Err("unexpected r-families".into()) }
    });
    record(rep, "osp(1|2) r^a_m, r_a^m", r);
}

/// {Dā_Λ Db̄} = −λ[a,b]‾ + χ(D[a,b]‾ + kλ(a|b)) on all basis pairs of osp(1|2).
pub fn d_embedding(rep: &mut Report) {
    let g = LieSuperalgebra::osp12();
    let p = affine_susy(&g);
    let mut bad = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (da, db) = (p.gen(i).derive(Flavor::Susy), p.gen(j).derive(Flavor::Susy));
            let br = linear(&p.alphabet, &g.bracket(&g.basis(i), &g.basis(j)));
            let mut want = Series::zero();
            want.add_term(LMono::lam(1), &br.scale(&Scalar::from_int(-1)));
            want.add_term(LMono::lam_chi(0, 1), &br.derive(Flavor::Susy));
            want.add_term(LMono::lam_chi(1, 1), &DiffPoly::constant(Scalar::param(0).scale(&g.form[i][j])));
            if p.bracket(&da, &db).ok() != Some(want) {
                bad.push(format!("{},{}", g.names[i], g.names[j]));
            }
        }
    }
    record(rep, "osp(1|2) {Dā_Λ Db̄}", if bad.is_empty() { Ok(()) } else { Err(bad.join(" ")) });
}

/// Every reference example.
pub fn golden_report() -> Report {
    let mut rep = Report::default();
    osp_bases(&mut rep);
    osp_plain(&mut rep);
    osp_susy(&mut rep);
    sl2_unprojected(&mut rep);
    d_embedding(&mut rep);
    rep
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_goldens_pass() {
        let rep = super::golden_report();
        assert!(rep.all_pass(), "{}", rep.to_text());
    }
}
