//! Seeded random homogeneous differential polynomials and operator matrices for property checks.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor, Mono, Var};
use crate::matrix::OpMatrix;
use crate::scalar::Scalar;
use crate::series::{LMono, Series};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random monomial of degree 1..=max_deg with derivative orders ≤ max_order.
pub fn random_mono(a: &Alphabet, r: &mut ChaCha8Rng, max_deg: u32, max_order: u32) -> Mono {
    let deg = r.gen_range(1..=max_deg);
    let mut m = Mono::one();
    for _ in 0..deg {
        let g = r.gen_range(0..a.len());
        let o = r.gen_range(0..=max_order);
        let v: Var = a.var(g, o);
        if let Some((_, p)) = m.mul(&Mono::var(v)) {
            m = p;
        }
    }
    m
}

/// One or two monomials of equal parity with small integer coefficients.
pub fn random_homogeneous(a: &Alphabet, r: &mut ChaCha8Rng, max_deg: u32, max_order: u32) -> DiffPoly {
    let m1 = random_mono(a, r, max_deg, max_order);
    let mut p = DiffPoly::term(m1.clone(), Scalar::from_int(r.gen_range(1..=3)));
    if r.gen_bool(0.5) {
        for _ in 0..8 {
            let m2 = random_mono(a, r, max_deg, max_order);
            if m2.parity() == m1.parity() {
                let c = r.gen_range(-2..=2);
                p.add_term(m2, &Scalar::from_int(if c == 0 { 1 } else { c }));
                break;
            }
        }
    }
    if p.is_zero() {
        DiffPoly::term(m1, Scalar::one())
    } else {
        p
    }
}

/// A random operator entry of the given parity: a few terms c·λ^n (χ) p with
/// 0 ≤ n ≤ max_lam, optional negative powers down to λ^{-neg}.
pub fn random_entry(a: &Alphabet, r: &mut ChaCha8Rng, parity: u8, max_lam: i32, neg: i32) -> Series {
    let susy = a.flavor == Flavor::Susy;
    let mut s = Series::zero();
    for _ in 0..r.gen_range(1..=3) {
        let chi = if susy { r.gen_range(0..=1u8) } else { 0 };
        let n = r.gen_range(-neg..=max_lam);
        let need = (parity + chi) % 2;
        let coeff = if need == 0 && r.gen_bool(0.4) {
            DiffPoly::constant(Scalar::from_int(r.gen_range(1..=3)))
        } else {
            let mut p = DiffPoly::zero();
            for _ in 0..8 {
                let m = random_mono(a, r, 2, 1);
                if m.parity() == need {
                    p = DiffPoly::term(m, Scalar::from_int(r.gen_range(1..=3)));
                    break;
                }
            }
            p
        };
        s.add_term(LMono::lam_chi(n, chi), &coeff);
    }
    s
}

/// An even operator matrix: entry (i,j) has parity row_par[i] + col_par[j].
pub fn random_op_matrix(a: &Alphabet, r: &mut ChaCha8Rng, row_par: &[u8], col_par: &[u8], floor: i32, neg: i32) -> OpMatrix {
    let mut m = OpMatrix::zeros(row_par.to_vec(), col_par.to_vec(), a.flavor, floor);
    for (i, &pi) in row_par.iter().enumerate() {
        for (j, &pj) in col_par.iter().enumerate() {
            if r.gen_bool(0.7) {
                m.entries[i][j] = random_entry(a, r, (pi + pj) % 2, 2, neg);
            }
        }
    }
    m
}

pub fn random_parities(r: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    (0..n).map(|_| r.gen_range(0..=1u8)).collect()
}

/// K∘(Id + T) with K diagonal of scalar monomials c·k^e·λ^d and T strictly upper triangular.
pub fn random_invertible(a: &Alphabet, r: &mut ChaCha8Rng, par: &[u8], floor: i32) -> OpMatrix {
    let n = par.len();
    let mut k = OpMatrix::zeros(par.to_vec(), par.to_vec(), a.flavor, floor);
    for i in 0..n {
        let c = Scalar::param_pow(0, r.gen_range(0..=2)).scale(&crate::scalar::q(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }));
        k.entries[i][i] = Series::scalar_term(c, r.gen_range(0..=2), 0);
    }
    let mut t = OpMatrix::identity(par.to_vec(), a.flavor, floor);
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.7) {
                t.entries[i][j] = random_entry(a, r, (par[i] + par[j]) % 2, 2, 0);
            }
        }
    }
    k.compose(&t).expect("square shapes agree")
}
