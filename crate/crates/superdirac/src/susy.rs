//! Λ-brackets of N=1 SUSY PVAs: the SUSY master formula, the affine SUSY PVA,
//! and the χ-coefficient functor to ordinary λ-brackets.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor, Var};
use crate::lie::LieSuperalgebra;
use crate::pvsa::{linear, par, sign, Pvsa};
use crate::scalar::Scalar;
use crate::series::{LMono, Series};

/// Σ S · ∂b/∂ū_j^{[n]} (χ+D)^n {ū_i _{Λ+∇} ū_j}_→ (χ+D)^m ∂a/∂ū_i^{[m]},
/// with S = (−1)^{ãb̃ + b̃ + (b̃+I+m)(J+n) + n(I+m+1) + m(I+J+1) + m(m−1)/2}.
pub fn master_susy(p: &Pvsa, f: &DiffPoly, g: &DiffPoly, floor_req: i32) -> Series {
    let fl = Flavor::Susy;
    let mut out = Series::zero();
    let gpar = |v: &Var| p.alphabet.parities[v.gen as usize] as u32;
    for fp in f.parity_parts() {
        if fp.is_zero() {
            continue;
        }
        let at = par(&fp) as u32;
        for gp in g.parity_parts() {
            if gp.is_zero() {
                continue;
            }
            let bt = par(&gp) as u32;
            let gvars: Vec<_> = gp.vars().into_iter().map(|v| (v, gp.left_partial(v))).collect();
            for vi in fp.vars() {
                let m = vi.order;
                let i = gpar(&vi);
                let y = Series::from_poly(fp.left_partial(vi)).chi_plus_d_pow(m);
                for (vj, db) in &gvars {
                    let entry = &p.table[vi.gen as usize][vj.gen as usize];
                    if entry.is_known_zero() {
                        continue;
                    }
                    let n = vj.order;
                    let j = gpar(vj);
                    let e = at * bt + bt + (bt + i + m) * (j + n) + n * (i + m + 1) + m * (i + j + 1) + m * m.saturating_sub(1) / 2;
                    let z = Series::apply_op(entry, &y, fl, floor_req).chi_plus_d_pow(n);
                    out.add_assign(&z.mul_poly_left(db).scale(&sign(e)));
                }
            }
        }
    }
    out
}

/// Affine SUSY PVA on the parity-reversed generators ā:
/// {ā_Λ b̄} = (−1)^ã ([a,b]‾ + kχ(a|b)).
/// One even generator u with {u_Λ u} = λ⁻¹χ.
pub fn nonlocal_susy_example() -> Pvsa {
    let a = Alphabet::new(vec!["u".into()], vec![0], Flavor::Susy);
    Pvsa::new(a, vec![vec![Series::scalar_term(Scalar::one(), -1, 1)]])
}

pub fn affine_susy(g: &LieSuperalgebra) -> Pvsa {
    let alphabet = Alphabet {
        names: g.names.iter().map(|n| format!("{}bar", n)).collect(),
        parities: g.parities.iter().map(|p| 1 - p).collect(),
        flavor: Flavor::Susy,
        params: g.params.clone(),
    };
    let n = g.dim();
    let k = Scalar::param(0);
    let mut table = vec![vec![Series::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = linear(&alphabet, &g.bracket(&g.basis(i), &g.basis(j)));
            let mut s = Series::from_poly(br);
            s.add_term(LMono::lam_chi(0, 1), &DiffPoly::constant(k.scale(&g.form[i][j])));
            table[i][j] = s.scale(&sign(g.parities[i] as u32));
        }
    }
    Pvsa::new(alphabet, table)
}

/// The ordinary λ-bracket carried by a SUSY PVA: {a_λ b} is the χ-coefficient of
/// {a_Λ b}. As a ∂-differential algebra the SUSY algebra is generated by ū_i and
/// Dū_i; in the image these are generators 2i and 2i+1.
#[derive(Clone, Debug)]
pub struct ChiImage {
    pub pvsa: Pvsa,
    source: Alphabet,
}

impl ChiImage {
    /// Rewrites a SUSY differential polynomial in the doubled ∂-alphabet.
    pub fn to_plain(&self, p: &DiffPoly) -> DiffPoly {
        let pa = &self.pvsa.alphabet;
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            let mut t = DiffPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let g = 2 * v.gen as usize + (v.order % 2) as usize;
                t = &t * &DiffPoly::var(pa.var(g, v.order / 2)).pow(e);
            }
            out += &t;
        }
        out
    }

    /// Inverse of [`ChiImage::to_plain`].
    pub fn to_susy(&self, p: &DiffPoly) -> DiffPoly {
        p.map_generators(Flavor::Plain, &|g| {
            let base = self.source.gen(g as usize / 2);
            if g % 2 == 1 {
                base.derive(Flavor::Susy)
            } else {
                base
            }
        })
    }

    /// The embedding a ↦ Dā of an affine PVSA on the same Lie superalgebra.
    pub fn embed_d(&self, p: &DiffPoly) -> DiffPoly {
        p.map_generators(Flavor::Plain, &|g| self.pvsa.gen(2 * g as usize + 1))
    }
}

pub fn chi_coefficient_functor(s: &Pvsa) -> ChiImage {
    let src = &s.alphabet;
    let mut names = Vec::new();
    let mut parities = Vec::new();
    for (n, &p) in src.names.iter().zip(&src.parities) {
        names.push(n.clone());
        parities.push(p);
        names.push(format!("D{}", n));
        parities.push(1 - p);
    }
    let alphabet = Alphabet { names, parities, flavor: Flavor::Plain, params: src.params.clone() };
    let n = alphabet.len();
    let mut img = ChiImage { pvsa: Pvsa::new(alphabet, vec![]).with_floor(s.floor), source: src.clone() };
    let susy_gen = |g: usize| {
        let b = src.gen(g / 2);
        if g % 2 == 1 {
            b.derive(Flavor::Susy)
        } else {
            b
        }
    };
    let mut table = vec![vec![Series::zero(); n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let full = s.bracket_at(&susy_gen(a), &susy_gen(b), s.work_floor());
            let chi = full.chi_part(1);
            *cell = chi.map_coeffs(&|c| img.to_plain(c));
        }
    }
    img.pvsa.table = table;
    img
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pvsa::Pvsa;

    #[test]
    fn affine_susy_osp_ef() {
        let g = LieSuperalgebra::osp12();
        let p = affine_susy(&g);
        let e = p.gen(g.index_of("E").unwrap());
        let f = p.gen(g.index_of("F").unwrap());
        assert_eq!(p.text(&p.bracket(&e, &f).unwrap()), "k*X + Hbar");
        assert!(p.check_generators().all_pass());
    }

    #[test]
    fn d_embedding_example() {
        // {Dā_Λ Db̄} = −λ[a,b]‾ + χ(D[a,b]‾ + kλ(a|b))
        let g = LieSuperalgebra::osp12();
        let p = affine_susy(&g);
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let da = p.gen(i).derive(Flavor::Susy);
                let db = p.gen(j).derive(Flavor::Susy);
                let br = linear(&p.alphabet, &g.bracket(&g.basis(i), &g.basis(j)));
                let mut want = Series::zero();
                want.add_term(LMono::lam(1), &br.scale(&Scalar::from_int(-1)));
                want.add_term(LMono::lam_chi(0, 1), &br.derive(Flavor::Susy));
                want.add_term(LMono::lam_chi(1, 1), &DiffPoly::constant(Scalar::param(0).scale(&g.form[i][j])));
                assert_eq!(p.bracket(&da, &db).unwrap(), want, "{} {}", i, j);
            }
        }
    }

    #[test]
    fn functor_reproduces_affine() {
        let g = LieSuperalgebra::osp12();
        let img = chi_coefficient_functor(&affine_susy(&g));
        let aff = Pvsa::affine(&g);
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let want = aff.table[i][j].map_coeffs(&|c| img.embed_d(c));
                assert_eq!(img.pvsa.table[2 * i + 1][2 * j + 1], want);
            }
        }
    }
}
