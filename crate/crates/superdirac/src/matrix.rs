//! Matrix differential operators: Mat_{(r|s)} ⊗ 𝒫((λ⁻¹)) (or 𝒫((Λ⁻¹))) with the
//! twisted product, the adjoint, and inversion by a monomial factor and a Neumann series.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor};
use crate::error::{Error, Result};
use crate::pvsa::sign;
use crate::scalar::Scalar;
use crate::series::{LMono, Series};
use crate::text::series_text;

#[derive(Clone, Debug, PartialEq)]
pub struct OpMatrix {
    pub entries: Vec<Vec<Series>>,
    /// Parities of the row and column indices.
    pub row_par: Vec<u8>,
    pub col_par: Vec<u8>,
    pub flavor: Flavor,
    /// Depth (half units of λ) for expansions of negative powers.
    pub floor: i32,
}

impl OpMatrix {
    pub fn new(entries: Vec<Vec<Series>>, row_par: Vec<u8>, col_par: Vec<u8>, flavor: Flavor, floor: i32) -> Self {
        OpMatrix { entries, row_par, col_par, flavor, floor }
    }

    pub fn zeros(row_par: Vec<u8>, col_par: Vec<u8>, flavor: Flavor, floor: i32) -> Self {
        let entries = vec![vec![Series::zero(); col_par.len()]; row_par.len()];
        OpMatrix { entries, row_par, col_par, flavor, floor }
    }

    pub fn identity(par: Vec<u8>, flavor: Flavor, floor: i32) -> Self {
        let mut m = Self::zeros(par.clone(), par, flavor, floor);
        for i in 0..m.rows() {
            m.entries[i][i] = Series::constant(Scalar::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_par.len()
    }

    pub fn cols(&self) -> usize {
        self.col_par.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i][j]
    }

    /// Each entry has parity row + column parity.
    pub fn is_even(&self) -> bool {
        (0..self.rows()).all(|i| {
            (0..self.cols()).all(|j| {
                let e = &self.entries[i][j];
                e.is_zero() || e.parity() == Some((self.row_par[i] + self.col_par[j]) % 2)
            })
        })
    }

    /// (A∘B)_il = Σ_k (−1)^{(k̃+l̃)Ã_ik} A_ik(λ+∂) B_kl(λ).
    pub fn compose(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if self.col_par != other.row_par {
            return Err(Error::Shape("composition of incompatible matrices".into()));
        }
        let floor = self.floor.min(other.floor);
        let mut out = Self::zeros(self.row_par.clone(), other.col_par.clone(), self.flavor, floor);
        for i in 0..self.rows() {
            for (k, &pk) in self.col_par.iter().enumerate() {
                let a = &self.entries[i][k];
                if a.is_known_zero() {
                    continue;
                }
                let parts = split_parity(a);
                for l in 0..other.cols() {
                    let b = &other.entries[k][l];
                    if b.is_known_zero() {
                        continue;
                    }
                    let pl = other.col_par[l];
                    for (p, part) in parts.iter().enumerate() {
                        if part.is_known_zero() {
                            continue;
                        }
                        let s = sign(((pk + pl) as u32) * p as u32);
                        let t = Series::apply_op(part, b, self.flavor, floor).scale(&s);
                        out.entries[i][l].add_assign(&t);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if self.row_par != other.row_par || self.col_par != other.col_par {
            return Err(Error::Shape("sum of incompatible matrices".into()));
        }
        let mut out = self.clone();
        for (r, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (x, y) in r.iter_mut().zip(orow) {
                x.add_assign(y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> OpMatrix {
        let mut out = self.clone();
        for r in out.entries.iter_mut() {
            for x in r.iter_mut() {
                *x = x.scale(c);
            }
        }
        out
    }

    /// A* = Σ (−1)^{ĩj̃+j̃} e_ji ⊗ A_ij*.
    pub fn adjoint(&self) -> OpMatrix {
        let mut out = Self::zeros(self.col_par.clone(), self.row_par.clone(), self.flavor, self.floor);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let (pi, pj) = (self.row_par[i] as u32, self.col_par[j] as u32);
                out.entries[j][i] = self.entries[i][j]
                    .adjoint(self.flavor, self.floor)
                    .scale(&sign(pi * pj + pj));
            }
        }
        out
    }

    /// Equality on the known window of every entry.
    pub fn agrees_with(&self, other: &OpMatrix) -> bool {
        self.row_par == other.row_par
            && self.col_par == other.col_par
            && self.entries.iter().flatten().zip(other.entries.iter().flatten()).all(|(a, b)| a.agrees_with(b))
    }

    pub fn is_identity(&self) -> bool {
        self.row_par == self.col_par && self.agrees_with(&Self::identity(self.row_par.clone(), self.flavor, self.floor))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// A = K∘(Id + T) with K a generalized permutation matrix of scalar monomials
    /// c·λ^d or c·λ^d χ and T nilpotent; then A⁻¹ = (Σ_{p<N} (−T)^p)∘K⁻¹.
    pub fn invert(&self) -> Result<OpMatrix> {
        if self.rows() != self.cols() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows();
        let mut used = vec![false; n];
        let mut choice = vec![0usize; n];
        self.search(0, &mut used, &mut choice).ok_or_else(|| {
            Error::NotInClass("no monomial factor K with K⁻¹A − Id nilpotent".into())
        })
    }

    fn search(&self, row: usize, used: &mut [bool], choice: &mut [usize]) -> Option<OpMatrix> {
        let n = self.rows();
        if row == n {
            return self.try_with(choice);
        }
        for c in 0..n {
            if used[c] || self.entries[row][c].as_scalar_lam_chi().is_none() {
                continue;
            }
            used[c] = true;
            choice[row] = c;
            if let Some(m) = self.search(row + 1, used, choice) {
                return Some(m);
            }
            used[c] = false;
        }
        None
    }

    fn try_with(&self, choice: &[usize]) -> Option<OpMatrix> {
        let n = self.rows();
        // K_{i,σ(i)} = c λ^d  ⇒  (K⁻¹)_{σ(i),i} = ±c⁻¹ λ^{-d}, and c λ^d χ ⇒ ±c⁻¹ λ^{-d-1} χ
        let mut k = Self::zeros(self.row_par.clone(), self.col_par.clone(), self.flavor, self.floor);
        let mut kinv = Self::zeros(self.col_par.clone(), self.row_par.clone(), self.flavor, self.floor);
        for (i, &c) in choice.iter().enumerate() {
            let (s, d, x) = self.entries[i][c].as_scalar_lam_chi()?;
            let inv = s.try_inverse()?;
            k.entries[i][c] = self.entries[i][c].clone();
            kinv.entries[c][i] = Series::term(LMono::lam_chi(-d - x as i32, x), DiffPoly::constant(inv));
        }
        // fix the signs so that K⁻¹∘K = Id
        let prod = kinv.compose(&k).ok()?;
        for (i, &c) in choice.iter().enumerate() {
            let (s, d, x) = prod.entries[c][c].as_scalar_lam_chi()?;
            if d != 0 || x != 0 {
                return None;
            }
            if s == Scalar::from_int(-1) {
                kinv.entries[c][i] = kinv.entries[c][i].neg();
            } else if !s.is_one() {
                return None;
            }
        }
        let id = Self::identity(self.col_par.clone(), self.flavor, self.floor);
        let t = kinv.compose(self).ok()?.add(&id.scale(&Scalar::from_int(-1))).ok()?;
        let neg_t = t.scale(&Scalar::from_int(-1));
        let mut sum = id.clone();
        let mut pw = id;
        let mut nilpotent = false;
        for _ in 0..=n {
            pw = pw.compose(&neg_t).ok()?;
            if pw.is_zero() {
                nilpotent = true;
                break;
            }
            sum = sum.add(&pw).ok()?;
        }
        if !nilpotent {
            return None;
        }
        sum.compose(&kinv).ok()
    }

    /// B is a two-sided inverse of A.
    pub fn verify_inverse(&self, b: &OpMatrix) -> bool {
        let l = self.compose(b).map(|m| m.is_identity()).unwrap_or(false);
        let r = b.compose(self).map(|m| m.is_identity()).unwrap_or(false);
        l && r
    }

    pub fn render(&self, a: &Alphabet) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| series_text(e, a)).collect()).collect()
    }

    pub fn text(&self, a: &Alphabet) -> String {
        let cells = self.render(a);
        let w = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for r in cells {
            out.push_str("[ ");
            out.push_str(&r.iter().map(|c| format!("{:>w$}", c, w = w)).collect::<Vec<_>>().join(" | "));
            out.push_str(" ]\n");
        }
        out
    }
}

/// Even and odd parts of an operator entry, outer χ included.
fn split_parity(s: &Series) -> [Series; 2] {
    let mut parts = [
        Series::zero().with_lam_floor(s.lam_floor()),
        Series::zero().with_lam_floor(s.lam_floor()),
    ];
    for (k, c) in s.terms() {
        for (p, cp) in c.parity_parts().iter().enumerate() {
            if !cp.is_zero() {
                parts[(p + k.odd_count() as usize) % 2].add_term(*k, cp);
            }
        }
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Alphabet {
        Alphabet::new(vec!["f".into()], vec![0], Flavor::Plain)
    }

    #[test]
    fn unipotent_inverse() {
        let k = Scalar::param(0);
        let one = Series::constant(Scalar::one());
        let mut m = OpMatrix::identity(vec![0, 1, 1], Flavor::Plain, -16);
        m.entries[0][1] = Series::scalar_term(k.clone(), 1, 0);
        let inv = m.invert().unwrap();
        assert_eq!(inv.entries[0][1], Series::scalar_term(-k, 1, 0));
        assert_eq!(inv.entries[0][0], one);
        assert!(m.verify_inverse(&inv));
    }

    #[test]
    fn non_scalar_row_is_not_in_class() {
        let f = Series::from_poly(a().gen(0));
        let mut m = OpMatrix::zeros(vec![0, 0], vec![0, 0], Flavor::Plain, -16);
        m.entries[0][0] = f.clone();
        m.entries[1][1] = f;
        m.entries[1][0] = Series::scalar_term(Scalar::param(0), 1, 0);
        assert!(matches!(m.invert(), Err(Error::NotInClass(_))));
    }

    #[test]
    fn adjoint_of_scalar_lambda() {
        let m = OpMatrix::new(vec![vec![Series::scalar_term(Scalar::one(), 1, 0)]], vec![0], vec![0], Flavor::Plain, -16);
        assert_eq!(m.adjoint().entries[0][0], Series::scalar_term(Scalar::from_int(-1), 1, 0));
    }
}
