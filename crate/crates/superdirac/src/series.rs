//! Series in the outer indeterminates λ, χ (and μ, γ for double brackets) with
//! differential-polynomial coefficients.
//!
//! A term is stored as μ^a γ^b λ^c χ^d · coeff with the coefficient on the right.
//! χ and γ are odd with χ² = −λ, γ² = −μ. Laurent tails are handled by truncation:
//! a floor `f` (in half units, `2·exp + odd flag`) marks everything with weight
//! below `f` as unknown rather than zero.

use crate::diffpoly::{DiffPoly, Flavor};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LMono {
    pub mu: i32,
    pub gam: u8,
    pub lam: i32,
    pub chi: u8,
}

impl LMono {
    pub fn lam(n: i32) -> LMono {
        LMono { lam: n, ..Default::default() }
    }

    pub fn lam_chi(n: i32, chi: u8) -> LMono {
        LMono { lam: n, chi, ..Default::default() }
    }

    pub fn new(mu: i32, gam: u8, lam: i32, chi: u8) -> LMono {
        LMono { mu, gam, lam, chi }
    }

    /// Weight of the (λ, χ) part in half units.
    pub fn lam_weight(&self) -> i32 {
        2 * self.lam + self.chi as i32
    }

    pub fn mu_weight(&self) -> i32 {
        2 * self.mu + self.gam as i32
    }

    pub fn odd_count(&self) -> u8 {
        self.chi + self.gam
    }

    pub fn has_mu(&self) -> bool {
        self.mu != 0 || self.gam != 0
    }
}

/// Generic binomial coefficient C(n, s) for any integer n.
pub fn binom(n: i64, s: u32) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..s as i64 {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    Q::new(num, den)
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn poly_sign(p: &DiffPoly, odd: bool) -> DiffPoly {
    if odd {
        -p
    } else {
        p.clone()
    }
}

/// Multiplies `c` from the left onto a coefficient, passing `odd_outer` odd indeterminates.
fn left_mul_signed(c: &DiffPoly, odd_outer: u8, d: &DiffPoly) -> DiffPoly {
    if odd_outer % 2 == 0 {
        return c * d;
    }
    let [e, o] = c.parity_parts();
    &(&e * d) - &(&o * d)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<LMono, DiffPoly>,
    lam_floor: Option<i32>,
    mu_floor: Option<i32>,
}

pub type LambdaSeries = Series;
pub type LambdaChiSeries = Series;
pub type TwoVarSeries = Series;

impl Series {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: DiffPoly) -> Self {
        Self::term(LMono::default(), p)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(DiffPoly::constant(c))
    }

    pub fn term(k: LMono, c: DiffPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(k, &c);
        s
    }

    /// c·λ^n χ^chi with scalar c.
    pub fn scalar_term(c: Scalar, n: i32, chi: u8) -> Self {
        Self::term(LMono::lam_chi(n, chi), DiffPoly::constant(c))
    }

    pub fn lam_floor(&self) -> Option<i32> {
        self.lam_floor
    }

    pub fn mu_floor(&self) -> Option<i32> {
        self.mu_floor
    }

    pub fn is_exact(&self) -> bool {
        self.lam_floor.is_none() && self.mu_floor.is_none()
    }

    /// Declares everything of λ-weight below `f` unknown (tighter floors are kept).
    pub fn with_lam_floor(mut self, f: Option<i32>) -> Self {
        self.lam_floor = max_opt(self.lam_floor, f);
        self.clip();
        self
    }

    pub fn with_mu_floor(mut self, f: Option<i32>) -> Self {
        self.mu_floor = max_opt(self.mu_floor, f);
        self.clip();
        self
    }

    fn clip(&mut self) {
        let (lf, mf) = (self.lam_floor, self.mu_floor);
        if lf.is_none() && mf.is_none() {
            return;
        }
        self.terms.retain(|k, _| {
            lf.map(|f| k.lam_weight() >= f).unwrap_or(true)
                && mf.map(|f| k.mu_weight() >= f).unwrap_or(true)
        });
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LMono, &DiffPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &LMono) -> DiffPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: LMono, c: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        if let Some(f) = self.lam_floor {
            if k.lam_weight() < f {
                return;
            }
        }
        if let Some(f) = self.mu_floor {
            if k.mu_weight() < f {
                return;
            }
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn max_lam_weight(&self) -> Option<i32> {
        self.terms.keys().map(LMono::lam_weight).max()
    }

    pub fn max_mu_weight(&self) -> Option<i32> {
        self.terms.keys().map(LMono::mu_weight).max()
    }

    pub fn min_lam_weight(&self) -> Option<i32> {
        self.terms.keys().map(LMono::lam_weight).min()
    }

    pub fn has_mu(&self) -> bool {
        self.terms.keys().any(LMono::has_mu) || self.mu_floor.is_some()
    }

    pub fn has_chi(&self) -> bool {
        self.terms.keys().any(|k| k.chi == 1 || k.gam == 1)
    }

    /// Every coefficient is a scalar.
    pub fn is_scalar_valued(&self) -> bool {
        self.terms.values().all(|c| c.as_constant().is_some())
    }

    /// Parity of the whole series (outer odd indeterminates included), if homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (k, c) in &self.terms {
            let q = (c.parity()? + k.odd_count()) % 2;
            if *p.get_or_insert(q) != q {
                return None;
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Fails when the series is not known down to λ-weight `needed`.
    pub fn require_lam(&self, needed: i32) -> Result<()> {
        match self.lam_floor {
            Some(f) if f > needed => Err(Error::Truncation { needed, known: f }),
            _ => Ok(()),
        }
    }

    /// Restricts the series to weights at or above the requested floors, after
    /// checking that they are reachable.
    pub fn clip_to(&self, lam: Option<i32>, mu: Option<i32>) -> Result<Series> {
        if let (Some(need), Some(have)) = (lam, self.lam_floor) {
            if have > need {
                return Err(Error::Truncation { needed: need, known: have });
            }
        }
        if let (Some(need), Some(have)) = (mu, self.mu_floor) {
            if have > need {
                return Err(Error::Truncation { needed: need, known: have });
            }
        }
        let mut out = self.clone();
        out.lam_floor = max_opt(out.lam_floor, lam);
        out.mu_floor = max_opt(out.mu_floor, mu);
        out.clip();
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.add_term(*k, &v.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Series {
        self.scale(&Scalar::from_int(-1))
    }

    fn empty_like(&self) -> Series {
        Series {
            terms: BTreeMap::new(),
            lam_floor: self.lam_floor,
            mu_floor: self.mu_floor,
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        out.lam_floor = max_opt(self.lam_floor, other.lam_floor);
        out.mu_floor = max_opt(self.mu_floor, other.mu_floor);
        out.clip();
        for (k, v) in &other.terms {
            out.add_term(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Series) {
        *self = self.add(other);
    }

    /// p · S, with p passing the odd indeterminates of each term.
    pub fn mul_poly_left(&self, p: &DiffPoly) -> Series {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.add_term(*k, &left_mul_signed(p, k.odd_count(), v));
        }
        out
    }

    /// S · p.
    pub fn mul_poly_right(&self, p: &DiffPoly) -> Series {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * p));
        }
        out
    }

    pub fn map_coeffs(&self, f: &dyn Fn(&DiffPoly) -> DiffPoly) -> Series {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v));
        }
        out
    }

    /// Series product, normal ordered as μγλχ.
    pub fn mul(&self, other: &Series) -> Series {
        let lam_floor = max_opt(
            self.lam_floor.zip(other.max_lam_weight()).map(|(f, t)| f + t),
            other.lam_floor.zip(self.max_lam_weight()).map(|(f, t)| f + t),
        );
        let mu_floor = max_opt(
            self.mu_floor.zip(other.max_mu_weight()).map(|(f, t)| f + t),
            other.mu_floor.zip(self.max_mu_weight()).map(|(f, t)| f + t),
        );
        let mut out = Series { terms: BTreeMap::new(), lam_floor, mu_floor };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut neg = k1.chi == 1 && k2.gam == 1;
                let mut k = LMono::new(k1.mu + k2.mu, k1.gam + k2.gam, k1.lam + k2.lam, k1.chi + k2.chi);
                if k.gam == 2 {
                    k.gam = 0;
                    k.mu += 1;
                    neg = !neg;
                }
                if k.chi == 2 {
                    k.chi = 0;
                    k.lam += 1;
                    neg = !neg;
                }
                let c = left_mul_signed(c1, k2.odd_count(), c2);
                out.add_term(k, &poly_sign(&c, neg));
            }
        }
        out
    }

    /// (λ+∂)^n S with ∂ acting on the coefficients. For n < 0 the expansion stops
    /// below λ-weight `floor_req`.
    pub fn lam_plus_d_pow(&self, n: i32, flavor: Flavor, floor_req: i32) -> Series {
        if n == 0 {
            return self.clone();
        }
        let mut lam_floor = self.lam_floor.map(|f| f + 2 * n);
        let mut truncated = false;
        let mut acc: BTreeMap<LMono, DiffPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut d = c.clone();
            let mut s = 0u32;
            loop {
                if d.is_zero() || (n >= 0 && s as i32 > n) {
                    break;
                }
                let key = LMono { lam: k.lam + n - s as i32, ..*k };
                if n < 0 && key.lam_weight() < floor_req {
                    truncated = true;
                    break;
                }
                let b = binom(n as i64, s);
                let e = acc.entry(key).or_default();
                *e += &d.scale(&Scalar::from_q(b));
                d = d.partial(flavor);
                s += 1;
            }
        }
        if truncated {
            lam_floor = max_opt(lam_floor, Some(floor_req));
        }
        let mut out = Series { terms: BTreeMap::new(), lam_floor, mu_floor: self.mu_floor };
        for (k, c) in acc {
            out.add_term(k, &c);
        }
        out
    }

    /// (χ+D) S, using χ² = −λ and D χ = −χ D + 2λ.
    pub fn chi_plus_d(&self) -> Series {
        let mut out = Series {
            terms: BTreeMap::new(),
            lam_floor: self.lam_floor.map(|f| f + 1),
            mu_floor: self.mu_floor,
        };
        for (k, c) in &self.terms {
            let gsign = k.gam == 1;
            let dc = c.derive(Flavor::Susy);
            if k.chi == 0 {
                out.add_term(LMono { chi: 1, ..*k }, &poly_sign(c, gsign));
                out.add_term(*k, &poly_sign(&dc, gsign));
            } else {
                // χ·χ c = −λ c ; D χ c = −χ Dc + 2λ c
                let up = LMono { chi: 0, lam: k.lam + 1, ..*k };
                out.add_term(up, &poly_sign(c, !gsign));
                out.add_term(*k, &poly_sign(&dc, !gsign));
                out.add_term(up, &poly_sign(&c.scale(&Scalar::from_int(2)), gsign));
            }
        }
        out
    }

    pub fn chi_plus_d_pow(&self, i: u32) -> Series {
        let mut out = self.clone();
        for _ in 0..i {
            out = out.chi_plus_d();
        }
        out
    }

    /// F(Λ+∇) X = Σ_{λ^n χ^i c ∈ F} (−1)^{i c̃} c · (λ+∂)^n (χ+D)^i X.
    /// Also used for {a_{Λ+∇} b}_→ X. `F` must not involve μ or γ.
    pub fn apply_op(f: &Series, x: &Series, flavor: Flavor, floor_req: i32) -> Series {
        let mut out = Series::zero();
        if x.is_zero() && x.is_exact() {
            return out;
        }
        // unknown terms of F leave the result unknown below F_floor + top(X)
        if let Some(ff) = f.lam_floor {
            let top = x.max_lam_weight().unwrap_or(0);
            out.lam_floor = Some(ff + top);
        }
        out.mu_floor = x.mu_floor;
        let mut cache: BTreeMap<(i32, u8), Series> = BTreeMap::new();
        for (k, c) in &f.terms {
            debug_assert!(!k.has_mu());
            let inner = cache
                .entry((k.lam, k.chi))
                .or_insert_with(|| {
                    x.chi_plus_d_pow(k.chi as u32)
                        .lam_plus_d_pow(k.lam, flavor, floor_req)
                })
                .clone();
            let term = if k.chi == 1 {
                let [e, o] = c.parity_parts();
                inner.mul_poly_left(&e).sub(&inner.mul_poly_left(&o))
            } else {
                inner.mul_poly_left(c)
            };
            out.add_assign(&term);
        }
        out
    }

    /// ←S(−Λ−∇): Σ (−λ−∂)^n (−χ−D)^i c with the derivations acting on the coefficients.
    /// This is also the formal adjoint S*.
    pub fn substitute_left(&self, flavor: Flavor, floor_req: i32) -> Series {
        let mut out = Series {
            terms: BTreeMap::new(),
            lam_floor: self.lam_floor,
            mu_floor: self.mu_floor,
        };
        for (k, c) in &self.terms {
            debug_assert!(!k.has_mu());
            let base = Series::from_poly(c.clone());
            let mut t = base.chi_plus_d_pow(k.chi as u32).lam_plus_d_pow(k.lam, flavor, floor_req);
            if (k.lam + k.chi as i32).rem_euclid(2) == 1 {
                t = t.neg();
            }
            out.add_assign(&t);
        }
        out
    }

    pub fn adjoint(&self, flavor: Flavor, floor_req: i32) -> Series {
        self.substitute_left(flavor, floor_req)
    }

    /// ι_{μ,λ}(λ+μ)^p = Σ_j C(p,j) λ^j μ^{p−j}; for p < 0 stops once the μ-weight drops
    /// below `mu_floor`.
    pub fn iota_expand(p: i32, mu_floor: i32) -> Series {
        let mut out = Series::zero();
        if p >= 0 {
            for j in 0..=p as u32 {
                out.add_term(
                    LMono::new(p - j as i32, 0, j as i32, 0),
                    &DiffPoly::constant(Scalar::from_q(binom(p as i64, j))),
                );
            }
            return out;
        }
        out.mu_floor = Some(mu_floor);
        let mut j = 0u32;
        while 2 * (p - j as i32) >= mu_floor {
            out.add_term(
                LMono::new(p - j as i32, 0, j as i32, 0),
                &DiffPoly::constant(Scalar::from_q(binom(p as i64, j))),
            );
            j += 1;
        }
        out
    }

    /// Substitutes λ → λ+μ, χ → χ+γ (expanded by ι_{μ,λ}) in a series of λ, χ only.
    pub fn subst_sum(&self, mu_floor: i32) -> Series {
        let mut out = Series::zero();
        if let Some(f) = self.lam_floor {
            // unknown (λ+μ)^n with small n only reach small μ powers
            out.mu_floor = Some(f);
        }
        let odd = Series::term(LMono::new(0, 1, 0, 0), DiffPoly::one())
            .add(&Series::term(LMono::lam_chi(0, 1), DiffPoly::one()));
        for (k, c) in &self.terms {
            debug_assert!(!k.has_mu());
            let mut t = Series::iota_expand(k.lam, mu_floor);
            if k.chi == 1 {
                t = t.mul(&odd);
            }
            out.add_assign(&t.mul(&Series::from_poly(c.clone())));
        }
        out
    }

    /// λ → μ, χ → γ.
    pub fn rename_to_mu(&self) -> Series {
        let mut out = Series { terms: BTreeMap::new(), lam_floor: None, mu_floor: self.lam_floor };
        for (k, c) in &self.terms {
            debug_assert!(!k.has_mu());
            out.add_term(LMono::new(k.lam, k.chi, 0, 0), c);
        }
        out
    }

    /// Coefficient series of the fixed (μ, γ) monomial, as a series in λ, χ.
    pub fn mu_slice(&self, mu: i32, gam: u8) -> Series {
        let mut out = Series { terms: BTreeMap::new(), lam_floor: self.lam_floor, mu_floor: None };
        for (k, c) in &self.terms {
            if k.mu == mu && k.gam == gam {
                out.add_term(LMono::lam_chi(k.lam, k.chi), c);
            }
        }
        out
    }

    /// Distinct (μ, γ) pairs present.
    pub fn mu_keys(&self) -> Vec<(i32, u8)> {
        let mut v: Vec<_> = self.terms.keys().map(|k| (k.mu, k.gam)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Equality on the region where both sides are known.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.sub(other).is_zero()
    }

    /// The χ⁰ or χ¹ part as a plain λ-series.
    pub fn chi_part(&self, chi: u8) -> Series {
        let mut out = Series {
            terms: BTreeMap::new(),
            lam_floor: self.lam_floor.map(|f| f.div_euclid(2) * 2 + if f.rem_euclid(2) > chi as i32 { 2 } else { 0 }),
            mu_floor: self.mu_floor,
        };
        for (k, c) in &self.terms {
            if k.chi == chi {
                out.add_term(LMono { chi: 0, ..*k }, c);
            }
        }
        out
    }

    /// Single scalar monomial c·λ^d (no χ), if that is what this is.
    pub fn as_scalar_monomial(&self) -> Option<(Scalar, i32)> {
        if !self.is_exact() || self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        if k.chi != 0 || k.has_mu() {
            return None;
        }
        Some((c.as_constant()?, k.lam))
    }

    /// Single scalar monomial c·λ^d χ^e, if that is what this is.
    pub fn as_scalar_lam_chi(&self) -> Option<(Scalar, i32, u8)> {
        if !self.is_exact() || self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        if k.has_mu() {
            return None;
        }
        Some((c.as_constant()?, k.lam, k.chi))
    }

    pub fn is_one(&self) -> bool {
        self.is_exact()
            && self.terms.len() == 1
            && self
                .terms
                .get(&LMono::default())
                .and_then(|c| c.as_constant())
                .map(|s| s.is_one())
                .unwrap_or(false)
    }

    pub fn is_known_zero(&self) -> bool {
        self.is_exact() && self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::Alphabet;

    fn alpha() -> Alphabet {
        Alphabet::new(vec!["f".into(), "u".into()], vec![1, 0], Flavor::Plain)
    }

    #[test]
    fn arrow_substitution_binomial() {
        let a = alpha();
        let k = Scalar::param(0);
        let f = Series::scalar_term(k.clone(), 1, 0);
        let x = Series::from_poly(a.gen(0));
        let got = Series::apply_op(&f, &x, Flavor::Plain, -16);
        let want = Series::term(LMono::lam(1), a.gen(0).scale(&k))
            .add(&Series::from_poly(a.gen(0).partial(Flavor::Plain).scale(&k)));
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_left_examples() {
        let a = alpha();
        let u = a.gen(1);
        let s = Series::term(LMono::lam(1), u.clone());
        let want = Series::term(LMono::lam(1), -&u).add(&Series::from_poly(-u.partial(Flavor::Plain)));
        assert_eq!(s.substitute_left(Flavor::Plain, -16), want);
        let c = Series::scalar_term(Scalar::param(0), 1, 0);
        assert_eq!(c.substitute_left(Flavor::Plain, -16), c.neg());
    }

    #[test]
    fn iota_geometric() {
        let s = Series::iota_expand(-1, -6);
        assert_eq!(s.coeff(&LMono::new(-1, 0, 0, 0)), DiffPoly::one());
        assert_eq!(s.coeff(&LMono::new(-2, 0, 1, 0)), -DiffPoly::one());
        assert_eq!(s.coeff(&LMono::new(-3, 0, 2, 0)), DiffPoly::one());
        assert_eq!(s.len(), 3);
        assert!(Series::iota_expand(1, -6).is_exact());
    }

    #[test]
    fn chi_plus_d_squares_to_lam_plus_d() {
        let a = Alphabet::new(vec!["u".into()], vec![1], Flavor::Susy);
        let u = a.gen(0);
        for chi in 0..2u8 {
            let x = Series::term(LMono::lam_chi(0, chi), u.clone());
            let lhs = x.chi_plus_d().chi_plus_d();
            let rhs = x.lam_plus_d_pow(1, Flavor::Susy, -16);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn negative_power_truncates() {
        let a = alpha();
        let x = Series::from_poly(a.gen(1));
        let s = x.lam_plus_d_pow(-1, Flavor::Plain, -8);
        assert_eq!(s.lam_floor(), Some(-8));
        assert_eq!(s.len(), 4);
        assert!(s.require_lam(-8).is_ok());
        assert!(s.require_lam(-10).is_err());
    }
}
