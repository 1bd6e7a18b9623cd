//! Exact scalars: Laurent polynomials over ℚ in a fixed list of named parameters.
//!
//! Parameters are addressed by index; names live with the algebra context and are
//! only needed for printing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"` style rationals.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        Some(Q::from_integer(s.parse().ok()?))
    }
}

/// Exponent vector over the parameters, trailing zeros trimmed.
type PMono = Vec<i32>;

fn trim(mut m: PMono) -> PMono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn pmono_mul(a: &PMono, b: &PMono) -> PMono {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    trim(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<PMono, Q>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    pub fn from_q(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Scalar { terms }
    }

    /// The parameter with index `i` raised to `e`.
    pub fn param_pow(i: usize, e: i32) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = e;
        let mut terms = BTreeMap::new();
        terms.insert(trim(m), Q::one());
        Scalar { terms }
    }

    pub fn param(i: usize) -> Self {
        Self::param_pow(i, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|c| c.is_one()).unwrap_or(false)
    }

    /// `Some(c)` when the scalar has no parameter dependence.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        let c = self.as_rational()?;
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Inverse of a single-term scalar `c·k^e`; `None` for sums and zero.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv: PMono = m.iter().map(|e| -e).collect();
        let mut terms = BTreeMap::new();
        terms.insert(inv, c.recip());
        Some(Scalar { terms })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree in the parameters of every term, if homogeneous.
    pub fn param_degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().map(|m| m.iter().sum())
    }

    /// Text form, e.g. `(3/2)*k^2 - k`. Parameters are named by `names`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest parameter degree first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&mono_text(&c.abs(), m, names));
        }
        out
    }

    /// LaTeX form.
    pub fn latex_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let has_params = m.iter().any(|&e| e != 0);
            if !a.is_one() || !has_params {
                if a.is_integer() {
                    let _ = write!(out, "{}", a.numer());
                } else {
                    let _ = write!(out, "\\frac{{{}}}{{{}}}", a.numer(), a.denom());
                }
            }
            for (idx, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names.get(idx).map(String::as_str).unwrap_or("p");
                if e == 1 {
                    out.push_str(name);
                } else {
                    let _ = write!(out, "{}^{{{}}}", name, e);
                }
            }
        }
        out
    }

    /// Whether a printed form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    pub fn is_negative_leading(&self) -> bool {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        items.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}

pub(crate) fn q_text(c: &Q) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

fn mono_text(c: &Q, m: &PMono, names: &[String]) -> String {
    let mut parts = Vec::new();
    let has_params = m.iter().any(|&e| e != 0);
    if !c.is_one() || !has_params {
        parts.push(q_text(c));
    }
    for (idx, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(idx).cloned().unwrap_or_else(|| format!("p{}", idx));
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, e));
        }
    }
    parts.join("*")
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Q> for Scalar {
    fn from(c: Q) -> Self {
        Scalar::from_q(c)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e -= c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (m1, c1) = self.terms.iter().next().unwrap();
            let (m2, c2) = rhs.terms.iter().next().unwrap();
            out.terms.insert(pmono_mul(m1, m2), c1 * c2);
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = pmono_mul(m1, m2);
                let e = out.terms.entry(m.clone()).or_insert_with(Q::zero);
                *e += c1 * c2;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Scalar {
        Scalar::param(0)
    }

    #[test]
    fn ring_ops() {
        let a = &k() + &Scalar::from_int(1);
        let b = &k() - &Scalar::from_int(1);
        let p = &a * &b;
        assert_eq!(p, &k().pow(2) - &Scalar::one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_of_monomial() {
        let s = Scalar::param_pow(0, 3).scale(&q_frac(-3, 2));
        let inv = s.try_inverse().unwrap();
        assert!((&s * &inv).is_one());
        assert!((&k() + &Scalar::one()).try_inverse().is_none());
    }

    #[test]
    fn printing() {
        let names = vec!["k".to_string()];
        let s = &Scalar::param_pow(0, 2).scale(&q_frac(3, 2)) - &k();
        assert_eq!(s.fmt_with(&names), "(3/2)*k^2 - k");
        assert_eq!(Scalar::from_int(-2).fmt_with(&names), "-2");
        assert_eq!(parse_q("-1/2"), Some(q_frac(-1, 2)));
    }
}
