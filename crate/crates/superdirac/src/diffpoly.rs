//! Free differential superalgebras ℚ[k][u_i^{(m)}] (even ∂) and ℚ[k][u_i^{[n]}] (odd D, ∂ = D²).
//!
//! Monomials are kept sorted by (generator, order); odd variables occur at most once.
//! Reordering into canonical form applies the Koszul sign.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Even derivation ∂.
    Plain,
    /// Odd derivation D with D² = ∂.
    Susy,
}

impl Flavor {
    /// Parity of the basic derivation (∂ or D).
    pub fn deriv_parity(self) -> u8 {
        match self {
            Flavor::Plain => 0,
            Flavor::Susy => 1,
        }
    }

    /// How many basic derivations make up one ∂.
    pub fn steps_per_partial(self) -> u32 {
        match self {
            Flavor::Plain => 1,
            Flavor::Susy => 2,
        }
    }
}

/// A derivative variable u_gen^{(order)} or u_gen^{[order]}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub gen: u32,
    pub order: u32,
    pub odd: bool,
}

impl Var {
    pub fn new(gen: u32, order: u32, gen_parity: u8, flavor: Flavor) -> Var {
        let p = match flavor {
            Flavor::Plain => gen_parity % 2,
            Flavor::Susy => ((gen_parity as u32 + order) % 2) as u8,
        };
        Var { gen, order, odd: p == 1 }
    }

    pub fn parity(&self) -> u8 {
        self.odd as u8
    }

    /// One application of the basic derivation.
    pub fn next(&self, flavor: Flavor) -> Var {
        Var {
            gen: self.gen,
            order: self.order + 1,
            odd: match flavor {
                Flavor::Plain => self.odd,
                Flavor::Susy => !self.odd,
            },
        }
    }
}

/// A sorted product of variables with exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Mono {
        Mono(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn parity(&self) -> u8 {
        (self.0.iter().filter(|(v, _)| v.odd).count() % 2) as u8
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Canonical product; `None` when an odd variable repeats. The bool is the sign flip.
    pub fn mul(&self, other: &Mono) -> Option<(bool, Mono)> {
        let a = &self.0;
        let b = &other.0;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut odd_left_in_a = a.iter().filter(|(v, _)| v.odd).count();
        let mut flips = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                if a[i].0.odd {
                    odd_left_in_a -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                if b[j].0.odd {
                    flips += odd_left_in_a;
                }
                out.push(b[j]);
                j += 1;
            } else {
                if a[i].0.odd {
                    return None;
                }
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((flips % 2 == 1, Mono(out)))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Generator names, parities and flavor of one algebra context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub names: Vec<String>,
    pub parities: Vec<u8>,
    pub flavor: Flavor,
    pub params: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, parities: Vec<u8>, flavor: Flavor) -> Alphabet {
        assert_eq!(names.len(), parities.len());
        Alphabet {
            names,
            parities,
            flavor,
            params: vec!["k".to_string()],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, gen: usize, order: u32) -> Var {
        Var::new(gen as u32, order, self.parities[gen], self.flavor)
    }

    pub fn gen(&self, gen: usize) -> DiffPoly {
        DiffPoly::var(self.var(gen, 0))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffPoly {
    terms: BTreeMap<Mono, Scalar>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Mono::var(v), Scalar::one())
    }

    pub fn term(m: Mono, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// The constant term, if the polynomial has no variables at all.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Mono::one()).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Splits into even and odd parts.
    pub fn parity_parts(&self) -> [DiffPoly; 2] {
        let mut parts = [DiffPoly::zero(), DiffPoly::zero()];
        for (m, c) in &self.terms {
            parts[m.parity() as usize].terms.insert(m.clone(), c.clone());
        }
        parts
    }

    /// Parity if homogeneous (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(Mono::parity);
        match it.next() {
            None => Some(0),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| *v))
            .collect()
    }

    /// One application of the basic derivation (∂ for `Plain`, D for `Susy`).
    pub fn derive(&self, flavor: Flavor) -> Self {
        let d = flavor.deriv_parity();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut prefix_parity = 0u8;
            for (k, &(v, e)) in m.0.iter().enumerate() {
                let sign_neg = d == 1 && prefix_parity == 1;
                // prefix · v^{e-1} · δv · suffix
                let mut left: Vec<(Var, u32)> = m.0[..k].to_vec();
                if e > 1 {
                    left.push((v, e - 1));
                }
                let right = Mono(m.0[k + 1..].to_vec());
                let step = Mono(left)
                    .mul(&Mono::var(v.next(flavor)))
                    .and_then(|(s1, lm)| lm.mul(&right).map(|(s2, mm)| (s1 ^ s2, mm)));
                if let Some((s, mm)) = step {
                    let mut coeff = c.scale(&crate::scalar::q(e as i64));
                    if s ^ sign_neg {
                        coeff = -coeff;
                    }
                    out.add_term(mm, &coeff);
                }
                if v.odd && e % 2 == 1 {
                    prefix_parity ^= 1;
                }
            }
        }
        out
    }

    pub fn derive_n(&self, flavor: Flavor, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = out.derive(flavor);
        }
        out
    }

    /// The even derivation ∂ (D² in the SUSY flavor).
    pub fn partial(&self, flavor: Flavor) -> Self {
        self.derive_n(flavor, flavor.steps_per_partial())
    }

    pub fn partial_n(&self, flavor: Flavor, n: u32) -> Self {
        self.derive_n(flavor, n * flavor.steps_per_partial())
    }

    /// Left partial derivative ∂/∂v: commute v to the front, then remove it.
    pub fn left_partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut odd_before = 0usize;
            for (k, &(w, e)) in m.0.iter().enumerate() {
                if w == v {
                    let mut rest = m.0.clone();
                    if e > 1 {
                        rest[k].1 = e - 1;
                    } else {
                        rest.remove(k);
                    }
                    let mut coeff = c.scale(&crate::scalar::q(e as i64));
                    if v.odd && odd_before % 2 == 1 {
                        coeff = -coeff;
                    }
                    out.add_term(Mono(rest), &coeff);
                    break;
                }
                if w.odd {
                    odd_before += e as usize;
                }
            }
        }
        out
    }

    /// The differential-algebra homomorphism sending generator i to `img(i)`.
    /// Images must have the parity of the generator they replace.
    pub fn map_generators(&self, flavor: Flavor, img: &dyn Fn(u32) -> DiffPoly) -> Self {
        let mut cache: BTreeMap<Var, DiffPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let base = cache
                    .entry(v)
                    .or_insert_with(|| img(v.gen).derive_n(flavor, v.order))
                    .clone();
                for _ in 0..e {
                    acc = &acc * &base;
                }
            }
            out += &acc;
        }
        out
    }

    /// Applies `f` to every scalar coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some((neg, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, &if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $f(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl From<Scalar> for DiffPoly {
    fn from(c: Scalar) -> Self {
        DiffPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(parities: &[u8]) -> Alphabet {
        let names = (0..parities.len()).map(|i| format!("u{}", i)).collect();
        Alphabet::new(names, parities.to_vec(), Flavor::Plain)
    }

    #[test]
    fn odd_square_vanishes_and_anticommutes() {
        let a = plain(&[1, 1]);
        let t1 = a.gen(0);
        let t2 = a.gen(1);
        assert!((&t1 * &t1).is_zero());
        assert_eq!(&t1 * &t2, -(&t2 * &t1));
    }

    #[test]
    fn distributive_expansion() {
        let a = plain(&[0]);
        let u = a.gen(0);
        let du = u.partial(Flavor::Plain);
        let lhs = &(&u + &du) * &u;
        let rhs = &(&u * &u) + &(&du * &u);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn d_on_susy_product() {
        // D(u^{[0]} u^{[1]}) = u^{[1]}u^{[1]} + (-1)^{p(u)} u^{[0]} u^{[2]}
        for p in 0..2u8 {
            let a = Alphabet::new(vec!["u".into()], vec![p], Flavor::Susy);
            let u0 = DiffPoly::var(a.var(0, 0));
            let u1 = DiffPoly::var(a.var(0, 1));
            let u2 = DiffPoly::var(a.var(0, 2));
            let lhs = (&u0 * &u1).derive(Flavor::Susy);
            let sign = if p == 1 { -1 } else { 1 };
            let rhs = &(&u1 * &u1) + &(&u0 * &u2).scale(&Scalar::from_int(sign));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn left_partial_signs() {
        let a = plain(&[1]);
        let t0 = DiffPoly::var(a.var(0, 0));
        let t1 = DiffPoly::var(a.var(0, 1));
        let p = &t0 * &t1;
        assert_eq!(p.left_partial(a.var(0, 0)), t1);
        assert_eq!(p.left_partial(a.var(0, 1)), -&t0);
        assert!(DiffPoly::one().left_partial(a.var(0, 0)).is_zero());
    }

    #[test]
    fn derivation_of_unit_and_var() {
        let a = plain(&[0]);
        assert!(DiffPoly::one().derive(Flavor::Plain).is_zero());
        assert_eq!(
            DiffPoly::var(a.var(0, 3)).derive(Flavor::Plain),
            DiffPoly::var(a.var(0, 4))
        );
    }
}
