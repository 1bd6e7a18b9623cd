//! ASCII and LaTeX rendering plus a parser for the same ASCII grammar.
//!
//! ```text
//! (3/2)*k*L*f + k*d(f)                 λ-series, `L` = λ
//! -(1/2)*k^5*L^2*X - k^2*d(Fbar)       `X` = χ, `M` = μ, `G` = γ
//! d^2(u_1)*u_2   D(d(t))               ∂²u₁·u₂, D∂t
//! ```
//! Outer indeterminates are written to the left of the coefficient.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor, Mono, Var};
use crate::error::{Error, Result};
use crate::scalar::{parse_q, Scalar};
use crate::series::{LMono, Series};
use num_traits::Signed;

pub fn var_text(v: &Var, a: &Alphabet) -> String {
    let name = a.names.get(v.gen as usize).cloned().unwrap_or_else(|| format!("u{}", v.gen));
    let (q, r) = match a.flavor {
        Flavor::Plain => (v.order, 0),
        Flavor::Susy => (v.order / 2, v.order % 2),
    };
    let base = match q {
        0 => name,
        1 => format!("d({})", name),
        n => format!("d^{}({})", n, name),
    };
    if r == 1 {
        format!("D({})", base)
    } else {
        base
    }
}

pub fn mono_text(m: &Mono, a: &Alphabet) -> String {
    m.0.iter()
        .map(|(v, e)| {
            if *e == 1 {
                var_text(v, a)
            } else {
                format!("{}^{}", var_text(v, a), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn outer_text(k: &LMono) -> Vec<String> {
    let mut out = Vec::new();
    let pw = |s: &str, e: i32| if e == 1 { s.to_string() } else { format!("{}^{}", s, e) };
    if k.mu != 0 {
        out.push(pw("M", k.mu));
    }
    if k.gam == 1 {
        out.push("G".into());
    }
    if k.lam != 0 {
        out.push(pw("L", k.lam));
    }
    if k.chi == 1 {
        out.push("X".into());
    }
    out
}

/// Joins signed terms `(negative, body)` into `a - b + c`.
fn join_terms(items: Vec<(bool, String)>) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in items.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn term_body(c: &Scalar, factors: Vec<String>, a: &Alphabet) -> (bool, String) {
    if c.is_compound() {
        let mut parts = vec![format!("({})", c.fmt_with(&a.params))];
        parts.extend(factors);
        return (false, parts.join("*"));
    }
    let neg = c.is_negative_leading();
    let abs = if neg { -c } else { c.clone() };
    let mut parts = Vec::new();
    if !abs.is_one() || factors.is_empty() {
        parts.push(abs.fmt_with(&a.params));
    }
    parts.extend(factors);
    (neg, parts.join("*"))
}

fn poly_items(p: &DiffPoly, outer: &[String], a: &Alphabet) -> Vec<(bool, String)> {
    p.terms()
        .map(|(m, c)| {
            let mut f = outer.to_vec();
            if !m.is_one() {
                f.push(mono_text(m, a));
            }
            term_body(c, f, a)
        })
        .collect()
}

pub fn poly_text(p: &DiffPoly, a: &Alphabet) -> String {
    join_terms(poly_items(p, &[], a))
}

fn sorted_keys(s: &Series) -> Vec<(LMono, DiffPoly)> {
    let mut keys: Vec<_> = s.terms().map(|(k, c)| (*k, c.clone())).collect();
    keys.sort_by(|(a, _), (b, _)| {
        (b.mu_weight(), b.lam_weight()).cmp(&(a.mu_weight(), a.lam_weight()))
    });
    keys
}

pub fn series_text(s: &Series, a: &Alphabet) -> String {
    let mut items = Vec::new();
    for (k, c) in sorted_keys(s) {
        items.extend(poly_items(&c, &outer_text(&k), a));
    }
    let mut out = join_terms(items);
    if let Some(f) = s.lam_floor() {
        out.push_str(&format!(" + O(L^{})", f.div_euclid(2)));
    }
    if let Some(f) = s.mu_floor() {
        out.push_str(&format!(" + O(M^{})", f.div_euclid(2)));
    }
    out
}

fn latex_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix("bar") {
        format!("\\bar{{{}}}", base)
    } else if let Some((b, i)) = name.split_once('_') {
        format!("{}_{{{}}}", b, i)
    } else {
        name.to_string()
    }
}

fn var_latex(v: &Var, a: &Alphabet) -> String {
    let name = latex_name(a.names.get(v.gen as usize).map(String::as_str).unwrap_or("u"));
    let (q, r) = match a.flavor {
        Flavor::Plain => (v.order, 0),
        Flavor::Susy => (v.order / 2, v.order % 2),
    };
    let mut s = String::new();
    if r == 1 {
        s.push('D');
    }
    match q {
        0 => {}
        1 => s.push_str("\\partial "),
        n => s.push_str(&format!("\\partial^{{{}}} ", n)),
    }
    if r == 1 && q == 0 {
        s.push(' ');
    }
    s.push_str(&name);
    s
}

fn outer_latex(k: &LMono) -> String {
    let mut out = String::new();
    let pw = |s: &str, e: i32| if e == 1 { s.to_string() } else { format!("{}^{{{}}}", s, e) };
    if k.mu != 0 {
        out.push_str(&pw("\\mu", k.mu));
    }
    if k.gam == 1 {
        out.push_str("\\gamma ");
    }
    if k.lam != 0 {
        out.push_str(&pw("\\lambda", k.lam));
    }
    if k.chi == 1 {
        out.push_str("\\chi ");
    }
    out
}

pub fn series_latex(s: &Series, a: &Alphabet) -> String {
    let mut items = Vec::new();
    for (k, c) in sorted_keys(s) {
        for (m, sc) in c.terms() {
            let mut vars = String::new();
            for (v, e) in &m.0 {
                vars.push_str(&var_latex(v, a));
                if *e > 1 {
                    vars.push_str(&format!("^{{{}}}", e));
                }
            }
            let body = format!("{}{}", outer_latex(&k), vars);
            if sc.is_compound() {
                items.push((false, format!("({}){}", sc.latex_with(&a.params), body)));
            } else {
                let neg = sc.is_negative_leading();
                let abs = if neg { -sc } else { sc.clone() };
                let coeff = if abs.is_one() && !body.is_empty() {
                    String::new()
                } else {
                    abs.latex_with(&a.params)
                };
                items.push((neg, format!("{}{}", coeff, body).trim().to_string()));
            }
        }
    }
    join_terms(items)
}

// ------------------------------------------------------------------ parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
                i += s.len();
                out.push((Tok::Num(s), li + 1, col));
            } else if c.is_alphabetic() || c == '_' {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_')
                    .collect();
                i += s.chars().count();
                out.push((Tok::Ident(s), li + 1, col));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Sym(c), li + 1, col));
                i += 1;
            } else {
                return Err(Error::Parse { line: li + 1, col, msg: format!("unexpected character '{}'", c) });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    a: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.1, t.2))
            .or_else(|| self.toks.last().map(|t| (t.1, t.2 + 1)))
            .unwrap_or((1, 1));
        Error::Parse { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c)))
        }
    }

    fn expr(&mut self) -> Result<Series> {
        let mut acc = Series::zero();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            if let Some(Tok::Ident(s)) = self.peek() {
                if s == "O" {
                    self.pos += 1;
                    self.expect('(')?;
                    let (outer, e) = self.outer_pow()?;
                    self.expect(')')?;
                    acc = if outer == 'L' {
                        acc.with_lam_floor(Some(2 * e))
                    } else {
                        acc.with_mu_floor(Some(2 * e))
                    };
                    if !self.next_sign(&mut neg) {
                        return Ok(acc);
                    }
                    continue;
                }
            }
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if !self.next_sign(&mut neg) {
                return Ok(acc);
            }
        }
    }

    fn next_sign(&mut self, neg: &mut bool) -> bool {
        if self.eat('+') {
            *neg = false;
            true
        } else if self.eat('-') {
            *neg = true;
            true
        } else {
            false
        }
    }

    fn outer_pow(&mut self) -> Result<(char, i32)> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "L" || s == "M" => {
                self.pos += 1;
                let e = if self.eat('^') { self.int()? } else { 1 };
                Ok((s.chars().next().unwrap(), e))
            }
            _ => Err(self.err("expected L or M inside O(...)")),
        }
    }

    fn int(&mut self) -> Result<i32> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let v = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse::<i32>().map_err(|_| self.err("integer out of range"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = acc.mul(&f);
            } else if self.eat('/') {
                let f = self.power()?;
                let c = f
                    .as_scalar_monomial()
                    .filter(|(_, d)| *d == 0)
                    .and_then(|(c, _)| c.try_inverse())
                    .ok_or_else(|| self.err("can only divide by a nonzero scalar monomial"))?;
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Series> {
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.int()?;
        if e >= 0 {
            let mut acc = Series::constant(Scalar::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        // negative exponents only for L, M and parameters
        match &self.toks[start].0 {
            Tok::Ident(s) if s == "L" => Ok(Series::scalar_term(Scalar::one(), e, 0)),
            Tok::Ident(s) if s == "M" => Ok(Series::term(LMono::new(e, 0, 0, 0), DiffPoly::one())),
            Tok::Ident(s) if self.a.params.contains(s) => {
                let i = self.a.params.iter().position(|p| p == s).unwrap();
                Ok(Series::constant(Scalar::param_pow(i, e)))
            }
            _ => Err(self.err("negative exponent only allowed on L, M or a parameter")),
        }
    }

    fn atom(&mut self) -> Result<Series> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let q = parse_q(&n).ok_or_else(|| self.err("bad number"))?;
                Ok(Series::constant(Scalar::from_q(q)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                self.ident(&s)
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }

    fn ident(&mut self, s: &str) -> Result<Series> {
        match s {
            "L" => return Ok(Series::scalar_term(Scalar::one(), 1, 0)),
            "X" => return Ok(Series::scalar_term(Scalar::one(), 0, 1)),
            "M" => return Ok(Series::term(LMono::new(1, 0, 0, 0), DiffPoly::one())),
            "G" => return Ok(Series::term(LMono::new(0, 1, 0, 0), DiffPoly::one())),
            "d" | "D" => {
                let (kind, n) = if self.eat('^') { (s, self.int()?) } else { (s, 1) };
                if n < 0 {
                    return Err(self.err("derivative order must be nonnegative"));
                }
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                let p = as_poly(&inner).ok_or_else(|| self.err("derivative of a λ-dependent expression"))?;
                let out = if kind == "d" {
                    p.partial_n(self.a.flavor, n as u32)
                } else {
                    if self.a.flavor != Flavor::Susy {
                        return Err(self.err("D is only available in SUSY mode"));
                    }
                    p.derive_n(Flavor::Susy, n as u32)
                };
                return Ok(Series::from_poly(out));
            }
            _ => {}
        }
        if let Some(i) = self.a.params.iter().position(|p| p == s) {
            return Ok(Series::constant(Scalar::param(i)));
        }
        if let Some(i) = self.a.index_of(s) {
            return Ok(Series::from_poly(self.a.gen(i)));
        }
        self.pos -= 1;
        Err(self.err(format!("unknown symbol '{}'", s)))
    }
}

fn as_poly(s: &Series) -> Option<DiffPoly> {
    if !s.is_exact() {
        return None;
    }
    let mut out = DiffPoly::zero();
    for (k, c) in s.terms() {
        if *k != LMono::default() {
            return None;
        }
        out += c;
    }
    Some(out)
}

pub fn parse_series(src: &str, a: &Alphabet) -> Result<Series> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, a };
    if p.toks.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "empty expression".into() });
    }
    let s = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(s)
}

pub fn parse_poly(src: &str, a: &Alphabet) -> Result<DiffPoly> {
    let s = parse_series(src, a)?;
    as_poly(&s).ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "expected a differential polynomial without L, X, M, G".into() })
}

/// Whether the leading coefficient of a scalar is negative (used by report rendering).
pub fn scalar_negative(c: &Scalar) -> bool {
    c.as_rational().map(|q| q.is_negative()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp_susy() -> Alphabet {
        Alphabet::new(vec!["Fbar".into(), "f".into()], vec![1, 0], Flavor::Susy)
    }

    #[test]
    fn round_trip() {
        let a = osp_susy();
        for src in [
            "-(1/2)*k^5*L^2*X - (3/2)*k^2*L*Fbar - (1/2)*k^2*X*D(Fbar) - k^2*d(Fbar)",
            "(3/2)*k*L*f + k*d(f)",
            "D(d^2(Fbar))*f^2 - k^-1*L^-1",
            "(k + 1)*L*X",
        ] {
            let s = parse_series(src, &a).unwrap();
            assert_eq!(series_text(&s, &a), src);
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        let a = osp_susy();
        match parse_series("k*L + q", &a) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 7)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn latex_form() {
        let a = osp_susy();
        let s = parse_series("-(1/2)*k^2*X*D(Fbar)", &a).unwrap();
        assert_eq!(series_latex(&s, &a), "-\\frac{1}{2}k^{2}\\chi D \\bar{F}");
    }
}
