//! Dirac reduction of λ- and Λ-brackets by a set of constraints θ_I, in the plain
//! form and in the modified form where the constraint matrix is first pushed to a
//! quotient, together with the finite-dimensional version and the derived checks.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor};
use crate::error::{Error, Result};
use crate::matrix::OpMatrix;
use crate::pvsa::{par, sign, FinitePoisson, Pvsa};
use crate::report::{CheckRecord, Report, Status};
use crate::sample;
use crate::scalar::Scalar;
use crate::series::{LMono, Series};

/// A differential algebra homomorphism π from the ambient algebra onto a free
/// algebra, given by the images of the generators, with a section on generators.
#[derive(Clone, Debug)]
pub struct Projection {
    pub target: Alphabet,
    /// images[i] = π(u_i)
    pub images: Vec<DiffPoly>,
    /// lift[g] = ambient polynomial representing the quotient generator g
    pub lift: Vec<DiffPoly>,
}

impl Projection {
    pub fn identity(a: &Alphabet) -> Projection {
        let gens: Vec<DiffPoly> = (0..a.len()).map(|i| a.gen(i)).collect();
        Projection { target: a.clone(), images: gens.clone(), lift: gens }
    }

    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        p.map_generators(self.target.flavor, &|g| self.images[g as usize].clone())
    }

    pub fn apply_series(&self, s: &Series) -> Series {
        s.map_coeffs(&|c| self.apply(c))
    }

    pub fn lift(&self, p: &DiffPoly) -> DiffPoly {
        p.map_generators(self.target.flavor, &|g| self.lift[g as usize].clone())
    }
}

/// Homogeneous constraints θ_I.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    pub theta: Vec<DiffPoly>,
    pub parities: Vec<u8>,
}

impl ConstraintSet {
    pub fn new(theta: Vec<DiffPoly>) -> Result<ConstraintSet> {
        let parities = theta
            .iter()
            .map(|t| t.parity().ok_or_else(|| Error::Shape("constraint is not homogeneous".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstraintSet { theta, parities })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

/// C_ij = π{θ_j _λ θ'_i}: rows follow θ', columns follow θ.
pub fn constraint_matrix(p: &Pvsa, theta: &ConstraintSet, theta_p: &ConstraintSet, proj: &Projection) -> OpMatrix {
    let wf = p.work_floor();
    let entries = theta_p
        .theta
        .iter()
        .map(|tp| theta.theta.iter().map(|t| proj.apply_series(&p.bracket_at(t, tp, wf))).collect())
        .collect();
    OpMatrix::new(entries, theta_p.parities.clone(), theta.parities.clone(), p.flavor(), wf)
}

/// The reduced bracket
/// π{a_λ b}^D = π{a_λ b} − Σ_{i,j} s_ij π{θ_i _{λ+∂} b}_→ C⁻¹_ij(λ+∂) π{a_λ θ'_j},
/// s_ij = (−1)^{(ã+θ̃_i)(b̃+θ̃'_j) + θ̃_i + θ̃'_j}, without the last two exponents in the SUSY case.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub pvsa: Pvsa,
    pub theta: ConstraintSet,
    pub theta_p: ConstraintSet,
    pub proj: Projection,
    pub c: OpMatrix,
    pub c_inv: OpMatrix,
}

impl Reduction {
    /// Ordinary Dirac reduction: θ' = θ and no quotient.
    pub fn dirac(p: &Pvsa, theta: ConstraintSet) -> Result<Reduction> {
        let proj = Projection::identity(&p.alphabet);
        Self::modified(p, theta.clone(), theta, proj)
    }

    pub fn modified(p: &Pvsa, theta: ConstraintSet, theta_p: ConstraintSet, proj: Projection) -> Result<Reduction> {
        if theta.len() != theta_p.len() {
            return Err(Error::Shape("θ and θ' differ in size".into()));
        }
        let c = constraint_matrix(p, &theta, &theta_p, &proj);
        let c_inv = c.invert()?;
        Ok(Reduction { pvsa: p.clone(), theta, theta_p, proj, c, c_inv })
    }

    pub fn flavor(&self) -> Flavor {
        self.pvsa.flavor()
    }

    /// Reduced bracket of ambient elements, valued in the quotient.
    pub fn bracket(&self, a: &DiffPoly, b: &DiffPoly) -> Result<Series> {
        let s = self.bracket_at(a, b);
        if s.is_exact() {
            return Ok(s);
        }
        s.clip_to(Some(self.pvsa.floor), s.mu_floor())
    }

    /// Reduced bracket of quotient elements, lifted through the section.
    pub fn bracket_quotient(&self, a: &DiffPoly, b: &DiffPoly) -> Result<Series> {
        self.bracket(&self.proj.lift(a), &self.proj.lift(b))
    }

    fn bracket_at(&self, a: &DiffPoly, b: &DiffPoly) -> Series {
        let p = &self.pvsa;
        let fl = p.flavor();
        let wf = p.work_floor();
        let pi = |s: Series| self.proj.apply_series(&s);
        let mut out = pi(p.bracket_at(a, b, wf));
        for ap in a.parity_parts() {
            if ap.is_zero() {
                continue;
            }
            let at = par(&ap) as u32;
            let right: Vec<Series> = self.theta_p.theta.iter().map(|t| pi(p.bracket_at(&ap, t, wf))).collect();
            for bp in b.parity_parts() {
                if bp.is_zero() {
                    continue;
                }
                let bt = par(&bp) as u32;
                for (i, ti) in self.theta.theta.iter().enumerate() {
                    let left = pi(p.bracket_at(ti, &bp, wf));
                    if left.is_known_zero() {
                        continue;
                    }
                    let pi_ = self.theta.parities[i] as u32;
                    for (j, rj) in right.iter().enumerate() {
                        let cij = &self.c_inv.entries[i][j];
                        if rj.is_known_zero() || cij.is_known_zero() {
                            continue;
                        }
                        let pj = self.theta_p.parities[j] as u32;
                        let mut e = (at + pi_) * (bt + pj);
                        if fl == Flavor::Plain {
                            e += pi_ + pj;
                        }
                        let inner = Series::apply_op(cij, rj, fl, wf);
                        let t = Series::apply_op(&left, &inner, fl, wf);
                        out = out.sub(&t.scale(&sign(e)));
                    }
                }
            }
        }
        out
    }

    /// {a_λ θ_i}^D and {θ_i _λ a}^D vanish for every constraint (plain reductions).
    pub fn centrality(&self, a: &DiffPoly) -> Result<bool> {
        for t in &self.theta.theta {
            if !self.bracket(a, t)?.is_zero() || !self.bracket(t, a)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Centrality for `count` seeded random elements per constraint.
    pub fn centrality_report(&self, seed: u64, count: usize) -> Report {
        let mut rep = Report::default();
        let mut r = sample::rng(seed);
        let a = &self.pvsa.alphabet;
        for (i, t) in self.theta.theta.iter().enumerate() {
            let mut bad = Vec::new();
            for n in 0..count {
                let x = sample::random_homogeneous(a, &mut r, 2, 2);
                let ok = self.bracket(&x, t).map(|s| s.is_zero()).unwrap_or(false)
                    && self.bracket(t, &x).map(|s| s.is_zero()).unwrap_or(false);
                if !ok {
                    bad.push(format!("#{} a={}", n, self.pvsa.poly_text(&x)));
                }
            }
            let mut rec = CheckRecord::from_bool(
                "centrality",
                format!("θ_{} = {}: {} samples, {} failing", i, self.pvsa.poly_text(t), count, bad.len()),
                bad.is_empty(),
            );
            if !bad.is_empty() {
                rec = rec.with_residual(bad.join("; "));
            }
            rep.push(rec);
        }
        rep
    }

    /// Reduced brackets of all generator pairs, as a table over the ambient alphabet.
    pub fn generator_table(&self) -> Result<Vec<Vec<Series>>> {
        let n = self.pvsa.alphabet.len();
        let mut t = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(self.bracket(&self.pvsa.gen(i), &self.pvsa.gen(j))?);
            }
            t.push(row);
        }
        Ok(t)
    }

    pub fn text(&self, s: &Series) -> String {
        crate::text::series_text(s, &self.proj.target)
    }
}

/// Reduced bracket on 𝒫 = algebra generated by the constraints; must vanish identically.
pub fn triviality_report(p: &Pvsa, seed: u64, random: usize) -> Report {
    let mut rep = Report::default();
    let theta = match ConstraintSet::new((0..p.alphabet.len()).map(|i| p.gen(i)).collect()).and_then(|t| Reduction::dirac(p, t)) {
        Ok(r) => r,
        Err(e) => {
            rep.push(CheckRecord::new("triviality", "constraint matrix", Status::Fail).with_residual(e.to_string()));
            return rep;
        }
    };
    let mut pairs = Vec::new();
    for i in 0..p.alphabet.len() {
        for j in 0..p.alphabet.len() {
            pairs.push((p.gen(i), p.gen(j)));
        }
    }
    let mut r = sample::rng(seed);
    for _ in 0..random {
        pairs.push((
            sample::random_homogeneous(&p.alphabet, &mut r, 2, 2),
            sample::random_homogeneous(&p.alphabet, &mut r, 2, 2),
        ));
    }
    let mut bad = Vec::new();
    for (a, b) in &pairs {
        match theta.bracket(a, b) {
            Ok(s) if s.is_zero() => {}
            Ok(s) => bad.push(format!("{{{} , {}}} = {}", p.poly_text(a), p.poly_text(b), p.text(&s))),
            Err(e) => bad.push(e.to_string()),
        }
    }
    let mut rec = CheckRecord::from_bool("triviality", format!("{} pairs, {} nonzero", pairs.len(), bad.len()), bad.is_empty());
    if !bad.is_empty() {
        rec = rec.with_residual(bad.join("; "));
    }
    rep.push(rec);
    rep
}

/// Constraints of the form u_g − c, as (generator, constant).
fn shifts(p: &Pvsa, theta: &ConstraintSet) -> Result<Vec<(usize, Scalar)>> {
    let mut out = Vec::new();
    for t in &theta.theta {
        let c = t.constant_term();
        let rest = t.clone() - &DiffPoly::constant(c.clone());
        let g = (0..p.alphabet.len()).find(|&g| rest == p.gen(g));
        match g {
            Some(g) => out.push((g, c)),
            None => {
                return Err(Error::Unsupported(format!(
                    "quotient by {} (only generator − constant constraints are supported)",
                    p.poly_text(t)
                )))
            }
        }
    }
    Ok(out)
}

/// The reduced structure on 𝒫/⟨θ_I⟩ for generator shifts θ = u_g − c: the free algebra
/// on the remaining generators with the reduced brackets, constrained generators
/// replaced by their constants.
pub fn quotient_descend(red: &Reduction) -> Result<Pvsa> {
    let p = &red.pvsa;
    let sh = shifts(p, &red.theta)?;
    let keep: Vec<usize> = (0..p.alphabet.len()).filter(|g| !sh.iter().any(|(h, _)| h == g)).collect();
    let target = Alphabet {
        names: keep.iter().map(|&g| p.alphabet.names[g].clone()).collect(),
        parities: keep.iter().map(|&g| p.alphabet.parities[g]).collect(),
        flavor: p.flavor(),
        params: p.alphabet.params.clone(),
    };
    let mut images = Vec::new();
    for g in 0..p.alphabet.len() {
        images.push(match sh.iter().find(|(h, _)| *h == g) {
            Some((_, c)) => DiffPoly::constant(c.clone()),
            None => target.gen(keep.iter().position(|&k| k == g).unwrap()),
        });
    }
    let proj = Projection { target: target.clone(), images, lift: keep.iter().map(|&g| p.gen(g)).collect() };
    let mut table = Vec::new();
    for &i in &keep {
        let mut row = Vec::new();
        for &j in &keep {
            row.push(proj.apply_series(&red.bracket(&p.gen(i), &p.gen(j))?));
        }
        table.push(row);
    }
    Ok(Pvsa::new(target, table).with_floor(p.floor))
}

/// {a,b}^D = {a,b} − Σ (−1)^{ij+j} {a,θ_i} (C⁻¹)_ij {θ_j,b}, C_ij = {θ_i,θ_j}.
#[derive(Clone, Debug)]
pub struct FiniteReduction {
    pub poisson: FinitePoisson,
    pub theta: ConstraintSet,
    pub c: OpMatrix,
    pub c_inv: OpMatrix,
}

impl FiniteReduction {
    pub fn new(p: &FinitePoisson, theta: ConstraintSet) -> Result<FiniteReduction> {
        let entries = theta
            .theta
            .iter()
            .map(|a| theta.theta.iter().map(|b| Series::from_poly(p.bracket(a, b))).collect())
            .collect();
        let c = OpMatrix::new(entries, theta.parities.clone(), theta.parities.clone(), Flavor::Plain, 0);
        let c_inv = if theta.is_empty() { c.clone() } else { c.invert()? };
        if c_inv.entries.iter().flatten().any(|e| e.terms().any(|(k, _)| *k != LMono::default())) {
            return Err(Error::NotInClass("inverse of a finite constraint matrix involves λ".into()));
        }
        Ok(FiniteReduction { poisson: p.clone(), theta, c, c_inv })
    }

    pub fn bracket(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        let p = &self.poisson;
        let mut out = p.bracket(a, b);
        for (i, ti) in self.theta.theta.iter().enumerate() {
            let ai = p.bracket(a, ti);
            if ai.is_zero() {
                continue;
            }
            for (j, tj) in self.theta.theta.iter().enumerate() {
                let cij = self.c_inv.entries[i][j].coeff(&LMono::default());
                if cij.is_zero() {
                    continue;
                }
                let (pi, pj) = (self.theta.parities[i] as u32, self.theta.parities[j] as u32);
                let t = &(&ai * &cij) * &p.bracket(tj, b);
                out -= &t.scale(&sign(pi * pj + pj));
            }
        }
        out
    }
}

/// Both sides of
/// {a_λ C⁻¹_ij(μ)} = −Σ_{r,t} (−1)^{ã(i+r)+(i+t)(j+r)+r+t} C⁻¹_ir(λ+μ+∂){a_λ C_rt;n}(μ+∂)^n C⁻¹_tj(μ)
/// for a plain Dirac reduction with polynomial C and C⁻¹.
pub fn inverse_bracket_identity(red: &Reduction, a: &DiffPoly) -> Result<Vec<((usize, usize), Series, Series)>> {
    let p = &red.pvsa;
    if p.flavor() != Flavor::Plain {
        return Err(Error::Unsupported("inverse-operator identity is evaluated in the plain flavor".into()));
    }
    let local = |m: &OpMatrix| {
        m.entries.iter().flatten().all(|s| s.is_exact() && s.min_lam_weight().map(|w| w >= 0).unwrap_or(true))
    };
    if !local(&red.c) || !local(&red.c_inv) || !p.is_local() {
        return Err(Error::Unsupported("inverse-operator identity needs polynomial C, C⁻¹ and brackets".into()));
    }
    let fl = Flavor::Plain;
    let wf = p.work_floor();
    let at = par(a) as u32;
    let par_of = |i: usize| red.theta.parities[i] as u32;
    let n = red.c.rows();
    // {a_λ X(μ)} for X a λ-series: Σ_s μ^s {a_λ X_s}
    let bracket_into_mu = |x: &Series| {
        let mut out = Series::zero();
        for (k, c) in x.terms() {
            let mu = Series::term(LMono::new(k.lam, 0, 0, 0), DiffPoly::one());
            out.add_assign(&mu.mul(&p.bracket_at(a, c, wf)));
        }
        out
    };
    // F(λ+μ+∂) X = Σ_s f_s Σ_u C(s,u) μ^u (λ+∂)^{s−u} X
    let shifted_apply = |f: &Series, x: &Series| {
        let mut out = Series::zero();
        for (k, c) in f.terms() {
            let s = k.lam;
            for u in 0..=s {
                let mu = Series::term(LMono::new(u, 0, 0, 0), DiffPoly::constant(Scalar::from_q(crate::series::binom(s as i64, u as u32))));
                let t = mu.mul(&x.lam_plus_d_pow(s - u, fl, wf)).mul_poly_left(c);
                out.add_assign(&t);
            }
        }
        out
    };
    let mut results = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = bracket_into_mu(&red.c_inv.entries[i][j]);
            let mut rhs = Series::zero();
            for r in 0..n {
                for t in 0..n {
                    let crt = &red.c.entries[r][t];
                    let ctj = &red.c_inv.entries[t][j];
                    let cir = &red.c_inv.entries[i][r];
                    if crt.is_zero() || ctj.is_zero() || cir.is_zero() {
                        continue;
                    }
                    let mut inner = Series::zero();
                    for (k, c) in crt.terms() {
                        let tail = ctj.lam_plus_d_pow(k.lam, fl, wf).rename_to_mu();
                        inner.add_assign(&p.bracket_at(a, c, wf).mul(&tail));
                    }
                    let e = at * (par_of(i) + par_of(r)) + (par_of(i) + par_of(t)) * (par_of(j) + par_of(r)) + par_of(r) + par_of(t);
                    rhs = rhs.sub(&shifted_apply(cir, &inner).scale(&sign(e)));
                }
            }
            results.push(((i, j), lhs, rhs));
        }
    }
    Ok(results)
}

pub fn inverse_bracket_identity_check(red: &Reduction, a: &DiffPoly) -> Report {
    let mut rep = Report::default();
    match inverse_bracket_identity(red, a) {
        Ok(v) => {
            for ((i, j), l, r) in v {
                let d = l.sub(&r);
                let mut rec = CheckRecord::from_bool("inverse-operator", format!("a = {}, entry ({},{})", red.pvsa.poly_text(a), i, j), d.is_zero());
                if !d.is_zero() {
                    rec = rec.with_residual(red.pvsa.text(&d));
                }
                rep.push(rec);
            }
        }
        Err(e) => rep.push(CheckRecord::new("inverse-operator", red.pvsa.poly_text(a), Status::Inconclusive).with_residual(e.to_string())),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieSuperalgebra;

    #[test]
    fn single_even_constraint_is_trivial() {
        let a = Alphabet::new(vec!["u".into()], vec![0], Flavor::Plain);
        let k = Scalar::param(0);
        let mut a2 = a.clone();
        a2.params = vec!["k".into()];
        let p = Pvsa::new(a2, vec![vec![Series::scalar_term(k.clone(), 1, 0)]]);
        let red = Reduction::dirac(&p, ConstraintSet::new(vec![p.gen(0)]).unwrap()).unwrap();
        assert_eq!(red.c_inv.entries[0][0], Series::scalar_term(k.try_inverse().unwrap(), -1, 0));
        assert!(red.bracket(&p.gen(0), &p.gen(0)).unwrap().is_zero());
    }

    #[test]
    fn finite_toy() {
        // ℂ[p,q,x], {q,p} = 1
        let a = Alphabet::new(vec!["p".into(), "q".into(), "x".into()], vec![0, 0, 0], Flavor::Plain);
        let one = DiffPoly::one();
        let z = DiffPoly::zero();
        let table = vec![
            vec![z.clone(), -&one, z.clone()],
            vec![one.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
        ];
        let fp = FinitePoisson::new(a.clone(), table);
        let (pp, qq, xx) = (a.gen(0), a.gen(1), a.gen(2));
        let red = FiniteReduction::new(&fp, ConstraintSet::new(vec![qq.clone(), pp.clone()]).unwrap()).unwrap();
        assert!(red.bracket(&qq, &pp).is_zero());
        assert_eq!(red.bracket(&xx, &(&pp * &qq)), fp.bracket(&xx, &(&pp * &qq)));
    }

    #[test]
    fn sl2_cartan_constraint_is_central() {
        let g = LieSuperalgebra::sl2();
        let p = Pvsa::affine(&g);
        let h = p.gen(g.index_of("H").unwrap());
        let red = Reduction::dirac(&p, ConstraintSet::new(vec![h]).unwrap()).unwrap();
        assert!(red.centrality_report(3, 4).all_pass());
    }
}
