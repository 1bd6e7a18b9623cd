//! Classical W-superalgebras as modified Dirac reductions of affine brackets: the
//! constraint data, the projected constraint matrix, the closed-form chain sums,
//! the W-bracket formula over formal generators, and the consistency checks.

use crate::diffpoly::{Alphabet, DiffPoly, Flavor};
use crate::dirac::{constraint_matrix, ConstraintSet, Projection, Reduction};
use crate::error::{Error, Result};
use crate::lie::{DualBases, Elem, LieSuperalgebra, Sharp};
use crate::matrix::OpMatrix;
use crate::pvsa::{linear, sign, Pvsa};
use crate::report::{CheckRecord, Report};
use crate::scalar::{q, q_frac, Scalar, Q};
use crate::series::{LMono, Series};
use crate::susy::affine_susy;
use crate::text::series_text;

/// Everything needed to reduce the affine bracket of 𝔤 along a distinguished
/// sl₂ (plain) or osp(1|2) (SUSY) triple.
#[derive(Clone, Debug)]
pub struct WSetup {
    pub g: LieSuperalgebra,
    pub susy: bool,
    pub affine: Pvsa,
    pub bases: DualBases,
    pub sharp: Sharp,
    /// Free generators of the quotient, one per q_i (resp. r̄_i).
    pub quotient: Alphabet,
    pub proj: Projection,
    /// I = {(i,m) : 0 ≤ m < 2α_i} (resp. 4β_i).
    pub index: Vec<(usize, usize)>,
    pub theta: ConstraintSet,
    pub theta_p: ConstraintSet,
    /// F (plain) or f (SUSY): the element paired against in π.
    nil: Elem,
}

fn flavor_of(susy: bool) -> Flavor {
    if susy {
        Flavor::Susy
    } else {
        Flavor::Plain
    }
}

impl WSetup {
    pub fn new(g: &LieSuperalgebra, susy: bool) -> Result<WSetup> {
        let bases = DualBases::build(g, susy)?;
        let sharp = Sharp::new(g, susy)?;
        let t = g.triple()?;
        let nil = if susy {
            t.odd.clone().ok_or_else(|| Error::InvalidAlgebra("SUSY mode needs an osp(1|2) triple".into()))?.1
        } else {
            t.big_f.clone()
        };
        let affine = if susy { affine_susy(g) } else { Pvsa::affine(g) };
        let quotient = Alphabet {
            names: bases.labels.iter().map(|l| if susy { format!("{}bar", l) } else { l.clone() }).collect(),
            parities: bases.parity.iter().map(|p| if susy { 1 - p } else { *p }).collect(),
            flavor: flavor_of(susy),
            params: g.params.clone(),
        };
        let mut w = WSetup {
            g: g.clone(),
            susy,
            affine,
            bases,
            sharp,
            quotient: quotient.clone(),
            proj: Projection { target: quotient, images: vec![], lift: vec![] },
            index: vec![],
            theta: ConstraintSet { theta: vec![], parities: vec![] },
            theta_p: ConstraintSet { theta: vec![], parities: vec![] },
            nil,
        };
        w.proj.images = (0..g.dim()).map(|b| w.pi_elem(&g.basis(b))).collect();
        w.proj.lift = w.bases.lower.iter().map(|x| w.lin(x)).collect();
        w.index = w.bases.index_set();
        let theta = w.index.iter().map(|&(i, m)| w.constraint(&w.bases.upper_m[i][m])).collect();
        let theta_p = w.index.iter().map(|&(j, s)| w.constraint(&w.row_elem(j, s))).collect();
        w.theta = ConstraintSet::new(theta)?;
        w.theta_p = ConstraintSet::new(theta_p)?;
        Ok(w)
    }

    pub fn flavor(&self) -> Flavor {
        flavor_of(self.susy)
    }

    /// Ambient generator polynomial of a Lie algebra element.
    pub fn lin(&self, x: &Elem) -> DiffPoly {
        linear(&self.affine.alphabet, x)
    }

    fn constraint(&self, x: &Elem) -> DiffPoly {
        let c = self.g.pair(&self.nil, x);
        self.lin(x) - &DiffPoly::constant(Scalar::from_q(c))
    }

    /// Element of 𝔤^F (resp. 𝔤^f) as a linear quotient polynomial: ω(x) ↔ Σ (q^i|x) q_i.
    pub fn omega(&self, x: &Elem) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for i in 0..self.bases.len() {
            let c = self.g.pair(&self.bases.upper[i], x);
            out += &self.quotient.gen(i).scale(&Scalar::from_q(c));
        }
        out
    }

    /// π(x) = ω(x^♯) + (F|x).
    pub fn pi_elem(&self, x: &Elem) -> DiffPoly {
        let c = self.g.pair(&self.nil, x);
        self.omega(&self.sharp.project(x)) + &DiffPoly::constant(Scalar::from_q(c))
    }

    /// Second basis: q_j^{n+1} (plain) or r_j^{4β_j − s} (SUSY) for (j,s) ∈ I.
    pub fn row_elem(&self, j: usize, s: usize) -> Elem {
        if self.susy {
            self.bases.lower_m[j][self.bases.top(j) - s].clone()
        } else {
            self.bases.lower_m[j][s + 1].clone()
        }
    }

    fn pos(&self, j: usize, n: usize) -> usize {
        self.index.iter().position(|&x| x == (j, n)).expect("index in I")
    }

    /// Parity of the index j (that of q_j, resp. r_j).
    fn ip(&self, j: usize) -> u32 {
        self.bases.parity[j] as u32
    }

    /// n − α_j (plain) or n/2 − β_j (SUSY).
    fn level(&self, j: usize, n: usize) -> Q {
        if self.susy {
            q_frac(n as i64, 2) - &self.bases.height[j]
        } else {
            q(n as i64) - &self.bases.height[j]
        }
    }

    fn step(&self) -> Q {
        if self.susy {
            q_frac(1, 2)
        } else {
            q(1)
        }
    }

    /// π{x_Λ y} of two Lie algebra elements.
    pub fn pi_bracket(&self, x: &Elem, y: &Elem) -> Series {
        let p = &self.affine;
        self.proj.apply_series(&p.bracket_at(&self.lin(x), &self.lin(y), p.work_floor()))
    }

    pub fn projected_c(&self) -> OpMatrix {
        constraint_matrix(&self.affine, &self.theta, &self.theta_p, &self.proj)
    }

    /// The same matrix without the projection; for sl₂ this is not invertible.
    pub fn unprojected_c(&self) -> OpMatrix {
        constraint_matrix(&self.affine, &self.theta, &self.theta_p, &Projection::identity(&self.affine.alphabet))
    }

    pub fn reduction(&self) -> Result<Reduction> {
        Reduction::modified(&self.affine, self.theta.clone(), self.theta_p.clone(), self.proj.clone())
    }

    /// The reduction computed with θ' = θ; agrees with [`WSetup::reduction`].
    pub fn reduction_unchanged_basis(&self) -> Result<Reduction> {
        Reduction::modified(&self.affine, self.theta.clone(), self.theta.clone(), self.proj.clone())
    }

    /// Generators q_i (resp. r_i) lying in 𝔤(−t): returns t.
    fn depth(&self, i: usize) -> Q {
        self.bases.height[i].clone()
    }

    /// Strict chains c_0 ≺ … ≺ c_p in I with lower bound on c_0 and upper bound on c_p.
    pub fn chains(&self, t1: &Q, t2: &Q) -> Vec<Vec<(usize, usize)>> {
        let st = self.step();
        // −t₂ − step ≺ (j,n) ⟺ −t₂ ≤ level;  (j,n) ≺ t₁ ⟺ level + step ≤ t₁
        let mut sorted = self.index.clone();
        sorted.sort();
        let starts: Vec<_> = sorted.iter().filter(|&&(j, n)| -t2.clone() <= self.level(j, n)).cloned().collect();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<(usize, usize)>> = starts.into_iter().map(|c| vec![c]).collect();
        stack.reverse();
        while let Some(ch) = stack.pop() {
            let &(j, n) = ch.last().unwrap();
            let lv = self.level(j, n);
            if &lv + &st <= *t1 {
                out.push(ch.clone());
            }
            for &(i, m) in sorted.iter().rev() {
                if &lv + &st <= self.level(i, m) {
                    let mut c = ch.clone();
                    c.push((i, m));
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Modified Dirac bracket of two generators of the quotient via the matrix inverse.
    pub fn modified_dirac(&self, red: &Reduction, a: usize, b: usize) -> Result<Series> {
        red.bracket_quotient(&self.quotient.gen(a), &self.quotient.gen(b))
    }

    /// The closed-form chain sum for generators q_a, q_b (no matrix inversion).
    pub fn chain_sum(&self, a: usize, b: usize) -> Series {
        let fl = self.flavor();
        let wf = self.affine.work_floor();
        let (ea, eb) = (&self.bases.lower[a], &self.bases.lower[b]);
        let (at, bt) = (self.ip(a), self.ip(b));
        let mut out = self.pi_bracket(ea, eb);
        for ch in self.chains(&self.depth(a), &self.depth(b)) {
            let p = ch.len() - 1;
            let (j0, n0) = ch[0];
            let (jp, np) = ch[p];
            let mut x = self.pi_bracket(ea, &self.bases.lower_m[jp][np + 1]);
            let mut e = if self.susy {
                let (s0, sp) = (self.ip(j0) + n0 as u32, self.ip(jp) + np as u32);
                p as u32 + (at + 1) * (bt + 1) + at * sp + (bt + 1) * (s0 + 1)
            } else {
                p as u32 + at * bt + at * self.ip(jp) + self.ip(jp) + bt * self.ip(j0)
            };
            for t in (1..=p).rev() {
                let (jt, nt) = ch[t];
                let (js, ns) = ch[t - 1];
                let r = self.pi_bracket(&self.bases.upper_m[jt][nt], &self.bases.lower_m[js][ns + 1]);
                x = Series::apply_op(&r, &x, fl, wf);
                e += if self.susy {
                    (self.ip(js) + ns as u32) * (self.ip(jt) + nt as u32)
                } else {
                    self.ip(js) + self.ip(js) * self.ip(jt)
                };
            }
            let l = self.pi_bracket(&self.bases.upper_m[j0][n0], eb);
            x = Series::apply_op(&l, &x, fl, wf);
            out = out.sub(&x.scale(&sign(e)));
        }
        out
    }

    /// ω(x^♯) + c·k·λ (or c·k·χ); as the left argument of `apply_op` this acts as
    /// ω(x^♯) + c·k·(λ+∂) (resp. c·k·(χ+D)).
    fn factor(&self, x: &Elem, c: &Q) -> Series {
        let mut s = Series::from_poly(self.omega(&self.sharp.project(x)));
        let k = Scalar::param(0).scale(c);
        let key = if self.susy { LMono::lam_chi(0, 1) } else { LMono::lam(1) };
        s.add_term(key, &DiffPoly::constant(k));
        s
    }

    /// The W-bracket {ω(q_a)_λ ω(q_b)} over the formal generators ω(q_i) ↔ q_i.
    pub fn w_oracle(&self, a: usize, b: usize) -> Series {
        let fl = self.flavor();
        let wf = self.affine.work_floor();
        let g = &self.g;
        let (ea, eb) = (&self.bases.lower[a], &self.bases.lower[b]);
        let (at, bt) = (self.ip(a), self.ip(b));
        let mut out = self.factor(&g.bracket(ea, eb), &g.pair(ea, eb));
        if self.susy {
            out = out.scale(&sign(at));
        }
        for ch in self.chains(&self.depth(a), &self.depth(b)) {
            let p = ch.len() - 1;
            let (j0, n0) = ch[0];
            let (jp, np) = ch[p];
            let last_el = &self.bases.lower_m[jp][np + 1];
            let mut x = self.factor(&g.bracket(ea, last_el), &g.pair(ea, last_el));
            let mut e = if self.susy {
                let (s0, sp) = (self.ip(j0) + n0 as u32, self.ip(jp) + np as u32);
                p as u32 + (at + 1) * (bt + 1) + (at + 1) * sp + sp + (bt + 1) * (s0 + 1) + s0 + at
            } else {
                p as u32 + at * bt + at * self.ip(jp) + self.ip(jp) + bt * self.ip(j0)
            };
            for t in (1..=p).rev() {
                let (jt, nt) = ch[t];
                let (js, ns) = ch[t - 1];
                let (u, l) = (&self.bases.upper_m[jt][nt], &self.bases.lower_m[js][ns + 1]);
                let r = self.factor(&g.bracket(u, l), &g.pair(u, l));
                x = Series::apply_op(&r, &x, fl, wf);
                e += if self.susy {
                    (self.ip(js) + ns as u32) * (self.ip(jt) + nt as u32) + self.ip(jt) + nt as u32
                } else {
                    self.ip(js) + self.ip(js) * self.ip(jt)
                };
            }
            let u = &self.bases.upper_m[j0][n0];
            let l = self.factor(&g.bracket(u, eb), &g.pair(u, eb));
            x = Series::apply_op(&l, &x, fl, wf);
            out = out.sub(&x.scale(&sign(e)));
        }
        out
    }

    /// Closed-form inverse of the projected matrix (plain flavor).
    pub fn closed_form_inverse(&self) -> Result<OpMatrix> {
        if self.susy {
            return self.closed_form_inverse_susy();
        }
        let fl = self.flavor();
        let wf = self.affine.work_floor();
        let c = self.projected_c();
        let mut m = OpMatrix::identity(c.col_par.clone(), fl, wf);
        m.row_par = c.col_par.clone();
        m.col_par = c.row_par.clone();
        for ch in self.chains(&q(i32::MAX as i64), &q(i32::MAX as i64)).into_iter().filter(|c| c.len() >= 2) {
            let p = ch.len() - 1;
            let (j0, n0) = ch[0];
            let (jp, np) = ch[p];
            let (s0, sp) = (self.ip(j0), self.ip(jp));
            let (sq, _) = ch[p - 1];
            let mut e = p as u32 + s0 + s0 * sp + self.ip(sq) + self.ip(sq) * sp;
            let (jq, nq) = ch[p - 1];
            let mut x = self.pi_bracket(&self.bases.upper_m[jp][np], &self.bases.lower_m[jq][nq + 1]);
            for t in (1..p).rev() {
                let (jt, nt) = ch[t];
                let (js, ns) = ch[t - 1];
                let r = self.pi_bracket(&self.bases.upper_m[jt][nt], &self.bases.lower_m[js][ns + 1]);
                x = Series::apply_op(&r, &x, fl, wf);
                e += self.ip(js) + self.ip(js) * self.ip(jt);
            }
            let (r0, c0) = (self.pos(j0, n0), self.pos(jp, np));
            m.entries[r0][c0].add_assign(&x.scale(&sign(e)));
        }
        Ok(m)
    }

    fn closed_form_inverse_susy(&self) -> Result<OpMatrix> {
        let fl = self.flavor();
        let wf = self.affine.work_floor();
        let c = self.projected_c();
        let mut m = OpMatrix::zeros(c.col_par.clone(), c.row_par.clone(), fl, wf);
        let prime = |j: usize, n: usize| self.pos(j, self.bases.top(j) - n);
        for &(i, mm) in &self.index {
            m.entries[self.pos(i, mm)][prime(i, mm + 1)] = Series::constant(sign(self.ip(i) + mm as u32));
        }
        for ch in self.chains(&q(i32::MAX as i64), &q(i32::MAX as i64)).into_iter().filter(|c| c.len() >= 2) {
            let p = ch.len() - 1;
            let w = |t: usize| self.ip(ch[t].0) + ch[t].1 as u32;
            let rs = |s: usize| {
                let (js, ns) = ch[s];
                let (jq, nq) = ch[s - 1];
                self.pi_bracket(&self.bases.upper_m[js][ns], &self.bases.lower_m[jq][nq + 1]).scale(&sign(w(s - 1) * w(s)))
            };
            let mut x = rs(p);
            for t in (1..p).rev() {
                x = Series::apply_op(&rs(t), &x, fl, wf);
            }
            let e = p as u32 + w(0) * w(p);
            let (j0, n0) = ch[0];
            let (jp, np) = ch[p];
            m.entries[self.pos(j0, n0)][prime(jp, np + 1)].add_assign(&x.scale(&sign(e)));
        }
        Ok(m)
    }

    /// Items (1)–(4) of the entry lemma for π{·_λ·} on every index and generator.
    /// Item (2) excludes the diagonal (i,m) = (j,n), which item (1) covers; the
    /// SUSY item (4) is read as a vanishing statement.
    pub fn entry_lemma_report(&self) -> Report {
        let mut rep = Report::default();
        let st = self.step();
        let mut bad: [Vec<String>; 4] = Default::default();
        let mut count = [0usize; 4];
        for &(i, m) in &self.index {
            let v = self.pi_bracket(&self.bases.upper_m[i][m], &self.bases.lower_m[i][m + 1]);
            let want = if self.susy { sign(self.ip(i) + m as u32) } else { Scalar::one() };
            count[0] += 1;
            if v != Series::constant(want) {
                bad[0].push(format!("({},{})", i, m));
            }
            for &(j, n) in &self.index {
                if (j, n) != (i, m) && self.level(j, n) + &st > self.level(i, m) {
                    count[1] += 1;
                    if !self.pi_bracket(&self.bases.upper_m[i][m], &self.bases.lower_m[j][n + 1]).is_zero() {
                        bad[1].push(format!("({},{}),({},{})", i, m, j, n));
                    }
                }
            }
        }
        for a in 0..self.bases.len() {
            let t = self.depth(a);
            let ea = &self.bases.lower[a];
            for &(j, n) in &self.index {
                if self.level(j, n) + &st > t {
                    count[2] += 1;
                    if !self.pi_bracket(ea, &self.bases.lower_m[j][n + 1]).is_zero() {
                        bad[2].push(format!("a={}, ({},{})", a, j, n));
                    }
                }
                if self.level(j, n) < -t.clone() {
                    count[3] += 1;
                    if !self.pi_bracket(&self.bases.upper_m[j][n], ea).is_zero() {
                        bad[3].push(format!("a={}, ({},{})", a, j, n));
                    }
                }
            }
        }
        for (k, b) in bad.iter().enumerate() {
            let mut rec = CheckRecord::from_bool(format!("entry-lemma-{}", k + 1), format!("{} cases, {} failing", count[k], b.len()), b.is_empty());
            if !b.is_empty() {
                rec = rec.with_residual(b.join(" "));
            }
            rep.push(rec);
        }
        rep
    }

    /// Conformal weight of the quotient generator i: 1 + α_i (plain), ½ + β_i (SUSY).
    pub fn weight(&self, i: usize) -> Q {
        let base = if self.susy { q_frac(1, 2) } else { q(1) };
        base + &self.bases.height[i]
    }

    /// Predicted weight of {q_a _λ q_b}.
    pub fn predicted_weight(&self, a: usize, b: usize) -> Q {
        let shift = if self.susy { q_frac(1, 2) } else { q(1) };
        self.weight(a) + self.weight(b) - shift
    }

    pub fn text(&self, s: &Series) -> String {
        series_text(s, &self.quotient)
    }

    /// Agreement of the matrix path, the chain sum and (optionally) the W formula on every generator pair.
    pub fn isomorphism_check(&self, with_oracle: bool) -> Report {
        let mut rep = Report::default();
        let red = match self.reduction() {
            Ok(r) => r,
            Err(e) => {
                rep.push(CheckRecord::from_bool("isomorphism", "projected matrix", false).with_residual(e.to_string()));
                return rep;
            }
        };
        for a in 0..self.bases.len() {
            for b in 0..self.bases.len() {
                let inst = format!("({}, {})", self.quotient.names[a], self.quotient.names[b]);
                let md = match self.modified_dirac(&red, a, b) {
                    Ok(s) => s,
                    Err(e) => {
                        rep.push(CheckRecord::from_bool("matrix-vs-chain", inst, false).with_residual(e.to_string()));
                        continue;
                    }
                };
                let cs = self.chain_sum(a, b);
                let d = md.sub(&cs);
                let mut rec = CheckRecord::from_bool("matrix-vs-chain", inst.clone(), d.is_zero());
                if !d.is_zero() {
                    rec = rec.with_residual(self.text(&d));
                }
                rep.push(rec);
                if with_oracle {
                    let d = md.sub(&self.w_oracle(a, b));
                    let mut rec = CheckRecord::from_bool("matrix-vs-w-formula", inst, d.is_zero());
                    if !d.is_zero() {
                        rec = rec.with_residual(self.text(&d));
                    }
                    rep.push(rec);
                }
            }
        }
        rep
    }
}

/// Term-by-term Δ-homogeneity: generators weigh `weights[i]`, each ∂ and λ weighs 1,
/// each D and χ weighs ½, parameters weigh 0.
pub fn conformal_weight_audit(s: &Series, weights: &[Q], flavor: Flavor, expected: &Q) -> Report {
    let mut rep = Report::default();
    let step = match flavor {
        Flavor::Plain => q(1),
        Flavor::Susy => q_frac(1, 2),
    };
    let mut bad = Vec::new();
    let mut n = 0;
    for (k, c) in s.terms() {
        let outer = q_frac(k.lam_weight() as i64, 2);
        for (m, _) in c.terms() {
            n += 1;
            let mut w = outer.clone();
            for (v, e) in &m.0 {
                w += (weights[v.gen as usize].clone() + &step * q(v.order as i64)) * q(*e as i64);
            }
            if w != *expected {
                bad.push(format!("{:?} has weight {}", k, w));
            }
        }
    }
    let mut rec = CheckRecord::from_bool("conformal-weight", format!("{} terms, expected {}, {} off", n, expected, bad.len()), bad.is_empty());
    if !bad.is_empty() {
        rec = rec.with_residual(bad.join("; "));
    }
    rep.push(rec);
    rep
}

impl WSetup {
    /// Weight audit of the reduced bracket of every generator pair.
    pub fn weight_audit(&self) -> Report {
        let mut rep = Report::default();
        let Ok(red) = self.reduction() else {
            rep.push(CheckRecord::from_bool("conformal-weight", "projected matrix", false));
            return rep;
        };
        let weights: Vec<Q> = (0..self.bases.len()).map(|i| self.weight(i)).collect();
        for a in 0..self.bases.len() {
            for b in 0..self.bases.len() {
                let inst = format!("({}, {})", self.quotient.names[a], self.quotient.names[b]);
                match self.modified_dirac(&red, a, b) {
                    Ok(s) => {
                        for mut r in conformal_weight_audit(&s, &weights, self.flavor(), &self.predicted_weight(a, b)).records {
                            r.instance = format!("{} {}", inst, r.instance);
                            rep.push(r);
                        }
                    }
                    Err(e) => rep.push(CheckRecord::from_bool("conformal-weight", inst, false).with_residual(e.to_string())),
                }
            }
        }
        rep
    }
}
