//! Finite-dimensional Lie superalgebras given by rational structure constants,
//! with an invariant form, a distinguished sl₂ or osp(1|2) triple, the induced
//! grading, dual bases and the projection a ↦ a^♯.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::{parse_q, q, q_frac, Q};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// Coordinates in the basis.
pub type Elem = Vec<Q>;

#[derive(Clone, Debug, PartialEq)]
pub struct Triple {
    pub big_e: Elem,
    pub h: Elem,
    pub big_f: Elem,
    /// Odd part (e, f) of an osp(1|2) triple.
    pub odd: Option<(Elem, Elem)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieSuperalgebra {
    pub name: String,
    pub params: Vec<String>,
    pub names: Vec<String>,
    pub parities: Vec<u8>,
    /// consts[i][j][k] = coefficient of b_k in [b_i, b_j].
    pub consts: Vec<Vec<Vec<Q>>>,
    pub form: Vec<Vec<Q>>,
    pub triple: Option<Triple>,
}

pub const SL2_JSON: &str = include_str!("../data/sl2.json");
pub const OSP12_JSON: &str = include_str!("../data/osp12.json");

fn value_q(v: &Value) -> Option<Q> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(q(i))
            } else {
                n.as_f64().and_then(Q::from_float)
            }
        }
        Value::String(s) => parse_q(s),
        _ => None,
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidAlgebra(msg.into())
}

impl LieSuperalgebra {
    pub fn sl2() -> Self {
        Self::from_json(SL2_JSON).expect("bundled sl2 preset")
    }

    pub fn osp12() -> Self {
        Self::from_json(OSP12_JSON).expect("bundled osp12 preset")
    }

    /// A bundled preset name (`sl2`, `osp12`, with or without `.json`) or a file path.
    pub fn load(spec: &str) -> Result<Self> {
        match spec.trim_end_matches(".json").rsplit('/').next().unwrap_or(spec) {
            "sl2" if !std::path::Path::new(spec).exists() => Ok(Self::sl2()),
            "osp12" if !std::path::Path::new(spec).exists() => Ok(Self::osp12()),
            _ => {
                let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{}: {}", spec, e)))?;
                Self::from_json(&text)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        let name = v["name"].as_str().unwrap_or("g").to_string();
        let params: Vec<String> = match v.get("parameters").and_then(Value::as_array) {
            Some(a) => a.iter().filter_map(|p| p.as_str().map(String::from)).collect(),
            None => vec!["k".into()],
        };
        let basis = v["basis"].as_array().ok_or_else(|| bad("missing basis"))?;
        let mut ids = Vec::new();
        let mut names = Vec::new();
        let mut parities = Vec::new();
        for b in basis {
            ids.push(b["id"].as_i64().ok_or_else(|| bad("basis id must be an integer"))?);
            names.push(b["name"].as_str().ok_or_else(|| bad("basis name must be a string"))?.to_string());
            let p = b["parity"].as_u64().ok_or_else(|| bad("parity must be 0 or 1"))?;
            if p > 1 {
                return Err(bad("parity must be 0 or 1"));
            }
            parities.push(p as u8);
        }
        let n = ids.len();
        let index = |v: &Value| -> Result<usize> {
            if let Some(i) = v.as_i64() {
                ids.iter().position(|&x| x == i).ok_or_else(|| bad(format!("unknown basis id {}", i)))
            } else if let Some(s) = v.as_str() {
                names.iter().position(|x| x == s).ok_or_else(|| bad(format!("unknown basis name {}", s)))
            } else {
                Err(bad("basis reference must be an id or a name"))
            }
        };
        let mut consts = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut given = vec![vec![false; n]; n];
        for br in v["brackets"].as_array().cloned().unwrap_or_default() {
            let i = index(&br[0])?;
            let j = index(&br[1])?;
            given[i][j] = true;
            for t in br[2].as_array().ok_or_else(|| bad("bracket terms must be a list"))? {
                let k = index(&t["k"])?;
                let c = value_q(&t["coeff"]).ok_or_else(|| bad("bad coefficient"))?;
                consts[i][j][k] += c;
            }
        }
        // missing ordered pairs follow from skewsymmetry
        for i in 0..n {
            for j in 0..n {
                if !given[i][j] && given[j][i] {
                    let s = if parities[i] & parities[j] == 1 { Q::one() } else { -Q::one() };
                    consts[i][j] = consts[j][i].iter().map(|c| c * &s).collect();
                }
            }
        }
        let mut form = vec![vec![Q::zero(); n]; n];
        let mut fgiven = vec![vec![false; n]; n];
        for f in v["form"].as_array().cloned().unwrap_or_default() {
            let i = index(&f[0])?;
            let j = index(&f[1])?;
            form[i][j] = value_q(&f[2]).ok_or_else(|| bad("bad form coefficient"))?;
            fgiven[i][j] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if !fgiven[i][j] && fgiven[j][i] {
                    let s = if parities[i] & parities[j] == 1 { -Q::one() } else { Q::one() };
                    form[i][j] = &form[j][i] * s;
                }
            }
        }
        let mut g = LieSuperalgebra { name, params, names: names.clone(), parities, consts, form, triple: None };
        if let Some(t) = v.get("triple").filter(|t| t.is_object()) {
            let get = |key: &str| -> Result<Option<Elem>> {
                match t.get(key) {
                    None => Ok(None),
                    Some(x) => Ok(Some(g.basis(index(x)?))),
                }
            };
            let big_e = get("E")?.ok_or_else(|| bad("triple needs E"))?;
            let h = get("H")?.ok_or_else(|| bad("triple needs H"))?;
            let big_f = get("F")?.ok_or_else(|| bad("triple needs F"))?;
            let odd = match (get("e")?, get("f")?) {
                (Some(e), Some(f)) => Some((e, f)),
                (None, None) => None,
                _ => return Err(bad("SUSY triple needs both e and f")),
            };
            g.triple = Some(Triple { big_e, h, big_f, odd });
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let basis: Vec<Value> = (0..self.dim())
            .map(|i| serde_json::json!({"id": i, "name": self.names[i], "parity": self.parities[i]}))
            .collect();
        let qs = |c: &Q| Value::String(if c.is_integer() { c.numer().to_string() } else { format!("{}/{}", c.numer(), c.denom()) });
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let terms: Vec<Value> = (0..self.dim())
                    .filter(|&k| !self.consts[i][j][k].is_zero())
                    .map(|k| serde_json::json!({"k": k, "coeff": qs(&self.consts[i][j][k])}))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(serde_json::json!([i, j, terms]));
                }
            }
        }
        let mut form = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.form[i][j].is_zero() {
                    form.push(serde_json::json!([i, j, qs(&self.form[i][j])]));
                }
            }
        }
        let mut v = serde_json::json!({
            "name": self.name, "parameters": self.params, "basis": basis,
            "brackets": brackets, "form": form,
        });
        if let Some(t) = &self.triple {
            let name_of = |x: &Elem| -> Value {
                match self.as_basis_element(x) {
                    Some(i) => Value::String(self.names[i].clone()),
                    None => Value::Null,
                }
            };
            let mut tj = serde_json::json!({"E": name_of(&t.big_e), "H": name_of(&t.h), "F": name_of(&t.big_f)});
            if let Some((e, f)) = &t.odd {
                tj["e"] = name_of(e);
                tj["f"] = name_of(f);
            }
            v["triple"] = tj;
        }
        serde_json::to_string_pretty(&v).expect("json")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis(&self, i: usize) -> Elem {
        (0..self.dim()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
    }

    pub fn zero_elem(&self) -> Elem {
        vec![Q::zero(); self.dim()]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `Some(i)` if `x` is exactly the basis vector b_i.
    pub fn as_basis_element(&self, x: &Elem) -> Option<usize> {
        let nz: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
        (nz.len() == 1 && x[nz[0]].is_one()).then(|| nz[0])
    }

    pub fn bracket(&self, x: &Elem, y: &Elem) -> Elem {
        let n = self.dim();
        let mut out = self.zero_elem();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    if !self.consts[i][j][k].is_zero() {
                        out[k] += &c * &self.consts[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn pair(&self, x: &Elem, y: &Elem) -> Q {
        let mut s = Q::zero();
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if !y[j].is_zero() && !self.form[i][j].is_zero() {
                    s += &x[i] * &y[j] * &self.form[i][j];
                }
            }
        }
        s
    }

    /// Parity of a homogeneous element (zero counts as even).
    pub fn parity_of(&self, x: &Elem) -> Option<u8> {
        let mut p = None;
        for i in 0..self.dim() {
            if !x[i].is_zero() && *p.get_or_insert(self.parities[i]) != self.parities[i] {
                return None;
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn elem_text(&self, x: &Elem) -> String {
        let mut parts: Vec<String> = Vec::new();
        for i in 0..self.dim() {
            let c = &x[i];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let body = if a.is_one() {
                self.names[i].clone()
            } else {
                format!("{}*{}", crate::scalar::q_text(&a), self.names[i])
            };
            parts.push(format!("{}{}", sign, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let s = parts.join(" ");
        let s = s.replacen('+', "", 1);
        s.replace(" +", " + ").replace(" -", " - ")
    }

    fn sub(x: &Elem, y: &Elem) -> Elem {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(x: &Elem, c: &Q) -> Elem {
        x.iter().map(|a| a * c).collect()
    }

    fn is_zero(x: &Elem) -> bool {
        x.iter().all(Q::is_zero)
    }

    /// Skewsymmetry, Jacobi, supersymmetry / evenness / invariance of the form.
    pub fn validate(&self) -> Report {
        let n = self.dim();
        let mut rep = Report::default();
        let sgn = |p: u8| if p % 2 == 1 { -Q::one() } else { Q::one() };
        let mut skew_ok = true;
        let mut parity_ok = true;
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (self.parities[i], self.parities[j]);
                let lhs = self.bracket(&self.basis(i), &self.basis(j));
                let rhs = Self::scale(&self.bracket(&self.basis(j), &self.basis(i)), &-sgn(pi * pj));
                if lhs != rhs {
                    skew_ok = false;
                    rep.push(CheckRecord::new("lie-skewsymmetry", format!("[{},{}]", self.names[i], self.names[j]), Status::Fail)
                        .with_residual(self.elem_text(&Self::sub(&lhs, &rhs))));
                }
                if self.parity_of(&lhs) != Some((pi + pj) % 2) && !Self::is_zero(&lhs) {
                    parity_ok = false;
                    rep.push(CheckRecord::new("lie-parity", format!("[{},{}]", self.names[i], self.names[j]), Status::Fail));
                }
            }
        }
        if skew_ok {
            rep.push(CheckRecord::pass("lie-skewsymmetry", "all basis pairs"));
        }
        if parity_ok {
            rep.push(CheckRecord::pass("lie-parity", "all basis pairs"));
        }
        // (−1)^{ca}[a,[b,c]] + (−1)^{ab}[b,[c,a]] + (−1)^{bc}[c,[a,b]] = 0
        let mut jac_ok = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let (pa, pb, pc) = (self.parities[i], self.parities[j], self.parities[k]);
                    let t1 = Self::scale(&self.bracket(&a, &self.bracket(&b, &c)), &sgn(pc * pa));
                    let t2 = Self::scale(&self.bracket(&b, &self.bracket(&c, &a)), &sgn(pa * pb));
                    let t3 = Self::scale(&self.bracket(&c, &self.bracket(&a, &b)), &sgn(pb * pc));
                    let s: Elem = (0..n).map(|t| &t1[t] + &t2[t] + &t3[t]).collect();
                    if !Self::is_zero(&s) {
                        jac_ok = false;
                        rep.push(CheckRecord::new("lie-jacobi", format!("({},{},{})", self.names[i], self.names[j], self.names[k]), Status::Fail)
                            .with_residual(self.elem_text(&s)));
                    }
                }
            }
        }
        if jac_ok {
            rep.push(CheckRecord::pass("lie-jacobi", "all basis triples"));
        }
        let mut form_ok = true;
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (self.parities[i], self.parities[j]);
                let f = &self.form[i][j];
                if pi != pj && !f.is_zero() {
                    form_ok = false;
                    rep.push(CheckRecord::new("form-even", format!("({}|{})", self.names[i], self.names[j]), Status::Fail));
                }
                if *f != &self.form[j][i] * sgn(pi * pj) {
                    form_ok = false;
                    rep.push(CheckRecord::new("form-supersymmetric", format!("({}|{})", self.names[i], self.names[j]), Status::Fail));
                }
                for k in 0..n {
                    let l = self.pair(&self.bracket(&self.basis(i), &self.basis(j)), &self.basis(k));
                    let r = self.pair(&self.basis(i), &self.bracket(&self.basis(j), &self.basis(k)));
                    if l != r {
                        form_ok = false;
                        rep.push(CheckRecord::new("form-invariant", format!("([{},{}]|{})", self.names[i], self.names[j], self.names[k]), Status::Fail)
                            .with_residual(format!("{} vs {}", l, r)));
                    }
                }
            }
        }
        if form_ok {
            rep.push(CheckRecord::pass("form", "even, supersymmetric, invariant"));
        }
        let nondeg = linalg::rank(&self.form) == n;
        rep.push(CheckRecord::from_bool("form-nondegenerate", "rank", nondeg));
        if let Some(t) = &self.triple {
            rep.extend(self.check_triple(t));
        }
        rep
    }

    fn check_triple(&self, t: &Triple) -> Report {
        let mut rep = Report::default();
        let two = q(2);
        let mut rel = |name: &str, lhs: Elem, rhs: Elem| {
            rep.push(CheckRecord::from_bool("triple", name, lhs == rhs));
        };
        rel("[H,E]=2E", self.bracket(&t.h, &t.big_e), Self::scale(&t.big_e, &two));
        rel("[H,F]=-2F", self.bracket(&t.h, &t.big_f), Self::scale(&t.big_f, &-two.clone()));
        rel("[E,F]=H", self.bracket(&t.big_e, &t.big_f), t.h.clone());
        if let Some((e, f)) = &t.odd {
            rel("[e,e]=2E", self.bracket(e, e), Self::scale(&t.big_e, &two));
            rel("[f,f]=-2F", self.bracket(f, f), Self::scale(&t.big_f, &-two.clone()));
            rel("[H,e]=e", self.bracket(&t.h, e), e.clone());
            rel("[H,f]=-f", self.bracket(&t.h, f), Self::scale(f, &-Q::one()));
            rel("[e,f]=H", self.bracket(e, f), t.h.clone());
        }
        let ef = self.pair(&t.big_e, &t.big_f);
        rep.push(CheckRecord::from_bool("triple", "(E|F)=1", ef.is_one()));
        rep
    }

    pub fn ad_matrix(&self, x: &Elem) -> Mat {
        let n = self.dim();
        let cols: Vec<Elem> = (0..n).map(|j| self.bracket(x, &self.basis(j))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn triple(&self) -> Result<&Triple> {
        self.triple.as_ref().ok_or_else(|| bad("no sl2 / osp(1|2) triple declared"))
    }

    /// Eigenvalue of ad(H/2) on every basis vector; fails unless the basis diagonalizes it.
    pub fn grading(&self) -> Result<Vec<Q>> {
        let t = self.triple()?;
        let x = Self::scale(&t.h, &q_frac(1, 2));
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let img = self.bracket(&x, &self.basis(i));
            for j in 0..self.dim() {
                if j != i && !img[j].is_zero() {
                    return Err(bad(format!("basis vector {} is not an ad(H/2) eigenvector", self.names[i])));
                }
            }
            out.push(img[i].clone());
        }
        Ok(out)
    }

    /// Grade of a homogeneous element.
    pub fn grade_of(&self, x: &Elem) -> Option<Q> {
        let g = self.grading().ok()?;
        let mut d = None;
        for i in 0..self.dim() {
            if !x[i].is_zero() && *d.get_or_insert(g[i].clone()) != g[i] {
                return None;
            }
        }
        d
    }

    fn kernel_of(&self, x: &Elem) -> Vec<Elem> {
        linalg::nullspace(&self.ad_matrix(x), self.dim())
    }

    /// Columns spanning the image of ad x.
    fn image_of(&self, x: &Elem) -> Vec<Elem> {
        let m = linalg::transpose(&self.ad_matrix(x));
        let mut r = m.clone();
        let piv = linalg::rref(&mut r);
        r.truncate(piv.len());
        r
    }
}

/// The decomposition 𝔤 = ker(ad y) ⊕ im(ad x) and the projection onto the first summand.
#[derive(Clone, Debug)]
pub struct Sharp {
    kernel: Vec<Elem>,
    image: Vec<Elem>,
}

impl Sharp {
    /// Plain case: 𝔤^F ⊕ [E,𝔤]; SUSY case: 𝔤^f ⊕ [e,𝔤].
    pub fn new(g: &LieSuperalgebra, susy: bool) -> Result<Sharp> {
        let t = g.triple()?;
        let (x, y) = if susy {
            let (e, f) = t.odd.clone().ok_or_else(|| bad("SUSY mode needs an osp(1|2) triple"))?;
            (e, f)
        } else {
            (t.big_e.clone(), t.big_f.clone())
        };
        let kernel = g.kernel_of(&y);
        let image = g.image_of(&x);
        if kernel.len() + image.len() != g.dim() {
            return Err(bad("kernel and image dimensions do not add up"));
        }
        let all: Vec<Elem> = kernel.iter().chain(image.iter()).cloned().collect();
        if linalg::rank(&all) != g.dim() {
            return Err(bad("kernel and image intersect"));
        }
        Ok(Sharp { kernel, image })
    }

    /// Returns (kernel part, image part) coordinates of x.
    fn split(&self, x: &Elem) -> (Elem, Elem) {
        let n = x.len();
        let cols: Vec<&Elem> = self.kernel.iter().chain(self.image.iter()).collect();
        let m: Mat = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let coeffs = linalg::solve(&m, x).expect("basis of g");
        let mut ker = vec![Q::zero(); n];
        let mut img = vec![Q::zero(); n];
        for (t, c) in coeffs.iter().enumerate() {
            let target = if t < self.kernel.len() { &mut ker } else { &mut img };
            for i in 0..n {
                target[i] += c * &cols[t][i];
            }
        }
        (ker, img)
    }

    pub fn project(&self, x: &Elem) -> Elem {
        self.split(x).0
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }
}

/// Bases q_i of 𝔤^F (resp. r_i of 𝔤^f), their duals, and the families
/// q^i_m = (ad F)^m q^i, q_i^m = k_{i,m} (ad E)^m q_i (SUSY: ad f, ad e).
#[derive(Clone, Debug)]
pub struct DualBases {
    pub susy: bool,
    pub labels: Vec<String>,
    pub lower: Vec<Elem>,
    pub upper: Vec<Elem>,
    pub parity: Vec<u8>,
    /// α_i (plain) or β_i (SUSY): upper[i] ∈ 𝔤(height).
    pub height: Vec<Q>,
    /// upper_m[i][m] = q^i_m for m = 0..=top(i).
    pub upper_m: Vec<Vec<Elem>>,
    /// lower_m[i][m] = q_i^m.
    pub lower_m: Vec<Vec<Elem>>,
    pub norms: Vec<Vec<Q>>,
}

impl DualBases {
    pub fn build(g: &LieSuperalgebra, susy: bool) -> Result<DualBases> {
        let t = g.triple()?;
        let grades = g.grading()?;
        let (up, down) = if susy {
            t.odd.clone().ok_or_else(|| bad("SUSY mode needs an osp(1|2) triple"))?
        } else {
            (t.big_e.clone(), t.big_f.clone())
        };
        // kernel of ad(down) block by block in (grade, parity), so every q_i is homogeneous
        let mut blocks: Vec<(Q, u8)> = (0..g.dim()).map(|i| (grades[i].clone(), g.parities[i])).collect();
        blocks.sort();
        blocks.dedup();
        let mut lower = Vec::new();
        for (gr, p) in &blocks {
            let idx: Vec<usize> = (0..g.dim()).filter(|&i| grades[i] == *gr && g.parities[i] == *p).collect();
            let ad = g.ad_matrix(&down);
            let sub: Mat = ad.iter().map(|row| idx.iter().map(|&j| row[j].clone()).collect()).collect();
            for v in linalg::nullspace(&sub, idx.len()) {
                let mut x = g.zero_elem();
                for (t, &j) in idx.iter().enumerate() {
                    x[j] = v[t].clone();
                }
                lower.push(x);
            }
        }
        let kerup: Vec<Elem> = g.kernel_of(&up);
        if kerup.len() != lower.len() {
            return Err(bad("dim ker ad E differs from dim ker ad F"));
        }
        // q^i = Σ_a x_{ia} K_a with (q^i | q_j) = δ_ij
        let pairing: Mat = kerup.iter().map(|ka| lower.iter().map(|qb| g.pair(ka, qb)).collect()).collect();
        let pt = linalg::transpose(&pairing);
        let mut upper = Vec::new();
        for i in 0..lower.len() {
            let rhs: Vec<Q> = (0..lower.len()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
            let x = linalg::solve(&pt, &rhs).ok_or_else(|| bad("singular pairing between ker ad E and ker ad F"))?;
            let mut e = g.zero_elem();
            for (a, c) in x.iter().enumerate() {
                for t in 0..g.dim() {
                    e[t] += c * &kerup[a][t];
                }
            }
            upper.push(e);
        }
        let mut labels = Vec::new();
        let mut parity = Vec::new();
        let mut height = Vec::new();
        for (i, ql) in lower.iter().enumerate() {
            labels.push(match g.as_basis_element(ql) {
                Some(b) => g.names[b].clone(),
                None => format!("q{}", i),
            });
            parity.push(g.parity_of(ql).ok_or_else(|| bad("inhomogeneous q_i"))?);
            height.push(g.grade_of(&upper[i]).ok_or_else(|| bad("dual element not graded"))?);
        }
        let mut upper_m = Vec::new();
        let mut lower_m = Vec::new();
        let mut norms = Vec::new();
        for i in 0..lower.len() {
            let top = Self::top_of(&height[i], susy);
            let mut ups = vec![upper[i].clone()];
            let mut raw = vec![lower[i].clone()];
            for _ in 0..top {
                ups.push(g.bracket(&down, ups.last().unwrap()));
                raw.push(g.bracket(&up, raw.last().unwrap()));
            }
            let mut lows = Vec::new();
            let mut ks = Vec::new();
            for m in 0..=top {
                let p = g.pair(&ups[m], &raw[m]);
                if p.is_zero() {
                    return Err(bad(format!("pairing (q^{}_{}|q_{}^{}) vanishes", i, m, i, m)));
                }
                let k = p.recip();
                lows.push(LieSuperalgebra::scale(&raw[m], &k));
                ks.push(k);
            }
            upper_m.push(ups);
            lower_m.push(lows);
            norms.push(ks);
        }
        Ok(DualBases { susy, labels, lower, upper, parity, height, upper_m, lower_m, norms })
    }

    /// Largest m in the families: 2α_i or 4β_i.
    fn top_of(h: &Q, susy: bool) -> usize {
        let f = if susy { q(4) } else { q(2) };
        let t = h * f;
        t.to_integer().try_into().unwrap_or(0)
    }

    pub fn top(&self, i: usize) -> usize {
        Self::top_of(&self.height[i], self.susy)
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    /// Index set I = {(i,m) : 0 ≤ m < top(i)}.
    pub fn index_set(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.len() {
            for m in 0..self.top(i) {
                v.push((i, m));
            }
        }
        v
    }

    /// All pairings (q^i_m | q_j^n) − δδ; empty when the duality holds.
    pub fn pairing_defects(&self, g: &LieSuperalgebra) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                for m in 0..=self.top(i) {
                    for n in 0..=self.top(j) {
                        let p = g.pair(&self.upper_m[i][m], &self.lower_m[j][n]);
                        let want = if i == j && m == n { Q::one() } else { Q::zero() };
                        if p != want {
                            out.push(format!("(q^{}_{}|q_{}^{}) = {}", i, m, j, n, p));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for g in [LieSuperalgebra::sl2(), LieSuperalgebra::osp12()] {
            let r = g.validate();
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn corrupted_sl2_fails_with_witness() {
        let mut g = LieSuperalgebra::sl2();
        let (e, f, h) = (g.index_of("E").unwrap(), g.index_of("F").unwrap(), g.index_of("H").unwrap());
        g.consts[e][f][h] = -g.consts[e][f][h].clone();
        let r = g.validate();
        assert!(!r.all_pass());
        assert!(r.failures().next().is_some());
    }

    #[test]
    fn gradings() {
        let g = LieSuperalgebra::sl2();
        let gr = g.grading().unwrap();
        assert_eq!(gr, vec![q(1), q(0), q(-1)]);
        let o = LieSuperalgebra::osp12();
        let gr = o.grading().unwrap();
        let want = [("E", q(1)), ("e", q_frac(1, 2)), ("H", q(0)), ("f", q_frac(-1, 2)), ("F", q(-1))];
        for (n, v) in want {
            assert_eq!(gr[o.index_of(n).unwrap()], v, "{}", n);
        }
    }

    #[test]
    fn sharp_projection_sl2() {
        let g = LieSuperalgebra::sl2();
        let s = Sharp::new(&g, false).unwrap();
        let f = g.basis(g.index_of("F").unwrap());
        assert_eq!(s.project(&f), f);
        assert!(s.project(&g.basis(g.index_of("E").unwrap())).iter().all(Q::is_zero));
        assert!(s.project(&g.basis(g.index_of("H").unwrap())).iter().all(Q::is_zero));
    }
}
