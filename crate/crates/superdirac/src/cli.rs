//! Command-line front end. The binary only forwards `std::env::args` to [`run`].

use crate::diffpoly::{Alphabet, DiffPoly};
use crate::dirac::{ConstraintSet, Reduction};
use crate::error::{Error, Result};
use crate::goldens::golden_report;
use crate::lie::LieSuperalgebra;
use crate::matrix::OpMatrix;
use crate::pvsa::Pvsa;
use crate::report::{CheckRecord, Report};
use crate::series::Series;
use crate::susy::{affine_susy, nonlocal_susy_example};
use crate::text::{parse_poly, series_latex, series_text};
use crate::w::WSetup;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "superdirac", version, about = "λ-bracket calculus, Dirac reduction and classical W-(super)algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Algebra given positionally; filled in by the subcommand.
    #[arg(skip)]
    pub algebra_pos: Option<String>,
    /// Algebra: `sl2`, `osp12`, `nonlocal`, or a JSON file.
    #[arg(long = "algebra", value_name = "ALGEBRA")]
    pub algebra: Option<String>,
    /// Use the SUSY (Λ-bracket) engine.
    #[arg(long)]
    pub susy: bool,
    /// Truncation depth N: non-local series are kept down to λ^{-N}.
    #[arg(long, value_name = "N", default_value_t = 8)]
    pub trunc: u32,
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print constraint matrices and their inverses.
    #[arg(long)]
    pub show_matrix: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the algebra and run the λ-bracket axiom suite.
    Check {
        /// `sl2`, `osp12`, `nonlocal`, or a JSON file (alternative to --algebra).
        #[arg(value_name = "ALGEBRA")]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
        /// Number of random triples besides the generator triples.
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
    /// Dirac reduction by the constraints listed in a file, one expression per line.
    Reduce {
        /// `sl2`, `osp12`, `nonlocal`, or a JSON file (alternative to --algebra).
        #[arg(value_name = "ALGEBRA")]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        constraints: String,
        /// Random elements per constraint in the centrality check.
        #[arg(long, default_value_t = 30)]
        samples: usize,
    },
    /// W-(super)algebra bracket of two generators by the matrix path, the chain sum and the W formula.
    Wbracket {
        /// `sl2`, `osp12`, `nonlocal`, or a JSON file (alternative to --algebra).
        #[arg(value_name = "ALGEBRA")]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "A,B")]
        pair: String,
    },
    /// Check every worked example against its reference value.
    Examples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate one bracket {a_λ b} by the master formula.
    Expand {
        #[command(flatten)]
        common: Common,
        /// `[ALGEBRA] A B`: the algebra may instead be given by --algebra.
        #[arg(value_name = "ARGS", num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
}

/// Outcome of a command: text to print and the exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn ok_if(output: String, pass: bool) -> Outcome {
    Outcome { output, code: if pass { 0 } else { 1 } }
}

impl Common {
    fn algebra_name(&self) -> Result<&str> {
        self.algebra
            .as_deref()
            .or(self.algebra_pos.as_deref())
            .ok_or_else(|| Error::Io("no algebra given".into()))
    }

    fn floor(&self) -> i32 {
        -2 * self.trunc as i32
    }

    fn lie(&self) -> Result<LieSuperalgebra> {
        LieSuperalgebra::load(self.algebra_name()?)
    }

    fn pvsa(&self) -> Result<Pvsa> {
        let p = if self.algebra_name()? == "nonlocal" {
            if self.susy {
                nonlocal_susy_example()
            } else {
                Pvsa::nonlocal_example()
            }
        } else {
            let g = self.lie()?;
            if self.susy {
                affine_susy(&g)
            } else {
                Pvsa::affine(&g)
            }
        };
        Ok(p.with_floor(self.floor()))
    }

    fn expr(&self, s: &Series, a: &Alphabet) -> String {
        match self.format {
            Format::Latex => series_latex(s, a),
            _ => series_text(s, a),
        }
    }
}

fn render_report(rep: &Report, f: Format) -> String {
    match f {
        Format::Json => rep.to_json() + "\n",
        _ => rep.to_text(),
    }
}

fn matrix_block(name: &str, m: &OpMatrix, a: &Alphabet, f: Format) -> String {
    match f {
        Format::Latex => {
            let rows: Vec<String> = m.entries.iter().map(|r| r.iter().map(|e| series_latex(e, a)).collect::<Vec<_>>().join(" & ")).collect();
            format!("{} = \\begin{{pmatrix}} {} \\end{{pmatrix}}\n", name, rows.join(" \\\\ "))
        }
        _ => format!("{} =\n{}", name, m.text(a)),
    }
}

fn cmd_check(c: &Common, random: usize) -> Result<Outcome> {
    let mut rep = Report::default();
    if c.algebra_name()? != "nonlocal" {
        rep.extend(c.lie()?.validate());
    }
    let p = c.pvsa()?;
    rep.extend(p.check_axioms(c.seed, random));
    let pass = rep.failures().next().is_none();
    Ok(ok_if(render_report(&rep, c.format), pass))
}

/// One constraint per non-empty line; `#` starts a comment.
pub fn parse_constraints(src: &str, a: &Alphabet) -> Result<Vec<DiffPoly>> {
    let mut out = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let p = parse_poly(body, a).map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::Parse { line: n + 1, col: col + (line.len() - line.trim_start().len()), msg },
            other => other,
        })?;
        out.push(p);
    }
    if out.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "no constraints".into() });
    }
    Ok(out)
}

fn cmd_reduce(c: &Common, file: &str, samples: usize) -> Result<Outcome> {
    let p = c.pvsa()?;
    let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {}", file, e)))?;
    let theta = ConstraintSet::new(parse_constraints(&text, &p.alphabet)?)?;
    let a = &p.alphabet;
    let red = match Reduction::dirac(&p, theta.clone()) {
        Ok(r) => r,
        Err(e @ Error::NotInClass(_)) => {
            let mut out = String::new();
            if c.show_matrix {
                let m = crate::dirac::constraint_matrix(&p, &theta, &theta, &crate::dirac::Projection::identity(a));
                out.push_str(&matrix_block("C", &m, a, c.format));
            }
            let mut rep = Report::default();
            rep.push(CheckRecord::from_bool("invertibility", "constraint matrix", false).with_residual(e.to_string()));
            out.push_str(&render_report(&rep, c.format));
            return Ok(ok_if(out, false));
        }
        Err(e) => return Err(e),
    };
    let mut rep = red.centrality_report(c.seed, samples);
    let table = red.generator_table()?;
    let mut out = String::new();
    if c.format == Format::Json {
        let mut brackets = serde_json::Map::new();
        for (i, row) in table.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                brackets.insert(format!("{},{}", a.names[i], a.names[j]), json!(series_text(s, a)));
            }
        }
        let v = json!({
            "c": red.c.render(a),
            "c_inv": red.c_inv.render(a),
            "brackets": brackets,
            "report": serde_json::from_str::<serde_json::Value>(&rep.to_json()).unwrap_or_default(),
        });
        out = serde_json::to_string_pretty(&v).unwrap_or_default() + "\n";
    } else {
        if c.show_matrix {
            out.push_str(&matrix_block("C", &red.c, a, c.format));
            out.push_str(&matrix_block("C^-1", &red.c_inv, a, c.format));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out.push_str(&format!("{{{} {} {}}}^D = {}\n", a.names[i], if c.susy { "Λ" } else { "λ" }, a.names[j], c.expr(s, a)));
            }
        }
        out.push_str(&rep.to_text());
    }
    rep.records.retain(|r| r.status == crate::report::Status::Fail);
    Ok(ok_if(out, rep.records.is_empty()))
}

fn pair_index(w: &WSetup, name: &str) -> Result<usize> {
    let n = name.trim();
    w.quotient
        .index_of(n)
        .or_else(|| w.bases.labels.iter().position(|l| l == n))
        .ok_or_else(|| Error::Parse { line: 1, col: 1, msg: format!("unknown generator '{}'; expected one of {}", n, w.quotient.names.join(", ")) })
}

fn cmd_wbracket(c: &Common, pair: &str) -> Result<Outcome> {
    let g = c.lie()?;
    let w = WSetup::new(&g, c.susy)?;
    let (x, y) = pair.split_once(',').ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "--pair expects A,B".into() })?;
    let (a, b) = (pair_index(&w, x)?, pair_index(&w, y)?);
    let red = w.reduction()?;
    let md = w.modified_dirac(&red, a, b)?;
    let cs = w.chain_sum(a, b);
    let wo = w.w_oracle(a, b);
    let q = &w.quotient;
    let agree = md == cs && md == wo;
    let label = format!("{{{} {} {}}}", q.names[a], if c.susy { "Λ" } else { "λ" }, q.names[b]);
    let out = match c.format {
        Format::Json => {
            let mut v = json!({
                "pair": [q.names[a], q.names[b]],
                "modified_dirac": series_text(&md, q),
                "chain_sum": series_text(&cs, q),
                "w_formula": series_text(&wo, q),
                "diff_chain": series_text(&md.sub(&cs), q),
                "diff_w_formula": series_text(&md.sub(&wo), q),
                "agree": agree,
            });
            if c.show_matrix {
                v["c"] = json!(red.c.render(q));
                v["c_inv"] = json!(red.c_inv.render(q));
            }
            serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
        }
        f => {
            let mut out = String::new();
            if c.show_matrix {
                out.push_str(&matrix_block("C", &red.c, q, f));
                out.push_str(&matrix_block("C^-1", &red.c_inv, q, f));
            }
            out.push_str(&format!("{}\n", c.expr(&md, q)));
            out.push_str(&format!("  matrix path : {} {}\n", label, c.expr(&md, q)));
            out.push_str(&format!("  chain sum   : {}\n", c.expr(&cs, q)));
            out.push_str(&format!("  W formula   : {}\n", c.expr(&wo, q)));
            out.push_str(&format!("  diff        : {} / {}\n", c.expr(&md.sub(&cs), q), c.expr(&md.sub(&wo), q)));
            out.push_str(if agree { "  all paths agree\n" } else { "  PATHS DISAGREE\n" });
            out
        }
    };
    Ok(ok_if(out, agree))
}

fn cmd_expand(c: &Common, a: &str, b: &str) -> Result<Outcome> {
    let p = c.pvsa()?;
    let (x, y) = (parse_poly(a, &p.alphabet)?, parse_poly(b, &p.alphabet)?);
    let s = p.bracket(&x, &y)?;
    let out = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({"a": a, "b": b, "bracket": series_text(&s, &p.alphabet)})).unwrap_or_default() + "\n",
        _ => format!("{}\n", c.expr(&s, &p.alphabet)),
    };
    Ok(ok_if(out, true))
}

/// Run a parsed command; errors map to exit code 2.
pub fn execute(cli: &Cli) -> Outcome {
    let with = |c: &Common, a: &Option<String>| Common { algebra_pos: a.clone(), ..c.clone() };
    let r = match &cli.command {
        Command::Check { input, common, random } => cmd_check(&with(common, input), *random),
        Command::Reduce { input, common, constraints, samples } => cmd_reduce(&with(common, input), constraints, *samples),
        Command::Wbracket { input, common, pair } => cmd_wbracket(&with(common, input), pair),
        Command::Expand { common, args } => {
            let (alg, rest) = if args.len() == 3 { (Some(args[0].clone()), &args[1..]) } else { (None, &args[..]) };
            cmd_expand(&with(common, &alg), &rest[0], &rest[1])
        }
        Command::Examples { format } => {
            let rep = golden_report();
            Ok(ok_if(render_report(&rep, *format), rep.all_pass()))
        }
    };
    match r {
        Ok(o) => o,
        Err(e @ (Error::InvalidAlgebra(_) | Error::NotInClass(_))) => Outcome { output: format!("error: {}\n", e), code: 1 },
        Err(e) => Outcome { output: format!("error: {}\n", e), code: 2 },
    }
}

/// Parse arguments, run, print; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let o = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    if o.code == 2 {
        eprint!("{}", o.output);
    } else {
        let _ = stdout.write_all(o.output.as_bytes());
    }
    o.code
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }
}
