//! Generator brackets of the classical W-algebra of osp(1|2), plain and SUSY, through both reduction paths.

use superdirac::lie::LieSuperalgebra;
use superdirac::w::WSetup;

fn main() -> superdirac::Result<()> {
    let g = LieSuperalgebra::osp12();
    for susy in [false, true] {
        let w = WSetup::new(&g, susy)?;
        let red = w.reduction()?;
        println!("{} W(osp(1|2)): generators {}", if susy { "SUSY" } else { "plain" }, w.quotient.names.join(", "));
        for a in 0..w.quotient.len() {
            for b in 0..w.quotient.len() {
                let s = w.modified_dirac(&red, a, b)?;
                let agree = s.agrees_with(&w.chain_sum(a, b)) && s.agrees_with(&w.w_oracle(a, b));
                println!("  {{{} _{} {}}} = {}   [paths agree: {}]", w.quotient.names[a], if susy { "Λ" } else { "λ" }, w.quotient.names[b], w.text(&s), agree);
            }
        }
    }
    Ok(())
}
