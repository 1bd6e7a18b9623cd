//! Dirac reduction of affine sl₂ by the Cartan current H.

use superdirac::dirac::{ConstraintSet, Reduction};
use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;

fn main() -> superdirac::Result<()> {
    let g = LieSuperalgebra::sl2();
    let p = Pvsa::affine(&g);
    let h = p.gen(g.index_of("H").unwrap());
    let red = Reduction::dirac(&p, ConstraintSet::new(vec![h.clone()])?)?;
    print!("C(λ) =\n{}", red.c.text(&p.alphabet));
    print!("C⁻¹(λ) =\n{}", red.c_inv.text(&p.alphabet));
    for (i, row) in red.generator_table()?.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            println!("{{{} _λ {}}}^D = {}", g.names[i], g.names[j], red.text(s));
        }
    }
    println!("H central: {}", red.centrality_report(1, 10).all_pass());
    Ok(())
}
