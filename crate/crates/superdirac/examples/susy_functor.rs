//! The χ-coefficient functor from SUSY affine osp(1|2) to an ordinary PVA on the doubled alphabet.

use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;
use superdirac::susy::{affine_susy, chi_coefficient_functor};

fn main() -> superdirac::Result<()> {
    let g = LieSuperalgebra::osp12();
    let s = affine_susy(&g);
    let img = chi_coefficient_functor(&s);
    println!("generators: {}", img.pvsa.alphabet.names.join(", "));
    let plain = Pvsa::affine(&g);
    for (a, b) in [("e", "f"), ("E", "F"), ("H", "e")] {
        let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
        let (x, y) = (img.embed_d(&plain.gen(i)), img.embed_d(&plain.gen(j)));
        println!("{{D{} _λ D{}}} = {}", a, b, img.pvsa.text(&img.pvsa.bracket(&x, &y)?));
    }
    println!("axioms hold: {}", img.pvsa.check_axioms(3, 5).all_pass());
    Ok(())
}
