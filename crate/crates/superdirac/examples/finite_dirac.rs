//! Finite Dirac reduction on ℂ[p, q, x, y] with {q, p} = 1, {x, p} = y, constrained by q and p.

use superdirac::diffpoly::Flavor;
use superdirac::dirac::{ConstraintSet, FiniteReduction};
use superdirac::pvsa::FinitePoisson;
use superdirac::text::poly_text;
use superdirac::{Alphabet, DiffPoly};

fn main() -> superdirac::Result<()> {
    let a = Alphabet::new(vec!["p".into(), "q".into(), "x".into(), "y".into()], vec![0; 4], Flavor::Plain);
    let (p, q, x, y) = (a.gen(0), a.gen(1), a.gen(2), a.gen(3));
    let (one, z) = (DiffPoly::one(), DiffPoly::zero());
    let table = vec![
        vec![z.clone(), -&one, -&y, z.clone()],
        vec![one.clone(), z.clone(), z.clone(), z.clone()],
        vec![y.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone()],
    ];
    let fp = FinitePoisson::new(a.clone(), table);
    let red = FiniteReduction::new(&fp, ConstraintSet::new(vec![q.clone(), p.clone()])?)?;
    print!("C⁻¹ =\n{}", red.c_inv.text(&a));
    for (l, r, name) in [(&x, &p, "x, p"), (&x, &(&x * &p), "x, xp"), (&(&x * &q), &p, "xq, p"), (&q, &p, "q, p")] {
        println!("{{{}}} = {}   {{{}}}^D = {}", name, poly_text(&fp.bracket(l, r), &a), name, poly_text(&red.bracket(l, r), &a));
    }
    Ok(())
}
