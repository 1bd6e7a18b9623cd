//! Inverts a random matrix pseudodifferential operator and checks both products.

use superdirac::diffpoly::Flavor;
use superdirac::sample;
use superdirac::Alphabet;

fn main() -> superdirac::Result<()> {
    let a = Alphabet::new(vec!["u".into(), "v".into()], vec![0, 1], Flavor::Plain);
    let mut r = sample::rng(11);
    let m = sample::random_invertible(&a, &mut r, &[0, 1, 0], -12);
    let inv = m.invert()?;
    print!("M =\n{}", m.text(&a));
    print!("M⁻¹ =\n{}", inv.text(&a));
    println!("M M⁻¹ = M⁻¹ M = 1: {}", m.verify_inverse(&inv));
    print!("M* =\n{}", m.adjoint().text(&a));
    Ok(())
}
