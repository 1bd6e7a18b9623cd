//! λ-brackets of differential polynomials in the affine PVA of sl₂, computed with the master formula.

use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;
use superdirac::text::parse_poly;

fn main() -> superdirac::Result<()> {
    let p = Pvsa::affine(&LieSuperalgebra::sl2());
    for (a, b) in [("E", "F"), ("H", "H"), ("E", "F*H"), ("d(E)", "F^2"), ("H^2", "d(H)")] {
        let (x, y) = (parse_poly(a, &p.alphabet)?, parse_poly(b, &p.alphabet)?);
        println!("{{{} _λ {}}} = {}", a, b, p.text(&p.bracket(&x, &y)?));
    }
    Ok(())
}
