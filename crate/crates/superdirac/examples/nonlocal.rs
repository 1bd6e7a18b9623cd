//! A non-local bracket {u_λ u} = λ⁻¹: expansions are truncated at λ⁻⁸ and Jacobi is certified.

use superdirac::pvsa::Pvsa;
use superdirac::susy::nonlocal_susy_example;

fn main() {
    for p in [Pvsa::nonlocal_example(), nonlocal_susy_example()] {
        let u = p.gen(0);
        let u2 = u.pow(2);
        match p.bracket(&u2, &u) {
            Ok(s) => println!("{{u² _λ u}} = {}", p.text(&s)),
            Err(e) => println!("{{u² _λ u}}: {}", e),
        }
        println!("skew (u, u²): {:?}", p.skewsymmetry(&u, &u2).map(|r| r.0));
        println!("Jacobi (u, u², u): {:?}", p.jacobi(&u, &u2, &u));
    }
}
