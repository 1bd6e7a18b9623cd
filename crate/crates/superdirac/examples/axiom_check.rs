//! Runs the PVA axiom suite on affine osp(1|2) in both flavors.

use superdirac::lie::LieSuperalgebra;
use superdirac::pvsa::Pvsa;
use superdirac::report::Status;
use superdirac::susy::affine_susy;

fn main() {
    let g = LieSuperalgebra::osp12();
    for (name, p) in [("affine", Pvsa::affine(&g)), ("SUSY affine", affine_susy(&g))] {
        let rep = p.check_axioms(7, 10);
        println!("{}: {} pass, {} fail", name, rep.count(Status::Pass), rep.count(Status::Fail));
        for r in rep.failures() {
            println!("  {} {}", r.axiom, r.instance);
        }
    }
}
