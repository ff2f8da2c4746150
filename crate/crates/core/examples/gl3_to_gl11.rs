//! gl(3) at an off-diagonal unit matrix semisimplifies to gl(1|1).

use modsuper::pipeline::{prepare, Job};
use modsuper::superalgebra::check_super_jacobi;

fn main() -> anyhow::Result<()> {
    let prep = prepare(&Job::new("gl3", 3, "e23"))?;
    let ss = prep.semisimplify()?;
    let g = &ss.algebra;
    println!("superdimension {}", ss.superdim());
    println!("super Jacobi: {}", check_super_jacobi(g).pass);
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let b = g.bracket_basis(i, j);
            if !b.is_empty() {
                println!("  [{}, {}] = {:?}", g.label(i), g.label(j), b);
            }
        }
    }
    Ok(())
}
