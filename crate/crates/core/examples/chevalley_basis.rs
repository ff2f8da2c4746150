//! Integral Chevalley basis and its reduction mod p.

use modsuper::chevalley::{chevalley_by_name, reduce_mod_p};
use modsuper::superalgebra::{check_super_jacobi, check_super_skew};

fn main() -> anyhow::Result<()> {
    let g2 = chevalley_by_name("g2")?;
    println!("G2 has dimension {} and rank {}", g2.dim(), g2.rank());
    for (a, b) in [([1, 0], [0, 1]), ([1, 1], [1, 0]), ([2, 1], [1, 0])] {
        println!("N({a:?}, {b:?}) = {}", g2.structure_constant(&a, &b));
    }
    println!("integral Jacobi violation: {:?}", g2.jacobi_violation());
    let g = reduce_mod_p(&g2, 3)?;
    println!("mod 3: skew {}  Jacobi {}", check_super_skew(&g).pass, check_super_jacobi(&g).pass);
    Ok(())
}
