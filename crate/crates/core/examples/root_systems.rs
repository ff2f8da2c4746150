//! Cartan matrices, positive roots, admissible black subsets and the
//! modified Cartan matrix they induce.

use modsuper::roots::{admissible_subsets, cartan_matrix, derive_tilde, positive_roots};
use std::collections::BTreeSet;

fn main() -> anyhow::Result<()> {
    for name in ["g2", "f4", "e6", "e7", "e8"] {
        let rs = positive_roots(&cartan_matrix(name)?)?;
        println!("{name}: {} positive roots, highest {:?}", rs.len(), rs.highest().coords);
    }
    let e6 = cartan_matrix("e6")?;
    println!("admissible subsets of E6: {:?}", admissible_subsets(&e6));
    let (tilde, nodes) = derive_tilde(&e6, &[1, 2])?;
    println!("nodes kept {nodes:?}");
    for row in tilde.entries() {
        println!("  {row:?}");
    }
    println!("{}", tilde.render_ascii(&BTreeSet::new()));
    Ok(())
}
