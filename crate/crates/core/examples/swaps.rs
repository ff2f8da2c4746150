//! Swap orbits: every member of an orbit yields the same block counts.

use modsuper::pipeline::swaps;
use modsuper::roots::{cartan_matrix, swap_orbit, Coloring};

fn main() -> anyhow::Result<()> {
    let c = Coloring::new(cartan_matrix("e7")?, [1, 2])?;
    for m in swap_orbit(&c) {
        println!("{:?} via {:?}", m.coloring.black_vec(), m.path);
    }
    let rep = swaps("e7", &[1, 2], false, None)?;
    println!("counts agree across {} members: {}", rep.members.len(), rep.counts_agree);
    Ok(())
}
