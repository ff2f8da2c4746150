//! A derivation-based semisimplification where odd cubes do not vanish.

use modsuper::chevalley::free_nilpotent_example;
use modsuper::repalpha::{jordan_decompose, Realization};
use modsuper::semisimplify::semisimplify;
use modsuper::superalgebra::{check_odd_cubes, check_super_jacobi};
use std::sync::Arc;

fn main() -> anyhow::Result<()> {
    let (g, d) = free_nilpotent_example(3)?;
    let r = Realization::from_derivation(Arc::new(g), d)?;
    let dec = jordan_decompose(&r)?;
    let ss = semisimplify(&r, &dec)?;
    println!("chains {:?}, superdimension {}", dec.counts(), ss.superdim());
    println!("super Jacobi {}", check_super_jacobi(&ss.algebra).pass);
    let cubes = check_odd_cubes(&ss.algebra);
    println!("odd cubes vanish: {}", cubes.pass);
    if let Some(w) = cubes.witness {
        println!("  witness {w:?}");
    }
    Ok(())
}
