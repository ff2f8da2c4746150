//! Jordan chains of ad(x) for a nilpotent element, cross-checked against the
//! rank formula.

use modsuper::pipeline::{prepare, Job};
use modsuper::repalpha::rank_formula_counts;

fn main() -> anyhow::Result<()> {
    let prep = prepare(&Job::new("e7", 3, "e1+e2+e7"))?;
    println!("{} at {} via {:?}", prep.source.name, prep.element, prep.route);
    println!("chain counts {:?}", prep.counts());
    println!("rank oracle  {:?}", rank_formula_counts(prep.realization.der(), 3)?);
    for c in prep.decomposition.chains().iter().filter(|c| c.tag().is_some()) {
        println!("  {} heads a J_{}", c.tag().unwrap(), c.len());
    }
    Ok(())
}
