//! Certificates for F4 in characteristic 3.

use modsuper::pipeline::{certify_prepared, prepare, Job};

fn main() -> anyhow::Result<()> {
    for (el, target) in [("e4", "g(1,6)"), ("e1", "sl(3|1)")] {
        let prep = prepare(&Job::new("f4", 3, el))?;
        let ss = prep.semisimplify()?;
        let out = certify_prepared(&prep, &ss, Some(target))?;
        let c = &out.certificate;
        println!("F4 at {el} against {target}: {} expected {}", c.superdim, c.expected_superdim);
        println!("  relations {} generation {} odd cubes {}", c.relations_pass, c.generation_pass, c.odd_cubes_pass);
        if let Some(q) = &out.subquotient {
            println!("  generated subquotient {} is {}", q.superdim, q.conclusion);
        }
        println!("  conclusion {}", out.effective);
    }
    Ok(())
}
