//! G2 in characteristic 3. The lattice generated by the Chevalley generators
//! gives an algebra whose semisimplification has a purely odd ideal of
//! dimension (0|2) with quotient (3|2). The Chevalley lattice itself does not.

use modsuper::pipeline::{prepare, Job};
use modsuper::superalgebra::{ideal_closure, odd_annihilator, quotient};

fn main() -> anyhow::Result<()> {
    for alg in ["g2:gen", "g2"] {
        let ss = prepare(&Job::new(alg, 3, "e2"))?.semisimplify()?;
        let g = &ss.algebra;
        let ann = odd_annihilator(g);
        print!("{alg}: {}, odd annihilator of dim {}", ss.superdim(), ann.dim());
        if ann.dim() > 0 {
            let ideal = ideal_closure(g, ann.basis());
            let q = quotient(g, &ideal)?;
            print!(", ideal {} quotient {}", q.parent.superdim().total() - q.quotient.superdim().total(), q.quotient.superdim());
        }
        println!();
    }
    Ok(())
}
