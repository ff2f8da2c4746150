//! Purely even outputs identified through their Cartan type.

use modsuper::pipeline::{certify_prepared, grades_of, prepare, Job};
use modsuper::verify::recognize_even_type;

fn main() -> anyhow::Result<()> {
    let prep = prepare(&Job::new("e7", 3, "e2+e5+e7"))?;
    let ss = prep.semisimplify()?;
    let grades = grades_of(&prep, &ss).expect("root-graded input");
    let t = recognize_even_type(&ss.algebra, &grades)?;
    println!("E7 at e2+e5+e7: {} of type {} (rank {})", ss.superdim(), t.label, t.rank);

    let prep = prepare(&Job::new("e8", 5, "e2+e3+e4"))?;
    let ss = prep.semisimplify()?;
    let out = certify_prepared(&prep, &ss, None)?;
    let even = out.certificate.even_type.clone().unwrap_or_default();
    println!("E8 at e2+e3+e4 mod 5: {} against {}, even part {even}, {}", ss.superdim(), out.target, out.effective);
    Ok(())
}
