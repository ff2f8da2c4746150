//! E8 at e1+e2+e6+e8 with hand-chosen chain heads, certified as g(3,6).

use modsuper::pipeline::{certify_prepared, prepare, Job, Plan};

fn main() -> anyhow::Result<()> {
    let mut job = Job::new("e8", 3, "e1+e2+e6+e8");
    job.plan = Some(Plan::G36);
    let prep = prepare(&job)?;
    let ss = prep.semisimplify()?;
    println!("counts {:?}, superdimension {}", prep.counts(), ss.superdim());
    let out = certify_prepared(&prep, &ss, Some("g(3,6)"))?;
    println!("{} relations checked, conclusion {}", out.certificate.relations.as_ref().map_or(0, |r| r.checked), out.effective);
    Ok(())
}
