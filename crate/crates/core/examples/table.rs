//! Recompute the expected-results table and report mismatches.

use modsuper::pipeline::{evaluate_table, golden_rows};

fn main() {
    let rows = evaluate_table(&golden_rows());
    for r in &rows {
        for e in &r.elements {
            println!("{:3} {:14} {:?} {} {}", r.row.algebra, e.element, e.counts, e.superdim, if e.pass { "ok" } else { "MISMATCH" });
        }
    }
    println!("{} of {} rows match", rows.iter().filter(|r| r.pass).count(), rows.len());
}
