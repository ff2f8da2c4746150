//! Smaller facts around the main results.

use modsuper::algebra::SuperDim;
use modsuper::pipeline::{prepare, Job};
use modsuper::superalgebra::{ideal_closure, is_ideal, odd_annihilator, quotient};

#[test]
fn g2_chevalley_reduction_has_no_odd_ideal() {
    // the short-root ideal survives as (3|2), with a purely odd quotient
    let prep = prepare(&Job::new("g2", 3, "e2")).unwrap();
    let ss = prep.semisimplify().unwrap();
    let g = &ss.algebra;
    assert_eq!(ss.superdim(), SuperDim::new(3, 4));
    assert_eq!(odd_annihilator(g).dim(), 0);
    let short = g.odd_indices().into_iter().map(|x| ideal_closure(g, &[g.basis_vector(x)])).min_by_key(|s| s.dim()).unwrap();
    assert!(is_ideal(g, &short));
    let q = quotient(g, &short).unwrap();
    assert_eq!((short.dim(), q.quotient.superdim()), (5, SuperDim::new(0, 2)));
}

#[test]
fn e8_any_single_node_gives_133_56() {
    for k in 1..=8 {
        let prep = prepare(&Job::new("e8", 3, &format!("e{k}"))).unwrap();
        assert_eq!(prep.counts(), vec![133, 56, 1], "e{k}");
    }
}

#[test]
fn bracket_elements_are_accepted() {
    // [E21, E13] = E23
    let a = prepare(&Job::new("gl3", 3, "[e21, e13]")).unwrap();
    let b = prepare(&Job::new("gl3", 3, "e23")).unwrap();
    assert_eq!(a.counts(), b.counts());
    assert_eq!(a.counts(), vec![2, 2, 1]);
    assert_eq!(a.semisimplify().unwrap().superdim(), SuperDim::new(2, 2));
}
