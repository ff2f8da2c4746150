//! Exact linear algebra over F_p: rank, kernel, nilpotency and the Jordan
//! block counts of a nilpotent matrix read off from ranks of its powers.

use modsuper::field::FpMatrix;
use modsuper::repalpha::rank_formula_counts;

fn main() -> anyhow::Result<()> {
    let p = 3;
    // a single 3x3 shift plus a 2x2 shift
    let mut n = FpMatrix::zeros(5, 5, p);
    n.set(1, 0, 1);
    n.set(2, 1, 1);
    n.set(4, 3, 1);
    println!("rank {}  nilpotent of degree {}", n.rank(), n.nilpotency_degree()?);
    println!("kernel dimension {}", n.kernel_basis().len());
    println!("blocks J_1..J_p: {:?}", rank_formula_counts(&n, p)?);

    let a = FpMatrix::from_i64(&[vec![2, 1], vec![1, 1]], 5);
    let inv = a.inverse().expect("det 1 is invertible");
    println!("inverse over F_5 times original is identity: {}", inv.mul(&a)? == FpMatrix::identity(2, 5));
    Ok(())
}
