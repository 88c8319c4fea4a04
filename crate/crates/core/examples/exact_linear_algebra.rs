//! Row reduction, kernels and linear systems over F_p and Q.
use gwcx::exactlin::{Field, Mat};

fn main() {
    let f7 = Field::Prime(7);
    let a = Mat::from_i64s(f7, 3, 4, &[1, 2, 3, 4, 2, 4, 6, 1, 0, 1, 5, 2]);
    let ech = a.rref();
    println!("A over {f7} = {a}");
    println!("rref = {}, pivots {:?}, rank {}", ech.rref, ech.pivots, a.rank());
    let k = a.kernel_basis();
    println!("kernel basis = {k}, A k = {}", a.mul(&k));

    let q = Field::Rationals;
    let m = Mat::from_i64s(q, 3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
    let b = Mat::from_i64s(q, 3, 1, &[1, 0, 0]);
    let x = m.solve(&b).expect("invertible");
    println!("over Q: det = {}, solution of m x = e1 is {x}", m.det().unwrap());
    println!("inverse = {}", m.inverse().unwrap());
    let c = Mat::from_i64s(q, 3, 1, &[1, 1, 1]).complement().unwrap();
    println!("complement of (1 1 1)^T: {c}");
}
