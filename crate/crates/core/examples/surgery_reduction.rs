//! Reducing a Poincaré complex to degree 0 and reading off its class.
use gwcx::exactlin::Field;
use gwcx::formcore::FormParam;
use gwcx::random;
use gwcx::spaces::{gw0_class, invariants};
use gwcx::surgery::{eval_ledger, gw0_of_complex, random_poincare, reduce_full, shifted_hyperbolic};

fn main() {
    let f3 = Field::Prime(3);
    let q = FormParam::quadratic();
    let mut rng = random::rng(7);
    let p = random_poincare(q, f3, 2, 2, &mut rng);
    println!("{p}\n");
    let res = reduce_full(&p).unwrap();
    for step in &res.trace {
        println!("{step}");
    }
    let ledger = eval_ledger(&res.ledger, f3, q).unwrap();
    println!("residue {}, ledger {} = {ledger}", invariants(&res.space), res.ledger);
    println!("class {}", gw0_class(&res.space).add(&ledger).unwrap());

    for m in 0..=3 {
        let c = gw0_of_complex(&shifted_hyperbolic(q, f3, 1, -m)).unwrap();
        println!("[H(1)[{}]] = {c}", -m);
    }
}
