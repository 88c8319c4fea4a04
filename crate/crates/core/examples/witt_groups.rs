//! Witt groups of small prime fields by brute-force classification, and the
//! invariants that detect them.
use gwcx::exactlin::Field;
use gwcx::formcore::{FormParam, QForm};
use gwcx::spaces::{arf, invariants, oracle, witt_class, QSpace};

fn main() {
    let q = FormParam::quadratic();
    for p in [2, 3, 5] {
        let table = oracle::witt_table(Field::Prime(p), q, 3, 100_000, 500, 0).unwrap();
        println!("{table}\n");
    }
    let f2 = Field::Prime(2);
    let plane = QSpace::new(QForm::from_i64s(q, f2, 2, &[1, 1, 0, 1]).unwrap()).unwrap();
    println!("x^2 + xy + y^2 over F2: {} (arf {}), Witt class {}", invariants(&plane), arf(&plane).unwrap(), witt_class(&plane).unwrap());
    let x = QSpace::diagonal(q, Field::Prime(5), &[1, 1, 2]).unwrap();
    println!("<1, 1, 2> over F5: {}, Witt class {}", invariants(&x), witt_class(&x).unwrap());
}
