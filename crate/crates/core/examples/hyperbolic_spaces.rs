//! Hyperbolic spaces, the H^mu comparison map, and sublagrangian reduction.
use gwcx::exactlin::{Field, Mat};
use gwcx::formcore::{restrict, FormParam, QForm};
use gwcx::spaces::{h_mu, h_mu_comparison, hyperbolic, invariants, orthogonal_sum, sublagrangian_reduce, witt_decompose, QSpace};

fn main() {
    let f5 = Field::Prime(5);
    let q = FormParam::quadratic();
    let h = hyperbolic(q, f5, 2);
    println!("H(2) over F5: form {}, polarization {}", h.form().rep(), h.polar());

    let mu = QForm::from_i64s(q, f5, 1, &[2]).unwrap();
    let hm = h_mu(&mu);
    let c = h_mu_comparison(&mu);
    let pulled = restrict(&c, hm.form()).unwrap();
    println!("H^mu = {}, pulled back along {c}: {}", hm.form().rep(), pulled.rep());
    println!("equals (-mu) ⊥ mu: {}", pulled == mu.neg().orthogonal_sum(&mu).unwrap());

    let x = orthogonal_sum(&QSpace::diagonal(q, f5, &[1, 2]).unwrap(), &h).unwrap();
    let l = Mat::identity(f5, 6).select_columns(&[2]);
    let r = sublagrangian_reduce(&x, &l).unwrap();
    println!("reducing {} along e3 leaves {}", invariants(&x), invariants(&r));
    let (k, anisotropic) = witt_decompose(&x).unwrap();
    println!("Witt decomposition: {k} hyperbolic planes plus {}", invariants(&anisotropic));
}
