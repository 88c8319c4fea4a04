//! Forgetful and hyperbolic functors, forms on morphisms, and spaces with a
//! chosen Lagrangian.
use gwcx::exactlin::{Field, Mat};
use gwcx::formcore::FormParam;
use gwcx::functors::{forget, hyper, mor_to_hyp, s2_class, HPair, MorForm, S2Object};
use gwcx::random;
use gwcx::spaces::QSpace;
use gwcx::surgery::gen_metabolic;

fn main() {
    let f3 = Field::Prime(3);
    let q = FormParam::quadratic();
    let x = QSpace::diagonal(q, f3, &[1, 2]).unwrap();
    println!("forget <1, 2> = {}", forget(&x).f);
    let f = Mat::from_i64s(f3, 2, 2, &[1, 1, 0, 1]);
    let h = hyper(q, &HPair::new(f)).unwrap();
    println!("hyper of (1 1; 0 1): form {}, polarization {}", h.form().rep(), h.polar());

    let mut rng = random::rng(1);
    let m = MorForm::random(q, f3, 2, 3, &mut rng);
    println!("form on f = {}: xi {}, a {}, image pair {:?}", m.f(), m.xi().rep(), m.a(), (mor_to_hyp(&m).x_dim, mor_to_hyp(&m).y_dim));

    let meta = gen_metabolic(2, 2, f3, q, false);
    let s = S2Object::new(meta.lagrangian, meta.space.form().clone()).unwrap();
    println!("metabolic space with Lagrangian has class {}", s2_class(&s).unwrap());
}
