//! Metabolic spaces, quasi-isomorphism perturbations, and the randomized
//! check of the relations presenting GW_0.
use gwcx::exactlin::Field;
use gwcx::formcore::FormParam;
use gwcx::spaces::gw0_class;
use gwcx::surgery::{check_presentation, gen_metabolic, gen_quis_perturb, gw0_of_complex};

fn main() {
    let f5 = Field::Prime(5);
    let q = FormParam::quadratic();
    let m = gen_metabolic(4, 2, f5, q, true);
    println!("metabolic space {} with Lagrangian {}", m.space.form().rep(), m.lagrangian);
    println!("widened to window {:?}, class {}", m.complex.complex().window(), gw0_of_complex(&m.complex).unwrap());
    let (moved, _) = gen_quis_perturb(5, &m.complex);
    println!("after another perturbation: window {:?}, class {}", moved.complex().window(), gw0_of_complex(&moved).unwrap());
    println!("class of the space itself: {}", gw0_class(&m.space));
    for (field, param) in [(Field::Prime(2), q), (Field::Prime(3), FormParam::symmetric()), (f5, q)] {
        println!("{field} {param}: {}", check_presentation(field, param, 50, 1));
    }
}
