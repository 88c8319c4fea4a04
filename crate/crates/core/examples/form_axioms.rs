//! Transfer, restriction and the randomized axiom checks for all six form
//! parameters, then gluing a form across a pushout square.
use gwcx::exactlin::{Field, Mat};
use gwcx::formcore::{check_form_axioms, glue_pushout_form, restrict, rho, tau, FormParam, PushoutSquare, QForm};

fn main() {
    let f3 = Field::Prime(3);
    let q = FormParam::quadratic();
    let b = Mat::from_i64s(f3, 2, 2, &[1, 2, 1, 0]);
    let xi = tau(q, &b).unwrap();
    println!("tau({b}) = {} with polarization {}", xi.rep(), rho(&xi));

    for field in [Field::Prime(2), Field::Prime(3), Field::Rationals] {
        for param in FormParam::all() {
            println!("{}", check_form_axioms(param, field, 200, 4, 1));
        }
    }

    // D = A ⊕ B' ⊕ C' glued from forms on B = A ⊕ B' and C = A ⊕ C'.
    let id = Mat::identity(f3, 3);
    let s = Mat::from_i64s(f3, 2, 1, &[1, 0]);
    let f = Mat::from_i64s(f3, 2, 1, &[1, 0]);
    let g = id.select_columns(&[0, 1]);
    let t = id.select_columns(&[0, 2]);
    let sq = PushoutSquare { s, f, g: g.clone(), t: t.clone() };
    let whole = QForm::from_i64s(q, f3, 3, &[1, 1, 2, 0, 2, 1, 0, 0, 1]).unwrap();
    let (qb, qc) = (restrict(&g, &whole).unwrap(), restrict(&t, &whole).unwrap());
    let beta = t.transpose().mul(&rho(&whole)).mul(&g);
    let glued = glue_pushout_form(&sq, &qb, &qc, &beta).unwrap();
    println!("glued form {} equals the original: {}", glued.rep(), glued == whole);
}
