//! Dual complexes, cones and path objects, and the two quasi-isomorphism
//! tests.
use gwcx::chaincx::{
    check_gamma_identities, cone_obj, dualize, is_quis, is_quis_by_homology, path_obj, random_chain_map, random_complex,
};
use gwcx::exactlin::Field;
use gwcx::formcore::Sign;
use gwcx::random;

fn main() {
    let mut rng = random::rng(3);
    let e = random_complex(Field::Prime(3), -1, 1, 2, &mut rng);
    println!("E = {e}\n");
    println!("E^* = {}\n", dualize(&e));
    println!("dualizing twice negates d: {}", dualize(&dualize(&e)).d(1) == e.d(1).neg());
    let (ce, _) = cone_obj(&e);
    let (pe, _) = path_obj(&e);
    println!("cone acyclic: {}, path object homology matches E: {}", ce.is_acyclic(), (-1..=1).all(|n| pe.homology(n) == e.homology(n)));
    for eps in [Sign::Plus, Sign::Minus] {
        println!("gamma identities, epsilon {}: {:?}", eps.value(), check_gamma_identities(&e, eps));
    }
    let (_, g) = gwcx::surgery::basis_change(&e, &mut rng);
    println!("basis change: cone test {}, homology test {}", is_quis(&g), is_quis_by_homology(&g));
    for _ in 0..4 {
        let f = random_complex(Field::Prime(3), -1, 1, 2, &mut rng);
        let m = random_chain_map(&e, &f, &mut rng);
        println!("random map: cone test {}, homology test {}", is_quis(&m), is_quis_by_homology(&m));
    }
}
