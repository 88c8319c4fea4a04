//! Forgetful and hyperbolic functors, forms on morphisms, and metabolic
//! objects with a chosen Lagrangian, all at the level of isometry classes.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat};
use crate::formcore::{restrict, rho, tau, FormParam, QForm};
use crate::random;
use crate::spaces::{gw0_class, GwClass, QSpace};

/// An object `(X, Y)` of the hyperbolic category together with a form on
/// it, which is just a map `X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPair {
    pub x_dim: usize,
    pub y_dim: usize,
    /// `y_dim x x_dim`.
    pub f: Mat,
}

impl HPair {
    pub fn new(f: Mat) -> HPair {
        HPair { x_dim: f.cols(), y_dim: f.rows(), f }
    }
}

/// `X` goes to `(X, X^*)` and the form to its polarization.
pub fn forget(x: &QSpace) -> HPair {
    HPair::new(x.polar().clone())
}

/// `X ⊕ Y^*` with the transfer of the cross term `can_Y f`.
pub fn hyper(param: FormParam, p: &HPair) -> Result<QSpace> {
    let field = p.f.field();
    let b = Mat::block(
        &Mat::zeros(field, p.x_dim, p.x_dim),
        &Mat::zeros(field, p.x_dim, p.y_dim),
        &p.f.scale(&param.eps(field)),
        &Mat::zeros(field, p.y_dim, p.y_dim),
    );
    QSpace::new(tau(param, &b)?)
}

/// A form on the object `f: X -> Y` of the morphism category: a form `xi`
/// on `X` and `a: X -> Y^*` with `f^* a = rho(xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorForm {
    f: Mat,
    xi: QForm,
    a: Mat,
}

impl MorForm {
    pub fn new(f: Mat, xi: QForm, a: Mat) -> Result<MorForm> {
        if xi.n() != f.cols() || a.shape() != f.shape() {
            return Err(Error::dims("MorForm", format!("{}x{}", f.rows(), f.cols()), format!("{}x{}", a.rows(), a.cols())));
        }
        if f.transpose().mul(&a) != rho(&xi) {
            return Err(Error::invariant("MorForm", "f^* a differs from rho(xi)"));
        }
        Ok(MorForm { f, xi, a })
    }

    pub fn f(&self) -> &Mat {
        &self.f
    }

    pub fn xi(&self) -> &QForm {
        &self.xi
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    /// `xi = f•eta` and `a = rho(eta) f + k`, with `k` landing in `ker f^*`.
    pub fn random(param: FormParam, field: Field, x: usize, y: usize, rng: &mut impl Rng) -> MorForm {
        let f = random::matrix(field, y, x, rng);
        let eta = QForm::random(param, field, y, rng);
        let xi = restrict(&f, &eta).expect("shapes agree");
        let ker = f.transpose().kernel_basis();
        let k = ker.mul(&random::matrix(field, ker.cols(), x, rng));
        let a = rho(&eta).mul(&f).add(&k);
        MorForm::new(f, xi, a).expect("constructed to satisfy the constraint")
    }

    /// Transport along isomorphisms `u: X' -> X` and `v: Y' -> Y`:
    /// `(v^{-1} f u, u•xi, v^* a u)`.
    pub fn transport(&self, u: &Mat, v: &Mat) -> Result<MorForm> {
        let vi = v.inverse().ok_or(Error::NotSquare("v must be invertible"))?;
        if !u.is_invertible() {
            return Err(Error::NotSquare("u must be invertible"));
        }
        MorForm::new(vi.mul(&self.f).mul(u), restrict(u, &self.xi)?, v.transpose().mul(&self.a).mul(u))
    }
}

/// `(f: X -> Y)` goes to `(X, Y^*)` and `(xi, a)` to `a`.
pub fn mor_to_hyp(m: &MorForm) -> HPair {
    HPair::new(m.a.clone())
}

/// A space `Y` with a Lagrangian `L`: `L -> Y -> L^*` is exact, the maps
/// being `a` and `a^* rho(xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Object {
    l_incl: Mat,
    xi: QForm,
}

impl S2Object {
    pub fn new(l_incl: Mat, xi: QForm) -> Result<S2Object> {
        let (y, l) = l_incl.shape();
        if xi.n() != y {
            return Err(Error::dims("S2Object", y.to_string(), xi.n().to_string()));
        }
        if l_incl.rank() != l {
            return Err(Error::invariant("S2Object", "Lagrangian columns are dependent"));
        }
        if !restrict(&l_incl, &xi)?.is_zero() {
            return Err(Error::invariant("S2Object", "form does not vanish on L"));
        }
        let proj = l_incl.transpose().mul(&rho(&xi));
        if y != 2 * l || proj.rank() != l {
            return Err(Error::invariant("S2Object", "L -> Y -> L^* is not exact"));
        }
        Ok(S2Object { l_incl, xi })
    }

    pub fn lagrangian(&self) -> &Mat {
        &self.l_incl
    }

    pub fn xi(&self) -> &QForm {
        &self.xi
    }

    pub fn space(&self) -> QSpace {
        QSpace::new(self.xi.clone()).expect("exactness forces nondegeneracy")
    }
}

/// The class of the underlying space, checked against `[H(L)]`.
pub fn s2_class(s: &S2Object) -> Result<GwClass> {
    let x = s.space();
    let c = gw0_class(&x);
    let h = GwClass::hyperbolic(x.field(), x.param(), s.l_incl.cols() as i64);
    if c != h {
        return Err(Error::invariant("s2_class", format!("class {c} is not hyperbolic {h}")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formcore::{Flavor, Sign};
    use crate::spaces::{hyperbolic, invariants, isometric, witt_class};
    use crate::surgery::gen_metabolic;
    use proptest::prelude::*;

    const QP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Quadratic };

    #[test]
    fn forget_examples() {
        let f3 = Field::Prime(3);
        assert_eq!(forget(&QSpace::diagonal(QP, f3, &[1]).unwrap()).f, Mat::from_i64s(f3, 1, 1, &[2]));
        assert_eq!(forget(&hyperbolic(QP, f3, 1)).f, Mat::from_i64s(f3, 2, 2, &[0, 1, 1, 0]));
        let z = forget(&QSpace::zero(QP, f3));
        assert_eq!((z.x_dim, z.y_dim), (0, 0));
    }

    #[test]
    fn hyper_examples() {
        let f3 = Field::Prime(3);
        let h = hyper(QP, &HPair::new(Mat::identity(f3, 1))).unwrap();
        assert!(isometric(&h, &hyperbolic(QP, f3, 1)).unwrap());
        assert_eq!(h, hyperbolic(QP, f3, 1));
        assert!(matches!(hyper(QP, &HPair::new(Mat::zeros(f3, 1, 1))), Err(Error::Degenerate(_))));
        assert_eq!(hyper(QP, &HPair::new(Mat::zeros(f3, 0, 0))).unwrap().rank(), 0);
    }

    #[test]
    fn mor_examples() {
        let f3 = Field::Prime(3);
        let x = QSpace::diagonal(QP, f3, &[1, 2]).unwrap();
        let m = MorForm::new(Mat::identity(f3, 2), x.form().clone(), x.polar().clone()).unwrap();
        assert_eq!(mor_to_hyp(&m), forget(&x));
        // f = 0 forces rho(xi) = 0, which <1> satisfies in characteristic 2
        let f2 = Field::Prime(2);
        let one = QForm::from_i64s(QP, f2, 1, &[1]).unwrap();
        assert!(MorForm::new(Mat::zeros(f2, 1, 1), one.clone(), Mat::from_i64s(f2, 1, 1, &[1])).is_ok());
        let xi3 = QForm::from_i64s(QP, f3, 1, &[1]).unwrap();
        assert!(MorForm::new(Mat::zeros(f3, 1, 1), xi3, Mat::zeros(f3, 1, 1)).is_err());
        let z = MorForm::new(Mat::zeros(f3, 0, 0), QForm::zero(QP, f3, 0), Mat::zeros(f3, 0, 0)).unwrap();
        assert_eq!(mor_to_hyp(&z).f.shape(), (0, 0));
    }

    #[test]
    fn s2_examples() {
        let f5 = Field::Prime(5);
        let e1 = Mat::from_i64s(f5, 2, 1, &[1, 0]);
        let h = S2Object::new(e1.clone(), hyperbolic(QP, f5, 1).form().clone()).unwrap();
        assert_eq!(s2_class(&h).unwrap(), GwClass::hyperbolic(f5, QP, 1));
        let xi = QForm::from_i64s(QP, f5, 2, &[0, 3, 0, 0]).unwrap();
        let s = S2Object::new(e1, xi).unwrap();
        assert_eq!(s2_class(&s).unwrap(), gw0_class(&hyperbolic(QP, f5, 1)));
        assert!(invariants(&s.space()).to_string().contains("square"));
        let nondeg = QForm::from_i64s(QP, f5, 1, &[1]).unwrap();
        assert!(S2Object::new(Mat::zeros(f5, 1, 0), nondeg).is_err());
    }

    #[test]
    fn metabolic_instances_are_s2() {
        for seed in 0..40 {
            for field in [Field::Prime(2), Field::Prime(3), Field::Prime(5)] {
                for param in FormParam::all() {
                    let m = gen_metabolic(seed, (seed % 4) as usize, field, param, false);
                    let s = S2Object::new(m.lagrangian.clone(), m.space.form().clone()).unwrap();
                    s2_class(&s).unwrap();
                }
            }
        }
    }

    proptest! {
        #[test]
        fn hyper_is_witt_trivial(seed in any::<u64>(), n in 0usize..4, p in prop::sample::select(vec![2u64, 3, 5])) {
            let field = Field::Prime(p);
            let mut r = random::rng(seed);
            let f = random::invertible(field, n, &mut r);
            for param in FormParam::all() {
                let x = hyper(param, &HPair::new(f.clone())).unwrap();
                prop_assert_eq!(gw0_class(&x), GwClass::hyperbolic(field, param, n as i64));
                prop_assert!(witt_class(&x).unwrap().is_zero());
                let back = forget(&x).f;
                let eps = param.eps(field);
                let expect = Mat::block(&Mat::zeros(field, n, n), &f.transpose(), &f.scale(&eps), &Mat::zeros(field, n, n));
                prop_assert_eq!(back, expect);
            }
        }

        #[test]
        fn mor_form_naturality(seed in any::<u64>(), x in 0usize..4, y in 0usize..4) {
            let mut r = random::rng(seed);
            for field in [Field::Prime(2), Field::Prime(3), Field::Rationals] {
                for param in FormParam::all() {
                    let m = MorForm::random(param, field, x, y, &mut r);
                    let u = random::invertible(field, x, &mut r);
                    let v = random::invertible(field, y, &mut r);
                    let t = m.transport(&u, &v).unwrap();
                    let back = t.transport(&u.inverse().unwrap(), &v.inverse().unwrap()).unwrap();
                    prop_assert_eq!(back, m);
                }
            }
        }
    }
}
