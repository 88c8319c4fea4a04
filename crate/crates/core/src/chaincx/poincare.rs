use std::fmt;

use super::{can_map, cone_of_map, dualize, dualize_map, parity, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::formcore::{restrict, rho, tau, FormParam, QForm};
use crate::spaces::QSpace;

/// A complex `E` with a form `xi` on `E_0` and a symmetric
/// quasi-isomorphism `phi: E -> E^*` such that `d_1•xi = 0` and
/// `rho(xi) = phi_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareComplex {
    param: FormParam,
    complex: ChainComplex,
    xi: QForm,
    phi: ChainMap,
}

fn bad(degree: Option<i64>, detail: impl Into<String>) -> Error {
    Error::Poincare { degree, detail: detail.into() }
}

/// Validates every condition and assembles the complex.
pub fn make_poincare(param: FormParam, complex: ChainComplex, xi: QForm, phi: ChainMap) -> Result<PoincareComplex> {
    if phi.source() != &complex || phi.target() != &dualize(&complex) {
        return Err(bad(None, "phi must be a chain map E -> E^*"));
    }
    if xi.param() != param {
        return Err(Error::ParamMismatch(param.to_string(), xi.param().to_string()));
    }
    if xi.field() != complex.field() {
        return Err(Error::FieldMismatch(complex.field().to_string(), xi.field().to_string()));
    }
    if xi.n() != complex.dim(0) {
        return Err(bad(Some(0), format!("form has rank {} but E_0 has dimension {}", xi.n(), complex.dim(0))));
    }
    let (lo, hi) = complex.window();
    let span = lo.abs().max(hi.abs());
    for i in -span..=span {
        let mirrored = phi.f(-i).transpose().scale_i64(parity(i) * param.epsilon.value());
        if phi.f(i) != mirrored {
            return Err(bad(Some(i), "phi is not symmetric"));
        }
    }
    if !restrict(&complex.d(1), &xi)?.is_zero() {
        return Err(bad(Some(1), "d_1•xi is not zero"));
    }
    if rho(&xi) != phi.f(0) {
        return Err(bad(Some(0), "rho(xi) differs from phi_0"));
    }
    let cone = cone_of_map(&phi);
    let (clo, chi) = cone.window();
    if let Some(n) = (clo..=chi).find(|&n| cone.homology(n) != 0) {
        return Err(bad(Some(n), "phi is not a quasi-isomorphism (cone has homology)"));
    }
    Ok(PoincareComplex { param, complex, xi, phi })
}

impl PoincareComplex {
    pub fn param(&self) -> FormParam {
        self.param
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn xi(&self) -> &QForm {
        &self.xi
    }

    pub fn phi(&self) -> &ChainMap {
        &self.phi
    }

    pub fn field(&self) -> crate::exactlin::Field {
        self.complex.field()
    }

    /// Degreewise direct sum with `xi ⊥ zeta` and `phi ⊕ psi`.
    pub fn orthogonal_sum(&self, other: &PoincareComplex) -> Result<PoincareComplex> {
        let e = self.complex.direct_sum(&other.complex);
        let xi = self.xi.orthogonal_sum(&other.xi)?;
        let ed = dualize(&e);
        let phi = ChainMap::new(&e, &ed, |n| self.phi.f(n).block_diag(&other.phi.f(n)))?;
        make_poincare(self.param, e, xi, phi)
    }

    /// Pullback along a quasi-isomorphism `g: F -> E`, validated.
    pub fn pullback(&self, g: &ChainMap) -> Result<PoincareComplex> {
        let (xi, phi) = restrict_poincare(g, self)?;
        make_poincare(self.param, g.source().clone(), xi, phi)
    }

    /// Same data on a larger window.
    pub fn with_window(&self, lo: i64, hi: i64) -> Result<PoincareComplex> {
        let e = self.complex.with_window(lo, hi)?;
        let ed = dualize(&e);
        let phi = ChainMap::new(&e, &ed, |n| self.phi.f(n))?;
        make_poincare(self.param, e, self.xi.clone(), phi)
    }
}

impl fmt::Display for PoincareComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Poincare complex ({})", self.param)?;
        writeln!(f, "{}", self.complex)?;
        writeln!(f, "xi = {}", self.xi.rep())?;
        write!(f, "{}", self.phi)
    }
}

/// `(g_0•xi, g^* phi g)` for `g: F -> E`.
pub fn restrict_poincare(g: &ChainMap, p: &PoincareComplex) -> Result<(QForm, ChainMap)> {
    if g.target() != &p.complex {
        return Err(Error::invariant("restrict_poincare", "map does not land in the complex"));
    }
    let xi = restrict(&g.f(0), &p.xi)?;
    let phi = dualize_map(g).compose(&p.phi)?.compose(g)?;
    Ok((xi, phi))
}

/// `tau(f) = (tau(f_0), f + f^* can_E)` for `f: E -> E^*`.
pub fn tau_cx(param: FormParam, f: &ChainMap) -> Result<(QForm, ChainMap)> {
    let e = f.source();
    if f.target() != &dualize(e) {
        return Err(Error::invariant("tau_cx", "map must go from E to E^*"));
    }
    let xi = tau(param, &f.f(0))?;
    let sym = dualize_map(f).compose(&can_map(e, param.epsilon))?;
    Ok((xi, f.add(&sym)?))
}

/// The space as a complex concentrated in degree 0.
pub fn embed_degree0(x: &QSpace) -> PoincareComplex {
    let e = ChainComplex::concentrated(x.field(), 0, x.rank());
    let ed = dualize(&e);
    let polar = x.polar().clone();
    let phi = ChainMap::new(&e, &ed, |n| if n == 0 { polar.clone() } else { Mat::zeros(x.field(), 0, 0) })
        .expect("degree 0 map");
    make_poincare(x.param(), e, x.form().clone(), phi).expect("a space is a Poincare complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::random_complex;
    use crate::exactlin::Field;
    use crate::formcore::{Flavor, Sign};
    use crate::random;
    use crate::spaces::hyperbolic;

    const QP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Quadratic };

    #[test]
    fn embed_examples() {
        let f3 = Field::Prime(3);
        let z = embed_degree0(&QSpace::zero(QP, f3));
        assert!(z.complex().is_zero());
        let h = embed_degree0(&hyperbolic(QP, f3, 1));
        assert_eq!(h.complex().dim(0), 2);
        let id = ChainMap::identity(h.complex());
        assert_eq!(h.pullback(&id).unwrap(), h);
    }

    #[test]
    fn tau_example() {
        let f3 = Field::Prime(3);
        let e = ChainComplex::concentrated(f3, 0, 1);
        let f = ChainMap::new(&e, &dualize(&e), |_| Mat::from_i64s(f3, 1, 1, &[1])).unwrap();
        let (xi, phi) = tau_cx(QP, &f).unwrap();
        assert_eq!(xi.rep(), &Mat::from_i64s(f3, 1, 1, &[1]));
        assert_eq!(phi.f(0), Mat::from_i64s(f3, 1, 1, &[2]));
    }

    #[test]
    fn rejects_broken_data() {
        let f3 = Field::Prime(3);
        let e = ChainComplex::concentrated(f3, 0, 1);
        let ed = dualize(&e);
        let xi = QForm::from_i64s(QP, f3, 1, &[1]).unwrap();
        let wrong = ChainMap::new(&e, &ed, |_| Mat::from_i64s(f3, 1, 1, &[1])).unwrap();
        assert_eq!(make_poincare(QP, e.clone(), xi.clone(), wrong).unwrap_err(), bad(Some(0), "rho(xi) differs from phi_0"));
        let zero = ChainMap::zero(&e, &ed);
        let z = QForm::zero(QP, f3, 1);
        assert!(matches!(make_poincare(QP, e, z, zero), Err(Error::Poincare { .. })));
    }

    #[test]
    fn chain_level_rho_tau() {
        let mut r = random::rng(9);
        for eps in [Sign::Plus, Sign::Minus] {
            let param = FormParam::new(Flavor::Quadratic, eps);
            let e = random_complex(Field::Prime(5), -2, 2, 2, &mut r);
            let ed = dualize(&e);
            let f = crate::chaincx::random_chain_map(&e, &ed, &mut r);
            let (xi, phi) = tau_cx(param, &f).unwrap();
            assert_eq!(rho(&xi), phi.f(0));
            let sym = dualize_map(&phi).compose(&can_map(&e, eps)).unwrap();
            assert_eq!(sym, phi);
        }
    }
}
