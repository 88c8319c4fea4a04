//! Nondegenerate forms on `R^n`: hyperbolic spaces, orthogonal sums,
//! sublagrangian reduction, Witt decomposition and classification.

pub mod oracle;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{squarefree_part, Field, Mat, Scalar};
use crate::formcore::{restrict, rho, tau, Flavor, FormParam, QForm};

/// A form whose polarization is invertible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSpace {
    form: QForm,
    polar: Mat,
}

impl QSpace {
    pub fn new(form: QForm) -> Result<QSpace> {
        let polar = rho(&form);
        if !polar.is_invertible() {
            return Err(Error::Degenerate(format!("polarization of {form} is singular")));
        }
        Ok(QSpace { form, polar })
    }

    pub fn zero(param: FormParam, field: Field) -> QSpace {
        QSpace::new(QForm::zero(param, field, 0)).expect("zero space")
    }

    /// `<a_1, ..., a_n>`: the form with diagonal representative.
    pub fn diagonal(param: FormParam, field: Field, entries: &[i64]) -> Result<QSpace> {
        let n = entries.len();
        let rep = Mat::from_fn(field, n, n, |i, j| {
            if i == j {
                field.from_i64(entries[i])
            } else {
                field.zero()
            }
        });
        QSpace::new(QForm::new(param, rep)?)
    }

    pub fn form(&self) -> &QForm {
        &self.form
    }

    pub fn polar(&self) -> &Mat {
        &self.polar
    }

    pub fn rank(&self) -> usize {
        self.form.n()
    }

    pub fn param(&self) -> FormParam {
        self.form.param()
    }

    pub fn field(&self) -> Field {
        self.form.field()
    }

    /// `(X, -xi)`.
    pub fn negate(&self) -> QSpace {
        QSpace {
            form: self.form.neg(),
            polar: self.polar.neg(),
        }
    }

    /// Pullback along an invertible change of basis.
    pub fn transform(&self, g: &Mat) -> Result<QSpace> {
        if !g.is_invertible() {
            return Err(Error::invariant("transform", "change of basis is singular"));
        }
        QSpace::new(restrict(g, &self.form)?)
    }
}

impl fmt::Display for QSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// `H(R^k)`: `R^k ⊕ (R^k)^*` with form `tau([[0, 0], [epsilon, 0]])`, so the
/// polarization is `[[0, 1], [epsilon, 0]]`.
pub fn hyperbolic(param: FormParam, field: Field, k: usize) -> QSpace {
    let z = Mat::zeros(field, k, k);
    let b = Mat::block(&z, &z, &Mat::identity(field, k).scale(&param.eps(field)), &z);
    QSpace::new(tau(param, &b).expect("square")).expect("hyperbolic is nondegenerate")
}

/// `H^mu(M) = (M ⊕ M^*, p_M•mu + h_M)` with `h_M = tau(p_M^T p_{M^*})`.
/// Polarization `[[rho(mu), 1], [epsilon, 0]]`.
pub fn h_mu(mu: &QForm) -> QSpace {
    let (param, field, m) = (mu.param(), mu.field(), mu.n());
    let id = Mat::identity(field, 2 * m);
    let p_m = id.submatrix(0..m, 0..2 * m);
    let p_dual = id.submatrix(m..2 * m, 0..2 * m);
    let h = tau(param, &p_m.transpose().mul(&p_dual)).expect("square");
    let form = restrict(&p_m, mu).expect("shape").add(&h).expect("same space");
    QSpace::new(form).expect("H^mu is nondegenerate")
}

/// The map `M ⊕ M -> M ⊕ M^*`, `(-1 1; rho(mu) 0)`, pulling `H^mu` back to
/// `(-mu) ⊥ mu`.
pub fn h_mu_comparison(mu: &QForm) -> Mat {
    let (field, m) = (mu.field(), mu.n());
    let id = Mat::identity(field, m);
    Mat::block(&id.neg(), &id, &rho(mu), &Mat::zeros(field, m, m))
}

pub fn orthogonal_sum(a: &QSpace, b: &QSpace) -> Result<QSpace> {
    Ok(QSpace {
        form: a.form.orthogonal_sum(&b.form)?,
        polar: a.polar.block_diag(&b.polar),
    })
}

/// `L^⊥` as a basis matrix: kernel of `L^T rho(xi)`.
pub fn orthogonal(x: &QSpace, l: &Mat) -> Mat {
    l.transpose().mul(&x.polar).kernel_basis()
}

/// The nondegenerate form induced on `L^⊥ / L`, realized on a complement
/// of `L` inside `L^⊥`.
pub fn sublagrangian_reduce(x: &QSpace, l: &Mat) -> Result<QSpace> {
    if l.rows() != x.rank() {
        return Err(Error::dims("sublagrangian_reduce", x.rank(), l.rows()));
    }
    if l.rank() != l.cols() {
        return Err(Error::DependentColumns);
    }
    if !l.transpose().mul(&x.polar).mul(l).is_zero() {
        return Err(Error::NotSublagrangian);
    }
    if !restrict(l, &x.form)?.is_zero() {
        return Err(Error::NotIsotropic);
    }
    let perp = orthogonal(x, l);
    let inside = perp.solve(l).map_err(|_| Error::NotSublagrangian)?;
    let w = perp.mul(&inside.complement()?);
    QSpace::new(restrict(&w, &x.form)?)
}

/// Nonzero vectors up to scaling, first nonzero coordinate 1, in
/// lexicographic order. Only for finite fields.
pub(crate) fn projective_points(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let p = field.characteristic();
    assert!(p > 0, "finite field required");
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (p as usize).pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![Scalar::Fp(0); n];
            v[lead] = Scalar::Fp(1);
            for slot in v.iter_mut().skip(lead + 1).rev() {
                *slot = Scalar::Fp((idx % p as usize) as u64);
                idx /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

pub fn is_isotropic(x: &QSpace, v: &Mat) -> bool {
    restrict(v, &x.form).map(|q| q.is_zero()).unwrap_or(false)
}

/// A nonzero isotropic vector, searched over projective points: all of
/// them in rank <= 2, those in the first three coordinates otherwise (a
/// ternary quadratic form over a finite field always has a zero).
pub fn find_isotropic(x: &QSpace) -> Option<Mat> {
    let field = x.field();
    let n = x.rank();
    let m = n.min(3);
    for pt in projective_points(field, m) {
        let mut v = pt;
        v.resize(n, field.zero());
        let v = Mat::column_vector(field, v);
        if is_isotropic(x, &v) {
            return Some(v);
        }
    }
    None
}

/// Splits off hyperbolic planes: `x ≅ H^k ⊥ kernel` with `kernel`
/// anisotropic of rank at most 2.
pub fn witt_decompose(x: &QSpace) -> Result<(usize, QSpace)> {
    if !x.field().is_finite() {
        return Err(Error::Unsupported("Witt decomposition over Q".into()));
    }
    let mut k = 0;
    let mut cur = x.clone();
    while let Some(v) = find_isotropic(&cur) {
        cur = sublagrangian_reduce(&cur, &v)?;
        k += 1;
    }
    if cur.rank() > 2 {
        return Err(Error::invariant("witt_decompose", format!("no isotropic vector in rank {}", cur.rank())));
    }
    Ok((k, cur))
}

/// Isometry invariant beyond the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceInvariant {
    /// Square class of `det rho(xi)` over odd `F_p`.
    Disc { square: bool },
    /// Arf invariant over `F_2`, quadratic flavor.
    Arf(u8),
    /// Over `F_2`, symmetric flavor: whether the bilinear form is alternating.
    Alternating(bool),
    /// Over `F_2`, even flavor: rank is everything.
    None,
    /// Over `Q`: signature and squarefree part of `det rho(xi)`.
    Rational { signature: i64, disc: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariants {
    pub rank: usize,
    pub kind: SpaceInvariant,
}

impl fmt::Display for SpaceInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceInvariant::Disc { square: true } => write!(f, "disc square"),
            SpaceInvariant::Disc { square: false } => write!(f, "disc nonsquare"),
            SpaceInvariant::Arf(a) => write!(f, "arf {a}"),
            SpaceInvariant::Alternating(a) => write!(f, "alternating {a}"),
            SpaceInvariant::None => Ok(()),
            SpaceInvariant::Rational { signature, disc } => write!(f, "signature {signature}, disc {disc}"),
        }
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceInvariant::None => write!(f, "rank {}", self.rank),
            _ => write!(f, "rank {}, {}", self.rank, self.kind),
        }
    }
}

/// `q(v)` for a single vector over `F_2`.
fn value_f2(x: &QSpace, v: &[Scalar]) -> u8 {
    let m = Mat::column_vector(x.field(), v.to_vec());
    let q = restrict(&m, &x.form).expect("shape");
    match q.rep().get(0, 0) {
        Scalar::Fp(a) => *a as u8,
        Scalar::Q(_) => unreachable!(),
    }
}

/// Arf invariant via a symplectic basis `(a_i, b_i)` of the polarization:
/// `sum q(a_i) q(b_i)`.
pub fn arf(x: &QSpace) -> Result<u8> {
    if x.field() != Field::Prime(2) || x.param().flavor != Flavor::Quadratic {
        return Err(Error::Unsupported("Arf invariant needs F2 and quadratic flavor".into()));
    }
    let f = x.field();
    let b = |u: &[Scalar], v: &[Scalar]| -> Scalar {
        let cu = Mat::column_vector(f, u.to_vec());
        let cv = Mat::column_vector(f, v.to_vec());
        cu.transpose().mul(&x.polar).mul(&cv).get(0, 0).clone()
    };
    let n = x.rank();
    let id = Mat::identity(f, n);
    let mut basis: Vec<Vec<Scalar>> = (0..n).map(|j| id.column(j).entries().to_vec()).collect();
    let mut total = 0u8;
    while let Some(a) = basis.first().cloned() {
        let j = (1..basis.len())
            .find(|&j| b(&a, &basis[j]) == f.one())
            .ok_or_else(|| Error::Degenerate("no symplectic partner".into()))?;
        let bv = basis[j].clone();
        total ^= value_f2(x, &a) & value_f2(x, &bv);
        let rest: Vec<Vec<Scalar>> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 0 && *i != j)
            .map(|(_, v)| {
                let (cb, ca) = (b(v, &bv), b(v, &a));
                v.iter()
                    .zip(a.iter().zip(&bv))
                    .map(|(vi, (ai, bi))| f.add(vi, &f.add(&f.mul(&cb, ai), &f.mul(&ca, bi))))
                    .collect()
            })
            .collect();
        basis = rest;
    }
    Ok(total)
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
fn signature(m: &Mat) -> i64 {
    let f = m.field();
    let mut a = m.clone();
    let mut sig = 0i64;
    let mut n = a.rows();
    while n > 0 {
        let pivot = (0..n).find(|&i| *a.get(i, i) != f.zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| *a.get(i, j) != f.zero())
                else {
                    break;
                };
                // e_i <- e_i + e_j makes the diagonal entry 2 a_ij
                let mut t = Mat::identity(f, n);
                t.set(j, i, f.one());
                a = t.transpose().mul(&a).mul(&t);
                i
            }
        };
        sig += a.get(p, p).sign().unwrap_or(0) as i64;
        let piv = a.get(p, p).clone();
        let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let next = Mat::from_fn(f, n - 1, n - 1, |r, c| {
            let (i, j) = (others[r], others[c]);
            let corr = f.div(&f.mul(a.get(i, p), a.get(p, j)), &piv).unwrap();
            f.sub(a.get(i, j), &corr)
        });
        a = next;
        n -= 1;
    }
    sig
}

pub fn invariants(x: &QSpace) -> Invariants {
    let field = x.field();
    let rank = x.rank();
    let kind = match field {
        Field::Prime(2) => match x.param().flavor {
            Flavor::Quadratic => SpaceInvariant::Arf(arf(x).expect("nondegenerate")),
            Flavor::Symmetric => {
                let alt = (0..rank).all(|i| *x.polar.get(i, i) == field.zero());
                SpaceInvariant::Alternating(alt)
            }
            Flavor::Even => SpaceInvariant::None,
        },
        Field::Prime(_) => {
            let d = x.polar.det().expect("square");
            SpaceInvariant::Disc { square: field.is_square(&d) }
        }
        Field::Rationals => {
            let d = x.polar.det().expect("square");
            let Scalar::Q(d) = d else { unreachable!() };
            let signature = if x.param().eps_is_one(field) { signature(&x.polar) } else { 0 };
            SpaceInvariant::Rational { signature, disc: squarefree_part(&d) }
        }
    };
    Invariants { rank, kind }
}

/// Invariant part of a Grothendieck-Witt class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GwInvariant {
    Disc { square: bool },
    Arf(u8),
    /// The rank determines the class.
    Trivial,
    Rational { signature: i64, disc: BigInt },
}

/// An element of `GW_0`, described by its invariants. Ranks are virtual.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwClass {
    pub field: Field,
    pub param: FormParam,
    pub rank: i64,
    pub inv: GwInvariant,
}

impl GwClass {
    pub fn zero(field: Field, param: FormParam) -> GwClass {
        let inv = match field {
            Field::Prime(2) if param.flavor == Flavor::Quadratic => GwInvariant::Arf(0),
            Field::Prime(2) => GwInvariant::Trivial,
            Field::Prime(_) => GwInvariant::Disc { square: true },
            Field::Rationals => GwInvariant::Rational { signature: 0, disc: BigInt::one() },
        };
        GwClass { field, param, rank: 0, inv }
    }

    pub fn add(&self, other: &GwClass) -> Result<GwClass> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.param != other.param {
            return Err(Error::ParamMismatch(self.param.to_string(), other.param.to_string()));
        }
        let inv = match (&self.inv, &other.inv) {
            (GwInvariant::Disc { square: a }, GwInvariant::Disc { square: b }) => GwInvariant::Disc { square: a == b },
            (GwInvariant::Arf(a), GwInvariant::Arf(b)) => GwInvariant::Arf(a ^ b),
            (GwInvariant::Trivial, GwInvariant::Trivial) => GwInvariant::Trivial,
            (
                GwInvariant::Rational { signature: s1, disc: d1 },
                GwInvariant::Rational { signature: s2, disc: d2 },
            ) => GwInvariant::Rational {
                signature: s1 + s2,
                disc: squarefree_part(&num_rational::BigRational::from_integer(d1 * d2)),
            },
            _ => unreachable!("invariant kind is fixed by field and parameter"),
        };
        Ok(GwClass { field: self.field, param: self.param, rank: self.rank + other.rank, inv })
    }

    pub fn neg(&self) -> GwClass {
        let inv = match &self.inv {
            GwInvariant::Rational { signature, disc } => GwInvariant::Rational { signature: -signature, disc: disc.clone() },
            other => other.clone(),
        };
        GwClass { rank: -self.rank, inv, ..self.clone() }
    }

    pub fn sub(&self, other: &GwClass) -> Result<GwClass> {
        self.add(&other.neg())
    }

    /// `k` times this class.
    pub fn times(&self, k: i64) -> GwClass {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut acc = GwClass::zero(self.field, self.param);
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base).expect("same kind");
        }
        acc
    }

    /// `k [H(R)]`.
    pub fn hyperbolic(field: Field, param: FormParam, k: i64) -> GwClass {
        gw0_class(&hyperbolic(param, field, 1)).times(k)
    }
}

impl fmt::Display for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank)?;
        match &self.inv {
            GwInvariant::Disc { square: true } => write!(f, ", disc square"),
            GwInvariant::Disc { square: false } => write!(f, ", disc nonsquare"),
            GwInvariant::Arf(a) => write!(f, ", arf {a}"),
            GwInvariant::Trivial => Ok(()),
            GwInvariant::Rational { signature, disc } => write!(f, ", signature {signature}, disc {disc}"),
        }
    }
}

pub fn gw0_class(x: &QSpace) -> GwClass {
    let inv = match invariants(x).kind {
        SpaceInvariant::Disc { square } => GwInvariant::Disc { square },
        SpaceInvariant::Arf(a) => GwInvariant::Arf(a),
        // <1> ⊥ <1> is metabolic over F2, and equals H in GW_0.
        SpaceInvariant::Alternating(_) | SpaceInvariant::None => GwInvariant::Trivial,
        SpaceInvariant::Rational { signature, disc } => GwInvariant::Rational { signature, disc },
    };
    GwClass { field: x.field(), param: x.param(), rank: x.rank() as i64, inv }
}

/// A Witt class, described by the invariants of its anisotropic kernel.
#[derive(Clone, Debug)]
pub struct WittClass {
    kernel: QSpace,
    inv: Invariants,
}

impl PartialEq for WittClass {
    fn eq(&self, other: &Self) -> bool {
        self.kernel.field() == other.kernel.field() && self.kernel.param() == other.kernel.param() && self.inv == other.inv
    }
}

impl Eq for WittClass {}

impl std::hash::Hash for WittClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kernel.field().hash(state);
        self.kernel.param().hash(state);
        self.inv.hash(state);
    }
}

impl WittClass {
    pub fn kernel(&self) -> &QSpace {
        &self.kernel
    }

    pub fn kernel_invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn is_zero(&self) -> bool {
        self.inv.rank == 0
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "[{}]", self.inv)
        }
    }
}

pub fn witt_class(x: &QSpace) -> Result<WittClass> {
    let (_, kernel) = witt_decompose(x)?;
    let inv = invariants(&kernel);
    Ok(WittClass { kernel, inv })
}

pub fn witt_add(a: &WittClass, b: &WittClass) -> Result<WittClass> {
    witt_class(&orthogonal_sum(&a.kernel, &b.kernel)?)
}

/// Isometry test by complete invariants; finite fields only.
pub fn isometric(a: &QSpace, b: &QSpace) -> Result<bool> {
    if !a.field().is_finite() || !b.field().is_finite() {
        return Err(Error::Unsupported("isometry over Q is not decided by the computed invariants".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if a.param() != b.param() {
        return Err(Error::ParamMismatch(a.param().to_string(), b.param().to_string()));
    }
    Ok(invariants(a) == invariants(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formcore::Sign;
    use crate::random;
    use proptest::prelude::*;

    const QP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Quadratic };

    fn f(p: u64) -> Field {
        Field::Prime(p)
    }

    fn m(p: u64, r: usize, c: usize, e: &[i64]) -> Mat {
        Mat::from_i64s(f(p), r, c, e)
    }

    #[test]
    fn hyperbolic_examples() {
        let h = hyperbolic(QP, f(3), 1);
        assert_eq!(h.polar(), &m(3, 2, 2, &[0, 1, 1, 0]));
        assert!(canonical(QP, h.form(), &m(3, 2, 2, &[0, 0, 1, 0])));
        assert_eq!(hyperbolic(QP, f(3), 0).rank(), 0);
        let h2 = hyperbolic(QP, f(2), 1);
        let vals: Vec<u8> = [[1, 0], [0, 1], [1, 1]].iter().map(|v| value_f2(&h2, &[Scalar::Fp(v[0]), Scalar::Fp(v[1])])).collect();
        assert_eq!(vals, vec![0, 0, 1]);
        let alt = FormParam::new(Flavor::Quadratic, Sign::Minus);
        assert_eq!(hyperbolic(alt, f(5), 1).polar(), &m(5, 2, 2, &[0, 1, 4, 0]));
    }

    fn canonical(param: FormParam, q: &QForm, raw: &Mat) -> bool {
        crate::formcore::canonicalize_eq(param, q.rep(), raw).unwrap()
    }

    #[test]
    fn h_mu_examples() {
        let z = QForm::zero(QP, f(5), 2);
        assert_eq!(h_mu(&z), hyperbolic(QP, f(5), 2));
        let one = QForm::from_i64s(QP, f(3), 1, &[1]).unwrap();
        let x = h_mu(&one);
        assert!(canonical(QP, x.form(), &m(3, 2, 2, &[1, 0, 1, 0])));
        assert_eq!(x.polar(), &m(3, 2, 2, &[2, 1, 1, 0]));
        let v = h_mu_comparison(&one);
        let expected = one.neg().orthogonal_sum(&one).unwrap();
        assert_eq!(restrict(&v, x.form()).unwrap(), expected);
    }

    #[test]
    fn orthogonal_sum_examples() {
        let one = QSpace::diagonal(QP, f(3), &[1]).unwrap();
        let s = orthogonal_sum(&one, &one).unwrap();
        assert_eq!(invariants(&s), Invariants { rank: 2, kind: SpaceInvariant::Disc { square: true } });
        assert_eq!(orthogonal_sum(&one, &QSpace::zero(QP, f(3))).unwrap(), one);
        let h = hyperbolic(QP, f(3), 1);
        assert!(witt_class(&orthogonal_sum(&h, &h).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn sublagrangian_examples() {
        let h = hyperbolic(QP, f(5), 1);
        assert_eq!(sublagrangian_reduce(&h, &m(5, 2, 1, &[1, 0])).unwrap().rank(), 0);
        let one = QSpace::diagonal(QP, f(3), &[1]).unwrap();
        let x = orthogonal_sum(&one, &hyperbolic(QP, f(3), 1)).unwrap();
        assert_eq!(sublagrangian_reduce(&x, &m(3, 3, 1, &[0, 1, 0])).unwrap(), one);
        assert_eq!(sublagrangian_reduce(&x, &Mat::zeros(f(3), 3, 0)).unwrap(), x);
        assert_eq!(sublagrangian_reduce(&x, &m(3, 3, 1, &[1, 0, 0])), Err(Error::NotSublagrangian));
        // isotropic for the polarization but not for the form
        let h2 = hyperbolic(QP, f(2), 1);
        assert_eq!(sublagrangian_reduce(&h2, &m(2, 2, 1, &[1, 1])), Err(Error::NotIsotropic));
    }

    #[test]
    fn witt_decompose_examples() {
        let (k, ker) = witt_decompose(&hyperbolic(QP, f(3), 2)).unwrap();
        assert_eq!((k, ker.rank()), (2, 0));
        let two = QSpace::diagonal(QP, f(3), &[1, 1]).unwrap();
        assert_eq!(witt_decompose(&two).unwrap(), (0, two));
        let aniso = QSpace::new(QForm::from_i64s(QP, f(2), 2, &[1, 1, 0, 1]).unwrap()).unwrap();
        assert_eq!(witt_decompose(&aniso).unwrap(), (0, aniso));
        let q = QSpace::diagonal(QP, Field::Rationals, &[1]).unwrap();
        assert!(matches!(witt_decompose(&q), Err(Error::Unsupported(_))));
    }

    #[test]
    fn invariant_examples() {
        let one = QSpace::diagonal(QP, f(3), &[1]).unwrap();
        assert_eq!(invariants(&one).kind, SpaceInvariant::Disc { square: false });
        assert_eq!(invariants(&hyperbolic(QP, f(2), 1)).kind, SpaceInvariant::Arf(0));
        let aniso = QSpace::new(QForm::from_i64s(QP, f(2), 2, &[1, 1, 0, 1]).unwrap()).unwrap();
        assert_eq!(invariants(&aniso), Invariants { rank: 2, kind: SpaceInvariant::Arf(1) });
        let q = QSpace::diagonal(FormParam::symmetric(), Field::Rationals, &[1, -2, 3]).unwrap();
        assert_eq!(
            invariants(&q).kind,
            SpaceInvariant::Rational { signature: 1, disc: BigInt::from(-6) }
        );
    }

    #[test]
    fn isometry_examples() {
        let a = QSpace::diagonal(QP, f(3), &[1, 2]).unwrap();
        assert!(isometric(&a, &hyperbolic(QP, f(3), 1)).unwrap());
        assert!(oracle::isometric_bruteforce(&a, &hyperbolic(QP, f(3), 1)).is_some());
        let q = QSpace::diagonal(QP, Field::Rationals, &[1]).unwrap();
        assert!(isometric(&q, &q).is_err());
    }

    #[test]
    fn gw_law() {
        let h = GwClass::hyperbolic(f(3), QP, 1);
        assert_eq!(h.rank, 2);
        assert_eq!(h.inv, GwInvariant::Disc { square: false });
        assert_eq!(h.neg(), GwClass { rank: -2, ..h.clone() });
        assert_eq!(h.add(&h.neg()).unwrap(), GwClass::zero(f(3), QP));
        assert_eq!(h.times(-3), h.neg().times(3));
    }

    #[test]
    fn arf_matches_majority_exhaustively() {
        for n in [2usize, 4] {
            for x in oracle::nondegenerate_forms(QP, f(2), n) {
                assert_eq!(arf(&x).unwrap(), oracle::arf_majority(&x), "{x}");
            }
        }
    }

    fn arb_space() -> impl Strategy<Value = QSpace> {
        let fields = prop_oneof![Just(f(2)), Just(f(3)), Just(f(5)), Just(f(7))];
        (0usize..6, fields, 0usize..6, any::<u64>()).prop_map(|(i, field, n, seed)| {
            let param = FormParam::all()[i];
            oracle::random_space(param, field, n, &mut random::rng(seed))
        })
    }

    proptest! {
        #[test]
        fn hyperbolic_is_witt_trivial(x in arb_space(), k in 0usize..4) {
            let y = orthogonal_sum(&x, &hyperbolic(x.param(), x.field(), k)).unwrap();
            prop_assert_eq!(witt_class(&y).unwrap(), witt_class(&x).unwrap());
        }

        #[test]
        fn x_minus_x_is_zero(x in arb_space()) {
            let y = orthogonal_sum(&x, &x.negate()).unwrap();
            prop_assert!(witt_class(&y).unwrap().is_zero());
        }

        #[test]
        fn decomposition_ranks(x in arb_space()) {
            let (k, ker) = witt_decompose(&x).unwrap();
            prop_assert_eq!(x.rank(), 2 * k + ker.rank());
            prop_assert!(find_isotropic(&ker).is_none());
        }

        #[test]
        fn witt_add_is_sum(x in arb_space(), seed in any::<u64>()) {
            let y = oracle::random_space(x.param(), x.field(), 3, &mut random::rng(seed));
            let lhs = witt_class(&orthogonal_sum(&x, &y).unwrap()).unwrap();
            let rhs = witt_add(&witt_class(&x).unwrap(), &witt_class(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gw_class_additive(x in arb_space(), seed in any::<u64>()) {
            let y = oracle::random_space(x.param(), x.field(), 2, &mut random::rng(seed));
            let s = gw0_class(&orthogonal_sum(&x, &y).unwrap());
            prop_assert_eq!(s, gw0_class(&x).add(&gw0_class(&y)).unwrap());
        }

        #[test]
        fn isometric_invariant_under_basis_change(x in arb_space(), seed in any::<u64>()) {
            let g = random::invertible(x.field(), x.rank(), &mut random::rng(seed));
            prop_assert!(isometric(&x, &x.transform(&g).unwrap()).unwrap());
        }
    }
}
