//! Quadratic, even and symmetric forms on free modules `R^n`.
//!
//! A bilinear map `X -> Y^*` is a `dim Y x dim X` matrix. Duality is the
//! transpose and `can` is `epsilon` times the identity, so the involution on
//! square matrices is `sigma(B) = epsilon B^T`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Scalar};
use crate::random;

/// A bilinear map `X -> Y^*` as a `dim Y x dim X` matrix.
pub type BilMap = Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `Mat_n / image(1 - sigma)`.
    Quadratic,
    /// `image(1 + sigma)`.
    Even,
    /// Fixed points of `sigma`.
    Symmetric,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Quadratic, Flavor::Even, Flavor::Symmetric];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormParam {
    pub epsilon: Sign,
    pub flavor: Flavor,
}

impl FormParam {
    pub fn new(flavor: Flavor, epsilon: Sign) -> FormParam {
        FormParam { epsilon, flavor }
    }

    pub fn quadratic() -> FormParam {
        FormParam::new(Flavor::Quadratic, Sign::Plus)
    }

    pub fn symmetric() -> FormParam {
        FormParam::new(Flavor::Symmetric, Sign::Plus)
    }

    pub fn all() -> Vec<FormParam> {
        let mut out = Vec::new();
        for flavor in Flavor::ALL {
            for eps in [Sign::Plus, Sign::Minus] {
                out.push(FormParam::new(flavor, eps));
            }
        }
        out
    }

    pub fn eps(&self, field: Field) -> Scalar {
        field.from_i64(self.epsilon.value())
    }

    /// `epsilon = 1` in the field (always true in characteristic 2).
    pub fn eps_is_one(&self, field: Field) -> bool {
        self.epsilon == Sign::Plus || field.characteristic() == 2
    }

    /// Whether diagonal entries of canonical representatives are free.
    pub fn diagonal_free(&self, field: Field) -> bool {
        match self.flavor {
            Flavor::Quadratic | Flavor::Symmetric => self.eps_is_one(field),
            Flavor::Even => self.eps_is_one(field) && field.characteristic() != 2,
        }
    }

    /// Free positions `(i, j)`, `i <= j`, of a canonical representative, in
    /// row-major order.
    pub fn positions(&self, field: Field, n: usize) -> Vec<(usize, usize)> {
        let diag = self.diagonal_free(field);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i < j || diag {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Dimension of `Q(R^n)` over the field.
    pub fn qdim(&self, field: Field, n: usize) -> usize {
        let off = n * n.saturating_sub(1) / 2;
        if self.diagonal_free(field) {
            off + n
        } else {
            off
        }
    }
}

impl fmt::Display for FormParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flavor = match self.flavor {
            Flavor::Quadratic => "quadratic",
            Flavor::Even => "even",
            Flavor::Symmetric => "symmetric",
        };
        let sign = match self.epsilon {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        };
        write!(f, "{flavor} {sign}")
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "quadratic" => Ok(Flavor::Quadratic),
            "even" => Ok(Flavor::Even),
            "symmetric" => Ok(Flavor::Symmetric),
            _ => Err(Error::Parse {
                line: 0,
                col: 0,
                msg: format!("unknown flavor '{s}'"),
            }),
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse {
                line: 0,
                col: 0,
                msg: format!("bad sign '{s}'"),
            }),
        }
    }
}

impl FromStr for FormParam {
    type Err = Error;
    /// `"quadratic +1"`, `"symmetric -1"`, ...
    fn from_str(s: &str) -> Result<FormParam> {
        let mut it = s.split_whitespace();
        let flavor = it.next().unwrap_or("").parse()?;
        let eps = it.next().unwrap_or("+1").parse()?;
        Ok(FormParam::new(flavor, eps))
    }
}

/// An element of `Q(R^n)`, stored as its canonical representative.
///
/// Quadratic flavor: upper triangular, with the diagonal zero when
/// `epsilon = -1` in odd characteristic. Even and symmetric flavors: the
/// `epsilon`-symmetric matrix itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QForm {
    param: FormParam,
    rep: Mat,
}

fn check_square(op: &'static str, b: &Mat) -> Result<()> {
    if b.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare(op))
    }
}

impl QForm {
    /// Canonicalizes a raw representative. Quadratic flavor accepts any
    /// square matrix; the other flavors require subgroup membership.
    pub fn new(param: FormParam, raw: Mat) -> Result<QForm> {
        check_square("QForm", &raw)?;
        let field = raw.field();
        let n = raw.rows();
        match param.flavor {
            Flavor::Quadratic => {
                let eps = param.eps(field);
                let diag = param.diagonal_free(field);
                let rep = Mat::from_fn(field, n, n, |i, j| {
                    if i < j {
                        field.add(raw.get(i, j), &field.mul(&eps, raw.get(j, i)))
                    } else if i == j && diag {
                        raw.get(i, i).clone()
                    } else {
                        field.zero()
                    }
                });
                Ok(QForm { param, rep })
            }
            Flavor::Even | Flavor::Symmetric => {
                if raw != sigma_unchecked(param, &raw) {
                    return Err(Error::NotInSubgroup(format!(
                        "{raw} is not {}-symmetric",
                        param.epsilon.value()
                    )));
                }
                if !param.diagonal_free(field) && (0..n).any(|i| *raw.get(i, i) != field.zero()) {
                    return Err(Error::NotInSubgroup(format!(
                        "{raw} must have zero diagonal for {param} over {field}"
                    )));
                }
                Ok(QForm { param, rep: raw })
            }
        }
    }

    pub fn from_i64s(param: FormParam, field: Field, n: usize, entries: &[i64]) -> Result<QForm> {
        QForm::new(param, Mat::from_i64s(field, n, n, entries))
    }

    pub fn zero(param: FormParam, field: Field, n: usize) -> QForm {
        QForm {
            param,
            rep: Mat::zeros(field, n, n),
        }
    }

    pub fn param(&self) -> FormParam {
        self.param
    }

    pub fn field(&self) -> Field {
        self.rep.field()
    }

    pub fn n(&self) -> usize {
        self.rep.rows()
    }

    pub fn rep(&self) -> &Mat {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Coordinates at the free positions of the canonical representative.
    pub fn coords(&self) -> Vec<Scalar> {
        self.param
            .positions(self.field(), self.n())
            .into_iter()
            .map(|(i, j)| self.rep.get(i, j).clone())
            .collect()
    }

    pub fn from_coords(param: FormParam, field: Field, n: usize, coords: &[Scalar]) -> QForm {
        let pos = param.positions(field, n);
        assert_eq!(pos.len(), coords.len(), "coordinate count");
        let mut rep = Mat::zeros(field, n, n);
        let eps = param.eps(field);
        for ((i, j), c) in pos.into_iter().zip(coords) {
            rep.set(i, j, c.clone());
            if param.flavor != Flavor::Quadratic && i != j {
                rep.set(j, i, field.mul(&eps, c));
            }
        }
        QForm { param, rep }
    }

    pub fn random(param: FormParam, field: Field, n: usize, rng: &mut impl Rng) -> QForm {
        let k = param.qdim(field, n);
        let coords: Vec<Scalar> = (0..k).map(|_| random::scalar(field, rng)).collect();
        QForm::from_coords(param, field, n, &coords)
    }

    fn same_space(&self, other: &QForm, op: &'static str) -> Result<()> {
        if self.param != other.param {
            return Err(Error::ParamMismatch(self.param.to_string(), other.param.to_string()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        if self.n() != other.n() {
            return Err(Error::dims(op, self.n(), other.n()));
        }
        Ok(())
    }

    pub fn add(&self, other: &QForm) -> Result<QForm> {
        self.same_space(other, "form addition")?;
        Ok(QForm {
            param: self.param,
            rep: self.rep.add(&other.rep),
        })
    }

    pub fn neg(&self) -> QForm {
        QForm {
            param: self.param,
            rep: self.rep.neg(),
        }
    }

    pub fn sub(&self, other: &QForm) -> Result<QForm> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> QForm {
        QForm {
            param: self.param,
            rep: self.rep.scale(c),
        }
    }

    /// `self ⊥ other` on `R^n ⊕ R^m`.
    pub fn orthogonal_sum(&self, other: &QForm) -> Result<QForm> {
        if self.param != other.param {
            return Err(Error::ParamMismatch(self.param.to_string(), other.param.to_string()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        Ok(QForm {
            param: self.param,
            rep: self.rep.block_diag(&other.rep),
        })
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}: {}", self.param, self.field(), self.rep)
    }
}

fn sigma_unchecked(param: FormParam, b: &Mat) -> Mat {
    if param.epsilon == Sign::Plus {
        b.transpose()
    } else {
        b.transpose().neg()
    }
}

/// `sigma(B) = epsilon B^T`.
pub fn sigma(param: FormParam, b: &BilMap) -> Result<BilMap> {
    check_square("sigma", b)?;
    Ok(sigma_unchecked(param, b))
}

/// Transfer `E(X, X^*) -> Q(X)`.
pub fn tau(param: FormParam, b: &BilMap) -> Result<QForm> {
    check_square("tau", b)?;
    match param.flavor {
        Flavor::Quadratic => QForm::new(param, b.clone()),
        Flavor::Even | Flavor::Symmetric => Ok(QForm {
            param,
            rep: b.add(&sigma_unchecked(param, b)),
        }),
    }
}

/// Polarization `Q(X) -> E(X, X^*)`.
pub fn rho(q: &QForm) -> BilMap {
    match q.param.flavor {
        Flavor::Quadratic => q.rep.add(&sigma_unchecked(q.param, &q.rep)),
        Flavor::Even | Flavor::Symmetric => q.rep.clone(),
    }
}

/// `f•q`: the pullback of `q` on `Y` along `f: X -> Y`.
pub fn restrict(f: &Mat, q: &QForm) -> Result<QForm> {
    if f.rows() != q.n() {
        return Err(Error::dims("restrict", format!("{} rows", q.n()), format!("{} rows", f.rows())));
    }
    if f.field() != q.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), q.field().to_string()));
    }
    let raw = f.transpose().mul(&q.rep).mul(f);
    match q.param.flavor {
        Flavor::Quadratic => QForm::new(q.param, raw),
        Flavor::Even | Flavor::Symmetric => Ok(QForm { param: q.param, rep: raw }),
    }
}

/// Equality of two raw representatives in `Q(R^n)`.
pub fn canonicalize_eq(param: FormParam, a: &Mat, b: &Mat) -> Result<bool> {
    Ok(QForm::new(param, a.clone())? == QForm::new(param, b.clone())?)
}

/// Matrix of a linear map given on basis vectors: column `k` is `f(e_k)`.
pub(crate) fn linear_operator(
    field: Field,
    in_dim: usize,
    out_dim: usize,
    f: impl Fn(&[Scalar]) -> Vec<Scalar>,
) -> Mat {
    let mut m = Mat::zeros(field, out_dim, in_dim);
    for k in 0..in_dim {
        let mut e = vec![field.zero(); in_dim];
        e[k] = field.one();
        let v = f(&e);
        assert_eq!(v.len(), out_dim, "operator output length");
        for (r, x) in v.into_iter().enumerate() {
            m.set(r, k, x);
        }
    }
    m
}

/// A commutative square `g s = t f` of maps `A -s-> B -g-> D`, `A -f-> C -t-> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutSquare {
    pub s: Mat,
    pub f: Mat,
    pub g: Mat,
    pub t: Mat,
}

impl PushoutSquare {
    /// Checks shapes and that `0 -> A -(s;-f)-> B ⊕ C -(g t)-> D -> 0` is exact.
    pub fn check(&self) -> Result<()> {
        let PushoutSquare { s, f, g, t } = self;
        let a = s.cols();
        if f.cols() != a || g.cols() != s.rows() || t.cols() != f.rows() || g.rows() != t.rows() {
            return Err(Error::dims(
                "pushout square",
                "s: A->B, f: A->C, g: B->D, t: C->D",
                format!(
                    "s {}x{}, f {}x{}, g {}x{}, t {}x{}",
                    s.rows(),
                    s.cols(),
                    f.rows(),
                    f.cols(),
                    g.rows(),
                    g.cols(),
                    t.rows(),
                    t.cols()
                ),
            ));
        }
        let left = s.vstack(&f.neg());
        let right = g.hstack(t);
        let exact = right.mul(&left).is_zero()
            && left.rank() == a
            && right.rank() == right.rows()
            && left.rank() + right.rank() == left.rows();
        if exact {
            Ok(())
        } else {
            Err(Error::invariant("pushout square", "A -> B+C -> D is not short exact"))
        }
    }
}

/// The unique form on `D` restricting to `q_b` along `g`, to `q_c` along `t`,
/// with cross term `t^T rho(xi) g = beta` (`beta` is `dim C x dim B`).
pub fn glue_pushout_form(sq: &PushoutSquare, q_b: &QForm, q_c: &QForm, beta: &BilMap) -> Result<QForm> {
    sq.check()?;
    let param = q_b.param;
    let field = q_b.field();
    if q_c.param != param {
        return Err(Error::ParamMismatch(param.to_string(), q_c.param.to_string()));
    }
    let (nb, nc, nd) = (sq.g.cols(), sq.t.cols(), sq.g.rows());
    if q_b.n() != nb || q_c.n() != nc {
        return Err(Error::dims("glue_pushout_form", format!("forms on {nb} and {nc}"), format!("{} and {}", q_b.n(), q_c.n())));
    }
    if beta.shape() != (nc, nb) {
        return Err(Error::dims("glue_pushout_form beta", format!("{nc}x{nb}"), format!("{}x{}", beta.rows(), beta.cols())));
    }

    let lhs = restrict(&sq.s, q_b)?.add(&restrict(&sq.f, q_c)?)?;
    let rhs = tau(param, &sq.f.transpose().mul(beta).mul(&sq.s))?;
    let ok = lhs == rhs
        && sq.s.transpose().mul(&rho(q_b)) == sq.f.transpose().mul(beta)
        && rho(q_c).mul(&sq.f) == beta.mul(&sq.s);
    if !ok {
        return Err(Error::invariant("pushout compatibility", "data do not come from a form on D"));
    }

    let dq = param.qdim(field, nd);
    let out_len = param.qdim(field, nb) + param.qdim(field, nc) + nb * nc;
    let image = |c: &[Scalar]| {
        let xi = QForm::from_coords(param, field, nd, c);
        let mut v = restrict(&sq.g, &xi).expect("shape").coords();
        v.extend(restrict(&sq.t, &xi).expect("shape").coords());
        v.extend(sq.t.transpose().mul(&rho(&xi)).mul(&sq.g).entries().iter().cloned());
        v
    };
    let op = linear_operator(field, dq, out_len, image);
    let mut target = q_b.coords();
    target.extend(q_c.coords());
    target.extend(beta.entries().iter().cloned());
    let x = op.solve(&Mat::column_vector(field, target))?;
    if op.rank() != dq {
        return Err(Error::invariant("pushout uniqueness", "glued form is not unique"));
    }
    let coords: Vec<Scalar> = (0..dq).map(|i| x.get(i, 0).clone()).collect();
    Ok(QForm::from_coords(param, field, nd, &coords))
}

/// For a surjection `q: Y -> Z` and `eta` on `Y`, the unique `zeta` on `Z`
/// with `q•zeta = eta`.
pub fn descend(q: &Mat, eta: &QForm) -> Result<QForm> {
    if q.cols() != eta.n() {
        return Err(Error::dims("descend", eta.n(), q.cols()));
    }
    if q.rank() != q.rows() {
        return Err(Error::invariant("descend", "map is not surjective"));
    }
    let (param, field, nz) = (eta.param, eta.field(), q.rows());
    let dz = param.qdim(field, nz);
    let dy = param.qdim(field, eta.n());
    let op = linear_operator(field, dz, dy, |c| {
        restrict(q, &QForm::from_coords(param, field, nz, c)).expect("shape").coords()
    });
    let x = op.solve(&Mat::column_vector(field, eta.coords()))?;
    let coords: Vec<Scalar> = (0..dz).map(|i| x.get(i, 0).clone()).collect();
    Ok(QForm::from_coords(param, field, nz, &coords))
}

/// Outcome of a randomized run of the form-category axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub param: FormParam,
    pub field: Field,
    pub trials: usize,
    pub checks: usize,
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{} over {}: {} trials, {} checks, ok", self.param, self.field, self.trials, self.checks),
            Some(c) => write!(f, "{} over {}: FAILED: {c}", self.param, self.field),
        }
    }
}

/// Randomized checks of `sigma^2 = 1`, `rho tau = 1 + sigma`, the
/// polarization identity, functoriality of restriction and left exactness
/// of `Q` on split exact sequences, for dimensions up to `max_dim`.
pub fn check_form_axioms(param: FormParam, field: Field, trials: usize, max_dim: usize, seed: u64) -> AxiomReport {
    let mut rng = random::rng(seed);
    let mut report = AxiomReport {
        param,
        field,
        trials,
        checks: 0,
        counterexample: None,
    };
    for _ in 0..trials {
        match axiom_trial(param, field, max_dim, &mut rng) {
            Ok(n) => report.checks += n,
            Err(e) => {
                report.counterexample = Some(e);
                break;
            }
        }
    }
    report
}

fn axiom_trial(param: FormParam, field: Field, max_dim: usize, rng: &mut impl Rng) -> std::result::Result<usize, String> {
    let n = rng.gen_range(0..=max_dim);
    let k = rng.gen_range(0..=max_dim);
    let b = random::matrix(field, n, n, rng);
    let sb = sigma_unchecked(param, &b);
    if sigma_unchecked(param, &sb) != b {
        return Err(format!("sigma^2 != 1 on {b}"));
    }
    let rt = rho(&tau(param, &b).map_err(|e| e.to_string())?);
    if rt != b.add(&sb) {
        return Err(format!("rho tau != 1 + sigma on {b}"));
    }

    let xi = QForm::random(param, field, n, rng);
    let f = random::matrix(field, n, k, rng);
    let g = random::matrix(field, n, k, rng);
    let lhs = restrict(&f.add(&g), &xi).unwrap();
    let cross = tau(param, &g.transpose().mul(&rho(&xi)).mul(&f)).unwrap();
    let rhs = restrict(&f, &xi).unwrap().add(&restrict(&g, &xi).unwrap()).unwrap().add(&cross).unwrap();
    if lhs != rhs {
        return Err(format!("polarization fails: xi = {xi}, f = {f}, g = {g}"));
    }

    let m = rng.gen_range(0..=max_dim);
    let h = random::matrix(field, k, m, rng);
    if restrict(&f.mul(&h), &xi).unwrap() != restrict(&h, &restrict(&f, &xi).unwrap()).unwrap() {
        return Err(format!("restriction not functorial: xi = {xi}, f = {f}, h = {h}"));
    }

    let a = rng.gen_range(0..=n);
    let (i, p) = random::split_ses(field, a, n - a, rng);
    left_exactness(param, field, &i, &p)?;
    Ok(4)
}

/// Exactness of `0 -> Q(Z) -> Q(Y) -> E(Y, X^*) x Q(X)` for `X -i-> Y -p-> Z`.
fn left_exactness(param: FormParam, field: Field, i: &Mat, p: &Mat) -> std::result::Result<(), String> {
    let (nx, ny, nz) = (i.cols(), i.rows(), p.rows());
    let dz = param.qdim(field, nz);
    let dy = param.qdim(field, ny);
    let pull = linear_operator(field, dz, dy, |c| {
        restrict(p, &QForm::from_coords(param, field, nz, c)).unwrap().coords()
    });
    let out = nx * ny + param.qdim(field, nx);
    let next = linear_operator(field, dy, out, |c| {
        let xi = QForm::from_coords(param, field, ny, c);
        let mut v: Vec<Scalar> = i.transpose().mul(&rho(&xi)).entries().to_vec();
        v.extend(restrict(i, &xi).unwrap().coords());
        v
    });
    let rp = pull.rank();
    if rp != dz {
        return Err(format!("p• not injective for p = {p}"));
    }
    if !next.mul(&pull).is_zero() || rp + next.rank() != dy {
        return Err(format!("not exact at Q(Y) for i = {i}, p = {p}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const QP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Quadratic };
    const QM: FormParam = FormParam { epsilon: Sign::Minus, flavor: Flavor::Quadratic };
    const SP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Symmetric };

    fn m(p: u64, n: usize, c: usize, e: &[i64]) -> Mat {
        Mat::from_i64s(Field::Prime(p), n, c, e)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(QP, &m(3, 2, 2, &[1, 2, 0, 1])).unwrap(), m(3, 2, 2, &[1, 0, 2, 1]));
        assert_eq!(sigma(QM, &m(5, 1, 1, &[1])).unwrap(), m(5, 1, 1, &[4]));
        let s = m(7, 2, 2, &[1, 3, 3, 2]);
        assert_eq!(sigma(SP, &s).unwrap(), s);
        assert_eq!(sigma(QP, &m(3, 1, 2, &[1, 2])), Err(Error::NotSquare("sigma")));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(QP, &m(3, 1, 1, &[1])).unwrap().rep(), &m(3, 1, 1, &[1]));
        assert_eq!(tau(SP, &m(3, 1, 1, &[1])).unwrap().rep(), &m(3, 1, 1, &[2]));
        assert_eq!(tau(QP, &m(2, 2, 2, &[0, 0, 1, 0])).unwrap().rep(), &m(2, 2, 2, &[0, 1, 0, 0]));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&QForm::from_i64s(QP, Field::Prime(3), 1, &[1]).unwrap()), m(3, 1, 1, &[2]));
        let h = QForm::from_i64s(QP, Field::Prime(3), 2, &[0, 1, 0, 0]).unwrap();
        assert_eq!(rho(&h), m(3, 2, 2, &[0, 1, 1, 0]));
        let h = QForm::from_i64s(QM, Field::Prime(5), 2, &[0, 1, 0, 0]).unwrap();
        assert_eq!(rho(&h), m(5, 2, 2, &[0, 1, 4, 0]));
    }

    #[test]
    fn restrict_examples() {
        let q = QForm::from_i64s(QP, Field::Prime(5), 1, &[1]).unwrap();
        assert_eq!(restrict(&m(5, 1, 1, &[2]), &q).unwrap().rep(), &m(5, 1, 1, &[4]));
        let h = QForm::from_i64s(QP, Field::Prime(3), 2, &[0, 1, 0, 0]).unwrap();
        assert_eq!(restrict(&Mat::identity(Field::Prime(3), 2), &h).unwrap(), h);
        assert_eq!(restrict(&m(3, 2, 1, &[1, 0]), &h).unwrap().rep(), &m(3, 1, 1, &[0]));
        assert!(matches!(restrict(&m(3, 3, 1, &[1, 0, 0]), &h), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn canonicalize_eq_examples() {
        assert!(canonicalize_eq(QP, &m(2, 2, 2, &[0, 1, 0, 0]), &m(2, 2, 2, &[0, 0, 1, 0])).unwrap());
        assert!(!canonicalize_eq(QP, &m(3, 1, 1, &[1]), &m(3, 1, 1, &[2])).unwrap());
        let s = m(5, 2, 2, &[1, 2, 2, 0]);
        assert!(canonicalize_eq(SP, &s, &s).unwrap());
    }

    #[test]
    fn subgroup_membership() {
        let even = FormParam::new(Flavor::Even, Sign::Plus);
        assert!(matches!(QForm::from_i64s(even, Field::Prime(2), 1, &[1]), Err(Error::NotInSubgroup(_))));
        assert!(QForm::from_i64s(SP, Field::Prime(2), 1, &[1]).is_ok());
        assert!(matches!(QForm::from_i64s(SP, Field::Prime(3), 2, &[0, 1, 2, 0]), Err(Error::NotInSubgroup(_))));
        let alt = FormParam::new(Flavor::Symmetric, Sign::Minus);
        assert!(QForm::from_i64s(alt, Field::Prime(3), 2, &[0, 1, 2, 0]).is_ok());
    }

    fn inclusions(field: Field, b: usize, c: usize) -> PushoutSquare {
        let d = b + c;
        let id = Mat::identity(field, d);
        PushoutSquare {
            s: Mat::zeros(field, b, 0),
            f: Mat::zeros(field, c, 0),
            g: id.submatrix(0..d, 0..b),
            t: id.submatrix(0..d, b..d),
        }
    }

    #[test]
    fn glue_examples() {
        let f3 = Field::Prime(3);
        let one = QForm::from_i64s(QP, f3, 1, &[1]).unwrap();
        let sq = inclusions(f3, 1, 1);
        let xi = glue_pushout_form(&sq, &one, &one, &m(3, 1, 1, &[1])).unwrap();
        assert_eq!(xi.rep(), &m(3, 2, 2, &[1, 1, 0, 1]));

        let zero_beta = Mat::zeros(f3, 1, 1);
        let xi = glue_pushout_form(&sq, &one, &one, &zero_beta).unwrap();
        assert_eq!(xi, one.orthogonal_sum(&one).unwrap());

        let z = QForm::zero(QP, f3, 1);
        assert!(glue_pushout_form(&sq, &z, &z, &zero_beta).unwrap().is_zero());
    }

    #[test]
    fn glue_rejects_bad_data() {
        let f5 = Field::Prime(5);
        // A = B = C = D = R, all maps the identity: forces qB = qC.
        let id = Mat::identity(f5, 1);
        let sq = PushoutSquare { s: id.clone(), f: id.clone(), g: id.clone(), t: id.clone() };
        let q1 = QForm::from_i64s(QP, f5, 1, &[1]).unwrap();
        let q2 = QForm::from_i64s(QP, f5, 1, &[2]).unwrap();
        assert!(glue_pushout_form(&sq, &q1, &q2, &m(5, 1, 1, &[2])).is_err());
        assert_eq!(glue_pushout_form(&sq, &q1, &q1, &m(5, 1, 1, &[2])).unwrap(), q1);
        let bad = PushoutSquare { g: Mat::zeros(f5, 1, 1), ..sq };
        assert!(bad.check().is_err());
    }

    #[test]
    fn descend_inverts_restriction() {
        let f3 = Field::Prime(3);
        let q = m(3, 2, 3, &[1, 0, 1, 0, 1, 2]);
        let zeta = QForm::from_i64s(QP, f3, 2, &[1, 2, 0, 2]).unwrap();
        let eta = restrict(&q, &zeta).unwrap();
        assert_eq!(descend(&q, &eta).unwrap(), zeta);
        let other = QForm::from_i64s(QP, f3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(descend(&m(3, 1, 3, &[0, 1, 0]), &other).is_err());
    }

    #[test]
    fn axioms_small_runs() {
        for field in [Field::Prime(2), Field::Prime(3), Field::Rationals] {
            for param in FormParam::all() {
                let r = check_form_axioms(param, field, 40, 4, 11);
                assert!(r.passed(), "{r}");
            }
        }
        let r = check_form_axioms(SP, Field::Prime(3), 20, 0, 1);
        assert!(r.passed());
    }

    #[test]
    fn param_parse_display() {
        for p in FormParam::all() {
            assert_eq!(p.to_string().parse::<FormParam>().unwrap(), p);
        }
    }

    fn arb_setup() -> impl Strategy<Value = (FormParam, Field, u64)> {
        let fields = prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5)), Just(Field::Rationals)];
        (0usize..6, fields, any::<u64>()).prop_map(|(i, f, s)| (FormParam::all()[i], f, s))
    }

    proptest! {
        #[test]
        fn glue_restores_inputs((param, field, seed) in arb_setup(), b in 0usize..4, c in 0usize..4) {
            let mut r = random::rng(seed);
            let xi = QForm::random(param, field, b + c, &mut r);
            let u = random::invertible(field, b + c, &mut r);
            let sq0 = inclusions(field, b, c);
            let sq = PushoutSquare { g: u.mul(&sq0.g), t: u.mul(&sq0.t), ..sq0 };
            let q_b = restrict(&sq.g, &xi).unwrap();
            let q_c = restrict(&sq.t, &xi).unwrap();
            let beta = sq.t.transpose().mul(&rho(&xi)).mul(&sq.g);
            prop_assert_eq!(glue_pushout_form(&sq, &q_b, &q_c, &beta).unwrap(), xi);
        }

        #[test]
        fn coords_roundtrip((param, field, seed) in arb_setup(), n in 0usize..6) {
            let xi = QForm::random(param, field, n, &mut random::rng(seed));
            let back = QForm::from_coords(param, field, n, &xi.coords());
            prop_assert_eq!(&back, &xi);
            prop_assert_eq!(QForm::new(param, xi.rep().clone()).unwrap(), xi);
        }

        #[test]
        fn tau_rho_is_two((param, field, seed) in arb_setup(), n in 0usize..6) {
            let xi = QForm::random(param, field, n, &mut random::rng(seed));
            let two = field.from_i64(2);
            prop_assert_eq!(tau(param, &rho(&xi)).unwrap(), xi.scale(&two));
        }

        #[test]
        fn quadratic_symmetric_agree_off_two(seed in any::<u64>(), n in 0usize..5, minus in any::<bool>(), p in prop_oneof![Just(3u64), Just(5), Just(7)]) {
            let field = Field::Prime(p);
            let eps = if minus { Sign::Minus } else { Sign::Plus };
            let quad = FormParam::new(Flavor::Quadratic, eps);
            let sym = FormParam::new(Flavor::Symmetric, eps);
            let half = field.inv(&field.from_i64(2)).unwrap();
            let xi = QForm::random(quad, field, n, &mut random::rng(seed));
            let s = QForm::new(sym, rho(&xi)).unwrap();
            let back = QForm::new(quad, s.rep().scale(&half)).unwrap();
            prop_assert_eq!(back, xi);
            prop_assert_eq!(quad.qdim(field, n), sym.qdim(field, n));
        }
    }
}
