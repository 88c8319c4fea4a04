//! Reduction of quadratic Poincaré complexes to degree 0.
//!
//! Each step shrinks the window `[-n, n]` to `[-n+1, n-1]` and records a
//! hyperbolic complex `H(R^r)[-n+1]` that was added along the way, so
//! `[E] = [E'] - [H(R^r)[-n+1]]`. Ledger entries are evaluated by reducing
//! the shifted hyperbolic complexes themselves.

use std::fmt;

use rand::Rng;

use crate::chaincx::{
    dualize, embed_degree0, make_poincare, random_chain_map, random_complex, tau_cx, ChainComplex, ChainMap,
    PoincareComplex,
};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat};
use crate::formcore::{descend, restrict, rho, FormParam, QForm};
use crate::random;
use crate::spaces::{gw0_class, h_mu, hyperbolic, oracle, orthogonal_sum, GwClass, QSpace};

/// `sign * [H(R^rank)[shift]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LedgerEntry {
    pub rank: usize,
    pub shift: i64,
    pub sign: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HyperbolicLedger {
    pub entries: Vec<LedgerEntry>,
}

impl fmt::Display for HyperbolicLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "(empty)");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{} [H({})[{}]]", if e.sign < 0 { "-" } else { "+" }, e.rank, e.shift))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// What one reduction step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub n: i64,
    /// Dimensions on `[-n, n]` before, of the enlarged complex, and after.
    pub dims_before: Vec<usize>,
    pub dims_enlarged: Vec<usize>,
    pub dims_after: Vec<usize>,
    pub entry: Option<LedgerEntry>,
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "n={}: dims [{}] -> enlarged [{}] -> [{}]",
            self.n,
            show(&self.dims_before),
            show(&self.dims_enlarged),
            show(&self.dims_after)
        )?;
        if let Some(e) = self.entry {
            write!(f, ", ledger {} H({})[{}]", if e.sign < 0 { "-" } else { "+" }, e.rank, e.shift)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub space: QSpace,
    pub ledger: HyperbolicLedger,
    pub trace: Vec<StepRecord>,
}

fn dims_on(e: &ChainComplex, n: i64) -> Vec<usize> {
    (-n..=n).rev().map(|i| e.dim(i)).collect()
}

fn fail(degree: i64, detail: impl fmt::Display) -> Error {
    Error::Reduction { degree, detail: detail.to_string() }
}

/// Half-width of the smallest symmetric window containing the window of `p`.
pub fn half_width(p: &PoincareComplex) -> i64 {
    let (lo, hi) = p.complex().window();
    if lo > hi {
        0
    } else {
        lo.abs().max(hi.abs())
    }
}

/// One reduction step on the window `[-n, n]`. For `n = 0` the input is
/// returned unchanged.
pub fn reduce_step(p: &PoincareComplex, n: i64) -> Result<(PoincareComplex, Option<LedgerEntry>, StepRecord)> {
    let p = p.with_window(-n.max(0), n.max(0))?;
    if n <= 0 {
        let dims = dims_on(p.complex(), 0);
        let rec = StepRecord { n: 0, dims_before: dims.clone(), dims_enlarged: dims.clone(), dims_after: dims, entry: None };
        return Ok((p, None, rec));
    }
    let (next, enlarged) = if n == 1 { step_one(&p)? } else { step_general(&p, n)? };
    let entry = LedgerEntry { rank: p.complex().dim(-n), shift: -n + 1, sign: -1 };
    let rec = StepRecord {
        n,
        dims_before: dims_on(p.complex(), n),
        dims_enlarged: dims_on(&enlarged, n),
        dims_after: dims_on(next.complex(), n),
        entry: Some(entry),
    };
    Ok((next, Some(entry), rec))
}

fn step_general(p: &PoincareComplex, n: i64) -> Result<(PoincareComplex, ChainComplex)> {
    let e = p.complex();
    let phi = p.phi();
    let field = e.field();
    let eps = p.param().epsilon.value();
    let r = e.dim(-n);

    let top = e.d(n).vstack(&phi.f(n));
    if top.rank() != e.dim(n) {
        return Err(fail(n, "(d_n; phi_n) is not injective"));
    }
    let tilde_dim = |i: i64| {
        if i == n - 1 || i == -n + 1 {
            e.dim(i) + r
        } else {
            e.dim(i)
        }
    };
    let tilde_d = |i: i64| {
        if i == n {
            top.clone()
        } else if i == n - 1 {
            e.d(i).hstack(&Mat::zeros(field, e.dim(i - 1), r))
        } else if i == -n + 2 {
            e.d(i).vstack(&Mat::zeros(field, r, e.dim(i)))
        } else if i == -n + 1 {
            e.d(i).hstack(&Mat::identity(field, r))
        } else {
            e.d(i)
        }
    };
    let et = ChainComplex::from_fn(field, -n, n, tilde_dim, tilde_d).map_err(|err| fail(n, err))?;
    let sign_top = if (n + 1) % 2 == 0 { 1 } else { -1 };
    let tilde_phi = |i: i64| {
        if i == n - 1 {
            phi.f(i).block_diag(&Mat::scalar(field, r, sign_top))
        } else if i == -n + 1 {
            phi.f(i).block_diag(&Mat::scalar(field, r, eps))
        } else {
            phi.f(i)
        }
    };
    let phit = ChainMap::new(&et, &dualize(&et), tilde_phi).map_err(|err| fail(n, err))?;
    make_poincare(p.param(), et.clone(), p.xi().clone(), phit.clone()).map_err(|err| fail(n, err))?;

    // E'_{n-1} = coker(d~_n) on a complement W; E'_{-n+1} = ker(d~_{-n+1}) with basis K.
    let w = top.complement()?;
    let q = top
        .hstack(&w)
        .inverse()
        .ok_or_else(|| fail(n, "complement does not complete the image"))?
        .submatrix(top.cols()..et.dim(n - 1), 0..et.dim(n - 1));
    let k = et.d(-n + 1).kernel_basis();
    let d_down = et.d(-n + 2);
    let d_prime_low = k.solve(&d_down).map_err(|_| fail(n, "image does not lie in the kernel"))?;
    let d_prime_top = et.d(n - 1).mul(&w);

    let dim_prime = |i: i64| {
        if i == n - 1 {
            w.cols()
        } else if i == -n + 1 {
            k.cols()
        } else {
            e.dim(i)
        }
    };
    let d_prime = |i: i64| {
        let up = i == n - 1;
        let low = i == -n + 2;
        match (up, low) {
            (true, true) => k.solve(&et.d(i).mul(&w)).expect("image in kernel"),
            (true, false) => d_prime_top.clone(),
            (false, true) => d_prime_low.clone(),
            (false, false) => e.d(i),
        }
    };
    let ep = ChainComplex::from_fn(field, -n + 1, n - 1, dim_prime, d_prime).map_err(|err| fail(n, err))?;

    let phi_up = k.transpose().mul(&phit.f(n - 1)).mul(&w);
    let phi_low = w.transpose().mul(&phit.f(-n + 1)).mul(&k);
    if !k.transpose().mul(&phit.f(n - 1)).mul(&top).is_zero() || phit.f(-n + 1).mul(&k) != q.transpose().mul(&phi_low) {
        return Err(fail(n, "form does not descend to the truncation"));
    }
    let phi_prime = |i: i64| {
        if i == n - 1 {
            phi_up.clone()
        } else if i == -n + 1 {
            phi_low.clone()
        } else {
            phi.f(i)
        }
    };
    let phip = ChainMap::new(&ep, &dualize(&ep), phi_prime).map_err(|err| fail(n, err))?;
    let next = make_poincare(p.param(), ep, p.xi().clone(), phip).map_err(|err| fail(n, err))?;
    Ok((next, et))
}

fn step_one(p: &PoincareComplex) -> Result<(PoincareComplex, ChainComplex)> {
    let e = p.complex();
    let phi = p.phi();
    let field = e.field();
    let param = p.param();
    let (a, z, m) = (e.dim(1), e.dim(0), e.dim(-1));

    let d1 = e.d(1).vstack(&Mat::zeros(field, m, a)).vstack(&phi.f(1));
    if d1.rank() != a {
        return Err(fail(1, "(d_1; 0; phi_1) is not injective"));
    }
    let d0 = e.d(0).hstack(&Mat::identity(field, m)).hstack(&Mat::zeros(field, m, m));
    let et = ChainComplex::new(field, -1, vec![m, z + 2 * m, a], vec![d0.clone(), d1.clone()]).map_err(|err| fail(1, err))?;
    let h = h_mu(&QForm::zero(param, field, m));
    let xit = p.xi().orthogonal_sum(h.form())?;
    let phit = ChainMap::new(&et, &dualize(&et), |i| match i {
        0 => phi.f(0).block_diag(h.polar()),
        _ => phi.f(i),
    })
    .map_err(|err| fail(1, err))?;
    make_poincare(param, et.clone(), xit.clone(), phit).map_err(|err| fail(1, err))?;

    // E' = H_0: kernel of d~_0 modulo the image of d~_1.
    let k0 = d0.kernel_basis();
    let img = k0.solve(&d1).map_err(|_| fail(1, "image does not lie in the kernel"))?;
    let w = img.complement()?;
    let q = img
        .hstack(&w)
        .inverse()
        .ok_or_else(|| fail(1, "complement does not complete the image"))?
        .submatrix(a..k0.cols(), 0..k0.cols());
    let eta = restrict(&k0, &xit)?;
    let xip = descend(&q, &eta).map_err(|err| fail(1, format!("form does not descend: {err}")))?;
    let ep = ChainComplex::concentrated(field, 0, w.cols());
    let polar = rho(&xip);
    let phip = ChainMap::new(&ep, &dualize(&ep), |_| polar.clone()).map_err(|err| fail(1, err))?;
    let next = make_poincare(param, ep, xip, phip).map_err(|err| fail(1, err))?;
    Ok((next, et))
}

/// Reduces to degree 0 in exactly `n` steps, `n` the half-width of the
/// symmetrized window.
pub fn reduce_full(p: &PoincareComplex) -> Result<ReductionResult> {
    let n0 = half_width(p);
    let mut cur = p.with_window(-n0, n0)?;
    let mut ledger = HyperbolicLedger::default();
    let mut trace = Vec::new();
    for n in (1..=n0).rev() {
        let (next, entry, rec) = reduce_step(&cur, n)?;
        ledger.entries.extend(entry);
        trace.push(rec);
        cur = next;
    }
    let space = QSpace::new(cur.xi().clone()).map_err(|err| fail(0, err))?;
    Ok(ReductionResult { space, ledger, trace })
}

/// `H(R^r)[k]`: `R^r` in degree `k`, its dual in degree `-k`, no
/// differential, `phi = 1` on the dual and `can` on `R^r`.
pub fn shifted_hyperbolic(param: FormParam, field: Field, r: usize, k: i64) -> PoincareComplex {
    if k == 0 {
        return embed_degree0(&hyperbolic(param, field, r));
    }
    let m = k.abs();
    let e = ChainComplex::from_fn(field, -m, m, |i| if i.abs() == m { r } else { 0 }, |i| {
        Mat::zeros(field, if (i - 1).abs() == m { r } else { 0 }, if i.abs() == m { r } else { 0 })
    })
    .expect("two modules, zero differential");
    let can = if m % 2 == 0 { 1 } else { -1 } * param.epsilon.value();
    let phi = ChainMap::new(&e, &dualize(&e), |i| {
        if i == k {
            Mat::scalar(field, r, can)
        } else if i == -k {
            Mat::identity(field, r)
        } else {
            Mat::zeros(field, dualize(&e).dim(i), e.dim(i))
        }
    })
    .expect("hyperbolic pairing is a chain map");
    make_poincare(param, e, QForm::zero(param, field, 0), phi).expect("shifted hyperbolic is Poincare")
}

/// Sum of the ledger's classes, each obtained by reducing the shifted
/// hyperbolic complex it names.
pub fn eval_ledger(ledger: &HyperbolicLedger, field: Field, param: FormParam) -> Result<GwClass> {
    let mut total = GwClass::zero(field, param);
    for e in &ledger.entries {
        if e.rank == 0 {
            continue;
        }
        let c = gw0_of_complex(&shifted_hyperbolic(param, field, e.rank, e.shift))?;
        total = total.add(&c.times(e.sign))?;
    }
    Ok(total)
}

pub fn gw0_of_complex(p: &PoincareComplex) -> Result<GwClass> {
    let res = reduce_full(p)?;
    gw0_class(&res.space).add(&eval_ledger(&res.ledger, p.field(), p.param())?)
}

/// A metabolic space with a certified Lagrangian, optionally widened by a
/// quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct MetabolicInstance {
    pub space: QSpace,
    /// Columns span a Lagrangian of `space`.
    pub lagrangian: Mat,
    pub rank: usize,
    /// `embed_degree0(space)`, or its pullback along `quis`.
    pub complex: PoincareComplex,
    pub quis: Option<ChainMap>,
}

/// Form `[[0, A], [epsilon A^T, D]]` with `A` invertible, hidden by a random
/// change of basis.
pub fn gen_metabolic(seed: u64, r: usize, field: Field, param: FormParam, widen: bool) -> MetabolicInstance {
    let mut rng = random::rng(seed);
    let a = random::invertible(field, r, &mut rng);
    let dq = QForm::random(param, field, r, &mut rng);
    let z = Mat::zeros(field, r, r);
    let lower = match param.flavor {
        crate::formcore::Flavor::Quadratic => z.clone(),
        _ => a.transpose().scale(&param.eps(field)),
    };
    let rep = Mat::block(&z, &a, &lower, dq.rep());
    let base = QSpace::new(QForm::new(param, rep).expect("in subgroup")).expect("metabolic form is nondegenerate");
    let g = random::invertible(field, 2 * r, &mut rng);
    let space = base.transform(&g).expect("invertible");
    let l0 = Mat::identity(field, 2 * r).submatrix(0..2 * r, 0..r);
    let lagrangian = g.inverse().expect("invertible").mul(&l0);
    let embedded = embed_degree0(&space);
    let (complex, quis) = if widen {
        let (pc, g) = gen_quis_perturb(rng.gen(), &embedded);
        (pc, Some(g))
    } else {
        (embedded, None)
    };
    MetabolicInstance { space, lagrangian, rank: r, complex, quis }
}

/// Random basis change in every degree: `g_n = u_n`, `d'_n = u_{n-1}^{-1} d_n u_n`.
pub fn basis_change(e: &ChainComplex, rng: &mut impl Rng) -> (ChainComplex, ChainMap) {
    let field = e.field();
    let (lo, hi) = e.window();
    let u: Vec<Mat> = (lo..=hi).map(|n| random::invertible(field, e.dim(n), rng)).collect();
    let ui = |n: i64| u[(n - lo) as usize].clone();
    let f = ChainComplex::from_fn(field, lo, hi, |n| e.dim(n), |n| ui(n - 1).inverse().unwrap().mul(&e.d(n)).mul(&ui(n)))
        .expect("conjugated complex");
    let g = ChainMap::new(&f, e, |n| if n < lo || n > hi { Mat::zeros(field, e.dim(n), e.dim(n)) } else { ui(n) })
        .expect("basis change is a chain map");
    (f, g)
}

/// `E ⊕ T -> E` with `T = (R^k -1-> R^k)` in degrees `(j+1, j)`, the map
/// being the identity on `E` and `(c_{j+1}, d_{j+1} c_{j+1})` on `T`.
pub fn attach_contractible(e: &ChainComplex, j: i64, k: usize, rng: &mut impl Rng) -> (ChainComplex, ChainMap) {
    let field = e.field();
    let t = ChainComplex::new(field, j, vec![k, k], vec![Mat::identity(field, k)]).expect("two-term complex");
    let f = e.direct_sum(&t);
    let c_top = random::matrix(field, e.dim(j + 1), k, rng);
    let c_low = e.d(j + 1).mul(&c_top);
    let g = ChainMap::new(&f, e, |n| {
        let id = Mat::identity(field, e.dim(n));
        if n == j + 1 {
            id.hstack(&c_top)
        } else if n == j {
            id.hstack(&c_low)
        } else {
            id
        }
    })
    .expect("attaching map is a chain map");
    (f, g)
}

/// Pullback of `p` along one or two random elementary quasi-isomorphisms.
pub fn gen_quis_perturb(seed: u64, p: &PoincareComplex) -> (PoincareComplex, ChainMap) {
    let mut rng = random::rng(seed);
    let mut g = ChainMap::identity(p.complex());
    let steps = rng.gen_range(1..=2);
    for _ in 0..steps {
        let src = g.source().clone();
        let (_, h) = if rng.gen_bool(0.5) {
            basis_change(&src, &mut rng)
        } else {
            let (lo, hi) = src.window();
            let (lo, hi) = if lo > hi { (0, 0) } else { (lo, hi) };
            let j = rng.gen_range(lo - 1..=hi);
            let k = rng.gen_range(1..=2);
            attach_contractible(&src, j, k, &mut rng)
        };
        g = g.compose(&h).expect("composable");
    }
    let pulled = p.pullback(&g).expect("pullback along a quasi-isomorphism");
    (pulled, g)
}

/// A random Poincaré complex on `[-n, n]`: `tau` of a random chain map
/// `E -> E^*` when that is a quasi-isomorphism, otherwise a widened random
/// degree-0 space.
pub fn random_poincare(param: FormParam, field: Field, n: i64, max_dim: usize, rng: &mut impl Rng) -> PoincareComplex {
    for _ in 0..8 {
        let e = random_complex(field, -n, n, max_dim, rng);
        let f = random_chain_map(&e, &dualize(&e), rng);
        let (xi, phi) = tau_cx(param, &f).expect("map into the dual");
        if let Ok(p) = make_poincare(param, e, xi, phi) {
            return p;
        }
    }
    let x = oracle::random_space(param, field, rng.gen_range(0..=max_dim), rng);
    gen_quis_perturb(rng.gen(), &embed_degree0(&x)).0
}

/// Outcome of the randomized relation checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationReport {
    pub trials: usize,
    pub sum_checked: usize,
    pub quis_checked: usize,
    pub metabolic_checked: usize,
    pub counterexample: Option<String>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum relation {} ok, quis relation {} ok, metabolic relation {} ok",
            self.sum_checked, self.quis_checked, self.metabolic_checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "; FAILED: {c}")?;
        }
        Ok(())
    }
}

/// Checks that `gw0_of_complex` respects orthogonal sums, pullback along
/// quasi-isomorphisms, and sends metabolic spaces to hyperbolic classes.
pub fn check_presentation(field: Field, param: FormParam, trials: usize, seed: u64) -> PresentationReport {
    let mut rng = random::rng(seed);
    let mut rep = PresentationReport { trials, ..Default::default() };
    for t in 0..trials {
        if let Err(msg) = presentation_trial(field, param, &mut rng, &mut rep) {
            rep.counterexample = Some(format!("trial {t}: {msg}"));
            break;
        }
    }
    rep
}

fn presentation_trial(field: Field, param: FormParam, rng: &mut impl Rng, rep: &mut PresentationReport) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    let a = random_poincare(param, field, rng.gen_range(0..=2), 2, rng);
    let b = random_poincare(param, field, rng.gen_range(0..=2), 2, rng);
    let sum = gw0_of_complex(&a.orthogonal_sum(&b).map_err(err)?).map_err(err)?;
    let parts = gw0_of_complex(&a).map_err(err)?.add(&gw0_of_complex(&b).map_err(err)?).map_err(err)?;
    if sum != parts {
        return Err(format!("[A ⊥ B] = {sum} but [A] + [B] = {parts}\nA = {a}\nB = {b}"));
    }
    rep.sum_checked += 1;

    let (pulled, _) = gen_quis_perturb(rng.gen(), &a);
    let (ca, cp) = (gw0_of_complex(&a).map_err(err)?, gw0_of_complex(&pulled).map_err(err)?);
    if ca != cp {
        return Err(format!("pullback along a quasi-isomorphism changes {ca} to {cp}\nA = {a}"));
    }
    rep.quis_checked += 1;

    let r = rng.gen_range(0..=3);
    let m = gen_metabolic(rng.gen(), r, field, param, rng.gen_bool(0.5));
    let cm = gw0_of_complex(&m.complex).map_err(err)?;
    let ch = gw0_class(&hyperbolic(param, field, r));
    if cm != ch {
        return Err(format!("metabolic space of rank {} has class {cm}, expected {ch}", 2 * r));
    }
    rep.metabolic_checked += 1;
    Ok(())
}

/// `gw0` of an orthogonal sum of two spaces equals the sum of classes.
pub fn space_sum_relation(x: &QSpace, y: &QSpace) -> Result<bool> {
    let lhs = gw0_of_complex(&embed_degree0(&orthogonal_sum(x, y)?))?;
    Ok(lhs == gw0_class(x).add(&gw0_class(y))?)
}
