//! Bounded chain complexes of free modules, homologically indexed
//! (`d_n: E_n -> E_{n-1}`), with signed duality, cones and path objects.
//!
//! Sign conventions: `(E^*)_i = (E_{-i})^*` with differential
//! `(-1)^{i+1} (d_{-i+1})^T`, `(f^*)_i = (f_{-i})^T`, and
//! `can_i = (-1)^i epsilon`. Shifts carry no sign.

mod poincare;

pub use poincare::{embed_degree0, make_poincare, restrict_poincare, tau_cx, PoincareComplex};

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat};
use crate::formcore::Sign;
use crate::random;

fn parity(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A chain complex with an explicit window `[lo, hi]`; modules outside the
/// window are zero. An empty window has `lo > hi`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is `d_{lo + k}`; `d_lo` has no rows.
    diffs: Vec<Mat>,
}

impl ChainComplex {
    pub fn zero(field: Field) -> ChainComplex {
        ChainComplex { field, lo: 0, hi: -1, dims: vec![], diffs: vec![] }
    }

    /// `dims[k]` is `dim E_{lo+k}`; `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, diffs: Vec<Mat>) -> Result<ChainComplex> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::dims("chain complex", format!("{} differentials", dims.len().saturating_sub(1)), diffs.len()));
        }
        let hi = lo + dims.len() as i64 - 1;
        ChainComplex::from_fn(field, lo, hi, |n| dims[(n - lo) as usize], |n| diffs[(n - lo - 1) as usize].clone())
    }

    /// `d(n)` is queried for `n` in `lo+1..=hi`.
    pub fn from_fn(
        field: Field,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> Mat,
    ) -> Result<ChainComplex> {
        if lo > hi {
            return Ok(ChainComplex { field, lo, hi, dims: vec![], diffs: vec![] });
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let mut diffs = vec![Mat::zeros(field, 0, dims[0])];
        for n in lo + 1..=hi {
            let m = d(n);
            let k = (n - lo) as usize;
            if m.shape() != (dims[k - 1], dims[k]) || m.field() != field {
                return Err(Error::dims("differential", format!("d_{n}: {}x{}", dims[k - 1], dims[k]), format!("{}x{} over {}", m.rows(), m.cols(), m.field())));
            }
            diffs.push(m);
        }
        let e = ChainComplex { field, lo, hi, dims, diffs };
        for n in lo + 1..hi {
            if !e.d(n).mul(&e.d(n + 1)).is_zero() {
                return Err(Error::NotComplex { degree: n });
            }
        }
        Ok(e)
    }

    /// A single module in degree `n`.
    pub fn concentrated(field: Field, n: i64, dim: usize) -> ChainComplex {
        ChainComplex::from_fn(field, n, n, |_| dim, |_| unreachable!()).expect("valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `d_n: E_n -> E_{n-1}`, zero outside the window.
    pub fn d(&self, n: i64) -> Mat {
        if n <= self.lo || n > self.hi {
            Mat::zeros(self.field, self.dim(n - 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    /// Smallest and largest degree with a nonzero module.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (self.lo..=self.hi).filter(|&n| self.dim(n) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Same complex on a different window; fails if a nonzero module would
    /// be cut off.
    pub fn with_window(&self, lo: i64, hi: i64) -> Result<ChainComplex> {
        if let Some((a, b)) = self.support() {
            if a < lo || b > hi {
                return Err(Error::invariant("window", format!("support [{a}, {b}] not inside [{lo}, {hi}]")));
            }
        }
        ChainComplex::from_fn(self.field, lo, hi, |n| self.dim(n), |n| self.d(n))
    }

    pub fn homology(&self, n: i64) -> usize {
        self.dim(n) - self.d(n).rank() - self.d(n + 1).rank()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi).all(|n| self.homology(n) == 0)
    }

    fn union_window(&self, other: &ChainComplex) -> (i64, i64) {
        match (self.lo <= self.hi, other.lo <= other.hi) {
            (true, true) => (self.lo.min(other.lo), self.hi.max(other.hi)),
            (true, false) => (self.lo, self.hi),
            (false, true) => (other.lo, other.hi),
            (false, false) => (0, -1),
        }
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let (lo, hi) = self.union_window(other);
        ChainComplex::from_fn(self.field, lo, hi, |n| self.dim(n) + other.dim(n), |n| self.d(n).block_diag(&other.d(n)))
            .expect("direct sum of complexes")
    }
}

impl PartialEq for ChainComplex {
    /// Equality of modules and differentials in every degree, ignoring how
    /// far the windows extend over zero modules.
    fn eq(&self, other: &Self) -> bool {
        let (lo, hi) = self.union_window(other);
        self.field == other.field && (lo..=hi).all(|n| self.dim(n) == other.dim(n) && self.d(n) == other.d(n))
    }
}

impl Eq for ChainComplex {}

impl fmt::Display for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex over {} on [{}, {}]", self.field, self.lo, self.hi)?;
        for n in (self.lo..=self.hi).rev() {
            write!(f, "\n  E_{n}: dim {}", self.dim(n))?;
            if n > self.lo {
                write!(f, ", d_{n} = {}", self.d(n))?;
            }
        }
        Ok(())
    }
}

/// A chain map `f: source -> target`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    comps: Vec<Mat>,
}

impl ChainMap {
    /// `f(n)` is queried over the union of both windows.
    pub fn new(source: &ChainComplex, target: &ChainComplex, f: impl Fn(i64) -> Mat) -> Result<ChainMap> {
        let (lo, hi) = source.union_window(target);
        let mut comps = Vec::new();
        for n in lo..=hi {
            let m = f(n);
            if m.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::dims("chain map", format!("f_{n}: {}x{}", target.dim(n), source.dim(n)), format!("{}x{}", m.rows(), m.cols())));
            }
            comps.push(m);
        }
        let map = ChainMap { source: source.clone(), target: target.clone(), lo, comps };
        for n in lo..=hi + 1 {
            if map.f(n - 1).mul(&source.d(n)) != target.d(n).mul(&map.f(n)) {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(map)
    }

    pub fn identity(e: &ChainComplex) -> ChainMap {
        ChainMap::new(e, e, |n| Mat::identity(e.field, e.dim(n))).expect("identity")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap::new(source, target, |n| Mat::zeros(source.field, target.dim(n), source.dim(n))).expect("zero map")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Component `f_n: E_n -> F_n`.
    pub fn f(&self, n: i64) -> Mat {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            Mat::zeros(self.source.field, self.target.dim(n), self.source.dim(n))
        }
    }

    fn window(&self) -> (i64, i64) {
        self.source.union_window(&self.target)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.target != self.source {
            return Err(Error::invariant("compose", "target of the first map is not the source of the second"));
        }
        ChainMap::new(&g.source, &self.target, |n| self.f(n).mul(&g.f(n)))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::invariant("add", "maps have different source or target"));
        }
        ChainMap::new(&self.source, &self.target, |n| self.f(n).add(&other.f(n)))
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::new(&self.source, &self.target, |n| self.f(n).neg()).expect("negation")
    }

    pub fn is_iso(&self) -> bool {
        let (lo, hi) = self.window();
        (lo..=hi).all(|n| self.f(n).is_invertible())
    }

    pub fn inverse(&self) -> Option<ChainMap> {
        let (lo, hi) = self.window();
        let inv: Vec<Mat> = (lo..=hi).map(|n| self.f(n).inverse()).collect::<Option<_>>()?;
        ChainMap::new(&self.target, &self.source, |n| inv[(n - lo) as usize].clone()).ok()
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let s = self.source.direct_sum(&other.source);
        let t = self.target.direct_sum(&other.target);
        ChainMap::new(&s, &t, |n| self.f(n).block_diag(&other.f(n))).expect("direct sum of maps")
    }
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let (a, b) = self.window();
        let (c, d) = other.window();
        (a.min(c)..=b.max(d)).all(|n| self.f(n) == other.f(n))
    }
}

impl Eq for ChainMap {}

impl fmt::Display for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window();
        write!(f, "chain map")?;
        for n in (lo..=hi).rev() {
            write!(f, "\n  f_{n} = {}", self.f(n))?;
        }
        Ok(())
    }
}

/// `E^*`.
pub fn dualize(e: &ChainComplex) -> ChainComplex {
    ChainComplex::from_fn(
        e.field,
        -e.hi,
        -e.lo,
        |i| e.dim(-i),
        |i| e.d(-i + 1).transpose().scale_i64(parity(i + 1)),
    )
    .expect("dual of a complex")
}

/// `f^*: F^* -> E^*` for `f: E -> F`.
pub fn dualize_map(f: &ChainMap) -> ChainMap {
    ChainMap::new(&dualize(&f.target), &dualize(&f.source), |i| f.f(-i).transpose()).expect("dual of a chain map")
}

/// `can_E: E -> E^{**}`, `(-1)^i epsilon` in degree `i`.
pub fn can_map(e: &ChainComplex, eps: Sign) -> ChainMap {
    let dd = dualize(&dualize(e));
    ChainMap::new(e, &dd, |i| Mat::scalar(e.field, e.dim(i), parity(i) * eps.value())).expect("can is a chain map")
}

/// `E[k]_i = E_{i-k}`, same differentials.
pub fn shift(e: &ChainComplex, k: i64) -> ChainComplex {
    ChainComplex::from_fn(e.field, e.lo + k, e.hi + k, |i| e.dim(i - k), |i| e.d(i - k)).expect("shift")
}

pub fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    ChainMap::new(&shift(&f.source, k), &shift(&f.target, k), |i| f.f(i - k)).expect("shift of a map")
}

/// `C(f)_n = B_n ⊕ A_{n-1}`, `d = [[d, f], [0, -d]]`.
pub fn cone_of_map(f: &ChainMap) -> ChainComplex {
    let (a, b) = (&f.source, &f.target);
    let field = a.field;
    let (lo, hi) = b.union_window(&shift(a, 1));
    ChainComplex::from_fn(
        field,
        lo,
        hi,
        |n| b.dim(n) + a.dim(n - 1),
        |n| Mat::block(&b.d(n), &f.f(n - 1), &Mat::zeros(field, a.dim(n - 2), b.dim(n)), &a.d(n - 1).neg()),
    )
    .expect("cone of a chain map")
}

/// `CE` with the inclusion `i = (1; 0): E -> CE`.
pub fn cone_obj(e: &ChainComplex) -> (ChainComplex, ChainMap) {
    let ce = cone_of_map(&ChainMap::identity(e));
    let i = ChainMap::new(e, &ce, |n| Mat::identity(e.field, e.dim(n)).vstack(&Mat::zeros(e.field, e.dim(n - 1), e.dim(n))))
        .expect("inclusion into the cone");
    (ce, i)
}

/// `(PE)_n = E_n ⊕ E_{n+1}`, `d = [[d, 0], [1, -d]]`, with `p = (1 0): PE -> E`.
pub fn path_obj(e: &ChainComplex) -> (ChainComplex, ChainMap) {
    let field = e.field;
    let (lo, hi) = e.union_window(&shift(e, -1));
    let pe = ChainComplex::from_fn(
        field,
        lo,
        hi,
        |n| e.dim(n) + e.dim(n + 1),
        |n| {
            Mat::block(
                &e.d(n),
                &Mat::zeros(field, e.dim(n - 1), e.dim(n + 1)),
                &Mat::identity(field, e.dim(n)),
                &e.d(n + 1).neg(),
            )
        },
    )
    .expect("path object");
    let p = ChainMap::new(&pe, e, |n| Mat::identity(field, e.dim(n)).hstack(&Mat::zeros(field, e.dim(n), e.dim(n + 1))))
        .expect("path projection");
    (pe, p)
}

/// `C(f)_n = f_n ⊕ f_{n-1}`.
pub fn cone_functor(f: &ChainMap) -> ChainMap {
    let (s, _) = cone_obj(&f.source);
    let (t, _) = cone_obj(&f.target);
    ChainMap::new(&s, &t, |n| f.f(n).block_diag(&f.f(n - 1))).expect("C on maps")
}

/// `P(f)_n = f_n ⊕ f_{n+1}`.
pub fn path_functor(f: &ChainMap) -> ChainMap {
    let (s, _) = path_obj(&f.source);
    let (t, _) = path_obj(&f.target);
    ChainMap::new(&s, &t, |n| f.f(n).block_diag(&f.f(n + 1))).expect("P on maps")
}

/// `gamma_E: P(E^*) -> (CE)^*`, `diag(1, (-1)^n)` in degree `n`.
pub fn gamma(e: &ChainComplex) -> ChainMap {
    let (pd, _) = path_obj(&dualize(e));
    let (ce, _) = cone_obj(e);
    let field = e.field;
    ChainMap::new(&pd, &dualize(&ce), |n| {
        Mat::identity(field, e.dim(-n)).block_diag(&Mat::scalar(field, e.dim(-n - 1), parity(n)))
    })
    .expect("gamma is a chain map")
}

/// `gamma~_E = P(can_E)^* ∘ gamma_{E^*}^* ∘ can_{C(E^*)}: C(E^*) -> (PE)^*`.
pub fn gamma_tilde(e: &ChainComplex, eps: Sign) -> ChainMap {
    let ed = dualize(e);
    let (ced, _) = cone_obj(&ed);
    let pcan = dualize_map(&path_functor(&can_map(e, eps)));
    let gd = dualize_map(&gamma(&ed));
    pcan.compose(&gd).and_then(|m| m.compose(&can_map(&ced, eps))).expect("gamma tilde composes")
}

pub fn gamma_maps(e: &ChainComplex, eps: Sign) -> (ChainMap, ChainMap) {
    (gamma(e), gamma_tilde(e, eps))
}

/// Checks `i^* gamma = p`, the defining formula of `gamma~`, and the four
/// remaining compatibilities between `gamma`, `gamma~`, `can`, `P` and `C`.
/// Returns the name of the first identity that fails.
pub fn check_gamma_identities(e: &ChainComplex, eps: Sign) -> std::result::Result<(), String> {
    let ed = dualize(e);
    let (g, gt) = gamma_maps(e, eps);
    let (_, i_e) = cone_obj(e);
    let (_, p_e) = path_obj(e);
    let (_, i_ed) = cone_obj(&ed);
    let (_, p_ed) = path_obj(&ed);
    let can_e = can_map(e, eps);
    let g_ed = gamma(&ed);
    let gt_ed = gamma_tilde(&ed, eps);
    let (pe, _) = path_obj(e);
    let (ce, _) = cone_obj(e);
    let (ced, _) = cone_obj(&ed);
    let (ped, _) = path_obj(&ed);

    let checks: Vec<(&str, Result<bool>)> = vec![
        ("i* gamma = p", dualize_map(&i_e).compose(&g).map(|m| m == p_ed)),
        ("gamma~ definition", {
            let rhs = dualize_map(&path_functor(&can_e))
                .compose(&dualize_map(&g_ed))
                .and_then(|m| m.compose(&can_map(&ced, eps)));
            rhs.map(|m| m == gt)
        }),
        ("p* = gamma~ i", gt.compose(&i_ed).map(|m| m == dualize_map(&p_e))),
        ("gamma = C(can)* gamma~_{E*}* can", {
            let rhs = dualize_map(&cone_functor(&can_e))
                .compose(&dualize_map(&gt_ed))
                .and_then(|m| m.compose(&can_map(&ped, eps)));
            rhs.map(|m| m == g)
        }),
        ("gamma_{E*} P(can) = gamma~* can", {
            let lhs = g_ed.compose(&path_functor(&can_e));
            let rhs = dualize_map(&gt).compose(&can_map(&pe, eps));
            lhs.and_then(|l| rhs.map(|r| l == r))
        }),
        ("gamma~_{E*} C(can) = gamma* can", {
            let lhs = gt_ed.compose(&cone_functor(&can_e));
            let rhs = dualize_map(&g).compose(&can_map(&ce, eps));
            lhs.and_then(|l| rhs.map(|r| l == r))
        }),
    ];
    for (name, ok) in checks {
        match ok {
            Ok(true) => {}
            Ok(false) => return Err(format!("{name} fails on {e}")),
            Err(err) => return Err(format!("{name}: {err}")),
        }
    }
    if !g.is_iso() || !gt.is_iso() {
        return Err("gamma is not an isomorphism".into());
    }
    Ok(())
}

pub fn homology(e: &ChainComplex, n: i64) -> usize {
    e.homology(n)
}

/// Quasi-isomorphism test: the cone is acyclic.
pub fn is_quis(f: &ChainMap) -> bool {
    cone_of_map(f).is_acyclic()
}

/// Quasi-isomorphism test through induced maps on homology: in each degree
/// the image of `f(Z_n)` in `H_n(target)` must have the dimension of both
/// homology groups.
pub fn is_quis_by_homology(f: &ChainMap) -> bool {
    let (lo, hi) = f.window();
    (lo..=hi).all(|n| {
        let (a, b) = (&f.source, &f.target);
        let ha = a.homology(n);
        let hb = b.homology(n);
        if ha != hb {
            return false;
        }
        let z = a.d(n).kernel_basis();
        let bounds = b.d(n + 1);
        let image = bounds.hstack(&f.f(n).mul(&z)).rank() - bounds.rank();
        image == ha
    })
}

/// Random complex on `[lo, hi]` with modules of dimension at most `max_dim`,
/// built downward so that `d_{n-1} d_n = 0`.
pub fn random_complex(field: Field, lo: i64, hi: i64, max_dim: usize, rng: &mut impl Rng) -> ChainComplex {
    if lo > hi {
        return ChainComplex::zero(field);
    }
    let dims: Vec<usize> = (lo..=hi).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<Mat> = Vec::new();
    // diffs built from the top: d_hi, d_{hi-1}, ...
    for n in (lo + 1..=hi).rev() {
        let (src, tgt) = (dims[(n - lo) as usize], dims[(n - lo - 1) as usize]);
        let m = match diffs.last() {
            None => random::matrix(field, tgt, src, rng),
            Some(above) => {
                let k = above.transpose().kernel_basis();
                random::matrix(field, tgt, k.cols(), rng).mul(&k.transpose())
            }
        };
        diffs.push(m);
    }
    diffs.reverse();
    ChainComplex::new(field, lo, dims, diffs).expect("random complex")
}

/// Uniformly random element of the space of chain maps `E -> F`.
pub fn random_chain_map(e: &ChainComplex, f: &ChainComplex, rng: &mut impl Rng) -> ChainMap {
    let field = e.field;
    let (lo, hi) = e.union_window(f);
    // unknowns: entries of f_n for n in [lo, hi], row-major, concatenated
    let mut offsets = Vec::new();
    let mut total = 0;
    for n in lo..=hi {
        offsets.push(total);
        total += f.dim(n) * e.dim(n);
    }
    let off = |n: i64| offsets[(n - lo) as usize];
    let mut rows: Vec<Vec<crate::exactlin::Scalar>> = Vec::new();
    for n in lo + 1..=hi {
        // (f_{n-1} d_n - d_n f_n)[r][c] = 0
        let (dn_e, dn_f) = (e.d(n), f.d(n));
        for r in 0..f.dim(n - 1) {
            for c in 0..e.dim(n) {
                let mut row = vec![field.zero(); total];
                for k in 0..e.dim(n - 1) {
                    let idx = off(n - 1) + r * e.dim(n - 1) + k;
                    row[idx] = field.add(&row[idx], dn_e.get(k, c));
                }
                for k in 0..f.dim(n) {
                    let idx = off(n) + k * e.dim(n) + c;
                    row[idx] = field.sub(&row[idx], dn_f.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_fn(field, rows.len(), total, |i, j| rows[i][j].clone());
    let basis = system.kernel_basis();
    let coeffs = random::matrix(field, basis.cols(), 1, rng);
    let x = basis.mul(&coeffs);
    ChainMap::new(e, f, |n| {
        if n < lo || n > hi {
            return Mat::zeros(field, f.dim(n), e.dim(n));
        }
        let o = off(n);
        Mat::from_fn(field, f.dim(n), e.dim(n), |r, c| x.get(o + r * e.dim(n) + c, 0).clone())
    })
    .expect("solution of the chain map equations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::Prime(3)
    }

    fn two_term(field: Field, top: i64, m: &Mat) -> ChainComplex {
        ChainComplex::new(field, top - 1, vec![m.rows(), m.cols()], vec![m.clone()]).unwrap()
    }

    #[test]
    fn dualize_examples() {
        let e = ChainComplex::concentrated(f3(), 0, 2);
        assert_eq!(dualize(&e), e);
        let one = Mat::from_i64s(f3(), 1, 1, &[1]);
        let e = two_term(f3(), 1, &one);
        let ed = dualize(&e);
        assert_eq!(ed.window(), (-1, 0));
        assert_eq!(ed.d(0), Mat::from_i64s(f3(), 1, 1, &[2]));
        let edd = dualize(&ed);
        assert_eq!(edd.d(1), e.d(1).neg());
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let one = Mat::from_i64s(f3(), 1, 1, &[1]);
        let err = ChainComplex::new(f3(), 0, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert_eq!(err, Error::NotComplex { degree: 1 });
    }

    #[test]
    fn shift_examples() {
        let mut r = random::rng(3);
        let e = random_complex(f3(), -1, 2, 3, &mut r);
        assert_eq!(shift(&e, 0), e);
        assert_eq!(shift(&shift(&e, 2), -2), e);
        assert_eq!(shift(&e, 1).dim(1), e.dim(0));
    }

    #[test]
    fn cone_and_path_examples() {
        let e = ChainComplex::concentrated(f3(), 0, 1);
        let c = cone_of_map(&ChainMap::identity(&e));
        assert_eq!(c.window(), (0, 1));
        assert_eq!(c.d(1), Mat::identity(f3(), 1));
        assert!(c.is_acyclic());
        let (pe, p) = path_obj(&e);
        assert_eq!(pe.window(), (-1, 0));
        assert_eq!(pe.d(0), Mat::from_i64s(f3(), 1, 1, &[1]));
        assert_eq!(p.f(0), Mat::identity(f3(), 1));
    }

    #[test]
    fn quis_examples() {
        let e = ChainComplex::concentrated(f3(), 0, 1);
        assert!(is_quis(&ChainMap::identity(&e)));
        assert!(!is_quis(&ChainMap::zero(&e, &e)));
        let one = Mat::from_i64s(f3(), 1, 1, &[1]);
        let a = two_term(f3(), 1, &one);
        let b = two_term(f3(), 3, &one);
        let z = ChainMap::zero(&a, &b);
        assert!(is_quis(&z) && is_quis_by_homology(&z));
    }

    #[test]
    fn gamma_in_degree_zero() {
        let e = ChainComplex::concentrated(f3(), 0, 2);
        assert_eq!(check_gamma_identities(&e, Sign::Plus), Ok(()));
        let g = gamma(&e);
        assert_eq!(g.compose(&g.inverse().unwrap()).unwrap(), ChainMap::identity(g.target()));
    }

    #[test]
    fn can_identities() {
        let mut r = random::rng(5);
        for eps in [Sign::Plus, Sign::Minus] {
            let e = random_complex(Field::Prime(5), -2, 2, 3, &mut r);
            let ed = dualize(&e);
            let lhs = dualize_map(&can_map(&e, eps)).compose(&can_map(&ed, eps)).unwrap();
            assert_eq!(lhs, ChainMap::identity(&ed));
        }
    }

    fn arb_complex() -> impl Strategy<Value = (ChainComplex, u64)> {
        let fields = prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5)), Just(Field::Rationals)];
        (fields, -3i64..2, 0i64..5, any::<u64>()).prop_map(|(field, lo, w, seed)| {
            let mut r = random::rng(seed);
            (random_complex(field, lo, lo + w, 3, &mut r), seed)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gamma_identities_hold((e, _) in arb_complex(), minus in any::<bool>()) {
            let eps = if minus { Sign::Minus } else { Sign::Plus };
            prop_assert_eq!(check_gamma_identities(&e, eps), Ok(()));
        }

        #[test]
        fn cones_of_identities_are_acyclic((e, _) in arb_complex()) {
            prop_assert!(cone_obj(&e).0.is_acyclic());
            prop_assert!(path_obj(&e).0.is_acyclic());
        }

        #[test]
        fn quis_tests_agree((e, seed) in arb_complex()) {
            let mut r = random::rng(seed ^ 0xabc);
            let f = random_complex(e.field(), e.lo(), e.hi(), 3, &mut r);
            let m = random_chain_map(&e, &f, &mut r);
            prop_assert_eq!(is_quis(&m), is_quis_by_homology(&m));
            let id = ChainMap::identity(&e);
            prop_assert!(is_quis(&id) && is_quis_by_homology(&id));
        }

        #[test]
        fn duality_preserves_homology((e, _) in arb_complex()) {
            let ed = dualize(&e);
            for n in e.lo()..=e.hi() {
                prop_assert_eq!(ed.homology(-n), e.homology(n));
            }
        }
    }
}
