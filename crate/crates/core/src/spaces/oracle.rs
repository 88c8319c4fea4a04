//! Brute-force classification over small prime fields.
//!
//! Nothing here uses Witt decomposition or sublagrangian reduction; the
//! results serve as an independent check on those algorithms.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use super::{orthogonal_sum, projective_points, witt_class, QSpace};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Scalar};
use crate::formcore::{restrict, Flavor, FormParam, QForm};
use crate::random;

/// Whether nondegenerate forms of rank `n` exist: polarizations are
/// alternating over `F_2` (quadratic and even flavors) and whenever
/// `epsilon = -1` in odd characteristic, forcing even rank.
pub fn rank_admissible(param: FormParam, field: Field, n: usize) -> bool {
    let alternating = match field.characteristic() {
        2 => param.flavor != Flavor::Symmetric,
        _ => !param.eps_is_one(field),
    };
    !(alternating && n % 2 == 1)
}

/// A random nondegenerate space of rank `n`, or `n - 1` when rank `n` is
/// impossible for this parameter.
pub fn random_space(param: FormParam, field: Field, n: usize, rng: &mut impl Rng) -> QSpace {
    let n = if rank_admissible(param, field, n) { n } else { n - 1 };
    loop {
        if let Ok(x) = QSpace::new(QForm::random(param, field, n, rng)) {
            return x;
        }
    }
}

fn residues(m: &Mat) -> Vec<u64> {
    m.entries().iter().map(|s| s.residue().expect("finite field")).collect()
}

fn count_power(p: u64, k: usize) -> Option<u64> {
    p.checked_pow(k as u32)
}

/// Every form in `Q(R^n)`, in coordinate order.
pub fn all_forms(param: FormParam, field: Field, n: usize) -> impl Iterator<Item = QForm> {
    let p = field.characteristic();
    assert!(p > 0, "finite field required");
    let k = param.qdim(field, n);
    let total = count_power(p, k).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let coords: Vec<Scalar> = (0..k)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                Scalar::Fp(d)
            })
            .collect();
        QForm::from_coords(param, field, n, &coords)
    })
}

pub fn nondegenerate_forms(param: FormParam, field: Field, n: usize) -> Vec<QSpace> {
    all_forms(param, field, n).filter_map(|q| QSpace::new(q).ok()).collect()
}

/// Every `n x n` matrix over a finite field.
pub fn all_matrices(field: Field, n: usize) -> impl Iterator<Item = Mat> {
    let p = field.characteristic();
    let total = count_power(p, n * n).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let data: Vec<Scalar> = (0..n * n)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                Scalar::Fp(d)
            })
            .collect();
        Mat::from_scalars(field, n, n, data).expect("shape")
    })
}

pub fn general_linear(field: Field, n: usize) -> Vec<Mat> {
    all_matrices(field, n).filter(|m| m.is_invertible()).collect()
}

/// An explicit isometry `g` with `g•b = a`, by exhaustive search.
pub fn isometric_bruteforce(a: &QSpace, b: &QSpace) -> Option<Mat> {
    if a.rank() != b.rank() || a.param() != b.param() || a.field() != b.field() {
        return None;
    }
    all_matrices(a.field(), a.rank())
        .filter(|g| g.is_invertible())
        .find(|g| restrict(g, b.form()).expect("shape") == *a.form())
}

/// Partition of the nondegenerate forms of rank `n` into `GL_n` orbits.
pub fn isometry_orbits(param: FormParam, field: Field, n: usize) -> Vec<Vec<QSpace>> {
    let gl = general_linear(field, n);
    let mut remaining: Vec<QSpace> = nondegenerate_forms(param, field, n);
    let mut orbits = Vec::new();
    while let Some(x) = remaining.first().cloned() {
        let orbit: HashSet<QForm> = gl.iter().map(|g| restrict(g, x.form()).expect("shape")).collect();
        let (inside, outside): (Vec<QSpace>, Vec<QSpace>) =
            remaining.into_iter().partition(|y| orbit.contains(y.form()));
        orbits.push(inside);
        remaining = outside;
    }
    orbits
}

/// Arf invariant as the majority value of `q` over `F_2^n`.
pub fn arf_majority(x: &QSpace) -> u8 {
    let fast = Fast::new(x);
    let n = x.rank();
    let ones = (0u64..1 << n)
        .filter(|bits| {
            let v: Vec<u64> = (0..n).map(|i| (bits >> i) & 1).collect();
            fast.q(&v) == 1
        })
        .count();
    u8::from(2 * ones > 1 << n)
}

/// Residue-level copy of a form for tight loops.
struct Fast {
    p: u64,
    n: usize,
    rep: Vec<u64>,
    polar: Vec<u64>,
    q_trivial: bool,
}

impl Fast {
    fn new(x: &QSpace) -> Fast {
        Fast {
            p: x.field().characteristic(),
            n: x.rank(),
            rep: residues(x.form().rep()),
            polar: residues(x.polar()),
            q_trivial: !x.param().diagonal_free(x.field()),
        }
    }

    /// `v^T M v` for the representative, i.e. the form on the line `v`.
    fn q(&self, v: &[u64]) -> u64 {
        if self.q_trivial {
            return 0;
        }
        self.pair(&self.rep, v, v)
    }

    fn b(&self, u: &[u64], v: &[u64]) -> u64 {
        self.pair(&self.polar, u, v)
    }

    fn pair(&self, m: &[u64], u: &[u64], v: &[u64]) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for i in 0..self.n {
            if u[i] == 0 {
                continue;
            }
            let mut row: u128 = 0;
            for j in 0..self.n {
                row += m[i * self.n + j] as u128 * v[j] as u128;
            }
            acc = (acc + u[i] as u128 * (row % p)) % p;
        }
        acc as u64
    }
}

/// Incremental row echelon basis mod p, used for independence tests.
struct Span {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r % p) % p;
                }
            }
        }
        v
    }

    fn try_push(&mut self, v: &[u64]) -> bool {
        let r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = Field::Prime(self.p).inv(&Scalar::Fp(r[piv])).unwrap().residue().unwrap();
        let row: Vec<u64> = r.iter().map(|x| x * inv % self.p).collect();
        self.rows.push((piv, row));
        true
    }
}

/// Whether the space has a Lagrangian: a totally isotropic subspace of
/// half the rank. Searched greedily where Witt's extension theorem applies,
/// by full backtracking for symmetric bilinear forms over `F_2`.
pub fn is_metabolic(x: &QSpace) -> bool {
    let n = x.rank();
    if n % 2 == 1 {
        return false;
    }
    let fast = Fast::new(x);
    let iso: Vec<Vec<u64>> = projective_points(x.field(), n)
        .into_iter()
        .map(|v| v.iter().map(|s| s.residue().unwrap()).collect::<Vec<u64>>())
        .filter(|v| fast.q(v) == 0 && fast.b(v, v) == 0)
        .collect();
    let backtrack = x.field() == Field::Prime(2) && x.param().flavor == Flavor::Symmetric;
    let mut chosen: Vec<usize> = Vec::new();
    if backtrack {
        search(&fast, &iso, n / 2, 0, &mut chosen)
    } else {
        let mut span = Span { p: fast.p, rows: Vec::new() };
        for _ in 0..n / 2 {
            let next = (0..iso.len()).find(|&c| {
                chosen.iter().all(|&d| fast.b(&iso[d], &iso[c]) == 0) && span.reduce(&iso[c]).iter().any(|&e| e != 0)
            });
            match next {
                Some(c) => {
                    span.try_push(&iso[c]);
                    chosen.push(c);
                }
                None => return false,
            }
        }
        true
    }
}

fn search(fast: &Fast, iso: &[Vec<u64>], want: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == want {
        return true;
    }
    for c in start..iso.len() {
        if !chosen.iter().all(|&d| fast.b(&iso[d], &iso[c]) == 0) {
            continue;
        }
        let mut span = Span { p: fast.p, rows: Vec::new() };
        for &d in chosen.iter() {
            span.try_push(&iso[d]);
        }
        if !span.try_push(&iso[c]) {
            continue;
        }
        chosen.push(c);
        if search(fast, iso, want, c + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Witt equivalence by definition: `x ⊥ (-y)` is metabolic.
pub fn witt_equivalent(x: &QSpace, y: &QSpace) -> bool {
    x.rank() % 2 == y.rank() % 2 && is_metabolic(&orthogonal_sum(x, &y.negate()).expect("same parameter"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCoverage {
    pub rank: usize,
    /// Size of `Q(R^rank)`, when it fits in a `u64`.
    pub forms: Option<u64>,
    pub classified: usize,
    pub exhaustive: bool,
}

/// The Witt group assembled from brute-force metabolic tests.
#[derive(Clone, Debug)]
pub struct WittTable {
    pub field: Field,
    pub param: FormParam,
    /// Class representatives; index 0 is the zero class.
    pub classes: Vec<QSpace>,
    /// `sum[i][j]` is the class of `classes[i] ⊥ classes[j]`.
    pub sum: Vec<Vec<usize>>,
    pub coverage: Vec<RankCoverage>,
    /// Forms whose brute-force class disagrees with Witt decomposition.
    pub decompose_mismatches: usize,
}

impl WittTable {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    /// Additive order of a class.
    pub fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut k = 1;
        while acc != 0 {
            acc = self.sum[acc][i];
            k += 1;
            if k > self.order() + 1 {
                return 0;
            }
        }
        k
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        let idx = 0..n;
        let comm = idx.clone().all(|i| (0..n).all(|j| self.sum[i][j] == self.sum[j][i]));
        let unit = idx.clone().all(|i| self.sum[0][i] == i);
        let inv = idx.clone().all(|i| (0..n).any(|j| self.sum[i][j] == 0));
        let assoc = idx.clone().all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.sum[self.sum[i][j]][k] == self.sum[i][self.sum[j][k]]))
        });
        comm && unit && inv && assoc
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: &QSpace) -> Option<usize> {
        (0..self.order()).find(|&k| witt_equivalent(x, &self.classes[k]))
    }
}

impl fmt::Display for WittTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "witt table over {} ({})", self.field, self.param)?;
        writeln!(f, "order {}", self.order())?;
        for (i, c) in self.classes.iter().enumerate() {
            let inv = super::invariants(c);
            writeln!(f, "class {i}: {} [{}] order {}", c.form().rep(), inv, self.element_order(i))?;
        }
        for (i, row) in self.sum.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|k| k.to_string()).collect();
            writeln!(f, "sum {i}: {}", cells.join(" "))?;
        }
        for c in &self.coverage {
            let total = c.forms.map_or("huge".to_string(), |t| t.to_string());
            let how = if c.exhaustive { "exhaustive" } else { "sampled" };
            writeln!(f, "rank {}: {} nondegenerate forms classified of {} ({how})", c.rank, c.classified, total)?;
        }
        writeln!(f, "group: {}", self.is_group())?;
        write!(f, "decomposition mismatches: {}", self.decompose_mismatches)
    }
}

/// Classifies nondegenerate forms up to Witt equivalence. Ranks 0..=2 are
/// always enumerated; higher ranks exhaustively when `Q(R^n)` has at most
/// `budget` elements, otherwise on `samples` seeded random spaces.
pub fn witt_table(field: Field, param: FormParam, max_rank: usize, budget: u64, samples: usize, seed: u64) -> Result<WittTable> {
    if !field.is_finite() {
        return Err(Error::Unsupported("Witt tables over Q".into()));
    }
    let p = field.characteristic();
    let mut classes: Vec<QSpace> = Vec::new();
    let mut coverage = Vec::new();
    let mut mismatches = 0;
    let mut rng = random::rng(seed);

    for rank in 0..=max_rank {
        let total = count_power(p, param.qdim(field, rank));
        let exhaustive = rank <= 2 || total.is_some_and(|t| t <= budget);
        let forms: Vec<QSpace> = if !rank_admissible(param, field, rank) {
            Vec::new()
        } else if exhaustive {
            nondegenerate_forms(param, field, rank)
        } else {
            (0..samples).map(|_| random_space(param, field, rank, &mut rng)).collect()
        };
        for x in &forms {
            let hits: Vec<usize> = (0..classes.len()).filter(|&k| witt_equivalent(x, &classes[k])).collect();
            let k = match hits.as_slice() {
                [] if rank <= 2 => {
                    classes.push(x.clone());
                    classes.len() - 1
                }
                [k] => *k,
                [] => return Err(Error::invariant("witt table", format!("{x} matches no class of rank <= 2"))),
                _ => return Err(Error::invariant("witt table", format!("{x} matches classes {hits:?}"))),
            };
            if witt_class(x)? != witt_class(&classes[k])? {
                mismatches += 1;
            }
        }
        coverage.push(RankCoverage { rank, forms: total, classified: forms.len(), exhaustive });
    }

    let n = classes.len();
    let mut sum = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let s = orthogonal_sum(&classes[i], &classes[j])?;
            let hits: Vec<usize> = (0..n).filter(|&k| witt_equivalent(&s, &classes[k])).collect();
            match hits.as_slice() {
                [k] => sum[i][j] = *k,
                _ => return Err(Error::invariant("witt table", format!("sum of classes {i}, {j} matches {hits:?}"))),
            }
        }
    }
    Ok(WittTable { field, param, classes, sum, coverage, decompose_mismatches: mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formcore::Sign;
    use crate::spaces::{hyperbolic, invariants, isometric};

    const QP: FormParam = FormParam { epsilon: Sign::Plus, flavor: Flavor::Quadratic };

    #[test]
    fn metabolic_basics() {
        let f3 = Field::Prime(3);
        assert!(is_metabolic(&hyperbolic(QP, f3, 2)));
        let two = QSpace::diagonal(QP, f3, &[1, 1]).unwrap();
        assert!(!is_metabolic(&two));
        let sym = FormParam::symmetric();
        let f2 = Field::Prime(2);
        assert!(is_metabolic(&QSpace::diagonal(sym, f2, &[1, 1]).unwrap()));
        assert!(!is_metabolic(&QSpace::diagonal(sym, f2, &[1]).unwrap()));
    }

    #[test]
    fn orbits_match_invariants() {
        for (field, max_n) in [(Field::Prime(2), 3), (Field::Prime(3), 3)] {
            for param in FormParam::all() {
                for n in 0..=max_n {
                    let orbits = isometry_orbits(param, field, n);
                    let labels: Vec<_> = orbits.iter().map(|o| invariants(&o[0])).collect();
                    for (o, label) in orbits.iter().zip(&labels) {
                        assert!(o.iter().all(|x| invariants(x) == *label), "{param} {field} rank {n}");
                    }
                    let distinct: HashSet<_> = labels.iter().collect();
                    assert_eq!(distinct.len(), labels.len(), "{param} {field} rank {n}: invariants merge orbits");
                    if let [a, .., b] = orbits.as_slice() {
                        assert!(!isometric(&a[0], &b[0]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn small_tables() {
        let t = witt_table(Field::Prime(3), QP, 2, 0, 0, 1).unwrap();
        assert_eq!(t.order(), 4);
        assert!(t.is_group());
        let one = QSpace::diagonal(QP, Field::Prime(3), &[1]).unwrap();
        assert_eq!(t.element_order(t.class_of(&one).unwrap()), 4);
        let t2 = witt_table(Field::Prime(2), QP, 2, 0, 0, 1).unwrap();
        assert_eq!(t2.order(), 2);
    }
}
