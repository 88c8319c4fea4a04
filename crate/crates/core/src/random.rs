//! Seeded random generation of matrices and exact sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Field, Mat, Scalar};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `F_p`; small integers and halves over the rationals.
pub fn scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Prime(p) => Scalar::Fp(rng.gen_range(0..p)),
        Field::Rationals => {
            let n = rng.gen_range(-3i64..=3);
            if rng.gen_bool(0.2) {
                field.div(&field.from_i64(n), &field.from_i64(2)).unwrap()
            } else {
                field.from_i64(n)
            }
        }
    }
}

pub fn nonzero_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = scalar(field, rng);
        if s != field.zero() {
            return s;
        }
    }
}

pub fn matrix(field: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| scalar(field, rng))
}

/// Uniform-ish element of `GL_n`, by rejection.
pub fn invertible(field: Field, n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let m = matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random split short exact sequence `X -i-> Y -p-> Z` with `dim X = a`,
/// `dim Z = c`: `i = U (I; 0)`, `p = (0 I) U^{-1}` for random `U`.
pub fn split_ses(field: Field, a: usize, c: usize, rng: &mut impl Rng) -> (Mat, Mat) {
    let n = a + c;
    let u = invertible(field, n, rng);
    let uinv = u.inverse().expect("invertible");
    let i = u.mul(&Mat::identity(field, n).submatrix(0..n, 0..a));
    let p = Mat::identity(field, n).submatrix(a..n, 0..n).mul(&uinv);
    (i, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_ses_is_exact() {
        let mut r = rng(7);
        for field in [Field::Prime(2), Field::Prime(5), Field::Rationals] {
            let (i, p) = split_ses(field, 2, 3, &mut r);
            assert!(p.mul(&i).is_zero());
            assert_eq!(i.rank(), 2);
            assert_eq!(p.rank(), 3);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = matrix(Field::Prime(7), 3, 3, &mut rng(1));
        let b = matrix(Field::Prime(7), 3, 3, &mut rng(1));
        assert_eq!(a, b);
    }
}
