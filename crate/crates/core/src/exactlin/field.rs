use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field: a prime field `F_p` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u64),
    Rationals,
}

/// A field element. Residues are always reduced into `0..p`; fractions are
/// always in lowest terms, so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rationals => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Fp(r.to_u64().expect("residue fits in u64"))
            }
            Field::Rationals => Scalar::Q(BigRational::from_integer(v.clone())),
        }
    }

    /// `num / den`; fails when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Some(self.mul(&self.from_bigint(num), &inv))
            }
            Field::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(BigRational::new(num.clone(), den.clone())))
                }
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::Prime(_), Scalar::Fp(0)) => None,
            (Field::Prime(p), Scalar::Fp(x)) => Some(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            (Field::Rationals, Scalar::Q(x)) if x.is_zero() => None,
            (Field::Rationals, Scalar::Q(x)) => Some(Scalar::Q(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => x < p,
            (Field::Rationals, Scalar::Q(_)) => true,
            _ => false,
        }
    }

    /// Whether `a` is a nonzero square. Euler's criterion over odd `F_p`;
    /// every nonzero element of `F_2` is a square. Over the rationals this
    /// factors numerator and denominator by trial division.
    pub fn is_square(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(_), Scalar::Fp(0)) => false,
            (Field::Prime(2), Scalar::Fp(_)) => true,
            (Field::Prime(p), Scalar::Fp(x)) => pow_mod(*x, (p - 1) / 2, *p) == 1,
            (Field::Rationals, Scalar::Q(x)) => {
                !x.is_zero() && squarefree_part(x) == BigInt::one()
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Fp).collect()),
            Field::Rationals => None,
        }
    }
}

/// Squarefree representative (with sign) of the square class of a nonzero
/// rational. Prime factors above 10^6 are kept unless the leftover cofactor
/// is itself a perfect square.
pub fn squarefree_part(x: &BigRational) -> BigInt {
    let sign = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
    let n = x.numer().abs() * x.denom().abs();
    let mut rest = n;
    let mut out = BigInt::one();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= rest && d <= limit {
        let mut count = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &d;
        }
        d += 1u32;
    }
    let r = rest.sqrt();
    if &r * &r != rest {
        out *= rest;
    }
    sign * out
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F5` or a bare prime `5`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = s.strip_prefix('F').unwrap_or(s);
        let p: u64 = digits.parse().map_err(|_| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("bad field '{s}'"),
        })?;
        Field::prime(p)
    }
}

impl Scalar {
    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp(x) => Some(*x),
            Scalar::Q(_) => None,
        }
    }

    /// Sign of a rational (`None` over `F_p`).
    pub fn sign(&self) -> Option<i32> {
        match self {
            Scalar::Fp(_) => None,
            Scalar::Q(x) if x.is_zero() => Some(0),
            Scalar::Q(x) if x.is_positive() => Some(1),
            Scalar::Q(_) => Some(-1),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) if x.denom().is_one() => write!(f, "{}", x.numer()),
            Scalar::Q(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7919).is_ok());
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(5);
        let two = f.from_i64(2);
        assert_eq!(f.inv(&two), Some(f.from_i64(3)));
        assert_eq!(f.from_i64(-1), Scalar::Fp(4));
        assert_eq!(f.inv(&f.zero()), None);
        assert!(f.is_square(&f.from_i64(4)));
        assert!(!f.is_square(&f.from_i64(2)));
        let f3 = Field::Prime(3);
        assert!(!f3.is_square(&f3.from_i64(2)));
    }

    #[test]
    fn rational_square_classes() {
        let q = Field::Rationals;
        let v = |n: i64, d: i64| Scalar::Q(BigRational::new(n.into(), d.into()));
        assert!(q.is_square(&v(9, 4)));
        assert!(!q.is_square(&v(-1, 1)));
        assert!(!q.is_square(&v(8, 1)));
        assert_eq!(squarefree_part(&BigRational::new(18.into(), 1.into())), 2.into());
        assert_eq!(squarefree_part(&BigRational::new((-3).into(), 12.into())), (-1).into());
    }

    #[test]
    fn parse_field() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("F3".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("4".parse::<Field>().is_err());
    }
}
