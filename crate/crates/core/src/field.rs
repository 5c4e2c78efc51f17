//! Coefficient fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible characteristic; products of residues must fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `GF(p)`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    /// Maps a rational number into the field; `None` when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(self, r: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let m = ((x % &pb) + &pb) % &pb;
                    m.to_u64().expect("residue fits")
                };
                let num = reduce(r.numer());
                let den = reduce(r.denom());
                if den == 0 {
                    return None;
                }
                let den = Scalar::Fp { v: den, p }.inv()?;
                Some(&Scalar::Fp { v: num, p } * &den)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) if r.is_zero() => None,
            Scalar::Q(r) => Some(Scalar::Q(r.recip())),
            Scalar::Fp { v: 0, .. } => None,
            Scalar::Fp { v, p } => Some(Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p }),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Whether the printed form needs a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar arithmetic across different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: (a + b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: (a + p - b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: a * b % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
    }

    #[test]
    fn residues_stay_reduced() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Fp { v: 4, p: 7 });
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert!((&a + &f.from_i64(3)).is_zero());
    }

    #[test]
    fn rational_lowest_terms() {
        let r = BigRational::new(BigInt::from(4), BigInt::from(-6));
        let s = Field::Rational.from_rational(&r).unwrap();
        assert_eq!(s.to_string(), "-2/3");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_rational(&r), Some(f5.from_i64(1)));
        let half = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(f5.from_rational(&half), None);
    }
}
