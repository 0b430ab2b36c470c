//! Exact coefficients: rationals for characteristic 0, residues for F_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact base-field scalar. Mixing characteristics is a programming
/// error and panics; fallible division is exposed through [`Coeff::inv`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeff {
    Q(BigRational),
    F { p: u64, v: u64 },
}

impl Coeff {
    pub fn zero(p: u64) -> Self {
        if p == 0 {
            Coeff::Q(BigRational::zero())
        } else {
            Coeff::F { p, v: 0 }
        }
    }

    pub fn one(p: u64) -> Self {
        if p == 0 {
            Coeff::Q(BigRational::one())
        } else {
            Coeff::F { p, v: 1 }
        }
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(n))
    }

    pub fn from_bigint(p: u64, n: &BigInt) -> Self {
        if p == 0 {
            Coeff::Q(BigRational::from_integer(n.clone()))
        } else {
            let m = BigInt::from(p);
            let mut r = n % &m;
            if r.is_negative() {
                r += &m;
            }
            let v: u64 = r.try_into().expect("residue fits u64");
            Coeff::F { p, v }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Coeff::Q(_) => 0,
            Coeff::F { p, .. } => *p,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::F { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::F { v, .. } => *v == 1,
        }
    }

    fn binop(&self, other: &Coeff, f: impl Fn(&BigRational, &BigRational) -> BigRational, g: impl Fn(u64, u64, u64) -> u64) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(f(a, b)),
            (Coeff::F { p, v: a }, Coeff::F { p: q, v: b }) => {
                assert_eq!(p, q, "coefficient characteristic mismatch");
                Coeff::F { p: *p, v: g(*a, *b, *p) }
            }
            _ => panic!("coefficient characteristic mismatch"),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a + b, |a, b, p| addm(a, b, p))
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a - b, |a, b, p| addm(a, p - b % p, p))
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        self.binop(other, |a, b| a * b, mulm)
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::F { p, v } => Coeff::F { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Q(a) => Coeff::Q(a.recip()),
            Coeff::F { p, v } => Coeff::F { p: *p, v: powm(*v, *p - 2, *p) },
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }

    /// p-th root. On the prime field F_p the Frobenius is the identity,
    /// so this is a no-op; it is never called in characteristic 0.
    pub fn pth_root(&self) -> Coeff {
        match self {
            Coeff::F { .. } => self.clone(),
            Coeff::Q(_) => panic!("pth_root in characteristic 0"),
        }
    }
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::F { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse_mod_p() {
        for p in [2u64, 3, 5, 7] {
            for v in 1..p {
                let c = Coeff::F { p, v };
                assert!(c.mul(&c.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Coeff::zero(3).inv(), Err(Error::DivisionByZero));
        assert_eq!(Coeff::zero(0).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn negative_int_reduces_mod_p() {
        assert_eq!(Coeff::from_int(5, -3), Coeff::F { p: 5, v: 2 });
    }
}
