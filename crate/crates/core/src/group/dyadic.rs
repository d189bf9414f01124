//! Dyadic rationals `num / 2^exp`, kept in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An element of `Z[1/2]`.
///
/// Canonical form: `exp == 0` or `num` is odd. Zero is `0 / 2^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u64) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic {
            num: n.into(),
            exp: 0,
        }
    }

    pub fn zero() -> Self {
        Dyadic::from_int(0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the power-of-two denominator.
    pub fn denominator_exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_zero() {
            0
        } else if self.num.is_positive() {
            1
        } else {
            -1
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        if self.exp == 0 {
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exp);
        if shift > 0 {
            self.num >>= shift as usize;
            self.exp -= shift;
        }
    }

    /// Multiplies by `2^k` for any signed `k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k <= self.exp {
                Dyadic::new(self.num.clone(), self.exp - k)
            } else {
                Dyadic {
                    num: &self.num << ((k - self.exp) as usize),
                    exp: 0,
                }
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + k.unsigned_abs())
        }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = a.exp.max(b.exp);
        let an = &a.num << ((e - a.exp) as usize);
        let bn = &b.num << ((e - b.exp) as usize);
        (an, bn, e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a - b, e)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            let den = BigInt::one() << (self.exp as usize);
            write!(f, "{}/{}", self.num, den)
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid dyadic rational {0:?}")]
pub struct ParseDyadicError(pub String);

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Dyadic::from_int(BigInt::from_str(s).map_err(|_| err())?)),
            Some((n, d)) => {
                let num = BigInt::from_str(n.trim()).map_err(|_| err())?;
                let den = BigInt::from_str(d.trim()).map_err(|_| err())?;
                if !den.is_positive() {
                    return Err(err());
                }
                let exp = den.trailing_zeros().unwrap_or(0);
                if (den >> (exp as usize)) != BigInt::one() {
                    return Err(err());
                }
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}
