//! The ring `Z[x]/(x^2 - x - 1)`, i.e. `Z[phi]` with `phi` the golden ratio.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `u + v*phi` with `phi^2 = phi + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPhi {
    pub u: BigInt,
    pub v: BigInt,
}

impl ZPhi {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        ZPhi {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn zero() -> Self {
        ZPhi::new(0, 0)
    }

    pub fn one() -> Self {
        ZPhi::new(1, 0)
    }

    pub fn phi() -> Self {
        ZPhi::new(0, 1)
    }

    /// `phi^{-1} = phi - 1`.
    pub fn phi_inv() -> Self {
        ZPhi::new(-1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `phi^n` for any integer `n`, by square-and-multiply.
    pub fn phi_pow(n: i64) -> Self {
        let mut base = if n >= 0 { ZPhi::phi() } else { ZPhi::phi_inv() };
        let mut e = n.unsigned_abs();
        let mut acc = ZPhi::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of `u + v*phi` under the real embedding `phi = (1 + sqrt 5) / 2`.
    ///
    /// Twice the value is `p + q*sqrt(5)` with `p = 2u + v`, `q = v`; mixed signs
    /// are settled by comparing `p^2` with `5 q^2`, which never tie unless both vanish.
    pub fn signum(&self) -> Ordering {
        let p: BigInt = &self.u * 2 + &self.v;
        let q = &self.v;
        let sp = p.sign_cmp();
        let sq = q.sign_cmp();
        use Ordering::*;
        match (sp, sq) {
            (Equal, Equal) => Equal,
            (Greater | Equal, Greater | Equal) => Greater,
            (Less | Equal, Less | Equal) => Less,
            (Greater, Less) => {
                let p2 = &p * &p;
                let q2: BigInt = q * q * 5;
                p2.cmp(&q2)
            }
            (Less, Greater) => {
                let p2 = &p * &p;
                let q2: BigInt = q * q * 5;
                q2.cmp(&p2)
            }
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Add for &ZPhi {
    type Output = ZPhi;
    fn add(self, rhs: &ZPhi) -> ZPhi {
        ZPhi {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl Sub for &ZPhi {
    type Output = ZPhi;
    fn sub(self, rhs: &ZPhi) -> ZPhi {
        ZPhi {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl Neg for &ZPhi {
    type Output = ZPhi;
    fn neg(self) -> ZPhi {
        ZPhi {
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl Mul for &ZPhi {
    type Output = ZPhi;
    // (a + b x)(c + d x) = ac + bd + (ad + bc + bd) x
    fn mul(self, rhs: &ZPhi) -> ZPhi {
        let bd = &self.v * &rhs.v;
        ZPhi {
            u: &self.u * &rhs.u + &bd,
            v: &self.u * &rhs.v + &self.v * &rhs.u + bd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(z: &ZPhi) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        z.u.to_string().parse::<f64>().unwrap() + z.v.to_string().parse::<f64>().unwrap() * phi
    }

    #[test]
    fn phi_identities() {
        assert_eq!(&ZPhi::phi() * &ZPhi::phi(), ZPhi::new(1, 1));
        assert_eq!(&ZPhi::phi() * &ZPhi::phi_inv(), ZPhi::one());
        assert_eq!(ZPhi::phi_pow(2), ZPhi::new(1, 1));
        assert_eq!(ZPhi::phi_pow(-3), {
            let i = ZPhi::phi_inv();
            &(&i * &i) * &i
        });
        assert_eq!(ZPhi::phi_pow(0), ZPhi::one());
    }

    #[test]
    fn sign_matches_float_on_small_grid() {
        for u in -30i64..=30 {
            for v in -30i64..=30 {
                let z = ZPhi::new(u, v);
                let f = approx(&z);
                let expect = if u == 0 && v == 0 {
                    Ordering::Equal
                } else if f > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                assert_eq!(z.signum(), expect, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn phi_minus_one_is_positive() {
        assert_eq!(ZPhi::new(-1, 1).signum(), Ordering::Greater);
        // 8 - 5 phi ~ -0.09
        assert_eq!(ZPhi::new(8, -5).signum(), Ordering::Less);
    }
}
