//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Everything downstream of this module is generic over [`Field`]. A field is a
//! small *value* (not just a type) because a prime field carries its modulus at
//! runtime. Rational arithmetic keeps an `i64` numerator/denominator fast path
//! and spills to `BigRational` only when a result does not fit; the invariant
//! that spilled values never fit back into the small representation makes
//! equality structural.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which exact field a document or object lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{}", p),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// An exact field of scalars. Operations take `&self` so a prime field can
/// carry its modulus.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// `acc -= c * b`, the inner loop of row reduction.
    fn mul_sub_in(&self, acc: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(c, b));
    }

    /// `acc += c * b`.
    fn mul_add_in(&self, acc: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(c, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        let bi = self.inv(b).ok_or(ScalarError::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    /// Parse `"-3"` or `"num/den"` in decimal.
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    /// Render so that `parse(render(x)) == x`.
    fn render(&self, a: &Self::Elem) -> String;

    fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } => p,
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

/// An exact rational. `Small(n, d)` keeps `d > 0` and `gcd(|n|, d) = 1`;
/// `Big` holds a canonical `BigRational` and is used only for values whose
/// reduced form does not fit `i64`, so equality is derived structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    fn from_i128_pair(mut n: i128, mut d: i128) -> Rat {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rat::Small(0, 1);
        }
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
        if let (Ok(ns), Ok(ds)) = (i64::try_from(n), i64::try_from(d)) {
            Rat::Small(ns, ds)
        } else {
            Rat::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    /// Re-establish the `Small` representation whenever it fits.
    fn demote(b: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
            Rat::Small(n, d)
        } else {
            Rat::Big(Box::new(b))
        }
    }

    pub fn is_zero_val(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128_pair(n as i128, d as i128)
    }
}

impl Field for Rationals {
    type Elem = Rat;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Rat {
        Rat::ZERO
    }
    fn one(&self) -> Rat {
        Rat::ONE
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero_val()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                let n = (*an as i128) * (*bd as i128) + (*bn as i128) * (*ad as i128);
                let d = (*ad as i128) * (*bd as i128);
                Rat::from_i128_pair(n, d)
            }
            _ => Rat::demote(a.to_big() + b.to_big()),
        }
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                let n = (*an as i128) * (*bd as i128) - (*bn as i128) * (*ad as i128);
                let d = (*ad as i128) * (*bd as i128);
                Rat::from_i128_pair(n, d)
            }
            _ => Rat::demote(a.to_big() - b.to_big()),
        }
    }

    fn neg(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small(n, d) => {
                if *n == i64::MIN {
                    Rat::from_i128_pair(-(*n as i128), *d as i128)
                } else {
                    Rat::Small(-n, *d)
                }
            }
            Rat::Big(b) => Rat::demote(-(**b).clone()),
        }
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                // cross-reduce before multiplying to keep intermediates small
                let g1 = gcd_i128(*an as i128, *bd as i128).max(1);
                let g2 = gcd_i128(*bn as i128, *ad as i128).max(1);
                let n = ((*an as i128) / g1) * ((*bn as i128) / g2);
                let d = ((*ad as i128) / g2) * ((*bd as i128) / g1);
                Rat::from_i128_pair(n, d)
            }
            _ => Rat::demote(a.to_big() * b.to_big()),
        }
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        match a {
            Rat::Small(0, _) => None,
            Rat::Small(n, d) => Some(if *n < 0 {
                Rat::from_i128_pair(-(*d as i128), -(*n as i128))
            } else {
                Rat::Small(*d, *n)
            }),
            Rat::Big(b) => {
                if b.is_zero() {
                    None
                } else {
                    Some(Rat::demote(b.recip()))
                }
            }
        }
    }

    fn from_i64(&self, n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    fn mul_sub_in(&self, acc: &mut Rat, c: &Rat, b: &Rat) {
        // fast path: everything in i64, common case during elimination
        if let (Rat::Small(xn, xd), Rat::Small(cn, cd), Rat::Small(bn, bd)) = (&*acc, c, b) {
            let pn = (*cn as i128) * (*bn as i128);
            let pd = (*cd as i128) * (*bd as i128);
            // acc - pn/pd over i128; overflow is impossible below 2^126
            if let (Some(l), Some(r)) = ((*xn as i128).checked_mul(pd), pn.checked_mul(*xd as i128))
            {
                if let (Some(n), Some(d)) = (l.checked_sub(r), (*xd as i128).checked_mul(pd)) {
                    *acc = Rat::from_i128_pair(n, d);
                    return;
                }
            }
        }
        *acc = self.sub(acc, &self.mul(c, b));
    }

    fn parse(&self, s: &str) -> Result<Rat, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rat::demote(BigRational::new(n, d)))
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::demote(BigRational::from_integer(n)))
        }
    }

    fn render(&self, a: &Rat) -> String {
        match a {
            Rat::Small(n, 1) => format!("{}", n),
            Rat::Small(n, d) => format!("{}/{}", n, d),
            Rat::Big(b) => {
                if b.denom().is_one() {
                    format!("{}", b.numer())
                } else {
                    format!("{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The prime field F_p with canonical representatives `0..p-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert!(r == 1);
        let mut t = t % self.p as i128;
        if t < 0 {
            t += self.p as i128;
        }
        Some(t as u64)
    }

    fn from_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }

    fn mul_sub_in(&self, acc: &mut u64, c: &u64, b: &u64) {
        let prod = ((*c as u128 * *b as u128) % self.p as u128) as u64;
        *acc = self.sub(acc, &prod);
    }

    fn mul_add_in(&self, acc: &mut u64, c: &u64, b: &u64) {
        let prod = ((*c as u128 * *b as u128) % self.p as u128) as u64;
        *acc = self.add(acc, &prod);
    }

    fn parse(&self, s: &str) -> Result<u64, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<u64, ScalarError> {
            let n: i128 = t.trim().parse().map_err(|_| bad())?;
            Ok(n.rem_euclid(self.p as i128) as u64)
        };
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            let di = self.inv(&d).ok_or(ScalarError::DivisionByZero)?;
            Ok(self.mul(&n, &di))
        } else {
            parse_int(s)
        }
    }

    fn render(&self, a: &u64) -> String {
        format!("{}", a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rat_basics() {
        let f = Rationals;
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(f.add(&half, &third), Rat::new(5, 6));
        assert_eq!(f.mul(&half, &third), Rat::new(1, 6));
        assert_eq!(f.inv(&Rat::new(-2, 3)), Some(Rat::new(-3, 2)));
        assert_eq!(f.inv(&Rat::ZERO), None);
        assert_eq!(f.parse("7/-14").unwrap(), Rat::new(-1, 2));
        assert_eq!(f.render(&Rat::new(-1, 2)), "-1/2");
        assert_eq!(f.parse("-3").unwrap(), Rat::from_int(-3));
    }

    #[test]
    fn rat_overflow_spills_to_big_and_back() {
        let f = Rationals;
        let big = Rat::from_int(i64::MAX);
        let sq = f.mul(&big, &big);
        assert!(matches!(sq, Rat::Big(_)));
        // dividing the square by itself comes back to the small form
        let one = f.div(&sq, &sq).unwrap();
        assert_eq!(one, Rat::ONE);
        // a Big value equal to a representable one must not exist
        let back = f.div(&sq, &big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(_, _)));
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("1/3").unwrap(), 5);
        assert!(PrimeField::new(6).is_err());
    }

    proptest! {
        // the hybrid representation agrees with BigRational arithmetic
        #[test]
        fn rat_matches_bigrational(an in -1000i64..1000, ad in 1i64..60,
                                   bn in -1000i64..1000, bd in 1i64..60) {
            let f = Rationals;
            let a = Rat::new(an, ad);
            let b = Rat::new(bn, bd);
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!(f.add(&a, &b).to_big(), ba.clone() + bb.clone());
            prop_assert_eq!(f.sub(&a, &b).to_big(), ba.clone() - bb.clone());
            prop_assert_eq!(f.mul(&a, &b).to_big(), ba.clone() * bb.clone());
            let mut acc = a.clone();
            f.mul_sub_in(&mut acc, &b, &b);
            prop_assert_eq!(acc.to_big(), ba - bb.clone() * bb);
        }

        #[test]
        fn fp_inverse(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]), a in 1u64..100) {
            let f = PrimeField::new(p).unwrap();
            let a = a % p;
            if a != 0 {
                let i = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &i), f.one());
            }
        }
    }
}
