//! Exact scalars: the field `Q(i, sqrt2)` with a formal invertible symbol `pi`.
//!
//! A [`Cyc`] is an element of `Q(i, sqrt2)` written in the basis
//! `{1, i, sqrt2, i*sqrt2}`. A [`Scalar`] is a finite Laurent polynomial in
//! `pi` with [`Cyc`] coefficients, stored sorted by exponent with no zero
//! coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of `Q(i, sqrt2)`: `c[0] + c[1] i + c[2] sqrt2 + c[3] i sqrt2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc(pub [BigRational; 4]);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc([BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        let mut c = Self::zero();
        c.0[0] = r;
        c
    }

    pub fn from_parts(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Cyc([a, b, c, d])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.0[1..].iter().all(Zero::is_zero)
    }

    /// Complex conjugation `i -> -i`.
    pub fn conj(&self) -> Self {
        Cyc([self.0[0].clone(), -&self.0[1], self.0[2].clone(), -&self.0[3]])
    }

    pub fn mul_ref(&self, o: &Cyc) -> Cyc {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        let mut r = Cyc::zero();
        // (a + bi + c s + d i s)(e + fi + g s + h i s), s^2 = 2, i^2 = -1.
        let terms: [(&BigRational, &BigRational, usize, i64); 16] = [
            (a, e, 0, 1),
            (a, f, 1, 1),
            (a, g, 2, 1),
            (a, h, 3, 1),
            (b, e, 1, 1),
            (b, f, 0, -1),
            (b, g, 3, 1),
            (b, h, 2, -1),
            (c, e, 2, 1),
            (c, f, 3, 1),
            (c, g, 0, 2),
            (c, h, 1, 2),
            (d, e, 3, 1),
            (d, f, 2, -1),
            (d, g, 1, 2),
            (d, h, 0, -2),
        ];
        for (x, y, slot, k) in terms {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let p = x * y;
            match k {
                1 => r.0[slot] += p,
                -1 => r.0[slot] -= p,
                _ => r.0[slot] += p * q(k),
            }
        }
        r
    }

    /// Multiplicative inverse. Writes `x = X + iY` with `X, Y` in `Q(sqrt2)`,
    /// so `1/x = (X - iY) / (X^2 + Y^2)`, and inverts the norm in `Q(sqrt2)`
    /// through its conjugate `a - b sqrt2`.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero".into()));
        }
        let conj = self.conj();
        // x * conj(x) = X^2 + Y^2 lies in Q(sqrt2): components 0 and 2 only.
        let n = self.mul_ref(&conj);
        let (a, b) = (&n.0[0], &n.0[2]);
        let norm = a * a - b * b * q(2);
        let inv_n = Cyc([a / &norm, BigRational::zero(), -(b / &norm), BigRational::zero()]);
        Ok(conj.mul_ref(&inv_n))
    }

    fn scale(&self, r: &BigRational) -> Cyc {
        Cyc([&self.0[0] * r, &self.0[1] * r, &self.0[2] * r, &self.0[3] * r])
    }

    /// Numerical value as `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let f = |r: &BigRational| ratio_to_f64(r);
        let s2 = std::f64::consts::SQRT_2;
        (f(&self.0[0]) + s2 * f(&self.0[2]), f(&self.0[1]) + s2 * f(&self.0[3]))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add<&Cyc> for &Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        Cyc([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2], &self.0[3] + &o.0[3]])
    }
}

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, o: &Cyc) {
        for k in 0..4 {
            if !o.0[k].is_zero() {
                self.0[k] += &o.0[k];
            }
        }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }
}

/// Laurent polynomial in `pi` over `Q(i, sqrt2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: Vec<(i64, Cyc)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(q(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_ratio(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Self::monomial(0, Cyc::rational(r))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_ratio(BigRational::from_integer(n))
    }

    /// `c * pi^e`.
    pub fn monomial(e: i64, c: Cyc) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: vec![(e, c)] }
        }
    }

    pub fn i() -> Self {
        Self::monomial(0, Cyc::from_parts(q(0), q(1), q(0), q(0)))
    }

    pub fn sqrt2() -> Self {
        Self::monomial(0, Cyc::from_parts(q(0), q(0), q(1), q(0)))
    }

    pub fn pi() -> Self {
        Self::monomial(1, Cyc::one())
    }

    /// `pi^e`.
    pub fn pi_pow(e: i64) -> Self {
        Self::monomial(e, Cyc::one())
    }

    /// `2 pi i`.
    pub fn two_pi_i() -> Self {
        Self::monomial(1, Cyc::from_parts(q(0), q(2), q(0), q(0)))
    }

    /// `2^(k/2)` for any integer `k`.
    pub fn sqrt2_pow(k: i64) -> Self {
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let p = if half >= 0 {
            BigRational::from_integer(BigInt::from(2).pow(half as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(2).pow((-half) as u32))
        };
        let c = if odd { Cyc::from_parts(q(0), q(0), p, q(0)) } else { Cyc::rational(p) };
        Self::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == Cyc::one()
    }

    pub fn terms(&self) -> &[(i64, Cyc)] {
        &self.terms
    }

    /// The coefficient when `self` is free of `pi`, otherwise `None`.
    pub fn as_cyc(&self) -> Option<Cyc> {
        match self.terms.as_slice() {
            [] => Some(Cyc::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Rational value when `self` is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_cyc().filter(Cyc::is_rational).map(|c| c.0[0].clone())
    }

    pub fn is_pi_free(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e == 0)
    }

    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    pub fn scale_ratio(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, c.scale(r))).collect() }
    }

    /// Inverse of a single `pi`-monomial.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::NotInvertible("zero".into())),
            [(e, c)] => Ok(Self::monomial(-e, c.inv()?)),
            _ => Err(Error::NotInvertible(format!("{self} is not a monomial in pi"))),
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Integer power, negative exponents allowed for monomials.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow((-k) as u32))
        }
    }

    fn from_sorted(mut terms: Vec<(i64, Cyc)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        Scalar { terms }
    }

    /// Numerical value with `pi` replaced by its floating-point value.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let (a, b) = c.to_f64_pair();
            let s = std::f64::consts::PI.powi(*e as i32);
            re += a * s;
            im += b * s;
        }
        (re, im)
    }
}

fn merge(a: &[(i64, Cyc)], b: &[(i64, Cyc)], negate_b: bool) -> Vec<(i64, Cyc)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &Cyc| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, nb(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = if negate_b { &a[i].1 + &(-&b[j].1) } else { &a[i].1 + &b[j].1 };
                out.push((a[i].0, s));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, nb(c))));
    out
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        Scalar::from_sorted(merge(&self.terms, &o.terms, false))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        Scalar::from_sorted(merge(&self.terms, &o.terms, true))
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (e1, c1) = &self.terms[0];
            let (e2, c2) = &o.terms[0];
            return Scalar::monomial(e1 + e2, c1.mul_ref(c2));
        }
        let mut acc: std::collections::BTreeMap<i64, Cyc> = Default::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let p = c1.mul_ref(c2);
                acc.entry(e1 + e2).and_modify(|x| *x += &p).or_insert(p);
            }
        }
        Scalar::from_sorted(acc.into_iter().collect())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

const BASIS: [&str; 4] = ["", "i", "sqrt2", "i*sqrt2"];

impl fmt::Display for Scalar {
    /// Canonical rendering, e.g. `3/2*i*pi^-1 + sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            for (k, r) in c.0.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let neg = r.is_negative();
                let mag = r.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                first = false;
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || (k == 0 && *e == 0) {
                    factors.push(mag.to_string());
                }
                if k > 0 {
                    factors.push(BASIS[k].to_string());
                }
                match *e {
                    0 => {}
                    1 => factors.push("pi".into()),
                    _ => factors.push(format!("pi^{e}")),
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_plus_i(sign: i64) -> Scalar {
        Scalar::one() + Scalar::i() * Scalar::from_int(sign)
    }

    #[test]
    fn conjugate_sum_and_product() {
        assert_eq!(one_plus_i(1) + one_plus_i(-1), Scalar::from_int(2));
        assert_eq!(one_plus_i(1) * one_plus_i(-1), Scalar::from_int(2));
    }

    #[test]
    fn additive_identity_and_doubling() {
        assert_eq!(Scalar::pi() + Scalar::zero(), Scalar::pi());
        let a = Scalar::sqrt2() * Scalar::pi_pow(-1);
        assert_eq!(&a + &a, Scalar::from_int(2) * &a);
        assert_eq!((&a + &a).to_string(), "2*sqrt2*pi^-1");
    }

    #[test]
    fn sqrt2_squared() {
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(Scalar::sqrt2_pow(3), Scalar::from_int(2) * Scalar::sqrt2());
        assert_eq!(Scalar::sqrt2_pow(-1) * Scalar::sqrt2(), Scalar::one());
    }

    #[test]
    fn two_pi_i_inverse() {
        let x = Scalar::two_pi_i();
        let inv = x.inv().unwrap();
        // Field inverse of 2i is -i/2.
        let expected = Scalar::monomial(-1, Cyc::from_parts(q(0), BigRational::new((-1).into(), 2.into()), q(0), q(0)));
        assert_eq!(inv, expected);
        assert_eq!(&inv * &x, Scalar::one());
        assert_eq!(Scalar::one().inv().unwrap(), Scalar::one());
        assert!(Scalar::zero().inv().is_err());
        assert!((Scalar::pi() + Scalar::one()).inv().is_err());
    }

    #[test]
    fn general_field_inverse() {
        // (1 + i + sqrt2 - 3 i sqrt2)
        let x = Scalar::monomial(2, Cyc::from_parts(q(1), q(1), q(1), q(-3)));
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn rendering() {
        let a = Scalar::monomial(-1, Cyc::from_parts(q(0), BigRational::new(3.into(), 2.into()), q(0), q(0)));
        let s = a + Scalar::sqrt2();
        assert_eq!(s.to_string(), "3/2*i*pi^-1 + sqrt2");
        assert_eq!((-Scalar::one() - Scalar::i()).to_string(), "-1 - i");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::pi().to_string(), "pi");
    }

    #[test]
    fn numeric_value() {
        let (re, im) = Scalar::two_pi_i().inv().unwrap().to_f64_pair();
        assert!(re.abs() < 1e-15);
        assert!((im + 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }
}
