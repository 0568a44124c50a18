//! Exact scalars over Q and Q(i), quantum integers and seeded sampling.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Guard bound for "generic" parameters: no q-power with exponent up to this
/// bound may coincide with a sampled point.
pub const DEFAULT_GUARD: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate q = {0}: need q != 0 and q^2 != 1")]
    DegenerateQ(String),
    #[error("q = {q} is a root of unity of order {order} within the guard bound")]
    RootOfUnity { q: String, order: u32 },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{value} is not in the rational field")]
    WrongField { value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "gaussian")]
    GaussianRational,
}

impl FieldTag {
    pub fn admits(self, s: &Scalar) -> bool {
        match self {
            FieldTag::Rational => s.im.is_zero(),
            FieldTag::GaussianRational => true,
        }
    }
}

/// An element re + i·im of Q(i). Both parts are kept in lowest terms, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar { re: BigRational::new(p.into(), q.into()), im: BigRational::zero() }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    /// (real numerator, imaginary numerator, common positive denominator)
    pub fn parts(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.re.denom().lcm(self.im.denom());
        let a = self.re.numer() * (&d / self.re.denom());
        let b = self.im.numer() * (&d / self.im.denom());
        (a, b, d)
    }

    pub fn field(&self) -> FieldTag {
        if self.im.is_zero() {
            FieldTag::Rational
        } else {
            FieldTag::GaussianRational
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Scalar::from_rational(self.re.recip()));
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn parse_in(s: &str, field: FieldTag) -> Result<Self, ScalarError> {
        let v: Scalar = s.parse()?;
        if !field.admits(&v) {
            return Err(ScalarError::WrongField { value: s.to_string() });
        }
        Ok(v)
    }

    /// Exact square root inside Q(i) when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.im.is_zero() {
            if let Some(r) = rational_sqrt(&self.re.abs()) {
                return Some(if self.re.is_negative() {
                    Scalar { re: BigRational::zero(), im: r }
                } else {
                    Scalar::from_rational(r)
                });
            }
            return None;
        }
        // (u + iv)^2 = re + i im  =>  u^2 = (re + |z|)/2
        let norm = rational_sqrt(&(&self.re * &self.re + &self.im * &self.im))?;
        let two = BigRational::from_integer(2.into());
        let u2 = (&self.re + &norm) / &two;
        let u = rational_sqrt(&u2)?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        Some(Scalar { re: u, im: v })
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(v.into()))
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from(v as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

fn add_s(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: &a.re + &b.re, im: &a.im + &b.im }
}

fn sub_s(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: &a.re - &b.re, im: &a.im - &b.im }
}

fn mul_s(a: &Scalar, b: &Scalar) -> Scalar {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::from_rational(&a.re * &b.re);
    }
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

fn div_s(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_div(b).expect("division by zero scalar")
}

binop!(Add, add, add_s);
binop!(Sub, sub, sub_s);
binop!(Mul, mul, mul_s);
binop!(Div, div, div_s);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_s(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for v in iter {
            acc += &v;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let (a, b, d) = self.parts();
        let sign = if b.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}i)", a, sign, b.abs())?;
        if !d.is_one() {
            write!(f, "/{}", d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

fn parse_gaussian(body: &str) -> Option<Scalar> {
    let body = body.strip_suffix('i')?;
    // split point: last sign that is not leading and does not follow '/'
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
            split = Some(k);
            break;
        }
    }
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im_s = im_s.strip_prefix('+').unwrap_or(im_s);
    let im = match im_s {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        _ => parse_rational(im_s)?,
    };
    Some(Scalar { re: parse_rational(re_s)?, im })
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ScalarError::Parse(s.to_string());
        if !t.contains('i') {
            return parse_rational(&t).map(Scalar::from_rational).ok_or_else(err);
        }
        if let Some(rest) = t.strip_prefix('(') {
            let (inner, tail) = rest.split_once(')').ok_or_else(err)?;
            let v = parse_gaussian(inner).ok_or_else(err)?;
            if tail.is_empty() {
                return Ok(v);
            }
            let d = parse_rational(tail.strip_prefix('/').ok_or_else(err)?).ok_or_else(err)?;
            return Ok(&v / &Scalar::from_rational(d));
        }
        parse_gaussian(&t).ok_or_else(err)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The deformation parameter q with its nondegeneracy checked up front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSpec {
    q: Scalar,
}

impl QSpec {
    /// Accepts any q with q != 0 and q^2 != 1 (q = ±i is allowed).
    pub fn new(q: Scalar) -> Result<Self, ScalarError> {
        check_q(&q)?;
        Ok(QSpec { q })
    }

    /// Additionally rejects roots of unity of order up to `guard`.
    pub fn generic(q: Scalar, guard: u32) -> Result<Self, ScalarError> {
        check_q(&q)?;
        let mut p = Scalar::one();
        for m in 1..=guard {
            p = &p * &q;
            if p.is_one() {
                return Err(ScalarError::RootOfUnity { q: q.to_string(), order: m });
            }
        }
        Ok(QSpec { q })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn pow(&self, e: i64) -> Scalar {
        self.q.pow(e).expect("q is nonzero")
    }

    pub fn int(&self, n: u32) -> Scalar {
        q_int(n, &self.q).expect("q is nondegenerate")
    }

    pub fn binomial(&self, n: i64, m: i64) -> Result<Scalar, ScalarError> {
        q_binomial(n, m, &self.q)
    }
}

fn check_q(q: &Scalar) -> Result<(), ScalarError> {
    if q.is_zero() || (q * q).is_one() {
        return Err(ScalarError::DegenerateQ(q.to_string()));
    }
    Ok(())
}

/// [n]_q = (q^n - q^-n)/(q - q^-1).
pub fn q_int(n: u32, q: &Scalar) -> Result<Scalar, ScalarError> {
    check_q(q)?;
    let qn = q.pow(n as i64)?;
    let num = &qn - &qn.inv()?;
    let den = q - &q.inv()?;
    num.checked_div(&den)
}

pub fn q_factorial(n: u32, q: &Scalar) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::one();
    for k in 1..=n {
        acc = &acc * &q_int(k, q)?;
    }
    Ok(acc)
}

/// [n]_q! / ([m]_q! [n-m]_q!).
pub fn q_binomial(n: i64, m: i64, q: &Scalar) -> Result<Scalar, ScalarError> {
    if m < 0 || n < 0 || m > n {
        return Err(ScalarError::Index(format!("q_binomial({n}, {m})")));
    }
    let top = q_factorial(n as u32, q)?;
    let bottom = &q_factorial(m as u32, q)? * &q_factorial((n - m) as u32, q)?;
    top.checked_div(&bottom)
}

/// Deterministic source of exact sample points.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: 9 }
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(2) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Nonzero p/q with |p|, q bounded.
    pub fn nonzero(&mut self) -> Scalar {
        loop {
            let p = self.rng.gen_range(-self.bound..=self.bound);
            let q = self.rng.gen_range(1..=self.bound);
            if p != 0 {
                return Scalar::from_ratio(p, q);
            }
        }
    }

    /// A rational q usable as a generic deformation parameter.
    pub fn generic_q(&mut self) -> QSpec {
        loop {
            let v = self.nonzero();
            if let Ok(q) = QSpec::generic(v, DEFAULT_GUARD) {
                return q;
            }
        }
    }

    /// A nonzero point avoiding `avoid` and, when `q` is given, every q^k with
    /// |k| up to the guard bound.
    pub fn generic_point(&mut self, q: Option<&Scalar>, avoid: &[Scalar]) -> Scalar {
        let mut banned: HashSet<Scalar> = avoid.iter().cloned().collect();
        banned.insert(Scalar::one());
        banned.insert(-Scalar::one());
        if let Some(q) = q {
            banned.extend(q_powers(q, DEFAULT_GUARD));
        }
        loop {
            let v = self.nonzero();
            if !banned.contains(&v) {
                return v;
            }
        }
    }
}

fn q_powers(q: &Scalar, guard: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::one()];
    let (mut up, mut down) = (Scalar::one(), Scalar::one());
    let qi = q.inv().expect("q is nonzero");
    for _ in 0..guard {
        up = &up * q;
        down = &down * &qi;
        out.push(up.clone());
        out.push(down.clone());
    }
    out
}

/// One generic nonzero rational determined by `seed`, distinct from `avoid`
/// and from ±1.
pub fn random_generic(seed: u64, avoid: &[Scalar]) -> Scalar {
    Sampler::new(seed).generic_point(None, avoid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn small_sums_and_units() {
        assert_eq!(s("1/2") + s("1/3"), s("5/6"));
        assert_eq!(Scalar::i() * Scalar::i(), s("-1"));
        let q = s("7/3");
        assert!((q.pow(-2).unwrap() * q.pow(2).unwrap()).is_one());
    }

    #[test]
    fn quantum_integers() {
        let q = s("3");
        assert!(q_int(1, &q).unwrap().is_one());
        assert!(q_int(0, &q).unwrap().is_zero());
        assert_eq!(q_int(2, &q).unwrap(), s("10/3"));
        assert_eq!(q_int(3, &s("2")).unwrap(), s("21/4"));
        assert!(matches!(q_int(2, &s("-1")), Err(ScalarError::DegenerateQ(_))));
    }

    #[test]
    fn binomials() {
        let q = s("2");
        assert!(q_binomial(5, 0, &q).unwrap().is_one());
        assert_eq!(q_binomial(2, 1, &q).unwrap(), s("5/2"));
        assert!(matches!(q_binomial(2, 3, &q), Err(ScalarError::Index(_))));
        assert!(matches!(q_binomial(2, -1, &q), Err(ScalarError::Index(_))));
    }

    #[test]
    fn display_round_trip() {
        for v in ["0", "-3", "5/7", "(1+2i)", "(1-2i)/3", "(0+1i)", "(-4+1i)/5"] {
            let x = s(v);
            assert_eq!(x.to_string(), v);
            assert_eq!(s(&x.to_string()), x);
        }
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("1/2-3/4i"), Scalar::gaussian(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into())));
    }

    #[test]
    fn parse_rejects_garbage_and_wrong_field() {
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!(Scalar::parse_in("i", FieldTag::Rational).is_err());
        assert!(Scalar::parse_in("i", FieldTag::GaussianRational).is_ok());
    }

    #[test]
    fn sqrt_in_field() {
        assert_eq!(s("9/4").sqrt(), Some(s("3/2")));
        assert_eq!(s("-4").sqrt(), Some(s("(0+2i)")));
        assert_eq!(s("2").sqrt(), None);
        let z = s("(3+4i)");
        let r = z.sqrt().unwrap();
        assert_eq!(&r * &r, z);
    }

    #[test]
    fn generic_q_guard() {
        assert!(QSpec::new(Scalar::i()).is_ok());
        assert!(matches!(QSpec::generic(Scalar::i(), 64), Err(ScalarError::RootOfUnity { order: 4, .. })));
        assert!(QSpec::generic(s("2/3"), 64).is_ok());
        assert!(QSpec::new(Scalar::zero()).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_avoids() {
        let avoid = [s("2"), s("1/2")];
        assert_eq!(random_generic(5, &avoid), random_generic(5, &avoid));
        let mut sm = Sampler::new(1);
        let q = s("2");
        for _ in 0..200 {
            let x = sm.generic_point(Some(&q), &avoid);
            assert!(!x.is_zero());
            for k in -64..=64 {
                assert_ne!(x, q.pow(k).unwrap());
            }
        }
    }
}
