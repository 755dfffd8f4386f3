//! Exact scalars: prime fields `F_p` and the rationals.
//!
//! A [`FieldElement`] always carries the field it lives in. Binary operators
//! panic when their operands come from different fields; every public
//! constructor that assembles matrices or tuples checks this up front and
//! returns [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const PRIME_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// `F_p`, after checking that `p` is a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn is_char_two(self) -> bool {
        self.characteristic() == 2
    }

    pub fn zero(self) -> FieldElement {
        self.embed_int(0)
    }

    pub fn one(self) -> FieldElement {
        self.embed_int(1)
    }

    /// Canonical image of an integer.
    pub fn embed_int(self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => FieldElement(Repr::Prime {
                value: n.rem_euclid(p as i64) as u64,
                p,
            }),
            FieldSpec::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(
                BigInt::from(n),
            ))),
        }
    }

    /// `num / den` as a field element; fails when `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Result<FieldElement> {
        Ok(&self.embed_int(num) * &self.embed_int(den).inv()?)
    }

    /// All elements of a prime field in increasing canonical order.
    pub fn elements(self) -> Option<Vec<FieldElement>> {
        match self {
            FieldSpec::Prime(p) => Some((0..p).map(|v| FieldElement(Repr::Prime { value: v, p })).collect()),
            FieldSpec::Rationals => None,
        }
    }

    /// Parses the text encoding: decimal integers for `F_p`, `a/b` or `a` for `Q`.
    pub fn parse(self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        let parse_int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(text.to_string()));
        match self {
            FieldSpec::Prime(p) => {
                if text.contains('/') {
                    return Err(Error::Parse(text.to_string()));
                }
                let n = parse_int(text)?;
                let r = n.mod_floor(&BigInt::from(p));
                Ok(FieldElement(Repr::Prime {
                    value: r.to_u64().expect("residue below p"),
                    p,
                }))
            }
            FieldSpec::Rationals => {
                let q = match text.split_once('/') {
                    Some((a, b)) => {
                        let den = parse_int(b)?;
                        if den.is_zero() {
                            return Err(Error::Parse(text.to_string()));
                        }
                        BigRational::new(parse_int(a)?, den)
                    }
                    None => BigRational::from_integer(parse_int(text)?),
                };
                Ok(FieldElement(Repr::Rational(q)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
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

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Prime { value: u64, p: u64 },
    Rational(BigRational),
}

/// An exact element of `F_p` or `Q` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match &self.0 {
            Repr::Prime { p, .. } => FieldSpec::Prime(*p),
            Repr::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Prime { value, .. } => *value == 0,
            Repr::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Prime { value, .. } => *value == 1,
            Repr::Rational(q) => q.is_one(),
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Prime { value, .. } => Some(*value),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Prime { .. } => None,
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElement(Repr::Rational(q))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.0 {
            Repr::Prime { value, p } => FieldElement(Repr::Prime {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            }),
            Repr::Rational(q) => FieldElement(Repr::Rational(q.recip())),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Some square root in the same field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match &self.0 {
            Repr::Prime { value, p } => sqrt_mod(*value, *p).map(|r| FieldElement(Repr::Prime { value: r, p: *p })),
            Repr::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let (n, d) = (q.numer(), q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                (&rn * &rn == *n && &rd * &rd == *d)
                    .then(|| FieldElement(Repr::Rational(BigRational::new(rn, rd))))
            }
        }
    }

    fn same_field(&self, rhs: &FieldElement) {
        assert_eq!(self.spec(), rhs.spec(), "arithmetic across different fields");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Prime { value, .. } => write!(f, "{value}"),
            Repr::Rational(q) => write!(f, "{q}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

// Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut c = pow_mod(z, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    let mut t = pow_mod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    Some(r)
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, .. }) => {
                FieldElement(Repr::Prime { value: (a + b) % p, p: *p })
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, .. }) => {
                FieldElement(Repr::Prime { value: (a + p - b) % p, p: *p })
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a - b)),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Prime { value: a, p }, Repr::Prime { value: b, .. }) => {
                FieldElement(Repr::Prime { value: a * b % p, p: *p })
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Prime { value, p } => FieldElement(Repr::Prime { value: (p - value) % p, p: *p }),
            Repr::Rational(q) => FieldElement(Repr::Rational(-q)),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
