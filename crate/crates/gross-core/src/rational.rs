use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact arbitrary-precision fraction. Always stored reduced, with a
/// positive denominator; zero is `0/1`.
///
/// This is the value space of grossdigits: digits are finite rationals,
/// never infinite or infinitesimal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(numer: N, denom: D) -> Rational {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0, or +1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Exact integer power, negative exponents included (`None` only for
    /// `0^negative`).
    pub fn pow_int(&self, exp: i64) -> Option<Rational> {
        if self.is_zero() && exp < 0 {
            return None;
        }
        if exp == 0 {
            return Some(Rational::one());
        }
        let mut base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut remaining = exp.unsigned_abs();
        let mut acc = Rational::one();
        while remaining > 0 {
            if remaining & 1 == 1 {
                acc = &acc * &base;
            }
            remaining >>= 1;
            if remaining > 0 {
                base = &base * &base;
            }
        }
        Some(acc)
    }

    /// Exact `j`-th root, if it is again rational. Negative inputs are
    /// rejected (callers handle signs).
    pub fn nth_root(&self, j: u32) -> Option<Rational> {
        if self.is_negative() || j == 0 {
            return None;
        }
        let num_root = exact_int_root(self.0.numer(), j)?;
        let den_root = exact_int_root(self.0.denom(), j)?;
        Some(Rational(BigRational::new(num_root, den_root)))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// Parses a plain decimal literal (`"16.5"`, `"0.125"`, `"42"`) into an
    /// exact fraction. Signs are handled by expression parsers, not here.
    pub fn parse_decimal(text: &str) -> Option<Rational> {
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        if int_part.is_empty() || (frac_part.is_empty() && text.contains('.')) {
            return None;
        }
        let digits: String = [int_part, frac_part].concat();
        let numer: BigInt = digits.parse().ok()?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Rational(BigRational::new(numer, denom)))
    }

    /// The denominator factored as `2^a * 5^b * rest`; a terminating decimal
    /// expansion exists iff `rest == 1`.
    fn decimal_scale(&self) -> Option<(u32, u32)> {
        let mut rest = self.0.denom().to_biguint()?;
        let two = BigUint::from(2u32);
        let five = BigUint::from(5u32);
        let mut a = 0u32;
        let mut b = 0u32;
        while (&rest % &two).is_zero() {
            rest /= &two;
            a += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            b += 1;
        }
        if rest.is_one() {
            Some((a, b))
        } else {
            None
        }
    }

    /// Minimal terminating decimal representation, if one exists.
    pub fn to_decimal_string(&self) -> Option<String> {
        let (a, b) = self.decimal_scale()?;
        let scale = a.max(b);
        if scale == 0 {
            return Some(self.0.numer().to_string());
        }
        // Bring the denominator to exactly 10^scale.
        let factor = BigInt::from(2u32).pow(scale - a) * BigInt::from(5u32).pow(scale - b);
        let scaled = (self.0.numer() * factor).abs();
        let mut digits = scaled.to_string();
        let scale = scale as usize;
        if digits.len() <= scale {
            digits = format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits);
        }
        let split = digits.len() - scale;
        let (int_digits, frac_digits) = digits.split_at(split);
        let frac_digits = frac_digits.trim_end_matches('0');
        let sign = if self.is_negative() { "-" } else { "" };
        if frac_digits.is_empty() {
            Some(format!("{sign}{int_digits}"))
        } else {
            Some(format!("{sign}{int_digits}.{frac_digits}"))
        }
    }

    /// Rounds to `digits` significant decimal digits, half away from zero.
    /// The result always has a terminating decimal expansion.
    pub fn round_significant(&self, digits: u32) -> Rational {
        if self.is_zero() || digits == 0 {
            return self.clone();
        }
        let magnitude = self.abs();
        // e = floor(log10(|x|)), found by exact comparison with powers of 10.
        let mut e: i64 = 0;
        let ten = Rational::from_int(10);
        let mut probe = Rational::one();
        if magnitude >= Rational::one() {
            while &probe * &ten <= magnitude {
                probe = &probe * &ten;
                e += 1;
            }
        } else {
            while probe > magnitude {
                probe = &probe / &ten;
                e -= 1;
            }
        }
        let shift = digits as i64 - 1 - e;
        let scale = ten.pow_int(shift).expect("ten is nonzero");
        let scaled = &magnitude * &scale;
        let rounded = (&scaled.0 + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
        let result = Rational(rounded) / scale;
        if self.is_negative() {
            -&result
        } else {
            result
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    /// Parity of an integer value; `None` when not an integer.
    pub fn int_parity_even(&self) -> Option<bool> {
        if self.is_integer() {
            Some(self.0.numer().is_even())
        } else {
            None
        }
    }
}

/// Exact integer `j`-th root: `Some(r)` iff `r^j == n` exactly.
fn exact_int_root(n: &BigInt, j: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = num_integer::Roots::nth_root(n, j);
    if num_traits::Pow::pow(&root, j) == *n {
        Some(root)
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    /// Exact division. Panics on a zero divisor; fallible callers check
    /// first and report `Error::DivisionByZero` themselves.
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_decimal_string() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{}/{}", self.0.numer(), self.0.denom()),
        }
    }
}

impl PartialOrd<Rational> for &Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<Rational> for &Rational {
    fn eq(&self, other: &Rational) -> bool {
        self.0 == other.0
    }
}
