use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::rational::Rational;

/// One term `digit * G^power` of a grossnumber.
///
/// The digit is a nonzero finite rational; the power (grosspower) is itself a
/// grossnumber and may be finite, infinite, or infinitesimal. Nesting bottoms
/// out at purely finite powers, so every value built by the public API has
/// finite depth.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    digit: Rational,
    power: GrossNumber,
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}G^({:?})", self.digit, self.power)
    }
}

impl Term {
    pub fn new(digit: Rational, power: GrossNumber) -> Term {
        Term { digit, power }
    }

    pub fn digit(&self) -> &Rational {
        &self.digit
    }

    pub fn power(&self) -> &GrossNumber {
        &self.power
    }
}

/// A grossnumber in canonical form: terms with nonzero digits, sorted by
/// strictly decreasing grosspower. Zero is the empty term list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GrossNumber {
    terms: Vec<Term>,
}

/// Coarse classification of a grossnumber by its grosspowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberClass {
    Zero,
    /// A single term with grosspower zero: an ordinary finite rational.
    FinitePure,
    /// All grosspowers negative.
    Infinitesimal,
    /// At least one positive grosspower.
    Infinite,
    /// Highest grosspower zero with negative grosspowers present.
    FiniteMixed,
}

impl fmt::Display for NumberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            NumberClass::Zero => "zero",
            NumberClass::FinitePure => "finite",
            NumberClass::Infinitesimal => "infinitesimal",
            NumberClass::Infinite => "infinite",
            NumberClass::FiniteMixed => "finite-mixed",
        };
        write!(f, "{name}")
    }
}

/// Parity of an integer grossnumber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl GrossNumber {
    pub fn zero() -> GrossNumber {
        GrossNumber { terms: Vec::new() }
    }

    pub fn one() -> GrossNumber {
        GrossNumber::from_rational(Rational::one())
    }

    /// The infinite unit `G` itself.
    pub fn grossone() -> GrossNumber {
        GrossNumber::single(Rational::one(), GrossNumber::one())
    }

    /// Embeds a rational as a grossnumber (single term with power zero).
    pub fn from_rational(r: Rational) -> GrossNumber {
        if r.is_zero() {
            GrossNumber::zero()
        } else {
            GrossNumber {
                terms: vec![Term::new(r, GrossNumber::zero())],
            }
        }
    }

    pub fn from_int(n: i64) -> GrossNumber {
        GrossNumber::from_rational(Rational::from_int(n))
    }

    /// `digit * G^power`, canonicalized (zero digit gives zero).
    pub fn single(digit: Rational, power: GrossNumber) -> GrossNumber {
        if digit.is_zero() {
            GrossNumber::zero()
        } else {
            GrossNumber {
                terms: vec![Term::new(digit, power)],
            }
        }
    }

    /// Canonical form of an arbitrary term list: equal powers merged by
    /// adding digits, zero digits dropped, powers sorted strictly
    /// decreasing. Idempotent.
    pub fn from_terms<I: IntoIterator<Item = Term>>(raw: I) -> GrossNumber {
        let mut by_power: BTreeMap<GrossNumber, Rational> = BTreeMap::new();
        for term in raw {
            match by_power.get_mut(&term.power) {
                Some(digit) => *digit = &*digit + &term.digit,
                None => {
                    by_power.insert(term.power, term.digit);
                }
            }
        }
        let terms = by_power
            .into_iter()
            .rev()
            .filter(|(_, digit)| !digit.is_zero())
            .map(|(power, digit)| Term::new(digit, power))
            .collect();
        GrossNumber { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_finite_rational().is_some_and(|r| r.is_one())
    }

    /// The term with the largest grosspower.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// `Some(r)` when the number is an ordinary rational (zero or a single
    /// term with power zero).
    pub fn as_finite_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.power.is_zero() => Some(t.digit.clone()),
            _ => None,
        }
    }

    /// `Some((digit, power))` for single-term numbers.
    pub fn as_single_term(&self) -> Option<(&Rational, &GrossNumber)> {
        match self.terms.as_slice() {
            [t] => Some((&t.digit, &t.power)),
            _ => None,
        }
    }

    /// Sign of the value: the sign of the digit attached to the largest
    /// grosspower (that term dominates everything below it).
    pub fn sign(&self) -> i8 {
        self.leading().map_or(0, |t| t.digit.signum())
    }

    pub fn add(&self, other: &GrossNumber) -> GrossNumber {
        // Both inputs are canonical, so a sorted merge suffices.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = other.terms.iter().peekable();
        loop {
            match (left.peek(), right.peek()) {
                (Some(a), Some(b)) => match a.power.cmp(&b.power) {
                    Ordering::Greater => terms.push((*left.next().unwrap()).clone()),
                    Ordering::Less => terms.push((*right.next().unwrap()).clone()),
                    Ordering::Equal => {
                        let a = left.next().unwrap();
                        let b = right.next().unwrap();
                        let digit = &a.digit + &b.digit;
                        if !digit.is_zero() {
                            terms.push(Term::new(digit, a.power.clone()));
                        }
                    }
                },
                (Some(_), None) => terms.push((*left.next().unwrap()).clone()),
                (None, Some(_)) => terms.push((*right.next().unwrap()).clone()),
                (None, None) => break,
            }
        }
        GrossNumber { terms }
    }

    pub fn neg(&self) -> GrossNumber {
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(-&t.digit, t.power.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &GrossNumber) -> GrossNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GrossNumber) -> GrossNumber {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term::new(&a.digit * &b.digit, a.power.add(&b.power)));
            }
        }
        GrossNumber::from_terms(raw)
    }

    /// Multiplies every digit by a rational scalar.
    pub fn scale(&self, factor: &Rational) -> GrossNumber {
        if factor.is_zero() {
            return GrossNumber::zero();
        }
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.digit * factor, t.power.clone()))
                .collect(),
        }
    }

    /// `A^n` for a finite natural exponent, by repeated squaring.
    /// `A^0 = 1` for every `A`, grossone included.
    pub fn pow_nat(&self, n: u64) -> GrossNumber {
        let mut acc = GrossNumber::one();
        let mut base = self.clone();
        let mut remaining = n;
        while remaining > 0 {
            if remaining & 1 == 1 {
                acc = acc.mul(&base);
            }
            remaining >>= 1;
            if remaining > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact `j`-th root of a single positive term `c * G^p`, yielding
    /// `c^(1/j) * G^(p/j)` when the digit root is rational.
    pub fn nth_root(&self, j: u32) -> Result<GrossNumber, Error> {
        if j == 0 {
            return Err(Error::UnsupportedShape("zeroth root"));
        }
        let (digit, power) = self
            .as_single_term()
            .ok_or(Error::UnsupportedShape("root of a multi-term number"))?;
        if digit.is_negative() {
            return Err(Error::UnsupportedShape("root of a negative number"));
        }
        let digit_root = digit.nth_root(j).ok_or(Error::InexactRoot)?;
        let power_divisor = Rational::new(1, i64::from(j));
        Ok(GrossNumber::single(digit_root, power.scale(&power_divisor)))
    }

    pub fn classify(&self) -> NumberClass {
        let Some(leading) = self.leading() else {
            return NumberClass::Zero;
        };
        match leading.power.sign() {
            1 => NumberClass::Infinite,
            -1 => NumberClass::Infinitesimal,
            _ => {
                if self.terms.len() == 1 {
                    NumberClass::FinitePure
                } else {
                    NumberClass::FiniteMixed
                }
            }
        }
    }

    /// An integer in the extended sense: every positive grosspower is a
    /// positive integer (so the term counts whole `G^p / q` blocks, which
    /// divisibility makes integral for any rational digit), the power-zero
    /// digit is an integer, and no negative grosspowers occur.
    pub fn is_integer(&self) -> bool {
        for term in &self.terms {
            match term.power.sign() {
                1 => {
                    if !term.power.is_integer() {
                        return false;
                    }
                }
                0 => {
                    if !term.digit.is_integer() {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Parity of an integer grossnumber. Every term with a positive
    /// grosspower is even (halving its digit still leaves an integer), so
    /// parity is decided by the power-zero digit alone.
    pub fn parity(&self) -> Result<Parity, Error> {
        if !self.is_integer() {
            return Err(Error::NotInteger);
        }
        let constant = self
            .terms
            .iter()
            .find(|t| t.power.is_zero())
            .map_or(Rational::zero(), |t| t.digit.clone());
        match constant.int_parity_even() {
            Some(true) => Ok(Parity::Even),
            Some(false) => Ok(Parity::Odd),
            None => Err(Error::NotInteger),
        }
    }

    /// Largest integer grossnumber not exceeding the value. Defined when
    /// every positive grosspower is a positive integer; the infinitesimal
    /// tail only matters when the finite digit is already an integer.
    pub fn floor(&self) -> Result<GrossNumber, Error> {
        let mut infinite_part = Vec::new();
        let mut constant = Rational::zero();
        let mut tail_sign = 0i8;
        for term in &self.terms {
            match term.power.sign() {
                1 => {
                    if !term.power.is_integer() {
                        return Err(Error::NotInteger);
                    }
                    infinite_part.push(term.clone());
                }
                0 => constant = term.digit.clone(),
                _ => {
                    if tail_sign == 0 {
                        tail_sign = term.digit.signum();
                    }
                }
            }
        }
        let floored = if constant.is_integer() {
            if tail_sign < 0 {
                constant - Rational::one()
            } else {
                constant
            }
        } else {
            constant.floor()
        };
        infinite_part.push(Term::new(floored, GrossNumber::zero()));
        Ok(GrossNumber::from_terms(infinite_part))
    }

    /// Long division `C / B` in the positional system: at each step the
    /// leading digits divide and the leading powers subtract, the partial
    /// remainder is updated, and the loop stops at a zero remainder or
    /// after `max_terms` quotient terms. `C = quotient * B + remainder`
    /// holds exactly at every step.
    pub fn div(&self, divisor: &GrossNumber, max_terms: usize) -> Result<Division, Error> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let divisor_lead = divisor.leading().expect("nonzero divisor");
        let mut remainder = self.clone();
        let mut quotient = GrossNumber::zero();
        let mut steps = Vec::new();
        for _ in 0..max_terms.max(1) {
            let Some(lead) = remainder.leading() else {
                break;
            };
            let digit = lead.digit() / divisor_lead.digit();
            let power = lead.power().sub(divisor_lead.power());
            let term = GrossNumber::single(digit, power);
            remainder = remainder.sub(&term.mul(divisor));
            quotient = quotient.add(&term);
            steps.push(DivisionStep {
                quotient_term: term,
                remainder: remainder.clone(),
            });
            if remainder.is_zero() {
                break;
            }
        }
        let exact = remainder.is_zero();
        Ok(Division {
            quotient,
            remainder,
            exact,
            steps,
        })
    }
}

/// Result of positional long division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: GrossNumber,
    pub remainder: GrossNumber,
    /// True iff a partial remainder reached zero within the step budget.
    pub exact: bool,
    pub steps: Vec<DivisionStep>,
}

/// One step of the division loop: the quotient term produced and the
/// partial remainder left after subtracting `term * B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionStep {
    pub quotient_term: GrossNumber,
    pub remainder: GrossNumber,
}

impl Ord for GrossNumber {
    /// Numeric total order: the sign of the difference, which is the sign
    /// of the digit at the difference's largest grosspower. Grosspowers are
    /// compared by this same order; recursion terminates because nesting
    /// depth is finite.
    fn cmp(&self, other: &GrossNumber) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match self.sub(other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for GrossNumber {
    fn partial_cmp(&self, other: &GrossNumber) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GrossNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::display::format_gross(self, crate::display::FormatMode::Exact)
        )
    }
}

impl fmt::Display for GrossNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::display::format_gross(self, crate::display::FormatMode::Exact)
        )
    }
}

macro_rules! forward_gross_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: &GrossNumber) -> GrossNumber {
                GrossNumber::$method(self, rhs)
            }
        }
    };
}

forward_gross_binop!(Add, add);
forward_gross_binop!(Sub, sub);
forward_gross_binop!(Mul, mul);

impl Neg for &GrossNumber {
    type Output = GrossNumber;
    fn neg(self) -> GrossNumber {
        GrossNumber::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// `digit * G^power` with a plain rational power.
    fn term(digit: Rational, power: Rational) -> Term {
        Term::new(digit, GrossNumber::from_rational(power))
    }

    fn gn(pairs: &[(Rational, Rational)]) -> GrossNumber {
        GrossNumber::from_terms(pairs.iter().map(|(d, p)| term(d.clone(), p.clone())))
    }

    fn example6_a() -> GrossNumber {
        gn(&[
            (r(165, 10), r(442, 10)),
            (r(-12, 1), r(12, 1)),
            (r(17, 1), r(0, 1)),
        ])
    }

    fn example6_b() -> GrossNumber {
        gn(&[
            (r(623, 100), r(3, 1)),
            (r(101, 10), r(0, 1)),
            (r(15, 1), r(-41, 10)),
        ])
    }

    #[test]
    fn canonicalize_cancels_and_sorts() {
        assert!(gn(&[(r(3, 1), r(0, 1)), (r(-3, 1), r(0, 1))]).is_zero());
        let mixed = gn(&[(r(-12, 1), r(12, 1)), (r(165, 10), r(442, 10))]);
        let powers: Vec<_> = mixed
            .terms()
            .iter()
            .map(|t| t.power().as_finite_rational().unwrap())
            .collect();
        assert_eq!(powers, vec![r(442, 10), r(12, 1)]);
        let merged = gn(&[(r(1, 2), r(1, 1)), (r(1, 3), r(1, 1))]);
        assert_eq!(merged, GrossNumber::single(r(5, 6), GrossNumber::one()));
    }

    #[test]
    fn canonicalize_idempotent_on_canonical_terms() {
        let a = example6_a();
        let again = GrossNumber::from_terms(a.terms().to_vec());
        assert_eq!(a, again);
    }

    #[test]
    fn from_rational_embeds() {
        assert!(GrossNumber::from_rational(r(0, 1)).is_zero());
        let seventeen = GrossNumber::from_rational(r(17, 1));
        assert_eq!(seventeen.as_finite_rational().unwrap(), r(17, 1));
        assert_eq!(
            GrossNumber::from_rational(r(-33, 2))
                .as_finite_rational()
                .unwrap(),
            r(-33, 2)
        );
    }

    #[test]
    fn addition_merges_all_parts() {
        // 16.5G^44.2 - 12G^12 + 17 plus 6.23G^3 + 10.1 + 15G^-4.1
        let sum = example6_a().add(&example6_b());
        let expected = gn(&[
            (r(165, 10), r(442, 10)),
            (r(-12, 1), r(12, 1)),
            (r(623, 100), r(3, 1)),
            (r(271, 10), r(0, 1)),
            (r(15, 1), r(-41, 10)),
        ]);
        assert_eq!(sum, expected);
        assert_eq!(sum.add(&GrossNumber::zero()), sum);
    }

    #[test]
    fn grossone_plus_one_is_greater_than_grossone() {
        let g = GrossNumber::grossone();
        let g1 = g.add(&GrossNumber::one());
        assert_eq!(g1.terms().len(), 2);
        assert_eq!(g1.cmp(&g), Ordering::Greater);
    }

    #[test]
    fn subtraction_identities() {
        let g = GrossNumber::grossone();
        assert!(g.sub(&g).is_zero());
        let with_constant = gn(&[(r(135, 1), r(6, 1)), (r(-9, 1), r(4, 1))])
            .add(&GrossNumber::from_rational(r(10, 1).pow_int(61).unwrap()));
        let without = gn(&[(r(135, 1), r(6, 1)), (r(-9, 1), r(4, 1))]);
        assert_eq!(
            with_constant.sub(&without).as_finite_rational().unwrap(),
            r(10, 1).pow_int(61).unwrap()
        );
        let seven_g = GrossNumber::single(r(7, 1), GrossNumber::one());
        assert_eq!(
            seven_g.neg(),
            GrossNumber::single(r(-7, 1), GrossNumber::one())
        );
    }

    #[test]
    fn multiplication_follows_partial_products() {
        // (−G + 0.7G^−3) * (G^18 − 5G^2.4 − 3G)
        let a = gn(&[
            (r(1, 1), r(18, 1)),
            (r(-5, 1), r(24, 10)),
            (r(-3, 1), r(1, 1)),
        ]);
        let b = gn(&[(r(-1, 1), r(1, 1)), (r(7, 10), r(-3, 1))]);
        let product = b.mul(&a);
        let expected = gn(&[
            (r(-1, 1), r(19, 1)),
            (r(7, 10), r(15, 1)),
            (r(5, 1), r(34, 10)),
            (r(3, 1), r(2, 1)),
            (r(-35, 10), r(-6, 10)),
            (r(-21, 10), r(-2, 1)),
        ]);
        assert_eq!(product, expected);
        assert_eq!(product.mul(&GrossNumber::one()), product);
        assert_eq!(a.mul(&b), product);
    }

    #[test]
    fn grossone_times_its_inverse_is_one() {
        let g = GrossNumber::grossone();
        let g_inv = GrossNumber::single(r(1, 1), GrossNumber::from_int(-1));
        assert!(g.mul(&g_inv).is_one());
    }

    #[test]
    fn division_example_exact() {
        // (−10G^3 + 16 + 42G^−3) / (5G^3 + 7) = −2 + 6G^−3 exactly
        let c = gn(&[
            (r(-10, 1), r(3, 1)),
            (r(16, 1), r(0, 1)),
            (r(42, 1), r(-3, 1)),
        ]);
        let b = gn(&[(r(5, 1), r(3, 1)), (r(7, 1), r(0, 1))]);
        let division = c.div(&b, 20).unwrap();
        assert!(division.exact);
        assert!(division.remainder.is_zero());
        assert_eq!(
            division.quotient,
            gn(&[(r(-2, 1), r(0, 1)), (r(6, 1), r(-3, 1))])
        );
        // first partial remainder is 30 + 42G^-3
        assert_eq!(
            division.steps[0].remainder,
            gn(&[(r(30, 1), r(0, 1)), (r(42, 1), r(-3, 1))])
        );
        assert_eq!(c, division.quotient.mul(&b).add(&division.remainder));
    }

    #[test]
    fn division_truncated_and_continued() {
        let c = gn(&[
            (r(-10, 1), r(3, 1)),
            (r(16, 1), r(0, 1)),
            (r(40, 1), r(-3, 1)),
        ]);
        let b = gn(&[(r(5, 1), r(3, 1)), (r(7, 1), r(0, 1))]);

        let two = c.div(&b, 2).unwrap();
        assert!(!two.exact);
        assert_eq!(
            two.quotient,
            gn(&[(r(-2, 1), r(0, 1)), (r(6, 1), r(-3, 1))])
        );
        assert_eq!(two.remainder, gn(&[(r(-2, 1), r(-3, 1))]));
        assert_eq!(c, two.quotient.mul(&b).add(&two.remainder));

        let three = c.div(&b, 3).unwrap();
        assert!(!three.exact);
        assert_eq!(
            three.quotient,
            gn(&[
                (r(-2, 1), r(0, 1)),
                (r(6, 1), r(-3, 1)),
                (r(-4, 10), r(-6, 1))
            ])
        );
        // The identity forces the digit 2.8 here: 0.4 * 7 = 2.8.
        assert_eq!(three.remainder, gn(&[(r(28, 10), r(-6, 1))]));
        assert_eq!(c, three.quotient.mul(&b).add(&three.remainder));
    }

    #[test]
    fn division_of_one_by_grossone_plus_one() {
        let one = GrossNumber::one();
        let b = GrossNumber::grossone().add(&GrossNumber::one());
        let division = one.div(&b, 3).unwrap();
        assert!(!division.exact);
        assert_eq!(
            division.quotient,
            gn(&[
                (r(1, 1), r(-1, 1)),
                (r(-1, 1), r(-2, 1)),
                (r(1, 1), r(-3, 1))
            ])
        );
        assert_eq!(division.remainder, gn(&[(r(-1, 1), r(-3, 1))]));
        for (i, step) in division.steps.iter().enumerate() {
            let partial_quotient = division.steps[..=i]
                .iter()
                .fold(GrossNumber::zero(), |acc, s| acc.add(&s.quotient_term));
            assert_eq!(one, partial_quotient.mul(&b).add(&step.remainder));
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = GrossNumber::one().div(&GrossNumber::zero(), 5).unwrap_err();
        assert_eq!(err, Error::DivisionByZero);
    }

    #[test]
    fn comparison_total_order_facts() {
        let g = GrossNumber::grossone();
        assert_eq!(
            GrossNumber::zero().cmp(&GrossNumber::zero()),
            Ordering::Equal
        );
        for n in [1i64, 2, 100, 1_000_000] {
            assert_eq!(GrossNumber::from_int(n).cmp(&g), Ordering::Less);
        }
        let two_g = GrossNumber::single(r(2, 1), GrossNumber::one());
        let g_squared = g.pow_nat(2);
        assert_eq!(two_g.cmp(&g_squared), Ordering::Less);
        let g_inv = GrossNumber::single(r(1, 1), GrossNumber::from_int(-1));
        let tiny = GrossNumber::from_rational(r(1, 1) / r(10, 1).pow_int(100).unwrap());
        assert_eq!(g_inv.cmp(&tiny), Ordering::Less);
        assert_eq!(g_inv.sign(), 1);
    }

    #[test]
    fn classification_cases() {
        assert_eq!(GrossNumber::zero().classify(), NumberClass::Zero);
        assert_eq!(GrossNumber::from_int(5).classify(), NumberClass::FinitePure);
        assert_eq!(
            GrossNumber::single(r(3, 1), GrossNumber::from_rational(r(-32, 10))).classify(),
            NumberClass::Infinitesimal
        );
        // -3.5 - 37G^-2 + 11G^(-15G + 2.3): finite plus two infinitesimal parts
        let infinite_negative_power = GrossNumber::from_terms([
            Term::new(r(-15, 1), GrossNumber::one()),
            Term::new(r(23, 10), GrossNumber::zero()),
        ]);
        let value = GrossNumber::from_terms([
            Term::new(r(-35, 10), GrossNumber::zero()),
            Term::new(r(-37, 1), GrossNumber::from_int(-2)),
            Term::new(r(11, 1), infinite_negative_power.clone()),
        ]);
        assert_eq!(value.classify(), NumberClass::FiniteMixed);
        assert_eq!(
            value.terms().last().unwrap().power(),
            &infinite_negative_power
        );
        assert_eq!(GrossNumber::grossone().classify(), NumberClass::Infinite);
    }

    #[test]
    fn natural_powers() {
        assert!(GrossNumber::grossone().pow_nat(0).is_one());
        let cube = GrossNumber::single(r(3, 1), GrossNumber::from_int(2)).pow_nat(3);
        assert_eq!(
            cube,
            GrossNumber::single(r(27, 1), GrossNumber::from_int(6))
        );
        // (0.5G - 1)^3 = 0.125G^3 - 0.75G^2 + 1.5G - 1
        let half_g_minus_one = gn(&[(r(1, 2), r(1, 1)), (r(-1, 1), r(0, 1))]);
        let expected = gn(&[
            (r(1, 8), r(3, 1)),
            (r(-3, 4), r(2, 1)),
            (r(3, 2), r(1, 1)),
            (r(-1, 1), r(0, 1)),
        ]);
        assert_eq!(half_g_minus_one.pow_nat(3), expected);
    }

    #[test]
    fn roots() {
        let g = GrossNumber::grossone();
        assert_eq!(g.pow_nat(2).nth_root(2).unwrap(), g);
        let eighth_g_cubed = GrossNumber::single(r(1, 8), GrossNumber::from_int(3));
        assert_eq!(
            eighth_g_cubed.nth_root(3).unwrap(),
            GrossNumber::single(r(1, 2), GrossNumber::one())
        );
        assert_eq!(
            GrossNumber::single(r(2, 1), GrossNumber::one()).nth_root(2),
            Err(Error::InexactRoot)
        );
        assert!(matches!(
            g.add(&GrossNumber::one()).nth_root(2),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn integrality_and_parity() {
        let g = GrossNumber::grossone();
        assert_eq!(g.parity().unwrap(), Parity::Even);
        let half_g_minus_one = gn(&[(r(1, 2), r(1, 1)), (r(-1, 1), r(0, 1))]);
        assert_eq!(half_g_minus_one.parity().unwrap(), Parity::Odd);
        let g_inv = GrossNumber::single(r(1, 1), GrossNumber::from_int(-1));
        assert!(!g_inv.is_integer());
        assert_eq!(g_inv.parity(), Err(Error::NotInteger));
        // fractional grosspower: no integer semantics asserted
        let sqrt_g = GrossNumber::single(r(1, 1), GrossNumber::from_rational(r(1, 2)));
        assert!(!sqrt_g.is_integer());
        // G^G is an extended integer
        let g_to_g = GrossNumber::single(r(1, 1), g.clone());
        assert!(g_to_g.is_integer());
    }

    #[test]
    fn floor_handles_fraction_and_tail() {
        let third_g_minus_third = gn(&[(r(1, 3), r(1, 1)), (r(-1, 3), r(0, 1))]);
        let expected = gn(&[(r(1, 3), r(1, 1)), (r(-1, 1), r(0, 1))]);
        assert_eq!(third_g_minus_third.floor().unwrap(), expected);
        let five_minus_tiny = gn(&[(r(5, 1), r(0, 1)), (r(-1, 1), r(-1, 1))]);
        assert_eq!(five_minus_tiny.floor().unwrap(), GrossNumber::from_int(4));
        let five_plus_tiny = gn(&[(r(5, 1), r(0, 1)), (r(1, 1), r(-1, 1))]);
        assert_eq!(five_plus_tiny.floor().unwrap(), GrossNumber::from_int(5));
        let sqrt_g = GrossNumber::single(r(1, 1), GrossNumber::from_rational(r(1, 2)));
        assert_eq!(sqrt_g.floor(), Err(Error::NotInteger));
    }

    #[test]
    fn identity_rules() {
        let g = GrossNumber::grossone();
        assert!(GrossNumber::zero().mul(&g).is_zero());
        assert!(g.sub(&g).is_zero());
        assert!(g.div(&g, 20).unwrap().quotient.is_one());
        assert!(g.pow_nat(0).is_one());
    }
}
