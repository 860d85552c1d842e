//! Sequence lengths under the grossone bound, and closed-form evaluation of
//! series whose number of items is stated explicitly.
//!
//! An infinite sequence has at most `G` members (its domain is the set of
//! natural numbers), so lengths live in `[0, G]` and concatenation splits
//! into one sequence of at most `G` members plus a leftover. Series are
//! summed only through closed forms — constant, polynomial up to degree
//! three, geometric — applied verbatim to finite or infinite item counts;
//! nothing is ever summed by iterating an infinite count.

use std::fmt;

use gross_core::{
    rational_pow, EApprox, Error as CoreError, ExtendedValue, GrossNumber, Rational, Term,
};

/// Closed-form evaluation keeps exponents at desk scale; gigantic finite
/// item counts would build numerators with millions of digits.
const MAX_FINITE_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Polynomial sums are provided through cubic terms only.
    DegreeTooHigh(usize),
    /// The geometric closed form has no meaning at ratio one.
    RatioOne,
    /// Lengths and item counts must be integer grossnumbers in range.
    InvalidLength(String),
    /// The operand shape is outside the supported closed forms.
    UnsupportedShape(String),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DegreeTooHigh(degree) => {
                write!(f, "polynomial sums stop at degree 3, got degree {degree}")
            }
            SeriesError::RatioOne => write!(f, "geometric sum is undefined at ratio 1"),
            SeriesError::InvalidLength(msg) => write!(f, "invalid length: {msg}"),
            SeriesError::UnsupportedShape(msg) => write!(f, "unsupported shape: {msg}"),
        }
    }
}

impl std::error::Error for SeriesError {}

impl From<CoreError> for SeriesError {
    fn from(err: CoreError) -> SeriesError {
        SeriesError::UnsupportedShape(err.to_string())
    }
}

/// A described infinite sequence: its member count and a display label for
/// the general term. Every result about sequences in scope depends only on
/// length arithmetic, so no element generator is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqDescriptor {
    length: GrossNumber,
    label: String,
}

impl SeqDescriptor {
    pub fn new(
        length: GrossNumber,
        label: impl Into<String>,
    ) -> Result<SeqDescriptor, SeriesError> {
        if !validate_length(&length) {
            return Err(SeriesError::InvalidLength(format!(
                "a sequence has between 0 and G members, got {length}"
            )));
        }
        Ok(SeqDescriptor {
            length,
            label: label.into(),
        })
    }

    pub fn length(&self) -> &GrossNumber {
        &self.length
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_complete(&self) -> bool {
        is_complete(&self.length)
    }
}

/// True iff the value is an integer grossnumber in `[0, G]`.
pub fn validate_length(length: &GrossNumber) -> bool {
    length.is_integer()
        && length.sign() >= 0
        && length.cmp(&GrossNumber::grossone()) != std::cmp::Ordering::Greater
}

/// A complete sequence has exactly `G` members.
pub fn is_complete(length: &GrossNumber) -> bool {
    *length == GrossNumber::grossone()
}

/// Concatenates two sequences. A sequence can be at most complete, so the
/// first part absorbs up to `G` members and the rest forms a leftover
/// sequence: `first = min(l1 + l2, G)`, `leftover = l1 + l2 - first`.
pub fn concat(
    first_len: &GrossNumber,
    second_len: &GrossNumber,
) -> Result<(GrossNumber, GrossNumber), SeriesError> {
    for length in [first_len, second_len] {
        if !validate_length(length) {
            return Err(SeriesError::InvalidLength(format!(
                "a sequence has between 0 and G members, got {length}"
            )));
        }
    }
    let total = first_len.add(second_len);
    let grossone = GrossNumber::grossone();
    let first = if total.cmp(&grossone) == std::cmp::Ordering::Greater {
        grossone
    } else {
        total.clone()
    };
    let leftover = total.sub(&first);
    Ok((first, leftover))
}

fn require_count(count: &GrossNumber) -> Result<(), SeriesError> {
    // Item counts of a series may exceed G (summation is not a sequential
    // process), but must be non-negative integers.
    if !count.is_integer() || count.sign() < 0 {
        return Err(SeriesError::InvalidLength(format!(
            "item count must be a non-negative integer, got {count}"
        )));
    }
    Ok(())
}

/// Sum of `count` copies of a constant: `c * count`.
pub fn sum_const(value: &Rational, count: &GrossNumber) -> Result<GrossNumber, SeriesError> {
    require_count(count)?;
    Ok(count.scale(value))
}

/// Sum over `i = 1..=count` of a polynomial in `i` with the given
/// coefficients `[a0, a1, a2, a3]` (constant first), through the closed
/// forms for sums of powers applied directly to the grossnumber count.
pub fn sum_poly(coeffs: &[Rational], count: &GrossNumber) -> Result<GrossNumber, SeriesError> {
    if coeffs.len() > 4 {
        return Err(SeriesError::DegreeTooHigh(coeffs.len() - 1));
    }
    require_count(count)?;
    let k = count;
    let k_plus_1 = k.add(&GrossNumber::one());
    let half = Rational::new(1, 2);
    // Sum i = k(k+1)/2, Sum i^2 = k(k+1)(2k+1)/6, Sum i^3 = (k(k+1)/2)^2.
    let sum_i = k.mul(&k_plus_1).scale(&half);
    let power_sums = [
        k.clone(),
        sum_i.clone(),
        k.mul(&k_plus_1)
            .mul(&k.scale(&Rational::from_int(2)).add(&GrossNumber::one()))
            .scale(&Rational::new(1, 6)),
        sum_i.mul(&sum_i),
    ];
    let mut total = GrossNumber::zero();
    for (coeff, power_sum) in coeffs.iter().zip(power_sums.iter()) {
        total = total.add(&power_sum.scale(coeff));
    }
    Ok(total)
}

/// `ratio^count` as an extended value, shared by the geometric closed form.
fn ratio_power(ratio: &Rational, count: &GrossNumber) -> Result<ExtendedValue, SeriesError> {
    if let Some(finite) = count.as_finite_rational() {
        let exponent = finite
            .to_i64()
            .filter(|e| e.abs() <= MAX_FINITE_EXPONENT)
            .ok_or_else(|| SeriesError::UnsupportedShape("finite item count too large".into()))?;
        let value = ratio
            .pow_int(exponent)
            .ok_or_else(|| SeriesError::UnsupportedShape("zero ratio".into()))?;
        return Ok(ExtendedValue::from_rational(value));
    }
    Ok(rational_pow(ratio, count)?)
}

/// Sum over `i = 1..=count` of `ratio^i` through the closed form
/// `ratio (1 - ratio^count) / (1 - ratio)`. For infinite counts the
/// residual power is carried as an atom, e.g. `1 - 2^(-G)` at ratio `1/2`.
pub fn sum_geometric(ratio: &Rational, count: &GrossNumber) -> Result<ExtendedValue, SeriesError> {
    if ratio.is_one() {
        return Err(SeriesError::RatioOne);
    }
    require_count(count)?;
    if count.is_zero() {
        return Ok(ExtendedValue::zero());
    }
    let scale = ratio.clone() / (Rational::one() - ratio.clone());
    let residual = ratio_power(ratio, count)?;
    let one = ExtendedValue::from_rational(Rational::one());
    let factor = one.sub(&residual)?;
    Ok(factor.mul(&ExtendedValue::from_rational(scale))?)
}

/// The approximant `(1 + 1/n)^n`. Finite positive `n` folds to an exact
/// rational; infinite single-term `n` is kept as an unevaluated display
/// record, since no positional record exists for the power.
pub fn e_approximant(n: &GrossNumber) -> Result<ExtendedValue, SeriesError> {
    if n.sign() <= 0 || !n.is_integer() {
        return Err(SeriesError::InvalidLength(
            "approximant index must be a positive integer".into(),
        ));
    }
    if let Some(finite) = n.as_finite_rational() {
        let index = finite
            .to_i64()
            .filter(|e| *e <= MAX_FINITE_EXPONENT)
            .ok_or_else(|| SeriesError::UnsupportedShape("finite index too large".into()))?;
        let base = Rational::one() + Rational::new(1, index);
        let value = base.pow_int(index).expect("base is nonzero");
        return Ok(ExtendedValue::from_rational(value));
    }
    let (digit, power) = n.as_single_term().ok_or_else(|| {
        SeriesError::UnsupportedShape(
            "infinite approximant index must be a single term c*G^p".into(),
        )
    })?;
    let inverse_digit = digit.recip().expect("positive digit");
    Ok(ExtendedValue::EApprox(EApprox {
        inverse_term: Term::new(inverse_digit, power.neg()),
        exponent: n.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gross_core::{format_extended, FormatMode, NumberClass};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn g_scaled(n: i64, d: i64) -> GrossNumber {
        GrossNumber::single(r(n, d), GrossNumber::one())
    }

    #[test]
    fn descriptors_validate_their_lengths() {
        let evens = SeqDescriptor::new(g_scaled(1, 2), "2n").unwrap();
        assert_eq!(evens.label(), "2n");
        assert!(!evens.is_complete());
        assert_eq!(evens.length(), &g_scaled(1, 2));
        let naturals = SeqDescriptor::new(GrossNumber::grossone(), "n").unwrap();
        assert!(naturals.is_complete());
        assert!(
            SeqDescriptor::new(GrossNumber::grossone().add(&GrossNumber::one()), "too long")
                .is_err()
        );
    }

    #[test]
    fn length_validation() {
        assert!(validate_length(&GrossNumber::grossone()));
        assert!(!validate_length(
            &GrossNumber::grossone().add(&GrossNumber::one())
        ));
        assert!(validate_length(&g_scaled(2, 5)));
        assert!(validate_length(&GrossNumber::zero()));
        assert!(!validate_length(&GrossNumber::from_int(-1)));
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&GrossNumber::grossone()));
        assert!(!is_complete(&g_scaled(1, 2)));
        assert!(!is_complete(&GrossNumber::from_int(5)));
    }

    #[test]
    fn concat_splits_at_grossone() {
        let (first, leftover) = concat(&g_scaled(2, 5), &g_scaled(4, 5)).unwrap();
        assert_eq!(first, GrossNumber::grossone());
        assert_eq!(leftover, g_scaled(1, 5));

        let (first, leftover) =
            concat(&GrossNumber::from_int(3), &GrossNumber::from_int(4)).unwrap();
        assert_eq!(first, GrossNumber::from_int(7));
        assert!(leftover.is_zero());

        // a full hotel cannot absorb one more guest
        let (first, leftover) = concat(&GrossNumber::grossone(), &GrossNumber::one()).unwrap();
        assert_eq!(first, GrossNumber::grossone());
        assert_eq!(leftover, GrossNumber::one());
    }

    #[test]
    fn constant_sums() {
        let s1 = sum_const(&r(10, 1), &g_scaled(5, 1)).unwrap();
        let s2 = sum_const(&r(3, 1), &g_scaled(5, 1)).unwrap();
        assert_eq!(s1, g_scaled(50, 1));
        assert_eq!(s2, g_scaled(15, 1));
        let ratio = s2.div(&s1, 20).unwrap();
        assert!(ratio.exact);
        assert_eq!(ratio.quotient.as_finite_rational().unwrap(), r(3, 10));

        let count = g_scaled(3, 1).add(&GrossNumber::from_int(4));
        let with_tail = sum_const(&r(10, 1), &count).unwrap();
        let thirty_g = sum_const(&r(3, 1), &g_scaled(10, 1)).unwrap();
        assert_eq!(with_tail.sub(&thirty_g), GrossNumber::from_int(40));
        assert!(sum_const(&r(7, 1), &GrossNumber::zero()).unwrap().is_zero());
    }

    #[test]
    fn polynomial_sums_match_brute_force() {
        let coeffs = [r(0, 1), r(1, 1)];
        let identity_sum = sum_poly(&coeffs, &GrossNumber::from_int(10)).unwrap();
        assert_eq!(identity_sum, GrossNumber::from_int(55));

        let at_grossone = sum_poly(&coeffs, &GrossNumber::grossone()).unwrap();
        let expected = GrossNumber::single(r(1, 2), GrossNumber::from_int(2)).add(&g_scaled(1, 2));
        assert_eq!(at_grossone, expected);

        let constant = sum_poly(&[r(1, 1)], &GrossNumber::grossone()).unwrap();
        assert_eq!(constant, GrossNumber::grossone());

        // randomized-ish cross-check over all finite counts to 200
        let cubic = [r(2, 1), r(-3, 2), r(1, 3), r(1, 4)];
        for k in 0..=200i64 {
            let closed = sum_poly(&cubic, &GrossNumber::from_int(k)).unwrap();
            let mut brute = Rational::zero();
            for i in 1..=k {
                let i_rat = Rational::from_int(i);
                brute = brute
                    + cubic[0].clone()
                    + cubic[1].clone() * i_rat.clone()
                    + cubic[2].clone() * i_rat.clone() * i_rat.clone()
                    + cubic[3].clone() * i_rat.clone() * i_rat.clone() * i_rat;
            }
            assert_eq!(closed.as_finite_rational().unwrap(), brute, "k={k}");
        }

        let quartic: Vec<Rational> = (0..5).map(|_| r(1, 1)).collect();
        assert!(matches!(
            sum_poly(&quartic, &GrossNumber::one()),
            Err(SeriesError::DegreeTooHigh(4))
        ));
    }

    #[test]
    fn geometric_sums() {
        let infinite = sum_geometric(&r(1, 2), &GrossNumber::grossone()).unwrap();
        assert_eq!(format_extended(&infinite, FormatMode::Exact), "1 - 2^(-G)");
        // the residual past 1 is infinitesimal
        let residual = infinite
            .sub(&ExtendedValue::from_rational(r(1, 1)))
            .unwrap();
        assert_eq!(
            residual.classify_extended(),
            Some(NumberClass::Infinitesimal)
        );

        let ten = sum_geometric(&r(1, 2), &GrossNumber::from_int(10)).unwrap();
        assert_eq!(ten.as_finite_rational().unwrap(), r(1023, 1024));
        assert!(sum_geometric(&r(1, 2), &GrossNumber::zero())
            .unwrap()
            .is_zero());
        assert_eq!(
            sum_geometric(&r(1, 1), &GrossNumber::one()),
            Err(SeriesError::RatioOne)
        );

        // telescoping identity at finite counts: (1-r) * S = r - r^(k+1)
        for k in 0..=40i64 {
            for ratio in [r(1, 2), r(2, 3), r(3, 1), r(-1, 2)] {
                let sum = sum_geometric(&ratio, &GrossNumber::from_int(k))
                    .unwrap()
                    .as_finite_rational()
                    .unwrap();
                let lhs = (Rational::one() - ratio.clone()) * sum;
                let rhs = ratio.clone() - ratio.pow_int(k + 1).unwrap();
                assert_eq!(lhs, rhs, "k={k} r={ratio}");
            }
        }
    }

    #[test]
    fn geometric_sum_splits_scale_and_atom() {
        // non-atom part of r/(1-r) + atom part, for infinite counts
        let value = sum_geometric(&r(1, 3), &GrossNumber::grossone()).unwrap();
        let terms = value.terms().unwrap();
        assert_eq!(terms.len(), 2);
        let scale = terms
            .iter()
            .find(|t| t.atoms().is_empty())
            .expect("non-atom part present");
        assert_eq!(scale.coeff().as_finite_rational().unwrap(), r(1, 2));
    }

    #[test]
    fn approximants() {
        assert_eq!(
            e_approximant(&GrossNumber::one())
                .unwrap()
                .as_finite_rational()
                .unwrap(),
            r(2, 1)
        );
        assert_eq!(
            e_approximant(&GrossNumber::from_int(4))
                .unwrap()
                .as_finite_rational()
                .unwrap(),
            r(625, 256)
        );
        let at_grossone = e_approximant(&GrossNumber::grossone()).unwrap();
        assert_eq!(
            format_extended(&at_grossone, FormatMode::Exact),
            "(1G^0 1G^-1)^G"
        );
        let at_square = e_approximant(&GrossNumber::grossone().pow_nat(2)).unwrap();
        assert_eq!(
            format_extended(&at_square, FormatMode::Exact),
            "(1G^0 1G^-2)^(G^2)"
        );
        assert!(e_approximant(&GrossNumber::zero()).is_err());
    }

    #[test]
    fn concat_conserves_totals() {
        let lengths = [
            GrossNumber::zero(),
            GrossNumber::from_int(7),
            g_scaled(1, 2),
            g_scaled(2, 5),
            g_scaled(4, 5),
            GrossNumber::grossone(),
            g_scaled(1, 2).add(&GrossNumber::from_int(3)),
        ];
        for a in &lengths {
            for b in &lengths {
                let (first, leftover) = concat(a, b).unwrap();
                assert_eq!(first.add(&leftover), a.add(b));
                assert!(first.cmp(&GrossNumber::grossone()) != std::cmp::Ordering::Greater);
            }
        }
    }

    #[test]
    fn sum_const_is_linear() {
        let counts = [
            GrossNumber::from_int(9),
            g_scaled(5, 1),
            g_scaled(1, 2).add(&GrossNumber::from_int(1)),
        ];
        for count in &counts {
            let a = r(7, 3);
            let b = r(-5, 4);
            let joint = sum_const(&(a.clone() + b.clone()), count).unwrap();
            let split = sum_const(&a, count)
                .unwrap()
                .add(&sum_const(&b, count).unwrap());
            assert_eq!(joint, split);
        }
    }
}
