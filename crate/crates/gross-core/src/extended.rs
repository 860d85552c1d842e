use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::number::{GrossNumber, NumberClass, Parity, Term};
use crate::rational::Rational;

/// A symbolic power `base^exponent` with a rational base greater than one
/// and a grossnumber exponent. Used for quantities such as `b^(2G)` that
/// have no record in the positional system when the exponent is infinite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PowAtom {
    base: Rational,
    exponent: GrossNumber,
}

impl PowAtom {
    pub fn new(base: Rational, exponent: GrossNumber) -> Result<PowAtom, Error> {
        if base <= Rational::one() {
            return Err(Error::UnsupportedShape("power atom base must exceed one"));
        }
        Ok(PowAtom { base, exponent })
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn exponent(&self) -> &GrossNumber {
        &self.exponent
    }
}

impl fmt::Debug for PowAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({:?})", self.base, self.exponent)
    }
}

/// One product term of an extended value: a grossnumber coefficient times
/// power atoms with pairwise distinct bases, sorted by base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTerm {
    coeff: GrossNumber,
    atoms: Vec<PowAtom>,
}

impl ExtTerm {
    pub fn coeff(&self) -> &GrossNumber {
        &self.coeff
    }

    pub fn atoms(&self) -> &[PowAtom] {
        &self.atoms
    }
}

/// The display-only record `(1 + 1/n)^n` for infinite `n`: the base is kept
/// as the positional record `1G^0 + dG^p` and the whole power is never
/// expanded (no positional record exists for it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EApprox {
    /// The `1/n` term of the base (digit `1/c`, power `-p` for `n = c*G^p`).
    pub inverse_term: Term,
    pub exponent: GrossNumber,
}

/// A value that may lie outside the positional system: a sum of products of
/// grossnumbers and power atoms, or an unevaluated `(1 + 1/n)^n` record.
///
/// Canonical form for sums: no zero coefficients, atoms within a term sorted
/// by base, terms with identical atom lists merged, terms ordered with the
/// atom-free (pure grossnumber) part first. A sum with no atoms at all is
/// exactly a grossnumber.
#[derive(Clone, PartialEq, Eq)]
pub enum ExtendedValue {
    Sum(Vec<ExtTerm>),
    EApprox(EApprox),
}

/// Outcome of comparing extended values. `Incomparable` is an honest
/// result: order between atoms and grossnumbers is defined only where the
/// underlying calculus states it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendedOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl From<Ordering> for ExtendedOrdering {
    fn from(ord: Ordering) -> ExtendedOrdering {
        match ord {
            Ordering::Less => ExtendedOrdering::Less,
            Ordering::Equal => ExtendedOrdering::Equal,
            Ordering::Greater => ExtendedOrdering::Greater,
        }
    }
}

impl fmt::Display for ExtendedOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ExtendedOrdering::Less => "less",
            ExtendedOrdering::Equal => "equal",
            ExtendedOrdering::Greater => "greater",
            ExtendedOrdering::Incomparable => "incomparable",
        };
        write!(f, "{name}")
    }
}

/// Dominance class of a single atom term, used by comparisons.
enum AtomMagnitude {
    /// Single atom with positive infinite exponent: above every grossnumber.
    Huge,
    /// Single atom with negative infinite exponent: below every nonzero
    /// grossnumber in magnitude, but with a definite sign.
    Tiny,
    /// Anything else: no stated order.
    Unknown,
}

impl ExtendedValue {
    pub fn zero() -> ExtendedValue {
        ExtendedValue::Sum(Vec::new())
    }

    pub fn from_gross(value: GrossNumber) -> ExtendedValue {
        ExtendedValue::Sum(normalize(vec![ExtTerm {
            coeff: value,
            atoms: Vec::new(),
        }]))
    }

    pub fn from_rational(value: Rational) -> ExtendedValue {
        ExtendedValue::from_gross(GrossNumber::from_rational(value))
    }

    pub fn from_atom(atom: PowAtom) -> ExtendedValue {
        ExtendedValue::from_term(GrossNumber::one(), vec![atom])
    }

    pub fn from_term(coeff: GrossNumber, atoms: Vec<PowAtom>) -> ExtendedValue {
        ExtendedValue::Sum(normalize(vec![ExtTerm { coeff, atoms }]))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedValue::Sum(terms) if terms.is_empty())
    }

    pub fn terms(&self) -> Option<&[ExtTerm]> {
        match self {
            ExtendedValue::Sum(terms) => Some(terms),
            ExtendedValue::EApprox(_) => None,
        }
    }

    /// `Some` when the value carries no atoms and is a plain grossnumber.
    pub fn as_gross(&self) -> Option<GrossNumber> {
        match self {
            ExtendedValue::Sum(terms) => match terms.as_slice() {
                [] => Some(GrossNumber::zero()),
                [t] if t.atoms.is_empty() => Some(t.coeff.clone()),
                _ => None,
            },
            ExtendedValue::EApprox(_) => None,
        }
    }

    pub fn as_finite_rational(&self) -> Option<Rational> {
        self.as_gross().and_then(|g| g.as_finite_rational())
    }

    fn sum_terms(&self, what: &'static str) -> Result<&[ExtTerm], Error> {
        self.terms().ok_or_else(|| {
            Error::Unsupported(format!("{what} on an unevaluated approximant record"))
        })
    }

    pub fn add(&self, other: &ExtendedValue) -> Result<ExtendedValue, Error> {
        let mut terms = self.sum_terms("addition")?.to_vec();
        terms.extend_from_slice(other.sum_terms("addition")?);
        Ok(ExtendedValue::Sum(normalize(terms)))
    }

    pub fn neg(&self) -> Result<ExtendedValue, Error> {
        let terms = self
            .sum_terms("negation")?
            .iter()
            .map(|t| ExtTerm {
                coeff: t.coeff.neg(),
                atoms: t.atoms.clone(),
            })
            .collect();
        Ok(ExtendedValue::Sum(terms))
    }

    pub fn sub(&self, other: &ExtendedValue) -> Result<ExtendedValue, Error> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &ExtendedValue) -> Result<ExtendedValue, Error> {
        let left = self.sum_terms("multiplication")?;
        let right = other.sum_terms("multiplication")?;
        let mut terms = Vec::with_capacity(left.len() * right.len());
        for a in left {
            for b in right {
                terms.push(mul_terms(a, b));
            }
        }
        Ok(ExtendedValue::Sum(normalize(terms)))
    }

    /// Divides by a pure grossnumber, exactly: every coefficient must divide
    /// without remainder within `max_terms` steps.
    pub fn div_gross(
        &self,
        divisor: &GrossNumber,
        max_terms: usize,
    ) -> Result<ExtendedValue, Error> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = Vec::new();
        for term in self.sum_terms("division")? {
            let division = term.coeff.div(divisor, max_terms)?;
            if !division.exact {
                return Err(Error::Unsupported(
                    "inexact division inside an extended value".into(),
                ));
            }
            terms.push(ExtTerm {
                coeff: division.quotient,
                atoms: term.atoms.clone(),
            });
        }
        Ok(ExtendedValue::Sum(normalize(terms)))
    }

    /// Total where the calculus states an order; `Incomparable` elsewhere.
    pub fn cmp_extended(&self, other: &ExtendedValue) -> ExtendedOrdering {
        if self == other {
            return ExtendedOrdering::Equal;
        }
        let Ok(difference) = self.sub(other) else {
            return ExtendedOrdering::Incomparable;
        };
        let ExtendedValue::Sum(terms) = &difference else {
            return ExtendedOrdering::Incomparable;
        };
        let mut gross_sign = 0i8;
        let mut huge: Vec<&ExtTerm> = Vec::new();
        let mut tiny: Vec<&ExtTerm> = Vec::new();
        for term in terms {
            if term.atoms.is_empty() {
                gross_sign = term.coeff.sign();
                continue;
            }
            match atom_magnitude(term) {
                AtomMagnitude::Huge => huge.push(term),
                AtomMagnitude::Tiny => tiny.push(term),
                AtomMagnitude::Unknown => return ExtendedOrdering::Incomparable,
            }
        }
        let sign = if huge.len() > 1 {
            return ExtendedOrdering::Incomparable;
        } else if let [dominant] = huge.as_slice() {
            dominant.coeff.sign()
        } else if gross_sign != 0 {
            gross_sign
        } else if let [residual] = tiny.as_slice() {
            residual.coeff.sign()
        } else if tiny.is_empty() {
            0
        } else {
            return ExtendedOrdering::Incomparable;
        };
        match sign {
            1 => ExtendedOrdering::Greater,
            -1 => ExtendedOrdering::Less,
            _ => ExtendedOrdering::Equal,
        }
    }

    /// Classification extended to atom-bearing values, where determinable.
    pub fn classify_extended(&self) -> Option<NumberClass> {
        let terms = self.terms()?;
        if terms.is_empty() {
            return Some(NumberClass::Zero);
        }
        let mut gross_class = None;
        let mut saw_tiny = false;
        for term in terms {
            if term.atoms.is_empty() {
                gross_class = Some(term.coeff.classify());
                continue;
            }
            match atom_magnitude(term) {
                AtomMagnitude::Huge => return Some(NumberClass::Infinite),
                AtomMagnitude::Tiny => saw_tiny = true,
                AtomMagnitude::Unknown => return None,
            }
        }
        Some(match (gross_class, saw_tiny) {
            (None, _) => NumberClass::Infinitesimal,
            (Some(class), false) => class,
            (Some(NumberClass::Infinite), true) => NumberClass::Infinite,
            (Some(NumberClass::FinitePure | NumberClass::FiniteMixed), true) => {
                NumberClass::FiniteMixed
            }
            (Some(NumberClass::Infinitesimal | NumberClass::Zero), true) => {
                NumberClass::Infinitesimal
            }
        })
    }
}

fn mul_terms(a: &ExtTerm, b: &ExtTerm) -> ExtTerm {
    let mut atoms = a.atoms.clone();
    atoms.extend_from_slice(&b.atoms);
    ExtTerm {
        coeff: a.coeff.mul(&b.coeff),
        atoms,
    }
}

/// Integer exponent parts are folded into coefficients as exact rational
/// powers, so keep them at a size whose expansion stays reasonable.
const MAX_FOLD_EXPONENT: i64 = 1_000_000;

/// Canonical form of one raw term: same-base atoms merged by exponent
/// addition, exponents that are finite integers folded back into the
/// coefficient (so `b^0` and friends disappear), integer constants factored
/// out of the remaining exponents (`b^(E+d)` becomes `b^d * b^E`), atoms
/// sorted by base.
fn canonicalize_term(term: ExtTerm) -> ExtTerm {
    let mut coeff = term.coeff;
    let mut merged: Vec<PowAtom> = Vec::with_capacity(term.atoms.len());
    for atom in term.atoms {
        match merged.iter_mut().find(|m| m.base == atom.base) {
            Some(existing) => existing.exponent = existing.exponent.add(&atom.exponent),
            None => merged.push(atom),
        }
    }
    let mut atoms = Vec::with_capacity(merged.len());
    for mut atom in merged {
        if let Some(exp) = atom
            .exponent
            .as_finite_rational()
            .and_then(|r| r.to_i64())
            .filter(|e| e.abs() <= MAX_FOLD_EXPONENT)
        {
            let folded = atom.base.pow_int(exp).expect("base exceeds one");
            coeff = coeff.scale(&folded);
            continue;
        }
        let constant = atom
            .exponent
            .terms()
            .iter()
            .find(|t| t.power().is_zero())
            .and_then(|t| t.digit().to_i64())
            .filter(|d| *d != 0 && d.abs() <= MAX_FOLD_EXPONENT);
        if let Some(constant) = constant {
            let folded = atom.base.pow_int(constant).expect("base exceeds one");
            coeff = coeff.scale(&folded);
            atom.exponent = atom.exponent.sub(&GrossNumber::from_int(constant));
        }
        atoms.push(atom);
    }
    atoms.sort();
    ExtTerm { coeff, atoms }
}

fn normalize(raw: Vec<ExtTerm>) -> Vec<ExtTerm> {
    let mut merged: Vec<ExtTerm> = Vec::new();
    for term in raw {
        let term = canonicalize_term(term);
        if term.coeff.is_zero() {
            continue;
        }
        match merged.iter_mut().find(|m| m.atoms == term.atoms) {
            Some(existing) => existing.coeff = existing.coeff.add(&term.coeff),
            None => merged.push(term),
        }
    }
    merged.retain(|t| !t.coeff.is_zero());
    // Lexicographic order on atom lists puts the atom-free part first and
    // makes equal values structurally identical.
    merged.sort_by(|a, b| a.atoms.cmp(&b.atoms));
    merged
}

fn atom_magnitude(term: &ExtTerm) -> AtomMagnitude {
    let [atom] = term.atoms.as_slice() else {
        return AtomMagnitude::Unknown;
    };
    match atom.exponent.classify() {
        NumberClass::Infinite => match atom.exponent.sign() {
            1 => AtomMagnitude::Huge,
            -1 => AtomMagnitude::Tiny,
            _ => AtomMagnitude::Unknown,
        },
        _ => AtomMagnitude::Unknown,
    }
}

/// `base^exponent` for a rational base and an arbitrary grossnumber
/// exponent. Finite integer exponents fold to exact rationals; non-finite
/// exponents become power atoms (with bases below one inverted so atom
/// bases always exceed one); base `-1` resolves through the exponent's
/// parity. Everything else is refused.
pub fn rational_pow(base: &Rational, exponent: &GrossNumber) -> Result<ExtendedValue, Error> {
    if let Some(exp) = exponent.as_finite_rational() {
        if let Some(int_exp) = exp.to_i64() {
            let value = base.pow_int(int_exp).ok_or(Error::DivisionByZero)?;
            return Ok(ExtendedValue::from_rational(value));
        }
        // Fractional exponent u/v: take the v-th root of base^u exactly.
        if base.is_negative() {
            return Err(Error::Unsupported(
                "negative base with fractional exponent".into(),
            ));
        }
        let numer = exp.numer();
        let denom = exp.denom();
        let int_exp = i64::try_from(numer.clone())
            .map_err(|_| Error::Unsupported("exponent numerator too large".into()))?;
        let root_index = u32::try_from(denom.clone())
            .map_err(|_| Error::Unsupported("exponent denominator too large".into()))?;
        let powered = base.pow_int(int_exp).ok_or(Error::DivisionByZero)?;
        let rooted = powered.nth_root(root_index).ok_or(Error::InexactRoot)?;
        return Ok(ExtendedValue::from_rational(rooted));
    }

    if base.is_zero() {
        return match exponent.sign() {
            1 => Ok(ExtendedValue::zero()),
            _ => Err(Error::DivisionByZero),
        };
    }
    if base.is_one() {
        return Ok(ExtendedValue::from_rational(Rational::one()));
    }
    if *base == -Rational::one() {
        return match exponent.parity()? {
            Parity::Even => Ok(ExtendedValue::from_rational(Rational::one())),
            Parity::Odd => Ok(ExtendedValue::from_rational(-Rational::one())),
        };
    }
    if base.is_negative() {
        let sign = match exponent.parity()? {
            Parity::Even => Rational::one(),
            Parity::Odd => -Rational::one(),
        };
        let positive = rational_pow(&base.abs(), exponent)?;
        return positive.mul(&ExtendedValue::from_rational(sign));
    }
    let atom = if *base > Rational::one() {
        PowAtom::new(base.clone(), exponent.clone())?
    } else {
        // 0 < base < 1: invert so the atom base exceeds one.
        let inverted = base.recip().expect("base is nonzero");
        PowAtom::new(inverted, exponent.neg())?
    };
    Ok(ExtendedValue::from_atom(atom))
}

impl From<GrossNumber> for ExtendedValue {
    fn from(value: GrossNumber) -> ExtendedValue {
        ExtendedValue::from_gross(value)
    }
}

impl fmt::Debug for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::display::format_extended(self, crate::display::FormatMode::Exact)
        )
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::display::format_extended(self, crate::display::FormatMode::Exact)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn atom(base: i64, exponent: GrossNumber) -> PowAtom {
        PowAtom::new(r(base, 1), exponent).unwrap()
    }

    fn g() -> GrossNumber {
        GrossNumber::grossone()
    }

    #[test]
    fn same_base_atoms_multiply_by_exponent_addition() {
        let a = ExtendedValue::from_atom(atom(2, g()));
        let b = ExtendedValue::from_atom(atom(2, g().scale(&r(2, 1))));
        let product = a.mul(&b).unwrap();
        let expected = ExtendedValue::from_atom(atom(2, g().scale(&r(3, 1))));
        assert_eq!(product, expected);
    }

    #[test]
    fn cancelled_exponents_fold_to_rationals() {
        let a = ExtendedValue::from_atom(atom(2, g()));
        let inverse = ExtendedValue::from_atom(atom(2, g().neg()));
        let product = a.mul(&inverse).unwrap();
        assert_eq!(product.as_finite_rational().unwrap(), r(1, 1));
    }

    #[test]
    fn single_atom_difference_cancels() {
        let a = ExtendedValue::from_atom(atom(10, g().neg()));
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn comparisons_follow_dominance() {
        let huge = ExtendedValue::from_atom(atom(10, g().scale(&r(2, 1))));
        let grossone = ExtendedValue::from_gross(g());
        assert_eq!(huge.cmp_extended(&grossone), ExtendedOrdering::Greater);

        let tiny = ExtendedValue::from_atom(atom(2, g().neg()));
        assert_eq!(
            tiny.cmp_extended(&ExtendedValue::zero()),
            ExtendedOrdering::Greater
        );
        assert_eq!(
            tiny.cmp_extended(&ExtendedValue::from_rational(r(1, 1000))),
            ExtendedOrdering::Less
        );

        let other = ExtendedValue::from_atom(atom(3, g()));
        let this = ExtendedValue::from_atom(atom(2, g()));
        assert_eq!(this.cmp_extended(&other), ExtendedOrdering::Incomparable);
    }

    #[test]
    fn classification_of_residuals() {
        let one = ExtendedValue::from_rational(r(1, 1));
        let residual = one
            .sub(&ExtendedValue::from_atom(atom(2, g().neg())))
            .unwrap()
            .sub(&one)
            .unwrap();
        assert_eq!(
            residual.classify_extended(),
            Some(NumberClass::Infinitesimal)
        );
        let mixed = one
            .sub(&ExtendedValue::from_atom(atom(2, g().neg())))
            .unwrap();
        assert_eq!(mixed.classify_extended(), Some(NumberClass::FiniteMixed));
    }

    #[test]
    fn rational_pow_routes() {
        assert_eq!(
            rational_pow(&r(2, 1), &GrossNumber::from_int(10)).unwrap(),
            ExtendedValue::from_rational(r(1024, 1))
        );
        assert_eq!(
            rational_pow(&r(1, 2), &g()).unwrap(),
            ExtendedValue::from_atom(atom(2, g().neg()))
        );
        assert_eq!(
            rational_pow(&r(10, 1), &g().neg()).unwrap(),
            ExtendedValue::from_atom(atom(10, g().neg()))
        );
        // (-1)^G = 1 because grossone is even
        assert_eq!(
            rational_pow(&-r(1, 1), &g()).unwrap(),
            ExtendedValue::from_rational(r(1, 1))
        );
        assert_eq!(
            rational_pow(&r(4, 1), &GrossNumber::from_rational(r(1, 2))).unwrap(),
            ExtendedValue::from_rational(r(2, 1))
        );
        assert_eq!(
            rational_pow(&r(2, 1), &GrossNumber::from_rational(r(1, 2))),
            Err(Error::InexactRoot)
        );
    }
}
