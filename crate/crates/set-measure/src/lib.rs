//! Cardinality calculus for infinite subsets of the naturals.
//!
//! The measurable sets are arithmetic progressions `N(k,n) = {k, k+n,
//! k+2n, ...}` (the k-th of the n parts of the naturals, holding `G/n`
//! elements each), finite sets, and their Boolean combinations. Counting
//! never enumerates an infinite set: progressions are residue classes, so
//! membership of any concrete integer is a modulus test, and Boolean
//! algebra happens on residue sets over a common step.
//!
//! Counts that leave the positional system (the `b^(2G)` numeral counts,
//! line points of the form `2G * b^G`) are returned as power atoms.

mod parse;

pub use parse::parse_set_expr;

use std::collections::BTreeSet;
use std::fmt;

use gross_core::{Error as CoreError, ExtendedValue, GrossNumber, PowAtom, Rational};
use num_integer::Integer;

/// Residue sets are materialized over the least common step, so expressions
/// whose steps combine into something enormous are refused rather than
/// ground out.
const MAX_COMMON_STEP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetError {
    /// The expression cannot be reduced to disjoint progressions plus a
    /// finite correction within the supported bounds.
    Unsupported(String),
    /// A required root has no exact rational digit.
    InexactRoot,
    /// The counting form is outside the supported shapes.
    UnsupportedForm(String),
    /// Grid refinements are computed only for the stated levels.
    UnsupportedLevel(u32),
    InvalidProgression(String),
    Parse(String),
}

impl fmt::Display for SetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetError::Unsupported(msg) => write!(f, "unsupported set expression: {msg}"),
            SetError::InexactRoot => write!(f, "count requires an inexact root"),
            SetError::UnsupportedForm(msg) => write!(f, "unsupported counting form: {msg}"),
            SetError::UnsupportedLevel(level) => {
                write!(f, "grid level {level} is outside the computed cases")
            }
            SetError::InvalidProgression(msg) => write!(f, "invalid progression: {msg}"),
            SetError::Parse(msg) => write!(f, "set syntax error: {msg}"),
        }
    }
}

impl std::error::Error for SetError {}

impl From<CoreError> for SetError {
    fn from(err: CoreError) -> SetError {
        match err {
            CoreError::InexactRoot => SetError::InexactRoot,
            other => SetError::UnsupportedForm(other.to_string()),
        }
    }
}

/// The arithmetic progression `{k, k+n, k+2n, ...}` with `1 <= k <= n`:
/// exactly the naturals congruent to `k` modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    offset: u64,
    step: u64,
}

impl Progression {
    pub fn new(offset: u64, step: u64) -> Result<Progression, SetError> {
        if offset == 0 || step == 0 || offset > step {
            return Err(SetError::InvalidProgression(format!(
                "need 1 <= k <= n, got k={offset}, n={step}"
            )));
        }
        Ok(Progression { offset, step })
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn contains(&self, value: u64) -> bool {
        value >= 1 && value % self.step == self.offset % self.step
    }

    /// The first members, for finite cross-checks.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..).map(move |i| self.offset + i * self.step)
    }
}

/// A finite-tree set expression over progressions and finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Progression(Progression),
    Finite(BTreeSet<u64>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersection(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
}

/// Normal form over a common step `L`: a union of residue classes (residues
/// in `1..=L`), plus finitely many explicit additions outside the periodic
/// part and removals inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    step: u64,
    residues: BTreeSet<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

impl Normalized {
    fn empty(step: u64) -> Normalized {
        Normalized {
            step,
            residues: BTreeSet::new(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    fn in_periodic_part(&self, value: u64) -> bool {
        if value == 0 {
            return false;
        }
        let residue = canonical_residue(value, self.step);
        self.residues.contains(&residue)
    }

    pub fn contains(&self, value: u64) -> bool {
        if self.added.contains(&value) {
            return true;
        }
        self.in_periodic_part(value) && !self.removed.contains(&value)
    }

    /// The exact count: `|residues| * G/L + |added| - |removed|`.
    pub fn card(&self) -> GrossNumber {
        let periodic = GrossNumber::single(
            Rational::new(self.residues.len() as i64, self.step as i64),
            GrossNumber::one(),
        );
        let correction = GrossNumber::from_int(self.added.len() as i64 - self.removed.len() as i64);
        periodic.add(&correction)
    }

    fn restore_invariants(mut self) -> Normalized {
        self.added.retain(|v| *v >= 1);
        let periodic: Vec<u64> = self
            .added
            .iter()
            .copied()
            .filter(|v| self.in_periodic_part(*v))
            .collect();
        for value in periodic {
            self.added.remove(&value);
        }
        let removed = std::mem::take(&mut self.removed);
        self.removed = removed
            .into_iter()
            .filter(|v| self.in_periodic_part(*v))
            .collect();
        self
    }
}

fn canonical_residue(value: u64, step: u64) -> u64 {
    let r = value % step;
    if r == 0 {
        step
    } else {
        r
    }
}

fn common_step(a: u64, b: u64) -> Result<u64, SetError> {
    let gcd = a.gcd(&b);
    let lcm = (a / gcd)
        .checked_mul(b)
        .ok_or_else(|| SetError::Unsupported("common step overflows".into()))?;
    if lcm > MAX_COMMON_STEP {
        return Err(SetError::Unsupported(format!(
            "common step {lcm} exceeds the supported bound {MAX_COMMON_STEP}"
        )));
    }
    Ok(lcm)
}

/// Re-expresses a normal form over a multiple of its step.
fn lift(form: &Normalized, step: u64) -> Normalized {
    debug_assert_eq!(step % form.step, 0);
    let mut residues = BTreeSet::new();
    for residue in &form.residues {
        let mut value = *residue;
        while value <= step {
            residues.insert(value);
            value += form.step;
        }
    }
    Normalized {
        step,
        residues,
        added: form.added.clone(),
        removed: form.removed.clone(),
    }
}

fn union(a: &Normalized, b: &Normalized) -> Result<Normalized, SetError> {
    let step = common_step(a.step, b.step)?;
    let a = lift(a, step);
    let b = lift(b, step);
    let mut result = Normalized::empty(step);
    result.residues = a.residues.union(&b.residues).copied().collect();
    result.added = a.added.union(&b.added).copied().collect();
    result.removed = a
        .removed
        .union(&b.removed)
        .copied()
        .filter(|v| !a.contains(*v) && !b.contains(*v))
        .collect();
    Ok(result.restore_invariants())
}

fn intersection(a: &Normalized, b: &Normalized) -> Result<Normalized, SetError> {
    let step = common_step(a.step, b.step)?;
    let a = lift(a, step);
    let b = lift(b, step);
    let mut result = Normalized::empty(step);
    result.residues = a.residues.intersection(&b.residues).copied().collect();
    result.removed = a.removed.union(&b.removed).copied().collect();
    result.added = a
        .added
        .union(&b.added)
        .copied()
        .filter(|v| a.contains(*v) && b.contains(*v))
        .collect();
    Ok(result.restore_invariants())
}

fn difference(a: &Normalized, b: &Normalized) -> Result<Normalized, SetError> {
    let step = common_step(a.step, b.step)?;
    let a = lift(a, step);
    let b = lift(b, step);
    let mut result = Normalized::empty(step);
    result.residues = a.residues.difference(&b.residues).copied().collect();
    result.removed = a.removed.union(&b.added).copied().collect();
    result.added = a
        .added
        .union(&b.removed)
        .copied()
        .filter(|v| a.contains(*v) && !b.contains(*v))
        .collect();
    Ok(result.restore_invariants())
}

impl SetExpr {
    /// Reduces the expression to residue classes over a common step plus a
    /// finite correction. Errors loudly when the common step is out of
    /// bounds; nothing is ever approximated.
    pub fn normalize(&self) -> Result<Normalized, SetError> {
        match self {
            SetExpr::Progression(p) => {
                let mut form = Normalized::empty(p.step);
                form.residues.insert(canonical_residue(p.offset, p.step));
                Ok(form)
            }
            SetExpr::Finite(values) => {
                let mut form = Normalized::empty(1);
                form.added = values.iter().copied().filter(|v| *v >= 1).collect();
                Ok(form)
            }
            SetExpr::Union(a, b) => union(&a.normalize()?, &b.normalize()?),
            SetExpr::Intersection(a, b) => intersection(&a.normalize()?, &b.normalize()?),
            SetExpr::Difference(a, b) => difference(&a.normalize()?, &b.normalize()?),
        }
    }

    /// The exact number of elements.
    pub fn card(&self) -> Result<GrossNumber, SetError> {
        Ok(self.normalize()?.card())
    }
}

/// `|N(k,n)| = G/n`, an integer by divisibility of the naturals into n
/// parts of equal size.
pub fn card_progression(p: &Progression) -> GrossNumber {
    GrossNumber::single(Rational::new(1, p.step as i64), GrossNumber::one())
}

/// Intersects two progressions by solving the congruence pair (Chinese
/// remainder construction); `None` when the congruences are incompatible.
pub fn intersect_progressions(a: &Progression, b: &Progression) -> Option<Progression> {
    let gcd = a.step.gcd(&b.step);
    let lcm = (a.step / gcd).checked_mul(b.step)?;
    let r1 = a.offset % a.step;
    let r2 = b.offset % b.step;
    if r1 % gcd != r2 % gcd {
        return None;
    }
    // Walk one residue class; the first member of the other class within
    // one full period is the least positive solution.
    let mut candidate = a.offset;
    while candidate <= lcm {
        if candidate % b.step == r2 {
            return Some(Progression {
                offset: canonical_residue(candidate, lcm),
                step: lcm,
            });
        }
        candidate += a.step;
    }
    None
}

/// Supported forms for counting `{g(i)} ∩ [1, bound]` through the inverse
/// function `g^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseForm {
    /// `g(i) = k + n(i-1)` with `1 <= k <= n`.
    Linear { offset: u64, step: u64 },
    /// `g(i) = k + n * i^j` with `0 <= k < n`, `j >= 1`.
    Power {
        offset: u64,
        scale: u64,
        degree: u32,
    },
}

/// Counts the elements of a set given implicitly by a strictly increasing
/// form `g` and an upper bound: `J = floor(g^{-1}(bound))`.
pub fn count_by_inverse(form: InverseForm, bound: &GrossNumber) -> Result<GrossNumber, SetError> {
    if bound.sign() <= 0 {
        return Err(SetError::UnsupportedForm("bound must be positive".into()));
    }
    match form {
        InverseForm::Linear { offset, step } => {
            if offset == 0 || step == 0 || offset > step {
                return Err(SetError::UnsupportedForm(
                    "linear form requires 1 <= k <= n".into(),
                ));
            }
            let shifted = bound
                .sub(&GrossNumber::from_int(offset as i64))
                .scale(&Rational::new(1, step as i64));
            let floored = shifted
                .floor()
                .map_err(|_| SetError::UnsupportedForm("bound has no integer part".into()))?;
            Ok(floored.add(&GrossNumber::one()))
        }
        InverseForm::Power {
            offset,
            scale,
            degree,
        } => {
            if scale == 0 || degree == 0 || offset >= scale {
                return Err(SetError::UnsupportedForm(
                    "power form requires 0 <= k < n and j >= 1".into(),
                ));
            }
            let shifted = bound
                .sub(&GrossNumber::from_int(offset as i64))
                .scale(&Rational::new(1, scale as i64));
            let root = match shifted.as_single_term() {
                Some(_) => shifted.nth_root(degree)?,
                None => {
                    // Report the real blocker: an irrational digit root if
                    // the leading digit has one, otherwise the shape.
                    let leading = shifted
                        .leading()
                        .expect("positive bound leaves a nonzero count");
                    if leading.digit().is_negative() || leading.digit().nth_root(degree).is_none() {
                        return Err(SetError::InexactRoot);
                    }
                    return Err(SetError::UnsupportedForm(
                        "power-form count needs a single-term bound".into(),
                    ));
                }
            };
            root.floor()
                .map_err(|_| SetError::UnsupportedForm("root has no integer part".into()))
        }
    }
}

/// `|{(a_1..a_m)}| = G^m`: tuples over the naturals.
pub fn card_tuples(arity: u32) -> Result<GrossNumber, SetError> {
    if arity == 0 {
        return Err(SetError::UnsupportedForm("arity must be at least 1".into()));
    }
    Ok(GrossNumber::grossone().pow_nat(u64::from(arity)))
}

/// `|Z| = 2G + 1`: G positives, G negatives, and zero.
pub fn card_integers() -> GrossNumber {
    GrossNumber::single(Rational::from_int(2), GrossNumber::one()).add(&GrossNumber::one())
}

/// Numerals `p/q` over all integer pairs with `q != 0`: `(2G+1) * 2G =
/// 4G^2 + 2G` distinct numerals (not distinct numbers).
pub fn card_integer_ratio_numerals() -> GrossNumber {
    card_integers().mul(&GrossNumber::single(
        Rational::from_int(2),
        GrossNumber::one(),
    ))
}

/// Signed numerals `p/q` over natural pairs plus a single zero: `2G^2 + 1`.
pub fn card_natural_ratio_numerals() -> GrossNumber {
    GrossNumber::single(Rational::from_int(2), GrossNumber::from_int(2)).add(&GrossNumber::one())
}

/// Count of numerals expressible in a base-`b` positional record with up to
/// G integer and G fractional positions: `b^(2G)`, beyond the positional
/// system and therefore an atom.
pub fn card_positional_numerals(base: u64) -> Result<PowAtom, SetError> {
    if base < 2 {
        return Err(SetError::UnsupportedForm("radix must be at least 2".into()));
    }
    let exponent = GrossNumber::single(Rational::from_int(2), GrossNumber::one());
    PowAtom::new(Rational::from_int(base as i64), exponent)
        .map_err(|e| SetError::UnsupportedForm(e.to_string()))
}

/// Point models for counting a whole line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinePoints {
    /// Points on a uniform `1/G^j`-grid; computed for levels 1 and 2.
    GridLevel(u32),
    /// Points with base-`b` fractional records inside each unit interval.
    Positional(u64),
}

/// Number of points on the whole line under the chosen point model:
/// `2G^2` and `2G^3` for the two grid levels, `2G * b^G` for positional
/// points within `2G` unit intervals.
pub fn card_line(points: LinePoints) -> Result<ExtendedValue, SetError> {
    match points {
        LinePoints::GridLevel(level @ (1 | 2)) => {
            let count = GrossNumber::single(
                Rational::from_int(2),
                GrossNumber::from_int(i64::from(level) + 1),
            );
            Ok(ExtendedValue::from_gross(count))
        }
        LinePoints::GridLevel(level) => Err(SetError::UnsupportedLevel(level)),
        LinePoints::Positional(base) => {
            if base < 2 {
                return Err(SetError::UnsupportedForm("radix must be at least 2".into()));
            }
            let atom = PowAtom::new(Rational::from_int(base as i64), GrossNumber::grossone())
                .map_err(|e| SetError::UnsupportedForm(e.to_string()))?;
            let coeff = GrossNumber::single(Rational::from_int(2), GrossNumber::one());
            Ok(ExtendedValue::from_term(coeff, vec![atom]))
        }
    }
}
