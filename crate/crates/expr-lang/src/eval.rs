use std::collections::BTreeMap;
use std::fmt;

use gross_core::{rational_pow, Error as CoreError, ExtendedValue, GrossNumber, Rational};

use crate::Expr;

/// Variable bindings for evaluation. Immutable once built; the REPL grows
/// a session environment only through explicit `let`.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    bindings: BTreeMap<String, ExtendedValue>,
}

impl Environment {
    pub fn new() -> Environment {
        Environment::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: ExtendedValue) {
        self.bindings.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&ExtendedValue> {
        self.bindings.get(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Quotient term budget for `/`; division must terminate within it.
    pub max_div_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> EvalOptions {
        EvalOptions { max_div_terms: 20 }
    }
}

/// Integer exponents are expanded by repeated multiplication, so keep them
/// at desk scale.
const MAX_INT_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(String),
    DivisionByZero,
    /// The division left a remainder within the term budget; expression
    /// evaluation is strict (the `:div` command exposes truncation).
    InexactDivision,
    UnsupportedPow(String),
    Unsupported(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(name) => write!(f, "unbound variable '{name}'"),
            EvalError::DivisionByZero => write!(f, "division by zero"),
            EvalError::InexactDivision => write!(
                f,
                "division is inexact within the term budget (use :div for truncated division)"
            ),
            EvalError::UnsupportedPow(msg) => write!(f, "unsupported power: {msg}"),
            EvalError::Unsupported(msg) => write!(f, "unsupported operation: {msg}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<CoreError> for EvalError {
    fn from(err: CoreError) -> EvalError {
        match err {
            CoreError::DivisionByZero => EvalError::DivisionByZero,
            other => EvalError::Unsupported(other.to_string()),
        }
    }
}

/// Evaluates a syntax tree against an environment.
pub fn eval(
    expr: &Expr,
    env: &Environment,
    opts: &EvalOptions,
) -> Result<ExtendedValue, EvalError> {
    match expr {
        Expr::Number(value) => Ok(ExtendedValue::from_rational(value.clone())),
        Expr::Gross => Ok(ExtendedValue::from_gross(GrossNumber::grossone())),
        Expr::Variable(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Expr::Neg(inner) => Ok(eval(inner, env, opts)?.neg()?),
        Expr::Add(lhs, rhs) => Ok(eval(lhs, env, opts)?.add(&eval(rhs, env, opts)?)?),
        Expr::Sub(lhs, rhs) => Ok(eval(lhs, env, opts)?.sub(&eval(rhs, env, opts)?)?),
        Expr::Mul(lhs, rhs) => Ok(eval(lhs, env, opts)?.mul(&eval(rhs, env, opts)?)?),
        Expr::Div(lhs, rhs) => {
            let numerator = eval(lhs, env, opts)?;
            let denominator = eval(rhs, env, opts)?;
            divide(&numerator, &denominator, opts)
        }
        Expr::Pow(base, exponent) => {
            let base = eval(base, env, opts)?;
            let exponent = eval(exponent, env, opts)?;
            power(&base, &exponent, opts)
        }
    }
}

fn divide(
    numerator: &ExtendedValue,
    denominator: &ExtendedValue,
    opts: &EvalOptions,
) -> Result<ExtendedValue, EvalError> {
    let divisor = denominator.as_gross().ok_or_else(|| {
        EvalError::Unsupported("division by a value containing power atoms".into())
    })?;
    if divisor.is_zero() {
        return Err(EvalError::DivisionByZero);
    }
    let terms = numerator
        .terms()
        .ok_or_else(|| EvalError::Unsupported("division of an approximant record".into()))?;
    let mut result = ExtendedValue::zero();
    for term in terms {
        let division = term.coeff().div(&divisor, opts.max_div_terms)?;
        if !division.exact {
            return Err(EvalError::InexactDivision);
        }
        let quotient = ExtendedValue::from_term(division.quotient, term.atoms().to_vec());
        result = result.add(&quotient)?;
    }
    Ok(result)
}

fn pow_by_squaring(base: &ExtendedValue, exponent: u64) -> Result<ExtendedValue, EvalError> {
    let mut acc = ExtendedValue::from_rational(Rational::one());
    let mut base = base.clone();
    let mut remaining = exponent;
    while remaining > 0 {
        if remaining & 1 == 1 {
            acc = acc.mul(&base)?;
        }
        remaining >>= 1;
        if remaining > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(acc)
}

fn power(
    base: &ExtendedValue,
    exponent: &ExtendedValue,
    opts: &EvalOptions,
) -> Result<ExtendedValue, EvalError> {
    let exponent = exponent
        .as_gross()
        .ok_or_else(|| EvalError::UnsupportedPow("exponent contains power atoms".into()))?;

    if let Some(rational_exp) = exponent.as_finite_rational() {
        if let Some(int_exp) = rational_exp.to_i64() {
            if int_exp.abs() > MAX_INT_EXPONENT {
                return Err(EvalError::UnsupportedPow(
                    "integer exponent too large".into(),
                ));
            }
            if int_exp >= 0 {
                return pow_by_squaring(base, int_exp as u64);
            }
            // Negative integer exponent: exact reciprocal of the power.
            let base_gross = base.as_gross().ok_or_else(|| {
                EvalError::UnsupportedPow("negative power of a value containing atoms".into())
            })?;
            let powered = base_gross.pow_nat(int_exp.unsigned_abs());
            let division = GrossNumber::one().div(&powered, opts.max_div_terms)?;
            if !division.exact {
                return Err(EvalError::InexactDivision);
            }
            return Ok(ExtendedValue::from_gross(division.quotient));
        }
        // Fractional rational exponent: only single-term bases have exact
        // fractional powers, through exact digit roots.
        let base_gross = base.as_gross().ok_or_else(|| {
            EvalError::UnsupportedPow("fractional power of a value containing atoms".into())
        })?;
        if let Some(plain) = base_gross.as_finite_rational() {
            return rational_pow(&plain, &exponent).map_err(pow_error);
        }
        let (digit, power) = base_gross.as_single_term().ok_or_else(|| {
            EvalError::UnsupportedPow("fractional power of a multi-term number".into())
        })?;
        let digit_power = rational_pow(digit, &exponent)
            .map_err(pow_error)?
            .as_finite_rational()
            .expect("finite exponent on a rational digit stays rational");
        return Ok(ExtendedValue::from_gross(GrossNumber::single(
            digit_power,
            power.scale(&rational_exp),
        )));
    }

    // Infinite or infinitesimal exponent.
    let base_gross = base.as_gross().ok_or_else(|| {
        EvalError::UnsupportedPow("non-finite power of a value containing atoms".into())
    })?;
    if let Some(plain) = base_gross.as_finite_rational() {
        return rational_pow(&plain, &exponent).map_err(pow_error);
    }
    if let Some((digit, power)) = base_gross.as_single_term() {
        if digit.is_one() {
            return Ok(ExtendedValue::from_gross(GrossNumber::single(
                Rational::one(),
                power.mul(&exponent),
            )));
        }
    }
    Err(EvalError::UnsupportedPow(
        "non-finite exponent on a general grossnumber base".into(),
    ))
}

fn pow_error(err: CoreError) -> EvalError {
    match err {
        CoreError::DivisionByZero => EvalError::DivisionByZero,
        CoreError::InexactRoot => EvalError::UnsupportedPow("the digit root is irrational".into()),
        CoreError::NotInteger => EvalError::UnsupportedPow(
            "a signed base needs the exponent's parity, which is undefined here".into(),
        ),
        other => EvalError::UnsupportedPow(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{format_value, parse};
    use gross_core::FormatMode;

    fn run(input: &str) -> ExtendedValue {
        eval(
            &parse(input).unwrap(),
            &Environment::new(),
            &EvalOptions::default(),
        )
        .unwrap()
    }

    fn show(input: &str) -> String {
        format_value(&run(input), FormatMode::Exact)
    }

    #[test]
    fn identity_rules_through_the_pipeline() {
        assert_eq!(show("0*G"), "0");
        assert_eq!(show("G - G"), "0");
        assert_eq!(show("G/G"), "1");
        assert_eq!(show("G^0"), "1");
        assert_eq!(show("1^G"), "1");
        assert_eq!(show("0^G"), "0");
    }

    #[test]
    fn limit_substitution_examples() {
        let mut env = Environment::new();
        env.bind("x", run("3G^2"));
        let opts = EvalOptions::default();
        let value = eval(&parse("5*x^3 - x^2 + 10^61").unwrap(), &env, &opts).unwrap();
        assert_eq!(
            format_value(&value, FormatMode::Exact),
            format!("135G^6 - 9G^4 + 1{}", "0".repeat(61))
        );

        let mut env = Environment::new();
        env.bind("n", run("0.5G - 1"));
        let value = eval(&parse("(-1)^n * n^3").unwrap(), &env, &opts).unwrap();
        assert_eq!(
            format_value(&value, FormatMode::Exact),
            "-0.125G^3 + 0.75G^2 - 1.5G + 1"
        );

        let mut env = Environment::new();
        env.bind("x", run("1"));
        env.bind("h", run("G^-1"));
        let value = eval(&parse("((x+h)^2 - x^2)/h").unwrap(), &env, &opts).unwrap();
        assert_eq!(format_value(&value, FormatMode::Exact), "2 + G^-1");
    }

    #[test]
    fn unbound_variables_are_reported() {
        let err = eval(
            &parse("x + 1").unwrap(),
            &Environment::new(),
            &EvalOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err, EvalError::UnboundVariable("x".into()));
    }

    #[test]
    fn strict_division_rejects_remainders() {
        let err = eval(
            &parse("1 / (G + 1)").unwrap(),
            &Environment::new(),
            &EvalOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err, EvalError::InexactDivision);
        assert!(matches!(
            eval(
                &parse("1 / 0").unwrap(),
                &Environment::new(),
                &EvalOptions::default()
            ),
            Err(EvalError::DivisionByZero)
        ));
    }

    #[test]
    fn atoms_general_powers_and_refusals() {
        assert_eq!(show("10^(-G)"), "10^(-G)");
        assert_eq!(show("2 - (2 - 10^(-G))"), "10^(-G)");
        assert_eq!(show("2^G * 2^G"), "2^(2G)");
        assert_eq!(show("G^(G^-1)"), "1G^(G^-1)");
        assert_eq!(show("(G^2)^G"), "1G^(2G)");
        assert_eq!(show("0.5^G"), "2^(-G)");
        assert_eq!(show("(-1)^G"), "1");
        // negative non-unit bases only resolve through parity
        assert_eq!(show("(-2)^G"), "2^(G)");
        assert!(matches!(
            eval(
                &parse("(G+1)^G").unwrap(),
                &Environment::new(),
                &EvalOptions::default()
            ),
            Err(EvalError::UnsupportedPow(_))
        ));
        assert!(matches!(
            eval(
                &parse("2^(2^G)").unwrap(),
                &Environment::new(),
                &EvalOptions::default()
            ),
            Err(EvalError::UnsupportedPow(_))
        ));
    }

    #[test]
    fn fractional_and_negative_exponents() {
        assert_eq!(show("G^44.2"), "G^44.2");
        assert_eq!(show("4^0.5"), "2");
        assert_eq!(show("G^-1"), "G^-1");
        assert_eq!(show("(8G^6)^(1/3)"), "2G^2");
        assert!(matches!(
            eval(
                &parse("2^(1/2)").unwrap(),
                &Environment::new(),
                &EvalOptions::default()
            ),
            Err(EvalError::UnsupportedPow(_))
        ));
    }
}
