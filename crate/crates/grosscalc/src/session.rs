use expr_lang::{eval, format_value, parse, Environment, EvalOptions};
use gross_core::{ExtendedValue, FormatMode, GrossNumber, Rational};
use seq_series::{concat, sum_const, sum_geometric, sum_poly};
use set_measure::parse_set_expr;

/// What a successfully executed line produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Lines(Vec<String>),
    Quit,
}

/// One interactive session: an environment grown by `let` plus the output
/// settings. Settings changes affect only subsequent commands.
pub struct Session {
    env: Environment,
    max_div_terms: usize,
    format: FormatMode,
}

impl Default for Session {
    fn default() -> Session {
        Session::new()
    }
}

const HELP: &[&str] = &[
    "<expr>                            evaluate an expression and print the result",
    "let <name> = <expr>               bind a variable",
    ":div A ; B [; N]                  divide A by B, printing every partial remainder",
    ":card <set>                       cardinality of a set: N(k,n), {a,b,c}, |, &, \\",
    ":sum const ; c ; k=<expr>         sum of k copies of the constant c",
    ":sum poly ; a0,a1[,a2[,a3]] ; k=<expr>   sum over i=1..k of a polynomial in i",
    ":sum geom ; r ; k=<expr>          sum over i=1..k of r^i",
    ":concat L1 ; L2                   concatenate sequence lengths (first, leftover)",
    ":classify <expr>                  zero, finite, infinitesimal, infinite, finite-mixed",
    ":parity <expr>                    parity of an integer value",
    ":cmp A ; B                        less, equal, greater, or incomparable",
    ":set max-div-terms <n>            division term budget (default 20)",
    ":set format exact|decimal:<d>     exact digits, or d significant digits on display",
    ":help                             this overview",
    ":quit                             leave the calculator",
];

impl Session {
    pub fn new() -> Session {
        Session {
            env: Environment::new(),
            max_div_terms: 20,
            format: FormatMode::Exact,
        }
    }

    pub fn set_max_div_terms(&mut self, value: usize) {
        self.max_div_terms = value.max(1);
    }

    pub fn set_format(&mut self, format: FormatMode) {
        self.format = format;
    }

    fn options(&self) -> EvalOptions {
        EvalOptions {
            max_div_terms: self.max_div_terms,
        }
    }

    fn render(&self, value: &ExtendedValue) -> String {
        format_value(value, self.format)
    }

    fn render_gross(&self, value: &GrossNumber) -> String {
        self.render(&ExtendedValue::from_gross(value.clone()))
    }

    fn eval_text(&self, text: &str) -> Result<ExtendedValue, String> {
        let expr = parse(text).map_err(|e| e.to_string())?;
        eval(&expr, &self.env, &self.options()).map_err(|e| e.to_string())
    }

    fn eval_gross(&self, text: &str) -> Result<GrossNumber, String> {
        self.eval_text(text)?
            .as_gross()
            .ok_or_else(|| format!("'{}' must not contain power atoms", text.trim()))
    }

    fn eval_rational(&self, text: &str) -> Result<Rational, String> {
        self.eval_text(text)?
            .as_finite_rational()
            .ok_or_else(|| format!("'{}' must be a finite rational", text.trim()))
    }

    /// Executes one line. `Err` is a one-line diagnostic; the session
    /// survives every error.
    pub fn execute(&mut self, line: &str) -> Result<Outcome, String> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Outcome::Lines(Vec::new()));
        }
        if let Some(rest) = line.strip_prefix(':') {
            let (command, args) = match rest.split_once(char::is_whitespace) {
                Some((command, args)) => (command, args.trim()),
                None => (rest, ""),
            };
            return self.command(command, args);
        }
        if let Some(rest) = line.strip_prefix("let ") {
            let (name, expr) = rest
                .split_once('=')
                .ok_or_else(|| "expected 'let <name> = <expr>'".to_string())?;
            let name = name.trim();
            if name.is_empty()
                || !name
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_alphabetic() || c == '_')
                || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
                || name == "G"
            {
                return Err(format!("'{name}' is not a bindable name"));
            }
            let value = self.eval_text(expr)?;
            self.env.bind(name, value);
            return Ok(Outcome::Lines(Vec::new()));
        }
        let value = self.eval_text(line)?;
        Ok(Outcome::Lines(vec![self.render(&value)]))
    }

    fn command(&mut self, command: &str, args: &str) -> Result<Outcome, String> {
        match command {
            "quit" | "q" => Ok(Outcome::Quit),
            "help" => Ok(Outcome::Lines(HELP.iter().map(|s| s.to_string()).collect())),
            "div" => self.cmd_div(args),
            "card" => self.cmd_card(args),
            "sum" => self.cmd_sum(args),
            "concat" => self.cmd_concat(args),
            "classify" => self.cmd_classify(args),
            "parity" => self.cmd_parity(args),
            "cmp" => self.cmd_cmp(args),
            "set" => self.cmd_set(args),
            other => Err(format!("unknown command ':{other}' (try :help)")),
        }
    }

    fn cmd_div(&self, args: &str) -> Result<Outcome, String> {
        let parts: Vec<&str> = args.split(';').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err("usage: :div A ; B [; maxterms]".into());
        }
        let dividend = self.eval_gross(parts[0])?;
        let divisor = self.eval_gross(parts[1])?;
        let max_terms = match parts.get(2) {
            Some(text) => text
                .parse::<usize>()
                .ok()
                .filter(|n| *n >= 1)
                .ok_or_else(|| format!("'{text}' is not a positive term count"))?,
            None => self.max_div_terms,
        };
        let division = dividend
            .div(&divisor, max_terms)
            .map_err(|e| e.to_string())?;
        let mut lines = Vec::new();
        for (index, step) in division.steps.iter().enumerate() {
            lines.push(format!(
                "R{}: {}",
                index + 1,
                self.render_gross(&step.remainder)
            ));
        }
        lines.push(format!(
            "quotient: {}",
            self.render_gross(&division.quotient)
        ));
        lines.push(format!(
            "remainder: {}",
            self.render_gross(&division.remainder)
        ));
        lines.push(format!("exact: {}", division.exact));
        Ok(Outcome::Lines(lines))
    }

    fn cmd_card(&self, args: &str) -> Result<Outcome, String> {
        let expr = parse_set_expr(args).map_err(|e| e.to_string())?;
        let count = expr.card().map_err(|e| e.to_string())?;
        Ok(Outcome::Lines(vec![self.render_gross(&count)]))
    }

    fn cmd_sum(&self, args: &str) -> Result<Outcome, String> {
        let parts: Vec<&str> = args.split(';').map(str::trim).collect();
        let [family, params, count_part] = parts.as_slice() else {
            return Err("usage: :sum <const|poly|geom> ; <params> ; k=<expr>".into());
        };
        let count_text = count_part
            .strip_prefix("k=")
            .ok_or_else(|| "the item count must be written k=<expr>".to_string())?;
        let count = self.eval_gross(count_text)?;
        let value = match *family {
            "const" => {
                let constant = self.eval_rational(params)?;
                ExtendedValue::from_gross(sum_const(&constant, &count).map_err(|e| e.to_string())?)
            }
            "poly" => {
                let coeffs: Vec<Rational> = params
                    .split(',')
                    .map(|p| self.eval_rational(p))
                    .collect::<Result<_, _>>()?;
                ExtendedValue::from_gross(sum_poly(&coeffs, &count).map_err(|e| e.to_string())?)
            }
            "geom" => {
                let ratio = self.eval_rational(params)?;
                sum_geometric(&ratio, &count).map_err(|e| e.to_string())?
            }
            other => return Err(format!("unknown sum family '{other}'")),
        };
        Ok(Outcome::Lines(vec![self.render(&value)]))
    }

    fn cmd_concat(&self, args: &str) -> Result<Outcome, String> {
        let parts: Vec<&str> = args.split(';').map(str::trim).collect();
        let [first_text, second_text] = parts.as_slice() else {
            return Err("usage: :concat L1 ; L2".into());
        };
        let first_len = self.eval_gross(first_text)?;
        let second_len = self.eval_gross(second_text)?;
        let (first, leftover) = concat(&first_len, &second_len).map_err(|e| e.to_string())?;
        Ok(Outcome::Lines(vec![
            format!("first: {}", self.render_gross(&first)),
            format!("leftover: {}", self.render_gross(&leftover)),
        ]))
    }

    fn cmd_classify(&self, args: &str) -> Result<Outcome, String> {
        let value = self.eval_text(args)?;
        let line = match value.classify_extended() {
            Some(class) => class.to_string(),
            None => "unclassifiable".to_string(),
        };
        Ok(Outcome::Lines(vec![line]))
    }

    fn cmd_parity(&self, args: &str) -> Result<Outcome, String> {
        let value = self.eval_gross(args)?;
        let parity = value.parity().map_err(|e| e.to_string())?;
        Ok(Outcome::Lines(vec![parity.to_string()]))
    }

    fn cmd_cmp(&self, args: &str) -> Result<Outcome, String> {
        let parts: Vec<&str> = args.split(';').map(str::trim).collect();
        let [lhs_text, rhs_text] = parts.as_slice() else {
            return Err("usage: :cmp A ; B".into());
        };
        let lhs = self.eval_text(lhs_text)?;
        let rhs = self.eval_text(rhs_text)?;
        Ok(Outcome::Lines(vec![lhs.cmp_extended(&rhs).to_string()]))
    }

    fn cmd_set(&mut self, args: &str) -> Result<Outcome, String> {
        let (key, value) = args
            .split_once(char::is_whitespace)
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| "usage: :set <key> <value>".to_string())?;
        match key {
            "max-div-terms" => {
                let terms = value
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| format!("'{value}' is not a positive term count"))?;
                self.max_div_terms = terms;
            }
            "format" => {
                self.format = parse_format(value)?;
            }
            other => return Err(format!("unknown setting '{other}'")),
        }
        Ok(Outcome::Lines(Vec::new()))
    }
}

/// Parses `exact` or `decimal:<digits>`.
pub fn parse_format(text: &str) -> Result<FormatMode, String> {
    if text == "exact" {
        return Ok(FormatMode::Exact);
    }
    if let Some(digits) = text.strip_prefix("decimal:") {
        let digits = digits
            .parse::<u32>()
            .ok()
            .filter(|d| *d >= 1)
            .ok_or_else(|| format!("'{digits}' is not a positive digit count"))?;
        return Ok(FormatMode::Decimal(digits));
    }
    Err(format!(
        "unknown format '{text}' (use exact or decimal:<d>)"
    ))
}
