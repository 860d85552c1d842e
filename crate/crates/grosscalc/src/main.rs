use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use grosscalc::{parse_format, Outcome, Session};

const USAGE: &str = "\
grosscalc - exact calculator for numbers with infinite and infinitesimal parts

usage: grosscalc [options]
  --eval <expr>         evaluate one line and exit
  --script <file>       run a file of calculator lines and exit
  --max-div-terms <n>   division term budget (default 20)
  --format <mode>       exact (default) or decimal:<digits>
  --help                print this message

With no --eval or --script, reads lines from standard input. Type :help
inside the calculator for the command list.";

struct Args {
    eval: Option<String>,
    script: Option<String>,
    max_div_terms: Option<usize>,
    format: Option<String>,
    help: bool,
}

fn parse_args(mut args: std::env::Args) -> Result<Args, String> {
    args.next();
    let mut parsed = Args {
        eval: None,
        script: None,
        max_div_terms: None,
        format: None,
        help: false,
    };
    while let Some(arg) = args.next() {
        let mut take = |name: &str| args.next().ok_or_else(|| format!("{name} needs a value"));
        match arg.as_str() {
            "--eval" => parsed.eval = Some(take("--eval")?),
            "--script" => parsed.script = Some(take("--script")?),
            "--max-div-terms" => {
                let value = take("--max-div-terms")?;
                let terms = value
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| format!("'{value}' is not a positive term count"))?;
                parsed.max_div_terms = Some(terms);
            }
            "--format" => parsed.format = Some(take("--format")?),
            "--help" | "-h" => parsed.help = true,
            other => return Err(format!("unknown option '{other}'")),
        }
    }
    Ok(parsed)
}

fn print_outcome(outcome: &Outcome) {
    if let Outcome::Lines(lines) = outcome {
        let mut stdout = io::stdout().lock();
        for line in lines {
            let _ = writeln!(stdout, "{line}");
        }
    }
}

fn run_repl(session: &mut Session) -> ExitCode {
    let interactive = io::stdin().is_terminal();
    let stdin = io::stdin().lock();
    for line in stdin.lines() {
        let Ok(line) = line else {
            return ExitCode::from(1);
        };
        match session.execute(&line) {
            Ok(Outcome::Quit) => return ExitCode::SUCCESS,
            Ok(outcome) => print_outcome(&outcome),
            Err(message) => eprintln!("error: {message}"),
        }
        if interactive {
            prompt();
        }
    }
    ExitCode::SUCCESS
}

fn prompt() {
    print!("> ");
    let _ = io::stdout().flush();
}

fn run_script(session: &mut Session, text: &str) -> ExitCode {
    let mut first_error: Option<usize> = None;
    for (index, line) in text.lines().enumerate() {
        match session.execute(line) {
            Ok(Outcome::Quit) => break,
            Ok(outcome) => print_outcome(&outcome),
            Err(message) => {
                eprintln!("line {}: {message}", index + 1);
                first_error.get_or_insert(index + 1);
            }
        }
    }
    match first_error {
        None => ExitCode::SUCCESS,
        Some(_) => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let args = match parse_args(std::env::args()) {
        Ok(args) => args,
        Err(message) => {
            eprintln!("error: {message}");
            eprintln!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    if args.help {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }

    let mut session = Session::new();
    if let Some(terms) = args.max_div_terms {
        session.set_max_div_terms(terms);
    }
    if let Some(format) = &args.format {
        match parse_format(format) {
            Ok(mode) => session.set_format(mode),
            Err(message) => {
                eprintln!("error: {message}");
                return ExitCode::from(2);
            }
        }
    }

    if let Some(expr) = &args.eval {
        return match session.execute(expr) {
            Ok(outcome) => {
                print_outcome(&outcome);
                ExitCode::SUCCESS
            }
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(1)
            }
        };
    }

    if let Some(path) = &args.script {
        return match fs::read_to_string(path) {
            Ok(text) => run_script(&mut session, &text),
            Err(err) => {
                eprintln!("error: cannot read '{path}': {err}");
                ExitCode::from(2)
            }
        };
    }

    if io::stdin().is_terminal() {
        prompt();
    }
    run_repl(&mut session)
}
