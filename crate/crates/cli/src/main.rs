//! Command-line front end for lassokit.
//!
//! Expressions use postfix `*` (star), `@` (circle) and `$` (omega),
//! juxtaposition or `.` for concatenation, and `+` for union. Lassos are
//! written `spoke:loop`, e.g. `aaa:baa` or `:b`.
//!
//! Exit status: 0 for success or a positive answer, 1 for a negative
//! answer, 2 for usage, parse or validation errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lassokit::langops::{compile_dfa, dfa_to_expr, root};
use lassokit::lasso::{enumerate_lassos, gamma_equiv, Lasso};
use lassokit::lassoaut::equivalent_lasso;
use lassokit::lassoexp::{compile_df, compile_lasso, member_lasso_naive, parse_lexp};
use lassokit::omega::{gamma_fixpoint, h_map, parse_oexp, represent, to_nba};
use lassokit::ratexp::{enumerate_language, parse_rexp, split};
use lassokit::{Alphabet, Error, LassoAutomaton};

#[derive(Parser)]
#[command(name = "lassokit", version, about = "Lasso automata and rational lasso/ω-expressions")]
#[command(after_help = "Postfix operators: * star, @ circle (lasso loop), $ omega power.")]
struct Cli {
    /// Alphabet letters, e.g. `ab`. Inferred from the inputs when omitted.
    #[arg(long, global = true)]
    alphabet: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExprInput {
    /// Rational expression
    #[arg(long)]
    rexp: Option<String>,
    /// Lasso expression (uses `@`)
    #[arg(long)]
    lexp: Option<String>,
    /// ω-expression (uses `$`)
    #[arg(long)]
    oexp: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Disjunctive form of the representing lasso expression
    Df,
    /// Saturated lasso automaton file
    Automaton,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a word or lasso
    Member {
        #[command(flatten)]
        expr: OptExprInput,
        /// Lasso automaton file
        #[arg(long, conflicts_with_all = ["rexp", "lexp", "oexp"])]
        automaton: Option<PathBuf>,
        #[arg(long, conflicts_with = "lasso")]
        word: Option<String>,
        #[arg(long)]
        lasso: Option<String>,
    },
    /// Normal form of a lasso under γ-rewriting
    Nf { lasso: String },
    /// Decide whether two lassos denote the same ultimately periodic word
    EquivLasso { left: String, right: String },
    /// Compile a rational expression to a DFA or a lasso expression to a lasso automaton
    Compile {
        #[command(flatten)]
        expr: ExprInput,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two lasso automaton files accept the same lassos
    Equiv { left: PathBuf, right: PathBuf },
    /// Lasso expression for the language of an automaton file
    Extract { file: PathBuf },
    /// ω-expression for a saturated automaton file
    ExtractOmega { file: PathBuf },
    /// Decide saturation of an automaton file
    Saturated { file: PathBuf },
    /// Convert an ω-expression into a representing lasso expression or automaton
    Convert {
        oexp: String,
        #[arg(long, value_enum, default_value = "df")]
        to: Target,
        /// Output only the weak representation h(T)
        #[arg(long, conflicts_with = "gamma_rounds")]
        weak: bool,
        /// Iterate Γ up to this many extra rounds (no termination guarantee)
        #[arg(long)]
        gamma_rounds: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sequential splitting relation of a rational expression
    Split { rexp: String },
    /// Expression for the root of a rational language
    Root { rexp: String },
    /// List the words or lassos of an expression up to a length bound
    Enumerate {
        #[command(flatten)]
        expr: ExprInput,
        /// Bound on word, spoke and loop lengths
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Graphviz rendering of a compiled expression or an automaton file
    Dot {
        #[command(flatten)]
        expr: OptExprInput,
        #[arg(long, conflicts_with_all = ["rexp", "lexp", "oexp"])]
        automaton: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct OptExprInput {
    #[arg(long)]
    rexp: Option<String>,
    #[arg(long)]
    lexp: Option<String>,
    #[arg(long)]
    oexp: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    File { path: PathBuf, source: Error },
}

type CliResult = Result<bool, CliError>;

fn word_str(w: &str) -> &str {
    if w.is_empty() {
        "ε"
    } else {
        w
    }
}

fn parse_word(w: &str) -> String {
    if w == "ε" {
        String::new()
    } else {
        w.to_owned()
    }
}

/// Explicit alphabet, or the letters of `texts` with a warning.
fn alphabet(flag: &Option<String>, texts: &[&str]) -> Result<Alphabet, CliError> {
    match flag {
        Some(s) => Ok(Alphabet::from_letters(s)?),
        None => {
            let a = Alphabet::infer(texts.iter().copied());
            eprintln!("warning: alphabet inferred as {{{a}}}; pass --alphabet to override");
            Ok(a)
        }
    }
}

fn read_automaton(path: &PathBuf, flag: &Option<String>) -> Result<LassoAutomaton, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let aut = LassoAutomaton::read(&text).map_err(|source| CliError::File { path: path.clone(), source })?;
    if let Some(s) = flag {
        if &Alphabet::from_letters(s)? != aut.alphabet() {
            return Err(Error::AlphabetMismatch.into());
        }
    }
    Ok(aut)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn verdict(yes: bool, witness: Option<String>) -> bool {
    match (yes, witness) {
        (true, _) => println!("yes"),
        (false, Some(w)) => println!("no {w}"),
        (false, None) => println!("no"),
    }
    yes
}

fn run(cli: Cli) -> CliResult {
    let flag = &cli.alphabet;
    match cli.command {
        Command::Member { expr, automaton, word, lasso } => {
            if let Some(path) = automaton {
                let aut = read_automaton(&path, flag)?;
                let l = Lasso::parse(lasso.as_deref().ok_or_else(|| usage("--lasso is required"))?)?;
                let yes = aut.accepts(&l)?;
                println!("{l} is {}accepted", if yes { "" } else { "not " });
                return Ok(verdict(yes, None));
            }
            match (&expr.rexp, &expr.lexp, &expr.oexp) {
                (Some(e), None, None) => {
                    let w = parse_word(word.as_deref().ok_or_else(|| usage("--word is required with --rexp"))?);
                    let sigma = alphabet(flag, &[e, &w])?;
                    let t = parse_rexp(e, &sigma)?;
                    sigma.encode(&w)?;
                    let yes = compile_dfa(&t, &sigma)?.run(&w)?;
                    println!("{} {} ⟦{t}⟧", word_str(&w), if yes { "∈" } else { "∉" });
                    Ok(verdict(yes, None))
                }
                (None, Some(e), None) | (None, None, Some(e)) => {
                    let l = Lasso::parse(lasso.as_deref().ok_or_else(|| usage("--lasso is required"))?)?;
                    let sigma = alphabet(flag, &[e, l.spoke(), l.cycle()])?;
                    l.check_alphabet(&sigma)?;
                    let yes = if expr.lexp.is_some() {
                        let rho = parse_lexp(e, &sigma)?;
                        let yes = compile_lasso(&rho, &sigma)?.accepts(&l)?;
                        debug_assert_eq!(yes, member_lasso_naive(&rho, &l));
                        yes
                    } else {
                        to_nba(&parse_oexp(e, &sigma)?, &sigma)?.accepts_lasso(&l)?
                    };
                    println!("{l} is {}in the language of {e}", if yes { "" } else { "not " });
                    Ok(verdict(yes, None))
                }
                _ => Err(usage("one of --rexp, --lexp, --oexp or --automaton is required")),
            }
        }
        Command::Nf { lasso } => {
            println!("{}", Lasso::parse(&lasso)?.normal_form());
            Ok(true)
        }
        Command::EquivLasso { left, right } => {
            let (l, r) = (Lasso::parse(&left)?, Lasso::parse(&right)?);
            println!("normal forms: {} and {}", l.normal_form(), r.normal_form());
            Ok(verdict(gamma_equiv(&l, &r), None))
        }
        Command::Compile { expr, output } => {
            if let Some(e) = &expr.rexp {
                let sigma = alphabet(flag, &[e])?;
                emit(&compile_dfa(&parse_rexp(e, &sigma)?, &sigma)?.write(), &output)?;
            } else if let Some(e) = &expr.lexp {
                let sigma = alphabet(flag, &[e])?;
                emit(&compile_lasso(&parse_lexp(e, &sigma)?, &sigma)?.write(), &output)?;
            } else {
                return Err(usage("compile takes --rexp or --lexp; use `convert --to automaton` for ω-expressions"));
            }
            Ok(true)
        }
        Command::Equiv { left, right } => {
            let (a, b) = (read_automaton(&left, flag)?, read_automaton(&right, flag)?);
            let diff = equivalent_lasso(&a, &b)?;
            if let Some(l) = &diff {
                println!("{l} is accepted by exactly one automaton");
            }
            Ok(verdict(diff.is_none(), diff.map(|l| l.to_string())))
        }
        Command::Extract { file } => {
            println!("{}", read_automaton(&file, flag)?.extract_expr()?);
            Ok(true)
        }
        Command::ExtractOmega { file } => {
            println!("{}", read_automaton(&file, flag)?.extract_omega_expr()?);
            Ok(true)
        }
        Command::Saturated { file } => {
            let aut = read_automaton(&file, flag)?;
            match aut.saturation_counterexample()? {
                None => {
                    println!("saturated");
                    Ok(verdict(true, None))
                }
                Some((acc, rej)) => {
                    println!("not saturated: accepts {acc} but not the γ-equivalent {rej}");
                    Ok(verdict(false, Some(format!("{acc} {rej}"))))
                }
            }
        }
        Command::Convert { oexp, to, weak, gamma_rounds, output } => {
            let sigma = alphabet(flag, &[&oexp])?;
            let t = parse_oexp(&oexp, &sigma)?;
            let mut df = if weak { h_map(&t)? } else { represent(&t, &sigma)? };
            if let Some(n) = gamma_rounds {
                let (next, fixed) = gamma_fixpoint(&df, &sigma, n)?;
                if !fixed {
                    eprintln!("warning: no Γ fixpoint within {n} rounds");
                }
                df = next;
            }
            match to {
                Target::Df => emit(&df.to_string(), &output)?,
                Target::Automaton => {
                    let aut = compile_df(&df, &sigma)?;
                    if !weak {
                        if let Some((acc, rej)) = aut.saturation_counterexample()? {
                            return Err(Error::Certification(format!("not saturated: {acc} vs {rej}")).into());
                        }
                    }
                    emit(&aut.write(), &output)?
                }
            }
            Ok(true)
        }
        Command::Split { rexp } => {
            let sigma = alphabet(flag, &[&rexp])?;
            for p in split(&parse_rexp(&rexp, &sigma)?) {
                println!("{p}");
            }
            Ok(true)
        }
        Command::Root { rexp } => {
            let sigma = alphabet(flag, &[&rexp])?;
            let d = compile_dfa(&parse_rexp(&rexp, &sigma)?, &sigma)?;
            println!("{}", dfa_to_expr(&root(&d)?)?);
            Ok(true)
        }
        Command::Enumerate { expr, max_len } => {
            let e = expr.rexp.as_ref().or(expr.lexp.as_ref()).or(expr.oexp.as_ref()).expect("group");
            let sigma = alphabet(flag, &[e])?;
            if expr.rexp.is_some() {
                for w in enumerate_language(&parse_rexp(e, &sigma)?, &sigma, max_len) {
                    println!("{}", word_str(&w));
                }
            } else {
                let accept: Box<dyn Fn(&Lasso) -> Result<bool, Error>> = if expr.lexp.is_some() {
                    let rho = parse_lexp(e, &sigma)?;
                    Box::new(move |l| Ok(member_lasso_naive(&rho, l)))
                } else {
                    let nba = to_nba(&parse_oexp(e, &sigma)?, &sigma)?;
                    Box::new(move |l| nba.accepts_lasso(l))
                };
                for l in enumerate_lassos(&sigma, max_len, max_len.max(1)) {
                    if accept(&l)? {
                        println!("{l}");
                    }
                }
            }
            Ok(true)
        }
        Command::Dot { expr, automaton } => {
            let text = if let Some(path) = automaton {
                read_automaton(&path, flag)?.to_dot()
            } else if let Some(e) = &expr.rexp {
                let sigma = alphabet(flag, &[e])?;
                compile_dfa(&parse_rexp(e, &sigma)?, &sigma)?.to_dot()
            } else if let Some(e) = &expr.lexp {
                let sigma = alphabet(flag, &[e])?;
                compile_lasso(&parse_lexp(e, &sigma)?, &sigma)?.to_dot()
            } else if let Some(e) = &expr.oexp {
                let sigma = alphabet(flag, &[e])?;
                compile_df(&represent(&parse_oexp(e, &sigma)?, &sigma)?, &sigma)?.to_dot()
            } else {
                return Err(usage("dot needs an expression or --automaton"));
            };
            print!("{text}");
            Ok(true)
        }
    }
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_owned())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
