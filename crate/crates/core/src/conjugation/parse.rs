//! Prefix text syntax for [`AnalyticFunction`].
//!
//! ```text
//! expr := NUMBER | i | IDENT | (OP expr ...)
//! OP   := + | * | - | / | ^ | exp | conj | sqrt | c
//! ```
//!
//! `(^ e k)` needs a non-negative integer literal, `/` and `sqrt` need
//! constant operands, and `(c re im)` builds a complex literal. An identifier
//! listed in the parameter set is an analytic parameter; any other
//! identifier is a symbolic coefficient.

use num_complex::Complex64;

use super::expr::AnalyticFunction;
use super::mod_conjugate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Token>| {
        if !cur.is_empty() {
            out.push(Token::Atom(std::mem::take(cur)));
        }
    };
    for ch in src.chars() {
        match ch {
            '(' => {
                flush(&mut cur, &mut out);
                out.push(Token::Open);
            }
            ')' => {
                flush(&mut cur, &mut out);
                out.push(Token::Close);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// Untyped syntax tree.
#[derive(Debug, Clone)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn read(tokens: &[Token], pos: &mut usize) -> Result<Sexp> {
    match tokens.get(*pos) {
        None => Err(Error::Parse("unexpected end of input".into())),
        Some(Token::Close) => Err(Error::Parse("unexpected `)`".into())),
        Some(Token::Atom(a)) => {
            *pos += 1;
            Ok(Sexp::Atom(a.clone()))
        }
        Some(Token::Open) => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Parse("missing `)`".into())),
                    Some(Token::Close) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    _ => items.push(read(tokens, pos)?),
                }
            }
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn constant_of(f: &AnalyticFunction, what: &str) -> Result<Complex64> {
    f.as_constant()
        .ok_or_else(|| Error::Parse(format!("{what} needs a constant operand")))
}

fn real_literal(s: &Sexp) -> Result<f64> {
    match s {
        Sexp::Atom(a) => a
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("expected a number, got `{a}`"))),
        Sexp::List(_) => Err(Error::Parse("expected a number literal".into())),
    }
}

fn build(s: &Sexp, params: &[&str]) -> Result<AnalyticFunction> {
    match s {
        Sexp::Atom(a) => {
            if a == "i" {
                Ok(AnalyticFunction::constant(Complex64::i()))
            } else if let Ok(x) = a.parse::<f64>() {
                Ok(AnalyticFunction::constant(Complex64::new(x, 0.0)))
            } else if is_ident(a) {
                Ok(if params.contains(&a.as_str()) {
                    AnalyticFunction::param(a)
                } else {
                    AnalyticFunction::symbol(a)
                })
            } else {
                Err(Error::Parse(format!("bad token `{a}`")))
            }
        }
        Sexp::List(items) => {
            let (head, args) = items
                .split_first()
                .ok_or_else(|| Error::Parse("empty list".into()))?;
            let op = match head {
                Sexp::Atom(op) => op.as_str(),
                Sexp::List(_) => return Err(Error::Parse("operator must be an atom".into())),
            };
            let arity = |n: usize| -> Result<()> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("`{op}` takes {n} argument(s), got {}", args.len())))
                }
            };
            match op {
                "+" => args.iter().try_fold(AnalyticFunction::zero(), |acc, a| {
                    Ok(&acc + &build(a, params)?)
                }),
                "*" => args.iter().try_fold(
                    AnalyticFunction::constant(Complex64::new(1.0, 0.0)),
                    |acc, a| Ok(&acc * &build(a, params)?),
                ),
                "-" => match args.len() {
                    1 => Ok(-&build(&args[0], params)?),
                    2 => Ok(&build(&args[0], params)? - &build(&args[1], params)?),
                    n => Err(Error::Parse(format!("`-` takes 1 or 2 arguments, got {n}"))),
                },
                "/" => {
                    arity(2)?;
                    let d = constant_of(&build(&args[1], params)?, "`/`")?;
                    Ok(build(&args[0], params)?.scale(Complex64::new(1.0, 0.0) / d))
                }
                "^" => {
                    arity(2)?;
                    let k = real_literal(&args[1])?;
                    if k < 0.0 || k.fract() != 0.0 {
                        return Err(Error::Parse(format!("exponent must be a non-negative integer, got {k}")));
                    }
                    Ok(build(&args[0], params)?.pow(k as u32))
                }
                "exp" => {
                    arity(1)?;
                    build(&args[0], params)?.exp()
                }
                "conj" => {
                    arity(1)?;
                    let inner = build(&args[0], params)?;
                    mod_conjugate(&inner, &[])
                }
                "sqrt" => {
                    arity(1)?;
                    let c = constant_of(&build(&args[0], params)?, "`sqrt`")?;
                    Ok(AnalyticFunction::constant(c.sqrt()))
                }
                "c" => {
                    arity(2)?;
                    Ok(AnalyticFunction::constant(Complex64::new(
                        real_literal(&args[0])?,
                        real_literal(&args[1])?,
                    )))
                }
                other => Err(Error::Parse(format!("unknown operator `{other}`"))),
            }
        }
    }
}

/// Parses `src`, treating the names in `params` as analytic parameters.
/// Every listed parameter is declared on the result even if it does not
/// appear in the expression.
pub fn parse(src: &str, params: &[&str]) -> Result<AnalyticFunction> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let tree = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse("trailing input after expression".into()));
    }
    Ok(build(&tree, params)?.with_parameters(params.iter().copied()))
}
