//! The text syntax for formulas and proofs.
//!
//! ```text
//! formula := X | ~X | ~formula
//!          | (tens F F) | (par F F) | (with F F) | (plus F F)
//!          | (top) | (zero) | (one) | (bot)
//! proof   := (ax F) | (cut P P) | (tensor P P) | (par P) | (with P P)
//!          | (plus_l F P) | (plus_r F P) | (top F ...) | (one) | (bot P)
//!          | (ex (i ...) P)
//! ```
//!
//! `;` starts a comment.  A proof file holds one proof, optionally followed
//! by a second proof: its expected one-step reduct.

use crate::cat::formula::Formula;
use crate::cat::proof::Proof;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom { text: String, line: usize, col: usize },
    List { items: Vec<Sexp>, line: usize, col: usize },
    Neg { inner: Box<Sexp>, line: usize, col: usize },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, col, .. } | Sexp::List { line, col, .. } | Sexp::Neg { line, col, .. } => (*line, *col),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.pos();
        Err(Error::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn sexp(&mut self) -> Result<Sexp> {
        self.skip_blank();
        let (line, col) = (self.line, self.col);
        match self.chars.peek().copied() {
            None => self.err("unexpected end of input"),
            Some(')') => self.err("unexpected ')'"),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => {
                            return Err(Error::Parse {
                                line,
                                col,
                                msg: "unclosed '('".into(),
                            })
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List { items, line, col });
                        }
                        Some(_) => items.push(self.sexp()?),
                    }
                }
            }
            Some('~') => {
                self.bump();
                let inner = self.sexp()?;
                Ok(Sexp::Neg {
                    inner: Box::new(inner),
                    line,
                    col,
                })
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '~' {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom { text, line, col })
            }
        }
    }
}

/// All top-level s-expressions of `src`.
pub fn parse_sexps(src: &str) -> Result<Vec<Sexp>> {
    let mut lx = Lexer {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        lx.skip_blank();
        if lx.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(lx.sexp()?);
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn head(s: &Sexp) -> Result<(&str, &[Sexp])> {
    match s {
        Sexp::List { items, .. } => match items.first() {
            Some(Sexp::Atom { text, .. }) => Ok((text.as_str(), &items[1..])),
            _ => s.err("expected a rule or connective name"),
        },
        _ => s.err("expected a parenthesised form"),
    }
}

fn arity<'a>(s: &Sexp, args: &'a [Sexp], n: usize, name: &str) -> Result<&'a [Sexp]> {
    if args.len() != n {
        return s.err(format!("{name} expects {n} argument(s), found {}", args.len()));
    }
    Ok(args)
}

pub fn parse_formula(s: &Sexp) -> Result<Formula> {
    match s {
        Sexp::Atom { text, .. } if is_ident(text) => Ok(Formula::Atom(text.clone())),
        Sexp::Atom { text, .. } => s.err(format!("not an atom name: {text:?}")),
        Sexp::Neg { inner, .. } => Ok(parse_formula(inner)?.dual()),
        Sexp::List { .. } => {
            let (name, args) = head(s)?;
            let bin = |f: fn(Formula, Formula) -> Formula| -> Result<Formula> {
                let a = arity(s, args, 2, name)?;
                Ok(f(parse_formula(&a[0])?, parse_formula(&a[1])?))
            };
            let nullary = |f: Formula| -> Result<Formula> {
                arity(s, args, 0, name)?;
                Ok(f)
            };
            match name {
                "tens" => bin(Formula::tensor),
                "par" => bin(Formula::par),
                "with" => bin(Formula::with),
                "plus" => bin(Formula::plus),
                "top" => nullary(Formula::Top),
                "zero" => nullary(Formula::Zero),
                "one" => nullary(Formula::One),
                "bot" => nullary(Formula::Bot),
                _ => s.err(format!("unknown connective {name:?}")),
            }
        }
    }
}

pub fn parse_proof(s: &Sexp) -> Result<Proof> {
    let (name, args) = head(s)?;
    let p = |x: &Sexp| parse_proof(x).map(Box::new);
    Ok(match name {
        "ax" => Proof::Ax(parse_formula(&arity(s, args, 1, name)?[0])?),
        "cut" | "tensor" | "with" => {
            let a = arity(s, args, 2, name)?;
            let (l, r) = (p(&a[0])?, p(&a[1])?);
            match name {
                "cut" => Proof::Cut(l, r),
                "tensor" => Proof::Tensor(l, r),
                _ => Proof::With(l, r),
            }
        }
        "par" => Proof::Par(p(&arity(s, args, 1, name)?[0])?),
        "bot" => Proof::Bot(p(&arity(s, args, 1, name)?[0])?),
        "plus_l" | "plus_r" => {
            let a = arity(s, args, 2, name)?;
            let f = parse_formula(&a[0])?;
            if name == "plus_l" {
                Proof::PlusL(f, p(&a[1])?)
            } else {
                Proof::PlusR(f, p(&a[1])?)
            }
        }
        "top" => Proof::Top(args.iter().map(parse_formula).collect::<Result<_>>()?),
        "one" => {
            arity(s, args, 0, name)?;
            Proof::One
        }
        "ex" => {
            let a = arity(s, args, 2, name)?;
            let perm = match &a[0] {
                Sexp::List { items, .. } => items
                    .iter()
                    .map(|x| match x {
                        Sexp::Atom { text, .. } => text.parse::<usize>().or_else(|_| x.err("expected an index")),
                        _ => x.err("expected an index"),
                    })
                    .collect::<Result<Vec<_>>>()?,
                other => return other.err("expected a list of indices"),
            };
            Proof::Ex(perm, p(&a[1])?)
        }
        _ => return s.err(format!("unknown rule {name:?}")),
    })
}

pub fn parse_formula_str(src: &str) -> Result<Formula> {
    match parse_sexps(src)?.as_slice() {
        [one] => parse_formula(one),
        _ => Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected exactly one formula".into(),
        }),
    }
}

pub fn parse_proof_str(src: &str) -> Result<Proof> {
    Ok(parse_proof_file(src)?.0)
}

/// A proof and, if present, its expected one-step reduct.
pub fn parse_proof_file(src: &str) -> Result<(Proof, Option<Proof>)> {
    let forms = parse_sexps(src)?;
    match forms.as_slice() {
        [p] => Ok((parse_proof(p)?, None)),
        [p, q] => Ok((parse_proof(p)?, Some(parse_proof(q)?))),
        [] => Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty proof file".into(),
        }),
        [_, _, extra, ..] => extra.err("at most two proofs per file"),
    }
}
