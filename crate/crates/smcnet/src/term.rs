//! Derived terms over a signature: generators, identities, composition,
//! tensor and hom of terms, and the structural constants (associator,
//! unitors, symmetry, evaluation, coevaluation) with explicit formula
//! arguments.
//!
//! Concrete syntax: `.` is composition (right operand applied first) and
//! binds loosest, then `*`, then `-o`; structural constants take
//! atomic-or-parenthesized formula arguments, e.g. `assoc x y (x * y)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::lex::{lex, Cursor, Tok};
use crate::theory::Signature;

/// Keywords of the term and formula grammars; not usable as sort or
/// operation names.
pub const RESERVED: &[&str] = &[
    "I", "id", "sym", "assoc", "assoc'", "lunit", "lunit'", "runit", "runit'", "eval", "coeval",
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A generator from the signature.
    Gen(String),
    Id(Formula),
    /// `Comp(g, f)` is `g . f`: apply `f` first.
    Comp(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    Hom(Box<Term>, Box<Term>),
    /// `a * (b * c) -> (a * b) * c`
    Assoc(Formula, Formula, Formula),
    AssocInv(Formula, Formula, Formula),
    /// `I * a -> a`
    Lunit(Formula),
    LunitInv(Formula),
    /// `a * I -> a`
    Runit(Formula),
    RunitInv(Formula),
    /// `a * b -> b * a`
    Sym(Formula, Formula),
    /// `(a -o b) * a -> b`
    Eval(Formula, Formula),
    /// `a -> b -o (a * b)`
    Coeval(Formula, Formula),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    pub fn comp(after: Term, before: Term) -> Term {
        Term::Comp(Box::new(after), Box::new(before))
    }

    pub fn tensor(l: Term, r: Term) -> Term {
        Term::Tensor(Box::new(l), Box::new(r))
    }

    pub fn hom(l: Term, r: Term) -> Term {
        Term::Hom(Box::new(l), Box::new(r))
    }
}

/// Source and target formulas of a term.
pub fn infer_type(t: &Term, sig: &Signature) -> Result<(Formula, Formula)> {
    match t {
        Term::Gen(name) => {
            let (s, tg) = sig.op(name).ok_or_else(|| Error::UnknownOp(name.clone()))?;
            Ok((s.clone(), tg.clone()))
        }
        Term::Id(a) => Ok((a.clone(), a.clone())),
        Term::Comp(after, before) => {
            let (a, b) = infer_type(before, sig)?;
            let (b2, c) = infer_type(after, sig)?;
            if b != b2 {
                return Err(Error::CompositionMismatch {
                    produced: b,
                    expected: b2,
                });
            }
            Ok((a, c))
        }
        Term::Tensor(f, g) => {
            let (a, b) = infer_type(f, sig)?;
            let (c, d) = infer_type(g, sig)?;
            Ok((Formula::tensor(a, c), Formula::tensor(b, d)))
        }
        // f : a -> b, g : c -> d  gives  f -o g : (b -o c) -> (a -o d)
        Term::Hom(f, g) => {
            let (a, b) = infer_type(f, sig)?;
            let (c, d) = infer_type(g, sig)?;
            Ok((Formula::hom(b, c), Formula::hom(a, d)))
        }
        Term::Assoc(a, b, c) => Ok((
            Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone())),
            Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone()),
        )),
        Term::AssocInv(a, b, c) => Ok((
            Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone()),
            Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone())),
        )),
        Term::Lunit(a) => Ok((Formula::tensor(Formula::Unit, a.clone()), a.clone())),
        Term::LunitInv(a) => Ok((a.clone(), Formula::tensor(Formula::Unit, a.clone()))),
        Term::Runit(a) => Ok((Formula::tensor(a.clone(), Formula::Unit), a.clone())),
        Term::RunitInv(a) => Ok((a.clone(), Formula::tensor(a.clone(), Formula::Unit))),
        Term::Sym(a, b) => Ok((
            Formula::tensor(a.clone(), b.clone()),
            Formula::tensor(b.clone(), a.clone()),
        )),
        Term::Eval(a, b) => Ok((
            Formula::tensor(Formula::hom(a.clone(), b.clone()), a.clone()),
            b.clone(),
        )),
        Term::Coeval(a, b) => Ok((
            a.clone(),
            Formula::hom(b.clone(), Formula::tensor(a.clone(), b.clone())),
        )),
    }
}

/// Parse a term and check that it is well typed.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let toks = lex(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let t = parse_term_tokens(&mut cur, sig)?;
    cur.expect_end()?;
    infer_type(&t, sig)?;
    Ok(t)
}

/// Token-level entry point shared with the theory parser. Does not
/// typecheck; callers do.
pub(crate) fn parse_term_tokens(cur: &mut Cursor, sig: &Signature) -> Result<Term> {
    parse_comp(cur, sig)
}

fn parse_comp(cur: &mut Cursor, sig: &Signature) -> Result<Term> {
    let lhs = parse_tens(cur, sig)?;
    if cur.eat(&Tok::Dot) {
        let rhs = parse_comp(cur, sig)?;
        Ok(Term::comp(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_tens(cur: &mut Cursor, sig: &Signature) -> Result<Term> {
    let mut acc = parse_homt(cur, sig)?;
    while cur.eat(&Tok::Star) {
        let rhs = parse_homt(cur, sig)?;
        acc = Term::tensor(acc, rhs);
    }
    Ok(acc)
}

fn parse_homt(cur: &mut Cursor, sig: &Signature) -> Result<Term> {
    let lhs = parse_prim(cur, sig)?;
    if cur.eat(&Tok::Lolli) {
        let rhs = parse_prim(cur, sig)?;
        Ok(Term::hom(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_prim(cur: &mut Cursor, sig: &Signature) -> Result<Term> {
    match cur.peek() {
        Some(Tok::LParen) => {
            cur.next();
            let t = parse_term_tokens(cur, sig)?;
            cur.expect(&Tok::RParen)?;
            Ok(t)
        }
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            cur.next();
            match name.as_str() {
                "id" => Ok(Term::Id(parse_fatom(cur, sig)?)),
                "sym" => {
                    let a = parse_fatom(cur, sig)?;
                    let b = parse_fatom(cur, sig)?;
                    Ok(Term::Sym(a, b))
                }
                "assoc" => {
                    let a = parse_fatom(cur, sig)?;
                    let b = parse_fatom(cur, sig)?;
                    let c = parse_fatom(cur, sig)?;
                    Ok(Term::Assoc(a, b, c))
                }
                "assoc'" => {
                    let a = parse_fatom(cur, sig)?;
                    let b = parse_fatom(cur, sig)?;
                    let c = parse_fatom(cur, sig)?;
                    Ok(Term::AssocInv(a, b, c))
                }
                "lunit" => Ok(Term::Lunit(parse_fatom(cur, sig)?)),
                "lunit'" => Ok(Term::LunitInv(parse_fatom(cur, sig)?)),
                "runit" => Ok(Term::Runit(parse_fatom(cur, sig)?)),
                "runit'" => Ok(Term::RunitInv(parse_fatom(cur, sig)?)),
                "eval" => {
                    let a = parse_fatom(cur, sig)?;
                    let b = parse_fatom(cur, sig)?;
                    Ok(Term::Eval(a, b))
                }
                "coeval" => {
                    let a = parse_fatom(cur, sig)?;
                    let b = parse_fatom(cur, sig)?;
                    Ok(Term::Coeval(a, b))
                }
                _ => {
                    if sig.op(&name).is_none() {
                        return Err(Error::UnknownOp(name));
                    }
                    Ok(Term::Gen(name))
                }
            }
        }
        _ => Err(cur.error("expected a term".into())),
    }
}

/// An atomic-or-parenthesized formula argument of a structural constant.
fn parse_fatom(cur: &mut Cursor, sig: &Signature) -> Result<Formula> {
    crate::formula::parse_formula_atom(cur, Some(sig.sorts()))
}

fn fmt_fatom(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Atom(_) | Formula::Unit => write!(out, "{f}"),
        _ => write!(out, "({f})"),
    }
}

impl Term {
    // levels: 0 comp, 1 tens, 2 hom, 3 prim
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        let wrap = |needed: u8| level > needed;
        match self {
            Term::Gen(name) => write!(f, "{name}"),
            Term::Comp(after, before) => {
                if wrap(0) {
                    write!(f, "(")?;
                }
                after.fmt_prec(f, 1)?;
                write!(f, " . ")?;
                before.fmt_prec(f, 0)?;
                if wrap(0) {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Tensor(l, r) => {
                if wrap(1) {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, 1)?;
                write!(f, " * ")?;
                r.fmt_prec(f, 2)?;
                if wrap(1) {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Hom(l, r) => {
                if wrap(2) {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, 3)?;
                write!(f, " -o ")?;
                r.fmt_prec(f, 3)?;
                if wrap(2) {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Id(a) => {
                write!(f, "id ")?;
                fmt_fatom(a, f)
            }
            Term::Assoc(a, b, c) => fmt_structural(f, "assoc", &[a, b, c]),
            Term::AssocInv(a, b, c) => fmt_structural(f, "assoc'", &[a, b, c]),
            Term::Lunit(a) => fmt_structural(f, "lunit", &[a]),
            Term::LunitInv(a) => fmt_structural(f, "lunit'", &[a]),
            Term::Runit(a) => fmt_structural(f, "runit", &[a]),
            Term::RunitInv(a) => fmt_structural(f, "runit'", &[a]),
            Term::Sym(a, b) => fmt_structural(f, "sym", &[a, b]),
            Term::Eval(a, b) => fmt_structural(f, "eval", &[a, b]),
            Term::Coeval(a, b) => fmt_structural(f, "coeval", &[a, b]),
        }
    }
}

fn fmt_structural(f: &mut fmt::Formatter<'_>, name: &str, args: &[&Formula]) -> fmt::Result {
    write!(f, "{name}")?;
    for a in args {
        write!(f, " ")?;
        fmt_fatom(a, f)?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
