//! Signatures (sorts plus arity-typed operations), the typing function on
//! operation lists, and the line-oriented theory file format:
//!
//! ```text
//! sort IDENT
//! op IDENT : formula -> formula
//! eq IDENT : term = term
//! # comment
//! ```
//!
//! Sorts and operations must be declared before use. Every equation is
//! named and both sides must have the same source and target formulas.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::{parse_hom, Formula};
use crate::lex::{lex, Cursor, Tok};
use crate::term::{infer_type, parse_term_tokens, Term, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    sorts: BTreeSet<String>,
    ops: BTreeMap<String, (Formula, Formula)>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_sort(&mut self, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        if RESERVED.contains(&name.as_str()) {
            return Err(Error::ReservedName(name));
        }
        if !self.sorts.insert(name.clone()) {
            return Err(Error::DuplicateSort(name));
        }
        Ok(())
    }

    pub fn add_op(
        &mut self,
        name: impl Into<String>,
        source: Formula,
        target: Formula,
    ) -> Result<()> {
        let name = name.into();
        if RESERVED.contains(&name.as_str()) {
            return Err(Error::ReservedName(name));
        }
        for f in [&source, &target] {
            if let Some(unknown) = f.atoms().iter().find(|a| !self.sorts.contains(*a)) {
                return Err(Error::UnknownSort(unknown.clone()));
            }
        }
        if self.ops.contains_key(&name) {
            return Err(Error::DuplicateOp(name));
        }
        self.ops.insert(name, (source, target));
        Ok(())
    }

    pub fn sorts(&self) -> &BTreeSet<String> {
        &self.sorts
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, &Formula, &Formula)> {
        self.ops.iter().map(|(n, (s, t))| (n.as_str(), s, t))
    }

    pub fn op(&self, name: &str) -> Option<(&Formula, &Formula)> {
        self.ops.get(name).map(|(s, t)| (s, t))
    }

    /// `ty(op) = source -o target`.
    pub fn ty_of(&self, name: &str) -> Result<Formula> {
        let (s, t) = self.op(name).ok_or_else(|| Error::UnknownOp(name.into()))?;
        Ok(Formula::hom(s.clone(), t.clone()))
    }

    pub fn parse_formula(&self, text: &str) -> Result<Formula> {
        crate::formula::parse_formula(text, &self.sorts)
    }
}

/// The type of a list of operations: `ty() = I`, `ty(a) = s(a) -o t(a)`,
/// and `ty(a1..an) = ty(a1..an-1) * ty(an)` for longer lists.
pub fn ty<S: AsRef<str>>(gamma: &[S], sig: &Signature) -> Result<Formula> {
    let mut acc: Option<Formula> = None;
    for name in gamma {
        let next = sig.ty_of(name.as_ref())?;
        acc = Some(match acc {
            None => next,
            Some(prev) => Formula::tensor(prev, next),
        });
    }
    Ok(acc.unwrap_or(Formula::Unit))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub signature: Signature,
    pub equations: Vec<Equation>,
}

impl Theory {
    pub fn equation(&self, name: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == name)
    }
}

/// Parse a theory file. Declarations are processed top to bottom; each
/// equation is typechecked and both sides must agree on source and target.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut sig = Signature::new();
    let mut equations: Vec<Equation> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex(raw_line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = raw_line.chars().count() + 1;
        let mut cur = Cursor::new(&toks, line_no, end_col);
        let head = match cur.next() {
            Some(s) => s.tok.clone(),
            None => continue,
        };
        match head {
            Tok::Ident(kw) if kw == "sort" => {
                let name = expect_ident(&mut cur, "sort name")?;
                cur.expect_end()?;
                sig.add_sort(name)?;
            }
            Tok::Ident(kw) if kw == "op" => {
                let name = expect_ident(&mut cur, "operation name")?;
                cur.expect(&Tok::Colon)?;
                let source = parse_hom(&mut cur, Some(sig.sorts()))?;
                cur.expect(&Tok::Arrow)?;
                let target = parse_hom(&mut cur, Some(sig.sorts()))?;
                cur.expect_end()?;
                sig.add_op(name, source, target)?;
            }
            Tok::Ident(kw) if kw == "eq" => {
                let name = expect_ident(&mut cur, "equation name")?;
                cur.expect(&Tok::Colon)?;
                let lhs = parse_term_tokens(&mut cur, &sig)?;
                cur.expect(&Tok::Equals)?;
                let rhs = parse_term_tokens(&mut cur, &sig)?;
                cur.expect_end()?;
                let (ls, lt) = infer_type(&lhs, &sig)?;
                let (rs, rt) = infer_type(&rhs, &sig)?;
                if ls != rs || lt != rt {
                    return Err(Error::EquationTypeMismatch {
                        name,
                        lhs_src: ls,
                        lhs_tgt: lt,
                        rhs_src: rs,
                        rhs_tgt: rt,
                    });
                }
                if equations.iter().any(|e| e.name == name) {
                    return Err(Error::DuplicateEquation(name));
                }
                equations.push(Equation { name, lhs, rhs });
            }
            other => {
                return Err(Error::Syntax {
                    line: line_no,
                    col: 1,
                    msg: format!("expected `sort`, `op` or `eq`, found {}", other.describe()),
                })
            }
        }
    }

    Ok(Theory {
        signature: sig,
        equations,
    })
}

fn expect_ident(cur: &mut Cursor, what: &str) -> Result<String> {
    match cur.peek() {
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            cur.next();
            Ok(name)
        }
        _ => Err(cur.error(format!("expected {what}"))),
    }
}
