//! Types of the object language: tensor, linear implication and the unit,
//! over a set of ground sorts.
//!
//! A formula's *ports* are its leaf occurrences, addressed by the path of
//! left/right turns from the root. A port is positive when the path passes
//! into the antecedent of a `-o` an even number of times, negative
//! otherwise. The one-sided translation maps a formula into classical MLL
//! (`⊗`, `⅋`, `1`, `⊥`, signed atoms); each MLL leaf keeps the path of the
//! port it came from, so graphs built over the one-sided trees can be glued
//! back to the ports of the original formula.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lex::{lex, Cursor, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Unit,
    Tensor(Box<Formula>, Box<Formula>),
    Hom(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn tensor(l: Formula, r: Formula) -> Formula {
        Formula::Tensor(Box::new(l), Box::new(r))
    }

    pub fn hom(a: Formula, b: Formula) -> Formula {
        Formula::Hom(Box::new(a), Box::new(b))
    }

    /// All ports in left-to-right leaf order.
    pub fn ports(&self) -> Vec<Port> {
        let mut out = Vec::new();
        self.collect_ports(Path::root(), 0, &mut out);
        out
    }

    fn collect_ports(&self, path: Path, crossings: usize, out: &mut Vec<Port>) {
        match self {
            Formula::Atom(x) => out.push(Port {
                path,
                label: PortLabel::Sort(x.clone()),
                polarity: Polarity::from_crossings(crossings),
            }),
            Formula::Unit => out.push(Port {
                path,
                label: PortLabel::Unit,
                polarity: Polarity::from_crossings(crossings),
            }),
            Formula::Tensor(l, r) => {
                l.collect_ports(path.child(Dir::L), crossings, out);
                r.collect_ports(path.child(Dir::R), crossings, out);
            }
            Formula::Hom(a, b) => {
                a.collect_ports(path.child(Dir::L), crossings + 1, out);
                b.collect_ports(path.child(Dir::R), crossings, out);
            }
        }
    }

    /// The port at `path`, if `path` addresses a leaf of this formula.
    pub fn port_at(&self, path: &Path) -> Option<Port> {
        let mut cur = self;
        let mut crossings = 0;
        for (i, d) in path.0.iter().enumerate() {
            match (cur, d) {
                (Formula::Tensor(l, _), Dir::L) => cur = l,
                (Formula::Tensor(_, r), Dir::R) => cur = r,
                (Formula::Hom(a, _), Dir::L) => {
                    crossings += 1;
                    cur = a;
                }
                (Formula::Hom(_, b), Dir::R) => cur = b,
                _ => {
                    let _ = i;
                    return None;
                }
            }
        }
        let label = match cur {
            Formula::Atom(x) => PortLabel::Sort(x.clone()),
            Formula::Unit => PortLabel::Unit,
            _ => return None,
        };
        Some(Port {
            path: path.clone(),
            label,
            polarity: Polarity::from_crossings(crossings),
        })
    }

    /// One-sided classical MLL form: `f'` when `negated` is false, its De
    /// Morgan dual when true. Leaf order and leaf paths are preserved.
    pub fn to_one_sided(&self, negated: bool) -> MllFormula {
        self.one_sided_at(Path::root(), negated)
    }

    fn one_sided_at(&self, path: Path, negated: bool) -> MllFormula {
        match self {
            Formula::Atom(x) => {
                if negated {
                    MllFormula::NegAtom(x.clone(), path)
                } else {
                    MllFormula::PosAtom(x.clone(), path)
                }
            }
            Formula::Unit => {
                if negated {
                    MllFormula::Bot(path)
                } else {
                    MllFormula::One(path)
                }
            }
            Formula::Tensor(l, r) => {
                let lm = l.one_sided_at(path.child(Dir::L), negated);
                let rm = r.one_sided_at(path.child(Dir::R), negated);
                if negated {
                    MllFormula::Par(Box::new(lm), Box::new(rm))
                } else {
                    MllFormula::Tensor(Box::new(lm), Box::new(rm))
                }
            }
            // (a -o b)' = ¬a' ⅋ b', and dually for the negated form.
            Formula::Hom(a, b) => {
                let am = a.one_sided_at(path.child(Dir::L), !negated);
                let bm = b.one_sided_at(path.child(Dir::R), negated);
                if negated {
                    MllFormula::Tensor(Box::new(am), Box::new(bm))
                } else {
                    MllFormula::Par(Box::new(am), Box::new(bm))
                }
            }
        }
    }

    /// Sort names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(x) => {
                out.insert(x.clone());
            }
            Formula::Unit => {}
            Formula::Tensor(l, r) | Formula::Hom(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        match self {
            Formula::Atom(x) => write!(f, "{x}"),
            Formula::Unit => write!(f, "I"),
            Formula::Tensor(l, r) => {
                let wrap = level > 1;
                if wrap {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, 1)?;
                write!(f, " * ")?;
                r.fmt_prec(f, 2)?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::Hom(a, b) => {
                let wrap = level > 0;
                if wrap {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " -o ")?;
                b.fmt_prec(f, 0)?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

/// Root-to-leaf address inside a formula. The root is the empty path;
/// displayed as a string of `L`/`R` turns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(Vec<Dir>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, d: Dir) -> Path {
        let mut v = self.0.clone();
        v.push(d);
        Path(v)
    }

    /// Prepend one step, reparenting the path under `d`.
    pub fn under(&self, d: Dir) -> Path {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(d);
        v.extend_from_slice(&self.0);
        Path(v)
    }

    pub fn steps(&self) -> &[Dir] {
        &self.0
    }

    pub fn split_first(&self) -> Option<(Dir, Path)> {
        self.0
            .split_first()
            .map(|(d, rest)| (*d, Path(rest.to_vec())))
    }

    pub fn parse(text: &str) -> Result<Path> {
        let mut v = Vec::new();
        for c in text.chars() {
            match c {
                'L' => v.push(Dir::L),
                'R' => v.push(Dir::R),
                other => {
                    return Err(Error::Json(format!(
                        "invalid path character `{other}` (expected L or R)"
                    )))
                }
            }
        }
        Ok(Path(v))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            match d {
                Dir::L => write!(f, "L")?,
                Dir::R => write!(f, "R")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    fn from_crossings(n: usize) -> Polarity {
        if n.is_multiple_of(2) {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PortLabel {
    Sort(String),
    Unit,
}

impl fmt::Display for PortLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortLabel::Sort(x) => write!(f, "{x}"),
            PortLabel::Unit => write!(f, "I"),
        }
    }
}

/// A leaf occurrence of a formula together with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Port {
    pub path: Path,
    pub label: PortLabel,
    pub polarity: Polarity,
}

/// One-sided classical MLL formula. Leaves carry the path of the port of
/// the source formula they correspond to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MllFormula {
    PosAtom(String, Path),
    NegAtom(String, Path),
    One(Path),
    Bot(Path),
    Tensor(Box<MllFormula>, Box<MllFormula>),
    Par(Box<MllFormula>, Box<MllFormula>),
}

impl MllFormula {
    pub fn leaves(&self) -> Vec<&MllFormula> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a MllFormula>) {
        match self {
            MllFormula::Tensor(l, r) | MllFormula::Par(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            leaf => out.push(leaf),
        }
    }

    pub fn par_count(&self) -> usize {
        match self {
            MllFormula::Par(l, r) => 1 + l.par_count() + r.par_count(),
            MllFormula::Tensor(l, r) => l.par_count() + r.par_count(),
            _ => 0,
        }
    }
}

/// Parse a formula over the declared sorts.
///
/// Grammar: `formula := hom ; hom := tens ("-o" hom)? ; tens := atom ("*"
/// atom)* ; atom := IDENT | "I" | "(" formula ")"`. `-o` is right
/// associative and binds looser than `*`.
pub fn parse_formula(text: &str, sorts: &BTreeSet<String>) -> Result<Formula> {
    let toks = lex(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let f = parse_hom(&mut cur, Some(sorts))?;
    cur.expect_end()?;
    Ok(f)
}

/// Parse a formula treating every identifier as a sort. Used when loading
/// standalone net files that carry no signature.
pub fn parse_formula_free(text: &str) -> Result<Formula> {
    let toks = lex(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1);
    let f = parse_hom(&mut cur, None)?;
    cur.expect_end()?;
    Ok(f)
}

pub(crate) fn parse_hom(cur: &mut Cursor, sorts: Option<&BTreeSet<String>>) -> Result<Formula> {
    let lhs = parse_tens(cur, sorts)?;
    if cur.eat(&Tok::Lolli) {
        let rhs = parse_hom(cur, sorts)?;
        Ok(Formula::hom(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_tens(cur: &mut Cursor, sorts: Option<&BTreeSet<String>>) -> Result<Formula> {
    let mut acc = parse_formula_atom(cur, sorts)?;
    while cur.eat(&Tok::Star) {
        let rhs = parse_formula_atom(cur, sorts)?;
        acc = Formula::tensor(acc, rhs);
    }
    Ok(acc)
}

pub(crate) fn parse_formula_atom(
    cur: &mut Cursor,
    sorts: Option<&BTreeSet<String>>,
) -> Result<Formula> {
    match cur.peek() {
        Some(Tok::Ident(name)) if name == "I" => {
            cur.next();
            Ok(Formula::Unit)
        }
        Some(Tok::Ident(name)) => {
            let name = name.clone();
            if let Some(sorts) = sorts {
                if !sorts.contains(&name) {
                    return Err(Error::UnknownSort(name));
                }
            }
            cur.next();
            Ok(Formula::Atom(name))
        }
        Some(Tok::LParen) => {
            cur.next();
            let f = parse_hom(cur, sorts)?;
            cur.expect(&Tok::RParen)?;
            Ok(f)
        }
        _ => Err(cur.error("expected a formula".into())),
    }
}
