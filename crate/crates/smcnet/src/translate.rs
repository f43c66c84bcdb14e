//! Translation of derived terms into nets.
//!
//! Generators become single-occurrence supports wired to their type;
//! structural constants become support-free permutation nets (plus a unit
//! attachment for the unitors); composition, tensor and identities map to
//! the corresponding net operations; `f -o g` is compiled away through
//! evaluation and currying.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Dir, Formula, Path, Polarity};
use crate::prenet::{Net, PortRef, Region, SupportEntry};
use crate::term::{infer_type, Term};
use crate::theory::Signature;

/// The net of a signature operation `name : a -> b`: support `[name]`,
/// with the domain wired to the flipped copy of `a` inside `a -o b` and
/// the `b` copy wired to the codomain.
pub fn generator_net(name: &str, sig: &Signature) -> Result<Net> {
    let (a, b) = sig
        .op(name)
        .ok_or_else(|| Error::UnknownOp(name.to_string()))?;
    let entry = SupportEntry::new(name, a.clone(), b.clone());
    let mut linking = BTreeMap::new();
    for port in a.ports() {
        let sup = PortRef::sup(0, port.path.under(Dir::L));
        match port.polarity {
            Polarity::Positive => {
                linking.insert(PortRef::dom(port.path), sup);
            }
            Polarity::Negative => {
                linking.insert(sup, PortRef::dom(port.path));
            }
        }
    }
    for port in b.ports() {
        let sup = PortRef::sup(0, port.path.under(Dir::R));
        match port.polarity {
            Polarity::Positive => {
                linking.insert(sup, PortRef::cod(port.path));
            }
            Polarity::Negative => {
                linking.insert(PortRef::cod(port.path), sup);
            }
        }
    }
    Ok(Net::new_unchecked(
        a.clone(),
        b.clone(),
        vec![entry],
        linking,
    ))
}

/// Pair a domain port with a codomain port of matching label, orienting
/// the edge from the source side to the target side.
fn wire(
    linking: &mut BTreeMap<PortRef, PortRef>,
    dom_path: Path,
    polarity: Polarity,
    cod_path: Path,
) {
    match polarity {
        Polarity::Positive => {
            linking.insert(PortRef::dom(dom_path), PortRef::cod(cod_path));
        }
        Polarity::Negative => {
            linking.insert(PortRef::cod(cod_path), PortRef::dom(dom_path));
        }
    }
}

/// The net of a structural constant. Errors on any other term.
pub fn structural_net(k: &Term) -> Result<Net> {
    let mut linking = BTreeMap::new();
    match k {
        Term::Sym(a, b) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::L),
                    p.polarity,
                    p.path.under(Dir::R),
                );
            }
            for p in b.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::R),
                    p.polarity,
                    p.path.under(Dir::L),
                );
            }
        }
        Term::Assoc(a, b, c) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::L),
                    p.polarity,
                    p.path.under(Dir::L).under(Dir::L),
                );
            }
            for p in b.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::L).under(Dir::R),
                    p.polarity,
                    p.path.under(Dir::R).under(Dir::L),
                );
            }
            for p in c.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::R).under(Dir::R),
                    p.polarity,
                    p.path.under(Dir::R),
                );
            }
        }
        Term::AssocInv(a, b, c) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::L).under(Dir::L),
                    p.polarity,
                    p.path.under(Dir::L),
                );
            }
            for p in b.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::R).under(Dir::L),
                    p.polarity,
                    p.path.under(Dir::L).under(Dir::R),
                );
            }
            for p in c.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::R),
                    p.polarity,
                    p.path.under(Dir::R).under(Dir::R),
                );
            }
        }
        Term::Lunit(a) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::R),
                    p.polarity,
                    p.path.clone(),
                );
            }
        }
        Term::Runit(a) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.under(Dir::L),
                    p.polarity,
                    p.path.clone(),
                );
            }
        }
        Term::LunitInv(a) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.clone(),
                    p.polarity,
                    p.path.under(Dir::R),
                );
            }
        }
        Term::RunitInv(a) => {
            for p in a.ports() {
                wire(
                    &mut linking,
                    p.path.clone(),
                    p.polarity,
                    p.path.under(Dir::L),
                );
            }
        }
        Term::Eval(a, b) => {
            // inner copy of a sits flipped inside (a -o b); pair it with
            // the outer copy, and the inner b with the codomain
            for p in a.ports() {
                let outer = p.path.under(Dir::R);
                let inner = p.path.under(Dir::L).under(Dir::L);
                match p.polarity {
                    Polarity::Positive => {
                        linking.insert(PortRef::dom(outer), PortRef::dom(inner));
                    }
                    Polarity::Negative => {
                        linking.insert(PortRef::dom(inner), PortRef::dom(outer));
                    }
                }
            }
            for p in b.ports() {
                let inner = p.path.under(Dir::R).under(Dir::L);
                match p.polarity {
                    Polarity::Positive => {
                        linking.insert(PortRef::dom(inner), PortRef::cod(p.path));
                    }
                    Polarity::Negative => {
                        linking.insert(PortRef::cod(p.path), PortRef::dom(inner));
                    }
                }
            }
        }
        Term::Coeval(a, b) => {
            // a -> b -o (a * b): the domain meets its copy inside the
            // codomain; the two b copies of the codomain meet each other
            for p in a.ports() {
                let inner = p.path.under(Dir::L).under(Dir::R);
                match p.polarity {
                    Polarity::Positive => {
                        linking.insert(PortRef::dom(p.path.clone()), PortRef::cod(inner));
                    }
                    Polarity::Negative => {
                        linking.insert(PortRef::cod(inner), PortRef::dom(p.path.clone()));
                    }
                }
            }
            for p in b.ports() {
                let antecedent = p.path.under(Dir::L);
                let inner = p.path.under(Dir::R).under(Dir::R);
                match p.polarity {
                    Polarity::Positive => {
                        linking.insert(PortRef::cod(antecedent), PortRef::cod(inner));
                    }
                    Polarity::Negative => {
                        linking.insert(PortRef::cod(inner), PortRef::cod(antecedent));
                    }
                }
            }
        }
        other => return Err(Error::NotStructural(other.to_string())),
    }

    let sig = Signature::new();
    let (dom, cod) = infer_type(k, &sig)?;
    let net = Net::new_unchecked(dom, cod, Vec::new(), linking);
    match k {
        Term::Lunit(_) => attach_orphan_unit(net, Path::root().child(Dir::L)),
        Term::Runit(_) => attach_orphan_unit(net, Path::root().child(Dir::R)),
        _ => Ok(net),
    }
}

/// Attach the unitor's dangling unit leaf of the domain to the first
/// target-side port, scanning the codomain left to right, then the
/// domain, then the support, that keeps the net correct.
fn attach_orphan_unit(net: Net, orphan: Path) -> Result<Net> {
    let source = PortRef::dom(orphan);
    let mut candidates: Vec<PortRef> = Vec::new();
    let mut dom_side = Vec::new();
    let mut sup_side = Vec::new();
    for (r, _) in net.target_ports() {
        match r.region {
            Region::Cod => candidates.push(r),
            Region::Dom => dom_side.push(r),
            Region::Sup(_) => sup_side.push(r),
        }
    }
    candidates.extend(dom_side);
    candidates.extend(sup_side);
    let checker = crate::correctness::NetChecker::new(&net);
    for target in candidates {
        let mut linking = net.linking().clone();
        linking.insert(source.clone(), target);
        if checker.is_correct(&linking) {
            return Ok(net.with_linking(linking));
        }
    }
    unreachable!("a correct unit attachment always exists for a unitor")
}

/// Translate a well-typed term to a net. Structurally recursive; the
/// resulting net's domain and codomain equal the term's inferred type.
pub fn translate(t: &Term, sig: &Signature) -> Result<Net> {
    match t {
        Term::Gen(name) => generator_net(name, sig),
        Term::Id(a) => Ok(Net::identity(a)),
        Term::Comp(after, before) => {
            let nf = translate(before, sig)?;
            let ng = translate(after, sig)?;
            nf.compose(&ng)
        }
        Term::Tensor(f, g) => Ok(translate(f, sig)?.tensor(&translate(g, sig)?)),
        Term::Hom(f, g) => {
            // f : a -> b, g : c -> d becomes
            // curry(g . eval b c . (id (b -o c) * f)) : (b -o c) -> (a -o d)
            let (_, b) = infer_type(f, sig)?;
            let (c, _) = infer_type(g, sig)?;
            let nf = translate(f, sig)?;
            let ng = translate(g, sig)?;
            let id_hom = Net::identity(&Formula::hom(b.clone(), c.clone()));
            let ev = structural_net(&Term::Eval(b, c))?;
            id_hom.tensor(&nf).compose(&ev)?.compose(&ng)?.curry()
        }
        structural => structural_net(structural),
    }
}
