//! Seeded random generation of formulas and well-typed terms. Backs the
//! property and acceptance suites; all generators are deterministic for a
//! fixed seed.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::formula::Formula;
use crate::term::{infer_type, Term};
use crate::theory::Signature;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random formula with at most `max_leaves` leaves over the given sorts.
pub fn random_formula(rng: &mut StdRng, sorts: &[&str], max_leaves: usize) -> Formula {
    if max_leaves <= 1 || rng.random_range(0..5) == 0 {
        if sorts.is_empty() || rng.random_range(0..4) == 0 {
            Formula::Unit
        } else {
            Formula::atom(sorts[rng.random_range(0..sorts.len())])
        }
    } else {
        let left = rng.random_range(1..max_leaves);
        let l = random_formula(rng, sorts, left);
        let r = random_formula(rng, sorts, max_leaves - left);
        if rng.random_bool(0.5) {
            Formula::tensor(l, r)
        } else {
            Formula::hom(l, r)
        }
    }
}

/// A random well-typed term with the given domain. `gens` bounds how many
/// generator occurrences may still be spent.
pub fn random_term_with_dom(
    rng: &mut StdRng,
    sig: &Signature,
    dom: &Formula,
    depth: usize,
    gens: &mut usize,
) -> Term {
    if depth > 0 {
        match rng.random_range(0..4) {
            // compose: continue from wherever the first stage lands
            0 => {
                let first = random_term_with_dom(rng, sig, dom, depth - 1, gens);
                let (_, mid) = infer_type(&first, sig).expect("generated terms are well typed");
                let second = random_term_with_dom(rng, sig, &mid, depth - 1, gens);
                return Term::comp(second, first);
            }
            1 => {
                if let Formula::Tensor(l, r) = dom {
                    let f = random_term_with_dom(rng, sig, l, depth - 1, gens);
                    let g = random_term_with_dom(rng, sig, r, depth - 1, gens);
                    return Term::tensor(f, g);
                }
            }
            // f -o g from a hom domain b -o c: f into b, g from c
            2 => {
                if let Formula::Hom(b, c) = dom {
                    let g = random_term_with_dom(rng, sig, c, depth - 1, gens);
                    return Term::hom(Term::Id(b.as_ref().clone()), g);
                }
            }
            _ => {}
        }
    }

    let sorts: Vec<&str> = sig.sorts().iter().map(|s| s.as_str()).collect();
    // spend the generator budget eagerly whenever the domain permits
    if *gens > 0 {
        let matching: Vec<&str> = sig
            .ops()
            .filter(|(_, source, _)| *source == dom)
            .map(|(name, _, _)| name)
            .collect();
        if !matching.is_empty() && rng.random_bool(0.55) {
            *gens -= 1;
            return Term::gen(matching[rng.random_range(0..matching.len())]);
        }
    }
    let mut options: Vec<Term> = vec![Term::Id(dom.clone())];
    options.push(Term::LunitInv(dom.clone()));
    options.push(Term::RunitInv(dom.clone()));
    options.push(Term::Coeval(dom.clone(), random_formula(rng, &sorts, 2)));
    if let Formula::Tensor(l, r) = dom {
        options.push(Term::Sym(l.as_ref().clone(), r.as_ref().clone()));
        if let Formula::Tensor(rl, rr) = r.as_ref() {
            options.push(Term::Assoc(
                l.as_ref().clone(),
                rl.as_ref().clone(),
                rr.as_ref().clone(),
            ));
        }
        if let Formula::Tensor(ll, lr) = l.as_ref() {
            options.push(Term::AssocInv(
                ll.as_ref().clone(),
                lr.as_ref().clone(),
                r.as_ref().clone(),
            ));
        }
        if l.as_ref() == &Formula::Unit {
            options.push(Term::Lunit(r.as_ref().clone()));
        }
        if r.as_ref() == &Formula::Unit {
            options.push(Term::Runit(l.as_ref().clone()));
        }
        if let Formula::Hom(a, b) = l.as_ref() {
            if a.as_ref() == r.as_ref() {
                options.push(Term::Eval(a.as_ref().clone(), b.as_ref().clone()));
            }
        }
    }

    options[rng.random_range(0..options.len())].clone()
}

/// A random well-typed term over a random domain. Domains are biased
/// toward the sources of the signature's operations so that generators
/// actually occur in the sample.
pub fn random_term(rng: &mut StdRng, sig: &Signature, depth: usize, max_gens: usize) -> Term {
    let sorts: Vec<&str> = sig.sorts().iter().map(|s| s.as_str()).collect();
    let sources: Vec<Formula> = sig.ops().map(|(_, s, _)| s.clone()).collect();
    let pick_source = |rng: &mut StdRng| sources[rng.random_range(0..sources.len())].clone();
    let mut gens = max_gens;
    if sources.is_empty() {
        let dom = random_formula(rng, &sorts, 4);
        return random_term_with_dom(rng, sig, &dom, depth, &mut gens);
    }
    match rng.random_range(0..4) {
        0 => {
            let dom = random_formula(rng, &sorts, 4);
            random_term_with_dom(rng, sig, &dom, depth, &mut gens)
        }
        1 => {
            let dom = pick_source(rng);
            random_term_with_dom(rng, sig, &dom, depth, &mut gens)
        }
        // side-by-side generators, the premonoidal heart of the samples
        2 => {
            let (a, b) = (pick_source(rng), pick_source(rng));
            let inner = depth.saturating_sub(1);
            let f = random_term_with_dom(rng, sig, &a, inner, &mut gens);
            let g = random_term_with_dom(rng, sig, &b, inner, &mut gens);
            Term::tensor(f, g)
        }
        _ => {
            let dom = Formula::tensor(pick_source(rng), random_formula(rng, &sorts, 2));
            random_term_with_dom(rng, sig, &dom, depth, &mut gens)
        }
    }
}
