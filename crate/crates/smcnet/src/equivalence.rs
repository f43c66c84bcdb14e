//! Net equality modulo rewiring, and bounded equality of terms modulo a
//! theory's equations.
//!
//! A rewiring move retargets one edge whose source is a unit port,
//! provided the result stays correct. Equality of nets is reachability
//! under such moves, compared modulo support isomorphism at every step;
//! the reachable set is finite, so the search is exhaustive rather than
//! normalizing. Term equality modulo equations is a bidirectional
//! breadth-first search over single-position syntactic replacements,
//! meeting when two translations are equal as nets, so structural
//! congruence is absorbed by the net semantics. An `Equal` verdict is
//! always trustworthy; `NotFoundWithinBound` is not a disproof.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::correctness::{is_correct, NetChecker};
use crate::error::{Error, Result};
use crate::formula::PortLabel;
use crate::prenet::Net;
use crate::term::{infer_type, Term};
use crate::theory::Theory;
use crate::translate::translate;

/// All correct retargetings of single unit-sourced edges, excluding the
/// net itself.
pub fn rewire_moves(net: &Net) -> Result<Vec<Net>> {
    let checker = NetChecker::new(net);
    if !checker.is_correct(net.linking()) {
        return Err(Error::NotCorrect);
    }
    Ok(moves_unchecked(net, &checker))
}

/// Rewiring moves of an already-correct net. All members of an orbit
/// share their shape, so the caller passes one checker for all of them.
fn moves_unchecked(net: &Net, checker: &NetChecker) -> Vec<Net> {
    let targets: Vec<_> = net.target_ports().into_iter().map(|(r, _)| r).collect();
    let mut out = Vec::new();
    for (s, t) in net.linking() {
        let (label, _, _) = net.port_info(s).expect("linking source is a port");
        if label != PortLabel::Unit {
            continue;
        }
        for candidate in &targets {
            if candidate == t {
                continue;
            }
            let mut linking = net.linking().clone();
            linking.insert(s.clone(), candidate.clone());
            if checker.is_correct(&linking) {
                out.push(net.with_linking(linking));
            }
        }
    }
    out
}

/// Breadth-first exploration of a net's rewiring orbit, one representative
/// per support-isomorphism class. The first element represents the input.
pub fn rewiring_orbit(net: &Net) -> Result<Vec<Net>> {
    let checker = NetChecker::new(net);
    if !checker.is_correct(net.linking()) {
        return Err(Error::NotCorrect);
    }
    let mut reps = vec![net.clone()];
    let mut visited: HashSet<String> = [net.canonical_key()].into();
    let mut queue: VecDeque<Net> = [net.clone()].into();
    while let Some(cur) = queue.pop_front() {
        for moved in moves_unchecked(&cur, &checker) {
            let key = moved.canonical_key();
            if visited.insert(key) {
                reps.push(moved.clone());
                queue.push_back(moved);
            }
        }
    }
    Ok(reps)
}

/// Equality in the quotient category: same arity, and the two nets are
/// connected by rewiring moves up to support isomorphism.
pub fn nets_equal(f: &Net, g: &Net) -> Result<bool> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::ArityMismatch {
            f_src: f.dom().clone(),
            f_tgt: f.cod().clone(),
            g_src: g.dom().clone(),
            g_tgt: g.cod().clone(),
        });
    }
    let checker = NetChecker::new(f);
    if !checker.is_correct(f.linking()) || !is_correct(g) {
        return Err(Error::NotCorrect);
    }
    // rewiring never touches the support
    let mut fs: Vec<_> = f.support().to_vec();
    let mut gs: Vec<_> = g.support().to_vec();
    fs.sort();
    gs.sort();
    if fs != gs {
        return Ok(false);
    }
    let goal = g.canonical_key();
    let start = f.canonical_key();
    if start == goal {
        return Ok(true);
    }
    let mut visited: HashSet<String> = [start].into();
    let mut queue: VecDeque<Net> = [f.clone()].into();
    while let Some(cur) = queue.pop_front() {
        for moved in moves_unchecked(&cur, &checker) {
            let key = moved.canonical_key();
            if key == goal {
                return Ok(true);
            }
            if visited.insert(key) {
                queue.push_back(moved);
            }
        }
    }
    Ok(false)
}

/// The least canonical key over the whole rewiring orbit: two correct nets
/// are `nets_equal` exactly when their orbit keys agree.
pub fn orbit_key(net: &Net) -> Result<String> {
    let orbit = rewiring_orbit(net)?;
    Ok(orbit
        .iter()
        .map(|n| n.canonical_key())
        .min()
        .expect("orbit contains the net itself"))
}

/// Orbit key with a cache keyed by the support-iso canonical form:
/// isomorphic nets share their whole orbit.
fn orbit_key_cached(net: &Net, cache: &mut HashMap<String, String>) -> Result<String> {
    let canon = net.canonical_key();
    if let Some(key) = cache.get(&canon) {
        return Ok(key.clone());
    }
    let orbit = rewiring_orbit(net)?;
    let key = orbit
        .iter()
        .map(|n| n.canonical_key())
        .min()
        .expect("orbit contains the net itself");
    // every member of the orbit resolves to the same key
    for member in &orbit {
        cache.insert(member.canonical_key(), key.clone());
    }
    Ok(key)
}

/// One applied equation in a successful search trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub equation: String,
    /// Applied left-to-right when true.
    pub forward: bool,
}

impl RewriteStep {
    fn flipped(&self) -> RewriteStep {
        RewriteStep {
            equation: self.equation.clone(),
            forward: !self.forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Vec<RewriteStep>),
    NotFoundWithinBound,
}

/// All terms obtained from `t` by replacing one occurrence of `from` with
/// `to`, in root-first, left-to-right position order.
fn rewritten(t: &Term, from: &Term, to: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    if t == from {
        out.push(to.clone());
    }
    match t {
        Term::Comp(a, b) => {
            for a2 in rewritten(a, from, to) {
                out.push(Term::Comp(Box::new(a2), b.clone()));
            }
            for b2 in rewritten(b, from, to) {
                out.push(Term::Comp(a.clone(), Box::new(b2)));
            }
        }
        Term::Tensor(a, b) => {
            for a2 in rewritten(a, from, to) {
                out.push(Term::Tensor(Box::new(a2), b.clone()));
            }
            for b2 in rewritten(b, from, to) {
                out.push(Term::Tensor(a.clone(), Box::new(b2)));
            }
        }
        Term::Hom(a, b) => {
            for a2 in rewritten(a, from, to) {
                out.push(Term::Hom(Box::new(a2), b.clone()));
            }
            for b2 in rewritten(b, from, to) {
                out.push(Term::Hom(a.clone(), Box::new(b2)));
            }
        }
        _ => {}
    }
    out
}

struct SearchSide {
    frontier: Vec<(Term, Vec<RewriteStep>)>,
    seen_terms: HashSet<Term>,
    /// orbit key of the translated net -> trace that first reached it
    keys: HashMap<String, Vec<RewriteStep>>,
    expanded: usize,
}

impl SearchSide {
    fn new(term: Term, key: String) -> SearchSide {
        SearchSide {
            frontier: vec![(term.clone(), Vec::new())],
            seen_terms: [term].into(),
            keys: [(key, Vec::new())].into(),
            expanded: 1,
        }
    }
}

/// Bounded bidirectional search for equality of two terms modulo the
/// theory's equations: at most `depth` single-position rewrites in total,
/// with the two ends meeting when their translations are equal nets.
/// Sound but not complete: a miss within the bound proves nothing.
pub fn theory_equal_bounded(t1: &Term, t2: &Term, th: &Theory, depth: usize) -> Result<Verdict> {
    let sig = &th.signature;
    let (s1, tg1) = infer_type(t1, sig)?;
    let (s2, tg2) = infer_type(t2, sig)?;
    if s1 != s2 || tg1 != tg2 {
        return Err(Error::ArityMismatch {
            f_src: s1,
            f_tgt: tg1,
            g_src: s2,
            g_tgt: tg2,
        });
    }
    for eq in &th.equations {
        let (ls, lt) = infer_type(&eq.lhs, sig)?;
        let (rs, rt) = infer_type(&eq.rhs, sig)?;
        if ls != rs || lt != rt {
            return Err(Error::EquationTypeMismatch {
                name: eq.name.clone(),
                lhs_src: ls,
                lhs_tgt: lt,
                rhs_src: rs,
                rhs_tgt: rt,
            });
        }
    }

    let mut orbit_cache: HashMap<String, String> = HashMap::new();
    let key1 = orbit_key_cached(&translate(t1, sig)?, &mut orbit_cache)?;
    let key2 = orbit_key_cached(&translate(t2, sig)?, &mut orbit_cache)?;
    if key1 == key2 {
        return Ok(Verdict::Equal(Vec::new()));
    }

    let mut side_a = SearchSide::new(t1.clone(), key1);
    let mut side_b = SearchSide::new(t2.clone(), key2);
    // depth of each side's frontier; a met pair at depths (da, db) is a
    // derivation of length da + db
    let mut depth_a = 0;
    let mut depth_b = 0;

    while depth_a + depth_b < depth && (!side_a.frontier.is_empty() || !side_b.frontier.is_empty())
    {
        let expand_a = if side_a.frontier.is_empty() {
            false
        } else if side_b.frontier.is_empty() {
            true
        } else {
            side_a.expanded <= side_b.expanded
        };
        let (this, other) = if expand_a {
            (&mut side_a, &side_b)
        } else {
            (&mut side_b, &side_a)
        };

        let mut next = Vec::new();
        for (term, trace) in std::mem::take(&mut this.frontier) {
            for eq in &th.equations {
                for (from, to, forward) in [(&eq.lhs, &eq.rhs, true), (&eq.rhs, &eq.lhs, false)] {
                    for candidate in rewritten(&term, from, to) {
                        if !this.seen_terms.insert(candidate.clone()) {
                            continue;
                        }
                        // replacing a subterm by an equal-arity term keeps
                        // the whole term well typed; re-infer to be sure
                        let (cs, ct) = infer_type(&candidate, sig)?;
                        debug_assert!(cs == s1 && ct == tg1);
                        let key = orbit_key_cached(&translate(&candidate, sig)?, &mut orbit_cache)?;
                        let mut trace = trace.clone();
                        trace.push(RewriteStep {
                            equation: eq.name.clone(),
                            forward,
                        });
                        if let Some(other_trace) = other.keys.get(&key) {
                            let (mut full, back) = if expand_a {
                                (trace, other_trace.clone())
                            } else {
                                (other_trace.clone(), trace)
                            };
                            full.extend(back.into_iter().rev().map(|s| s.flipped()));
                            return Ok(Verdict::Equal(full));
                        }
                        this.keys.entry(key).or_insert_with(|| trace.clone());
                        this.expanded += 1;
                        next.push((candidate, trace));
                    }
                }
            }
        }
        // a round that found nothing new exhausts the side without
        // lengthening any derivation, so it costs no depth
        if !next.is_empty() {
            if expand_a {
                depth_a += 1;
            } else {
                depth_b += 1;
            }
        }
        this.frontier = next;
    }

    Ok(Verdict::NotFoundWithinBound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::term::parse_term;
    use crate::theory::parse_theory;
    use crate::translate::{generator_net, structural_net};

    const MONOID: &str = "\
sort x
op e : I -> x
op m : x * x -> x
eq assoc : (m . (m * id x)) . assoc x x x = m . (id x * m)
eq unitl : m . (e * id x) = lunit x
eq unitr : m . (id x * e) = runit x
";

    const LAMBDA: &str = "\
sort x
op lam : (x -o x) -> x
op app : x * x -> x
eq beta : app . (lam * id x) = eval x x
";

    #[test]
    fn no_moves_without_unit_edges() {
        let id = Net::identity(&Formula::atom("x"));
        assert_eq!(rewire_moves(&id).unwrap(), Vec::<Net>::new());
    }

    #[test]
    fn rewire_moves_requires_a_correct_net() {
        use crate::prenet::PortRef;
        use std::collections::BTreeMap;
        let mut linking = BTreeMap::new();
        let lr = crate::formula::Path::parse("LR").unwrap();
        let ll = crate::formula::Path::parse("LL").unwrap();
        let r = crate::formula::Path::parse("R").unwrap();
        linking.insert(PortRef::dom(lr), PortRef::dom(ll));
        linking.insert(PortRef::dom(r), PortRef::cod(crate::formula::Path::root()));
        let sorts: std::collections::BTreeSet<String> = ["x".to_string()].into_iter().collect();
        let dom = crate::formula::parse_formula("(x -o x) * x", &sorts).unwrap();
        let miswired = Net::from_parts(dom, Formula::atom("x"), Vec::new(), linking).unwrap();
        assert_eq!(rewire_moves(&miswired).unwrap_err(), Error::NotCorrect);
    }

    #[test]
    fn unit_generator_net_has_one_rewiring() {
        let th = parse_theory(MONOID).unwrap();
        let e = generator_net("e", &th.signature).unwrap();
        let moves = rewire_moves(&e).unwrap();
        assert_eq!(moves.len(), 1);
        let orbit = rewiring_orbit(&e).unwrap();
        assert_eq!(orbit.len(), 2);
        for n in &orbit {
            assert!(is_correct(n));
            assert!(nets_equal(&e, n).unwrap());
        }
    }

    #[test]
    fn lunit_net_admits_no_moves_over_an_atom() {
        let net = structural_net(&Term::Lunit(Formula::atom("x"))).unwrap();
        assert_eq!(rewire_moves(&net).unwrap().len(), 0);
    }

    #[test]
    fn nets_equal_is_reflexive() {
        let th = parse_theory(LAMBDA).unwrap();
        let t = parse_term("app . (lam * id x)", &th.signature).unwrap();
        let net = translate(&t, &th.signature).unwrap();
        assert!(nets_equal(&net, &net).unwrap());
    }

    #[test]
    fn beta_sides_differ_as_free_nets() {
        let th = parse_theory(LAMBDA).unwrap();
        let lhs = translate(
            &parse_term("app . (lam * id x)", &th.signature).unwrap(),
            &th.signature,
        )
        .unwrap();
        let rhs = translate(
            &parse_term("eval x x", &th.signature).unwrap(),
            &th.signature,
        )
        .unwrap();
        assert!(!nets_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn nets_equal_rejects_arity_mismatch() {
        let a = Net::identity(&Formula::atom("x"));
        let b = Net::identity(&Formula::Unit);
        assert!(matches!(
            nets_equal(&a, &b),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn interchange_composites_are_equal_up_to_support_iso() {
        let th =
            parse_theory("sort x\nsort y\nop alpha : x -> x * y\nop beta : y * (x -o y) -> y\n")
                .unwrap();
        let sig = &th.signature;
        let f = generator_net("alpha", sig).unwrap();
        let g = generator_net("beta", sig).unwrap();
        let id_fd = Net::identity(g.dom());
        let id_fc = Net::identity(f.cod());
        let id_gd = Net::identity(f.dom());
        let id_gc = Net::identity(g.cod());
        // (f ⊗ id) ; (id ⊗ g)  vs  (id ⊗ g) ; (f ⊗ id)
        let c1 = f.tensor(&id_fd).compose(&id_fc.tensor(&g)).unwrap();
        let c2 = id_gd.tensor(&g).compose(&f.tensor(&id_gc)).unwrap();
        assert_ne!(c1, c2);
        assert!(c1.support_iso_equal(&c2));
        assert!(nets_equal(&c1, &c2).unwrap());
        let names1: Vec<&str> = c1.support().iter().map(|e| e.name.as_str()).collect();
        let names2: Vec<&str> = c2.support().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names1, vec!["beta", "alpha"]);
        assert_eq!(names2, vec!["alpha", "beta"]);
    }

    #[test]
    fn beta_rule_found_at_depth_one() {
        let th = parse_theory(LAMBDA).unwrap();
        let lhs = parse_term("app . (lam * id x)", &th.signature).unwrap();
        let rhs = parse_term("eval x x", &th.signature).unwrap();
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 0).unwrap(),
            Verdict::NotFoundWithinBound
        );
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 1).unwrap(),
            Verdict::Equal(vec![RewriteStep {
                equation: "beta".into(),
                forward: true
            }])
        );
    }

    #[test]
    fn monoid_left_unit_found_at_depth_one() {
        let th = parse_theory(MONOID).unwrap();
        let lhs = parse_term("m . (e * id x)", &th.signature).unwrap();
        let rhs = parse_term("lunit x", &th.signature).unwrap();
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 1).unwrap(),
            Verdict::Equal(vec![RewriteStep {
                equation: "unitl".into(),
                forward: true
            }])
        );
    }

    #[test]
    fn reflexivity_at_depth_zero() {
        let th = parse_theory(LAMBDA).unwrap();
        let t = parse_term("lam", &th.signature).unwrap();
        assert_eq!(
            theory_equal_bounded(&t, &t, &th, 0).unwrap(),
            Verdict::Equal(Vec::new())
        );
    }

    #[test]
    fn rewrite_applies_at_subterm_positions() {
        let th = parse_theory(LAMBDA).unwrap();
        // embed the redex under a tensor and a composition
        let lhs = parse_term("runit x . ((app . (lam * id x)) * id I)", &th.signature).unwrap();
        let rhs = parse_term("runit x . (eval x x * id I)", &th.signature).unwrap();
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 1).unwrap(),
            Verdict::Equal(vec![RewriteStep {
                equation: "beta".into(),
                forward: true
            }])
        );
    }

    #[test]
    fn two_step_derivation_meets_in_the_middle() {
        // both sides need one unitl application before the nets agree:
        // m . (e * (m . (e * id x)))  ~  m . (e * lunit x)
        //                             ~  (m . (e * id x)) . (id I * lunit x)
        //                             ~  lunit x . (id I * lunit x)
        let th = parse_theory(MONOID).unwrap();
        let lhs = parse_term("m . (e * (m . (e * id x)))", &th.signature).unwrap();
        let rhs = parse_term("lunit x . (id I * lunit x)", &th.signature).unwrap();
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 1).unwrap(),
            Verdict::NotFoundWithinBound
        );
        let verdict = theory_equal_bounded(&lhs, &rhs, &th, 2).unwrap();
        assert_eq!(
            verdict,
            Verdict::Equal(vec![
                RewriteStep {
                    equation: "unitl".into(),
                    forward: true
                },
                RewriteStep {
                    equation: "unitl".into(),
                    forward: true
                },
            ])
        );
    }

    #[test]
    fn three_step_derivation_survives_syntactic_dead_ends() {
        // after one forward step the left side has no literal redex left;
        // the remaining distance is covered from the right side, with the
        // nets identifying the differently factored composites
        let th = parse_theory(MONOID).unwrap();
        let lhs = parse_term("m . (e * (m . (e * (m . (e * id x)))))", &th.signature).unwrap();
        let rhs = parse_term(
            "lunit x . (id I * (lunit x . (id I * lunit x)))",
            &th.signature,
        )
        .unwrap();
        assert_eq!(
            theory_equal_bounded(&lhs, &rhs, &th, 2).unwrap(),
            Verdict::NotFoundWithinBound
        );
        let verdict = theory_equal_bounded(&lhs, &rhs, &th, 3).unwrap();
        let expected = vec![
            RewriteStep {
                equation: "unitl".into(),
                forward: true
            };
            3
        ];
        assert_eq!(verdict, Verdict::Equal(expected));
    }

    #[test]
    fn backward_steps_are_found_and_flagged() {
        let th = parse_theory(LAMBDA).unwrap();
        let lhs = parse_term("eval x x", &th.signature).unwrap();
        let rhs = parse_term("app . (lam * id x)", &th.signature).unwrap();
        let verdict = theory_equal_bounded(&lhs, &rhs, &th, 1).unwrap();
        assert_eq!(
            verdict,
            Verdict::Equal(vec![RewriteStep {
                equation: "beta".into(),
                forward: false
            }])
        );
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let th = parse_theory(LAMBDA).unwrap();
        let a = parse_term("lam", &th.signature).unwrap();
        let b = parse_term("app", &th.signature).unwrap();
        assert!(matches!(
            theory_equal_bounded(&a, &b, &th, 1),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
