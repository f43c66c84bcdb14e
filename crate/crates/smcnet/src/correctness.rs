//! Switchings and the correctness criterion.
//!
//! A switching of a net keeps, for every `⅋` node across the one-sided
//! trees of the negated domain, the codomain, and the negated type of each
//! support occurrence, exactly one premise edge; leaves stay identified
//! with the net's ports and the linking edges are added with orientation
//! forgotten. The net is correct when every switching is a tree.
//!
//! Enumeration is a binary counter over the `⅋` nodes, collected in region
//! order (dom, cod, sup 0..) and pre-order within each tree; bit `j` of
//! the switching index retains the right premise of the `j`-th node when
//! set, the left when clear.

use std::collections::BTreeMap;

use crate::formula::{Formula, MllFormula};
use crate::prenet::{Net, PortRef, Region, SupportEntry};

#[derive(Debug, Clone)]
pub struct SwitchVertex {
    pub label: String,
    /// Set for leaf vertices: the port this leaf is identified with.
    pub port: Option<PortRef>,
}

/// One switching of a net, as an undirected graph.
#[derive(Debug, Clone)]
pub struct SwitchGraph {
    pub index: u64,
    pub vertices: Vec<SwitchVertex>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Cyclic,
    Disconnected,
}

impl SwitchGraph {
    /// `Ok` when the graph is a tree: acyclic and connected.
    pub fn check_tree(&self) -> Result<(), FailureKind> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut merges = 0;
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                return Err(FailureKind::Cyclic);
            }
            parent[ra] = rb;
            merges += 1;
        }
        if merges + 1 == n {
            Ok(())
        } else {
            Err(FailureKind::Disconnected)
        }
    }

    pub fn is_tree(&self) -> bool {
        self.check_tree().is_ok()
    }
}

struct Skeleton {
    vertices: Vec<SwitchVertex>,
    fixed_edges: Vec<(usize, usize)>,
    /// (par vertex, left premise, right premise), region/pre-order.
    pars: Vec<(usize, usize, usize)>,
}

impl Skeleton {
    fn graph_for(&self, index: u64) -> SwitchGraph {
        let mut edges = self.fixed_edges.clone();
        for (j, &(v, lv, rv)) in self.pars.iter().enumerate() {
            let keep = if index >> j & 1 == 0 { lv } else { rv };
            edges.push((v, keep));
        }
        SwitchGraph {
            index,
            vertices: self.vertices.clone(),
            edges,
        }
    }
}

impl Skeleton {
    fn push(&mut self, label: String, port: Option<PortRef>) -> usize {
        self.vertices.push(SwitchVertex { label, port });
        self.vertices.len() - 1
    }

    fn add_tree(&mut self, m: &MllFormula, region: Region) -> usize {
        match m {
            MllFormula::Tensor(l, r) => {
                let v = self.push("*".into(), None);
                let lv = self.add_tree(l, region);
                let rv = self.add_tree(r, region);
                self.fixed_edges.push((v, lv));
                self.fixed_edges.push((v, rv));
                v
            }
            MllFormula::Par(l, r) => {
                let v = self.push("par".into(), None);
                let lv = self.add_tree(l, region);
                let rv = self.add_tree(r, region);
                self.pars.push((v, lv, rv));
                v
            }
            MllFormula::PosAtom(x, path) => {
                self.push(x.clone(), Some(PortRef::new(region, path.clone())))
            }
            MllFormula::NegAtom(x, path) => {
                self.push(format!("~{x}"), Some(PortRef::new(region, path.clone())))
            }
            MllFormula::One(path) => {
                self.push("1".into(), Some(PortRef::new(region, path.clone())))
            }
            MllFormula::Bot(path) => {
                self.push("bot".into(), Some(PortRef::new(region, path.clone())))
            }
        }
    }
}

fn skeleton(net: &Net) -> Skeleton {
    let mut sk = Skeleton {
        vertices: Vec::new(),
        fixed_edges: Vec::new(),
        pars: Vec::new(),
    };
    sk.add_tree(&net.dom().to_one_sided(true), Region::Dom);
    sk.add_tree(&net.cod().to_one_sided(false), Region::Cod);
    for (i, entry) in net.support().iter().enumerate() {
        sk.add_tree(&entry.ty().to_one_sided(true), Region::Sup(i));
    }
    let leaf_at: BTreeMap<&PortRef, usize> = sk
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(v, vert)| vert.port.as_ref().map(|p| (p, v)))
        .collect();
    let mut link_edges = Vec::new();
    for (s, t) in net.linking() {
        let sv = *leaf_at.get(s).expect("linking source is a port");
        let tv = *leaf_at.get(t).expect("linking target is a port");
        link_edges.push((sv, tv));
    }
    sk.fixed_edges.extend(link_edges);
    sk
}

/// Reusable correctness checker. The switching trees depend only on the
/// domain, codomain and support, so one checker serves every linking over
/// that shape — rewiring searches check many candidates against it.
pub struct NetChecker {
    vcount: usize,
    tree_edges: Vec<(usize, usize)>,
    /// (par vertex, left premise, right premise), region/pre-order.
    pars: Vec<(usize, usize, usize)>,
    leaf_at: BTreeMap<PortRef, usize>,
}

impl NetChecker {
    pub fn new(net: &Net) -> NetChecker {
        NetChecker::for_shape(net.dom(), net.cod(), net.support())
    }

    pub fn for_shape(dom: &Formula, cod: &Formula, support: &[SupportEntry]) -> NetChecker {
        let mut checker = NetChecker {
            vcount: 0,
            tree_edges: Vec::new(),
            pars: Vec::new(),
            leaf_at: BTreeMap::new(),
        };
        checker.add_tree(&dom.to_one_sided(true), Region::Dom);
        checker.add_tree(&cod.to_one_sided(false), Region::Cod);
        for (i, entry) in support.iter().enumerate() {
            checker.add_tree(&entry.ty().to_one_sided(true), Region::Sup(i));
        }
        checker
    }

    fn add_tree(&mut self, m: &MllFormula, region: Region) -> usize {
        let v = self.vcount;
        self.vcount += 1;
        match m {
            MllFormula::Tensor(l, r) => {
                let lv = self.add_tree(l, region);
                let rv = self.add_tree(r, region);
                self.tree_edges.push((v, lv));
                self.tree_edges.push((v, rv));
            }
            MllFormula::Par(l, r) => {
                let lv = self.add_tree(l, region);
                let rv = self.add_tree(r, region);
                self.pars.push((v, lv, rv));
            }
            MllFormula::PosAtom(_, path)
            | MllFormula::NegAtom(_, path)
            | MllFormula::One(path)
            | MllFormula::Bot(path) => {
                self.leaf_at.insert(PortRef::new(region, path.clone()), v);
            }
        }
        v
    }

    /// First failing switching of the given linking over this shape.
    pub fn first_failure(
        &self,
        linking: &BTreeMap<PortRef, PortRef>,
    ) -> Option<(u64, FailureKind)> {
        let p = self.pars.len();
        assert!(
            p < 63,
            "switching space too large to enumerate ({p} par nodes)"
        );
        let link_edges: Vec<(usize, usize)> = linking
            .iter()
            .map(|(s, t)| {
                let sv = *self.leaf_at.get(s).expect("linking source is a port");
                let tv = *self.leaf_at.get(t).expect("linking target is a port");
                (sv, tv)
            })
            .collect();
        let mut parent: Vec<usize> = Vec::with_capacity(self.vcount);
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        'masks: for index in 0..(1u64 << p) {
            parent.clear();
            parent.extend(0..self.vcount);
            let mut merges = 0;
            let par_edges = self
                .pars
                .iter()
                .enumerate()
                .map(|(j, &(v, lv, rv))| (v, if index >> j & 1 == 0 { lv } else { rv }));
            for (a, b) in self
                .tree_edges
                .iter()
                .copied()
                .chain(link_edges.iter().copied())
                .chain(par_edges)
            {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra == rb {
                    return Some((index, FailureKind::Cyclic));
                }
                parent[ra] = rb;
                merges += 1;
            }
            if merges + 1 == self.vcount {
                continue 'masks;
            }
            return Some((index, FailureKind::Disconnected));
        }
        None
    }

    pub fn is_correct(&self, linking: &BTreeMap<PortRef, PortRef>) -> bool {
        self.first_failure(linking).is_none()
    }
}

/// The number of `⅋` nodes a switching chooses over; there are exactly
/// `2^par_count` switchings.
pub fn par_count(net: &Net) -> usize {
    net.dom().to_one_sided(true).par_count()
        + net.cod().to_one_sided(false).par_count()
        + net
            .support()
            .iter()
            .map(|e| e.ty().to_one_sided(true).par_count())
            .sum::<usize>()
}

pub struct Switchings {
    skeleton: Skeleton,
    next: u64,
    total: u64,
}

impl Iterator for Switchings {
    type Item = SwitchGraph;

    fn next(&mut self) -> Option<SwitchGraph> {
        if self.next >= self.total {
            return None;
        }
        let index = self.next;
        self.next += 1;
        Some(self.skeleton.graph_for(index))
    }
}

/// Deterministic stream of all `2^par_count` switchings of a net.
pub fn enumerate_switchings(net: &Net) -> Switchings {
    let sk = skeleton(net);
    let p = sk.pars.len();
    debug_assert_eq!(p, par_count(net));
    assert!(
        p < 63,
        "switching space too large to enumerate ({p} par nodes)"
    );
    Switchings {
        skeleton: sk,
        next: 0,
        total: 1u64 << p,
    }
}

/// A witness that a net is not correct.
#[derive(Debug, Clone)]
pub struct SwitchFailure {
    pub index: u64,
    pub kind: FailureKind,
    pub graph: SwitchGraph,
}

/// The first switching (in enumeration order) that is not a tree.
pub fn first_failure(net: &Net) -> Option<SwitchFailure> {
    let (index, kind) = NetChecker::new(net).first_failure(net.linking())?;
    Some(SwitchFailure {
        index,
        kind,
        graph: skeleton(net).graph_for(index),
    })
}

/// Brute-force correctness: every switching is a tree.
pub fn is_correct(net: &Net) -> bool {
    NetChecker::new(net).is_correct(net.linking())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Formula, Path};
    use crate::prenet::PortRef;
    use std::collections::{BTreeMap, BTreeSet};

    fn f(text: &str) -> Formula {
        let sorts: BTreeSet<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        parse_formula(text, &sorts).unwrap()
    }

    fn p(text: &str) -> Path {
        Path::parse(text).unwrap()
    }

    #[test]
    fn identity_of_atom_has_one_switching() {
        let net = Net::identity(&f("x"));
        assert_eq!(par_count(&net), 0);
        assert_eq!(enumerate_switchings(&net).count(), 1);
        assert!(is_correct(&net));
    }

    #[test]
    fn identity_of_tensor_has_two_switchings() {
        // the negated domain (x * x)' dualizes to a par
        let net = Net::identity(&f("x * x"));
        assert_eq!(par_count(&net), 1);
        assert_eq!(enumerate_switchings(&net).count(), 2);
        assert!(is_correct(&net));
    }

    #[test]
    fn identity_of_hom_par_count() {
        // cod (x -o x)' = ~x par x contributes 1; negated dom contributes 0
        let net = Net::identity(&f("x -o x"));
        assert_eq!(par_count(&net), 1);
        assert!(is_correct(&net));
    }

    #[test]
    fn left_unitor_net_is_correct() {
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("R")), PortRef::cod(p("")));
        linking.insert(PortRef::dom(p("L")), PortRef::cod(p("")));
        let net = Net::from_parts(f("I * x"), f("x"), Vec::new(), linking).unwrap();
        assert_eq!(par_count(&net), 1);
        let both: Vec<bool> = enumerate_switchings(&net).map(|g| g.is_tree()).collect();
        assert_eq!(both, vec![true, true]);
        assert!(is_correct(&net));
    }

    #[test]
    fn miswired_eval_has_a_cycle() {
        // links the two positive x-ports to each other's partners
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("LR")), PortRef::dom(p("LL")));
        linking.insert(PortRef::dom(p("R")), PortRef::cod(p("")));
        let net = Net::from_parts(f("(x -o x) * x"), f("x"), Vec::new(), linking).unwrap();
        assert!(!is_correct(&net));
        let failure = first_failure(&net).unwrap();
        assert_eq!(failure.index, 0);
        assert_eq!(failure.kind, FailureKind::Cyclic);
    }

    #[test]
    fn unmapped_unit_source_disconnects_a_switching() {
        // I * x -> x with the unit port left unattached: the bot leaf is
        // isolated in some switching
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("R")), PortRef::cod(p("")));
        let net = Net::from_parts(f("I * x"), f("x"), Vec::new(), linking).unwrap();
        let failure = first_failure(&net).unwrap();
        assert_eq!(failure.kind, FailureKind::Disconnected);
    }

    #[test]
    fn switching_count_matches_par_count_on_mixed_regions() {
        let entry = crate::prenet::SupportEntry::new("b", f("y * (x -o y)"), f("y"));
        // ty(b) dualized has one par; use a net with that single occurrence
        let ty = entry.ty();
        let net = {
            let mut linking = BTreeMap::new();
            // identity-style wiring dom -> sup, sup -> cod over ty(b)
            for port in ty.ports() {
                match port.polarity {
                    crate::formula::Polarity::Positive => {
                        linking.insert(
                            PortRef::sup(0, port.path.clone()),
                            PortRef::cod(port.path.clone()),
                        );
                    }
                    crate::formula::Polarity::Negative => {
                        linking.insert(
                            PortRef::cod(port.path.clone()),
                            PortRef::sup(0, port.path.clone()),
                        );
                    }
                }
            }
            for port in f("I").ports() {
                linking.insert(PortRef::dom(port.path.clone()), PortRef::sup(0, p("LL")));
            }
            Net::from_parts(Formula::Unit, ty.clone(), vec![entry], linking)
        };
        let net = net.unwrap();
        let expected = 1u64 << par_count(&net);
        assert_eq!(enumerate_switchings(&net).count() as u64, expected);
    }
}
