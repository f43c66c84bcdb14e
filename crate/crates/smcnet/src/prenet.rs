//! Prenets: a domain and codomain formula, a *support* (a sequence of
//! operation occurrences, each contributing the ports of its `s -o t`
//! type), and a linking that maps source-side ports to target-side ports.
//!
//! Source side = positive ports of the domain, positive ports of the
//! support types, negative ports of the codomain; target side is the
//! complement. The linking is a partial function that restricts to a
//! bijection on the ports of each sort; unit ports may be unmapped and
//! unit edges may share targets.
//!
//! Composition glues two linkings along the ports of the common interface
//! formula by following maximal alternating chains; chains that dead-end
//! or cycle inside interface ports leave the composite undefined at that
//! source. The support of `f ; g` is `g`'s support followed by `f`'s.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{parse_formula_free, Dir, Formula, Path, Polarity, Port, PortLabel};
use crate::theory::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Dom,
    Cod,
    Sup(usize),
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Dom => write!(f, "dom"),
            Region::Cod => write!(f, "cod"),
            Region::Sup(i) => write!(f, "sup{i}"),
        }
    }
}

/// A port of a net: a leaf of the domain, codomain, or of the type of one
/// support occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub region: Region,
    pub path: Path,
}

impl PortRef {
    pub fn new(region: Region, path: Path) -> PortRef {
        PortRef { region, path }
    }

    pub fn dom(path: Path) -> PortRef {
        PortRef::new(Region::Dom, path)
    }

    pub fn cod(path: Path) -> PortRef {
        PortRef::new(Region::Cod, path)
    }

    pub fn sup(i: usize, path: Path) -> PortRef {
        PortRef::new(Region::Sup(i), path)
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.region, self.path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

fn side_of(region: Region, polarity: Polarity) -> Side {
    match (region, polarity) {
        (Region::Dom, Polarity::Positive) => Side::Source,
        (Region::Dom, Polarity::Negative) => Side::Target,
        (Region::Cod, Polarity::Positive) => Side::Target,
        (Region::Cod, Polarity::Negative) => Side::Source,
        (Region::Sup(_), Polarity::Positive) => Side::Source,
        (Region::Sup(_), Polarity::Negative) => Side::Target,
    }
}

/// One occurrence of a signature operation in a support, kept with its
/// arity so nets stay self-contained.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportEntry {
    pub name: String,
    pub source: Formula,
    pub target: Formula,
}

impl SupportEntry {
    pub fn new(name: impl Into<String>, source: Formula, target: Formula) -> SupportEntry {
        SupportEntry {
            name: name.into(),
            source,
            target,
        }
    }

    /// The type this occurrence contributes ports from: `source -o target`.
    pub fn ty(&self) -> Formula {
        Formula::hom(self.source.clone(), self.target.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    dom: Formula,
    cod: Formula,
    support: Vec<SupportEntry>,
    linking: BTreeMap<PortRef, PortRef>,
}

impl Net {
    /// Build a net from raw parts, checking every structural invariant.
    pub fn from_parts(
        dom: Formula,
        cod: Formula,
        support: Vec<SupportEntry>,
        linking: BTreeMap<PortRef, PortRef>,
    ) -> Result<Net> {
        let net = Net {
            dom,
            cod,
            support,
            linking,
        };
        net.validate()?;
        Ok(net)
    }

    /// Constructor for operations whose output is valid by construction.
    pub(crate) fn new_unchecked(
        dom: Formula,
        cod: Formula,
        support: Vec<SupportEntry>,
        linking: BTreeMap<PortRef, PortRef>,
    ) -> Net {
        let net = Net {
            dom,
            cod,
            support,
            linking,
        };
        debug_assert!(
            net.validate().is_ok(),
            "constructed net violates invariants"
        );
        net
    }

    /// Same net shape with a different linking.
    pub(crate) fn with_linking(&self, linking: BTreeMap<PortRef, PortRef>) -> Net {
        Net {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            support: self.support.clone(),
            linking,
        }
    }

    pub fn dom(&self) -> &Formula {
        &self.dom
    }

    pub fn cod(&self) -> &Formula {
        &self.cod
    }

    pub fn support(&self) -> &[SupportEntry] {
        &self.support
    }

    pub fn linking(&self) -> &BTreeMap<PortRef, PortRef> {
        &self.linking
    }

    /// The formula whose leaves are the ports of `region`.
    pub fn region_formula(&self, region: Region) -> Option<Formula> {
        match region {
            Region::Dom => Some(self.dom.clone()),
            Region::Cod => Some(self.cod.clone()),
            Region::Sup(i) => self.support.get(i).map(|e| e.ty()),
        }
    }

    /// Label, polarity (within the region formula) and side of a port.
    pub fn port_info(&self, r: &PortRef) -> Option<(PortLabel, Polarity, Side)> {
        let formula = self.region_formula(r.region)?;
        let port = formula.port_at(&r.path)?;
        let side = side_of(r.region, port.polarity);
        Some((port.label, port.polarity, side))
    }

    /// All ports, regions in the order dom, cod, sup(0..), leaves
    /// left-to-right within each region.
    pub fn all_ports(&self) -> Vec<(PortRef, Port, Side)> {
        let mut out = Vec::new();
        let mut push_region = |region: Region, formula: &Formula| {
            for port in formula.ports() {
                let side = side_of(region, port.polarity);
                out.push((PortRef::new(region, port.path.clone()), port, side));
            }
        };
        push_region(Region::Dom, &self.dom);
        push_region(Region::Cod, &self.cod);
        for (i, entry) in self.support.iter().enumerate() {
            push_region(Region::Sup(i), &entry.ty());
        }
        out
    }

    pub fn source_ports(&self) -> Vec<(PortRef, Port)> {
        self.all_ports()
            .into_iter()
            .filter(|(_, _, s)| *s == Side::Source)
            .map(|(r, p, _)| (r, p))
            .collect()
    }

    pub fn target_ports(&self) -> Vec<(PortRef, Port)> {
        self.all_ports()
            .into_iter()
            .filter(|(_, _, s)| *s == Side::Target)
            .map(|(r, p, _)| (r, p))
            .collect()
    }

    /// Check every structural invariant: edges go from source-side to
    /// target-side ports, sort edges preserve labels, and the linking
    /// bijects the ports of each sort.
    pub fn validate(&self) -> Result<()> {
        let mut sort_targets: BTreeMap<String, Vec<&PortRef>> = BTreeMap::new();
        for (s, t) in &self.linking {
            let (slabel, _, sside) = self
                .port_info(s)
                .ok_or_else(|| Error::InvalidNet(format!("{s} is not a port")))?;
            let (tlabel, _, tside) = self
                .port_info(t)
                .ok_or_else(|| Error::InvalidNet(format!("{t} is not a port")))?;
            if sside != Side::Source {
                return Err(Error::InvalidNet(format!("{s} is not a source-side port")));
            }
            if tside != Side::Target {
                return Err(Error::InvalidNet(format!("{t} is not a target-side port")));
            }
            if let PortLabel::Sort(x) = &slabel {
                if tlabel != slabel {
                    return Err(Error::InvalidNet(format!(
                        "edge {s} -> {t} maps an {x}-port to a {tlabel}-port"
                    )));
                }
                sort_targets.entry(x.clone()).or_default().push(t);
            }
        }
        // per-sort bijection between source-side and target-side ports
        let mut source_counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut target_ports: BTreeMap<String, Vec<PortRef>> = BTreeMap::new();
        for (r, port, side) in self.all_ports() {
            if let PortLabel::Sort(x) = &port.label {
                match side {
                    Side::Source => *source_counts.entry(x.clone()).or_default() += 1,
                    Side::Target => target_ports.entry(x.clone()).or_default().push(r),
                }
            }
        }
        let sorts: HashSet<&String> = source_counts.keys().chain(target_ports.keys()).collect();
        for x in sorts {
            let sources = source_counts.get(x).copied().unwrap_or(0);
            let hit = sort_targets.get(x).map(|v| v.as_slice()).unwrap_or(&[]);
            let targets = target_ports.get(x).map(|v| v.len()).unwrap_or(0);
            if hit.len() != sources {
                return Err(Error::InvalidNet(format!(
                    "linking is not total on {x}-ports: {} of {sources} mapped",
                    hit.len()
                )));
            }
            let distinct: HashSet<&&PortRef> = hit.iter().collect();
            if distinct.len() != hit.len() || hit.len() != targets {
                return Err(Error::InvalidNet(format!(
                    "linking does not biject {x}-ports: {sources} sources, {targets} targets"
                )));
            }
        }
        Ok(())
    }

    /// The identity net: empty support, every port wired straight across.
    pub fn identity(a: &Formula) -> Net {
        let mut linking = BTreeMap::new();
        for port in a.ports() {
            match port.polarity {
                Polarity::Positive => {
                    linking.insert(PortRef::dom(port.path.clone()), PortRef::cod(port.path));
                }
                Polarity::Negative => {
                    linking.insert(PortRef::cod(port.path.clone()), PortRef::dom(port.path));
                }
            }
        }
        Net {
            dom: a.clone(),
            cod: a.clone(),
            support: Vec::new(),
            linking,
        }
    }

    /// Glue `self : a -> b` with `g : b -> c` along the ports of `b`.
    pub fn compose(&self, g: &Net) -> Result<Net> {
        if self.cod != g.dom {
            return Err(Error::CompositionMismatch {
                produced: self.cod.clone(),
                expected: g.dom.clone(),
            });
        }
        let shift = g.support.len();
        let mut support = g.support.clone();
        support.extend(self.support.iter().cloned());

        let remap_f = |r: &PortRef| match r.region {
            Region::Sup(i) => PortRef::sup(i + shift, r.path.clone()),
            _ => r.clone(),
        };

        let mut linking = BTreeMap::new();
        for (s, t) in &self.linking {
            if s.region == Region::Cod {
                continue; // interface port: interior of some chain
            }
            if let Some(target) = chase(self, g, Hop::InF(t.clone()), shift) {
                linking.insert(remap_f(s), target);
            }
        }
        for (s, t) in &g.linking {
            if s.region == Region::Dom {
                continue;
            }
            if let Some(target) = chase(self, g, Hop::InG(t.clone()), shift) {
                linking.insert(s.clone(), target);
            }
        }
        Ok(Net {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            support,
            linking,
        })
    }

    /// Disjoint union, with `self` on the left.
    pub fn tensor(&self, other: &Net) -> Net {
        let shift = self.support.len();
        let mut support = self.support.clone();
        support.extend(other.support.iter().cloned());
        let remap = |r: &PortRef, side: Dir, shift_by: usize| match r.region {
            Region::Sup(i) => PortRef::sup(i + shift_by, r.path.clone()),
            region => PortRef::new(region, r.path.under(side)),
        };
        let mut linking = BTreeMap::new();
        for (s, t) in &self.linking {
            linking.insert(remap(s, Dir::L, 0), remap(t, Dir::L, 0));
        }
        for (s, t) in &other.linking {
            linking.insert(remap(s, Dir::R, shift), remap(t, Dir::R, shift));
        }
        Net {
            dom: Formula::tensor(self.dom.clone(), other.dom.clone()),
            cod: Formula::tensor(self.cod.clone(), other.cod.clone()),
            support,
            linking,
        }
    }

    /// Transpose `self : u * a -> d` to `u -> a -o d` by re-addressing
    /// ports; the support and the edge structure are untouched.
    pub fn curry(&self) -> Result<Net> {
        let (u, a) = match &self.dom {
            Formula::Tensor(l, r) => (l.as_ref().clone(), r.as_ref().clone()),
            other => return Err(Error::DomainNotTensor(other.clone())),
        };
        let cod = Formula::hom(a, self.cod.clone());
        let remap = |r: &PortRef| match r.region {
            Region::Dom => match r.path.split_first() {
                Some((Dir::L, rest)) => PortRef::dom(rest),
                Some((Dir::R, rest)) => PortRef::cod(rest.under(Dir::L)),
                None => unreachable!("tensor domain has no root leaf"),
            },
            Region::Cod => PortRef::cod(r.path.under(Dir::R)),
            Region::Sup(_) => r.clone(),
        };
        let linking = self
            .linking
            .iter()
            .map(|(s, t)| (remap(s), remap(t)))
            .collect();
        Ok(Net {
            dom: u,
            cod,
            support: self.support.clone(),
            linking,
        })
    }

    /// Inverse of [`Net::curry`]: `u -> a -o d` becomes `u * a -> d`.
    pub fn uncurry(&self) -> Result<Net> {
        let (a, d) = match &self.cod {
            Formula::Hom(a, d) => (a.as_ref().clone(), d.as_ref().clone()),
            other => return Err(Error::CodomainNotHom(other.clone())),
        };
        let dom = Formula::tensor(self.dom.clone(), a);
        let remap = |r: &PortRef| match r.region {
            Region::Dom => PortRef::dom(r.path.under(Dir::L)),
            Region::Cod => match r.path.split_first() {
                Some((Dir::L, rest)) => PortRef::dom(rest.under(Dir::R)),
                Some((Dir::R, rest)) => PortRef::cod(rest),
                None => unreachable!("hom codomain has no root leaf"),
            },
            Region::Sup(_) => r.clone(),
        };
        let linking = self
            .linking
            .iter()
            .map(|(s, t)| (remap(s), remap(t)))
            .collect();
        Ok(Net {
            dom,
            cod: d,
            support: self.support.clone(),
            linking,
        })
    }

    /// Equality up to a label-preserving bijection of support indices.
    pub fn support_iso_equal(&self, other: &Net) -> bool {
        if self.dom != other.dom || self.cod != other.cod {
            return false;
        }
        if self == other {
            return true;
        }
        if self.support.len() != other.support.len() {
            return false;
        }
        self.canonical_key() == other.canonical_key()
    }

    /// A canonical encoding, minimal over all label-preserving bijections
    /// from support indices to positions of the sorted support. Two nets
    /// have equal keys iff they are support-isomorphic.
    pub fn canonical_key(&self) -> String {
        // (region tag, relabeled sup index, path): orders like PortRef
        // with support indices replaced by canonical positions
        type Key<'a> = ((u8, usize, &'a Path), (u8, usize, &'a Path));
        fn encode<'a>(r: &'a PortRef, assign: &[usize]) -> (u8, usize, &'a Path) {
            match r.region {
                Region::Dom => (0, 0, &r.path),
                Region::Cod => (1, 0, &r.path),
                Region::Sup(i) => (2, assign[i], &r.path),
            }
        }

        let mut sorted: Vec<&SupportEntry> = self.support.iter().collect();
        sorted.sort();

        // positions in the sorted sequence available to each entry value
        let mut positions: BTreeMap<&SupportEntry, Vec<usize>> = BTreeMap::new();
        for (pos, entry) in sorted.iter().enumerate() {
            positions.entry(entry).or_default().push(pos);
        }
        // original indices holding each entry value, in order
        let mut holders: BTreeMap<&SupportEntry, Vec<usize>> = BTreeMap::new();
        for (idx, entry) in self.support.iter().enumerate() {
            holders.entry(entry).or_default().push(idx);
        }

        let groups: Vec<(&Vec<usize>, Vec<Vec<usize>>)> = holders
            .iter()
            .map(|(entry, idxs)| (idxs, permutations(&positions[entry])))
            .collect();

        let mut best: Option<Vec<Key>> = None;
        let mut assign = vec![0usize; self.support.len()];
        let mut choice = vec![0usize; groups.len()];
        loop {
            for (g, (idxs, perms)) in groups.iter().enumerate() {
                for (k, idx) in idxs.iter().enumerate() {
                    assign[*idx] = perms[choice[g]][k];
                }
            }
            let mut edges: Vec<Key> = self
                .linking
                .iter()
                .map(|(s, t)| (encode(s, &assign), encode(t, &assign)))
                .collect();
            edges.sort();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
            // advance the mixed-radix counter over per-group permutations
            let mut g = 0;
            loop {
                if g == groups.len() {
                    return render_key(&self.dom, &self.cod, &sorted, &best.unwrap_or_default());
                }
                choice[g] += 1;
                if choice[g] < groups[g].1.len() {
                    break;
                }
                choice[g] = 0;
                g += 1;
            }
        }
    }

    /// Canonical JSON: `{"dom", "cod", "support", "edges"}` with edges
    /// sorted lexicographically by source port.
    pub fn to_json_string(&self) -> String {
        let json = NetJson {
            dom: self.dom.to_string(),
            cod: self.cod.to_string(),
            support: self.support.iter().map(|e| e.name.clone()).collect(),
            edges: self
                .linking
                .iter()
                .map(|(s, t)| (PortRefJson::from(s), PortRefJson::from(t)))
                .collect(),
        };
        serde_json::to_string(&json).expect("net serialization cannot fail")
    }

    /// Load a net from JSON. A signature is required to resolve support
    /// labels; without one, only nets with empty support can be loaded and
    /// every identifier in the formulas is taken as a sort.
    pub fn from_json_str(text: &str, sig: Option<&Signature>) -> Result<Net> {
        let json: NetJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let (dom, cod) = match sig {
            Some(sig) => (sig.parse_formula(&json.dom)?, sig.parse_formula(&json.cod)?),
            None => (
                parse_formula_free(&json.dom)?,
                parse_formula_free(&json.cod)?,
            ),
        };
        let mut support = Vec::new();
        for name in &json.support {
            match sig {
                Some(sig) => {
                    let (s, t) = sig.op(name).ok_or_else(|| Error::UnknownOp(name.clone()))?;
                    support.push(SupportEntry::new(name.clone(), s.clone(), t.clone()));
                }
                None => {
                    return Err(Error::InvalidNet(
                        "a net with nonempty support needs a theory to resolve op types".into(),
                    ))
                }
            }
        }
        let mut linking = BTreeMap::new();
        for (s, t) in &json.edges {
            let s = s.to_port_ref()?;
            let t = t.to_port_ref()?;
            if linking.insert(s.clone(), t).is_some() {
                return Err(Error::InvalidNet(format!("duplicate edge source {s}")));
            }
        }
        Net::from_parts(dom, cod, support, linking)
    }
}

#[allow(clippy::type_complexity)]
fn render_key(
    dom: &Formula,
    cod: &Formula,
    sorted: &[&SupportEntry],
    edges: &[((u8, usize, &Path), (u8, usize, &Path))],
) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = write!(out, "{dom}|{cod}|");
    for e in sorted {
        let _ = write!(out, "{}:{}->{},", e.name, e.source, e.target);
    }
    out.push('|');
    for ((st, si, sp), (tt, ti, tp)) in edges {
        let _ = write!(out, "{st}.{si}.{sp}>{tt}.{ti}.{tp};");
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A position while following an alternating chain through the interface:
/// the target of an edge of `f` or of `g`, in that net's own frame.
enum Hop {
    InF(PortRef),
    InG(PortRef),
}

/// Follow a gluing chain to a surviving target port of the composite, in
/// composite coordinates. `None` when the chain dies at an unmapped
/// interface port or cycles.
fn chase(f: &Net, g: &Net, start: Hop, shift: usize) -> Option<PortRef> {
    let mut seen: HashSet<Path> = HashSet::new();
    let mut cur = start;
    loop {
        match cur {
            Hop::InF(t) => {
                if t.region != Region::Cod {
                    return Some(match t.region {
                        Region::Sup(i) => PortRef::sup(i + shift, t.path),
                        region => PortRef::new(region, t.path),
                    });
                }
                // positive interface port: continue through g's domain
                if !seen.insert(t.path.clone()) {
                    return None;
                }
                cur = Hop::InG(g.linking.get(&PortRef::dom(t.path))?.clone());
            }
            Hop::InG(t) => {
                if t.region != Region::Dom {
                    return Some(t);
                }
                // negative interface port: continue through f's codomain
                if !seen.insert(t.path.clone()) {
                    return None;
                }
                cur = Hop::InF(f.linking.get(&PortRef::cod(t.path))?.clone());
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NetJson {
    dom: String,
    cod: String,
    support: Vec<String>,
    edges: Vec<(PortRefJson, PortRefJson)>,
}

#[derive(Serialize, Deserialize)]
struct PortRefJson {
    region: RegionJson,
    path: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RegionJson {
    Name(String),
    Sup { sup: usize },
}

impl From<&PortRef> for PortRefJson {
    fn from(r: &PortRef) -> PortRefJson {
        let region = match r.region {
            Region::Dom => RegionJson::Name("dom".into()),
            Region::Cod => RegionJson::Name("cod".into()),
            Region::Sup(i) => RegionJson::Sup { sup: i },
        };
        PortRefJson {
            region,
            path: r.path.to_string(),
        }
    }
}

impl PortRefJson {
    fn to_port_ref(&self) -> Result<PortRef> {
        let region = match &self.region {
            RegionJson::Name(n) if n == "dom" => Region::Dom,
            RegionJson::Name(n) if n == "cod" => Region::Cod,
            RegionJson::Name(n) => {
                return Err(Error::Json(format!(
                    "invalid region `{n}` (expected \"dom\", \"cod\" or {{\"sup\": i}})"
                )))
            }
            RegionJson::Sup { sup } => Region::Sup(*sup),
        };
        Ok(PortRef::new(region, Path::parse(&self.path)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use std::collections::BTreeSet;

    fn f(text: &str) -> Formula {
        let sorts: BTreeSet<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        parse_formula(text, &sorts).unwrap()
    }

    fn p(text: &str) -> Path {
        Path::parse(text).unwrap()
    }

    fn edges(net: &Net) -> Vec<(String, String)> {
        net.linking
            .iter()
            .map(|(s, t)| (s.to_string(), t.to_string()))
            .collect()
    }

    #[test]
    fn identity_of_atom() {
        let net = Net::identity(&f("x"));
        assert_eq!(edges(&net), vec![("dom:".into(), "cod:".into())]);
    }

    #[test]
    fn identity_of_tensor() {
        let net = Net::identity(&f("x * y"));
        assert_eq!(
            edges(&net),
            vec![
                ("dom:L".into(), "cod:L".into()),
                ("dom:R".into(), "cod:R".into()),
            ]
        );
    }

    #[test]
    fn identity_of_hom_wires_the_antecedent_backwards() {
        let net = Net::identity(&f("x -o y"));
        assert_eq!(
            edges(&net),
            vec![
                ("dom:R".into(), "cod:R".into()),
                ("cod:L".into(), "dom:L".into()),
            ]
        );
    }

    /// `I -> (x -o x)`: the transpose of the left unitor. Its codomain
    /// carries an internal x-edge, and its unit edge shares the target.
    fn curried_lunit() -> Net {
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::cod(p("L")), PortRef::cod(p("R")));
        linking.insert(PortRef::dom(p("")), PortRef::cod(p("R")));
        Net::from_parts(Formula::Unit, f("x -o x"), Vec::new(), linking).unwrap()
    }

    #[test]
    fn compose_is_unital_across_a_hom_interface() {
        // the chain cod:L -> dom:L -> (f) cod:R -> (id) cod:R has three
        // hops through the interface x -o x
        let h = curried_lunit();
        let id = Net::identity(&f("x -o x"));
        assert_eq!(h.compose(&id).unwrap(), h);
        assert_eq!(Net::identity(&f("I")).compose(&h).unwrap(), h);
    }

    #[test]
    fn compose_rejects_mismatched_interface() {
        let a = Net::identity(&f("x"));
        let b = Net::identity(&f("y"));
        assert!(matches!(
            a.compose(&b),
            Err(Error::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn chains_that_dead_end_leave_the_composite_partial() {
        // f : I -> I with no edges (the unit port of the codomain is
        // negative, so f's linking may leave it out);
        // g : I -> I total. The composite chain dies at the interface.
        let empty = Net::from_parts(Formula::Unit, Formula::Unit, Vec::new(), BTreeMap::new());
        let empty = empty.unwrap();
        let id = Net::identity(&Formula::Unit);
        let c = empty.compose(&id).unwrap();
        assert!(c.linking.is_empty());
        let c = id.compose(&empty).unwrap();
        assert!(c.linking.is_empty());
    }

    #[test]
    fn chains_that_cycle_in_the_interface_are_dropped() {
        // interface I -o I; the unit edges of f and g chase each other in
        // a loop, and a chain entering the loop from dom never exits
        let b = f("I -o I");
        let mut fl = BTreeMap::new();
        fl.insert(PortRef::dom(p("")), PortRef::cod(p("R")));
        fl.insert(PortRef::cod(p("L")), PortRef::cod(p("R")));
        let fnet = Net::from_parts(Formula::Unit, b.clone(), Vec::new(), fl).unwrap();
        let mut gl = BTreeMap::new();
        gl.insert(PortRef::dom(p("R")), PortRef::dom(p("L")));
        let gnet = Net::from_parts(b, Formula::Unit, Vec::new(), gl).unwrap();
        let c = fnet.compose(&gnet).unwrap();
        assert!(c.linking.is_empty());
    }

    #[test]
    fn tensor_of_identities_is_identity_of_tensor() {
        let lhs = Net::identity(&f("x")).tensor(&Net::identity(&f("y")));
        assert_eq!(lhs, Net::identity(&f("x * y")));
    }

    #[test]
    fn tensor_with_unit_identity_adds_an_unwired_leaf() {
        let h = curried_lunit();
        let t = h.tensor(&Net::identity(&Formula::Unit));
        assert_eq!(t.dom(), &f("I * I"));
        assert_eq!(t.linking.len(), h.linking.len() + 1);
    }

    #[test]
    fn curry_uncurry_round_trip() {
        let id = Net::identity(&f("(x -o y) * (x * I)"));
        let c = id.curry().unwrap();
        assert_eq!(c.dom(), &f("x -o y"));
        assert_eq!(c.cod(), &f("(x * I) -o ((x -o y) * (x * I))"));
        assert_eq!(c.uncurry().unwrap(), id);
    }

    #[test]
    fn curry_needs_tensor_domain() {
        assert!(matches!(
            Net::identity(&f("x")).curry(),
            Err(Error::DomainNotTensor(_))
        ));
        assert!(matches!(
            Net::identity(&f("x")).uncurry(),
            Err(Error::CodomainNotHom(_))
        ));
    }

    fn two_entry_net(order_swapped: bool) -> Net {
        // support with two occurrences of distinct ops a : x -> x and
        // b : y -> y; dom x * y, cod x * y
        let a = SupportEntry::new("a", f("x"), f("x"));
        let b = SupportEntry::new("b", f("y"), f("y"));
        let (first, second) = if order_swapped {
            (b.clone(), a.clone())
        } else {
            (a, b)
        };
        let (ai, bi) = if order_swapped { (1, 0) } else { (0, 1) };
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("L")), PortRef::sup(ai, p("L")));
        linking.insert(PortRef::sup(ai, p("R")), PortRef::cod(p("L")));
        linking.insert(PortRef::dom(p("R")), PortRef::sup(bi, p("L")));
        linking.insert(PortRef::sup(bi, p("R")), PortRef::cod(p("R")));
        Net::from_parts(f("x * y"), f("x * y"), vec![first, second], linking).unwrap()
    }

    #[test]
    fn support_iso_absorbs_reordering() {
        let n1 = two_entry_net(false);
        let n2 = two_entry_net(true);
        assert_ne!(n1, n2);
        assert!(n1.support_iso_equal(&n2));
    }

    /// Net on x * x with two occurrences of a : x -> x; `route` maps the
    /// k-th domain port through occurrence `route[k]` and out to the
    /// codomain port `out[k]`.
    fn doubled(route: [usize; 2], out: [&str; 2]) -> Net {
        let a = SupportEntry::new("a", f("x"), f("x"));
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("L")), PortRef::sup(route[0], p("L")));
        linking.insert(PortRef::dom(p("R")), PortRef::sup(route[1], p("L")));
        linking.insert(PortRef::sup(route[0], p("R")), PortRef::cod(p(out[0])));
        linking.insert(PortRef::sup(route[1], p("R")), PortRef::cod(p(out[1])));
        Net::from_parts(f("x * x"), f("x * x"), vec![a.clone(), a], linking).unwrap()
    }

    #[test]
    fn support_iso_distinguishes_routing_from_relabeling() {
        let straight = doubled([0, 1], ["L", "R"]);
        let relabeled = doubled([1, 0], ["L", "R"]);
        // same morphism, occurrences numbered the other way round
        assert_ne!(straight, relabeled);
        assert!(straight.support_iso_equal(&relabeled));
        // retargeted edges: dom:L now comes out at cod:R
        let crossed = doubled([0, 1], ["R", "L"]);
        assert!(!straight.support_iso_equal(&crossed));
        assert!(!straight.support_iso_equal(&Net::identity(&f("x * x"))));
        // the relabeling also carries the crossed routing onto its own swap
        assert!(crossed.support_iso_equal(&doubled([1, 0], ["R", "L"])));
    }

    #[test]
    fn validate_rejects_wrong_side_sources() {
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::cod(p("")), PortRef::dom(p("")));
        let err = Net::from_parts(f("x"), f("x"), Vec::new(), linking).unwrap_err();
        assert!(matches!(err, Error::InvalidNet(_)));
    }

    #[test]
    fn validate_rejects_label_changing_edges() {
        let mut linking = BTreeMap::new();
        linking.insert(PortRef::dom(p("L")), PortRef::cod(p("R")));
        linking.insert(PortRef::dom(p("R")), PortRef::cod(p("L")));
        let err = Net::from_parts(f("x * y"), f("x * y"), Vec::new(), linking).unwrap_err();
        assert!(matches!(err, Error::InvalidNet(_)));
    }

    #[test]
    fn validate_requires_sort_bijection() {
        let err = Net::from_parts(f("x"), f("x"), Vec::new(), BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidNet(_)));
    }

    #[test]
    fn json_round_trip_and_canonical_order() {
        let net = Net::identity(&f("x -o y"));
        let text = net.to_json_string();
        assert_eq!(
            text,
            r#"{"dom":"x -o y","cod":"x -o y","support":[],"edges":[[{"region":"dom","path":"R"},{"region":"cod","path":"R"}],[{"region":"cod","path":"L"},{"region":"dom","path":"L"}]]}"#
        );
        let back = Net::from_json_str(&text, None).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn json_with_support_needs_signature() {
        let text = r#"{"dom":"x","cod":"x","support":["a"],"edges":[]}"#;
        assert!(matches!(
            Net::from_json_str(text, None),
            Err(Error::InvalidNet(_))
        ));
    }

    #[test]
    fn json_rejects_malformed_ports() {
        let bad_region = r#"{"dom":"x","cod":"x","support":[],"edges":[[{"region":"mid","path":""},{"region":"cod","path":""}]]}"#;
        assert!(matches!(
            Net::from_json_str(bad_region, None),
            Err(Error::Json(_))
        ));
        let bad_path = r#"{"dom":"x","cod":"x","support":[],"edges":[[{"region":"dom","path":"LQ"},{"region":"cod","path":""}]]}"#;
        assert!(matches!(
            Net::from_json_str(bad_path, None),
            Err(Error::Json(_))
        ));
        let dangling = r#"{"dom":"x","cod":"x","support":[],"edges":[[{"region":{"sup":3},"path":""},{"region":"cod","path":""}]]}"#;
        assert!(matches!(
            Net::from_json_str(dangling, None),
            Err(Error::InvalidNet(_))
        ));
    }

    #[test]
    fn canonical_key_searches_all_bijections_of_a_triple() {
        // three occurrences of the same op; identification needs the
        // 3-cycle relabeling, not just a swap
        let a = SupportEntry::new("a", f("x"), f("x"));
        let build = |order: [usize; 3]| {
            let mut linking = BTreeMap::new();
            for (k, leaf) in ["LL", "LR", "R"].iter().enumerate() {
                linking.insert(PortRef::dom(p(leaf)), PortRef::sup(order[k], p("L")));
                linking.insert(PortRef::sup(order[k], p("R")), PortRef::cod(p(leaf)));
            }
            Net::from_parts(
                f("(x * x) * x"),
                f("(x * x) * x"),
                vec![a.clone(), a.clone(), a.clone()],
                linking,
            )
            .unwrap()
        };
        let base = build([0, 1, 2]);
        assert!(base.support_iso_equal(&build([1, 2, 0])));
        assert!(base.support_iso_equal(&build([2, 0, 1])));
        assert!(base.support_iso_equal(&build([2, 1, 0])));
        // routing change, not a relabeling: dom LL exits at cod LR
        let mut crossed = base.linking.clone();
        crossed.insert(PortRef::sup(0, p("R")), PortRef::cod(p("LR")));
        crossed.insert(PortRef::sup(1, p("R")), PortRef::cod(p("LL")));
        let crossed = Net {
            linking: crossed,
            ..base.clone()
        };
        assert!(!base.support_iso_equal(&crossed));
    }
}
