//! DOT output: nets as clustered formula trees joined by linking edges,
//! and switchings as plain labelled graphs. Unit-sourced linking edges are
//! dotted, matching the convention that they are the rewirable ones.

use std::fmt::Write;

use crate::correctness::SwitchGraph;
use crate::formula::{Formula, PortLabel};
use crate::prenet::{Net, PortRef, Region};

fn node_id(r: &PortRef) -> String {
    format!("{}_{}", r.region, r.path)
}

fn region_title(net: &Net, region: Region) -> String {
    match region {
        Region::Dom => format!("dom: {}", net.dom()),
        Region::Cod => format!("cod: {}", net.cod()),
        Region::Sup(i) => {
            let entry = &net.support()[i];
            format!("{}: {}", entry.name, entry.ty())
        }
    }
}

fn write_tree(out: &mut String, f: &Formula, region: Region, path: String) {
    let id = format!("{region}_{path}");
    match f {
        Formula::Atom(x) => {
            let _ = writeln!(out, "    {id} [label=\"{x}\"];");
        }
        Formula::Unit => {
            let _ = writeln!(out, "    {id} [label=\"I\"];");
        }
        Formula::Tensor(l, r) => {
            let _ = writeln!(out, "    {id} [label=\"*\" shape=circle];");
            write_tree(out, l, region, format!("{path}L"));
            write_tree(out, r, region, format!("{path}R"));
            let _ = writeln!(out, "    {id} -- {id}L;");
            let _ = writeln!(out, "    {id} -- {id}R;");
        }
        Formula::Hom(a, b) => {
            let _ = writeln!(out, "    {id} [label=\"-o\" shape=circle];");
            write_tree(out, a, region, format!("{path}L"));
            write_tree(out, b, region, format!("{path}R"));
            let _ = writeln!(out, "    {id} -- {id}L;");
            let _ = writeln!(out, "    {id} -- {id}R;");
        }
    }
}

/// A net as a DOT graph: one cluster per region holding the formula tree,
/// with directed linking edges on the leaves.
pub fn net_to_dot(net: &Net) -> String {
    let mut out = String::from("graph net {\n  node [shape=plaintext];\n");
    let mut regions = vec![Region::Dom, Region::Cod];
    regions.extend((0..net.support().len()).map(Region::Sup));
    for region in regions {
        let _ = writeln!(out, "  subgraph cluster_{region} {{");
        let _ = writeln!(out, "    label=\"{}\";", region_title(net, region));
        let formula = net.region_formula(region).expect("region exists");
        write_tree(&mut out, &formula, region, String::new());
        let _ = writeln!(out, "  }}");
    }
    for (s, t) in net.linking() {
        let (label, _, _) = net.port_info(s).expect("linking source is a port");
        let style = match label {
            PortLabel::Unit => " [style=dotted dir=forward]",
            PortLabel::Sort(_) => " [style=solid dir=forward]",
        };
        let _ = writeln!(out, "  {} -- {}{};", node_id(s), node_id(t), style);
    }
    out.push_str("}\n");
    out
}

/// One switching as a DOT graph; vertex labels follow the one-sided trees.
pub fn switch_graph_to_dot(graph: &SwitchGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph switching_{} {{", graph.index);
    for (v, vert) in graph.vertices.iter().enumerate() {
        let label = match &vert.port {
            Some(port) => format!("{} {}", vert.label, port),
            None => vert.label.clone(),
        };
        let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
    }
    for (a, b) in &graph.edges {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}
