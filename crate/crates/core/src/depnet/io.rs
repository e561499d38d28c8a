//! Network serialization: GraphML, DOT and TSV edge lists, plus the
//! GraphML + membership sidecar pair used as the on-disk network file.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use roxmltree::{Document, Node};
use serde::{Deserialize, Serialize};

use super::{DependencyNetwork, Link};
use crate::error::{Error, Result};
use crate::matching::{Archetype, InstanceRef, MatcherKind};

const GRAPHML_NS: &str = "http://graphml.graphdrawing.org/xmlns";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    GraphMl,
    Dot,
    EdgeList,
}

impl ExportFormat {
    /// Format implied by a file extension (`graphml`, `dot`/`gv`, `tsv`/`txt`/`edgelist`).
    pub fn from_extension(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "graphml" | "xml" => Some(ExportFormat::GraphMl),
            "dot" | "gv" => Some(ExportFormat::Dot),
            "tsv" | "txt" | "edgelist" => Some(ExportFormat::EdgeList),
            _ => None,
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphml" => Ok(ExportFormat::GraphMl),
            "dot" => Ok(ExportFormat::Dot),
            "edgelist" => Ok(ExportFormat::EdgeList),
            other => Err(Error::InvalidArgument(format!(
                "unknown export format `{other}`"
            ))),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::GraphMl => "graphml",
            ExportFormat::Dot => "dot",
            ExportFormat::EdgeList => "edgelist",
        })
    }
}

pub fn export(n: &DependencyNetwork, format: ExportFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        ExportFormat::GraphMl => write_graphml(n, out)?,
        ExportFormat::Dot => write_dot(n, out)?,
        ExportFormat::EdgeList => write_edgelist(n, out)?,
    }
    out.flush()?;
    Ok(())
}

fn write_edgelist(n: &DependencyNetwork, out: &mut dyn Write) -> std::io::Result<()> {
    for l in n.links() {
        writeln!(out, "{}\t{}\t{}", l.source, l.target, l.weight)?;
    }
    Ok(())
}

fn write_dot(n: &DependencyNetwork, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "digraph \"{}\" {{",
        dot_escape(n.matcher().network_label())
    )?;
    for node in n.nodes() {
        writeln!(
            out,
            "  {} [label=\"{}\", instance_count={}];",
            node.id,
            dot_escape(&node.label),
            node.instance_count
        )?;
    }
    for l in n.links() {
        writeln!(out, "  {} -> {} [weight={}];", l.source, l.target, l.weight)?;
    }
    writeln!(out, "}}")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn write_graphml(n: &DependencyNetwork, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(out, r#"<graphml xmlns="{GRAPHML_NS}">"#)?;
    for (id, domain, ty) in [
        ("matcher", "graph", "string"),
        ("self_loop_count", "graph", "int"),
        ("label", "node", "string"),
        ("key", "node", "string"),
        ("instance_count", "node", "int"),
        ("weight", "edge", "int"),
    ] {
        writeln!(
            out,
            r#"  <key id="{id}" for="{domain}" attr.name="{id}" attr.type="{ty}"/>"#
        )?;
    }
    writeln!(out, r#"  <graph id="G" edgedefault="directed">"#)?;
    writeln!(out, r#"    <data key="matcher">{}</data>"#, n.matcher())?;
    writeln!(
        out,
        r#"    <data key="self_loop_count">{}</data>"#,
        n.self_loop_count()
    )?;
    for node in n.nodes() {
        writeln!(
            out,
            r#"    <node id="n{}"><data key="label">{}</data><data key="key">{}</data><data key="instance_count">{}</data></node>"#,
            node.id,
            xml_escape(&node.label),
            xml_escape(&node.key),
            node.instance_count
        )?;
    }
    for l in n.links() {
        writeln!(
            out,
            r#"    <edge source="n{}" target="n{}"><data key="weight">{}</data></edge>"#,
            l.source, l.target, l.weight
        )?;
    }
    writeln!(out, "  </graph>")?;
    writeln!(out, "</graphml>")
}

/// Reads a GraphML document written by [`export`]. Node ids are assigned
/// in document order; membership and witnesses are left empty.
pub fn read_graphml(text: &str, origin: &Path) -> Result<DependencyNetwork> {
    let xml_err = |message: String| Error::Xml {
        file: origin.to_path_buf(),
        message,
    };
    let doc = Document::parse(text).map_err(|e| xml_err(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "graphml" {
        return Err(xml_err(format!(
            "expected <graphml>, found <{}>",
            root.tag_name().name()
        )));
    }
    let graph = root
        .children()
        .find(|c| c.has_tag_name((GRAPHML_NS, "graph")) || c.has_tag_name("graph"))
        .ok_or_else(|| xml_err("missing <graph>".into()))?;

    let data = |node: Node, key: &str| -> Option<String> {
        node.children()
            .find(|c| c.tag_name().name() == "data" && c.attribute("key") == Some(key))
            .map(|c| c.text().unwrap_or("").to_string())
    };
    let int = |node: Node, key: &str| -> Result<usize> {
        match data(node, key) {
            None => Ok(0),
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| xml_err(format!("`{key}` is not an integer: `{v}`"))),
        }
    };

    let matcher = match data(graph, "matcher") {
        Some(m) => m.trim().parse()?,
        None => MatcherKind::SyntacticEqual,
    };
    let self_loop_count = int(graph, "self_loop_count")?;

    let mut index = std::collections::HashMap::new();
    let mut nodes = Vec::new();
    for node in graph.children().filter(|c| c.tag_name().name() == "node") {
        let xml_id = node
            .attribute("id")
            .ok_or_else(|| xml_err("node without id".into()))?;
        let id = nodes.len();
        if index.insert(xml_id.to_string(), id).is_some() {
            return Err(Error::DuplicateId {
                kind: "node",
                id: xml_id.to_string(),
            });
        }
        let label = data(node, "label").unwrap_or_else(|| xml_id.to_string());
        nodes.push(Archetype {
            id,
            key: data(node, "key").unwrap_or_else(|| label.clone()),
            label,
            members: Vec::new(),
            instance_count: int(node, "instance_count")?,
        });
    }
    let mut links = Vec::new();
    for edge in graph.children().filter(|c| c.tag_name().name() == "edge") {
        let end = |attr: &str| -> Result<usize> {
            let v = edge
                .attribute(attr)
                .ok_or_else(|| xml_err(format!("edge without {attr}")))?;
            index
                .get(v)
                .copied()
                .ok_or_else(|| xml_err(format!("edge {attr} `{v}` is not a node")))
        };
        links.push(Link {
            source: end("source")?,
            target: end("target")?,
            weight: int(edge, "weight")?.max(1),
            witness_operations: Vec::new(),
        });
    }
    DependencyNetwork::from_parts(nodes, links, matcher, self_loop_count)
}

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    matcher: MatcherKind,
    nodes: Vec<SidecarNode>,
    links: Vec<SidecarLink>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SidecarNode {
    id: usize,
    members: Vec<InstanceRef>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SidecarLink {
    source: usize,
    target: usize,
    witness_operations: Vec<String>,
}

/// `<net-file>.members.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".members.json");
    PathBuf::from(s)
}

/// Writes the network as GraphML at `path` and its archetype membership and
/// link witnesses to the sidecar next to it.
pub fn save_network(n: &DependencyNetwork, path: &Path) -> Result<()> {
    let mut graphml = Vec::new();
    export(n, ExportFormat::GraphMl, &mut graphml)?;
    std::fs::write(path, graphml).map_err(|e| Error::io(path, e))?;

    let sidecar = Sidecar {
        matcher: n.matcher(),
        nodes: n
            .nodes()
            .iter()
            .map(|a| SidecarNode {
                id: a.id,
                members: a.members.clone(),
            })
            .collect(),
        links: n
            .links()
            .iter()
            .map(|l| SidecarLink {
                source: l.source,
                target: l.target,
                witness_operations: l.witness_operations.clone(),
            })
            .collect(),
    };
    let side = sidecar_path(path);
    let text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    std::fs::write(&side, text).map_err(|e| Error::io(&side, e))
}

/// Reads a network file; the sidecar is optional.
pub fn load_network(path: &Path) -> Result<DependencyNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut n = read_graphml(&text, path)?;
    let side = sidecar_path(path);
    if !side.exists() {
        return Ok(n);
    }
    let text = std::fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let sidecar: Sidecar = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: side.clone(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mismatch = |what: &str| Error::Schema {
        path: side.clone(),
        location: what.to_string(),
        message: "does not match the GraphML file".into(),
    };
    if sidecar.matcher != n.matcher
        || sidecar.nodes.len() != n.nodes.len()
        || sidecar.links.len() != n.links.len()
    {
        return Err(mismatch("header"));
    }
    for (node, side_node) in n.nodes.iter_mut().zip(sidecar.nodes) {
        if side_node.id != node.id || side_node.members.len() != node.instance_count {
            return Err(mismatch("nodes"));
        }
        node.members = side_node.members;
    }
    for (link, side_link) in n.links.iter_mut().zip(sidecar.links) {
        if (side_link.source, side_link.target) != (link.source, link.target)
            || side_link.witness_operations.len() != link.weight
        {
            return Err(mismatch("links"));
        }
        link.witness_operations = side_link.witness_operations;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::CollectionBuilder;
    use crate::depnet::build_network;

    fn render(n: &DependencyNetwork, f: ExportFormat) -> String {
        let mut buf = Vec::new();
        export(n, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn edgelist_of_single_link() {
        let n = DependencyNetwork::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(render(&n, ExportFormat::EdgeList), "0\t1\t1\n");
    }

    #[test]
    fn edgelist_of_k2() {
        let c = CollectionBuilder::new()
            .operation("op2", ["c", "d"], ["e", "f"])
            .build()
            .unwrap();
        let n = build_network(&c, MatcherKind::SyntacticEqual);
        assert_eq!(
            render(&n, ExportFormat::EdgeList),
            "0\t2\t1\n0\t3\t1\n1\t2\t1\n1\t3\t1\n"
        );
    }

    #[test]
    fn empty_network_exports() {
        let n = DependencyNetwork::from_edges(0, &[]).unwrap();
        assert_eq!(render(&n, ExportFormat::EdgeList), "");
        let gml = render(&n, ExportFormat::GraphMl);
        let back = read_graphml(&gml, Path::new("x")).unwrap();
        assert_eq!(back.node_count(), 0);
    }

    #[test]
    fn graphml_roundtrip_with_escaping() {
        let c = CollectionBuilder::new()
            .operation("op", ["a<&>\"'"], ["b", "b"])
            .build()
            .unwrap();
        let n = build_network(&c, MatcherKind::SyntacticEqual);
        let gml = render(&n, ExportFormat::GraphMl);
        let back = read_graphml(&gml, Path::new("x")).unwrap();
        assert_eq!(back.nodes()[0].label, "a<&>\"'");
        assert_eq!(back.links()[0].weight, 2);
        assert_eq!(back.nodes()[1].instance_count, 2);
    }

    #[test]
    fn dot_is_directed_and_escaped() {
        let c = CollectionBuilder::new()
            .operation("op", ["a\"q"], ["b"])
            .build()
            .unwrap();
        let n = build_network(&c, MatcherKind::SyntacticEqual);
        let dot = render(&n, ExportFormat::Dot);
        assert!(dot.starts_with("digraph \"N^Eq\" {"));
        assert!(dot.contains("label=\"a\\\"q\""));
        assert!(dot.contains("0 -> 1 [weight=1];"));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            ExportFormat::from_extension(Path::new("a.dot")),
            Some(ExportFormat::Dot)
        );
        assert_eq!(
            ExportFormat::from_extension(Path::new("a.graphml")),
            Some(ExportFormat::GraphMl)
        );
        assert_eq!(
            ExportFormat::from_extension(Path::new("a.tsv")),
            Some(ExportFormat::EdgeList)
        );
        assert_eq!(ExportFormat::from_extension(Path::new("a.png")), None);
    }

    #[test]
    fn unwritable_sink() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("closed"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        let n = DependencyNetwork::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            export(&n, ExportFormat::EdgeList, &mut Broken),
            Err(Error::Write(_))
        ));
    }

    #[test]
    fn saved_network_reloads_with_membership() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.graphml");
        let c = CollectionBuilder::new()
            .operation("op1", ["a", "b"], ["c"])
            .operation("op2", ["a"], ["c", "a"])
            .build()
            .unwrap();
        let n = build_network(&c, MatcherKind::SyntacticEqual);
        save_network(&n, &path).unwrap();
        assert!(sidecar_path(&path).exists());
        assert_eq!(load_network(&path).unwrap(), n);

        std::fs::remove_file(sidecar_path(&path)).unwrap();
        let bare = load_network(&path).unwrap();
        assert_eq!(bare.graph(), n.graph());
        assert!(bare.nodes()[0].members.is_empty());
    }
}
