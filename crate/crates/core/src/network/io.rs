//! Edge-list / node-list CSV and GEXF 1.2 serialization.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::format::{csv_reader, csv_writer, fmt_float};

use super::graph::{GraphBuilder, WeightedGraph};
use super::GraphError;

pub const EDGE_HEADER: [&str; 3] = ["source", "target", "weight"];
pub const NODE_HEADER: [&str; 3] = ["id", "label", "degree"];

/// `source,target,weight`, one row per undirected edge. The endpoint pair is
/// written in lexicographic order and rows are sorted.
pub fn write_edge_list(g: &WeightedGraph) -> String {
    let mut rows: Vec<(&str, &str, u32)> = g
        .edges()
        .map(|(u, v, w)| {
            let (a, b) = (g.label(u), g.label(v));
            if a <= b {
                (a, b, w)
            } else {
                (b, a, w)
            }
        })
        .collect();
    rows.sort_unstable();
    let mut out = csv_writer();
    out.write_record(EDGE_HEADER).expect("in-memory write");
    for (a, b, w) in rows {
        out.write_record([a, b, &w.to_string()])
            .expect("in-memory write");
    }
    into_string(out)
}

/// `id,label,degree` in node-index order.
pub fn write_node_list(g: &WeightedGraph) -> String {
    let mut out = csv_writer();
    out.write_record(NODE_HEADER).expect("in-memory write");
    for v in 0..g.node_count() {
        out.write_record([&v.to_string(), g.label(v), &g.degree(v).to_string()])
            .expect("in-memory write");
    }
    into_string(out)
}

pub(crate) fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv output of utf-8 input")
}

/// Rebuilds a graph from its node list and edge list. Node indices follow
/// the `id` column, which must run 0, 1, 2, ... in order.
pub fn read_graph_csv(nodes_csv: &str, edges_csv: &str) -> Result<WeightedGraph, GraphError> {
    let mut builder = GraphBuilder::new();
    let mut labels: Vec<String> = Vec::new();
    let mut reader = csv_reader(nodes_csv.as_bytes());
    check_header(&mut reader, &NODE_HEADER, "node list")?;
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| GraphError::csv("node list", line, e.to_string()))?;
        if row.len() != NODE_HEADER.len() {
            return Err(GraphError::csv("node list", line, "expected 3 columns"));
        }
        let id: usize = row[0]
            .parse()
            .map_err(|_| GraphError::csv("node list", line, format!("bad id {:?}", &row[0])))?;
        if id != i {
            return Err(GraphError::csv(
                "node list",
                line,
                format!("id {id} out of sequence"),
            ));
        }
        if row[1].is_empty() {
            return Err(GraphError::csv("node list", line, "empty label"));
        }
        if builder.add_node(&row[1]) != id {
            return Err(GraphError::csv(
                "node list",
                line,
                format!("duplicate label {:?}", &row[1]),
            ));
        }
        labels.push(row[1].to_string());
    }
    let lookup: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let mut reader = csv_reader(edges_csv.as_bytes());
    check_header(&mut reader, &EDGE_HEADER, "edge list")?;
    let mut seen = HashSet::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| GraphError::csv("edge list", line, e.to_string()))?;
        if row.len() != EDGE_HEADER.len() {
            return Err(GraphError::csv("edge list", line, "expected 3 columns"));
        }
        let endpoint = |name: &str| {
            lookup
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::csv("edge list", line, format!("unknown node {name:?}")))
        };
        let u = endpoint(&row[0])?;
        let v = endpoint(&row[1])?;
        if u == v {
            return Err(GraphError::csv("edge list", line, "self-loop"));
        }
        let w: u32 = row[2].parse().ok().filter(|&w| w > 0).ok_or_else(|| {
            GraphError::csv("edge list", line, format!("bad weight {:?}", &row[2]))
        })?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::csv("edge list", line, "duplicate edge"));
        }
        builder.add_weight(u, v, w);
    }
    Ok(builder.build())
}

fn check_header(
    reader: &mut csv::Reader<&[u8]>,
    expected: &[&str],
    what: &'static str,
) -> Result<(), GraphError> {
    let header = reader
        .headers()
        .map_err(|e| GraphError::csv(what, 1, e.to_string()))?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(GraphError::csv(
            what,
            1,
            format!("expected header {:?}", expected.join(",")),
        ));
    }
    Ok(())
}

/// Values of one per-node attribute for GEXF export.
#[derive(Debug, Clone, Copy)]
pub enum AttributeValues<'a> {
    Integer(&'a [u64]),
    Double(&'a [f64]),
}

#[derive(Debug, Clone, Copy)]
pub struct NodeAttribute<'a> {
    pub title: &'a str,
    pub values: AttributeValues<'a>,
}

/// Static undirected GEXF 1.2 document. No timestamps are written, so the
/// output depends only on the graph and the attributes.
pub fn write_gexf(
    g: &WeightedGraph,
    description: &str,
    attributes: &[NodeAttribute<'_>],
) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<gexf xmlns=\"http://gexf.net/1.2\" version=\"1.2\">\n");
    out.push_str("  <meta>\n    <creator>coauthnet</creator>\n");
    let _ = writeln!(
        out,
        "    <description>{}</description>",
        xml_escape(description)
    );
    out.push_str("  </meta>\n");
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    if !attributes.is_empty() {
        out.push_str("    <attributes class=\"node\">\n");
        for (i, a) in attributes.iter().enumerate() {
            let ty = match a.values {
                AttributeValues::Integer(_) => "integer",
                AttributeValues::Double(_) => "double",
            };
            let _ = writeln!(
                out,
                "      <attribute id=\"{i}\" title=\"{}\" type=\"{ty}\"/>",
                xml_escape(a.title)
            );
        }
        out.push_str("    </attributes>\n");
    }
    out.push_str("    <nodes>\n");
    for v in 0..g.node_count() {
        let label = xml_escape(g.label(v));
        if attributes.is_empty() {
            let _ = writeln!(out, "      <node id=\"{v}\" label=\"{label}\"/>");
            continue;
        }
        let _ = writeln!(out, "      <node id=\"{v}\" label=\"{label}\">");
        out.push_str("        <attvalues>\n");
        for (i, a) in attributes.iter().enumerate() {
            let value = match a.values {
                AttributeValues::Integer(xs) => xs[v].to_string(),
                AttributeValues::Double(xs) => fmt_float(xs[v]),
            };
            let _ = writeln!(out, "          <attvalue for=\"{i}\" value=\"{value}\"/>");
        }
        out.push_str("        </attvalues>\n      </node>\n");
    }
    out.push_str("    </nodes>\n    <edges>\n");
    for (i, (u, v, w)) in g.edges().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"{i}\" source=\"{u}\" target=\"{v}\" weight=\"{w}\"/>"
        );
    }
    out.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out
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
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => {}
            c => out.push(c),
        }
    }
    out
}
