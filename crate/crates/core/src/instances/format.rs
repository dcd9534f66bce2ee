//! Text formats for instances and solutions.
//!
//! Set Cover:
//! ```text
//! p setcover <n> <m>
//! s <cost> <e1> <e2> ...        (m lines, 0-based elements)
//! ```
//!
//! Steiner problems use an STP-like layout with 1-based vertex ids:
//! ```text
//! SECTION Graph
//! Nodes <n>
//! Arcs <a>            (or Edges <e> with `E u v c` lines for undirected graphs)
//! A <tail> <head> <cost>
//! END
//! SECTION Terminals
//! Root <r>
//! T <v>               (DST)   or   G <v1> <v2> ...  (GST, one line per group)
//! END
//! EOF
//! ```
//!
//! Lines starting with `c` or `#` and blank lines are ignored everywhere.

use std::fmt::Write as _;

use super::graph::{Edge, VertexId, WeightedDigraph};
use super::problems::{
    ArborescenceSolution, CoverSolution, DstInstance, GstInstance, SetCoverInstance,
};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::exact::LabelCoverInstance;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(t) if *t == "c" || t.starts_with('#') => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {tok:?}")))
}

fn cost_tok(line: usize, tok: &str) -> Result<Cost> {
    tok.parse::<Cost>()
        .map_err(|e| Error::parse(line, e.to_string()))
}

fn one_based(line: usize, tok: &str, n: usize) -> Result<VertexId> {
    let v: usize = num(line, tok, "vertex id")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn expect_len(line: usize, toks: &[&str], len: usize) -> Result<()> {
    if toks.len() != len {
        return Err(Error::parse(
            line,
            format!("expected {len} fields, found {}", toks.len()),
        ));
    }
    Ok(())
}

pub fn write_setcover(sc: &SetCoverInstance) -> String {
    let mut out = format!("p setcover {} {}\n", sc.universe_size(), sc.set_count());
    for set in sc.sets() {
        write!(out, "s {}", set.cost).unwrap();
        for e in &set.elements {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_setcover(text: &str) -> Result<SetCoverInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "setcover" {
        return Err(Error::parse(hline, "expected `p setcover <n> <m>`"));
    }
    let n: usize = num(hline, header[2], "universe size")?;
    let m: usize = num(hline, header[3], "set count")?;
    let mut sets = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        if toks[0] != "s" || toks.len() < 2 {
            return Err(Error::parse(line, "expected `s <cost> <elements...>`"));
        }
        if sets.len() == m {
            return Err(Error::parse(line, format!("more than {m} sets")));
        }
        let cost = cost_tok(line, toks[1])?;
        let mut elements = Vec::with_capacity(toks.len() - 2);
        for tok in &toks[2..] {
            let e: usize = num(line, tok, "element")?;
            if e >= n {
                return Err(Error::parse(line, format!("element {e} outside 0..{n}")));
            }
            elements.push(e);
        }
        sets.push((elements, cost));
    }
    if sets.len() != m {
        return Err(Error::parse(
            last_line,
            format!("expected {m} sets, found {}", sets.len()),
        ));
    }
    SetCoverInstance::new(n, sets).map_err(|e| Error::parse(hline, e.to_string()))
}

/// Either kind of Steiner instance found in an STP file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteinerInstance {
    Dst(DstInstance),
    Gst(GstInstance),
}

fn write_graph_section(out: &mut String, g: &WeightedDigraph, undirected: bool) {
    out.push_str("SECTION Graph\n");
    writeln!(out, "Nodes {}", g.vertex_count()).unwrap();
    if undirected {
        let edges: Vec<&Edge> = g.arcs().iter().filter(|a| a.tail < a.head).collect();
        writeln!(out, "Edges {}", edges.len()).unwrap();
        for a in edges {
            writeln!(out, "E {} {} {}", a.tail + 1, a.head + 1, a.cost).unwrap();
        }
    } else {
        writeln!(out, "Arcs {}", g.arc_count()).unwrap();
        for a in g.arcs() {
            writeln!(out, "A {} {} {}", a.tail + 1, a.head + 1, a.cost).unwrap();
        }
    }
    out.push_str("END\n\n");
}

pub fn write_dst(d: &DstInstance) -> String {
    let mut out = String::new();
    write_graph_section(&mut out, d.graph(), false);
    out.push_str("SECTION Terminals\n");
    writeln!(out, "Root {}", d.root() + 1).unwrap();
    for t in d.terminals() {
        writeln!(out, "T {}", t + 1).unwrap();
    }
    out.push_str("END\n\nEOF\n");
    out
}

/// Writes a GST instance; symmetric graphs are written as `E` lines.
pub fn write_gst(g: &GstInstance) -> String {
    let mut out = String::new();
    write_graph_section(&mut out, g.graph(), g.graph().is_symmetric());
    out.push_str("SECTION Terminals\n");
    writeln!(out, "Root {}", g.root() + 1).unwrap();
    for group in g.groups() {
        out.push('G');
        for v in group {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out.push_str("END\n\nEOF\n");
    out
}

pub fn write_steiner(inst: &SteinerInstance) -> String {
    match inst {
        SteinerInstance::Dst(d) => write_dst(d),
        SteinerInstance::Gst(g) => write_gst(g),
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Graph,
    Terminals,
    Other,
}

pub fn parse_steiner(text: &str) -> Result<SteinerInstance> {
    let mut section = Section::None;
    let mut nodes: Option<usize> = None;
    let mut declared_arcs: Option<(usize, usize)> = None; // (count, line)
    let mut declared_edges: Option<(usize, usize)> = None;
    let mut arcs: Vec<Edge> = Vec::new();
    let mut arc_lines = 0usize;
    let mut edge_lines = 0usize;
    let mut root: Option<VertexId> = None;
    let mut terminals: Vec<VertexId> = Vec::new();
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut saw_eof = false;
    let mut last_line = 0usize;

    for (line, toks) in content_lines(text) {
        last_line = line;
        if saw_eof {
            return Err(Error::parse(line, "content after EOF"));
        }
        let key = toks[0].to_ascii_uppercase();
        if key == "SECTION" {
            if section != Section::None {
                return Err(Error::parse(line, "SECTION inside an unterminated section"));
            }
            expect_len(line, &toks, 2)?;
            section = match toks[1].to_ascii_lowercase().as_str() {
                "graph" => Section::Graph,
                "terminals" => Section::Terminals,
                _ => Section::Other,
            };
            continue;
        }
        if key == "END" {
            if section == Section::None {
                return Err(Error::parse(line, "END outside a section"));
            }
            section = Section::None;
            continue;
        }
        if key == "EOF" {
            if section != Section::None {
                return Err(Error::parse(line, "EOF inside a section"));
            }
            saw_eof = true;
            continue;
        }
        match section {
            Section::Other => {}
            Section::None => {
                // SteinLib files may start with a magic header line.
                if !(line == 1 || toks[0].eq_ignore_ascii_case("33D32945")) {
                    return Err(Error::parse(
                        line,
                        format!("unexpected {:?} outside a section", toks[0]),
                    ));
                }
            }
            Section::Graph => match key.as_str() {
                "NODES" => {
                    expect_len(line, &toks, 2)?;
                    nodes = Some(num(line, toks[1], "node count")?);
                }
                "ARCS" => {
                    expect_len(line, &toks, 2)?;
                    declared_arcs = Some((num(line, toks[1], "arc count")?, line));
                }
                "EDGES" => {
                    expect_len(line, &toks, 2)?;
                    declared_edges = Some((num(line, toks[1], "edge count")?, line));
                }
                "A" | "E" => {
                    expect_len(line, &toks, 4)?;
                    let n = nodes.ok_or_else(|| Error::parse(line, "arc before Nodes"))?;
                    let u = one_based(line, toks[1], n)?;
                    let v = one_based(line, toks[2], n)?;
                    if u == v {
                        return Err(Error::parse(line, "self-loop"));
                    }
                    let c = cost_tok(line, toks[3])?;
                    arcs.push(Edge::new(u, v, c));
                    if key == "E" {
                        arcs.push(Edge::new(v, u, c));
                        edge_lines += 1;
                    } else {
                        arc_lines += 1;
                    }
                }
                _ => {
                    return Err(Error::parse(
                        line,
                        format!("unknown graph keyword {:?}", toks[0]),
                    ))
                }
            },
            Section::Terminals => {
                let n = nodes.ok_or_else(|| Error::parse(line, "terminals before graph"))?;
                match key.as_str() {
                    "ROOT" => {
                        expect_len(line, &toks, 2)?;
                        if root.is_some() {
                            return Err(Error::parse(line, "duplicate Root"));
                        }
                        root = Some(one_based(line, toks[1], n)?);
                    }
                    "T" => {
                        expect_len(line, &toks, 2)?;
                        terminals.push(one_based(line, toks[1], n)?);
                    }
                    "G" => {
                        if toks.len() < 2 {
                            return Err(Error::parse(line, "empty group"));
                        }
                        let group = toks[1..]
                            .iter()
                            .map(|t| one_based(line, t, n))
                            .collect::<Result<Vec<_>>>()?;
                        groups.push(group);
                    }
                    "TERMINALS" => {}
                    _ => {
                        return Err(Error::parse(
                            line,
                            format!("unknown terminal keyword {:?}", toks[0]),
                        ))
                    }
                }
            }
        }
    }
    if section != Section::None {
        return Err(Error::parse(last_line, "unterminated section"));
    }
    if !saw_eof {
        return Err(Error::parse(last_line, "missing EOF"));
    }
    if let Some((count, line)) = declared_arcs {
        if count != arc_lines {
            return Err(Error::parse(
                line,
                format!("declared {count} arcs, found {arc_lines}"),
            ));
        }
    }
    if let Some((count, line)) = declared_edges {
        if count != edge_lines {
            return Err(Error::parse(
                line,
                format!("declared {count} edges, found {edge_lines}"),
            ));
        }
    }
    let n = nodes.ok_or_else(|| Error::parse(last_line, "missing Nodes"))?;
    let root = root.ok_or_else(|| Error::parse(last_line, "missing Root"))?;
    if !terminals.is_empty() && !groups.is_empty() {
        return Err(Error::parse(last_line, "both T and G lines present"));
    }
    let graph =
        WeightedDigraph::new(n, arcs).map_err(|e| Error::parse(last_line, e.to_string()))?;
    if groups.is_empty() {
        DstInstance::new(graph, root, terminals)
            .map(SteinerInstance::Dst)
            .map_err(|e| Error::parse(last_line, e.to_string()))
    } else {
        GstInstance::new(graph, root, groups)
            .map(SteinerInstance::Gst)
            .map_err(|e| Error::parse(last_line, e.to_string()))
    }
}

/// A solution as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionFile {
    /// Arcs are 0-based in memory, 1-based on disk.
    Tree {
        root: VertexId,
        arcs: Vec<(VertexId, VertexId)>,
        cost: Cost,
    },
    Cover {
        chosen: Vec<usize>,
        cost: Cost,
    },
}

pub fn write_tree_solution(sol: &ArborescenceSolution) -> String {
    let mut out = String::from("solution tree\n");
    writeln!(out, "Cost {}", sol.cost).unwrap();
    writeln!(out, "Root {}", sol.root + 1).unwrap();
    for a in &sol.arcs {
        writeln!(out, "A {} {}", a.tail + 1, a.head + 1).unwrap();
    }
    out
}

pub fn write_cover_solution(sol: &CoverSolution) -> String {
    let mut out = String::from("solution setcover\n");
    writeln!(out, "Cost {}", sol.cost).unwrap();
    for i in &sol.chosen {
        writeln!(out, "S {i}").unwrap();
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header.len() != 2 || header[0] != "solution" {
        return Err(Error::parse(
            hline,
            "expected `solution tree` or `solution setcover`",
        ));
    }
    let tree = match header[1] {
        "tree" => true,
        "setcover" => false,
        other => {
            return Err(Error::parse(
                hline,
                format!("unknown solution kind {other:?}"),
            ))
        }
    };
    let mut cost = None;
    let mut root = None;
    let mut arcs = Vec::new();
    let mut chosen = Vec::new();
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        match (toks[0], tree) {
            ("Cost", _) => {
                expect_len(line, &toks, 2)?;
                cost = Some(cost_tok(line, toks[1])?);
            }
            ("Root", true) => {
                expect_len(line, &toks, 2)?;
                root = Some(one_based(line, toks[1], usize::MAX)?);
            }
            ("A", true) => {
                expect_len(line, &toks, 3)?;
                arcs.push((
                    one_based(line, toks[1], usize::MAX)?,
                    one_based(line, toks[2], usize::MAX)?,
                ));
            }
            ("S", false) => {
                expect_len(line, &toks, 2)?;
                chosen.push(num(line, toks[1], "set index")?);
            }
            (other, _) => return Err(Error::parse(line, format!("unexpected {other:?}"))),
        }
    }
    let cost = cost.ok_or_else(|| Error::parse(last_line, "missing Cost"))?;
    if tree {
        let root = root.ok_or_else(|| Error::parse(last_line, "missing Root"))?;
        Ok(SolutionFile::Tree { root, arcs, cost })
    } else {
        Ok(SolutionFile::Cover { chosen, cost })
    }
}

/// Label Cover text format:
/// ```text
/// p labelcover <a_count> <b_count> <sigma_a> <sigma_b> <edges>
/// e <a> <b> <pi(0)> <pi(1)> ... <pi(sigma_a - 1)>     (0-based)
/// ```
pub fn write_labelcover(lc: &LabelCoverInstance) -> String {
    let mut out = format!(
        "p labelcover {} {} {} {} {}\n",
        lc.a_count(),
        lc.b_count(),
        lc.sigma_a(),
        lc.sigma_b(),
        lc.edges().len()
    );
    for (e, &(a, b)) in lc.edges().iter().enumerate() {
        write!(out, "e {a} {b}").unwrap();
        for &x in lc.projection(e) {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_labelcover(text: &str) -> Result<LabelCoverInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header.len() != 7 || header[0] != "p" || header[1] != "labelcover" {
        return Err(Error::parse(
            hline,
            "expected `p labelcover <a> <b> <sigma_a> <sigma_b> <edges>`",
        ));
    }
    let a_count: usize = num(hline, header[2], "a_count")?;
    let b_count: usize = num(hline, header[3], "b_count")?;
    let sigma_a: usize = num(hline, header[4], "sigma_a")?;
    let sigma_b: usize = num(hline, header[5], "sigma_b")?;
    let m: usize = num(hline, header[6], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut projections = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        if toks[0] != "e" {
            return Err(Error::parse(line, "expected `e <a> <b> <projection...>`"));
        }
        expect_len(line, &toks, 3 + sigma_a)?;
        let a: usize = num(line, toks[1], "A-vertex")?;
        let b: usize = num(line, toks[2], "B-vertex")?;
        let proj = toks[3..]
            .iter()
            .map(|t| num::<usize>(line, t, "label"))
            .collect::<Result<Vec<_>>>()?;
        edges.push((a, b));
        projections.push(proj);
    }
    if edges.len() != m {
        return Err(Error::parse(
            last_line,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    LabelCoverInstance::new(a_count, b_count, sigma_a, sigma_b, edges, projections)
        .map_err(|e| Error::parse(hline, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DST: &str = "SECTION Graph\nNodes 3\nArcs 2\nA 1 2 1.5\nA 2 3 0\nEND\n\nSECTION Terminals\nRoot 1\nT 3\nEND\n\nEOF\n";

    #[test]
    fn dst_round_trip_is_byte_identical() {
        let inst = parse_steiner(DST).unwrap();
        assert_eq!(write_steiner(&inst), DST);
        let SteinerInstance::Dst(d) = inst else {
            panic!("expected DST")
        };
        assert_eq!(d.root(), 0);
        assert_eq!(d.terminals(), &[2]);
        assert_eq!(d.graph().arc_cost(0, 1), Some("1.5".parse().unwrap()));
    }

    #[test]
    fn gst_round_trip() {
        let text = "SECTION Graph\nNodes 3\nEdges 2\nE 1 2 1\nE 2 3 2\nEND\n\nSECTION Terminals\nRoot 1\nG 2 3\nG 3\nEND\n\nEOF\n";
        let inst = parse_steiner(text).unwrap();
        assert!(matches!(inst, SteinerInstance::Gst(_)));
        assert_eq!(write_steiner(&inst), text);
    }

    #[test]
    fn steiner_errors_carry_line_numbers() {
        let bad = DST.replace("A 2 3 0", "A 2 9 0");
        assert!(matches!(
            parse_steiner(&bad),
            Err(Error::Parse { line: 5, .. })
        ));
        let bad = DST.replace("Arcs 2", "Arcs 3");
        assert!(matches!(
            parse_steiner(&bad),
            Err(Error::Parse { line: 3, .. })
        ));
        let bad = DST.replace("EOF\n", "");
        assert!(parse_steiner(&bad).is_err());
        let bad = DST.replace("A 1 2 1.5", "A 1 2 -1");
        assert!(matches!(
            parse_steiner(&bad),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn setcover_round_trip_and_errors() {
        let text = "p setcover 3 2\ns 1 0 1\ns 0.5 2\n";
        let sc = parse_setcover(text).unwrap();
        assert_eq!(write_setcover(&sc), text);
        let spaced = "c comment\np  setcover 3 2\n\ns 1   0 1\ns 0.5 2\n";
        assert_eq!(write_setcover(&parse_setcover(spaced).unwrap()), text);
        assert!(matches!(
            parse_setcover("p setcover 3 1\ns 1 0 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_setcover("p setcover 3 2\ns 1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_setcover("p setcover 3 x\n").is_err());
    }

    #[test]
    fn solution_round_trip() {
        let sol = ArborescenceSolution::from_arcs(0, vec![Edge::new(0, 1, Cost::from_units(2))]);
        let text = write_tree_solution(&sol);
        assert_eq!(
            parse_solution(&text).unwrap(),
            SolutionFile::Tree {
                root: 0,
                arcs: vec![(0, 1)],
                cost: Cost::from_units(2)
            }
        );
        let cover = CoverSolution {
            chosen: vec![1, 3],
            cost: Cost::from_units(2),
        };
        assert_eq!(
            parse_solution(&write_cover_solution(&cover)).unwrap(),
            SolutionFile::Cover {
                chosen: vec![1, 3],
                cost: Cost::from_units(2)
            }
        );
    }

    #[test]
    fn labelcover_round_trip() {
        let text = "p labelcover 2 1 2 2 2\ne 0 0 0 1\ne 1 0 1 1\n";
        let lc = parse_labelcover(text).unwrap();
        assert_eq!(write_labelcover(&lc), text);
        assert!(parse_labelcover("p labelcover 2 1 2 2 1\ne 0 0 0 2\n").is_err());
    }
}
