//! Line-oriented text formats for graphs, maps and automorphisms.
//!
//! Graph: `vertex <id>` and `edge <id> <origin> <terminus> <λ origin> <λ terminus>`.
//! Map: a `map from <source file> to <target file>` header, then `vmap <x> <v> <m>`
//! for every source vertex and `emap <ē> <e|~e> <m>` for every source edge.
//! Automorphism: a graph block (labels optional) followed by `fv <v> <w>` and
//! `fe <e> <f|~f>` lines. `#` starts a comment everywhere.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::covering::{AdmissibleMap, GraphMorphism};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};
use crate::torus::GraphAutomorphism;

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let t: Vec<&str> = body.split_whitespace().collect();
        (!t.is_empty()).then_some((i + 1, t))
    })
}

fn arity(line: usize, t: &[&str], n: usize) -> Result<()> {
    if t.len() != n {
        return Err(parse_err(
            line,
            format!("`{}` takes {} arguments, found {}", t[0], n - 1, t.len() - 1),
        ));
    }
    Ok(())
}

fn label(line: usize, s: &str) -> Result<BigInt> {
    let l: BigInt = s
        .parse()
        .map_err(|_| parse_err(line, format!("invalid label `{s}`")))?;
    if l.is_zero() {
        return Err(parse_err(line, "zero label"));
    }
    Ok(l)
}

fn multiplicity(line: usize, s: &str) -> Result<u64> {
    match s.parse::<u64>() {
        Ok(m) if m > 0 => Ok(m),
        _ => Err(parse_err(line, format!("invalid multiplicity `{s}`"))),
    }
}

fn vertex(g: &LabelledGraph, line: usize, name: &str) -> Result<VertexId> {
    g.vertex_id(name)
        .ok_or_else(|| parse_err(line, format!("unknown vertex `{name}`")))
}

fn edge(g: &LabelledGraph, line: usize, name: &str) -> Result<EdgeId> {
    g.edge_id(name)
        .ok_or_else(|| parse_err(line, format!("unknown edge `{name}`")))
}

/// `e` or `~e`, as a dart of `g`.
fn dart(g: &LabelledGraph, line: usize, s: &str) -> Result<Dart> {
    match s.strip_prefix('~') {
        Some(name) => Ok(Dart::new(edge(g, line, name)?, 1)),
        None => Ok(Dart::forward(edge(g, line, s)?)),
    }
}

fn dart_name(g: &LabelledGraph, d: Dart) -> String {
    if d.side == 0 {
        g.edge_name(d.edge).to_string()
    } else {
        format!("~{}", g.edge_name(d.edge))
    }
}

/// Adds a graph declaration to `g`; returns false if the line is not one.
fn graph_line(g: &mut LabelledGraph, line: usize, t: &[&str], labels_required: bool) -> Result<bool> {
    let at = |e: Error| parse_err(line, e.to_string());
    match t[0] {
        "vertex" => {
            arity(line, t, 2)?;
            g.add_vertex(t[1]).map_err(at)?;
        }
        "edge" => {
            let (l0, l1) = if t.len() == 4 && !labels_required {
                (BigInt::from(1), BigInt::from(1))
            } else {
                arity(line, t, 6)?;
                (label(line, t[4])?, label(line, t[5])?)
            };
            let o = vertex(g, line, t[2])?;
            let w = vertex(g, line, t[3])?;
            g.add_edge(t[1], o, w, l0, l1).map_err(at)?;
        }
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn parse_graph(text: &str) -> Result<LabelledGraph> {
    let mut g = LabelledGraph::new();
    for (line, t) in tokens(text) {
        if !graph_line(&mut g, line, &t, true)? {
            return Err(parse_err(line, format!("unknown directive `{}`", t[0])));
        }
    }
    Ok(g)
}

pub fn emit_graph(g: &LabelledGraph) -> String {
    let mut s = String::new();
    for v in g.vertices() {
        writeln!(s, "vertex {}", g.vertex_name(v)).unwrap();
    }
    for e in g.edges() {
        let [o, t] = g.endpoints(e);
        let [l0, l1] = g.labels(e);
        writeln!(
            s,
            "edge {} {} {} {} {}",
            g.edge_name(e),
            g.vertex_name(o),
            g.vertex_name(t),
            l0,
            l1
        )
        .unwrap();
    }
    s
}

/// File names from the header of a map file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapHeader {
    pub source: String,
    pub target: String,
}

/// Reads the `map from ... to ...` header.
pub fn parse_map_header(text: &str) -> Result<MapHeader> {
    let Some((line, t)) = tokens(text).next() else {
        return Err(parse_err(1, "missing `map from <file> to <file>` header"));
    };
    if t.len() != 5 || t[0] != "map" || t[1] != "from" || t[3] != "to" {
        return Err(parse_err(line, "expected `map from <file> to <file>`"));
    }
    Ok(MapHeader {
        source: t[2].to_string(),
        target: t[4].to_string(),
    })
}

/// Parses the body of a map file between the given graphs.
///
/// Only the syntax and the identifiers are checked; admissibility is left to
/// [`verify_admissible`](crate::covering::verify_admissible).
pub fn parse_map(text: &str, source: &LabelledGraph, target: &LabelledGraph) -> Result<AdmissibleMap> {
    let mut vmap: Vec<Option<(VertexId, u64)>> = vec![None; source.vertex_count()];
    let mut emap: Vec<Option<(Dart, u64)>> = vec![None; source.edge_count()];
    let mut last_line = 0;
    for (k, (line, t)) in tokens(text).enumerate() {
        last_line = line;
        if k == 0 {
            parse_map_header(text)?;
            continue;
        }
        match t[0] {
            "vmap" => {
                arity(line, &t, 4)?;
                let x = vertex(source, line, t[1])?;
                let v = vertex(target, line, t[2])?;
                if vmap[x.0].replace((v, multiplicity(line, t[3])?)).is_some() {
                    return Err(parse_err(line, format!("vertex `{}` mapped twice", t[1])));
                }
            }
            "emap" => {
                arity(line, &t, 4)?;
                let e = edge(source, line, t[1])?;
                let d = dart(target, line, t[2])?;
                if emap[e.0].replace((d, multiplicity(line, t[3])?)).is_some() {
                    return Err(parse_err(line, format!("edge `{}` mapped twice", t[1])));
                }
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let end = last_line + 1;
    let mut vertex_map = Vec::new();
    let mut vm = Vec::new();
    for (x, slot) in vmap.into_iter().enumerate() {
        let (v, m) = slot.ok_or_else(|| {
            parse_err(end, format!("no vmap for vertex `{}`", source.vertex_name(VertexId(x))))
        })?;
        vertex_map.push(v);
        vm.push(m);
    }
    let mut dart_map = Vec::new();
    let mut em = Vec::new();
    for (e, slot) in emap.into_iter().enumerate() {
        let (d, m) = slot.ok_or_else(|| {
            parse_err(end, format!("no emap for edge `{}`", source.edge_name(EdgeId(e))))
        })?;
        dart_map.push(d);
        em.push(m);
    }
    let morphism = GraphMorphism {
        source: source.clone(),
        target: target.clone(),
        vertex_map,
        dart_map,
    };
    Ok(AdmissibleMap::from_parts(morphism, vm, em))
}

pub fn emit_map(m: &AdmissibleMap, source_file: &str, target_file: &str) -> String {
    let (src, tgt) = (m.source(), m.target());
    let mut s = format!("map from {source_file} to {target_file}\n");
    for x in src.vertices() {
        writeln!(
            s,
            "vmap {} {} {}",
            src.vertex_name(x),
            tgt.vertex_name(m.morphism.vertex(x)),
            m.vertex_mult(x)
        )
        .unwrap();
    }
    for e in src.edges() {
        writeln!(
            s,
            "emap {} {} {}",
            src.edge_name(e),
            dart_name(tgt, m.morphism.image(Dart::forward(e))),
            m.edge_mult(e)
        )
        .unwrap();
    }
    s
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<LabelledGraph> {
    parse_graph(&std::fs::read_to_string(path).map_err(|e| io_err(path, e))?)
}

/// Reads a map file together with the two graph files it names; relative
/// names are resolved against the map file's directory.
pub fn read_map(path: &Path) -> Result<AdmissibleMap> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let header = parse_map_header(&text)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let resolve = |name: &str| -> PathBuf { dir.join(name) };
    let source = read_graph(&resolve(&header.source))?;
    let target = read_graph(&resolve(&header.target))?;
    parse_map(&text, &source, &target)
}

pub fn parse_automorphism(text: &str) -> Result<GraphAutomorphism> {
    let mut g = LabelledGraph::new();
    let mut fv: Vec<(usize, String, String)> = Vec::new();
    let mut fe: Vec<(usize, String, String)> = Vec::new();
    for (line, t) in tokens(text) {
        match t[0] {
            "fv" | "fe" => {
                arity(line, &t, 3)?;
                let list = if t[0] == "fv" { &mut fv } else { &mut fe };
                list.push((line, t[1].to_string(), t[2].to_string()));
            }
            _ => {
                if !fv.is_empty() || !fe.is_empty() {
                    return Err(parse_err(line, format!("`{}` after the map lines", t[0])));
                }
                if !graph_line(&mut g, line, &t, false)? {
                    return Err(parse_err(line, format!("unknown directive `{}`", t[0])));
                }
            }
        }
    }
    let mut vertex_perm: Vec<Option<VertexId>> = vec![None; g.vertex_count()];
    for (line, a, b) in &fv {
        let v = vertex(&g, *line, a)?;
        let w = vertex(&g, *line, b)?;
        if vertex_perm[v.0].replace(w).is_some() {
            return Err(parse_err(*line, format!("vertex `{a}` mapped twice")));
        }
    }
    let mut dart_perm: Vec<Option<Dart>> = vec![None; g.edge_count()];
    for (line, a, b) in &fe {
        let e = edge(&g, *line, a)?;
        let d = dart(&g, *line, b)?;
        if dart_perm[e.0].replace(d).is_some() {
            return Err(parse_err(*line, format!("edge `{a}` mapped twice")));
        }
    }
    let end = text.lines().count() + 1;
    let vertex_perm = vertex_perm
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(end, format!("no fv for `{}`", g.vertex_name(VertexId(i))))))
        .collect::<Result<Vec<_>>>()?;
    let dart_perm = dart_perm
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| parse_err(end, format!("no fe for `{}`", g.edge_name(EdgeId(i))))))
        .collect::<Result<Vec<_>>>()?;
    GraphAutomorphism::new(g, vertex_perm, dart_perm)
}

pub fn emit_automorphism(a: &GraphAutomorphism) -> String {
    let g = &a.graph;
    let mut s = String::new();
    for v in g.vertices() {
        writeln!(s, "vertex {}", g.vertex_name(v)).unwrap();
    }
    for e in g.edges() {
        let [o, t] = g.endpoints(e);
        writeln!(s, "edge {} {} {}", g.edge_name(e), g.vertex_name(o), g.vertex_name(t)).unwrap();
    }
    for v in g.vertices() {
        writeln!(s, "fv {} {}", g.vertex_name(v), g.vertex_name(a.vertex_perm[v.0])).unwrap();
    }
    for e in g.edges() {
        writeln!(s, "fe {} {}", g.edge_name(e), dart_name(g, a.dart_perm[e.0])).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{verify_admissible, Admissibility};
    use crate::fixtures::*;

    #[test]
    fn graph_round_trip() {
        let text = "vertex v\nedge t v v 2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert_eq!(emit_graph(&g), text);
        for g in [triangle_abc(), path_abcd(), lollipop()] {
            assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# a loop\n\nvertex v   # base\nedge t v v 2 -3 # loop\n").unwrap();
        assert_eq!(g, bs(2, -3));
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let e = parse_graph("vertex v\nvertex w\nedge e v w 0 3\n").unwrap_err();
        assert_eq!(e, parse_err(3, "zero label"));
        assert_eq!(e.to_string(), "zero label, line 3");
        assert!(matches!(parse_graph("vertex v\nedge e v x 1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertex v\nvertex v"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertex v w"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("node v"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("vertex v\nedge e v v 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertex v\nedge e v v 2 x"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn map_round_trip() {
        let m = lollipop_index_two();
        let text = emit_map(&m, "cover.graph", "base.graph");
        assert!(text.starts_with("map from cover.graph to base.graph\n"));
        let back = parse_map(&text, m.source(), m.target()).unwrap();
        assert_eq!(back, m);
        assert_eq!(verify_admissible(&back), Admissibility::Admissible);
        assert_eq!(emit_map(&back, "cover.graph", "base.graph"), text);
    }

    #[test]
    fn map_errors() {
        let m = lollipop_index_two();
        let (s, t) = (m.source(), m.target());
        let text = emit_map(&m, "a", "b");
        let missing: String = text.lines().filter(|l| !l.starts_with("vmap y")).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_map(&missing, s, t), Err(Error::Parse { .. })));
        let dup = format!("{text}vmap y u 2\n");
        assert!(matches!(parse_map(&dup, s, t), Err(Error::Parse { .. })));
        let bad = text.replace("emap a e 1", "emap a ~q 1");
        assert!(matches!(parse_map(&bad, s, t), Err(Error::Parse { .. })));
        let zero = text.replace("emap a e 1", "emap a e 0");
        assert!(matches!(parse_map(&zero, s, t), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("vmap y u 2", s, t), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn automorphism_round_trip() {
        let text = "vertex P\nvertex Q\nedge a P Q\nedge b P Q\nedge c P Q\n\
                    fv P Q\nfv Q P\nfe a ~b\nfe b ~c\nfe c ~a\n";
        let a = parse_automorphism(text).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(emit_automorphism(&a), text);
        let labelled = text.replace("edge a P Q", "edge a P Q 4 5");
        assert_eq!(parse_automorphism(&labelled).unwrap().order(), 6);
        let broken = text.replace("fe c ~a", "fe c a");
        assert!(matches!(parse_automorphism(&broken), Err(Error::InvalidAutomorphism(_))));
        let missing = text.replace("fv Q P\n", "");
        assert!(matches!(parse_automorphism(&missing), Err(Error::Parse { .. })));
    }
}
