//! Text formats for graphs, covers and colorings, cryptographic digests of
//! their canonical encodings, and the certificate records the command-line
//! tools emit. Everything is line-oriented with LF endings, `#` comments,
//! and a single canonical serialization so that digests are meaningful.

use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::construct::{StarCertificate, TightCertificate};
use crate::cover::{Coloring, Cover, Matching};
use crate::graph::Graph;
use crate::search::{FamilyKind, Symmetry};
use crate::solver::Mode;
use crate::{Color, Error, Result, Vertex};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Numbered significant lines: blank and `#` lines are skipped everywhere.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Canonical graph encoding: header `graph <n> <m>` followed by `e <u> <v>`
/// lines with u < v in ascending order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {}", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = significant_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty graph file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "graph" {
        return Err(perr(ln, "expected `graph <n> <m>`"));
    }
    let n: usize = parts[1].parse().map_err(|_| perr(ln, "bad vertex count"))?;
    let m: usize = parts[2].parse().map_err(|_| perr(ln, "bad edge count"))?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| perr(0, "unexpected end of file in edge list"))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "e" {
            return Err(perr(ln, "expected `e <u> <v>`"));
        }
        let u: usize = parts[1].parse().map_err(|_| perr(ln, "bad endpoint"))?;
        let v: usize = parts[2].parse().map_err(|_| perr(ln, "bad endpoint"))?;
        if u >= v {
            return Err(perr(ln, "edges must satisfy u < v"));
        }
        if let Some(&last) = edges.last() {
            if last >= (u, v) {
                return Err(perr(ln, "edges must be in ascending order"));
            }
        }
        edges.push((u, v));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after edge list"));
    }
    Graph::new(n, edges).map_err(|e| perr(0, e.to_string()))
}

/// Canonical cover encoding: header `cover k=<k> gamma=<g>`, one `list`
/// line per vertex in ascending order, one `match` line per edge in
/// ascending order with pairs ascending by source color.
pub fn serialize_cover(h: &Cover) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cover k={} gamma={}", h.k(), h.palette());
    for v in h.graph().vertices() {
        let colors: Vec<String> = h.list(v).iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "list {v}: {}", colors.join(" "));
    }
    for &(u, v) in h.graph().edges() {
        let pairs: Vec<String> = h
            .matching(u, v)
            .map(|m| m.pairs().map(|(a, b)| format!("{a}:{b}")).collect())
            .unwrap_or_default();
        let _ = writeln!(out, "match {u} {v}: {}", pairs.join(" "));
    }
    out
}

pub fn parse_cover(text: &str, g: &Graph) -> Result<Cover> {
    let mut lines = significant_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty cover file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "cover" {
        return Err(perr(ln, "expected `cover k=<k> gamma=<g>`"));
    }
    let k: usize = parts[1]
        .strip_prefix("k=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(ln, "bad k field"))?;
    let gamma: usize = parts[2]
        .strip_prefix("gamma=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(ln, "bad gamma field"))?;

    let mut lists: Vec<BTreeSet<Color>> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| perr(0, "unexpected end of file in list block"))?;
        let rest = line
            .strip_prefix(&format!("list {v}:"))
            .ok_or_else(|| perr(ln, format!("expected `list {v}: ...`")))?;
        let mut colors = BTreeSet::new();
        let mut prev: Option<usize> = None;
        for tok in rest.split_whitespace() {
            let c: usize = tok.parse().map_err(|_| perr(ln, "bad color"))?;
            if prev.map_or(false, |p| p >= c) {
                return Err(perr(ln, "list colors must be strictly ascending"));
            }
            prev = Some(c);
            colors.insert(c);
        }
        lists.push(colors);
    }

    let mut matchings: BTreeMap<(Vertex, Vertex), Matching> = BTreeMap::new();
    for &(u, v) in g.edges() {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| perr(0, "unexpected end of file in match block"))?;
        let rest = line
            .strip_prefix(&format!("match {u} {v}:"))
            .ok_or_else(|| perr(ln, format!("expected `match {u} {v}: ...`")))?;
        let mut pairs = Vec::new();
        let mut prev: Option<usize> = None;
        for tok in rest.split_whitespace() {
            let (a, b) = tok
                .split_once(':')
                .ok_or_else(|| perr(ln, "expected `<a>:<b>` pair"))?;
            let a: usize = a.parse().map_err(|_| perr(ln, "bad source color"))?;
            let b: usize = b.parse().map_err(|_| perr(ln, "bad target color"))?;
            if prev.map_or(false, |p| p >= a) {
                return Err(perr(ln, "pairs must be strictly ascending by source"));
            }
            prev = Some(a);
            pairs.push((a, b));
        }
        matchings.insert(
            (u, v),
            Matching::from_pairs(pairs).map_err(|e| perr(ln, e.to_string()))?,
        );
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after match block"));
    }
    Cover::new(g.clone(), k, gamma, lists, matchings).map_err(|e| perr(0, e.to_string()))
}

/// Coloring encoding: `color <v> <c>` lines for assigned vertices,
/// ascending by vertex.
pub fn serialize_coloring(f: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in f.iter() {
        let _ = writeln!(out, "color {v} {c}");
    }
    out
}

pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let mut f = Coloring::new(n);
    let mut prev: Option<usize> = None;
    for (ln, line) in significant_lines(text) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "color" {
            return Err(perr(ln, "expected `color <v> <c>`"));
        }
        let v: usize = parts[1].parse().map_err(|_| perr(ln, "bad vertex"))?;
        let c: usize = parts[2].parse().map_err(|_| perr(ln, "bad color"))?;
        if v >= n {
            return Err(perr(ln, "vertex out of range"));
        }
        if prev.map_or(false, |p| p >= v) {
            return Err(perr(ln, "vertices must be strictly ascending"));
        }
        prev = Some(v);
        f.set(v, c);
    }
    Ok(f)
}

/// Hex SHA-256 of a canonical encoding.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDigests {
    pub graph_sha: String,
    pub cover_sha: String,
}

pub fn instance_digests(h: &Cover) -> InstanceDigests {
    InstanceDigests {
        graph_sha: digest(&serialize_graph(h.graph())),
        cover_sha: digest(&serialize_cover(h)),
    }
}

/// Machine-checkable verdict artifacts, one record per line plus payload.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Coloring {
        mode: Mode,
        k: usize,
        nodes: u64,
        digests: InstanceDigests,
        coloring: Coloring,
    },
    Unsat {
        mode: Mode,
        k: usize,
        nodes: u64,
        digests: InstanceDigests,
    },
    TightStructure {
        digests: InstanceDigests,
        cert: TightCertificate,
    },
    StarStructure {
        digests: InstanceDigests,
        cert: StarCertificate,
    },
    SearchReport {
        graph_sha: String,
        k: usize,
        mode: Mode,
        family: FamilyKind,
        symmetry: Symmetry,
        covers: u128,
        witness: Option<Cover>,
    },
}

pub fn serialize_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Coloring {
            mode,
            k,
            nodes,
            digests,
            coloring,
        } => {
            format!(
                "verdict SAT mode={mode} k={k} nodes={nodes} graph-sha={} cover-sha={}\n{}",
                digests.graph_sha,
                digests.cover_sha,
                serialize_coloring(coloring)
            )
        }
        Certificate::Unsat {
            mode,
            k,
            nodes,
            digests,
        } => format!(
            "verdict UNSAT mode={mode} k={k} nodes={nodes} graph-sha={} cover-sha={}\n",
            digests.graph_sha, digests.cover_sha
        ),
        Certificate::TightStructure { digests, cert } => {
            let constant = match cert.constant_when_d2 {
                None => "na".to_string(),
                Some(b) => b.to_string(),
            };
            format!(
                "tight d={} structure-ok={} plain={} derangements={} shared-incoming={} constant={} graph-sha={} cover-sha={}\n",
                cert.d,
                cert.structure_ok,
                cert.cover_plain,
                cert.all_derangements,
                cert.shared_incoming,
                constant,
                digests.graph_sha,
                digests.cover_sha
            )
        }
        Certificate::StarStructure { digests, cert } => format!(
            "star lists-ok={} derangements-ok={} shared-center={} graph-sha={} cover-sha={}\n",
            cert.lists_ok,
            cert.derangements_ok,
            cert.shared_from_center,
            digests.graph_sha,
            digests.cover_sha
        ),
        Certificate::SearchReport {
            graph_sha,
            k,
            mode,
            family,
            symmetry,
            covers,
            witness,
        } => {
            let outcome = if witness.is_some() {
                "witness"
            } else {
                "allColorable"
            };
            let mut out = format!(
                "search graph-sha={graph_sha} k={k} mode={mode} family={family} symmetry={symmetry} outcome={outcome} covers={covers}\n"
            );
            if let Some(w) = witness {
                out.push_str(&serialize_cover(w));
            }
            out
        }
    }
}

/// Parses a certificate. SAT colorings and search witnesses need the graph
/// for context; pass it when one may be present.
pub fn parse_certificate(text: &str, graph: Option<&Graph>) -> Result<Certificate> {
    let mut lines = significant_lines(text);
    let (ln, head) = lines.next().ok_or_else(|| perr(0, "empty certificate"))?;
    let fields = |s: &str| -> BTreeMap<String, String> {
        s.split_whitespace()
            .filter_map(|tok| tok.split_once('='))
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let take = |map: &BTreeMap<String, String>, key: &str| -> Result<String> {
        map.get(key)
            .cloned()
            .ok_or_else(|| perr(ln, format!("missing field `{key}`")))
    };
    if let Some(rest) = head.strip_prefix("verdict ") {
        let sat = rest.starts_with("SAT");
        let map = fields(rest);
        let mode: Mode = take(&map, "mode")?.parse()?;
        let k: usize = take(&map, "k")?.parse().map_err(|_| perr(ln, "bad k"))?;
        let nodes: u64 = take(&map, "nodes")?
            .parse()
            .map_err(|_| perr(ln, "bad nodes"))?;
        let digests = InstanceDigests {
            graph_sha: take(&map, "graph-sha")?,
            cover_sha: take(&map, "cover-sha")?,
        };
        if sat {
            let g = graph.ok_or_else(|| perr(ln, "graph context required for SAT certificate"))?;
            let rest_text: String = text
                .lines()
                .skip_while(|l| !l.trim().starts_with("verdict"))
                .skip(1)
                .collect::<Vec<_>>()
                .join("\n");
            let coloring = parse_coloring(&rest_text, g.n())?;
            Ok(Certificate::Coloring {
                mode,
                k,
                nodes,
                digests,
                coloring,
            })
        } else {
            Ok(Certificate::Unsat {
                mode,
                k,
                nodes,
                digests,
            })
        }
    } else if let Some(rest) = head.strip_prefix("tight ") {
        let map = fields(rest);
        let parse_bool = |key: &str| -> Result<bool> {
            take(&map, key)?
                .parse()
                .map_err(|_| perr(ln, format!("bad boolean `{key}`")))
        };
        let constant = match take(&map, "constant")?.as_str() {
            "na" => None,
            "true" => Some(true),
            "false" => Some(false),
            _ => return Err(perr(ln, "bad constant field")),
        };
        Ok(Certificate::TightStructure {
            digests: InstanceDigests {
                graph_sha: take(&map, "graph-sha")?,
                cover_sha: take(&map, "cover-sha")?,
            },
            cert: TightCertificate {
                d: take(&map, "d")?.parse().map_err(|_| perr(ln, "bad d"))?,
                structure_ok: parse_bool("structure-ok")?,
                cover_plain: parse_bool("plain")?,
                all_derangements: parse_bool("derangements")?,
                shared_incoming: parse_bool("shared-incoming")?,
                constant_when_d2: constant,
            },
        })
    } else if let Some(rest) = head.strip_prefix("star ") {
        let map = fields(rest);
        let parse_bool = |key: &str| -> Result<bool> {
            take(&map, key)?
                .parse()
                .map_err(|_| perr(ln, format!("bad boolean `{key}`")))
        };
        Ok(Certificate::StarStructure {
            digests: InstanceDigests {
                graph_sha: take(&map, "graph-sha")?,
                cover_sha: take(&map, "cover-sha")?,
            },
            cert: StarCertificate {
                lists_ok: parse_bool("lists-ok")?,
                derangements_ok: parse_bool("derangements-ok")?,
                shared_from_center: parse_bool("shared-center")?,
            },
        })
    } else if let Some(rest) = head.strip_prefix("search ") {
        let map = fields(rest);
        let outcome = take(&map, "outcome")?;
        let witness = if outcome == "witness" {
            let g = graph.ok_or_else(|| perr(ln, "graph context required for witness"))?;
            let rest_text: String = text
                .lines()
                .skip_while(|l| !l.trim().starts_with("search"))
                .skip(1)
                .collect::<Vec<_>>()
                .join("\n");
            Some(parse_cover(&rest_text, g)?)
        } else if outcome == "allColorable" {
            None
        } else {
            return Err(perr(ln, "bad outcome field"));
        };
        Ok(Certificate::SearchReport {
            graph_sha: take(&map, "graph-sha")?,
            k: take(&map, "k")?.parse().map_err(|_| perr(ln, "bad k"))?,
            mode: take(&map, "mode")?.parse()?,
            family: take(&map, "family")?.parse()?,
            symmetry: take(&map, "symmetry")?.parse()?,
            covers: take(&map, "covers")?
                .parse()
                .map_err(|_| perr(ln, "bad covers"))?,
            witness,
        })
    } else {
        Err(perr(ln, "unknown certificate record"))
    }
}
