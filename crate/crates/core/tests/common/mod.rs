#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use bonsai_core::bonsai::Labelling;
use bonsai_core::topology::HardwareGraph;
use bonsai_core::tree::RootedTree;
use rand::Rng;

/// Random spanning tree plus `extra` random chords.
pub fn random_connected_graph<R: Rng>(n: usize, extra: usize, rng: &mut R) -> HardwareGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    if n > 1 {
        for _ in 0..extra {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let e = (a.min(b), a.max(b));
            if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                edges.push(e);
            }
        }
    }
    HardwareGraph::new(n, &edges).expect("connected by construction")
}

pub fn random_shape<R: Rng>(n: usize, rng: &mut R) -> RootedTree {
    let mut parent = vec![None];
    let mut kids = vec![0usize; n];
    for v in 1..n {
        loop {
            let p = rng.random_range(0..v);
            if kids[p] < 3 {
                kids[p] += 1;
                parent.push(Some(p));
                break;
            }
        }
    }
    RootedTree::from_parents(0, parent).expect("valid shape")
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Reduces a table cell to a whitespace-free canonical form.
pub fn normalise(cell: &str) -> String {
    let mut s = cell
        .replace("\\frac{1}{2}", "½")
        .replace("\\mp", "∓")
        .replace("\\pm", "±")
        .replace('$', "");
    s.retain(|c| !c.is_whitespace() && c != '{' && c != '}');
    // P_n^± and P^±_n are the same ladder operator
    let mut out = String::new();
    let mut rest = s.as_str();
    while let Some(i) = rest.find("P_") {
        out.push_str(&rest[..i]);
        let tail = &rest[i + 2..];
        let digits: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
        let after = &tail[digits.len()..];
        if let Some(after) = after.strip_prefix("^±") {
            out.push_str(&format!("P^±_{digits}"));
            rest = after;
        } else {
            out.push_str("P_");
            rest = tail;
        }
    }
    out.push_str(rest);
    out
}

pub struct GoldenRow {
    pub mode: usize,
    pub homogeneous: String,
    pub heterogeneous: String,
}

pub fn golden_rows() -> Vec<GoldenRow> {
    let text = std::fs::read_to_string(fixture_path("heavy_hex37_operators.tex")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let cells: Vec<&str> = l.split('&').collect();
            assert_eq!(cells.len(), 3, "bad row {l}");
            GoldenRow {
                mode: cells[0].trim().parse().unwrap(),
                homogeneous: cells[1].to_string(),
                heterogeneous: cells[2].to_string(),
            }
        })
        .collect()
}

/// Corrected cells keyed by (labelling, mode).
pub fn errata() -> HashMap<(Labelling, usize), String> {
    let text = std::fs::read_to_string(fixture_path("heavy_hex37_errata.txt")).unwrap();
    let mut out = HashMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let lab = match parts[0] {
            "homogeneous" => Labelling::Homogeneous,
            "heterogeneous" => Labelling::Heterogeneous,
            other => panic!("unknown column {other}"),
        };
        out.insert((lab, parts[1].parse().unwrap()), parts[2].to_string());
    }
    out
}

pub fn verdict(criterion: u32, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}
