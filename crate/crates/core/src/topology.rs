//! Device connectivity graphs, generators and Steiner-tree routing costs.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::MajoranaMapping;
use crate::pauli::PauliString;

const UNREACHABLE: u32 = u32::MAX;

/// Largest terminal count solved exactly.
pub const EXACT_STEINER_LIMIT: usize = 10;

/// Undirected, simple, connected qubit connectivity graph.
#[derive(Debug)]
pub struct HardwareGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    dist: OnceLock<Vec<Vec<u32>>>,
}

impl Clone for HardwareGraph {
    fn clone(&self) -> Self {
        HardwareGraph {
            n: self.n,
            adj: self.adj.clone(),
            dist: self.dist.clone(),
        }
    }
}

impl PartialEq for HardwareGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for HardwareGraph {}

/// Serialised graph: `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescription {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TopologyKind {
    HeavyHexagon { rings: usize },
    Linear { n: usize },
    Star { n: usize },
    Grid { rows: usize, cols: usize },
    Complete { n: usize },
}

impl HardwareGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::new_unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn new_unchecked_connectivity(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no qubits".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(HardwareGraph {
            n,
            adj,
            dist: OnceLock::new(),
        })
    }

    fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn from_description(desc: &GraphDescription) -> Result<Self> {
        let edges: Vec<(usize, usize)> = desc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(desc.n, &edges)
    }

    pub fn to_description(&self) -> GraphDescription {
        GraphDescription {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn generate(kind: TopologyKind) -> Result<Self> {
        match kind {
            TopologyKind::HeavyHexagon { rings } => heavy_hexagon(rings),
            TopologyKind::Linear { n } => linear(n),
            TopologyKind::Star { n } => star(n),
            TopologyKind::Grid { rows, cols } => grid(rows, cols),
            TopologyKind::Complete { n } => complete(n),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut edges = self.edges();
        edges.push((u, v));
        Self::new(self.n, &edges)
    }

    fn bfs(&self, src: usize) -> Vec<u32> {
        let mut d = vec![UNREACHABLE; self.n];
        d[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if d[v] == UNREACHABLE {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        d
    }

    /// All-pairs hop distances, computed once.
    pub fn distances(&self) -> &[Vec<u32>] {
        self.dist.get_or_init(|| (0..self.n).map(|s| self.bfs(s)).collect())
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distances()[u][v]
    }

    pub fn eccentricity(&self, u: usize) -> u32 {
        self.distances()[u].iter().copied().max().unwrap_or(0)
    }

    /// Qubits of minimal eccentricity, ascending.
    pub fn center(&self) -> Vec<usize> {
        let ecc: Vec<u32> = (0..self.n).map(|u| self.eccentricity(u)).collect();
        let best = ecc.iter().copied().min().unwrap_or(0);
        (0..self.n).filter(|&u| ecc[u] == best).collect()
    }

    /// Lexicographically smallest shortest path from `u` to `v`.
    pub fn shortest_path(&self, u: usize, v: usize) -> Vec<usize> {
        let d = self.distances();
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| d[w][v] + 1 == d[cur][v])
                .expect("connected graph");
            path.push(cur);
        }
        path
    }

    /// A longest shortest path; endpoints are the lexicographically smallest pair.
    pub fn diameter_path(&self) -> Vec<usize> {
        let d = self.distances();
        let mut best = (0, 0, 0);
        for (u, row) in d.iter().enumerate() {
            for (v, &duv) in row.iter().enumerate().skip(u + 1) {
                if duv > best.0 {
                    best = (duv, u, v);
                }
            }
        }
        self.shortest_path(best.1, best.2)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph hardware {\n");
        for u in 0..self.n {
            let _ = writeln!(out, "  {u};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Minimal (≤ 10 terminals) or 2-approximate Steiner tree node set.
    pub fn steiner_tree(&self, terminals: &[usize]) -> Result<Vec<usize>> {
        let mut terms: Vec<usize> = terminals.to_vec();
        terms.sort_unstable();
        terms.dedup();
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(&q) = terms.iter().find(|&&q| q >= self.n) {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        if terms.len() <= EXACT_STEINER_LIMIT {
            Ok(self.steiner_exact(&terms))
        } else {
            Ok(self.steiner_approx(&terms))
        }
    }

    fn steiner_exact(&self, terms: &[usize]) -> Vec<usize> {
        #[derive(Clone, Copy)]
        enum Back {
            None,
            Leaf,
            Move(usize),
            Merge(usize),
        }
        let k = terms.len();
        let full = (1usize << k) - 1;
        let n = self.n;
        let mut cost = vec![vec![UNREACHABLE; n]; full + 1];
        let mut back = vec![vec![Back::None; n]; full + 1];
        for (i, &t) in terms.iter().enumerate() {
            cost[1 << i][t] = 0;
            back[1 << i][t] = Back::Leaf;
        }
        for s in 1..=full {
            if s.count_ones() > 1 {
                // merge two disjoint parts at a shared node
                for v in 0..n {
                    let mut sub = (s - 1) & s;
                    while sub > 0 {
                        let rest = s ^ sub;
                        if sub < rest {
                            let (a, b) = (cost[sub][v], cost[rest][v]);
                            if a != UNREACHABLE && b != UNREACHABLE && a + b < cost[s][v] {
                                cost[s][v] = a + b;
                                back[s][v] = Back::Merge(sub);
                            }
                        }
                        sub = (sub - 1) & s;
                    }
                }
            }
            let mut heap: BinaryHeap<Reverse<(u32, usize)>> = (0..n)
                .filter(|&v| cost[s][v] != UNREACHABLE)
                .map(|v| Reverse((cost[s][v], v)))
                .collect();
            while let Some(Reverse((c, u))) = heap.pop() {
                if c > cost[s][u] {
                    continue;
                }
                for &w in &self.adj[u] {
                    if c + 1 < cost[s][w] {
                        cost[s][w] = c + 1;
                        back[s][w] = Back::Move(u);
                        heap.push(Reverse((c + 1, w)));
                    }
                }
            }
        }
        let mut nodes = BTreeSet::new();
        let mut stack = vec![(full, terms[0])];
        while let Some((s, v)) = stack.pop() {
            nodes.insert(v);
            match back[s][v] {
                Back::Leaf | Back::None => {}
                Back::Move(u) => stack.push((s, u)),
                Back::Merge(sub) => {
                    stack.push((sub, v));
                    stack.push((s ^ sub, v));
                }
            }
        }
        nodes.into_iter().collect()
    }

    fn steiner_approx(&self, terms: &[usize]) -> Vec<usize> {
        let d = self.distances();
        let k = terms.len();
        // Prim on the metric closure over terminals
        let mut in_tree = vec![false; k];
        let mut best = vec![(UNREACHABLE, 0usize); k];
        best[0] = (0, 0);
        let mut nodes: BTreeSet<usize> = BTreeSet::new();
        for _ in 0..k {
            let i = (0..k)
                .filter(|&i| !in_tree[i])
                .min_by_key(|&i| (best[i].0, i))
                .expect("terminal left");
            in_tree[i] = true;
            nodes.extend(self.shortest_path(terms[best[i].1], terms[i]));
            for j in 0..k {
                let dij = d[terms[i]][terms[j]];
                if !in_tree[j] && dij < best[j].0 {
                    best[j] = (dij, i);
                }
            }
        }
        // spanning tree of the union, then strip non-terminal leaves
        let root = terms[0];
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut children: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([root]);
        let mut seen = BTreeSet::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if nodes.contains(&w) && seen.insert(w) {
                    parent.insert(w, u);
                    *children.entry(u).or_default() += 1;
                    queue.push_back(w);
                }
            }
        }
        let terminal: HashSet<usize> = terms.iter().copied().collect();
        let mut kept = seen;
        let mut leaves: Vec<usize> = kept
            .iter()
            .copied()
            .filter(|u| children.get(u).copied().unwrap_or(0) == 0 && !terminal.contains(u))
            .collect();
        while let Some(u) = leaves.pop() {
            kept.remove(&u);
            if let Some(&p) = parent.get(&u) {
                let c = children.get_mut(&p).expect("parent has children");
                *c -= 1;
                if *c == 0 && !terminal.contains(&p) {
                    leaves.push(p);
                }
            }
        }
        kept.into_iter().collect()
    }

    /// Steiner routing cost of one operator support.
    pub fn steiner_cost(&self, support: &[usize]) -> Result<StringCost> {
        let nodes = self.steiner_tree(support)?;
        let mut support: Vec<usize> = support.to_vec();
        support.sort_unstable();
        support.dedup();
        Ok(StringCost {
            overhead: nodes.len() - support.len(),
            support,
            steiner_nodes: nodes,
        })
    }
}

/// Support, Steiner node set and bridging-node count of one Pauli string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringCost {
    pub support: Vec<usize>,
    pub steiner_nodes: Vec<usize>,
    pub overhead: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapCost {
    pub per_string: Vec<StringCost>,
    pub total_overhead: usize,
    pub max_overhead: usize,
}

impl SwapCost {
    pub fn from_strings(g: &HardwareGraph, strings: &[PauliString]) -> Result<Self> {
        let mut per_string = Vec::with_capacity(strings.len());
        for s in strings {
            let support = s.support();
            per_string.push(if support.is_empty() {
                StringCost { support: vec![], steiner_nodes: vec![], overhead: 0 }
            } else {
                g.steiner_cost(&support)?
            });
        }
        Ok(SwapCost {
            total_overhead: per_string.iter().map(|c| c.overhead).sum(),
            max_overhead: per_string.iter().map(|c| c.overhead).max().unwrap_or(0),
            per_string,
        })
    }
}

/// Majorana products making up a single (two modes) or double (four modes)
/// excitation: all choices of one string per mode, multiplied in mode order.
pub fn excitation_products(m: &MajoranaMapping, modes: &[usize]) -> Result<Vec<PauliString>> {
    if modes.len() != 2 && modes.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "an excitation needs 2 or 4 modes, got {}",
            modes.len()
        )));
    }
    let mut seen = HashSet::new();
    for &j in modes {
        if j >= m.n_modes() {
            return Err(Error::ModeOutOfRange { index: j, n: m.n_modes() });
        }
        if !seen.insert(j) {
            return Err(Error::RepeatedMode(j));
        }
    }
    let mut out = vec![PauliString::identity(m.n_qubits())];
    for &j in modes {
        let mode = m.mode(j)?;
        let mut next = Vec::with_capacity(out.len() * 2);
        for p in &out {
            next.push(p.multiply(&mode.even)?);
            next.push(p.multiply(&mode.odd)?);
        }
        out = next;
    }
    Ok(out)
}

pub fn excitation_cost(m: &MajoranaMapping, g: &HardwareGraph, modes: &[usize]) -> Result<SwapCost> {
    if g.n_qubits() != m.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: m.n_qubits(),
            found: g.n_qubits(),
        });
    }
    SwapCost::from_strings(g, &excitation_products(m, modes)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub n_edges: usize,
    pub center: Vec<usize>,
    pub radius: u32,
    pub diameter: u32,
    pub diameter_path: Vec<usize>,
}

pub fn graph_metrics(g: &HardwareGraph) -> GraphMetrics {
    let center = g.center();
    let path = g.diameter_path();
    GraphMetrics {
        n: g.n_qubits(),
        n_edges: g.n_edges(),
        radius: g.eccentricity(center[0]),
        diameter: (path.len() - 1) as u32,
        center,
        diameter_path: path,
    }
}

pub fn linear(n: usize) -> Result<HardwareGraph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    HardwareGraph::new(n, &edges)
}

/// Hub 0 joined to spokes `1..n`.
pub fn star(n: usize) -> Result<HardwareGraph> {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    HardwareGraph::new(n, &edges)
}

pub fn grid(rows: usize, cols: usize) -> Result<HardwareGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let u = r * cols + c;
            if c + 1 < cols {
                edges.push((u, u + 1));
            }
            if r + 1 < rows {
                edges.push((u, u + cols));
            }
        }
    }
    HardwareGraph::new(rows * cols, &edges)
}

pub fn complete(n: usize) -> Result<HardwareGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    HardwareGraph::new(n, &edges)
}

// Honeycomb points use integer coordinates (a, b) at (a·√3/2, b/2); hexagon
// centers sit at (-1, 1) plus the lattice spanned by (2, 0) and (1, 3).
const CORNERS: [(i64, i64); 6] = [(1, 1), (0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1)];
const HEX_STEPS: [(i64, i64); 6] = [(2, 0), (-2, 0), (1, 3), (-1, -3), (1, -3), (-1, 3)];

fn is_center(p: (i64, i64)) -> bool {
    let (x, y) = (p.0 + 1, p.1 - 1);
    y.rem_euclid(3) == 0 && (x - y / 3).rem_euclid(2) == 0
}

fn honeycomb_neighbours(v: (i64, i64)) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for (i, k) in CORNERS.iter().enumerate() {
        let c = (v.0 - k.0, v.1 - k.1);
        if is_center(c) {
            for j in [(i + 1) % 6, (i + 5) % 6] {
                out.insert((c.0 + CORNERS[j].0, c.1 + CORNERS[j].1));
            }
        }
    }
    out
}

/// Heavy-hexagon patch: `rings = 1` is the three hexagons around one vertex
/// (37 qubits); each further ring adds every hexagon adjacent to the patch.
///
/// Qubits are numbered by hop distance from the central vertex, then by
/// angle, then by radius.
pub fn heavy_hexagon(rings: usize) -> Result<HardwareGraph> {
    if rings == 0 {
        return Err(Error::InvalidParameter("heavy hexagon needs rings >= 1".into()));
    }
    let mut hexes: BTreeSet<(i64, i64)> = [(-1, 1), (1, 1), (0, -2)].into_iter().collect();
    for _ in 1..rings {
        let grown: Vec<(i64, i64)> = hexes
            .iter()
            .flat_map(|c| HEX_STEPS.iter().map(move |s| (c.0 + s.0, c.1 + s.1)))
            .collect();
        hexes.extend(grown);
    }
    let mut vertices = BTreeSet::new();
    let mut hc_edges = BTreeSet::new();
    for c in &hexes {
        for i in 0..6 {
            let a = (c.0 + CORNERS[i].0, c.1 + CORNERS[i].1);
            let b = (c.0 + CORNERS[(i + 1) % 6].0, c.1 + CORNERS[(i + 1) % 6].1);
            vertices.insert(a);
            hc_edges.insert((a.min(b), a.max(b)));
        }
    }
    // doubled coordinates so that edge midpoints are integral
    let dbl = |p: (i64, i64)| (2 * p.0, 2 * p.1);
    let mut points: BTreeSet<(i64, i64)> = vertices.iter().map(|&v| dbl(v)).collect();
    let mut links: Vec<((i64, i64), (i64, i64))> = Vec::new();
    for &(a, b) in &hc_edges {
        let m = (a.0 + b.0, a.1 + b.1);
        points.insert(m);
        links.push((dbl(a), m));
        links.push((dbl(b), m));
    }
    for &v in &vertices {
        for w in honeycomb_neighbours(v) {
            if !hc_edges.contains(&(v.min(w), v.max(w))) {
                let m = (v.0 + w.0, v.1 + w.1);
                points.insert(m);
                links.push((dbl(v), m));
            }
        }
    }
    let points: Vec<(i64, i64)> = points.into_iter().collect();
    let index: HashMap<(i64, i64), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let raw_edges: Vec<(usize, usize)> = links.iter().map(|(a, b)| (index[a], index[b])).collect();
    let raw = HardwareGraph::new(points.len(), &raw_edges)?;
    let hops = raw.bfs(index[&(0, 0)]);

    let key = |i: usize| {
        let (a, b) = points[i];
        let (x, y) = (a as f64 * 3f64.sqrt() / 4.0, b as f64 / 4.0);
        let mut angle = y.atan2(x).to_degrees();
        if angle < 31.0 {
            angle += 360.0;
        }
        (hops[i], angle, x.hypot(y))
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let (ki, kj) = (key(i), key(j));
        ki.0.cmp(&kj.0)
            .then(ki.1.total_cmp(&kj.1))
            .then(ki.2.total_cmp(&kj.2))
    });
    let mut relabel = vec![0; points.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let edges: Vec<(usize, usize)> = raw_edges.iter().map(|&(u, v)| (relabel[u], relabel[v])).collect();
    HardwareGraph::new(points.len(), &edges)
}
