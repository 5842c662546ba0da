//! Rooted labelled ternary trees over qubits.
//!
//! Every qubit has three downward links labelled `X`, `Y` and `Z`. A link
//! either reaches a child qubit or is a leg. Following the path from the
//! root to a leg and collecting `P_u` for each link with label `P` leaving
//! qubit `u` produces one Pauli string per leg; a tree on `N` qubits has
//! `2N + 1` legs.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Label of a downward link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    X,
    Y,
    Z,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::X, Label::Y, Label::Z];

    pub fn index(self) -> usize {
        match self {
            Label::X => 0,
            Label::Y => 1,
            Label::Z => 2,
        }
    }

    pub fn pauli(self) -> Pauli {
        match self {
            Label::X => Pauli::X,
            Label::Y => Pauli::Y,
            Label::Z => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        self.pauli().symbol()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A labelled parent→child edge, as serialised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub parent: usize,
    pub child: usize,
    pub label: Label,
}

/// Serialised tree: `{"n": .., "root": .., "links": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDescription {
    pub n: usize,
    pub root: usize,
    pub links: Vec<Link>,
}

/// A structural defect found by [`TreeDescription::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeIssue {
    Empty,
    RootOutOfRange { root: usize },
    QubitOutOfRange { qubit: usize },
    SelfLoop { qubit: usize },
    RootHasParent { root: usize },
    MultipleParents { qubit: usize },
    DuplicateLabel { qubit: usize, label: Label },
    TooManyChildren { qubit: usize, count: usize },
    WrongEdgeCount { expected: usize, found: usize },
    Unreachable { qubits: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<TreeIssue>,
}

impl TreeDescription {
    /// Checks connectivity, acyclicity, branching and label uniqueness.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let n = self.n;
        if n == 0 {
            issues.push(TreeIssue::Empty);
            return ValidationReport { valid: false, issues };
        }
        if self.root >= n {
            issues.push(TreeIssue::RootOutOfRange { root: self.root });
        }
        let mut parent_count = vec![0usize; n];
        let mut used: Vec<[usize; 3]> = vec![[0; 3]; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for link in &self.links {
            let mut ok = true;
            for q in [link.parent, link.child] {
                if q >= n {
                    issues.push(TreeIssue::QubitOutOfRange { qubit: q });
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            if link.parent == link.child {
                issues.push(TreeIssue::SelfLoop { qubit: link.parent });
                continue;
            }
            parent_count[link.child] += 1;
            used[link.parent][link.label.index()] += 1;
            children[link.parent].push(link.child);
        }
        if self.root < n && parent_count[self.root] > 0 {
            issues.push(TreeIssue::RootHasParent { root: self.root });
        }
        for (q, &c) in parent_count.iter().enumerate() {
            if c > 1 {
                issues.push(TreeIssue::MultipleParents { qubit: q });
            }
        }
        for (q, counts) in used.iter().enumerate() {
            for label in Label::ALL {
                if counts[label.index()] > 1 {
                    issues.push(TreeIssue::DuplicateLabel { qubit: q, label });
                }
            }
            if children[q].len() > 3 {
                issues.push(TreeIssue::TooManyChildren {
                    qubit: q,
                    count: children[q].len(),
                });
            }
        }
        if self.links.len() != n - 1 {
            issues.push(TreeIssue::WrongEdgeCount {
                expected: n - 1,
                found: self.links.len(),
            });
        }
        if self.root < n {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([self.root]);
            seen[self.root] = true;
            while let Some(u) = queue.pop_front() {
                for &c in &children[u] {
                    if !seen[c] {
                        seen[c] = true;
                        queue.push_back(c);
                    }
                }
            }
            let missing: Vec<usize> = (0..n).filter(|&q| !seen[q]).collect();
            if !missing.is_empty() {
                issues.push(TreeIssue::Unreachable { qubits: missing });
            }
        }
        ValidationReport {
            valid: issues.is_empty(),
            issues,
        }
    }
}

/// A leg: a downward link of `owner` with no child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leg {
    pub owner: usize,
    pub label: Label,
}

/// A valid rooted ternary tree whose links carry X/Y/Z labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitTree {
    n: usize,
    root: usize,
    parent: Vec<Option<(usize, Label)>>,
    children: Vec<[Option<usize>; 3]>,
    depth: Vec<usize>,
}

impl QubitTree {
    pub fn from_description(desc: &TreeDescription) -> Result<Self> {
        let report = desc.validate();
        if !report.valid {
            let summary = serde_json::to_string(&report.issues).unwrap_or_default();
            return Err(Error::InvalidTree(summary));
        }
        let n = desc.n;
        let mut parent = vec![None; n];
        let mut children = vec![[None; 3]; n];
        for l in &desc.links {
            parent[l.child] = Some((l.parent, l.label));
            children[l.parent][l.label.index()] = Some(l.child);
        }
        let mut depth = vec![0; n];
        let mut queue = VecDeque::from([desc.root]);
        while let Some(u) = queue.pop_front() {
            for c in children[u].iter().flatten() {
                depth[*c] = depth[u] + 1;
                queue.push_back(*c);
            }
        }
        Ok(QubitTree {
            n,
            root: desc.root,
            parent,
            children,
            depth,
        })
    }

    pub fn from_links(n: usize, root: usize, links: Vec<Link>) -> Result<Self> {
        Self::from_description(&TreeDescription { n, root, links })
    }

    /// Links sorted by (parent, label).
    pub fn links(&self) -> Vec<Link> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for u in 0..self.n {
            for label in Label::ALL {
                if let Some(c) = self.children[u][label.index()] {
                    out.push(Link {
                        parent: u,
                        child: c,
                        label,
                    });
                }
            }
        }
        out
    }

    pub fn to_description(&self) -> TreeDescription {
        TreeDescription {
            n: self.n,
            root: self.root,
            links: self.links(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, u: usize) -> Option<(usize, Label)> {
        self.parent[u]
    }

    pub fn child(&self, u: usize, label: Label) -> Option<usize> {
        self.children[u][label.index()]
    }

    /// Children with their link labels, in X, Y, Z order.
    pub fn children(&self, u: usize) -> impl Iterator<Item = (Label, usize)> + '_ {
        Label::ALL
            .into_iter()
            .filter_map(move |l| self.children[u][l.index()].map(|c| (l, c)))
    }

    pub fn depth_of(&self, u: usize) -> usize {
        self.depth[u]
    }

    /// Edge count of the longest root-to-qubit path.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Ancestors of `u` from its parent up to the root, with the label of the
    /// link each one uses to reach towards `u`.
    pub fn ancestors(&self, u: usize) -> Vec<(usize, Label)> {
        let mut out = Vec::with_capacity(self.depth[u]);
        let mut cur = u;
        while let Some((p, l)) = self.parent[cur] {
            out.push((p, l));
            cur = p;
        }
        out
    }

    /// Unlabelled shape of the tree.
    pub fn shape(&self) -> RootedTree {
        let parent = self.parent.iter().map(|p| p.map(|(q, _)| q)).collect();
        RootedTree::from_parents(self.root, parent).expect("labelled tree has a valid shape")
    }

    /// Legs ordered by owner ascending, then X < Y < Z.
    pub fn legs(&self) -> Vec<Leg> {
        let mut out = Vec::with_capacity(2 * self.n + 1);
        for owner in 0..self.n {
            for label in Label::ALL {
                if self.children[owner][label.index()].is_none() {
                    out.push(Leg { owner, label });
                }
            }
        }
        out
    }

    fn check_leg(&self, leg: Leg) -> Result<()> {
        if leg.owner >= self.n || self.children[leg.owner][leg.label.index()].is_some() {
            return Err(Error::ForeignLeg {
                owner: leg.owner,
                label: leg.label.symbol(),
            });
        }
        Ok(())
    }

    /// The string generated by the root-to-leg path.
    pub fn leg_string(&self, leg: Leg) -> Result<PauliString> {
        self.check_leg(leg)?;
        let mut s = PauliString::identity(self.n);
        s.set(leg.owner, leg.label.pauli())?;
        for (q, l) in self.ancestors(leg.owner) {
            s.set(q, l.pauli())?;
        }
        Ok(s)
    }

    /// The leg reached from `u` by taking its `first` link and then only Z links.
    pub fn descend(&self, u: usize, first: Label) -> Leg {
        let mut owner = u;
        let mut label = first;
        while let Some(c) = self.children[owner][label.index()] {
            owner = c;
            label = Label::Z;
        }
        Leg { owner, label }
    }

    /// The leg at the end of the all-Z path from the root.
    pub fn all_z_leg(&self) -> Leg {
        self.descend(self.root, Label::Z)
    }

    /// All `2N + 1` leg strings in leg order, plus the index of the all-Z string.
    pub fn all_strings(&self) -> (Vec<PauliString>, usize) {
        let legs = self.legs();
        let z_leg = self.all_z_leg();
        let idx = legs.iter().position(|&l| l == z_leg).expect("all-Z leg exists");
        let strings = legs
            .into_iter()
            .map(|l| self.leg_string(l).expect("own leg"))
            .collect();
        (strings, idx)
    }

    /// Qubits that reach the root through Z-labelled edges only, root included.
    pub fn z_path(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        let mut u = self.root;
        while let Some(c) = self.children[u][Label::Z.index()] {
            out.push(c);
            u = c;
        }
        out
    }

    pub fn h_z(&self) -> usize {
        self.z_path().len()
    }
}

/// An unlabelled rooted tree with children kept in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    n: usize,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 || root >= n {
            return Err(Error::InvalidTree("root out of range".into()));
        }
        if parent[root].is_some() {
            return Err(Error::InvalidTree("root has a parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (c, p) in parent.iter().enumerate() {
            match *p {
                Some(p) if p >= n || p == c => {
                    return Err(Error::InvalidTree(format!("bad parent for qubit {c}")))
                }
                Some(p) => children[p].push(c),
                None if c != root => {
                    return Err(Error::InvalidTree(format!("qubit {c} has no parent")))
                }
                None => {}
            }
        }
        for (u, ch) in children.iter().enumerate() {
            if ch.len() > 3 {
                return Err(Error::InvalidTree(format!("qubit {u} has {} children", ch.len())));
            }
        }
        let mut seen = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &c in &children[u] {
                seen += 1;
                queue.push_back(c);
            }
        }
        if seen != n {
            return Err(Error::InvalidTree("parent array contains a cycle".into()));
        }
        Ok(RootedTree {
            n,
            root,
            parent,
            children,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        self.parent[u]
    }

    pub fn children(&self, u: usize) -> &[usize] {
        &self.children[u]
    }

    /// Undirected edges as (parent, child).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|c| self.parent[c].map(|p| (p, c)))
            .collect()
    }

    /// Nodes in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            queue.extend(self.children[u].iter().copied());
        }
        order
    }

    /// Edge count of the longest downward path from each qubit.
    pub fn subtree_heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for &u in self.bfs_order().iter().rev() {
            h[u] = self.children[u].iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn height(&self) -> usize {
        self.subtree_heights()[self.root]
    }

    /// Attaches labels, failing if a qubit gets a repeated label.
    pub fn with_labels(&self, labels: &[Option<Label>]) -> Result<QubitTree> {
        let links = self
            .edges()
            .into_iter()
            .map(|(p, c)| {
                labels[c]
                    .map(|label| Link { parent: p, child: c, label })
                    .ok_or_else(|| Error::InvalidTree(format!("edge to {c} is unlabelled")))
            })
            .collect::<Result<Vec<_>>>()?;
        QubitTree::from_links(self.n, self.root, links)
    }
}

/// Uniformly shuffled qubit indices attached one by one to random free slots.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QubitTree {
    assert!(n >= 1, "a tree needs at least one qubit");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut free: Vec<(usize, Label)> = Label::ALL.iter().map(|&l| (order[0], l)).collect();
    let mut links = Vec::with_capacity(n - 1);
    for &q in &order[1..] {
        let slot = free.swap_remove(rng.random_range(0..free.len()));
        links.push(Link {
            parent: slot.0,
            child: q,
            label: slot.1,
        });
        free.extend(Label::ALL.iter().map(|&l| (q, l)));
    }
    QubitTree::from_links(n, order[0], links).expect("random construction is valid")
}
