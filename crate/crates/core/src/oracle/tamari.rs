//! The Tamari lattice on binary trees, with covers given by right rotations
//! `((A B) C) → (A (B C))` at any node.

use std::collections::BTreeMap;

use petgraph::graph::DiGraph;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    /// All binary trees with `n` internal nodes.
    pub fn all(n: usize) -> Vec<Tree> {
        if n == 0 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for k in 0..n {
            for l in Tree::all(k) {
                for r in Tree::all(n - 1 - k) {
                    out.push(Tree::node(l.clone(), r));
                }
            }
        }
        out
    }

    /// Trees reachable by one right rotation.
    pub fn rotations(&self) -> Vec<Tree> {
        let Tree::Node(l, r) = self else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let Tree::Node(a, b) = l.as_ref() {
            out.push(Tree::node((**a).clone(), Tree::node((**b).clone(), (**r).clone())));
        }
        out.extend(l.rotations().into_iter().map(|l2| Tree::node(l2, (**r).clone())));
        out.extend(r.rotations().into_iter().map(|r2| Tree::node((**l).clone(), r2)));
        out
    }
}

/// Trees with `n` internal nodes and the rotation covers between them.
pub fn tamari_lattice(n: usize) -> (Vec<Tree>, Vec<(usize, usize)>) {
    let trees = Tree::all(n);
    let index: BTreeMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut covers: Vec<(usize, usize)> = trees
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.rotations().into_iter().map(move |u| (i, u)))
        .map(|(i, u)| (i, index[&u]))
        .collect();
    covers.sort_unstable();
    covers.dedup();
    (trees, covers)
}

pub fn tamari_graph(n: usize) -> DiGraph<(), ()> {
    let (trees, covers) = tamari_lattice(n);
    let mut g = DiGraph::new();
    let nodes: Vec<_> = trees.iter().map(|_| g.add_node(())).collect();
    for (p, q) in covers {
        g.add_edge(nodes[p], nodes[q], ());
    }
    g
}
