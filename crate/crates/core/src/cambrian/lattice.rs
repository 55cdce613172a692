use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::graph::DiGraph;

use super::associahedron::{last_root, Associahedron};
use super::sorting::{c_sortables, c_sorting_word, CoxeterElement};
use crate::coxeter::{CoxeterSystem, ElementId, WeakOrderLattice};
use crate::error::{Error, Result};

/// `cl_c(w) = {lr_α(w) : α ∈ Δ}`, sorted, for a c-sortable `w`.
pub fn cluster_map(cs: &CoxeterSystem, w: ElementId, c: &CoxeterElement) -> Result<Vec<usize>> {
    if !c_sorting_word(cs, w, c).is_nested() {
        return Err(Error::NotSortable(cs.element_name(w)));
    }
    let mut cluster: Vec<usize> = (0..cs.rank()).map(|alpha| last_root(cs, w, alpha, c)).collect();
    cluster.sort_unstable();
    Ok(cluster)
}

/// The associahedron's 1-skeleton oriented through the cluster map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CambrianLattice {
    /// Cluster of each vertex.
    pub clusters: Vec<Vec<usize>>,
    /// The c-sortable element `cl_c⁻¹` assigns to each vertex.
    pub sortable: Vec<ElementId>,
    /// Vertex pairs `(p, q)` with `sortable[p] < sortable[q]` in the weak order.
    pub arcs: Vec<(usize, usize)>,
}

/// Orients every edge by comparing the sortable preimages of its endpoint
/// clusters. Edges between singleton vertices must agree with the weak order
/// on the singletons themselves.
pub fn cambrian_lattice(asso: &Associahedron<'_>) -> Result<CambrianLattice> {
    let cs = asso.system;
    let c = &asso.coxeter;
    let mut preimage: BTreeMap<Vec<usize>, ElementId> = BTreeMap::new();
    for w in c_sortables(cs, c) {
        if let Some(prev) = preimage.insert(cluster_map(cs, w, c)?, w) {
            return Err(Error::Invariant(format!(
                "{} and {} share a cluster",
                cs.element_name(prev),
                cs.element_name(w)
            )));
        }
    }
    let clusters = asso.vertex_clusters()?;
    if preimage.len() != clusters.len() {
        return Err(Error::Invariant(format!(
            "{} sortable elements for {} vertices",
            preimage.len(),
            clusters.len()
        )));
    }
    let sortable: Vec<ElementId> = clusters
        .iter()
        .map(|cl| {
            preimage
                .get(cl)
                .copied()
                .ok_or_else(|| Error::Invariant("vertex cluster is not the image of a sortable element".into()))
        })
        .collect::<Result<_>>()?;

    for &u in &asso.singletons {
        let v = asso
            .polytope
            .find_vertex(&cs.act(u, &asso.basepoint)?)
            .ok_or_else(|| Error::Invariant("singleton point is not a vertex".into()))?;
        if sortable[v] != u {
            return Err(Error::Invariant(format!(
                "singleton {} sits at the vertex of {}",
                cs.element_name(u),
                cs.element_name(sortable[v])
            )));
        }
    }

    let mut arcs = Vec::new();
    for (p, q) in asso.polytope.edges() {
        let (u, v) = (sortable[p], sortable[q]);
        if cs.weak_leq(u, v) {
            arcs.push((p, q));
        } else if cs.weak_leq(v, u) {
            arcs.push((q, p));
        } else {
            return Err(Error::Invariant(format!(
                "adjacent clusters of {} and {} are incomparable",
                cs.element_name(u),
                cs.element_name(v)
            )));
        }
    }
    arcs.sort_unstable();
    Ok(CambrianLattice {
        clusters,
        sortable,
        arcs,
    })
}

impl CambrianLattice {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.arcs.iter().all(|&(_, q)| q != v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.arcs.iter().all(|&(p, _)| p != v)).collect()
    }

    pub fn to_graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for &(p, q) in &self.arcs {
            g.add_edge(nodes[p], nodes[q], ());
        }
        g
    }

    /// Isomorphism of directed graphs with `other`.
    pub fn is_isomorphic_to(&self, other: &DiGraph<(), ()>) -> bool {
        petgraph::algo::is_isomorphic(&self.to_graph(), other)
    }

    pub fn is_acyclic(&self) -> bool {
        !petgraph::algo::is_cyclic_directed(&self.to_graph())
    }

    /// DOT rendering with each node labelled by its cluster and sortable word.
    pub fn to_dot(&self, cs: &CoxeterSystem) -> String {
        let mut out = String::from("digraph cambrian {\n");
        for (v, cluster) in self.clusters.iter().enumerate() {
            let roots: Vec<String> = cluster.iter().map(|&r| cs.roots.root_in_simple_basis(r)).collect();
            writeln!(
                out,
                "  v{v} [label=\"{{{}}}\\n{}\"];",
                roots.join(", "),
                cs.format_word(cs.word(self.sortable[v]), true)
            )
            .unwrap();
        }
        for &(p, q) in &self.arcs {
            writeln!(out, "  v{p} -> v{q};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Whether `set` is closed under weak-order joins and meets and the induced
/// lattice is distributive.
pub fn is_distributive_sublattice(weak: &WeakOrderLattice, set: &[ElementId]) -> bool {
    let closed = set.iter().all(|&x| {
        set.iter()
            .all(|&y| set.contains(&weak.join(x, y)) && set.contains(&weak.meet(x, y)))
    });
    closed
        && set.iter().all(|&x| {
            set.iter().all(|&y| {
                set.iter().all(|&z| {
                    weak.meet(x, weak.join(y, z)) == weak.join(weak.meet(x, y), weak.meet(x, z))
                })
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cambrian::associahedron::build_associahedron;
    use crate::group_type::GroupType;

    #[test]
    fn square_lattice() {
        let cs = CoxeterSystem::build(&GroupType::I2(4)).unwrap();
        let c = CoxeterElement::parse(&cs, "ts").unwrap();
        let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).unwrap();
        let lat = cambrian_lattice(&asso).unwrap();
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.arcs.len(), 6);
        assert!(lat.is_acyclic());
        let (src, snk) = (lat.sources(), lat.sinks());
        assert_eq!(src.len(), 1);
        assert_eq!(snk.len(), 1);
        assert_eq!(lat.sortable[src[0]], cs.identity());
        assert_eq!(lat.sortable[snk[0]], cs.longest_element());
        assert_eq!(lat.clusters[src[0]], cluster_map(&cs, cs.identity(), &c).unwrap());
    }

    #[test]
    fn cluster_of_identity_is_negative_simple() {
        let cs = CoxeterSystem::build(&GroupType::A(3)).unwrap();
        let c = CoxeterElement::parse(&cs, "t1t2t3").unwrap();
        let mut want: Vec<usize> = (0..3).map(|i| cs.roots.negation(i)).collect();
        want.sort_unstable();
        assert_eq!(cluster_map(&cs, cs.identity(), &c).unwrap(), want);
        let t2t1 = cs.from_word(&[1, 0]);
        assert!(matches!(cluster_map(&cs, t2t1, &c), Err(Error::NotSortable(_))));
    }
}
