use std::collections::{BTreeMap, BTreeSet};

use super::singletons::c_singletons;
use super::sorting::{c_sorting_word, CoxeterElement};
use crate::coxeter::{CoxeterSystem, ElementId};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::permutahedron::{basepoint_hull, complement, orbit, orbit_halfspace};
use crate::polytope::{enumerate_vertices, Polytope};

/// `lr_α(u)` as a root index: `−α` when `s_α` does not occur in the c-sorting
/// word of `u`, otherwise `u₁(α)` for the split `u₁ s_α u₂` at the last `s_α`.
pub fn last_root(cs: &CoxeterSystem, u: ElementId, alpha: usize, c: &CoxeterElement) -> usize {
    let word = c_sorting_word(cs, u, c).letters();
    match word.iter().rposition(|&s| s == alpha) {
        None => cs.roots.negation(alpha),
        Some(p) => cs.element(cs.from_word(&word[..p])).apply_root(alpha),
    }
}

#[derive(Clone, Debug)]
pub struct Associahedron<'a> {
    pub system: &'a CoxeterSystem,
    pub coxeter: CoxeterElement,
    pub basepoint: Vector,
    pub singletons: Vec<ElementId>,
    pub polytope: Polytope,
    /// For each halfspace, the singletons `u` whose `u(𝓗_a(α))` it is.
    pub witnesses: Vec<Vec<ElementId>>,
}

/// Builds `Asso^a_c(W)` and runs [`Associahedron::verify`].
pub fn build_associahedron<'a>(cs: &'a CoxeterSystem, c: &CoxeterElement, a: &Vector) -> Result<Associahedron<'a>> {
    let asso = Associahedron::construct(cs, c, a)?;
    asso.verify()?;
    Ok(asso)
}

impl<'a> Associahedron<'a> {
    /// Intersects the halfspaces `u(𝓗_a(α))` over singletons `u` and simple
    /// roots α, merged by coset `uW_{S∖{α}}`. No invariants are checked.
    pub fn construct(cs: &'a CoxeterSystem, c: &CoxeterElement, a: &Vector) -> Result<Self> {
        cs.roots.check_basepoint(a)?;
        let singletons = c_singletons(cs, c);
        let r = cs.rank();
        let mut merged: BTreeMap<(ElementId, usize), Vec<ElementId>> = BTreeMap::new();
        for &u in &singletons {
            for alpha in 0..r {
                let rep = cs.min_coset_rep(u, &complement(r, alpha));
                merged.entry((rep, alpha)).or_default().push(u);
            }
        }
        let mut halfspaces = Vec::with_capacity(merged.len());
        let mut witnesses = Vec::with_capacity(merged.len());
        for ((rep, alpha), us) in merged {
            halfspaces.push(orbit_halfspace(cs, a, rep, alpha)?);
            witnesses.push(us);
        }
        let polytope = enumerate_vertices(&cs.roots.context, halfspaces, basepoint_hull(cs, a))?;
        Ok(Associahedron {
            system: cs,
            coxeter: c.clone(),
            basepoint: a.clone(),
            singletons,
            polytope,
            witnesses,
        })
    }

    /// Facet count, simplicity, containment of the permutahedron, the
    /// singleton vertices and the facet-label bijection.
    pub fn verify(&self) -> Result<()> {
        let cs = self.system;
        let want = cs.rank() + cs.roots.num_positive();
        if self.polytope.facets.len() != want || self.polytope.halfspaces.len() != want {
            return Err(Error::Invariant(format!(
                "{} facets from {} halfspaces, expected {want}",
                self.polytope.facets.len(),
                self.polytope.halfspaces.len()
            )));
        }
        if !self.polytope.is_simple() {
            return Err(Error::Invariant("associahedron is not simple".into()));
        }
        let points = orbit(cs, &self.basepoint)?;
        if let Some(p) = points.iter().find(|p| !self.polytope.contains_point(p)) {
            return Err(Error::Invariant(format!("permutahedron vertex {p} lies outside")));
        }
        if self.shared_vertices()? != self.singleton_vertices()? {
            return Err(Error::Invariant(
                "shared vertices with the permutahedron differ from the singleton orbit points".into(),
            ));
        }
        self.facet_labels()?;
        Ok(())
    }

    /// Vertex index of `u(a)` for each singleton `u`.
    pub fn singleton_vertices(&self) -> Result<BTreeSet<usize>> {
        self.singletons
            .iter()
            .map(|&u| {
                let p = self.system.act(u, &self.basepoint)?;
                self.polytope
                    .find_vertex(&p)
                    .ok_or_else(|| Error::Invariant(format!("singleton point {p} is not a vertex")))
            })
            .collect()
    }

    /// Vertices that are also vertices of the permutahedron.
    pub fn shared_vertices(&self) -> Result<BTreeSet<usize>> {
        let points = orbit(self.system, &self.basepoint)?;
        Ok((0..self.polytope.vertices.len())
            .filter(|&v| points.contains(&self.polytope.vertices[v].coords))
            .collect())
    }

    /// The almost positive root labelling each facet, in facet order. Every
    /// witness of a facet must give the same label and the labels must
    /// exhaust `Φ≥−1` exactly once.
    pub fn facet_labels(&self) -> Result<Vec<usize>> {
        let cs = self.system;
        let mut labels = Vec::with_capacity(self.polytope.facets.len());
        for &h in &self.polytope.facets {
            let alpha = self.polytope.halfspaces[h].label.expect("labelled halfspace").simple_root;
            let found: BTreeSet<usize> = self.witnesses[h]
                .iter()
                .map(|&u| last_root(cs, u, alpha, &self.coxeter))
                .collect();
            if found.len() != 1 {
                return Err(Error::Invariant(format!("facet {h} has {} distinct labels", found.len())));
            }
            labels.extend(found);
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        let mut almost_positive = cs.roots.almost_positive();
        almost_positive.sort_unstable();
        if sorted != almost_positive {
            return Err(Error::Invariant("facet labels are not a bijection onto Φ≥−1".into()));
        }
        Ok(labels)
    }

    /// Sorted labels of the facets through each vertex.
    pub fn vertex_clusters(&self) -> Result<Vec<Vec<usize>>> {
        let labels = self.facet_labels()?;
        let position: BTreeMap<usize, usize> = self.polytope.facets.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        (0..self.polytope.vertices.len())
            .map(|v| {
                let mut cluster: Vec<usize> = self
                    .polytope
                    .incident_facets(v)
                    .iter()
                    .map(|h| labels[position[h]])
                    .collect();
                cluster.sort_unstable();
                if cluster.len() != self.system.rank() {
                    return Err(Error::Invariant(format!("vertex {v} has a cluster of size {}", cluster.len())));
                }
                Ok(cluster)
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let cs = self.system;
        let labels = self.facet_labels()?;
        let clusters = self.vertex_clusters()?;
        let singles = self.singleton_vertices()?;
        Ok(serde_json::json!({
            "group": cs.group_type().to_string(),
            "coxeter_element": self.coxeter.name(cs, false),
            "basepoint": self.basepoint,
            "exact": self.polytope.is_exact(),
            "vertices": self.polytope.vertices.iter().enumerate().map(|(v, rec)| serde_json::json!({
                "coords": rec.coords,
                "cluster": clusters[v].iter().map(|&r| cs.roots.root_in_simple_basis(r)).collect::<Vec<_>>(),
                "singleton": singles.contains(&v),
            })).collect::<Vec<_>>(),
            "facets": self.polytope.facets.iter().zip(&labels).map(|(&h, &l)| serde_json::json!({
                "label": cs.roots.root_in_simple_basis(l),
                "normal": self.polytope.halfspaces[h].normal,
                "offset": self.polytope.halfspaces[h].offset.to_string(),
            })).collect::<Vec<_>>(),
        }))
    }
}
