//! The permutahedron `Perm^a(W)`: the convex hull of the orbit `W·a`, built
//! here as an intersection of the halfspaces `w(𝓗_a(α))`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::coxeter::{CoxeterSystem, ElementId};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::polytope::{enumerate_vertices, AffineHull, HalfSpace, Polytope, Provenance, VertexSet};

/// `w(𝓗_a(α)) = {x : ⟨w ω_α, x⟩ ≤ ⟨ω_α, a⟩}` where `ω_α` is the weight dual to
/// α in span(Δ). It depends on `w` only through `wW_{S∖{α}}`.
pub fn orbit_halfspace(cs: &CoxeterSystem, a: &Vector, w: ElementId, alpha: usize) -> Result<HalfSpace> {
    let weight = cs.roots.fundamental_weight(alpha);
    let offset = cs.roots.inner(&weight, a);
    Ok(HalfSpace::new(cs.act(w, &weight)?, offset).with_label(Provenance {
        element: w,
        simple_root: alpha,
    }))
}

/// `a + span(Δ)`.
pub fn basepoint_hull(cs: &CoxeterSystem, a: &Vector) -> AffineHull {
    AffineHull {
        origin: a.clone(),
        basis: cs.roots.simple_roots().iter().map(|r| r.coords.clone()).collect(),
    }
}

/// The orbit `{w(a)}` indexed by element id.
pub fn orbit(cs: &CoxeterSystem, a: &Vector) -> Result<Vec<Vector>> {
    (0..cs.order()).map(|w| cs.act(w, a)).collect()
}

/// `S ∖ {α}`.
pub(crate) fn complement(rank: usize, alpha: usize) -> Vec<usize> {
    (0..rank).filter(|&s| s != alpha).collect()
}

#[derive(Clone, Debug)]
pub struct Permutahedron<'a> {
    pub system: &'a CoxeterSystem,
    pub basepoint: Vector,
    pub polytope: Polytope,
    /// Vertex index of `w(a)` for each element id.
    pub vertex_of: Vec<usize>,
    /// Element id of each vertex.
    pub element_of: Vec<ElementId>,
}

/// Intersects one halfspace per pair (coset `wW_{S∖{α}}`, α) and checks the
/// resulting vertex set against the orbit of `a`.
pub fn build_permutahedron<'a>(cs: &'a CoxeterSystem, a: &Vector) -> Result<Permutahedron<'a>> {
    cs.roots.check_basepoint(a)?;
    let r = cs.rank();
    let mut halfspaces = Vec::new();
    for alpha in 0..r {
        for coset in cs.parabolic_cosets(&complement(r, alpha)) {
            halfspaces.push(orbit_halfspace(cs, a, coset.min_rep, alpha)?);
        }
    }
    halfspaces.sort_by_key(|h| h.label);
    let polytope = enumerate_vertices(&cs.roots.context, halfspaces, basepoint_hull(cs, a))?;

    let points = orbit(cs, a)?;
    if polytope.vertices.len() != points.len() {
        return Err(Error::Invariant(format!(
            "{} vertices found for an orbit of size {}",
            polytope.vertices.len(),
            points.len()
        )));
    }
    let mut vertex_of = Vec::with_capacity(points.len());
    let mut element_of = vec![usize::MAX; points.len()];
    for (w, p) in points.iter().enumerate() {
        let v = polytope
            .find_vertex(p)
            .ok_or_else(|| Error::Invariant(format!("orbit point {p} is not a vertex")))?;
        if element_of[v] != usize::MAX {
            return Err(Error::Invariant(format!("vertex {v} hit twice by the orbit")));
        }
        element_of[v] = w;
        vertex_of.push(v);
    }
    Ok(Permutahedron {
        system: cs,
        basepoint: a.clone(),
        polytope,
        vertex_of,
        element_of,
    })
}

impl Permutahedron<'_> {
    /// Vertex set `{g(a) : g ∈ wW_I}`.
    pub fn face_of_coset(&self, w: ElementId, subset: &[usize]) -> VertexSet {
        let cs = self.system;
        VertexSet::from_indices(
            self.vertex_of.len(),
            cs.parabolic_subgroup(subset)
                .into_iter()
                .map(|g| self.vertex_of[cs.multiply(w, g)]),
        )
    }

    /// All faces `w(F_I)` with `|I| = k`, one per coset.
    pub fn coset_faces(&self, k: usize) -> BTreeSet<VertexSet> {
        let cs = self.system;
        let mut out = BTreeSet::new();
        for subset in (0..cs.rank()).combinations(k) {
            for coset in cs.parabolic_cosets(&subset) {
                out.insert(self.face_of_coset(coset.min_rep, &subset));
            }
        }
        out
    }

    /// Edges `w → ws` directed upward in length, as element pairs.
    pub fn oriented_skeleton(&self) -> Vec<(ElementId, ElementId)> {
        let cs = self.system;
        let mut arcs: Vec<(ElementId, ElementId)> = self
            .polytope
            .edges()
            .into_iter()
            .map(|(p, q)| {
                let (u, v) = (self.element_of[p], self.element_of[q]);
                if cs.length(u) < cs.length(v) {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// Coset and simple root behind each facet, in facet order.
    pub fn facet_cosets(&self) -> Vec<Provenance> {
        self.polytope
            .facets
            .iter()
            .map(|&h| self.polytope.halfspaces[h].label.expect("labelled halfspace"))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cs = self.system;
        serde_json::json!({
            "group": cs.group_type().to_string(),
            "basepoint": self.basepoint,
            "exact": self.polytope.is_exact(),
            "vertices": self.polytope.vertices.iter().enumerate().map(|(v, rec)| serde_json::json!({
                "element": cs.element_name(self.element_of[v]),
                "coords": rec.coords,
            })).collect::<Vec<_>>(),
            "facets": self.facet_cosets().iter().map(|p| serde_json::json!({
                "coset_min": cs.element_name(p.element),
                "alpha": p.simple_root,
            })).collect::<Vec<_>>(),
        })
    }

    /// The oriented 1-skeleton in DOT format, nodes named by reduced words.
    pub fn to_dot(&self) -> String {
        let cs = self.system;
        let mut out = String::from("digraph permutahedron {\n");
        for w in 0..cs.order() {
            writeln!(out, "  n{w} [label=\"{}\"];", cs.format_word(cs.word(w), true)).unwrap();
        }
        for (u, v) in self.oriented_skeleton() {
            writeln!(out, "  n{u} -> n{v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
