//! Exact H-polytopes: vertex enumeration by exhaustive hyperplane subsets,
//! the face lattice from vertex–facet incidence, normal fans and exports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::root_system::VectorSpaceContext;
use crate::scalar::Scalar;

/// Which group element and simple root produced a halfspace `w(𝓗_a(α))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Provenance {
    pub element: usize,
    pub simple_root: usize,
}

/// `{x : ⟨normal, x⟩ ≤ offset}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub normal: Vector,
    pub offset: Scalar,
    pub label: Option<Provenance>,
}

impl HalfSpace {
    pub fn new(normal: Vector, offset: Scalar) -> Self {
        HalfSpace {
            normal,
            offset,
            label: None,
        }
    }

    pub fn with_label(mut self, label: Provenance) -> Self {
        self.label = Some(label);
        self
    }
}

/// The affine subspace `origin + span(basis)` a polytope is full-dimensional in.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineHull {
    pub origin: Vector,
    pub basis: Vec<Vector>,
}

impl AffineHull {
    pub fn full(dim: usize) -> Self {
        AffineHull {
            origin: Vector::zeros(dim),
            basis: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self, coords: &[Scalar]) -> Vector {
        &self.origin + &Vector::combination(coords, &self.basis, self.origin.dim())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexRecord {
    pub coords: Vector,
    /// Coordinates with respect to the hull basis.
    pub hull_coords: Vector,
    /// Indices of every halfspace whose boundary contains the vertex.
    pub incident: Vec<usize>,
}

/// A set of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<u64>);

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *a)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * k + b))
    }
}

/// A polytope given by halfspaces within an affine hull, with its vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub context: VectorSpaceContext,
    pub halfspaces: Vec<HalfSpace>,
    pub hull: AffineHull,
    pub vertices: Vec<VertexRecord>,
    /// Halfspaces whose boundary meets the polytope in a facet, in input order;
    /// a halfspace duplicating an earlier facet is left out.
    pub facets: Vec<usize>,
    exact: bool,
}

struct ReducedRow {
    coeffs: Vec<Scalar>,
    rhs: Scalar,
}

/// Intersects `halfspaces` inside `hull` and enumerates the vertices.
///
/// Every `dim`-subset of boundary hyperplanes is solved exactly; a solution
/// is kept when it satisfies all constraints. Subsets are processed in
/// parallel and merged in subset order, so output is deterministic.
pub fn enumerate_vertices(
    context: &VectorSpaceContext,
    halfspaces: Vec<HalfSpace>,
    hull: AffineHull,
) -> Result<Polytope> {
    let d = hull.dim();
    for h in &halfspaces {
        if h.normal.dim() != context.dim {
            return Err(Error::DimensionMismatch {
                expected: context.dim,
                found: h.normal.dim(),
            });
        }
        if h.normal.is_zero() {
            return Err(Error::Invariant("halfspace with zero normal".into()));
        }
    }
    let exact = context.form.iter().flatten().flatten().all(Scalar::is_exact)
        && hull.origin.is_exact()
        && hull.basis.iter().all(Vector::is_exact)
        && halfspaces.iter().all(|h| h.normal.is_exact() && h.offset.is_exact());

    let rows: Vec<ReducedRow> = halfspaces
        .iter()
        .map(|h| ReducedRow {
            coeffs: hull.basis.iter().map(|b| context.inner(&h.normal, b)).collect(),
            rhs: &h.offset - &context.inner(&h.normal, &hull.origin),
        })
        .collect();
    let satisfies = |y: &[Scalar], r: &ReducedRow| -> bool {
        let lhs: Scalar = r.coeffs.iter().zip(y).map(|(c, x)| c * x).sum();
        lhs <= r.rhs
    };

    let screen: Vec<(Vec<f64>, f64)> = rows
        .iter()
        .map(|r| (r.coeffs.iter().map(Scalar::to_f64).collect(), r.rhs.to_f64()))
        .collect();

    let subsets: Vec<Vec<usize>> = (0..rows.len()).combinations(d).collect();
    let candidates: Vec<Option<Vec<Scalar>>> = subsets
        .par_iter()
        .map(|subset| {
            if exact && clearly_infeasible(&screen, subset) {
                return None;
            }
            let a: Matrix = subset.iter().map(|&i| rows[i].coeffs.clone()).collect();
            let b: Vec<Scalar> = subset.iter().map(|&i| rows[i].rhs.clone()).collect();
            let y = linalg::solve(&a, &b)?;
            rows.iter().all(|r| satisfies(&y, r)).then_some(y)
        })
        .collect();

    let mut seen: BTreeMap<Vector, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    for y in candidates.into_iter().flatten() {
        let y = Vector(y);
        if seen.contains_key(&y) {
            continue;
        }
        seen.insert(y.clone(), vertices.len());
        let incident = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                let lhs: Scalar = r.coeffs.iter().zip(y.iter()).map(|(c, x)| c * x).sum();
                lhs == r.rhs
            })
            .map(|(i, _)| i)
            .collect();
        vertices.push(VertexRecord {
            coords: hull.point(&y.0),
            hull_coords: y,
            incident,
        });
    }

    let mut polytope = Polytope {
        context: context.clone(),
        halfspaces,
        hull,
        vertices,
        facets: Vec::new(),
        exact,
    };
    polytope.facets = polytope.find_facets();
    Ok(polytope)
}

/// Float screen for a vertex candidate: true only when the float solution of
/// the subset's system is well conditioned and violates some constraint by a
/// margin far above rounding error. Anything else goes to the exact solver.
fn clearly_infeasible(rows: &[(Vec<f64>, f64)], subset: &[usize]) -> bool {
    const MARGIN: f64 = 1e-6;
    let n = subset.len();
    let mut m: Vec<Vec<f64>> = subset
        .iter()
        .map(|&i| {
            let mut row = rows[i].0.clone();
            row.push(rows[i].1);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).expect("nonempty");
        if m[p][c].abs() < MARGIN {
            return false;
        }
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let y: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    rows.iter().any(|(coeffs, rhs)| {
        let lhs: f64 = coeffs.iter().zip(&y).map(|(a, b)| a * b).sum();
        lhs - rhs > MARGIN * (1.0 + rhs.abs())
    })
}

fn affine_rank(points: &[&Vector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => linalg::rank(&rest.iter().map(|p| *p - *p0).collect::<Vec<_>>()),
    }
}

impl Polytope {
    pub fn dimension(&self) -> usize {
        self.hull.dim()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// No vertex was found: the halfspaces do not bound a polytope in the hull.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn find_facets(&self) -> Vec<usize> {
        let d = self.dimension();
        if self.vertices.is_empty() || d == 0 {
            return Vec::new();
        }
        let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
        let mut facets = Vec::new();
        for h in 0..self.halfspaces.len() {
            let on: Vec<usize> = self.vertices_on(h);
            if on.is_empty() {
                continue;
            }
            let pts: Vec<&Vector> = on.iter().map(|&v| &self.vertices[v].hull_coords).collect();
            if affine_rank(&pts) + 1 == d {
                let set = VertexSet::from_indices(self.vertices.len(), on);
                if seen.insert(set) {
                    facets.push(h);
                }
            }
        }
        facets
    }

    /// Vertices lying on the boundary of halfspace `h`.
    pub fn vertices_on(&self, h: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].incident.binary_search(&h).is_ok())
            .collect()
    }

    /// Facet-defining halfspaces (from [`Polytope::facets`]) through vertex `v`.
    pub fn incident_facets(&self, v: usize) -> Vec<usize> {
        self.facets
            .iter()
            .copied()
            .filter(|h| self.vertices[v].incident.binary_search(h).is_ok())
            .collect()
    }

    /// Every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.incident_facets(v).len() == self.dimension())
    }

    pub fn find_vertex(&self, x: &Vector) -> Option<usize> {
        self.vertices.iter().position(|v| v.coords == *x)
    }

    /// Whether `x` lies in the affine hull and satisfies every halfspace.
    pub fn contains_point(&self, x: &Vector) -> bool {
        let offset = x - &self.hull.origin;
        let mut spanning = self.hull.basis.clone();
        let r = linalg::rank(&spanning);
        spanning.push(offset);
        linalg::rank(&spanning) == r
            && self
                .halfspaces
                .iter()
                .all(|h| self.context.inner(&h.normal, x) <= h.offset)
    }

    /// Faces by dimension: entry `k` lists the vertex sets of the k-faces,
    /// entry `dim` is the polytope itself.
    ///
    /// A (k−1)-face of a k-face `F` is an inclusion-maximal proper nonempty
    /// intersection of `F` with a facet.
    pub fn face_lattice(&self) -> Vec<Vec<VertexSet>> {
        let d = self.dimension();
        let n = self.vertices.len();
        let mut faces: Vec<Vec<VertexSet>> = vec![Vec::new(); d + 1];
        if n == 0 {
            return faces;
        }
        faces[d] = vec![VertexSet::from_indices(n, 0..n)];
        if d == 0 {
            return faces;
        }
        let facet_sets: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|&h| VertexSet::from_indices(n, self.vertices_on(h)))
            .collect();
        faces[d - 1] = facet_sets.clone();
        for k in (1..d).rev() {
            let mut lower: BTreeSet<VertexSet> = BTreeSet::new();
            for face in &faces[k] {
                let cuts: BTreeSet<VertexSet> = facet_sets
                    .iter()
                    .map(|g| face.intersection(g))
                    .filter(|c| !c.is_empty() && c != face)
                    .collect();
                for c in &cuts {
                    if !cuts.iter().any(|o| o != c && c.is_subset(o)) {
                        lower.insert(c.clone());
                    }
                }
            }
            faces[k - 1] = lower.into_iter().collect();
        }
        faces
    }

    /// `(f₀, …, f_{dim−1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let faces = self.face_lattice();
        faces[..self.dimension()].iter().map(Vec::len).collect()
    }

    /// Edges as sorted vertex index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dimension() == 0 {
            return Vec::new();
        }
        if self.dimension() == 1 {
            return vec![(0, 1)];
        }
        let mut edges: Vec<(usize, usize)> = self.face_lattice()[1]
            .iter()
            .map(|e| {
                let v: Vec<usize> = e.iter().collect();
                (v[0], v[1])
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// One cone per vertex, spanned by the outward normals of its facets.
    pub fn normal_fan(&self) -> Result<NormalFan> {
        let mut cones = Vec::with_capacity(self.vertices.len());
        for v in 0..self.vertices.len() {
            let facets = self.incident_facets(v);
            if facets.len() != self.dimension() {
                return Err(Error::NotSimple(v));
            }
            let rays: Vec<Vector> = facets.iter().map(|&h| self.halfspaces[h].normal.clone()).collect();
            cones.push(rays);
        }
        Ok(NormalFan {
            context: self.context.clone(),
            cones,
        })
    }

    pub fn vertex_coords(&self) -> Vec<Vector> {
        self.vertices.iter().map(|v| v.coords.clone()).collect()
    }

    /// Coordinates of `x − origin` in an orthonormal frame of the hull directions, as floats.
    pub fn frame_coords_f64(&self) -> Vec<Vec<f64>> {
        self.project_f64(true)
    }

    /// Coordinates of the orthogonal projection of each vertex onto the span
    /// of the hull directions, in the same frame; linear maps of that span act
    /// on these directly.
    pub fn linear_coords_f64(&self) -> Vec<Vec<f64>> {
        self.project_f64(false)
    }

    fn project_f64(&self, relative: bool) -> Vec<Vec<f64>> {
        let ctx = &self.context;
        let ip = |u: &[f64], v: &[f64]| -> f64 {
            let uu = Vector(u.iter().map(|&x| Scalar::float(x)).collect());
            let vv = Vector(v.iter().map(|&x| Scalar::float(x)).collect());
            ctx.inner(&uu, &vv).to_f64()
        };
        let mut frame: Vec<Vec<f64>> = Vec::new();
        for b in &self.hull.basis {
            let mut v = b.to_f64();
            for f in &frame {
                let k = ip(&v, f);
                v.iter_mut().zip(f).for_each(|(x, y)| *x -= k * y);
            }
            let norm = ip(&v, &v).sqrt();
            frame.push(v.iter().map(|x| x / norm).collect());
        }
        let origin = if relative {
            self.hull.origin.to_f64()
        } else {
            vec![0.0; self.hull.origin.dim()]
        };
        self.vertices
            .iter()
            .map(|v| {
                let x: Vec<f64> = v.coords.to_f64().iter().zip(&origin).map(|(a, b)| a - b).collect();
                frame.iter().map(|f| ip(&x, f)).collect()
            })
            .collect()
    }

    /// Vertices of a 2-face listed cyclically, counterclockwise seen from outside.
    fn facet_cycle(&self, face: &VertexSet, edges: &[(usize, usize)], coords: &[Vec<f64>]) -> Vec<usize> {
        let members: Vec<usize> = face.iter().collect();
        let inner: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|(a, b)| face.contains(*a) && face.contains(*b))
            .collect();
        let mut cycle = vec![members[0]];
        let mut prev = usize::MAX;
        while cycle.len() < members.len() {
            let cur = *cycle.last().unwrap();
            let next = inner
                .iter()
                .filter_map(|&(a, b)| match (a == cur, b == cur) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .find(|&x| x != prev && !cycle.contains(&x));
            match next {
                Some(x) => {
                    prev = cur;
                    cycle.push(x);
                }
                None => break,
            }
        }
        if coords.first().is_some_and(|c| c.len() == 3) && cycle.len() >= 3 {
            let n = coords.len() as f64;
            let centre: Vec<f64> = (0..3).map(|k| coords.iter().map(|c| c[k]).sum::<f64>() / n).collect();
            let p = |i: usize| &coords[cycle[i]];
            let u: Vec<f64> = (0..3).map(|k| p(1)[k] - p(0)[k]).collect();
            let v: Vec<f64> = (0..3).map(|k| p(2)[k] - p(0)[k]).collect();
            let w: Vec<f64> = (0..3).map(|k| p(0)[k] - centre[k]).collect();
            let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
                + u[2] * (v[0] * w[1] - v[1] * w[0]);
            if det < 0.0 {
                cycle[1..].reverse();
            }
        }
        cycle
    }

    /// OFF rendering: coordinates in an orthonormal frame of the hull printed
    /// with 17 significant digits, one face per facet in facet order.
    pub fn to_off(&self) -> Result<String> {
        let d = self.dimension();
        if !(2..=3).contains(&d) {
            return Err(Error::DimensionMismatch { expected: 3, found: d });
        }
        let coords = self.frame_coords_f64();
        let edges = self.edges();
        let faces: Vec<Vec<usize>> = if d == 3 {
            self.facets
                .iter()
                .map(|&h| {
                    let set = VertexSet::from_indices(self.vertices.len(), self.vertices_on(h));
                    self.facet_cycle(&set, &edges, &coords)
                })
                .collect()
        } else {
            let all = VertexSet::from_indices(self.vertices.len(), 0..self.vertices.len());
            vec![self.facet_cycle(&all, &edges, &coords)]
        };
        let mut out = String::from("OFF\n");
        writeln!(out, "{} {} {}", self.vertices.len(), faces.len(), edges.len()).unwrap();
        for c in &coords {
            let mut c = c.clone();
            c.resize(3, 0.0);
            writeln!(out, "{}", c.iter().map(|&x| format_sig17(x)).join(" ")).unwrap();
        }
        for f in &faces {
            writeln!(out, "{} {}", f.len(), f.iter().join(" ")).unwrap();
        }
        Ok(out)
    }

    /// JSON with exact coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension(),
            "exact": self.exact,
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "coords": v.coords,
                "facets": self.incident_facets_positions(v),
            })).collect::<Vec<_>>(),
            "facets": self.facets.iter().map(|&h| serde_json::json!({
                "normal": self.halfspaces[h].normal,
                "offset": self.halfspaces[h].offset.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    fn incident_facets_positions(&self, v: &VertexRecord) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, h)| v.incident.binary_search(h).is_ok())
            .map(|(i, _)| i)
            .collect()
    }
}

/// C-style `%.16e`: 17 significant digits.
pub fn format_sig17(x: f64) -> String {
    let s = format!("{x:.16e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// The normal fan of a simple polytope: one simplicial cone per vertex.
#[derive(Clone, Debug)]
pub struct NormalFan {
    pub context: VectorSpaceContext,
    pub cones: Vec<Vec<Vector>>,
}

impl NormalFan {
    /// Coefficients of `v` in the rays of cone `i`, if `v` lies in their span.
    pub fn cone_coordinates(&self, i: usize, v: &Vector) -> Option<Vec<Scalar>> {
        let rays = &self.cones[i];
        let gram: Matrix = rays
            .iter()
            .map(|a| rays.iter().map(|b| self.context.inner(a, b)).collect())
            .collect();
        let rhs: Vec<Scalar> = rays.iter().map(|a| self.context.inner(a, v)).collect();
        let lambda = linalg::solve(&gram, &rhs)?;
        (Vector::combination(&lambda, rays, v.dim()) == *v).then_some(lambda)
    }

    pub fn cone_contains(&self, i: usize, v: &Vector) -> bool {
        self.cone_coordinates(i, v)
            .is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    }

    /// Whether every ray of `other`'s cone `j` lies in our cone `i`.
    pub fn cone_contains_cone(&self, i: usize, other: &NormalFan, j: usize) -> bool {
        other.cones[j].iter().all(|r| self.cone_contains(i, r))
    }

    /// Rays of every cone span a space of the cone's dimension.
    pub fn is_full_dimensional(&self) -> bool {
        self.cones.iter().all(|c| linalg::rank(c) == c.len())
    }
}

/// Exact arithmetic mean of a nonempty point list.
pub fn centroid(points: &[Vector]) -> Result<Vector> {
    let first = points.first().ok_or(Error::Empty)?;
    let mut sum = Vector::zeros(first.dim());
    for p in points {
        sum = &sum + p;
    }
    Ok(sum.scale(&Scalar::from_ratio(1, points.len() as i64)))
}
