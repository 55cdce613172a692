use itertools::Itertools;
use serde::Serialize;

use super::associahedron::build_associahedron;
use super::sorting::CoxeterElement;
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::permutahedron::{build_permutahedron, Permutahedron};
use crate::polytope::{centroid, Polytope};
use crate::scalar::{Scalar, FLOAT_TOLERANCE};

use super::associahedron::Associahedron;

/// Permutations `μ` of S with `m(μs, μt) = m(s, t)`; the identity comes first.
pub fn diagram_automorphisms(cs: &CoxeterSystem) -> Vec<Vec<usize>> {
    let r = cs.rank();
    (0..r)
        .permutations(r)
        .filter(|mu| (0..r).all(|s| (0..r).all(|t| cs.m(mu[s], mu[t]) == cs.m(s, t))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryWitness {
    pub automorphism: Vec<usize>,
    /// `μ(c₂) = c₁⁻¹` rather than `c₁`.
    pub inverted: bool,
}

/// An automorphism `μ` with `μ(c₂) = c₁` or `μ(c₂) = c₁⁻¹`, if one exists.
/// The criterion applies to balanced basepoints only.
pub fn isometry_equivalent(
    cs: &CoxeterSystem,
    c1: &CoxeterElement,
    c2: &CoxeterElement,
    a: &Vector,
) -> Result<Option<IsometryWitness>> {
    if !cs.roots.is_balanced(a) {
        return Err(Error::Unbalanced);
    }
    let c1_inv = cs.inverse(c1.element);
    for mu in diagram_automorphisms(cs) {
        let image: Vec<usize> = c2.word.iter().map(|&s| mu[s]).collect();
        let image = cs.from_word(&image);
        if image == c1.element || image == c1_inv {
            return Ok(Some(IsometryWitness {
                inverted: image != c1.element,
                automorphism: mu,
            }));
        }
    }
    Ok(None)
}

fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn close(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() <= FLOAT_TOLERANCE)
}

/// Searches for an orthogonal map of span(Δ) carrying the vertex set of `p1`
/// onto that of `p2`. Candidate maps send a fixed basis of vertices of `p1`
/// to every ordered tuple of vertices of `p2`; matches are judged within the
/// float tolerance.
pub fn find_vertex_isometry(p1: &Polytope, p2: &Polytope) -> Option<Vec<Vec<f64>>> {
    let d = p1.dimension();
    let (x, y) = (p1.linear_coords_f64(), p2.linear_coords_f64());
    if x.len() != y.len() || d != p2.dimension() {
        return None;
    }
    let as_vector = |v: &[f64]| Vector(v.iter().map(|&t| Scalar::float(t)).collect());
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..x.len() {
        let mut trial: Vec<Vector> = basis.iter().map(|&j| as_vector(&x[j])).collect();
        trial.push(as_vector(&x[i]));
        if linalg::rank(&trial) == trial.len() {
            basis.push(i);
        }
        if basis.len() == d {
            break;
        }
    }
    if basis.len() < d {
        return None;
    }
    // Columns of `source` are the chosen vertices of p1.
    let source: Matrix = (0..d).map(|k| basis.iter().map(|&j| Scalar::float(x[j][k])).collect()).collect();
    let inv: Vec<Vec<f64>> = linalg::inverse(&source)?
        .iter()
        .map(|row| row.iter().map(Scalar::to_f64).collect())
        .collect();
    let norms: Vec<f64> = basis.iter().map(|&j| x[j].iter().map(|t| t * t).sum()).collect();
    for targets in (0..y.len()).permutations(d) {
        if targets
            .iter()
            .zip(&norms)
            .any(|(&t, n)| (y[t].iter().map(|v| v * v).sum::<f64>() - n).abs() > FLOAT_TOLERANCE)
        {
            continue;
        }
        let m: Vec<Vec<f64>> = (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|k| y[targets[k]][r] * inv[k][c]).sum()).collect())
            .collect();
        let orthogonal = (0..d).all(|i| {
            (0..d).all(|j| {
                let dot: f64 = (0..d).map(|k| m[k][i] * m[k][j]).sum();
                (dot - if i == j { 1.0 } else { 0.0 }).abs() <= FLOAT_TOLERANCE
            })
        });
        if orthogonal && x.iter().all(|p| y.iter().any(|q| close(&mat_vec(&m, p), q))) {
            return Some(m);
        }
    }
    None
}

/// Vertices of both polytopes whose simple-root coordinates are not integers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralityReport {
    pub permutahedron_vertices: usize,
    pub associahedron_vertices: usize,
    pub violations: Vec<String>,
}

impl IntegralityReport {
    pub fn is_integral(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For a crystallographic type and a basepoint that is an integer
/// combination of simple roots, checks every vertex of `Perm^a(W)` and
/// `Asso^a_c(W)` for integer simple-root coordinates.
pub fn check_integer_coordinates(cs: &CoxeterSystem, c: &CoxeterElement, a: &Vector) -> Result<IntegralityReport> {
    let rs = &cs.roots;
    if !rs.is_crystallographic() {
        return Err(Error::NotCrystallographic(cs.group_type().to_string()));
    }
    let coords = rs.simple_coordinates(a);
    if rs.from_simple_coordinates(&coords) != *a || !coords.iter().all(Scalar::is_integer) {
        return Err(Error::NonIntegral(a.to_string()));
    }
    let perm = build_permutahedron(cs, a)?;
    let asso = build_associahedron(cs, c, a)?;
    let mut violations = Vec::new();
    for (name, poly) in [("permutahedron", &perm.polytope), ("associahedron", &asso.polytope)] {
        for v in &poly.vertices {
            let y = rs.simple_coordinates(&v.coords);
            if !y.iter().all(Scalar::is_integer) {
                violations.push(format!("{name} vertex {} has simple-root coordinates {y}", v.coords));
            }
        }
    }
    Ok(IntegralityReport {
        permutahedron_vertices: perm.polytope.vertices.len(),
        associahedron_vertices: asso.polytope.vertices.len(),
        violations,
    })
}

/// Outcome of comparing vertex barycentres of `Perm^a(W)` and `Asso^a_c(W)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentroidReport {
    /// False when the basepoint is unbalanced and nothing was compared.
    pub applicable: bool,
    pub exact: bool,
    pub permutahedron: Option<Vector>,
    pub associahedron: Option<Vector>,
    pub equal: bool,
    pub max_deviation: Option<f64>,
}

pub fn compare_centroids(cs: &CoxeterSystem, c: &CoxeterElement, a: &Vector) -> Result<CentroidReport> {
    if !cs.roots.is_balanced(a) {
        return Ok(CentroidReport {
            applicable: false,
            exact: cs.roots.is_exact(),
            permutahedron: None,
            associahedron: None,
            equal: false,
            max_deviation: None,
        });
    }
    let perm = build_permutahedron(cs, a)?;
    let asso = build_associahedron(cs, c, a)?;
    let p = centroid(&perm.polytope.vertex_coords())?;
    let q = centroid(&asso.polytope.vertex_coords())?;
    let max_deviation = p
        .to_f64()
        .iter()
        .zip(q.to_f64())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(CentroidReport {
        applicable: true,
        exact: perm.polytope.is_exact() && asso.polytope.is_exact(),
        equal: p == q,
        permutahedron: Some(p),
        associahedron: Some(q),
        max_deviation: Some(max_deviation),
    })
}

/// Which normal cones of the associahedron contain each chamber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanCoarsening {
    /// For each permutahedron vertex, the associahedron vertices whose cones contain its cone.
    pub containing: Vec<Vec<usize>>,
    /// Number of chambers inside each associahedron cone.
    pub chambers_per_cone: Vec<usize>,
}

impl FanCoarsening {
    /// Every chamber lies in exactly one cone and the counts add up.
    pub fn is_coarsening(&self) -> bool {
        self.containing.iter().all(|c| c.len() == 1)
            && self.chambers_per_cone.iter().sum::<usize>() == self.containing.len()
    }
}

pub fn fan_coarsening(perm: &Permutahedron<'_>, asso: &Associahedron<'_>) -> Result<FanCoarsening> {
    let fine = perm.polytope.normal_fan()?;
    let coarse = asso.polytope.normal_fan()?;
    let containing: Vec<Vec<usize>> = (0..fine.cones.len())
        .map(|i| {
            (0..coarse.cones.len())
                .filter(|&j| coarse.cone_contains_cone(j, &fine, i))
                .collect()
        })
        .collect();
    let mut chambers_per_cone = vec![0; coarse.cones.len()];
    for c in &containing {
        for &j in c {
            chambers_per_cone[j] += 1;
        }
    }
    Ok(FanCoarsening {
        containing,
        chambers_per_cone,
    })
}
