use std::cell::OnceCell;
use std::collections::BTreeSet;

use clap::ValueEnum;
use serde_json::{json, Value};

use coxeter_assoc::cambrian::{
    build_associahedron, c_sortables, cambrian_lattice, check_integer_coordinates, cluster_map, compare_centroids,
    coxeter_elements, fan_coarsening, find_vertex_isometry, is_distributive_sublattice, isometry_equivalent,
    Associahedron, CoxeterElement,
};
use coxeter_assoc::coxeter::CoxeterSystem;
use coxeter_assoc::oracle::tamari::tamari_graph;
use coxeter_assoc::permutahedron::{build_permutahedron, orbit, Permutahedron};
use coxeter_assoc::{Error, GroupType, Vector};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Claim {
    VertexCount,
    Simple,
    OrbitHalfspace,
    WeakOrderSkeleton,
    FacetCount,
    Catalan,
    SortableClusters,
    SingletonIntersection,
    Containment,
    FacetLabels,
    CambrianLattice,
    TamariIsomorphism,
    FanCoarsening,
    Isometry,
    IntegerCoordinates,
    Centroids,
}

impl Claim {
    pub fn id(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::VertexCount => "the permutahedron has one vertex per group element",
            Claim::Simple => "the permutahedron is simple of dimension |Δ|",
            Claim::OrbitHalfspace => "the halfspace intersection has the orbit of the basepoint as its vertex set",
            Claim::WeakOrderSkeleton => "the oriented 1-skeleton of the permutahedron is the Hasse diagram of the weak order",
            Claim::FacetCount => "the associahedron has |Δ| + |Φ⁺| facets",
            Claim::Catalan => "the associahedron has one vertex per c-sortable element",
            Claim::SortableClusters => "the cluster map is injective on c-sortables with one cluster per vertex",
            Claim::SingletonIntersection => {
                "the vertices shared with the permutahedron are the singleton orbit points, and the singletons form a distributive sublattice"
            }
            Claim::Containment => "the permutahedron lies inside the associahedron",
            Claim::FacetLabels => "facet labels biject onto the almost positive roots",
            Claim::CambrianLattice => {
                "orienting edges by the cluster map gives an acyclic graph with unique source and sink on the 1-skeleton"
            }
            Claim::TamariIsomorphism => "for a linear Coxeter element of type A the Cambrian lattice is the Tamari lattice",
            Claim::FanCoarsening => "every Coxeter chamber lies in exactly one normal cone of the associahedron",
            Claim::Isometry => {
                "two associahedra are isometric exactly when a diagram automorphism sends one Coxeter element to the other or its inverse"
            }
            Claim::IntegerCoordinates => {
                "for crystallographic W and an integral basepoint all vertices have integer coordinates in the simple-root basis"
            }
            Claim::Centroids => "permutahedron and associahedron share their vertex centroid (open question, reported only)",
        }
    }

    fn per_coxeter_element(self) -> bool {
        !matches!(
            self,
            Claim::VertexCount | Claim::Simple | Claim::OrbitHalfspace | Claim::WeakOrderSkeleton | Claim::Isometry
        )
    }

    fn reported_only(self) -> bool {
        self == Claim::Centroids
    }

    pub fn all() -> Vec<Claim> {
        Claim::value_variants().to_vec()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Report,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Report => "report",
        }
    }
}

/// Errors that mean the claim's hypotheses do not hold rather than that it failed.
pub fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::InexactField(_)
            | Error::NonGeneric { .. }
            | Error::OutsideChamber { .. }
            | Error::Unbalanced
            | Error::BoundExceeded(_)
            | Error::NotSortable(_)
            | Error::NotCrystallographic(_)
            | Error::NonIntegral(_)
    )
}

/// Polytopes built on demand and shared between claims.
struct Session<'a> {
    cs: &'a CoxeterSystem,
    basepoint: Vector,
    default_basepoint: bool,
    elements: Vec<CoxeterElement>,
    perm: OnceCell<Result<Permutahedron<'a>, Error>>,
    asso: Vec<OnceCell<Result<Associahedron<'a>, Error>>>,
}

impl<'a> Session<'a> {
    fn perm(&self) -> Result<&Permutahedron<'a>, Error> {
        self.perm
            .get_or_init(|| build_permutahedron(self.cs, &self.basepoint))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn asso(&self, i: usize) -> Result<&Associahedron<'a>, Error> {
        self.asso[i]
            .get_or_init(|| build_associahedron(self.cs, &self.elements[i], &self.basepoint))
            .as_ref()
            .map_err(Clone::clone)
    }
}

enum Outcome {
    Checked(bool, Value),
    NotApplicable(String),
}

type Verdict = Result<Outcome, Error>;

fn checked(ok: bool, witness: Value) -> Verdict {
    Ok(Outcome::Checked(ok, witness))
}

pub struct Report {
    pub json: Value,
    pub failed: usize,
}

/// Runs `claims`. With `strict`, a claim whose hypotheses fail aborts the run
/// with that error; otherwise it is reported as not applicable.
pub fn run(cfg: &RunConfig, claims: &[Claim], strict: bool) -> Result<Report, Error> {
    let cs = cfg.system()?;
    let basepoint = cfg.basepoint.resolve(&cs)?;
    cs.roots.check_basepoint(&basepoint)?;
    let elements = match &cfg.coxeter {
        Some(_) => vec![cfg.coxeter_element(&cs)?],
        None => coxeter_elements(&cs),
    };
    let session = Session {
        cs: &cs,
        basepoint: basepoint.clone(),
        default_basepoint: cfg.basepoint.is_default(),
        asso: elements.iter().map(|_| OnceCell::new()).collect(),
        elements,
        perm: OnceCell::new(),
    };

    let mut entries = Vec::new();
    let mut failed = 0;
    for &claim in claims {
        let targets: Vec<Option<usize>> = if claim.per_coxeter_element() {
            (0..session.elements.len()).map(Some).collect()
        } else {
            vec![None]
        };
        for target in targets {
            let (status, witness) = match check(&session, claim, target) {
                Ok(Outcome::NotApplicable(reason)) => (Status::NotApplicable, json!({ "reason": reason })),
                Ok(Outcome::Checked(_, w)) if claim.reported_only() => (Status::Report, w),
                Ok(Outcome::Checked(true, w)) => (Status::Pass, w),
                Ok(Outcome::Checked(false, w)) => (Status::Fail, w),
                Err(e) if is_precondition(&e) => {
                    if strict {
                        return Err(e);
                    }
                    (Status::NotApplicable, json!({ "reason": e.to_string() }))
                }
                Err(e) if claim.reported_only() => (Status::Report, json!({ "error": e.to_string() })),
                Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
            };
            if status == Status::Fail {
                failed += 1;
            }
            let mut entry = json!({
                "id": claim.id(),
                "statement": claim.statement(),
                "status": status.as_str(),
                "witness": witness,
            });
            if let Some(i) = target {
                entry["coxeter_element"] = json!(session.elements[i].name(&cs, false));
            }
            entries.push(entry);
        }
    }
    let json = json!({
        "schema": 1,
        "group": cs.group_type().to_string(),
        "exact": cs.roots.is_exact(),
        "basepoint": basepoint,
        "claims": entries,
        "failed": failed,
    });
    Ok(Report { json, failed })
}

fn check(s: &Session<'_>, claim: Claim, target: Option<usize>) -> Verdict {
    let cs = s.cs;
    let exact = cs.roots.is_exact();
    match claim {
        Claim::VertexCount => {
            let n = s.perm()?.polytope.vertices.len();
            checked(n == cs.order(), json!({ "vertices": n, "order": cs.order(), "exact": exact }))
        }
        Claim::Simple => {
            let p = &s.perm()?.polytope;
            let ok = p.is_simple() && p.dimension() == cs.rank();
            checked(ok, json!({ "dimension": p.dimension(), "f_vector": p.f_vector() }))
        }
        Claim::OrbitHalfspace => {
            let p = s.perm()?;
            let h: BTreeSet<Vector> = p.polytope.vertex_coords().into_iter().collect();
            let v: BTreeSet<Vector> = orbit(cs, &s.basepoint)?.into_iter().collect();
            checked(h == v, json!({ "vertices": h.len(), "orbit": v.len() }))
        }
        Claim::WeakOrderSkeleton => {
            let skeleton = s.perm()?.oriented_skeleton();
            let covers = cs.weak_order().covers;
            checked(skeleton == covers, json!({ "edges": skeleton.len(), "covers": covers.len() }))
        }
        Claim::Isometry => isometry(s),
        _ => check_for_element(s, claim, target.expect("per-element claim")),
    }
}

fn check_for_element(s: &Session<'_>, claim: Claim, i: usize) -> Verdict {
    let cs = s.cs;
    let c = &s.elements[i];
    let exact = cs.roots.is_exact();
    match claim {
        Claim::FacetCount => {
            let n = s.asso(i)?.polytope.facets.len();
            let want = cs.rank() + cs.roots.num_positive();
            checked(n == want, json!({ "facets": n, "expected": want }))
        }
        Claim::Catalan => {
            let n = s.asso(i)?.polytope.vertices.len();
            let sortables = c_sortables(cs, c).len();
            let mut witness = json!({ "vertices": n, "sortables": sortables, "exact": exact });
            let mut ok = n == sortables;
            if let GroupType::I2(m) = cs.group_type() {
                let want = *m as usize + 2;
                witness["expected"] = json!(want);
                ok &= n == want;
            }
            checked(ok, witness)
        }
        Claim::SortableClusters => {
            let sortables = c_sortables(cs, c);
            let images: BTreeSet<Vec<usize>> =
                sortables.iter().map(|&w| cluster_map(cs, w, c)).collect::<Result<_, _>>()?;
            let n = s.asso(i)?.polytope.vertices.len();
            let ok = images.len() == sortables.len() && images.len() == n;
            checked(ok, json!({ "sortables": sortables.len(), "clusters": images.len(), "vertices": n }))
        }
        Claim::SingletonIntersection => {
            let asso = s.asso(i)?;
            let shared = asso.shared_vertices()?;
            let singles = asso.singleton_vertices()?;
            let distributive = is_distributive_sublattice(&cs.weak_order(), &asso.singletons);
            let words: Vec<String> = asso.singletons.iter().map(|&u| cs.element_name(u)).collect();
            checked(shared == singles && distributive,
                json!({ "singletons": words, "shared_vertices": shared.len(), "distributive": distributive }),
            )
        }
        Claim::Containment => {
            let asso = s.asso(i)?;
            let points = orbit(cs, &s.basepoint)?;
            let outside = points.iter().filter(|p| !asso.polytope.contains_point(p)).count();
            checked(outside == 0, json!({ "orbit_points": points.len(), "outside": outside }))
        }
        Claim::FacetLabels => {
            let asso = s.asso(i)?;
            let labels = asso.facet_labels()?;
            let names: Vec<String> = labels.iter().map(|&r| cs.roots.root_in_simple_basis(r)).collect();
            checked(labels.len() == cs.roots.almost_positive().len(), json!({ "labels": names }))
        }
        Claim::CambrianLattice => {
            let asso = s.asso(i)?;
            let lattice = cambrian_lattice(asso)?;
            let undirected: BTreeSet<(usize, usize)> =
                lattice.arcs.iter().map(|&(p, q)| (p.min(q), p.max(q))).collect();
            let skeleton: BTreeSet<(usize, usize)> = asso.polytope.edges().into_iter().collect();
            let (src, snk) = (lattice.sources(), lattice.sinks());
            let ok = lattice.is_acyclic() && src.len() == 1 && snk.len() == 1 && undirected == skeleton;
            checked(ok, json!({ "elements": lattice.len(), "covers": lattice.arcs.len(), "sources": src.len(), "sinks": snk.len() }))
        }
        Claim::TamariIsomorphism => {
            let GroupType::A(n) = cs.group_type() else {
                return Ok(Outcome::NotApplicable("only type A".into()));
            };
            let forward: Vec<usize> = (0..*n).collect();
            let backward: Vec<usize> = (0..*n).rev().collect();
            if c.word != forward && c.word != backward {
                return Ok(Outcome::NotApplicable("Coxeter element is not linear".into()));
            }
            let lattice = cambrian_lattice(s.asso(i)?)?;
            let tamari = tamari_graph(n + 1);
            let ok = lattice.is_isomorphic_to(&tamari);
            checked(ok, json!({ "elements": lattice.len(), "covers": lattice.arcs.len(), "tamari_elements": tamari.node_count() }))
        }
        Claim::FanCoarsening => {
            let fan = fan_coarsening(s.perm()?, s.asso(i)?)?;
            checked(fan.is_coarsening() && fan.containing.len() == cs.order(),
                json!({ "chambers": fan.containing.len(), "chambers_per_cone": fan.chambers_per_cone }),
            )
        }
        Claim::IntegerCoordinates => {
            let a = if s.default_basepoint {
                cs.roots
                    .integral_basepoint()
                    .ok_or_else(|| Error::NotCrystallographic(cs.group_type().to_string()))?
            } else {
                s.basepoint.clone()
            };
            let report = check_integer_coordinates(cs, c, &a)?;
            checked(report.is_integral(),
                json!({
                    "basepoint_simple_coordinates": cs.roots.simple_coordinates(&a),
                    "permutahedron_vertices": report.permutahedron_vertices,
                    "associahedron_vertices": report.associahedron_vertices,
                    "violations": report.violations,
                }),
            )
        }
        Claim::Centroids => {
            let r = compare_centroids(cs, c, &s.basepoint)?;
            checked(r.equal,
                json!({
                    "applicable": r.applicable,
                    "exact": r.exact,
                    "equal": r.equal,
                    "permutahedron": r.permutahedron,
                    "associahedron": r.associahedron,
                    "max_deviation": r.max_deviation,
                }),
            )
        }
        Claim::VertexCount | Claim::Simple | Claim::OrbitHalfspace | Claim::WeakOrderSkeleton | Claim::Isometry => {
            unreachable!("group-level claim")
        }
    }
}

/// Compares the automorphism predicate with a float search for a linear
/// isometry matching the vertex sets, over all pairs of Coxeter elements.
fn isometry(s: &Session<'_>) -> Verdict {
    let cs = s.cs;
    let n = s.elements.len();
    let mut classes: Vec<BTreeSet<String>> = Vec::new();
    let mut disagreements = Vec::new();
    for i in 0..n {
        let mut class = BTreeSet::new();
        for j in 0..n {
            let predicate = isometry_equivalent(cs, &s.elements[i], &s.elements[j], &s.basepoint)?.is_some();
            let aligned = find_vertex_isometry(&s.asso(i)?.polytope, &s.asso(j)?.polytope).is_some();
            if predicate != aligned {
                disagreements.push(format!(
                    "{} vs {}",
                    s.elements[i].name(cs, false),
                    s.elements[j].name(cs, false)
                ));
            }
            if predicate {
                class.insert(s.elements[j].name(cs, false));
            }
        }
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    classes.sort();
    checked(disagreements.is_empty(), json!({ "classes": classes, "disagreements": disagreements }))
}
