//! Acceptance suite: one line per criterion, nonzero exit if any theorem check fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use coxeter_assoc::cambrian::{
    build_associahedron, c_singletons, c_sortables, c_sorting_word, cambrian_lattice, check_integer_coordinates,
    cluster_map, compare_centroids, coxeter_elements, fan_coarsening, find_vertex_isometry, is_distributive_sublattice,
    isometry_equivalent, last_root, CoxeterElement,
};
use coxeter_assoc::coxeter::CoxeterSystem;
use coxeter_assoc::oracle::tamari::tamari_graph;
use coxeter_assoc::permutahedron::{build_permutahedron, orbit};
use coxeter_assoc::{GroupType, RootSystem, Vector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const RANK_AT_MOST_3: &[&str] = &["I2:3", "I2:4", "I2:5", "I2:6", "A2", "A3", "B2", "B3", "H3", "I2:4xA1"];

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::build(&name.parse::<GroupType>().expect("group descriptor")).expect("group builds")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Orbit size of a generic point under simple reflections, by breadth-first search.
fn cayley_orbit_size(rs: &RootSystem) -> usize {
    let a = rs.default_basepoint();
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a]);
    while let Some(p) = queue.pop_front() {
        for s in 0..rs.rank() {
            let q = rs.reflect(s, &p).expect("same dimension");
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for (g, want) in [("I2:4", 8), ("A3", 24), ("B3", 48), ("H3", 120)] {
        let cs = system(g);
        let oracle = cayley_orbit_size(&cs.roots);
        let p = build_permutahedron(&cs, &cs.roots.default_basepoint()).map_err(err)?;
        let n = p.polytope.vertices.len();
        ensure(n == want && oracle == want && cs.order() == want, || {
            format!("{g}: {n} vertices, orbit oracle {oracle}, expected {want}")
        })?;
        parts.push(format!("{g}={n}"));
    }
    Ok(parts.join(" "))
}

fn criterion_2() -> Outcome {
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        let p = build_permutahedron(&cs, &cs.roots.default_basepoint()).map_err(err)?;
        ensure(p.polytope.dimension() == cs.rank(), || format!("{g}: wrong dimension"))?;
        ensure(p.polytope.is_simple(), || format!("{g}: not simple"))?;
    }
    Ok(format!("{} types simple of dimension |Δ|", RANK_AT_MOST_3.len()))
}

fn criterion_3() -> Outcome {
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        let p = build_permutahedron(&cs, &a).map_err(err)?;
        let h: BTreeSet<Vector> = p.polytope.vertex_coords().into_iter().collect();
        let v: BTreeSet<Vector> = orbit(&cs, &a).map_err(err)?.into_iter().collect();
        ensure(h == v, || format!("{g}: halfspace and orbit vertex sets differ"))?;
    }
    Ok(format!("{} types agree exactly", RANK_AT_MOST_3.len()))
}

fn criterion_4() -> Outcome {
    let mut a3_edges = 0;
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        let p = build_permutahedron(&cs, &cs.roots.default_basepoint()).map_err(err)?;
        let skeleton = p.oriented_skeleton();
        ensure(skeleton == cs.weak_order().covers, || format!("{g}: skeleton differs from weak order"))?;
        if *g == "A3" {
            a3_edges = skeleton.len();
        }
    }
    ensure(a3_edges == 36, || format!("A3 has {a3_edges} edges"))?;
    Ok("directed edge sets equal; A3 has 36".into())
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (g, want) in [("A3", 9), ("B3", 12), ("H3", 18)] {
        let cs = system(g);
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
            let n = asso.polytope.facets.len();
            ensure(n == want, || format!("{g}, c={}: {n} facets", c.name(&cs, false)))?;
        }
        parts.push(format!("{g}={want}"));
    }
    Ok(parts.join(" "))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut cases: Vec<(String, usize)> = (3..=8).map(|m| (format!("I2:{m}"), m + 2)).collect();
    cases.extend([("A3".into(), 14), ("B3".into(), 20), ("H3".into(), 32)]);
    for (g, want) in cases {
        let cs = system(&g);
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
            let n = asso.polytope.vertices.len();
            ensure(n == want, || format!("{g}, c={}: {n} vertices, expected {want}", c.name(&cs, false)))?;
        }
        let tag = if cs.roots.is_exact() { "" } else { "~" };
        parts.push(format!("{g}={want}{tag}"));
    }
    Ok(parts.join(" "))
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    for g in ["A3", "B3", "I2:4", "I2:5", "I2:6"] {
        let cs = system(g);
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
            let sortables = c_sortables(&cs, &c);
            let images: BTreeSet<Vec<usize>> = sortables
                .iter()
                .map(|&w| cluster_map(&cs, w, &c))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            let vertices = asso.polytope.vertices.len();
            ensure(sortables.len() == images.len() && images.len() == vertices, || {
                format!(
                    "{g}, c={}: {} sortables, {} clusters, {vertices} vertices",
                    c.name(&cs, false),
                    sortables.len(),
                    images.len()
                )
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (W, c) pairs agree"))
}

fn criterion_8() -> Outcome {
    let cs = system("A3");
    let wo = cs.longest_element();
    let mut got = Vec::new();
    for (c, want) in [("t1t2t3", "τ₁τ₂τ₃.τ₁τ₂.τ₁"), ("t2t3t1", "τ₂τ₃τ₁.τ₂τ₃τ₁")] {
        let c = CoxeterElement::parse(&cs, c).map_err(err)?;
        let word = c_sorting_word(&cs, wo, &c).format(&cs, true);
        ensure(word == want, || format!("got {word}, expected {want}"))?;
        got.push(word);
    }
    Ok(got.join(" and "))
}

fn criterion_9() -> Outcome {
    let golden: [(&str, &str, &[&str]); 2] = [
        (
            "A3",
            "t1t2t3",
            &["e", "t1", "t1t2", "t1t2t3", "t1t2t1", "t1t2t3t1", "t1t2t3t1t2", "t1t2t3t1t2t1"],
        ),
        ("I2:4", "ts", &["e", "t", "ts", "tst", "tsts"]),
    ];
    for (g, c, words) in golden {
        let cs = system(g);
        let c = CoxeterElement::parse(&cs, c).map_err(err)?;
        let got: BTreeSet<usize> = c_singletons(&cs, &c).into_iter().collect();
        let want: BTreeSet<usize> = words
            .iter()
            .map(|w| cs.parse_word(w).map(|w| cs.from_word(&w)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure(got == want, || format!("{g}: singleton set differs"))?;
    }
    Ok("A3 (8 elements) and I2:4 (5 elements) match".into())
}

fn criterion_10() -> Outcome {
    let mut cases = 0;
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        let weak = cs.weak_order();
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
            let shared = asso.shared_vertices().map_err(err)?;
            let singles = asso.singleton_vertices().map_err(err)?;
            let name = c.name(&cs, false);
            ensure(shared == singles, || format!("{g}, c={name}: shared vertices differ from singletons"))?;
            ensure(is_distributive_sublattice(&weak, &asso.singletons), || {
                format!("{g}, c={name}: singletons do not form a distributive sublattice")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (W, c) pairs"))
}

fn criterion_11() -> Outcome {
    let mut cases = 0;
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        let points = orbit(&cs, &a).map_err(err)?;
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &a).map_err(err)?;
            for p in &points {
                for h in &asso.polytope.halfspaces {
                    ensure(cs.roots.inner(&h.normal, p) <= h.offset, || {
                        format!("{g}, c={}: {p} violates a halfspace", c.name(&cs, false))
                    })?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (W, c) pairs"))
}

fn criterion_12() -> Outcome {
    let mut cases = 0;
    for g in RANK_AT_MOST_3 {
        let cs = system(g);
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
            let labels: BTreeSet<usize> = asso.facet_labels().map_err(err)?.into_iter().collect();
            let want: BTreeSet<usize> = cs.roots.almost_positive().into_iter().collect();
            ensure(labels == want, || format!("{g}: labels differ from Φ≥−1"))?;
            cases += 1;
        }
    }
    let cs = system("I2:4");
    let c = CoxeterElement::parse(&cs, "ts").map_err(err)?;
    let tsts = cs.from_word(&cs.parse_word("tsts").map_err(err)?);
    let root = last_root(&cs, tsts, 1, &c);
    let label = cs.roots.root_label(root);
    ensure(label == "(1, 1)", || format!("lr(tsts) = {label}"))?;
    Ok(format!("{cases} (W, c) bijections; lr_(e2-e1)(tsts) = {label}"))
}

fn criterion_13() -> Outcome {
    let cs = system("A3");
    let c = CoxeterElement::parse(&cs, "t1t2t3").map_err(err)?;
    let asso = build_associahedron(&cs, &c, &cs.roots.default_basepoint()).map_err(err)?;
    let lattice = cambrian_lattice(&asso).map_err(err)?;
    let tamari = tamari_graph(4);
    ensure(tamari.node_count() == 14 && tamari.edge_count() == 21, || "oracle has wrong size".into())?;
    ensure(lattice.len() == 14 && lattice.arcs.len() == 21, || {
        format!("lattice has {} elements and {} covers", lattice.len(), lattice.arcs.len())
    })?;
    ensure(petgraph::algo::is_isomorphic(&lattice.to_graph(), &tamari), || "not isomorphic to Tamari".into())?;
    let (src, snk) = (lattice.sources(), lattice.sinks());
    ensure(src.len() == 1 && snk.len() == 1, || "source or sink not unique".into())?;
    let e_cluster = cluster_map(&cs, cs.identity(), &c).map_err(err)?;
    let wo_cluster = cluster_map(&cs, cs.longest_element(), &c).map_err(err)?;
    ensure(lattice.clusters[src[0]] == e_cluster && lattice.clusters[snk[0]] == wo_cluster, || {
        "source/sink are not cl(e)/cl(w_o)".into()
    })?;
    Ok("14 elements, 21 covers, isomorphic to Tamari; source cl(e), sink cl(w_o)".into())
}

fn criterion_14() -> Outcome {
    let mut cases = 0;
    for g in ["A3", "B3", "I2:3", "I2:4", "I2:5", "I2:6"] {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        let perm = build_permutahedron(&cs, &a).map_err(err)?;
        for c in coxeter_elements(&cs) {
            let asso = build_associahedron(&cs, &c, &a).map_err(err)?;
            let fan = fan_coarsening(&perm, &asso).map_err(err)?;
            ensure(fan.is_coarsening() && fan.containing.len() == cs.order(), || {
                format!("{g}, c={}: not a coarsening", c.name(&cs, false))
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (W, c) pairs"))
}

fn criterion_15() -> Outcome {
    let cs = system("A3");
    let a = cs.roots.default_basepoint();
    let elements = coxeter_elements(&cs);
    let polys: Vec<_> = elements
        .iter()
        .map(|c| build_associahedron(&cs, c, &a))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut classes: Vec<BTreeSet<String>> = Vec::new();
    for (i, ci) in elements.iter().enumerate() {
        let mut class = BTreeSet::new();
        for (j, cj) in elements.iter().enumerate() {
            let predicate = isometry_equivalent(&cs, ci, cj, &a).map_err(err)?.is_some();
            let aligned = find_vertex_isometry(&polys[i].polytope, &polys[j].polytope).is_some();
            ensure(predicate == aligned, || {
                format!(
                    "{} vs {}: predicate {predicate}, float alignment {aligned}",
                    ci.name(&cs, false),
                    cj.name(&cs, false)
                )
            })?;
            if predicate {
                class.insert(cj.name(&cs, false));
            }
        }
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    let expected: Vec<BTreeSet<String>> = vec![
        ["t1t2t3", "t3t2t1"].iter().map(|s| s.to_string()).collect(),
        ["t1t3t2", "t2t1t3"].iter().map(|s| s.to_string()).collect(),
    ];
    classes.sort();
    ensure(classes == expected, || format!("classes {classes:?}"))?;
    Ok(format!("classes {classes:?}, float alignment agrees on all 16 pairs"))
}

fn criterion_16() -> Outcome {
    let mut parts = Vec::new();
    for (g, perm_n, asso_n) in [("A3", 24, 14), ("B3", 48, 20)] {
        let cs = system(g);
        let a = cs.roots.integral_basepoint().ok_or("no integral basepoint")?;
        for c in coxeter_elements(&cs) {
            let report = check_integer_coordinates(&cs, &c, &a).map_err(err)?;
            ensure(report.is_integral(), || report.violations.join("; "))?;
            ensure(
                report.permutahedron_vertices == perm_n && report.associahedron_vertices == asso_n,
                || format!("{g}: unexpected vertex counts"),
            )?;
        }
        parts.push(format!("{g} a={} ({perm_n}+{asso_n} integral)", cs.roots.simple_coordinates(&a)));
    }
    Ok(parts.join(", "))
}

/// Report only: the equality of centroids is an open problem.
fn criterion_17() -> Outcome {
    let mut lines = Vec::new();
    for g in ["I2:3", "I2:4", "I2:5", "I2:6", "A3", "B3"] {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        for c in coxeter_elements(&cs) {
            let line = match compare_centroids(&cs, &c, &a) {
                Ok(r) if r.equal => "equal".to_string(),
                Ok(r) => format!("DIFFER (max deviation {:?})", r.max_deviation),
                Err(e) => format!("error: {e}"),
            };
            lines.push(format!("{g}/{}: {line}", c.name(&cs, false)));
        }
    }
    Ok(format!("[report only] {}", lines.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 17] = [
        ("permutahedron vertex counts equal |W|", criterion_1),
        ("permutahedron simple of dimension |Δ|", criterion_2),
        ("orbit and halfspace constructions agree", criterion_3),
        ("oriented skeleton equals weak-order covers", criterion_4),
        ("associahedron facet counts |Δ|+|Φ⁺|", criterion_5),
        ("associahedron vertex counts", criterion_6),
        ("sortables, clusters and vertices agree", criterion_7),
        ("sorting words of w_o", criterion_8),
        ("singleton sets", criterion_9),
        ("shared vertices are the singletons; distributive sublattice", criterion_10),
        ("permutahedron inside associahedron", criterion_11),
        ("facet labels biject onto almost positive roots", criterion_12),
        ("Cambrian lattice of A3 is the Tamari lattice", criterion_13),
        ("Cambrian fan coarsens the Coxeter fan", criterion_14),
        ("isometry classes of A3 associahedra", criterion_15),
        ("integer coordinates for A3 and B3", criterion_16),
        ("centroids of permutahedron and associahedron", criterion_17),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
