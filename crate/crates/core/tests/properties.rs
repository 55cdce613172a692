use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use itertools::Itertools;
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use proptest::prelude::*;
use proptest::sample::select;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxeter_assoc::cambrian::{build_associahedron, c_singletons, cambrian_lattice, coxeter_elements, CoxeterElement};
use coxeter_assoc::coxeter::CoxeterSystem;
use coxeter_assoc::permutahedron::build_permutahedron;
use coxeter_assoc::polytope::{enumerate_vertices, Polytope};
use coxeter_assoc::{GroupType, Scalar, Vector};

const GROUPS: &[&str] = &["I2:3", "I2:4", "I2:5", "I2:6", "A2", "A3", "B2", "B3", "H3", "I2:4xA1"];

fn systems() -> &'static Vec<CoxeterSystem> {
    static CELL: OnceLock<Vec<CoxeterSystem>> = OnceLock::new();
    CELL.get_or_init(|| {
        GROUPS
            .iter()
            .map(|g| CoxeterSystem::build(&g.parse::<GroupType>().unwrap()).unwrap())
            .collect()
    })
}

fn system(name: &str) -> &'static CoxeterSystem {
    &systems()[GROUPS.iter().position(|g| *g == name).unwrap()]
}

fn any_system() -> impl Strategy<Value = &'static CoxeterSystem> {
    (0..GROUPS.len()).prop_map(|i| &systems()[i])
}

fn any_element() -> impl Strategy<Value = (&'static CoxeterSystem, usize)> {
    any_system().prop_flat_map(|cs| (Just(cs), 0..cs.order()))
}

// ---------------------------------------------------------------- scalars

fn small_ratio() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..=40, 1i64..=12)
}

fn scalar_in(radicand: Option<u32>) -> BoxedStrategy<Scalar> {
    match radicand {
        None => small_ratio().prop_map(|(n, d)| Scalar::from_ratio(n, d)).boxed(),
        Some(r) => (small_ratio(), small_ratio())
            .prop_map(move |(a, b)| Scalar::quadratic(a, b, r))
            .boxed(),
    }
}

fn field_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    select(vec![None, Some(2u32), Some(3), Some(5)])
        .prop_flat_map(|r| (scalar_in(r), scalar_in(r), scalar_in(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn scalar_field_axioms((x, y, z) in field_triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Scalar::zero());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn scalar_sign_matches_float((x, y, _z) in field_triple()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.is_positive(), f > 0.0);
        }
        prop_assert!(!(&x * &x).is_negative());
        prop_assert_eq!(x < y, (&y - &x).is_positive());
    }
}

// ---------------------------------------------------------------- roots and groups

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reflections_permute_roots_and_preserve_the_form(
        (cs, i, j, k) in any_system().prop_flat_map(|cs| {
            let n = cs.roots.len();
            (Just(cs), 0..n, 0..n, 0..n)
        })
    ) {
        let r = &cs.roots;
        let image = r.reflect(i, &r.roots[j].coords).unwrap();
        prop_assert!(r.find(&image).is_some());
        prop_assert_eq!(r.reflect(i, &image).unwrap(), r.roots[j].coords.clone());
        let other = r.reflect(i, &r.roots[k].coords).unwrap();
        prop_assert_eq!(r.inner(&image, &other), r.inner(&r.roots[j].coords, &r.roots[k].coords));
    }

    #[test]
    fn action_does_not_depend_on_the_reduced_word((cs, w) in any_element(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Strip random right descents to produce a random reduced word.
        let mut word = Vec::new();
        let mut u = w;
        while cs.length(u) > 0 {
            let descents: Vec<usize> = (0..cs.rank()).filter(|&s| cs.is_right_descent(u, s)).collect();
            let s = *descents.choose(&mut rng).unwrap();
            word.push(s);
            u = cs.right_multiply(u, s);
        }
        word.reverse();
        prop_assert!(cs.is_reduced(&word));
        prop_assert_eq!(cs.from_word(&word), w);
        let a = cs.roots.default_basepoint();
        prop_assert_eq!(cs.act_word(&word, &a).unwrap(), cs.act(w, &a).unwrap());
    }

    #[test]
    fn lengths_change_by_one((cs, w) in any_element()) {
        for s in 0..cs.rank() {
            let ws = cs.right_multiply(w, s);
            let up = cs.length(ws) == cs.length(w) + 1;
            let down = cs.length(ws) + 1 == cs.length(w);
            prop_assert!(up ^ down);
            prop_assert_eq!(down, cs.is_right_descent(w, s));
        }
        prop_assert_eq!(cs.inversion_set(w).count_ones() as usize, cs.length(w));
    }

    #[test]
    fn weak_order_join_and_meet_are_least_and_greatest(
        (cs, u, v) in any_system().prop_flat_map(|cs| (Just(cs), 0..cs.order(), 0..cs.order()))
    ) {
        let weak = cs.weak_order();
        let (j, m) = (weak.join(u, v), weak.meet(u, v));
        prop_assert!(weak.leq(u, j) && weak.leq(v, j));
        prop_assert!(weak.leq(m, u) && weak.leq(m, v));
        for x in 0..cs.order() {
            if weak.leq(u, x) && weak.leq(v, x) {
                prop_assert!(weak.leq(j, x));
            }
            if weak.leq(x, u) && weak.leq(x, v) {
                prop_assert!(weak.leq(x, m));
            }
        }
    }
}

#[test]
fn length_is_cayley_distance() {
    for cs in systems() {
        let mut dist = vec![usize::MAX; cs.order()];
        dist[cs.identity()] = 0;
        let mut queue = VecDeque::from([cs.identity()]);
        while let Some(w) = queue.pop_front() {
            for s in 0..cs.rank() {
                let ws = cs.right_multiply(w, s);
                if dist[ws] == usize::MAX {
                    dist[ws] = dist[w] + 1;
                    queue.push_back(ws);
                }
            }
        }
        for w in 0..cs.order() {
            assert_eq!(dist[w], cs.length(w));
        }
        let wo = cs.longest_element();
        assert_eq!(cs.multiply(wo, wo), cs.identity());
        assert_eq!(cs.length(wo), cs.roots.num_positive());
    }
}

#[test]
fn weak_order_is_a_lattice_on_small_groups() {
    for cs in systems().iter().filter(|cs| cs.order() <= 48) {
        let weak = cs.weak_order();
        let n = cs.order();
        for u in 0..n {
            for v in 0..n {
                let j = weak.join(u, v);
                assert_eq!(j, weak.join(v, u));
                assert_eq!(weak.meet(u, j), u);
                for x in 0..n {
                    if weak.leq(u, x) && weak.leq(v, x) {
                        assert!(weak.leq(j, x));
                    }
                }
            }
        }
        assert_eq!(weak.minimum(), cs.identity());
        assert_eq!(weak.maximum(), cs.longest_element());
    }
}

// ---------------------------------------------------------------- polytopes

fn vertex_set(p: &Polytope) -> BTreeSet<Vector> {
    p.vertices.iter().map(|v| v.coords.clone()).collect()
}

fn check_euler(p: &Polytope) {
    let f = p.f_vector();
    match f.len() {
        2 => assert_eq!(f[0], f[1]),
        3 => assert_eq!(f[0] + f[2], f[1] + 2),
        d => panic!("unexpected dimension {d}"),
    }
}

fn check_incidence(p: &Polytope) {
    for v in &p.vertices {
        let tight: Vec<usize> = (0..p.halfspaces.len())
            .filter(|&h| p.context.inner(&p.halfspaces[h].normal, &v.coords) == p.halfspaces[h].offset)
            .collect();
        assert_eq!(tight, v.incident);
        assert!(p.contains_point(&v.coords));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertices_ignore_halfspace_order(seed in any::<u64>(), g in select(vec!["A3", "B3", "I2:5", "I2:4xA1"])) {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        let perm = build_permutahedron(cs, &a).unwrap();
        let mut shuffled = perm.polytope.halfspaces.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let again = enumerate_vertices(&cs.roots.context, shuffled, perm.polytope.hull.clone()).unwrap();
        prop_assert_eq!(vertex_set(&again), vertex_set(&perm.polytope));
        prop_assert_eq!(again.f_vector(), perm.polytope.f_vector());
    }

    #[test]
    fn generic_basepoints_give_one_vertex_per_element(
        (cs, coords) in select(vec!["A2", "A3", "B3", "I2:4", "I2:6"]).prop_flat_map(|g| {
            let cs = system(g);
            (Just(cs), proptest::collection::vec(1i64..8, cs.rank()))
        })
    ) {
        let a = coords.iter().enumerate().fold(Vector::zeros(cs.roots.dim()), |acc, (i, &k)| {
            &acc + &cs.roots.fundamental_weight(i).scale(&Scalar::from_int(k))
        });
        prop_assert!(cs.roots.is_generic(&a).unwrap());
        let perm = build_permutahedron(cs, &a).unwrap();
        prop_assert_eq!(perm.polytope.vertices.len(), cs.order());
        prop_assert!(perm.polytope.is_simple());
        for c in coxeter_elements(cs) {
            let asso = build_associahedron(cs, &c, &a).unwrap();
            prop_assert!(asso.polytope.is_simple());
            prop_assert_eq!(asso.polytope.f_vector(), build_associahedron(cs, &c, &cs.roots.default_basepoint()).unwrap().polytope.f_vector());
        }
    }

    #[test]
    fn commuting_letters_of_c_do_not_matter(seed in any::<u64>(), g in select(vec!["A3", "B3", "H3", "I2:4xA1"])) {
        let cs = system(g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in coxeter_elements(cs) {
            let mut word = c.word.clone();
            for _ in 0..8 {
                let i = rng.gen_range(0..word.len() - 1);
                if cs.m(word[i], word[i + 1]) == 2 {
                    word.swap(i, i + 1);
                }
            }
            let d = CoxeterElement::from_word(cs, &word).unwrap();
            prop_assert_eq!(&d, &c);
            prop_assert_eq!(c_singletons(cs, &d), c_singletons(cs, &c));
        }
    }
}

#[test]
fn incidence_and_euler_relation() {
    for cs in systems() {
        let a = cs.roots.default_basepoint();
        let perm = build_permutahedron(cs, &a).unwrap();
        check_incidence(&perm.polytope);
        check_euler(&perm.polytope);
        for c in coxeter_elements(cs) {
            let asso = build_associahedron(cs, &c, &a).unwrap();
            if asso.polytope.is_exact() {
                check_incidence(&asso.polytope);
            }
            check_euler(&asso.polytope);
        }
    }
}

#[test]
fn permutahedron_faces_are_coset_orbits() {
    for cs in systems() {
        let perm = build_permutahedron(cs, &cs.roots.default_basepoint()).unwrap();
        let r = cs.rank();
        let cosets: usize = (0..r)
            .map(|a| cs.parabolic_cosets(&(0..r).filter(|&s| s != a).collect::<Vec<_>>()).len())
            .sum();
        assert_eq!(perm.polytope.facets.len(), cosets, "{}", cs.group_type());
        let lattice = perm.polytope.face_lattice();
        for (k, faces) in lattice.iter().enumerate() {
            let faces: BTreeSet<_> = faces.iter().cloned().collect();
            assert_eq!(faces, perm.coset_faces(k), "{} dim {k}", cs.group_type());
        }
    }
}

#[test]
fn associahedron_refines_permutahedron_and_orients_acyclically() {
    for cs in systems() {
        let a = cs.roots.default_basepoint();
        let perm = build_permutahedron(cs, &a).unwrap();
        let perm_halfspaces: BTreeSet<_> = perm.polytope.halfspaces.iter().map(|h| h.label).collect();
        for c in coxeter_elements(cs) {
            let asso = build_associahedron(cs, &c, &a).unwrap();
            for h in &asso.polytope.halfspaces {
                assert!(perm_halfspaces.contains(&h.label));
                let twin = perm.polytope.halfspaces.iter().find(|g| g.label == h.label).unwrap();
                assert_eq!(twin.normal, h.normal);
                assert_eq!(twin.offset, h.offset);
            }
            let lattice = cambrian_lattice(&asso).unwrap();
            assert!(lattice.is_acyclic());
            let undirected: BTreeSet<(usize, usize)> =
                lattice.arcs.iter().map(|&(p, q)| (p.min(q), p.max(q))).collect();
            let skeleton: BTreeSet<(usize, usize)> = asso.polytope.edges().into_iter().collect();
            assert_eq!(undirected, skeleton);
            assert_eq!(lattice.sources().len(), 1);
            assert_eq!(lattice.sinks().len(), 1);
        }
    }
}

// ---------------------------------------------------------------- LP sampling oracle

/// Maximises random linear functionals over the halfspace system in hull
/// coordinates and counts the distinct optimal points.
fn lp_vertex_count(p: &Polytope, samples: usize, seed: u64) -> usize {
    let rows: Vec<(Vec<f64>, f64)> = p
        .halfspaces
        .iter()
        .map(|h| {
            let coeffs = p.hull.basis.iter().map(|b| p.context.inner(&h.normal, b).to_f64()).collect();
            let rhs = (&h.offset - &p.context.inner(&h.normal, &p.hull.origin)).to_f64();
            (coeffs, rhs)
        })
        .collect();
    let d = p.hull.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Vec<f64>> = Vec::new();
    for _ in 0..samples {
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = (0..d)
            .map(|_| lp.add_var(rng.gen_range(-1.0..1.0), (f64::NEG_INFINITY, f64::INFINITY)))
            .collect();
        for (coeffs, rhs) in &rows {
            let expr: Vec<_> = vars.iter().copied().zip(coeffs.iter().copied()).collect();
            lp.add_constraint(&expr[..], ComparisonOp::Le, *rhs);
        }
        let sol = lp.solve().expect("bounded feasible LP");
        let x: Vec<f64> = vars.iter().map(|&v| sol[v]).collect();
        if !found.iter().any(|y| y.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-6)) {
            found.push(x);
        }
    }
    found.len()
}

#[test]
fn lp_sampling_agrees_on_vertex_counts() {
    for (g, samples) in [("I2:5", 400), ("A3", 2_000), ("B3", 4_000), ("I2:4xA1", 1_000)] {
        let cs = system(g);
        let a = cs.roots.default_basepoint();
        let perm = build_permutahedron(cs, &a).unwrap();
        assert_eq!(lp_vertex_count(&perm.polytope, samples, 7), perm.polytope.vertices.len(), "{g}");
        for (i, c) in coxeter_elements(cs).iter().enumerate() {
            let asso = build_associahedron(cs, c, &a).unwrap();
            assert_eq!(
                lp_vertex_count(&asso.polytope, samples, 11 + i as u64),
                asso.polytope.vertices.len(),
                "{g} {}",
                c.name(cs, false)
            );
        }
    }
}

#[test]
fn cambrian_lattices_of_type_a_match_tamari_sizes() {
    let cs = system("A3");
    let sizes: Vec<usize> = coxeter_elements(cs)
        .iter()
        .map(|c| cambrian_lattice(&build_associahedron(cs, c, &cs.roots.default_basepoint()).unwrap()).unwrap().len())
        .dedup()
        .collect();
    assert_eq!(sizes, vec![14]);
}
