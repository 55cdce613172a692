use std::fmt::Write as _;

use serde_json::json;

use coxeter_assoc::cambrian::{build_associahedron, c_sorting_word, cambrian_lattice, Associahedron};
use coxeter_assoc::coxeter::CoxeterSystem;
use coxeter_assoc::permutahedron::build_permutahedron;
use coxeter_assoc::Error;

use crate::config::{Format, Object, RunConfig};

/// Renders the requested object. Format/object pairs without a rendering
/// are rejected as parse errors before anything is built.
pub fn render(cfg: &RunConfig, object: Object, format: Format) -> Result<String, Error> {
    check_supported(object, format)?;
    let cs = cfg.system()?;
    let pretty = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("json value") + "\n";
    match object {
        Object::RootSystem => Ok(pretty(cs.roots.to_json())),
        Object::WeakOrder => Ok(match format {
            Format::Json => pretty(weak_order_json(&cs)),
            _ => weak_order_dot(&cs),
        }),
        Object::Permutahedron => {
            let a = cfg.basepoint.resolve(&cs)?;
            let perm = build_permutahedron(&cs, &a)?;
            match format {
                Format::Json => Ok(pretty(perm.to_json())),
                Format::Off => perm.polytope.to_off(),
                Format::Dot => Ok(perm.to_dot()),
            }
        }
        Object::Associahedron => {
            let a = cfg.basepoint.resolve(&cs)?;
            let c = cfg.coxeter_element(&cs)?;
            let asso = build_associahedron(&cs, &c, &a)?;
            match format {
                Format::Json => Ok(pretty(asso.to_json()?)),
                Format::Off => asso.polytope.to_off(),
                Format::Dot => associahedron_dot(&asso),
            }
        }
        Object::CambrianLattice => {
            let a = cfg.basepoint.resolve(&cs)?;
            let c = cfg.coxeter_element(&cs)?;
            let asso = build_associahedron(&cs, &c, &a)?;
            let lattice = cambrian_lattice(&asso)?;
            match format {
                Format::Dot => Ok(lattice.to_dot(&cs)),
                _ => Ok(pretty(json!({
                    "group": cs.group_type().to_string(),
                    "coxeter_element": c.name(&cs, false),
                    "elements": lattice.clusters.iter().zip(&lattice.sortable).map(|(cl, &w)| json!({
                        "sortable": c_sorting_word(&cs, w, &c).format(&cs, false),
                        "cluster": cl.iter().map(|&r| cs.roots.root_in_simple_basis(r)).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "covers": lattice.arcs,
                }))),
            }
        }
    }
}

fn check_supported(object: Object, format: Format) -> Result<(), Error> {
    let ok = match object {
        Object::Permutahedron | Object::Associahedron => true,
        Object::CambrianLattice | Object::WeakOrder => format != Format::Off,
        Object::RootSystem => format == Format::Json,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "{} cannot be written as {}",
            object_name(object),
            format_name(format)
        )))
    }
}

fn object_name(o: Object) -> &'static str {
    match o {
        Object::Permutahedron => "permutahedron",
        Object::Associahedron => "associahedron",
        Object::CambrianLattice => "cambrian-lattice",
        Object::WeakOrder => "weak-order",
        Object::RootSystem => "root-system",
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Off => "off",
        Format::Dot => "dot",
    }
}

fn weak_order_json(cs: &CoxeterSystem) -> serde_json::Value {
    let weak = cs.weak_order();
    json!({
        "group": cs.group_type().to_string(),
        "elements": (0..cs.order()).map(|w| cs.element_name(w)).collect::<Vec<_>>(),
        "covers": weak.covers,
    })
}

fn weak_order_dot(cs: &CoxeterSystem) -> String {
    let mut out = String::from("digraph weak_order {\n");
    for w in 0..cs.order() {
        writeln!(out, "  n{w} [label=\"{}\"];", cs.format_word(cs.word(w), true)).unwrap();
    }
    for (u, v) in cs.weak_order().covers {
        writeln!(out, "  n{u} -> n{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Undirected 1-skeleton with vertices labelled by their clusters.
fn associahedron_dot(asso: &Associahedron<'_>) -> Result<String, Error> {
    let cs = asso.system;
    let clusters = asso.vertex_clusters()?;
    let mut out = String::from("graph associahedron {\n");
    for (v, cl) in clusters.iter().enumerate() {
        let roots: Vec<String> = cl.iter().map(|&r| cs.roots.root_in_simple_basis(r)).collect();
        writeln!(out, "  v{v} [label=\"{{{}}}\"];", roots.join(", ")).unwrap();
    }
    for (p, q) in asso.polytope.edges() {
        writeln!(out, "  v{p} -- v{q};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ArithMode;

    #[test]
    fn rejects_unrenderable_pairs() {
        assert!(check_supported(Object::RootSystem, Format::Off).is_err());
        assert!(check_supported(Object::CambrianLattice, Format::Off).is_err());
        assert!(check_supported(Object::Associahedron, Format::Off).is_ok());
    }

    #[test]
    fn hexagon_skeleton() {
        let cfg = RunConfig::new("I2:4", Some("ts".into()), "default", ArithMode::Auto).unwrap();
        let dot = render(&cfg, Object::Associahedron, Format::Dot).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
