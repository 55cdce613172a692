//! Everything that depends on a Coxeter element `c`: sorting words,
//! singletons, the associahedron `Asso^a_c(W)`, its facet labels and
//! clusters, the Cambrian lattice and the comparison checks against the
//! permutahedron.

mod associahedron;
mod checks;
mod lattice;
mod singletons;
mod sorting;

pub use associahedron::{build_associahedron, last_root, Associahedron};
pub use checks::{
    check_integer_coordinates, compare_centroids, diagram_automorphisms, fan_coarsening, find_vertex_isometry,
    isometry_equivalent, CentroidReport, FanCoarsening, IntegralityReport, IsometryWitness,
};
pub use lattice::{cambrian_lattice, cluster_map, is_distributive_sublattice, CambrianLattice};
pub use singletons::{c_singletons, Heap};
pub use sorting::{c_sortables, c_sorting_word, coxeter_elements, is_c_sortable, CoxeterElement, SortingWord};
