//! Exact computation of the Orchard relation: the natural partition of a
//! generic point configuration into at most two classes, defined by the
//! parity of the number of separating hyperplanes.
//!
//! The crate covers affine configurations in `R^d`, their flips, point sets
//! that are generic for a function family (circles, conics, interpolation
//! polynomials), antipodal configurations on spheres, projective
//! configurations and simple pseudoline arrangements. All predicates are
//! evaluated with exact rational arithmetic.
//!
//! ```
//! use orchard::{Configuration, Method, orchard_partition};
//!
//! let line = Configuration::on_line(&[1, 2, 3, 4, 5]);
//! let p = orchard_partition(&line, Method::AllPairs).unwrap();
//! assert_eq!(p.class_a, vec![1, 3, 5]);
//! assert_eq!(p.class_b, vec![2, 4]);
//! ```

pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod family;
pub mod flip;
pub mod poly;
pub mod projective;
pub mod pseudoline;
pub mod relation;
pub mod svg;

pub use config::{
    chirotope, det_sign, is_generic, random_generic, same_isomorphism_type, Chirotope,
    Configuration, Point,
};
pub use error::{OrchardError, Result};
pub use exact::{Rat, Sign};
pub use family::{
    c_generic, c_orchard_partition, c_separating_count, veronese_image, FunctionFamily,
    GeneralizedConfiguration,
};
pub use flip::{
    apply_flip, classify_flip, pointed_parity_experiment, random_flip, verify_flip_proposition,
    FlipResult, FlipSpec,
};
pub use projective::{
    gamma_graph, project_to_chart, projective_orchard, spherical_orchard,
    verify_homological_triviality, Chart, HomogeneousConfiguration, SignedPartition,
};
pub use pseudoline::{
    desingularize, digon_counts, dualize, pseudoline_orientation, pseudoline_partition,
    triangle_move, CurveReport, DigonCounts, DualDiagram, PseudolineOrientation, Smoothing,
    WiringDiagram,
};
pub use relation::{
    omega_invariant, orchard_partition, orchard_related, orchard_tree, phi_invariant,
    separating_count, sign_product_related, Class, Method, OrchardPartition, OrchardTree,
};
