//! Co-prime order graphs of finite abelian and dihedral groups.
//!
//! Two elements are adjacent when the gcd of their orders is 1 or a
//! prime. The crate builds these graphs, evaluates closed-form degree and
//! Laplacian-spectrum formulas for them, and checks every closed form
//! against brute force and exact integer linear algebra.

pub mod arith;
pub mod closed_form;
pub mod error;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod spectrum;
pub mod verify;

pub use closed_form::{
    build_block_l, classify_family, degree_abelian, degree_dihedral, spectrum_abelian_p_group, spectrum_block,
    spectrum_dihedral_prime_power, spectrum_elementary_abelian, spectrum_pq, SpectrumFamily,
};
pub use error::{Error, Result};
pub use graph::{adjacent, build_graph, CoprimeOrderGraph, ExportFormat};
pub use group::{
    canonicalize_abelian, decompose_order, enumerate_abelian_groups_of_order, parse_group_spec, AbelianCanonicalForm,
    GroupElement, GroupSpec, OrderDecomposition, OrderProfile, DEFAULT_CAP,
};
pub use linalg::{certify_spectrum, ExactMatrix, SpectrumCertificate};
pub use spectrum::Spectrum;
pub use verify::{VerificationReport, VerifyTarget};
