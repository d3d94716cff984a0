//! Exact integer linear algebra: rank, determinant, characteristic
//! polynomials, integer eigenvalues and spectrum certificates.

mod bareiss;
mod certify;
mod charpoly;
mod matrix;
pub mod modular;
mod roots;

pub use bareiss::{bareiss_eliminate, Elimination};
pub use certify::{
    certify_spectrum, certify_spectrum_with, exact_integer_spectrum, EigenCheck, ExactSpectrum, SpectrumCertificate,
    Totals,
};
pub use charpoly::{char_poly, char_poly_with_cap, CharPoly, DEFAULT_CHARPOLY_CAP};
pub use matrix::ExactMatrix;
pub use modular::{nullity, Nullity, NullityMethod, NullityRoute};
pub use roots::{integer_roots, IntegerRoots};
