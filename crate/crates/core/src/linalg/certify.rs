use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::modular::{char_poly_mod_p, root_multiplicity_mod_p, to_mod};
use super::{char_poly_with_cap, integer_roots, nullity, CharPoly, ExactMatrix, NullityMethod, NullityRoute};
use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCheck {
    pub eigenvalue: u64,
    pub claimed: u64,
    /// `dim - rank(L - eigenvalue I)`, exact.
    pub nullity: usize,
    pub route: NullityRoute,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub dimension: usize,
    pub multiplicity_sum: u64,
    pub trace: i128,
    pub weighted_sum: u128,
    pub multiplicities_match: bool,
    pub trace_matches: bool,
}

/// Evidence that a claimed spectrum is exactly the spectrum of a
/// symmetric integer matrix.
///
/// For symmetric matrices the nullity of `L - λI` is the multiplicity of
/// `λ`, so passing per-eigenvalue checks whose multiplicities add up to
/// the dimension account for every eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCertificate {
    pub checks: Vec<EigenCheck>,
    pub totals: Totals,
    pub symmetric: bool,
    pub verdict: bool,
}

impl SpectrumCertificate {
    pub fn first_failure(&self) -> Option<&EigenCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

pub fn certify_spectrum(l: &ExactMatrix, claimed: &Spectrum) -> SpectrumCertificate {
    certify_spectrum_with(l, claimed, NullityMethod::Auto)
}

pub fn certify_spectrum_with(l: &ExactMatrix, claimed: &Spectrum, method: NullityMethod) -> SpectrumCertificate {
    let checks: Vec<EigenCheck> = claimed
        .pairs()
        .par_iter()
        .map(|&(eigenvalue, claimed)| {
            let shifted = i64::try_from(eigenvalue).ok().and_then(|v| l.shifted(v).ok());
            let (nullity, route) = match shifted {
                Some(m) => {
                    let nl = nullity(&m, method);
                    (nl.nullity, nl.route)
                }
                // unrepresentable shift: |λ| exceeds every eigenvalue bound
                None => (0, NullityRoute::Bareiss),
            };
            EigenCheck {
                eigenvalue,
                claimed,
                nullity,
                route,
                pass: nullity as u64 == claimed,
            }
        })
        .collect();

    let trace = l.trace();
    let weighted_sum = claimed.weighted_sum();
    let totals = Totals {
        dimension: l.dim(),
        multiplicity_sum: claimed.size(),
        trace,
        weighted_sum,
        multiplicities_match: claimed.size() == l.dim() as u64,
        trace_matches: trace >= 0 && trace as u128 == weighted_sum,
    };
    let symmetric = l.is_symmetric();
    let verdict = symmetric && checks.iter().all(|c| c.pass) && totals.multiplicities_match && totals.trace_matches;
    SpectrumCertificate {
        checks,
        totals,
        symmetric,
        verdict,
    }
}

/// Spectrum of a symmetric matrix computed without any claimed answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSpectrum {
    /// Integer eigenvalues with exact multiplicities, decreasing.
    pub integer_eigenvalues: Vec<(i64, usize)>,
    /// `det(xI - L)` divided by the integer part; `None` when it was not
    /// computed because the dimension is above the polynomial cap.
    pub remainder: Option<CharPoly>,
    pub dimension: usize,
}

impl ExactSpectrum {
    pub fn integral_multiplicity(&self) -> usize {
        self.integer_eigenvalues.iter().map(|(_, m)| m).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_multiplicity() == self.dimension
    }

    /// Non-negative integer part as a [`Spectrum`], if every integer eigenvalue is >= 0.
    pub fn to_spectrum(&self) -> Option<Spectrum> {
        self.integer_eigenvalues
            .iter()
            .map(|&(v, m)| Some((u64::try_from(v).ok()?, m as u64)))
            .collect::<Option<Vec<_>>>()
            .map(Spectrum::new)
    }
}

/// Integer eigenvalues of a symmetric matrix with exact multiplicities.
///
/// Candidates in `[-R, R]` (`R` the largest absolute row sum) are screened
/// with the characteristic polynomial mod p, which keeps every true root;
/// each survivor's multiplicity is then the exact nullity of the shift.
/// When the integer part does not fill the dimension and `dim <= charpoly_cap`,
/// the exact characteristic polynomial supplies the non-integral remainder,
/// and its integer roots must agree with the nullity scan.
pub fn exact_integer_spectrum(m: &ExactMatrix, charpoly_cap: usize) -> Result<ExactSpectrum> {
    if !m.is_symmetric() {
        return Err(Error::InvalidParameter(
            "exact spectrum requires a symmetric matrix".into(),
        ));
    }
    let n = m.dim();
    let bound = i64::try_from(m.max_abs_row_sum()).map_err(|_| Error::Overflow("eigenvalue bound"))?;
    let cp = char_poly_mod_p(m);
    let candidates: Vec<i64> = (-bound..=bound)
        .rev()
        .filter(|&v| root_multiplicity_mod_p(&cp, to_mod(v)) > 0)
        .collect();
    let mut integer_eigenvalues: Vec<(i64, usize)> = candidates
        .par_iter()
        .map(|&v| -> Result<(i64, usize)> { Ok((v, nullity(&m.shifted(v)?, NullityMethod::Auto).nullity)) })
        .collect::<Result<Vec<_>>>()?;
    integer_eigenvalues.retain(|&(_, mult)| mult > 0);

    let found: usize = integer_eigenvalues.iter().map(|(_, k)| k).sum();
    let remainder = if found == n {
        Some(CharPoly::from_i64(&[1])?)
    } else if n <= charpoly_cap {
        let full = char_poly_with_cap(m, charpoly_cap)?;
        let stripped = integer_roots(&full);
        let from_poly: Vec<(i64, usize)> = stripped
            .roots
            .iter()
            .map(|(r, k)| (r.to_i64().unwrap_or(i64::MAX), *k))
            .collect();
        if from_poly != integer_eigenvalues {
            return Err(Error::Internal(format!(
                "integer roots {from_poly:?} of the characteristic polynomial disagree with nullities {integer_eigenvalues:?}"
            )));
        }
        Some(stripped.remainder)
    } else {
        None
    };
    Ok(ExactSpectrum {
        integer_eigenvalues,
        remainder,
        dimension: n,
    })
}
