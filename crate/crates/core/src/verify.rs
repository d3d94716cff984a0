//! Sweeps that check every closed form against brute force or an exact
//! spectrum certificate over a range of groups.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{partitions, primes_up_to};
use crate::closed_form::{
    build_block_l, classify_family, degree_abelian, degree_dihedral, spectrum_block, SpectrumFamily,
};
use crate::error::{Error, Result};
use crate::graph::{build_graph, CoprimeOrderGraph};
use crate::group::{canonicalize_abelian, enumerate_abelian_groups_of_order, GroupSpec};
use crate::linalg::certify_spectrum;

pub const DEFAULT_MAX_ORDER: u64 = 200;
pub const DEFAULT_MAX_N: u64 = 100;
pub const DEFAULT_MAX_SPECTRUM_SIZE: u64 = 750;
pub const DEFAULT_MAX_PQ: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    DegreesAbelian,
    DegreesDihedral,
    Spectra,
    Block,
}

impl FromStr for VerifyTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrees-abelian" => Ok(VerifyTarget::DegreesAbelian),
            "degrees-dihedral" => Ok(VerifyTarget::DegreesDihedral),
            "spectra" => Ok(VerifyTarget::Spectra),
            "block" => Ok(VerifyTarget::Block),
            other => Err(Error::InvalidParameter(format!("unknown verify target {other:?}"))),
        }
    }
}

impl fmt::Display for VerifyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyTarget::DegreesAbelian => "degrees-abelian",
            VerifyTarget::DegreesDihedral => "degrees-dihedral",
            VerifyTarget::Spectra => "spectra",
            VerifyTarget::Block => "block",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub parameters: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: VerifyTarget,
    pub range: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub first_failure: Option<CaseFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }

    /// Aggregates case outcomes in their given order; callers pass them sorted.
    fn from_outcomes(target: VerifyTarget, range: String, outcomes: Vec<Result<(), CaseFailure>>) -> Self {
        let cases_run = outcomes.len();
        let cases_passed = outcomes.iter().filter(|o| o.is_ok()).count();
        let first_failure = outcomes.into_iter().find_map(|o| o.err());
        VerificationReport {
            target,
            range,
            cases_run,
            cases_passed,
            first_failure,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "range: {}", self.range)?;
        writeln!(f, "cases run: {}", self.cases_run)?;
        writeln!(f, "cases passed: {}", self.cases_passed)?;
        if let Some(fail) = &self.first_failure {
            writeln!(f, "first failure: {}: {}", fail.parameters, fail.detail)?;
        }
        write!(f, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn check_bound(bound: u128, cap: usize, what: &str) -> Result<()> {
    if bound > cap as u128 {
        return Err(Error::CapExceeded { order: bound, cap });
    }
    if bound == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

/// Per order class: `Ok(degree)` when every vertex of that order has the
/// same brute-force degree.
fn uniform_class_degrees(graph: &CoprimeOrderGraph) -> Vec<(u64, usize, Result<usize, String>)> {
    graph
        .order_classes()
        .into_iter()
        .map(|(order, range)| {
            let count = range.len();
            let first = graph.brute_degree(range.start).expect("index in range");
            let uniform = range
                .clone()
                .all(|i| graph.brute_degree(i).expect("index in range") == first);
            let outcome = if uniform {
                Ok(first)
            } else {
                Err(format!("vertices of order {order} have differing degrees"))
            };
            (order, count, outcome)
        })
        .collect()
}

fn abelian_degree_cases(spec: &GroupSpec, cap: usize) -> Vec<Result<(), CaseFailure>> {
    let GroupSpec::Abelian(factors) = spec else {
        unreachable!("abelian sweep got {spec}")
    };
    let canon = canonicalize_abelian(factors);
    let graph = match build_graph(spec, cap) {
        Ok(g) => g,
        Err(e) => {
            return vec![Err(CaseFailure {
                parameters: spec.to_string(),
                detail: e.to_string(),
            })]
        }
    };
    uniform_class_degrees(&graph)
        .into_iter()
        .map(|(order, _, brute)| {
            let fail = |detail: String| CaseFailure {
                parameters: format!("{spec}, order {order}"),
                detail,
            };
            let brute = brute.map_err(fail)?;
            let formula = degree_abelian(&canon, order).map_err(|e| fail(e.to_string()))?;
            if formula as usize == brute {
                Ok(())
            } else {
                Err(fail(format!("formula {formula} != brute force {brute}")))
            }
        })
        .collect()
}

/// Closed-form degree vs brute force for every abelian group (one per
/// isomorphism class) of order `<= max_order` and every element order.
pub fn verify_degrees_abelian(max_order: u64, cap: usize) -> Result<VerificationReport> {
    check_bound(max_order as u128, cap, "max order")?;
    let groups: Vec<GroupSpec> = (1..=max_order).flat_map(enumerate_abelian_groups_of_order).collect();
    let outcomes: Vec<Result<(), CaseFailure>> = groups
        .par_iter()
        .map(|g| abelian_degree_cases(g, cap))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::from_outcomes(
        VerifyTarget::DegreesAbelian,
        format!("abelian groups of order 1..={max_order} ({} classes)", groups.len()),
        outcomes,
    ))
}

fn dihedral_degree_cases(n: u64, cap: usize) -> Vec<Result<(), CaseFailure>> {
    let built = build_graph(&GroupSpec::Dihedral(n), cap)
        .and_then(|d| Ok((d, build_graph(&GroupSpec::Abelian(vec![n]), cap)?)));
    let (dihedral, cyclic) = match built {
        Ok(pair) => pair,
        Err(e) => {
            return vec![Err(CaseFailure {
                parameters: format!("D{n}"),
                detail: e.to_string(),
            })]
        }
    };
    let cyclic_degrees = uniform_class_degrees(&cyclic);
    uniform_class_degrees(&dihedral)
        .into_iter()
        .map(|(order, _, brute)| {
            let fail = |detail: String| CaseFailure {
                parameters: format!("D{n}, order {order}"),
                detail,
            };
            let brute = brute.map_err(fail)?;
            let formula = degree_dihedral(n, order).map_err(|e| fail(e.to_string()))?;
            if formula as usize != brute {
                return Err(fail(format!("formula {formula} != brute force {brute}")));
            }
            if order != 2 {
                let in_cyclic = cyclic_degrees
                    .iter()
                    .find(|(o, _, _)| *o == order)
                    .ok_or_else(|| fail(format!("order {order} missing from Z{n}")))?
                    .2
                    .clone()
                    .map_err(fail)?;
                if brute != in_cyclic + n as usize {
                    return Err(fail(format!("degree {brute} in D{n} != {in_cyclic} in Z{n} + {n}")));
                }
            }
            Ok(())
        })
        .collect()
}

/// Closed-form dihedral degree vs brute force for `3 <= n <= max_n`, plus
/// the rotation-subgroup relation for every order other than 2.
pub fn verify_degrees_dihedral(max_n: u64, cap: usize) -> Result<VerificationReport> {
    check_bound(2 * max_n as u128, cap, "max n")?;
    let outcomes = (3..=max_n)
        .into_par_iter()
        .map(|n| dihedral_degree_cases(n, cap))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::from_outcomes(
        VerifyTarget::DegreesDihedral,
        format!("D_n for 3 <= n <= {max_n}"),
        outcomes,
    ))
}

/// Certifies `spectrum_block(p, q)` against `build_block_l(p, q)` for all
/// `1 <= p, q <= max_pq`.
pub fn verify_block(max_pq: usize, cap: usize) -> Result<VerificationReport> {
    check_bound(2 * max_pq as u128, cap, "max p,q")?;
    let pairs: Vec<(usize, usize)> = (1..=max_pq).flat_map(|p| (1..=max_pq).map(move |q| (p, q))).collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(p, q)| {
            let fail = |detail: String| CaseFailure {
                parameters: format!("p={p}, q={q}"),
                detail,
            };
            let l = build_block_l(p, q).map_err(|e| fail(e.to_string()))?;
            let claimed = spectrum_block(p, q).map_err(|e| fail(e.to_string()))?;
            let cert = certify_spectrum(&l, &claimed);
            if cert.verdict {
                Ok(())
            } else {
                Err(fail(format!(
                    "certificate failed for {claimed}: {:?}",
                    cert.first_failure()
                )))
            }
        })
        .collect();
    Ok(VerificationReport::from_outcomes(
        VerifyTarget::Block,
        format!("1 <= p, q <= {max_pq}"),
        outcomes,
    ))
}

/// `(Z_p)^t` with `p` in `primes` (all primes when `None`) and `p^t <= max_size`.
pub fn elementary_abelian_members(max_size: u64, primes: Option<&[u64]>) -> Vec<SpectrumFamily> {
    let all = primes_up_to(max_size);
    let primes = primes.unwrap_or(&all);
    let mut out = Vec::new();
    for &p in primes {
        let mut t = 1;
        while p.checked_pow(t).is_some_and(|s| s <= max_size) {
            out.push(SpectrumFamily::ElementaryAbelian { p, t });
            t += 1;
        }
    }
    out
}

/// Abelian p-groups of order `<= max_size` with some exponent `>= 2`.
pub fn abelian_p_group_members(max_size: u64) -> Vec<SpectrumFamily> {
    let mut out = Vec::new();
    for p in primes_up_to(max_size) {
        let mut a = 2;
        while p.checked_pow(a).is_some_and(|s| s <= max_size) {
            for parts in partitions(a) {
                if parts[0] >= 2 {
                    let mut exponents = parts;
                    exponents.reverse();
                    out.push(SpectrumFamily::AbelianPGroup { p, exponents });
                }
            }
            a += 1;
        }
    }
    out
}

/// `(Z_p)^t x (Z_q)^s`, `p < q`, with `p^t q^s <= max_size`.
pub fn elementary_pq_members(max_size: u64) -> Vec<SpectrumFamily> {
    let primes = primes_up_to(max_size / 2);
    let powers = |p: u64| {
        (1u32..)
            .map(move |t| (t, p.checked_pow(t)))
            .take_while(move |(_, v)| v.is_some_and(|v| v <= max_size))
            .map(|(t, v)| (t, v.unwrap_or(u64::MAX)))
    };
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for (t, a) in powers(p) {
                for (s, b) in powers(q) {
                    if a.saturating_mul(b) <= max_size {
                        out.push(SpectrumFamily::ElementaryPq { p, t, q, s });
                    }
                }
            }
        }
    }
    out
}

/// `D_{p^n}` (excluding `D_2`) with `p^n <= max_rotations`.
pub fn dihedral_prime_power_members(max_rotations: u64) -> Vec<SpectrumFamily> {
    let mut out = Vec::new();
    for p in primes_up_to(max_rotations) {
        let mut n = if p == 2 { 2 } else { 1 };
        while p.checked_pow(n).is_some_and(|r| r <= max_rotations) {
            out.push(SpectrumFamily::DihedralPrimePower { p, n });
            n += 1;
        }
    }
    out
}

/// All family members whose graph has at most `max_size` vertices.
pub fn spectrum_family_members(max_size: u64) -> Vec<SpectrumFamily> {
    let mut out = elementary_abelian_members(max_size, None);
    out.extend(abelian_p_group_members(max_size));
    out.extend(elementary_pq_members(max_size));
    out.extend(dihedral_prime_power_members(max_size / 2));
    out
}

/// One spectrum case: the family is re-derived from the group, the
/// Laplacian must be the literal block matrix, and the closed form must
/// certify against the Laplacian.
pub fn check_family_member(family: &SpectrumFamily, cap: usize) -> Result<(), CaseFailure> {
    let group = family.group();
    let fail = |detail: String| CaseFailure {
        parameters: format!("{family}"),
        detail,
    };
    let detected = classify_family(&group).map_err(|e| fail(e.to_string()))?;
    if &detected != family {
        return Err(fail(format!("classified as {detected}")));
    }
    let claimed = family.spectrum().map_err(|e| fail(e.to_string()))?;
    let graph = build_graph(&group, cap).map_err(|e| fail(e.to_string()))?;
    let laplacian = graph.laplacian();
    let (p, q) = family.block_shape();
    if build_block_l(p, q).ok().as_ref() != Some(&laplacian) {
        return Err(fail(format!("Laplacian is not the ({p}, {q}) block matrix")));
    }
    let cert = certify_spectrum(&laplacian, &claimed);
    if cert.verdict {
        Ok(())
    } else {
        Err(fail(format!(
            "certificate failed for {claimed}: {:?}",
            cert.first_failure()
        )))
    }
}

/// Certifies a list of family members; cases are reported in size order.
pub fn verify_family_members(mut members: Vec<SpectrumFamily>, range: String, cap: usize) -> VerificationReport {
    members.sort_by_key(|f| (f.group().order(), f.group().to_string()));
    let outcomes = members.par_iter().map(|f| check_family_member(f, cap)).collect();
    VerificationReport::from_outcomes(VerifyTarget::Spectra, range, outcomes)
}

/// Every closed-form spectrum family member with at most `max_size` vertices.
pub fn verify_spectra(max_size: u64, cap: usize) -> Result<VerificationReport> {
    check_bound(max_size as u128, cap, "max graph size")?;
    Ok(verify_family_members(
        spectrum_family_members(max_size),
        format!("family members with at most {max_size} vertices"),
        cap,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn small_sweeps_pass() {
        let r = verify_degrees_abelian(24, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_degrees_dihedral(12, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_block(4, DEFAULT_CAP).unwrap();
        assert_eq!(r.cases_run, 16);
        assert!(r.passed(), "{r}");
        let r = verify_spectra(40, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn bounds_respect_cap() {
        assert!(matches!(
            verify_degrees_abelian(300, 200),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            verify_degrees_dihedral(101, 200),
            Err(Error::CapExceeded { .. })
        ));
        assert!(verify_block(0, 200).is_err());
    }

    #[test]
    fn member_lists() {
        let e = elementary_abelian_members(8, Some(&[2, 3]));
        assert_eq!(e.len(), 3 + 1);
        // order 8: Z8 and Z4xZ2; order 4: Z4; order 9: Z9 -> with bound 9
        assert_eq!(abelian_p_group_members(9).len(), 4);
        let d = dihedral_prime_power_members(9);
        let ns: Vec<u64> = d.iter().map(|f| f.group().order() as u64 / 2).collect();
        assert_eq!(ns, vec![4, 8, 3, 9, 5, 7]);
        assert!(elementary_pq_members(6).contains(&SpectrumFamily::ElementaryPq { p: 2, t: 1, q: 3, s: 1 }));
    }

    #[test]
    fn report_records_first_failure() {
        let outcomes = vec![
            Ok(()),
            Err(CaseFailure {
                parameters: "a".into(),
                detail: "x".into(),
            }),
            Err(CaseFailure {
                parameters: "b".into(),
                detail: "y".into(),
            }),
        ];
        let r = VerificationReport::from_outcomes(VerifyTarget::Block, "r".into(), outcomes);
        assert_eq!((r.cases_run, r.cases_passed), (3, 1));
        assert!(!r.passed());
        assert_eq!(r.first_failure.unwrap().parameters, "a");
    }
}
