//! Closed-form vertex degrees and Laplacian spectra.

use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};
use crate::group::{canonicalize_abelian, decompose_order, AbelianCanonicalForm, GroupSpec};
use crate::linalg::ExactMatrix;
use crate::spectrum::Spectrum;

fn overflow(what: &'static str) -> Error {
    Error::Overflow(what)
}

/// Degree of any vertex of the given order in the co-prime order graph of
/// the abelian group `canon`.
///
/// Orders 1 and `p` are adjacent to everything. Otherwise, writing the
/// order as `prod p_a * prod p_b^g` (`g >= 2`) with `k` and `l` factors,
/// the neighbours are the elements whose components at the primes of the
/// order are all trivial except at most one, and that one has order `p_a`
/// (any nontrivial element of `G_a`) or exactly `p_b`:
///
/// `deg = (1 - k - l + sum |G_a| + sum p_b^{n_b}) * |G| / (prod |G_a| prod |G_b|)`.
pub fn degree_abelian(canon: &AbelianCanonicalForm, order: u64) -> Result<u64> {
    let decomposition = decompose_order(order, canon)?;
    let group_order = canon.order();
    let k = decomposition.k() as i128;
    let l = decomposition.l() as i128;
    if k + l == 0 || (k == 1 && l == 0) {
        return Ok(group_order - 1);
    }

    let mut bracket: i128 = 1 - k - l;
    let mut denominator: u64 = 1;
    for &p in &decomposition.first_power_primes {
        let sylow = canon.sylow_order(p);
        bracket += sylow as i128;
        denominator = denominator.checked_mul(sylow).ok_or(overflow("degree denominator"))?;
    }
    for &(p, _) in &decomposition.higher_power_primes {
        bracket += p.checked_pow(canon.rank(p)).ok_or(overflow("p^rank"))? as i128;
        denominator = denominator
            .checked_mul(canon.sylow_order(p))
            .ok_or(overflow("degree denominator"))?;
    }
    if !group_order.is_multiple_of(denominator) {
        return Err(Error::Internal(format!(
            "Sylow product {denominator} does not divide |G| = {group_order}"
        )));
    }
    let bracket = u64::try_from(bracket).map_err(|_| Error::Internal(format!("negative degree bracket {bracket}")))?;
    bracket.checked_mul(group_order / denominator).ok_or(overflow("degree"))
}

/// Degree of a vertex of the given order in the graph of `D_n`: reflections
/// (order 2) are universal; a rotation gains exactly the `n` reflections
/// over its degree in the cyclic rotation subgroup.
pub fn degree_dihedral(n: u64, order: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::DihedralTooSmall(n));
    }
    if order == 2 {
        return Ok(2 * n - 1);
    }
    if order == 0 || !n.is_multiple_of(order) {
        return Err(Error::OrderNotRealizable {
            order,
            exponent: num_integer::lcm(2, n),
        });
    }
    Ok(degree_abelian(&canonicalize_abelian(&[n]), order)? + n)
}

/// The `(p+q) x (p+q)` Laplacian of a complete graph on `p` vertices joined
/// to an independent set of `q` vertices:
///
/// ```text
/// [ (p+q)I - J    -J  ]
/// [     -J       p I  ]
/// ```
pub fn build_block_l(p: usize, q: usize) -> Result<ExactMatrix> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!(
            "block sizes must be >= 1, got ({p}, {q})"
        )));
    }
    let (pi, qi) = (p as i64, q as i64);
    ExactMatrix::from_fn(p + q, |i, j| match (i < p, j < p) {
        _ if i == j && i < p => pi + qi - 1,
        _ if i == j => pi,
        (true, _) | (_, true) => -1,
        _ => 0,
    })
}

/// `{p+q : p, p : q-1, 0 : 1}`.
pub fn spectrum_block(p: usize, q: usize) -> Result<Spectrum> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!(
            "block sizes must be >= 1, got ({p}, {q})"
        )));
    }
    let (p, q) = (p as u64, q as u64);
    Ok(Spectrum::new([(p + q, p), (p, q - 1), (0, 1)]))
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(overflow("prime power"))
}

/// `(Z_p)^t`: the graph is complete, `{p^t : p^t - 1, 0 : 1}`.
pub fn spectrum_elementary_abelian(p: u64, t: u32) -> Result<Spectrum> {
    require_prime(p)?;
    if t == 0 {
        return Err(Error::InvalidParameter("rank t must be >= 1".into()));
    }
    let size = pow(p, t)?;
    Ok(Spectrum::new([(size, size - 1), (0, 1)]))
}

/// `Z_{p^a1} x .. x Z_{p^an}` with `s = sum a_i`: when some `a_i >= 2`,
/// `{p^s : p^n, p^n : p^s - p^n - 1, 0 : 1}`; otherwise the elementary case.
pub fn spectrum_abelian_p_group(p: u64, exponents: &[u32]) -> Result<Spectrum> {
    require_prime(p)?;
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "exponents must be a non-empty list of positive integers, got {exponents:?}"
        )));
    }
    let rank = exponents.len() as u32;
    if exponents.iter().all(|&a| a == 1) {
        return spectrum_elementary_abelian(p, rank);
    }
    let total = pow(p, exponents.iter().sum())?;
    let universal = pow(p, rank)?;
    Ok(Spectrum::new([
        (total, universal),
        (universal, total - universal - 1),
        (0, 1),
    ]))
}

/// `(Z_p)^t x (Z_q)^s`, `p != q`:
/// `{p^t q^s : p^t + q^s - 1, p^t + q^s - 1 : p^t q^s - p^t - q^s, 0 : 1}`.
pub fn spectrum_pq(p: u64, t: u32, q: u64, s: u32) -> Result<Spectrum> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::InvalidParameter(format!(
            "primes must be distinct, got {p} twice"
        )));
    }
    if t == 0 || s == 0 {
        return Err(Error::InvalidParameter("ranks must be >= 1".into()));
    }
    let (a, b) = (pow(p, t)?, pow(q, s)?);
    let total = a.checked_mul(b).ok_or(overflow("group order"))?;
    let universal = a + b - 1;
    Spectrum::from_signed(&[
        (total, universal as i128),
        (universal, total as i128 - a as i128 - b as i128),
        (0, 1),
    ])
}

/// `D_{p^n}`: `{2p^n : p + p^n, p + p^n : p^n - p - 1, 0 : 1}`. For odd `p`
/// and `n = 1` the graph is complete on `2p` vertices and the spectrum is
/// `{2p : 2p - 1, 0 : 1}`. `p = 2, n = 1` is rejected.
pub fn spectrum_dihedral_prime_power(p: u64, n: u32) -> Result<Spectrum> {
    require_prime(p)?;
    if n == 0 || (p == 2 && n == 1) {
        return Err(Error::InvalidParameter(format!(
            "D_{{{p}^{n}}} is outside the dihedral prime-power family"
        )));
    }
    let rotations = pow(p, n)?;
    let size = 2 * rotations;
    let universal = p + rotations;
    if rotations <= p + 1 {
        return Ok(Spectrum::new([(size, size - 1), (0, 1)]));
    }
    Ok(Spectrum::new([
        (size, universal),
        (universal, rotations - p - 1),
        (0, 1),
    ]))
}

/// The four group families with a closed-form Laplacian spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SpectrumFamily {
    /// `(Z_p)^t`.
    ElementaryAbelian { p: u64, t: u32 },
    /// `Z_{p^a1} x .. x Z_{p^an}` with some `a_i >= 2`.
    AbelianPGroup { p: u64, exponents: Vec<u32> },
    /// `(Z_p)^t x (Z_q)^s`, `p < q`.
    ElementaryPq { p: u64, t: u32, q: u64, s: u32 },
    /// `D_{p^n}`.
    DihedralPrimePower { p: u64, n: u32 },
}

impl SpectrumFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumFamily::ElementaryAbelian { .. } => "elementary-abelian",
            SpectrumFamily::AbelianPGroup { .. } => "abelian-p-group",
            SpectrumFamily::ElementaryPq { .. } => "elementary-pq",
            SpectrumFamily::DihedralPrimePower { .. } => "dihedral-prime-power",
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        match self {
            &SpectrumFamily::ElementaryAbelian { p, t } => spectrum_elementary_abelian(p, t),
            SpectrumFamily::AbelianPGroup { p, exponents } => spectrum_abelian_p_group(*p, exponents),
            &SpectrumFamily::ElementaryPq { p, t, q, s } => spectrum_pq(p, t, q, s),
            &SpectrumFamily::DihedralPrimePower { p, n } => spectrum_dihedral_prime_power(p, n),
        }
    }

    /// A representative group of the family.
    pub fn group(&self) -> GroupSpec {
        match self {
            &SpectrumFamily::ElementaryAbelian { p, t } => GroupSpec::Abelian(vec![p; t as usize]),
            SpectrumFamily::AbelianPGroup { p, exponents } => {
                GroupSpec::Abelian(exponents.iter().rev().map(|&a| p.pow(a)).collect())
            }
            &SpectrumFamily::ElementaryPq { p, t, q, s } => {
                let mut f = vec![p; t as usize];
                f.extend(std::iter::repeat_n(q, s as usize));
                GroupSpec::Abelian(f)
            }
            &SpectrumFamily::DihedralPrimePower { p, n } => GroupSpec::Dihedral(p.pow(n)),
        }
    }

    /// `(P, Q)`: the graph's Laplacian under canonical vertex order is
    /// `build_block_l(P, Q)`, with `P` universal vertices first and an
    /// independent set of `Q` vertices after them. Complete graphs on `m`
    /// vertices are `(m - 1, 1)`.
    pub fn block_shape(&self) -> (usize, usize) {
        let (universal, rest) = match self {
            &SpectrumFamily::ElementaryAbelian { p, t } => (p.pow(t), 0),
            SpectrumFamily::AbelianPGroup { p, exponents } => {
                let total = p.pow(exponents.iter().sum());
                let universal = p.pow(exponents.len() as u32);
                (universal, total - universal)
            }
            &SpectrumFamily::ElementaryPq { p, t, q, s } => {
                let (a, b) = (p.pow(t), q.pow(s));
                (a + b - 1, (a - 1) * (b - 1))
            }
            &SpectrumFamily::DihedralPrimePower { p, n } => {
                let r = p.pow(n);
                (p + r, r - p)
            }
        };
        if rest == 0 {
            (universal as usize - 1, 1)
        } else {
            (universal as usize, rest as usize)
        }
    }
}

impl fmt::Display for SpectrumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.group())
    }
}

/// Decides which closed-form family, if any, a group belongs to, using
/// its canonical form.
pub fn classify_family(spec: &GroupSpec) -> Result<SpectrumFamily> {
    match spec {
        GroupSpec::Abelian(factors) => {
            let canon = canonicalize_abelian(factors);
            let parts: Vec<(u64, &[u32])> = canon.primes().map(|p| (p, canon.exponents(p))).collect();
            let elementary = |e: &[u32]| e.iter().all(|&a| a == 1);
            match parts.as_slice() {
                [] => Err(Error::NoClosedForm(format!("{spec}: trivial group"))),
                [(p, e)] if elementary(e) => Ok(SpectrumFamily::ElementaryAbelian {
                    p: *p,
                    t: e.len() as u32,
                }),
                [(p, e)] => Ok(SpectrumFamily::AbelianPGroup {
                    p: *p,
                    exponents: e.to_vec(),
                }),
                [(p, e), (q, f)] if elementary(e) && elementary(f) => Ok(SpectrumFamily::ElementaryPq {
                    p: *p,
                    t: e.len() as u32,
                    q: *q,
                    s: f.len() as u32,
                }),
                [_, _] => Err(Error::NoClosedForm(format!(
                    "{spec} (canonical {canon}): two primes but not elementary at both"
                ))),
                _ => Err(Error::NoClosedForm(format!(
                    "{spec} (canonical {canon}): {} distinct primes",
                    parts.len()
                ))),
            }
        }
        &GroupSpec::Dihedral(n) => match prime_power(n) {
            Some((p, k)) if !(p == 2 && k == 1) => Ok(SpectrumFamily::DihedralPrimePower { p, n: k }),
            _ => Err(Error::NoClosedForm(format!("{spec}: n = {n} is not a prime power"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::group::DEFAULT_CAP;

    fn spec(pairs: &[(u64, u64)]) -> Spectrum {
        Spectrum::new(pairs.iter().copied())
    }

    /// Brute-force degree of the first vertex of the given order.
    fn brute(spec: GroupSpec, order: u64) -> u64 {
        let g = build_graph(&spec, DEFAULT_CAP).unwrap();
        let i = g.vertices.iter().position(|v| v.order == order).unwrap();
        g.brute_degree(i).unwrap() as u64
    }

    #[test]
    fn abelian_degree_examples() {
        let z42 = canonicalize_abelian(&[4, 2]);
        assert_eq!(degree_abelian(&z42, 1).unwrap(), 7);
        assert_eq!(degree_abelian(&z42, 4).unwrap(), 4);
        assert_eq!(brute(GroupSpec::Abelian(vec![4, 2]), 4), 4);

        assert_eq!(brute(GroupSpec::Abelian(vec![2, 3]), 6), 4);
        assert_eq!(degree_abelian(&canonicalize_abelian(&[2, 3]), 6).unwrap(), 4);

        assert_eq!(brute(GroupSpec::Abelian(vec![8, 2, 9]), 12), 12);
        assert_eq!(degree_abelian(&canonicalize_abelian(&[8, 2, 9]), 12).unwrap(), 12);
    }

    #[test]
    fn abelian_degree_rejects_unrealizable_order() {
        assert_eq!(
            degree_abelian(&canonicalize_abelian(&[4, 2]), 8),
            Err(Error::OrderNotRealizable { order: 8, exponent: 4 })
        );
    }

    #[test]
    fn dihedral_degree_examples() {
        assert_eq!(degree_dihedral(6, 2).unwrap(), 11);
        assert_eq!(degree_dihedral(6, 6).unwrap(), 10);
        assert_eq!(brute(GroupSpec::Dihedral(6), 6), 10);
        assert_eq!(degree_dihedral(9, 3).unwrap(), 17);
        assert_eq!(brute(GroupSpec::Dihedral(9), 3), 17);
        assert!(matches!(degree_dihedral(9, 6), Err(Error::OrderNotRealizable { .. })));
        assert!(matches!(degree_dihedral(2, 2), Err(Error::DihedralTooSmall(2))));
    }

    #[test]
    fn block_matrix_examples() {
        let l = build_block_l(2, 3).unwrap();
        let diag: Vec<i64> = (0..5).map(|i| l.get(i, i)).collect();
        assert_eq!(diag, vec![4, 4, 2, 2, 2]);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let expected = if i < 2 || j < 2 { -1 } else { 0 };
                    assert_eq!(l.get(i, j), expected, "({i},{j})");
                }
            }
        }
        assert_eq!(build_block_l(1, 1).unwrap().to_rows(), vec![vec![1, -1], vec![-1, 1]]);
        let l = build_block_l(3, 1).unwrap();
        assert!((0..4).all(|i| l.row(i).iter().sum::<i64>() == 0));
        assert!(build_block_l(0, 2).is_err());
    }

    #[test]
    fn block_spectrum_examples() {
        assert_eq!(spectrum_block(2, 3).unwrap(), spec(&[(5, 2), (2, 2), (0, 1)]));
        assert_eq!(spectrum_block(1, 1).unwrap(), spec(&[(2, 1), (0, 1)]));
        assert_eq!(spectrum_block(4, 2).unwrap(), spec(&[(6, 4), (4, 1), (0, 1)]));
        assert_eq!(spectrum_block(4, 1).unwrap().pairs().len(), 2);
    }

    #[test]
    fn family_spectra_examples() {
        assert_eq!(spectrum_elementary_abelian(2, 2).unwrap(), spec(&[(4, 3), (0, 1)]));
        assert_eq!(spectrum_elementary_abelian(3, 1).unwrap(), spec(&[(3, 2), (0, 1)]));
        assert_eq!(spectrum_elementary_abelian(2, 1).unwrap(), spec(&[(2, 1), (0, 1)]));
        assert_eq!(spectrum_elementary_abelian(4, 1), Err(Error::NotPrime(4)));

        assert_eq!(
            spectrum_abelian_p_group(2, &[2, 1]).unwrap(),
            spec(&[(8, 4), (4, 3), (0, 1)])
        );
        assert_eq!(
            spectrum_abelian_p_group(3, &[2]).unwrap(),
            spec(&[(9, 3), (3, 5), (0, 1)])
        );
        assert_eq!(spectrum_abelian_p_group(2, &[1, 1]).unwrap(), spec(&[(4, 3), (0, 1)]));
        assert!(spectrum_abelian_p_group(2, &[]).is_err());
        assert_eq!(spectrum_abelian_p_group(6, &[2]), Err(Error::NotPrime(6)));

        assert_eq!(spectrum_pq(2, 1, 3, 1).unwrap(), spec(&[(6, 4), (4, 1), (0, 1)]));
        assert_eq!(spectrum_pq(2, 2, 3, 1).unwrap(), spec(&[(12, 6), (6, 5), (0, 1)]));
        assert_eq!(spectrum_pq(2, 1, 3, 2).unwrap(), spec(&[(18, 10), (10, 7), (0, 1)]));
        assert!(spectrum_pq(3, 1, 3, 2).is_err());
        assert_eq!(spectrum_pq(2, 1, 9, 1), Err(Error::NotPrime(9)));

        assert_eq!(
            spectrum_dihedral_prime_power(3, 2).unwrap(),
            spec(&[(18, 12), (12, 5), (0, 1)])
        );
        assert_eq!(
            spectrum_dihedral_prime_power(2, 2).unwrap(),
            spec(&[(8, 6), (6, 1), (0, 1)])
        );
        assert_eq!(spectrum_dihedral_prime_power(3, 1).unwrap(), spec(&[(6, 5), (0, 1)]));
        assert!(spectrum_dihedral_prime_power(2, 1).is_err());
    }

    #[test]
    fn classification() {
        let fam = |s: &str| classify_family(&s.parse().unwrap());
        assert_eq!(fam("Z2xZ2").unwrap(), SpectrumFamily::ElementaryAbelian { p: 2, t: 2 });
        assert_eq!(
            fam("Z4xZ2").unwrap(),
            SpectrumFamily::AbelianPGroup {
                p: 2,
                exponents: vec![1, 2]
            }
        );
        assert_eq!(
            fam("Z6").unwrap(),
            SpectrumFamily::ElementaryPq { p: 2, t: 1, q: 3, s: 1 }
        );
        assert_eq!(fam("D9").unwrap(), SpectrumFamily::DihedralPrimePower { p: 3, n: 2 });
        assert_eq!(fam("D4").unwrap(), SpectrumFamily::DihedralPrimePower { p: 2, n: 2 });
        assert!(matches!(fam("Z6xZ5"), Err(Error::NoClosedForm(_))));
        assert!(matches!(fam("Z12"), Err(Error::NoClosedForm(_))));
        assert!(matches!(fam("D6"), Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn family_spectrum_matches_its_block() {
        let families = [
            SpectrumFamily::ElementaryAbelian { p: 3, t: 2 },
            SpectrumFamily::AbelianPGroup {
                p: 2,
                exponents: vec![1, 2],
            },
            SpectrumFamily::ElementaryPq { p: 2, t: 2, q: 5, s: 1 },
            SpectrumFamily::DihedralPrimePower { p: 5, n: 1 },
            SpectrumFamily::DihedralPrimePower { p: 2, n: 3 },
        ];
        for f in &families {
            let (p, q) = f.block_shape();
            assert_eq!(f.spectrum().unwrap(), spectrum_block(p, q).unwrap(), "{f}");
            let g = build_graph(&f.group(), DEFAULT_CAP).unwrap();
            assert_eq!(g.laplacian(), build_block_l(p, q).unwrap(), "{f}");
        }
    }
}
