use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CharPoly;

/// Integer roots stripped from a monic polynomial, and what is left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerRoots {
    /// `(root, multiplicity)`, roots strictly decreasing.
    pub roots: Vec<(BigInt, usize)>,
    /// Monic cofactor with no integer roots.
    pub remainder: CharPoly,
}

impl IntegerRoots {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Divides `p` by `(x - r)`; `None` when the remainder is nonzero.
fn divide_linear(p: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let d = p.len() - 1;
    let mut q = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        carry = &p[i] + carry * r;
        q[i - 1] = carry.clone();
    }
    (&p[0] + carry * r).is_zero().then_some(q)
}

/// Upper bound on the absolute value of every root of a monic polynomial
/// (Fujiwara): `2 * max_k |a_{d-k}|^(1/k)`, rounded up.
fn root_bound(p: &[BigInt]) -> BigInt {
    let d = p.len() - 1;
    let mut best = BigInt::zero();
    for k in 1..=d {
        let mut a = p[d - k].abs();
        if k == d {
            a = a.div_ceil(&BigInt::from(2));
        }
        if a.is_zero() {
            continue;
        }
        let root = a.nth_root(k as u32) + 1u32;
        if root > best {
            best = root;
        }
    }
    best * 2u32
}

/// Strips every integer root of `p` with multiplicity.
///
/// Candidates are 0 and the divisors `r` of the lowest nonzero
/// coefficient, tried with both signs and confirmed by exact synthetic
/// division. Divisors larger than the root bound are skipped.
pub fn integer_roots(p: &CharPoly) -> IntegerRoots {
    let coeffs = p.coeffs();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut rest: Vec<BigInt> = coeffs[zeros..].to_vec();
    let mut roots: Vec<(BigInt, usize)> = Vec::new();

    if rest.len() > 1 {
        let low = rest[0].abs();
        let bound = root_bound(&rest).min(low.clone());
        let mut try_candidate = |r: BigInt, rest: &mut Vec<BigInt>| {
            for cand in [r.clone(), -r] {
                let mut mult = 0;
                while rest.len() > 1 {
                    match divide_linear(rest, &cand) {
                        Some(q) => {
                            *rest = q;
                            mult += 1;
                        }
                        None => break,
                    }
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
        };
        match bound.to_u64() {
            Some(b) => {
                for r in 1..=b {
                    if rest.len() == 1 {
                        break;
                    }
                    if (&low % r).is_zero() {
                        try_candidate(BigInt::from(r), &mut rest);
                    }
                }
            }
            None => {
                let mut r = BigInt::one();
                while r <= bound && rest.len() > 1 {
                    if (&low % &r).is_zero() {
                        try_candidate(r.clone(), &mut rest);
                    }
                    r += 1u32;
                }
            }
        }
    }
    if zeros > 0 {
        roots.push((BigInt::zero(), zeros));
    }
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    IntegerRoots {
        roots,
        remainder: CharPoly::from_coeffs(rest).expect("cofactor of a monic polynomial is monic"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(p: &CharPoly) -> Vec<(i64, usize)> {
        integer_roots(p)
            .roots
            .iter()
            .map(|(r, m)| (r.to_i64().unwrap(), *m))
            .collect()
    }

    #[test]
    fn path_polynomial() {
        let p = CharPoly::from_i64(&[0, 3, -4, 1]).unwrap();
        let r = integer_roots(&p);
        assert_eq!(roots_of(&p), vec![(3, 1), (1, 1), (0, 1)]);
        assert_eq!(r.remainder.degree(), 0);
    }

    #[test]
    fn refactors_expanded_spectrum() {
        let p = CharPoly::from_roots(&[(0, 1), (6, 4), (4, 1)]);
        assert_eq!(roots_of(&p), vec![(6, 4), (4, 1), (0, 1)]);
        assert_eq!(integer_roots(&p).remainder.degree(), 0);
    }

    #[test]
    fn no_integer_roots() {
        let p = CharPoly::from_i64(&[1, 0, 1]).unwrap();
        let r = integer_roots(&p);
        assert!(r.roots.is_empty());
        assert_eq!(r.remainder, p);
    }

    #[test]
    fn negative_and_mixed_roots() {
        // (x + 2)^2 (x - 5) (x^2 - 2)
        let base = CharPoly::from_roots(&[(-2, 2), (5, 1)]);
        let mut c = vec![BigInt::zero(); base.degree() + 3];
        for (i, a) in base.coeffs().iter().enumerate() {
            c[i + 2] += a;
            c[i] -= a * 2;
        }
        let p = CharPoly::from_coeffs(c).unwrap();
        let r = integer_roots(&p);
        assert_eq!(roots_of(&p), vec![(5, 1), (-2, 2)]);
        assert_eq!(r.remainder, CharPoly::from_i64(&[-2, 0, 1]).unwrap());
    }

    #[test]
    fn constant_polynomial() {
        let p = CharPoly::from_i64(&[1]).unwrap();
        assert!(integer_roots(&p).roots.is_empty());
    }
}
