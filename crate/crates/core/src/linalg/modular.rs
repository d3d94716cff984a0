//! Exact nullity through arithmetic modulo the Mersenne prime `2^61 - 1`.
//!
//! Reduction mod p can only lose rank, so `rank_p <= rank_Q` and
//! `nullity_p >= nullity_Q`. The opposite inequality is certified by
//! lifting the mod-p kernel basis to integer vectors (rational
//! reconstruction) and checking `M v = 0` in exact integer arithmetic.
//! The lifted vectors are independent by construction: each has a
//! nonzero entry at its own free column and zeros at every other free
//! column. When any lift fails, the caller falls back to Bareiss.

use rayon::prelude::*;
use serde::Serialize;

use super::{bareiss_eliminate, ExactMatrix};

pub const MODULUS: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u64) -> u64 {
    let s = (x & MODULUS) + (x >> 61);
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    reduce(((x as u64) & MODULUS) + (x >> 61) as u64)
}

/// `x + f * y` with a single fold; all inputs reduced.
#[inline]
fn mul_add_mod(x: u64, f: u64, y: u64) -> u64 {
    let v = x as u128 + f as u128 * y as u128;
    reduce(((v as u64) & MODULUS) + (v >> 61) as u64)
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64) -> u64 {
    reduce(a + b)
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64) -> u64 {
    reduce(a + MODULUS - b)
}

pub(crate) fn to_mod(x: i64) -> u64 {
    let r = (x as i128).rem_euclid(MODULUS as i128);
    r as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow_mod(a, MODULUS - 2)
}

/// Row echelon form mod p with unit pivots.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn echelon_mod(m: &ExactMatrix) -> Echelon {
    let n = m.dim();
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).iter().map(|&x| to_mod(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let inv = inv_mod(a[rank][col]);
        for x in &mut a[rank][col..] {
            *x = mul_mod(*x, inv);
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank][col..];
        tail.par_iter_mut().for_each(|row| {
            if row[col] == 0 {
                return;
            }
            let neg = MODULUS - row[col];
            for (x, &y) in row[col..].iter_mut().zip(pivot_row) {
                *x = mul_add_mod(*x, neg, y);
            }
        });
        pivots.push(col);
        rank += 1;
    }
    a.truncate(rank);
    Echelon { rows: a, pivots }
}

/// Rank of `m` reduced mod p; a lower bound on the rank over the rationals.
pub fn rank_mod_p(m: &ExactMatrix) -> usize {
    echelon_mod(m).pivots.len()
}

/// `a = num / den (mod p)` with `|num|, den <= 2^30`.
fn rational_reconstruct(a: u64) -> Option<(i128, i128)> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (MODULUS as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > BOUND || num_integer::gcd(r1, t1.abs()) != 1 {
        return None;
    }
    Some(if t1 < 0 { (-r1, -t1) } else { (r1, t1) })
}

/// Sparse integer vector: `(index, value)` pairs with nonzero values.
pub type SparseVector = Vec<(usize, i128)>;

/// Kernel basis mod p lifted to verified integer kernel vectors, or `None`
/// if some vector could not be lifted and verified.
fn lift_kernel(m: &ExactMatrix, ech: &Echelon) -> Option<Vec<SparseVector>> {
    let n = m.dim();
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    free.par_iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            let mut support = vec![f];
            v[f] = 1;
            for (row, &c) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s = 0;
                for &j in &support {
                    s = add_mod(s, mul_mod(row[j], v[j]));
                }
                if s != 0 {
                    v[c] = sub_mod(0, s);
                    support.push(c);
                }
            }
            support.sort_unstable();

            let mut fracs = Vec::with_capacity(support.len());
            let mut scale: i128 = 1;
            for &j in &support {
                let (num, den) = rational_reconstruct(v[j])?;
                scale = scale.checked_mul(den / num_integer::gcd(scale, den))?;
                fracs.push((j, num, den));
            }
            let w: SparseVector = fracs
                .into_iter()
                .map(|(j, num, den)| Some((j, num.checked_mul(scale / den)?)))
                .collect::<Option<_>>()?;

            for i in 0..n {
                let row = m.row(i);
                let mut acc: i128 = 0;
                for &(j, x) in &w {
                    acc = acc.checked_add((row[j] as i128).checked_mul(x)?)?;
                }
                if acc != 0 {
                    return None;
                }
            }
            Some(w)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullityRoute {
    /// Modular rank plus a verified integer kernel basis.
    ModularKernel,
    Bareiss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NullityMethod {
    /// Modular route first, Bareiss when the kernel cannot be lifted.
    #[default]
    Auto,
    Bareiss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nullity {
    pub rank: usize,
    pub nullity: usize,
    pub route: NullityRoute,
}

/// Exact `dim - rank` of an integer matrix.
pub fn nullity(m: &ExactMatrix, method: NullityMethod) -> Nullity {
    let n = m.dim();
    if method == NullityMethod::Auto {
        let ech = echelon_mod(m);
        let rank = ech.pivots.len();
        if rank == n || lift_kernel(m, &ech).is_some() {
            return Nullity {
                rank,
                nullity: n - rank,
                route: NullityRoute::ModularKernel,
            };
        }
    }
    let rank = bareiss_eliminate(m).rank;
    Nullity {
        rank,
        nullity: n - rank,
        route: NullityRoute::Bareiss,
    }
}

/// Verified integer kernel basis of `m`, if the modular lift succeeds.
pub fn integer_kernel(m: &ExactMatrix) -> Option<Vec<SparseVector>> {
    let ech = echelon_mod(m);
    lift_kernel(m, &ech)
}

/// Characteristic polynomial mod p via reduction to upper Hessenberg form.
/// Coefficients ascending.
pub fn char_poly_mod_p(m: &ExactMatrix) -> Vec<u64> {
    let n = m.dim();
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).iter().map(|&x| to_mod(x)).collect()).collect();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if p != k + 1 {
            h.swap(p, k + 1);
            for row in h.iter_mut() {
                row.swap(p, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k]);
        for j in k + 2..n {
            let f = mul_mod(h[j][k], inv);
            if f == 0 {
                continue;
            }
            // row_j -= f * row_{k+1}; col_{k+1} += f * col_j
            let (upper, lower) = h.split_at_mut(j);
            let src = &upper[k + 1];
            for (x, &y) in lower[0].iter_mut().zip(src) {
                *x = sub_mod(*x, mul_mod(f, y));
            }
            for row in h.iter_mut() {
                row[k + 1] = add_mod(row[k + 1], mul_mod(f, row[j]));
            }
        }
    }

    // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{j=m-i+1..m} h_{j,j-1}) p_{m-i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 0..n {
        let prev = &polys[mm];
        let mut next = vec![0u64; mm + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c);
            next[d] = sub_mod(next[d], mul_mod(h[mm][mm], c));
        }
        let mut sub = 1u64;
        for i in 1..=mm {
            sub = mul_mod(sub, h[mm - i + 1][mm - i]);
            let coef = mul_mod(h[mm - i][mm], sub);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[mm - i].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

/// Multiplicity of `r` as a root of `p` (ascending, mod p).
pub(crate) fn root_multiplicity_mod_p(p: &[u64], r: u64) -> usize {
    let mut cur = p.to_vec();
    let mut mult = 0;
    while cur.len() > 1 {
        let d = cur.len() - 1;
        let mut q = vec![0u64; d];
        let mut carry = 0u64;
        for i in (1..=d).rev() {
            carry = add_mod(cur[i], mul_mod(carry, r));
            q[i - 1] = carry;
        }
        if add_mod(cur[0], mul_mod(carry, r)) != 0 {
            break;
        }
        cur = q;
        mult += 1;
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul_mod(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(to_mod(-1), MODULUS - 1);
        let a = 123_456_789_012_345;
        assert_eq!(mul_mod(a, inv_mod(a)), 1);
        assert_eq!(sub_mod(3, 5), MODULUS - 2);
    }

    #[test]
    fn reconstruction() {
        let enc = |num: i64, den: i64| mul_mod(to_mod(num), inv_mod(to_mod(den)));
        assert_eq!(rational_reconstruct(enc(-3, 7)), Some((-3, 7)));
        assert_eq!(rational_reconstruct(enc(5, 1)), Some((5, 1)));
        assert_eq!(rational_reconstruct(0), Some((0, 1)));
        assert_eq!(
            rational_reconstruct(enc(1_000_000, 999_983)),
            Some((1_000_000, 999_983))
        );
    }

    #[test]
    fn laplacian_kernel_is_all_ones() {
        let k4 = ExactMatrix::from_fn(4, |i, j| if i == j { 3 } else { -1 }).unwrap();
        let ker = integer_kernel(&k4).unwrap();
        assert_eq!(ker.len(), 1);
        let vals: Vec<i128> = ker[0].iter().map(|&(_, x)| x).collect();
        assert_eq!(vals, vec![1, 1, 1, 1]);
        assert_eq!(
            nullity(&k4, NullityMethod::Auto),
            Nullity {
                rank: 3,
                nullity: 1,
                route: NullityRoute::ModularKernel
            }
        );
    }

    #[test]
    fn both_routes_agree_on_small_cases() {
        let cases = [
            ExactMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]).unwrap(),
            ExactMatrix::zeros(3).unwrap(),
            ExactMatrix::identity(5).unwrap(),
            ExactMatrix::from_fn(6, |i, j| (i * j) as i64).unwrap(),
        ];
        for m in &cases {
            let a = nullity(m, NullityMethod::Auto);
            let b = nullity(m, NullityMethod::Bareiss);
            assert_eq!((a.rank, a.nullity), (b.rank, b.nullity), "{m:?}");
            assert_eq!(b.route, NullityRoute::Bareiss);
        }
    }

    #[test]
    fn modular_rank_can_undercount() {
        // det = p, so the matrix is singular mod p but regular over Q
        let p = MODULUS as i64;
        let m = ExactMatrix::from_rows(&[vec![p, 0], vec![0, 1]]).unwrap();
        assert_eq!(rank_mod_p(&m), 1);
        let n = nullity(&m, NullityMethod::Auto);
        assert_eq!((n.rank, n.route), (2, NullityRoute::Bareiss));
    }

    #[test]
    fn hessenberg_charpoly_small() {
        // [[1,-1,0],[-1,2,-1],[0,-1,1]] -> x^3 - 4x^2 + 3x
        let m = ExactMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]).unwrap();
        assert_eq!(char_poly_mod_p(&m), vec![0, 3, to_mod(-4), 1]);
        let cp = char_poly_mod_p(&m);
        assert_eq!(root_multiplicity_mod_p(&cp, 0), 1);
        assert_eq!(root_multiplicity_mod_p(&cp, 3), 1);
        assert_eq!(root_multiplicity_mod_p(&cp, 2), 0);
    }
}
