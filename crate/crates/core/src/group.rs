//! Finite abelian and dihedral groups: parsing, prime-power canonical
//! form, element enumeration and element orders.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, lcm};
use crate::error::{Error, Result};

/// Default upper bound on |G| for anything that enumerates elements.
pub const DEFAULT_CAP: usize = 5000;

/// A finite group presented either as a direct product of cyclic groups
/// `Z_m1 x Z_m2 x ..` or as the dihedral group `D_n` of order `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    /// Cyclic moduli in the order written. An empty list is the trivial group.
    Abelian(Vec<u64>),
    Dihedral(u64),
}

impl GroupSpec {
    /// Builds an abelian spec, checking moduli and the cap.
    pub fn abelian(factors: Vec<u64>, cap: usize) -> Result<Self> {
        if let Some(&m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::ModulusTooSmall(m));
        }
        let spec = GroupSpec::Abelian(factors);
        spec.check_cap(cap)?;
        Ok(spec)
    }

    pub fn dihedral(n: u64, cap: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DihedralTooSmall(n));
        }
        let spec = GroupSpec::Dihedral(n);
        spec.check_cap(cap)?;
        Ok(spec)
    }

    /// |G| without overflow (saturating).
    pub fn order_u128(&self) -> u128 {
        match self {
            GroupSpec::Abelian(f) => f.iter().fold(1u128, |acc, &m| acc.saturating_mul(m as u128)),
            GroupSpec::Dihedral(n) => 2 * (*n as u128),
        }
    }

    /// |G|. Only meaningful for specs that passed the cap check.
    pub fn order(&self) -> usize {
        self.order_u128() as usize
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        let order = self.order_u128();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, GroupSpec::Abelian(_))
    }

    /// Prime-power canonical form; `None` for dihedral groups.
    pub fn canonical_form(&self) -> Option<AbelianCanonicalForm> {
        match self {
            GroupSpec::Abelian(f) => Some(canonicalize_abelian(f)),
            GroupSpec::Dihedral(_) => None,
        }
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        match self {
            GroupSpec::Abelian(f) => f.iter().fold(1, |acc, &m| lcm(acc, m)),
            GroupSpec::Dihedral(n) => lcm(2, *n),
        }
    }

    /// Every element exactly once, identity first, then ordered by
    /// `(order, element encoding)`.
    pub fn elements(&self, cap: usize) -> Result<Vec<GroupElement>> {
        Ok(self.elements_with_orders(cap)?.into_iter().map(|(g, _)| g).collect())
    }

    /// Elements paired with their orders, in canonical vertex order.
    pub fn elements_with_orders(&self, cap: usize) -> Result<Vec<(GroupElement, u64)>> {
        self.check_cap(cap)?;
        let mut out: Vec<(GroupElement, u64)> = match self {
            GroupSpec::Abelian(factors) => (0..self.order())
                .map(|index| {
                    // mixed-radix decode, last coordinate varies fastest
                    let mut rest = index as u64;
                    let mut residues = vec![0u64; factors.len()];
                    for (r, &m) in residues.iter_mut().zip(factors).rev() {
                        *r = rest % m;
                        rest /= m;
                    }
                    let order = abelian_order(factors, &residues);
                    (GroupElement::Abelian(residues), order)
                })
                .collect(),
            &GroupSpec::Dihedral(n) => (0..2u8)
                .flat_map(|flip| (0..n).map(move |rotation| GroupElement::Dihedral { flip, rotation }))
                .map(|g| {
                    let order = dihedral_order(n, &g);
                    (g, order)
                })
                .collect(),
        };
        out.sort_by(|(a, oa), (b, ob)| oa.cmp(ob).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Abelian(f) => GroupElement::Abelian(vec![0; f.len()]),
            GroupSpec::Dihedral(_) => GroupElement::Dihedral { flip: 0, rotation: 0 },
        }
    }

    /// Order of `g`, validating that it belongs to this group.
    pub fn element_order(&self, g: &GroupElement) -> Result<u64> {
        match (self, g) {
            (GroupSpec::Abelian(factors), GroupElement::Abelian(residues)) => {
                if residues.len() != factors.len() {
                    return Err(Error::MalformedElement(format!(
                        "tuple of length {} for a product of {} factors",
                        residues.len(),
                        factors.len()
                    )));
                }
                if let Some((r, m)) = residues.iter().zip(factors).find(|(r, m)| r >= m) {
                    return Err(Error::MalformedElement(format!("residue {r} out of range for Z{m}")));
                }
                Ok(abelian_order(factors, residues))
            }
            (&GroupSpec::Dihedral(n), GroupElement::Dihedral { flip, rotation }) => {
                if *flip > 1 || *rotation >= n {
                    return Err(Error::MalformedElement(format!(
                        "dihedral element (flip={flip}, rotation={rotation}) invalid for D{n}"
                    )));
                }
                Ok(dihedral_order(n, g))
            }
            _ => Err(Error::MalformedElement(format!("{g} does not belong to {self}"))),
        }
    }

    /// Count of elements per order, by enumeration.
    pub fn order_profile(&self, cap: usize) -> Result<OrderProfile> {
        let mut counts = BTreeMap::new();
        for (_, order) in self.elements_with_orders(cap)? {
            *counts.entry(order).or_insert(0u64) += 1;
        }
        Ok(OrderProfile(counts))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(factors) if factors.is_empty() => write!(f, "Z1"),
            GroupSpec::Abelian(factors) => {
                let parts: Vec<String> = factors.iter().map(|m| format!("Z{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s, DEFAULT_CAP)
    }
}

fn abelian_order(factors: &[u64], residues: &[u64]) -> u64 {
    factors
        .iter()
        .zip(residues)
        .fold(1, |acc, (&m, &r)| lcm(acc, m / gcd(m, r)))
}

fn dihedral_order(n: u64, g: &GroupElement) -> u64 {
    match g {
        GroupElement::Dihedral { flip: 1, .. } => 2,
        GroupElement::Dihedral { rotation, .. } => n / gcd(n, *rotation),
        GroupElement::Abelian(_) => unreachable!("abelian tuple in dihedral group"),
    }
}

/// Parses `Z4xZ2`, `z12*z5`, `D27`, ... (case-insensitive, surrounding
/// whitespace ignored).
pub fn parse_group_spec(text: &str, cap: usize) -> Result<GroupSpec> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let bytes = body.as_bytes();
    let syntax = |pos: usize, message: &str| Error::Syntax {
        position: lead + pos,
        message: message.to_string(),
    };
    let read_int = |start: usize| -> Result<(u64, usize)> {
        let end = bytes[start..]
            .iter()
            .position(|b| !b.is_ascii_digit())
            .map_or(bytes.len(), |k| start + k);
        if end == start {
            return Err(syntax(start, "expected an integer"));
        }
        let value = body[start..end]
            .parse::<u64>()
            .map_err(|_| syntax(start, "integer too large"))?;
        Ok((value, end))
    };

    match bytes.first().map(u8::to_ascii_lowercase) {
        None => Err(syntax(0, "empty group spec")),
        Some(b'd') => {
            let (n, end) = read_int(1)?;
            if end != bytes.len() {
                return Err(syntax(end, "unexpected trailing input"));
            }
            GroupSpec::dihedral(n, cap)
        }
        Some(b'z') => {
            let mut factors = Vec::new();
            let mut pos = 0;
            loop {
                if pos >= bytes.len() || !bytes[pos].eq_ignore_ascii_case(&b'z') {
                    return Err(syntax(pos, "expected 'Z'"));
                }
                let (m, end) = read_int(pos + 1)?;
                factors.push(m);
                pos = end;
                if pos == bytes.len() {
                    break;
                }
                match bytes[pos] {
                    b'x' | b'X' | b'*' => pos += 1,
                    _ => return Err(syntax(pos, "expected 'x' or '*' between factors")),
                }
            }
            GroupSpec::abelian(factors, cap)
        }
        Some(_) => Err(syntax(0, "expected 'Z' or 'D'")),
    }
}

/// An element of a [`GroupSpec`]. The derived ordering is the lexicographic
/// element encoding used for vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    Abelian(Vec<u64>),
    /// `f^flip r^rotation`.
    Dihedral {
        flip: u8,
        rotation: u64,
    },
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Abelian(r) => {
                let parts: Vec<String> = r.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Dihedral { flip: 0, rotation: 0 } => write!(f, "e"),
            GroupElement::Dihedral { flip: 0, rotation } => write!(f, "r^{rotation}"),
            GroupElement::Dihedral { rotation: 0, .. } => write!(f, "f"),
            GroupElement::Dihedral { rotation, .. } => write!(f, "fr^{rotation}"),
        }
    }
}

/// Element order -> number of elements with that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile(pub BTreeMap<u64, u64>);

impl OrderProfile {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn count(&self, order: u64) -> u64 {
        self.0.get(&order).copied().unwrap_or(0)
    }

    pub fn orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }
}

/// `G = G_1 x .. x G_r`, each Sylow subgroup `G_i` a product of cyclic
/// groups of order `p_i^e`. Exponent lists are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianCanonicalForm {
    components: BTreeMap<u64, Vec<u32>>,
}

/// Splits each cyclic factor into prime-power factors (Chinese remainder
/// theorem) and groups the exponents by prime.
pub fn canonicalize_abelian(factors: &[u64]) -> AbelianCanonicalForm {
    let mut components: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in factors {
        for (p, e) in factorize(m) {
            components.entry(p).or_default().push(e);
        }
    }
    for exps in components.values_mut() {
        exps.sort_unstable();
    }
    AbelianCanonicalForm { components }
}

impl AbelianCanonicalForm {
    /// Builds a canonical form directly from `prime -> exponents`.
    pub fn from_components(components: BTreeMap<u64, Vec<u32>>) -> Result<Self> {
        let mut cleaned = BTreeMap::new();
        for (p, mut exps) in components {
            if !crate::arith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if exps.contains(&0) {
                return Err(Error::InvalidParameter(format!("zero exponent at prime {p}")));
            }
            if exps.is_empty() {
                continue;
            }
            exps.sort_unstable();
            cleaned.insert(p, exps);
        }
        Ok(AbelianCanonicalForm { components: cleaned })
    }

    pub fn components(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.components
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.components.keys().copied()
    }

    pub fn exponents(&self, p: u64) -> &[u32] {
        self.components.get(&p).map_or(&[], Vec::as_slice)
    }

    /// Number of cyclic factors at `p`, `n_p`.
    pub fn rank(&self, p: u64) -> u32 {
        self.exponents(p).len() as u32
    }

    /// `|G_p| = p^(sum of exponents)`.
    pub fn sylow_order(&self, p: u64) -> u64 {
        p.pow(self.exponents(p).iter().sum())
    }

    pub fn order(&self) -> u64 {
        self.primes().map(|p| self.sylow_order(p)).product()
    }

    pub fn exponent(&self) -> u64 {
        self.components
            .iter()
            .map(|(&p, exps)| p.pow(*exps.last().unwrap_or(&0)))
            .product()
    }

    /// The prime-power cyclic factors, primes ascending, exponents ascending.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec::Abelian(
            self.components
                .iter()
                .flat_map(|(&p, exps)| exps.iter().map(move |&e| p.pow(e)))
                .collect(),
        )
    }
}

impl fmt::Display for AbelianCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_spec())
    }
}

/// `order = (prod p_alpha) * (prod p_beta^gamma)` with each `gamma >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDecomposition {
    pub first_power_primes: Vec<u64>,
    pub higher_power_primes: Vec<(u64, u32)>,
}

impl OrderDecomposition {
    /// Splits `order` by exponent without reference to any group.
    pub fn of(order: u64) -> Self {
        let mut first_power_primes = Vec::new();
        let mut higher_power_primes = Vec::new();
        for (p, e) in factorize(order) {
            if e == 1 {
                first_power_primes.push(p);
            } else {
                higher_power_primes.push((p, e));
            }
        }
        OrderDecomposition {
            first_power_primes,
            higher_power_primes,
        }
    }

    /// `k`, the number of primes dividing the order exactly once.
    pub fn k(&self) -> usize {
        self.first_power_primes.len()
    }

    /// `l`, the number of primes dividing the order at least squared.
    pub fn l(&self) -> usize {
        self.higher_power_primes.len()
    }

    pub fn reconstruct(&self) -> u64 {
        let a: u64 = self.first_power_primes.iter().product();
        let b: u64 = self.higher_power_primes.iter().map(|&(p, g)| p.pow(g)).product();
        a * b
    }
}

/// Decomposes an element order of the group described by `canon`.
pub fn decompose_order(order: u64, canon: &AbelianCanonicalForm) -> Result<OrderDecomposition> {
    let exponent = canon.exponent();
    if order == 0 || !exponent.is_multiple_of(order) {
        return Err(Error::OrderNotRealizable { order, exponent });
    }
    Ok(OrderDecomposition::of(order))
}

/// One representative per isomorphism class of abelian groups of order `m`.
pub fn enumerate_abelian_groups_of_order(m: u64) -> Vec<GroupSpec> {
    let mut out = vec![Vec::<u64>::new()];
    for (p, a) in factorize(m) {
        let choices: Vec<Vec<u64>> = crate::arith::partitions(a)
            .into_iter()
            .map(|parts| parts.into_iter().map(|e| p.pow(e)).collect())
            .collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut f = prefix.clone();
                    f.extend_from_slice(c);
                    f
                })
            })
            .collect();
    }
    out.into_iter().map(GroupSpec::Abelian).collect()
}
