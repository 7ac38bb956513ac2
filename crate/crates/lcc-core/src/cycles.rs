//! Cycle decomposition of permutations on index sets, and the
//! lambda/Lambda statistics derived from it.

use crate::numtheory::{gcd, lcm};
use crate::{rat_u64, Error, Rat};
use std::collections::BTreeMap;

/// Multiset of cycle lengths of a permutation: pairs `(length, count)`
/// sorted by length. The sum of `length * count` equals the domain size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pairs: Vec<(u64, u64)>,
}

impl CycleStructure {
    pub fn from_counts(map: BTreeMap<u64, u64>) -> Self {
        CycleStructure {
            pairs: map.into_iter().collect(),
        }
    }

    /// `(length, count)` pairs, ascending by length.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Domain size: sum of `length * count`.
    pub fn domain_size(&self) -> u64 {
        self.pairs.iter().map(|&(l, c)| l * c).sum()
    }

    /// Largest cycle length.
    pub fn lambda_big(&self) -> u64 {
        self.pairs.last().map_or(0, |&(l, _)| l)
    }

    /// Largest cycle length divided by the domain size, exact.
    pub fn lambda(&self) -> Rat {
        rat_u64(self.lambda_big(), self.domain_size())
    }

    /// Order of the permutation: lcm of all cycle lengths.
    pub fn order(&self) -> u64 {
        self.pairs.iter().fold(1, |acc, &(l, _)| lcm(acc, l))
    }

    /// Cycle structure of the product permutation acting componentwise on
    /// the cartesian product: a pair of cycles of lengths `l1`, `l2` splits
    /// into `gcd(l1, l2)` cycles of length `lcm(l1, l2)`.
    pub fn product(&self, other: &CycleStructure) -> CycleStructure {
        let mut map: BTreeMap<u64, u64> = BTreeMap::new();
        for &(l1, c1) in &self.pairs {
            for &(l2, c2) in &other.pairs {
                *map.entry(lcm(l1, l2)).or_insert(0) += c1 * c2 * gcd(l1, l2);
            }
        }
        CycleStructure::from_counts(map)
    }
}

impl std::fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(l, c)| format!("{l}^{c}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Cycle decomposition of `f` on `{0, .., n-1}` by marked orbit traversal.
/// `f` must be a bijection; a non-injective map is a domain error.
pub fn cycle_structure_of_fn(n: u64, mut f: impl FnMut(u64) -> u64) -> Result<CycleStructure, Error> {
    let size = usize::try_from(n).map_err(|_| Error::capacity("domain too large"))?;
    let mut seen = vec![false; size];
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        loop {
            if seen[x as usize] {
                // Re-entered a marked point other than the start: not injective.
                return Err(Error::domain("cycle_structure: map is not a permutation"));
            }
            seen[x as usize] = true;
            len += 1;
            x = f(x);
            if x >= n {
                return Err(Error::domain("cycle_structure: image out of range"));
            }
            if x == start {
                break;
            }
        }
        *map.entry(len).or_insert(0) += 1;
    }
    Ok(CycleStructure::from_counts(map))
}

/// Length of the cycle containing `start` (the map must return to `start`).
pub fn cycle_length_of(start: u64, mut f: impl FnMut(u64) -> u64, cap: u64) -> Result<u64, Error> {
    let mut x = f(start);
    let mut len = 1u64;
    while x != start {
        x = f(x);
        len += 1;
        if len > cap {
            return Err(Error::capacity("cycle_length_of: cap exceeded"));
        }
    }
    Ok(len)
}
