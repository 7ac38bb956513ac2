//! Completeness cross-check: over every abelian group up to a given
//! order and every automorphism, the pairs with lambda at least 1/2 must
//! be covered, exactly and without duplication, by the classifier's
//! output at the observed lambda values.
//!
//! The observed side counts automorphisms by order through the exact
//! Sylow spectra; the expected side counts, for every classified
//! isomorphism class whose group fits the bound, the size of its
//! conjugacy class inside the automorphism group. The two tallies must
//! agree integer-for-integer.

use crate::abelian::{AbelianGroupType, AbelianPGroup};
use crate::classify::{
    classify_rho_with, ClassifyOptions, DescriptorKind, Rho, WitnessCount,
};
use crate::error::Error;
use crate::numtheory::{euler_phi, factor, gcd};
use crate::spectrum::{descriptor_class_size, group_order_spectrum};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Result of the sweep; `problems` is empty exactly when the observed
/// and classified tallies agree everywhere.
#[derive(Debug)]
pub struct SweepOutcome {
    pub max_order: u64,
    pub groups_checked: usize,
    pub rho_values: usize,
    pub pairs_matched: usize,
    pub problems: Vec<String>,
}

/// All partitions of k as nondecreasing positive tuples.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            let mut sorted = acc.clone();
            sorted.sort_unstable();
            out.push(sorted);
            return;
        }
        for next in 1..=max.min(remaining) {
            acc.push(next);
            go(remaining - next, next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(k, k, &mut acc, &mut out);
    out
}

/// Every abelian group type of the exact order n.
pub fn abelian_types_of_order(n: u64) -> Result<Vec<AbelianGroupType>, Error> {
    let mut result: Vec<Vec<AbelianPGroup>> = vec![vec![]];
    for &(p, k) in factor(n)?.pairs() {
        let mut next = Vec::new();
        for partition in partitions(k) {
            for combo in &result {
                let mut c = combo.clone();
                c.push(AbelianPGroup::new(p, partition.clone())?);
                next.push(c);
            }
        }
        result = next;
    }
    result.into_iter().map(AbelianGroupType::new).collect()
}

type Tally = BTreeMap<(u64, u64), BTreeMap<AbelianGroupType, BigInt>>;

/// Runs the sweep to `max_order`.
pub fn completeness_sweep(max_order: u64) -> Result<SweepOutcome, Error> {
    let mut observed: Tally = BTreeMap::new();
    let mut groups_checked = 0usize;
    for n in 1..=max_order {
        for group in abelian_types_of_order(n)? {
            groups_checked += 1;
            let Some(spectrum) = group_order_spectrum(&group)? else {
                continue; // certified: no automorphism reaches 1/2
            };
            for (&ord, count) in &spectrum {
                if 2 * ord >= n {
                    let g = gcd(ord, n);
                    let key = (ord / g, n / g);
                    *observed
                        .entry(key)
                        .or_default()
                        .entry(group.clone())
                        .or_insert_with(|| BigInt::from(0u32)) += count;
                }
            }
        }
    }

    let mut expected: Tally = BTreeMap::new();
    let rho_values = observed.len();
    let options = ClassifyOptions { self_check_order: 2_000 };
    for &(a, b) in observed.keys() {
        let rho = Rho::new(a, b)?;
        let result = classify_rho_with(rho, options)?;
        for desc in &result.descriptors {
            match &desc.kind {
                DescriptorKind::Nonabelian(_) => continue,
                DescriptorKind::CyclicFamily { two_degrees, p } => {
                    let class_size = descriptor_class_size(&desc.kind)?;
                    let two_order: u64 = 1 << two_degrees.iter().sum::<u32>();
                    let mut poly_count = BigInt::from(1u32);
                    for &d in two_degrees {
                        poly_count *= BigInt::from(euler_phi((1u64 << d) - 1)? / d as u64);
                    }
                    let mut m = 2u32;
                    while let Some(order) = p
                        .checked_pow(m)
                        .and_then(|pm| pm.checked_mul(two_order))
                        .filter(|&o| o <= max_order)
                    {
                        let group = crate::classify::descriptor_group(&desc.kind, m)?
                            .expect("cyclic family has a group");
                        debug_assert_eq!(group.order()?, order);
                        let members =
                            &poly_count * BigInt::from(euler_phi(euler_phi(p.pow(m))?)?);
                        *expected
                            .entry((a, b))
                            .or_default()
                            .entry(group)
                            .or_insert_with(|| BigInt::from(0u32)) += members * &class_size;
                        m += 1;
                    }
                }
                _ => {
                    let group = crate::classify::descriptor_group(&desc.kind, 0)?
                        .expect("finite descriptors have a group");
                    if group.order()? > max_order {
                        continue;
                    }
                    let WitnessCount::Finite(classes) = &desc.witness_count else {
                        return Err(Error::domain("finite descriptor with infinite count"));
                    };
                    let class_size = descriptor_class_size(&desc.kind)?;
                    *expected
                        .entry((a, b))
                        .or_default()
                        .entry(group)
                        .or_insert_with(|| BigInt::from(0u32)) += classes * class_size;
                }
            }
        }
    }

    // Exact comparison in both directions.
    let mut problems = Vec::new();
    let mut pairs_matched = 0usize;
    let zero = BigInt::from(0u32);
    for (key, groups) in &observed {
        for (group, count) in groups {
            let exp = expected
                .get(key)
                .and_then(|m| m.get(group))
                .unwrap_or(&zero);
            if exp != count {
                problems.push(format!(
                    "rho {}/{} on {group}: observed {count} automorphisms, classified {exp}",
                    key.0, key.1
                ));
            } else {
                pairs_matched += 1;
            }
        }
    }
    for (key, groups) in &expected {
        for (group, count) in groups {
            if count != &zero
                && observed.get(key).and_then(|m| m.get(group)).is_none()
            {
                problems.push(format!(
                    "rho {}/{} on {group}: classified {count} automorphisms, observed none",
                    key.0, key.1
                ));
            }
        }
    }
    Ok(SweepOutcome {
        max_order,
        groups_checked,
        rho_values,
        pairs_matched,
        problems,
    })
}
