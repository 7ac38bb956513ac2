//! Exact automorphism order spectra of finite abelian p-groups.
//!
//! The completeness sweep needs, for every abelian group of modest order,
//! the multiset of automorphism orders. Direct enumeration explodes on
//! the larger elementary abelian 2-groups (|GL_7(F_2)| is about 1.6e14),
//! so three exact strategies cover all shapes:
//!
//! - elementary parts: conjugacy classes of GL_n(F_p) enumerated as
//!   primary block data, with the classical centralizer-order formula
//!   giving exact class sizes (checked against |GL_n|);
//! - shapes with exactly one exponent above 1: conjugation by block
//!   diagonal automorphisms shows the residual data can be enumerated
//!   once per GL-class representative;
//! - shapes with two or more exponents above 1: the automorphism order
//!   bound `p^(e_n - 1) (p^n - 1)` stays below half the group order, so
//!   no automorphism reaches lambda 1/2 and the spectrum is not needed.
//!
//! Small cases are cross-checked against direct matrix enumeration in
//! the tests.

use crate::abelian::{enum_autos, AbelianGroupType, AbelianPGroup, EndoMatrix};
use crate::error::Error;
use crate::ffpoly::{enum_irreducible, irreducible_block_order, FpPoly};
use crate::fpmatrix::{companion, FpMatrix};
use crate::numtheory::{lcm, mult_order};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

/// Order spectrum: automorphism order -> number of automorphisms.
pub type OrderSpectrum = BTreeMap<u64, BigInt>;

/// Spectrum of one Sylow part, or a certificate that no automorphism
/// reaches half the part's order.
#[derive(Debug, Clone)]
pub enum PartSpectrum {
    Full(OrderSpectrum),
    /// Certified: every automorphism order is below |H| / 2, so the part
    /// (and any group containing it) admits no lambda >= 1/2.
    BelowHalf,
}

/// |GL_n(F_p)| exactly.
pub fn gl_order(p: u64, n: u32) -> BigInt {
    let pn = BigInt::from(p).pow(n);
    let mut out = BigInt::one();
    for i in 0..n {
        out *= &pn - BigInt::from(p).pow(i);
    }
    out
}

/// One conjugacy class of GL_n(F_p): primary block data
/// `(irreducible, partition of multiplicities)`, its common element
/// order, and the exact class size.
#[derive(Debug, Clone)]
pub struct GlClass {
    pub blocks: Vec<(FpPoly, Vec<u32>)>,
    pub order: u64,
    pub size: BigInt,
}

impl GlClass {
    /// A concrete representative: block diagonal of companions of P^k.
    pub fn representative(&self, p: u64, n: u32) -> Result<FpMatrix, Error> {
        let mut m = FpMatrix::zero(p, n as usize);
        let mut offset = 0usize;
        for (poly, parts) in &self.blocks {
            for &k in parts {
                let mut power = FpPoly::one(p);
                for _ in 0..k {
                    power = power.mul(poly)?;
                }
                let c = companion(&power)?;
                for i in 0..c.size() {
                    for j in 0..c.size() {
                        m.set(offset + i, offset + j, c.get(i, j));
                    }
                }
                offset += c.size();
            }
        }
        debug_assert_eq!(offset, n as usize);
        Ok(m)
    }
}

/// Centralizer order of a primary block family over F_q, q = p^deg:
/// `q^(sum min(l_i, l_j)) prod_k prod_{i=1}^{m_k} (1 - q^-i)` with m_k
/// the multiplicity of part k.
fn centralizer_order(q: &BigInt, partition: &[u32]) -> BigInt {
    let mut sum_min = 0u64;
    for &a in partition {
        for &b in partition {
            sum_min += a.min(b) as u64;
        }
    }
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &a in partition {
        *mult.entry(a).or_insert(0) += 1;
    }
    let mut shift = 0u64;
    let mut unit_part = BigInt::one();
    for (_, m) in mult {
        for i in 1..=m {
            unit_part *= q.pow(i) - BigInt::one();
            shift += i as u64;
        }
    }
    // q^(sum_min) prod (1 - q^-i) = q^(sum_min - shift) prod (q^i - 1)
    q.pow((sum_min - shift) as u32) * unit_part
}

/// All conjugacy classes of GL_n(F_p), with orders and exact sizes.
/// The sizes sum to |GL_n(F_p)| (asserted).
pub fn gl_conjugacy_classes(p: u64, n: u32) -> Result<Vec<GlClass>, Error> {
    // Invertible primary blocks use irreducibles other than x.
    let mut irreducibles: Vec<(FpPoly, u32)> = Vec::new();
    for d in 1..=n {
        for poly in enum_irreducible(p, d)? {
            if poly.constant_term() != 0 {
                irreducibles.push((poly, d));
            }
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        p: u64,
        irreducibles: &[(FpPoly, u32)],
        idx: usize,
        remaining: u32,
        acc: &mut Vec<(FpPoly, Vec<u32>)>,
        out: &mut Vec<GlClass>,
    ) -> Result<(), Error> {
        if remaining == 0 {
            let mut order = 1u64;
            let mut size = BigInt::one();
            for (poly, parts) in acc.iter() {
                let max_part = *parts.iter().max().expect("nonempty partition");
                order = lcm(order, irreducible_block_order(poly, max_part)?);
                let q = BigInt::from(p).pow(poly.degree() as u32);
                size *= centralizer_order(&q, parts);
            }
            out.push(GlClass { blocks: acc.clone(), order, size });
            return Ok(());
        }
        if idx == irreducibles.len() {
            return Ok(());
        }
        go(p, irreducibles, idx + 1, remaining, acc, out)?;
        let d = irreducibles[idx].1;
        let max_weight = remaining / d;
        if max_weight >= 1 {
            for partition in partitions_up_to(max_weight) {
                let weight: u32 = partition.iter().sum();
                acc.push((irreducibles[idx].0.clone(), partition));
                go(p, irreducibles, idx + 1, remaining - weight * d, acc, out)?;
                acc.pop();
            }
        }
        Ok(())
    }
    let mut classes = Vec::new();
    let mut acc = Vec::new();
    go(p, &irreducibles, 0, n, &mut acc, &mut classes)?;
    // The stored value so far is the centralizer order; invert it.
    let total = gl_order(p, n);
    let mut sum = BigInt::from(0u32);
    for class in classes.iter_mut() {
        class.size = &total / &class.size;
        sum += &class.size;
    }
    assert_eq!(sum, total, "class sizes must sum to the group order");
    Ok(classes)
}

/// Nonempty partitions (nonincreasing) with sum at most `max`.
fn partitions_up_to(max: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, cap: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        for next in (1..=cap.min(remaining)).rev() {
            acc.push(next);
            go(remaining - next, next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(max, max, &mut acc, &mut out);
    out
}

/// Order spectrum of Aut((Z/p)^n) through conjugacy classes: exact and
/// cheap even where |GL| is astronomically large.
pub fn elementary_spectrum(p: u64, n: u32) -> Result<OrderSpectrum, Error> {
    let mut spectrum = OrderSpectrum::new();
    for class in gl_conjugacy_classes(p, n)? {
        *spectrum.entry(class.order).or_insert_with(|| BigInt::from(0u32)) += class.size;
    }
    Ok(spectrum)
}

/// Order spectrum by direct Hillar-Rhea enumeration; the candidate count
/// must fit under `cap`.
pub fn direct_spectrum(part: &AbelianPGroup, cap: u64) -> Result<OrderSpectrum, Error> {
    let mut spectrum = OrderSpectrum::new();
    let order_cap = part.order()?;
    for auto in enum_autos(part, cap)? {
        let ord = auto.order(order_cap)?;
        *spectrum.entry(ord).or_insert_with(|| BigInt::from(0u32)) += 1;
    }
    Ok(spectrum)
}

/// Order spectrum for the shape (1, .., 1, e) with e >= 2: enumerate the
/// GL_a(F_p) block by conjugacy class representatives and the residual
/// column / row / corner data directly. Conjugating by a block diagonal
/// automorphism permutes the residual data bijectively, so the spectrum
/// of a class equals the spectrum of its representative.
fn near_elementary_spectrum(part: &AbelianPGroup) -> Result<OrderSpectrum, Error> {
    let p = part.prime();
    let exps = part.exponents();
    let a = exps.len() - 1;
    debug_assert!(a >= 1 && exps[a] >= 2 && exps[..a].iter().all(|&x| x == 1));
    let moduli = part.moduli()?;
    let order = part.order()?;
    let pe = moduli[a];
    let mut spectrum = OrderSpectrum::new();
    let classes = gl_conjugacy_classes(p, a as u32)?;
    let count_b = p.pow(a as u32);
    for class in classes {
        let rep = class.representative(p, a as u32)?;
        for bidx in 0..count_b {
            let b: Vec<u64> = (0..a).map(|i| (bidx / p.pow(i as u32)) % p).collect();
            for cidx in 0..count_b {
                let c: Vec<u64> = (0..a).map(|i| (cidx / p.pow(i as u32)) % p).collect();
                for d in (1..pe).filter(|&d| d % p != 0) {
                    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(a + 1);
                    for i in 0..a {
                        let mut row: Vec<i64> =
                            (0..a).map(|j| rep.get(i, j) as i64).collect();
                        row.push(b[i] as i64);
                        rows.push(row);
                    }
                    let mut last: Vec<i64> =
                        c.iter().map(|&x| (x * (pe / p)) as i64).collect();
                    last.push(d as i64);
                    rows.push(last);
                    let m = EndoMatrix::new(part.clone(), &rows)?;
                    debug_assert!(m.is_endo());
                    let ord = m.order(order)?;
                    *spectrum.entry(ord).or_insert_with(|| BigInt::from(0u32)) +=
                        &class.size;
                }
            }
        }
    }
    Ok(spectrum)
}

/// Exact order spectrum of one Sylow part, choosing the strategy by
/// shape, or the certified below-half marker.
pub fn part_spectrum(part: &AbelianPGroup) -> Result<PartSpectrum, Error> {
    let p = part.prime();
    let exps = part.exponents();
    let n = exps.len();
    let big_exponents = exps.iter().filter(|&&e| e >= 2).count();
    if n == 1 {
        // Cyclic part: unit group orders.
        let q = part.order()?;
        let mut spectrum = OrderSpectrum::new();
        for u in 1..q {
            if u % p != 0 {
                let ord = mult_order(u, q)?;
                *spectrum.entry(ord).or_insert_with(|| BigInt::from(0u32)) += 1;
            }
        }
        return Ok(PartSpectrum::Full(spectrum));
    }
    if big_exponents == 0 {
        return Ok(PartSpectrum::Full(elementary_spectrum(p, n as u32)?));
    }
    if big_exponents == 1 {
        // Small shapes go directly; the rest use class representatives.
        if crate::abelian::aut_count(part) <= BigInt::from(200_000u64) {
            return Ok(PartSpectrum::Full(direct_spectrum(part, 10_000_000)?));
        }
        return Ok(PartSpectrum::Full(near_elementary_spectrum(part)?));
    }
    // Two or more exponents >= 2: certify the automorphism order bound
    // p^(e_n - 1) (p^n - 1) < |H| / 2, which rules out lambda >= 1/2.
    let order = part.order()?;
    let bound = p
        .checked_pow(exps[n - 1] - 1)
        .and_then(|x| x.checked_mul(p.checked_pow(n as u32)? - 1))
        .ok_or_else(|| Error::capacity("part_spectrum: bound overflow"))?;
    if 2 * bound < order {
        Ok(PartSpectrum::BelowHalf)
    } else {
        Ok(PartSpectrum::Full(direct_spectrum(part, 10_000_000)?))
    }
}

/// Combined spectrum of a full abelian group: automorphisms split over
/// the Sylow parts and the order is the lcm of the part orders. Returns
/// None when some part certifies below-half (the group then has no
/// automorphism with lambda >= 1/2).
pub fn group_order_spectrum(
    group: &AbelianGroupType,
) -> Result<Option<OrderSpectrum>, Error> {
    let mut acc: OrderSpectrum = OrderSpectrum::new();
    acc.insert(1, BigInt::one());
    for part in group.parts() {
        let spec = match part_spectrum(part)? {
            PartSpectrum::BelowHalf => return Ok(None),
            PartSpectrum::Full(s) => s,
        };
        let mut next = OrderSpectrum::new();
        for (&o1, c1) in &acc {
            for (&o2, c2) in &spec {
                *next.entry(lcm(o1, o2)).or_insert_with(|| BigInt::from(0u32)) += c1 * c2;
            }
        }
        acc = next;
    }
    Ok(Some(acc))
}

/// FDG-isomorphism class size of one classified instance inside Aut(G):
/// the product over Sylow parts of the conjugacy class size of its shape.
pub fn descriptor_class_size(kind: &crate::classify::DescriptorKind) -> Result<BigInt, Error> {
    use crate::classify::{DescriptorKind, OddPart, SpecialTwoClass};
    match kind {
        DescriptorKind::Finite { two_degrees, odd } => {
            let mut size = BigInt::one();
            let n2: u32 = two_degrees.iter().sum();
            if n2 > 0 {
                let mut centralizer = BigInt::one();
                for &d in two_degrees {
                    centralizer *= BigInt::from((1u128 << d) - 1);
                }
                size *= gl_order(2, n2) / centralizer;
            }
            match odd {
                OddPart::None => {}
                OddPart::Elementary { p, m } => {
                    size *= gl_order(*p, *m) / BigInt::from(p.pow(*m) - 1);
                }
                OddPart::Cyclic { .. } => {} // abelian automorphism group
                OddPart::Square { p } => {
                    // centralizer of the squared linear block: p^2 - p
                    size *= gl_order(*p, 2) / BigInt::from(p * p - p);
                }
            }
            Ok(size)
        }
        DescriptorKind::CyclicFamily { two_degrees, .. } => {
            let n2: u32 = two_degrees.iter().sum();
            let mut size = BigInt::one();
            if n2 > 0 {
                let mut centralizer = BigInt::one();
                for &d in two_degrees {
                    centralizer *= BigInt::from((1u128 << d) - 1);
                }
                size *= gl_order(2, n2) / centralizer;
            }
            Ok(size)
        }
        DescriptorKind::SpecialTwo(class) => Ok(match class {
            SpecialTwoClass::Z2Identity | SpecialTwoClass::Z4Neg => BigInt::one(),
            // The two order-4 automorphisms of Z/2 x Z/4 are conjugate.
            SpecialTwoClass::Z2xZ4 => BigInt::from(2u32),
            // Transvections in GL_2(F_2).
            SpecialTwoClass::Jordan2 => BigInt::from(3u32),
            // |GL_3(F_2)| / centralizer of the size-3 unipotent block.
            SpecialTwoClass::Jordan3 => BigInt::from(42u32),
        }),
        DescriptorKind::Nonabelian(_) => {
            Err(Error::domain("descriptor_class_size: nonabelian family"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(p: u64, exps: &[u32]) -> AbelianPGroup {
        AbelianPGroup::new(p, exps.to_vec()).unwrap()
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), BigInt::from(6u32));
        assert_eq!(gl_order(2, 3), BigInt::from(168u32));
        assert_eq!(gl_order(2, 4), BigInt::from(20160u32));
        assert_eq!(gl_order(3, 2), BigInt::from(48u32));
        assert_eq!(gl_order(3, 3), BigInt::from(11232u32));
        assert_eq!(gl_order(5, 2), BigInt::from(480u32));
    }

    #[test]
    fn class_sizes_sum_correctly() {
        // gl_conjugacy_classes asserts the size sum internally.
        for (p, n) in [(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 2), (3, 3), (5, 2)]
        {
            let classes = gl_conjugacy_classes(p, n).unwrap();
            assert!(!classes.is_empty(), "p={p} n={n}");
        }
    }

    #[test]
    fn gl2_f2_classes() {
        // Identity (1), transvections (3, order 2), Singer pair (2, order 3).
        let classes = gl_conjugacy_classes(2, 2).unwrap();
        assert_eq!(classes.len(), 3);
        let mut by_order: BTreeMap<u64, BigInt> = BTreeMap::new();
        for c in classes {
            *by_order.entry(c.order).or_insert_with(|| BigInt::from(0u32)) += c.size;
        }
        assert_eq!(by_order[&1], BigInt::from(1u32));
        assert_eq!(by_order[&2], BigInt::from(3u32));
        assert_eq!(by_order[&3], BigInt::from(2u32));
    }

    #[test]
    fn elementary_spectrum_matches_direct() {
        for (p, n) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (5, 2)] {
            let symbolic = elementary_spectrum(p, n as u32).unwrap();
            let direct = direct_spectrum(&pg(p, &vec![1; n]), 10_000_000).unwrap();
            assert_eq!(symbolic, direct, "p={p} n={n}");
        }
    }

    #[test]
    fn class_representatives_have_class_order() {
        for (p, n) in [(2u64, 4u32), (3, 3)] {
            for class in gl_conjugacy_classes(p, n).unwrap() {
                let rep = class.representative(p, n).unwrap();
                assert_eq!(
                    crate::fdg::matrix_order(&rep).unwrap(),
                    class.order,
                    "p={p} n={n} {:?}",
                    class.blocks
                );
            }
        }
    }

    #[test]
    fn near_elementary_matches_direct() {
        for part in [pg(2, &[1, 2]), pg(2, &[1, 1, 2]), pg(2, &[1, 3]), pg(3, &[1, 2])] {
            let fancy = near_elementary_spectrum(&part).unwrap();
            let direct = direct_spectrum(&part, 10_000_000).unwrap();
            assert_eq!(fancy, direct, "{part}");
        }
    }

    #[test]
    fn cyclic_spectrum() {
        // Z/9: unit orders 1, 6, 3, 6, 3, 2 for u = 1, 2, 4, 5, 7, 8.
        let spec = match part_spectrum(&pg(3, &[2])).unwrap() {
            PartSpectrum::Full(s) => s,
            _ => panic!("cyclic part must have a full spectrum"),
        };
        assert_eq!(spec[&1], BigInt::from(1u32));
        assert_eq!(spec[&2], BigInt::from(1u32));
        assert_eq!(spec[&3], BigInt::from(2u32));
        assert_eq!(spec[&6], BigInt::from(2u32));
    }

    #[test]
    fn below_half_certificate() {
        // (Z/4)^2: bound 2 (2^2 - 1) = 6 < 8 = |H| / 2.
        match part_spectrum(&pg(2, &[2, 2])).unwrap() {
            PartSpectrum::BelowHalf => {}
            PartSpectrum::Full(_) => panic!("expected the below-half certificate"),
        }
        // The certificate is truthful: direct enumeration confirms.
        let direct = direct_spectrum(&pg(2, &[2, 2]), 10_000_000).unwrap();
        assert!(direct.keys().all(|&o| 2 * o < 16));
    }

    #[test]
    fn group_spectrum_z6() {
        // Aut(Z/6) = Z/2: orders 1 and 2.
        let g = crate::abelian::parse_group("Z6").unwrap();
        let spec = group_order_spectrum(&g).unwrap().unwrap();
        assert_eq!(spec.len(), 2);
        assert_eq!(spec[&1], BigInt::one());
        assert_eq!(spec[&2], BigInt::one());
    }

    #[test]
    fn special_class_sizes_match_enumeration() {
        use crate::classify::{DescriptorKind, SpecialTwoClass};
        // Z/2 x Z/4: exactly two automorphisms of order 4, conjugate.
        let direct = direct_spectrum(&pg(2, &[1, 2]), 10_000).unwrap();
        assert_eq!(direct[&4], BigInt::from(2u32));
        assert_eq!(
            descriptor_class_size(&DescriptorKind::SpecialTwo(SpecialTwoClass::Z2xZ4)).unwrap(),
            BigInt::from(2u32)
        );
        // (Z/2)^2 transvections and (Z/2)^3 full Jordan blocks.
        let d2 = direct_spectrum(&pg(2, &[1, 1]), 10_000).unwrap();
        assert_eq!(d2[&2], BigInt::from(3u32));
        let d3 = elementary_spectrum(2, 3).unwrap();
        assert_eq!(d3[&4], BigInt::from(42u32));
    }
}
