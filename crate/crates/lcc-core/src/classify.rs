//! Effective classification of periodic FDGs by lambda value: given a
//! rational `rho` in [1/2, 1], produces the complete, duplicate-free list
//! of isomorphism classes of pairs (finite group, automorphism) with
//! lambda value exactly `rho`, as finite descriptors plus symbolic
//! infinite families.
//!
//! The search splits by the denominator of rho. Primary-order solutions
//! come from the known shapes (primitive companion blocks, primitive-root
//! multiplications, the squared linear block, and the five boundary
//! 2-group classes at 1/2). Non-primary solutions are found by
//! distributing full divisors of the numerator over the odd cycle-length
//! factors and solving a strictly monotone equation for the remaining
//! prime power. At 1/2 the four nonabelian families join the list.

use crate::abelian::{AbelianGroupType, AbelianPGroup};
use crate::error::Error;
use crate::fdg::FdgSpec;
use crate::ffpoly::{enum_primitive, FpPoly};
use crate::numtheory::{self, euler_phi, factor, gcd, is_prime, t0_set};
use crate::{rat, rat_u64, Rat};
use num_bigint::BigInt;
use std::fmt;

/// A target lambda value `a/b` with `1/2 <= a/b <= 1`, coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rho {
    pub num: u64,
    pub den: u64,
}

impl Rho {
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 || num == 0 {
            return Err(Error::domain("rho: numerator and denominator must be positive"));
        }
        if gcd(num, den) != 1 {
            return Err(Error::domain("rho: numerator and denominator must be coprime"));
        }
        if 2 * num < den || num > den {
            return Err(Error::domain("rho: need 1/2 <= rho <= 1"));
        }
        Ok(Rho { num, den })
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::parse(format!("rho '{s}' must be a/b")))?;
        let num = a.trim().parse().map_err(|_| Error::parse("bad rho numerator"))?;
        let den = b.trim().parse().map_err(|_| Error::parse("bad rho denominator"))?;
        Rho::new(num, den)
    }

    pub fn as_rat(&self) -> Rat {
        rat_u64(self.num, self.den)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The odd Sylow part of a classified shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddPart {
    None,
    /// (Z/p)^m with one primitive degree-m block; cycle length p^m - 1.
    Elementary { p: u64, m: u32 },
    /// Z/p^m with a primitive-root multiplication; cycle length phi(p^m).
    Cyclic { p: u64, m: u32 },
    /// (Z/p)^2 with the squared linear block; cycle length p(p-1).
    Square { p: u64 },
}

impl OddPart {
    pub fn prime(&self) -> Option<u64> {
        match self {
            OddPart::None => None,
            OddPart::Elementary { p, .. } | OddPart::Cyclic { p, .. } | OddPart::Square { p } => {
                Some(*p)
            }
        }
    }

    /// Largest cycle length of the odd part.
    pub fn cycle_length(&self) -> u64 {
        match self {
            OddPart::None => 1,
            OddPart::Elementary { p, m } => p.pow(*m) - 1,
            OddPart::Cyclic { p, m } => p.pow(*m - 1) * (p - 1),
            OddPart::Square { p } => p * (p - 1),
        }
    }

    pub fn group_order(&self) -> u64 {
        match self {
            OddPart::None => 1,
            OddPart::Elementary { p, m } | OddPart::Cyclic { p, m } => p.pow(*m),
            OddPart::Square { p } => p * p,
        }
    }

    pub fn lambda(&self) -> Rat {
        match self {
            OddPart::None => rat(1, 1),
            _ => rat_u64(self.cycle_length(), self.group_order())
                .max(rat_u64(1, 1) - rat_u64(1, self.group_order()))
                .min(rat_u64(self.cycle_length(), self.group_order())),
        }
    }

    /// Number of isomorphism classes with this odd part.
    pub fn class_count(&self) -> Result<u64, Error> {
        match self {
            OddPart::None => Ok(1),
            OddPart::Elementary { p, m } => {
                Ok(euler_phi(p.pow(*m) - 1)? / *m as u64)
            }
            OddPart::Cyclic { p, m } => euler_phi(euler_phi(p.pow(*m))?),
            OddPart::Square { p } => euler_phi(p - 1),
        }
    }

    /// Candidate largest cycle lengths over the whole automorphism group
    /// of the underlying odd group (the maximality comparison set).
    pub fn group_cycle_candidates(&self) -> Vec<u64> {
        match self {
            OddPart::None => vec![1],
            OddPart::Elementary { p, m } => {
                if *m == 1 {
                    vec![p - 1]
                } else if *m == 2 {
                    vec![p * p - 1, p * p - p]
                } else {
                    vec![p.pow(*m) - 1]
                }
            }
            OddPart::Cyclic { p, m } => vec![p.pow(*m - 1) * (p - 1)],
            OddPart::Square { p } => vec![p * p - 1, p * p - p],
        }
    }
}

/// The five boundary 2-group classes at lambda = 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialTwoClass {
    /// Z/2 with the identity.
    Z2Identity,
    /// Z/4 with multiplication by 3.
    Z4Neg,
    /// Z/2 x Z/4 with the order-4 automorphism.
    Z2xZ4,
    /// (Z/2)^2 with the unipotent Jordan block of size 2.
    Jordan2,
    /// (Z/2)^3 with the unipotent Jordan block of size 3.
    Jordan3,
}

/// The four nonabelian families at lambda = 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonabelianFamily {
    Dihedral,
    Dicyclic,
    KleinDihedral,
    KleinDicyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorKind {
    /// A finite set of classes: pairwise coprime 2-part degrees (possibly
    /// empty) paired with one odd part.
    Finite { two_degrees: Vec<u32>, odd: OddPart },
    /// Infinite family: fixed 2-part degrees times Z/p^m with a
    /// primitive-root multiplication, over all m >= 2.
    CyclicFamily { two_degrees: Vec<u32>, p: u64 },
    SpecialTwo(SpecialTwoClass),
    Nonabelian(NonabelianFamily),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessCount {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for WitnessCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCount::Finite(n) => write!(f, "{n}"),
            WitnessCount::Infinite => write!(f, "infinite"),
        }
    }
}

/// One classified shape: either finitely many concrete classes or a
/// parametrized infinite family, with its lambda value, maximality flag,
/// and machine-checkable side conditions.
#[derive(Debug, Clone)]
pub struct IsoClassDescriptor {
    pub kind: DescriptorKind,
    pub lambda: Rat,
    pub lambda_maximal: bool,
    pub witness_count: WitnessCount,
    pub spec_template: String,
    pub side_conditions: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub rho: Rho,
    pub descriptors: Vec<IsoClassDescriptor>,
    pub empty_reason: Option<String>,
}

/// Builds the full descriptor for a kind, computing lambda, witness
/// count, template and maximality.
fn build_descriptor(kind: DescriptorKind) -> Result<IsoClassDescriptor, Error> {
    let (lambda, witness_count, spec_template, side_conditions) = match &kind {
        DescriptorKind::Finite { two_degrees, odd } => {
            let mut lambda = odd.lambda();
            let mut count = BigInt::from(1u32);
            let mut parts: Vec<String> = Vec::new();
            for &d in two_degrees {
                lambda *= rat(1, 1) - Rat::new(BigInt::from(1), BigInt::from(1u128 << d));
                count *= BigInt::from(phi2(d)?);
                parts.push(format!("V(P{d}@2)"));
            }
            let mut side = vec![];
            if !two_degrees.is_empty() {
                side.push(format!(
                    "P{} primitive of the stated degree over F_2, degrees pairwise coprime",
                    two_degrees
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", P")
                ));
            }
            match odd {
                OddPart::None => {}
                OddPart::Elementary { p, m } => {
                    count *= BigInt::from(odd.class_count()?);
                    if *m == 1 {
                        parts.push(format!("M({p},g)"));
                        side.push(format!("g a primitive root mod {p}"));
                    } else {
                        parts.push(format!("V(Q{m}@{p})"));
                        side.push(format!("Q{m} primitive of degree {m} over F_{p}"));
                    }
                }
                OddPart::Cyclic { p, m } => {
                    count *= BigInt::from(odd.class_count()?);
                    parts.push(format!("M({},g)", p.pow(*m)));
                    side.push(format!("g a primitive root mod {}", p.pow(*m)));
                }
                OddPart::Square { p } => {
                    count *= BigInt::from(odd.class_count()?);
                    parts.push(format!("V((x-g)^2@{p})"));
                    side.push(format!("g a generator of the units mod {p}"));
                }
            }
            let template = if parts.is_empty() {
                "trivial".to_string()
            } else {
                parts.join(" * ")
            };
            (lambda, WitnessCount::Finite(count), template, side)
        }
        DescriptorKind::CyclicFamily { two_degrees, p } => {
            let mut lambda = rat(1, 1) - rat_u64(1, *p);
            let mut parts: Vec<String> = Vec::new();
            for &d in two_degrees {
                lambda *= rat(1, 1) - Rat::new(BigInt::from(1), BigInt::from(1u128 << d));
                parts.push(format!("V(P{d}@2)"));
            }
            parts.push(format!("M({p}^m,g)"));
            let mut side = vec![
                format!("m >= 2, g a primitive root mod {p}^m"),
            ];
            if !two_degrees.is_empty() {
                side.push("P_d primitive of the stated degrees over F_2".to_string());
            }
            (lambda, WitnessCount::Infinite, parts.join(" * "), side)
        }
        DescriptorKind::SpecialTwo(class) => {
            let (template, _order) = match class {
                SpecialTwoClass::Z2Identity => ("M(2,1)", 2u64),
                SpecialTwoClass::Z4Neg => ("M(4,3)", 4),
                SpecialTwoClass::Z2xZ4 => ("GA(Z2 x Z4;[[1,1],[2,1]])", 8),
                SpecialTwoClass::Jordan2 => ("V(x^2+1@2)", 4),
                SpecialTwoClass::Jordan3 => ("V(x^3+x^2+x+1@2)", 8),
            };
            (
                rat(1, 2),
                WitnessCount::Finite(BigInt::from(1u32)),
                template.to_string(),
                vec![],
            )
        }
        DescriptorKind::Nonabelian(family) => {
            let (template, side) = match family {
                NonabelianFamily::Dihedral => (
                    "Dih(n,m)",
                    vec![
                        "n >= 3".to_string(),
                        "m = 1 mod p for every prime p | n; m = 1 mod 4 if 4 | n".to_string(),
                    ],
                ),
                NonabelianFamily::Dicyclic => (
                    "Dic(n,m)",
                    vec![
                        "n even, n >= 4".to_string(),
                        "m = 1 mod p for every prime p | n; m = 1 mod 4 if 4 | n".to_string(),
                    ],
                ),
                NonabelianFamily::KleinDihedral => (
                    "DK(o,m)",
                    vec![
                        "o odd, o >= 3".to_string(),
                        "m = 1 mod p for every prime p | o".to_string(),
                    ],
                ),
                NonabelianFamily::KleinDicyclic => (
                    "DicK(o,m)",
                    vec![
                        "o odd, o >= 3".to_string(),
                        "m = 1 mod p for every prime p | o".to_string(),
                    ],
                ),
            };
            (rat(1, 2), WitnessCount::Infinite, template.to_string(), side)
        }
    };
    let lambda_maximal = is_lambda_maximal_kind(&kind)?;
    Ok(IsoClassDescriptor {
        kind,
        lambda,
        lambda_maximal,
        witness_count,
        spec_template,
        side_conditions,
    })
}

/// phi(2^d - 1) / d: the number of primitive polynomials of degree d
/// over F_2.
fn phi2(d: u32) -> Result<u64, Error> {
    if d == 0 || d > 62 {
        return Err(Error::capacity("phi2: degree out of range"));
    }
    Ok(euler_phi((1u64 << d) - 1)? / d as u64)
}

/// Lambda-maximality of a descriptor.
///
/// Pure 2-part shapes are maximal exactly when they consist of a single
/// primitive block. Mixed shapes are maximal unless some other additive
/// decomposition of the 2-rank into pairwise coprime parts, paired with
/// an achievable odd cycle length, gives a strictly larger product of
/// coprime cycle lengths.
pub fn is_lambda_maximal_kind(kind: &DescriptorKind) -> Result<bool, Error> {
    match kind {
        DescriptorKind::SpecialTwo(class) => Ok(matches!(
            class,
            SpecialTwoClass::Z2Identity | SpecialTwoClass::Z4Neg | SpecialTwoClass::Z2xZ4
        )),
        DescriptorKind::Nonabelian(_) => Ok(true),
        DescriptorKind::Finite { two_degrees, odd } => {
            if matches!(odd, OddPart::None) {
                return Ok(two_degrees.len() <= 1);
            }
            let n2: u32 = two_degrees.iter().sum();
            let current: u128 = two_degrees
                .iter()
                .fold(odd.cycle_length() as u128, |acc, &d| {
                    acc * (((1u128) << d) - 1)
                });
            for l in odd.group_cycle_candidates() {
                for decomp in coprime_decompositions(n2) {
                    let mut prod = l as u128;
                    let mut ok = true;
                    for &d in &decomp {
                        let v = (1u128 << d) - 1;
                        if gcd_u128(v, l as u128) != 1 {
                            ok = false;
                            break;
                        }
                        prod *= v;
                    }
                    if ok && prod > current {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        DescriptorKind::CyclicFamily { two_degrees, p } => {
            // Family-wide rule (m >= 2): not maximal iff some coprime
            // decomposition of the 2-rank has odd cycle product coprime
            // to p(p-1) and larger than the current 2-part product.
            let n2: u32 = two_degrees.iter().sum();
            let current: u128 = two_degrees
                .iter()
                .fold(1u128, |acc, &d| acc * ((1u128 << d) - 1));
            let ppm1 = (*p as u128) * ((*p - 1) as u128);
            for decomp in coprime_decompositions(n2) {
                let mut prod = 1u128;
                let mut ok = true;
                for &d in &decomp {
                    let v = (1u128 << d) - 1;
                    if gcd_u128(v, ppm1) != 1 {
                        ok = false;
                        break;
                    }
                    prod *= v;
                }
                if ok && prod > current {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All sets of pairwise coprime integers >= 2 summing to exactly n,
/// ascending within each set. n = 0 yields the empty set only.
pub fn coprime_decompositions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for d in min..=n {
            if acc.iter().all(|&e| gcd(d as u64, e as u64) == 1) {
                acc.push(d);
                go(n - d, d + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(n, 2, &mut acc, &mut out);
    out
}

/// Options for the classifier.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Evaluate every finite descriptor instance with group order at most
    /// this bound and assert its lambda value before returning.
    pub self_check_order: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { self_check_order: 10_000 }
    }
}

/// Complete classification of periodic FDG isomorphism classes with
/// lambda value exactly rho.
pub fn classify_rho(rho: Rho) -> Result<ClassificationResult, Error> {
    classify_rho_with(rho, ClassifyOptions::default())
}

pub fn classify_rho_with(
    rho: Rho,
    options: ClassifyOptions,
) -> Result<ClassificationResult, Error> {
    let (a, b) = (rho.num, rho.den);
    let mut kinds: Vec<DescriptorKind> = Vec::new();
    let mut empty_reason = None;

    if a == b {
        // lambda = 1: only the trivial FDG (the identity cycle fills the
        // one-element group).
        kinds.push(DescriptorKind::Finite { two_degrees: vec![], odd: OddPart::None });
        return finish(rho, kinds, empty_reason, options);
    }

    let bf = factor(b)?;
    let odd_primes_of_b: Vec<(u64, u32)> = bf
        .pairs()
        .iter()
        .copied()
        .filter(|&(p, _)| p != 2)
        .collect();
    if odd_primes_of_b.len() >= 2 {
        empty_reason = Some("denominator has two distinct odd prime divisors".to_string());
        return finish(rho, kinds, empty_reason, options);
    }

    // Primary-order solutions.
    if 2 * a == b {
        for class in [
            SpecialTwoClass::Z2Identity,
            SpecialTwoClass::Z4Neg,
            SpecialTwoClass::Z2xZ4,
            SpecialTwoClass::Jordan2,
            SpecialTwoClass::Jordan3,
        ] {
            kinds.push(DescriptorKind::SpecialTwo(class));
        }
    } else {
        // Case A: rho = 1 - 1/p for an odd prime p.
        if b % 2 == 1 && is_prime(b) && a == b - 1 {
            kinds.push(DescriptorKind::CyclicFamily { two_degrees: vec![], p: b });
            kinds.push(DescriptorKind::Finite {
                two_degrees: vec![],
                odd: OddPart::Elementary { p: b, m: 1 },
            });
            kinds.push(DescriptorKind::Finite {
                two_degrees: vec![],
                odd: OddPart::Square { p: b },
            });
        }
        // Case B: b = p^m with m >= 2, the group order is forced.
        if bf.pairs().len() == 1 {
            let (p, m) = bf.pairs()[0];
            if m >= 2 {
                if p == 2 {
                    for decomp in coprime_decompositions(m) {
                        if decomp.is_empty() {
                            continue;
                        }
                        let prod: u128 = decomp
                            .iter()
                            .fold(1u128, |acc, &d| acc * ((1u128 << d) - 1));
                        if prod == a as u128 {
                            kinds.push(DescriptorKind::Finite {
                                two_degrees: decomp,
                                odd: OddPart::None,
                            });
                        }
                    }
                } else if a == p.pow(m) - 1 {
                    kinds.push(DescriptorKind::Finite {
                        two_degrees: vec![],
                        odd: OddPart::Elementary { p, m },
                    });
                }
            }
        }
    }

    // Non-primary solutions: distribute full divisors of a over the
    // factors 2^d - 1 and solve for the odd prime power. The designated
    // first factor absorbs the odd prime power, so its remnant t1 ranges
    // over all full divisors; the remaining factors are complete values
    // 2^d - 1 and must have t + 1 a power of two.
    let t_all = numtheory::full_divisors(a)?.divisors;
    let t0 = t0_set(a)?.divisors;
    let rho_rat = rho.as_rat();
    match odd_primes_of_b.first() {
        Some(&(p, l)) => {
            // The odd prime of the group order is known. Elementary odd
            // part: scan the p-valuation carried by the first factor.
            for (t1, rest) in tuples(&t_all, &t0) {
                let c = rest_lambda(&rest);
                if rho_rat >= c {
                    continue;
                }
                let mut hits = 0;
                let mut w = 0u32; // p-adic valuation of 2^d1 - 1
                loop {
                    let pw = p.checked_pow(w);
                    let (Some(pw), Some(pm)) = (pw, p.checked_pow(l + w)) else { break };
                    let Some(c1) = pw.checked_mul(t1) else { break };
                    let e = (rat(1, 1) - rat_u64(1, c1 + 1))
                        * (rat(1, 1) - rat_u64(1, pm))
                        * c.clone();
                    if e > rho_rat {
                        break;
                    }
                    if e == rho_rat {
                        hits += 1;
                        if let Some(kind) =
                            elementary_solution(t1, w, &rest, p, l + w)?
                        {
                            kinds.push(kind);
                        }
                    }
                    w += 1;
                    assert!(w < 200, "monotone valuation scan failed to terminate");
                }
                assert!(hits <= 1, "monotone scan found multiple solutions");
            }
            // Cyclic / exceptional odd parts exist only when the
            // denominator carries a single factor of p.
            if l == 1 {
                for set in subsets_pairwise_coprime(&t0) {
                    if set.is_empty() {
                        continue;
                    }
                    let lambda2 = rest_lambda(&set);
                    let big2: u128 = set.iter().fold(1u128, |acc, &t| acc * t as u128);
                    let target = lambda2.clone() * (rat(1, 1) - rat_u64(1, p));
                    if target != rho_rat {
                        continue;
                    }
                    if gcd_u128(big2, (p - 1) as u128) != 1 || big2 % p as u128 == 0 {
                        continue;
                    }
                    let degrees: Vec<u32> = set.iter().map(|&t| (t + 1).ilog2()).collect();
                    kinds.push(DescriptorKind::CyclicFamily {
                        two_degrees: sorted(degrees.clone()),
                        p,
                    });
                    kinds.push(DescriptorKind::Finite {
                        two_degrees: sorted(degrees),
                        odd: OddPart::Square { p },
                    });
                }
            }
        }
        None => {
            // b is a power of two: the odd prime power cancels entirely
            // into 2^d1 - 1 = q * t1. Scan odd prime powers q.
            for (t1, rest) in tuples(&t_all, &t0) {
                let c = rest_lambda(&rest);
                if rho_rat >= c {
                    continue;
                }
                let mut hits = 0;
                let mut q = 3u64;
                loop {
                    let Some(c1) = q.checked_mul(t1) else { break };
                    let e = (rat(1, 1) - rat_u64(1, c1 + 1))
                        * (rat(1, 1) - rat_u64(1, q))
                        * c.clone();
                    if e > rho_rat {
                        break;
                    }
                    if e == rho_rat {
                        let (p, m) = crate::bounds::prime_power_split(q);
                        if p > 2 {
                            hits += 1;
                            if let Some(kind) = elementary_solution(
                                t1,
                                m,
                                &rest,
                                p,
                                m,
                            )? {
                                kinds.push(kind);
                            }
                        }
                    }
                    q += 2;
                    assert!(q < 1 << 40, "monotone prime-power scan failed to terminate");
                }
                assert!(hits <= 1, "monotone scan found multiple solutions");
            }
        }
    }

    // The boundary value also carries the nonabelian families.
    if 2 * a == b {
        kinds.push(DescriptorKind::Nonabelian(NonabelianFamily::Dihedral));
        kinds.push(DescriptorKind::Nonabelian(NonabelianFamily::Dicyclic));
        kinds.push(DescriptorKind::Nonabelian(NonabelianFamily::KleinDihedral));
        kinds.push(DescriptorKind::Nonabelian(NonabelianFamily::KleinDicyclic));
    }

    if kinds.is_empty() && empty_reason.is_none() {
        empty_reason = Some("no classified shape attains this value".to_string());
    }
    finish(rho, kinds, empty_reason, options)
}

/// Validates and assembles an elementary-odd-part solution: the first
/// 2-factor is `p^w * t1 + 1`, which must be a power of two giving degree
/// at least 2, all degrees pairwise coprime, all cycle lengths coprime to
/// the odd cycle length, and the 2-part lambda above 1/2.
fn elementary_solution(
    t1: u64,
    w: u32,
    rest: &[u64],
    p: u64,
    m: u32,
) -> Result<Option<DescriptorKind>, Error> {
    // With no p-power attached, the designated first factor is not
    // actually distinguished; keep only the canonical split where it is
    // the smallest, so each class is built exactly once.
    if w == 0 && rest.iter().any(|&t| t < t1) {
        return Ok(None);
    }
    let Some(pw) = p.checked_pow(w) else { return Ok(None) };
    let Some(c1) = pw.checked_mul(t1) else { return Ok(None) };
    let first = c1 + 1;
    if !first.is_power_of_two() {
        return Ok(None);
    }
    let d1 = first.ilog2();
    if d1 < 2 {
        return Ok(None);
    }
    let mut degrees = vec![d1];
    let mut lengths: Vec<u64> = vec![c1];
    for &t in rest {
        degrees.push((t + 1).ilog2());
        lengths.push(t);
    }
    // Degrees pairwise coprime (equivalently the 2-part cycle lengths).
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            if gcd(degrees[i] as u64, degrees[j] as u64) != 1 {
                return Ok(None);
            }
        }
    }
    let odd_len = p.pow(m) - 1;
    for &len in &lengths {
        if gcd(len, odd_len) != 1 {
            return Ok(None);
        }
    }
    // 2-part lambda above 1/2: product of (1 - 2^-d) vs 1/2.
    let lambda2 = degrees.iter().fold(rat(1, 1), |acc, &d| {
        acc * (rat(1, 1) - Rat::new(BigInt::from(1), BigInt::from(1u128 << d)))
    });
    if lambda2 <= rat(1, 2) {
        return Ok(None);
    }
    Ok(Some(DescriptorKind::Finite {
        two_degrees: sorted(degrees),
        odd: OddPart::Elementary { p, m },
    }))
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// `prod (1 - 1/(t+1))` over the chosen tail factors.
fn rest_lambda(rest: &[u64]) -> Rat {
    rest.iter()
        .fold(rat(1, 1), |acc, &t| acc * (rat(1, 1) - rat_u64(1, t + 1)))
}

/// All (t1, tail) choices: t1 from the full divisors (1 allowed; this is
/// the p-free remnant of the factor absorbing the odd prime power), the
/// tail a pairwise coprime set of divisors with t + 1 a power of two,
/// each at least 3 and coprime to t1.
fn tuples(t_all: &[u64], t0: &[u64]) -> Vec<(u64, Vec<u64>)> {
    let mut out = Vec::new();
    for &t1 in t_all {
        let candidates: Vec<u64> = t0
            .iter()
            .copied()
            .filter(|&t| t >= 3 && t != t1 && gcd(t, t1) == 1)
            .collect();
        for set in subsets_pairwise_coprime(&candidates) {
            out.push((t1, set));
        }
    }
    out
}

/// All pairwise coprime subsets (including the empty one) of the values.
fn subsets_pairwise_coprime(values: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    fn go(values: &[u64], start: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        for i in start..values.len() {
            let v = values[i];
            if v < 3 {
                continue;
            }
            if acc.iter().all(|&u| gcd(u, v) == 1) {
                acc.push(v);
                out.push(acc.clone());
                go(values, i + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut acc = Vec::new();
    go(values, 0, &mut acc, &mut out);
    out
}

/// Sort canonically, verify pairwise distinctness, optionally self-check
/// finite descriptors by evaluation, and assemble the result.
fn finish(
    rho: Rho,
    kinds: Vec<DescriptorKind>,
    empty_reason: Option<String>,
    options: ClassifyOptions,
) -> Result<ClassificationResult, Error> {
    let mut descriptors = kinds
        .into_iter()
        .map(build_descriptor)
        .collect::<Result<Vec<_>, _>>()?;
    descriptors.sort_by_key(|d| descriptor_sort_key(&d.kind));
    // Distinct descriptors must stay distinct.
    for w in descriptors.windows(2) {
        if w[0].kind == w[1].kind {
            return Err(Error::domain(format!(
                "classifier produced a duplicate descriptor: {}",
                w[0].spec_template
            )));
        }
    }
    if options.self_check_order > 0 {
        for d in &descriptors {
            self_check_descriptor(d, &rho, options.self_check_order)?;
        }
    }
    Ok(ClassificationResult { rho, descriptors, empty_reason })
}

fn descriptor_sort_key(kind: &DescriptorKind) -> (u128, u64, Vec<u32>, u8) {
    match kind {
        DescriptorKind::SpecialTwo(class) => {
            let order = match class {
                SpecialTwoClass::Z2Identity => 2u128,
                SpecialTwoClass::Z4Neg => 4,
                SpecialTwoClass::Jordan2 => 4,
                SpecialTwoClass::Z2xZ4 => 8,
                SpecialTwoClass::Jordan3 => 8,
            };
            (order, 2, vec![], 0)
        }
        DescriptorKind::Finite { two_degrees, odd } => {
            let sum: u32 = two_degrees.iter().sum();
            let order = (1u128 << sum) * odd.group_order() as u128;
            (
                order,
                odd.prime().unwrap_or(0),
                two_degrees.clone(),
                1,
            )
        }
        DescriptorKind::CyclicFamily { two_degrees, p } => {
            let sum: u32 = two_degrees.iter().sum();
            let order = (1u128 << sum) * (*p as u128) * (*p as u128);
            (order, *p, two_degrees.clone(), 2)
        }
        DescriptorKind::Nonabelian(family) => {
            let tag = match family {
                NonabelianFamily::Dihedral => 0,
                NonabelianFamily::Dicyclic => 1,
                NonabelianFamily::KleinDihedral => 2,
                NonabelianFamily::KleinDicyclic => 3,
            };
            (u128::MAX, 0, vec![], 3 + tag)
        }
    }
}

/// Concrete members of a finite descriptor as evaluable specs.
pub fn finite_instances(kind: &DescriptorKind) -> Result<Vec<FdgSpec>, Error> {
    let DescriptorKind::Finite { two_degrees, odd } = kind else {
        return Err(Error::domain("finite_instances: not a finite descriptor"));
    };
    let mut per_slot: Vec<Vec<FdgSpec>> = Vec::new();
    for &d in two_degrees {
        let polys = enum_primitive(2, d)?;
        per_slot.push(polys.into_iter().map(|poly| FdgSpec::VPoly { poly }).collect());
    }
    match odd {
        OddPart::None => {}
        OddPart::Elementary { p, m } => {
            let polys = enum_primitive(*p, *m)?;
            per_slot.push(polys.into_iter().map(|poly| FdgSpec::VPoly { poly }).collect());
        }
        OddPart::Cyclic { p, m } => {
            let q = p.pow(*m);
            let roots = numtheory::primitive_roots(*p, *m)?;
            per_slot.push(roots.into_iter().map(|g| FdgSpec::M { m: q, a: g }).collect());
        }
        OddPart::Square { p } => {
            let mut specs = Vec::new();
            for g in 1..*p {
                if numtheory::mult_order(g, *p)? == *p - 1 {
                    // (x - g)^2 = x^2 - 2g x + g^2
                    let c0 = (g * g) % *p;
                    let c1 = (2 * (*p - g)) % *p;
                    let poly = FpPoly::new(*p, vec![c0, c1, 1])?;
                    specs.push(FdgSpec::VPoly { poly });
                }
            }
            per_slot.push(specs);
        }
    }
    if per_slot.is_empty() {
        return Ok(vec![FdgSpec::M { m: 1, a: 0 }]);
    }
    // Cartesian product across slots.
    let mut combos: Vec<Vec<FdgSpec>> = vec![vec![]];
    for slot in per_slot {
        let mut next = Vec::with_capacity(combos.len() * slot.len());
        for combo in &combos {
            for spec in &slot {
                let mut c = combo.clone();
                c.push(spec.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    Ok(combos
        .into_iter()
        .map(|parts| {
            if parts.len() == 1 {
                parts.into_iter().next().expect("nonempty")
            } else {
                FdgSpec::Product(parts)
            }
        })
        .collect())
}

/// Underlying group order of one instance of a descriptor (smallest
/// member for families).
pub fn descriptor_min_order(kind: &DescriptorKind) -> u128 {
    descriptor_sort_key(kind).0
}

fn self_check_descriptor(
    d: &IsoClassDescriptor,
    rho: &Rho,
    max_order: u64,
) -> Result<(), Error> {
    let DescriptorKind::Finite { two_degrees, odd } = &d.kind else {
        return Ok(());
    };
    let sum: u32 = two_degrees.iter().sum();
    let order = (1u128 << sum) * odd.group_order() as u128;
    if order > max_order as u128 {
        return Ok(());
    }
    for spec in finite_instances(&d.kind)? {
        let map = crate::fdg::evaluate(&spec, max_order)?;
        let lambda = map.lambda()?;
        if lambda != rho.as_rat() {
            return Err(Error::domain(format!(
                "self-check failed: {spec} has lambda {lambda}, expected {rho}"
            )));
        }
    }
    Ok(())
}

/// Underlying abelian group type of a finite descriptor or family member.
pub fn descriptor_group(kind: &DescriptorKind, family_m: u32) -> Result<Option<AbelianGroupType>, Error> {
    let two_part = |degrees: &[u32]| -> Result<Option<AbelianPGroup>, Error> {
        let sum: u32 = degrees.iter().sum();
        if sum == 0 {
            Ok(None)
        } else {
            Ok(Some(AbelianPGroup::new(2, vec![1; sum as usize])?))
        }
    };
    match kind {
        DescriptorKind::Finite { two_degrees, odd } => {
            let mut parts = Vec::new();
            if let Some(pg) = two_part(two_degrees)? {
                parts.push(pg);
            }
            match odd {
                OddPart::None => {}
                OddPart::Elementary { p, m } => {
                    parts.push(AbelianPGroup::new(*p, vec![1; *m as usize])?)
                }
                OddPart::Cyclic { p, m } => parts.push(AbelianPGroup::new(*p, vec![*m])?),
                OddPart::Square { p } => parts.push(AbelianPGroup::new(*p, vec![1, 1])?),
            }
            Ok(Some(AbelianGroupType::new(parts)?))
        }
        DescriptorKind::CyclicFamily { two_degrees, p } => {
            let mut parts = Vec::new();
            if let Some(pg) = two_part(two_degrees)? {
                parts.push(pg);
            }
            parts.push(AbelianPGroup::new(*p, vec![family_m])?);
            Ok(Some(AbelianGroupType::new(parts)?))
        }
        DescriptorKind::SpecialTwo(class) => {
            let exps: Vec<u32> = match class {
                SpecialTwoClass::Z2Identity => vec![1],
                SpecialTwoClass::Z4Neg => vec![2],
                SpecialTwoClass::Z2xZ4 => vec![1, 2],
                SpecialTwoClass::Jordan2 => vec![1, 1],
                SpecialTwoClass::Jordan3 => vec![1, 1, 1],
            };
            Ok(Some(AbelianGroupType::new(vec![AbelianPGroup::new(2, exps)?])?))
        }
        DescriptorKind::Nonabelian(_) => Ok(None),
    }
}

/// Group-level classification: the finite abelian groups (plus, at 1/2,
/// the nonabelian families) whose best automorphism attains lambda = rho,
/// obtained by filtering classify_rho to the lambda-maximal descriptors.
pub fn classify_group_lambda(rho: Rho) -> Result<ClassificationResult, Error> {
    let full = classify_rho(rho)?;
    let descriptors: Vec<IsoClassDescriptor> = full
        .descriptors
        .into_iter()
        .filter(|d| d.lambda_maximal)
        .collect();
    let empty_reason = if descriptors.is_empty() {
        Some(
            full.empty_reason
                .unwrap_or_else(|| "no lambda-maximal shape attains this value".to_string()),
        )
    } else {
        None
    };
    Ok(ClassificationResult { rho, descriptors, empty_reason })
}

/// Classification mode for the elementary abelian special case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    GtHalf,
    EqHalf,
    GeHalf,
}

/// All elementary abelian classes of (Z/p)^n meeting the threshold:
/// primitive blocks (with the squared linear block at n = 2 for odd p,
/// and the unipotent boundary classes plus coprime squarefree products
/// for p = 2).
pub fn classify_elementary_abelian(
    p: u64,
    n: u32,
    mode: Threshold,
) -> Result<Vec<IsoClassDescriptor>, Error> {
    if !is_prime(p) || n == 0 {
        return Err(Error::domain("classify_elementary_abelian: bad parameters"));
    }
    let mut kinds: Vec<DescriptorKind> = Vec::new();
    let want = |lambda: &Rat| match mode {
        Threshold::GtHalf => *lambda > rat(1, 2),
        Threshold::EqHalf => *lambda == rat(1, 2),
        Threshold::GeHalf => *lambda >= rat(1, 2),
    };
    if p == 2 {
        match n {
            1 => {
                if want(&rat(1, 2)) {
                    kinds.push(DescriptorKind::SpecialTwo(SpecialTwoClass::Z2Identity));
                }
            }
            2 => {
                if want(&rat(1, 2)) {
                    kinds.push(DescriptorKind::SpecialTwo(SpecialTwoClass::Jordan2));
                }
            }
            3 => {
                if want(&rat(1, 2)) {
                    kinds.push(DescriptorKind::SpecialTwo(SpecialTwoClass::Jordan3));
                }
            }
            _ => {}
        }
        for decomp in coprime_decompositions(n) {
            if decomp.is_empty() {
                continue;
            }
            let lambda = decomp.iter().fold(rat(1, 1), |acc, &d| {
                acc * (rat(1, 1) - Rat::new(BigInt::from(1), BigInt::from(1u128 << d)))
            });
            if want(&lambda) {
                kinds.push(DescriptorKind::Finite { two_degrees: decomp, odd: OddPart::None });
            }
        }
    } else {
        let lambda_primitive = rat(1, 1) - Rat::new(BigInt::from(1), BigInt::from(p).pow(n));
        if want(&lambda_primitive) {
            kinds.push(DescriptorKind::Finite {
                two_degrees: vec![],
                odd: OddPart::Elementary { p, m: n },
            });
        }
        if n == 2 {
            let lambda_square = rat(1, 1) - rat_u64(1, p);
            if want(&lambda_square) {
                kinds.push(DescriptorKind::Finite {
                    two_degrees: vec![],
                    odd: OddPart::Square { p },
                });
            }
        }
    }
    let mut descriptors = kinds
        .into_iter()
        .map(build_descriptor)
        .collect::<Result<Vec<_>, _>>()?;
    descriptors.sort_by_key(|d| descriptor_sort_key(&d.kind));
    Ok(descriptors)
}

/// Description of all periodic affine maps with a full cycle on an
/// abelian group, when any exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineFullCycle {
    /// Cyclic group: any generator translation with a multiplier that is
    /// 1 mod every prime of the order (and 1 mod 4 when 4 divides it).
    Cyclic { order: u64 },
    /// Klein times odd cyclic: an order-2 automorphism on the Klein part
    /// with non-fixed translation coordinate, cyclic rules on the rest.
    KleinTimesCyclic { odd_order: u64 },
}

/// Returns the parametrized description of all full-cycle periodic affine
/// maps of G, or None when the group shape admits none.
pub fn affine_full_cycle_classify(
    group: &AbelianGroupType,
) -> Result<Option<AffineFullCycle>, Error> {
    let cyclic = group.parts().iter().all(|part| part.rank() == 1);
    if cyclic {
        return Ok(Some(AffineFullCycle::Cyclic { order: group.order()? }));
    }
    let two = group.sylow(2);
    let odd_cyclic = group
        .parts()
        .iter()
        .filter(|part| part.prime() != 2)
        .all(|part| part.rank() == 1);
    if let Some(two) = two {
        if two.exponents() == [1, 1] && odd_cyclic {
            let odd_order = group.order()? / 4;
            return Ok(Some(AffineFullCycle::KleinTimesCyclic { odd_order }));
        }
    }
    Ok(None)
}

/// Multipliers valid in a full-cycle affine map of Z/n: units that are
/// 1 mod every prime of n and 1 mod 4 when 4 | n.
pub fn full_cycle_multipliers(n: u64) -> Result<Vec<u64>, Error> {
    let primes: Vec<u64> = factor(n)?.primes().collect();
    Ok((0..n)
        .filter(|&a| {
            primes.iter().all(|&p| a % p == 1) && (n % 4 != 0 || a % 4 == 1)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::parse_group;

    fn degrees(kind: &DescriptorKind) -> Option<(Vec<u32>, &OddPart)> {
        match kind {
            DescriptorKind::Finite { two_degrees, odd } => Some((two_degrees.clone(), odd)),
            _ => None,
        }
    }

    #[test]
    fn rho_validation() {
        assert!(Rho::new(8, 15).is_ok());
        assert!(Rho::new(1, 3).is_err());
        assert!(Rho::new(2, 4).is_err());
        assert!(Rho::parse("3/4").is_ok());
        assert!(Rho::parse("5//4").is_err());
    }

    #[test]
    fn two_odd_primes_empty() {
        let r = classify_rho(Rho::new(8, 15).unwrap()).unwrap();
        assert!(r.descriptors.is_empty());
        assert!(r.empty_reason.as_deref().unwrap().contains("two distinct odd"));
    }

    #[test]
    fn rho_one_is_trivial() {
        let r = classify_rho(Rho::new(1, 1).unwrap()).unwrap();
        assert_eq!(r.descriptors.len(), 1);
        assert_eq!(r.descriptors[0].spec_template, "trivial");
        assert!(r.descriptors[0].lambda_maximal);
    }

    #[test]
    fn rho_half_has_ten_families() {
        let r = classify_rho(Rho::new(1, 2).unwrap()).unwrap();
        assert_eq!(r.descriptors.len(), 10);
        let special = r
            .descriptors
            .iter()
            .filter(|d| matches!(d.kind, DescriptorKind::SpecialTwo(_)))
            .count();
        let nonabelian = r
            .descriptors
            .iter()
            .filter(|d| matches!(d.kind, DescriptorKind::Nonabelian(_)))
            .count();
        let finite_mixed = r
            .descriptors
            .iter()
            .filter(|d| matches!(d.kind, DescriptorKind::Finite { .. }))
            .count();
        assert_eq!((special, nonabelian, finite_mixed), (5, 4, 1));
        // The abelian non-primary class is V(P2@2) x M(3,2).
        let mixed = r
            .descriptors
            .iter()
            .find(|d| matches!(d.kind, DescriptorKind::Finite { .. }))
            .unwrap();
        let (d, odd) = degrees(&mixed.kind).unwrap();
        assert_eq!(d, vec![2]);
        assert_eq!(*odd, OddPart::Elementary { p: 3, m: 1 });
        assert_eq!(mixed.witness_count, WitnessCount::Finite(BigInt::from(1u32)));
        assert!(mixed.lambda_maximal);
        // Maximality flags across the ten.
        for desc in &r.descriptors {
            let expect = !matches!(
                desc.kind,
                DescriptorKind::SpecialTwo(SpecialTwoClass::Jordan2)
                    | DescriptorKind::SpecialTwo(SpecialTwoClass::Jordan3)
            );
            assert_eq!(desc.lambda_maximal, expect, "{:?}", desc.kind);
        }
    }

    #[test]
    fn rho_three_quarters() {
        let r = classify_rho(Rho::new(3, 4).unwrap()).unwrap();
        // Three descriptor groups: V(P2), V(P3)xM(7,g), V(P4)xM(5,g).
        assert_eq!(r.descriptors.len(), 3);
        let shapes: Vec<(Vec<u32>, OddPart)> = r
            .descriptors
            .iter()
            .filter_map(|d| degrees(&d.kind).map(|(v, o)| (v, o.clone())))
            .collect();
        assert!(shapes.contains(&(vec![2], OddPart::None)));
        assert!(shapes.contains(&(vec![3], OddPart::Elementary { p: 7, m: 1 })));
        assert!(shapes.contains(&(vec![4], OddPart::Elementary { p: 5, m: 1 })));
        // Witness counts: 1; 2*phi(6)=2*2; 2*phi(4)=2*2.
        let count_of = |deg: &[u32]| {
            r.descriptors
                .iter()
                .find(|d| degrees(&d.kind).map(|(v, _)| v) == Some(deg.to_vec()))
                .map(|d| d.witness_count.clone())
                .unwrap()
        };
        assert_eq!(count_of(&[2]), WitnessCount::Finite(BigInt::from(1u32)));
        assert_eq!(count_of(&[3]), WitnessCount::Finite(BigInt::from(4u32)));
        assert_eq!(count_of(&[4]), WitnessCount::Finite(BigInt::from(4u32)));
    }

    #[test]
    fn rho_two_thirds() {
        let r = classify_rho(Rho::new(2, 3).unwrap()).unwrap();
        // Case A: cyclic family + M(3,g) m=1 + the squared block, plus
        // the non-primary V(P2@2) x V(Q2@3).
        assert_eq!(r.descriptors.len(), 4, "{:?}", r.descriptors);
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::CyclicFamily { ref two_degrees, p: 3 } if two_degrees.is_empty()
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Elementary { p: 3, m: 1 } }
                if two_degrees.is_empty()
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Square { p: 3 } }
                if two_degrees.is_empty()
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Elementary { p: 3, m: 2 } }
                if two_degrees == &vec![2]
        )));
    }

    #[test]
    fn rho_seven_twelfths() {
        let r = classify_rho(Rho::new(7, 12).unwrap()).unwrap();
        // V(P3) x M(3,2); V(P2) x V(P3) x V(Q2@3); the m >= 2 cyclic
        // family V(P3) x M(3^m, g); and V(P3) x V((x-g)^2@3).
        assert_eq!(r.descriptors.len(), 4, "{:#?}", r.descriptors);
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Elementary { p: 3, m: 1 } }
                if two_degrees == &vec![3]
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Elementary { p: 3, m: 2 } }
                if two_degrees == &vec![2, 3]
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::CyclicFamily { ref two_degrees, p: 3 } if two_degrees == &vec![3]
        )));
        assert!(r.descriptors.iter().any(|d| matches!(
            d.kind,
            DescriptorKind::Finite { ref two_degrees, odd: OddPart::Square { p: 3 } }
                if two_degrees == &vec![3]
        )));
    }

    #[test]
    fn rho_fifteen_sixteenths() {
        let r = classify_rho(Rho::new(15, 16).unwrap()).unwrap();
        // V(P4); V(P5) x M(31,g); V(P8) x M(17,g).
        assert_eq!(r.descriptors.len(), 3, "{:#?}", r.descriptors);
        let group = classify_group_lambda(Rho::new(15, 16).unwrap()).unwrap();
        // All three shapes are lambda-maximal here.
        assert_eq!(group.descriptors.len(), 3);
        let pure2 = group
            .descriptors
            .iter()
            .find(|d| matches!(d.kind, DescriptorKind::Finite { ref two_degrees, odd: OddPart::None } if two_degrees == &vec![4]))
            .unwrap();
        assert_eq!(pure2.witness_count, WitnessCount::Finite(BigInt::from(2u32)));
    }

    #[test]
    fn maximality_examples() {
        // Single primitive block: maximal.
        assert!(is_lambda_maximal_kind(&DescriptorKind::Finite {
            two_degrees: vec![4],
            odd: OddPart::None
        })
        .unwrap());
        // Multiple blocks: not maximal.
        assert!(!is_lambda_maximal_kind(&DescriptorKind::Finite {
            two_degrees: vec![2, 3],
            odd: OddPart::None
        })
        .unwrap());
        // The squared linear block alone: not maximal (the primitive
        // degree-2 class on the same group beats it).
        assert!(!is_lambda_maximal_kind(&DescriptorKind::Finite {
            two_degrees: vec![],
            odd: OddPart::Square { p: 3 }
        })
        .unwrap());
        // V(P3) x V((x-g)^2@3): not maximal (7 * 8 > 7 * 6 on the group).
        assert!(!is_lambda_maximal_kind(&DescriptorKind::Finite {
            two_degrees: vec![3],
            odd: OddPart::Square { p: 3 }
        })
        .unwrap());
        // V(P3) x M(3^m, g): family is maximal.
        assert!(is_lambda_maximal_kind(&DescriptorKind::CyclicFamily {
            two_degrees: vec![3],
            p: 3
        })
        .unwrap());
        // V(P2)xV(P3)xV(Q2@3): not maximal (V(P5) with L = 8: 31*8 > 21*8).
        assert!(!is_lambda_maximal_kind(&DescriptorKind::Finite {
            two_degrees: vec![2, 3],
            odd: OddPart::Elementary { p: 3, m: 2 }
        })
        .unwrap());
    }

    #[test]
    fn elementary_abelian_examples() {
        // (3, 2, gt_half): primitive degree-2 classes + the squared block.
        let r = classify_elementary_abelian(3, 2, Threshold::GtHalf).unwrap();
        assert_eq!(r.len(), 2);
        let counts: Vec<WitnessCount> = r.iter().map(|d| d.witness_count.clone()).collect();
        // phi(8)/2 = 2 primitive polynomials; one generator of F_3^*.
        assert!(counts.contains(&WitnessCount::Finite(BigInt::from(2u32))));
        assert!(counts.contains(&WitnessCount::Finite(BigInt::from(1u32))));
        // (2, 2, eq_half): the unipotent block only.
        let r = classify_elementary_abelian(2, 2, Threshold::EqHalf).unwrap();
        assert_eq!(r.len(), 1);
        assert!(matches!(
            r[0].kind,
            DescriptorKind::SpecialTwo(SpecialTwoClass::Jordan2)
        ));
        // (2, 5, gt_half): Frobenius types (5) and (2,3).
        let r = classify_elementary_abelian(2, 5, Threshold::GtHalf).unwrap();
        let types: Vec<Vec<u32>> = r
            .iter()
            .filter_map(|d| degrees(&d.kind).map(|(v, _)| v))
            .collect();
        assert_eq!(types.len(), 2);
        assert!(types.contains(&vec![5]));
        assert!(types.contains(&vec![2, 3]));
    }

    #[test]
    fn affine_full_cycle_examples() {
        // Z/9: multipliers 1, 4, 7.
        let g = parse_group("Z9").unwrap();
        assert_eq!(
            affine_full_cycle_classify(&g).unwrap(),
            Some(AffineFullCycle::Cyclic { order: 9 })
        );
        assert_eq!(full_cycle_multipliers(9).unwrap(), vec![1, 4, 7]);
        // (Z/2)^2: the Klein shape.
        let g = parse_group("Z2^2").unwrap();
        assert_eq!(
            affine_full_cycle_classify(&g).unwrap(),
            Some(AffineFullCycle::KleinTimesCyclic { odd_order: 1 })
        );
        // Z/3 x Z/3: none.
        let g = parse_group("Z3^2").unwrap();
        assert_eq!(affine_full_cycle_classify(&g).unwrap(), None);
    }

    #[test]
    fn sampled_two_odd_prime_denominators_all_empty() {
        let mut count = 0;
        for b in (3..400u64).step_by(2) {
            let f = factor(b).unwrap();
            if f.pairs().iter().filter(|&&(p, _)| p != 2).count() < 2 {
                continue;
            }
            let a = (b + 1) / 2 + 1;
            let a = (a..b).find(|&x| gcd(x, b) == 1 && 2 * x >= b).unwrap();
            let r = classify_rho(Rho::new(a, b).unwrap()).unwrap();
            assert!(r.descriptors.is_empty(), "rho = {a}/{b}");
            count += 1;
            if count >= 20 {
                break;
            }
        }
        assert_eq!(count, 20);
    }
}
