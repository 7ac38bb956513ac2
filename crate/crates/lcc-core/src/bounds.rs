//! Certified rational interval bounds: the two spectral gap constants
//! above 1/2 and 3/4, the infinite-product lower bounds they rest on, and
//! a symbolic scan confirming that no classified lambda shape lands in
//! either gap.
//!
//! Every bound is outward rounded in exact rational arithmetic; no
//! floating point appears anywhere. Decimal digit checks compare interval
//! endpoints against exact decimal fractions.

use crate::error::Error;
use crate::ffpoly::{first_primitive, FpPoly};
use crate::numtheory::{self, mult_order};
use crate::{rat, rat_u64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A closed interval with exact rational endpoints; the certified
/// quantity provably lies inside.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RationalInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Product of intervals with nonnegative endpoints.
    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RationalInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn scale(&self, k: &Rat) -> RationalInterval {
        assert!(!k.is_negative());
        RationalInterval { lo: &self.lo * k, hi: &self.hi * k }
    }

    /// True when every point of the interval starts with the given decimal
    /// digits: `pins_decimal("0.504307524")` means the interval lies
    /// inside [0.504307524, 0.504307525).
    pub fn pins_decimal(&self, digits: &str) -> bool {
        let (value, ulp) = match parse_decimal(digits) {
            Some(pair) => pair,
            None => return false,
        };
        self.lo >= value && self.hi < value + ulp
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// "0.504307524" -> (the exact fraction, one unit in the last place).
pub fn parse_decimal(s: &str) -> Option<(Rat, Rat)> {
    let (int_part, frac_part) = s.split_once('.')?;
    let int_val: u64 = int_part.parse().ok()?;
    let k = frac_part.len() as u32;
    let den = BigInt::from(10u32).pow(k);
    let frac_val: BigInt = frac_part.parse().ok()?;
    let value = Rat::from(BigInt::from(int_val)) + Rat::new(frac_val, den.clone());
    Some((value, Rat::new(BigInt::one(), den)))
}

/// `2^-k` as an exact rational.
pub fn two_pow_neg(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// `1 - 2^-k`.
pub fn one_minus_two_pow_neg(k: u32) -> Rat {
    rat(1, 1) - two_pow_neg(k)
}

/// Certified bounds on `exp(-x)` for rational `x >= 0` by alternating
/// Taylor truncation; arguments above 1 are halved and the result squared
/// so the alternating-series error bound applies directly.
pub fn exp_neg_interval(x: &Rat) -> RationalInterval {
    assert!(!x.is_negative());
    if x.is_zero() {
        return RationalInterval::point(rat(1, 1));
    }
    if x > &rat(1, 1) {
        let half = exp_neg_interval(&(x / rat(2, 1)));
        return half.mul(&half);
    }
    // 0 < x <= 1: terms x^k/k! strictly decrease, so partial sums ending
    // in an even index overshoot and odd ones undershoot.
    let mut term = rat(1, 1);
    let mut even_sum = rat(1, 1); // k = 0
    let mut odd_sum = rat(0, 1);
    let mut k = 0u32;
    loop {
        k += 1;
        term = term * x / Rat::from(BigInt::from(k));
        if k % 2 == 1 {
            odd_sum = &even_sum - &term;
        } else {
            even_sum = &odd_sum + &term;
        }
        if k >= 2
            && (&even_sum - &odd_sum) < Rat::new(BigInt::one(), BigInt::from(10u64.pow(12)))
        {
            break;
        }
        assert!(k < 200, "alternating series failed to converge");
    }
    RationalInterval::new(odd_sum, even_sum)
}

/// Certified interval for the tail product `prod_{n >= m} (1 - 2^-n)`:
/// lower endpoint a rational lower bound of `exp(-2^-(m-2))`, upper
/// endpoint 1.
pub fn tail_bounds(m: u32) -> RationalInterval {
    let x = if m >= 2 { two_pow_neg(m - 2) } else { rat(2, 1) };
    let e = exp_neg_interval(&x);
    RationalInterval::new(e.lo, rat(1, 1))
}

const PRIMES_TO_37: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `prod (1 - 2^-p)` over primes `lo_prime <= p <= 37`, exactly.
fn prime_product_to_37(lo_prime: u32) -> Rat {
    PRIMES_TO_37
        .iter()
        .filter(|&&p| p >= lo_prime)
        .fold(rat(1, 1), |acc, &p| acc * one_minus_two_pow_neg(p))
}

/// Interval for `prod (1 - 2^-p)` over all primes `p >= lo_prime`
/// (lo_prime <= 37): exact finite part up to 37; the tail over primes
/// past 37 is a subproduct of `prod_{n >= 41} (1 - 2^-n)`, bounded below
/// by `exp(-2^-39)`.
fn prime_product_interval(lo_prime: u32) -> RationalInterval {
    let finite = prime_product_to_37(lo_prime);
    let tail = tail_bounds(41);
    RationalInterval::new(&finite * &tail.lo, finite)
}

/// The first gap constant `(4/5) prod_p (1 - 2^-p)`, with width < 10^-9.
pub fn rho0() -> RationalInterval {
    prime_product_interval(2).scale(&rat(4, 5))
}

/// The second gap constant
/// `(8/9) (1-2^-3)(1-2^-5)(1-2^-8)(1-2^-49) prod_{p >= 11} (1 - 2^-p)`.
pub fn rho1() -> RationalInterval {
    let fixed = [3u32, 5, 8, 49]
        .iter()
        .fold(rat(8, 9), |acc, &n| acc * one_minus_two_pow_neg(n));
    prime_product_interval(11).scale(&fixed)
}

/// One certified lower-bound item: the interval for the bound expression
/// and the verdict of its associated numeric check.
#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub interval: RationalInterval,
    pub verified: bool,
}

/// Re-derives the eight lower bounds on lambda values of elementary
/// abelian 2-FDGs with certified interval arithmetic.
///
/// Bounds with printed decimal thresholds are checked against them
/// directly; the remaining ones are checked through the exact composed
/// inequalities the gap argument extracts from them (scaling by the
/// relevant odd factor and comparing with the contradiction threshold).
pub fn anlem_certify() -> Vec<BoundCheck> {
    let mut out = Vec::new();
    let in_unit = |iv: &RationalInterval| iv.lo > rat(0, 1) && iv.hi < rat(1, 1);
    let dec = |s: &str| parse_decimal(s).expect("static decimal").0;

    // (1) prod_p (1 - 2^-p) > 0.63038 > 9/16; consistent with rho0.
    let b1 = prime_product_interval(2);
    let v1 = b1.lo > dec("0.63038")
        && dec("0.63038") > rat(9, 16)
        && b1.scale(&rat(4, 5)).intersects(&rho0())
        && in_unit(&b1);
    out.push(BoundCheck {
        id: "an1",
        description: "prod over all primes of (1-2^-p) exceeds 0.63038 and 9/16",
        interval: b1,
        verified: v1,
    });

    // (2) (1-2^-4) prod_{p>=3} > 0.78797.
    let b2 = prime_product_interval(3).scale(&one_minus_two_pow_neg(4));
    let v2 = b2.lo > dec("0.78797") && in_unit(&b2);
    out.push(BoundCheck {
        id: "an2",
        description: "(1-2^-4) prod_{p>=3} exceeds 0.78797",
        interval: b2,
        verified: v2,
    });

    // (3) (1-2^-6) prod_{p>=5}; internal step (1-2^-8)(1-2^-9) > 1-2^-6;
    // composed use: 4/5 of it exceeds 0.755.
    let b3 = prime_product_interval(5).scale(&one_minus_two_pow_neg(6));
    let step3 =
        one_minus_two_pow_neg(8) * one_minus_two_pow_neg(9) > one_minus_two_pow_neg(6);
    let v3 = step3 && b3.scale(&rat(4, 5)).lo > dec("0.755") && in_unit(&b3);
    out.push(BoundCheck {
        id: "an3",
        description: "(1-2^-6) prod_{p>=5}; scaled by 4/5 exceeds 0.755",
        interval: b3,
        verified: v3,
    });

    // (4) (1-2^-4)(1-2^-9) prod_{p>=5}; scaled by 6/7 exceeds 0.76.
    let b4 = prime_product_interval(5)
        .scale(&(one_minus_two_pow_neg(4) * one_minus_two_pow_neg(9)));
    let v4 = b4.scale(&rat(6, 7)).lo > dec("0.76") && in_unit(&b4);
    out.push(BoundCheck {
        id: "an4",
        description: "(1-2^-4)(1-2^-9) prod_{p>=5}; scaled by 6/7 exceeds 0.76",
        interval: b4,
        verified: v4,
    });

    // (5) (1-2^-3)(1-2^-8)(1-2^-25) prod_{p>=7}; by 8/9 exceeds 0.76.
    let fixed5 = [3u32, 8, 25]
        .iter()
        .fold(rat(1, 1), |acc, &n| acc * one_minus_two_pow_neg(n));
    let b5 = prime_product_interval(7).scale(&fixed5);
    let v5 = b5.scale(&rat(8, 9)).lo > dec("0.76") && in_unit(&b5);
    out.push(BoundCheck {
        id: "an5",
        description: "(1-2^-3)(1-2^-8)(1-2^-25) prod_{p>=7}; scaled by 8/9 exceeds 0.76",
        interval: b5,
        verified: v5,
    });

    // (6) (1-2^-3)(1-2^-5)(1-2^-8)(1-2^-49) prod_{p>=11}: 8/9 of it is the
    // second gap constant.
    let fixed6 = [3u32, 5, 8, 49]
        .iter()
        .fold(rat(1, 1), |acc, &n| acc * one_minus_two_pow_neg(n));
    let b6 = prime_product_interval(11).scale(&fixed6);
    let scaled = b6.scale(&rat(8, 9));
    let v6 = scaled.intersects(&rho1()) && scaled.lo > dec("0.750063685") && in_unit(&b6);
    out.push(BoundCheck {
        id: "an6",
        description: "prod_{n=3,5,8,49} x prod_{p>=11}; 8/9 of it pins the upper gap constant",
        interval: b6,
        verified: v6,
    });

    // (7) (1-2^-8) prod_{p>=3}; scaled by 10/11 exceeds 0.76.
    let b7 = prime_product_interval(3).scale(&one_minus_two_pow_neg(8));
    let v7 = b7.scale(&rat(10, 11)).lo > dec("0.76") && in_unit(&b7);
    out.push(BoundCheck {
        id: "an7",
        description: "(1-2^-8) prod_{p>=3}; scaled by 10/11 exceeds 0.76",
        interval: b7,
        verified: v7,
    });

    // (8) (1-2^-3)(1-2^-4)(1-2^-25) prod_{p>=7}; by 12/13 exceeds 0.7505.
    let fixed8 = [3u32, 4, 25]
        .iter()
        .fold(rat(1, 1), |acc, &n| acc * one_minus_two_pow_neg(n));
    let b8 = prime_product_interval(7).scale(&fixed8);
    let v8 = b8.scale(&rat(12, 13)).lo > dec("0.7505") && in_unit(&b8);
    out.push(BoundCheck {
        id: "an8",
        description: "(1-2^-3)(1-2^-4)(1-2^-25) prod_{p>=7}; scaled by 12/13 exceeds 0.7505",
        interval: b8,
        verified: v8,
    });

    out
}

/// A lambda value of a classified shape that landed inside a gap.
#[derive(Debug, Clone)]
pub struct GapViolation {
    pub lambda: Rat,
    pub two_degrees: Vec<u32>,
    pub odd_prime_power: Option<u64>,
}

/// Scans every lambda value achievable by the classified shapes whose
/// unreduced denominator `2^(sum d_i) * q` stays below `2^denom_log2`,
/// returning those in `(gap_lo, gap_hi]`. Empty output certifies the gap
/// at this scale.
///
/// Shapes are enumerated symbolically: pairwise coprime degree sets for
/// the 2-part with an optional odd prime-power factor `1 - 1/q`, kept
/// only when the cycle lengths can be made coprime.
pub fn gap_scan(gap_lo: &Rat, gap_hi: &Rat, denom_log2: u32) -> Vec<GapViolation> {
    let mut violations = Vec::new();
    let max_sum = denom_log2.min(62);
    // Pure odd shapes: lambda = 1 - 1/q for odd prime powers q.
    if gap_lo < &rat(1, 1) && gap_hi < &rat(1, 1) {
        let q_lo = rat(1, 1) / (rat(1, 1) - gap_lo.clone());
        let q_hi = rat(1, 1) / (rat(1, 1) - gap_hi.clone());
        for q in odd_prime_powers_in(&q_lo, &q_hi, 1u128 << denom_log2) {
            let lambda = rat(1, 1) - rat_u64(1, q);
            if &lambda > gap_lo && &lambda <= gap_hi {
                violations.push(GapViolation {
                    lambda,
                    two_degrees: vec![],
                    odd_prime_power: Some(q),
                });
            }
        }
    }
    // 2-part shapes: DFS over pairwise coprime degree sets.
    let mut stack: Vec<(Vec<u32>, u32, Rat, u128)> = vec![(vec![], 0, rat(1, 1), 1)];
    while let Some((degrees, sum, lambda2, big2)) = stack.pop() {
        if !degrees.is_empty() {
            scan_one_shape(
                &degrees, sum, &lambda2, big2, gap_lo, gap_hi, denom_log2, &mut violations,
            );
        }
        let next_start = degrees.last().map_or(2, |&d| d + 1);
        let room = max_sum.saturating_sub(sum);
        for d in next_start..=room {
            if degrees.iter().all(|&e| numtheory::gcd(d as u64, e as u64) == 1) {
                let mut nd = degrees.clone();
                nd.push(d);
                stack.push((
                    nd,
                    sum + d,
                    lambda2.clone() * one_minus_two_pow_neg(d),
                    big2 * ((1u128 << d) - 1),
                ));
            }
        }
    }
    violations.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    violations
}

#[allow(clippy::too_many_arguments)]
fn scan_one_shape(
    degrees: &[u32],
    sum: u32,
    lambda2: &Rat,
    big2: u128,
    gap_lo: &Rat,
    gap_hi: &Rat,
    denom_log2: u32,
    violations: &mut Vec<GapViolation>,
) {
    // The pure 2-part value itself.
    if lambda2 > gap_lo && lambda2 <= gap_hi {
        violations.push(GapViolation {
            lambda: lambda2.clone(),
            two_degrees: degrees.to_vec(),
            odd_prime_power: None,
        });
    }
    // Odd attachments lambda2 (1 - 1/q). They can only reach above gap_lo
    // when lambda2 > gap_lo, and the q range is bounded once lambda2 >
    // gap_hi; a lambda2 inside the gap was already recorded above.
    if lambda2 <= gap_lo || lambda2 <= gap_hi {
        return;
    }
    let q_lo = rat(1, 1) / (rat(1, 1) - gap_lo / lambda2);
    let q_hi = rat(1, 1) / (rat(1, 1) - gap_hi / lambda2);
    let budget = (1u128 << denom_log2) >> sum;
    for q in odd_prime_powers_in(&q_lo, &q_hi, budget) {
        let lambda = lambda2.clone() * (rat(1, 1) - rat_u64(1, q));
        if &lambda > gap_lo && &lambda <= gap_hi {
            // Every odd part of value 1 - 1/q has cycle length divisible
            // by q - 1, and the elementary abelian block of order q
            // achieves exactly q - 1, so coprimality with the 2-part
            // cycle length decides achievability.
            if coprime_u128(big2, (q - 1) as u128) {
                violations.push(GapViolation {
                    lambda,
                    two_degrees: degrees.to_vec(),
                    odd_prime_power: Some(q),
                });
            }
        }
    }
}

fn coprime_u128(a: u128, b: u128) -> bool {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a == 1
}

/// Odd prime powers q with `q_lo < q <= min(q_hi, budget)`.
fn odd_prime_powers_in(q_lo: &Rat, q_hi: &Rat, budget: u128) -> Vec<u64> {
    if q_hi < q_lo {
        return Vec::new();
    }
    let hi_int = rat_floor(q_hi).min(budget.min(u64::MAX as u128) as i128);
    // The certified lower bounds on 2-part lambda values keep these
    // ranges tiny; a huge range would signal a shape contradicting them.
    assert!(
        hi_int < 4_000_000,
        "gap scan: odd factor range unexpectedly large ({hi_int})"
    );
    let mut out = Vec::new();
    let mut q: i128 = 3;
    while q <= hi_int {
        if Rat::from(BigInt::from(q)) > *q_lo {
            let (p, _) = prime_power_split(q as u64);
            if p > 2 {
                out.push(q as u64);
            }
        }
        q += 2;
    }
    out
}

fn rat_floor(r: &Rat) -> i128 {
    let f = r.floor();
    let v = f.numer() / f.denom();
    i128::try_from(v).unwrap_or(i128::MAX)
}

/// Splits a prime power q = p^m; returns (0, 0) when q is not one.
pub fn prime_power_split(q: u64) -> (u64, u32) {
    if q < 2 {
        return (0, 0);
    }
    match numtheory::factor(q) {
        Ok(f) if f.pairs().len() == 1 => f.pairs()[0],
        _ => (0, 0),
    }
}

/// One term of the increasing lambda sequence approaching a base value.
#[derive(Debug, Clone)]
pub struct LimitTerm {
    pub degree: u32,
    pub lambda: Rat,
    pub witness: FpPoly,
}

/// Builds the sequence `lambda_n = rho (1 - 2^-(n o + 1))` increasing to
/// the base FDG's lambda value from below. The step `o` is the lcm of
/// the multiplicative orders of 2 modulo the odd primes of the base's
/// largest cycle length and of its group order, which keeps
/// `2^(n o + 1) - 1` coprime to the base cycle length; each term carries
/// a primitive polynomial witness of the matching degree.
pub fn limit_sequence(spec: &crate::fdg::FdgSpec, n_max: u32) -> Result<Vec<LimitTerm>, Error> {
    let map = crate::fdg::evaluate(spec, 10_000)?;
    let cs = map.cycle_structure()?;
    let rho = cs.lambda();
    let big = cs.lambda_big();
    let size = map.size();
    let mut odd_primes: Vec<u64> = Vec::new();
    for source in [big, size] {
        for p in numtheory::factor(source)?.primes() {
            if p % 2 == 1 && !odd_primes.contains(&p) {
                odd_primes.push(p);
            }
        }
    }
    let mut o = 1u64;
    for p in odd_primes {
        o = numtheory::lcm(o, mult_order(2, p)?);
    }
    let mut out = Vec::new();
    let mut prev = rat(0, 1);
    for n in 1..=n_max as u64 {
        let degree = n * o + 1;
        if degree > 62 {
            return Err(Error::capacity("limit_sequence: degree exceeds capacity"));
        }
        let degree = degree as u32;
        let witness = first_primitive(2, degree)?;
        debug_assert!(witness.is_primitive()?);
        let lambda = rho.clone() * one_minus_two_pow_neg(degree);
        assert!(lambda > prev && lambda < rho);
        prev = lambda.clone();
        out.push(LimitTerm { degree, lambda, witness });
    }
    Ok(out)
}
