//! Exact integer number theory: factorization, totients, multiplicative
//! orders, primitive roots, and full-divisor sets.
//!
//! Everything here is deterministic and exact. The supported input range is
//! the full `u64` range (capacity limit [`FACTOR_LIMIT`]); intermediate
//! products are carried in `u128`, so no operation can silently wrap.

use crate::error::Error;

/// Largest integer this module will factor. Inputs above it produce
/// [`Error::Capacity`], never a silent wrap.
pub const FACTOR_LIMIT: u64 = u64::MAX;

/// Bound for the deterministic trial-division stage of [`factor`].
const TRIAL_BOUND: u64 = 1_000_000;

/// A prime factorization: pairs `(prime, exponent)` with strictly
/// increasing primes and all exponents at least 1. The empty list is the
/// factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// The `(prime, exponent)` pairs, ascending by prime.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// The primes only, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factorization back together.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// The exponent of `p`, or 0 when `p` does not divide the value.
    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Every divisor of the value, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1u64;
                for _ in 0..=e {
                    next.push(d * pk);
                    if pk <= u64::MAX / p {
                        pk *= p;
                    }
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

/// The set of full divisors of `base`: divisors `t` that carry the complete
/// prime-power multiplicity of each of their primes. 1 is always a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullDivisorSet {
    pub base: u64,
    pub divisors: Vec<u64>,
}

/// `(a * b) mod n` without overflow.
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a^e mod n` by binary exponentiation. `n` must be nonzero.
pub fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Deterministic Miller-Rabin, valid for every `u64`.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is a proven
/// witness set below 3.3 * 10^24, which covers the whole input range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One round of Brent's cycle-finding variant of the rho method. Returns a
/// nontrivial factor of the odd composite `n`. The polynomial offset is
/// varied deterministically, so the whole pipeline is reproducible.
fn rho_factor(n: u64) -> u64 {
    debug_assert!(n > 3 && !is_prime(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Exact prime factorization of `n >= 1`.
///
/// Trial division up to 10^6, then rho splitting with Miller-Rabin
/// certification of every remaining part. `n = 0` is a domain error.
pub fn factor(n: u64) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::domain("factor: argument must be positive"));
    }
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let push = |p: u64, e: u32, pairs: &mut Vec<(u64, u32)>| {
        pairs.push((p, e));
    };
    for p in std::iter::once(2u64).chain((3..=TRIAL_BOUND).step_by(2)) {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            push(p, e, &mut pairs);
        }
    }
    // m is now 1, prime, or a composite with no factor below 10^6.
    let mut stack = Vec::new();
    if m > 1 {
        stack.push(m);
    }
    let mut large: Vec<u64> = Vec::new();
    while let Some(v) = stack.pop() {
        if is_prime(v) {
            large.push(v);
        } else {
            let d = rho_factor(v);
            stack.push(d);
            stack.push(v / d);
        }
    }
    large.sort_unstable();
    let mut i = 0;
    while i < large.len() {
        let p = large[i];
        let mut e = 0;
        while i < large.len() && large[i] == p {
            e += 1;
            i += 1;
        }
        push(p, e, &mut pairs);
    }
    pairs.sort_unstable();
    debug_assert_eq!(Factorization { pairs: pairs.clone() }.value(), n);
    Ok(Factorization { pairs })
}

/// Euler's totient, computed from the factorization of `n`.
pub fn euler_phi(n: u64) -> Result<u64, Error> {
    let f = factor(n)?;
    let mut phi = 1u64;
    for &(p, e) in f.pairs() {
        phi *= p.pow(e - 1) * (p - 1);
    }
    Ok(phi)
}

/// Least `k >= 1` with `a^k = 1 (mod n)`. Requires `gcd(a, n) = 1`.
///
/// Starts from `phi(n)` and strips prime factors, so no naive iteration.
pub fn mult_order(a: u64, n: u64) -> Result<u64, Error> {
    if n == 0 {
        return Err(Error::domain("mult_order: modulus must be positive"));
    }
    if n == 1 {
        return Ok(1);
    }
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(Error::domain(format!(
            "mult_order: gcd({a}, {n}) != 1"
        )));
    }
    let mut ord = euler_phi(n)?;
    for p in factor(ord)?.primes() {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// All primitive roots modulo `p^m`, ascending.
///
/// Defined for odd primes `p` and for the moduli 2 and 4 (with the usual
/// conventions: {1} mod 2 and {3} mod 4). Other even prime powers have no
/// primitive root and are a domain error.
pub fn primitive_roots(p: u64, m: u32) -> Result<Vec<u64>, Error> {
    let q = p
        .checked_pow(m)
        .ok_or_else(|| Error::capacity("primitive_roots: p^m exceeds u64"))?;
    if p == 2 {
        return match q {
            2 => Ok(vec![1]),
            4 => Ok(vec![3]),
            _ => Err(Error::domain(
                "primitive_roots: modulus 2^m with m > 2 has no primitive root",
            )),
        };
    }
    if !is_prime(p) {
        return Err(Error::domain("primitive_roots: p must be prime"));
    }
    let phi = euler_phi(q)?;
    // Find one primitive root by scanning, then take the coprime powers.
    let mut g0 = 0;
    for g in 2..q {
        if g % p == 0 {
            continue;
        }
        if mult_order(g, q)? == phi {
            g0 = g;
            break;
        }
    }
    debug_assert!(g0 != 0, "odd prime powers always have a primitive root");
    let mut roots = Vec::new();
    let mut power = g0 % q;
    for k in 1..=phi {
        if gcd(k, phi) == 1 {
            roots.push(power);
        }
        power = mul_mod(power, g0, q);
    }
    roots.sort_unstable();
    Ok(roots)
}

/// All full divisors of `n`: products of the complete prime powers
/// `p^(v_p(n))` over subsets of the primes of `n`. Sorted ascending.
pub fn full_divisors(n: u64) -> Result<FullDivisorSet, Error> {
    let f = factor(n)?;
    let mut divisors = vec![1u64];
    for &(p, e) in f.pairs() {
        let pk = p.pow(e);
        let mut next = divisors.clone();
        next.extend(divisors.iter().map(|&d| d * pk));
        divisors = next;
    }
    divisors.sort_unstable();
    Ok(FullDivisorSet { base: n, divisors })
}

/// Full divisors `t` of `n` such that `t + 1` is a power of two.
pub fn t0_set(n: u64) -> Result<FullDivisorSet, Error> {
    let mut fd = full_divisors(n)?;
    fd.divisors.retain(|&t| (t + 1).is_power_of_two());
    Ok(fd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Trial-division oracle, independent of the rho path.
    fn factor_naive(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1).unwrap().pairs(), &[]);
        assert_eq!(factor(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        // 2047 = 2^11 - 1; expected value frozen from the trial oracle.
        assert_eq!(factor_naive(2047), vec![(23, 1), (89, 1)]);
        assert_eq!(factor(2047).unwrap().pairs(), &[(23, 1), (89, 1)]);
        assert!(factor(0).is_err());
    }

    #[test]
    fn factor_mersenne_range() {
        // All inputs the rest of the crate cares about: 2^d - 1 for d <= 60.
        for d in 1..=60u32 {
            let n = (1u64 << d) - 1;
            let f = factor(n).unwrap();
            assert_eq!(f.value(), n, "2^{d}-1");
            for &(p, _) in f.pairs() {
                assert!(is_prime(p));
            }
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(9).unwrap(), 6); // 3^2: 3^(2-1) * (3-1)
        assert_eq!(euler_phi(1).unwrap(), 1);
        // Direct unit count mod 15.
        let direct = (1..15).filter(|&a| gcd(a, 15) == 1).count() as u64;
        assert_eq!(direct, 8);
        assert_eq!(euler_phi(15).unwrap(), 8);
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(1, 17).unwrap(), 1);
        assert_eq!(mult_order(2, 3).unwrap(), 2);
        // Direct powering oracle: 2^1=2, 2^2=4, 2^3=1 mod 7.
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn primitive_roots_examples() {
        assert_eq!(primitive_roots(2, 2).unwrap(), vec![3]);
        assert_eq!(primitive_roots(2, 1).unwrap(), vec![1]);
        assert!(primitive_roots(2, 3).is_err());
        // Order check of all units mod 9 and mod 7.
        let by_scan = |q: u64| -> Vec<u64> {
            let phi = euler_phi(q).unwrap();
            (1..q)
                .filter(|&g| gcd(g, q) == 1 && mult_order(g, q).unwrap() == phi)
                .collect()
        };
        assert_eq!(by_scan(9), vec![2, 5]);
        assert_eq!(primitive_roots(3, 2).unwrap(), vec![2, 5]);
        assert_eq!(by_scan(7), vec![3, 5]);
        assert_eq!(primitive_roots(7, 1).unwrap(), vec![3, 5]);
    }

    #[test]
    fn full_divisor_examples() {
        assert_eq!(t0_set(1).unwrap().divisors, vec![1]);
        // Definition check over divisors of 12: 1,3,4,12 carry full multiplicity.
        assert_eq!(full_divisors(12).unwrap().divisors, vec![1, 3, 4, 12]);
        // T(21) = {1,3,7,21}; 21+1 = 22 is not a power of two.
        assert_eq!(t0_set(21).unwrap().divisors, vec![1, 3, 7]);
    }

    proptest! {
        #[test]
        fn factor_roundtrip(n in 1u64..5_000_000) {
            let f = factor(n).unwrap();
            prop_assert_eq!(f.value(), n);
            let naive = factor_naive(n);
            prop_assert_eq!(f.pairs(), naive.as_slice());
        }

        #[test]
        fn phi_multiplicative(a in 1u64..5_000, b in 1u64..5_000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(
                euler_phi(a * b).unwrap(),
                euler_phi(a).unwrap() * euler_phi(b).unwrap()
            );
        }

        #[test]
        fn order_divides_phi(a in 2u64..1_000, n in 2u64..1_000) {
            prop_assume!(gcd(a, n) == 1);
            let ord = mult_order(a, n).unwrap();
            let phi = euler_phi(n).unwrap();
            prop_assert_eq!(phi % ord, 0);
            prop_assert_eq!(pow_mod(a, ord, n), 1);
            for p in factor(ord).unwrap().primes() {
                prop_assert_ne!(pow_mod(a, ord / p, n), 1);
            }
        }

        #[test]
        fn t0_membership(n in 1u64..100_000) {
            let t0 = t0_set(n).unwrap();
            for &t in &t0.divisors {
                prop_assert_eq!(n % t, 0);
                prop_assert!((t + 1).is_power_of_two());
                for p in factor(t).unwrap().primes() {
                    prop_assert_eq!(
                        factor(t).unwrap().valuation(p),
                        factor(n).unwrap().valuation(p)
                    );
                }
            }
        }
    }

    #[test]
    fn primitive_root_count() {
        for &(p, m) in &[(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1)] {
            let q = p.pow(m);
            let count = primitive_roots(p, m).unwrap().len() as u64;
            assert_eq!(count, euler_phi(euler_phi(q).unwrap()).unwrap());
        }
    }
}
