//! Congruential and vector generators with certified cycle lengths.
//!
//! A generator is a finite state set, a bijective transition, and an
//! output reduction of the state to an unsigned word. Full-period
//! certification is symbolic (congruence conditions on the multiplier and
//! increment, primitivity of the feedback polynomial); measurement is by
//! cycle detection with constant memory.

use crate::error::Error;
use crate::ffpoly::FpPoly;
use crate::fpmatrix::{companion, FpMatrix};
use crate::numtheory::{factor, gcd};

/// A congruential or vector generator specification.
#[derive(Debug, Clone)]
pub enum RngSpec {
    /// State y in Z/m, transition y -> a y + c, output the residue.
    Lcg { m: u64, a: u64, c: u64, seed: u64 },
    /// State v in F_p^d, transition by the companion matrix of `poly`,
    /// output the coordinates packed little-endian in base p
    /// (word = v_0 + v_1 p + v_2 p^2 + ...).
    Vector { poly: FpPoly, seed: Vec<u64> },
}

/// Builds `y -> a y + c mod m`. Periodicity requires `gcd(a, m) = 1`.
pub fn lcg(m: u64, a: u64, c: u64, seed: u64) -> Result<RngSpec, Error> {
    if m == 0 {
        return Err(Error::domain("lcg: modulus must be positive"));
    }
    if m > 1 && gcd(a % m, m) != 1 {
        return Err(Error::domain(format!(
            "lcg: multiplier {a} is not a unit mod {m}, the map is not periodic"
        )));
    }
    Ok(RngSpec::Lcg { m, a: a % m, c: c % m, seed: seed % m })
}

/// Builds the vector generator driven by the companion matrix of `poly`
/// (monic, nonzero constant term). A zero constant term makes the matrix
/// singular and the generator degenerate.
pub fn vecgen(poly: &FpPoly, seed: &[u64]) -> Result<RngSpec, Error> {
    if !poly.is_monic() || poly.degree() == 0 {
        return Err(Error::domain("vecgen: need a monic polynomial of degree >= 1"));
    }
    if poly.constant_term() == 0 {
        return Err(Error::domain("vecgen: zero constant term (degenerate)"));
    }
    if seed.len() != poly.degree() {
        return Err(Error::domain("vecgen: seed length must equal the degree"));
    }
    let p = poly.modulus();
    Ok(RngSpec::Vector {
        poly: poly.clone(),
        seed: seed.iter().map(|&x| x % p).collect(),
    })
}

impl RngSpec {
    /// Number of states.
    pub fn state_count(&self) -> Result<u64, Error> {
        match self {
            RngSpec::Lcg { m, .. } => Ok(*m),
            RngSpec::Vector { poly, seed } => poly
                .modulus()
                .checked_pow(seed.len() as u32)
                .ok_or_else(|| Error::capacity("vecgen: state space exceeds u64")),
        }
    }

    fn transition_matrix(&self) -> Option<FpMatrix> {
        match self {
            RngSpec::Lcg { .. } => None,
            RngSpec::Vector { poly, .. } => Some(companion(poly).expect("validated monic")),
        }
    }

    fn output(&self, state: &State) -> u64 {
        match (self, state) {
            (RngSpec::Lcg { .. }, State::Scalar(y)) => *y,
            (RngSpec::Vector { poly, .. }, State::Vector(v)) => {
                let p = poly.modulus();
                v.iter().rev().fold(0u64, |acc, &c| acc * p + c)
            }
            _ => unreachable!("state kind matches spec kind"),
        }
    }

    fn initial(&self) -> State {
        match self {
            RngSpec::Lcg { seed, .. } => State::Scalar(*seed),
            RngSpec::Vector { seed, .. } => State::Vector(seed.clone()),
        }
    }

    fn step(&self, state: &State, mat: &Option<FpMatrix>) -> State {
        match (self, state) {
            (RngSpec::Lcg { m, a, c, .. }, State::Scalar(y)) => {
                State::Scalar(((*y as u128 * *a as u128 + *c as u128) % *m as u128) as u64)
            }
            (RngSpec::Vector { .. }, State::Vector(v)) => {
                State::Vector(mat.as_ref().expect("vector spec").apply(v))
            }
            _ => unreachable!("state kind matches spec kind"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum State {
    Scalar(u64),
    Vector(Vec<u64>),
}

/// Symbolic full-period certificate, no iteration.
///
/// Congruential: the increment is a unit mod m, the multiplier is 1 mod
/// every prime of m, and 1 mod 4 when 4 divides m. Vector: primitive
/// feedback polynomial and nonzero seed (full period over the nonzero
/// states, p^d - 1).
pub fn certify_full_period(spec: &RngSpec) -> Result<bool, Error> {
    match spec {
        RngSpec::Lcg { m, a, c, .. } => {
            if *m == 1 {
                return Ok(true);
            }
            if gcd(*c, *m) != 1 {
                return Ok(false);
            }
            for p in factor(*m)?.primes() {
                if a % p != 1 {
                    return Ok(false);
                }
            }
            if m % 4 == 0 && a % 4 != 1 {
                return Ok(false);
            }
            Ok(true)
        }
        RngSpec::Vector { poly, seed } => {
            if seed.iter().all(|&c| c == 0) {
                return Ok(false);
            }
            if !poly.is_irreducible()? {
                return Ok(false);
            }
            poly.is_primitive()
        }
    }
}

/// The period implied by a successful certificate: m for the congruential
/// generator, p^d - 1 for the vector generator.
pub fn certified_period(spec: &RngSpec) -> Result<u64, Error> {
    match spec {
        RngSpec::Lcg { m, .. } => Ok(*m),
        RngSpec::Vector { .. } => Ok(spec.state_count()? - 1),
    }
}

/// First `count` output words, starting with the seed state.
pub fn stream(spec: &RngSpec, count: usize) -> Vec<u64> {
    let mat = spec.transition_matrix();
    let mut state = spec.initial();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(spec.output(&state));
        state = spec.step(&state, &mat);
    }
    out
}

/// Period of the seed's cycle by Brent's algorithm (constant memory).
/// The transitions are bijections, so the seed lies on its cycle and the
/// detected cycle length is the period. Exceeding `cap` is reported, not
/// silently truncated.
pub fn measured_period(spec: &RngSpec, cap: u64) -> Result<u64, Error> {
    let mat = spec.transition_matrix();
    let mut power = 1u64;
    let mut lam = 1u64;
    let tortoise_start = spec.initial();
    let mut tortoise = tortoise_start;
    let mut hare = spec.step(&tortoise, &mat);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power = power.saturating_mul(2);
            lam = 0;
        }
        hare = spec.step(&hare, &mat);
        lam += 1;
        if lam > cap {
            return Err(Error::capacity(format!("measured_period: exceeds cap {cap}")));
        }
    }
    Ok(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{enum_primitive, parse_poly};

    #[test]
    fn lcg_examples() {
        // (m=9, a=4, c=1): full period 9 (4 = 1 mod 3, gcd(1,9) = 1).
        let spec = lcg(9, 4, 1, 0).unwrap();
        assert!(certify_full_period(&spec).unwrap());
        assert_eq!(measured_period(&spec, 1 << 20).unwrap(), 9);
        // a = 1, c = 1: always full period.
        for m in [2u64, 7, 12, 100] {
            let spec = lcg(m, 1, 1, 3).unwrap();
            assert!(certify_full_period(&spec).unwrap());
            assert_eq!(measured_period(&spec, 1 << 20).unwrap(), m);
        }
        // (m=8, a=3, c=1): not full period (3 != 1 mod 4).
        let spec = lcg(8, 3, 1, 0).unwrap();
        assert!(!certify_full_period(&spec).unwrap());
        assert!(measured_period(&spec, 1 << 20).unwrap() < 8);
        // gcd(a, m) != 1: rejected as non-periodic.
        assert!(lcg(8, 2, 1, 0).is_err());
    }

    #[test]
    fn lcg_stream_permutation() {
        // Full period: the first m outputs are a permutation of Z_m.
        let spec = lcg(9, 4, 1, 0).unwrap();
        let mut out = stream(&spec, 9);
        out.sort_unstable();
        assert_eq!(out, (0..9).collect::<Vec<_>>());
        // Trivial spec (a=1, c=0): constant stream at the seed.
        let spec = lcg(7, 1, 0, 5).unwrap();
        assert_eq!(stream(&spec, 4), vec![5, 5, 5, 5]);
    }

    #[test]
    fn vecgen_examples() {
        // V(x^2+x+1) over F_2, nonzero seed: period 3.
        let p = parse_poly("x^2+x+1 mod 2").unwrap();
        let spec = vecgen(&p, &[1, 0]).unwrap();
        assert!(certify_full_period(&spec).unwrap());
        assert_eq!(measured_period(&spec, 1 << 20).unwrap(), 3);
        assert_eq!(certified_period(&spec).unwrap(), 3);
        // Primitive degree-5 polynomial: period 31 for any nonzero seed.
        let p5 = crate::ffpoly::first_primitive(2, 5).unwrap();
        for seed_idx in 1..32u64 {
            let seed: Vec<u64> = (0..5).map(|i| (seed_idx >> i) & 1).collect();
            let spec = vecgen(&p5, &seed).unwrap();
            assert_eq!(measured_period(&spec, 1 << 20).unwrap(), 31);
        }
        // Zero seed: fixed point, period 1, certificate refuses.
        let spec = vecgen(&p, &[0, 0]).unwrap();
        assert_eq!(measured_period(&spec, 1 << 20).unwrap(), 1);
        assert!(!certify_full_period(&spec).unwrap());
        // Zero constant term: degenerate.
        assert!(vecgen(&parse_poly("x^2+x mod 2").unwrap(), &[1, 0]).is_err());
    }

    #[test]
    fn vector_stream_covers_nonzero_states() {
        // Primitive feedback visits every nonzero state once per period.
        let p = parse_poly("x^3+x+1 mod 2").unwrap();
        let spec = vecgen(&p, &[1, 0, 0]).unwrap();
        let mut out = stream(&spec, 7);
        out.sort_unstable();
        assert_eq!(out, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn certificate_iff_measured_small_grid() {
        // Exhaustive (a, c) grids with every seed class at m = 8 and 9.
        for m in [8u64, 9] {
            for a in 0..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                for c in 0..m {
                    let spec = lcg(m, a, c, 1).unwrap();
                    let certified = certify_full_period(&spec).unwrap();
                    let measured = measured_period(&spec, 1 << 20).unwrap();
                    assert_eq!(certified, measured == m, "m={m} a={a} c={c}");
                }
            }
        }
    }

    #[test]
    fn vec_periods_match_certificates_seeded() {
        // Seeded sample of primitive polynomials over p in {2, 3}.
        let mut rng = 0x1234_5678_9abc_def0u64;
        let mut step = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut checked = 0;
        for (p, dmax) in [(2u64, 10u32), (3, 6)] {
            for d in 2..=dmax {
                let polys = enum_primitive(p, d).unwrap();
                let poly = &polys[step() as usize % polys.len()];
                let mut seed = vec![0u64; d as usize];
                while seed.iter().all(|&c| c == 0) {
                    for s in seed.iter_mut() {
                        *s = step() % p;
                    }
                }
                let spec = vecgen(poly, &seed).unwrap();
                assert!(certify_full_period(&spec).unwrap());
                assert_eq!(
                    measured_period(&spec, 1 << 22).unwrap(),
                    certified_period(&spec).unwrap()
                );
                checked += 1;
            }
        }
        assert!(checked >= 13);
    }
}
