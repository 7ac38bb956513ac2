//! Polynomials over prime fields F_p: ring arithmetic, irreducibility,
//! factorization, multiplicative order, primitivity, and enumeration of
//! primitive polynomials.
//!
//! Coefficients are stored lowest degree first with no trailing zeros;
//! display is highest degree first ("x^4+x+1 mod 2"). The text syntax
//! accepts either coefficient order on input and both "mod p" and "@p"
//! modulus markers.

use crate::error::Error;
use crate::numtheory::{self, factor, is_prime, lcm};
use std::fmt;

/// A polynomial over F_p. `coeffs[i]` is the coefficient of x^i; the
/// leading coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from low-first coefficients, reducing mod p and
    /// trimming trailing zeros. `p` must be prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::domain(format!("FpPoly: modulus {p} is not prime")));
        }
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Ok(FpPoly { p, coeffs: c })
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly { p, coeffs: if c % p == 0 { vec![] } else { vec![c % p] } }
    }

    /// x - g as an element of F_p[x].
    pub fn x_minus(p: u64, g: u64) -> Self {
        FpPoly { p, coeffs: vec![(p - g % p) % p, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention, use
    /// `is_zero` to distinguish it.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn constant_term(&self) -> u64 {
        *self.coeffs.first().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (numtheory::mul_mod(acc, x, p) + c) % p)
    }

    fn check_same_modulus(&self, other: &FpPoly) -> Result<(), Error> {
        if self.p != other.p {
            return Err(Error::domain(format!(
                "mismatched moduli {} and {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, ci) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *ci = (a + b) % p;
        }
        FpPoly::new(p, c)
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, ci) in c.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *ci = (a + p - b) % p;
        }
        FpPoly::new(p, c)
    }

    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(other)?;
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(p));
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + numtheory::mul_mod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, c)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|&c| numtheory::mul_mod(c, k % p, p))
                .collect(),
        )
        .expect("modulus already validated")
    }

    /// Quotient and remainder; division by zero is a domain error.
    pub fn divrem(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly), Error> {
        self.check_same_modulus(divisor)?;
        if divisor.is_zero() {
            return Err(Error::domain("polynomial division by zero"));
        }
        let p = self.p;
        let dlead_inv = mod_inverse(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((FpPoly::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let coef = numtheory::mul_mod(rem[i], dlead_inv, p);
            if coef == 0 {
                continue;
            }
            quot[i - dd] = coef;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = numtheory::mul_mod(coef, dc, p);
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
        }
        Ok((FpPoly::new(p, quot)?, FpPoly::new(p, rem)?))
    }

    pub fn rem(&self, divisor: &FpPoly) -> Result<FpPoly, Error> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(mod_inverse(self.leading(), self.p))
    }

    /// `self^e mod m` by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(m)?;
        if m.degree() == 0 && !m.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        let mut base = self.rem(m)?;
        let mut acc = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| numtheory::mul_mod(a, (i as u64) % p, p))
            .collect();
        FpPoly::new(p, c).expect("modulus already validated")
    }

    /// x^(p^k) mod self, by repeated Frobenius.
    fn x_frobenius_power(&self, k: usize) -> Result<FpPoly, Error> {
        let mut r = FpPoly::x(self.p).rem(self)?;
        for _ in 0..k {
            r = r.pow_mod(self.p, self)?;
        }
        Ok(r)
    }

    /// Irreducibility over F_p by the distinct-degree divisibility
    /// criterion: x^(p^d) = x mod P and gcd(x^(p^(d/q)) - x, P) = 1 for
    /// every prime q | d. Constant input is a domain error.
    pub fn is_irreducible(&self) -> Result<bool, Error> {
        if self.is_zero() || self.degree() == 0 {
            return Err(Error::domain("is_irreducible: constant polynomial"));
        }
        let d = self.degree();
        if d == 1 {
            return Ok(true);
        }
        let me = self.monic();
        let x = FpPoly::x(self.p);
        let frob_d = me.x_frobenius_power(d)?;
        if frob_d != x.rem(&me)? {
            return Ok(false);
        }
        for q in factor(d as u64)?.primes() {
            let fr = me.x_frobenius_power(d / q as usize)?;
            let diff = fr.sub(&x.rem(&me)?)?;
            if me.gcd(&diff)?.degree() != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `o >= 1` with `self | x^o - 1`. Requires a nonzero constant
    /// term and degree >= 1.
    ///
    /// The computation factors `self` into irreducible powers, finds each
    /// irreducible's order as a divisor of p^deg - 1 by factor-and-descend,
    /// applies the p-power correction for the multiplicity, and combines
    /// with lcm.
    pub fn order(&self) -> Result<u64, Error> {
        if self.is_zero() || self.degree() == 0 {
            return Err(Error::domain("order: need degree >= 1"));
        }
        if self.constant_term() == 0 {
            return Err(Error::domain("order: constant term is zero"));
        }
        let mut o = 1u64;
        for (poly, mult) in self.monic().factor()? {
            let base = irreducible_order(&poly)?;
            let correction = ceil_pow_correction(self.p, mult);
            o = lcm(o, base.checked_mul(correction).ok_or_else(|| {
                Error::capacity("order: overflow combining block orders")
            })?);
        }
        Ok(o)
    }

    /// True iff `self` is monic irreducible with order p^d - 1 (its roots
    /// generate the multiplicative group of F_{p^d}). Reducible input is a
    /// domain error.
    pub fn is_primitive(&self) -> Result<bool, Error> {
        if !self.is_irreducible()? {
            return Err(Error::domain("is_primitive: polynomial is reducible"));
        }
        if !self.is_monic() {
            return Ok(false);
        }
        if self.constant_term() == 0 {
            return Ok(false);
        }
        let d = self.degree() as u32;
        let q = self
            .p
            .checked_pow(d)
            .ok_or_else(|| Error::capacity("is_primitive: p^d exceeds u64"))?;
        Ok(irreducible_order(self)? == q - 1)
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted canonically (by degree, then coefficients).
    ///
    /// Distinct-degree splitting followed by equal-degree splitting. The
    /// equal-degree stage draws trial polynomials from a fixed-seed xorshift
    /// stream, so results are reproducible.
    pub fn factor(&self) -> Result<Vec<(FpPoly, u32)>, Error> {
        if self.is_zero() {
            return Err(Error::domain("factor: zero polynomial"));
        }
        let mut out: Vec<(FpPoly, u32)> = Vec::new();
        let mut rest = self.monic();
        // Strip repeated factors by gcd with the derivative, handling the
        // p-th power degeneracy (derivative zero) by root extraction.
        let mut mult_stack: Vec<(FpPoly, u32)> = vec![(rest.clone(), 1)];
        let mut squarefree_parts: Vec<(FpPoly, u32)> = Vec::new();
        while let Some((f, m)) = mult_stack.pop() {
            if f.degree() == 0 {
                continue;
            }
            let deriv = f.derivative();
            if deriv.is_zero() {
                // f = g(x^p); extract the p-th root and recurse.
                let g = f.pth_root();
                mult_stack.push((g, m * self.p as u32));
                continue;
            }
            let g = f.gcd(&deriv)?;
            let sqfree = f.divrem(&g)?.0;
            if sqfree.degree() > 0 {
                squarefree_parts.push((sqfree.clone(), m));
            }
            if g.degree() > 0 {
                mult_stack.push((g, m));
            }
        }
        // Factor each squarefree part and merge multiplicities.
        let mut merged: std::collections::BTreeMap<FpPoly, u32> = std::collections::BTreeMap::new();
        for (sf, m) in squarefree_parts {
            for irr in factor_squarefree(&sf)? {
                *merged.entry(irr).or_insert(0) += m;
            }
        }
        // The multiplicity bookkeeping above counts each irreducible once
        // per squarefree layer it appears in; recover true multiplicities
        // by exact division instead.
        let mut result: Vec<(FpPoly, u32)> = Vec::new();
        for (irr, _) in merged {
            let mut k = 0u32;
            loop {
                let (q, r) = rest.divrem(&irr)?;
                if r.is_zero() {
                    rest = q;
                    k += 1;
                } else {
                    break;
                }
            }
            if k > 0 {
                result.push((irr, k));
            }
        }
        debug_assert_eq!(rest.degree(), 0);
        out.extend(result);
        out.sort_by(|a, b| {
            (a.0.degree(), &a.0.coeffs, a.1).cmp(&(b.0.degree(), &b.0.coeffs, b.1))
        });
        Ok(out)
    }

    /// For f with zero derivative (all exponents divisible by p over F_p),
    /// the polynomial g with g(x^p) = f(x); uses a^(1/p) = a in F_p.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c: Vec<u64> = self.coeffs.iter().step_by(p).copied().collect();
        FpPoly::new(self.p, c).expect("modulus already validated")
    }
}

/// Inverse of `a` mod prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    numtheory::pow_mod(a, p - 2, p)
}

/// p^(ceil(log_p k)): the smallest power of p that is >= k.
pub fn ceil_pow_correction(p: u64, k: u32) -> u64 {
    let mut c = 1u64;
    while c < k as u64 {
        c *= p;
    }
    c
}

/// Order of a monic irreducible P with P(0) != 0: the least o with
/// P | x^o - 1, found as a divisor of p^d - 1 by descending over primes.
fn irreducible_order(poly: &FpPoly) -> Result<u64, Error> {
    let p = poly.modulus();
    let d = poly.degree() as u32;
    let q = p
        .checked_pow(d)
        .ok_or_else(|| Error::capacity("irreducible_order: p^d exceeds u64"))?;
    let mut ord = q - 1;
    if ord == 0 {
        return Err(Error::domain("irreducible_order: trivial field"));
    }
    let x = FpPoly::x(p);
    for prime in factor(ord)?.primes() {
        while ord % prime == 0 && x.pow_mod(ord / prime, poly)? == FpPoly::one(p) {
            ord /= prime;
        }
    }
    debug_assert!(x.pow_mod(ord, poly)? == FpPoly::one(p));
    Ok(ord)
}

/// Order of the block `P^k` for monic irreducible P with P(0) != 0:
/// `ord(P) * p^(ceil(log_p k))`.
pub fn irreducible_block_order(poly: &FpPoly, k: u32) -> Result<u64, Error> {
    let base = irreducible_order(poly)?;
    base.checked_mul(ceil_pow_correction(poly.modulus(), k))
        .ok_or_else(|| Error::capacity("block order exceeds u64"))
}

/// Tiny deterministic xorshift for equal-degree splitting trials.
struct SplitRng(u64);

impl SplitRng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factor a squarefree monic polynomial into monic irreducibles.
fn factor_squarefree(f: &FpPoly) -> Result<Vec<FpPoly>, Error> {
    let p = f.modulus();
    let mut out = Vec::new();
    // Distinct-degree split.
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut frob = x.rem(&rest)?;
    let mut d = 0usize;
    let mut groups: Vec<(usize, FpPoly)> = Vec::new();
    while rest.degree() >= 1 {
        d += 1;
        if 2 * d > rest.degree() {
            groups.push((rest.degree(), rest.clone()));
            break;
        }
        frob = frob.pow_mod(p, &rest)?;
        let g = rest.gcd(&frob.sub(&x.rem(&rest)?)?)?;
        if g.degree() > 0 {
            groups.push((d, g.clone()));
            rest = rest.divrem(&g)?.0;
            frob = frob.rem(&rest)?;
        }
    }
    // Equal-degree split within each group.
    for (d, g) in groups {
        split_equal_degree(&g, d, &mut SplitRng(0x5eed_1cc0_ffee_u64), &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn split_equal_degree(
    f: &FpPoly,
    d: usize,
    rng: &mut SplitRng,
    out: &mut Vec<FpPoly>,
) -> Result<(), Error> {
    if f.degree() == 0 {
        return Ok(());
    }
    if f.degree() == d {
        out.push(f.monic());
        return Ok(());
    }
    let p = f.modulus();
    loop {
        // Random polynomial of degree < deg f.
        let mut coeffs = vec![0u64; f.degree()];
        for c in coeffs.iter_mut() {
            *c = rng.next() % p;
        }
        let t = FpPoly::new(p, coeffs)?;
        if t.is_zero() {
            continue;
        }
        let g = if p == 2 {
            // Trace into F_2: t + t^2 + ... + t^(2^(d-1)) is 0 or 1 modulo
            // each degree-d factor, so the gcd splits f.
            let mut acc = t.clone();
            let mut cur = t.clone();
            for _ in 1..d {
                cur = cur.mul(&cur)?.rem(f)?;
                acc = acc.add(&cur)?;
            }
            f.gcd(&acc)?
        } else {
            let q = p
                .checked_pow(d as u32)
                .ok_or_else(|| Error::capacity("equal-degree split: p^d exceeds u64"))?;
            let te = t.pow_mod((q - 1) / 2, f)?;
            f.gcd(&te.sub(&FpPoly::one(p))?)?
        };
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g)?.0;
            split_equal_degree(&g, d, rng, out)?;
            split_equal_degree(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// All monic polynomials of degree `d` over F_p in lexicographic
/// coefficient order (constant term varies fastest), filtered by `keep`.
fn enum_monic(p: u64, d: u32, mut keep: impl FnMut(&FpPoly) -> Result<bool, Error>) -> Result<Vec<FpPoly>, Error> {
    let count = (p as u128)
        .checked_pow(d)
        .filter(|&c| c <= 1u128 << 24)
        .ok_or_else(|| Error::capacity("enum_monic: p^d too large to enumerate"))? as u64;
    let mut out = Vec::new();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut v = idx;
        for _ in 0..d {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        let poly = FpPoly::new(p, coeffs)?;
        if keep(&poly)? {
            out.push(poly);
        }
    }
    out.sort_by(|a, b| lex_key(a).cmp(&lex_key(b)));
    Ok(out)
}

/// Lexicographic key on descending-order coefficients, the display order.
fn lex_key(poly: &FpPoly) -> Vec<u64> {
    poly.coeffs().iter().rev().copied().collect()
}

/// All monic irreducible polynomials of degree d over F_p, lexicographic.
pub fn enum_irreducible(p: u64, d: u32) -> Result<Vec<FpPoly>, Error> {
    enum_monic(p, d, |poly| {
        if d == 1 {
            return Ok(true);
        }
        if poly.constant_term() == 0 || poly.eval(1) == 0 {
            return Ok(false);
        }
        poly.is_irreducible()
    })
}

/// All monic primitive irreducible polynomials of degree d over F_p, in
/// lexicographic coefficient order. Their number is phi(p^d - 1) / d.
pub fn enum_primitive(p: u64, d: u32) -> Result<Vec<FpPoly>, Error> {
    enum_monic(p, d, |poly| {
        if d == 1 {
            // x - g is primitive iff g generates F_p^*.
            let g = (p - poly.constant_term()) % p;
            if g == 0 {
                return Ok(false);
            }
            return Ok(numtheory::mult_order(g, p)? == p - 1);
        }
        if poly.constant_term() == 0 || poly.eval(1) == 0 {
            return Ok(false);
        }
        Ok(poly.is_irreducible()? && poly.is_primitive()?)
    })
}

/// A primitive polynomial of degree d over F_p: the first hit of a
/// deterministic scan (low coefficients vary fastest). Primitive
/// polynomials have density about 1/(2d) among monic candidates, so the
/// scan terminates quickly even for degrees in the forties, where a full
/// enumeration would be hopeless.
pub fn first_primitive(p: u64, d: u32) -> Result<FpPoly, Error> {
    let count = (p as u128)
        .checked_pow(d)
        .ok_or_else(|| Error::capacity("first_primitive: p^d too large"))?;
    p.checked_pow(d)
        .ok_or_else(|| Error::capacity("first_primitive: p^d exceeds u64"))?;
    let mut idx = 0u128;
    while idx < count {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut v = idx;
        for _ in 0..d {
            coeffs.push((v % p as u128) as u64);
            v /= p as u128;
        }
        coeffs.push(1);
        let poly = FpPoly::new(p, coeffs)?;
        idx += 1;
        let prim = if d == 1 {
            let g = (p - poly.constant_term()) % p;
            g != 0 && numtheory::mult_order(g, p)? == p - 1
        } else if poly.constant_term() == 0 || poly.eval(1) == 0 {
            false
        } else {
            poly.is_irreducible()? && poly.is_primitive()?
        };
        if prim {
            return Ok(poly);
        }
    }
    Err(Error::domain("first_primitive: none found"))
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 mod {}", self.p);
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(term);
        }
        write!(f, "{} mod {}", parts.join("+"), self.p)
    }
}

/// Parses "x^4+x+1 mod 2" or "x^4+x+1@2"; terms may appear in any order,
/// coefficients like "2x^3" and bare constants are accepted.
pub fn parse_poly(input: &str) -> Result<FpPoly, Error> {
    let input = input.trim();
    let (body, modpart) = if let Some(idx) = input.rfind('@') {
        (&input[..idx], &input[idx + 1..])
    } else if let Some(idx) = input.to_lowercase().rfind(" mod ") {
        (&input[..idx], &input[idx + 5..])
    } else {
        return Err(Error::parse(format!(
            "polynomial '{input}' is missing a modulus ('mod p' or '@p')"
        )));
    };
    let p: u64 = modpart
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad modulus '{modpart}'")))?;
    if !is_prime(p) {
        return Err(Error::parse(format!("modulus {p} is not prime")));
    }
    let body = body.replace(['-'], "+-").replace(' ', "");
    let mut coeffs: Vec<u64> = Vec::new();
    for raw in body.split('+') {
        if raw.is_empty() {
            continue;
        }
        let (neg, term) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw),
        };
        let (coef_str, exp) = if let Some(xi) = term.find(['x', 'X']) {
            let after = &term[xi + 1..];
            let exp = if after.is_empty() {
                1usize
            } else {
                after
                    .strip_prefix('^')
                    .ok_or_else(|| Error::parse(format!("bad term '{raw}'")))?
                    .parse()
                    .map_err(|_| Error::parse(format!("bad exponent in '{raw}'")))?
            };
            (&term[..xi], exp)
        } else {
            (term, 0usize)
        };
        let coef: u64 = if coef_str.is_empty() || coef_str == "*" {
            1
        } else {
            coef_str
                .trim_end_matches('*')
                .parse()
                .map_err(|_| Error::parse(format!("bad coefficient in '{raw}'")))?
        };
        let coef = if neg { (p - coef % p) % p } else { coef % p };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + coef) % p;
    }
    FpPoly::new(p, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> FpPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        // (x+1)^2 = x^2+1 in characteristic 2.
        let a = poly("x+1 mod 2");
        assert_eq!(a.mul(&a).unwrap(), poly("x^2+1 mod 2"));
        // x^3 - 1 = (x-1)(x^2+x+1) over F_2.
        let g = poly("x^2+x+1 mod 2").gcd(&poly("x^3+1 mod 2")).unwrap();
        assert_eq!(g, poly("x^2+x+1 mod 2"));
        // x has order 3 in F_2[x]/(x^2+x+1).
        let m = poly("x^2+x+1 mod 2");
        assert_eq!(FpPoly::x(2).pow_mod(3, &m).unwrap(), FpPoly::one(2));
        assert!(poly("x mod 2").add(&poly("x mod 3")).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly("x^2+x+1 mod 2").is_irreducible().unwrap());
        assert!(!poly("x^2+1 mod 2").is_irreducible().unwrap()); // (x+1)^2
        assert!(poly("x^2+1 mod 3").is_irreducible().unwrap()); // no root mod 3
        assert!(FpPoly::constant(2, 1).is_irreducible().is_err());
    }

    /// Direct divisibility search: least o with P | x^o - 1, tracking
    /// x^o mod P incrementally.
    fn order_naive(poly: &FpPoly) -> u64 {
        let p = poly.modulus();
        let x = FpPoly::x(p);
        let one = FpPoly::one(p);
        let mut r = x.rem(poly).unwrap();
        for o in 1..=100_000u64 {
            if r == one {
                return o;
            }
            r = r.mul(&x).unwrap().rem(poly).unwrap();
        }
        panic!("order_naive: exceeded bound");
    }

    #[test]
    fn order_examples() {
        assert_eq!(poly("x+1 mod 2").order().unwrap(), 1); // x-1 | x^1-1
        let sq = poly("x+1 mod 2").mul(&poly("x+1 mod 2")).unwrap();
        assert_eq!(order_naive(&sq), 2);
        assert_eq!(sq.order().unwrap(), 2);
        let cube = sq.mul(&poly("x+1 mod 2")).unwrap();
        assert_eq!(order_naive(&cube), 4);
        assert_eq!(cube.order().unwrap(), 4);
        assert_eq!(poly("x^2+x+1 mod 2").order().unwrap(), 3);
        assert!(poly("x^2+x mod 2").order().is_err());
    }

    #[test]
    fn order_power_law_small() {
        // order(P^k) = order(P) * p^(ceil(log_p k)) for irreducible P,
        // cross-checked against direct divisibility search.
        for p in [2u64, 3, 5] {
            for d in 1..=4u32 {
                for base in enum_irreducible(p, d).unwrap() {
                    if base.constant_term() == 0 {
                        continue;
                    }
                    let mut power = base.clone();
                    for k in 1..=4u32 {
                        if k > 1 {
                            power = power.mul(&base).unwrap();
                        }
                        let expected =
                            irreducible_order(&base).unwrap() * ceil_pow_correction(p, k);
                        assert_eq!(power.order().unwrap(), expected);
                        assert_eq!(order_naive(&power), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn primitivity_examples() {
        assert!(poly("x^2+x+1 mod 2").is_primitive().unwrap());
        // x^4+x^3+x^2+x+1 has order 5, not 15.
        let q = poly("x^4+x^3+x^2+x+1 mod 2");
        assert_eq!(q.order().unwrap(), 5);
        assert!(!q.is_primitive().unwrap());
        // x - g is primitive iff g generates F_p^*.
        for p in [3u64, 5, 7, 11] {
            for g in 1..p {
                let lin = FpPoly::x_minus(p, g);
                let expected = numtheory::mult_order(g, p).unwrap() == p - 1;
                assert_eq!(lin.is_primitive().unwrap(), expected, "p={p} g={g}");
            }
        }
        assert!(poly("x^2+1 mod 2").is_primitive().is_err());
    }

    #[test]
    fn enum_primitive_examples() {
        let e22 = enum_primitive(2, 2).unwrap();
        assert_eq!(e22, vec![poly("x^2+x+1 mod 2")]);
        let e24 = enum_primitive(2, 4).unwrap();
        assert_eq!(
            e24,
            vec![poly("x^4+x+1 mod 2"), poly("x^4+x^3+1 mod 2")]
        );
        assert_eq!(enum_primitive(2, 5).unwrap().len(), 6);
    }

    #[test]
    fn enum_primitive_count_law() {
        // |enum_primitive(p, d)| = phi(p^d - 1) / d.
        for (p, dmax) in [(2u64, 8u32), (3, 5), (5, 4)] {
            for d in 1..=dmax {
                let q = p.pow(d);
                let expected = numtheory::euler_phi(q - 1).unwrap() / d as u64;
                let got = enum_primitive(p, d).unwrap().len() as u64;
                assert_eq!(got, expected, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn factor_roundtrip() {
        for p in [2u64, 3] {
            for raw in 1..200u64 {
                let mut coeffs = Vec::new();
                let mut v = raw;
                while v > 0 {
                    coeffs.push(v % p);
                    v /= p;
                }
                let f = FpPoly::new(p, coeffs).unwrap();
                if f.degree() == 0 {
                    continue;
                }
                let factors = f.monic().factor().unwrap();
                let mut prod = FpPoly::one(p);
                for (irr, k) in &factors {
                    assert!(irr.is_irreducible().unwrap());
                    for _ in 0..*k {
                        prod = prod.mul(irr).unwrap();
                    }
                }
                assert_eq!(prod, f.monic(), "p={p} raw={raw}");
            }
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["x^4+x+1 mod 2", "x^2+2x+2 mod 3", "x+3 mod 5", "2 mod 7"] {
            let q = poly(s);
            assert_eq!(parse_poly(&q.to_string()).unwrap(), q);
        }
        assert_eq!(poly("1+x+x^4 mod 2"), poly("x^4+x+1 mod 2"));
        assert_eq!(poly("x^3+x+1@2"), poly("x^3+x+1 mod 2"));
        assert_eq!(poly("x^2-x-1 mod 3"), poly("x^2+2x+2 mod 3"));
    }
}
