//! Finite dynamical groups: symbolic constructors evaluable to concrete
//! maps, products, Frobenius decomposition of invertible matrices over
//! prime fields, transfer checks through admissible subgroups, and the
//! dihedral / dicyclic / Klein-extended families.
//!
//! Elements of the nonabelian groups are canonical normal forms: a power
//! of the rotation generator together with a flip flag (plus the Klein
//! coordinates for the extended families), with multiplication read off
//! the presentations. No generic finitely-presented-group machinery.

use crate::abelian::{AbelianGroupType, AffineOnP, EndoMatrix, ORBIT_CAP};
use crate::cycles::{cycle_structure_of_fn, CycleStructure};
use crate::error::Error;
use crate::ffpoly::{self, FpPoly};
use crate::fpmatrix::{companion, FpMatrix};
use crate::numtheory::{gcd, lcm};
use crate::{rat, rat_u64, Rat};
use std::fmt;

/// Symbolic FDG constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FdgSpec {
    /// Z/m with multiplication by `a`.
    M { m: u64, a: u64 },
    /// (Z/p)^d with the companion matrix of a monic polynomial over F_p.
    VPoly { poly: FpPoly },
    /// (Z/m)^d with an explicit matrix over Z/m.
    VMod { m: u64, rows: Vec<Vec<u64>> },
    /// An abelian group type with an integer matrix on its generator tuple.
    GenericAbelian { group: AbelianGroupType, rows: Vec<Vec<i64>> },
    /// Dihedral group of order 2n with r -> r^m, x -> xr.
    Dihedral { n: u64, m: u64 },
    /// Dicyclic group of order 2n (n even) with r -> r^m, x -> xr.
    Dicyclic { n: u64, m: u64 },
    /// (Z/2)^2 x Z/o extended by the inverting involution (x^2 = 1), with
    /// r1 <-> r2, r -> r^m, x -> x r1 r.
    DKlein { o: u64, m: u64 },
    /// Same extension with x^2 = r1 r2.
    DicKlein { o: u64, m: u64 },
    Product(Vec<FdgSpec>),
}

/// Nondecreasing degree tuple of the primitive blocks of an elementary
/// abelian FDG.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrobeniusType(pub Vec<u32>);

impl fmt::Display for FrobeniusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Concrete element universe with multiplication in canonical normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupRep {
    /// Coordinate tuples modulo the listed moduli; index is mixed radix
    /// with the first coordinate least significant.
    Abelian { moduli: Vec<u64> },
    /// `r^i x^f` for the dihedral (x^2 = 1) or dicyclic (x^2 = r^(n/2))
    /// presentation; index = i + n * f.
    Dihedral { n: u64, dicyclic: bool },
    /// `r1^e1 r2^e2 r^i x^f`; x inverts r and commutes with r1, r2;
    /// x^2 = 1 (plain) or r1 r2 (dicyclic variant).
    /// Index = e1 + 2 e2 + 4 i + 4 o f.
    KleinDihedral { o: u64, dicyclic: bool },
    Product(Vec<GroupRep>),
}

impl GroupRep {
    pub fn size(&self) -> u64 {
        match self {
            GroupRep::Abelian { moduli } => moduli.iter().product(),
            GroupRep::Dihedral { n, .. } => 2 * n,
            GroupRep::KleinDihedral { o, .. } => 8 * o,
            GroupRep::Product(parts) => parts.iter().map(|g| g.size()).product(),
        }
    }

    pub fn id(&self) -> u64 {
        0
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            GroupRep::Abelian { moduli } => {
                let (mut a, mut b, mut out, mut base) = (a, b, 0u64, 1u64);
                for &m in moduli {
                    out += ((a % m + b % m) % m) * base;
                    base *= m;
                    a /= m;
                    b /= m;
                }
                out
            }
            GroupRep::Dihedral { n, dicyclic } => {
                let (i, f) = (a % n, a / n);
                let (j, g) = (b % n, b / n);
                if f == 0 {
                    (i + j) % n + n * g
                } else if g == 0 {
                    (i + n - j) % n + n
                } else {
                    let twist = if *dicyclic { n / 2 } else { 0 };
                    (i + n - j + twist) % n
                }
            }
            GroupRep::KleinDihedral { o, dicyclic } => {
                let (a1, a2, i, f) = klein_decode(a, *o);
                let (b1, b2, j, g) = klein_decode(b, *o);
                let twist = u64::from(*dicyclic && f == 1 && g == 1);
                let e1 = (a1 + b1 + twist) % 2;
                let e2 = (a2 + b2 + twist) % 2;
                let k = if f == 0 { (i + j) % o } else { (i + o - j) % o };
                klein_encode(e1, e2, k, (f + g) % 2, *o)
            }
            GroupRep::Product(parts) => {
                let (mut a, mut b, mut out, mut base) = (a, b, 0u64, 1u64);
                for part in parts {
                    let s = part.size();
                    out += part.mul(a % s, b % s) * base;
                    base *= s;
                    a /= s;
                    b /= s;
                }
                out
            }
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        match self {
            GroupRep::Abelian { moduli } => {
                let (mut a, mut out, mut base) = (a, 0u64, 1u64);
                for &m in moduli {
                    out += ((m - a % m) % m) * base;
                    base *= m;
                    a /= m;
                }
                out
            }
            GroupRep::Dihedral { n, dicyclic } => {
                let (i, f) = (a % n, a / n);
                if f == 0 {
                    (n - i) % n
                } else if *dicyclic {
                    (i + n / 2) % n + n
                } else {
                    a
                }
            }
            GroupRep::KleinDihedral { o, dicyclic } => {
                let (e1, e2, i, f) = klein_decode(a, *o);
                if f == 0 {
                    klein_encode(e1, e2, (o - i) % o, 0, *o)
                } else if *dicyclic {
                    klein_encode((e1 + 1) % 2, (e2 + 1) % 2, i, 1, *o)
                } else {
                    a
                }
            }
            GroupRep::Product(parts) => {
                let (mut a, mut out, mut base) = (a, 0u64, 1u64);
                for part in parts {
                    let s = part.size();
                    out += part.inv(a % s) * base;
                    base *= s;
                    a /= s;
                }
                out
            }
        }
    }

    /// Order of a single element by iterated multiplication.
    pub fn element_order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.id() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn klein_decode(idx: u64, o: u64) -> (u64, u64, u64, u64) {
    (idx % 2, (idx / 2) % 2, (idx / 4) % o, idx / (4 * o))
}

fn klein_encode(e1: u64, e2: u64, i: u64, f: u64, o: u64) -> u64 {
    e1 + 2 * e2 + 4 * i + 4 * o * f
}

/// A finite set with a self-map, carrying its group structure; the table
/// stores the image of every element index.
#[derive(Debug, Clone)]
pub struct FiniteMap {
    pub group: GroupRep,
    pub map: Vec<u64>,
}

impl FiniteMap {
    pub fn size(&self) -> u64 {
        self.group.size()
    }

    pub fn apply(&self, idx: u64) -> u64 {
        self.map[idx as usize]
    }

    pub fn cycle_structure(&self) -> Result<CycleStructure, Error> {
        cycle_structure_of_fn(self.size(), |i| self.map[i as usize])
    }

    pub fn lambda(&self) -> Result<Rat, Error> {
        Ok(self.cycle_structure()?.lambda())
    }

    pub fn is_periodic(&self) -> bool {
        self.cycle_structure().is_ok()
    }

    /// Checks `f(ab) = f(a) f(b)` on every pair. Quadratic; meant for
    /// tests and small verification sweeps.
    pub fn is_homomorphism(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                if self.map[ab as usize]
                    != self.group.mul(self.map[a as usize], self.map[b as usize])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Fraction of elements sent to their inverses.
    pub fn inversion_fraction(&self) -> Rat {
        let n = self.size();
        let count = (0..n)
            .filter(|&g| self.map[g as usize] == self.group.inv(g))
            .count() as u64;
        rat_u64(count, n)
    }

    /// Order of the map as a permutation (lcm of cycle lengths).
    pub fn order(&self) -> Result<u64, Error> {
        Ok(self.cycle_structure()?.order())
    }
}

/// Evaluates a symbolic spec to a concrete map. `cap` bounds the group
/// order (the image table is materialized).
pub fn evaluate(spec: &FdgSpec, cap: u64) -> Result<FiniteMap, Error> {
    let map = match spec {
        FdgSpec::M { m, a } => {
            if *m == 0 {
                return Err(Error::domain("M(m,a): m must be positive"));
            }
            check_cap(*m, cap)?;
            let group = GroupRep::Abelian {
                moduli: if *m == 1 { vec![] } else { vec![*m] },
            };
            let table = (0..group.size())
                .map(|y| (y as u128 * *a as u128 % *m as u128) as u64)
                .collect();
            FiniteMap { group, map: table }
        }
        FdgSpec::VPoly { poly } => {
            if !poly.is_monic() || poly.degree() == 0 {
                return Err(Error::domain("V(P): need a monic polynomial of degree >= 1"));
            }
            let mat = companion(poly)?;
            return evaluate(
                &FdgSpec::VMod { m: poly.modulus(), rows: mat.rows() },
                cap,
            );
        }
        FdgSpec::VMod { m, rows } => {
            if *m == 0 {
                return Err(Error::domain("V(m,A): m must be positive"));
            }
            let d = rows.len();
            if rows.iter().any(|r| r.len() != d) {
                return Err(Error::domain("V(m,A): matrix must be square"));
            }
            let size = (*m as u128)
                .checked_pow(d as u32)
                .ok_or_else(|| Error::capacity("V(m,A): group too large"))?;
            if size > cap as u128 {
                return Err(Error::capacity(format!(
                    "V(m,A): |G| = {size} exceeds cap {cap}"
                )));
            }
            let moduli = vec![*m; d];
            let group = GroupRep::Abelian { moduli: moduli.clone() };
            let table = (0..group.size())
                .map(|idx| {
                    let coords = decode_mixed(idx, &moduli);
                    let image: Vec<u64> = (0..d)
                        .map(|i| {
                            let mut acc = 0u128;
                            for (j, &c) in coords.iter().enumerate() {
                                acc += rows[i][j] as u128 * c as u128;
                            }
                            (acc % *m as u128) as u64
                        })
                        .collect();
                    encode_mixed(&image, &moduli)
                })
                .collect();
            FiniteMap { group, map: table }
        }
        FdgSpec::GenericAbelian { group, rows } => {
            let mut moduli = Vec::new();
            for part in group.parts() {
                moduli.extend(part.moduli()?);
            }
            let n = moduli.len();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::domain("GA: matrix shape must match the rank"));
            }
            // Well-definedness: the order of generator j must annihilate
            // its image, i.e. m_i / gcd(m_i, m_j) divides a_ij.
            for i in 0..n {
                for j in 0..n {
                    let need = moduli[i] / gcd(moduli[i], moduli[j]);
                    if rows[i][j].rem_euclid(need as i64) != 0 {
                        return Err(Error::domain(format!(
                            "GA: entry ({i},{j}) breaks well-definedness"
                        )));
                    }
                }
            }
            let size: u128 = moduli.iter().map(|&m| m as u128).product();
            if size > cap as u128 {
                return Err(Error::capacity("GA: group exceeds cap"));
            }
            let grp = GroupRep::Abelian { moduli: moduli.clone() };
            let table = (0..grp.size())
                .map(|idx| {
                    let coords = decode_mixed(idx, &moduli);
                    let image: Vec<u64> = (0..n)
                        .map(|i| {
                            let mut acc: i128 = 0;
                            for (j, &c) in coords.iter().enumerate() {
                                acc += rows[i][j] as i128 * c as i128;
                            }
                            acc.rem_euclid(moduli[i] as i128) as u64
                        })
                        .collect();
                    encode_mixed(&image, &moduli)
                })
                .collect();
            FiniteMap { group: grp, map: table }
        }
        FdgSpec::Dihedral { n, m } => {
            if *n < 3 {
                return Err(Error::domain("Dih(n,m): need n >= 3"));
            }
            check_cap(2 * n, cap)?;
            family_map(GroupRep::Dihedral { n: *n, dicyclic: false }, *n, *m)
        }
        FdgSpec::Dicyclic { n, m } => {
            if *n < 4 || n % 2 != 0 {
                return Err(Error::domain("Dic(n,m): need even n >= 4"));
            }
            check_cap(2 * n, cap)?;
            family_map(GroupRep::Dihedral { n: *n, dicyclic: true }, *n, *m)
        }
        FdgSpec::DKlein { o, m } => {
            if *o < 3 || o % 2 == 0 {
                return Err(Error::domain("DK(o,m): need odd o >= 3"));
            }
            check_cap(8 * o, cap)?;
            klein_family_map(GroupRep::KleinDihedral { o: *o, dicyclic: false }, *o, *m)
        }
        FdgSpec::DicKlein { o, m } => {
            if *o < 3 || o % 2 == 0 {
                return Err(Error::domain("DicK(o,m): need odd o >= 3"));
            }
            check_cap(8 * o, cap)?;
            klein_family_map(GroupRep::KleinDihedral { o: *o, dicyclic: true }, *o, *m)
        }
        FdgSpec::Product(specs) => {
            let parts: Vec<FiniteMap> = specs
                .iter()
                .map(|s| evaluate(s, cap))
                .collect::<Result<_, _>>()?;
            let total: u128 = parts.iter().map(|p| p.size() as u128).product();
            if total > cap as u128 {
                return Err(Error::capacity(format!(
                    "product: |G| = {total} exceeds cap {cap}"
                )));
            }
            let group = GroupRep::Product(parts.iter().map(|p| p.group.clone()).collect());
            let sizes: Vec<u64> = parts.iter().map(|p| p.size()).collect();
            let table = (0..group.size())
                .map(|idx| {
                    let mut rem = idx;
                    let mut out = 0u64;
                    let mut base = 1u64;
                    for (part, &s) in parts.iter().zip(&sizes) {
                        out += part.apply(rem % s) * base;
                        base *= s;
                        rem /= s;
                    }
                    out
                })
                .collect();
            FiniteMap { group, map: table }
        }
    };
    Ok(map)
}

fn check_cap(size: u64, cap: u64) -> Result<(), Error> {
    if size > cap {
        return Err(Error::capacity(format!("|G| = {size} exceeds cap {cap}")));
    }
    Ok(())
}

fn decode_mixed(mut idx: u64, moduli: &[u64]) -> Vec<u64> {
    moduli
        .iter()
        .map(|&m| {
            let c = idx % m;
            idx /= m;
            c
        })
        .collect()
}

fn encode_mixed(coords: &[u64], moduli: &[u64]) -> u64 {
    let mut idx = 0u64;
    for (c, m) in coords.iter().zip(moduli).rev() {
        idx = idx * m + c;
    }
    idx
}

/// r -> r^m, x -> xr on a dihedral or dicyclic group:
/// r^i x^f maps to r^(m i - f) x^f.
fn family_map(group: GroupRep, n: u64, m: u64) -> FiniteMap {
    let table = (0..group.size())
        .map(|idx| {
            let (i, f) = (idx % n, idx / n);
            let im = (i as u128 * m as u128 % n as u128) as u64;
            (im + n - f) % n + n * f
        })
        .collect();
    FiniteMap { group, map: table }
}

/// r1 <-> r2, r -> r^m, x -> x r1 r on the Klein-extended groups: on the
/// x-coset the Klein part picks up r1 and the rotation drops by one.
fn klein_family_map(group: GroupRep, o: u64, m: u64) -> FiniteMap {
    let table = (0..group.size())
        .map(|idx| {
            let (e1, e2, i, f) = klein_decode(idx, o);
            let im = (i as u128 * m as u128 % o as u128) as u64;
            if f == 0 {
                klein_encode(e2, e1, im, 0, o)
            } else {
                klein_encode((e2 + 1) % 2, e1, (im + o - 1) % o, 1, o)
            }
        })
        .collect();
    FiniteMap { group, map: table }
}

/// Exact lambda of a product from per-factor summaries.
#[derive(Debug, Clone, PartialEq)]
pub enum ProductLambda {
    /// Largest cycle lengths pairwise coprime: lambda is the product.
    Exact(Rat),
    /// Not pairwise coprime: only the bound lambda <= (1/2) prod holds.
    UpperBound(Rat),
}

/// Combines `(lambda_i, Lambda_i)` summaries per the product rule.
pub fn lambda_product(parts: &[(Rat, u64)]) -> ProductLambda {
    let mut prod = rat(1, 1);
    let mut coprime = true;
    for (i, (l, big)) in parts.iter().enumerate() {
        prod *= l.clone();
        for (_, other) in &parts[i + 1..] {
            if gcd(*big, *other) != 1 {
                coprime = false;
            }
        }
    }
    if coprime {
        ProductLambda::Exact(prod)
    } else {
        ProductLambda::UpperBound(prod * rat(1, 2))
    }
}

/// Primary Frobenius blocks of an invertible matrix over F_p: the
/// multiset of `(irreducible, multiplicity)` blocks, canonically sorted.
///
/// Computed from the characteristic polynomial and the kernel-dimension
/// chain of `P(A)^j`: with `k_j = dim ker P(A)^j`, the number of blocks
/// of exponent at least `j` is `(k_j - k_(j-1)) / deg P`.
pub fn frobenius_decompose(a: &FpMatrix) -> Result<Vec<(FpPoly, u32)>, Error> {
    if !a.is_invertible() {
        return Err(Error::domain("frobenius_decompose: singular matrix"));
    }
    let char_poly = a.char_poly();
    let mut blocks: Vec<(FpPoly, u32)> = Vec::new();
    for (poly, mult) in char_poly.factor()? {
        let mut prev = 0usize;
        let mut at_least: Vec<usize> = Vec::new();
        let pa = a.eval_poly(&poly);
        let mut power = FpMatrix::identity(a.modulus(), a.size());
        for _ in 1..=mult {
            power = power.mul(&pa);
            let k = power.kernel_dim();
            at_least.push((k - prev) / poly.degree());
            prev = k;
        }
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[j] - next) {
                blocks.push((poly.clone(), (j + 1) as u32));
            }
        }
    }
    blocks.sort_by(|x, y| {
        (x.0.degree(), x.0.coeffs(), x.1).cmp(&(y.0.degree(), y.0.coeffs(), y.1))
    });
    let total: usize = blocks.iter().map(|(p, k)| p.degree() * *k as usize).sum();
    debug_assert_eq!(total, a.size());
    Ok(blocks)
}

/// Frobenius type (nondecreasing degree tuple) of a matrix whose primary
/// blocks are all squarefree; a repeated block is a domain error.
pub fn frobenius_type(a: &FpMatrix) -> Result<FrobeniusType, Error> {
    let blocks = frobenius_decompose(a)?;
    let mut degrees = Vec::new();
    for (poly, k) in blocks {
        if k != 1 {
            return Err(Error::domain("frobenius_type: repeated block"));
        }
        degrees.push(poly.degree() as u32);
    }
    degrees.sort_unstable();
    Ok(FrobeniusType(degrees))
}

/// Order of an invertible matrix over F_p through its primary blocks:
/// the lcm of `ord(P) * p^(ceil(log_p k))` over the blocks.
pub fn matrix_order(a: &FpMatrix) -> Result<u64, Error> {
    let mut ord = 1u64;
    for (poly, k) in frobenius_decompose(a)? {
        ord = lcm(ord, ffpoly::irreducible_block_order(&poly, k)?);
    }
    Ok(ord)
}

/// Result of the largest-cycle split through an admissible kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCheck {
    /// Length of the induced cycle on the quotient.
    pub quotient_len: u64,
    /// Complementary cycle length inside the kernel coset.
    pub kernel_len: u64,
    /// Whether Lambda = L * l and lambda = (L/|G/N|)(l/|N|) both hold.
    pub verified: bool,
}

/// Splits the largest cycle of a periodic affine map through the
/// admissible subgroup `N = ker(reduction to exponents f)` and verifies
/// the product identity exactly. Requires `f_i <= e_i`; a kernel not
/// preserved by the map is a domain error.
pub fn transfer_check(map: &AffineOnP, f: &[u32]) -> Result<TransferCheck, Error> {
    let group = map.group().clone();
    let e = group.exponents();
    if f.len() != e.len() || f.iter().zip(e).any(|(&a, &b)| a > b) {
        return Err(Error::domain("transfer_check: need f_i <= e_i"));
    }
    let p = group.prime();
    let moduli = group.moduli()?;
    let quotient_moduli: Vec<u64> = f.iter().map(|&fi| p.pow(fi)).collect();
    let n = e.len();
    // Admissibility: the image of each kernel generator p^(f_i) v_i must
    // have all coordinates divisible by the matching p^(f_j).
    for i in 0..n {
        for j in 0..n {
            let entry = map.endo.get(j, i) as u128 * p.pow(f[i]) as u128;
            if entry % quotient_moduli[j] as u128 != 0 {
                return Err(Error::domain(
                    "transfer_check: kernel is not admissible under the map",
                ));
            }
        }
    }
    let order = group.order()?;
    if order > ORBIT_CAP {
        return Err(Error::capacity("transfer_check: group too large"));
    }
    let cs = map.cycle_structure(ORBIT_CAP)?;
    let lambda_big = cs.lambda_big();
    let apply_idx = |idx: u64| -> u64 {
        let coords = group.decode(idx, &moduli);
        group.encode(&map.apply(&coords, &moduli), &moduli)
    };
    // Find an element on a largest cycle.
    let mut seen = vec![false; order as usize];
    let mut anchor = 0u64;
    for start in 0..order {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        loop {
            seen[x as usize] = true;
            len += 1;
            x = apply_idx(x);
            if x == start {
                break;
            }
        }
        if len == lambda_big {
            anchor = start;
            break;
        }
    }
    // L: least k >= 1 with A^k(anchor) = anchor modulo the kernel.
    let project = |idx: u64| -> Vec<u64> {
        group
            .decode(idx, &moduli)
            .iter()
            .zip(&quotient_moduli)
            .map(|(&c, &m)| c % m)
            .collect()
    };
    let anchor_proj = project(anchor);
    let mut x = apply_idx(anchor);
    let mut quotient_len = 1u64;
    while project(x) != anchor_proj {
        x = apply_idx(x);
        quotient_len += 1;
    }
    // n0 = A^L(anchor) - anchor lies in N; l is the cycle length of the
    // identity under y -> n0 + alpha^L(y), iterated inside N.
    let xl = group.decode(x, &moduli);
    let base = group.decode(anchor, &moduli);
    let n0: Vec<u64> = xl
        .iter()
        .zip(&base)
        .zip(&moduli)
        .map(|((&a, &b), &m)| (a + m - b) % m)
        .collect();
    let mut y = n0.clone();
    let mut kernel_len = 1u64;
    while y.iter().any(|&c| c != 0) {
        let mut iterate = y.clone();
        for _ in 0..quotient_len {
            iterate = map.endo.apply(&iterate, &moduli);
        }
        y = iterate
            .iter()
            .zip(&n0)
            .zip(&moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        kernel_len += 1;
        if kernel_len > order {
            return Err(Error::domain("transfer_check: kernel cycle failed to close"));
        }
    }
    let kernel_size: u64 = e.iter().zip(f).map(|(&ei, &fi)| p.pow(ei - fi)).product();
    let quotient_size = order / kernel_size;
    let verified = quotient_len * kernel_len == lambda_big
        && rat_u64(quotient_len, quotient_size) * rat_u64(kernel_len, kernel_size)
            == cs.lambda();
    Ok(TransferCheck { quotient_len, kernel_len, verified })
}

/// Exact check of the affine order formula: the order of `x -> g0 + A x`
/// equals `ord(f) * ord(A)` with `f = g0 + A g0 + ... + A^(ord(A)-1) g0`.
pub fn affine_order_check(
    g0: &[u64],
    alpha: &EndoMatrix,
    cap: u64,
) -> Result<(u64, u64, bool), Error> {
    let group = alpha.group().clone();
    let moduli = group.moduli()?;
    let ord_alpha = alpha.order(cap)?;
    let mut f = vec![0u64; group.rank()];
    let mut power = g0.to_vec();
    for _ in 0..ord_alpha {
        for ((fi, &pi), &m) in f.iter_mut().zip(&power).zip(&moduli) {
            *fi = (*fi + pi) % m;
        }
        power = alpha.apply(&power, &moduli);
    }
    let ord_f = f
        .iter()
        .zip(&moduli)
        .fold(1u64, |acc, (&c, &m)| lcm(acc, m / gcd(c, m)));
    let predicted = ord_f * ord_alpha;
    let map = AffineOnP::new(g0.to_vec(), alpha.clone())?;
    let actual = map.cycle_structure(cap)?.order();
    Ok((predicted, actual, predicted == actual))
}

/// All automorphisms of a dihedral or dicyclic group as concrete maps.
///
/// For n >= 3 with (n, dicyclic) != (4, true) the rotation subgroup is the
/// unique cyclic subgroup of order n, hence characteristic, and every
/// automorphism is r -> r^s (s a unit mod n), x -> x r^t. The quaternion
/// case is handled by exhaustive search over generator images.
pub fn dihedral_automorphisms(n: u64, dicyclic: bool) -> Result<Vec<FiniteMap>, Error> {
    if n < 3 || (dicyclic && n % 2 != 0) {
        return Err(Error::domain("dihedral_automorphisms: bad parameters"));
    }
    let group = GroupRep::Dihedral { n, dicyclic };
    let mut out = Vec::new();
    if dicyclic && n == 4 {
        let size = group.size();
        for r_img in 0..size {
            for x_img in 0..size {
                if let Some(map) = map_from_generator_images(&group, n, r_img, x_img) {
                    out.push(map);
                }
            }
        }
        return Ok(out);
    }
    for s in (1..n).filter(|&s| gcd(s, n) == 1) {
        for t in 0..n {
            let table: Vec<u64> = (0..group.size())
                .map(|idx| {
                    let (i, f) = (idx % n, idx / n);
                    let si = (i as u128 * s as u128 % n as u128) as u64;
                    if f == 0 {
                        si
                    } else {
                        // r^i x -> r^(s i) x r^t = r^(s i - t) x
                        (si + n - t) % n + n
                    }
                })
                .collect();
            out.push(FiniteMap { group: group.clone(), map: table });
        }
    }
    Ok(out)
}

/// Builds the map determined by images of r and x, keeping it only when
/// it is a bijective homomorphism.
fn map_from_generator_images(
    group: &GroupRep,
    n: u64,
    r_img: u64,
    x_img: u64,
) -> Option<FiniteMap> {
    let size = group.size();
    let mut table = vec![0u64; size as usize];
    for idx in 0..size {
        let (i, f) = (idx % n, idx / n);
        let mut img = group.id();
        for _ in 0..i {
            img = group.mul(img, r_img);
        }
        if f == 1 {
            img = group.mul(img, x_img);
        }
        table[idx as usize] = img;
    }
    let map = FiniteMap { group: group.clone(), map: table };
    if !map.is_periodic() || !map.is_homomorphism() {
        return None;
    }
    Some(map)
}

/// All automorphisms of the Klein-extended families.
///
/// The abelian index-2 subgroup, its Klein part, and the odd rotation
/// subgroup are all characteristic, so every automorphism is determined
/// by a linear Klein-part map, a unit rotation power s, and the image
/// `r1^f1 r2^f2 r^t x` of x. Candidates respect the abelian relations by
/// construction; the two x-relations are checked explicitly.
pub fn klein_automorphisms(o: u64, dicyclic: bool) -> Result<Vec<FiniteMap>, Error> {
    if o < 3 || o % 2 == 0 {
        return Err(Error::domain("klein_automorphisms: need odd o >= 3"));
    }
    let group = GroupRep::KleinDihedral { o, dicyclic };
    let mut out = Vec::new();
    let klein_elts = [(1u64, 0u64), (0, 1), (1, 1)];
    for &(a1, a2) in &klein_elts {
        for &(b1, b2) in &klein_elts {
            if (a1, a2) == (b1, b2) {
                continue;
            }
            for s in (1..o).filter(|&s| gcd(s, o) == 1) {
                for f1 in 0..2u64 {
                    for f2 in 0..2u64 {
                        for t in 0..o {
                            let build = |e1: u64, e2: u64, i: u64, f: u64| -> u64 {
                                let k1 = (e1 * a1 + e2 * b1 + f * f1) % 2;
                                let k2 = (e1 * a2 + e2 * b2 + f * f2) % 2;
                                let rot =
                                    ((i as u128 * s as u128 + (f * t) as u128) % o as u128) as u64;
                                klein_encode(k1, k2, rot, f, o)
                            };
                            // Relation checks: conjugation of r, r1, r2 by
                            // x, and the value of x^2, must be respected.
                            let x_im = build(0, 0, 0, 1);
                            let x_im_inv = group.inv(x_im);
                            let r_im = build(0, 0, 1, 0);
                            let conj = group.mul(group.mul(x_im, r_im), x_im_inv);
                            if conj != group.inv(r_im) {
                                continue;
                            }
                            let r1_im = build(1, 0, 0, 0);
                            let r2_im = build(0, 1, 0, 0);
                            if group.mul(group.mul(x_im, r1_im), x_im_inv) != r1_im
                                || group.mul(group.mul(x_im, r2_im), x_im_inv) != r2_im
                            {
                                continue;
                            }
                            let xx = group.mul(x_im, x_im);
                            let expected = if dicyclic {
                                build(1, 1, 0, 0)
                            } else {
                                group.id()
                            };
                            if xx != expected {
                                continue;
                            }
                            let table: Vec<u64> = (0..group.size())
                                .map(|idx| {
                                    let (e1, e2, i, f) = klein_decode(idx, o);
                                    build(e1, e2, i, f)
                                })
                                .collect();
                            let map = FiniteMap { group: group.clone(), map: table };
                            if map.is_periodic() {
                                out.push(map);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for FdgSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FdgSpec::M { m, a } => write!(f, "M({m},{a})"),
            FdgSpec::VPoly { poly } => {
                write!(f, "V({})", poly.to_string().replace(" mod ", "@"))
            }
            FdgSpec::VMod { m, rows } => write!(f, "V({m},{})", fmt_rows(rows)),
            FdgSpec::GenericAbelian { group, rows } => {
                let body: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                write!(f, "GA({group};[{}])", body.join(","))
            }
            FdgSpec::Dihedral { n, m } => write!(f, "Dih({n},{m})"),
            FdgSpec::Dicyclic { n, m } => write!(f, "Dic({n},{m})"),
            FdgSpec::DKlein { o, m } => write!(f, "DK({o},{m})"),
            FdgSpec::DicKlein { o, m } => write!(f, "DicK({o},{m})"),
            FdgSpec::Product(parts) => {
                let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", body.join(" * "))
            }
        }
    }
}

fn fmt_rows(rows: &[Vec<u64>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", body.join(","))
}

/// Parses the spec syntax: `M(m,a)`, `V(poly@p)`, `V(m,[[..],[..]])`,
/// `GA(group;[[..]])`, `Dih(n,m)`, `Dic(n,m)`, `DK(o,m)`, `DicK(o,m)`,
/// joined by `*` for products.
pub fn parse_spec(input: &str) -> Result<FdgSpec, Error> {
    let parts = split_top_level(input, '*');
    if parts.len() > 1 {
        let specs = parts
            .iter()
            .map(|p| parse_spec(p))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(FdgSpec::Product(specs));
    }
    let tok = input.trim();
    let open = tok
        .find('(')
        .ok_or_else(|| Error::parse(format!("bad spec '{tok}'")))?;
    if !tok.ends_with(')') {
        return Err(Error::parse(format!("bad spec '{tok}'")));
    }
    let head = tok[..open].trim();
    let body = &tok[open + 1..tok.len() - 1];
    match head {
        "M" => {
            let (m, a) = parse_pair(body)?;
            Ok(FdgSpec::M { m, a })
        }
        "V" => {
            let args = split_top_level(body, ',');
            if args.len() == 1 {
                Ok(FdgSpec::VPoly { poly: ffpoly::parse_poly(&args[0])? })
            } else {
                let m = parse_u64(&args[0])?;
                let rows = parse_matrix_u64(&args[1..].join(","))?;
                Ok(FdgSpec::VMod { m, rows })
            }
        }
        "GA" => {
            let segs: Vec<&str> = body.splitn(2, ';').collect();
            if segs.len() != 2 {
                return Err(Error::parse("GA takes (group; matrix)"));
            }
            let group = crate::abelian::parse_group(segs[0])?;
            let rows = parse_matrix_u64(segs[1])?
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as i64).collect())
                .collect();
            Ok(FdgSpec::GenericAbelian { group, rows })
        }
        "Dih" => {
            let (n, m) = parse_pair(body)?;
            Ok(FdgSpec::Dihedral { n, m })
        }
        "Dic" => {
            let (n, m) = parse_pair(body)?;
            Ok(FdgSpec::Dicyclic { n, m })
        }
        "DK" => {
            let (o, m) = parse_pair(body)?;
            Ok(FdgSpec::DKlein { o, m })
        }
        "DicK" => {
            let (o, m) = parse_pair(body)?;
            Ok(FdgSpec::DicKlein { o, m })
        }
        _ => Err(Error::parse(format!("unknown spec head '{head}'"))),
    }
}

fn parse_u64(s: &str) -> Result<u64, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad integer '{s}'")))
}

fn parse_pair(body: &str) -> Result<(u64, u64), Error> {
    let args = split_top_level(body, ',');
    if args.len() != 2 {
        return Err(Error::parse("expected two integer arguments"));
    }
    Ok((parse_u64(&args[0])?, parse_u64(&args[1])?))
}

fn parse_matrix_u64(s: &str) -> Result<Vec<Vec<u64>>, Error> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse("matrix must be [[..],[..]]"))?;
    let mut rows = Vec::new();
    for row in split_top_level(inner, ',') {
        let row = row.trim();
        let cells = row
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse("matrix row must be [..]"))?;
        let parsed: Result<Vec<u64>, _> =
            cells.split(',').map(|c| c.trim().parse::<u64>()).collect();
        rows.push(parsed.map_err(|_| Error::parse("bad matrix entry"))?);
    }
    Ok(rows)
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out.retain(|t| !t.is_empty());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn group_rep_axioms() {
        let reps = vec![
            GroupRep::Abelian { moduli: vec![2, 4] },
            GroupRep::Dihedral { n: 6, dicyclic: false },
            GroupRep::Dihedral { n: 4, dicyclic: true }, // Q8
            GroupRep::Dihedral { n: 6, dicyclic: true },
            GroupRep::KleinDihedral { o: 3, dicyclic: false },
            GroupRep::KleinDihedral { o: 3, dicyclic: true },
        ];
        for g in reps {
            let n = g.size();
            for a in 0..n {
                assert_eq!(g.mul(a, g.id()), a);
                assert_eq!(g.mul(g.id(), a), a);
                assert_eq!(g.mul(a, g.inv(a)), g.id(), "{g:?} a={a}");
                assert_eq!(g.mul(g.inv(a), a), g.id());
            }
            for a in 0..n.min(13) {
                for b in 0..n.min(13) {
                    for c in 0..n.min(13) {
                        assert_eq!(
                            g.mul(g.mul(a, b), c),
                            g.mul(a, g.mul(b, c)),
                            "{g:?} {a} {b} {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn q8_structure() {
        // Dic with n = 4 is the quaternion group: one element of order 2.
        let g = GroupRep::Dihedral { n: 4, dicyclic: true };
        let orders: Vec<u64> = (0..8).map(|a| g.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
    }

    #[test]
    fn evaluate_examples() {
        // M(4,3): cycle type {1,1,2}, lambda 1/2.
        let m = evaluate(&FdgSpec::M { m: 4, a: 3 }, ORBIT_CAP).unwrap();
        let cs = m.cycle_structure().unwrap();
        assert_eq!(cs.pairs(), &[(1, 2), (2, 1)]);
        assert_eq!(cs.lambda(), rat(1, 2));
        // V(x^2+x+1@2): one fixed point plus one 3-cycle.
        let v = evaluate(&parse_spec("V(x^2+x+1@2)").unwrap(), ORBIT_CAP).unwrap();
        let cs = v.cycle_structure().unwrap();
        assert_eq!(cs.pairs(), &[(1, 1), (3, 1)]);
        assert_eq!(cs.lambda(), rat(3, 4));
        // Dihedral(3,1): the three reflections in one cycle, lambda 1/2.
        let d = evaluate(&FdgSpec::Dihedral { n: 3, m: 1 }, ORBIT_CAP).unwrap();
        assert!(d.is_homomorphism());
        let cs = d.cycle_structure().unwrap();
        assert_eq!(cs.lambda(), rat(1, 2));
        assert_eq!(cs.lambda_big(), 3);
    }

    #[test]
    fn family_maps_are_homomorphisms() {
        for spec in [
            FdgSpec::Dihedral { n: 5, m: 1 },
            FdgSpec::Dihedral { n: 12, m: 5 },
            FdgSpec::Dicyclic { n: 8, m: 1 },
            // m = 3 is not a unit mod 6: an endomorphism, not an automorphism
            FdgSpec::Dicyclic { n: 6, m: 3 },
            FdgSpec::DKlein { o: 9, m: 4 },
            FdgSpec::DicKlein { o: 9, m: 4 },
            FdgSpec::DKlein { o: 3, m: 1 },
            FdgSpec::DicKlein { o: 3, m: 1 },
        ] {
            let map = evaluate(&spec, ORBIT_CAP).unwrap();
            assert!(map.is_homomorphism(), "{spec}");
        }
    }

    #[test]
    fn lambda_half_families() {
        // With the multiplier congruences satisfied, lambda is exactly 1/2.
        for (spec, expect_order) in [
            (FdgSpec::Dihedral { n: 3, m: 1 }, 6),
            (FdgSpec::Dihedral { n: 9, m: 4 }, 18),
            (FdgSpec::Dihedral { n: 8, m: 5 }, 16),
            (FdgSpec::Dicyclic { n: 8, m: 5 }, 16),
            (FdgSpec::Dicyclic { n: 4, m: 1 }, 8),
            (FdgSpec::DKlein { o: 9, m: 4 }, 72),
            (FdgSpec::DicKlein { o: 15, m: 1 }, 120),
        ] {
            let map = evaluate(&spec, ORBIT_CAP).unwrap();
            assert_eq!(map.size(), expect_order);
            assert!(map.is_homomorphism(), "{spec}");
            assert_eq!(map.lambda().unwrap(), rat(1, 2), "{spec}");
        }
    }

    #[test]
    fn product_lambda_examples() {
        // V(x^2+x+1@2) * M(3,2): Lambda 3 and 2 coprime, lambda (3/4)(2/3).
        let spec = parse_spec("V(x^2+x+1@2) * M(3,2)").unwrap();
        let map = evaluate(&spec, ORBIT_CAP).unwrap();
        assert_eq!(map.lambda().unwrap(), rat(1, 2));
        match lambda_product(&[(rat(3, 4), 3), (rat(2, 3), 2)]) {
            ProductLambda::Exact(l) => assert_eq!(l, rat(1, 2)),
            other => panic!("expected exact: {other:?}"),
        }
        // Trivial factor leaves lambda unchanged.
        let spec = parse_spec("V(x^2+x+1@2) * M(1,0)").unwrap();
        let map = evaluate(&spec, ORBIT_CAP).unwrap();
        assert_eq!(map.lambda().unwrap(), rat(3, 4));
        // Non-coprime factors: concrete join on 16 elements.
        let spec = parse_spec("V(x^2+x+1@2) * V(x^2+x+1@2)").unwrap();
        let map = evaluate(&spec, ORBIT_CAP).unwrap();
        let direct = map.cycle_structure().unwrap();
        assert_eq!(direct.lambda(), rat(3, 16));
        match lambda_product(&[(rat(3, 4), 3), (rat(3, 4), 3)]) {
            ProductLambda::UpperBound(b) => {
                assert_eq!(b, rat(9, 32));
                assert!(direct.lambda() <= b);
            }
            other => panic!("expected bound: {other:?}"),
        }
    }

    #[test]
    fn frobenius_examples() {
        // companion((x-1)^2) over F_2 is a single (x+1, 2) block.
        let sq = ffpoly::parse_poly("x^2+1 mod 2").unwrap();
        let c = companion(&sq).unwrap();
        let xp1 = ffpoly::parse_poly("x+1 mod 2").unwrap();
        assert_eq!(frobenius_decompose(&c).unwrap(), vec![(xp1, 2)]);
        // Block diagonal of distinct irreducible companions.
        let p1 = ffpoly::parse_poly("x^2+x+1 mod 2").unwrap();
        let p2 = ffpoly::parse_poly("x^3+x+1 mod 2").unwrap();
        let mut m = FpMatrix::zero(2, 5);
        let c1 = companion(&p1).unwrap();
        let c2 = companion(&p2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, c1.get(i, j));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                m.set(2 + i, 2 + j, c2.get(i, j));
            }
        }
        assert_eq!(frobenius_decompose(&m).unwrap(), vec![(p1, 1), (p2, 1)]);
        assert_eq!(frobenius_type(&m).unwrap(), FrobeniusType(vec![2, 3]));
        assert!(frobenius_decompose(&FpMatrix::zero(2, 3)).is_err());
    }

    #[test]
    fn frobenius_conjugation_invariance() {
        let p = ffpoly::parse_poly("x^3+x+1 mod 2").unwrap();
        let c = companion(&p).unwrap();
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut step = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut found = 0;
        while found < 20 {
            let entries: Vec<u64> = (0..9).map(|_| step() % 2).collect();
            let t = FpMatrix::new(2, 3, entries).unwrap();
            if !t.is_invertible() {
                continue;
            }
            found += 1;
            let t_inv = t.pow(matrix_order(&t).unwrap() - 1);
            let conj = t.mul(&c).mul(&t_inv);
            assert_eq!(frobenius_decompose(&conj).unwrap(), vec![(p.clone(), 1)]);
        }
    }

    #[test]
    fn matrix_order_examples() {
        assert_eq!(matrix_order(&FpMatrix::identity(3, 4)).unwrap(), 1);
        // companion((x-1)^3) over F_2 has order 4.
        let cube = ffpoly::parse_poly("x^3+x^2+x+1 mod 2").unwrap();
        assert_eq!(matrix_order(&companion(&cube).unwrap()).unwrap(), 4);
        // Primitive degree-d companion over F_2 has order 2^d - 1.
        for d in [2u32, 3, 4, 5, 6] {
            let p = ffpoly::first_primitive(2, d).unwrap();
            let c = companion(&p).unwrap();
            assert_eq!(matrix_order(&c).unwrap(), (1u64 << d) - 1);
        }
    }

    #[test]
    fn matrix_order_matches_powering_seeded() {
        let mut rng = 0xdeadbeefcafef00du64;
        let mut step = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut checked = 0;
        for &p in &[2u64, 3, 5] {
            for n in 2..=6usize {
                let mut tries = 0;
                while tries < 30 {
                    tries += 1;
                    let entries: Vec<u64> = (0..n * n).map(|_| step() % p).collect();
                    let a = FpMatrix::new(p, n, entries).unwrap();
                    if !a.is_invertible() {
                        continue;
                    }
                    let fast = matrix_order(&a).unwrap();
                    let slow = a.order_by_powering(1_000_000).unwrap();
                    assert_eq!(fast, slow);
                    checked += 1;
                }
            }
        }
        assert!(checked >= 200, "only {checked} invertible samples");
    }

    #[test]
    fn transfer_examples() {
        use crate::abelian::AbelianPGroup;
        // G = Z/9, alpha = x2, N = 3Z/9: L = 2, l = 3, Lambda = 6.
        let g = AbelianPGroup::new(3, vec![2]).unwrap();
        let alpha = EndoMatrix::new(g.clone(), &[vec![2]]).unwrap();
        let map = AffineOnP::from_endo(alpha);
        let t = transfer_check(&map, &[1]).unwrap();
        assert_eq!((t.quotient_len, t.kernel_len), (2, 3));
        assert!(t.verified);
        // N = {1}: L = Lambda, l = 1.
        let t = transfer_check(&map, &[2]).unwrap();
        assert_eq!((t.quotient_len, t.kernel_len), (6, 1));
        assert!(t.verified);
    }

    #[test]
    fn affine_order_examples() {
        use crate::abelian::AbelianPGroup;
        let g = AbelianPGroup::new(3, vec![2]).unwrap();
        let alpha = EndoMatrix::new(g.clone(), &[vec![2]]).unwrap();
        let (pred, actual, ok) = affine_order_check(&[0], &alpha, 1 << 16).unwrap();
        assert!(ok);
        assert_eq!(pred, actual);
        // Identity with generator translation: ord = n.
        let id = EndoMatrix::identity(g.clone());
        let (pred, actual, ok) = affine_order_check(&[1], &id, 1 << 16).unwrap();
        assert!(ok);
        assert_eq!((pred, actual), (9, 9));
        // Exhaustive over Z/2 x Z/4: all (g0, alpha) pairs agree.
        let g = AbelianPGroup::new(2, vec![1, 2]).unwrap();
        for alpha in crate::abelian::enum_autos(&g, 10_000).unwrap() {
            for idx in 0..8u64 {
                let coords = vec![idx % 2, idx / 2];
                let (_, _, ok) = affine_order_check(&coords, &alpha, 1 << 16).unwrap();
                assert!(ok);
            }
        }
    }

    #[test]
    fn dihedral_automorphism_counts() {
        // |Aut(D_2n)| = n phi(n) for n >= 3.
        for n in [3u64, 5, 6, 12] {
            let autos = dihedral_automorphisms(n, false).unwrap();
            let phi = crate::numtheory::euler_phi(n).unwrap();
            assert_eq!(autos.len() as u64, n * phi);
            for a in autos.iter().take(6) {
                assert!(a.is_homomorphism());
                assert!(a.is_periodic());
            }
        }
        // Q8: |Aut| = 24.
        assert_eq!(dihedral_automorphisms(4, true).unwrap().len(), 24);
    }

    #[test]
    fn klein_automorphism_sanity() {
        for dic in [false, true] {
            let autos = klein_automorphisms(3, dic).unwrap();
            assert!(!autos.is_empty());
            for a in &autos {
                assert!(a.is_homomorphism(), "dic={dic}");
            }
            // The family map with valid m appears among them.
            let spec = if dic {
                FdgSpec::DicKlein { o: 3, m: 1 }
            } else {
                FdgSpec::DKlein { o: 3, m: 1 }
            };
            let fam = evaluate(&spec, ORBIT_CAP).unwrap();
            assert!(autos.iter().any(|a| a.map == fam.map));
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "M(7,3)",
            "V(x^3+x+1@2)",
            "Dih(12,5)",
            "Dic(8,1)",
            "DK(9,4)",
            "DicK(9,4)",
            "V(x^3+x+1@2) * M(7,3)",
        ] {
            let spec = parse_spec(s).unwrap();
            assert_eq!(spec.to_string(), s, "{s}");
            assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
        let vm = parse_spec("V(4,[[1,1],[2,1]])").unwrap();
        assert_eq!(vm, FdgSpec::VMod { m: 4, rows: vec![vec![1, 1], vec![2, 1]] });
    }
}
