//! Square matrices over prime fields: arithmetic, rank and kernel
//! dimension, characteristic polynomial, and companion matrices.

use crate::error::Error;
use crate::ffpoly::FpPoly;
use crate::numtheory::mul_mod;

/// A square matrix over F_p, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    n: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn new(p: u64, n: usize, entries: Vec<u64>) -> Result<Self, Error> {
        if entries.len() != n * n {
            return Err(Error::domain("FpMatrix: entry count must be n*n"));
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, n, entries })
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("FpMatrix: rows must form a square"));
        }
        FpMatrix::new(p, n, rows.concat())
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FpMatrix { p, n, entries }
    }

    pub fn zero(p: u64, n: usize) -> Self {
        FpMatrix { p, n, entries: vec![0; n * n] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v % self.p;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let n = self.n;
        let p = self.p;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if b != 0 {
                        out[i * n + j] = (out[i * n + j] + mul_mod(a, b, p)) % p;
                    }
                }
            }
        }
        FpMatrix { p, n, entries: out }
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix { p: self.p, n: self.n, entries }
    }

    pub fn scale(&self, k: u64) -> FpMatrix {
        let entries = self
            .entries
            .iter()
            .map(|&a| mul_mod(a, k % self.p, self.p))
            .collect();
        FpMatrix { p: self.p, n: self.n, entries }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let p = self.p;
        (0..n)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..n {
                    acc = (acc + mul_mod(self.entries[i * n + j], v[j] % p, p)) % p;
                }
                acc
            })
            .collect()
    }

    /// Rank by Gaussian elimination (F_p is a field, so pivots invert).
    pub fn rank(&self) -> usize {
        let p = self.p;
        let n = self.n;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m[r * n + col] != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..n {
                m.swap(rank * n + j, pr * n + j);
            }
            let inv = crate::numtheory::pow_mod(m[rank * n + col], p - 2, p);
            for j in 0..n {
                m[rank * n + j] = mul_mod(m[rank * n + j], inv, p);
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        let sub = mul_mod(f, m[rank * n + j], p);
                        m[r * n + j] = (m[r * n + j] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Characteristic polynomial det(xI - A) by the Berkowitz algorithm:
    /// division free, so no pivoting concerns, exact over F_p.
    pub fn char_poly(&self) -> FpPoly {
        let n = self.n;
        let p = self.p;
        if n == 0 {
            return FpPoly::one(p);
        }
        // Berkowitz: iteratively build the coefficient vector via Toeplitz
        // products. Work with polynomials as coefficient vectors, highest
        // degree first, using signed arithmetic realized mod p.
        let neg = |x: u64| (p - x % p) % p;
        // c holds coefficients of char poly of leading principal minor,
        // highest first. Start with 1x1 minor: x - a00.
        let mut c: Vec<u64> = vec![1, neg(self.get(0, 0))];
        for k in 1..n {
            // R = row (a_k0 .. a_k,k-1), S = column (a_0k .. a_k-1,k),
            // M = leading k x k minor.
            let s: Vec<u64> = (0..k).map(|i| self.get(i, k)).collect();
            let r: Vec<u64> = (0..k).map(|j| self.get(k, j)).collect();
            let m_rows: Vec<Vec<u64>> = (0..k)
                .map(|i| (0..k).map(|j| self.get(i, j)).collect())
                .collect();
            // toep[t] for t = 0..k+1: coefficients of the Toeplitz column:
            // 1, -a_kk, -(R S), -(R M S), -(R M^2 S), ...
            let mut toep: Vec<u64> = Vec::with_capacity(k + 2);
            toep.push(1);
            toep.push(neg(self.get(k, k)));
            let mut vs = s.clone();
            for _ in 0..k {
                // r . vs
                let mut dot = 0u64;
                for (a, b) in r.iter().zip(&vs) {
                    dot = (dot + mul_mod(*a, *b, p)) % p;
                }
                toep.push(neg(dot));
                // vs = M vs
                let mut nvs = vec![0u64; k];
                for (i, nv) in nvs.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for j in 0..k {
                        acc = (acc + mul_mod(m_rows[i][j], vs[j], p)) % p;
                    }
                    *nv = acc;
                }
                vs = nvs;
            }
            // New coefficient vector: convolution c'[i] = sum_j toep[j] * c[i-j].
            let mut nc = vec![0u64; c.len() + 1];
            for (i, &cv) in c.iter().enumerate() {
                if cv == 0 {
                    continue;
                }
                for (j, &tv) in toep.iter().enumerate() {
                    if i + j < nc.len() && tv != 0 {
                        nc[i + j] = (nc[i + j] + mul_mod(cv, tv, p)) % p;
                    }
                }
            }
            c = nc;
        }
        // c is highest-degree first; FpPoly wants lowest first.
        c.reverse();
        FpPoly::new(p, c).expect("prime modulus")
    }

    /// Evaluates the polynomial at the matrix: q(A).
    pub fn eval_poly(&self, q: &FpPoly) -> FpMatrix {
        assert_eq!(self.p, q.modulus());
        let mut acc = FpMatrix::zero(self.p, self.n);
        for &c in q.coeffs().iter().rev() {
            acc = acc.mul(self);
            if c != 0 {
                for i in 0..self.n {
                    acc.entries[i * self.n + i] = (acc.entries[i * self.n + i] + c) % self.p;
                }
            }
        }
        acc
    }

    /// Multiplicative order by direct powering; errors past `cap`.
    pub fn order_by_powering(&self, cap: u64) -> Result<u64, Error> {
        if !self.is_invertible() {
            return Err(Error::domain("order_by_powering: singular matrix"));
        }
        let id = FpMatrix::identity(self.p, self.n);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
            if k > cap {
                return Err(Error::capacity("order_by_powering: cap exceeded"));
            }
        }
        Ok(k)
    }
}

/// The companion matrix of a monic polynomial: ones on the subdiagonal,
/// the negated coefficients down the last column, zero elsewhere.
pub fn companion(poly: &FpPoly) -> Result<FpMatrix, Error> {
    if !poly.is_monic() {
        return Err(Error::domain("companion: polynomial must be monic"));
    }
    let d = poly.degree();
    if d == 0 {
        return Err(Error::domain("companion: need degree >= 1"));
    }
    let p = poly.modulus();
    let mut m = FpMatrix::zero(p, d);
    for i in 1..d {
        m.set(i, i - 1, 1);
    }
    for i in 0..d {
        let c = poly.coeffs()[i];
        m.set(i, d - 1, (p - c) % p);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;

    #[test]
    fn companion_examples() {
        // x - 1 over F_2: the 1x1 identity.
        let c = companion(&parse_poly("x+1 mod 2").unwrap()).unwrap();
        assert_eq!(c, FpMatrix::identity(2, 1));
        // x^2+x+1 over F_2: [[0,1],[1,1]].
        let c = companion(&parse_poly("x^2+x+1 mod 2").unwrap()).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 1], vec![1, 1]]);
        // (x-2)^2 = x^2-4x+4 = x^2+2x+1 over F_3: [[0,-1],[1,-2]] = [[0,2],[1,1]].
        let sq = parse_poly("x^2+2x+1 mod 3").unwrap();
        let c = companion(&sq).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 2], vec![1, 1]]);
        assert!(companion(&parse_poly("2x+1 mod 3").unwrap()).is_err());
    }

    #[test]
    fn char_poly_of_companion_is_the_polynomial() {
        for s in [
            "x^2+x+1 mod 2",
            "x^3+x+1 mod 2",
            "x^4+x^3+x^2+x+1 mod 2",
            "x^2+2x+2 mod 3",
            "x^3+x+2 mod 5",
        ] {
            let q = parse_poly(s).unwrap();
            let c = companion(&q).unwrap();
            assert_eq!(c.char_poly(), q, "{s}");
        }
    }

    #[test]
    fn rank_and_kernel() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
        assert!(!m.is_invertible());
        assert!(FpMatrix::identity(5, 3).is_invertible());
    }

    #[test]
    fn companion_order_matches_poly_order() {
        // ord(M(P)) = ord(P) for P with nonzero constant term.
        for s in [
            "x^2+x+1 mod 2",
            "x^4+x+1 mod 2",
            "x^4+x^3+x^2+x+1 mod 2",
            "x^2+1 mod 3",
            "x^2+2x+1 mod 3",
        ] {
            let q = parse_poly(s).unwrap();
            let c = companion(&q).unwrap();
            assert_eq!(
                c.order_by_powering(100_000).unwrap(),
                q.order().unwrap(),
                "{s}"
            );
        }
    }
}
