//! Exact dense linear algebra over prime fields: characteristic and minimal
//! polynomials, eigenvalue-1 tests, fixed-space dimension, and the
//! multiplicative Jordan decomposition.

use crate::arith::{factorize, inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::poly::PolynomialModP;
use std::fmt;

/// Dense square matrix over F_p, row-major, entries reduced at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixModP {
    modulus: u64,
    n: usize,
    entries: Vec<u64>,
}

impl MatrixModP {
    pub fn new(modulus: u64, n: usize, entries: Vec<u64>) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        assert_eq!(entries.len(), n * n, "entry count must be n*n");
        if let Some(&bad) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::EntryOutOfRange { value: bad, modulus });
        }
        Ok(MatrixModP { modulus, n, entries })
    }

    pub fn from_rows(modulus: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend_from_slice(row);
        }
        Self::new(modulus, n, entries)
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        MatrixModP { modulus, n, entries }
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(poly: &PolynomialModP) -> Self {
        assert!(poly.is_monic(), "companion matrix needs a monic polynomial");
        let p = poly.modulus;
        let n = poly.degree();
        let mut m = MatrixModP { modulus: p, n, entries: vec![0; n * n] };
        for i in 1..n {
            m.entries[i * n + (i - 1)] = 1;
        }
        for i in 0..n {
            m.entries[i * n + (n - 1)] = (p - poly.coeff(i)) % p;
        }
        m
    }

    /// Permutation matrix of an n-cycle: e_j -> e_{j+1 mod n}.
    pub fn cycle(modulus: u64, n: usize) -> Self {
        let mut m = MatrixModP { modulus, n, entries: vec![0; n * n] };
        for j in 0..n {
            m.entries[((j + 1) % n) * n + j] = 1;
        }
        m
    }

    pub fn diagonal(modulus: u64, diag: &[u64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = vec![0; n * n];
        for (i, &v) in diag.iter().enumerate() {
            entries[i * n + i] = v;
        }
        Self::new(modulus, n, entries)
    }

    /// Block-diagonal assembly; all blocks must share the modulus.
    pub fn block_diagonal(blocks: &[MatrixModP]) -> Self {
        let modulus = blocks[0].modulus;
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries = vec![0; n * n];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.modulus, modulus);
            for i in 0..b.n {
                for j in 0..b.n {
                    entries[(off + i) * n + (off + j)] = b.entries[i * b.n + j];
                }
            }
            off += b.n;
        }
        MatrixModP { modulus, n, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.modulus);
        self.entries[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.modulus, other.modulus);
        let (n, p) = (self.n, self.modulus);
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + mul_mod(a, other.entries[k * n + j], p)) % p;
                }
            }
        }
        MatrixModP { modulus: p, n, entries: out }
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.modulus, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let (n, p) = (self.n, self.modulus);
        (0..n)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..n {
                    acc = (acc + mul_mod(self.entries[i * n + j], v[j], p)) % p;
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn row_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let (n, p) = (self.n, self.modulus);
        (0..n)
            .map(|j| {
                let mut acc = 0u64;
                for i in 0..n {
                    acc = (acc + mul_mod(v[i], self.entries[i * n + j], p)) % p;
                }
                acc
            })
            .collect()
    }

    fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        let p = self.modulus;
        for i in 0..self.n {
            let e = &mut m.entries[i * self.n + i];
            *e = (*e + p - 1) % p;
        }
        m
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(
            self.modulus,
            (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect(),
        )
    }

    /// True iff det(M - I) = 0, i.e. rank(M - I) < n. Exits at the first
    /// pivot-free column.
    pub fn has_eigenvalue_one(&self) -> bool {
        let p = self.modulus;
        let n = self.n;
        let mut m = self.minus_identity().entries;
        let mut row = 0usize;
        for col in 0..n {
            let Some(piv) = (row..n).find(|&i| m[i * n + col] != 0) else {
                return true;
            };
            if piv != row {
                for j in 0..n {
                    m.swap(piv * n + j, row * n + j);
                }
            }
            let inv = inv_mod(m[row * n + col], p);
            for i in row + 1..n {
                let f = mul_mod(m[i * n + col], inv, p);
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = mul_mod(f, m[row * n + j], p);
                    m[i * n + j] = (m[i * n + j] + p - sub) % p;
                }
            }
            row += 1;
        }
        false
    }

    /// dim ker(M - I) = n - rank(M - I); the dimension of the 1-eigenspace.
    pub fn fixed_space_dim(&self) -> usize {
        self.n - self.minus_identity().rank()
    }

    /// Characteristic polynomial det(xI - M), computed by similarity
    /// reduction to upper Hessenberg form followed by the leading-minor
    /// recurrence. Exact over F_p for any prime p.
    pub fn char_poly(&self) -> PolynomialModP {
        let p = self.modulus;
        let n = self.n;
        if n == 0 {
            return PolynomialModP::one(p);
        }
        let mut h = self.entries.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h[i * n + c] != 0) else {
                continue;
            };
            if piv != c + 1 {
                for j in 0..n {
                    h.swap(piv * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.swap(i * n + piv, i * n + c + 1);
                }
            }
            let inv = inv_mod(h[(c + 1) * n + c], p);
            for i in c + 2..n {
                let f = mul_mod(h[i * n + c], inv, p);
                if f == 0 {
                    continue;
                }
                // row_i -= f * row_{c+1}, then col_{c+1} += f * col_i keeps
                // the matrix similar to the original
                for j in 0..n {
                    let sub = mul_mod(f, h[(c + 1) * n + j], p);
                    h[i * n + j] = (h[i * n + j] + p - sub) % p;
                }
                for k in 0..n {
                    let add = mul_mod(f, h[k * n + i], p);
                    h[k * n + c + 1] = (h[k * n + c + 1] + add) % p;
                }
            }
        }
        // p_k = (x - h[k-1][k-1]) p_{k-1}
        //       - sum_i h[i][k-1] * (prod_{t=i+1..k} h[t][t-1]) * p_i
        let mut minors: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let a = h[(k - 1) * n + (k - 1)];
            let prev = &minors[k - 1];
            let mut next = vec![0u64; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + p - mul_mod(a, c, p)) % p;
            }
            let mut beta = 1u64;
            for i in (0..k.saturating_sub(1)).rev() {
                beta = mul_mod(beta, h[(i + 1) * n + i], p);
                if beta == 0 {
                    break;
                }
                let coef = mul_mod(h[i * n + (k - 1)], beta, p);
                if coef == 0 {
                    continue;
                }
                for (j, &c) in minors[i].iter().enumerate() {
                    next[j] = (next[j] + p - mul_mod(coef, c, p)) % p;
                }
            }
            minors.push(next);
        }
        PolynomialModP::new(p, minors.pop().unwrap())
    }

    /// Minimal polynomial: the lcm of the annihilators of Krylov sequences
    /// seeded from each standard basis vector, stopping early once the
    /// degree reaches n.
    pub fn min_poly(&self) -> PolynomialModP {
        let p = self.modulus;
        let n = self.n;
        if n == 0 {
            return PolynomialModP::one(p);
        }
        let mut acc = PolynomialModP::one(p);
        for seed in 0..n {
            if !acc.is_zero() && acc.degree() == n {
                break;
            }
            let mut v = vec![0u64; n];
            v[seed] = 1;
            let ann = self.krylov_annihilator(&v);
            acc = acc.lcm(&ann);
        }
        debug_assert!(self.eval_poly(&acc).entries.iter().all(|&e| e == 0));
        acc
    }

    pub fn min_poly_degree(&self) -> usize {
        self.min_poly().degree()
    }

    /// Monic least-degree polynomial f with f(M)v = 0.
    fn krylov_annihilator(&self, v: &[u64]) -> PolynomialModP {
        let p = self.modulus;
        let n = self.n;
        // echelon basis rows with the expression of each in Krylov iterates
        let mut basis: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut iterate = v.to_vec();
        for k in 0..=n {
            let mut w = iterate.clone();
            let mut expr = vec![0u64; k + 1];
            expr[k] = 1;
            for ((b, e), &piv) in basis.iter().zip(&pivots) {
                let f = w[piv];
                if f == 0 {
                    continue;
                }
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = (*wi + p - mul_mod(f, *bi, p)) % p;
                }
                for (i, &ei) in e.iter().enumerate() {
                    expr[i] = (expr[i] + p - mul_mod(f, ei, p)) % p;
                }
            }
            match w.iter().position(|&x| x != 0) {
                None => return PolynomialModP::new(p, expr).monic(),
                Some(piv) => {
                    let inv = inv_mod(w[piv], p);
                    for x in w.iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    for x in expr.iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    basis.push((w, expr));
                    pivots.push(piv);
                }
            }
            iterate = self.mul_vec(&iterate);
        }
        unreachable!("a dependency appears within n+1 Krylov iterates")
    }

    /// Evaluate a polynomial at this matrix.
    pub fn eval_poly(&self, f: &PolynomialModP) -> Self {
        let p = self.modulus;
        let mut acc = MatrixModP { modulus: p, n: self.n, entries: vec![0; self.n * self.n] };
        for &c in f.coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                let e = &mut acc.entries[i * self.n + i];
                *e = (*e + c) % p;
            }
        }
        acc
    }

    /// Check that `order` is exactly the multiplicative order of the matrix.
    pub fn has_order(&self, order: u64) -> bool {
        if order == 0 || !self.pow(order as u128).is_identity() {
            return false;
        }
        factorize(order)
            .iter()
            .all(|&(t, _)| !self.pow((order / t) as u128).is_identity())
    }

    /// Multiplicative Jordan decomposition M = s*u = u*s for a matrix of the
    /// given (verified) order: writing order = l^k * m with l the modulus and
    /// gcd(l, m) = 1, s = M^a and u = M^b where a = 1 mod m, a = 0 mod l^k
    /// and b = 0 mod m, b = 1 mod l^k. s is the l'-part, u the l-part.
    pub fn multiplicative_jordan_parts(&self, order: u64) -> Result<(Self, Self)> {
        if !self.has_order(order) {
            return Err(Error::WrongOrder(order));
        }
        let l = self.modulus;
        let mut lk = 1u64;
        let mut m = order;
        while m.is_multiple_of(l) {
            m /= l;
            lk *= l;
        }
        let (a, b) = if m == 1 {
            (0, 1)
        } else if lk == 1 {
            (1, 0)
        } else {
            // a = lk * (lk^-1 mod m), the CRT solution in [0, order)
            let inv = crt_inverse(lk % m, m);
            let a = lk as u128 * inv as u128 % order as u128;
            (a as u64, (order + 1 - a as u64) % order)
        };
        let s = self.pow(a as u128);
        let u = self.pow(b as u128);
        debug_assert_eq!(s.mul(&u), u.mul(&s));
        debug_assert_eq!(s.mul(&u), *self);
        Ok((s, u))
    }

    /// Serialize in the shared text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p={} n={}\n", self.modulus, self.n);
        for i in 0..self.n {
            let row: Vec<String> =
                (0..self.n).map(|j| self.entries[i * self.n + j].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the text format: a `p=<modulus> n=<size>` header, then n rows of
    /// n integers. Values are reduced mod p on read; negatives are accepted.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let mut modulus = None;
        let mut n = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("p=") {
                modulus = Some(v.parse::<u64>().map_err(|e| Error::Parse(e.to_string()))?);
            } else if let Some(v) = tok.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
            } else {
                return Err(Error::Parse(format!("unexpected header token '{tok}'")));
            }
        }
        let modulus = modulus.ok_or_else(|| Error::Parse("missing p= in header".into()))?;
        let n = n.ok_or_else(|| Error::Parse("missing n= in header".into()))?;
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n {
            let line = lines.next().ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!("expected {n} entries per row, got {}", row.len())));
            }
            entries.extend(row.into_iter().map(|v| v.rem_euclid(modulus as i64) as u64));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix rows".into()));
        }
        Self::new(modulus, n, entries)
    }
}

impl fmt::Debug for MatrixModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixModP(p={}, n={})", self.modulus, self.n)?;
        for i in 0..self.n {
            write!(f, "\n  {:?}", &self.entries[i * self.n..(i + 1) * self.n])?;
        }
        Ok(())
    }
}

fn crt_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid, m > 1, gcd(a, m) = 1
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Rank of an arbitrary (possibly rectangular) list of row vectors mod p.
pub fn rank_of_rows(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for i in rank + 1..rows.len() {
            let f = mul_mod(rows[i][col], inv, p);
            if f == 0 {
                continue;
            }
            for j in col..ncols {
                let sub = mul_mod(f, rows[rank][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
