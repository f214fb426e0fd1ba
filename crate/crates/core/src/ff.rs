//! Number-theoretic and finite-field primitives: multiplicative orders,
//! extension-field construction, elements of prescribed order, trace.
//!
//! Field elements live in the polynomial basis `1, x, ..., x^(d-1)` and are
//! passed around as coefficient vectors of length `d`. The canonical ordering
//! used everywhere for deterministic scans is the integer value
//! `sum(c_i * r^i)`.

use crate::arith::{checked_pow_u128, factorize, is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::poly::PolynomialModP;

/// Least d >= 1 with `base^d = 1 (mod modulus)`, for a prime modulus and
/// coprime base. Computed by stripping prime factors from `modulus - 1`,
/// so it stays independent of the repeated-multiplication oracle used in
/// the tests.
pub fn multiplicative_order(base: u64, modulus: u64) -> Result<u64> {
    if !is_prime(modulus) {
        return Err(Error::NotPrime(modulus));
    }
    let b = base % modulus;
    if b == 0 {
        return Err(Error::NotCoprime { base, modulus });
    }
    let mut t = modulus - 1;
    for (f, _) in factorize(modulus - 1) {
        while t.is_multiple_of(f) && pow_mod(b, t / f, modulus) == 1 {
            t /= f;
        }
    }
    debug_assert_eq!(pow_mod(b, t, modulus), 1);
    Ok(t)
}

/// The field F_{r^d}, realized as F_r[x] modulo a fixed irreducible monic
/// polynomial of degree d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    characteristic: u64,
    degree: usize,
    modulus_poly: Vec<u64>,
}

/// Deterministic field construction: the modulus is the first monic
/// irreducible of degree d in the canonical ordering (candidates compared by
/// the integer value of their non-leading coefficient vector), so every
/// derived matrix and witness is reproducible across runs.
pub fn build_extension_field(r: u64, d: usize) -> Result<ExtensionField> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    assert!(d >= 1, "degree must be positive");
    let count = checked_pow_u128(r, d);
    let mut k: u128 = 0;
    while k < count {
        let mut coeffs = digits_of(k, r, d);
        coeffs.push(1);
        if is_irreducible(r, &coeffs) {
            return Ok(ExtensionField { characteristic: r, degree: d, modulus_poly: coeffs });
        }
        k += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over F_r")
}

/// Rabin test: f of degree d is irreducible over F_r iff x^(r^d) = x (mod f)
/// and gcd(x^(r^(d/t)) - x, f) = 1 for every prime t dividing d.
fn is_irreducible(r: u64, coeffs: &[u64]) -> bool {
    let d = coeffs.len() - 1;
    let f = PolynomialModP::new(r, coeffs.to_vec());
    if f.is_zero() || f.degree() != d {
        return false;
    }
    let x = PolynomialModP::x(r);
    // frob[i] = x^(r^i) mod f, built by repeated r-th powering
    let mut frob = x.rem(&f);
    let mut frobs = vec![frob.clone()];
    for _ in 0..d {
        frob = frob.pow_mod(r as u128, &f);
        frobs.push(frob.clone());
    }
    if frobs[d] != x.rem(&f) {
        return false;
    }
    for (t, _) in factorize(d as u64) {
        let g = frobs[d / t as usize].sub(&x).gcd(&f);
        if g.is_zero() || g.degree() != 0 {
            return false;
        }
    }
    true
}

fn digits_of(mut k: u128, r: u64, d: usize) -> Vec<u64> {
    let mut out = vec![0u64; d];
    for slot in out.iter_mut() {
        *slot = (k % r as u128) as u64;
        k /= r as u128;
    }
    out
}

impl ExtensionField {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus_poly
    }

    /// Number of field elements, r^d.
    pub fn order(&self) -> u128 {
        checked_pow_u128(self.characteristic, self.degree)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut e = vec![0; self.degree];
        e[0] = 1;
        e
    }

    /// Element with canonical index k, i.e. digits of k base r.
    pub fn element(&self, k: u128) -> Vec<u64> {
        debug_assert!(k < self.order());
        digits_of(k, self.characteristic, self.degree)
    }

    pub fn index_of(&self, a: &[u64]) -> u128 {
        let r = self.characteristic as u128;
        a.iter().rev().fold(0u128, |acc, &c| acc * r + c as u128)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.characteristic;
        a.iter().zip(b).map(|(&x, &y)| (x + y) % r).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.characteristic;
        let d = self.degree;
        let mut prod = vec![0u64; 2 * d.max(1)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, r)) % r;
            }
        }
        self.reduce(prod)
    }

    /// Reduce a raw coefficient vector by the monic modulus polynomial.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let r = self.characteristic;
        let d = self.degree;
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            v[i] = 0;
            for (j, &m) in self.modulus_poly.iter().take(d).enumerate() {
                let idx = i - d + j;
                v[idx] = (v[idx] + r - mul_mod(c, m, r)) % r;
            }
        }
        v.truncate(d);
        v
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// An element of multiplicative order exactly p (p prime dividing r^d - 1):
    /// the first x in canonical order whose (r^d-1)/p power is not 1.
    pub fn element_of_order(&self, p: u64) -> Result<Vec<u64>> {
        debug_assert!(is_prime(p), "the exact-order construction needs p prime");
        let q = self.order();
        if p == 0 || !(q - 1).is_multiple_of(p as u128) {
            return Err(Error::OrderNotDividing { p, q });
        }
        let exp = (q - 1) / p as u128;
        let one = self.one();
        for k in 1..q {
            let y = self.pow(&self.element(k), exp);
            if y != one {
                debug_assert_eq!(self.pow(&y, p as u128), one);
                return Ok(y);
            }
        }
        unreachable!("F_q^x is cyclic, some element is not a p-th power")
    }

    /// Trace to the prime field: the sum of the d Frobenius conjugates.
    pub fn trace(&self, a: &[u64]) -> u64 {
        let r = self.characteristic;
        let mut conj = a.to_vec();
        let mut sum = a.to_vec();
        for _ in 1..self.degree {
            conj = self.pow(&conj, r as u128);
            sum = self.add(&sum, &conj);
        }
        debug_assert!(sum[1..].iter().all(|&c| c == 0), "trace must land in F_r");
        sum[0]
    }
}
