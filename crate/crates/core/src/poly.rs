//! Dense univariate polynomials over a prime field, coefficients stored
//! low degree first.

use crate::arith::{inv_mod, mul_mod};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Polynomial with coefficients reduced mod a prime. The zero polynomial is
/// the empty coefficient vector; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialModP {
    pub modulus: u64,
    pub coeffs: Vec<u64>,
}

impl PolynomialModP {
    pub fn new(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= modulus;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolynomialModP { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Self {
        PolynomialModP { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: u64) -> Self {
        PolynomialModP::new(modulus, vec![1])
    }

    pub fn x(modulus: u64) -> Self {
        PolynomialModP::new(modulus, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial has no degree.
    pub fn degree(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, x % p, p) + c) % p;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % p).collect();
        PolynomialModP::new(p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + p - other.coeff(i)) % p)
            .collect();
        PolynomialModP::new(p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return PolynomialModP::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        PolynomialModP::new(p, out)
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.modulus;
        PolynomialModP::new(p, self.coeffs.iter().map(|&c| mul_mod(c, k % p, p)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.modulus;
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (PolynomialModP::zero(p), self.clone());
        }
        let dlead = inv_mod(*divisor.coeffs.last().unwrap(), p);
        let ddeg = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - ddeg];
        for i in (ddeg..rem.len()).rev() {
            let q = mul_mod(rem[i], dlead, p);
            if q == 0 {
                continue;
            }
            quo[i - ddeg] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - ddeg + j;
                rem[idx] = (rem[idx] + p - mul_mod(q, dc, p)) % p;
            }
        }
        (PolynomialModP::new(p, quo), PolynomialModP::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Least common multiple, monic.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolynomialModP::zero(self.modulus);
        }
        let g = self.gcd(other);
        self.mul(other).div_rem(&g).0.monic()
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&1) => self.clone(),
            Some(&lead) => self.scale(inv_mod(lead, self.modulus)),
        }
    }

    /// `self^exp mod modulus_poly`.
    pub fn pow_mod(&self, exp: u128, modulus_poly: &Self) -> Self {
        let p = self.modulus;
        let mut base = self.rem(modulus_poly);
        let mut acc = PolynomialModP::one(p).rem(modulus_poly);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus_poly);
            }
            base = base.mul(&base).rem(modulus_poly);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for PolynomialModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
