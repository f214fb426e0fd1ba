//! The semidirect products G built from a pair of distinct primes (r, p):
//! an elementary abelian r-group A of rank d = ord(r mod p), acted on
//! irreducibly by a cyclic group of order p. Three concrete realizations:
//! the linear action on A, the degree-p monomial representation over a
//! prime field carrying r-th roots of unity, and the transitive permutation
//! action on r*p points.

use crate::arith::{checked_pow_u128, factorize, is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::ff::{build_extension_field, multiplicative_order};
use crate::matfq::MatrixModP;

/// The group determined by (r, p): d is the rank of A and `h_matrix` is the
/// d x d matrix (mod r) by which the order-p generator acts on A. The action
/// is multiplication by a fixed element of order p in F_{r^d}, written in
/// the polynomial basis, so it is irreducible and has order exactly p.
#[derive(Clone, Debug)]
pub struct GrpSpec {
    pub r: u64,
    pub p: u64,
    pub d: usize,
    pub h_matrix: MatrixModP,
}

pub fn construct_grp(r: u64, p: u64) -> Result<GrpSpec> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == p {
        return Err(Error::EqualPrimes(r));
    }
    let d = multiplicative_order(r, p)? as usize;
    let field = build_extension_field(r, d)?;
    let y = field.element_of_order(p)?;
    let mut rows = vec![vec![0u64; d]; d];
    for j in 0..d {
        let mut basis = field.zero();
        basis[j] = 1;
        let col = field.mul(&y, &basis);
        for i in 0..d {
            rows[i][j] = col[i];
        }
    }
    let h_matrix = MatrixModP::from_rows(r, &rows)?;
    let spec = GrpSpec { r, p, d, h_matrix };
    spec.validate()?;
    Ok(spec)
}

impl GrpSpec {
    fn validate(&self) -> Result<()> {
        let h = &self.h_matrix;
        if h.is_identity() || !h.pow(self.p as u128).is_identity() {
            return Err(Error::Invariant(format!(
                "action matrix for ({}, {}) does not have order {}",
                self.r, self.p, self.p
            )));
        }
        if h.min_poly_degree() != self.d {
            return Err(Error::Invariant(format!(
                "action matrix for ({}, {}) is not irreducible in dimension {}",
                self.r, self.p, self.d
            )));
        }
        Ok(())
    }

    /// |A| = r^d, the number of elements to enumerate in exhaustive checks.
    pub fn translation_count(&self) -> u128 {
        checked_pow_u128(self.r, self.d)
    }

    /// Element of A with canonical index k (digits of k base r).
    pub fn element(&self, mut k: u128) -> Vec<u64> {
        let mut v = vec![0u64; self.d];
        for slot in v.iter_mut() {
            *slot = (k % self.r as u128) as u64;
            k /= self.r as u128;
        }
        v
    }
}

/// Smallest prime congruent to 1 mod r, the default coefficient field for
/// the monomial representation.
pub fn least_root_field_prime(r: u64) -> u64 {
    let mut ell = r + 1;
    loop {
        if ell % r == 1 && is_prime(ell) {
            return ell;
        }
        ell += 1;
    }
}

fn least_primitive_root(ell: u64) -> u64 {
    let fac = factorize(ell - 1);
    (2..ell)
        .find(|&g| fac.iter().all(|&(f, _)| pow_mod(g, (ell - 1) / f, ell) != 1))
        .expect("every prime has a primitive root")
}

/// The degree-p monomial representation over F_ell, ell = 1 mod r prime:
/// h maps to the p-cycle permutation matrix, and a in A maps to the diagonal
/// matrix with entries zeta^(first coordinate of h^i a), i = 0..p-1.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub ell: u64,
    /// Fixed primitive r-th root of unity mod ell.
    pub zeta: u64,
    pub degree: usize,
    pub h_image: MatrixModP,
    /// Images of the d basis generators of A.
    pub a_images: Vec<MatrixModP>,
}

pub fn monomial_representation(spec: &GrpSpec, ell: u64) -> Result<MonomialRep> {
    if !is_prime(ell) || ell % spec.r != 1 {
        return Err(Error::NoRootOfUnity { ell, r: spec.r });
    }
    let g0 = least_primitive_root(ell);
    let zeta = pow_mod(g0, (ell - 1) / spec.r, ell);
    let p = spec.p as usize;
    // P e_j = e_{j-1}: conjugating a diagonal by P shifts the entries the
    // way conjugation by h shifts the characters
    let h_image = MatrixModP::cycle(ell, p).pow(p as u128 - 1);
    let rep = MonomialRep { ell, zeta, degree: p, h_image, a_images: Vec::new() };
    let mut a_images = Vec::with_capacity(spec.d);
    for t in 0..spec.d {
        let mut basis = vec![0u64; spec.d];
        basis[t] = 1;
        a_images.push(rep.image_of_translation(spec, &basis)?);
    }
    Ok(MonomialRep { a_images, ..rep })
}

impl MonomialRep {
    /// Image of a in A: diag(zeta^(lambda(h^i a)))_i for the first-coordinate
    /// functional lambda.
    pub fn image_of_translation(&self, spec: &GrpSpec, a: &[u64]) -> Result<MatrixModP> {
        assert_eq!(a.len(), spec.d);
        let mut w = a.to_vec();
        let mut diag = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            diag.push(pow_mod(self.zeta, w[0], self.ell));
            w = spec.h_matrix.mul_vec(&w);
        }
        MatrixModP::diagonal(self.ell, &diag)
    }
}

/// Transitive permutation action of G on the r*p cosets of the kernel K of
/// the first-coordinate functional on A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    pub degree: usize,
    pub generators: Vec<(String, Vec<usize>)>,
}

impl PermAction {
    /// One line per generator: space-separated images, 0-indexed.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (_, images) in &self.generators {
            let strs: Vec<String> = images.iter().map(|i| i.to_string()).collect();
            out.push_str(&strs.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for (_, images) in &self.generators {
                let y = images[x];
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.degree
    }

    fn validate(&self) -> Result<()> {
        for (name, images) in &self.generators {
            let mut seen = vec![false; self.degree];
            for &y in images {
                if y >= self.degree || seen[y] {
                    return Err(Error::Invariant(format!("generator {name} is not a bijection")));
                }
                seen[y] = true;
            }
        }
        if !self.is_transitive() {
            return Err(Error::Invariant("coset action is not transitive".into()));
        }
        Ok(())
    }
}

/// Point (c, j) with c the A/K coset along the transversal {c*e_0} and j the
/// power of h, flattened as c*p + j. Generators act by left multiplication.
pub fn coset_permutation_action(spec: &GrpSpec) -> Result<PermAction> {
    let r = spec.r as usize;
    let p = spec.p as usize;
    let degree = r * p;
    let idx = |c: usize, j: usize| c * p + j;

    let mut h_images = vec![0usize; degree];
    for c in 0..r {
        for j in 0..p {
            h_images[idx(c, j)] = idx(c, (j + 1) % p);
        }
    }
    let mut generators = vec![("h".to_string(), h_images)];

    // h^{-1} drives a h^j u_c = h^j (h^{-j} a h^j) u_c
    let h_inv = spec.h_matrix.pow(spec.p as u128 - 1);
    for t in 0..spec.d {
        let mut w = vec![0u64; spec.d];
        w[t] = 1;
        let mut images = vec![0usize; degree];
        for j in 0..p {
            let shift = w[0] as usize;
            for c in 0..r {
                images[idx(c, j)] = idx((c + shift) % r, j);
            }
            w = h_inv.mul_vec(&w);
        }
        generators.push((format!("a{t}"), images));
    }

    let action = PermAction { degree, generators };
    action.validate()?;
    Ok(action)
}

/// Outcome of the exhaustive search for an element of A lying outside every
/// conjugate h^j K h^{-j} of the index-r subgroup K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpfSearch {
    pub found: bool,
    /// Least such element of A in canonical order, when one exists.
    pub witness: Option<Vec<u64>>,
    pub elements_checked: u64,
}

/// Decides whether some a in A avoids every conjugate of K, by direct
/// enumeration of A. Equivalent to "some element of order r is a derangement
/// in the coset action"; the covering engine answers the same question on the
/// dual side, so this stays deliberately matrix-vector based.
pub fn has_fixed_point_free_r_element(spec: &GrpSpec, budget: u64) -> Result<FpfSearch> {
    let total = spec.translation_count();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget: budget as u128 });
    }
    let h_inv = spec.h_matrix.pow(spec.p as u128 - 1);
    let mut checked = 0u64;
    for k in 1..total {
        let a = spec.element(k);
        checked += 1;
        let mut w = a.clone();
        let mut outside_all = true;
        for step in 0..spec.p {
            if w[0] == 0 {
                outside_all = false;
                break;
            }
            if step + 1 < spec.p {
                w = h_inv.mul_vec(&w);
            }
        }
        if outside_all {
            return Ok(FpfSearch { found: true, witness: Some(a), elements_checked: checked });
        }
    }
    Ok(FpfSearch { found: false, witness: None, elements_checked: checked })
}
