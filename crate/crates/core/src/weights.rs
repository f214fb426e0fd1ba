//! Weight-lattice predicates: Cartan matrices for the finite families,
//! root-lattice membership, dominant weights below a highest weight,
//! Weyl-orbit saturation, the GL_n(2) unisingularity criterion, and the
//! weight conditions for types A/C/D over F_q.
//!
//! Everything is expressed in fundamental-weight coordinates. Row i of the
//! Cartan matrix is taken as the coordinate vector of the i-th simple root,
//! and the simple reflections are s_i(w) = w - w_i * alpha_i; all predicates
//! here use that one convention consistently.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidLieType { family: family.letter(), rank })
        }
    }

    pub fn parse(family: &str, rank: usize) -> Result<LieType> {
        let c = family
            .chars()
            .next()
            .and_then(Family::from_char)
            .ok_or(Error::Parse(format!("unknown family '{family}'")))?;
        LieType::new(c, rank)
    }
}

/// A weight in fundamental-weight coordinates for a fixed type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVec {
    pub lie: LieType,
    pub coeffs: Vec<i64>,
}

impl WeightVec {
    pub fn new(lie: LieType, coeffs: Vec<i64>) -> Result<WeightVec> {
        if coeffs.len() != lie.rank {
            return Err(Error::Parse(format!(
                "expected {} coefficients for {}{}, got {}",
                lie.rank,
                lie.family.letter(),
                lie.rank,
                coeffs.len()
            )));
        }
        Ok(WeightVec { lie, coeffs })
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// The rank x rank Cartan matrix of the family, with the chain numbering
/// of the standard tables (branch node of D/E attached as the last/second
/// index respectively; the one asymmetric pair of B/C/F/G placed so that
/// B_2 = [[2,-1],[-2,2]]).
pub fn cartan_matrix(lie: LieType) -> Vec<Vec<i64>> {
    let n = lie.rank;
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let chain = |edges: &[(usize, usize)], c: &mut Vec<Vec<i64>>| {
        for &(i, j) in edges {
            c[i][j] = -1;
            c[j][i] = -1;
        }
    };
    match lie.family {
        Family::A => {
            chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>(), &mut c);
        }
        Family::B => {
            chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>(), &mut c);
            c[n - 1][n - 2] = -2;
        }
        Family::C => {
            chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>(), &mut c);
            c[n - 2][n - 1] = -2;
        }
        Family::D => {
            chain(&(0..n - 2).map(|i| (i, i + 1)).collect::<Vec<_>>(), &mut c);
            chain(&[(n - 3, n - 1)], &mut c);
        }
        Family::E => {
            // nodes 0-2-3-4-5(-6(-7)) in a chain, node 1 attached to node 3
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            chain(&edges, &mut c);
        }
        Family::F => {
            chain(&[(0, 1), (1, 2), (2, 3)], &mut c);
            c[2][1] = -2;
        }
        Family::G => {
            c[0][1] = -3;
            c[1][0] = -1;
        }
    }
    c
}

/// Bareiss fraction-free determinant of a small integer matrix.
fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(sw) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Does w lie in the root lattice, i.e. is w an integer combination of the
/// simple roots? Solves sum x_j alpha_j = w by Cramer's rule over the
/// integers and checks divisibility.
pub fn in_root_lattice(w: &WeightVec) -> bool {
    let c = cartan_matrix(w.lie);
    let n = w.lie.rank;
    // columns of the system matrix are the root coordinate vectors, so the
    // system is C^T x = coeffs
    let a: Vec<Vec<i128>> =
        (0..n).map(|i| (0..n).map(|j| c[j][i] as i128).collect()).collect();
    let det = det_i128(a.clone());
    debug_assert!(det != 0, "Cartan matrices are invertible");
    for j in 0..n {
        let mut aj = a.clone();
        for i in 0..n {
            aj[i][j] = w.coeffs[i] as i128;
        }
        if det_i128(aj) % det != 0 {
            return false;
        }
    }
    true
}

/// Solve C^T x = v exactly; returns the numerators and the shared
/// denominator det(C^T).
fn solve_against_roots(lie: LieType, v: &[i64]) -> (Vec<i128>, i128) {
    let c = cartan_matrix(lie);
    let n = lie.rank;
    let a: Vec<Vec<i128>> =
        (0..n).map(|i| (0..n).map(|j| c[j][i] as i128).collect()).collect();
    let det = det_i128(a.clone());
    let mut nums = Vec::with_capacity(n);
    for j in 0..n {
        let mut aj = a.clone();
        for i in 0..n {
            aj[i][j] = v[i] as i128;
        }
        nums.push(det_i128(aj));
    }
    (nums, det)
}

/// All dominant weights mu with lambda - mu a non-negative integer
/// combination of simple roots, lambda itself included. Enumerates the
/// coefficient box 0 <= k_j <= (C^T)^{-1} lambda, which bounds every
/// admissible combination because the inverse Cartan matrix is positive.
pub fn dominant_weights_below(lambda: &WeightVec) -> Result<Vec<WeightVec>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant);
    }
    let lie = lambda.lie;
    let n = lie.rank;
    let c = cartan_matrix(lie);
    let (nums, det) = solve_against_roots(lie, &lambda.coeffs);
    let kmax: Vec<i64> = nums
        .iter()
        .map(|&num| {
            debug_assert!(num.signum() * det.signum() >= 0);
            (num / det) as i64
        })
        .collect();
    let box_size: u128 = kmax.iter().map(|&k| k as u128 + 1).product();
    if box_size > 100_000_000 {
        return Err(Error::BudgetExceeded { needed: box_size, budget: 100_000_000 });
    }
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let mu: Vec<i64> = (0..n)
            .map(|i| lambda.coeffs[i] - (0..n).map(|j| k[j] * c[j][i]).sum::<i64>())
            .collect();
        if mu.iter().all(|&x| x >= 0) {
            out.push(WeightVec { lie, coeffs: mu });
        }
        // odometer over the box
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort_by(|a, b| b.coeffs.cmp(&a.coeffs));
                return Ok(out);
            }
            k[pos] += 1;
            if k[pos] <= kmax[pos] {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

/// Weyl-orbit closure of the dominant weights below lambda: the weight set
/// of the characteristic-0 irreducible with highest weight lambda. Closes
/// under the simple reflections with a visited set; `budget` caps the size.
pub fn saturated_weight_set(lambda: &WeightVec, budget: usize) -> Result<BTreeSet<Vec<i64>>> {
    let lie = lambda.lie;
    let c = cartan_matrix(lie);
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> =
        dominant_weights_below(lambda)?.into_iter().map(|w| w.coeffs).collect();
    for w in &queue {
        set.insert(w.clone());
    }
    while let Some(w) = queue.pop() {
        for i in 0..lie.rank {
            if w[i] == 0 {
                continue;
            }
            let refl: Vec<i64> = (0..lie.rank).map(|j| w[j] - w[i] * c[i][j]).collect();
            if set.insert(refl.clone()) {
                if set.len() > budget {
                    return Err(Error::BudgetExceeded {
                        needed: set.len() as u128,
                        budget: budget as u128,
                    });
                }
                queue.push(refl);
            }
        }
    }
    Ok(set)
}

pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

/// The two inequalities deciding unisingularity of the nontrivial
/// irreducible 2-modular representation of GL_n(2) with restricted highest
/// weight bits (a_1, ..., a_{n-1}):
/// sum a_i*i >= n and sum a_i*(n-i) >= n.
pub fn gl2_unisingular_criterion(n: usize, bits: &[u8]) -> Result<bool> {
    assert!(n >= 2, "the criterion concerns GL_n(2) with n >= 2");
    if bits.len() != n - 1 {
        return Err(Error::Parse(format!("expected {} bits, got {}", n - 1, bits.len())));
    }
    if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
        return Err(Error::Parse(format!("labels are 0/1 strings, got {bad}")));
    }
    if bits.iter().all(|&b| b == 0) {
        return Err(Error::TrivialModule);
    }
    let forward: usize = bits.iter().enumerate().map(|(i, &a)| a as usize * (i + 1)).sum();
    let backward: usize = bits.iter().enumerate().map(|(i, &a)| a as usize * (n - 1 - i)).sum();
    Ok(forward >= n && backward >= n)
}

/// Witness data for a positive weight-condition verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum S21Witness {
    /// Type A: index i and multipliers (m1, m2) with m1(q-1)w_i + w_1 + w_n
    /// and m2(q-1)w_i in the weight set.
    TypeA { i: usize, m1: u64, m2: u64 },
    /// Types C/D: multipliers with m1(q+1)w_1, m2(q-1)w_1 and
    /// m3(q-1)w_1 + w_2 in the weight set.
    TypeCD { m1: u64, m2: u64, m3: u64 },
}

/// The sufficient weight conditions for every semisimple element of the
/// group of type A_n, C_n (n > 1) or D_n (n > 3) over F_q to have
/// eigenvalue 1 on a module with the given weight set. Multipliers are
/// searched from 1 up to max|coefficient|/(q-1) + 1, past which no
/// candidate weight can lie in the set.
pub fn s21_condition(
    lie: LieType,
    q: u64,
    weights: &BTreeSet<Vec<i64>>,
) -> Result<Option<S21Witness>> {
    assert!(q >= 2, "q is a prime power at least 2");
    let n = lie.rank;
    match lie.family {
        Family::A => {}
        Family::C if n > 1 => {}
        Family::D if n > 3 => {}
        f => return Err(Error::UnsupportedType { family: f.letter(), rank: n }),
    }
    for w in weights {
        if w.len() != n {
            return Err(Error::Parse(format!(
                "weight of length {} does not match rank {n}",
                w.len()
            )));
        }
    }
    let maxc = weights.iter().flat_map(|w| w.iter().map(|c| c.unsigned_abs())).max().unwrap_or(0);
    let bound = maxc / (q - 1) + 1;
    let single = |i: usize, scale: u64, m: u64| -> Vec<i64> {
        let mut w = vec![0i64; n];
        w[i] = (m * scale) as i64;
        w
    };
    match lie.family {
        Family::A => {
            for i in 0..n {
                for m1 in 1..=bound {
                    let mut w1 = single(i, q - 1, m1);
                    w1[0] += 1;
                    w1[n - 1] += 1;
                    if !weights.contains(&w1) {
                        continue;
                    }
                    for m2 in 1..=bound {
                        if weights.contains(&single(i, q - 1, m2)) {
                            return Ok(Some(S21Witness::TypeA { i: i + 1, m1, m2 }));
                        }
                    }
                }
            }
            Ok(None)
        }
        _ => {
            let find = |scale: u64, extra: Option<usize>| -> Option<u64> {
                (1..=bound).find(|&m| {
                    let mut w = single(0, scale, m);
                    if let Some(j) = extra {
                        w[j] += 1;
                    }
                    weights.contains(&w)
                })
            };
            let Some(m1) = find(q + 1, None) else { return Ok(None) };
            let Some(m2) = find(q - 1, None) else { return Ok(None) };
            let Some(m3) = find(q - 1, Some(1)) else { return Ok(None) };
            Ok(Some(S21Witness::TypeCD { m1, m2, m3 }))
        }
    }
}

/// Weight file: `type=<family><rank>` header, then one weight per line.
pub fn parse_weight_file(text: &str) -> Result<(LieType, BTreeSet<Vec<i64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty weight file".into()))?;
    let spec = header
        .trim()
        .strip_prefix("type=")
        .ok_or_else(|| Error::Parse("weight file must start with type=<family><rank>".into()))?;
    let mut chars = spec.chars();
    let family = chars
        .next()
        .and_then(Family::from_char)
        .ok_or_else(|| Error::Parse(format!("bad type '{spec}'")))?;
    let rank: usize =
        chars.as_str().parse().map_err(|e| Error::Parse(format!("bad rank in '{spec}': {e}")))?;
    let lie = LieType::new(family, rank)?;
    let mut weights = BTreeSet::new();
    for line in lines {
        let coeffs: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        if coeffs.len() != rank {
            return Err(Error::Parse(format!(
                "weight '{}' does not have {rank} coefficients",
                line.trim()
            )));
        }
        weights.insert(coeffs);
    }
    Ok((lie, weights))
}
