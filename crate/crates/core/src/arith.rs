//! Integer arithmetic helpers: modular products, deterministic primality,
//! factorization of 64-bit integers.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse mod a prime via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle variant; n must be odd, composite, not a prime power of 2.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    while n.is_multiple_of(2) {
        push(2, &mut out);
        n /= 2;
    }
    let mut t = 3u64;
    while t < 100_000 && t * t <= n {
        while n.is_multiple_of(t) {
            push(t, &mut out);
            n /= t;
        }
        t += 2;
    }
    // n now has no factor below 1e5: it is 1, prime, or splits under rho
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// r^d as u128; panics on overflow (callers bound d first).
pub fn checked_pow_u128(r: u64, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(r as u128).expect("power overflows u128");
    }
    acc
}

/// Is r^d <= cap, evaluated without overflow.
pub fn pow_le(r: u64, d: usize, cap: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = match acc.checked_mul(r as u128) {
            Some(v) if v <= cap => v,
            _ => return false,
        };
    }
    true
}
