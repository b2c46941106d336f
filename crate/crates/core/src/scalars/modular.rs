//! Prime-field reduction of cyclotomic scalars and Gaussian elimination
//! modulo a word-sized prime.
//!
//! Primes are drawn from a deterministic ladder of 60-bit primes congruent
//! to 1 mod n, so `zeta_n` maps to an element of multiplicative order n.
//! Reduction modulo such a prime can only lower the rank, never raise it.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::element::Scalar;
use super::Int;

pub const LADDER_START: u64 = (1 << 59) + 1;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Next prime `p >= from` with `p = 1 (mod n)`.
pub fn next_prime_congruent(from: u64, n: u64) -> u64 {
    let mut c = from.max(3);
    loop {
        if c % n == 1 % n && is_prime(c) {
            return c;
        }
        c += 1;
    }
}

/// An element of multiplicative order exactly n in `F_p` (requires
/// `p = 1 mod n`), i.e. a root of `Phi_n` mod p.
pub fn root_of_unity(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let cof = (p - 1) / n;
    let prime_factors: Vec<u64> = {
        let mut m = n;
        let mut fs = Vec::new();
        let mut q = 2;
        while q * q <= m {
            if m.is_multiple_of(q) {
                fs.push(q);
                while m.is_multiple_of(q) {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            fs.push(m);
        }
        fs
    };
    for a in 2..p {
        let w = powmod(a, cof, p);
        if w == 0 || w == 1 {
            continue;
        }
        if prime_factors.iter().all(|&q| powmod(w, n / q, p) != 1) {
            return w;
        }
    }
    unreachable!("F_p* is cyclic, an order-n element exists");
}

fn int_mod(v: &Int, p: u64) -> u64 {
    let m = v.mod_floor(&Int::from(p));
    m.to_u64().expect("mod_floor of positive modulus fits u64")
}

/// Reduce a scalar to `F_p` sending `zeta -> omega`. `None` when a
/// denominator vanishes mod p (the prime must then be skipped).
pub fn scalar_mod(s: &Scalar, p: u64, omega_pows: &[u64]) -> Option<u64> {
    let mut acc = 0u64;
    for (i, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let den = int_mod(c.denom(), p);
        if den == 0 {
            return None;
        }
        let num = int_mod(&c.numer().abs(), p);
        let mut val = mulmod(num, invmod(den, p), p);
        if c.numer().is_negative() {
            val = (p - val) % p;
        }
        acc = (acc + mulmod(val, omega_pows[i], p)) % p;
    }
    Some(acc)
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(pr) = pivot else { continue };
        m.swap(rank, pr);
        let inv = invmod(m[rank][col], p);
        for r in rank + 1..rows {
            let factor = m[r][col];
            if factor == 0 {
                continue;
            }
            let scale = mulmod(factor, inv, p);
            #[allow(clippy::needless_range_loop)]
            for c in col..cols {
                let sub = mulmod(scale, m[rank][c], p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
