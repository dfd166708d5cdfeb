//! Brute-force reference implementations. They share no code with the library
//! beyond plain integers.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_naive(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime_naive(n)).collect()
}

/// Every nonzero `(x, y, z)` with `x^2 + y^2 + z^2 = 3xyz mod p`, by triple loop.
pub fn surface_triple_loop(p: u64) -> BTreeSet<(u64, u64, u64)> {
    let mut out = BTreeSet::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                if (x, y, z) != (0, 0, 0) && (x * x + y * y + z * z) % p == (3 * x * y % p) * z % p {
                    out.insert((x, y, z));
                }
            }
        }
    }
    out
}

/// `a + b w` with `w^2 = eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct Fp2Ring {
    pub p: u64,
    pub eps: u64,
}

impl Fp2Ring {
    /// Smallest non-square found by squaring everything.
    pub fn new(p: u64) -> Self {
        let squares: HashSet<u64> = (0..p).map(|r| r * r % p).collect();
        let eps = (2..p).find(|e| !squares.contains(e)).unwrap();
        Fp2Ring { p, eps }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.eps * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { a: 1, b: 0 }
    }

    pub fn pow(&self, x: Fp2, e: u64) -> Fp2 {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    /// Multiplicative order by stepping through powers.
    pub fn order_linear(&self, x: Fp2) -> u64 {
        let mut cur = x;
        let mut k = 1;
        while cur != self.one() {
            cur = self.mul(cur, x);
            k += 1;
            assert!(k <= self.p * self.p, "not a unit");
        }
        k
    }

    /// Roots of `Z^2 - 3xZ + 1` by scanning all of `F_{p^2}`.
    pub fn xi_roots(&self, x: u64) -> Vec<Fp2> {
        let p = self.p;
        let mut roots = Vec::new();
        for a in 0..p {
            for b in 0..p {
                let z = Fp2 { a, b };
                let z2 = self.mul(z, z);
                let lin = Fp2 { a: 3 * x % p * a % p, b: 3 * x % p * b % p };
                if (z2.a + p - lin.a + 1).is_multiple_of(p) && (z2.b + p - lin.b).is_multiple_of(p) {
                    roots.push(z);
                }
            }
        }
        roots
    }
}

/// `t(x)` for every `x`, from scanned roots and linear orders.
pub fn order_table_linear(p: u64) -> Vec<u64> {
    let ring = Fp2Ring::new(p);
    (0..p)
        .map(|x| {
            let roots = ring.xi_roots(x);
            assert!(!roots.is_empty());
            ring.order_linear(roots[0])
        })
        .collect()
}

/// `min t(x) t(y) t(z)` over the triple-loop surface.
pub fn min_order_product_oracle(p: u64) -> u64 {
    let t = order_table_linear(p);
    surface_triple_loop(p).iter().map(|&(x, y, z)| t[x as usize] * t[y as usize] * t[z as usize]).min().unwrap()
}

/// Values of `u_(n+2) = 3x u_(n+1) - u_n` until a state repeats.
pub fn orbit_values_naive(x: u64, u1: u64, u2: u64, p: u64) -> HashSet<u64> {
    let mut states = HashSet::new();
    let mut values = HashSet::new();
    let (mut a, mut b) = (u1, u2);
    while states.insert((a, b)) {
        values.insert(a);
        let c = (3 * x % p * b % p + p - a) % p;
        a = b;
        b = c;
    }
    values
}

/// Divisors of `n` by trial division up to `sqrt(n)`.
pub fn divisors_naive(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Largest prime factor of every `k <= n` (1 for `k = 1`).
pub fn largest_prime_factors(n: usize) -> Vec<u64> {
    let mut lpf = vec![1u64; n + 1];
    for q in 2..=n {
        if lpf[q] == 1 {
            let mut m = q;
            while m <= n {
                lpf[m] = q as u64;
                m += q;
            }
        }
    }
    lpf
}
