//! Small divisors `tau_z(n)` and smooth-number counts `Psi(x, y)`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::factorize;

/// The divisors of `n` not exceeding `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorProfile {
    pub n: u64,
    pub z: f64,
    pub count: u64,
    /// Ascending; `None` when the list was not requested.
    pub divisors_leq_z: Option<Vec<u64>>,
}

/// `tau_z(n)` with the divisor list attached.
pub fn tau_z(n: u64, z: f64) -> Result<DivisorProfile> {
    let divisors = small_divisors(n, z)?;
    Ok(DivisorProfile { n, z, count: divisors.len() as u64, divisors_leq_z: Some(divisors) })
}

/// `tau_z(n)` as a bare count.
pub fn tau_z_count(n: u64, z: f64) -> Result<u64> {
    Ok(small_divisors(n, z)?.len() as u64)
}

fn small_divisors(n: u64, z: f64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("tau_z is undefined for n = 0".into()));
    }
    if z.is_nan() || z < 1.0 {
        return Err(Error::InvalidArgument(format!("tau_z needs z >= 1, got {z}")));
    }
    let mut divs = factorize(n).divisors();
    divs.retain(|&d| d as f64 <= z);
    Ok(divs)
}

/// Primes up to `n`, by sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The `s`-th prime, 1-based.
pub fn nth_prime(s: usize) -> u64 {
    assert!(s >= 1);
    let mut limit = 16u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= s {
            return ps[s - 1];
        }
        limit *= 2;
    }
}

/// `Psi(x, y)`: the number of `1 <= k <= x` whose prime factors are all `<= y`.
/// For `y < 2` only `k = 1` qualifies.
pub fn smooth_count(x: u64, y: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    if y >= x {
        return x;
    }
    let primes = primes_up_to(y);
    psi_rec(x, &primes)
}

/// `Psi(x, p_k) = Psi(x, p_(k-1)) + Psi(x / p_k, p_k)` over a prefix of the primes.
fn psi_rec(x: u64, primes: &[u64]) -> u64 {
    if x == 0 {
        return 0;
    }
    let k = primes.partition_point(|&q| q <= x);
    if k < primes.len() {
        // every prime up to x is available
        return x;
    }
    match k {
        0 => 1,
        1 => x.ilog2() as u64 + 1,
        _ => psi_rec(x, &primes[..k - 1]) + psi_rec(x / primes[k - 1], primes),
    }
}

/// One row of the small-divisor comparison at `z = exp((log n)^gamma)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorRow {
    pub n: u64,
    pub gamma: f64,
    pub z: f64,
    pub tau_z: u64,
    /// `z^(1 - gamma)`.
    pub z_power: f64,
    /// `tau_z / z^(1 - gamma)`.
    pub ratio: f64,
    /// Number of distinct prime factors of `n`.
    pub s: u64,
    /// The `s`-th prime, 1 when `s = 0`.
    pub p_s: u64,
    /// `Psi(floor(z), p_s)`.
    pub psi_bound: u64,
    /// `tau_z <= psi_bound`.
    pub holds: bool,
}

pub fn divisor_row(n: u64, gamma: f64) -> Result<DivisorRow> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("divisor profile needs n >= 3, got {n}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgument(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let z = (n as f64).ln().powf(gamma).exp();
    let tau = tau_z_count(n, z)?;
    let s = factorize(n).factors.len();
    let p_s = if s == 0 { 1 } else { nth_prime(s) };
    let psi_bound = smooth_count(z.floor() as u64, p_s);
    let z_power = z.powf(1.0 - gamma);
    Ok(DivisorRow {
        n,
        gamma,
        z,
        tau_z: tau,
        z_power,
        ratio: tau as f64 / z_power,
        s: s as u64,
        p_s,
        psi_bound,
        holds: tau <= psi_bound,
    })
}

/// Rows for every `n`, in input order.
pub fn lemma33_profile(ns: &[u64], gamma: f64) -> Result<Vec<DivisorRow>> {
    ns.par_iter().map(|&n| divisor_row(n, gamma)).collect()
}

pub fn write_csv<W: Write>(rows: &[DivisorRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
