//! Small-prime helpers.

use num_bigint::BigUint;
use serde::Serialize;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    (3..).step_by(2).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn next_prime(n: u64) -> u64 {
    (n..).find(|&k| is_prime(k)).expect("primes are unbounded")
}

/// The prime after `r` and how it compares with `r + r^(7/11) + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeGap {
    pub r: u64,
    pub prime: u64,
    /// `r + r^(7/11)` in floating point, for display.
    pub bound: f64,
    /// Exact: `p < r + r^(7/11) + 1`, tested as `(p - r - 1)^11 < r^7`.
    pub within: bool,
}

pub fn next_prime_in_gap(r: u64) -> PrimeGap {
    let prime = next_prime(r);
    let excess = prime.saturating_sub(r + 1);
    let within = excess == 0 || BigUint::from(excess).pow(11) < BigUint::from(r).pow(7);
    PrimeGap { r, prime, bound: r as f64 + (r as f64).powf(7.0 / 11.0), within }
}
