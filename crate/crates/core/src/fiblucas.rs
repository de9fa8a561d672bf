//! Fibonacci and Lucas numbers, the equation `u² − 5v² = ±4`, and perfect
//! powers among `F_k`, `L_k`.
//!
//! Indexing: `F₀ = 0, F₁ = 1, L₀ = 2, L₁ = 1`.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{perfect_power, Integer};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibLucasPair {
    pub k: u64,
    #[serde(with = "crate::serde_dec")]
    pub f: Integer,
    #[serde(with = "crate::serde_dec")]
    pub l: Integer,
}

/// `(F_k, F_{k+1})` by fast doubling.
fn fib_pair(k: u64) -> (Integer, Integer) {
    if k == 0 {
        return (Integer::zero(), Integer::one());
    }
    let (a, b) = fib_pair(k / 2);
    // F_2j = F_j (2F_{j+1} − F_j), F_2j+1 = F_j² + F_{j+1}²
    let c = &a * ((&b << 1u32) - &a);
    let d = &a * &a + &b * &b;
    if k % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Exact `F_k` and `L_k`.
pub fn fib_lucas(k: u64) -> FibLucasPair {
    let (f, f_next) = fib_pair(k);
    // L_k = 2F_{k+1} − F_k
    let l = (&f_next << 1u32) - &f;
    FibLucasPair { k, f, l }
}

/// A positive solution of `u² − 5v² = sign·4`, identified as `(L_k, F_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "crate::serde_dec")]
    pub u: Integer,
    #[serde(with = "crate::serde_dec")]
    pub v: Integer,
    pub k: u64,
    /// `+1` or `−1`, equal to `(−1)^k`.
    pub sign: i8,
}

/// All positive `(u, v)` with `u ≤ bound` and `u² − 5v² = ±4`.
///
/// These are exactly the pairs `(L_k, F_k)` with `k ≥ 1`, enumerated by index.
pub fn solve_pell5(bound: &Integer) -> Vec<PellSolution> {
    let mut out = Vec::new();
    let (mut f, mut l) = (Integer::one(), Integer::one()); // k = 1
    let (mut f_prev, mut l_prev) = (Integer::zero(), Integer::from(2)); // k = 0
    let mut k = 1u64;
    while l <= *bound {
        out.push(PellSolution {
            u: l.clone(),
            v: f.clone(),
            k,
            sign: if k % 2 == 0 { 1 } else { -1 },
        });
        let f_next = &f + &f_prev;
        let l_next = &l + &l_prev;
        f_prev = std::mem::replace(&mut f, f_next);
        l_prev = std::mem::replace(&mut l, l_next);
        k += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sequence {
    Fibonacci,
    Lucas,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PowerHit {
    pub k: u64,
    #[serde(with = "crate::serde_dec")]
    pub z: Integer,
    pub n: u32,
    pub which: Sequence,
}

/// Every `k ≤ k_max` for which `F_k` or `L_k` is a perfect power `z^n`
/// (`z > 1`, `n > 1`), in maximal-exponent form.
pub fn fib_lucas_powers(k_max: u64) -> Vec<PowerHit> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let pair = fib_lucas(k);
        for (value, which) in [(&pair.f, Sequence::Fibonacci), (&pair.l, Sequence::Lucas)] {
            if let Some((z, n)) = perfect_power(value) {
                out.push(PowerHit { k, z, n, which });
            }
        }
    }
    out
}

/// `gcd(F_k, L_k)`, exposed for identity checks.
pub fn fib_lucas_gcd(k: u64) -> Integer {
    let p = fib_lucas(k);
    p.f.gcd(&p.l)
}
