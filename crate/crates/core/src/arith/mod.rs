//! Exact integer primitives.
//!
//! Everything here works on [`Integer`] (an arbitrary-precision signed
//! integer) and never rounds. Primality and factoring live in [`factor`].

pub mod factor;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub use factor::{factorize, is_probable_prime, smallest_prime_factor};

pub type Integer = BigInt;

/// `2^e` as an [`Integer`].
pub fn pow2(e: u64) -> Integer {
    Integer::one() << e
}

/// Lowest 64 bits of `|a|`.
pub(crate) fn low_u64(a: &Integer) -> u64 {
    a.magnitude().iter_u64_digits().next().unwrap_or(0)
}

/// Greatest common divisor, always non-negative; `gcd(0, 0) = 0`.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

/// Jacobi symbol `(a / b)` for odd `b ≥ 3`.
pub fn jacobi(a: &Integer, b: &Integer) -> Result<i8> {
    if b.is_even() || *b < Integer::from(3) {
        return Err(Error::arg(format!(
            "Jacobi symbol needs an odd modulus >= 3, got {b}"
        )));
    }
    let mut n = b.clone();
    let mut a = a.mod_floor(&n);
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        if z % 2 == 1 && matches!(low_u64(&n) % 8, 3 | 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if low_u64(&a) % 4 == 3 && low_u64(&n) % 4 == 3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Floor square root by Newton iteration, with a flag telling whether `a` is
/// a perfect square.
pub fn isqrt(a: &Integer) -> Result<(Integer, bool)> {
    if a.is_negative() {
        return Err(Error::arg(format!("isqrt of negative number {a}")));
    }
    if a.is_zero() {
        return Ok((Integer::zero(), true));
    }
    // start above the root; Newton then decreases monotonically to the floor
    let mut x = pow2(a.bits().div_ceil(2));
    loop {
        let y = (&x + a / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    // exact correction step
    while &x * &x > *a {
        x -= 1;
    }
    while (&x + 1u32) * (&x + 1u32) <= *a {
        x += 1;
    }
    let exact = &x * &x == *a;
    Ok((x, exact))
}

fn residue_table(m: u64) -> Vec<bool> {
    let mut t = vec![false; m as usize];
    for i in 0..m {
        t[((i * i) % m) as usize] = true;
    }
    t
}

fn residue_tables() -> &'static [(u64, Vec<bool>)] {
    static TABLES: std::sync::OnceLock<Vec<(u64, Vec<bool>)>> = std::sync::OnceLock::new();
    TABLES.get_or_init(|| [64, 63, 65, 11].iter().map(|&m| (m, residue_table(m))).collect())
}

/// `Some(r)` with `r ≥ 0`, `r² = a` when `a` is a perfect square.
///
/// Cheap residue filters reject most non-squares before the root is taken.
pub fn sqrt_exact(a: &Integer) -> Option<Integer> {
    if a.is_negative() {
        return None;
    }
    let mag = a.magnitude();
    for (m, table) in residue_tables() {
        let r = (mag % *m).to_u64().unwrap_or(0);
        if !table[r as usize] {
            return None;
        }
    }
    match isqrt(a) {
        Ok((r, true)) => Some(r),
        _ => None,
    }
}

/// `Some(r)` with `r^k = a` when `a ≥ 0` is a perfect `k`-th power.
pub fn nth_root_exact(a: &Integer, k: u32) -> Option<Integer> {
    if a.is_negative() || k == 0 {
        return None;
    }
    if k == 1 {
        return Some(a.clone());
    }
    if k == 2 {
        return sqrt_exact(a);
    }
    let r = a.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *a {
        Some(r)
    } else {
        None
    }
}

/// If `a = y^n` for some `n ≥ 2`, the representation with the largest
/// exponent (equivalently the smallest base).
pub fn perfect_power(a: &Integer) -> Option<(Integer, u32)> {
    if *a < Integer::from(2) {
        return None;
    }
    let mut base = a.clone();
    let mut exponent = 1u32;
    'outer: loop {
        let max_p = base.bits() as u32;
        for p in factor::small_primes().iter().copied() {
            if p > max_p {
                break;
            }
            if let Some(r) = nth_root_exact(&base, p) {
                base = r;
                exponent *= p;
                continue 'outer;
            }
        }
        break;
    }
    (exponent > 1).then_some((base, exponent))
}

/// All `(y, n)` with `y^n = a`, `y ≥ 2`, `n ≥ 2`, ordered by `n`.
pub fn all_power_representations(a: &Integer) -> Vec<(Integer, u32)> {
    let Some((base, e)) = perfect_power(a) else {
        return Vec::new();
    };
    (2..=e)
        .filter(|n| e % n == 0)
        .map(|n| (num_traits::pow(base.clone(), (e / n) as usize), n))
        .collect()
}

/// 2-adic valuation of a nonzero integer.
pub fn val2(a: &Integer) -> Result<u64> {
    a.trailing_zeros()
        .ok_or_else(|| Error::arg("2-adic valuation of 0"))
}

/// Largest `e` with `d^e | a` together with `a / d^e`, for `|d| ≥ 2`, `a ≠ 0`.
pub fn remove_factor(a: &Integer, d: &Integer) -> (u32, Integer) {
    debug_assert!(!a.is_zero() && d.abs() >= Integer::from(2));
    let mut rest = a.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(d);
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

/// `Some(e)` with `d^e = a` exactly, for `a ≥ 1` and `d ≥ 2`.
pub fn exact_log(a: &Integer, d: &Integer) -> Option<u32> {
    if !a.is_positive() {
        return None;
    }
    let (e, rest) = remove_factor(a, d);
    rest.is_one().then_some(e)
}
