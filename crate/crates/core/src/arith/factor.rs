//! Primality testing and factorization at desk scale.
//!
//! Inputs that fit in 64 bits go through a `u64` path (deterministic
//! Miller–Rabin, Brent's variant of Pollard rho with `u128` products).
//! Larger inputs use the same algorithms on [`Integer`]; Miller–Rabin with the
//! first thirteen prime bases is deterministic below 3.3·10²⁴ and
//! probabilistic above.

use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gcd, Integer};

const TRIAL_LIMIT: u32 = 1_000_000;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Primes below 10⁶, sieved once.
pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Probable-prime test; deterministic for `|n| < 3.3·10²⁴`.
pub fn is_probable_prime(n: &Integer) -> bool {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = Integer::one();
    let n_minus_1 = &n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = Integer::from(a).modpow(&d, &n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &Integer, c: u64) -> Option<Integer> {
    let c = Integer::from(c);
    let f = |x: &Integer| (x * x + &c) % n;
    let one = Integer::one();
    let mut y = Integer::from(2);
    let mut r = 1u64;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = gcd(&q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = gcd(&(&x - &ys), n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split_u64(n: u64, out: &mut Vec<Integer>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(Integer::from(n));
        return;
    }
    let d = (1..)
        .find_map(|c| brent_u64(n, c))
        .expect("rho finds a factor of a composite");
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: Integer, out: &mut Vec<Integer>) {
    if let Some(small) = n.to_u64() {
        return split_u64(small, out);
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = (1..)
        .find_map(|c| brent_big(&n, c))
        .expect("rho finds a factor of a composite");
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing
/// order. `|n| ≤ 1` factors as the empty product.
pub fn factorize(n: &Integer) -> Vec<(Integer, u32)> {
    let mut rest = n.abs();
    let mut primes: Vec<Integer> = Vec::new();
    if rest.is_zero() {
        return Vec::new();
    }
    // trial division, abandoned once the cofactor is prime or fits in 64 bits
    if rest.to_u64().is_none() && !is_probable_prime(&rest) {
        for &p in small_primes() {
            let p_big = Integer::from(p);
            if &p_big * &p_big > rest {
                break;
            }
            let mut hit = false;
            loop {
                let (q, r) = rest.div_rem(&p_big);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                primes.push(p_big.clone());
                hit = true;
            }
            if rest.to_u64().is_some() || (hit && is_probable_prime(&rest)) {
                break;
            }
        }
    }
    match rest.to_u64() {
        Some(small) => factor_u64(small, &mut primes),
        None => split_big(rest, &mut primes),
    }
    primes.sort();
    let mut out: Vec<(Integer, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn factor_u64(mut n: u64, out: &mut Vec<Integer>) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            out.push(Integer::from(p));
        }
    }
    split_u64(n, out);
}

/// Smallest prime factor of `|n|`, or `None` when `|n| ≤ 1`.
pub fn smallest_prime_factor(n: &Integer) -> Option<Integer> {
    factorize(n).into_iter().next().map(|(p, _)| p)
}
