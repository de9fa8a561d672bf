//! Lehmer pairs, Lehmer numbers and primitive divisors.
//!
//! A Lehmer pair `(α, β)` is described by its parameter `(a, c)` with
//! `a = (α + β)²`, `b = αβ = (a − c)/4` and `c = (α − β)²`. Lehmer numbers
//! `L_k` are computed with the integer recurrence
//!
//! ```text
//! L₁ = L₂ = 1
//! L_k = a·L_{k−1} − b·L_{k−2}   (k odd)
//! L_k =   L_{k−1} − b·L_{k−2}   (k even)
//! ```
//!
//! which never touches a radical.

use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, smallest_prime_factor, Integer};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LehmerParams {
    #[serde(with = "crate::serde_dec")]
    a: Integer,
    #[serde(with = "crate::serde_dec")]
    c: Integer,
}

impl LehmerParams {
    /// Validates `a > 0`, `c ≠ 0`, `a ≡ c (mod 4)`, `b ≠ 0`, `gcd(a, b) = 1`
    /// and that `α/β` is not a root of unity.
    pub fn new(a: impl Into<Integer>, c: impl Into<Integer>) -> Result<Self> {
        let (a, c) = (a.into(), c.into());
        let bad = |reason: &str| Error::InvalidLehmerParams {
            a: a.to_string(),
            c: c.to_string(),
            reason: reason.to_string(),
        };
        if !a.is_positive() {
            return Err(bad("a must be positive"));
        }
        if c.is_zero() {
            return Err(bad("c must be nonzero"));
        }
        if !(&a - &c).mod_floor(&Integer::from(4)).is_zero() {
            return Err(bad("a and c must agree mod 4"));
        }
        let b: Integer = (&a - &c) / 4u32;
        if b.is_zero() {
            return Err(bad("b = (a - c)/4 must be nonzero"));
        }
        if !gcd(&a, &b).is_one() {
            return Err(bad("gcd(a, b) must be 1"));
        }
        // α/β is a root of unity exactly when a ∈ {b, 2b, 3b} (a = 0, 4b are
        // already excluded)
        if (1..=3).any(|m| a == &b * m) {
            return Err(bad("alpha/beta is a root of unity"));
        }
        Ok(LehmerParams { a, c })
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn c(&self) -> &Integer {
        &self.c
    }

    pub fn b(&self) -> Integer {
        (&self.a - &self.c) / 4u32
    }

    /// Equivalence of Lehmer pairs: the unit multipliers `±1, ±√−1` send
    /// `(a, c)` to `±(a, c)`.
    pub fn equivalent(&self, a: &Integer, c: &Integer) -> bool {
        (self.a == *a && self.c == *c) || (self.a == -a && self.c == -c)
    }
}

/// `L₁, …, L_k`.
pub fn lehmer_sequence(p: &LehmerParams, k: u64) -> Vec<Integer> {
    let b = p.b();
    let mut out: Vec<Integer> = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let next = if i <= 2 {
            Integer::one()
        } else {
            let (l1, l2) = (&out[i as usize - 2], &out[i as usize - 3]);
            if i % 2 == 1 {
                &p.a * l1 - &b * l2
            } else {
                l1 - &b * l2
            }
        };
        out.push(next);
    }
    out
}

/// The Lehmer number `L_k(α, β)`, `k ≥ 1`.
pub fn lehmer_number(p: &LehmerParams, k: u64) -> Result<Integer> {
    if k == 0 {
        return Err(Error::arg("Lehmer numbers are indexed from k = 1"));
    }
    Ok(lehmer_sequence(p, k).pop().expect("k >= 1"))
}

/// `[k; i] = (k − i − 1)!·k / ((k − 2i)!·i!)`, for `0 ≤ i ≤ ⌊k/2⌋`.
pub fn expansion_coeff(k: u64, i: u64) -> Result<Integer> {
    if k == 0 || i > k / 2 {
        return Err(Error::arg(format!(
            "expansion coefficient [{k}; {i}] needs k >= 1 and 0 <= i <= k/2"
        )));
    }
    if i == 0 {
        return Ok(Integer::one());
    }
    // (k − i − 1)! / (k − 2i)! = (k−2i+1)(k−2i+2)…(k−i−1)
    let mut num = Integer::from(k);
    for j in (k - 2 * i + 1)..=(k - i - 1) {
        num *= j;
    }
    let mut den = Integer::one();
    for j in 2..=i {
        den *= j;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `α^k + β^k` for `α + β = s`, `αβ = q`, by the closed expansion
/// `Σ (−1)^i [k; i] s^(k−2i) q^i`.
pub fn power_sum(s: &Integer, q: &Integer, k: u64) -> Result<Integer> {
    if k == 0 {
        return Err(Error::arg("power_sum needs k >= 1"));
    }
    let mut total = Integer::zero();
    for i in 0..=k / 2 {
        let term = expansion_coeff(k, i)?
            * num_traits::pow(s.clone(), (k - 2 * i) as usize)
            * num_traits::pow(q.clone(), i as usize);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDivisor {
    pub answer: bool,
    #[serde(with = "crate::serde_dec::opt")]
    pub witness: Option<Integer>,
}

/// The part of `|L_k|` coprime to `a·c·L₁⋯L_{k−1}`: a product of primitive
/// divisors, equal to 1 exactly when the pair is `k`-defective.
pub fn primitive_part(p: &LehmerParams, k: u64) -> Result<Integer> {
    if k <= 1 {
        return Err(Error::arg("primitive divisors are defined for k > 1"));
    }
    let seq = lehmer_sequence(p, k);
    let mut rest = seq[k as usize - 1].abs();
    let ac = &p.a * &p.c;
    for m in std::iter::once(&ac).chain(&seq[..k as usize - 1]) {
        loop {
            let g = gcd(&rest, m);
            if g.is_one() || g.is_zero() {
                break;
            }
            rest /= g;
        }
    }
    Ok(rest)
}

/// Whether `L_k` has a prime divisor not dividing `a·c·L₁⋯L_{k−1}`, with the
/// smallest such prime as witness.
pub fn has_primitive_divisor(p: &LehmerParams, k: u64) -> Result<PrimitiveDivisor> {
    let witness = smallest_prime_factor(&primitive_part(p, k)?);
    Ok(PrimitiveDivisor {
        answer: witness.is_some(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefectiveEntry {
    pub k: u64,
    pub a: i64,
    pub c: i64,
}

impl DefectiveEntry {
    pub fn params(&self) -> Result<LehmerParams> {
        LehmerParams::new(self.a, self.c)
    }
}

/// The shipped table, one `k a c` record per line.
pub const DEFECTIVE_TABLE_DATA: &str = include_str!("../data/lehmer_defective.txt");

pub(crate) fn parse_defective_table(text: &str) -> Vec<DefectiveEntry> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<i64> = l
                .split_whitespace()
                .map(|t| t.parse().expect("integer field in defective table"))
                .collect();
            assert_eq!(f.len(), 3, "malformed defective table line {l:?}");
            DefectiveEntry {
                k: f[0] as u64,
                a: f[1],
                c: f[2],
            }
        })
        .collect()
}

/// Every entry of the defective-pair table.
pub fn all_defective_entries() -> &'static [DefectiveEntry] {
    static TABLE: OnceLock<Vec<DefectiveEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_defective_table(DEFECTIVE_TABLE_DATA))
}

/// Parameters of `k`-defective Lehmer pairs, for odd `6 < k ≤ 30`.
pub fn defective_table(k: u64) -> Result<Vec<DefectiveEntry>> {
    if k % 2 == 0 || !(7..=30).contains(&k) {
        return Err(Error::arg(format!(
            "defective table covers odd 6 < k <= 30, got {k}"
        )));
    }
    Ok(all_defective_entries()
        .iter()
        .filter(|e| e.k == k)
        .cloned()
        .collect())
}

/// Whether `p` is equivalent to a tabulated `k`-defective parameter.
pub fn is_listed_defective(p: &LehmerParams, k: u64) -> bool {
    all_defective_entries()
        .iter()
        .filter(|e| e.k == k)
        .any(|e| p.equivalent(&Integer::from(e.a), &Integer::from(e.c)))
}
