//! Representations `d1·X² + d2·Y² = 2^(Z+2)` with `gcd(X, Y) = 1`, `Z > 0`.
//!
//! For a fixed `Z` a primitive solution satisfies `Y ≡ r·X (mod 2^(Z+2))`
//! where `r² ≡ −d1/d2`. Each such `r` cuts out a lattice of determinant
//! `N = 2^(Z+2)` on which `(d1·X² + d2·Y²)/N` is an integral form of
//! determinant `d1·d2`; a solution exists iff that form represents 1, i.e.
//! iff the reduced basis has a vector of norm `N`. [`least_solution`] walks
//! `Z` upward with this test. [`exhaustive_solutions`] is the plain double
//! loop, kept for cross-checking at small `Z`.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, isqrt, pow2, sqrt_exact, Integer};
use crate::ring::Biquad;
use crate::{Error, Result};

pub const DEFAULT_Z_BOUND: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QFInstance {
    #[serde(with = "crate::serde_dec")]
    d1: Integer,
    #[serde(with = "crate::serde_dec")]
    d2: Integer,
}

impl QFInstance {
    pub fn new(d1: impl Into<Integer>, d2: impl Into<Integer>) -> Result<Self> {
        let (d1, d2) = (d1.into(), d2.into());
        let bad = |reason: &str| Error::InvalidInstance {
            d1: d1.to_string(),
            d2: d2.to_string(),
            reason: reason.to_string(),
        };
        if !d1.is_positive() || !d2.is_positive() {
            return Err(bad("coefficients must be positive"));
        }
        if d1.is_even() || d2.is_even() {
            return Err(bad("coefficients must be odd"));
        }
        if !gcd(&d1, &d2).is_one() {
            return Err(bad("coefficients must be coprime"));
        }
        Ok(QFInstance { d1, d2 })
    }

    pub fn d1(&self) -> &Integer {
        &self.d1
    }

    pub fn d2(&self) -> &Integer {
        &self.d2
    }

    /// `d1 + d2 ≡ 0 (mod 8)`, necessary for any solution since `X`, `Y` are
    /// both odd.
    pub fn passes_congruence(&self) -> bool {
        (&self.d1 + &self.d2).mod_floor(&Integer::from(8)).is_zero()
    }

    fn norm(&self, x: &Integer, y: &Integer) -> Integer {
        &self.d1 * x * x + &self.d2 * y * y
    }

    fn is_solution(&self, x: &Integer, y: &Integer, z: u64) -> bool {
        x.is_positive()
            && y.is_positive()
            && z > 0
            && gcd(x, y).is_one()
            && self.norm(x, y) == pow2(z + 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QFSolution {
    #[serde(with = "crate::serde_dec")]
    pub x: Integer,
    #[serde(with = "crate::serde_dec")]
    pub y: Integer,
    pub z: u64,
}

/// The solution with minimal `Z`; unique by the structure theorem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeastSolution {
    #[serde(with = "crate::serde_dec")]
    pub x1: Integer,
    #[serde(with = "crate::serde_dec")]
    pub y1: Integer,
    pub z1: u64,
}

impl LeastSolution {
    pub fn as_solution(&self) -> QFSolution {
        QFSolution {
            x: self.x1.clone(),
            y: self.y1.clone(),
            z: self.z1,
        }
    }
}

/// Inverse of an odd `a` modulo `2^k`.
fn inverse_mod_pow2(a: &Integer, k: u64) -> Integer {
    let modulus = pow2(k);
    // a·a ≡ 1 (mod 8); each Newton step doubles the number of correct bits
    let mut inv = a.mod_floor(&modulus);
    let mut bits = 3;
    while bits < k {
        inv = (&inv * (Integer::from(2) - a * &inv)).mod_floor(&modulus);
        bits *= 2;
    }
    inv
}

/// A square root of `t ≡ 1 (mod 8)` modulo `2^k`, `k ≥ 3`. The others are
/// `−r` and `±r + 2^(k−1)`.
fn sqrt_mod_pow2(t: &Integer, k: u64) -> Integer {
    debug_assert!(k >= 3 && t.mod_floor(&Integer::from(8)).is_one());
    let mut r = Integer::one();
    for j in 3..k {
        if !(&r * &r - t).mod_floor(&pow2(j + 1)).is_zero() {
            r += pow2(j - 1);
        }
    }
    r
}

/// Shortest vector of a 2-dimensional lattice under the form
/// `d1·u² + d2·v²`, by Lagrange–Gauss reduction.
fn shortest_vector(q: &QFInstance, mut b1: [Integer; 2], mut b2: [Integer; 2]) -> [Integer; 2] {
    let norm = |v: &[Integer; 2]| q.norm(&v[0], &v[1]);
    let dot = |u: &[Integer; 2], v: &[Integer; 2]| &q.d1 * &u[0] * &v[0] + &q.d2 * &u[1] * &v[1];
    loop {
        if norm(&b2) < norm(&b1) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let n1 = norm(&b1);
        // nearest integer to dot/n1
        let mu = ((dot(&b1, &b2) << 1u32) + &n1).div_floor(&(&n1 << 1u32));
        if mu.is_zero() {
            return b1;
        }
        b2 = [&b2[0] - &mu * &b1[0], &b2[1] - &mu * &b1[1]];
    }
}

/// The positive primitive solution with the given `Z`, if one exists.
pub fn represent_at(q: &QFInstance, z: u64) -> Result<Option<(Integer, Integer)>> {
    if z == 0 || !q.passes_congruence() {
        return Ok(None);
    }
    let k = z + 2;
    let modulus = pow2(k);
    let t = (-&q.d1 * inverse_mod_pow2(&q.d2, k)).mod_floor(&modulus);
    let r = sqrt_mod_pow2(&t, k);
    let mut found: Option<(Integer, Integer)> = None;
    for root in [r.clone(), (&r + pow2(k - 1)).mod_floor(&modulus)] {
        let v = shortest_vector(q, [Integer::one(), root], [Integer::zero(), modulus.clone()]);
        let (x, y) = (v[0].abs(), v[1].abs());
        if !q.is_solution(&x, &y, z) {
            continue;
        }
        match &found {
            Some(prev) if *prev != (x.clone(), y.clone()) => {
                return Err(Error::Inconsistent(format!(
                    "two positive solutions of {}X^2 + {}Y^2 = 2^{} : {:?} and {:?}",
                    q.d1,
                    q.d2,
                    k,
                    prev,
                    (x, y)
                )));
            }
            _ => found = Some((x, y)),
        }
    }
    Ok(found)
}

/// The least solution with `Z ≤ z_bound`, or `None` if the scan found nothing.
/// `None` is not a proof that no solution exists, unless the congruence
/// pre-filter failed.
pub fn least_solution(q: &QFInstance, z_bound: u32) -> Result<Option<LeastSolution>> {
    if z_bound == 0 {
        return Err(Error::arg("z_bound must be at least 1"));
    }
    if !q.passes_congruence() {
        return Ok(None);
    }
    for z in 1..=z_bound as u64 {
        if let Some((x1, y1)) = represent_at(q, z)? {
            return Ok(Some(LeastSolution { x1, y1, z1: z }));
        }
    }
    Ok(None)
}

/// The solution with `Z = Z₁·t`, obtained as
/// `((X₁√d1 + Y₁√−d2)/2)^t = (X√d1 ± Y√−d2)/2` up to sign.
pub fn solution_for_t(q: &QFInstance, least: &LeastSolution, t: u64) -> Result<QFSolution> {
    if t == 0 {
        return Err(Error::arg("t must be positive"));
    }
    let d1_is_one = q.d1.is_one();
    if !d1_is_one && t % 2 == 0 {
        return Err(Error::arg("t must be odd when d1 > 1"));
    }
    let alpha = Biquad::half_pair(q.d1.clone(), -&q.d2, least.x1.clone(), least.y1.clone());
    let power = alpha.pow(t);
    let [c0, c1, c2, c3] = power.coeffs().clone();
    let (real, imag) = if d1_is_one {
        // √d1 = 1: fold the formal basis back onto (1, √−d2)
        (c0 + c1, c2 + c3)
    } else {
        if !c0.is_zero() || !c3.is_zero() {
            return Err(Error::Inconsistent("odd power left the (√d1, √−d2) span".into()));
        }
        (c1, c2)
    };
    let collapsed = Biquad::new(
        Integer::one(),
        Integer::one(),
        [real, Integer::zero(), imag, Integer::zero()],
        power.shift(),
    );
    let (x, y) = match (collapsed.half_coeff(0), collapsed.half_coeff(2)) {
        (Some(x), Some(y)) => (x.abs(), y.abs()),
        _ => return Err(Error::Inconsistent("power is not a half-integer pair".into())),
    };
    let z = least.z1 * t;
    if !q.is_solution(&x, &y, z) {
        return Err(Error::Inconsistent(format!(
            "power t = {t} of the least solution gives ({x}, {y}, {z}), not a solution"
        )));
    }
    Ok(QFSolution { x, y, z })
}

/// All solutions `Z = Z₁·t` for admissible `t ≤ t_max` (odd `t` when `d1 > 1`).
pub fn expand_solutions(
    q: &QFInstance,
    least: &LeastSolution,
    t_max: u64,
) -> Result<Vec<(u64, QFSolution)>> {
    let step = if q.d1.is_one() { 1 } else { 2 };
    (1..=t_max)
        .step_by(step)
        .map(|t| solution_for_t(q, least, t).map(|s| (t, s)))
        .collect()
}

/// True iff distinct solutions have distinct `Z` (repeated identical triples
/// are allowed).
pub fn distinct_z_check(sols: &[QFSolution]) -> bool {
    let mut sorted: Vec<&QFSolution> = sols.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut zs: Vec<u64> = sorted.iter().map(|s| s.z).collect();
    zs.sort_unstable();
    zs.windows(2).all(|w| w[0] != w[1])
}

/// Least solution of `X'² + d1·d2·Y'² = 2^(Z'+2)` built from the least
/// solution of `(d1, d2)`: `(|d1·X₁² − d2·Y₁²|/2, X₁·Y₁, 2·Z₁)`.
pub fn composed_least(q: &QFInstance, least: &LeastSolution) -> Result<LeastSolution> {
    if q.d1.is_one() || q.d2.is_one() {
        return Err(Error::arg("composition needs min(d1, d2) > 1"));
    }
    let diff = (&q.d1 * &least.x1 * &least.x1 - &q.d2 * &least.y1 * &least.y1).abs();
    let (x1, rem) = diff.div_rem(&Integer::from(2));
    if !rem.is_zero() {
        return Err(Error::Inconsistent("d1·X₁² − d2·Y₁² is odd".into()));
    }
    let composed = LeastSolution {
        x1,
        y1: &least.x1 * &least.y1,
        z1: 2 * least.z1,
    };
    let target = QFInstance::new(1, &q.d1 * &q.d2)?;
    if !target.is_solution(&composed.x1, &composed.y1, composed.z1) {
        return Err(Error::Inconsistent(format!(
            "composed triple {composed:?} does not solve X^2 + {}Y^2 = 2^(Z+2)",
            target.d2
        )));
    }
    Ok(composed)
}

/// All `(y, z)` with `z ≤ z_bound` and `1 + D·y² = 2^(z+2)`.
pub fn solve_one_coeff(d: &Integer, z_bound: u32) -> Vec<(Integer, u64)> {
    let mut out = Vec::new();
    if !d.is_positive() {
        return out;
    }
    for z in 1..=z_bound as u64 {
        let rest = pow2(z + 2) - 1u32;
        let (quot, rem) = rest.div_rem(d);
        if rem.is_zero() {
            if let Some(y) = sqrt_exact(&quot) {
                if y.is_positive() {
                    out.push((y, z));
                }
            }
        }
    }
    out
}

/// Every positive primitive solution with `Z ≤ z_max`, by looping over `Z`
/// and `X ≤ √(2^(Z+2)/d1)`. Exponential in `z_max`; meant for `z_max ≲ 30`.
pub fn exhaustive_solutions(q: &QFInstance, z_max: u64) -> Vec<QFSolution> {
    let mut out = Vec::new();
    for z in 1..=z_max {
        let target = pow2(z + 2);
        let (x_max, _) = isqrt(&(&target / &q.d1)).expect("non-negative");
        let x_max = x_max.to_u64().expect("exhaustive scan bound fits in u64");
        for x in 1..=x_max {
            let x = Integer::from(x);
            let rest = &target - &q.d1 * &x * &x;
            if !rest.is_positive() {
                continue;
            }
            let (quot, rem) = rest.div_rem(&q.d2);
            if !rem.is_zero() {
                continue;
            }
            if let Some(y) = sqrt_exact(&quot) {
                if y.is_positive() && gcd(&x, &y).is_one() {
                    out.push(QFSolution { x, y, z });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    fn qf(d1: i64, d2: i64) -> QFInstance {
        QFInstance::new(d1, d2).unwrap()
    }

    fn least(d1: i64, d2: i64) -> LeastSolution {
        least_solution(&qf(d1, d2), DEFAULT_Z_BOUND).unwrap().unwrap()
    }

    fn triple(s: &LeastSolution) -> (Integer, Integer, u64) {
        (s.x1.clone(), s.y1.clone(), s.z1)
    }

    #[test]
    fn instance_validation() {
        assert!(QFInstance::new(3, 9).is_err());
        assert!(QFInstance::new(2, 5).is_err());
        assert!(QFInstance::new(0, 5).is_err());
        assert!(QFInstance::new(-3, 5).is_err());
        assert!(QFInstance::new(1, 7).is_ok());
    }

    #[test]
    fn helpers_mod_pow2() {
        for a in (1..200i64).step_by(2) {
            for k in 3..40u64 {
                let inv = inverse_mod_pow2(&z(a), k);
                assert!((z(a) * inv - 1u32).mod_floor(&pow2(k)).is_zero());
            }
        }
        for t in (1..500i64).step_by(8) {
            for k in 3..30u64 {
                let r = sqrt_mod_pow2(&z(t), k);
                assert!((&r * &r - z(t)).mod_floor(&pow2(k)).is_zero(), "t={t} k={k}");
            }
        }
    }

    #[test]
    fn least_solution_examples() {
        assert_eq!(triple(&least(7, 25)), (z(1), z(1), 3));
        assert_eq!(triple(&least(3, 5)), (z(1), z(1), 1));
        assert_eq!(triple(&least(31, 97)), (z(1), z(1), 5));
        assert_eq!(triple(&least(1, 7)), (z(1), z(1), 1));
        // 31·15² + 97²·1 = 2^14
        assert_eq!(triple(&least(31, 97 * 97)), (z(15), z(1), 12));
        // congruence fails
        assert_eq!(least_solution(&qf(3, 7), 64).unwrap(), None);
        assert!(least_solution(&qf(3, 5), 0).is_err());
    }

    #[test]
    fn least_solution_matches_exhaustive_scan() {
        for d1 in (1..=45i64).step_by(2) {
            for d2 in (1..=45i64).step_by(2) {
                let Ok(q) = QFInstance::new(d1, d2) else { continue };
                let brute = exhaustive_solutions(&q, 20);
                let fast = least_solution(&q, 20).unwrap();
                assert_eq!(fast.map(|l| l.as_solution()), brute.first().cloned(), "({d1}, {d2})");
                for z in 1..=20 {
                    let at = represent_at(&q, z).unwrap();
                    let expect = brute.iter().find(|s| s.z == z).map(|s| (s.x.clone(), s.y.clone()));
                    assert_eq!(at, expect, "({d1}, {d2}) z = {z}");
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let q = qf(3, 5);
        let l = least(3, 5);
        let s3 = solution_for_t(&q, &l, 3).unwrap();
        assert_eq!((s3.x, s3.y, s3.z), (z(3), z(1), 3));
        let s5 = solution_for_t(&q, &l, 5).unwrap();
        assert_eq!((s5.x, s5.y, s5.z), (z(1), z(5), 5));
        assert_eq!(solution_for_t(&q, &l, 1).unwrap(), l.as_solution());
        assert!(solution_for_t(&q, &l, 2).is_err());
        // d1 = 1 admits every t
        let q = qf(1, 7);
        let l = least(1, 7);
        let all = expand_solutions(&q, &l, 4).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!((all[1].1.x.clone(), all[1].1.y.clone(), all[1].1.z), (z(3), z(1), 2));
    }

    #[test]
    fn expansion_equals_exhaustive_set() {
        for (d1, d2) in [(3, 5), (5, 3), (13, 3), (11, 5), (1, 7), (1, 15), (7, 9), (21, 11), (1, 23)] {
            let q = qf(d1, d2);
            let l = least(d1, d2);
            let z_max = 24;
            let mut from_ring: Vec<QFSolution> = expand_solutions(&q, &l, z_max / l.z1)
                .unwrap()
                .into_iter()
                .map(|(_, s)| s)
                .collect();
            from_ring.sort();
            let mut brute = exhaustive_solutions(&q, z_max);
            brute.sort();
            assert_eq!(from_ring, brute, "({d1}, {d2})");
            assert!(distinct_z_check(&brute));
        }
    }

    #[test]
    fn distinct_z_examples() {
        let a = QFSolution { x: z(1), y: z(1), z: 1 };
        let b = QFSolution { x: z(3), y: z(1), z: 3 };
        let c = QFSolution { x: z(5), y: z(1), z: 3 };
        assert!(distinct_z_check(&[a.clone(), b.clone()]));
        assert!(distinct_z_check(&[a.clone(), a.clone()]));
        assert!(!distinct_z_check(&[a, b, c]));
    }

    #[test]
    fn composed_examples() {
        for (d1, d2, expect) in [(3, 5, (1, 1, 2)), (5, 11, (3, 1, 4)), (13, 3, (5, 1, 4))] {
            let c = composed_least(&qf(d1, d2), &least(d1, d2)).unwrap();
            assert_eq!(triple(&c), (z(expect.0), z(expect.1), expect.2));
            assert_eq!(triple(&least(1, d1 * d2)), triple(&c), "({d1}, {d2})");
        }
        assert!(composed_least(&qf(1, 7), &least(1, 7)).is_err());
    }

    #[test]
    fn one_coeff_examples() {
        assert_eq!(solve_one_coeff(&z(7), 10), vec![(z(1), 1), (z(3), 4)]);
        assert_eq!(solve_one_coeff(&z(15), 64), vec![(z(1), 2)]);
        assert!(solve_one_coeff(&z(5), 64).is_empty());
    }
}
