//! Exact arithmetic in `Q(√p, √q)`.
//!
//! An element is `(c0 + c1·√p + c2·√q + c3·√(pq)) / 2^shift` with integer
//! coefficients. `p` and `q` are arbitrary nonzero integers (negative values
//! give imaginary radicals). Multiplication is carried out formally with
//! `√p² = p`, `√q² = q`, so results are exact images of the true products
//! even when `p` or `q` happens to be a perfect square.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquad {
    p: Integer,
    q: Integer,
    coeffs: [Integer; 4],
    shift: u64,
}

impl Biquad {
    pub fn new(p: Integer, q: Integer, coeffs: [Integer; 4], shift: u64) -> Self {
        let mut e = Biquad {
            p,
            q,
            coeffs,
            shift,
        };
        e.normalize();
        e
    }

    pub fn one(p: Integer, q: Integer) -> Self {
        Self::new(p, q, [Integer::one(), Integer::zero(), Integer::zero(), Integer::zero()], 0)
    }

    /// `(u·√p + v·√q) / 2`.
    pub fn half_pair(p: Integer, q: Integer, u: Integer, v: Integer) -> Self {
        Self::new(p, q, [Integer::zero(), u, v, Integer::zero()], 1)
    }

    pub fn coeffs(&self) -> &[Integer; 4] {
        &self.coeffs
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    fn normalize(&mut self) {
        while self.shift > 0 && self.coeffs.iter().all(|c| c.is_even()) {
            for c in &mut self.coeffs {
                *c >>= 1u32;
            }
            self.shift -= 1;
        }
    }

    pub fn mul(&self, other: &Biquad) -> Biquad {
        debug_assert!(self.p == other.p && self.q == other.q);
        let [a0, a1, a2, a3] = &self.coeffs;
        let [b0, b1, b2, b3] = &other.coeffs;
        let (p, q) = (&self.p, &self.q);
        let pq = p * q;
        let c0 = a0 * b0 + p * (a1 * b1) + q * (a2 * b2) + &pq * (a3 * b3);
        let c1 = a0 * b1 + a1 * b0 + q * (a2 * b3 + a3 * b2);
        let c2 = a0 * b2 + a2 * b0 + p * (a1 * b3 + a3 * b1);
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        Biquad::new(p.clone(), q.clone(), [c0, c1, c2, c3], self.shift + other.shift)
    }

    pub fn pow(&self, mut k: u64) -> Biquad {
        let mut acc = Biquad::one(self.p.clone(), self.q.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficient `i` scaled to denominator 2, i.e. `2·c_i / 2^shift`, if
    /// that is an integer.
    pub fn half_coeff(&self, i: usize) -> Option<Integer> {
        let doubled = &self.coeffs[i] << 1u32;
        let (q, r) = doubled.div_rem(&(Integer::one() << self.shift));
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn square_of_half_pair() {
        // ((√3 + √-5)/2)^2 = (3 - 5 + 2√-15)/4 = (-1 + √-15)/2
        let a = Biquad::half_pair(z(3), z(-5), z(1), z(1));
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs(), &[z(-1), z(0), z(0), z(1)]);
        assert_eq!(sq.shift(), 1);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = Biquad::half_pair(z(7), z(-25), z(1), z(1));
        let mut acc = Biquad::one(z(7), z(-25));
        for k in 0..12 {
            assert_eq!(a.pow(k), acc, "k = {k}");
            acc = acc.mul(&a);
        }
    }

    #[test]
    fn cube_for_three_five() {
        // ((√3 + √-5)/2)^3 = (-3√3 + √-5)/2
        let a = Biquad::half_pair(z(3), z(-5), z(1), z(1));
        let c = a.pow(3);
        assert_eq!(c.half_coeff(1), Some(z(-3)));
        assert_eq!(c.half_coeff(2), Some(z(1)));
        assert_eq!(c.half_coeff(0), Some(z(0)));
    }
}
