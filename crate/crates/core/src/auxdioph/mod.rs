//! Bounded verifiers for the auxiliary exponential equations.
//!
//! Each verifier is a direct loop over its variables with exact arithmetic
//! and returns a [`LemmaReport`] comparing what it found to the claimed
//! solution set. A confirmed report only ever means "confirmed within these
//! bounds".

pub mod suite;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    exact_log, factorize, is_probable_prime, nth_root_exact, pow2, remove_factor, sqrt_exact,
    Integer,
};
use crate::{Error, Result};

pub use suite::{default_bounds, run_all, run_lemma, LEMMA_IDS};

/// Upper limits keyed by the equation's variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds(BTreeMap<String, u64>);

impl SearchBounds {
    pub fn new(limits: &[(&str, u64)]) -> Result<Self> {
        let mut b = SearchBounds::default();
        for &(name, v) in limits {
            b = b.with(name, v)?;
        }
        Ok(b)
    }

    pub fn with(mut self, name: &str, value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::arg(format!("bound {name} = {value} must be at least 2")));
        }
        self.0.insert(name.to_string(), value);
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Result<u64> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| Error::arg(format!("missing bound {name}")))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}<={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConfirmedWithinBounds,
    Discrepancy,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConfirmedWithinBounds => "confirmed-within-bounds",
            Verdict::Discrepancy => "discrepancy",
        })
    }
}

pub type Tuple = Vec<Integer>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    /// Names of the tuple components, in order.
    pub variables: Vec<String>,
    pub bounds: SearchBounds,
    #[serde(with = "crate::serde_dec::tuples")]
    pub claimed: Vec<Tuple>,
    #[serde(with = "crate::serde_dec::tuples")]
    pub found: Vec<Tuple>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    /// Confirmed iff `found ⊆ claimed` and every claimed tuple inside the
    /// bounds was found.
    pub fn build(
        lemma: &str,
        variables: &[&str],
        bounds: &SearchBounds,
        claimed: Vec<Tuple>,
        in_bounds: impl Fn(&Tuple) -> bool,
        found: Vec<Tuple>,
    ) -> Self {
        let claimed: BTreeSet<Tuple> = claimed.into_iter().collect();
        let found: BTreeSet<Tuple> = found.into_iter().collect();
        let ok = found.is_subset(&claimed)
            && claimed.iter().filter(|t| in_bounds(t)).all(|t| found.contains(t));
        LemmaReport {
            lemma: lemma.to_string(),
            variables: variables.iter().map(|s| s.to_string()).collect(),
            bounds: bounds.clone(),
            claimed: claimed.into_iter().collect(),
            found: found.into_iter().collect(),
            verdict: if ok {
                Verdict::ConfirmedWithinBounds
            } else {
                Verdict::Discrepancy
            },
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn confirmed(&self) -> bool {
        self.verdict == Verdict::ConfirmedWithinBounds
    }
}

pub(crate) fn tuple(items: &[i64]) -> Tuple {
    items.iter().map(|&v| Integer::from(v)).collect()
}

fn small(t: &Tuple, i: usize) -> i64 {
    t[i].to_i64().unwrap_or(i64::MAX)
}

fn odd_primes_up_to(limit: u64) -> Vec<u32> {
    (3..=limit as u32)
        .filter(|&p| is_probable_prime(&Integer::from(p)))
        .collect()
}

/// `x^m − y^n = 1` with `min(x, y, m, n) > 1`; bounds `x, y, m, n`.
pub fn verify_catalan(b: &SearchBounds) -> Result<LemmaReport> {
    let (xb, yb, mb, nb) = (b.get("x")?, b.get("y")?, b.get("m")?, b.get("n")?);
    let mut powers: HashMap<Integer, Vec<(u64, u64)>> = HashMap::new();
    for x in 2..=xb {
        let mut v = Integer::from(x);
        for m in 2..=mb {
            v *= x;
            powers.entry(v.clone()).or_default().push((x, m));
        }
    }
    let mut found = Vec::new();
    for y in 2..=yb {
        let mut v = Integer::from(y);
        for n in 2..=nb {
            v *= y;
            if let Some(hits) = powers.get(&(&v + 1u32)) {
                for &(x, m) in hits {
                    found.push(tuple(&[x as i64, y as i64, m as i64, n as i64]));
                }
            }
        }
    }
    Ok(LemmaReport::build(
        "2.8",
        &["x", "y", "m", "n"],
        b,
        vec![tuple(&[3, 2, 2, 3])],
        |t| small(t, 0) as u64 <= xb && small(t, 1) as u64 <= yb && small(t, 2) as u64 <= mb && small(t, 3) as u64 <= nb,
        found,
    ))
}

/// `2^r·3^s + sign = y^n` with `y > 1`, `n > 1`; bounds `r, s, n`.
pub fn verify_pow23(b: &SearchBounds, sign: i8) -> Result<LemmaReport> {
    let (rb, sb, nb) = (b.get("r")?, b.get("s")?, b.get("n")?);
    let mut found = Vec::new();
    let mut three_s = Integer::one();
    for s in 1..=sb {
        three_s *= 3u32;
        for r in 1..=rb {
            let v = (&three_s << r) + sign as i32;
            for n in 2..=nb {
                if let Some(y) = nth_root_exact(&v, n as u32) {
                    if y > Integer::one() {
                        found.push(vec![r.into(), s.into(), y, n.into()]);
                    }
                }
            }
        }
    }
    let (lemma, claimed) = if sign > 0 {
        ("2.11", vec![tuple(&[3, 1, 5, 2]), tuple(&[4, 1, 7, 2]), tuple(&[5, 2, 17, 2])])
    } else {
        ("2.12", vec![])
    };
    Ok(LemmaReport::build(
        lemma,
        &["r", "s", "y", "n"],
        b,
        claimed,
        |t| small(t, 0) as u64 <= rb && small(t, 1) as u64 <= sb && small(t, 3) as u64 <= nb,
        found,
    ))
}

/// `2^r + sign = 3^s·y^n` with `3 ∤ y`, `y > 1`, `n > 1`; bounds `r, n`.
///
/// `admit_three_in_y` drops the `3 ∤ y` side condition and tries every
/// `1 ≤ s ≤ v₃(2^r + sign)`.
pub fn verify_3s_pm1(b: &SearchBounds, sign: i8, admit_three_in_y: bool) -> Result<LemmaReport> {
    let (rb, nb) = (b.get("r")?, b.get("n")?);
    let three = Integer::from(3);
    let mut found = Vec::new();
    for r in 1..=rb {
        let v = pow2(r) + sign as i32;
        if !v.is_positive() {
            continue;
        }
        let (v3, _) = remove_factor(&v, &three);
        let s_range = if admit_three_in_y { 1..=v3 } else { v3..=v3 };
        for s in s_range.filter(|&s| s >= 1) {
            let w = &v / num_traits::pow(three.clone(), s as usize);
            for n in 2..=nb {
                if let Some(y) = nth_root_exact(&w, n as u32) {
                    if y > Integer::one() && (admit_three_in_y || !(&y % 3u32).is_zero()) {
                        found.push(vec![r.into(), s.into(), y, n.into()]);
                    }
                }
            }
        }
    }
    let lemma = if sign > 0 { "2.9" } else { "2.10" };
    Ok(LemmaReport::build(lemma, &["r", "s", "y", "n"], b, vec![], |_| true, found))
}

/// `x³ + 1 = 3y²` with `x, y ≥ 1`; bound `x`.
pub fn verify_cubic(b: &SearchBounds) -> Result<LemmaReport> {
    let xb = b.get("x")?;
    let mut found = Vec::new();
    for x in 1..=xb {
        let v = num_traits::pow(Integer::from(x), 3) + 1u32;
        let (q, r) = v.div_rem(&Integer::from(3));
        if r.is_zero() {
            if let Some(y) = sqrt_exact(&q) {
                if y.is_positive() {
                    found.push(vec![x.into(), y]);
                }
            }
        }
    }
    Ok(LemmaReport::build("2.5", &["x", "y"], b, vec![], |_| true, found))
}

/// `x² + x + 1 = 3y^p` with `|x| > 1`, `y > 1`, `p` an odd prime; bounds
/// `x` (on `|x|`) and `p`.
pub fn verify_trinomial(b: &SearchBounds) -> Result<LemmaReport> {
    let (xb, pb) = (b.get("x")?, b.get("p")?);
    let primes = odd_primes_up_to(pb);
    let mut found = Vec::new();
    for x in (2..=xb as i64).flat_map(|x| [x, -x]) {
        let v = Integer::from(x * x + x + 1);
        let (q, r) = v.div_rem(&Integer::from(3));
        if !r.is_zero() {
            continue;
        }
        for &p in &primes {
            if let Some(y) = nth_root_exact(&q, p) {
                if y > Integer::one() {
                    found.push(vec![x.into(), y, p.into()]);
                }
            }
        }
    }
    Ok(LemmaReport::build("2.6", &["x", "y", "p"], b, vec![], |_| true, found))
}

/// `(2^r + 1)/3 = y^n` with `y > 1`, `n > 1`; bounds `r, n`.
pub fn verify_negative_base_repunit(b: &SearchBounds) -> Result<LemmaReport> {
    let (rb, nb) = (b.get("r")?, b.get("n")?);
    let mut found = Vec::new();
    for r in 1..=rb {
        let (q, rem) = (pow2(r) + 1u32).div_rem(&Integer::from(3));
        if !rem.is_zero() {
            continue;
        }
        for n in 2..=nb {
            if let Some(y) = nth_root_exact(&q, n as u32) {
                if y > Integer::one() {
                    found.push(vec![r.into(), y, n.into()]);
                }
            }
        }
    }
    Ok(LemmaReport::build("2.7", &["r", "y", "n"], b, vec![], |_| true, found))
}

/// `(x^n + 1)/(x + 1) = y²` with `x > 1`, `n > 1`; bounds `x, n`.
pub fn verify_ljunggren(b: &SearchBounds) -> Result<LemmaReport> {
    let (xb, nb) = (b.get("x")?, b.get("n")?);
    let mut found = Vec::new();
    for x in 2..=xb {
        let xi = Integer::from(x);
        let mut pw = xi.clone();
        for n in 2..=nb {
            pw *= x;
            let (q, r) = (&pw + 1u32).div_rem(&(&xi + 1u32));
            if r.is_zero() {
                if let Some(y) = sqrt_exact(&q) {
                    if y.is_positive() {
                        found.push(vec![xi.clone(), y, n.into()]);
                    }
                }
            }
        }
    }
    Ok(LemmaReport::build("4.1", &["x", "y", "n"], b, vec![], |_| true, found))
}

/// The four small-curve lemmas: cubic, trinomial, negative-base repunit and
/// Ljunggren's equation. Bounds: `x` (cubic), `x`, `p` (trinomial), `r`, `n`
/// (repunit) and `x`, `n` (Ljunggren) are read from the same map.
pub fn verify_small_curves(b: &SearchBounds) -> Result<Vec<LemmaReport>> {
    Ok(vec![
        verify_cubic(b)?,
        verify_trinomial(b)?,
        verify_negative_base_repunit(b)?,
        verify_ljunggren(b)?,
    ])
}

/// `2^(2r−3) − 2^r + 1 = 97^s` with `r ≥ 5`, `s ≥ 1`, for `r ≤ r_max`.
pub fn verify_97(r_max: u64) -> Result<LemmaReport> {
    if r_max < 5 {
        return Err(Error::arg("r_max must be at least 5"));
    }
    let b = SearchBounds::new(&[("r", r_max)])?;
    let base = Integer::from(97);
    let mut found = Vec::new();
    for r in 5..=r_max {
        let v = pow2(2 * r - 3) - pow2(r) + 1u32;
        if let Some(s) = exact_log(&v, &base) {
            if s >= 1 {
                found.push(tuple(&[r as i64, s as i64]));
            }
        }
    }
    Ok(LemmaReport::build(
        "4.2",
        &["r", "s"],
        &b,
        vec![tuple(&[5, 1])],
        |t| small(t, 0) as u64 <= r_max,
        found,
    ))
}

/// `d1·x² + base^(2y) = 2^(z+2)` over `z ≤ z_bound`.
fn scan_even_power_curve(d1: u32, base: u32, z_bound: u64) -> Vec<Tuple> {
    let step = num_traits::pow(Integer::from(base), 2);
    let mut found = Vec::new();
    for z in 1..=z_bound {
        let target = pow2(z + 2);
        let mut pw = step.clone();
        let mut y = 1i64;
        while pw < target {
            let (q, r) = (&target - &pw).div_rem(&Integer::from(d1));
            if r.is_zero() {
                if let Some(x) = sqrt_exact(&q) {
                    if x.is_positive() {
                        found.push(vec![x, y.into(), z.into()]);
                    }
                }
            }
            pw *= &step;
            y += 1;
        }
    }
    found
}

/// `7x² + 25^(2y) = 2^(z+2)` and `15x² + 49^(2y) = 2^(z+2)`; bound `z`.
pub fn verify_4344(b: &SearchBounds) -> Result<Vec<LemmaReport>> {
    let zb = b.get("z")?;
    Ok(vec![
        LemmaReport::build("4.3", &["x", "y", "z"], b, vec![], |_| true, scan_even_power_curve(7, 25, zb)),
        LemmaReport::build("4.4", &["x", "y", "z"], b, vec![], |_| true, scan_even_power_curve(15, 49, zb)),
    ])
}

/// Every prime `q | (x^p − 1)/(x − 1)` is `p` or `≡ 1 (mod 2p)`, and `p`
/// divides the quotient at most once.
pub fn birkhoff_vandiver_check(x: &Integer, p: u32) -> Result<bool> {
    if x.abs() <= Integer::one() {
        return Err(Error::arg("need |x| > 1"));
    }
    if p < 3 || !is_probable_prime(&Integer::from(p)) {
        return Err(Error::arg(format!("{p} is not an odd prime")));
    }
    let quotient = (num_traits::pow(x.clone(), p as usize) - 1u32) / (x - 1u32);
    let p_big = Integer::from(p);
    let two_p = Integer::from(2 * p);
    Ok(factorize(&quotient).into_iter().all(|(q, e)| {
        if q == p_big {
            e == 1
        } else {
            q.mod_floor(&two_p).is_one()
        }
    }))
}

/// Birkhoff–Vandiver over `2 ≤ |x| ≤ x_bound` and odd primes `p ≤ p_bound`;
/// the found set lists failures.
pub fn verify_birkhoff_vandiver(b: &SearchBounds) -> Result<LemmaReport> {
    let (xb, pb) = (b.get("x")?, b.get("p")?);
    let mut found = Vec::new();
    for &p in &odd_primes_up_to(pb) {
        for x in (2..=xb as i64).flat_map(|x| [x, -x]) {
            if !birkhoff_vandiver_check(&Integer::from(x), p)? {
                found.push(tuple(&[x, p as i64]));
            }
        }
    }
    Ok(LemmaReport::build("2.2", &["x", "p"], b, vec![], |_| true, found)
        .with_note("found lists (x, p) violating the divisor property"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(items: &[(&str, u64)]) -> SearchBounds {
        SearchBounds::new(items).unwrap()
    }

    #[test]
    fn bounds_validation() {
        assert!(SearchBounds::new(&[("x", 1)]).is_err());
        let b = bounds(&[("x", 5)]);
        assert_eq!(b.get("x").unwrap(), 5);
        assert!(b.get("y").is_err());
        assert_eq!(b.to_string(), "x<=5");
    }

    #[test]
    fn catalan() {
        let r = verify_catalan(&bounds(&[("x", 100), ("y", 100), ("m", 20), ("n", 20)])).unwrap();
        assert_eq!(r.found, vec![tuple(&[3, 2, 2, 3])]);
        assert!(r.confirmed());
        let r = verify_catalan(&bounds(&[("x", 2), ("y", 2), ("m", 20), ("n", 20)])).unwrap();
        assert!(r.found.is_empty());
        assert!(r.confirmed(), "claimed tuple lies outside x <= 2");
        let r = verify_catalan(&bounds(&[("x", 1000), ("y", 1000), ("m", 12), ("n", 12)])).unwrap();
        assert_eq!(r.found, vec![tuple(&[3, 2, 2, 3])]);
    }

    #[test]
    fn pow23() {
        let b = bounds(&[("r", 30), ("s", 30), ("n", 20)]);
        let r = verify_pow23(&b, 1).unwrap();
        assert_eq!(
            r.found,
            vec![tuple(&[3, 1, 5, 2]), tuple(&[4, 1, 7, 2]), tuple(&[5, 2, 17, 2])]
        );
        assert!(r.confirmed());
        let r = verify_pow23(&b, -1).unwrap();
        assert!(r.found.is_empty() && r.confirmed());
        let r = verify_pow23(&bounds(&[("r", 2), ("s", 30), ("n", 20)]), 1).unwrap();
        assert!(r.found.is_empty() && r.confirmed());
    }

    #[test]
    fn three_power_side_conditions() {
        let b = bounds(&[("r", 60), ("n", 60)]);
        for sign in [1, -1] {
            let r = verify_3s_pm1(&b, sign, false).unwrap();
            assert!(r.found.is_empty() && r.confirmed());
            let r = verify_3s_pm1(&b, sign, true).unwrap();
            assert!(r.found.is_empty(), "sign {sign}: {:?}", r.found);
        }
    }

    #[test]
    fn small_curves() {
        let b = bounds(&[("x", 10_000), ("p", 7), ("r", 60), ("n", 20)]);
        let reports = verify_small_curves(&b).unwrap();
        let ids: Vec<_> = reports.iter().map(|r| r.lemma.as_str()).collect();
        assert_eq!(ids, ["2.5", "2.6", "2.7", "4.1"]);
        assert!(reports.iter().all(|r| r.found.is_empty() && r.confirmed()));
    }

    #[test]
    fn ninety_seven() {
        let r = verify_97(60).unwrap();
        assert_eq!(r.found, vec![tuple(&[5, 1])]);
        assert!(r.confirmed());
        assert_eq!(pow2(7) - pow2(5) + 1u32, Integer::from(97));
        assert_eq!(verify_97(5).unwrap().found, vec![tuple(&[5, 1])]);
        assert!(verify_97(4).is_err());
    }

    #[test]
    fn lemmas_43_44() {
        for zb in [3, 60] {
            let reports = verify_4344(&bounds(&[("z", zb)])).unwrap();
            assert_eq!(reports.len(), 2);
            assert!(reports.iter().all(|r| r.found.is_empty() && r.confirmed()));
        }
    }

    #[test]
    fn birkhoff_vandiver() {
        assert!(birkhoff_vandiver_check(&Integer::from(2), 5).unwrap());
        assert!(birkhoff_vandiver_check(&Integer::from(4), 3).unwrap());
        assert!(birkhoff_vandiver_check(&Integer::from(1), 3).is_err());
        assert!(birkhoff_vandiver_check(&Integer::from(5), 9).is_err());
        let r = verify_birkhoff_vandiver(&bounds(&[("x", 50), ("p", 13)])).unwrap();
        assert!(r.found.is_empty() && r.confirmed());
    }

    #[test]
    fn report_verdict_logic() {
        let b = bounds(&[("x", 10)]);
        let r = LemmaReport::build("t", &["x"], &b, vec![tuple(&[3])], |_| true, vec![]);
        assert_eq!(r.verdict, Verdict::Discrepancy);
        let r = LemmaReport::build("t", &["x"], &b, vec![], |_| true, vec![tuple(&[3])]);
        assert_eq!(r.verdict, Verdict::Discrepancy);
        let r = LemmaReport::build("t", &["x"], &b, vec![tuple(&[30])], |t| small(t, 0) <= 10, vec![]);
        assert_eq!(r.verdict, Verdict::ConfirmedWithinBounds);
    }
}
