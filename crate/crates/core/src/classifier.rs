//! Solutions of `d1·x² + d2^m = 2^(n+2)`.
//!
//! Two independent routes are provided. [`brute_force`] scans `(n, m)`
//! directly. The structural route builds the odd-`m` and even-`m` solution
//! sets from least solutions of `d1·X² + d2·Y² = 2^(Z+2)` (resp. with `d2²`),
//! a small table of sporadic solutions, and the special family
//! `d1·X₁² = 2^Z₁ − λ`, `d2 = 3·2^Z₁ + λ`. [`classify`] runs both and keeps
//! every disagreement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{exact_log, gcd, pow2, sqrt_exact};
use crate::qforms::{least_solution, solution_for_t, LeastSolution, QFInstance, DEFAULT_Z_BOUND};
use crate::{Error, Integer, Result};

pub const DEFAULT_N_MAX: u64 = 200;

/// A coefficient pair `(d1, d2)`: odd, positive, coprime, `d2 > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    #[serde(with = "crate::serde_dec")]
    d1: Integer,
    #[serde(with = "crate::serde_dec")]
    d2: Integer,
}

impl Instance {
    pub fn new(d1: impl Into<Integer>, d2: impl Into<Integer>) -> Result<Self> {
        let (d1, d2) = (d1.into(), d2.into());
        let bad = |reason: &str| Error::InvalidInstance {
            d1: d1.to_string(),
            d2: d2.to_string(),
            reason: reason.to_string(),
        };
        if !d1.is_positive() || !d2.is_positive() {
            return Err(bad("d1 and d2 must be positive"));
        }
        if d1.is_even() || d2.is_even() {
            return Err(bad("d1 and d2 must be odd"));
        }
        if d2.is_one() {
            return Err(bad("d2 must be greater than 1"));
        }
        if !gcd(&d1, &d2).is_one() {
            return Err(bad("d1 and d2 must be coprime"));
        }
        Ok(Instance { d1, d2 })
    }

    pub fn d1(&self) -> &Integer {
        &self.d1
    }

    pub fn d2(&self) -> &Integer {
        &self.d2
    }

    pub fn is_d1_one(&self) -> bool {
        self.d1.is_one()
    }

    fn is(&self, d1: u32, d2: u32) -> bool {
        self.d1 == Integer::from(d1) && self.d2 == Integer::from(d2)
    }

    /// Whether `(x, m, n)` satisfies the equation exactly.
    pub fn check(&self, s: &Solution) -> bool {
        s.x.is_positive()
            && s.m > 0
            && s.n > 0
            && &self.d1 * &s.x * &s.x + num_traits::pow(self.d2.clone(), s.m as usize)
                == pow2(s.n + 2)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// A solution `(x, m, n)`. Ordered by `n`, then `m`, then `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Solution {
    #[serde(with = "crate::serde_dec")]
    pub x: Integer,
    pub m: u32,
    pub n: u64,
}

impl Solution {
    pub fn new(x: impl Into<Integer>, m: u32, n: u64) -> Self {
        Solution { x: x.into(), m, n }
    }
}

impl Ord for Solution {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.m, &self.x).cmp(&(other.n, other.m, &other.x))
    }
}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.m, self.n)
    }
}

/// Which structural case produced a solution.
///
/// Odd-`m` cases 1–12 and even-`m` cases 1–4 render as `odd-i` … `odd-xii`
/// and `even-i` … `even-iv`. Case `odd-ix` is the special family at `t = 3`,
/// `odd-xii` and `even-iv` are the least solutions themselves (`t = 1`); the
/// rest are sporadic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Odd(u8),
    Even(u8),
    BruteForceOnly,
}

const ROMAN: [&str; 12] = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii"];

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CaseLabel::Odd(i) => write!(f, "odd-{}", ROMAN[i as usize - 1]),
            CaseLabel::Even(i) => write!(f, "even-{}", ROMAN[i as usize - 1]),
            CaseLabel::BruteForceOnly => f.write_str("brute-force-only"),
        }
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "brute-force-only" {
            return Ok(CaseLabel::BruteForceOnly);
        }
        let parse = |r: &str, max: usize| {
            ROMAN[..max]
                .iter()
                .position(|&x| x == r)
                .map(|i| i as u8 + 1)
        };
        let label = match s.split_once('-') {
            Some(("odd", r)) => parse(r, 12).map(CaseLabel::Odd),
            Some(("even", r)) => parse(r, 4).map(CaseLabel::Even),
            _ => None,
        };
        label.ok_or_else(|| Error::arg(format!("unknown case label {s:?}")))
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Structural,
    BruteForce,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedSolution {
    #[serde(flatten)]
    pub solution: Solution,
    pub case: CaseLabel,
    pub provenance: Provenance,
}

/// Membership in the family `d1·X₁² = 2^Z₁ − λ`, `d2 = 3·2^Z₁ + λ`.
///
/// `closed_form_x` is `X₁·(2^(Z₁+1) − λ)`, the customary closed form for the
/// `t = 3` solution; `computed_x` comes from ring exponentiation. They differ
/// (the correct sign is `+λ`), so the mismatch is reported, not hidden.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub lambda: i8,
    pub z1: u64,
    #[serde(with = "crate::serde_dec")]
    pub x1: Integer,
    #[serde(with = "crate::serde_dec")]
    pub computed_x: Integer,
    #[serde(with = "crate::serde_dec")]
    pub closed_form_x: Integer,
    pub closed_form_matches: bool,
}

/// Structural and brute-force sets disagree. Both sides are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Structural solutions with `n ≤ n_max` the scan did not find.
    pub structural_only: Vec<Solution>,
    /// Scan hits the structural route should have produced.
    pub oracle_only: Vec<Solution>,
}

impl Discrepancy {
    pub fn is_empty(&self) -> bool {
        self.structural_only.is_empty() && self.oracle_only.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `d1 = 1`: brute force only, counts checked against the `d1 = 1` bound.
    SingleCoefficient,
    /// `d1 > 1`: structural and brute force merged.
    TwoCoefficient,
}

/// Structural output for one parity of `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialClassification {
    pub solutions: BTreeMap<Solution, CaseLabel>,
    pub least: Option<LeastSolution>,
    pub family: Option<FamilyInfo>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub instance: Instance,
    pub mode: Mode,
    pub n_max: u64,
    pub z_bound: u32,
    pub solutions: Vec<ClassifiedSolution>,
    pub count: usize,
    /// Solutions with odd `m`.
    pub n1: usize,
    /// Solutions with even `m`.
    pub n2: usize,
    pub family: Option<FamilyInfo>,
    /// The instance is one of the listed count exceptions.
    pub theorem_exception: bool,
    /// `count` respects the bound for this mode (2, or 1 when `d1 = 1`,
    /// raised for the listed exceptions).
    pub theorem_consistent: bool,
    /// Parities (`"odd"`, `"even"`) whose least solution was not found within
    /// `z_bound`; their brute-force hits beyond `z_bound` are unlabelled.
    pub fallback: Vec<String>,
    pub discrepancy: Option<Discrepancy>,
    pub notes: Vec<String>,
}

impl Classification {
    pub fn plain_solutions(&self) -> Vec<Solution> {
        self.solutions.iter().map(|c| c.solution.clone()).collect()
    }

    pub fn has_discrepancy(&self) -> bool {
        self.discrepancy.is_some()
    }
}

/// All solutions with `n ≤ n_max`, by direct search over `(n, m)`.
pub fn brute_force(inst: &Instance, n_max: u64) -> Vec<Solution> {
    let limit = pow2(n_max + 2);
    let mut powers = Vec::new();
    let mut p = inst.d2.clone();
    while p < limit {
        powers.push(p.clone());
        p *= &inst.d2;
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        let target = pow2(n + 2);
        for (i, pm) in powers.iter().enumerate() {
            if pm >= &target {
                break;
            }
            let (q, r) = (&target - pm).div_rem(&inst.d1);
            if !r.is_zero() {
                continue;
            }
            if let Some(x) = sqrt_exact(&q) {
                if x.is_positive() {
                    out.push(Solution::new(x, i as u32 + 1, n));
                }
            }
        }
    }
    out.sort();
    out
}

/// Sporadic odd-`m` solutions: `(d1, d2, x, m, n, case)`.
const ODD_TABLE: [(u32, u32, u32, u32, u64, u8); 10] = [
    (5, 3, 19, 5, 9, 1),
    (3, 5, 13, 1, 7, 2),
    (13, 3, 71, 1, 14, 3),
    (5, 3, 5, 1, 5, 4),
    (21, 11, 79, 1, 15, 5),
    (3, 29, 209, 1, 15, 6),
    (3, 5, 1, 3, 5, 7),
    (11, 5, 19, 3, 10, 8),
    (5, 3, 1, 3, 3, 10),
    (13, 3, 1, 5, 6, 11),
];

/// Sporadic even-`m` solutions.
const EVEN_TABLE: [(u32, u32, u32, u32, u64, u8); 3] = [
    (7, 3, 5, 4, 6, 1),
    (7, 5, 17, 2, 9, 2),
    (15, 7, 33, 2, 12, 3),
];

fn table_hits(
    inst: &Instance,
    table: &[(u32, u32, u32, u32, u64, u8)],
    label: fn(u8) -> CaseLabel,
) -> Vec<(Solution, CaseLabel)> {
    table
        .iter()
        .filter(|e| inst.is(e.0, e.1))
        .map(|&(_, _, x, m, n, case)| (Solution::new(x, m, n), label(case)))
        .collect()
}

/// `Some(e)` with `y = d2^e`.
fn power_of_d2(y: &Integer, d2: &Integer) -> Option<u32> {
    if y.is_one() {
        Some(0)
    } else {
        exact_log(y, d2)
    }
}

fn least_or_signal(q: &QFInstance, z_bound: u32) -> Result<Option<LeastSolution>> {
    if !q.passes_congruence() {
        return Ok(None);
    }
    least_solution(q, z_bound)?
        .map(Some)
        .ok_or(Error::NoLeastSolution { z_bound })
}

/// Family data when the least solution has `Y₁ = 1` and
/// `d1·X₁² = 2^Z₁ − λ` for `λ = ±1`.
fn family_of(inst: &Instance, q: &QFInstance, least: &LeastSolution) -> Result<Option<FamilyInfo>> {
    if !least.y1.is_one() {
        return Ok(None);
    }
    let lhs = &inst.d1 * &least.x1 * &least.x1;
    let p = pow2(least.z1);
    let lambda: i8 = if lhs == &p - 1 {
        1
    } else if lhs == &p + 1 {
        -1
    } else {
        return Ok(None);
    };
    debug_assert_eq!(inst.d2, 3 * &p + lambda as i32);
    let computed = solution_for_t(q, least, 3)?;
    let closed_form_x = &least.x1 * (pow2(least.z1 + 1) - lambda as i32);
    Ok(Some(FamilyInfo {
        lambda,
        z1: least.z1,
        x1: least.x1.clone(),
        closed_form_matches: closed_form_x == computed.x,
        computed_x: computed.x,
        closed_form_x,
    }))
}

/// Structural odd-`m` solutions. Requires `d1 > 1`.
///
/// Returns [`Error::NoLeastSolution`] when `d1 + d2 ≡ 0 (mod 8)` but no least
/// solution exists within `z_bound`.
pub fn classify_odd_m(inst: &Instance, z_bound: u32) -> Result<PartialClassification> {
    if inst.is_d1_one() {
        return Err(Error::arg("structural classification needs d1 > 1"));
    }
    let mut out = PartialClassification::default();
    for (s, c) in table_hits(inst, &ODD_TABLE, CaseLabel::Odd) {
        out.solutions.insert(s, c);
    }
    let q = QFInstance::new(inst.d1.clone(), inst.d2.clone())?;
    let Some(least) = least_or_signal(&q, z_bound)? else {
        out.notes.push("d1 + d2 is not 0 mod 8: no odd-m solutions".into());
        return Ok(out);
    };
    if let Some(e) = power_of_d2(&least.y1, &inst.d2) {
        out.solutions
            .entry(Solution::new(least.x1.clone(), 2 * e + 1, least.z1))
            .or_insert(CaseLabel::Odd(12));
    }
    if let Some(fam) = family_of(inst, &q, &least)? {
        let t3 = solution_for_t(&q, &least, 3)?;
        match power_of_d2(&t3.y, &inst.d2) {
            Some(e) => {
                out.solutions
                    .entry(Solution::new(t3.x, 2 * e + 1, t3.z))
                    .or_insert(CaseLabel::Odd(9));
            }
            None => out.notes.push(format!("family t=3 element has Y = {} not a power of d2", t3.y)),
        }
        if !fam.closed_form_matches {
            out.notes.push(format!(
                "family closed form X1(2^(Z1+1) - lambda) gives x = {}, ring exponentiation gives x = {}",
                fam.closed_form_x, fam.computed_x
            ));
        }
        out.family = Some(fam);
    }
    out.least = Some(least);
    Ok(out)
}

/// Structural even-`m` solutions, from `d1·X² + d2²·Y² = 2^(Z+2)`.
pub fn classify_even_m(inst: &Instance, z_bound: u32) -> Result<PartialClassification> {
    if inst.is_d1_one() {
        return Err(Error::arg("structural classification needs d1 > 1"));
    }
    let mut out = PartialClassification::default();
    for (s, c) in table_hits(inst, &EVEN_TABLE, CaseLabel::Even) {
        out.solutions.insert(s, c);
    }
    let q = QFInstance::new(inst.d1.clone(), &inst.d2 * &inst.d2)?;
    let Some(least) = least_or_signal(&q, z_bound)? else {
        out.notes.push("d1 is not 7 mod 8: no even-m solutions".into());
        return Ok(out);
    };
    if let Some(e) = power_of_d2(&least.y1, &inst.d2) {
        out.solutions
            .entry(Solution::new(least.x1.clone(), 2 * e + 2, least.z1))
            .or_insert(CaseLabel::Even(4));
    }
    out.least = Some(least);

    // Family members carry no even-m solution, except (31, 97).
    let odd_q = QFInstance::new(inst.d1.clone(), inst.d2.clone())?;
    if odd_q.passes_congruence() && !inst.is(31, 97) {
        if let Some(odd_least) = least_solution(&odd_q, z_bound)? {
            if family_of(inst, &odd_q, &odd_least)?.is_some() && !out.solutions.is_empty() {
                let dropped: Vec<String> = out.solutions.keys().map(|s| s.to_string()).collect();
                out.notes.push(format!(
                    "family member: even-m candidates {} suppressed",
                    dropped.join(", ")
                ));
                out.solutions.clear();
            }
        }
    }
    Ok(out)
}

fn d1_one_expected_max(d2: &Integer) -> (usize, bool) {
    if *d2 == Integer::from(7) {
        return (6, true);
    }
    if *d2 == Integer::from(23) {
        return (2, true);
    }
    match exact_log(&(d2 + 1u32), &Integer::from(2)) {
        Some(r) if r > 3 => (2, true),
        _ => (1, false),
    }
}

fn two_coeff_expected_max(inst: &Instance) -> (usize, bool) {
    if inst.is(3, 5) || inst.is(5, 3) {
        (4, true)
    } else if inst.is(13, 3) || inst.is(31, 97) {
        (3, true)
    } else {
        (2, false)
    }
}

/// Merge structural and brute-force results for one instance.
pub fn classify(inst: &Instance, n_max: u64, z_bound: u32) -> Result<Classification> {
    if n_max == 0 {
        return Err(Error::arg("n_max must be at least 1"));
    }
    if z_bound == 0 {
        return Err(Error::arg("z_bound must be at least 1"));
    }
    let oracle = brute_force(inst, n_max);
    let mut c = Classification {
        instance: inst.clone(),
        mode: Mode::TwoCoefficient,
        n_max,
        z_bound,
        solutions: Vec::new(),
        count: 0,
        n1: 0,
        n2: 0,
        family: None,
        theorem_exception: false,
        theorem_consistent: true,
        fallback: Vec::new(),
        discrepancy: None,
        notes: Vec::new(),
    };

    if inst.is_d1_one() {
        c.mode = Mode::SingleCoefficient;
        c.solutions = oracle
            .into_iter()
            .map(|solution| ClassifiedSolution {
                solution,
                case: CaseLabel::BruteForceOnly,
                provenance: Provenance::BruteForce,
            })
            .collect();
        let (max, exception) = d1_one_expected_max(&inst.d2);
        c.theorem_exception = exception;
        finish_counts(&mut c, max);
        return Ok(c);
    }

    let mut structural: BTreeMap<Solution, CaseLabel> = BTreeMap::new();
    let mut fallback_odd = false;
    let mut fallback_even = false;
    for (parity, part) in [("odd", classify_odd_m(inst, z_bound)), ("even", classify_even_m(inst, z_bound))] {
        match part {
            Ok(p) => {
                structural.extend(p.solutions);
                if p.family.is_some() {
                    c.family = p.family;
                }
                c.notes.extend(p.notes);
            }
            Err(Error::NoLeastSolution { .. }) => {
                c.fallback.push(parity.to_string());
                c.notes.push(format!("no {parity}-m least solution with Z <= {z_bound}"));
                if parity == "odd" {
                    fallback_odd = true;
                } else {
                    fallback_even = true;
                }
            }
            Err(e) => return Err(e),
        }
    }

    let oracle_set: BTreeSet<Solution> = oracle.iter().cloned().collect();
    let mut disc = Discrepancy::default();
    for s in structural.keys() {
        if !inst.check(s) {
            return Err(Error::Inconsistent(format!("structural tuple {s} fails the equation for {inst}")));
        }
        if s.n <= n_max && !oracle_set.contains(s) {
            disc.structural_only.push(s.clone());
        }
    }
    let mut merged = Vec::new();
    for s in &oracle {
        match structural.get(s) {
            Some(&case) => merged.push(ClassifiedSolution {
                solution: s.clone(),
                case,
                provenance: Provenance::Both,
            }),
            None => {
                let in_fallback = if s.m % 2 == 1 { fallback_odd } else { fallback_even };
                // Without a least solution up to z_bound, nothing with n <= z_bound can exist.
                if !in_fallback || s.n <= z_bound as u64 {
                    disc.oracle_only.push(s.clone());
                }
                merged.push(ClassifiedSolution {
                    solution: s.clone(),
                    case: CaseLabel::BruteForceOnly,
                    provenance: Provenance::BruteForce,
                });
            }
        }
    }
    for (s, &case) in &structural {
        if s.n > n_max {
            c.notes.push(format!("structural solution {s} lies beyond n_max"));
            merged.push(ClassifiedSolution {
                solution: s.clone(),
                case,
                provenance: Provenance::Structural,
            });
        }
    }
    merged.sort_by(|a, b| a.solution.cmp(&b.solution));
    c.solutions = merged;
    if !disc.is_empty() {
        c.discrepancy = Some(disc);
    }
    let (max, exception) = two_coeff_expected_max(inst);
    c.theorem_exception = exception;
    finish_counts(&mut c, max);
    Ok(c)
}

fn finish_counts(c: &mut Classification, max: usize) {
    c.count = c.solutions.len();
    c.n1 = c.solutions.iter().filter(|s| s.solution.m % 2 == 1).count();
    c.n2 = c.count - c.n1;
    c.theorem_consistent = c.count <= max;
}

/// [`classify`] with default bounds.
pub fn classify_default(inst: &Instance) -> Result<Classification> {
    classify(inst, DEFAULT_N_MAX, DEFAULT_Z_BOUND)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub instance: Instance,
    pub count: usize,
    pub theorem_exception: bool,
    pub consistent: bool,
    pub solutions: Vec<Solution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub d_max: u64,
    pub n_max: u64,
    pub rows: Vec<ScanRow>,
    pub inconsistent: usize,
}

/// Valid instances with `1 < d1, d2 ≤ d_max`.
pub fn scan_instances(d_max: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for d1 in (3..=d_max).step_by(2) {
        for d2 in (3..=d_max).step_by(2) {
            if let Ok(i) = Instance::new(d1, d2) {
                out.push(i);
            }
        }
    }
    out
}

/// Brute-force counts for every valid instance with `1 < d1, d2 ≤ d_max`.
///
/// `jobs = None` uses the global rayon pool.
pub fn scan(d_max: u64, n_max: u64, jobs: Option<usize>) -> Result<Census> {
    if d_max < 3 {
        return Err(Error::arg("d_max must be at least 3"));
    }
    if n_max == 0 {
        return Err(Error::arg("n_max must be at least 1"));
    }
    let instances = scan_instances(d_max);
    let run = || -> Vec<ScanRow> {
        instances
            .par_iter()
            .map(|inst| {
                let solutions = brute_force(inst, n_max);
                let (max, theorem_exception) = two_coeff_expected_max(inst);
                ScanRow {
                    instance: inst.clone(),
                    count: solutions.len(),
                    theorem_exception,
                    consistent: solutions.len() <= max,
                    solutions,
                }
            })
            .collect()
    };
    let mut rows = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::arg(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    rows.sort_by(|a, b| a.instance.cmp(&b.instance));
    let inconsistent = rows.iter().filter(|r| !r.consistent).count();
    Ok(Census { d_max, n_max, rows, inconsistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(d1: u32, d2: u32) -> Instance {
        Instance::new(d1, d2).unwrap()
    }

    fn sols(v: &[(u32, u32, u64)]) -> Vec<Solution> {
        let mut out: Vec<Solution> = v.iter().map(|&(x, m, n)| Solution::new(x, m, n)).collect();
        out.sort();
        out
    }

    #[test]
    fn validation() {
        assert!(Instance::new(3, 9).is_err());
        assert!(Instance::new(4, 5).is_err());
        assert!(Instance::new(3, 1).is_err());
        assert!(Instance::new(-3, 5).is_err());
        assert!(Instance::new(1, 7).is_ok());
    }

    #[test]
    fn tables_satisfy_equation() {
        for &(d1, d2, x, m, n, _) in ODD_TABLE.iter().chain(EVEN_TABLE.iter()) {
            let i = inst(d1, d2);
            let s = Solution::new(x, m, n);
            assert!(i.check(&s), "{i} {s}");
            assert_eq!(s.m % 2 == 1, ODD_TABLE.iter().any(|e| e.0 == d1 && e.1 == d2 && e.2 == x));
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force(&inst(3, 5), 20), sols(&[(1, 1, 1), (3, 1, 3), (1, 3, 5), (13, 1, 7)]));
        assert_eq!(brute_force(&inst(13, 3), 20), sols(&[(1, 1, 2), (1, 5, 6), (71, 1, 14)]));
        assert_eq!(brute_force(&inst(31, 97), 20), sols(&[(1, 1, 5), (65, 1, 15), (15, 2, 12)]));
    }

    #[test]
    fn odd_m_examples() {
        let keys = |p: PartialClassification| p.solutions.into_keys().collect::<Vec<_>>();
        assert_eq!(keys(classify_odd_m(&inst(11, 5), 64).unwrap()), sols(&[(1, 1, 2), (19, 3, 10)]));
        assert_eq!(keys(classify_odd_m(&inst(21, 11), 64).unwrap()), sols(&[(1, 1, 3), (79, 1, 15)]));
        let p = classify_odd_m(&inst(31, 97), 64).unwrap();
        let fam = p.family.clone().unwrap();
        assert_eq!((fam.lambda, fam.z1), (1, 5));
        assert_eq!(fam.computed_x, Integer::from(65));
        assert_eq!(fam.closed_form_x, Integer::from(63));
        assert!(!fam.closed_form_matches);
        assert_eq!(p.solutions[&Solution::new(65, 1, 15)], CaseLabel::Odd(9));
        assert_eq!(p.solutions[&Solution::new(1, 1, 5)], CaseLabel::Odd(12));
    }

    #[test]
    fn even_m_examples() {
        let keys = |p: PartialClassification| p.solutions.into_keys().collect::<Vec<_>>();
        assert_eq!(keys(classify_even_m(&inst(7, 3), 64).unwrap()), sols(&[(1, 2, 2), (5, 4, 6)]));
        assert_eq!(keys(classify_even_m(&inst(15, 7), 64).unwrap()), sols(&[(1, 2, 4), (33, 2, 12)]));
        assert!(classify_even_m(&inst(3, 5), 64).unwrap().solutions.is_empty());
        assert_eq!(keys(classify_even_m(&inst(31, 97), 64).unwrap()), sols(&[(15, 2, 12)]));
    }

    #[test]
    fn classify_exceptions() {
        let c = classify_default(&inst(5, 3)).unwrap();
        assert_eq!(c.count, 4);
        assert_eq!(c.plain_solutions(), sols(&[(1, 1, 1), (1, 3, 3), (5, 1, 5), (19, 5, 9)]));
        assert!(c.theorem_exception && c.theorem_consistent && !c.has_discrepancy());
        assert!(c.solutions.iter().all(|s| s.provenance == Provenance::Both));

        let c = classify_default(&inst(1, 7)).unwrap();
        assert_eq!(c.mode, Mode::SingleCoefficient);
        assert_eq!(
            c.plain_solutions(),
            sols(&[(1, 1, 1), (3, 1, 2), (5, 1, 3), (11, 1, 5), (13, 3, 7), (181, 1, 13)])
        );
        assert!(c.theorem_exception && c.theorem_consistent);

        let c = classify_default(&inst(1, 23)).unwrap();
        assert_eq!(c.plain_solutions(), sols(&[(3, 1, 3), (45, 1, 9)]));
        assert!(c.theorem_exception);
        assert!(classify_default(&inst(1, 31)).unwrap().theorem_exception);
        assert!(!classify_default(&inst(1, 5)).unwrap().theorem_exception);
    }

    #[test]
    fn case_labels_round_trip() {
        for l in (1..=12).map(CaseLabel::Odd).chain((1..=4).map(CaseLabel::Even)).chain([CaseLabel::BruteForceOnly]) {
            assert_eq!(l.to_string().parse::<CaseLabel>().unwrap(), l);
        }
        assert_eq!(CaseLabel::Odd(9).to_string(), "odd-ix");
        assert!("even-v".parse::<CaseLabel>().is_err());
    }

    #[test]
    fn scan_small() {
        let c = scan(5, 60, Some(2)).unwrap();
        let counts: Vec<(String, usize)> = c.rows.iter().map(|r| (r.instance.to_string(), r.count)).collect();
        assert_eq!(counts, vec![("(3, 5)".into(), 4), ("(5, 3)".into(), 4)]);
        assert_eq!(c.inconsistent, 0);
        assert!(scan(3, 10, None).unwrap().rows.is_empty());
        assert!(scan(2, 10, None).is_err());
    }
}
