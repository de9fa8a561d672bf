//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rnkit::auxdioph::{run_all, SearchBounds, LEMMA_IDS};
use rnkit::classifier::{brute_force, classify, scan, Instance, Solution};
use rnkit::fiblucas::fib_lucas;
use rnkit::lehmer::{
    all_defective_entries, has_primitive_divisor, is_listed_defective, lehmer_number, power_sum,
    LehmerParams,
};
use rnkit::qforms::{composed_least, least_solution, solve_one_coeff, QFInstance};
use rnkit::Integer;

type Outcome = Result<String, String>;

fn sols(v: &[(u32, u32, u64)]) -> Vec<Solution> {
    let mut out: Vec<Solution> = v.iter().map(|&(x, m, n)| Solution::new(x, m, n)).collect();
    out.sort();
    out
}

fn show(v: &[Solution]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Classify each instance at `n_max = 200`, comparing the solution list and
/// the per-instance time limit.
fn check_lists(cases: &[(u32, u32, &[(u32, u32, u64)])], limit: Duration) -> Outcome {
    let mut slowest = Duration::ZERO;
    for &(d1, d2, expect) in cases {
        let i = Instance::new(d1, d2).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let c = classify(&i, 200, 64).map_err(|e| e.to_string())?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        let got = c.plain_solutions();
        if got != sols(expect) {
            return Err(format!("{i}: got {}", show(&got)));
        }
        if c.discrepancy.is_some() {
            return Err(format!("{i}: structural/brute-force discrepancy {:?}", c.discrepancy));
        }
        if dt > limit {
            return Err(format!("{i}: took {dt:?}"));
        }
    }
    Ok(format!("{} instances, slowest {slowest:.2?}", cases.len()))
}

fn criterion_1() -> Outcome {
    check_lists(
        &[
            (3, 5, &[(1, 1, 1), (3, 1, 3), (1, 3, 5), (13, 1, 7)]),
            (5, 3, &[(1, 1, 1), (1, 3, 3), (5, 1, 5), (19, 5, 9)]),
            (13, 3, &[(1, 1, 2), (1, 5, 6), (71, 1, 14)]),
            (31, 97, &[(1, 1, 5), (65, 1, 15), (15, 2, 12)]),
        ],
        Duration::from_secs(1),
    )
}

fn criterion_2() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (d2, expect) in [(7u32, 6usize), (23, 2), (15, 2), (31, 2), (63, 2)] {
        let i = Instance::new(1, d2).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let found = brute_force(&i, 200);
        slowest = slowest.max(t.elapsed());
        if found.len() != expect {
            return Err(format!("N(1, {d2}) = {}: {}", found.len(), show(&found)));
        }
    }
    if slowest > Duration::from_secs(1) {
        return Err(format!("slowest instance took {slowest:?}"));
    }
    Ok(format!("N(1,7)=6, N(1,23)=N(1,15)=N(1,31)=N(1,63)=2, slowest {slowest:.2?}"))
}

fn criterion_3() -> Outcome {
    check_lists(
        &[
            (11, 5, &[(1, 1, 2), (19, 3, 10)]),
            (21, 11, &[(1, 1, 3), (79, 1, 15)]),
            (3, 29, &[(1, 1, 3), (209, 1, 15)]),
            (7, 3, &[(1, 2, 2), (5, 4, 6)]),
            (7, 5, &[(1, 2, 3), (17, 2, 9)]),
            (15, 7, &[(1, 2, 4), (33, 2, 12)]),
        ],
        Duration::from_secs(1),
    )
}

fn criterion_4() -> Outcome {
    let p = LehmerParams::new(7, -25).map_err(|e| e.to_string())?;
    let l3 = lehmer_number(&p, 3).map_err(|e| e.to_string())?;
    let l5 = lehmer_number(&p, 5).map_err(|e| e.to_string())?;
    if l3 == Integer::from(-1) && l5 == Integer::from(-55) {
        Ok("(a, c) = (7, -25): L3 = -1, L5 = -55".into())
    } else {
        Err(format!("L3 = {l3}, L5 = {l5}"))
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    for e in all_defective_entries() {
        let p = e.params().map_err(|err| err.to_string())?;
        if has_primitive_divisor(&p, e.k).map_err(|err| err.to_string())?.answer {
            return Err(format!("listed k={} (a,c)=({}, {}) has a primitive divisor", e.k, e.a, e.c));
        }
    }
    let mut checked = 0;
    for k in (7..=15u64).step_by(2) {
        for a in -20..=20i64 {
            for c in -20..=20i64 {
                let Ok(p) = LehmerParams::new(a, c) else { continue };
                if is_listed_defective(&p, k) {
                    continue;
                }
                let r = has_primitive_divisor(&p, k).map_err(|err| err.to_string())?;
                if !r.answer {
                    return Err(format!("unlisted k={k} (a,c)=({a}, {c}) has no primitive divisor"));
                }
                checked += 1;
            }
        }
    }
    let dt = t.elapsed();
    if dt > Duration::from_secs(30) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!(
        "{} listed entries defective, {checked} unlisted (k, a, c) have primitive divisors, {dt:.2?}",
        all_defective_entries().len()
    ))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let reports = run_all(&SearchBounds::default()).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    let bad: Vec<&str> = reports.iter().filter(|r| !r.confirmed()).map(|r| r.lemma.as_str()).collect();
    if reports.len() != LEMMA_IDS.len() || !bad.is_empty() {
        return Err(format!("{} reports, unconfirmed: {bad:?}", reports.len()));
    }
    if dt > Duration::from_secs(60) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{} reports confirmed within bounds, {dt:.2?}", reports.len()))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut instances = BTreeSet::new();
    while instances.len() < 200 {
        let d1 = 2 * rng.gen_range(0..30u32) + 1;
        let d2 = 2 * rng.gen_range(1..30u32) + 1;
        if let Ok(i) = Instance::new(d1, d2) {
            instances.insert(i);
        }
    }
    let mut with_solutions = 0;
    let mut closed_form_mismatches = Vec::new();
    for i in &instances {
        let c = classify(i, 200, 64).map_err(|e| e.to_string())?;
        if let Some(d) = &c.discrepancy {
            return Err(format!("{i}: {d:?}"));
        }
        if c.plain_solutions() != brute_force(i, 200) {
            return Err(format!("{i}: merged list differs from brute force"));
        }
        if let Some(f) = c.family.as_ref().filter(|f| !f.closed_form_matches) {
            closed_form_mismatches.push(format!("{i}: x={} not {}", f.computed_x, f.closed_form_x));
        }
        with_solutions += usize::from(c.count > 0);
    }
    let mut msg = format!(
        "200 instances ({with_solutions} with solutions), 0 discrepancies"
    );
    if !closed_form_mismatches.is_empty() {
        msg += &format!(
            "; t=3 closed-form sign mismatches reported: {}",
            closed_form_mismatches.join(", ")
        );
    }
    Ok(msg)
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let one = scan(100, 100, Some(1)).map_err(|e| e.to_string())?;
    let single = t.elapsed();
    if one.inconsistent != 0 {
        let bad: Vec<String> = one
            .rows
            .iter()
            .filter(|r| !r.consistent)
            .map(|r| format!("{}:{}", r.instance, r.count))
            .collect();
        return Err(format!("inconsistent rows {bad:?}"));
    }
    if single > Duration::from_secs(120) {
        return Err(format!("single-core scan took {single:?}"));
    }
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let t = Instant::now();
    let many = scan(100, 100, Some(jobs)).map_err(|e| e.to_string())?;
    let parallel = t.elapsed();
    if many.rows != one.rows {
        return Err("parallel scan differs from single-core scan".into());
    }
    Ok(format!(
        "{} rows, 0 inconsistent, 1 job {single:.2?}, {jobs} jobs {parallel:.2?}",
        one.rows.len()
    ))
}

fn criterion_9() -> Outcome {
    for k in 0..=60u64 {
        let p = fib_lucas(k);
        let want = if k % 2 == 0 { 4 } else { -4 };
        if &p.l * &p.l - 5 * &p.f * &p.f != Integer::from(want) {
            return Err(format!("L^2 - 5F^2 fails at k = {k}"));
        }
    }
    for (s, q) in [(1i64, -1i64), (3, 2), (-5, 7), (2, -11)] {
        let (s, q) = (Integer::from(s), Integer::from(q));
        let (mut prev, mut cur): (Integer, Integer) = (2.into(), s.clone());
        for k in 1..=30u64 {
            if power_sum(&s, &q, k).map_err(|e| e.to_string())? != cur {
                return Err(format!("power sum differs from recurrence at s={s} q={q} k={k}"));
            }
            let next = &s * &cur - &q * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
    }
    let mut composed = 0;
    for d1 in (3..=50u32).step_by(2) {
        for d2 in (3..=50u32).step_by(2) {
            let Ok(q) = QFInstance::new(d1, d2) else { continue };
            let Some(l) = least_solution(&q, 64).map_err(|e| e.to_string())? else { continue };
            let c = composed_least(&q, &l).map_err(|e| e.to_string())?;
            let target = QFInstance::new(1, d1 * d2).map_err(|e| e.to_string())?;
            if least_solution(&target, 128).map_err(|e| e.to_string())? != Some(c) {
                return Err(format!("composition differs from direct search for ({d1}, {d2})"));
            }
            composed += 1;
        }
    }
    for d in (1..=2000u32).step_by(2) {
        let sols = solve_one_coeff(&Integer::from(d), 64);
        let ok = if d == 7 { sols.len() == 2 } else { sols.len() <= 1 };
        if !ok {
            return Err(format!("D = {d} has {} solutions", sols.len()));
        }
        if d > 1 && sols.len() == 1 {
            let q = QFInstance::new(1, d).map_err(|e| e.to_string())?;
            let l = least_solution(&q, 64).map_err(|e| e.to_string())?;
            match l {
                Some(l) if l.x1.is_one() && sols[0] == (l.y1.clone(), l.z1) => {}
                _ => return Err(format!("D = {d}: solution is not the least solution")),
            }
        }
    }
    Ok(format!("Fibonacci/Lucas k<=60, power sums k<=30, {composed} compositions, D<=2000"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("exceptional counts for d1 > 1", criterion_1),
        ("counts for d1 = 1", criterion_2),
        ("two-solution exception instances", criterion_3),
        ("Lehmer values for (7, -25)", criterion_4),
        ("defective Lehmer table", criterion_5),
        ("lemma suite at default bounds", criterion_6),
        ("structural vs brute force on 200 seeded instances", criterion_7),
        ("scan d_max=100, n_max=100", criterion_8),
        ("identity suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{dt:.2?}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL [{dt:.2?}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
