//! The full lemma suite: default bounds and a report per lemma id.
//!
//! Besides the auxiliary equations this covers the Fibonacci/Lucas facts,
//! the least-solution structure of the quadratic representations and the
//! defective Lehmer table, each checked against a direct computation.

use num_traits::{One, Signed};
use rayon::prelude::*;

use super::*;
use crate::fiblucas::{fib_lucas, fib_lucas_powers, Sequence};
use crate::lehmer::{all_defective_entries, is_listed_defective, primitive_part, LehmerParams};
use crate::qforms::{
    composed_least, exhaustive_solutions, expand_solutions, least_solution, solve_one_coeff,
    QFInstance, QFSolution,
};

pub const LEMMA_IDS: [&str; 22] = [
    "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8", "2.9", "2.10", "2.11", "2.12", "2.13",
    "2.14", "2.15", "2.16", "2.17", "2.18", "2.19", "4.1", "4.2", "4.3", "4.4",
];

/// Default bounds for a lemma id.
pub fn default_bounds(id: &str) -> Result<SearchBounds> {
    let limits: &[(&str, u64)] = match id {
        "2.2" => &[("x", 50), ("p", 13)],
        "2.3" => &[("u", 100_000)],
        "2.4" => &[("k", 200)],
        "2.5" => &[("x", 10_000)],
        "2.6" => &[("x", 10_000), ("p", 19)],
        "2.7" => &[("r", 60), ("n", 60)],
        "2.8" => &[("x", 10_000), ("y", 10_000), ("m", 20), ("n", 20)],
        "2.9" | "2.10" => &[("r", 60), ("n", 60)],
        "2.11" | "2.12" => &[("r", 60), ("s", 60), ("n", 20)],
        "2.13" | "2.14" | "2.16" => &[("d", 31), ("z", 24)],
        "2.15" => &[("d", 50), ("z", 64)],
        "2.17" => &[("D", 2000), ("z", 64)],
        "2.18" => &[("k", 29), ("a", 20), ("c", 20)],
        "2.19" => &[("k", 41), ("a", 20), ("c", 20)],
        "4.1" => &[("x", 10_000), ("n", 20)],
        "4.2" => &[("r", 60)],
        "4.3" | "4.4" => &[("z", 60)],
        other => return Err(Error::arg(format!("unknown lemma id {other}"))),
    };
    SearchBounds::new(limits)
}

/// Run one lemma with the given bounds (missing keys fall back to defaults).
pub fn run_lemma(id: &str, overrides: &SearchBounds) -> Result<LemmaReport> {
    let mut b = default_bounds(id)?;
    for (k, v) in overrides.iter() {
        if b.contains(k) {
            b = b.with(k, v)?;
        }
    }
    match id {
        "2.2" => verify_birkhoff_vandiver(&b),
        "2.3" => verify_pell5(&b),
        "2.4" => verify_fib_lucas_powers(&b),
        "2.5" => verify_cubic(&b),
        "2.6" => verify_trinomial(&b),
        "2.7" => verify_negative_base_repunit(&b),
        "2.8" => verify_catalan(&b),
        "2.9" => verify_3s_pm1(&b, 1, false),
        "2.10" => verify_3s_pm1(&b, -1, false),
        "2.11" => verify_pow23(&b, 1),
        "2.12" => verify_pow23(&b, -1),
        "2.13" => verify_expansion(&b),
        "2.14" => verify_distinct_z(&b),
        "2.15" => verify_composition(&b),
        "2.16" => verify_disjoint_z(&b),
        "2.17" => verify_one_coeff(&b),
        "2.18" => verify_defective_table(&b),
        "2.19" => verify_large_index(&b),
        "4.1" => verify_ljunggren(&b),
        "4.2" => verify_97(b.get("r")?),
        "4.3" => Ok(verify_4344(&b)?.remove(0)),
        "4.4" => Ok(verify_4344(&b)?.remove(1)),
        _ => unreachable!("default_bounds rejects unknown ids"),
    }
}

/// Every lemma in [`LEMMA_IDS`] order, run in parallel.
pub fn run_all(overrides: &SearchBounds) -> Result<Vec<LemmaReport>> {
    LEMMA_IDS
        .par_iter()
        .map(|id| run_lemma(id, overrides))
        .collect()
}

/// `u² − 5v² = ±4` scanned over `u ≤ U`, against the Lucas/Fibonacci pairs.
fn verify_pell5(b: &SearchBounds) -> Result<LemmaReport> {
    let ub = b.get("u")?;
    let mut found = Vec::new();
    for u in 1..=ub as i64 {
        for rhs in [u * u - 4, u * u + 4] {
            if rhs > 0 && rhs % 5 == 0 {
                if let Some(v) = sqrt_exact(&Integer::from(rhs / 5)) {
                    if v.is_positive() {
                        found.push(vec![u.into(), v]);
                    }
                }
            }
        }
    }
    let mut claimed = Vec::new();
    for k in 1.. {
        let p = fib_lucas(k);
        if p.l > Integer::from(ub) {
            break;
        }
        claimed.push(vec![p.l, p.f]);
    }
    Ok(LemmaReport::build("2.3", &["u", "v"], b, claimed, |_| true, found)
        .with_note("claimed = (L_k, F_k) for k >= 1"))
}

fn verify_fib_lucas_powers(b: &SearchBounds) -> Result<LemmaReport> {
    let kb = b.get("k")?;
    let found = fib_lucas_powers(kb)
        .into_iter()
        .map(|h| {
            let seq = if h.which == Sequence::Fibonacci { 0 } else { 1 };
            vec![seq.into(), h.k.into(), h.z, h.n.into()]
        })
        .collect();
    Ok(LemmaReport::build(
        "2.4",
        &["seq", "k", "z", "n"],
        b,
        vec![tuple(&[0, 6, 2, 3]), tuple(&[0, 12, 12, 2]), tuple(&[1, 3, 2, 2])],
        |t| small(t, 1) as u64 <= kb,
        found,
    )
    .with_note("seq 0 = Fibonacci, 1 = Lucas; z^n in maximal-exponent form"))
}

/// Valid `(d1, d2)` with `lo ≤ d1 ≤ hi`, `3 ≤ d2 ≤ hi`, passing the mod-8 test.
fn congruent_instances(lo: u64, hi: u64) -> Vec<QFInstance> {
    let mut out = Vec::new();
    for d1 in (lo..=hi).filter(|d| d % 2 == 1) {
        for d2 in (3..=hi).filter(|d| d % 2 == 1) {
            if let Ok(q) = QFInstance::new(d1, d2) {
                if q.passes_congruence() {
                    out.push(q);
                }
            }
        }
    }
    out
}

fn qf_tuple(q: &QFInstance, s: &QFSolution) -> Tuple {
    vec![q.d1().clone(), q.d2().clone(), s.x.clone(), s.y.clone(), s.z.into()]
}

/// Ring powers of the least solution against the exhaustive solution set.
fn verify_expansion(b: &SearchBounds) -> Result<LemmaReport> {
    let (db, zb) = (b.get("d")?, b.get("z")?);
    let per_instance: Vec<(Vec<Tuple>, Vec<Tuple>)> = congruent_instances(1, db)
        .par_iter()
        .map(|q| -> Result<_> {
            let found: Vec<Tuple> = exhaustive_solutions(q, zb).iter().map(|s| qf_tuple(q, s)).collect();
            let claimed = match least_solution(q, zb as u32)? {
                Some(l) => expand_solutions(q, &l, zb / l.z1)?
                    .iter()
                    .map(|(_, s)| qf_tuple(q, s))
                    .collect(),
                None => Vec::new(),
            };
            Ok((claimed, found))
        })
        .collect::<Result<_>>()?;
    let (claimed, found): (Vec<_>, Vec<_>) = per_instance.into_iter().unzip();
    Ok(LemmaReport::build(
        "2.13",
        &["d1", "d2", "x", "y", "z"],
        b,
        claimed.concat(),
        |_| true,
        found.concat(),
    )
    .with_note("claimed = ring powers of the least solution; found = exhaustive scan"))
}

/// Pairs of distinct positive solutions sharing a `Z`.
fn verify_distinct_z(b: &SearchBounds) -> Result<LemmaReport> {
    let (db, zb) = (b.get("d")?, b.get("z")?);
    let found: Vec<Tuple> = congruent_instances(1, db)
        .par_iter()
        .flat_map_iter(|q| {
            let sols = exhaustive_solutions(q, zb);
            let mut clashes = Vec::new();
            for (i, s) in sols.iter().enumerate() {
                if sols[i + 1..].iter().any(|t| t.z == s.z) {
                    clashes.push(vec![q.d1().clone(), q.d2().clone(), s.z.into()]);
                }
            }
            clashes
        })
        .collect();
    Ok(LemmaReport::build("2.14", &["d1", "d2", "z"], b, vec![], |_| true, found))
}

/// Composed least solution against an independent least-solution search.
fn verify_composition(b: &SearchBounds) -> Result<LemmaReport> {
    let (db, zb) = (b.get("d")?, b.get("z")?);
    let rows: Vec<Option<(Tuple, Tuple)>> = congruent_instances(3, db)
        .par_iter()
        .map(|q| -> Result<_> {
            let Some(l) = least_solution(q, zb as u32)? else {
                return Ok(None);
            };
            let composed = composed_least(q, &l)?;
            let target = QFInstance::new(1, q.d1() * q.d2())?;
            let searched = least_solution(&target, 2 * zb as u32)?;
            let key = |x: &Integer, y: &Integer, z: u64| {
                vec![q.d1().clone(), q.d2().clone(), x.clone(), y.clone(), z.into()]
            };
            let claimed = key(&composed.x1, &composed.y1, composed.z1);
            let found = match searched {
                Some(s) => key(&s.x1, &s.y1, s.z1),
                None => vec![q.d1().clone(), q.d2().clone()],
            };
            Ok(Some((claimed, found)))
        })
        .collect::<Result<_>>()?;
    let (claimed, found): (Vec<_>, Vec<_>) = rows.into_iter().flatten().unzip();
    Ok(LemmaReport::build("2.15", &["d1", "d2", "x", "y", "z"], b, claimed, |_| true, found)
        .with_note("claimed = composition formula; found = direct least-solution search for (1, d1*d2)"))
}

/// `Z` values shared between `(d1, d2)` and `(1, d1·d2)` solutions.
fn verify_disjoint_z(b: &SearchBounds) -> Result<LemmaReport> {
    let (db, zb) = (b.get("d")?, b.get("z")?);
    let found: Vec<Tuple> = congruent_instances(3, db)
        .par_iter()
        .flat_map_iter(|q| {
            let zs: BTreeSet<u64> = exhaustive_solutions(q, zb).iter().map(|s| s.z).collect();
            let composed = QFInstance::new(1, q.d1() * q.d2()).expect("valid product instance");
            let zs2: BTreeSet<u64> = exhaustive_solutions(&composed, zb).iter().map(|s| s.z).collect();
            zs.intersection(&zs2)
                .map(|&z| vec![q.d1().clone(), q.d2().clone(), z.into()])
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(LemmaReport::build("2.16", &["d1", "d2", "z"], b, vec![], |_| true, found))
}

/// Solutions of `1 + D·y² = 2^(z+2)` against the least solution of `(1, D)`.
fn verify_one_coeff(b: &SearchBounds) -> Result<LemmaReport> {
    let (db, zb) = (b.get("D")?, b.get("z")?);
    let rows: Vec<(Vec<Tuple>, Vec<Tuple>)> = (1..=db)
        .into_par_iter()
        .map(|d| -> Result<_> {
            let di = Integer::from(d);
            let found: Vec<Tuple> = solve_one_coeff(&di, zb as u32)
                .into_iter()
                .map(|(y, z)| vec![di.clone(), y, z.into()])
                .collect();
            let mut claimed = Vec::new();
            if d % 2 == 1 && d > 1 {
                let q = QFInstance::new(1, d)?;
                if let Some(l) = least_solution(&q, zb as u32)? {
                    if l.x1.is_one() {
                        claimed.push(vec![di.clone(), l.y1, l.z1.into()]);
                    }
                }
            }
            if d == 7 {
                claimed.push(tuple(&[7, 3, 4]));
            }
            Ok((claimed, found))
        })
        .collect::<Result<_>>()?;
    let (claimed, found): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok(LemmaReport::build(
        "2.17",
        &["D", "y", "z"],
        b,
        claimed.concat(),
        |t| small(t, 2) as u64 <= zb,
        found.concat(),
    )
    .with_note("claimed = (D, Y'_1, Z'_1) whenever X'_1 = 1, plus (7, 3, 4)"))
}

/// Valid parameters with `1 ≤ a ≤ a_max`, `|c| ≤ c_max`.
fn param_grid(a_max: u64, c_max: u64) -> Vec<LehmerParams> {
    let mut out = Vec::new();
    for a in 1..=a_max as i64 {
        for c in -(c_max as i64)..=c_max as i64 {
            if let Ok(p) = LehmerParams::new(a, c) {
                out.push(p);
            }
        }
    }
    out
}

fn defective_over_grid(ks: &[u64], grid: &[LehmerParams]) -> Result<Vec<Tuple>> {
    let cells: Vec<(u64, &LehmerParams)> =
        ks.iter().flat_map(|&k| grid.iter().map(move |p| (k, p))).collect();
    let hits: Vec<Option<Tuple>> = cells
        .par_iter()
        .map(|&(k, p)| -> Result<_> {
            Ok(primitive_part(p, k)?
                .is_one()
                .then(|| vec![k.into(), p.a().clone(), p.c().clone()]))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// Odd `6 < k ≤ K` over the parameter grid plus every tabulated pair.
fn verify_defective_table(b: &SearchBounds) -> Result<LemmaReport> {
    let (kb, ab, cb) = (b.get("k")?, b.get("a")?, b.get("c")?);
    let ks: Vec<u64> = (7..=kb.min(30)).filter(|k| k % 2 == 1).collect();
    let grid = param_grid(ab, cb);
    let mut found = defective_over_grid(&ks, &grid)?;
    let mut claimed = Vec::new();
    for e in all_defective_entries().iter().filter(|e| ks.contains(&e.k)) {
        let p = e.params()?;
        claimed.push(tuple(&[e.k as i64, e.a, e.c]));
        if primitive_part(&p, e.k)?.is_one() {
            found.push(tuple(&[e.k as i64, e.a, e.c]));
        }
        debug_assert!(is_listed_defective(&p, e.k));
    }
    Ok(LemmaReport::build("2.18", &["k", "a", "c"], b, claimed, |_| true, found)
        .with_note("grid a in 1..=a, |c| <= c plus every table entry; (14, -22) satisfies a = c mod 4 and is checked like the rest"))
}

/// Odd `30 < k ≤ K`: no defective pair over the grid.
fn verify_large_index(b: &SearchBounds) -> Result<LemmaReport> {
    let (kb, ab, cb) = (b.get("k")?, b.get("a")?, b.get("c")?);
    let ks: Vec<u64> = (31..=kb).filter(|k| k % 2 == 1).collect();
    let found = defective_over_grid(&ks, &param_grid(ab, cb))?;
    Ok(LemmaReport::build("2.19", &["k", "a", "c"], b, vec![], |_| true, found))
}
