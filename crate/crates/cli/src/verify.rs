use crate::commands::qs;
use crate::Output;
use hecke_core::linalg::{self, Method};
use hecke_core::rational::q;
use hecke_core::regions::{
    attach_exceptional, check_classical_row, check_exceptional_row, g2_chi, load_tables, load_zero_regions, row_grid,
    zero_cs_membership_in, RowCheck, ZeroRegions,
};
use hecke_core::rootsys::{parse_group, CartanType, RootDatum};
use hecke_core::wrep::Hecke;
use hecke_core::{Error, Result, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::time::{Duration, Instant};

pub fn verify_table(table: &str, budget: u64, samples: usize, seed: u64) -> Result<Output> {
    let (t, rank) = parse_group(table)?;
    let budget = Duration::from_secs(budget);
    match t {
        CartanType::A | CartanType::B | CartanType::C | CartanType::D => classical(table, t, rank, budget),
        CartanType::G2 => g2(),
        CartanType::F4 => f4(budget, samples, seed),
        CartanType::E7 | CartanType::E8 => disjointness(t, if samples == 0 { 10_000 } else { samples }, seed),
        CartanType::E6 => Err(Error::Unsupported("no verification run for E6".into())),
    }
}

fn row_record(c: &RowCheck, elapsed: Duration) -> Value {
    json!({
        "table": c.group,
        "orbit": c.orbit,
        "pass": c.passed(),
        "scanned": c.scanned,
        "attached": c.attached,
        "mismatches": c.mismatches.iter().take(5).map(|m| json!({
            "nu": qs(&m.nu), "strings": m.strings, "table": m.table,
        })).collect::<Vec<_>>(),
        "n_mismatches": c.mismatches.len(),
        "inside": c.inside.as_ref().map(|v| qs(v)),
        "outside": c.outside.as_ref().map(|v| qs(v)),
        "operator": c.operator.iter().map(|(nu, tv, ov)| json!({
            "nu": qs(nu), "table": tv, "operator": ov,
        })).collect::<Vec<_>>(),
        "operator_skipped": c.operator_skipped,
        "ms": elapsed.as_millis() as u64,
    })
}

fn summary(table: &str, records: &[Value], total: usize, start: Instant) -> Value {
    let failed = records.iter().filter(|r| r["pass"] == json!(false)).count();
    json!({
        "table": table,
        "summary": true,
        "rows": total,
        "checked": records.len(),
        "failed": failed,
        "complete": records.len() == total,
        "pass": failed == 0 && records.len() == total,
        "ms": start.elapsed().as_millis() as u64,
    })
}

fn finish(table: &str, mut records: Vec<Value>, total: usize, start: Instant) -> Output {
    let s = summary(table, &records, total, start);
    let failed = s["pass"] != json!(true);
    records.push(s);
    Output { records, failed }
}

fn classical(table: &str, t: CartanType, rank: usize, budget: Duration) -> Result<Output> {
    let start = Instant::now();
    let tables = load_tables()?;
    let rows = tables.table(table)?;
    let h = Hecke::new(t, rank)?;
    let mut records = Vec::new();
    for row in rows {
        if start.elapsed() > budget {
            break;
        }
        let st = Instant::now();
        let den = if row.n_params() >= 3 { 4 } else { 8 };
        let c = check_classical_row(row, den, 2, Some(&h))?;
        records.push(row_record(&c, st.elapsed()));
    }
    Ok(finish(&table.to_ascii_uppercase(), records, rows.len(), start))
}

/// Operator verdicts on the step-1/4 grid of simple-coroot values in
/// `[0, 3]²`, against the table rows and zero-orbit regions.
fn g2() -> Result<Output> {
    let start = Instant::now();
    let h = Hecke::new(CartanType::G2, 2)?;
    let tables = load_tables()?;
    let zero = load_zero_regions()?;
    let points: Vec<Vec<Q>> = (0..=12).flat_map(|a| (0..=12).map(move |b| vec![q(a, 4), q(b, 4)])).collect();
    let results: Vec<Result<Option<Value>>> = points
        .par_iter()
        .map(|nu| {
            let chi = g2_chi(nu);
            let r = match h.unitarity(&chi, Method::ExactLdl, false) {
                Ok(r) => r,
                Err(Error::ZeroNormalization) => return Ok(None),
                Err(e) => return Err(e),
            };
            let a = attach_exceptional(&h.group, &tables, &zero, &chi)?;
            let relevant = h.relevant_suffice_check(&chi)?;
            Ok(Some(json!({
                "table": "G2",
                "chi": qs(&chi),
                "orbit": a.orbit,
                "matched": a.matched,
                "table_verdict": a.unitary,
                "operator": r.signature.psd,
                "relevant_suffice": relevant,
                "pass": a.unitary == r.signature.psd && relevant,
            })))
        })
        .collect();
    let mut records = Vec::new();
    for r in results {
        if let Some(v) = r? {
            records.push(v);
        }
    }
    let n = records.len();
    Ok(finish("G2", records, n, start))
}

fn f4(budget: Duration, samples: usize, seed: u64) -> Result<Output> {
    let start = Instant::now();
    let h = Hecke::new(CartanType::F4, 4)?;
    let tables = load_tables()?;
    let zero = load_zero_regions()?;
    let rows = tables.table("F4")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    for row in rows {
        if start.elapsed() > budget {
            break;
        }
        let st = Instant::now();
        let mut extra: Vec<Vec<Q>> = Vec::new();
        if row.is_exception() {
            extra.push(vec![q(1, 4), q(1, 4)]);
            extra.push(vec![q(1, 4), q(7, 8)]);
        }
        if samples > 0 && row.n_params() > 0 {
            let grid = row_grid(row, 4, 2)?;
            for _ in 0..samples {
                extra.push(grid[rng.gen_range(0..grid.len())].clone());
            }
        }
        let c = check_exceptional_row(row, &h.group, &tables, &zero, 4, 2, &extra, Some(&h))?;
        records.push(row_record(&c, st.elapsed()));
    }
    Ok(finish("F4", records, rows.len(), start))
}

/// Random dominant point with simple-root values `k/120`, `0 ≤ k ≤ 8s`,
/// for a per-point scale `s ∈ {1, 2, 3}`: small points fill the alcove,
/// larger ones reach the outer regions.
fn random_dominant(d: &RootDatum, rng: &mut ChaCha8Rng) -> Result<Vec<Q>> {
    // χ = Σ b_j α̌_j with ⟨α_i, χ⟩ = a_i
    let n = d.rank;
    let top = 8 * rng.gen_range(1..=3);
    let a: Vec<Q> = (0..n).map(|_| q(rng.gen_range(0..=top), 120)).collect();
    let m: linalg::Mat = (0..n)
        .map(|i| (0..n).map(|j| hecke_core::rational::dot(&d.simple_roots[i], &d.simple_coroots[j])).collect())
        .collect();
    let rhs: linalg::Mat = a.iter().map(|x| vec![x.clone()]).collect();
    let b = linalg::solve(&m, &rhs).ok_or_else(|| Error::Data("singular Cartan matrix".into()))?;
    let mut chi = vec![Q::from_integer(0.into()); d.ambient_dim];
    for (j, row) in b.iter().enumerate() {
        for (c, x) in chi.iter_mut().zip(&d.simple_coroots[j]) {
            *c += &row[0] * x;
        }
    }
    Ok(chi)
}

/// Pairwise disjointness of the zero-orbit regions on random dominant
/// points.
fn disjointness(t: CartanType, samples: usize, seed: u64) -> Result<Output> {
    let start = Instant::now();
    let d = RootDatum::build(t, if t == CartanType::E7 { 7 } else { 8 })?;
    let zero: ZeroRegions = load_zero_regions()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<Q>> = (0..samples).map(|_| random_dominant(&d, &mut rng)).collect::<Result<_>>()?;
    let members: Vec<Result<Vec<String>>> =
        points.par_iter().map(|chi| zero_cs_membership_in(&zero, &d, chi).map(|m| m.all_matches)).collect();
    let mut covered = 0;
    let mut by_region: std::collections::BTreeMap<String, usize> = Default::default();
    let mut overlaps = Vec::new();
    for (chi, m) in points.iter().zip(members) {
        let m = m?;
        if !m.is_empty() {
            covered += 1;
        }
        for label in &m {
            *by_region.entry(label.clone()).or_default() += 1;
        }
        if m.len() > 1 {
            overlaps.push(json!({ "chi": qs(chi), "regions": m }));
        }
    }
    let n_overlaps = overlaps.len();
    let rec = json!({
        "table": t.to_string(),
        "summary": true,
        "samples": samples,
        "seed": seed,
        "covered": covered,
        "by_region": by_region,
        "overlaps": n_overlaps,
        "examples": overlaps.into_iter().take(5).collect::<Vec<_>>(),
        "pass": n_overlaps == 0,
        "ms": start.elapsed().as_millis() as u64,
    });
    Ok(Output { records: vec![rec], failed: n_overlaps > 0 })
}
