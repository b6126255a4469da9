//! The desk-scale check battery behind `selftest`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chrom4::{build_witness, find_alphas, verify_quadratic_sums, verify_weil, Chrom4Error};
use crate::colorodd::{color_odd, solution_bound, QuadraticSystem};
use crate::colorsq::{color_square, verify_claims_sq};
use crate::ff::{binomial_irreducible, find_binomial_mu, Fe, GaloisField, PolyRing};
use crate::polarity::{build_er, verify_embedding};

pub const CENSUS_Q: [u64; 9] = [3, 5, 7, 9, 11, 13, 25, 27, 49];
pub const EMBEDDING_Q: [u64; 5] = [3, 5, 7, 9, 25];
pub const SQUARE_Q: [u64; 3] = [3, 5, 7];
pub const UNIQUE_Q: [u64; 2] = [3, 5];
pub const SYSTEM_Q: [u64; 3] = [3, 5, 7];
pub const QUAD_SUM_Q: [u64; 5] = [3, 5, 7, 9, 13];
pub const WEIL_Q: [u64; 4] = [7, 9, 25, 49];
pub const WEIL_SAMPLES: usize = 10_000;
pub const WITNESS_Q: u64 = 491;
pub const SUBSET_Q: [u64; 2] = [11, 13];
pub const IRRED_Q: [u64; 5] = [3, 5, 7, 9, 13];

/// One criterion: deterministic detail plus its wall time.
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
    pub millis: u128,
}

type Verdict = (bool, Value);
type Check = Result<Verdict, String>;

fn gf(q: u64) -> Result<GaloisField, String> {
    GaloisField::new(q).map_err(|e| e.to_string())
}

fn census() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in CENSUS_Q {
        let er = build_er(&gf(q)?).map_err(|e| e.to_string())?;
        let st = er.graph.stats();
        let c4_free = !er.graph.has_c4();
        let ok = st.n as u64 == q * q + q + 1
            && st.m as u64 == q * (q + 1) * (q + 1) / 2
            && st.loop_count as u64 == q + 1
            && c4_free;
        pass &= ok;
        rows.push(
            json!({"q": q, "n": st.n, "m": st.m, "absolute_points": st.loop_count, "c4_free": c4_free, "ok": ok}),
        );
    }
    Ok((pass, Value::Array(rows)))
}

fn embedding() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in EMBEDDING_Q {
        let r = verify_embedding(&gf(q)?).map_err(|e| e.to_string())?;
        pass &= r.ok;
        rows.push(serde_json::to_value(&r).expect("plain struct"));
    }
    Ok((pass, Value::Array(rows)))
}

fn square_case() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for q0 in SQUARE_Q {
        let base = gf(q0)?;
        let c = color_square(&base).map_err(|e| e.to_string())?;
        let cl = verify_claims_sq(&base).map_err(|e| e.to_string())?;
        let ok = c.proper
            && c.palette_size as u64 <= 4 * q0 + 1
            && cl.claim1_max as u64 <= q0
            && cl.claim2_max as u64 <= 2 * q0 - 1;
        pass &= ok;
        rows.push(json!({
            "q0": q0,
            "palette_size": c.palette_size,
            "palette_bound": 4 * q0 + 1,
            "proper": c.proper,
            "max_degree_x_s": cl.claim1_max,
            "max_degree_x": cl.claim2_max,
            "ok": ok,
        }));
    }
    Ok((pass, Value::Array(rows)))
}

fn unique_neighbor() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for q0 in UNIQUE_Q {
        let cl = verify_claims_sq(&gf(q0)?).map_err(|e| e.to_string())?;
        pass &= cl.unique_neighbor_ok;
        rows.push(json!({"q0": q0, "x_size": cl.x_size, "unique_neighbor_ok": cl.unique_neighbor_ok}));
    }
    Ok((pass, Value::Array(rows)))
}

/// Criteria 5 and 6 share the odd coloring at `q = 7, r = 1`.
fn odd_case(budget: u64) -> Result<(Verdict, Verdict), String> {
    let base = gf(7)?;
    let c = color_odd(&base, 1, budget).map_err(|e| e.to_string())?;
    let ok5 = c.proper && c.mu == 2 && c.palette_size <= 514 && c.layer_colors <= 294;
    let five = json!({
        "mu": c.mu,
        "palette_size": c.palette_size,
        "palette_limit": 514,
        "layer_colors": c.layer_colors,
        "layer_bound": c.layer_bound,
        "layer_sizes": c.layer_sizes,
        "z_size": c.z_size,
        "proper": c.proper,
    });

    let mut rows = Vec::new();
    let mut ok6 = true;
    for q in SYSTEM_Q {
        let f = gf(q)?;
        let bound = solution_bound(q, 1);
        let mut counts = Vec::new();
        for mu in f.nonzero() {
            let n = QuadraticSystem::new(&f, 1, mu).and_then(|s| s.count_solutions()).map_err(|e| e.to_string())?;
            ok6 &= n <= bound;
            counts.push(json!({"mu": mu.0, "count": n}));
        }
        rows.push(json!({"q": q, "r": 1, "bound": bound, "counts": counts}));
    }
    let degree_ok = c.z_max_degree as u64 + 1 <= c.system_solution_count;
    ok6 &= degree_ok;
    let six = json!({
        "systems": rows,
        "z_max_degree": c.z_max_degree,
        "tower_count": c.system_solution_count,
        "degree_ok": degree_ok,
    });
    Ok(((ok5, five), (ok6, six)))
}

fn characters(seed: u64) -> Check {
    let mut pass = true;
    let mut p42 = Vec::new();
    for q in QUAD_SUM_Q {
        let r = verify_quadratic_sums(&gf(q)?);
        pass &= r.violations == 0;
        p42.push(serde_json::to_value(&r).expect("plain struct"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weil = Vec::new();
    for q in WEIL_Q {
        let f = gf(q)?;
        for degree in [3, 4] {
            let r = verify_weil(&f, degree, WEIL_SAMPLES, &mut rng).map_err(|e| e.to_string())?;
            pass &= r.violations == 0;
            weil.push(serde_json::to_value(&r).expect("plain struct"));
        }
    }
    Ok((pass, json!({"quadratic_sums": p42, "weil": weil, "seed": seed})))
}

/// Whether any 5-subset of `GF(q)*` has all pairwise sums nonzero squares.
pub fn subset_oracle(f: &GaloisField) -> bool {
    let good: Vec<Fe> = f.nonzero().collect();
    let ok = |a: Fe, b: Fe| f.quad_char(f.add(a, b)) == 1;
    let n = good.len();
    for a in 0..n {
        for b in a + 1..n {
            if !ok(good[a], good[b]) {
                continue;
            }
            for c in b + 1..n {
                if !ok(good[a], good[c]) || !ok(good[b], good[c]) {
                    continue;
                }
                for d in c + 1..n {
                    if ![a, b, c].iter().all(|&i| ok(good[i], good[d])) {
                        continue;
                    }
                    for e in d + 1..n {
                        if [a, b, c, d].iter().all(|&i| ok(good[i], good[e])) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn witness() -> Check {
    let w = build_witness(&gf(WITNESS_Q)?).map_err(|e| e.to_string())?;
    let mut pass = w.size() <= 36;
    let mut small = Vec::new();
    for q in SUBSET_Q {
        let f = gf(q)?;
        let found = match find_alphas(&f) {
            Ok(a) => {
                pass &= a.is_valid(&f);
                true
            }
            Err(Chrom4Error::SearchExhausted(_)) => false,
            Err(e) => return Err(e.to_string()),
        };
        let oracle = subset_oracle(&f);
        pass &= found == oracle;
        small.push(json!({"q": q, "found": found, "oracle": oracle}));
    }
    Ok((
        pass,
        json!({
            "q": WITNESS_Q,
            "witness_size": w.size(),
            "edges": w.graph.m(),
            "alphas": w.quintuple.alphas.iter().map(|a| a.0).collect::<Vec<_>>(),
            "three_colorable": false,
            "nodes": w.nodes,
            "recheck_nodes": w.recheck_nodes,
            "subset_agreement": small,
        }),
    ))
}

fn irreducibility() -> Check {
    let mut pass = true;
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for q in IRRED_Q {
        let f = gf(q)?;
        let ring = PolyRing::new(&f);
        for t in [3usize, 5] {
            for mu in f.nonzero() {
                let crit = binomial_irreducible(&f, t, mu).map_err(|e| e.to_string())?;
                let mut m = vec![Fe::ZERO; t + 1];
                m[0] = f.neg(mu);
                m[t] = Fe::ONE;
                checked += 1;
                if crit != ring.is_irreducible_brute(&m) {
                    mismatches.push(json!({"q": q, "t": t, "mu": mu.0}));
                }
            }
        }
    }
    pass &= mismatches.is_empty();
    let mu3 = find_binomial_mu(&gf(3)?, 3).map_err(|e| e.to_string())?;
    let mu7 = find_binomial_mu(&gf(7)?, 3).map_err(|e| e.to_string())?;
    pass &= mu3.is_none() && mu7 == Some(Fe(2));
    Ok((
        pass,
        json!({
            "checked": checked,
            "mismatches": mismatches,
            "gf3_t3": mu3.map(|m| m.0),
            "gf7_t3": mu7.map(|m| m.0),
        }),
    ))
}

fn timed(id: u32, name: &'static str, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, json!({"error": e})),
    };
    Outcome { id, name, pass, detail, millis: start.elapsed().as_millis() }
}

/// Criteria 1 to 9, in order.
pub fn run_all(budget: u64, seed: u64) -> Vec<Outcome> {
    let mut out = vec![
        timed(1, "graph_census", census),
        timed(2, "embedding", embedding),
        timed(3, "square_construction", square_case),
        timed(4, "unique_neighbor", unique_neighbor),
    ];
    let start = Instant::now();
    match odd_case(budget) {
        Ok(((p5, d5), (p6, d6))) => {
            let ms = start.elapsed().as_millis();
            out.push(Outcome { id: 5, name: "odd_construction", pass: p5, detail: d5, millis: ms });
            out.push(Outcome { id: 6, name: "system_count", pass: p6, detail: d6, millis: 0 });
        }
        Err(e) => {
            let ms = start.elapsed().as_millis();
            out.push(Outcome { id: 5, name: "odd_construction", pass: false, detail: json!({"error": e}), millis: ms });
            out.push(Outcome { id: 6, name: "system_count", pass: false, detail: json!({"error": e}), millis: 0 });
        }
    }
    out.push(timed(7, "character_sums", || characters(seed)));
    out.push(timed(8, "witness", witness));
    out.push(timed(9, "irreducibility", irreducibility));
    out
}
