//! Command-line front end. Every command prints one JSON report
//! (`report_v1`); wall times live in its `timings_ms` block so the rest is
//! reproducible byte for byte.

pub mod selftest;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chrom4::{build_witness, replay_witness, verify_quadratic_sums, verify_weil, write_witness, Chrom4Error};
use crate::colorodd::{color_odd, verify_claims_odd_with, ClaimMode, OddError, DEFAULT_BUDGET, DEFAULT_SAMPLES};
use crate::colorsq::{color_square, verify_claims_sq, SquareError};
use crate::ff::{binomial_irreducible, Fe, GaloisField, PolyRing};
use crate::graph::{parse_dimacs, to_dimacs, DENSE_LIMIT};
use crate::polarity::{build_er, build_gq, build_hq, verify_embedding};

pub const SCHEMA: &str = "report_v1";

#[derive(Parser, Debug)]
#[command(name = "erpolar", version, about = "Polarity graphs over odd prime-power fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest vertex count any command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build ER_q, G_q or H_q and report its statistics.
    Build {
        #[arg(long, value_enum)]
        graph: GraphArg,
        /// Field order or descriptor, e.g. 7, 3^2, 3^2/1,0,1.
        #[arg(long)]
        q: String,
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Explicit proper coloring of ER over GF(q^2) or GF(q^(2r+1)).
    Color {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// The base field GF(q).
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Build and certify a small non-3-colorable subgraph, or replay one.
    Witness {
        #[arg(long, required_unless_present = "verify")]
        q: Option<String>,
        /// Also write the witness file here.
        #[arg(long, conflicts_with = "verify")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "q")]
        verify: Option<PathBuf>,
    },
    /// Structural checks.
    Verify {
        #[arg(long, value_enum)]
        what: WhatArg,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Sample count for randomized checks.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run the full desk-scale check battery.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphArg {
    Er,
    Gq,
    Hq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Square,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    Embedding,
    ClaimsSq,
    ClaimsOdd,
    Props,
}

enum Failure {
    Usage(String),
    Budget(String),
    Failed(String),
}

impl From<OddError> for Failure {
    fn from(e: OddError) -> Self {
        match e {
            OddError::TooLarge { .. } => Failure::Budget(e.to_string()),
            e => Failure::Failed(e.to_string()),
        }
    }
}

impl From<SquareError> for Failure {
    fn from(e: SquareError) -> Self {
        match e {
            SquareError::TooLarge(_) => Failure::Budget(e.to_string()),
            e => Failure::Failed(e.to_string()),
        }
    }
}

impl From<Chrom4Error> for Failure {
    fn from(e: Chrom4Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

fn failed<E: ToString>(e: E) -> Failure {
    Failure::Failed(e.to_string())
}

#[derive(Default)]
struct Report {
    field: Option<String>,
    result: Value,
    failures: Vec<String>,
    artifacts: BTreeMap<String, String>,
    timings: BTreeMap<String, u128>,
}

impl Report {
    fn check(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn field_arg(q: &str) -> Result<GaloisField, Failure> {
    GaloisField::from_descriptor(q).map_err(|e| Failure::Usage(format!("--q {q}: {e}")))
}

fn guard(n: u64, budget: u64) -> Result<(), Failure> {
    if n > budget {
        return Err(Failure::Budget(format!("{n} vertices exceed the budget of {budget}")));
    }
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn build(rep: &mut Report, graph: GraphArg, q: &str, dimacs: Option<&PathBuf>, budget: u64) -> Result<(), Failure> {
    let f = field_arg(q)?;
    let qq = f.order();
    rep.field = Some(f.descriptor().to_string());
    let n = match graph {
        GraphArg::Gq => qq * qq,
        _ => qq * qq + qq + 1,
    };
    guard(n, budget)?;
    let pg = match graph {
        GraphArg::Er => build_er(&f),
        GraphArg::Gq => build_gq(&f),
        GraphArg::Hq => build_hq(&f),
    }
    .map_err(failed)?;
    let g = &pg.graph;
    let st = g.stats();
    let c4_free = (g.n() <= DENSE_LIMIT).then(|| !g.has_c4());
    let mut result = json!({
        "graph": graph,
        "q": qq,
        "n": st.n,
        "m": st.m,
        "max_degree": st.max_degree,
        "loops": st.loop_count,
        "c4_free": c4_free,
    });
    if graph != GraphArg::Gq {
        let m_ok = st.m as u64 == qq * (qq + 1) * (qq + 1) / 2;
        rep.check(m_ok, "edge count differs from q(q+1)^2/2");
        rep.check(c4_free != Some(false), "graph contains a 4-cycle");
        if graph == GraphArg::Er {
            rep.check(st.loop_count as u64 == qq + 1, "absolute point count differs from q+1");
        }
    }
    if let Some(path) = dimacs {
        let text = to_dimacs(g);
        std::fs::write(path, &text).map_err(failed)?;
        let back = parse_dimacs(&text).map_err(failed)?;
        let roundtrip = back.stats() == st;
        rep.check(roundtrip, "DIMACS round trip changed the graph");
        result["dimacs_roundtrip"] = json!(roundtrip);
        rep.artifacts.insert("dimacs".into(), path.display().to_string());
    }
    rep.result = result;
    Ok(())
}

fn color(rep: &mut Report, mode: ModeArg, q: &str, r: usize, budget: u64) -> Result<(), Failure> {
    let base = field_arg(q)?;
    rep.field = Some(base.descriptor().to_string());
    match mode {
        ModeArg::Square => {
            let q2 = base.order().checked_pow(2).ok_or(Failure::Budget("field too large".into()))?;
            guard(q2.saturating_mul(q2), budget)?;
            let c = color_square(&base)?;
            rep.check(c.proper, "coloring is not proper");
            rep.check(c.palette_size <= c.bound, "palette exceeds 4q+1");
            rep.result = to_value(&c);
        }
        ModeArg::Odd => {
            let c = color_odd(&base, r, budget)?;
            rep.check(c.proper, "coloring is not proper");
            rep.check(c.bound_ok, "palette accounting exceeds its bounds");
            rep.result = to_value(&c);
        }
    }
    Ok(())
}

fn witness(rep: &mut Report, q: Option<&str>, file: Option<&PathBuf>, verify: Option<&PathBuf>) -> Result<(), Failure> {
    if let Some(path) = verify {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let r = replay_witness(&text)?;
        rep.field = Some(r.q.to_string());
        rep.check(r.ok, "witness replay failed");
        rep.result = to_value(&r);
        return Ok(());
    }
    let f = field_arg(q.expect("clap requires --q without --verify"))?;
    rep.field = Some(f.descriptor().to_string());
    let w = match build_witness(&f) {
        Ok(w) => w,
        Err(Chrom4Error::SearchExhausted(q)) => {
            rep.result = json!({"q": q, "found": false});
            return Err(Failure::Failed(format!("no alpha quintuple in GF({q})")));
        }
        Err(e) => return Err(e.into()),
    };
    rep.check(w.size() <= 36, "witness has more than 36 vertices");
    rep.result = json!({
        "q": w.q,
        "witness_size": w.size(),
        "edges": w.graph.m(),
        "alphas": w.quintuple.alphas.iter().map(|a| a.0).collect::<Vec<_>>(),
        "roots": w.quintuple.roots.iter().map(|a| a.0).collect::<Vec<_>>(),
        "vertices": w.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "three_colorable": false,
        "nodes": w.nodes,
        "recheck_nodes": w.recheck_nodes,
    });
    if let Some(path) = file {
        std::fs::write(path, write_witness(&w)).map_err(failed)?;
        rep.artifacts.insert("witness".into(), path.display().to_string());
    }
    Ok(())
}

fn props(f: &GaloisField, samples: usize, seed: u64) -> Result<(bool, Value), Failure> {
    let q = f.order();
    let mut ok = true;
    let quad_sums = if q <= 200 {
        let r = verify_quadratic_sums(f);
        ok &= r.violations == 0;
        to_value(&r)
    } else {
        Value::Null
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weil = Vec::new();
    for degree in [3, 4] {
        let r = verify_weil(f, degree, samples, &mut rng)?;
        ok &= r.violations == 0;
        weil.push(to_value(&r));
    }
    let ring = PolyRing::new(f);
    let mut binomial = Vec::new();
    for t in [3usize, 5] {
        if crate::ff::nt::checked_pow(q, t as u32).is_none_or(|n| n > 1_000_000) {
            continue;
        }
        let mut mismatches = 0;
        for mu in f.nonzero() {
            let mut m = vec![Fe::ZERO; t + 1];
            m[0] = f.neg(mu);
            m[t] = Fe::ONE;
            mismatches += (binomial_irreducible(f, t, mu).map_err(failed)? != ring.is_irreducible_brute(&m)) as usize;
        }
        ok &= mismatches == 0;
        binomial.push(json!({"t": t, "mismatches": mismatches}));
    }
    Ok((ok, json!({"quadratic_sums": quad_sums, "weil": weil, "binomial": binomial, "seed": seed})))
}

fn verify(
    rep: &mut Report,
    what: WhatArg,
    q: &str,
    r: usize,
    samples: Option<usize>,
    cli: &Cli,
) -> Result<(), Failure> {
    let f = field_arg(q)?;
    rep.field = Some(f.descriptor().to_string());
    let qq = f.order();
    match what {
        WhatArg::Embedding => {
            guard(qq * qq + qq + 1, cli.budget)?;
            let e = verify_embedding(&f).map_err(failed)?;
            rep.check(e.ok, "embedding check failed");
            let mut v = to_value(&e);
            v["embedding_ok"] = json!(e.ok);
            rep.result = v;
        }
        WhatArg::ClaimsSq => {
            let c = verify_claims_sq(&f)?;
            rep.check(c.ok, "square-case claims failed");
            rep.result = to_value(&c);
        }
        WhatArg::ClaimsOdd => {
            let t = 2 * r as u32 + 1;
            let n = crate::ff::nt::checked_pow(qq, 2 * t).unwrap_or(u64::MAX);
            let mode = match samples {
                Some(samples) => ClaimMode::Sampled { samples, seed: cli.seed },
                None if n <= cli.budget.min(DEFAULT_BUDGET) => ClaimMode::Exhaustive,
                None => ClaimMode::Sampled { samples: DEFAULT_SAMPLES, seed: cli.seed },
            };
            let c = verify_claims_odd_with(&f, r, mode)?;
            rep.check(c.ok, "odd-case claims failed");
            rep.result = to_value(&c);
        }
        WhatArg::Props => {
            let (ok, v) = props(&f, samples.unwrap_or(selftest::WEIL_SAMPLES), cli.seed)?;
            rep.check(ok, "character or irreducibility identity failed");
            rep.result = v;
        }
    }
    Ok(())
}

fn run_selftest(rep: &mut Report, cli: &Cli) {
    let outcomes = selftest::run_all(cli.budget, cli.seed);
    let mut rows = Vec::new();
    for o in outcomes {
        rep.check(o.pass, &format!("criterion {} ({})", o.id, o.name));
        rep.timings.insert(format!("c{}_{}", o.id, o.name), o.millis);
        rows.push(json!({"id": o.id, "name": o.name, "pass": o.pass, "detail": o.detail}));
    }
    rep.result = json!({"criteria": rows, "seed": cli.seed});
}

/// Runs a parsed command. Returns the exit code and the report text.
pub fn execute(cli: &Cli, echo: &str) -> (i32, String) {
    let start = Instant::now();
    let mut rep = Report::default();
    let outcome = match &cli.command {
        Command::Build { graph, q, dimacs } => build(&mut rep, *graph, q, dimacs.as_ref(), cli.budget),
        Command::Color { mode, q, r } => color(&mut rep, *mode, q, *r, cli.budget),
        Command::Witness { q, file, verify } => witness(&mut rep, q.as_deref(), file.as_ref(), verify.as_ref()),
        Command::Verify { what, q, r, samples } => verify(&mut rep, *what, q, *r, *samples, cli),
        Command::Selftest => {
            run_selftest(&mut rep, cli);
            Ok(())
        }
    };
    let (code, reason) = match outcome {
        Ok(()) if rep.failures.is_empty() => (0, None),
        Ok(()) => (1, Some("assertion")),
        Err(Failure::Usage(m)) => {
            rep.failures.push(m);
            (2, Some("usage"))
        }
        Err(Failure::Budget(m)) => {
            rep.failures.push(m);
            (1, Some("budget"))
        }
        Err(Failure::Failed(m)) => {
            rep.failures.push(m);
            (1, Some("error"))
        }
    };
    rep.timings.insert("total".into(), start.elapsed().as_millis());
    let report = json!({
        "schema": SCHEMA,
        "command": echo,
        "field": rep.field,
        "ok": code == 0,
        "reason": reason,
        "failures": rep.failures,
        "result": rep.result,
        "artifacts": rep.artifacts,
        "timings_ms": rep.timings,
    });
    (code, serde_json::to_string_pretty(&report).expect("json values serialize") + "\n")
}

/// Parses `args` (program name first), runs, writes the report.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let (code, text) = execute(&cli, &echo);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("erpolar: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    code
}

/// The report with its `timings_ms` block removed, for comparisons.
pub fn strip_timings(report: &str) -> Result<String, serde_json::Error> {
    let mut v: Value = serde_json::from_str(report)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timings_ms");
    }
    serde_json::to_string_pretty(&v)
}
