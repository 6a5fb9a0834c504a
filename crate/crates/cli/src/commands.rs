use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use tverberg_core::polytope::{
    greedy_lambda_packing, make_cross, make_cube, make_cyclic_default, make_simplex, packing_polytope, subdivide_k,
    subdivision_decay_report, voronoi_diameter_check, ComplexJson, PolytopeJson,
};
use tverberg_core::sphere::{random_smooth_map, solve_bu, SmoothMap, SolveParams};
use tverberg_core::tverberg::{
    check_d1_witness, count_cross_witnesses, count_cross_witnesses_all, is_prime, neighborly_construct,
    polytope_tverberg_search, seeded_rational_map, seeded_rational_values, triangle_free_d1_polytope, validate_witness,
    CrossCount, SearchMode, SearchParams,
};
use tverberg_core::{Error, QLinearMap, QPolytope, QVector, Rational, SeedSplitter};

use crate::args::*;

pub type CliError = Box<dyn std::error::Error + Send + Sync>;
pub type CliResult<T> = Result<T, CliError>;

/// What a subcommand hands back for the report; `pass == false` means a
/// check implied by the theorems failed.
pub struct Outcome {
    pub seed: Option<u64>,
    pub records: Vec<Value>,
    pub summary: Value,
    pub pass: bool,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}

fn read_polytope(path: &Path) -> CliResult<QPolytope> {
    Ok(read_json::<PolytopeJson<Rational>>(path)?.into_polytope()?)
}

/// Seed of trial `index` under the root seed.
pub fn trial_seed(root: u64, index: usize) -> u64 {
    SeedSplitter::new(root).derive("trial", index as u64)
}

pub fn make(a: &MakeArgs) -> CliResult<Outcome> {
    let p: QPolytope = match a.family {
        Family::Simplex => make_simplex(a.dim)?,
        Family::Cross => make_cross(a.dim)?,
        Family::Cube => make_cube(a.dim)?,
        Family::Cyclic => {
            let n = a.n.ok_or("--n is required for the cyclic family")?;
            make_cyclic_default(a.dim, n)?
        }
    };
    p.validate()?;
    let min_degree = p.skeleton().min_degree();
    let balinski = min_degree >= p.dim();
    let json = PolytopeJson::from(&p);
    let mut record = json!({
        "dim": p.dim(),
        "vertices": p.num_vertices(),
        "facets": p.facets().len(),
        "min_degree": min_degree,
    });
    match &a.out {
        Some(path) => write_json(path, &json)?,
        None => record["polytope"] = to_value(&json),
    }
    Ok(Outcome { seed: None, records: vec![record], summary: json!({ "balinski": balinski }), pass: balinski })
}

pub fn subdivide(a: &SubdivideArgs) -> CliResult<Outcome> {
    let p = read_polytope(&a.input)?;
    let decay = subdivision_decay_report(&p, a.k)?;
    if let Some(path) = &a.report {
        write_text(path, &decay.to_csv())?;
    }
    if let Some(path) = &a.out {
        let complex = subdivide_k::<Rational, f64>(&p, a.k)?;
        write_json(path, &ComplexJson::new(&p, &complex))?;
    }
    let summary = json!({
        "dim": decay.dim,
        "factor": decay.factor,
        "final_diameter": decay.rows.last().map(|r| r.diameter),
        "not_decreasing": decay.flagged(),
    });
    Ok(Outcome { seed: None, records: decay.rows.iter().map(to_value).collect(), summary, pass: true })
}

pub fn packing(a: &PackingArgs) -> CliResult<Outcome> {
    let spec = greedy_lambda_packing(a.dim, a.lambda, a.seed, a.pool)?;
    let check = voronoi_diameter_check(&spec, a.samples, a.seed)?;
    let cell = if a.polytope { packing_polytope(&spec)?.max_cell_diameter() } else { None };
    if let Some(path) = &a.out {
        write_json(path, &spec)?;
    }
    let summary = json!({
        "points": spec.points.len(),
        "min_pairwise_distance": spec.min_pairwise_distance(),
        "polytope_max_cell_diameter": cell,
        "pass": check.pass,
    });
    Ok(Outcome { seed: Some(a.seed), records: vec![to_value(&check)], summary, pass: check.pass })
}

pub fn search(a: &SearchArgs) -> CliResult<Outcome> {
    let p = read_polytope(&a.polytope)?;
    let map: QLinearMap = read_json(&a.map)?;
    let d = map.out_dim();
    let params = SearchParams { r: a.r, d, forbidden: a.forbid };
    let mode = if a.all { SearchMode::All } else { SearchMode::First };
    let found = polytope_tverberg_search(&p, &map, &params, mode)?;
    for w in &found.witnesses {
        validate_witness(&p, &map, w, a.forbid)?;
    }
    if let Some(path) = &a.out {
        write_json(path, &found.witnesses)?;
    }
    let guaranteed = a.forbid.is_none() && a.r >= 2 && p.dim() >= (d + 1) * (a.r - 1);
    let pass = !guaranteed || !found.witnesses.is_empty();
    let summary = json!({
        "count": found.witnesses.len(),
        "existence_guaranteed": guaranteed,
        "diagnostic": found.diagnostic,
        "pass": pass,
    });
    Ok(Outcome { seed: None, records: found.witnesses.iter().map(to_value).collect(), summary, pass })
}

struct CrossTrial {
    seed: u64,
    reseeds: u64,
    map: QLinearMap,
    counts: Vec<CrossCount<Rational>>,
}

pub fn count_cross(a: &CountCrossArgs) -> CliResult<Outcome> {
    let cross: QPolytope = make_cross(a.m)?;
    if let Some(v) = a.forbid {
        if v >= cross.num_vertices() {
            return Err(format!("vertex {v} out of range").into());
        }
    }
    let trials: Vec<CrossTrial> = (0..a.trials)
        .into_par_iter()
        .map(|t| -> CliResult<CrossTrial> {
            let seed = trial_seed(a.seed, t);
            let drawn = seeded_rational_map(a.d, a.m, seed, a.denom, cross.vertices())?;
            let counts = match a.forbid {
                Some(v) => vec![count_cross_witnesses(a.m, a.d, a.r, &drawn.map, v)?],
                None => count_cross_witnesses_all(a.m, a.d, a.r, &drawn.map)?,
            };
            Ok(CrossTrial { seed, reseeds: drawn.reseeds, map: drawn.map, counts })
        })
        .collect::<CliResult<_>>()?;

    let mut csv = String::from("trial,seed,forbidden,count,bound,threshold,pass\n");
    for (t, trial) in trials.iter().enumerate() {
        for c in &trial.counts {
            csv.push_str(&format!(
                "{t},{},{},{},{},{},{}\n",
                trial.seed, c.forbidden, c.count, c.bound, c.threshold, c.pass
            ));
        }
    }
    if let Some(path) = &a.out {
        write_text(path, &csv)?;
    }

    let hypotheses = is_prime(a.r as u64) && 2 * (a.m - 1) >= (a.r - 1) * (a.d + 1);
    let all_counts = trials.iter().flat_map(|t| &t.counts);
    let min_count = all_counts.clone().map(|c| c.count).min();
    let all_pass = all_counts.clone().all(|c| c.pass);
    let bound = tverberg_core::tverberg::cross_bound::<Rational>(a.m, a.r);
    let threshold = trials.first().and_then(|t| t.counts.first()).map(|c| c.threshold);
    let records = trials
        .iter()
        .enumerate()
        .map(|(t, trial)| {
            json!({
                "trial": t,
                "seed": trial.seed,
                "reseeds": trial.reseeds,
                "map": to_value(&trial.map),
                "counts": to_value(&trial.counts),
            })
        })
        .collect();
    let summary = json!({
        "trials": a.trials,
        "min_count": min_count,
        "bound": bound.to_string(),
        "threshold": threshold,
        "hypotheses_hold": hypotheses,
        "pass": all_pass,
    });
    Ok(Outcome { seed: Some(a.seed), records, summary, pass: all_pass || !hypotheses })
}

pub fn neighborly(a: &NeighborlyArgs) -> CliResult<Outcome> {
    let p: QPolytope = make_cyclic_default(a.m, a.n)?;
    let fixed: Option<QLinearMap> = a.map.as_deref().map(read_json).transpose()?;
    let trials = if fixed.is_some() { 1 } else { a.trials };
    let records = (0..trials)
        .into_par_iter()
        .map(|t| -> CliResult<(Value, bool)> {
            let seed = trial_seed(a.seed, t);
            let (map, reseeds) = match &fixed {
                Some(map) => (map.clone(), 0),
                None => {
                    let drawn = seeded_rational_map(a.d, a.m, seed, a.denom, p.vertices())?;
                    (drawn.map, drawn.reseeds)
                }
            };
            let witness = neighborly_construct(&p, &map, a.r)?;
            let valid = validate_witness(&p, &map, &witness, None).is_ok()
                && witness.faces.iter().all(|f| f.len() <= map.out_dim() + 1);
            let record = json!({
                "trial": t,
                "seed": seed,
                "reseeds": reseeds,
                "map": to_value(&map),
                "witness": to_value(&witness),
                "valid": valid,
            });
            Ok((record, valid))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let pass = records.iter().all(|(_, ok)| *ok);
    if let Some(path) = &a.out {
        let witnesses: Vec<&Value> = records.iter().map(|(r, _)| &r["witness"]).collect();
        write_json(path, &witnesses)?;
    }
    let summary = json!({ "trials": trials, "pass": pass });
    Ok(Outcome { seed: Some(a.seed), records: records.into_iter().map(|(r, _)| r).collect(), summary, pass })
}

pub fn d1(a: &D1Args) -> CliResult<Outcome> {
    let p = read_polytope(&a.polytope)?;
    let values: Vec<Rational> = match &a.values {
        Some(path) => read_json::<QVector>(path)?.into_coords(),
        None => seeded_rational_values(p.num_vertices(), a.seed, a.denom),
    };
    let graph = p.skeleton();
    if let Some(t) = graph.find_triangle() {
        return Err(format!("skeleton contains the triangle {t:?}").into());
    }
    let (witness, pass) = match triangle_free_d1_polytope(&p, &values, a.r) {
        Ok(w) => {
            let ok = check_d1_witness(&graph, &values, &w).is_ok();
            (Some(w), ok)
        }
        Err(e @ (Error::Triangle(_) | Error::DegreeTooSmall { .. })) => {
            log::error!("{e}");
            (None, false)
        }
        Err(e) => return Err(e.into()),
    };
    if let (Some(path), Some(w)) = (&a.out, &witness) {
        write_json(path, w)?;
    }
    let seed = a.values.is_none().then_some(a.seed);
    let records = witness.iter().map(to_value).collect();
    Ok(Outcome { seed, records, summary: json!({ "pass": pass }), pass })
}

pub fn bu(a: &BuArgs) -> CliResult<Outcome> {
    let f: SmoothMap = match &a.f {
        Some(path) => read_json(path)?,
        None => random_smooth_map(a.m + 1, a.d.unwrap_or(1), 2, a.seed),
    };
    if let Some(d) = a.d {
        if d != f.output_dim() {
            return Err(format!("--d {d} but the map has {} outputs", f.output_dim()).into());
        }
    }
    let params = SolveParams { p: a.p, tol: a.tol, max_restarts: a.restarts, max_iters: a.max_iters, seed: a.seed };
    let sol = solve_bu(&f, a.m, &params)?;
    if let Some(path) = &a.out {
        write_json(path, &sol)?;
    }
    let hypotheses = sol.warnings.is_empty();
    let summary = json!({
        "success": sol.success,
        "residual": sol.best.residual,
        "restart": sol.restart,
        "restarts_tried": sol.restarts_tried,
        "iterations": sol.iterations,
        "min_spacing": sol.best.min_spacing(),
        "off_circle": sol.best.off_circle(),
        "hypotheses_hold": hypotheses,
        "warnings": sol.warnings,
    });
    Ok(Outcome { seed: Some(a.seed), records: vec![to_value(&sol.best)], summary, pass: sol.success || !hypotheses })
}
