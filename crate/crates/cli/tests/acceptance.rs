//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any fails or overruns its time budget.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use tverberg_core::polytope::{
    antipode, face_diameter, facets_bruteforce, gale_evenness_facets, greedy_lambda_packing, make_cross, make_cube,
    make_cyclic_default, make_simplex, packing_polytope, subdivide_k, subdivision_decay_report, voronoi_diameter_check,
    PackingSpec,
};
use tverberg_core::sphere::{gradient_check, random_smooth_map, solve_bu, BuSolution, SolveParams};
use tverberg_core::tverberg::{
    check_d1_witness, count_cross_witnesses_all, cross_via_colorful, neighborly_construct, seeded_rational_map,
    seeded_rational_points, seeded_rational_values, triangle_free_d1_polytope, tverberg_partition, validate_partition,
    validate_witness,
};
use tverberg_core::{Error, Frame, QPolytope, Rational, SeedSplitter};

const DENOM: i64 = 1000;
const BU_RESIDUAL: f64 = 1e-8;
const ORBIT_TOL: f64 = 1e-9;
const BU_SUCCESS_RATE: f64 = 0.95;
const GRADIENT_REL_TOL: f64 = 1e-5;
const CELL_TOL: f64 = 1e-9;
const PACKING_POOL: usize = 20_000;
const VORONOI_SAMPLES: usize = 20_000;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn tverberg_oracle() -> Outcome {
    for seed in 0..100 {
        let pts = seeded_rational_points::<Rational>(7, 2, seed, DENOM);
        let w = tverberg_partition(&pts, 3).map_err(err)?.ok_or(format!("seed {seed}: no partition"))?;
        validate_partition(&pts, &w).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok("100/100 configurations validated exactly".into())
}

/// `(1/r!) ((r-1)/2)^(m-1)`, as an exact fraction.
fn bound_fraction(m: u32, r: u64) -> Rational {
    let fact: u64 = (1..=r).product();
    let num = Rational::from_integer((r - 1).into()).pow(m as i32 - 1);
    let den = Rational::from_integer(2.into()).pow(m as i32 - 1) * Rational::from_integer(fact.into());
    num / den
}

fn cross_bound_counts() -> Outcome {
    let one_sixth = Rational::new(1.into(), 6.into());
    let mut min_count = usize::MAX;
    for (m, d) in [(3usize, 1usize), (4, 2)] {
        ensure(bound_fraction(m as u32, 3) == one_sixth, || format!("bound for m={m} is not 1/6"))?;
        let cross: QPolytope = make_cross(m).map_err(err)?;
        let per_seed: Vec<usize> = (0..50u64)
            .into_par_iter()
            .map(|seed| -> Result<usize, String> {
                let map = seeded_rational_map(d, m, seed, DENOM, cross.vertices()).map_err(err)?.map;
                let counts = count_cross_witnesses_all(m, d, 3, &map).map_err(err)?;
                ensure(counts.len() == 2 * m, || "one count per vertex".into())?;
                for c in &counts {
                    ensure(c.bound == one_sixth && c.threshold == 1, || format!("m={m}: bound {}", c.bound))?;
                    ensure(c.warnings.is_empty(), || format!("m={m}: {:?}", c.warnings))?;
                    ensure(c.count >= 1, || format!("m={m} seed {seed} forbidden {}: no witness", c.forbidden))?;
                }
                Ok(counts.iter().map(|c| c.count).min().unwrap_or(0))
            })
            .collect::<Result<_, _>>()?;
        min_count = min_count.min(per_seed.into_iter().min().unwrap_or(0));
    }
    Ok(format!("every forbidden vertex, 100 maps; min count {min_count} >= ceil(1/6) = 1"))
}

fn colorful_reduction() -> Outcome {
    let cross: QPolytope = make_cross(4).map_err(err)?;
    for seed in 0..25 {
        let map = seeded_rational_map(1, 4, seed, DENOM, cross.vertices()).map_err(err)?.map;
        let red = cross_via_colorful(4, 1, 3, &map).map_err(err)?;
        validate_witness(&cross, &map, &red.witness, None).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(red.witness.faces.len() == 3, || format!("seed {seed}: wrong part count"))?;
        for face in &red.witness.faces {
            ensure(!face.iter().any(|&v| face.contains(&antipode(v))), || {
                format!("seed {seed}: antipodal pair in {face:?}")
            })?;
        }
    }
    Ok("25/25 lifted witnesses valid, no antipodal pairs".into())
}

fn neighborly() -> Outcome {
    for (m, n, d) in [(4usize, 7usize, 1usize), (6, 10, 2)] {
        let p: QPolytope = make_cyclic_default(m, n).map_err(err)?;
        ensure(p.is_k_neighborly(d + 1), || format!("C({m},{n}) is not {}-neighborly", d + 1))?;
        for seed in 0..25 {
            let map = seeded_rational_map(d, m, seed, DENOM, p.vertices()).map_err(err)?.map;
            let w = neighborly_construct(&p, &map, 3).map_err(err)?;
            validate_witness(&p, &map, &w, None).map_err(|e| format!("C({m},{n}) seed {seed}: {e}"))?;
            ensure(w.faces.iter().all(|f| f.len() <= d + 1), || format!("C({m},{n}) seed {seed}: face too large"))?;
        }
    }
    let mut pairs = 0;
    for m in 2..=5 {
        for n in m + 1..=9 {
            let p: QPolytope = make_cyclic_default(m, n).map_err(err)?;
            let mut brute = facets_bruteforce(p.vertices()).map_err(err)?;
            let mut gale = gale_evenness_facets(n, m);
            brute.sort();
            gale.sort();
            ensure(brute == gale, || format!("facet sets differ for n={n}, m={m}"))?;
            pairs += 1;
        }
    }
    Ok(format!("50 witnesses valid; Gale = brute force on {pairs} (n, m) pairs"))
}

fn d1_cubes() -> Outcome {
    for dim in 3..=6 {
        let cube: QPolytope = make_cube(dim).map_err(err)?;
        let graph = cube.skeleton();
        for seed in 0..200 {
            let values: Vec<Rational> = seeded_rational_values(cube.num_vertices(), seed, DENOM);
            let w = match triangle_free_d1_polytope(&cube, &values, dim) {
                Ok(w) => w,
                Err(e @ Error::Triangle(_)) => return Err(format!("dim {dim} seed {seed}: unreachable {e}")),
                Err(e) => return Err(format!("dim {dim} seed {seed}: {e}")),
            };
            ensure(w.edges.len() == dim - 1, || format!("dim {dim} seed {seed}: {} edges", w.edges.len()))?;
            check_d1_witness(&graph, &values, &w).map_err(|e| format!("dim {dim} seed {seed}: {e}"))?;
        }
    }
    Ok("800/800 assignments on cubes of dim 3..6 verified".into())
}

fn balinski() -> Outcome {
    let mut corpus: Vec<(String, QPolytope)> = Vec::new();
    for m in 1..=6 {
        corpus.push((format!("simplex({m})"), make_simplex(m).map_err(err)?));
        corpus.push((format!("cross({m})"), make_cross(m).map_err(err)?));
        corpus.push((format!("cube({m})"), make_cube(m).map_err(err)?));
    }
    for m in 2..=6 {
        for n in m + 1..=m + 4 {
            corpus.push((format!("cyclic({m},{n})"), make_cyclic_default(m, n).map_err(err)?));
        }
    }
    for (name, p) in &corpus {
        let min = p.skeleton().min_degree();
        ensure(min >= p.dim(), || format!("{name}: min degree {min} < {}", p.dim()))?;
    }
    Ok(format!("{} polytopes, min degree >= dim", corpus.len()))
}

fn check_orbit(sol: &BuSolution, p: usize) -> Result<(), String> {
    ensure(sol.best.residual < BU_RESIDUAL, || format!("residual {}", sol.best.residual))?;
    ensure(sol.best.min_spacing() >= TAU / p as f64 - ORBIT_TOL, || format!("spacing {}", sol.best.min_spacing()))?;
    ensure(sol.best.off_circle() <= ORBIT_TOL, || format!("off circle {}", sol.best.off_circle()))
}

fn bu_solver() -> Outcome {
    let instances: Vec<(usize, usize, u64)> = (0..20).map(|s| (2, 2, s)).chain((0..10).map(|s| (3, 3, s))).collect();
    let results: Vec<Result<bool, String>> = instances
        .par_iter()
        .map(|&(p, m, seed)| {
            let f = random_smooth_map(m + 1, 1, 2, seed);
            let params = SolveParams::new(p, seed);
            let sol = solve_bu(&f, m, &params).map_err(err)?;
            ensure(sol.warnings.is_empty(), || format!("p={p} seed {seed}: {:?}", sol.warnings))?;
            if sol.success {
                check_orbit(&sol, p).map_err(|e| format!("p={p} seed {seed}: {e}"))?;
                return Ok(true);
            }
            let retry = SolveParams { max_restarts: 2 * params.max_restarts, ..params };
            let sol = solve_bu(&f, m, &retry).map_err(err)?;
            ensure(sol.success, || format!("p={p} seed {seed}: retry failed, residual {}", sol.best.residual))?;
            check_orbit(&sol, p).map_err(|e| format!("p={p} seed {seed} retry: {e}"))?;
            Ok(false)
        })
        .collect();
    let mut first_try = 0;
    for r in results {
        first_try += r? as usize;
    }
    let rate = first_try as f64 / instances.len() as f64;
    ensure(rate >= BU_SUCCESS_RATE, || format!("success rate {rate:.3} < {BU_SUCCESS_RATE}"))?;

    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let f = random_smooth_map(4, 1, 2, seed);
        let frame = Frame::random(4, &mut SeedSplitter::new(seed).rng("gradient-check", 0));
        let check = gradient_check(&f, &frame, 3, 1e-5).map_err(err)?;
        ensure(check.max_relative_error < GRADIENT_REL_TOL, || {
            format!("seed {seed}: gradient error {}", check.max_relative_error)
        })?;
        worst = worst.max(check.max_relative_error);
    }
    Ok(format!("{first_try}/{} within 50 restarts, rest within 100; max gradient error {worst:.2e}", instances.len()))
}

fn subdivision_decay() -> Outcome {
    let corpus: Vec<(&str, QPolytope)> = vec![
        ("simplex(3)", make_simplex(3).map_err(err)?),
        ("cube(3)", make_cube(3).map_err(err)?),
        ("simplex(4)", make_simplex(4).map_err(err)?),
    ];
    let mut within = 0;
    let mut ratios = 0;
    for (name, p) in &corpus {
        let report = subdivision_decay_report(p, 3).map_err(err)?;
        for row in report.rows.iter().filter(|r| r.k >= 1) {
            let ratio = row.ratio.ok_or(format!("{name}: missing ratio at k={}", row.k))?;
            ensure(ratio < 1.0, || format!("{name}: ratio {ratio} at k={}", row.k))?;
            ratios += 1;
            within += usize::from(row.within_factor == Some(true));
        }
    }
    let (m, r) = (3.0f64, 2.0f64);
    let k = (m * (2.0 * r).ln()).ceil() as usize;
    let complex = subdivide_k::<Rational, f64>(&make_simplex(3).map_err(err)?, k).map_err(err)?;
    let diameter = face_diameter(&complex);
    ensure(diameter < PI / r, || format!("diameter {diameter} after {k} subdivisions"))?;
    Ok(format!("{ratios} ratios < 1 ({within} within (m-1)/m); diameter {diameter:.4} < pi/2 at k={k}"))
}

fn packing() -> Outcome {
    let lambda = PI / 12.0;
    let mut worst: f64 = 0.0;
    for seed in [1, 2, 3] {
        let spec = greedy_lambda_packing(3, lambda, seed, PACKING_POOL).map_err(err)?;
        let check = voronoi_diameter_check(&spec, VORONOI_SAMPLES, seed).map_err(err)?;
        ensure(check.pass, || format!("seed {seed}: cell diameter {} > {}", check.max_cell_diameter, check.threshold))?;
        worst = worst.max(check.max_cell_diameter / (2.0 * lambda));
    }
    let s = 1.0 / 3f64.sqrt();
    let octahedron: Vec<Vec<f64>> = (0..6)
        .map(|v| {
            let mut e = vec![0.0; 3];
            e[v / 2] = if v % 2 == 0 { 1.0 } else { -1.0 };
            e
        })
        .collect();
    let cube: Vec<Vec<f64>> = (0..8).map(|v| (0..3).map(|k| if v >> k & 1 == 1 { s } else { -s }).collect()).collect();
    for (name, points, lambda, expected) in
        [("octahedron", octahedron, PI / 4.0, (-1.0f64 / 3.0).acos()), ("cube", cube, 1.0, FRAC_PI_2)]
    {
        let spec = PackingSpec::from_points(3, lambda, points).map_err(err)?;
        let cell = packing_polytope(&spec).map_err(err)?.max_cell_diameter().ok_or("no vertices")?;
        ensure((cell - expected).abs() <= CELL_TOL, || format!("{name}: cell diameter {cell}, expected {expected}"))?;
    }
    Ok(format!("3/3 seeds pass (max diameter {worst:.3} x 2 lambda); octahedron and cube cells exact"))
}

fn run_cli(bin: &str, args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(bin).args(args).output().map_err(|e| format!("{bin}: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (polytope, tverberg, bu) =
        (env!("CARGO_BIN_EXE_polytope"), env!("CARGO_BIN_EXE_tverberg"), env!("CARGO_BIN_EXE_bu"));
    std::fs::write(path("f.json"), r#"{"matrix": [["1", "2/3", "-1/5"]], "offset": ["1/7"]}"#)
        .map_err(|e| e.to_string())?;
    let setup: [(&str, Vec<String>); 2] = [
        (polytope, ["make", "--family", "cross", "--dim", "3", "--out", &path("oct.json")].map(String::from).into()),
        (polytope, ["make", "--family", "cube", "--dim", "4", "--out", &path("cube4.json")].map(String::from).into()),
    ];
    for (bin, args) in &setup {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        ensure(run_cli(bin, &args)?.0 == 0, || format!("setup {args:?} failed"))?;
    }

    let runs: Vec<(&str, Vec<String>, Option<String>)> = vec![
        (
            polytope,
            s(&["make", "--family", "cyclic", "--m", "4", "--n", "7", "--out", &path("c47.json")]),
            Some(path("c47.json")),
        ),
        (
            tverberg,
            s(&[
                "count-cross",
                "--m",
                "3",
                "--d",
                "1",
                "--r",
                "3",
                "--seed",
                "7",
                "--trials",
                "6",
                "--out",
                &path("counts.csv"),
            ]),
            Some(path("counts.csv")),
        ),
        (
            tverberg,
            s(&["neighborly", "--n", "7", "--m", "4", "--d", "1", "--r", "3", "--seed", "3", "--trials", "3"]),
            None,
        ),
        (
            tverberg,
            s(&[
                "search",
                "--polytope",
                &path("oct.json"),
                "--map",
                &path("f.json"),
                "--r",
                "3",
                "--all",
                "--out",
                &path("w.json"),
            ]),
            Some(path("w.json")),
        ),
        (tverberg, s(&["d1", "--polytope", &path("cube4.json"), "--r", "4", "--seed", "5"]), None),
        (
            polytope,
            s(&[
                "subdivide",
                "--in",
                &path("oct.json"),
                "--k",
                "2",
                "--report",
                &path("decay.csv"),
                "--out",
                &path("cx.json"),
            ]),
            Some(path("cx.json")),
        ),
        (polytope, s(&["packing", "--lambda", "0.5", "--seed", "1", "--pool", "2000", "--samples", "2000"]), None),
        (
            bu,
            s(&["solve", "--m", "2", "--d", "1", "--p", "2", "--seed", "1", "--out", &path("orbit.json")]),
            Some(path("orbit.json")),
        ),
    ];
    for (bin, args, artifact) in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let (code, stdout) = run_cli(bin, &args)?;
            ensure(code == 0, || format!("{args:?} exited with {code}"))?;
            let file = artifact.as_deref().map(std::fs::read).transpose().map_err(|e| e.to_string())?;
            outputs.push((stdout, file));
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} is not reproducible"))?;
    }
    let c47: serde_json::Value = serde_json::from_slice(&std::fs::read(path("c47.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let facets = c47["facets"].as_array().map_or(0, Vec::len);
    ensure(facets == 14, || format!("C(4,7) has {facets} facets"))?;
    let decay = std::fs::read_to_string(path("decay.csv")).map_err(|e| e.to_string())?;
    ensure(decay.starts_with("k,diameter,ratio,decreasing,within_factor\n"), || "decay CSV header".into())?;
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn s(args: &[&str]) -> Vec<String> {
    args.iter().map(|a| a.to_string()).collect()
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "Tverberg partitions of 7 points in the plane",
            budget: Some(Duration::from_secs(10)),
            check: tverberg_oracle,
        },
        Criterion {
            id: 2,
            name: "cross-polytope witness counts",
            budget: Some(Duration::from_secs(120)),
            check: cross_bound_counts,
        },
        Criterion {
            id: 3,
            name: "colorful reduction on the 4-cross-polytope",
            budget: None,
            check: colorful_reduction,
        },
        Criterion { id: 4, name: "neighborly construction and Gale evenness", budget: None, check: neighborly },
        Criterion { id: 5, name: "d = 1 greedy witness on cubes", budget: None, check: d1_cubes },
        Criterion { id: 6, name: "Balinski degree bound on the corpus", budget: None, check: balinski },
        Criterion {
            id: 7,
            name: "sphere orbit solver and gradients",
            budget: Some(Duration::from_secs(180)),
            check: bu_solver,
        },
        Criterion { id: 8, name: "subdivision diameter decay", budget: None, check: subdivision_decay },
        Criterion { id: 9, name: "lambda-packing Voronoi diameters", budget: None, check: packing },
        Criterion { id: 10, name: "CLI determinism", budget: None, check: determinism },
    ];
    // Optional criterion ids on the command line select a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<&Criterion> = criteria.iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
    let mut failed = 0;
    for c in &selected {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let budget = c.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        let (tag, detail) = match (&result, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("over budget: {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2} {}: {detail} ({:.1}s{budget})", c.id, c.name, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", selected.len() - failed, selected.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
