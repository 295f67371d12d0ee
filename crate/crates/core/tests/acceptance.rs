//! Acceptance suite: nine criteria, one PASS/FAIL line each. Runs with its
//! own `main` so the report is printed by a plain `cargo test`.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use edpaths::derand::derandomized_solve;
use edpaths::gadgets::{
    composed_parameters, make_no_instance, or_compose_many, or_compose_pair, ppt_from_exact_path,
};
use edpaths::generate::{gen_planted, gen_random, PlantedShape, TerminalRule};
use edpaths::oracle::{
    enumerate_paths, minimal_valid_partner, oracle_solve, OracleLimits, PathCaps,
};
use edpaths::partition::{
    random_edge_partition, solve, solve_detailed, Outcome, PartitionSearch, SolveConfig,
};
use edpaths::path_engine::LongPathBudget;
use edpaths::rng::stream;
use edpaths::{verify_solution, CaseKind, Graph, GraphView, LengthConstraint, ProblemInstance};

const SUPPORTED: [CaseKind; 7] = [
    CaseKind::ShortShort,
    CaseKind::ShortExact,
    CaseKind::ExactExact,
    CaseKind::ShortUnbounded,
    CaseKind::ExactUnbounded,
    CaseKind::ShortLong,
    CaseKind::ExactLong,
];

struct CriterionResult {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> CriterionResult {
    CriterionResult {
        pass,
        detail: detail.into(),
    }
}

/// A random small instance of `case`: planted on even draws, uniform on odd
/// ones, with the pairs exchanged half of the time. Keeps `n <= max_n` and
/// `m <= max_m`.
fn small_instance(
    rng: &mut ChaCha8Rng,
    case: CaseKind,
    max_n: usize,
    max_m: usize,
    kmax: usize,
) -> ProblemInstance {
    loop {
        let k1 = rng.gen_range(1..=kmax);
        let k2 = rng.gen_range(1..=kmax);
        let (c1, c2) = case.constraints(k1, k2);
        let inst = if rng.gen_bool(0.5) {
            let shape = PlantedShape {
                case,
                k1,
                k2,
                extra_n: rng.gen_range(0..=3),
                extra_m: rng.gen_range(0..=6),
            };
            match gen_planted(shape, rng.gen()) {
                Ok((inst, _)) => inst,
                Err(_) => continue,
            }
        } else {
            let n = rng.gen_range(5..=max_n);
            let m = rng.gen_range(n - 1..=max_m.min(n * (n - 1) / 2));
            let rule = [
                TerminalRule::Distinct,
                TerminalRule::Coincident,
                TerminalRule::CrossingCycle,
            ][rng.gen_range(0..3)];
            gen_random(n, m, rule, c1, c2, rng.gen()).expect("feasible random instance")
        };
        if inst.graph.vertex_count() > max_n || inst.graph.edge_count() > max_m {
            continue;
        }
        return if rng.gen_bool(0.5) {
            inst.swapped()
        } else {
            inst
        };
    }
}

fn criterion_1() -> CriterionResult {
    let mut rng = stream(0xC1, 0);
    let config = SolveConfig::default();
    let (mut yes, mut disagreements, mut invalid) = (0, Vec::new(), 0);
    for i in 0..500 {
        let inst = small_instance(&mut rng, SUPPORTED[i % 7], 10, 16, 4);
        let expected = oracle_solve(&inst, OracleLimits::default())
            .expect("oracle")
            .is_some();
        let got = solve(
            &inst,
            &SolveConfig {
                seed: i as u64,
                ..config
            },
        )
        .expect("solve");
        if let Outcome::Found(sol) = &got {
            if !verify_solution(&inst, &sol.p1, &sol.p2).unwrap().is_valid() {
                invalid += 1;
            }
        }
        yes += expected as usize;
        if got.solution().is_some() != expected {
            disagreements.push(i);
        }
    }
    verdict(
        disagreements.is_empty() && invalid == 0,
        format!(
            "500 instances ({yes} yes), disagreements {:?}, invalid pairs {invalid}",
            disagreements
        ),
    )
}

fn criterion_2() -> CriterionResult {
    let mut rng = stream(0xC2, 0);
    let config = SolveConfig::default();
    let (mut yes, mut disagreements, mut limits) = (0, Vec::new(), 0);
    let mut done = 0;
    let mut i = 0;
    while done < 200 {
        i += 1;
        let inst = small_instance(&mut rng, SUPPORTED[i % 7], 10, 16, 4);
        let normalized = if inst.case().swapped {
            inst.swapped()
        } else {
            inst.clone()
        };
        let search =
            PartitionSearch::new(&normalized, config.delta, LongPathBudget::default()).unwrap();
        if search.colorable().len() > 14 {
            continue;
        }
        done += 1;
        let expected = oracle_solve(&inst, OracleLimits::default())
            .expect("oracle")
            .is_some();
        yes += expected as usize;
        match derandomized_solve(&inst, &config) {
            Ok(got) => {
                let valid = got
                    .solution()
                    .is_none_or(|s| verify_solution(&inst, &s.p1, &s.p2).unwrap().is_valid());
                if got.solution().is_some() != expected || !valid {
                    disagreements.push(i);
                }
            }
            Err(_) => limits += 1,
        }
    }
    verdict(
        disagreements.is_empty() && limits == 0,
        format!(
            "200 instances ({yes} yes), disagreements {disagreements:?}, limit errors {limits}"
        ),
    )
}

fn criterion_3() -> CriterionResult {
    let mut rng = stream(0xC3, 0);
    let (mut found, mut bad, mut unsupported) = (0, 0, 0);
    for i in 0..10_000u64 {
        let case = CaseKind::ALL[rng.gen_range(0..CaseKind::ALL.len())];
        let k1 = rng.gen_range(0..=3);
        let k2 = rng.gen_range(0..=3);
        let (c1, c2) = case.constraints(k1, k2);
        let shape = PlantedShape {
            case,
            k1,
            k2,
            extra_n: rng.gen_range(0..=4),
            extra_m: rng.gen_range(0..=8),
        };
        let planted = if rng.gen_bool(0.5) {
            gen_planted(shape, i).ok()
        } else {
            None
        };
        let inst = if let Some((inst, _)) = planted {
            inst
        } else {
            let n = rng.gen_range(4..=9);
            let m = rng.gen_range(0..=(n * (n - 1) / 2).min(14));
            gen_random(n, m, TerminalRule::Distinct, c1, c2, i).expect("random")
        };
        let inst = if rng.gen_bool(0.5) {
            inst.swapped()
        } else {
            inst
        };
        let config = SolveConfig {
            delta: 1e-3,
            seed: i,
            ..SolveConfig::default()
        };
        match solve(&inst, &config).expect("solve") {
            Outcome::Found(sol) => {
                found += 1;
                if !verify_solution(&inst, &sol.p1, &sol.p2).unwrap().is_valid() {
                    bad += 1;
                }
            }
            Outcome::NotFound => {}
            Outcome::Unsupported(_) => unsupported += 1,
        }
    }
    verdict(
        bad == 0,
        format!("10000 calls, {found} pairs returned, {bad} failed verification, {unsupported} unsupported"),
    )
}

/// BFS distances written out here so the nearby-edge checks do not lean on the
/// library's own nearby computation.
fn distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for (u, _) in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(dist[v].unwrap() + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

fn nearby_vertices(g: &Graph, s1: usize, t1: usize, k1: usize) -> Vec<bool> {
    let (a, b) = (distances(g, s1), distances(g, t1));
    (0..g.vertex_count())
        .map(|v| matches!((a[v], b[v]), (Some(x), Some(y)) if x + y <= k1))
        .collect()
}

fn nearby_edge_count(near: &[bool], path: &edpaths::Path) -> usize {
    path.vertices()
        .windows(2)
        .filter(|w| near[w[0]] && near[w[1]])
        .count()
}

/// For every first path of length at most `k1` that has a partner, checks that
/// its edges are nearby and that the minimal partner has at most `bound`
/// nearby edges. Returns (yes-instances, checked pairs, violations).
fn nearby_bound_check(
    c2_of: impl Fn(usize) -> LengthConstraint,
    bound: impl Fn(usize, usize) -> usize,
    seed: u64,
) -> (usize, usize, Vec<String>) {
    let mut rng = stream(seed, 0);
    let (mut yes, mut checked, mut violations) = (0, 0, Vec::new());
    let limits = OracleLimits::default();
    let mut attempt = 0u64;
    while yes < 200 && attempt < 20_000 {
        attempt += 1;
        let k1 = rng.gen_range(1..=4);
        let k2 = rng.gen_range(1..=4);
        let n = rng.gen_range(6..=11);
        let m = rng.gen_range(n..=(n * (n - 1) / 2).min(2 * n + 4));
        let rule = [
            TerminalRule::Distinct,
            TerminalRule::Coincident,
            TerminalRule::CrossingCycle,
        ][rng.gen_range(0..3)];
        let c2 = c2_of(k2);
        let inst = gen_random(n, m, rule, LengthConstraint::AtMost(k1), c2, attempt).unwrap();
        let g = &inst.graph;
        let near = nearby_vertices(g, inst.s1, inst.t1, k1);
        let caps = PathCaps {
            max_paths: 1_000_000,
            max_len: Some(k1),
        };
        let mut any = false;
        for p1 in enumerate_paths(g, inst.s1, inst.t1, caps).paths {
            let Some(p2) = minimal_valid_partner(g, &p1, inst.s2, inst.t2, c2, limits).unwrap()
            else {
                continue;
            };
            any = true;
            checked += 1;
            if nearby_edge_count(&near, &p1) != p1.len() {
                violations.push(format!(
                    "seed {attempt}: first path {p1} has a non-nearby edge"
                ));
            }
            let count = nearby_edge_count(&near, &p2);
            if count > bound(k1, k2) {
                violations.push(format!(
                    "seed {attempt}: partner {p2} has {count} nearby edges > {}",
                    bound(k1, k2)
                ));
            }
        }
        yes += any as usize;
    }
    (yes, checked, violations)
}

fn criterion_4() -> CriterionResult {
    let (yes, checked, violations) = nearby_bound_check(
        |_| LengthConstraint::Unbounded,
        |k1, _| (k1 + 1) * (k1 + 1),
        0xC4,
    );
    verdict(
        yes >= 200 && violations.is_empty(),
        format!(
            "{yes} yes-instances, {checked} (first path, partner) pairs, violations {violations:?}"
        ),
    )
}

fn criterion_5() -> CriterionResult {
    let (yes, checked, violations) = nearby_bound_check(
        LengthConstraint::AtLeast,
        |k1, k2| k1 * k1 + 3 * k1 + 2 * k2,
        0xC5,
    );
    verdict(
        yes >= 200 && violations.is_empty(),
        format!(
            "{yes} yes-instances, {checked} (first path, partner) pairs, violations {violations:?}"
        ),
    )
}

fn criterion_6() -> CriterionResult {
    let mut rng = stream(0xC6, 0);
    let trials = 10_000u32;
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for i in 0..20u64 {
        let k1 = rng.gen_range(1..=3);
        let k2 = rng.gen_range(1..=(6 - k1).min(3));
        let shape = PlantedShape {
            case: CaseKind::ShortShort,
            k1,
            k2,
            extra_n: 6,
            extra_m: 20,
        };
        let (inst, _) = gen_planted(shape, 1000 + i).unwrap();
        let search = PartitionSearch::new(&inst, 1e-9, LongPathBudget::default()).unwrap();
        let mut coin = stream(0xC6, 1 + i);
        let hits = (0..trials)
            .filter(|&t| {
                let coloring = random_edge_partition(search.colorable(), &mut coin);
                search.attempt(&coloring, t as u64).unwrap().is_some()
            })
            .count();
        let p0 = 0.5f64.powi((k1 + k2) as i32);
        let sigma = (p0 * (1.0 - p0) / trials as f64).sqrt();
        let rate = hits as f64 / trials as f64;
        let margin = (rate - (p0 - 3.0 * sigma)) / p0;
        worst = worst.min(margin);
        if rate < p0 - 3.0 * sigma {
            failures.push(format!("instance {i}: rate {rate:.4} < {p0:.4} - 3 sigma"));
        }
    }
    verdict(
        failures.is_empty(),
        format!("20 instances x {trials} partitions, smallest margin over the bound {worst:.3} x 2^-r, failures {failures:?}"),
    )
}

fn criterion_7() -> CriterionResult {
    let mut rng = stream(0xC7, 0);
    let big = OracleLimits {
        max_vertices: 200,
        max_paths: 20_000_000,
    };
    let (mut yes_inputs, mut violations) = (0, Vec::new());
    for i in 0..100u64 {
        let k1 = rng.gen_range(1..=3);
        let k2 = rng.gen_range(1..=3);
        let side = |rng: &mut ChaCha8Rng| loop {
            let inst = small_instance(rng, CaseKind::ShortShort, 8, 14, 3);
            let inst = ProblemInstance {
                c1: LengthConstraint::AtMost(k1),
                c2: LengthConstraint::AtMost(k2),
                ..inst
            };
            if inst.graph.vertex_count() <= 8 {
                return inst;
            }
        };
        let a = side(&mut rng);
        let b = side(&mut rng);
        let ya = oracle_solve(&a, OracleLimits::default()).unwrap().is_some();
        let yb = oracle_solve(&b, OracleLimits::default()).unwrap().is_some();
        yes_inputs += ya as usize + yb as usize;
        let composed = or_compose_pair(&a, &b).unwrap();
        if (composed.c1, composed.c2)
            != (
                LengthConstraint::AtMost(k1 + 4),
                LengthConstraint::AtMost(k2 + 3 * (k1 + 4) + 1),
            )
        {
            violations.push(format!(
                "pair {i}: parameters ({}, {})",
                composed.c1, composed.c2
            ));
        }
        let got = oracle_solve(&composed, big).unwrap();
        if let Some(sol) = &got {
            assert!(verify_solution(&composed, &sol.p1, &sol.p2)
                .unwrap()
                .is_valid());
        }
        if got.is_some() != (ya || yb) {
            violations.push(format!(
                "pair {i}: composed {} but inputs {ya}/{yb}",
                got.is_some()
            ));
        }
    }
    for w in [2usize, 4, 8] {
        for (k1, k2) in [(1, 1), (2, 3), (3, 2)] {
            let inputs =
                vec![
                    make_no_instance(LengthConstraint::AtMost(k1), LengthConstraint::AtMost(k2));
                    w
                ];
            let (out, report) = or_compose_many(&inputs, true).unwrap();
            let d = w.trailing_zeros() as usize;
            let expected = (k1 + 4 * d, k2 + (3 * k1 + 1) * d + 6 * d * (d + 1));
            if (report.k1_out, report.k2_out) != expected
                || (out.c1, out.c2)
                    != (
                        LengthConstraint::AtMost(expected.0),
                        LengthConstraint::AtMost(expected.1),
                    )
                || composed_parameters(k1, k2, d) != expected
                || report.d != d
            {
                violations.push(format!(
                    "w={w} k=({k1},{k2}): got ({}, {})",
                    report.k1_out, report.k2_out
                ));
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!("100 pairs ({yes_inputs} yes inputs of 200), w in {{2,4,8}} parameters, violations {violations:?}"),
    )
}

/// Independent exact-length check by plain recursion.
fn has_path_of_length(g: &Graph, s: usize, t: usize, k: usize) -> bool {
    fn go(g: &Graph, v: usize, t: usize, left: usize, seen: &mut Vec<bool>) -> bool {
        if left == 0 {
            return v == t;
        }
        if v == t {
            return false;
        }
        for (u, _) in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                if go(g, u, t, left - 1, seen) {
                    return true;
                }
                seen[u] = false;
            }
        }
        false
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    go(g, s, t, k, &mut seen)
}

fn criterion_8() -> CriterionResult {
    let mut rng = stream(0xC8, 0);
    let (mut yes, mut violations) = (0, Vec::new());
    for i in 0..100u64 {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(0..=(n * (n - 1) / 2).min(2 * n));
        let inst = gen_random(
            n,
            m,
            TerminalRule::Distinct,
            LengthConstraint::Unbounded,
            LengthConstraint::Unbounded,
            i,
        )
        .unwrap();
        let k = rng.gen_range(0..=n);
        let s = inst.s1;
        let t = if rng.gen_bool(0.1) { s } else { inst.t1 };
        let g = &inst.graph;
        let out = ppt_from_exact_path(g, s, t, k).unwrap();
        if out.graph.vertex_count() != n + 2 || out.graph.edge_count() != g.edge_count() + 1 {
            violations.push(format!(
                "input {i}: sizes {} / {}",
                out.graph.vertex_count(),
                out.graph.edge_count()
            ));
        }
        let expected = has_path_of_length(g, s, t, k);
        yes += expected as usize;
        let oracle = oracle_solve(&out, OracleLimits::default())
            .unwrap()
            .is_some();
        let solver = solve(&out, &SolveConfig::default())
            .unwrap()
            .solution()
            .is_some();
        if oracle != expected || solver != expected {
            violations.push(format!(
                "input {i}: expected {expected}, oracle {oracle}, solver {solver}"
            ));
        }
    }
    verdict(
        violations.is_empty(),
        format!("100 inputs ({yes} yes), violations {violations:?}"),
    )
}

fn criterion_9() -> CriterionResult {
    let limit = Duration::from_secs(60);
    let config = SolveConfig {
        delta: 1e-6,
        ..SolveConfig::default()
    };
    let mut lines = Vec::new();
    let mut pass = true;
    for (case, k1, k2, extra_n, extra_m) in [
        (CaseKind::ShortShort, 4, 4, 30_000, 100_000),
        (CaseKind::ShortUnbounded, 2, 0, 3_000, 10_000),
    ] {
        let shape = PlantedShape {
            case,
            k1,
            k2,
            extra_n,
            extra_m,
        };
        let (inst, _) = gen_planted(shape, 9).unwrap();
        let start = Instant::now();
        let report = solve_detailed(&inst, &config).unwrap();
        let took = start.elapsed();
        let ok = report
            .outcome
            .solution()
            .is_some_and(|s| verify_solution(&inst, &s.p1, &s.p2).unwrap().is_valid())
            && took < limit;
        pass &= ok;
        lines.push(format!(
            "{case} m={} in {:.2}s after {} trials",
            inst.graph.edge_count(),
            took.as_secs_f64(),
            report.trials_run
        ));
    }
    verdict(pass, lines.join("; "))
}

type Criterion = (&'static str, fn() -> CriterionResult);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence, random mode", criterion_1),
        ("2 oracle equivalence, universal mode", criterion_2),
        ("3 soundness fuzz", criterion_3),
        ("4 nearby-edge bound, unbounded partner", criterion_4),
        ("5 nearby-edge bound, long partner", criterion_5),
        ("6 per-trial success probability", criterion_6),
        ("7 OR-composition semantics and parameters", criterion_7),
        ("8 exact-path gadget", criterion_8),
        ("9 performance", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        failed += !result.pass as usize;
        println!(
            "{} criterion {name} [{:.1}s]: {}",
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
