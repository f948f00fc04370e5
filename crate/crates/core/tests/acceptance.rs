//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use signed_ties::balance::{edge_in_both_signs, is_balanced};
use signed_ties::connectivity::{is_2_connected, is_3_connected};
use signed_ties::decide::{lovasz_three_edges, LovaszOutcome};
use signed_ties::gadget::Gadget;
use signed_ties::gen::{
    compose_tied_instance, enumerate_underlying, random_3_connected, random_signed_graph,
    random_switch, switching_representatives, Recipe,
};
use signed_ties::oracle::{
    cycle_through_three, enumerate_cycles, oracle_tied_with_budget, ThreeEdgeSearch, DEFAULT_BUDGET,
};
use signed_ties::{
    decide_tied, enumerate_common_cycles, oracle_tied, verify_certificate, EdgeId, Error,
    SignedGraph, Verdict, VerdictKind,
};

/// Wall-clock ceiling for the two oracle-equivalence suites.
const TIME_LIMIT: Duration = Duration::from_secs(300);
/// Certificates kept per class for the mutation suite.
const POOL_CAP: usize = 400;
/// Oracle search budget for composed instances, which reach ~70 edges.
const AC9_BUDGET: u64 = 50_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Pool {
    untied: Vec<(SignedGraph, EdgeId, EdgeId, Verdict)>,
    tied: Vec<(SignedGraph, EdgeId, EdgeId, Verdict)>,
    vacuous: Vec<(SignedGraph, EdgeId, EdgeId, Verdict)>,
    verified: usize,
    rejected: Vec<String>,
}

impl Pool {
    /// Verifies a decide_tied result and keeps it for mutation. Tied
    /// certificates with splits are always kept; others up to the cap.
    fn record(&mut self, g: &SignedGraph, e1: EdgeId, e2: EdgeId, v: &Verdict) {
        match verify_certificate(g, e1, e2, v) {
            Ok(()) => self.verified += 1,
            Err(reason) => {
                if self.rejected.len() < 5 {
                    self.rejected.push(format!("{e1} {e2}: {reason}"));
                }
                return;
            }
        }
        let item = (g.clone(), e1, e2, v.clone());
        let (bucket, rich) = match v.kind() {
            VerdictKind::Untied => (&mut self.untied, false),
            VerdictKind::Vacuous => (&mut self.vacuous, false),
            VerdictKind::Tied(_) => {
                let rich = serde_json::to_string(v).unwrap().contains("\"split\"");
                (&mut self.tied, rich)
            }
        };
        if bucket.len() < POOL_CAP || (rich && bucket.len() < 4 * POOL_CAP) {
            bucket.push(item);
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_pair(rng: &mut ChaCha8Rng, m: usize) -> (EdgeId, EdgeId) {
    let picks = rand::seq::index::sample(rng, m, 2);
    (EdgeId(picks.index(0)), EdgeId(picks.index(1)))
}

fn ac1(pool: &mut Pool) -> Outcome {
    let start = Instant::now();
    let graphs: Vec<SignedGraph> = enumerate_underlying(5, 10, true, true)
        .unwrap()
        .into_iter()
        .filter(is_2_connected)
        .filter(|g| g.edge_count() >= 2)
        .collect();
    let (mut signatures, mut pairs, mut mismatches) = (0, 0, Vec::new());
    for base in &graphs {
        for g in switching_representatives(base) {
            signatures += 1;
            for (a, b) in g.edge_ids().tuple_combinations() {
                for (e1, e2) in [(a, b), (b, a)] {
                    pairs += 1;
                    let ours = decide_tied(&g, e1, e2).unwrap();
                    let truth = oracle_tied(&g, e1, e2).unwrap();
                    if ours.kind() != truth.kind() && mismatches.len() < 3 {
                        mismatches.push(format!("{g:?} {e1} {e2}: {} vs {}", ours.kind(), truth.kind()));
                    }
                    pool.record(&g, e1, e2, &ours);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: mismatches.is_empty() && elapsed <= TIME_LIMIT,
        detail: format!(
            "{} graphs, {signatures} signatures, {pairs} ordered pairs, {} mismatches, {:.1}s{}",
            graphs.len(),
            mismatches.len(),
            elapsed.as_secs_f64(),
            first(&mismatches)
        ),
    }
}

fn ac2(pool: &mut Pool) -> Outcome {
    let start = Instant::now();
    let (mut mismatches, mut counts) = (Vec::new(), BTreeMap::new());
    for seed in 0..10_000u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=8);
        let m = r.gen_range(2..=16);
        let p = if seed % 2 == 0 { 0.2 } else { 0.5 };
        let g = random_signed_graph(n, m, p, r.gen()).unwrap();
        let (e1, e2) = random_pair(&mut r, m);
        let ours = decide_tied(&g, e1, e2).unwrap();
        let truth = oracle_tied(&g, e1, e2).unwrap();
        *counts.entry(kind_name(truth.kind())).or_insert(0) += 1;
        if ours.kind() != truth.kind() && mismatches.len() < 3 {
            mismatches.push(format!("seed {seed}: {} vs {}", ours.kind(), truth.kind()));
        }
        pool.record(&g, e1, e2, &ours);
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: mismatches.is_empty() && elapsed <= TIME_LIMIT,
        detail: format!(
            "10000 instances {counts:?}, {} mismatches, {:.1}s{}",
            mismatches.len(),
            elapsed.as_secs_f64(),
            first(&mismatches)
        ),
    }
}

fn kind_name(k: VerdictKind) -> &'static str {
    match k {
        VerdictKind::Untied => "untied",
        VerdictKind::Tied(_) => "tied",
        VerdictKind::Vacuous => "vacuous",
    }
}

fn ac3(pool: &mut Pool) -> Outcome {
    let start = Instant::now();
    let (mut failures, mut counts) = (Vec::new(), Vec::new());
    for gadget in Gadget::ALL {
        let inst = gadget.build();
        let g = &inst.graph;
        let v = decide_tied(g, inst.e1, inst.e2).unwrap();
        pool.record(g, inst.e1, inst.e2, &v);
        if v.kind() != VerdictKind::Untied {
            failures.push(format!("{}: decide gives {}", gadget.name(), v.kind()));
        }
        let r = enumerate_common_cycles(g, inst.e1, inst.e2, DEFAULT_BUDGET).unwrap();
        counts.push(format!("{} +{}/-{}", gadget.name(), r.positive_count, r.negative_count));
        // The product of all common-cycle signs is the sign of their
        // symmetric difference, E(C), so the negative count is odd.
        if !r.complete
            || r.positive_count < 1
            || r.negative_count % 2 != 1
            || !r.cycles.len().is_multiple_of(2)
        {
            failures.push(format!(
                "{}: complete={} pos={} neg={}",
                gadget.name(),
                r.complete,
                r.positive_count,
                r.negative_count
            ));
        }
        let mut diff = BTreeSet::new();
        for c in &r.cycles {
            diff = diff.symmetric_difference(&c.edge_set()).copied().collect();
        }
        let c = &inst.distinguished_cycle;
        if diff != c.edge_set() || c.sign(g).is_positive() {
            failures.push(format!("{}: symmetric difference {diff:?} is not E(C)", gadget.name()));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: failures.is_empty() && elapsed < Duration::from_secs(1),
        detail: format!(
            "{}, {} failures, {:.3}s{}",
            counts.join(", "),
            failures.len(),
            elapsed.as_secs_f64(),
            first(&failures)
        ),
    }
}

fn ac4() -> Outcome {
    let (mut graphs, mut edges, mut mismatches) = (0, 0, Vec::new());
    let mut seed = 0u64;
    while graphs < 1000 {
        seed += 1;
        let mut r = rng(seed);
        let n = r.gen_range(3..=7);
        let m = r.gen_range(n..=2 * n + 2);
        let g = random_signed_graph(n, m, 0.3, r.gen()).unwrap();
        if !is_2_connected(&g) {
            continue;
        }
        graphs += 1;
        let (cycles, complete) = enumerate_cycles(&g, DEFAULT_BUDGET);
        assert!(complete);
        for e in g.edge_ids() {
            edges += 1;
            let criterion = edge_in_both_signs(&g, e).unwrap();
            let minus = !is_balanced(&g.delete_edge(e).unwrap().0).is_balanced();
            let signs: BTreeSet<_> = cycles.iter().filter(|c| c.contains_edge(e)).map(|c| c.sign(&g)).collect();
            let enumerated = signs.len() == 2;
            if (criterion != minus || criterion != enumerated) && mismatches.len() < 3 {
                mismatches.push(format!("seed {seed} edge {e}: {criterion} {minus} {enumerated}"));
            }
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("{graphs} 2-connected graphs, {edges} edges, {} mismatches{}", mismatches.len(), first(&mismatches)),
    }
}

fn ac5() -> Outcome {
    let mut mismatches = Vec::new();
    for seed in 0..1000u64 {
        let mut r = rng(seed);
        let n = r.gen_range(3..=7);
        let m = r.gen_range(2..=12);
        let g = random_signed_graph(n, m, 0.4, r.gen()).unwrap();
        let (h, _) = random_switch(&g, r.gen());
        let signs = |x: &SignedGraph| -> BTreeMap<Vec<EdgeId>, _> {
            let (cycles, complete) = enumerate_cycles(x, DEFAULT_BUDGET);
            assert!(complete);
            cycles.iter().map(|c| (c.edges().to_vec(), c.sign(x))).collect()
        };
        if signs(&g) != signs(&h) && mismatches.len() < 3 {
            mismatches.push(format!("seed {seed}: cycle signs changed"));
        }
        let (e1, e2) = random_pair(&mut r, m);
        let (a, b) = (decide_tied(&g, e1, e2).unwrap(), decide_tied(&h, e1, e2).unwrap());
        if a.kind() != b.kind() && mismatches.len() < 3 {
            mismatches.push(format!("seed {seed}: {} became {}", a.kind(), b.kind()));
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("1000 switched graphs, {} mismatches{}", mismatches.len(), first(&mismatches)),
    }
}

/// One random deletion or contraction that keeps `e1` and `e2`; `None` if
/// no operation applies.
fn random_minor_step(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    r: &mut ChaCha8Rng,
) -> Option<(SignedGraph, EdgeId, EdgeId)> {
    let ends: BTreeSet<_> = [g.endpoints(e1), g.endpoints(e2)].into_iter().flat_map(|(a, b)| [a, b]).collect();
    let others: Vec<EdgeId> = g.edge_ids().filter(|&f| f != e1 && f != e2).collect();
    let contractible: Vec<EdgeId> = others
        .iter()
        .copied()
        .filter(|&f| !g.are_parallel(f, e1) && !g.are_parallel(f, e2))
        .collect();
    let removable: Vec<_> = g.vertices().filter(|v| !ends.contains(v)).collect();
    for _ in 0..8 {
        let (h, emap) = match r.gen_range(0..3) {
            0 if !others.is_empty() => g.delete_edge(*others.choose(r).unwrap()).unwrap(),
            1 if !removable.is_empty() => {
                let (h, _, emap) = g.delete_vertex(*removable.choose(r).unwrap()).unwrap();
                (h, emap)
            }
            2 if !contractible.is_empty() => {
                let (h, _, emap) = g.contract_edge(*contractible.choose(r).unwrap()).unwrap();
                (h, emap)
            }
            _ => continue,
        };
        return Some((h, emap[e1.0]?, emap[e2.0]?));
    }
    None
}

fn ac6() -> Outcome {
    let (mut premises, mut violations, mut seed) = (0, Vec::new(), 0u64);
    while premises < 500 && seed < 200_000 {
        seed += 1;
        let mut r = rng(seed);
        let n = r.gen_range(4..=7);
        let m = r.gen_range(5..=12);
        let g = random_signed_graph(n, m, 0.4, r.gen()).unwrap();
        let (e1, e2) = random_pair(&mut r, m);
        let (mut h, mut f1, mut f2) = (g.clone(), e1, e2);
        for _ in 0..r.gen_range(1..=3) {
            match random_minor_step(&h, f1, f2, &mut r) {
                Some(next) => (h, f1, f2) = next,
                None => break,
            }
        }
        if h.edge_count() == g.edge_count() && h.vertex_count() == g.vertex_count() {
            continue;
        }
        if oracle_tied(&h, f1, f2).unwrap().kind() != VerdictKind::Untied {
            continue;
        }
        premises += 1;
        if oracle_tied(&g, e1, e2).unwrap().kind() != VerdictKind::Untied && violations.len() < 3 {
            violations.push(format!("seed {seed}"));
        }
    }
    Outcome {
        pass: premises == 500 && violations.is_empty(),
        detail: format!(
            "{premises} proper minors untied ({seed} draws), {} originals tied{}",
            violations.len(),
            first(&violations)
        ),
    }
}

fn ac7() -> Outcome {
    let (mut instances, mut violations, mut seed) = (0, Vec::new(), 0u64);
    while instances < 500 {
        seed += 1;
        let mut r = rng(seed);
        let n = r.gen_range(5..=10);
        let g = random_3_connected(n, r.gen_range(0..=n), 0.3, true, r.gen()).unwrap();
        let (e1, e2) = random_pair(&mut r, g.edge_count());
        if g.edges()[e1.0].shares_vertex(&g.edges()[e2.0]).is_some() {
            continue;
        }
        let (rest, _) = g.retain_edges(|f| f != e1 && f != e2);
        if is_balanced(&rest).is_balanced() {
            continue;
        }
        instances += 1;
        let v = decide_tied(&g, e1, e2).unwrap();
        let ok = v.kind() == VerdictKind::Untied && verify_certificate(&g, e1, e2, &v).is_ok();
        if !ok && violations.len() < 3 {
            violations.push(format!("seed {seed}: {}", v.kind()));
        }
    }
    Outcome {
        pass: violations.is_empty(),
        detail: format!("{instances} instances, {} violations{}", violations.len(), first(&violations)),
    }
}

fn ac8() -> Outcome {
    let (mut triples, mut mismatches) = (0, Vec::new());
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let n = r.gen_range(4..=6);
        let g = random_3_connected(n, r.gen_range(0..=8), 0.0, true, r.gen()).unwrap();
        assert!(g.is_simple() && is_3_connected(&g));
        for (a, b, c) in g.edge_ids().tuple_combinations() {
            triples += 1;
            let claim = lovasz_three_edges(&g, a, b, c).unwrap();
            let search = cycle_through_three(&g, a, b, c, DEFAULT_BUDGET).unwrap();
            let agree = match search {
                ThreeEdgeSearch::Found(_) => claim == LovaszOutcome::CycleExists,
                ThreeEdgeSearch::Absent => claim != LovaszOutcome::CycleExists,
                ThreeEdgeSearch::Exhausted => false,
            };
            if !agree && mismatches.len() < 3 {
                mismatches.push(format!("seed {seed} ({a},{b},{c}): {claim:?} vs {search:?}"));
            }
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("200 graphs, {triples} edge triples, {} mismatches{}", mismatches.len(), first(&mismatches)),
    }
}

fn ac9(pool: &mut Pool) -> Outcome {
    let (mut confirmed, mut exhausted, mut violations) = (0, 0, Vec::new());
    let mut sizes = (usize::MAX, 0);
    for seed in 0..1000u64 {
        let recipe = Recipe::random(&mut rng(seed ^ 0x5eed), 1);
        let inst = compose_tied_instance(&recipe, seed).unwrap();
        let g = &inst.graph;
        sizes = (sizes.0.min(g.edge_count()), sizes.1.max(g.edge_count()));
        match oracle_tied_with_budget(g, inst.e1, inst.e2, AC9_BUDGET) {
            Ok(truth) if truth.is_tied() => confirmed += 1,
            Ok(truth) => {
                if violations.len() < 3 {
                    violations.push(format!("seed {seed}: oracle says {}", truth.kind()));
                }
            }
            Err(Error::BudgetExhausted(_)) => exhausted += 1,
            Err(e) => panic!("seed {seed}: {e}"),
        }
        let ours = decide_tied(g, inst.e1, inst.e2).unwrap();
        if !ours.is_tied() && violations.len() < 3 {
            violations.push(format!("seed {seed}: decide says untied"));
        }
        pool.record(g, inst.e1, inst.e2, &ours);
    }
    Outcome {
        pass: violations.is_empty(),
        detail: format!(
            "1000 instances ({}..={} edges), {confirmed} confirmed tied, {exhausted} budget-exhausted, {} violations{}",
            sizes.0,
            sizes.1,
            violations.len(),
            first(&violations)
        ),
    }
}

fn first(items: &[String]) -> String {
    items.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

/// Every node object of a certificate tree, as JSON pointers.
fn node_pointers(v: &Value, at: String, out: &mut Vec<String>) {
    out.push(at.clone());
    if let Some(children) = v.pointer(&format!("{at}/step/children")).and_then(Value::as_array) {
        for i in 0..children.len() {
            node_pointers(v, format!("{at}/step/children/{i}"), out);
        }
    }
}

fn flip(s: &mut Value) {
    *s = json!(if s == "+" { "-" } else { "+" });
}

fn bump_vertex(x: &mut Value, n: usize) {
    let old = x.as_u64().unwrap() as usize;
    *x = json!((old + 1) % n.max(2));
}

/// Applies one random mutation that must make the verdict invalid.
/// Returns a name for the mutation, or `None` when the drawn kind does
/// not apply to this certificate.
fn mutate(v: &mut Value, n: usize, r: &mut ChaCha8Rng) -> Option<&'static str> {
    match v["verdict"].as_str().unwrap() {
        "untied" => {
            let which = if r.gen_bool(0.5) { "positive" } else { "negative" };
            match r.gen_range(0..3) {
                0 => {
                    let len = v["witness"][which]["edges"].as_array().unwrap().len();
                    let i = r.gen_range(0..len);
                    v["witness"][which]["edges"].as_array_mut().unwrap().remove(i);
                    v["witness"][which]["vertices"].as_array_mut().unwrap().remove(i);
                    Some("drop witness edge")
                }
                1 => {
                    v["witness"]["negative"] = v["witness"]["positive"].clone();
                    Some("copy positive witness")
                }
                _ => {
                    let len = v["witness"][which]["vertices"].as_array().unwrap().len();
                    bump_vertex(&mut v["witness"][which]["vertices"][r.gen_range(0..len)], n);
                    Some("change witness vertex")
                }
            }
        }
        "tied_vacuous" => {
            let root = &mut v["certificate"]["tree"];
            let e2 = root["e2"].clone();
            let e1 = root["e1"].clone();
            let side = root["step"]["e1_side"].as_array_mut()?;
            if r.gen_bool(0.5) {
                side.push(e2);
                Some("add e2 to the vacuous side")
            } else {
                side.retain(|x| *x != e1);
                Some("remove e1 from the vacuous side")
            }
        }
        _ => {
            let mut nodes = Vec::new();
            node_pointers(v, "/certificate/tree".into(), &mut nodes);
            match r.gen_range(0..3) {
                0 => {
                    flip(&mut v["common_sign"]);
                    Some("flip common sign")
                }
                1 => {
                    let sample = &mut v["certificate"]["sample"];
                    let len = sample["edges"].as_array()?.len();
                    let i = r.gen_range(0..len);
                    sample["edges"].as_array_mut()?.remove(i);
                    sample["vertices"].as_array_mut()?.remove(i);
                    Some("drop sample edge")
                }
                _ => {
                    let at = nodes.choose(r).unwrap().clone();
                    let step = v.pointer_mut(&format!("{at}/step")).unwrap();
                    mutate_step(step, n, r)
                }
            }
        }
    }
}

fn mutate_step(step: &mut Value, n: usize, r: &mut ChaCha8Rng) -> Option<&'static str> {
    let kind = step["kind"].as_str().unwrap().to_string();
    match (kind.as_str(), r.gen_range(0..4)) {
        ("enumerated", _) => {
            let k = step["positive"].as_u64().unwrap();
            step["positive"] = json!(k + 1);
            Some("change enumerated count")
        }
        ("common_vertex", 0) => {
            bump_vertex(&mut step["vertex"], n);
            Some("change common vertex")
        }
        ("parallel_cut", 0) => {
            let signing: Vec<Value> = step["signing"].as_array()?.iter().map(|p| p[0].clone()).collect();
            let x = signing.choose(r)?.clone();
            let side = step["cut_side"].as_array_mut()?;
            if side.contains(&x) {
                side.retain(|y| *y != x);
            } else {
                side.push(x);
            }
            Some("toggle a cut-side vertex")
        }
        ("parallel_cut" | "common_vertex" | "balanced_remainder", _) => {
            let signing = step["signing"].as_array_mut()?;
            let i = r.gen_range(0..signing.len());
            flip(&mut signing[i][1]);
            Some("flip a signing entry")
        }
        ("split", 0) => {
            bump_vertex(&mut step["boundary"][0], n);
            Some("change a boundary vertex")
        }
        ("split", 1) => {
            let side = if r.gen_bool(0.5) { "side1" } else { "side2" };
            let edges = step[side].as_array_mut()?;
            let i = r.gen_range(0..edges.len());
            edges.remove(i);
            Some("remove a side edge")
        }
        ("split", 2) => {
            let rule = &mut step["rule"];
            match rule["part"].as_str().unwrap() {
                "disjoint" => flip(&mut rule["markers"][r.gen_range(0..2)]["sign"]),
                "balanced_side" => flip(&mut rule["marker"]["sign"]),
                _ => flip(&mut rule[if r.gen_bool(0.5) { "positive" } else { "negative" }]["sign"]),
            }
            Some("flip a marker sign")
        }
        ("split", _) => {
            let rule = &mut step["rule"];
            if rule["part"] == "balanced_side" {
                let signing = rule["signing"].as_array_mut()?;
                let i = r.gen_range(0..signing.len());
                flip(&mut signing[i][1]);
                Some("flip a side signing entry")
            } else {
                None
            }
        }
        _ => None,
    }
}

fn ac10(pool: &Pool) -> Outcome {
    let mut r = rng(10);
    let mut lines = Vec::new();
    let mut pass = pool.rejected.is_empty();
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for (class, items) in [("untied", &pool.untied), ("tied", &pool.tied), ("vacuous", &pool.vacuous)] {
        if items.is_empty() {
            pass = false;
            lines.push(format!("{class}: no certificates"));
            continue;
        }
        let (mut caught, mut missed) = (0, Vec::new());
        while caught + missed.len() < 100 {
            let (g, e1, e2, v) = items.choose(&mut r).unwrap();
            let mut value = serde_json::to_value(v).unwrap();
            let Some(name) = mutate(&mut value, g.vertex_count(), &mut r) else {
                continue;
            };
            *kinds.entry(name).or_default() += 1;
            let rejected = match serde_json::from_value::<Verdict>(value) {
                Err(_) => true,
                Ok(bad) => verify_certificate(g, *e1, *e2, &bad).is_err(),
            };
            if rejected {
                caught += 1;
            } else {
                missed.push(name);
            }
        }
        pass &= missed.is_empty();
        lines.push(format!("{class} {caught}/100 rejected{}", missed.first().map(|m| format!(" (missed: {m})")).unwrap_or_default()));
    }
    Outcome {
        pass,
        detail: format!(
            "{} certificates verified, {} rejected{}; mutations: {}; kinds used: {}",
            pool.verified,
            pool.rejected.len(),
            first(&pool.rejected),
            lines.join(", "),
            kinds.len()
        ),
    }
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    let mut results: Vec<(&str, &str, Outcome)> = Vec::new();
    let mut run = |id, name, f: &mut dyn FnMut(&mut Pool) -> Outcome, pool: &mut Pool| {
        let outcome = f(pool);
        println!("{id} {} {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
        results.push((id, name, outcome));
    };
    run("AC1", "oracle equivalence on all small simple 2-connected graphs", &mut ac1, &mut pool);
    run("AC2", "oracle equivalence on random multigraphs", &mut ac2, &mut pool);
    run("AC3", "gadget properties", &mut ac3, &mut pool);
    let verified_core = (pool.verified, pool.rejected.len());
    run("AC4", "single-edge criterion", &mut |_| ac4(), &mut pool);
    run("AC5", "switch invariance", &mut |_| ac5(), &mut pool);
    run("AC6", "minor monotonicity", &mut |_| ac6(), &mut pool);
    run("AC7", "negative cycle off both edges forces untied", &mut |_| ac7(), &mut pool);
    run("AC8", "three-edge cycle checker", &mut |_| ac8(), &mut pool);
    run("AC9", "composed instances are tied", &mut ac9, &mut pool);
    println!("(suites 1-3 produced {} verified certificates, {} rejected)", verified_core.0, verified_core.1);
    run("AC10", "certificate integrity", &mut |p| ac10(p), &mut pool);
    if results.iter().all(|(_, _, o)| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
