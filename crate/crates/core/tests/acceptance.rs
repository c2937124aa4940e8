//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Pass criterion numbers as arguments to
//! run a subset.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trilin::gadget::*;
use trilin::graph::Graph;
use trilin::iso::{are_isomorphic, canonical_form};
use trilin::sat::{assignment_from_witness, compile, decide, Assignment, CnfFormula, DecideLimits, Decision};
use trilin::search::{brute_force_preimages, count_labeled_preimages, template_solve, SearchLimits, TemplateAssignment};
use trilin::tlg::{
    is_triangle_induced, restrict_preimage, restrict_preimage_with_maps, triangle_closure, triangular_line_graph,
    verify_certificate, PreimageWitness,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wheel(k: usize) -> Graph {
    make_wheel(k).unwrap().graph.without_labels()
}

fn squared(k: usize) -> Graph {
    make_squared_cycle(k).unwrap().graph.without_labels()
}

/// Which template the witness restricted to `vertices` is isomorphic to.
fn restricted_template(w: &PreimageWitness, vertices: &[usize], k: usize) -> Option<Template> {
    let r = restrict_preimage(w, vertices).ok()?;
    let c = r.candidate().clone().without_labels();
    if are_isomorphic(&c, &wheel(k)) {
        Some(Template::Wheel)
    } else if are_isomorphic(&c, &squared(k)) {
        Some(Template::SquaredCycle)
    } else {
        None
    }
}

fn sub_template(g: &GadgetBlueprint, a: &TemplateAssignment, name: &str) -> Option<Template> {
    let s = g.sub(name).ok()?;
    restricted_template(&a.witness, &s.vertices, s.k)
}

fn c1_operators() -> Check {
    let bow = make_bowtie().graph.without_labels();
    let t = triangular_line_graph(&make_double_triangle().graph).derived;
    ensure(are_isomorphic(&t, &bow), || "T(K4-e) is not a bowtie".into())?;
    for k in 7..=12 {
        let sun = make_sun(k).unwrap().graph.without_labels();
        let tw = triangular_line_graph(&wheel(k)).derived;
        let tc = triangular_line_graph(&squared(k)).derived;
        ensure(are_isomorphic(&tw, &sun), || format!("T(W{k}) is not S{k}"))?;
        ensure(are_isomorphic(&tc, &sun), || format!("T(C{k}^2) is not S{k}"))?;
    }
    Ok("T(K4-e) = bowtie; T(W_k) = T(C_k^2) = S_k for k = 7..12".into())
}

fn c2_seven_sun_oracle() -> Check {
    let limits = SearchLimits {
        time_budget: Some(Duration::from_secs(600)),
        ..SearchLimits::default()
    };
    let s7 = make_sun(7).unwrap().graph;
    let classes = brute_force_preimages(&s7, &limits).map_err(|e| e.to_string())?;
    ensure(classes.len() == 2, || format!("S7 has {} classes", classes.len()))?;
    ensure(classes.iter().all(verify_certificate), || "an S7 witness fails".into())?;
    let has = |g: &Graph| classes.iter().any(|w| are_isomorphic(w.candidate(), g));
    ensure(has(&wheel(7)) && has(&squared(7)), || "S7 classes are not {W7, C7^2}".into())?;
    let bow = make_bowtie().graph;
    let b = brute_force_preimages(&bow, &limits).map_err(|e| e.to_string())?;
    ensure(b.len() == 1, || format!("bowtie has {} classes", b.len()))?;
    ensure(are_isomorphic(b[0].candidate(), &make_double_triangle().graph.without_labels()), || {
        "bowtie preimage is not K4-e".into()
    })?;
    let labeled = count_labeled_preimages(&bow, &limits).map_err(|e| e.to_string())?;
    ensure(labeled == 2, || format!("bowtie has {labeled} labeled preimages"))?;
    Ok("S7 -> {W7, C7^2}; bowtie -> 1 class, 2 labelings".into())
}

fn c3_binary_enforced_sun() -> Check {
    let g = make_binary_enforced_sun(12).map_err(|e| e.to_string())?;
    let found = template_solve(&g, &SearchLimits::default()).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    let mut ok = found.len() == 2;
    for a in &found {
        let s = a.choices["S"];
        let subs: Vec<(&String, &SubGadget)> = g.sub_gadgets.iter().filter(|(n, _)| n.starts_with("E/")).collect();
        match s {
            Template::Wheel => {
                let mut hubs = BTreeSet::new();
                for (name, sub) in &subs {
                    let r = restrict_preimage_with_maps(&a.witness, &sub.vertices).map_err(|e| e.to_string())?;
                    let c = r.witness.candidate();
                    if !are_isomorphic(&c.clone().without_labels(), &wheel(7)) {
                        ok = false;
                        notes.push(format!("{name} is not a 7-wheel"));
                        continue;
                    }
                    let hub = c.vertices().find(|&v| c.degree(v) == 7).expect("wheel hub");
                    hubs.insert(r.candidate_back[hub]);
                }
                let w12 = sub_template(&g, a, "S") == Some(Template::Wheel);
                ok &= hubs.len() == 1 && w12;
                notes.push(format!("all-wheel: {} distinct hub(s), 12-sun wheel: {w12}", hubs.len()));
            }
            Template::SquaredCycle => {
                let all = g.sub_gadgets.keys().all(|n| sub_template(&g, a, n) == Some(Template::SquaredCycle));
                ok &= all;
                notes.push(format!("squared: every restriction squared: {all}"));
            }
        }
    }
    let summary = format!("{} assignment(s) [{}]", found.len(), notes.join("; "));
    if ok {
        Ok(summary)
    } else {
        Err(format!("expected 2 assignments, found {summary}"))
    }
}

fn c4_equal_not() -> Check {
    let s = attachable_sun7();
    let mut out = Vec::new();
    for (name, joined, want_iso) in [
        ("EQUAL", attach_equal(&s, EQUAL, &s, ROOT), true),
        ("NOT", attach_not(&s, NOT, &s, ROOT), false),
    ] {
        let g = joined.map_err(|e| e.to_string())?;
        let found = template_solve(&g, &SearchLimits::default()).map_err(|e| e.to_string())?;
        ensure(found.len() == 2, || format!("{name}: {} assignments", found.len()))?;
        for a in &found {
            ensure(verify_certificate(&a.witness), || format!("{name}: witness fails"))?;
            let part = |n: &str| {
                let sub = g.sub(n).unwrap();
                restrict_preimage(&a.witness, &sub.vertices).unwrap().candidate().clone().without_labels()
            };
            let iso = are_isomorphic(&part("A/S"), &part("B/S"));
            ensure(iso == want_iso, || format!("{name}: per-sun isomorphism is {iso}"))?;
        }
        out.push(format!("{name}: 2 assignments"));
    }
    Ok(out.join(", "))
}

fn c5_variable_cluster() -> Check {
    let g = make_variable_cluster(1).map_err(|e| e.to_string())?;
    let found = template_solve(&g, &SearchLimits::default()).map_err(|e| e.to_string())?;
    ensure(found.len() == 2, || format!("expected 2 assignments, found {}", found.len()))?;
    let mut starts = BTreeSet::new();
    for a in &found {
        let h0 = sub_template(&g, a, "H/0/S").ok_or("H/0 matches no template")?;
        starts.insert(h0);
        for j in 0..=2 {
            let want = if j % 2 == 0 { h0 } else { h0.flipped() };
            ensure(sub_template(&g, a, &format!("H/{j}/S")) == Some(want), || format!("H/{j} breaks parity"))?;
            if j > 0 {
                let v = sub_template(&g, a, &format!("V/{j}/S"));
                ensure(v == Some(want), || format!("V/{j} does not follow H/{j}"))?;
                let wheel12 = v == Some(Template::Wheel);
                let even = j % 2 == 0;
                ensure(wheel12 == (even == (h0 == Template::Wheel)), || format!("V/{j} 12-wheel parity"))?;
            }
        }
    }
    ensure(starts.len() == 2, || "both assignments start with the same template".into())?;
    Ok("2 assignments with alternating parity".into())
}

fn c6_appendix() -> Check {
    let s = make_clause_sun();
    let joined = join_clause(&s, &s, &s).map_err(|e| e.to_string())?;
    let shipped = load_appendix_clause_gadget().map_err(|e| e.to_string())?;
    ensure(joined.graph == shipped.graph, || "programmatic join differs from the shipped table".into())?;
    for wheels in 0..3 {
        let w = load_appendix_preimage(wheels).map_err(|e| e.to_string())?;
        ensure(verify_certificate(&w), || format!("{wheels}-wheel table fails"))?;
        let n = w.candidate().vertex_count();
        ensure(n == 27 + wheels, || format!("{wheels}-wheel table has {n} vertices"))?;
        let mut count = 0;
        for l in 1..=3 {
            let sub = shipped.sub(&format!("S/{l}/S")).unwrap();
            match restricted_template(&w, &sub.vertices, 12) {
                Some(Template::Wheel) => count += 1,
                Some(Template::SquaredCycle) => {}
                None => return Err(format!("{wheels}-wheel table: S/{l} matches no template")),
            }
        }
        ensure(count == wheels, || format!("table for {wheels} wheels restricts to {count}"))?;
    }
    Ok("join equals the shipped graph; tables verify with 27/28/29 vertices and 0/1/2 wheels".into())
}

fn c7_clause_patterns() -> Check {
    let g = load_appendix_clause_gadget().map_err(|e| e.to_string())?;
    let found = template_solve(&g, &SearchLimits::default()).map_err(|e| e.to_string())?;
    let mut patterns = BTreeSet::new();
    for a in &found {
        ensure(verify_certificate(&a.witness), || "clause witness fails".into())?;
        let p: Vec<Template> = (1..=3).map(|l| a.choices[&format!("S/{l}/S")]).collect();
        let restricted: Vec<Option<Template>> = (1..=3).map(|l| sub_template(&g, a, &format!("S/{l}/S"))).collect();
        ensure(restricted.iter().zip(&p).all(|(r, t)| *r == Some(*t)), || {
            format!("witness for {p:?} restricts to {restricted:?}")
        })?;
        patterns.insert(p);
    }
    let mut all = BTreeSet::new();
    for bits in 0..8 {
        let p: Vec<Template> = (0..3)
            .map(|i| if bits >> i & 1 == 1 { Template::Wheel } else { Template::SquaredCycle })
            .collect();
        if p.contains(&Template::SquaredCycle) {
            all.insert(p);
        }
    }
    ensure(patterns == all, || format!("feasible patterns {patterns:?}"))?;
    Ok("7 patterns feasible, all-wheel infeasible".into())
}

/// Independent truth-table oracle over signed DIMACS literals.
fn truth_table(n: usize, clauses: &[[i64; 3]]) -> Option<Vec<bool>> {
    (0..1u32 << n).map(|i| (0..n).map(|v| i >> (n - 1 - v) & 1 == 1).collect::<Vec<bool>>()).find(|x| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| x[l.unsigned_abs() as usize - 1] == (l > 0)))
    })
}

fn satisfies(clauses: &[[i64; 3]], x: &[bool]) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|&l| x[l.unsigned_abs() as usize - 1] == (l > 0)))
}

fn corpus() -> Vec<(usize, Vec<[i64; 3]>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7316);
    let mut out = Vec::new();
    let mut unsat = Vec::new();
    for s in 0..8i64 {
        let sign = |b: i64, v: i64| if s & b == 0 { v } else { -v };
        unsat.push([sign(1, 1), sign(2, 2), sign(4, 3)]);
    }
    out.push((3, unsat));
    while out.len() < 61 {
        let n = rng.gen_range(3..=4);
        let m = rng.gen_range(1..=3);
        let clauses = (0..m)
            .map(|_| {
                let mut vars: Vec<i64> = (1..=n as i64).collect();
                for i in (1..vars.len()).rev() {
                    vars.swap(i, rng.gen_range(0..=i));
                }
                [0, 1, 2].map(|i| if rng.gen_bool(0.5) { vars[i] } else { -vars[i] })
            })
            .collect();
        out.push((n, clauses));
    }
    out
}

fn c8_round_trip() -> Check {
    let formulas = corpus();
    let mut agree = 0;
    let mut problems = Vec::new();
    for (n, clauses) in &formulas {
        let phi = CnfFormula::from_ints(*n, clauses).map_err(|e| e.to_string())?;
        let truth = truth_table(*n, clauses);
        let d = decide(&phi, &DecideLimits::default()).map_err(|e| e.to_string())?;
        let ok = match (&d, &truth) {
            (Decision::Sat { assignment, witness }, Some(_)) => {
                let r = compile(&phi).map_err(|e| e.to_string())?;
                let back = assignment_from_witness(&r, witness).map(|a: Assignment| a.values().to_vec());
                witness.target() == &r.graph.graph
                    && verify_certificate(witness)
                    && satisfies(clauses, assignment.values())
                    && back.is_ok_and(|x| satisfies(clauses, &x))
            }
            (Decision::Unsat { .. }, None) => true,
            _ => false,
        };
        if ok {
            agree += 1;
        } else if problems.len() < 3 {
            let status = match &d {
                Decision::Unsat { rejected } => format!("UNSAT ({rejected} table-feasible assignments failed to glue)"),
                other => other.status().to_owned(),
            };
            problems.push(format!("{clauses:?}: decide {status}, truth table {}", if truth.is_some() { "SAT" } else { "UNSAT" }));
        }
    }
    let summary = format!("{agree}/{} formulas agree", formulas.len());
    if agree == formulas.len() && formulas.len() >= 50 {
        Ok(summary)
    } else {
        Err(format!("{summary}; e.g. {}", problems.join(" | ")))
    }
}

fn c9_unique_triangles() -> Check {
    let formulas = corpus();
    for (n, clauses) in &formulas {
        let phi = CnfFormula::from_ints(*n, clauses).map_err(|e| e.to_string())?;
        let r = compile(&phi).map_err(|e| e.to_string())?;
        ensure(r.graph.graph.every_edge_in_unique_triangle(), || format!("{clauses:?} breaks uniqueness"))?;
    }
    Ok(format!("{} compiled graphs", formulas.len()))
}

/// Isomorphism classes of graphs with at most `max_edges` edges and no
/// isolated vertices, grown one edge at a time.
fn small_graphs(max_edges: usize) -> Vec<Graph> {
    let mut layer: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let empty = Graph::empty(0);
    layer.insert(canonical_form(&empty).unwrap(), empty);
    let mut all: Vec<Graph> = layer.values().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeMap::new();
        for g in layer.values() {
            let n = g.vertex_count();
            let mut options = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        options.push((n, u, v));
                    }
                }
                options.push((n + 1, u, n));
            }
            options.push((n + 2, n, n + 1));
            for (size, u, v) in options {
                let mut e = g.edges();
                e.push((u, v));
                let h = Graph::new(size, e).unwrap();
                next.entry(canonical_form(&h).unwrap()).or_insert(h);
            }
        }
        all.extend(next.values().cloned());
        layer = next;
    }
    all
}

fn closure_holds(g: &Graph, subsets: &[Vec<usize>]) -> Result<(), String> {
    let w = triangular_line_graph(g).witness();
    for s in subsets {
        let r = restrict_preimage(&w, s).map_err(|e| format!("{:?} on {s:?}: {e}", g.edges()))?;
        ensure(verify_certificate(&r), || format!("restriction of {:?} to {s:?} fails", g.edges()))?;
    }
    Ok(())
}

fn c10_properties() -> Check {
    let graphs = small_graphs(5);
    let mut restrictions = 0;
    for g in &graphs {
        let h = triangular_line_graph(g).derived;
        let n = h.vertex_count();
        let subsets: Vec<Vec<usize>> = (0..1u32 << n)
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|s| is_triangle_induced(&h, s))
            .collect();
        restrictions += subsets.len();
        closure_holds(g, &subsets)?;
        let classes = brute_force_preimages(&h, &SearchLimits::default()).map_err(|e| e.to_string())?;
        let want = canonical_form(g).unwrap();
        ensure(
            classes.iter().any(|w| canonical_form(w.candidate()).unwrap() == want),
            || format!("oracle misses {:?}", g.edges()),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::new(n, edges).unwrap();
        let h = triangular_line_graph(&g).derived;
        let m = h.vertex_count();
        let mut subsets = vec![(0..m).collect::<Vec<_>>(), Vec::new()];
        for _ in 0..32 {
            let seed: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.3)).collect();
            subsets.push(triangle_closure(&h, &seed));
        }
        restrictions += subsets.len();
        closure_holds(&g, &subsets)?;
    }
    Ok(format!(
        "{} graphs with <= 5 edges, 200 random graphs, {restrictions} restrictions, oracle complete",
        graphs.len()
    ))
}

fn run(id: usize, name: &str, limit: Duration, f: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let took = start.elapsed();
    let outcome = match outcome {
        Ok(d) if took > limit => Err(format!("{d}; took longer than {limit:?}")),
        o => o,
    };
    match &outcome {
        Ok(d) => println!("criterion {id:>2} PASS  {name}: {d} [{took:.2?}]"),
        Err(e) => println!("criterion {id:>2} FAIL  {name}: {e} [{took:.2?}]"),
    }
    outcome.is_ok()
}

fn main() {
    let picked: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 10] = [
        ("operator correctness", Duration::from_secs(1), c1_operators),
        ("7-sun and bowtie preimages", Duration::from_secs(600), c2_seven_sun_oracle),
        ("binary-enforced 12-sun", Duration::from_secs(60), c3_binary_enforced_sun),
        ("EQUAL and NOT joins", Duration::from_secs(60), c4_equal_not),
        ("variable cluster", Duration::from_secs(300), c5_variable_cluster),
        ("appendix integrity", Duration::from_secs(60), c6_appendix),
        ("clause patterns", Duration::from_secs(600), c7_clause_patterns),
        ("reduction round trip", Duration::from_secs(1800), c8_round_trip),
        ("unique triangles in compiled graphs", Duration::from_secs(600), c9_unique_triangles),
        ("closure and oracle completeness", Duration::from_secs(600), c10_properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        if picked.is_empty() || picked.contains(&(i + 1)) {
            failed += usize::from(!run(i + 1, name, limit, f));
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
