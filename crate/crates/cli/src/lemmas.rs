//! `check lemmas`: structural claims about the operator and the gadgets,
//! each re-derived under the configured limits.

use std::collections::BTreeSet;

use anyhow::Result;

use trilin::gadget::*;
use trilin::iso::are_isomorphic;
use trilin::sat::{
    assignment_from_witness, compile_with, decide_with, template_of, Assignment, CnfFormula, Decision,
};
use trilin::search::{brute_force_preimages, count_labeled_preimages, template_solve, TemplateAssignment};
use trilin::tlg::{restrict_preimage_with_maps, triangular_line_graph, verify_certificate};
use trilin::{GadgetError, Graph, SatError, SearchError};

use crate::commands::emit;
use crate::config::Config;
use crate::{Integrity, Status};

enum Verdict {
    Pass(String),
    Fail(String),
    Unknown(String),
}

type Check = fn(&Config) -> Result<Verdict>;

fn pass_if(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn solve(cfg: &Config, g: &GadgetBlueprint) -> Result<Vec<TemplateAssignment>> {
    Ok(template_solve(g, &cfg.search_limits())?)
}

fn templates(g: &GadgetBlueprint, a: &TemplateAssignment, suns: &[String]) -> Result<Vec<Template>> {
    suns.iter()
        .map(|s| Ok(template_of(g, &a.witness, s)?))
        .collect()
}

fn operators(_: &Config) -> Result<Verdict> {
    let plain = |b: GadgetBlueprint| b.graph.without_labels();
    let bowtie = are_isomorphic(
        &triangular_line_graph(&make_double_triangle().graph).derived,
        &plain(make_bowtie()),
    );
    let mut bad = Vec::new();
    for k in 7..=12 {
        let sun = plain(make_sun(k)?);
        for t in Template::BOTH {
            if !are_isomorphic(&triangular_line_graph(&t.graph(k)).derived, &sun) {
                bad.push(format!("{t} {k}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        "T(W_k) and T(C_k^2) are S_k for k = 7..12".to_owned()
    } else {
        format!("T(template) differs from the sun for {bad:?}")
    };
    Ok(pass_if(bowtie && bad.is_empty(), format!("T(K4-e) is a bowtie: {bowtie}; {detail}")))
}

fn seven_sun(cfg: &Config) -> Result<Verdict> {
    let limits = cfg.search_limits();
    let s7 = brute_force_preimages(&make_sun(7)?.graph, &limits)?;
    let is = |g: &Graph| s7.iter().any(|w| are_isomorphic(w.candidate(), g));
    let both = is(&Template::Wheel.graph(7)) && is(&Template::SquaredCycle.graph(7));
    let bow = make_bowtie().graph;
    let classes = brute_force_preimages(&bow, &limits)?.len();
    let labeled = count_labeled_preimages(&bow, &limits)?;
    Ok(pass_if(
        s7.len() == 2 && both && classes == 1 && labeled == 2,
        format!("S7: {} classes (W7 and C7^2: {both}); bowtie: {classes} class, {labeled} labelings", s7.len()),
    ))
}

fn binary_enforced(cfg: &Config) -> Result<Verdict> {
    let k = cfg.enforced_k;
    let g = make_binary_enforced_sun(k)?;
    let found = solve(cfg, &g)?;
    let mut ok = found.len() == 2;
    for a in &found {
        if a.choices["S"] == Template::Wheel {
            let mut hubs = BTreeSet::new();
            for (name, sub) in g.sub_gadgets.iter().filter(|(n, _)| n.starts_with("E/")) {
                let r = restrict_preimage_with_maps(&a.witness, &sub.vertices)?;
                let c = r.witness.candidate();
                match c.vertices().find(|&v| c.degree(v) == 7) {
                    Some(hub) => {
                        hubs.insert(r.candidate_back[hub]);
                    }
                    None => {
                        return Ok(Verdict::Fail(format!("{name} has no hub in the all-wheel preimage")));
                    }
                }
            }
            ok &= hubs.len() == 1;
        } else {
            let all: Vec<String> = g.sub_gadgets.keys().cloned().collect();
            ok &= templates(&g, a, &all)?.iter().all(|&t| t == Template::SquaredCycle);
        }
    }
    Ok(pass_if(ok, format!("k = {k}: {} assignment(s)", found.len())))
}

fn equal_not(cfg: &Config) -> Result<Verdict> {
    let s = attachable_sun7();
    let suns = ["A/S".to_owned(), "B/S".to_owned()];
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, g, same) in [
        ("EQUAL", attach_equal(&s, EQUAL, &s, ROOT)?, true),
        ("NOT", attach_not(&s, NOT, &s, ROOT)?, false),
    ] {
        let found = solve(cfg, &g)?;
        ok &= found.len() == 2;
        for a in &found {
            let t = templates(&g, a, &suns)?;
            ok &= (t[0] == t[1]) == same && verify_certificate(&a.witness);
        }
        detail.push(format!("{name}: {}", found.len()));
    }
    Ok(pass_if(ok, format!("assignments {}", detail.join(", "))))
}

fn cluster(cfg: &Config) -> Result<Verdict> {
    let k = cfg.enforced_k;
    let g = make_variable_cluster_with(1, k)?;
    let found = solve(cfg, &g)?;
    let names: Vec<String> = ["H/0/S", "H/1/S", "H/2/S", "V/1/S", "V/2/S"].map(String::from).to_vec();
    let mut ok = found.len() == 2;
    for a in &found {
        let t = templates(&g, a, &names)?;
        ok &= t[1] == t[0].flipped() && t[2] == t[0] && t[3] == t[1] && t[4] == t[2];
    }
    Ok(pass_if(ok, format!("k = {k}, m = 1: {} assignment(s)", found.len())))
}

fn appendix_gadget(cfg: &Config) -> Result<GadgetBlueprint> {
    Ok(match &cfg.appendix_dir {
        Some(dir) => load_appendix_clause_gadget_from(dir)?,
        None => load_appendix_clause_gadget()?,
    })
}

fn appendix(cfg: &Config) -> Result<Verdict> {
    let shipped = appendix_gadget(cfg)?;
    let s = make_clause_sun();
    let same = join_clause(&s, &s, &s)?.graph == shipped.graph;
    let suns: Vec<String> = trilin::sat::SUN_NAMES.map(String::from).to_vec();
    let mut notes = Vec::new();
    let mut ok = same;
    for wheels in 0..3 {
        let w = match &cfg.appendix_dir {
            Some(dir) => load_appendix_preimage_from(dir, wheels)?,
            None => load_appendix_preimage(wheels)?,
        };
        let a = TemplateAssignment {
            choices: Default::default(),
            witness: w,
        };
        let t = templates(&shipped, &a, &suns)?;
        let count = t.iter().filter(|&&t| t == Template::Wheel).count();
        let n = a.witness.candidate().vertex_count();
        ok &= verify_certificate(&a.witness) && count == wheels && n == 27 + wheels;
        notes.push(format!("{wheels}: {n} vertices"));
    }
    Ok(pass_if(ok, format!("join matches: {same}; {}", notes.join(", "))))
}

fn clause_patterns(cfg: &Config) -> Result<Verdict> {
    let g = appendix_gadget(cfg)?;
    let suns: Vec<String> = trilin::sat::SUN_NAMES.map(String::from).to_vec();
    let mut patterns = BTreeSet::new();
    for a in solve(cfg, &g)? {
        if !verify_certificate(&a.witness) {
            return Ok(Verdict::Fail("a clause witness does not verify".into()));
        }
        patterns.insert(templates(&g, &a, &suns)?);
    }
    let all_wheel = patterns.contains(&vec![Template::Wheel; 3]);
    Ok(pass_if(
        patterns.len() == 7 && !all_wheel,
        format!("{} feasible patterns, all-wheel feasible: {all_wheel}", patterns.len()),
    ))
}

const CORPUS: &[(usize, &[[i64; 3]])] = &[
    (3, &[[1, 2, 3]]),
    (3, &[[-1, 2, -3], [1, -2, 3]]),
    (4, &[[1, -2, 4], [-1, 3, -4], [2, 3, 4]]),
    (4, &[[-1, -2, -3], [1, 2, -4]]),
    (
        3,
        &[
            [1, 2, 3],
            [1, 2, -3],
            [1, -2, 3],
            [1, -2, -3],
            [-1, 2, 3],
            [-1, 2, -3],
            [-1, -2, 3],
            [-1, -2, -3],
        ],
    ),
];

fn truth(f: &CnfFormula) -> bool {
    let n = f.variable_count();
    (0..1u64 << n).any(|i| f.is_satisfied_by(&Assignment::from_index(i, n)))
}

fn round_trip(cfg: &Config) -> Result<Verdict> {
    let mut agree = 0;
    for &(n, clauses) in CORPUS {
        let f = CnfFormula::from_ints(n, clauses)?;
        let ok = match decide_with(&f, &cfg.reduction(), &cfg.decide_limits())? {
            Decision::Sat { assignment, witness } => {
                let r = compile_with(&f, &cfg.reduction())?;
                let back = assignment_from_witness(&r, &witness)?;
                truth(&f) && verify_certificate(&witness) && f.is_satisfied_by(&assignment) && f.is_satisfied_by(&back)
            }
            Decision::Unsat { .. } => !truth(&f),
            Decision::Unknown { examined } => {
                return Ok(Verdict::Unknown(format!("budget stopped decide after {examined} assignments")))
            }
        };
        agree += usize::from(ok);
    }
    Ok(pass_if(
        agree == CORPUS.len(),
        format!("k = {}: {agree}/{} formulas agree with truth tables", cfg.enforced_k, CORPUS.len()),
    ))
}

fn unique_triangles(cfg: &Config) -> Result<Verdict> {
    let mut ok = true;
    for &(n, clauses) in CORPUS {
        let r = compile_with(&CnfFormula::from_ints(n, clauses)?, &cfg.reduction())?;
        ok &= r.graph.graph.every_edge_in_unique_triangle();
    }
    Ok(pass_if(ok, format!("{} compiled graphs", CORPUS.len())))
}

const CHECKS: [(&str, Check); 9] = [
    ("operators", operators),
    ("seven-sun", seven_sun),
    ("binary-enforced-sun", binary_enforced),
    ("equal-not", equal_not),
    ("variable-cluster", cluster),
    ("appendix", appendix),
    ("clause-patterns", clause_patterns),
    ("round-trip", round_trip),
    ("unique-triangles", unique_triangles),
];

fn budget_hit(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<SearchError>(), Some(SearchError::BudgetExhausted { .. }))
            || matches!(c.downcast_ref::<SatError>(), Some(SatError::Search(SearchError::BudgetExhausted { .. })))
    })
}

fn integrity_hit(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<GadgetError>(), Some(GadgetError::Integrity(_)))
            || matches!(c.downcast_ref::<SatError>(), Some(SatError::Gadget(GadgetError::Integrity(_))))
    })
}

/// Exit status: 0 if every check passes, 3 if some only ran out of budget,
/// 4 if any failed.
pub fn run(cfg: &Config) -> Result<Status> {
    let mut lines = Vec::new();
    let (mut failed, mut unknown, mut integrity) = (0, 0, false);
    for (name, check) in CHECKS {
        let started = std::time::Instant::now();
        let verdict = check(cfg).unwrap_or_else(|e| {
            if budget_hit(&e) {
                Verdict::Unknown(format!("{e:#}"))
            } else {
                integrity |= integrity_hit(&e);
                Verdict::Fail(format!("error: {e:#}"))
            }
        });
        let took = started.elapsed();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Unknown(d) => {
                unknown += 1;
                ("UNKNOWN", d)
            }
        };
        log::info!("{name}: {tag} in {took:.2?}");
        lines.push(format!("{tag:<7} {name}: {detail}"));
    }
    lines.push(format!(
        "{} passed, {failed} failed, {unknown} unknown",
        CHECKS.len() - failed - unknown
    ));
    emit(cfg, &lines.join("\n"))?;
    if integrity {
        return Err(Integrity("appendix data failed its integrity check".into()).into());
    }
    Ok(match (failed, unknown) {
        (0, 0) => Status::Success,
        (0, _) => Status::Unknown,
        _ => return Err(Integrity(format!("{failed} check(s) failed")).into()),
    })
}
