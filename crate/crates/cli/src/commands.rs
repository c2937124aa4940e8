use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use trilin::gadget::*;
use trilin::io::{parse_any, to_dot, to_edge_list, GraphJson};
use trilin::sat::{
    compile_with, decide_with, parse_dimacs, witness_from_assignment, Assignment, CnfFormula, Decision,
    ReductionOutput,
};
use trilin::search::{brute_force_preimages, template_solve};
use trilin::tlg::{gallai_graph, line_graph, verify_certificate, WitnessJson};
use trilin::{triangular_line_graph, Graph, PreimageWitness, SearchError};

use crate::config::{Config, Format};
use crate::{Integrity, Operator, Status};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes the main output to `--out` or stdout.
pub fn emit(cfg: &Config, text: &str) -> Result<()> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cfg.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn graph_value(g: &Graph) -> Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}

fn witness_value(w: &PreimageWitness) -> Value {
    serde_json::to_value(WitnessJson::from(w)).expect("witness serializes")
}

/// Renders `json` in JSON mode and `graphs` otherwise.
fn render(cfg: &Config, json: Value, graphs: &[(&Graph, &str)]) -> String {
    match cfg.format {
        Format::Json => json.to_string(),
        Format::Edgelist => graphs.iter().map(|(g, _)| to_edge_list(g)).collect::<Vec<_>>().join("\n"),
        Format::Dot => graphs.iter().map(|(g, n)| to_dot(g, n)).collect::<Vec<_>>().join("\n"),
    }
}

pub fn read_cnf(path: &Path) -> Result<CnfFormula> {
    parse_dimacs(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn tlg_compute(cfg: &Config, path: &Path, op: Operator) -> Result<Status> {
    let g = parse_any(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let (name, derived, edges) = match op {
        Operator::T => {
            let r = triangular_line_graph(&g);
            ("T", r.derived, r.edges)
        }
        Operator::Line => {
            let r = line_graph(&g);
            ("L", r.derived, r.edges)
        }
        Operator::Gallai => ("Gamma", gallai_graph(&g), g.edges()),
    };
    log::info!("{name}(G) has {} vertices and {} edges", derived.vertex_count(), derived.edge_count());
    let json = json!({
        "operator": name,
        "graph": graph_value(&derived),
        "edges": edges.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
    });
    emit(cfg, &render(cfg, json, &[(&derived, name)]))?;
    Ok(Status::Success)
}

fn param(kind: &str, params: &[usize], i: usize, what: &str) -> Result<usize> {
    params
        .get(i)
        .copied()
        .with_context(|| format!("`gadget build {kind}` needs {what}"))
}

fn build(cfg: &Config, kind: &str, p: &[usize]) -> Result<GadgetBlueprint> {
    let k = |what| param(kind, p, 0, what);
    let opt_k = || p.get(1).copied().unwrap_or(cfg.enforced_k);
    Ok(match kind {
        "sun" => make_sun(k("k")?)?,
        "wheel" => make_wheel(k("k")?)?,
        "squared-cycle" => make_squared_cycle(k("k")?)?,
        "fan" => make_fan(k("k")?)?,
        "strip" => make_triangle_strip(k("k")?)?,
        "bowtie" => make_bowtie(),
        "double-triangle" => make_double_triangle(),
        "binary-enforced-sun" => make_binary_enforced_sun(k("k")?)?,
        "sun7" => attachable_sun7(),
        "wire" => make_wire(k("a length")?)?,
        "large-variable" => make_large_variable_gadget_with(p.first().copied().unwrap_or(cfg.enforced_k))?,
        "cluster" => make_variable_cluster_with(k("m")?, opt_k())?,
        "clause-sun" => make_clause_sun_with(p.first().copied().unwrap_or(CLAUSE_SUN_K))?,
        "clause" => {
            let s = make_clause_sun_with(p.first().copied().unwrap_or(CLAUSE_SUN_K))?;
            join_clause(&s, &s, &s)?
        }
        "appendix-clause" => match &cfg.appendix_dir {
            Some(dir) => load_appendix_clause_gadget_from(dir)?,
            None => load_appendix_clause_gadget()?,
        },
        other => bail!("unknown gadget kind `{other}`"),
    })
}

pub fn gadget_build(cfg: &Config, kind: &str, params: &[usize]) -> Result<Status> {
    let b = build(cfg, kind, params)?;
    let json: Value = serde_json::to_value(GadgetJson::from(&b)).expect("gadget serializes");
    emit(cfg, &render(cfg, json, &[(&b.graph, &b.kind)]))?;
    Ok(Status::Success)
}

pub fn preimage_solve(cfg: &Config, path: &Path, templates: bool) -> Result<Status> {
    let text = read(path)?;
    let limits = cfg.search_limits();
    if templates {
        let b = GadgetBlueprint::from_json(&text).with_context(|| format!("parsing blueprint {}", path.display()))?;
        let found = match template_solve(&b, &limits) {
            Err(SearchError::BudgetExhausted { nodes }) => return unknown(cfg, nodes),
            r => r?,
        };
        let status = if found.is_empty() { Status::Negative } else { Status::Success };
        let json = json!({
            "status": if found.is_empty() { "NOT_TLG" } else { "TLG" },
            "assignments": found.iter().map(|a| json!({
                "choices": a.choices,
                "witness": witness_value(&a.witness),
            })).collect::<Vec<_>>(),
        });
        let graphs: Vec<(&Graph, &str)> = found.iter().map(|a| (a.witness.candidate(), "preimage")).collect();
        emit(cfg, &render(cfg, json, &graphs))?;
        return Ok(status);
    }
    let g = parse_any(&text).with_context(|| format!("parsing {}", path.display()))?;
    let classes = match brute_force_preimages(&g, &limits) {
        Err(SearchError::BudgetExhausted { nodes }) => return unknown(cfg, nodes),
        r => r?,
    };
    log::info!("{} preimage class(es)", classes.len());
    let json = json!({
        "status": if classes.is_empty() { "NOT_TLG" } else { "TLG" },
        "classes": classes.len(),
        "preimages": classes.iter().map(witness_value).collect::<Vec<_>>(),
    });
    let graphs: Vec<(&Graph, &str)> = classes.iter().map(|w| (w.candidate(), "preimage")).collect();
    emit(cfg, &render(cfg, json, &graphs))?;
    Ok(if classes.is_empty() { Status::Negative } else { Status::Success })
}

fn unknown(cfg: &Config, nodes: u64) -> Result<Status> {
    emit(cfg, &json!({ "status": "UNKNOWN", "nodes": nodes }).to_string())?;
    Ok(Status::Unknown)
}

pub fn preimage_verify(cfg: &Config, path: &Path) -> Result<Status> {
    let w = PreimageWitness::from_json(&read(path)?).with_context(|| format!("parsing witness {}", path.display()))?;
    let ok = verify_certificate(&w);
    emit(cfg, if ok { "VALID" } else { "INVALID" })?;
    Ok(if ok { Status::Success } else { Status::Negative })
}

fn reduction_value(r: &ReductionOutput) -> Value {
    let legs: Vec<Vec<Value>> = r
        .legs
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| json!({ "literal": l.literal.to_dimacs(), "gadget": format!("x{}/V/{}", l.literal.var, l.index) }))
                .collect()
        })
        .collect();
    json!({
        "enforced_k": r.config.enforced_k,
        "vertices": r.graph.graph.vertex_count(),
        "edges": r.graph.graph.edge_count(),
        "legs": legs,
        "gadget": serde_json::to_value(GadgetJson::from(&r.graph)).expect("gadget serializes"),
    })
}

pub fn reduce(cfg: &Config, path: &Path) -> Result<Status> {
    let f = read_cnf(path)?;
    let r = compile_with(&f, &cfg.reduction())?;
    log::info!(
        "compiled {} variables, {} clauses into {} vertices",
        f.variable_count(),
        f.clauses().len(),
        r.graph.graph.vertex_count()
    );
    emit(cfg, &render(cfg, reduction_value(&r), &[(&r.graph.graph, "G_phi")]))?;
    Ok(Status::Success)
}

pub fn decide(cfg: &Config, path: &Path, witness_out: Option<&Path>) -> Result<Status> {
    let f = read_cnf(path)?;
    let d = decide_with(&f, &cfg.reduction(), &cfg.decide_limits())?;
    let (json, status) = match &d {
        Decision::Sat { assignment, witness } => {
            if !verify_certificate(witness) {
                return Err(Integrity("decide produced a certificate that does not verify".into()).into());
            }
            if let Some(p) = witness_out {
                fs::write(p, witness.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            let file = witness_out.map(|p| p.display().to_string());
            (
                json!({ "status": "SAT", "assignment": assignment.to_string(), "witness_file": file }),
                Status::Success,
            )
        }
        Decision::Unsat { rejected } => (
            json!({ "status": "UNSAT", "assignment": null, "witness_file": null, "rejected": rejected }),
            Status::Negative,
        ),
        Decision::Unknown { examined } => (
            json!({ "status": "UNKNOWN", "assignment": null, "witness_file": null, "examined": examined }),
            Status::Unknown,
        ),
    };
    emit(cfg, &json.to_string())?;
    Ok(status)
}

pub fn witness(cfg: &Config, path: &Path, assignment: &str) -> Result<Status> {
    let f = read_cnf(path)?;
    let x: Assignment = assignment.parse().map_err(anyhow::Error::msg).context("parsing the assignment")?;
    let r = compile_with(&f, &cfg.reduction())?;
    let w = witness_from_assignment(&r, &x)?;
    emit(cfg, &render(cfg, witness_value(&w), &[(w.candidate(), "preimage")]))?;
    Ok(Status::Success)
}
