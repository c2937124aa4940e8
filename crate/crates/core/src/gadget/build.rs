use super::compose::{BowtieJoin, Composer};
use super::{GadgetBlueprint, SubGadget};
use crate::error::GadgetError;
use crate::graph::{Graph, VertexLabel};

fn numbered(g: Graph) -> Graph {
    let n = g.vertex_count();
    g.with_labels((0..n).map(|v| (v, VertexLabel::new([v.to_string()]))))
        .expect("numeric labels are unique")
}

fn at_least(kind: &'static str, k: usize, min: usize) -> Result<(), GadgetError> {
    if k < min {
        Err(GadgetError::SizeOutOfRange { kind, k, min })
    } else {
        Ok(())
    }
}

pub(crate) fn wheel_graph(k: usize) -> Graph {
    let mut e: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    e.extend((0..k).map(|i| (i, k)));
    Graph::new(k + 1, e).expect("wheel")
}

pub(crate) fn squared_cycle_graph(k: usize) -> Graph {
    let e = (0..k).flat_map(|i| [(i, (i + 1) % k), (i, (i + 2) % k)]);
    Graph::new(k, e).expect("squared cycle")
}

/// Sun in local order: cycle vertex `i` at `2i`, apex of `(i, i+1)` at `2i+1`.
pub(crate) fn sun_graph(k: usize) -> Graph {
    let m = 2 * k;
    let e = (0..k).flat_map(|i| {
        let (c, a, next) = (2 * i, 2 * i + 1, (2 * i + 2) % m);
        [(c, next), (c, a), (a, next)]
    });
    Graph::new(m, e).expect("sun")
}

/// Two triangles `{0,1,2}` and `{0,3,4}`; role `bowtie` in role order.
pub fn make_bowtie() -> GadgetBlueprint {
    let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("bowtie");
    let mut b = GadgetBlueprint::new("bowtie", numbered(g));
    b.roles.insert("bowtie".into(), vec![0, 1, 2, 3, 4]);
    b
}

/// `K4 − e` with the missing edge `{0, 3}`.
pub fn make_double_triangle() -> GadgetBlueprint {
    let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("double triangle");
    GadgetBlueprint::new("double-triangle", numbered(g))
}

/// `k` triangles `(0, i, i+1)` around hub `0`.
pub fn make_fan(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("fan", k, 3)?;
    let e = (1..=k).flat_map(|i| [(0, i), (0, i + 1), (i, i + 1)]);
    let mut b = GadgetBlueprint::new("fan", numbered(Graph::new(k + 2, e)?));
    b.roles.insert("hub".into(), vec![0]);
    Ok(b)
}

/// `k` triangles `(i, i+1, i+2)` along a path.
pub fn make_triangle_strip(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("triangle strip", k, 3)?;
    let e = (0..k).flat_map(|i| [(i, i + 1), (i, i + 2), (i + 1, i + 2)]);
    Ok(GadgetBlueprint::new("strip", numbered(Graph::new(k + 2, e)?)))
}

/// Rim `0..k`, hub `k`.
pub fn make_wheel(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("wheel", k, 4)?;
    let mut b = GadgetBlueprint::new("wheel", numbered(wheel_graph(k)));
    b.roles.insert("hub".into(), vec![k]);
    b.roles.insert("rim".into(), (0..k).collect());
    Ok(b)
}

pub fn make_squared_cycle(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("squared cycle", k, 5)?;
    let mut b = GadgetBlueprint::new("squared-cycle", numbered(squared_cycle_graph(k)));
    b.roles.insert("cycle".into(), (0..k).collect());
    Ok(b)
}

/// A `k`-sun registered as sub-gadget `S`.
pub fn make_sun(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("sun", k, 4)?;
    let mut b = GadgetBlueprint::new("sun", numbered(sun_graph(k)));
    b.roles.insert("cycle".into(), (0..k).map(|i| 2 * i).collect());
    b.roles.insert("apex".into(), (0..k).map(|i| 2 * i + 1).collect());
    b.sub_gadgets.insert(
        "S".into(),
        SubGadget {
            k,
            vertices: (0..2 * k).collect(),
        },
    );
    Ok(b)
}

/// A `k`-sun with a three-triangle chain from `v_{i+4}` back to `v_i` for
/// every `i`, each closing a 7-sun registered as `E/i`.
///
/// Chain `i` adds `w1, w2` and apexes `a1, a2, a3` on the path
/// `v_{i+4} w1 w2 v_i`. The 7-sun `E/i` has cycle `v_i .. v_{i+4}, w1, w2`.
pub fn make_binary_enforced_sun(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("binary-enforced sun", k, 9)?;
    let base = make_sun(k)?;
    let cyc = |i: usize| 2 * (i % k);
    let apx = |i: usize| 2 * (i % k) + 1;
    let mut edges = base.graph.edges();
    let mut labels: Vec<(usize, VertexLabel)> = base.graph.labels().iter().map(|(&v, l)| (v, l.clone())).collect();
    let mut subs = base.sub_gadgets.clone();
    for i in 0..k {
        let o = 2 * k + 5 * i;
        let (w1, w2, a1, a2, a3) = (o, o + 1, o + 2, o + 3, o + 4);
        let (vi, vi4) = (cyc(i), cyc(i + 4));
        edges.extend([(vi4, w1), (vi4, a1), (w1, a1), (w1, w2), (w1, a2), (w2, a2), (w2, vi), (w2, a3), (vi, a3)]);
        for (v, name) in [(w1, "w1"), (w2, "w2"), (a1, "a1"), (a2, "a2"), (a3, "a3")] {
            labels.push((v, VertexLabel::new(["c".to_owned(), i.to_string(), name.to_owned()])));
        }
        let mut vertices = Vec::with_capacity(14);
        for j in 0..4 {
            vertices.extend([cyc(i + j), apx(i + j)]);
        }
        vertices.extend([vi4, a1, w1, a2, w2, a3]);
        subs.insert(format!("E/{i}"), SubGadget { k: 7, vertices });
    }
    let graph = Graph::new(7 * k, edges)?.with_labels(labels)?;
    Ok(GadgetBlueprint {
        kind: "binary-enforced-sun".into(),
        graph,
        roles: base.roles,
        sub_gadgets: subs,
    })
}

pub const ROOT: &str = "bowtie/ROOT";
pub const EQUAL: &str = "bowtie/EQUAL";
pub const NOT: &str = "bowtie/NOT";

/// Marks the bowties centred on cycle vertices 0, 2 and 4 as ROOT, EQUAL and
/// NOT. They use six of the seven sun triangles and share no triangle.
pub fn designate_attachments(sun7: &GadgetBlueprint) -> Result<GadgetBlueprint, GadgetError> {
    let sub = sun7.sub("S")?;
    if sun7.kind != "sun" || sub.k != 7 {
        return Err(GadgetError::WrongKind {
            expected: "7-sun".into(),
            found: format!("{} with k = {}", sun7.kind, sub.k),
        });
    }
    let mut b = sun7.clone();
    for (role, center) in [(ROOT, 0), (EQUAL, 2), (NOT, 4)] {
        b.roles.insert(role.into(), sub.bowtie(center).to_vec());
    }
    Ok(b)
}

pub fn attachable_sun7() -> GadgetBlueprint {
    designate_attachments(&make_sun(7).expect("k = 7")).expect("7-sun")
}

fn two_part_join(
    kind: &str,
    a: &GadgetBlueprint,
    bowtie_a: &str,
    b: &GadgetBlueprint,
    bowtie_b: &str,
    how: BowtieJoin,
) -> Result<GadgetBlueprint, GadgetError> {
    let (ba, bb) = (a.bowtie(bowtie_a)?, b.bowtie(bowtie_b)?);
    let mut c = Composer::new();
    let oa = c.add("A", a);
    let ob = c.add("B", b);
    c.join_bowties(ba.map(|v| v + oa), bb.map(|v| v + ob), how);
    c.finish(kind)
}

/// Glues `b` onto `a` at the named bowties with the EQUAL pattern. Parts are
/// prefixed `A` and `B`.
pub fn attach_equal(
    a: &GadgetBlueprint,
    bowtie_a: &str,
    b: &GadgetBlueprint,
    bowtie_b: &str,
) -> Result<GadgetBlueprint, GadgetError> {
    two_part_join("equal-join", a, bowtie_a, b, bowtie_b, BowtieJoin::Equal)
}

pub fn attach_not(
    a: &GadgetBlueprint,
    bowtie_a: &str,
    b: &GadgetBlueprint,
    bowtie_b: &str,
) -> Result<GadgetBlueprint, GadgetError> {
    two_part_join("not-join", a, bowtie_a, b, bowtie_b, BowtieJoin::Not)
}

fn add_wire(c: &mut Composer, prefix: &str, length: usize) -> Result<(), GadgetError> {
    let sun = attachable_sun7();
    for i in 0..=length {
        c.add(&format!("{prefix}H/{i}"), &sun);
        if i > 0 {
            let prev = bowtie_of(c, &format!("{prefix}H/{}/{NOT}", i - 1))?;
            let root = bowtie_of(c, &format!("{prefix}H/{i}/{ROOT}"))?;
            c.join_bowties(prev, root, BowtieJoin::Not);
        }
    }
    Ok(())
}

fn bowtie_of(c: &Composer, name: &str) -> Result<[usize; 5], GadgetError> {
    let r = c.role(name)?;
    r.try_into()
        .map_err(|_| GadgetError::MalformedRole(name.to_owned(), format!("{} vertices", r.len())))
}

/// 7-suns `H/0 .. H/length`, each attached at its ROOT to the NOT bowtie of
/// its predecessor.
pub fn make_wire(length: usize) -> Result<GadgetBlueprint, GadgetError> {
    let mut c = Composer::new();
    add_wire(&mut c, "", length)?;
    c.finish("wire")
}

/// Bowtie of the large variable gadget that faces the wire.
pub const ATTACH: &str = "bowtie/attach";
pub const CLAUSE_A: &str = "clause/a";
pub const CLAUSE_B: &str = "clause/b";

/// Size of the enforced sun in the large variable gadget and of each sun in
/// the shipped clause gadget.
pub const CLAUSE_SUN_K: usize = 12;

/// Clause triangles `a = (S0, S2, S1)` and `b` the same triangle shifted half
/// way round the cycle, `(S12, S14, S13)` for a 12-sun. The last vertex of
/// each is the apex.
fn clause_roles(sun: &SubGadget) -> [(String, Vec<usize>); 2] {
    let p = sun.k / 2;
    [
        (CLAUSE_A.into(), vec![sun.cycle(0), sun.cycle(1), sun.apex(0)]),
        (CLAUSE_B.into(), vec![sun.cycle(p), sun.cycle(p + 1), sun.apex(p)]),
    ]
}

/// A bare 12-sun carrying the clause triangle roles.
pub fn make_clause_sun() -> GadgetBlueprint {
    make_clause_sun_with(CLAUSE_SUN_K).expect("k = 12")
}

pub fn make_clause_sun_with(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("clause sun", k, 10)?;
    let mut b = make_sun(k)?;
    let roles = clause_roles(b.sub("S")?);
    b.roles.extend(roles);
    Ok(b)
}

/// Binary-enforced 12-sun whose 7-sun `E/0` plays `H'`. Its wire-facing
/// bowtie is centred on the chain vertex `w1` of `E/0`, so it avoids the
/// clause triangles on cycle vertices 0, 1, 6 and 7.
pub fn make_large_variable_gadget() -> GadgetBlueprint {
    make_large_variable_gadget_with(CLAUSE_SUN_K).expect("k = 12")
}

/// [`make_large_variable_gadget`] on a binary-enforced `k`-sun.
pub fn make_large_variable_gadget_with(k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("large variable gadget", k, 10)?;
    let mut b = make_binary_enforced_sun(k)?;
    b.kind = "large-variable".into();
    let h = b.sub("E/0")?.clone();
    b.roles.insert(ATTACH.into(), h.bowtie(5).to_vec());
    b.roles.insert("H'".into(), h.vertices.clone());
    let roles = clause_roles(b.sub("S")?);
    b.roles.extend(roles);
    Ok(b)
}

/// Value carried by `V/j` of a cluster: the variable itself for even `j`,
/// its negation for odd `j`.
pub fn stores_positive(j: usize) -> bool {
    j.is_multiple_of(2)
}

pub(crate) fn add_cluster(c: &mut Composer, prefix: &str, m: usize, k: usize) -> Result<(), GadgetError> {
    let large = make_large_variable_gadget_with(k)?;
    add_wire(c, prefix, 2 * m)?;
    for j in 1..=2 * m {
        c.add(&format!("{prefix}V/{j}"), &large);
        let wire = bowtie_of(c, &format!("{prefix}H/{j}/{EQUAL}"))?;
        let h = bowtie_of(c, &format!("{prefix}V/{j}/{ATTACH}"))?;
        c.join_bowties(wire, h, BowtieJoin::Equal);
    }
    Ok(())
}

/// Wire `H/0 .. H/2m` plus large variable gadgets `V/1 .. V/2m`, with `V/j`'s
/// `H'` EQUAL-joined to `H/j`.
pub fn make_variable_cluster(m: usize) -> Result<GadgetBlueprint, GadgetError> {
    make_variable_cluster_with(m, CLAUSE_SUN_K)
}

/// [`make_variable_cluster`] with binary-enforced `k`-suns in the large gadgets.
pub fn make_variable_cluster_with(m: usize, k: usize) -> Result<GadgetBlueprint, GadgetError> {
    at_least("variable cluster", m, 1)?;
    let mut c = Composer::new();
    add_cluster(&mut c, "", m, k)?;
    c.finish("variable-cluster")
}

/// Identifies the clause triangles of three gadgets cyclically: gadget `l`'s
/// `a` triangle onto gadget `l+1`'s `b` triangle as `a1=b1, a2=b3, a3=b2`.
/// Roles are looked up as `{name}/clause/a` and `{name}/clause/b`.
pub(crate) fn join_clause_in(c: &mut Composer, names: [&str; 3]) -> Result<(), GadgetError> {
    for l in 0..3 {
        let a = c.role(&format!("{}/{CLAUSE_A}", names[l]))?.to_vec();
        let b = c.role(&format!("{}/{CLAUSE_B}", names[(l + 1) % 3]))?.to_vec();
        if a.len() != 3 || b.len() != 3 {
            return Err(GadgetError::MalformedRole(names[l].to_owned(), "clause triangle".into()));
        }
        c.identify(a[0], b[0]);
        c.identify(a[1], b[2]);
        c.identify(a[2], b[1]);
    }
    Ok(())
}

/// Joins three gadgets carrying clause roles; parts are named `S/1 .. S/3`.
pub fn join_clause(
    g1: &GadgetBlueprint,
    g2: &GadgetBlueprint,
    g3: &GadgetBlueprint,
) -> Result<GadgetBlueprint, GadgetError> {
    for g in [g1, g2, g3] {
        for r in [CLAUSE_A, CLAUSE_B] {
            let t = g.role(r)?;
            let ok = t.len() == 3
                && g.graph.has_edge(t[0], t[1])
                && g.graph.has_edge(t[0], t[2])
                && g.graph.has_edge(t[1], t[2])
                && g.graph.degree(t[2]) == 2;
            if !ok {
                return Err(GadgetError::MalformedRole(r.into(), "not a triangle ending in a degree-2 vertex".into()));
            }
        }
    }
    let mut c = Composer::new();
    for (l, g) in [g1, g2, g3].into_iter().enumerate() {
        c.add(&format!("S/{}", l + 1), g);
    }
    join_clause_in(&mut c, ["S/1", "S/2", "S/3"])?;
    c.finish("clause")
}
