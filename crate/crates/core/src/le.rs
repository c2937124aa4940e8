//! Families of vertex subsets certifying membership in the image of `T`.
//!
//! A preimage yields one member per non-isolated candidate vertex: the
//! images of its incident edges. [`check_le_family`] tests the four
//! conditions of the characterization directly and never repairs its input.

use std::collections::BTreeSet;

use crate::error::WitnessError;
use crate::graph::Graph;
use crate::tlg::PreimageWitness;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LeFamily {
    pub members: Vec<BTreeSet<usize>>,
}

impl LeFamily {
    pub fn new<I, S>(members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        LeFamily {
            members: members.into_iter().map(|m| m.into_iter().collect()).collect(),
        }
    }

    /// Adds a singleton for every vertex of `h` covered exactly once, so that
    /// double coverage can hold.
    pub fn padded(mut self, h: &Graph) -> Self {
        let cover = coverage(h, &self.members);
        for v in h.vertices().filter(|&v| cover[v] == 1) {
            self.members.push(BTreeSet::from([v]));
        }
        self
    }
}

fn coverage(h: &Graph, members: &[BTreeSet<usize>]) -> Vec<usize> {
    let mut cover = vec![0; h.vertex_count()];
    for v in members.iter().flatten() {
        if let Some(c) = cover.get_mut(*v) {
            *c += 1;
        }
    }
    cover
}

/// One member per candidate vertex of positive degree, in candidate order.
pub fn le_family_from_preimage(w: &PreimageWitness) -> Result<LeFamily, WitnessError> {
    if !w.verify() {
        return Err(WitnessError::Invalid);
    }
    let g = w.candidate();
    let members = g
        .vertices()
        .filter(|&v| g.degree(v) > 0)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| w.image(u, v).expect("incident edge is mapped"))
                .collect()
        })
        .collect();
    Ok(LeFamily { members })
}

/// Which of the four conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeReport {
    pub vertices_twice: bool,
    pub edges_once: bool,
    pub small_intersections: bool,
    pub triples: bool,
}

impl LeReport {
    pub fn holds(&self) -> bool {
        self.vertices_twice && self.edges_once && self.small_intersections && self.triples
    }
}

pub fn check_le_family(h: &Graph, f: &LeFamily) -> bool {
    le_report(h, f).holds()
}

pub fn le_report(h: &Graph, f: &LeFamily) -> LeReport {
    let m = &f.members;
    let in_range = m.iter().flatten().all(|&v| v < h.vertex_count());
    let vertices_twice = in_range && coverage(h, m).iter().all(|&c| c == 2);
    let edges_once = in_range
        && h.edges().into_iter().all(|(u, v)| {
            m.iter().filter(|s| s.contains(&u) && s.contains(&v)).count() == 1
        });

    let k = m.len();
    let meet: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|i| (0..k).map(|j| m[i].intersection(&m[j]).copied().collect()).collect())
        .collect();
    let small_intersections = (0..k).all(|i| (0..k).all(|j| i == j || meet[i][j].len() <= 1));

    let mut triples = in_range;
    'outer: for c in 0..k {
        for a in (0..k).filter(|&a| a != c) {
            let [va] = meet[a][c][..] else { continue };
            for b in (0..k).filter(|&b| b != c && b != a) {
                let [vb] = meet[b][c][..] else { continue };
                if va != vb && h.has_edge(va, vb) != !meet[a][b].is_empty() {
                    triples = false;
                    break 'outer;
                }
            }
        }
    }
    LeReport {
        vertices_twice,
        edges_once,
        small_intersections,
        triples,
    }
}
