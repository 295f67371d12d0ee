//! Instance transformers: identification composition of exact-path
//! instances, the exact-path to two-path reduction, and the OR-composition
//! gadget with its multi-level driver.

use std::collections::HashSet;
use std::fmt;

use crate::constraints::{LengthConstraint, ProblemInstance};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphView, VertexId};

/// Does `graph` contain an `(s, t)`-path with exactly `k` edges?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPathInstance {
    pub graph: Graph,
    pub s: VertexId,
    pub t: VertexId,
    pub k: usize,
}

impl ExactPathInstance {
    pub fn new(graph: Graph, s: VertexId, t: VertexId, k: usize) -> Result<ExactPathInstance> {
        let n = graph.vertex_count();
        if let Some(&vertex) = [s, t].iter().find(|&&v| v >= n) {
            return Err(Error::TerminalOutOfRange { vertex, n });
        }
        Ok(ExactPathInstance { graph, s, t, k })
    }
}

/// Merges every `s_i` into one vertex `0` and every `t_i` into vertex `1`;
/// the remaining vertices follow instance by instance in original order.
/// Parallel `s`-`t` edges collapse into one.
pub fn identify_compose(instances: &[ExactPathInstance]) -> Result<ExactPathInstance> {
    let first = instances.first().ok_or(Error::EmptyComposition)?;
    let k = first.k;
    if let Some(bad) = instances.iter().find(|inst| inst.k != k) {
        return Err(Error::ParameterMismatch(format!(
            "length {} differs from {k}",
            bad.k
        )));
    }
    if instances.iter().any(|inst| inst.s == inst.t) {
        return Err(Error::InvalidArgument(
            "identification needs distinct endpoints in every instance".into(),
        ));
    }
    let mut next = 2;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for inst in instances {
        let map: Vec<VertexId> = (0..inst.graph.vertex_count())
            .map(|v| {
                if v == inst.s {
                    0
                } else if v == inst.t {
                    1
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        for (_, u, v) in inst.graph.edges() {
            let (a, b) = (map[u], map[v]);
            if seen.insert((a.min(b), a.max(b))) {
                edges.push((a, b));
            }
        }
    }
    ExactPathInstance::new(Graph::from_edges(next, &edges)?, 0, 1, k)
}

/// Adds vertices `n` and `n + 1` joined by one edge as the second pair, under
/// constraints (exactly `k`, unbounded).
pub fn ppt_from_exact_path(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Result<ProblemInstance> {
    let n = g.vertex_count();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().map(|(_, u, v)| (u, v)).collect();
    edges.push((n, n + 1));
    let graph = Graph::from_edges(n + 2, &edges)?;
    ProblemInstance::new(
        graph,
        (s, t),
        (n, n + 1),
        LengthConstraint::Exactly(k),
        LengthConstraint::Unbounded,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    S1,
    T1,
    S2,
    T2,
}

/// Endpoints available to the gadget table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetNode {
    /// Fresh output terminals.
    NewS1,
    NewT1,
    NewS2,
    NewT2,
    /// Fresh connector vertices next to each input's first pair.
    PA,
    QA,
    PB,
    QB,
    Input(Side, Terminal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    /// A single edge.
    Short,
    /// A path of `k1 + 4` edges through fresh degree-2 vertices.
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLink {
    pub kind: LinkKind,
    pub from: GadgetNode,
    pub to: GadgetNode,
}

const fn short(from: GadgetNode, to: GadgetNode) -> GadgetLink {
    GadgetLink {
        kind: LinkKind::Short,
        from,
        to,
    }
}

const fn long(from: GadgetNode, to: GadgetNode) -> GadgetLink {
    GadgetLink {
        kind: LinkKind::Long,
        from,
        to,
    }
}

use GadgetNode::*;

/// The wiring used by [`or_compose_pair`].
///
/// With `L = k1 + 4`, a new first path of length at most `L` can only be
/// `s'1 - p_X - s^X_1 ~ t^X_1 - q_X - t'1` for one side X, using all four
/// short edges of that side. If X = a, the second path must leave `s'2` along
/// the long path to `s^a_2` (the one to `p_a` dead-ends), cross input a to
/// `t^a_2`, and reach `t'2` at cost at least `2L + 1` more; if X = b it must
/// arrive over the long path from `t^b_2` (the one from `q_b` dead-ends),
/// having entered input b at `s^b_2` after paying at least `2L + 1`. Either
/// way the segment inside the input is a second path of length at most `k2`,
/// edge-disjoint from the first. Conversely both routes cost exactly
/// `3L + 1` outside the input.
pub const OR_GADGET: [GadgetLink; 14] = [
    short(NewS1, PA),
    short(PA, Input(Side::A, Terminal::S1)),
    short(Input(Side::A, Terminal::T1), QA),
    short(QA, NewT1),
    short(NewS1, PB),
    short(PB, Input(Side::B, Terminal::S1)),
    short(Input(Side::B, Terminal::T1), QB),
    short(QB, NewT1),
    long(NewS2, Input(Side::A, Terminal::S2)),
    long(Input(Side::A, Terminal::T2), NewT1),
    long(NewS1, Input(Side::B, Terminal::S2)),
    long(Input(Side::B, Terminal::T2), NewT2),
    long(NewS2, PA),
    long(QB, NewT2),
];

/// Vertex and edge counts of one pairwise composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetAccounting {
    pub input_vertices: usize,
    pub input_edges: usize,
    /// Fresh terminals and connectors.
    pub gadget_vertices: usize,
    pub long_interior_vertices: usize,
    pub short_edges: usize,
    pub long_edges: usize,
}

impl GadgetAccounting {
    pub fn vertices(&self) -> usize {
        self.input_vertices + self.gadget_vertices + self.long_interior_vertices
    }

    pub fn edges(&self) -> usize {
        self.input_edges + self.short_edges + self.long_edges
    }
}

/// Output parameters of one composition level.
pub fn or_parameters(k1: usize, k2: usize) -> (usize, usize) {
    (k1 + 4, k2 + 3 * (k1 + 4) + 1)
}

fn shared_parameters(
    a: &ProblemInstance,
    b: &ProblemInstance,
) -> Result<(usize, LengthConstraint)> {
    if a.c1 != b.c1 || a.c2 != b.c2 {
        return Err(Error::ParameterMismatch(format!(
            "constraints ({}, {}) and ({}, {}) differ",
            a.c1, a.c2, b.c1, b.c2
        )));
    }
    match (a.c1, a.c2) {
        (
            LengthConstraint::AtMost(k1),
            c2 @ (LengthConstraint::AtMost(_) | LengthConstraint::Unbounded),
        ) => Ok((k1, c2)),
        (c1, c2) => Err(Error::ParameterMismatch(format!(
            "OR-composition needs (le k1, le k2) or (le k1, inf), got ({c1}, {c2})"
        ))),
    }
}

/// [`or_compose_pair`] with an explicit wiring table.
pub fn or_compose_with(
    table: &[GadgetLink],
    a: &ProblemInstance,
    b: &ProblemInstance,
) -> Result<(ProblemInstance, GadgetAccounting)> {
    let (k1, c2) = shared_parameters(a, b)?;
    let (na, nb) = (a.graph.vertex_count(), b.graph.vertex_count());
    let base = na + nb;
    let fresh = [NewS1, NewT1, NewS2, NewT2, PA, QA, PB, QB];
    let vertex_of = |node: GadgetNode| -> VertexId {
        match node {
            Input(side, term) => {
                let (inst, offset) = match side {
                    Side::A => (a, 0),
                    Side::B => (b, na),
                };
                offset
                    + match term {
                        Terminal::S1 => inst.s1,
                        Terminal::T1 => inst.t1,
                        Terminal::S2 => inst.s2,
                        Terminal::T2 => inst.t2,
                    }
            }
            other => base + fresh.iter().position(|&f| f == other).expect("fresh node"),
        }
    };
    let mut edges: Vec<(VertexId, VertexId)> = a.graph.edges().map(|(_, u, v)| (u, v)).collect();
    edges.extend(b.graph.edges().map(|(_, u, v)| (u + na, v + na)));
    let long_len = k1 + 4;
    let mut next = base + fresh.len();
    let mut acct = GadgetAccounting {
        input_vertices: base,
        input_edges: edges.len(),
        gadget_vertices: fresh.len(),
        long_interior_vertices: 0,
        short_edges: 0,
        long_edges: 0,
    };
    for link in table {
        let (u, v) = (vertex_of(link.from), vertex_of(link.to));
        match link.kind {
            LinkKind::Short => {
                edges.push((u, v));
                acct.short_edges += 1;
            }
            LinkKind::Long => {
                let mut prev = u;
                for _ in 1..long_len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, v));
                acct.long_interior_vertices += long_len - 1;
                acct.long_edges += long_len;
            }
        }
    }
    let graph = Graph::from_edges(next, &edges)?;
    let (k1_out, k2_out) = or_parameters(k1, c2.bound().unwrap_or(0));
    let c2_out = c2.with_bound(k2_out);
    let inst = ProblemInstance::new(
        graph,
        (vertex_of(NewS1), vertex_of(NewT1)),
        (vertex_of(NewS2), vertex_of(NewT2)),
        LengthConstraint::AtMost(k1_out),
        c2_out,
    )?;
    Ok((inst, acct))
}

/// Yes iff `a` or `b` is yes. Both inputs need the same constraints, either
/// (at most k1, at most k2) or (at most k1, unbounded).
pub fn or_compose_pair(a: &ProblemInstance, b: &ProblemInstance) -> Result<ProblemInstance> {
    Ok(or_compose_with(&OR_GADGET, a, b)?.0)
}

/// Three-vertex path with both pairs on its endpoints: no pair of
/// edge-disjoint paths exists under any constraints.
pub fn make_no_instance(c1: LengthConstraint, c2: LengthConstraint) -> ProblemInstance {
    let graph = Graph::from_edges(3, &[(0, 1), (1, 2)]).expect("static graph");
    ProblemInstance::new(graph, (0, 2), (0, 2), c1, c2).expect("static terminals")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub level: usize,
    pub instances: usize,
    pub k1: usize,
    pub k2: usize,
    /// Accounting of each pairwise composition at this level.
    pub gadgets: Vec<GadgetAccounting>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub k1: usize,
    pub k2: usize,
    pub w: usize,
    pub padded_w: usize,
    pub d: usize,
    pub k1_out: usize,
    pub k2_out: usize,
    pub levels: Vec<LevelReport>,
    pub vertices: usize,
    pub edges: usize,
}

/// Closed form after `d` levels: `(k1 + 4d, k2 + (3k1 + 1)d + 6d(d + 1))`.
pub fn composed_parameters(k1: usize, k2: usize, d: usize) -> (usize, usize) {
    (k1 + 4 * d, k2 + (3 * k1 + 1) * d + 6 * d * (d + 1))
}

impl CompositionReport {
    /// `key=value` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "k1={}\nk2={}\nw={}\npadded_w={}\nd={}\nk1_out={}\nk2_out={}\nvertices={}\nedges={}\n",
            self.k1,
            self.k2,
            self.w,
            self.padded_w,
            self.d,
            self.k1_out,
            self.k2_out,
            self.vertices,
            self.edges
        );
        for level in &self.levels {
            let short: usize = level.gadgets.iter().map(|g| g.short_edges).sum();
            let long: usize = level.gadgets.iter().map(|g| g.long_edges).sum();
            let interior: usize = level.gadgets.iter().map(|g| g.long_interior_vertices).sum();
            out.push_str(&format!(
                "level{l}.instances={}\nlevel{l}.k1={}\nlevel{l}.k2={}\nlevel{l}.short_edges={short}\nlevel{l}.long_edges={long}\nlevel{l}.long_interior_vertices={interior}\n",
                level.instances,
                level.k1,
                level.k2,
                l = level.level,
            ));
        }
        out
    }
}

impl fmt::Display for CompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Pads to a power of two with [`make_no_instance`] (when `pad` is set) and
/// composes pairs level by level. Without padding, an odd instance out is
/// carried to the next level unchanged, which breaks the uniform parameter
/// growth, so that is rejected.
pub fn or_compose_many(
    instances: &[ProblemInstance],
    pad: bool,
) -> Result<(ProblemInstance, CompositionReport)> {
    let first = instances.first().ok_or(Error::EmptyComposition)?;
    let (c1, c2) = (first.c1, first.c2);
    for inst in instances {
        if (inst.c1, inst.c2) != (c1, c2) {
            return Err(Error::ParameterMismatch(format!(
                "constraints ({}, {}) and ({c1}, {c2}) differ",
                inst.c1, inst.c2
            )));
        }
    }
    let w = instances.len();
    let padded_w = w.next_power_of_two();
    if padded_w != w && !pad {
        return Err(Error::InvalidArgument(format!(
            "{w} instances is not a power of two; enable padding"
        )));
    }
    let k1 = c1.bound().unwrap_or(0);
    let k2 = c2.bound().unwrap_or(0);
    let mut level: Vec<ProblemInstance> = instances.to_vec();
    level.resize_with(padded_w, || make_no_instance(c1, c2));
    let mut levels = Vec::new();
    let mut depth = 0;
    while level.len() > 1 {
        depth += 1;
        let mut next = Vec::with_capacity(level.len() / 2);
        let mut gadgets = Vec::with_capacity(level.len() / 2);
        for pair in level.chunks(2) {
            let (inst, acct) = or_compose_with(&OR_GADGET, &pair[0], &pair[1])?;
            next.push(inst);
            gadgets.push(acct);
        }
        let (lk1, lk2) = (
            next[0].c1.bound().unwrap_or(0),
            next[0].c2.bound().unwrap_or(0),
        );
        levels.push(LevelReport {
            level: depth,
            instances: next.len(),
            k1: lk1,
            k2: lk2,
            gadgets,
        });
        level = next;
    }
    let out = level.pop().expect("one instance remains");
    let (k1_out, k2_out) = (out.c1.bound().unwrap_or(0), out.c2.bound().unwrap_or(0));
    let report = CompositionReport {
        k1,
        k2,
        w,
        padded_w,
        d: depth,
        k1_out,
        k2_out,
        levels,
        vertices: out.graph.vertex_count(),
        edges: out.graph.edge_count(),
    };
    Ok((out, report))
}
