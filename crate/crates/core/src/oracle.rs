//! Exhaustive ground truth for every constraint combination.
//!
//! Path enumeration is a depth-first search over ascending neighbor ids, so
//! results are deterministic. Every entry point is guarded: work beyond the
//! configured limits is an error, never a silently partial answer.

use crate::constraints::{verify_solution, LengthConstraint, ProblemInstance, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphView, Path, VertexId};
use crate::path_engine;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    /// Total simple paths one oracle call may enumerate.
    pub max_paths: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 14,
            max_paths: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCaps {
    /// Stop after this many paths and flag the result as truncated.
    pub max_paths: u64,
    /// Only paths with at most this many edges are explored.
    pub max_len: Option<usize>,
}

impl Default for PathCaps {
    fn default() -> Self {
        PathCaps {
            max_paths: 1_000_000,
            max_len: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnumeration {
    pub paths: Vec<Path>,
    pub truncated: bool,
}

/// Calls `visit` on each simple `(s, t)`-path in DFS order until it returns
/// `true` (stop) or `max_paths` paths have been produced. Returns
/// `(paths produced, stopped by visitor, truncated)`.
fn for_each_path<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    caps: PathCaps,
    visit: &mut dyn FnMut(&[VertexId]) -> bool,
) -> (u64, bool, bool) {
    struct Walk<'v, 'g, G> {
        g: &'g G,
        t: VertexId,
        caps: PathCaps,
        on_path: Vec<bool>,
        stack: Vec<VertexId>,
        produced: u64,
        visit: &'v mut dyn FnMut(&[VertexId]) -> bool,
    }
    enum Flow {
        Continue,
        Stopped,
        Truncated,
    }
    impl<G: GraphView> Walk<'_, '_, G> {
        fn emit(&mut self) -> Flow {
            if self.produced >= self.caps.max_paths {
                return Flow::Truncated;
            }
            self.produced += 1;
            if (self.visit)(&self.stack) {
                Flow::Stopped
            } else {
                Flow::Continue
            }
        }

        fn go(&mut self, v: VertexId) -> Flow {
            if v == self.t {
                return self.emit();
            }
            if self.caps.max_len.is_some_and(|cap| self.stack.len() > cap) {
                return Flow::Continue;
            }
            let next: Vec<VertexId> = self
                .g
                .neighbors(v)
                .map(|(w, _)| w)
                .filter(|&w| !self.on_path[w])
                .collect();
            for w in next {
                self.on_path[w] = true;
                self.stack.push(w);
                let flow = self.go(w);
                self.stack.pop();
                self.on_path[w] = false;
                if !matches!(flow, Flow::Continue) {
                    return flow;
                }
            }
            Flow::Continue
        }
    }

    let n = g.vertex_count();
    if s >= n || t >= n {
        return (0, false, false);
    }
    let mut walk = Walk {
        g,
        t,
        caps,
        on_path: vec![false; n],
        stack: vec![s],
        produced: 0,
        visit,
    };
    walk.on_path[s] = true;
    let flow = walk.go(s);
    (
        walk.produced,
        matches!(flow, Flow::Stopped),
        matches!(flow, Flow::Truncated),
    )
}

fn path_from_walk<G: GraphView>(g: &G, vertices: &[VertexId]) -> Path {
    Path::new(g, vertices.to_vec()).expect("enumerated walks are simple paths")
}

/// All simple `(s, t)`-paths within `caps`, in DFS order.
pub fn enumerate_paths<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    caps: PathCaps,
) -> PathEnumeration {
    let mut paths = Vec::new();
    let (_, _, truncated) = for_each_path(g, s, t, caps, &mut |walk| {
        paths.push(path_from_walk(g, walk));
        false
    });
    PathEnumeration { paths, truncated }
}

/// Path budget shared by every enumeration inside one oracle call.
struct Budget {
    left: u64,
}

impl Budget {
    fn caps(&self, max_len: Option<usize>) -> PathCaps {
        PathCaps {
            max_paths: self.left,
            max_len,
        }
    }

    fn charge(&mut self, produced: u64, truncated: bool) -> Result<()> {
        self.left = self.left.saturating_sub(produced);
        if truncated {
            return Err(exhausted());
        }
        Ok(())
    }
}

fn exhausted() -> Error {
    Error::InstanceTooLargeForOracle("path enumeration exceeded its budget".into())
}

fn edge_mask_without(g: &Graph, p: &Path) -> Vec<bool> {
    let mut mask = vec![true; g.edge_id_bound()];
    for &e in p.edges() {
        mask[e] = false;
    }
    mask
}

/// First path in `g` meeting `c`, or none. Short and unbounded requests use
/// BFS; exact and long requests enumerate.
fn find_partner<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    c: LengthConstraint,
    budget: &mut Budget,
) -> Result<Option<Path>> {
    match c {
        LengthConstraint::AtMost(k) => Ok(path_engine::find_path_at_most(g, s, t, k)),
        LengthConstraint::Unbounded => Ok(path_engine::any_path(g, s, t)),
        LengthConstraint::Exactly(_) | LengthConstraint::AtLeast(_) => {
            let mut found = None;
            let max_len = match c {
                LengthConstraint::Exactly(k) => Some(k),
                _ => None,
            };
            let (produced, _, truncated) =
                for_each_path(g, s, t, budget.caps(max_len), &mut |walk| {
                    if c.satisfied_by(walk.len() - 1) {
                        found = Some(path_from_walk(g, walk));
                        true
                    } else {
                        false
                    }
                });
            budget.charge(produced, truncated)?;
            Ok(found)
        }
    }
}

/// Lower is enumerated first: bounded constraints prune the outer search.
fn outer_rank(c: LengthConstraint) -> (u8, usize) {
    match c {
        LengthConstraint::AtMost(k) | LengthConstraint::Exactly(k) => (0, k),
        LengthConstraint::AtLeast(_) => (1, 0),
        LengthConstraint::Unbounded => (2, 0),
    }
}

fn check_size(inst: &ProblemInstance, limits: OracleLimits) -> Result<()> {
    let n = inst.graph.vertex_count();
    if n > limits.max_vertices {
        return Err(Error::InstanceTooLargeForOracle(format!(
            "{n} vertices exceed the limit of {}",
            limits.max_vertices
        )));
    }
    Ok(())
}

/// Exact answer for any constraint combination, by enumerating the more
/// tightly constrained path and searching for its partner in the rest.
pub fn oracle_solve(inst: &ProblemInstance, limits: OracleLimits) -> Result<Option<Solution>> {
    check_size(inst, limits)?;
    let flip = outer_rank(inst.c2) < outer_rank(inst.c1);
    let (os, ot, oc, is, it, ic) = if flip {
        (inst.s2, inst.t2, inst.c2, inst.s1, inst.t1, inst.c1)
    } else {
        (inst.s1, inst.t1, inst.c1, inst.s2, inst.t2, inst.c2)
    };
    let g = &inst.graph;
    let mut budget = Budget {
        left: limits.max_paths,
    };
    let outer_cap = match oc {
        LengthConstraint::AtMost(k) | LengthConstraint::Exactly(k) => Some(k),
        _ => None,
    };
    let mut found: Option<(Path, Path)> = None;
    let mut failure = None;
    let (_, _, truncated) = for_each_path(g, os, ot, budget.caps(outer_cap), &mut |walk| {
        if budget.left == 0 {
            failure = Some(exhausted());
            return true;
        }
        budget.left -= 1;
        if !oc.satisfied_by(walk.len() - 1) {
            return false;
        }
        let outer = path_from_walk(g, walk);
        let mask = edge_mask_without(g, &outer);
        let rest = g.masked(&mask);
        match find_partner(&rest, is, it, ic, &mut budget) {
            Ok(Some(inner)) => {
                found = Some((outer, inner));
                true
            }
            Ok(None) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if truncated {
        return Err(exhausted());
    }
    let Some((outer, inner)) = found else {
        return Ok(None);
    };
    let sol = if flip {
        Solution {
            p1: inner,
            p2: outer,
        }
    } else {
        Solution {
            p1: outer,
            p2: inner,
        }
    };
    debug_assert!(verify_solution(inst, &sol.p1, &sol.p2).is_ok_and(|v| v.is_valid()));
    Ok(Some(sol))
}

/// Among the `(s2, t2)`-paths edge-disjoint from `p1` and meeting `c2`, one of
/// minimum length; ties go to the first in DFS order.
pub fn minimal_valid_partner(
    g: &Graph,
    p1: &Path,
    s2: VertexId,
    t2: VertexId,
    c2: LengthConstraint,
    limits: OracleLimits,
) -> Result<Option<Path>> {
    if g.vertex_count() > limits.max_vertices {
        return Err(Error::InstanceTooLargeForOracle(format!(
            "{} vertices exceed the limit of {}",
            g.vertex_count(),
            limits.max_vertices
        )));
    }
    let mask = edge_mask_without(g, p1);
    let rest = g.masked(&mask);
    let max_len = match c2 {
        LengthConstraint::AtMost(k) | LengthConstraint::Exactly(k) => Some(k),
        _ => None,
    };
    let mut best: Option<Vec<VertexId>> = None;
    let caps = PathCaps {
        max_paths: limits.max_paths,
        max_len,
    };
    let (_, _, truncated) = for_each_path(&rest, s2, t2, caps, &mut |walk| {
        if c2.satisfied_by(walk.len() - 1) && best.as_ref().is_none_or(|b| walk.len() < b.len()) {
            best = Some(walk.to_vec());
        }
        false
    });
    if truncated {
        return Err(Error::InstanceTooLargeForOracle(
            "partner enumeration exceeded its budget".into(),
        ));
    }
    Ok(best.map(|walk| path_from_walk(g, &walk)))
}
