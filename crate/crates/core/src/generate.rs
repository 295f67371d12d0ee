//! Seeded instance generators: uniform random graphs and planted instances
//! that carry a known solution.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::constraints::{verify_solution, CaseKind, LengthConstraint, ProblemInstance, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};
use crate::rng;

const GEN_RANDOM: u64 = 0x4752_4e44;
const GEN_PLANTED: u64 = 0x504c_4e54;

/// How [`gen_random`] places the terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalRule {
    /// Two independent pairs of distinct vertices.
    Distinct,
    /// Both pairs on the same two distinct vertices.
    Coincident,
    /// Four distinct vertices `s1, s2, t1, t2` joined in that cyclic order by
    /// four of the `m` edges, so the pairs interleave around a cycle.
    CrossingCycle,
}

impl std::str::FromStr for TerminalRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "distinct" => Ok(TerminalRule::Distinct),
            "coincident" => Ok(TerminalRule::Coincident),
            "crossing-cycle" => Ok(TerminalRule::CrossingCycle),
            other => Err(format!(
                "unknown terminal rule {other:?} (expected distinct, coincident or crossing-cycle)"
            )),
        }
    }
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// The `i`-th pair `(u, v)`, `u < v`, in row-major order.
fn pair_at(n: usize, i: u64) -> (VertexId, VertexId) {
    let n64 = n as u64;
    // first index of row u
    let row_start = |u: u64| u * (2 * n64 - u - 1) / 2;
    // invariant: row_start(lo) <= i < row_start(hi)
    let (mut lo, mut hi) = (0u64, n64 - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if row_start(mid) <= i {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = lo;
    let v = u + 1 + (i - row_start(u));
    (u as VertexId, v as VertexId)
}

fn pair_index(n: usize, u: VertexId, v: VertexId) -> u64 {
    let (u, v) = (u.min(v) as u64, u.max(v) as u64);
    u * (2 * n as u64 - u - 1) / 2 + (v - u - 1)
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (VertexId, VertexId) {
    let picked = index::sample(rng, n, 2);
    (picked.index(0), picked.index(1))
}

/// A uniform simple graph with `m` edges and terminals placed by `rule`.
pub fn gen_random(
    n: usize,
    m: usize,
    rule: TerminalRule,
    c1: LengthConstraint,
    c2: LengthConstraint,
    seed: u64,
) -> Result<ProblemInstance> {
    let max = pair_count(n);
    if m as u64 > max {
        return Err(Error::InfeasibleEdgeCount {
            n,
            m,
            max: max as usize,
        });
    }
    let needed = if rule == TerminalRule::CrossingCycle {
        4
    } else {
        2
    };
    if n < needed {
        return Err(Error::InvalidArgument(format!(
            "terminal rule needs at least {needed} vertices"
        )));
    }
    let mut rng = rng::stream(seed, GEN_RANDOM);
    let (s1, t1, s2, t2, fixed) = match rule {
        TerminalRule::Distinct => {
            let (s1, t1) = distinct_pair(&mut rng, n);
            let (s2, t2) = distinct_pair(&mut rng, n);
            (s1, t1, s2, t2, vec![])
        }
        TerminalRule::Coincident => {
            let (s, t) = distinct_pair(&mut rng, n);
            (s, t, s, t, vec![])
        }
        TerminalRule::CrossingCycle => {
            if m < 4 {
                return Err(Error::InvalidArgument(
                    "crossing-cycle rule needs at least 4 edges".into(),
                ));
            }
            let picked = index::sample(&mut rng, n, 4).into_vec();
            let (s1, s2, t1, t2) = (picked[0], picked[1], picked[2], picked[3]);
            (s1, t1, s2, t2, vec![(s1, s2), (s2, t1), (t1, t2), (t2, s1)])
        }
    };
    let fixed_ids: HashSet<u64> = fixed.iter().map(|&(u, v)| pair_index(n, u, v)).collect();
    let mut edges = fixed;
    if max <= usize::MAX as u64 {
        let sampled = index::sample(&mut rng, max as usize, m);
        edges.extend(
            sampled
                .iter()
                .map(|i| i as u64)
                .filter(|i| !fixed_ids.contains(i))
                .take(m - edges.len())
                .map(|i| pair_at(n, i)),
        );
    }
    let graph = Graph::from_edges(n, &edges)?;
    ProblemInstance::new(graph, (s1, t1), (s2, t2), c1, c2)
}

/// Planted-instance parameters; constraints come from `case` with bounds `k1`, `k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlantedShape {
    pub case: CaseKind,
    pub k1: usize,
    pub k2: usize,
    /// Vertices beyond those of the planted paths.
    pub extra_n: usize,
    /// Decoy edges added uniformly among the absent pairs.
    pub extra_m: usize,
}

/// Length drawn for a planted path under `c`.
fn planted_length(rng: &mut ChaCha8Rng, c: LengthConstraint) -> usize {
    match c {
        LengthConstraint::AtMost(k) => rng.gen_range(k.min(1)..=k),
        LengthConstraint::Exactly(k) => k,
        LengthConstraint::AtLeast(k) => rng.gen_range(k.max(1)..=k.max(1) + 2),
        LengthConstraint::Unbounded => rng.gen_range(1..=3),
    }
}

/// An instance with an edge-disjoint pair meeting the shape's constraints,
/// plus decoy edges, under a random relabeling. Returns the certificate.
pub fn gen_planted(shape: PlantedShape, seed: u64) -> Result<(ProblemInstance, Solution)> {
    let (c1, c2) = shape.case.constraints(shape.k1, shape.k2);
    let mut rng = rng::stream(seed, GEN_PLANTED);
    let len1 = planted_length(&mut rng, c1);
    let len2 = planted_length(&mut rng, c2);

    let mut p1: Vec<VertexId> = (0..=len1).collect();
    let mut next = len1 + 1;
    let mut p2: Vec<VertexId> = (next..next + len2 + 1).collect();
    next += len2 + 1;
    if rng.gen_bool(0.5) {
        // route the second path through one vertex of the first
        let at = rng.gen_range(0..p2.len());
        p2[at] = p1[rng.gen_range(0..p1.len())];
    }
    let n = next + shape.extra_n;

    let mut present: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut edges = Vec::new();
    for walk in [&p1, &p2] {
        for w in walk.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            if present.insert(key) {
                edges.push(key);
            }
        }
    }
    let available = pair_count(n) - edges.len() as u64;
    if shape.extra_m as u64 > available {
        return Err(Error::InconsistentShape(format!(
            "{} decoy edges requested but only {available} vertex pairs are free on {n} vertices",
            shape.extra_m
        )));
    }
    if (shape.extra_m as u64) * 2 <= available {
        let target = edges.len() + shape.extra_m;
        while edges.len() < target {
            let (u, v) = distinct_pair(&mut rng, n);
            let key = (u.min(v), u.max(v));
            if present.insert(key) {
                edges.push(key);
            }
        }
    } else {
        let free: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|key| !present.contains(key))
            .collect();
        edges.extend(free.choose_multiple(&mut rng, shape.extra_m).copied());
    }

    let mut relabel: Vec<VertexId> = (0..n).collect();
    relabel.shuffle(&mut rng);
    let edges: Vec<(VertexId, VertexId)> = edges
        .iter()
        .map(|&(u, v)| (relabel[u], relabel[v]))
        .collect();
    p1.iter_mut().for_each(|v| *v = relabel[*v]);
    p2.iter_mut().for_each(|v| *v = relabel[*v]);

    let graph = Graph::from_edges(n, &edges)?;
    let inst = ProblemInstance::new(graph, (p1[0], p1[len1]), (p2[0], p2[len2]), c1, c2)?;
    let p1 = Path::new(&inst.graph, p1)?;
    let p2 = Path::new(&inst.graph, p2)?;
    if !verify_solution(&inst, &p1, &p2)?.is_valid() {
        return Err(Error::InconsistentShape(format!(
            "{shape:?} produced an invalid certificate"
        )));
    }
    Ok((inst, Solution { p1, p2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphView;
    use LengthConstraint::*;

    #[test]
    fn pair_indexing_round_trips() {
        for n in 2..9 {
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(pair_at(n, i), (u, v), "n={n} i={i}");
                    assert_eq!(pair_index(n, v, u), i);
                    i += 1;
                }
            }
            assert_eq!(i, pair_count(n));
        }
    }

    #[test]
    fn random_is_deterministic_and_simple() {
        let a = gen_random(8, 12, TerminalRule::Distinct, AtMost(2), AtMost(2), 7).unwrap();
        let b = gen_random(8, 12, TerminalRule::Distinct, AtMost(2), AtMost(2), 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graph.edge_count(), 12);
        assert_ne!(a.s1, a.t1);
        let c = gen_random(8, 12, TerminalRule::Distinct, AtMost(2), AtMost(2), 8).unwrap();
        assert_ne!(a, c);
        // complete graph is reachable
        assert_eq!(
            gen_random(5, 10, TerminalRule::Coincident, Unbounded, Unbounded, 1)
                .unwrap()
                .graph
                .edge_count(),
            10
        );
    }

    #[test]
    fn random_rejects_infeasible_counts() {
        assert!(matches!(
            gen_random(4, 7, TerminalRule::Distinct, AtMost(1), AtMost(1), 0),
            Err(Error::InfeasibleEdgeCount { n: 4, m: 7, max: 6 })
        ));
        assert!(gen_random(3, 3, TerminalRule::CrossingCycle, AtMost(1), AtMost(1), 0).is_err());
        assert!(gen_random(5, 3, TerminalRule::CrossingCycle, AtMost(1), AtMost(1), 0).is_err());
    }

    #[test]
    fn terminal_rules() {
        let inst = gen_random(6, 6, TerminalRule::Coincident, AtMost(2), Unbounded, 3).unwrap();
        assert_eq!((inst.s1, inst.t1), (inst.s2, inst.t2));
        for seed in 0..20 {
            let inst = gen_random(
                7,
                9,
                TerminalRule::CrossingCycle,
                AtMost(2),
                AtMost(2),
                seed,
            )
            .unwrap();
            let g = &inst.graph;
            let ring = [inst.s1, inst.s2, inst.t1, inst.t2];
            for i in 0..4 {
                assert!(g.has_edge(ring[i], ring[(i + 1) % 4]));
            }
            assert_eq!(g.edge_count(), 9);
        }
    }

    #[test]
    fn planted_certificates_verify() {
        for case in CaseKind::ALL {
            for seed in 0..10 {
                let shape = PlantedShape {
                    case,
                    k1: 2,
                    k2: 4,
                    extra_n: 3,
                    extra_m: 6,
                };
                let (inst, sol) = gen_planted(shape, seed).unwrap();
                assert!(verify_solution(&inst, &sol.p1, &sol.p2).unwrap().is_valid());
                assert_eq!((inst.c1, inst.c2), case.constraints(2, 4));
            }
        }
    }

    #[test]
    fn planted_lengths_follow_the_case() {
        let shape = PlantedShape {
            case: CaseKind::ExactLong,
            k1: 2,
            k2: 4,
            extra_n: 0,
            extra_m: 0,
        };
        let (_, sol) = gen_planted(shape, 5).unwrap();
        assert_eq!(sol.p1.len(), 2);
        assert!(sol.p2.len() >= 4);
        let shape = PlantedShape {
            case: CaseKind::ShortShort,
            k1: 2,
            k2: 3,
            extra_n: 2,
            extra_m: 3,
        };
        let (inst, sol) = gen_planted(shape, 9).unwrap();
        assert!(sol.p1.len() <= 2 && sol.p2.len() <= 3);
        assert_eq!(gen_planted(shape, 9).unwrap().0, inst);
    }

    #[test]
    fn planted_rejects_impossible_decoys() {
        let shape = PlantedShape {
            case: CaseKind::ShortShort,
            k1: 1,
            k2: 1,
            extra_n: 0,
            extra_m: 100,
        };
        assert!(matches!(
            gen_planted(shape, 0),
            Err(Error::InconsistentShape(_))
        ));
    }

    #[test]
    fn dense_decoys_fill_exactly() {
        let shape = PlantedShape {
            case: CaseKind::ShortShort,
            k1: 1,
            k2: 1,
            extra_n: 2,
            extra_m: 0,
        };
        let (inst, _) = gen_planted(shape, 1).unwrap();
        let free = pair_count(inst.graph.vertex_count()) as usize - inst.graph.edge_count();
        let full = PlantedShape {
            extra_m: free,
            ..shape
        };
        let (inst, _) = gen_planted(full, 1).unwrap();
        assert_eq!(
            inst.graph.edge_count() as u64,
            pair_count(inst.graph.vertex_count())
        );
        assert!(inst.graph.vertex_count() >= 4 && inst.graph.neighbors(0).count() > 0);
    }
}
