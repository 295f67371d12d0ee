//! Single-pair path searches used inside each partition trial: length at
//! most `k` (BFS), exactly `k` (color coding), at least `k` (exact subset
//! search) and unconstrained.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, shortest_path, GraphView, Path, VertexId};
use crate::rng;

/// An `(s, t)`-path of length at most `k`; the BFS shortest path decides it.
pub fn find_path_at_most<G: GraphView>(g: &G, s: VertexId, t: VertexId, k: usize) -> Option<Path> {
    shortest_path(g, s, t).filter(|p| p.len() <= k)
}

pub fn any_path<G: GraphView>(g: &G, s: VertexId, t: VertexId) -> Option<Path> {
    shortest_path(g, s, t)
}

/// Color-coding trials needed for failure probability `delta` on a path
/// with `k` edges: `ceil(e^(k+1) * ln(1/delta))`, at least one.
pub fn color_coding_trials(k: usize, delta: f64) -> u64 {
    let raw = ((k as f64 + 1.0).exp() * (1.0 / delta).ln()).ceil();
    if raw.is_finite() && raw < u64::MAX as f64 {
        (raw as u64).max(1)
    } else {
        u64::MAX
    }
}

/// Vertices that can lie on an `(s, t)`-walk of length `k`, indexed densely.
struct Corridor {
    members: Vec<VertexId>,
    local: Vec<Option<usize>>,
    /// Distance to `t`, by local index.
    to_t: Vec<usize>,
}

impl Corridor {
    fn new<G: GraphView>(g: &G, s: VertexId, t: VertexId, k: usize) -> Option<Corridor> {
        let from_s = bfs_distances(g, s);
        let from_t = bfs_distances(g, t);
        if from_s.get(t)? > k {
            return None;
        }
        let n = g.vertex_count();
        let mut local = vec![None; n];
        let mut members = Vec::new();
        let mut to_t = Vec::new();
        for (v, slot) in local.iter_mut().enumerate() {
            if let (Some(a), Some(b)) = (from_s.get(v), from_t.get(v)) {
                if a + b <= k {
                    *slot = Some(members.len());
                    members.push(v);
                    to_t.push(b);
                }
            }
        }
        // a simple path with k edges visits k + 1 distinct vertices
        (members.len() > k).then_some(Corridor {
            members,
            local,
            to_t,
        })
    }
}

/// Colorful-path tables for one coloring: `table[l][v]` holds the color sets
/// of colorful `(s, v)`-paths with `l` edges, as a bitset over subsets.
struct ColorfulTables {
    words: usize,
    layers: Vec<Vec<u64>>,
}

impl ColorfulTables {
    fn contains(&self, layer: usize, v: usize, set: usize) -> bool {
        self.layers[layer][v * self.words + set / 64] >> (set % 64) & 1 == 1
    }

    fn first_set(&self, layer: usize, v: usize) -> Option<usize> {
        let row = &self.layers[layer][v * self.words..(v + 1) * self.words];
        row.iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

fn colorful_tables<G: GraphView>(
    g: &G,
    corridor: &Corridor,
    colors: &[usize],
    s_local: usize,
    k: usize,
) -> ColorfulTables {
    let size = corridor.members.len();
    let words = (1usize << (k + 1)).div_ceil(64);
    let mut layers = vec![vec![0u64; size * words]; k + 1];
    let start = 1usize << colors[s_local];
    layers[0][s_local * words + start / 64] |= 1 << (start % 64);
    for layer in 1..=k {
        let (done, rest) = layers.split_at_mut(layer);
        let prev = &done[layer - 1];
        let cur = &mut rest[0];
        for (v_local, &v) in corridor.members.iter().enumerate() {
            let bit = 1usize << colors[v_local];
            for (u, _) in g.neighbors(v) {
                let Some(u_local) = corridor.local[u] else {
                    continue;
                };
                let row = &prev[u_local * words..(u_local + 1) * words];
                for (wi, &word) in row.iter().enumerate() {
                    let mut word = word;
                    while word != 0 {
                        let set = wi * 64 + word.trailing_zeros() as usize;
                        word &= word - 1;
                        if set & bit == 0 {
                            let next = set | bit;
                            cur[v_local * words + next / 64] |= 1 << (next % 64);
                        }
                    }
                }
            }
        }
    }
    ColorfulTables { words, layers }
}

fn colorful_path<G: GraphView>(
    g: &G,
    corridor: &Corridor,
    colors: &[usize],
    tables: &ColorfulTables,
    t_local: usize,
    k: usize,
) -> Option<Path> {
    let mut set = tables.first_set(k, t_local)?;
    let mut v_local = t_local;
    let mut reversed = vec![corridor.members[t_local]];
    for layer in (1..=k).rev() {
        set &= !(1usize << colors[v_local]);
        let v = corridor.members[v_local];
        let (u_local, u) = g
            .neighbors(v)
            .filter_map(|(u, _)| corridor.local[u].map(|ul| (ul, u)))
            .find(|&(ul, _)| tables.contains(layer - 1, ul, set))?;
        reversed.push(u);
        v_local = u_local;
    }
    reversed.reverse();
    Path::new(g, reversed).ok()
}

/// Vertex expansions the exhaustive search may spend before an exact-length
/// request falls back to color coding.
pub const EXACT_SEARCH_BUDGET: u64 = 200_000;

/// Depth-first search for a simple path of exactly `k` edges inside the
/// corridor, pruned by the distance to `t`. `Err(())` means the budget ran out.
fn exact_by_search<G: GraphView>(
    g: &G,
    corridor: &Corridor,
    s_local: usize,
    t_local: usize,
    k: usize,
    budget: u64,
) -> std::result::Result<Option<Path>, ()> {
    struct Search<'a, G> {
        g: &'a G,
        corridor: &'a Corridor,
        t_local: usize,
        k: usize,
        on_path: Vec<bool>,
        stack: Vec<VertexId>,
        left: u64,
    }
    impl<G: GraphView> Search<'_, G> {
        fn go(&mut self, v_local: usize) -> std::result::Result<bool, ()> {
            let depth = self.stack.len() - 1;
            if depth == self.k {
                return Ok(v_local == self.t_local);
            }
            if v_local == self.t_local {
                return Ok(false);
            }
            if self.left == 0 {
                return Err(());
            }
            self.left -= 1;
            let v = self.corridor.members[v_local];
            let next: Vec<usize> = self
                .g
                .neighbors(v)
                .filter_map(|(u, _)| self.corridor.local[u])
                .filter(|&ul| !self.on_path[ul] && depth + 1 + self.corridor.to_t[ul] <= self.k)
                .collect();
            for u_local in next {
                self.on_path[u_local] = true;
                self.stack.push(self.corridor.members[u_local]);
                if self.go(u_local)? {
                    return Ok(true);
                }
                self.stack.pop();
                self.on_path[u_local] = false;
            }
            Ok(false)
        }
    }
    let mut search = Search {
        g,
        corridor,
        t_local,
        k,
        on_path: vec![false; corridor.members.len()],
        stack: vec![corridor.members[s_local]],
        left: budget,
    };
    search.on_path[s_local] = true;
    if search.go(s_local)? {
        Ok(Some(
            Path::new(g, search.stack).expect("search builds simple paths"),
        ))
    } else {
        Ok(None)
    }
}

/// An `(s, t)`-path with exactly `k` edges.
///
/// A budgeted exhaustive search runs first; when it completes the answer is
/// exact. Otherwise color coding takes over: a returned path always has
/// exactly `k` edges, and when such a path exists `None` comes back with
/// probability at most `delta`. Color-coding trials use the seed stream
/// `(seed, trial)`, so results are reproducible.
pub fn find_path_exact<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    k: usize,
    delta: f64,
    seed: u64,
) -> Option<Path> {
    if k == 0 || s == t {
        return (k == 0 && s == t).then(|| Path::trivial(s));
    }
    let corridor = Corridor::new(g, s, t, k)?;
    let s_local = corridor.local[s].expect("s lies in its own corridor");
    let t_local = corridor.local[t].expect("t lies in the corridor");
    if let Ok(found) = exact_by_search(g, &corridor, s_local, t_local, k, EXACT_SEARCH_BUDGET) {
        return found;
    }
    find_path_by_color_coding(g, &corridor, s_local, t_local, k, delta, seed)
}

/// `Some(answer)` when the budgeted exhaustive search settles whether an
/// exact-length path exists; `None` when it ran out of budget.
pub fn exact_path_exists<G: GraphView>(g: &G, s: VertexId, t: VertexId, k: usize) -> Option<bool> {
    if k == 0 || s == t {
        return Some(k == 0 && s == t);
    }
    let Some(corridor) = Corridor::new(g, s, t, k) else {
        return Some(false);
    };
    let (sl, tl) = (corridor.local[s]?, corridor.local[t]?);
    exact_by_search(g, &corridor, sl, tl, k, EXACT_SEARCH_BUDGET)
        .ok()
        .map(|p| p.is_some())
}

fn find_path_by_color_coding<G: GraphView>(
    g: &G,
    corridor: &Corridor,
    s_local: usize,
    t_local: usize,
    k: usize,
    delta: f64,
    seed: u64,
) -> Option<Path> {
    let trials = color_coding_trials(k, delta);
    let mut colors = vec![0usize; corridor.members.len()];
    for trial in 0..trials {
        let mut rng = rng::stream(seed, trial);
        for c in colors.iter_mut() {
            *c = rng.gen_range(0..=k);
        }
        let tables = colorful_tables(g, corridor, &colors, s_local, k);
        if let Some(path) = colorful_path(g, corridor, &colors, &tables, t_local, k) {
            debug_assert_eq!(path.len(), k);
            return Some(path);
        }
    }
    None
}

/// Limits for the exact long-path search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LongPathBudget {
    /// Largest terminal component handled by the subset dynamic program.
    pub dp_cap: usize,
    /// Search-node budget for depth-first enumeration on larger components.
    pub node_budget: u64,
}

impl Default for LongPathBudget {
    fn default() -> Self {
        LongPathBudget {
            dp_cap: 22,
            node_budget: 2_000_000,
        }
    }
}

/// An `(s, t)`-path with at least `k` edges, or `None` if there is none.
///
/// Returns the shortest path outright when it is already long enough.
/// Otherwise the answer is exact: a subset dynamic program on components of
/// at most `budget.dp_cap` vertices, else a budgeted depth-first search whose
/// exhaustion is reported as [`Error::GraphTooLargeForExactLongPath`].
pub fn find_path_at_least<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    k: usize,
    budget: LongPathBudget,
) -> Result<Option<Path>> {
    let Some(shortest) = shortest_path(g, s, t) else {
        return Ok(None);
    };
    if shortest.len() >= k {
        return Ok(Some(shortest));
    }
    let reach = bfs_distances(g, s);
    let component: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&v| reach.get(v).is_some())
        .collect();
    if component.len() < k + 1 {
        return Ok(None);
    }
    if component.len() <= budget.dp_cap {
        Ok(long_path_by_subsets(g, &component, s, t, k))
    } else {
        long_path_by_search(g, s, t, k, budget.node_budget).ok_or(
            Error::GraphTooLargeForExactLongPath {
                cap: budget.dp_cap,
                found: component.len(),
            },
        )
    }
}

/// `ends[mask]` is the set of `v` with a simple `(v, t)`-path covering
/// exactly `mask`; the answer uses the smallest qualifying vertex set and
/// walks it forward choosing the lowest usable neighbor.
fn long_path_by_subsets<G: GraphView>(
    g: &G,
    component: &[VertexId],
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Option<Path> {
    let c = component.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in component.iter().enumerate() {
        local[v] = i;
    }
    let neighbors: Vec<u32> = component
        .iter()
        .map(|&v| g.neighbors(v).fold(0u32, |acc, (u, _)| acc | 1 << local[u]))
        .collect();
    let (sb, tb) = (local[s], local[t]);
    let mut ends = vec![0u32; 1 << c];
    ends[1 << tb] = 1 << tb;
    let mut best: Option<usize> = None;
    for mask in 0..(1usize << c) {
        let here = ends[mask];
        if here == 0 {
            continue;
        }
        if here >> sb & 1 == 1 {
            let better = match best {
                None => true,
                Some(b) => mask.count_ones() < b.count_ones(),
            };
            if mask.count_ones() as usize > k && better {
                best = Some(mask);
            }
            // s starts the path; never extend through it
        }
        let mut open = here & !(1 << sb);
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= open - 1;
            let mut next = neighbors[v] & !(mask as u32);
            while next != 0 {
                let u = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | 1 << u] |= 1 << u;
            }
        }
    }
    let mut remaining = best?;
    let mut cur = sb;
    let mut vertices = vec![s];
    remaining &= !(1 << sb);
    while remaining != 0 {
        let candidates = neighbors[cur] & remaining as u32 & ends[remaining];
        let next = candidates.trailing_zeros() as usize;
        debug_assert!(candidates != 0);
        vertices.push(component[next]);
        remaining &= !(1 << next);
        cur = next;
    }
    Path::new(g, vertices).ok()
}

/// Depth-first enumeration in ascending neighbor order. `None` means the
/// node budget ran out; `Some(None)` is a definitive "no such path".
fn long_path_by_search<G: GraphView>(
    g: &G,
    s: VertexId,
    t: VertexId,
    k: usize,
    node_budget: u64,
) -> Option<Option<Path>> {
    struct Search<'a, G> {
        g: &'a G,
        t: VertexId,
        k: usize,
        on_path: Vec<bool>,
        stack: Vec<VertexId>,
        nodes: u64,
        budget: u64,
    }

    impl<G: GraphView> Search<'_, G> {
        /// Vertices reachable from `v` without touching the current path,
        /// or `None` when `t` is among the unreachable.
        fn room(&self, v: VertexId) -> Option<usize> {
            let mut seen = self.on_path.clone();
            let mut queue = vec![v];
            seen[v] = true;
            let mut count = 0;
            let mut found_t = v == self.t;
            while let Some(x) = queue.pop() {
                count += 1;
                for (y, _) in self.g.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        found_t |= y == self.t;
                        queue.push(y);
                    }
                }
            }
            found_t.then_some(count)
        }

        fn dive(&mut self, v: VertexId) -> Result<bool, ()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            if v == self.t {
                return Ok(self.stack.len() > self.k);
            }
            let Some(room) = self.room(v) else {
                return Ok(false);
            };
            // the path can still grow by at most room - 1 edges
            if self.stack.len() - 1 + room - 1 < self.k {
                return Ok(false);
            }
            let next: Vec<VertexId> = self.g.neighbors(v).map(|(u, _)| u).collect();
            for u in next {
                if self.on_path[u] {
                    continue;
                }
                self.on_path[u] = true;
                self.stack.push(u);
                if self.dive(u)? {
                    return Ok(true);
                }
                self.stack.pop();
                self.on_path[u] = false;
            }
            Ok(false)
        }
    }

    let mut search = Search {
        g,
        t,
        k,
        on_path: vec![false; g.vertex_count()],
        stack: vec![s],
        nodes: 0,
        budget: node_budget,
    };
    search.on_path[s] = true;
    match search.dive(s) {
        Err(()) => None,
        Ok(false) => Some(None),
        Ok(true) => Some(Path::new(g, search.stack).ok()),
    }
}
