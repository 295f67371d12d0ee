//! Random-partition solvers for the seven tractable constraint cases.
//!
//! One trial 2-colors a designated edge set (every other edge gets color 2),
//! then looks for the first path in the color-1 subgraph and for the second
//! path in the color-2 subgraph. Any pair found this way is edge-disjoint by
//! construction. The designated set is the whole edge set for the short and
//! exact cases, and only the nearby edges around the first pair for the
//! cases with an unbounded or at-least second path.

use rand::Rng;
use rayon::prelude::*;

use crate::constraints::{
    classify_case, verify_solution, CaseId, CaseKind, LengthConstraint, ProblemInstance, Solution,
};
use crate::derand::{build_universal_family, UniversalFamily, UniversalLimits};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, EdgeId, Graph, GraphView, Masked, VertexId};
use crate::path_engine::{self, LongPathBudget};
use crate::rng::{self, purpose};

/// Vertices `v` with `d(s1, v) + d(v, t1) <= k1` and the edges joining two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearbySets {
    pub nearby_vertex: Vec<bool>,
    /// Ascending edge ids.
    pub nearby_edges: Vec<EdgeId>,
}

impl NearbySets {
    pub fn vertex_count(&self) -> usize {
        self.nearby_vertex.iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        self.nearby_edges.len()
    }

    pub fn is_nearby_edge(&self, e: EdgeId) -> bool {
        self.nearby_edges.binary_search(&e).is_ok()
    }
}

/// Nearby sets from one BFS out of `s1` and one out of `t1`.
pub fn compute_nearby(g: &Graph, s1: VertexId, t1: VertexId, k1: usize) -> NearbySets {
    let from_s = bfs_distances(g, s1);
    let from_t = bfs_distances(g, t1);
    let nearby_vertex: Vec<bool> = (0..g.vertex_count())
        .map(|v| matches!((from_s.get(v), from_t.get(v)), (Some(a), Some(b)) if a + b <= k1))
        .collect();
    let nearby_edges = g
        .edges()
        .filter(|&(_, u, v)| nearby_vertex[u] && nearby_vertex[v])
        .map(|(id, _, _)| id)
        .collect();
    NearbySets {
        nearby_vertex,
        nearby_edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    One,
    Two,
}

/// A 2-coloring of the colorable edges; all other edges are color 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    colorable: Vec<EdgeId>,
    first: Vec<bool>,
}

impl ColorAssignment {
    /// `first[i]` says whether `colorable[i]` gets color 1.
    pub fn new(colorable: Vec<EdgeId>, first: Vec<bool>) -> ColorAssignment {
        assert_eq!(colorable.len(), first.len());
        ColorAssignment { colorable, first }
    }

    /// Coloring number `bits` of an exhaustive enumeration (bit i for edge i).
    pub fn from_bits(colorable: Vec<EdgeId>, bits: u64) -> ColorAssignment {
        let first = (0..colorable.len()).map(|i| bits >> i & 1 == 1).collect();
        ColorAssignment { colorable, first }
    }

    pub fn colorable(&self) -> &[EdgeId] {
        &self.colorable
    }

    pub fn color_flags(&self) -> &[bool] {
        &self.first
    }

    pub fn color_of(&self, e: EdgeId) -> Color {
        match self.colorable.iter().position(|&c| c == e) {
            Some(i) if self.first[i] => Color::One,
            _ => Color::Two,
        }
    }

    /// Edge filters for the color-1 and color-2 subgraphs of `g`.
    pub fn masks(&self, g: &Graph) -> (Vec<bool>, Vec<bool>) {
        let bound = g.edge_id_bound();
        let mut one = vec![false; bound];
        for (&e, &f) in self.colorable.iter().zip(&self.first) {
            one[e] = f;
        }
        let two = one.iter().map(|&b| !b).collect();
        (one, two)
    }
}

/// Independent fair color per colorable edge.
pub fn random_edge_partition<R: Rng + ?Sized>(
    colorable: &[EdgeId],
    rng: &mut R,
) -> ColorAssignment {
    let first = colorable.iter().map(|_| rng.gen::<bool>()).collect();
    ColorAssignment {
        colorable: colorable.to_vec(),
        first,
    }
}

/// `min(ceil(2^r * ln(1/delta)), 2^m_prime)`, at least one.
pub fn trial_count(r: usize, delta: f64, m_prime: usize) -> u64 {
    let amplified = (2f64.powi(r.min(1023) as i32) * (1.0 / delta).ln()).ceil();
    let amplified = if amplified.is_finite() && amplified < u64::MAX as f64 {
        (amplified as u64).max(1)
    } else {
        u64::MAX
    };
    match 1u64.checked_shl(m_prime as u32).filter(|_| m_prime < 64) {
        Some(full) => amplified.min(full),
        None => amplified,
    }
}

/// How many colorings a randomized solve examines, and whether they are the
/// complete enumeration of the colorable set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialPlan {
    pub exponent: usize,
    pub delta: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub colorable: usize,
    /// Set when `2^colorable` colorings are no more than the amplified count;
    /// the trials then enumerate every coloring and a miss is definitive.
    pub exhaustive: bool,
}

impl TrialPlan {
    pub fn new(exponent: usize, delta: f64, colorable: usize, master_seed: u64) -> TrialPlan {
        let trials = trial_count(exponent, delta, colorable);
        let exhaustive = colorable < 64 && trials == 1u64 << colorable;
        TrialPlan {
            exponent,
            delta,
            trials,
            master_seed,
            colorable,
            exhaustive,
        }
    }
}

/// Per-trial success exponent of a normalized case.
pub fn case_exponent(kind: CaseKind, k1: usize, k2: usize) -> Option<usize> {
    match kind {
        CaseKind::ShortShort | CaseKind::ShortExact | CaseKind::ExactExact => Some(k1 + k2),
        CaseKind::ShortUnbounded | CaseKind::ExactUnbounded => Some(k1 + (k1 + 1) * (k1 + 1)),
        CaseKind::ShortLong | CaseKind::ExactLong => Some(k1 * k1 + 4 * k1 + 2 * k2),
        CaseKind::OpenLongUnbounded | CaseKind::OpenLongLong | CaseKind::Unconstrained => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Random,
    Universal,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "random" => Ok(Mode::Random),
            "universal" => Ok(Mode::Universal),
            other => Err(format!(
                "unknown mode {other:?} (expected random or universal)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// Overall failure probability of a randomized "no".
    pub delta: f64,
    pub seed: u64,
    pub mode: Mode,
    /// Worker threads for the trials; 1 runs them in order on the caller.
    pub threads: usize,
    pub long_path: LongPathBudget,
    pub universal: UniversalLimits,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            delta: 1e-9,
            seed: 0,
            mode: Mode::Random,
            threads: 1,
            long_path: LongPathBudget::default(),
            universal: UniversalLimits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Solution),
    NotFound,
    /// The case has no partition solver; the exhaustive oracle handles it.
    Unsupported(CaseId),
}

impl Outcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub case: CaseId,
    pub planned_trials: u64,
    pub trials_run: u64,
}

/// The trial body for one normalized instance: designated edges, engines for
/// both paths, and the failure budget handed to the exact-length engine.
pub struct PartitionSearch<'a> {
    inst: &'a ProblemInstance,
    kind: CaseKind,
    colorable: Vec<EdgeId>,
    exponent: usize,
    inner_delta: f64,
    long_path: LongPathBudget,
}

impl<'a> PartitionSearch<'a> {
    /// `inst` must already be normalized (see [`classify_case`]).
    pub fn new(
        inst: &'a ProblemInstance,
        delta: f64,
        long_path: LongPathBudget,
    ) -> Result<PartitionSearch<'a>> {
        let case = classify_case(inst.c1, inst.c2);
        if case.swapped {
            return Err(Error::InvalidArgument(format!(
                "instance is not normalized ({} with pairs exchanged)",
                case.kind
            )));
        }
        let k1 = inst.c1.bound().unwrap_or(0);
        let k2 = inst.c2.bound().unwrap_or(0);
        let exponent = case_exponent(case.kind, k1, k2).ok_or_else(|| {
            Error::InvalidArgument(format!("no partition solver for case {}", case.kind))
        })?;
        let colorable = match case.kind {
            CaseKind::ShortShort | CaseKind::ShortExact | CaseKind::ExactExact => {
                inst.graph.edge_ids()
            }
            _ => compute_nearby(&inst.graph, inst.s1, inst.t1, k1).nearby_edges,
        };
        let uses_exact = matches!(inst.c1, LengthConstraint::Exactly(_))
            || matches!(inst.c2, LengthConstraint::Exactly(_));
        Ok(PartitionSearch {
            inst,
            kind: case.kind,
            colorable,
            exponent,
            // half of the failure budget goes to the exact-length engine
            inner_delta: if uses_exact { delta / 2.0 } else { delta },
            long_path,
        })
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn colorable(&self) -> &[EdgeId] {
        &self.colorable
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Failure budget left for the coloring layer.
    pub fn outer_delta(&self, delta: f64) -> f64 {
        if self.inner_delta < delta {
            delta - self.inner_delta
        } else {
            delta
        }
    }

    fn find<G: GraphView>(
        &self,
        g: &G,
        s: VertexId,
        t: VertexId,
        c: LengthConstraint,
        seed: u64,
    ) -> Result<Option<crate::graph::Path>> {
        Ok(match c {
            LengthConstraint::AtMost(k) => path_engine::find_path_at_most(g, s, t, k),
            LengthConstraint::Exactly(k) => {
                path_engine::find_path_exact(g, s, t, k, self.inner_delta, seed)
            }
            LengthConstraint::AtLeast(k) => {
                path_engine::find_path_at_least(g, s, t, k, self.long_path)?
            }
            LengthConstraint::Unbounded => path_engine::any_path(g, s, t),
        })
    }

    /// Exact screen on the whole graph: `false` means one of the paths cannot
    /// exist in any color class. Requests whose exact search runs out of
    /// budget pass unscreened.
    pub fn both_paths_possible(&self) -> Result<bool> {
        let g = &self.inst.graph;
        for (s, t, c) in [
            (self.inst.s1, self.inst.t1, self.inst.c1),
            (self.inst.s2, self.inst.t2, self.inst.c2),
        ] {
            let possible = match c {
                LengthConstraint::Exactly(k) => {
                    path_engine::exact_path_exists(g, s, t, k).unwrap_or(true)
                }
                LengthConstraint::AtLeast(k) => {
                    match path_engine::find_path_at_least(g, s, t, k, self.long_path) {
                        Ok(found) => found.is_some(),
                        Err(Error::GraphTooLargeForExactLongPath { .. }) => true,
                        Err(e) => return Err(e),
                    }
                }
                other => self.find(g, s, t, other, 0)?.is_some(),
            };
            if !possible {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One trial under `coloring`; inner engines draw from `trial_seed`.
    pub fn attempt(&self, coloring: &ColorAssignment, trial_seed: u64) -> Result<Option<Solution>> {
        let g = &self.inst.graph;
        let (one, two) = coloring.masks(g);
        let g1: Masked<'_> = g.masked(&one);
        let Some(p1) = self.find(
            &g1,
            self.inst.s1,
            self.inst.t1,
            self.inst.c1,
            rng::derive_seed(trial_seed, purpose::EXACT_FIRST),
        )?
        else {
            return Ok(None);
        };
        let g2 = g.masked(&two);
        let Some(p2) = self.find(
            &g2,
            self.inst.s2,
            self.inst.t2,
            self.inst.c2,
            rng::derive_seed(trial_seed, purpose::EXACT_SECOND),
        )?
        else {
            return Ok(None);
        };
        let verdict = verify_solution(self.inst, &p1, &p2)?;
        debug_assert!(verdict.is_valid(), "{verdict:?}");
        Ok(verdict.is_valid().then_some(Solution { p1, p2 }))
    }
}

/// Where the colorings of successive trials come from.
pub(crate) enum ColoringSource<'f> {
    Random { seed: u64 },
    Exhaustive,
    Family(&'f UniversalFamily),
}

impl ColoringSource<'_> {
    fn coloring(&self, colorable: &[EdgeId], index: u64) -> ColorAssignment {
        match self {
            ColoringSource::Random { seed } => {
                let mut rng = rng::stream(rng::derive_seed(*seed, purpose::PARTITION), index);
                random_edge_partition(colorable, &mut rng)
            }
            ColoringSource::Exhaustive => ColorAssignment::from_bits(colorable.to_vec(), index),
            ColoringSource::Family(family) => {
                ColorAssignment::new(colorable.to_vec(), family.member_bits(index as usize))
            }
        }
    }
}

/// Runs trials `0..count` and keeps the lowest-index success (or error).
pub(crate) fn run_trials(
    search: &PartitionSearch<'_>,
    source: &ColoringSource<'_>,
    count: u64,
    seed: u64,
    threads: usize,
) -> Result<(Option<Solution>, u64)> {
    let trial = |i: u64| -> Result<Option<Solution>> {
        let coloring = source.coloring(search.colorable(), i);
        search.attempt(&coloring, rng::derive_seed(seed, i))
    };
    if threads <= 1 {
        for i in 0..count {
            if let Some(sol) = trial(i)? {
                return Ok((Some(sol), i + 1));
            }
        }
        return Ok((None, count));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let first = pool.install(|| {
        (0..count)
            .into_par_iter()
            .find_map_first(|i| match trial(i) {
                Ok(None) => None,
                Ok(Some(sol)) => Some(Ok((sol, i))),
                Err(e) => Some(Err(e)),
            })
    });
    match first {
        None => Ok((None, count)),
        Some(Ok((sol, i))) => Ok((Some(sol), i + 1)),
        Some(Err(e)) => Err(e),
    }
}

fn solve_normalized(
    inst: &ProblemInstance,
    config: &SolveConfig,
    allowed: &[CaseKind],
) -> Result<SolveReport> {
    let search = PartitionSearch::new(inst, config.delta, config.long_path)?;
    if !allowed.contains(&search.kind()) {
        return Err(Error::InvalidArgument(format!(
            "case {} is not handled by this solver",
            search.kind()
        )));
    }
    let case = CaseId {
        kind: search.kind(),
        swapped: false,
    };
    if !search.both_paths_possible()? {
        return Ok(SolveReport {
            outcome: Outcome::NotFound,
            case,
            planned_trials: 0,
            trials_run: 0,
        });
    }
    let m_prime = search.colorable().len();
    let (found, planned, run) = match config.mode {
        Mode::Random => {
            let plan = TrialPlan::new(
                search.exponent(),
                search.outer_delta(config.delta),
                m_prime,
                config.seed,
            );
            let source = if plan.exhaustive {
                ColoringSource::Exhaustive
            } else {
                ColoringSource::Random { seed: config.seed }
            };
            let (found, run) =
                run_trials(&search, &source, plan.trials, config.seed, config.threads)?;
            (found, plan.trials, run)
        }
        Mode::Universal => {
            let family =
                build_universal_family(m_prime, search.exponent().min(m_prime), config.universal)?;
            let count = family.len() as u64;
            let (found, run) = run_trials(
                &search,
                &ColoringSource::Family(&family),
                count,
                config.seed,
                config.threads,
            )?;
            (found, count, run)
        }
    };
    Ok(SolveReport {
        outcome: found.map_or(Outcome::NotFound, Outcome::Found),
        case,
        planned_trials: planned,
        trials_run: run,
    })
}

fn solve_case(
    inst: &ProblemInstance,
    config: &SolveConfig,
    allowed: &[CaseKind],
) -> Result<Option<Solution>> {
    Ok(match solve_normalized(inst, config, allowed)?.outcome {
        Outcome::Found(s) => Some(s),
        _ => None,
    })
}

/// Short or exact first path, short or exact second path: every edge is colorable.
pub fn solve_short_short(inst: &ProblemInstance, config: &SolveConfig) -> Result<Option<Solution>> {
    solve_case(
        inst,
        config,
        &[
            CaseKind::ShortShort,
            CaseKind::ShortExact,
            CaseKind::ExactExact,
        ],
    )
}

/// Short or exact first path with an unconstrained second path; only nearby
/// edges are colored.
pub fn solve_constrained_unbounded(
    inst: &ProblemInstance,
    config: &SolveConfig,
) -> Result<Option<Solution>> {
    solve_case(
        inst,
        config,
        &[CaseKind::ShortUnbounded, CaseKind::ExactUnbounded],
    )
}

/// Short or exact first path with a second path of length at least `k2`.
pub fn solve_constrained_long(
    inst: &ProblemInstance,
    config: &SolveConfig,
) -> Result<Option<Solution>> {
    solve_case(inst, config, &[CaseKind::ShortLong, CaseKind::ExactLong])
}

/// Classifies, normalizes, dispatches and maps the answer back to the
/// caller's pair order.
pub fn solve_detailed(inst: &ProblemInstance, config: &SolveConfig) -> Result<SolveReport> {
    let case = classify_case(inst.c1, inst.c2);
    if !case.kind.is_supported() {
        return Ok(SolveReport {
            outcome: Outcome::Unsupported(case),
            case,
            planned_trials: 0,
            trials_run: 0,
        });
    }
    let normalized;
    let target = if case.swapped {
        normalized = inst.swapped();
        &normalized
    } else {
        inst
    };
    let mut report = solve_normalized(target, config, &[case.kind])?;
    report.case = case;
    if case.swapped {
        if let Outcome::Found(sol) = report.outcome {
            report.outcome = Outcome::Found(sol.swapped());
        }
    }
    Ok(report)
}

pub fn solve(inst: &ProblemInstance, config: &SolveConfig) -> Result<Outcome> {
    Ok(solve_detailed(inst, config)?.outcome)
}
