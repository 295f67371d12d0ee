//! Two edge-disjoint paths between two terminal pairs under per-path length
//! constraints.
//!
//! The crate provides random-partition solvers for the seven tractable
//! constraint combinations, a universal-family mode that replaces random
//! trials with a covering family of colorings, an exhaustive oracle for every
//! combination, and instance transformers (identification composition, the
//! exact-path gadget and the OR-composition gadget).

pub mod cli;
pub mod constraints;
pub mod derand;
pub mod error;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod path_engine;
pub mod rng;

pub use constraints::{
    classify_case, parse_instance, verify_solution, CaseId, CaseKind, LengthConstraint,
    ProblemInstance, Solution, Verdict, Violation,
};
pub use derand::{
    build_universal_family, derandomized_solve, verify_universal, UniversalFamily, UniversalLimits,
};
pub use error::{Error, ParseError, PathError, Result};
pub use gadgets::{
    identify_compose, make_no_instance, or_compose_many, or_compose_pair, ppt_from_exact_path,
    CompositionReport, ExactPathInstance,
};
pub use generate::{gen_planted, gen_random, PlantedShape, TerminalRule};
pub use graph::{
    bfs_distances, parse_graph, remove_edges, shortest_path, DistanceMap, EdgeId, Graph, GraphView,
    Path, VertexId,
};
pub use oracle::{enumerate_paths, minimal_valid_partner, oracle_solve, OracleLimits, PathCaps};
pub use partition::{solve, solve_detailed, Mode, Outcome, SolveConfig, SolveReport};
