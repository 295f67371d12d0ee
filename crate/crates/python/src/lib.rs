//! Python bindings: instances, the solvers, the oracle, verification,
//! generators and gadgets. Paths cross the boundary as lists of vertex ids.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use edpaths::constraints::{parse_solution, SolutionFile};
use edpaths::{
    build_universal_family, gen_planted, gen_random, or_compose_pair, oracle_solve, parse_instance,
    ppt_from_exact_path, solve_detailed, verify_solution, CaseKind, Graph, GraphView,
    LengthConstraint, Mode, OracleLimits, Outcome, Path, PlantedShape, ProblemInstance, Solution,
    SolveConfig, TerminalRule, UniversalLimits, Verdict,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(text: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    text.parse().map_err(err)
}

type PathPair = (Vec<usize>, Vec<usize>);

fn pair(sol: &Solution) -> PathPair {
    (sol.p1.vertices().to_vec(), sol.p2.vertices().to_vec())
}

/// A graph with two terminal pairs and a length constraint per pair.
#[pyclass(name = "Instance", module = "edpaths", frozen)]
struct PyInstance {
    inner: ProblemInstance,
}

#[pymethods]
impl PyInstance {
    /// Constraints are written as "le K", "eq K", "ge K" or "inf".
    #[new]
    fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        terminals: (usize, usize, usize, usize),
        c1: &str,
        c2: &str,
    ) -> PyResult<Self> {
        let graph = Graph::from_edges(n, &edges).map_err(err)?;
        let (s1, t1, s2, t2) = terminals;
        let inner =
            ProblemInstance::new(graph, (s1, t1), (s2, t2), parse(c1)?, parse(c2)?).map_err(err)?;
        Ok(PyInstance { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyInstance {
            inner: parse_instance(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.graph.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.graph.edge_count()
    }

    #[getter]
    fn terminals(&self) -> (usize, usize, usize, usize) {
        (self.inner.s1, self.inner.t1, self.inner.s2, self.inner.t2)
    }

    #[getter]
    fn constraints(&self) -> (String, String) {
        (self.inner.c1.to_string(), self.inner.c2.to_string())
    }

    /// Case name such as "short-long"; pairs are normalized before naming.
    #[getter]
    fn case(&self) -> String {
        self.inner.case().kind.to_string()
    }

    fn swapped(&self) -> Self {
        PyInstance {
            inner: self.inner.swapped(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, c1={}, c2={})",
            self.n(),
            self.m(),
            self.inner.c1,
            self.inner.c2
        )
    }
}

/// Outcome of a solver call: `status` is "yes", "no" or "unsupported".
#[pyclass(name = "SolveResult", module = "edpaths", frozen, get_all)]
struct PySolveResult {
    status: String,
    paths: Option<PathPair>,
    trials: u64,
}

#[pymethods]
impl PySolveResult {
    fn __bool__(&self) -> bool {
        self.paths.is_some()
    }

    fn __repr__(&self) -> String {
        format!(
            "SolveResult(status={:?}, paths={:?})",
            self.status, self.paths
        )
    }
}

#[pyfunction]
#[pyo3(signature = (instance, delta = 1e-9, seed = 0, mode = "random", threads = 1))]
fn solve(
    py: Python<'_>,
    instance: &PyInstance,
    delta: f64,
    seed: u64,
    mode: &str,
    threads: usize,
) -> PyResult<PySolveResult> {
    let config = SolveConfig {
        delta,
        seed,
        mode: parse::<Mode>(mode)?,
        threads,
        ..SolveConfig::default()
    };
    let inst = &instance.inner;
    let report = py.detach(|| solve_detailed(inst, &config)).map_err(err)?;
    let (status, paths) = match &report.outcome {
        Outcome::Found(sol) => ("yes", Some(pair(sol))),
        Outcome::NotFound => ("no", None),
        Outcome::Unsupported(_) => ("unsupported", None),
    };
    Ok(PySolveResult {
        status: status.to_string(),
        paths,
        trials: report.trials_run,
    })
}

/// Exhaustive search; handles every constraint combination on small graphs.
#[pyfunction]
#[pyo3(signature = (instance, max_vertices = 14, max_paths = 1_000_000))]
fn oracle(
    py: Python<'_>,
    instance: &PyInstance,
    max_vertices: usize,
    max_paths: u64,
) -> PyResult<Option<PathPair>> {
    let limits = OracleLimits {
        max_vertices,
        max_paths,
    };
    let inst = &instance.inner;
    let found = py.detach(|| oracle_solve(inst, limits)).map_err(err)?;
    Ok(found.as_ref().map(pair))
}

/// Violation messages; an empty list means the pair is valid.
#[pyfunction]
fn verify(instance: &PyInstance, p1: Vec<usize>, p2: Vec<usize>) -> PyResult<Vec<String>> {
    let g = &instance.inner.graph;
    let p1 = Path::new(g, p1).map_err(err)?;
    let p2 = Path::new(g, p2).map_err(err)?;
    Ok(
        match verify_solution(&instance.inner, &p1, &p2).map_err(err)? {
            Verdict::Valid => Vec::new(),
            Verdict::Invalid(v) => v.iter().map(ToString::to_string).collect(),
        },
    )
}

/// Parses solver output or a solution file: two lines of vertex ids, or `NO`.
#[pyfunction]
fn parse_paths(text: &str) -> PyResult<Option<PathPair>> {
    Ok(match parse_solution(text).map_err(err)? {
        SolutionFile::Paths(a, b) => Some((a, b)),
        SolutionFile::No => None,
    })
}

#[pyfunction]
#[pyo3(signature = (n, m, c1, c2, rule = "distinct", seed = 0))]
fn random_instance(
    n: usize,
    m: usize,
    c1: &str,
    c2: &str,
    rule: &str,
    seed: u64,
) -> PyResult<PyInstance> {
    let rule: TerminalRule = parse(rule)?;
    let inner = gen_random(n, m, rule, parse(c1)?, parse(c2)?, seed).map_err(err)?;
    Ok(PyInstance { inner })
}

/// Instance with an embedded solution, returned alongside it.
#[pyfunction]
#[pyo3(signature = (case, k1, k2, extra_n = 0, extra_m = 0, seed = 0))]
fn planted_instance(
    case: &str,
    k1: usize,
    k2: usize,
    extra_n: usize,
    extra_m: usize,
    seed: u64,
) -> PyResult<(PyInstance, PathPair)> {
    let shape = PlantedShape {
        case: parse::<CaseKind>(case)?,
        k1,
        k2,
        extra_n,
        extra_m,
    };
    let (inner, sol) = gen_planted(shape, seed).map_err(err)?;
    Ok((PyInstance { inner }, pair(&sol)))
}

/// Instance that is yes iff the graph has an (s, t)-path of exactly `k` edges.
#[pyfunction]
fn exact_path_instance(
    n: usize,
    edges: Vec<(usize, usize)>,
    s: usize,
    t: usize,
    k: usize,
) -> PyResult<PyInstance> {
    let g = Graph::from_edges(n, &edges).map_err(err)?;
    Ok(PyInstance {
        inner: ppt_from_exact_path(&g, s, t, k).map_err(err)?,
    })
}

/// Instance that is yes iff `a` or `b` is; both need the same (le, le) or (le, inf) constraints.
#[pyfunction]
fn or_compose(a: &PyInstance, b: &PyInstance) -> PyResult<PyInstance> {
    Ok(PyInstance {
        inner: or_compose_pair(&a.inner, &b.inner).map_err(err)?,
    })
}

/// Members of an (m, r)-universal family as bit strings, position 0 first.
#[pyfunction]
fn universal_family(m: usize, r: usize) -> PyResult<Vec<String>> {
    let f = build_universal_family(m, r, UniversalLimits::default()).map_err(err)?;
    Ok((0..f.len())
        .map(|i| {
            f.member_bits(i)
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect()
        })
        .collect())
}

/// Parses a constraint string and prints it back in canonical form.
#[pyfunction]
fn normalize_constraint(text: &str) -> PyResult<String> {
    Ok(parse::<LengthConstraint>(text)?.to_string())
}

#[pymodule]
#[pyo3(name = "edpaths")]
fn edpaths_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(parse_paths, m)?)?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    m.add_function(wrap_pyfunction!(planted_instance, m)?)?;
    m.add_function(wrap_pyfunction!(exact_path_instance, m)?)?;
    m.add_function(wrap_pyfunction!(or_compose, m)?)?;
    m.add_function(wrap_pyfunction!(universal_family, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_constraint, m)?)?;
    Ok(())
}
