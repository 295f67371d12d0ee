//! Length constraints, problem instances, case classification and solution
//! verification, plus the instance and solution text formats.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, PathError};
use crate::graph::{
    parse_graph_block, parse_usize, EdgeId, Graph, GraphView, LineCursor, Path, VertexId,
};

/// Constraint on the number of edges of one path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthConstraint {
    AtMost(usize),
    Exactly(usize),
    AtLeast(usize),
    Unbounded,
}

impl LengthConstraint {
    pub fn satisfied_by(self, len: usize) -> bool {
        match self {
            LengthConstraint::AtMost(k) => len <= k,
            LengthConstraint::Exactly(k) => len == k,
            LengthConstraint::AtLeast(k) => len >= k,
            LengthConstraint::Unbounded => true,
        }
    }

    pub fn bound(self) -> Option<usize> {
        match self {
            LengthConstraint::AtMost(k)
            | LengthConstraint::Exactly(k)
            | LengthConstraint::AtLeast(k) => Some(k),
            LengthConstraint::Unbounded => None,
        }
    }

    /// The same constraint kind with a different bound; `Unbounded` stays.
    pub fn with_bound(self, k: usize) -> LengthConstraint {
        match self {
            LengthConstraint::AtMost(_) => LengthConstraint::AtMost(k),
            LengthConstraint::Exactly(_) => LengthConstraint::Exactly(k),
            LengthConstraint::AtLeast(_) => LengthConstraint::AtLeast(k),
            LengthConstraint::Unbounded => LengthConstraint::Unbounded,
        }
    }
}

impl fmt::Display for LengthConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthConstraint::AtMost(k) => write!(f, "le {k}"),
            LengthConstraint::Exactly(k) => write!(f, "eq {k}"),
            LengthConstraint::AtLeast(k) => write!(f, "ge {k}"),
            LengthConstraint::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for LengthConstraint {
    type Err = String;

    /// Accepts `le K`, `eq K`, `ge K` and `inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.as_slice() {
            ["inf"] => Ok(LengthConstraint::Unbounded),
            [kind, k] => {
                let k: usize = k.parse().map_err(|_| format!("bad bound {k:?}"))?;
                match *kind {
                    "le" => Ok(LengthConstraint::AtMost(k)),
                    "eq" => Ok(LengthConstraint::Exactly(k)),
                    "ge" => Ok(LengthConstraint::AtLeast(k)),
                    other => Err(format!("unknown constraint kind {other:?}")),
                }
            }
            _ => Err(format!("expected \"le|eq|ge K\" or \"inf\", got {s:?}")),
        }
    }
}

/// A graph, two terminal pairs and one length constraint per pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: Graph,
    pub s1: VertexId,
    pub t1: VertexId,
    pub s2: VertexId,
    pub t2: VertexId,
    pub c1: LengthConstraint,
    pub c2: LengthConstraint,
}

impl ProblemInstance {
    pub fn new(
        graph: Graph,
        (s1, t1): (VertexId, VertexId),
        (s2, t2): (VertexId, VertexId),
        c1: LengthConstraint,
        c2: LengthConstraint,
    ) -> crate::Result<ProblemInstance> {
        let n = graph.vertex_count();
        if let Some(&vertex) = [s1, t1, s2, t2].iter().find(|&&v| v >= n) {
            return Err(Error::TerminalOutOfRange { vertex, n });
        }
        Ok(ProblemInstance {
            graph,
            s1,
            t1,
            s2,
            t2,
            c1,
            c2,
        })
    }

    /// Exchanges the roles of the two pairs.
    pub fn swapped(&self) -> ProblemInstance {
        ProblemInstance {
            graph: self.graph.clone(),
            s1: self.s2,
            t1: self.t2,
            s2: self.s1,
            t2: self.t1,
            c1: self.c2,
            c2: self.c1,
        }
    }

    pub fn case(&self) -> CaseId {
        classify_case(self.c1, self.c2)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        out.push_str(&format!(
            "terminals {} {} {} {}\n",
            self.s1, self.t1, self.s2, self.t2
        ));
        out.push_str(&format!("c1 {}\nc2 {}\n", self.c1, self.c2));
        out
    }
}

/// Parses an instance file: graph block, `terminals s1 t1 s2 t2`, `c1 ...`, `c2 ...`.
pub fn parse_instance(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut cursor = LineCursor::new(text);
    let graph = parse_graph_block(&mut cursor)?;
    let n = graph.vertex_count();

    let (line, terminals) = cursor.expect_content("terminals line")?;
    let tokens: Vec<&str> = terminals.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "terminals" {
        return Err(ParseError::malformed(
            line,
            "expected \"terminals s1 t1 s2 t2\"",
        ));
    }
    let mut ends = [0; 4];
    for (slot, token) in ends.iter_mut().zip(&tokens[1..]) {
        let v = parse_usize(token, line)?;
        if v >= n {
            return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
        }
        *slot = v;
    }

    let mut read_constraint = |label: &str| -> Result<LengthConstraint, ParseError> {
        let (line, text) = cursor.expect_content(&format!("{label} constraint line"))?;
        let rest = text
            .strip_prefix(label)
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| {
                ParseError::malformed(
                    line,
                    format!("expected \"{label} <le|eq|ge> K\" or \"{label} inf\""),
                )
            })?;
        rest.parse()
            .map_err(|e: String| ParseError::malformed(line, e))
    };
    let c1 = read_constraint("c1")?;
    let c2 = read_constraint("c2")?;
    if let Some((line, _)) = cursor.next_content() {
        return Err(ParseError::malformed(line, "trailing content after c2"));
    }
    Ok(ProblemInstance {
        graph,
        s1: ends[0],
        t1: ends[1],
        s2: ends[2],
        t2: ends[3],
        c1,
        c2,
    })
}

/// An edge-disjoint pair meeting both constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub p1: Path,
    pub p2: Path,
}

impl Solution {
    pub fn swapped(self) -> Solution {
        Solution {
            p1: self.p2,
            p2: self.p1,
        }
    }

    /// Two lines, one space-separated vertex sequence each.
    pub fn to_text(&self) -> String {
        format!("{}\n{}\n", self.p1.to_line(), self.p2.to_line())
    }
}

/// Contents of a solution file: a pair of vertex sequences, optionally after a
/// `YES` line as printed by `solve`, or the word `NO`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionFile {
    Paths(Vec<VertexId>, Vec<VertexId>),
    No,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut cursor = LineCursor::new(text);
    let (mut line, mut first) = cursor.expect_content("first path line or NO")?;
    if first == "YES" {
        (line, first) = cursor.expect_content("first path line")?;
    }
    if first == "NO" {
        if let Some((line, _)) = cursor.next_content() {
            return Err(ParseError::malformed(line, "nothing may follow NO"));
        }
        return Ok(SolutionFile::No);
    }
    let read = |line: usize, text: &str| -> Result<Vec<VertexId>, ParseError> {
        text.split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect()
    };
    let p1 = read(line, first)?;
    let (line2, second) = cursor.expect_content("second path line")?;
    let p2 = read(line2, second)?;
    if let Some((line, _)) = cursor.next_content() {
        return Err(ParseError::malformed(
            line,
            "a solution has exactly two lines",
        ));
    }
    Ok(SolutionFile::Paths(p1, p2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    ShortShort,
    ShortExact,
    ExactExact,
    ShortUnbounded,
    ExactUnbounded,
    ShortLong,
    ExactLong,
    OpenLongUnbounded,
    OpenLongLong,
    Unconstrained,
}

impl CaseKind {
    pub const ALL: [CaseKind; 10] = [
        CaseKind::ShortShort,
        CaseKind::ShortExact,
        CaseKind::ExactExact,
        CaseKind::ShortUnbounded,
        CaseKind::ExactUnbounded,
        CaseKind::ShortLong,
        CaseKind::ExactLong,
        CaseKind::OpenLongUnbounded,
        CaseKind::OpenLongLong,
        CaseKind::Unconstrained,
    ];

    /// The seven cases with a random-partition solver.
    pub fn is_supported(self) -> bool {
        !matches!(
            self,
            CaseKind::OpenLongUnbounded | CaseKind::OpenLongLong | CaseKind::Unconstrained
        )
    }

    /// Normalized constraints of this case with bounds `k1`, `k2`.
    pub fn constraints(self, k1: usize, k2: usize) -> (LengthConstraint, LengthConstraint) {
        use LengthConstraint::*;
        match self {
            CaseKind::ShortShort => (AtMost(k1), AtMost(k2)),
            CaseKind::ShortExact => (AtMost(k1), Exactly(k2)),
            CaseKind::ExactExact => (Exactly(k1), Exactly(k2)),
            CaseKind::ShortUnbounded => (AtMost(k1), Unbounded),
            CaseKind::ExactUnbounded => (Exactly(k1), Unbounded),
            CaseKind::ShortLong => (AtMost(k1), AtLeast(k2)),
            CaseKind::ExactLong => (Exactly(k1), AtLeast(k2)),
            CaseKind::OpenLongUnbounded => (AtLeast(k1), Unbounded),
            CaseKind::OpenLongLong => (AtLeast(k1), AtLeast(k2)),
            CaseKind::Unconstrained => (Unbounded, Unbounded),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::ShortShort => "short-short",
            CaseKind::ShortExact => "short-exact",
            CaseKind::ExactExact => "exact-exact",
            CaseKind::ShortUnbounded => "short-unbounded",
            CaseKind::ExactUnbounded => "exact-unbounded",
            CaseKind::ShortLong => "short-long",
            CaseKind::ExactLong => "exact-long",
            CaseKind::OpenLongUnbounded => "long-unbounded",
            CaseKind::OpenLongLong => "long-long",
            CaseKind::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown case {s:?}"))
    }
}

/// A normalized case and whether the pairs had to be exchanged to reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseId {
    pub kind: CaseKind,
    pub swapped: bool,
}

/// Normalizes `(c1, c2)`: the short or exact constraint goes first, an
/// at-least constraint second when the other one is short or exact.
pub fn classify_case(c1: LengthConstraint, c2: LengthConstraint) -> CaseId {
    use LengthConstraint::*;
    let (kind, swapped) = match (c1, c2) {
        (AtMost(_), AtMost(_)) => (CaseKind::ShortShort, false),
        (AtMost(_), Exactly(_)) => (CaseKind::ShortExact, false),
        (Exactly(_), AtMost(_)) => (CaseKind::ShortExact, true),
        (Exactly(_), Exactly(_)) => (CaseKind::ExactExact, false),
        (AtMost(_), Unbounded) => (CaseKind::ShortUnbounded, false),
        (Unbounded, AtMost(_)) => (CaseKind::ShortUnbounded, true),
        (Exactly(_), Unbounded) => (CaseKind::ExactUnbounded, false),
        (Unbounded, Exactly(_)) => (CaseKind::ExactUnbounded, true),
        (AtMost(_), AtLeast(_)) => (CaseKind::ShortLong, false),
        (AtLeast(_), AtMost(_)) => (CaseKind::ShortLong, true),
        (Exactly(_), AtLeast(_)) => (CaseKind::ExactLong, false),
        (AtLeast(_), Exactly(_)) => (CaseKind::ExactLong, true),
        (AtLeast(_), Unbounded) => (CaseKind::OpenLongUnbounded, false),
        (Unbounded, AtLeast(_)) => (CaseKind::OpenLongUnbounded, true),
        (AtLeast(_), AtLeast(_)) => (CaseKind::OpenLongLong, false),
        (Unbounded, Unbounded) => (CaseKind::Unconstrained, false),
    };
    CaseId { kind, swapped }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::First => "1",
            Which::Second => "2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongEndpoint {
        which: Which,
        expected: (VertexId, VertexId),
        actual: (VertexId, VertexId),
    },
    SharedEdge(EdgeId),
    LengthViolation {
        which: Which,
        actual: usize,
        constraint: LengthConstraint,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongEndpoint {
                which,
                expected,
                actual,
            } => write!(
                f,
                "WrongEndpoint path {which}: expected {}->{}, got {}->{}",
                expected.0, expected.1, actual.0, actual.1
            ),
            Violation::SharedEdge(e) => write!(f, "SharedEdge {e}"),
            Violation::LengthViolation {
                which,
                actual,
                constraint,
            } => {
                write!(
                    f,
                    "LengthViolation path {which}: length {actual} violates {constraint}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks endpoints, edge-disjointness and both length constraints, listing
/// every violation. Structurally broken paths are an error instead.
pub fn verify_solution(inst: &ProblemInstance, p1: &Path, p2: &Path) -> Result<Verdict, PathError> {
    p1.validate_in(&inst.graph)?;
    p2.validate_in(&inst.graph)?;
    let mut violations = Vec::new();
    for (which, p, (s, t), c) in [
        (Which::First, p1, (inst.s1, inst.t1), inst.c1),
        (Which::Second, p2, (inst.s2, inst.t2), inst.c2),
    ] {
        if (p.source(), p.target()) != (s, t) {
            violations.push(Violation::WrongEndpoint {
                which,
                expected: (s, t),
                actual: (p.source(), p.target()),
            });
        }
        if !c.satisfied_by(p.len()) {
            violations.push(Violation::LengthViolation {
                which,
                actual: p.len(),
                constraint: c,
            });
        }
    }
    let first: HashSet<EdgeId> = p1.edges().iter().copied().collect();
    violations.extend(
        p2.edges()
            .iter()
            .filter(|e| first.contains(e))
            .map(|&e| Violation::SharedEdge(e)),
    );
    Ok(if violations.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(violations)
    })
}
