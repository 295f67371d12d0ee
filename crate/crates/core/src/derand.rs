//! Desk-scale universal families of edge colorings.
//!
//! An `(m, r)`-universal family is a set of m-bit colorings that realizes every
//! 0/1 pattern on every r-subset of positions. Iterating such a family in
//! place of random partitions makes a "no" answer definitive, because the
//! colorable edges of any one solution are colored correctly by some member.

use crate::constraints::ProblemInstance;
use crate::error::{Error, ParseError, Result};
use crate::graph::LineCursor;
use crate::partition::{solve, Mode, Outcome, SolveConfig};

/// Size bounds on the families this crate will construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalLimits {
    /// Largest ground set for the full `2^m` enumeration.
    pub max_enumeration_m: usize,
    /// Largest ground set for the greedy cover.
    pub max_greedy_m: usize,
    /// Largest strength for the greedy cover.
    pub max_greedy_r: usize,
}

impl Default for UniversalLimits {
    fn default() -> Self {
        UniversalLimits {
            max_enumeration_m: 20,
            max_greedy_m: 16,
            max_greedy_r: 4,
        }
    }
}

/// Members are bitmasks; bit `i` is the color-1 flag of position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalFamily {
    ground_size: usize,
    strength: usize,
    members: Vec<u64>,
}

impl UniversalFamily {
    pub fn new(ground_size: usize, strength: usize, members: Vec<u64>) -> Result<UniversalFamily> {
        if ground_size > 64 {
            return Err(Error::InvalidArgument(format!(
                "ground size {ground_size} exceeds 64"
            )));
        }
        if let Some(&bad) = members
            .iter()
            .find(|&&w| ground_size < 64 && w >> ground_size != 0)
        {
            return Err(Error::InvalidArgument(format!(
                "member {bad:#x} has bits outside the ground set of size {ground_size}"
            )));
        }
        Ok(UniversalFamily {
            ground_size,
            strength,
            members,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the family holds every coloring of the ground set.
    pub fn is_full_enumeration(&self) -> bool {
        self.ground_size < 64 && self.members.len() == 1 << self.ground_size
    }

    pub fn member_bits(&self, index: usize) -> Vec<bool> {
        let w = self.members[index];
        (0..self.ground_size).map(|i| w >> i & 1 == 1).collect()
    }

    /// `universal M R` followed by one bit string per member, position 0 first.
    pub fn to_text(&self) -> String {
        let mut out = format!("universal {} {}\n", self.ground_size, self.strength);
        for &w in &self.members {
            for i in 0..self.ground_size {
                out.push(if w >> i & 1 == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_universal_family(text: &str) -> Result<UniversalFamily> {
    let mut cursor = LineCursor::new(text);
    let (line, header) = cursor.expect_content("universal header")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (m, r) = match fields.as_slice() {
        ["universal", m, r] => (
            crate::graph::parse_usize(m, line)?,
            crate::graph::parse_usize(r, line)?,
        ),
        _ => return Err(ParseError::malformed(line, "expected `universal M R`").into()),
    };
    let mut members = Vec::new();
    while let Some((line, row)) = cursor.next_content() {
        let row = row.trim();
        if row.len() != m {
            return Err(ParseError::malformed(
                line,
                format!("expected {m} bits, found {}", row.len()),
            )
            .into());
        }
        let mut w = 0u64;
        for (i, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w |= 1 << i,
                other => {
                    return Err(
                        ParseError::malformed(line, format!("invalid bit {other:?}")).into(),
                    )
                }
            }
        }
        members.push(w);
    }
    UniversalFamily::new(m, r, members)
}

/// Index sets of all `r`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=m - (r - cur.len()) {
            cur.push(i);
            rec(i + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= m {
        rec(0, m, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pattern_on(w: u64, subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .fold(0, |p, (j, &pos)| p | ((w >> pos & 1) as usize) << j)
}

/// Full enumeration when `r >= m`, or when the greedy limits are exceeded but
/// the enumeration itself is small enough (it is universal for every `r`);
/// otherwise a greedy cover built by conditional expectations.
pub fn build_universal_family(
    m: usize,
    r: usize,
    limits: UniversalLimits,
) -> Result<UniversalFamily> {
    let greedy_ok = m <= limits.max_greedy_m && r <= limits.max_greedy_r;
    if r >= m || !greedy_ok {
        if m > limits.max_enumeration_m || m >= 64 {
            return Err(Error::LimitsExceeded { m, r });
        }
        return UniversalFamily::new(m, r.min(m), (0..1u64 << m).collect());
    }
    Ok(UniversalFamily {
        ground_size: m,
        strength: r,
        members: greedy_cover(m, r),
    })
}

/// Each new member fixes its bits one at a time, keeping the value that
/// maximizes the expected number of newly covered (subset, pattern) demands
/// when the remaining bits are fair coins; ties go to 0. A member therefore
/// covers at least a `2^-r` share of what is left, so the loop terminates.
fn greedy_cover(m: usize, r: usize) -> Vec<u64> {
    let sets = subsets(m, r);
    let patterns = 1usize << r;
    let mut uncovered = vec![true; sets.len() * patterns];
    let mut remaining = uncovered.len();
    let mut members = Vec::new();
    while remaining > 0 {
        let mut w = 0u64;
        for pos in 0..m {
            let score = |bit: u64| -> f64 {
                let cand = w | bit << pos;
                let mut total = 0.0;
                for (si, set) in sets.iter().enumerate() {
                    for p in 0..patterns {
                        if !uncovered[si * patterns + p] {
                            continue;
                        }
                        let mut free = 0;
                        let mut consistent = true;
                        for (j, &q) in set.iter().enumerate() {
                            if q > pos {
                                free += 1;
                            } else if (cand >> q & 1) as usize != p >> j & 1 {
                                consistent = false;
                                break;
                            }
                        }
                        if consistent {
                            total += 0.5f64.powi(free);
                        }
                    }
                }
                total
            };
            if score(1) > score(0) {
                w |= 1 << pos;
            }
        }
        for (si, set) in sets.iter().enumerate() {
            let slot = &mut uncovered[si * patterns + pattern_on(w, set)];
            if *slot {
                *slot = false;
                remaining -= 1;
            }
        }
        members.push(w);
    }
    members
}

/// Largest `C(m, r) * 2^r` that [`verify_universal`] will check.
pub const VERIFY_GUARD: u128 = 50_000_000;

/// Exhaustive check of the universality invariant at strength `min(r, m)`.
pub fn verify_universal(f: &UniversalFamily) -> Result<bool> {
    let m = f.ground_size;
    let r = f.strength.min(m);
    let demands = binomial(m, r) << r;
    if demands > VERIFY_GUARD {
        return Err(Error::GuardExceeded(format!(
            "universality check over {demands} demands (m={m}, r={r})"
        )));
    }
    let mut seen = vec![false; 1 << r];
    for set in subsets(m, r) {
        seen.iter_mut().for_each(|b| *b = false);
        for &w in &f.members {
            seen[pattern_on(w, &set)] = true;
        }
        if seen.iter().any(|&b| !b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`solve`] with colorings drawn from a universal family over the colorable edges.
pub fn derandomized_solve(inst: &ProblemInstance, config: &SolveConfig) -> Result<Outcome> {
    solve(
        inst,
        &SolveConfig {
            mode: Mode::Universal,
            ..*config
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(m: usize, r: usize, bits: &[&str]) -> UniversalFamily {
        let mut text = format!("universal {m} {r}\n");
        for b in bits {
            text.push_str(b);
            text.push('\n');
        }
        parse_universal_family(&text).unwrap()
    }

    #[test]
    fn full_enumeration_when_strength_covers_ground() {
        let f = build_universal_family(2, 2, UniversalLimits::default()).unwrap();
        assert_eq!(f.members(), &[0b00, 0b01, 0b10, 0b11]);
        assert!(f.is_full_enumeration());
        assert!(verify_universal(&f).unwrap());
        let empty = build_universal_family(0, 3, UniversalLimits::default()).unwrap();
        assert_eq!(empty.len(), 1);
    }

    #[test]
    fn greedy_strength_one_is_two_members() {
        let f = build_universal_family(3, 1, UniversalLimits::default()).unwrap();
        assert_eq!(f.members(), &[0b000, 0b111]);
    }

    #[test]
    fn greedy_families_verify() {
        for m in 1..=10 {
            for r in 0..=4.min(m) {
                let f = build_universal_family(m, r, UniversalLimits::default()).unwrap();
                assert!(verify_universal(&f).unwrap(), "m={m} r={r}");
                assert!(f.len() >= 1 << r.min(m));
            }
        }
        let f = build_universal_family(4, 2, UniversalLimits::default()).unwrap();
        assert!(f.len() >= 4);
    }

    #[test]
    fn greedy_beats_full_enumeration() {
        let f = build_universal_family(16, 4, UniversalLimits::default()).unwrap();
        assert!(verify_universal(&f).unwrap());
        assert!(f.len() < 1 << 12, "{}", f.len());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_universal(&family(2, 2, &["00", "10", "01", "11"])).unwrap());
        assert!(!verify_universal(&family(2, 2, &["00", "11"])).unwrap());
        assert!(verify_universal(&family(3, 1, &["000", "111"])).unwrap());
    }

    #[test]
    fn limits_are_enforced() {
        let limits = UniversalLimits::default();
        assert!(matches!(
            build_universal_family(100_000, 30, limits),
            Err(Error::LimitsExceeded { m: 100_000, r: 30 })
        ));
        assert!(matches!(
            build_universal_family(21, 5, limits),
            Err(Error::LimitsExceeded { .. })
        ));
        // past the greedy bounds but small enough to enumerate
        let f = build_universal_family(12, 6, limits).unwrap();
        assert!(f.is_full_enumeration());
        assert!(matches!(
            verify_universal(&UniversalFamily::new(60, 30, vec![0]).unwrap()),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let f = build_universal_family(5, 2, UniversalLimits::default()).unwrap();
        assert_eq!(parse_universal_family(&f.to_text()).unwrap(), f);
        assert!(parse_universal_family("universal 3 1\n0101\n").is_err());
        assert!(parse_universal_family("universal 2 1\n0x\n").is_err());
        assert!(parse_universal_family("family 2 1\n").is_err());
    }
}
