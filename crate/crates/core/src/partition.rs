//! Integer partitions and the partition classes that show up around Gordon's
//! identities: all partitions, (r,i)-neighborly partitions, the Gordon classes
//! `B_{r,i}` / `A_{r,i}` and the distinct-part class `R_{r,i}`.
//!
//! Enumeration order is lexicographically decreasing on the part sequence,
//! so `5` comes before `4+1`, which comes before `3+2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    /// Sorts the given parts into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Builds the partition with `mult[j]` copies of part `j` (index 0 ignored).
    pub fn from_multiplicities(mult: &[usize]) -> Self {
        let mut parts = Vec::new();
        for j in (1..mult.len()).rev() {
            parts.extend(std::iter::repeat_n(j, mult[j]));
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned, `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Multiplicity table indexed by part value, with two trailing zero
    /// slots so that `m[largest + 1]` is always addressable.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.largest_part() + 2];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Distinct part values, largest first.
    pub fn distinct_parts(&self) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.dedup();
        v
    }

    /// `(-1)^{ℓ(λ)}`.
    pub fn sign(&self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Comma-separated form, e.g. `2,1,1,1`. The empty partition is `""`.
    pub fn to_csv(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let s = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+");
        f.write_str(&s)
    }
}

/// Parses `2,1,1,1` (also accepts `2+1+1+1`). Empty input or `()` is the
/// empty partition. Parts must already be weakly decreasing.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let parts = s
            .split([',', '+'])
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Which reading of neighborliness to use.
///
/// `DefinitionConditions` applies the three written conditions with windows
/// read off the partition itself (so at level 1 a window may use all `i`
/// ones). `InducedNoIsolated` asks that the vertex-induced sub-hypergraph of
/// the infinite hypergraph on `V(λ)` has no isolated vertex, where level-1
/// windows use at most `i-1` ones. They differ for some `λ` when `i < r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    #[default]
    #[serde(rename = "induced")]
    InducedNoIsolated,
    #[serde(rename = "definition")]
    DefinitionConditions,
}

impl Interpretation {
    pub const ALL: [Interpretation; 2] = [
        Interpretation::InducedNoIsolated,
        Interpretation::DefinitionConditions,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::InducedNoIsolated => "induced",
            Interpretation::DefinitionConditions => "definition",
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Interpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induced" => Ok(Self::InducedNoIsolated),
            "definition" => Ok(Self::DefinitionConditions),
            other => Err(Error::InvalidArgument(format!(
                "unknown interpretation {other:?} (expected induced|definition)"
            ))),
        }
    }
}

/// A family of partitions, parametrised by `(r, i)` where relevant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum PartitionClass {
    All,
    Neighborly { r: usize, i: usize },
    /// `b_j - b_{j+r-1} >= 2` and at most `i-1` parts equal to 1.
    GordonB { r: usize, i: usize },
    /// Parts not congruent to `0, ±i (mod 2r+1)`.
    GordonA { r: usize, i: usize },
    /// Distinct parts, each congruent to `0, ±i (mod 2r+1)`.
    DistinctR { r: usize, i: usize },
}

/// Checks `1 <= i <= r`.
pub fn check_ri(r: usize, i: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::InvalidParameters { r, i, reason: "i must be at least 1" });
    }
    if i > r {
        return Err(Error::InvalidParameters { r, i, reason: "i must not exceed r" });
    }
    Ok(())
}

fn check_gordon(r: usize, i: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameters { r, i, reason: "Gordon classes need r >= 2" });
    }
    check_ri(r, i)
}

/// True when `part ≡ 0, i or -i (mod 2r+1)`.
pub fn in_residue_set(part: usize, r: usize, i: usize) -> bool {
    let modulus = 2 * r + 1;
    let res = part % modulus;
    res == 0 || res == i % modulus || res == (modulus - i % modulus) % modulus
}

impl PartitionClass {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PartitionClass::All => Ok(()),
            PartitionClass::Neighborly { r, i } | PartitionClass::DistinctR { r, i } => {
                check_ri(r, i)
            }
            PartitionClass::GordonB { r, i } | PartitionClass::GordonA { r, i } => {
                check_gordon(r, i)
            }
        }
    }

    /// Membership predicate. `interp` only matters for `Neighborly`.
    pub fn contains(&self, lambda: &Partition, interp: Interpretation) -> Result<bool> {
        self.validate()?;
        Ok(match *self {
            PartitionClass::All => true,
            PartitionClass::Neighborly { r, i } => is_neighborly(lambda, r, i, interp)?,
            PartitionClass::GordonB { r, i } => is_gordon_b(lambda, r, i),
            PartitionClass::GordonA { r, i } => {
                lambda.parts().iter().all(|&p| !in_residue_set(p, r, i))
            }
            PartitionClass::DistinctR { r, i } => {
                lambda.parts().windows(2).all(|w| w[0] != w[1])
                    && lambda.parts().iter().all(|&p| in_residue_set(p, r, i))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PartitionClass::All => "all",
            PartitionClass::Neighborly { .. } => "neighborly",
            PartitionClass::GordonB { .. } => "gordon-b",
            PartitionClass::GordonA { .. } => "gordon-a",
            PartitionClass::DistinctR { .. } => "distinct-r",
        }
    }
}

fn is_gordon_b(lambda: &Partition, r: usize, i: usize) -> bool {
    let b = lambda.parts();
    let gaps_ok = b.windows(r).all(|w| w[0] - w[r - 1] >= 2);
    gaps_ok && lambda.multiplicity(1) < i
}

/// `m(1) <= i` and `m(j) <= r` for every other part.
pub fn satisfies_multiplicity_bounds(lambda: &Partition, r: usize, i: usize) -> bool {
    let m = lambda.multiplicities();
    m.iter()
        .enumerate()
        .skip(1)
        .all(|(j, &c)| if j == 1 { c <= i } else { c <= r })
}

/// Whether some length-`r` window `(ℓ+1)^{r-s} ℓ^s` with `1 <= s <= r` sits
/// inside the multiset `m`, restricted to `s` in `s_range`.
fn window_exists(m: &[usize], level: usize, r: usize, s_range: std::ops::RangeInclusive<usize>) -> bool {
    let here = m.get(level).copied().unwrap_or(0);
    let above = m.get(level + 1).copied().unwrap_or(0);
    s_range.into_iter().any(|s| s <= here && r - s <= above)
}

/// The written conditions 1-3, evaluated on part values.
fn satisfies_definition(lambda: &Partition, r: usize, i: usize) -> bool {
    if !satisfies_multiplicity_bounds(lambda, r, i) {
        return false;
    }
    let m = lambda.multiplicities();
    let ones_saturated = m[1] == i;
    lambda.distinct_parts().into_iter().all(|j| {
        if j == 1 && ones_saturated {
            return true;
        }
        // window with ℓ = j (contains j since s >= 1)
        window_exists(&m, j, r, 1..=r)
            // window with ℓ + 1 = j (contains j when r - s >= 1)
            || (j >= 2 && window_exists(&m, j - 1, r, 1..=r.saturating_sub(1)))
    })
}

/// Decides whether `lambda` is `(r,i)`-neighborly under `interp`.
pub fn is_neighborly(lambda: &Partition, r: usize, i: usize, interp: Interpretation) -> Result<bool> {
    check_ri(r, i)?;
    match interp {
        Interpretation::DefinitionConditions => Ok(satisfies_definition(lambda, r, i)),
        Interpretation::InducedNoIsolated => {
            if !satisfies_multiplicity_bounds(lambda, r, i) {
                return Ok(false);
            }
            let h = hypergraph::build_h_lambda(lambda, r, i, interp)?;
            Ok(h.isolated_vertices().is_empty())
        }
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    enumerate_bounded(n, |_| usize::MAX)
}

/// Partitions of `n` where part `j` occurs at most `bound(j)` times, in the
/// same order as [`enumerate_partitions`].
pub fn enumerate_bounded(n: usize, bound: impl Fn(usize) -> usize) -> Vec<Partition> {
    fn go(
        remaining: usize,
        max_part: usize,
        run: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
        bound: &dyn Fn(usize) -> usize,
    ) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            let repeat = current.last() == Some(&p);
            let count = if repeat { run + 1 } else { 1 };
            if count > bound(p) {
                continue;
            }
            current.push(p);
            go(remaining - p, p, count, current, out, bound);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, 0, &mut Vec::new(), &mut out, &bound);
    out
}

/// Members of `class` among the partitions of `n`.
pub fn enumerate_class(n: usize, class: PartitionClass, interp: Interpretation) -> Result<Vec<Partition>> {
    class.validate()?;
    let candidates = match class {
        PartitionClass::Neighborly { r, i } => {
            enumerate_bounded(n, |j| if j == 1 { i } else { r })
        }
        PartitionClass::DistinctR { .. } => enumerate_bounded(n, |_| 1),
        _ => enumerate_partitions(n),
    };
    let mut out = Vec::with_capacity(candidates.len());
    for lambda in candidates {
        if class.contains(&lambda, interp)? {
            out.push(lambda);
        }
    }
    Ok(out)
}

pub fn count_class(n: usize, class: PartitionClass, interp: Interpretation) -> Result<usize> {
    Ok(enumerate_class(n, class, interp)?.len())
}

/// `Σ_{λ ∈ R_{r,i}(n)} (-1)^{ℓ(λ)}`.
#[allow(non_snake_case)]
pub fn signed_count_R(n: usize, r: usize, i: usize) -> Result<i64> {
    let members = enumerate_class(n, PartitionClass::DistinctR { r, i }, Interpretation::default())?;
    Ok(members.iter().map(Partition::sign).sum())
}
