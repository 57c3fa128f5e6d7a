//! Finite hypergraphs, the hypergraph `H_λ` attached to a partition and
//! finite truncations of the infinite hypergraph `H^∞_{r,i}`.
//!
//! Vertices of the partition hypergraphs are pairs `x_{j,k}`: level `j` is a
//! part value, copy `k` counts its occurrences. Edges are stored as sorted
//! vertex lists and the edge set is deduplicated.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{check_ri, satisfies_multiplicity_bounds, Interpretation, Partition};

/// The vertex `x_{level,copy}`. Ordered by `(level, copy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Vertex {
    pub level: usize,
    pub copy: usize,
}

impl Vertex {
    pub const fn new(level: usize, copy: usize) -> Self {
        Self { level, copy }
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((level, copy): (usize, usize)) -> Self {
        Self { level, copy }
    }
}

impl From<Vertex> for (usize, usize) {
    fn from(v: Vertex) -> Self {
        (v.level, v.copy)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{},{}}}", self.level, self.copy)
    }
}

/// A nonempty sorted set of vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge<V: Ord>(Vec<V>);

impl<V: Ord + Clone> Edge<V> {
    pub fn new(vertices: impl IntoIterator<Item = V>) -> Self {
        let mut v: Vec<V> = vertices.into_iter().collect();
        v.sort();
        v.dedup();
        Self(v)
    }

    pub fn vertices(&self) -> &[V] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Edge<V>) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }
}

/// A finite hypergraph. Every edge is a nonempty subset of the vertex set;
/// simplicity is not enforced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "V: Serialize + Ord",
    deserialize = "V: Deserialize<'de> + Ord + Clone"
))]
#[serde(try_from = "RawHypergraph<V>")]
pub struct Hypergraph<V: Ord = Vertex> {
    vertices: BTreeSet<V>,
    edges: BTreeSet<Edge<V>>,
}

#[derive(Deserialize)]
struct RawHypergraph<V: Ord> {
    vertices: Vec<V>,
    edges: Vec<Vec<V>>,
}

impl<V: Ord + Clone> TryFrom<RawHypergraph<V>> for Hypergraph<V> {
    type Error = Error;

    fn try_from(raw: RawHypergraph<V>) -> Result<Self> {
        Hypergraph::new(raw.vertices, raw.edges)
    }
}

impl<V: Ord + Clone> Default for Hypergraph<V> {
    fn default() -> Self {
        Self { vertices: BTreeSet::new(), edges: BTreeSet::new() }
    }
}

impl<V: Ord + Clone> Hypergraph<V> {
    pub fn new<E>(vertices: impl IntoIterator<Item = V>, edges: impl IntoIterator<Item = E>) -> Result<Self>
    where
        E: IntoIterator<Item = V>,
    {
        let vertices: BTreeSet<V> = vertices.into_iter().collect();
        let mut edge_set = BTreeSet::new();
        for e in edges {
            let e = Edge::new(e);
            if e.is_empty() {
                return Err(Error::MalformedHypergraph("empty edge".into()));
            }
            if !e.vertices().iter().all(|v| vertices.contains(v)) {
                return Err(Error::MalformedHypergraph(
                    "edge uses a vertex outside the vertex set".into(),
                ));
            }
            edge_set.insert(e);
        }
        Ok(Self { vertices, edges: edge_set })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge<V>> {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// No edge is contained in another one.
    pub fn is_simple(&self) -> bool {
        let edges: Vec<&Edge<V>> = self.edges.iter().collect();
        for (a, ea) in edges.iter().enumerate() {
            for (b, eb) in edges.iter().enumerate() {
                if a != b && ea.is_subset_of(eb) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every edge has exactly `k` vertices.
    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn degrees(&self) -> BTreeMap<V, usize> {
        let mut deg: BTreeMap<V, usize> = self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for e in &self.edges {
            for v in e.vertices() {
                *deg.get_mut(v).expect("edge vertex in vertex set") += 1;
            }
        }
        deg
    }

    pub fn isolated_vertices(&self) -> BTreeSet<V> {
        self.degrees()
            .into_iter()
            .filter(|(_, d)| *d == 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Keeps the vertices in `subset` and every edge lying entirely inside it.
    pub fn induced_on_vertices(&self, subset: &BTreeSet<V>) -> Result<Self> {
        if !subset.is_subset(&self.vertices) {
            return Err(Error::MalformedHypergraph(
                "vertex subset is not contained in the hypergraph".into(),
            ));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.vertices().iter().all(|v| subset.contains(v)))
            .cloned()
            .collect();
        Ok(Self { vertices: subset.clone(), edges })
    }

    /// The edge-induced sub-hypergraph: the given edges and the union of
    /// their vertices.
    pub fn spanned_by_edges<'a>(&self, edges: impl IntoIterator<Item = &'a Edge<V>>) -> Result<Self>
    where
        V: 'a,
    {
        let mut chosen = BTreeSet::new();
        for e in edges {
            if !self.edges.contains(e) {
                return Err(Error::MalformedHypergraph("edge is not an edge of the hypergraph".into()));
            }
            chosen.insert(e.clone());
        }
        let vertices = chosen
            .iter()
            .flat_map(|e: &Edge<V>| e.vertices().iter().cloned())
            .collect();
        Ok(Self { vertices, edges: chosen })
    }

    /// Vertex list in canonical order together with one coverage bitmask per
    /// edge (edges in canonical order).
    pub(crate) fn edge_masks(&self) -> Result<(Vec<V>, Vec<u64>)> {
        if self.vertices.len() > 64 {
            return Err(Error::SizeLimit { what: "vertex", count: self.vertices.len(), limit: 64 });
        }
        let order: Vec<V> = self.vertices.iter().cloned().collect();
        let masks = self
            .edges
            .iter()
            .map(|e| {
                e.vertices().iter().fold(0u64, |m, v| {
                    let idx = order.binary_search(v).expect("edge vertex in vertex set");
                    m | (1 << idx)
                })
            })
            .collect();
        Ok((order, masks))
    }
}

impl<V: Ord + Clone + fmt::Display> Hypergraph<V> {
    /// ASCII PAOH drawing: one row per vertex, one column per edge. `*`
    /// marks an incidence, `|` joins incidences within a column.
    pub fn render_paoh(&self) -> String {
        let rows: Vec<&V> = self.vertices.iter().collect();
        let labels: Vec<String> = rows.iter().map(|v| v.to_string()).collect();
        let width = labels.iter().map(String::len).max().unwrap_or(0);
        let spans: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| {
                let idx: Vec<usize> = e
                    .vertices()
                    .iter()
                    .map(|v| rows.iter().position(|r| *r == v).expect("vertex row"))
                    .collect();
                (*idx.iter().min().unwrap(), *idx.iter().max().unwrap())
            })
            .collect();
        let mut out = String::new();
        for (row, label) in labels.iter().enumerate() {
            out.push_str(&format!("{label:<width$} "));
            for (e, &(lo, hi)) in self.edges.iter().zip(&spans) {
                let c = if e.contains(rows[row]) {
                    '*'
                } else if row > lo && row < hi {
                    '|'
                } else {
                    '.'
                };
                out.push(' ');
                out.push(c);
            }
            out.push('\n');
        }
        out
    }
}

/// Positive integer weights on the vertices of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment<V: Ord = Vertex> {
    weights: BTreeMap<V, usize>,
}

impl<V: Ord + Clone> WeightAssignment<V> {
    pub fn new(weights: BTreeMap<V, usize>) -> Result<Self> {
        if weights.values().any(|&w| w == 0) {
            return Err(Error::InvalidWeight("weights must be positive".into()));
        }
        Ok(Self { weights })
    }

    /// Checks that every vertex of `h` has a weight.
    pub fn covers(&self, h: &Hypergraph<V>) -> Result<()> {
        if h.vertices().iter().all(|v| self.weights.contains_key(v)) {
            Ok(())
        } else {
            Err(Error::InvalidWeight("some vertex has no weight".into()))
        }
    }

    pub fn weight(&self, v: &V) -> usize {
        self.weights[v]
    }

    pub fn weight_of<'a>(&self, vs: impl IntoIterator<Item = &'a V>) -> usize
    where
        V: 'a,
    {
        vs.into_iter().map(|v| self.weight(v)).sum()
    }
}

impl WeightAssignment<Vertex> {
    /// `x_{j,k} ↦ j` on the vertices of `h`.
    pub fn by_level(h: &Hypergraph<Vertex>) -> Self {
        Self { weights: h.vertices().iter().map(|v| (*v, v.level)).collect() }
    }
}

/// `V(λ) = { x_{j,k} : j a part, 1 <= k <= m_λ(j) }`.
pub fn partition_vertices(lambda: &Partition) -> BTreeSet<Vertex> {
    lambda
        .multiplicities()
        .iter()
        .enumerate()
        .flat_map(|(j, &m)| (1..=m).map(move |k| Vertex::new(j, k)))
        .collect()
}

/// The window edge `(x_{ℓ,1..s}, x_{ℓ+1,1..r-s})`.
fn window_edge(level: usize, s: usize, r: usize) -> Vec<Vertex> {
    (1..=s)
        .map(|k| Vertex::new(level, k))
        .chain((1..=r - s).map(|k| Vertex::new(level + 1, k)))
        .collect()
}

fn special_edge(i: usize) -> Vec<Vertex> {
    (1..=i).map(|k| Vertex::new(1, k)).collect()
}

/// Levels `1..=max_level` of `H^∞_{r,i}`: copies `1..=i` at level 1 and
/// `1..=r` above; edges are `(x_{1,1..i})`, the windows at `ℓ = 1` with
/// `1 <= s <= i-1`, the windows at `ℓ >= 2` with `1 <= s <= r`, and the
/// all-equal window at the top level.
pub fn truncate_h_infinity(r: usize, i: usize, max_level: usize) -> Result<Hypergraph> {
    check_ri(r, i)?;
    if max_level == 0 {
        return Err(Error::InvalidArgument("max_level must be at least 1".into()));
    }
    let mut vertices: Vec<Vertex> = (1..=i).map(|k| Vertex::new(1, k)).collect();
    for j in 2..=max_level {
        vertices.extend((1..=r).map(|k| Vertex::new(j, k)));
    }
    let mut edges = vec![special_edge(i)];
    for level in 1..max_level {
        let s_max = if level == 1 { i - 1 } else { r };
        edges.extend((1..=s_max).map(|s| window_edge(level, s, r)));
    }
    if max_level >= 2 {
        edges.push(window_edge(max_level, r, r));
    }
    Hypergraph::new(vertices, edges)
}

/// The hypergraph attached to `lambda`.
///
/// Under `InducedNoIsolated` this is the sub-hypergraph of `H^∞_{r,i}`
/// induced on `V(λ)`. Under `DefinitionConditions` the edges are the windows
/// `(ℓ+1)^{r-s} ℓ^s` present in `λ` (any `1 <= s <= r`) plus `(x_{1,1..i})`
/// when `m(1) = i`; this version need not be simple.
pub fn build_h_lambda(lambda: &Partition, r: usize, i: usize, interp: Interpretation) -> Result<Hypergraph> {
    check_ri(r, i)?;
    if !satisfies_multiplicity_bounds(lambda, r, i) {
        return Err(Error::MultiplicityBound { partition: lambda.to_string(), r, i });
    }
    let vertices = partition_vertices(lambda);
    if lambda.is_empty() {
        return Ok(Hypergraph::empty());
    }
    match interp {
        Interpretation::InducedNoIsolated => {
            truncate_h_infinity(r, i, lambda.largest_part() + 1)?.induced_on_vertices(&vertices)
        }
        Interpretation::DefinitionConditions => {
            let m = lambda.multiplicities();
            let mut edges = Vec::new();
            if m[1] == i {
                edges.push(special_edge(i));
            }
            for level in lambda.distinct_parts() {
                for s in 1..=r {
                    if s <= m[level] && r - s <= m[level + 1] {
                        edges.push(window_edge(level, s, r));
                    }
                }
            }
            Hypergraph::new(vertices, edges)
        }
    }
}
