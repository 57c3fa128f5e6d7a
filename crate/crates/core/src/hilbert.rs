//! Edge ideals of finite simple hypergraphs and their weighted Hilbert
//! series, the graded algebra `P_{r,i}` built on `H^∞_{r,i}`, and the ideal
//! `J_{r,i}` whose polarization is the edge ideal of `H^∞_{r,i}`.
//!
//! Only univariate specialisations `v ↦ q^{w(v)}` are ever formed.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{truncate_h_infinity, Edge, Hypergraph, Vertex, WeightAssignment};
use crate::partition::{check_ri, Interpretation, PartitionClass};
use crate::qseries::{class_series, ClassWeighting, TruncatedSeries};
use crate::signature::{neighborly_signed_series, SignatureMethod, BRUTE_FORCE_EDGE_LIMIT};

/// Cap on the vertex count for the support-sum oracle.
pub const SUPPORT_VERTEX_LIMIT: usize = 25;

/// A monomial as a map from variable to positive exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "V: Serialize + Ord", deserialize = "V: Deserialize<'de> + Ord"))]
#[serde(transparent)]
pub struct Monomial<V: Ord> {
    exponents: BTreeMap<V, u32>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Self { exponents: BTreeMap::new() }
    }

    pub fn new(exponents: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in exponents {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Self { exponents: map }
    }

    /// The squarefree product of the given variables.
    pub fn squarefree(vars: impl IntoIterator<Item = V>) -> Self {
        Self::new(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.exponents.get(v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<V, u32> {
        &self.exponents
    }

    pub fn support(&self) -> BTreeSet<V> {
        self.exponents.keys().cloned().collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exponents.iter().all(|(v, &e)| other.exponent(v) >= e)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.exponents.clone();
        for (v, &e) in &other.exponents {
            let slot = out.entry(v.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { exponents: out }
    }

    pub fn weight(&self, w: impl Fn(&V) -> usize) -> usize {
        self.exponents.iter().map(|(v, &e)| w(v) * e as usize).sum()
    }
}

impl Monomial<usize> {
    /// `x_j^e ↦ x_{j,1} ⋯ x_{j,e}` for every variable.
    pub fn polarize(&self) -> Monomial<Vertex> {
        Monomial::squarefree(
            self.exponents
                .iter()
                .flat_map(|(&j, &e)| (1..=e as usize).map(move |k| Vertex::new(j, k))),
        )
    }
}

/// The squarefree ideal generated by the edge monomials of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "V: Serialize + Ord", deserialize = "V: Deserialize<'de> + Ord"))]
pub struct EdgeIdeal<V: Ord> {
    generators: Vec<Monomial<V>>,
}

impl<V: Ord + Clone> EdgeIdeal<V> {
    pub fn of(h: &Hypergraph<V>) -> Self {
        Self { generators: h.edges().iter().map(|e| Monomial::squarefree(e.vertices().iter().cloned())).collect() }
    }

    pub fn generators(&self) -> &[Monomial<V>] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial<V>) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

/// `S(v, -1)` specialised at `v ↦ q^{w(v)}`:
/// `Σ_{F ⊆ E} (-1)^{|F|} q^{w(∪F)}`, the numerator of the Hilbert series.
///
/// The union of any edge subset is the support of the lcm of its edge
/// monomials. Subsets whose union already weighs more than `N` are pruned.
pub fn hilbert_numerator_weighted<V: Ord + Clone>(
    h: &Hypergraph<V>,
    w: &WeightAssignment<V>,
    trunc: usize,
) -> Result<TruncatedSeries> {
    if !h.is_simple() {
        return Err(Error::NotSimple);
    }
    if h.num_edges() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::SizeLimit { what: "edge", count: h.num_edges(), limit: BRUTE_FORCE_EDGE_LIMIT });
    }
    w.covers(h)?;
    let (order, masks) = h.edge_masks()?;
    let weights: Vec<usize> = order.iter().map(|v| w.weight(v)).collect();
    let mask_weight = |m: u64| -> usize {
        let mut total = 0;
        let mut bits = m;
        while bits != 0 {
            total += weights[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        total
    };

    let mut coeffs = vec![0i64; trunc + 1];
    fn walk(
        masks: &[u64],
        union: u64,
        odd: bool,
        trunc: usize,
        coeffs: &mut [i64],
        mask_weight: &dyn Fn(u64) -> usize,
    ) {
        let wt = mask_weight(union);
        if wt > trunc {
            return;
        }
        match masks.split_first() {
            None => coeffs[wt] += if odd { -1 } else { 1 },
            Some((&m, rest)) => {
                walk(rest, union, odd, trunc, coeffs, mask_weight);
                walk(rest, union | m, !odd, trunc, coeffs, mask_weight);
            }
        }
    }
    walk(&masks, 0, false, trunc, &mut coeffs, &mask_weight);
    Ok(TruncatedSeries::from_coeffs(coeffs.into_iter().map(BigInt::from).collect()))
}

/// Weighted count of monomials outside `I(H)`.
///
/// A monomial avoids the ideal exactly when its support contains no edge,
/// so the series is `Σ_{S edge-free} ∏_{v ∈ S} q^{w(v)} / (1 - q^{w(v)})`.
pub fn quotient_series_by_support<V: Ord + Clone>(
    h: &Hypergraph<V>,
    w: &WeightAssignment<V>,
    trunc: usize,
) -> Result<TruncatedSeries> {
    if h.num_vertices() > SUPPORT_VERTEX_LIMIT {
        return Err(Error::SizeLimit { what: "vertex", count: h.num_vertices(), limit: SUPPORT_VERTEX_LIMIT });
    }
    w.covers(h)?;
    let (order, masks) = h.edge_masks()?;
    let weights: Vec<usize> = order.iter().map(|v| w.weight(v)).collect();
    let mut total = TruncatedSeries::zero(trunc);

    fn walk(
        idx: usize,
        support: u64,
        support_weight: usize,
        chosen: &mut Vec<usize>,
        weights: &[usize],
        masks: &[u64],
        trunc: usize,
        total: &mut TruncatedSeries,
    ) {
        if support_weight > trunc {
            return;
        }
        if idx == weights.len() {
            let mut term = TruncatedSeries::monomial(support_weight, BigInt::one(), trunc);
            for &wt in chosen.iter() {
                term.mul_inv_one_minus_qk_assign(wt);
            }
            *total = &*total + &term;
            return;
        }
        walk(idx + 1, support, support_weight, chosen, weights, masks, trunc, total);
        let with = support | (1 << idx);
        if masks.iter().all(|&e| e & with != e) {
            chosen.push(weights[idx]);
            walk(idx + 1, with, support_weight + weights[idx], chosen, weights, masks, trunc, total);
            chosen.pop();
        }
    }
    walk(0, 0, 0, &mut Vec::new(), &weights, &masks, trunc, &mut total);
    Ok(total)
}

/// Multiplies by `∏_v (1 - q^{w(v)})`.
pub fn times_vertex_product<V: Ord + Clone>(s: &TruncatedSeries, h: &Hypergraph<V>, w: &WeightAssignment<V>) -> TruncatedSeries {
    let mut out = s.clone();
    for v in h.vertices() {
        out.mul_one_minus_qk_assign(w.weight(v));
    }
    out
}

/// Divides by `(1 - q)^{ones} ∏_{2 <= j <= N} (1 - q^j)^{copies}`.
pub fn divide_by_level_product(s: &TruncatedSeries, ones: usize, copies: usize) -> TruncatedSeries {
    let mut out = s.clone();
    for _ in 0..ones {
        out.mul_inv_one_minus_qk_assign(1);
    }
    for j in 2..=out.trunc() {
        for _ in 0..copies {
            out.mul_inv_one_minus_qk_assign(j);
        }
    }
    out
}

/// Multiplies by `(1 - q)^{ones} ∏_{2 <= j <= N} (1 - q^j)^{copies}`.
pub fn multiply_by_level_product(s: &TruncatedSeries, ones: usize, copies: usize) -> TruncatedSeries {
    let mut out = s.clone();
    for _ in 0..ones {
        out.mul_one_minus_qk_assign(1);
    }
    for j in 2..=out.trunc() {
        for _ in 0..copies {
            out.mul_one_minus_qk_assign(j);
        }
    }
    out
}

/// The part of `H^∞_{r,i}` that can influence coefficients up to `q^N`:
/// levels `1..=N+1`, keeping only edges of weight at most `N`.
pub fn h_infinity_weight_window(r: usize, i: usize, trunc: usize) -> Result<Hypergraph> {
    let full = truncate_h_infinity(r, i, trunc + 1)?;
    let w = WeightAssignment::by_level(&full);
    let edges: Vec<Vec<Vertex>> = full
        .edges()
        .iter()
        .filter(|e| w.weight_of(e.vertices()) <= trunc)
        .map(|e| e.vertices().to_vec())
        .collect();
    Hypergraph::new(full.vertices().iter().copied(), edges)
}

/// `HP_{P_{r,i}}` from the edge-ideal numerator of `H^∞_{r,i}`.
pub fn hp_p_via_numerator(r: usize, i: usize, trunc: usize) -> Result<TruncatedSeries> {
    let h = h_infinity_weight_window(r, i, trunc)?;
    let w = WeightAssignment::by_level(&h);
    let numerator = hilbert_numerator_weighted(&h, &w, trunc)?;
    Ok(divide_by_level_product(&numerator, i, r))
}

/// `HP_{P_{r,i}}` from the signed neighborly series.
pub fn hp_p_via_signatures(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<TruncatedSeries> {
    let numerator = neighborly_signed_series(r, i, trunc, interp, SignatureMethod::LevelDp)?;
    Ok(divide_by_level_product(&numerator, i, r))
}

/// `HP_{P_{r,i}}` up to `q^N`.
///
/// The signature route is always computed. When the numerator route fits
/// under the edge cap it is computed as well and the two must agree.
pub fn hp_p_ri(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<TruncatedSeries> {
    check_ri(r, i)?;
    let by_signatures = hp_p_via_signatures(r, i, trunc, interp)?;
    match hp_p_via_numerator(r, i, trunc) {
        Ok(by_numerator) => {
            if let Some(n) = by_numerator.first_difference(&by_signatures) {
                return Err(Error::RouteMismatch {
                    n,
                    left: by_numerator.coeff(n).to_string(),
                    right: by_signatures.coeff(n).to_string(),
                });
            }
            Ok(by_signatures)
        }
        Err(Error::SizeLimit { .. }) => Ok(by_signatures),
        Err(e) => Err(e),
    }
}

/// Generators of `J_{r,i} = ⟨x_1^i, x_ℓ^s x_{ℓ+1}^{r-s} : 1 <= s <= r, ℓ >= 1⟩`
/// involving variables `x_1..x_{max_level}` only.
pub fn j_ideal_generators(r: usize, i: usize, max_level: usize) -> Result<Vec<Monomial<usize>>> {
    check_ri(r, i)?;
    let mut gens = vec![Monomial::new([(1, i as u32)])];
    for level in 1..=max_level {
        for s in 1..=r {
            if s < r && level + 1 > max_level {
                continue;
            }
            gens.push(Monomial::new([(level, s as u32), (level + 1, (r - s) as u32)]));
        }
    }
    Ok(gens)
}

/// Drops every generator divisible by another one.
pub fn minimal_generators<V: Ord + Clone>(gens: &[Monomial<V>]) -> Vec<Monomial<V>> {
    let mut uniq: Vec<Monomial<V>> = gens.to_vec();
    uniq.sort();
    uniq.dedup();
    uniq.iter()
        .filter(|g| !uniq.iter().any(|h| h != *g && h.divides(g)))
        .cloned()
        .collect()
}

/// `HP` of `K[x_1, x_2, …] / J_{r,i}` with `x_j` of weight `j`, which is the
/// generating series of `B_{r,i}(n)`.
pub fn hp_quotient_j(r: usize, i: usize, trunc: usize) -> Result<TruncatedSeries> {
    class_series(PartitionClass::GordonB { r, i }, trunc, Interpretation::default(), ClassWeighting::Count)
}

/// Edges of `H^∞_{r,i}` as squarefree monomials.
pub fn h_infinity_edge_monomials(r: usize, i: usize, max_level: usize) -> Result<BTreeSet<Monomial<Vertex>>> {
    let h = truncate_h_infinity(r, i, max_level)?;
    Ok(h.edges().iter().map(|e: &Edge<Vertex>| Monomial::squarefree(e.vertices().iter().copied())).collect())
}
