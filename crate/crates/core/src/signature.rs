//! The signature `δ(λ)`: the signed count `Σ (-1)^{|F|}` over edge subsets
//! `F` of `H_λ` whose union is the whole vertex set.
//!
//! Two routes are provided. [`signature_bruteforce`] walks all `2^{|E|}`
//! edge subsets and serves as the oracle. [`signature_fast`] uses the
//! vertex-side form of the same quantity,
//!
//! ```text
//! δ = (-1)^{|V|} · Σ_{W ⊆ V, W contains no edge} (-1)^{|W|},
//! ```
//!
//! and evaluates it level by level. Every edge of `H_λ` is a copy-prefix
//! `x_{ℓ,1..s} ∪ x_{ℓ+1,1..r-s}` (or `x_{1,1..i}`), so whether `W` contains
//! an edge only depends on `p_ℓ`, the length of the longest copy-prefix of
//! `W` at each level, and on consecutive pairs `(p_ℓ, p_{ℓ+1})`. The signed
//! number of subsets of a level with `m` copies whose prefix is exactly `p`
//! is `(-1)^p` for `p ∈ {m-1, m}` and zero otherwise (the copies above
//! `p+1` are free and cancel). The transfer over levels is `O(levels · r²)`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{build_h_lambda, Hypergraph};
use crate::partition::{check_ri, enumerate_class, is_neighborly, Interpretation, Partition, PartitionClass};
use crate::qseries::TruncatedSeries;

/// Default cap on the number of edges accepted by the brute-force routes.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignatureMethod {
    BruteForce,
    LevelDp,
}

impl SignatureMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SignatureMethod::BruteForce => "brute",
            SignatureMethod::LevelDp => "dp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureResult {
    pub value: i64,
    pub method: SignatureMethod,
    pub edge_count: usize,
    /// Number of spanning edge subsets; only known to the brute-force route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spanning_subset_count: Option<u64>,
}

pub fn signature_bruteforce<V: Ord + Clone>(h: &Hypergraph<V>) -> Result<SignatureResult> {
    signature_bruteforce_with_limit(h, BRUTE_FORCE_EDGE_LIMIT)
}

pub fn signature_bruteforce_with_limit<V: Ord + Clone>(h: &Hypergraph<V>, edge_limit: usize) -> Result<SignatureResult> {
    let edge_count = h.num_edges();
    if edge_count > edge_limit {
        return Err(Error::SizeLimit { what: "edge", count: edge_count, limit: edge_limit });
    }
    let (order, masks) = h.edge_masks()?;
    let full: u64 = if order.len() == 64 { u64::MAX } else { (1u64 << order.len()) - 1 };

    fn walk(masks: &[u64], full: u64, union: u64, odd: bool, value: &mut i64, spanning: &mut u64) {
        match masks.split_first() {
            None => {
                if union == full {
                    *value += if odd { -1 } else { 1 };
                    *spanning += 1;
                }
            }
            Some((&m, rest)) => {
                walk(rest, full, union, odd, value, spanning);
                walk(rest, full, union | m, !odd, value, spanning);
            }
        }
    }

    let (mut value, mut spanning) = (0i64, 0u64);
    walk(&masks, full, 0, false, &mut value, &mut spanning);
    Ok(SignatureResult {
        value,
        method: SignatureMethod::BruteForce,
        edge_count,
        spanning_subset_count: Some(spanning),
    })
}

/// Signed count of subsets of a level with `copies` elements whose longest
/// copy-prefix has length exactly `prefix`.
fn signed_prefix_weight(copies: usize, prefix: usize) -> i64 {
    let sign = if prefix.is_multiple_of(2) { 1 } else { -1 };
    if prefix == copies || prefix + 1 == copies {
        sign
    } else {
        0
    }
}

/// Whether a set with prefix lengths `(lo, hi)` on levels `(ℓ, ℓ+1)`
/// contains a window edge `x_{ℓ,1..s} ∪ x_{ℓ+1,1..r-s}` with `s` in
/// `1..=s_max`.
fn contains_window(lo: usize, hi: usize, r: usize, s_max: usize) -> bool {
    let s_min = 1.max(r.saturating_sub(hi));
    s_min <= s_max.min(lo)
}

/// `δ(λ)` by the level transfer described in the module docs.
pub fn signature_fast(lambda: &Partition, r: usize, i: usize, interp: Interpretation) -> Result<SignatureResult> {
    check_ri(r, i)?;
    if !is_neighborly(lambda, r, i, interp)? {
        return Err(Error::NotNeighborly { partition: lambda.to_string(), r, i });
    }
    let edge_count = build_h_lambda(lambda, r, i, interp)?.num_edges();
    if lambda.is_empty() {
        return Ok(SignatureResult { value: 1, method: SignatureMethod::LevelDp, edge_count, spanning_subset_count: None });
    }

    let m = lambda.multiplicities();
    let top = lambda.largest_part();
    let level_one_s_max = match interp {
        Interpretation::InducedNoIsolated => i - 1,
        Interpretation::DefinitionConditions => r,
    };
    let special_present = m[1] == i;

    // dp[p] = signed weight of the admissible choices on levels 1..=ℓ with p_ℓ = p
    let mut dp: Vec<i64> = (0..=m[1])
        .map(|p| {
            if special_present && p >= i {
                0
            } else {
                signed_prefix_weight(m[1], p)
            }
        })
        .collect();
    for level in 1..=top {
        let next_copies = m[level + 1];
        let s_max = if level == 1 { level_one_s_max } else { r };
        let next: Vec<i64> = (0..=next_copies)
            .map(|hi| {
                let w = signed_prefix_weight(next_copies, hi);
                if w == 0 {
                    return 0;
                }
                let total: i64 = dp
                    .iter()
                    .enumerate()
                    .filter(|&(lo, _)| !contains_window(lo, hi, r, s_max))
                    .map(|(_, &v)| v)
                    .sum();
                w * total
            })
            .collect();
        dp = next;
    }
    // level top+1 is empty, so dp has the single state p = 0
    let free_sum = dp[0];
    let sign = if lambda.len().is_multiple_of(2) { 1 } else { -1 };
    Ok(SignatureResult {
        value: sign * free_sum,
        method: SignatureMethod::LevelDp,
        edge_count,
        spanning_subset_count: None,
    })
}

/// `δ(λ)` by the requested route. The brute-force route runs on
/// [`build_h_lambda`] and also rejects non-neighborly input.
pub fn signature(lambda: &Partition, r: usize, i: usize, interp: Interpretation, method: SignatureMethod) -> Result<SignatureResult> {
    match method {
        SignatureMethod::LevelDp => signature_fast(lambda, r, i, interp),
        SignatureMethod::BruteForce => {
            if !is_neighborly(lambda, r, i, interp)? {
                return Err(Error::NotNeighborly { partition: lambda.to_string(), r, i });
            }
            signature_bruteforce(&build_h_lambda(lambda, r, i, interp)?)
        }
    }
}

/// `Σ_{λ ∈ N_{r,i}, |λ| <= N} δ(λ) q^{|λ|}`.
pub fn neighborly_signed_series(
    r: usize,
    i: usize,
    trunc: usize,
    interp: Interpretation,
    method: SignatureMethod,
) -> Result<TruncatedSeries> {
    check_ri(r, i)?;
    let coeffs = (0..=trunc)
        .into_par_iter()
        .map(|n| -> Result<BigInt> {
            let mut total = 0i64;
            for lambda in enumerate_class(n, PartitionClass::Neighborly { r, i }, interp)? {
                total += signature(&lambda, r, i, interp, method)?.value;
            }
            Ok(BigInt::from(total))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(coeffs))
}
