//! Coefficient-by-coefficient identity checks and their reports.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    hilbert_numerator_weighted, hp_p_via_signatures, hp_quotient_j, multiply_by_level_product,
    quotient_series_by_support, times_vertex_product,
};
use crate::hypergraph::{build_h_lambda, Edge, Hypergraph, WeightAssignment};
use crate::partition::{check_ri, enumerate_class, Interpretation, PartitionClass};
use crate::qseries::{
    andrews_gordon_product_side, andrews_gordon_sum_side, class_series, product_side, ClassWeighting, JsonInt,
    TruncatedSeries,
};
use crate::signature::{neighborly_signed_series, signature_bruteforce, signature_fast, SignatureMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// Signed neighborly series against `∏_{j ≡ 0,±i} (1 - q^j)`.
    Main,
    /// `B_{r,i}(n) = A_{r,i}(n)`.
    Gordon,
    /// Multisum against product.
    AndrewsGordon,
    /// Numerator/denominator form against the edge-free-support count on
    /// random simple hypergraphs.
    HilbertProp,
    /// `HP_{P_{r,i}} · (1-q)^{i-1} ∏_{j>=2} (1-q^j)^{r-1} = HP_{K[x]/J_{r,i}}`.
    Polarization,
    /// Level DP against brute-force signatures.
    DpVsBrute,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Main => "main",
            Identity::Gordon => "gordon",
            Identity::AndrewsGordon => "andrews-gordon",
            Identity::HilbertProp => "hilbert-prop",
            Identity::Polarization => "polarization",
            Identity::DpVsBrute => "dp-vs-brute",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub trunc: usize,
    pub interp: Interpretation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ReportParams {
    pub fn new(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Self {
        Self { r: Some(r), i: Some(i), trunc, interp, trials: None, seed: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub lhs: JsonInt,
    pub rhs: JsonInt,
    pub equal: bool,
}

/// Case-level tally for sweeps that check many objects per coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cases: usize,
    pub mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub params: ReportParams,
    /// One row per `n = 0..=trunc`.
    pub rows: Vec<CoefficientRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSummary>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    /// Builds the table from two series over `0..=params.trunc`.
    pub fn compare(
        identity: Identity,
        params: ReportParams,
        lhs: &TruncatedSeries,
        rhs: &TruncatedSeries,
        sweep: Option<SweepSummary>,
    ) -> Self {
        let rows: Vec<CoefficientRow> = (0..=params.trunc)
            .map(|n| {
                let (l, r) = (lhs.coeff(n).clone(), rhs.coeff(n).clone());
                CoefficientRow { n, equal: l == r, lhs: JsonInt(l), rhs: JsonInt(r) }
            })
            .collect();
        let first_failure = rows.iter().find(|row| !row.equal).map(|row| row.n);
        let sweep_ok = sweep.as_ref().is_none_or(|s| s.mismatches == 0);
        Self {
            identity,
            params,
            pass: first_failure.is_none() && sweep_ok,
            rows,
            sweep,
            first_failure,
            elapsed_ms: None,
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    /// Plain-text table followed by a `PASS` / `FAIL` line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = write!(out, "identity: {}", self.identity.as_str());
        if let (Some(r), Some(i)) = (p.r, p.i) {
            let _ = write!(out, " r={r} i={i}");
        }
        let _ = write!(out, " trunc={} interp={}", p.trunc, p.interp);
        if let Some(t) = p.trials {
            let _ = write!(out, " trials={t}");
        }
        if let Some(s) = p.seed {
            let _ = write!(out, " seed={s}");
        }
        out.push('\n');
        let width = self
            .rows
            .iter()
            .flat_map(|row| [row.lhs.0.to_string().len(), row.rhs.0.to_string().len()])
            .max()
            .unwrap_or(1)
            .max(3);
        let _ = writeln!(out, "{:>4}  {:>width$}  {:>width$}  ok", "n", "lhs", "rhs");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>4}  {:>width$}  {:>width$}  {}",
                row.n,
                row.lhs.0,
                row.rhs.0,
                if row.equal { "yes" } else { "NO" }
            );
        }
        if let Some(s) = &self.sweep {
            let _ = writeln!(out, "cases: {} mismatches: {}", s.cases, s.mismatches);
            if let Some(m) = &s.first_mismatch {
                let _ = writeln!(out, "first mismatch: {m}");
            }
        }
        if let Some(n) = self.first_failure {
            let row = &self.rows[n];
            let _ = writeln!(out, "first failing coefficient: q^{n}: {} != {}", row.lhs.0, row.rhs.0);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// Signed neighborly series (level DP) against the product side.
pub fn verify_main(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = neighborly_signed_series(r, i, trunc, interp, SignatureMethod::LevelDp)?;
    let rhs = product_side(r, i, trunc)?;
    Ok(VerificationReport::compare(Identity::Main, ReportParams::new(r, i, trunc, interp), &lhs, &rhs, None).timed(start))
}

pub fn verify_gordon(r: usize, i: usize, trunc: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let d = Interpretation::default();
    let b = class_series(PartitionClass::GordonB { r, i }, trunc, d, ClassWeighting::Count)?;
    let a = class_series(PartitionClass::GordonA { r, i }, trunc, d, ClassWeighting::Count)?;
    Ok(VerificationReport::compare(Identity::Gordon, ReportParams::new(r, i, trunc, d), &b, &a, None).timed(start))
}

pub fn verify_andrews_gordon(r: usize, i: usize, trunc: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let sum = andrews_gordon_sum_side(r, i, trunc)?;
    let product = andrews_gordon_product_side(r, i, trunc)?;
    let params = ReportParams::new(r, i, trunc, Interpretation::default());
    Ok(VerificationReport::compare(Identity::AndrewsGordon, params, &sum, &product, None).timed(start))
}

/// `HP_{P_{r,i}}` (signature route) times the polarization factor against
/// the `B_{r,i}` series.
pub fn verify_polarization(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<VerificationReport> {
    let start = Instant::now();
    check_ri(r, i)?;
    let hp_p = hp_p_via_signatures(r, i, trunc, interp)?;
    let lhs = multiply_by_level_product(&hp_p, i - 1, r - 1);
    let rhs = hp_quotient_j(r, i, trunc)?;
    Ok(VerificationReport::compare(Identity::Polarization, ReportParams::new(r, i, trunc, interp), &lhs, &rhs, None)
        .timed(start))
}

/// Every neighborly `λ` with `|λ| <= N`: level DP against brute force.
/// Rows carry the per-`n` sums; the sweep counts per-partition mismatches.
pub fn verify_dp_vs_brute(r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<VerificationReport> {
    let start = Instant::now();
    check_ri(r, i)?;
    let mut fast_sums = Vec::with_capacity(trunc + 1);
    let mut brute_sums = Vec::with_capacity(trunc + 1);
    let mut sweep = SweepSummary::default();
    for n in 0..=trunc {
        let (mut fs, mut bs) = (0i64, 0i64);
        for lambda in enumerate_class(n, PartitionClass::Neighborly { r, i }, interp)? {
            let fast = signature_fast(&lambda, r, i, interp)?.value;
            let brute = signature_bruteforce(&build_h_lambda(&lambda, r, i, interp)?)?.value;
            sweep.cases += 1;
            if fast != brute {
                sweep.mismatches += 1;
                sweep
                    .first_mismatch
                    .get_or_insert_with(|| format!("{lambda}: dp {fast}, brute {brute}"));
            }
            fs += fast;
            bs += brute;
        }
        fast_sums.push(BigInt::from(fs));
        brute_sums.push(BigInt::from(bs));
    }
    let lhs = TruncatedSeries::from_coeffs(fast_sums);
    let rhs = TruncatedSeries::from_coeffs(brute_sums);
    Ok(VerificationReport::compare(Identity::DpVsBrute, ReportParams::new(r, i, trunc, interp), &lhs, &rhs, Some(sweep))
        .timed(start))
}

/// A random simple hypergraph on `1..=max_vertices` vertices with at most
/// `max_edges` edges and weights in `1..=max_weight`.
pub fn random_simple_hypergraph<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
    max_weight: usize,
) -> (Hypergraph<usize>, WeightAssignment<usize>) {
    let nv = rng.gen_range(1..=max_vertices);
    let target_edges = rng.gen_range(0..=max_edges);
    let mut edges: Vec<Edge<usize>> = Vec::new();
    for _ in 0..4 * max_edges {
        if edges.len() >= target_edges {
            break;
        }
        let mask: u32 = rng.gen_range(1..(1u32 << nv));
        let candidate = Edge::new((0..nv).filter(|b| mask >> b & 1 == 1));
        if edges.iter().all(|e| !e.is_subset_of(&candidate) && !candidate.is_subset_of(e)) {
            edges.push(candidate);
        }
    }
    let h = Hypergraph::new(0..nv, edges.iter().map(|e| e.vertices().to_vec())).expect("edges drawn from vertex set");
    let w = WeightAssignment::new((0..nv).map(|v| (v, rng.gen_range(1..=max_weight))).collect())
        .expect("weights are positive");
    (h, w)
}

/// Checks `quotient_series · ∏(1 - q^{w(v)}) = numerator` on `trials` random
/// simple hypergraphs (≤ 8 vertices, ≤ 10 edges, weights ≤ 3).
///
/// Rows hold the coefficient sums over all trials; the sweep counts the
/// hypergraphs whose two sides differ anywhere.
pub fn verify_hilbert_prop(trials: usize, seed: u64, trunc: usize) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lhs_total = TruncatedSeries::zero(trunc);
    let mut rhs_total = TruncatedSeries::zero(trunc);
    let mut sweep = SweepSummary::default();
    for trial in 0..trials {
        let (h, w) = random_simple_hypergraph(&mut rng, 8, 10, 3);
        debug_assert!(h.is_simple());
        let numerator = hilbert_numerator_weighted(&h, &w, trunc)?;
        let oracle = times_vertex_product(&quotient_series_by_support(&h, &w, trunc)?, &h, &w);
        sweep.cases += 1;
        if let Some(n) = numerator.first_difference(&oracle) {
            sweep.mismatches += 1;
            sweep.first_mismatch.get_or_insert_with(|| {
                format!("trial {trial}: q^{n}: numerator {} vs support {}", numerator.coeff(n), oracle.coeff(n))
            });
        }
        lhs_total = &lhs_total + &numerator;
        rhs_total = &rhs_total + &oracle;
    }
    let params = ReportParams {
        r: None,
        i: None,
        trunc,
        interp: Interpretation::default(),
        trials: Some(trials),
        seed: Some(seed),
    };
    Ok(VerificationReport::compare(Identity::HilbertProp, params, &lhs_total, &rhs_total, Some(sweep)).timed(start))
}
