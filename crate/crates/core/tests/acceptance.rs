//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gordonlab_core::hilbert::{hp_p_via_numerator, hp_p_via_signatures};
use gordonlab_core::hypergraph::{partition_vertices, truncate_h_infinity, Vertex};
use gordonlab_core::partition::{enumerate_class, signed_count_R};
use gordonlab_core::qseries::product_side;
use gordonlab_core::signature::{signature, signature_fast};
use gordonlab_core::verify::{
    verify_andrews_gordon, verify_dp_vs_brute, verify_gordon, verify_hilbert_prop, verify_polarization,
};
use gordonlab_core::{hypergraph::build_h_lambda, Interpretation, Partition, PartitionClass, SignatureMethod};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> Partition {
    s.parse().expect("valid partition literal")
}

fn listing(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn worked_examples() -> Outcome {
    let d = Interpretation::default();
    let n = |r, i| enumerate_class(5, PartitionClass::Neighborly { r, i }, d).map_err(|e| e.to_string());
    ensure(listing(&n(3, 3)?) == ["2+2+1", "2+1+1+1"], || format!("N_33(5) = {:?}", listing(&n(3, 3).unwrap())))?;
    ensure(listing(&n(3, 2)?) == ["2+2+1"], || format!("N_32(5) = {:?}", listing(&n(3, 2).unwrap())))?;
    ensure(n(3, 1)?.is_empty(), || format!("N_31(5) = {:?}", listing(&n(3, 1).unwrap())))?;

    let mut total = 0;
    for (lambda, expected) in [("3,2,2", -1), ("2,2,2,1", 1), ("2,2,1,1,1", 0)] {
        for method in [SignatureMethod::BruteForce, SignatureMethod::LevelDp] {
            let v = signature(&p(lambda), 3, 3, d, method).map_err(|e| e.to_string())?.value;
            ensure(v == expected, || format!("δ({lambda}) = {v} via {method:?}, expected {expected}"))?;
        }
        total += expected;
    }
    let n7 = enumerate_class(7, PartitionClass::Neighborly { r: 3, i: 3 }, d).map_err(|e| e.to_string())?;
    ensure(listing(&n7) == ["3+2+2", "2+2+2+1", "2+2+1+1+1"], || format!("N_33(7) = {:?}", listing(&n7)))?;
    let r7 = signed_count_R(7, 3, 3).map_err(|e| e.to_string())?;
    ensure(total == 0 && r7 == 0, || format!("Σδ = {total}, signed R_33(7) = {r7}"))?;
    Ok("N_{3,i}(5), δ(α,β,γ) = (-1, 1, 0), Σ = 0 = signed R_{3,3}(7)".into())
}

fn main_theorem() -> Outcome {
    let trunc = 25;
    let d = Interpretation::default();
    for r in 2..=4 {
        for i in 1..=r {
            let product = product_side(r, i, trunc).map_err(|e| e.to_string())?;
            for n in 0..=trunc {
                let mut delta_sum = 0i64;
                for lambda in enumerate_class(n, PartitionClass::Neighborly { r, i }, d).map_err(|e| e.to_string())? {
                    delta_sum += signature_fast(&lambda, r, i, d).map_err(|e| e.to_string())?.value;
                }
                let signed_r = signed_count_R(n, r, i).map_err(|e| e.to_string())?;
                let prod = product.coeff(n).clone();
                ensure(BigInt::from(delta_sum) == prod && BigInt::from(signed_r) == prod, || {
                    format!("r={r} i={i} n={n}: Σδ={delta_sum}, [q^n]∏={prod}, signed R={signed_r}")
                })?;
            }
        }
    }
    // interpretation agreement
    for r in 2..=4 {
        for i in 1..=r {
            for n in 0..=20 {
                let sets: Vec<BTreeSet<Partition>> = Interpretation::ALL
                    .iter()
                    .map(|&interp| {
                        enumerate_class(n, PartitionClass::Neighborly { r, i }, interp)
                            .map(|v| v.into_iter().collect())
                            .map_err(|e| e.to_string())
                    })
                    .collect::<Result<_, _>>()?;
                let sums: Vec<i64> = Interpretation::ALL
                    .iter()
                    .zip(&sets)
                    .map(|(&interp, set)| {
                        set.iter().map(|l| signature_fast(l, r, i, interp).map(|s| s.value)).sum::<Result<i64, _>>()
                    })
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                ensure(sums[0] == sums[1], || format!("r={r} i={i} n={n}: Σδ induced {} vs definition {}", sums[0], sums[1]))?;
                for (idx, interp) in Interpretation::ALL.iter().enumerate() {
                    for lambda in sets[idx].difference(&sets[1 - idx]) {
                        let v = signature_fast(lambda, r, i, *interp).map_err(|e| e.to_string())?.value;
                        ensure(v == 0, || format!("{lambda} only {interp}-neighborly for ({r},{i}) but δ = {v}"))?;
                    }
                }
            }
        }
    }
    Ok("Σδ = [q^n]∏ = signed R for 2<=r<=4, n<=25; interpretations agree to n=20".into())
}

fn gordon_theorem() -> Outcome {
    for r in 2..=4 {
        for i in 1..=r {
            let rep = verify_gordon(r, i, 40).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("r={r} i={i}: first failure at q^{:?}", rep.first_failure))?;
        }
    }
    Ok("B_{r,i}(n) = A_{r,i}(n) for 2<=r<=4, n<=40".into())
}

fn andrews_gordon() -> Outcome {
    for r in 2..=4 {
        for i in 1..=r {
            let rep = verify_andrews_gordon(r, i, 40).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("r={r} i={i}: first failure at q^{:?}", rep.first_failure))?;
        }
    }
    Ok("sum side = product side to N=40 for r in {2,3,4}".into())
}

fn oracle_sweep() -> Outcome {
    let mut cases = 0;
    for r in 1..=4 {
        for i in 1..=r {
            for interp in Interpretation::ALL {
                let rep = verify_dp_vs_brute(r, i, 22, interp).map_err(|e| e.to_string())?;
                let sweep = rep.sweep.clone().unwrap_or_default();
                cases += sweep.cases;
                ensure(rep.pass && sweep.mismatches == 0, || {
                    format!("r={r} i={i} {interp}: {} mismatches, first {:?}", sweep.mismatches, sweep.first_mismatch)
                })?;
            }
        }
    }
    Ok(format!("{cases} neighborly partitions (|λ|<=22, r<=4, both readings), zero mismatches"))
}

fn hilbert_prop() -> Outcome {
    let trials = 100;
    let rep = verify_hilbert_prop(trials, 0x5eed, 15).map_err(|e| e.to_string())?;
    let sweep = rep.sweep.clone().unwrap_or_default();
    ensure(sweep.cases >= 50, || format!("only {} hypergraphs", sweep.cases))?;
    ensure(rep.pass, || format!("{} mismatches, first {:?}", sweep.mismatches, sweep.first_mismatch))?;
    Ok(format!("{} random simple hypergraphs to N=15, zero mismatches", sweep.cases))
}

fn polarization() -> Outcome {
    let d = Interpretation::default();
    for r in 1..=3 {
        for i in 1..=r {
            let a = hp_p_via_numerator(r, i, 12).map_err(|e| e.to_string())?;
            let b = hp_p_via_signatures(r, i, 12, d).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("HP_P routes differ for r={r} i={i} at q^{:?}", a.first_difference(&b)))?;
        }
    }
    for r in 2..=4 {
        for i in 1..=r {
            let rep = verify_polarization(r, i, 20, d).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("r={r} i={i}: first failure at q^{:?}", rep.first_failure))?;
        }
    }
    Ok("HP_P routes agree to N=12 (r<=3); polarization relation to N=20 (r<=4)".into())
}

/// Vertex subsets of `truncate_h_infinity(r, i, n)` of weight `n` whose
/// induced sub-hypergraph has no isolated vertex, as vertex sets.
fn isolated_free_subsets(r: usize, i: usize, n: usize) -> Vec<BTreeSet<Vertex>> {
    let h = truncate_h_infinity(r, i, n.max(1)).expect("valid truncation");
    let order: Vec<Vertex> = h.vertices().iter().copied().collect();
    assert!(order.len() <= 128);
    let bit = |v: &Vertex| 1u128 << order.iter().position(|u| u == v).unwrap();
    let edges: Vec<u128> = h.edges().iter().map(|e| e.vertices().iter().map(bit).fold(0, |a, b| a | b)).collect();

    fn walk(
        idx: usize,
        remaining: usize,
        chosen: u128,
        order: &[Vertex],
        edges: &[u128],
        out: &mut Vec<u128>,
    ) {
        if remaining == 0 {
            let covered = edges.iter().filter(|&&e| e & chosen == e).fold(0u128, |a, &e| a | e);
            if covered == chosen {
                out.push(chosen);
            }
            return;
        }
        if idx == order.len() {
            return;
        }
        walk(idx + 1, remaining, chosen, order, edges, out);
        let w = order[idx].level;
        if w <= remaining {
            walk(idx + 1, remaining - w, chosen | (1 << idx), order, edges, out);
        }
    }
    let mut masks = Vec::new();
    walk(0, n, 0, &order, &edges, &mut masks);
    masks
        .into_iter()
        .map(|m| order.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}

fn structure() -> Outcome {
    for r in 1..=5 {
        for i in 1..=r {
            for levels in 1..=8 {
                let h = truncate_h_infinity(r, i, levels).map_err(|e| e.to_string())?;
                ensure(h.is_simple(), || format!("truncation r={r} i={i} levels={levels} not simple"))?;
            }
        }
    }
    let d = Interpretation::default();
    let mut checked = 0;
    for r in 1..=4 {
        for i in 1..=r {
            for n in 0..=18 {
                let members = enumerate_class(n, PartitionClass::Neighborly { r, i }, d).map_err(|e| e.to_string())?;
                let images: Vec<BTreeSet<Vertex>> = members.iter().map(partition_vertices).collect();
                let image_set: BTreeSet<BTreeSet<Vertex>> = images.iter().cloned().collect();
                ensure(image_set.len() == images.len(), || format!("λ ↦ V(λ) not injective at r={r} i={i} n={n}"))?;
                let subsets: BTreeSet<BTreeSet<Vertex>> = isolated_free_subsets(r, i, n).into_iter().collect();
                ensure(subsets == image_set, || {
                    format!(
                        "r={r} i={i} n={n}: {} isolated-free subsets vs {} neighborly partitions",
                        subsets.len(),
                        image_set.len()
                    )
                })?;
                for lambda in &members {
                    let h = build_h_lambda(lambda, r, i, d).map_err(|e| e.to_string())?;
                    let full = truncate_h_infinity(r, i, lambda.largest_part() + 1).map_err(|e| e.to_string())?;
                    let induced = full.induced_on_vertices(&partition_vertices(lambda)).map_err(|e| e.to_string())?;
                    ensure(h == induced || lambda.is_empty(), || format!("H_λ mismatch for {lambda}"))?;
                }
                checked += members.len();
            }
        }
    }
    Ok(format!("truncations simple (r<=5, levels<=8); bijection on {checked} partitions (n<=18, r<=4)"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "worked examples", limit: Some(Duration::from_secs(1)), run: worked_examples },
        Criterion { id: 2, title: "main theorem", limit: Some(Duration::from_secs(120)), run: main_theorem },
        Criterion { id: 3, title: "Gordon's theorem", limit: Some(Duration::from_secs(120)), run: gordon_theorem },
        Criterion { id: 4, title: "Andrews-Gordon identity", limit: Some(Duration::from_secs(60)), run: andrews_gordon },
        Criterion { id: 5, title: "signature oracle sweep", limit: None, run: oracle_sweep },
        Criterion { id: 6, title: "Hilbert numerator vs support oracle", limit: None, run: hilbert_prop },
        Criterion { id: 7, title: "HP routes and polarization", limit: None, run: polarization },
        Criterion { id: 8, title: "structural checks", limit: None, run: structure },
    ];

    let results: Vec<(u8, &str, Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let outcome = (c.run)();
                    let elapsed = start.elapsed();
                    let outcome = match (outcome, c.limit) {
                        (Ok(_), Some(limit)) if elapsed > limit => {
                            Err(format!("took {elapsed:.2?}, limit {limit:.0?}"))
                        }
                        (o, _) => o,
                    };
                    (c.id, c.title, outcome, elapsed)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });

    let mut failed = 0;
    for (id, title, outcome, elapsed) in &results {
        match outcome {
            Ok(detail) => println!("[PASS] criterion {id} ({title}): {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {id} ({title}): {why} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
