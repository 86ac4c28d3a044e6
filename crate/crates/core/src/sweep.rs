//! Exhaustive small-instance suites comparing equivalent criteria.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dvr::{compare_routes, exists_exact_sequence_bruteforce, green_klein_agrees, sub_triple_search, Budget};
use crate::error::Result;
use crate::feasibility::{check_klyachko_equality, check_majorized, lift_gamma, partitions_as_spectra, shrink_alphas};
use crate::lr::{lr_coefficient, partitions_up_to, subpartitions, tensor_multiplicity, Partition};

/// Pass/fail tally for one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Up to ten failing cases, rendered.
    pub examples: Vec<String>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn collect(name: &str, outcomes: Vec<(bool, String)>) -> Self {
        let cases = outcomes.len();
        let failing: Vec<String> = outcomes
            .into_iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, s)| s)
            .collect();
        SuiteSummary {
            name: name.to_string(),
            cases,
            failures: failing.len(),
            examples: failing.into_iter().take(10).collect(),
        }
    }

    pub fn table_row(&self) -> String {
        format!(
            "{:<28} {:>8} {:>8}  {}",
            self.name,
            self.cases,
            self.failures,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// The equivalent feasibility conditions evaluated on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeEquivalenceCase {
    pub alphas: Vec<Partition>,
    pub gamma: Partition,
    pub n: usize,
    /// The majorization inequalities with coefficient-1 triples.
    pub c1: bool,
    /// The same with every positive coefficient.
    pub c1_all: bool,
    /// Some γ̃ ⊃ γ of weight Σ|α(s)| satisfies the equality conditions.
    pub c3: bool,
    /// Some α̃(s) ⊂ α(s) of total weight |γ| satisfy the equality conditions.
    pub c4: bool,
    /// Some γ̃ ⊃ γ with at most n parts has V(γ̃) ⊂ ⊗ V(α(s)).
    pub c5: bool,
    /// Some α̃(s) ⊂ α(s) have V(γ) ⊂ ⊗ V(α̃(s)).
    pub c6: bool,
    /// `lift_gamma` returned a valid γ̃ (or correctly refused).
    pub lift_ok: bool,
    /// `shrink_alphas` returned a valid tuple (or correctly refused).
    pub shrink_ok: bool,
}

impl ConeEquivalenceCase {
    pub fn consistent(&self) -> bool {
        let c = self.c1;
        self.c1_all == c && self.c3 == c && self.c4 == c && self.c5 == c && self.c6 == c && self.lift_ok && self.shrink_ok
    }
}

fn equality_holds(alphas: &[Partition], gamma: &Partition, n: usize) -> Result<bool> {
    let a = partitions_as_spectra(alphas, n)?;
    let g = partitions_as_spectra(std::slice::from_ref(gamma), n)?.remove(0);
    Ok(check_klyachko_equality(&a, &g)?.feasible)
}

/// Partitions μ ⊃ `inner` of the given weight with at most `n` parts.
fn superpartitions(inner: &Partition, weight: u32, n: usize) -> Vec<Partition> {
    partitions_up_to(weight, n)
        .into_iter()
        .filter(|p| p.weight() == weight && p.contains(inner))
        .collect()
}

fn subpartition_tuples(alphas: &[Partition], weight: u32) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for a in alphas {
        let subs = subpartitions(a);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                subs.iter().map(move |s| {
                    let mut t = prefix.clone();
                    t.push(s.clone());
                    t
                })
            })
            .filter(|t| t.iter().map(Partition::weight).sum::<u32>() <= weight)
            .collect();
    }
    out.retain(|t| t.iter().map(Partition::weight).sum::<u32>() == weight);
    out
}

pub fn cone_equivalence_instance(alphas: &[Partition], gamma: &Partition, n: usize) -> Result<ConeEquivalenceCase> {
    let a = partitions_as_spectra(alphas, n)?;
    let g = partitions_as_spectra(std::slice::from_ref(gamma), n)?.remove(0);
    let c1 = check_majorized(&a, &g, true)?.feasible;
    let c1_all = check_majorized(&a, &g, false)?.feasible;
    let total: u32 = alphas.iter().map(Partition::weight).sum();

    let gammas = superpartitions(gamma, total, n);
    let mut c3 = false;
    for gt in &gammas {
        if equality_holds(alphas, gt, n)? {
            c3 = true;
            break;
        }
    }
    let c5 = gammas
        .iter()
        .any(|gt| !tensor_multiplicity(alphas, gt).is_zero());

    let tuples = subpartition_tuples(alphas, gamma.weight());
    let mut c4 = false;
    for t in &tuples {
        if equality_holds(t, gamma, n)? {
            c4 = true;
            break;
        }
    }
    let c6 = tuples
        .iter()
        .any(|t| !tensor_multiplicity(t, gamma).is_zero());

    let lift_ok = match lift_gamma(alphas, gamma, n) {
        Ok(gt) => c1 && gt.contains(gamma) && gt.weight() == total && equality_holds(alphas, &gt, n)?,
        Err(_) => !c1,
    };
    let shrink_ok = match shrink_alphas(alphas, gamma, n) {
        Ok(t) => {
            t.iter().zip(alphas).all(|(s, a)| a.contains(s))
                && t.iter().map(Partition::weight).sum::<u32>() == gamma.weight()
                && !tensor_multiplicity(&t, gamma).is_zero()
        }
        Err(_) => !c1,
    };
    Ok(ConeEquivalenceCase {
        alphas: alphas.to_vec(),
        gamma: gamma.clone(),
        n,
        c1,
        c1_all,
        c3,
        c4,
        c5,
        c6,
        lift_ok,
        shrink_ok,
    })
}

fn tuples_of(pool: &[Partition], m: usize) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                pool.iter().map(move |p| {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every (α(1), …, α(m), γ) with parts of weight ≤ `max_weight` and at most
/// n parts, for 1 ≤ n ≤ `max_n`.
pub fn cone_equivalence_sweep(max_weight: u32, max_n: usize, m: usize) -> Result<SuiteSummary> {
    let mut jobs = Vec::new();
    for n in 1..=max_n {
        let pool = partitions_up_to(max_weight, n);
        for t in tuples_of(&pool, m + 1) {
            jobs.push((n, t));
        }
    }
    let outcomes = jobs
        .par_iter()
        .map(|(n, t)| {
            let (gamma, alphas) = t.split_last().expect("m + 1 >= 2 entries");
            let case = cone_equivalence_instance(alphas, gamma, *n)?;
            Ok((case.consistent(), format!("{case:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::collect("cone equivalences", outcomes))
}

fn triples(max_weight: u32) -> Vec<(Partition, Partition, Partition)> {
    let pool = partitions_up_to(max_weight, max_weight as usize);
    let mut out = Vec::new();
    for a in &pool {
        for b in &pool {
            for c in &pool {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Brute-force exact sequences vs the subpartition and inequality criteria.
pub fn exact_sequence_sweep(max_weight: u32, p: u32, budget: &Budget) -> Result<SuiteSummary> {
    let outcomes = triples(max_weight)
        .par_iter()
        .map(|(a, b, c)| {
            let v = compare_routes(a, b, c, p, budget)?;
            Ok((v.agree, format!("{v:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::collect(&format!("exact-sequence oracles p={p}"), outcomes))
}

/// Brute-force verdicts agree across primes.
pub fn p_independence_sweep(max_weight: u32, primes: &[u32], budget: &Budget) -> Result<SuiteSummary> {
    let outcomes = triples(max_weight)
        .par_iter()
        .map(|(a, b, c)| {
            let verdicts = primes
                .iter()
                .map(|&p| exists_exact_sequence_bruteforce(b, c, a, p, budget))
                .collect::<Result<Vec<_>>>()?;
            let ok = verdicts.windows(2).all(|w| w[0] == w[1]);
            Ok((ok, format!("alpha={a} beta={b} gamma={c} verdicts={verdicts:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::collect("p-independence", outcomes))
}

/// Submodule enumeration vs LR positivity.
pub fn green_klein_sweep(max_weight: u32, p: u32, budget: &Budget) -> Result<SuiteSummary> {
    let outcomes = triples(max_weight)
        .par_iter()
        .map(|(a, b, c)| {
            let ok = green_klein_agrees(a, b, c, p, budget)?;
            Ok((ok, format!("alpha={a} beta={b} gamma={c}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::collect(&format!("green-klein p={p}"), outcomes))
}

/// For every c^γ_{αβ} > 0 with |γ| ≤ `max_weight` and every γ̃ ⊂ γ, a pair
/// α̃ ⊂ α, β̃ ⊂ β with c^{γ̃}_{α̃β̃} > 0 is found.
pub fn sub_triple_sweep(max_weight: u32) -> Result<SuiteSummary> {
    let pool = partitions_up_to(max_weight, max_weight as usize);
    let mut jobs = Vec::new();
    for g in &pool {
        for a in pool.iter().filter(|a| g.contains(a)) {
            for b in pool.iter().filter(|b| a.weight() + b.weight() == g.weight()) {
                if !lr_coefficient(a, b, g).is_zero() {
                    for gt in subpartitions(g) {
                        jobs.push((a.clone(), b.clone(), g.clone(), gt));
                    }
                }
            }
        }
    }
    let outcomes = jobs
        .par_iter()
        .map(|(a, b, g, gt)| {
            let ok = match sub_triple_search(a, b, g, gt) {
                Ok((at, bt)) => a.contains(&at) && b.contains(&bt) && !lr_coefficient(&at, &bt, gt).is_zero(),
                Err(_) => false,
            };
            (ok, format!("alpha={a} beta={b} gamma={g} gamma~={gt}"))
        })
        .collect();
    Ok(SuiteSummary::collect("sub-triple search", outcomes))
}
