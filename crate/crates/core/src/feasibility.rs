//! Deciding the eigenvalue inequality systems.
//!
//! Four questions are answered here, all by evaluating an index list from
//! [`crate::horn`] against the given spectra:
//!
//! * `A(1) + … + A(m) ≤ 0` ([`check_negative_sum`]),
//! * `C ≤ A(1) + … + A(m)` ([`check_majorized`]),
//! * `C = A(1) + … + A(m)` ([`check_klyachko_equality`]),
//! * `A(1) + … + A(m) ≤ C` ([`check_reverse_majorized`]).
//!
//! The lifting and shrinking procedures for integer spectra and partitions
//! live here as well.

use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn::{
    generate_horn_triples, generate_reverse_triples, generate_union, HornTriple, IndexSet,
    IndexTuple, ListEntry, ListKind,
};
use crate::lr::{multi_product, subpartitions, tensor_multiplicity, BoxBound, Partition};
use crate::scalar::{FieldScalar, Scalar, Spectrum};

/// One evaluated inequality. `slack` is (right side − left side), so it is
/// negative exactly when the inequality is violated.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome<T> {
    pub tuple: IndexTuple,
    pub k: Option<IndexSet>,
    pub slack: T,
}

impl<T> Outcome<T> {
    pub fn r(&self) -> usize {
        self.tuple.r()
    }
}

impl<T: Scalar> Serialize for Outcome<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Outcome", 3)?;
        st.serialize_field("sets", &self.tuple)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("slack", &self.slack.render())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport<T> {
    pub feasible: bool,
    pub violated: Vec<Outcome<T>>,
    pub tight: Vec<Outcome<T>>,
    pub max_tight_r: Option<usize>,
}

impl<T: Scalar> FeasibilityReport<T> {
    fn from_outcomes(outcomes: impl IntoIterator<Item = Outcome<T>>) -> Self {
        let mut violated = Vec::new();
        let mut tight = Vec::new();
        for o in outcomes {
            if o.slack.is_negative_strict() {
                violated.push(o);
            } else if o.slack.is_tight() {
                tight.push(o);
            }
        }
        let max_tight_r = tight.iter().map(Outcome::r).max();
        FeasibilityReport {
            feasible: violated.is_empty(),
            violated,
            tight,
            max_tight_r,
        }
    }

    /// The smallest slack among violated inequalities, if any.
    pub fn worst_slack(&self) -> Option<&T> {
        self.violated
            .iter()
            .map(|o| &o.slack)
            .fold(None, |acc: Option<&T>, s| match acc {
                Some(a) if a <= s => Some(a),
                _ => Some(s),
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl<T: Scalar> Serialize for FeasibilityReport<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FeasibilityReport", 4)?;
        st.serialize_field("feasible", &self.feasible)?;
        st.serialize_field("violated", &self.violated)?;
        st.serialize_field("tight", &self.tight)?;
        st.serialize_field("max_tight_r", &self.max_tight_r)?;
        st.end()
    }
}

/// Common length of the spectra; errors on empty input or mismatch.
fn common_length<T: Scalar>(spectra: &[Spectrum<T>]) -> Result<u32> {
    let first = spectra
        .first()
        .ok_or_else(|| Error::Parameters("at least one spectrum is required".into()))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::Parameters("spectra must be nonempty".into()));
    }
    if let Some((s, bad)) = spectra.iter().enumerate().find(|(_, sp)| sp.len() != n) {
        return Err(Error::Dimension(format!(
            "spectrum {} has length {}, expected {n}",
            s + 1,
            bad.len()
        )));
    }
    Ok(n as u32)
}

fn set_sum<T: Scalar>(spectrum: &Spectrum<T>, set: &IndexSet) -> T {
    set.elements()
        .iter()
        .fold(T::zero(), |acc, &i| acc + spectrum.at(i).clone())
}

/// Σ_s Σ_{i ∈ I(s)} α_i(s).
pub fn tuple_sum<T: Scalar>(spectra: &[Spectrum<T>], tuple: &IndexTuple) -> T {
    tuple
        .sets()
        .iter()
        .zip(spectra)
        .fold(T::zero(), |acc, (set, sp)| acc + set_sum(sp, set))
}

fn negative_sum_outcomes<'a, T: Scalar>(
    alphas: &'a [Spectrum<T>],
    list: &'a [ListEntry],
) -> impl Iterator<Item = Outcome<T>> + 'a {
    list.iter().map(move |e| Outcome {
        tuple: e.tuple.clone(),
        k: None,
        slack: -tuple_sum(alphas, &e.tuple),
    })
}

/// Decides whether Hermitian A(s) with spectra `alphas` and ΣA(s) ≤ 0 exist,
/// by the inequalities Σ_s Σ_{I(s)} α(s) ≤ 0 over S^n(m) (or R^n(m)).
pub fn check_negative_sum<T: Scalar>(
    alphas: &[Spectrum<T>],
    use_r_only: bool,
) -> Result<FeasibilityReport<T>> {
    let n = common_length(alphas)?;
    let kind = if use_r_only { ListKind::R } else { ListKind::S };
    let list = generate_union(kind, n, alphas.len())?;
    Ok(FeasibilityReport::from_outcomes(negative_sum_outcomes(
        alphas, &list,
    )))
}

fn triple_outcomes<T: Scalar>(
    alphas: &[Spectrum<T>],
    gamma: &Spectrum<T>,
    triples: &[HornTriple],
    reverse: bool,
) -> Vec<Outcome<T>> {
    triples
        .iter()
        .map(|t| {
            let a = tuple_sum(alphas, &t.tuple);
            let g = set_sum(gamma, &t.k);
            Outcome {
                tuple: t.tuple.clone(),
                k: Some(t.k.clone()),
                slack: if reverse { g - a } else { a - g },
            }
        })
        .collect()
}

fn majorization_inputs<T: Scalar>(alphas: &[Spectrum<T>], gamma: &Spectrum<T>) -> Result<u32> {
    let n = common_length(alphas)?;
    if gamma.len() != n as usize {
        return Err(Error::Dimension(format!(
            "gamma has length {}, expected {n}",
            gamma.len()
        )));
    }
    Ok(n)
}

/// Decides whether C ≤ A(1) + … + A(m) is realizable, by the inequalities
/// Σ_K γ ≤ Σ_s Σ_{I(s)} α(s) over the Horn triples (all r ≤ n, including
/// the trace inequality).
pub fn check_majorized<T: Scalar>(
    alphas: &[Spectrum<T>],
    gamma: &Spectrum<T>,
    coefficient_one_only: bool,
) -> Result<FeasibilityReport<T>> {
    let n = majorization_inputs(alphas, gamma)?;
    let triples = generate_horn_triples(n, alphas.len(), coefficient_one_only)?;
    Ok(FeasibilityReport::from_outcomes(triple_outcomes(
        alphas, gamma, &triples, false,
    )))
}

/// Decides whether C = A(1) + … + A(m) is realizable: the majorization
/// inequalities plus equality in the trace. A trace mismatch is reported
/// as a violated entry carrying its (nonzero) slack.
pub fn check_klyachko_equality<T: Scalar>(
    alphas: &[Spectrum<T>],
    gamma: &Spectrum<T>,
) -> Result<FeasibilityReport<T>> {
    let mut report = check_majorized(alphas, gamma, true)?;
    let n = gamma.len();
    let trace_is_tight = report.tight.iter().any(|o| o.r() == n);
    if !trace_is_tight && report.violated.iter().all(|o| o.r() != n) {
        let full = IndexSet::full(n as u32);
        let tuple = IndexTuple::new(vec![full.clone(); alphas.len()])?;
        let slack = tuple_sum(alphas, &tuple) - gamma.total();
        report.violated.push(Outcome {
            tuple,
            k: Some(full),
            slack,
        });
        report.feasible = false;
    }
    Ok(report)
}

/// Decides whether A(1) + … + A(m) ≤ C is realizable, by the inequalities
/// Σ_s Σ_{I(s)} α(s) ≤ Σ_K γ for ω_K occurring in ∏ ω_{I(s)}.
pub fn check_reverse_majorized<T: Scalar>(
    alphas: &[Spectrum<T>],
    gamma: &Spectrum<T>,
    coefficient_one_only: bool,
) -> Result<FeasibilityReport<T>> {
    let n = majorization_inputs(alphas, gamma)?;
    let triples = generate_reverse_triples(n, alphas.len(), coefficient_one_only)?;
    Ok(FeasibilityReport::from_outcomes(triple_outcomes(
        alphas, gamma, &triples, true,
    )))
}

/// Spectra of (−A(1), …, −A(m), C): the m + 1 factor negative-sum
/// formulation of C ≤ ΣA(s).
pub fn negated_formulation<T: Scalar>(
    alphas: &[Spectrum<T>],
    gamma: &Spectrum<T>,
) -> Vec<Spectrum<T>> {
    let mut out: Vec<Spectrum<T>> = alphas.iter().map(Spectrum::negate_reverse).collect();
    out.push(gamma.clone());
    out
}

/// Splits the spectra along a tight tuple: entries indexed by I(s), and the
/// remaining entries.
#[allow(clippy::type_complexity)]
pub fn split<T: Scalar>(
    alphas: &[Spectrum<T>],
    tight: &IndexTuple,
) -> Result<(Vec<Spectrum<T>>, Vec<Spectrum<T>>)> {
    let n = common_length(alphas)?;
    if tight.m() != alphas.len() || tight.n() != n {
        return Err(Error::Dimension(format!(
            "tuple {tight:?} does not match {} spectra of length {n}",
            alphas.len()
        )));
    }
    if !tuple_sum(alphas, tight).is_tight() {
        return Err(Error::Precondition(format!(
            "inequality for {tight:?} is not tight"
        )));
    }
    let mut inner = Vec::with_capacity(alphas.len());
    let mut outer = Vec::with_capacity(alphas.len());
    for (sp, set) in alphas.iter().zip(tight.sets()) {
        let (a, b): (Vec<(usize, T)>, Vec<(usize, T)>) = sp
            .values()
            .iter()
            .cloned()
            .enumerate()
            .partition(|(i, _)| set.contains(*i as u32 + 1));
        inner.push(Spectrum::new(a.into_iter().map(|(_, v)| v).collect())?);
        outer.push(Spectrum::new(b.into_iter().map(|(_, v)| v).collect())?);
    }
    Ok((inner, outer))
}

/// The tight tuple used for splitting: maximal r, then lexicographically
/// smallest. `max_r` excludes larger sizes.
pub fn choose_tight<T: Scalar>(
    alphas: &[Spectrum<T>],
    max_r: usize,
) -> Result<Option<IndexTuple>> {
    let n = common_length(alphas)?;
    let mut best: Option<IndexTuple> = None;
    for r in (1..=max_r.min(n as usize)).rev() {
        let list = crate::horn::generate_list(ListKind::S, r as u32, n, alphas.len())?;
        if let Some(e) = list
            .iter()
            .find(|e| tuple_sum(alphas, &e.tuple).is_tight())
        {
            best = Some(e.tuple.clone());
            break;
        }
    }
    Ok(best)
}

/// Adds the largest ε to every entry such that all negative-sum
/// inequalities still hold; at least one becomes tight.
/// ε = min over 𝓘 ∈ S_r^n(m) of (−Σ_𝓘) / (m r).
pub fn epsilon_shift<T: FieldScalar>(alphas: &[Spectrum<T>]) -> Result<(T, Vec<Spectrum<T>>)> {
    let n = common_length(alphas)?;
    let m = alphas.len();
    let list = generate_union(ListKind::S, n, m)?;
    let mut eps: Option<T> = None;
    for e in list.iter() {
        let slack = -tuple_sum(alphas, &e.tuple);
        if !slack.is_negative_strict() && slack.is_tight() || slack.is_negative_strict() {
            return Err(Error::Precondition(format!(
                "inequality for {:?} is not strict",
                e.tuple
            )));
        }
        let cand = slack / T::from_i64((m * e.tuple.r()) as i64);
        eps = Some(match eps {
            Some(cur) if cur <= cand => cur,
            _ => cand,
        });
    }
    let eps = eps.expect("S^n(m) always contains the trace tuple");
    let shifted = alphas.iter().map(|a| a.shifted(&eps)).collect();
    Ok((eps, shifted))
}

/// Raises entries of factor `s0` one unit at a time until the total is
/// zero, keeping every negative-sum inequality valid.
///
/// When some inequality is tight, the increment goes to the smallest index
/// of [n] outside I(s0) for the tight tuple of maximal r; otherwise to the
/// first entry.
pub fn lift_to_equality(alphas: &[Spectrum<i64>], s0: usize) -> Result<Vec<Spectrum<i64>>> {
    let n = common_length(alphas)?;
    let m = alphas.len();
    if s0 >= m {
        return Err(Error::Parameters(format!(
            "factor index {s0} out of range for {m} spectra"
        )));
    }
    let list = generate_union(ListKind::S, n, m)?;
    if let Some(bad) = list.iter().find(|e| tuple_sum(alphas, &e.tuple) > 0) {
        return Err(Error::Infeasible(format!(
            "inequality for {:?} is violated",
            bad.tuple
        )));
    }
    let mut current: Vec<Vec<i64>> = alphas.iter().map(|a| a.values().to_vec()).collect();
    loop {
        let spectra: Vec<Spectrum<i64>> = current
            .iter()
            .map(|v| Spectrum::new(v.clone()))
            .collect::<Result<_>>()?;
        let total: i64 = current.iter().flatten().sum();
        if total == 0 {
            return Ok(spectra);
        }
        // `list` is ordered by r, so scanning from the back finds the
        // largest tight r; within it we want the first tuple.
        let mut chosen: Option<&ListEntry> = None;
        for e in list.iter().rev() {
            if let Some(c) = chosen {
                if e.tuple.r() < c.tuple.r() {
                    break;
                }
            }
            if tuple_sum(&spectra, &e.tuple) == 0 {
                chosen = Some(e);
            }
        }
        let row = &mut current[s0];
        match chosen {
            None => row[0] += 1,
            Some(e) => {
                let set = &e.tuple.sets()[s0];
                let i = (1..=n)
                    .find(|&i| !set.contains(i))
                    .expect("a tight tuple below the trace misses some index");
                row[i as usize - 1] += 1;
                row.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
    }
}

fn partition_spectrum(p: &Partition, n: usize) -> Result<Spectrum<i64>> {
    if p.length() > n {
        return Err(Error::Dimension(format!("{p} has more than {n} parts")));
    }
    Spectrum::new(p.padded(n).into_iter().map(i64::from).collect())
}

/// Partitions as length-n integer spectra.
pub fn partitions_as_spectra(parts: &[Partition], n: usize) -> Result<Vec<Spectrum<i64>>> {
    parts.iter().map(|p| partition_spectrum(p, n)).collect()
}

/// Finds γ̃ ⊃ γ of weight Σ|α(s)| satisfying the equality conditions, by
/// lifting γ in the m + 1 factor negative-sum formulation.
pub fn lift_gamma(alphas: &[Partition], gamma: &Partition, n: usize) -> Result<Partition> {
    let a = partitions_as_spectra(alphas, n)?;
    let g = partition_spectrum(gamma, n)?;
    if !check_majorized(&a, &g, true)?.feasible {
        return Err(Error::Precondition(
            "the majorization inequalities fail for these partitions".into(),
        ));
    }
    let lifted = lift_to_equality(&negated_formulation(&a, &g), alphas.len())?;
    let top = lifted.last().expect("gamma slot is present");
    Partition::new(top.values().iter().map(|&v| v as u32).collect())
}

/// Finds α̃(s) ⊂ α(s) with Σ|α̃(s)| = |γ| and V(γ) ⊂ ⊗ V(α̃(s)), searching
/// subpartition tuples in lexicographic order.
pub fn shrink_alphas(alphas: &[Partition], gamma: &Partition, n: usize) -> Result<Vec<Partition>> {
    if alphas.is_empty() {
        return Err(Error::Parameters("at least one partition is required".into()));
    }
    if gamma.length() > n || alphas.iter().any(|a| a.length() > n) {
        return Err(Error::Dimension(format!("partitions must have at most {n} parts")));
    }
    let candidates: Vec<Vec<Partition>> = alphas
        .iter()
        .map(|a| {
            subpartitions(a)
                .into_iter()
                .filter(|p| gamma.contains(p))
                .collect()
        })
        .collect();
    let max_rest: Vec<u32> = (0..=alphas.len())
        .map(|s| {
            candidates[s..]
                .iter()
                .map(|c| c.iter().map(Partition::weight).max().unwrap_or(0))
                .sum()
        })
        .collect();
    let bound = BoxBound::new(n, gamma.part(0) as usize);
    let mut chosen = Vec::with_capacity(alphas.len());
    if search_shrink(
        &candidates,
        &max_rest,
        gamma,
        bound,
        &mut chosen,
        0,
    ) {
        Ok(chosen)
    } else {
        Err(Error::Precondition(format!(
            "no subpartitions of {alphas:?} produce {gamma}"
        )))
    }
}

fn search_shrink(
    candidates: &[Vec<Partition>],
    max_rest: &[u32],
    gamma: &Partition,
    bound: BoxBound,
    chosen: &mut Vec<Partition>,
    weight: u32,
) -> bool {
    let s = chosen.len();
    if s == candidates.len() {
        return weight == gamma.weight() && !tensor_multiplicity(chosen, gamma).is_zero();
    }
    if weight + max_rest[s] < gamma.weight() {
        return false;
    }
    for cand in &candidates[s] {
        let w = weight + cand.weight();
        if w > gamma.weight() {
            continue;
        }
        chosen.push(cand.clone());
        // Prefix products only grow under further multiplication, so some
        // term must already lie inside γ.
        let viable = multi_product(chosen, bound)
            .map(|e| e.terms().keys().any(|t| gamma.contains(t)))
            .unwrap_or(false);
        if viable && search_shrink(candidates, max_rest, gamma, bound, chosen, w) {
            return true;
        }
        chosen.pop();
    }
    false
}
