//! Irredundancy of the inequality systems, decided by exact LP.
//!
//! Every system is homogeneous and stored as rows `a · x ≤ 0`. Row e is
//! essential iff some x has a_e · x = 1 and a_f · x ≤ 0 for all f ≠ e.

use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn::{generate_horn_triples, generate_union, IndexSet, IndexTuple, ListKind};
use crate::scalar::{Rational, Scalar};
use crate::simplex::{find_feasible_point, Constraint};

/// Default limits for [`check_full_independence`].
pub const MAX_N: u32 = 4;
pub const MAX_M: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InequalityTag {
    /// x_{i+1} ≤ x_i within spectrum `factor` (1-based; m + 1 is γ).
    Chamber { factor: usize, index: usize },
    /// Σ_K γ ≤ Σ_s Σ_{I(s)} α(s) with r < n.
    Horn { sets: IndexTuple, k: IndexSet },
    /// Σ γ ≤ Σ_s Σ α(s).
    Trace,
    /// Σ_s Σ_{I(s)} α(s) ≤ 0.
    NegativeSum { sets: IndexTuple },
    /// A copy of another row, for negative controls.
    Duplicate { of: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearInequality {
    pub coefficients: Vec<Rational>,
    pub tag: InequalityTag,
}

impl LinearInequality {
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        self.evaluate(x) <= Rational::zero()
    }
}

impl Serialize for LinearInequality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinearInequality", 2)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(Scalar::render).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("tag", &self.tag)?;
        st.end()
    }
}

fn chamber_rows(n: usize, factors: usize) -> Vec<LinearInequality> {
    let vars = n * factors;
    let mut out = Vec::new();
    for f in 0..factors {
        for i in 0..n.saturating_sub(1) {
            let mut c = vec![Rational::zero(); vars];
            c[f * n + i + 1] = Rational::one();
            c[f * n + i] = -Rational::one();
            out.push(LinearInequality {
                coefficients: c,
                tag: InequalityTag::Chamber {
                    factor: f + 1,
                    index: i + 1,
                },
            });
        }
    }
    out
}

/// Chamber inequalities for α(1), …, α(m), γ followed by one inequality per
/// Horn triple (the last is the trace). Variables are the concatenated
/// spectra α(1), …, α(m), γ.
pub fn assemble_system(n: u32, m: usize, coefficient_one_only: bool) -> Result<Vec<LinearInequality>> {
    let nn = n as usize;
    let vars = nn * (m + 1);
    let mut out = chamber_rows(nn, m + 1);
    for t in generate_horn_triples(n, m, coefficient_one_only)?.iter() {
        let mut c = vec![Rational::zero(); vars];
        for (s, set) in t.tuple.sets().iter().enumerate() {
            for &i in set.elements() {
                c[s * nn + i as usize - 1] -= Rational::one();
            }
        }
        for &k in t.k.elements() {
            c[m * nn + k as usize - 1] += Rational::one();
        }
        let tag = if t.r() == nn {
            InequalityTag::Trace
        } else {
            InequalityTag::Horn {
                sets: t.tuple.clone(),
                k: t.k.clone(),
            }
        };
        out.push(LinearInequality { coefficients: c, tag });
    }
    Ok(out)
}

/// Chamber inequalities for α(1), …, α(m) followed by one inequality per
/// tuple of S^n(m) (or R^n(m)).
pub fn assemble_negative_sum_system(n: u32, m: usize, use_r_only: bool) -> Result<Vec<LinearInequality>> {
    let nn = n as usize;
    let vars = nn * m;
    let mut out = chamber_rows(nn, m);
    let kind = if use_r_only { ListKind::R } else { ListKind::S };
    for e in generate_union(kind, n, m)?.iter() {
        let mut c = vec![Rational::zero(); vars];
        for (s, set) in e.tuple.sets().iter().enumerate() {
            for &i in set.elements() {
                c[s * nn + i as usize - 1] += Rational::one();
            }
        }
        out.push(LinearInequality {
            coefficients: c,
            tag: InequalityTag::NegativeSum {
                sets: e.tuple.clone(),
            },
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub index: usize,
    pub essential: bool,
    /// For essential rows: a point violating this row and satisfying all
    /// others.
    pub witness: Option<Vec<Rational>>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 3)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field(
            "verdict",
            if self.essential { "essential" } else { "redundant" },
        )?;
        let w: Option<Vec<String>> = self
            .witness
            .as_ref()
            .map(|w| w.iter().map(Scalar::render).collect());
        st.serialize_field("witness", &w)?;
        st.end()
    }
}

/// Checks a witness against every row exactly.
pub fn witness_is_sound(system: &[LinearInequality], index: usize, x: &[Rational]) -> bool {
    system.iter().enumerate().all(|(f, row)| {
        if f == index {
            !row.holds(x)
        } else {
            row.holds(x)
        }
    })
}

pub fn is_redundant(system: &[LinearInequality], index: usize) -> Result<Verdict> {
    let target = system.get(index).ok_or_else(|| {
        Error::Parameters(format!("index {index} out of range for {} rows", system.len()))
    })?;
    let vars = target.coefficients.len();
    let mut constraints = Vec::with_capacity(system.len());
    constraints.push(Constraint {
        coefficients: target.coefficients.clone(),
        rhs: Rational::one(),
        equality: true,
    });
    for (f, row) in system.iter().enumerate() {
        if f != index {
            constraints.push(Constraint {
                coefficients: row.coefficients.clone(),
                rhs: Rational::zero(),
                equality: false,
            });
        }
    }
    let witness = find_feasible_point(&constraints, vars);
    if let Some(x) = &witness {
        if !witness_is_sound(system, index, x) {
            return Err(Error::Precondition(format!(
                "LP witness for row {index} fails the exact recheck"
            )));
        }
    }
    Ok(Verdict {
        index,
        essential: witness.is_some(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RedundancyReport {
    pub n: u32,
    pub m: usize,
    /// Irredundancy for n ≥ 3 rests on an announced external result; the
    /// LP outcome is evidence only.
    pub conditional: bool,
    pub inequalities: Vec<LinearInequality>,
    pub verdicts: Vec<Verdict>,
    pub all_essential: bool,
}

pub fn redundancy_report(n: u32, m: usize, system: Vec<LinearInequality>) -> Result<RedundancyReport> {
    let verdicts = (0..system.len())
        .map(|i| is_redundant(&system, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(RedundancyReport {
        n,
        m,
        conditional: n >= 3,
        all_essential: verdicts.iter().all(|v| v.essential),
        inequalities: system,
        verdicts,
    })
}

/// LP verdict for every row of the majorization system with coefficient-1
/// triples.
pub fn check_full_independence(n: u32, m: usize) -> Result<RedundancyReport> {
    if n == 0 || m == 0 {
        return Err(Error::Parameters("need n >= 1 and m >= 1".into()));
    }
    if n > MAX_N || m > MAX_M {
        return Err(Error::Budget(format!(
            "independence checks are limited to n <= {MAX_N}, m <= {MAX_M}"
        )));
    }
    redundancy_report(n, m, assemble_system(n, m, true)?)
}

/// Rows of the S-system that are implied by the R-system: each S-only row
/// is appended to the R-system and tested for redundancy there.
pub fn s_rows_implied_by_r(n: u32, m: usize) -> Result<Vec<(IndexTuple, bool)>> {
    let r_system = assemble_negative_sum_system(n, m, true)?;
    let s_system = assemble_negative_sum_system(n, m, false)?;
    let mut out = Vec::new();
    for row in s_system {
        if r_system.contains(&row) {
            continue;
        }
        let InequalityTag::NegativeSum { sets } = &row.tag else {
            continue;
        };
        let sets = sets.clone();
        let mut sys = r_system.clone();
        sys.push(row);
        let verdict = is_redundant(&sys, sys.len() - 1)?;
        out.push((sets, !verdict.essential));
    }
    Ok(out)
}
