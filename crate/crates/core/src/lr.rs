//! Littlewood-Richardson coefficients and Schubert products on Grassmannians.
//!
//! Coefficients are counted by a depth-first search over skew tableaux in
//! reading order (rows top to bottom, each row right to left) that keeps the
//! filling semistandard and the reading word a lattice word at every step.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::horn::IndexSet;

/// A weakly decreasing sequence of nonnegative integers, stored without
/// trailing zeros so that equality ignores them.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition { parts });
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts known to be weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Young diagram containment: `other ⊂ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn fits(&self, bound: BoxBound) -> bool {
        bound.fits(self)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        Partition::from_sorted(
            (1..=cols as u32)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// Parses `"2,1"`; `""`, `"0"` and `"-"` denote the empty partition.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?} in {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The `rows x cols` rectangle of Gr(rows, rows + cols).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxBound {
    pub rows: usize,
    pub cols: usize,
}

impl BoxBound {
    pub fn new(rows: usize, cols: usize) -> Self {
        BoxBound { rows, cols }
    }

    /// The box of Gr(r, n).
    pub fn grassmannian(r: usize, n: usize) -> Self {
        debug_assert!(r <= n);
        BoxBound { rows: r, cols: n - r }
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.length() <= self.rows && p.part(0) as usize <= self.cols
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// The full rectangle, i.e. the class of a point.
    pub fn full(&self) -> Partition {
        Partition::from_sorted(vec![self.cols as u32; self.rows])
    }

    /// The complementary partition inside the box.
    pub fn complement(&self, p: &Partition) -> Result<Partition> {
        if !self.fits(p) {
            return Err(self.misfit(p));
        }
        Ok(Partition::from_sorted(
            (0..self.rows)
                .map(|j| self.cols as u32 - p.part(self.rows - 1 - j))
                .collect(),
        ))
    }

    fn misfit(&self, p: &Partition) -> Error {
        Error::DoesNotFit {
            partition: p.parts().to_vec(),
            rows: self.rows,
            cols: self.cols,
        }
    }
}

/// A linear combination of Schubert classes in one Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertExpansion {
    bound: BoxBound,
    terms: BTreeMap<Partition, BigUint>,
}

impl SchubertExpansion {
    /// The unit class σ_∅.
    pub fn one(bound: BoxBound) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), BigUint::one());
        SchubertExpansion { bound, terms }
    }

    pub fn single(p: Partition, bound: BoxBound) -> Result<Self> {
        if !bound.fits(&p) {
            return Err(bound.misfit(&p));
        }
        let mut terms = BTreeMap::new();
        terms.insert(p, BigUint::one());
        Ok(SchubertExpansion { bound, terms })
    }

    pub fn bound(&self) -> BoxBound {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> BigUint {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Common codimension of the terms, `None` for the zero class.
    pub fn codimension(&self) -> Option<u32> {
        self.terms.keys().next().map(Partition::weight)
    }

    /// True when the expansion is exactly the point class with coefficient 1.
    pub fn is_point_class(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&self.bound.full()).is_one()
    }

    pub fn mul(&self, other: &SchubertExpansion) -> Result<SchubertExpansion> {
        if self.bound != other.bound {
            return Err(Error::Dimension(format!(
                "cannot multiply classes of {:?} and {:?}",
                self.bound, other.bound
            )));
        }
        let mut terms: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coef = ca * cb;
                for (nu, c) in expand_pair(a, b, self.bound) {
                    *terms.entry(nu).or_default() += &coef * BigUint::from(c);
                }
            }
        }
        Ok(SchubertExpansion {
            bound: self.bound,
            terms,
        })
    }
}

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Littlewood-Richardson coefficient c_{lam, mu}^{nu}.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(lr_count(lam, mu, nu))
}

/// Same as [`lr_coefficient`] but bypassing the memo table.
pub fn lr_coefficient_uncached(lam: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(count_lr_tableaux(lam, mu, nu))
}

// The count is accumulated one tableau at a time, so a u64 cannot overflow
// within any feasible running time.
pub(crate) fn lr_count(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !shape_compatible(lam, mu, nu) {
        return 0;
    }
    if lam.is_empty() {
        return u64::from(mu == nu);
    }
    if mu.is_empty() {
        return u64::from(lam == nu);
    }
    let key = (lam.clone(), mu.clone(), nu.clone());
    if let Some(&c) = lr_cache().lock().unwrap().get(&key) {
        return c;
    }
    let c = count_lr_tableaux(lam, mu, nu);
    lr_cache().lock().unwrap().insert(key, c);
    c
}

fn shape_compatible(lam: &Partition, mu: &Partition, nu: &Partition) -> bool {
    lam.weight() + mu.weight() == nu.weight() && nu.contains(lam) && nu.contains(mu)
}

struct TableauSearch<'a> {
    lam: &'a [u32],
    mu: &'a [u32],
    nu: &'a [u32],
    boxes: Vec<(usize, usize)>,
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
}

impl TableauSearch<'_> {
    fn lam_at(&self, row: usize) -> usize {
        self.lam.get(row).copied().unwrap_or(0) as usize
    }

    fn run(&mut self, k: usize) -> u64 {
        let Some(&(i, j)) = self.boxes.get(k) else {
            return 1;
        };
        let hi = if j + 1 < self.nu[i] as usize {
            self.grid[i][j + 1]
        } else {
            self.mu.len() as u32
        };
        let lo = if i > 0 && j >= self.lam_at(i - 1) {
            self.grid[i - 1][j] + 1
        } else {
            1
        };
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if self.counts[vi] >= self.mu[vi - 1] {
                continue;
            }
            if v > 1 && self.counts[vi] >= self.counts[vi - 1] {
                continue;
            }
            self.counts[vi] += 1;
            self.grid[i][j] = v;
            total += self.run(k + 1);
            self.counts[vi] -= 1;
        }
        self.grid[i][j] = 0;
        total
    }
}

fn count_lr_tableaux(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !shape_compatible(lam, mu, nu) {
        return 0;
    }
    let (l, m, n) = (lam.parts(), mu.parts(), nu.parts());
    let mut boxes = Vec::with_capacity(mu.weight() as usize);
    for (i, &row) in n.iter().enumerate() {
        let start = l.get(i).copied().unwrap_or(0);
        for j in (start..row).rev() {
            boxes.push((i, j as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut search = TableauSearch {
        lam: l,
        mu: m,
        nu: n,
        boxes,
        grid: vec![vec![0; width]; n.len()],
        counts: vec![0; m.len() + 1],
    };
    search.run(0)
}

/// All ν in `bound` with c_{lam,mu}^ν > 0, with their coefficients.
fn expand_pair(lam: &Partition, mu: &Partition, bound: BoxBound) -> Vec<(Partition, u64)> {
    let weight = lam.weight() + mu.weight();
    if weight as usize > bound.area() || !bound.fits(lam) || !bound.fits(mu) {
        return Vec::new();
    }
    if lam.is_empty() {
        return vec![(mu.clone(), 1)];
    }
    if mu.is_empty() {
        return vec![(lam.clone(), 1)];
    }
    let lower: Vec<u32> = (0..bound.rows).map(|i| lam.part(i).max(mu.part(i))).collect();
    let mut out = Vec::new();
    for nu in partitions_between(&lower, bound, weight) {
        let c = lr_count(lam, mu, &nu);
        if c > 0 {
            out.push((nu, c));
        }
    }
    out
}

/// Partitions ν of `weight` in `bound` with ν_i ≥ lower_i.
fn partitions_between(lower: &[u32], bound: BoxBound, weight: u32) -> Vec<Partition> {
    fn rec(
        lower: &[u32],
        rows: usize,
        i: usize,
        cap: u32,
        remaining: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == rows {
            if remaining == 0 {
                out.push(Partition::from_sorted(cur.clone()));
            }
            return;
        }
        let min_rest: u32 = lower[i..].iter().sum();
        if remaining < min_rest || remaining > cap * (rows - i) as u32 {
            return;
        }
        let lo = lower[i];
        let hi = cap.min(remaining);
        for v in (lo..=hi).rev() {
            cur.push(v);
            rec(lower, rows, i + 1, v, remaining - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        lower,
        bound.rows,
        0,
        bound.cols as u32,
        weight,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// The product σ_{f1} ⋯ σ_{fk} in the cohomology of the Grassmannian with
/// box `bound`, computed by iterated two-factor expansion.
pub fn multi_product(factors: &[Partition], bound: BoxBound) -> Result<SchubertExpansion> {
    if let Some(bad) = factors.iter().find(|f| !bound.fits(f)) {
        return Err(bound.misfit(bad));
    }
    let mut acc = SchubertExpansion::one(bound);
    for f in factors {
        let mut terms: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (lam, c) in &acc.terms {
            for (nu, d) in expand_pair(lam, f, bound) {
                *terms.entry(nu).or_default() += c * BigUint::from(d);
            }
        }
        acc.terms = terms;
        if acc.terms.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// Multiplicity of V(nu) in V(f1) ⊗ ⋯ ⊗ V(fk): the multi-factor LR
/// coefficient, computed in a box large enough that nothing is truncated.
pub fn tensor_multiplicity(factors: &[Partition], nu: &Partition) -> BigUint {
    let weight: u32 = factors.iter().map(Partition::weight).sum();
    if weight != nu.weight() {
        return BigUint::zero();
    }
    let rows: usize = factors.iter().map(Partition::length).sum::<usize>().max(1);
    let bound = BoxBound::new(rows, weight as usize);
    if !bound.fits(nu) {
        return BigUint::zero();
    }
    multi_product(factors, bound)
        .map(|e| e.coefficient(nu))
        .unwrap_or_default()
}

/// λ(I) = (i_r − r, …, i_2 − 2, i_1 − 1).
pub fn lambda_of_index_set(set: &IndexSet) -> Partition {
    let e = set.elements();
    Partition::from_sorted(
        e.iter()
            .enumerate()
            .rev()
            .map(|(k, &i)| i - (k as u32 + 1))
            .collect(),
    )
}

/// The partition λ with σ_λ = ω_I, λ_k = n − r + k − i_k.
pub fn omega_partition(set: &IndexSet) -> Partition {
    let n = set.ambient();
    let r = set.len() as u32;
    Partition::from_sorted(
        set.elements()
            .iter()
            .enumerate()
            .map(|(k, &i)| n - r + (k as u32 + 1) - i)
            .collect(),
    )
}

/// Removes the first part of each partition; requires lam_1 + mu_1 = nu_1.
pub fn strip_first_rows(
    lam: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<(Partition, Partition, Partition)> {
    if lam.part(0) + mu.part(0) != nu.part(0) {
        return Err(Error::Precondition(format!(
            "first rows do not add up: {lam} + {mu} vs {nu}"
        )));
    }
    let tail = |p: &Partition| Partition::from_sorted(p.parts().iter().skip(1).copied().collect());
    Ok((tail(lam), tail(mu), tail(nu)))
}

/// All partitions of `weight`, in reverse lexicographic order.
pub fn partitions_of(weight: u32) -> Vec<Partition> {
    partitions_in_box(BoxBound::new(weight as usize, weight as usize), weight)
}

/// Partitions of `weight` fitting `bound`.
pub fn partitions_in_box(bound: BoxBound, weight: u32) -> Vec<Partition> {
    partitions_between(&vec![0; bound.rows], bound, weight)
}

/// Partitions of weight at most `max_weight` with at most `max_length` parts.
pub fn partitions_up_to(max_weight: u32, max_length: usize) -> Vec<Partition> {
    (0..=max_weight)
        .flat_map(|w| partitions_in_box(BoxBound::new(max_length, w as usize), w))
        .collect()
}

/// Every partition contained in `p` (including ∅ and `p`).
pub fn subpartitions(p: &Partition) -> Vec<Partition> {
    fn rec(p: &Partition, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == p.length() {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        for v in 0..=p.part(i).min(cap) {
            cur.push(v);
            rec(p, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, 0, u32::MAX, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

pub(crate) fn biguint_to_u64(c: &BigUint) -> u64 {
    c.to_u64().unwrap_or(u64::MAX)
}
