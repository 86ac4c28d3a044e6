//! Index sets, their restriction/extension operations, and the inequality
//! index lists S_r^n(m), R_r^n(m) and the Horn triples.
//!
//! Lists are generated by brute force over all C(n, r)^m tuples and filtered
//! by the Schubert product, which is fine for n ≤ 6, m ≤ 3. Every list is
//! returned sorted by r, then lexicographically by the concatenated sets.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lr::{lambda_of_index_set, multi_product, omega_partition, BoxBound, Partition, SchubertExpansion};

/// A subset of [n] = {1, …, n}, kept in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    elems: Vec<u32>,
    ambient: u32,
}

impl IndexSet {
    pub fn new(elems: Vec<u32>, ambient: u32) -> Result<Self> {
        let invalid = |elems: Vec<u32>, reason| Error::InvalidIndexSet {
            elems,
            ambient,
            reason,
        };
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(elems, "elements must be strictly increasing"));
        }
        if elems.first().is_some_and(|&e| e < 1) || elems.last().is_some_and(|&e| e > ambient) {
            return Err(invalid(elems, "elements must lie in [n]"));
        }
        Ok(IndexSet { elems, ambient })
    }

    /// [n] itself.
    pub fn full(n: u32) -> Self {
        IndexSet {
            elems: (1..=n).collect(),
            ambient: n,
        }
    }

    /// {n − r + 1, …, n}.
    pub fn top(r: u32, n: u32) -> Self {
        IndexSet {
            elems: (n - r + 1..=n).collect(),
            ambient: n,
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            elems: (1..=self.ambient).filter(|&i| !self.contains(i)).collect(),
            ambient: self.ambient,
        }
    }

    /// {n + 1 − i : i ∈ I}.
    pub fn reversed(&self) -> IndexSet {
        IndexSet {
            elems: self.elems.iter().rev().map(|&i| self.ambient + 1 - i).collect(),
            ambient: self.ambient,
        }
    }

    /// |I ∩ [k]|.
    pub fn count_up_to(&self, k: u32) -> usize {
        self.elems.iter().take_while(|&&i| i <= k).count()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

/// I_P = {i_p : p ∈ P} for P ⊂ [r].
pub fn restrict(set: &IndexSet, p: &IndexSet) -> Result<IndexSet> {
    if p.ambient() as usize != set.len() {
        return Err(Error::Parameters(format!(
            "restriction index {p:?} must live in [{}]",
            set.len()
        )));
    }
    Ok(IndexSet {
        elems: p.elems.iter().map(|&q| set.elems[q as usize - 1]).collect(),
        ambient: set.ambient,
    })
}

/// I_P^+ = I ∪ (I^c)_P for P ⊂ [n − r].
pub fn extend(set: &IndexSet, p: &IndexSet) -> Result<IndexSet> {
    let comp = set.complement();
    if p.ambient() as usize != comp.len() {
        return Err(Error::Parameters(format!(
            "extension index {p:?} must live in [{}]",
            comp.len()
        )));
    }
    let mut elems = set.elems.clone();
    elems.extend(p.elems.iter().map(|&q| comp.elems[q as usize - 1]));
    elems.sort_unstable();
    Ok(IndexSet {
        elems,
        ambient: set.ambient,
    })
}

/// The Bruhat-type order H ≤ I: h_a ≤ i_a for every a.
pub fn leq(h: &IndexSet, i: &IndexSet) -> Result<bool> {
    if h.len() != i.len() || h.ambient != i.ambient {
        return Err(Error::Dimension(format!(
            "cannot compare {h:?} and {i:?}: sizes or ambients differ"
        )));
    }
    let pointwise = h.elems.iter().zip(&i.elems).all(|(a, b)| a <= b);
    debug_assert_eq!(pointwise, leq_by_counts(h, i));
    Ok(pointwise)
}

/// H ≤ I via |H ∩ [k]| ≥ |I ∩ [k]| for all k.
pub fn leq_by_counts(h: &IndexSet, i: &IndexSet) -> bool {
    (1..=h.ambient).all(|k| h.count_up_to(k) >= i.count_up_to(k))
}

/// All r-subsets of [n] in lexicographic order.
pub fn subsets(r: u32, n: u32) -> Vec<IndexSet> {
    fn rec(start: u32, r: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<IndexSet>) {
        if cur.len() == r as usize {
            out.push(IndexSet {
                elems: cur.clone(),
                ambient: n,
            });
            return;
        }
        let need = r - cur.len() as u32;
        for i in start..=n + 1 - need {
            cur.push(i);
            rec(i + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(1, r, n, &mut Vec::new(), &mut out);
    }
    out
}

/// An m-tuple of index sets of common size and ambient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    sets: Vec<IndexSet>,
}

impl IndexTuple {
    pub fn new(sets: Vec<IndexSet>) -> Result<Self> {
        if let Some(first) = sets.first() {
            if sets
                .iter()
                .any(|s| s.len() != first.len() || s.ambient != first.ambient)
            {
                return Err(Error::Dimension(format!(
                    "tuple {sets:?} mixes cardinalities or ambients"
                )));
            }
        } else {
            return Err(Error::Parameters("empty index tuple".into()));
        }
        Ok(IndexTuple { sets })
    }

    /// Convenience constructor from raw element lists.
    pub fn from_lists(lists: &[&[u32]], n: u32) -> Result<Self> {
        IndexTuple::new(
            lists
                .iter()
                .map(|l| IndexSet::new(l.to_vec(), n))
                .collect::<Result<_>>()?,
        )
    }

    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn r(&self) -> usize {
        self.sets[0].len()
    }

    pub fn n(&self) -> u32 {
        self.sets[0].ambient
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// 𝓘_𝓟, set by set.
    pub fn restrict(&self, p: &IndexTuple) -> Result<IndexTuple> {
        self.zip_with(p, restrict)
    }

    /// 𝓘_𝓟^+, set by set.
    pub fn extend(&self, p: &IndexTuple) -> Result<IndexTuple> {
        self.zip_with(p, extend)
    }

    fn zip_with(
        &self,
        p: &IndexTuple,
        f: impl Fn(&IndexSet, &IndexSet) -> Result<IndexSet>,
    ) -> Result<IndexTuple> {
        if p.m() != self.m() {
            return Err(Error::Dimension(format!(
                "tuples of length {} and {} cannot be combined",
                self.m(),
                p.m()
            )));
        }
        IndexTuple::new(
            self.sets
                .iter()
                .zip(&p.sets)
                .map(|(i, q)| f(i, q))
                .collect::<Result<_>>()?,
        )
    }

    /// ∏ ω_{I(s)} in H*(Gr(r, n)).
    pub fn omega_product(&self) -> SchubertExpansion {
        let bound = BoxBound::grassmannian(self.r(), self.n() as usize);
        let factors: Vec<Partition> = self.sets.iter().map(omega_partition).collect();
        multi_product(&factors, bound).expect("omega partitions fit their Grassmannian")
    }

    /// ∏ σ_{λ(I(s))} in H*(Gr(r, n)).
    pub fn lambda_product(&self) -> SchubertExpansion {
        let bound = BoxBound::grassmannian(self.r(), self.n() as usize);
        let factors: Vec<Partition> = self.sets.iter().map(lambda_of_index_set).collect();
        multi_product(&factors, bound).expect("index set partitions fit their Grassmannian")
    }

    pub fn in_s(&self) -> bool {
        !self.omega_product().is_zero()
    }

    pub fn in_r(&self) -> bool {
        self.omega_product().is_point_class()
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.sets).finish()
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sets.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListKind {
    /// Nonzero ω-product.
    S,
    /// ω-product equal to the point class with coefficient 1.
    R,
}

/// A member of S_r^n(m) or R_r^n(m). `coefficient` is the sum of the
/// coefficients of the ω-product, which is the point-class coefficient
/// whenever the total codimension is r(n − r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListEntry {
    pub tuple: IndexTuple,
    pub coefficient: BigUint,
}

impl ListEntry {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&JsonLine {
            tuple: &self.tuple,
            k: None,
            coeff: &self.coefficient,
        })
        .expect("list entries serialize")
    }
}

/// An inequality Σ_K γ ≤ Σ_s Σ_{I(s)} α(s) and its LR multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornTriple {
    pub tuple: IndexTuple,
    pub k: IndexSet,
    pub coefficient: BigUint,
}

impl HornTriple {
    pub fn r(&self) -> usize {
        self.k.len()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&JsonLine {
            tuple: &self.tuple,
            k: Some(&self.k),
            coeff: &self.coefficient,
        })
        .expect("triples serialize")
    }
}

struct JsonLine<'a> {
    tuple: &'a IndexTuple,
    k: Option<&'a IndexSet>,
    coeff: &'a BigUint,
}

impl Serialize for JsonLine<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 6)?;
        st.serialize_field("r", &self.tuple.r())?;
        st.serialize_field("n", &self.tuple.n())?;
        st.serialize_field("m", &self.tuple.m())?;
        st.serialize_field("sets", self.tuple)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("coeff", &crate::lr::biguint_to_u64(self.coeff))?;
        st.end()
    }
}

fn check_params(r: u32, n: u32, m: usize) -> Result<()> {
    if r < 1 || r > n || m < 1 {
        return Err(Error::Parameters(format!(
            "need 1 <= r <= n and m >= 1, got r={r}, n={n}, m={m}"
        )));
    }
    Ok(())
}

/// Visits every m-tuple of `pool` in lexicographic order, in parallel,
/// keeping the order of the results.
fn tuples_filter_map<T: Send>(
    pool: &[IndexSet],
    m: usize,
    f: impl Fn(IndexTuple) -> Option<T> + Sync,
) -> Vec<T> {
    let base = pool.len();
    let total = base.pow(m as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut sets = vec![pool[0].clone(); m];
            for slot in (0..m).rev() {
                sets[slot] = pool[idx % base].clone();
                idx /= base;
            }
            f(IndexTuple { sets })
        })
        .collect()
}

type ListKey = (ListKind, u32, u32, usize);

fn list_cache() -> &'static Mutex<HashMap<ListKey, Arc<Vec<ListEntry>>>> {
    static CACHE: OnceLock<Mutex<HashMap<ListKey, Arc<Vec<ListEntry>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// S_r^n(m) or R_r^n(m). For r = n both are the single tuple ([n], …, [n]).
pub fn generate_list(kind: ListKind, r: u32, n: u32, m: usize) -> Result<Arc<Vec<ListEntry>>> {
    check_params(r, n, m)?;
    let key = (kind, r, n, m);
    if let Some(hit) = list_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let pool = subsets(r, n);
    let entries = tuples_filter_map(&pool, m, |tuple| {
        let product = tuple.omega_product();
        let keep = match kind {
            ListKind::S => !product.is_zero(),
            ListKind::R => product.is_point_class(),
        };
        keep.then(|| ListEntry {
            coefficient: product.total(),
            tuple,
        })
    });
    let entries = Arc::new(entries);
    list_cache()
        .lock()
        .unwrap()
        .insert(key, entries.clone());
    Ok(entries)
}

pub fn generate_s(r: u32, n: u32, m: usize) -> Result<Arc<Vec<ListEntry>>> {
    generate_list(ListKind::S, r, n, m)
}

pub fn generate_r(r: u32, n: u32, m: usize) -> Result<Arc<Vec<ListEntry>>> {
    generate_list(ListKind::R, r, n, m)
}

/// S^n(m) or R^n(m): the union over 1 ≤ r ≤ n.
pub fn generate_union(kind: ListKind, n: u32, m: usize) -> Result<Arc<Vec<ListEntry>>> {
    check_params(n.max(1), n, m)?;
    // r = 0 never names a single-size list, so it keys the union.
    let key = (kind, 0, n, m);
    if let Some(hit) = list_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    for r in 1..=n {
        out.extend(generate_list(kind, r, n, m)?.iter().cloned());
    }
    let out = Arc::new(out);
    list_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

type TripleKey = (bool, bool, u32, usize);

fn triple_cache() -> &'static Mutex<HashMap<TripleKey, Arc<Vec<HornTriple>>>> {
    static CACHE: OnceLock<Mutex<HashMap<TripleKey, Arc<Vec<HornTriple>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn generate_triples(
    n: u32,
    m: usize,
    coefficient_one_only: bool,
    reverse: bool,
) -> Result<Arc<Vec<HornTriple>>> {
    if n < 1 || m < 1 {
        return Err(Error::Parameters(format!(
            "need n >= 1 and m >= 1, got n={n}, m={m}"
        )));
    }
    let key = (coefficient_one_only, reverse, n, m);
    if let Some(hit) = triple_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let to_partition = if reverse {
        omega_partition
    } else {
        lambda_of_index_set
    };
    let mut out = Vec::new();
    for r in 1..=n {
        let pool = subsets(r, n);
        let ks: Vec<(IndexSet, Partition)> =
            pool.iter().map(|k| (k.clone(), to_partition(k))).collect();
        let chunks = tuples_filter_map(&pool, m, |tuple| {
            let product = if reverse {
                tuple.omega_product()
            } else {
                tuple.lambda_product()
            };
            let found: Vec<HornTriple> = ks
                .iter()
                .filter_map(|(k, lam)| {
                    let c = product.coefficient(lam);
                    let keep = if coefficient_one_only {
                        c.is_one()
                    } else {
                        !c.is_zero()
                    };
                    keep.then(|| HornTriple {
                        tuple: tuple.clone(),
                        k: k.clone(),
                        coefficient: c,
                    })
                })
                .collect();
            (!found.is_empty()).then_some(found)
        });
        out.extend(chunks.into_iter().flatten());
    }
    let out = Arc::new(out);
    triple_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// All (I(1), …, I(m), K), every size r ≤ n, such that σ_{λ(K)} occurs in
/// ∏ σ_{λ(I(s))} in H*(Gr(r, n)) (with coefficient exactly 1 when
/// `coefficient_one_only`). The r = n entry is the trace inequality.
pub fn generate_horn_triples(
    n: u32,
    m: usize,
    coefficient_one_only: bool,
) -> Result<Arc<Vec<HornTriple>>> {
    generate_triples(n, m, coefficient_one_only, false)
}

/// All (I(1), …, I(m), K) such that ω_K occurs in ∏ ω_{I(s)}: the index
/// list for majorization from the other side, ΣA(s) ≤ C.
pub fn generate_reverse_triples(
    n: u32,
    m: usize,
    coefficient_one_only: bool,
) -> Result<Arc<Vec<HornTriple>>> {
    generate_triples(n, m, coefficient_one_only, true)
}

/// Number of chamber inequalities α_i ≥ α_{i+1} over `factors` spectra.
pub fn chamber_count(n: u32, factors: usize) -> usize {
    factors * (n as usize).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u32], n: u32) -> IndexSet {
        IndexSet::new(e.to_vec(), n).unwrap()
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![2, 2], 4).is_err());
        assert!(IndexSet::new(vec![0, 2], 4).is_err());
        assert!(IndexSet::new(vec![1, 5], 4).is_err());
        assert!(IndexSet::new(vec![], 4).is_ok());
    }

    #[test]
    fn restriction_and_extension() {
        let i = set(&[2, 4], 4);
        assert_eq!(restrict(&i, &set(&[2], 2)).unwrap(), set(&[4], 4));
        assert_eq!(restrict(&i, &IndexSet::full(2)).unwrap(), i);
        assert_eq!(
            restrict(&set(&[1, 3, 6], 6), &set(&[1, 3], 3)).unwrap(),
            set(&[1, 6], 6)
        );
        assert!(restrict(&i, &set(&[1], 3)).is_err());

        assert_eq!(extend(&i, &set(&[2], 2)).unwrap(), set(&[2, 3, 4], 4));
        assert_eq!(extend(&set(&[1, 4], 4), &set(&[1], 2)).unwrap(), set(&[1, 2, 4], 4));
        assert_eq!(extend(&i, &set(&[], 2)).unwrap(), i);
        assert!(extend(&i, &set(&[1], 3)).is_err());
    }

    #[test]
    fn order() {
        let i = set(&[2, 4], 4);
        assert!(leq(&i, &i).unwrap());
        assert!(leq(&set(&[1, 3], 4), &i).unwrap());
        assert!(!leq(&set(&[1, 4], 4), &set(&[2, 3], 4)).unwrap());
        assert!(leq(&set(&[1], 4), &i).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        let all = subsets(2, 4);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], set(&[1, 2], 4));
        assert_eq!(subsets(0, 3), vec![set(&[], 3)]);
    }

    #[test]
    fn full_rank_lists() {
        for kind in [ListKind::S, ListKind::R] {
            let l = generate_list(kind, 3, 3, 2).unwrap();
            assert_eq!(l.len(), 1);
            assert_eq!(l[0].tuple.sets(), &[IndexSet::full(3), IndexSet::full(3)]);
        }
        assert!(generate_s(0, 3, 1).is_err());
        assert!(generate_s(4, 3, 1).is_err());
        assert!(generate_s(1, 3, 0).is_err());
    }

    #[test]
    fn projective_line_pairs() {
        let s = generate_s(1, 2, 2).unwrap();
        let got: Vec<_> = s.iter().map(|e| e.tuple.clone()).collect();
        let want = vec![
            IndexTuple::from_lists(&[&[1], &[2]], 2).unwrap(),
            IndexTuple::from_lists(&[&[2], &[1]], 2).unwrap(),
            IndexTuple::from_lists(&[&[2], &[2]], 2).unwrap(),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn json_line_shape() {
        let t = &generate_horn_triples(1, 2, true).unwrap()[0];
        assert_eq!(
            t.to_json_line(),
            r#"{"r":1,"n":1,"m":2,"sets":[[1],[1]],"K":[1],"coeff":1}"#
        );
        let e = &generate_r(2, 2, 1).unwrap()[0];
        assert_eq!(
            e.to_json_line(),
            r#"{"r":2,"n":2,"m":1,"sets":[[1,2]],"K":null,"coeff":1}"#
        );
    }
}
