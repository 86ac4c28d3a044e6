//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use horncone::lr::Partition;
use horncone::scalar::{rational, Rational, Spectrum};
use num_bigint::BigUint;
use rand::Rng;

pub fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

pub fn spectrum(v: &[i64]) -> Spectrum<Rational> {
    Spectrum::new(v.iter().map(|&x| rational(x, 1)).collect()).unwrap()
}

pub fn spectra(v: &[&[i64]]) -> Vec<Spectrum<Rational>> {
    v.iter().map(|s| spectrum(s)).collect()
}

/// A weakly decreasing vector of n rationals with numerators in
/// [-range, range] and denominators in 1..=4.
pub fn random_spectrum<R: Rng>(rng: &mut R, n: usize, range: i64) -> Spectrum<Rational> {
    let mut v: Vec<Rational> = (0..n)
        .map(|_| rational(rng.random_range(-range..=range), rng.random_range(1..=4)))
        .collect();
    v.sort_by(|a, b| b.cmp(a));
    Spectrum::new(v).unwrap()
}

/// c^ν_{λμ} by listing every word of content μ on the cells of ν/λ and
/// keeping those that form a semistandard tableau whose reverse reading
/// word is a lattice word. No pruning, so it shares nothing with the
/// library enumerator.
pub fn naive_lr(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.weight() + mu.weight() != nu.weight() || !nu.contains(lam) {
        return 0;
    }
    let rows = nu.length();
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in lam.part(r)..nu.part(r) {
            cells.push((r, c as usize));
        }
    }
    let mut content: Vec<u32> = mu.parts().to_vec();
    let mut word = vec![0u32; cells.len()];
    let mut count = 0;
    permutations(&mut content, &mut word, 0, &mut |w| {
        if is_lr_filling(&cells, w) {
            count += 1;
        }
    });
    count
}

fn permutations(content: &mut [u32], word: &mut [u32], pos: usize, visit: &mut dyn FnMut(&[u32])) {
    if pos == word.len() {
        visit(word);
        return;
    }
    for v in 0..content.len() {
        if content[v] > 0 {
            content[v] -= 1;
            word[pos] = v as u32 + 1;
            permutations(content, word, pos + 1, visit);
            content[v] += 1;
        }
    }
}

fn is_lr_filling(cells: &[(usize, usize)], word: &[u32]) -> bool {
    let at = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c)).map(|i| word[i]);
    for (i, &(r, c)) in cells.iter().enumerate() {
        if let Some(right) = at(r, c + 1) {
            if right < word[i] {
                return false;
            }
        }
        if let Some(below) = at(r + 1, c) {
            if below <= word[i] {
                return false;
            }
        }
    }
    // Cells are stored row by row, left to right; read each row backwards.
    let mut reading: Vec<u32> = Vec::with_capacity(word.len());
    let mut start = 0;
    while start < cells.len() {
        let row = cells[start].0;
        let end = cells[start..]
            .iter()
            .position(|&(r, _)| r != row)
            .map_or(cells.len(), |k| start + k);
        reading.extend(word[start..end].iter().rev().copied());
        start = end;
    }
    let mut seen = vec![0u32; word.len() + 2];
    for &v in &reading {
        seen[v as usize] += 1;
        if v > 1 && seen[v as usize] > seen[v as usize - 1] {
            return false;
        }
    }
    true
}

/// Checks order preservation for all r-subsets of [n], 1 ≤ r ≤ n ≤ `max_n`:
/// H ≤ I and P ≤ Q imply H_P ≤ I_Q and H_P^+ ≤ I_Q^+. Returns
/// (checked, violations).
pub fn order_preservation_violations(max_n: u32) -> (usize, usize) {
    use horncone::horn::{extend, leq, restrict, subsets};
    let (mut checked, mut bad) = (0, 0);
    for n in 1..=max_n {
        for r in 1..=n {
            let sets = subsets(r, n);
            for h in &sets {
                for i in sets.iter().filter(|i| leq(h, i).unwrap()) {
                    for x in 1..=r {
                        let ps = subsets(x, r);
                        for p in &ps {
                            for q in ps.iter().filter(|q| leq(p, q).unwrap()) {
                                checked += 1;
                                if !leq(&restrict(h, p).unwrap(), &restrict(i, q).unwrap()).unwrap() {
                                    bad += 1;
                                }
                            }
                        }
                    }
                    for y in 1..=n - r {
                        let ps = subsets(y, n - r);
                        for p in &ps {
                            for q in ps.iter().filter(|q| leq(p, q).unwrap()) {
                                checked += 1;
                                if !leq(&extend(h, p).unwrap(), &extend(i, q).unwrap()).unwrap() {
                                    bad += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (checked, bad)
}

/// Checks that restriction by 𝒫 ∈ S_x^r(m) and extension by 𝒫 ∈
/// S_y^{n−r}(m) keep every ℐ ∈ S_r^n(m) inside the S-lists, for
/// n ≤ `max_n`, m ≤ `max_m`. Returns (checked, violations).
pub fn restriction_extension_violations(max_n: u32, max_m: usize) -> (usize, usize) {
    use horncone::horn::generate_s;
    use std::collections::HashSet;
    let (mut checked, mut bad) = (0, 0);
    for m in 1..=max_m {
        for n in 1..=max_n {
            let members: HashSet<_> = (1..=n)
                .flat_map(|r| generate_s(r, n, m).unwrap().iter().map(|e| e.tuple.clone()).collect::<Vec<_>>())
                .collect();
            for r in 1..=n {
                for entry in generate_s(r, n, m).unwrap().iter() {
                    for x in 1..=r {
                        for p in generate_s(x, r, m).unwrap().iter() {
                            checked += 1;
                            if !members.contains(&entry.tuple.restrict(&p.tuple).unwrap()) {
                                bad += 1;
                            }
                        }
                    }
                    for y in 1..=n - r {
                        for p in generate_s(y, n - r, m).unwrap().iter() {
                            checked += 1;
                            if !members.contains(&entry.tuple.extend(&p.tuple).unwrap()) {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    (checked, bad)
}

/// One random triple-extension case: a Horn triple (I, J, K) of size r in
/// [n] with coefficient c, extended by a, b > n and c' = a + b − r − 1.
/// Returns the original and extended coefficients.
pub fn triple_extension_case<R: Rng>(rng: &mut R, max_n: u32) -> (String, BigUint, BigUint) {
    use horncone::horn::{generate_horn_triples, IndexSet};
    use horncone::lr::{lambda_of_index_set, lr_coefficient};
    let n = rng.random_range(1..=max_n);
    let triples = generate_horn_triples(n, 2, false).unwrap();
    let t = &triples[rng.random_range(0..triples.len())];
    let r = t.r() as u32;
    let a = rng.random_range(n + 1..=n + 4);
    let b = rng.random_range(n + 1..=n + 4);
    let c = a + b - r - 1;
    let grow = |set: &IndexSet, extra: u32| {
        let mut e = set.elements().to_vec();
        e.push(extra);
        lambda_of_index_set(&IndexSet::new(e, c).unwrap())
    };
    let sets = t.tuple.sets();
    let extended = lr_coefficient(&grow(&sets[0], a), &grow(&sets[1], b), &grow(&t.k, c));
    let label = format!("{:?} K={:?} a={a} b={b}", t.tuple, t.k);
    (label, t.coefficient.clone(), extended)
}

/// max over ℐ in S^n(m) (or R^n(m)) of Σ_s Σ_{i ∈ I(s)} α_i(s).
pub fn max_tuple_sum(alphas: &[Spectrum<Rational>], kind: horncone::horn::ListKind) -> Rational {
    use horncone::feasibility::tuple_sum;
    let n = alphas[0].len() as u32;
    horncone::horn::generate_union(kind, n, alphas.len())
        .unwrap()
        .iter()
        .map(|e| tuple_sum(alphas, &e.tuple))
        .max()
        .unwrap()
}
