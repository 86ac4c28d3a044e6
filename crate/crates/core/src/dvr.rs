//! Finite modules over a discrete valuation ring, modelled as
//! ⊕ ℤ/p^{λ_i}, with brute-force searches for exact sequences and
//! submodules of prescribed types.
//!
//! Elements are mixed-radix indices; subgroups are bitsets over them.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{check_majorized, partitions_as_spectra, shrink_alphas};
use crate::lr::{lr_coefficient, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest module order that may be enumerated.
    pub max_order: u64,
    /// Largest number of distinct subgroups held during one search.
    pub max_subgroups: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order: 1024,
            max_subgroups: 200_000,
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleType {
    p: u32,
    partition: Partition,
}

impl ModuleType {
    pub fn new(p: u32, partition: Partition) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameters(format!("{p} is not prime")));
        }
        Ok(ModuleType { p, partition })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

/// ⊕ ℤ/p^{λ_i}. Element `x` has digit `x_i` in position i, encoded with
/// the first component most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ty: ModuleType,
    moduli: Vec<u32>,
    order: usize,
}

pub type Element = usize;

impl FiniteModule {
    pub fn new(ty: ModuleType, budget: &Budget) -> Result<Self> {
        let p = u64::from(ty.p);
        let mut order: u64 = 1;
        let mut moduli = Vec::new();
        for &part in ty.partition.parts() {
            let q = p
                .checked_pow(part)
                .filter(|q| *q <= budget.max_order)
                .ok_or_else(|| Error::Budget(format!("module of type {} over p={p}", ty.partition)))?;
            order = order.saturating_mul(q);
            if order > budget.max_order {
                return Err(Error::Budget(format!(
                    "module of type {} over p={p} exceeds order {}",
                    ty.partition, budget.max_order
                )));
            }
            moduli.push(q as u32);
        }
        Ok(FiniteModule {
            ty,
            moduli,
            order: order as usize,
        })
    }

    pub fn of(p: u32, partition: &Partition, budget: &Budget) -> Result<Self> {
        Self::new(ModuleType::new(p, partition.clone())?, budget)
    }

    pub fn module_type(&self) -> &ModuleType {
        &self.ty
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn decode(&self, mut x: Element) -> Vec<u32> {
        let mut digits = vec![0; self.moduli.len()];
        for (d, &q) in digits.iter_mut().zip(&self.moduli).rev() {
            *d = (x % q as usize) as u32;
            x /= q as usize;
        }
        digits
    }

    /// Encodes a coordinate vector, reducing each entry modulo p^{λ_i}.
    pub fn encode(&self, digits: &[u64]) -> Element {
        digits
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&d, &q)| acc * q as usize + (d % u64::from(q)) as usize)
    }

    /// The i-th standard generator.
    pub fn generator(&self, i: usize) -> Element {
        let mut d = vec![0; self.rank()];
        d[i] = 1;
        self.encode(&d)
    }

    pub fn add(&self, x: Element, y: Element) -> Element {
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut scale = 1;
        for &q in self.moduli.iter().rev() {
            let q = q as usize;
            out += ((x % q + y % q) % q) * scale;
            x /= q;
            y /= q;
            scale *= q;
        }
        out
    }

    pub fn scale(&self, k: u64, x: Element) -> Element {
        let digits: Vec<u64> = self.decode(x).iter().map(|&d| u64::from(d) * k).collect();
        self.encode(&digits)
    }

    /// Additive order of x.
    pub fn element_order(&self, x: Element) -> u64 {
        let mut order = 1u64;
        let mut z = x;
        while z != 0 {
            z = self.add(z, x);
            order += 1;
        }
        order
    }

    /// Elements killed by p^k.
    pub fn torsion(&self, k: u32) -> Vec<Element> {
        let pk = u64::from(self.ty.p).pow(k);
        (0..self.order).filter(|&x| self.scale(pk, x) == 0).collect()
    }

    pub fn zero_subgroup(&self) -> Subgroup {
        let mut s = Subgroup::empty(self.order);
        s.insert(0);
        s
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = Subgroup::empty(self.order);
        for x in 0..self.order {
            s.insert(x);
        }
        s
    }

    /// S + ⟨g⟩.
    pub fn extend(&self, s: &Subgroup, g: Element) -> Subgroup {
        if s.contains(g) {
            return s.clone();
        }
        let mut multiples = vec![0];
        let mut y = g;
        while y != 0 {
            multiples.push(y);
            y = self.add(y, g);
        }
        let mut out = Subgroup::empty(self.order);
        for x in s.elements() {
            for &t in &multiples {
                out.insert(self.add(x, t));
            }
        }
        out
    }

    pub fn span(&self, generators: &[Element]) -> Subgroup {
        generators
            .iter()
            .fold(self.zero_subgroup(), |s, &g| self.extend(&s, g))
    }

    /// p^k · S.
    pub fn multiple(&self, s: &Subgroup, k: u32) -> Subgroup {
        let pk = u64::from(self.ty.p).pow(k);
        let mut out = Subgroup::empty(self.order);
        for x in s.elements() {
            out.insert(self.scale(pk, x));
        }
        out
    }

    /// S + T.
    pub fn sum(&self, s: &Subgroup, t: &Subgroup) -> Subgroup {
        let mut out = Subgroup::empty(self.order);
        let ts: Vec<Element> = t.elements().collect();
        for x in s.elements() {
            for &y in &ts {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    fn log_p(&self, mut size: usize) -> u32 {
        let p = self.ty.p as usize;
        let mut e = 0;
        while size > 1 {
            debug_assert_eq!(size % p, 0);
            size /= p;
            e += 1;
        }
        e
    }

    /// Type of a subgroup, from |p^k S| / |p^{k+1} S| = p^{λ'_{k+1}}.
    pub fn subgroup_type(&self, s: &Subgroup) -> Partition {
        let mut conj = Vec::new();
        let mut current = s.clone();
        while current.len() > 1 {
            let next = self.multiple(&current, 1);
            conj.push(self.log_p(current.len() / next.len()));
            current = next;
        }
        Partition::new(conj)
            .expect("successive ratios decrease")
            .conjugate()
    }

    /// Type of M/S, from |p^k (M/S)| = |p^k M + S| / |S|.
    pub fn quotient_type(&self, s: &Subgroup) -> Partition {
        let whole = self.whole();
        let mut conj = Vec::new();
        let mut k = 0;
        let mut prev = self.order / s.len();
        while prev > 1 {
            k += 1;
            let next = self.sum(&self.multiple(&whole, k), s).len() / s.len();
            conj.push(self.log_p(prev / next));
            prev = next;
        }
        Partition::new(conj)
            .expect("successive ratios decrease")
            .conjugate()
    }

    /// Every subgroup, found by closing {0} under S ↦ S + ⟨g⟩.
    pub fn all_subgroups(&self, budget: &Budget) -> Result<Vec<Subgroup>> {
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let zero = self.zero_subgroup();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(s) = frontier.pop() {
            for g in 0..self.order {
                if s.contains(g) {
                    continue;
                }
                let t = self.extend(&s, g);
                if seen.insert(t.clone()) {
                    if seen.len() > budget.max_subgroups {
                        return Err(Error::Budget(format!(
                            "more than {} subgroups",
                            budget.max_subgroups
                        )));
                    }
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<Subgroup> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

/// A subset of a finite module, stored as a bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: Vec<u64>,
    size: usize,
}

impl Subgroup {
    fn empty(order: usize) -> Self {
        Subgroup {
            bits: vec![0; order.div_ceil(64)],
            size: 0,
        }
    }

    fn insert(&mut self, x: Element) {
        let (w, b) = (x / 64, x % 64);
        if self.bits[w] & (1 << b) == 0 {
            self.bits[w] |= 1 << b;
            self.size += 1;
        }
    }

    pub fn contains(&self, x: Element) -> bool {
        self.bits[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

/// Type of the subgroup generated by `generators`.
pub fn subgroup_type(module: &FiniteModule, generators: &[Element]) -> Partition {
    module.subgroup_type(&module.span(generators))
}

/// A map between modules given by generator images: column i is h(e_i),
/// `matrix[j][i]` its j-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    matrix: Vec<Vec<u64>>,
}

impl Homomorphism {
    /// Checks p^{λ_i} h[j][i] ≡ 0 mod p^{μ_j} for source type λ and
    /// target type μ.
    pub fn new(matrix: Vec<Vec<u64>>, source: &FiniteModule, target: &FiniteModule) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::Dimension(format!(
                "matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        for (j, row) in matrix.iter().enumerate() {
            for (i, &h) in row.iter().enumerate() {
                if (h * u64::from(source.moduli[i])) % u64::from(target.moduli[j]) != 0 {
                    return Err(Error::Precondition(format!(
                        "generator {} cannot map with coordinate {h} in component {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Homomorphism { matrix })
    }

    fn from_images(images: &[Element], target: &FiniteModule) -> Self {
        let cols: Vec<Vec<u32>> = images.iter().map(|&x| target.decode(x)).collect();
        let matrix = (0..target.rank())
            .map(|j| cols.iter().map(|c| u64::from(c[j])).collect())
            .collect();
        Homomorphism { matrix }
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, source: &FiniteModule, target: &FiniteModule, x: Element) -> Element {
        let xs = source.decode(x);
        let digits: Vec<u64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&xs).map(|(&h, &d)| h * u64::from(d)).sum())
            .collect();
        target.encode(&digits)
    }

    pub fn image(&self, source: &FiniteModule, target: &FiniteModule) -> Subgroup {
        let gens: Vec<Element> = (0..source.rank())
            .map(|i| self.apply(source, target, source.generator(i)))
            .collect();
        target.span(&gens)
    }

    pub fn kernel(&self, source: &FiniteModule, target: &FiniteModule) -> Subgroup {
        let mut k = Subgroup::empty(source.order());
        for x in 0..source.order() {
            if self.apply(source, target, x) == 0 {
                k.insert(x);
            }
        }
        k
    }

    /// Every well-defined homomorphism, or a budget error past `limit`.
    pub fn all(source: &FiniteModule, target: &FiniteModule, limit: usize) -> Result<Vec<Self>> {
        let choices: Vec<Vec<Element>> = source
            .ty
            .partition
            .parts()
            .iter()
            .map(|&k| target.torsion(k))
            .collect();
        let count = choices
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
            .filter(|&c| c <= limit)
            .ok_or_else(|| Error::Budget(format!("more than {limit} homomorphisms")))?;
        let mut out = Vec::with_capacity(count);
        let mut idx = vec![0; choices.len()];
        for _ in 0..count {
            let images: Vec<Element> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            out.push(Self::from_images(&images, target));
            for (slot, c) in idx.iter_mut().zip(&choices).rev() {
                *slot += 1;
                if *slot < c.len() {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(out)
    }
}

/// Images of all homomorphisms B → C, built one generator at a time: after
/// fixing images of e_1, …, e_i only their span matters.
pub fn homomorphic_images(b: &FiniteModule, c: &FiniteModule, budget: &Budget) -> Result<Vec<Subgroup>> {
    let mut level: BTreeSet<Subgroup> = BTreeSet::new();
    level.insert(c.zero_subgroup());
    for &k in b.ty.partition.parts() {
        let targets = c.torsion(k);
        let mut next = BTreeSet::new();
        for s in &level {
            for &t in &targets {
                next.insert(c.extend(s, t));
                if next.len() > budget.max_subgroups {
                    return Err(Error::Budget(format!(
                        "more than {} homomorphic images",
                        budget.max_subgroups
                    )));
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Types of all submodules of M.
pub fn submodule_types(m: &FiniteModule, budget: &Budget) -> Result<BTreeSet<Partition>> {
    Ok(m
        .all_subgroups(budget)?
        .iter()
        .map(|s| m.subgroup_type(s))
        .collect())
}

fn check_same_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Parameters(format!("{p} is not prime")))
    }
}

/// Is there an exact sequence B → C → A with the given types?
///
/// Exactness at C means some K = image(f) is the kernel of some g: C → A,
/// i.e. C/K is isomorphic to a submodule of A. Images are enumerated from
/// homomorphisms B → C; submodules of A are enumerated directly.
pub fn exists_exact_sequence_bruteforce(
    beta: &Partition,
    gamma: &Partition,
    alpha: &Partition,
    p: u32,
    budget: &Budget,
) -> Result<bool> {
    check_same_prime(p)?;
    let b = FiniteModule::of(p, beta, budget)?;
    let c = FiniteModule::of(p, gamma, budget)?;
    let a = FiniteModule::of(p, alpha, budget)?;
    if c.order() > a.order() * b.order() {
        return Ok(false);
    }
    let sub_a = submodule_types(&a, budget)?;
    let images = homomorphic_images(&b, &c, budget)?;
    Ok(images
        .iter()
        .filter(|k| k.len() * a.order() >= c.order())
        .any(|k| sub_a.contains(&c.quotient_type(k))))
}

/// Same question, answered by enumerating every pair (f, g) of
/// homomorphism matrices. Only usable for tiny modules.
pub fn exists_exact_sequence_direct(
    beta: &Partition,
    gamma: &Partition,
    alpha: &Partition,
    p: u32,
    limit: usize,
) -> Result<bool> {
    check_same_prime(p)?;
    let budget = Budget::default();
    let b = FiniteModule::of(p, beta, &budget)?;
    let c = FiniteModule::of(p, gamma, &budget)?;
    let a = FiniteModule::of(p, alpha, &budget)?;
    let fs = Homomorphism::all(&b, &c, limit)?;
    let gs = Homomorphism::all(&c, &a, limit)?;
    let kernels: HashSet<Subgroup> = gs.iter().map(|g| g.kernel(&c, &a)).collect();
    Ok(fs.iter().any(|f| kernels.contains(&f.image(&b, &c))))
}

/// The two LR-based answers to the exact-sequence question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrVerdict {
    /// α̃ ⊂ α, β̃ ⊂ β exist with c^γ_{α̃β̃} > 0.
    pub subpartitions: bool,
    /// (α, β, γ) satisfy the inequalities for C ≤ A + B.
    pub inequalities: bool,
}

fn common_rank(parts: &[&Partition]) -> usize {
    parts.iter().map(|p| p.length()).max().unwrap_or(0).max(1)
}

pub fn exists_exact_sequence_lr_routes(beta: &Partition, gamma: &Partition, alpha: &Partition) -> Result<LrVerdict> {
    let n = common_rank(&[alpha, beta, gamma]);
    let factors = [alpha.clone(), beta.clone()];
    let subpartitions = match shrink_alphas(&factors, gamma, n) {
        Ok(_) => true,
        Err(Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    let spectra = partitions_as_spectra(&factors, n)?;
    let g = partitions_as_spectra(std::slice::from_ref(gamma), n)?.remove(0);
    let inequalities = check_majorized(&spectra, &g, true)?.feasible;
    Ok(LrVerdict {
        subpartitions,
        inequalities,
    })
}

/// Existence of an exact sequence B → C → A by the subpartition criterion.
pub fn exists_exact_sequence_lr(beta: &Partition, gamma: &Partition, alpha: &Partition) -> Result<bool> {
    Ok(exists_exact_sequence_lr_routes(beta, gamma, alpha)?.subpartitions)
}

/// Is there B ⊂ C of type β with C/B of type α?
pub fn green_klein_check(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
    p: u32,
    budget: &Budget,
) -> Result<bool> {
    check_same_prime(p)?;
    if alpha.weight() + beta.weight() != gamma.weight() {
        return Ok(false);
    }
    let c = FiniteModule::of(p, gamma, budget)?;
    let size = (p as usize).pow(beta.weight());
    Ok(c
        .all_subgroups(budget)?
        .iter()
        .filter(|s| s.len() == size)
        .any(|s| &c.subgroup_type(s) == beta && &c.quotient_type(s) == alpha))
}

/// Green-Klein by enumeration, paired with LR positivity.
pub fn green_klein_agrees(alpha: &Partition, beta: &Partition, gamma: &Partition, p: u32, budget: &Budget) -> Result<bool> {
    let brute = green_klein_check(alpha, beta, gamma, p, budget)?;
    Ok(brute == !lr_coefficient(alpha, beta, gamma).is_zero())
}

/// Given c^γ_{αβ} > 0 and γ̃ ⊂ γ, finds α̃ ⊂ α, β̃ ⊂ β with
/// c^{γ̃}_{α̃β̃} > 0.
pub fn sub_triple_search(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
    gamma_tilde: &Partition,
) -> Result<(Partition, Partition)> {
    if lr_coefficient(alpha, beta, gamma).is_zero() {
        return Err(Error::Precondition(format!(
            "c({alpha}, {beta}; {gamma}) is zero"
        )));
    }
    if !gamma.contains(gamma_tilde) {
        return Err(Error::Precondition(format!(
            "{gamma_tilde} is not contained in {gamma}"
        )));
    }
    let n = common_rank(&[alpha, beta, gamma]);
    let mut found = shrink_alphas(&[alpha.clone(), beta.clone()], gamma_tilde, n)?;
    let b = found.pop().expect("two factors");
    let a = found.pop().expect("two factors");
    Ok((a, b))
}

/// CLI-facing record for one (α, β, γ, p) comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleVerdict {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
    pub p: u32,
    pub bruteforce: bool,
    pub lr: bool,
    pub inequalities: bool,
    pub agree: bool,
}

pub fn compare_routes(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
    p: u32,
    budget: &Budget,
) -> Result<ModuleVerdict> {
    let bruteforce = exists_exact_sequence_bruteforce(beta, gamma, alpha, p, budget)?;
    let routes = exists_exact_sequence_lr_routes(beta, gamma, alpha)?;
    Ok(ModuleVerdict {
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: gamma.clone(),
        p,
        bruteforce,
        lr: routes.subpartitions,
        inequalities: routes.inequalities,
        agree: bruteforce == routes.subpartitions && bruteforce == routes.inequalities,
    })
}
