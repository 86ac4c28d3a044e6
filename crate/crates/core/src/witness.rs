//! Numerical witnesses: Hermitian (or real symmetric) matrices with
//! prescribed spectra whose sum is ≤ 0, = 0, or dominates a given C.
//!
//! Exact splitting decisions are made over rationals. Blocks that admit no
//! proper tight inequality and have a zero total are solved by alternating
//! projections between the isospectral orbits and the sum-zero subspace.

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::feasibility::{
    check_majorized, check_negative_sum, check_reverse_majorized, choose_tight, epsilon_shift,
    negated_formulation, split,
};
use crate::horn::IndexTuple;
use crate::scalar::{Rational, Scalar, Spectrum};

/// Scalars the solver can run over: `f64` (real symmetric mode) and
/// `Complex64` (Hermitian mode).
pub trait Field: ComplexField<RealField = f64> + Copy {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn to_c64(self) -> Complex64;
}

impl Field for f64 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Field for Complex64 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }
    fn to_c64(self) -> Complex64 {
        self
    }
}

/// Relative tolerance for accepting input as Hermitian.
const HERMITIAN_TOLERANCE: f64 = 1e-9;

/// Largest entry modulus.
pub fn max_modulus(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A dense Hermitian matrix. Construction symmetrizes, so
/// `entry(j, i) == entry(i, j).conj()` holds exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

impl HermitianMatrix {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let skew = max_modulus(&(&m - m.adjoint()));
        if skew > HERMITIAN_TOLERANCE * max_modulus(&m).max(1.0) {
            return Err(Error::Precondition(format!(
                "matrix is not Hermitian (deviation {skew:e})"
            )));
        }
        Ok(Self::symmetrized(m))
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must all have length n".into()));
        }
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    fn symmetrized(m: DMatrix<Complex64>) -> Self {
        let adj = m.adjoint();
        HermitianMatrix((m + adj).unscale(2.0))
    }

    fn from_field<T: Field>(m: &DMatrix<T>) -> Self {
        Self::symmetrized(m.map(Field::to_c64))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&v| Complex64::new(v, 0.0)));
        HermitianMatrix(DMatrix::from_diagonal(&d))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(DMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        HermitianMatrix(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermitianMatrix(&self.0 - &other.0)
    }

    pub fn neg(&self) -> Self {
        HermitianMatrix(-&self.0)
    }

    /// `self + c·I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += c;
        }
        HermitianMatrix(m)
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.0);
        m.view_mut((a, a), (b, b)).copy_from(&other.0);
        HermitianMatrix(m)
    }

    /// Eigenvalues, sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(self).0.into_values()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    /// Nested arrays of `[re, im]` pairs.
    pub fn to_json(&self) -> Value {
        let n = self.dim();
        Value::Array(
            (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| {
                                let z = self.0[(i, j)];
                                json!([z.re + 0.0, z.im + 0.0])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// One row per line, entries as `re,im` with 17 significant digits.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    let z = self.0[(i, j)];
                    // Adding +0.0 turns -0.0 into 0.0.
                    format!("{:.16e},{:.16e}", z.re + 0.0, z.im + 0.0)
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn sorted_eigen<T: Field>(m: DMatrix<T>) -> (Vec<f64>, DMatrix<T>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = eig.eigenvectors.select_columns(&order);
    (values, vectors)
}

/// Eigenvalues (descending) and a unitary whose columns are matching
/// eigenvectors.
pub fn eig_hermitian(m: &HermitianMatrix) -> (Spectrum<f64>, DMatrix<Complex64>) {
    let (values, vectors) = sorted_eigen(m.0.clone());
    (
        Spectrum::new(values).expect("sorted eigenvalues are ordered"),
        vectors,
    )
}

/// Haar-distributed unitary (orthogonal over `f64`): QR of a Gaussian
/// matrix with the phases of diag(R) moved into Q.
pub fn haar_unitary<T: Field, R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<T> {
    let g = DMatrix::<T>::from_fn(n, n, |_, _| T::gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = d.modulus();
        if modulus > 0.0 {
            let phase = d.unscale(modulus);
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

fn conjugate_diag<T: Field>(u: &DMatrix<T>, values: &[f64]) -> DMatrix<T> {
    let mut scaled = u.clone();
    for (j, &v) in values.iter().enumerate() {
        for i in 0..u.nrows() {
            scaled[(i, j)] = scaled[(i, j)].scale(v);
        }
    }
    let m = scaled * u.adjoint();
    let adj = m.adjoint();
    (m + adj).unscale(2.0)
}

/// U diag(α) U* for a Haar-random U determined by `seed`.
pub fn sample_with_spectrum(alpha: &[f64], seed: u64, real: bool) -> HermitianMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(alpha, &mut rng, real)
}

pub(crate) fn sample_with_rng<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R, real: bool) -> HermitianMatrix {
    if real {
        HermitianMatrix::from_field(&conjugate_diag(&haar_unitary::<f64, _>(alpha.len(), rng), alpha))
    } else {
        HermitianMatrix::from_field(&conjugate_diag(
            &haar_unitary::<Complex64, _>(alpha.len(), rng),
            alpha,
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub real: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 5,
            iterations: 2000,
            tolerance: 1e-8,
            seed: 0,
            real: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Success,
    /// The restart budget ran out on some block; says nothing about
    /// feasibility.
    Unresolved,
}

/// How a witness was assembled.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitNode {
    Empty,
    /// 1×1 blocks: the spectra themselves.
    Scalar,
    Solver {
        size: usize,
        converged: bool,
        restart: usize,
        iterations: usize,
        sum_residual: f64,
    },
    Split {
        tight: IndexTuple,
        /// Block on the indices of the tight tuple (sum zero).
        inner: Box<SplitNode>,
        outer: Box<SplitNode>,
    },
    Shift {
        epsilon: String,
        child: Box<SplitNode>,
    },
}

impl SplitNode {
    pub fn solver_blocks(&self) -> usize {
        match self {
            SplitNode::Solver { .. } => 1,
            SplitNode::Split { inner, outer, .. } => inner.solver_blocks() + outer.solver_blocks(),
            SplitNode::Shift { child, .. } => child.solver_blocks(),
            SplitNode::Empty | SplitNode::Scalar => 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessResult {
    pub status: WitnessStatus,
    pub matrices: Vec<HermitianMatrix>,
    #[serde(rename = "C")]
    pub c: Option<HermitianMatrix>,
    pub spectral_residual: f64,
    /// Smallest eigenvalue of the slack: −ΣA(s), or ΣA(s) − C, or C − ΣA(s).
    pub slack_min_eigenvalue: f64,
    /// Frobenius norm of the slack for sum-zero problems, else 0.
    pub sum_residual: f64,
    pub split_tree: SplitNode,
}

impl WitnessResult {
    pub fn succeeded(&self) -> bool {
        self.status == WitnessStatus::Success
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witnesses serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, m) in self.matrices.iter().enumerate() {
            out.push_str(&format!("A({})\n", s + 1));
            out.push_str(&m.to_text());
        }
        if let Some(c) = &self.c {
            out.push_str("C\n");
            out.push_str(&c.to_text());
        }
        out
    }
}

struct Builder<'a, T: Field> {
    cfg: &'a SolverConfig,
    blocks: u64,
    unresolved: bool,
    _field: std::marker::PhantomData<T>,
}

fn to_floats(s: &Spectrum<Rational>) -> Vec<f64> {
    s.values().iter().map(Scalar::to_f64).collect()
}

fn direct_sums<T: Field>(a: Vec<DMatrix<T>>, b: Vec<DMatrix<T>>) -> Vec<DMatrix<T>> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| {
            let (p, q) = (x.nrows(), y.nrows());
            let mut m = DMatrix::zeros(p + q, p + q);
            m.view_mut((0, 0), (p, p)).copy_from(&x);
            m.view_mut((p, p), (q, q)).copy_from(&y);
            m
        })
        .collect()
}

impl<'a, T: Field> Builder<'a, T> {
    fn new(cfg: &'a SolverConfig) -> Self {
        Builder {
            cfg,
            blocks: 0,
            unresolved: false,
            _field: std::marker::PhantomData,
        }
    }

    /// Matrices with the given spectra and ΣB(s) ≤ 0. The spectra must
    /// satisfy every negative-sum inequality.
    fn negative_sum(&mut self, betas: &[Spectrum<Rational>]) -> Result<(Vec<DMatrix<T>>, SplitNode)> {
        let n = betas[0].len();
        if n == 0 {
            return Ok((vec![DMatrix::zeros(0, 0); betas.len()], SplitNode::Empty));
        }
        match choose_tight(betas, n)? {
            Some(t) if t.r() == n => self.sum_zero(betas),
            Some(t) => {
                let (inner, outer) = split(betas, &t)?;
                let (a, na) = self.sum_zero(&inner)?;
                let (b, nb) = self.negative_sum(&outer)?;
                Ok((
                    direct_sums(a, b),
                    SplitNode::Split {
                        tight: t,
                        inner: Box::new(na),
                        outer: Box::new(nb),
                    },
                ))
            }
            None => {
                let (eps, shifted) = epsilon_shift(betas)?;
                let (mats, child) = self.negative_sum(&shifted)?;
                let e = eps.to_f64();
                let mats = mats
                    .into_iter()
                    .map(|mut m| {
                        for i in 0..n {
                            m[(i, i)] -= T::from_real(e);
                        }
                        m
                    })
                    .collect();
                Ok((
                    mats,
                    SplitNode::Shift {
                        epsilon: eps.render(),
                        child: Box::new(child),
                    },
                ))
            }
        }
    }

    /// Matrices with the given spectra and ΣB(s) = 0. The spectra must have
    /// zero total and satisfy every negative-sum inequality.
    fn sum_zero(&mut self, betas: &[Spectrum<Rational>]) -> Result<(Vec<DMatrix<T>>, SplitNode)> {
        let n = betas[0].len();
        if n == 0 {
            return Ok((vec![DMatrix::zeros(0, 0); betas.len()], SplitNode::Empty));
        }
        if n == 1 {
            let mats = betas
                .iter()
                .map(|b| DMatrix::from_element(1, 1, T::from_real(b.at(1).to_f64())))
                .collect();
            return Ok((mats, SplitNode::Scalar));
        }
        if let Some(t) = choose_tight(betas, n - 1)? {
            let (inner, outer) = split(betas, &t)?;
            let (a, na) = self.sum_zero(&inner)?;
            let (b, nb) = self.sum_zero(&outer)?;
            return Ok((
                direct_sums(a, b),
                SplitNode::Split {
                    tight: t,
                    inner: Box::new(na),
                    outer: Box::new(nb),
                },
            ));
        }
        let spectra: Vec<Vec<f64>> = betas.iter().map(to_floats).collect();
        let block = self.blocks;
        self.blocks += 1;
        let out = alternating_projections::<T>(&spectra, self.cfg, block);
        if !out.converged {
            self.unresolved = true;
        }
        let node = SplitNode::Solver {
            size: n,
            converged: out.converged,
            restart: out.restart,
            iterations: out.iterations,
            sum_residual: out.residual,
        };
        Ok((out.matrices, node))
    }
}

struct SolverOutcome<T: Field> {
    matrices: Vec<DMatrix<T>>,
    converged: bool,
    restart: usize,
    iterations: usize,
    residual: f64,
}

/// Stream id for a (block, restart) pair; restarts stay independent and
/// reproducible regardless of execution order.
fn restart_rng(seed: u64, block: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((block << 16) | restart as u64);
    rng
}

/// Alternates between subtracting the mean of ΣX(s) from every factor and
/// respectralizing each factor to its target. Internal tolerance is a tenth
/// of the declared one so that assembled slacks stay within it.
fn alternating_projections<T: Field>(
    spectra: &[Vec<f64>],
    cfg: &SolverConfig,
    block: u64,
) -> SolverOutcome<T> {
    let k = spectra.len();
    let n = spectra[0].len();
    let tol = 0.1 * cfg.tolerance;
    let mut best: Option<SolverOutcome<T>> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = restart_rng(cfg.seed, block, restart);
        let mut xs: Vec<DMatrix<T>> = spectra
            .iter()
            .map(|a| conjugate_diag(&haar_unitary::<T, _>(n, &mut rng), a))
            .collect();
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        for it in 0..=cfg.iterations {
            let total = xs.iter().fold(DMatrix::<T>::zeros(n, n), |acc, x| acc + x);
            residual = total.norm();
            iterations = it;
            if residual <= tol || it == cfg.iterations {
                break;
            }
            let mean = total.unscale(k as f64);
            for (x, a) in xs.iter_mut().zip(spectra) {
                let (_, v) = sorted_eigen(&*x - &mean);
                *x = conjugate_diag(&v, a);
            }
        }
        let converged = residual <= tol;
        let candidate = SolverOutcome {
            matrices: xs,
            converged,
            restart,
            iterations,
            residual,
        };
        if converged {
            return candidate;
        }
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(candidate);
        }
    }
    best.expect("at least one restart runs")
}

fn spectral_residual(mats: &[HermitianMatrix], targets: &[&Spectrum<Rational>]) -> f64 {
    mats.iter()
        .zip(targets)
        .map(|(m, t)| {
            m.eigenvalues()
                .iter()
                .zip(t.values())
                .map(|(a, b)| (a - b.to_f64()).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn build<T: Field>(
    betas: &[Spectrum<Rational>],
    cfg: &SolverConfig,
    sum_zero: bool,
) -> Result<(Vec<HermitianMatrix>, SplitNode, bool)> {
    let mut b = Builder::<T>::new(cfg);
    let (mats, node) = if sum_zero {
        b.sum_zero(betas)?
    } else {
        b.negative_sum(betas)?
    };
    let mats = mats.iter().map(HermitianMatrix::from_field).collect();
    Ok((mats, node, b.unresolved))
}

fn build_any(
    betas: &[Spectrum<Rational>],
    cfg: &SolverConfig,
    sum_zero: bool,
) -> Result<(Vec<HermitianMatrix>, SplitNode, bool)> {
    if cfg.real {
        build::<f64>(betas, cfg, sum_zero)
    } else {
        build::<Complex64>(betas, cfg, sum_zero)
    }
}

fn status(unresolved: bool) -> WitnessStatus {
    if unresolved {
        WitnessStatus::Unresolved
    } else {
        WitnessStatus::Success
    }
}

fn sum_of(mats: &[HermitianMatrix]) -> HermitianMatrix {
    let n = mats.first().map_or(0, HermitianMatrix::dim);
    mats.iter().fold(HermitianMatrix::zeros(n), |acc, m| acc.add(m))
}

/// Matrices with spectra `alphas` and ΣA(s) = 0.
pub fn realize_sum_zero(alphas: &[Spectrum<Rational>], cfg: &SolverConfig) -> Result<WitnessResult> {
    let report = check_negative_sum(alphas, false)?;
    if !report.feasible {
        return Err(Error::Infeasible(
            "a negative-sum inequality is violated".into(),
        ));
    }
    let total = alphas.iter().fold(Rational::from_i64(0), |a, s| a + s.total());
    if !total.is_tight() {
        return Err(Error::Precondition(format!(
            "entries sum to {total}, not zero"
        )));
    }
    let (mats, tree, unresolved) = build_any(alphas, cfg, true)?;
    let targets: Vec<&Spectrum<Rational>> = alphas.iter().collect();
    let sum = sum_of(&mats);
    Ok(WitnessResult {
        status: status(unresolved),
        spectral_residual: spectral_residual(&mats, &targets),
        slack_min_eigenvalue: sum.neg().min_eigenvalue(),
        sum_residual: sum.matrix().norm(),
        matrices: mats,
        c: None,
        split_tree: tree,
    })
}

/// Matrices with spectra `alphas` and ΣA(s) ≤ 0.
pub fn realize_negative_sum(alphas: &[Spectrum<Rational>], cfg: &SolverConfig) -> Result<WitnessResult> {
    if !check_negative_sum(alphas, false)?.feasible {
        return Err(Error::Infeasible(
            "a negative-sum inequality is violated".into(),
        ));
    }
    let (mats, tree, unresolved) = build_any(alphas, cfg, false)?;
    let targets: Vec<&Spectrum<Rational>> = alphas.iter().collect();
    let sum = sum_of(&mats);
    Ok(WitnessResult {
        status: status(unresolved),
        spectral_residual: spectral_residual(&mats, &targets),
        slack_min_eigenvalue: sum.neg().min_eigenvalue(),
        sum_residual: 0.0,
        matrices: mats,
        c: None,
        split_tree: tree,
    })
}

/// Matrices A(s) with spectra `alphas` and C with spectrum `gamma` such that
/// C ≤ ΣA(s). Built as −A(1), …, −A(m), C with nonpositive sum.
pub fn realize_majorized(
    alphas: &[Spectrum<Rational>],
    gamma: &Spectrum<Rational>,
    cfg: &SolverConfig,
) -> Result<WitnessResult> {
    if !check_majorized(alphas, gamma, true)?.feasible {
        return Err(Error::Infeasible(
            "a majorization inequality is violated".into(),
        ));
    }
    let betas = negated_formulation(alphas, gamma);
    let (mut mats, tree, unresolved) = build_any(&betas, cfg, false)?;
    let c = mats.pop().expect("gamma slot is present");
    let mats: Vec<HermitianMatrix> = mats.iter().map(HermitianMatrix::neg).collect();
    let mut targets: Vec<&Spectrum<Rational>> = alphas.iter().collect();
    targets.push(gamma);
    let mut all = mats.clone();
    all.push(c.clone());
    Ok(WitnessResult {
        status: status(unresolved),
        spectral_residual: spectral_residual(&all, &targets),
        slack_min_eigenvalue: sum_of(&mats).sub(&c).min_eigenvalue(),
        sum_residual: 0.0,
        matrices: mats,
        c: Some(c),
        split_tree: tree,
    })
}

/// Matrices A(s) with spectra `alphas` and C with spectrum `gamma` such that
/// ΣA(s) ≤ C. Built as A(1), …, A(m), −C with nonpositive sum.
pub fn realize_reverse_majorized(
    alphas: &[Spectrum<Rational>],
    gamma: &Spectrum<Rational>,
    cfg: &SolverConfig,
) -> Result<WitnessResult> {
    if !check_reverse_majorized(alphas, gamma, true)?.feasible {
        return Err(Error::Infeasible(
            "a reverse majorization inequality is violated".into(),
        ));
    }
    let mut betas = alphas.to_vec();
    betas.push(gamma.negate_reverse());
    let (mut mats, tree, unresolved) = build_any(&betas, cfg, false)?;
    let c = mats.pop().expect("gamma slot is present").neg();
    let mut targets: Vec<&Spectrum<Rational>> = alphas.iter().collect();
    targets.push(gamma);
    let mut all = mats.clone();
    all.push(c.clone());
    Ok(WitnessResult {
        status: status(unresolved),
        spectral_residual: spectral_residual(&all, &targets),
        slack_min_eigenvalue: c.sub(&sum_of(&mats)).min_eigenvalue(),
        sum_residual: 0.0,
        matrices: mats,
        c: Some(c),
        split_tree: tree,
    })
}

/// Outcome of sampling random instances and checking the inequalities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NecessityReport {
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    /// Largest amount by which any inequality failed (0 if none did).
    pub max_violation: f64,
    /// Samples with some violation above `threshold`.
    pub violations: usize,
    pub threshold: f64,
}

fn max_violation(slacks: impl IntoIterator<Item = f64>) -> f64 {
    slacks.into_iter().fold(0.0, |acc, s| acc.max(-s))
}

fn random_spectrum<R: Rng + ?Sized>(n: usize, rng: &mut R, nonnegative: bool) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            let x: f64 = rng.sample(StandardNormal);
            if nonnegative {
                x.abs()
            } else {
                2.0 * x
            }
        })
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn float_spectrum(values: Vec<f64>) -> Spectrum<f64> {
    let mut v = values;
    v.sort_by(|a, b| b.total_cmp(a));
    Spectrum::new(v).expect("sorted")
}

/// Samples Hermitian A(1), …, A(m) with random spectra and a random
/// positive semidefinite P, sets C = ΣA(s) − P and C' = ΣA(s) + P, and
/// checks every Horn triple inequality for C ≤ ΣA(s), every negative-sum
/// inequality for the negated formulation, and every reverse inequality
/// for ΣA(s) ≤ C'.
pub fn verify_necessity(n: usize, m: usize, samples: usize, seed: u64, threshold: f64) -> Result<NecessityReport> {
    if n == 0 || m == 0 {
        return Err(Error::Parameters("need n >= 1 and m >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..samples {
        let alphas: Vec<Vec<f64>> = (0..m).map(|_| random_spectrum(n, &mut rng, false)).collect();
        let mats: Vec<HermitianMatrix> = alphas
            .iter()
            .map(|a| sample_with_rng(a, &mut rng, false))
            .collect();
        let p = sample_with_rng(&random_spectrum(n, &mut rng, true), &mut rng, false);
        let sum = sum_of(&mats);
        let below = float_spectrum(sum.sub(&p).eigenvalues());
        let above = float_spectrum(sum.add(&p).eigenvalues());
        let spectra: Vec<Spectrum<f64>> = alphas.into_iter().map(float_spectrum).collect();

        let mut v = max_violation(
            check_majorized(&spectra, &below, false)?
                .violated
                .iter()
                .map(|o| o.slack),
        );
        let negated = negated_formulation(&spectra, &below);
        v = v.max(max_violation(
            check_negative_sum(&negated, false)?
                .violated
                .iter()
                .map(|o| o.slack),
        ));
        v = v.max(max_violation(
            check_reverse_majorized(&spectra, &above, false)?
                .violated
                .iter()
                .map(|o| o.slack),
        ));
        worst = worst.max(v);
        if v > threshold {
            violations += 1;
        }
    }
    Ok(NecessityReport {
        n,
        m,
        samples,
        max_violation: worst,
        violations,
        threshold,
    })
}
