//! Python bindings: partitions, the inequality lists, feasibility checks,
//! witnesses, module oracles and the independence test.

use horncone::dvr::{self, Budget};
use horncone::error::Error;
use horncone::feasibility::{self, FeasibilityReport, Outcome};
use horncone::horn::{self, IndexSet, IndexTuple, ListKind};
use horncone::lr::{self, BoxBound, Partition};
use horncone::minimality;
use horncone::scalar::{parse_rational, validate_spectra, Rational, Spectrum};
use horncone::witness::{self, HermitianMatrix, SolverConfig};
use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(horncone_py, InfeasibleError, PyValueError, "The inputs violate a required inequality.");
create_exception!(horncone_py, BudgetError, PyRuntimeError, "A search budget was exhausted.");

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Infeasible(_) => InfeasibleError::new_err(e.to_string()),
        Error::Budget(_) => BudgetError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPyErr<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPyErr<T> for horncone::error::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

/// Rows of values, each rendered with `str()`, so ints, strings,
/// `Fraction`s and floats are all accepted.
fn value_rows(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for row in obj.try_iter()? {
        let mut values = Vec::new();
        for v in row?.try_iter()? {
            values.push(v?.str()?.to_str()?.to_string());
        }
        rows.push(values);
    }
    Ok(rows)
}

fn parse_rows(rows: &[Vec<String>]) -> horncone::error::Result<Vec<Spectrum<Rational>>> {
    let values = rows
        .iter()
        .map(|r| r.iter().map(|v| parse_rational(v)).collect())
        .collect::<horncone::error::Result<Vec<Vec<Rational>>>>()?;
    validate_spectra(values)
}

fn spectra_arg(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Spectrum<Rational>>> {
    parse_rows(&value_rows(obj)?).py()
}

/// γ is validated as factor m + 1 so errors name it correctly.
fn gamma_arg(obj: &Bound<'_, PyAny>, alphas: &[Spectrum<Rational>]) -> PyResult<Spectrum<Rational>> {
    let mut rows: Vec<Vec<String>> = alphas
        .iter()
        .map(|a| a.values().iter().map(|v| v.to_string()).collect())
        .collect();
    let mut g = Vec::new();
    for v in obj.try_iter()? {
        g.push(v?.str()?.to_str()?.to_string());
    }
    rows.push(g);
    let mut all = parse_rows(&rows).py()?;
    Ok(all.pop().expect("gamma row is present"))
}

fn partition_arg(obj: &Bound<'_, PyAny>) -> PyResult<Partition> {
    if let Ok(p) = obj.extract::<PyRef<'_, PyPartition>>() {
        return Ok(p.0.clone());
    }
    Partition::new(obj.extract::<Vec<u32>>()?).py()
}

fn partitions_arg(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Partition>> {
    obj.try_iter()?.map(|p| partition_arg(&p?)).collect()
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((q.numer().clone(), q.denom().clone()))
}

fn sets_of(t: &IndexTuple) -> Vec<Vec<u32>> {
    t.sets().iter().map(|s| s.elements().to_vec()).collect()
}

#[pyclass(name = "Partition", module = "horncone_py", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPartition(Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        Ok(PyPartition(Partition::new(parts).py()?))
    }

    /// Parses `"2,1"`; `""` and `"-"` give the empty partition.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPartition(Partition::parse(text).py()?))
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u32 {
        self.0.weight()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn contains(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(&partition_arg(other)?))
    }

    fn __len__(&self) -> usize {
        self.0.length()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// One evaluated inequality; `slack` is right side minus left side.
#[pyclass(module = "horncone_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Inequality {
    #[pyo3(get)]
    sets: Vec<Vec<u32>>,
    #[pyo3(get)]
    k: Option<Vec<u32>>,
    exact_slack: Rational,
}

#[pymethods]
impl Inequality {
    #[getter]
    fn slack<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.exact_slack)
    }

    fn __repr__(&self) -> String {
        format!("Inequality(sets={:?}, k={:?}, slack={})", self.sets, self.k, self.exact_slack)
    }
}

impl From<&Outcome<Rational>> for Inequality {
    fn from(o: &Outcome<Rational>) -> Self {
        Inequality {
            sets: sets_of(&o.tuple),
            k: o.k.as_ref().map(|k| k.elements().to_vec()),
            exact_slack: o.slack.clone(),
        }
    }
}

#[pyclass(name = "FeasibilityReport", module = "horncone_py", frozen)]
struct PyFeasibilityReport {
    #[pyo3(get)]
    feasible: bool,
    #[pyo3(get)]
    violated: Vec<Inequality>,
    #[pyo3(get)]
    tight: Vec<Inequality>,
    #[pyo3(get)]
    max_tight_r: Option<usize>,
    json: String,
}

#[pymethods]
impl PyFeasibilityReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __bool__(&self) -> bool {
        self.feasible
    }

    fn __repr__(&self) -> String {
        format!(
            "FeasibilityReport(feasible={}, violated={}, tight={})",
            self.feasible,
            self.violated.len(),
            self.tight.len()
        )
    }
}

impl From<FeasibilityReport<Rational>> for PyFeasibilityReport {
    fn from(r: FeasibilityReport<Rational>) -> Self {
        PyFeasibilityReport {
            feasible: r.feasible,
            violated: r.violated.iter().map(Inequality::from).collect(),
            tight: r.tight.iter().map(Inequality::from).collect(),
            max_tight_r: r.max_tight_r,
            json: r.to_json(),
        }
    }
}

#[pyclass(module = "horncone_py", frozen, get_all)]
struct ListEntry {
    r: usize,
    sets: Vec<Vec<u32>>,
    coefficient: BigUint,
}

#[pymethods]
impl ListEntry {
    fn __repr__(&self) -> String {
        format!("ListEntry(sets={:?}, coefficient={})", self.sets, self.coefficient)
    }
}

#[pyclass(module = "horncone_py", frozen, get_all)]
struct HornTriple {
    r: usize,
    sets: Vec<Vec<u32>>,
    k: Vec<u32>,
    coefficient: BigUint,
}

#[pymethods]
impl HornTriple {
    fn __repr__(&self) -> String {
        format!("HornTriple(sets={:?}, k={:?}, coefficient={})", self.sets, self.k, self.coefficient)
    }
}

type Rows = Vec<Vec<Complex64>>;

fn rows_of(m: &HermitianMatrix) -> Rows {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.entry(i, j)).collect()).collect()
}

#[pyclass(name = "WitnessResult", module = "horncone_py", frozen)]
struct PyWitnessResult {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    matrices: Vec<Rows>,
    #[pyo3(get)]
    c: Option<Rows>,
    #[pyo3(get)]
    spectral_residual: f64,
    #[pyo3(get)]
    slack_min_eigenvalue: f64,
    #[pyo3(get)]
    sum_residual: f64,
    json: String,
}

#[pymethods]
impl PyWitnessResult {
    #[getter]
    fn succeeded(&self) -> bool {
        self.status == "success"
    }

    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "WitnessResult(status={:?}, spectral_residual={:e}, slack_min_eigenvalue={:e})",
            self.status, self.spectral_residual, self.slack_min_eigenvalue
        )
    }
}

impl From<witness::WitnessResult> for PyWitnessResult {
    fn from(w: witness::WitnessResult) -> Self {
        PyWitnessResult {
            status: if w.succeeded() { "success" } else { "unresolved" }.to_string(),
            matrices: w.matrices.iter().map(rows_of).collect(),
            c: w.c.as_ref().map(rows_of),
            spectral_residual: w.spectral_residual,
            slack_min_eigenvalue: w.slack_min_eigenvalue,
            sum_residual: w.sum_residual,
            json: w.to_json(),
        }
    }
}

#[pyclass(name = "ModuleVerdict", module = "horncone_py", frozen, get_all)]
struct PyModuleVerdict {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    gamma: Vec<u32>,
    p: u32,
    bruteforce: bool,
    lr: bool,
    inequalities: bool,
    agree: bool,
}

#[pymethods]
impl PyModuleVerdict {
    fn __repr__(&self) -> String {
        format!(
            "ModuleVerdict(alpha={:?}, beta={:?}, gamma={:?}, p={}, bruteforce={}, lr={}, inequalities={}, agree={})",
            self.alpha, self.beta, self.gamma, self.p, self.bruteforce, self.lr, self.inequalities, self.agree
        )
    }
}

#[pyclass(name = "RedundancyReport", module = "horncone_py", frozen)]
struct PyRedundancyReport {
    #[pyo3(get)]
    n: u32,
    #[pyo3(get)]
    m: usize,
    #[pyo3(get)]
    conditional: bool,
    #[pyo3(get)]
    all_essential: bool,
    /// One flag per row, in system order.
    #[pyo3(get)]
    essential: Vec<bool>,
    json: String,
}

#[pymethods]
impl PyRedundancyReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "RedundancyReport(n={}, m={}, rows={}, all_essential={}, conditional={})",
            self.n,
            self.m,
            self.essential.len(),
            self.all_essential,
            self.conditional
        )
    }
}

#[pyfunction]
fn lr_coefficient(lam: &Bound<'_, PyAny>, mu: &Bound<'_, PyAny>, nu: &Bound<'_, PyAny>) -> PyResult<BigUint> {
    Ok(lr::lr_coefficient(&partition_arg(lam)?, &partition_arg(mu)?, &partition_arg(nu)?))
}

/// ∏ σ_λ in H*(Gr(r, n)) as a dict from partitions to coefficients.
#[pyfunction]
fn multi_product<'py>(py: Python<'py>, partitions: &Bound<'py, PyAny>, r: usize, n: usize) -> PyResult<Bound<'py, PyDict>> {
    if r > n {
        return Err(PyValueError::new_err(format!("r = {r} exceeds n = {n}")));
    }
    let product = lr::multi_product(&partitions_arg(partitions)?, BoxBound::grassmannian(r, n)).py()?;
    let out = PyDict::new(py);
    for (p, c) in product.terms() {
        out.set_item(PyPartition(p.clone()), c.clone())?;
    }
    Ok(out)
}

fn list_kind(kind: &str) -> PyResult<ListKind> {
    match kind {
        "S" | "s" => Ok(ListKind::S),
        "R" | "r" => Ok(ListKind::R),
        _ => Err(PyValueError::new_err(format!("kind must be 'S' or 'R', not {kind:?}"))),
    }
}

/// S_r^n(m) or R_r^n(m); the union over all r when `r` is None.
#[pyfunction]
#[pyo3(signature = (kind, n, m, r=None))]
fn generate_list(kind: &str, n: u32, m: usize, r: Option<u32>) -> PyResult<Vec<ListEntry>> {
    let kind = list_kind(kind)?;
    let entries = match r {
        Some(r) => horn::generate_list(kind, r, n, m),
        None => horn::generate_union(kind, n, m),
    }
    .py()?;
    Ok(entries
        .iter()
        .map(|e| ListEntry {
            r: e.tuple.r(),
            sets: sets_of(&e.tuple),
            coefficient: e.coefficient.clone(),
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, m, coefficient_one_only=true, reverse=false))]
fn generate_triples(n: u32, m: usize, coefficient_one_only: bool, reverse: bool) -> PyResult<Vec<HornTriple>> {
    let triples = if reverse {
        horn::generate_reverse_triples(n, m, coefficient_one_only)
    } else {
        horn::generate_horn_triples(n, m, coefficient_one_only)
    }
    .py()?;
    Ok(triples
        .iter()
        .map(|t| HornTriple {
            r: t.r(),
            sets: sets_of(&t.tuple),
            k: t.k.elements().to_vec(),
            coefficient: t.coefficient.clone(),
        })
        .collect())
}

/// Whether (sets) lies in S (nonzero ω-product) and in R (point class with
/// coefficient 1).
#[pyfunction]
fn classify_tuple(sets: Vec<Vec<u32>>, n: u32) -> PyResult<(bool, bool)> {
    let sets = sets
        .into_iter()
        .map(|s| IndexSet::new(s, n))
        .collect::<horncone::error::Result<Vec<_>>>()
        .py()?;
    let t = IndexTuple::new(sets).py()?;
    Ok((t.in_s(), t.in_r()))
}

#[pyfunction]
#[pyo3(signature = (alphas, use_r_only=true))]
fn check_negative_sum(alphas: &Bound<'_, PyAny>, use_r_only: bool) -> PyResult<PyFeasibilityReport> {
    Ok(feasibility::check_negative_sum(&spectra_arg(alphas)?, use_r_only).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (alphas, gamma, coefficient_one_only=true))]
fn check_majorized(alphas: &Bound<'_, PyAny>, gamma: &Bound<'_, PyAny>, coefficient_one_only: bool) -> PyResult<PyFeasibilityReport> {
    let a = spectra_arg(alphas)?;
    let g = gamma_arg(gamma, &a)?;
    Ok(feasibility::check_majorized(&a, &g, coefficient_one_only).py()?.into())
}

#[pyfunction]
fn check_equality(alphas: &Bound<'_, PyAny>, gamma: &Bound<'_, PyAny>) -> PyResult<PyFeasibilityReport> {
    let a = spectra_arg(alphas)?;
    let g = gamma_arg(gamma, &a)?;
    Ok(feasibility::check_klyachko_equality(&a, &g).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (alphas, gamma, coefficient_one_only=true))]
fn check_reverse_majorized(
    alphas: &Bound<'_, PyAny>,
    gamma: &Bound<'_, PyAny>,
    coefficient_one_only: bool,
) -> PyResult<PyFeasibilityReport> {
    let a = spectra_arg(alphas)?;
    let g = gamma_arg(gamma, &a)?;
    Ok(feasibility::check_reverse_majorized(&a, &g, coefficient_one_only).py()?.into())
}

/// A partition γ̃ ⊃ γ of weight Σ|α(s)| satisfying the equality conditions.
#[pyfunction]
fn lift_gamma(alphas: &Bound<'_, PyAny>, gamma: &Bound<'_, PyAny>, n: usize) -> PyResult<PyPartition> {
    Ok(PyPartition(feasibility::lift_gamma(&partitions_arg(alphas)?, &partition_arg(gamma)?, n).py()?))
}

/// Partitions α̃(s) ⊂ α(s) with Σ|α̃(s)| = |γ| and V(γ) ⊂ ⊗V(α̃(s)).
#[pyfunction]
fn shrink_alphas(alphas: &Bound<'_, PyAny>, gamma: &Bound<'_, PyAny>, n: usize) -> PyResult<Vec<PyPartition>> {
    let shrunk = feasibility::shrink_alphas(&partitions_arg(alphas)?, &partition_arg(gamma)?, n).py()?;
    Ok(shrunk.into_iter().map(PyPartition).collect())
}

fn solver(seed: u64, tolerance: f64, real: bool) -> SolverConfig {
    SolverConfig {
        seed,
        tolerance,
        real,
        ..SolverConfig::default()
    }
}

/// Matrices with C ≤ ΣA(s); with `reverse`, ΣA(s) ≤ C.
#[pyfunction]
#[pyo3(signature = (alphas, gamma, reverse=false, seed=0, tolerance=1e-8, real=false))]
fn realize(
    py: Python<'_>,
    alphas: &Bound<'_, PyAny>,
    gamma: &Bound<'_, PyAny>,
    reverse: bool,
    seed: u64,
    tolerance: f64,
    real: bool,
) -> PyResult<PyWitnessResult> {
    let a = spectra_arg(alphas)?;
    let g = gamma_arg(gamma, &a)?;
    let cfg = solver(seed, tolerance, real);
    let w = py
        .detach(|| {
            if reverse {
                witness::realize_reverse_majorized(&a, &g, &cfg)
            } else {
                witness::realize_majorized(&a, &g, &cfg)
            }
        })
        .py()?;
    Ok(w.into())
}

/// Matrices A(s) with the given spectra and ΣA(s) ≤ 0.
#[pyfunction]
#[pyo3(signature = (alphas, seed=0, tolerance=1e-8, real=false))]
fn realize_negative_sum(py: Python<'_>, alphas: &Bound<'_, PyAny>, seed: u64, tolerance: f64, real: bool) -> PyResult<PyWitnessResult> {
    let a = spectra_arg(alphas)?;
    let cfg = solver(seed, tolerance, real);
    Ok(py.detach(|| witness::realize_negative_sum(&a, &cfg)).py()?.into())
}

/// Samples random instances; returns (violations, max_violation).
#[pyfunction]
#[pyo3(signature = (n, m, samples=1000, seed=0, threshold=1e-8))]
fn verify_necessity(py: Python<'_>, n: usize, m: usize, samples: usize, seed: u64, threshold: f64) -> PyResult<(usize, f64)> {
    let r = py.detach(|| witness::verify_necessity(n, m, samples, seed, threshold)).py()?;
    Ok((r.violations, r.max_violation))
}

/// Eigenvalues of a Hermitian matrix given as rows of complex numbers,
/// in weakly decreasing order.
#[pyfunction]
fn eigenvalues(rows: Vec<Vec<Complex64>>) -> PyResult<Vec<f64>> {
    Ok(HermitianMatrix::from_rows(rows).py()?.eigenvalues())
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, gamma, p=2, max_order=1024, max_subgroups=200_000))]
fn compare_routes(
    py: Python<'_>,
    alpha: &Bound<'_, PyAny>,
    beta: &Bound<'_, PyAny>,
    gamma: &Bound<'_, PyAny>,
    p: u32,
    max_order: u64,
    max_subgroups: usize,
) -> PyResult<PyModuleVerdict> {
    let (a, b, g) = (partition_arg(alpha)?, partition_arg(beta)?, partition_arg(gamma)?);
    let budget = Budget { max_order, max_subgroups };
    let v = py.detach(|| dvr::compare_routes(&a, &b, &g, p, &budget)).py()?;
    Ok(PyModuleVerdict {
        alpha: v.alpha.parts().to_vec(),
        beta: v.beta.parts().to_vec(),
        gamma: v.gamma.parts().to_vec(),
        p: v.p,
        bruteforce: v.bruteforce,
        lr: v.lr,
        inequalities: v.inequalities,
        agree: v.agree,
    })
}

#[pyfunction]
#[pyo3(signature = (n, m=2))]
fn check_full_independence(py: Python<'_>, n: u32, m: usize) -> PyResult<PyRedundancyReport> {
    let r = py.detach(|| minimality::check_full_independence(n, m)).py()?;
    Ok(PyRedundancyReport {
        n: r.n,
        m: r.m,
        conditional: r.conditional,
        all_essential: r.all_essential,
        essential: r.verdicts.iter().map(|v| v.essential).collect(),
        json: serde_json::to_string(&r).expect("reports serialize"),
    })
}

#[pymodule]
fn horncone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("InfeasibleError", py.get_type::<InfeasibleError>())?;
    m.add("BudgetError", py.get_type::<BudgetError>())?;
    m.add_class::<PyPartition>()?;
    m.add_class::<Inequality>()?;
    m.add_class::<PyFeasibilityReport>()?;
    m.add_class::<ListEntry>()?;
    m.add_class::<HornTriple>()?;
    m.add_class::<PyWitnessResult>()?;
    m.add_class::<PyModuleVerdict>()?;
    m.add_class::<PyRedundancyReport>()?;
    m.add_function(wrap_pyfunction!(lr_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(multi_product, m)?)?;
    m.add_function(wrap_pyfunction!(generate_list, m)?)?;
    m.add_function(wrap_pyfunction!(generate_triples, m)?)?;
    m.add_function(wrap_pyfunction!(classify_tuple, m)?)?;
    m.add_function(wrap_pyfunction!(check_negative_sum, m)?)?;
    m.add_function(wrap_pyfunction!(check_majorized, m)?)?;
    m.add_function(wrap_pyfunction!(check_equality, m)?)?;
    m.add_function(wrap_pyfunction!(check_reverse_majorized, m)?)?;
    m.add_function(wrap_pyfunction!(lift_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(shrink_alphas, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(realize_negative_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_necessity, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(compare_routes, m)?)?;
    m.add_function(wrap_pyfunction!(check_full_independence, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(text: &[&[&str]]) -> Vec<Vec<String>> {
        text.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }

    #[test]
    fn rows_accept_python_renderings() {
        // str() of int, Fraction and float.
        let s = parse_rows(&rows(&[&["3", "3/2", "0.5"]])).unwrap();
        assert_eq!(s[0].values()[1], horncone::scalar::rational(3, 2));
        assert_eq!(s[0].values()[2], horncone::scalar::rational(1, 2));
    }

    #[test]
    fn unordered_rows_name_the_factor() {
        let e = parse_rows(&rows(&[&["1", "0"], &["0", "1"]])).unwrap_err();
        assert_eq!(e, Error::Unordered { factor: 2, position: 2 });
    }
}
