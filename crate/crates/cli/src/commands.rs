use horncone::dvr::compare_routes;
use horncone::error::{Error, Result};
use horncone::feasibility::{
    check_klyachko_equality, check_majorized, check_negative_sum, check_reverse_majorized, lift_gamma,
    lift_to_equality, shrink_alphas, FeasibilityReport,
};
use horncone::horn::{chamber_count, generate_horn_triples, generate_list, generate_reverse_triples, generate_union, ListKind};
use horncone::lr::{lr_coefficient, multi_product, BoxBound, Partition};
use horncone::minimality::check_full_independence;
use horncone::scalar::{format_spectra, parse_spectra, parse_spectrum, Rational, Spectrum};
use horncone::sweep::{
    cone_equivalence_sweep, exact_sequence_sweep, green_klein_sweep, p_independence_sweep, sub_triple_sweep,
    SuiteSummary,
};
use horncone::witness::{
    realize_majorized, realize_negative_sum, realize_reverse_majorized, verify_necessity, SolverConfig,
    WitnessResult,
};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Kind, Report, RunConfig, Suite, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK};

/// Exact coefficients: a JSON number when it fits in u64, else a string.
fn big(c: &BigUint) -> Value {
    match u64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn verdict(body: String, ok: bool) -> Report {
    Report {
        body,
        code: if ok { EXIT_OK } else { EXIT_NEGATIVE },
    }
}

/// Partitions separated by `;`.
fn parse_partitions(text: &str) -> Result<Vec<Partition>> {
    text.split(';').map(Partition::parse).collect()
}

fn gamma_spectrum(text: &str, alphas: &[Spectrum<Rational>]) -> Result<Spectrum<Rational>> {
    let g = parse_spectrum(text, alphas.len() + 1)?;
    if alphas.first().is_some_and(|a| a.len() != g.len()) {
        return Err(Error::Dimension(format!(
            "gamma has length {}, expected {}",
            g.len(),
            alphas[0].len()
        )));
    }
    Ok(g)
}

/// Runs `check` in exact rationals or in f64, as configured.
fn check_in_mode<F, G>(cfg: &RunConfig, exact: F, float: G) -> Result<Report>
where
    F: FnOnce() -> Result<FeasibilityReport<Rational>>,
    G: FnOnce() -> Result<FeasibilityReport<f64>>,
{
    if cfg.exact {
        let r = exact()?;
        Ok(verdict(r.to_json(), r.feasible))
    } else {
        let r = float()?;
        Ok(verdict(r.to_json(), r.feasible))
    }
}

fn to_f64s(spectra: &[Spectrum<Rational>]) -> Vec<Spectrum<f64>> {
    spectra.iter().map(Spectrum::to_f64).collect()
}

fn witness_report(w: WitnessResult, text: bool) -> Report {
    let body = if text { w.to_text() } else { w.to_json() };
    Report {
        body,
        code: if w.succeeded() { EXIT_OK } else { EXIT_BUDGET },
    }
}

fn run_sweeps(cfg: &RunConfig, suite: Suite, max_weight: u32) -> Result<Vec<SuiteSummary>> {
    let b = &cfg.budget;
    let mut out = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Cone) {
        out.push(cone_equivalence_sweep(max_weight, 3, 2)?);
    }
    if wants(Suite::ExactSequence) {
        out.push(exact_sequence_sweep(max_weight, 2, b)?);
        out.push(exact_sequence_sweep(max_weight.min(4), 3, b)?);
    }
    if wants(Suite::PIndependence) {
        out.push(p_independence_sweep(max_weight.min(4), &[2, 3], b)?);
    }
    if wants(Suite::GreenKlein) {
        out.push(green_klein_sweep(max_weight, 2, b)?);
    }
    if wants(Suite::SubTriple) {
        out.push(sub_triple_sweep(max_weight)?);
    }
    Ok(out)
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Report> {
    let coef1 = cfg.coefficient_one_only;
    match command {
        Command::Lrcoef { lambda, mu, nu } => {
            let (l, m, n) = (Partition::parse(lambda)?, Partition::parse(mu)?, Partition::parse(nu)?);
            let c = lr_coefficient(&l, &m, &n);
            let body = json!({ "lambda": l, "mu": m, "nu": n, "coefficient": big(&c) });
            Ok(verdict(body.to_string(), true))
        }
        Command::Product { r, n, partitions } => {
            if r > n {
                return Err(Error::Parameters(format!("r = {r} exceeds n = {n}")));
            }
            let parts = partitions.iter().map(|p| Partition::parse(p)).collect::<Result<Vec<_>>>()?;
            let product = multi_product(&parts, BoxBound::grassmannian(*r, *n))?;
            let terms: Vec<Value> = product
                .terms()
                .iter()
                .map(|(p, c)| json!({ "partition": p, "coefficient": big(c) }))
                .collect();
            let body = json!({
                "r": r,
                "n": n,
                "terms": terms,
                "codimension": product.codimension(),
                "point_class": product.is_point_class(),
            });
            Ok(verdict(body.to_string(), true))
        }
        Command::Lists { kind, r, n, m } => {
            let kind = match kind {
                Kind::S => ListKind::S,
                Kind::R => ListKind::R,
            };
            let entries = match r {
                Some(r) => generate_list(kind, *r, *n, *m)?,
                None => generate_union(kind, *n, *m)?,
            };
            let mut body: Vec<String> = entries.iter().map(|e| e.to_json_line()).collect();
            body.push(json!({ "summary": { "entries": entries.len() } }).to_string());
            Ok(verdict(body.join("\n"), true))
        }
        Command::Triples { n, m, reverse } => {
            let triples = if *reverse {
                generate_reverse_triples(*n, *m, coef1)?
            } else {
                generate_horn_triples(*n, *m, coef1)?
            };
            let chambers = chamber_count(*n, m + 1);
            let mut body: Vec<String> = triples.iter().map(|t| t.to_json_line()).collect();
            body.push(
                json!({ "summary": {
                    "triples": triples.len(),
                    "chamber_inequalities": chambers,
                    "total": triples.len() + chambers,
                    "note": "the chamber inequalities (weak decrease of each spectrum) are implicit",
                } })
                .to_string(),
            );
            Ok(verdict(body.join("\n"), true))
        }
        Command::Check { alphas, gamma } => {
            let a = parse_spectra(alphas)?;
            match gamma {
                Some(g) => {
                    let g = gamma_spectrum(g, &a)?;
                    check_in_mode(
                        cfg,
                        || check_majorized(&a, &g, coef1),
                        || check_majorized(&to_f64s(&a), &g.to_f64(), coef1),
                    )
                }
                None => check_in_mode(cfg, || check_negative_sum(&a, coef1), || check_negative_sum(&to_f64s(&a), coef1)),
            }
        }
        Command::CheckEq { alphas, gamma } => {
            let a = parse_spectra(alphas)?;
            let g = gamma_spectrum(gamma, &a)?;
            check_in_mode(
                cfg,
                || check_klyachko_equality(&a, &g),
                || check_klyachko_equality(&to_f64s(&a), &g.to_f64()),
            )
        }
        Command::CheckRev { alphas, gamma } => {
            let a = parse_spectra(alphas)?;
            let g = gamma_spectrum(gamma, &a)?;
            check_in_mode(
                cfg,
                || check_reverse_majorized(&a, &g, coef1),
                || check_reverse_majorized(&to_f64s(&a), &g.to_f64(), coef1),
            )
        }
        Command::Lift { alphas, gamma, n, factor } => match gamma {
            Some(g) => {
                let n = n.ok_or_else(|| Error::Parameters("--n is required with --gamma".into()))?;
                let lifted = lift_gamma(&parse_partitions(alphas)?, &Partition::parse(g)?, n)?;
                Ok(verdict(json!({ "gamma": lifted }).to_string(), true))
            }
            None => {
                let spectra = parse_spectra(alphas)?
                    .iter()
                    .map(|s| {
                        s.to_integers()
                            .ok_or_else(|| Error::Parameters("lift needs integer spectra".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if *factor == 0 {
                    return Err(Error::Parameters("--factor is 1-based".into()));
                }
                let lifted = lift_to_equality(&spectra, factor - 1)?;
                Ok(verdict(json!({ "alphas": format_spectra(&lifted) }).to_string(), true))
            }
        },
        Command::Shrink { alphas, gamma, n } => {
            let shrunk = shrink_alphas(&parse_partitions(alphas)?, &Partition::parse(gamma)?, *n)?;
            Ok(verdict(json!({ "alphas": shrunk }).to_string(), true))
        }
        Command::Witness {
            alphas,
            gamma,
            reverse,
            real,
            text,
        } => {
            let solver = SolverConfig {
                tolerance: cfg.tolerance,
                seed: cfg.seed,
                real: *real,
                ..SolverConfig::default()
            };
            let a = parse_spectra(alphas)?;
            let w = match (gamma, reverse) {
                (Some(g), false) => realize_majorized(&a, &gamma_spectrum(g, &a)?, &solver)?,
                (Some(g), true) => realize_reverse_majorized(&a, &gamma_spectrum(g, &a)?, &solver)?,
                (None, false) => realize_negative_sum(&a, &solver)?,
                (None, true) => return Err(Error::Parameters("--reverse needs --gamma".into())),
            };
            Ok(witness_report(w, *text))
        }
        Command::Modules { alpha, beta, gamma, p } => {
            let v = compare_routes(
                &Partition::parse(alpha)?,
                &Partition::parse(beta)?,
                &Partition::parse(gamma)?,
                *p,
                &cfg.budget,
            )?;
            Ok(verdict(to_json(&v), v.agree && v.bruteforce))
        }
        Command::Minimal { n, m } => {
            let r = check_full_independence(*n, *m)?;
            Ok(verdict(to_json(&r), r.all_essential))
        }
        Command::VerifyNecessity { n, m, samples } => {
            let r = verify_necessity(*n, *m, *samples, cfg.seed, cfg.tolerance)?;
            Ok(verdict(to_json(&r), r.violations == 0))
        }
        Command::Sweep { suite, max_weight, table } => {
            let suites = run_sweeps(cfg, *suite, *max_weight)?;
            let passed = suites.iter().all(SuiteSummary::passed);
            let body = if *table {
                let mut lines = vec![format!("{:<28} {:>8} {:>8}  {}", "suite", "cases", "failures", "result")];
                lines.extend(suites.iter().map(SuiteSummary::table_row));
                lines.join("\n")
            } else {
                json!({ "suites": suites, "passed": passed }).to_string()
            };
            Ok(verdict(body, passed))
        }
    }
}

