mod common;

use horncone::feasibility::check_majorized;
use horncone::minimality::*;
use horncone::scalar::{rational, Rational, Spectrum};
use num_traits::Zero;

/// Some integer point in [-r, r]^vars violating row `index` and no other.
fn grid_violator(system: &[LinearInequality], index: usize, r: i64) -> Option<Vec<Rational>> {
    let vars = system[0].coefficients.len();
    let side = (2 * r + 1) as usize;
    let total = side.pow(vars as u32);
    (0..total).find_map(|mut code| {
        let x: Vec<Rational> = (0..vars)
            .map(|_| {
                let v = (code % side) as i64 - r;
                code /= side;
                rational(v, 1)
            })
            .collect();
        witness_is_sound(system, index, &x).then_some(x)
    })
}

fn split_point(x: &[Rational], n: usize, m: usize) -> (Vec<Spectrum<Rational>>, Spectrum<Rational>) {
    let spectra: Vec<Spectrum<Rational>> = x
        .chunks(n)
        .map(|c| Spectrum::new(c.to_vec()).unwrap())
        .collect();
    let mut a = spectra;
    let g = a.pop().unwrap();
    assert_eq!(a.len(), m);
    (a, g)
}

#[test]
fn documented_sizes() {
    let one = assemble_system(1, 2, true).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].tag, InequalityTag::Trace);
    let two = assemble_system(2, 2, true).unwrap();
    assert_eq!(two.len(), 7);
    assert_eq!(two.iter().filter(|r| matches!(r.tag, InequalityTag::Chamber { .. })).count(), 3);
    for m in 1..=4 {
        assert_eq!(assemble_negative_sum_system(2, m, true).unwrap().len(), 2 * m + 1);
    }
}

#[test]
fn independence_for_small_n() {
    for n in 1..=3 {
        let r = check_full_independence(n, 2).unwrap();
        assert!(r.all_essential, "n={n}");
        assert_eq!(r.conditional, n >= 3);
        for v in &r.verdicts {
            assert!(witness_is_sound(&r.inequalities, v.index, v.witness.as_ref().unwrap()));
        }
    }
    assert!(check_full_independence(5, 2).is_err());
    assert!(check_full_independence(0, 2).is_err());
}

#[test]
fn grid_search_agrees_for_n_two() {
    for m in 1..=2 {
        let system = assemble_system(2, m, true).unwrap();
        for i in 0..system.len() {
            let lp = is_redundant(&system, i).unwrap().essential;
            let grid = grid_violator(&system, i, 2).is_some();
            assert_eq!(lp, grid, "m={m} row {i}");
        }
    }
}

#[test]
fn duplicated_rows_are_redundant() {
    for n in 1..=3 {
        let mut system = assemble_system(n, 2, true).unwrap();
        let last = system.len() - 1;
        let mut dup = system[last].clone();
        dup.tag = InequalityTag::Duplicate { of: last };
        system.push(dup);
        let r = redundancy_report(n, 2, system.clone()).unwrap();
        assert!(!r.all_essential);
        assert!(!r.verdicts[last].essential && !r.verdicts[last + 1].essential);
        assert!(r.verdicts[..last].iter().all(|v| v.essential));
        if n == 2 {
            assert!(grid_violator(&system, last, 2).is_none());
        }
    }
}

#[test]
fn dropped_rows_enlarge_the_cone() {
    // A witness for a non-chamber row is ordered but not majorized.
    for n in 1..=3u32 {
        let r = check_full_independence(n, 2).unwrap();
        for (row, v) in r.inequalities.iter().zip(&r.verdicts) {
            if matches!(row.tag, InequalityTag::Chamber { .. }) {
                continue;
            }
            let (a, g) = split_point(v.witness.as_ref().unwrap(), n as usize, 2);
            assert!(!check_majorized(&a, &g, true).unwrap().feasible, "{:?}", row.tag);
            assert!(!check_majorized(&a, &g, false).unwrap().feasible, "{:?}", row.tag);
        }
    }
}

#[test]
fn trace_is_isolated_at_the_boundary_triple() {
    let system = assemble_system(3, 2, true).unwrap();
    let t = [2, 0, -2];
    let base: Vec<Rational> = t.iter().chain(&t).chain(&t).map(|&v| rational(v, 1)).collect();
    let trace = system.iter().position(|r| r.tag == InequalityTag::Trace).unwrap();
    for (i, row) in system.iter().enumerate() {
        let v = row.evaluate(&base);
        if i == trace {
            assert!(v.is_zero());
        } else {
            assert!(v < Rational::zero(), "{:?}", row.tag);
        }
    }
    // Raising γ by δ(1, 1, 1) breaks only the trace.
    let mut x = base;
    for v in x.iter_mut().skip(6) {
        *v += rational(1, 10);
    }
    assert!(witness_is_sound(&system, trace, &x));
    assert!(is_redundant(&system, trace).unwrap().essential);
}

#[test]
fn s_rows_follow_from_r_rows() {
    for n in 1..=3 {
        for m in 1..=3 {
            for (tuple, implied) in s_rows_implied_by_r(n, m).unwrap() {
                assert!(implied, "{tuple:?}");
            }
        }
    }
}

#[test]
fn report_json_uses_fraction_strings() {
    let r = check_full_independence(2, 2).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["conditional"], false);
    assert_eq!(v["verdicts"][0]["verdict"], "essential");
    assert!(v["verdicts"][0]["witness"][0].is_string());
    assert!(v["inequalities"][0]["coefficients"][0].is_string());
}
