"""Smoke test for the horncone_py extension module.

Build and install the extension first, for example:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/horncone-*.whl

then run `python3 python/smoke_test.py`.
"""

import json
from fractions import Fraction

import horncone_py as hc


def main():
    assert hc.lr_coefficient([2, 1], [2, 1], [3, 2, 1]) == 2
    lam = hc.Partition([2, 1])
    assert lam.conjugate() == hc.Partition([2, 1])
    assert hc.Partition.parse("3,1").weight == 4
    assert hc.lr_coefficient(lam, [1], [3, 1]) == 1

    product = hc.multi_product([[1], [1], [1, 1]], 2, 4)
    assert product == {hc.Partition([2, 2]): 1}

    triples = hc.generate_triples(2, 2)
    assert [(t.sets, t.k) for t in triples] == [
        ([[1], [1]], [1]),
        ([[1], [2]], [2]),
        ([[2], [1]], [2]),
        ([[1, 2], [1, 2]], [1, 2]),
    ]
    r_list = hc.generate_list("R", 4, 3, r=2)
    assert any(e.sets == [[2, 4], [2, 4], [2, 3]] for e in r_list)
    assert hc.classify_tuple([[2, 4], [2, 4], [2, 3]], 4) == (True, True)

    report = hc.check_majorized([[1, 1], [1, 0]], [2, 1])
    assert report.feasible and bool(report)
    bad = hc.check_majorized([[1, 1], [1, 0]], [3, 1])
    assert not bad.feasible
    assert min(v.slack for v in bad.violated) == Fraction(-1)
    assert json.loads(bad.to_json())["feasible"] is False
    assert hc.check_majorized([[Fraction(3, 2), 0], ["1/3", -1]], [1, "-1/2"]).feasible
    assert hc.check_equality([[1, 0], [1, 0]], [1, 1]).feasible
    assert hc.check_reverse_majorized([[1, 0], [1, 0]], [2, 1]).feasible
    assert not hc.check_negative_sum([[1, -1]]).feasible

    try:
        hc.check_majorized([[1, 1], [0, 1]], [2, 1])
    except ValueError as e:
        assert "position 2" in str(e)
    else:
        raise AssertionError("unordered spectrum accepted")

    w = hc.realize([[2, 1, 0], [1, 0, -1]], [2, 1, -1], seed=7)
    assert w.succeeded, w
    assert w.spectral_residual <= 1e-6 and w.slack_min_eigenvalue >= -1e-8
    eig = hc.eigenvalues(w.c)
    assert max(abs(a - b) for a, b in zip(eig, [2, 1, -1])) <= 1e-6
    try:
        hc.realize([[1, 0], [1, 0]], [3, 0])
    except hc.InfeasibleError:
        pass
    else:
        raise AssertionError("infeasible instance realized")

    violations, _ = hc.verify_necessity(3, 2, samples=50, seed=1)
    assert violations == 0

    assert hc.lift_gamma([[2], [1]], [1], 2) == hc.Partition([3])
    assert hc.shrink_alphas([[2, 1], [1]], [2], 2) == [hc.Partition([1]), hc.Partition([1])]

    v = hc.compare_routes([1], [1], [2], p=2)
    assert v.agree and v.bruteforce
    try:
        hc.compare_routes([2, 1], [2, 1], [3, 2], max_subgroups=5)
    except hc.BudgetError:
        pass
    else:
        raise AssertionError("budget not enforced")

    r = hc.check_full_independence(2)
    assert r.all_essential and len(r.essential) == 7 and not r.conditional

    print("horncone_py smoke test: OK")


if __name__ == "__main__":
    main()
