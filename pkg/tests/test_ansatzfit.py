from fractions import Fraction
from math import gcd

import pytest

from simcore.ansatzfit import (
    AnsatzViolation,
    FitMode,
    FitSpec,
    InsufficientData,
    MomentCache,
    collect_moment_data,
    fit_polynomial,
    fit_report,
    pair_schedule,
    rediscover,
)
from simcore.exactmath import BivariatePolynomial
from simcore.partitions import CorePair
from simcore.theorems import evaluate_theorem, theorem_polynomial

SUCC = FitMode.UNIVARIATE_T_EQ_S_PLUS_1


def test_basis_sizes():
    assert len(FitSpec(1, symmetry=False).basis()) == 10
    assert len(FitSpec(1).basis()) == 6
    assert len(FitSpec(2).basis()) == 16
    assert FitSpec(2).required_points() == 20
    assert len(FitSpec(7, mode=SUCC).basis()) == 22


def test_spec_rejects_small_factor():
    with pytest.raises(ValueError):
        FitSpec(1, overdetermination_factor=Fraction(6, 5))
    with pytest.raises(ValueError):
        FitSpec(0)


def test_pair_schedule():
    pairs = pair_schedule(12)
    assert len(set(pairs)) == 12
    assert all(p.s < p.t and gcd(p.s, p.t) == 1 for p in pairs)
    keys = [(p.s + p.t, p.s) for p in pairs]
    assert keys == sorted(keys)
    assert pair_schedule(3, SUCC, min_s=4) == [CorePair(4, 5), CorePair(5, 6), CorePair(6, 7)]
    assert CorePair(1, 2) not in pair_schedule(5, skip=[(1, 2)])


def test_fit_recovers_known_polynomial():
    # synthetic data from a known symmetric polynomial
    target = BivariatePolynomial.parse("s*t + s + t - 1/3")
    spec = FitSpec(1, total_degree_bound=2)
    data = [(p, target.evaluate(p.s, p.t)) for p in pair_schedule(spec.required_points())]
    res = fit_polynomial(spec, data)
    assert res.polynomial == target and res.residual_check


@pytest.mark.parametrize("r", [1, 2])
def test_rediscover_bivariate(r):
    res = rediscover(r)
    assert res.polynomial == theorem_polynomial(r)
    assert res.residual_check
    assert res.data_points_used * 4 >= 5 * len(res.spec.basis())
    again = rediscover(r, extra=6)
    assert again.polynomial == res.polynomial


def test_rediscover_without_symmetry():
    assert rediscover(1, symmetry=False).polynomial == theorem_polynomial(1)
    with pytest.raises(InsufficientData):
        rediscover(2, symmetry=False)
    assert rediscover(2, symmetry=False, extra=4).polynomial == theorem_polynomial(2)


def test_low_degree_ansatz_rejected():
    with pytest.raises(AnsatzViolation):
        rediscover(2, degree=4)


def test_insufficient_data():
    spec = FitSpec(1)
    data = collect_moment_data(1, pair_schedule(spec.required_points() - 1))
    with pytest.raises(InsufficientData):
        fit_polynomial(spec, data)


def test_duplicate_points_rejected():
    spec = FitSpec(1, total_degree_bound=0)
    with pytest.raises(ValueError):
        fit_polynomial(spec, [((3, 5), 3), ((3, 5), 3)])


def test_univariate_fit_theorem_seven():
    res = rediscover(7, SUCC, engine="jet")
    s = BivariatePolynomial.gen("s")
    assert res.polynomial == theorem_polynomial(7).substitute_t(s + 1)
    assert fit_report(res, 7).matches_reference


def test_univariate_requires_successive_pairs():
    with pytest.raises(ValueError):
        collect_moment_data(2, [(3, 5)], mode=SUCC)


def test_report():
    res = rediscover(1)
    rep = fit_report(res, 1)
    assert rep.matches_reference
    assert rep.spot_values["(3,5)"] == 3
    assert rep.lines()[-1] == "reference theorem 1: equal"
    assert rep.to_json()["matches_reference"] is True
    assert not fit_report(res, 2).matches_reference


def test_moment_cache_roundtrip(tmp_path):
    path = tmp_path / "m.json"
    cache = MomentCache(path)
    data = collect_moment_data(2, [(3, 5), (4, 7)], cache=cache)
    assert data[0][1] == 6
    back = MomentCache(path)
    assert back.get(CorePair(3, 5), 2) == 6
    assert back.get(CorePair(4, 7), 1) == evaluate_theorem(1, 4, 7)
