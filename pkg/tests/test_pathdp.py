from itertools import combinations
from math import comb

import numpy as np
import pytest

from simcore import _accel, pathdp
from simcore.exactmath import QPolynomial, QWPolynomial
from simcore.partitions import CorePair, anderson_count, max_core_size
from simcore.pathdp import (
    CalibrationError,
    CalibrationResult,
    DPConfig,
    Orientation,
    calibrate_conventions,
    calibrated_config,
    coprime_pairs,
    dp_table,
    moment_jets,
    oracle_counts,
    size_counts,
    size_generating_polynomial,
    step_labels,
    step_weight,
    umbral_substitute,
    umbral_violations,
    weight_enumerator,
)

SMALL = [p for p in coprime_pairs(12) if p.s >= 2]


def walks(cfg):
    """Every monotone walk (0,0) -> far corner inside the region, as a list of steps."""
    si, sj = cfg.extents
    n = si + sj
    for ups in combinations(range(n), sj):
        i = j = 0
        steps = []
        ok = True
        for k in range(n):
            if k in ups:
                steps.append((i, j))
                j += 1
            else:
                i += 1
            if not cfg.in_region(i, j):
                ok = False
                break
        if ok:
            yield steps


def walk_sum(cfg):
    total = QWPolynomial.zero()
    for steps in walks(cfg):
        term = QWPolynomial.one()
        for i, j in steps:
            term = term * step_weight(cfg, i, j)
        total = total + term
    return total


def test_step_labels_three_five():
    cfg = calibrated_config((3, 5))
    # labels 3j - 5i' - 5 for i' >= i, positive ones only
    assert step_labels(cfg, 0, 4) == [7, 2]
    assert step_labels(cfg, 1, 4) == [2]
    assert step_labels(cfg, 0, 1) == []


@pytest.mark.parametrize("pair", [(2, 3), (3, 4), (3, 5), (4, 5), (2, 7), (3, 7)], ids=str)
def test_dp_equals_explicit_walk_sum(pair):
    cfg = calibrated_config(pair)
    assert weight_enumerator(cfg) == walk_sum(cfg)


def test_three_five_polynomial():
    expected = QPolynomial.parse("1 + q + 2*q^2 + 2*q^4 + q^8")
    for engine in ("dp", "dp-faithful", "brute"):
        assert size_generating_polynomial((3, 5), engine) == expected


@pytest.mark.parametrize("pair", SMALL, ids=str)
def test_fused_matches_faithful(pair):
    f = weight_enumerator(calibrated_config(pair))
    assert umbral_violations(f) == []
    assert umbral_substitute(f) == size_generating_polynomial(pair)


@pytest.mark.parametrize("pair", [p for p in SMALL if p.t <= 9], ids=str)
def test_dp_matches_oracle(pair):
    assert size_counts(pair) == oracle_counts(pair)


@pytest.mark.parametrize("pair", SMALL, ids=str)
def test_counts_and_degree(pair):
    c = size_counts(pair)
    assert sum(c) == anderson_count(pair)
    assert len(c) - 1 == max_core_size(pair)


@pytest.mark.parametrize("pair", SMALL, ids=str)
def test_jets_match_full_polynomial(pair):
    c = size_counts(pair)
    jets = moment_jets(pair, 6)
    assert jets == [sum(cn * comb(n, m) for n, cn in enumerate(c)) for m in range(7)]


def test_dp_table_recurrence():
    cfg = calibrated_config((4, 7))
    table = dp_table(cfg)
    for (i, j), f in table.items():
        if (i, j) == (0, 0):
            assert f == QWPolynomial.one()
            continue
        expected = QWPolynomial.zero()
        if (i - 1, j) in table:
            expected = expected + table[(i - 1, j)]
        if (i, j - 1) in table:
            expected = expected + step_weight(cfg, i, j - 1) * table[(i, j - 1)]
        assert f == expected


def test_region_excludes_cells_below_line():
    cfg = calibrated_config((3, 5))
    assert cfg.in_region(0, 0) and cfg.in_region(3, 5)
    assert not cfg.in_region(1, 0)
    assert cfg.in_region(1, 2) and not cfg.in_region(2, 3)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("pair", [(7, 11), (13, 17), (11, 19)], ids=str)
def test_backends_agree(pair):
    assert size_counts(pair, backend="numba") == size_counts(pair, backend="numpy")


def test_object_dtype_path(monkeypatch):
    expected = size_counts((5, 8))
    monkeypatch.setattr(pathdp, "INT64_SAFE", 1)
    assert pathdp._dtype_for(calibrated_config((5, 8))) is object
    assert size_counts((5, 8)) == expected


def test_shifted_extents_rejects_negative_column():
    with pytest.raises(ValueError):
        _accel.shifted_extents(np.array([0, 0]), np.array([3, 3]), 3, 0, 0, 1)


def test_shift_accumulate_unknown_backend():
    a = np.zeros((1, 1), dtype=np.int64)
    with pytest.raises(ValueError):
        _accel.shift_accumulate(a, a, np.array([0]), np.array([0]), 0, 0, 0, "cuda")


def test_large_pair_exceeds_int64():
    c = size_counts((24, 25))
    assert sum(c) == anderson_count((24, 25)) == 1289904147324
    assert len(c) - 1 == max_core_size((24, 25)) == 14950


def test_unknown_engine():
    with pytest.raises(ValueError):
        size_generating_polynomial((3, 5), "magic")


# -- calibration -------------------------------------------------------------------


def test_calibration_unique():
    res = calibrate_conventions()
    assert (res.offset_b, res.orientation) == ("t", Orientation.AS_WRITTEN)
    assert (res.offset_b, res.orientation) == (pathdp.CALIBRATED_OFFSET, pathdp.CALIBRATED_ORIENTATION)
    assert len(res.rejected) == 2 * len(pathdp.DEFAULT_CANDIDATES) - 1


def test_calibration_no_match():
    with pytest.raises(CalibrationError):
        calibrate_conventions(["0", "1"], max_t=6)


def test_calibration_ambiguous():
    # "t" and "2*t - t" denote the same offset
    with pytest.raises(CalibrationError):
        calibrate_conventions(["t", "2*t - t"], max_t=6)


def test_calibration_roundtrip(tmp_path):
    res = calibrate_conventions(max_t=6)
    path = tmp_path / "cal.json"
    res.write(path)
    back = CalibrationResult.load(path)
    assert back.config_for((3, 5)) == calibrated_config((3, 5))
    assert back.config_for((3, 5)) == DPConfig(CorePair(3, 5), 5, Orientation.AS_WRITTEN)
