"""Weighted (s,t)-Dyck path dynamic program for core-partition sizes.

A partial walk from (0,0) to (i,j) takes unit steps right or up and stays in
the region ``s*j - t*i >= 0``.  An up step leaving row ``j`` at column ``i``
picks up the labels ``s*j - t*i' - b`` for ``i' >= i`` that are positive; it
contributes ``q**(sum of labels) * w**(number of labels)``.  The weight
enumerator at (s,t), after the substitution ``w**k -> q**(-k(k-1)/2)``, is the
size generating polynomial of the (s,t)-cores.

Two dense representations are used.  Both store a cell as a 2-D integer array
indexed ``[k, e]`` where ``k`` is the ``w``-degree:

* faithful: ``e`` is the label sum (the literal ``(q, w)`` weight);
* fused: ``e`` is already the partition size ``label_sum - k(k-1)/2``.  Adding
  ``K`` labels with sum ``E`` to a walk holding ``k`` labels moves it by
  ``E - K(K-1)/2 - K*k``, so the shift is a shear in ``k``.

The fused form is what production code uses; it has far smaller arrays.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .exactmath import BivariatePolynomial, QPolynomial, QWPolynomial
from .partitions import CorePair, anderson_count, as_pair, size_multiset


class Orientation(enum.Enum):
    AS_WRITTEN = "AS_WRITTEN"  # horizontal extent s, vertical extent t
    TRANSPOSED = "TRANSPOSED"  # horizontal extent t, vertical extent s


# Result of calibrate_conventions over all coprime s < t <= 8 (see tests).
CALIBRATED_OFFSET = "t"
CALIBRATED_ORIENTATION = Orientation.AS_WRITTEN

DEFAULT_CANDIDATES = ("0", "1", "s", "t", "s+t", "s+t+1", "s-1", "t-1", "s+1", "t+1", "s*t")

INT64_SAFE = 2**62


@dataclass(frozen=True)
class DPConfig:
    pair: CorePair
    offset_b: int
    orientation: Orientation = Orientation.AS_WRITTEN

    @property
    def extents(self) -> tuple[int, int]:
        s, t = self.pair.s, self.pair.t
        return (s, t) if self.orientation is Orientation.AS_WRITTEN else (t, s)

    def in_region(self, i: int, j: int) -> bool:
        si, sj = self.extents
        return 0 <= i <= si and 0 <= j <= sj and self.pair.s * j - self.pair.t * i >= 0


def evaluate_offset(expr: str, pair) -> int:
    pair = as_pair(pair)
    value = BivariatePolynomial.parse(expr).evaluate(pair.s, pair.t)
    if value.denominator != 1:
        raise ValueError(f"offset {expr!r} is not an integer at {pair}")
    return int(value)


def calibrated_config(pair) -> DPConfig:
    pair = as_pair(pair)
    return DPConfig(pair, evaluate_offset(CALIBRATED_OFFSET, pair), CALIBRATED_ORIENTATION)


# -- step weights ----------------------------------------------------------------


def step_labels(cfg: DPConfig, i: int, j: int) -> list[int]:
    """Positive labels ``s*j - t*i' - b`` for ``i' >= i`` (largest first)."""
    s, t, b = cfg.pair.s, cfg.pair.t, cfg.offset_b
    out = []
    ip = i
    while True:
        v = s * j - t * ip - b
        if v <= 0:
            return out
        out.append(v)
        ip += 1


def _step_exponents(cfg: DPConfig, i: int, j: int) -> tuple[int, int]:
    labels = step_labels(cfg, i, j)
    return sum(labels), len(labels)


def step_weight(cfg: DPConfig, i: int, j: int) -> QWPolynomial:
    e, k = _step_exponents(cfg, i, j)
    return QWPolynomial.monomial((e, k))


# -- dense DP ------------------------------------------------------------------


def _dtype_for(cfg: DPConfig):
    si, sj = cfg.extents
    return np.int64 if comb(si + sj, si) < INT64_SAFE else object


def _combine(parts, dtype, backend):
    """Sum shifted predecessor cells; ``parts`` holds (cell, dk, de, shear)."""
    rows = max(cell[0].shape[0] + dk for cell, dk, _, _ in parts)
    first = np.full(rows, _accel.EMPTY_FIRST, dtype=np.int64)
    last = np.full(rows, -1, dtype=np.int64)
    for (arr, f, l), dk, de, shear in parts:
        nf, nl = _accel.shifted_extents(f, l, rows, dk, de, shear)
        np.minimum(first, nf, out=first)
        np.maximum(last, nl, out=last)
    occupied = np.flatnonzero(first <= last)
    rows = int(occupied[-1]) + 1
    first, last = first[:rows], last[:rows]
    dst = np.zeros((rows, int(last.max()) + 1), dtype=dtype)
    for (arr, f, l), dk, de, shear in parts:
        _accel.shift_accumulate(dst, arr, f, l, dk, de, shear, backend)
    return dst, first, last


def _run_dense(cfg: DPConfig, fused: bool, backend: str | None = None, keep_table: bool = False):
    """Return (terminal count array, table or None).

    Cells are stored as ``(array, first, last)`` with per-row nonzero extents.
    """
    si, sj = cfg.extents
    dtype = _dtype_for(cfg)
    if dtype is object:
        backend = "numpy"
    table = {} if keep_table else None
    prev: list = [None] * (sj + 1)
    for i in range(si + 1):
        cur: list = [None] * (sj + 1)
        for j in range(sj + 1):
            if not cfg.in_region(i, j):
                continue
            if i == 0 and j == 0:
                zero = np.zeros(1, dtype=np.int64)
                cur[j] = (np.ones((1, 1), dtype=dtype), zero, zero.copy())
            else:
                parts = []
                if i > 0 and prev[j] is not None:
                    parts.append((prev[j], 0, 0, 0))
                if j > 0 and cur[j - 1] is not None:
                    e, k = _step_exponents(cfg, i, j - 1)
                    if fused:
                        parts.append((cur[j - 1], k, e - k * (k - 1) // 2, k))
                    else:
                        parts.append((cur[j - 1], k, e, 0))
                if not parts:
                    continue
                cur[j] = _combine(parts, dtype, backend)
            if table is not None:
                table[(i, j)] = cur[j][0]
        prev = cur
    final = prev[sj]
    if final is None:
        return np.zeros((1, 1), dtype=dtype), table
    return final[0], table


def _array_to_qw(a: np.ndarray) -> QWPolynomial:
    ks, es = np.nonzero(a)
    return QWPolynomial({(int(e), int(k)): int(a[k, e]) for k, e in zip(ks, es)})


def weight_enumerator(cfg: DPConfig, backend: str | None = None) -> QWPolynomial:
    """The literal (q,w) weight enumerator of the walks ending at the far corner."""
    final, _ = _run_dense(cfg, fused=False, backend=backend)
    return _array_to_qw(final)


def dp_table(cfg: DPConfig) -> dict[tuple[int, int], QWPolynomial]:
    """Every reachable cell of the faithful DP (debug mode: keeps the full table)."""
    _, table = _run_dense(cfg, fused=False, keep_table=True)
    return {ij: _array_to_qw(a) for ij, a in table.items()}


def umbral_substitute(f: QWPolynomial) -> QPolynomial:
    """``c q^e w^k -> c q^(e - k(k-1)/2)``."""
    out: dict[int, Fraction] = {}
    for (e, k), c in f.terms.items():
        key = e - k * (k - 1) // 2
        out[key] = out.get(key, 0) + c
    return QPolynomial(out)


def umbral_violations(f: QWPolynomial) -> list[tuple[int, int]]:
    """Terms ``(e, k)`` with ``e < k(k-1)/2``; empty when the image has no negative powers."""
    return sorted((e, k) for (e, k) in f.terms if e < k * (k - 1) // 2)


def size_counts(pair, cfg: DPConfig | None = None, backend: str | None = None) -> list[int]:
    """Dense list ``c`` with ``c[n]`` = number of (s,t)-cores of size ``n`` (fused DP)."""
    pair = as_pair(pair)
    cfg = cfg or calibrated_config(pair)
    final, _ = _run_dense(cfg, fused=True, backend=backend)
    counts = [int(x) for x in final.sum(axis=0)]
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def oracle_counts(pair) -> list[int]:
    sizes = size_multiset(pair)
    counts = [0] * (max(sizes) + 1)
    for n, c in sizes.items():
        counts[n] = c
    return counts


def counts_to_polynomial(counts: Sequence[int]) -> QPolynomial:
    return QPolynomial({n: c for n, c in enumerate(counts) if c})


def size_generating_polynomial(pair, engine: str = "dp", backend: str | None = None) -> QPolynomial:
    """Sum of ``q**size`` over all (s,t)-cores.

    ``engine`` is ``"dp"`` (fused DP), ``"dp-faithful"`` (literal weight
    enumerator followed by the umbral substitution) or ``"brute"`` (order-ideal
    enumeration).
    """
    pair = as_pair(pair)
    if engine == "dp":
        return counts_to_polynomial(size_counts(pair, backend=backend))
    if engine == "dp-faithful":
        return umbral_substitute(weight_enumerator(calibrated_config(pair), backend=backend))
    if engine == "brute":
        return counts_to_polynomial(oracle_counts(pair))
    raise ValueError(f"unknown engine {engine!r}")


# -- fast moments: jets at q = 1 -------------------------------------------------


def _binomials(n: int, order: int) -> list[int]:
    """Generalized binomials C(n, 0..order) for any integer n."""
    out = [1]
    for m in range(1, order + 1):
        out.append(out[-1] * (n - m + 1) // m)
    return out


def moment_jets(pair, order: int, cfg: DPConfig | None = None) -> list[int]:
    """``J[m] = sum_n c_n * C(n, m)`` for ``m = 0..order`` without building polynomials.

    Each cell keeps, per ``w``-degree, the truncated expansion of its size
    polynomial around ``q = 1``.  Multiplying by ``q**n`` acts on it through
    Vandermonde's identity, which holds for negative ``n`` as well.
    """
    pair = as_pair(pair)
    cfg = cfg or calibrated_config(pair)
    si, sj = cfg.extents
    prev: list = [None] * (sj + 1)
    R = order
    for i in range(si + 1):
        cur: list = [None] * (sj + 1)
        for j in range(sj + 1):
            if not cfg.in_region(i, j):
                continue
            if i == 0 and j == 0:
                cur[j] = {0: [1] + [0] * R}
                continue
            acc: dict[int, list[int]] = {}
            if i > 0 and prev[j] is not None:
                for k, jet in prev[j].items():
                    acc[k] = list(jet)
            if j > 0 and cur[j - 1] is not None:
                e, K = _step_exponents(cfg, i, j - 1)
                base = e - K * (K - 1) // 2
                for k, jet in cur[j - 1].items():
                    binom = _binomials(base - K * k, R)
                    target = acc.setdefault(k + K, [0] * (R + 1))
                    for m in range(R + 1):
                        target[m] += sum(binom[m - l] * jet[l] for l in range(m + 1))
            cur[j] = acc or None
        prev = cur
    final = prev[sj] or {}
    total = [0] * (R + 1)
    for jet in final.values():
        for m in range(R + 1):
            total[m] += jet[m]
    return total


# -- calibration -----------------------------------------------------------------


class CalibrationError(RuntimeError):
    pass


@dataclass
class CalibrationResult:
    offset_b: str
    orientation: Orientation
    pairs_checked: list[tuple[int, int]] = field(default_factory=list)
    rejected: dict[str, str] = field(default_factory=dict)

    def config_for(self, pair) -> DPConfig:
        pair = as_pair(pair)
        return DPConfig(pair, evaluate_offset(self.offset_b, pair), self.orientation)

    def to_json(self) -> dict:
        return {
            "offset_b": self.offset_b,
            "orientation": self.orientation.value,
            "pairs_checked": [list(p) for p in self.pairs_checked],
        }

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "CalibrationResult":
        data = json.loads(Path(path).read_text())
        return cls(
            data["offset_b"],
            Orientation(data["orientation"]),
            [tuple(p) for p in data.get("pairs_checked", [])],
        )


def coprime_pairs(max_t: int, min_s: int = 1) -> list[CorePair]:
    """Coprime pairs ``min_s <= s < t <= max_t`` ordered by ``(s + t, s)``."""
    from math import gcd

    pairs = [
        CorePair(s, t)
        for t in range(2, max_t + 1)
        for s in range(min_s, t)
        if gcd(s, t) == 1
    ]
    return sorted(pairs, key=lambda p: (p.s + p.t, p.s))


def calibrate_conventions(
    candidate_bs: Iterable[str] = DEFAULT_CANDIDATES,
    max_t: int = 8,
) -> CalibrationResult:
    """Pick the unique (offset, orientation) whose DP matches the oracle on every pair."""
    candidates = list(candidate_bs)
    if not candidates:
        raise ValueError("no offset candidates given")
    pairs = coprime_pairs(max_t)
    oracles = {p: size_generating_polynomial(p, engine="brute") for p in pairs}
    matches = []
    rejected: dict[str, str] = {}
    for expr in candidates:
        for orient in Orientation:
            label = f"b={expr}, {orient.value}"
            failure = None
            for p in pairs:
                cfg = DPConfig(p, evaluate_offset(expr, p), orient)
                got = umbral_substitute(weight_enumerator(cfg))
                if got != oracles[p]:
                    failure = f"{p}: got {got}, oracle {oracles[p]}"
                    break
            if failure is None:
                matches.append((expr, orient))
            else:
                rejected[label] = failure
    if not matches:
        report = "\n".join(f"  {k}: {v}" for k, v in rejected.items())
        raise CalibrationError(f"no convention reproduces the oracle:\n{report}")
    if len(matches) > 1:
        names = ", ".join(f"b={e}/{o.value}" for e, o in matches)
        raise CalibrationError(
            f"conventions ambiguous over s<t<={max_t} ({names}); enlarge the test range"
        )
    expr, orient = matches[0]
    return CalibrationResult(expr, orient, [(p.s, p.t) for p in pairs], rejected)


def anderson_check(pair, counts: Sequence[int]) -> bool:
    return sum(counts) == anderson_count(pair)
