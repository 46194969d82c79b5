"""Exact moments of the size distribution and checks against the closed forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .exactmath import BivariatePolynomial, QPolynomial, RadicalNumber
from .partitions import CorePair, as_pair
from .pathdp import moment_jets, oracle_counts, size_counts
from .theorems import evaluate_theorem, is_successive_only, theorem_polynomial

ENGINES = ("dp", "brute", "jet")


def probability_generating_function(f: QPolynomial) -> QPolynomial:
    if any(c < 0 for c in f.terms.values()):
        raise ValueError("generating polynomial has a negative coefficient")
    total = f.value_at_one()
    if total == 0:
        raise ValueError("generating polynomial vanishes at q=1")
    return f / total


def raw_moments(f, R: int) -> list[Fraction]:
    """``[E X^0, ..., E X^R]`` for the distribution with generating polynomial ``f``.

    ``f`` may be a :class:`QPolynomial` or a dense count list (index = value).
    """
    if R < 0:
        raise ValueError("R must be nonnegative")
    if isinstance(f, QPolynomial):
        items = [(e, c) for e, c in f.items()]
    else:
        items = [(n, c) for n, c in enumerate(f) if c]
    if any(c < 0 for _, c in items):
        raise ValueError("negative weight in distribution")
    total = sum(c for _, c in items)
    if total == 0:
        raise ValueError("empty distribution")
    sums = [0] * (R + 1)
    for n, c in items:
        p = c
        for r in range(R + 1):
            sums[r] += p
            p *= n
    return [Fraction(x) / total for x in sums]


def _stirling2_table(R: int) -> list[list[int]]:
    S = [[0] * (R + 1) for _ in range(R + 1)]
    S[0][0] = 1
    for n in range(1, R + 1):
        for k in range(1, n + 1):
            S[n][k] = k * S[n - 1][k] + S[n - 1][k - 1]
    return S


def raw_moments_from_jets(jets: Sequence[int], R: int) -> list[Fraction]:
    """Raw moments from binomial moments ``J[m] = sum c_n C(n, m)``.

    ``n^r = sum_m S(r, m) m! C(n, m)`` with Stirling numbers of the second kind.
    """
    if len(jets) < R + 1:
        raise ValueError("not enough jet coefficients")
    S = _stirling2_table(R)
    total = jets[0]
    return [
        Fraction(sum(S[r][m] * factorial(m) * jets[m] for m in range(r + 1)), total)
        for r in range(R + 1)
    ]


def central_moments(raw: Sequence[Fraction]) -> list[Fraction]:
    """``E[(X - mu)^k] = sum_i C(k,i) (-mu)^(k-i) E[X^i]``."""
    if raw[0] != 1:
        raise ValueError("raw[0] must be 1")
    mu = raw[1] if len(raw) > 1 else Fraction(0)
    return [
        sum((comb(k, i) * (-mu) ** (k - i) * raw[i] for i in range(k + 1)), Fraction(0))
        for k in range(len(raw))
    ]


def raw_from_central(central: Sequence[Fraction], mean) -> list[Fraction]:
    mean = Fraction(mean)
    return [
        sum((comb(k, i) * mean ** (k - i) * central[i] for i in range(k + 1)), Fraction(0))
        for k in range(len(central))
    ]


def standardized_moments(central: Sequence[Fraction]) -> dict[int, RadicalNumber]:
    """``alpha_k = m_k / m_2^(k/2)`` for ``k = 3..R`` as exact radicals."""
    if len(central) < 3:
        return {}
    m2 = Fraction(central[2])
    if m2 <= 0:
        raise ValueError("variance is zero: standardized moments undefined")
    return {
        k: RadicalNumber.rational(central[k]) / RadicalNumber.rational_power(m2, k)
        for k in range(3, len(central))
    }


@dataclass
class MomentSet:
    total_count: int
    raw: list[Fraction]
    central: list[Fraction]
    standardized: dict[int, RadicalNumber] = field(default_factory=dict)

    @property
    def mean(self) -> Fraction:
        return self.raw[1]

    @classmethod
    def from_raw(cls, total_count: int, raw: list[Fraction]) -> "MomentSet":
        central = central_moments(raw)
        std = standardized_moments(central) if len(central) > 2 and central[2] > 0 else {}
        return cls(total_count, raw, central, std)


def moment_set(pair, R: int, engine: str = "dp") -> MomentSet:
    pair = as_pair(pair)
    if engine == "dp":
        counts = size_counts(pair)
    elif engine == "brute":
        counts = oracle_counts(pair)
    elif engine == "jet":
        jets = moment_jets(pair, R)
        return MomentSet.from_raw(jets[0], raw_moments_from_jets(jets, R))
    else:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    return MomentSet.from_raw(sum(counts), raw_moments(counts, R))


def moment_value(ms: MomentSet, r: int) -> Fraction:
    """The quantity the closed forms describe: the mean for r=1, else m_r."""
    return ms.raw[1] if r == 1 else ms.central[r]


# -- checks against the closed forms ------------------------------------------------


@dataclass
class TheoremCheck:
    pair: CorePair
    computed: Fraction
    expected: Fraction

    @property
    def match(self) -> bool:
        return self.computed == self.expected


@dataclass
class TheoremReport:
    index: int
    checks: list[TheoremCheck]

    @property
    def all_match(self) -> bool:
        return all(c.match for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            verdict = "match" if c.match else "MISMATCH"
            out.append(f"theorem {self.index} {c.pair}: {verdict} computed={c.computed} expected={c.expected}")
        return out


def verify_theorem(index: int, pairs: Iterable, engine: str = "dp",
                   moments: dict | None = None) -> TheoremReport:
    """Compare DP moments with closed form ``index`` at every pair.

    ``moments`` may map pairs to precomputed :class:`MomentSet` objects.
    """
    pairs = [as_pair(p) for p in pairs]
    theorem_polynomial(index)
    if is_successive_only(index):
        bad = [p for p in pairs if p.t != p.s + 1]
        if bad:
            raise ValueError(f"theorem {index} only covers pairs (s, s+1); got {bad[0]}")
    checks = []
    for p in pairs:
        ms = moments.get(p) if moments else None
        if ms is None or len(ms.central) <= index:
            ms = moment_set(p, max(index, 2), engine)
        checks.append(TheoremCheck(p, moment_value(ms, index), evaluate_theorem(index, p.s, p.t)))
    return TheoremReport(index, checks)


def _along_line(index: int, diff_c: int) -> list[Fraction]:
    """Coefficients in ``s`` of closed form ``index`` restricted to ``t = s + diff_c``."""
    s = BivariatePolynomial.gen("s")
    return theorem_polynomial(index).substitute_t(s + diff_c).univariate_coefficients()


def limiting_standardized_moment(r: int, diff_c: int = 1) -> RadicalNumber:
    """``lim m_r / m_2^(r/2)`` as ``s, t -> oo`` with ``t - s = diff_c`` fixed."""
    if not 3 <= r <= 9:
        raise ValueError(f"standardized moment order must be in 3..9, got {r}")
    if r >= 7 and diff_c != 1:
        raise ValueError(f"order {r} is only available along t = s + 1")
    mr = _along_line(r, diff_c)
    m2 = _along_line(2, diff_c)
    deg_r, deg_2 = len(mr) - 1, len(m2) - 1
    if 2 * deg_r != r * deg_2:
        if 2 * deg_r < r * deg_2:
            return RadicalNumber.rational(0)
        raise ArithmeticError(f"m_{r} grows faster than m_2^({r}/2): no finite limit")
    return RadicalNumber.rational(mr[-1]) / RadicalNumber.rational_power(m2[-1], r)
