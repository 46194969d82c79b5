"""Recover moment polynomials from exact data by undetermined coefficients."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd
from pathlib import Path
from typing import Iterable, Sequence

from .exactmath import (
    BivariatePolynomial,
    InconsistentSystemError,
    UnderdeterminedSystemError,
    solve_linear_exact,
)
from .moments import moment_set, moment_value
from .partitions import CorePair, as_pair
from .theorems import theorem_polynomial


class FitMode(enum.Enum):
    BIVARIATE = "biv"
    UNIVARIATE_T_EQ_S_PLUS_1 = "succ"


class AnsatzViolation(ArithmeticError):
    pass


class InsufficientData(ArithmeticError):
    pass


@dataclass(frozen=True)
class FitSpec:
    moment_order: int
    total_degree_bound: int | None = None
    symmetry: bool = True
    mode: FitMode = FitMode.BIVARIATE
    overdetermination_factor: Fraction = Fraction(5, 4)

    def __post_init__(self):
        if self.moment_order < 1:
            raise ValueError("moment order must be >= 1")
        if self.total_degree_bound is None:
            object.__setattr__(self, "total_degree_bound", 3 * self.moment_order)
        if Fraction(self.overdetermination_factor) < Fraction(5, 4):
            raise ValueError("overdetermination factor must be at least 5/4")

    def basis(self) -> list[tuple[tuple[int, int], ...]]:
        """Each basis element is a tuple of ``(s_deg, t_deg)`` monomials sharing one coefficient."""
        D = self.total_degree_bound
        if self.mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1:
            return [((a, 0),) for a in range(D + 1)]
        out = []
        for n in range(D + 1):
            for a in range(n + 1):
                b = n - a
                if self.symmetry:
                    if a > b:
                        continue
                    out.append(((a, b),) if a == b else ((a, b), (b, a)))
                else:
                    out.append(((a, b),))
        return out

    def required_points(self) -> int:
        return ceil(len(self.basis()) * Fraction(self.overdetermination_factor))


@dataclass
class FitResult:
    polynomial: BivariatePolynomial
    residual_check: bool
    data_points_used: int
    spec: FitSpec | None = None


def pair_schedule(count: int, mode: FitMode = FitMode.BIVARIATE, min_s: int = 1,
                  skip: Iterable = ()) -> list[CorePair]:
    """Deterministic data points: coprime s < t by increasing (s + t, s)."""
    skip = {as_pair(p) for p in skip}
    out: list[CorePair] = []
    if mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1:
        s = min_s
        while len(out) < count:
            p = CorePair(s, s + 1)
            if p not in skip:
                out.append(p)
            s += 1
        return out
    total = 3
    while len(out) < count:
        for s in range(min_s, (total + 1) // 2):
            t = total - s
            if s < t and gcd(s, t) == 1:
                p = CorePair(s, t)
                if p not in skip:
                    out.append(p)
                    if len(out) == count:
                        break
        total += 1
    return out


class MomentCache:
    """JSON store of exact moment data: ``[[s, t, r, numerator, denominator], ...]``."""

    def __init__(self, path=None):
        self.path = Path(path) if path else None
        self.data: dict[tuple[int, int, int], Fraction] = {}
        if self.path and self.path.exists():
            for s, t, r, num, den in json.loads(self.path.read_text()):
                self.data[(int(s), int(t), int(r))] = Fraction(int(num), int(den))

    def get(self, pair: CorePair, r: int):
        return self.data.get((pair.s, pair.t, r))

    def put(self, pair: CorePair, r: int, value: Fraction) -> None:
        self.data[(pair.s, pair.t, r)] = Fraction(value)

    def save(self) -> None:
        if not self.path:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        rows = [[s, t, r, v.numerator, v.denominator] for (s, t, r), v in sorted(self.data.items())]
        self.path.write_text(json.dumps(rows))


def collect_moment_data(r: int, pairs: Iterable, engine: str = "dp",
                        mode: FitMode = FitMode.BIVARIATE,
                        cache: MomentCache | None = None) -> list[tuple[CorePair, Fraction]]:
    pairs = [as_pair(p) for p in pairs]
    if mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1:
        bad = [p for p in pairs if p.t != p.s + 1]
        if bad:
            raise ValueError(f"successive mode needs t = s + 1, got {bad[0]}")
    out = []
    for p in pairs:
        value = cache.get(p, r) if cache else None
        if value is None:
            ms = moment_set(p, max(r, 2), engine)
            value = moment_value(ms, r)
            if cache:
                for k in range(1, len(ms.central)):
                    cache.put(p, k, moment_value(ms, k))
        out.append((p, value))
    if cache:
        cache.save()
    return out


def fit_polynomial(spec: FitSpec, data: Sequence[tuple]) -> FitResult:
    basis = spec.basis()
    points = [(as_pair(p), Fraction(v)) for p, v in data]
    if len({p for p, _ in points}) != len(points):
        raise ValueError("data points must be pairwise distinct")
    if len(points) < spec.required_points():
        raise InsufficientData(
            f"insufficient data: {len(points)} points for {len(basis)} unknowns "
            f"(need {spec.required_points()})"
        )
    rows = []
    for p, _ in points:
        if spec.mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1:
            rows.append([p.s**monos[0][0] for monos in basis])
        else:
            rows.append([sum(p.s**a * p.t**b for a, b in monos) for monos in basis])
    rhs = [v for _, v in points]
    try:
        coeffs = solve_linear_exact(rows, rhs)
    except InconsistentSystemError as exc:
        raise AnsatzViolation(
            f"ansatz violated at degree bound {spec.total_degree_bound} "
            f"(data point {points[exc.row][0]})"
        ) from exc
    except UnderdeterminedSystemError as exc:
        raise InsufficientData(f"insufficient data: {exc}") from exc
    terms = {}
    for c, monos in zip(coeffs, basis):
        for key in monos:
            terms[key] = c
    poly = BivariatePolynomial(terms)
    residual_ok = all(
        (poly.evaluate(p.s, 0) if spec.mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1 else poly.evaluate(p.s, p.t)) == v
        for p, v in points
    )
    return FitResult(poly, residual_ok, len(points), spec)


@dataclass
class FitReport:
    expanded: str
    spot_values: dict[str, Fraction] = field(default_factory=dict)
    reference: int | None = None
    matches_reference: bool | None = None

    def lines(self) -> list[str]:
        out = [f"polynomial: {self.expanded}"]
        out += [f"value at {k}: {v}" for k, v in self.spot_values.items()]
        if self.reference is not None:
            verdict = "equal" if self.matches_reference else "NOT equal"
            out.append(f"reference theorem {self.reference}: {verdict}")
        return out

    def to_json(self) -> dict:
        return {
            "polynomial": self.expanded,
            "spot_values": {k: str(v) for k, v in self.spot_values.items()},
            "reference": self.reference,
            "matches_reference": self.matches_reference,
        }


def fit_report(result: FitResult, reference: int | None = None) -> FitReport:
    poly = result.polynomial
    univariate = result.spec is not None and result.spec.mode is FitMode.UNIVARIATE_T_EQ_S_PLUS_1
    if univariate:
        spots = {"s=3": poly.evaluate(3, 0), "s=1": poly.evaluate(1, 0)}
    else:
        spots = {"(3,5)": poly.evaluate(3, 5), "(1,2)": poly.evaluate(1, 2)}
    report = FitReport(poly.to_text(), spots)
    if reference is not None:
        report.reference = reference
        ref = theorem_polynomial(reference)
        if univariate and ref.degree_in("t") > 0:
            s = BivariatePolynomial.gen("s")
            ref = ref.substitute_t(s + 1)
        report.matches_reference = ref == poly
    return report


def rediscover(r: int, mode: FitMode = FitMode.BIVARIATE, degree: int | None = None,
               extra: int = 0, engine: str = "dp", symmetry: bool = True,
               cache: MomentCache | None = None, min_s: int = 1) -> FitResult:
    """Collect just enough scheduled data (plus ``extra`` points) and fit."""
    spec = FitSpec(r, degree, symmetry and mode is FitMode.BIVARIATE, mode)
    pairs = pair_schedule(spec.required_points() + extra, mode, min_s=min_s)
    data = collect_moment_data(r, pairs, engine, mode, cache)
    return fit_polynomial(spec, data)
