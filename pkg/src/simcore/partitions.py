"""Partitions, hook lengths and enumeration of simultaneous (s,t)-cores.

The main enumerator walks order ideals of the poset of positive integers that
are not nonnegative combinations of ``s`` and ``t``; each ideal is the set of
first-column hook lengths of exactly one (s,t)-core.  A second, independent
search (:func:`naive_st_cores`) grows partitions row by row from the bottom
and only uses the hook-length definition; it is the exhaustiveness check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, gcd
from typing import Iterable, Iterator

BetaSet = frozenset


class NotCoprimeError(ValueError):
    """Raised when (s,t) is not a pair of relatively prime positive integers."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("", "empty", "()", "[]"):
            return cls(())
        if "," in text:
            return cls(tuple(int(x) for x in text.strip("()[]").split(",") if x.strip()))
        return cls(tuple(int(ch) for ch in text))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "empty"
        if all(p <= 9 for p in self.parts):
            return "".join(map(str, self.parts))
        return ",".join(map(str, self.parts))

    def conjugate(self) -> "Partition":
        return conjugate(self)


@dataclass(frozen=True)
class CorePair:
    s: int
    t: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise NotCoprimeError(f"s and t must be positive integers, got ({self.s},{self.t})")
        if self.s == self.t or gcd(self.s, self.t) != 1:
            raise NotCoprimeError(
                f"s and t must be relatively prime positive integers, got ({self.s},{self.t})"
            )

    def swapped(self) -> "CorePair":
        return CorePair(self.t, self.s)

    def __iter__(self):
        return iter((self.s, self.t))

    def __str__(self) -> str:
        return f"({self.s},{self.t})"


def as_pair(pair) -> CorePair:
    if isinstance(pair, CorePair):
        return pair
    s, t = pair
    return CorePair(int(s), int(t))


def conjugate(p: Partition) -> Partition:
    parts = p.parts
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in parts if x > j) for j in range(parts[0])))


def hook_lengths(p: Partition) -> list[list[int]]:
    """Row-by-row table; cell (i,j) holds ``lambda_i - i + lambda'_j - j + 1``."""
    lam = p.parts
    lamc = conjugate(p).parts
    return [
        [lam[i] - (i + 1) + lamc[j] - (j + 1) + 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


def hook_set(p: Partition) -> set[int]:
    return {h for row in hook_lengths(p) for h in row}


def is_s_core(p: Partition, s: int) -> bool:
    if s < 1:
        raise ValueError("s must be a positive integer")
    return s not in hook_set(p)


def is_st_core(p: Partition, pair) -> bool:
    s, t = pair
    hooks = hook_set(p)
    return s not in hooks and t not in hooks


def first_column_hooks(p: Partition) -> BetaSet:
    k = len(p.parts)
    return frozenset(lam + k - i for i, lam in enumerate(p.parts, start=1))


def partition_from_beta(b: Iterable[int]) -> Partition:
    labels = sorted(set(b), reverse=True)
    if any(x < 1 for x in labels):
        raise ValueError("beta-set labels must be positive")
    k = len(labels)
    return Partition(tuple(x - (k - i) for i, x in enumerate(labels, start=1)))


def beta_size(b: Iterable[int]) -> int:
    labels = list(b)
    k = len(labels)
    return sum(labels) - k * (k - 1) // 2


# -- (s,t)-cores --------------------------------------------------------------


def semigroup_gaps(s: int, t: int) -> list[int]:
    """Positive integers that are not ``a*s + b*t`` with ``a, b >= 0``."""
    frob = s * t - s - t
    if frob < 1:
        return []
    representable = [False] * (frob + 1)
    representable[0] = True
    for n in range(1, frob + 1):
        representable[n] = (n >= s and representable[n - s]) or (n >= t and representable[n - t])
    return [n for n in range(1, frob + 1) if not representable[n]]


def _iter_ideals(s: int, t: int) -> Iterator[frozenset[int]]:
    gaps = semigroup_gaps(s, t)
    gapset = set(gaps)
    below = [[x - d for d in (s, t) if x - d in gapset] for x in gaps]

    chosen: set[int] = set()

    def walk(idx: int):
        if idx == len(gaps):
            yield frozenset(chosen)
            return
        yield from walk(idx + 1)
        if all(y in chosen for y in below[idx]):
            chosen.add(gaps[idx])
            yield from walk(idx + 1)
            chosen.discard(gaps[idx])

    yield from walk(0)


def enumerate_st_cores(pair) -> list[Partition]:
    """All (s,t)-core partitions, sorted by (size, parts)."""
    pair = as_pair(pair)
    cores = [partition_from_beta(b) for b in _iter_ideals(pair.s, pair.t)]
    return sorted(cores, key=lambda p: (p.size, p.parts))


def anderson_count(pair) -> int:
    pair = as_pair(pair)
    s, t = pair.s, pair.t
    return factorial(s + t - 1) // (factorial(s) * factorial(t))


def max_core_size(pair) -> int:
    pair = as_pair(pair)
    return (pair.s**2 - 1) * (pair.t**2 - 1) // 24


def size_multiset(pair) -> Counter:
    pair = as_pair(pair)
    return Counter(beta_size(b) for b in _iter_ideals(pair.s, pair.t))


def naive_st_cores(pair, max_size: int) -> list[Partition]:
    """Every (s,t)-core of size at most ``max_size``, by direct hook-length search.

    Partitions are grown by adding rows on top.  Adding a row never changes the
    hook lengths of the rows below it, so a partial partition that already has
    a hook equal to s or t can be abandoned.
    """
    s, t = as_pair(pair)
    found: list[Partition] = []

    # rows are stored bottom-up (weakly increasing); ``cols[j]`` = cells in column j
    def grow(rows: list[int], cols: list[int], size: int):
        found.append(Partition(tuple(reversed(rows))))
        lo = rows[-1] if rows else 1
        # cells past the old width have hooks 1..(length - width): stop before min(s,t)
        hi = min(max_size - size, len(cols) + min(s, t) - 1)
        for length in range(lo, hi + 1):
            new_cols = cols + [0] * (length - len(cols))
            ok = True
            for j in range(length):
                hook = (length - j - 1) + new_cols[j] + 1
                if hook == s or hook == t:
                    ok = False
                    break
            if not ok:
                continue
            grown = [c + 1 for c in new_cols[:length]] + new_cols[length:]
            grow(rows + [length], grown, size + length)

    grow([], [], 0)
    return sorted(found, key=lambda p: (p.size, p.parts))
