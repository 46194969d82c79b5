"""On-disk JSON cache of size polynomials keyed by (s,t)."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .exactmath import QPolynomial
from .partitions import anderson_count, as_pair
from .pathdp import size_generating_polynomial

log = logging.getLogger(__name__)


class PolynomialCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, pair) -> Path:
        return self.root / f"genpoly_{pair.s}_{pair.t}.json"

    def load(self, pair) -> QPolynomial | None:
        pair = as_pair(pair)
        path = self._path(pair)
        if not path.exists():
            return None
        try:
            poly = QPolynomial.from_json(json.loads(path.read_text())["poly"])
        except (ValueError, KeyError, TypeError):
            log.warning("unreadable cache entry %s; recomputing", path)
            return None
        if poly.value_at_one() != anderson_count(pair):
            log.warning("cache entry %s fails the count check; recomputing", path)
            return None
        return poly

    def store(self, pair, poly: QPolynomial) -> None:
        pair = as_pair(pair)
        payload = {"s": pair.s, "t": pair.t, "poly": poly.to_json()}
        self._path(pair).write_text(json.dumps(payload))

    def moments_path(self) -> Path:
        return self.root / "moments.json"

    def genpoly(self, pair, engine: str = "dp") -> QPolynomial:
        poly = self.load(pair)
        if poly is None:
            poly = size_generating_polynomial(pair, engine=engine)
            self.store(pair, poly)
        return poly
