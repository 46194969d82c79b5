"""Sparse polynomials with exact rational coefficients.

Three concrete classes share one implementation:

* :class:`QPolynomial` -- Laurent polynomial in ``q`` (integer exponents).
* :class:`QWPolynomial` -- polynomial in ``q`` (Laurent) and ``w`` (``w``-degree >= 0).
* :class:`BivariatePolynomial` -- polynomial in ``s`` and ``t``.

Terms live in a dict from exponent key to nonzero :class:`~fractions.Fraction`.
Univariate keys are plain ints, multivariate keys are tuples.  Instances are
treated as immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

from .rational import as_fraction, format_rational

# Exponents are kept inside a signed machine word.
EXPONENT_LIMIT = 2**62


class _SparsePolynomial:
    variables: tuple[str, ...] = ()
    # per-variable flag: may the exponent be negative?
    laurent: tuple[bool, ...] = ()

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                key = self._check_key(key)
                coeff = as_fraction(coeff)
                if coeff:
                    total = clean.get(key, 0) + coeff
                    if total:
                        clean[key] = total
                    else:
                        del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- key handling -------------------------------------------------------
    @classmethod
    def _nvars(cls) -> int:
        return len(cls.variables)

    @classmethod
    def _check_key(cls, key):
        n = cls._nvars()
        if n == 1:
            if isinstance(key, tuple):
                (key,) = key
            exps = (int(key),)
        else:
            exps = tuple(int(e) for e in key)
            if len(exps) != n:
                raise ValueError(f"expected {n} exponents, got {key!r}")
        for e, neg_ok, name in zip(exps, cls.laurent, cls.variables):
            if e < 0 and not neg_ok:
                raise ValueError(f"negative exponent {e} for {name}")
            if abs(e) >= EXPONENT_LIMIT:
                raise OverflowError(f"exponent {e} of {name} out of range")
        return exps[0] if n == 1 else exps

    @classmethod
    def _add_keys(cls, a, b):
        if cls._nvars() == 1:
            out = a + b
            if abs(out) >= EXPONENT_LIMIT:
                raise OverflowError("exponent overflow")
            return out
        out = tuple(x + y for x, y in zip(a, b))
        if any(abs(x) >= EXPONENT_LIMIT for x in out):
            raise OverflowError("exponent overflow")
        return out

    @classmethod
    def _exps(cls, key) -> tuple[int, ...]:
        return (key,) if cls._nvars() == 1 else key

    @classmethod
    def _zero_key(cls):
        return 0 if cls._nvars() == 1 else (0,) * cls._nvars()

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls._from_clean({})

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def constant(cls, c):
        return cls({cls._zero_key(): c})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        return cls({exponents: coeff})

    @classmethod
    def gen(cls, name: str):
        """The polynomial consisting of the single variable ``name``."""
        idx = cls.variables.index(name)
        exps = [0] * cls._nvars()
        exps[idx] = 1
        key = exps[0] if cls._nvars() == 1 else tuple(exps)
        return cls._from_clean({key: Fraction(1)})

    # -- container protocol ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        """Terms sorted by exponent ascending (the canonical order)."""
        return iter(sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0])))

    @classmethod
    def _sort_key(cls, key):
        return key

    def coefficient(self, key) -> Fraction:
        return self._terms.get(self._check_key(key), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {self._zero_key()}

    def constant_term(self) -> Fraction:
        return self._terms.get(self._zero_key(), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, _SparsePolynomial):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return self.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            total = out.get(key, 0) + c
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return self._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.zero()
            return self._from_clean({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, type(self)):
            return NotImplemented
        out: dict = {}
        add = self._add_keys
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = add(k1, k2)
                out[key] = out.get(key, 0) + c1 * c2
        return self._from_clean({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SparsePolynomial):
            if not other.is_constant():
                raise ValueError("division by a non-constant polynomial")
            other = other.constant_term()
        other = as_fraction(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        return self._from_clean({k: c / other for k, c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((key, c),) = self._terms.items()
            exps = tuple(e * n for e in self._exps(key))
            return self.monomial(exps[0] if self._nvars() == 1 else exps, c**n)
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, *values) -> Fraction:
        if len(values) != self._nvars():
            raise TypeError(f"expected {self._nvars()} values, got {len(values)}")
        values = tuple(as_fraction(v) for v in values)
        total = Fraction(0)
        for key, c in self._terms.items():
            term = c
            for v, e in zip(values, self._exps(key)):
                term *= v**e
            total += term
        return total

    __call__ = evaluate

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(self._exps(k)) for k in self._terms)

    # -- serialization --------------------------------------------------------
    def _format_monomial(self, key) -> str:
        parts = []
        for name, e in zip(self.variables, self._exps(key)):
            if e == 0:
                continue
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for key, c in self.items():
            mono = self._format_monomial(key)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    __str__ = to_text

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"

    def to_json(self) -> list:
        out = []
        for key, c in self.items():
            exps = key if self._nvars() == 1 else list(key)
            out.append([exps, c.numerator, c.denominator])
        return out

    @classmethod
    def from_json(cls, data: Iterable) -> "_SparsePolynomial":
        terms = []
        for exps, num, den in data:
            key = exps if cls._nvars() == 1 else tuple(exps)
            terms.append((key, Fraction(int(num), int(den))))
        return cls(terms)

    @classmethod
    def parse(cls, text: str):
        """Parse a polynomial written with ``+ - * / ^ **`` and parentheses."""
        return _Parser(cls, text).parse()


class QPolynomial(_SparsePolynomial):
    """Laurent polynomial in ``q``."""

    variables = ("q",)
    laurent = (True,)
    __slots__ = ()

    def min_exponent(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exponent(self) -> int:
        return max(self._terms) if self._terms else 0

    def value_at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))


class QWPolynomial(_SparsePolynomial):
    """Polynomial in ``q`` (Laurent) and ``w``; keys are ``(q_exp, w_exp)``."""

    variables = ("q", "w")
    laurent = (True, False)
    __slots__ = ()

    @classmethod
    def _sort_key(cls, key):
        return (key[1], key[0])

    def by_w_degree(self) -> dict[int, QPolynomial]:
        groups: dict[int, dict[int, Fraction]] = {}
        for (e, k), c in self._terms.items():
            groups.setdefault(k, {})[e] = c
        return {k: QPolynomial._from_clean(g) for k, g in sorted(groups.items())}


class BivariatePolynomial(_SparsePolynomial):
    """Polynomial in ``s`` and ``t``; keys are ``(s_deg, t_deg)``."""

    variables = ("s", "t")
    laurent = (False, False)
    __slots__ = ()

    @classmethod
    def _sort_key(cls, key):
        return (key[0] + key[1], key[0])

    def swap(self) -> "BivariatePolynomial":
        return self._from_clean({(b, a): c for (a, b), c in self._terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.swap()

    def substitute_t(self, expr: "BivariatePolynomial") -> "BivariatePolynomial":
        """Replace ``t`` by ``expr`` (a polynomial in ``s`` and ``t``)."""
        s = self.gen("s")
        out = self.zero()
        powers: dict[int, BivariatePolynomial] = {}
        for (a, b), c in self._terms.items():
            if b not in powers:
                powers[b] = expr**b
            out = out + (s**a) * powers[b] * c
        return out

    def degree_in(self, name: str) -> int:
        idx = self.variables.index(name)
        if not self._terms:
            return -1
        return max(k[idx] for k in self._terms)

    def univariate_coefficients(self) -> list[Fraction]:
        """Coefficients in ``s`` (index = power) of a polynomial free of ``t``."""
        if self.degree_in("t") > 0:
            raise ValueError("polynomial depends on t")
        deg = self.degree_in("s")
        coeffs = [Fraction(0)] * (deg + 1)
        for (a, _), c in self._terms.items():
            coeffs[a] = c
        return coeffs


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, cls, text: str):
        self.cls = cls
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens, pos = [], 0
        text = text.replace("−", "-").strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
            tokens.append(m.group(m.lastindex))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError("empty polynomial text")
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() == "(":
                self.take()
                exp = self.expr()
                self.take(")")
                if not exp.is_constant() or exp.constant_term().denominator != 1:
                    raise ValueError("exponent must be an integer constant")
                n = sign * int(exp.constant_term())
            else:
                tok = self.take()
                if not tok.isdigit():
                    raise ValueError(f"bad exponent {tok!r}")
                n = sign * int(tok)
            return base**n
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok.isdigit():
            return self.cls.constant(int(tok))
        if tok in self.cls.variables:
            return self.cls.gen(tok)
        raise ValueError(f"unexpected token {tok!r}")
