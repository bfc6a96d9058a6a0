"""Sparse multivariate polynomials over a finite field.

A polynomial is a map from exponent tuples (monomials) to nonzero field
coefficients, stored by canonical encoding.  Only the arithmetic needed to
build polynomials is provided; there is no gcd or factoring.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ContextMismatch
from .finite_field import FieldCtx, FieldElement

Monomial = tuple  # tuple[int, ...], exponent of x_i at index i

MAX_EXPONENT = 2**63 - 1


def _check_monomial(m, arity: int) -> tuple[int, ...]:
    m = tuple(m)
    if len(m) != arity:
        raise ValueError(f"monomial {m} has arity {len(m)}, expected {arity}")
    for e in m:
        if not isinstance(e, (int, np.integer)) or e < 0:
            raise ValueError(f"exponents must be nonnegative integers: {m}")
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return tuple(int(e) for e in m)


def divides(m1: Sequence[int], m2: Sequence[int]) -> bool:
    """True iff ``x^m1`` divides ``x^m2``, i.e. ``m1 <= m2`` coordinatewise."""
    if len(m1) != len(m2):
        raise ValueError(f"arity mismatch: {len(m1)} vs {len(m2)}")
    return all(a <= b for a, b in zip(m1, m2))


def format_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


class Polynomial:
    """Immutable sparse polynomial in ``arity`` variables over ``ctx``."""

    __slots__ = ("ctx", "arity", "_terms")

    def __init__(self, ctx: FieldCtx, arity: int, terms: Mapping | Iterable = ()):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.ctx = ctx
        self.arity = arity
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coef in items:
            mono = _check_monomial(mono, arity)
            c = self._coef(coef)
            acc[mono] = ctx.add(acc.get(mono, 0), c)
        self._terms = {m: c for m, c in acc.items() if c}

    def _coef(self, c) -> int:
        if isinstance(c, FieldElement):
            if c.ctx != self.ctx:
                raise ContextMismatch(f"{c.ctx} vs {self.ctx}")
            return c.value
        if isinstance(c, (int, np.integer)):
            c = int(c)
            if not 0 <= c < self.ctx.q:
                raise ValueError(f"coefficient encoding {c} out of range")
            return c
        raise TypeError(f"bad coefficient {c!r}")

    # constructors

    @classmethod
    def zero(cls, ctx: FieldCtx, arity: int) -> Polynomial:
        return cls(ctx, arity)

    @classmethod
    def constant(cls, ctx: FieldCtx, arity: int, c=1) -> Polynomial:
        return cls(ctx, arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, ctx: FieldCtx, arity: int, i: int) -> Polynomial:
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        mono = [0] * arity
        mono[i] = 1
        return cls(ctx, arity, {tuple(mono): 1})

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], FieldElement]:
        return {m: FieldElement(self.ctx, c) for m, c in self._terms.items()}

    def raw_terms(self) -> dict[tuple[int, ...], int]:
        """Monomial -> coefficient encoding (a copy)."""
        return dict(self._terms)

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self._terms)

    def coefficient(self, m) -> FieldElement:
        return FieldElement(self.ctx, self._terms.get(tuple(m), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ctx, self.arity, self._terms) == (other.ctx, other.arity, other._terms)

    def __hash__(self):
        return hash((self.ctx, self.arity, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Polynomial(GF({self.ctx.p}^{self.ctx.r}), {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for m in sorted(self._terms, key=lambda m: (-sum(m), m)):
            c = self._terms[m]
            mono = format_monomial(m)
            if c == 1:
                out.append(mono)
            elif mono == "1":
                out.append(f"[{c}]")
            else:
                out.append(f"[{c}]*{mono}")
        return " + ".join(out)

    # arithmetic used for construction

    def _same(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _lift(self, other):
        # scalars become constant polynomials
        if isinstance(other, (FieldElement, int)):
            c = self._coef(other) if isinstance(other, FieldElement) else other % self.ctx.p
            return Polynomial.constant(self.ctx, self.arity, FieldElement(self.ctx, c))
        return other

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        self._same(other)
        return Polynomial(self.ctx, self.arity, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ctx, self.arity, {m: self.ctx.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (FieldElement, int)):
            c = self._coef(other) if isinstance(other, FieldElement) else other % self.ctx.p
            return Polynomial(self.ctx, self.arity, {m: self.ctx.mul(v, c) for m, v in self._terms.items()})
        self._same(other)
        mul, items = self.ctx.mul, []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                items.append((tuple(a + b for a, b in zip(m1, m2)), mul(c1, c2)))
        return Polynomial(self.ctx, self.arity, items)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(self.ctx, self.arity)
        for _ in range(k):
            out = out * self
        return out

    # evaluation

    def _point(self, point) -> list[int]:
        point = list(point)
        if len(point) != self.arity:
            raise ValueError(f"point has arity {len(point)}, expected {self.arity}")
        out = []
        for a in point:
            if isinstance(a, FieldElement):
                if a.ctx != self.ctx:
                    raise ContextMismatch(f"{a.ctx} vs {self.ctx}")
                out.append(a.value)
            else:
                raise TypeError(f"point coordinates must be FieldElement, got {type(a).__name__}")
        return out

    def eval_raw(self, point: Sequence[int]) -> int:
        """Evaluate at a point given by coefficient encodings (no checks)."""
        ctx = self.ctx
        total = 0
        for mono, c in self._terms.items():
            v = c
            for a, e in zip(point, mono):
                if e:
                    v = ctx.mul(v, ctx.pow(a, e))
            total = ctx.add(total, v)
        return total

    def eval_arrays(self, cols: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorized evaluation: ``cols[i]`` holds encodings of ``x_{i+1}`` at many points."""
        ctx = self.ctx
        shape = np.shape(cols[0])
        total = np.zeros(shape, dtype=np.int64)
        for mono, c in self._terms.items():
            v = np.full(shape, c, dtype=np.int64)
            for col, e in zip(cols, mono):
                if e:
                    v = ctx.mul_arrays(v, ctx.pow_array(col, e))
            total = ctx.add_arrays(total, v)
        return total

    def __call__(self, *point) -> FieldElement:
        if len(point) == 1 and not isinstance(point[0], FieldElement):
            point = point[0]
        return FieldElement(self.ctx, self.eval_raw(self._point(point)))


def evaluate(f: Polynomial, point) -> FieldElement:
    """Exact value of ``f`` at ``point`` (a sequence of FieldElement), term by term."""
    return FieldElement(f.ctx, f.eval_raw(f._point(point)))


def degree(f: Polynomial) -> int:
    """Maximum total degree over the terms of a nonzero polynomial."""
    if f.is_zero():
        raise ValueError("degree of the zero polynomial is undefined")
    return max(sum(m) for m in f.raw_terms())


def maximal_monomials(f: Polynomial) -> list[tuple[int, ...]]:
    """Monomials of ``f`` that divide no other monomial of ``f``, sorted lexicographically."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no monomials")
    monos = f.monomials()
    return [m for m in monos if not any(n != m and divides(m, n) for n in monos)]


# text format:
#   field GF(p^r)[/c0,...,cr]
#   arity r
#   <coeff> : e1,e2,...,er


def dumps(f: Polynomial) -> str:
    lines = [f"field {f.ctx.descriptor}", f"arity {f.arity}"]
    for m in f.monomials():
        lines.append(f"{f.raw_terms()[m]} : " + ",".join(map(str, m)))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Polynomial:
    ctx = arity = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field"):
            ctx = FieldCtx.from_descriptor(line[len("field"):])
        elif line.startswith("arity"):
            arity = int(line[len("arity"):])
        else:
            if ctx is None or arity is None:
                raise ValueError(f"line {lineno}: term before 'field'/'arity' header")
            coef, sep, exps = line.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: expected 'coeff : e1,...,er'")
            try:
                mono = tuple(int(e) for e in exps.split(",")) if exps.strip() else ()
                terms.append((mono, int(coef)))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    if ctx is None or arity is None:
        raise ValueError("missing 'field' or 'arity' header")
    return Polynomial(ctx, arity, terms)
