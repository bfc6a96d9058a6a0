"""Zero sets on grids, their hypergraphs, and checks of the non-vanishing theorems.

If ``x^d`` is a maximal monomial of ``f`` (it divides no other monomial of
``f``), then ``f`` does not vanish identically on any grid
``A_1 x ... x A_r`` with ``|A_i| >= d_i + 1``.  Consequently the zero-set
hypergraph of ``f`` on any grid contains no ``K^{(r)}_{d_1+1, ..., d_r+1}``.
The functions here build those objects and test the guarantee instance by
instance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, ContextMismatch
from .finite_field import FieldCtx, FieldElement
from .hypergraph import Hypergraph
from .multipoly import Polynomial, degree, maximal_monomials

DEFAULT_EVAL_BUDGET = 10**8

_CHUNK = 1 << 18


class Grid:
    """A product set ``B_1 x ... x B_r`` of field elements, each part duplicate-free."""

    __slots__ = ("ctx", "parts")

    def __init__(self, ctx: FieldCtx, parts: Sequence[Sequence]):
        self.ctx = ctx
        clean = []
        for i, part in enumerate(parts):
            vals = []
            for a in part:
                if isinstance(a, FieldElement):
                    if a.ctx != ctx:
                        raise ContextMismatch(f"part {i}: {a.ctx} vs {ctx}")
                    a = a.value
                if not 0 <= a < ctx.q:
                    raise ValueError(f"part {i}: encoding {a} out of range")
                vals.append(int(a))
            if len(set(vals)) != len(vals):
                raise ValueError(f"part {i} has repeated elements")
            clean.append(tuple(vals))
        self.parts = tuple(clean)

    @classmethod
    def units(cls, ctx: FieldCtx, r: int) -> Grid:
        """``(GF(q)^*)^r`` with parts in ascending encoding order."""
        return cls(ctx, [range(1, ctx.q)] * r)

    @classmethod
    def full(cls, ctx: FieldCtx, r: int) -> Grid:
        return cls(ctx, [range(ctx.q)] * r)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def element_parts(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.ctx, v) for v in part] for part in self.parts]

    def __len__(self):
        return math.prod(self.sizes)

    def __repr__(self):
        return f"Grid(GF({self.ctx.p}^{self.ctx.r}), sizes={self.sizes})"


def _check(f: Polynomial, grid: Grid):
    if f.ctx != grid.ctx:
        raise ContextMismatch(f"{f.ctx} vs {grid.ctx}")
    if f.arity != grid.r:
        raise ValueError(f"polynomial arity {f.arity} does not match grid arity {grid.r}")
    if any(n == 0 for n in grid.sizes):
        raise ValueError("grid parts must be nonempty")


def zero_indices(f: Polynomial, grid: Grid, budget: int = DEFAULT_EVAL_BUDGET) -> np.ndarray:
    """Per-part index tuples of all grid points where ``f`` vanishes, shape ``(k, r)``.

    Full scan of the grid in vectorized chunks; rows come out in
    lexicographic order of the index tuples.
    """
    _check(f, grid)
    total = len(grid)
    if total > budget:
        raise BudgetExceeded("grid scan", total, budget)
    sizes = grid.sizes
    arrays = [np.array(part, dtype=np.int64) for part in grid.parts]
    hits = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        multi = np.unravel_index(idx, sizes)
        vals = f.eval_arrays([arr[m] for arr, m in zip(arrays, multi)])
        hits.append(idx[vals == 0])
    flat = np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)
    return np.stack(np.unravel_index(flat, sizes), axis=1).reshape(-1, len(sizes))


def zero_set(f: Polynomial, grid: Grid, budget: int = DEFAULT_EVAL_BUDGET) -> list[tuple[FieldElement, ...]]:
    """All points of ``grid`` at which ``f`` vanishes, sorted by coordinate encodings."""
    ctx = grid.ctx
    points = []
    for row in zero_indices(f, grid, budget).tolist():
        points.append(tuple(grid.parts[i][j] for i, j in enumerate(row)))
    points.sort()
    return [tuple(FieldElement(ctx, v) for v in pt) for pt in points]


def hypergraph_of(f: Polynomial, grid: Grid, budget: int = DEFAULT_EVAL_BUDGET) -> Hypergraph:
    """The r-partite hypergraph on the grid parts whose edges are the zeros of ``f``."""
    edges = map(tuple, zero_indices(f, grid, budget).tolist())
    return Hypergraph(grid.element_parts(), edges)


def _vanishes_on(f: Polynomial, grid: Grid) -> bool:
    return all(f.eval_raw(pt) == 0 for pt in itertools.product(*grid.parts))


def _fits(m, grid: Grid):
    for i, (d, n) in enumerate(zip(m, grid.sizes)):
        if n < d + 1:
            raise ValueError(f"part {i} has {n} elements; need at least {d + 1}")


def check_lason_instance(f: Polynomial, m: Sequence[int], sub: Grid) -> bool:
    """True iff ``f`` is nonzero somewhere on ``sub``, for a maximal monomial ``m``.

    Raises ValueError when ``m`` is not maximal in ``f`` or a part of ``sub``
    has fewer than ``d_i + 1`` elements.  A False return contradicts the
    theorem and therefore signals a bug.
    """
    _check(f, sub)
    m = tuple(m)
    if m not in maximal_monomials(f):
        raise ValueError(f"{m} is not a maximal monomial of the polynomial")
    _fits(m, sub)
    return not _vanishes_on(f, sub)


def check_alon_instance(f: Polynomial, m: Sequence[int], sub: Grid) -> bool:
    """As :func:`check_lason_instance`, under the hypothesis ``deg f <= |m|`` instead of maximality."""
    _check(f, sub)
    m = tuple(m)
    if f.is_zero() or m not in f.raw_terms():
        raise ValueError(f"{m} is not a monomial of the polynomial")
    if degree(f) > sum(m):
        raise ValueError(f"degree condition fails: deg f = {degree(f)} > {sum(m)}")
    _fits(m, sub)
    return not _vanishes_on(f, sub)


@dataclass(frozen=True)
class CorollaryReport:
    zero_count: int
    n: int
    exponent: Fraction
    ratio: float

    def to_dict(self) -> dict:
        return {
            "zero_count": self.zero_count,
            "n": self.n,
            "exponent": str(self.exponent),
            "ratio": self.ratio,
        }


def corollary_exponent(m: Sequence[int]) -> Fraction:
    """``r - 1/((d_1+1)...(d_{r-1}+1))`` with the exponents sorted ascending."""
    d = sorted(m)
    return len(d) - Fraction(1, math.prod(x + 1 for x in d[:-1]))


def corollary_report(
    f: Polynomial, m: Sequence[int], grid: Grid, budget: int = DEFAULT_EVAL_BUDGET
) -> CorollaryReport:
    """Zero count of ``f`` on an n x ... x n grid against ``n`` to the zero-set exponent.

    Informational only: the implied constant of the bound is unknown, so no
    pass/fail verdict is attached.
    """
    _check(f, grid)
    m = tuple(m)
    if m not in maximal_monomials(f):
        raise ValueError(f"{m} is not a maximal monomial of the polynomial")
    if len(set(grid.sizes)) != 1:
        raise ValueError(f"parts must have equal sizes, got {grid.sizes}")
    n = grid.sizes[0]
    z = len(zero_indices(f, grid, budget))
    exp = corollary_exponent(m)
    return CorollaryReport(z, n, exp, z / n ** float(exp))
