"""Explicit box-free hypergraphs over GF(p^r).

The polynomial

    f(x_1, ..., x_r) = x_1...x_r + sum_i prod_{j=1}^{r-1} x_{i+j}^(p^r - p^j)

(indices cyclic in 1..r) has ``x_1...x_r`` as a maximal monomial, so its
zero-set hypergraph on ``(GF(p^r)^*)^r`` contains no K^{(r)}_{2,...,2}.  On
units it factors as ``a_1...a_r * (1 + Tr(a_1^-1 a_2^-p ... a_r^-(p^(r-1))))``,
which lets the zeros be listed directly: fix ``a_2..a_r`` and solve
``Tr(u) = -1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, Literal, Sequence

from .errors import BudgetExceeded
from .finite_field import FieldCtx, FieldElement, make_field, DEFAULT_MAX_SIZE
from .hypergraph import DEFAULT_PAIR_BUDGET, Hypergraph, find_complete_rpartite
from .multipoly import Polynomial, maximal_monomials
from .nullstellensatz import DEFAULT_EVAL_BUDGET, Grid, hypergraph_of

Mode = Literal["fast", "naive"]


def box_polynomial(ctx: FieldCtx) -> Polynomial:
    """The r+1 term construction polynomial over ``ctx`` (r = extension degree >= 2)."""
    p, r = ctx.p, ctx.r
    if r < 2:
        raise ValueError(f"construction needs r >= 2, got {r}")
    q = p**r
    terms = {(1,) * r: 1}
    for i in range(r):
        mono = [0] * r
        for j in range(1, r):
            mono[(i + j) % r] = q - p**j
        terms[tuple(mono)] = 1
    f = Polynomial(ctx, r, terms)
    if len(f) != r + 1 or (1,) * r not in maximal_monomials(f):
        raise ArithmeticError("x_1...x_r is not a maximal monomial of the construction polynomial")
    return f


def trace_form_eval(ctx: FieldCtx, point: Sequence[FieldElement]) -> FieldElement:
    """Value of the construction polynomial at a unit point via its trace form."""
    if len(point) != ctx.r:
        raise ValueError(f"point must have {ctx.r} coordinates")
    vals = []
    for a in point:
        if a.ctx != ctx:
            raise ValueError(f"{a!r} is not in {ctx}")
        if not a.value:
            raise ValueError("trace form needs nonzero coordinates")
        vals.append(a.value)
    return FieldElement(ctx, _trace_form_raw(ctx, vals))


def _trace_form_raw(ctx: FieldCtx, vals: Sequence[int]) -> int:
    prod, arg = 1, 1
    for k, a in enumerate(vals):
        prod = ctx.mul(prod, a)
        arg = ctx.mul(arg, ctx.frobenius(ctx.inv(a), k))
    return ctx.mul(prod, ctx.add(1, ctx.trace(arg)))


def _fast_edges_raw(ctx: FieldCtx) -> Iterator[tuple[int, ...]]:
    p, r, q = ctx.p, ctx.r, ctx.q
    if r < 2:
        raise ValueError(f"construction needs r >= 2, got {r}")
    fiber_inv = [ctx.inv(u) for u in ctx.fiber(ctx.minus_one)]
    # per-coordinate factor a_k^(-p^(k-1)) for k = 2..r
    factor = [[ctx.frobenius(ctx.inv(a), k) for a in range(1, q)] for k in range(1, r)]
    for rest in itertools.product(range(1, q), repeat=r - 1):
        c = 1
        for k, a in enumerate(rest):
            c = ctx.mul(c, factor[k][a - 1])
        for ui in fiber_inv:
            yield (ctx.mul(c, ui),) + rest


def enumerate_edges_fast(ctx: FieldCtx) -> Iterator[tuple[FieldElement, ...]]:
    """Every zero of the construction polynomial on ``(GF(q)^*)^r``, each exactly once.

    For each ``(a_2, ..., a_r)`` the zeros are ``a_1 = c * u^-1`` with
    ``c = a_2^-p ... a_r^-(p^(r-1))`` and ``u`` ranging over the trace fiber
    of -1, so the work is proportional to the output size.
    """
    for t in _fast_edges_raw(ctx):
        yield tuple(FieldElement(ctx, v) for v in t)


def expected_edges(p: int, r: int) -> int:
    return p ** (r - 1) * (p**r - 1) ** (r - 1)


def density_holds(m: int, n: int, r: int) -> bool:
    """Exact integer form of ``m >= n^(r - 1/r)``: ``m^r >= n^(r*r - 1)``."""
    return m**r >= n ** (r * r - 1)


@dataclass
class InstanceReport:
    p: int
    r: int
    modulus: list[int]
    n_per_part: int
    num_vertices: int
    num_edges: int
    expected_edges: int
    box_free: bool | str
    density_ok: bool

    @property
    def counts_ok(self) -> bool:
        return self.num_edges == self.expected_edges

    @property
    def passed(self) -> bool:
        return self.counts_ok and self.density_ok and self.box_free is True

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class BoxInstance:
    ctx: FieldCtx
    polynomial: Polynomial
    hypergraph: Hypergraph
    report: InstanceReport
    witness: object = field(default=None, repr=False)


def build_instance(
    p: int,
    r: int,
    mode: Mode = "fast",
    *,
    ctx: FieldCtx | None = None,
    check_box: bool = True,
    budget_evals: int = DEFAULT_EVAL_BUDGET,
    budget_pairs: int = DEFAULT_PAIR_BUDGET,
    max_field: int = DEFAULT_MAX_SIZE,
) -> BoxInstance:
    """Construct the box-free hypergraph for ``(p, r)`` and its report.

    ``mode="fast"`` lists zeros through trace fibers; ``mode="naive"`` scans
    the whole unit grid and exists as a cross-check.  ``ctx`` may supply an
    alternative modulus.  When the box check exceeds ``budget_pairs`` the
    report records ``box_free="skipped-budget"``.
    """
    if r < 2:
        raise ValueError(f"construction needs r >= 2, got {r}")
    if ctx is None:
        ctx = make_field(p, r, max_size=max_field)
    elif (ctx.p, ctx.r) != (p, r):
        raise ValueError(f"context {ctx} does not match p={p}, r={r}")
    f = box_polynomial(ctx)
    labels = [[FieldElement(ctx, v) for v in range(1, ctx.q)]] * r
    if mode == "fast":
        edges = (tuple(v - 1 for v in t) for t in _fast_edges_raw(ctx))
        H = Hypergraph(labels, edges)
    elif mode == "naive":
        H = hypergraph_of(f, Grid.units(ctx, r), budget_evals)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    n = ctx.q - 1
    m = H.num_edges
    witness = None
    box_free: bool | str = "skipped"
    if check_box:
        try:
            witness = find_complete_rpartite(H, (2,) * r, budget_pairs)
            box_free = witness is None
        except BudgetExceeded:
            box_free = "skipped-budget"
    report = InstanceReport(
        p=p,
        r=r,
        modulus=list(ctx.modulus),
        n_per_part=n,
        num_vertices=r * n,
        num_edges=m,
        expected_edges=expected_edges(p, r),
        box_free=box_free,
        density_ok=density_holds(m, n, r),
    )
    return BoxInstance(ctx, f, H, report, witness)


@dataclass
class RoteReport:
    p: int
    n: int
    zero_count: int
    expected: int
    rote_shape: bool
    p_exponent: int
    q_exponent: int
    ratio: float

    def to_dict(self) -> dict:
        return asdict(self)


def rote_instance_report(p: int) -> RoteReport:
    """The r = 2 construction read as ``f(x, y) = xy + P(x) + Q(y)`` on ``GF(p^2)^*``.

    Reports the zero count against ``n^(3/2)``, ``n = p^2 - 1``.
    """
    ctx = make_field(p, 2)
    f = box_polynomial(ctx)
    others = [m for m in f.raw_terms() if m != (1, 1)]
    px = [m[0] for m in others if m[1] == 0 and m[0] > 0]
    qy = [m[1] for m in others if m[0] == 0 and m[1] > 0]
    shape = f.raw_terms().get((1, 1)) == 1 and len(px) == 1 and len(qy) == 1 and len(others) == 2
    z = sum(1 for _ in _fast_edges_raw(ctx))
    n = ctx.q - 1
    return RoteReport(
        p=p,
        n=n,
        zero_count=z,
        expected=expected_edges(p, 2),
        rote_shape=shape,
        p_exponent=px[0] if px else 0,
        q_exponent=qy[0] if qy else 0,
        ratio=z / math.pow(n, 1.5),
    )
