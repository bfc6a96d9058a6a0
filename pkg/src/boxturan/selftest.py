"""Invariant battery: field laws, trace fibers, randomized non-vanishing suites, oracle checks.

Every suite is deterministic given its arguments (randomized ones take an
explicit seed) and returns a :class:`SuiteResult`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import bounds
from .construction import box_polynomial, build_instance, density_holds, expected_edges
from .finite_field import FieldCtx, irreducible_polynomials, is_prime, make_field
from .hypergraph import BoxWitness, Hypergraph, find_complete_rpartite
from .multipoly import Polynomial, divides, maximal_monomials
from .nullstellensatz import Grid, check_alon_instance, check_lason_instance, hypergraph_of

ACCEPTANCE_INSTANCES = ((2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (3, 3), (2, 4))


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"[{status}] {self.name}: {self.checked} checks"
        if self.note:
            text += f" ({self.note})"
        if self.failures:
            text += f"; {len(self.failures)} failures, first: {self.failures[0]}"
        return text


def field_sizes(max_size: int, min_r: int = 1) -> Iterator[tuple[int, int]]:
    """All ``(p, r)`` with p prime, ``r >= min_r`` and ``p**r <= max_size``, by field size."""
    out = []
    for p in range(2, max_size + 1):
        if p ** min_r > max_size:
            break
        if not is_prime(p):
            continue
        r = min_r
        while p**r <= max_size:
            out.append((p, r))
            r += 1
    yield from sorted(out, key=lambda pr: (pr[0] ** pr[1], pr))


def _fresh_field(p: int, r: int) -> FieldCtx:
    # uncached, so bulk suites do not pin thousands of tables in memory
    return FieldCtx(p, r, next(irreducible_polynomials(p, r)))


# finite field


def field_axioms(ctx: FieldCtx, triple_limit: int = 256, rng: random.Random | None = None) -> list[str]:
    """Exhaustive pairwise laws; exhaustive triple laws when ``q <= triple_limit``."""
    q = ctx.q
    errs = []
    elems = range(q)
    M = np.array([[ctx.mul(a, b) for b in elems] for a in elems], dtype=np.int64)
    A = np.array([[ctx.add(a, b) for b in elems] for a in elems], dtype=np.int64)
    idx = np.arange(q)
    if not (M == M.T).all():
        errs.append("mul not commutative")
    if not (A == A.T).all():
        errs.append("add not commutative")
    if not (M[:, 1] == idx).all() or not (M[:, 0] == 0).all():
        errs.append("mul identity/zero")
    if not (A[:, 0] == idx).all():
        errs.append("add identity")
    if any(A[a, ctx.neg(a)] != 0 for a in elems):
        errs.append("additive inverse")
    if any(M[a, ctx.inv(a)] != 1 for a in range(1, q)):
        errs.append("a * inv(a) != 1")
    if q <= triple_limit:
        i, j = idx[:, None, None], idx[None, :, None]
        k = idx[None, None, :]
        if not (M[M[i, j], k] == M[i, M[j, k]]).all():
            errs.append("mul not associative")
        if not (A[A[i, j], k] == A[i, A[j, k]]).all():
            errs.append("add not associative")
        if not (M[i, A[j, k]] == A[M[i, j], M[i, k]]).all():
            errs.append("not distributive")
    # log-table product against the schoolbook product
    if q <= 256:
        pairs = itertools.product(elems, elems)
    else:
        rng = rng or random.Random(0)
        pairs = [(rng.randrange(q), rng.randrange(q)) for _ in range(4096)]
    if any(M[a, b] != ctx.mul_poly(a, b) for a, b in pairs):
        errs.append("table product disagrees with polynomial product")
    return errs


def suite_field_axioms(max_size: int = 2**10, triple_limit: int = 256) -> SuiteResult:
    res = SuiteResult("field axioms", note=f"all GF(p^r) <= {max_size}, r >= 2, and GF(p) for p < 64; triple laws <= {triple_limit}")
    for p, r in field_sizes(max_size):
        if r == 1 and p >= 64:
            continue
        for err in field_axioms(make_field(p, r), triple_limit):
            res.fail(f"GF({p}^{r}): {err}")
        res.checked += 1
    return res


def suite_frobenius_identity(max_size: int = 2**12) -> SuiteResult:
    """``a^(p^r) == a`` for every element; Frobenius additive and multiplicative on small fields."""
    res = SuiteResult("a^(p^r) = a", note=f"every element of GF(p^r) <= {max_size}, r >= 2, and GF(p) for p < 1024")
    for p, r in field_sizes(max_size):
        if r == 1 and p >= 1024:
            continue
        ctx = make_field(p, r)
        bad = [a for a in range(ctx.q) if ctx.pow(a, ctx.q) != a]
        res.checked += ctx.q
        if bad:
            res.fail(f"GF({p}^{r}): a = {bad[0]}")
        if ctx.q <= 81 and r >= 2:
            for j in range(r):
                fr = [ctx.frobenius(a, j) for a in range(ctx.q)]
                for a, b in itertools.product(range(ctx.q), repeat=2):
                    if fr[ctx.add(a, b)] != ctx.add(fr[a], fr[b]) or fr[ctx.mul(a, b)] != ctx.mul(fr[a], fr[b]):
                        res.fail(f"GF({p}^{r}): Frobenius^{j} not a homomorphism at ({a}, {b})")
                        break
                if any(fr[c] != c for c in range(p)):
                    res.fail(f"GF({p}^{r}): Frobenius^{j} moves the prime subfield")
    return res


def suite_trace_fibers(max_field: int = 2**16, definition_limit: int = 2**10) -> SuiteResult:
    """Every trace fiber of every GF(p^r) <= max_field has exactly p^(r-1) elements."""
    res = SuiteResult("trace fiber sizes", note=f"all GF(p^r) <= {max_field}")
    for p, r in field_sizes(max_field):
        if r == 1:
            # trace is the identity on the prime field
            counts = np.ones(p, dtype=np.int64)
        else:
            ctx = _fresh_field(p, r)
            counts = np.bincount(ctx.trace_values, minlength=p)
            if ctx.q <= definition_limit:
                by_def = [ctx.trace(a) for a in range(ctx.q)]
                if by_def != ctx.trace_values.tolist():
                    res.fail(f"GF({p}^{r}): trace table disagrees with a + a^p + ...")
        res.checked += 1
        if len(counts) != p or (counts != p ** (r - 1)).any():
            res.fail(f"GF({p}^{r}): fiber sizes {counts.tolist()}")
    return res


def suite_modulus_invariance(max_size: int = 256, moduli_per_field: int = 3, max_edges: int = 10**5) -> SuiteResult:
    """Different irreducible moduli give the same unit count, fiber sizes and construction edge count."""
    res = SuiteResult(
        "modulus invariance",
        note=f"GF(p^r) <= {max_size}, r >= 2, up to {moduli_per_field} moduli; edges counted when <= {max_edges}",
    )
    for p, r in field_sizes(max_size, min_r=2):
        seen = set()
        for mod in itertools.islice(irreducible_polynomials(p, r), moduli_per_field):
            ctx = FieldCtx(p, r, mod)
            fibers = tuple(np.bincount(ctx.trace_values, minlength=p).tolist())
            units = sum(1 for a in range(ctx.q) if a)
            edges = None
            if expected_edges(p, r) <= max_edges:
                edges = build_instance(p, r, ctx=ctx, check_box=False).hypergraph.num_edges
            seen.add((units, fibers, edges))
            res.checked += 1
        if len(seen) != 1:
            res.fail(f"GF({p}^{r}): {sorted(seen)}")
    return res


# randomized non-vanishing suites


def _random_polynomial(rng: random.Random, ctx: FieldCtx, r: int, target, emax: int, extra: int, keep: Callable) -> Polynomial:
    terms = {tuple(target): rng.randrange(1, ctx.q)}
    for _ in range(extra):
        mono = tuple(rng.randint(0, emax) for _ in range(r))
        if mono != tuple(target) and keep(mono):
            terms[mono] = rng.randrange(ctx.q)
    return Polynomial(ctx, r, terms)


def lason_case(rng: random.Random, fields=(2, 3, 5), arities=(2, 3)):
    """Random ``(f, m, sub)`` with ``m`` maximal in ``f`` and ``|A_i| = d_i + 1``."""
    p = rng.choice(fields)
    r = rng.choice(arities)
    ctx = make_field(p, 1)
    target = tuple(rng.randrange(p) for _ in range(r))
    # never add a term the target divides, so the target stays maximal
    f = _random_polynomial(rng, ctx, r, target, 2 * p + 1, rng.randint(0, 8), lambda mono: not divides(target, mono))
    fitting = [m for m in maximal_monomials(f) if all(d < p for d in m)]
    m = rng.choice(fitting)
    sub = Grid(ctx, [rng.sample(range(p), d + 1) for d in m])
    return f, m, sub


def alon_case(rng: random.Random, fields=(2, 3, 5), arities=(2, 3)):
    """Random ``(f, m, sub)`` with ``m`` a monomial of ``f`` and ``deg f <= |m|``."""
    p = rng.choice(fields)
    r = rng.choice(arities)
    ctx = make_field(p, 1)
    target = tuple(rng.randrange(p) for _ in range(r))
    f = _random_polynomial(rng, ctx, r, target, sum(target), rng.randint(0, 8), lambda mono: sum(mono) <= sum(target))
    sub = Grid(ctx, [rng.sample(range(p), d + 1) for d in target])
    return f, target, sub


def _run_nonvanishing(name: str, make_case, check, trials: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult(name, note=f"seed={seed}")
    for t in range(trials):
        f, m, sub = make_case(rng)
        res.checked += 1
        if not check(f, m, sub):
            res.fail(f"trial {t}: f = {f}, m = {m}, sub = {sub.parts}")
    return res


def suite_lason(trials: int = 1000, seed: int = 0) -> SuiteResult:
    return _run_nonvanishing("maximal-monomial non-vanishing", lason_case, check_lason_instance, trials, seed)


def suite_alon(trials: int = 1000, seed: int = 0) -> SuiteResult:
    return _run_nonvanishing("degree-condition non-vanishing", alon_case, check_alon_instance, trials, seed)


def suite_zero_set_freeness(trials: int = 300, seed: int = 0) -> SuiteResult:
    """Zero-set hypergraphs of random ``f`` contain no K_{d_1+1,...,d_r+1} for a maximal ``x^d``."""
    rng = random.Random(seed)
    res = SuiteResult("zero-set hypergraph freeness", note=f"seed={seed}")
    for t in range(trials):
        q = rng.choice((2, 3, 4, 5))
        ctx = make_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}[q])
        r = rng.choice((2, 3))
        cap = min(q, 5)
        target = tuple(rng.randrange(cap) for _ in range(r))
        f = _random_polynomial(rng, ctx, r, target, 2 * q + 1, rng.randint(0, 8), lambda mono: not divides(target, mono))
        fitting = [m for m in maximal_monomials(f) if all(d < cap for d in m)]
        m = rng.choice(fitting)
        grid = Grid(ctx, [rng.sample(range(q), rng.randint(d + 1, cap)) for d in m])
        H = hypergraph_of(f, grid)
        res.checked += 1
        w = find_complete_rpartite(H, [d + 1 for d in m])
        if w is not None:
            res.fail(f"trial {t}: f = {f}, m = {m}, witness {w.parts}")
    return res


def brute_force_complete(H: Hypergraph, sizes) -> BoxWitness | None:
    """Reference detector: try every choice of ``s_i`` vertices in every part."""
    choices = [itertools.combinations(range(n), s) for n, s in zip(H.part_sizes, sizes)]
    for parts in itertools.product(*choices):
        if all(e in H.edges for e in itertools.product(*parts)):
            return BoxWitness(tuple(parts))
    return None


def random_hypergraph(rng: random.Random, r: int, max_part: int = 6, density: float | None = None) -> Hypergraph:
    sizes = [rng.randint(2, max_part) for _ in range(r)]
    density = rng.uniform(0.1, 0.9) if density is None else density
    edges = [e for e in itertools.product(*map(range, sizes)) if rng.random() < density]
    return Hypergraph([list(range(n)) for n in sizes], edges)


def suite_box_detector(trials: int = 200, seed: int = 0) -> SuiteResult:
    """Detector agrees with exhaustive subset enumeration; witnesses are genuine."""
    rng = random.Random(seed)
    res = SuiteResult("box detector vs brute force", note=f"seed={seed}, parts <= 6")
    for t in range(trials):
        r = rng.choice((2, 3))
        H = random_hypergraph(rng, r, max_part=6 if r == 2 else 4)
        sizes = (2,) * r if rng.random() < 0.6 else tuple(rng.randint(1, min(3, n)) for n in H.part_sizes)
        w = find_complete_rpartite(H, sizes)
        ref = brute_force_complete(H, sizes)
        res.checked += 1
        if (w is None) != (ref is None):
            res.fail(f"trial {t}: detector {w}, brute force {ref}")
        elif w is not None and not all(e in H.edges for e in w.edges):
            res.fail(f"trial {t}: witness {w.parts} is not complete")
    return res


# construction


def suite_construction(instances=ACCEPTANCE_INSTANCES) -> SuiteResult:
    res = SuiteResult("construction instances", note=", ".join(f"({p},{r})" for p, r in instances))
    for p, r in instances:
        inst = build_instance(p, r)
        rep = inst.report
        res.checked += 1
        if rep.num_edges != expected_edges(p, r):
            res.fail(f"({p},{r}): {rep.num_edges} edges, expected {expected_edges(p, r)}")
        if rep.box_free is not True:
            res.fail(f"({p},{r}): box_free = {rep.box_free}")
        if not density_holds(rep.num_edges, rep.n_per_part, r):
            res.fail(f"({p},{r}): density")
        if (1,) * r not in maximal_monomials(inst.polynomial):
            res.fail(f"({p},{r}): x1...xr not maximal")
    return res


def oracle_instances(limit: int = 10**6) -> list[tuple[int, int]]:
    out = []
    for p, r in field_sizes(10**7, min_r=2):
        if (p**r - 1) ** r <= limit:
            out.append((p, r))
    return out


def suite_oracle_equivalence(limit: int = 10**6) -> SuiteResult:
    """Fast trace-fiber enumeration equals the full grid scan whenever (p^r - 1)^r <= limit."""
    res = SuiteResult("fast vs naive zero sets", note=f"all (p,r) with (p^r-1)^r <= {limit}")
    for p, r in oracle_instances(limit):
        fast = build_instance(p, r, "fast", check_box=False).hypergraph
        naive = build_instance(p, r, "naive", check_box=False).hypergraph
        res.checked += 1
        if fast.edges != naive.edges:
            res.fail(f"({p},{r}): {len(fast.edges ^ naive.edges)} edges differ")
        elif len(fast.edges) != expected_edges(p, r):
            res.fail(f"({p},{r}): {len(fast.edges)} edges")
    return res


def suite_bounds(r_max: int = 10) -> SuiteResult:
    res = SuiteResult("exponent table", note=f"r = 2..{r_max}")
    for rec in bounds.comparison_table(r_max):
        res.checked += 1
        if rec.matches != (rec.r <= 4):
            res.fail(f"r={rec.r}: construction {rec.construction_exp} vs CPZ {rec.cpz_exp}")
        if rec.r > 4 and not rec.construction_exp < rec.cpz_exp:
            res.fail(f"r={rec.r}: construction exponent not smaller")
        if not rec.r - 1 < rec.construction_exp <= rec.erdos_exp < rec.r:
            res.fail(f"r={rec.r}: exponents out of order")
    return res


def run_all(seed: int = 0, max_field: int = 2**16, trials: int = 1000) -> list[SuiteResult]:
    return [
        suite_field_axioms(),
        suite_frobenius_identity(),
        suite_trace_fibers(max_field),
        suite_modulus_invariance(),
        suite_lason(trials, seed),
        suite_alon(trials, seed),
        suite_zero_set_freeness(max(1, trials // 4), seed),
        suite_box_detector(max(1, trials // 5), seed),
        suite_oracle_equivalence(),
        suite_construction(),
        suite_bounds(),
    ]
