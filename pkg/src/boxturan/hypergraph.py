"""r-partite r-uniform hypergraphs and complete r-partite subgraph detection.

Edges are r-tuples of per-part vertex indices.  Vertex labels are kept
alongside (field elements or plain integers) for serialization.

Edge-list text format::

    # r=<r> parts=<n1,...,nr>
    # field GF(p^r)/c0,...,cr            (optional)
    # labels <i>=<l0>,<l1>,...           (optional, one line per part)
    <i>:<label> <i>:<label> ...          (one edge per line, r tokens)

Part indices ``i`` are 0-based; a label is the canonical integer encoding of
the vertex's field element.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded

DEFAULT_PAIR_BUDGET = 10**9

# rows of candidate pairs examined per numpy block in the pair scan
_BLOCK_CELLS = 1 << 20


class Hypergraph:
    """An r-partite r-uniform hypergraph with O(1) edge membership."""

    def __init__(self, labels: Sequence[Sequence], edges: Iterable[Sequence[int]]):
        self.labels = tuple(tuple(part) for part in labels)
        self.r = len(self.labels)
        self.part_sizes = tuple(len(part) for part in self.labels)
        checked = set()
        for e in edges:
            e = tuple(int(v) for v in e)
            if len(e) != self.r:
                raise ValueError(f"edge {e} does not have {self.r} vertices")
            for v, n in zip(e, self.part_sizes):
                if not 0 <= v < n:
                    raise ValueError(f"edge {e} has a vertex index out of range")
            checked.add(e)
        self.edges = frozenset(checked)

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self.edges

    def __len__(self):
        return len(self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_vertices(self) -> int:
        return sum(self.part_sizes)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def edge_labels(self, edge) -> tuple:
        return tuple(self.labels[i][v] for i, v in enumerate(edge))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __repr__(self):
        return f"Hypergraph(r={self.r}, parts={self.part_sizes}, edges={len(self.edges)})"


@dataclass(frozen=True)
class BoxWitness:
    """A copy of K^{(r)}_{s_1,...,s_r}: ``parts[i]`` holds the chosen vertex indices of part i."""

    parts: tuple[tuple[int, ...], ...]

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*self.parts))

    def describe(self, H: Hypergraph) -> str:
        chunks = []
        for i, part in enumerate(self.parts):
            chunks.append(f"part {i}: {{" + ", ".join(str(H.labels[i][v]) for v in part) + "}")
        return "; ".join(chunks)


def find_complete_rpartite(
    H: Hypergraph, sizes: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET
) -> BoxWitness | None:
    """Return a copy of K^{(r)}_{sizes} in ``H`` or ``None`` if there is none.

    For ``sizes == (2, ..., 2)`` this runs the pair-of-edges scan; other
    sizes use a recursive common-link search.  Both are exact.  ``budget``
    caps the number of membership checks; exceeding it raises
    :class:`BudgetExceeded`.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != H.r:
        raise ValueError(f"need {H.r} part sizes, got {len(sizes)}")
    for s, n in zip(sizes, H.part_sizes):
        if not 1 <= s <= n:
            raise ValueError(f"requested sizes {sizes} do not fit part sizes {H.part_sizes}")
    if all(s == 2 for s in sizes):
        return box_pair_scan(H, budget)
    return link_search(H, sizes, budget)


def box_pair_scan(H: Hypergraph, budget: int = DEFAULT_PAIR_BUDGET) -> BoxWitness | None:
    """Detect K^{(r)}_{2,...,2} by scanning pairs of edges that differ in every coordinate.

    Edges are bucketed by their first vertex.  For first vertices u < v and
    edges e = (u, t), e' = (v, t'), a box exists iff every mix of the tails
    t, t' completes to an edge with both u and v.  The two mixes (u, t') and
    (v, t) are checked first, which restricts t, t' to the common tails of u
    and v.  The remaining 2^r - 4 mixed tuples are then looked up for every
    pair of common tails differing in all coordinates.
    """
    r = H.r
    if r == 0 or any(n < 2 for n in H.part_sizes):
        return None
    if r == 1:
        if len(H.edges) >= 2:
            a, b = sorted(H.edges)[:2]
            return BoxWitness(((a[0], b[0]),))
        return None

    tail_sizes = H.part_sizes[1:]
    radix = np.array([math.prod(tail_sizes[i + 1:]) for i in range(r - 1)], dtype=np.int64)
    tail_space = math.prod(tail_sizes)
    buckets: dict[int, list[int]] = {}
    for e in H.edges:
        code = 0
        for v, w in zip(e[1:], radix.tolist()):
            code += v * w
        buckets.setdefault(e[0], []).append(code)
    heads = sorted(buckets)
    tails = {u: np.array(sorted(buckets[u]), dtype=np.int64) for u in heads}

    # proper mixes: take coordinate d from t when bit d of mask is set, else from t'
    k = r - 1
    masks = [mask for mask in range(1, (1 << k) - 1)]
    member = np.zeros(tail_space, dtype=bool)
    checks = 0
    for iu, u in enumerate(heads):
        for v in heads[iu + 1:]:
            tu, tv = tails[u], tails[v]
            checks += len(tu) + len(tv)
            if checks > budget:
                raise BudgetExceeded("box pair scan", checks, budget)
            common = np.intersect1d(tu, tv, assume_unique=True)
            if len(common) < (1 << k):
                continue
            if k == 1:
                return BoxWitness(((u, v), (int(common[0]), int(common[1]))))
            digits = (common[:, None] // radix[None, :]) % np.array(tail_sizes, dtype=np.int64)
            member[common] = True
            found = _scan_common_tails(digits, radix, masks, member, budget - checks)
            member[common] = False
            checks += found[1]
            if checks > budget:
                raise BudgetExceeded("box pair scan", checks, budget)
            if found[0] is not None:
                i, j = found[0]
                t, t2 = digits[i].tolist(), digits[j].tolist()
                return BoxWitness(((u, v),) + tuple(zip(t, t2)))
    return None


def _scan_common_tails(digits, radix, masks, member, budget):
    """Search pairs (i, j), i < j, of common tails forming a (r-1)-box.  Returns ((i, j) | None, checks)."""
    n, k = digits.shape
    weighted = digits * radix[None, :]
    rows = max(1, _BLOCK_CELLS // max(n, 1))
    checks = 0
    for start in range(0, n - 1, rows):
        stop = min(n - 1, start + rows)
        block = digits[start:stop]
        apart = np.all(block[:, None, :] != digits[None, :, :], axis=2)
        # keep j > i only
        apart &= np.arange(n)[None, :] > np.arange(start, stop)[:, None]
        ii, jj = np.nonzero(apart)
        ii += start
        for mask in masks:
            if len(ii) == 0:
                break
            checks += len(ii)
            mixed = np.zeros(len(ii), dtype=np.int64)
            for d in range(k):
                mixed += weighted[ii if (mask >> d) & 1 else jj, d]
            keep = member[mixed]
            ii, jj = ii[keep], jj[keep]
        if checks > budget:
            return None, checks
        if len(ii):
            return (int(ii[0]), int(jj[0])), checks
    return None, checks


def link_search(H: Hypergraph, sizes: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET) -> BoxWitness | None:
    """Find K^{(r)}_{sizes} by choosing s_1 vertices of part 0 and recursing into their common link.

    Exhaustive over vertex subsets of each part, with candidates pruned by
    link size.  Intended for small instances; guarded by ``budget``.
    """
    counter = [0]

    def search(edges, sizes):
        if len(sizes) == 1:
            verts = sorted({e[0] for e in edges})
            return [tuple(verts[: sizes[0]])] if len(verts) >= sizes[0] else None
        need = math.prod(sizes[1:])
        links: dict[int, set] = {}
        for e in edges:
            links.setdefault(e[0], set()).add(e[1:])
        cands = sorted(u for u, L in links.items() if len(L) >= need)
        for chosen in itertools.combinations(cands, sizes[0]):
            common = set(links[chosen[0]])
            for u in chosen[1:]:
                counter[0] += len(common)
                common &= links[u]
                if len(common) < need:
                    break
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("complete r-partite search", counter[0], budget)
            if len(common) < need:
                continue
            sub = search(common, sizes[1:])
            if sub is not None:
                return [chosen] + sub
        return None

    parts = search(H.edges, tuple(sizes))
    return None if parts is None else BoxWitness(tuple(tuple(p) for p in parts))


# serialization


def dumps_edgelist(H: Hypergraph, field: str | None = None) -> str:
    lines = [f"# r={H.r} parts=" + ",".join(map(str, H.part_sizes))]
    if field:
        lines.append(f"# field {field}")
    for i, part in enumerate(H.labels):
        lines.append(f"# labels {i}=" + ",".join(str(int(x)) for x in part))
    for e in H.sorted_edges():
        lines.append(" ".join(f"{i}:{int(H.labels[i][v])}" for i, v in enumerate(e)))
    return "\n".join(lines) + "\n"


def loads_edgelist(text: str) -> tuple[Hypergraph, dict]:
    """Parse an edge list.  Returns the hypergraph and header metadata (``r``, ``parts``, ``field``)."""
    meta: dict = {}
    labels: dict[int, list[int]] = {}
    raw_edges: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("r="):
                for tok in body.split():
                    key, _, val = tok.partition("=")
                    if key == "r":
                        meta["r"] = int(val)
                    elif key == "parts":
                        meta["parts"] = [int(x) for x in val.split(",")] if val else []
            elif body.startswith("field "):
                meta["field"] = body[len("field "):].strip()
            elif body.startswith("labels "):
                key, _, val = body[len("labels "):].partition("=")
                labels[int(key)] = [int(x) for x in val.split(",")] if val.strip() else []
            continue
        if "r" not in meta or "parts" not in meta:
            raise ValueError(f"line {lineno}: edge before '# r=... parts=...' header")
        r = meta["r"]
        toks = line.split()
        if len(toks) != r:
            raise ValueError(f"line {lineno}: expected {r} vertex tokens, got {len(toks)}")
        edge: list[int | None] = [None] * r
        for tok in toks:
            i, sep, lab = tok.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: bad vertex token {tok!r}")
            i = int(i)
            if not 0 <= i < r or edge[i] is not None:
                raise ValueError(f"line {lineno}: bad or repeated part index in {tok!r}")
            edge[i] = int(lab)
        raw_edges.append(edge)
    if "r" not in meta or "parts" not in meta:
        raise ValueError("missing '# r=... parts=...' header")
    r, parts = meta["r"], meta["parts"]
    if len(parts) != r:
        raise ValueError(f"header lists {len(parts)} part sizes for r={r}")

    part_labels = []
    for i in range(r):
        if i in labels:
            lab = labels[i]
        else:
            seen = sorted({e[i] for e in raw_edges})
            taken = set(seen)
            spare = (x for x in itertools.count() if x not in taken)
            lab = seen + [next(spare) for _ in range(parts[i] - len(seen))]
        if len(lab) != parts[i] or len(set(lab)) != len(lab):
            raise ValueError(f"part {i}: labels do not match declared size {parts[i]}")
        part_labels.append(lab)
    index = [{lab: j for j, lab in enumerate(part)} for part in part_labels]
    edges = []
    for e in raw_edges:
        try:
            edges.append(tuple(index[i][lab] for i, lab in enumerate(e)))
        except KeyError as exc:
            raise ValueError(f"unknown vertex label {exc.args[0]}") from None
    return Hypergraph(part_labels, edges), meta
