"""Exact exponents of the Turán-number bounds for complete r-partite hypergraphs.

All exponents are :class:`fractions.Fraction`; the O/Omega constants are
unspecified and never computed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

CONSTANTS_NOTE = "O/Omega constants unspecified; exponents only"


def erdos_exponent(sizes: Sequence[int]) -> Fraction:
    """Upper-bound exponent ``r - 1/(s_1 ... s_{r-1})`` for sorted part sizes."""
    sizes = list(sizes)
    if not sizes or any(not isinstance(s, int) or s < 1 for s in sizes):
        raise ValueError(f"part sizes must be positive integers: {sizes}")
    if sizes != sorted(sizes):
        raise ValueError(f"part sizes must be sorted ascending: {sizes}")
    return len(sizes) - Fraction(1, math.prod(sizes[:-1]))


def _check_r(r: int):
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r}")


def cpz_exponent(r: int) -> Fraction:
    """Best previously known lower-bound exponent for the box problem, ``r - 1/ceil((2^r - 1)/r)``."""
    _check_r(r)
    return r - Fraction(1, -(-(2**r - 1) // r))


def construction_exponent(r: int) -> Fraction:
    """Exponent ``r - 1/r`` achieved by the explicit construction."""
    _check_r(r)
    return r - Fraction(1, r)


# interface name used by callers of the original API
paper_exponent = construction_exponent


@dataclass(frozen=True)
class ExponentRecord:
    r: int
    sizes: tuple[int, ...]
    erdos_exp: Fraction
    cpz_exp: Fraction
    construction_exp: Fraction

    @property
    def matches(self) -> bool:
        return self.construction_exp == self.cpz_exp

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "sizes": list(self.sizes),
            "erdos_exp": str(self.erdos_exp),
            "cpz_exp": str(self.cpz_exp),
            "construction_exp": str(self.construction_exp),
            "matches": self.matches,
        }


def comparison_table(r_max: int) -> list[ExponentRecord]:
    """One record per ``r`` in ``2..r_max`` for the box K^{(r)}_{2,...,2}."""
    _check_r(r_max)
    out = []
    for r in range(2, r_max + 1):
        sizes = (2,) * r
        out.append(ExponentRecord(r, sizes, erdos_exponent(sizes), cpz_exponent(r), construction_exponent(r)))
    return out


def format_table(records: Sequence[ExponentRecord]) -> str:
    header = ("r", "upper (Erdos)", "lower (CPZ)", "construction", "equal")
    rows = [header]
    for rec in records:
        rows.append((str(rec.r), str(rec.erdos_exp), str(rec.cpz_exp), str(rec.construction_exp), "T" if rec.matches else "F"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    lines.append(f"({CONSTANTS_NOTE})")
    return "\n".join(lines)


def table_json(records: Sequence[ExponentRecord]) -> str:
    return json.dumps([rec.to_dict() for rec in records], indent=2)
