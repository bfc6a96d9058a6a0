"""Exact arithmetic in GF(p) and GF(p^r).

Elements of GF(p^r) = Z/p[x] / (m(x)) are stored by their canonical integer
encoding ``enc(a) = sum(c_i * p**i)`` where ``c_0 + c_1 z + ... + c_{r-1} z^{r-1}``
is the reduced representative and ``z`` is the class of ``x``.  All iteration
orders in the package are ascending in this encoding.

Multiplication goes through discrete log / antilog tables built once per
field from a primitive element.  The tables themselves are produced with the
schoolbook polynomial product (:meth:`FieldCtx.mul_poly`), which is also kept
as a reference implementation for cross-checks.
"""

from __future__ import annotations

import functools
import itertools
import math
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, ContextMismatch

DEFAULT_MAX_SIZE = 2**20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed bases, exact below 3.3e24)."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over Z/p as coefficient lists, lowest degree first.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over Z/p."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _trim(a)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Irreducibility over Z/p by trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    d = len(poly) - 1
    if d < 1:
        return False
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    if d == 1:
        return True
    if poly[0] == 0:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not poly_mod(list(poly), list(low) + [1], p):
                return False
    return True


def irreducible_polynomials(p: int, r: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducible polynomials of degree ``r`` over Z/p.

    Yielded in lexicographic order of the low-degree-first coefficient tuple;
    each tuple has length ``r + 1`` and ends with the leading 1.
    """
    # for r >= 2 a zero constant term means x divides the polynomial
    first = range(1, p) if r >= 2 else range(p)
    for low in itertools.product(first, *[range(p)] * (r - 1)):
        poly = low + (1,)
        if is_irreducible(poly, p):
            yield poly


class FieldCtx:
    """A concrete realization of GF(p^r) with a fixed irreducible modulus.

    Element-level methods (``add``, ``mul``, ``pow`` ...) act on canonical
    integer encodings; :class:`FieldElement` wraps them with operators.
    Instances are immutable apart from lazily built, deterministic caches.
    """

    def __init__(self, p: int, r: int, modulus):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if r < 1:
            raise ValueError(f"extension degree must be >= 1, got {r}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {r}: {modulus}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {p})")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over Z/{p}")
        self.p = p
        self.r = r
        self.modulus = modulus
        self.q = p**r
        self._pw = [p**i for i in range(r)]

    # identity

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FieldCtx({self.descriptor})"

    @property
    def descriptor(self) -> str:
        """Serialized form ``GF(p^r)/c0,c1,...,cr`` (modulus low-degree-first)."""
        return f"GF({self.p}^{self.r})/" + ",".join(map(str, self.modulus))

    @classmethod
    def from_descriptor(cls, text: str) -> FieldCtx:
        """Parse ``GF(p^r)`` or ``GF(p^r)/c0,...,cr``; without a modulus use :func:`make_field`."""
        text = text.strip()
        head, _, mod = text.partition("/")
        if not (head.startswith("GF(") and head.endswith(")")):
            raise ValueError(f"bad field descriptor: {text!r}")
        inner = head[3:-1]
        ps, _, rs = inner.partition("^")
        p, r = int(ps), int(rs or 1)
        if not mod:
            return make_field(p, r)
        return cls(p, r, [int(c) for c in mod.split(",")])

    # encodings

    def digits(self, a: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.r):
            a, c = divmod(a, p)
            out.append(c)
        return out

    def from_digits(self, ds) -> int:
        return sum((c % self.p) * w for c, w in zip(ds, self._pw))

    def element(self, value) -> FieldElement:
        """Element with the given canonical encoding (or coefficient sequence)."""
        if not isinstance(value, int):
            ds = list(value)
            if len(ds) != self.r:
                raise ValueError(f"expected {self.r} coefficients, got {len(ds)}")
            value = self.from_digits(ds)
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def minus_one(self) -> int:
        """Encoding of -1, i.e. p - 1 in the prime subfield (1 in characteristic 2)."""
        return self.p - 1

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(self, v)

    # additive structure

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += (x + y) % p * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.r == 1:
            return -a % p
        out, w = 0, 1
        while a:
            a, x = divmod(a, p)
            out += -x % p * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    # multiplicative structure

    def mul_poly(self, a: int, b: int) -> int:
        """Reference product: schoolbook multiplication then reduction by the modulus."""
        if self.r == 1:
            return a * b % self.p
        prod = [0] * (2 * self.r - 1)
        da, db = self.digits(a), self.digits(b)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(poly_mod(prod, list(self.modulus), self.p) + [0] * self.r)

    def _pow_poly(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self.mul_poly(result, a)
            a = self.mul_poly(a, a)
            k >>= 1
        return result

    @cached_property
    def primitive_element(self) -> int:
        """Smallest encoding that generates the multiplicative group."""
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(1, self.q):
            if all(self._pow_poly(g, n // f) != 1 for f in factors):
                return g
        raise ArithmeticError("no primitive element; modulus is not irreducible")  # pragma: no cover

    @cached_property
    def _tables(self):
        # exp[k] = g^k for 0 <= k < q-1, built in blocks of consecutive powers
        # so that only O(sqrt q) sequential polynomial products are needed.
        p, r, n = self.p, self.r, self.q - 1
        g = self.primitive_element
        block = math.isqrt(n) + 1
        head = [1]
        for _ in range(block - 1):
            head.append(self.mul_poly(head[-1], g))
        head_digits = np.array([self.digits(x) for x in head], dtype=np.int64)
        step = self.mul_poly(head[-1], g)
        weights = np.array(self._pw, dtype=np.int64)
        basis = [self._pw[i] for i in range(r)]
        exp = np.empty(n, dtype=np.int64)
        h = 1
        for start in range(0, n, block):
            mat = np.array([self.digits(self.mul_poly(z, h)) for z in basis], dtype=np.int64)
            vals = (head_digits @ mat) % p @ weights
            stop = min(start + block, n)
            exp[start:stop] = vals[: stop - start]
            h = self.mul_poly(h, step)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if log[0] != -1 or np.count_nonzero(log[1:] < 0):
            raise ArithmeticError("antilog table is not a permutation of the units")  # pragma: no cover
        exp_list = exp.tolist()
        return exp_list + exp_list, log.tolist(), exp, log

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        exp2, log, _, _ = self._tables
        return exp2[log[a] + log[b]]

    def pow(self, a: int, k: int) -> int:
        """``a**k`` by square-and-multiply; ``pow(a, 0) == 1`` including ``a == 0``."""
        if k < 0:
            raise ValueError("negative exponent; use inv() first")
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.r == 1:
            return pow(a, -1, self.p)
        exp2, log, _, _ = self._tables
        return exp2[(self.q - 1 - log[a]) % (self.q - 1)]

    def frobenius(self, a: int, j: int) -> int:
        """``a**(p**j)`` for ``0 <= j < r``."""
        if not 0 <= j < self.r:
            raise ValueError(f"Frobenius index must lie in [0, {self.r}), got {j}")
        return self.pow(a, self.p**j)

    def trace(self, a: int) -> int:
        """Absolute trace ``a + a^p + ... + a^(p^(r-1))`` by its definition."""
        t = 0
        x = a
        for _ in range(self.r):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    # bulk / vectorized helpers

    @cached_property
    def trace_basis(self) -> tuple[int, ...]:
        """Traces of the basis ``1, z, ..., z^(r-1)``, as prime-subfield integers."""
        out = []
        for i in range(self.r):
            t = self.trace(self._pw[i])
            if t >= self.p:
                raise ArithmeticError(f"trace of z^{i} left the prime subfield")  # pragma: no cover
            out.append(t)
        return tuple(out)

    @cached_property
    def trace_values(self) -> np.ndarray:
        """``trace_values[enc(a)] = trace(a)`` for every element, via Z/p-linearity of the trace."""
        idx = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        for w, t in zip(self._pw, self.trace_basis):
            if t:
                out += (idx // w) % self.p * t
        out %= self.p
        out.flags.writeable = False
        return out

    def fiber(self, c: int) -> list[int]:
        """Encodings of all ``a`` with ``trace(a) == c`` (``c`` taken mod p), ascending."""
        return np.flatnonzero(self.trace_values == c % self.p).tolist()

    @cached_property
    def digit_table(self) -> np.ndarray:
        """``digit_table[enc(a), i]`` is the i-th coefficient of ``a``."""
        dtype = np.uint8 if self.p < 256 else np.int64
        idx = np.arange(self.q, dtype=np.int64)
        out = np.stack([(idx // w) % self.p for w in self._pw], axis=1).astype(dtype)
        out.flags.writeable = False
        return out

    def add_arrays(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return x ^ y
        if self.r == 1:
            return (x + y) % self.p
        d = self.digit_table
        s = (d[x].astype(np.int64) + d[y]) % self.p
        return s @ np.array(self._pw, dtype=np.int64)

    def mul_arrays(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        _, _, exp, log = self._tables
        n = self.q - 1
        out = exp[(log[x] + log[y]) % n]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_array(self, x: np.ndarray, k: int) -> np.ndarray:
        """Elementwise ``x**k`` (vectorized through the log table)."""
        if k == 0:
            return np.ones_like(x)
        _, _, exp, log = self._tables
        n = self.q - 1
        out = exp[(log[x] * (k % n)) % n]
        return np.where(x == 0, 0, out)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, r: int) -> FieldCtx:
    modulus = next(irreducible_polynomials(p, r))
    return FieldCtx(p, r, modulus)


def make_field(p: int, r: int = 1, max_size: int = DEFAULT_MAX_SIZE) -> FieldCtx:
    """GF(p^r) with the lexicographically smallest monic irreducible modulus.

    The modulus minimizes the coefficient tuple ``(c_0, ..., c_{r-1})`` in
    lexicographic order, so the result is deterministic across runs.

    Raises ValueError for non-prime ``p`` or ``r < 1`` and
    :class:`BudgetExceeded` when ``p**r > max_size``.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    if p**r > max_size:
        raise BudgetExceeded(f"field size {p}^{r}", p**r, max_size)
    return _make_field(p, r)


class FieldElement:
    """An element of a :class:`FieldCtx`, stored by canonical encoding.

    Integers mixed into arithmetic are read as prime-subfield scalars
    (taken mod p).  Operands from different fields raise
    :class:`~boxturan.errors.ContextMismatch`.
    """

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        if not 0 <= value < ctx.q:
            raise ValueError(f"encoding {value} out of range for {ctx}")
        self.ctx = ctx
        self.value = int(value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inv(self._other(other))))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return FieldElement(self.ctx, self.ctx.pow(self.value, k))

    def inv(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and self.ctx == other.ctx

    def __lt__(self, other):
        return self.value < other.value

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement(GF({self.ctx.p}^{self.ctx.r}), {self.value})"

    def __str__(self):
        return str(self.value)

    def in_prime_subfield(self) -> bool:
        return self.value < self.ctx.p


def frobenius(a: FieldElement, j: int) -> FieldElement:
    """The ``j``-th Frobenius iterate ``a**(p**j)``, ``0 <= j < r``."""
    return FieldElement(a.ctx, a.ctx.frobenius(a.value, j))


def trace(a: FieldElement) -> FieldElement:
    """Absolute trace of ``a`` over the prime field; lands in the prime subfield."""
    return FieldElement(a.ctx, a.ctx.trace(a.value))


def trace_fiber(ctx: FieldCtx, c) -> list[FieldElement]:
    """All elements whose trace equals ``c``, in ascending encoding order.

    ``c`` is a prime-subfield element or an integer read mod p (so ``-1``
    gives the fiber over ``p - 1``).
    """
    if isinstance(c, FieldElement):
        if not c.in_prime_subfield():
            raise ValueError(f"{c!r} is not in the prime subfield")
        c = c.value
    return [FieldElement(ctx, v) for v in ctx.fiber(c)]


def units(ctx: FieldCtx) -> Iterator[FieldElement]:
    """Nonzero elements in ascending encoding order."""
    for v in range(1, ctx.q):
        yield FieldElement(ctx, v)
