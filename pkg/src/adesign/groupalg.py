"""Finite abelian groups, small finite fields and cyclotomy.

Every group element is addressed by a canonical index in ``0..order-1``:

* ``CyclicZ(n)``: the residue itself.
* ``FieldAdditive(p, m)``: base-``p`` digits of the coefficient vector,
  ``index = c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.
* ``Product2(inner)``: ``index = bit * |inner| + inner_index``.

Cyclotomic numbers use the convention ``(i, j) = #{x in D_i : x + 1 in D_j}``,
under which the classical order-2 and order-4 tables hold verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import (
    FieldTooLarge,
    IndexOutOfRange,
    NoDecomposition,
    NonPrimeModulus,
    ReducibleModulus,
    UnsupportedOrder,
)

FIELD_CAP = 1 << 20


# --------------------------------------------------------------------------
# small number theory


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for d in range(3, r + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q = p**m``, or None."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, m),) = f.items()
    return p, m


# --------------------------------------------------------------------------
# group specs


@dataclass(frozen=True)
class CyclicZ:
    n: int

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class FieldAdditive:
    """Additive group of GF(p^m).

    ``modulus`` lists the coefficients of a monic degree-``m`` polynomial from
    the constant term upward (length ``m + 1``, last entry 1). When omitted
    the default modulus for ``p^m`` is used.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return self.p**self.m


@dataclass(frozen=True)
class Product2:
    inner: "GroupSpec"

    @property
    def order(self) -> int:
        return 2 * self.inner.order


GroupSpec = Union[CyclicZ, FieldAdditive, Product2]


# --------------------------------------------------------------------------
# groups


class Group:
    """Finite abelian group on indices ``0..order-1`` with ``zero == 0``."""

    spec: GroupSpec
    order: int
    zero = 0

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return str(a)

    def parse_element(self, token: str) -> int:
        a = int(token)
        if not 0 <= a < self.order:
            raise IndexOutOfRange(f"element {a} not in group of order {self.order}")
        return a

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[a, b] == add(a, b)``; built once."""
        v = self.order
        tab = np.empty((v, v), dtype=np.int64)
        for a in range(v):
            for b in range(v):
                tab[a, b] = self.add(a, b)
        return tab

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.order)], dtype=np.int64)

    def translate(self, subset: Sequence[int], g: int) -> list[int]:
        return sorted(self.add(x, g) for x in subset)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec})"


class CyclicGroup(Group):
    def __init__(self, spec: CyclicZ):
        if spec.n < 2:
            raise IndexOutOfRange("group order must be at least 2")
        self.spec = spec
        self.order = spec.n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def neg(self, a: int) -> int:
        return (-a) % self.order

    @cached_property
    def add_table(self) -> np.ndarray:
        r = np.arange(self.order, dtype=np.int64)
        return (r[:, None] + r[None, :]) % self.order


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``mod``."""
    a = [x % p for x in a]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _poly_trim(a[:dm])


def _poly_divides(div: Sequence[int], a: Sequence[int], p: int) -> bool:
    return not _poly_mod(list(a), div, p)


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    """Monic degree-``d`` polynomials in increasing order of their lower coefficients."""
    for code in range(p**d):
        c = []
        for _ in range(d):
            c.append(code % p)
            code //= p
        yield tuple(c) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg/2``."""
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for cand in _monic_polys(p, d):
            if _poly_divides(cand, poly, p):
                return False
    return True


class FiniteField(Group):
    """GF(p^m) on canonical indices, with lazily built exp/log tables."""

    def __init__(self, spec: FieldAdditive):
        p, m = spec.p, spec.m
        if not is_prime(p):
            raise NonPrimeModulus(f"characteristic {p} is not prime")
        if m < 1:
            raise IndexOutOfRange("extension degree must be positive")
        q = p**m
        if q > FIELD_CAP:
            raise FieldTooLarge(f"q = {q} exceeds the cap {FIELD_CAP}")
        modulus = spec.modulus
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.m, self.q = p, m, q
        self.modulus = modulus
        self.spec = FieldAdditive(p, m, modulus)
        self.order = q
        self._pows = [p**i for i in range(m)]

    # coefficient vectors
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, c: Sequence[int]) -> int:
        return sum((x % self.p) * w for x, w in zip(c, self._pows))

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    @cached_property
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        dig = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
        w = np.array(self._pows, dtype=np.int64)
        s = (dig[:, None, :] + dig[None, :, :]) % p
        return s @ w

    def _mul_poly(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_mod(prod, self.modulus, self.p))

    @cached_property
    def primitive(self) -> int:
        """Smallest index of multiplicative order ``q - 1``."""
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorize(n))
        for g in range(2, self.q):
            if all(self._pow_slow(g, n // r) != 1 for r in primes):
                return g
        raise AssertionError("no primitive element found")  # pragma: no cover

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.q - 1
        alpha = self.primitive
        exp = np.empty(n, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for z in range(n):
            exp[z] = x
            log[x] = z
            x = self._mul_poly(x, alpha)
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        """``exp_table[z] == alpha**z`` for the field's primitive element."""
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        """Discrete log to base ``primitive``; ``-1`` at zero."""
        return self._exp_log[1]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return int(exp[(log[a] + log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        exp, log = self._exp_log
        return int(exp[(-log[a]) % (self.q - 1)])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        exp, log = self._exp_log
        return int(exp[(log[a] * e) % (self.q - 1)])

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in factorize(n):
            while order % r == 0 and self._pow_slow(a, order // r) == 1:
                order //= r
        return order


class Z2Product(Group):
    """Z_2 x inner, with ``index = bit * |inner| + inner_index``."""

    def __init__(self, spec: Product2):
        self.inner = make_group(spec.inner)
        self.spec = Product2(self.inner.spec)
        self.order = 2 * self.inner.order

    def split(self, a: int) -> tuple[int, int]:
        return divmod(a, self.inner.order)

    def join(self, bit: int, g: int) -> int:
        return (bit % 2) * self.inner.order + g

    def add(self, a: int, b: int) -> int:
        (s, x), (t, y) = self.split(a), self.split(b)
        return self.join(s ^ t, self.inner.add(x, y))

    def neg(self, a: int) -> int:
        s, x = self.split(a)
        return self.join(s, self.inner.neg(x))

    def label(self, a: int) -> str:
        s, x = self.split(a)
        return f"({s},{self.inner.label(x)})"

    def parse_element(self, token: str) -> int:
        token = token.strip().strip("()")
        if ":" in token or ";" in token:
            s, x = token.replace(";", ":").split(":")
            return self.join(int(s), self.inner.parse_element(x))
        return super().parse_element(token)


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``m`` with ``x`` primitive.

    Polynomials are ordered by their coefficient vectors read from ``x^{m-1}``
    down to the constant term. For ``m == 1`` the modulus is ``x`` itself.
    """
    return _default_modulus(p, m)


@lru_cache(maxsize=None)
def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    n = p**m - 1
    primes = list(factorize(n))
    first_irreducible = None
    for poly in _monic_polys(p, m):
        if poly[0] == 0 or not is_irreducible(poly, p):
            continue
        if first_irreducible is None:
            first_irreducible = poly
        # x is primitive iff x^(n/r) != 1 mod poly for every prime r | n
        if all(_x_power_is_one(poly, p, n // r) is False for r in primes):
            return poly
    assert first_irreducible is not None
    return first_irreducible


def _x_power_is_one(poly: Sequence[int], p: int, e: int) -> bool:
    result: list[int] = [1]
    base: list[int] = [0, 1]
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), poly, p)
        base = _poly_mod(_poly_mul(base, base, p), poly, p)
        e >>= 1
    return result == [1]


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def make_group(spec: GroupSpec) -> Group:
    if isinstance(spec, CyclicZ):
        return CyclicGroup(spec)
    if isinstance(spec, FieldAdditive):
        return _field_cached(spec)
    if isinstance(spec, Product2):
        return Z2Product(spec)
    raise TypeError(f"unknown group spec {spec!r}")


@lru_cache(maxsize=64)
def _field_cached(spec: FieldAdditive) -> FiniteField:
    return FiniteField(spec)


def gf(q: int) -> FiniteField:
    """The field of order ``q`` under the default modulus."""
    pm = prime_power(q)
    if pm is None:
        raise NonPrimeModulus(f"{q} is not a prime power")
    if q > FIELD_CAP:
        raise FieldTooLarge(f"q = {q} exceeds the cap {FIELD_CAP}")
    return make_group(FieldAdditive(*pm))  # type: ignore[return-value]


def parse_group(text: str) -> Group:
    """Parse ``z13``, ``gf9``, ``GF(9)``, ``z2xz7`` or ``z2xgf9`` (case-insensitive)."""
    t = text.strip().lower().replace(" ", "").replace("(", "").replace(")", "")
    if t.startswith("z2x"):
        inner = parse_group(t[3:])
        return make_group(Product2(inner.spec))
    if t.startswith("gf") or t.startswith("f"):
        q = int(t.lstrip("gf"))
        return gf(q)
    if t.startswith("z"):
        return make_group(CyclicZ(int(t[1:])))
    raise ValueError(f"cannot parse group {text!r}")


def find_primitive_element(q: int) -> int:
    if q > FIELD_CAP:
        raise FieldTooLarge(f"q = {q} exceeds the cap {FIELD_CAP}")
    return gf(q).primitive


# --------------------------------------------------------------------------
# cyclotomy


@dataclass(frozen=True)
class FieldContext:
    """Cyclotomy of order ``e`` in GF(q) relative to the primitive element ``alpha``."""

    field: FiniteField
    e: int
    alpha: int = field(init=False)
    classes: tuple[frozenset[int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        F, e = self.field, self.e
        if e < 1 or (F.q - 1) % e:
            raise IndexOutOfRange(f"e = {e} does not divide q - 1 = {F.q - 1}")
        exp = F.exp_table
        classes = tuple(frozenset(int(x) for x in exp[i::e]) for i in range(e))
        object.__setattr__(self, "alpha", F.primitive)
        object.__setattr__(self, "classes", classes)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def f(self) -> int:
        return (self.q - 1) // self.e

    def class_of(self, x: int) -> int:
        if x == 0:
            raise ValueError("zero lies in no cyclotomic class")
        return int(self.field.log_table[x]) % self.e

    @cached_property
    def numbers(self) -> np.ndarray:
        """The full ``e x e`` matrix of cyclotomic numbers, by enumeration."""
        F, e = self.field, self.e
        log = F.log_table
        xs = np.arange(1, F.q)
        ys = F.add_table[xs, 1] if F.q <= 4096 else np.array([F.add(int(x), 1) for x in xs])
        keep = ys != 0
        ci = log[xs[keep]] % e
        cj = log[ys[keep]] % e
        mat = np.zeros((e, e), dtype=np.int64)
        np.add.at(mat, (ci, cj), 1)
        return mat


def field_context(q: int, e: int) -> FieldContext:
    return _ctx_cached(q, e)


@lru_cache(maxsize=256)
def _ctx_cached(q: int, e: int) -> FieldContext:
    return FieldContext(gf(q), e)


def cyclotomic_class(ctx: FieldContext, i: int) -> frozenset[int]:
    if not 0 <= i < ctx.e:
        raise IndexOutOfRange(f"class index {i} outside 0..{ctx.e - 1}")
    return ctx.classes[i]


def cyclotomic_number(ctx: FieldContext, i: int, j: int) -> int:
    """``#{x in D_i : x + 1 in D_j}`` by enumeration."""
    if not (0 <= i < ctx.e and 0 <= j < ctx.e):
        raise IndexOutOfRange(f"({i},{j}) outside 0..{ctx.e - 1}")
    return int(ctx.numbers[i, j])


@dataclass(frozen=True)
class QuarticDecomposition:
    q: int
    x: int
    y: int


def _quartic_candidates(q: int) -> list[tuple[int, int]]:
    p = factorize(q)
    (prime,) = p
    out = []
    for y in range(0, math.isqrt(q // 4) + 1):
        r = q - 4 * y * y
        s = math.isqrt(r)
        if s * s != r:
            continue
        for x in {s, -s}:
            if x % 4 == 1:
                out.append((x, y))
    if prime % 4 == 1:
        out = [(x, y) for x, y in out if x % prime]
    return sorted(out, key=lambda c: (abs(c[0]), c[1]))


def quartic_decomposition(q: int, ctx: FieldContext | None = None) -> QuarticDecomposition:
    """``q = x^2 + 4y^2`` with ``x = 1 mod 4``; the sign of ``y`` is pinned by ``(0,1)_4``."""
    if q % 4 != 1 or prime_power(q) is None:
        raise NoDecomposition(f"q = {q} is not a prime power congruent to 1 mod 4")
    cands = _quartic_candidates(q)
    if not cands:
        raise NoDecomposition(f"q = {q} has no representation x^2 + 4y^2 with x = 1 mod 4")
    x, y = cands[0]
    if ctx is None:
        ctx = field_context(q, 4)
    if ctx.e != 4:
        raise UnsupportedOrder("quartic decomposition needs an order-4 context")
    target = cyclotomic_number(ctx, 0, 1)
    for sy in (y, -y):
        if _order4_table(q, x, sy)[0][1] == target:
            return QuarticDecomposition(q, x, sy)
    raise NoDecomposition(
        f"neither sign of y = {y} reproduces (0,1)_4 = {target} for q = {q}, x = {x}"
    )


def _order4_table(q: int, x: int, y: int) -> list[list[int]]:
    f = (q - 1) // 4

    def v(num: int) -> int:
        if num % 16:
            raise NoDecomposition(f"closed form not integral at q={q}, x={x}, y={y}")
        return num // 16

    if f % 2:
        A = v(q - 7 + 2 * x)
        B = v(q + 1 + 2 * x - 8 * y)
        C = v(q + 1 + 2 * x + 8 * y)
        D = v(q + 1 - 6 * x)
        E = v(q - 3 - 2 * x)
        tab = [[E] * 4 for _ in range(4)]
        for i, j in ((0, 0), (2, 2), (2, 0)):
            tab[i][j] = A
        for i, j in ((0, 1), (1, 3), (3, 2)):
            tab[i][j] = B
        for i, j in ((1, 2), (0, 3), (3, 1)):
            tab[i][j] = C
        tab[0][2] = D
    else:
        A = v(q - 11 - 6 * x)
        B = v(q - 3 + 2 * x + 8 * y)
        C = v(q - 3 + 2 * x)
        D = v(q - 3 + 2 * x - 8 * y)
        E = v(q + 1 - 2 * x)
        tab = [[E] * 4 for _ in range(4)]
        tab[0][0] = A
        for i, j in ((0, 1), (1, 0), (3, 3)):
            tab[i][j] = B
        for i, j in ((0, 2), (2, 0), (2, 2)):
            tab[i][j] = C
        for i, j in ((0, 3), (3, 0), (1, 1)):
            tab[i][j] = D
    return tab


def cyclotomic_number_closed_form(
    q: int, e: int, i: int, j: int, decomposition: QuarticDecomposition | None = None
) -> int:
    """Closed-form cyclotomic numbers of order 2 or 4."""
    if q % 2 == 0 or prime_power(q) is None:
        raise UnsupportedOrder(f"q = {q} is not an odd prime power")
    if e not in (2, 4):
        raise UnsupportedOrder(f"no closed form for order {e}")
    if not (0 <= i < e and 0 <= j < e):
        raise IndexOutOfRange(f"({i},{j}) outside 0..{e - 1}")
    if e == 2:
        if q % 4 == 1:
            return (q - 5) // 4 if (i, j) == (0, 0) else (q - 1) // 4
        return (q + 1) // 4 if (i, j) == (0, 1) else (q - 3) // 4
    if q % 4 != 1:
        raise NoDecomposition(f"order-4 cyclotomy needs q = 1 mod 4, got {q}")
    if decomposition is None:
        decomposition = quartic_decomposition(q)
    return _order4_table(q, decomposition.x, decomposition.y)[i][j]


def odd_prime_powers(limit: int) -> list[int]:
    return [q for q in range(3, limit + 1, 2) if prime_power(q) is not None]
