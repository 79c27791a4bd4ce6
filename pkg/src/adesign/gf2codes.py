"""Binary codes spanned by incidence matrices.

Rows of an incidence matrix are indexed by points, so the code generated by
``A`` has one generator per point and length equal to the number of blocks.
All arithmetic that decides an outcome is integer arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .diffana import difference_counts
from .errors import BadParameters, DimensionTooLarge, ParityViolation
from .groupalg import Group
from .incidence import IncidenceStructure, development


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """``rows x cols`` matrix over GF(2), rows packed into ``uint64`` words."""

    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise BadParameters(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        data = np.ascontiguousarray(self.data, dtype=np.uint64)
        if data.shape != (self.rows, kernels.n_words(self.cols)):
            raise BadParameters(f"packed data of shape {data.shape} does not fit {self.rows}x{self.cols}")
        if self.cols % 64:
            tail = np.uint64((1 << (self.cols % 64)) - 1)
            if np.any(data[:, -1] & ~tail):
                raise BadParameters("bits set beyond the last column")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.asarray(dense)
        if dense.ndim != 2:
            raise BadParameters("expected a 2-D array")
        r, c = dense.shape
        return cls(r, c, kernels.pack_rows(dense & 1))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    def to_dense(self) -> np.ndarray:
        return kernels.unpack_rows(self.data, self.cols)

    def row(self, i: int) -> np.ndarray:
        return self.data[i]

    def row_weights(self) -> np.ndarray:
        return kernels._popcount_rows(self.data)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def with_ones_column(self) -> "BitMatrix":
        """Prepend an all-ones column."""
        ones = np.ones((self.rows, 1), dtype=np.uint8)
        return BitMatrix.from_dense(np.hstack([ones, self.to_dense()]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def incidence_matrix(S: IncidenceStructure) -> BitMatrix:
    """Points by blocks; column ``j`` is block ``j``."""
    if S.v < 1 or S.b < 1:
        raise BadParameters("structure needs at least one point and one block")
    return BitMatrix.from_dense(S.incidence_array())


def integer_gram(M: BitMatrix) -> np.ndarray:
    """``M Mᵀ`` over the integers."""
    A = M.to_dense().astype(np.int64)
    return A @ A.T


def gram_matrix_gf2(M: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense((integer_gram(M) & 1).astype(np.uint8))


def rank_gf2(M: BitMatrix) -> int:
    rank, _ = kernels.echelon(M.data, M.cols)
    return rank


def gram_rank_gf2(M: BitMatrix) -> int:
    return rank_gf2(gram_matrix_gf2(M))


def rational_rank(A) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination on Python integers."""
    if isinstance(A, BitMatrix):
        A = A.to_dense()
    rows = [[int(x) for x in r] for r in np.asarray(A)]
    if not rows:
        return 0
    n, m = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(m):
        piv = next((i for i in range(rank, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, n):
            ri = rows[i]
            f = ri[col]
            # every Bareiss quotient is exact
            rows[i] = [(p[col] * ri[c] - f * p[c]) // prev for c in range(m)]
        prev = p[col]
        rank += 1
        if rank == n:
            break
    return rank


# --------------------------------------------------------------------------
# self-orthogonality


@dataclass(frozen=True)
class SelfOrthogonalityReport:
    k: int | None
    levels: tuple[int, ...]
    precondition: bool
    extended: bool
    generator: BitMatrix | None
    self_orthogonal: bool
    counterexample: tuple[int, int] | None
    degenerate: bool = False

    @property
    def status(self) -> str:
        if self.degenerate:
            return "degenerate"
        if self.precondition:
            return "self-orthogonal" if self.self_orthogonal else "parity criterion violated"
        return "precondition fails" + ("; code is self-orthogonal anyway" if self.self_orthogonal else "")

    def lines(self) -> list[str]:
        out = [f"k = {self.k}, pair levels {list(self.levels)}"]
        out.append(f"parity precondition k = mu_i mod 2: {'holds' if self.precondition else 'fails'}")
        if self.generator is not None:
            shape = f"{self.generator.rows}x{self.generator.cols}"
            out.append(f"generator {shape}{' (all-ones column prepended)' if self.extended else ''}")
        out.append(f"self-orthogonal: {'yes' if self.self_orthogonal else 'no'}")
        if self.counterexample is not None:
            i, j = self.counterexample
            out.append(f"odd row weight at row {i}" if i == j else f"odd inner product between rows {i} and {j}")
        return out


def first_odd_pair(M: BitMatrix) -> tuple[int, int] | None:
    """Lowest ``(i, j)``, ``i <= j``, with ``row_i · row_j`` odd; ``(i, i)`` flags odd weight."""
    G = integer_gram(M) & 1
    hits = np.argwhere(np.triu(G) != 0)
    if hits.size == 0:
        return None
    i, j = hits[0]
    return int(i), int(j)


def self_orthogonality_report(S: IncidenceStructure, levels: Sequence[int] | None = None) -> SelfOrthogonalityReport:
    """Test whether ``A`` (``k`` even) or ``[1 | A]`` (``k`` odd) spans a self-orthogonal code.

    ``levels`` defaults to the distinct off-diagonal entries of ``A Aᵀ``, which
    for a development coincide with the difference levels of the base block.
    """
    if S.b == 0 or all(len(B) == 0 for B in S.blocks):
        return SelfOrthogonalityReport(0, (), True, False, None, True, None, degenerate=True)
    k = S.uniform_k
    A = incidence_matrix(S)
    if levels is None:
        G = integer_gram(A)
        off = G[~np.eye(S.v, dtype=bool)]
        levels = tuple(int(x) for x in np.unique(off))
    levels = tuple(sorted(int(x) for x in levels))
    if k is None:
        pre, extended = False, False
    else:
        pre = all((mu - k) % 2 == 0 for mu in levels)
        extended = k % 2 == 1
    gen = A.with_ones_column() if extended else A
    bad = first_odd_pair(gen)
    return SelfOrthogonalityReport(k, levels, pre, extended, gen, bad is None, bad)


# --------------------------------------------------------------------------
# minimum distance


def reduced_basis(M: BitMatrix) -> np.ndarray:
    _, basis = kernels.echelon(M.data, M.cols)
    return basis


def min_weight_word(M: BitMatrix, dim_cap: int = 28, workers: int = 1) -> tuple[int, np.ndarray | None]:
    """Minimum nonzero weight of the row space and one codeword attaining it.

    The zero code has no nonzero word and gives ``(0, None)``. Gray-code
    ranges are split across threads; ties keep the earliest range.
    """
    basis = reduced_basis(M)
    r = basis.shape[0]
    if r > dim_cap:
        raise DimensionTooLarge(f"dimension {r} exceeds cap {dim_cap}")
    if r == 0:
        return 0, None
    total = 1 << r
    workers = max(1, min(int(workers), total))
    cuts = [total * i // workers for i in range(workers + 1)]
    spans = list(zip(cuts[:-1], cuts[1:]))
    if workers == 1:
        parts = [kernels.min_weight(basis, 0, total)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda s: kernels.min_weight(basis, *s), spans))
    best, mask = min(parts, key=lambda p: p[0])
    word = np.zeros(basis.shape[1], dtype=np.uint64)
    for i in range(r):
        if (mask >> i) & 1:
            word ^= basis[i]
    return best, kernels.unpack_rows(word[None, :], M.cols)[0]


def min_distance(M: BitMatrix, dim_cap: int = 28, workers: int = 1) -> int:
    return min_weight_word(M, dim_cap, workers)[0]


# --------------------------------------------------------------------------
# pair counts and the dual distance bound


def pair_level_counts(v: int, t: int) -> tuple[int, int]:
    """Pairs at the lower and upper 2-level of a two-level development."""
    if v < 1 or not 0 <= t <= v - 1:
        raise BadParameters(f"need 0 <= t <= v-1, got v={v}, t={t}")
    if (v * t) % 2:
        raise ParityViolation(f"v*t = {v * t} is odd")
    low, high = v * t // 2, v * (v - 1 - t) // 2
    assert low + high == math.comb(v, 2)
    return low, high


@dataclass(frozen=True)
class DualDistanceBound:
    linear: int  # mu2 + k
    discriminant: int  # (mu2+k)^2 + 4 mu2 (mu2-mu1) v t
    denominator: int  # 2 mu2
    ceiling: int

    @property
    def exact(self) -> Fraction | None:
        s = math.isqrt(self.discriminant)
        if s * s != self.discriminant:
            return None
        return Fraction(self.linear + s, self.denominator)

    @property
    def value(self) -> float:
        return (self.linear + math.sqrt(self.discriminant)) / self.denominator

    def __str__(self) -> str:
        ex = self.exact
        body = str(ex) if ex is not None else f"({self.linear} + sqrt({self.discriminant})) / {self.denominator}"
        return f"{body} ~ {self.value:.4f}, so d >= {self.ceiling}"


def dual_distance_lower_bound(k: int, mu1: int, mu2: int, v: int, t: int) -> DualDistanceBound:
    """``((mu2+k) + sqrt((mu2+k)^2 + 4 mu2 (mu2-mu1) v t)) / (2 mu2)`` with an exact integer ceiling.

    ``mu1 == mu2`` is accepted so the design case (``t = 0``) can be evaluated.
    """
    if mu2 <= 0:
        raise BadParameters(f"mu2 must be positive, got {mu2}")
    if not 0 <= mu1 <= mu2:
        raise BadParameters(f"need 0 <= mu1 <= mu2, got mu1={mu1}, mu2={mu2}")
    if k < 0 or v < 1 or t < 0:
        raise BadParameters(f"bad k={k}, v={v}, t={t}")
    B = mu2 + k
    disc = B * B + 4 * mu2 * (mu2 - mu1) * v * t
    den = 2 * mu2
    s = math.isqrt(disc)
    d = -(-(B + s) // den)
    # smallest d with den*d - B >= sqrt(disc)
    while den * d - B < 0 or (den * d - B) ** 2 < disc:
        d += 1
    return DualDistanceBound(B, disc, den, d)


# --------------------------------------------------------------------------
# development checks


def gram_identity_holds(group: Group, D: Sequence[int]) -> bool:
    """Entry-wise ``(A Aᵀ)_{gh} = |D ∩ (D + g - h)|`` for ``Dev D`` (``k`` on the diagonal)."""
    S = development(group, D)
    G = integer_gram(incidence_matrix(S))
    d = difference_counts(group, D)
    v = group.order
    diff = group.add_table[np.arange(v)[:, None], group.neg_table[np.arange(v)][None, :]]
    return bool(np.array_equal(G, d[diff]))


def is_symmetric_matrix(M: BitMatrix) -> bool:
    return M.rows == M.cols and M == M.transpose()
