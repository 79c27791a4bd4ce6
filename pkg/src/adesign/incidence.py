"""Incidence structures, exhaustive t-level verification and packing/covering bounds."""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadParameters,
    CapExceeded,
    DegenerateT,
    DesignFileError,
    EmptyBlock,
    EmptyOrFullSubset,
    IndexOutOfRange,
    PointNotFound,
)
from .groupalg import Group

DEFAULT_CAP = 10**8
CAP_ENV = "ADESIGN_CAP"
INF_LABEL = "inf"


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class IncidenceStructure:
    """Points ``0..v-1`` and an ordered multiset of blocks (sorted index tuples)."""

    v: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in B)) for B in self.blocks)
        for B in blocks:
            if len(set(B)) != len(B):
                raise IndexOutOfRange(f"block {B} repeats a point")
            if B and not (0 <= B[0] and B[-1] < self.v):
                raise IndexOutOfRange(f"block {B} has a point outside 0..{self.v - 1}")
        object.__setattr__(self, "blocks", blocks)
        labels = self.labels
        if labels is None:
            labels = tuple(str(i) for i in range(self.v))
        elif len(labels) != self.v:
            raise IndexOutOfRange(f"{len(labels)} labels for {self.v} points")
        object.__setattr__(self, "labels", tuple(str(x) for x in labels))

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def symmetric(self) -> bool:
        return self.b == self.v

    @property
    def block_sizes(self) -> Counter:
        return Counter(len(B) for B in self.blocks)

    @property
    def uniform_k(self) -> int | None:
        sizes = self.block_sizes
        return next(iter(sizes)) if len(sizes) == 1 else None

    def labelled_blocks(self) -> list[frozenset[str]]:
        return [frozenset(self.labels[x] for x in B) for B in self.blocks]

    def block_multiset(self) -> Counter:
        return Counter(self.blocks)

    def packed(self) -> np.ndarray:
        return kernels.pack_sets(self.blocks, self.v)

    def incidence_array(self) -> np.ndarray:
        """Dense ``v x b`` 0/1 array."""
        A = np.zeros((self.v, self.b), dtype=np.uint8)
        for j, B in enumerate(self.blocks):
            A[list(B), j] = 1
        return A

    # design files
    def to_json(self, claim: dict | None = None) -> str:
        obj: dict = {"v": self.v, "labels": list(self.labels), "blocks": [list(B) for B in self.blocks]}
        if claim is not None:
            obj["claim"] = claim
        return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"

    def plain(self) -> str:
        """Block table with point labels, one block per line."""
        return "\n".join("{" + ",".join(self.labels[x] for x in B) + "}" for B in self.blocks)


def load_design(path: str | Path) -> tuple[IncidenceStructure, dict | None]:
    """Read a design file; returns the structure and its embedded claim (if any)."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise DesignFileError(f"cannot read design file {path}: {exc}") from exc
    return design_from_obj(obj)


def design_from_obj(obj) -> tuple[IncidenceStructure, dict | None]:
    if not isinstance(obj, dict) or "v" not in obj or "blocks" not in obj:
        raise DesignFileError("design file must be an object with 'v' and 'blocks'")
    v = obj["v"]
    blocks = obj["blocks"]
    if not isinstance(v, int) or v < 1 or not isinstance(blocks, list) or not blocks:
        raise DesignFileError("design file needs a positive 'v' and a non-empty 'blocks' list")
    for B in blocks:
        if not isinstance(B, list) or any(not isinstance(x, int) for x in B):
            raise DesignFileError(f"block {B!r} is not a list of integers")
        if any(a >= b for a, b in zip(B, B[1:])):
            raise DesignFileError(f"block {B} is not strictly increasing")
    labels = obj.get("labels")
    try:
        S = IncidenceStructure(v, tuple(tuple(B) for B in blocks), tuple(labels) if labels else None)
    except IndexOutOfRange as exc:
        raise DesignFileError(str(exc)) from exc
    return S, obj.get("claim")


def save_design(S: IncidenceStructure, path: str | Path, claim: dict | None = None) -> None:
    Path(path).write_text(S.to_json(claim))


# --------------------------------------------------------------------------
# builders and transforms


def development(group: Group, D: Iterable[int]) -> IncidenceStructure:
    """Blocks ``D + g`` for ``g`` in index order; points labelled by group element."""
    S = sorted(set(int(x) for x in D))
    if not 0 < len(S) < group.order:
        raise EmptyOrFullSubset(f"subset size {len(S)} must lie strictly between 0 and {group.order}")
    tab = group.add_table
    arr = np.array(S, dtype=np.int64)
    blocks = tuple(tuple(sorted(int(x) for x in tab[arr, g])) for g in range(group.order))
    labels = tuple(group.label(a) for a in group.elements())
    return IncidenceStructure(group.order, blocks, labels)


def dual(S: IncidenceStructure) -> IncidenceStructure:
    """Points become blocks: new block ``x`` lists the blocks through point ``x``."""
    through: list[list[int]] = [[] for _ in range(S.v)]
    for j, B in enumerate(S.blocks):
        for x in B:
            through[x].append(j)
    return IncidenceStructure(S.b, tuple(tuple(r) for r in through))


def contraction(S: IncidenceStructure, p: int) -> IncidenceStructure:
    if not 0 <= p < S.v:
        raise PointNotFound(f"point {p} not in 0..{S.v - 1}")
    relabel = {x: (x if x < p else x - 1) for x in range(S.v) if x != p}
    blocks = tuple(tuple(relabel[x] for x in B if x != p) for B in S.blocks if p in B)
    labels = tuple(l for i, l in enumerate(S.labels) if i != p)
    return IncidenceStructure(S.v - 1, blocks, labels)


def contraction_at_label(S: IncidenceStructure, label: str) -> IncidenceStructure:
    try:
        p = S.labels.index(str(label))
    except ValueError:
        raise PointNotFound(f"no point labelled {label!r}") from None
    return contraction(S, p)


def complement_blocks(S: IncidenceStructure) -> IncidenceStructure:
    full = set(range(S.v))
    blocks = []
    for B in S.blocks:
        comp = tuple(sorted(full - set(B)))
        if not comp:
            raise EmptyBlock(f"block {B} covers every point; its complement is empty")
        blocks.append(comp)
    return IncidenceStructure(S.v, tuple(blocks), S.labels)


def adjoin_point(S: IncidenceStructure, block_indices: Sequence[int], label: str = INF_LABEL) -> IncidenceStructure:
    """Append a new point (index ``v``) to each named block."""
    chosen = set()
    for j in block_indices:
        if not 0 <= j < S.b:
            raise IndexOutOfRange(f"block index {j} not in 0..{S.b - 1}")
        chosen.add(j)
    blocks = tuple(B + (S.v,) if j in chosen else B for j, B in enumerate(S.blocks))
    return IncidenceStructure(S.v + 1, blocks, S.labels + (label,))


def replication_and_intersection_numbers(S: IncidenceStructure) -> tuple[Counter, Counter]:
    """Multisets of point replications and of pairwise block intersection sizes."""
    A = S.incidence_array().astype(np.int64)
    reps = Counter(int(x) for x in A.sum(axis=1))
    G = A.T @ A
    iu = np.triu_indices(S.b, k=1)
    inter = Counter(int(x) for x in G[iu])
    return reps, inter


def pair_counts(S: IncidenceStructure) -> np.ndarray:
    """``v x v`` matrix of the number of blocks through each pair (diagonal: replications)."""
    A = S.incidence_array().astype(np.int64)
    return A @ A.T


# --------------------------------------------------------------------------
# level profiles


@dataclass(frozen=True)
class TDesign:
    lam: int

    def __str__(self) -> str:
        return f"TDesign({self.lam})"


@dataclass(frozen=True)
class TAdesign:
    lam: int

    @property
    def levels(self) -> tuple[int, int]:
        return (self.lam, self.lam + 1)

    def __str__(self) -> str:
        return f"TAdesign({self.lam})"


@dataclass(frozen=True)
class MultiLevelVerdict:
    levels: tuple[int, ...]

    def __str__(self) -> str:
        return f"MultiLevel({list(self.levels)})"


Verdict = TDesign | TAdesign | MultiLevelVerdict


@dataclass(frozen=True)
class LevelProfile:
    t: int
    v: int
    levels: dict[int, int]
    witnesses: dict[int, tuple[int, ...]]
    verdict: Verdict = field(compare=True)

    @property
    def level_values(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))

    @property
    def total(self) -> int:
        return sum(self.levels.values())


def verdict_for(levels: Iterable[int]) -> Verdict:
    ls = tuple(sorted(set(levels)))
    if len(ls) == 1:
        return TDesign(ls[0])
    if len(ls) == 2 and ls[1] == ls[0] + 1:
        return TAdesign(ls[0])
    return MultiLevelVerdict(ls)


def t_level_profile(
    S: IncidenceStructure, t: int, *, cap: int | None = None, workers: int = 1
) -> LevelProfile:
    """Count, for every ``t``-subset of points, the blocks containing it.

    The rank range of ``t``-subsets is split into ``workers`` contiguous
    chunks; histograms are summed and witnesses take the lowest rank, so
    the result does not depend on ``workers``.
    """
    if not S.blocks:
        raise DegenerateT("structure has no blocks")
    kmin = min(len(B) for B in S.blocks)
    if t < 1 or t >= kmin or t > S.v:
        raise DegenerateT(f"t = {t} must satisfy 1 <= t < min block size {kmin}")
    total = math.comb(S.v, t)
    cap = enumeration_cap() if cap is None else cap
    if total * S.b > cap:
        raise CapExceeded(f"C({S.v},{t}) * {S.b} = {total * S.b} containment tests exceed cap {cap}")
    words = S.packed()
    workers = max(1, min(int(workers), total))
    bounds = [total * i // workers for i in range(workers + 1)]
    spans = list(zip(bounds[:-1], bounds[1:]))
    if workers == 1:
        parts = [kernels.level_histogram(words, S.v, t, *spans[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda s: kernels.level_histogram(words, S.v, t, *s), spans))
    hist = np.sum([h for h, _ in parts], axis=0)
    firsts = np.stack([f for _, f in parts])
    levels = {int(c): int(n) for c, n in enumerate(hist) if n}
    witnesses = {}
    for c in levels:
        ranks = firsts[:, c]
        r = int(ranks[ranks >= 0].min())
        witnesses[c] = tuple(int(x) for x in kernels.unrank_combination(r, S.v, t))
    assert sum(levels.values()) == total
    return LevelProfile(t, S.v, levels, witnesses, verdict_for(levels))


# --------------------------------------------------------------------------
# packing and covering bounds


@dataclass(frozen=True)
class BoundResult:
    r: int
    d: Fraction
    applicable: bool
    bound: int | None


def _bound_args(v, k, lam) -> tuple[int, int, Fraction]:
    v, k = int(v), int(k)
    lam = Fraction(lam)
    if not 3 <= k < v:
        raise BadParameters(f"need 3 <= k < v, got v={v}, k={k}")
    if lam <= 0:
        raise BadParameters(f"lambda must be positive, got {lam}")
    return v, k, lam


def packing_bound(v: int, k: int, lam: int | Rational) -> BoundResult:
    """``lam(v-1) = r2(k-1) + d2``; if ``d2 < r2 - lam`` then ``b <= floor(v(r2-1)/(k-1))``."""
    v, k, lam = _bound_args(v, k, lam)
    total = lam * (v - 1)
    r2 = math.floor(total / (k - 1))
    d2 = total - r2 * (k - 1)
    ok = d2 < r2 - lam
    return BoundResult(r2, d2, ok, (v * (r2 - 1)) // (k - 1) if ok else None)


def covering_rank_bound(v: int, k: int, lam: int | Rational) -> BoundResult:
    """``lam(v-1) = r1(k-1) - d1``; if ``d1 < r1 - lam`` then ``rank(M Mᵀ) >= ceil(v(r1+1)/(k+1))``.

    ``lam`` may be a Fraction provided ``lam(v-1)`` is an integer.
    """
    v, k, lam = _bound_args(v, k, lam)
    total = lam * (v - 1)
    if total.denominator != 1:
        raise BadParameters(f"lambda*(v-1) = {total} is not an integer")
    r1 = math.ceil(total / (k - 1))
    d1 = r1 * (k - 1) - total
    ok = d1 < r1 - lam
    return BoundResult(r1, d1, ok, -((-v * (r1 + 1)) // (k + 1)) if ok else None)
