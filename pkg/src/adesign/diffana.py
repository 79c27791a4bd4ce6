"""Difference-function analysis of subsets of finite abelian groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ElementNotInGroup, EmptyOrFullSubset, NotPlanarDifferenceSet, NotPrime
from .groupalg import Group, Product2, Z2Product, is_prime, make_group


@dataclass(frozen=True)
class DifferenceSet:
    v: int
    k: int
    lam: int

    def __str__(self) -> str:
        return f"DS({self.v},{self.k},{self.lam})"


@dataclass(frozen=True)
class AlmostDifferenceSet:
    v: int
    k: int
    lam: int
    t: int

    def __str__(self) -> str:
        return f"ADS({self.v},{self.k},{self.lam},{self.t})"


@dataclass(frozen=True)
class MultiLevel:
    levels: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.levels)

    def __str__(self) -> str:
        return f"MultiLevel(s={self.s}, levels={list(self.levels)})"


Classification = DifferenceSet | AlmostDifferenceSet | MultiLevel


@dataclass(frozen=True)
class DifferenceProfile:
    """Difference levels of a ``k``-subset and the classes ``T_i`` realising them."""

    v: int
    k: int
    levels: tuple[int, ...]
    classes: tuple[frozenset[int], ...]
    classification: Classification

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def basic_equation(self) -> tuple[int, int]:
        """Both sides of ``sum_i mu_i t_i = k(k-1)``."""
        return sum(m * len(c) for m, c in zip(self.levels, self.classes)), self.k * (self.k - 1)

    @property
    def is_ads(self) -> bool:
        return isinstance(self.classification, AlmostDifferenceSet)

    @property
    def is_ds(self) -> bool:
        return isinstance(self.classification, DifferenceSet)


def _as_subset(group: Group, D: Iterable[int]) -> list[int]:
    out = sorted(set(int(x) for x in D))
    for x in out:
        if not 0 <= x < group.order:
            raise ElementNotInGroup(f"{x} is not an element of a group of order {group.order}")
    return out


def difference_function(group: Group, D: Iterable[int], w: int) -> int:
    """``|D ∩ (D + w)|``."""
    S = _as_subset(group, D)
    if not 0 <= w < group.order:
        raise ElementNotInGroup(f"{w} is not an element of a group of order {group.order}")
    members = set(S)
    return sum(1 for x in S if group.add(x, w) in members)


def difference_counts(group: Group, D: Iterable[int]) -> np.ndarray:
    """``d[w] = |D ∩ (D + w)|`` for every ``w``, one membership bitmap per translate."""
    S = np.array(_as_subset(group, D), dtype=np.int64)
    mark = np.zeros(group.order, dtype=bool)
    mark[S] = True
    table = group.add_table
    # d(w) = #{x in D : x + w in D}
    return mark[table[S, :]].sum(axis=0).astype(np.int64)


def difference_profile(group: Group, D: Iterable[int]) -> DifferenceProfile:
    S = _as_subset(group, D)
    v, k = group.order, len(S)
    if not 0 < k < v:
        raise EmptyOrFullSubset(f"subset size {k} must lie strictly between 0 and {v}")
    d = difference_counts(group, S)
    nz = d[1:]
    levels = tuple(int(x) for x in np.unique(nz))
    classes = tuple(frozenset(int(w) + 1 for w in np.flatnonzero(nz == m)) for m in levels)
    if len(levels) == 1:
        cls: Classification = DifferenceSet(v, k, levels[0])
    elif len(levels) == 2 and levels[1] == levels[0] + 1:
        cls = AlmostDifferenceSet(v, k, levels[0], len(classes[0]))
    else:
        cls = MultiLevel(levels)
    prof = DifferenceProfile(v, k, levels, classes, cls)
    lhs, rhs = prof.basic_equation()
    assert lhs == rhs, f"difference count {lhs} != k(k-1) = {rhs}"
    return prof


def is_paley_type(group: Group, D: Iterable[int]) -> bool:
    S = set(_as_subset(group, D))
    return S == {group.neg(x) for x in S}


@dataclass(frozen=True)
class ConsecutiveResidues:
    p: int
    residues: int
    nonresidues: int
    counted_residues: int
    counted_nonresidues: int

    @property
    def agree(self) -> bool:
        return (self.residues, self.nonresidues) == (self.counted_residues, self.counted_nonresidues)


def consecutive_residue_counts(p: int) -> ConsecutiveResidues:
    """Consecutive quadratic residue / non-residue pairs mod ``p``, by formula and by count."""
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    sign = 1 if ((p - 1) // 2) % 2 == 0 else -1
    n_res = (p - 4 - sign) // 4
    n_non = (p - 2 + sign) // 4
    qr = {x * x % p for x in range(1, p)}
    res = sum(1 for x in range(1, p - 1) if x in qr and x + 1 in qr)
    non = sum(1 for x in range(1, p - 1) if x not in qr and x + 1 not in qr)
    return ConsecutiveResidues(p, n_res, n_non, res, non)


def _require_planar(group: Group, D: Sequence[int]) -> DifferenceProfile:
    prof = difference_profile(group, D)
    if not (prof.is_ds and prof.classification.lam == 1):
        raise NotPlanarDifferenceSet(f"{sorted(D)} is {prof.classification}, not a (v,k,1) difference set")
    return prof


def planar_extension_candidates(group: Group, D: Iterable[int]) -> dict[int, DifferenceProfile]:
    """Every ``a0`` outside ``D`` with ``2 a0`` not a sum of two distinct members of ``D``.

    Each candidate maps to the re-computed profile of ``D ∪ {a0}``; whether
    that profile is an almost difference set is left for the caller to read.
    """
    S = _as_subset(group, D)
    _require_planar(group, S)
    sums = {group.add(a, b) for i, a in enumerate(S) for b in S[i + 1 :]}
    members = set(S)
    out = {}
    for a in group.elements():
        if a in members or group.add(a, a) in sums:
            continue
        out[a] = difference_profile(group, S + [a])
    return out


@dataclass(frozen=True)
class Z2Lift:
    base: Group
    D: tuple[int, ...]
    adjoined: tuple[int, ...]
    group: Z2Product
    result: tuple[int, ...]
    covers_odd_coset: bool
    odd_coset_max_multiplicity: int
    exactly_one_in_D: bool
    no_double_is_sum: bool
    has_multiplicity_one: bool

    @property
    def hypotheses_hold(self) -> bool:
        return (
            self.covers_odd_coset
            and self.odd_coset_max_multiplicity <= 2
            and self.exactly_one_in_D
            and self.no_double_is_sum
            and self.has_multiplicity_one
        )

    def labels(self) -> list[str]:
        return [self.group.label(x) for x in self.result]


def lift_to_z2(group: Group, D: Iterable[int], adjoined: Sequence[int]) -> tuple[Z2Lift, DifferenceProfile]:
    """Embed ``D`` as ``{0} x D`` in ``Z_2 x G`` and add ``(1, a_i)`` for each adjoined ``a_i``.

    The hypotheses of the lifting construction are reported one by one; none
    is enforced.
    """
    S = _as_subset(group, D)
    _require_planar(group, S)
    adj = [int(a) for a in adjoined]
    for a in adj:
        if not 0 <= a < group.order:
            raise ElementNotInGroup(f"{a} is not an element of a group of order {group.order}")
    Z = make_group(Product2(group.spec))
    assert isinstance(Z, Z2Product)
    lifted = sorted({Z.join(0, x) for x in S} | {Z.join(1, a) for a in adj})
    prof = difference_profile(Z, lifted)
    d = difference_counts(Z, lifted)
    v = group.order
    odd = d[v:]
    members = set(S)
    no_double = True
    for i, a in enumerate(adj):
        others = [b for j, b in enumerate(adj) if j != i]
        pair_sums = {group.add(x, y) for j, x in enumerate(others) for y in others[j + 1 :] if x != y}
        if group.add(a, a) in pair_sums:
            no_double = False
    lift = Z2Lift(
        base=group,
        D=tuple(S),
        adjoined=tuple(adj),
        group=Z,
        result=tuple(lifted),
        covers_odd_coset=bool((odd >= 1).all()),
        odd_coset_max_multiplicity=int(odd.max()),
        exactly_one_in_D=sum(1 for a in adj if a in members) == 1,
        no_double_is_sum=no_double,
        has_multiplicity_one=bool((d[1:] == 1).any()),
    )
    return lift, prof
