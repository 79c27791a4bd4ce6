"""Generators for the adesign families, each paired with the parameters it claims.

Claims are never trusted: :func:`verify` recomputes the level profile and
sets ``status`` to Confirmed, Refuted or (for constructions run outside
their hypotheses) Inapplicable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Sequence

from .diffana import difference_profile
from .errors import (
    BadIndexSet,
    BadModulusClass,
    BadN,
    BadParameters,
    NotSymmetricDesign,
    NoValidAssignment,
    UnsupportedOrder,
    WrongCount,
)
from .groupalg import (
    CyclicZ,
    Group,
    cyclotomic_class,
    field_context,
    gf,
    is_prime,
    make_group,
    prime_power,
    quartic_decomposition,
)
from .incidence import (
    INF_LABEL,
    IncidenceStructure,
    LevelProfile,
    TAdesign,
    TDesign,
    adjoin_point,
    complement_blocks,
    contraction,
    development,
    dual,
    packing_bound,
    replication_and_intersection_numbers,
    t_level_profile,
)

CONFIRMED = "Confirmed"
REFUTED = "Refuted"
INAPPLICABLE = "Inapplicable"
UNVERIFIED = "Unverified"


@dataclass(frozen=True)
class ClaimRecord:
    family: str
    t: int
    v: int
    k: int
    lam: int
    b: int
    kind: str = "adesign"  # or "design"
    status: str = UNVERIFIED
    computed_levels: dict[int, int] | None = None
    computed_verdict: str | None = None
    computed_v: int | None = None
    computed_k: int | None = None
    computed_b: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return f"{self.t}-({self.v},{self.k},{self.lam}) {self.kind}"

    def with_note(self, note: str) -> "ClaimRecord":
        return replace(self, notes=self.notes + (note,))

    def as_dict(self) -> dict:
        """The claimed parameters as embedded in design files."""
        return {"family": self.family, "t": self.t, "v": self.v, "k": self.k,
                "lambda": self.lam, "b": self.b, "kind": self.kind}

    def summary(self) -> str:
        lines = [f"claim  {self.family}: {self.label}, b={self.b}"]
        if self.computed_levels is not None:
            lv = ", ".join(f"{k}:{v}" for k, v in sorted(self.computed_levels.items()))
            lines.append(
                f"found  v={self.computed_v} k={self.computed_k} b={self.computed_b} "
                f"{self.t}-levels {{{lv}}} verdict {self.computed_verdict}"
            )
        lines.append(f"status {self.status}")
        lines.extend(f"note   {n}" for n in self.notes)
        return "\n".join(lines)


def claim_from_dict(d: dict) -> ClaimRecord:
    return ClaimRecord(
        family=str(d.get("family", "file")), t=int(d["t"]), v=int(d["v"]), k=int(d["k"]),
        lam=int(d["lambda"]), b=int(d.get("b", -1)), kind=str(d.get("kind", "adesign")),
    )


@dataclass(frozen=True)
class Construction:
    structure: IncidenceStructure
    claim: ClaimRecord


def verify(
    S: IncidenceStructure, claim: ClaimRecord, *, cap: int | None = None, workers: int = 1
) -> tuple[ClaimRecord, LevelProfile]:
    prof = t_level_profile(S, claim.t, cap=cap, workers=workers)
    k = S.uniform_k
    want = TDesign(claim.lam) if claim.kind == "design" else TAdesign(claim.lam)
    ok = (
        prof.verdict == want
        and S.v == claim.v
        and k == claim.k
        and (claim.b < 0 or S.b == claim.b)
    )
    status = claim.status if claim.status == INAPPLICABLE else (CONFIRMED if ok else REFUTED)
    rec = replace(
        claim,
        status=status,
        computed_levels=dict(prof.levels),
        computed_verdict=str(prof.verdict),
        computed_v=S.v,
        computed_k=k,
        computed_b=S.b,
    )
    return rec, prof


def verify_construction(c: Construction, **kw) -> tuple[ClaimRecord, LevelProfile]:
    return verify(c.structure, c.claim, **kw)


# --------------------------------------------------------------------------
# helpers


def _odd_prime_power(q: int, what: str) -> tuple[int, int]:
    pm = prime_power(q)
    if pm is None or pm[0] == 2:
        raise BadModulusClass(f"{what}: q = {q} is not an odd prime power")
    return pm


def _union_dev(group: Group, bases: Iterable[Iterable[int]]) -> IncidenceStructure:
    devs = [development(group, B) for B in bases]
    blocks = tuple(B for d in devs for B in d.blocks)
    return IncidenceStructure(group.order, blocks, devs[0].labels)


def quadratic_residues(p: int) -> list[int]:
    return sorted({x * x % p for x in range(1, p)})


# --------------------------------------------------------------------------
# quadratic-residue constructions


def qr_log_adesign(q: int) -> Construction:
    """Points ``Z_{q-1} ∪ {inf}``; blocks ``Dev^inf C0 ∪ Dev C1`` with ``C_i = log(D_i - 1)``."""
    _odd_prime_power(q, "qr-log")
    if q <= 5:
        raise BadModulusClass(f"qr-log needs q > 5, got {q}")
    F = gf(q)
    ctx = field_context(q, 2)
    log = F.log_table
    C = []
    for i in range(2):
        Di = cyclotomic_class(ctx, i)
        C.append(sorted(int(log[x]) for x in range(1, q) if F.add(x, 1) in Di))
    n = q - 1
    inf = n
    blocks = [tuple(sorted({(c + g) % n for c in C[0]} | {inf})) for g in range(n)]
    blocks += [tuple(sorted((c + g) % n for c in C[1])) for g in range(n)]
    labels = tuple(str(i) for i in range(n)) + (INF_LABEL,)
    S = IncidenceStructure(q, tuple(blocks), labels)
    claim = ClaimRecord("qr-log", 2, q, (q - 1) // 2, (q - 5) // 2, 2 * q - 2)
    if q == 11:
        claim = claim.with_note(
            "label check: the q=11 worked example is titled 2-(10,5,3) but its point set "
            "Z_10 ∪ {inf} has 11 points"
        )
    return Construction(S, claim)


def _require_p_1_mod_4(p: int, what: str) -> None:
    if not is_prime(p) or p % 4 != 1 or p <= 5:
        raise BadModulusClass(f"{what}: need a prime p = 1 mod 4 with p > 5, got {p}")


def qr_restriction_adesign(p: int) -> Construction:
    """Traces ``b ∩ D`` of the translates ``b != D`` of the residues, topped up with ``inf``."""
    _require_p_1_mod_4(p, "qr-restrict")
    D = quadratic_residues(p)
    Dset = set(D)
    index = {x: i for i, x in enumerate(D)}
    inf = len(D)
    small = (p - 5) // 4
    blocks = []
    for g in range(1, p):
        trace = sorted(index[(x + g) % p] for x in D if (x + g) % p in Dset)
        if len(trace) == small:
            trace.append(inf)
        blocks.append(tuple(trace))
    labels = tuple(str(x) for x in D) + (INF_LABEL,)
    S = IncidenceStructure(len(D) + 1, tuple(blocks), labels)
    claim = ClaimRecord("qr-restrict", 2, (p + 1) // 2, (p - 1) // 4, (p - 9) // 4, p - 1)
    return Construction(S, claim)


def qr_restriction_complement_adesign(p: int) -> Construction:
    """Complements (within the ``(p+1)/2`` points) of the ``qr-restrict`` blocks."""
    _require_p_1_mod_4(p, "qr-restrict-complement")
    base = qr_restriction_adesign(p).structure
    S = complement_blocks(base)
    claim = ClaimRecord("qr-restrict-complement", 2, (p + 1) // 2, (p + 3) // 4, (p - 5) // 4, p - 1)
    reps, _ = replication_and_intersection_numbers(S)
    A = S.incidence_array().sum(axis=1)
    claim = claim.with_note(
        f"replication of inf = {int(A[-1])}, of residue points = "
        f"{sorted(set(int(x) for x in A[:-1]))}"
    )
    return Construction(S, claim)


def complement_bound_report(rec: ClaimRecord) -> list[str]:
    """Packing-bound arithmetic for both the claimed and the computed lower level."""
    out = []
    lams = [("claimed", rec.lam)]
    if rec.computed_levels:
        lams.append(("computed", min(rec.computed_levels)))
    for tag, lam in lams:
        pb = packing_bound(rec.v, rec.k, lam + 1)
        out.append(
            f"packing bound with {tag} lambda={lam} ((v,k,lambda+1)=({rec.v},{rec.k},{lam + 1})): "
            f"r2={pb.r}, d2={pb.d}, applicable={pb.applicable}, bound={pb.bound}, b={rec.b}"
        )
    return out


# --------------------------------------------------------------------------
# quartic and mixed families (almost difference families)


def _quartic_classes(q: int) -> list[frozenset[int]]:
    ctx = field_context(q, 4)
    return [cyclotomic_class(ctx, i) for i in range(4)]


def quartic_union_family(q: int) -> Construction:
    _odd_prime_power(q, "quartic-odd")
    if q % 4 != 1 or ((q - 1) // 4) % 2 == 0:
        raise BadModulusClass(f"quartic-odd needs q = 4f+1 with f odd, got {q}")
    F = gf(q)
    D = _quartic_classes(q)
    bases = [D[0] | D[1], D[0] | D[2], D[0] | D[3]]
    S = _union_dev(F, bases)
    claim = ClaimRecord("quartic-odd", 2, q, (q - 1) // 2, (3 * q - 11) // 4, 3 * q)
    return Construction(S, claim)


def quartic_even_family(q: int) -> Construction:
    _odd_prime_power(q, "quartic-even")
    if q % 4 != 1 or ((q - 1) // 4) % 2 == 1:
        raise BadModulusClass(f"quartic-even needs q = 4f+1 with f even, got {q}")
    if q < 17:
        raise BadParameters(f"quartic-even blocks have size (q-1)/4 = {(q - 1) // 4}; need at least 3")
    F = gf(q)
    dec = quartic_decomposition(q)
    D = _quartic_classes(q)
    S = _union_dev(F, [D[0], D[2]])
    claim = ClaimRecord("quartic-even", 2, q, (q - 1) // 4, (q - 7 - 2 * dec.x) // 8, 2 * q)
    claim = claim.with_note(f"q = x^2 + 4y^2 with x = {dec.x}, y = {dec.y}")
    if dec.x not in (1, -3):
        claim = replace(claim, status=INAPPLICABLE).with_note(
            f"x = {dec.x} is neither 1 nor -3; emitted without the adesign guarantee"
        )
    elif dec.x == -3:
        # the two pair counts are (q-1)/8 and (q-9)/8, so the lower level is (q-9)/8 here
        claim = claim.with_note(f"with x = -3 the lower pair count is (q-9)/8 = {(q - 9) // 8}")
    return Construction(S, claim)


def default_index_set(l: int) -> tuple[int, ...]:
    """Lexicographically least mixed-parity subset of ``0..l`` of size ``(l+1)/2``."""
    m = (l + 1) // 2
    for I in combinations(range(l + 1), m):
        if {i % 2 for i in I} == {0, 1}:
            return I
    raise BadIndexSet(f"no mixed-parity index set of size {m} in 0..{l}")


def mixed_union_family(q: int, case: int, I: Sequence[int] | None = None, i: int = 0) -> Construction:
    """``Dev D_0^2 ∪ Dev D_1^2 ∪ Dev C`` for one of three almost-difference-set choices of ``C``."""
    p, m = _odd_prime_power(q, "mixed")
    F = gf(q)
    if case == 1:
        r = math.isqrt(q - 4) if q >= 4 else -1
        if q % 8 != 5 or r * r != q - 4:
            raise BadModulusClass(f"mixed case 1 needs q = 5 mod 8 and q = s^2 + 4, got {q}")
        s = r if r % 4 == 1 else -r
        D = _quartic_classes(q)
        C = D[i % 4] | D[(i + 1) % 4]
        note = f"s = {s}, C = D_{i % 4}^4 ∪ D_{(i + 1) % 4}^4"
    elif case == 2:
        l = math.isqrt(q)
        tt = math.isqrt(l - 2) if l >= 2 else -1
        if l * l != q or prime_power(l) is None or l % 8 != 3 or tt * tt != l - 2:
            raise BadModulusClass(f"mixed case 2 needs q = l^2, l = t^2 + 2 = 3 mod 8, got {q}")
        ctx = field_context(q, 8)
        C = frozenset().union(*(cyclotomic_class(ctx, j) for j in (0, 1, 2, 5)))
        note = f"l = {l}, C = D_0^8 ∪ D_1^8 ∪ D_2^8 ∪ D_5^8"
    elif case == 3:
        l = math.isqrt(q)
        if l * l != q or prime_power(l) is None or l % 2 == 0:
            raise BadModulusClass(f"mixed case 3 needs q = l^2 with l an odd prime power, got {q}")
        if I is None:
            I = default_index_set(l)
        I = tuple(sorted(set(int(j) for j in I)))
        if len(I) != (l + 1) // 2 or any(not 0 <= j <= l for j in I):
            raise BadIndexSet(f"I must be a ({(l + 1) // 2})-subset of 0..{l}, got {list(I)}")
        if {j % 2 for j in I} != {0, 1}:
            raise BadIndexSet(f"I = {list(I)} must contain both even and odd indices")
        ctx = field_context(q, l + 1)
        C = frozenset().union(*(cyclotomic_class(ctx, j) for j in I))
        note = f"l = {l}, I = {list(I)}"
    else:
        raise BadModulusClass(f"mixed case must be 1, 2 or 3, got {case}")
    ctx2 = field_context(q, 2)
    S = _union_dev(F, [cyclotomic_class(ctx2, 0), cyclotomic_class(ctx2, 1), C])
    claim = ClaimRecord(f"mixed-{case}", 2, q, (q - 1) // 2, (3 * q - 11) // 4, 3 * q).with_note(note)
    return Construction(S, claim)


def qr_pair_design(q: int) -> Construction:
    _odd_prime_power(q, "qr-pair-design")
    ctx = field_context(q, 2)
    S = _union_dev(gf(q), [cyclotomic_class(ctx, 0), cyclotomic_class(ctx, 1)])
    claim = ClaimRecord("qr-pair-design", 2, q, (q - 1) // 2, (q - 3) // 2, 2 * q, kind="design")
    return Construction(S, claim)


# --------------------------------------------------------------------------
# duals of modified symmetric designs


def _symmetric_design_params(S: IncidenceStructure, cap: int | None = None) -> tuple[int, int, int]:
    k = S.uniform_k
    if not S.symmetric or k is None or k < 3:
        raise NotSymmetricDesign("need b = v and a constant block size of at least 3")
    prof = t_level_profile(S, 2, cap=cap)
    if not isinstance(prof.verdict, TDesign):
        raise NotSymmetricDesign(f"2-levels {prof.level_values} are not a single value")
    return S.v, k, prof.verdict.lam


def augment_dual_adesign(S: IncidenceStructure, block_indices: Sequence[int]) -> Construction:
    """Adjoin ``inf`` to ``k`` blocks of a symmetric design and dualise."""
    v, k, lam = _symmetric_design_params(S)
    idx = list(block_indices)
    if len(idx) != k or len(set(idx)) != k:
        raise WrongCount(f"need {k} distinct block indices, got {idx}")
    D = dual(adjoin_point(S, idx))
    return Construction(D, ClaimRecord("augment-dual", 2, v, k, lam, v + 1))


def exchange_assignment(S: IncidenceStructure, b: int) -> list[int]:
    """First (in block-index order) valid choice of partner blocks for the points of block ``b``.

    Partner ``c_i`` of the ``i``-th point ``x_i`` must avoid ``x_i``, and no two
    partners may each contain the other's point.
    """
    target = S.blocks[b]
    sets = [set(B) for B in S.blocks]
    k = len(target)
    chosen: list[int] = []
    used = {b}

    def extend(i: int) -> bool:
        if i == k:
            return True
        xi = target[i]
        for c in range(S.b):
            if c in used or xi in sets[c]:
                continue
            if any(target[j] in sets[c] and xi in sets[chosen[j]] for j in range(i)):
                continue
            chosen.append(c)
            used.add(c)
            if extend(i + 1):
                return True
            chosen.pop()
            used.discard(c)
        return False

    if not extend(0):
        raise NoValidAssignment(f"no valid partner blocks for block {b} = {target}")
    return chosen


def exchange_dual_adesign(S: IncidenceStructure, b: int) -> Construction:
    """Move each point of block ``b`` into a partner block, drop ``b`` and dualise."""
    v, k, lam = _symmetric_design_params(S)
    if not 0 <= b < S.b:
        raise WrongCount(f"block index {b} outside 0..{S.b - 1}")
    partners = exchange_assignment(S, b)
    target = S.blocks[b]
    extra = {c: target[i] for i, c in enumerate(partners)}
    blocks = tuple(
        tuple(sorted(B + (extra[j],))) if j in extra else B for j, B in enumerate(S.blocks) if j != b
    )
    D = dual(IncidenceStructure(S.v, blocks, S.labels))
    claim = ClaimRecord("exchange-dual", 2, v - 1, k, lam, v).with_note(
        f"stated parameters are 2-({v},{k},{lam}); the dual has one point per remaining block, "
        f"so v - 1 = {v - 1} points"
    )
    claim = claim.with_note(f"partner blocks {partners} for the points {list(target)}")
    return Construction(D, claim)


# --------------------------------------------------------------------------
# 3-adesigns


def qr_3adesign(q: int) -> Construction:
    _odd_prime_power(q, "qr-3adesign")
    if q % 4 != 3 or q <= 7:
        raise BadModulusClass(f"qr-3adesign needs q = 3 mod 4 with q > 7, got {q}")
    ctx = field_context(q, 2)
    S = _union_dev(gf(q), [cyclotomic_class(ctx, 0), cyclotomic_class(ctx, 1)])
    return Construction(S, ClaimRecord("qr-3adesign", 3, q, (q - 1) // 2, (q - 7) // 4, 2 * q))


def qr_3adesign_contraction(q: int, point: int = 1) -> Construction:
    """Contraction of the ``qr-3adesign`` structure at ``point``."""
    base = qr_3adesign(q).structure
    S = contraction(base, point)
    claim = ClaimRecord("qr-3adesign-contraction", 2, q - 1, (q - 3) // 2, (q - 7) // 4, q - 1)
    return Construction(S, claim)


def contraction_as_development(q: int, point: int = 1) -> tuple[IncidenceStructure, tuple[int, ...]]:
    """Relabel the contraction at ``point`` by ``x -> log(x - point)`` in ``Z_{q-1}``.

    The union of both developments is invariant under every affine map
    ``x -> a x + b``; those fixing ``point`` act as a regular cyclic group on
    the other points, so the relabelled contraction is ``Dev`` of one block.
    Returns the relabelled structure and a base block.
    """
    F = gf(q)
    S = qr_3adesign_contraction(q, point).structure
    log = F.log_table
    names = [x for x in range(q) if x != point]
    new = {i: int(log[F.sub(x, point)]) for i, x in enumerate(names)}
    blocks = tuple(tuple(sorted(new[x] for x in B)) for B in S.blocks)
    labels = [""] * (q - 1)
    for i, x in enumerate(names):
        labels[new[i]] = S.labels[i]
    T = IncidenceStructure(q - 1, blocks, tuple(labels))
    Z = make_group(CyclicZ(q - 1))
    bases = development_bases(T, Z)
    if not bases:
        raise NotSymmetricDesign(f"relabelled contraction at {point} is not a development in Z_{q - 1}")
    return T, T.blocks[bases[0]]


def pair_union_3adesign(n: int) -> Construction:
    """Blocks ``{a-i, a+i, a-j, a+j}`` for every centre ``a`` and ``1 <= i < j <= (n-1)/2``."""
    if n < 7 or n % 2 == 0 or n % 3 == 0:
        raise BadN(f"need n >= 7 odd and prime to 3, got {n}")
    h = (n - 1) // 2
    blocks = []
    for a in range(n):
        for i, j in combinations(range(1, h + 1), 2):
            blocks.append(tuple(sorted({(a - i) % n, (a + i) % n, (a - j) % n, (a + j) % n})))
    S = IncidenceStructure(n, tuple(blocks))
    return Construction(S, ClaimRecord("pair-union-3adesign", 3, n, 4, 2, n * math.comb(h, 2)))


# --------------------------------------------------------------------------
# planar difference sets

_SINGER = {2: (7, (1, 2, 4)), 3: (13, (0, 1, 5, 11)), 4: (21, (0, 3, 13, 15, 20))}


def singer_planar_ds(q: int) -> tuple[Group, tuple[int, ...]]:
    if q not in _SINGER:
        raise UnsupportedOrder(f"Singer sets are tabulated only for q in {sorted(_SINGER)}")
    v, D = _SINGER[q]
    G = make_group(CyclicZ(v))
    prof = difference_profile(G, D)
    assert prof.is_ds and prof.classification.lam == 1, prof.classification
    return G, D


def development_bases(S: IncidenceStructure, group: Group) -> list[int]:
    """Indices of blocks whose development (points read as group indices) equals ``S``."""
    if group.order != S.v:
        return []
    target = S.block_multiset()
    out = []
    for j, B in enumerate(S.blocks):
        if development(group, B).block_multiset() == target:
            out.append(j)
    return out
