from itertools import combinations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from adesign import _accel, gf2codes as codes
from adesign.diffana import difference_profile
from adesign.groupalg import CyclicZ, make_group
from adesign.incidence import IncidenceStructure, development, dual, t_level_profile


@st.composite
def cyclic_subsets(draw):
    v = draw(st.integers(3, 30))
    D = draw(st.sets(st.integers(0, v - 1), min_size=2, max_size=v - 1))
    return v, sorted(D)


@st.composite
def structures(draw):
    v = draw(st.integers(4, 10))
    k = draw(st.integers(3, v))
    blocks = draw(st.lists(st.sets(st.integers(0, v - 1), min_size=k, max_size=k), min_size=1, max_size=12))
    return IncidenceStructure(v, tuple(tuple(B) for B in blocks))


@settings(max_examples=60, deadline=None)
@given(cyclic_subsets())
def test_basic_equation(vD):
    v, D = vD
    prof = difference_profile(make_group(CyclicZ(v)), D)
    lhs, rhs = prof.basic_equation()
    assert lhs == rhs
    assert sum(prof.sizes) == v - 1


@settings(max_examples=60, deadline=None)
@given(cyclic_subsets(), st.integers(0, 29))
def test_levels_invariant_under_translation(vD, shift):
    v, D = vD
    G = make_group(CyclicZ(v))
    a = difference_profile(G, D)
    b = difference_profile(G, [(x + shift) % v for x in D])
    assert a.levels == b.levels and a.classes == b.classes


@settings(max_examples=40, deadline=None)
@given(cyclic_subsets())
def test_development_pair_counts_match_differences(vD):
    v, D = vD
    G = make_group(CyclicZ(v))
    prof = difference_profile(G, D)
    if len(D) < 3:
        return
    lp = t_level_profile(development(G, D), 2)
    assert set(lp.levels) == set(prof.levels)


@settings(max_examples=40, deadline=None)
@given(structures(), st.integers(1, 4))
def test_level_profile_independent_of_workers(S, workers):
    kmin = min(len(B) for B in S.blocks)
    for t in range(1, min(kmin, 3)):
        assert t_level_profile(S, t) == t_level_profile(S, t, workers=workers)


@settings(max_examples=25, deadline=None)
@given(structures())
def test_level_profile_backend_parity(S):
    with _accel.use_numba(False):
        a = t_level_profile(S, 2)
    with _accel.use_numba(True):
        b = t_level_profile(S, 2)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(structures())
def test_level_profile_brute_force(S):
    counts = {}
    for pair in combinations(range(S.v), 2):
        c = sum(1 for B in S.blocks if set(pair) <= set(B))
        counts[c] = counts.get(c, 0) + 1
    assert t_level_profile(S, 2).levels == counts


@settings(max_examples=40, deadline=None)
@given(structures())
def test_dual_is_involution_on_matrices(S):
    if any(not any(p in B for B in S.blocks) for p in range(S.v)):
        return
    A = codes.incidence_matrix(S).to_dense()
    assert (codes.incidence_matrix(dual(dual(S))).to_dense() == A).all()
    assert codes.rank_gf2(codes.incidence_matrix(dual(S))) == codes.rank_gf2(codes.incidence_matrix(S))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=8, max_size=8), min_size=1, max_size=8))
def test_rank_bounds(rows):
    A = np.array(rows, dtype=np.uint8)
    M = codes.BitMatrix.from_dense(A)
    r = codes.rank_gf2(M)
    assert codes.gram_rank_gf2(M) <= r <= codes.rational_rank(A) <= min(A.shape)


@settings(max_examples=30, deadline=None)
@given(structures())
def test_self_orthogonal_codes_are_even(S):
    rep = codes.self_orthogonality_report(S)
    if not rep.self_orthogonal:
        return
    G = rep.generator
    assert all(w % 2 == 0 for w in G.row_weights())
    d = codes.min_distance(G)
    assert d == 0 or d % 2 == 0
