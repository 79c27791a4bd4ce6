import math

import numpy as np
import pytest

from adesign import gf2codes as codes
from adesign.constructions import quadratic_residues, singer_planar_ds
from adesign.errors import BadParameters, DimensionTooLarge, ParityViolation
from adesign.groupalg import CyclicZ, gf, make_group
from adesign.incidence import IncidenceStructure, development


@pytest.fixture
def fano():
    G, D = singer_planar_ds(2)
    return development(G, D)


@pytest.fixture
def qr13():
    return development(gf(13), quadratic_residues(13))


def test_bitmatrix_roundtrip():
    rng = np.random.default_rng(1)
    for shape in [(1, 1), (3, 64), (5, 65), (7, 130)]:
        A = rng.integers(0, 2, shape).astype(np.uint8)
        M = codes.BitMatrix.from_dense(A)
        assert (M.to_dense() == A).all()
        assert (M.row_weights() == A.sum(axis=1)).all()
        assert (M.transpose().to_dense() == A.T).all()


def test_bitmatrix_validation():
    with pytest.raises(BadParameters):
        codes.BitMatrix(0, 3, np.zeros((0, 1), np.uint64))
    with pytest.raises(BadParameters):
        codes.BitMatrix(2, 3, np.zeros((2, 2), np.uint64))
    with pytest.raises(BadParameters):
        codes.BitMatrix(1, 3, np.array([[8]], np.uint64))


def test_incidence_matrix(fano, qr13):
    A = codes.incidence_matrix(fano)
    assert (A.rows, A.cols) == (7, 7)
    d = A.to_dense()
    assert (d.sum(axis=0) == 3).all() and (d.sum(axis=1) == 3).all()
    assert codes.is_symmetric_matrix(codes.incidence_matrix(qr13))
    one = codes.incidence_matrix(IncidenceStructure(1, ((0,),)))
    assert one.to_dense().tolist() == [[1]]


def test_ranks(fano, qr13):
    A = codes.incidence_matrix(fano)
    assert codes.rank_gf2(A) == 4
    assert codes.gram_rank_gf2(A) == 1
    assert codes.rank_gf2(codes.BitMatrix.identity(9)) == 9
    assert codes.gram_rank_gf2(codes.BitMatrix.from_dense(np.zeros((3, 4), np.uint8))) == 0
    M = codes.incidence_matrix(qr13)
    assert codes.rank_gf2(M) >= 12
    assert codes.rational_rank(M) == 13


def test_rational_rank_differs_from_gf2_rank():
    assert codes.rational_rank(np.array([[1, 1], [1, 1]])) == 1
    assert codes.rational_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 3  # rank 2 over GF(2)
    assert codes.rank_gf2(codes.BitMatrix.from_dense(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))) == 2


def test_gram_identity_entrywise(qr13):
    assert codes.gram_identity_holds(gf(13), quadratic_residues(13))
    assert codes.gram_identity_holds(make_group(CyclicZ(10)), [0, 1, 2, 5])


def test_self_orthogonality(fano, qr13):
    rep = codes.self_orthogonality_report(fano)
    assert rep.precondition and rep.extended and rep.self_orthogonal
    G = rep.generator.to_dense().astype(int)
    assert ((G @ G.T) % 2 == 0).all()
    rep = codes.self_orthogonality_report(qr13)
    assert not rep.precondition and not rep.self_orthogonal
    i, j = rep.counterexample
    A = codes.incidence_matrix(qr13).to_dense().astype(int)
    assert (A[i] @ A[j]) % 2 == 1
    rep = codes.self_orthogonality_report(IncidenceStructure(3, ((),)))
    assert rep.degenerate and rep.status == "degenerate"


def test_self_orthogonal_even_case():
    # k = 4 and lambda = 2 are both even, so no ones column is needed
    G, D = singer_planar_ds(2)
    comp = development(G, [x for x in range(7) if x not in D])
    rep = codes.self_orthogonality_report(comp)
    assert rep.precondition and not rep.extended and rep.self_orthogonal


def test_min_distance(fano):
    A = codes.incidence_matrix(fano)
    assert codes.min_distance(A) == 3
    assert codes.min_distance(A.with_ones_column()) == 4
    assert codes.min_distance(codes.BitMatrix.identity(3)) == 1
    assert codes.min_distance(codes.BitMatrix.from_dense(np.zeros((2, 3), np.uint8))) == 0
    d, word = codes.min_weight_word(A.with_ones_column(), workers=3)
    assert d == 4 and word.sum() == 4


def test_min_distance_cap():
    with pytest.raises(DimensionTooLarge):
        codes.min_distance(codes.BitMatrix.identity(12), dim_cap=10)


def test_min_distance_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(10):
        A = rng.integers(0, 2, (6, 11)).astype(np.uint8)
        M = codes.BitMatrix.from_dense(A)
        words = {tuple((np.array(c) @ A) % 2) for c in np.ndindex(*(2,) * 6)}
        best = min((sum(w) for w in words if any(w)), default=0)
        assert codes.min_distance(M) == best


def test_dual_distance_bound():
    b = codes.dual_distance_lower_bound(5, 1, 2, 11, 5)
    assert (b.linear, b.discriminant, b.denominator) == (7, 489, 4)
    assert b.exact is None
    assert b.ceiling == 8 == math.ceil((7 + math.sqrt(489)) / 4)
    lam, k = 2, 6
    d = codes.dual_distance_lower_bound(k, lam, lam, 13, 0)
    assert d.exact == (lam + k) / lam and d.ceiling == 4
    # perfect-square discriminant lands exactly on an integer
    e = codes.dual_distance_lower_bound(3, 1, 1, 7, 0)
    assert e.exact == 4 and e.ceiling == 4


def test_dual_distance_bound_errors():
    with pytest.raises(BadParameters):
        codes.dual_distance_lower_bound(5, 0, 0, 11, 5)
    with pytest.raises(BadParameters):
        codes.dual_distance_lower_bound(5, 3, 2, 11, 5)


def test_pair_level_counts():
    assert codes.pair_level_counts(13, 6) == (39, 39)
    assert codes.pair_level_counts(9, 0) == (0, 36)
    with pytest.raises(ParityViolation):
        codes.pair_level_counts(11, 5)
    with pytest.raises(BadParameters):
        codes.pair_level_counts(5, 5)


def test_rank_dominates_gram_rank():
    rng = np.random.default_rng(3)
    for _ in range(30):
        M = codes.BitMatrix.from_dense(rng.integers(0, 2, (rng.integers(1, 12), rng.integers(1, 70))))
        assert codes.rank_gf2(M) >= codes.gram_rank_gf2(M)
