import pytest

from adesign.errors import FieldTooLarge, IndexOutOfRange, NoDecomposition, NonPrimeModulus, ReducibleModulus
from adesign.groupalg import (
    CyclicZ,
    FieldAdditive,
    Product2,
    cyclotomic_class,
    cyclotomic_number,
    cyclotomic_number_closed_form,
    default_modulus,
    factorize,
    field_context,
    find_primitive_element,
    gf,
    is_prime,
    make_group,
    odd_prime_powers,
    parse_group,
    prime_power,
    quartic_decomposition,
)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None
    assert odd_prime_powers(30) == [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]


def test_cyclic_group_tables():
    G = make_group(CyclicZ(7))
    assert G.add(5, 4) == 2 and G.neg(3) == 4 and G.sub(1, 3) == 5
    tab = G.add_table
    assert all(tab[a, b] == (a + b) % 7 for a in range(7) for b in range(7))


def test_gf9_default_modulus_and_primitive():
    assert default_modulus(3, 2) == (2, 1, 1)
    F = gf(9)
    assert F.primitive == 3
    assert F.multiplicative_order(F.primitive) == 8
    assert sorted(F.power(3, e) for e in range(8)) == list(range(1, 9))


def test_field_axioms_gf27():
    F = gf(27)
    for a in range(1, 27):
        assert F.mul(a, F.inv(a)) == 1
    for a, b, c in [(2, 5, 7), (11, 13, 26), (4, 4, 9)]:
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_prime_field_is_integers_mod_p():
    F = gf(13)
    assert F.mul(5, 8) == 40 % 13
    assert F.primitive == 2


def test_explicit_modulus():
    F = make_group(FieldAdditive(3, 2, (1, 0, 1)))
    assert F.mul(F.inv(4), 4) == 1
    with pytest.raises(ReducibleModulus):
        make_group(FieldAdditive(3, 2, (2, 0, 1)))


@pytest.mark.parametrize("q", [1, 6, 12])
def test_non_prime_powers_rejected(q):
    with pytest.raises(NonPrimeModulus):
        gf(q)


def test_field_cap():
    with pytest.raises(FieldTooLarge):
        gf(2**21)
    assert find_primitive_element(49) == gf(49).primitive


def test_parse_group():
    assert parse_group("z13").order == 13
    assert parse_group("gf9").order == 9
    Z = parse_group("z2xz7")
    assert Z.order == 14 and Z.label(Z.parse_element("1:3")) == "(1,3)"
    assert make_group(Product2(CyclicZ(7))).order == 14
    with pytest.raises(ValueError):
        parse_group("q7")
    with pytest.raises(IndexOutOfRange):
        Z.parse_element("14")


def test_cyclotomic_classes_partition():
    ctx = field_context(13, 4)
    classes = [cyclotomic_class(ctx, i) for i in range(4)]
    assert all(len(c) == 3 for c in classes)
    assert set().union(*classes) == set(range(1, 13))
    assert cyclotomic_class(ctx, 0) == {1, 3, 9}
    with pytest.raises(IndexOutOfRange):
        field_context(13, 5)


def test_order2_number_example_q11():
    ctx = field_context(11, 2)
    assert cyclotomic_number(ctx, 0, 1) == 3
    assert cyclotomic_number(ctx, 0, 0) == 2


def test_cyclotomic_numbers_sum_rows():
    # each class D_i has f elements; x+1 lands in some class unless x = -1
    for q, e in [(13, 2), (29, 4), (49, 4), (27, 2)]:
        ctx = field_context(q, e)
        f = (q - 1) // e
        rows = ctx.numbers.sum(axis=1)
        minus_one_class = ctx.class_of(gf(q).neg(1))
        for i in range(e):
            assert rows[i] == f - (1 if i == minus_one_class else 0)


@pytest.mark.parametrize("q,xy", [(13, (-3, -1)), (17, (1, 2)), (29, (5, -1)), (73, (-3, 4))])
def test_quartic_decomposition(q, xy):
    dec = quartic_decomposition(q)
    assert (dec.x, dec.y) == xy
    assert dec.x * dec.x + 4 * dec.y * dec.y == q and dec.x % 4 == 1


def test_quartic_decomposition_requires_1_mod_4():
    with pytest.raises(NoDecomposition):
        quartic_decomposition(11)


def test_closed_form_order2_3_mod_4():
    # the q = 3 mod 4 case: (0,1) = (q+1)/4, others (q-3)/4
    for q in (7, 11, 19, 27, 43):
        ctx = field_context(q, 2)
        assert cyclotomic_number(ctx, 0, 1) == (q + 1) // 4 == cyclotomic_number_closed_form(q, 2, 0, 1)
        for i, j in [(0, 0), (1, 0), (1, 1)]:
            assert cyclotomic_number(ctx, i, j) == (q - 3) // 4


def test_parse_group_spellings():
    assert parse_group("GF(9)").order == parse_group("gf9").order == 9
    assert parse_group("Z2xZ7").order == 14
    assert parse_group("z2xGF(9)").order == 18
    with pytest.raises(ValueError):
        parse_group("S3")
