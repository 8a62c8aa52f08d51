import itertools
from collections import Counter
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualgalois.permgroup import (
    NotTransitiveError,
    PermGroup,
    Permutation,
    classify,
    element_order_profile,
    group_order,
    is_regular,
)

G = PermGroup.from_cycles

D8_GENS = (["(1 2 3 4)", "(1 3)"], 4)
# quaternion group in its regular representation on 8 points
Q8_GENS = (["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 8)
# Z/3 x S3 on 6 points: a 3-cycle on {1,2,3} times S3 acting on {4,5,6}
Z3_S3_GENS = (["(1 2 3)", "(4 5 6)", "(4 5)"], 6)


def test_composition_convention():
    p = Permutation.from_cycles("(1 2)", 3)
    q = Permutation.from_cycles("(2 3)", 3)
    # p first, then q: 1 -> 2 -> 3
    assert (p * q).images[0] == 2
    assert str(p * q) == "(1 3 2)"


def test_cycle_notation_round_trip():
    p = Permutation.from_cycles("(1 4)(2 3 5)", 6)
    assert str(p) == "(1 4)(2 3 5)"
    assert p.cycle_type() == (3, 2, 1)
    assert p.order() == 6
    assert str(Permutation.identity(3)) == "()"
    with pytest.raises(ValueError):
        Permutation.from_cycles("(1 1)", 3)


@pytest.mark.parametrize(
    "gens, degree, order",
    [
        (["(1 2 3)"], 3, 3),
        (["(1 2)", "(1 2 3)"], 3, 6),
        (*D8_GENS, 8),
        (*Q8_GENS, 8),
        (*Z3_S3_GENS, 18),
        (["(1 2)", "(1 2 3 4 5 6 7 8)"], 8, 40320),
        (["(1 2)", "(1 2 3 4 5 6 7 8 9 10)"], 10, 3628800),
        (["(1 2 3 4 5)", "(2 5)(3 4)"], 5, 10),
    ],
)
def test_order(gens, degree, order):
    assert group_order(G(gens, degree)) == order


def _brute_profile(elements):
    return dict(sorted(Counter(g.order() for g in elements).items()))


def test_profiles():
    assert element_order_profile(G(["(1 2 3)"], 3)) == {1: 1, 3: 2}
    assert element_order_profile(G(*D8_GENS)) == {1: 1, 2: 5, 4: 2}
    # oracle: Z/3 x S3 as pairs, order = lcm of component orders
    s3 = [(1, 1), (2, 3), (3, 2)]  # (order, count)
    oracle = Counter()
    for a in (1, 3, 3):
        for o, cnt in s3:
            oracle[lcm(a, o)] += cnt
    assert element_order_profile(G(*Z3_S3_GENS)) == dict(sorted(oracle.items()))
    assert dict(oracle) == {1: 1, 2: 3, 3: 8, 6: 6}


def test_d8_vs_q8():
    d8, q8 = classify(G(*D8_GENS)), classify(G(*Q8_GENS))
    assert d8.name == "D_8" and q8.name == "Q_8"
    assert d8 != q8


@pytest.mark.parametrize(
    "gens, degree, name",
    [
        (["(1 2 3 4 5 6)"], 6, "cyclic(6)"),
        (["(1 2)", "(1 2 3)"], 3, "S(3)"),
        (["(1 2 3 4 5)", "(2 5)(3 4)"], 5, "D_10"),
        (*Z3_S3_GENS, "Z/3 x D_6"),
    ],
)
def test_classify(gens, degree, name):
    assert classify(G(gens, degree)).name == name


def test_dihedral_product_has_elementary_abelian_index_two():
    g = G(*Z3_S3_GENS)
    assert g.has_elementary_abelian_square(3)
    assert len(g.center()) == 3 and not g.is_abelian()


@pytest.mark.parametrize(
    "gens, degree, regular",
    [
        (["(1 2 3)"], 3, True),
        (["(1 2)", "(1 2 3)"], 3, False),
        (*Q8_GENS, True),
        (["(1 2 3 4)"], 4, True),
    ],
)
def test_regular(gens, degree, regular):
    assert is_regular(G(gens, degree)) is regular


def test_regular_requires_transitive():
    with pytest.raises(NotTransitiveError):
        is_regular(G(["(1 2)"], 3))


def _small_group_generators():
    perm = st.permutations(list(range(5))).map(Permutation)
    return st.lists(perm, min_size=1, max_size=3)


@settings(max_examples=80)
@given(_small_group_generators())
def test_schreier_sims_matches_closure(gens):
    g = PermGroup(gens, 5)
    elements = g.closure_elements()
    assert g.order == len(elements)
    assert all(e in g for e in elements)
    assert g.element_order_profile() == _brute_profile(elements)


@settings(max_examples=40)
@given(_small_group_generators(), st.permutations(list(range(5))))
def test_membership_matches_closure(gens, images):
    g = PermGroup(gens, 5)
    x = Permutation(images)
    assert (x in g) == (x in set(g.closure_elements()))


def test_membership_against_full_enumeration_s4():
    g = G(["(1 2 3)", "(1 2)(3 4)"], 4)  # A4
    evens = [Permutation(p) for p in itertools.permutations(range(4)) if _parity(p) == 0]
    assert g.order == 12 and all(e in g for e in evens)
    assert Permutation.from_cycles("(1 2)", 4) not in g


def _parity(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def test_to_json_uses_cycle_notation():
    js = G(*D8_GENS).to_json()
    assert js["order"] == 8 and js["degree"] == 4
    assert "(1 2 3 4)" in js["generators"]
