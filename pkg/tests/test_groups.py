from itertools import permutations

import pytest

from chaincenter.groups import (GroupError, OrderBoundExceeded, FiniteGroup, center, compose,
                                conjugacy_classes, cyclic, dicyclic, dihedral, direct_product,
                                enumerate_elements, exponent, from_cycles, group_from_spec,
                                inverse, klein4, make_named_group, sl23, spec_order, symmetric,
                                alternating)


def brute_classes(G):
    elems = G.elements
    seen, classes = set(), []
    for x in elems:
        if x in seen:
            continue
        cls = {compose(compose(g, x), inverse(g)) for g in elems}
        seen |= cls
        classes.append(cls)
    return classes


def brute_center(G):
    return {x for x in G.elements if all(compose(x, g) == compose(g, x) for g in G.elements)}


def test_named_orders():
    assert make_named_group("cyclic", [6]).order == 6
    assert make_named_group("dihedral", [4]).order == 8
    Q = make_named_group("dicyclic", [2])
    assert Q.order == 8
    assert sorted(Q.element_orders).count(2) == 1


def test_enumerate_examples():
    S3 = FiniteGroup(3, [from_cycles(3, (0, 1)), from_cycles(3, (0, 1, 2))])
    assert len(enumerate_elements(S3)) == 6
    assert set(S3.elements) == set(permutations(range(3)))
    assert len(enumerate_elements(dicyclic(2))) == 8
    assert direct_product(cyclic(2), cyclic(3)).order == 6


def test_identity_first_and_deterministic():
    G = sl23()
    assert G.elements[0] == tuple(range(G.degree))
    assert sl23().elements == G.elements


def test_s3_classes():
    P = symmetric(3).classes
    assert sorted(P.sizes) == [1, 2, 3]
    assert len(P.classes) == 3


def test_abelian_classes_are_singletons():
    for G in (cyclic(7), klein4(), direct_product(cyclic(2), cyclic(4))):
        assert len(G.classes.classes) == G.order


def test_q8_classes_center_exponent():
    Q = dicyclic(2)
    assert len(Q.classes.classes) == 5
    assert len(Q.center) == 2
    assert Q.exponent == 4


@pytest.mark.parametrize("G", [symmetric(3), symmetric(4), dicyclic(3), sl23(), alternating(4),
                               dihedral(6)])
def test_classes_match_brute_force(G):
    ours = sorted(sorted(G.elements[i] for i in c) for c in G.classes.classes)
    theirs = sorted(sorted(c) for c in brute_classes(G))
    assert ours == theirs
    assert {G.elements[i] for i in G.center} == brute_center(G)


def test_center_examples():
    assert len(center(symmetric(3))) == 1
    assert len(center(cyclic(5))) == 5


def test_exponent_examples():
    assert exponent(symmetric(3)) == 6
    assert exponent(cyclic(9)) == 9
    assert exponent(dicyclic(2)) == 4


def test_direct_product_examples():
    V = direct_product(cyclic(2), cyclic(2))
    assert V.order == 4 and V.exponent == 2
    assert direct_product(symmetric(3), cyclic(2)).order == 12
    assert len(direct_product(dicyclic(2), cyclic(3)).center) == 6


def test_family_orders_match_enumeration():
    for name, params, n in [("dihedral", [5], 10), ("dicyclic", [3], 12), ("symmetric", [4], 24),
                            ("alternating", [5], 60), ("klein4", [], 4), ("sl23", [], 24),
                            ("dihedral", [1], 2), ("dihedral", [2], 4), ("dicyclic", [1], 4)]:
        spec = {"type": "named", "name": name, "params": params}
        assert group_from_spec(spec).order == n == spec_order(spec)


def test_sl23_structure():
    G = sl23()
    assert len(G.classes.classes) == 7
    assert len(G.center) == 2


def test_order_bound_is_enforced():
    with pytest.raises(OrderBoundExceeded):
        symmetric(5, bound=100).order  # enumeration is lazy
    with pytest.raises(OrderBoundExceeded):
        make_named_group("symmetric", [5], order_bound=100)
    with pytest.raises(OrderBoundExceeded):
        group_from_spec({"type": "product", "factors": [{"type": "named", "name": "cyclic",
                                                         "params": [50]}] * 2}, order_bound=1000)


@pytest.mark.parametrize("spec", [
    {"type": "named", "name": "nope", "params": []},
    {"type": "named", "name": "cyclic", "params": [0]},
    {"type": "permutation", "degree": 3, "generators": [[0, 0, 1]]},
    {"type": "product", "factors": []},
    {"kind": "named"},
])
def test_bad_specs(spec):
    with pytest.raises(GroupError):
        group_from_spec(spec)


def test_power_classes_and_inverse_class():
    G = dicyclic(3)
    P = G.classes
    for c, rep in enumerate(P.representatives):
        assert P.class_of[G.inverses[rep]] == P.inverse_class[c]
    assert conjugacy_classes(G).classes == P.classes
