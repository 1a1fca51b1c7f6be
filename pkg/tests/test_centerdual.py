import pytest

from chaincenter.centerdual import (AbelianGroupStructure, CenterError, abelian_invariants,
                                    abelianization_dual, central_character, dual_group,
                                    restriction_tmap)
from chaincenter.charmod import character_table_mod_p
from chaincenter.fusion import fusion_from_character_table
from chaincenter.groups import cyclic, dicyclic, direct_product, klein4, symmetric


def test_abelian_invariants_examples():
    V = klein4()
    assert abelian_invariants(V, range(V.order)).invariant_factors == (2, 2)
    C6 = cyclic(6)
    assert abelian_invariants(C6, range(6)).invariant_factors == (6,)
    assert abelian_invariants(C6, [0]).invariant_factors == ()


def test_abelian_invariants_rejects_non_subgroups():
    G = symmetric(3)
    with pytest.raises(CenterError):
        abelian_invariants(G, range(G.order))  # not abelian
    C6 = cyclic(6)
    with pytest.raises(CenterError):
        abelian_invariants(C6, [0, 1])  # not closed


def test_generators_have_the_right_orders():
    G = direct_product(dicyclic(2), cyclic(6))
    Z = abelian_invariants(G, G.center)
    assert Z.invariant_factors == (2, 6)
    assert [G.element_orders[g] for g in Z.generator_elements] == [2, 6]


def test_q8_central_characters(q8):
    G, T, F = q8
    Z = abelian_invariants(G, G.center)
    for i, d in enumerate(T.degrees):
        e = central_character(i, T, Z, G).exponents
        assert e == ((1,) if d == 2 else (0,))
    assert central_character(0, T, Z, G).is_trivial


def test_restriction_examples(s3, q8):
    G, T, F = s3
    R = restriction_tmap(G, T, F)
    assert R.is_tmap and R.is_surjective
    assert all(c.is_trivial for c in R.characters)
    G, T, F = q8
    R = restriction_tmap(G, T, F)
    assert len(set(R.characters)) == 2 == R.center.order


def test_restriction_abelian_is_bijective():
    G = direct_product(cyclic(2), cyclic(4))
    T = character_table_mod_p(G)
    F = fusion_from_character_table(T, G.classes, G.order)
    R = restriction_tmap(G, T, F)
    assert len(set(R.characters)) == G.order and R.is_tmap


def test_dual_group():
    assert len(dual_group(AbelianGroupStructure((2,), (1,)))) == 2
    chars = dual_group(AbelianGroupStructure((2, 2), (1, 2)))
    assert len(chars) == 4 and all((c + c).is_trivial for c in chars)
    assert len(dual_group(AbelianGroupStructure((), ()))) == 1


def test_abelianization_dual(s3, q8):
    assert abelianization_dual(s3[2]) == (2,)
    assert abelianization_dual(q8[2]) == (2, 2)
    G = direct_product(cyclic(3), cyclic(4))
    T = character_table_mod_p(G)
    assert abelianization_dual(fusion_from_character_table(T, G.classes, G.order)) == (12,)
