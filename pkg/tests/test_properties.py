from math import gcd

from hypothesis import HealthCheck, given, settings, strategies as st

from chaincenter.chaingroup import chain_classes_bl, chain_group_snf, compare_chain_groups
from chaincenter.charmod import verify_orthogonality
from chaincenter.fusion import FusionRing, dimension_violations
from chaincenter.groups import FiniteGroup, compose
from chaincenter.pipeline import analyze_group, run_verification


@st.composite
def permutation_groups(draw, max_degree=6):
    n = draw(st.integers(1, max_degree))
    gens = draw(st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))
    return FiniteGroup(n, [tuple(g) for g in gens])


slow = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@slow
@given(permutation_groups())
def test_class_equation(G):
    sizes = G.classes.sizes
    assert sum(sizes) == G.order
    assert all(G.order % s == 0 for s in sizes)


@slow
@given(permutation_groups())
def test_inverse_class_is_an_involution_fixing_identity(G):
    inv = G.classes.inverse_class
    assert all(inv[inv[c]] == c for c in range(len(inv)))
    assert inv[G.classes.class_of[0]] == G.classes.class_of[0]


@slow
@given(permutation_groups())
def test_center_is_union_of_singleton_classes(G):
    singletons = {c[0] for c in G.classes.classes if len(c) == 1}
    assert set(G.center) == singletons
    brute = {i for i, x in enumerate(G.elements)
             if all(compose(x, y) == compose(y, x) for y in G.elements)}
    assert brute == singletons


@slow
@given(permutation_groups(max_degree=5))
def test_pipeline_on_random_groups(G):
    A = analyze_group(G)
    assert verify_orthogonality(A.table, G.classes)
    assert dimension_violations(A.ring) == []
    assert run_verification(A, (2, 3, 4)).ok


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_group_ring_of_abelian_group(ns):
    """For the group ring of Z/n1 x ... the chain group is the group itself."""
    elems = [()]
    for n in ns:
        elems = [e + (k,) for e in elems for k in range(n)]
    pos = {e: i for i, e in enumerate(elems)}

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, ns))
    N = {(pos[a], pos[b]): {pos[add(a, b)]: 1} for a in elems for b in elems}
    dual = tuple(pos[tuple((-x) % n for x, n in zip(a, ns))] for a in elems)
    F = FusionRing(tuple(map(str, elems)), 0, dual, N)
    P = chain_group_snf(F)
    order = 1
    for f in P.invariant_factors:
        order *= f
    assert order == len(elems) and P.free_rank == 0
    # invariant factors divide each other and the exponent is the lcm of the n's
    f = P.invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    lcm = 1
    for n in ns:
        lcm = lcm * n // gcd(lcm, n)
    assert (f[-1] if f else 1) == lcm
    assert compare_chain_groups(P, chain_classes_bl(F))
