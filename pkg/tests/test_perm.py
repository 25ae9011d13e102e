import itertools
import math

import pytest

from conftest import closure, tuple_orbit_count
from sector_atlas import families as fam
from sector_atlas.perm import (GroupError, GuardExceeded, Permutation, RegularGroupError, all_tuples,
                               build_group, coset_action, double_cosets, frobenius_analysis, group_from_tuples,
                               is_abelian, is_elementary_abelian, is_normal, is_primitive, orbit, orbits,
                               perm_conjugacy_iso, primitivity_blocks, restrict_to_orbit, stabilizer_chain,
                               transitivity_profile, transversal, trivial_group)


def P(text, n):
    return Permutation.from_cycles(text, n)


def test_composition_applies_right_factor_first():
    a, b = P("(0 1)", 3), P("(1 2)", 3)
    assert (a * b)(1) == a(b(1)) == 2
    assert (a * b).images == (1, 2, 0)


def test_permutation_basics():
    p = P("(0 1 2)(3 4)", 6)
    assert p.order() == 6
    assert p.cycle_type() == (3, 2, 1)
    assert p.fixed_points() == [5]
    assert (p ** 6).is_identity()
    assert p * p.inverse() == Permutation.identity(6)
    assert str(p) == "(0 1 2)(3 4)"
    with pytest.raises(Exception):
        Permutation([0, 0, 1])


@pytest.mark.parametrize("gens,degree", [
    (["(0 1)", "(0 1 2 3)"], 4),
    (["(0 1 2)", "(2 3 4)"], 5),
    (["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"], 7),
    (["(0 1)(2 3)", "(0 2)(1 3)"], 4),
])
def test_order_matches_closure(gens, degree):
    perms = [P(g, degree) for g in gens]
    G = build_group(degree, perms)
    elems = closure([p.images for p in perms], degree)
    assert G.order == len(elems)
    assert set(G.element_tuples) == elems
    for t in itertools.permutations(range(degree)):
        assert G.contains(Permutation(t)) == (t in elems)


def test_symmetric_and_alternating_orders():
    for n in range(1, 8):
        assert fam.symmetric(n).order == math.factorial(n)
        if n > 1:
            assert fam.alternating(n).order == math.factorial(n) // 2


def test_orbits_and_transversal():
    G = build_group(6, [P("(0 1 2)", 6), P("(3 4)", 6)])
    assert orbits(G) == [[0, 1, 2], [3, 4], [5]]
    T = transversal(G, 0)
    assert sorted(T) == [0, 1, 2]
    assert all(T[y](0) == y for y in T)
    assert sorted(orbit(G, 4)) == [3, 4]


def test_stabilizer_chain_orders():
    S5 = fam.symmetric(5)
    assert [H.order for H in stabilizer_chain(S5, [0, 1, 2])] == [24, 6, 2]


@pytest.mark.parametrize("maker,k,sharp", [
    (lambda: fam.symmetric(4), 4, True),
    (lambda: fam.alternating(5), 3, True),
    (lambda: fam.alternating(6), 4, True),
    (lambda: fam.pgl2(5), 3, True),
    (lambda: fam.psl2(7), 2, False),
    (lambda: fam.hq(5), 2, True),
    (lambda: fam.pgl2(4), 3, True),
    (lambda: fam.psl2(5), 2, False),
])
def test_transitivity_profile_against_tuple_orbits(maker, k, sharp):
    G = maker()
    prof = transitivity_profile(G)
    assert prof.k == k and prof.sharp == sharp
    elems = G.element_tuples
    trans, free = tuple_orbit_count(elems, G.degree, k)
    assert trans and free == sharp
    if k < G.degree:
        assert not tuple_orbit_count(elems, G.degree, k + 1)[0]


def test_primitivity():
    D8 = build_group(4, [P("(0 1 2 3)", 4), P("(1 3)", 4)])
    assert not is_primitive(D8)
    assert primitivity_blocks(D8) == [[0, 2], [1, 3]]
    assert is_primitive(fam.symmetric(4))
    with pytest.raises(GroupError):
        primitivity_blocks(build_group(4, [P("(0 1)", 4)]))


def test_frobenius_s3_and_non_frobenius():
    S3 = fam.symmetric(3)
    fr = frobenius_analysis(S3)
    assert fr.kernel.order == 3 and fr.complement.order == 2
    assert is_normal(fr.kernel, S3)
    assert frobenius_analysis(fam.symmetric(4)) is None
    with pytest.raises(RegularGroupError):
        frobenius_analysis(build_group(3, [P("(0 1 2)", 3)]))


def test_double_cosets_against_brute_force():
    S4 = fam.symmetric(4)
    H = S4.stabilizer(0)
    K = build_group(4, [P("(0 1)(2 3)", 4)])
    dc = double_cosets(S4, H, K)
    elems = S4.element_tuples
    comp = lambda a, b: tuple(a[i] for i in b)
    cells = {frozenset(comp(comp(h, g), k) for h in H.element_tuples for k in K.element_tuples) for g in elems}
    assert sorted(dc.sizes) == sorted(len(c) for c in cells)
    assert sum(dc.sizes) == 24


def test_coset_action_and_restriction():
    S4 = fam.symmetric(4)
    Z4 = build_group(4, [P("(0 1 2 3)", 4)])
    A = coset_action(S4, Z4)
    assert A.degree == 6 and A.order == 24
    assert A.stabilizer(0).order == 4
    stab, pts = restrict_to_orbit(fam.mathieu(11).stabilizer(0), range(1, 11))
    assert pts == list(range(1, 11)) and stab.order == 720


def test_abelian_predicates():
    V4 = build_group(4, [P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
    Z4 = build_group(4, [P("(0 1 2 3)", 4)])
    assert is_abelian(V4) and is_elementary_abelian(V4)
    assert is_abelian(Z4) and not is_elementary_abelian(Z4)
    assert not is_abelian(fam.symmetric(3))


def test_conjugacy_iso_finds_conjugator():
    A = build_group(4, [P("(0 1)", 4), P("(2 3)", 4)])
    B = build_group(4, [P("(0 2)", 4), P("(1 3)", 4)])
    pi = perm_conjugacy_iso(A, B)
    assert pi is not None
    assert A.conjugate(pi).element_tuples and set(A.conjugate(pi).element_tuples) == set(B.element_tuples)
    C = build_group(4, [P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
    assert perm_conjugacy_iso(A, C) is None


def test_guards():
    with pytest.raises(GuardExceeded):
        perm_conjugacy_iso(fam.symmetric(17), fam.symmetric(17))
    with pytest.raises(GuardExceeded):
        fam.symmetric(12).element_tuples


def test_group_from_tuples_and_trivial():
    G = group_from_tuples(3, [(1, 2, 0)])
    assert G.order == 3
    assert trivial_group(5).order == 1
    assert sum(1 for _ in all_tuples(fam.symmetric(3), 2)) == 6
