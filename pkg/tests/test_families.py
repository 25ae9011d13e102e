import itertools

import pytest

from conftest import closure, tuple_orbit_count
from sector_atlas import families as fam
from sector_atlas.families import ConstructionError, SpecError, build_from_spec, parse_group_spec
from sector_atlas.perm import Permutation, transitivity_profile


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_hq_is_sharply_2_transitive(q):
    G = fam.hq(q)
    assert G.order == q * (q - 1)
    assert tuple_orbit_count(G.element_tuples, q, 2) == (True, True)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_pgl2_is_sharply_3_transitive(q):
    G = fam.pgl2(q)
    assert G.order == q * (q * q - 1)
    assert tuple_orbit_count(G.element_tuples, q + 1, 3) == (True, True)


@pytest.mark.parametrize("q", [5, 7, 9])
def test_psl2_is_2_transitive_not_sharp(q):
    G = fam.psl2(q)
    assert G.order == q * (q * q - 1) // 2
    assert tuple_orbit_count(G.element_tuples, q + 1, 2) == (True, False)
    assert not tuple_orbit_count(G.element_tuples, q + 1, 3)[0]


def test_psl2_3_is_sharply_2_transitive():
    # PSL2(3) = A4 on 4 points has order 12 = 4 * 3
    G = fam.psl2(3)
    assert G.order == 12
    assert tuple_orbit_count(G.element_tuples, 4, 2) == (True, True)


def test_twisted_groups_at_9():
    S, M = fam.sq(9), fam.mq(9)
    assert S.order == 72 and M.order == 720
    assert tuple_orbit_count(S.element_tuples, 9, 2) == (True, True)
    assert tuple_orbit_count(M.element_tuples, 10, 3) == (True, True)
    # M(9) is not PGL2(9): PGL2(9) contains elements of order 10
    assert max(Permutation(t).order() for t in M.element_tuples) == 8
    assert 10 in {Permutation(t).order() for t in fam.pgl2(9).element_tuples}
    assert fam.tq(9).order == 16


def test_twisted_groups_need_even_power_of_odd_prime():
    for q in (4, 8, 27, 5):
        with pytest.raises(SpecError):
            fam.sq(q)


def test_mathieu():
    M11, M12 = fam.mathieu(11), fam.mathieu(12)
    assert M11.order == 7920 and M12.order == 95040
    assert (transitivity_profile(M11).k, transitivity_profile(M11).sharp) == (4, True)
    assert (transitivity_profile(M12).k, transitivity_profile(M12).sharp) == (5, True)
    with pytest.raises(SpecError):
        fam.mathieu(13)


def _gl2_3():
    mats = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3:
            mats.append(((a, b), (c, d)))
    return mats


def _mul(A, B, p):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) % p for j in range(2)) for i in range(2))


def _generated(gens, p):
    ident = ((1, 0), (0, 1))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(g, x, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _fixed_point_free(group, p):
    vecs = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    ident = ((1, 0), (0, 1))
    for M in group:
        if M == ident:
            continue
        for v in vecs:
            if tuple(sum(M[i][k] * v[k] for k in range(2)) % p for i in range(2)) == v:
                return False
    return True


def test_q8_in_gl2_3_by_brute_force():
    found = set()
    mats = _gl2_3()
    for A, B in itertools.combinations(mats, 2):
        G = frozenset(_generated([A, B], 3))
        if len(G) == 8 and _fixed_point_free(G, 3) and _mul(A, B, 3) != _mul(B, A, 3):
            found.add(G)
    assert frozenset(_generated(list(fam.Q8_GL2_3), 3)) in found


def test_sl2_3_in_gl2_5_acts_freely():
    G = _generated(list(fam.SL2_3_GL2_5), 5)
    assert len(G) == 24 and _fixed_point_free(G, 5)
    A = fam.affine_frobenius(5, 2, fam.SL2_3_GL2_5)
    assert A.order == 600


def test_affine_frobenius_rejects_non_free():
    with pytest.raises(ConstructionError):
        fam.affine_frobenius(5, 1, [[[4]]])
    with pytest.raises(SpecError):
        fam.affine_frobenius(6, 1, [[[1]]])


def test_z7_z3():
    G = fam.frobenius_z7_z3()
    assert G.order == 21
    assert len(closure([g.images for g in G.generators], 7)) == 21


@pytest.mark.parametrize("text,order", [
    ("sym:5", 120), ("alt:6", 360), ("h:7", 42), ("s:9", 72), ("t:9", 16), ("pgl2:5", 120),
    ("psl2:7", 168), ("m:9", 720), ("mathieu:11", 7920), ("affine:p=7,k=1,gens=[[[2]]]", 21),
])
def test_spec_strings(text, order):
    assert build_from_spec(text).order == order
    assert str(parse_group_spec(text)).replace(" ", "") == text


@pytest.mark.parametrize("bad", ["sym:1x", "sym", "foo:3", "h:6", "affine:p=7", "affine:p=7,k=1,gens=[[["])
def test_bad_specs(bad):
    with pytest.raises(SpecError):
        build_from_spec(bad)
