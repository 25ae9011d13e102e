import pytest

from sector_atlas import families as fam
from sector_atlas.gfield import is_prime
from sector_atlas.perm import Permutation, build_group, orbits
from sector_atlas.reptheory import (character_table, class_fusion, conjugacy_classes, dixon_prime, exponent,
                                    permutation_character_norm, restriction_matrix)


def P(text, n):
    return Permutation.from_cycles(text, n)


def q8():
    # left-regular Q8 on 8 points: i -> (0 2 1 3)(4 6 5 7), j -> (0 4 1 5)(2 7 3 6)
    return build_group(8, [P("(0 2 1 3)(4 6 5 7)", 8), P("(0 4 1 5)(2 7 3 6)", 8)], name="Q8")


def d8():
    return build_group(4, [P("(0 1 2 3)", 4), P("(1 3)", 4)], name="D8")


CASES = [
    (lambda: fam.symmetric(3), [1, 1, 2]),
    (lambda: fam.symmetric(4), [1, 1, 2, 3, 3]),
    (lambda: fam.symmetric(5), [1, 1, 4, 4, 5, 5, 6]),
    (lambda: fam.alternating(5), [1, 3, 3, 4, 5]),
    (q8, [1, 1, 1, 1, 2]),
    (d8, [1, 1, 1, 1, 2]),
    (lambda: fam.psl2(7), [1, 3, 3, 6, 7, 8]),
    (lambda: fam.frobenius_z7_z3(), [1, 1, 1, 3, 3]),
]


def brute_classes(G):
    elems = G.element_tuples
    comp = lambda a, b: tuple(a[i] for i in b)
    inv = lambda a: tuple(sorted(range(len(a)), key=lambda i: a[i]))
    seen, out = set(), []
    for x in elems:
        if x in seen:
            continue
        cls = {comp(comp(g, x), inv(g)) for g in elems}
        seen |= cls
        out.append(cls)
    return out


@pytest.mark.parametrize("make,degrees", CASES)
def test_degrees_and_class_count(make, degrees):
    G = make()
    t = character_table(G)
    assert sorted(t.degrees) == degrees
    assert sum(d * d for d in degrees) == G.order
    cl = conjugacy_classes(G)
    assert sorted(cl.sizes) == sorted(len(c) for c in brute_classes(G))


@pytest.mark.parametrize("make,degrees", CASES)
def test_orthogonality_mod_p(make, degrees):
    G = make()
    t = character_table(G)
    for a in range(t.size):
        for b in range(t.size):
            assert t.inner(t.values[a], t.values[b]) == (1 if a == b else 0)
    # column orthogonality: sum_chi chi(g) conj(chi(h)) = |C_G(g)| delta
    P = t.prime
    cl = t.classes
    for i in range(t.size):
        for j in range(t.size):
            s = sum(row[i] * row[cl.inverse[j]] for row in t.values) % P
            assert s == ((G.order // cl.sizes[i]) % P if i == j else 0)


def test_dixon_prime():
    G = fam.symmetric(4)
    P = dixon_prime(G)
    assert is_prime(P) and P % exponent(G) == 1 and P > 2 * G.order
    assert exponent(G) == 12


def test_characters_are_class_functions():
    G = fam.alternating(5)
    t = character_table(G)
    for row in range(t.size):
        for g in G.element_tuples[:20]:
            for h in G.generators:
                conj = h * Permutation(g) * h.inverse()
                assert t.value(row, g) == t.value(row, conj)


def test_dual_rows():
    t = character_table(fam.frobenius_z7_z3())
    duals = [t.dual_row(r) for r in range(t.size)]
    assert sorted(duals) == list(range(t.size))
    assert sum(1 for r, d in enumerate(duals) if r != d) == 4  # two nontrivial linear chars and the two 3s
    t8 = character_table(q8())
    assert all(t8.dual_row(r) == r for r in range(t8.size))


def test_restriction_matrix_s4_to_s3():
    S4 = fam.symmetric(4)
    S3 = S4.stabilizer(3)
    rm = restriction_matrix(S4, S3)
    for i, row in enumerate(rm.entries):
        assert sum(m * d for m, d in zip(row, rm.h_degrees)) == rm.g_degrees[i]
    # Frobenius reciprocity: induced trivial has degree 4 = 1 + 3
    triv_h = rm.h_degrees.index(1)
    ind = [row[triv_h] for row in rm.entries]
    assert sum(m * d for m, d in zip(ind, rm.g_degrees)) == 4
    assert class_fusion(S3, S4)[0] == 0


@pytest.mark.parametrize("make", [lambda: fam.symmetric(5), lambda: fam.psl2(7), lambda: fam.mq(9), d8])
def test_permutation_character_norm_counts_pair_orbits(make):
    G = make()
    pairs = [(x, y) for x in range(G.degree) for y in range(G.degree)]
    seen, count = set(), 0
    for pr in pairs:
        if pr in seen:
            continue
        count += 1
        seen |= {(g[pr[0]], g[pr[1]]) for g in G.element_tuples}
    assert permutation_character_norm(G) == count


def test_q8_generators_give_quaternions():
    G = q8()
    orders = sorted(Permutation(t).order() for t in G.element_tuples)
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
