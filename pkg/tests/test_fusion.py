import itertools
import textwrap

import numpy as np
import pytest

from sector_atlas import families as fam
from sector_atlas.fusion import (FixtureError, FusionError, FusionRing, build_ring, check_equation,
                                 decompose_product, diagonal_subring_map, find_subrings, fixture_names,
                                 hecke_ring, load_fixture, parse_fixture, rep_ring)
from sector_atlas.graphkit import principal_graph
from sector_atlas.perm import GuardExceeded, Permutation, build_group

HECKE_SPECS = ["sym:3", "sym:4", "sym:5", "alt:5", "alt:6", "psl2:7", "m:9", "s:9", "h:8",
               "affine:p=7,k=1,gens=[[[2]]]", "mathieu:11"]


@pytest.fixture(scope="module")
def rings():
    return {s: hecke_ring(fam.build_from_spec(s)) for s in HECKE_SPECS}


def q8():
    return build_group(8, [Permutation.from_cycles("(0 2 1 3)(4 6 5 7)", 8),
                           Permutation.from_cycles("(0 4 1 5)(2 7 3 6)", 8)], name="Q8")


def by_dim(R, d):
    return [b for b in R.basis if R.dim(b) == d]


def test_rep_ring_s3():
    R = rep_ring(fam.symmetric(3))
    two = by_dim(R, 2)[0]
    sgn = [b for b in by_dim(R, 1) if b != R.basis[R.unit]][0]
    assert decompose_product(R, [two, two]) == {R.basis[R.unit]: 1, sgn: 1, two: 1}
    assert decompose_product(R, [R.basis[R.unit], two]) == {two: 1}


def test_rep_ring_q8():
    R = rep_ring(q8())
    two = by_dim(R, 2)[0]
    assert decompose_product(R, [two, two]) == {b: 1 for b in by_dim(R, 1)}


def test_rep_ring_duals_z7_z3():
    R = rep_ring(fam.frobenius_z7_z3())
    assert sum(1 for i, d in enumerate(R.dual) if i != d) == 4
    R.verify()


def brute_axioms(R: FusionRing):
    """The five based-ring axioms with explicit loops, independent of verify()."""
    n, N, d, du, u = len(R), R.N, R.dims, R.dual, R.unit
    for x, y in itertools.product(range(n), repeat=2):
        assert N[x, u, y] == N[u, x, y] == (x == y)
        assert N[x, y, u] == (y == du[x])
        assert sum(int(N[x, y, z]) * d[z] for z in range(n)) == d[x] * d[y]
        for z in range(n):
            assert N[x, y, z] == N[du[x], z, y] == N[z, du[y], x] == N[du[y], du[x], du[z]]
    left = np.einsum("xyw,wzv->xyzv", N, N)
    right = np.einsum("yzw,xwv->xyzv", N, N)
    assert np.array_equal(left, right)


@pytest.mark.parametrize("spec", HECKE_SPECS)
def test_hecke_axioms_and_global_dimension(rings, spec):
    R = rings[spec]
    G = fam.build_from_spec(spec)
    brute_axioms(R)
    assert R.global_dimension() == sum(d * d for d in R.dims) == G.order


@pytest.mark.parametrize("spec", HECKE_SPECS)
def test_hecke_matches_principal_graph(rings, spec):
    """Multiplying by the 2-step neighbours of the unit walks the principal graph twice."""
    R = rings[spec]
    P = principal_graph(fam.build_from_spec(spec))
    assert [v.label for v in P.even] == R.basis
    assert [v.dim.coef for v in P.even] == R.dims
    A = P.matrix() @ P.matrix().T
    w = A[P.star]
    for x in range(len(R)):
        assert np.array_equal(w @ R.N[x], A[x])


@pytest.mark.parametrize("spec", HECKE_SPECS)
def test_diagonal_block_is_rep_ring_of_stabilizer(rings, spec):
    R = rings[spec]
    G = fam.build_from_spec(spec)
    assert diagonal_subring_map(R, rep_ring(G.stabilizer(0))) is not None


def test_hecke_dims_m11(rings):
    R = rings["mathieu:11"]
    diag = sorted(R.dims[k] for k, s in enumerate(R.sectors) if s.diagonal)
    off = sorted(R.dims[k] for k, s in enumerate(R.sectors) if not s.diagonal)
    assert diag == [1, 1, 9, 9, 10, 10, 10, 16]
    assert off == [10, 10, 10, 10, 20, 80]
    assert R.global_dimension() == 7920


def test_hecke_s3_by_hand(rings):
    R = rings["sym:3"]
    assert R.basis == ["e0.0", "e0.1", "e1.0"] and R.dims == [1, 1, 2]
    assert decompose_product(R, ["e1.0", "e1.0"]) == {"e0.0": 1, "e0.1": 1, "e1.0": 1}
    assert decompose_product(R, ["e0.1", "e1.0"]) == {"e1.0": 1}


def test_hecke_z7_z3_alpha_rho(rings):
    R = rings["affine:p=7,k=1,gens=[[[2]]]"]
    ones, threes = by_dim(R, 1), by_dim(R, 3)
    assert len(ones) == 3 and len(threes) == 2
    for a, r in itertools.product(ones, threes):
        assert decompose_product(R, [a, r]) == {r: 1}


def test_decompose_product_m11_examples(rings):
    R = rings["mathieu:11"]
    fx = load_fixture("M-series")
    m = check_equation(R, fx).mapping
    inv = {v: k for k, v in m.items()}
    got = {inv[k]: v for k, v in decompose_product(R, [m["lam"], m["lam"]]).items()}
    assert got == {"id": 1, "lam": 1, "pi": 1, "mu": 1}
    got = {inv[k]: v for k, v in decompose_product(R, [m["pi"], m["pi"]]).items()}
    assert got == {"id": 1, "pi": 1, "pichi": 1, "zeta": 2, "xi1": 1, "eta1": 1, "eta2": 1}
    assert decompose_product(R, []) == {"e0.0": 1}
    with pytest.raises(FusionError):
        decompose_product(R, ["nope"])


def brute_subrings(R):
    n = len(R)
    out = set()
    others = [k for k in range(n) if k != R.unit]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            S = set(combo) | {R.unit}
            if any(R.dual[x] not in S for x in S):
                continue
            if all(set(np.nonzero(R.N[x, y])[0]) <= S for x in S for y in S):
                out.add(frozenset(R.basis[k] for k in S))
    return out


@pytest.mark.parametrize("spec", ["sym:5", "alt:6", "m:9", "psl2:7", "affine:p=7,k=1,gens=[[[2]]]"])
def test_find_subrings_matches_brute_force(rings, spec):
    R = rings[spec]
    found = find_subrings(R)
    assert {frozenset(s) for s in found} == brute_subrings(R)
    assert found[0] == [R.basis[R.unit]] and found[-1] == R.basis


def test_subring_guard():
    R = hecke_ring(fam.mathieu(12))
    assert len(R) == 18
    with pytest.raises(GuardExceeded):
        find_subrings(FusionRing(["x"] * 0 + [f"b{i}" for i in range(21)], [1] * 21, list(range(21)),
                                 np.zeros((21, 21, 21), dtype=np.int64)))


def test_hecke_guards():
    with pytest.raises(GuardExceeded):
        hecke_ring(fam.symmetric(17))
    with pytest.raises(Exception):
        hecke_ring(build_group(4, [Permutation.from_cycles("(0 1)", 4)]))


def test_ring_json():
    R = hecke_ring(fam.symmetric(3))
    data = R.to_json()
    assert data["basis"] == R.basis and data["unit"] == "e0.0"
    assert R.dumps() == hecke_ring(fam.symmetric(3)).dumps()


# fixtures -----------------------------------------------------------------

@pytest.mark.parametrize("name", fixture_names())
def test_packaged_series(name):
    fx = load_fixture(name)
    rep = check_equation(build_ring(fx), fx)
    assert rep.ok, "\n".join(rep.lines())


def test_w_series_reports_zero_multiplicity():
    fx = load_fixture("W-series")
    rep = check_equation(build_ring(fx), fx)
    assert rep.expect_fail and all(not r.passed for r in rep.results)
    assert "report <pi pi, nu> = 0" in rep.notes


S3_HEADER = """format sector-atlas/fixtures/1
ring hecke sym:3
label id 1 unit
label s 1 selfdual
label r 2 selfdual
"""


def test_false_equation_reports_nearest():
    fx = parse_fixture(S3_HEADER + "T1: r r = id + 2 r\nT2: s r = r\n", "bad")
    rep = check_equation(build_ring(fx), fx)
    assert not rep.ok
    t1 = rep.results[0]
    assert not t1.passed and "nearest" in t1.detail
    assert rep.results[1].passed


def test_expect_fail_semantics():
    fx = parse_fixture(S3_HEADER + "expect fail\nT1: r r = id + 2 r\n", "refuted")
    assert check_equation(build_ring(fx), fx).ok
    fx = parse_fixture(S3_HEADER + "expect fail\nT1: r r = id + s + r\n", "true")
    assert not check_equation(build_ring(fx), fx).ok


def test_forall_substitutes_under_duals():
    fx = parse_fixture(S3_HEADER + "T1: forall X in s, r: <X ~X, id> = 1\n", "forall")
    assert check_equation(build_ring(fx), fx).ok
    assert len(fx.equations[0].relations) == 2


def test_relation_kinds():
    body = "\n".join([
        "T1: r r = id + s + r = r r",
        "T2: r != s",
        "T3: <r r, s> = 1; <r r, r> != 0",
        "T4: <r r, s> = <r s, r>",
        "T5: {s r, s s} = {id, r}",
        "T6: subring id, s",
        "T7: 2 r = r + r",
    ])
    fx = parse_fixture(S3_HEADER + body + "\n", "kinds")
    rep = check_equation(build_ring(fx), fx)
    assert rep.ok, rep.lines()
    assert rep.mapping == {"id": "e0.0", "s": "e0.1", "r": "e1.0"}


@pytest.mark.parametrize("bad", [
    "format other/1\n",
    "ring hecke sym:3\nlabel a x\n",
    "ring foo sym:3\n",
    "ring hecke sym:3\nlabel id 1 unit\nT1: id = q\n",
    "ring hecke sym:3\nlabel id 1 unit\nT1: forall X: id = id\n",
    "ring hecke sym:3\nlabel id 1 unit\nT1: id id\n",
])
def test_fixture_parse_errors(bad):
    with pytest.raises(FixtureError):
        parse_fixture(bad, "bad")


def test_load_fixture_by_path(tmp_path):
    p = tmp_path / "mine.fix"
    p.write_text(S3_HEADER + "T1: s s = id\n")
    fx = load_fixture(str(p))
    assert fx.series == "mine" and check_equation(build_ring(fx), fx).ok
    with pytest.raises(FixtureError):
        load_fixture("no-such-series")
