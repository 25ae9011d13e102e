"""The reproducibility suite: eleven criteria, each with a time budget.

Every criterion is a function returning ``(passed, detail)``.  The runner
times it and marks it failed when it overruns its budget.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

from . import families as fam
from .fusion import (build_ring, check_equation, find_subrings, fixture_names, hecke_ring,
                     load_fixture, rep_ring)
from .graphkit import (Dim, dual_principal_graph, gbmn, graphs_isomorphic, load_figure, pf_check,
                       principal_graph, stabilizer_pair_dual, tilde)
from .perm import (Permutation, build_group, coset_action, double_cosets, frobenius_analysis,
                   is_elementary_abelian, is_normal, is_primitive, perm_conjugacy_iso,
                   restrict_to_orbit, transitivity_profile)
from .reptheory import character_table


@dataclass(frozen=True)
class Criterion:
    number: int
    key: str
    title: str
    categories: tuple[str, ...]
    budget: float
    run: Callable[[], tuple[bool, str]]


@dataclass
class CriterionResult:
    number: int
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.number:2d} {self.key}: {self.title} "
                f"({self.seconds:.2f}s / {self.budget:g}s) {self.detail}")


# --------------------------------------------------------------------------
# 1. group zoo

ZOO_QS = (3, 4, 5, 7, 8, 9)


def _zoo() -> tuple[bool, str]:
    want = {"h": (2, True), "s": (2, True), "t": None, "pgl2": (3, True), "m": (3, True), "psl2": (2, False)}
    built = {"h": fam.hq, "s": fam.sq, "t": fam.tq, "pgl2": fam.pgl2, "psl2": fam.psl2, "m": fam.mq}
    bad, count = [], 0
    for kind, ctor in built.items():
        for q in ZOO_QS:
            try:
                G = ctor(q)
            except fam.SpecError:
                continue  # the family is not defined at this q
            count += 1
            prof = transitivity_profile(G)
            if want[kind] is not None and (prof.paper_k, prof.sharp) != want[kind]:
                bad.append(f"{kind}:{q} is {prof.describe()}")
    return not bad, f"{count} groups; " + ("; ".join(bad) if bad else "all profiles match")


# --------------------------------------------------------------------------
# 2. Mathieu groups

def _mathieu() -> tuple[bool, str]:
    notes = []
    M11 = fam.mathieu(11)
    p11 = transitivity_profile(M11)
    ok = M11.order == 7920 and (p11.k, p11.sharp) == (4, True)
    notes.append(f"M11 order {M11.order}, {p11.describe()}")
    stab, _ = restrict_to_orbit(M11.stabilizer(0), range(1, 11))
    conj = perm_conjugacy_iso(stab, fam.mq(9))
    ok &= conj is not None
    notes.append("point stabilizer conjugate to M(9)" if conj else "point stabilizer NOT conjugate to M(9)")
    M12 = fam.mathieu(12)
    p12 = transitivity_profile(M12)
    ok &= M12.order == 95040 and (p12.k, p12.sharp) == (5, True)
    notes.append(f"M12 order {M12.order}, {p12.describe()}")
    return ok, "; ".join(notes)


# --------------------------------------------------------------------------
# 3. Frobenius structure

def frobenius_cases() -> list[tuple[str, object]]:
    # H(2) = S2 acts regularly and has no Frobenius complement
    qs = [q for q in range(3, 65) if _is_prime_power(q)]
    cases = [(f"H({q})", lambda q=q: fam.hq(q)) for q in qs]
    cases.append(("S(9)", lambda: fam.sq(9)))
    cases.append(("Z7:Z3", fam.frobenius_z7_z3))
    cases.append(("SL2(3) on Z5^2", lambda: fam.affine_frobenius(5, 2, fam.SL2_3_GL2_5, name="Z5^2:SL2(3)")))
    return cases


def _is_prime_power(q: int) -> bool:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def check_frobenius(G) -> list[str]:
    """Problems found with the Frobenius structure of G; empty when all is well."""
    data = frobenius_analysis(G)
    if data is None:
        return ["not a Frobenius group"]
    K, H = data.kernel, data.complement
    bad = []
    if not is_normal(K, G):
        bad.append("kernel not normal")
    if K.order != G.degree:
        bad.append(f"kernel order {K.order} != degree {G.degree}")
    if is_primitive(G) and not is_elementary_abelian(K):
        bad.append("primitive but kernel not elementary abelian")
    sizes = double_cosets(G, H, H).sizes
    if sorted(set(sizes)) != sorted({H.order, H.order ** 2} if len(sizes) > 1 else {H.order}):
        bad.append(f"double coset sizes {sorted(set(sizes))}")
    if sizes.count(H.order) != 1:
        bad.append("more than one double coset of size |H|")
    return bad


def _frobenius() -> tuple[bool, str]:
    bad = []
    cases = frobenius_cases()
    for name, make in cases:
        bad += [f"{name}: {b}" for b in check_frobenius(make())]
    return not bad, f"{len(cases)} groups; " + ("; ".join(bad) if bad else "kernel, complement and double cosets as stated")


# --------------------------------------------------------------------------
# 4. graph family closed forms

FAMILY_PARAMS: tuple[tuple[tuple[int, ...], int], ...] = (
    ((1,), 1), ((1,), 2), ((1,), 3), ((1,), 4), ((1,), 7),
    ((1, 1), 1), ((1, 1), 2), ((1, 1), 5),
    ((1, 1, 1), 1), ((1, 1, 1), 2), ((1, 1, 1), 3),
    ((1, 1, 1, 1, 2), 1), ((1, 1, 1, 1, 2), 2),
    ((1, 2), 1), ((1, 2), 3), ((1, 3), 2), ((1, 1, 2), 1), ((1, 1, 2), 4),
    ((1, 1, 1, 1), 6), ((1, 2, 2), 1), ((1, 1, 3), 2), ((1, 2, 3), 1),
    ((1, 1, 1, 3), 2), ((1, 4), 1), ((1, 1, 1, 1, 1, 1), 3),
)


def _family() -> tuple[bool, str]:
    bad = []
    for ms, n in FAMILY_PARAMS:
        G = gbmn(ms, n)
        m = sum(x * x for x in ms)
        rep = pf_check(G, 1 + m * n)
        dims_ok = [v.dim for v in G.even] == [Dim(x) for x in ms] + [Dim(m)] * n
        if not (rep.exact_ok and dims_ok):
            bad.append(f"{ms},{n}")
    return not bad, f"{len(FAMILY_PARAMS)} parameter sets; " + (", ".join(bad) if bad else "exact PF identity holds")


# --------------------------------------------------------------------------
# 5. figures

def figure_cases() -> list[tuple[str, Callable]]:
    def m10_m9():
        M10 = fam.mq(9)
        return dual_principal_graph(M10, M10.stabilizer(0))

    return [
        ("Fig2", lambda: principal_graph(fam.sq(9))),
        ("Fig3", lambda: principal_graph(fam.frobenius_z7_z3())),
        ("Fig4", lambda: principal_graph(fam.alternating(5))),
        ("Fig5", lambda: principal_graph(fam.mq(9))),
        ("Fig6", m10_m9),
        ("FigS5", lambda: principal_graph(fam.symmetric(5))),
        ("FigA6", lambda: principal_graph(fam.alternating(6))),
        ("Fig9", lambda: principal_graph(fam.mathieu(11))),
        ("Fig9d", lambda: stabilizer_pair_dual(fam.mathieu(11))),
    ]


def _figures() -> tuple[bool, str]:
    bad = [name for name, make in figure_cases() if graphs_isomorphic(make(), load_figure(name)) is None]
    return not bad, "9 figures; " + (("mismatch: " + ", ".join(bad)) if bad else "all isomorphic")


# --------------------------------------------------------------------------
# 6. tilde identity

TILDE_GROUPS = (("S5", "sym:5"), ("A6", "alt:6"), ("PGL2(5)", "pgl2:5"), ("PGL2(7)", "pgl2:7"),
                ("PSL2(7)", "psl2:7"), ("M(9)", "m:9"), ("M11", "mathieu:11"))


def _tilde() -> tuple[bool, str]:
    bad = []
    for name, spec in TILDE_GROUPS:
        G = fam.build_from_spec(spec)
        if graphs_isomorphic(principal_graph(G), tilde(stabilizer_pair_dual(G))) is None:
            bad.append(name)
    if graphs_isomorphic(tilde(gbmn((1,), 2)), gbmn((1, 1, 1), 1)) is None:
        bad.append("G_(1),2")
    return not bad, f"{len(TILDE_GROUPS) + 1} identities; " + (", ".join(bad) if bad else "all hold")


# --------------------------------------------------------------------------
# 7. character degrees

def _characters() -> tuple[bool, str]:
    M10 = fam.mathieu(11).stabilizer(0)
    M9 = M10.stabilizer(1)
    d10 = sorted(character_table(M10).degrees)
    d9 = sorted(character_table(M9).degrees)
    # the legs of the S(9) figure carry m_i and its hub carries m = sum m_i^2
    fig2 = sorted(int(v.dim.coef) for v in load_figure("Fig2").even)
    ok = d10 == [1, 1, 9, 9, 10, 10, 10, 16] and d9 == [1, 1, 1, 1, 2, 8]
    ok &= fig2 == d9 and d9[-1] == sum(x * x for x in d9[:-1])
    return ok, f"M10 {d10}; M9 {d9}; figure dims {fig2}"


# --------------------------------------------------------------------------
# 8. fusion equations

REPORT_RE = re.compile(r"<pi pi, nu> = (\d+)")


def _equations() -> tuple[bool, str]:
    parts, ok = [], True
    for name in fixture_names():
        fx = load_fixture(name)
        rep = check_equation(build_ring(fx), fx)
        ok &= rep.ok
        parts.append(rep.summary_line())
        if name == "W-series":
            values = [int(m.group(1)) for note in rep.notes if (m := REPORT_RE.search(note))]
            ok &= values == [0]
            parts.append(f"<pi pi, nu> = {values[0] if values else '?'}")
    return ok, "; ".join(parts)


# --------------------------------------------------------------------------
# 9. ring axioms

AXIOM_GROUPS = ("affine:p=7,k=1,gens=[[[2]]]", "s:9", "m:9", "sym:4", "sym:5", "alt:5", "alt:6",
                "psl2:7", "pgl2:5", "h:8", "mathieu:11")


def _axioms() -> tuple[bool, str]:
    bad, count = [], 0
    for spec in AXIOM_GROUPS:
        G = fam.build_from_spec(spec)
        for R in (hecke_ring(G), rep_ring(G)):
            count += 1
            try:
                R.verify()
            except ArithmeticError as exc:
                bad.append(f"{R.name}: {exc}")
        H = hecke_ring(G)
        if H.global_dimension() != G.order:
            bad.append(f"{spec}: sum d^2 = {H.global_dimension()} != {G.order}")
    return not bad, f"{count} rings; " + ("; ".join(bad) if bad else "axioms hold, sum d^2 = |G| throughout")


# --------------------------------------------------------------------------
# 10. subring discovery

SUBRING_TARGETS = (("sigma-series", ("C0", "C1")), ("A-series", ("C1",)), ("M-series", ("C1",)))


def _subrings() -> tuple[bool, str]:
    parts, ok = [], True
    for series, tags in SUBRING_TARGETS:
        fx = load_fixture(series)
        R = build_ring(fx)
        rep = check_equation(R, fx)
        found = {frozenset(s) for s in find_subrings(R)}
        for tag in tags:
            eq = next(e for e in fx.equations if e.tag == tag)
            names = eq.relations[0].labels
            if rep.mapping is None:
                ok = False
                parts.append(f"{series} {tag}: no labeling")
                continue
            target = frozenset(rep.mapping[n] for n in names)
            hit = target in found
            ok &= hit
            parts.append(f"{series} {tag} {'found' if hit else 'MISSING'} ({len(target)} labels)")
    return ok, "; ".join(parts)


# --------------------------------------------------------------------------
# 11. the S4 coincidence

def _coincidence() -> tuple[bool, str]:
    S4 = fam.symmetric(4)
    z4 = build_group(4, [Permutation.from_cycles("(0 1 2 3)", 4)], name="Z4")
    klein = build_group(4, [Permutation.from_cycles("(0 1)", 4), Permutation.from_cycles("(2 3)", 4)], name="Z2xZ2")
    g1 = principal_graph(coset_action(S4, z4))
    g2 = principal_graph(coset_action(S4, klein))
    same = graphs_isomorphic(g1, g2) is not None
    D8 = build_group(4, [Permutation.from_cycles("(0 1 2 3)", 4), Permutation.from_cycles("(1 3)", 4)], name="D8")
    z2 = build_group(4, [Permutation.from_cycles("(1 3)", 4)], name="Z2")
    d6 = graphs_isomorphic(principal_graph(coset_action(D8, z2)), load_figure("D6_1")) is not None
    return same and d6, (f"S4>Z4 vs S4>Z2xZ2 {'isomorphic' if same else 'differ'}; "
                         f"D8>Z2 {'is' if d6 else 'is not'} D6^(1)")


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "zoo", "group zoo self-checks and transitivity", ("groups",), 5, _zoo),
    Criterion(2, "mathieu", "Mathieu groups", ("groups", "mathieu"), 30, _mathieu),
    Criterion(3, "frobenius", "Frobenius structure", ("frobenius",), 10, _frobenius),
    Criterion(4, "family", "graph family closed forms", ("frobenius", "family"), 1, _family),
    Criterion(5, "figures", "figure reproduction", ("figures",), 60, _figures),
    Criterion(6, "tilde", "tilde identity", ("figures", "tilde"), 30, _tilde),
    Criterion(7, "characters", "character degrees", ("characters",), 5, _characters),
    Criterion(8, "equations", "fusion equations", ("fusion", "equations"), 600, _equations),
    Criterion(9, "axioms", "ring axioms and global dimension", ("fusion", "axioms"), 60, _axioms),
    Criterion(10, "subrings", "subring discovery", ("fusion", "subrings"), 60, _subrings),
    Criterion(11, "coincidence", "S4 coincidence and D8", ("figures", "coincidence"), 5, _coincidence),
)


def select(filter_name: str | None = None) -> list[Criterion]:
    """Criteria matching a category, key or number; all of them when no filter is given."""
    if not filter_name:
        return list(CRITERIA)
    out = [c for c in CRITERIA
           if filter_name in c.categories or filter_name == c.key or filter_name == str(c.number)]
    if not out:
        raise KeyError(f"no acceptance criterion matches {filter_name!r}")
    return out


def run_criterion(c: Criterion | int) -> CriterionResult:
    if isinstance(c, int):
        c = CRITERIA[c - 1]
    t0 = time.perf_counter()
    try:
        passed, detail = c.run()
    except Exception as exc:  # a crash is a failed criterion, reported rather than raised
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if dt > c.budget:
        passed = False
        detail += f"; over budget ({dt:.1f}s > {c.budget:g}s)"
    return CriterionResult(c.number, c.key, c.title, bool(passed), detail, dt, c.budget)


def run_suite(filter_name: str | None = None, jobs: int = 1) -> list[CriterionResult]:
    chosen = select(filter_name)
    if jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_criterion, [c.number for c in chosen]))
    else:
        results = [run_criterion(c) for c in chosen]
    return sorted(results, key=lambda r: r.number)


def summary(results: list[CriterionResult], *, timings: bool = True) -> dict:
    items = []
    for r in results:
        d = asdict(r)
        if not timings:
            d.pop("seconds")
        else:
            d["seconds"] = round(d["seconds"], 3)
        items.append(d)
    return {"passed": sum(r.passed for r in results), "total": len(results),
            "ok": all(r.passed for r in results), "criteria": items}


def summary_json(results: list[CriterionResult], *, timings: bool = True) -> str:
    return json.dumps(summary(results, timings=timings), indent=2)
