"""Constructors for the permutation groups used throughout the package.

Field-based families act on GF(q) (points = element indices) or on the
projective line GF(q) + {inf} with inf as the last point q.  Every
constructor re-derives its advertised order and transitivity and raises
:class:`ConstructionError` on a mismatch.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Sequence

from .gfield import FFElem, FieldError, FiniteField, field_of_order, is_prime, make_field, prime_power
from .perm import (
    GroupError,
    PermGroup,
    Permutation,
    build_group,
    frobenius_analysis,
    transitivity_profile,
)


class ConstructionError(RuntimeError):
    """A constructed group failed its own verification."""


class SpecError(ValueError):
    """A group specification string could not be parsed or is out of range."""


def _certify(G: PermGroup, *, order: int, k: int | None = None, sharp: bool | None = None) -> PermGroup:
    if G.order != order:
        raise ConstructionError(f"{G.name}: order {G.order}, expected {order}")
    if k is not None:
        prof = transitivity_profile(G)
        # Compare with the convention that S_n is (n-1)-transitive, so that
        # H(3) = S3 and PGL2(3) = S4 keep their family's advertised degree.
        if prof.paper_k != k or (sharp is not None and prof.sharp != sharp):
            raise ConstructionError(f"{G.name}: transitivity {prof}, expected k={k} sharp={sharp}")
    return G


def _perm_from_map(points: int, fn: Callable[[int], int]) -> Permutation:
    return Permutation([fn(x) for x in range(points)])


# --------------------------------------------------------------------------
# symmetric and alternating groups


@lru_cache(maxsize=None)
def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise SpecError("symmetric group needs n >= 1")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles("(0 1)", n),
                Permutation([(i + 1) % n for i in range(n)])]
    G = build_group(n, gens, name=f"S{n}")
    return _certify(G, order=math.factorial(n))


@lru_cache(maxsize=None)
def alternating(n: int) -> PermGroup:
    if n < 1:
        raise SpecError("alternating group needs n >= 1")
    gens = []
    if n >= 3:
        gens.append(Permutation.from_cycles("(0 1 2)", n))
        if n >= 4:
            # (0 1 ... n-1) is even for odd n; for even n use the cycle on 1..n-1.
            if n % 2:
                gens.append(Permutation([(i + 1) % n for i in range(n)]))
            else:
                gens.append(Permutation([0] + [1 + i % (n - 1) for i in range(1, n)]))
    G = build_group(n, gens, name=f"A{n}")
    return _certify(G, order=max(1, math.factorial(n) // 2))


# --------------------------------------------------------------------------
# affine groups over GF(p)^k


def _mat_vec(M: Sequence[Sequence[int]], v: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) % p for i in range(len(M)))


def _vec_index(v: Sequence[int], p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(v))


def _index_vec(n: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(n % p)
        n //= p
    return tuple(out)


def affine_frobenius(p: int, k: int, matrices: Sequence[Sequence[Sequence[int]]], *, sharp: bool = True,
                     name: str = "") -> PermGroup:
    """GF(p)^k extended by the linear group generated by ``matrices``.

    Points are vectors indexed by ``v0 + v1*p + ...``.  With ``sharp`` set the
    complement must act freely on nonzero vectors, which makes the result a
    sharply 2-transitive Frobenius group when the complement is transitive.
    """
    if not is_prime(p):
        raise SpecError(f"{p} is not prime")
    n = p ** k
    vecs = [_index_vec(i, p, k) for i in range(n)]
    mats = []
    for M in matrices:
        if len(M) != k or any(len(row) != k for row in M):
            raise SpecError(f"matrix {M} is not {k}x{k}")
        mats.append([[int(x) % p for x in row] for row in M])
    gens = []
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        gens.append(_perm_from_map(n, lambda x, e=e: _vec_index([(a + b) % p for a, b in zip(vecs[x], e)], p)))
    for M in mats:
        try:
            gens.append(_perm_from_map(n, lambda x, M=M: _vec_index(_mat_vec(M, vecs[x], p), p)))
        except GroupError:
            raise SpecError(f"matrix {M} is singular mod {p}") from None
    G = build_group(n, gens, name=name or f"AGL({k},{p})-sub")
    if sharp:
        H = G.stabilizer(0)
        for t in H.element_tuples:
            if any(t[x] == x for x in range(1, n)) and any(t[x] != x for x in range(n)):
                raise ConstructionError(f"{G.name}: complement does not act freely on nonzero vectors")
        if H.order != n - 1:
            raise ConstructionError(f"{G.name}: complement of order {H.order} is not transitive on nonzero vectors")
        _certify(G, order=n * (n - 1), k=2, sharp=True)
    return G


#: Q8 inside GL2(3); see tests for the brute-force search that recovers it.
Q8_GL2_3 = (((0, 2), (1, 0)), ((1, 1), (1, 2)))

#: A fixed-point-free copy of SL2(3) inside GL2(5).
SL2_3_GL2_5 = (((0, 4), (1, 0)), ((0, 2), (2, 0)), ((1, 1), (2, 3)))


def frobenius_z7_z3() -> PermGroup:
    """Z7 extended by the order-3 multiplier 2 (a non-sharp Frobenius group)."""
    G = affine_frobenius(7, 1, [[[2]]], sharp=False, name="Z7:Z3")
    return _certify(G, order=21, k=1, sharp=False)


# --------------------------------------------------------------------------
# field-based families


def _affine_line(F: FiniteField, fn: Callable[[FFElem], FFElem]) -> Permutation:
    elems = F.elements()
    return Permutation([int(fn(a)) for a in elems])


def _projective_line(F: FiniteField, fn: Callable[[FFElem | None], FFElem | None]) -> Permutation:
    """fn receives None for the point at infinity and may return None."""
    q = F.q
    pts: list[FFElem | None] = F.elements() + [None]
    return Permutation([q if (y := fn(x)) is None else int(y) for x in pts])


def _translations(F: FiniteField) -> list[Permutation]:
    return [_affine_line(F, lambda x, b=b: x + b) for b in F.additive_basis()]


def _twist_params(q: int) -> tuple[FiniteField, int]:
    """Field and sigma exponent p^l for q = p^(2l) with p odd."""
    try:
        p, k = prime_power(q)
    except FieldError as exc:
        raise SpecError(str(exc)) from None
    if p == 2 or k % 2:
        raise SpecError(f"q={q} must be an even power of an odd prime")
    return make_field(p, k), p ** (k // 2)


def _field(q: int) -> FiniteField:
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise SpecError(str(exc)) from None


@lru_cache(maxsize=None)
def hq(q: int) -> PermGroup:
    """H(q): the maps x -> a x + b on GF(q)."""
    F = _field(q)
    z = F.primitive_element
    gens = _translations(F) + [_affine_line(F, lambda x: z * x)]
    G = build_group(q, gens, name=f"H({q})")
    return _certify(G, order=q * (q - 1), k=2, sharp=True)


@lru_cache(maxsize=None)
def sq(q: int) -> PermGroup:
    """S(q): x -> a x + b for square a, x -> a x^sigma + b otherwise."""
    F, s = _twist_params(q)
    z = F.primitive_element
    gens = _translations(F)
    gens.append(_affine_line(F, lambda x: z * z * x))
    gens.append(_affine_line(F, lambda x: z * x ** s))
    G = build_group(q, gens, name=f"S({q})")
    return _certify(G, order=q * (q - 1), k=2, sharp=True)


@lru_cache(maxsize=None)
def tq(q: int) -> PermGroup:
    """T(q): GF(q)^x extended by the field automorphisms, acting on GF(q)."""
    F = _field(q)
    z = F.primitive_element
    gens = [_affine_line(F, lambda x: z * x)]
    if F.k > 1:
        gens.append(_affine_line(F, lambda x: x ** F.p))
    G = build_group(q, gens, name=f"T({q})")
    return _certify(G, order=(q - 1) * F.k)


def _mobius(F: FiniteField, a, b, c, d) -> Callable:
    def act(x):
        if x is None:
            return None if c.is_zero() else a / c
        den = c * x + d
        if den.is_zero():
            return None
        return (a * x + b) / den
    return act


@lru_cache(maxsize=None)
def pgl2(q: int) -> PermGroup:
    """L(q) = PGL2(q) on the projective line."""
    F = _field(q)
    z, one, zero = F.primitive_element, F.one, F.zero
    gens = [_projective_line(F, _mobius(F, one, b, zero, one)) for b in F.additive_basis()]
    gens.append(_projective_line(F, _mobius(F, z, zero, zero, one)))
    gens.append(_projective_line(F, _mobius(F, zero, one, one, zero)))
    G = build_group(q + 1, gens, name=f"PGL2({q})")
    return _certify(G, order=q * (q * q - 1), k=3, sharp=True)


@lru_cache(maxsize=None)
def psl2(q: int) -> PermGroup:
    """PSL2(q) on the projective line, odd q only."""
    F = _field(q)
    if F.p == 2:
        raise SpecError("psl2 is provided for odd q only")
    z, one, zero = F.primitive_element, F.one, F.zero
    gens = [_projective_line(F, _mobius(F, one, b, zero, one)) for b in F.additive_basis()]
    gens.append(_projective_line(F, _mobius(F, z * z, zero, zero, one)))
    gens.append(_projective_line(F, _mobius(F, zero, -one, one, zero)))
    G = build_group(q + 1, gens, name=f"PSL2({q})")
    return _certify(G, order=q * (q * q - 1) // 2, k=2)


@lru_cache(maxsize=None)
def mq(q: int) -> PermGroup:
    """M(q): Mobius maps, with x replaced by x^sigma when the determinant is a non-square."""
    F, s = _twist_params(q)
    z, one, zero = F.primitive_element, F.one, F.zero
    gens = [_projective_line(F, _mobius(F, one, b, zero, one)) for b in F.additive_basis()]
    gens.append(_projective_line(F, _mobius(F, z * z, zero, zero, one)))
    gens.append(_projective_line(F, _mobius(F, zero, -one, one, zero)))
    # diag(z, 1) has non-square determinant: x -> z * x^sigma
    gens.append(_projective_line(F, lambda x: None if x is None else z * x ** s))
    G = build_group(q + 1, gens, name=f"M({q})")
    return _certify(G, order=q * (q * q - 1), k=3, sharp=True)


# --------------------------------------------------------------------------
# Mathieu groups


def _load_mathieu() -> dict:
    text = resources.files("sector_atlas.data").joinpath("mathieu.json").read_text()
    return json.loads(text)


def _tuple_orbit_size(G: PermGroup, k: int) -> int:
    start = tuple(range(k))
    seen = {start}
    queue = deque([start])
    gens = [g.images for g in G.generators]
    while queue:
        t = queue.popleft()
        for g in gens:
            u = tuple(g[x] for x in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen)


@lru_cache(maxsize=None)
def mathieu(n: int) -> PermGroup:
    """M11 or M12 from stored generators, with sharp transitivity checked on tuples."""
    data = _load_mathieu()
    if str(n) not in data:
        raise SpecError("mathieu groups available: 11, 12")
    entry = data[str(n)]
    gens = [Permutation.from_cycles(c, n) for c in entry["generators"]]
    G = build_group(n, gens, name=f"M{n}")
    k, order = entry["k"], entry["order"]
    _certify(G, order=order, k=k, sharp=True)
    if _tuple_orbit_size(G, k) != order:
        raise ConstructionError(f"M{n}: action on {k}-tuples is not regular")
    return G


# --------------------------------------------------------------------------
# group specification strings


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: tuple

    def __str__(self) -> str:
        if self.kind == "affine":
            p, k, gens = self.params
            return f"affine:p={p},k={k},gens={json.dumps(gens, separators=(',', ':'))}"
        return f"{self.kind}:{self.params[0]}"


_SIMPLE = {"sym": symmetric, "alt": alternating, "h": hq, "s": sq, "t": tq,
           "pgl2": pgl2, "psl2": psl2, "m": mq, "mathieu": mathieu}


def parse_group_spec(text: str) -> GroupSpec:
    m = re.fullmatch(r"\s*([a-z0-9]+)\s*:\s*(.+?)\s*", text)
    if not m:
        raise SpecError(f"cannot parse group spec {text!r}")
    kind, rest = m.groups()
    if kind in _SIMPLE:
        if not re.fullmatch(r"\d+", rest):
            raise SpecError(f"expected an integer parameter in {text!r}")
        return GroupSpec(kind, (int(rest),))
    if kind == "affine":
        am = re.fullmatch(r"p\s*=\s*(\d+)\s*,\s*k\s*=\s*(\d+)\s*,\s*gens\s*=\s*(\[.*\])", rest)
        if not am:
            raise SpecError(f"expected affine:p=P,k=K,gens=[...] in {text!r}")
        try:
            gens = json.loads(am.group(3))
        except json.JSONDecodeError as exc:
            raise SpecError(f"bad matrix list: {exc}") from None
        return GroupSpec("affine", (int(am.group(1)), int(am.group(2)), gens))
    raise SpecError(f"unknown group kind {kind!r}")


def build_from_spec(spec: GroupSpec | str) -> PermGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if spec.kind == "affine":
        p, k, gens = spec.params
        return affine_frobenius(p, k, gens, sharp=False, name=str(spec))
    try:
        return _SIMPLE[spec.kind](*spec.params)
    except FieldError as exc:
        raise SpecError(str(exc)) from None
