"""Permutation groups on {0, ..., n-1}.

Permutations compose as functions: ``(p * q)(x) == p(q(x))``.  Groups are
built with a deterministic Schreier-Sims stabilizer chain whose base points
are always the smallest point moved by the generator being inserted.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

#: Brute-force element enumeration is refused above this order.
ENUMERATION_LIMIT = 2_000_000

#: perm_conjugacy_iso only runs on groups of at most this degree.
CONJUGACY_DEGREE_LIMIT = 16


class GroupError(ValueError):
    """Raised on malformed input to a group operation."""


class GuardExceeded(RuntimeError):
    """Raised when a computation would exceed a desk-scale resource guard."""


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple([p[i] for i in q])


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class Permutation:
    """An immutable bijection of {0, ..., degree-1}."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a bijection of 0..{len(images) - 1}: {images}")
        if not images:
            raise GroupError("a permutation needs positive degree")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        images = list(range(degree))
        body = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))*", body):
            raise GroupError(f"malformed cycle notation: {text!r}")
        seen: set[int] = set()
        for group in re.findall(r"\(([^)]*)\)", body):
            pts = [int(t) for t in re.split(r"[\s,]+", group.strip()) if t]
            if any(p < 0 or p >= degree for p in pts):
                raise GroupError(f"point out of range in {text!r} for degree {degree}")
            if seen.intersection(pts) or len(set(pts)) != len(pts):
                raise GroupError(f"cycles are not disjoint in {text!r}")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise GroupError("degree mismatch in composition")
        return Permutation._trusted(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation._trusted(_invert(self.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"

    def to_json(self) -> list[int]:
        return list(self.images)


# --------------------------------------------------------------------------
# Stabilizer chains


def _orbit_transversal(gens: Sequence[tuple], point: int) -> dict[int, tuple]:
    """BFS orbit of ``point``; maps each orbit point y to u with u(point) = y."""
    n = len(gens[0]) if gens else 0
    ident = tuple(range(n)) if n else ()
    trans = {point: ident}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        ux = trans[x]
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = _compose(g, ux)
                queue.append(y)
    return trans


def _first_moved(p: tuple) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


class _Chain:
    """Mutable builder for a base and strong generating set."""

    def __init__(self, degree: int, gens: list[tuple]):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.base: list[int] = []
        self.level_gens: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.inv_cache: dict[tuple, tuple] = {}
        for g in gens:
            if g == self.ident:
                continue
            if all(g[b] == b for b in self.base):
                self._extend_base(_first_moved(g))
        for g in gens:
            if g == self.ident:
                continue
            for lvl, b in enumerate(self.base):
                self.level_gens[lvl].append(g)
                if g[b] != b:
                    break
        for lvl in range(len(self.base)):
            self._retransverse(lvl)

    def _extend_base(self, point: int) -> None:
        self.base.append(point)
        self.level_gens.append([])
        self.trans.append({point: self.ident})

    def _retransverse(self, lvl: int) -> None:
        if self.level_gens[lvl]:
            self.trans[lvl] = _orbit_transversal(self.level_gens[lvl], self.base[lvl])
        else:
            self.trans[lvl] = {self.base[lvl]: self.ident}

    def _inv(self, p: tuple) -> tuple:
        r = self.inv_cache.get(p)
        if r is None:
            r = _invert(p)
            self.inv_cache[p] = r
        return r

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for lvl in range(start, len(self.base)):
            x = g[self.base[lvl]]
            u = self.trans[lvl].get(x)
            if u is None:
                return g, lvl
            g = _compose(self._inv(u), g)
        return g, len(self.base)

    def complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            for x, ux in list(self.trans[i].items()):
                for s in list(self.level_gens[i]):
                    y = s[x]
                    sch = _compose(self._inv(self.trans[i][y]), _compose(s, ux))
                    if sch == self.ident:
                        continue
                    h, j = self.sift(sch, i + 1)
                    if h == self.ident:
                        continue
                    if j == len(self.base):
                        self._extend_base(_first_moved(h))
                    for lvl in range(i + 1, j + 1):
                        self.level_gens[lvl].append(h)
                        self._retransverse(lvl)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1


# --------------------------------------------------------------------------
# Groups


class PermGroup:
    """A permutation group with a certified order.

    Use :func:`build_group` to construct one.  Instances are treated as
    immutable; cached views (element lists, point stabilizers) are pure
    functions of the generators.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], *, name: str = ""):
        if degree < 1:
            raise GroupError("degree must be positive")
        for g in generators:
            if not isinstance(g, Permutation):
                raise GroupError(f"not a Permutation: {g!r}")
            if g.degree != degree:
                raise GroupError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.name = name
        chain = _Chain(degree, [g.images for g in self.generators])
        chain.complete()
        self._chain = chain
        self.base: tuple[int, ...] = tuple(chain.base)
        strong = []
        seen = set()
        for lvl in chain.level_gens:
            for g in lvl:
                if g not in seen:
                    seen.add(g)
                    strong.append(Permutation._trusted(g))
        self.strong_generators: tuple[Permutation, ...] = tuple(strong)
        self.order: int = math.prod(len(t) for t in chain.trans) if chain.trans else 1
        # Memo for derived data (classes, character tables) keyed by the caller.
        self._memo: dict = {}

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<PermGroup {label}degree={self.degree} order={self.order}>"

    def __len__(self) -> int:
        return self.order

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def basic_orbit_sizes(self) -> list[int]:
        return [len(t) for t in self._chain.trans]

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, lvl = self._chain.sift(g.images)
        return lvl == len(self.base) and h == self._chain.ident

    __contains__ = contains

    def _guard(self) -> None:
        if self.order > ENUMERATION_LIMIT:
            raise GuardExceeded(f"group of order {self.order} exceeds the enumeration guard")

    def iter_tuples(self) -> Iterator[tuple]:
        """All elements as image tuples, via products of transversal elements."""
        self._guard()
        levels = [list(t.values()) for t in self._chain.trans]
        if not levels:
            yield self._chain.ident
            return
        def rec(lvl: int, acc: tuple) -> Iterator[tuple]:
            if lvl < 0:
                yield acc
                return
            for u in levels[lvl]:
                yield from rec(lvl - 1, _compose(u, acc))
        yield from rec(len(levels) - 1, self._chain.ident)

    @cached_property
    def element_tuples(self) -> tuple[tuple, ...]:
        """Elements sorted by image tuple; the identity comes first."""
        return tuple(sorted(self.iter_tuples()))

    def elements(self) -> list[Permutation]:
        return [Permutation._trusted(t) for t in self.element_tuples]

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_transitive(self) -> bool:
        return len(orbit(self, 0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        return _stabilizer(self, point)

    def conjugate(self, pi: Permutation) -> "PermGroup":
        """The group pi G pi^-1."""
        inv = pi.inverse()
        return build_group(self.degree, [pi * g * inv for g in self.generators])


def build_group(degree: int, generators: Iterable[Permutation], *, name: str = "") -> PermGroup:
    """Build a group from generators, computing a base and strong generating set."""
    gens = list(generators)
    return PermGroup(degree, gens, name=name)


def group_from_tuples(degree: int, tuples: Iterable[tuple], *, name: str = "") -> PermGroup:
    return PermGroup(degree, [Permutation._trusted(tuple(t)) for t in tuples], name=name)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [])


# --------------------------------------------------------------------------
# Orbits and stabilizers


def orbit(G: PermGroup, x: int) -> list[int]:
    """Orbit of ``x`` in BFS order starting at ``x``."""
    if not 0 <= x < G.degree:
        raise GroupError(f"point {x} outside 0..{G.degree - 1}")
    seen = {x}
    out = [x]
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in G.generators:
            z = g.images[y]
            if z not in seen:
                seen.add(z)
                out.append(z)
                queue.append(z)
    return out


def orbits(G: PermGroup, points: Iterable[int] | None = None) -> list[list[int]]:
    """Orbits meeting ``points`` (default: all points), each sorted, ordered by minimum.

    ``points`` must be G-invariant; an orbit that leaves it raises GroupError.
    """
    pts = sorted(set(range(G.degree) if points is None else points))
    pts_set = set(pts)
    done: set[int] = set()
    out = []
    for x in pts:
        if x in done:
            continue
        orb = orbit(G, x)
        if not pts_set.issuperset(orb):
            raise GroupError("point set is not invariant under the group")
        done.update(orb)
        out.append(sorted(orb))
    return out


def transversal(G: PermGroup, x: int) -> dict[int, Permutation]:
    """For each y in the orbit of x an element u with u(x) = y."""
    trans = _orbit_transversal([g.images for g in G.generators] or [G._chain.ident], x)
    return {y: Permutation._trusted(u) for y, u in trans.items()}


def _stabilizer(G: PermGroup, x: int) -> PermGroup:
    gens_t = [g.images for g in G.generators]
    if not gens_t:
        return trivial_group(G.degree)
    trans = _orbit_transversal(gens_t, x)
    inv = {y: _invert(u) for y, u in trans.items()}
    ident = G._chain.ident
    schreier = []
    seen = set()
    for y, uy in trans.items():
        for g in gens_t:
            s = _compose(inv[g[y]], _compose(g, uy))
            if s != ident and s not in seen:
                seen.add(s)
                schreier.append(s)
    schreier.sort()
    H = group_from_tuples(G.degree, schreier)
    # Drop redundant Schreier generators when cheap, keeping the list short
    # for downstream consumers (conjugacy search, coset actions).
    if len(schreier) > 4:
        H = group_from_tuples(G.degree, _prune_generators(G.degree, schreier, H.order))
    assert H.order * len(trans) == G.order, "orbit-stabilizer failed"
    return H


def _prune_generators(degree: int, gens: list[tuple], order: int) -> list[tuple]:
    kept: list[tuple] = []
    current = 1
    for g in gens:
        if current == order:
            break
        trial = group_from_tuples(degree, kept + [g])
        if trial.order > current:
            kept.append(g)
            current = trial.order
    return kept


def stabilizer_chain(G: PermGroup, points: Sequence[int]) -> list[PermGroup]:
    """Successive pointwise stabilizers G_{x1}, G_{x1,x2}, ..."""
    out = []
    H = G
    for x in points:
        if not 0 <= x < G.degree:
            raise GroupError(f"point {x} outside 0..{G.degree - 1}")
        H = H.stabilizer(x)
        out.append(H)
    return out


def restrict_to_orbit(G: PermGroup, points: Sequence[int]) -> tuple[PermGroup, list[int]]:
    """Action of G on an invariant point set, relabelled 0..len(points)-1 in sorted order."""
    pts = sorted(points)
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for g in G.generators:
        try:
            gens.append(Permutation._trusted(tuple(index[g.images[p]] for p in pts)))
        except KeyError:
            raise GroupError("point set is not invariant under the group") from None
    return build_group(len(pts), gens), pts


# --------------------------------------------------------------------------
# Coset actions, transitivity, primitivity


def coset_action(G: PermGroup, H: PermGroup) -> PermGroup:
    """Action of G on the left cosets gH, with H itself as point 0.

    Cosets after the first are numbered in BFS order over G's generators.
    """
    if not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    H_elems = H.element_tuples

    def key(g: tuple) -> tuple:
        return min(_compose(g, h) for h in H_elems)

    ident = G._chain.ident
    reps = [ident]
    index = {key(ident): 0}
    images: list[list[int]] = [[] for _ in G.generators]
    i = 0
    while i < len(reps):
        r = reps[i]
        for gi, g in enumerate(G.generators):
            gr = _compose(g.images, r)
            k = key(gr)
            j = index.get(k)
            if j is None:
                j = len(reps)
                index[k] = j
                reps.append(gr)
            images[gi].append(j)
        i += 1
    n = len(reps)
    if n * H.order != G.order:
        raise GroupError("coset enumeration inconsistent with Lagrange")
    gens = [Permutation._trusted(tuple(im)) for im in images]
    return build_group(n, gens, name=f"{G.name}/{H.name}" if G.name else "")


@dataclass(frozen=True)
class TransitivityProfile:
    k: int
    sharp: bool
    degree: int

    @property
    def paper_k(self) -> int:
        """Transitivity degree under the convention that S_n counts as (n-1)-transitive."""
        return self.degree - 1 if self.k == self.degree and self.degree > 1 else self.k

    def describe(self) -> str:
        if self.k == 0:
            return "intransitive"
        return f"{'sharply ' if self.sharp else ''}{self.k}-transitive"


def transitivity_profile(G: PermGroup) -> TransitivityProfile:
    """Largest k with G k-transitive, and whether the action on k-tuples is regular."""
    n = G.degree
    k = 0
    H = G
    remaining = list(range(n))
    while remaining:
        x = remaining[0]
        if len(orbit(H, x)) != len(remaining):
            break
        k += 1
        H = H.stabilizer(x)
        remaining = remaining[1:]
    falling = math.prod(range(n - k + 1, n + 1))
    return TransitivityProfile(k=k, sharp=k > 0 and G.order == falling, degree=n)


def _minimal_block(G: PermGroup, a: int, b: int) -> list[int]:
    parent = list(range(G.degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    union(a, b)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        for g in G.generators:
            gx, gy = g.images[x], g.images[y]
            if union(gx, gy):
                queue.append((gx, gy))
    return [find(x) for x in range(G.degree)]


def primitivity_blocks(G: PermGroup) -> list[list[int]] | None:
    """None when G is primitive, else a nontrivial block system with the smallest blocks.

    Raises GroupError for intransitive groups, where primitivity is undefined.
    """
    if not G.is_transitive():
        raise GroupError("primitivity is defined for transitive groups only")
    best = None
    for b in range(1, G.degree):
        roots = _minimal_block(G, 0, b)
        blocks: dict[int, list[int]] = {}
        for x, r in enumerate(roots):
            blocks.setdefault(r, []).append(x)
        if len(blocks) == 1:
            continue
        system = sorted(blocks.values())
        if best is None or len(system[0]) < len(best[0]):
            best = system
    return best


def is_primitive(G: PermGroup) -> bool:
    return primitivity_blocks(G) is None


# --------------------------------------------------------------------------
# Frobenius groups


class RegularGroupError(GroupError):
    """The group acts regularly, so it has no Frobenius complement."""


@dataclass(frozen=True)
class FrobeniusData:
    kernel: PermGroup
    complement: PermGroup


def frobenius_analysis(G: PermGroup) -> FrobeniusData | None:
    """Kernel and complement of a Frobenius group, or None when G is not Frobenius.

    The kernel includes the identity, so its order equals the degree.
    """
    if not G.is_transitive():
        raise GroupError("Frobenius analysis needs a transitive group")
    if G.order == G.degree:
        raise RegularGroupError("group acts regularly")
    kernel = []
    for t in G.element_tuples:
        fixed = sum(1 for i, x in enumerate(t) if i == x)
        if fixed == 0:
            kernel.append(t)
        elif 1 < fixed < G.degree:
            return None
    kernel.append(G._chain.ident)
    kernel_set = set(kernel)
    if len(kernel_set) != G.degree:
        return None
    K = group_from_tuples(G.degree, sorted(kernel_set), name="kernel")
    if K.order != G.degree:
        return None
    H = G.stabilizer(0)
    if K.order * H.order != G.order:
        return None
    return FrobeniusData(kernel=K, complement=H)


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    return all(g * n * g.inverse() in N for g in G.generators for n in N.generators)


def is_abelian(G: PermGroup) -> bool:
    gens = G.generators
    return all(a * b == b * a for a in gens for b in gens)


def is_elementary_abelian(G: PermGroup) -> bool:
    if G.order == 1:
        return True
    if not is_abelian(G):
        return False
    primes = {p for p in range(2, G.order + 1) if G.order % p == 0 and all(p % d for d in range(2, p))}
    if len(primes) != 1:
        return False
    p = primes.pop()
    return all((g ** p).is_identity() for g in G.generators)


# --------------------------------------------------------------------------
# Double cosets


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    representatives: tuple[Permutation, ...]
    sizes: tuple[int, ...]


def double_cosets(G: PermGroup, H1: PermGroup, H2: PermGroup) -> DoubleCosetDecomposition:
    """Double cosets H1 g H2, each represented by its smallest element."""
    if not (H1.is_subgroup_of(G) and H2.is_subgroup_of(G)):
        raise GroupError("double cosets need subgroups of G")
    A = H1.element_tuples
    B = H2.element_tuples
    seen: set[tuple] = set()
    reps = []
    sizes = []
    for g in G.element_tuples:
        if g in seen:
            continue
        cell = set()
        for h2 in B:
            gh2 = _compose(g, h2)
            for h1 in A:
                cell.add(_compose(h1, gh2))
        seen |= cell
        reps.append(Permutation._trusted(g))
        sizes.append(len(cell))
    assert sum(sizes) == G.order
    return DoubleCosetDecomposition(tuple(reps), tuple(sizes))


# --------------------------------------------------------------------------
# Permutation conjugacy


def _two_generators(G: PermGroup) -> list[Permutation]:
    """A short generating list: two elements when a seeded search finds them quickly."""
    if len(G.generators) <= 2:
        return list(G.generators)
    elems = G.elements()
    rng = random.Random(0)
    for _ in range(400):
        a, b = rng.choice(elems), rng.choice(elems)
        if build_group(G.degree, [a, b]).order == G.order:
            return [a, b]
    return list(G.generators)


def perm_conjugacy_iso(G1: PermGroup, G2: PermGroup) -> Permutation | None:
    """A permutation pi with pi G1 pi^-1 = G2, or None.

    Searches over images of a short generating set of G1 inside G2.  A
    conjugator is pinned down by those images once pi(0) is fixed, and for
    transitive G2 one may take pi(0) = 0 after composing with an element of G2.
    """
    n = G1.degree
    if n > CONJUGACY_DEGREE_LIMIT or G2.degree > CONJUGACY_DEGREE_LIMIT:
        raise GuardExceeded(f"conjugacy search limited to degree {CONJUGACY_DEGREE_LIMIT}")
    if G2.degree != n or G1.order != G2.order:
        return None
    if sorted(map(len, orbits(G1))) != sorted(map(len, orbits(G2))):
        return None
    if G1.order == 1:
        return Permutation.identity(n)
    gens = _two_generators(G1)
    gens_t = [g.images for g in gens]
    by_type: dict[tuple, list[tuple]] = {}
    for h in G2.element_tuples:
        by_type.setdefault(Permutation._trusted(h).cycle_type(), []).append(h)
    candidates = [by_type.get(g.cycle_type(), []) for g in gens]
    if any(not c for c in candidates):
        return None
    transitive = G1.is_transitive() and G2.is_transitive()
    # Reduce the first generator's image modulo conjugation by G2_0 when pi(0) = 0.
    first = candidates[0]
    if transitive:
        stab = G2.stabilizer(0).element_tuples
        reps, seen = [], set()
        for h in first:
            if h in seen:
                continue
            reps.append(h)
            for k in stab:
                seen.add(_compose(k, _compose(h, _invert(k))))
        candidates = [reps] + candidates[1:]
    # Images of products of consecutive generators must keep their cycle types.
    g_pairs = [Permutation._trusted(_compose(gens_t[i], gens_t[i + 1])).cycle_type()
               for i in range(len(gens_t) - 1)]
    g1_orbits = orbits(G1)

    def solve(images: list[tuple]) -> tuple | None:
        # Transitive case with pi(0) = 0; the generator images determine the rest.
        pi = [-1] * n
        used = [False] * n
        pi[0] = 0
        used[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g, h in zip(gens_t, images):
                y, target = g[x], h[pi[x]]
                if pi[y] == -1:
                    if used[target]:
                        return None
                    pi[y] = target
                    used[target] = True
                    queue.append(y)
                elif pi[y] != target:
                    return None
        return tuple(pi) if -1 not in pi else None

    def search(depth: int, chosen: list[tuple]) -> Permutation | None:
        if depth == len(gens_t):
            if transitive:
                pi = solve(chosen)
                if pi is None:
                    return None
                return _verify(pi)
            return _intransitive_solve(chosen)
        for h in candidates[depth]:
            if depth > 0:
                prod_t = Permutation._trusted(_compose(chosen[-1], h)).cycle_type()
                if prod_t != g_pairs[depth - 1]:
                    continue
            found = search(depth + 1, chosen + [h])
            if found is not None:
                return found
        return None

    def _verify(pi: tuple) -> Permutation | None:
        p = Permutation._trusted(pi)
        pinv = p.inverse()
        if all(p * g * pinv in G2 for g in G1.generators):
            return p
        return None

    def _intransitive_solve(chosen: list[tuple]) -> Permutation | None:
        # Assign each G1-orbit root independently by backtracking over targets.
        def rec(idx: int, pi: list[int], used: list[bool]) -> Permutation | None:
            if idx == len(g1_orbits):
                return _verify(tuple(pi))
            root = g1_orbits[idx][0]
            for t in range(n):
                if used[t]:
                    continue
                trial = list(pi)
                tused = list(used)
                trial[root], tused[t] = t, True
                ok = True
                queue = deque([root])
                while queue and ok:
                    x = queue.popleft()
                    for g, h in zip(gens_t, chosen):
                        y, target = g[x], h[trial[x]]
                        if trial[y] == -1:
                            if tused[target]:
                                ok = False
                                break
                            trial[y] = target
                            tused[target] = True
                            queue.append(y)
                        elif trial[y] != target:
                            ok = False
                            break
                if ok:
                    got = rec(idx + 1, trial, tused)
                    if got is not None:
                        return got
            return None
        return rec(0, [-1] * n, [False] * n)

    return search(0, [])


def parse_cycles_list(texts: Iterable[str], degree: int) -> list[Permutation]:
    return [Permutation.from_cycles(t, degree) for t in texts]


def all_tuples(G: PermGroup, k: int) -> Iterator[tuple[int, ...]]:
    """Distinct k-tuples of points, in lexicographic order."""
    for t in product(range(G.degree), repeat=k):
        if len(set(t)) == k:
            yield t
