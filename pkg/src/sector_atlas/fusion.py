"""Based fusion rings: Rep(G) and the equivariant-bundle ring over (X x X).

The bundle ("Hecke") ring of a transitive Gamma on X is built from Mackey
data only: orbits of G = Gamma_{x0} on X label the Gamma-orbits on pairs,
and an irreducible of the pair stabilizer decorates each orbit.  Structure
constants are convolution sums evaluated with modular characters.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .perm import GroupError, GuardExceeded, PermGroup, _compose, _invert, orbits, transversal
from .reptheory import character_table, conjugacy_classes, dixon_prime

HECKE_DEGREE_LIMIT = 16
SUBRING_BASIS_LIMIT = 20


class FusionError(ValueError):
    """A ring axiom failed or a label is unknown."""


@dataclass(frozen=True)
class SectorLabel:
    """orbit 0 is the diagonal; ``irrep`` is a row of the pair stabilizer's table."""
    orbit: int
    irrep: int

    @property
    def diagonal(self) -> bool:
        return self.orbit == 0

    def __str__(self) -> str:
        return f"e{self.orbit}.{self.irrep}"


@dataclass
class FusionRing:
    basis: list[str]
    dims: list[int]
    dual: list[int]
    N: np.ndarray
    unit: int = 0
    name: str = ""
    sectors: list[SectorLabel] = field(default_factory=list)

    def __post_init__(self):
        self._pos = {b: i for i, b in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def index(self, label: str | int) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < len(self.basis):
                raise FusionError(f"basis index {label} out of range")
            return int(label)
        try:
            return self._pos[label]
        except KeyError:
            raise FusionError(f"unknown label {label!r}") from None

    def dim(self, label: str | int) -> int:
        return self.dims[self.index(label)]

    def global_dimension(self) -> int:
        return sum(d * d for d in self.dims)

    def product(self, x: str | int, y: str | int) -> np.ndarray:
        return self.N[self.index(x), self.index(y)]

    def verify(self) -> None:
        """Raise FusionError unless all five based-ring axioms hold."""
        N, n, u = self.N, len(self.basis), self.unit
        eye = np.eye(n, dtype=np.int64)
        if (N < 0).any():
            raise FusionError("negative structure constant")
        if not (np.array_equal(N[:, u, :], eye) and np.array_equal(N[u, :, :], eye)):
            raise FusionError("unit axiom fails")
        dual = np.array(self.dual)
        if not np.array_equal(dual[dual], np.arange(n)):
            raise FusionError("dual is not an involution")
        if not np.array_equal(N[:, :, u], eye[:, dual]):
            raise FusionError("N_xy^unit differs from delta_{y, dual x}")
        # N_xy^z = N_{x* z}^y = N_{z y*}^x = N_{y* x*}^{z*}
        a = np.einsum("xzy->xyz", N[dual, :, :])
        b = np.einsum("zyx->xyz", N[:, dual, :])
        c = np.einsum("yxz->xyz", N[np.ix_(dual, dual, dual)])
        if not (np.array_equal(N, a) and np.array_equal(N, b) and np.array_equal(N, c)):
            raise FusionError("Frobenius reciprocity fails")
        d = np.array(self.dims, dtype=np.int64)
        if not np.array_equal(N @ d, np.outer(d, d)):
            raise FusionError("dimensions are not a ring homomorphism")
        left = np.einsum("xyw,wzv->xyzv", N, N)
        right = np.einsum("yzw,xwv->xyzv", N, N)
        if not np.array_equal(left, right):
            raise FusionError("associativity fails")

    def to_json(self) -> dict:
        out = {
            "basis": list(self.basis),
            "dims": list(self.dims),
            "dual": [self.basis[i] for i in self.dual],
            "unit": self.basis[self.unit],
            "N": self.N.tolist(),
        }
        if self.name:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _lift_count(x: int, P: int) -> int:
    x %= P
    if x > P // 2:
        raise FusionError("structure constant lifted to a negative integer")
    return x


def rep_ring(G: PermGroup, prime: int | None = None) -> FusionRing:
    """Representation ring of G; labels chi0, chi1, ... in character-table order."""
    t = character_table(G, prime)
    P, n = t.prime, t.size
    cl = t.classes
    V = np.array(t.values, dtype=object)
    weights = [cl.sizes[k] for k in range(n)]
    inv_order = pow(t.group_order, P - 2, P)
    conj = V[:, list(cl.inverse)]
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            prod = [V[a, k] * V[b, k] % P for k in range(n)]
            for c in range(n):
                s = sum(w * p * q for w, p, q in zip(weights, prod, conj[c])) % P
                N[a, b, c] = _lift_count(s * inv_order, P)
    R = FusionRing([f"chi{r}" for r in range(n)], list(t.degrees),
                   [t.dual_row(r) for r in range(n)], N, 0, name=f"Rep({G.name})" if G.name else "Rep")
    R.verify()
    return R


def hecke_ring(Gamma: PermGroup, x0: int = 0) -> FusionRing:
    """Convolution ring of Gamma-equivariant bundles on X x X."""
    X = Gamma.degree
    if X > HECKE_DEGREE_LIMIT:
        raise GuardExceeded(f"degree {X} exceeds the bundle-ring limit {HECKE_DEGREE_LIMIT}")
    if not Gamma.is_transitive():
        raise GroupError("bundle ring needs a transitive group")
    P = dixon_prime(Gamma)
    G = Gamma.stabilizer(x0)
    rest = [x for x in range(X) if x != x0]
    reps = [x0] + [orb[0] for orb in (orbits(G, rest) if rest else [])]
    stabs = [G] + [G.stabilizer(y) for y in reps[1:]]
    tables = [character_table(S, P) for S in stabs]
    classes = [conjugacy_classes(S) for S in stabs]

    orbit_of: dict[int, int] = {}
    to_rep: dict[int, tuple] = {}  # a in G with a(y) = rep of y's orbit
    orbit_size = []
    for i, y in enumerate(reps):
        tr = transversal(G, y)
        orbit_size.append(len(tr))
        for z, g in tr.items():
            orbit_of[z] = i
            to_rep[z] = _invert(g.images)
    to_base = {z: _invert(g.images) for z, g in transversal(Gamma, x0).items()}  # g(z) = x0

    # transport data for the pair (y, y_l): j and b with b(y) = x0, b(y_l) = y_j
    def pair_transport(y: int, yl: int) -> tuple[int, tuple]:
        g = to_base[y]
        z = g[yl]
        return orbit_of[z], _compose(to_rep[z], g)

    sectors = [SectorLabel(i, r) for i in range(len(reps)) for r in range(tables[i].size)]
    pos = {s: k for k, s in enumerate(sectors)}
    n = len(sectors)
    N = np.zeros((n, n, n), dtype=np.int64)
    for l, yl in enumerate(reps):
        Sl, tl, cll = stabs[l], tables[l], classes[l]
        counts: Counter = Counter()
        transports = {y: pair_transport(y, yl) for y in range(X)}
        for s in Sl.element_tuples:
            cs = cll.class_of[s]
            for y in range(X):
                if s[y] != y:
                    continue
                i = orbit_of[y]
                a = to_rep[y]
                j, b = transports[y]
                ci = classes[i].class_of[_compose(a, _compose(s, _invert(a)))]
                cj = classes[j].class_of[_compose(b, _compose(s, _invert(b)))]
                counts[(i, ci, j, cj, cs)] += 1
        inv_order = pow(Sl.order, P - 2, P)
        acc: dict[tuple, int] = {}
        for (i, ci, j, cj, cs), m in counts.items():
            ti, tj = tables[i], tables[j]
            cs_inv = cll.inverse[cs]
            for rho in range(ti.size):
                vr = ti.values[rho][ci]
                for sig in range(tj.size):
                    base = m * vr * tj.values[sig][cj] % P
                    for tau in range(tl.size):
                        key = (i, rho, j, sig, tau)
                        acc[key] = (acc.get(key, 0) + base * tl.values[tau][cs_inv]) % P
        for (i, rho, j, sig, tau), v in acc.items():
            N[pos[SectorLabel(i, rho)], pos[SectorLabel(j, sig)], pos[SectorLabel(l, tau)]] = \
                _lift_count(v * inv_order, P)

    dual = []
    for sec in sectors:
        i = sec.orbit
        g = to_base[reps[i]]
        z = g[x0]
        j = orbit_of[z]
        c = _compose(to_rep[z], g)
        ci = _invert(c)
        tj, ti = tables[j], tables[i]
        vals = [ti.value(sec.irrep, _compose(ci, _compose(_invert(t.images), c)))
                for t in classes[j].representatives]
        dual.append(pos[SectorLabel(j, tj.row_of(vals))])

    dims = [orbit_size[s.orbit] * tables[s.orbit].degrees[s.irrep] for s in sectors]
    R = FusionRing([str(s) for s in sectors], dims, dual, N, 0,
                   name=f"Hecke({Gamma.name})" if Gamma.name else "Hecke", sectors=sectors)
    R.verify()
    if R.global_dimension() != Gamma.order:
        raise FusionError("global dimension differs from |Gamma|")
    return R


def decompose_product(R: FusionRing, word: Sequence[str | int]) -> dict[str, int]:
    """Left-to-right product of basis labels, as {label: multiplicity}."""
    if not word:
        return {R.basis[R.unit]: 1}
    v = np.zeros(len(R), dtype=np.int64)
    v[R.index(word[0])] = 1
    for x in word[1:]:
        v = v @ R.N[:, R.index(x), :]
    return {R.basis[k]: int(m) for k, m in enumerate(v) if m}


def _closure(R: FusionRing, seed: set[int]) -> frozenset[int]:
    S = set(seed) | {R.unit}
    S |= {R.dual[x] for x in S}
    changed = True
    while changed:
        changed = False
        for x in list(S):
            for y in list(S):
                for z in np.nonzero(R.N[x, y])[0]:
                    z = int(z)
                    if z not in S:
                        S.add(z)
                        S.add(R.dual[z])
                        changed = True
    return frozenset(S)


def find_subrings(R: FusionRing) -> list[list[str]]:
    """All based subrings generated by basis elements, sorted by size then labels."""
    if len(R) > SUBRING_BASIS_LIMIT:
        raise GuardExceeded(f"basis of {len(R)} exceeds the subring search limit {SUBRING_BASIS_LIMIT}")
    found = {_closure(R, set())}
    found |= {_closure(R, {x}) for x in range(len(R))}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                c = _closure(R, set(a | b))
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [[R.basis[k] for k in sorted(s)] for s in ordered]


def diagonal_subring_map(R: FusionRing, rep: FusionRing) -> dict[str, str] | None:
    """Based-ring isomorphism from the diagonal labels of a bundle ring onto a rep ring, if one exists.

    Row order of the two character tables may differ (each table has its own
    modulus), so the bijection is searched among dimension-preserving maps.
    """
    diag = [k for k, s in enumerate(R.sectors) if s.diagonal]
    if len(diag) != len(rep) or sorted(R.dims[k] for k in diag) != sorted(rep.dims):
        return None
    sub = R.N[np.ix_(diag, diag, diag)]
    n = len(diag)
    image = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        for a, b, c in itertools.product(range(k + 1), repeat=3):
            if k in (a, b, c) and sub[a, b, c] != rep.N[image[a], image[b], image[c]]:
                return False
        return True

    def rec(k: int) -> bool:
        if k == n:
            return True
        for r in range(n):
            if used[r] or rep.dims[r] != R.dims[diag[k]]:
                continue
            image[k], used[r] = r, True
            if consistent(k) and rec(k + 1):
                return True
            image[k], used[r] = -1, False
        return False

    # the unit must go to the unit
    order_ok = R.unit in diag and diag.index(R.unit) == 0 and rep.unit == 0
    if not order_ok or not rec(0):
        return None
    return {R.basis[diag[k]]: rep.basis[image[k]] for k in range(n)}


# --------------------------------------------------------------------------
# equation fixtures
#
# A fixture file names a ring, declares labels by dimension, and lists tagged
# relations between products of labels.  Labels are matched to the ring's
# basis by searching dimension-compatible injections; a series passes when one
# injection satisfies every assumption and every tagged relation at once.

FIXTURE_FORMAT = "sector-atlas/fixtures/1"

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"


class FixtureError(ValueError):
    """Malformed fixture text."""


@dataclass(frozen=True)
class LabelDecl:
    name: str
    dim: int
    selfdual: bool = False
    unit: bool = False


# a word is a tuple of (name, dualized) atoms; a side is a tuple of (coef, word)
Word = tuple
Side = tuple


def _labels_of_side(side: Side) -> set[str]:
    return {name for _, word in side for name, _ in word}


@dataclass(frozen=True)
class Relation:
    """kind: 'eq' (sides all equal), 'ne', 'inner' (<a, b> op n), 'innereq', 'set', 'subring'."""
    kind: str
    sides: tuple = ()
    value: int = 0
    negate: bool = False
    text: str = ""

    @property
    def labels(self) -> frozenset[str]:
        out: set[str] = set()
        for s in self.sides:
            out |= _labels_of_side(s)
        return frozenset(out)


@dataclass
class Equation:
    tag: str
    relations: list[Relation]
    text: str = ""

    @property
    def labels(self) -> frozenset[str]:
        return frozenset().union(*(r.labels for r in self.relations))


@dataclass
class Fixture:
    series: str
    ring_kind: str = "hecke"
    group: str = ""
    labels: list[LabelDecl] = field(default_factory=list)
    assumptions: list[Equation] = field(default_factory=list)
    hypotheses: list[Equation] = field(default_factory=list)
    equations: list[Equation] = field(default_factory=list)
    reports: list[tuple[str, Relation]] = field(default_factory=list)
    expect_fail: bool = False

    def label(self, name: str) -> LabelDecl:
        for d in self.labels:
            if d.name == name:
                return d
        raise FixtureError(f"undeclared label {name!r}")


def _parse_word(text: str) -> Word:
    atoms = []
    for tok in text.split():
        dual = tok.startswith("~")
        name = tok[1:] if dual else tok
        if not re.fullmatch(_NAME, name):
            raise FixtureError(f"bad label {tok!r}")
        atoms.append((name, dual))
    if not atoms:
        raise FixtureError("empty product")
    return tuple(atoms)


def _parse_side(text: str) -> Side:
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        m = re.fullmatch(r"(\d+)\s*\*?\s*(.*)", chunk)
        coef, rest = (int(m.group(1)), m.group(2)) if m else (1, chunk)
        if rest.strip() == "":
            raise FixtureError(f"term without labels in {text!r}")
        terms.append((coef, _parse_word(rest)))
    return tuple(terms)


def _parse_relation(text: str) -> Relation:
    t = text.strip()
    m = re.fullmatch(r"<([^<>,]+),([^<>,]+)>\s*=\s*<([^<>,]+),([^<>,]+)>", t)
    if m:
        return Relation("innereq", tuple(_parse_side(g) for g in m.groups()), text=t)
    m = re.fullmatch(r"<(.+),(.+)>\s*(!?=)\s*(\d+)", t)
    if m:
        return Relation("inner", (_parse_side(m.group(1)), _parse_side(m.group(2))),
                        int(m.group(4)), m.group(3) == "!=", t)
    m = re.fullmatch(r"subring\s+(.+)", t)
    if m:
        names = [x.strip() for x in m.group(1).strip("{} ").split(",")]
        return Relation("subring", tuple(((1, ((n, False),)),) for n in names), text=t)
    m = re.fullmatch(r"\{(.+)\}\s*=\s*\{(.+)\}", t)
    if m:
        a = tuple((1, _parse_word(w)) for w in m.group(1).split(","))
        b = tuple((1, _parse_word(w)) for w in m.group(2).split(","))
        if len(a) != len(b):
            raise FixtureError(f"set sizes differ in {t!r}")
        return Relation("set", (a, b), text=t)
    if "!=" in t:
        lhs, rhs = t.split("!=", 1)
        return Relation("ne", (_parse_side(lhs), _parse_side(rhs)), text=t)
    parts = t.split("=")
    if len(parts) < 2:
        raise FixtureError(f"no relation in {t!r}")
    return Relation("eq", tuple(_parse_side(p) for p in parts), text=t)


def _expand_forall(body: str) -> list[str]:
    m = re.fullmatch(r"forall\s+(.+?):(.*)", body.strip())
    if not m:
        return [body]
    texts = [m.group(2)]
    for binding in m.group(1).split(";"):
        bm = re.fullmatch(rf"\s*({_NAME})\s+in\s+(.+)", binding)
        if not bm:
            raise FixtureError(f"bad forall binding {binding!r}")
        var, values = bm.group(1), [v.strip() for v in bm.group(2).split(",")]
        texts = [re.sub(rf"(?<![\w']){re.escape(var)}(?![\w'])", v, t) for t in texts for v in values]
    return texts


def parse_fixture(text: str, series: str = "") -> Fixture:
    fx = Fixture(series)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, _, rest = line.partition(" ")
            if head == "format":
                if rest.strip() != FIXTURE_FORMAT:
                    raise FixtureError(f"unsupported fixture format {rest.strip()!r}")
            elif head == "series":
                fx.series = rest.strip()
            elif head == "ring":
                kind, _, spec = rest.strip().partition(" ")
                if kind not in ("hecke", "rep"):
                    raise FixtureError(f"unknown ring kind {kind!r}")
                fx.ring_kind, fx.group = kind, spec.strip()
            elif head == "label":
                toks = rest.split()
                flags = set(toks[2:])
                if len(toks) < 2 or not flags <= {"selfdual", "unit"}:
                    raise FixtureError("expected: label NAME DIM [selfdual] [unit]")
                fx.labels.append(LabelDecl(toks[0], int(toks[1]), "selfdual" in flags or "unit" in flags,
                                           "unit" in flags))
            elif head == "expect":
                if rest.strip() != "fail":
                    raise FixtureError("expected: expect fail")
                fx.expect_fail = True
            else:
                tag, colon, body = line.partition(":")
                if not colon or not re.fullmatch(r"[\w.\-']+", tag.strip()):
                    raise FixtureError(f"cannot parse {line!r}")
                tag = tag.strip()
                if tag == "report":
                    rel = _parse_relation(f"<{body.strip()[1:-1]}> = 0")
                    fx.reports.append((body.strip(), rel))
                    continue
                rels = [_parse_relation(r) for t in _expand_forall(body) for r in t.split(";") if r.strip()]
                eq = Equation(tag, rels, body.strip())
                if tag == "assume":
                    fx.assumptions.append(eq)
                elif tag == "hypothesis":
                    fx.hypotheses.append(eq)
                else:
                    fx.equations.append(eq)
        except (FixtureError, ValueError) as exc:
            raise FixtureError(f"line {lineno}: {exc}") from None
    names = [d.name for d in fx.labels]
    if len(set(names)) != len(names):
        raise FixtureError("duplicate label declaration")
    for eq in fx.assumptions + fx.hypotheses + fx.equations:
        for n in eq.labels:
            fx.label(n)
    return fx


def fixture_names() -> list[str]:
    root = resources.files("sector_atlas.data") / "equations"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".fix"))


def load_fixture(name: str) -> Fixture:
    """A packaged series by name (e.g. 'M-series'), or a path to a fixture file."""
    path = Path(name)
    if path.suffix == ".fix" and path.exists():
        return parse_fixture(path.read_text(), path.stem)
    res = resources.files("sector_atlas.data") / "equations" / f"{name}.fix"
    if not res.is_file():
        raise FixtureError(f"no fixture series {name!r}; known: {', '.join(fixture_names())}")
    return parse_fixture(res.read_text(), name)


def build_ring(fx: Fixture) -> FusionRing:
    from .families import build_from_spec

    G = build_from_spec(fx.group)
    return hecke_ring(G) if fx.ring_kind == "hecke" else rep_ring(G)


# evaluation ---------------------------------------------------------------


class _Evaluator:
    def __init__(self, R: FusionRing):
        self.R = R
        self._subrings: set[frozenset] | None = None

    def word(self, w: Word, env: dict) -> np.ndarray:
        R = self.R
        first = True
        v = None
        for name, dual in w:
            x = env[name]
            if dual:
                x = R.dual[x]
            if first:
                v = np.zeros(len(R), dtype=np.int64)
                v[x] = 1
                first = False
            else:
                v = v @ R.N[:, x, :]
        return v

    def side(self, s: Side, env: dict) -> np.ndarray:
        return sum(c * self.word(w, env) for c, w in s)

    def subrings(self) -> set[frozenset]:
        if self._subrings is None:
            self._subrings = {frozenset(s) for s in find_subrings(self.R)}
        return self._subrings

    def holds(self, rel: Relation, env: dict) -> bool:
        if rel.kind == "eq":
            vals = [self.side(s, env) for s in rel.sides]
            return all(np.array_equal(vals[0], v) for v in vals[1:])
        if rel.kind == "ne":
            return not np.array_equal(self.side(rel.sides[0], env), self.side(rel.sides[1], env))
        if rel.kind == "inner":
            a, b = (self.side(s, env) for s in rel.sides)
            return (int(a @ b) == rel.value) != rel.negate
        if rel.kind == "innereq":
            a, b, c, d = (self.side(s, env) for s in rel.sides)
            return int(a @ b) == int(c @ d)
        if rel.kind == "set":
            key = lambda side: sorted(tuple(self.word(w, env)) for _, w in side)  # noqa: E731
            return key(rel.sides[0]) == key(rel.sides[1])
        if rel.kind == "subring":
            names = frozenset(self.R.basis[env[w[0][0]]] for (_, w), in rel.sides)
            return names in self.subrings()
        raise FixtureError(f"unknown relation kind {rel.kind}")

    def show(self, v: np.ndarray, inverse: dict) -> str:
        parts = []
        for k, m in enumerate(v):
            if m:
                name = inverse.get(k, self.R.basis[k])
                parts.append(name if m == 1 else f"{m}{name}")
        return " + ".join(parts) if parts else "0"

    def diff(self, rel: Relation, env: dict) -> str:
        inv = {v: k for k, v in env.items()}
        if rel.kind in ("eq", "ne"):
            vals = [self.show(self.side(s, env), inv) for s in rel.sides]
            return " | ".join(vals)
        if rel.kind == "inner":
            a, b = (self.side(s, env) for s in rel.sides)
            return f"inner product {int(a @ b)}"
        if rel.kind == "innereq":
            a, b, c, d = (self.side(s, env) for s in rel.sides)
            return f"inner products {int(a @ b)} and {int(c @ d)}"
        if rel.kind == "set":
            return "; ".join(" , ".join(self.show(self.word(w, env), inv) for _, w in s) for s in rel.sides)
        return "not a subring"


def _search(R: FusionRing, fx: Fixture, eqs: Sequence[Equation], ev: _Evaluator,
            limit: int = 1) -> list[dict]:
    """Injective dimension-preserving label assignments satisfying every relation of ``eqs``."""
    decls = fx.labels
    order = sorted(range(len(decls)), key=lambda i: (not decls[i].unit, i))
    rels = [r for e in eqs for r in e.relations]
    pos = {decls[i].name: k for k, i in enumerate(order)}
    due: list[list[Relation]] = [[] for _ in order]
    for r in rels:
        due[max((pos[n] for n in r.labels), default=0)].append(r)
    cands = []
    for i in order:
        d = decls[i]
        c = [k for k in range(len(R)) if R.dims[k] == d.dim and (not d.selfdual or R.dual[k] == k)]
        if d.unit:
            c = [R.unit] if R.unit in c else []
        cands.append(c)
    out: list[dict] = []
    env: dict[str, int] = {}
    used: set[int] = set()

    def rec(k: int) -> bool:
        if k == len(order):
            out.append(dict(env))
            return len(out) >= limit
        name = decls[order[k]].name
        for x in cands[k]:
            if x in used:
                continue
            env[name] = x
            used.add(x)
            if all(ev.holds(r, env) for r in due[k]) and rec(k + 1):
                return True
            used.discard(x)
            del env[name]
        return False

    rec(0)
    return out


@dataclass
class EquationResult:
    tag: str
    text: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    series: str
    ring: str
    results: list[EquationResult]
    mapping: dict[str, str] | None
    expect_fail: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when every equation passed, or (expect-fail series) every equation failed."""
        if self.expect_fail:
            return all(not r.passed for r in self.results)
        return self.mapping is not None and all(r.passed for r in self.results)

    def summary_line(self) -> str:
        n = len(self.results)
        p = sum(r.passed for r in self.results)
        if self.expect_fail:
            return f"{self.series}: {n - p}/{n} fail as expected"
        return f"{self.series}: {p}/{n} pass"

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            out.append(f"{r.tag}: {status}" + (f"  ({r.detail})" if r.detail else ""))
        if self.mapping:
            out.append("labels: " + ", ".join(f"{k}->{v}" for k, v in self.mapping.items()))
        out.extend(self.notes)
        out.append(self.summary_line())
        return out

    def to_json(self) -> dict:
        return {
            "series": self.series, "ring": self.ring, "ok": self.ok, "expect_fail": self.expect_fail,
            "mapping": self.mapping,
            "results": [{"tag": r.tag, "passed": r.passed, "detail": r.detail} for r in self.results],
            "notes": self.notes,
        }


def check_equation(R: FusionRing, fx: Fixture) -> CheckReport:
    """Check a fixture series against R up to relabeling; see the module notes for semantics."""
    ev = _Evaluator(R)
    names = lambda env: {k: R.basis[v] for k, v in env.items()}  # noqa: E731
    base = fx.assumptions
    if fx.expect_fail:
        results, notes = [], []
        for eq in fx.equations:
            hit = _search(R, fx, base + fx.hypotheses + [eq], ev)
            alone = _search(R, fx, base + [eq], ev)
            detail = "holds without the hypothesis" if alone else "fails even without the hypothesis"
            results.append(EquationResult(eq.tag, eq.text, bool(hit), detail))
        envs = _search(R, fx, base, ev)
        mapping = names(envs[0]) if envs else None
        for text, rel in fx.reports:
            if envs:
                a, b = (ev.side(s, envs[0]) for s in rel.sides)
                notes.append(f"report {text} = {int(a @ b)}")
        return CheckReport(fx.series, R.name, results, mapping, True, notes)

    joint = _search(R, fx, base + fx.hypotheses + fx.equations, ev)
    if joint:
        env = joint[0]
        results = [EquationResult(eq.tag, eq.text, True) for eq in fx.equations]
        return CheckReport(fx.series, R.name, results, names(env))
    results = []
    envs = _search(R, fx, base + fx.hypotheses, ev)
    for eq in fx.equations:
        alone = _search(R, fx, base + fx.hypotheses + [eq], ev)
        if alone:
            results.append(EquationResult(eq.tag, eq.text, True, "holds alone, not jointly"))
        elif envs:
            bad = next(r for r in eq.relations if not ev.holds(r, envs[0]))
            results.append(EquationResult(eq.tag, eq.text, False, "nearest: " + ev.diff(bad, envs[0])))
        else:
            results.append(EquationResult(eq.tag, eq.text, False, "assumptions unsatisfiable"))
    return CheckReport(fx.series, R.name, results, None)
