"""Bipartite principal graphs: construction, exact checks, isomorphism, I/O.

Vertex dimensions are kept exactly as ``a * sqrt(r)`` with rational ``a``
and squarefree ``r``.  Graphs also record their index (the squared
Perron-Frobenius eigenvalue) when it is known.
"""

from __future__ import annotations

import json
import math
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .perm import GroupError, PermGroup, orbits, transitivity_profile
from .reptheory import character_table, class_fusion, dixon_prime, restriction_matrix

SCHEMA = "sector-atlas/graph/1"
MAX_ISO_VERTICES = 64


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * r with r squarefree; returns (s, r)."""
    s, r = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            s *= d
            n //= d * d
        if n % d == 0:
            r *= d
            n //= d
        d += 1
    return s, r * n


@dataclass(frozen=True, order=True)
class Dim:
    """The exact positive number ``coef * sqrt(radicand)``."""

    coef: Fraction
    radicand: int = 1

    def __post_init__(self):
        if self.radicand < 1:
            raise ValueError("radicand must be positive")
        s, r = _squarefree_split(self.radicand)
        object.__setattr__(self, "coef", Fraction(self.coef) * s)
        object.__setattr__(self, "radicand", r)

    @classmethod
    def sqrt_of(cls, value: Fraction | int) -> "Dim":
        value = Fraction(value)
        num, den = value.numerator, value.denominator
        return cls(Fraction(1, den), num * den)

    @property
    def square(self) -> Fraction:
        return self.coef * self.coef * self.radicand

    def __mul__(self, other: "Dim | int | Fraction") -> "Dim":
        if isinstance(other, Dim):
            return Dim(self.coef * other.coef, self.radicand * other.radicand)
        return Dim(self.coef * Fraction(other), self.radicand)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.coef) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        c = self.coef
        cs = str(c) if c.denominator == 1 else f"({c})"
        if self.radicand == 1:
            return cs
        return f"√{self.radicand}" if c == 1 else f"{cs}√{self.radicand}"

    @classmethod
    def parse(cls, text: str) -> "Dim":
        """Accepts ``7``, ``3/2``, ``sqrt(5)``, ``3*sqrt(5)``, ``3√5`` and ``√5``."""
        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?(?:sqrt\((\d+)\)|√(\d+))", t)
        if m:
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            return cls(coef, int(m.group(2) or m.group(3)))
        if re.fullmatch(r"\d+(?:/\d+)?", t):
            return cls(Fraction(t), 1)
        raise ValueError(f"cannot parse dimension {text!r}")


class _ExactSum:
    """Sum of Dims grouped by radicand."""

    def __init__(self):
        self.parts: dict[int, Fraction] = defaultdict(Fraction)

    def add(self, d: Dim, mult: int | Fraction = 1) -> None:
        self.parts[d.radicand] += d.coef * mult

    def key(self) -> dict[int, Fraction]:
        return {r: c for r, c in self.parts.items() if c}


@dataclass(frozen=True)
class Vertex:
    label: str
    dim: Dim | None = None


@dataclass(frozen=True)
class BipartiteGraph:
    even: tuple[Vertex, ...]
    odd: tuple[Vertex, ...]
    adj: tuple[tuple[int, ...], ...]  # even x odd multiplicities
    star: int = 0
    index: Fraction | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.adj) != len(self.even) or any(len(r) != len(self.odd) for r in self.adj):
            raise ValueError("adjacency shape does not match vertex lists")
        if any(x < 0 for r in self.adj for x in r):
            raise ValueError("negative multiplicity")
        if not 0 <= self.star < len(self.even):
            raise ValueError("distinguished vertex out of range")

    @property
    def has_dims(self) -> bool:
        return all(v.dim is not None for v in self.even + self.odd)

    @property
    def vertex_count(self) -> int:
        return len(self.even) + len(self.odd)

    def matrix(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.int64).reshape(len(self.even), len(self.odd))

    def is_connected(self) -> bool:
        seen = {("e", self.star)}
        queue = deque(seen)
        while queue:
            kind, i = queue.popleft()
            if kind == "e":
                nbrs = [("o", j) for j, m in enumerate(self.adj[i]) if m]
            else:
                nbrs = [("e", k) for k in range(len(self.even)) if self.adj[k][i]]
            for v in nbrs:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.vertex_count

    def relabel(self, even_labels: Sequence[str], odd_labels: Sequence[str]) -> "BipartiteGraph":
        return BipartiteGraph(
            tuple(Vertex(l, v.dim) for l, v in zip(even_labels, self.even)),
            tuple(Vertex(l, v.dim) for l, v in zip(odd_labels, self.odd)),
            self.adj, self.star, self.index, self.name,
        )


def _graph(even, odd, edges, star=0, index=None, name="") -> BipartiteGraph:
    adj = [[0] * len(odd) for _ in even]
    for i, j, m in edges:
        adj[i][j] += m
    return BipartiteGraph(tuple(even), tuple(odd), tuple(map(tuple, adj)), star,
                          None if index is None else Fraction(index), name)


# --------------------------------------------------------------------------
# families


def gbmn(ms: Sequence[int], n: int) -> BipartiteGraph:
    """The two-parameter family: legs v0_i - v1_i joined to n hubs v2_j."""
    ms = tuple(int(x) for x in ms)
    if not ms or ms[0] != 1:
        raise ValueError("the tuple m must start with m_0 = 1")
    if n < 1 or any(x < 1 for x in ms):
        raise ValueError("parameters must be positive")
    m = sum(x * x for x in ms)
    lam2 = 1 + m * n
    even = [Vertex(f"v0_{i}", Dim(mi)) for i, mi in enumerate(ms)]
    even += [Vertex(f"v2_{j}", Dim(m)) for j in range(1, n + 1)]
    odd = [Vertex(f"v1_{i}", Dim(mi, lam2)) for i, mi in enumerate(ms)]
    edges = [(i, i, 1) for i in range(len(ms))]
    edges += [(len(ms) + j, i, mi) for j in range(n) for i, mi in enumerate(ms)]
    return _graph(even, odd, edges, 0, lam2, f"G_{ms},{n}")


def star_graph(n: int) -> BipartiteGraph:
    if n < 1:
        raise ValueError("star graph needs n >= 1")
    even = [Vertex(f"e{i}", Dim(1)) for i in range(n)]
    odd = [Vertex("c", Dim(1, n))]
    return _graph(even, odd, [(i, 0, 1) for i in range(n)], 0, n, f"G_{n}")


def tilde(G: BipartiteGraph) -> BipartiteGraph:
    """Attach a pendant edge to every even vertex.

    Old odd vertices become even, old even vertices become odd, and the new
    pendant at the old distinguished vertex is distinguished.  When G has
    dims and index L the result carries dims for index L + 1:
    pendants keep d(v), old evens scale by sqrt(L + 1), old odds by sqrt(L).
    """
    ne, no = len(G.even), len(G.odd)
    dims = G.has_dims and G.index is not None
    L = G.index
    new_even = [Vertex(v.label, (v.dim * Dim.sqrt_of(L)) if dims else None) for v in G.odd]
    new_even += [Vertex(v.label + "'", v.dim if dims else None) for v in G.even]
    new_odd = [Vertex(v.label, (v.dim * Dim.sqrt_of(L + 1)) if dims else None) for v in G.even]
    edges = [(j, i, G.adj[i][j]) for i in range(ne) for j in range(no) if G.adj[i][j]]
    edges += [(no + i, i, 1) for i in range(ne)]
    index = (L + 1) if L is not None else None
    return _graph(new_even, new_odd, edges, no + G.star, index, f"tilde({G.name})")


# --------------------------------------------------------------------------
# exact Perron-Frobenius verification


@dataclass(frozen=True)
class PFReport:
    exact_ok: bool
    index: Fraction
    estimate: float
    residual: float
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.exact_ok and self.residual < 1e-10 and abs(self.estimate - float(self.index)) < 1e-8


def pf_check(G: BipartiteGraph, lam2: Fraction | int | None = None) -> PFReport:
    """Check (D D^T) d_even = lam2 d_even, (D^T D) d_odd = lam2 d_odd and D^T d_even = lam d_odd exactly."""
    if not G.has_dims:
        raise ValueError("pf_check needs dimension labels on every vertex")
    lam2 = Fraction(G.index if lam2 is None else lam2)
    lam = Dim.sqrt_of(lam2)
    failures = []
    ne, no = len(G.even), len(G.odd)
    # D^T d_even = lam d_odd  and  D d_odd = lam d_even (together imply both square identities)
    for j in range(no):
        s = _ExactSum()
        for i in range(ne):
            if G.adj[i][j]:
                s.add(G.even[i].dim, G.adj[i][j])
        want = _ExactSum()
        want.add(G.odd[j].dim * lam)
        if s.key() != want.key():
            failures.append(f"odd {G.odd[j].label}")
    for i in range(ne):
        s = _ExactSum()
        for j in range(no):
            if G.adj[i][j]:
                s.add(G.odd[j].dim, G.adj[i][j])
        want = _ExactSum()
        want.add(G.even[i].dim * lam)
        if s.key() != want.key():
            failures.append(f"even {G.even[i].label}")
    # the square identities in exact arithmetic, stated on their own
    D = [[Fraction(x) for x in row] for row in G.adj]
    for i in range(ne):
        total = _ExactSum()
        for k in range(ne):
            w = sum(D[i][j] * D[k][j] for j in range(no))
            if w:
                total.add(G.even[k].dim, w)
        want = _ExactSum()
        want.add(G.even[i].dim, lam2)
        if total.key() != want.key():
            failures.append(f"even-square {G.even[i].label}")
    for j in range(no):
        total = _ExactSum()
        for l in range(no):
            w = sum(D[i][j] * D[i][l] for i in range(ne))
            if w:
                total.add(G.odd[l].dim, w)
        want = _ExactSum()
        want.add(G.odd[j].dim, lam2)
        if total.key() != want.key():
            failures.append(f"odd-square {G.odd[j].label}")
    est, resid = _power_iteration(G)
    return PFReport(not failures, lam2, est, resid, tuple(failures))


def _power_iteration(G: BipartiteGraph) -> tuple[float, float]:
    D = G.matrix().astype(float)
    A = D @ D.T
    n = A.shape[0]
    B = A + np.eye(n)  # the shift keeps the iteration aperiodic
    v = np.ones(n) / math.sqrt(n)
    mu = 0.0
    resid = math.inf
    for _ in range(100_000):
        w = B @ v
        v = w / np.linalg.norm(w)
        mu = float(v @ A @ v)
        resid = float(np.linalg.norm(A @ v - mu * v))
        if resid < 1e-12:
            break
    return mu, resid


# --------------------------------------------------------------------------
# graphs from group data


def _label_row(prefix: str, r: int) -> str:
    return f"{prefix}{r}"


def principal_graph(Gamma: PermGroup, x0: int = 0) -> BipartiteGraph:
    """Principal graph of the subfactor for Gamma > Gamma_{x0} acting on its points."""
    if Gamma.degree < 2:
        raise GroupError("principal graph needs degree >= 2")
    if not Gamma.is_transitive():
        raise GroupError("principal graph needs a transitive group")
    P = dixon_prime(Gamma)
    H = Gamma.stabilizer(x0)
    th = character_table(H, P)
    rest = [x for x in range(Gamma.degree) if x != x0]
    orbs = orbits(H, rest) if rest else []
    X = Gamma.degree
    odd = [Vertex(_label_row("o", r), Dim(d, X)) for r, d in enumerate(th.degrees)]
    even = [Vertex(f"e0.{r}", Dim(d)) for r, d in enumerate(th.degrees)]
    edges = [(r, r, 1) for r in range(th.size)]
    for i, orb in enumerate(orbs, start=1):
        S = H.stabilizer(orb[0])
        rm = restriction_matrix(H, S, P)
        base = len(even)
        for r, d in enumerate(rm.h_degrees):
            even.append(Vertex(f"e{i}.{r}", Dim(len(orb) * d)))
        for psi, row in enumerate(rm.entries):
            for r, m in enumerate(row):
                if m:
                    edges.append((base + r, psi, m))
    name = f"principal({Gamma.name})" if Gamma.name else "principal"
    return _graph(even, odd, edges, 0, X, name)


def dual_principal_graph(G: PermGroup, H: PermGroup) -> BipartiteGraph:
    """Induction-restriction graph between irreducibles of G (even) and H (odd)."""
    if not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    idx = G.order // H.order
    rm = restriction_matrix(G, H)
    even = [Vertex(f"g{r}", Dim(d)) for r, d in enumerate(rm.g_degrees)]
    odd = [Vertex(f"h{r}", Dim(d, idx)) for r, d in enumerate(rm.h_degrees)]
    edges = [(a, b, m) for a, row in enumerate(rm.entries) for b, m in enumerate(row) if m]
    return _graph(even, odd, edges, 0, idx, "dual")


def stabilizer_pair_dual(Gamma: PermGroup) -> BipartiteGraph:
    """Dual graph of Gamma_0 > Gamma_{0,1} for a 2-transitive Gamma."""
    H = Gamma.stabilizer(0)
    return dual_principal_graph(H, H.stabilizer(1))


# --------------------------------------------------------------------------
# isomorphism


def graphs_isomorphic(A: BipartiteGraph, B: BipartiteGraph) -> dict | None:
    """Vertex bijection A -> B preserving parity, multiplicities, the star and (when both have them) dims.

    Keys and values are ``("e", i)`` / ``("o", j)`` pairs.
    """
    for G in (A, B):
        if G.vertex_count > MAX_ISO_VERTICES:
            raise ValueError(f"isomorphism test limited to {MAX_ISO_VERTICES} vertices")
    if (len(A.even), len(A.odd)) != (len(B.even), len(B.odd)):
        return None
    use_dims = A.has_dims and B.has_dims

    def nbrs(G: BipartiteGraph, v: tuple) -> dict:
        kind, i = v
        if kind == "e":
            return {("o", j): m for j, m in enumerate(G.adj[i]) if m}
        return {("e", k): G.adj[k][i] for k in range(len(G.even)) if G.adj[k][i]}

    def dist(G: BipartiteGraph) -> dict:
        d = {("e", G.star): 0}
        queue = deque([("e", G.star)])
        while queue:
            v = queue.popleft()
            for w in nbrs(G, v):
                if w not in d:
                    d[w] = d[v] + 1
                    queue.append(w)
        return d

    da, db = dist(A), dist(B)

    def inv(G, d, v):
        kind, i = v
        vert = G.even[i] if kind == "e" else G.odd[i]
        return (kind, tuple(sorted(nbrs(G, v).values())), d.get(v, -1),
                vert.dim.square if use_dims else None)

    verts_a = sorted(da, key=lambda v: (da[v], v))
    if len(verts_a) != A.vertex_count:
        verts_a += [v for v in [("e", i) for i in range(len(A.even))] + [("o", j) for j in range(len(A.odd))]
                    if v not in da]
    all_b = [("e", i) for i in range(len(B.even))] + [("o", j) for j in range(len(B.odd))]
    inv_a = {v: inv(A, da, v) for v in verts_a}
    inv_b = {w: inv(B, db, w) for w in all_b}
    if sorted(map(repr, inv_a.values())) != sorted(map(repr, inv_b.values())):
        return None
    nb_a = {v: nbrs(A, v) for v in verts_a}
    nb_b = {w: nbrs(B, w) for w in all_b}
    mapping: dict = {}
    used: set = set()

    def consistent(v, w) -> bool:
        for u, m in nb_a[v].items():
            if u in mapping and nb_b[w].get(mapping[u], 0) != m:
                return False
        mapped_nbrs = sum(1 for u in nb_a[v] if u in mapping)
        return mapped_nbrs == sum(1 for x in nb_b[w] if x in used)

    def rec(k: int) -> bool:
        if k == len(verts_a):
            return True
        v = verts_a[k]
        if k == 0:
            cands = [("e", B.star)]
        else:
            cands = all_b
        for w in cands:
            if w in used or inv_b[w] != inv_a[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if rec(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if rec(0) else None


def transfer_labels(G: BipartiteGraph, fixture: BipartiteGraph, mapping: dict) -> BipartiteGraph:
    """Relabel G with fixture labels through an isomorphism G -> fixture."""
    even = [None] * len(G.even)
    odd = [None] * len(G.odd)
    for (kind, i), (_, j) in mapping.items():
        if kind == "e":
            even[i] = fixture.even[j].label
        else:
            odd[i] = fixture.odd[j].label
    return G.relabel(even, odd)


# --------------------------------------------------------------------------
# emitters and fixture parsing


def _dot_id(label: str) -> str:
    return json.dumps(label, ensure_ascii=False)


def emit(G: BipartiteGraph, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(to_json(G), ensure_ascii=False, indent=1) + "\n"
    if fmt == "dot":
        lines = [f"graph {_dot_id(G.name or 'G')} {{"]
        for i, v in enumerate(G.even):
            shape = "doublecircle" if i == G.star else "circle"
            tag = f"{v.label}*" if i == G.star else v.label
            text = f"{tag}\\n{v.dim}" if v.dim is not None else tag
            decl = f'  e{i} [label="{text}", shape={shape}, style=filled, fillcolor=black, fontcolor=white];'
            edges = []
            for j, m in enumerate(G.adj[i]):
                if m == 1:
                    edges.append(f"e{i} -- o{j};")
                elif m > 1:
                    edges.append(f'e{i} -- o{j} [label="{m}"];')
            lines.append(" ".join([decl] + edges))
        for j, v in enumerate(G.odd):
            text = f"{v.label}\\n{v.dim}" if v.dim is not None else v.label
            lines.append(f'  o{j} [label="{text}", shape=circle];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "text":
        out = [f"# {G.name}" if G.name else "# graph"]
        if G.index is not None:
            out.append(f"index {G.index}")
        for i, v in enumerate(G.even):
            star = "*" if i == G.star else ""
            out.append(f"even {v.label}{star}: {v.dim if v.dim is not None else '-'}")
        for v in G.odd:
            out.append(f"odd {v.label}: {v.dim if v.dim is not None else '-'}")
        for i, row in enumerate(G.adj):
            for j, m in enumerate(row):
                if m:
                    suffix = f" x{m}" if m > 1 else ""
                    out.append(f"edge {G.even[i].label} -- {G.odd[j].label}{suffix}")
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _vertex_json(v: Vertex) -> dict:
    if v.dim is None:
        return {"label": v.label, "dim2_num": None, "dim2_den": None, "radicand": None}
    sq = v.dim.square
    return {"label": v.label, "dim2_num": sq.numerator, "dim2_den": sq.denominator, "radicand": v.dim.radicand}


def to_json(G: BipartiteGraph) -> dict:
    data = {
        "schema": SCHEMA,
        "even": [_vertex_json(v) for v in G.even],
        "odd": [_vertex_json(v) for v in G.odd],
        "adj": [list(r) for r in G.adj],
        "star": G.star,
    }
    if G.index is not None:
        data["index"] = str(G.index)
    if G.name:
        data["name"] = G.name
    return data


def _vertex_from_json(d: dict) -> Vertex:
    if d.get("dim2_num") is None:
        return Vertex(d["label"])
    return Vertex(d["label"], Dim.sqrt_of(Fraction(d["dim2_num"], d["dim2_den"])))


def from_json(data: dict | str) -> BipartiteGraph:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"expected schema {SCHEMA}")
    return BipartiteGraph(
        tuple(_vertex_from_json(v) for v in data["even"]),
        tuple(_vertex_from_json(v) for v in data["odd"]),
        tuple(tuple(r) for r in data["adj"]),
        int(data["star"]),
        Fraction(data["index"]) if "index" in data else None,
        data.get("name", ""),
    )


def parse_graph_fixture(text: str, name: str = "") -> BipartiteGraph:
    """Parse the text fixture format.

    Lines: ``index L``; ``even LABEL DIM`` (a trailing ``*`` on the label
    marks the star); ``odd LABEL DIM``; ``edge A B [MULT]`` or a chain
    ``path A B C ...``; ``#`` starts a comment.  DIM may be ``-``.
    """
    even: list[Vertex] = []
    odd: list[Vertex] = []
    where: dict[str, tuple[str, int]] = {}
    edges: list[tuple[str, str, int]] = []
    star = None
    index = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "index":
            index = Fraction(parts[1])
        elif kw in ("even", "odd"):
            label = parts[1]
            is_star = label.endswith("*")
            label = label.rstrip("*")
            dim = None if len(parts) < 3 or parts[2] == "-" else Dim.parse(parts[2])
            if label in where:
                raise ValueError(f"duplicate vertex {label}")
            bucket = even if kw == "even" else odd
            where[label] = (kw[0], len(bucket))
            bucket.append(Vertex(label, dim))
            if is_star:
                if kw != "even":
                    raise ValueError("the star must be an even vertex")
                star = where[label][1]
        elif kw == "edge":
            mult = int(parts[3]) if len(parts) > 3 else 1
            edges.append((parts[1], parts[2], mult))
        elif kw == "path":
            for a, b in zip(parts[1:], parts[2:]):
                edges.append((a, b, 1))
        else:
            raise ValueError(f"unknown fixture line: {raw!r}")
    resolved = []
    for a, b, m in edges:
        ka, kb = where[a], where[b]
        if ka[0] == kb[0]:
            raise ValueError(f"edge {a}-{b} joins vertices of equal parity")
        e, o = (ka, kb) if ka[0] == "e" else (kb, ka)
        resolved.append((e[1], o[1], m))
    if star is None:
        raise ValueError("fixture has no distinguished vertex")
    return _graph(even, odd, resolved, star, index, name)


FIGURE_ALIASES = {
    "S5": "FigS5", "A6": "FigA6", "M11": "Fig9", "PSL27": "FigPSL", "M10M9": "Fig6",
    "D6^(1)": "D6_1", "E6^(1)": "E6_1",
}


def figure_names() -> list[str]:
    from importlib import resources
    root = resources.files("sector_atlas.data").joinpath("figures")
    return sorted(p.name[:-len(".graph")] for p in root.iterdir() if p.name.endswith(".graph"))


def load_figure(name: str) -> BipartiteGraph:
    """Load a stored figure fixture by id (e.g. ``Fig9``) or alias (e.g. ``M11``)."""
    from importlib import resources
    key = FIGURE_ALIASES.get(name, name)
    path = resources.files("sector_atlas.data").joinpath("figures", f"{key}.graph")
    if not path.is_file():
        raise KeyError(f"no figure fixture named {name!r}")
    return parse_graph_fixture(path.read_text(encoding="utf-8"), key)
