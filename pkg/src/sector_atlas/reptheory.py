"""Conjugacy classes and modular character tables.

Character values live in Z/P for a prime P = 1 (mod exponent) with
P > 2|G|, so the group's roots of unity exist in Z/P and every integer we
ever lift (degrees, multiplicities, norms) is recovered exactly.  Tables
are computed by Dixon's method: simultaneous eigenvectors of the class
matrices give the central characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .modp import charpoly, distinct_roots, find_prime, matmul, nullspace, solve_left
from .perm import GroupError, PermGroup, Permutation, _compose, _invert


@dataclass(frozen=True)
class ConjClasses:
    representatives: tuple[Permutation, ...]
    sizes: tuple[int, ...]
    members: tuple[tuple[tuple, ...], ...] = field(repr=False)
    class_of: dict = field(repr=False)
    inverse: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.sizes)

    def index(self, g: Permutation | tuple) -> int:
        key = g.images if isinstance(g, Permutation) else tuple(g)
        return self.class_of[key]


def conjugacy_classes(G: PermGroup) -> ConjClasses:
    """Classes ordered by their minimal element; the identity class comes first."""
    memo = G._memo.get("classes")
    if memo is not None:
        return memo
    gens = [(g.images, _invert(g.images)) for g in G.generators]
    class_of: dict[tuple, int] = {}
    reps, sizes, members = [], [], []
    for t in G.element_tuples:
        if t in class_of:
            continue
        idx = len(reps)
        class_of[t] = idx
        cls = [t]
        i = 0
        while i < len(cls):
            x = cls[i]
            for g, gi in gens:
                y = _compose(g, _compose(x, gi))
                if y not in class_of:
                    class_of[y] = idx
                    cls.append(y)
            i += 1
        reps.append(Permutation._trusted(t))
        sizes.append(len(cls))
        members.append(tuple(sorted(cls)))
    inverse = tuple(class_of[_invert(r.images)] for r in reps)
    out = ConjClasses(tuple(reps), tuple(sizes), tuple(members), class_of, inverse)
    G._memo["classes"] = out
    return out


def exponent(G: PermGroup) -> int:
    return math.lcm(*(r.order() for r in conjugacy_classes(G).representatives))


def dixon_prime(G: PermGroup) -> int:
    """Smallest prime P = 1 (mod exp G) with P > 2|G|."""
    return find_prime(exponent(G), 2 * G.order)


@dataclass(frozen=True)
class CharacterTable:
    group_order: int
    exponent: int
    prime: int
    classes: ConjClasses = field(repr=False)
    values: tuple[tuple[int, ...], ...] = field(repr=False)
    degrees: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.degrees)

    def inner(self, f: Sequence[int], g: Sequence[int]) -> int:
        """<f, g> = (1/|G|) sum |C| f(C) g(C^-1), computed mod P and lifted to [0, P)."""
        P = self.prime
        cl = self.classes
        s = sum(n * f[k] * g[cl.inverse[k]] for k, n in enumerate(cl.sizes)) % P
        return s * pow(self.group_order, P - 2, P) % P

    def multiplicity(self, f: Sequence[int], row: int) -> int:
        m = self.inner(f, self.values[row])
        if m > self.prime // 2:
            raise ArithmeticError("class function is not a character (negative multiplicity)")
        return m

    def decompose(self, f: Sequence[int]) -> list[int]:
        return [self.multiplicity(f, r) for r in range(self.size)]

    def row_of(self, values: Sequence[int]) -> int:
        """Index of the row equal to ``values`` (residues)."""
        target = tuple(v % self.prime for v in values)
        for i, row in enumerate(self.values):
            if row == target:
                return i
        raise KeyError("no irreducible character with these values")

    def dual_row(self, row: int) -> int:
        inv = self.classes.inverse
        return self.row_of([self.values[row][inv[k]] for k in range(self.size)])

    def value(self, row: int, g: Permutation | tuple) -> int:
        return self.values[row][self.classes.index(g)]

    def to_json(self) -> dict:
        return {
            "classes": [{"representative": str(r), "size": n}
                        for r, n in zip(self.classes.representatives, self.classes.sizes)],
            "degrees": list(self.degrees),
            "modulus": self.prime,
            "values": [list(r) for r in self.values],
        }


def _class_matrices(G: PermGroup, cl: ConjClasses) -> list[list[list[int]]]:
    """M_j[i][k] = #{x in C_j : x^-1 z_k in C_i} for fixed z_k in C_k."""
    r = len(cl)
    mats = [[[0] * r for _ in range(r)] for _ in range(r)]
    inv_members = [[_invert(x) for x in mem] for mem in cl.members]
    for k, z in enumerate(cl.representatives):
        zt = z.images
        for j in range(r):
            row = mats[j]
            for xi in inv_members[j]:
                row[cl.class_of[_compose(xi, zt)]][k] += 1
    return mats


def character_table(G: PermGroup, prime: int | None = None) -> CharacterTable:
    """Irreducible characters mod P, rows sorted by (degree, residues).

    ``prime`` may be supplied to share one modulus across related groups; it
    must be 1 mod the exponent of G and exceed 2|G|.
    """
    cl = conjugacy_classes(G)
    e = exponent(G)
    P = prime if prime is not None else dixon_prime(G)
    if (P - 1) % e or P <= 2 * G.order:
        raise GroupError(f"prime {P} unsuitable for a group of exponent {e} and order {G.order}")
    key = ("chartable", P)
    if key in G._memo:
        return G._memo[key]
    r = len(cl)
    mats = _class_matrices(G, cl)
    # Refine eigenspaces one class matrix at a time, in class order.
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]  # each: list of column vectors
    for j in range(1, r):
        if all(len(sp) == 1 for sp in spaces):
            break
        refined = []
        for sp in spaces:
            if len(sp) == 1:
                refined.append(sp)
                continue
            B = [list(col) for col in zip(*sp)]  # r x d
            MB = matmul(mats[j], B, P)
            A = solve_left(B, MB, P)  # d x d, with M_j B = B A
            roots = distinct_roots(charpoly(A, P), P)
            for lam in roots:
                shifted = [[(A[a][b] - (lam if a == b else 0)) % P for b in range(len(A))] for a in range(len(A))]
                vecs = nullspace(shifted, P)
                refined.append([[sum(B[i][t] * v[t] for t in range(len(v))) % P for i in range(r)] for v in vecs])
            if sum(len(s) for s in refined[-len(roots):]) != len(sp):
                raise ArithmeticError("class matrix not diagonalizable mod P")
        spaces = refined
    if len(spaces) != r or any(len(sp) != 1 for sp in spaces):
        raise ArithmeticError("class matrices failed to separate the characters")
    rows = []
    for (w,) in spaces:
        w0inv = pow(w[0], P - 2, P)
        omega = [x * w0inv % P for x in w]
        s = sum(omega[k] * omega[cl.inverse[k]] * pow(cl.sizes[k], P - 2, P) for k in range(r)) % P
        d2 = G.order * pow(s, P - 2, P) % P
        d = next((d for d in range(1, math.isqrt(G.order) + 1) if d * d % P == d2), None)
        if d is None:
            raise ArithmeticError("no admissible character degree")
        chi = tuple(omega[k] * d * pow(cl.sizes[k], P - 2, P) % P for k in range(r))
        rows.append((d, chi))
    rows.sort()
    table = CharacterTable(
        group_order=G.order, exponent=e, prime=P, classes=cl,
        values=tuple(v for _, v in rows), degrees=tuple(d for d, _ in rows),
    )
    _verify_table(table)
    G._memo[key] = table
    return table


def _verify_table(t: CharacterTable) -> None:
    P = t.prime
    if sum(d * d for d in t.degrees) != t.group_order:
        raise ArithmeticError("sum of squared degrees differs from |G|")
    for a in range(t.size):
        for b in range(t.size):
            ip = t.inner(t.values[a], t.values[b])
            if ip != (1 if a == b else 0):
                raise ArithmeticError("row orthogonality fails")
    # column orthogonality: sum_chi chi(g) chi(h^-1) = |C_G(g)| delta
    inv = t.classes.inverse
    for k in range(t.size):
        for l in range(t.size):
            s = sum(row[k] * row[inv[l]] for row in t.values) % P
            want = (t.group_order // t.classes.sizes[k]) % P if k == l else 0
            if s != want:
                raise ArithmeticError("column orthogonality fails")


def class_fusion(H: PermGroup, G: PermGroup) -> list[int]:
    """For each class of H, the index of the G-class containing it."""
    if not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    cg = conjugacy_classes(G)
    return [cg.index(r) for r in conjugacy_classes(H).representatives]


@dataclass(frozen=True)
class RestrictionMatrix:
    entries: tuple[tuple[int, ...], ...]
    g_degrees: tuple[int, ...]
    h_degrees: tuple[int, ...]


def restriction_matrix(G: PermGroup, H: PermGroup, prime: int | None = None) -> RestrictionMatrix:
    """entries[chi][psi] = <Res_H chi, psi>, with rows and columns in table order."""
    P = prime if prime is not None else dixon_prime(G)
    tg = character_table(G, P)
    th = character_table(H, P)
    fuse = class_fusion(H, G)
    entries = []
    for chi in tg.values:
        res = [chi[fuse[c]] for c in range(th.size)]
        entries.append(tuple(th.decompose(res)))
    for i, row in enumerate(entries):
        if sum(m * d for m, d in zip(row, th.degrees)) != tg.degrees[i]:
            raise ArithmeticError("restriction does not preserve degree")
    return RestrictionMatrix(tuple(entries), tg.degrees, th.degrees)


def permutation_character_norm(G: PermGroup) -> int:
    """<pi, pi> for the permutation character, i.e. the number of orbits on pairs."""
    cl = conjugacy_classes(G)
    total = sum(n * len(r.fixed_points()) ** 2 for r, n in zip(cl.representatives, cl.sizes))
    q, rem = divmod(total, G.order)
    assert rem == 0
    return q
