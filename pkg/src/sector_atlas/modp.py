"""Linear algebra and polynomial root finding over a prime field Z/P.

Matrices are lists of lists of Python ints; sizes stay small (a few dozen)
so plain Python keeps everything exact without overflow concerns.
"""

from __future__ import annotations

from .gfield import is_prime


def find_prime(modulus_of: int, above: int) -> int:
    """Smallest prime P with P = 1 (mod modulus_of) and P > above."""
    t = above // modulus_of + 1
    while True:
        P = t * modulus_of + 1
        if is_prime(P):
            return P
        t += 1


def lift(x: int, P: int) -> int:
    """Symmetric lift of a residue to (-P/2, P/2]."""
    x %= P
    return x - P if x > P // 2 else x


def rref(M: list[list[int]], P: int) -> tuple[list[list[int]], list[int]]:
    A = [[x % P for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], P - 2, P)
        A[r] = [x * inv % P for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % P for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def nullspace(M: list[list[int]], P: int) -> list[list[int]]:
    """Basis of {v : M v = 0}, as a list of vectors."""
    cols = len(M[0])
    R, pivots = rref(M, P)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f] % P
        basis.append(v)
    return basis


def matmul(A: list[list[int]], B: list[list[int]], P: int) -> list[list[int]]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % P for col in Bt] for row in A]


def solve_left(B: list[list[int]], C: list[list[int]], P: int) -> list[list[int]]:
    """X with B X = C for B of full column rank (n x d), C of shape n x m."""
    n, d = len(B), len(B[0])
    m = len(C[0])
    aug = [list(B[i]) + list(C[i]) for i in range(n)]
    R, pivots = rref(aug, P)
    if pivots[:d] != list(range(d)):
        raise ValueError("matrix does not have full column rank")
    X = [R[i][d:d + m] for i in range(d)]
    for i in range(d, n):
        if any(R[i][d:]):
            raise ValueError("inconsistent system")
    return X


def charpoly(A: list[list[int]], P: int) -> list[int]:
    """Characteristic polynomial det(xI - A), coefficients low to high (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = matmul(A, Mk, P) if k > 1 else [[0] * n for _ in range(n)]
        Mk = [[(AM[i][j] + (coeffs[n - k + 1] if i == j else 0)) % P for j in range(n)] for i in range(n)]
        AMk = matmul(A, Mk, P)
        tr = sum(AMk[i][i] for i in range(n)) % P
        coeffs[n - k] = -tr * pow(k, P - 2, P) % P
    return coeffs


# polynomials: coefficient lists low to high, trimmed


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def pmod(f: list[int], g: list[int], P: int) -> list[int]:
    f = [x % P for x in f]
    _trim(f)
    dg = len(g) - 1
    inv = pow(g[-1], P - 2, P)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % P
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % P
        _trim(f)
    return f


def pmul(f: list[int], g: list[int], P: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % P
    return _trim(out)


def pgcd(f: list[int], g: list[int], P: int) -> list[int]:
    f, g = _trim([x % P for x in f]), _trim([x % P for x in g])
    while g:
        f, g = g, pmod(f, g, P)
    if f:
        inv = pow(f[-1], P - 2, P)
        f = [x * inv % P for x in f]
    return f


def ppowmod(base: list[int], e: int, mod: list[int], P: int) -> list[int]:
    result = [1]
    base = pmod(base, mod, P)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, P), mod, P)
        base = pmod(pmul(base, base, P), mod, P)
        e >>= 1
    return result


def distinct_roots(f: list[int], P: int) -> list[int]:
    """Sorted distinct roots in Z/P of a nonzero polynomial (Cantor-Zassenhaus, odd P)."""
    f = _trim([x % P for x in f])
    if len(f) <= 1:
        return []
    xp = ppowmod([0, 1], P, f, P)
    xp_minus_x = list(xp) + [0] * max(0, 2 - len(xp))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % P
    g = pgcd(f, _trim(xp_minus_x), P)
    roots: list[int] = []

    def split(h: list[int]) -> None:
        if len(h) == 2:
            roots.append(-h[0] * pow(h[1], P - 2, P) % P)
            return
        a = 0
        while True:
            w = ppowmod([a, 1], (P - 1) // 2, h, P)
            w = list(w) + [0] * max(0, 1 - len(w))
            w[0] = (w[0] - 1) % P
            d = pgcd(h, _trim(w), P)
            if 1 < len(d) < len(h):
                split(d)
                q = _pdiv_exact(h, d, P)
                split(q)
                return
            a += 1

    if len(g) > 1:
        split(g)
    return sorted(roots)


def _pdiv_exact(f: list[int], g: list[int], P: int) -> list[int]:
    f = [x % P for x in f]
    dg = len(g) - 1
    inv = pow(g[-1], P - 2, P)
    out = [0] * (len(f) - dg)
    for shift in range(len(f) - 1 - dg, -1, -1):
        c = f[shift + dg] * inv % P
        out[shift] = c
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % P
    if any(f[:dg]):
        raise ValueError("polynomial division was not exact")
    return out
