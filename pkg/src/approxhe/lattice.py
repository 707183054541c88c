"""Exact lattice computations at desk scale.

All arithmetic is over :class:`fractions.Fraction`, so orthogonality,
determinants and the half-open parallelepiped test are decided exactly.
Vectors are rows.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import FormatError, LatticeError

MAX_ENUM_DIM = 6

Vector = tuple[Fraction, ...]


def _vec(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm2(v: Sequence[Fraction]) -> Fraction:
    return dot(v, v)


def _combine(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    dim = len(vectors[0])
    return tuple(sum((c * v[i] for c, v in zip(coeffs, vectors)), Fraction(0)) for i in range(dim))


def rank(rows: Sequence[Sequence]) -> int:
    mat = [list(_vec(r)) for r in rows]
    r = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(r + 1, len(mat)):
            f = mat[i][col] / mat[r][col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


def det(rows: Sequence[Sequence]) -> Fraction:
    mat = [list(_vec(r)) for r in rows]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise LatticeError("determinant needs a square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            result = -result
        result *= mat[col][col]
        for i in range(col + 1, n):
            f = mat[i][col] / mat[col][col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return result


def _inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(_vec(r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise LatticeError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


@dataclasses.dataclass(frozen=True)
class Basis:
    vectors: tuple[Vector, ...]

    def __init__(self, vectors: Iterable[Iterable]):
        vecs = tuple(_vec(v) for v in vectors)
        if not vecs:
            raise LatticeError("a basis needs at least one vector")
        if len({len(v) for v in vecs}) != 1:
            raise LatticeError("basis vectors have different dimensions")
        if rank(vecs) != len(vecs):
            raise LatticeError("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def point(self, coeffs: Sequence) -> Vector:
        return _combine(coeffs, self.vectors)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Exact coefficients of ``v`` in this basis, or None outside the span."""
        v = _vec(v)
        if len(v) != self.dim:
            raise LatticeError("vector dimension does not match the basis")
        gram_inv = _inverse([[dot(a, b) for b in self.vectors] for a in self.vectors])
        rhs = [dot(b, v) for b in self.vectors]
        y = tuple(dot(row, rhs) for row in gram_inv)
        return y if self.point(y) == v else None


def _as_basis(B) -> Basis:
    return B if isinstance(B, Basis) else Basis(B)


def _gso(B: Basis):
    bstar: list[Vector] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * B.n for _ in range(B.n)]
    for i, b in enumerate(B.vectors):
        v = b
        for j in range(i):
            mu[i][j] = dot(b, bstar[j]) / norms[j]
            v = tuple(x - mu[i][j] * y for x, y in zip(v, bstar[j]))
        mu[i][i] = Fraction(1)
        bstar.append(v)
        norms.append(norm2(v))
    return bstar, mu, norms


def gram_schmidt(B) -> list[Vector]:
    """Orthogonalized vectors b~_i = b_i minus projections onto earlier b~_j."""
    return _gso(_as_basis(B))[0]


def lambda1_lower_bound_sq(B) -> Fraction:
    return min(_gso(_as_basis(B))[2])


def lambda1_lower_bound(B) -> float:
    """``min_i ||b~_i||``, a lower bound on the shortest vector length."""
    return math.sqrt(lambda1_lower_bound_sq(B))


def _is_integral(x) -> bool:
    return Fraction(x).denominator == 1


def is_unimodular(U: Sequence[Sequence]) -> bool:
    rows = [list(r) for r in U]
    if any(len(r) != len(rows) for r in rows):
        raise LatticeError("unimodularity needs a square matrix")
    if not all(_is_integral(x) for r in rows for x in r):
        return False
    return abs(det(rows)) == 1


def _coord_matrix(V: Sequence, B: Basis) -> list[tuple[Fraction, ...]] | None:
    out = []
    for v in V:
        y = B.coordinates(v)
        if y is None:
            return None
        out.append(y)
    return out


def same_lattice(B1, B2) -> bool:
    B1, B2 = _as_basis(B1), _as_basis(B2)
    if B1.dim != B2.dim:
        raise LatticeError("bases live in different dimensions")
    if B1.n != B2.n:
        raise LatticeError(f"ranks differ: {B1.n} vs {B2.n}")
    U = _coord_matrix(B2.vectors, B1)
    return U is not None and is_unimodular(U)


def in_parallelepiped(v: Sequence, B) -> bool:
    """Whether ``v`` lies in the half-open box {sum y_i b_i : 0 <= y_i < 1}."""
    y = _as_basis(B).coordinates(v)
    if y is None:
        raise LatticeError("vector is outside the span of the basis")
    return all(0 <= c < 1 for c in y)


def _box_points(C: Sequence[Sequence[Fraction]]):
    """Integer vectors x = y C for y in [0, 1)^k (a superset)."""
    ranges = []
    for col in zip(*C):
        lo = sum((c for c in col if c < 0), Fraction(0))
        hi = sum((c for c in col if c > 0), Fraction(0))
        ranges.append(range(math.floor(lo), math.ceil(hi) + 1))
    return itertools.product(*ranges)


def parallelepiped_points(V, B) -> list[Vector]:
    """Nonzero points of L(B) inside P(V), for vectors V of L(B)."""
    B = _as_basis(B)
    V = Basis(V)
    C = _coord_matrix(V.vectors, B)
    if C is None or not all(_is_integral(x) for r in C for x in r):
        raise LatticeError("candidate vectors are not in the lattice")
    found = []
    for x in _box_points(C):
        if not any(x):
            continue
        p = B.point(x)
        y = V.coordinates(p)
        if y is not None and all(0 <= c < 1 for c in y):
            found.append(p)
    return found


def is_basis_of(V, B) -> bool:
    """True iff lattice vectors V form a basis: P(V) meets L(B) only at 0."""
    B = _as_basis(B)
    V = [_vec(v) for v in V]
    if len(V) != B.n:
        raise LatticeError(f"need {B.n} vectors, got {len(V)}")
    if rank(V) != len(V):
        raise LatticeError("candidate vectors are linearly dependent")
    return not parallelepiped_points(V, B)


def _enumerate(B: Basis, target: Vector, radius2: Fraction, skip_zero: bool):
    """Lattice point minimizing the distance to ``target``'s projection.

    Depth-first over coefficients from the last basis vector down, pruning
    with the Gram-Schmidt decomposition of the squared distance; the radius
    shrinks whenever a better point is found.
    """
    bstar, mu, norms = _gso(B)
    n = B.n
    tau = [dot(target, bstar[j]) / norms[j] for j in range(n)]
    best: list = [None, radius2]
    x = [0] * n

    def walk(j: int, used: Fraction):
        if j < 0:
            if skip_zero and not any(x):
                return
            if used <= best[1] and (best[0] is None or used < best[1]):
                best[0], best[1] = tuple(x), used
            return
        c = tau[j] - sum((x[i] * mu[i][j] for i in range(j + 1, n)), Fraction(0))
        room = best[1] - used
        if room < 0:
            return
        spread = math.sqrt(room / norms[j])
        lo, hi = math.floor(c - spread) - 1, math.ceil(c + spread) + 1
        # nearest candidates first so the radius tightens early
        for xj in sorted(range(lo, hi + 1), key=lambda k: abs(k - c)):
            cost = used + (xj - c) ** 2 * norms[j]
            if cost <= best[1]:
                x[j] = xj
                walk(j - 1, cost)
        x[j] = 0

    walk(n - 1, Fraction(0))
    return best[0]


def _check_dim(B: Basis) -> None:
    if B.n > MAX_ENUM_DIM:
        raise LatticeError(f"enumeration limited to rank {MAX_ENUM_DIM}, got {B.n}")


def brute_force_svp(B, radius_multiplier: float = 1.0) -> Vector:
    """A shortest nonzero vector of L(B), by exhaustive pruned enumeration.

    The search radius is ``radius_multiplier`` times the shortest basis
    vector, which already bounds the minimum from above.
    """
    B = _as_basis(B)
    _check_dim(B)
    if radius_multiplier < 1:
        raise LatticeError("radius multiplier below 1 may miss the shortest vector")
    r2 = Fraction(radius_multiplier) ** 2 * min(norm2(b) for b in B.vectors)
    coeffs = _enumerate(B, (Fraction(0),) * B.dim, r2, skip_zero=True)
    return B.point(coeffs)


def babai_round(B, t: Sequence) -> Vector:
    """Round the coordinates of t's projection onto span(B)."""
    B = _as_basis(B)
    t = _vec(t)
    bstar, _, norms = _gso(B)
    perp = t
    for bs, nb in zip(bstar, norms):
        perp = tuple(a - dot(t, bs) / nb * b for a, b in zip(perp, bs))
    proj = tuple(a - b for a, b in zip(t, perp))
    y = B.coordinates(proj)
    return B.point([round(c) for c in y])


def brute_force_cvp(B, t: Sequence) -> Vector:
    """Exact nearest lattice point to ``t``."""
    B = _as_basis(B)
    _check_dim(B)
    t = _vec(t)
    if len(t) != B.dim:
        raise LatticeError("target dimension does not match the basis")
    start = babai_round(B, t)
    r2 = norm2(tuple(a - b for a, b in zip(start, t)))
    coeffs = _enumerate(B, t, r2, skip_zero=False)
    return B.point(coeffs) if coeffs is not None else start


def _integer_echelon(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row echelon form over Z (Euclidean elimination); spans the same lattice."""
    mat = [list(map(int, r)) for r in rows]
    r = 0
    for col in range(len(mat[0])):
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][col]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(mat[i][col]))
            mat[r], mat[piv] = mat[piv], mat[r]
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][col]:
                    f = mat[i][col] // mat[r][col]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
                    done = done and mat[i][col] == 0
            if done:
                r += 1
                break
        if r == len(mat):
            break
    return [row for row in mat if any(row)]


def _dist2_to_span(v: Vector, vectors: Sequence[Vector]) -> Fraction:
    perp = v
    for bs, nb in zip(*_gso(Basis(vectors))[::2]):
        perp = tuple(a - dot(v, bs) / nb * b for a, b in zip(perp, bs))
    return norm2(perp)


def basis_from_generators(G: Sequence[Sequence[int]]) -> Basis:
    """Basis of the integer span of ``G`` built one shortest step at a time.

    Start from a shortest nonzero lattice vector. While the span is not
    exhausted, take a generator y outside the current span and adjoin the
    lattice point of P(v_1, ..., v_i, y) outside the span that is closest to
    it (y itself when the parallelepiped holds none).
    """
    G = [list(map(int, g)) for g in G]
    if not G or not any(any(g) for g in G):
        raise LatticeError("generators are empty or all zero")
    aux = Basis(_integer_echelon(G))
    chosen = [brute_force_svp(aux)]
    while len(chosen) < aux.n:
        span = Basis(chosen)
        y = next(_vec(g) for g in G if span.coordinates(g) is None)
        cands = parallelepiped_points(chosen + [y], aux)
        cands = [z for z in cands if span.coordinates(z) is None] + [y]
        chosen.append(min(cands, key=lambda z: _dist2_to_span(z, chosen)))
    return Basis(chosen)


def parse_rational(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational number: {token!r}") from None


def loads_matrix(text: str) -> list[Vector]:
    """First line ``n m``, then n rows of m rationals (``p/q`` or integers)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError("matrix header must be 'n m'") from None
    rows = [tuple(parse_rational(t) for t in ln.split()) for ln in lines[1:]]
    if len(rows) != n or any(len(r) != m for r in rows):
        raise FormatError(f"expected {n} rows of {m} entries")
    return rows


def load_matrix(path) -> list[Vector]:
    return loads_matrix(Path(path).read_text())


def format_vector(v: Sequence[Fraction]) -> str:
    return " ".join(str(x) for x in v)
