"""Single-bit public-key encryption from LWE.

Secret ``s`` in Z_q^n, public key ``(A, b)`` with ``b = s^T A + e^T``.
A bit is encrypted as ``(A r, b^T r + bit * ceil(q/2))`` for a random
0/1 vector ``r``.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from .sampling import RngState, center


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, math.isqrt(q) + 1))


@dataclasses.dataclass(frozen=True)
class LweParams:
    n: int
    m: int
    q: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")

    @property
    def noise_bound(self) -> Fraction:
        return Fraction(self.q, 4 * self.m)

    @property
    def half(self) -> int:
        return -(-self.q // 2)


@dataclasses.dataclass(frozen=True)
class LweKeys:
    s: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]  # n rows, m columns
    b: tuple[int, ...]
    params: LweParams

    def error(self) -> list[int]:
        """Centered ``b - s^T A``."""
        q = self.params.q
        sA = _row_times(self.s, self.A, q)
        return [center(bj - x, q) for bj, x in zip(self.b, sA)]

    def check(self) -> bool:
        return all(abs(x) <= self.params.noise_bound for x in self.error())


def _row_times(s, A, q) -> list[int]:
    m = len(A[0])
    return [sum(si * row[j] for si, row in zip(s, A)) % q for j in range(m)]


def lwe_gen(params: LweParams, rng: RngState, error: list[int] | None = None) -> LweKeys:
    """Sample keys; ``error`` fixes e instead of drawing it."""
    n, m, q = params.n, params.m, params.q
    r = rng.random
    s = tuple(r.randrange(q) for _ in range(n))
    A = tuple(tuple(r.randrange(q) for _ in range(m)) for _ in range(n))
    bound = math.floor(params.noise_bound)
    e = error if error is not None else [r.randint(-bound, bound) for _ in range(m)]
    if len(e) != m:
        raise ValueError("error vector has the wrong length")
    sA = _row_times(s, A, q)
    b = tuple((x + ej) % q for x, ej in zip(sA, e))
    return LweKeys(s, A, b, params)


def lwe_enc(keys: LweKeys, bit: int, rng: RngState, r: list[int] | None = None) -> tuple[tuple[int, ...], int]:
    if bit not in (0, 1):
        raise ValueError("message must be a single bit")
    params = keys.params
    q, m = params.q, params.m
    if r is None:
        r = [rng.random.randrange(2) for _ in range(m)]
    u = tuple(sum(a * rj for a, rj in zip(row, r)) % q for row in keys.A)
    v = (sum(bj * rj for bj, rj in zip(keys.b, r)) + bit * params.half) % q
    return u, v


def lwe_dec(s, ct, q: int) -> int:
    u, v = ct
    dist = abs(center(v - sum(si * ui for si, ui in zip(s, u)), q))
    return 0 if 4 * dist < q else 1
