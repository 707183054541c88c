"""Seedable samplers for the HWT, DG and ZO distributions and uniform ring elements.

Every sampler first consults the fixed-output overrides carried by the
:class:`RngState`; golden tests use this to replay hand-picked samples.
"""
from __future__ import annotations

import collections
import math
import random
from pathlib import Path

from .errors import FormatError

KINDS = ("hwt", "dg", "zo", "uniform")


class RngState:
    """Deterministic stream plus optional per-sampler override queues.

    Single owner: do not share one instance between threads.
    """

    def __init__(self, seed: int = 0, overrides: dict[str, list[list[int]]] | None = None):
        if not 0 <= seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        self.seed = seed
        self.random = random.Random(seed)
        self._overrides = {k: collections.deque() for k in KINDS}
        for kind, vectors in (overrides or {}).items():
            if kind not in self._overrides:
                raise ValueError(f"unknown sampler kind {kind!r}")
            self._overrides[kind].extend(list(v) for v in vectors)

    def take_override(self, kind: str, n: int) -> list[int] | None:
        queue = self._overrides[kind]
        if not queue:
            return None
        vec = queue.popleft()
        if len(vec) != n:
            raise ValueError(f"{kind} override has length {len(vec)}, expected {n}")
        return vec

    def pending_overrides(self) -> dict[str, int]:
        return {k: len(q) for k, q in self._overrides.items() if q}


def center(x: int, q: int) -> int:
    """Representative of ``x mod q`` in ``(-q/2, q/2]``."""
    r = x % q
    return r - q if r > q // 2 else r


def sample_hwt(n: int, h: int, rng: RngState) -> list[int]:
    """Ternary vector with exactly ``h`` nonzero entries."""
    if h > n:
        raise ValueError(f"Hamming weight {h} exceeds length {n}")
    fixed = rng.take_override("hwt", n)
    if fixed is not None:
        return fixed
    out = [0] * n
    for pos in rng.random.sample(range(n), h):
        out[pos] = rng.random.choice((-1, 1))
    return out


def sample_dg(n: int, sigma2: float, rng: RngState) -> list[int]:
    """Rounded continuous Gaussian with variance ``sigma2``."""
    if not sigma2 > 0:
        raise ValueError("sigma2 must be positive")
    fixed = rng.take_override("dg", n)
    if fixed is not None:
        return fixed
    sigma = math.sqrt(sigma2)
    return [round(rng.random.normalvariate(0.0, sigma)) for _ in range(n)]


def sample_zo(n: int, rho: float, rng: RngState) -> list[int]:
    """Entries are +1 or -1 with probability rho/2 each, else 0."""
    if not 0 < rho < 1:
        raise ValueError("rho must lie in (0, 1)")
    fixed = rng.take_override("zo", n)
    if fixed is not None:
        return fixed
    half = rho / 2
    out = []
    for _ in range(n):
        u = rng.random.random()
        out.append(1 if u < half else -1 if u < rho else 0)
    return out


def sample_uniform(n: int, q: int, rng: RngState) -> list[int]:
    """Uniform centered residues mod ``q``."""
    if q < 1:
        raise ValueError("q must be positive")
    fixed = rng.take_override("uniform", n)
    if fixed is not None:
        return [center(c, q) for c in fixed]
    return [center(rng.random.randrange(q), q) for _ in range(n)]


def parse_overrides(text: str) -> dict[str, list[list[int]]]:
    """Parse an override file: one ``<kind> c_0 c_1 ...`` line per sampler call.

    Coefficients are listed index 0 first. Blank lines and ``#`` comments are skipped.
    """
    out: dict[str, list[list[int]]] = {k: [] for k in KINDS}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *coeffs = line.split()
        if kind not in out:
            raise FormatError(f"override line {lineno}: unknown sampler {kind!r}")
        try:
            out[kind].append([int(c) for c in coeffs])
        except ValueError:
            raise FormatError(f"override line {lineno}: non-integer coefficient") from None
    return out


def load_overrides(path) -> dict[str, list[list[int]]]:
    return parse_overrides(Path(path).read_text())
