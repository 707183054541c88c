"""Canonical embedding and the message <-> plaintext encoding.

Embedding coordinates are indexed by the odd exponents 1, 3, ..., M-1 in
ascending order. The N/2 message slots are the exponents below M/2, and the
coordinate at exponent M-j holds the conjugate of the one at exponent j.
"""
from __future__ import annotations

import functools
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EncodingError, FormatError
from .ring import RingElement
from .sampling import RngState

RESIDUAL_TOL = 1e-6


class EmbeddingContext:
    """Evaluation matrix of the monomials at the primitive M-th roots of unity."""

    def __init__(self, M: int):
        if M <= 2 or M & (M - 1):
            raise EncodingError(f"M={M} must be a power of two greater than 2")
        self.M = M
        self.N = M // 2
        self.zeta = complex(math.cos(2 * math.pi / M), math.sin(2 * math.pi / M))
        self.exponents = list(range(1, M, 2))
        # Reduce exponents mod M before evaluating to keep the entries accurate.
        powers = np.outer(self.exponents, np.arange(self.N)) % M
        self.vandermonde = np.exp(2j * np.pi * powers / M)

    @property
    def basis(self) -> np.ndarray:
        """Columns are beta_i = sigma(x^i)."""
        return self.vandermonde


@functools.lru_cache(maxsize=None)
def context(M: int) -> EmbeddingContext:
    return EmbeddingContext(M)


def _ctx_for(n: int) -> EmbeddingContext:
    return context(2 * n)


def _scale(v: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(v), initial=0.0)))


def canonical_embed(a: RingElement | Sequence[int]) -> np.ndarray:
    coeffs = a.coeffs if isinstance(a, RingElement) else tuple(a)
    ctx = _ctx_for(len(coeffs))
    return ctx.vandermonde @ np.array([float(c) for c in coeffs])


def embed_inverse(v: Sequence[complex]) -> np.ndarray:
    """Solve the Vandermonde system for complex coefficients.

    The columns of the system are orthogonal with squared norm N, so the
    inverse is the conjugate transpose divided by N.
    """
    v = np.asarray(v, dtype=complex)
    ctx = _ctx_for(len(v))
    alpha = ctx.vandermonde.conj().T @ v / ctx.N
    residual = np.max(np.abs(ctx.vandermonde @ alpha - v), initial=0.0)
    if residual > RESIDUAL_TOL * _scale(v):
        raise EncodingError(f"embedding inverse residual {residual:.3g} too large")
    return alpha


def pi_expand(z: Sequence[complex]) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z, np.conj(z[::-1])])


def pi_restrict(v: Sequence[complex]) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    half = len(v) // 2
    if len(v) % 2:
        raise EncodingError("embedding vector must have even length")
    gap = np.max(np.abs(v[half:] - np.conj(v[:half][::-1])), initial=0.0)
    if gap > RESIDUAL_TOL * _scale(v):
        raise EncodingError(f"vector is not conjugate-symmetric (gap {gap:.3g})")
    return v[:half].copy()


def project_onto_sigma(v: Sequence[complex]) -> np.ndarray:
    """Real coordinates z_i = <v, beta_i> / ||beta_i||^2 in the basis sigma(x^i)."""
    v = np.asarray(v, dtype=complex)
    ctx = _ctx_for(len(v))
    proj = ctx.vandermonde.conj().T @ v / ctx.N
    if np.max(np.abs(proj.imag), initial=0.0) > RESIDUAL_TOL * _scale(v):
        raise EncodingError("projection has a non-vanishing imaginary part")
    return proj.real


def cwr_round(coeffs: Sequence[float], mode: str = "nearest", rng: RngState | None = None) -> list[int]:
    """Round to integers: ``nearest`` (ties to even) or unbiased ``random``."""
    if mode == "nearest":
        return [int(round(float(c))) for c in coeffs]
    if mode != "random":
        raise EncodingError(f"unknown rounding mode {mode!r}")
    if rng is None:
        raise EncodingError("random rounding needs an RngState")
    out = []
    for c in coeffs:
        lo = math.floor(c)
        out.append(lo + 1 if rng.random.random() < c - lo else lo)
    return out


def encode(z: Sequence[complex], delta: int, mode: str = "nearest", rng: RngState | None = None) -> RingElement:
    z = np.asarray(z, dtype=complex)
    n = 2 * len(z)
    if n < 2 or n & (n - 1):
        raise EncodingError(f"slot count {len(z)} is not N/2 for a power-of-two N")
    ctx = _ctx_for(n)
    scaled = delta * pi_expand(z)
    coords = cwr_round(project_onto_sigma(scaled), mode, rng)
    lattice_point = ctx.vandermonde @ np.array(coords, dtype=float)
    alpha = embed_inverse(lattice_point)
    rounded = np.rint(alpha.real)
    if np.max(np.abs(alpha - rounded), initial=0.0) > RESIDUAL_TOL * _scale(alpha):
        raise EncodingError("reconstructed coefficients are not integral")
    return RingElement(tuple(int(c) for c in rounded))


def decode(m: RingElement, delta: int) -> np.ndarray:
    if m.modulus is not None:
        m = m.lift()
    return pi_restrict(canonical_embed(m)) / delta


def canonical_norm(a: RingElement | Sequence[int]) -> float:
    return float(np.max(np.abs(canonical_embed(a)), initial=0.0))


def round_gaussian(z: Sequence[complex]) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.round(z.real) + 1j * np.round(z.imag)


def slot_sources(k: int, M: int) -> list[int]:
    """For x -> x^k, the embedding index whose value lands in each slot.

    Slot j (exponent e_j) of the transformed plaintext equals the embedding
    coordinate of the original at exponent e_j * k mod M.
    """
    if not (0 < k < M) or k % 2 == 0:
        raise EncodingError(f"Galois exponent {k} must be odd and in (0, {M})")
    return [((e * k) % M - 1) // 2 for e in range(1, M // 2, 2)]


def permute_slots(z: Sequence[complex], k: int) -> np.ndarray:
    """Slots a ciphertext of ``z`` decodes to after the automorphism x -> x^k."""
    full = pi_expand(z)
    return full[slot_sources(k, 2 * len(full))]


def dumps_message(z: Sequence[complex]) -> str:
    return "".join(f"{complex(c).real!r} {complex(c).imag!r}\n" for c in z)


def loads_message(text: str) -> np.ndarray:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise FormatError(f"message line {lineno}: expected '<real> <imag>'")
        try:
            out.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise FormatError(f"message line {lineno}: not a number") from None
    return np.array(out, dtype=complex)


def load_message(path) -> np.ndarray:
    return loads_message(Path(path).read_text())
