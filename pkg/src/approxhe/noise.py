"""Fresh-encryption noise bound and measured ciphertext noise."""
from __future__ import annotations

import dataclasses
import math

from .ckks import Ciphertext, SecretKey, decrypt
from .encoding import canonical_norm
from .params import CkksParams
from .ring import RingElement


@dataclasses.dataclass(frozen=True)
class NoiseBudget:
    b_clean: float
    level: int
    measured: float | None = None

    def __post_init__(self):
        if not self.b_clean > 0:
            raise ValueError("b_clean must be positive")

    @property
    def within_bound(self) -> bool | None:
        return None if self.measured is None else self.measured < self.b_clean


def b_clean(params: CkksParams) -> float:
    """High-probability canonical-norm bound on fresh encryption noise."""
    sigma, n, h = params.sigma_err, params.N, params.h
    return 8 * math.sqrt(2) * sigma * n + 6 * sigma * math.sqrt(n) + 16 * sigma * math.sqrt(h * n)


def decode_safe(params: CkksParams) -> bool:
    """Whether delta is large enough for decoding to recover Gaussian-integer slots."""
    return params.delta > params.N + 2 * b_clean(params)


def noise_poly(sk: SecretKey, c: Ciphertext, m_expected: RingElement) -> RingElement:
    q = c.params.q(c.level)
    return RingElement((decrypt(sk, c) - m_expected.lift()).coeffs, q).lift()


def measured_noise(sk: SecretKey, c: Ciphertext, m_expected: RingElement) -> float:
    return canonical_norm(noise_poly(sk, c, m_expected))


def add_bound(n1: float, n2: float) -> float:
    if n1 < 0 or n2 < 0:
        raise ValueError("noise magnitudes are non-negative")
    return n1 + n2


def budget(sk: SecretKey, c: Ciphertext, m_expected: RingElement | None = None) -> NoiseBudget:
    measured = None if m_expected is None else measured_noise(sk, c, m_expected)
    return NoiseBudget(b_clean(c.params), c.level, measured)
