"""Arithmetic in Z[x]/(x^N + 1) and its quotients R_q.

Coefficients are Python integers, so moduli never overflow. Whenever a
modulus is attached, coefficients are stored as centered representatives
in ``(-q/2, q/2]``.
"""
from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .errors import FormatError, RingMismatchError
from .sampling import center


@dataclasses.dataclass(frozen=True)
class RingElement:
    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
            coeffs = tuple(center(c, self.modulus) for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, N: int, modulus: int | None = None) -> "RingElement":
        return cls((0,) * N, modulus)

    @classmethod
    def constant(cls, c: int, N: int, modulus: int | None = None) -> "RingElement":
        return cls((c,) + (0,) * (N - 1), modulus)

    def lift(self) -> "RingElement":
        """Drop the modulus, keeping the centered coefficients as integers."""
        return RingElement(self.coeffs)

    def __add__(self, other):
        return ring_add(self, other)

    def __sub__(self, other):
        return ring_sub(self, other)

    def __neg__(self):
        return ring_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return ring_scalar_mul(self, other)
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __str__(self):
        terms = [f"{c}x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(reversed(terms)) or "0"
        return body if self.modulus is None else f"{body} (mod {self.modulus})"


def _common_modulus(a: RingElement, b: RingElement, strict: bool) -> int | None:
    if a.N != b.N:
        raise RingMismatchError(f"ring degrees differ: {a.N} vs {b.N}")
    if a.modulus == b.modulus:
        return a.modulus
    if not strict and (a.modulus is None or b.modulus is None):
        return a.modulus if b.modulus is None else b.modulus
    raise RingMismatchError(f"moduli differ: {a.modulus} vs {b.modulus}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    q = _common_modulus(a, b, strict=True)
    return RingElement(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), q)


def ring_sub(a: RingElement, b: RingElement) -> RingElement:
    q = _common_modulus(a, b, strict=True)
    return RingElement(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), q)


def ring_neg(a: RingElement) -> RingElement:
    return RingElement(tuple(-x for x in a.coeffs), a.modulus)


def ring_scalar_mul(a: RingElement, k: int) -> RingElement:
    return RingElement(tuple(k * x for x in a.coeffs), a.modulus)


def negacyclic_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """O(N^2) product modulo x^N + 1. Reference path."""
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            k = i + j
            if k < n:
                out[k] += ai * bj
            else:
                out[k - n] -= ai * bj
    return out


def negacyclic_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product modulo x^N + 1 via Kronecker substitution into one big integer.

    Each coefficient is packed into a fixed-width byte slot (biased to be
    non-negative) so a single big-integer multiplication does the convolution.
    """
    n = len(a)
    bound = n * max(map(abs, a), default=0) * max(map(abs, b), default=0)
    if bound == 0:
        return [0] * n
    width = (bound.bit_length() + 2 + 7) // 8  # bytes per slot, room for sign
    half = 1 << (8 * width - 1)

    def pack(v):
        raw = b"".join((c + half).to_bytes(width, "little") for c in v)
        bias = int.from_bytes(half.to_bytes(width, "little") * len(v), "little")
        return int.from_bytes(raw, "little") - bias

    prod = pack(a) * pack(b)
    slots = 2 * n
    prod += int.from_bytes(half.to_bytes(width, "little") * slots, "little")
    raw = prod.to_bytes(slots * width, "little")
    full = [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half for i in range(slots)]
    return [full[i] - full[i + n] for i in range(n)]


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Negacyclic product; an element without modulus adopts the other's."""
    q = _common_modulus(a, b, strict=False)
    return RingElement(tuple(negacyclic_kronecker(a.coeffs, b.coeffs)), q)


def mod_switch(a: RingElement, q_new: int) -> RingElement:
    """Re-reduce the (centered) coefficients modulo ``q_new``."""
    if q_new < 1:
        raise ValueError("q_new must be positive")
    return RingElement(a.coeffs, q_new)


def round_div(x: int, d: int) -> int:
    """Nearest integer to x/d, ties away from zero."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    if d < 0:
        x, d = -x, -d
    quo, rem = divmod(abs(x), d)
    if 2 * rem >= d:
        quo += 1
    return quo if x >= 0 else -quo


def round_scale(a: RingElement, num: int, den: int) -> RingElement:
    """Coefficient-wise nearest integer of ``num/den * c``; modulus is cleared."""
    return RingElement(tuple(round_div(num * c, den) for c in a.coeffs))


def automorphism(a: RingElement, k: int) -> RingElement:
    """Apply x -> x^k in Z[x]/(x^N + 1)."""
    n = a.N
    m = 2 * n
    if not (0 < k < m) or k % 2 == 0:
        raise ValueError(f"Galois exponent {k} must be odd and in (0, {m})")
    out = [0] * n
    for i, c in enumerate(a.coeffs):
        e = i * k % m
        if e >= n:
            out[e - n] -= c
        else:
            out[e] += c
    return RingElement(tuple(out), a.modulus)


def dumps(a: RingElement) -> str:
    q = "none" if a.modulus is None else str(a.modulus)
    return f"N={a.N}\nq={q}\n" + " ".join(str(c) for c in a.coeffs) + "\n"


def parse_lines(lines: Iterable[str]) -> RingElement:
    lines = list(lines)
    if len(lines) != 3:
        raise FormatError("ring element needs exactly three lines")
    head_n, head_q, body = lines
    try:
        if not head_n.startswith("N=") or not head_q.startswith("q="):
            raise ValueError
        n = int(head_n[2:])
        q_text = head_q[2:].strip()
        q = None if q_text == "none" else int(q_text)
        coeffs = tuple(int(c) for c in body.split())
    except ValueError:
        raise FormatError("malformed ring element") from None
    if len(coeffs) != n:
        raise FormatError(f"expected {n} coefficients, found {len(coeffs)}")
    elem = RingElement(coeffs, q)
    if elem.coeffs != coeffs:
        raise FormatError("coefficients are not centered representatives")
    return elem


def loads(text: str) -> RingElement:
    return parse_lines(text.strip("\n").split("\n"))
