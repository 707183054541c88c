"""Key generation, encryption and homomorphic evaluation."""
from __future__ import annotations

import dataclasses
import math

from . import encoding
from .errors import KeyMaterialError, LevelError, PlaintextRangeError
from .params import CkksParams
from .ring import RingElement, automorphism, mod_switch, round_scale
from .sampling import RngState, sample_dg, sample_hwt, sample_uniform, sample_zo

ZO_DENSITY = 0.5


@dataclasses.dataclass(frozen=True)
class SecretKey:
    s: RingElement
    params: CkksParams = dataclasses.field(compare=False)

    def __post_init__(self):
        if any(c not in (-1, 0, 1) for c in self.s.coeffs):
            raise KeyMaterialError("secret must be ternary")
        weight = sum(1 for c in self.s.coeffs if c)
        if weight != self.params.h:
            raise KeyMaterialError(f"secret has weight {weight}, expected h={self.params.h}")


@dataclasses.dataclass(frozen=True)
class PublicKey:
    b: RingElement
    a: RingElement
    params: CkksParams = dataclasses.field(compare=False)


@dataclasses.dataclass(frozen=True)
class SwitchingKey:
    """Encryption of ``P * target`` under s, modulo ``P * q_L``.

    The evaluation key has target s^2; a rotation key for exponent k has
    target s(x^k) and records ``k``.
    """

    b: RingElement
    a: RingElement
    params: CkksParams = dataclasses.field(compare=False)
    k: int | None = None


EvaluationKey = SwitchingKey
RotationKey = SwitchingKey


@dataclasses.dataclass(frozen=True)
class Ciphertext:
    c0: RingElement
    c1: RingElement
    level: int
    scale: int
    params: CkksParams = dataclasses.field(compare=False)

    def __post_init__(self):
        q = self.params.q(self.level)
        if self.c0.modulus != q or self.c1.modulus != q:
            raise LevelError(f"components must be reduced mod q_{self.level}={q}")


def _ring(coeffs, q=None) -> RingElement:
    return RingElement(tuple(coeffs), q)


def key_error(key: PublicKey | SwitchingKey, sk: SecretKey, target: RingElement | None = None) -> RingElement:
    """Centered ``b + a*s - P*target``: the noise a key was built with."""
    q = key.b.modulus
    err = key.b + key.a * sk.s
    if target is not None:
        err = err - mod_switch(target * key.params.P, q)
    return err.lift()


def _check_key_noise(key, sk, target=None) -> None:
    params = sk.params
    limit = 8 * params.sigma_err * math.sqrt(params.N)
    norm = encoding.canonical_norm(key_error(key, sk, target))
    if norm > limit:
        raise KeyMaterialError(f"key noise {norm:.1f} exceeds sanity bound {limit:.1f}")


def _switching_key(params: CkksParams, sk: SecretKey, target: RingElement, rng: RngState, k=None) -> SwitchingKey:
    big_q = params.P * params.q_L
    a = _ring(sample_uniform(params.N, big_q, rng), big_q)
    e = _ring(sample_dg(params.N, params.sigma_err**2, rng))
    b = -(a * sk.s) + mod_switch(e + target * params.P, big_q)
    key = SwitchingKey(b, a, params, k)
    _check_key_noise(key, sk, target)
    return key


def keygen(params: CkksParams, rng: RngState) -> tuple[SecretKey, PublicKey, EvaluationKey]:
    N, q = params.N, params.q_L
    s = _ring(sample_hwt(N, params.h, rng))
    sk = SecretKey(s, params)
    a = _ring(sample_uniform(N, q, rng), q)
    e = _ring(sample_dg(N, params.sigma_err**2, rng))
    b = -(a * s) + mod_switch(e, q)
    pk = PublicKey(b, a, params)
    _check_key_noise(pk, sk)
    evk = _switching_key(params, sk, s * s, rng)
    return sk, pk, evk


def rotation_keygen(sk: SecretKey, k: int, rng: RngState) -> RotationKey:
    return _switching_key(sk.params, sk, automorphism(sk.s, k), rng, k=k)


def encrypt(pk: PublicKey, m: RingElement, params: CkksParams, rng: RngState, scale: int | None = None) -> Ciphertext:
    q = params.q_L
    if m.N != params.N:
        raise PlaintextRangeError(f"plaintext degree {m.N} != N={params.N}")
    biggest = max(map(abs, m.coeffs), default=0)
    if 4 * biggest >= q:
        raise PlaintextRangeError(f"plaintext coefficient {biggest} is not below q_L/4")
    N, var = params.N, params.sigma_err**2
    v = _ring(sample_zo(N, ZO_DENSITY, rng))
    e0 = _ring(sample_dg(N, var, rng))
    e1 = _ring(sample_dg(N, var, rng))
    c0 = v * pk.b + mod_switch(m.lift() + e0, q)
    c1 = v * pk.a + mod_switch(e1, q)
    return Ciphertext(c0, c1, params.L, params.delta if scale is None else scale, params)


def trivial_encrypt(m: RingElement, params: CkksParams, level: int | None = None, scale: int | None = None) -> Ciphertext:
    """Noiseless ciphertext ``(m, 0)``."""
    level = params.L if level is None else level
    q = params.q(level)
    return Ciphertext(mod_switch(m, q), RingElement.zero(params.N, q), level,
                      params.delta if scale is None else scale, params)


def decrypt(sk: SecretKey, c: Ciphertext) -> RingElement:
    return (c.c0 + c.c1 * sk.s).lift()


def add(c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    if c1.level != c2.level:
        raise LevelError(f"levels differ: {c1.level} vs {c2.level}")
    if c1.scale != c2.scale:
        raise LevelError(f"scales differ: {c1.scale} vs {c2.scale}")
    return Ciphertext(c1.c0 + c2.c0, c1.c1 + c2.c1, c1.level, c1.scale, c1.params)


def key_switch(d: RingElement, key: SwitchingKey, level: int) -> tuple[RingElement, RingElement]:
    """Pair (t0, t1) mod q_level with t0 + t1*s ~ d * target."""
    params = key.params
    q = params.q(level)
    big_q = params.P * q
    d = d.lift()
    t0 = round_scale(d * mod_switch(key.b, big_q), 1, params.P)
    t1 = round_scale(d * mod_switch(key.a, big_q), 1, params.P)
    return mod_switch(t0, q), mod_switch(t1, q)


def tensor(c1: Ciphertext, c2: Ciphertext) -> tuple[RingElement, RingElement, RingElement]:
    """The three-component product (d0, d1, d2) before relinearization."""
    if c1.level != c2.level:
        raise LevelError(f"levels differ: {c1.level} vs {c2.level}")
    b1, a1, b2, a2 = c1.c0, c1.c1, c2.c0, c2.c1
    return b1 * b2, a1 * b2 + a2 * b1, a1 * a2


def multiply(c1: Ciphertext, c2: Ciphertext, evk: EvaluationKey) -> Ciphertext:
    d0, d1, d2 = tensor(c1, c2)
    q = c1.params.q(c1.level)
    scale = c1.scale * c2.scale
    if 2 * scale >= q:
        raise LevelError(f"product scale {scale} is not below q_{c1.level}/2")
    t0, t1 = key_switch(d2, evk, c1.level)
    return Ciphertext(d0 + t0, d1 + t1, c1.level, scale, c1.params)


def rescale(c: Ciphertext, l_new: int) -> Ciphertext:
    if not 0 <= l_new < c.level:
        raise LevelError(f"cannot rescale from level {c.level} to {l_new}")
    params = c.params
    factor = params.p ** (c.level - l_new)
    if c.scale % factor:
        raise LevelError(f"scale {c.scale} is not divisible by p^{c.level - l_new}")
    q_old, q_new = params.q(c.level), params.q(l_new)
    c0 = mod_switch(round_scale(c.c0, q_new, q_old), q_new)
    c1 = mod_switch(round_scale(c.c1, q_new, q_old), q_new)
    return Ciphertext(c0, c1, l_new, c.scale // factor, params)


def rotate_unswitched(c: Ciphertext, k: int) -> Ciphertext:
    """Apply x -> x^k to both components; the result decrypts under s(x^k)."""
    return Ciphertext(automorphism(c.c0, k), automorphism(c.c1, k), c.level, c.scale, c.params)


def rotated_secret(sk: SecretKey, k: int) -> SecretKey:
    return SecretKey(automorphism(sk.s, k), sk.params)


def rotate(c: Ciphertext, k: int, rotk: RotationKey) -> Ciphertext:
    """Permute slots via x -> x^k and switch back to the original secret."""
    if rotk is None or rotk.k != k:
        raise KeyMaterialError(f"no rotation key for exponent {k}")
    moved = rotate_unswitched(c, k)
    t0, t1 = key_switch(moved.c1, rotk, c.level)
    return Ciphertext(moved.c0 + t0, t1, c.level, c.scale, c.params)
