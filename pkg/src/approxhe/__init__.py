"""Leveled approximate homomorphic encryption over Z[x]/(x^N + 1), with toy LWE and lattice tools."""
from .ckks import (
    Ciphertext,
    EvaluationKey,
    PublicKey,
    RotationKey,
    SecretKey,
    add,
    decrypt,
    encrypt,
    keygen,
    multiply,
    rescale,
    rotate,
    rotation_keygen,
)
from .encoding import canonical_norm, decode, encode
from .params import CkksParams, modulus_chain
from .ring import RingElement
from .sampling import RngState

__all__ = [
    "Ciphertext", "CkksParams", "EvaluationKey", "PublicKey", "RingElement", "RngState",
    "RotationKey", "SecretKey", "add", "canonical_norm", "decode", "decrypt", "encode",
    "encrypt", "keygen", "modulus_chain", "multiply", "rescale", "rotate", "rotation_keygen",
]
