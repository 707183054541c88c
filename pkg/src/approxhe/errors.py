"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ApproxHEError(Exception):
    """Base class for library errors."""


class ParamsError(ApproxHEError, ValueError):
    """A parameter set violates one of its invariants."""


class RingMismatchError(ApproxHEError, ValueError):
    """Operands disagree on ring degree or modulus."""


class EncodingError(ApproxHEError, ValueError):
    pass


class LevelError(ApproxHEError, ValueError):
    """Ciphertext levels or scales do not line up."""


class KeyMaterialError(ApproxHEError, ValueError):
    """Missing or mismatched key material."""


class FormatError(ApproxHEError, ValueError):
    """A text artifact could not be parsed."""


class LatticeError(ApproxHEError, ValueError):
    pass


class PlaintextRangeError(ApproxHEError, ValueError):
    """Plaintext coefficients too large for the ciphertext modulus."""
