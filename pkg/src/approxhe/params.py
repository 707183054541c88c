"""Public parameters and the modulus chain."""
from __future__ import annotations

import dataclasses
from pathlib import Path

from .errors import FormatError, ParamsError


@dataclasses.dataclass(frozen=True)
class CkksParams:
    """All public parameters of the scheme.

    ``P`` defaults to ``q_L`` when left as ``None``.
    """

    M: int
    N: int
    delta: int
    p: int
    q0: int
    L: int
    sigma_err: float
    h: int
    P: int | None = None

    def __post_init__(self):
        validate(self)
        if self.P is None:
            object.__setattr__(self, "P", self.p**self.L * self.q0)

    @property
    def q_L(self) -> int:
        return self.p**self.L * self.q0

    @property
    def slots(self) -> int:
        return self.N // 2

    def q(self, level: int) -> int:
        if not 0 <= level <= self.L:
            raise ParamsError(f"level {level} outside [0, {self.L}]")
        return self.p**level * self.q0

    def chain(self) -> list[int]:
        return modulus_chain(self)

    def replace(self, **changes) -> "CkksParams":
        return dataclasses.replace(self, **changes)


def modulus_chain(params: CkksParams) -> list[int]:
    """Return ``[q_0, ..., q_L]`` with ``q_l = p**l * q0``."""
    return [params.p**l * params.q0 for l in range(params.L + 1)]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate(params: CkksParams) -> None:
    """Raise :class:`ParamsError` naming the first violated invariant."""
    for name in ("M", "N", "delta", "p", "q0", "L", "h"):
        if not _is_int(getattr(params, name)):
            raise ParamsError(f"{name} must be an integer")
    M, N = params.M, params.N
    if M <= 2 or M & (M - 1):
        raise ParamsError(f"M={M} is not a power of two greater than 2")
    if 2 * N != M:
        raise ParamsError(f"N={N} must equal M/2={M // 2}")
    if params.delta <= 0:
        raise ParamsError("delta must be positive")
    if params.p < 2:
        raise ParamsError("p must be at least 2")
    if params.q0 <= 0:
        raise ParamsError("q0 must be positive")
    if params.L < 0:
        raise ParamsError("L must be non-negative")
    if not params.sigma_err > 0:
        raise ParamsError("sigma_err must be positive")
    if params.h < 0:
        raise ParamsError("h must be non-negative")
    if params.h > N:
        raise ParamsError(f"h={params.h} exceeds N={N}")
    if params.P is not None and (not _is_int(params.P) or params.P <= 0):
        raise ParamsError("P must be a positive integer")


# The worked example's chain [5, 20, 80, 320, 1280] is generated by p = 4.
TOY = CkksParams(M=8, N=4, delta=64, p=4, q0=5, L=4, sigma_err=3.2, h=2)
DEMO = CkksParams(M=2048, N=1024, delta=2**30, p=2**30, q0=2**40, L=3, sigma_err=3.2, h=64)
PRESETS = {"toy": TOY, "demo": DEMO}

_FIELDS = ("M", "N", "delta", "p", "q0", "L", "sigma_err", "h", "P")


def dumps(params: CkksParams) -> str:
    lines = []
    for name in _FIELDS:
        value = getattr(params, name)
        lines.append(f"{name}={value!r}" if name == "sigma_err" else f"{name}={value}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> CkksParams:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or name not in _FIELDS:
            raise FormatError(f"params line {lineno}: unexpected {raw!r}")
        try:
            values[name] = float(value) if name == "sigma_err" else int(value)
        except ValueError:
            raise FormatError(f"params line {lineno}: bad value for {name}") from None
    missing = [f for f in _FIELDS[:-1] if f not in values]
    if missing:
        raise FormatError(f"params missing fields: {', '.join(missing)}")
    return CkksParams(**values)


def save(params: CkksParams, path) -> None:
    Path(path).write_text(dumps(params))


def load(path) -> CkksParams:
    return loads(Path(path).read_text())
