"""Text files for keys and ciphertexts.

Each file is a header line ``type=<kind> level=<l> scale=<int> k=<exp|->``
followed by one three-line ring element block per component.
"""
from __future__ import annotations

from pathlib import Path

from . import ring
from .ckks import Ciphertext, PublicKey, SecretKey, SwitchingKey
from .errors import FormatError
from .params import CkksParams
from .ring import RingElement

_COMPONENTS = {"sk": 1, "pk": 2, "evk": 2, "rotk": 2, "ct": 2}


def _header(kind: str, level: int, scale: int, k: int | None) -> str:
    return f"type={kind} level={level} scale={scale} k={'-' if k is None else k}\n"


def dumps(obj) -> str:
    if isinstance(obj, Ciphertext):
        head = _header("ct", obj.level, obj.scale, None)
        parts = (obj.c0, obj.c1)
    elif isinstance(obj, SecretKey):
        head = _header("sk", obj.params.L, 1, None)
        parts = (obj.s,)
    elif isinstance(obj, PublicKey):
        head = _header("pk", obj.params.L, 1, None)
        parts = (obj.b, obj.a)
    elif isinstance(obj, SwitchingKey):
        kind = "evk" if obj.k is None else "rotk"
        head = _header(kind, obj.params.L, 1, obj.k)
        parts = (obj.b, obj.a)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return head + "".join(ring.dumps(p) for p in parts)


def _parse_header(line: str) -> dict[str, str]:
    fields = dict(tok.split("=", 1) for tok in line.split() if "=" in tok)
    if set(fields) != {"type", "level", "scale", "k"} or fields["type"] not in _COMPONENTS:
        raise FormatError(f"bad artifact header: {line!r}")
    return fields


def loads(text: str, params: CkksParams):
    lines = text.strip("\n").split("\n")
    head = _parse_header(lines[0])
    kind = head["type"]
    want = _COMPONENTS[kind]
    if len(lines) != 1 + 3 * want:
        raise FormatError(f"{kind} artifact needs {want} ring blocks")
    parts: list[RingElement] = [ring.parse_lines(lines[1 + 3 * i:4 + 3 * i]) for i in range(want)]
    if any(p.N != params.N for p in parts):
        raise FormatError("ring degree does not match the parameters")
    try:
        level, scale = int(head["level"]), int(head["scale"])
        k = None if head["k"] == "-" else int(head["k"])
    except ValueError:
        raise FormatError("non-integer header field") from None
    if kind == "ct":
        return Ciphertext(parts[0], parts[1], level, scale, params)
    if kind == "sk":
        return SecretKey(parts[0], params)
    if kind == "pk":
        return PublicKey(parts[0], parts[1], params)
    return SwitchingKey(parts[0], parts[1], params, k)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def load(path, params: CkksParams, expect: str | None = None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    obj = loads(text, params)
    if expect is not None and _parse_header(text.split("\n", 1)[0])["type"] != expect:
        raise FormatError(f"{path} is not a {expect} artifact")
    return obj


def load_poly(path) -> RingElement:
    try:
        return ring.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def save_poly(poly: RingElement, path) -> None:
    Path(path).write_text(ring.dumps(poly))
