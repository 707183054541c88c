"""Command-line entry point: ``approxhe <subcommand> ...``.

Exit codes:
  0 success, 2 usage error, 3 malformed or missing file, 4 invalid
  parameters, 5 level/scale mismatch, 6 key material problem,
  7 encoding or plaintext range problem, 8 lattice error, 9 other failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import artifacts, ckks, encoding, lattice, noise, params as params_mod, toy_lwe
from .errors import (
    ApproxHEError,
    EncodingError,
    FormatError,
    KeyMaterialError,
    LatticeError,
    LevelError,
    ParamsError,
    PlaintextRangeError,
)
from .sampling import RngState, load_overrides

EXIT_USAGE = 2
EXIT_CODES = [
    (FormatError, 3),
    (ParamsError, 4),
    (LevelError, 5),
    (KeyMaterialError, 6),
    (EncodingError, 7),
    (PlaintextRangeError, 7),
    (LatticeError, 8),
    (ApproxHEError, 9),
    (ValueError, 9),
]


def exit_code_for(exc: BaseException) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return 9


def _rng(args) -> RngState:
    overrides = load_overrides(args.override) if getattr(args, "override", None) else None
    return RngState(args.seed, overrides)


def _params(args) -> params_mod.CkksParams:
    if not args.params:
        raise FormatError("--params is required for this subcommand")
    try:
        return params_mod.load(args.params)
    except OSError as exc:
        raise FormatError(f"cannot read {args.params}: {exc.strerror}") from None


def cmd_params(args):
    base = params_mod.PRESETS[args.preset]
    changes = {}
    for item in args.set or []:
        name, _, value = item.partition("=")
        changes[name] = float(value) if name == "sigma_err" else int(value)
    if changes:
        if "P" not in changes:
            changes["P"] = None
        base = dataclasses.replace(base, **changes)
    params_mod.save(base, args.out)


def cmd_keygen(args):
    p = _params(args)
    rng = _rng(args)
    sk, pk, evk = ckks.keygen(p, rng)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    artifacts.save(sk, out / "sk.txt")
    artifacts.save(pk, out / "pk.txt")
    artifacts.save(evk, out / "evk.txt")
    for k in args.rotations or []:
        artifacts.save(ckks.rotation_keygen(sk, k, rng), out / f"rotk_{k}.txt")


def cmd_encode(args):
    p = _params(args)
    z = encoding.load_message(args.input)
    if len(z) != p.slots:
        raise EncodingError(f"message has {len(z)} slots, expected {p.slots}")
    rng = _rng(args) if args.mode == "random" else None
    artifacts.save_poly(encoding.encode(z, p.delta, args.mode, rng), args.out)


def cmd_decode(args):
    p = _params(args)
    m = artifacts.load_poly(args.input)
    scale = args.scale or p.delta
    Path(args.out).write_text(encoding.dumps_message(encoding.decode(m, scale)))


def cmd_encrypt(args):
    p = _params(args)
    pk = artifacts.load(args.pk, p, "pk")
    m = artifacts.load_poly(args.input)
    artifacts.save(ckks.encrypt(pk, m, p, _rng(args)), args.out)


def cmd_decrypt(args):
    p = _params(args)
    sk = artifacts.load(args.sk, p, "sk")
    ct = artifacts.load(args.input, p, "ct")
    artifacts.save_poly(ckks.decrypt(sk, ct), args.out)
    if args.scale_out:
        Path(args.scale_out).write_text(f"{ct.scale}\n")


def cmd_eval(args):
    p = _params(args)
    cts = [artifacts.load(f, p, "ct") for f in args.input]
    need = 2 if args.op in ("add", "mul") else 1
    if len(cts) != need:
        raise FormatError(f"eval {args.op} takes {need} ciphertext(s)")
    if args.op == "add":
        out = ckks.add(*cts)
    elif args.op == "mul":
        if not args.evk:
            raise KeyMaterialError("eval mul needs --evk")
        out = ckks.multiply(*cts, artifacts.load(args.evk, p, "evk"))
    elif args.op == "rescale":
        level = cts[0].level - 1 if args.level is None else args.level
        out = ckks.rescale(cts[0], level)
    else:
        if args.k is None or not args.rotk:
            raise KeyMaterialError("eval rotate needs --k and --rotk")
        out = ckks.rotate(cts[0], args.k, artifacts.load(args.rotk, p, "rotk"))
    artifacts.save(out, args.out)


def cmd_noise(args):
    p = _params(args)
    sk = artifacts.load(args.sk, p, "sk")
    ct = artifacts.load(args.ct, p, "ct")
    expect = artifacts.load_poly(args.expect)
    b = noise.budget(sk, ct, expect)
    print(f"measured={b.measured:.6f}")
    print(f"b_clean={b.b_clean:.6f}")
    print(f"within_bound={b.within_bound}")
    print(f"decode_safe={noise.decode_safe(p)}")


def cmd_lwe(args):
    lp = toy_lwe.LweParams(args.n, args.m, args.q)
    rng = RngState(args.seed)
    keys = toy_lwe.lwe_gen(lp, rng)
    print(f"s={list(keys.s)}")
    print(f"b={list(keys.b)}")
    print(f"e={keys.error()}")
    for bit in (0, 1):
        u, v = toy_lwe.lwe_enc(keys, bit, rng)
        got = toy_lwe.lwe_dec(keys.s, (u, v), lp.q)
        print(f"bit={bit} u={list(u)} v={v} decrypted={got}")


def cmd_lattice(args):
    rows = lattice.load_matrix(args.input)
    fmt = lattice.format_vector
    if args.op == "basis":
        for v in lattice.basis_from_generators(rows).vectors:
            print(fmt(v))
        return
    B = lattice.Basis(rows)
    if args.op == "bound":
        print(f"{lattice.lambda1_lower_bound(B):.12g}")
    elif args.op == "svp":
        v = lattice.brute_force_svp(B, args.radius)
        print(fmt(v))
    else:
        if not args.target:
            raise FormatError("lattice cvp needs --target")
        t = [lattice.parse_rational(x) for x in args.target.split()]
        print(fmt(lattice.brute_force_cvp(B, t)))


@dataclasses.dataclass
class PipelineStep:
    op: list[str]
    inputs: list[str] = dataclasses.field(default_factory=list)
    outputs: list[str] = dataclasses.field(default_factory=list)
    seed: int | None = None


@dataclasses.dataclass
class PipelineManifest:
    steps: list[PipelineStep]

    @classmethod
    def load(cls, path) -> "PipelineManifest":
        try:
            raw = json.loads(Path(path).read_text())
            return cls([PipelineStep(**s) for s in raw["steps"]])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise FormatError(f"bad manifest {path}: {exc}") from None

    def run(self, workdir) -> None:
        """Run every step in ``workdir``; each input must exist before its step."""
        workdir = Path(workdir)
        for i, step in enumerate(self.steps):
            missing = [f for f in step.inputs if not (workdir / f).exists()]
            if missing:
                raise FormatError(f"step {i} ({step.op[0]}): missing input {missing[0]}")
            argv = list(step.op)
            if step.seed is not None:
                argv += ["--seed", str(step.seed)]
            cwd = os.getcwd()
            os.chdir(workdir)
            try:
                code = main(argv)
            finally:
                os.chdir(cwd)
            if code:
                raise ApproxHEError(f"step {i} ({step.op[0]}) exited with status {code}")


def cmd_pipeline(args):
    manifest = PipelineManifest.load(args.manifest)
    manifest.run(args.workdir or Path(args.manifest).parent)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for all sampling")
    common.add_argument("--params", help="parameter file (name=value lines)")

    parser = argparse.ArgumentParser(prog="approxhe", description="Approximate homomorphic encryption toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("params", cmd_params, "write a parameter file from a preset")
    sp.add_argument("--preset", choices=sorted(params_mod.PRESETS), default="toy")
    sp.add_argument("--set", action="append", metavar="NAME=VALUE")
    sp.add_argument("--out", required=True)

    sp = add("keygen", cmd_keygen, "generate sk, pk, evk (and rotation keys)")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--rotations", type=lambda s: [int(k) for k in s.split(",") if k], help="comma-separated Galois exponents")
    sp.add_argument("--override", help="sampler-override file")

    sp = add("encode", cmd_encode, "encode a message file into a plaintext polynomial")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--mode", choices=["nearest", "random"], default="nearest")

    sp = add("decode", cmd_decode, "decode a plaintext polynomial into a message file")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--scale", type=int, help="scale to divide by (default delta)")

    sp = add("encrypt", cmd_encrypt, "encrypt a plaintext polynomial")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--override", help="sampler-override file")

    sp = add("decrypt", cmd_decrypt, "decrypt a ciphertext to a plaintext polynomial")
    sp.add_argument("--sk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--scale-out", help="also write the ciphertext scale here")

    sp = add("eval", cmd_eval, "homomorphic add, mul, rescale or rotate")
    sp.add_argument("op", choices=["add", "mul", "rescale", "rotate"])
    sp.add_argument("--in", dest="input", nargs="+", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--evk")
    sp.add_argument("--rotk")
    sp.add_argument("--k", type=int)
    sp.add_argument("--level", type=int, help="target level for rescale (default one down)")

    sp = add("noise", cmd_noise, "measured noise against the fresh-encryption bound")
    sp.add_argument("--sk", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--expect", required=True)

    sp = add("lwe", cmd_lwe, "toy LWE bit-encryption demo")
    sp.add_argument("action", choices=["demo"])
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--m", type=int, default=16)
    sp.add_argument("--q", type=int, default=257)

    sp = add("lattice", cmd_lattice, "brute-force lattice tools")
    sp.add_argument("op", choices=["svp", "cvp", "bound", "basis"])
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--target", help="space-separated rationals for cvp")
    sp.add_argument("--radius", type=float, default=1.0, help="svp radius multiplier")

    sp = add("pipeline", cmd_pipeline, "run a JSON pipeline manifest")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--workdir")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        args.func(args)
    except (ApproxHEError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"error: cannot access {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
