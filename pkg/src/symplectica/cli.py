"""
Command-line interface.

Objects travel as JSON on stdin/stdout or through file arguments. Exit codes:
0 on success, 1 when a mathematical check fails, 2 on I/O or schema errors.
Errors are reported as a JSON object on stderr.
"""

import argparse
import hashlib
import os
import sys
import time

import numpy as np

from . import channels, core, dilation, io, states
from .core import Tolerance, max_norm, num_modes, symplectic_residual
from .exceptions import DimensionError, SchemaError, SymplecticaError

ENV_TOL = "SYMPLECTICA_TOL"


class _Exit(Exception):
    def __init__(self, code, payload):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


def _read(path):
    try:
        if path in (None, "-"):
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise SchemaError(f"{path or 'stdin'} is not UTF-8 text") from None
    return io.loads(text), hashlib.sha256(raw).hexdigest()


def _emit(obj, out=None):
    text = io.dumps(obj) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tolerance(args):
    atol = getattr(args, "abs", None)
    if atol is None:
        env = os.environ.get(ENV_TOL)
        try:
            atol = float(env) if env else core.DEFAULT_TOL.atol
        except ValueError:
            raise SchemaError(f"{ENV_TOL}={env!r} is not a number") from None
    rtol = getattr(args, "rel", None)
    return Tolerance(atol, core.DEFAULT_TOL.rtol if rtol is None else rtol)


def _report(command, digest, started, **fields):
    report = {"command": command, "input_digest": digest}
    report.update(fields)
    report["elapsed_seconds"] = time.perf_counter() - started
    return report


def _dilation_residuals(M, T, n):
    k = 2 * n
    Q = M[k:, :k]
    return {
        "symplecticity": symplectic_residual(M),
        "block_recovery": max_norm(M[:k, :k] - T),
        "psd_margin": channels.quasifree_margin(T, Q.T @ Q),
    }


def _mode_bound(mode, n):
    return {"general": dilation.order_bound(n), "pd": 4 * n, "symmetric": 8 * n, "2x2": 4}[mode]


def cmd_dilate(args):
    started = time.perf_counter()
    obj, digest = _read(args.input)
    A = io.matrix_from_json(obj, "input")
    n = num_modes(A, "input")
    if args.mode == "2x2" and n != 1:
        raise DimensionError("--mode 2x2 needs a 2x2 input")
    d = dilation.DILATION_MODES[args.mode](A)
    out = io.dilation_to_dict(d)
    out["report"] = _report(
        "dilate",
        digest,
        started,
        mode=args.mode,
        residuals=_dilation_residuals(d.matrix, d.target, d.n),
        order=d.order,
        order_bound=_mode_bound(args.mode, n),
    )
    _emit(out, args.out)
    return 0


def cmd_verify(args):
    started = time.perf_counter()
    tol = _tolerance(args)
    obj, digest = _read(args.input)
    if isinstance(obj, list):
        M = io.matrix_from_json(obj)
        num_modes(M)
        sym = symplectic_residual(M)
        residuals = {"symplecticity": sym, "block_recovery": None, "psd_margin": None}
        ok = sym <= tol.bound(max_norm(M) ** 2)
        extra = {"order": M.shape[0]}
    elif isinstance(obj, dict):
        n, m, M, T = io.raw_dilation(obj)
        residuals = _dilation_residuals(M, T, n)
        ok = (
            residuals["symplecticity"] <= tol.bound(max_norm(M) ** 2)
            and residuals["block_recovery"] <= tol.bound(max_norm(T))
            and residuals["psd_margin"] >= -tol.bound(max_norm(M) ** 2)
        )
        report = obj.get("report")
        mode = report.get("mode") if isinstance(report, dict) else None
        mode = mode if mode in dilation.DILATION_MODES else "general"
        extra = {"order": M.shape[0], "order_bound": _mode_bound(mode, n)}
    else:
        raise SchemaError("verify expects a matrix or a dilation object")
    _emit(
        _report(
            "verify",
            digest,
            started,
            passed=bool(ok),
            tolerance={"abs": tol.atol, "rel": tol.rtol},
            residuals=residuals,
            **extra,
        )
    )
    return 0 if ok else 1


def _load_state(path, tol):
    obj, _ = _read(path)
    return io.state_from_dict(obj, tol)


def cmd_state(args):
    tol = _tolerance(args)
    if args.action == "validate":
        st = _load_state(args.state, tol)
        _emit({
            "valid": True,
            "margin": states.covariance_margin(st.cov),
            "williamson": list(states.williamson_parameters(st)),
            "pure": states.is_pure(st),
        })
    elif args.action == "entropy":
        st = _load_state(args.state, tol)
        sys.stdout.write(f"{states.von_neumann_entropy(st):.12g}\n")
    elif args.action == "transform":
        st = _load_state(args.state, tol)
        L = io.matrix_from_json(_read(args.symplectic)[0], "symplectic")
        _emit(io.state_to_dict(states.symplectic_transform(st, L, tol)))
    elif args.action == "tensor":
        a = _load_state(args.state, tol)
        b = _load_state(args.other, tol)
        _emit(io.state_to_dict(states.tensor(a, b)))
    elif args.action == "marginal":
        st = _load_state(args.state, tol)
        _emit(io.state_to_dict(states.marginal(st, args.keep, tol)))
    elif args.action == "displace":
        st = _load_state(args.state, tol)
        u = np.array([complex(x.replace(" ", "")) for x in args.u])
        _emit(io.state_to_dict(states.displace(st, u)))
    return 0


def _load_channel(path):
    return io.channel_from_dict(_read(path)[0])


def cmd_channel(args):
    tol = _tolerance(args)
    if args.action == "apply":
        ch = _load_channel(args.channel)
        st = _load_state(args.state, tol)
        _emit(io.state_to_dict(ch.apply(st)))
    elif args.action == "compose":
        outer = _load_channel(args.outer)
        inner = _load_channel(args.inner)
        if not isinstance(outer, channels.SymplecticChannel) or not isinstance(
            inner, channels.SymplecticChannel
        ):
            raise SchemaError("compose needs two symplectic channels")
        _emit(io.channel_to_dict(channels.compose_symplectic(outer, inner)))
    elif args.action == "check":
        ch = _load_channel(args.channel)
        out = {"valid": True, "kind": io.channel_to_dict(ch)["kind"], "n": ch.n}
        if isinstance(ch, channels.QuasifreeChannel):
            out["margin"] = channels.quasifree_margin(ch.A, ch.B)
        elif isinstance(ch, channels.SymplecticChannel):
            out["symplecticity"] = symplectic_residual(ch.M)
        else:
            out["margin"] = float(np.linalg.eigvalsh(ch.C)[0])
        _emit(out)
    elif args.action == "from-dilation":
        d = io.dilation_from_dict(_read(args.dilation)[0])
        _emit(io.channel_to_dict(channels.dilation_to_channel(d)))
    return 0


def cmd_gen(args):
    n, seed = args.n, args.seed
    if n < 1:
        raise SchemaError("--n must be at least 1")
    if args.kind == "symplectic":
        _emit(io.matrix_to_json(core.random_symplectic(n, seed)))
    elif args.kind == "spd":
        _emit(io.matrix_to_json(core.random_positive_definite(n, seed)))
    elif args.kind == "state":
        _emit(io.state_to_dict(states.random_state(n, seed)))
    elif args.kind == "channel":
        if args.channel_kind == "symplectic":
            ch = channels.random_symplectic_channel(n, args.k, seed)
        elif args.channel_kind == "quasifree":
            ch = channels.random_quasifree(n, seed)
        else:
            ch = channels.random_bosonic(n, seed)
        _emit(io.channel_to_dict(ch))
    return 0


def _add_tol(p):
    p.add_argument("--abs", type=float, default=None, help=f"absolute tolerance (env {ENV_TOL})")
    p.add_argument("--rel", type=float, default=None, help="relative tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symplectica",
        description="Symplectic dilations, Gaussian states and Gaussian channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dilate", help="construct a symplectic dilation of a matrix")
    p.add_argument("input", nargs="?", default="-", help="JSON matrix file (default stdin)")
    p.add_argument("--mode", choices=sorted(dilation.DILATION_MODES), default="general")
    p.add_argument("--out", help="write the dilation here instead of stdout")
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("verify", help="check a symplectic matrix or a dilation")
    p.add_argument("input", nargs="?", default="-")
    _add_tol(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("state", help="Gaussian state operations")
    ssub = p.add_subparsers(dest="action", required=True)
    for action in ("validate", "entropy"):
        q = ssub.add_parser(action)
        q.add_argument("state", nargs="?", default="-")
        _add_tol(q)
    q = ssub.add_parser("transform")
    q.add_argument("state")
    q.add_argument("--symplectic", required=True, help="JSON symplectic matrix file")
    _add_tol(q)
    q = ssub.add_parser("tensor")
    q.add_argument("state")
    q.add_argument("other")
    _add_tol(q)
    q = ssub.add_parser("marginal")
    q.add_argument("state")
    q.add_argument("--keep", type=int, nargs="+", required=True, help="0-based modes to keep")
    _add_tol(q)
    q = ssub.add_parser("displace")
    q.add_argument("state")
    q.add_argument("--u", nargs="+", required=True, help="complex components, e.g. 1+2j")
    _add_tol(q)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("channel", help="Gaussian channel operations")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("apply")
    q.add_argument("channel")
    q.add_argument("state")
    _add_tol(q)
    q = csub.add_parser("compose", help="channel equal to OUTER after INNER")
    q.add_argument("outer")
    q.add_argument("inner")
    q = csub.add_parser("check")
    q.add_argument("channel", nargs="?", default="-")
    q = csub.add_parser("from-dilation")
    q.add_argument("dilation", nargs="?", default="-")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("gen", help="generate seeded random fixtures")
    p.add_argument("kind", choices=["symplectic", "spd", "state", "channel"])
    p.add_argument("--n", type=int, required=True, help="number of modes")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="ancilla modes for symplectic channels")
    p.add_argument(
        "--channel-kind", choices=["symplectic", "quasifree", "bosonic"], default="symplectic"
    )
    p.set_defaults(func=cmd_gen)
    return parser


def _error(code, exc):
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    margin = getattr(exc, "margin", None)
    if margin is not None:
        payload["margin"] = float(margin)
    return payload


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, DimensionError) as exc:
        code, payload = 2, _error(2, exc)
    except SymplecticaError as exc:
        code, payload = 1, _error(1, exc)
    sys.stderr.write(io.dumps(payload) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
