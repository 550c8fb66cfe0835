"""
JSON encoding of matrices, dilations, states and channels.

Floats are written with 17 significant digits, which round-trips every
float64 exactly. Schemas::

    matrix    [[a11, a12, ...], ...]            (row-major)
    dilation  {"n", "m", "matrix", "target"}
    state     {"n", "l", "m", "S"}
    channel   {"kind": "bosonic", "n", "C"}
              {"kind": "symplectic", "n", "k", "M"}
              {"kind": "quasifree", "n", "A", "B"}
"""

import json
import math

import numpy as np

from .channels import BosonicChannel, QuasifreeChannel, SymplecticChannel
from .dilation import Dilation
from .exceptions import SchemaError
from .states import new_state


def _encode(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise SchemaError(f"cannot serialize non-finite number {x}")
        out.append(format(x, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _encode(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _encode(value, out)
        out.append("]")
    else:
        raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def dumps(obj):
    out = []
    _encode(obj, out)
    return "".join(out)


def _reject_constant(name):
    raise SchemaError(f"non-finite JSON constant {name} not allowed")


def loads(text):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def matrix_from_json(obj, name="matrix"):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaError(f"{name} must be a non-empty list of rows")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise SchemaError(f"{name} is not rectangular")
    for row in obj:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise SchemaError(f"{name} has a non-numeric entry {x!r}")
    arr = np.array(obj, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{name} has non-finite entries")
    return arr


def vector_from_json(obj, name):
    if not isinstance(obj, list) or any(
        isinstance(x, bool) or not isinstance(x, (int, float)) for x in obj
    ):
        raise SchemaError(f"{name} must be a list of numbers")
    return np.array(obj, dtype=float)


def _field(obj, key, kind):
    if not isinstance(obj, dict):
        raise SchemaError(f"{kind} must be a JSON object")
    if key not in obj:
        raise SchemaError(f"{kind} is missing field {key!r}")
    return obj[key]


def _count(obj, key, kind):
    value = _field(obj, key, kind)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise SchemaError(f"{kind} field {key!r} must be a nonnegative integer")
    return value


def matrix_to_json(M):
    return [list(map(float, row)) for row in np.asarray(M)]


def dilation_to_dict(d):
    return {
        "n": d.n,
        "m": d.m,
        "matrix": matrix_to_json(d.matrix),
        "target": matrix_to_json(d.target),
    }


def raw_dilation(obj):
    """``(n, m, matrix, target)`` without certifying the dilation."""
    n = _count(obj, "n", "dilation")
    m = _count(obj, "m", "dilation")
    M = matrix_from_json(_field(obj, "matrix", "dilation"), "matrix")
    T = matrix_from_json(_field(obj, "target", "dilation"), "target")
    if M.shape != (2 * (n + m),) * 2 or T.shape != (2 * n,) * 2:
        raise SchemaError(f"dilation shapes {M.shape}, {T.shape} do not match n={n}, m={m}")
    return n, m, M, T


def dilation_from_dict(obj):
    n, m, M, T = raw_dilation(obj)
    return Dilation(M, n, m, T)


def state_to_dict(state):
    return {
        "n": state.n,
        "l": list(map(float, state.ell)),
        "m": list(map(float, state.m)),
        "S": matrix_to_json(state.cov),
    }


def state_from_dict(obj, tol=None):
    n = _count(obj, "n", "state")
    ell = vector_from_json(_field(obj, "l", "state"), "l")
    m = vector_from_json(_field(obj, "m", "state"), "m")
    S = matrix_from_json(_field(obj, "S", "state"), "S")
    if ell.size != n or m.size != n or S.shape != (2 * n, 2 * n):
        raise SchemaError(f"state field sizes do not match n={n}")
    return new_state(ell, m, S) if tol is None else new_state(ell, m, S, tol)


def channel_to_dict(channel):
    if isinstance(channel, BosonicChannel):
        return {"kind": "bosonic", "n": channel.n, "C": matrix_to_json(channel.C)}
    if isinstance(channel, SymplecticChannel):
        return {
            "kind": "symplectic",
            "n": channel.n,
            "k": channel.k,
            "M": matrix_to_json(channel.M),
        }
    if isinstance(channel, QuasifreeChannel):
        return {
            "kind": "quasifree",
            "n": channel.n,
            "A": matrix_to_json(channel.A),
            "B": matrix_to_json(channel.B),
        }
    raise SchemaError(f"not a channel: {type(channel).__name__}")


def channel_from_dict(obj):
    kind = _field(obj, "kind", "channel")
    n = _count(obj, "n", "channel")
    if kind == "bosonic":
        C = matrix_from_json(_field(obj, "C", "channel"), "C")
        if C.shape != (2 * n, 2 * n):
            raise SchemaError(f"C has shape {C.shape}, expected {2 * n}x{2 * n}")
        return BosonicChannel(C)
    if kind == "symplectic":
        k = _count(obj, "k", "channel")
        M = matrix_from_json(_field(obj, "M", "channel"), "M")
        if M.shape != (2 * (n + k),) * 2:
            raise SchemaError(f"M has shape {M.shape}, expected order {2 * (n + k)}")
        return SymplecticChannel(n, M)
    if kind == "quasifree":
        A = matrix_from_json(_field(obj, "A", "channel"), "A")
        B = matrix_from_json(_field(obj, "B", "channel"), "B")
        if A.shape != (2 * n, 2 * n) or B.shape != (2 * n, 2 * n):
            raise SchemaError(f"A, B must be {2 * n}x{2 * n}")
        return QuasifreeChannel(A, B)
    raise SchemaError(f"unknown channel kind {kind!r}")
