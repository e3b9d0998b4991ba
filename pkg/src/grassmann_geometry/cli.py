"""Command line front end.

Every subcommand prints one JSON document (or key,value CSV lines with
``--format csv``).  Exit status: 0 on success, 2 when the library rejects
the input on mathematical grounds (degenerate angles, bad orders, ...),
1 for unreadable or malformed files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .errors import BadArguments, GrassmannError, ParseError, SchemaError
from .gauge_graph import from_triple, loop_basis, wilson_loop
from .geodesics import g_direction, geodesic_lengths
from .holonomy import three_state_phases_via_holonomy
from .pairs import plucker_overlap, principal_decomposition
from .subspace import Configuration, Subspace, Tolerances, orthonormalize, sample_configuration
from .tensors import abelian_reduction, evaluate_tensors, interpolation_family
from .triples import (
    configs_equivalent,
    invariant_count,
    orbit_codimension_numeric,
    triple_invariants,
    wrap_phase,
)

__all__ = ["parse_config", "config_document", "dumps", "to_csv", "run", "main"]


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------


def _schema(cond, where, msg):
    if not cond:
        raise SchemaError(f"{where}: {msg}")


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def config_from_document(doc, orthonormalize_frames: bool = False, tol: Optional[Tolerances] = None) -> Configuration:
    """Validate a decoded JSON document and build the configuration it describes."""
    _schema(isinstance(doc, dict), "", "top level must be an object")
    for key in ("n", "m", "subspaces"):
        _schema(key in doc, "", f"missing required key '{key}'")
    n, m = doc["n"], doc["m"]
    _schema(_is_int(n) and n >= 1, "/n", "must be a positive integer")
    _schema(_is_int(m) and 1 <= m <= n, "/m", f"must be an integer in 1..n (n={n})")
    extra = set(doc) - {"n", "m", "subspaces", "tolerances"}
    _schema(not extra, "", f"unknown keys {sorted(extra)}")

    base = tol or Tolerances()
    if "tolerances" in doc:
        t = doc["tolerances"]
        _schema(isinstance(t, dict), "/tolerances", "must be an object")
        for key, value in t.items():
            _schema(key in ("ortho_tol", "eq_tol", "deg_tol"), f"/tolerances/{key}", "unknown tolerance")
            _schema(_is_num(value) and value > 0, f"/tolerances/{key}", "must be a positive number")
        base = base.replace(**{k: float(v) for k, v in t.items()})

    subs = doc["subspaces"]
    _schema(isinstance(subs, list) and subs, "/subspaces", "must be a non-empty array")
    frames, labels = [], []
    for s_idx, entry in enumerate(subs):
        where = f"/subspaces/{s_idx}"
        _schema(isinstance(entry, dict), where, "must be an object")
        sid = entry.get("id", f"S{s_idx}")
        _schema(isinstance(sid, str), f"{where}/id", "must be a string")
        _schema("frame" in entry, where, f"subspace '{sid}' has no 'frame'")
        rows = entry["frame"]
        _schema(isinstance(rows, list) and len(rows) == m, f"{where}/frame",
                f"subspace '{sid}' must have m={m} rows")
        mat = np.empty((n, m), dtype=complex)
        for r, row in enumerate(rows):
            _schema(isinstance(row, list) and len(row) == n, f"{where}/frame/{r}",
                    f"subspace '{sid}' row must have n={n} entries")
            for c, z in enumerate(row):
                _schema(isinstance(z, list) and len(z) == 2 and all(_is_num(v) for v in z),
                        f"{where}/frame/{r}/{c}", f"subspace '{sid}' entries must be [re, im]")
                mat[c, r] = complex(z[0], z[1])
        frames.append(mat)
        labels.append(sid)
    _schema(len(set(labels)) == len(labels), "/subspaces", "subspace ids must be unique")
    if orthonormalize_frames:
        built = [orthonormalize(f, base) for f in frames]
    else:
        built = [Subspace(f, base) for f in frames]
    return Configuration(tuple(built), tuple(labels), base)


def parse_config(path: str, orthonormalize_frames: bool = False, tol: Optional[Tolerances] = None) -> Configuration:
    """Read a configuration document from ``path``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return config_from_document(doc, orthonormalize_frames, tol)


def config_document(C: Configuration) -> dict:
    """Inverse of :func:`config_from_document`."""
    return {
        "n": C.n,
        "m": C.m,
        "subspaces": [
            {"id": label, "frame": [[[z.real, z.imag] for z in col] for col in S.frame.T]}
            for label, S in zip(C.labels, C.subspaces)
        ],
    }


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return _plain(np.stack([obj.real, obj.imag], axis=-1))
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def dumps(obj) -> str:
    """JSON text with every float printed to 17 significant digits."""

    def emit(o, indent):
        pad = "  " * (indent + 1)
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return _fmt_float(o)
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, list):
            if all(not isinstance(v, (list, dict)) for v in o):
                return "[" + ", ".join(emit(v, indent) for v in o) + "]"
            return "[\n" + ",\n".join(pad + emit(v, indent + 1) for v in o) + "\n" + "  " * indent + "]"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [pad + json.dumps(k) + ": " + emit(v, indent + 1) for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return emit(_plain(obj), 0) + "\n"


def to_csv(obj) -> str:
    """Flatten to ``key,value`` lines; nested keys joined with '.'."""
    lines = ["key,value"]

    def walk(o, key):
        if isinstance(o, dict):
            for k, v in o.items():
                walk(v, f"{key}.{k}" if key else str(k))
        elif isinstance(o, list):
            for i, v in enumerate(o):
                walk(v, f"{key}.{i}" if key else str(i))
        elif isinstance(o, float):
            lines.append(f"{key},{_fmt_float(o)}")
        elif o is None:
            lines.append(f"{key},")
        elif isinstance(o, bool):
            lines.append(f"{key},{str(o).lower()}")
        else:
            text = str(o)
            if any(ch in text for ch in ',"\n'):
                text = '"' + text.replace('"', '""') + '"'
            lines.append(f"{key},{text}")

    walk(_plain(obj), "")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _need(C: Configuration, k: int, what: str):
    if len(C) < k:
        raise BadArguments(f"{what} needs at least {k} subspaces, got {len(C)}")


def _load(args, attr="input") -> Configuration:
    path = getattr(args, attr)
    if path is None:
        raise BadArguments(f"--{attr} is required for '{args.command}'")
    tol = Tolerances(eq_tol=args.tol) if args.tol is not None else None
    return parse_config(path, args.orthonormalize, tol)


def cmd_angles(args):
    C = _load(args)
    _need(C, 2, "angles")
    V, W = C[0], C[1]
    pd = principal_decomposition(V, W)
    L = geodesic_lengths(V, W)
    return {
        "pair": [C.labels[0], C.labels[1]],
        "theta": pd.theta,
        "cosines": pd.cosines,
        "lengths": {f"L{l + 1}": L[l] for l in range(len(L))},
        "plucker_overlap_abs": abs(plucker_overlap(V, W)),
        "degenerate_pairs": [list(p) for p in pd.degenerate_pairs],
    }


def _upper_4sp(t):
    m = t.shape[0]
    return [
        {"index": [a, b, c, d], "phase": t[a, b, c, d]}
        for a in range(m) for b in range(a + 1, m) for c in range(m) for d in range(c + 1, m)
    ]


def cmd_triple(args):
    C = _load(args)
    _need(C, 3, "triple")
    td = triple_invariants(C[0], C[1], C[2])
    names = ("VW", "WU", "UV")
    return {
        "subspaces": list(C.labels[:3]),
        "angles": dict(zip(names, td.angles)),
        "two_state_overlaps": dict(zip(("V", "W", "U"), td.two_state_overlaps)),
        "four_state_phases": {k: _upper_4sp(v) for k, v in td.four_state_phases.items()},
        "three_state_phases": td.three_state_phases,
        "projector_route_residual": td.projector_route_residual,
    }


def cmd_equiv(args):
    A = _load(args, "a")
    B = _load(args, "b")
    res = configs_equivalent(A, B, A.tol)
    return {
        "equivalent": res.equivalent,
        "reason": res.reason,
        "max_deviation": res.max_deviation,
        "witness_error": res.witness_error,
    }


def cmd_geodesic(args):
    C = _load(args)
    _need(C, 2, "geodesic")
    V, W = C[0], C[1]
    out = {
        "pair": [C.labels[0], C.labels[1]],
        "theta": principal_decomposition(V, W).theta,
        "lengths_closed_form": geodesic_lengths(V, W),
    }
    if args.steps is not None:
        out["steps"] = args.steps
        out["lengths_numeric"] = geodesic_lengths(V, W, "numeric", args.steps)
    out["g_direction_eigenvalues"] = g_direction(V, W, split=False).eigenvalues
    return out


def cmd_tensors(args):
    C = _load(args)
    _need(C, 2, "tensors")
    fam = interpolation_family([S.frame for S in C])
    x = np.zeros(fam.dim_param) if args.x is None else np.array([float(v) for v in args.x.split(",")])
    if x.shape != (fam.dim_param,):
        raise BadArguments(f"--x needs {fam.dim_param} comma separated values")
    s = evaluate_tensors(fam, x)
    fs, berry = abelian_reduction(s)
    return {
        "x": x,
        "A": s.A,
        "G": s.G,
        "F": s.F,
        "fs_metric": fs,
        "berry_like": berry,
        "curvature_residual": s.curvature_residual,
        "fd_tol": s.fd_tol,
    }


def cmd_holonomy(args):
    C = _load(args)
    _need(C, 3, "holonomy")
    steps = 2000 if args.steps is None else args.steps
    h = three_state_phases_via_holonomy(C[0], C[1], C[2], steps, randomize_phases=args.seed)
    direct = triple_invariants(C[0], C[1], C[2], cross_check=False).three_state_phases
    return {
        "steps": steps,
        "three_state_phases_holonomy": h,
        "three_state_phases_direct": direct,
        "max_deviation": float(np.max(np.abs(wrap_phase(h - direct)))),
    }


def cmd_count(args):
    if args.m is None or args.l is None:
        raise BadArguments("count needs --m and --l")
    out = {"m": args.m, "l": args.l, "invariants": invariant_count(args.m, args.l)}
    if args.n is not None:
        C = sample_configuration(args.n, args.m, args.l, seed=args.seed)
        out["n"] = args.n
        out["orbit_codimension"] = orbit_codimension_numeric(C)
    return out


def cmd_graph(args):
    C = _load(args)
    _need(C, 3, "graph")
    conn = from_triple(C[0], C[1], C[2])
    basis = loop_basis(conn.m)
    return {
        "m": conn.m,
        "phi1": conn.phi1,
        "phi2": conn.phi2,
        "phi3": conn.phi3,
        "loop_basis": [{"vertices": [list(v) for v in lp.vertices], "circulation": wilson_loop(conn, lp)}
                       for lp in basis],
    }


def cmd_sample(args):
    if args.n is None or args.m is None:
        raise BadArguments("sample needs --n and --m")
    l = 2 if args.l is None else args.l
    return config_document(sample_configuration(args.n, args.m, l, seed=args.seed))


COMMANDS = {
    "angles": cmd_angles,
    "triple": cmd_triple,
    "equiv": cmd_equiv,
    "geodesic": cmd_geodesic,
    "tensors": cmd_tensors,
    "holonomy": cmd_holonomy,
    "count": cmd_count,
    "graph": cmd_graph,
    "sample": cmd_sample,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grassmann", description="Unitary invariants of subspace configurations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", "-i")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--x", help="comma separated parameter point for 'tensors'")
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--orthonormalize", action="store_true")
    p.add_argument("--tol", type=float, help="equality tolerance")
    return p


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        result = COMMANDS[args.command](args)
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except GrassmannError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(to_csv(result) if args.format == "csv" else dumps(result))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
