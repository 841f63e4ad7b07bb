"""Command-line front end.

Every verb prints one document: the command, its parameters, a result, the
tolerance used for any pass/fail checks and the library version.  The exit
status is 0 exactly when all checks in the document pass.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

import numpy as np

from . import __version__
from .anyon_model import compare_to_cft
from .errors import ContinuationError, DomainError, PoleError, UsageError
from .exchange_matrices import (
    MOVES,
    braid_evaluate,
    d_matrix,
    exchange_matrix,
    format_word,
    gate_search_profile,
    monodromy_check,
    parse_word,
)
from .fusion_algebra import count_blocks, fuse_minimal
from .wavefunctions import (
    ParticleConfig,
    block_22,
    block_42,
    factorization_residual,
    jastrow,
    random_config,
    wavefunction_22,
    wavefunction_42,
)

TARGETS = {
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "S": np.diag([1, 1j]),
    "H": np.array([[1, 1], [1, -1]]) / math.sqrt(2),
    "X": np.array([[0, 1], [1, 0]]),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 2 with the message on stderr
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _label(text: str) -> tuple[int, int]:
    try:
        r, s = (int(v) for v in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"label must look like r,s; got {text!r}") from None
    return (r, s)


def read_positions(path: str) -> list[complex]:
    out = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot open positions file: {exc}") from None
    with fh:
        for n, line in enumerate(fh, start=1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            parts = s.split()
            if len(parts) != 2:
                raise UsageError(f"{path}:{n}: expected 're im', got {line.strip()!r}")
            try:
                out.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise UsageError(f"{path}:{n}: not a number pair: {line.strip()!r}") from None
    return out


def _target(text: str) -> np.ndarray:
    if text.upper() in TARGETS:
        return TARGETS[text.upper()]
    try:
        return matrix_from_json(json.loads(text))
    except (ValueError, TypeError):
        raise UsageError(f"target must be one of {sorted(TARGETS)} or a JSON [[re, im], ...] matrix") from None


# --- verbs -------------------------------------------------------------------


def _fusion(a):
    out = sorted(fuse_minimal(a.k, a.a, a.b))
    return {"labels": [list(t) for t in out]}, {}


def _blocks(a):
    return {"count": count_blocks(a.k, a.n)}, {}


def _rmatrix(a):
    return {"matrix": exchange_matrix(a.k, a.arity, a.which)}, {}


def _dmatrix(a):
    return {"matrix": d_matrix(a.k, as_printed=a.as_printed)}, {}


def _monodromy(a):
    tol = 1e-8 if a.tolerance is None else a.tolerance
    dev = monodromy_check(a.k, a.move)
    return {"move": a.move, "max_deviation": dev}, {"monodromy": (dev <= tol, tol)}


def _braid(a):
    word = parse_word(a.word)
    return {"word": format_word(word), "matrix": braid_evaluate(a.k, a.arity, word)}, {}


def _gatesearch(a):
    target = _target(a.target)
    prof = gate_search_profile(a.k, target, a.maxlen, allow_r13=a.allow_r13)
    word, dist = prof[-1]
    res = {
        "word": format_word(word),
        "distance": dist,
        "profile": [{"length": n, "word": format_word(w), "distance": d} for n, (w, d) in enumerate(prof)],
    }
    checks = {}
    if a.tolerance is not None:
        checks["distance"] = (dist <= a.tolerance, a.tolerance)
    return res, checks


def _wavefn(a):
    tol = 1e-10 if a.tolerance is None else a.tolerance
    if a.positions:
        pts = read_positions(a.positions)
        if len(pts) != 2 * a.N + 2 * a.M:
            raise UsageError(f"positions file holds {len(pts)} points, expected {2 * a.N + 2 * a.M}")
        cfg = ParticleConfig(tuple(pts[: 2 * a.N]), tuple(pts[2 * a.N :]), a.lam, a.k)
    else:
        if a.seed is None:
            raise UsageError("random positions need --seed (or give --positions)")
        cfg = random_config(a.k, a.N, a.M, a.lam, seed=a.seed)
    res: dict[str, Any] = {"eta": list(cfg.eta), "z": list(cfg.z), "jastrow": jastrow(cfg)}
    checks = {}
    if (cfg.N, cfg.M) == (1, 1):
        res["block"] = block_22(cfg)
        res["psi"] = wavefunction_22(cfg)
        r = factorization_residual(cfg)
        res["factorization_residual"] = r
        checks["factorization"] = (r <= tol, tol)
    elif (cfg.N, cfg.M) == (2, 1):
        res["block"] = block_42(cfg, a.mu)
        res["psi"] = wavefunction_42(cfg, a.mu)
        res["mu"] = a.mu
    else:
        raise UsageError("wavefunctions exist for (N, M) = (1, 1) and (2, 1)")
    return res, checks


def _anyon_compare(a):
    tol = 1e-10 if a.tolerance is None else a.tolerance
    d = compare_to_cft(a.k, a.arity, a.which)
    return {"distance": d}, {"agreement": (d <= tol, tol)}


VERBS = {
    "fusion": _fusion,
    "blocks": _blocks,
    "rmatrix": _rmatrix,
    "dmatrix": _dmatrix,
    "monodromy": _monodromy,
    "braid": _braid,
    "gatesearch": _gatesearch,
    "wavefn": _wavefn,
    "anyon-compare": _anyon_compare,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cftbraid", description="Fusion, blocks, braiding and wavefunctions of M(k+2, k+1).")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def verb(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--format", choices=("json", "table"), default="json")
        s.add_argument("--tolerance", type=float, default=None)
        s.add_argument("--seed", type=int, default=None)
        return s

    s = verb("fusion", "fuse two Kac labels")
    s.add_argument("--a", type=_label, required=True)
    s.add_argument("--b", type=_label, required=True)
    s = verb("blocks", "count sigma blocks")
    s.add_argument("--n", type=int, required=True)
    s = verb("rmatrix", "exchange matrix")
    s.add_argument("--arity", type=int, default=4)
    s.add_argument("--which", default="R12")
    s = verb("dmatrix", "basis change between mixed four-point functions")
    s.add_argument("--as-printed", action="store_true")
    s = verb("monodromy", "numerical continuation against the exchange matrices")
    s.add_argument("--move", default="swap", choices=sorted(set(MOVES) | {"swap01", "around0", "around1"}))
    s = verb("braid", "evaluate a braid word")
    s.add_argument("--arity", type=int, default=4)
    s.add_argument("--word", default="")
    s = verb("gatesearch", "shortest-word approximation of a 2x2 gate")
    s.add_argument("--target", default="T")
    s.add_argument("--maxlen", type=int, default=8)
    s.add_argument("--allow-r13", action="store_true")
    s = verb("wavefn", "evaluate a quasihole wavefunction")
    s.add_argument("--lam", type=int, default=1)
    s.add_argument("--N", type=int, default=1)
    s.add_argument("--M", type=int, default=1)
    s.add_argument("--mu", type=int, default=1, choices=(1, 2))
    s.add_argument("--positions", default=None)
    s = verb("anyon-compare", "exchange matrix against the anyon model")
    s.add_argument("--arity", type=int, default=4)
    s.add_argument("--which", default="R12")
    return p


# --- output --------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return matrix_to_json(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _fmt(v) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.12g}{v.imag:+.12g}j"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _table(doc) -> str:
    lines = [f"command: {doc['command']}"]
    lines += [f"  {k} = {v}" for k, v in doc["parameters"].items()]
    for key, val in doc["result"].items():
        if isinstance(val, np.ndarray) and val.ndim == 2:
            lines.append(f"{key}:")
            for row in val:
                lines.append("  " + "  ".join(f"{_fmt(x):>34}" for x in row))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for row in val:
                lines.append("  " + "  ".join(f"{k}={_fmt(x)}" for k, x in row.items()))
        elif isinstance(val, (list, tuple)):
            lines.append(f"{key}: " + ", ".join(_fmt(x) for x in val))
        else:
            lines.append(f"{key}: {_fmt(val)}")
    for name, (ok, tol) in doc["checks"].items():
        lines.append(f"check {name}: {'pass' if ok else 'FAIL'} (tolerance {tol:g})")
    lines.append(f"version: {doc['version']}")
    return "\n".join(lines)


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format")}
    result, checks = VERBS[args.command](args)
    doc = {
        "command": args.command,
        "parameters": params,
        "result": result,
        "checks": checks,
        "version": __version__,
    }
    ok = all(c[0] for c in checks.values())
    if args.format == "table":
        text = _table(doc)
    else:
        doc["tolerance"] = {k: t for k, (_, t) in checks.items()}
        doc["checks"] = {k: bool(c[0]) for k, c in checks.items()}
        text = json.dumps(_jsonable(doc), indent=2)
    return (0 if ok else 1), text


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except (UsageError, DomainError, PoleError, ContinuationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
