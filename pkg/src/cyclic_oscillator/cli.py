"""Command-line front end: ``cyclic-osc <command> [options]``.

Every command prints one machine-readable document on stdout (JSON by
default; CSV where a table or matrix is exported).  Exit codes:

* ``0``: every residual is within its tolerance;
* ``1``: a verification failed (the report is still printed);
* ``2``: the configuration is invalid.

JSON output uses sorted keys and carries no timestamps, so a fixed
configuration and seed give byte-identical output.  Complex numbers are
written as ``[re, im]`` pairs in JSON and as ``"re,im"`` cells in CSV.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import analytic, blocks, fock, functionals, hermite, verify
from .params import AlgebraParams, ParameterError, make_params, random_params

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_COMPLEX = re.compile(
    r"""^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?
        ([+-](\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?[ij]?$
        |^[+-]?((\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?[ij]$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``"a"``, ``"bi"``, ``"a+bi"`` or ``"a-bi"`` (no spaces).

    >>> parse_complex("0.3-0.1i")
    (0.3-0.1j)
    """
    s = text.strip()
    if not s or " " in s or not _COMPLEX.match(s):
        raise ParameterError(f"not a complex literal: {text!r}")
    s = s.replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise ParameterError(f"not a complex literal: {text!r}") from None


def parse_nu(text: str) -> list:
    return [parse_complex(t) for t in text.split(",")]


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real + 0.0!r},{z.imag + 0.0!r}"


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def _matrix_json(M: np.ndarray) -> list:
    return [[_pair(v) for v in row] for row in M]


@dataclass
class RunConfig:
    """Options shared by every command."""

    lam: int = 2
    nu: list = field(default_factory=list)
    precision: str = "extended"
    tol: float = 1e-9
    fmt: str = "json"
    seed: int = 0

    def params(self) -> AlgebraParams:
        return make_params(self.lam, self.nu, tol=self.tol, precision=self.precision)

    def to_json(self) -> str:
        d = asdict(self)
        d["nu"] = [_pair(v) for v in self.nu]
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        d = json.loads(text)
        d["nu"] = [complex(re_, im) for re_, im in d["nu"]]
        return cls(**d)


def _config(args) -> RunConfig:
    if args.nu is None:
        raise ParameterError("--nu is required (comma-separated list or 'random')")
    if args.nu == "random":
        nu = list(random_params(args.lam, np.random.default_rng(args.seed)).nu)
    else:
        nu = parse_nu(args.nu)
    if not args.tol > 0:
        raise ParameterError(f"--tol must be positive, got {args.tol}")
    return RunConfig(args.lam, nu, args.precision, args.tol, args.format, args.seed)


# --------------------------------------------------------------------------
# output helpers


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _dump_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _matrix_csv(M: np.ndarray, labels: list) -> str:
    rows = [[labels[i]] + [format_complex(v) for v in M[i]] for i in range(M.shape[0])]
    return _dump_csv(["index"] + labels, rows)


# --------------------------------------------------------------------------
# commands; each returns (document text, exit code)


def cmd_hermite(cfg: RunConfig, args):
    p = cfg.params()
    if args.n < 0:
        raise ParameterError(f"--n must be >= 0, got {args.n}")
    fam = hermite.build_family(p, args.n, args.route)
    polys = [fam.tilde(k) for k in range(args.n + 1)] if args.normalized else list(fam.monic)
    if cfg.fmt == "csv":
        header = ["n"] + [f"z^{k}" for k in range(args.n + 1)]
        rows = [[n] + [format_complex(c) for c in h.padded(args.n + 1)] for n, h in enumerate(polys)]
        return _dump_csv(header, rows), EXIT_OK
    doc = {
        "params": p.as_dict(),
        "route": args.route,
        "normalized": bool(args.normalized),
        "table": [
            {"n": n, "coeffs": [_pair(c) for c in h.coeffs]} for n, h in enumerate(polys)
        ],
    }
    return _dump_json(doc), EXIT_OK


def cmd_genexp(cfg: RunConfig, args):
    p = cfg.params()
    z = parse_complex(args.z)
    res = analytic.gen_exp_evaluate(p, z, args.T)
    hyp = analytic.gen_exp_hypergeom(p, z)
    delta = abs(res.value - hyp) / max(1.0, abs(res.value))
    ok = delta <= verify.HYPERGEOM_TOL
    doc = {
        "params": p.as_dict(),
        "z": _pair(z),
        "value": _pair(res.value),
        "truncation": res.truncation,
        "tail_bound": res.tail_bound,
        "hypergeometric": _pair(hyp),
        "delta": delta,
        "tol": verify.HYPERGEOM_TOL,
        "pass": ok,
    }
    return _dump_json(doc), EXIT_OK if ok else EXIT_FAIL


def cmd_kernel(cfg: RunConfig, args):
    p = cfg.params()
    z, w = parse_complex(args.z), parse_complex(args.w)
    res = analytic.kernel_evaluate(p, z, w, args.T)
    doc = {
        "params": p.as_dict(),
        "z": _pair(z),
        "w": _pair(w),
        "value": _pair(res.value),
        "truncation": res.truncation,
        "tail_bound": res.tail_bound,
        "pass": True,
    }
    return _dump_json(doc), EXIT_OK


def cmd_moments(cfg: RunConfig, args):
    p = cfg.params()
    if args.m < 0:
        raise ParameterError(f"--m must be >= 0, got {args.m}")
    ks = range(p.d) if args.k is None else [args.k]
    table = {k: functionals.moments(p, k, args.m) for k in ks}
    if cfg.fmt == "csv":
        header = ["m"] + [f"u_{k}" for k in ks]
        rows = [[m] + [format_complex(table[k][m]) for k in ks] for m in range(args.m + 1)]
        return _dump_csv(header, rows), EXIT_OK
    doc = {
        "params": p.as_dict(),
        "moments": {str(k): [_pair(v) for v in table[k]] for k in ks},
    }
    return _dump_json(doc), EXIT_OK


def cmd_verify(cfg: RunConfig, args):
    p = cfg.params()
    rep = verify.run_suite(p, args.suite, args.degree, args.dim, cfg.seed)
    doc = rep.as_dict()
    doc["params"] = p.as_dict()
    doc["config"] = {"degree": args.degree, "dim": args.dim, "seed": cfg.seed}
    return _dump_json(doc), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_fock(cfg: RunConfig, args):
    p = cfg.params()
    fm = fock.fock_matrices(p, args.dim)
    mats = fm.as_dict()
    if cfg.fmt == "csv":
        if args.what not in mats:
            raise ParameterError(f"--what must be one of {sorted(mats)}, got {args.what!r}")
        return _matrix_csv(mats[args.what], [str(i) for i in range(fm.dim)]), EXIT_OK
    rep = fock.verify_algebra(fm)
    for n in range(1, min(6, fm.dim // 2) + 1):
        rep.extend(fock.verify_prop1(fm, n))
    doc = rep.as_dict()
    doc["params"] = p.as_dict()
    doc["dim"] = fm.dim
    doc["matrices"] = {k: _matrix_json(v) for k, v in mats.items()}
    return _dump_json(doc), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_matrix(cfg: RunConfig, args):
    p = cfg.params()
    bs = blocks.assemble(p, args.blocks)
    what = args.what
    if what not in ("X", "Y", "R"):
        raise ParameterError(f"--what must be X, Y or R, got {what!r}")
    M = getattr(bs, what)
    if args.flat and what != "R":
        M = blocks.flatten(M, p.d)
    labels = [f"{i // p.d}:{i % p.d}" for i in range(M.shape[0])]
    if cfg.fmt == "csv":
        return _matrix_csv(M, labels), EXIT_OK
    doc = {
        "params": p.as_dict(),
        "what": what,
        "flat": bool(args.flat),
        "blocks": args.blocks,
        "labels": labels,
        "matrix": _matrix_json(M),
    }
    return _dump_json(doc), EXIT_OK


COMMANDS = {
    "hermite": cmd_hermite,
    "genexp": cmd_genexp,
    "moments": cmd_moments,
    "verify": cmd_verify,
    "fock": cmd_fock,
    "matrix": cmd_matrix,
    "kernel": cmd_kernel,
}


class _Parser(argparse.ArgumentParser):
    """Report usage errors with exit code 2 and a JSON error document."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.stdout.write(_dump_json({"error": message, "pass": False}))
        sys.exit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=int, default=2, help="cyclic order (>= 2)")
    common.add_argument(
        "--nu",
        help="comma-separated nu_0..nu_{lambda-1} (or nu_1..) as 'a+bi' literals, or 'random'",
    )
    common.add_argument("--precision", choices=("extended", "double"), default="extended")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="cyclic-osc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("hermite", parents=[common], help="Hermite family coefficient table")
    sp.add_argument("--n", type=int, default=10, help="highest degree")
    sp.add_argument("--route", choices=hermite.ROUTES, default="recurrence")
    sp.add_argument("--normalized", action="store_true")

    sp = sub.add_parser("genexp", parents=[common], help="generalized exponential, both routes")
    sp.add_argument("--z", default="1")
    sp.add_argument("--T", type=int, default=None, help="series truncation (automatic if omitted)")

    sp = sub.add_parser("kernel", parents=[common], help="reproducing kernel K(w, z)")
    sp.add_argument("--z", default="1")
    sp.add_argument("--w", default="1")
    sp.add_argument("--T", type=int, default=None)

    sp = sub.add_parser("moments", parents=[common], help="moment table of u_0..u_{d-1}")
    sp.add_argument("--m", type=int, default=12, help="highest moment index")
    sp.add_argument("--k", type=int, default=None, help="single functional index")

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    sp.add_argument("--degree", type=int, default=20)
    sp.add_argument("--dim", type=int, default=32)

    sp = sub.add_parser("fock", parents=[common], help="truncated Fock matrices")
    sp.add_argument("--dim", type=int, default=16)
    sp.add_argument("--what", default="a_minus", help="matrix for CSV export")

    sp = sub.add_parser("matrix", parents=[common], help="block matrices X, Y or R")
    sp.add_argument("--blocks", type=int, default=6)
    sp.add_argument("--what", default="X")
    sp.add_argument("--flat", action="store_true", help="transpose each block in place")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        text, code = COMMANDS[args.command](cfg, args)
    except ParameterError as exc:
        sys.stderr.write(f"invalid configuration: {exc}\n")
        sys.stdout.write(_dump_json({"error": str(exc), "pass": False}))
        return EXIT_CONFIG
    except ArithmeticError as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        sys.stdout.write(_dump_json({"error": str(exc), "pass": False}))
        return EXIT_FAIL
    sys.stdout.write(text)
    if code == EXIT_FAIL:
        sys.stderr.write("verification failed: see report\n")
    return code
