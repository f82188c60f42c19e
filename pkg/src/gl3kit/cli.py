"""Command-line entry point: `gl3kit <command> [options]`.

Every command writes one JSON document (with `schema_version`, `command` and
`seed` fields) or, with `--format csv`, a CSV table preceded by a single
`# gl3kit ...` header line.  Complex numbers are written as [re, im] pairs;
numbers with an exactly zero imaginary part are written as plain reals.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

SCHEMA_VERSION = 1

CONFIG_KEYS = {
    "seed": int,
    "s1": float,
    "s2": float,
    "height": float,
    "density": float,
    "tol": float,
    "nodes": int,
    "format": str,
}


class UsageError(Exception):
    """Bad input from the command line; exits with status 2."""


# --------------------------------------------------------------------------
# parsing helpers


_COMPLEX_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?([+-](\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?[ij])?$|^[+-]?(\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?[ij]$")


def parse_complex(text: str) -> complex:
    """'2+0.1i', '-0.4', '3i', '-i', '1e-3-2j' -> complex."""
    t = text.strip().replace(" ", "")
    if not t or not _COMPLEX_RE.match(t):
        raise UsageError(f"cannot read {text!r} as a complex number (use a+bi)")
    try:
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot read {text!r} as a complex number (use a+bi)") from exc


def parse_mu(text: str) -> tuple[complex, complex, complex]:
    """Two or three comma-separated complex numbers; a missing third entry makes the sum zero."""
    parts = [p for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise UsageError("--mu needs two or three comma-separated entries")
    vals = [parse_complex(p) for p in parts]
    if len(vals) == 2:
        vals.append(-(vals[0] + vals[1]))
    elif abs(sum(vals)) > 1e-9 * max(1.0, max(abs(v) for v in vals)):
        raise UsageError(f"--mu entries must sum to zero (sum is {sum(vals)})")
    return tuple(vals)  # type: ignore[return-value]


def parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected y1,y2 but got {text!r}")
    try:
        y = (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageError(f"expected y1,y2 but got {text!r}") from exc
    if min(y) <= 0:
        raise UsageError("y1 and y2 must be positive")
    return y


def read_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"config file {path!r} not found")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string("[gl3kit]\n" + p.read_text())
    except configparser.Error as exc:
        raise UsageError(f"cannot parse {path!r}: {exc}") from exc
    out = {}
    for key, raw in parser["gl3kit"].items():
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} (known: {', '.join(sorted(CONFIG_KEYS))})")
        try:
            out[key] = CONFIG_KEYS[key](raw)
        except ValueError as exc:
            raise UsageError(f"config key {key!r}: cannot read {raw!r}") from exc
    return out


# --------------------------------------------------------------------------
# output


def encode(x: Any) -> Any:
    """Make x JSON-ready: complex -> [re, im] (or a real), arrays -> lists, NaN -> None."""
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, np.ndarray):
        return [encode(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0:
            return encode(x.real)
        return [encode(x.real), encode(x.imag)]
    if hasattr(x, "values") and hasattr(x, "d"):
        return encode(np.asarray(x.values))
    return x


@dataclass
class Output:
    command: str
    seed: int
    data: dict[str, Any] = field(default_factory=dict)
    table: list[dict[str, Any]] | None = None

    def document(self) -> dict[str, Any]:
        doc = {"schema_version": SCHEMA_VERSION, "command": self.command, "seed": self.seed}
        doc.update(self.data)
        if self.table is not None:
            doc["rows"] = self.table
        return encode(doc)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.document(), indent=2, allow_nan=False)
        if self.table is None:
            raise UsageError(f"`{self.command}` produces no table; use --format json")
        buf = io.StringIO()
        buf.write(f"# gl3kit schema_version={SCHEMA_VERSION} command={self.command} seed={self.seed}\n")
        rows = [encode(r) for r in self.table]
        cols = list(rows[0]) if rows else []
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_csv_cell(r[c]) for c in cols])
        return buf.getvalue().rstrip("\n")


def _csv_cell(v: Any) -> str:
    if isinstance(v, list):
        return ";".join(_csv_cell(x) for x in v)
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


# --------------------------------------------------------------------------
# commands


def cmd_wigner(args, cfg) -> Output:
    from .wigner import WEYL, euler_rotation, exact_to_complex, wigner_D, wigner_D_exact

    if args.d < 0:
        raise UsageError("d must be nonnegative")
    if args.element is not None:
        if args.element not in WEYL:
            raise UsageError(f"unknown element {args.element!r}; choose from {', '.join(WEYL)}")
        exact = wigner_D_exact(args.d, args.element)
        values = exact_to_complex(exact)
        data = {"d": args.d, "element": args.element, "matrix": values,
                "exact": [[repr(x) for x in row] for row in exact.values]}
    else:
        alpha, beta, gamma = args.euler or (0.0, 0.0, 0.0)
        values = np.asarray(wigner_D(args.d, euler_rotation(alpha, beta, gamma)).values)
        data = {"d": args.d, "euler": [alpha, beta, gamma], "matrix": values}
    table = [{"m_prime": mp, "m": m, "re": values[mp + args.d, m + args.d].real,
              "im": values[mp + args.d, m + args.d].imag}
             for mp in range(-args.d, args.d + 1) for m in range(-args.d, args.d + 1)]
    return Output("wigner", cfg["seed"], data, table)


def cmd_cg(args, cfg) -> Output:
    from .clebsch_gordan import cg

    if args.k not in (1, 2) or abs(args.a) > args.k or args.d < 0 or args.d + args.a < 0:
        raise UsageError("need k in {1, 2}, |a| <= k and d + a >= 0")
    rows = []
    for m in range(-args.d, args.d + 1):
        for i in range(-args.k, args.k + 1):
            c = cg(args.d, args.k, args.a, m, i)
            rows.append({"m": m, "i": i, "exact": repr(c), "value": complex(c)})
    return Output("cg", cfg["seed"], {"d": args.d, "k": args.k, "a": args.a}, rows)


def cmd_eigen(args, cfg) -> Output:
    from .lie_operators import lambda_x_eigenvalue
    from .spectral import lambda1, lambda2

    mu = parse_mu(args.mu)
    data = {"mu": list(mu), "lambda1": lambda1(mu), "lambda2": lambda2(mu)}
    if args.x is not None:
        data["x"] = args.x
        data["lambda_x"] = lambda_x_eigenvalue(mu, args.x)
    return Output("eigen", cfg["seed"], data)


def cmd_classify(args, cfg) -> Output:
    from .minimal_classifier import AmbiguousParameter, classify_minimal

    mu = parse_mu(args.mu)
    try:
        cls = classify_minimal(args.d, mu)
    except (AmbiguousParameter, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    basis = [{"label": b.label, "vector": np.asarray(b.vector)} for b in cls.basis]
    data = {"d": args.d, "mu": list(cls.mu.as_tuple()), "case": cls.case, "dimension": len(basis), "basis": basis}
    return Output("classify", cfg["seed"], data)


def _contour(cfg):
    from .whittaker_eval import ContourSpec

    kw = {k: cfg[k] for k in ("s1", "s2", "height", "density") if k in cfg}
    return ContourSpec(**kw)


def cmd_whittaker(args, cfg) -> Output:
    from .gamma_functional import PoleError
    from .whittaker_eval import w_star

    mu = parse_mu(args.mu)
    points = [parse_point(p) for p in args.y]
    comps = args.component if args.component else None
    if comps and any(abs(c) > args.d for c in comps):
        raise UsageError("components must satisfy |m'| <= d")
    rows = []
    for y in points:
        try:
            res = w_star(args.d, y, mu, contour=_contour(cfg), components=comps, tol=cfg.get("tol", 1e-10))
        except (PoleError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        which = comps or list(range(-args.d, args.d + 1))
        for mp, v in zip(which, np.atleast_1d(res.value)):
            rows.append({"y1": y[0], "y2": y[1], "m_prime": mp, "re": v.real, "im": v.imag, "error": res.error,
                         "height": res.height})
    return Output("whittaker", cfg["seed"], {"d": args.d, "mu": list(mu)}, rows)


def cmd_oracle(args, cfg) -> Output:
    from .wigner import basis_u, weyl_action
    from .whittaker_eval import (jacquet_central_oracle, jacquet_oracle, lambda_alpha, lambda_star, w_star)

    y = parse_point(args.y)
    rows = []
    if args.d in (0, 1):
        mu = parse_mu(args.mu) if args.mu else (2 + 0.1j, 0.4, -2.4 - 0.1j)
        if not (mu[0].real > mu[1].real > mu[2].real):
            raise UsageError("the Jacquet oracle needs Re(mu1) > Re(mu2) > Re(mu3)")
        w, err = jacquet_oracle(args.d, y, mu, nodes=cfg.get("nodes", 160))
        m = np.asarray(w.values)
        if args.d == 0:
            pairs = [("Lambda_000 W^0", lambda_alpha((0, 0, 0), mu) * m[0], mu)]
        else:
            pairs = [
                ("sqrt2 Lambda_011 bu^{1,-}_0 W^1", np.sqrt(2) * lambda_alpha((0, 1, 1), mu) * np.asarray(basis_u(1, 0, -1)) @ m, mu),
                ("-2 Lambda_101 bu^{1,-}_1 W^1", -2 * lambda_alpha((1, 0, 1), mu) * np.asarray(basis_u(1, 1, -1)) @ m,
                 weyl_action(mu, "w4")),
                ("2 Lambda_110 bu^{1,+}_1 W^1", 2 * lambda_alpha((1, 1, 0), mu) * np.asarray(basis_u(1, 1, 1)) @ m,
                 weyl_action(mu, "w5")),
            ]
        for label, lhs, nu in pairs:
            rhs = np.atleast_1d(w_star(args.d, y, nu, contour=_contour(cfg)).value)
            lhs = np.atleast_1d(lhs)
            rel = float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)))
            rows.append({"identity": label, "mu_rhs": list(nu), "jacquet": lhs, "mellin_barnes": rhs,
                         "relative_error": rel, "oracle_error": err})
    else:
        t = args.t
        mu = ((args.d - 1) / 2 + 1j * t, -(args.d - 1) / 2 + 1j * t, -2j * t)
        c, err = jacquet_central_oracle(args.d, y, t)
        lhs = lambda_star(args.d, mu) * c
        rhs = w_star(args.d, y, mu, contour=_contour(cfg), components=[0]).value[0]
        rows.append({"identity": "Lambda* W^d_{-d,0}", "mu_rhs": list(mu), "jacquet": lhs, "mellin_barnes": rhs,
                     "relative_error": abs(lhs - rhs) / abs(rhs), "oracle_error": abs(lambda_star(args.d, mu)) * err})
    return Output("oracle", cfg["seed"], {"d": args.d, "y": list(y)}, rows)


def cmd_multiplicities(args, cfg) -> Output:
    from .coefficient_flow import multiplicities

    if args.d0 < 0 or args.max_d < 0:
        raise UsageError("weights must be nonnegative")
    rows = [{"d": d, "multiplicity": multiplicities(args.d0, d)} for d in range(args.max_d + 1)]
    return Output("multiplicities", cfg["seed"], {"d0": args.d0}, rows)


def cmd_verify(args, cfg) -> Output:
    from .suites import ACCEPTANCE_ORDER, SUITES, run_suite

    names = ACCEPTANCE_ORDER if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = [run_suite(n, cfg["seed"]) for n in names]
    rows = [{"suite": r.suite, "check": c.name, "passed": c.passed, "value": c.value, "tolerance": c.tolerance,
             "count": c.count} for r in results for c in r.checks]
    data = {
        "passed": all(r.passed for r in results),
        "identities_checked": sum(r.count for r in results),
        "suites": [{k: v for k, v in r.to_dict().items() if k != "checks"} for r in results],
    }
    if not data["passed"]:
        data["failures"] = [{"suite": r.suite, **vars(c)} for r in results for c in r.failures()]
    return Output("verify", cfg["seed"], data, rows)


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS,
                        help="key=value file with defaults (seed, s1, s2, height, ...)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for random test points (GL3_SEED wins)")

    parser = argparse.ArgumentParser(prog="gl3kit", description="GL(3) minimal K-type and Whittaker toolkit",
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner", parents=[common], help="Wigner D-matrix D^d(k)")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--euler", type=float, nargs=3, metavar=("ALPHA", "BETA", "GAMMA"))
    g.add_argument("--element", help="named Weyl element: I, w2, w3, w4, w5, wl")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("cg", parents=[common], help="Clebsch-Gordan table C^{d,k,a}")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--a", type=int, default=0)
    p.set_defaults(func=cmd_cg)

    p = sub.add_parser("eigen", parents=[common], help="Casimir eigenvalues lambda1, lambda2 (and Lambda_x)")
    p.add_argument("--mu", required=True, help="a+bi,c+di[,e+fi]")
    p.add_argument("--x", type=float, default=None)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("classify", parents=[common], help="minimal-vector classification at weight d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("whittaker", parents=[common], help="W^{d*}(y, mu) by Mellin-Barnes quadrature")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--y", action="append", required=True, metavar="Y1,Y2", help="repeatable")
    p.add_argument("--component", type=int, action="append", metavar="M", help="restrict to these m' (repeatable)")
    p.set_defaults(func=cmd_whittaker)

    p = sub.add_parser("oracle", parents=[common], help="Jacquet-integral oracle against Mellin-Barnes")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--y", default="1,1", metavar="Y1,Y2")
    p.add_argument("--mu", default=None, help="shifted mu for d = 0, 1")
    p.add_argument("--t", type=float, default=0.3, help="imaginary part on the minimal line for d >= 2")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("multiplicities", parents=[common], help="multiplicity table for one minimal weight d0")
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.set_defaults(func=cmd_multiplicities)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", help="exact, dmatrix, casimir, ycalc, minimal, gamma, whittaker, lambdax, cg or all")
    p.set_defaults(func=cmd_verify)
    return parser


def _settings(args) -> dict[str, Any]:
    from .suites import resolve_seed

    cfg = read_config(getattr(args, "config", None))
    seed = getattr(args, "seed", None)
    cfg["seed"] = resolve_seed(seed if seed is not None else cfg.get("seed"))
    cfg["format"] = getattr(args, "format", None) or cfg.get("format", "json")
    if cfg["format"] not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg['format']!r}")
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _settings(args)
        out = args.func(args, cfg)
        text = out.render(cfg["format"])
    except UsageError as exc:
        print(f"gl3kit: error: {exc}", file=sys.stderr)
        return 2
    print(text)
    if args.command == "verify" and not out.data["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
