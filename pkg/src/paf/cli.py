"""Command-line front end.

Usage: ``paf COMMAND INPUT [options]`` with INPUT a JSON document path or
``-`` for stdin.  Documents are described in :mod:`paf.io`.

Exit codes: 0 success, 2 malformed input or configuration, 3 mathematical
inconsistency (including a failed ``verify``), 4 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io
from .autocorr import CorrMatrixPoly, correlate, residual
from .factorize import (
    FactorizationError,
    Tolerances,
    coprime_recover,
    count_solutions,
    enumerate_all,
    is_coprime,
    is_unique,
    common_gcd,
    root_pairs,
    validate,
)
from .gcd import DivisionByZeroError, gcd_many
from .oracle import BudgetExceededError, brute_force_factorizations
from .polyring import IncompatibleSpacesError
from .roots import RootFindingError, ZeroPolynomialError, find_roots

__all__ = ["JobConfig", "main", "run", "COMMANDS", "EXIT_OK", "EXIT_PARSE", "EXIT_MATH", "EXIT_BUDGET"]

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_BUDGET = 0, 2, 3, 4

COMMANDS = ("correlate", "factorize", "enumerate", "count", "check-unique", "roots", "gcd", "verify")

# flag name -> (environment variable, default)
TOLERANCES = {
    "tol_root": ("PAF_TOL_ROOT", Tolerances.cluster),
    "tol_circle": ("PAF_TOL_CIRCLE", Tolerances.circle),
    "tol_rank": ("PAF_TOL_RANK", Tolerances.rank),
    "tol_residual": ("PAF_TOL_RESIDUAL", Tolerances.residual),
}


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    input_path: str = "-"
    output_path: str | None = None
    tolerances: dict = field(default_factory=dict)
    threads: int = 1
    gamma_path: str | None = None
    budget: int = 100_000

    def tol(self) -> Tolerances:
        t = self.tolerances
        return Tolerances(
            rank=t["tol_rank"], circle=t["tol_circle"], residual=t["tol_residual"], cluster=t["tol_root"]
        )


def resolve_tolerances(flags: dict, environ=None) -> dict:
    """Flag value, else environment variable, else module default."""
    environ = os.environ if environ is None else environ
    out = {}
    for name, (env, default) in TOLERANCES.items():
        value, source = flags.get(name), f"--{name.replace('_', '-')}"
        if value is None and env in environ:
            value, source = environ[env], env
        if value is None:
            value = default
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{source}: not a number: {value!r}") from None
        if not (value > 0 and np.isfinite(value)):
            raise ConfigError(f"{source}: tolerance must be positive, got {value!r}")
        out[name] = value
    return out


def _read(path: str, label: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise io.ParseError(f"cannot read: {e.strerror}", path) from None
    return io.parse_json(text, label if path == "-" else path)


def _gamma_of(doc, where: str = "") -> CorrMatrixPoly:
    # accepts a gamma document or a signals document
    if isinstance(doc, dict) and "entries" not in doc and "signals" in doc:
        return correlate(io.signals_from_doc(doc, where))
    return io.gamma_from_doc(doc, where)


def _pairs_doc(pairs) -> dict:
    return {
        "multiplicities": pairs.multiplicities,
        "pairs": [
            {"delta": io.root_to_json(d), "reflected": io.complex_to_json(r), "mu": mu}
            for d, r, mu in pairs.offcircle_pairs
        ],
        "circle": [{"root": io.complex_to_json(e), "nu": nu} for e, nu in pairs.circle_roots],
    }


def _solution_doc(gamma, index, y) -> dict:
    return {"index": list(index), "residual": residual(gamma, y), **io.signals_to_doc(y)}


def _cmd_correlate(cfg, doc):
    return io.gamma_to_doc(correlate(io.signals_from_doc(doc)))


def _cmd_factorize(cfg, doc):
    gamma = _gamma_of(doc)
    t = cfg.tol()
    validate(gamma)
    if is_coprime(gamma, t):
        y, index, method = coprime_recover(gamma, tol=t), [], "coprime"
    else:
        sols = enumerate_all(gamma, t)
        index = next(iter(sols.indices()))
        y, method = sols.solution(index), "enumerate"
    return {"kind": "factorization", "method": method, **_solution_doc(gamma, index, y),
            "gamma": io.gamma_to_doc(gamma)}


def _cmd_enumerate(cfg, doc):
    gamma = _gamma_of(doc)
    sols = enumerate_all(gamma, cfg.tol())
    items = sols.materialize(cfg.threads)
    return {
        "kind": "solutions",
        "K": gamma.K,
        "N": gamma.N,
        "count": sols.base_count,
        **_pairs_doc(sols.pairs),
        "H": io.poly_to_doc(sols.H),
        "solutions": [_solution_doc(gamma, i, y) for i, y in items],
        "gamma": io.gamma_to_doc(gamma),
    }


def _cmd_count(cfg, doc):
    gamma = _gamma_of(doc)
    t = cfg.tol()
    n = count_solutions(gamma, t)
    h = common_gcd(gamma, t)
    mus = root_pairs(h, t).multiplicities if h.degree_bound else []
    return {"count": n, "multiplicities": mus}


def _cmd_check_unique(cfg, doc):
    gamma = _gamma_of(doc)
    t = cfg.tol()
    unique = is_unique(gamma, t)
    h = common_gcd(gamma, t)
    roots = []
    if h.degree_bound:
        pairs = root_pairs(h, t)
        for d, r, mu in pairs.offcircle_pairs:
            roots.append({"root": io.root_to_json(d), "multiplicity": mu, "on_circle": False})
            roots.append({"root": io.complex_to_json(r), "multiplicity": mu, "on_circle": False})
        for e, nu in pairs.circle_roots:
            roots.append({"root": io.complex_to_json(e), "multiplicity": nu, "on_circle": True})
    return {"unique": unique, "count": count_solutions(gamma, t), "H": io.poly_to_doc(h), "roots": roots}


def _cmd_roots(cfg, doc):
    p = io.poly_from_doc(doc)
    return io.factorization_to_doc(find_roots(p, tol_cluster=cfg.tolerances["tol_root"]))


def _cmd_gcd(cfg, doc):
    polys = io.get_field(doc, "polys")
    if not isinstance(polys, list) or not polys:
        raise io.ParseError("expected a nonempty list of polynomials", "polys")
    ps = [io.poly_from_doc(p, f"polys[{k}]") for k, p in enumerate(polys)]
    r = gcd_many(ps, cfg.tolerances["tol_rank"], tol_cluster=cfg.tolerances["tol_root"])
    return {
        "gcd": io.poly_to_doc(r.gcd),
        "cofactors": [io.poly_to_doc(c) for c in r.cofactors],
        "residual": r.residual,
    }


def _cmd_verify(cfg, doc):
    if cfg.gamma_path is not None:
        gamma = _gamma_of(_read(cfg.gamma_path, "<gamma>"), "gamma")
    else:
        gamma = _gamma_of(io.get_field(doc, "gamma"), "gamma")
    if isinstance(doc, dict) and "solutions" in doc:
        sols = doc["solutions"]
        if not isinstance(sols, list) or not sols:
            raise io.ParseError("expected a nonempty list", "solutions")
        ys = [io.signals_from_doc(s, f"solutions[{k}]") for k, s in enumerate(sols)]
    else:
        ys = [io.signals_from_doc(doc)]
    res = []
    for y in ys:
        if y.K != gamma.K or y.N != gamma.N:
            raise io.ParseError(f"signals are {y.K} x {y.N} but gamma has K={gamma.K}, N={gamma.N}", "signals")
        res.append(residual(gamma, y))
    tol = cfg.tolerances["tol_residual"]
    out = {"ok": max(res) <= tol, "tol_residual": tol, "max_residual": max(res), "residuals": res}
    return out


def _cmd_oracle(cfg, doc):
    gamma = _gamma_of(doc)
    validate(gamma)
    rep = brute_force_factorizations(gamma, cfg.tolerances["tol_residual"], budget=cfg.budget)
    return {
        "candidate_count": rep.candidate_count,
        "count": len(rep.accepted),
        "max_residual": rep.max_residual,
        "solutions": [io.signals_to_doc(y) for y in rep.accepted],
    }


_HANDLERS = {
    "correlate": _cmd_correlate,
    "factorize": _cmd_factorize,
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "check-unique": _cmd_check_unique,
    "roots": _cmd_roots,
    "gcd": _cmd_gcd,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}

_MATH_ERRORS = (
    FactorizationError,
    ZeroPolynomialError,
    RootFindingError,
    DivisionByZeroError,
    IncompatibleSpacesError,
    ArithmeticError,
)


def run(cfg: JobConfig, stdout=None, stderr=None) -> int:
    """Execute one job; the document goes to ``cfg.output_path`` or ``stdout``."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        doc = _read(cfg.input_path, "<stdin>")
        out = _HANDLERS[cfg.command](cfg, doc)
    except BudgetExceededError as e:
        print(f"paf: budget exceeded: {e}", file=stderr)
        return EXIT_BUDGET
    except io.ParseError as e:
        print(f"paf: parse error: {e}", file=stderr)
        return EXIT_PARSE
    except _MATH_ERRORS as e:
        print(f"paf: {e}", file=stderr)
        return EXIT_MATH
    except ValueError as e:
        # shape and finiteness errors raised while building the input objects
        print(f"paf: parse error: {e}", file=stderr)
        return EXIT_PARSE
    text = io.dumps(out)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as e:
            print(f"paf: cannot write {cfg.output_path}: {e.strerror}", file=stderr)
            return EXIT_PARSE
    else:
        print(text, file=stdout)
    if cfg.command == "verify" and not out["ok"]:
        print(f"paf: residual {out['max_residual']:.3e} exceeds {out['tol_residual']:.3e}", file=stderr)
        return EXIT_MATH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="input JSON document ('-' for stdin)")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--tol-root", type=str, help="root clustering distance [env PAF_TOL_ROOT]")
    common.add_argument("--tol-circle", type=str, help="unit-circle band [env PAF_TOL_CIRCLE]")
    common.add_argument("--tol-rank", type=str, help="relative singular-value threshold [env PAF_TOL_RANK]")
    common.add_argument("--tol-residual", type=str, help="accepted residual [env PAF_TOL_RESIDUAL]")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads for enumeration (default: logical CPUs)")

    parser = argparse.ArgumentParser(
        prog="paf", description="Rank-one factorization of correlation matrix polynomials."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(COMMANDS) + "}")
    helps = {
        "correlate": "signals document -> gamma document",
        "factorize": "one canonical factorization",
        "enumerate": "all factorizations with their indices",
        "count": "number of factorizations",
        "check-unique": "uniqueness decision with the roots of H",
        "roots": "roots of a polynomial document",
        "gcd": "gcd of {\"polys\": [...]}",
        "verify": "residual of signals against gamma",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            p.add_argument("--gamma", help="gamma (or signals) document; default: the embedded 'gamma'")
    oracle = sub.add_parser("oracle", parents=[common])
    oracle.add_argument("--budget", type=int, default=100_000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tols = resolve_tolerances(
            {k: getattr(args, k) for k in TOLERANCES}
        )
    except ConfigError as e:
        print(f"paf: configuration error: {e}", file=sys.stderr)
        return EXIT_PARSE
    if args.threads < 1:
        print("paf: configuration error: --threads must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    cfg = JobConfig(
        command=args.command,
        input_path=args.input,
        output_path=args.output,
        tolerances=tols,
        threads=args.threads,
        gamma_path=getattr(args, "gamma", None),
        budget=getattr(args, "budget", 100_000),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
