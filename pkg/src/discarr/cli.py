"""Command-line interface.

Weight vectors and torus points are comma-separated exact rationals in the
global hyperplane order: pairs (i, j) with ell+1 <= j <= n, 1 <= i < j,
sorted by j and then i.  Exit codes: 0 success, 1 failed verification,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .cohomology import (
    THREADS_ENV,
    ScanSpec,
    group_hits,
    local_betti,
    os_betti,
    resonance_scan,
    sandwich_check,
    tangent_cone_probe,
    verify_linearization,
)
from .combinatorics import (
    ArrangementParams,
    ParameterError,
    dims,
    enumerate_basis,
    hyperplane_pairs,
)
from .fox import DomainError
from .linalg import InvariantError
from .orlik_solomon import mu
from .resolution import (
    assemble_boundary_group,
    boundary_derivative,
    boundary_eval,
    boundary_laurent,
    verify_resolution,
)
from .scalars import format_scalar, to_rational
from .serialize import dumps, matrix_to_json, scan_to_csv, symbolic_matrix_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    ell: int
    q: int | None = None
    weights: list | None = None
    t: list | None = None
    primes: list[int] | None = None
    seed: int = 0
    fmt: str = "json"
    output: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def params(self) -> ArrangementParams:
        return ArrangementParams(self.n, self.ell)


def _parse_vector(text: str | None, path: str | None) -> list | None:
    if path:
        raw = Path(path).read_text().strip()
        if raw.startswith("["):
            return [to_rational(str(v)) for v in json.loads(raw)]
        text = raw.replace("\n", ",")
    if text is None:
        return None
    try:
        return [to_rational(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise UsageError(f"cannot parse vector {text!r}: {e}") from None


def _check_length(cfg: RunConfig, vec: list | None, name: str) -> None:
    if vec is not None and len(vec) != cfg.params.N:
        raise UsageError(
            f"{name} has {len(vec)} entries; A({cfg.n},{cfg.ell}) needs N={cfg.params.N} in the order "
            + " ".join(f"{i},{j}" for i, j in hyperplane_pairs(cfg.params))
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="discarr",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"Scans use ${THREADS_ENV} worker processes by default.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help, q=False, weights=False, t=False, primes=False, seed=False, fmt=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--ell", type=int, required=True)
        if q:
            p.add_argument("--q", type=int, required=True, help="degree")
        if weights:
            p.add_argument("--weights", help="lambda, comma-separated rationals")
            p.add_argument("--weights-file")
        if t:
            p.add_argument("--t", help="torus point, comma-separated nonzero rationals")
            p.add_argument("--t-file")
        if primes:
            p.add_argument("--primes", help="comma-separated primes p = 1 mod m")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if fmt:
            p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write here instead of stdout")
        return p

    add("basis", "list the nbc basis in degree q", q=True)
    add("dims", "basis sizes in every degree")
    p = add("mu", "matrix of mu^q(lambda)", q=True, weights=True)
    p.add_argument("--method", choices=("closed", "naive"), default="closed")
    p = add("boundary", "boundary matrix partial_q", q=True, weights=True, t=True)
    p.add_argument("--form", choices=("laurent", "group"), default="laurent",
                   help="symbolic form when neither --t nor --weights is given")
    add("betti", "Betti numbers of the Orlik-Solomon complex", weights=True)
    add("local-betti", "Betti numbers of a rank-one local system", weights=True, t=True, primes=True)
    p = add("verify-linearization", "compare mu with the derivative of the boundary", weights=True)
    p = add("verify-resolution", "check the resolution at random points", seed=True)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--no-cone", action="store_true", help="skip the mapping-cone block check")
    add("sandwich", "lower/upper bounds for local-system Betti numbers", weights=True, primes=True)
    p = add("resonance-scan", "resonance membership over sampled weights", seed=True, fmt=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--sampler", choices=("grid", "random"), default="grid")
    p.add_argument("--values", default="-2,-1,0,1,2")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--fix", action="append", default=[], help="pin a coordinate, e.g. 1,2=0")
    p.add_argument("--include-origin", action="store_true")
    p.add_argument("--workers", type=int)
    p = add("tangent-cone", "probe cohomology along t(u) = u^lambda", weights=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--u", default="2,3,5/2")
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, ns.n, ns.ell, getattr(ns, "q", None))
    cfg.weights = _parse_vector(getattr(ns, "weights", None), getattr(ns, "weights_file", None))
    cfg.t = _parse_vector(getattr(ns, "t", None), getattr(ns, "t_file", None))
    if getattr(ns, "primes", None):
        try:
            cfg.primes = [int(p) for p in ns.primes.split(",")]
        except ValueError:
            raise UsageError(f"bad prime list {ns.primes!r}") from None
    cfg.seed = getattr(ns, "seed", 0)
    cfg.fmt = getattr(ns, "fmt", "json")
    cfg.output = ns.output
    cfg.extra = {k: v for k, v in vars(ns).items() if k not in {"command", "n", "ell", "q", "weights", "weights_file",
                                                               "t", "t_file", "primes", "seed", "fmt", "output"}}
    params = cfg.params
    _check_length(cfg, cfg.weights, "weights")
    _check_length(cfg, cfg.t, "torus point")
    if cfg.q is not None and not 0 <= cfg.q <= params.rank:
        raise UsageError(f"degree q must be in 0..{params.rank}")
    return cfg


def _need(value, name: str):
    if value is None:
        raise UsageError(f"--{name} is required here")
    return value


def dispatch(cfg: RunConfig) -> tuple[str, int]:
    P, x = cfg.params, cfg.extra
    c = cfg.command
    if c == "basis":
        return dumps([[list(p) for p in b] for b in enumerate_basis(P, cfg.q)]), EXIT_OK
    if c == "dims":
        return ",".join(map(str, dims(P))) + "\n", EXIT_OK
    if c == "mu":
        if cfg.q >= P.rank:
            raise UsageError(f"mu^q needs q < {P.rank}")
        M = mu(P, cfg.q, _need(cfg.weights, "weights"), x["method"])
        return dumps(matrix_to_json(M, P.n, P.ell, cfg.q)), EXIT_OK
    if c == "boundary":
        if cfg.q < 1:
            raise UsageError("boundary degree starts at 1")
        if cfg.t is not None:
            M = boundary_eval(P, cfg.q, cfg.t)
        elif cfg.weights is not None:
            M = boundary_derivative(P, cfg.q, cfg.weights)
        elif x["form"] == "group":
            return dumps(symbolic_matrix_to_json(assemble_boundary_group(P, cfg.q), P.n, P.ell, cfg.q)), EXIT_OK
        else:
            return dumps(symbolic_matrix_to_json(boundary_laurent(P, cfg.q), P.n, P.ell, cfg.q)), EXIT_OK
        return dumps(matrix_to_json(M, P.n, P.ell, cfg.q)), EXIT_OK
    if c == "betti":
        return dumps(os_betti(P, _need(cfg.weights, "weights")).as_dict()), EXIT_OK
    if c == "local-betti":
        if cfg.t is not None:
            rep = local_betti(P, t=cfg.t)
        else:
            rep = local_betti(P, lam=_need(cfg.weights, "weights"), primes=cfg.primes)
        return dumps(rep.as_dict()), EXIT_OK
    if c == "verify-linearization":
        rep = verify_linearization(P, cfg.weights, sweep=cfg.weights is None)
        lines = [f"degree {q}: {'equal' if e else 'MISMATCH'}" for q, e in enumerate(rep.equal)]
        if rep.first_mismatch:
            m = rep.first_mismatch
            lines.append(f"first mismatch: degree {m.degree} row {m.row} col {m.col} "
                         f"mu={format_scalar(m.mu_value)} derivative={format_scalar(m.derivative_value)}")
        return "\n".join(lines) + "\n", EXIT_OK if rep.ok else EXIT_FAIL
    if c == "verify-resolution":
        print(f"seed {cfg.seed}", file=sys.stderr)
        rep = verify_resolution(P, x["samples"], cfg.seed, cone=not x["no_cone"])
        lines = [f"seed: {cfg.seed}", f"shapes: {rep.shapes_ok}", f"vanishes at t=1: {rep.trivial_ok}",
                 f"samples: {rep.samples}"] + rep.failures
        return "\n".join(lines) + "\n", EXIT_OK if rep.ok else EXIT_FAIL
    if c == "sandwich":
        try:
            rep = sandwich_check(P, _need(cfg.weights, "weights"), cfg.primes)
        except InvariantError as e:
            return f"VIOLATION: {e}\n", EXIT_FAIL
        out = {"lower": rep.lower, "middle": rep.middle, "upper": rep.upper, "local": rep.local.as_dict()}
        return dumps(out), EXIT_OK
    if c == "resonance-scan":
        print(f"seed {cfg.seed}", file=sys.stderr)
        fixed = {}
        for item in x["fix"]:
            try:
                pair, val = item.split("=")
                i, j = (int(v) for v in pair.split(","))
                fixed[(i, j)] = to_rational(val)
            except ValueError:
                raise UsageError(f"bad --fix {item!r}; expected i,j=value") from None
        spec = ScanSpec(x["sampler"], tuple(x["values"].split(",")), x["count"], cfg.seed, fixed, x["include_origin"])
        k, m = x["k"], x["m"]
        recs = resonance_scan(P, k, m, spec, x["workers"])
        if cfg.fmt == "csv":
            return scan_to_csv(P, k, m, recs), EXIT_OK
        groups = group_hits(P, k, m, recs, seed=cfg.seed)
        out = {
            "seed": cfg.seed,
            "records": [{"lambda": [format_scalar(v) for v in r.lam], "betti": r.betti, "member": r.member} for r in recs],
            "groups": [{"size": len(g.members), "span_dim": g.span_dim, "combos_tested": g.combos_tested,
                        "combos_hit": g.combos_hit} for g in groups],
        }
        return dumps(out), EXIT_OK
    if c == "tangent-cone":
        us = _parse_vector(x["u"], None)
        rep = tangent_cone_probe(P, x["k"], x["m"], _need(cfg.weights, "weights"), us)
        out = {
            "member": rep.member,
            "rows": [{"u": format_scalar(r.u), "b_k": r.betti_k, "hit": r.hit, "trivial": r.trivial} for r in rep.rows],
            "agree": rep.agree,
            "caveat": rep.caveat,
        }
        return dumps(out), EXIT_OK if rep.agree else EXIT_FAIL
    raise UsageError(f"unknown command {c}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = make_config(ns)
        text, code = dispatch(cfg)
    except (UsageError, ParameterError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
