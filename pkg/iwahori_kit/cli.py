"""
Командная строка iwahori-kit: вычисления, проверки тождеств и отчеты о перечислении решеток.

Every command prints one JSON document (schema "iwahori-kit/1") on stdout or
into --out; failures print a JSON error body and exit with 1 (verification),
2 (invalid input) or 3 (budget refusal).
"""
import argparse
import json
import logging
import sys
import time
import traceback
from typing import Callable, Dict, List, Optional, Sequence

from .affine_weyl import get_group
from .bernstein import bernstein_z, theorem11_rhs
from .cache import open_cache
from .characters import character
from .config import get_settings, setup_logging
from .errors import InvalidInputError, IwahoriError
from .hecke import HeckeAlgebra, get_algebra
from .lattice_models import (
    MODEL_GRASS,
    MODEL_M,
    MODELS,
    LatticeModelParams,
    candidate_for,
    enumerate_points,
    match_strata,
    predicted_count,
)
from .root_data import GL, KINDS, RootDatum, build_root_datum, lambda_set, make_coweight
from .spherical import is_lower_triangular, minuscule_identity_operands, q_analog_report, triangle_matrix

logger = logging.getLogger(__name__)

SCHEMA = "iwahori-kit/1"


def _add_group_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group", choices=KINDS, required=True)
    parser.add_argument("--d", type=int, required=True)


def _add_coweight_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--mu", "--lambda", dest="coweight", required=required,
                        help="comma-separated integers; for GSp either 2d entries or d entries plus --similitude")
    parser.add_argument("--similitude", type=int, default=None)


def _add_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-minus", dest="n_minus", type=int, default=0)
    parser.add_argument("--n-plus", dest="n_plus", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write the JSON report to this file")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--cache", default=None, help="directory for persisted Hecke products")
    common.add_argument("--budget", type=int, default=None, help="maximum candidate count for enumeration")
    common.add_argument("--timing", action="store_true", help="add wall_time_s to the report")

    parser = argparse.ArgumentParser(
        prog="iwahori",
        description="Iwahori-Hecke algebras of GL(d) and GSp(2d), Bernstein centre and lattice-model counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="root datum of the group")
    _add_group_options(p)

    p = sub.add_parser("lambda-set", parents=[common], help="the set Lambda(n±) or Lambda(r, n±)")
    _add_group_options(p)
    _add_bounds(p)
    p.add_argument("--r", type=int, default=None)

    p = sub.add_parser("admissible", parents=[common], help="the admissible set Adm(mu)")
    _add_group_options(p)
    _add_coweight_options(p)

    p = sub.add_parser("z", parents=[common], help="Bernstein central element z_lambda")
    _add_group_options(p)
    _add_coweight_options(p)
    p.add_argument("--check-central", action="store_true")

    p = sub.add_parser("theorem11", parents=[common], help="(-1)^{2<rho,lambda>} Bern(chi_lambda)")
    _add_group_options(p)
    _add_coweight_options(p)

    p = sub.add_parser("triangle", parents=[common], help="matrix of Bern(chi_mu) * I_K against I_{K nu K}")
    _add_group_options(p)
    _add_coweight_options(p)
    p.add_argument("--q-analog", dest="q_analog", action="store_true")

    p = sub.add_parser("verify-minuscule", parents=[common], help="check v^{l(t^mu)} z_mu * I_K = I_{K mu K}")
    _add_group_options(p)
    _add_coweight_options(p)

    for name, text in (("count-points", "enumerate F_q-points of a lattice model"),
                       ("match-strata", "compare orbit sizes with a candidate index set")):
        p = sub.add_parser(name, parents=[common], help=text)
        _add_group_options(p)
        _add_bounds(p)
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--r", type=int, default=None)
        p.add_argument("--model", choices=MODELS, default=MODEL_M)
        if name == "count-points":
            p.add_argument("--points", action="store_true", help="list the points themselves")
        else:
            _add_coweight_options(p, required=False)
    return parser


def parse_coweight(text: str, rd: RootDatum, similitude: Optional[int]) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as e:
        raise InvalidInputError(f"Coweight must be comma-separated integers, got {text!r}") from e
    return list(make_coweight(values, rd, similitude))


def _coweight(args: argparse.Namespace, rd: RootDatum) -> List[int]:
    similitude = args.similitude
    if similitude is None:
        similitude = getattr(args, "n_plus", 1) + getattr(args, "n_minus", 0)
    return parse_coweight(args.coweight, rd, similitude)


def _algebra(args: argparse.Namespace) -> HeckeAlgebra:
    return get_algebra(args.group, args.d)


def _lattice_params(args: argparse.Namespace) -> LatticeModelParams:
    return LatticeModelParams(args.group, args.d, args.n_minus, args.n_plus, args.q, args.model, args.r)


# --- commands ---------------------------------------------------------------------

def cmd_roots(args: argparse.Namespace) -> Dict[str, object]:
    rd = build_root_datum(args.group, args.d)
    return {
        "group": rd.kind,
        "d": rd.d,
        "n": rd.n,
        "positive_roots": [list(r) for r in rd.positive_roots],
        "simple_roots": [list(r) for r in rd.simple_roots],
        "highest_root": list(rd.highest_root),
        "positive_coroots": [list(c) for c in rd.positive_coroots],
        "rho_twice": list(rd.rho_twice_vector),
        "weyl_group_order": len(rd.weyl_group),
        "longest_element": list(rd.longest_element),
    }


def cmd_lambda_set(args: argparse.Namespace) -> Dict[str, object]:
    rd = build_root_datum(args.group, args.d)
    coweights = lambda_set(args.n_minus, args.n_plus, rd, args.r)
    return {"n_minus": args.n_minus, "n_plus": args.n_plus, "r": args.r,
            "count": len(coweights), "coweights": [list(c) for c in coweights]}


def cmd_admissible(args: argparse.Namespace) -> Dict[str, object]:
    W = get_group(args.group, args.d)
    mu = _coweight(args, W.rd)
    elements = sorted(W.admissible_set(mu), key=W.sort_key)
    return {"mu": mu, "count": len(elements), "elements": [W.describe(x) for x in elements]}


def cmd_z(args: argparse.Namespace) -> Dict[str, object]:
    algebra = _algebra(args)
    lam = _coweight(args, algebra.rd)
    z = bernstein_z(algebra, lam)
    payload = {"lambda": lam, "terms": len(z), "element": algebra.to_json(z)}
    if args.check_central:
        payload["central"] = algebra.is_central(z)
    return payload


def cmd_theorem11(args: argparse.Namespace) -> Dict[str, object]:
    algebra = _algebra(args)
    lam = _coweight(args, algebra.rd)
    rhs = theorem11_rhs(algebra, lam)
    multiplicities = sorted(character(lam, algebra.rd).dominant_part().items(), reverse=True)
    return {
        "lambda": lam,
        "sign": -1 if algebra.rd.rho_twice(lam) % 2 else 1,
        "multiplicities": [{"weight": list(mu), "multiplicity": m} for mu, m in multiplicities],
        "element": algebra.to_json(rhs),
    }


def cmd_triangle(args: argparse.Namespace) -> Dict[str, object]:
    algebra = _algebra(args)
    lam = _coweight(args, algebra.rd)
    matrix = triangle_matrix(algebra, lam)
    payload = {"lambda_max": lam, "lower_triangular": is_lower_triangular(matrix, algebra)}
    payload.update(matrix.to_json())
    if args.q_analog:
        payload["q_analog"] = q_analog_report(algebra, lam)
    return payload


def cmd_verify_minuscule(args: argparse.Namespace) -> Dict[str, object]:
    algebra = _algebra(args)
    mu = _coweight(args, algebra.rd)
    lhs, rhs = minuscule_identity_operands(algebra, mu)
    holds = lhs == rhs
    logger.info(f"Minuscule identity for {mu}: {'holds' if holds else 'FAILS'}")
    return {
        "mu": mu,
        "holds": holds,
        "message": "identity holds" if holds else "identity fails",
        "lhs": algebra.to_json(lhs),
        "rhs": algebra.to_json(rhs),
    }


def cmd_count_points(args: argparse.Namespace) -> Dict[str, object]:
    p = _lattice_params(args)
    points = enumerate_points(p, budget=args.budget)
    candidate = candidate_for(p)
    payload = {
        "parameters": p.to_dict(),
        "total": len(points),
        "candidate_size": len(candidate),
        "predicted_count": predicted_count(candidate, p.q) if p.model != MODEL_GRASS else None,
    }
    if p.kind == GL and p.model != MODEL_GRASS:
        by_r: Dict[str, int] = {}
        for chain in points:
            by_r[str(chain.r)] = by_r.get(str(chain.r), 0) + 1
        payload["by_r"] = by_r
    if args.points:
        payload["points"] = [chain.to_json() for chain in points]
    return payload


def cmd_match_strata(args: argparse.Namespace) -> Dict[str, object]:
    p = _lattice_params(args)
    points = enumerate_points(p, budget=args.budget)
    candidate = None
    if args.coweight:
        W = get_group(p.kind, p.d)
        candidate = W.admissible_set(_coweight(args, W.rd))
    report = match_strata(points, p, candidate)
    return report.to_json()


HANDLERS: Dict[str, Callable[[argparse.Namespace], Dict[str, object]]] = {
    "roots": cmd_roots,
    "lambda-set": cmd_lambda_set,
    "admissible": cmd_admissible,
    "z": cmd_z,
    "theorem11": cmd_theorem11,
    "triangle": cmd_triangle,
    "verify-minuscule": cmd_verify_minuscule,
    "count-points": cmd_count_points,
    "match-strata": cmd_match_strata,
}

ALGEBRA_COMMANDS = ("z", "theorem11", "triangle", "verify-minuscule")


# --- output -----------------------------------------------------------------------

def render_json(payload: Dict[str, object]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def render_table(payload: Dict[str, object]) -> str:
    """Plain two-column layout; lists of records become aligned rows."""
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list) and value and all(isinstance(row, dict) for row in value):
            columns = sorted({c for row in value for c in row})
            cells = [[json.dumps(row.get(c)) for c in columns] for row in value]
            widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(columns, widths)))
            for r in cells:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)))
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def _emit(payload: Dict[str, object], args: Optional[argparse.Namespace]) -> None:
    fmt = getattr(args, "format", "json")
    text = render_table(payload) if fmt == "table" else render_json(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Report written to {out}")
    else:
        sys.stdout.write(text + "\n")


def run(args: argparse.Namespace) -> int:
    """Выполняет одну команду и возвращает код выхода"""
    started = time.perf_counter()
    cache = None
    try:
        if args.cache is None:
            args.cache = get_settings().cache_dir
        if args.command in ALGEBRA_COMMANDS:
            cache = open_cache(args.cache, _algebra(args))
        body = HANDLERS[args.command](args)
        exit_code = 0 if body.get("holds", True) else 1
        payload = {"schema": SCHEMA, "command": args.command, "status": "ok" if exit_code == 0 else "failed"}
        payload.update(body)
    except IwahoriError as e:
        logger.error(f"{type(e).__name__}: {e}")
        exit_code = e.exit_code
        payload = {"schema": SCHEMA, "command": args.command, "status": "error", "error": e.to_dict()}
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}")
        logger.error(traceback.format_exc())
        exit_code = 1
        payload = {"schema": SCHEMA, "command": args.command, "status": "error",
                   "error": {"type": "InternalError", "message": str(e)}}
    if cache is not None:
        cache.save()
    if args.timing:
        payload["wall_time_s"] = round(time.perf_counter() - started, 6)
    _emit(payload, args)
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        settings = get_settings()
    except IwahoriError as e:
        _emit({"schema": SCHEMA, "command": None, "status": "error", "error": e.to_dict()}, None)
        return e.exit_code
    setup_logging(settings)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code in (0, None):
            return 0
        error = {"type": "InvalidInputError", "message": "invalid command line (see usage above)"}
        _emit({"schema": SCHEMA, "command": None, "status": "error", "error": error}, None)
        return InvalidInputError.exit_code
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
