"""Command-line front end.

Subcommands analyze exact weight data (7-D circle quotients, 6-D torus
quotients, the cohomogeneity-one family), decide positive curvature,
normalize actions, describe the special quotient families, and run the
sampled curvature verification for the 5-dimensional quotient.  Reports
are emitted as text or JSON (--json) under a versioned schema; integers
that may exceed 53-bit float precision are serialized as decimal
strings.

Exit codes: 0 success, 1 malformed input, 2 not an orbifold or
degenerate action, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curvature import ExhaustedBound, find_circle, flat_witness, repar_normal_form
from .eschenburg6 import (
    EDGE_ENDPOINTS,
    EDGE_ORDER,
    VERTEX_ORDER,
    GL2Z,
    Permute,
    Scale,
    Shift,
    Swap,
    TorusAction6,
    cohom1_params,
    cohom1_tables,
    effectivize,
    effectivize_cohom1,
    kernel_of_action,
    singular_report,
    validate6,
)
from .eschenburg7 import (
    PERM_NAMES,
    CircleAction7,
    Validity,
    almost_positive7,
    cohom1_match,
    gamma7,
    positive7,
    validate7,
)
from .o5 import CertificateError, o5_verify
from .special import NotPrimitiveError, ZeroWeightError, weighted_cp, wu_quotient

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_NOT_ORBIFOLD = 2
EXIT_INVARIANT = 3


class MalformedInput(ValueError):
    """Input that fails parsing or a stated precondition."""


class NotOrbifoldInput(ValueError):
    """Well-formed input defining a non-orbifold or degenerate action."""


def _triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise MalformedInput(f"expected three comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise MalformedInput(f"bad integer in {text!r}: {exc}") from exc


def _istr(n: int) -> str:
    return str(int(n))


def _triple_json(w) -> list[str]:
    return [_istr(x) for x in w]


def _frac_json(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _group_json(g) -> dict:
    return {
        "d1": _istr(g.d1),
        "d2": _istr(g.d2),
        "order": _istr(g.order),
        "name": str(g),
    }


def _move_json(move) -> dict:
    if isinstance(move, Swap):
        return {"kind": "Swap"}
    if isinstance(move, Scale):
        return {"kind": "Scale", "lam": _frac_json(move.lam), "mu": _frac_json(move.mu)}
    if isinstance(move, Shift):
        return {"kind": "Shift", "c": _istr(move.c), "d": _istr(move.d)}
    if isinstance(move, Permute):
        return {
            "kind": "Permute",
            "sigma": PERM_NAMES[move.sigma],
            "tau": PERM_NAMES[move.tau],
        }
    if isinstance(move, GL2Z):
        return {"kind": "GL2Z", "m": [[_istr(x) for x in row] for row in move.m]}
    raise TypeError(f"unknown move {move!r}")


def _action_json(act: TorusAction6) -> dict:
    return {
        "a": _triple_json(act.a),
        "b": _triple_json(act.b),
        "p": _triple_json(act.p),
        "q": _triple_json(act.q),
    }


_EDGE_ART = r"""
          C_id ------ L33 ------ C_(12)
         /    \                 /     \
      L11      L22           L12       L21
       /         \           /           \
  C_(23) -------- L32 ----------------- C_(132)
       \           \       /             /
      L23           \     /           L13
         \           \   /             /
          C_(123) ---- L31 ---- C_(13)
"""


def _hexagon(vertices: dict, edges: dict) -> dict:
    """Listing of the singular-locus incidence hexagon.

    Six vertex lines and nine edge lines; the three chord strata join
    opposite vertices through the interior.
    """
    vlines = [
        f"C_{PERM_NAMES[sig]}: {vertices[sig]}" for sig in VERTEX_ORDER
    ]
    elines = []
    for ij in EDGE_ORDER:
        s, t = EDGE_ENDPOINTS[ij]
        elines.append(
            f"L{ij[0]}{ij[1]}: {edges[ij]}"
            f" joins C_{PERM_NAMES[s]} -- C_{PERM_NAMES[t]}"
        )
    return {
        "art": _EDGE_ART.strip("\n").split("\n"),
        "vertices": vlines,
        "edges": elines,
    }


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (result dict, trace list, warnings list)
# ---------------------------------------------------------------------------


def _run_analyze7(args) -> tuple[dict, list, list]:
    try:
        act = CircleAction7(p=_triple(args.p), q=_triple(args.q))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    validity = validate7(act)
    result = {"validity": validity.value}
    if validity is Validity.NOT_ORBIFOLD:
        raise NotOrbifoldReport(result)
    result["vertex_groups"] = {
        PERM_NAMES[sig]: _group_json(gamma7(act, sig)) for sig in VERTEX_ORDER
    }
    result["positively_curved"] = positive7(act)
    result["almost_positively_curved"] = almost_positive7(act)
    match = cohom1_match(act)
    result["cohomogeneity_one_d"] = _istr(match) if match is not None else None
    return result, [], []


def _parse_action6(args) -> TorusAction6:
    try:
        return TorusAction6(
            a=_triple(args.a), b=_triple(args.b), p=_triple(args.p), q=_triple(args.q)
        )
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def _run_analyze6(args) -> tuple[dict, list, list]:
    act = _parse_action6(args)
    validity = validate6(act)
    result = {"validity": validity.value}
    if validity is not Validity.ORBIFOLD:
        raise NotOrbifoldReport(result)
    trace = []
    warnings = []
    kernel = kernel_of_action(act)
    result["action_kernel"] = _group_json(kernel)
    if not kernel.is_finite:
        result["validity"] = "Degenerate"
        raise NotOrbifoldReport(result)
    if not kernel.is_trivial:
        act, moves = effectivize(act)
        trace = [_move_json(m) for m in moves]
        warnings.append("action was ineffective; analyzed the effectivized action")
        result["effectivized_action"] = _action_json(act)
    rep = singular_report(act)
    result["vertex_groups"] = {
        PERM_NAMES[sig]: _group_json(rep.vertices[sig]) for sig in VERTEX_ORDER
    }
    result["edge_groups"] = {
        f"L{i}{j}": {
            "group": _group_json(rep.edges[(i, j)].group),
            "endpoints": [PERM_NAMES[s] for s in rep.edges[(i, j)].endpoints],
        }
        for (i, j) in EDGE_ORDER
    }
    result["singular_vertices"] = [
        PERM_NAMES[sig] for sig in VERTEX_ORDER if sig in rep.singular_vertices()
    ]
    result["singular_edges"] = [
        f"L{i}{j}" for (i, j) in EDGE_ORDER if (i, j) in rep.singular_edges()
    ]
    result["group_multiset"] = [
        {"d1": _istr(d1), "d2": _istr(d2)} for d1, d2 in rep.group_multiset()
    ]
    result["hexagon"] = _hexagon(
        {sig: str(rep.vertices[sig]) for sig in VERTEX_ORDER},
        {ij: str(rep.edges[ij].group) for ij in EDGE_ORDER},
    )
    return result, trace, warnings


def _run_cohom1(args) -> tuple[dict, list, list]:
    a, b = _triple(args.a), _triple(args.b)
    try:
        params = cohom1_params(args.d, a, b)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    try:
        tables = cohom1_tables(params)
        eff_a, eff_b = effectivize_cohom1(args.d, a, b)
    except ValueError as exc:
        raise NotOrbifoldReport({"validity": "NotOrbifold", "detail": str(exc)}) from exc
    result = {
        "d": _istr(params.d),
        "parameters": {
            "alpha": _istr(params.alpha),
            "beta": _istr(params.beta),
            "gamma": _istr(params.gamma),
            "delta": _istr(params.delta),
            "epsilon": _istr(params.epsilon),
        },
        "vertex_orders": {
            PERM_NAMES[sig]: _istr(n)
            for sig, n in zip(VERTEX_ORDER, tables.vertex_orders)
        },
        "edge_orders": {
            f"L{i}{j}": _istr(tables.edge_orders[(i, j)]) for (i, j) in EDGE_ORDER
        },
        "noncyclic_edges": [f"L{i}{j}" for (i, j) in tables.noncyclic_edges],
        "effectivized": {"a": _triple_json(eff_a), "b": _triple_json(eff_b)},
        "hexagon": _hexagon(
            {
                sig: f"order {n}"
                for sig, n in zip(VERTEX_ORDER, tables.vertex_orders)
            },
            {ij: f"order {tables.edge_orders[ij]}" for ij in EDGE_ORDER},
        ),
    }
    return result, [], []


def _run_poscurv(args) -> tuple[dict, list, list]:
    act = _parse_action6(args)
    if validate6(act) is not Validity.ORBIFOLD:
        raise NotOrbifoldReport({"validity": "NotOrbifold"})
    warnings = []
    witness = flat_witness(act)
    if witness is not None:
        result = {
            "positively_curved": False,
            "flat_witness": {
                "kind": witness.kind,
                "t": _frac_json(witness.t) if witness.t is not None else None,
                "eta": [_frac_json(e) for e in witness.eta],
            },
            "circle": None,
        }
        return result, [], warnings
    result = {"positively_curved": True, "flat_witness": None}
    try:
        combo = find_circle(act, bound=args.bound)
    except ExhaustedBound as exc:
        warnings.append(str(exc))
        result["circle"] = None
        return result, [], warnings
    circle = combo.circle(act)
    result["circle"] = {
        "lam": _istr(combo.lam),
        "mu": _istr(combo.mu),
        "p": _triple_json(circle.p),
        "q": _triple_json(circle.q),
        "positively_curved_7d": positive7(circle),
    }
    result["input_circles_positive_7d"] = {
        "pq": positive7(CircleAction7(p=act.p, q=act.q)),
        "ab": positive7(CircleAction7(p=act.a, q=act.b)),
    }
    return result, [], warnings


def _run_normalize(args) -> tuple[dict, list, list]:
    act = _parse_action6(args)
    if validate6(act) is not Validity.ORBIFOLD:
        raise NotOrbifoldReport({"validity": "NotOrbifold"})
    kernel = kernel_of_action(act)
    if not kernel.is_finite:
        raise NotOrbifoldReport(
            {"validity": "Degenerate", "action_kernel": _group_json(kernel)}
        )
    eff, moves = effectivize(act)
    repar = repar_normal_form(eff)
    trace = [_move_json(m) for m in moves]
    result = {
        "action_kernel": _group_json(kernel),
        "effectivized_action": _action_json(eff),
        "normal_form": {
            "case": repar.case,
            "n": _istr(repar.n) if repar.n is not None else None,
            "action": _action_json(repar.transformed),
            "moves": [_move_json(m) for m in repar.moves],
        },
    }
    return result, trace, []


def _run_wu(args) -> tuple[dict, list, list]:
    try:
        rep = wu_quotient(args.p, args.q)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    result = {
        "valid": rep.valid,
        "isolated_point_orders": [_istr(n) for n in rep.isolated_points],
        "rp2": {
            "generic_order": _istr(rep.rp2.generic_order),
            "distinguished_point_order": _istr(rep.rp2.distinguished_point_order),
            "larger": rep.rp2.larger,
        },
    }
    if not rep.valid:
        raise NotOrbifoldReport(result)
    return result, [], []


def _run_wcp(args) -> tuple[dict, list, list]:
    try:
        w = weighted_cp(args.p, args.q, args.r)
    except (ZeroWeightError, NotPrimitiveError) as exc:
        raise MalformedInput(f"{type(exc).__name__}: {exc}") from exc
    return {"weights": [_istr(x) for x in w.weights]}, [], []


def _run_o5_verify(args) -> tuple[dict, list, list]:
    try:
        rep = o5_verify(
            args.nu, samples=args.samples, restarts=args.restarts, seed=args.seed
        )
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    result = {
        "nu": rep.nu,
        "samples": rep.samples,
        "restarts": rep.restarts,
        "seed": rep.seed,
        "off_torus": {
            "count": rep.off_torus_count,
            "min_flatness_floor": rep.off_torus_floor,
            "certified_lower_bound": rep.off_torus_lower_bound,
            "positive": rep.off_torus_positive,
        },
        "torus": {
            "points": rep.torus_points,
            "max_search_flatness": rep.torus_max_flatness,
            "max_certificate_flatness": rep.torus_max_cert_flatness,
            "max_horizontality_residual": rep.torus_max_horizontality,
            "max_plane_angle": rep.torus_max_plane_angle,
            "flat": rep.torus_flat,
        },
        "uniqueness": {
            "near_zero_restarts": rep.uniqueness_checked,
            "max_angle": rep.uniqueness_max_angle,
            "ok": rep.uniqueness_ok,
        },
        "tangency": {"max_angle": rep.tangency_max_angle, "ok": rep.tangency_ok},
        "contains_distinguished_direction": {
            "max_residual": rep.contains_max_residual,
            "ok": rep.contains_ok,
        },
        "passed": rep.passed,
    }
    if not rep.passed:
        raise InvariantBreachReport(result)
    return result, [], []


class NotOrbifoldReport(Exception):
    """Carry a partial result out to the exit-2 path."""

    def __init__(self, result: dict):
        super().__init__("not an orbifold")
        self.result = result


class InvariantBreachReport(Exception):
    """Carry a failing verification report out to the exit-3 path."""

    def __init__(self, result: dict):
        super().__init__("verification failed")
        self.result = result


# ---------------------------------------------------------------------------
# parsing and rendering
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise MalformedInput(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="su3orbi", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit JSON")
    parser.add_argument(
        "--tol", type=float, default=1e-10, help="numeric tolerance recorded in reports"
    )
    # the global flags are also accepted after the subcommand; SUPPRESS
    # keeps the trailing copies from clobbering values given up front
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_parser(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p7 = add_parser("analyze7", help="orbifold analysis of a 7-D circle quotient")
    p7.add_argument("--p", required=True)
    p7.add_argument("--q", required=True)

    p6 = add_parser("analyze6", help="orbifold analysis of a 6-D torus quotient")
    for flag in ("--a", "--b", "--p", "--q"):
        p6.add_argument(flag, required=True)

    pc = add_parser("cohom1", help="cohomogeneity-one family tables")
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument("--a", required=True)
    pc.add_argument("--b", required=True)

    pp = add_parser("poscurv", help="positive-curvature decision and circle search")
    for flag in ("--a", "--b", "--p", "--q"):
        pp.add_argument(flag, required=True)
    pp.add_argument("--bound", type=int, default=100)

    pn = add_parser("normalize", help="effectivize and bring to normal form")
    for flag in ("--a", "--b", "--p", "--q"):
        pn.add_argument(flag, required=True)

    pw = add_parser("wu", help="circle quotient of the 5-manifold SU(3)/SO(3)")
    pw.add_argument("--p", type=int, required=True)
    pw.add_argument("--q", type=int, required=True)

    px = add_parser("wcp", help="weighted projective plane weights")
    px.add_argument("--p", type=int, required=True)
    px.add_argument("--q", type=int, required=True)
    px.add_argument("--r", type=int, required=True)

    po = add_parser("o5-verify", help="sampled curvature verification of SU(3)//SU(2)")
    po.add_argument("--nu", type=float, default=0.5)
    po.add_argument("--samples", type=int, default=1000)
    po.add_argument("--restarts", type=int, default=64)
    po.add_argument("--seed", type=int, default=42)

    return parser


_HANDLERS = {
    "analyze7": _run_analyze7,
    "analyze6": _run_analyze6,
    "cohom1": _run_cohom1,
    "poscurv": _run_poscurv,
    "normalize": _run_normalize,
    "wu": _run_wu,
    "wcp": _run_wcp,
    "o5-verify": _run_o5_verify,
}


def _render_text(report: dict, out) -> None:
    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            print(f"{pad}{key}:", file=out)
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            print(f"{pad}{key}:", file=out)
            for i, v in enumerate(value):
                emit(str(i), v, indent + 1)
        elif isinstance(value, list) and key in ("art", "vertices", "edges"):
            print(f"{pad}{key}:", file=out)
            for line in value:
                print(f"{pad}  {line}", file=out)
        else:
            print(f"{pad}{key}: {value}", file=out)

    for key, value in report.items():
        emit(key, value, 0)


def run(argv) -> int:
    """Execute one invocation; print the report; return the exit code."""
    out = sys.stdout
    report = {
        "schema_version": "1",
        "command": None,
        "input": {},
        "tol": None,
        "normalization_trace": [],
        "warnings": [],
        "result": {},
    }
    code = EXIT_OK
    as_json = "--json" in argv
    # merge weight flags with their values so argparse does not mistake
    # a leading minus sign (as in --a -2,0,2) for an option
    merged = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--a", "--b", "--p", "--q") and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    argv = merged
    try:
        args = _build_parser().parse_args(argv)
        as_json = args.json
        report["command"] = args.command
        report["tol"] = args.tol
        report["input"] = {
            k: v
            for k, v in vars(args).items()
            if k not in ("json", "tol", "command") and v is not None
        }
        result, trace, warnings = _HANDLERS[args.command](args)
        report["result"] = result
        report["normalization_trace"] = trace
        report["warnings"] = warnings
    except MalformedInput as exc:
        report["warnings"] = [f"malformed input: {exc}"]
        code = EXIT_MALFORMED
    except NotOrbifoldReport as exc:
        report["result"] = exc.result
        report["warnings"] = ["not an orbifold or degenerate action"]
        code = EXIT_NOT_ORBIFOLD
    except InvariantBreachReport as exc:
        report["result"] = exc.result
        report["warnings"] = ["verification failed"]
        code = EXIT_INVARIANT
    except (CertificateError, RuntimeError, AssertionError) as exc:
        report["warnings"] = [f"internal invariant breach: {exc}"]
        code = EXIT_INVARIANT
    report["exit_code"] = code
    if as_json:
        json.dump(report, out, indent=2, sort_keys=False)
        print(file=out)
    else:
        _render_text(report, out)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
