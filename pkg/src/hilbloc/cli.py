"""Command-line front end.

Every subcommand parses its inputs exactly, dispatches to the corresponding
library operation, and emits a deterministic report (JSON with sorted keys
by default, TSV with ``--tsv``).  Exit codes: 0 success, 1 usage error,
2 theorem violation detected, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import cusp, flags, gb, node, oracle, tangent
from .coeffs import CoeffAlgebra
from .cusp import TheoremViolationError, TruncationError
from .parse import ParseError, parse_ideal_expr
from .reports import Report
from .rings import CurveRing, IdealGens

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_RESOURCE = 3

DEFAULT_TRUNC = 16
BASE_NAME = node.BASE_NAME


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


def build_ring(kind: str, trunc: int, symbolic_a: bool = False) -> CurveRing:
    names = ("a",) if symbolic_a else ()
    if kind == "node":
        alg = (CoeffAlgebra.free_poly(names) if names
               else CoeffAlgebra.rationals())
        return CurveRing.node_absolute(alg, trunc)
    if kind == "node-rel":
        alg = CoeffAlgebra.free_poly(names + (BASE_NAME,))
        return CurveRing.node_relative(alg, trunc, BASE_NAME)
    if kind == "cusp":
        alg = (CoeffAlgebra.free_poly(names) if names
               else CoeffAlgebra.rationals())
        return CurveRing.cusp(alg, trunc)
    raise UsageError(f"unknown ring {kind!r}")


def _ideal_from_expr(text: str, kind: str, trunc: int,
                     allow_symbolic: bool = False) -> IdealGens:
    expr = parse_ideal_expr(text)
    if expr.has_parameter and not allow_symbolic:
        raise UsageError(
            "this operation needs numeric coefficients; substitute a value "
            "for the parameter 'a'")
    ring = build_ring(kind, trunc, symbolic_a=expr.has_parameter)
    return IdealGens(ring, expr.elements(ring))


def _chain(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad chain {text!r}; expected comma-separated integers")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}")


def _pattern(ns) -> flags.FlagPattern:
    try:
        return flags.FlagPattern(ns.m, _chain(ns.chain))
    except ValueError as e:
        raise UsageError(str(e))


def _artin_base() -> CoeffAlgebra:
    return CoeffAlgebra.truncated_artin(("u", "v"), 3)


# -- subcommand handlers (payload, violations, exit code) ---------------------

def _cmd_colength(ns):
    I = _ideal_from_expr(ns.ideal, ns.ring, ns.trunc)
    try:
        return {"colength": oracle.colength(I)}, [], EXIT_OK
    except oracle.InfiniteColengthError:
        return {"colength": None, "infinite": True}, [], EXIT_OK


def _cmd_member(ns):
    elt = parse_ideal_expr(ns.element)
    if len(elt.generators) != 1:
        raise UsageError("the element argument must be a single polynomial")
    I = _ideal_from_expr(ns.ideal, ns.ring, ns.trunc)
    e = elt.elements(I.ring)[0]
    return {"member": oracle.member(e, I)}, [], EXIT_OK


def _cmd_classify(ns):
    if ns.ring == "node-rel":
        raise UsageError("classification applies to the node or cusp ring")
    I = _ideal_from_expr(ns.ideal, ns.ring, ns.trunc)
    try:
        if ns.ring == "node":
            return {"class": node.classify_node_ideal(I).as_dict()}, [], EXIT_OK
        return {"class": cusp.classify_cusp_ideal(I).as_dict()}, [], EXIT_OK
    except TheoremViolationError as e:
        return {"class": None}, [f"theorem-violation: {e}"], EXIT_VIOLATION


def _cmd_relations(ns):
    try:
        shape = node.DeformShape(ns.m, ns.i, relative=ns.relative)
    except ValueError as e:
        raise UsageError(str(e))
    derived = node.derive_flat_relations(shape)
    closed = node.closed_form_relations(shape)
    return {
        "m": ns.m, "i": ns.i, "relative": ns.relative,
        "equations": [repr(e) for e in derived],
        "count": len(derived),
        "matches_closed_form": derived.same_ideal(closed),
    }, [], EXIT_OK


def _model_payload(model) -> dict:
    return {
        "pattern": model.pattern.label(),
        "blocks": ["%s%d" % bw for bw in model.pattern.block_word()],
        "params": list(model.params),
        "equations": [repr(e) for e in model.equations],
        "equation_count": len(model.equations),
        "param_count": len(model.params),
    }


def _cmd_flag_model(ns):
    return {"model": _model_payload(flags.local_model(_pattern(ns)))}, [], EXIT_OK


def _cmd_flag_expected(ns):
    try:
        model = flags.expected_model(_pattern(ns))
    except ValueError as e:
        if "cataloged" in str(e):
            return {"cataloged": False, "reason": str(e)}, [], EXIT_OK
        raise UsageError(str(e))
    payload = {"cataloged": True, "model": _model_payload(model)}
    if ns.compare:
        derived = flags.local_model(_pattern(ns))
        payload["matches_derived"] = flags.models_equivalent(derived, model)
    return payload, [], EXIT_OK


def _cmd_flag_validate(ns):
    pattern = _pattern(ns)
    model = flags.local_model(pattern)
    rep = flags.validate_model_points(pattern, model, _artin_base(),
                                      trials=ns.trials, seed=ns.seed)
    violations = [f"model-vs-oracle counterexample: {c['direction']}"
                  for c in rep["counterexamples"]]
    return {"validation": rep}, violations, (
        EXIT_VIOLATION if violations else EXIT_OK)


def _cmd_lci_check(ns):
    model = flags.local_model(_pattern(ns))
    verdict = flags.check_lci(model, max_vars=ns.max_vars)
    if verdict is None:
        return ({"lci": None, "reason": "variable cap exceeded"}, [],
                EXIT_RESOURCE)
    return {"lci": verdict, "equation_count": len(model.equations)}, [], EXIT_OK


def _cmd_strata(ns):
    depth = ns.depth if ns.depth is not None else ns.m
    try:
        patterns = flags.enumerate_strata(ns.m, depth)
    except ValueError as e:
        raise UsageError(str(e))
    return {"m": ns.m, "depth": depth, "count": len(patterns),
            "patterns": [p.label() for p in patterns]}, [], EXIT_OK


def _cmd_assoc_form(ns):
    expr = parse_ideal_expr(ns.element)
    if len(expr.generators) != 1:
        raise UsageError("assoc-form takes a single polynomial")
    ring = build_ring("cusp", ns.trunc)
    e = expr.elements(ring)[0]
    try:
        form = cusp.associate_normal_form(e)
    except (ValueError, TruncationError) as e2:
        raise UsageError(str(e2))
    return {"canonical": str(form.canonical), "m": form.m, "n": form.n,
            "pencil_coefficient": form.d}, [], EXIT_OK


def _cmd_limit(ns):
    direction = {"0": cusp.TO_ZERO, "oo": cusp.TO_INFINITY,
                 cusp.TO_ZERO: cusp.TO_ZERO,
                 cusp.TO_INFINITY: cusp.TO_INFINITY}.get(ns.direction)
    if direction is None:
        raise UsageError(f"bad direction {ns.direction!r}; use 0 or oo")
    try:
        limit = cusp.flat_limit_certify(ns.m, ns.k, direction)
    except TheoremViolationError as e:
        return {"limit": None}, [f"theorem-violation: {e}"], EXIT_VIOLATION
    return {"family": {"m": ns.m, "k": ns.k}, "direction": direction,
            "limit": limit.as_dict()}, [], EXIT_OK


def _cmd_distinct(ns):
    a, b = _fraction(ns.a), _fraction(ns.b)
    if not a or not b:
        raise UsageError("pencil parameters must be nonzero")
    return {"m": ns.m, "k": ns.k, "a": str(a), "b": str(b),
            "distinct": cusp.distinctness(ns.m, ns.k, a, b)}, [], EXIT_OK


def _cmd_tangent(ns):
    if ns.ring != "cusp":
        raise UsageError("tangent computations are implemented for the cusp ring")
    I = _ideal_from_expr(ns.ideal, "cusp", ns.trunc)
    try:
        hom = tangent.hom_dim(I, path=ns.path)
    except gb.VariableCapError:
        return {"dim": None, "reason": "variable cap exceeded"}, [], EXIT_RESOURCE
    return {"dim": hom.dimension, "path": ns.path}, [], EXIT_OK


def _cmd_scan_p1(ns):
    rows = tangent.p1_scan(ns.colength)
    dims = sorted({d for _, d in rows})
    generic = min(dims)
    jumps = [label for label, d in rows if d != generic]
    return {"colength": ns.colength,
            "rows": [{"point": label, "dim": d} for label, d in rows],
            "generic_dim": generic, "jumps": jumps,
            "single_singularity": len(jumps) == 1}, [], EXIT_OK


def _cmd_acceptance(ns):
    from . import acceptance
    wanted = None
    if ns.criteria:
        wanted = sorted({int(p) for p in ns.criteria.split(",")})
    results = acceptance.run_criteria(wanted, seed=ns.seed)
    violations = [f"criterion {cid} failed" for cid, r in sorted(results.items())
                  if not r["pass"]]
    return {"criteria": {str(k): v for k, v in results.items()},
            "all_pass": not violations}, violations, (
        EXIT_VIOLATION if violations else EXIT_OK)


# -- argument wiring ----------------------------------------------------------

def _global_flags(p, suppress: bool):
    # accepted both before and after the subcommand; the subcommand copies
    # use SUPPRESS defaults so they never clobber values parsed up front
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--trunc", type=int, default=d(DEFAULT_TRUNC),
                   help="truncation order for curve rings")
    p.add_argument("--seed", type=int, default=d(None),
                   help="RNG seed (HILBLOC_SEED overrides the default)")
    p.add_argument("--ring", choices=("node", "node-rel", "cusp"),
                   default=d("cusp"), help="ambient curve ring")
    p.add_argument("--max-vars", type=int, default=d(gb.DEFAULT_MAX_VARS),
                   help="variable cap for Groebner computations")
    p.add_argument("--tsv", action="store_true",
                   default=d(False), help="emit TSV instead of JSON")


def _make_parser() -> _Parser:
    p = _Parser(prog="hilbloc", description=__doc__)
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        _global_flags(sp, suppress=True)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("colength", _cmd_colength, help="colength of an ideal")
    sp.add_argument("ideal")
    sp = add("member", _cmd_member, help="ideal membership")
    sp.add_argument("element")
    sp.add_argument("ideal")
    sp = add("classify", _cmd_classify, help="canonical form of an ideal")
    sp.add_argument("ideal")
    sp = add("relations", _cmd_relations, help="flatness relations of a shape")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--relative", action="store_true")
    for name, fn, hlp in (
            ("flag-model", _cmd_flag_model, "derived local model of a flag"),
            ("flag-expected", _cmd_flag_expected, "cataloged model of a flag"),
            ("flag-validate", _cmd_flag_validate, "randomized model validation"),
            ("lci-check", _cmd_lci_check, "complete-intersection check")):
        sp = add(name, fn, help=hlp)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--chain", required=True,
                        help="comma-separated lower indices, e.g. 2,2,1")
        sp.add_argument("--relative", action="store_true", default=True,
                        help="models are relative (accepted for clarity)")
        if name == "flag-expected":
            sp.add_argument("--compare", action="store_true",
                            help="also compare against the derived model")
        if name == "flag-validate":
            sp.add_argument("--trials", type=int, default=20)
    sp = add("strata", _cmd_strata, help="admissible flag patterns")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--depth", type=int, default=None)
    sp = add("assoc-form", _cmd_assoc_form, help="associate normal form")
    sp.add_argument("element")
    sp = add("limit", _cmd_limit, help="certified pencil boundary limit")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True, choices=(1, 2))
    sp.add_argument("--direction", required=True)
    sp = add("distinct", _cmd_distinct, help="pencil members distinct?")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True, choices=(1, 2))
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp = add("tangent", _cmd_tangent, help="tangent space dimension")
    sp.add_argument("ideal")
    sp.add_argument("--path", choices=("auto", "factorization", "generic"),
                    default="auto")
    sp = add("scan-p1", _cmd_scan_p1, help="tangent dims along a pencil line")
    sp.add_argument("--colength", type=int, required=True, choices=(2, 3))
    sp = add("acceptance", _cmd_acceptance, help="run the acceptance suite")
    sp.add_argument("--criteria", default=None,
                    help="comma-separated criterion numbers (default: all)")
    return p


def dispatch(argv: list) -> tuple:
    """Run one command; returns (report, exit_code)."""
    parser = _make_parser()
    ns = parser.parse_args(argv)
    if ns.seed is None:
        ns.seed = int(os.environ.get("HILBLOC_SEED", "0"))
    config = {"trunc": ns.trunc, "seed": ns.seed, "ring": ns.ring,
              "max_vars": ns.max_vars}
    payload, violations, code = ns.fn(ns)
    report = Report(command=argv, config=config, payload=payload,
                    violations=violations)
    return report, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        report, code = dispatch(argv)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    tsv = "--tsv" in argv
    sys.stdout.write(report.to_tsv() if tsv else report.to_json())
    return code


if __name__ == "__main__":
    raise SystemExit(main())
