# src/coinvariants/main.py
"""
Command-line front end.

Examples:
    coinvariants rank --voa virasoro:2,5 --ins "Wmin^6" --genus 0
    coinvariants fa-matrix --voa sl2:2 --ins "W1^2" --genus 1 --paper-order
    coinvariants genfunc --voa virasoro:2,7 --step Wmin --coeffs 8 --check
    coinvariants divisor --voa virasoro:3,4 --ins "[Wmax,Wmax,Wmax,Wmax]" --genus 0
    coinvariants nef --voa lattice:A2 --holomorphic-c 8
    coinvariants verify --voa "tensor:(virasoro:2,5,sl2:1)"

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 domain error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from dotenv import load_dotenv

from coinvariants.cli.query import format_insertion, parse_frame, parse_insertion
from coinvariants.cli.render import (
    check_lines,
    coefficients_json,
    divisor_lines,
    dumps,
    matrix_lines,
    nef_lines,
    number,
    rational_lines,
    report_lines,
)
from coinvariants.config.loader import get_section, get_settings
from coinvariants.divisor.chern import c1
from coinvariants.divisor.crosscheck import verify_pointed_closed_form, verify_tensor_c1
from coinvariants.divisor.nef import all_hold, degree_on_M04, nef_checks, pointed_nef_report
from coinvariants.errors import (
    CoinvariantsError,
    DomainError,
    ModuleIndexError,
    OracleDisagreementError,
    QueryError,
    SelectorError,
    SpecValidationError,
)
from coinvariants.fusion.engine import fa_matrix, rank, rank_with_frame
from coinvariants.fusion.properties import (
    VerificationReport,
    verify_fa_properties,
    verify_oracle_samples,
    verify_tensor_laws,
)
from coinvariants.fusion.spec import Insertion, VoaSpec, parse_fraction
from coinvariants.genfunc.rational import series
from coinvariants.genfunc.resolvent import indexing_function
from coinvariants.registry.io import save_spec
from coinvariants.registry.pointed import pointed_data_from_spec
from coinvariants.registry.selectors import FAMILIES, resolve, resolve_pointed

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_DOMAIN = 3


def _emit(lines: Iterable[str]) -> None:
    for line in lines:
        print(line)


def _settings() -> Dict[str, Any]:
    try:
        return get_settings() or {}
    except FileNotFoundError:
        return {}


def _section(name: str) -> Dict[str, Any]:
    try:
        return get_section(name)
    except FileNotFoundError:
        return {}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_rank(args: argparse.Namespace) -> int:
    voa = resolve(args.voa)
    ins = parse_insertion(voa, args.ins)
    frame = parse_frame(voa, args.frame)
    if frame is None:
        value = rank(voa, ins, args.genus, strict_stability=args.strict_stability)
    else:
        value = rank_with_frame(voa, ins, args.genus, *frame, strict_stability=args.strict_stability)
    if args.json:
        doc: Dict[str, Any] = {"voa": voa.display_name, "insertions": format_insertion(voa, ins),
                               "genus": args.genus, "rank": value}
        if frame is not None:
            doc["frame"] = [voa.labels[frame[0]], voa.labels[frame[1]]]
        print(dumps(doc))
    else:
        print(value)
    return EXIT_OK


def cmd_fa_matrix(args: argparse.Namespace) -> int:
    voa = resolve(args.voa)
    ins = parse_insertion(voa, args.ins)
    m = fa_matrix(voa, ins, args.genus)
    order = list(voa.paper_order) if args.paper_order else list(range(voa.size))
    if args.json:
        print(dumps({
            "voa": voa.display_name,
            "genus": m.genus,
            "insertions": [voa.labels[p] for p in m.insertions],
            "labels": [voa.labels[i] for i in order],
            "entries": [list(r) for r in m.permuted(order)],
        }))
    else:
        _emit(matrix_lines(voa, m, order))
    return EXIT_OK


def _direct_coefficients(voa: VoaSpec, deviation: Insertion, step: Insertion, frame: Sequence[int],
                         genus: int, count: int) -> List[int]:
    workers = int(_section("cli").get("max_workers", 4))

    def one(n: int) -> int:
        return rank_with_frame(voa, deviation + step.repeated(n + 3), genus, frame[0], frame[1])

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(one, range(count)))


def cmd_genfunc(args: argparse.Namespace) -> int:
    voa = resolve(args.voa)
    step = parse_insertion(voa, args.step)
    deviation = parse_insertion(voa, args.deviation)
    frame = parse_frame(voa, args.frame) or (voa.vacuum, voa.vacuum)
    count = args.coeffs if args.coeffs is not None else int(_settings().get("series_coefficients", 12))
    rf = indexing_function(voa, deviation, step, frame[0], frame[1], args.genus)
    coeffs = series(rf, count)

    direct: Optional[List[int]] = None
    if args.check:
        direct = _direct_coefficients(voa, deviation, step, frame, args.genus, count)
    agrees = direct is None or list(coeffs) == direct

    if args.json:
        doc: Dict[str, Any] = {**rf.to_dict(), "closed_form": str(rf), "series": coefficients_json(coeffs)}
        if direct is not None:
            doc["direct"] = direct
            doc["agrees"] = agrees
        print(dumps(doc))
    else:
        _emit(rational_lines(rf, coeffs))
        if direct is not None:
            print("direct: " + ", ".join(str(c) for c in direct))
            print("check: " + ("agrees" if agrees else "DISAGREES"))
    return EXIT_OK if agrees else EXIT_VERIFY_FAILED


def cmd_divisor(args: argparse.Namespace) -> int:
    voa = resolve(args.voa)
    ins = parse_insertion(voa, args.ins)
    d = c1(voa, ins, args.genus)
    checks = nef_checks(d)
    degree = degree_on_M04(d) if (d.g, d.n) == (0, 4) else None
    if args.json:
        doc: Dict[str, Any] = {
            "class": d.to_document().model_dump(by_alias=True),
            "checks": {name: {"holds": bool(c), "degree": None if c.degree is None else number(c.degree),
                              "witness": c.witness} for name, c in checks},
        }
        if degree is not None:
            doc["degree_on_M04"] = number(degree)
        print(dumps(doc))
    else:
        _emit(divisor_lines(format_insertion(voa, ins), d))
        if degree is not None:
            print(f"degree on M_0,4: {number(degree)}")
        _emit(check_lines(checks))
    logger.info("divisor checks %s", "pass" if all_hold(checks) else "fail")
    return EXIT_OK


def cmd_nef(args: argparse.Namespace) -> int:
    data = resolve_pointed(args.voa)
    report = pointed_nef_report(data, args.holomorphic_c)
    if args.json:
        print(dumps(report.to_dict()))
    else:
        _emit(nef_lines(report))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    voa = resolve(args.voa)
    cfg = _section("verify")
    max_n = args.max_n if args.max_n is not None else int(cfg.get("max_n", 3))
    max_g = args.max_g if args.max_g is not None else int(cfg.get("max_g", 1))
    reports: List[VerificationReport] = [
        verify_fa_properties(voa, max_n=max_n, max_g=max_g),
        verify_oracle_samples(voa, samples=int(cfg.get("oracle_samples", 50)), seed=int(cfg.get("seed", 0))),
    ]
    if voa.factors is not None:
        reports.append(verify_tensor_laws(voa, max_n=max_n, max_g=max_g))
        reports.append(verify_tensor_c1(voa, max_n=max_n, max_g=max_g))
    data = pointed_data_from_spec(voa)
    if data is not None:
        reports.append(verify_pointed_closed_form(data, max_n=max_n, max_g=max_g))
    passed = all(r.passed for r in reports)
    if args.json:
        print(dumps({"passed": passed, "reports": [r.to_dict() for r in reports]}))
    else:
        _emit(report_lines(reports))
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_registry(args: argparse.Namespace) -> int:
    if not args.voa:
        families = sorted(FAMILIES)
        if args.json:
            print(dumps({"families": families}))
        else:
            _emit(families)
        return EXIT_OK
    voa = resolve(args.voa)
    if args.json:
        print(save_spec(voa))
        return EXIT_OK
    print(f"{voa.display_name}: {voa.size} modules, c = {number(voa.central_charge)}")
    for i in voa.paper_order:
        print(f"  {voa.labels[i]:<10} weight {number(voa.weights[i]):<8} dual {voa.labels[voa.dual[i]]}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coinvariants",
                                     description="Ranks and Chern classes of bundles of VOA coinvariants.")
    parser.add_argument("--log-level", default="WARNING", help="Logging level (logs go to stderr).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, voa_required: bool = True) -> None:
        p.add_argument("--voa", required=voa_required, help="VOA selector, e.g. virasoro:2,5 or sl2:3.")
        p.add_argument("--json", action="store_true", help="Emit JSON instead of a table.")

    p = sub.add_parser("rank", help="Rank of a bundle of coinvariants.")
    common(p)
    p.add_argument("--ins", default="", help='Insertions, e.g. "Wmin^4,V^2" or "[W1,W2]".')
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--frame", default=None, help='Two extra legs "i,j" read as (W_i, W_j\').')
    p.add_argument("--strict-stability", action="store_true", help="Reject (g, n) with 2g - 2 + n <= 0.")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("fa-matrix", help="FA-matrix of an insertion multiset.")
    common(p)
    p.add_argument("--ins", default="")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--paper-order", action="store_true", help="Order modules by increasing conformal weight.")
    p.set_defaults(func=cmd_fa_matrix)

    p = sub.add_parser("genfunc", help="Indexing function as a rational function.")
    common(p)
    p.add_argument("--step", required=True, help="Step insertion alpha.")
    p.add_argument("--deviation", default="", help="Deviation insertion beta.")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--frame", default=None, help='Frame "i,j" (default: V,V).')
    p.add_argument("--coeffs", type=int, default=None, help="Series coefficients to print (settings default 12).")
    p.add_argument("--check", action="store_true", help="Recompute the coefficients as direct ranks.")
    p.set_defaults(func=cmd_genfunc)

    p = sub.add_parser("divisor", help="First Chern class and F-curve checks.")
    common(p)
    p.add_argument("--ins", default="", help='Ordered insertions, e.g. "[W1,W2,W1]".')
    p.add_argument("--genus", type=int, default=0)
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("nef", help="Positivity report for a pointed VOA.")
    common(p)
    p.add_argument("--holomorphic-c", default=None, type=_fraction_arg,
                   help="Central charge of a holomorphic VOA for the padding exponent.")
    p.set_defaults(func=cmd_nef)

    p = sub.add_parser("verify", help="Run the property suites on a spec.")
    common(p)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-g", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("registry", help="List selector families, or print a spec as JSON.")
    common(p, voa_required=False)
    p.set_defaults(func=cmd_registry)
    return parser


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, execute one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_INVALID

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (SpecValidationError, SelectorError, QueryError, ModuleIndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OracleDisagreementError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (CoinvariantsError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()
