"""Command-line front end.

Every command prints one JSON report (or a flat text rendering with
``--report text``) and exits 0 when its checks pass, 1 when a verification
fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import coxeter_algebra as ca
from .acceptance import CRITERIA, AcceptanceConfig
from .exact_linalg import ChainComplex, ExactMatrix, cohomology_dims, format_rational
from .glq_flags import DEFAULT_MAX_FLAGS, FeasibilityError, dl_cohomology_check
from .groups import coxeter_group
from .parabolic_complexes import master_cohomology_check, master_vs_vanishing_check, vanishing_cycles_complex
from .sheaf_models import (
    InvalidSheafError,
    SheafShapeError,
    amonodromic_p,
    dumps,
    fourier_ggm,
    ggm_from_json,
    ggm_to_json,
    hyp_from_json,
    hyp_to_json,
    is_amonodromic_hyp,
    p_equivalence,
    q_equivalence,
    takeuchi_check,
    validate_ggm,
    validate_hyp,
)
from .tableaux import (
    check_partition,
    check_subset,
    descent_set,
    kostka,
    normalize_weight,
    parse_int_list,
    small_kostka_alt,
    small_kostka_syt,
    standard_tableaux,
    subsets,
    syt_with_descents,
)

DEFAULT_MAX_N = 5
# the comparison with the vanishing-cycles side builds S_{n+1}-modules by hand
VANISHING_MAX_N = 3


class UsageError(Exception):
    """Bad command line or unreadable input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, ExactMatrix):
        return x.to_json()
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if is_dataclass(x):
        return {f.name: jsonable(getattr(x, f.name)) for f in fields(x)}
    return str(x)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(_key(x) for x in k)
    return str(k)


# ---------------------------------------------------------------------------
# argument helpers

def _ints(text: str, what: str) -> tuple:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise UsageError(f"--{what}: {exc}") from None


def _partition(text: str, what: str = "lambda") -> tuple:
    p = _ints(text, what)
    try:
        return check_partition(p)
    except ValueError:
        raise UsageError(f"--{what}: {text!r} is not a partition (parts must be positive and weakly decreasing)") from None


def _subset(text: str, n: int, what: str = "set") -> tuple:
    I = _ints(text, what)
    try:
        return check_subset(I, n)
    except ValueError as exc:
        raise UsageError(f"--{what}: {text!r}: {exc}") from None


def _bounded(value: int, limit: int, flag: str) -> int:
    if value < 0:
        raise UsageError(f"{flag}: {value} must be non-negative")
    if value > limit:
        raise UsageError(f"{flag}: {value} exceeds --max-n {limit}")
    return value


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"--in: cannot read {path!r} ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--in: {path!r} is not JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise UsageError(f"--in: {path!r} must hold a JSON object")
    return data


def _load(path: str, reader):
    data = _read_json(path)
    try:
        return reader(data)
    except (SheafShapeError, ValueError) as exc:
        raise UsageError(f"--in {path!r}: {exc}") from None


def _write(path: str | None, payload: dict) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(dumps(payload))
    except OSError as exc:
        raise UsageError(f"--out: cannot write {path!r} ({exc.strerror})") from None


# ---------------------------------------------------------------------------
# commands; each returns (passed, inputs, result)

def cmd_kostka(args, opts):
    lam = _partition(args.lam)
    beta = _ints(args.beta, "beta")
    try:
        weight = normalize_weight(beta)
    except ValueError as exc:
        raise UsageError(f"--beta: {exc}") from None
    value = kostka(lam, weight) if sum(lam) == sum(weight) else 0
    return True, {"lambda": lam, "beta": beta}, {"kostka": value}


def cmd_small_kostka(args, opts):
    n = _bounded(args.n, max(opts.max_n, 8), "--n")
    lam = _partition(args.lam)
    if sum(lam) != n + 1:
        raise UsageError(f"--lambda: {args.lam!r} is not a partition of n+1 = {n + 1}")
    I = _subset(args.set, n)
    alt = small_kostka_alt(lam, I, n)
    syt = small_kostka_syt(lam, I, n)
    result = {"alternating_sum": alt, "descent_count": syt, "agree": alt == syt}
    return alt == syt, {"n": n, "lambda": lam, "set": I}, result


def cmd_syt(args, opts):
    lam = _partition(args.lam)
    if args.set is None:
        tabs = standard_tableaux(lam)
        I = None
    else:
        I = _subset(args.set, max(sum(lam) - 1, 0))
        tabs = syt_with_descents(lam, I)
    rows = [{"rows": [list(r) for r in t.rows], "descents": list(descent_set(t))} for t in tabs]
    return True, {"lambda": lam, "set": I}, {"count": len(rows), "tableaux": rows}


def _group(text: str):
    try:
        return coxeter_group(text)
    except ValueError as exc:
        raise UsageError(f"--coxeter: {exc}") from None


def cmd_solomon(args, opts):
    W = _group(args.coxeter)
    if W.order > 720:
        raise UsageError(f"--coxeter: {args.coxeter!r} has order {W.order}; the limit is 720")
    sol = ca.solomon_decomposition_check(W)
    induced = [ca.induced_eq_sum_of_ribbons(W, I) for I in subsets(W.rank)]
    passed = sol["passed"] and all(r["passed"] for r in induced)
    return passed, {"coxeter": W.name}, {"solomon": sol, "induced": induced}


def cmd_descent_basis(args, opts):
    W = _group(args.coxeter)
    if W.order > 120:
        raise UsageError(f"--coxeter: {args.coxeter!r} has order {W.order}; the limit is 120")
    elements = {W.word_name(w): ca.format_element(ca.descent_basis_elt(W, w)) for w in range(W.order)}
    result = {"elements": elements}
    passed = True
    if W.name == coxeter_group("A2").name:
        passed = ca.descent_basis_by_words(W) == ca.reference_s3_descent_basis()
        result["matches_reference_s3"] = passed
    return passed, {"coxeter": W.name}, result


def cmd_master_complex(args, opts):
    n = _bounded(args.n, opts.max_n, "--n")
    report = master_cohomology_check(n, opts.threads)
    passed = report["passed"]
    result = {"master": report}
    if args.compare_vanishing:
        if n > VANISHING_MAX_N:
            raise UsageError(f"--compare-vanishing: n = {n} is above {VANISHING_MAX_N}")
        cmp = master_vs_vanishing_check(n, opts.threads)
        result["vanishing_comparison"] = cmp
        passed &= cmp["passed"]
    return passed, {"n": n}, result


def cmd_ggm(args, opts):
    G = _load(args.infile, ggm_from_json)
    inputs = {"action": args.action, "in": args.infile, "out": args.out}
    try:
        if args.action == "check":
            report = validate_ggm(G)
            if report["passed"]:
                _write(args.out, ggm_to_json(G))
            return report["passed"], inputs, report
        if args.action == "ft":
            F = fourier_ggm(G)
            _write(args.out, ggm_to_json(F))
            ok = validate_ggm(F)["passed"]
            return ok, inputs, {"dims": G.dims(), "ft_dims": F.dims(), "ft_valid": ok, "sheaf": ggm_to_json(F)}
        E = q_equivalence(G)
        _write(args.out, hyp_to_json(E))
        ok = validate_hyp(E)["passed"]
        tk = takeuchi_check(G, E)
        return ok and tk, inputs, {"hyp_valid": ok, "takeuchi": tk, "sheaf": hyp_to_json(E)}
    except InvalidSheafError as exc:
        return False, inputs, exc.report


def cmd_hyp(args, opts):
    E = _load(args.infile, hyp_from_json)
    inputs = {"action": args.action, "in": args.infile, "out": args.out}
    try:
        if args.action == "check":
            report = validate_hyp(E)
            if report["passed"]:
                _write(args.out, hyp_to_json(E))
            return report["passed"], inputs, report
        if args.action == "vanishing":
            c: ChainComplex = vanishing_cycles_complex(E)
            h = cohomology_dims(c, opts.threads)
            result = {"term_dims": list(c.dims), "cohomology": h, "acyclic_in_positive_degrees": all(x == 0 for x in h[1:])}
            return result["acyclic_in_positive_degrees"], inputs, result
        if args.action == "to-ggm":
            G = p_equivalence(E)
            _write(args.out, ggm_to_json(G))
            ok = validate_ggm(G)["passed"]
            return ok, inputs, {"ggm_valid": ok, "sheaf": ggm_to_json(G)}
        if not validate_hyp(E)["passed"]:
            raise InvalidSheafError(validate_hyp(E))
        amono = is_amonodromic_hyp(E)
        result = {"amonodromic": amono}
        if amono:
            G = amonodromic_p(E)
            _write(args.out, ggm_to_json(G))
            result["sheaf"] = ggm_to_json(G)
        return amono, inputs, result
    except InvalidSheafError as exc:
        return False, inputs, exc.report


def cmd_dl(args, opts):
    if args.n < 0:
        raise UsageError(f"--n: {args.n} must be non-negative")
    try:
        report = dl_cohomology_check(args.n, args.q, opts.max_flags, opts.threads)
    except FeasibilityError as exc:
        raise UsageError(f"--max-flags: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"--q: {exc}") from None
    return report["passed"], {"n": args.n, "q": args.q, "max_flags": opts.max_flags}, report


def cmd_selftest(args, opts):
    chosen = _ints(args.only, "only") if args.only else tuple(range(1, len(CRITERIA) + 1))
    for k in chosen:
        if not 1 <= k <= len(CRITERIA):
            raise UsageError(f"--only: no criterion {k}")
    cfg = AcceptanceConfig(max_flags=opts.max_flags, threads=opts.threads)
    results = []
    for k in chosen:
        r = CRITERIA[k - 1](cfg)
        if not opts.quiet:
            print(r.line(), file=sys.stderr)
        results.append(r)
    summary = [{"criterion": r.number, "title": r.title, "passed": r.passed,
                "seconds": round(r.seconds, 3), "details": r.details} for r in results]
    return all(r.passed for r in results), {"criteria": list(chosen)}, {"criteria": summary}


# ---------------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand from clobbering a flag given before it
    s = argparse.SUPPRESS
    parser.add_argument("--threads", type=int, default=s, help="rank-computation threads (default: DD_THREADS or 1)")
    parser.add_argument("--max-flags", type=int, default=s, help=f"largest flag variety to enumerate (default {DEFAULT_MAX_FLAGS})")
    parser.add_argument("--max-n", type=int, default=s, help=f"largest rank accepted by master-complex (default {DEFAULT_MAX_N})")
    parser.add_argument("--report", choices=("json", "text"), default=s)
    parser.add_argument("--quiet", action="store_true", default=s, help="no progress lines on stderr")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kostka-duality", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    _common(p)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        _common(sp)
        sp.set_defaults(func=func)
        return sp

    sp = add("kostka", cmd_kostka, "Kostka number K_{lambda,beta}")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--beta", required=True)

    sp = add("small-kostka", cmd_small_kostka, "small Kostka number by both methods")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--set", required=True, help="comma-separated subset of 1..n (may be empty)")

    sp = add("syt", cmd_syt, "standard tableaux of a shape, optionally with a fixed descent set")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--set", default=None)

    sp = add("solomon", cmd_solomon, "ribbon decomposition of the group algebra")
    sp.add_argument("--coxeter", required=True, help="A<k> or I2:<m>")

    sp = add("descent-basis", cmd_descent_basis, "the descent basis d_w as word sums")
    sp.add_argument("--coxeter", default="A2")

    sp = add("master-complex", cmd_master_complex, "cohomology of the master complex")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--compare-vanishing", action="store_true", help="also compare with the Kostka sheaf side (n <= 3)")

    sp = add("ggm", cmd_ggm, "operations on GGM sheaf files")
    sp.add_argument("action", choices=("check", "ft", "to-hyp"))
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", default=None)

    sp = add("hyp", cmd_hyp, "operations on hyperbolic sheaf files")
    sp.add_argument("action", choices=("check", "vanishing", "to-ggm", "amono"))
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", default=None)

    sp = add("dl", cmd_dl, "Deligne-Lusztig complex over F_q")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = add("selftest", cmd_selftest, "run the acceptance criteria")
    sp.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return p


class _Options:
    def __init__(self, ns):
        env = os.environ.get("DD_THREADS")
        self.threads = getattr(ns, "threads", None) or (int(env) if env and env.isdigit() else None)
        self.max_flags = getattr(ns, "max_flags", DEFAULT_MAX_FLAGS)
        self.max_n = getattr(ns, "max_n", DEFAULT_MAX_N)
        self.report = getattr(ns, "report", "json")
        self.quiet = getattr(ns, "quiet", False)
        if self.threads is not None and self.threads < 1:
            raise UsageError(f"--threads: {self.threads} must be positive")
        if self.max_flags < 1:
            raise UsageError(f"--max-flags: {self.max_flags} must be positive")


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    report = {"command": argv}
    try:
        ns = build_parser().parse_args(argv)
        opts = _Options(ns)
        passed, inputs, result = ns.func(ns, opts)
    except UsageError as exc:
        report.update({"error": str(exc), "passed": False, "seconds": round(time.perf_counter() - start, 3)})
        return 2, report
    report.update({
        "inputs": jsonable(inputs),
        "passed": bool(passed),
        "result": jsonable(result),
        "seconds": round(time.perf_counter() - start, 3),
    })
    return (0 if passed else 1), report


def _flatten(prefix: str, x, out: list[str]) -> None:
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"{prefix}: {json.dumps(x)}")


def render(report: dict, style: str = "json") -> str:
    if style == "text":
        lines: list[str] = []
        _flatten("", report, lines)
        return "\n".join(lines)
    return json.dumps(report, indent=2)


def _style(argv: list[str]) -> str:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--report", choices=("json", "text"), default="json")
    try:
        return pre.parse_known_args(argv)[0].report
    except SystemExit:
        return "json"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run(argv)
    style = _style(argv)
    if code == 2:
        print(f"kostka-duality: error: {report['error']}", file=sys.stderr)
    print(render(report, style))
    return code


if __name__ == "__main__":
    sys.exit(main())
