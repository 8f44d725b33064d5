"""Command-line interface.

Every run prints its fully resolved configuration (defaults and seed included)
before the result.  Exit codes: 0 success, 2 inadmissible input, 3 budget
exceeded, 4 parse error, 5 domain error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import MASTER_SEED, __version__
from .charsum import gauss_closed, gauss_direct
from .conic import TernaryForm, count_solutions, enumerate_all, validate
from .corpus import random_amplitude_cases, random_error_sum_cases
from .counting import CSV_COLUMNS, run_asymptotic_experiment
from .errors import BudgetExceeded, NonUnit, NotAdmissible, ParseError, PoleModP
from .expsum import ErrorSumContext, error_sum, error_sum_direct, s_alpha, s_alpha_direct
from .golden import GOLDEN_DIR, format_value, render_csv, write_golden
from .modarith import PrimePowerModulus
from .oracles import ORACLE_BUDGET, exhaustive_count
from .polyrat import ord_p_rat, parse_rational, rat_derivative
from .quadric import SWEEP_COLUMNS, bound_sweep, dual_form, tau

EXIT_OK, EXIT_INADMISSIBLE, EXIT_BUDGET, EXIT_PARSE, EXIT_DOMAIN = 0, 2, 3, 4, 5
LISTING_BUDGET = 10**5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _jsonable(v):
    if isinstance(v, complex):
        return complex_json(v)
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True)


class Output:
    """Result of a subcommand: scalar fields plus an optional table."""

    def __init__(self, fields: dict, columns: list[str] | None = None, rows: list[dict] | None = None):
        self.fields = fields
        self.columns = columns or []
        self.rows = rows or []

    def render(self, fmt: str, config: dict) -> str:
        if fmt == "json":
            payload = {"config": config, "result": self.fields}
            if self.columns:
                payload["rows"] = [{c: row[c] for c in self.columns} for row in self.rows]
            return canonical_json(payload) + "\n"
        header = "".join(f"# {k}: {_text(v)}\n" for k, v in config.items())
        body = "".join(f"# {k}: {_text(v)}\n" for k, v in self.fields.items())
        if fmt == "csv":
            return header + body + (render_csv(self.columns, self.rows) if self.columns else "")
        lines = [header.rstrip("\n")]
        lines += [f"{k}: {_text(v)}" for k, v in self.fields.items()]
        if self.columns:
            cells = [[_text(row[c]) for c in self.columns] for row in self.rows]
            widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(self.columns)]
            lines.append("  ".join(c.rjust(w) for c, w in zip(self.columns, widths)))
            lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
        return "\n".join(lines) + "\n"


def _text(v) -> str:
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+.17g}j"
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v)
    return format_value(v)


def _parse_form(text: str) -> TernaryForm:
    return TernaryForm.parse(text)


def _parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise ParseError(f"expected three integers, got {text!r}")
    try:
        return tuple(int(s) for s in parts)
    except ValueError as exc:
        raise ParseError(f"non-integer in {text!r}") from exc


def _parse_range(text: str, arity: int = 2) -> tuple[int, ...]:
    parts = text.split(":")
    if len(parts) not in (2, arity):
        raise ParseError(f"expected lo:hi{':step' if arity == 3 else ''}, got {text!r}")
    try:
        return tuple(int(s) for s in parts)
    except ValueError as exc:
        raise ParseError(f"non-integer in range {text!r}") from exc


def _require(Q: TernaryForm, p: int) -> None:
    report = validate(Q, p)
    if not report.accepted:
        raise NotAdmissible(f"form '{Q}' is not admissible for p = {p}: " + "; ".join(report.failures()))


def cmd_count(args, config) -> Output:
    Q = _parse_form(args.form)
    _require(Q, args.p)
    m = PrimePowerModulus(args.p, args.n)
    fields = {"count": count_solutions(Q.dehomogenize(), m)}
    if args.verify:
        budget = args.budget_terms or ORACLE_BUDGET
        oracle = exhaustive_count(Q.dehomogenize(), m, budget=budget)
        fields["oracle"] = oracle
        fields["status"] = "OK" if oracle == fields["count"] else "MISMATCH"
    return Output(fields)


def cmd_enumerate(args, config) -> Output:
    Q = _parse_form(args.form)
    _require(Q, args.p)
    m = PrimePowerModulus(args.p, args.n)
    budget = args.budget_terms or LISTING_BUDGET
    expected = count_solutions(Q.dehomogenize(), m)
    if expected > budget and not args.force:
        raise BudgetExceeded(f"listing has {expected} entries, budget {budget}; pass --force")
    sols = enumerate_all(Q.dehomogenize(), m)
    b = sols.base
    rows = [{"s": s, "t": t, "x": x, "y": y} for s, t, x, y in sols]
    fields = {"base": [b.alpha, b.beta], "A": b.A, "B": b.B, "size": len(sols)}
    return Output(fields, ["s", "t", "x", "y"], rows)


def cmd_expsum(args, config) -> Output:
    f = parse_rational(args.f)
    m = PrimePowerModulus(args.p, args.n)
    value, method = s_alpha(f, args.alpha, m)
    fields = {"value": value, "method": method, "r": ord_p_rat(rat_derivative(f), m.p)}
    if args.verify:
        direct = s_alpha_direct(f, args.alpha, m)
        fields["direct"] = direct
        fields["difference"] = abs(value - direct)
    return Output(fields)


def cmd_errorsum(args, config) -> Output:
    Q = _parse_form(args.form)
    _require(Q, args.p)
    m = PrimePowerModulus(args.p, args.n)
    sols = enumerate_all(Q.dehomogenize(), m)
    ctx = ErrorSumContext.build(Q, sols.base, args.k1, args.k2, args.z)
    value, method = error_sum(ctx, sols)
    fields = {"value": value, "method": method, "r": ctx.r, "rprime": ctx.rprime, "D": ctx.D}
    if args.verify:
        direct = error_sum_direct(ctx, sols)
        fields["direct"] = direct
        fields["difference"] = abs(value - direct)
    return Output(fields)


def cmd_gauss(args, config) -> Output:
    m = PrimePowerModulus(args.p, args.n)
    budget = args.budget_terms or 10**7
    if m.q > budget:
        raise BudgetExceeded(f"direct Gauss sum has {m.q} terms, budget {budget}")
    direct, closed = gauss_direct(m.q), gauss_closed(m)
    return Output({"direct": direct, "closed": closed, "difference": abs(direct - closed)})


def cmd_asymptotic(args, config) -> Output:
    Q = _parse_form(args.form)
    _require(Q, args.p)
    lo, hi = _parse_range(args.n_range)
    center = _parse_triple(args.center)
    kwargs = {"budget": args.budget_terms} if args.budget_terms else {}
    rows = run_asymptotic_experiment(Q, args.p, range(lo, hi + 1), args.theta, center, **kwargs)
    dicts = [r.as_dict() for r in rows]
    fields = {}
    if args.freeze:
        path = args.freeze if args.freeze != "default" else default_asymptotic_path(Q, args.p, args.theta)
        frozen = [dict(d, seconds=0.0) for d in dicts]
        write_golden(path, CSV_COLUMNS, frozen, {k: _text(v) for k, v in config.items()})
        fields["frozen"] = str(path)
    return Output(fields, CSV_COLUMNS, dicts)


def default_asymptotic_path(Q: TernaryForm, p: int, theta: float):
    return GOLDEN_DIR / f"asymptotic_{'_'.join(map(str, Q.coeffs))}_p{p}_theta{theta}.csv"


def cmd_quadric(args, config) -> Output:
    Q = _parse_form(args.form)
    if args.p is not None:
        _require(Q, args.p)
    F = dual_form(Q)
    lo, hi, *step = _parse_range(args.B_range, arity=3)
    rows = bound_sweep(F, range(lo, hi + 1, step[0] if step else 1))
    fields = {
        "dual": list(F.coeffs),
        "detAssoc": F.detAssoc,
        "minorGcd": F.minorGcd,
        "tau": tau(abs(F.detAssoc)),
    }
    return Output(fields, SWEEP_COLUMNS, [r.as_dict() for r in rows])


def cmd_check(args, config) -> Output:
    """Seeded closed-form versus direct comparisons."""
    worst, unsupported, total = 0.0, 0, 0
    for case in random_amplitude_cases(args.seed, args.cases):
        value, method = s_alpha(case.f, case.alpha, case.m)
        direct = s_alpha_direct(case.f, case.alpha, case.m)
        unsupported += method != "cochrane"
        worst = max(worst, abs(value - direct))
        total += 1
    cache = {}
    for case in random_error_sum_cases(args.seed, args.cases):
        key = (case.Q, case.m)
        if key not in cache:
            cache[key] = enumerate_all(case.Q.dehomogenize(), case.m)
        sols = cache[key]
        ctx = ErrorSumContext.build(case.Q, sols.base, case.k1, case.k2, case.z)
        value, method = error_sum(ctx, sols)
        unsupported += method != "closed-form"
        worst = max(worst, abs(value - error_sum_direct(ctx, sols)))
        total += 1
    return Output({"cases": total, "fallbacks": unsupported, "max_abs_difference": worst})


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "expsum": cmd_expsum,
    "errorsum": cmd_errorsum,
    "gauss": cmd_gauss,
    "asymptotic": cmd_asymptotic,
    "quadric": cmd_quadric,
    "check": cmd_check,
}


def _common(p_default: int | None = 3) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--form", default="1 0 1 0 0 1", help='coefficients "a b c d e f"')
    common.add_argument("--p", type=int, default=p_default)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--seed", type=int, default=MASTER_SEED)
    common.add_argument("--format", choices=["json", "csv", "table"], default="table")
    common.add_argument("--budget-terms", type=int, default=None, metavar="K")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="quadcong", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"quadcong {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("count", parents=[common], help="closed-form solution count")
    sp.add_argument("--verify", action="store_true")

    sp = sub.add_parser("enumerate", parents=[common], help="list the strata (s, t, x, y)")
    sp.add_argument("--force", action="store_true")

    sp = sub.add_parser("expsum", parents=[common], help="S_alpha(f; p^n)")
    sp.add_argument("f", help='rational amplitude, e.g. "(1 + x^2)/(2 + x)"')
    sp.add_argument("--alpha", type=int, default=0)
    sp.add_argument("--verify", action="store_true")

    sp = sub.add_parser("errorsum", parents=[common], help="E(k1, k2, z; p^n)")
    sp.add_argument("--k1", type=int, required=True)
    sp.add_argument("--k2", type=int, required=True)
    sp.add_argument("--z", type=int, default=1)
    sp.add_argument("--verify", action="store_true")

    sub.add_parser("gauss", parents=[common], help="G_{p^n}, direct and closed form")

    sp = sub.add_parser("asymptotic", parents=[common], help="T / T0 for a range of exponents")
    sp.add_argument("--n-range", default="5:12")
    sp.add_argument("--theta", type=float, default=0.6)
    sp.add_argument("--center", default="0 0 0")
    sp.add_argument("--freeze", nargs="?", const="default", default=None, metavar="PATH")

    sp = sub.add_parser("quadric", parents=[_common(p_default=None)], help="dual form and primitive-zero sweep")
    sp.add_argument("--B-range", dest="B_range", default="5:100:5")

    sp = sub.add_parser("check", parents=[common], help="seeded closed-form vs direct comparisons")
    sp.add_argument("--cases", type=int, default=50)
    return parser


def resolved_config(args) -> dict:
    config = {"tool": f"quadcong {__version__}"}
    config.update({k: v for k, v in sorted(vars(args).items()) if k != "format"})
    return config


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    config = resolved_config(args)
    try:
        out = COMMANDS[args.command](args, config)
    except NotAdmissible as exc:
        print(f"inadmissible: {exc}", file=stderr)
        return EXIT_INADMISSIBLE
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=stderr)
        return EXIT_BUDGET
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (PoleModP, NonUnit, ValueError) as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    stdout.write(out.render(args.format, config))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
