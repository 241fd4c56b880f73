"""Command line front end.

Every subcommand writes one JSON document (or CSV where it makes sense) to
stdout or ``--out``.  Failures print ``{"schema", "error", "message"}`` to
stderr; exit code 1 for invalid input, 2 for an exceeded budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .asymptotic import (
    asymptotic_pgf,
    finite_n_pgf,
    fine_property_report,
    perturbed_pgf,
    smith_table,
)
from .balance import build_matrix, determinant, find_counterexample, is_asymptotically_balanced, rational_nullspace
from .errors import BudgetExceeded, SymsumError, UnsupportedField
from .expsum import PolyFunction, SymmetricSpec, brute_sum, closed_formula_sum, perturbation_decompose
from .field import make_field, make_linear_map, resolve_map
from .lambdas import MultiplicityVector, hypercube_histogram, lambda_series, lambda_value, period_D
from .qalgebra import GroupAlgebraElement, frac_str

SCHEMA = "symsum/1"

# pure primaries for the three values of F_3
PALETTE = {0: (0, 0, 255), 1: (255, 0, 0), 2: (0, 255, 0)}


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


_UNLIMITED = "unlimited"


def _budget(text: str):
    return _UNLIMITED if text.lower() in ("none", "inf", "unlimited") else int(text)


# -- grid ----------------------------------------------------------------------

@dataclass
class GridImage:
    """D x D picture of Lambda(k, a, b) over F_3; a is the column, b the row."""

    width: int
    height: int
    pixels: list[list[int]]
    k: int

    def counts(self) -> dict[int, int]:
        out = dict.fromkeys(PALETTE, 0)
        for row in self.pixels:
            for v in row:
                out[v] += 1
        return out

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        body = bytearray()
        for row in self.pixels:
            for v in row:
                body.extend(PALETTE[v])
        return header + bytes(body)


def grid_image(p: int, k: int, r: int = 1) -> GridImage:
    ctx = make_field(p, r)
    if ctx.q != 3:
        raise UnsupportedField(f"the grid needs q - 1 = 2 multiplicities (q = 3), got q = {ctx.q}")
    D = period_D(p, k)
    pixels = [
        [lambda_value(ctx, k, MultiplicityVector((1, 2), (a, b))) for a in range(D)]
        for b in range(D)
    ]
    return GridImage(D, D, pixels, k)


def grid_render(p: int, k: int, out_path, r: int = 1) -> dict:
    """Write the P6 picture and a sidecar ``.json`` with colour counts."""
    img = grid_image(p, k, r)
    out_path = Path(out_path)
    out_path.write_bytes(img.to_ppm())
    side = {
        "schema": SCHEMA,
        "p": p,
        "k": k,
        "D": img.width,
        "palette": {str(v): list(rgb) for v, rgb in PALETTE.items()},
        "counts": {str(v): c for v, c in img.counts().items()},
        "image": out_path.name,
    }
    out_path.with_suffix(".json").write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")
    return side


# -- argument parsing ------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic")
    common.add_argument("--r", type=int, default=1, help="extension degree")
    common.add_argument("--modulus", type=_int_list, help="coefficients c0,...,cr (lowest first)")
    common.add_argument("--L", dest="L", choices=["id", "trace"], default="id")
    common.add_argument("--L-table", dest="L_table", type=_int_list, help="q images of 0..q-1")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--budget", type=_budget, default=None, help="work limit ('none' for unlimited)")
    common.add_argument("--out", help="write output here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symsum", description="Exact value distributions of symmetric sums over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    sub.add_parser("field", parents=[common], help="describe GF(p^r)")

    sp = sub.add_parser("lambda", parents=[common], help="Lambda values or the hypercube histogram")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=_int_list, help="multiplicities of 1..q-1; omit for the histogram")

    sp = sub.add_parser("sum", parents=[common], help="value counts of e_{n,k} or of F")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--F", help="ANF text such as '3*x1^2*x2 + x3'")

    sp = sub.add_parser("closed-form", parents=[common], help="value counts via the cyclotomic formula")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("pgf", parents=[common], help="probability generating function")
    sp.add_argument("--k", type=int, required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n", type=int)
    grp.add_argument("--infinity", action="store_true")

    sp = sub.add_parser("perturb", parents=[common], help="profile of e_{n,k} + F")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--F", required=True)
    sp.add_argument("--n", type=int, help="finite n; default is the limit")

    sp = sub.add_parser("fine", parents=[common], help="five classical properties over F_p")
    sp.add_argument("--k", type=int, help="single k")
    sp.add_argument("--k-max", dest="k_max", type=int, default=9)

    sub.add_parser("smith", parents=[common], help="closed-form table of p_{p+1}(t)")

    sp = sub.add_parser("balance", parents=[common], help="asymptotic balance and the convolution matrix")
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("counterexample", parents=[common], help="run the counterexample construction")
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("grid", parents=[common], help="P6 picture of Lambda over F_3")
    sp.add_argument("--k", type=int, required=True)

    return parser


def _field(args):
    ctx = make_field(args.p, args.r, args.modulus)
    if args.L_table is not None:
        L = make_linear_map(ctx, args.L_table)
    else:
        L = resolve_map(ctx, args.L)
    return ctx, L


def _kw(args):
    if args.budget is None:
        return {}
    return {"budget": None if args.budget == _UNLIMITED else args.budget}


def _coeff_rows(pgf: GroupAlgebraElement):
    return [["beta", "coefficient"]] + [[b, frac_str(c)] for b, c in enumerate(pgf.coeffs)]


# -- subcommands -------------------------------------------------------------------

def cmd_field(args):
    ctx, _ = _field(args)
    doc = {
        "field": ctx.to_json(),
        "q": ctx.q,
        "generator": ctx.generator,
        "elements": [ctx.format(a) for a in range(ctx.q)],
        "trace": [ctx.trace(a) for a in range(ctx.q)],
    }
    rows = [["index", "element", "trace"]] + [[a, ctx.format(a), ctx.trace(a)] for a in range(ctx.q)]
    return doc, rows


def cmd_lambda(args):
    ctx, L = _field(args)
    if args.m is not None:
        mv = MultiplicityVector.full_field(ctx, args.m)
        series = lambda_series(ctx, args.k, mv)
        doc = {"field": ctx.to_json(), "k": args.k, "m": args.m, "value": series[args.k], "series": series}
        return doc, [["k", "value"]] + [[i, v] for i, v in enumerate(series)]
    hist = hypercube_histogram(ctx, args.k, L, **_kw(args))
    doc = hist.to_json()
    return doc, [["beta", "count"]] + [[b, c] for b, c in enumerate(hist.dense())]


def _target(ctx, args):
    if (args.k is None) == (args.F is None):
        raise SymsumError("give exactly one of --k and --F")
    if args.F is not None:
        return PolyFunction.parse(ctx, args.F), args.F
    return SymmetricSpec.single(args.k), f"e_{args.k}"


def cmd_sum(args):
    ctx, L = _field(args)
    target, label = _target(ctx, args)
    s = brute_sum(ctx, args.n, target, L, **_kw(args))
    doc = {"field": ctx.to_json(), "n": args.n, "target": label, "L": L.label(), "coefficients": s.to_json()}
    return doc, _coeff_rows(s)


def cmd_closed_form(args):
    ctx, L = _field(args)
    s = closed_formula_sum(ctx, args.n, args.k, L, **_kw(args))
    doc = {"field": ctx.to_json(), "n": args.n, "target": f"e_{args.k}", "L": L.label(), "coefficients": s.to_json()}
    return doc, _coeff_rows(s)


def cmd_pgf(args):
    ctx, L = _field(args)
    if args.infinity:
        prof = asymptotic_pgf(ctx, args.k, L, **_kw(args))
    else:
        prof = finite_n_pgf(ctx, args.n, args.k, L, **_kw(args))
    return prof.to_json(), _coeff_rows(prof.pgf)


def cmd_perturb(args):
    ctx, L = _field(args)
    F = PolyFunction.parse(ctx, args.F)
    if args.n is None:
        prof = perturbed_pgf(ctx, args.k, F, L, **_kw(args))
        return prof.to_json(), _coeff_rows(prof.pgf)
    counts = perturbation_decompose(ctx, args.n, args.k, F, L, **_kw(args))
    pgf = counts.scale(Fraction(1, ctx.q**args.n))
    doc = {
        "field": ctx.to_json(),
        "k": args.k,
        "L": L.label(),
        "provenance": f"finite_n({args.n})",
        "F": F.format_anf(),
        "j": F.j,
        "coefficients": pgf.to_json(),
    }
    return doc, _coeff_rows(pgf)


def cmd_fine(args):
    ks = [args.k] if args.k is not None else list(range(1, args.k_max + 1))
    kw = _kw(args)
    rows = fine_property_report(args.p, ks, **kw)
    doc = {"p": args.p, "rows": [row.to_json() for row in rows]}
    table = [["k", "p0", "1", "2", "3", "4", "5", "violations"]]
    for row in rows:
        table.append([row.k, frac_str(row.probabilities[0])]
                     + [int(row.properties[name]) for name in "12345"]
                     + [";".join(row.violations)])
    return doc, table


def cmd_smith(args):
    table = smith_table(args.p)
    doc = {"p": args.p, "k": args.p + 1, "probabilities": [{"t": t, "p": frac_str(x)} for t, x in enumerate(table)]}
    return doc, [["t", "p"]] + [[t, frac_str(x)] for t, x in enumerate(table)]


def cmd_balance(args):
    ctx, L = _field(args)
    prof = asymptotic_pgf(ctx, args.k, L, **_kw(args))
    M = build_matrix(prof)
    doc = {
        "field": ctx.to_json(),
        "k": args.k,
        "L": L.label(),
        "balanced": is_asymptotically_balanced(prof),
        "coefficients": prof.pgf.to_json(),
        "matrix": M.to_json(),
        "det": frac_str(determinant(M)),
        "nullspace": rational_nullspace(M),
    }
    return doc, [[""] + list(range(ctx.q))] + [[b] + row for b, row in enumerate(M.to_json())]


def cmd_counterexample(args):
    ctx, _ = _field(args)
    result = find_counterexample(ctx, args.k, **_kw(args))
    return result.to_json(), None


def cmd_grid(args):
    if not args.out:
        raise SymsumError("grid needs --out")
    side = grid_render(args.p, args.k, args.out, args.r)
    return side, None


COMMANDS = {
    "field": cmd_field,
    "lambda": cmd_lambda,
    "sum": cmd_sum,
    "closed-form": cmd_closed_form,
    "pgf": cmd_pgf,
    "perturb": cmd_perturb,
    "fine": cmd_fine,
    "smith": cmd_smith,
    "balance": cmd_balance,
    "counterexample": cmd_counterexample,
    "grid": cmd_grid,
}


def _render(doc, rows, fmt) -> str:
    if fmt == "csv":
        if rows is None:
            raise SymsumError("this command has no CSV form")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True) + "\n"


def _fail(code: str, message: str, exit_code: int, stderr) -> int:
    stderr.write(json.dumps({"schema": SCHEMA, "error": code, "message": message}) + "\n")
    return exit_code


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else _fail("usage", "invalid arguments", 1, stderr)
    try:
        doc, rows = COMMANDS[args.command](args)
        text = _render(doc, rows, args.format)
    except BudgetExceeded as exc:
        return _fail(exc.code, str(exc), 2, stderr)
    except SymsumError as exc:
        return _fail(exc.code, str(exc), exc.exit_code, stderr)
    except (ValueError, ZeroDivisionError) as exc:
        return _fail("invalid", str(exc), 1, stderr)
    if args.out and args.command != "grid":
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
