"""Command-line surface: euler-tower SUBCOMMAND [options].

Every subcommand reads one input (inline argument or file), runs one
computation, and emits either human-readable text or a single JSON
document (--format structured, a strict superset of the text output).
Output is assembled in full before anything is printed, so a failure
never leaves partial output behind.

Exit codes: 0 success, 1 input error (bad usage, unparsable file or
expression), 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import chain, fincat, k0, motivic, spaces
from .polycore import TaylorCoefficients, alt_chi, chi_from_betti, reexpand
from .rings import SymPoly


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_j(j: int) -> str:
    return str(j) if j >= 0 else "{" + str(j) + "}"


def _chi_line(pairs, prefix: str = "chi") -> str:
    return ", ".join(f"{prefix}_{_fmt_j(j)} = {v}" for j, v in pairs)


def _parse_betti(text: str) -> list:
    try:
        betti = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad Betti vector {text!r}; expected comma-separated integers") from None
    if not betti or any(x < 0 for x in betti):
        raise ValueError("Betti vector must be nonempty and nonnegative")
    return betti


def _taylor_pairs(tc: TaylorCoefficients, up_to: int) -> list:
    return [(j, tc[j]) for j in range(tc.min_degree, up_to + 1)]


def _structured_taylor(tc: TaylorCoefficients, up_to: int) -> dict:
    return {
        "min_degree": tc.min_degree,
        "coefficients": [[j, str(tc[j])] for j in range(tc.min_degree, up_to + 1)],
    }


def _read_file(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


# -- subcommand implementations: each returns (text lines, payload dict) -------


def _cmd_chi(args):
    betti = _parse_betti(args.betti)
    fn = alt_chi if args.alt else chi_from_betti
    max_j = args.max_j if args.max_j is not None else len(betti) - 1
    pairs = [(j, fn(betti, j)) for j in range(max_j + 1)]
    lines = [_chi_line(pairs)]
    payload = {
        "command": "chi",
        "betti": betti,
        "definition": "power" if args.alt else "binomial",
        "chi": [[j, v] for j, v in pairs],
    }
    return lines, payload


def _cmd_complex(args):
    c = chain.parse_complex(_read_file(args.file))
    h = chain.homology(c)
    p = chain.poincare(c)
    ph = chain.homological_poincare(c)
    span = max(c.high - c.low, 0) if not c.is_trivial else 0
    max_j = args.max_j if args.max_j is not None else span
    chi_pairs = [(j, chain.chi_j(c, j)) for j in range(max_j + 1)]
    chih_pairs = [(j, chain.chi_h_j(c, j)) for j in range(max_j + 1)]
    tau = chain.tau_level(c)
    tau_text = "none" if tau is None else ("infinity" if tau == chain.TAU_INFINITE else str(tau))
    lines = [
        f"degrees {c.low}..{c.high}" if not c.is_trivial else "degrees empty",
        f"P = {p.render()}",
        f"P_h = {ph.render()}",
    ]
    homology_rows = []
    for i in c.degrees():
        tor = h.torsion_at(i)
        suffix = f", torsion [{', '.join(map(str, tor))}]" if tor else ""
        lines.append(f"H_{i}: rank {h.betti_rank(i)}{suffix}")
        homology_rows.append({"degree": i, "rank": h.betti_rank(i), "torsion": list(tor)})
    lines.append(_chi_line(chi_pairs))
    lines.append(_chi_line(chih_pairs, prefix="chi_h"))
    lines.append(f"tau = {tau_text}")
    payload = {
        "command": "complex",
        "degrees": None if c.is_trivial else [c.low, c.high],
        "ranks": {str(i): c.rank(i) for i in c.degrees()},
        "poincare": p.sparse_pairs(),
        "homological_poincare": ph.sparse_pairs(),
        "homology": homology_rows,
        "chi": [[j, v] for j, v in chi_pairs],
        "chi_h": [[j, v] for j, v in chih_pairs],
        "tau": tau_text,
    }
    return lines, payload


def _cmd_simplicial(args):
    k = spaces.parse_facets(_read_file(args.file))
    h = spaces.homology_of_complex(k)
    betti = h.betti_vector()
    max_j = args.max_j if args.max_j is not None else max(len(betti) - 1, 0)
    pairs = [(j, chi_from_betti(betti, j)) for j in range(max_j + 1)]
    lines = [
        f"vertices {len(k.vertices)}",
        f"facets {len(k.facets)}",
        f"betti = {','.join(map(str, betti)) if betti else '0'}",
    ]
    torsion_rows = []
    for i in sorted(h.torsion):
        lines.append(f"H_{i} torsion [{', '.join(map(str, h.torsion[i]))}]")
        torsion_rows.append({"degree": i, "torsion": list(h.torsion[i])})
    if not torsion_rows:
        lines.append("torsion: none")
    lines.append(_chi_line(pairs))
    payload = {
        "command": "simplicial",
        "vertices": list(k.vertices),
        "facet_count": len(k.facets),
        "betti": list(betti),
        "torsion": torsion_rows,
        "chi": [[j, v] for j, v in pairs],
    }
    return lines, payload


def _cmd_space(args):
    expr = spaces.parse_space_expr(args.expr)
    p = spaces.poincare_of_expr(expr)
    betti = spaces.normalize_betti(p.to_dense())
    max_j = args.max_j if args.max_j is not None else max(len(betti) - 1, 0)
    pairs = [(j, chi_from_betti(betti, j)) for j in range(max_j + 1)]
    lines = [
        f"P = {p.render()}",
        f"betti = {','.join(map(str, betti)) if betti else '0'}",
        _chi_line(pairs),
    ]
    payload = {
        "command": "space",
        "expr": args.expr,
        "poincare": p.sparse_pairs(),
        "betti": list(betti),
        "chi": [[j, v] for j, v in pairs],
    }
    if args.kervaire is not None:
        value = spaces.kervaire(betti, args.kervaire)
        lines.append(f"kervaire({args.kervaire}) = {value}")
        payload["kervaire"] = {"dim": args.kervaire, "value": value}
    if args.torus_order:
        value = spaces.torus_order(betti)
        lines.append(f"torus_order = {value}")
        payload["torus_order"] = value
    return lines, payload


def _cmd_sym(args):
    betti = _parse_betti(args.betti)
    polys = spaces.macdonald_sym(betti, args.order)
    lines = [f"Sym^{r}: {p}" for r, p in enumerate(polys)]
    payload = {
        "command": "sym",
        "betti": betti,
        "order": args.order,
        "signed_poincare": [str(p) for p in polys],
    }
    if args.verify_euler:
        report = spaces.euler_sym_genfun(betti, args.order)
        for r, a, b, ok in report.orders:
            lines.append(f"chi(Sym^{r}): sym={a} genfun={b} {'OK' if ok else 'MISMATCH'}")
        verdict = "OK" if report.all_agree else "FAILED"
        lines.append(f"euler genfun check: {verdict}")
        payload["euler_genfun"] = {
            "chi": report.chi,
            "orders": [[r, a, b, ok] for r, a, b, ok in report.orders],
            "all_agree": report.all_agree,
        }
    return lines, payload


def _cmd_k0(args):
    m = k0.parse_k0_complex(_read_file(args.file))
    p = k0.k0_poincare(m)
    if m.is_trivial:
        span = 0
    else:
        span = max(max(m.classes) - min(min(m.classes), 0), 0)
    max_j = args.max_j if args.max_j is not None else span
    pairs = [(j, k0.k0_chi_j(m, j)) for j in range(max_j + 1)]
    lines = [f"P = {p.render()}", _chi_line(pairs)]
    payload = {
        "command": "k0",
        "classes": {str(i): str(m.classes[i]) for i in m.degrees()},
        "poincare": p.sparse_pairs(),
        "chi": [[j, str(v)] for j, v in pairs],
    }
    if args.rank is not None:
        assignment = k0.parse_rank_map(args.rank)
        ranks = k0.specialize_rank(m, assignment)
        lines.append("ranks: " + ", ".join(f"{i} -> {ranks[i]}" for i in sorted(ranks)))
        rank_pairs = [(j, v.substitute({g: assignment[g] for g in v.generators()})) for j, v in pairs]
        lines.append(_chi_line(rank_pairs, prefix="rank chi"))
        payload["rank_map"] = assignment
        payload["ranks"] = {str(i): ranks[i] for i in sorted(ranks)}
        payload["rank_chi"] = [[j, v] for j, v in rank_pairs]
    return lines, payload


def _cmd_adams(args):
    if args.n < 0 or args.k < 1:
        raise ValueError("need --n >= 0 and --k >= 1")
    value = k0.adams_grayson(args.n, args.k)
    verdict = "OK" if value == args.n else "MISMATCH"
    lines = [f"psi = {value} (expected rank {args.n}: {verdict})"]
    payload = {
        "command": "adams",
        "n": args.n,
        "k": args.k,
        "psi": value,
        "ranks": k0.graded_sym_cone_ranks(args.n, args.k),
        "ok": value == args.n,
    }
    return lines, payload


def _cmd_motivic(args):
    expr = motivic.parse_variety_expr(args.expr)
    measure = args.measure
    payload = {"command": "motivic", "expr": args.expr, "measure": measure}
    if measure == "chi_c":
        value = motivic.measure_chi_c(expr)
        lines = [f"chi_c = {value}"]
        payload["value"] = value
    elif measure == "poincare":
        value = motivic.measure_poincare(expr)
        lines = [f"mu_P = {value}"]
        payload["value"] = str(value)
        payload["coefficients"] = motivic.higher_measure_coefficients(expr)
    elif measure == "hodge":
        value = motivic.measure_hodge(expr)
        lines = [f"mu_H = {value}"]
        payload["value"] = str(value)
    elif measure == "hodge-higher":
        coeffs = motivic.hodge_higher(expr)
        pairs = list(enumerate(coeffs))
        lines = [_chi_line(pairs, prefix="chi_H")]
        payload["value"] = [str(c) for c in coeffs]
    elif measure == "count":
        value = motivic.point_count(expr)
        lines = [f"count = {value}"]
        payload["value"] = str(value)
    else:
        raise ValueError(f"unknown measure {measure!r}")
    return lines, payload


def _cmd_fincat(args):
    a = fincat.parse_hom_matrix(_read_file(args.file))
    f = fincat.series_function(a)
    chi = fincat.chi_series(a)
    expansion = fincat.chi_laurent(a, args.order)
    pairs = _taylor_pairs(expansion, args.order)
    lines = [
        f"f = {f.render()}",
        f"chi = {chi}",
        _chi_line(pairs),
    ]
    payload = {
        "command": "fincat",
        "objects": len(a),
        "series": {"num": f.num.sparse_pairs(), "den": f.den.sparse_pairs()},
        "chi": str(chi),
        "expansion": _structured_taylor(expansion, args.order),
    }
    return lines, payload


def build_parser() -> _Parser:
    parser = _Parser(prog="euler-tower", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "structured"), default="text",
        help="output as plain text or one JSON document",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chi", parents=[common], help="higher Euler characteristics of a Betti vector")
    p.add_argument("--betti", required=True, help="comma-separated Betti numbers, e.g. 1,0,0,1")
    p.add_argument("--alt", action="store_true", help="use the power-weighted alternative definition")
    p.add_argument("--max-j", type=int, default=None)
    p.set_defaults(run=_cmd_chi)

    p = sub.add_parser("complex", parents=[common], help="homology and expansions of a chain complex file")
    p.add_argument("file")
    p.add_argument("--max-j", type=int, default=None)
    p.set_defaults(run=_cmd_complex)

    p = sub.add_parser("simplicial", parents=[common], help="Betti numbers and torsion of a facet file")
    p.add_argument("file")
    p.add_argument("--max-j", type=int, default=None)
    p.set_defaults(run=_cmd_simplicial)

    p = sub.add_parser("space", parents=[common], help="invariants of a space expression")
    p.add_argument("expr")
    p.add_argument("--kervaire", type=int, default=None, metavar="DIM")
    p.add_argument("--torus-order", action="store_true")
    p.add_argument("--max-j", type=int, default=None)
    p.set_defaults(run=_cmd_space)

    p = sub.add_parser("sym", parents=[common], help="symmetric-product Poincare polynomials")
    p.add_argument("--betti", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--verify-euler", action="store_true")
    p.set_defaults(run=_cmd_sym)

    p = sub.add_parser("k0", parents=[common], help="class-level invariants of a K0 complex file")
    p.add_argument("file")
    p.add_argument("--rank", default=None, metavar="MAP", help="e.g. g1=2,g2=0")
    p.add_argument("--max-j", type=int, default=None)
    p.set_defaults(run=_cmd_k0)

    p = sub.add_parser("adams", parents=[common], help="Adams operation via symmetric powers of a cone")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=_cmd_adams)

    p = sub.add_parser("motivic", parents=[common], help="evaluate a motivic measure on a variety expression")
    p.add_argument("expr")
    p.add_argument(
        "--measure", required=True,
        choices=("chi_c", "poincare", "hodge", "hodge-higher", "count"),
    )
    p.set_defaults(run=_cmd_motivic)

    p = sub.add_parser("fincat", parents=[common], help="series Euler characteristic of a hom-count matrix")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(run=_cmd_fincat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        lines, payload = args.run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violations land here
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        payload["text"] = lines
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
