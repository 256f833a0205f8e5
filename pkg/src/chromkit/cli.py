"""Command-line surface: invariants, reductions, kernel checks, dimensions.

All results go to stdout as JSON (plus a fixed-layout table for the
dimension command); diagnostics go to stderr.  Exit codes: 0 success,
1 kernel-check negative or failed verification, 2 validation or usage
error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from .augmented import augmented_psi, specialize_k
from .combinatorics import ordered_bell_number
from .dimension import gamma_tau, sc_egf, sc_enumerate
from .errors import ChromkitError, SizeCapError
from .graphs import (
    Graph,
    as_clique_complement,
    combination_from_json,
    psi_g,
    psi_power_sum,
    reduce_to_clique_basis,
    upsilon_g,
)
from .polytopes import HypergraphicPolytope, psi_hgp, reduce_to_basic_basis, upsilon_hgp
from .scorder import sc_class_count
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_VALIDATION = 2
EXIT_SIZE_CAP = 3


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2))
    sys.stdout.write("\n")


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_graph_combination(obj):
    if "terms" in obj:
        return combination_from_json(obj["terms"])
    return {Graph.from_json_obj(obj): Fraction(1)}


def _cmd_csf(args):
    data = _load_json(args.input)
    if args.kind == "graph":
        g = Graph.from_json_obj(data)
        if args.map == "upsilon":
            if args.basis == "p":
                raise ChromkitError("the power-sum basis applies to the commutative map only")
            element = upsilon_g(g)
        elif args.basis == "p":
            element = psi_power_sum(g)
        else:
            element = psi_g(g)
    else:
        q = HypergraphicPolytope.from_json_obj(data)
        if args.basis == "p":
            raise ChromkitError("the power-sum basis applies to graphs only")
        element = upsilon_hgp(q) if args.map == "upsilon" else psi_hgp(q)
    _emit(element.to_json_obj())
    return EXIT_OK


def _zeta_from_certificate(cert, mode):
    zeta = []
    for g, c in sorted(cert.residual.items()):
        pi = as_clique_complement(g)
        entry = {"coeff": str(c), "graph": g.to_json_obj()}
        if pi is not None:
            entry["partition"] = pi.to_json_obj()
            if mode == "commutative":
                entry["shape"] = list(pi.shape())
        zeta.append(entry)
    return zeta


def _cmd_reduce(args):
    data = _load_json(args.input)
    if args.kind == "graph":
        combo = _load_graph_combination(data)
        cert = reduce_to_clique_basis(combo, mode=args.mode)
        _emit(
            {
                "mode": args.mode,
                "in_kernel": cert.residual_is_zero(),
                "zeta": _zeta_from_certificate(cert, args.mode),
                "certificate": cert.to_json_obj(),
            }
        )
    else:
        q = HypergraphicPolytope.from_json_obj(data)
        zeta = reduce_to_basic_basis(q)
        _emit(
            {
                "verified": True,
                "zeta": [
                    {"class": c.to_json_obj(), "coeff": str(v)}
                    for c, v in sorted(zeta.items())
                ],
            }
        )
    return EXIT_OK


def _cmd_kernel_check(args):
    data = _load_json(args.input)
    combo = _load_graph_combination(data)
    mode = "noncommutative" if args.map == "upsilon" else "commutative"
    cert = reduce_to_clique_basis(combo, mode=mode)
    _emit(
        {
            "map": args.map,
            "in_kernel": cert.residual_is_zero(),
            "certificate": cert.to_json_obj(),
        }
    )
    return EXIT_OK if cert.residual_is_zero() else EXIT_NEGATIVE


def _cmd_sc(args):
    if args.gamma:
        g, t = gamma_tau(args.tol)
        with mpmath.workdps(50):
            l_at = mpmath.e ** (2 * g) - (1 + g) * mpmath.e**g - 1
            _emit(
                {
                    "gamma": mpmath.nstr(g, 20),
                    "tau": mpmath.nstr(t, 20),
                    "l_at_gamma": mpmath.nstr(l_at, 5),
                    "tol": repr(args.tol),
                }
            )
        return EXIT_OK
    if args.n is None:
        raise ChromkitError("sc needs --n or --gamma")
    n = args.n
    if args.method == "egf":
        values = sc_egf(n)
    elif args.method == "enum":
        values = [sc_enumerate(k) for k in range(n + 1)]
    else:
        values = [sc_class_count(k) for k in range(n + 1)]
    obell = [ordered_bell_number(k) for k in range(n + 1)]
    rows = [
        ["n"] + [str(k) for k in range(n + 1)],
        ["sc_n"] + [str(v) for v in values],
        ["ordered_bell_n"] + [str(v) for v in obell],
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(n + 2)]
    for row in rows:
        line = " | ".join(cell.rjust(widths[i]) for i, cell in enumerate(row))
        sys.stdout.write(line + "\n")
    _emit({"n": n, "method": args.method, "sc": values, "ordered_bell": obell})
    return EXIT_OK


def _cmd_augmented(args):
    g = Graph.from_json_obj(_load_json(args.input))
    value = augmented_psi(g)
    if args.specialize is None:
        _emit(value.to_json_obj())
    else:
        _emit(specialize_k(value, args.specialize).to_json_obj())
    return EXIT_OK


def _cmd_verify(args):
    results = run_suite(args.suite, n=args.n, seed=args.seed)
    passed = sum(1 for _, ok, _ in results if ok)
    for name, ok, detail in results:
        sys.stdout.write(f"{'PASS' if ok else 'FAIL'} {args.suite}/{name}: {detail}\n")
    sys.stdout.write(f"{passed}/{len(results)} checks passed\n")
    return EXIT_OK if passed == len(results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromkit",
        description="Chromatic invariants of graphs and hypergraphic polytopes, exactly.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker count for parallel scans (results are deterministic regardless)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_csf = sub.add_parser("csf", help="evaluate a chromatic map")
    p_csf.add_argument("kind", choices=["graph", "hgp"])
    p_csf.add_argument("-i", "--input", required=True, help="JSON input file")
    p_csf.add_argument("--map", choices=["upsilon", "psi"], default="psi")
    p_csf.add_argument("--basis", choices=["m", "p"], default="m")
    p_csf.set_defaults(fn=_cmd_csf)

    p_red = sub.add_parser("reduce", help="reduce to the distinguished spanning family")
    p_red.add_argument("kind", choices=["graph", "hgp"])
    p_red.add_argument("-i", "--input", required=True)
    p_red.add_argument(
        "--mode", choices=["noncommutative", "commutative"], default="noncommutative"
    )
    p_red.set_defaults(fn=_cmd_reduce)

    p_ker = sub.add_parser("kernel-check", help="decide kernel membership with a certificate")
    p_ker.add_argument("-i", "--input", required=True)
    p_ker.add_argument("--map", choices=["upsilon", "psi"], default="upsilon")
    p_ker.set_defaults(fn=_cmd_kernel_check)

    p_sc = sub.add_parser("sc", help="dimension sequence and asymptotic constants")
    p_sc.add_argument("--n", type=int, default=None)
    p_sc.add_argument("--method", choices=["egf", "enum", "classes"], default="egf")
    p_sc.add_argument("--gamma", action="store_true", help="print the constants instead")
    p_sc.add_argument("--tol", type=float, default=1e-14)
    p_sc.set_defaults(fn=_cmd_sc)

    p_aug = sub.add_parser("augmented", help="augmented chromatic invariant")
    p_aug.add_argument("-i", "--input", required=True)
    p_aug.add_argument("--specialize", type=int, default=None, metavar="K")
    p_aug.set_defaults(fn=_cmd_augmented)

    p_ver = sub.add_parser("verify", help="run a module property suite")
    p_ver.add_argument("--suite", choices=list(SUITES), required=True)
    p_ver.add_argument("--n", type=int, default=4)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(fn=_cmd_verify)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except SizeCapError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except ChromkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
