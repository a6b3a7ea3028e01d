"""Command-line front end.

Exit status: 0 success, 2 bad arguments, 3 integrity error, 4 a
verification threshold was not met.
"""
from __future__ import annotations

import argparse
import sys

from . import dimensions as dims
from .errors import ArgumentError, IntegrityError
from .polynomials import polynomial_from_label
from .tensor import basis_diagonal_state, random_rank_at_most, random_state, read_state, write_state
from .verify import INVARIANCE_TOL, check_invariance, rank_vanishing_demo

EXIT_OK, EXIT_USAGE, EXIT_INTEGRITY, EXIT_VERIFY = 0, 2, 3, 4


def fmt_float(x: float) -> str:
    """15 significant digits, always with a decimal point or exponent."""
    text = format(x, ".15g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def cmd_dims(a) -> tuple[str, int]:
    return str(dims.dim_invariants(a.n, a.k, a.d)), EXIT_OK


def cmd_dims_table(a) -> tuple[str, int]:
    rows = [[k, dims.dim_invariants(a.n, k, a.d)] for k in range(1, a.k_max + 1)]
    return table(["k", "dim"], rows), EXIT_OK


def cmd_skg_dims(a) -> tuple[str, int]:
    rows = [
        [k, dims.dim_skg_invariants(a.n, k, a.d), dims.dim_sign_isotypic(a.n, k, a.d)]
        for k in range(1, a.k_max + 1)
    ]
    return table(["k", "skg_dim", "sign_mult"], rows), EXIT_OK


def cmd_decompose(a) -> tuple[str, int]:
    return str(dims.sk_isotypic_decomposition(a.n, a.d, a.k, k_max=a.k_max)), EXIT_OK


def cmd_asymptotics(a) -> tuple[str, int]:
    rows = []
    for k in range(1, a.k_max + 1):
        est = dims.asymptotic_estimate(a.n, a.d, k)
        exact = dims.dim_invariants(a.n, k, a.d)
        rows.append([k, exact, str(est.estimate), fmt_float(float(exact / est.estimate))])
    head = dims.asymptotic_estimate(a.n, a.d, 1)
    return f"p={head.p} c={head.c}\n" + table(["k", "dim", "estimate", "ratio"], rows), EXIT_OK


def cmd_eval(a) -> tuple[str, int]:
    u = read_state(a.tensor_file)
    value = polynomial_from_label(a.label, u.n, u.k)(u)
    return f"{fmt_float(value.real)} {fmt_float(value.imag)}", EXIT_OK


def cmd_verify(a) -> tuple[str, int]:
    report = check_invariance(a.label, a.n, a.k, trials=a.trials, seed=a.seed)
    return report.to_line(), EXIT_OK if report.passed(a.tol) else EXIT_VERIFY


def cmd_rank_demo(a) -> tuple[str, int]:
    rows = rank_vanishing_demo(a.n, a.k, seed=a.seed)
    body = table(
        ["s", "median_ratio", "expect", "ok"],
        [[r.s, f"{r.median_ratio:.6e}", "zero" if r.expect_zero else "nonzero", "yes" if r.passed else "no"] for r in rows],
    )
    return body, EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY


def cmd_gen_state(a) -> tuple[str, int]:
    if a.kind == "diagonal":
        u = basis_diagonal_state(a.n, a.k)
    elif a.kind == "gaussian":
        u = random_state(a.n, a.k, a.seed)
    else:
        if a.s is None:
            raise ArgumentError("gen-state rank needs --s")
        u = random_rank_at_most(a.n, a.k, a.s, a.seed)
    write_state(u, a.out)
    return f"wrote {a.out} n={u.n} k={u.k}", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quditinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension of degree-d invariants on k qudits")
    p.add_argument("n", type=int), p.add_argument("k", type=int), p.add_argument("d", type=int)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("dims-table", help="dimensions for k = 1..k_max")
    p.add_argument("n", type=int), p.add_argument("d", type=int), p.add_argument("k_max", type=int)
    p.set_defaults(func=cmd_dims_table)

    p = sub.add_parser("skg-dims", help="S_k x G invariants and sign multiplicity for k = 1..k_max")
    p.add_argument("n", type=int), p.add_argument("d", type=int), p.add_argument("k_max", type=int)
    p.set_defaults(func=cmd_skg_dims)

    p = sub.add_parser("decompose", help="S_k-isotypic decomposition of the invariants")
    p.add_argument("n", type=int), p.add_argument("d", type=int), p.add_argument("k", type=int)
    p.add_argument("--k-max", type=int, default=dims.DEFAULT_K_MAX)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("asymptotics", help="exact dimensions against c p^k / d!")
    p.add_argument("n", type=int), p.add_argument("d", type=int), p.add_argument("k_max", type=int)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("eval", help="evaluate a polynomial on a tensor file")
    p.add_argument("label"), p.add_argument("tensor_file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="randomized SL(n,C)^k invariance check")
    p.add_argument("label"), p.add_argument("n", type=int), p.add_argument("k", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=INVARIANCE_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank-demo", help="generalized determinant on low-rank states")
    p.add_argument("n", type=int), p.add_argument("k", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_rank_demo)

    p = sub.add_parser("gen-state", help="write a tensor state file")
    p.add_argument("kind", choices=["diagonal", "gaussian", "rank"])
    p.add_argument("n", type=int), p.add_argument("k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_state)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, status = args.func(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(text.rstrip("\n") + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
