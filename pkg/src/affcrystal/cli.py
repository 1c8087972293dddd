"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exceeded, 4 internal cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .affine import AffineCrystal, AffineElement, component_of, in_window
from .charfun import METHODS, MethodDisagreement, component_character
from .crystal import DEFAULT_BUDGET, BudgetExceeded, all_generators, orbit_bfs
from .decomp import decompose, verify_decomposition
from .letters import enumerate_words, word_stats
from .paths import kappa_seq, psi_embed
from .verify import SUITES, run_suite
from .weightlat import frac_to_json, parse_weight

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_DISAGREE = 4


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _check_lm(ell: int, m: Optional[int] = None) -> None:
    if ell < 1:
        raise UsageError("--l must be at least 1")
    if m is not None and m < 1:
        raise UsageError("--m must be at least 1")


def _check_window(zmin: int, zmax: int) -> None:
    if zmin > zmax:
        raise UsageError("--zmin must not exceed --zmax")


def _check_word(word: list, ell: int) -> None:
    if not word:
        raise UsageError("word must be non-empty")
    if any(c < 0 or c > ell for c in word):
        raise UsageError(f"letters must lie in 0..{ell}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _table(head: Sequence[str], rows: list) -> str:
    widths = [max(len(str(r[c])) for r in rows + [head]) for c in range(len(head))]
    fmt = lambda r: "  ".join(str(x).rjust(w) for x, w in zip(r, widths))
    return "\n".join([fmt(head)] + [fmt(r) for r in rows]) + "\n"


# -- subcommands -----------------------------------------------------------------

def cmd_words(args, out) -> int:
    _check_lm(args.l, args.m)
    tup = None
    if args.tuple is not None:
        tup = _int_list(args.tuple)
        if len(tup) != args.l + 1 or any(k < 0 for k in tup) or sum(tup) != args.m:
            raise UsageError("--tuple needs l+1 non-negative entries summing to m")
    words = enumerate_words(args.l, args.m, tuple_filter=tup, residue=args.residue, budget=args.budget)
    rows = []
    for w in words:
        st = word_stats(w)
        rows.append({"word": list(w), "desc": list(st.desc), "N": st.N, "Maj": st.Maj, "component": component_of(AffineElement(w, 0))})
    if args.format == "json":
        out.write(_dump(rows))
    else:
        table_rows = [
            (",".join(map(str, r["word"])), ",".join(map(str, r["desc"])) or "-", r["N"], r["Maj"], r["component"])
            for r in rows
        ]
        out.write(_table(("word", "desc", "N", "Maj", "component"), table_rows))
    return EXIT_OK


def cmd_char(args, out) -> int:
    _check_lm(args.l, args.m)
    _check_window(args.zmin, args.zmax)
    if not 0 <= args.component < args.m:
        raise UsageError("--component must satisfy 0 <= n < m")
    cw = component_character(args.l, args.m, args.component, args.zmin, args.zmax, method=args.method)
    out.write(_dump(cw.to_json()) if args.format == "json" else cw.to_table())
    return EXIT_OK


def cmd_embed(args, out) -> int:
    word = _int_list(args.word)
    if not word:
        raise UsageError("word must be non-empty")
    ell = args.l if args.l is not None else max(max(word), 1)
    _check_lm(ell)
    _check_word(word, ell)
    x = AffineElement(tuple(word), args.z)
    kap = kappa_seq(x)
    payload = {
        "l": ell,
        "element": x.to_json(),
        "kappa": [frac_to_json(k) for k in kap],
        "kappa_m": frac_to_json(kap[-1]),
        "path": psi_embed(x, ell).to_json(),
    }
    out.write(_dump(payload))
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    _check_lm(args.l)
    word = _int_list(args.seed)
    _check_word(word, args.l)
    if args.depth is not None and args.depth < 0:
        raise UsageError("--depth must be non-negative")
    region = None
    region_desc = None
    if args.zwin is not None:
        win = _int_list(args.zwin)
        if len(win) != 2:
            raise UsageError("--zwin takes two integers a,b")
        _check_window(*win)
        region = in_window(*win)
        region_desc = {"zwin": win}
    if args.depth is None and region is None:
        raise UsageError("orbit needs --depth or --zwin")
    cr = AffineCrystal(args.l, len(word))
    gens = all_generators(args.l, args.gens)
    g = orbit_bfs(cr, [AffineElement(tuple(word), args.z)], gens, depth=args.depth, region=region,
                  budget=args.budget, region_desc=region_desc)
    out.write(g.to_dot() if args.format == "dot" else _dump(g.to_json()))
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    _check_lm(args.l, args.m)
    _check_window(args.zmin, args.zmax)
    try:
        lam = parse_weight(args.lambda_, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not lam.is_lattice() or not lam.is_dominant():
        raise UsageError("lambda must be a dominant lattice weight")
    if lam.in_z_delta():
        raise UsageError("lambda must not be a multiple of delta")
    rep = decompose(lam, args.l, args.m, args.zmin, args.zmax)
    if args.verify_depth is not None:
        if args.verify_depth < 0:
            raise UsageError("--verify-depth must be non-negative")
        verify_decomposition(rep, args.verify_depth)
    out.write(_dump(rep.to_json()))
    if rep.verified is False:
        for f in rep.failures:
            print(f"verification failure: {f}", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.l is not None:
        _check_lm(args.l)
    if args.m is not None:
        _check_lm(1, args.m)
    results = [run_suite(n, args.l, args.m, jobs=args.jobs) for n in names]
    if args.format == "json":
        out.write(_dump([r.to_json() for r in results]))
    else:
        out.write("".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affcrystal", description="Exact crystal combinatorics for affine type A.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verification suites")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node/word budget")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("words", help="list words of B_l(m) with their statistics")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--tuple", help="letter multiplicities k0,...,kl")
    s.add_argument("--residue", type=int, help="keep words with N = residue (mod m)")
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("char", help="character of a component on a z-window")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--component", type=int, required=True)
    s.add_argument("--zmin", type=int, required=True)
    s.add_argument("--zmax", type=int, required=True)
    s.add_argument("--method", choices=METHODS, default="closed")
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.set_defaults(func=cmd_char)

    s = sub.add_parser("embed", help="path image of b (x) z^n")
    s.add_argument("--word", required=True, help="letters c1,...,cm")
    s.add_argument("--z", type=int, required=True)
    s.add_argument("--l", type=int, help="rank; defaults to the largest letter (at least 1)")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("orbit", help="orbit of an affine element as a graph")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--seed", required=True, help="seed word c1,...,cm")
    s.add_argument("--z", type=int, default=0, help="z-exponent of the seed")
    s.add_argument("--gens", choices=("ef", "e", "f"), default="ef")
    s.add_argument("--depth", type=int)
    s.add_argument("--zwin", help="restrict to z in [a,b], given as a,b")
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("decompose", help="highest weight decomposition of B(lambda) (x) B^_l(m)")
    s.add_argument("--lambda", dest="lambda_", required=True, help='weight such as "L0+2L1-1d"')
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--zmin", type=int, required=True)
    s.add_argument("--zmax", type=int, required=True)
    s.add_argument("--verify-depth", type=int, help="run the truncated checks to this depth")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True, help="one of: all, " + ", ".join(SUITES))
    s.add_argument("--l", type=int, help="upper bound on l")
    s.add_argument("--m", type=int, help="upper bound on m")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)
    return p


def _glue_values(argv: list) -> list:
    """Let list-valued flags take values starting with '-' ("--zwin -1,1")."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--zwin", "--word", "--seed", "--tuple"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "verify" and args.suite != "all" and args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MethodDisagreement as exc:
        print(f"error: methods disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
