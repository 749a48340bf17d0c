"""Command-line front end: ``muposet <command> ...``.

Exit codes: 0 pass, 1 failure with counterexample, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import balloon as bl
from . import verify as vf
from .chains import ChainLimitExceeded, mu_via_chains
from .mobius import DESK_LIMIT, downset, growth_bound, max_abs, mu, mu_principal, sweep
from .perm import PermutationError, children, format_perm, parse
from .store import CacheError, open_cache, save

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _perm(text):
    try:
        return tuple(parse(text))
    except PermutationError as exc:
        raise UsageError(str(exc)) from None


def _indexes(text):
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--at expects i,j, got {text!r}") from None
    return i, j


def _general_spec(args):
    alpha = _perm(args.alpha)
    i, j = _indexes(args.at)
    try:
        return bl.GeneralBalloonSpec(alpha, i, j)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_mu(args, cache):
    pi = _perm(args.pi)
    if args.sigma is not None:
        if args.method == "chains":
            raise UsageError("--method chains only computes mu(1, pi)")
        print(mu(_perm(args.sigma), pi, cache))
        return EXIT_OK
    if args.method == "chains":
        try:
            print(mu_via_chains(pi))
        except ChainLimitExceeded as exc:
            raise UsageError(str(exc)) from None
    else:
        print(mu_principal(pi, cache, accelerate=args.method == "auto").mu)
    return EXIT_OK


def cmd_balloon(args, cache):
    general = args.alpha is not None or args.at is not None
    if general and (args.alpha is None or args.at is None):
        raise UsageError("--alpha and --at go together")
    p = _perm(args.perm)
    if args.unwrap:
        beta = bl.unballoon_general(_general_spec(args), p) if general else bl.unballoon_2413(p)
        print(format_perm(beta) if beta is not None else "not-a-balloon")
        return EXIT_OK
    out = bl.balloon_general(_general_spec(args), p) if general else bl.balloon_2413(p)
    print(format_perm(out))
    return EXIT_OK


def cmd_sequence(args, cache):
    if args.n < 1:
        raise UsageError("n must be at least 1")
    p = bl.pi_sequence(args.n)
    print(f"{format_perm(p)}  mu={mu_principal(p, cache).mu}")
    return EXIT_OK


def _print_report(rep):
    for line in rep.lines():
        print(line)


def cmd_verify(args, cache):
    fn = vf.CHECKS[args.check]
    kwargs = {}
    if args.max_len is not None:
        kwargs["max_len"] = args.max_len
    if args.check in ("hall-oracle", "involutions"):
        if args.samples is not None:
            kwargs["samples"] = args.samples
        kwargs["seed"] = args.seed
    if args.check != "simples":
        kwargs["cache"] = cache
    rep = fn(**kwargs)
    _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_conjecture(args, cache):
    kwargs = {"cache": cache}
    if args.max_len is not None:
        kwargs["max_len"] = args.max_len
    rep = vf.CONJECTURES[args.which](**kwargs)
    _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(args, cache):
    if args.len < 1 or args.len > args.limit:
        raise UsageError(f"--len must be in 1..{args.limit}")
    rows = sweep(args.len, cache, jobs=args.jobs, limit=args.limit)
    maxima, ok = {}, True
    for n, part in rows.items():
        best, witnesses = max_abs(part)
        maxima[n] = best
        print(f"n={n} max={best} witness={';'.join(format_perm(w) for w in witnesses)}")
    for n, best in maxima.items():
        b = growth_bound(n)
        good = best >= b
        ok &= good
        print(f"bound n={n} 2^(floor(n/4)-1)={b:g} {'ok' if good else 'VIOLATED'}")
    if args.out:
        out = Path(args.out)
        with out.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["perm", "mu"])
            for part in rows.values():
                for p, v in part:
                    w.writerow([format_perm(p), v])
        from .plotting import plot_sweep
        plot_sweep(maxima, {n: growth_bound(n) for n in maxima}, out.with_suffix(".png"))
    return EXIT_OK if ok else EXIT_FAIL


def _hasse_dot(pi) -> str:
    """Cover relations of [1, π]; a cover is a one-point deletion."""
    ds = downset(pi)
    lines = ["digraph interval {", "  rankdir=BT;"]
    lines += [f'  "{format_perm(q)}";' for q in ds]
    for r in ds:
        for q in sorted(children(r)):
            lines.append(f'  "{format_perm(q)}" -> "{format_perm(r)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args, cache):
    if args.what == "hasse":
        if not args.dot:
            raise UsageError("export hasse needs --dot FILE")
        pi = _perm(args.perm)
        Path(args.dot).write_text(_hasse_dot(pi))
        return EXIT_OK
    if args.sequence is not None:
        pi = bl.pi_sequence(args.sequence)
    elif args.perm is not None:
        pi = _perm(args.perm)
    else:
        raise UsageError("export plot needs a permutation or --sequence N")
    if not args.csv:
        raise UsageError("export plot needs --csv FILE")
    out = Path(args.csv)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "value"])
        for i, v in enumerate(pi, 1):
            w.writerow([i, v])
    from .plotting import plot_permutation
    title = f"pi^({args.sequence})" if args.sequence is not None else None
    plot_permutation(pi, out.with_suffix(".png"), title)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="muposet", description="Möbius function on the permutation pattern poset")
    ap.add_argument("--cache", help="persistent mu cache file (default $MUPOSET_CACHE)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="print mu(1, pi) or mu(sigma, pi)")
    p.add_argument("pi")
    p.add_argument("--from", dest="sigma")
    p.add_argument("--method", choices=("recursive", "chains", "auto"), default="recursive")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("balloon", help="2413-balloon or general (i,j)-balloon")
    p.add_argument("perm")
    p.add_argument("--alpha")
    p.add_argument("--at", help="indexes i,j")
    p.add_argument("--unwrap", action="store_true", help="recover beta from a balloon")
    p.set_defaults(func=cmd_balloon)

    p = sub.add_parser("sequence", help="the permutation pi^(n) and its mu")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="run one mechanical check")
    p.add_argument("check", choices=sorted(vf.CHECKS))
    p.add_argument("--max-len", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="test a conjectured formula")
    p.add_argument("which", choices=sorted(vf.CONJECTURES))
    p.add_argument("--max-len", type=int)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("sweep", help="max |mu| per length, exhaustively up to symmetry")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV file (perm,mu); a PNG is written beside it")
    p.add_argument("--limit", type=int, default=DESK_LIMIT)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="DOT Hasse diagrams and plot data")
    p.add_argument("what", choices=("hasse", "plot"))
    p.add_argument("perm", nargs="?")
    p.add_argument("--dot")
    p.add_argument("--csv")
    p.add_argument("--sequence", type=int)
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cache, path = open_cache(args.cache)
    except CacheError as exc:
        print(f"muposet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code = args.func(args, cache)
    except UsageError as exc:
        print(f"muposet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if path is not None:
        save(cache, path)
    return code


if __name__ == "__main__":
    sys.exit(main())
