"""Command-line entry point: ``knockout generate|solve|solutions|experiment``.

Exit codes: 0 answered, 1 a check failed, 2 usage or input error,
3 size cap exceeded or answer unknown. Output is always plain text.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructors, exact, experiments, models, solutions
from .core import TournamentError, is_power_of_two, play_bracket
from .io import ParseError, format_tournament, model_comment, model_from_comments, read_tournament

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

SET_NAMES = ("copeland", "uncovered", "slater", "markov", "bipartisan", "itmat:K", "kpaths:K")
MODEL_KINDS = {"cr": "condorcet_random", "flexible": "flexible"}


class UsageError(Exception):
    pass


def _fmt_players(players) -> str:
    return " ".join(map(str, sorted(players))) or "-"


def _load(path: str):
    try:
        return read_tournament(path)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- generate ---------------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        spec = models.ModelSpec(
            MODEL_KINDS[args.model], args.n, args.p, args.seed,
            delta=args.delta, pair_policy=args.pair_policy,
            prob_policy=args.prob_policy, adversary_policy=args.adversary,
        )
        t = models.generate(spec)
    except models.ModelError as e:
        raise UsageError(str(e)) from None
    _emit(format_tournament(t, [model_comment(spec)]), args.output)
    return EXIT_OK


# -- solve ------------------------------------------------------------------------


def cmd_solve(args) -> int:
    t, comments = _load(args.file)
    try:
        v = t.check_player(args.player)
    except TournamentError as e:
        raise UsageError(str(e)) from None
    if not is_power_of_two(t.n):
        raise UsageError(f"a balanced bracket needs a power-of-two player count, got n={t.n}")
    spec = model_from_comments(comments)
    is_cr = spec is not None and spec.kind == "condorcet_random"

    answer, cert, seeding, reason = "unknown", None, None, ""
    if args.method in ("structural", "auto"):
        found = constructors.certify(t, v, cr=is_cr, k=args.swap_factor)
        if found is not None:
            answer, (cert, seeding) = "yes", found
        else:
            reason = "no structural certificate applies"
    if answer == "unknown" and args.method in ("exact", "auto"):
        try:
            seeding = exact.fix_for(t, v)
            answer, cert = ("yes", "exact") if seeding is not None else ("no", "exact")
        except exact.SizeCapError as e:
            reason = str(e)

    print(f"player: {v}")
    print(f"answer: {answer}")
    if cert:
        print(f"certificate: {cert}")
    if seeding is not None:
        print(f"seeding: {' '.join(map(str, seeding.leaves))}")
    if answer == "unknown":
        print(f"reason: {reason}")
        return EXIT_UNKNOWN
    if args.verify and seeding is not None:
        log = play_bracket(t, seeding)
        ok = log.champion == v
        print(f"verify: {'ok' if ok else 'FAILED'} ({len(log.matches)} matches, champion {log.champion})")
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


# -- solutions -------------------------------------------------------------------


def _parse_sets(text: str) -> list[tuple[str, int | None]]:
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, _, k = item.partition(":")
        if name in ("itmat", "kpaths"):
            if not k.isdigit() or int(k) < 1:
                raise UsageError(f"{name} needs a positive integer, as in {name}:2")
            out.append((name, int(k)))
        elif name in ("copeland", "uncovered", "slater", "markov", "bipartisan") and not k:
            out.append((name, None))
        else:
            raise UsageError(f"unknown set {item!r}; choose from {', '.join(SET_NAMES)}")
    if not out:
        raise UsageError("no sets requested")
    return out


def cmd_solutions(args) -> int:
    t, _ = _load(args.file)
    wanted = _parse_sets(args.sets)
    chosen = {}
    try:
        for name, k in wanted:
            label = name if k is None else f"{name}:{k}"
            if name == "copeland":
                chosen[label] = solutions.copeland_set(t)
            elif name == "uncovered":
                chosen[label] = solutions.uncovered_set(t)
            elif name == "slater":
                chosen[label] = solutions.slater_set(t)
            elif name == "markov":
                chosen[label] = solutions.markov_set(t)
            elif name == "bipartisan":
                lottery = solutions.maximal_lottery(t)
                chosen[label] = frozenset(i for i, q in enumerate(lottery) if q > 0)
            elif name == "itmat":
                chosen[label] = solutions.iterated_matrix_set(t, k)
            else:
                chosen[label] = solutions.max_kpath_players(t, k)
            print(f"{label}: {_fmt_players(chosen[label])}")
            if name == "bipartisan":
                print("bipartisan-lottery: " + " ".join(f"{i}:{q}" for i, q in enumerate(lottery) if q > 0))
    except ValueError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_UNKNOWN

    if not args.check_se:
        return EXIT_OK
    try:
        winners = exact.se_winners(t)
    except (exact.SizeCapError, TournamentError, ValueError) as e:
        print(f"se-check: skipped ({e})")
        return EXIT_UNKNOWN
    print(f"se_winners: {_fmt_players(winners)}")
    failed = False
    for label, players in chosen.items():
        outside = players - winners
        if label in ("copeland", "slater", "markov"):
            failed |= bool(outside)
            status = f"VIOLATION {_fmt_players(outside)}" if outside else "ok"
        elif label == "bipartisan":
            top = solutions.max_copeland_bipartisan(t)
            bad = top - winners
            failed |= bool(bad)
            status = f"VIOLATION {_fmt_players(bad)}" if bad else "ok"
            if outside:
                status += f"; outside se_winners (expected possible): {_fmt_players(outside)}"
        else:
            status = f"outside se_winners: {_fmt_players(outside)}" if outside else "inside se_winners"
        print(f"check {label}: {status}")
    return EXIT_FAIL if failed else EXIT_OK


# -- experiment ------------------------------------------------------------------


def cmd_experiment(args) -> int:
    grid = {"n": args.n, "p": args.p, "delta": args.delta, "adversary": args.adversary}
    try:
        report = experiments.run_experiment(
            args.name, grid, args.trials, args.seed,
            metrics=args.metrics.split(",") if args.metrics else None,
            two_half_k=args.swap_factor, workers=args.workers,
        )
    except (experiments.ExperimentError, models.ModelError) as e:
        raise UsageError(str(e)) from None
    except exact.SizeCapError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    _emit(report.to_csv(), args.output)
    if args.summary:
        _emit(report.summary_csv(), args.summary)
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="knockout", description="Single-elimination seeding and tournament solutions.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a tournament from a random model")
    g.add_argument("--model", choices=sorted(MODEL_KINDS), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--delta", type=float, default=0.5)
    g.add_argument("--pair-policy", choices=models.PAIR_POLICIES, default="circulant")
    g.add_argument("--prob-policy", choices=models.PROB_POLICIES, default="constant")
    g.add_argument("--adversary", choices=models.ADVERSARY_POLICIES, default="lower")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output", help="output file (default stdout)")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="decide whether a player can win some seeding")
    s.add_argument("file")
    s.add_argument("--player", type=int, required=True)
    s.add_argument("--method", choices=("exact", "structural", "auto"), default="auto")
    s.add_argument("--verify", action="store_true", help="replay the witness seeding")
    s.add_argument("--swap-factor", type=float, default=constructors.DEFAULT_SWAP_FACTOR,
                   help="swap-set size factor k for the two-half construction")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("solutions", help="compute tournament solutions")
    o.add_argument("file")
    o.add_argument("--sets", default="copeland,uncovered,slater,markov,bipartisan",
                   help="comma-separated: " + ",".join(SET_NAMES))
    o.add_argument("--check-se", action="store_true", help="compare against the exact SE winners")
    o.set_defaults(func=cmd_solutions)

    e = sub.add_parser("experiment", help="run a seeded experiment suite, writing CSV")
    e.add_argument("name", choices=experiments.EXPERIMENTS)
    e.add_argument("--n", type=int, nargs="+")
    e.add_argument("--p", type=float, nargs="+")
    e.add_argument("--delta", type=float, nargs="+")
    e.add_argument("--adversary", choices=models.ADVERSARY_POLICIES, nargs="+")
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--metrics", help="comma-separated subset of " + ",".join(experiments.SWEEP_METRICS))
    e.add_argument("--swap-factor", type=float, default=1.0)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("-o", "--output", help="row CSV (default stdout)")
    e.add_argument("--summary", help="also write the per-metric summary CSV here")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"knockout {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
