"""Command line entry point: ``catcube <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (bad files, divisibility,
search guards) and 2 on usage errors.  With ``--json`` exactly one JSON
document goes to stdout; progress and timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from .constructions import (ConstructionError, PSParams, build_ps_word, cat_family_formula,
                            enumerate_ps_family, family_size_upper)
from .counting import count_word, enumerate_occurrences, participation
from .oracle import GuardError, brute_force, brute_force_pairs, constrained_extremal_scan
from .search import SearchConfig, local_search
from .spectral import pair_bound, spectrum, verify_eigensystem, word_bound
from .torus import LabelingFormatError, ShapeError, TorusShape, read_labeling, write_labeling
from .verify import run_identity_suite
from .words import Word

log = logging.getLogger("catcube")

DOMAIN_ERRORS = (ShapeError, ConstructionError, GuardError, LabelingFormatError, OSError, ValueError)


class UsageError(Exception):
    pass


def _dims(text: str) -> TorusShape:
    try:
        return TorusShape.parse(text)
    except ShapeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, payload: dict, text_lines: list[str] | None = None):
    if args.json:
        doc = {"command": args.command, "version": __version__}
        doc.update(payload)
        sys.stdout.write(json.dumps(doc, sort_keys=False) + "\n")
    else:
        for line in text_lines if text_lines is not None else _flatten(payload):
            print(line)


def _flatten(payload: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict):
            lines.extend(_flatten(val, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}\t{json.dumps(val) if isinstance(val, (list, type(None), bool)) else val}")
    return lines


def _word(text: str) -> Word:
    try:
        return Word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- subcommands ---------------------------------------------------------------

def cmd_check_word(args):
    args.json = True
    _emit(args, _word(args.word).verdict_json())


def cmd_bound(args):
    w = _word(args.word)
    b = word_bound(w, args.dims, sharp=args.sharp)
    payload = {"word": w.letters, "dims": list(args.dims.dims)}
    payload.update(b.to_json())
    payload["nominal_pair_bound"] = pair_bound(args.dims).pair_bound
    _emit(args, payload)


def cmd_count(args):
    lab = read_labeling(Path(args.input).read_bytes())
    w = _word(args.word)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        occ = count_word(lab, w, by_direction=args.by_direction)
    payload = {"input": args.input, "word": w.letters, "dims": list(lab.shape.dims),
               "word_count": occ.word_count,
               "warnings": [str(c.message) for c in caught]}
    if occ.by_direction is not None:
        payload["by_direction"] = {",".join(map(str, y)): c for y, c in occ.by_direction.items()}
    witnesses = enumerate_occurrences(lab, w) if args.witnesses else None
    if witnesses is not None:
        payload["witnesses"] = [[list(x), list(y)] for x, y in witnesses]
    if args.figure:
        from .plotting import plot_labeling
        plot_labeling(lab, args.figure, f"{w}: {occ.word_count} occurrences",
                      participation=participation(lab, w))
        payload["figure"] = args.figure
    lines = [f"word_count\t{occ.word_count}"]
    if witnesses is not None:
        lines.append("x\ty")
        lines += [f"{','.join(map(str, x))}\t{','.join(map(str, y))}" for x, y in witnesses]
    _emit(args, payload, None if args.json else lines)


def _phases(text: str | None):
    if text is None:
        return 0
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise UsageError(f"--phases must be a comma list of integers, got {text!r}") from None


def cmd_construct(args):
    w = _word(args.word)
    shape = args.dims
    if args.family:
        if not args.out_dir:
            raise UsageError("--family needs --out-dir")
        members = enumerate_ps_family(w, shape)
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        width = max(4, len(str(len(members))))
        rows = []
        for i, m in enumerate(members):
            name = f"{i:0{width}d}.torus"
            (out / name).write_text(write_labeling(m.labeling))
            rows.append({"file": name, "params": m.params.to_json(), "count": m.count})
        manifest = {"word": w.letters, "dims": list(shape.dims), "family_size": len(members),
                    "parameter_choices": family_size_upper(w, shape),
                    "cat_formula": cat_family_formula(shape.d) if w.letters == "CAT" else None,
                    "word_bound": word_bound(w, shape).word_bound, "members": rows}
        (out / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
        if args.figure:
            from .plotting import plot_gallery
            plot_gallery([m.labeling for m in members], args.figure, f"{w} family on {shape}")
        _emit(args, {k: v for k, v in manifest.items() if k != "members"} | {"out_dir": str(out)})
        return
    p = PSParams.make(shape, args.axis, args.parity, _phases(args.phases))
    lab = build_ps_word(w, p)
    text = write_labeling(lab)
    count = count_word(lab, w).word_count
    if args.out:
        Path(args.out).write_text(text)
    if args.figure:
        from .plotting import plot_labeling
        plot_labeling(lab, args.figure, f"{w} on {shape}: {count} occurrences")
    if args.json:
        payload = {"word": w.letters, "params": p.to_json(), "count": count, "out": args.out}
        if not args.out:
            payload["labeling"] = text
        _emit(args, payload)
    elif not args.out:
        sys.stdout.write(text)
    else:
        print(f"wrote {args.out} ({count} occurrences of {w})")


def cmd_spectrum(args):
    shape = args.dims
    lam = spectrum(shape)
    payload = {"dims": list(shape.dims),
               "eigenvalues": [[list(shape.point(i)), float(v)] for i, v in enumerate(lam)]}
    if args.check:
        payload["check"] = verify_eigensystem(shape)
    if args.figure:
        from .plotting import plot_spectrum
        plot_spectrum(shape, args.figure)
        payload["figure"] = args.figure
    if args.json:
        _emit(args, payload)
        return
    print("frequency\teigenvalue")
    for y, v in payload["eigenvalues"]:
        print(f"{','.join(map(str, y))}\t{v!r}")
    if args.check:
        for line in _flatten(payload["check"], "check."):
            print(line)


def cmd_verify(args):
    if args.seed is None:
        if args.json:
            raise UsageError("--seed is required with --json")
        args.seed = 0
    report = run_identity_suite(args.dims, args.trials, args.seed)
    if args.json:
        _emit(args, report)
        return
    for name, res in report["identities"].items():
        extra = {k: v for k, v in res.items() if k != "pass"}
        print(f"{'PASS' if res['pass'] else 'FAIL'}\t{name}\t{json.dumps(extra)}")
    print(f"nominal_pair_bound\t{report['nominal_pair_bound']}")
    print(f"sharp_pair_bound\t{report['sharp_pair_bound']}")


def cmd_brute(args):
    shape = args.dims
    t0 = time.perf_counter()
    if args.pairs:
        payload = brute_force_pairs(shape, workers=args.workers)
        log.info("elapsed %.2fs", time.perf_counter() - t0)
        _emit(args, payload)
        return
    if not args.word:
        raise UsageError("brute needs --word (or --pairs)")
    w = _word(args.word)
    if args.constrained:
        rep = constrained_extremal_scan(w, shape)
    else:
        rep = brute_force(w, shape, values_only=args.values_only, workers=args.workers,
                          fix_first=args.fix_first)
    log.info("elapsed %.2fs", rep.wall_time)
    payload = rep.to_json()
    if args.figure and rep.argmax:
        from .plotting import plot_gallery
        plot_gallery(rep.argmax, args.figure, f"{w} maximizers on {shape}: max {rep.max_count}")
        payload["figure"] = args.figure
    _emit(args, payload)


def cmd_search(args):
    if args.seed is None:
        if args.json:
            raise UsageError("--seed is required with --json")
        args.seed = 0
    w = _word(args.word)
    cfg = SearchConfig(seed=args.seed, restarts=args.restarts, max_plateau_moves=args.plateau,
                       initializer=args.init)
    res = local_search(w, args.dims, cfg, workers=args.workers)
    payload = res.to_json()
    if args.out:
        Path(args.out).write_text(write_labeling(res.labeling))
        payload["out"] = args.out
    if args.figure:
        from .plotting import plot_search
        plot_search(res.history, res.word_bound, res.labeling, args.figure)
        payload["figure"] = args.figure
    _emit(args, payload)


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catcube", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    p = add("check-word", cmd_check_word, "admissibility verdict for a word")
    p.add_argument("--word", required=True)

    p = add("bound", cmd_bound, "spectral upper bound on occurrences")
    p.add_argument("--word", required=True)
    p.add_argument("--dims", required=True, type=_dims)
    p.add_argument("--sharp", action="store_true", help="use the exact smallest eigenvalue")

    p = add("count", cmd_count, "count occurrences in a labeling file")
    p.add_argument("--input", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--by-direction", action="store_true")
    p.add_argument("--figure", help="write a PNG/PDF rendering of the labeling")

    p = add("construct", cmd_construct, "build striped extremal labelings")
    p.add_argument("--word", required=True)
    p.add_argument("--dims", required=True, type=_dims)
    p.add_argument("--axis", type=int, default=1, help="1-based stripe axis")
    p.add_argument("--parity", type=int, default=0, choices=(0, 1))
    p.add_argument("--phases", help="comma list of even phases, one per transverse class")
    p.add_argument("--out")
    p.add_argument("--family", action="store_true")
    p.add_argument("--out-dir")
    p.add_argument("--figure")

    p = add("spectrum", cmd_spectrum, "closed-form eigenvalues and residual check")
    p.add_argument("--dims", required=True, type=_dims)
    p.add_argument("--check", action="store_true")
    p.add_argument("--figure")

    p = add("verify", cmd_verify, "identity suite on random labelings")
    p.add_argument("--dims", required=True, type=_dims)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)

    p = add("brute", cmd_brute, "exhaustive extremal scan")
    p.add_argument("--word")
    p.add_argument("--dims", required=True, type=_dims)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--pairs", action="store_true", help="maximize #(AC)+#(AT) over A-loci")
    mode.add_argument("--constrained", action="store_true", help="structured census only")
    mode.add_argument("--values-only", action="store_true")
    p.add_argument("--fix-first", action="store_true",
                   help="values only: pin cell 0 to the first letter")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--figure")

    p = add("search", cmd_search, "seeded local search")
    p.add_argument("--word", required=True)
    p.add_argument("--dims", required=True, type=_dims)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--plateau", type=int, default=200)
    p.add_argument("--init", choices=("random", "ps-truncated"), default="random")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--figure")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"catcube: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"catcube: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
