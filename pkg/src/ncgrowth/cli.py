"""Command-line front end: ``ncgrowth gb|hilbert|automaton|growth|verify|paper``.

Reports are JSON on standard output with sorted keys and no timing data;
timings go to standard error. Exit codes: 0 success, 1 a checked claim
failed, 2 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .automaton import AhoCorasick, RationalSeries, compile_forbidden, count_by_degree, parse_pattern_file, series_from_dfa
from .core import Alphabet, FieldMismatchError, ParseError, Presentation, parse_presentation
from .counts import CountTable
from .groebner import TruncatedGB, buchberger_truncated
from .normal_words import builtin_family, count_normal, parse_family, verify_family
from .series import dominant_root, growth_estimates
from .suite import CaseNotCovered, GROWTH_DEGREE, builtin, check_C_bounds, make_algebra, reproduce_algebra, reproduce_all

log = logging.getLogger("ncgrowth")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_presentation(path: str, char: int | None) -> Presentation:
    pres = parse_presentation(_read(path))
    if char is None:
        return pres
    if pres.characteristic == char:
        return pres
    if pres.characteristic != 0:
        raise FieldMismatchError(f"input is over GF({pres.characteristic}); cannot re-specialize to {char}")
    return pres.specialize(char)


def presentation_meta(pres: Presentation) -> dict:
    text = pres.to_text(sort_relations=True)
    return {
        "field": repr(pres.field),
        "order": "deglex " + " > ".join(pres.alphabet.letters),
        "presentation_sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def _series_dict(rs: RationalSeries) -> dict:
    return {
        "denominator": list(rs.denominator),
        "formula": rs.format(),
        "numerator": list(rs.numerator),
    }


def _counts_dict(table: CountTable) -> dict:
    return {"a": list(table.a[: table.valid_to + 1]), "p": list(table.p[: table.valid_to + 1]),
            "valid_to": table.valid_to}


def _gb_payload(gb: TruncatedGB) -> dict:
    al = gb.alphabet
    return {
        "complete": gb.complete,
        "degree_bound": gb.degree_bound,
        "elements": [g.format(al) for g in gb.elements],
        "leading_words": [al.format_word(w) for w in gb.leading_words],
        "n_elements": len(gb.elements),
    }


def _complete_series(gb: TruncatedGB) -> RationalSeries:
    dfa = AhoCorasick(gb.leading_words, len(gb.alphabet)).avoidance_dfa(gb.alphabet)
    return series_from_dfa(dfa).reduced()


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, summary-or-None, extra meta)
# ---------------------------------------------------------------------------


def cmd_gb(args) -> tuple[dict, dict | None, dict]:
    pres = load_presentation(args.input, args.char)
    gb = buchberger_truncated(pres, args.max_degree)
    return _gb_payload(gb), None, presentation_meta(pres)


def cmd_hilbert(args):
    pres = load_presentation(args.input, args.char)
    gb = buchberger_truncated(pres, args.max_degree)
    payload = {"complete": gb.complete, "counts": _counts_dict(count_normal(gb, args.max_degree))}
    if gb.complete:
        payload["series"] = _series_dict(_complete_series(gb))
    return payload, None, presentation_meta(pres)


def cmd_automaton(args):
    alphabet = Alphabet.of(args.alphabet)
    patterns = parse_pattern_file(_read(args.patterns), alphabet)
    dfa = compile_forbidden(patterns, alphabet)
    table = count_by_degree(dfa, args.max_degree)
    series = series_from_dfa(dfa).reduced()
    payload = {
        "counts": _counts_dict(table),
        "n_states": dfa.n_states,
        "patterns": [p.format(alphabet) for p in patterns],
        "series": _series_dict(series),
        "dominant_root": dominant_root(series.denominator),
    }
    return payload, None, {"alphabet": list(alphabet.letters)}


def cmd_growth(args):
    pres = load_presentation(args.input, args.char)
    gb = buchberger_truncated(pres, args.max_degree)
    N = max(args.n_growth, args.max_degree) if gb.complete else args.max_degree
    table = count_normal(gb, N)
    root = dominant_root(_complete_series(gb).denominator) if gb.complete else None
    report = growth_estimates(table, root)
    payload = {"complete": gb.complete, "counts": _counts_dict(table), "growth": report.as_dict()}
    if args.figures:
        from .plots import growth_figure

        path = growth_figure({repr(pres.field): table}, Path(args.figures) / "growth.png",
                             f"growth over {pres.field!r}")
        payload["figures"] = [path.name]
    return payload, None, presentation_meta(pres)


def cmd_verify(args):
    pres = load_presentation(args.input, args.char)
    fam = builtin_family(args.builtin) if args.builtin else parse_family(_read(args.family), pres.alphabet)
    rep = verify_family(pres, fam, args.max_degree)
    payload = {
        "checked_elements": rep.checked_elements,
        "degree_bound": rep.degree_bound,
        "elements_match": rep.elements_match,
        "family": fam.name or "patterns",
        "first_discrepancy": rep.first_discrepancy,
        "leading_words_match": rep.leading_words_match,
        "members_in_ideal": rep.members_in_ideal,
    }
    return payload, {"pass": rep.ok}, presentation_meta(pres)


def cmd_claims(args):
    char = args.char or 0
    if args.algebra == "all":
        claims = reproduce_all(args.max_degree, args.n_large)
        meta = {}
    else:
        claims = reproduce_algebra(args.algebra, char, args.max_degree, args.n_large)
        meta = presentation_meta(builtin(args.algebra, char=char))
    payload: dict = {"claims": [c.as_dict() for c in claims]}
    if args.figures:
        payload["figures"] = _claim_figures(args.algebra, char, args, claims)
    passed = sum(c.passed for c in claims)
    summary = {"failed": len(claims) - passed, "pass": passed == len(claims), "passed": passed,
               "total": len(claims)}
    return payload, summary, meta


def _claim_figures(name: str, char: int, args, claims) -> list[str]:
    from .plots import c_bounds_figure, growth_figure
    from .suite import characteristic_growth

    out = Path(args.figures)
    names = []
    if name in ("C", "all") and char == 0:
        rep = check_C_bounds(args.n_large)
        names.append(c_bounds_figure(rep.p, rep.phi, out / "C_bounds.png").name)
    for alg, primes in (("A", (5, 7, 11)), ("B", (2, 3, 5))):
        if name not in (alg, "all"):
            continue
        chars = [0, *primes] if char == 0 else [char]
        if alg == "A" and char in (2, 3):
            continue
        curves = {}
        for p in chars:
            g = characteristic_growth(make_algebra(alg, char=p), max(args.max_degree, 12))
            curves["Q" if p == 0 else f"GF({p})"] = g.counts
        label = f"{alg}_growth.png" if char == 0 else f"{alg}_GF{char}_growth.png"
        names.append(growth_figure(curves, out / label, f"{alg}: normal-word growth").name)
    return names


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ncgrowth {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_input=True, char=True):
        if needs_input:
            p.add_argument("--input", required=True, help="presentation file")
        p.add_argument("--max-degree", type=_positive, required=True, help="truncation degree D")
        if char:
            p.add_argument("--char", type=_positive, default=None, help="re-specialize modulo this prime")

    p = sub.add_parser("gb", help="truncated reduced Groebner basis")
    common(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("hilbert", help="normal-word counts and Hilbert series")
    common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("automaton", help="counts for words avoiding factor patterns")
    p.add_argument("--patterns", required=True, help="pattern file")
    p.add_argument("--alphabet", required=True, help='letters, greatest first, e.g. "x y z"')
    p.add_argument("--max-degree", type=_positive, required=True)
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("growth", help="growth statistics and classification")
    common(p)
    p.add_argument("--n-growth", type=_positive, default=GROWTH_DEGREE,
                   help="count degree used when the basis is complete")
    p.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("verify", help="compare a claimed basis family with the computed one")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help="family file")
    group.add_argument("--builtin", help="exa1(a=..,b=..), exa2(a=..) or rgbC")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper", help="check the stated results about A, B and C")
    p.add_argument("--algebra", choices=("A", "B", "C", "all"), required=True)
    p.add_argument("--char", type=_positive, default=None)
    p.add_argument("--max-degree", type=_positive, default=20)
    p.add_argument("--n-large", type=_positive, default=400, help="count degree for C")
    p.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
    p.set_defaults(func=cmd_claims)
    return parser


def _text_gb(report: dict) -> str:
    pay = report["payload"]
    lines = [f"# {report['meta'].get('field')} {report['meta'].get('order')}",
             f"# degree bound {pay['degree_bound']}, complete: {pay['complete']}, {pay['n_elements']} elements"]
    lines += pay["elements"]
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "figures", None) and args.command in ("growth", "paper"):
        Path(args.figures).mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    try:
        payload, summary, meta = args.func(args)
    except (UsageError, ParseError, FieldMismatchError, CaseNotCovered, ValueError, ZeroDivisionError) as exc:
        print(f"ncgrowth {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    print(f"ncgrowth {args.command}: {elapsed:.3f} s", file=sys.stderr)
    report = {
        "command": args.command,
        "meta": {"tool": "ncgrowth", "version": __version__, **meta},
        "payload": payload,
    }
    if summary is not None:
        report["summary"] = summary
    if getattr(args, "format", "json") == "text":
        stdout.write(_text_gb(report))
    else:
        stdout.write(json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n")
    if summary is not None and not summary["pass"]:
        return EXIT_FAIL
    return EXIT_OK


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
