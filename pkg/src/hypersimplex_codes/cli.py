"""Command-line front end: ``hypersimplex-codes <command> ...``.

Exit codes are shared by every command: 0 success, 1 a verification
verdict failed, 2 a resource guard tripped, 64 bad usage or unparsable
input.  Reports are JSON objects with a fixed ``schema_version``; apart
from ``duration_s`` they are byte-identical for identical arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .checks import FAIL, LEVELS, run_checks
from .errors import DomainError, ParameterError, ResourceError
from .families import (
    enumerate_min_params,
    enumerate_ntm_params,
    expand_min,
    expand_ntm,
    recognize_min,
    recognize_ntm,
)
from .field import make_field
from .formulas import (
    CodeParams,
    du_chain_check,
    du_closed,
    min_distance,
    min_regime,
    min_word_count,
    ntm_regime,
    ntm_weight,
    ntm_word_count,
)
from .groebner import DEFAULT_PAIR_GUARD, footprint_weight_check, genpoly_text
from .oracles import DEFAULT_SPECTRUM_GUARD, du_bruteforce, exhaustive_spectrum
from .polynomial import complement, parse_poly, to_text
from .torus import DEFAULT_ELEMENT_GUARD, TorusPointSet, evaluate

SCHEMA_VERSION = "1"
OUTPUT_DIR_ENV = "HYPERSIMPLEX_OUTPUT_DIR"
DEFAULT_SEED = 0
DEFAULT_FAMILY_LIMIT = 10**6
DEFAULT_FOOTPRINT_POINTS = 4096
# a field large enough to hold any coefficient a user is likely to type
COMPLEMENT_DEFAULT_Q = 256

EXIT_OK, EXIT_FAIL, EXIT_GUARD, EXIT_USAGE = 0, 1, 2, 64

CLOSED, FAMILY, EXHAUSTIVE, SAMPLED = "closed-form", "family-enumeration", "exhaustive-oracle", "sampled"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def labelled(value, provenance: str) -> dict:
    return {"value": value, "provenance": provenance}


class Outcome:
    """What a command produced: JSON results, text lines, CSV rows, exit code."""

    def __init__(self, results: dict, text: list[str], rows: list[list] | None = None, code: int = EXIT_OK,
                 params: dict | None = None, regimes: dict | None = None):
        self.results = results
        self.text = text
        self.rows = rows
        self.code = code
        self.params = params or {}
        self.regimes = regimes or {}


# ---------------------------------------------------------------- helpers

def _code_params(args) -> CodeParams:
    p = CodeParams(args.q, args.s, args.d, permissive=args.permissive)
    if not p.in_hypothesis:
        warnings.warn(f"(q={p.q}, s={p.s}, d={p.d}) is outside q >= 4, 3 <= d < s; formulas may not apply")
    return p


def _regimes(s: int, d: int) -> dict:
    return {"min": str(min_regime(s, d)), "ntm": str(ntm_regime(s, d))}


def _guard(name: str, value: int, default: int) -> dict:
    return {"name": name, "value": value, "default": default, "overridden": value != default}


def _qsd(p: CodeParams, **extra) -> dict:
    return {"q": p.q, "s": p.s, "d": p.d, **extra}


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# --------------------------------------------------------------- commands

def cmd_params(args) -> Outcome:
    p = _code_params(args)
    delta, delta2 = min_distance(p), ntm_weight(p)
    mcount, ncount = min_word_count(p), ntm_word_count(p)
    uncovered = "not covered: gap regime"
    results = {
        "n": labelled(p.n, CLOSED),
        "dimension": labelled(p.dimension, CLOSED),
        "min_distance": labelled(delta, CLOSED),
        "ntm_weight": labelled(delta2 if delta2 is not None else uncovered, CLOSED),
        "min_word_count": labelled(mcount, CLOSED),
        "ntm_word_count": labelled(ncount if ncount is not None else uncovered, CLOSED),
        "in_hypothesis": p.in_hypothesis,
    }
    text = [
        f"q={p.q} s={p.s} d={p.d}",
        f"n = {p.n}",
        f"dimension = {p.dimension}",
        f"regime: {min_regime(p.s, p.d)} / {ntm_regime(p.s, p.d)}",
        f"delta = {delta}",
        f"delta_2 = {delta2 if delta2 is not None else uncovered}",
        f"minimal words = {mcount}",
        f"next-to-minimal words = {ncount if ncount is not None else uncovered}",
    ]
    rows = [["quantity", "value"], ["n", p.n], ["dimension", p.dimension], ["min_distance", delta],
            ["ntm_weight", delta2 if delta2 is not None else ""], ["min_word_count", mcount],
            ["ntm_word_count", ncount if ncount is not None else ""]]
    return Outcome(results, text, rows, params=_qsd(p), regimes=_regimes(p.s, p.d))


def cmd_spectrum(args) -> Outcome:
    p = _code_params(args)
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    dist = exhaustive_spectrum(p, guard=args.max_codewords, threads=args.threads)
    delta, delta2 = min_distance(p), ntm_weight(p)
    verdicts = {
        "min_distance": _verdict(dist.min_nonzero_weight() == delta),
        "min_word_count": _verdict(dist[delta] == min_word_count(p)),
    }
    text = [f"A_{w} = {c}" for w, c in sorted(dist.counts.items())]
    text.append(f"min weight {dist.min_nonzero_weight()} vs delta {delta}: {verdicts['min_distance']}")
    text.append(f"A_{delta} = {dist[delta]} vs {min_word_count(p)}: {verdicts['min_word_count']}")
    results = {
        "distribution": labelled(dist.to_dict(), EXHAUSTIVE),
        "total": labelled(dist.total, EXHAUSTIVE),
        "min_nonzero_weight": labelled(dist.min_nonzero_weight(), EXHAUSTIVE),
        "second_nonzero_weight": labelled(dist.second_nonzero_weight(), EXHAUSTIVE),
        "min_distance": labelled(delta, CLOSED),
        "min_word_count": labelled(min_word_count(p), CLOSED),
    }
    if delta2 is None:
        verdicts["ntm_weight"] = verdicts["ntm_word_count"] = "SKIPPED"
        text.append(f"second weight {dist.second_nonzero_weight()} (gap regime, reported as data)")
    else:
        verdicts["ntm_weight"] = _verdict(dist.second_nonzero_weight() == delta2)
        verdicts["ntm_word_count"] = _verdict(dist[delta2] == ntm_word_count(p))
        results["ntm_weight"] = labelled(delta2, CLOSED)
        results["ntm_word_count"] = labelled(ntm_word_count(p), CLOSED)
        text.append(f"second weight {dist.second_nonzero_weight()} vs delta_2 {delta2}: {verdicts['ntm_weight']}")
        text.append(f"A_{delta2} = {dist[delta2]} vs {ntm_word_count(p)}: {verdicts['ntm_word_count']}")
    results["verdicts"] = verdicts
    rows = [["weight", "count"]] + [[w, c] for w, c in sorted(dist.counts.items())]
    code = EXIT_FAIL if FAIL in verdicts.values() else EXIT_OK
    params = _qsd(p, threads=args.threads,
                  guards=[_guard("max_codewords", args.max_codewords, DEFAULT_SPECTRUM_GUARD)])
    return Outcome(results, text, rows, code, params, _regimes(p.s, p.d))


def cmd_verify(args) -> Outcome:
    p = _code_params(args)
    checks = run_checks(p, level=args.level, seed=args.seed)
    code = EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK
    results = {"checks": [c.to_dict() for c in checks],
               "summary": {s: sum(c.status == s for c in checks) for s in ("PASS", "FAIL", "SKIPPED")}}
    text = [f"{c.status:7} {c.name}  [{c.anchor}]" for c in checks]
    text.append("all checks passed" if code == EXIT_OK else "verification FAILED")
    rows = [["name", "anchor", "status"]] + [[c.name, c.anchor, c.status] for c in checks]
    params = _qsd(p, seed=args.seed, level=args.level, guards=[
        _guard("spectrum_guard", LEVELS[args.level]["spectrum_guard"], LEVELS[args.level]["spectrum_guard"])])
    return Outcome(results, text, rows, code, params, _regimes(p.s, p.d))


def _family_command(args, kind: str) -> Outcome:
    p = _code_params(args)
    field = make_field(p.q, permissive=p.permissive)
    if kind == "min":
        stream, expand, total = enumerate_min_params(p, field), expand_min, min_word_count(p) // (p.q - 1)
    else:
        if ntm_weight(p) is None:
            raise ParameterError(f"s={p.s}, d={p.d} lies in the gap regime: no next-to-minimal family")
        stream, expand, total = enumerate_ntm_params(p, field), expand_ntm, ntm_word_count(p) // (p.q - 1)
    if total > args.limit:
        raise ResourceError(f"{total} monic forms exceed --limit {args.limit}")
    items = list(itertools.islice(stream, args.limit))
    polys = [to_text(expand(it, p.s, field)) for it in items]
    results = {
        "monic_forms": labelled(len(items), FAMILY),
        "expected_monic_forms": labelled(total, CLOSED),
        "items": [{**it.to_dict(), "poly": f} for it, f in zip(items, polys)],
    }
    rows = [["index", "poly", "params"]] + [
        [i, f, json.dumps(it.to_dict(), sort_keys=True)] for i, (it, f) in enumerate(zip(items, polys))]
    params = _qsd(p, guards=[_guard("limit", args.limit, DEFAULT_FAMILY_LIMIT)])
    code = EXIT_OK if len(items) == total else EXIT_FAIL
    return Outcome(results, polys, rows, code, params, _regimes(p.s, p.d))


def cmd_min_words(args) -> Outcome:
    return _family_command(args, "min")


def cmd_ntm_words(args) -> Outcome:
    return _family_command(args, "ntm")


def cmd_recognize(args) -> Outcome:
    p = _code_params(args)
    field = make_field(p.q, permissive=p.permissive)
    f = parse_poly(args.poly, field, p.s)
    if not f.is_zero() and f.degree != p.d:
        raise ParameterError(f"polynomial has degree {f.degree}, expected {p.d}")
    found = {"min": recognize_min(f, p), "ntm": recognize_ntm(f, p) if ntm_weight(p) is not None else None}
    kind = next((k for k, v in found.items() if v is not None), None)
    results = {"kind": kind, "params": found[kind].to_dict() if kind else None}
    if kind is None:
        text = ["not a minimal or next-to-minimal form"]
    else:
        text = [f"{kind}: {json.dumps(found[kind].to_dict(), sort_keys=True)}"]
    rows = [["kind", "params"], [kind or "", json.dumps(results["params"], sort_keys=True)]]
    return Outcome(results, text, rows, params=_qsd(p, poly=args.poly), regimes=_regimes(p.s, p.d))


def cmd_du(args) -> Outcome:
    if args.q < 2 or args.s < 1:
        raise ParameterError("need q >= 2 and s >= 1")
    field = make_field(args.q, permissive=args.permissive)
    rng = np.random.default_rng(args.seed)
    table, ok = [], True
    for u in range(1, args.s + 1):
        closed = du_closed(args.q, args.s, u)
        brute = []
        for _ in range(args.trials):
            coeffs = [int(field.units[i]) for i in rng.integers(0, args.q - 1, size=u)]
            brute.append(du_bruteforce(field, args.s, coeffs, guard=args.max_points))
        ok &= all(b == closed for b in brute)
        table.append({"u": u, "closed": labelled(closed, CLOSED), "brute": labelled(brute, SAMPLED)})
    chain = {str(k): du_chain_check(args.q, args.s, k) for k in range(1, (args.s - 2) // 2 + 1)}
    ok &= all(chain.values())
    # odd u decrease towards (q-1)^{s+1}/q from above, even u increase towards it from below
    odd = [du_closed(args.q, args.s, u) for u in range(1, args.s + 1, 2)]
    even = [du_closed(args.q, args.s, u) for u in range(2 * (args.s // 2), 0, -2)]
    middle = (args.q - 1) ** (args.s + 1) / args.q
    chain_text = " > ".join([*(str(x) for x in odd), f"{middle:g}", *(str(x) for x in even)])
    text = [f"D_{row['u']} = {row['closed']['value']}  brute {row['brute']['value']}" for row in table]
    text.append(f"ordering: {chain_text}")
    text.append(f"chain checks: {chain}  -> {_verdict(ok)}")
    results = {"table": table, "chain": chain, "middle_term": labelled(middle, CLOSED), "verdict": _verdict(ok)}
    rows = [["u", "closed", "brute"]] + [
        [r["u"], r["closed"]["value"], " ".join(map(str, r["brute"]["value"]))] for r in table]
    params = {"q": args.q, "s": args.s, "seed": args.seed, "trials": args.trials,
              "guards": [_guard("max_points", args.max_points, DEFAULT_ELEMENT_GUARD)]}
    return Outcome(results, text, rows, EXIT_OK if ok else EXIT_FAIL, params)


def _field_and_poly(args, q: int):
    field = make_field(q, permissive=args.permissive)
    return field, parse_poly(args.poly, field, args.s)


def cmd_footprint(args) -> Outcome:
    field, f = _field_and_poly(args, args.q)
    if f.is_zero():
        raise ParameterError("the zero polynomial has no footprint bound")
    check = footprint_weight_check(f, guard=args.max_points, max_pairs=args.max_pairs)
    results = {
        "weight": labelled(check.weight, EXHAUSTIVE),
        "footprint": labelled(check.footprint, EXHAUSTIVE),
        "footprint_bound": labelled(check.bound, EXHAUSTIVE),
        "leading_monomial_bound": labelled(check.lm_bound, CLOSED),
        "holds": check.holds,
        "equality": check.equality,
        "basis": [genpoly_text(g) for g in check.basis],
    }
    text = [
        f"weight = {check.weight}",
        f"footprint of I_X + (f) = {check.footprint}",
        f"(q-1)^s - footprint = {check.bound}",
        f"leading-monomial bound = {check.lm_bound}",
        f"bound holds: {check.holds}, equality: {check.equality}",
        "Groebner basis:",
        *(f"  {genpoly_text(g)}" for g in check.basis),
    ]
    rows = [["quantity", "value"], ["weight", check.weight], ["footprint", check.footprint],
            ["footprint_bound", check.bound], ["lm_bound", check.lm_bound]]
    params = {"q": args.q, "s": args.s, "poly": args.poly, "guards": [
        _guard("max_points", args.max_points, DEFAULT_FOOTPRINT_POINTS),
        _guard("max_pairs", args.max_pairs, DEFAULT_PAIR_GUARD)]}
    return Outcome(results, text, rows, EXIT_OK if check.holds else EXIT_FAIL, params)


def cmd_weight(args) -> Outcome:
    field, f = _field_and_poly(args, args.q)
    word = evaluate(f, TorusPointSet(field, args.s, guard=args.max_points * args.s))
    results = {"weight": labelled(word.weight, EXHAUSTIVE), "length": (args.q - 1) ** args.s}
    text = [f"weight = {word.weight} of {(args.q - 1) ** args.s}"]
    rows = [["quantity", "value"], ["weight", word.weight], ["length", (args.q - 1) ** args.s]]
    regimes = {}
    if f.degree:
        results["degree"] = f.degree
        regimes = _regimes(args.s, f.degree)
    if args.values:
        results["codeword"] = word.to_hex()
        text.append(word.to_hex())
    params = {"q": args.q, "s": args.s, "poly": args.poly,
              "guards": [_guard("max_points", args.max_points, DEFAULT_ELEMENT_GUARD)]}
    return Outcome(results, text, rows, params=params, regimes=regimes)


def cmd_complement(args) -> Outcome:
    _, f = _field_and_poly(args, args.q)
    g = to_text(complement(f))
    results = {"complement": g}
    return Outcome(results, [g], [["complement"], [g]], params={"q": args.q, "s": args.s, "poly": args.poly})


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None,
                        help="output format (default text, or json with --output)")
    common.add_argument("--output", default=None,
                        help=f"write the report here; relative paths resolve against ${OUTPUT_DIR_ENV}")
    common.add_argument("--permissive", action="store_true",
                        help="accept parameters outside q >= 4, 3 <= d < s with a warning")

    parser = _Parser(prog="hypersimplex-codes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def qsd(sp):
        sp.add_argument("--q", type=int, required=True, help="field size")
        sp.add_argument("--s", type=int, required=True, help="number of variables")
        sp.add_argument("--d", type=int, required=True, help="degree")

    def qs_poly(sp, q_default=None):
        if q_default is None:
            sp.add_argument("--q", type=int, required=True, help="field size")
        else:
            sp.add_argument("--q", type=int, default=q_default, help=f"field size (default {q_default})")
        sp.add_argument("--s", type=int, required=True, help="number of variables")
        sp.add_argument("--poly", required=True, help='polynomial text, e.g. "t1*t2 + 3*t2*t3"')

    sp = sub.add_parser("params", parents=[common], help="closed-form parameters and regime")
    qsd(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("spectrum", parents=[common], help="exhaustive weight distribution")
    qsd(sp)
    sp.add_argument("--max-codewords", type=int, default=DEFAULT_SPECTRUM_GUARD,
                    help=f"refuse codes with more codewords (default {DEFAULT_SPECTRUM_GUARD})")
    sp.add_argument("--threads", type=int, default=1, help="worker threads for the enumeration")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    qsd(sp)
    sp.add_argument("--level", choices=tuple(LEVELS), default="quick")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_verify)

    for name, func, what in (("min-words", cmd_min_words, "minimal"), ("ntm-words", cmd_ntm_words, "next-to-minimal")):
        sp = sub.add_parser(name, parents=[common], help=f"enumerate monic {what} forms")
        qsd(sp)
        sp.add_argument("--limit", type=int, default=DEFAULT_FAMILY_LIMIT,
                        help=f"refuse families with more monic forms (default {DEFAULT_FAMILY_LIMIT})")
        sp.set_defaults(func=func)

    sp = sub.add_parser("recognize", parents=[common], help="recover family parameters of a polynomial")
    qsd(sp)
    sp.add_argument("--poly", required=True)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("du", parents=[common], help="nonzero counts of linear forms, closed form vs brute force")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--trials", type=int, default=3, help="random coefficient vectors per u")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--max-points", type=int, default=DEFAULT_ELEMENT_GUARD)
    sp.set_defaults(func=cmd_du)

    sp = sub.add_parser("footprint", parents=[common], help="weight against the footprint bound")
    qs_poly(sp)
    sp.add_argument("--max-points", type=int, default=DEFAULT_FOOTPRINT_POINTS)
    sp.add_argument("--max-pairs", type=int, default=DEFAULT_PAIR_GUARD)
    sp.set_defaults(func=cmd_footprint)

    sp = sub.add_parser("weight", parents=[common], help="Hamming weight of a polynomial's codeword")
    qs_poly(sp)
    sp.add_argument("--values", action="store_true", help="also print the codeword as hex")
    sp.add_argument("--max-points", type=int, default=DEFAULT_ELEMENT_GUARD)
    sp.set_defaults(func=cmd_weight)

    sp = sub.add_parser("complement", parents=[common], help="the complementary polynomial f^c")
    qs_poly(sp, q_default=COMPLEMENT_DEFAULT_Q)
    sp.set_defaults(func=cmd_complement)
    return parser


# ----------------------------------------------------------------- output

def render(args, outcome: Outcome, duration: float, fmt: str) -> str:
    if fmt == "json":
        params = {"seed": None, "guards": [], **outcome.params}
        report = {
            "schema_version": SCHEMA_VERSION,
            "artifact_version": __version__,
            "command": args.command,
            "params": params,
            "regimes": outcome.regimes,
            "results": outcome.results,
            "exit_code": outcome.code,
            "duration_s": round(duration, 6),
        }
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(outcome.rows or [])
        return buf.getvalue()
    return "\n".join(outcome.text) + "\n"


def resolve_output(path: str) -> Path:
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("json" if args.output else "text")
    start = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            outcome = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParameterError, DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args, outcome, time.perf_counter() - start, fmt)
    if args.output:
        out = resolve_output(args.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    else:
        sys.stdout.write(text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
