"""Command-line front-end.

Exit codes: 0 true / ok, 1 false / rejected, 2 usage or parse error,
3 internal problem (a disagreement between evaluators, an undecided budget,
an unsound derivation or a failed self-test).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import acceptance
from . import deduction as dd
from . import filtering as flt
from . import geometry as g
from . import ltl
from . import translation as tr
from .streams import Alphabet
from .syntax import ParseError, parse_formula, parse_stream, parse_theory

OK, FALSE, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _alphabet(args) -> Optional[Alphabet]:
    return Alphabet.of(args.alphabet) if args.alphabet else None


def _formula_and_stream(args):
    alphabet = _alphabet(args)
    return parse_formula(args.formula, alphabet), parse_stream(args.stream, alphabet)


def cmd_eval(args) -> int:
    phi, s = _formula_and_stream(args)
    value = ltl.evaluate(phi, s)
    _emit(args, {"formula": str(phi), "stream": s.to_literal(), "holds": value}, str(value).lower())
    return OK if value else FALSE


def cmd_classify(args) -> int:
    phi = parse_formula(args.formula, _alphabet(args))
    stratum = ltl.classify(phi)
    _emit(args, {"formula": str(phi), "stratum": str(stratum)}, str(stratum))
    return OK


def cmd_translate(args) -> int:
    phi = parse_formula(args.formula, _alphabet(args))
    if args.simplified:
        t = tr.simplified_translate(phi)
    else:
        t = tr.t_translate(phi, simplify=not args.raw)
    stratum = ltl.classify(phi)
    payload = {"formula": str(phi), "stratum": str(stratum), "theory": g.theory_to_json(t, args.depth, args.width)}
    if stratum <= ltl.Stratum.G:
        payload["geometric"] = g.format_geom(tr.f_translate(phi), args.width, args.depth)
    _emit(args, payload, f"# {phi} : {stratum}\n" + g.format_theory(t, args.depth, args.width))
    return OK


def cmd_geom_check(args) -> int:
    phi, s = _formula_and_stream(args)
    want = ltl.evaluate(phi, s)
    budget = args.budget or tr.lasso_budget(s)
    result = g.theory_model(g.nu(s), tr.t_translate(phi), budget)
    geom = None if result.unknown else result.holds
    agree = geom is not None and geom == want
    shown = "unknown" if geom is None else str(geom).lower()
    status = "agree" if agree else ("undecided" if geom is None else "DISAGREE")
    payload = {"formula": str(phi), "stream": s.to_literal(), "ltl": want, "geom": geom, "agree": agree, "budget": budget}
    _emit(args, payload, f"ltl={str(want).lower()} geom={shown} {status}")
    if not agree:
        return INTERNAL
    return OK if want else FALSE


def cmd_prove(args) -> int:
    with open(args.theory, encoding="utf-8") as fh:
        theory = parse_theory(fh.read())
    with open(args.check, encoding="utf-8") as fh:
        d = dd.loads(fh.read())
    try:
        dd.check(d, theory)
    except dd.RuleViolation as exc:
        payload = {"ok": False, "path": list(exc.path), "reason": exc.reason}
        _emit(args, payload, f"rejected {exc}")
        return FALSE
    payload = {"ok": True, "size": d.size()}
    text = f"ok ({d.size()} nodes)"
    if args.sound:
        counter = dd.soundness_check(d, theory)
        payload["sound"] = counter is None
        if counter is not None:
            members = sorted(a.to_literal() for a in counter.truth)
            payload["countermodel"] = members
            _emit(args, payload, f"{text}; UNSOUND, countermodel {members}")
            return INTERNAL
        text += "; sound on all table valuations"
    _emit(args, payload, text)
    return OK


def cmd_filter_demo(args) -> int:
    p = flt.Predicate.parse(args.pred)
    s = parse_stream(args.stream, p.alphabet)
    report = flt.spec_report(p, s, args.kmax)
    rows = [
        {"k": r.k, "n": r.n, "psi": r.psi_holds, "phi_gn": r.phi_gn_holds, "lemma": None if r.lemma is None else bool(r.lemma)}
        for r in report.rows
    ]
    payload = {
        "predicate": str(p),
        "input": s.to_literal(),
        "output": report.output.to_literal(),
        "infinitely_many_hits": report.antecedent,
        "output_total": report.output_total,
        "rows": rows,
        "verdict": report.verdict,
    }
    lines = [
        f"input  {s.pretty()}",
        f"output {report.output.pretty()}",
        f"infinitely many hits: {str(report.antecedent).lower()}",
    ]
    if report.antecedent:
        lines.append(f"output total: {str(report.output_total).lower()}")
        for r in rows:
            lines.append(f"  k={r['k']} n={r['n']} psi={r['psi']} phi(g_n)={r['phi_gn']} lemma={r['lemma']}")
    lines.append(f"verdict: {'ok' if report.verdict else 'FAILED'}")
    _emit(args, payload, "\n".join(lines))
    return OK if report.verdict else INTERNAL


def cmd_selftest(args) -> int:
    results = []
    for fn in acceptance.CRITERIA:
        r = acceptance.run_criterion(fn, args.seed)
        results.append(r)
        if not args.json:
            print(r.line(), flush=True)
    if args.json:
        print(json.dumps([r.__dict__ for r in results], ensure_ascii=False))
    return OK if all(r.passed for r in results) else INTERNAL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--alphabet", help="restrict letters, e.g. 'ab'")

    parser = argparse.ArgumentParser(prog="streamlogic", description="LTL on partial streams and its geometric theories")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("eval", cmd_eval, "evaluate a formula on a lasso stream")
    sp.add_argument("formula")
    sp.add_argument("stream", help="PREFIX|CYCLE, '_' for bottom")

    sp = add("classify", cmd_classify, "report the syntactic stratum")
    sp.add_argument("formula")

    sp = add("translate", cmd_translate, "print the geometric theory of a negation-free formula")
    sp.add_argument("formula")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--width", type=int, default=3)
    sp.add_argument("--simplified", action="store_true", help="F/G shortcut translation for layer-0 bodies")
    sp.add_argument("--raw", action="store_true", help="keep neutral theories in iterates")

    sp = add("geom-check", cmd_geom_check, "compare direct evaluation with the geometric route")
    sp.add_argument("formula")
    sp.add_argument("stream")
    sp.add_argument("--budget", type=int, default=None)

    sp = add("prove", cmd_prove, "check a derivation (JSON) against a finite theory")
    sp.add_argument("--check", required=True, metavar="FILE")
    sp.add_argument("--theory", required=True, metavar="FILE")
    sp.add_argument("--sound", action="store_true", help="also search table valuations for a countermodel")

    sp = add("filter-demo", cmd_filter_demo, "run the filter case study on one input")
    sp.add_argument("--pred", required=True, help="e.g. a=tt,b=ff")
    sp.add_argument("--stream", required=True)
    sp.add_argument("--kmax", type=int, default=3)

    sp = add("selftest", cmd_selftest, "run the acceptance criteria")
    sp.add_argument("--seed", type=int, default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ltl.UnknownLetter, tr.NegationPresent, tr.UnsupportedShape, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (flt.BottomOnLetter, flt.NotTotal, flt.KExceedsN, dd.SchemaMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except tr.BudgetInsufficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
