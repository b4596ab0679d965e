"""Tabulate the filter case study: witness indices and lemma checks per input.

Example::

    python3 scripts/filter_sweep.py --streams 20 --kmax 4 --keep a
"""
import argparse

from streamlogic import filtering as flt
from streamlogic.sampling import make_rng, random_stream
from streamlogic.streams import Alphabet


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--streams", type=int, default=20)
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--alphabet", default="ab")
    ap.add_argument("--keep", default="a", help="letters mapped to tt")
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()

    rng = make_rng(args.seed)
    alphabet = Alphabet.of(args.alphabet)
    p = flt.Predicate.keep(alphabet, args.keep)
    print(f"predicate {p}")
    failures = 0
    for _ in range(args.streams):
        s = random_stream(rng, alphabet, 6, total=True)
        report = flt.spec_report(p, s, args.kmax)
        witnesses = " ".join("-" if r.n is None else str(r.n) for r in report.rows) or "(finitely many hits)"
        flag = "ok" if report.verdict else "FAIL"
        failures += not report.verdict
        print(f"{s.to_literal():>14} -> {report.output.to_literal():<12} n_k: {witnesses:<18} {flag}")
    print(f"failures: {failures}/{args.streams}")


if __name__ == "__main__":
    main()
