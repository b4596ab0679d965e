"""Compare direct evaluation with the geometric route on random instances.

Prints agreement counts and timing per formula depth, and lists any mismatch
or undecided instance.  Example::

    python3 scripts/translation_sweep.py --samples 2000 --max-depth 5 --seed 7
"""
import argparse
import time

from streamlogic import geometry as g
from streamlogic import ltl
from streamlogic import translation as tr
from streamlogic.sampling import make_rng, random_formula, random_stream
from streamlogic.streams import Alphabet


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--max-depth", type=int, default=4)
    ap.add_argument("--max-lasso", type=int, default=6)
    ap.add_argument("--alphabet", default="abc")
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()

    rng = make_rng(args.seed)
    alphabet = Alphabet.of(args.alphabet)
    print(f"{'depth':>5} {'n':>6} {'agree':>6} {'unknown':>8} {'max_s':>7} {'mean_ms':>8}")
    for depth in range(1, args.max_depth + 1):
        agree = unknown = 0
        times = []
        for _ in range(args.samples):
            phi = random_formula(rng, alphabet, depth)
            s = random_stream(rng, alphabet, args.max_lasso)
            start = time.perf_counter()
            r = g.theory_model(g.nu(s), tr.t_translate(phi), tr.lasso_budget(s))
            times.append(time.perf_counter() - start)
            if r.unknown:
                unknown += 1
                print(f"  undecided: {phi} on {s.to_literal()}")
            elif r.holds == ltl.evaluate(phi, s):
                agree += 1
            else:
                print(f"  MISMATCH: {phi} on {s.to_literal()}")
        mean_ms = 1000 * sum(times) / len(times)
        print(f"{depth:>5} {args.samples:>6} {agree:>6} {unknown:>8} {max(times):>7.3f} {mean_ms:>8.2f}")


if __name__ == "__main__":
    main()
