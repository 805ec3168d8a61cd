"""Compare the closed-form NAP composition sign with the Koszul sign, and the
two reduction sign rules for order independence.

    python3 scripts/sign_analysis.py [--samples 500] [--seed 5]
"""

import argparse
import random
from collections import Counter

from cacti import coalg as C
from cacti import treemodel as TM


def sign_table(samples, seed):
    rng = random.Random(seed)
    c = C.circle()
    tally = Counter()
    example = None
    for _ in range(samples):
        t1 = TM.random_decorated_tree(rng, rng.randint(2, 4), c.dim)
        t2 = TM.random_decorated_tree(rng, rng.randint(2, 4), c.dim)
        i = rng.randint(1, t1.tree.n)
        s, _ = TM.nap_compose_trees(t1, i, t2, c.degrees)
        closed = TM.closed_form_sign(t1, i, t2, c.degrees) == s
        fixed = TM.corrected_closed_form_sign(t1, i, t2, c.degrees) == s
        tally[closed, fixed] += 1
        if not closed and example is None:
            example = (TM.dumps_tree(t1, c.names), i, TM.dumps_tree(t2, c.names), s)
    return tally, example


def confluence(rule, samples, seed):
    rng = random.Random(seed)
    c = C.circle()
    bad = 0
    for _ in range(samples):
        t = TM.TreeVector.single(TM.random_decorated_tree(rng, rng.randint(2, 6), c.dim))
        a = TM.cactus_normal_form(t, c, TM.random_chooser(rng), rule)
        b = TM.cactus_normal_form(t, c, TM.random_chooser(rng), rule)
        bad += a.terms != b.terms
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=5)
    a = ap.parse_args()

    tally, example = sign_table(a.samples, a.seed)
    print(f"composition signs over {a.samples} random pairs on the circle:")
    print(f"  closed form agrees:     {tally[True, True] + tally[True, False]}")
    print(f"  corrected form agrees:  {tally[True, True] + tally[False, True]}")
    if example:
        t1, i, t2, s = example
        print(f"  first disagreement: T1 = {t1}, i = {i}, T2 = {t2}, true sign {s:+d}")
    for rule in ("koszul", "verbatim"):
        bad = confluence(rule, a.samples, a.seed)
        print(f"reduction rule {rule}: {a.samples - bad}/{a.samples} trees order independent")


if __name__ == "__main__":
    main()
