"""Try a family of monomial orders on a preset and report which give a
quadratic Groebner basis.

    python3 scripts/order_search.py leib
    python3 scripts/order_search.py bcact --coalgebra circle
"""

import argparse
import itertools

from cacti import groebner as GB
from cacti import presets as P
from cacti.scalars import FieldSpec
from cacti.shuffle import MonomialOrder


def candidates(gens):
    flags = list(itertools.product([False, True], repeat=2))
    for paths_first, reverse in flags:
        yield MonomialOrder(paths_first=paths_first, reverse_words=reverse)
    for k in range(1, len(gens) + 1):
        for subset in itertools.combinations(gens, k):
            for (paths_first, reverse), cs, ds in itertools.product(flags, (1, -1), (1, -1)):
                yield MonomialOrder("count_first", list(subset), paths_first=paths_first,
                                    reverse_words=reverse, count_sign=cs, depth_sign=ds)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("preset")
    ap.add_argument("--coalgebra", default="point")
    ap.add_argument("--field", default="q")
    ap.add_argument("--probe-weight", type=int, default=3)
    ap.add_argument("--all", action="store_true", help="Keep going after the first hit.")
    a = ap.parse_args()
    p = P.operad_preset(a.preset, FieldSpec.parse(a.field), a.coalgebra)
    gens = [g.name for g in p.generators]
    hits = 0
    for order in candidates(gens):
        try:
            ok = GB.is_quadratic_gb(p, order, a.probe_weight)
        except GB.GroebnerError as e:
            print(f"{order!r}: error {e}")
            continue
        print(f"{order!r}: {'quadratic' if ok else '-'}")
        if ok:
            hits += 1
            if not a.all:
                break
    print(f"{hits} quadratic order(s) found")


if __name__ == "__main__":
    main()
