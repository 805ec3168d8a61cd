"""Print dimension tables for the built-in operads.

    python3 scripts/dims_tables.py [--max-arity 5] [--field q]
"""

import argparse

from cacti import fdl as FD
from cacti import groebner as GB
from cacti import presets as P
from cacti.scalars import FieldSpec

SIMPLE = ("com", "lie", "perm", "prelie", "zinb", "leib", "as", "postlie", "comtrias", "ctd", "ctd!")
COALGEBRAS = ("point", "discrete(2)", "circle", "wedge_of_circles(2)", "discrete(3)")


def row(name, p, n):
    d = GB.operad_dims(p, n, P.certificate_order(name, p))
    return f"{name:<10} " + " ".join(f"{x:>8}" for x in d)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-arity", type=int, default=5)
    ap.add_argument("--field", default="q")
    a = ap.parse_args()
    f = FieldSpec.parse(a.field)
    n = a.max_arity

    print(f"field {f.name}")
    for name in SIMPLE:
        print(row(name, P.operad_preset(name, f), n))
    for c in COALGEBRAS:
        print(f"\ncoalgebra {c}")
        dims = {}
        for name in ("nap", "nap!", "bcact", "bcact!"):
            p = P.operad_preset(name, f, c)
            dims[name] = GB.operad_dims(p, n, P.certificate_order(name, p))
            print(row(name, p, n))
        ok = FD.check_inversion(dims["bcact"], dims["bcact!"], n)
        print(f"inversion bcact/bcact!: {'holds' if ok else 'FAILS'}")


if __name__ == "__main__":
    main()
