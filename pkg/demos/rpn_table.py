"""Twisted Betti numbers of RP^n with the sign local system.

The one-cell-per-degree model of RP^n has d_k = 1 + (-1)^k a over Z[Z/2].
Twisting by a -> -1 turns these into multiplication by 2 and 0 alternately.

    python demos/rpn_table.py
"""

from twistedhom.catalog import rpn_twisted
from twistedhom.engine.homology import betti_twisted, homology_integral
from twistedhom.local_systems import parse_local_system, twisted_complex


def main():
    print(f"{'n':>2}  {'integral homology':40s} twisted Betti (l=2, a:1)")
    for n in range(1, 9):
        E = rpn_twisted(n)
        sign = parse_local_system("l=2; a:1", E.presentation)
        z = homology_integral(E.augmentation())
        twisted = betti_twisted(twisted_complex(E, sign)).betti
        groups = ", ".join(z.group_string(k) for k in range(n + 1))
        print(f"{n:>2}  {groups:40s} {twisted}")


if __name__ == "__main__":
    main()
