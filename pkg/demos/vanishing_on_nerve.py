"""Twisted bar homology of small abelian groups vanishes for nontrivial characters.

For chi(g) != 1 the chain c = (1 - chi(g))^-1 [g] has boundary [ ], and
multiplying by c (shuffle product) is a contracting homotopy.

    python demos/vanishing_on_nerve.py
"""

import random

from twistedhom.checks import contraction, vanishing_witness
from twistedhom.groups import BarChain, bar_chain_boundary, nerve_group, nontrivial_characters


def main():
    rng = random.Random(0)
    for inv, ell in [((2,), 2), ((3,), 3), ((2, 2), 2), ((5,), 5)]:
        G = nerve_group(inv)
        chi = nontrivial_characters(G, ell)[0]
        w = vanishing_witness(G, chi, 3)
        print(f"Z/{' x Z/'.join(map(str, inv))}, {chi.format()}")
        print(f"  witness coefficient {w.coefficient}, d c = [ ]: {w.bounds_unit}")
        print(f"  twisted Betti numbers, degrees 0..3: {w.betti}")
        x = BarChain(G, chi, 2, {(rng.randrange(1, G.order), rng.randrange(1, G.order)): 1})
        homotopy = bar_chain_boundary(contraction(w, x)) + contraction(w, bar_chain_boundary(x))
        print(f"  (d s + s d)(x) == x on a random 2-chain: {homotopy == x}")


if __name__ == "__main__":
    main()
