"""Universal covers, the Hurewicz map and the low-degree Cartan-Leray terms.

    python demos/covers_and_hopf.py
"""

from twistedhom.catalog import load_builtin
from twistedhom.checks import (cartan_leray_report, condition_c_check, finite_cover,
                               hopf_h2_group, hurewicz_nonzero, loop_census)


def main():
    for name in ["sphere:2", "rp2", "rp3", "product:rp2*rp2"]:
        b = load_builtin(name)
        X = b.simplicial if b.simplicial is not None else b.equivariant()
        C = finite_cover(X)
        print(f"{name}: |pi_1| = {C.order}, cover cells {C.chain_complex.sizes()}, "
              f"chi(cover) = {C.euler_characteristic()}")
        hur = hurewicz_nonzero(X)
        print(f"  pi_2 = {hur.pi2}, H_2 = {hur.h2}, Hurewicz nonzero: {hur.nonzero}, "
              f"coker = {hopf_h2_group(X)}")
        cl = cartan_leray_report(X, 2)
        print(f"  l=2 dims H2(G) H2(M) H2inv H3(G) H3(M) = {cl.dims}, "
              f"rank pi* = {cl.rank_pi_star}, checks: {cl.verdict}")
        if b.simplicial is not None:
            cc = condition_c_check(X, 2)
            census = loop_census(X, 2)
            print(f"  condition (C): {cc.verdict}; census (a, b) = "
                  f"({census.invariant_h2}, {census.h1})")


if __name__ == "__main__":
    main()
