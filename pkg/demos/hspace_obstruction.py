"""Search for rank-one local systems with nonzero twisted homology.

A closed manifold that is an H-space has acyclic twisted homology for every
nontrivial rank-one system.  A nonzero group is therefore an obstruction,
and the search below returns a certificate that can be re-verified.

    python demos/hspace_obstruction.py
"""

from twistedhom.catalog import load_builtin
from twistedhom.checks import ObstructionCertificate, hspace_obstruction, verify_certificate

NAMES = ["rp2", "klein", "sphere:2", "torus", "rp3", "rpn-twisted:4", "rpn-twisted:5"]


def main():
    for name in NAMES:
        b = load_builtin(name)
        X = b.simplicial if b.simplicial is not None else b.equivariant()
        res = hspace_obstruction(X, [2, 3])
        line = res.describe()
        if isinstance(res, ObstructionCertificate):
            line += f"  (re-verified: {verify_certificate(X, res)})"
        print(f"{name:15s} {line}")


if __name__ == "__main__":
    main()
