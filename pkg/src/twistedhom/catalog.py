"""Builtin example spaces, addressed by name.

Names: ``point``, ``empty``, ``circle``, ``sphere:n``, ``rp2``, ``rp3``,
``torus``, ``klein`` (or ``klein-bottle``), ``rpn-twisted:n``,
``nerve:<invariant factors>:<N>`` (e.g. ``nerve:3,3:4``) and
``product:<a>*<b>`` (``product:<a>,<b>`` also works when unambiguous).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Callable

from .cover import edge_path_complex, equivariant_product
from .errors import InvalidInputError
from .groups import nerve_complex, nerve_group
from .local_systems import EquivariantComplex, GroupRingElement, GroupRingMatrix
from .matrix import SparseMatrix
from .presentation import GroupPresentation
from .simplicial import IntegerChainComplex, SimplicialComplex, boundary_matrices, tensor_complex

DATA_FILES = {"rp2": "rp2_6.txt", "rp3": "rp3_11.txt", "torus": "torus_7.txt",
              "klein": "klein_8.txt"}

DESCRIPTIONS = [
    ("point", "a single vertex"),
    ("empty", "the empty complex"),
    ("circle", "one vertex and one loop, d = a - 1"),
    ("sphere:n", "boundary of the (n+1)-simplex"),
    ("rp2", "6-vertex real projective plane"),
    ("rp3", "11-vertex real projective 3-space"),
    ("torus", "7-vertex torus"),
    ("klein", "8-vertex Klein bottle"),
    ("rpn-twisted:n", "one cell per degree over <a | a^2>, d_k = 1 + (-1)^k a"),
    ("nerve:G:N", "normalized bar complex of Z/n1 x ... up to degree N"),
    ("product:A*B", "cellular product of two entries"),
]


@dataclass
class Builtin:
    """A named example; ``simplicial`` is set for simplicial entries."""

    name: str
    simplicial: SimplicialComplex | None = None
    _equivariant: Callable[[], EquivariantComplex] | None = field(default=None, repr=False)
    _integer: Callable[[], IntegerChainComplex] | None = field(default=None, repr=False)

    def equivariant(self) -> EquivariantComplex:
        """The free Z[pi_1]-model (edge-path model for simplicial entries)."""
        cached = getattr(self, "_eq_cache", None)
        if cached is not None:
            return cached
        if self._equivariant is not None:
            E = self._equivariant()
        elif self.simplicial is not None:
            E = edge_path_complex(self.simplicial)
        else:
            raise InvalidInputError(f"{self.name} has no fundamental group model")
        if not E.name:
            E.name = self.name
        self._eq_cache = E
        return E

    def integer_complex(self) -> IntegerChainComplex:
        if self.simplicial is not None:
            return boundary_matrices(self.simplicial)
        if self._integer is not None:
            return self._integer()
        return self.equivariant().augmentation()


def read_data_file(filename: str) -> SimplicialComplex:
    from .io import parse_text
    text = (resources.files("twistedhom") / "data" / filename).read_text(encoding="utf-8")
    return parse_text(text, source=filename)


def sphere(n: int) -> SimplicialComplex:
    if n < 0:
        raise InvalidInputError("sphere dimension must be non-negative")
    return SimplicialComplex(combinations(range(n + 2), n + 1))


def rpn_twisted(n: int) -> EquivariantComplex:
    """RP^n with one cell per degree: d_k = 1 + (-1)^k a over Z[a | a^2]."""
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    P = GroupPresentation(1, ((1, 1),), ("a",))
    a = GroupRingElement.word((1,))
    one = GroupRingElement.scalar(1)
    mats = [GroupRingMatrix(P, SparseMatrix(0, 1))]
    for k in range(1, n + 1):
        entry = one + a if k % 2 == 0 else one - a
        mats.append(GroupRingMatrix(P, SparseMatrix(1, 1, [{0: entry}])))
    labels = [[f"e{k}"] for k in range(n + 1)]
    return EquivariantComplex(P, mats, labels=labels, name=f"rpn-twisted:{n}")


def circle() -> EquivariantComplex:
    P = GroupPresentation(1, (), ("a",))
    d1 = GroupRingElement.word((1,)) - GroupRingElement.scalar(1)
    mats = [GroupRingMatrix(P, SparseMatrix(0, 1)), GroupRingMatrix(P, SparseMatrix(1, 1, [{0: d1}]))]
    return EquivariantComplex(P, mats, labels=[["v"], ["a"]], name="circle")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidInputError(f"bad {what} {text!r}") from None


def _invariants(text: str) -> list[int]:
    inv = [_int(x, "invariant factor") for x in text.replace("x", ",").split(",") if x]
    if not inv or any(n < 2 for n in inv):
        raise InvalidInputError(f"invariant factors must be >= 2, got {text!r}")
    return inv


def load_builtin(name: str) -> Builtin:
    """Resolve a builtin name; raises InvalidInputError for unknown names."""
    name = name.strip()
    head, _, arg = name.partition(":")
    if name == "point":
        return Builtin(name, SimplicialComplex([(0,)]))
    if name == "empty":
        return Builtin(name, SimplicialComplex([]))
    if name == "circle":
        return Builtin(name, _equivariant=circle)
    if head == "sphere":
        return Builtin(name, sphere(_int(arg, "sphere dimension")))
    if name in ("klein-bottle",):
        name = "klein"
    if name in DATA_FILES:
        return Builtin(name, _load_data(name))
    if head == "rpn-twisted":
        n = _int(arg, "dimension")
        return Builtin(name, _equivariant=lambda: rpn_twisted(n))
    if head == "nerve":
        inv_text, _, n_text = arg.partition(":")
        inv = _invariants(inv_text)
        N = _int(n_text, "degree") if n_text else 3
        G = nerve_group(inv)
        return Builtin(name, _equivariant=lambda: nerve_complex(G, N))
    if head == "product":
        a, b = _split_product(arg)
        return Builtin(name,
                       _equivariant=lambda: equivariant_product(a.equivariant(), b.equivariant()),
                       _integer=lambda: tensor_complex(a.integer_complex(), b.integer_complex()))
    raise InvalidInputError(f"unknown builtin {name!r}; see the 'catalog' subcommand")


@lru_cache(maxsize=None)
def _load_data(name: str) -> SimplicialComplex:
    return read_data_file(DATA_FILES[name])


def _split_product(arg: str) -> tuple[Builtin, Builtin]:
    if "*" in arg:
        a, _, b = arg.partition("*")
        return load_builtin(a), load_builtin(b)
    for i, ch in enumerate(arg):
        if ch == ",":
            try:
                return load_builtin(arg[:i]), load_builtin(arg[i + 1:])
            except InvalidInputError:
                continue
    raise InvalidInputError(f"cannot split product factors in {arg!r}")


CATALOG_EXAMPLES = ["point", "empty", "circle", "sphere:1", "sphere:2", "sphere:3", "rp2", "rp3",
                    "torus", "klein", "rpn-twisted:1", "rpn-twisted:2", "rpn-twisted:3",
                    "rpn-twisted:4", "nerve:2:3", "nerve:3:3", "nerve:2,2:3",
                    "product:rp2*rp2", "product:circle*circle"]
