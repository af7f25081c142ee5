"""Group-ring matrices and rank-one local systems with Z/l holonomy."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CyclotomicNumber, is_prime
from .engine.modular import nullspace_mod_p
from .errors import InvalidComplexError, InvalidInputError, SizeLimitError
from .matrix import SparseMatrix
from .presentation import (FiniteGroup, GroupPresentation, Word, format_word, free_reduce,
                           parse_word)

DEFAULT_MAX_SYSTEMS = 100_000


class GroupRingElement:
    """A finite formal sum of group words with integer coefficients.

    Words are freely reduced but not reduced by the relators, so two
    elements equal in Z[pi] may compare unequal here.  Twisting and
    augmentation are the supported ways of evaluating them.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = free_reduce(w)
            acc[w] = acc.get(w, 0) + int(c)
        self.terms = {w: c for w, c in sorted(acc.items(), key=lambda t: (len(t[0]), t[0])) if c}
        self._hash = None

    @classmethod
    def _canonical(cls, terms: dict) -> "GroupRingElement":
        # terms already reduced, sorted and free of zeros
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, w: Sequence[int], coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(w): coeff})

    @classmethod
    def scalar(cls, n: int) -> "GroupRingElement":
        return cls({(): n})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._canonical({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = free_reduce(w1 + w2)
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(other)
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def in_group(self, G: FiniteGroup) -> dict[int, int]:
        """Image in Z[G] as {element: coefficient}."""
        out: dict[int, int] = {}
        for w, c in self.terms.items():
            g = G.eval_word(w)
            out[g] = out.get(g, 0) + c
        return {g: c for g, c in out.items() if c}

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_word(w, names)}" for w, c in self.terms.items())

    def __repr__(self):
        return f"GroupRingElement({self.terms!r})"


_GR_TERM = re.compile(r"^([+-]?\d+)\*(\S+)$")


def parse_group_ring_element(text: str, names: Sequence[str]) -> GroupRingElement:
    """Parse ``3*a.b^-1 + -1*1``; a bare word means coefficient 1."""
    text = text.strip()
    if text == "0":
        return GroupRingElement()
    terms = []
    for part in text.split("+"):
        part = part.strip()
        m = _GR_TERM.match(part)
        if m:
            terms.append((parse_word(m.group(2), names), int(m.group(1))))
        elif part:
            terms.append((parse_word(part, names), 1))
        else:
            raise InvalidInputError(f"empty term in group-ring entry {text!r}")
    return GroupRingElement(terms)


class GroupRingMatrix:
    """A matrix over Z[pi] on a fixed presentation, stored column-sparse."""

    def __init__(self, presentation: GroupPresentation, matrix: SparseMatrix):
        self.presentation = presentation
        self.matrix = matrix
        for c in matrix.cols:
            for v in c.values():
                if not isinstance(v, GroupRingElement):
                    raise InvalidInputError("group-ring matrix entries must be GroupRingElements")
                for w in v.terms:
                    if any(abs(x) > presentation.ngens for x in w):
                        raise InvalidInputError("group word uses an unknown generator")

    @classmethod
    def from_dense(cls, presentation: GroupPresentation, rows) -> "GroupRingMatrix":
        return cls(presentation, SparseMatrix.from_dense(rows))

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def augmentation(self) -> SparseMatrix:
        return self.matrix.map(lambda e: e.augmentation())

    def __matmul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.presentation != other.presentation:
            raise InvalidInputError("group-ring matrices live on different presentations")
        return GroupRingMatrix(self.presentation, self.matrix @ other.matrix)

    def __eq__(self, other):
        return (isinstance(other, GroupRingMatrix) and self.presentation == other.presentation
                and self.matrix == other.matrix)

    def __repr__(self):
        return f"GroupRingMatrix{self.shape}"


@dataclass(frozen=True)
class LocalSystem:
    """Holonomy exponents (mod l) of the presentation generators."""

    ell: int
    values: tuple[int, ...]
    presentation: GroupPresentation

    def __post_init__(self):
        if not is_prime(self.ell):
            raise InvalidInputError(f"local system modulus must be prime, got {self.ell}")
        if len(self.values) != self.presentation.ngens:
            raise InvalidInputError("one exponent per generator is required")
        vals = tuple(int(v) % self.ell for v in self.values)
        object.__setattr__(self, "values", vals)
        for r in self.presentation.relators:
            if self.exponent(r) != 0:
                raise InvalidInputError(
                    f"relator {self.presentation.format_word(r)} has holonomy "
                    f"z^{self.exponent(r)}, not 1")

    def exponent(self, word: Sequence[int]) -> int:
        e = 0
        for x in word:
            e += self.values[x - 1] if x > 0 else -self.values[-x - 1]
        return e % self.ell

    def __add__(self, other: "LocalSystem") -> "LocalSystem":
        if self.ell != other.ell or self.presentation != other.presentation:
            raise InvalidInputError("local systems on different data cannot be added")
        return LocalSystem(self.ell, tuple(a + b for a, b in zip(self.values, other.values)),
                           self.presentation)

    def format(self) -> str:
        body = " ".join(f"{n}:{v}" for n, v in zip(self.presentation.names, self.values))
        return f"l={self.ell}; {body}" if body else f"l={self.ell};"


def is_trivial(L: LocalSystem) -> bool:
    return not any(L.values)


def trivial_system(P: GroupPresentation, ell: int) -> LocalSystem:
    return LocalSystem(ell, (0,) * P.ngens, P)


def parse_local_system(text: str, P: GroupPresentation) -> LocalSystem:
    """Parse ``l=2; a:1 b:0``; generators not mentioned get exponent 0."""
    head, sep, body = text.partition(";")
    m = re.fullmatch(r"\s*l\s*=\s*(\d+)\s*", head)
    if not m:
        raise InvalidInputError(f"local system must start with 'l=<prime>;', got {text!r}")
    ell = int(m.group(1))
    values = [0] * P.ngens
    index = {n: i for i, n in enumerate(P.names)}
    seen = set()
    for tok in body.replace(",", " ").split():
        name, colon, val = tok.partition(":")
        if not colon or name not in index:
            raise InvalidInputError(f"bad local system entry {tok!r}")
        if name in seen:
            raise InvalidInputError(f"generator {name!r} assigned twice")
        seen.add(name)
        try:
            values[index[name]] = int(val)
        except ValueError:
            raise InvalidInputError(f"bad exponent in {tok!r}") from None
    return LocalSystem(ell, tuple(values), P)


def enumerate_local_systems(P: GroupPresentation, ell: int,
                            max_systems: int = DEFAULT_MAX_SYSTEMS) -> list[LocalSystem]:
    """All homomorphisms pi -> Z/l, in lexicographic order of exponent vectors.

    These are the solutions of the relator exponent-sum system over F_l.
    """
    if not is_prime(ell):
        raise InvalidInputError(f"l must be prime, got {ell}")
    basis = nullspace_mod_p(P.abelianization_matrix(), P.ngens, ell)
    if ell ** len(basis) > max_systems:
        raise SizeLimitError(f"{ell}^{len(basis)} local systems exceed the cap {max_systems}")
    vecs = set()
    for coeffs in itertools.product(range(ell), repeat=len(basis)):
        v = [0] * P.ngens
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    v[i] = (v[i] + c * x) % ell
        vecs.add(tuple(v))
    return [LocalSystem(ell, v, P) for v in sorted(vecs)]


def twist(M: GroupRingMatrix, L: LocalSystem) -> SparseMatrix:
    """Replace every word w by z^{L(w)}; the result has CyclotomicNumber entries."""
    if M.presentation != L.presentation:
        raise InvalidInputError("matrix and local system use different presentations")
    ell = L.ell
    cache: dict[GroupRingElement, CyclotomicNumber] = {}

    def ev(e: GroupRingElement) -> CyclotomicNumber:
        if e not in cache:
            poly = [0] * ell
            for w, c in e.terms.items():
                poly[L.exponent(w)] += c
            cache[e] = CyclotomicNumber.from_int_poly(ell, poly)
        return cache[e]

    return M.matrix.map(ev)


class TwistedChainComplex:
    """Boundary matrices over Q(zeta_l); ``boundaries[0]`` is the zero map out of C_0."""

    def __init__(self, ell: int, boundaries: Sequence[SparseMatrix], *, check: bool = True):
        if not is_prime(ell):
            raise InvalidInputError(f"l must be prime, got {ell}")
        self.ell = ell
        self.boundaries = list(boundaries) or [SparseMatrix(0, 0)]
        if self.boundaries[0].nrows != 0:
            raise InvalidInputError("the boundary out of C_0 must have zero rows")
        for k in range(1, len(self.boundaries)):
            if self.boundaries[k].nrows != self.boundaries[k - 1].ncols:
                raise InvalidInputError(f"boundary {k} has incompatible shape")
        if check:
            self.check()

    def check(self) -> None:
        for k in range(1, len(self.boundaries) - 1):
            if not (self.boundaries[k] @ self.boundaries[k + 1]).is_zero():
                raise InvalidComplexError(f"d_{k} d_{k + 1} != 0 over Q(zeta_{self.ell})")

    @property
    def dim(self) -> int:
        return len(self.boundaries) - 1

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.ncols for m in self.boundaries)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.sizes()))


class EquivariantComplex:
    """Free Z[pi]-chain complex: one basis element per cell of the base.

    ``boundaries[k]`` is a GroupRingMatrix C_k -> C_{k-1} in the basis of
    distinguished lifts; ``boundaries[0]`` has zero rows.  ``base`` is the
    underlying simplicial complex when there is one.
    """

    def __init__(self, presentation: GroupPresentation, boundaries: Sequence[GroupRingMatrix],
                 *, base=None, labels=None, name: str = ""):
        self.presentation = presentation
        self.boundaries = list(boundaries)
        if not self.boundaries or self.boundaries[0].shape[0] != 0:
            raise InvalidInputError("the boundary out of C_0 must have zero rows")
        for k, M in enumerate(self.boundaries):
            if M.presentation != presentation:
                raise InvalidInputError(f"boundary {k} is on a different presentation")
            if k and M.shape[0] != self.boundaries[k - 1].shape[1]:
                raise InvalidInputError(f"boundary {k} has incompatible shape")
        self.base = base
        self.labels = labels
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.boundaries) - 1

    def sizes(self) -> tuple[int, ...]:
        return tuple(M.shape[1] for M in self.boundaries)

    def augmentation(self):
        from .simplicial import IntegerChainComplex
        return IntegerChainComplex([M.augmentation() for M in self.boundaries], self.labels,
                                   check=False)

    def check_in_group(self, G: FiniteGroup) -> None:
        """Exact check of d d = 0 in Z[G]."""
        for k in range(1, self.dim):
            A = self.boundaries[k].matrix.map(lambda e: _ZG(e.in_group(G), G))
            B = self.boundaries[k + 1].matrix.map(lambda e: _ZG(e.in_group(G), G))
            if not (A @ B).is_zero():
                raise InvalidComplexError(f"d_{k} d_{k + 1} != 0 in Z[G]")


class _ZG:
    """Element of Z[G] for a concrete finite group (used for exact checks)."""

    __slots__ = ("c", "G")

    def __init__(self, c: dict, G: FiniteGroup):
        self.c = {g: v for g, v in c.items() if v}
        self.G = G

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        out = dict(self.c)
        for g, v in other.c.items():
            out[g] = out.get(g, 0) + v
        return _ZG(out, self.G)

    def __mul__(self, other):
        out: dict = {}
        mul = self.G.mul
        for g, a in self.c.items():
            for h, b in other.c.items():
                gh = mul(g, h)
                out[gh] = out.get(gh, 0) + a * b
        return _ZG(out, self.G)


def twisted_complex(C, L: LocalSystem, *, check: bool = True) -> TwistedChainComplex:
    """Twist an equivariant complex (or a covering complex) by L."""
    E = C.equivariant if hasattr(C, "equivariant") else C
    if E.presentation != L.presentation:
        raise InvalidInputError("local system is not on the complex's presentation")
    return TwistedChainComplex(L.ell, [twist(M, L) for M in E.boundaries], check=check)
