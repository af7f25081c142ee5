"""Group presentations, the edge-path group, and Todd-Coxeter enumeration.

A word is a tuple of nonzero integers: ``i + 1`` stands for generator ``i``
and ``-(i + 1)`` for its inverse.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceededError, InvalidInputError
from .simplicial import SimplicialComplex, spanning_tree

Word = tuple[int, ...]

DEFAULT_COSET_BUDGET = 10_000


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise InvalidInputError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def default_names(m: int) -> list[str]:
    if m <= 26:
        return [chr(ord("a") + i) for i in range(m)]
    return [f"x{i}" for i in range(m)]


@dataclass(frozen=True)
class GroupPresentation:
    ngens: int
    relators: tuple[Word, ...] = ()
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.ngens:
                    raise InvalidInputError(f"relator {r!r} uses an unknown generator")
            rels.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))
        names = tuple(self.names) or tuple(default_names(self.ngens))
        if len(names) != self.ngens or len(set(names)) != self.ngens:
            raise InvalidInputError("generator names must be distinct, one per generator")
        object.__setattr__(self, "names", names)

    def abelianization_matrix(self) -> list[list[int]]:
        """Exponent-sum matrix: one row per relator, one column per generator."""
        rows = []
        for r in self.relators:
            row = [0] * self.ngens
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def permuted(self, perm: Sequence[int]) -> "GroupPresentation":
        """Relabel generator i as perm[i]."""
        def move(x):
            g = perm[abs(x) - 1] + 1
            return g if x > 0 else -g
        names = [""] * self.ngens
        for i, p in enumerate(perm):
            names[p] = self.names[i]
        return GroupPresentation(self.ngens, tuple(tuple(move(x) for x in r) for r in self.relators),
                                 tuple(names))

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word, self.names)


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    """Dot-joined generator powers, ``1`` for the empty word."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = (j - i) * (1 if word[i] > 0 else -1)
        name = names[abs(word[i]) - 1]
        parts.append(name if n == 1 else f"{name}^{n}")
        i = j
    return ".".join(parts)


def parse_word(text: str, names: Sequence[str]) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    lookup = {n: i + 1 for i, n in enumerate(names)}
    out: list[int] = []
    for part in text.split("."):
        base, _, power = part.partition("^")
        if base not in lookup:
            raise InvalidInputError(f"unknown generator {base!r} in word {text!r}")
        try:
            n = int(power) if power else 1
        except ValueError:
            raise InvalidInputError(f"bad exponent in word {text!r}") from None
        g = lookup[base]
        out.extend([g if n > 0 else -g] * abs(n))
    return free_reduce(out)


def product_presentation(P: GroupPresentation, Q: GroupPresentation) -> GroupPresentation:
    """Direct product: both relator sets plus commutators [a, b]."""
    m = P.ngens
    shifted = tuple(tuple(x + m if x > 0 else x - m for x in r) for r in Q.relators)
    comms = tuple((a, b + m, -a, -(b + m)) for a in range(1, m + 1) for b in range(1, Q.ngens + 1))
    names = list(P.names)
    for n in Q.names:
        while n in names:
            n = n + "'"
        names.append(n)
    return GroupPresentation(m + Q.ngens, P.relators + shifted + comms, tuple(names))


# ---------------------------------------------------------------------------
# edge-path group

@dataclass(frozen=True)
class EdgePathData:
    """Bookkeeping behind :func:`fundamental_group`."""

    basepoint: int
    tree: frozenset
    edge_word: dict  # edge (u, v), u < v -> word of the loop through it


def edge_path_data(K: SimplicialComplex, basepoint: int | None = None) -> tuple[GroupPresentation, EdgePathData]:
    if not K.vertices:
        raise InvalidInputError("the empty complex has no fundamental group")
    if basepoint is None:
        basepoint = K.vertices[0]
    if (basepoint,) not in K.index[0]:
        raise InvalidInputError(f"basepoint {basepoint} is not a vertex")
    tree = spanning_tree(K, basepoint)
    edge_word: dict = {}
    names = []
    for e in K.edges():
        if e in tree:
            edge_word[e] = ()
        else:
            names.append(f"e{e[0]}_{e[1]}")
            edge_word[e] = (len(names),)
    relators = []
    if K.dim >= 2:
        for a, b, c in K.cells[2]:
            relators.append(edge_word[(a, b)] + edge_word[(b, c)] + invert_word(edge_word[(a, c)]))
    P = GroupPresentation(len(names), tuple(relators), tuple(names))
    return P, EdgePathData(basepoint, frozenset(tree), edge_word)


def fundamental_group(K: SimplicialComplex, basepoint: int | None = None) -> GroupPresentation:
    """Edge-path presentation: non-tree edges generate, 2-simplices relate.

    The spanning tree is a breadth-first tree from the basepoint with the
    lowest vertex visited first.  There is one relator per 2-simplex (some
    may reduce to the empty word).
    """
    return edge_path_data(K, basepoint)[0]


# ---------------------------------------------------------------------------
# Todd-Coxeter

@dataclass(frozen=True)
class CosetTable:
    """Right action of the generators on the cosets of the trivial subgroup."""

    order: int
    action: tuple[tuple[int, ...], ...]  # action[g][c] = c . g
    presentation: GroupPresentation

    def act(self, coset: int, word: Sequence[int]) -> int:
        c = coset
        for x in word:
            if x > 0:
                c = self.action[x - 1][c]
            else:
                c = self._inverse_action(-x - 1)[c]
        return c

    def _inverse_action(self, g: int) -> tuple[int, ...]:
        cache = self.__dict__.setdefault("_inv_cache", {})
        if g not in cache:
            perm = self.action[g]
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            cache[g] = tuple(inv)
        return cache[g]

    def relators_hold(self) -> bool:
        return all(self.act(c, r) == c for r in self.presentation.relators for c in range(self.order))


def _letter(x: int) -> int:
    """Word letter -> table column: generator i is 2i, its inverse 2i + 1."""
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def todd_coxeter(P: GroupPresentation, budget: int = DEFAULT_COSET_BUDGET) -> CosetTable:
    """Felsch-style enumeration of the cosets of the trivial subgroup.

    Definitions fill the first undefined table entry (cosets in order,
    columns ``g0, g0^-1, g1, ...``); after each definition every cyclic
    conjugate of every relator that starts with the new letter is scanned
    at the affected cosets, recording deductions and processing
    coincidences.  At most ``budget`` cosets are ever defined.
    """
    if budget < 1:
        raise InvalidInputError("coset budget must be positive")
    ncols = 2 * P.ngens
    rels = [tuple(_letter(x) for x in r) for r in P.relators if r]
    # cyclic conjugates of relators and their inverses, grouped by first letter
    by_first: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    seen = set()
    for r in rels:
        for w in (r, tuple(x ^ 1 for x in reversed(r))):
            for i in range(len(w)):
                rot = w[i:] + w[:i]
                if rot not in seen:
                    seen.add(rot)
                    by_first[rot[0]].append(rot)

    table: list[list[int]] = [[-1] * ncols]
    parent = [0]
    deductions: list[tuple[int, int]] = []

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f < 0:
                    continue
                xi = x ^ 1
                if table[f][xi] == e:
                    table[f][xi] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][xi] >= 0:
                    merge(e1, table[f1][xi], queue)
                else:
                    table[e1][x] = f1
                    table[f1][xi] = e1
                    deductions.append((e1, x))

    def scan(c: int, w: tuple[int, ...]) -> None:
        f, i, n = c, 0, len(w)
        while i < n and table[f][w[i]] >= 0:
            f = table[f][w[i]]
            i += 1
        if i == n:
            if f != c:
                coincidence(f, c)
            return
        b, j = c, n - 1
        while j >= i and table[b][w[j] ^ 1] >= 0:
            b = table[b][w[j] ^ 1]
            j -= 1
        if j < i:
            coincidence(f, b)
        elif j == i:
            table[f][w[i]] = b
            table[b][w[i] ^ 1] = f
            deductions.append((f, w[i]))

    def process() -> None:
        while deductions:
            c, x = deductions.pop()
            if parent[c] != c:
                continue
            for w in by_first[x]:
                if parent[c] != c:
                    break
                scan(c, w)
            d = table[c][x]
            if d >= 0 and parent[d] == d:
                for w in by_first[x ^ 1]:
                    if parent[d] != d:
                        break
                    scan(d, w)

    # relators of length one (and other short ones) must also hold at coset 0
    for w in rels:
        scan(0, w)
    process()
    c = 0
    while c < len(table):
        if parent[c] == c:
            for x in range(ncols):
                if parent[c] != c:
                    break
                if table[c][x] < 0:
                    if len(table) >= budget:
                        raise BudgetExceededError(
                            f"coset enumeration exceeded budget {budget}: "
                            "group possibly infinite or too large")
                    n = len(table)
                    table.append([-1] * ncols)
                    parent.append(n)
                    table[c][x] = n
                    table[n][x ^ 1] = c
                    deductions.append((c, x))
                    process()
        c += 1

    # standardize: renumber live cosets in breadth-first order from coset 0
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ncols):
            d = rep(table[c][x])
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    action = []
    for g in range(P.ngens):
        perm = [0] * len(order)
        for c, k in order.items():
            perm[k] = order[rep(table[c][2 * g])]
        action.append(tuple(perm))
    T = CosetTable(len(order), tuple(action), P)
    if not T.relators_hold():
        raise AssertionError("coset table does not satisfy the relators")
    return T


# ---------------------------------------------------------------------------
# finite groups

class FiniteGroup:
    """A finite group given by its multiplication table; element 0 is e.

    ``words`` (optional) gives a representative word for each element in
    terms of a presentation, and ``gen_images`` the elements of the
    presentation generators.
    """

    def __init__(self, table: Sequence[Sequence[int]], *, words: Sequence[Word] | None = None,
                 gen_images: Sequence[int] | None = None, labels: Sequence | None = None,
                 presentation: GroupPresentation | None = None):
        n = len(table)
        self.order = n
        self.mul_table = [list(r) for r in table]
        if any(len(r) != n for r in self.mul_table):
            raise InvalidInputError("multiplication table must be square")
        if any(self.mul_table[0][g] != g or self.mul_table[g][0] != g for g in range(n)):
            raise InvalidInputError("element 0 must be the identity")
        for r in self.mul_table:
            if sorted(r) != list(range(n)):
                raise InvalidInputError("multiplication table rows must be permutations")
        self.inv = [0] * n
        for g in range(n):
            self.inv[g] = self.mul_table[g].index(0)
        self.words = list(words) if words is not None else None
        self.gen_images = list(gen_images) if gen_images is not None else None
        self.labels = list(labels) if labels is not None else list(range(n))
        self.presentation = presentation

    def mul(self, g: int, h: int) -> int:
        return self.mul_table[g][h]

    def is_abelian(self) -> bool:
        t = self.mul_table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(g))

    def check_associative(self) -> bool:
        t = self.mul_table
        r = range(self.order)
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def eval_word(self, word: Sequence[int]) -> int:
        if self.gen_images is None:
            raise InvalidInputError("group has no generator images")
        g = 0
        for x in word:
            h = self.gen_images[abs(x) - 1]
            g = self.mul_table[g][h if x > 0 else self.inv[h]]
        return g

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def group_from_coset_table(T: CosetTable) -> FiniteGroup:
    """Elements are cosets; coset i is the element g with 0 . g = i."""
    n = T.order
    P = T.presentation
    words: list[Word | None] = [None] * n
    words[0] = ()
    queue = deque([0])
    letters = [x for g in range(1, P.ngens + 1) for x in (g, -g)]
    while queue:
        c = queue.popleft()
        for x in letters:
            d = T.act(c, (x,))
            if words[d] is None:
                words[d] = words[c] + (x,)
                queue.append(d)
    table = [[T.act(i, words[j]) for j in range(n)] for i in range(n)]
    gen_images = [T.action[g][0] for g in range(P.ngens)]
    return FiniteGroup(table, words=words, gen_images=gen_images, presentation=P)


def abelian_group(invariants: Sequence[int]) -> FiniteGroup:
    """Z/n1 x ... x Z/nk; elements are exponent tuples in lexicographic order."""
    invariants = [int(n) for n in invariants]
    if any(n < 1 for n in invariants):
        raise InvalidInputError("invariant factors must be positive")
    elems = [()]
    for n in invariants:
        elems = [e + (i,) for e in elems for i in range(n)]
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple((a + b) % n for a, b, n in zip(x, y, invariants))] for y in elems]
             for x in elems]
    m = len(invariants)
    rels = [tuple([i + 1] * n) for i, n in enumerate(invariants)]
    rels += [(i + 1, j + 1, -(i + 1), -(j + 1)) for i in range(m) for j in range(i + 1, m)]
    P = GroupPresentation(m, tuple(rels))
    words = [tuple(x for i, k in enumerate(e) for x in [i + 1] * k) for e in elems]
    gen_images = [index[tuple(1 % n if j == i else 0 for j, n in enumerate(invariants))]
                  for i in range(m)]
    return FiniteGroup(table, words=words, gen_images=gen_images, labels=elems, presentation=P)
