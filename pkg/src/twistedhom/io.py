"""Text formats for complexes.

Every file starts with a header line:

``simplicial facets``
    One simplex per line (space-separated vertex labels); the face closure
    is taken.
``simplicial complete``
    Every face must be listed; a missing face is reported by name.
``chain-complex``
    Blocks ``dim k rows r cols c`` followed by r lines of c integers,
    for k = 0 (optional, ``rows 0``), 1, 2, ...
``group-ring``
    ``generators a b ...`` and ``relator <word>`` lines, then blocks as for
    chain complexes whose rows hold c entries separated by ``|``, each entry
    like ``3*a.b^-1 + -1*1`` (``0`` for an empty sum).

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidInputError
from .local_systems import (EquivariantComplex, GroupRingMatrix, parse_group_ring_element)
from .matrix import SparseMatrix
from .presentation import GroupPresentation, format_word, parse_word
from .simplicial import IntegerChainComplex, SimplicialComplex, check_complex

HEADERS = ("simplicial facets", "simplicial complete", "chain-complex", "group-ring")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_complex(path: str | Path):
    """Read a complex file (format chosen by its header line)."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None
    return parse_text(text, source=str(path))


def parse_text(text: str, source: str = "<text>"):
    lines = list(_lines(text))
    if not lines:
        raise InvalidInputError(f"{source}: empty file (expected a header line)")
    n, header = lines[0]
    header = " ".join(header.split())
    body = lines[1:]
    if header == "simplicial facets":
        return _parse_simplicial(body, source, closure=True)
    if header == "simplicial complete":
        return _parse_simplicial(body, source, closure=False)
    if header == "chain-complex":
        return _parse_chain_complex(body, source)
    if header == "group-ring":
        return _parse_group_ring(body, source)
    raise InvalidInputError(f"{source}: line {n}: unknown header {header!r}; "
                            f"expected one of {', '.join(HEADERS)}")


def _parse_simplicial(body, source, closure):
    simplices = []
    for n, line in body:
        try:
            s = tuple(int(x) for x in line.split())
        except ValueError:
            raise InvalidInputError(f"{source}: line {n}: expected vertex indices, got {line!r}") \
                from None
        if len(set(s)) != len(s):
            raise InvalidInputError(f"{source}: line {n}: repeated vertex in {line!r}")
        if any(v < 0 for v in s):
            raise InvalidInputError(f"{source}: line {n}: negative vertex label")
        simplices.append(s)
    try:
        return SimplicialComplex(simplices, closure=closure)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{source}: {exc}") from None


def _blocks(body, source, parse_row):
    """Yield (k, SparseMatrix) for each ``dim k rows r cols c`` block."""
    i = 0
    out = []
    while i < len(body):
        n, line = body[i]
        parts = line.split()
        if len(parts) != 6 or parts[0] != "dim" or parts[2] != "rows" or parts[4] != "cols":
            raise InvalidInputError(f"{source}: line {n}: expected 'dim k rows r cols c'")
        try:
            k, r, c = int(parts[1]), int(parts[3]), int(parts[5])
        except ValueError:
            raise InvalidInputError(f"{source}: line {n}: non-integer block size") from None
        if r < 0 or c < 0:
            raise InvalidInputError(f"{source}: line {n}: negative block size")
        rows = []
        for j in range(r):
            if i + 1 + j >= len(body):
                raise InvalidInputError(f"{source}: line {n}: block ends after {j} of {r} rows")
            m, row_text = body[i + 1 + j]
            row = parse_row(row_text, m)
            if len(row) != c:
                raise InvalidInputError(f"{source}: line {m}: expected {c} entries, got {len(row)}")
            rows.append(row)
        cols = [dict() for _ in range(c)]
        for a, row in enumerate(rows):
            for b, v in enumerate(row):
                if v:
                    cols[b][a] = v
        out.append((k, n, SparseMatrix(r, c, cols)))
        i += 1 + r
    return out


def _assemble(blocks, source):
    mats = []
    expected = 0
    for k, n, M in blocks:
        if k == 0 and expected == 0:
            if M.nrows != 0:
                raise InvalidInputError(f"{source}: line {n}: the degree-0 block must have 0 rows")
            mats.append(M)
            expected = 1
            continue
        if expected == 0:
            mats.append(SparseMatrix(0, M.nrows))
            expected = 1
        if k != expected:
            raise InvalidInputError(f"{source}: line {n}: expected block for dim {expected}, got {k}")
        if M.nrows != mats[-1].ncols:
            raise InvalidInputError(f"{source}: line {n}: dim {k} has {M.nrows} rows but "
                                    f"C_{k - 1} has {mats[-1].ncols} cells")
        mats.append(M)
        expected += 1
    if not mats:
        raise InvalidInputError(f"{source}: no matrix blocks")
    return mats


def _int_row(text, n):
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise InvalidInputError(f"line {n}: expected integers, got {text!r}") from None


def _parse_chain_complex(body, source):
    try:
        mats = _assemble(_blocks(body, source, _int_row), source)
    except InvalidInputError as exc:
        msg = str(exc)
        raise InvalidInputError(msg if msg.startswith(source) else f"{source}: {msg}") from None
    C = IntegerChainComplex(mats, check=False)
    try:
        check_complex(C.boundaries)
    except InvalidInputError as exc:
        raise type(exc)(f"{source}: {exc}") from None
    return C


def _parse_group_ring(body, source):
    names: list[str] | None = None
    relators = []
    i = 0
    while i < len(body):
        n, line = body[i]
        word, _, rest = line.partition(" ")
        if word == "generators":
            if names is not None:
                raise InvalidInputError(f"{source}: line {n}: generators given twice")
            names = rest.split()
        elif word == "relator":
            if names is None:
                raise InvalidInputError(f"{source}: line {n}: relator before generators")
            try:
                relators.append(parse_word(rest, names))
            except InvalidInputError as exc:
                raise InvalidInputError(f"{source}: line {n}: {exc}") from None
        else:
            break
        i += 1
    if names is None:
        raise InvalidInputError(f"{source}: missing 'generators' line")
    try:
        P = GroupPresentation(len(names), tuple(relators), tuple(names))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{source}: {exc}") from None

    def row(text, m):
        try:
            return [parse_group_ring_element(e, names) for e in text.split("|")]
        except InvalidInputError as exc:
            raise InvalidInputError(f"{source}: line {m}: {exc}") from None

    mats = _assemble(_blocks(body[i:], source, row), source)
    return EquivariantComplex(P, [GroupRingMatrix(P, M) for M in mats], name=source)


# ---------------------------------------------------------------------------
# emitters (canonical forms; parsing them back is the identity)

def emit_simplicial(K: SimplicialComplex, mode: str = "facets") -> str:
    if mode == "facets":
        simplices = sorted(K.facets())
    elif mode == "complete":
        simplices = [s for c in K.cells for s in c]
    else:
        raise InvalidInputError(f"unknown simplicial mode {mode!r}")
    return "\n".join([f"simplicial {mode}"] + [" ".join(map(str, s)) for s in simplices]) + "\n"


def _emit_blocks(mats, fmt):
    out = []
    for k, M in enumerate(mats):
        out.append(f"dim {k} rows {M.nrows} cols {M.ncols}")
        dense = M.to_dense(zero=None)
        for row in dense:
            out.append(fmt(row))
    return out


def emit_chain_complex(C: IntegerChainComplex) -> str:
    lines = ["chain-complex"]
    lines += _emit_blocks(C.boundaries, lambda row: " ".join(str(v or 0) for v in row))
    return "\n".join(lines) + "\n"


def emit_group_ring(E: EquivariantComplex) -> str:
    P = E.presentation
    lines = ["group-ring", "generators " + " ".join(P.names)]
    lines += [f"relator {format_word(r, P.names)}" for r in P.relators]
    lines += _emit_blocks([M.matrix for M in E.boundaries],
                          lambda row: " | ".join(v.format(P.names) if v else "0" for v in row))
    return "\n".join(lines) + "\n"
