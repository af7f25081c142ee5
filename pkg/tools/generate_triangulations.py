"""Regenerate the vertex-minimal triangulations shipped in src/twistedhom/data.

Run from the repository root:

    python tools/generate_triangulations.py

RP^3 starts from the antipodal quotient of the barycentric subdivision of the
boundary of the 4-dimensional cross-polytope (40 vertices); the Klein bottle
starts from a 4 x 4 grid with a twisted identification.  Both are shrunk by
randomized bistellar moves until the target vertex count is reached.  The
output is checked (manifold links, homology, fundamental group order) by the
test suite, not here.
"""

from __future__ import annotations

import itertools
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "twistedhom" / "data"


def cross_polytope_rp3() -> list[tuple[int, ...]]:
    # vertices of the 4-cross-polytope: +-e_i, encoded as (i, s)
    verts = [(i, s) for i in range(4) for s in (1, -1)]
    faces = []
    for k in range(1, 5):
        for axes in itertools.combinations(range(4), k):
            for signs in itertools.product((1, -1), repeat=k):
                faces.append(frozenset(zip(axes, signs)))
    del verts
    # flags of faces = simplices of the barycentric subdivision; keep maximal ones
    top = [f for f in faces if len(f) == 4]
    flags = []
    for t in top:
        for perm in itertools.permutations(sorted(t)):
            flags.append(tuple(frozenset(perm[:j]) for j in range(1, 5)))

    def antipode(f):
        return frozenset((i, -s) for i, s in f)

    labels: dict = {}
    for f in faces:
        key = min(sorted(f), sorted(antipode(f)))
        rep = frozenset(key)
        if rep not in labels:
            labels[rep] = len(labels)

    def lab(f):
        a = antipode(f)
        return labels[f] if f in labels else labels[a]

    quotient = set()
    for fl in flags:
        quotient.add(tuple(sorted(lab(f) for f in fl)))
    return sorted(quotient)


def klein_grid(m: int = 4, n: int = 4) -> list[tuple[int, ...]]:
    def v(i, j):
        # (i, j + n) ~ (i, j);  (i + m, j) ~ (0.., n - 1 - j) reflection
        flips = i // m
        i %= m
        j %= n
        if flips % 2:
            j = (n - 1 - j) % n
        return i * n + j

    tris = set()
    for i in range(m):
        for j in range(n):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            tris.add(tuple(sorted((a, b, d))))
            tris.add(tuple(sorted((a, c, d))))
    return sorted(tris)


def faces_of(facets, k):
    out = set()
    for f in facets:
        out.update(itertools.combinations(f, k + 1))
    return out


def reduce_manifold(facets, target, dim, seed=0, max_steps=200000):
    """Randomized bistellar reduction of a closed dim-manifold (dim 2 or 3)."""
    rng = random.Random(seed)
    F = set(tuple(sorted(f)) for f in facets)
    steps = 0

    def vertices():
        return {v for f in F for v in f}

    while len(vertices()) > target and steps < max_steps:
        steps += 1
        # vertex removal when the link is the boundary of a simplex
        star: dict = {}
        for f in F:
            for v in f:
                star.setdefault(v, []).append(f)
        removed = False
        for v, fs in sorted(star.items(), key=lambda t: len(t[1])):
            if len(fs) == dim + 1:
                link = sorted({u for f in fs for u in f if u != v})
                new = tuple(link)
                if len(link) == dim + 1 and new not in F:
                    for f in fs:
                        F.discard(f)
                    F.add(new)
                    removed = True
                    break
        if removed:
            continue
        edges = faces_of(F, 1)
        if dim == 2:
            # edge flip: triangles abc, abd -> acd, bcd (cd not an edge)
            ridge: dict = {}
            for f in F:
                for e in itertools.combinations(f, 2):
                    ridge.setdefault(e, []).append(f)
            cand = []
            for e, fs in ridge.items():
                if len(fs) != 2:
                    continue
                c = [u for u in fs[0] if u not in e][0]
                d = [u for u in fs[1] if u not in e][0]
                if tuple(sorted((c, d))) not in edges:
                    cand.append((e, fs, c, d))
            e, fs, c, d = rng.choice(cand)
            for f in fs:
                F.discard(f)
            F.add(tuple(sorted((e[0], c, d))))
            F.add(tuple(sorted((e[1], c, d))))
        else:
            ridge = {}
            for f in F:
                for t in itertools.combinations(f, 3):
                    ridge.setdefault(t, []).append(f)
            around: dict = {}
            for f in F:
                for e in itertools.combinations(f, 2):
                    around.setdefault(e, []).append(f)
            tris = faces_of(F, 2)
            # prefer 3-2 moves (edge of degree 3 whose link triangle is absent)
            moves32 = []
            for e, fs in around.items():
                if len(fs) == 3:
                    link = tuple(sorted({u for f in fs for u in f if u not in e}))
                    if len(link) == 3 and link not in tris:
                        moves32.append((e, fs, link))
            if moves32 and rng.random() < 0.7:
                e, fs, link = rng.choice(moves32)
                for f in fs:
                    F.discard(f)
                F.add(tuple(sorted(link + (e[0],))))
                F.add(tuple(sorted(link + (e[1],))))
                continue
            cand = []
            for t, fs in ridge.items():
                if len(fs) != 2:
                    continue
                d = [u for u in fs[0] if u not in t][0]
                e2 = [u for u in fs[1] if u not in t][0]
                if tuple(sorted((d, e2))) not in edges:
                    cand.append((t, fs, d, e2))
            t, fs, d, e2 = rng.choice(cand)
            for f in fs:
                F.discard(f)
            for pair in itertools.combinations(t, 2):
                F.add(tuple(sorted(pair + (d, e2))))
    return sorted(F)


def relabel(facets):
    vs = sorted({v for f in facets for v in f})
    m = {v: i + 1 for i, v in enumerate(vs)}
    return sorted(tuple(sorted(m[v] for v in f)) for f in facets)


def write(name, facets, comment):
    lines = ["simplicial facets", f"# {comment}"]
    lines += [" ".join(map(str, f)) for f in facets]
    (DATA / name).write_text("\n".join(lines) + "\n")


def main(argv=None):
    DATA.mkdir(parents=True, exist_ok=True)
    for seed in range(200):
        rp3 = reduce_manifold(cross_polytope_rp3(), 11, 3, seed=seed)
        if len({v for f in rp3 for v in f}) == 11:
            break
    else:
        sys.exit("no 11-vertex RP^3 found")
    rp3 = relabel(rp3)
    write("rp3_11.txt", rp3, f"RP^3, 11 vertices, {len(rp3)} tetrahedra (bistellar seed {seed})")
    for seed in range(200):
        kb = reduce_manifold(klein_grid(), 8, 2, seed=seed)
        if len({v for f in kb for v in f}) == 8:
            break
    else:
        sys.exit("no 8-vertex Klein bottle found")
    kb = relabel(kb)
    write("klein_8.txt", kb, f"Klein bottle, 8 vertices, {len(kb)} triangles (bistellar seed {seed})")
    print("wrote", DATA)


if __name__ == "__main__":
    main()
