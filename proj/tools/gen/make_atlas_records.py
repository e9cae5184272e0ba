#!/usr/bin/env python3
"""Regenerates the matrix-derived atlas records (PSL3_3, Sp6_2).

PSL(3,3) acts on the 13 points of the projective plane over GF(3); Sp(6,2)
acts on the 63 nonzero vectors of GF(2)^6. Generators are linear maps; the
permutations are written in the atlas file format with 1-based points.
"""
import itertools
import sys
from pathlib import Path


def cycles(images):
    seen, out = set(), []
    for i in range(len(images)):
        if i in seen or images[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = images[j]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def apply(mat, v, p):
    n = len(v)
    return tuple(sum(mat[i][j] * v[j] for j in range(n)) % p for i in range(n))


def normalize(v, p):
    for x in v:
        if x:
            inv = pow(x, p - 2, p)
            return tuple((y * inv) % p for y in v)
    return v


def psl3_3():
    p = 3
    pts = sorted({normalize(v, p) for v in itertools.product(range(p), repeat=3) if any(v)})
    index = {v: i for i, v in enumerate(pts)}
    mats = [
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],  # transvection
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],  # coordinate cycle
    ]
    gens = []
    for m in mats:
        gens.append([index[normalize(apply(m, v, p), p)] for v in pts])
    return len(pts), gens


def sp6_2():
    p = 2
    vecs = [v for v in itertools.product(range(2), repeat=6) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}

    def form(x, y):
        # symplectic form with hyperbolic pairs (0,3), (1,4), (2,5)
        return sum(x[i] * y[i + 3] + x[i + 3] * y[i] for i in range(3)) % 2

    def transvection(w):
        return [index[tuple((v[i] + form(v, w) * w[i]) % 2 for i in range(6))] for v in vecs]

    # the transvections of this chain of vectors generate Sp(6,2)
    chain = [
        (1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0), (1, 1, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0), (0, 1, 1, 0, 0, 0),
        (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1),
    ]
    gens = [transvection(w) for w in chain]
    return len(vecs), gens


def write(path, name, degree, order, provenance, gens):
    lines = [f"# {name}", f"name {name}", f"degree {degree}", f"order {order}",
             f"provenance {provenance}"]
    lines += [f"gen {cycles(g)}" for g in gens]
    Path(path).write_text("\n".join(lines) + "\n")


def main(outdir):
    from sympy.combinatorics import Permutation, PermutationGroup
    for name, builder, order, prov in [
        ("PSL3_3", psl3_3, 5616,
         "action of SL(3,3) on the 13 points of PG(2,3), generated by a transvection and the coordinate 3-cycle"),
        ("Sp6_2", sp6_2, 1451520,
         "action of Sp(6,2) on the 63 nonzero vectors of GF(2)^6, generated by symplectic transvections"),
    ]:
        degree, gens = builder()
        got = PermutationGroup([Permutation(g) for g in gens]).order()
        if got != order:
            sys.exit(f"{name}: generated order {got}, expected {order}")
        write(Path(outdir) / f"{name}.grp", name, degree, order, prov, gens)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "atlas")
