#!/usr/bin/env python3
"""Regenerates data/corpus from planar diagram codes.

PD crossing X[i,j,k,l]: labels counterclockwise, starting at the incoming
under-strand i. Each label names the edge between two crossings.
"""
import argparse
import itertools
import pathlib

KNOTS = {
    "3_1": ([(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)], [list(range(1, 7))]),
    "4_1": ([(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)], [list(range(1, 9))]),
    "5_1": ([(1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1), (7, 2, 8, 3), (9, 4, 10, 5)],
            [list(range(1, 11))]),
    "5_2": ([(1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3)],
            [list(range(1, 11))]),
}
HOPF = ([(4, 1, 3, 2), (2, 3, 1, 4)], [[1, 2], [3, 4]])


def successor(components):
    nxt = {}
    for comp in components:
        for a, b in zip(comp, comp[1:] + comp[:1]):
            nxt[a] = b
    return nxt


def to_pkd(name, pd, components, kinds):
    nxt = successor(components)
    tails, heads, signs = {}, {}, []
    for idx, (i, j, k, l) in enumerate(pd, start=1):
        if nxt[j] == l:  # over strand runs j -> l
            slots, sign = {j: 0, i: 1, l: 2, k: 3}, "+"
        elif nxt[l] == j:
            slots, sign = {i: 0, l: 1, k: 2, j: 3}, "-"
        else:
            raise ValueError(f"{name}: cannot orient crossing {idx}")
        if nxt[i] != k:
            raise ValueError(f"{name}: under strand of crossing {idx} is not i -> k")
        signs.append(sign)
        for label, slot in slots.items():
            (tails if slot >= 2 else heads)[label] = (idx, slot)
    lines = [f"pseudodiagram {name}"]
    for idx, sign in enumerate(signs, start=1):
        kind = kinds[idx - 1] if kinds else sign
        lines.append(f"crossing {idx} {sign if kind == 'keep' else kind}")
    edges = sorted((tails[lab], heads[lab]) for lab in tails)
    for (tc, ts), (hc, hs) in edges:
        lines.append(f"edge {tc}.{ts} {hc}.{hs}")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=pathlib.Path)
    args = ap.parse_args()
    masks = args.out / "masks"
    masks.mkdir(parents=True, exist_ok=True)

    (args.out / "unknot.pkd").write_text("pseudodiagram unknot\nloops 1\n")
    (args.out / "hopf_shadow.pkd").write_text(to_pkd("hopf_shadow", *HOPF, ["#", "#"]))
    for name, (pd, comps) in KNOTS.items():
        n = len(pd)
        (args.out / f"{name}.pkd").write_text(to_pkd(name, pd, comps, ["keep"] * n))
        for bits in itertools.product("01", repeat=n):
            tag = "".join(bits)
            kinds = ["#" if b == "1" else "keep" for b in bits]
            (masks / f"{name}.pre{tag}.pkd").write_text(
                to_pkd(f"{name}.pre{tag}", pd, comps, kinds))
    pd, comps = KNOTS["3_1"]
    (args.out / "3_1.3.pkd").write_text(to_pkd("3_1.3", pd, comps, ["#", "keep", "keep"]))


if __name__ == "__main__":
    main()
