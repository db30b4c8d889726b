#!/usr/bin/env python3
"""Writes the group definition files under data/groups."""
import itertools
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "groups"


def table_from(elements, mul):
    index = {x: i for i, x in enumerate(elements)}
    return [[index[mul(a, b)] for b in elements] for a in elements]


def compose(p, q):
    # (p q)(x) = p(q(x)): q acts first.
    return tuple(p[q[x]] for x in range(len(q)))


def cycle_name(p):
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        cycles.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def s3():
    perms = sorted(itertools.permutations(range(3)), key=lambda p: (cycle_name(p) != "e", len(cycle_name(p)), cycle_name(p)))
    names = [cycle_name(p) for p in perms]
    return {
        "kind": "finite",
        "elements": names,
        "table": table_from(perms, compose),
        "generators": ["(12)", "(13)", "(23)"],
    }


def cyclic(n, gen="t"):
    names = ["e"] + [gen if k == 1 else f"{gen}{k}" for k in range(1, n)]
    return {
        "kind": "finite",
        "elements": names,
        "table": [[(a + b) % n for b in range(n)] for a in range(n)],
        "generators": [gen],
    }


def d4():
    # Symmetries of a square with vertices 0..3: r rotates, s reflects.
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    e = (0, 1, 2, 3)
    elems, names = [], []
    rk = e
    for k in range(4):
        elems.append(rk)
        names.append("e" if k == 0 else ("r" if k == 1 else f"r{k}"))
        rk = compose(r, rk)
    rk = e
    for k in range(4):
        elems.append(compose(s, rk))
        names.append("s" if k == 0 else ("sr" if k == 1 else f"sr{k}"))
        rk = compose(r, rk)
    return {
        "kind": "finite",
        "elements": names,
        "table": table_from(elems, compose),
        "generators": ["r", "s"],
    }


def q8():
    # Quaternion units as (sign, letter) with letter in 1, i, j, k.
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]

    def mul(a, b):
        sign, letter = mult[(a[1], b[1])]
        return (a[0] * b[0] * sign, letter)

    def name(x):
        if x[1] == "1":
            return "e" if x[0] == 1 else "-1"
        return x[1] if x[0] == 1 else "-" + x[1]

    return {
        "kind": "finite",
        "elements": [name(x) for x in elems],
        "table": table_from(elems, mul),
        "generators": ["i", "j"],
    }


GROUPS = {
    "z": {"kind": "free", "rank": 1, "generators": ["t"]},
    "f2": {"kind": "free", "rank": 2, "generators": ["a", "b"]},
    "z2": cyclic(2),
    "z3": cyclic(3),
    "z3_presented": {
        "kind": "presented",
        "generators": ["t"],
        "inverses": {"t": "t^-1"},
        "rules": [["t t", "t^-1"], ["t^-1 t^-1", "t"]],
    },
    "s3": s3(),
    "d4": d4(),
    "q8": q8(),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, spec in GROUPS.items():
        (OUT / f"{name}.json").write_text(json.dumps(spec, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
