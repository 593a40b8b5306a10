"""Write the multi-node Kripke sheaf fixtures used by the test battery.

Each fixture is built from a small preorder, a growing family of object
domains, a monotone valuation and a few seed triples for ``R``.  The set sort
at node ``n`` holds every monotone membership profile over the nodes above
``n``; a transition restricts profiles to the smaller up-set.  With all
profiles present the comprehension, closure and extensionality sentences
hold, and ``R`` is closed upward so that transitions stay homomorphic.
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

from intck.fosem import KripkeSheaf, check_th, sheaf_to_json, validate_sheaf

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
VARS = ("p", "q", "r", "s")


def _up(nodes, order):
    up = {n: {n} for n in nodes}
    for _ in nodes:
        for a, b in order:
            up[a] |= up[b] | {b}
    return {n: [m for m in nodes if m in up[n]] for n in nodes}


def _profiles(nodes_above, objects, up):
    """All monotone maps from ``nodes_above`` to subsets of the local objects."""
    choices = [
        [frozenset(c) for k in range(len(objects[m]) + 1) for c in itertools.combinations(objects[m], k)]
        for m in nodes_above
    ]
    out = []
    for pick in itertools.product(*choices):
        prof = dict(zip(nodes_above, pick))
        if all(prof[a] <= prof[b] for a in nodes_above for b in up[a]):
            out.append(prof)
    return out


def _pid(prof) -> str:
    return "s[" + ";".join(f"{m}:{','.join(sorted(prof[m]))}" for m in sorted(prof)) + "]"


def profile_sheaf(nodes, order, objects, valuation, seeds):
    up = _up(nodes, order)
    sets = {n: _profiles(up[n], objects, up) for n in nodes}
    domains = {n: list(objects[n]) + [_pid(P) for P in sets[n]] for n in nodes}
    trans = {}
    for a in nodes:
        for b in up[a]:
            if a == b:
                continue
            h = {o: o for o in objects[a]}
            for P in sets[a]:
                h[_pid(P)] = _pid({m: P[m] for m in up[b]})
            trans[(a, b)] = h
    rel = {n: set() for n in nodes}
    for n, o1, pick, o2 in seeds:
        prof = sets[n][pick % len(sets[n])]
        rel[n].add((o1, _pid(prof), o2))
    changed = True
    while changed:
        changed = False
        for (a, b), h in trans.items():
            for t in list(rel[a]):
                img = tuple(h[e] for e in t)
                if img not in rel[b]:
                    rel[b].add(img)
                    changed = True
    interp = {}
    for n in nodes:
        d = {
            "O": list(objects[n]),
            "S": [_pid(P) for P in sets[n]],
            "In": [(o, _pid(P)) for P in sets[n] for o in sorted(P[n])],
            "R": sorted(rel[n]),
        }
        for p in VARS:
            d[p] = sorted(valuation.get(p, {}).get(n, ()))
        interp[n] = d
    return KripkeSheaf(nodes, order, domains, interp, trans)


FIXTURES = {
    "sheaf_chain2": dict(
        nodes=["n0", "n1"],
        order=[("n0", "n1")],
        objects={"n0": ["a"], "n1": ["a", "b"]},
        valuation={"p": {"n1": ["a", "b"]}, "q": {"n0": ["a"], "n1": ["a"]}, "r": {"n1": ["a", "b"]}},
        seeds=[("n0", "a", 1, "a"), ("n0", "a", -1, "a"), ("n1", "b", 3, "a"), ("n1", "a", 0, "b")],
    ),
    "sheaf_vee": dict(
        nodes=["r", "u", "v"],
        order=[("r", "u"), ("r", "v")],
        objects={"r": ["o"], "u": ["o"], "v": ["o"]},
        valuation={"p": {"u": ["o"]}, "q": {"r": ["o"], "u": ["o"], "v": ["o"]}, "s": {"v": ["o"]}},
        seeds=[("r", "o", 2, "o"), ("u", "o", 0, "o")],
    ),
    "sheaf_chain3": dict(
        nodes=["n0", "n1", "n2"],
        order=[("n0", "n1"), ("n1", "n2")],
        objects={"n0": ["a"], "n1": ["a"], "n2": ["a", "b"]},
        valuation={"p": {"n1": ["a"], "n2": ["a", "b"]}, "r": {"n2": ["b"]}},
        seeds=[("n0", "a", 0, "a"), ("n1", "a", 4, "a"), ("n2", "b", 5, "a")],
    ),
    "sheaf_cluster": dict(
        nodes=["c0", "c1", "top"],
        order=[("c0", "c1"), ("c1", "c0"), ("c1", "top")],
        objects={"c0": ["a"], "c1": ["a"], "top": ["a", "b"]},
        valuation={"q": {"top": ["b"]}, "s": {"c0": ["a"], "c1": ["a"], "top": ["a"]}},
        seeds=[("c0", "a", 1, "a"), ("top", "b", 2, "b")],
    ),
}


def main() -> int:
    status = 0
    for name, spec in FIXTURES.items():
        s = profile_sheaf(**spec)
        bad = validate_sheaf(s) + [f"{lab}@{n}" for lab, n in check_th(s, VARS)]
        if bad:
            print(f"{name}: {bad[:5]}", file=sys.stderr)
            status = 1
        path = DATA / f"{name}.json"
        path.write_text(json.dumps(sheaf_to_json(s), indent=1) + "\n")
        print(path, len(s.nodes), "nodes", sum(len(d) for d in s.domains.values()), "elements")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
