"""Finite Kripke sheaves and first-order intuitionistic satisfaction.

A sheaf assigns to every node of a finite preorder a classical structure over
the signature ``O, S, In (written E), R`` plus one unary predicate per
propositional variable, and to every pair ``w <= v`` a transition map from
the domain at ``w`` to the domain at ``v``.  Implication and the universal
quantifier look at every future node through the transition maps; the
existential quantifier looks only at the current domain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .models import Model, ModelError
from .syntax import (
    AtomE, AtomO, AtomP, AtomR, AtomS, Eq, Exists, FoAnd, FoBot, FoFormula, FoImp, FoOr, FoTop,
    Forall, fo_free_vars, fo_iff, fo_neg, forall_o,
)

RESERVED = ("O", "S", "In", "R")


class SheafError(ValueError):
    """Malformed sheaf input (dangling node or element ids, missing transitions)."""


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class SheafViolation:
    condition: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.condition}: witness {self.witness}"


@dataclass(frozen=True)
class Structure:
    """Classical structure at one node."""

    O: frozenset
    S: frozenset
    In: frozenset  # pairs (element, set)
    R: frozenset  # triples
    preds: Mapping[str, frozenset]


class KripkeSheaf:
    def __init__(
        self,
        nodes: Sequence[str],
        order: Iterable[tuple[str, str]],
        domains: Mapping[str, Iterable[str]],
        interp: Mapping[str, Mapping[str, Iterable]],
        transitions: Mapping[tuple[str, str], Mapping[str, str]] | None = None,
    ):
        self.nodes = tuple(nodes)
        if not self.nodes:
            raise SheafError("a sheaf needs at least one node")
        if len(set(self.nodes)) != len(self.nodes):
            raise SheafError("duplicate node ids")
        known = set(self.nodes)
        up = {n: {n} for n in self.nodes}
        for a, b in order:
            if a not in known or b not in known:
                raise SheafError(f"unknown node in order pair ({a!r}, {b!r})")
            up[a].add(b)
        changed = True
        while changed:
            changed = False
            for n in self.nodes:
                new = set(up[n])
                for m in up[n]:
                    new |= up[m]
                if new != up[n]:
                    up[n] = new
                    changed = True
        self.up = {n: tuple(m for m in self.nodes if m in up[n]) for n in self.nodes}
        self.domains: dict[str, tuple] = {}
        for n in self.nodes:
            if n not in domains:
                raise SheafError(f"no domain for node {n!r}")
            dom = tuple(domains[n])
            if not dom:
                raise SheafError(f"empty domain at node {n!r}")
            if len(set(dom)) != len(dom):
                raise SheafError(f"duplicate elements at node {n!r}")
            self.domains[n] = dom
        extra = set(domains) - known
        if extra:
            raise SheafError(f"domains for unknown nodes {sorted(extra)}")
        self.interp: dict[str, Structure] = {}
        for n in self.nodes:
            raw = dict(interp.get(n, {}))
            dom = set(self.domains[n])

            def elems(xs, arity, what):
                out = set()
                for t in xs:
                    t = (t,) if arity == 1 else tuple(t)
                    if len(t) != arity:
                        raise SheafError(f"{what} at {n!r} needs {arity}-tuples")
                    for e in t:
                        if e not in dom:
                            raise SheafError(f"unknown element {e!r} in {what} at node {n!r}")
                    out.add(t[0] if arity == 1 else t)
                return frozenset(out)

            preds = {p: elems(v, 1, p) for p, v in raw.items() if p not in RESERVED}
            self.interp[n] = Structure(
                elems(raw.get("O", ()), 1, "O"),
                elems(raw.get("S", ()), 1, "S"),
                elems(raw.get("In", ()), 2, "In"),
                elems(raw.get("R", ()), 3, "R"),
                preds,
            )
        self.trans: dict[tuple[str, str], dict] = {}
        given = dict(transitions or {})
        for (a, b) in given:
            if a not in known or b not in known:
                raise SheafError(f"transition for unknown nodes ({a!r}, {b!r})")
            if b not in up[a]:
                raise SheafError(f"transition ({a!r}, {b!r}) between unordered nodes")
        for a in self.nodes:
            for b in self.up[a]:
                if (a, b) in given:
                    m = dict(given[(a, b)])
                elif a == b:
                    m = {e: e for e in self.domains[a]}
                else:
                    raise SheafError(f"missing transition ({a!r}, {b!r})")
                for e in self.domains[a]:
                    if e not in m:
                        raise SheafError(f"transition ({a!r}, {b!r}) undefined on {e!r}")
                    if m[e] not in self.domains[b]:
                        raise SheafError(f"transition ({a!r}, {b!r}) maps {e!r} outside the domain")
                if set(m) - set(self.domains[a]):
                    raise SheafError(f"transition ({a!r}, {b!r}) mentions unknown elements")
                self.trans[(a, b)] = m
        self._memo: dict = {}
        self._fv: dict = {}

    def leq(self, a: str, b: str) -> bool:
        return b in self.up[a]

    def transport(self, a: str, b: str, f: Mapping[str, str]) -> dict[str, str]:
        h = self.trans[(a, b)]
        return {x: h[e] for x, e in f.items()}

    # -- evaluation ------------------------------------------------------------
    def _free(self, phi: FoFormula) -> tuple[str, ...]:
        fv = self._fv.get(phi)
        if fv is None:
            fv = self._fv[phi] = tuple(sorted(fo_free_vars(phi)))
        return fv

    def holds(self, node: str, phi: FoFormula, f: Mapping[str, str]) -> bool:
        fv = self._free(phi)
        key = (phi, node, tuple(f[x] for x in fv))
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = self._holds(node, phi, f)
        return r

    def _holds(self, node: str, phi: FoFormula, f: Mapping[str, str]) -> bool:
        t = type(phi)
        st = self.interp[node]
        if t is AtomP:
            return f[phi.x] in st.preds.get(phi.pred, ())
        if t is AtomO:
            return f[phi.x] in st.O
        if t is AtomS:
            return f[phi.x] in st.S
        if t is AtomE:
            return (f[phi.x], f[phi.y]) in st.In
        if t is AtomR:
            return (f[phi.x], f[phi.y], f[phi.z]) in st.R
        if t is Eq:
            return f[phi.x] == f[phi.y]
        if t is FoTop:
            return True
        if t is FoBot:
            return False
        if t is FoAnd:
            return self.holds(node, phi.left, f) and self.holds(node, phi.right, f)
        if t is FoOr:
            return self.holds(node, phi.left, f) or self.holds(node, phi.right, f)
        if t is FoImp:
            for v in self.up[node]:
                g = self.transport(node, v, f) if v != node else f
                if self.holds(v, phi.left, g) and not self.holds(v, phi.right, g):
                    return False
            return True
        if t is Forall:
            for v in self.up[node]:
                g = self.transport(node, v, f) if v != node else dict(f)
                for e in self.domains[v]:
                    g[phi.var] = e
                    if not self.holds(v, phi.body, g):
                        return False
            return True
        if t is Exists:
            g = dict(f)
            for e in self.domains[node]:
                g[phi.var] = e
                if self.holds(node, phi.body, g):
                    return True
            return False
        raise TypeError(f"not a first-order formula: {phi!r}")


def eval_fo(s: KripkeSheaf, node: str, phi: FoFormula, f: Mapping[str, str] | None = None) -> bool:
    f = dict(f or {})
    if node not in s.interp:
        raise SheafError(f"unknown node {node!r}")
    missing = fo_free_vars(phi) - set(f)
    if missing:
        raise AssignmentError(f"assignment misses {', '.join(sorted(missing))}")
    for x in fo_free_vars(phi):
        if f[x] not in s.domains[node]:
            raise AssignmentError(f"{x} is assigned {f[x]!r}, not in the domain of {node!r}")
    return s.holds(node, phi, {x: f[x] for x in fo_free_vars(phi)})


def validate_sheaf(s: KripkeSheaf) -> list[SheafViolation]:
    out: list[SheafViolation] = []
    for n in s.nodes:
        h = s.trans[(n, n)]
        for e in s.domains[n]:
            if h[e] != e:
                out.append(SheafViolation("identity", (n, e, h[e])))
    for a in s.nodes:
        for b in s.up[a]:
            for c in s.up[b]:
                hab, hbc, hac = s.trans[(a, b)], s.trans[(b, c)], s.trans[(a, c)]
                for e in s.domains[a]:
                    if hbc[hab[e]] != hac[e]:
                        out.append(SheafViolation("composition", (a, b, c, e)))
    for a in s.nodes:
        sa = s.interp[a]
        for b in s.up[a]:
            if b == a:
                continue
            h, sb = s.trans[(a, b)], s.interp[b]
            for name, src, dst in (("O", sa.O, sb.O), ("S", sa.S, sb.S)):
                for e in sorted(src):
                    if h[e] not in dst:
                        out.append(SheafViolation("homomorphism", (a, b, name, e)))
            for x, y in sorted(sa.In):
                if (h[x], h[y]) not in sb.In:
                    out.append(SheafViolation("homomorphism", (a, b, "In", x, y)))
            for x, y, z in sorted(sa.R):
                if (h[x], h[y], h[z]) not in sb.R:
                    out.append(SheafViolation("homomorphism", (a, b, "R", x, y, z)))
            for p, ext in sorted(sa.preds.items()):
                for e in sorted(ext):
                    if h[e] not in sb.preds.get(p, ()):
                        out.append(SheafViolation("homomorphism", (a, b, p, e)))
    return out


# ---------------------------------------------------------------------------
# The theory
# ---------------------------------------------------------------------------


def _ands(*fs: FoFormula) -> FoFormula:
    out = fs[0]
    for g in fs[1:]:
        out = FoAnd(out, g)
    return out


def th_sentences(vars: Sequence[str] = ()) -> list[tuple[str, FoFormula]]:
    """The sentences of the two-sorted theory, labelled ``Th1`` ... ``Th12``.

    The per-variable families Th3 and Th6 are instantiated for ``vars`` only.
    """
    x, y, z, w, u = "x", "y", "z", "w", "u"
    E, S, O = AtomE, AtomS, AtomO
    out: list[tuple[str, FoFormula]] = [
        ("Th1", Forall(x, FoOr(S(x), O(x)))),
        ("Th2", Forall(x, fo_neg(FoAnd(S(x), O(x))))),
    ]
    for p in vars:
        out.append((f"Th3[{p}]", Forall(x, FoImp(AtomP(p, x), O(x)))))
    out.append(("Th4", Forall(x, Forall(y, FoImp(E(x, y), FoAnd(O(x), S(y)))))))
    out.append(("Th5", Forall(x, Forall(y, Forall(z, FoImp(AtomR(x, y, z), _ands(O(x), S(y), O(z))))))))
    for p in vars:
        out.append((f"Th6[{p}]", Exists(x, FoAnd(S(x), Forall(y, fo_iff(E(y, x), AtomP(p, y)))))))
    out.append(("Th7", Exists(x, FoAnd(S(x), forall_o(y, E(y, x))))))
    out.append(("Th8", Exists(x, FoAnd(S(x), Forall(y, fo_neg(E(y, x)))))))

    def closure(body: FoFormula) -> FoFormula:
        return Forall(x, Forall(y, FoImp(
            FoAnd(S(x), S(y)),
            Exists(z, FoAnd(S(z), forall_o(w, fo_iff(E(w, z), body)))),
        )))

    for tag, op in (("and", FoAnd), ("or", FoOr), ("imp", FoImp)):
        out.append((f"Th9[{tag}]", closure(op(E(w, x), E(w, y)))))
    out.append(("Th10", closure(Forall(u, FoImp(AtomR(w, x, u), E(u, y))))))
    out.append(("Th11", closure(Exists(u, FoAnd(AtomR(w, x, u), E(u, y))))))
    out.append(("Th12", Forall(x, Forall(y, FoImp(
        _ands(S(x), S(y), forall_o(z, fo_iff(E(z, x), E(z, y)))),
        Eq(x, y),
    )))))
    return out


def check_th(s: KripkeSheaf, vars: Sequence[str] = ()) -> list[tuple[str, str]]:
    """Pairs ``(label, node)`` for every sentence of the theory failing at a node."""
    fails = []
    for label, phi in th_sentences(vars):
        for n in s.nodes:
            if not s.holds(n, phi, {}):
                fails.append((label, n))
    return fails


# ---------------------------------------------------------------------------
# Single-node bridge from classical models
# ---------------------------------------------------------------------------


def obj_id(w: str) -> str:
    return f"o:{w}"


def set_id(ws: Iterable[str]) -> str:
    return "s:{" + ",".join(sorted(ws)) + "}"


def classical_to_sheaf(m: Model, vars: Sequence[str] = (), node: str = "*") -> KripkeSheaf:
    """One-node sheaf: objects are the worlds, sets are all subsets of worlds."""
    if not m.is_discrete():
        raise ModelError("classical_to_sheaf needs a discrete order")
    worlds = m.names
    n = len(worlds)
    subsets = []
    for mask in range(1 << n):
        subsets.append(tuple(worlds[i] for i in range(n) if mask >> i & 1))
    objs = [obj_id(w) for w in worlds]
    sets = [set_id(xs) for xs in subsets]
    inn = [(obj_id(w), set_id(xs)) for xs in subsets for w in xs]
    rel = [(obj_id(w), set_id(xs), obj_id(v)) for w, xs, v in m.selection]
    val = m.valuation
    preds = {p: [obj_id(w) for w in sorted(val.get(p, ()))] for p in vars}
    for p, ws in val.items():
        preds.setdefault(p, [obj_id(w) for w in sorted(ws)])
    interp = {"O": objs, "S": sets, "In": inn, "R": rel, **preds}
    return KripkeSheaf([node], [], {node: objs + sets}, {node: interp})


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_KEYS = {"nodes", "order", "domains", "interp", "transitions"}


def sheaf_from_json(data: dict | str) -> KripkeSheaf:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise SheafError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise SheafError("sheaf must be a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise SheafError(f"unknown keys: {sorted(unknown)}")
    try:
        trans = {}
        for key, mapping in data.get("transitions", {}).items():
            if key.count(">") != 1:
                raise SheafError(f"transition key {key!r} must read 'w>v'")
            a, b = key.split(">")
            trans[(a, b)] = dict(mapping)
        return KripkeSheaf(
            data["nodes"],
            [tuple(p) for p in data.get("order", [])],
            data["domains"],
            data.get("interp", {}),
            trans,
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SheafError):
            raise
        raise SheafError(f"malformed sheaf: {e}") from None


def sheaf_to_json(s: KripkeSheaf) -> dict:
    interp = {}
    for n in s.nodes:
        st = s.interp[n]
        d = {
            "O": sorted(st.O),
            "S": sorted(st.S),
            "In": [list(t) for t in sorted(st.In)],
            "R": [list(t) for t in sorted(st.R)],
        }
        for p in sorted(st.preds):
            d[p] = sorted(st.preds[p])
        interp[n] = d
    order = sorted((a, b) for a in s.nodes for b in s.up[a] if a != b)
    return {
        "nodes": list(s.nodes),
        "order": [list(p) for p in order],
        "domains": {n: list(s.domains[n]) for n in s.nodes},
        "interp": interp,
        "transitions": {f"{a}>{b}": dict(sorted(s.trans[(a, b)].items())) for a, b in order},
    }
