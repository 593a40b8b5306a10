"""Finite Kripke models for the conditional language.

A model is ``(W, <=, R, V)`` with ``R`` a finite set of triples ``(w, X, v)``;
``R_X`` is empty for every ``X`` not listed.  Worlds are strings.  Internally
every world set is an ``int`` bitmask over the world index, which keeps the
evaluator and the validators cheap enough for the exhaustive test harnesses.

Three satisfaction relations are provided through ``mode``:

``int``
    the intuitionistic relation: ``->`` and ``=>`` quantify over the
    ``<=``-future, ``~>`` is local.
``weiss``
    the ``=>``-only relation of Weiss models: ``=>`` is local, ``~>`` rejected.
``weiss_ext``
    ``weiss`` plus the classical local clause for ``~>``; only meaningful on
    discrete orders, where it is plain classical Chellas semantics.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .syntax import (
    And, Bot, Box, BoxArrow, Dia, DiaArrow, Formula, Imp, Meta, Or, Top, Var,
    atoms, in_dialect,
)

MODES = ("int", "weiss", "weiss_ext")
CLASSES = ("chellas", "weiss")


class ModelError(ValueError):
    """Malformed model input (dangling ids, empty world set, bad JSON)."""


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple
    set: frozenset | None = None

    def __str__(self) -> str:
        xs = "" if self.set is None else " X={" + ",".join(sorted(self.set)) + "}"
        return f"{self.condition}: witness {self.witness}{xs}"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Model:
    """A finite model.  ``order`` given as pairs is closed reflexively and transitively."""

    __slots__ = ("names", "index", "up", "down", "sel", "val", "_cache")

    def __init__(
        self,
        worlds: Sequence[str],
        order: Iterable[tuple[str, str]] = (),
        selection: Iterable[tuple[str, Iterable[str], str]] = (),
        valuation: Mapping[str, Iterable[str]] | None = None,
        *,
        close: bool = True,
    ):
        names = tuple(worlds)
        if not names:
            raise ModelError("a model needs at least one world")
        if len(set(names)) != len(names):
            raise ModelError("duplicate world ids")
        index = {w: i for i, w in enumerate(names)}

        def ix(w: str, what: str) -> int:
            try:
                return index[w]
            except (KeyError, TypeError):
                raise ModelError(f"unknown world {w!r} in {what}") from None

        def mask(ws: Iterable[str], what: str) -> int:
            m = 0
            for w in ws:
                m |= 1 << ix(w, what)
            return m

        n = len(names)
        up = [0] * n
        for a, b in order:
            up[ix(a, "order")] |= 1 << ix(b, "order")
        if close:
            up = _closure(up)
        sel: dict[int, list[int]] = {}
        for w, xs, v in selection:
            x = mask(xs, "selection set")
            succ = sel.setdefault(x, [0] * n)
            succ[ix(w, "selection")] |= 1 << ix(v, "selection")
        val = {p: mask(ws, f"valuation of {p}") for p, ws in (valuation or {}).items()}
        self._init(names, up, {x: tuple(s) for x, s in sel.items()}, val)

    def _init(self, names, up, sel, val) -> None:
        self.names = tuple(names)
        self.index = {w: i for i, w in enumerate(self.names)}
        self.up = tuple(up)
        down = [0] * len(up)
        for i, m in enumerate(up):
            for j in _bits(m):
                down[j] |= 1 << i
        self.down = tuple(down)
        self.sel = dict(sel)
        self.val = dict(val)
        self._cache = {}

    @classmethod
    def from_masks(cls, names, up, sel, val) -> "Model":
        m = cls.__new__(cls)
        m._init(names, up, sel, val)
        return m

    # -- name-level views ------------------------------------------------
    @property
    def worlds(self) -> tuple[str, ...]:
        return self.names

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def to_set(self, mask: int) -> frozenset[str]:
        return frozenset(self.names[i] for i in _bits(mask))

    def to_mask(self, ws: Iterable[str]) -> int:
        m = 0
        for w in ws:
            if w not in self.index:
                raise ModelError(f"unknown world {w!r}")
            m |= 1 << self.index[w]
        return m

    @property
    def order(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.names[i], self.names[j]) for i, m in enumerate(self.up) for j in _bits(m))

    @property
    def selection(self) -> frozenset[tuple[str, frozenset[str], str]]:
        out = set()
        for x, succ in self.sel.items():
            xs = self.to_set(x)
            for i, m in enumerate(succ):
                for j in _bits(m):
                    out.add((self.names[i], xs, self.names[j]))
        return frozenset(out)

    @property
    def valuation(self) -> dict[str, frozenset[str]]:
        return {p: self.to_set(m) for p, m in self.val.items()}

    def is_discrete(self) -> bool:
        return all(m == 1 << i for i, m in enumerate(self.up))

    def upward_closed(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in _bits(mask))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.names == other.names
            and self.up == other.up
            and self.selection == other.selection
            and {p: m for p, m in self.val.items() if m} == {p: m for p, m in other.val.items() if m}
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Model(worlds={list(self.names)}, |R|={len(self.selection)})"

    # -- evaluation ------------------------------------------------------
    def ext(self, f: Formula, mode: str = "int") -> int:
        """Extension of ``f`` as a bitmask."""
        cache = self._cache.get(mode)
        if cache is None:
            if mode not in MODES:
                raise EvalError(f"unknown mode {mode!r}")
            cache = self._cache[mode] = {}
        return self._ext(f, mode, cache)

    def _ext(self, f: Formula, mode: str, cache: dict) -> int:
        r = cache.get(f)
        if r is not None:
            return r
        t = type(f)
        n = len(self.names)
        if t is Var:
            r = self.val.get(f.name, 0)
        elif t is Top:
            r = (1 << n) - 1
        elif t is Bot:
            r = 0
        elif t is And:
            r = self._ext(f.left, mode, cache) & self._ext(f.right, mode, cache)
        elif t is Or:
            r = self._ext(f.left, mode, cache) | self._ext(f.right, mode, cache)
        elif t is Imp:
            bad = self._ext(f.left, mode, cache) & ~self._ext(f.right, mode, cache)
            r = 0
            for i in range(n):
                if not self.up[i] & bad:
                    r |= 1 << i
        elif t is BoxArrow:
            x = self._ext(f.left, mode, cache)
            b = self._ext(f.right, mode, cache)
            succ = self.sel.get(x)
            if succ is None:
                r = (1 << n) - 1
            else:
                local = 0
                for i in range(n):
                    if not succ[i] & ~b:
                        local |= 1 << i
                if mode == "int":
                    r = 0
                    for i in range(n):
                        if self.up[i] & ~local == 0:
                            r |= 1 << i
                else:
                    r = local
        elif t is DiaArrow:
            if mode == "weiss":
                raise EvalError("'~>' is not interpreted by the Weiss relation")
            x = self._ext(f.left, mode, cache)
            b = self._ext(f.right, mode, cache)
            succ = self.sel.get(x)
            r = 0
            if succ is not None:
                for i in range(n):
                    if succ[i] & b:
                        r |= 1 << i
        elif t is Meta:
            raise EvalError(f"cannot evaluate metavariable {f.name}")
        elif t is Box or t is Dia:
            raise EvalError("modal formulas are evaluated through their translation")
        else:
            raise EvalError(f"not a formula: {f!r}")
        cache[f] = r
        return r


def _closure(up: list[int]) -> list[int]:
    n = len(up)
    up = [m | (1 << i) for i, m in enumerate(up)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = up[i]
            acc = m
            for j in _bits(m):
                acc |= up[j]
            if acc != m:
                up[i] = acc
                changed = True
    return up


@dataclass(frozen=True)
class PointedModel:
    model: Model
    world: str

    def __post_init__(self):
        if self.world not in self.model.index:
            raise ModelError(f"unknown world {self.world!r}")


@dataclass(frozen=True)
class BiSet:
    gamma: frozenset = field(default_factory=frozenset)
    delta: frozenset = field(default_factory=frozenset)


# ---------------------------------------------------------------------------
# Evaluation API
# ---------------------------------------------------------------------------


def _check_mode(mode: str, f: Formula) -> None:
    if mode not in MODES:
        raise EvalError(f"unknown mode {mode!r}")
    if mode == "weiss" and not in_dialect(f, "cond_box"):
        raise EvalError("the Weiss relation is defined only for '~>'-free formulas")


def evaluate(model: Model, mode: str, w: str, f: Formula) -> bool:
    _check_mode(mode, f)
    if w not in model.index:
        raise EvalError(f"unknown world {w!r}")
    return bool(model.ext(f, mode) >> model.index[w] & 1)


def extension(model: Model, f: Formula, mode: str = "int") -> frozenset[str]:
    _check_mode(mode, f)
    return model.to_set(model.ext(f, mode))


def satisfies_biset(model: Model, w: str, bs: BiSet, mode: str = "int") -> bool:
    return all(evaluate(model, mode, w, g) for g in bs.gamma) and not any(
        evaluate(model, mode, w, d) for d in bs.delta
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(model: Model, cls: str = "chellas") -> list[Violation]:
    """Every violated condition with a witness; empty iff the model belongs to ``cls``.

    Frame conditions are checked for every ``X`` listed in the selection
    relation.  For any other ``X`` (upward-closed or not) ``R_X`` is empty and
    the conditions hold vacuously.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown model class {cls!r}")
    names = model.names
    out: list[Violation] = []
    up, down = model.up, model.down
    for i, m in enumerate(up):
        if not m >> i & 1:
            out.append(Violation("reflexivity", (names[i],)))
        for j in _bits(m):
            extra = up[j] & ~m
            for k in _bits(extra):
                out.append(Violation("transitivity", (names[i], names[j], names[k])))
    for p, vm in sorted(model.val.items()):
        for i in _bits(vm):
            for j in _bits(up[i] & ~vm):
                out.append(Violation("monotonicity", (p, names[i], names[j])))
    for x, succ in sorted(model.sel.items()):
        xs = model.to_set(x)
        if cls == "chellas":
            # (c1): w <= w', R_X(w, v)  =>  R_X(w', v') for some v' >= v
            for i, s in enumerate(succ):
                for i2 in _bits(up[i]):
                    for j in _bits(s):
                        if not succ[i2] & up[j]:
                            out.append(Violation("c1", (names[i2], names[i], names[j]), xs))
            # (c2): R_X(w, v), v <= v'  =>  R_X(w', v') for some w' >= w
            for i, s in enumerate(succ):
                reach = 0
                for i2 in _bits(up[i]):
                    reach |= succ[i2]
                for j in _bits(s):
                    for j2 in _bits(up[j] & ~reach):
                        out.append(Violation("c2", (names[i], names[j], names[j2]), xs))
        else:
            # (cw): w <= w', R_X(w', v')  =>  R_X(w, v) for some v <= v'
            for i, s in enumerate(succ):
                for i2 in _bits(up[i]):
                    for j2 in _bits(succ[i2]):
                        if not s & down[j2]:
                            out.append(Violation("cw", (names[i], names[i2], names[j2]), xs))
    return out


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


def glue(m1: Model, m2: Model, root: str = "root") -> PointedModel:
    """Disjoint union of ``m1`` and ``m2`` under a fresh root below every world.

    Worlds are renamed ``1:w`` and ``2:w``.  ``R(v, X, u)`` holds inside
    component ``i`` iff ``R_i(v, X & W_i, u)``, which is materialised for every
    ``X`` whose trace on ``W_i`` is listed in ``R_i``.
    """
    n1, n2 = len(m1.names), len(m2.names)
    names = [root] + [f"1:{w}" for w in m1.names] + [f"2:{w}" for w in m2.names]
    n = len(names)
    off1, off2 = 1, 1 + n1
    up = [(1 << n) - 1]
    up += [m << off1 for m in m1.up]
    up += [m << off2 for m in m2.up]
    sel: dict[int, list[int]] = {}
    for comp, off, other_bits in ((m1, off1, [0] + list(range(off2, n))), (m2, off2, list(range(0, off2)))):
        rest = [1 << b for b in other_bits]
        for x, succ in comp.sel.items():
            base = x << off
            for k in range(len(rest) + 1):
                for combo in itertools.combinations(rest, k):
                    xm = base
                    for b in combo:
                        xm |= b
                    row = sel.setdefault(xm, [0] * n)
                    for i, s in enumerate(succ):
                        row[i + off] |= s << off
    val: dict[str, int] = {}
    for p in set(m1.val) | set(m2.val):
        val[p] = (m1.val.get(p, 0) << off1) | (m2.val.get(p, 0) << off2)
    model = Model.from_masks(names, up, {x: tuple(r) for x, r in sel.items()}, val)
    return PointedModel(model, root)


def component_name(i: int, w: str) -> str:
    """Name of world ``w`` of component ``i`` inside a glued model."""
    return f"{i}:{w}"


# ---------------------------------------------------------------------------
# Enumeration and countermodel search
# ---------------------------------------------------------------------------


def upward_closed_sets(up: Sequence[int]) -> list[int]:
    n = len(up)
    return [m for m in range(1 << n) if all(up[i] & ~m == 0 for i in _bits(m))]


def _preorders_up_to_iso(n: int) -> list[list[int]]:
    seen = set()
    out = []
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for k in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, k):
            up = [1 << i for i in range(n)]
            for i, j in combo:
                up[i] |= 1 << j
            up = _closure(up)
            key = _canon_order(up)
            if key not in seen:
                seen.add(key)
                out.append(up)
    return out


def _permute_mask(m: int, perm: Sequence[int]) -> int:
    r = 0
    for i in _bits(m):
        r |= 1 << perm[i]
    return r


def _canon_order(up: Sequence[int]) -> tuple:
    n = len(up)
    best = None
    for perm in itertools.permutations(range(n)):
        new = [0] * n
        for i, m in enumerate(up):
            new[perm[i]] = _permute_mask(m, perm)
        key = tuple(new)
        if best is None or key < best:
            best = key
    return best


def canonical_key(model: Model) -> tuple:
    """Isomorphism-invariant key (exact; tries every world permutation)."""
    n = len(model.names)
    best = None
    sel_items = [(x, succ) for x, succ in model.sel.items() if any(succ)]
    val_items = sorted((p, m) for p, m in model.val.items() if m)
    for perm in itertools.permutations(range(n)):
        up = [0] * n
        for i, m in enumerate(model.up):
            up[perm[i]] = _permute_mask(m, perm)
        sel = []
        for x, succ in sel_items:
            row = [0] * n
            for i, s in enumerate(succ):
                row[perm[i]] = _permute_mask(s, perm)
            sel.append((_permute_mask(x, perm), tuple(row)))
        key = (
            n,
            tuple(up),
            tuple(sorted(sel)),
            tuple((p, _permute_mask(m, perm)) for p, m in val_items),
        )
        if best is None or key < best:
            best = key
    return best


def _names(n: int) -> list[str]:
    return [f"w{i}" for i in range(n)]


def _make(up: Sequence[int], sel: Mapping[int, Sequence[int]], val: Mapping[str, int]) -> Model:
    return Model.from_masks(_names(len(up)), up, {x: tuple(s) for x, s in sel.items()}, val)


def _valuations(vars: Sequence[str], ucs: Sequence[int]) -> Iterator[dict[str, int]]:
    for combo in itertools.product(ucs, repeat=len(vars)):
        yield dict(zip(vars, combo))


def _exhaustive(n: int, vars: Sequence[str]) -> Iterator[Model]:
    """Every model on ``n`` worlds (one order per isomorphism type), small selections first."""
    frames = []
    for up in _preorders_up_to_iso(n):
        ucs = upward_closed_sets(up)
        triples = [(i, x, j) for x in ucs for i in range(n) for j in range(n)]
        frames.append((up, ucs, triples))
    max_k = max(len(t) for _, _, t in frames)
    for k in range(max_k + 1):
        for up, ucs, triples in frames:
            if k > len(triples):
                continue
            for val in _valuations(vars, ucs):
                for combo in itertools.combinations(triples, k):
                    sel: dict[int, list[int]] = {}
                    for i, x, j in combo:
                        sel.setdefault(x, [0] * n)[i] |= 1 << j
                    yield _make(up, sel, val)


def _random_model(n: int, vars: Sequence[str], rng: random.Random, cls: str) -> Model:
    up = [1 << i for i in range(n)]
    density = rng.choice((0.0, 0.25, 0.5))
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                up[i] |= 1 << j
    up = _closure(up)
    ucs = upward_closed_sets(up)
    val = {p: rng.choice(ucs) for p in vars}
    sel: dict[int, list[int]] = {}
    for _ in range(rng.choice((0, 1, 1, 2, 2, 3))):
        x = rng.choice(ucs)
        row = sel.setdefault(x, [0] * n)
        p = rng.choice((0.2, 0.4))
        for i in range(n):
            for j in range(n):
                if rng.random() < p:
                    row[i] |= 1 << j
    if rng.random() < 0.6:
        for x, row in sel.items():
            sel[x] = _repair(row, up, cls)
    return _make(up, sel, val)


def _repair(row: list[int], up: Sequence[int], cls: str) -> list[int]:
    """Close a relation so that it satisfies the frame condition(s) of ``cls``."""
    n = len(up)
    down = [0] * n
    for i, m in enumerate(up):
        for j in _bits(m):
            down[j] |= 1 << i
    out = [0] * n
    if cls == "chellas":
        # R' = >= ; R ; <=  satisfies (c1) and (c2)
        for i in range(n):
            if not row[i]:
                continue
            tgt = 0
            for j in _bits(row[i]):
                tgt |= up[j]
            for i2 in _bits(up[i]):
                out[i2] |= tgt
    else:
        # R'(w, v) iff R(w', v) for some w' >= w  satisfies (cw)
        for i in range(n):
            for i2 in _bits(up[i]):
                out[i] |= row[i2]
    return out


def _stream(
    max_worlds: int, vars: Sequence[str], budget: int, seed: int, cls: str, exhaustive_upto: int
) -> Iterator[Model]:
    vars = sorted(set(vars))
    seen: set = set()
    emitted = 0
    exhaustive_cap = budget if max_worlds <= exhaustive_upto else budget // 2

    def fresh(m: Model) -> bool:
        if validate(m, cls):
            return False
        key = canonical_key(m)
        if key in seen:
            return False
        seen.add(key)
        return True

    for n in range(1, min(max_worlds, exhaustive_upto) + 1):
        for m in _exhaustive(n, vars):
            if emitted >= exhaustive_cap:
                break
            if fresh(m):
                emitted += 1
                yield m
    if max_worlds <= exhaustive_upto:
        return
    rng = random.Random(seed)
    lo = exhaustive_upto + 1
    misses = 0
    while emitted < budget and misses < 2000:
        n = rng.randint(lo, max_worlds)
        m = _random_model(n, vars, rng, cls)
        if fresh(m):
            emitted += 1
            misses = 0
            yield m
        else:
            misses += 1


def enumerate_models(
    max_worlds: int, vars: Sequence[str], budget: int = 1000, seed: int = 0, cls: str = "chellas"
) -> Iterator[Model]:
    """Deterministic stream of valid models with upward-closed selection sets.

    All one-world models come first, followed by seeded random samples on
    2..``max_worlds`` worlds.  Isomorphic duplicates are dropped.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown model class {cls!r}")
    return _stream(max_worlds, vars, budget, seed, cls, exhaustive_upto=1)


def countermodel_search(
    f: Formula, cls: str = "chellas", max_worlds: int = 3, budget: int = 10_000, seed: int = 0
) -> PointedModel | None:
    """First model in a deterministic order that refutes ``f``.

    Exhaustive over one and two worlds (capped at half the budget when larger
    models are allowed), then seeded random sampling.  ``None`` is not a
    validity proof.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown model class {cls!r}")
    mode = "int" if cls == "chellas" else "weiss"
    _check_mode(mode, f)
    for m in _stream(max_worlds, sorted(atoms(f)), budget, seed, cls, exhaustive_upto=2):
        bad = m.full & ~m.ext(f, mode)
        if bad:
            i = (bad & -bad).bit_length() - 1
            return PointedModel(m, m.names[i])
    return None


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_KEYS = {"worlds", "order", "r", "valuation"}


def model_from_json(data: dict | str) -> Model:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ModelError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ModelError("model must be a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ModelError(f"unknown keys: {sorted(unknown)}")
    if "worlds" not in data:
        raise ModelError("missing 'worlds'")
    worlds = data["worlds"]
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ModelError("'worlds' must be a list of strings")
    try:
        order = [tuple(p) for p in data.get("order", [])]
        if any(len(p) != 2 for p in order):
            raise ModelError("order entries must be pairs")
        sel = []
        for entry in data.get("r", []):
            if not isinstance(entry, dict) or set(entry) != {"from", "set", "to"}:
                raise ModelError("selection entries need exactly 'from', 'set', 'to'")
            sel.append((entry["from"], list(entry["set"]), entry["to"]))
        val = {p: list(ws) for p, ws in data.get("valuation", {}).items()}
    except (TypeError, AttributeError) as e:
        raise ModelError(f"malformed model: {e}") from None
    for p in val:
        if not isinstance(p, str) or not p[:1].islower():
            raise ModelError(f"bad variable name {p!r}")
    return Model(worlds, order, sel, val)


def model_to_json(model: Model) -> dict:
    names = model.names
    order = sorted((a, b) for a, b in model.order if a != b)
    r = sorted(
        ({"from": w, "set": sorted(xs), "to": v} for w, xs, v in model.selection),
        key=lambda e: (e["from"], e["set"], e["to"]),
    )
    return {
        "worlds": list(names),
        "order": [list(p) for p in order],
        "r": r,
        "valuation": {p: sorted(ws) for p, ws in sorted(model.valuation.items())},
    }
