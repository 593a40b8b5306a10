"""Loading and verifying the bundled proof corpus."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path

from .kernel import Corpus, Item, KernelError, ProofScript, RuleApp, Thm, Verdict, check, set_default_corpus
from .scripts import ScriptError, load

DATA = Path(__file__).with_name("data")


@dataclass(frozen=True)
class Entry:
    name: str
    verdict: Verdict
    script: ProofScript | None = None


def _files(root: Path) -> dict[str, Path]:
    return {f"{p.parent.name}/{p.stem}": p for p in sorted(root.glob("*/*.prf"))}


def _citations(script: ProofScript) -> set[str]:
    out = set()
    for line in script.lines:
        j = line.just
        if isinstance(j, Thm):
            out.add(j.name)
        elif isinstance(j, RuleApp) and "/" in j.rule:
            out.add(j.rule)
    return out


def topological(scripts: dict[str, ProofScript]) -> list[str]:
    """Names ordered so that every item follows the items it cites."""
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(n: str, stack: tuple[str, ...]) -> None:
        s = state.get(n)
        if s == 2:
            return
        if s == 1:
            raise KernelError("citation cycle: " + " -> ".join(stack + (n,)))
        state[n] = 1
        for d in sorted(_citations(scripts[n])):
            if d in scripts:
                visit(d, stack + (n,))
        state[n] = 2
        order.append(n)

    for n in sorted(scripts):
        visit(n, ())
    return order


def verify_corpus(root: Path = DATA) -> tuple[list[Entry], Corpus]:
    """Check every bundled item in dependency order.

    Only accepted items become citable, so a rejection propagates to the
    items that depend on it.
    """
    scripts: dict[str, ProofScript] = {}
    entries: dict[str, Entry] = {}
    for name, path in _files(root).items():
        try:
            script = load(path)
        except (ScriptError, KernelError) as e:
            entries[name] = Entry(name, Verdict(False, getattr(e, "lineno", None), f"malformed: {e}"))
            continue
        if script.calculus != name.split("/")[0]:
            entries[name] = Entry(name, Verdict(False, None, "stored under the wrong calculus"), script)
            continue
        scripts[name] = script
    corpus = Corpus()
    for name in topological(scripts):
        script = scripts[name]
        v = check(script, corpus)
        entries[name] = Entry(name, v, script)
        if v.ok:
            corpus.add(Item(name, script, v.footprint))
    ordered = [entries[n] for n in topological(scripts)] + [e for n, e in sorted(entries.items()) if n not in scripts]
    return ordered, corpus


@functools.lru_cache(maxsize=1)
def bundled() -> Corpus:
    """The checked bundled corpus (cached)."""
    entries, corpus = verify_corpus()
    bad = [e.name for e in entries if not e.verdict.ok]
    if bad:
        raise KernelError(f"bundled corpus has rejected items: {', '.join(bad)}")
    return corpus


set_default_corpus(bundled)
