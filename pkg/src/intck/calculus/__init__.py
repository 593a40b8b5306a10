"""Hilbert calculi, the proof kernel, the bundled corpus and proof porting."""

from .kernel import (
    MP, Ax, Calculus, Corpus, Item, KernelError, Line, Pre, ProofScript, Rule, RuleApp, Scheme, Thm,
    Verdict, check, elaborate, get_calculus, match, match_scheme, registry, substitute_proof,
)
from .scripts import ScriptError, dumps, load, loads
from .corpus import bundled, verify_corpus
from .bridges import BRIDGES, port_proof

__all__ = [
    "MP", "Ax", "Calculus", "Corpus", "Item", "KernelError", "Line", "Pre", "ProofScript", "Rule",
    "RuleApp", "Scheme", "Thm", "Verdict", "check", "elaborate", "get_calculus", "match",
    "match_scheme", "registry", "substitute_proof", "ScriptError", "dumps", "load",
    "loads", "bundled", "verify_corpus", "BRIDGES", "port_proof",
]
