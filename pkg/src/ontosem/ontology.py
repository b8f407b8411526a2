"""Category hierarchy, bridge relations and the lexicon.

Both data files are line oriented, ``#`` starts a comment.

Ontology::

    type human < animal
    bridge livingThing^a * painting => PaintingOf(fresh, dep)
    bridge hamSandwich^a * human => R(fresh, dep) referent

A trailing ``referent`` marks a reference shift: the new object becomes what
the noun phrase denotes (see :class:`BridgeEntry`).

Lexicon::

    noun seminar => seminar^a
    noun artist => Artist :: human
    adj hungry => Hungry :: animal
    verb cancelled => Cancelled :: human x event^a
    name sheba
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import (AmbiguousBridge, CycleError, OntologyError, ParseError,
                     UnknownCategory, UnknownParent)
from .logic import ABSTRACT, ACTUAL, Mode, TypeExpr

ROOT = "entity"

_NAME = r"[a-z][a-zA-Z0-9_]*"
_PRED = r"[A-Za-z][A-Za-z0-9_]*"
_TYPE = rf"{_NAME}(?:\^a)?"
_TYPE_LINE = re.compile(rf"type\s+({_NAME})\s*<\s*({_NAME})\Z")
_BRIDGE_LINE = re.compile(
    rf"bridge\s+({_TYPE})\s*\*\s*({_TYPE})\s*=>\s*({_PRED})\s*\(\s*(fresh|dep)\s*,\s*(fresh|dep)\s*\)(\s+referent)?\Z"
)


def _type_token(text: str) -> TypeExpr:
    if text.endswith("^a"):
        return TypeExpr(text[:-2], ABSTRACT)
    return TypeExpr(text, ACTUAL)


@dataclass(frozen=True)
class BridgeEntry:
    """A relation that links a dependent category to a required one.

    When a variable typed ``dep_type`` is required to be a ``req_type``, a
    fresh ``req_type`` variable is introduced and related to it.  With
    ``referent`` set the fresh variable takes over the dependent's binder
    (its position and quantifier) and the dependent is demoted to a plain
    existential bound right after it.
    """

    dep_type: str
    req_type: str
    relation: str
    fresh_first: bool = True
    dep_mode: Mode = ACTUAL
    fresh_mode: Mode = ABSTRACT
    referent: bool = False
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.relation:
            raise ValueError("relation name must be nonempty")
        object.__setattr__(self, "dep_mode", Mode(self.dep_mode))
        object.__setattr__(self, "fresh_mode", Mode(self.fresh_mode))

    def relation_args(self, dep_var: str, fresh_var: str) -> tuple:
        return (fresh_var, dep_var) if self.fresh_first else (dep_var, fresh_var)

    def __str__(self):
        roles = "fresh, dep" if self.fresh_first else "dep, fresh"
        dep = TypeExpr(self.dep_type, self.dep_mode)
        req = TypeExpr(self.req_type, self.fresh_mode)
        tail = " referent" if self.referent else ""
        return f"bridge {dep} * {req} => {self.relation}({roles}){tail}"


@dataclass(frozen=True)
class Ontology:
    categories: tuple
    parents: dict
    bridges: tuple = ()
    root: str = ROOT
    _up: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        up = {}
        for c in self.categories:
            seen, stack = set(), [c]
            while stack:
                x = stack.pop()
                if x not in seen:
                    seen.add(x)
                    stack.extend(self.parents.get(x, ()))
            up[c] = frozenset(seen)
        object.__setattr__(self, "_up", up)

    def __contains__(self, name):
        return name in self._up

    def check(self, name: str) -> str:
        if name not in self._up:
            raise UnknownCategory(name)
        return name

    def ancestors(self, name: str) -> frozenset:
        """Every category ``name`` is subsumed by, including itself."""
        return self._up[self.check(name)]

    def subsumes(self, a: str, b: str) -> bool:
        """``a`` is below or equal to ``b``."""
        self.check(b)
        return b in self.ancestors(a)

    def comparable(self, a: str, b: str) -> bool:
        return self.subsumes(a, b) or self.subsumes(b, a)

    def find_bridge(self, dep: str, req: str) -> BridgeEntry | None:
        """Most specific registered bridge whose pair covers ``(dep, req)``."""
        if self.comparable(dep, req):
            return None
        matches = [e for e in self.bridges
                   if self.subsumes(dep, e.dep_type) and self.subsumes(req, e.req_type)]
        if not matches:
            return None
        for key in ("dep_type", "req_type"):
            values = {getattr(e, key) for e in matches}
            lowest = {v for v in values
                      if not any(w != v and self.subsumes(w, v) for w in values)}
            if len(lowest) > 1:
                raise AmbiguousBridge(dep, req, [e for e in matches if getattr(e, key) in lowest])
            matches = [e for e in matches if getattr(e, key) in lowest]
        return matches[0]


def subsumes(o: Ontology, a: str, b: str) -> bool:
    return o.subsumes(a, b)


def find_bridge(o: Ontology, dep: str, req: str) -> BridgeEntry | None:
    return o.find_bridge(dep, req)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _find_cycle(parents: dict):
    state = {}

    def visit(node, path):
        state[node] = 1
        path.append(node)
        for p in parents.get(node, ()):
            if state.get(p) == 1:
                return path[path.index(p):] + [p]
            if p not in state:
                found = visit(p, path)
                if found:
                    return found
        path.pop()
        state[node] = 2
        return None

    for node in sorted(parents):
        if node not in state:
            found = visit(node, [])
            if found:
                return found
    return None


def check_ontology(text: str):
    """Parse an ontology file, returning ``(ontology or None, [errors])``."""
    errors = []
    parents, edge_line, order = {}, {}, [ROOT]
    bridge_lines = []
    for n, line in _lines(text):
        if line.startswith("type"):
            m = _TYPE_LINE.match(line)
            if not m:
                errors.append(ParseError(f"malformed type declaration {line!r}", n))
                continue
            child, parent = m.groups()
            if (child, parent) in edge_line:
                errors.append(ParseError(f"duplicate declaration {child} < {parent}", n))
                continue
            if child == parent:
                errors.append(CycleError([child, child], n))
                continue
            edge_line[child, parent] = n
            parents.setdefault(child, [])
            parents[child].append(parent)
            if child not in order:
                order.append(child)
        elif line.startswith("bridge"):
            bridge_lines.append((n, line))
        else:
            errors.append(ParseError(f"unknown declaration {line!r}", n))

    known = set(order)
    for (child, parent), n in edge_line.items():
        if parent not in known:
            errors.append(UnknownParent(parent, n))
    if ROOT in parents:
        errors.append(OntologyError(f"root {ROOT!r} cannot have a parent", edge_line[ROOT, parents[ROOT][0]]))
    cycle = _find_cycle(parents)
    if cycle:
        errors.append(CycleError(cycle, edge_line.get((cycle[0], cycle[1]))))
    if errors:
        return None, errors

    o = Ontology(tuple(order), {c: tuple(ps) for c, ps in parents.items()})
    bridges, pairs = [], set()
    for n, line in bridge_lines:
        m = _BRIDGE_LINE.match(line)
        if not m:
            errors.append(ParseError(f"malformed bridge declaration {line!r}", n))
            continue
        dep, req, rel, role1, role2, referent = m.groups()
        if {role1, role2} != {"fresh", "dep"}:
            errors.append(ParseError("bridge roles must be one 'fresh' and one 'dep'", n))
            continue
        dep_t, req_t = _type_token(dep), _type_token(req)
        bad = [t.category for t in (dep_t, req_t) if t.category not in o]
        if bad:
            errors.extend(UnknownCategory(b, n) for b in bad)
            continue
        if o.comparable(dep_t.category, req_t.category):
            errors.append(OntologyError(
                f"bridge between comparable categories {dep_t.category}, {req_t.category}", n))
            continue
        if (dep_t.category, req_t.category) in pairs:
            errors.append(ParseError(f"duplicate bridge for ({dep_t.category}, {req_t.category})", n))
            continue
        pairs.add((dep_t.category, req_t.category))
        bridges.append(BridgeEntry(dep_t.category, req_t.category, rel, role1 == "fresh",
                                   dep_t.mode, req_t.mode, bool(referent), line=n))
    if errors:
        return None, errors
    return Ontology(o.categories, o.parents, tuple(bridges)), []


def load_ontology(text: str) -> Ontology:
    onto, errors = check_ontology(text)
    if errors:
        raise errors[0]
    return onto


# -- lexicon -------------------------------------------------------------------

@dataclass(frozen=True)
class NounEntry:
    """``type`` is the binder's starting type; ``predicate`` is set for
    second-intension nouns (``artist``) that predicate rather than classify."""

    type: TypeExpr
    predicate: str | None = None


@dataclass(frozen=True)
class AdjEntry:
    predicate: str
    sel: TypeExpr


@dataclass(frozen=True)
class VerbEntry:
    predicate: str
    slots: tuple


@dataclass(frozen=True)
class Lexicon:
    nouns: dict
    adjectives: dict
    verbs: dict
    names: dict

    @property
    def max_words(self) -> int:
        tables = (self.nouns, self.adjectives, self.verbs, self.names)
        return max((len(s.split()) for t in tables for s in t), default=1)

    def table(self, kind: str) -> dict:
        return {"noun": self.nouns, "adj": self.adjectives, "verb": self.verbs, "name": self.names}[kind]


_LEX_LINE = re.compile(r"(noun|adj|verb|name)\s+(.+?)\s*(?:(=>|::)\s*(.*))?\Z")
_PRED_SIG = re.compile(rf"({_PRED})\s*::\s*(.+)\Z")


def _default_pred(surface: str) -> str:
    return "".join(w.capitalize() for w in surface.split())


def check_lexicon(text: str, o: Ontology):
    """Parse a lexicon file against ``o``; returns ``(lexicon or None, [errors])``."""
    errors = []
    tables = {"noun": {}, "adj": {}, "verb": {}, "name": {}}

    def typ(token, n):
        token = token.strip()
        if not re.fullmatch(_TYPE, token):
            raise ParseError(f"bad type {token!r}", n)
        t = _type_token(token)
        if t.category not in o:
            raise UnknownCategory(t.category, n)
        return t

    for n, line in _lines(text):
        m = _LEX_LINE.match(line)
        if not m:
            errors.append(ParseError(f"unknown declaration {line!r}", n))
            continue
        kind, surface, arrow, rest = m.groups()
        surface = " ".join(surface.split())
        if surface != surface.lower():
            errors.append(ParseError(f"surface form {surface!r} must be lowercase", n))
            continue
        if surface in tables[kind]:
            errors.append(ParseError(f"duplicate {kind} {surface!r}", n))
            continue
        try:
            if kind == "name":
                if arrow == "::":
                    raise ParseError("names take an optional '=> label'", n)
                entry = rest.strip() if rest else surface
            elif rest is None:
                raise ParseError(f"{kind} {surface!r} needs a type", n)
            else:
                # '=> Pred :: sig', '=> sig' (nouns) or ':: sig' (default predicate name)
                if arrow == "=>":
                    sm = _PRED_SIG.match(rest)
                    pred, sig = (sm.group(1), sm.group(2)) if sm else (None, rest)
                else:
                    pred, sig = _default_pred(surface), rest
                if kind == "noun":
                    entry = NounEntry(typ(sig, n), pred)
                elif kind == "adj":
                    entry = AdjEntry(pred or _default_pred(surface), typ(sig, n))
                else:
                    slots = tuple(typ(s, n) for s in re.split(r"\s+x\s+", sig.strip()))
                    if not 1 <= len(slots) <= 2:
                        raise ParseError("verbs take one or two argument slots", n)
                    entry = VerbEntry(pred or _default_pred(surface), slots)
        except ParseError as e:
            errors.append(e)
            continue
        tables[kind][surface] = entry
    if errors:
        return None, errors
    return Lexicon(tables["noun"], tables["adj"], tables["verb"], tables["name"]), []


def load_lexicon(text: str, o: Ontology) -> Lexicon:
    lex, errors = check_lexicon(text, o)
    if errors:
        raise errors[0]
    return lex


# -- shipped data ----------------------------------------------------------------

def data_dir() -> Path:
    """``$ONTOSEM_DATA`` if set, else the data shipped with the package."""
    env = os.environ.get("ONTOSEM_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("ontosem") / "data"))


DEFAULT_ONTOLOGY = "default.ont"
DEFAULT_LEXICON = "default.lex"


@lru_cache(maxsize=None)
def _load_pair(ont_path: str, lex_path: str):
    o = load_ontology(Path(ont_path).read_text(encoding="utf-8"))
    lex = load_lexicon(Path(lex_path).read_text(encoding="utf-8"), o)
    return o, lex


def default_data(directory: Path | None = None):
    """``(ontology, lexicon)`` loaded from the default data directory."""
    d = Path(directory) if directory else data_dir()
    return _load_pair(str(d / DEFAULT_ONTOLOGY), str(d / DEFAULT_LEXICON))
