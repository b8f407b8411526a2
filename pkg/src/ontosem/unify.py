"""Type unification over the category hierarchy.

Every annotation ``x :: t`` in an initial logical form is a requirement on the
variable ``x``.  Requirements are folded into the binder's type one at a time:
comparable categories resolve to the more specific one, incomparable ones are
reconciled through a registered bridge relation (introducing a new variable),
and anything else makes the whole form implausible (``_|_``).

Existence modes combine with actual dominating: a single requirement for an
actually existing object brings an abstract one down, never the reverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OntoSemError
from .logic import (ABSTRACT, ACTUAL, BOTTOM, EXISTS, And, Atom, Bottom, Lambda, Mode,
                    Quant, TypeExpr, conj, fresh_name, free_vars, print_lf)
from .ontology import BridgeEntry, Ontology

__all__ = [
    "combine_mode", "Resolved", "Bridged", "Failed", "FAILED", "unify_pair",
    "Origin", "Constraint", "Step", "Derivation", "constraints_of",
    "resolve_var", "resolve_all",
]


def combine_mode(a: Mode, b: Mode) -> Mode:
    return ACTUAL if ACTUAL in (Mode(a), Mode(b)) else ABSTRACT


@dataclass(frozen=True)
class Resolved:
    type: TypeExpr


@dataclass(frozen=True)
class Bridged:
    """Outcome of the relational case.

    ``var_type`` is the new type of the unified variable, ``fresh`` /
    ``fresh_type`` the introduced variable, ``relation`` the atom linking them.
    ``reversed`` is set when the registry matched with the roles swapped, i.e.
    the requirement is the dependent side of the entry.
    """

    var_type: TypeExpr
    fresh: str
    fresh_type: TypeExpr
    relation: Atom
    entry: BridgeEntry
    reversed: bool = False
    retarget: "Origin | None" = None


@dataclass(frozen=True)
class Failed:
    pass


FAILED = Failed()


def unify_pair(o: Ontology, a: TypeExpr, b: TypeExpr, var="x", fresh="y", origin=None):
    """Unify the current type ``a`` of ``var`` with a requirement ``b``."""
    o.check(a.category)
    o.check(b.category)
    mode = combine_mode(a.mode, b.mode)
    if o.subsumes(a.category, b.category):
        return Resolved(TypeExpr(a.category, mode))
    if o.subsumes(b.category, a.category):
        return Resolved(TypeExpr(b.category, mode))
    entry = o.find_bridge(a.category, b.category)
    if entry is not None:
        return Bridged(
            var_type=TypeExpr(a.category, entry.dep_mode),
            fresh=fresh,
            fresh_type=TypeExpr(b.category, entry.fresh_mode),
            relation=Atom(entry.relation, entry.relation_args(var, fresh)),
            entry=entry,
            retarget=origin,
        )
    entry = o.find_bridge(b.category, a.category)
    if entry is not None:
        # the requirement is the dependent: the new variable plays the dep role
        return Bridged(
            var_type=a,
            fresh=fresh,
            fresh_type=TypeExpr(b.category, entry.dep_mode),
            relation=Atom(entry.relation, entry.relation_args(fresh, var)),
            entry=entry,
            reversed=True,
            retarget=origin,
        )
    return FAILED


# -- constraints and derivations -------------------------------------------------

@dataclass(frozen=True)
class Origin:
    """Where an annotation sits: conjunct index, predicate, argument position."""

    atom: int
    pred: str
    position: int

    def __str__(self):
        return f"{self.pred}#{self.position}"


@dataclass(frozen=True)
class Constraint:
    var: str
    t: TypeExpr
    origin: Origin


@dataclass(frozen=True)
class Step:
    step: int
    kind: str            # subsume | bridge | fail | mode
    var: str
    inputs: tuple
    output: str
    origin: str = ""
    entry: BridgeEntry | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"step": self.step, "kind": self.kind, "var": self.var,
               "inputs": list(self.inputs), "output": self.output}
        if self.origin:
            out["origin"] = self.origin
        if self.entry is not None:
            out["relation"] = self.entry.relation
        return out

    def __str__(self):
        lhs = " . ".join(self.inputs)
        where = f"  [{self.origin}]" if self.origin else ""
        return f"{self.step:>3} {self.kind:<7} {self.var}: ({lhs}) => {self.output}{where}"


class Derivation(list):
    """Ordered list of :class:`Step` records."""

    def record(self, kind, var, inputs, output, origin="", entry=None) -> Step:
        s = Step(len(self) + 1, kind, var, tuple(str(i) for i in inputs), str(output),
                 str(origin) if origin else "", entry)
        self.append(s)
        return s

    def to_json(self) -> list:
        return [s.to_json() for s in self]


class _Work:
    """Mutable prenex view of a form: binder list plus flat conjunct list."""

    def __init__(self, lf):
        self.binders = []
        while isinstance(lf, Quant):
            self.binders.append([lf.q, lf.var, lf.type])
            lf = lf.body
        if isinstance(lf, And):
            parts = list(lf.conjuncts)
        else:
            parts = [lf]
        if any(isinstance(p, (Quant, And, Lambda, Bottom)) for p in parts):
            raise OntoSemError("resolution expects a prenex form with a flat matrix")
        self.atoms = parts

    def index(self, v):
        for i, b in enumerate(self.binders):
            if b[1] == v:
                return i
        raise OntoSemError(f"variable {v!r} has no binder")

    def names(self):
        out = {b[1] for b in self.binders}
        for a in self.atoms:
            out |= free_vars(a)
        return out

    def remove_annotation(self, v, t, atom_index, position):
        a = self.atoms[atom_index]
        stacks = [list(a.annotation(j)) for j in range(len(a.args))]
        stacks[position].remove(t)
        self.atoms[atom_index] = Atom(a.pred, a.args, tuple(tuple(s) for s in stacks))

    def to_lf(self):
        body = conj(self.atoms) if self.atoms else And(())
        for q, v, t in reversed(self.binders):
            body = Quant(q, v, t, body)
        return body


def constraints_of(lf_or_work, v: str) -> list:
    """Annotations on ``v`` in conjunct order, argument order, stack order."""
    work = lf_or_work if isinstance(lf_or_work, _Work) else _Work(lf_or_work)
    out = []
    for i, a in enumerate(work.atoms):
        if not isinstance(a, Atom):
            continue
        for j, arg in enumerate(a.args):
            if arg == v:
                for t in a.annotation(j):
                    out.append(Constraint(v, t, Origin(i, a.pred, j)))
    return out


def _resolve(o: Ontology, work: _Work, v: str, deriv: Derivation, first=None) -> bool:
    """Resolve one variable in place; returns False on failure."""
    while True:
        cs = list(first) if first is not None else constraints_of(work, v)
        first = None
        if not cs:
            return True
        slot = work.binders[work.index(v)]
        pending = cs
        progress = True
        while progress:
            progress = False
            for c in list(pending):
                current = slot[2]
                if not o.comparable(current.category, c.t.category):
                    continue
                out = unify_pair(o, current, c.t)
                deriv.record("subsume", v, (current, c.t), out.type, c.origin)
                if current.abstract and not out.type.abstract:
                    deriv.record("mode", v, (current.mode, c.t.mode), out.type.mode, c.origin)
                slot[2] = out.type
                work.remove_annotation(v, c.t, c.origin.atom, c.origin.position)
                pending.remove(c)
                progress = True
        if not pending:
            return True

        c = pending[0]
        current = slot[2]
        fresh = fresh_name(c.t.category[0], work.names())
        out = unify_pair(o, current, c.t, var=v, fresh=fresh, origin=c.origin)
        if isinstance(out, Failed):
            deriv.record("fail", v, (current, c.t), "_|_", c.origin)
            return False
        deriv.record("bridge", v, (current, c.t),
                     f"{print_lf(out.relation)}; {fresh}::{out.fresh_type}", c.origin, out.entry)
        if out.var_type != current:
            deriv.record("mode", v, (current.mode, out.entry.dep_mode), out.var_type.mode, c.origin,
                         out.entry)
        slot[2] = out.var_type
        at = work.index(v)
        if out.entry.referent and not out.reversed:
            # reference shift: the fresh object is what the phrase denotes
            work.binders.insert(at, [slot[0], fresh, out.fresh_type])
            slot[0] = EXISTS
        else:
            work.binders.insert(at + 1, [slot[0], fresh, out.fresh_type])
        _retarget(work, v, fresh, c.t)
        work.atoms.insert(c.origin.atom + 1, out.relation)


def _retarget(work: _Work, v: str, fresh: str, t: TypeExpr):
    """Move every occurrence of ``v`` that requires ``t`` onto ``fresh``."""
    for i, a in enumerate(work.atoms):
        if not isinstance(a, Atom) or v not in a.args:
            continue
        args, stacks, changed = list(a.args), [list(a.annotation(j)) for j in range(len(a.args))], False
        for j, arg in enumerate(args):
            if arg == v and t in stacks[j]:
                args[j] = fresh
                stacks[j].remove(t)
                changed = True
        if changed:
            work.atoms[i] = Atom(a.pred, tuple(args), tuple(tuple(s) for s in stacks))


def _strip(work: _Work):
    work.atoms = [Atom(a.pred, a.args) if isinstance(a, Atom) else a for a in work.atoms]


def resolve_var(o: Ontology, v: str, cs, lf):
    """Resolve ``v`` in ``lf`` starting from the constraint order ``cs``.

    Returns ``(form, derivation)``; the form is ``BOTTOM`` if unification fails.
    """
    work = _Work(lf)
    deriv = Derivation()
    if not _resolve(o, work, v, deriv, first=cs):
        return BOTTOM, deriv
    return work.to_lf(), deriv


def resolve_all(o: Ontology, lf):
    """Resolve every bound variable, outermost first.

    Variables introduced by bridges are resolved in turn against the
    requirements they inherited.  Returns ``(final form, derivation)``.
    """
    deriv = Derivation()
    if isinstance(lf, Bottom):
        return BOTTOM, deriv
    if isinstance(lf, Lambda):
        body, deriv = resolve_all(o, lf.body)
        return (body if isinstance(body, Bottom) else Lambda(lf.param, body)), deriv
    work = _Work(lf)
    done = set()
    while True:
        pending = [b[1] for b in work.binders if b[1] not in done]
        if not pending:
            break
        done.add(pending[0])
        if not _resolve(o, work, pending[0], deriv):
            return BOTTOM, deriv
    _strip(work)
    return work.to_lf(), deriv
