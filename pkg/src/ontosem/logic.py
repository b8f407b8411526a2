"""Typed first-order logical forms.

Forms are immutable dataclasses.  Predicate-variable abstraction (``Lambda``)
and individual abstraction (``Property``) are enough to build sentence
meanings compositionally; everything is brought into prenex form afterwards.

Text syntax, as produced by :func:`print_lf` and read back by :func:`parse_lf`::

    (E! x::human)(Noo(x,'sheba') & Artist(x) & Young(x))
    (E e::elephant^a)(E p::painting)(Painted(j,p) & PaintingOf(p,e))
    \\P[(E x::book)(P(x::review))]
    _|_

``E`` is existential, ``E!`` unique existence, ``A`` universal; ``^a`` marks
abstract existence.  Argument annotations ``x::t`` may stack (``x::review::content``)
when several requirements are placed on one argument occurrence.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Union

from .errors import ArityMismatch, ParseError

__all__ = [
    "Mode", "ACTUAL", "ABSTRACT", "TypeExpr", "parse_type",
    "FORALL", "EXISTS", "EXISTS_UNIQUE",
    "Const", "Quant", "Atom", "Naming", "And", "Lambda", "Bottom", "BOTTOM", "Property",
    "conj", "apply", "prenex", "free_vars", "bound_vars", "substitute_var", "fresh_name",
    "strip_annotations", "alpha_equal", "print_lf", "parse_lf", "to_json", "from_json",
]


class Mode(str, Enum):
    ACTUAL = "actual"
    ABSTRACT = "abstract"

    def __str__(self):
        return self.value


ACTUAL = Mode.ACTUAL
ABSTRACT = Mode.ABSTRACT

_CATEGORY_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


@dataclass(frozen=True)
class TypeExpr:
    """An ontological category together with an existence mode."""

    category: str
    mode: Mode = ACTUAL

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def abstract(self) -> bool:
        return self.mode is ABSTRACT

    def with_mode(self, mode) -> "TypeExpr":
        return TypeExpr(self.category, mode)

    def __str__(self):
        return self.category + ("^a" if self.abstract else "")


def parse_type(text: str) -> TypeExpr:
    """Read ``cat`` or ``cat^a``."""
    text = text.strip()
    mode = ACTUAL
    if text.endswith("^a"):
        text, mode = text[:-2].rstrip(), ABSTRACT
    if not _CATEGORY_RE.match(text):
        raise ParseError(f"bad category name {text!r}")
    return TypeExpr(text, mode)


FORALL = "forall"
EXISTS = "exists"
EXISTS_UNIQUE = "existsUnique"
QUANTIFIERS = (FORALL, EXISTS, EXISTS_UNIQUE)
_QUANT_SYMBOL = {FORALL: "A", EXISTS: "E", EXISTS_UNIQUE: "E!"}
_SYMBOL_QUANT = {v: k for k, v in _QUANT_SYMBOL.items()}


@dataclass(frozen=True)
class Const:
    value: str

    def __str__(self):
        return "'" + self.value.replace("\\", "\\\\").replace("'", "\\'") + "'"


Arg = Union[str, Const]


@dataclass(frozen=True)
class Quant:
    q: str
    var: str
    type: TypeExpr
    body: "LogicalForm"

    def __post_init__(self):
        if self.q not in QUANTIFIERS:
            raise ValueError(f"unknown quantifier {self.q!r}")


@dataclass(frozen=True)
class Atom:
    """``pred(args)``; ``annotations[i]`` is the stack of types required of ``args[i]``.

    An atom without any annotation stores ``annotations == ()``.
    """

    pred: str
    args: tuple
    annotations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        anns = tuple(tuple(a) for a in self.annotations)
        if anns and len(anns) != len(self.args):
            raise ValueError("annotations must align with arguments")
        if not any(anns):
            anns = ()
        object.__setattr__(self, "annotations", anns)

    def annotation(self, i: int) -> tuple:
        return self.annotations[i] if self.annotations else ()


@dataclass(frozen=True)
class Naming:
    """The naming predicate: ``label`` is the name of ``var``."""

    var: str
    label: str


@dataclass(frozen=True)
class And:
    conjuncts: tuple

    def __post_init__(self):
        object.__setattr__(self, "conjuncts", tuple(self.conjuncts))


@dataclass(frozen=True)
class Lambda:
    """Abstraction over a predicate variable ``param``."""

    param: str
    body: "LogicalForm"


class Bottom:
    """Failed type unification."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())


BOTTOM = Bottom()

LogicalForm = Union[Quant, Atom, Naming, And, Lambda, Bottom]


@dataclass(frozen=True)
class Property:
    """Abstraction over an individual: ``lambda param. body``; argument to :func:`apply`."""

    param: str
    body: LogicalForm


def conj(parts: Iterable[LogicalForm]) -> LogicalForm:
    """Flattening conjunction; a single conjunct is returned as is."""
    out = []
    for p in parts:
        if isinstance(p, And):
            out.extend(p.conjuncts)
        else:
            out.append(p)
    return out[0] if len(out) == 1 else And(tuple(out))


# -- variables ---------------------------------------------------------------

def _atom_vars(atom: Atom):
    return [a for a in atom.args if isinstance(a, str)]


def free_vars(lf) -> set:
    if isinstance(lf, Property):
        return free_vars(lf.body) - {lf.param}
    if isinstance(lf, Quant):
        return free_vars(lf.body) - {lf.var}
    if isinstance(lf, Atom):
        return set(_atom_vars(lf))
    if isinstance(lf, Naming):
        return {lf.var}
    if isinstance(lf, And):
        return set().union(*(free_vars(c) for c in lf.conjuncts))
    if isinstance(lf, Lambda):
        return free_vars(lf.body)
    return set()


def bound_vars(lf) -> set:
    if isinstance(lf, Quant):
        return {lf.var} | bound_vars(lf.body)
    if isinstance(lf, And):
        return set().union(*(bound_vars(c) for c in lf.conjuncts))
    if isinstance(lf, (Lambda, Property)):
        return bound_vars(lf.body)
    return set()


def _all_names(lf) -> set:
    return free_vars(lf) | bound_vars(lf)


def fresh_name(base: str, used) -> str:
    """``base`` if unused, else the first of ``base1``, ``base2``, ... that is free."""
    if base not in used:
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


def substitute_var(lf, old: str, new: str, prefix: tuple = ()):
    """Replace free occurrences of ``old`` by ``new``.

    ``prefix`` is pushed onto the annotation stack of every replaced occurrence.
    No capture check: callers rename binders first.
    """
    if isinstance(lf, Quant):
        if lf.var == old:
            return lf
        return replace(lf, body=substitute_var(lf.body, old, new, prefix))
    if isinstance(lf, Atom):
        if old not in lf.args:
            return lf
        anns = []
        args = []
        for i, a in enumerate(lf.args):
            stack = lf.annotation(i)
            if a == old:
                args.append(new)
                stack = tuple(prefix) + stack
            else:
                args.append(a)
            anns.append(stack)
        return Atom(lf.pred, tuple(args), tuple(anns))
    if isinstance(lf, Naming):
        return Naming(new, lf.label) if lf.var == old else lf
    if isinstance(lf, And):
        return And(tuple(substitute_var(c, old, new, prefix) for c in lf.conjuncts))
    if isinstance(lf, Lambda):
        return replace(lf, body=substitute_var(lf.body, old, new, prefix))
    return lf


def _rename_binders(lf, avoid: set, used: set):
    """Rename every binder whose name is in ``avoid`` to a fresh one."""
    if isinstance(lf, Quant):
        var, body = lf.var, lf.body
        if var in avoid:
            new = fresh_name(var, used)
            used.add(new)
            body = substitute_var(body, var, new)
            var = new
        return Quant(lf.q, var, lf.type, _rename_binders(body, avoid, used))
    if isinstance(lf, And):
        return And(tuple(_rename_binders(c, avoid, used) for c in lf.conjuncts))
    if isinstance(lf, Lambda):
        return replace(lf, body=_rename_binders(lf.body, avoid, used))
    return lf


# -- application ---------------------------------------------------------------

def apply(f: Lambda, arg) -> LogicalForm:
    """Beta-reduce ``f`` applied to ``arg``.

    ``arg`` is either a predicate name (every ``P(...)`` becomes ``arg(...)``)
    or a unary :class:`Property`.  Binders of ``f`` that would capture free
    variables of ``arg`` are renamed first.
    """
    if not isinstance(f, Lambda):
        raise TypeError("apply expects a Lambda")
    if isinstance(arg, str):
        return _subst_pred(f.body, f.param, arg)
    if not isinstance(arg, Property):
        raise TypeError("argument must be a predicate name or a Property")
    arg_free = free_vars(arg)
    body = f.body
    clash = bound_vars(body) & arg_free
    if clash:
        body = _rename_binders(body, clash, _all_names(body) | _all_names(arg.body) | arg_free)
    return _subst_pred(body, f.param, arg)


def _subst_pred(lf, param: str, arg):
    if isinstance(lf, Atom):
        if lf.pred != param:
            return lf
        if isinstance(arg, str):
            return Atom(arg, lf.args, lf.annotations)
        if len(lf.args) != 1:
            raise ArityMismatch(f"{param} used with {len(lf.args)} arguments, property is unary")
        target = lf.args[0]
        if isinstance(target, Const):
            raise ArityMismatch("cannot apply a property to a constant here")
        body = arg.body
        inner = bound_vars(body) & {target}
        if inner:
            body = _rename_binders(body, inner, _all_names(body) | {target})
        return substitute_var(body, arg.param, target, lf.annotation(0))
    if isinstance(lf, Quant):
        return replace(lf, body=_subst_pred(lf.body, param, arg))
    if isinstance(lf, And):
        return conj(_subst_pred(c, param, arg) for c in lf.conjuncts)
    if isinstance(lf, Lambda):
        if lf.param == param:
            return lf
        return replace(lf, body=_subst_pred(lf.body, param, arg))
    return lf


def prenex(lf) -> LogicalForm:
    """Pull quantifiers out of conjunctions; binder names must already be distinct."""
    if isinstance(lf, Lambda):
        return Lambda(lf.param, prenex(lf.body))
    prefix, matrix = _split(lf)
    out = conj(matrix) if matrix else And(())
    for q, v, t in reversed(prefix):
        out = Quant(q, v, t, out)
    return out


def _split(lf):
    if isinstance(lf, Quant):
        prefix, matrix = _split(lf.body)
        return [(lf.q, lf.var, lf.type)] + prefix, matrix
    if isinstance(lf, And):
        prefix, matrix = [], []
        for c in lf.conjuncts:
            p, m = _split(c)
            prefix += p
            matrix += m
        return prefix, matrix
    return [], [lf]


def strip_annotations(lf) -> LogicalForm:
    if isinstance(lf, Atom):
        return Atom(lf.pred, lf.args)
    if isinstance(lf, Quant):
        return replace(lf, body=strip_annotations(lf.body))
    if isinstance(lf, And):
        return And(tuple(strip_annotations(c) for c in lf.conjuncts))
    if isinstance(lf, Lambda):
        return replace(lf, body=strip_annotations(lf.body))
    return lf


# -- alpha equivalence ---------------------------------------------------------

def _flatten(lf):
    if isinstance(lf, And):
        out = []
        for c in lf.conjuncts:
            c = _flatten(c)
            out.extend(c.conjuncts if isinstance(c, And) else [c])
        return out[0] if len(out) == 1 else And(tuple(out))
    if isinstance(lf, Quant):
        return replace(lf, body=_flatten(lf.body))
    if isinstance(lf, Lambda):
        return replace(lf, body=_flatten(lf.body))
    return lf


def alpha_equal(a, b) -> bool:
    """Equality up to renaming of bound variables and reordering of conjuncts."""
    return _alpha(_flatten(a), _flatten(b), {}, {}, 0)


def _ref(name, env):
    return ("bound", env[name]) if name in env else ("free", name)


def _arg_key(arg, env):
    if isinstance(arg, Const):
        return ("const", arg.value)
    return _ref(arg, env)


def _alpha(a, b, env_a, env_b, depth) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Bottom):
        return True
    if isinstance(a, Quant):
        if a.q != b.q or a.type != b.type:
            return False
        return _alpha(a.body, b.body, {**env_a, a.var: depth}, {**env_b, b.var: depth}, depth + 1)
    if isinstance(a, Lambda):
        return _alpha(a.body, b.body, {**env_a, a.param: depth}, {**env_b, b.param: depth}, depth + 1)
    if isinstance(a, Naming):
        return a.label == b.label and _ref(a.var, env_a) == _ref(b.var, env_b)
    if isinstance(a, Atom):
        return (
            _ref(a.pred, env_a) == _ref(b.pred, env_b)
            and len(a.args) == len(b.args)
            and all(_arg_key(x, env_a) == _arg_key(y, env_b) for x, y in zip(a.args, b.args))
            and all(a.annotation(i) == b.annotation(i) for i in range(len(a.args)))
        )
    if isinstance(a, And):
        if len(a.conjuncts) != len(b.conjuncts):
            return False
        return _match_multiset(list(a.conjuncts), list(b.conjuncts), env_a, env_b, depth)
    return False


def _match_multiset(xs, ys, env_a, env_b, depth) -> bool:
    if not xs:
        return True
    head, rest = xs[0], xs[1:]
    for i, y in enumerate(ys):
        if _alpha(head, y, env_a, env_b, depth):
            if _match_multiset(rest, ys[:i] + ys[i + 1:], env_a, env_b, depth):
                return True
    return False


# -- printing ------------------------------------------------------------------

def _print_arg(arg, stack) -> str:
    text = str(arg) if isinstance(arg, Const) else arg
    return text + "".join(f"::{t}" for t in stack)


def print_lf(lf) -> str:
    """Deterministic single-line rendering."""
    if isinstance(lf, Bottom):
        return "_|_"
    if isinstance(lf, Quant):
        head = f"({_QUANT_SYMBOL[lf.q]} {lf.var}::{lf.type})"
        if isinstance(lf.body, Quant):
            return head + print_lf(lf.body)
        return head + "(" + print_lf(lf.body) + ")"
    if isinstance(lf, Atom):
        args = ",".join(_print_arg(a, lf.annotation(i)) for i, a in enumerate(lf.args))
        return f"{lf.pred}({args})"
    if isinstance(lf, Naming):
        return f"Noo({lf.var},{Const(lf.label)})"
    if isinstance(lf, And):
        return " & ".join(print_lf(c) for c in lf.conjuncts)
    if isinstance(lf, Lambda):
        return f"\\{lf.param}[{print_lf(lf.body)}]"
    raise TypeError(f"not a logical form: {lf!r}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<bottom>_\|_)|(?P<eu>E!)|(?P<dcolon>::)|(?P<abs>\^a)"
    r"|(?P<str>'(?:[^'\\]|\\.)*')|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[()\[\],&\\]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at column {pos}")
        kind = m.lastgroup
        value = m.group(kind)
        out.append((kind, value))
        pos = m.end()
    return out


class _LFParser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None)

    def take(self, value=None, kind=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            raise ParseError(f"expected {want!r}, got {tok[1]!r}")
        self.i += 1
        return tok[1]

    def parse(self):
        lf = self.formula()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at {self.peek()[1]!r}")
        return lf

    def formula(self):
        parts = [self.unit()]
        while self.peek()[1] == "&":
            self.take("&")
            parts.append(self.unit())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def _at_quant(self):
        sym = self.peek(1)
        return (
            self.peek()[1] == "("
            and sym[1] in _SYMBOL_QUANT
            and self.peek(2)[0] == "ident"
            and self.peek(3)[0] == "dcolon"
        )

    def unit(self):
        kind, value = self.peek()
        if kind == "bottom":
            self.take()
            return BOTTOM
        if value == "\\":
            self.take("\\")
            param = self.take(kind="ident")
            self.take("[")
            body = self.formula()
            self.take("]")
            return Lambda(param, body)
        if value == "(":
            if self._at_quant():
                self.take("(")
                q = _SYMBOL_QUANT[self.take()]
                var = self.take(kind="ident")
                self.take(kind="dcolon")
                t = self.type_expr()
                self.take(")")
                return Quant(q, var, t, self.unit())
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        if kind == "ident":
            return self.atom()
        raise ParseError(f"unexpected token {value!r}")

    def type_expr(self):
        name = self.take(kind="ident")
        mode = ACTUAL
        if self.peek()[0] == "abs":
            self.take()
            mode = ABSTRACT
        return TypeExpr(name, mode)

    def atom(self):
        pred = self.take(kind="ident")
        self.take("(")
        args, anns = [], []
        while self.peek()[1] != ")":
            if args:
                self.take(",")
            kind, value = self.peek()
            if kind == "str":
                self.take()
                args.append(Const(re.sub(r"\\(.)", r"\1", value[1:-1])))
            else:
                args.append(self.take(kind="ident"))
            stack = []
            while self.peek()[0] == "dcolon":
                self.take()
                stack.append(self.type_expr())
            anns.append(tuple(stack))
        self.take(")")
        if pred == "Noo" and len(args) == 2 and isinstance(args[0], str) and isinstance(args[1], Const) and not any(anns):
            return Naming(args[0], args[1].value)
        return Atom(pred, tuple(args), tuple(anns))


def parse_lf(text: str) -> LogicalForm:
    """Inverse of :func:`print_lf`."""
    return _LFParser(text).parse()


# -- structured serialization --------------------------------------------------

def _arg_json(arg):
    return {"const": arg.value} if isinstance(arg, Const) else arg


def to_json(lf) -> dict:
    if isinstance(lf, Bottom):
        return {"node": "bottom"}
    if isinstance(lf, Quant):
        return {"node": "quant", "quant": lf.q, "var": lf.var, "type": lf.type.category,
                "mode": lf.type.mode.value, "body": to_json(lf.body)}
    if isinstance(lf, Atom):
        out = {"node": "atom", "pred": lf.pred, "args": [_arg_json(a) for a in lf.args]}
        if lf.annotations:
            out["annotations"] = [[{"type": t.category, "mode": t.mode.value} for t in s]
                                  for s in lf.annotations]
        return out
    if isinstance(lf, Naming):
        return {"node": "naming", "var": lf.var, "label": lf.label}
    if isinstance(lf, And):
        return {"node": "and", "conjuncts": [to_json(c) for c in lf.conjuncts]}
    if isinstance(lf, Lambda):
        return {"node": "lambda", "var": lf.param, "body": to_json(lf.body)}
    raise TypeError(f"not a logical form: {lf!r}")


def from_json(obj: dict) -> LogicalForm:
    node = obj["node"]
    if node == "bottom":
        return BOTTOM
    if node == "quant":
        return Quant(obj["quant"], obj["var"], TypeExpr(obj["type"], Mode(obj["mode"])), from_json(obj["body"]))
    if node == "atom":
        args = tuple(Const(a["const"]) if isinstance(a, dict) else a for a in obj["args"])
        anns = tuple(tuple(TypeExpr(t["type"], Mode(t["mode"])) for t in s) for s in obj.get("annotations", ()))
        return Atom(obj["pred"], args, anns)
    if node == "naming":
        return Naming(obj["var"], obj["label"])
    if node == "and":
        return And(tuple(from_json(c) for c in obj["conjuncts"]))
    if node == "lambda":
        return Lambda(obj["var"], from_json(obj["body"]))
    raise ValueError(f"unknown node {node!r}")
